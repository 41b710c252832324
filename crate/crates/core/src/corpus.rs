//! Paper collection, gold labels and candidate pools.
//!
//! The corpus file is UTF-8 JSON lines, one record per line; the labels file
//! is one `{submission_id, recommended, split}` object per line. Both are
//! validated eagerly at load: every id must resolve, no gold may equal its
//! own submission, and split assignments must be disjoint. `Corpus` and
//! `LabelSet` are immutable after load and safe to share across threads.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

/// Provenance tag assigned at ingestion.
///
/// `extended` records are the enlarged candidate pool; they are omitted from
/// `core`-scope candidate sets unless they also appear in the labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Submission,
    Recommended,
    Extended,
}

/// One paper: content text plus the titles in its reference section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub id: String,
    pub title: String,
    #[serde(rename = "abstract")]
    pub abstract_text: String,
    pub references: Vec<String>,
    #[serde(default)]
    pub year: Option<i32>,
    #[serde(default)]
    pub venue: Option<String>,
    #[serde(default)]
    pub role: Option<Role>,
}

/// Dataset split tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Train => write!(f, "train"),
            Self::Val => write!(f, "val"),
            Self::Test => write!(f, "test"),
        }
    }
}

impl std::str::FromStr for Split {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "train" => Ok(Self::Train),
            "val" => Ok(Self::Val),
            "test" => Ok(Self::Test),
            other => Err(CorpusError::BadSplit(other.to_string())),
        }
    }
}

/// Gold labels for one submission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub submission_id: String,
    pub recommended: Vec<String>,
    pub split: Split,
}

/// Candidate pool scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// Submissions and reviewer-recommended papers only.
    Core,
    /// Core plus the venue/year-filtered extension records.
    Extended,
}

impl std::str::FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "core" => Ok(Self::Core),
            "extended" => Ok(Self::Extended),
            other => Err(format!("unknown scope {other:?} (expected core|extended)")),
        }
    }
}

/// Errors raised while loading or querying the collection.
#[derive(Debug)]
pub enum CorpusError {
    Io(std::io::Error),
    /// Bad syntax or a violated field invariant, with the 1-based line number.
    MalformedRecord { line: usize, reason: String },
    DuplicateId(String),
    /// A submission id appears in more than one labels entry.
    DuplicateSubmission(String),
    UnknownPaper(String),
    /// A gold id equals its own submission id.
    SelfGold(String),
    BadSplit(String),
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io(e) => write!(f, "io error: {e}"),
            Self::MalformedRecord { line, reason } => {
                write!(f, "malformed record at line {line}: {reason}")
            }
            Self::DuplicateId(id) => write!(f, "duplicate paper id {id:?}"),
            Self::DuplicateSubmission(id) => write!(f, "duplicate submission id {id:?} in labels"),
            Self::UnknownPaper(id) => write!(f, "unknown paper id {id:?}"),
            Self::SelfGold(id) => write!(f, "submission {id:?} lists itself as a gold paper"),
            Self::BadSplit(value) => write!(f, "unknown split tag {value:?}"),
        }
    }
}

impl std::error::Error for CorpusError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Self::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for CorpusError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

/// The paper collection, keyed by id with insertion order preserved.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    records: IndexMap<String, PaperRecord>,
}

impl Corpus {
    /// Build a corpus from records, rejecting duplicate ids.
    pub fn from_records(
        records: impl IntoIterator<Item = PaperRecord>,
    ) -> Result<Self, CorpusError> {
        let mut map = IndexMap::new();
        for record in records {
            if map.contains_key(&record.id) {
                return Err(CorpusError::DuplicateId(record.id));
            }
            map.insert(record.id.clone(), record);
        }
        Ok(Self { records: map })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&PaperRecord> {
        self.records.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.records.contains_key(id)
    }

    /// Records in file/insertion order.
    pub fn iter(&self) -> impl Iterator<Item = &PaperRecord> {
        self.records.values()
    }

    /// Ids in file/insertion order.
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.records.keys().map(String::as_str)
    }
}

/// Validated gold labels with split assignments.
#[derive(Debug, Clone, Default)]
pub struct LabelSet {
    entries: Vec<LabelEntry>,
}

impl LabelSet {
    /// Validate entries against a corpus: every id must resolve, no entry may
    /// list its own submission as gold, gold lists are non-empty, and no
    /// submission id repeats (which keeps splits disjoint).
    pub fn from_entries(
        entries: Vec<LabelEntry>,
        corpus: &Corpus,
    ) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        for entry in &entries {
            if !corpus.contains(&entry.submission_id) {
                return Err(CorpusError::UnknownPaper(entry.submission_id.clone()));
            }
            if !seen.insert(entry.submission_id.clone()) {
                return Err(CorpusError::DuplicateSubmission(entry.submission_id.clone()));
            }
            for gold in &entry.recommended {
                if gold == &entry.submission_id {
                    return Err(CorpusError::SelfGold(entry.submission_id.clone()));
                }
                if !corpus.contains(gold) {
                    return Err(CorpusError::UnknownPaper(gold.clone()));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LabelEntry] {
        &self.entries
    }

    /// Entries belonging to one split, in file order.
    pub fn split_entries(&self, split: Split) -> impl Iterator<Item = &LabelEntry> {
        self.entries.iter().filter(move |e| e.split == split)
    }

    /// Gold ids for one submission, or None when it has no entry.
    pub fn golds(&self, submission_id: &str) -> Option<&[String]> {
        self.entries
            .iter()
            .find(|e| e.submission_id == submission_id)
            .map(|e| e.recommended.as_slice())
    }

    /// True when the id appears anywhere in the labels (submission or gold).
    pub fn mentions(&self, id: &str) -> bool {
        self.entries
            .iter()
            .any(|e| e.submission_id == id || e.recommended.iter().any(|g| g == id))
    }
}

/// Ordered candidate ids for one query; never contains the query itself.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CandidateSet {
    ids: Vec<String>,
}

impl CandidateSet {
    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.ids.iter().any(|c| c == id)
    }
}

/// Load the JSON-lines corpus file. Iteration order equals file order.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus, CorpusError> {
    let reader = BufReader::new(File::open(path)?);
    let mut records = IndexMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: PaperRecord =
            serde_json::from_str(&line).map_err(|e| CorpusError::MalformedRecord {
                line: line_no,
                reason: e.to_string(),
            })?;
        validate_record(&record, line_no)?;
        if records.contains_key(&record.id) {
            return Err(CorpusError::DuplicateId(record.id));
        }
        records.insert(record.id.clone(), record);
    }
    Ok(Corpus { records })
}

fn validate_record(record: &PaperRecord, line: usize) -> Result<(), CorpusError> {
    if record.id.is_empty() {
        return Err(CorpusError::MalformedRecord {
            line,
            reason: "empty id".to_string(),
        });
    }
    if record.title.is_empty() {
        return Err(CorpusError::MalformedRecord {
            line,
            reason: "empty title".to_string(),
        });
    }
    if let Some(year) = record.year {
        if year <= 0 {
            return Err(CorpusError::MalformedRecord {
                line,
                reason: format!("year {year} is not positive"),
            });
        }
    }
    Ok(())
}

/// Write the corpus back as JSON lines in iteration order.
///
/// Loading the written file yields a record-for-record equal corpus, and
/// saving an already-canonical file reproduces it byte for byte.
pub fn save_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let mut writer = BufWriter::new(File::create(path)?);
    for record in corpus.iter() {
        serde_json::to_writer(&mut writer, record)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::Other, e))?;
        writer.write_all(b"\n")?;
    }
    writer.flush()?;
    Ok(())
}

/// Load and validate the JSON-lines labels file against a loaded corpus.
pub fn load_labels(path: impl AsRef<Path>, corpus: &Corpus) -> Result<LabelSet, CorpusError> {
    let reader = BufReader::new(File::open(path)?);
    let mut entries = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        // Split is parsed separately so an unknown tag reports BadSplit
        // rather than a generic parse failure.
        let raw: serde_json::Value =
            serde_json::from_str(&line).map_err(|e| CorpusError::MalformedRecord {
                line: line_no,
                reason: e.to_string(),
            })?;
        if let Some(split) = raw.get("split").and_then(|v| v.as_str()) {
            split.parse::<Split>()?;
        }
        let entry: LabelEntry =
            serde_json::from_value(raw).map_err(|e| CorpusError::MalformedRecord {
                line: line_no,
                reason: e.to_string(),
            })?;
        if entry.recommended.is_empty() {
            return Err(CorpusError::MalformedRecord {
                line: line_no,
                reason: "empty recommended list".to_string(),
            });
        }
        entries.push(entry);
    }
    LabelSet::from_entries(entries, corpus)
}

/// Normalize a title for exact-match comparison: lowercase, punctuation
/// stripped, whitespace collapsed to single spaces.
///
/// Used for cited-title exclusion and as the reference-title key of
/// store-backed embedding providers.
pub fn normalize_title(title: &str) -> String {
    crate::textproc::tokenize(title).join(" ")
}

/// All papers eligible as candidates for one query.
///
/// `core` scope omits records role-tagged `extended` unless the labels
/// mention them (a gold paper stays reachable however it was tagged). With
/// `exclude_cited`, papers whose normalized title equals one of the query's
/// normalized reference titles are removed.
pub fn candidate_pool(
    corpus: &Corpus,
    labels: &LabelSet,
    query_id: &str,
    scope: Scope,
    exclude_cited: bool,
) -> Result<CandidateSet, CorpusError> {
    let query = corpus
        .get(query_id)
        .ok_or_else(|| CorpusError::UnknownPaper(query_id.to_string()))?;
    Ok(pool_for_query(corpus, Some(labels), query, scope, exclude_cited))
}

/// Pool construction shared with transient (not-in-corpus) queries.
pub(crate) fn pool_for_query(
    corpus: &Corpus,
    labels: Option<&LabelSet>,
    query: &PaperRecord,
    scope: Scope,
    exclude_cited: bool,
) -> CandidateSet {
    let cited: HashSet<String> = if exclude_cited {
        query.references.iter().map(|t| normalize_title(t)).collect()
    } else {
        HashSet::new()
    };
    let ids = corpus
        .iter()
        .filter(|r| r.id != query.id)
        .filter(|r| match scope {
            Scope::Extended => true,
            Scope::Core => {
                r.role != Some(Role::Extended)
                    || labels.is_some_and(|l| l.mentions(&r.id))
            }
        })
        .filter(|r| !exclude_cited || !cited.contains(&normalize_title(&r.title)))
        .map(|r| r.id.clone())
        .collect();
    CandidateSet { ids }
}

/// Ids of records published no more than `max_gap` years before `anchor_year`.
/// Records without a year are excluded.
pub fn filter_by_year_gap(corpus: &Corpus, anchor_year: i32, max_gap: i32) -> Vec<String> {
    assert!(max_gap >= 0, "max_gap must be non-negative");
    corpus
        .iter()
        .filter(|r| r.year.is_some_and(|y| anchor_year - y <= max_gap))
        .map(|r| r.id.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::io::Write as _;

    pub(crate) fn record(id: &str, title: &str) -> PaperRecord {
        PaperRecord {
            id: id.to_string(),
            title: title.to_string(),
            abstract_text: format!("abstract of {title}"),
            references: Vec::new(),
            year: None,
            venue: None,
            role: None,
        }
    }

    fn write_lines(lines: &[&str]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for line in lines {
            writeln!(f, "{line}").unwrap();
        }
        f.flush().unwrap();
        f
    }

    #[test]
    fn load_corpus_counts_lines() {
        let f = write_lines(&[
            r#"{"id":"p1","title":"Alpha","abstract":"a","references":[],"year":2020,"venue":null,"role":null}"#,
            r#"{"id":"p2","title":"Beta","abstract":"b","references":["Alpha"],"year":null,"venue":"X","role":"extended"}"#,
            r#"{"id":"p3","title":"Gamma","abstract":"","references":[]}"#,
        ]);
        let corpus = load_corpus(f.path()).unwrap();
        assert_eq!(corpus.len(), 3);
        let order: Vec<_> = corpus.ids().collect();
        assert_eq!(order, vec!["p1", "p2", "p3"]);
    }

    #[test]
    fn load_corpus_rejects_duplicate_id() {
        let f = write_lines(&[
            r#"{"id":"p1","title":"Alpha","abstract":"","references":[]}"#,
            r#"{"id":"p1","title":"Beta","abstract":"","references":[]}"#,
        ]);
        match load_corpus(f.path()) {
            Err(CorpusError::DuplicateId(id)) => assert_eq!(id, "p1"),
            other => panic!("expected DuplicateId, got {other:?}"),
        }
    }

    #[test]
    fn load_corpus_rejects_missing_title() {
        let f = write_lines(&[r#"{"id":"p1","abstract":"","references":[]}"#]);
        match load_corpus(f.path()) {
            Err(CorpusError::MalformedRecord { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected MalformedRecord, got {other:?}"),
        }
    }

    #[test]
    fn load_corpus_rejects_nonpositive_year() {
        let f = write_lines(&[
            r#"{"id":"p1","title":"Alpha","abstract":"","references":[],"year":0}"#,
        ]);
        assert!(matches!(
            load_corpus(f.path()),
            Err(CorpusError::MalformedRecord { line: 1, .. })
        ));
    }

    #[test]
    fn corpus_round_trips_through_save() {
        let f = write_lines(&[
            r#"{"id":"p1","title":"Alpha Paper","abstract":"text","references":["Ref One","Ref Two"],"year":2021,"venue":"V","role":"submission"}"#,
            r#"{"id":"p2","title":"Beta","abstract":"","references":[],"year":null,"venue":null,"role":null}"#,
        ]);
        let corpus = load_corpus(f.path()).unwrap();
        let out = tempfile::NamedTempFile::new().unwrap();
        save_corpus(&corpus, out.path()).unwrap();
        let reloaded = load_corpus(out.path()).unwrap();
        assert_eq!(corpus.len(), reloaded.len());
        for (a, b) in corpus.iter().zip(reloaded.iter()) {
            assert_eq!(a, b);
        }
        // A canonical file reproduces itself byte for byte.
        let out2 = tempfile::NamedTempFile::new().unwrap();
        save_corpus(&reloaded, out2.path()).unwrap();
        assert_eq!(
            std::fs::read(out.path()).unwrap(),
            std::fs::read(out2.path()).unwrap()
        );
    }

    fn three_paper_corpus() -> Corpus {
        Corpus::from_records([record("q", "Query"), record("a", "Alpha"), record("b", "Beta")])
            .unwrap()
    }

    #[test]
    fn load_labels_validates_ids() {
        let corpus = three_paper_corpus();
        let f = write_lines(&[r#"{"submission_id":"q","recommended":["zzz"],"split":"train"}"#]);
        match load_labels(f.path(), &corpus) {
            Err(CorpusError::UnknownPaper(id)) => assert_eq!(id, "zzz"),
            other => panic!("expected UnknownPaper, got {other:?}"),
        }
    }

    #[test]
    fn load_labels_rejects_self_gold() {
        let corpus = three_paper_corpus();
        let f = write_lines(&[r#"{"submission_id":"q","recommended":["q","a"],"split":"train"}"#]);
        assert!(matches!(
            load_labels(f.path(), &corpus),
            Err(CorpusError::SelfGold(_))
        ));
    }

    #[test]
    fn load_labels_rejects_bad_split() {
        let corpus = three_paper_corpus();
        let f = write_lines(&[r#"{"submission_id":"q","recommended":["a"],"split":"dev"}"#]);
        match load_labels(f.path(), &corpus) {
            Err(CorpusError::BadSplit(v)) => assert_eq!(v, "dev"),
            other => panic!("expected BadSplit, got {other:?}"),
        }
    }

    #[test]
    fn load_labels_rejects_duplicate_submission() {
        let corpus = three_paper_corpus();
        let f = write_lines(&[
            r#"{"submission_id":"q","recommended":["a"],"split":"train"}"#,
            r#"{"submission_id":"q","recommended":["b"],"split":"test"}"#,
        ]);
        assert!(matches!(
            load_labels(f.path(), &corpus),
            Err(CorpusError::DuplicateSubmission(_))
        ));
    }

    #[test]
    fn load_labels_accepts_valid_entries() {
        let corpus = three_paper_corpus();
        let f = write_lines(&[
            r#"{"submission_id":"q","recommended":["a","b"],"split":"train"}"#,
            r#"{"submission_id":"a","recommended":["b"],"split":"test"}"#,
        ]);
        let labels = load_labels(f.path(), &corpus).unwrap();
        assert_eq!(labels.len(), 2);
        assert_eq!(labels.golds("q").unwrap(), ["a", "b"]);
    }

    #[test]
    fn candidate_pool_removes_query() {
        let corpus = three_paper_corpus();
        let labels = LabelSet::default();
        let pool = candidate_pool(&corpus, &labels, "q", Scope::Extended, false).unwrap();
        assert_eq!(pool.ids(), ["a", "b"]);
    }

    #[test]
    fn candidate_pool_excludes_cited_titles() {
        let mut query = record("q", "Query");
        query.references = vec!["  BETA.  ".to_string()];
        let corpus =
            Corpus::from_records([query, record("a", "Alpha"), record("b", "Beta")]).unwrap();
        let labels = LabelSet::default();
        let pool = candidate_pool(&corpus, &labels, "q", Scope::Extended, true).unwrap();
        assert_eq!(pool.ids(), ["a"]);
    }

    #[test]
    fn candidate_pool_unknown_query() {
        let corpus = three_paper_corpus();
        let labels = LabelSet::default();
        assert!(matches!(
            candidate_pool(&corpus, &labels, "nope", Scope::Core, false),
            Err(CorpusError::UnknownPaper(_))
        ));
    }

    #[test]
    fn candidate_pool_core_scope_omits_extended_records() {
        let mut ext = record("x", "Extended Paper");
        ext.role = Some(Role::Extended);
        let mut ext_gold = record("g", "Gold But Extended");
        ext_gold.role = Some(Role::Extended);
        let corpus =
            Corpus::from_records([record("q", "Query"), record("a", "Alpha"), ext, ext_gold])
                .unwrap();
        let labels = LabelSet::from_entries(
            vec![LabelEntry {
                submission_id: "q".to_string(),
                recommended: vec!["g".to_string()],
                split: Split::Train,
            }],
            &corpus,
        )
        .unwrap();
        let core = candidate_pool(&corpus, &labels, "q", Scope::Core, false).unwrap();
        // "x" is dropped; "g" survives because the labels mention it.
        assert_eq!(core.ids(), ["a", "g"]);
        let extended = candidate_pool(&corpus, &labels, "q", Scope::Extended, false).unwrap();
        assert_eq!(extended.ids(), ["a", "x", "g"]);
    }

    #[test]
    fn year_gap_filter_keeps_recent_papers() {
        let mut r2019 = record("p2019", "Recent");
        r2019.year = Some(2019);
        let mut r2017 = record("p2017", "Old");
        r2017.year = Some(2017);
        let corpus = Corpus::from_records([r2019, r2017]).unwrap();
        assert_eq!(filter_by_year_gap(&corpus, 2021, 3), vec!["p2019"]);
    }

    #[test]
    fn year_gap_zero_keeps_same_year() {
        let mut a = record("a", "A");
        a.year = Some(2020);
        let mut b = record("b", "B");
        b.year = Some(2020);
        let corpus = Corpus::from_records([a, b]).unwrap();
        assert_eq!(filter_by_year_gap(&corpus, 2020, 0).len(), 2);
    }

    #[test]
    fn year_gap_empty_corpus() {
        assert!(filter_by_year_gap(&Corpus::default(), 2020, 3).is_empty());
    }

    #[test]
    fn year_gap_skips_missing_year() {
        let corpus = Corpus::from_records([record("a", "A")]).unwrap();
        assert!(filter_by_year_gap(&corpus, 2020, 5).is_empty());
    }

    #[test]
    fn normalize_title_strips_punctuation_and_case() {
        assert_eq!(normalize_title("  BM25-Based,  FAST!  "), "bm25 based fast");
        assert_eq!(normalize_title("Alpha"), "alpha");
    }

    proptest! {
        #[test]
        fn candidate_pool_never_contains_query(
            n in 2usize..20,
            query_idx in 0usize..20,
            exclude in proptest::bool::ANY,
        ) {
            let records: Vec<_> = (0..n)
                .map(|i| record(&format!("p{i}"), &format!("Title {i}")))
                .collect();
            let corpus = Corpus::from_records(records).unwrap();
            let labels = LabelSet::default();
            let query_id = format!("p{}", query_idx % n);
            let pool =
                candidate_pool(&corpus, &labels, &query_id, Scope::Extended, exclude).unwrap();
            prop_assert!(!pool.contains(&query_id));
            prop_assert_eq!(pool.len(), n - 1);
        }

        #[test]
        fn golds_always_reachable_in_pool(
            n in 3usize..12,
            gold_picks in proptest::collection::vec(0usize..12, 1..4),
        ) {
            let records: Vec<_> = (0..n)
                .map(|i| record(&format!("p{i}"), &format!("Title {i}")))
                .collect();
            let corpus = Corpus::from_records(records).unwrap();
            let golds: Vec<String> = gold_picks
                .iter()
                .map(|&g| format!("p{}", 1 + g % (n - 1)))
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let labels = LabelSet::from_entries(
                vec![LabelEntry {
                    submission_id: "p0".to_string(),
                    recommended: golds.clone(),
                    split: Split::Train,
                }],
                &corpus,
            )
            .unwrap();
            let pool = candidate_pool(&corpus, &labels, "p0", Scope::Core, false).unwrap();
            for gold in &golds {
                prop_assert!(pool.contains(gold));
            }
        }
    }
}
