//! Okapi BM25 inverted index, the sparse retrieval baseline.
//!
//! Documents are the concatenation of a paper's title, abstract and
//! reference titles. Scores use the +1-smoothed idf variant,
//! `idf(t) = ln(1 + (N - df + 0.5)/(df + 0.5))`, which is non-negative for
//! every document frequency. The index is immutable after build; concurrent
//! scoring is safe.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::corpus::Corpus;
use crate::eval::RankedList;
use crate::textproc::tokenize;

/// Okapi BM25 parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bm25Params {
    /// Term-frequency saturation, >= 0.
    pub k1: f64,
    /// Length normalization, in [0, 1].
    pub b: f64,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Self { k1: 1.2, b: 0.75 }
    }
}

/// Errors from index construction and scoring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bm25Error {
    EmptyCorpus,
    UnknownDoc(String),
    BadParams(String),
}

impl fmt::Display for Bm25Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyCorpus => write!(f, "cannot index an empty corpus"),
            Self::UnknownDoc(id) => write!(f, "document {id:?} is not indexed"),
            Self::BadParams(msg) => write!(f, "bad bm25 params: {msg}"),
        }
    }
}

impl std::error::Error for Bm25Error {}

/// Inverted index over the corpus.
#[derive(Debug, Clone)]
pub struct Bm25Index {
    params: Bm25Params,
    doc_ids: Vec<String>,
    doc_index: HashMap<String, usize>,
    /// term -> postings sorted by ascending doc index.
    postings: HashMap<String, Vec<(usize, u32)>>,
    doc_lengths: Vec<usize>,
    avg_doc_length: f64,
}

/// Text fed to the indexer for one record: title, abstract and all
/// reference titles joined by single spaces.
pub fn document_text(record: &crate::corpus::PaperRecord) -> String {
    let mut text = String::with_capacity(
        record.title.len()
            + record.abstract_text.len()
            + record.references.iter().map(|r| r.len() + 1).sum::<usize>()
            + 2,
    );
    text.push_str(&record.title);
    text.push(' ');
    text.push_str(&record.abstract_text);
    for reference in &record.references {
        text.push(' ');
        text.push_str(reference);
    }
    text
}

/// Build the inverted index over every record in the corpus.
pub fn build_index(corpus: &Corpus, params: Bm25Params) -> Result<Bm25Index, Bm25Error> {
    if corpus.is_empty() {
        return Err(Bm25Error::EmptyCorpus);
    }
    if params.k1 < 0.0 || !params.k1.is_finite() {
        return Err(Bm25Error::BadParams(format!("k1 = {}", params.k1)));
    }
    if !(0.0..=1.0).contains(&params.b) {
        return Err(Bm25Error::BadParams(format!("b = {}", params.b)));
    }

    let mut doc_ids = Vec::with_capacity(corpus.len());
    let mut doc_index = HashMap::with_capacity(corpus.len());
    let mut doc_lengths = Vec::with_capacity(corpus.len());
    let mut postings: HashMap<String, Vec<(usize, u32)>> = HashMap::new();

    for record in corpus.iter() {
        let idx = doc_ids.len();
        doc_ids.push(record.id.clone());
        doc_index.insert(record.id.clone(), idx);

        let tokens = tokenize(&document_text(record));
        doc_lengths.push(tokens.len());

        let mut tf: HashMap<String, u32> = HashMap::new();
        for token in tokens {
            *tf.entry(token).or_insert(0) += 1;
        }
        for (term, count) in tf {
            postings.entry(term).or_default().push((idx, count));
        }
    }
    for list in postings.values_mut() {
        list.sort_unstable_by_key(|&(idx, _)| idx);
    }

    let total: usize = doc_lengths.iter().sum();
    let avg_doc_length = total as f64 / doc_lengths.len() as f64;

    Ok(Bm25Index {
        params,
        doc_ids,
        doc_index,
        postings,
        doc_lengths,
        avg_doc_length,
    })
}

impl Bm25Index {
    pub fn doc_count(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn avg_doc_length(&self) -> f64 {
        self.avg_doc_length
    }

    pub fn params(&self) -> Bm25Params {
        self.params
    }

    /// Document frequency of a term.
    pub fn doc_freq(&self, term: &str) -> usize {
        self.postings.get(term).map_or(0, Vec::len)
    }

    fn idf(&self, term: &str) -> f64 {
        let df = self.doc_freq(term) as f64;
        let n = self.doc_count() as f64;
        (1.0 + (n - df + 0.5) / (df + 0.5)).ln()
    }

    fn term_frequency(&self, term: &str, doc: usize) -> u32 {
        self.postings
            .get(term)
            .and_then(|list| {
                list.binary_search_by_key(&doc, |&(idx, _)| idx)
                    .ok()
                    .map(|pos| list[pos].1)
            })
            .unwrap_or(0)
    }

    /// Okapi BM25 score of one document against a query token multiset.
    ///
    /// Duplicate query terms contribute once per occurrence; terms absent
    /// from the index contribute zero.
    pub fn score(&self, query_tokens: &[String], doc_id: &str) -> Result<f64, Bm25Error> {
        let doc = *self
            .doc_index
            .get(doc_id)
            .ok_or_else(|| Bm25Error::UnknownDoc(doc_id.to_string()))?;
        let Bm25Params { k1, b } = self.params;
        let norm = 1.0 - b + b * self.doc_lengths[doc] as f64 / self.avg_doc_length;
        let mut total = 0.0;
        for term in query_tokens {
            let tf = f64::from(self.term_frequency(term, doc));
            if tf == 0.0 {
                continue;
            }
            total += self.idf(term) * tf * (k1 + 1.0) / (tf + k1 * norm);
        }
        Ok(total)
    }

    /// Top-k documents by descending score, ties broken by ascending doc id.
    ///
    /// Returns fewer than `k` entries when the index is small. Documents in
    /// `exclude` never appear.
    pub fn top_k(
        &self,
        query_tokens: &[String],
        k: usize,
        exclude: &HashSet<String>,
    ) -> RankedList {
        let mut scored: Vec<(String, f64)> = self
            .doc_ids
            .iter()
            .filter(|id| !exclude.contains(*id))
            .map(|id| {
                let score = self.score(query_tokens, id).expect("indexed doc");
                (id.clone(), score)
            })
            .collect();
        scored.sort_by(|(id_a, s_a), (id_b, s_b)| {
            s_b.total_cmp(s_a).then_with(|| id_a.cmp(id_b))
        });
        scored.truncate(k);
        RankedList::from_sorted(scored)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::PaperRecord;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn doc(id: &str, text: &str) -> PaperRecord {
        PaperRecord {
            id: id.to_string(),
            title: text.to_string(),
            abstract_text: String::new(),
            references: Vec::new(),
            year: None,
            venue: None,
            role: None,
        }
    }

    fn corpus_of(docs: Vec<PaperRecord>) -> Corpus {
        Corpus::from_records(docs).unwrap()
    }

    #[test]
    fn build_index_single_doc() {
        let corpus = corpus_of(vec![doc("d1", "alpha beta")]);
        let index = build_index(&corpus, Bm25Params::default()).unwrap();
        assert_eq!(index.doc_count(), 1);
        assert_eq!(index.avg_doc_length(), 2.0);
    }

    #[test]
    fn build_index_average_length() {
        let corpus = corpus_of(vec![doc("d1", "alpha beta"), doc("d2", "alpha")]);
        let index = build_index(&corpus, Bm25Params::default()).unwrap();
        assert_eq!(index.doc_count(), 2);
        assert_eq!(index.avg_doc_length(), 1.5);
    }

    #[test]
    fn build_index_rejects_empty_corpus() {
        assert_eq!(
            build_index(&Corpus::default(), Bm25Params::default()).unwrap_err(),
            Bm25Error::EmptyCorpus
        );
    }

    #[test]
    fn index_includes_references_in_document_text() {
        let mut record = doc("d1", "alpha");
        record.abstract_text = "beta beta".to_string();
        record.references = vec!["gamma delta".to_string()];
        let corpus = corpus_of(vec![record]);
        let index = build_index(&corpus, Bm25Params::default()).unwrap();
        assert_eq!(index.avg_doc_length(), 5.0);
        assert_eq!(index.doc_freq("gamma"), 1);
    }

    #[test]
    fn score_of_unindexed_terms_is_zero() {
        let corpus = corpus_of(vec![doc("d1", "alpha beta")]);
        let index = build_index(&corpus, Bm25Params::default()).unwrap();
        let score = index.score(&tokenize("zzz yyy"), "d1").unwrap();
        assert_eq!(score, 0.0);
    }

    // idf("b") = ln(1 + (2 - 1 + 0.5)/(1 + 0.5)) = ln 2; tf factor with
    // tf=1, |d|=2, avgdl=1.5: 2.2 / (1 + 1.2*(0.25 + 0.75*2/1.5)) = 2.2/2.5.
    // Hand evaluation: ln(2) * 0.88 = 0.610042...
    #[test]
    fn score_matches_hand_evaluated_okapi() {
        let corpus = corpus_of(vec![doc("d1", "a b"), doc("d2", "a")]);
        let index = build_index(&corpus, Bm25Params { k1: 1.2, b: 0.75 }).unwrap();
        let score = index.score(&tokenize("b"), "d1").unwrap();
        assert!((score - 0.6100).abs() < 1e-4, "score = {score}");
        assert!((score - 2.0f64.ln() * 0.88).abs() < 1e-12);
    }

    #[test]
    fn duplicate_query_terms_double_the_score() {
        let corpus = corpus_of(vec![doc("d1", "a b"), doc("d2", "a")]);
        let index = build_index(&corpus, Bm25Params::default()).unwrap();
        let single = index.score(&tokenize("b"), "d1").unwrap();
        let double = index.score(&tokenize("b b"), "d1").unwrap();
        assert!((double - 2.0 * single).abs() < 1e-12);
    }

    #[test]
    fn unknown_doc_errors() {
        let corpus = corpus_of(vec![doc("d1", "a")]);
        let index = build_index(&corpus, Bm25Params::default()).unwrap();
        assert_eq!(
            index.score(&tokenize("a"), "nope").unwrap_err(),
            Bm25Error::UnknownDoc("nope".to_string())
        );
    }

    #[test]
    fn top_k_larger_than_corpus_returns_all_sorted() {
        let corpus = corpus_of(vec![doc("d1", "a b"), doc("d2", "a"), doc("d3", "c")]);
        let index = build_index(&corpus, Bm25Params::default()).unwrap();
        let ranked = index.top_k(&tokenize("a"), 10, &HashSet::new());
        assert_eq!(ranked.len(), 3);
        // d2 is shorter so it scores higher on "a"; d3 scores 0.
        assert_eq!(ranked.entries()[0].0, "d2");
        assert_eq!(ranked.entries()[1].0, "d1");
        assert_eq!(ranked.entries()[2].0, "d3");
    }

    #[test]
    fn top_k_respects_exclusions() {
        let corpus = corpus_of(vec![doc("d1", "a"), doc("d2", "a")]);
        let index = build_index(&corpus, Bm25Params::default()).unwrap();
        let exclude: HashSet<String> = [String::from("d1")].into();
        let ranked = index.top_k(&tokenize("a"), 10, &exclude);
        assert_eq!(ranked.len(), 1);
        assert_eq!(ranked.entries()[0].0, "d2");
    }

    #[test]
    fn ties_break_by_ascending_doc_id() {
        let corpus = corpus_of(vec![doc("z", "a"), doc("m", "a"), doc("b", "a")]);
        let index = build_index(&corpus, Bm25Params::default()).unwrap();
        let ranked = index.top_k(&tokenize("a"), 3, &HashSet::new());
        let ids: Vec<_> = ranked.entries().iter().map(|(id, _)| id.as_str()).collect();
        assert_eq!(ids, ["b", "m", "z"]);
    }

    #[test]
    fn score_monotone_in_term_frequency() {
        let corpus = corpus_of(vec![
            doc("d1", "a x y z"),
            doc("d2", "a a x y"),
            doc("d3", "a a a x"),
        ]);
        let index = build_index(&corpus, Bm25Params::default()).unwrap();
        let q = tokenize("a");
        let s1 = index.score(&q, "d1").unwrap();
        let s2 = index.score(&q, "d2").unwrap();
        let s3 = index.score(&q, "d3").unwrap();
        assert!(s1 < s2 && s2 < s3);
    }

    fn random_corpus(rng: &mut ChaCha8Rng, n_docs: usize) -> Corpus {
        let vocab: Vec<String> = (0..30).map(|i| format!("w{i}")).collect();
        let docs: Vec<PaperRecord> = (0..n_docs)
            .map(|i| {
                let len = rng.random_range(1..25);
                let words: Vec<&str> = (0..len)
                    .map(|_| vocab[rng.random_range(0..vocab.len())].as_str())
                    .collect();
                doc(&format!("d{i:03}"), &words.join(" "))
            })
            .collect();
        corpus_of(docs)
    }

    #[test]
    fn top_k_agrees_with_brute_force_on_random_corpora() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let n_docs = rng.random_range(50..=200);
            let corpus = random_corpus(&mut rng, n_docs);
            let index = build_index(&corpus, Bm25Params::default()).unwrap();
            let query_len = rng.random_range(1..6);
            let query: Vec<String> = (0..query_len).map(|i| format!("w{}", i * 3)).collect();

            let mut brute: Vec<(String, f64)> = corpus
                .ids()
                .map(|id| (id.to_string(), index.score(&query, id).unwrap()))
                .collect();
            brute.sort_by(|(id_a, s_a), (id_b, s_b)| {
                s_b.total_cmp(s_a).then_with(|| id_a.cmp(id_b))
            });

            let ranked = index.top_k(&query, n_docs, &HashSet::new());
            assert_eq!(ranked.entries().len(), brute.len());
            for ((id_a, s_a), (id_b, s_b)) in ranked.entries().iter().zip(&brute) {
                assert_eq!(id_a, id_b);
                assert!((s_a - s_b).abs() <= 1e-9);
                assert!(*s_a >= 0.0, "scores are non-negative under smoothed idf");
            }
        }
    }
}
