//! Embedding providers: a file-backed store of precomputed vectors and the
//! built-in shallow trainable encoder.
//!
//! The shallow encoder is a linear projection over hashed bag-of-words
//! features: no bias, no nonlinearity, no normalization. That keeps every
//! gradient exactly derivable and embeddings additive over token multisets.
//!
//! On-disk formats (all integers little-endian):
//!
//! * store: magic `RMCE`, u32 version = 1, u32 dim, u64 count, then per
//!   record a u16 id byte-length, the UTF-8 id bytes and `dim` f32 values;
//! * model: magic `RMCM`, u32 version = 1, a u16-length-prefixed hash
//!   identity string, u64 hash seed, u32 feature dim, u32 embed dim, then
//!   the projection matrix row-major as f32.
//!
//! The hash identity and seed recorded in a model header must match this
//! build's [`crate::textproc::HASH_IDENTITY`] / [`crate::textproc::HASH_SEED`],
//! otherwise the file's bucket assignment is meaningless here and loading
//! fails.

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use indexmap::IndexMap;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::normalize_title;
use crate::textproc::{hash_features, tokenize, HASH_IDENTITY, HASH_SEED};

const STORE_MAGIC: &[u8; 4] = b"RMCE";
const MODEL_MAGIC: &[u8; 4] = b"RMCM";
const FORMAT_VERSION: u32 = 1;

/// Errors from providers and the binary file formats.
#[derive(Debug)]
pub enum EmbedError {
    Io(std::io::Error),
    /// No stored vector under this key.
    MissingVector(String),
    BadMagic,
    BadVersion(u32),
    TruncatedFile,
    DimMismatch { expected: usize, got: usize },
    /// Store keys are length-prefixed with a u16.
    KeyTooLong(usize),
    NonFinite(String),
    /// Model file produced under a different token hash.
    IncompatibleHash { identity: String, seed: u64 },
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io(e) => write!(f, "io error: {e}"),
            Self::MissingVector(key) => write!(f, "no stored vector for key {key:?}"),
            Self::BadMagic => write!(f, "bad magic bytes"),
            Self::BadVersion(v) => write!(f, "unsupported format version {v}"),
            Self::TruncatedFile => write!(f, "file truncated mid-record"),
            Self::DimMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Self::KeyTooLong(len) => write!(f, "key of {len} bytes exceeds the u16 limit"),
            Self::NonFinite(key) => write!(f, "non-finite value in vector for {key:?}"),
            Self::IncompatibleHash { identity, seed } => write!(
                f,
                "model hashed with {identity:?} (seed {seed:#x}), this build uses {HASH_IDENTITY:?} (seed {HASH_SEED:#x})"
            ),
        }
    }
}

impl std::error::Error for EmbedError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Self::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for EmbedError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            Self::TruncatedFile
        } else {
            Self::Io(e)
        }
    }
}

/// Anything that maps paper text to fixed-dimension dense vectors.
///
/// Content vectors are keyed by paper id for store-backed providers; the
/// built-in encoder derives them from the title and abstract text instead
/// and ignores the id. Reference titles are keyed by normalized title.
pub trait EmbeddingProvider: Send + Sync {
    /// Output dimensionality; constant across all outputs.
    fn dim(&self) -> usize;

    fn embed_content(
        &self,
        id: &str,
        title: &str,
        abstract_text: &str,
    ) -> Result<Vec<f64>, EmbedError>;

    fn embed_reference_title(&self, title: &str) -> Result<Vec<f64>, EmbedError>;
}

/// The built-in shallow encoder: a `feature_dim x embed_dim` projection
/// applied to hashed token counts.
#[derive(Debug, Clone, PartialEq)]
pub struct ShallowModel {
    feature_dim: usize,
    embed_dim: usize,
    /// Row-major, row = feature bucket.
    projection: Vec<f64>,
}

impl ShallowModel {
    pub const DEFAULT_FEATURE_DIM: usize = 1 << 18;
    pub const DEFAULT_EMBED_DIM: usize = 64;

    /// Random initialization: i.i.d. uniform on
    /// `[-1/sqrt(feature_dim), +1/sqrt(feature_dim)]`, generated row by row
    /// from a ChaCha8 stream seeded with `seed`.
    pub fn init(feature_dim: usize, embed_dim: usize, seed: u64) -> Self {
        assert!(
            feature_dim >= 2 && feature_dim.is_power_of_two(),
            "feature_dim must be a power of two >= 2"
        );
        assert!(embed_dim >= 1, "embed_dim must be positive");
        let bound = 1.0 / (feature_dim as f64).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let projection = (0..feature_dim * embed_dim)
            .map(|_| rng.random_range(-bound..=bound))
            .collect();
        Self {
            feature_dim,
            embed_dim,
            projection,
        }
    }

    /// Wrap an explicit projection matrix (row-major, `feature_dim` rows).
    pub fn from_projection(feature_dim: usize, embed_dim: usize, projection: Vec<f64>) -> Self {
        assert!(
            feature_dim >= 2 && feature_dim.is_power_of_two(),
            "feature_dim must be a power of two >= 2"
        );
        assert_eq!(projection.len(), feature_dim * embed_dim);
        Self {
            feature_dim,
            embed_dim,
            projection,
        }
    }

    pub fn feature_dim(&self) -> usize {
        self.feature_dim
    }

    pub fn embed_dim(&self) -> usize {
        self.embed_dim
    }

    /// Projection row for one feature bucket.
    pub fn row(&self, bucket: usize) -> &[f64] {
        let start = bucket * self.embed_dim;
        &self.projection[start..start + self.embed_dim]
    }

    pub(crate) fn row_mut(&mut self, bucket: usize) -> &mut [f64] {
        let start = bucket * self.embed_dim;
        &mut self.projection[start..start + self.embed_dim]
    }

    pub(crate) fn projection(&self) -> &[f64] {
        &self.projection
    }

    pub(crate) fn projection_mut(&mut self) -> &mut [f64] {
        &mut self.projection
    }

    /// Hashed token counts for a set of text fields joined by spaces.
    pub fn features(&self, text_fields: &[&str]) -> crate::textproc::SparseFeatureVector {
        let joined = text_fields.join(" ");
        hash_features(&tokenize(&joined), self.feature_dim).expect("feature_dim validated")
    }

    /// Embed text fields: the count-weighted sum of projection rows of the
    /// occupied buckets. Empty text yields the zero vector.
    pub fn embed_fields(&self, text_fields: &[&str]) -> Vec<f64> {
        let features = self.features(text_fields);
        let mut out = vec![0.0; self.embed_dim];
        for (bucket, count) in features.entries() {
            let row = self.row(bucket);
            let weight = f64::from(count);
            for (o, r) in out.iter_mut().zip(row) {
                *o += weight * r;
            }
        }
        out
    }

    /// Write the model file (projection rounded to f32 on disk).
    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), EmbedError> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(MODEL_MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        write_key(&mut w, HASH_IDENTITY)?;
        w.write_all(&HASH_SEED.to_le_bytes())?;
        w.write_all(&(self.feature_dim as u32).to_le_bytes())?;
        w.write_all(&(self.embed_dim as u32).to_le_bytes())?;
        for &value in &self.projection {
            w.write_all(&(value as f32).to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    /// Load a model file, rejecting files produced under a different hash.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, EmbedError> {
        let mut r = BufReader::new(File::open(path)?);
        check_header(&mut r, MODEL_MAGIC)?;
        let identity = read_key(&mut r)?;
        let seed = read_u64(&mut r)?;
        if identity != HASH_IDENTITY || seed != HASH_SEED {
            return Err(EmbedError::IncompatibleHash { identity, seed });
        }
        let feature_dim = read_u32(&mut r)? as usize;
        let embed_dim = read_u32(&mut r)? as usize;
        if feature_dim < 2 || !feature_dim.is_power_of_two() || embed_dim == 0 {
            return Err(EmbedError::DimMismatch {
                expected: 2,
                got: feature_dim,
            });
        }
        let mut projection = Vec::with_capacity(feature_dim * embed_dim);
        for _ in 0..feature_dim * embed_dim {
            projection.push(f64::from(read_f32(&mut r)?));
        }
        Ok(Self {
            feature_dim,
            embed_dim,
            projection,
        })
    }
}

impl EmbeddingProvider for ShallowModel {
    fn dim(&self) -> usize {
        self.embed_dim
    }

    fn embed_content(
        &self,
        _id: &str,
        title: &str,
        abstract_text: &str,
    ) -> Result<Vec<f64>, EmbedError> {
        Ok(self.embed_fields(&[title, abstract_text]))
    }

    fn embed_reference_title(&self, title: &str) -> Result<Vec<f64>, EmbedError> {
        Ok(self.embed_fields(&[title]))
    }
}

/// Precomputed dense vectors keyed by paper id (content) or normalized
/// reference title.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingStore {
    dim: usize,
    vectors: IndexMap<String, Vec<f64>>,
}

impl EmbeddingStore {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "store dim must be positive");
        Self {
            dim,
            vectors: IndexMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn insert(&mut self, key: impl Into<String>, vector: Vec<f64>) -> Result<(), EmbedError> {
        let key = key.into();
        if vector.len() != self.dim {
            return Err(EmbedError::DimMismatch {
                expected: self.dim,
                got: vector.len(),
            });
        }
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(EmbedError::NonFinite(key));
        }
        self.vectors.insert(key, vector);
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&[f64]> {
        self.vectors.get(key).map(Vec::as_slice)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.vectors.keys().map(String::as_str)
    }
}

impl EmbeddingProvider for EmbeddingStore {
    fn dim(&self) -> usize {
        self.dim
    }

    fn embed_content(
        &self,
        id: &str,
        _title: &str,
        _abstract_text: &str,
    ) -> Result<Vec<f64>, EmbedError> {
        self.get(id)
            .map(<[f64]>::to_vec)
            .ok_or_else(|| EmbedError::MissingVector(id.to_string()))
    }

    fn embed_reference_title(&self, title: &str) -> Result<Vec<f64>, EmbedError> {
        let key = normalize_title(title);
        self.get(&key)
            .map(<[f64]>::to_vec)
            .ok_or(EmbedError::MissingVector(key))
    }
}

/// Write the store file (vectors rounded to f32 on disk).
pub fn save_store(store: &EmbeddingStore, path: impl AsRef<Path>) -> Result<(), EmbedError> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(STORE_MAGIC)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;
    w.write_all(&(store.dim as u32).to_le_bytes())?;
    w.write_all(&(store.vectors.len() as u64).to_le_bytes())?;
    for (key, vector) in &store.vectors {
        write_key(&mut w, key)?;
        for &value in vector {
            w.write_all(&(value as f32).to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Read a store file written by [`save_store`]. Byte-exact round trip.
pub fn load_store(path: impl AsRef<Path>) -> Result<EmbeddingStore, EmbedError> {
    let mut r = BufReader::new(File::open(path)?);
    check_header(&mut r, STORE_MAGIC)?;
    let dim = read_u32(&mut r)? as usize;
    if dim == 0 {
        return Err(EmbedError::DimMismatch {
            expected: 1,
            got: 0,
        });
    }
    let count = read_u64(&mut r)?;
    let mut store = EmbeddingStore::new(dim);
    for _ in 0..count {
        let key = read_key(&mut r)?;
        let mut vector = Vec::with_capacity(dim);
        for _ in 0..dim {
            vector.push(f64::from(read_f32(&mut r)?));
        }
        store.insert(key, vector)?;
    }
    Ok(store)
}

fn check_header(r: &mut impl Read, magic: &[u8; 4]) -> Result<(), EmbedError> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    if &buf != magic {
        return Err(EmbedError::BadMagic);
    }
    let version = read_u32(r)?;
    if version != FORMAT_VERSION {
        return Err(EmbedError::BadVersion(version));
    }
    Ok(())
}

fn write_key(w: &mut impl Write, key: &str) -> Result<(), EmbedError> {
    let bytes = key.as_bytes();
    let len = u16::try_from(bytes.len()).map_err(|_| EmbedError::KeyTooLong(bytes.len()))?;
    w.write_all(&len.to_le_bytes())?;
    w.write_all(bytes)?;
    Ok(())
}

fn read_key(r: &mut impl Read) -> Result<String, EmbedError> {
    let mut len_buf = [0u8; 2];
    r.read_exact(&mut len_buf)?;
    let len = u16::from_le_bytes(len_buf) as usize;
    let mut bytes = vec![0u8; len];
    r.read_exact(&mut bytes)?;
    String::from_utf8(bytes).map_err(|_| EmbedError::BadMagic)
}

fn read_u32(r: &mut impl Read) -> Result<u32, EmbedError> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64(r: &mut impl Read) -> Result<u64, EmbedError> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_f32(r: &mut impl Read) -> Result<f32, EmbedError> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(f32::from_le_bytes(buf))
}
