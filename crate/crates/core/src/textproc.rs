//! Deterministic tokenization and feature hashing.
//!
//! Shared by the BM25 index and the built-in shallow encoder. The hash
//! function is part of the on-disk model compatibility contract: a model
//! file records [`HASH_IDENTITY`] and [`HASH_SEED`], and loading rejects
//! files produced under a different hash.

use std::collections::BTreeMap;
use std::fmt;

/// Name of the token hash recorded in model file headers.
pub const HASH_IDENTITY: &str = "fnv1a64";

/// FNV-1a 64-bit offset basis, doubling as the recorded hash seed.
pub const HASH_SEED: u64 = 0xcbf2_9ce4_8422_2325;

const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// Errors from feature hashing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TextError {
    /// The requested feature dimension is not a power of two >= 2.
    BadDim(usize),
}

impl fmt::Display for TextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BadDim(dim) => write!(f, "feature dim {dim} is not a power of two >= 2"),
        }
    }
}

impl std::error::Error for TextError {}

/// Hashed bag-of-words counts over a fixed power-of-two bucket space.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseFeatureVector {
    dim: usize,
    counts: BTreeMap<usize, u32>,
}

impl SparseFeatureVector {
    /// Bucket dimensionality.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Occupied buckets in ascending index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.counts.iter().map(|(&b, &c)| (b, c))
    }

    /// Total token count (sum of bucket counts).
    pub fn total(&self) -> u64 {
        self.counts.values().map(|&c| u64::from(c)).sum()
    }

    /// Number of occupied buckets.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    /// True when no bucket is occupied.
    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Count for one bucket (0 when unoccupied).
    pub fn count(&self, bucket: usize) -> u32 {
        self.counts.get(&bucket).copied().unwrap_or(0)
    }
}

/// Split text into lowercase word tokens.
///
/// A token is a maximal run of Unicode alphanumeric characters; whitespace
/// and punctuation separate tokens and are dropped. Empty fragments never
/// appear in the output.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|s| !s.is_empty())
        .map(|s| s.to_lowercase())
        .collect()
}

/// FNV-1a 64-bit over the token's UTF-8 bytes.
///
/// Fixed constants (offset basis [`HASH_SEED`], prime 0x100000001b3) keep
/// bucket assignment identical across runs, builds and platforms.
pub fn stable_hash64(token: &str) -> u64 {
    let mut h = HASH_SEED;
    for &byte in token.as_bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Map tokens to hashed buckets, accumulating counts.
///
/// `dim` must be a power of two >= 2; the bucket is `stable_hash64(token) mod dim`.
pub fn hash_features(tokens: &[String], dim: usize) -> Result<SparseFeatureVector, TextError> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(TextError::BadDim(dim));
    }
    let mask = (dim - 1) as u64;
    let mut counts = BTreeMap::new();
    for token in tokens {
        let bucket = (stable_hash64(token) & mask) as usize;
        *counts.entry(bucket).or_insert(0u32) += 1;
    }
    Ok(SparseFeatureVector { dim, counts })
}
