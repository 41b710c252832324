//! Citation recommendation engine.
//!
//! Ranks candidate papers for a query paper by cosine similarity of fused
//! embeddings. A paper's embedding combines a content embedding (title +
//! abstract) with an attention-weighted sum of its reference-title
//! embeddings; the two are blended with a tunable weight `alpha`. Models are
//! trained with a cosine triplet margin loss over (query, positive, negative)
//! instances, where negatives are drawn both at random and from the model's
//! current nearest neighbors (hard negatives, refreshed periodically).
//!
//! The crate also ships an Okapi BM25 inverted index as a sparse baseline,
//! the MAP/MRR/NDCG/Recall@K evaluation harness, a CLI (`citerank`) and a
//! small HTTP query service.
//!
//! Embeddings come from one of two providers behind the same trait:
//! a file-backed store of precomputed vectors, or the built-in shallow
//! encoder (a linear projection over hashed bag-of-words features) that the
//! trainer optimizes.

pub mod bm25;
pub mod corpus;
pub mod embed;
pub mod eval;
pub mod fusion;
pub mod service;
pub mod textproc;
pub mod train;
