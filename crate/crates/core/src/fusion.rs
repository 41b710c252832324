//! The attentive reference encoder: parameter-free dot-product attention
//! over reference embeddings, a weighted reference embedding, and the
//! content/reference combination producing the final paper embedding.
//!
//! Attention weights are `softmax([v_r1 .. v_rn]^T . v_content)` over raw,
//! unscaled dot products. The reference embedding is the weighted sum of
//! reference-title embeddings, and the fused embedding is the convex
//! combination `(1 - alpha) * v_content + alpha * v_ref` (or their
//! concatenation in the ablation mode, which ignores alpha). Two ablation
//! modes replace attention with uniform average pooling and the linear
//! combination with concatenation.
//!
//! All operations are pure; concurrency is unrestricted.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::PaperRecord;
use crate::embed::{EmbedError, EmbeddingProvider};

/// How reference embeddings are pooled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttentionMode {
    /// Dot-product attention against the content embedding.
    Attention,
    /// Uniform weights 1/n.
    AveragePooling,
}

impl std::str::FromStr for AttentionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "attention" => Ok(Self::Attention),
            "average" | "average_pooling" => Ok(Self::AveragePooling),
            other => Err(format!(
                "unknown attention mode {other:?} (expected attention|average)"
            )),
        }
    }
}

/// How content and reference embeddings combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombineMode {
    /// `(1 - alpha) * v_content + alpha * v_ref`.
    Linear,
    /// `[v_content || v_ref]`, ignoring alpha.
    Concatenation,
}

impl std::str::FromStr for CombineMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Self::Linear),
            "concat" | "concatenation" => Ok(Self::Concatenation),
            other => Err(format!(
                "unknown combine mode {other:?} (expected linear|concat)"
            )),
        }
    }
}

/// Fusion configuration: the balance weight and the two ablation switches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FusionConfig {
    pub alpha: f64,
    pub attention_mode: AttentionMode,
    pub combine_mode: CombineMode,
}

impl Default for FusionConfig {
    fn default() -> Self {
        Self {
            alpha: 0.6,
            attention_mode: AttentionMode::Attention,
            combine_mode: CombineMode::Linear,
        }
    }
}

impl FusionConfig {
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn validate(&self) -> Result<(), FusionError> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(FusionError::BadAlpha(self.alpha));
        }
        Ok(())
    }
}

/// Normalized attention weights over a paper's references.
#[derive(Debug, Clone, PartialEq)]
pub struct AttentionWeights(Vec<f64>);

impl AttentionWeights {
    /// Uniform weights 1/n, the average-pooling ablation.
    pub fn uniform(n: usize) -> Self {
        assert!(n > 0);
        Self(vec![1.0 / n as f64; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A final paper embedding, tagged with the combination mode that formed it
/// (length `dim` for linear, `2 * dim` for concatenation).
#[derive(Debug, Clone, PartialEq)]
pub struct FusedEmbedding {
    pub vector: Vec<f64>,
    pub mode: CombineMode,
}

/// Errors from the fusion pipeline.
#[derive(Debug)]
pub enum FusionError {
    EmptyReferences,
    DimMismatch { expected: usize, got: usize },
    /// Either argument of a cosine had zero norm.
    ZeroVector,
    BadAlpha(f64),
    Embed(EmbedError),
}

impl fmt::Display for FusionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyReferences => write!(f, "attention over an empty reference list"),
            Self::DimMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Self::ZeroVector => write!(f, "cosine similarity of a zero vector"),
            Self::BadAlpha(a) => write!(f, "alpha {a} outside [0, 1]"),
            Self::Embed(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FusionError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Self::Embed(e) => Some(e),
            _ => None,
        }
    }
}

impl From<EmbedError> for FusionError {
    fn from(e: EmbedError) -> Self {
        Self::Embed(e)
    }
}

/// Numerically stabilized softmax (max subtraction; exact in real
/// arithmetic). Output sums to 1, every entry in (0, 1].
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&z| (z - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_dim(expected: usize, got: usize) -> Result<(), FusionError> {
    if expected != got {
        return Err(FusionError::DimMismatch { expected, got });
    }
    Ok(())
}

/// Attention weights: softmax over the raw dot products of each reference
/// embedding with the content embedding.
pub fn attention_weights(
    v_content: &[f64],
    ref_embs: &[Vec<f64>],
) -> Result<AttentionWeights, FusionError> {
    if ref_embs.is_empty() {
        return Err(FusionError::EmptyReferences);
    }
    for r in ref_embs {
        check_dim(v_content.len(), r.len())?;
    }
    let logits: Vec<f64> = ref_embs.iter().map(|r| dot(r, v_content)).collect();
    Ok(AttentionWeights(softmax(&logits)))
}

/// Weighted sum of reference embeddings. Average-pooling callers pass
/// [`AttentionWeights::uniform`].
pub fn reference_embedding(
    weights: &AttentionWeights,
    ref_embs: &[Vec<f64>],
) -> Result<Vec<f64>, FusionError> {
    if weights.len() != ref_embs.len() {
        return Err(FusionError::DimMismatch {
            expected: weights.len(),
            got: ref_embs.len(),
        });
    }
    let dim = ref_embs.first().map_or(0, Vec::len);
    let mut out = vec![0.0; dim];
    for (w, r) in weights.values().iter().zip(ref_embs) {
        check_dim(dim, r.len())?;
        for (o, x) in out.iter_mut().zip(r) {
            *o += w * x;
        }
    }
    Ok(out)
}

/// Combine content and reference embeddings.
///
/// Linear mode returns the convex combination; alpha 0 and 1 reproduce the
/// inputs bit for bit. Concatenation mode returns `[v_content || v_ref]`
/// and ignores alpha.
pub fn fuse(
    v_content: &[f64],
    v_ref: &[f64],
    config: &FusionConfig,
) -> Result<FusedEmbedding, FusionError> {
    config.validate()?;
    check_dim(v_content.len(), v_ref.len())?;
    let vector = match config.combine_mode {
        CombineMode::Linear => {
            if config.alpha == 0.0 {
                v_content.to_vec()
            } else if config.alpha == 1.0 {
                v_ref.to_vec()
            } else {
                v_content
                    .iter()
                    .zip(v_ref)
                    .map(|(c, r)| (1.0 - config.alpha) * c + config.alpha * r)
                    .collect()
            }
        }
        CombineMode::Concatenation => {
            let mut v = Vec::with_capacity(v_content.len() + v_ref.len());
            v.extend_from_slice(v_content);
            v.extend_from_slice(v_ref);
            v
        }
    };
    Ok(FusedEmbedding {
        vector,
        mode: config.combine_mode,
    })
}

/// Run the full pipeline for one record: embed content, embed each
/// reference title, pool per the attention mode, combine per the combine
/// mode.
///
/// A record without references short-circuits to the content embedding in
/// linear mode and to `[v_content || 0]` in concatenation mode.
pub fn encode_paper(
    provider: &dyn EmbeddingProvider,
    record: &PaperRecord,
    config: &FusionConfig,
) -> Result<FusedEmbedding, FusionError> {
    config.validate()?;
    let v_content = provider.embed_content(&record.id, &record.title, &record.abstract_text)?;
    if record.references.is_empty() {
        let vector = match config.combine_mode {
            CombineMode::Linear => v_content,
            CombineMode::Concatenation => {
                let dim = v_content.len();
                let mut v = v_content;
                v.extend(std::iter::repeat(0.0).take(dim));
                v
            }
        };
        return Ok(FusedEmbedding {
            vector,
            mode: config.combine_mode,
        });
    }
    let ref_embs: Vec<Vec<f64>> = record
        .references
        .iter()
        .map(|title| provider.embed_reference_title(title))
        .collect::<Result<_, _>>()?;
    let weights = match config.attention_mode {
        AttentionMode::Attention => attention_weights(&v_content, &ref_embs)?,
        AttentionMode::AveragePooling => AttentionWeights::uniform(ref_embs.len()),
    };
    let v_ref = reference_embedding(&weights, &ref_embs)?;
    fuse(&v_content, &v_ref, config)
}

/// Cosine similarity `a.b / (|a| |b|)`, in [-1, 1] up to rounding.
///
/// A zero-norm argument is an error rather than a silent zero.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> Result<f64, FusionError> {
    check_dim(a.len(), b.len())?;
    let norm_a = dot(a, a).sqrt();
    let norm_b = dot(b, b).sqrt();
    if norm_a == 0.0 || norm_b == 0.0 {
        return Err(FusionError::ZeroVector);
    }
    Ok(dot(a, b) / (norm_a * norm_b))
}
