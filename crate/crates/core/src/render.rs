//! Threshold edges over an embedding: pairs placed close together (or far
//! apart), shaded by their true group distance.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::embed::{EmbeddingModel, TargetDistances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RenderMode {
    /// Pairs with `eucl <= t`; darker when the true distance is small.
    Close,
    /// Pairs with `eucl >= t`; darker when the true distance is large.
    Far,
}

impl RenderMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RenderMode::Close => "close",
            RenderMode::Far => "far",
        }
    }

    pub fn admits(self, eucl: f64, threshold: f64) -> bool {
        match self {
            RenderMode::Close => eucl <= threshold,
            RenderMode::Far => eucl >= threshold,
        }
    }

    /// Shade in `[0, 1]` (1 = black) for a true distance in `[0, 1]`.
    pub fn shade(self, target: f64) -> f64 {
        let s = match self {
            RenderMode::Close => 1.0 - target,
            RenderMode::Far => target,
        };
        s.clamp(0.0, 1.0)
    }
}

impl fmt::Display for RenderMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RenderError {
    InvalidMode(alloc::string::String),
    InvalidThreshold(f64),
    ModelSizeMismatch { points: usize, targets: usize },
}

impl fmt::Display for RenderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenderError::InvalidMode(m) => write!(f, "invalid mode {m:?} (expected close or far)"),
            RenderError::InvalidThreshold(t) => write!(f, "threshold {t} must be finite and non-negative"),
            RenderError::ModelSizeMismatch { points, targets } => {
                write!(f, "model has {points} points but {targets} target groups")
            }
        }
    }
}

impl core::error::Error for RenderError {}

impl FromStr for RenderMode {
    type Err = RenderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "close" => Ok(RenderMode::Close),
            "far" => Ok(RenderMode::Far),
            other => Err(RenderError::InvalidMode(other.into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderedEdge {
    pub a: usize,
    pub b: usize,
    pub eucl: f64,
    pub target: f64,
    pub shade: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRender {
    pub mode: RenderMode,
    pub threshold: f64,
    /// Ordered by `(a, b)` with `a < b`.
    pub edges: Vec<RenderedEdge>,
}

pub fn edges_at_threshold<T: TargetDistances + ?Sized>(
    model: &EmbeddingModel,
    targets: &T,
    mode: RenderMode,
    threshold: f64,
) -> Result<EdgeRender, RenderError> {
    if !threshold.is_finite() || threshold < 0.0 {
        return Err(RenderError::InvalidThreshold(threshold));
    }
    let n = model.len();
    if targets.len() != n {
        return Err(RenderError::ModelSizeMismatch { points: n, targets: targets.len() });
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let eucl = model.eucl(a, b);
            if mode.admits(eucl, threshold) {
                let target = targets.target(a, b);
                edges.push(RenderedEdge { a, b, eucl, target, shade: mode.shade(target) });
            }
        }
    }
    Ok(EdgeRender { mode, threshold, edges })
}
