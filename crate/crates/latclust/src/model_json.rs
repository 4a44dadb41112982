//! Model JSON: `{alpha, r, seed, maxdist, points:[{group, x, y}]}`, where `r`
//! is the number of iterations applied.

use latclust_core::embed::{EmbeddingModel, Point};
use serde::{Deserialize, Serialize};

use crate::FormatError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub group: u32,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub alpha: f64,
    pub r: u64,
    pub seed: u64,
    pub maxdist: f64,
    pub points: Vec<PointDoc>,
}

impl ModelDoc {
    pub fn from_model(m: &EmbeddingModel) -> Self {
        let points = m.points.iter().enumerate().map(|(g, p)| PointDoc { group: g as u32, x: p.x, y: p.y }).collect();
        ModelDoc { alpha: m.alpha, r: m.iterations, seed: m.seed, maxdist: m.maxdist, points }
    }

    pub fn into_model(self) -> Result<EmbeddingModel, FormatError> {
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(FormatError::Invalid(format!("{name} {v} outside [0, 1]")))
            }
        };
        unit("alpha", self.alpha)?;
        unit("maxdist", self.maxdist)?;
        let mut points = Vec::with_capacity(self.points.len());
        for (i, p) in self.points.into_iter().enumerate() {
            if p.group as usize != i {
                return Err(FormatError::Invalid(format!("point {i} is labelled group {}", p.group)));
            }
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(FormatError::Invalid(format!("group {i} has non-finite coordinates")));
            }
            points.push(Point { x: p.x, y: p.y });
        }
        Ok(EmbeddingModel { points, alpha: self.alpha, iterations: self.r, seed: self.seed, maxdist: self.maxdist })
    }
}

pub fn to_string(m: &EmbeddingModel) -> String {
    crate::to_json(&ModelDoc::from_model(m))
}

pub fn parse(text: &str) -> Result<EmbeddingModel, FormatError> {
    serde_json::from_str::<ModelDoc>(text)?.into_model()
}
