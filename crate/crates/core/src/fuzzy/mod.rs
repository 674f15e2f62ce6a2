//! Fuzzy rule-based corner detection.
//!
//! Every pixel with a full 3x3 neighbourhood is scored by comparing the signs
//! of its neighbour differences against a set of twelve two-region corner
//! templates. The per-rule membership is the product of "positive cells in one
//! region" and "negative cells in the other", normalized by 20; cornerness is
//! the max over rules. Corners are then picked by thresholding and
//! non-maximum suppression.

mod map;
mod template;
mod window;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use map::{
    cornerness_map, cornerness_map_parallel, detect, select_corners, Corner, CornernessMap,
};
pub use template::{CornerTemplate, TemplateError, TemplateSet};
pub use window::{
    cornerness, rule_membership, rule_score, Binarization, BinaryWindow, DifferenceWindow,
};

pub(crate) const CELL_COUNT: usize = 9;
pub(crate) const CENTER: usize = 4;
pub(crate) const FULL_MASK: u16 = 0x1FF;
pub(crate) const RULE_COUNT: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FuzzyError {
    #[error("window out of bounds at row {row}, col {col}")]
    WindowOutOfBounds { row: usize, col: usize },
    #[error("image must be at least 3x3, got {width}x{height}")]
    ImageTooSmall { width: usize, height: usize },
    #[error(transparent)]
    Params(#[from] ParamError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("t_c out of range: {0} (must be in (0, 1])")]
    CornerThreshold(String),
    #[error("H must be at least 1")]
    Window,
}

/// Detector configuration. Defaults: `t_h = 20`, `t_c = 0.7`, `h = 10`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetectorParams {
    /// Gray-level difference threshold used when all differences share a sign.
    pub t_h: u8,
    /// Minimum cornerness for a pixel to be considered.
    pub t_c: f64,
    /// Selection window size; suppression uses radius `h / 2`.
    pub h: usize,
}

impl Default for DetectorParams {
    fn default() -> Self {
        Self {
            t_h: 20,
            t_c: 0.7,
            h: 10,
        }
    }
}

impl DetectorParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.t_c > 0.0 && self.t_c <= 1.0) {
            return Err(ParamError::CornerThreshold(self.t_c.to_string()));
        }
        if self.h == 0 {
            return Err(ParamError::Window);
        }
        Ok(())
    }

    /// Non-fatal remarks about unusual but accepted settings.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.t_h <= 5 || self.t_h >= 35 {
            out.push(format!(
                "t_h = {} is outside the usual range (5, 35)",
                self.t_h
            ));
        }
        out
    }

    pub fn radius(&self) -> usize {
        self.h / 2
    }
}
