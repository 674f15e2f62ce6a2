//! A single entry point over both detectors, plus the corner document format.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::{self, Corner, DetectorParams, FuzzyError, TemplateSet};
use crate::harris::{self, HarrisError, HarrisParams};
use crate::image::GrayImage;

#[derive(Debug, Error, PartialEq)]
pub enum DetectError {
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error(transparent)]
    Harris(#[from] HarrisError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectorKind {
    Fuzzy,
    Harris,
}

impl DetectorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DetectorKind::Fuzzy => "fuzzy",
            DetectorKind::Harris => "harris",
        }
    }
}

impl fmt::Display for DetectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DetectorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fuzzy" => Ok(DetectorKind::Fuzzy),
            "harris" => Ok(DetectorKind::Harris),
            other => Err(format!(
                "unknown detector {other:?}, expected fuzzy or harris"
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Detector {
    Fuzzy {
        params: DetectorParams,
        templates: Arc<TemplateSet>,
    },
    Harris(HarrisParams),
}

impl Detector {
    pub fn fuzzy_default() -> Self {
        Detector::Fuzzy {
            params: DetectorParams::default(),
            templates: Arc::new(TemplateSet::default_set()),
        }
    }

    pub fn harris_default() -> Self {
        Detector::Harris(HarrisParams::default())
    }

    pub fn kind(&self) -> DetectorKind {
        match self {
            Detector::Fuzzy { .. } => DetectorKind::Fuzzy,
            Detector::Harris(_) => DetectorKind::Harris,
        }
    }

    /// Runs detection on one image, single-threaded.
    pub fn detect(&self, image: &GrayImage) -> Result<Vec<Corner>, DetectError> {
        match self {
            Detector::Fuzzy { params, templates } => Ok(fuzzy::detect(image, params, templates)?),
            Detector::Harris(params) => Ok(harris::harris_detect(image, params)?),
        }
    }

    pub fn params_json(&self) -> serde_json::Value {
        match self {
            Detector::Fuzzy { params, .. } => serde_json::to_value(params),
            Detector::Harris(params) => serde_json::to_value(params),
        }
        .expect("parameter structs serialize")
    }
}

/// The corner list for one image as written by `detect`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CornerDocument {
    pub image: String,
    pub width: usize,
    pub height: usize,
    pub detector: DetectorKind,
    pub params: serde_json::Value,
    pub corners: Vec<Corner>,
}

impl CornerDocument {
    pub fn new(
        image: impl Into<String>,
        source: &GrayImage,
        detector: &Detector,
        corners: Vec<Corner>,
    ) -> Self {
        Self {
            image: image.into(),
            width: source.width(),
            height: source.height(),
            detector: detector.kind(),
            params: detector.params_json(),
            corners,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }
}

/// Copies `image` and draws a white plus with 3-pixel arms at every corner.
pub fn draw_overlay(image: &GrayImage, corners: &[Corner]) -> GrayImage {
    let (w, h) = (image.width(), image.height());
    let mut pixels = image.pixels().to_vec();
    for c in corners {
        pixels[c.y * w + c.x] = 255;
        for d in 1..=3 {
            if c.x >= d {
                pixels[c.y * w + c.x - d] = 255;
            }
            if c.x + d < w {
                pixels[c.y * w + c.x + d] = 255;
            }
            if c.y >= d {
                pixels[(c.y - d) * w + c.x] = 255;
            }
            if c.y + d < h {
                pixels[(c.y + d) * w + c.x] = 255;
            }
        }
    }
    GrayImage::new(w, h, pixels).expect("same dimensions")
}
