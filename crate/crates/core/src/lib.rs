//! Corner detection toolkit built around a fuzzy rule-based detector.
//!
//! - [`image`] and [`pgm`]: 8-bit grayscale images and Netpbm I/O.
//! - [`fuzzy`]: per-pixel fuzzy cornerness and corner selection.
//! - [`harris`]: the Harris baseline used for comparisons.
//! - [`degrade`]: illumination shifts, blur and impulsive noise.
//! - [`eval`]: corner matching, stability / noise-immunity factors, reports.
//! - [`synth`]: synthetic scenes with known corners.

pub mod degrade;
pub mod detector;
pub mod eval;
pub mod fuzzy;
pub mod harris;
pub mod image;
pub mod nms;
pub mod pgm;
pub mod synth;

pub use detector::{CornerDocument, Detector, DetectorKind};
pub use fuzzy::{Corner, DetectorParams, TemplateSet};
pub use harris::HarrisParams;
pub use image::GrayImage;
