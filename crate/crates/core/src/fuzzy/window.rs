use crate::image::GrayImage;

use super::template::{CornerTemplate, TemplateSet};
use super::{FuzzyError, CELL_COUNT, CENTER, FULL_MASK};

/// Signed differences between a center pixel and its 3x3 neighbourhood.
///
/// `e[r][c] = center - neighbour(r - 1, c - 1)`, so `e[1][1]` is always 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DifferenceWindow {
    e: [[i16; 3]; 3],
}

/// Which binarization produced a [`BinaryWindow`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Binarization {
    /// Mixed signs: positive cells are `e >= 0`.
    Sign,
    /// Every difference is non-negative: positive cells are `e <= t_h`.
    BrightCenter,
    /// Every off-center difference is negative: positive cells are `e >= -t_h`.
    DarkCenter,
}

/// The positive/negative cell sets of a binarized window, as 9-bit masks
/// (bit `3 * row + col`, zero-based). The two masks always partition the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BinaryWindow {
    ep: u16,
    en: u16,
    rule: Binarization,
}

impl DifferenceWindow {
    /// Differences around `(row, col)`; the pixel needs a full 3x3 neighbourhood.
    pub fn at(image: &GrayImage, row: usize, col: usize) -> Result<Self, FuzzyError> {
        if row == 0 || col == 0 || row + 1 >= image.height() || col + 1 >= image.width() {
            return Err(FuzzyError::WindowOutOfBounds { row, col });
        }
        let mut patch = [[0u8; 3]; 3];
        for (r, patch_row) in patch.iter_mut().enumerate() {
            for (c, p) in patch_row.iter_mut().enumerate() {
                *p = image.get(col + c - 1, row + r - 1);
            }
        }
        Ok(Self::from_patch(&patch))
    }

    pub fn from_patch(patch: &[[u8; 3]; 3]) -> Self {
        let center = patch[1][1] as i16;
        let mut e = [[0i16; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                e[r][c] = center - patch[r][c] as i16;
            }
        }
        Self { e }
    }

    pub fn e(&self) -> &[[i16; 3]; 3] {
        &self.e
    }

    pub fn binarize(&self, t_h: u8) -> BinaryWindow {
        let mut flat = [0i16; CELL_COUNT];
        for (i, v) in self.e.iter().flatten().enumerate() {
            flat[i] = *v;
        }
        let (ep, rule) = binarize_differences(&flat, t_h as i16);
        BinaryWindow {
            ep,
            en: !ep & FULL_MASK,
            rule,
        }
    }
}

/// Positive-cell mask of a flattened difference window.
///
/// The sign split is tried first; homogeneous-sign windows are re-split
/// around `t_h` so a bright or dark center can still form two regions.
#[inline]
pub(crate) fn binarize_differences(e: &[i16; CELL_COUNT], t_h: i16) -> (u16, Binarization) {
    let mut non_negative = 0u16;
    for (i, &d) in e.iter().enumerate() {
        non_negative |= ((d >= 0) as u16) << i;
    }
    if non_negative == FULL_MASK {
        let mut ep = 0u16;
        for (i, &d) in e.iter().enumerate() {
            ep |= ((d <= t_h) as u16) << i;
        }
        return (ep, Binarization::BrightCenter);
    }
    // The center difference is always 0, so "all negative" can only mean
    // all eight neighbours.
    if non_negative == 1 << CENTER {
        let mut ep = 0u16;
        for (i, &d) in e.iter().enumerate() {
            ep |= ((d >= -t_h) as u16) << i;
        }
        return (ep, Binarization::DarkCenter);
    }
    (non_negative, Binarization::Sign)
}

impl BinaryWindow {
    /// Builds a window from explicit masks. `ep` and `en` must partition the grid.
    pub fn from_masks(ep: u16, rule: Binarization) -> Self {
        let ep = ep & FULL_MASK;
        Self {
            ep,
            en: !ep & FULL_MASK,
            rule,
        }
    }

    pub fn ep_mask(&self) -> u16 {
        self.ep
    }

    pub fn en_mask(&self) -> u16 {
        self.en
    }

    /// Zero-based `row`, `col`.
    pub fn ep(&self, row: usize, col: usize) -> bool {
        self.ep >> (3 * row + col) & 1 == 1
    }

    pub fn en(&self, row: usize, col: usize) -> bool {
        self.en >> (3 * row + col) & 1 == 1
    }

    pub fn rule(&self) -> Binarization {
        self.rule
    }
}

/// Integer rule score in `0..=20`; the membership is this over 20.
#[inline]
pub fn rule_score(window: &BinaryWindow, template: &CornerTemplate) -> u8 {
    let a = template.region_a();
    let b = template.region_b();
    let count = |m: u16| m.count_ones() as u8;
    let direct = count(a & window.ep) * count(b & window.en);
    let swapped = count(b & window.ep) * count(a & window.en);
    direct.max(swapped)
}

/// Membership of the window in one corner rule, in `[0, 1]`.
pub fn rule_membership(window: &BinaryWindow, template: &CornerTemplate) -> f64 {
    rule_score(window, template) as f64 / 20.0
}

/// Max-aggregated membership over all rules of the set.
pub fn cornerness(window: &BinaryWindow, templates: &TemplateSet) -> f64 {
    templates
        .iter()
        .map(|t| rule_score(window, t))
        .max()
        .unwrap_or(0) as f64
        / 20.0
}
