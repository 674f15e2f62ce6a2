use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::image::GrayImage;
use crate::nms;

use super::template::TemplateSet;
use super::window::binarize_differences;
use super::{DetectorParams, FuzzyError, CELL_COUNT};

/// A detected corner at column `x`, row `y`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corner {
    pub x: usize,
    pub y: usize,
    pub score: f64,
}

/// Per-pixel cornerness, stored as exact rule scores `k` with `mu = k / 20`.
/// The one-pixel border is always 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornernessMap {
    width: usize,
    height: usize,
    scores: Vec<u8>,
}

impl CornernessMap {
    /// Wraps raw scores in `0..=20`. Values above 20 are clamped.
    pub fn from_scores(width: usize, height: usize, mut scores: Vec<u8>) -> Self {
        assert_eq!(scores.len(), width * height, "score grid size mismatch");
        for s in &mut scores {
            *s = (*s).min(20);
        }
        Self {
            width,
            height,
            scores,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn scores(&self) -> &[u8] {
        &self.scores
    }

    pub fn score(&self, x: usize, y: usize) -> u8 {
        self.scores[y * self.width + x]
    }

    pub fn mu(&self, x: usize, y: usize) -> f64 {
        self.score(x, y) as f64 / 20.0
    }

    pub fn max_mu(&self) -> f64 {
        self.scores.iter().copied().max().unwrap_or(0) as f64 / 20.0
    }

    /// The map as an 8-bit image, `round(255 * mu)`.
    pub fn to_image(&self) -> GrayImage {
        // 255 * k / 20, rounded half up.
        let pixels = self
            .scores
            .iter()
            .map(|&k| ((k as u32 * 255 + 10) / 20) as u8)
            .collect();
        GrayImage::new(self.width, self.height, pixels).expect("map dimensions are valid")
    }
}

fn check_size(image: &GrayImage) -> Result<(), FuzzyError> {
    if image.width() < 3 || image.height() < 3 {
        return Err(FuzzyError::ImageTooSmall {
            width: image.width(),
            height: image.height(),
        });
    }
    Ok(())
}

fn fill_row(image: &GrayImage, y: usize, t_h: i16, templates: &TemplateSet, out: &mut [u8]) {
    let w = image.width();
    if y == 0 || y + 1 >= image.height() {
        return;
    }
    let (up, mid, down) = (image.row(y - 1), image.row(y), image.row(y + 1));
    let mut e = [0i16; CELL_COUNT];
    for x in 1..w - 1 {
        let c = mid[x] as i16;
        e[0] = c - up[x - 1] as i16;
        e[1] = c - up[x] as i16;
        e[2] = c - up[x + 1] as i16;
        e[3] = c - mid[x - 1] as i16;
        e[4] = 0;
        e[5] = c - mid[x + 1] as i16;
        e[6] = c - down[x - 1] as i16;
        e[7] = c - down[x] as i16;
        e[8] = c - down[x + 1] as i16;
        let (ep, _) = binarize_differences(&e, t_h);
        out[x] = templates.score_for_mask(ep);
    }
}

/// Cornerness of every pixel, evaluated sequentially.
pub fn cornerness_map(
    image: &GrayImage,
    params: &DetectorParams,
    templates: &TemplateSet,
) -> Result<CornernessMap, FuzzyError> {
    check_size(image)?;
    let (w, h) = (image.width(), image.height());
    let mut scores = vec![0u8; w * h];
    for (y, row) in scores.chunks_mut(w).enumerate() {
        fill_row(image, y, params.t_h as i16, templates, row);
    }
    Ok(CornernessMap {
        width: w,
        height: h,
        scores,
    })
}

/// Same result as [`cornerness_map`], with rows spread over the current rayon pool.
pub fn cornerness_map_parallel(
    image: &GrayImage,
    params: &DetectorParams,
    templates: &TemplateSet,
) -> Result<CornernessMap, FuzzyError> {
    check_size(image)?;
    let (w, h) = (image.width(), image.height());
    let mut scores = vec![0u8; w * h];
    scores
        .par_chunks_mut(w)
        .enumerate()
        .for_each(|(y, row)| fill_row(image, y, params.t_h as i16, templates, row));
    Ok(CornernessMap {
        width: w,
        height: h,
        scores,
    })
}

/// Keeps pixels with `mu >= t_c` that are maximal within radius `h / 2`.
pub fn select_corners(map: &CornernessMap, params: &DetectorParams) -> Vec<Corner> {
    let t_c = params.t_c;
    nms::suppress(&map.scores, map.width, map.height, params.radius(), |k| {
        k as f64 / 20.0 >= t_c
    })
    .into_iter()
    .map(|(x, y)| Corner {
        x,
        y,
        score: map.mu(x, y),
    })
    .collect()
}

/// Validates `params`, then computes the map and selects corners.
pub fn detect(
    image: &GrayImage,
    params: &DetectorParams,
    templates: &TemplateSet,
) -> Result<Vec<Corner>, FuzzyError> {
    params.validate()?;
    let map = cornerness_map(image, params, templates)?;
    Ok(select_corners(&map, params))
}
