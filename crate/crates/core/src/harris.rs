//! Harris corner detector used as the comparison baseline.
//!
//! Gradients come from the 5-tap operator `[-2 -1 0 1 2]` applied along rows
//! and columns. The structure matrix is accumulated with a normalized 7x7
//! Gaussian window (sigma 2), with no extra pre-smoothing, and scored as
//! `det(M) - k * trace(M)^2` with `k = 0.06`. Selection uses the same
//! suppression as the fuzzy detector, above a fraction of the maximum response.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::Corner;
use crate::image::GrayImage;
use crate::nms;

const GRADIENT_KERNEL: [i32; 5] = [-2, -1, 0, 1, 2];

#[derive(Debug, Error, PartialEq)]
pub enum HarrisError {
    #[error("image must be at least 5x5 for gradients, got {width}x{height}")]
    ImageTooSmall { width: usize, height: usize },
    #[error("invalid Harris parameter: {0}")]
    InvalidParam(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarrisParams {
    pub k: f64,
    /// Side of the Gaussian window; odd.
    pub window: usize,
    pub sigma: f64,
    /// Responses below `response_frac * max(R)` are discarded.
    pub response_frac: f64,
    /// Suppression window size; radius `h / 2`.
    pub h: usize,
}

impl Default for HarrisParams {
    fn default() -> Self {
        Self {
            k: 0.06,
            window: 7,
            sigma: 2.0,
            response_frac: 0.01,
            h: 10,
        }
    }
}

impl HarrisParams {
    pub fn validate(&self) -> Result<(), HarrisError> {
        let bad = |msg: String| Err(HarrisError::InvalidParam(msg));
        if !(self.k > 0.0 && self.k.is_finite()) {
            return bad(format!("k must be positive, got {}", self.k));
        }
        if self.window < 3 || self.window.is_multiple_of(2) {
            return bad(format!("window must be odd and >= 3, got {}", self.window));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return bad(format!("sigma must be positive, got {}", self.sigma));
        }
        if !(self.response_frac > 0.0 && self.response_frac < 1.0) {
            return bad(format!(
                "response_frac must be in (0, 1), got {}",
                self.response_frac
            ));
        }
        if self.h == 0 {
            return bad("H must be at least 1".into());
        }
        Ok(())
    }
}

/// Horizontal and vertical gradients. Pixels where the kernel would leave the
/// image are 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gradients {
    pub width: usize,
    pub height: usize,
    pub gx: Vec<i32>,
    pub gy: Vec<i32>,
}

pub fn gradients(image: &GrayImage) -> Result<Gradients, HarrisError> {
    let (w, h) = (image.width(), image.height());
    if w < 5 || h < 5 {
        return Err(HarrisError::ImageTooSmall {
            width: w,
            height: h,
        });
    }
    let px = image.pixels();
    let mut gx = vec![0i32; w * h];
    let mut gy = vec![0i32; w * h];
    for y in 0..h {
        for x in 2..w - 2 {
            gx[y * w + x] = GRADIENT_KERNEL
                .iter()
                .enumerate()
                .map(|(i, &k)| k * px[y * w + x + i - 2] as i32)
                .sum();
        }
    }
    for y in 2..h - 2 {
        for x in 0..w {
            gy[y * w + x] = GRADIENT_KERNEL
                .iter()
                .enumerate()
                .map(|(i, &k)| k * px[(y + i - 2) * w + x] as i32)
                .sum();
        }
    }
    Ok(Gradients {
        width: w,
        height: h,
        gx,
        gy,
    })
}

fn gaussian_kernel(size: usize, sigma: f64) -> Vec<f64> {
    let r = (size / 2) as f64;
    let raw: Vec<f64> = (0..size)
        .map(|i| {
            let d = i as f64 - r;
            (-d * d / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / sum).collect()
}

/// Separable correlation with `kernel` along both axes; outside the image is 0.
fn smooth(values: &[f64], w: usize, h: usize, kernel: &[f64]) -> Vec<f64> {
    let r = kernel.len() / 2;
    let mut tmp = vec![0.0; w * h];
    for y in 0..h {
        let row = &values[y * w..(y + 1) * w];
        for x in 0..w {
            let mut acc = 0.0;
            for (i, &k) in kernel.iter().enumerate() {
                let xx = x + i;
                if xx >= r && xx - r < w {
                    acc += k * row[xx - r];
                }
            }
            tmp[y * w + x] = acc;
        }
    }
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (i, &k) in kernel.iter().enumerate() {
                let yy = y + i;
                if yy >= r && yy - r < h {
                    acc += k * tmp[(yy - r) * w + x];
                }
            }
            out[y * w + x] = acc;
        }
    }
    out
}

/// Per-pixel Harris response `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResponseMap {
    pub width: usize,
    pub height: usize,
    pub values: Vec<f64>,
}

impl ResponseMap {
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn harris_response(
    image: &GrayImage,
    params: &HarrisParams,
) -> Result<ResponseMap, HarrisError> {
    params.validate()?;
    let g = gradients(image)?;
    let (w, h) = (g.width, g.height);
    let products = |f: fn(i32, i32) -> f64| -> Vec<f64> {
        g.gx.iter().zip(&g.gy).map(|(&a, &b)| f(a, b)).collect()
    };
    let kernel = gaussian_kernel(params.window, params.sigma);
    let sxx = smooth(&products(|a, _| (a as f64) * (a as f64)), w, h, &kernel);
    let syy = smooth(&products(|_, b| (b as f64) * (b as f64)), w, h, &kernel);
    let sxy = smooth(&products(|a, b| (a as f64) * (b as f64)), w, h, &kernel);
    let values = sxx
        .iter()
        .zip(&syy)
        .zip(&sxy)
        .map(|((&a, &b), &c)| {
            let trace = a + b;
            a * b - c * c - params.k * trace * trace
        })
        .collect();
    Ok(ResponseMap {
        width: w,
        height: h,
        values,
    })
}

/// Harris corners: responses at least `response_frac * max(R)`, suppressed
/// within radius `h / 2`. Empty when no response is positive.
pub fn harris_detect(image: &GrayImage, params: &HarrisParams) -> Result<Vec<Corner>, HarrisError> {
    let response = harris_response(image, params)?;
    let max = response.max();
    if max <= 0.0 {
        return Ok(Vec::new());
    }
    let threshold = params.response_frac * max;
    let kept = nms::suppress(
        &response.values,
        response.width,
        response.height,
        params.h / 2,
        |r| r >= threshold,
    );
    Ok(kept
        .into_iter()
        .map(|(x, y)| Corner {
            x,
            y,
            score: response.get(x, y),
        })
        .collect())
}
