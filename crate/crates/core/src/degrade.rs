//! Test perturbations: illumination shifts, box blur and salt-and-pepper noise.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::image::GrayImage;

#[derive(Debug, Error, PartialEq)]
pub enum DegradeError {
    #[error("kernel must be odd and at least 3, got {0}")]
    EvenKernel(usize),
    #[error("kernel {kernel} is too large for a {width}x{height} image")]
    KernelTooLarge {
        kernel: usize,
        width: usize,
        height: usize,
    },
    #[error("noise density must be in [0, 1], got {0}")]
    Density(f64),
}

/// One degradation with its parameters, as recorded in sidecar files.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Degradation {
    Brighten { amount: u8 },
    Darken { amount: u8 },
    Blur { kernel: usize },
    Impulse { density: f64, seed: u64 },
}

impl Degradation {
    pub fn validate(&self) -> Result<(), DegradeError> {
        match *self {
            Degradation::Blur { kernel } if kernel < 3 || kernel.is_multiple_of(2) => {
                Err(DegradeError::EvenKernel(kernel))
            }
            Degradation::Impulse { density, .. } if !(0.0..=1.0).contains(&density) => {
                Err(DegradeError::Density(density))
            }
            _ => Ok(()),
        }
    }

    pub fn apply(&self, image: &GrayImage) -> Result<GrayImage, DegradeError> {
        match *self {
            Degradation::Brighten { amount } => Ok(brighten(image, amount)),
            Degradation::Darken { amount } => Ok(darken(image, amount)),
            Degradation::Blur { kernel } => blur(image, kernel),
            Degradation::Impulse { density, seed } => impulse_noise(image, density, seed),
        }
    }
}

/// `min(p + c, 255)` per pixel.
pub fn brighten(image: &GrayImage, c: u8) -> GrayImage {
    image.map(|p| p.saturating_add(c))
}

/// `max(p - c, 0)` per pixel.
pub fn darken(image: &GrayImage, c: u8) -> GrayImage {
    image.map(|p| p.saturating_sub(c))
}

/// Box mean over a `kernel x kernel` window, edges replicated, rounded to nearest.
pub fn blur(image: &GrayImage, kernel: usize) -> Result<GrayImage, DegradeError> {
    if kernel < 3 || kernel.is_multiple_of(2) {
        return Err(DegradeError::EvenKernel(kernel));
    }
    let (w, h) = (image.width(), image.height());
    if kernel > w || kernel > h {
        return Err(DegradeError::KernelTooLarge {
            kernel,
            width: w,
            height: h,
        });
    }
    let r = (kernel / 2) as isize;
    let clamp = |v: isize, n: usize| v.clamp(0, n as isize - 1) as usize;

    // Horizontal sums first, then vertical sums of those.
    let mut rows = vec![0u32; w * h];
    for y in 0..h {
        let row = image.row(y);
        for x in 0..w {
            rows[y * w + x] = (-r..=r).map(|d| row[clamp(x as isize + d, w)] as u32).sum();
        }
    }
    let area = (kernel * kernel) as u32;
    let mut pixels = vec![0u8; w * h];
    for y in 0..h {
        for x in 0..w {
            let sum: u32 = (-r..=r)
                .map(|d| rows[clamp(y as isize + d, h) * w + x])
                .sum();
            pixels[y * w + x] = ((sum + area / 2) / area) as u8;
        }
    }
    Ok(GrayImage::new(w, h, pixels).expect("same dimensions"))
}

/// Sets exactly `round(density * pixel count)` distinct pixels to 0 or 255
/// with equal odds. The output depends only on the image, density and seed.
pub fn impulse_noise(
    image: &GrayImage,
    density: f64,
    seed: u64,
) -> Result<GrayImage, DegradeError> {
    if !(0.0..=1.0).contains(&density) {
        return Err(DegradeError::Density(density));
    }
    let n = image.pixels().len();
    let count = ((density * n as f64).round() as usize).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen = index::sample(&mut rng, n, count);
    let mut pixels = image.pixels().to_vec();
    for i in chosen.iter() {
        pixels[i] = if rng.random_bool(0.5) { 255 } else { 0 };
    }
    Ok(GrayImage::new(image.width(), image.height(), pixels).expect("same dimensions"))
}
