//! 8-bit grayscale images.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ImageError {
    #[error("image dimensions must be at least 1x1, got {width}x{height}")]
    ZeroDimension { width: usize, height: usize },
    #[error("pixel buffer holds {found} values, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
}

/// A row-major grid of 8-bit intensities.
///
/// Immutable once built: every transform in this crate returns a new image,
/// so images can be shared across worker threads without locking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension { width, height });
        }
        let expected = width * height;
        if pixels.len() != expected {
            return Err(ImageError::LengthMismatch {
                expected,
                found: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// An image where every pixel has the value `value`.
    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self, ImageError> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self, ImageError> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    /// Intensity at column `x`, row `y`. Panics when out of bounds.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        assert!(
            x < self.width && y < self.height,
            "pixel ({x}, {y}) out of bounds"
        );
        self.pixels[y * self.width + x]
    }

    pub fn row(&self, y: usize) -> &[u8] {
        &self.pixels[y * self.width..(y + 1) * self.width]
    }

    /// Applies `f` to every pixel, keeping the dimensions.
    pub fn map(&self, f: impl Fn(u8) -> u8) -> Self {
        Self {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().map(|&p| f(p)).collect(),
        }
    }
}

/// Converts interleaved RGB triplets to gray with BT.601 luma weights,
/// `round(0.299 R + 0.587 G + 0.114 B)`.
pub fn to_gray(rgb: &[u8], width: usize, height: usize) -> Result<GrayImage, ImageError> {
    let expected = width * height * 3;
    if rgb.len() != expected {
        return Err(ImageError::LengthMismatch {
            expected,
            found: rgb.len(),
        });
    }
    // Weights scaled by 1000; the sum tops out at 255_000 so the result never exceeds 255.
    let pixels = rgb
        .chunks_exact(3)
        .map(|c| {
            let luma = 299 * c[0] as u32 + 587 * c[1] as u32 + 114 * c[2] as u32;
            ((luma + 500) / 1000).min(255) as u8
        })
        .collect();
    GrayImage::new(width, height, pixels)
}
