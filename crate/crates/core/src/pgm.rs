//! Netpbm graymap (PGM) reading and writing, ASCII `P2` and binary `P5`.
//!
//! Header tokens are whitespace separated and may be interleaved with `#`
//! comments running to the end of the line. Only 8-bit data is supported:
//! a maxval above 255 is rejected, and written files always carry 255.

use std::io::{self, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::image::{GrayImage, ImageError};

#[derive(Debug, Error)]
pub enum PgmError {
    #[error("bad magic number {0:?}, expected \"P2\" or \"P5\"")]
    BadMagic(String),
    #[error("header field `{0}` is missing")]
    MissingField(&'static str),
    #[error("header field `{field}` is not a number: {token:?}")]
    InvalidField { field: &'static str, token: String },
    #[error("header field `{0}` must be positive")]
    ZeroField(&'static str),
    #[error("maxval exceeds 8-bit range ({0} > 255)")]
    MaxvalOutOfRange(u64),
    #[error("truncated payload: expected {expected} samples, found {found}")]
    TruncatedPayload { expected: usize, found: usize },
    #[error("sample {index} is invalid: {token:?} (maxval {maxval})")]
    InvalidSample {
        index: usize,
        token: String,
        maxval: u8,
    },
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgmFormat {
    /// `P2`, decimal samples.
    Ascii,
    /// `P5`, one byte per sample.
    Binary,
}

/// Reads a whole PGM stream.
pub fn read_pgm(mut source: impl Read) -> Result<GrayImage, PgmError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    parse_pgm(&bytes)
}

pub fn read_pgm_file(path: impl AsRef<Path>) -> Result<GrayImage, PgmError> {
    let bytes = std::fs::read(path)?;
    parse_pgm(&bytes)
}

pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage, PgmError> {
    let mut cursor = Cursor { bytes, pos: 0 };

    let format = match bytes.get(..2) {
        Some(b"P2") => PgmFormat::Ascii,
        Some(b"P5") => PgmFormat::Binary,
        _ => {
            let shown = &bytes[..bytes.len().min(2)];
            return Err(PgmError::BadMagic(
                String::from_utf8_lossy(shown).into_owned(),
            ));
        }
    };
    cursor.pos = 2;
    if !cursor.at_separator() {
        let token = cursor.token().unwrap_or_default();
        return Err(PgmError::BadMagic(format!(
            "{}{}",
            String::from_utf8_lossy(&bytes[..2]),
            token
        )));
    }

    let width = cursor.header_number("width")?;
    let height = cursor.header_number("height")?;
    let maxval = cursor.header_number("maxval")?;
    if width == 0 {
        return Err(PgmError::ZeroField("width"));
    }
    if height == 0 {
        return Err(PgmError::ZeroField("height"));
    }
    if maxval == 0 {
        return Err(PgmError::ZeroField("maxval"));
    }
    if maxval > 255 {
        return Err(PgmError::MaxvalOutOfRange(maxval));
    }
    let maxval = maxval as u8;
    let (width, height) = (width as usize, height as usize);
    let expected = width.checked_mul(height).ok_or(PgmError::InvalidField {
        field: "height",
        token: height.to_string(),
    })?;

    let pixels = match format {
        PgmFormat::Binary => {
            // Exactly one whitespace byte separates maxval from the raster.
            let start = cursor.pos + 1;
            let payload = bytes.get(start..).unwrap_or_default();
            if payload.len() < expected {
                return Err(PgmError::TruncatedPayload {
                    expected,
                    found: payload.len(),
                });
            }
            let pixels = payload[..expected].to_vec();
            if let Some(index) = pixels.iter().position(|&p| p > maxval) {
                return Err(PgmError::InvalidSample {
                    index,
                    token: pixels[index].to_string(),
                    maxval,
                });
            }
            pixels
        }
        PgmFormat::Ascii => {
            let mut pixels = Vec::with_capacity(expected);
            while pixels.len() < expected {
                let Some(token) = cursor.token() else {
                    return Err(PgmError::TruncatedPayload {
                        expected,
                        found: pixels.len(),
                    });
                };
                let index = pixels.len();
                let value = token
                    .parse::<u16>()
                    .ok()
                    .filter(|&v| v <= maxval as u16)
                    .ok_or_else(|| PgmError::InvalidSample {
                        index,
                        token: token.clone(),
                        maxval,
                    })?;
                pixels.push(value as u8);
            }
            pixels
        }
    };

    Ok(GrayImage::new(width, height, pixels)?)
}

/// Encodes `image` as PGM with maxval 255.
pub fn write_pgm(image: &GrayImage, format: PgmFormat) -> Vec<u8> {
    let mut out = Vec::with_capacity(image.pixels().len() * 4 + 32);
    let magic = match format {
        PgmFormat::Ascii => "P2",
        PgmFormat::Binary => "P5",
    };
    // Writing into a Vec cannot fail.
    write!(out, "{magic}\n{} {}\n255\n", image.width(), image.height()).unwrap();
    match format {
        PgmFormat::Binary => out.extend_from_slice(image.pixels()),
        PgmFormat::Ascii => {
            for y in 0..image.height() {
                let row: Vec<String> = image.row(y).iter().map(u8::to_string).collect();
                out.extend_from_slice(row.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
    }
    out
}

pub fn write_pgm_file(
    image: &GrayImage,
    format: PgmFormat,
    path: impl AsRef<Path>,
) -> io::Result<()> {
    std::fs::write(path, write_pgm(image, format))
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn at_separator(&self) -> bool {
        matches!(self.bytes.get(self.pos), Some(b) if b.is_ascii_whitespace() || *b == b'#')
    }

    /// Skips whitespace and comments, then returns the next token.
    fn token(&mut self) -> Option<String> {
        loop {
            match self.bytes.get(self.pos)? {
                b if b.is_ascii_whitespace() => self.pos += 1,
                b'#' => {
                    while let Some(&b) = self.bytes.get(self.pos) {
                        if b == b'\n' || b == b'\r' {
                            break;
                        }
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = self.pos;
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() || b == b'#' {
                break;
            }
            self.pos += 1;
        }
        Some(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    fn header_number(&mut self, field: &'static str) -> Result<u64, PgmError> {
        let token = self.token().ok_or(PgmError::MissingField(field))?;
        token
            .parse::<u64>()
            .map_err(|_| PgmError::InvalidField { field, token })
    }
}
