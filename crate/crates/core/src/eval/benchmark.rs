use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degrade::{brighten, darken, impulse_noise};
use crate::detector::Detector;
use crate::image::GrayImage;
use crate::pgm::read_pgm_file;

use super::matching::match_corners;
use super::metrics::{noise_immunity_from_counts, stability_from_counts};
use super::report::{FileError, MetricKind, MetricsReport, Record};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no PGM images found in {0}")]
    EmptyDirectory(PathBuf),
    #[error("cannot list {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("match distance must be positive, got {0}")]
    MatchDistance(f64),
    #[error("noise density must be in [0, 1], got {0}")]
    Density(f64),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

/// How the two frames of each image pair are produced.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "protocol", rename_all = "lowercase")]
pub enum Protocol {
    /// Frames `I + shift` and `I - shift` (saturating); scored with the stability factor.
    Stability { shift: u8 },
    /// The clean image against salt-and-pepper noise; scored with noise immunity.
    /// The image at sorted position `i` uses seed `seed + i`.
    Noise { density: f64, seed: u64 },
}

impl Protocol {
    pub fn metric(&self) -> MetricKind {
        match self {
            Protocol::Stability { .. } => MetricKind::Eta,
            Protocol::Noise { .. } => MetricKind::Rho,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchmarkConfig {
    pub protocol: Protocol,
    pub match_dist: f64,
    /// Worker threads across image pairs; each detection itself runs on one thread.
    pub jobs: usize,
}

impl BenchmarkConfig {
    pub fn validate(&self) -> Result<(), EvalError> {
        if !(self.match_dist > 0.0 && self.match_dist.is_finite()) {
            return Err(EvalError::MatchDistance(self.match_dist));
        }
        if let Protocol::Noise { density, .. } = self.protocol {
            if !(0.0..=1.0).contains(&density) {
                return Err(EvalError::Density(density));
            }
        }
        Ok(())
    }
}

/// A named benchmark input; unreadable files carry their error message.
#[derive(Clone, Debug)]
pub struct Input {
    pub name: String,
    pub image: Result<GrayImage, String>,
}

impl Input {
    pub fn new(name: impl Into<String>, image: GrayImage) -> Self {
        Self {
            name: name.into(),
            image: Ok(image),
        }
    }
}

/// Reads every `.pgm`/`.pnm` file of `dir`, sorted by file name.
pub fn load_directory(dir: impl AsRef<Path>) -> Result<Vec<Input>, EvalError> {
    let dir = dir.as_ref();
    let io_err = |source| EvalError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut paths = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io_err)? {
        let path = entry.map_err(io_err)?.path();
        let is_pgm = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| e.eq_ignore_ascii_case("pgm") || e.eq_ignore_ascii_case("pnm"));
        if is_pgm && path.is_file() {
            paths.push(path);
        }
    }
    if paths.is_empty() {
        return Err(EvalError::EmptyDirectory(dir.to_path_buf()));
    }
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|path| Input {
            name: path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
            image: read_pgm_file(&path).map_err(|e| e.to_string()),
        })
        .collect())
}

fn frames(image: &GrayImage, protocol: &Protocol, index: usize) -> (GrayImage, GrayImage) {
    match *protocol {
        Protocol::Stability { shift } => (brighten(image, shift), darken(image, shift)),
        Protocol::Noise { density, seed } => {
            let noisy = impulse_noise(image, density, seed.wrapping_add(index as u64))
                .expect("density validated");
            (image.clone(), noisy)
        }
    }
}

/// Runs every detector over every input under `config.protocol`.
///
/// Work units are independent and may run concurrently; the report is
/// identical for any `jobs` value apart from the timing fields.
pub fn run_benchmark(
    inputs: &[Input],
    detectors: &[Detector],
    config: &BenchmarkConfig,
) -> Result<MetricsReport, EvalError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| EvalError::Pool(e.to_string()))?;

    let metric = config.protocol.metric();
    let results: Vec<(Vec<Record>, Vec<FileError>)> = pool.install(|| {
        inputs
            .par_iter()
            .enumerate()
            .map(|(index, input)| {
                let mut records = Vec::new();
                let mut errors = Vec::new();
                let image = match &input.image {
                    Ok(image) => image,
                    Err(message) => {
                        errors.push(FileError {
                            image: input.name.clone(),
                            detector: None,
                            message: message.clone(),
                        });
                        return (records, errors);
                    }
                };
                let (first, second) = frames(image, &config.protocol, index);
                for detector in detectors {
                    let start = Instant::now();
                    let a = detector.detect(&first);
                    let b = detector.detect(&second);
                    let elapsed = start.elapsed().as_secs_f64() / 2.0;
                    let (a, b) = match (a, b) {
                        (Ok(a), Ok(b)) => (a, b),
                        (Err(e), _) | (_, Err(e)) => {
                            errors.push(FileError {
                                image: input.name.clone(),
                                detector: Some(detector.kind()),
                                message: e.to_string(),
                            });
                            continue;
                        }
                    };
                    let matched = match_corners(&a, &b, config.match_dist).pairs.len();
                    let value = match metric {
                        MetricKind::Eta => stability_from_counts(matched, a.len(), b.len()),
                        MetricKind::Rho => noise_immunity_from_counts(matched, a.len(), b.len()),
                    };
                    records.push(Record {
                        image: input.name.clone(),
                        detector: detector.kind(),
                        metric,
                        value,
                        corners_a: a.len(),
                        corners_b: b.len(),
                        matched,
                        seconds: Some(elapsed),
                    });
                }
                (records, errors)
            })
            .collect()
    });

    let (records, errors): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    Ok(MetricsReport::assemble(
        records.into_iter().flatten().collect(),
        errors.into_iter().flatten().collect(),
    ))
}

/// [`load_directory`] followed by [`run_benchmark`].
pub fn run_benchmark_dir(
    dir: impl AsRef<Path>,
    detectors: &[Detector],
    config: &BenchmarkConfig,
) -> Result<MetricsReport, EvalError> {
    config.validate()?;
    let inputs = load_directory(dir)?;
    run_benchmark(&inputs, detectors, config)
}
