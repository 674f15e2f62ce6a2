use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "fuzzycorner",
    version,
    about = "Fuzzy rule-based corner detection and benchmarking"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect corners in one image and write a JSON corner document.
    Detect(DetectArgs),
    /// Apply one degradation to an image; writes the PGM and a JSON sidecar.
    Degrade(DegradeArgs),
    /// Run the stability or noise benchmark for one detector over a directory.
    Eval(EvalArgs),
    /// Run the same benchmark for the fuzzy and Harris detectors side by side.
    Compare(CompareArgs),
    /// Write a synthetic corpus of scenes with known corners.
    Synth(SynthArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DetectorChoice {
    Fuzzy,
    Harris,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProtocolChoice {
    Stability,
    Noise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DegradeKind {
    Brighten,
    Darken,
    Blur,
    Impulse,
}

#[derive(Debug, Clone, Args)]
pub struct FuzzyArgs {
    /// Difference threshold t_h, in gray levels.
    #[arg(long = "th", default_value_t = 20)]
    pub th: u8,
    /// Cornerness threshold t_c, in (0, 1].
    #[arg(long = "tc", default_value_t = 0.7, allow_negative_numbers = true)]
    pub tc: f64,
    /// Selection window size H (suppression radius H/2); shared with Harris.
    #[arg(long = "H", default_value_t = 10)]
    pub h: usize,
    /// Rule file replacing the built-in templates.
    #[arg(long)]
    pub templates: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct HarrisArgs {
    /// Harris response coefficient k.
    #[arg(long = "harris-k", default_value_t = 0.06)]
    pub k: f64,
    /// Harris threshold as a fraction of the maximum response.
    #[arg(long = "harris-frac", default_value_t = 0.01)]
    pub frac: f64,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = DetectorChoice::Fuzzy)]
    pub detector: DetectorChoice,
    #[command(flatten)]
    pub fuzzy: FuzzyArgs,
    #[command(flatten)]
    pub harris: HarrisArgs,
    /// Corner document path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the input with a cross at every corner.
    #[arg(long)]
    pub overlay: Option<PathBuf>,
    /// Write the cornerness map scaled to 0..255 (fuzzy detector only).
    #[arg(long)]
    pub map: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct DegradeArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub kind: DegradeKind,
    /// Gray levels for brighten (default 80) or darken (default 40).
    #[arg(long)]
    pub amount: Option<u8>,
    /// Box kernel size for blur.
    #[arg(long, default_value_t = 5)]
    pub kernel: usize,
    /// Fraction of pixels replaced by impulses.
    #[arg(long, default_value_t = 0.10)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output PGM; the sidecar goes to the same path with ".json" appended.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Directory of PGM images.
    pub dir: PathBuf,
    #[arg(long, value_enum)]
    pub protocol: ProtocolChoice,
    #[command(flatten)]
    pub fuzzy: FuzzyArgs,
    #[command(flatten)]
    pub harris: HarrisArgs,
    /// Illumination shift for the stability protocol (frames I+c and I-c).
    #[arg(long, default_value_t = 40)]
    pub shift: u8,
    /// Impulse density for the noise protocol.
    #[arg(long, default_value_t = 0.10)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Corner correspondence radius in pixels.
    #[arg(long = "match-dist", default_value_t = 3.0)]
    pub match_dist: f64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// CSV report path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Include wall-clock timings (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub bench: BenchArgs,
    #[arg(long, value_enum, default_value_t = DetectorChoice::Fuzzy)]
    pub detector: DetectorChoice,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub bench: BenchArgs,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Output directory, created if missing.
    pub dir: PathBuf,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = 96)]
    pub size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
