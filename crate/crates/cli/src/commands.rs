use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use fuzzy_corner::degrade::{Degradation, DegradeError};
use fuzzy_corner::detector::draw_overlay;
use fuzzy_corner::eval::{self, BenchmarkConfig, EvalError, MetricsReport, Protocol};
use fuzzy_corner::fuzzy::{self, TemplateError};
use fuzzy_corner::pgm::{read_pgm_file, write_pgm, PgmFormat};
use fuzzy_corner::synth;
use fuzzy_corner::{CornerDocument, Detector, DetectorParams, HarrisParams, TemplateSet};
use serde::Serialize;
use thiserror::Error;

use crate::args::{
    BenchArgs, CompareArgs, DegradeArgs, DegradeKind, DetectArgs, DetectorChoice, EvalArgs,
    FuzzyArgs, HarrisArgs, ProtocolChoice, SynthArgs,
};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or configuration; exit code 2.
    #[error("{0}")]
    Invalid(String),
    /// Unreadable input or failed output; exit code 1.
    #[error("{0}")]
    Data(String),
}

impl From<DegradeError> for CliError {
    fn from(e: DegradeError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::MatchDistance(_) | EvalError::Density(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text.as_bytes()),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Data(e.to_string())),
    }
}

fn read_image(path: &Path) -> Result<fuzzy_corner::GrayImage> {
    read_pgm_file(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    if jobs == 0 {
        return Err(CliError::Invalid("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Data(e.to_string()))
}

fn fuzzy_detector(args: &FuzzyArgs) -> Result<Detector> {
    let params = DetectorParams {
        t_h: args.th,
        t_c: args.tc,
        h: args.h,
    };
    params
        .validate()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    for w in params.warnings() {
        eprintln!("warning: {w}");
    }
    let templates = match &args.templates {
        None => TemplateSet::default_set(),
        Some(path) => TemplateSet::load(path).map_err(|e| match e {
            TemplateError::Io(msg) => CliError::Data(msg),
            other => CliError::Invalid(format!("{}: {other}", path.display())),
        })?,
    };
    Ok(Detector::Fuzzy {
        params,
        templates: Arc::new(templates),
    })
}

fn harris_detector(harris: &HarrisArgs, fuzzy: &FuzzyArgs) -> Result<Detector> {
    let params = HarrisParams {
        k: harris.k,
        response_frac: harris.frac,
        h: fuzzy.h,
        ..HarrisParams::default()
    };
    params
        .validate()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(Detector::Harris(params))
}

fn build_detector(
    choice: DetectorChoice,
    fuzzy: &FuzzyArgs,
    harris: &HarrisArgs,
) -> Result<Detector> {
    match choice {
        DetectorChoice::Fuzzy => fuzzy_detector(fuzzy),
        DetectorChoice::Harris => harris_detector(harris, fuzzy),
    }
}

pub fn detect(args: DetectArgs) -> Result<()> {
    let detector = build_detector(args.detector, &args.fuzzy, &args.harris)?;
    if args.map.is_some() && args.detector != DetectorChoice::Fuzzy {
        return Err(CliError::Invalid(
            "--map is only available for the fuzzy detector".into(),
        ));
    }
    let pool = pool(args.jobs)?;
    let image = read_image(&args.input)?;

    let corners = match &detector {
        Detector::Fuzzy { params, templates } => {
            let map = pool
                .install(|| fuzzy::cornerness_map_parallel(&image, params, templates))
                .map_err(|e| CliError::Data(e.to_string()))?;
            if let Some(path) = &args.map {
                write_file(path, &write_pgm(&map.to_image(), PgmFormat::Binary))?;
            }
            fuzzy::select_corners(&map, params)
        }
        Detector::Harris(_) => detector
            .detect(&image)
            .map_err(|e| CliError::Data(e.to_string()))?,
    };

    if let Some(path) = &args.overlay {
        write_file(
            path,
            &write_pgm(&draw_overlay(&image, &corners), PgmFormat::Binary),
        )?;
    }
    let name = args
        .input
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let doc = CornerDocument::new(name, &image, &detector, corners);
    write_output(args.out.as_deref(), &doc.to_json())
}

#[derive(Serialize)]
struct Sidecar<'a> {
    source: String,
    #[serde(flatten)]
    degradation: &'a Degradation,
}

pub fn degrade(args: DegradeArgs) -> Result<()> {
    let degradation = match args.kind {
        DegradeKind::Brighten => Degradation::Brighten {
            amount: args.amount.unwrap_or(80),
        },
        DegradeKind::Darken => Degradation::Darken {
            amount: args.amount.unwrap_or(40),
        },
        DegradeKind::Blur => Degradation::Blur {
            kernel: args.kernel,
        },
        DegradeKind::Impulse => Degradation::Impulse {
            density: args.density,
            seed: args.seed,
        },
    };
    degradation.validate()?;
    let image = read_image(&args.input)?;
    let out = degradation.apply(&image)?;
    write_file(&args.out, &write_pgm(&out, PgmFormat::Binary))?;

    let sidecar = Sidecar {
        source: args.input.display().to_string(),
        degradation: &degradation,
    };
    let mut sidecar_path = args.out.clone().into_os_string();
    sidecar_path.push(".json");
    let json = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes") + "\n";
    write_file(Path::new(&sidecar_path), json.as_bytes())
}

fn bench_config(args: &BenchArgs) -> Result<BenchmarkConfig> {
    let protocol = match args.protocol {
        ProtocolChoice::Stability => Protocol::Stability { shift: args.shift },
        ProtocolChoice::Noise => Protocol::Noise {
            density: args.density,
            seed: args.seed,
        },
    };
    if args.jobs == 0 {
        return Err(CliError::Invalid("--jobs must be at least 1".into()));
    }
    let config = BenchmarkConfig {
        protocol,
        match_dist: args.match_dist,
        jobs: args.jobs,
    };
    config.validate()?;
    Ok(config)
}

fn run_and_report(args: &BenchArgs, detectors: &[Detector]) -> Result<()> {
    let config = bench_config(args)?;
    let report = eval::run_benchmark_dir(&args.dir, detectors, &config)?;
    for e in &report.errors {
        eprintln!("warning: {}: {}", e.image, e.message);
    }
    let report: MetricsReport = if args.timing {
        report
    } else {
        report.without_timing()
    };
    if let Some(path) = &args.json {
        write_file(path, report.to_json().as_bytes())?;
    }
    write_output(args.out.as_deref(), &report.to_csv())
}

pub fn eval(args: EvalArgs) -> Result<()> {
    let detector = build_detector(args.detector, &args.bench.fuzzy, &args.bench.harris)?;
    run_and_report(&args.bench, &[detector])
}

pub fn compare(args: CompareArgs) -> Result<()> {
    let fuzzy = fuzzy_detector(&args.bench.fuzzy)?;
    let harris = harris_detector(&args.bench.harris, &args.bench.fuzzy)?;
    run_and_report(&args.bench, &[fuzzy, harris])
}

pub fn synth(args: SynthArgs) -> Result<()> {
    if args.size < 64 {
        return Err(CliError::Invalid("--size must be at least 64".into()));
    }
    std::fs::create_dir_all(&args.dir)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.dir.display())))?;
    for (name, scene) in synth::corpus(args.count, args.size, args.seed) {
        write_file(
            &args.dir.join(&name),
            &write_pgm(&scene.image, PgmFormat::Binary),
        )?;
    }
    Ok(())
}
