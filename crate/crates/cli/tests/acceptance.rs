//! Acceptance suite. Prints one `[criterion N] PASS|FAIL` line per criterion
//! and exits non-zero if any failed. Run with `cargo test --test acceptance`.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::process::Command;
use std::time::{Duration, Instant};

use fuzzy_corner::degrade::{brighten, impulse_noise};
use fuzzy_corner::eval::{run_benchmark, stability, BenchmarkConfig, Input, Protocol};
use fuzzy_corner::fuzzy::{
    cornerness_map, detect, rule_membership, select_corners, CornernessMap, DifferenceWindow,
};
use fuzzy_corner::harris::{gradients, harris_detect};
use fuzzy_corner::pgm::{write_pgm_file, PgmFormat};
use fuzzy_corner::synth::{corpus, rectangle_image, RECTANGLE_CORNERS};
use fuzzy_corner::{
    Corner, Detector, DetectorKind, DetectorParams, GrayImage, HarrisParams, TemplateSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MATCH_DIST: f64 = 3.0;
const CORNER_TOLERANCE_PX: f64 = 2.0;
const ORACLE_WINDOWS: usize = 1000;
const ORACLE_BUDGET: Duration = Duration::from_secs(1);
const NOISE_SEEDS: u64 = 20;
const NOISE_CLEAN_FRACTION: f64 = 0.95;
const RHO_MARGIN: f64 = 30.0;
const ETA_SLACK: f64 = 5.0;
const COMPARISON_BUDGET: Duration = Duration::from_secs(60);
const QVGA_BUDGET: Duration = Duration::from_millis(100);
const SCALING_TOLERANCE: f64 = 0.25;
const CORPUS_SEED: u64 = 2024;
const NOISE_SEED: u64 = 1;

type Verdict = (bool, String);

fn positions(c: &[Corner]) -> Vec<(usize, usize)> {
    c.iter().map(|c| (c.x, c.y)).collect()
}

// Reference corners are the square's own corner pixels.
fn near_true_corner(x: usize, y: usize) -> bool {
    RECTANGLE_CORNERS
        .iter()
        .any(|&(gx, gy)| (x as f64 - gx as f64).hypot(y as f64 - gy as f64) <= CORNER_TOLERANCE_PX)
}

fn textured(rng: &mut ChaCha8Rng, w: usize, h: usize, max: u8) -> GrayImage {
    let cell = 6;
    let cw = w.div_ceil(cell);
    let levels: Vec<u8> = (0..cw * h.div_ceil(cell))
        .map(|_| rng.random_range(0..=max))
        .collect();
    let noise: Vec<i16> = (0..w * h).map(|_| rng.random_range(-6..=6)).collect();
    GrayImage::from_fn(w, h, |x, y| {
        let v = levels[(y / cell) * cw + x / cell] as i16 + noise[y * w + x];
        v.clamp(0, max as i16) as u8
    })
    .unwrap()
}

fn criterion_1_oracle_equivalence() -> Verdict {
    let set = TemplateSet::default_set();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let patches: Vec<[[u8; 3]; 3]> = (0..ORACLE_WINDOWS)
        .map(|i| {
            let mut p = [[0u8; 3]; 3];
            let c: u8 = rng.random();
            for v in p.iter_mut().flatten() {
                *v = match i % 3 {
                    0 => rng.random(),
                    1 => c.saturating_sub(rng.random_range(0..60)),
                    _ => c.saturating_add(rng.random_range(0..60)),
                };
            }
            p[1][1] = c;
            p
        })
        .collect();

    let start = Instant::now();
    let mut mismatches = 0;
    for patch in &patches {
        let window = DifferenceWindow::from_patch(patch).binarize(20);
        let reference = oracle::oracle_window(patch, 20);
        for (t, region) in set.iter().zip(oracle::RULES_A) {
            if rule_membership(&window, t) != oracle::oracle_rule(&reference, region) {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    (
        mismatches == 0 && elapsed < ORACLE_BUDGET,
        format!("{ORACLE_WINDOWS} windows x 12 rules, {mismatches} mismatches, {elapsed:?}"),
    )
}

fn criterion_2_ideal_corner_unity() -> Verdict {
    let set = TemplateSet::default_set();
    let params = DetectorParams::default();
    // Rule 1: bright upper-right block over a dark remainder.
    let step = [[50, 200, 200], [50, 200, 200], [50, 50, 50]];
    let rule1 = rule_membership(
        &DifferenceWindow::from_patch(&step).binarize(20),
        &set.templates()[0],
    );

    let img = rectangle_image();
    let map = cornerness_map(&img, &params, &set).unwrap();
    let unity = RECTANGLE_CORNERS.iter().all(|&(x, y)| map.mu(x, y) == 1.0);
    let corners = select_corners(&map, &params);
    let located = corners.len() == 4 && corners.iter().all(|c| near_true_corner(c.x, c.y));
    (
        rule1 == 1.0 && unity && located,
        format!(
            "rule-1 step mu={rule1}, corner-pixel mu=1: {unity}, corners {:?}",
            positions(&corners)
        ),
    )
}

fn criterion_3_impulse_rejection() -> Verdict {
    let set = TemplateSet::default_set();
    let params = DetectorParams::default();
    let single =
        GrayImage::from_fn(32, 32, |x, y| if (x, y) == (15, 12) { 255 } else { 100 }).unwrap();
    let max_mu = cornerness_map(&single, &params, &set).unwrap().max_mu();
    let single_corners = detect(&single, &params, &set).unwrap().len();
    let single_ok = max_mu == 0.25 && single_corners == 0;

    let flat = GrayImage::filled(64, 64, 128).unwrap();
    let clean = (0..NOISE_SEEDS)
        .filter(|&s| {
            let noisy = impulse_noise(&flat, 0.10, s).unwrap();
            detect(&noisy, &params, &set).unwrap().is_empty()
        })
        .count();
    let field_ok = clean as f64 >= NOISE_CLEAN_FRACTION * NOISE_SEEDS as f64;
    (
        single_ok && field_ok,
        format!(
            "single impulse max mu={max_mu} corners={single_corners}; \
             10% field on 64x64: {clean}/{NOISE_SEEDS} seeds corner-free (need >= {NOISE_CLEAN_FRACTION})"
        ),
    )
}

fn criterion_4_shift_invariance() -> Verdict {
    let set = TemplateSet::default_set();
    let params = DetectorParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut images: Vec<GrayImage> = (0..20)
        .map(|i| {
            let (w, h) = (rng.random_range(16..120), rng.random_range(16..120));
            if i % 2 == 0 {
                textured(&mut rng, w, h, 215)
            } else {
                let px = (0..w * h).map(|_| rng.random_range(0..=215)).collect();
                GrayImage::new(w, h, px).unwrap()
            }
        })
        .collect();
    images.push(rectangle_image());

    let mut identical = 0;
    let mut etas = Vec::new();
    for img in &images {
        let shifted = brighten(img, 40);
        let a = cornerness_map(img, &params, &set).unwrap();
        let b = cornerness_map(&shifted, &params, &set).unwrap();
        if a == b {
            identical += 1;
        }
        let ca = select_corners(&a, &params);
        let cb = select_corners(&b, &params);
        if let Some(eta) = stability(&ca, &cb, MATCH_DIST) {
            etas.push(eta);
        }
    }
    let all_eta = etas.iter().all(|&e| e == 100.0);
    (
        identical == images.len() && all_eta && !etas.is_empty(),
        format!(
            "{identical}/{} maps bit-identical under +40, eta=100 on {}/{} pairs with corners",
            images.len(),
            etas.iter().filter(|&&e| e == 100.0).count(),
            etas.len()
        ),
    )
}

fn criterion_5_detector_ordering() -> Verdict {
    let inputs: Vec<Input> = corpus(10, 96, CORPUS_SEED)
        .into_iter()
        .map(|(name, s)| Input::new(name, s.image))
        .collect();
    let detectors = [Detector::fuzzy_default(), Detector::harris_default()];
    let config = |protocol| BenchmarkConfig {
        protocol,
        match_dist: MATCH_DIST,
        jobs: 1,
    };
    let start = Instant::now();
    let noise = run_benchmark(
        &inputs,
        &detectors,
        &config(Protocol::Noise {
            density: 0.10,
            seed: NOISE_SEED,
        }),
    )
    .unwrap();
    let shift = run_benchmark(
        &inputs,
        &detectors,
        &config(Protocol::Stability { shift: 40 }),
    )
    .unwrap();
    let elapsed = start.elapsed();

    let mean = |r: &fuzzy_corner::eval::MetricsReport, d| {
        r.aggregate(d).and_then(|a| a.mean).unwrap_or(0.0)
    };
    let (rho_f, rho_h) = (
        mean(&noise, DetectorKind::Fuzzy),
        mean(&noise, DetectorKind::Harris),
    );
    let (eta_f, eta_h) = (
        mean(&shift, DetectorKind::Fuzzy),
        mean(&shift, DetectorKind::Harris),
    );
    let rho_ok = rho_f >= rho_h + RHO_MARGIN;
    let eta_ok = eta_f >= eta_h - ETA_SLACK;
    (
        rho_ok && eta_ok && elapsed < COMPARISON_BUDGET,
        format!(
            "rho fuzzy {rho_f:.1} vs harris {rho_h:.1} (need +{RHO_MARGIN}): {rho_ok}; \
             eta fuzzy {eta_f:.1} vs harris {eta_h:.1} (slack {ETA_SLACK}): {eta_ok}; {elapsed:?}"
        ),
    )
}

fn criterion_6_nms_spacing() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut runs = 0;
    let mut violations = 0;
    let mut emitted = 0;
    for _ in 0..500 {
        let (w, h) = (rng.random_range(1..50), rng.random_range(1..50));
        let hw = rng.random_range(1..16usize);
        // Few distinct levels so that plateaus and ties are common.
        let scores: Vec<u8> = (0..w * h)
            .map(|_| *[0u8, 5, 14, 15, 20].get(rng.random_range(0..5)).unwrap())
            .collect();
        let map = CornernessMap::from_scores(w, h, scores);
        let params = DetectorParams {
            t_c: 0.7,
            h: hw,
            ..DetectorParams::default()
        };
        let corners = select_corners(&map, &params);
        runs += 1;
        emitted += corners.len();
        for (i, a) in corners.iter().enumerate() {
            for b in &corners[i + 1..] {
                if a.x.abs_diff(b.x).max(a.y.abs_diff(b.y)) <= hw / 2 {
                    violations += 1;
                }
            }
        }
    }
    for seed in 0..20 {
        let img = textured(&mut ChaCha8Rng::seed_from_u64(seed), 80, 60, 255);
        for c in [
            harris_detect(&img, &HarrisParams::default()).unwrap(),
            detect(
                &img,
                &DetectorParams::default(),
                &TemplateSet::default_set(),
            )
            .unwrap(),
        ] {
            runs += 1;
            emitted += c.len();
            for (i, a) in c.iter().enumerate() {
                for b in &c[i + 1..] {
                    if a.x.abs_diff(b.x).max(a.y.abs_diff(b.y)) <= 5 {
                        violations += 1;
                    }
                }
            }
        }
    }
    (
        violations == 0,
        format!("{runs} runs, {emitted} corners, {violations} pairs within H/2"),
    )
}

fn cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_fuzzycorner"))
        .args(args)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn criterion_7_determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    for (name, scene) in corpus(6, 96, CORPUS_SEED) {
        write_pgm_file(&scene.image, PgmFormat::Binary, dir.path().join(name)).unwrap();
    }
    let d = dir.path().to_str().unwrap();
    let run = |protocol: &str, jobs: &str| {
        cli(&[
            "compare",
            d,
            "--protocol",
            protocol,
            "--seed",
            "17",
            "--jobs",
            jobs,
        ])
    };
    let mut identical = true;
    for protocol in ["noise", "stability"] {
        let first = run(protocol, "1");
        identical &= first == run(protocol, "1") && first == run(protocol, "4");
    }
    (
        identical,
        format!("compare CSV byte-identical across runs and --jobs 1/4: {identical}"),
    )
}

fn best_of(repeats: usize, mut f: impl FnMut()) -> Duration {
    (0..repeats)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn criterion_8_runtime() -> Verdict {
    let set = TemplateSet::default_set();
    let params = DetectorParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let small = textured(&mut rng, 160, 120, 255);
    let qvga = textured(&mut rng, 320, 240, 255);
    let large = textured(&mut rng, 640, 480, 255);

    let run = |img: &GrayImage| {
        std::hint::black_box(detect(img, &params, &set).unwrap());
    };
    let t_qvga = best_of(7, || run(&qvga));
    // Same pixel count per measurement on both sides of the ratio.
    let t_small = best_of(7, || (0..16).for_each(|_| run(&small)));
    let t_large = best_of(7, || run(&large));
    let ratio = t_large.as_secs_f64() / t_small.as_secs_f64();
    let ok = t_qvga < QVGA_BUDGET && (ratio - 1.0).abs() <= SCALING_TOLERANCE;
    (
        ok,
        format!(
            "320x240 in {t_qvga:?} (< {QVGA_BUDGET:?}); per-pixel 640x480 / 160x120 = {ratio:.3}"
        ),
    )
}

fn criterion_9_harris_sanity() -> Verdict {
    let p = HarrisParams::default();
    let flat = harris_detect(&GrayImage::filled(48, 48, 77).unwrap(), &p).unwrap();
    let rect = harris_detect(&rectangle_image(), &p).unwrap();
    let rect_ok = rect.len() == 4 && rect.iter().all(|c| near_true_corner(c.x, c.y));
    let ramp = GrayImage::from_fn(20, 9, |x, _| x as u8).unwrap();
    let g = gradients(&ramp).unwrap();
    // Interior pixels: -2*(x-2) - (x-1) + (x+1) + 2*(x+2) = 10.
    let gx_ok = (2..7).all(|y| (2..18).all(|x| g.gx[y * 20 + x] == 10 && g.gy[y * 20 + x] == 0));
    (
        flat.is_empty() && rect_ok && gx_ok,
        format!(
            "constant -> {} corners; rectangle -> {:?}; ramp gx=10: {gx_ok}",
            flat.len(),
            positions(&rect)
        ),
    )
}

fn main() {
    // Run in order on the main thread so the timing criteria are not disturbed.
    let criteria: [(u32, fn() -> Verdict); 9] = [
        (1, criterion_1_oracle_equivalence),
        (2, criterion_2_ideal_corner_unity),
        (3, criterion_3_impulse_rejection),
        (4, criterion_4_shift_invariance),
        (5, criterion_5_detector_ordering),
        (6, criterion_6_nms_spacing),
        (7, criterion_7_determinism),
        (8, criterion_8_runtime),
        (9, criterion_9_harris_sanity),
    ];
    let mut failed = Vec::new();
    for (n, criterion) in criteria {
        let (ok, detail) = criterion();
        println!(
            "[criterion {n}] {} {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed.push(n);
        }
    }
    println!(
        "acceptance: {} passed, {} failed {failed:?}",
        9 - failed.len(),
        failed.len()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
