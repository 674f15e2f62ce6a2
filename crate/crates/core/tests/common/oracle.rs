//! Brute-force reference for per-pixel cornerness.
//!
//! Works directly on 3x3 arrays of booleans and sums region cells one by one,
//! with the rule regions written out as literal cell lists. Shares no code
//! with the library beyond the image type.

#![allow(dead_code, clippy::needless_range_loop)]

use fuzzy_corner::GrayImage;

/// Region A (side holding the center) of the twelve default rules, 1-indexed.
pub const RULES_A: [&[(usize, usize)]; 12] = [
    &[(1, 2), (1, 3), (2, 2), (2, 3)],
    &[(1, 1), (1, 2), (2, 1), (2, 2)],
    &[(2, 1), (2, 2), (3, 1), (3, 2)],
    &[(2, 2), (2, 3), (3, 2), (3, 3)],
    &[(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)],
    &[(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)],
    &[(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)],
    &[(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)],
    &[(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)],
    &[(1, 2), (1, 3), (2, 2), (2, 3), (3, 3)],
    &[(1, 3), (2, 2), (2, 3), (3, 2), (3, 3)],
    &[(2, 2), (2, 3), (3, 1), (3, 2), (3, 3)],
];

pub struct OracleWindow {
    pub e: [[i32; 3]; 3],
    pub ep: [[bool; 3]; 3],
    pub en: [[bool; 3]; 3],
}

pub fn oracle_window(patch: &[[u8; 3]; 3], t_h: i32) -> OracleWindow {
    let mut e = [[0i32; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            if (i, j) != (1, 1) {
                e[i][j] = patch[1][1] as i32 - patch[i][j] as i32;
            }
        }
    }
    let mut ep = [[false; 3]; 3];
    let mut en = [[false; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            ep[i][j] = e[i][j] >= 0;
            en[i][j] = e[i][j] < 0;
        }
    }
    let all_ep = (0..3).all(|i| (0..3).all(|j| ep[i][j]));
    let all_neighbours_en = (0..3).all(|i| (0..3).all(|j| (i, j) == (1, 1) || en[i][j]));
    if all_ep {
        for i in 0..3 {
            for j in 0..3 {
                ep[i][j] = e[i][j] <= t_h;
                en[i][j] = e[i][j] > t_h;
            }
        }
    } else if all_neighbours_en {
        for i in 0..3 {
            for j in 0..3 {
                ep[i][j] = e[i][j] >= -t_h;
                en[i][j] = e[i][j] < -t_h;
            }
        }
    }
    OracleWindow { e, ep, en }
}

pub fn oracle_rule(window: &OracleWindow, region_a: &[(usize, usize)]) -> f64 {
    let mut sum_a_ep = 0;
    let mut sum_a_en = 0;
    let mut sum_b_ep = 0;
    let mut sum_b_en = 0;
    for i in 1..=3 {
        for j in 1..=3 {
            let ep = window.ep[i - 1][j - 1] as i32;
            let en = window.en[i - 1][j - 1] as i32;
            if region_a.contains(&(i, j)) {
                sum_a_ep += ep;
                sum_a_en += en;
            } else {
                sum_b_ep += ep;
                sum_b_en += en;
            }
        }
    }
    let first = sum_a_ep * sum_b_en;
    let second = sum_b_ep * sum_a_en;
    first.max(second) as f64 / 20.0
}

pub fn oracle_cornerness(patch: &[[u8; 3]; 3], t_h: i32) -> f64 {
    let w = oracle_window(patch, t_h);
    RULES_A
        .iter()
        .map(|a| oracle_rule(&w, a))
        .fold(0.0, f64::max)
}

pub fn patch_at(image: &GrayImage, x: usize, y: usize) -> [[u8; 3]; 3] {
    let mut p = [[0u8; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            p[i][j] = image.get(x + j - 1, y + i - 1);
        }
    }
    p
}

/// Full cornerness map by brute force; border pixels are 0.
pub fn oracle_map(image: &GrayImage, t_h: i32) -> Vec<f64> {
    let (w, h) = (image.width(), image.height());
    let mut out = vec![0.0; w * h];
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            out[y * w + x] = oracle_cornerness(&patch_at(image, x, y), t_h);
        }
    }
    out
}

/// Selection by brute force: threshold, then scan the full window.
pub fn oracle_select(
    values: &[f64],
    w: usize,
    h: usize,
    t_c: f64,
    radius: usize,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let v = values[y * w + x];
            if v < t_c {
                continue;
            }
            let mut keep = true;
            for yy in 0..h {
                for xx in 0..w {
                    if xx.abs_diff(x) > radius || yy.abs_diff(y) > radius {
                        continue;
                    }
                    let u = values[yy * w + xx];
                    let earlier = (yy, xx) < (y, x);
                    if u > v || (earlier && u == v) {
                        keep = false;
                    }
                }
            }
            if keep {
                out.push((x, y));
            }
        }
    }
    out
}
