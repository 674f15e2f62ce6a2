use serde::{Deserialize, Serialize};

use crate::fuzzy::Corner;

/// One-to-one correspondence between two corner sets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    /// `(index in a, index in b)`, in the order the pairs were formed.
    pub pairs: Vec<(usize, usize)>,
    pub unmatched_a: Vec<usize>,
    pub unmatched_b: Vec<usize>,
    pub match_dist: f64,
}

/// Greedy global-nearest matching: repeatedly pairs the closest unmatched
/// `(a, b)` corners whose Euclidean distance is at most `match_dist`.
///
/// Distance ties are broken by the raster position of the `a` corner, then
/// of the `b` corner, so the number of pairs does not depend on input order.
///
/// Panics if `match_dist` is not positive.
pub fn match_corners(a: &[Corner], b: &[Corner], match_dist: f64) -> MatchResult {
    assert!(
        match_dist > 0.0,
        "match distance must be positive, got {match_dist}"
    );
    let limit = match_dist * match_dist;
    let mut candidates = Vec::new();
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            let dx = p.x.abs_diff(q.x) as u64;
            let dy = p.y.abs_diff(q.y) as u64;
            let d2 = dx * dx + dy * dy;
            if d2 as f64 <= limit {
                candidates.push((d2, (p.y, p.x), (q.y, q.x), i, j));
            }
        }
    }
    candidates.sort_unstable();

    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut pairs = Vec::new();
    for (_, _, _, i, j) in candidates {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            pairs.push((i, j));
        }
    }
    let leftover = |used: &[bool]| {
        used.iter()
            .enumerate()
            .filter(|(_, &u)| !u)
            .map(|(i, _)| i)
            .collect()
    };
    MatchResult {
        unmatched_a: leftover(&used_a),
        unmatched_b: leftover(&used_b),
        pairs,
        match_dist,
    }
}
