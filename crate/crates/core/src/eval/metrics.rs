use crate::fuzzy::Corner;

use super::matching::match_corners;

/// Stability factor: matched corners over the smaller set size, in percent.
///
/// `None` when both sets are empty. If exactly one set is empty no corner can
/// be common, so the factor is 0.
pub fn stability(a1: &[Corner], a2: &[Corner], match_dist: f64) -> Option<f64> {
    let pairs = match_corners(a1, a2, match_dist).pairs.len();
    stability_from_counts(pairs, a1.len(), a2.len())
}

/// Noise immunity: matched corners over the larger set size, in percent.
/// Corners invented by noise enlarge the denominator.
pub fn noise_immunity(b1: &[Corner], b2: &[Corner], match_dist: f64) -> Option<f64> {
    let pairs = match_corners(b1, b2, match_dist).pairs.len();
    noise_immunity_from_counts(pairs, b1.len(), b2.len())
}

pub fn stability_from_counts(pairs: usize, n1: usize, n2: usize) -> Option<f64> {
    match (n1, n2) {
        (0, 0) => None,
        (0, _) | (_, 0) => Some(0.0),
        _ => Some(pairs as f64 / n1.min(n2) as f64 * 100.0),
    }
}

pub fn noise_immunity_from_counts(pairs: usize, n1: usize, n2: usize) -> Option<f64> {
    match n1.max(n2) {
        0 => None,
        m => Some(pairs as f64 / m as f64 * 100.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, offset: usize) -> Vec<Corner> {
        (0..n)
            .map(|i| Corner {
                x: 10 * i + offset,
                y: 5,
                score: 1.0,
            })
            .collect()
    }

    #[test]
    fn identical_is_full() {
        let s = grid(6, 0);
        assert_eq!(stability(&s, &s, 3.0), Some(100.0));
        assert_eq!(noise_immunity(&s, &s, 3.0), Some(100.0));
    }

    #[test]
    fn empty_cases() {
        assert_eq!(stability(&[], &[], 3.0), None);
        assert_eq!(noise_immunity(&[], &[], 3.0), None);
        assert_eq!(stability(&grid(3, 0), &[], 3.0), Some(0.0));
        assert_eq!(noise_immunity(&[], &grid(3, 0), 3.0), Some(0.0));
    }

    #[test]
    fn count_examples() {
        assert_eq!(stability_from_counts(6, 10, 8), Some(75.0));
        assert_eq!(noise_immunity_from_counts(4, 4, 20), Some(20.0));
    }

    #[test]
    fn partial_overlap() {
        // 10 corners vs 8, of which 6 sit on top of the first set.
        let a = grid(10, 0);
        let mut b = grid(6, 1);
        b.push(Corner {
            x: 300,
            y: 300,
            score: 1.0,
        });
        b.push(Corner {
            x: 400,
            y: 300,
            score: 1.0,
        });
        assert_eq!(stability(&a, &b, 3.0), Some(75.0));
        assert_eq!(noise_immunity(&a, &b, 3.0), Some(60.0));
    }
}
