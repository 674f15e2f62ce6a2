//! Non-maximum suppression over a centered square window.
//!
//! Shared by the fuzzy and Harris detectors so that both produce corner sets
//! under the same selection rule.

/// Returns the raster-ordered `(x, y)` positions of candidates that are
/// maximal within Chebyshev distance `radius`.
///
/// A candidate is rejected if any pixel in its window holds a strictly larger
/// value, or an equal value at an earlier raster position. The equal-value
/// rule applies even if that earlier pixel was itself rejected, so two emitted
/// positions are always more than `radius` apart.
pub fn suppress<T: PartialOrd + Copy>(
    values: &[T],
    width: usize,
    height: usize,
    radius: usize,
    is_candidate: impl Fn(T) -> bool,
) -> Vec<(usize, usize)> {
    assert_eq!(values.len(), width * height, "value grid size mismatch");
    let mut kept = Vec::new();
    for y in 0..height {
        let y0 = y.saturating_sub(radius);
        let y1 = (y + radius).min(height - 1);
        for x in 0..width {
            let v = values[y * width + x];
            if !is_candidate(v) {
                continue;
            }
            let x0 = x.saturating_sub(radius);
            let x1 = (x + radius).min(width - 1);
            if is_window_max(values, width, (x, y), v, (x0, x1), (y0, y1)) {
                kept.push((x, y));
            }
        }
    }
    kept
}

#[inline]
fn is_window_max<T: PartialOrd + Copy>(
    values: &[T],
    width: usize,
    (x, y): (usize, usize),
    v: T,
    (x0, x1): (usize, usize),
    (y0, y1): (usize, usize),
) -> bool {
    for yy in y0..=y1 {
        let row = &values[yy * width..(yy + 1) * width];
        for (xx, &w) in row.iter().enumerate().take(x1 + 1).skip(x0) {
            if w > v {
                return false;
            }
            let earlier = yy < y || (yy == y && xx < x);
            if earlier && w == v {
                return false;
            }
        }
    }
    true
}
