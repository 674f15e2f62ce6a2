//! Synthetic test scenes with known geometry.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::image::GrayImage;

/// Pixel positions of the four inner corner pixels of [`rectangle_image`].
pub const RECTANGLE_CORNERS: [(usize, usize); 4] = [(17, 17), (46, 17), (17, 46), (46, 46)];

/// 64x64 image: a 30x30 square of 200 starting at (17, 17) on a background of 50.
pub fn rectangle_image() -> GrayImage {
    GrayImage::from_fn(64, 64, |x, y| {
        if (17..47).contains(&x) && (17..47).contains(&y) {
            200
        } else {
            50
        }
    })
    .expect("fixed dimensions")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SceneKind {
    Rectangles,
    LShape,
    CrossingBars,
}

/// A generated scene and the pixel positions of its convex and concave corners.
#[derive(Clone, Debug)]
pub struct Scene {
    pub kind: SceneKind,
    pub image: GrayImage,
    pub corners: Vec<(usize, usize)>,
}

struct Canvas {
    size: usize,
    pixels: Vec<u8>,
}

impl Canvas {
    fn fill(&mut self, x0: usize, y0: usize, w: usize, h: usize, value: u8) {
        for y in y0..y0 + h {
            for x in x0..x0 + w {
                self.pixels[y * self.size + x] = value;
            }
        }
    }
}

/// Scene `index` of a corpus. Kinds cycle rectangles, L-shape, crossing
/// bars; every shape differs from the background by at least 80 levels.
pub fn scene(index: usize, size: usize, seed: u64) -> Scene {
    assert!(size >= 64, "scenes need at least 64x64 pixels");
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(index as u64));
    let background: u8 = rng.random_range(20..=70);
    let mut canvas = Canvas {
        size,
        pixels: vec![background; size * size],
    };
    let s = size;
    let kind = match index % 3 {
        0 => SceneKind::Rectangles,
        1 => SceneKind::LShape,
        _ => SceneKind::CrossingBars,
    };
    let mut corners = Vec::new();

    match kind {
        SceneKind::Rectangles => {
            // One rectangle in each half so they never touch.
            let half = s / 2;
            for left in [0, half] {
                let fg = rng_fg(&mut rng, background);
                let w = rng.random_range(half / 3..=half - 16);
                let h = rng.random_range(s / 4..=s - 24);
                let x0 = left + rng.random_range(8..=half - 8 - w);
                let y0 = rng.random_range(8..=s - 8 - h);
                canvas.fill(x0, y0, w, h, fg);
                let (x1, y1) = (x0 + w - 1, y0 + h - 1);
                corners.extend([(x0, y0), (x1, y0), (x0, y1), (x1, y1)]);
            }
        }
        SceneKind::LShape => {
            let fg = rng_fg(&mut rng, background);
            let thick = rng.random_range(s / 8..=s / 5);
            let len = rng.random_range(s / 2..=s - 24);
            let x0 = rng.random_range(8..=s - 8 - len);
            let y0 = rng.random_range(8..=s - 8 - len);
            // Vertical stroke, then the foot along the bottom.
            canvas.fill(x0, y0, thick, len, fg);
            canvas.fill(x0, y0 + len - thick, len, thick, fg);
            let (x1, y1) = (x0 + len - 1, y0 + len - 1);
            corners.extend([
                (x0, y0),
                (x0 + thick - 1, y0),
                (x0, y1),
                (x1, y1),
                (x1, y0 + len - thick),
                (x0 + thick - 1, y0 + len - thick),
            ]);
        }
        SceneKind::CrossingBars => {
            let fg = rng_fg(&mut rng, background);
            let thick = rng.random_range(s / 10..=s / 6);
            let cx = rng.random_range(s / 3..=2 * s / 3 - thick);
            let cy = rng.random_range(s / 3..=2 * s / 3 - thick);
            let margin = 10;
            canvas.fill(margin, cy, s - 2 * margin, thick, fg);
            canvas.fill(cx, margin, thick, s - 2 * margin, fg);
            let (xe, ye) = (s - margin - 1, s - margin - 1);
            let (cx1, cy1) = (cx + thick - 1, cy + thick - 1);
            corners.extend([
                // Bar ends.
                (margin, cy),
                (margin, cy1),
                (xe, cy),
                (xe, cy1),
                (cx, margin),
                (cx1, margin),
                (cx, ye),
                (cx1, ye),
                // Inner corners where the bars cross.
                (cx, cy),
                (cx1, cy),
                (cx, cy1),
                (cx1, cy1),
            ]);
        }
    }
    corners.sort_by_key(|&(x, y)| (y, x));
    Scene {
        kind,
        image: GrayImage::new(size, size, canvas.pixels).expect("square canvas"),
        corners,
    }
}

fn rng_fg(rng: &mut ChaCha8Rng, background: u8) -> u8 {
    rng.random_range(background as u16 + 80..=250) as u8
}

/// `count` scenes named `scene_00.pgm`, `scene_01.pgm`, ...
pub fn corpus(count: usize, size: usize, seed: u64) -> Vec<(String, Scene)> {
    (0..count)
        .map(|i| (format!("scene_{i:02}.pgm"), scene(i, size, seed)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangle_layout() {
        let img = rectangle_image();
        assert_eq!(img.get(17, 17), 200);
        assert_eq!(img.get(46, 46), 200);
        assert_eq!(img.get(16, 17), 50);
        assert_eq!(img.get(47, 46), 50);
    }

    #[test]
    fn scenes_are_deterministic_and_contrasted() {
        for i in 0..9 {
            let a = scene(i, 96, 5);
            let b = scene(i, 96, 5);
            assert_eq!(a.image, b.image);
            assert_eq!(a.corners, b.corners);
            let bg = a.image.get(0, 0);
            let fgs: Vec<u8> = a
                .image
                .pixels()
                .iter()
                .copied()
                .filter(|&p| p != bg)
                .collect();
            assert!(!fgs.is_empty());
            assert!(fgs.iter().all(|&p| p >= bg + 80));
            for &(x, y) in &a.corners {
                assert!(x < 96 && y < 96);
            }
        }
        assert_ne!(scene(0, 96, 5).image, scene(0, 96, 6).image);
    }

    #[test]
    fn corner_lists_match_kinds() {
        assert_eq!(scene(0, 96, 1).corners.len(), 8);
        assert_eq!(scene(1, 96, 1).corners.len(), 6);
        assert_eq!(scene(2, 96, 1).corners.len(), 12);
        for i in 0..3 {
            let sc = scene(i, 96, 1);
            let bg = sc.image.get(0, 0);
            for &(x, y) in &sc.corners {
                assert_ne!(
                    sc.image.get(x, y),
                    bg,
                    "corner ({x}, {y}) of scene {i} is off-shape"
                );
            }
        }
    }
}
