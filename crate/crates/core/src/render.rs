//! Grayscale landscapes of predicted classes and matching degrees, written
//! as binary PGM.

use std::io::Write;

use crate::error::Result;
use crate::inference::predict;
use crate::matching::condition_degree;
use crate::population::Population;
use crate::rule::Rule;

/// 8-bit grayscale raster, rows top to bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl GrayImage {
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    /// Binary portable graymap (`P5`, maxval 255).
    pub fn write_pgm<W: Write>(&self, mut out: W) -> Result<()> {
        write!(out, "P5\n{} {}\n255\n", self.width, self.height)?;
        out.write_all(&self.pixels)?;
        Ok(())
    }
}

/// Input coordinates of the center of pixel `(row, col)`: `x1` grows to the
/// right and `x2` grows upward, so row 0 is the top of the unit square.
pub fn pixel_center(row: usize, col: usize, resolution: usize) -> (f64, f64) {
    let r = resolution as f64;
    ((col as f64 + 0.5) / r, (resolution - row) as f64 / r - 0.5 / r)
}

fn render(resolution: usize, mut shade: impl FnMut(f64, f64) -> u8) -> GrayImage {
    let mut pixels = Vec::with_capacity(resolution * resolution);
    for row in 0..resolution {
        for col in 0..resolution {
            let (x1, x2) = pixel_center(row, col, resolution);
            pixels.push(shade(x1, x2));
        }
    }
    GrayImage { width: resolution, height: resolution, pixels }
}

/// Gray level of `class` among `class_count` evenly spaced levels.
pub fn class_level(class: usize, class_count: usize) -> u8 {
    if class_count <= 1 {
        return 0;
    }
    (255.0 * class as f64 / (class_count - 1) as f64).round() as u8
}

/// Predicted class at every pixel center of a two-input population.
pub fn render_class_landscape(pop: &Population, resolution: usize, theta_exploit: f64, fallback: usize) -> GrayImage {
    let m = pop.class_count();
    render(resolution, |x1, x2| class_level(predict(pop, &[Some(x1), Some(x2)], theta_exploit, fallback), m))
}

/// Matching degree landscape; overlapping rules combine by per-pixel max.
pub fn render_matching_landscape(rules: &[Rule], resolution: usize) -> GrayImage {
    render(resolution, |x1, x2| {
        let x = [Some(x1), Some(x2)];
        let mu = rules
            .iter()
            .map(|r| condition_degree(&r.condition, &x))
            .fold(0.0, f64::max);
        (255.0 * mu).round() as u8
    })
}
