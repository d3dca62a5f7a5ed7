//! Binary morphology with directional line structuring elements.
//!
//! All operators keep the raster size. Pixels outside the raster read as
//! off, both for the support check of erosion and for dilation reads, so
//! glyph pixels near the border erode aggressively.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Result};
use crate::imaging::BinaryImage;

/// One of the four stroke directions. Angles are measured counter-clockwise
/// from the +x axis with image y growing downward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Deg0,
    Deg45,
    Deg90,
    Deg135,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Deg0,
        Direction::Deg45,
        Direction::Deg90,
        Direction::Deg135,
    ];

    pub fn from_degrees(deg: u32) -> Result<Self> {
        match deg {
            0 => Ok(Direction::Deg0),
            45 => Ok(Direction::Deg45),
            90 => Ok(Direction::Deg90),
            135 => Ok(Direction::Deg135),
            _ => Err(invalid(
                "line structuring elements support 0, 45, 90 and 135 degrees",
            )),
        }
    }

    pub fn degrees(self) -> u32 {
        match self {
            Direction::Deg0 => 0,
            Direction::Deg45 => 45,
            Direction::Deg90 => 90,
            Direction::Deg135 => 135,
        }
    }

    /// Unit step in the positive direction, in raster coordinates.
    pub fn step(self) -> (isize, isize) {
        match self {
            Direction::Deg0 => (1, 0),
            Direction::Deg45 => (1, -1),
            Direction::Deg90 => (0, -1),
            Direction::Deg135 => (-1, -1),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.degrees())
    }
}

/// A digital line segment through the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuringElement {
    direction: Direction,
    offsets: Vec<(isize, isize)>,
}

impl StructuringElement {
    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn offsets(&self) -> &[(isize, isize)] {
        &self.offsets
    }

    /// Point reflection through the origin.
    pub fn reflect(&self) -> Self {
        Self {
            direction: self.direction,
            offsets: self.offsets.iter().map(|&(dx, dy)| (-dx, -dy)).collect(),
        }
    }
}

/// Builds a line of exactly `length` pixels at `direction`.
///
/// Odd lengths are centred on the origin; even lengths put the extra pixel
/// on the positive side (see [`Direction::step`]). Diagonals use unit
/// diagonal steps.
pub fn line_se(direction: Direction, length: usize) -> Result<StructuringElement> {
    if length == 0 {
        return Err(invalid("structuring element length must be at least 1"));
    }
    let lo = -(((length - 1) / 2) as isize);
    let hi = (length / 2) as isize;
    let (sx, sy) = direction.step();
    let offsets = (lo..=hi).map(|k| (k * sx, k * sy)).collect();
    Ok(StructuringElement { direction, offsets })
}

/// Fraction of the glyph height used as structuring element length.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SeThreshold(f64);

impl SeThreshold {
    /// The six thresholds of the sweep protocol.
    pub const SWEEP: [f64; 6] = [0.3, 0.4, 0.5, 0.6, 0.7, 0.8];
    pub const DEFAULT: SeThreshold = SeThreshold(0.7);

    pub fn new(fraction: f64) -> Result<Self> {
        if fraction > 0.0 && fraction <= 1.0 {
            Ok(Self(fraction))
        } else {
            Err(invalid("SE fraction must lie in (0, 1]"))
        }
    }

    pub fn fraction(self) -> f64 {
        self.0
    }
}

impl Default for SeThreshold {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// `max(1, round(fraction × glyph_height))`, halves rounded away from zero.
pub fn se_length(fraction: SeThreshold, glyph_height: usize) -> usize {
    // the nudge keeps decimal fractions like 0.3 × 5 on the intended side of .5
    let raw = fraction.0 * glyph_height as f64 + 1e-9;
    (libm::round(raw) as usize).max(1)
}

pub fn erode(img: &BinaryImage, se: &StructuringElement) -> BinaryImage {
    map_pixels(img, |x, y| {
        se.offsets()
            .iter()
            .all(|&(dx, dy)| img.get_or_off(x + dx, y + dy))
    })
}

pub fn dilate(img: &BinaryImage, se: &StructuringElement) -> BinaryImage {
    map_pixels(img, |x, y| {
        se.offsets()
            .iter()
            .any(|&(dx, dy)| img.get_or_off(x - dx, y - dy))
    })
}

/// Erosion followed by dilation.
pub fn open(img: &BinaryImage, se: &StructuringElement) -> BinaryImage {
    dilate(&erode(img, se), se)
}

/// Dilation followed by erosion.
pub fn close(img: &BinaryImage, se: &StructuringElement) -> BinaryImage {
    erode(&dilate(img, se), se)
}

/// Which composite operator extracts directional strokes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OpOrder {
    /// erode, then dilate
    #[default]
    Opening,
    /// dilate, then erode
    Closing,
}

impl OpOrder {
    pub fn apply(self, img: &BinaryImage, se: &StructuringElement) -> BinaryImage {
        match self {
            OpOrder::Opening => open(img, se),
            OpOrder::Closing => close(img, se),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OpOrder::Opening => "opening",
            OpOrder::Closing => "closing",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "opening" => Ok(OpOrder::Opening),
            "closing" => Ok(OpOrder::Closing),
            _ => Err(invalid("op order must be `opening` or `closing`")),
        }
    }
}

fn map_pixels(img: &BinaryImage, f: impl Fn(isize, isize) -> bool) -> BinaryImage {
    let (w, h) = (img.width(), img.height());
    let mut bits = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            bits.push(f(x, y));
        }
    }
    BinaryImage::new(w, h, bits).expect("same dimensions as input")
}
