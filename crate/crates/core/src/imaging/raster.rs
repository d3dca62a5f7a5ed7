use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Result};

/// 8-bit grayscale raster, row-major, 0 = black and 255 = white.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: u8) {
        self.pixels[y * self.width + x] = value;
    }

    /// Renders a binary image as ink on paper: on = 0, off = 255.
    pub fn from_binary(img: &BinaryImage) -> Self {
        let pixels = img
            .bits()
            .iter()
            .map(|&b| if b { 0 } else { 255 })
            .collect();
        Self {
            width: img.width(),
            height: img.height(),
            pixels,
        }
    }
}

/// Row-major on/off raster; on marks a glyph (foreground) pixel.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryImage {
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Result<Self> {
        check_dims(width, height, bits.len())?;
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    /// All-off raster.
    pub fn blank(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![false; width * height])
    }

    pub fn filled(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![true; width * height])
    }

    /// Builds an image from rows of `'#'` (on) and any other character (off).
    /// Handy for small hand-drawn fixtures.
    pub fn from_ascii(rows: &[&str]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut bits = Vec::with_capacity(width * height);
        for row in rows {
            if row.chars().count() != width {
                return Err(invalid("ragged ascii raster"));
            }
            bits.extend(row.chars().map(|c| c == '#'));
        }
        Self::new(width, height, bits)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    /// Reads a pixel at signed coordinates; anything outside the raster is off.
    #[inline]
    pub fn get_or_off(&self, x: isize, y: isize) -> bool {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            false
        } else {
            self.bits[y as usize * self.width + x as usize]
        }
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, on: bool) {
        self.bits[y * self.width + x] = on;
    }

    pub fn count_on(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn area(&self) -> usize {
        self.width * self.height
    }

    pub fn complement(&self) -> Self {
        Self {
            width: self.width,
            height: self.height,
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }

    /// Pixelwise inclusion: every on-pixel of `self` is on in `other`.
    /// Rasters of different sizes are never subsets of each other.
    pub fn is_subset_of(&self, other: &BinaryImage) -> bool {
        self.width == other.width
            && self.height == other.height
            && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Copies the raster into a larger canvas with `margin` off-pixels on every side.
    pub fn padded(&self, margin: usize) -> Self {
        let width = self.width + 2 * margin;
        let height = self.height + 2 * margin;
        let mut bits = vec![false; width * height];
        for y in 0..self.height {
            let src = &self.bits[y * self.width..(y + 1) * self.width];
            let start = (y + margin) * width + margin;
            bits[start..start + self.width].copy_from_slice(src);
        }
        Self {
            width,
            height,
            bits,
        }
    }

    /// Iterates `(x, y)` of every on-pixel in raster order.
    pub fn on_pixels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| (i % w, i / w))
    }
}

/// Inclusive pixel rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundingBox {
    pub left: usize,
    pub top: usize,
    pub right: usize,
    pub bottom: usize,
}

impl BoundingBox {
    pub fn width(&self) -> usize {
        self.right - self.left + 1
    }

    pub fn height(&self) -> usize {
        self.bottom - self.top + 1
    }

    pub fn area(&self) -> usize {
        self.width() * self.height()
    }

    /// Box covering a whole `width × height` raster.
    pub fn full(width: usize, height: usize) -> Self {
        Self {
            left: 0,
            top: 0,
            right: width - 1,
            bottom: height - 1,
        }
    }
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(invalid("image dimensions must be at least 1x1"));
    }
    match width.checked_mul(height) {
        Some(n) if n == len => Ok(()),
        _ => Err(invalid("pixel buffer length does not match width x height")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_mismatched_buffers() {
        assert!(GrayImage::new(3, 3, vec![0; 8]).is_err());
        assert!(BinaryImage::new(0, 3, vec![]).is_err());
        assert!(BinaryImage::new(2, 2, vec![false; 4]).is_ok());
    }

    #[test]
    fn ascii_roundtrip_and_padding() {
        let img = BinaryImage::from_ascii(&["#.", ".#"]).unwrap();
        assert_eq!(img.count_on(), 2);
        let p = img.padded(2);
        assert_eq!((p.width(), p.height()), (6, 6));
        assert!(p.get(2, 2) && p.get(3, 3) && !p.get(3, 2));
        assert_eq!(p.count_on(), 2);
    }

    #[test]
    fn outside_reads_are_off() {
        let img = BinaryImage::filled(2, 2).unwrap();
        assert!(img.get_or_off(0, 0));
        assert!(!img.get_or_off(-1, 0));
        assert!(!img.get_or_off(0, 2));
    }
}
