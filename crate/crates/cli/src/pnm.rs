//! Binary PNM images: P5 graymaps and P4 bitmaps.
//!
//! P4 rows are packed most-significant bit first and padded to a whole
//! byte; a set bit is black, which maps to an on (ink) pixel.

use glyphstroke_core::imaging::{BinaryImage, GrayImage};

/// A decoded PNM image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PnmImage {
    /// P5, with its declared maximum value.
    Gray { image: GrayImage, maxval: u8 },
    /// P4.
    Bitmap(BinaryImage),
}

/// Malformed PNM data; `offset` is the byte position of the problem.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid PNM data at byte {offset}: {message}")]
pub struct PnmError {
    pub offset: usize,
    pub message: String,
}

fn fail<T>(offset: usize, message: impl Into<String>) -> Result<T, PnmError> {
    Err(PnmError {
        offset,
        message: message.into(),
    })
}

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    /// Skips whitespace and `#` comments.
    fn skip_space(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while self.pos < self.data.len() && !matches!(self.data[self.pos], b'\n' | b'\r') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, PnmError> {
        self.skip_space();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return fail(start, format!("expected {what}"));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .map_or_else(|| fail(start, format!("{what} out of range")), Ok)
    }

    /// Consumes the single whitespace byte that ends the header.
    fn end(&mut self) -> Result<usize, PnmError> {
        match self.data.get(self.pos) {
            Some(b) if b.is_ascii_whitespace() => Ok(self.pos + 1),
            _ => fail(self.pos, "expected whitespace before raster"),
        }
    }
}

/// Parses a P4 or P5 file.
pub fn parse_pnm(data: &[u8]) -> Result<PnmImage, PnmError> {
    let magic = match data.get(..2) {
        Some(b"P4") => 4,
        Some(b"P5") => 5,
        _ => return fail(0, "expected magic P4 or P5"),
    };
    let mut h = Header { data, pos: 2 };
    let width = h.number("width")?;
    let height = h.number("height")?;
    if width == 0 || height == 0 {
        return fail(h.pos, "image dimensions must be positive");
    }

    if magic == 5 {
        let maxval_at = h.pos;
        let maxval = h.number("maxval")?;
        if !(1..=255).contains(&maxval) {
            return fail(maxval_at, format!("maxval {maxval} is not 8-bit"));
        }
        let start = h.end()?;
        let len = width
            .checked_mul(height)
            .map_or_else(|| fail(start, "image dimensions overflow"), Ok)?;
        let raster = data.get(start..start + len).map_or_else(
            || {
                fail(
                    data.len(),
                    format!("raster truncated, expected {len} bytes"),
                )
            },
            Ok,
        )?;
        if let Some(i) = raster.iter().position(|&v| v as usize > maxval) {
            return fail(start + i, "sample exceeds maxval");
        }
        let image = GrayImage::new(width, height, raster.to_vec()).map_err(|e| PnmError {
            offset: start,
            message: e.to_string(),
        })?;
        Ok(PnmImage::Gray {
            image,
            maxval: maxval as u8,
        })
    } else {
        let start = h.end()?;
        let stride = width.div_ceil(8);
        let len = stride
            .checked_mul(height)
            .map_or_else(|| fail(start, "image dimensions overflow"), Ok)?;
        let raster = data.get(start..start + len).map_or_else(
            || {
                fail(
                    data.len(),
                    format!("raster truncated, expected {len} bytes"),
                )
            },
            Ok,
        )?;
        let mut bits = Vec::with_capacity(width * height);
        for row in raster.chunks_exact(stride) {
            bits.extend((0..width).map(|x| row[x / 8] & (0x80 >> (x % 8)) != 0));
        }
        let image = BinaryImage::new(width, height, bits).map_err(|e| PnmError {
            offset: start,
            message: e.to_string(),
        })?;
        Ok(PnmImage::Bitmap(image))
    }
}

/// Encodes a P5 graymap with maxval 255.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    write_pgm_with_maxval(img, 255)
}

/// Encodes a P5 graymap with an explicit maxval.
pub fn write_pgm_with_maxval(img: &GrayImage, maxval: u8) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n{}\n", img.width(), img.height(), maxval).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

/// Encodes a P4 bitmap (on pixels become set bits).
pub fn write_pbm(img: &BinaryImage) -> Vec<u8> {
    let mut out = format!("P4\n{} {}\n", img.width(), img.height()).into_bytes();
    let stride = img.width().div_ceil(8);
    for row in img.bits().chunks_exact(img.width()) {
        let mut packed = vec![0u8; stride];
        for (x, _) in row.iter().enumerate().filter(|(_, &on)| on) {
            packed[x / 8] |= 0x80 >> (x % 8);
        }
        out.extend_from_slice(&packed);
    }
    out
}

/// Re-encodes a decoded image in its own format.
pub fn write_pnm(img: &PnmImage) -> Vec<u8> {
    match img {
        PnmImage::Gray { image, maxval } => write_pgm_with_maxval(image, *maxval),
        PnmImage::Bitmap(image) => write_pbm(image),
    }
}
