use alloc::vec::Vec;

use super::GrayImage;
use crate::error::{invalid, Result};

/// Square median filter with edge replication at the borders.
///
/// `window` is the odd side length of the neighbourhood (3 or 5 in
/// practice). Output dimensions always equal the input dimensions.
pub fn median_filter(img: &GrayImage, window: usize) -> Result<GrayImage> {
    if window == 0 || window % 2 == 0 {
        return Err(invalid("median window must be odd and nonzero"));
    }
    let r = (window / 2) as isize;
    let (w, h) = (img.width() as isize, img.height() as isize);
    let mut out = Vec::with_capacity(img.pixels().len());
    let mut hist = [0u32; 256];
    let half = (window * window / 2) as u32;

    for y in 0..h {
        for x in 0..w {
            hist.fill(0);
            for dy in -r..=r {
                let sy = (y + dy).clamp(0, h - 1) as usize;
                for dx in -r..=r {
                    let sx = (x + dx).clamp(0, w - 1) as usize;
                    hist[img.get(sx, sy) as usize] += 1;
                }
            }
            // the middle element (index half) of the sorted window
            let mut seen = 0u32;
            let mut median = 0u8;
            for (v, &c) in hist.iter().enumerate() {
                seen += c;
                if seen > half {
                    median = v as u8;
                    break;
                }
            }
            out.push(median);
        }
    }
    GrayImage::new(img.width(), img.height(), out)
}
