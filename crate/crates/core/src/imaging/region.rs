use alloc::collections::VecDeque;
use alloc::vec;

use super::{BinaryImage, BoundingBox};
use crate::error::{invalid, Error, Result};

/// Tightest box around all on-pixels.
pub fn bounding_box(img: &BinaryImage) -> Result<BoundingBox> {
    let mut bbox: Option<BoundingBox> = None;
    for (x, y) in img.on_pixels() {
        bbox = Some(match bbox {
            None => BoundingBox {
                left: x,
                top: y,
                right: x,
                bottom: y,
            },
            Some(b) => BoundingBox {
                left: b.left.min(x),
                top: b.top.min(y),
                right: b.right.max(x),
                bottom: b.bottom.max(y),
            },
        });
    }
    bbox.ok_or(Error::EmptyGlyph)
}

/// Copies the pixels inside `bbox` into a new raster.
pub fn crop(img: &BinaryImage, bbox: &BoundingBox) -> Result<BinaryImage> {
    if bbox.left > bbox.right
        || bbox.top > bbox.bottom
        || bbox.right >= img.width()
        || bbox.bottom >= img.height()
    {
        return Err(invalid("crop box outside the raster"));
    }
    let mut bits = vec![false; bbox.area()];
    let w = bbox.width();
    for y in bbox.top..=bbox.bottom {
        for x in bbox.left..=bbox.right {
            bits[(y - bbox.top) * w + (x - bbox.left)] = img.get(x, y);
        }
    }
    BinaryImage::new(w, bbox.height(), bits)
}

/// Turns on every off-region that is not 4-connected to the raster border.
pub fn fill_holes(img: &BinaryImage) -> BinaryImage {
    let (w, h) = (img.width(), img.height());
    let mut reached = vec![false; w * h];
    let mut queue = VecDeque::new();

    let seed = |x: usize, y: usize, reached: &mut [bool], queue: &mut VecDeque<(usize, usize)>| {
        let i = y * w + x;
        if !img.get(x, y) && !reached[i] {
            reached[i] = true;
            queue.push_back((x, y));
        }
    };
    for x in 0..w {
        seed(x, 0, &mut reached, &mut queue);
        seed(x, h - 1, &mut reached, &mut queue);
    }
    for y in 0..h {
        seed(0, y, &mut reached, &mut queue);
        seed(w - 1, y, &mut reached, &mut queue);
    }

    while let Some((x, y)) = queue.pop_front() {
        if x > 0 {
            seed(x - 1, y, &mut reached, &mut queue);
        }
        if x + 1 < w {
            seed(x + 1, y, &mut reached, &mut queue);
        }
        if y > 0 {
            seed(x, y - 1, &mut reached, &mut queue);
        }
        if y + 1 < h {
            seed(x, y + 1, &mut reached, &mut queue);
        }
    }

    let bits = reached.into_iter().map(|r| !r).collect();
    BinaryImage::new(w, h, bits).expect("same dimensions as input")
}
