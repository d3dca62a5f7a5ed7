use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{BinaryImage, BoundingBox};

/// Pixel adjacency used for component labelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    Four,
    #[default]
    Eight,
}

impl Connectivity {
    fn offsets(self) -> &'static [(isize, isize)] {
        const FOUR: [(isize, isize); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
        const EIGHT: [(isize, isize); 8] = [
            (1, 0),
            (-1, 0),
            (0, 1),
            (0, -1),
            (1, 1),
            (1, -1),
            (-1, 1),
            (-1, -1),
        ];
        match self {
            Connectivity::Four => &FOUR,
            Connectivity::Eight => &EIGHT,
        }
    }
}

/// Labelled components of a binary image.
///
/// Label 0 is background; components are numbered 1..=count in the raster
/// order of their first pixel. `sizes[i]` and `boxes[i]` describe label `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSet {
    pub width: usize,
    pub height: usize,
    pub labels: Vec<u32>,
    pub sizes: Vec<usize>,
    pub boxes: Vec<BoundingBox>,
}

impl ComponentSet {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn label_at(&self, x: usize, y: usize) -> u32 {
        self.labels[y * self.width + x]
    }
}

pub fn connected_components(img: &BinaryImage, connectivity: Connectivity) -> ComponentSet {
    let (w, h) = (img.width(), img.height());
    let mut labels = vec![0u32; w * h];
    let mut sizes = Vec::new();
    let mut boxes = Vec::new();
    let mut queue = VecDeque::new();

    for start in 0..w * h {
        if !img.bits()[start] || labels[start] != 0 {
            continue;
        }
        let label = sizes.len() as u32 + 1;
        let (sx, sy) = (start % w, start / w);
        let mut bbox = BoundingBox {
            left: sx,
            top: sy,
            right: sx,
            bottom: sy,
        };
        let mut size = 0usize;
        labels[start] = label;
        queue.push_back((sx, sy));

        while let Some((x, y)) = queue.pop_front() {
            size += 1;
            bbox.left = bbox.left.min(x);
            bbox.right = bbox.right.max(x);
            bbox.top = bbox.top.min(y);
            bbox.bottom = bbox.bottom.max(y);
            for &(dx, dy) in connectivity.offsets() {
                let (nx, ny) = (x as isize + dx, y as isize + dy);
                if !img.get_or_off(nx, ny) {
                    continue;
                }
                let ni = ny as usize * w + nx as usize;
                if labels[ni] == 0 {
                    labels[ni] = label;
                    queue.push_back((nx as usize, ny as usize));
                }
            }
        }
        sizes.push(size);
        boxes.push(bbox);
    }

    ComponentSet {
        width: w,
        height: h,
        labels,
        sizes,
        boxes,
    }
}
