#![allow(dead_code)]

use std::collections::VecDeque;

use glyphstroke_core::imaging::{BinaryImage, GrayImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_gray(rng: &mut impl Rng, w: usize, h: usize) -> GrayImage {
    GrayImage::new(w, h, (0..w * h).map(|_| rng.gen()).collect()).unwrap()
}

pub fn random_binary(rng: &mut impl Rng, w: usize, h: usize, density: f64) -> BinaryImage {
    BinaryImage::new(w, h, (0..w * h).map(|_| rng.gen_bool(density)).collect()).unwrap()
}

/// Partition of on-pixels by repeated flood fill: returns a representative
/// set (sorted pixel index lists) independent of label numbering.
pub fn flood_partition(img: &BinaryImage, eight: bool) -> Vec<Vec<usize>> {
    let (w, h) = (img.width() as isize, img.height() as isize);
    let mut seen = vec![false; img.area()];
    let mut parts = Vec::new();
    for start in 0..img.area() {
        if !img.bits()[start] || seen[start] {
            continue;
        }
        let mut part = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            part.push(i);
            let (x, y) = ((i % img.width()) as isize, (i / img.width()) as isize);
            for dy in -1..=1isize {
                for dx in -1..=1isize {
                    if (dx, dy) == (0, 0) || (!eight && dx != 0 && dy != 0) {
                        continue;
                    }
                    let (nx, ny) = (x + dx, y + dy);
                    if nx < 0 || ny < 0 || nx >= w || ny >= h {
                        continue;
                    }
                    let j = (ny * w + nx) as usize;
                    if img.bits()[j] && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts.sort();
    parts
}

/// Background reachable from the border (4-connected BFS over off-pixels).
pub fn border_reachable_background(img: &BinaryImage) -> Vec<bool> {
    let (w, h) = (img.width(), img.height());
    let mut reach = vec![false; w * h];
    let mut q = VecDeque::new();
    for y in 0..h {
        for x in 0..w {
            if (x == 0 || y == 0 || x == w - 1 || y == h - 1) && !img.get(x, y) {
                reach[y * w + x] = true;
                q.push_back((x, y));
            }
        }
    }
    while let Some((x, y)) = q.pop_front() {
        let mut visit = |nx: usize, ny: usize| {
            if !img.get(nx, ny) && !reach[ny * w + nx] {
                reach[ny * w + nx] = true;
                q.push_back((nx, ny));
            }
        };
        if x > 0 {
            visit(x - 1, y);
        }
        if x + 1 < w {
            visit(x + 1, y);
        }
        if y > 0 {
            visit(x, y - 1);
        }
        if y + 1 < h {
            visit(x, y + 1);
        }
    }
    reach
}

/// Direct per-pixel erosion with an explicit value for outside reads.
pub fn naive_erode(img: &BinaryImage, offsets: &[(isize, isize)], outside: bool) -> BinaryImage {
    let (w, h) = (img.width() as isize, img.height() as isize);
    let mut out = BinaryImage::blank(img.width(), img.height()).unwrap();
    for y in 0..h {
        for x in 0..w {
            let on = offsets.iter().all(|&(dx, dy)| {
                let (sx, sy) = (x + dx, y + dy);
                if sx < 0 || sy < 0 || sx >= w || sy >= h {
                    outside
                } else {
                    img.get(sx as usize, sy as usize)
                }
            });
            out.set(x as usize, y as usize, on);
        }
    }
    out
}

/// Dilation by stamping the SE at every on-pixel, clipped to the raster.
pub fn naive_dilate(img: &BinaryImage, offsets: &[(isize, isize)]) -> BinaryImage {
    let (w, h) = (img.width() as isize, img.height() as isize);
    let mut out = BinaryImage::blank(img.width(), img.height()).unwrap();
    for (x, y) in img.on_pixels() {
        for &(dx, dy) in offsets {
            let (tx, ty) = (x as isize + dx, y as isize + dy);
            if tx >= 0 && ty >= 0 && tx < w && ty < h {
                out.set(tx as usize, ty as usize, true);
            }
        }
    }
    out
}

/// Filled disk of the given radius centred in a (2r+1)² raster.
pub fn disk(radius: usize) -> BinaryImage {
    let n = 2 * radius + 1;
    let r2 = (radius * radius) as isize;
    let c = radius as isize;
    let bits = (0..n * n)
        .map(|i| {
            let (x, y) = ((i % n) as isize - c, (i / n) as isize - c);
            x * x + y * y <= r2
        })
        .collect();
    BinaryImage::new(n, n, bits).unwrap()
}
