mod common;

use common::*;
use glyphstroke_core::imaging::*;
use proptest::prelude::*;
use rand::Rng;

/// Between-class variance of threshold `t`, straight from the class means.
fn between_class_variance(img: &GrayImage, t: u8) -> f64 {
    let (dark, light): (Vec<f64>, Vec<f64>) = {
        let mut d = Vec::new();
        let mut l = Vec::new();
        for &p in img.pixels() {
            if p <= t {
                d.push(p as f64)
            } else {
                l.push(p as f64)
            }
        }
        (d, l)
    };
    if dark.is_empty() || light.is_empty() {
        return 0.0;
    }
    let n = img.pixels().len() as f64;
    let m0 = dark.iter().sum::<f64>() / dark.len() as f64;
    let m1 = light.iter().sum::<f64>() / light.len() as f64;
    (dark.len() as f64 / n) * (light.len() as f64 / n) * (m0 - m1) * (m0 - m1)
}

fn otsu_oracle(img: &GrayImage) -> u8 {
    let mut best = 0u8;
    let mut best_v = between_class_variance(img, 0);
    for t in 1..=255u8 {
        let v = between_class_variance(img, t);
        if v > best_v {
            best_v = v;
            best = t;
        }
    }
    best
}

fn median_oracle(img: &GrayImage, window: usize) -> GrayImage {
    let r = (window / 2) as isize;
    let (w, h) = (img.width() as isize, img.height() as isize);
    let mut out = img.clone();
    for y in 0..h {
        for x in 0..w {
            let mut vals = Vec::new();
            for dy in -r..=r {
                for dx in -r..=r {
                    let sx = (x + dx).clamp(0, w - 1) as usize;
                    let sy = (y + dy).clamp(0, h - 1) as usize;
                    vals.push(img.get(sx, sy));
                }
            }
            vals.sort_unstable();
            out.set(x as usize, y as usize, vals[vals.len() / 2]);
        }
    }
    out
}

#[test]
fn median_matches_sorting_oracle() {
    let mut r = rng(11);
    for window in [3, 5] {
        for _ in 0..10 {
            let img = random_gray(&mut r, 16, 16);
            assert_eq!(
                median_filter(&img, window).unwrap(),
                median_oracle(&img, window)
            );
        }
    }
}

#[test]
fn otsu_matches_exhaustive_scan() {
    let mut r = rng(7);
    for _ in 0..50 {
        let img = random_gray(&mut r, 32, 32);
        assert_eq!(otsu_threshold(&img), otsu_oracle(&img));
    }
}

#[test]
fn otsu_on_two_level_images_separates_exactly() {
    let mut r = rng(3);
    for _ in 0..20 {
        let bits: Vec<u8> = (0..64)
            .map(|_| if r.gen_bool(0.4) { 0 } else { 255 })
            .collect();
        let img = GrayImage::new(8, 8, bits.clone()).unwrap();
        let t = otsu_threshold(&img);
        assert_eq!(t, otsu_oracle(&img));
        let bin = binarize(&img, t);
        for (p, &b) in bits.iter().zip(bin.bits()) {
            assert_eq!(b, *p == 0);
        }
    }
}

#[test]
fn bounding_box_matches_min_max_scan() {
    let mut r = rng(5);
    for _ in 0..50 {
        let img = random_binary(&mut r, 20, 14, 0.03);
        let pts: Vec<(usize, usize)> = img.on_pixels().collect();
        match bounding_box(&img) {
            Err(_) => assert!(pts.is_empty()),
            Ok(b) => {
                assert_eq!(b.left, pts.iter().map(|p| p.0).min().unwrap());
                assert_eq!(b.right, pts.iter().map(|p| p.0).max().unwrap());
                assert_eq!(b.top, pts.iter().map(|p| p.1).min().unwrap());
                assert_eq!(b.bottom, pts.iter().map(|p| p.1).max().unwrap());
                let c = crop(&img, &b).unwrap();
                assert_eq!(
                    bounding_box(&c).unwrap(),
                    BoundingBox::full(c.width(), c.height())
                );
            }
        }
    }
}

#[test]
fn fill_holes_matches_border_flood_oracle() {
    let mut r = rng(9);
    for _ in 0..50 {
        let img = random_binary(&mut r, 18, 18, 0.45);
        let reach = border_reachable_background(&img);
        let expected: Vec<bool> = reach.iter().map(|&x| !x).collect();
        assert_eq!(fill_holes(&img).bits(), &expected[..]);
    }
}

#[test]
fn components_match_flood_partition() {
    let mut r = rng(13);
    for _ in 0..40 {
        let img = random_binary(&mut r, 24, 24, 0.45);
        for (conn, eight) in [(Connectivity::Four, false), (Connectivity::Eight, true)] {
            let cs = connected_components(&img, conn);
            let mut parts: Vec<Vec<usize>> = vec![Vec::new(); cs.count()];
            for (i, &l) in cs.labels.iter().enumerate() {
                if l > 0 {
                    parts[l as usize - 1].push(i);
                }
            }
            // labels number components by their first raster pixel
            for w in parts.windows(2) {
                assert!(w[0][0] < w[1][0]);
            }
            for (p, &size) in parts.iter().zip(&cs.sizes) {
                assert_eq!(p.len(), size);
            }
            parts.sort();
            assert_eq!(parts, flood_partition(&img, eight));
        }
    }
}

proptest! {
    #[test]
    fn otsu_is_optimal(pixels in prop::collection::vec(any::<u8>(), 64)) {
        let img = GrayImage::new(8, 8, pixels).unwrap();
        let t = otsu_threshold(&img);
        let best = between_class_variance(&img, t);
        for other in 0..=255u8 {
            prop_assert!(best >= between_class_variance(&img, other) - 1e-9 * best.max(1.0));
        }
    }

    #[test]
    fn median_outputs_are_neighbourhood_values(pixels in prop::collection::vec(any::<u8>(), 48)) {
        let img = GrayImage::new(8, 6, pixels).unwrap();
        let out = median_filter(&img, 3).unwrap();
        for y in 0..6usize {
            for x in 0..8usize {
                let v = out.get(x, y);
                let mut found = false;
                for sy in y.saturating_sub(1)..=(y + 1).min(5) {
                    for sx in x.saturating_sub(1)..=(x + 1).min(7) {
                        found |= img.get(sx, sy) == v;
                    }
                }
                prop_assert!(found);
            }
        }
    }

    #[test]
    fn fill_holes_is_idempotent_and_monotone(bits in prop::collection::vec(any::<bool>(), 100)) {
        let img = BinaryImage::new(10, 10, bits).unwrap();
        let once = fill_holes(&img);
        prop_assert!(img.is_subset_of(&once));
        prop_assert!(once.count_on() >= img.count_on());
        prop_assert_eq!(fill_holes(&once), once);
    }

    #[test]
    fn component_sizes_sum_to_on_count(bits in prop::collection::vec(any::<bool>(), 144)) {
        let img = BinaryImage::new(12, 12, bits).unwrap();
        for conn in [Connectivity::Four, Connectivity::Eight] {
            let cs = connected_components(&img, conn);
            prop_assert_eq!(cs.sizes.iter().sum::<usize>(), img.count_on());
            prop_assert!(cs.labels.iter().all(|&l| l as usize <= cs.count()));
            prop_assert_eq!(connected_components(&img, conn), cs);
        }
    }

    #[test]
    fn cropped_glyph_touches_all_edges(bits in prop::collection::vec(any::<bool>(), 150)) {
        let img = BinaryImage::new(15, 10, bits).unwrap();
        prop_assume!(img.count_on() > 0);
        let c = crop(&img, &bounding_box(&img).unwrap()).unwrap();
        let (w, h) = (c.width(), c.height());
        prop_assert!((0..w).any(|x| c.get(x, 0)));
        prop_assert!((0..w).any(|x| c.get(x, h - 1)));
        prop_assert!((0..h).any(|y| c.get(0, y)));
        prop_assert!((0..h).any(|y| c.get(w - 1, y)));
    }
}
