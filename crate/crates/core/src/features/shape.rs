use crate::error::{Error, Result};
use crate::imaging::{fill_holes, BinaryImage, BoundingBox};

/// Eccentricity reported for collinear pixel sets.
pub const ECCENTRICITY_CAP: f64 = 1e6;

const DEGENERATE_EIGENVALUE: f64 = 1e-12;

/// Hole-filled on-pixel count over raster area.
pub fn on_pixel_ratio(img: &BinaryImage) -> f64 {
    fill_holes(img).count_on() as f64 / img.area() as f64
}

/// Width over height.
pub fn aspect_ratio(bbox: &BoundingBox) -> f64 {
    bbox.width() as f64 / bbox.height() as f64
}

/// Major over minor axis of the ellipse with the same second central
/// moments as the on-pixels.
///
/// A single pixel is treated as isotropic (1.0); a collinear set has a
/// vanishing minor axis and is capped at [`ECCENTRICITY_CAP`].
pub fn eccentricity(img: &BinaryImage) -> Result<f64> {
    let n = img.count_on();
    if n == 0 {
        return Err(Error::EmptyGlyph);
    }
    let nf = n as f64;
    let (sx, sy) = img.on_pixels().fold((0.0, 0.0), |(sx, sy), (x, y)| {
        (sx + x as f64, sy + y as f64)
    });
    let (mx, my) = (sx / nf, sy / nf);
    let (mut mu20, mut mu02, mut mu11) = (0.0, 0.0, 0.0);
    for (x, y) in img.on_pixels() {
        let dx = x as f64 - mx;
        let dy = y as f64 - my;
        mu20 += dx * dx;
        mu02 += dy * dy;
        mu11 += dx * dy;
    }
    let (a, b, c) = (mu20 / nf, mu02 / nf, mu11 / nf);

    let half_trace = 0.5 * (a + b);
    let spread = libm::sqrt(0.25 * (a - b) * (a - b) + c * c);
    let major = half_trace + spread;
    if major <= DEGENERATE_EIGENVALUE {
        return Ok(1.0);
    }
    // det / major avoids cancellation in half_trace - spread
    let minor = (a * b - c * c) / major;
    if minor <= DEGENERATE_EIGENVALUE {
        return Ok(ECCENTRICITY_CAP);
    }
    Ok(libm::sqrt(major / minor).min(ECCENTRICITY_CAP))
}

/// On-pixel count over bounding-box area.
pub fn extent(img: &BinaryImage, bbox: &BoundingBox) -> Result<f64> {
    let mut on = 0usize;
    for (x, y) in img.on_pixels() {
        if x >= bbox.left && x <= bbox.right && y >= bbox.top && y <= bbox.bottom {
            on += 1;
        }
    }
    if on == 0 {
        return Err(Error::EmptyGlyph);
    }
    Ok(on as f64 / bbox.area() as f64)
}

/// Background run totals from each side, normalized by raster area.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Profiles {
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
}

/// Raw off-pixel counts `[left, right, top, bottom]`.
///
/// Each row contributes the length of its leading off run seen from the
/// left (and, separately, from the right); each column likewise from the
/// top and bottom. An all-off row or column contributes its full length to
/// both of its sides.
pub fn profile_counts(img: &BinaryImage) -> [usize; 4] {
    let (w, h) = (img.width(), img.height());
    let mut counts = [0usize; 4];
    for y in 0..h {
        let first = (0..w).find(|&x| img.get(x, y));
        counts[0] += first.unwrap_or(w);
        counts[1] += (0..w)
            .rev()
            .find(|&x| img.get(x, y))
            .map_or(w, |x| w - 1 - x);
    }
    for x in 0..w {
        counts[2] += (0..h).find(|&y| img.get(x, y)).unwrap_or(h);
        counts[3] += (0..h)
            .rev()
            .find(|&y| img.get(x, y))
            .map_or(h, |y| h - 1 - y);
    }
    counts
}

pub fn directional_profiles(img: &BinaryImage) -> Result<Profiles> {
    if img.count_on() == 0 {
        return Err(Error::EmptyGlyph);
    }
    let area = img.area() as f64;
    let [l, r, t, b] = profile_counts(img);
    Ok(Profiles {
        left: l as f64 / area,
        right: r as f64 / area,
        top: t as f64 / area,
        bottom: b as f64 / area,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn ratios_of_simple_images() {
        assert_eq!(on_pixel_ratio(&BinaryImage::filled(3, 4).unwrap()), 1.0);
        assert_eq!(on_pixel_ratio(&BinaryImage::blank(3, 4).unwrap()), 0.0);
        let ring = BinaryImage::from_ascii(&[".....", ".###.", ".#.#.", ".###.", "....."]).unwrap();
        assert!((on_pixel_ratio(&ring) - 9.0 / 25.0).abs() < 1e-15);
    }

    #[test]
    fn aspect_ratio_of_boxes() {
        assert_eq!(aspect_ratio(&BoundingBox::full(7, 7)), 1.0);
        assert_eq!(aspect_ratio(&BoundingBox::full(20, 40)), 0.5);
    }

    #[test]
    fn eccentricity_degenerate_cases() {
        assert_eq!(
            eccentricity(&BinaryImage::filled(1, 1).unwrap()).unwrap(),
            1.0
        );
        assert_eq!(
            eccentricity(&BinaryImage::filled(5, 1).unwrap()).unwrap(),
            ECCENTRICITY_CAP
        );
        let diag = BinaryImage::from_ascii(&["#..", ".#.", "..#"]).unwrap();
        assert_eq!(eccentricity(&diag).unwrap(), ECCENTRICITY_CAP);
        assert_eq!(
            eccentricity(&BinaryImage::blank(2, 2).unwrap()),
            Err(Error::EmptyGlyph)
        );
    }

    #[test]
    fn eccentricity_of_rectangle() {
        let e = eccentricity(&BinaryImage::filled(40, 20).unwrap()).unwrap();
        // (40² - 1) / (20² - 1) under the discrete uniform variance
        assert!((e - libm::sqrt(1599.0 / 399.0)).abs() < 1e-12);
    }

    #[test]
    fn extent_of_diagonal() {
        let n = 6;
        let bits: Vec<bool> = (0..n * n).map(|i| i % n == i / n).collect();
        let img = BinaryImage::new(n, n, bits).unwrap();
        let e = extent(&img, &BoundingBox::full(n, n)).unwrap();
        assert!((e - 1.0 / n as f64).abs() < 1e-15);
    }

    #[test]
    fn profiles_of_half_plane() {
        let img = BinaryImage::from_ascii(&["..##", "..##", "..##", "..##"]).unwrap();
        let p = directional_profiles(&img).unwrap();
        assert_eq!((p.left, p.right), (0.5, 0.0));
        // the two blank columns are scanned in full from both ends
        assert_eq!((p.top, p.bottom), (0.5, 0.5));
        let cropped = BinaryImage::filled(2, 4).unwrap();
        assert_eq!(directional_profiles(&cropped).unwrap(), Profiles::default());
    }

    #[test]
    fn interior_blank_row_counts_on_both_sides() {
        let img = BinaryImage::from_ascii(&["###", "...", "###"]).unwrap();
        assert_eq!(profile_counts(&img), [3, 3, 0, 0]);
    }

    #[test]
    fn solid_and_point_profiles_are_zero() {
        for img in [
            BinaryImage::filled(3, 5).unwrap(),
            BinaryImage::filled(1, 1).unwrap(),
        ] {
            assert_eq!(directional_profiles(&img).unwrap(), Profiles::default());
        }
    }
}
