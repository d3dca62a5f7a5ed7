use super::{BinaryImage, GrayImage};

/// Otsu's global threshold over the 256-bin histogram.
///
/// Pixels `<= t` form the dark class. Returns the `t` that maximizes the
/// between-class variance; ties resolve to the smallest `t`, so a constant
/// image yields 0.
///
/// The comparison is carried out in exact integer arithmetic. With `N`
/// pixels, intensity sum `S`, and `n0`, `s0` the count and sum of the dark
/// class, the between-class variance times `N²` equals
/// `(N·s0 − n0·S)² / (n0·(N − n0))`.
pub fn otsu_threshold(img: &GrayImage) -> u8 {
    let mut hist = [0u64; 256];
    for &p in img.pixels() {
        hist[p as usize] += 1;
    }
    let total: u64 = hist.iter().sum();
    let sum: u128 = hist
        .iter()
        .enumerate()
        .map(|(v, &c)| v as u128 * c as u128)
        .sum();

    let mut best_t = 0u8;
    // best score as numerator / denominator; 0/1 encodes zero variance
    let mut best_num: u128 = 0;
    let mut best_den: u128 = 1;
    let mut n0: u64 = 0;
    let mut s0: u128 = 0;

    for t in 0..=255usize {
        n0 += hist[t];
        s0 += t as u128 * hist[t] as u128;
        let n1 = total - n0;
        if n0 == 0 || n1 == 0 {
            continue;
        }
        let diff = (total as u128 * s0).abs_diff(n0 as u128 * sum);
        let num = diff * diff;
        let den = n0 as u128 * n1 as u128;
        if greater(num, den, best_num, best_den) {
            best_num = num;
            best_den = den;
            best_t = t as u8;
        }
    }
    best_t
}

/// Exact `a/b > c/d` for nonnegative fractions with `b, d > 0`.
fn greater(a: u128, b: u128, c: u128, d: u128) -> bool {
    cmp_wide(mul_wide(a, d), mul_wide(c, b)) == core::cmp::Ordering::Greater
}

/// Full 256-bit product as (high, low) halves.
fn mul_wide(x: u128, y: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (x_hi, x_lo) = (x >> 64, x & MASK);
    let (y_hi, y_lo) = (y >> 64, y & MASK);

    let ll = x_lo * y_lo;
    let lh = x_lo * y_hi;
    let hl = x_hi * y_lo;
    let hh = x_hi * y_hi;

    let mid = (ll >> 64) + (lh & MASK) + (hl & MASK);
    let lo = (ll & MASK) | (mid << 64);
    let hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (hi, lo)
}

fn cmp_wide(a: (u128, u128), b: (u128, u128)) -> core::cmp::Ordering {
    a.0.cmp(&b.0).then(a.1.cmp(&b.1))
}

/// Global binarization: intensity `<= t` is ink (on), brighter is paper (off).
pub fn binarize(img: &GrayImage, t: u8) -> BinaryImage {
    let bits = img.pixels().iter().map(|&p| p <= t).collect();
    BinaryImage::new(img.width(), img.height(), bits).expect("dimensions already validated")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn constant_image_returns_zero() {
        let img = GrayImage::filled(4, 4, 128).unwrap();
        assert_eq!(otsu_threshold(&img), 0);
    }

    #[test]
    fn two_level_image_takes_smallest_separating_threshold() {
        let img = GrayImage::new(2, 2, vec![0, 255, 255, 0]).unwrap();
        assert_eq!(otsu_threshold(&img), 0);
        let img = GrayImage::new(3, 1, vec![40, 200, 200]).unwrap();
        assert_eq!(otsu_threshold(&img), 40);
    }

    #[test]
    fn binarize_polarity() {
        let white = GrayImage::filled(3, 2, 255).unwrap();
        assert_eq!(binarize(&white, 127).count_on(), 0);
        let black = GrayImage::filled(3, 2, 0).unwrap();
        assert_eq!(binarize(&black, 127).count_on(), 6);
    }

    #[test]
    fn wide_multiply_matches_small_products() {
        assert_eq!(mul_wide(3, 5), (0, 15));
        assert_eq!(mul_wide(u128::MAX, 2), (1, u128::MAX - 1));
        assert_eq!(mul_wide(u128::MAX, u128::MAX), (u128::MAX - 1, 1));
    }
}
