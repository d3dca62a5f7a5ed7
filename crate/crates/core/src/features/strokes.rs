use super::FeatureConfig;
use crate::error::{Error, Result};
use crate::imaging::{connected_components, BinaryImage, ComponentSet, Connectivity};
use crate::morphology::{line_se, se_length, Direction, SeThreshold};

/// Strokes of a glyph along one direction: the 8-connected components of
/// the directionally opened glyph.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionalStrokes {
    pub direction: Direction,
    /// Structuring element length used for the opening.
    pub se_length: usize,
    pub opened: BinaryImage,
    pub components: ComponentSet,
}

impl DirectionalStrokes {
    /// Number of strokes.
    pub fn count(&self) -> usize {
        self.components.count()
    }

    /// Pixel count of each stroke, in label order.
    pub fn lengths(&self) -> &[usize] {
        &self.components.sizes
    }
}

/// Strokes along `direction` using the standard opening.
pub fn directional_strokes(
    img: &BinaryImage,
    direction: Direction,
    fraction: SeThreshold,
) -> Result<DirectionalStrokes> {
    directional_strokes_with(img, direction, &FeatureConfig::with_fraction(fraction))
}

/// Strokes along `direction` with an explicit operator order.
///
/// `img` should already be cropped: the SE length is taken from its height.
pub fn directional_strokes_with(
    img: &BinaryImage,
    direction: Direction,
    config: &FeatureConfig,
) -> Result<DirectionalStrokes> {
    if img.count_on() == 0 {
        return Err(Error::EmptyGlyph);
    }
    let len = se_length(config.fraction, img.height());
    let se = line_se(direction, len)?;
    let opened = config.op_order.apply(img, &se);
    let components = connected_components(&opened, Connectivity::Eight);
    Ok(DirectionalStrokes {
        direction,
        se_length: len,
        opened,
        components,
    })
}

/// Mean stroke pixel count; 0 when the direction has no strokes.
pub fn avg_stroke_length(ds: &DirectionalStrokes) -> f64 {
    mean(ds.lengths())
}

fn mean(lengths: &[usize]) -> f64 {
    if lengths.is_empty() {
        0.0
    } else {
        lengths.iter().sum::<usize>() as f64 / lengths.len() as f64
    }
}

/// Sum over the four directions of stroke count per unit glyph width.
pub fn avg_stroke_density(per_direction: [&DirectionalStrokes; 4], width: usize) -> f64 {
    density_from_counts(per_direction.map(|d| d.count()), width)
}

pub(crate) fn density_from_counts(counts: [usize; 4], width: usize) -> f64 {
    let w = width as f64;
    counts.iter().map(|&n| n as f64 / w).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(f: f64) -> SeThreshold {
        SeThreshold::new(f).unwrap()
    }

    #[test]
    fn mean_of_lengths() {
        assert_eq!(mean(&[30]), 30.0);
        assert_eq!(mean(&[10, 20]), 15.0);
        assert_eq!(mean(&[]), 0.0);
    }

    #[test]
    fn density_arithmetic() {
        assert!((density_from_counts([2, 0, 2, 0], 10) - 0.4).abs() < 1e-15);
        assert_eq!(density_from_counts([0; 4], 7), 0.0);
    }

    #[test]
    fn unit_glyph_has_one_stroke() {
        let img = BinaryImage::filled(1, 1).unwrap();
        for d in Direction::ALL {
            let ds = directional_strokes(&img, d, frac(0.3)).unwrap();
            assert_eq!(ds.se_length, 1);
            assert_eq!(ds.lengths(), &[1]);
            assert_eq!(avg_stroke_length(&ds), 1.0);
        }
    }

    #[test]
    fn short_extent_has_no_strokes() {
        // 3 tall, SE of length 3 at 0 degrees on a 2-wide glyph
        let img = BinaryImage::filled(2, 3).unwrap();
        let ds = directional_strokes(&img, Direction::Deg0, frac(1.0)).unwrap();
        assert_eq!(ds.se_length, 3);
        assert_eq!(ds.count(), 0);
        assert_eq!(avg_stroke_length(&ds), 0.0);
    }

    #[test]
    fn vertical_strokes_of_a_bar() {
        // 10 wide, 3 tall; SE length round(0.7 * 3) = 2 keeps the whole bar
        let img = BinaryImage::filled(10, 3).unwrap();
        let ds = directional_strokes(&img, Direction::Deg90, frac(0.7)).unwrap();
        assert_eq!(ds.se_length, 2);
        assert_eq!(ds.count(), 1);
        assert_eq!(ds.lengths(), &[30]);
    }

    #[test]
    fn empty_glyph_is_rejected() {
        let img = BinaryImage::blank(3, 3).unwrap();
        assert_eq!(
            directional_strokes(&img, Direction::Deg0, frac(0.5)),
            Err(Error::EmptyGlyph)
        );
    }
}
