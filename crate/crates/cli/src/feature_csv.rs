//! Feature table export.

use glyphstroke_core::corpus::Sample;
use glyphstroke_core::features::{FeatureVector, FEATURE_NAMES};

use crate::error::{Error, Result};

/// Formats `x` with `digits` significant digits in the style of C's `%g`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..digits as i32).contains(&exp) {
        let fixed = format!("{:.*}", (digits as i32 - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Header `label,style,size,omega0,…,pbottom` and one row per sample.
pub fn features_csv(samples: &[Sample], features: &[FeatureVector]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let mut header = vec!["label", "style", "size"];
    header.extend(FEATURE_NAMES);
    let fail = |e: csv::Error| Error::Usage(format!("cannot write CSV: {e}"));
    w.write_record(&header).map_err(fail)?;
    for (s, f) in samples.iter().zip(features) {
        let mut row = vec![s.label.clone(), s.style.clone(), s.size_pt.to_string()];
        row.extend(f.to_array().iter().map(|&v| format_significant(v, 9)));
        w.write_record(&row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields is UTF-8"))
}
