use crate::error::{Error, Result};
use crate::ingest::model::DataSourceDescriptor;

pub const NORMALIZED_MIN: f64 = 1.0;
pub const NORMALIZED_MAX: f64 = 5.0;

/// Maps a native-scale rank onto the common 1..=5 scale.
pub fn normalize_rank(value: f64, source: &DataSourceDescriptor) -> Result<f64> {
    let (min, max) = (source.rank_scale_min, source.rank_scale_max);
    if !source.contains(value) {
        return Err(Error::Range { value, min, max });
    }
    if min == NORMALIZED_MIN && max == NORMALIZED_MAX {
        return Ok(value);
    }
    Ok(NORMALIZED_MIN + (NORMALIZED_MAX - NORMALIZED_MIN) * (value - min) / (max - min))
}
