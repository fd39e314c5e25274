use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `z`: recommended and relevant, `x`: recommended but not relevant,
/// `y`: relevant but not recommended.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalCounts {
    pub z: u64,
    pub x: u64,
    pub y: u64,
}

impl EvalCounts {
    pub fn new(z: u64, x: u64, y: u64) -> Self {
        Self { z, x, y }
    }
}

impl AddAssign for EvalCounts {
    fn add_assign(&mut self, o: Self) {
        self.z += o.z;
        self.x += o.x;
        self.y += o.y;
    }
}

pub fn precision(c: EvalCounts) -> Result<f64> {
    if c.x + c.z == 0 {
        return Err(Error::UndefinedMetric("precision"));
    }
    Ok(c.z as f64 / (c.x + c.z) as f64)
}

pub fn recall(c: EvalCounts) -> Result<f64> {
    if c.y + c.z == 0 {
        return Err(Error::UndefinedMetric("recall"));
    }
    Ok(c.z as f64 / (c.y + c.z) as f64)
}

/// Harmonic mean; zero when both inputs are zero.
pub fn f_measure(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}
