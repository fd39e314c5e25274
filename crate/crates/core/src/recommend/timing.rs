use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct TimingReport {
    pub load_time_ms: f64,
    pub search_time_ms: f64,
    pub execution_time_ms: f64,
}

impl TimingReport {
    pub fn new(load_time_ms: f64, search_time_ms: f64) -> Self {
        Self {
            load_time_ms,
            search_time_ms,
            execution_time_ms: load_time_ms + search_time_ms,
        }
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

/// Times `load`, then `search` on its output. Execution time is the sum of
/// the two.
pub fn measure_timings<L, S>(load: impl FnOnce() -> L, search: impl FnOnce(L) -> S) -> (TimingReport, S) {
    let start = Instant::now();
    let loaded = load();
    let load_ms = elapsed_ms(start);
    let start = Instant::now();
    let out = search(loaded);
    let search_ms = elapsed_ms(start);
    (TimingReport::new(load_ms, search_ms), out)
}

/// Rows of `label,load_ms,search_ms,execution_ms`.
pub fn timings_to_csv(rows: &[(String, TimingReport)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["operation", "load_time_ms", "search_time_ms", "execution_time_ms"])?;
    for (label, t) in rows {
        w.write_record([
            label.clone(),
            format!("{:.4}", t.load_time_ms),
            format!("{:.4}", t.search_time_ms),
            format!("{:.4}", t.execution_time_ms),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn execution_is_sum() {
        let (t, out) = measure_timings(|| 2, |x| x * 3);
        assert_eq!(out, 6);
        assert_eq!(t.execution_time_ms, t.load_time_ms + t.search_time_ms);
        assert!(t.load_time_ms >= 0.0 && t.search_time_ms >= 0.0);
        assert!(t.execution_time_ms < 100.0);
    }

    #[test]
    fn csv_layout() {
        let csv = timings_to_csv(&[("q".into(), TimingReport::new(1.0, 0.5))]).unwrap();
        assert_eq!(
            csv,
            "operation,load_time_ms,search_time_ms,execution_time_ms\nq,1.0000,0.5000,1.5000\n"
        );
    }
}
