//! Covariance reports, their CSV/JSON encodings and q sweeps.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use super::covar::{covar1_empirical, covar2_empirical, covar3_empirical, covar_limit};
use crate::error::{domain, Error, Result};
use crate::fq::{FieldParams, MonicTable};
use crate::Rational;

/// One covariance measurement. `h = −1` marks the Λ̃ (covar2) case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CovarReport {
    pub experiment: String,
    pub q: u32,
    pub n: usize,
    pub h: i64,
    pub j: u32,
    pub k: u32,
    pub empirical_num: i128,
    pub empirical_den: i128,
    pub empirical_f64: f64,
    pub limit: i128,
    pub deviation: f64,
    pub seed: u64,
    pub millis: u64,
}

/// Which covariance to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    Covar1,
    Covar2,
    Covar3,
}

impl Experiment {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Experiment::Covar1),
            2 => Ok(Experiment::Covar2),
            3 => Ok(Experiment::Covar3),
            _ => domain(format!("unknown experiment {n} (expected 1, 2 or 3)")),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Covar1 => "covar1",
            Experiment::Covar2 => "covar2",
            Experiment::Covar3 => "covar3",
        }
    }
}

/// Parameters of one grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CovarParams {
    pub experiment: Experiment,
    pub n: usize,
    pub h: i64,
    pub j: u32,
    pub k: u32,
}

fn as_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Computes one report. For covar3, h = −1 dispatches to covar2 and
/// h > n − 4 is computed although outside the proven range. `timed`
/// fills `millis`; otherwise it is 0 so reruns are byte-identical.
pub fn covar_report(q: u32, p: CovarParams, budget: u64, seed: u64, timed: bool) -> Result<CovarReport> {
    let start = Instant::now();
    let field = FieldParams::new(q)?;
    let experiment = match (p.experiment, p.h) {
        (Experiment::Covar3, -1) => Experiment::Covar2,
        (e, _) => e,
    };
    if p.n == 0 {
        return domain("n must be at least 1");
    }
    let h = match experiment {
        Experiment::Covar3 => {
            if p.h < 0 || p.h as usize >= p.n {
                return domain(format!("covar3 needs -1 <= h < n, got h = {}", p.h));
            }
            p.h
        }
        Experiment::Covar2 => -1,
        Experiment::Covar1 => p.h,
    };
    let table = MonicTable::build(field, p.n, budget)?;
    let value = match experiment {
        Experiment::Covar1 => covar1_empirical(&table, p.n, p.j, p.k)?,
        Experiment::Covar2 => covar2_empirical(&table, p.n, p.j, p.k)?,
        Experiment::Covar3 => covar3_empirical(&table, p.n, h as usize, p.j, p.k)?,
    };
    let number = match experiment {
        Experiment::Covar1 => 1,
        Experiment::Covar2 => 2,
        Experiment::Covar3 => 3,
    };
    let limit = covar_limit(number, p.n, h, p.j, p.k);
    let empirical_f64 = as_f64(value);
    Ok(CovarReport {
        experiment: experiment.name().to_string(),
        q,
        n: p.n,
        h,
        j: p.j,
        k: p.k,
        empirical_num: *value.numer(),
        empirical_den: *value.denom(),
        empirical_f64,
        limit,
        deviation: as_f64(value - Rational::from_integer(limit)).abs(),
        seed,
        millis: if timed { start.elapsed().as_millis() as u64 } else { 0 },
    })
}

/// One report per prime in `qs`, in grid order. Failed points are kept as
/// errors so the caller can log them and continue.
pub fn q_sweep(qs: &[u32], p: CovarParams, budget: u64, seed: u64, timed: bool) -> Vec<(u32, Result<CovarReport>)> {
    qs.iter().map(|&q| (q, covar_report(q, p, budget, seed, timed))).collect()
}

pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Output(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Output(e.to_string()))
}

pub fn write_json<T: Serialize, W: Write>(rows: &[T], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows).map_err(|e| Error::Output(e.to_string()))?;
    writeln!(out).map_err(|e| Error::Output(e.to_string()))
}
