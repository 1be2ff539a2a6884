//! Covariance experiments, the character-expansion identity behind them,
//! Frobenius ensembles versus Haar averages, and q sweeps.

pub mod covar;
pub mod katz;
pub mod report;
pub mod step;

pub use covar::{
    covar1_empirical, covar2_empirical, covar2_subtracted, covar3_empirical, covar3_in_proven_range,
    covar_limit, limit_sum,
};
pub use katz::{frobenius_ensemble_average, katz_report, KatzReport};
pub use report::{covar_report, q_sweep, write_csv, write_json, CovarParams, CovarReport, Experiment};
pub use step::{step_identity_check, step_identity_checks, StepIdentity};
