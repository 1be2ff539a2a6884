//! Unitary-group side: Haar sampling, symmetric functions of spectra, the
//! statistics H_j^{(n)}, their exact Haar covariances and the ratio theorem.

pub mod haar;
pub mod hstat;
pub mod ratio;
pub mod symfn;
pub mod zeta;

pub use haar::{estimate_values, haar_sample, mc_integrate, HaarEnsemble, HaarSample, McEstimate};
pub use hstat::{
    h_covariance_exact, h_covariance_via_schur, h_statistic, h_table, h_to_schur_coeffs,
    increment, increment_product_sum,
};
pub use ratio::{ratio_closed_form, ratio_integrand, ratio_theorem_check, RatioCheck, RatioParams};
pub use symfn::{hook_schur, sym_fn_values, HookPartition, SpectrumStats, SymFnValues};
pub use zeta::{log_derivative_check, LogDerivativeCheck};
