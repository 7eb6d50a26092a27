//! Cross-entropy benchmarking, Porter-Thomas statistics and Monte Carlo
//! estimates over sets of computed probabilities. All logarithms are natural.

mod bootstrap;
mod mc;
mod porter_thomas;
mod samplers;
mod xeb;

pub use bootstrap::{bootstrap_error, bootstrap_error_with};
pub use mc::{expectation_from_set, expectation_mc, McEstimate};
pub use porter_thomas::{
    entropy_estimate, ks_exponential, pt_check, pt_check_with, HistogramBin, PtStats, PT_KS_MIN_SAMPLES,
    PT_KS_THRESHOLD,
};
pub use samplers::MixtureSampler;
pub use xeb::{
    cross_entropy, fidelity_estimate, porter_thomas_constants, xeb_error_model, FidelityEstimate, PtConstants,
    XebErrorModel, EULER_GAMMA, PT_LOG_VARIANCE,
};
