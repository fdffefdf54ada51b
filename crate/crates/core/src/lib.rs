//! Partial sums of harmonic progressions `sum_{j=1}^{n} 1/(a j + b)^k`,
//! the matching partial Fourier sums and partial Lerch/polylogarithm sums,
//! evaluated through integral representations whose cost does not grow
//! with `n`, plus an extended-precision direct-summation oracle.

// negated float comparisons below also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::too_many_arguments)]

pub mod closed_forms;
pub mod dd;
pub mod error;
pub mod exact;
pub mod kernels;
pub mod oracle;
pub mod quadrature;
pub mod report;

pub use closed_forms::{EvalConfig, Evaluation, Evaluator, FourierParams, LerchParams, ProgressionParams};
pub use dd::{Cdd, Dd};
pub use error::{Error, Result};
