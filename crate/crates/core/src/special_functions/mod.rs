//! Mittag-Leffler family and related special functions.

mod fox_h;
pub mod gamma;
mod hypergeometric;
mod mittag_leffler;
mod response;
pub(crate) mod series;

pub use fox_h::{h_integrand, HFunctionParams};
pub use hypergeometric::{g1_series, hyp1f1, wright_eval, G1Params, WrightParams};
pub use mittag_leffler::{ml_eval, ml_eval_detailed, ml_two_param_series, pochhammer, MLParams};
pub use response::{f_function, f_function_series, r_function, r_function_series};
pub use series::{SeriesConfig, SeriesValue};

#[allow(unused_imports)]
pub(crate) use series::{sum_series, Term};
