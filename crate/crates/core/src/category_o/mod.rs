//! Truncated highest weight modules of `sl_n` and the functor
//! `X -> H_0(n_-, X (x) V^{(x) l})_lambda` computed directly.

pub mod direct;
pub mod sln;
pub mod truncated;

pub use direct::{default_depth, f_lambda_direct, DirectImage};
pub use sln::SLnData;
pub use truncated::{kostant_count, shapovalov_gram, simple_truncated, verma_truncated, OKind, TruncatedOModule};
