//! Robust tabu search (Taillard 1991) for the QAP.
//!
//! Best-swap tabu search over all location pairs with O(1) amortized
//! delta lookups, randomized tabu tenure, and the long-term aspiration
//! rule. Default parameterization: `N^2` iterations, tenure drawn from
//! `[0.9N, 1.1N]`, aspiration horizon `2N^2`.

mod delta;
mod params;
mod search;

pub use delta::{swap_delta, SwapDeltaTable};
pub use params::{ParamError, RtsParams};
pub use qap_core::RunRecord;
pub use search::rts_run;
