//! Efficiency and most productive scale size (MPSS) measurement for
//! two-stage and series-parallel network DEA.
//!
//! Models are lowered to dense linear programs solved by [`lp::solve_lp`].

pub mod cli;
pub mod decomposition;
pub mod error;
pub mod general_network;
pub mod lp;
pub mod model_io;
mod optimum;
pub mod report;
pub mod stats;
pub mod value_chain;

pub use error::{Error, Result};
pub use optimum::FIXING_BAND;
