pub mod algebra;
pub mod cli;
pub mod derivation;
pub mod error;
pub mod exactmath;
pub mod kerrad;
pub mod report;
pub mod sample;
pub mod spectral;
pub mod vandermonde;
pub mod weylop;

pub use error::{Error, Result};
