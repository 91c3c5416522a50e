//! Lorentz–Zygmund quasi-norms, Nikol'skii-type bound factors for
//! band-limited functions, and Besov embeddings of logarithmic smoothness.
//!
//! The crate is `no_std` (with `alloc`); file formats and the command-line
//! front end live in the `nikolskii` crate.

#![no_std]

extern crate alloc;

pub mod bandlimited;
pub mod besov;
pub mod error;
pub mod fft;
pub mod lznorm;
pub mod math;
pub mod nikolskii;
pub mod quad;
pub mod rearrange;
pub mod spaces;

pub use bandlimited::{BandlimitedFunction, BoxRegion, Spectrum};
pub use besov::{besov_norm, embedding_shift, BesovParams, Corollary};
pub use error::{Error, Result};
pub use lznorm::{lz_norm, NormMethod, NormResult};
pub use nikolskii::{
    classify, nikolskii_bound, verify_inequality, BoundResult, TheoremId, TripleClass,
};
pub use rearrange::{Piece, SampledFunction, StepFunction};
pub use spaces::{ExtReal, LogPair, SpaceParams};
