//! Redundant-residue codes over number fields.
//!
//! A message is an algebraic integer `m` of a number field `K` with `‖m‖ ≤ B`;
//! it is sent as its residues modulo an increasing list of degree-one prime
//! ideals. Decoding searches a module of polynomials over `O_K` for a short
//! element `c` that vanishes at every message agreeing with the received word
//! on enough heavily weighted positions, then recovers those messages as the
//! roots of `c` inside the ball of radius `B`.
//!
//! The crate is layered bottom-up:
//!
//! * [`zlattice`]: integer HNF, LLL and Fincke–Pohst enumeration,
//! * [`nfcore`]: the field, its elements, `T₂`, norms and discriminants,
//! * [`ideals`]: fractional ideals and degree-one primes,
//! * [`okmod`]: pseudo-matrices and modules over `O_K`,
//! * [`codec`]: encoding, bounds, weights and the list decoder,
//! * [`harness`]: channel simulation, brute-force oracle, file formats and
//!   the acceptance suite.

#![allow(clippy::needless_range_loop)]

pub mod codec;
pub mod error;
pub mod harness;
pub mod ideals;
pub mod nfcore;
pub mod okmod;
pub mod real;
pub mod zlattice;

pub use codec::{
    decode, encode, CodeSpec, DecodeOptions, DecodeReport, ReceivedWord, Strategy, WeightVector,
};
pub use error::{Error, Result};
pub use ideals::{FractionalIdeal, PrimeIdealData};
pub use nfcore::{FieldElement, NumberField};
pub use okmod::{KPoly, PseudoMatrix};
pub use zlattice::{GramForm, IntMatrix};
