//! The number field `K = Q[t]/(f)`: elements, arithmetic, embeddings, the
//! `T₂` form, absolute norms and discriminants.
//!
//! The power basis `1, θ, …, θ^{d−1}` is taken to be an integral basis, so a
//! field element is integral exactly when its common denominator is 1.
//! Fields whose power basis does not generate the maximal order are outside
//! the supported range.

mod element;
mod embed;
mod field;
pub mod poly;

pub use element::FieldElement;
pub use embed::ComplexBall;
pub use field::{NumberField, T2Norm};
pub use poly::discriminant;
