//! Modules over `O_K` inside `Kʷ`: pseudo-matrices, their Hermite normal
//! form, intersections, sums, determinant ideals, and flattening to integer
//! lattices for reduction.

mod flatten;
mod kpoly;
mod pseudo;

pub use flatten::{coefficient_bound, flatten, short_poly, Flattened, ShortPoly};
pub use kpoly::KPoly;
pub use pseudo::{det_over_k, idempotent_split, PseudoMatrix, PseudoRow};
