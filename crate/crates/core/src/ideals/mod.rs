//! Fractional ideals of `O_K` and degree-one prime ideals.

pub mod fp;
mod ideal;
mod prime;

pub use ideal::FractionalIdeal;
pub use prime::{next_split_prime, primes_above, PrimeIdealData};
