use num_bigint::BigInt;
use num_traits::Zero;

use super::fp;
use super::FractionalIdeal;
use crate::error::{Error, Result};
use crate::nfcore::{FieldElement, NumberField};

/// The degree-one prime `𝔭 = (p, θ − root)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdealData {
    pub p: u64,
    pub root: u64,
    pub ideal: FractionalIdeal,
    pub ramified: bool,
}

impl PrimeIdealData {
    pub fn new(k: &NumberField, p: u64, root: u64) -> Result<Self> {
        if !fp::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if root >= p || fp::eval(&fp::reduce_poly(k.poly(), p), root, p) != 0 {
            return Err(Error::NotARoot { p, root });
        }
        let ideal = FractionalIdeal::from_generators(
            k,
            &[k.from_int(p), &k.theta() - &k.from_int(root)],
        )?;
        let ramified = (k.disc() % BigInt::from(p)).is_zero();
        Ok(Self { p, root, ideal, ramified })
    }

    /// `𝒩(𝔭) = p`.
    pub fn norm(&self) -> u64 {
        self.p
    }

    pub fn residue_degree(&self) -> u32 {
        1
    }

    /// Image of an integral element in `O_K/𝔭 = F_p`.
    pub fn residue(&self, x: &FieldElement) -> Result<u64> {
        if !x.is_integral() {
            return Err(Error::NonIntegral);
        }
        let c: Vec<u64> = x.coords().iter().map(|c| fp::reduce_bigint(c, self.p)).collect();
        Ok(fp::eval(&c, self.root, self.p))
    }

    /// The canonical lift of a residue: the rational integer `ρ`.
    pub fn lift(&self, k: &NumberField, rho: u64) -> FieldElement {
        k.from_int(rho)
    }
}

/// Degree-one primes above `p`, one per root of `f mod p`, in increasing
/// root order. Ramified `p` is refused unless `allow_ramified` is set.
pub fn primes_above(k: &NumberField, p: u64, allow_ramified: bool) -> Result<Vec<PrimeIdealData>> {
    if !fp::is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if !allow_ramified && (k.disc() % BigInt::from(p)).is_zero() {
        return Err(Error::Ramified(p));
    }
    let f = fp::reduce_poly(k.poly(), p);
    fp::roots(&f, p).into_iter().map(|r| PrimeIdealData::new(k, p, r)).collect()
}

/// Smallest degree-one prime above `p ≥ start` that is unramified; used to
/// find fresh primes for modular root finding.
pub fn next_split_prime(k: &NumberField, start: u64) -> Option<PrimeIdealData> {
    let mut p = start.max(2);
    while p < u64::MAX / 2 {
        if fp::is_prime_u64(p) && !(k.disc() % BigInt::from(p)).is_zero() {
            if let Ok(ps) = primes_above(k, p, false) {
                if let Some(first) = ps.into_iter().next() {
                    return Some(first);
                }
            }
        }
        p += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> NumberField {
        NumberField::from_i64(&[1, 0, 1]).unwrap()
    }

    #[test]
    fn splitting_in_gaussian_integers() {
        let k = gauss();
        let five = primes_above(&k, 5, false).unwrap();
        assert_eq!(five.iter().map(|p| p.root).collect::<Vec<_>>(), vec![2, 3]);
        assert!(five.iter().all(|p| p.ideal.norm() == num_rational::BigRational::from_integer(5.into())));
        assert!(primes_above(&k, 3, false).unwrap().is_empty());
        let thirteen = primes_above(&k, 13, false).unwrap();
        assert_eq!(thirteen.iter().map(|p| p.root).collect::<Vec<_>>(), vec![5, 8]);
        assert!(matches!(primes_above(&k, 2, false), Err(Error::Ramified(2))));
        let two = primes_above(&k, 2, true).unwrap();
        assert_eq!(two.len(), 1);
        assert!(two[0].ramified);
        assert!(matches!(primes_above(&k, 15, false), Err(Error::NotPrime(15))));
    }

    #[test]
    fn residues() {
        let k = gauss();
        let p5 = PrimeIdealData::new(&k, 5, 2).unwrap();
        let p13 = PrimeIdealData::new(&k, 13, 5).unwrap();
        let x = k.element(&[3, 2]);
        assert_eq!(p5.residue(&k.zero()).unwrap(), 0);
        assert_eq!(p5.residue(&x).unwrap(), 2);
        assert_eq!(p13.residue(&x).unwrap(), 0);
        assert!(p13.ideal.contains(&x));
        let half = FieldElement::new(vec![1.into(), 0.into()], 2.into());
        assert!(matches!(p5.residue(&half), Err(Error::NonIntegral)));
        assert!(matches!(PrimeIdealData::new(&k, 5, 1), Err(Error::NotARoot { .. })));
    }

    #[test]
    fn fresh_prime() {
        let k = gauss();
        let q = next_split_prime(&k, 100).unwrap();
        assert_eq!((q.p, q.root), (101, 10));
    }
}
