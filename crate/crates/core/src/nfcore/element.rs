use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An element of `K` in the power basis: `(Σ coords[u]·θ^u) / denom`.
///
/// Always normalized: `denom > 0` and `gcd(coords…, denom) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    coords: Vec<BigInt>,
    denom: BigInt,
}

impl FieldElement {
    pub fn new(coords: Vec<BigInt>, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        let mut g = denom.clone();
        for c in &coords {
            g = g.gcd(c);
        }
        if denom.is_negative() {
            g = -g;
        }
        let (coords, denom) = if g.is_one() {
            (coords, denom)
        } else {
            (coords.into_iter().map(|c| c / &g).collect(), denom / &g)
        };
        Self { coords, denom }
    }

    pub fn integral(coords: Vec<BigInt>) -> Self {
        Self { coords, denom: BigInt::one() }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::integral(coords.iter().map(|&c| c.into()).collect())
    }

    pub fn from_int(degree: usize, n: BigInt) -> Self {
        let mut coords = vec![BigInt::zero(); degree];
        coords[0] = n;
        Self::integral(coords)
    }

    pub fn zero(degree: usize) -> Self {
        Self::integral(vec![BigInt::zero(); degree])
    }

    pub fn one(degree: usize) -> Self {
        Self::from_int(degree, BigInt::one())
    }

    pub fn from_rationals(q: &[BigRational]) -> Self {
        let den = q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let coords = q.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        Self::new(coords, den)
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.coords.iter().map(|c| BigRational::new(c.clone(), self.denom.clone())).collect()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn degree(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.coords[0].clone(), self.denom.clone()))
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Self::new(self.coords.iter().map(|c| c * k).collect(), self.denom.clone())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(self.coords.iter().map(|c| c * q.numer()).collect(), &self.denom * q.denom())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        assert_eq!(self.degree(), o.degree());
        if self.denom == o.denom {
            return FieldElement::new(
                self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
                self.denom.clone(),
            );
        }
        FieldElement::new(
            self.coords.iter().zip(&o.coords).map(|(a, b)| a * &o.denom + b * &self.denom).collect(),
            &self.denom * &o.denom,
        )
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self + &(-o)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { coords: self.coords.iter().map(|c| -c).collect(), denom: self.denom.clone() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    /// `a0+a1*t+a2*t^2`, with `/den` appended when not integral.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (u, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let a = c.abs();
            match u {
                0 => s.push_str(&a.to_string()),
                _ => {
                    if !a.is_one() {
                        s.push_str(&format!("{a}*"));
                    }
                    s.push('t');
                    if u > 1 {
                        s.push_str(&format!("^{u}"));
                    }
                }
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        if self.denom.is_one() {
            write!(f, "{s}")
        } else {
            write!(f, "({s})/{}", self.denom)
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        let x = FieldElement::new(vec![4.into(), 6.into()], BigInt::from(-2));
        assert_eq!(x, FieldElement::from_i64(&[-2, -3]));
        let y = FieldElement::new(vec![3.into(), 6.into()], 9.into());
        assert_eq!(y.denom(), &BigInt::from(3));
    }

    #[test]
    fn addition_and_display() {
        let a = FieldElement::from_i64(&[3, 2]);
        let b = FieldElement::from_i64(&[1, -2]);
        assert_eq!(&a + &b, FieldElement::from_i64(&[4, 0]));
        assert_eq!(a.to_string(), "3+2*t");
        assert_eq!(FieldElement::from_i64(&[0, -1, 5]).to_string(), "-t+5*t^2");
        assert_eq!(FieldElement::new(vec![1.into(), 1.into()], 2.into()).to_string(), "(1+t)/2");
    }
}
