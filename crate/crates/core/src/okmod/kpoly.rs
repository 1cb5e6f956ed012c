use std::fmt;

use crate::nfcore::{FieldElement, NumberField};

/// Polynomial in `y` over `K`, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KPoly {
    d: usize,
    coeffs: Vec<FieldElement>,
}

impl KPoly {
    pub fn new(d: usize, mut coeffs: Vec<FieldElement>) -> Self {
        assert!(coeffs.iter().all(|c| c.degree() == d), "coefficient degree mismatch");
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Self { d, coeffs }
    }

    pub fn zero(d: usize) -> Self {
        Self { d, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        let d = c.degree();
        Self::new(d, vec![c])
    }

    /// `y − r`.
    pub fn linear(r: &FieldElement) -> Self {
        let d = r.degree();
        Self::new(d, vec![-r, FieldElement::one(d)])
    }

    /// `∏ (y − rᵢ)`.
    pub fn from_roots(k: &NumberField, roots: &[FieldElement]) -> Self {
        roots.iter().fold(Self::constant(k.one()), |acc, r| acc.mul(k, &Self::linear(r)))
    }

    pub fn field_degree(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> FieldElement {
        self.coeffs.get(j).cloned().unwrap_or_else(|| FieldElement::zero(self.d))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_integral)
    }

    /// Coefficients padded with zeros to `width`.
    pub fn to_vector(&self, width: usize) -> Vec<FieldElement> {
        assert!(self.coeffs.len() <= width, "polynomial does not fit the width");
        (0..width).map(|j| self.coeff(j)).collect()
    }

    pub fn eval(&self, k: &NumberField, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(FieldElement::zero(self.d), |acc, c| &k.mul(&acc, x) + c)
    }

    pub fn add(&self, o: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.d, (0..n).map(|j| &self.coeff(j) + &o.coeff(j)).collect())
    }

    pub fn sub(&self, o: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.d, (0..n).map(|j| &self.coeff(j) - &o.coeff(j)).collect())
    }

    pub fn mul(&self, k: &NumberField, o: &KPoly) -> KPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.d);
        }
        let mut out = vec![FieldElement::zero(self.d); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &k.mul(a, b);
            }
        }
        Self::new(self.d, out)
    }

    pub fn scale(&self, k: &NumberField, x: &FieldElement) -> KPoly {
        Self::new(self.d, self.coeffs.iter().map(|c| k.mul(c, x)).collect())
    }

    pub fn pow(&self, k: &NumberField, e: usize) -> KPoly {
        (0..e).fold(Self::constant(k.one()), |acc, _| acc.mul(k, self))
    }

    /// `y^s · self`.
    pub fn shift(&self, s: usize) -> KPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![FieldElement::zero(self.d); s];
        c.extend(self.coeffs.iter().cloned());
        Self::new(self.d, c)
    }

    pub fn derivative(&self) -> KPoly {
        Self::new(
            self.d,
            self.coeffs.iter().enumerate().skip(1).map(|(j, c)| c.scale_int(&j.into())).collect(),
        )
    }

    /// Euclidean division over `K`.
    pub fn div_rem(&self, k: &NumberField, b: &KPoly) -> (KPoly, KPoly) {
        let db = b.degree().expect("division by the zero polynomial");
        let inv = k.inv(b.coeffs.last().unwrap()).unwrap();
        let mut r = self.clone();
        let mut q = vec![FieldElement::zero(self.d); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let t = k.mul(r.coeffs.last().unwrap(), &inv);
            q[dr - db] = t.clone();
            r = r.sub(&b.scale(k, &t).shift(dr - db));
        }
        (Self::new(self.d, q), r)
    }

    pub fn monic(&self, k: &NumberField) -> KPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => self.scale(k, &k.inv(lead).unwrap()),
        }
    }

    /// Monic greatest common divisor over `K`.
    pub fn gcd(k: &NumberField, a: &KPoly, b: &KPoly) -> KPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(k, &b).1;
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// The squarefree part `c / gcd(c, c′)`, monic (characteristic zero).
    pub fn squarefree_part(&self, k: &NumberField) -> KPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic(k);
        }
        let g = Self::gcd(k, self, &self.derivative());
        self.div_rem(k, &g).0.monic(k)
    }

    /// Multiplies through by the least common denominator of the coefficients.
    pub fn clear_denominators(&self) -> KPoly {
        use num_integer::Integer;
        let l = self.coeffs.iter().fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        Self::new(self.d, self.coeffs.iter().map(|c| c.scale_int(&l)).collect())
    }
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*y")?,
                _ => write!(f, "({c})*y^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_and_squarefree() {
        let k = NumberField::from_i64(&[1, 0, 1]).unwrap();
        let m1 = k.element(&[3, 2]);
        let m2 = k.element(&[-1, 4]);
        let c = KPoly::from_roots(&k, &[m1.clone(), m2.clone(), m1.clone()]);
        assert_eq!(c.degree(), Some(3));
        assert!(c.eval(&k, &m1).is_zero());
        assert!(c.eval(&k, &m2).is_zero());
        assert!(!c.eval(&k, &k.one()).is_zero());
        let sf = c.squarefree_part(&k);
        assert_eq!(sf, KPoly::from_roots(&k, &[m1.clone(), m2.clone()]));
        let (q, r) = c.div_rem(&k, &KPoly::linear(&m2));
        assert!(r.is_zero());
        assert_eq!(q, KPoly::from_roots(&k, &[m1.clone(), m1]));
    }

    #[test]
    fn y_squared_plus_one() {
        let k = NumberField::from_i64(&[1, 0, 1]).unwrap();
        let c = KPoly::new(2, vec![k.one(), k.zero(), k.one()]);
        assert!(c.eval(&k, &k.theta()).is_zero());
        assert!(c.eval(&k, &-k.theta()).is_zero());
        assert_eq!(c.to_string(), "(1)*y^2 + (1)");
    }
}
