//! Certified complex roots of a squarefree integer polynomial.
//!
//! Roots are located with Weierstrass (Durand–Kerner) iterations, first in
//! `f64` and then in big fixed-point arithmetic, and certified afterwards with
//! exact rational arithmetic: around each approximation `z` the disc of radius
//! `d·|f(z)/f′(z)|` contains a root, and pairwise disjoint discs therefore
//! isolate all `d` roots.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::real::sqrt_upper;

/// A disc `|ζ − (re + i·im)| ≤ radius` known to contain exactly one root.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexBall {
    pub re: BigRational,
    pub im: BigRational,
    pub radius: BigRational,
}

impl ComplexBall {
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

#[derive(Clone, Copy, Debug)]
struct C64(f64, f64);

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: C64) -> C64 {
        C64(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: C64) -> C64 {
        C64(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C64) -> C64 {
        let n = o.0 * o.0 + o.1 * o.1;
        C64((self.0 * o.0 + self.1 * o.1) / n, (self.1 * o.0 - self.0 * o.1) / n)
    }
}

fn seeds_f64(f: &[BigInt]) -> Vec<C64> {
    let d = f.len() - 1;
    let coeffs: Vec<f64> = f.iter().map(|c| c.to_f64().unwrap()).collect();
    let bound = 1.0 + coeffs[..d].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let eval = |z: C64| coeffs.iter().rev().fold(C64(0.0, 0.0), |acc, &c| acc.mul(z).add(C64(c, 0.0)));
    let w = C64(0.4, 0.9);
    let mut z: Vec<C64> = (0..d)
        .scan(C64(bound.min(2.0), 0.0), |acc, _| {
            *acc = acc.mul(w);
            Some(*acc)
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let mut den = C64(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den = den.mul(z[i].sub(z[j]));
                }
            }
            let step = eval(z[i]).div(den);
            if step.0.is_finite() && step.1.is_finite() {
                z[i] = z[i].sub(step);
                moved = moved.max(step.0.abs() + step.1.abs());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Fixed-point complex number scaled by `2^bits`.
#[derive(Clone, Debug)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

fn fx_mul(a: &Fx, b: &Fx, bits: u64) -> Fx {
    Fx {
        re: (&a.re * &b.re - &a.im * &b.im) >> bits,
        im: (&a.re * &b.im + &a.im * &b.re) >> bits,
    }
}

fn fx_div(a: &Fx, b: &Fx, bits: u64) -> Option<Fx> {
    let n = (&b.re * &b.re + &b.im * &b.im) >> bits;
    if n.is_zero() {
        return None;
    }
    let re = (&a.re * &b.re + &a.im * &b.im) >> bits;
    let im = (&a.im * &b.re - &a.re * &b.im) >> bits;
    Some(Fx { re: (re << bits) / &n, im: (im << bits) / &n })
}

fn refine_fixed(f: &[BigInt], seeds: &[C64], bits: u64) -> Vec<Fx> {
    let d = seeds.len();
    let scale = 2f64.powi(50);
    let mut z: Vec<Fx> = seeds
        .iter()
        .map(|s| Fx {
            re: BigInt::from((s.0 * scale).round() as i128) << (bits - 50),
            im: BigInt::from((s.1 * scale).round() as i128) << (bits - 50),
        })
        .collect();
    let one = BigInt::one() << bits;
    let iterations = 8 + (bits as f64 / 40.0).log2().ceil() as usize;
    for _ in 0..iterations {
        for i in 0..d {
            let mut val = Fx { re: BigInt::zero(), im: BigInt::zero() };
            for c in f.iter().rev() {
                val = fx_mul(&val, &z[i], bits);
                val.re += c << bits;
            }
            let mut den = Fx { re: one.clone(), im: BigInt::zero() };
            for j in 0..d {
                if i != j {
                    let diff = Fx { re: &z[i].re - &z[j].re, im: &z[i].im - &z[j].im };
                    den = fx_mul(&den, &diff, bits);
                }
            }
            if let Some(step) = fx_div(&val, &den, bits) {
                z[i].re -= step.re;
                z[i].im -= step.im;
            }
        }
    }
    z
}

type Gauss = (BigRational, BigRational);

fn gmul(a: &Gauss, b: &Gauss) -> Gauss {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn abs_sq(a: &Gauss) -> BigRational {
    &a.0 * &a.0 + &a.1 * &a.1
}

fn eval_exact(f: &[BigInt], z: &Gauss) -> (Gauss, Gauss) {
    let mut v: Gauss = (BigRational::zero(), BigRational::zero());
    let mut dv: Gauss = (BigRational::zero(), BigRational::zero());
    for c in f.iter().rev() {
        dv = gmul(&dv, z);
        dv.0 += &v.0;
        dv.1 += &v.1;
        v = gmul(&v, z);
        v.0 += BigRational::from_integer(c.clone());
    }
    (v, dv)
}

fn certify(f: &[BigInt], centers: &[Gauss], bits: u32) -> Option<Vec<ComplexBall>> {
    let d = BigRational::from_integer((f.len() - 1).into());
    let mut balls = Vec::with_capacity(centers.len());
    for z in centers {
        let (v, dv) = eval_exact(f, z);
        let den = abs_sq(&dv);
        if den.is_zero() {
            return None;
        }
        let ratio = sqrt_upper(&(abs_sq(&v) / den), bits + 16);
        balls.push(ComplexBall { re: z.0.clone(), im: z.1.clone(), radius: &d * ratio });
    }
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            let dist = abs_sq(&(&balls[i].re - &balls[j].re, &balls[i].im - &balls[j].im));
            let r = &balls[i].radius + &balls[j].radius;
            if dist <= &r * &r {
                return None;
            }
        }
    }
    Some(balls)
}

/// Isolating discs for the roots of the monic squarefree `f`, ordered with the
/// `r1` real roots first (ascending) followed by conjugate pairs
/// (`im > 0` member first). Precision starts at `min_bits` and doubles until
/// certification succeeds.
pub(crate) fn certified_roots(f: &[BigInt], r1: usize, min_bits: u32) -> (Vec<ComplexBall>, u32) {
    let seeds = seeds_f64(f);
    let mut bits = min_bits.max(64);
    loop {
        let fx = refine_fixed(f, &seeds, bits as u64);
        let den = BigInt::one() << bits;
        let mut approx: Vec<Gauss> = fx
            .into_iter()
            .map(|z| (BigRational::new(z.re, den.clone()), BigRational::new(z.im, den.clone())))
            .collect();
        approx.sort_by_key(|a| a.1.abs());
        let mut ordered: Vec<Gauss> = approx[..r1]
            .iter()
            .map(|z| (z.0.clone(), BigRational::zero()))
            .collect();
        ordered.sort_by(|a, b| a.0.cmp(&b.0));
        let mut complex: Vec<Gauss> = approx[r1..].iter().filter(|z| z.1.is_positive()).cloned().collect();
        complex.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        if 2 * complex.len() + r1 == f.len() - 1 {
            for z in complex {
                let c = (z.0.clone(), -z.1.clone());
                ordered.push(z);
                ordered.push(c);
            }
            if let Some(balls) = certify(f, &ordered, bits) {
                return (balls, bits);
            }
        }
        assert!(bits < 1 << 16, "root isolation failed; is the polynomial squarefree?");
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn gaussian_roots() {
        let (balls, _) = certified_roots(&p(&[1, 0, 1]), 0, 128);
        assert_eq!(balls.len(), 2);
        assert!(balls[0].im.is_positive());
        assert_eq!(balls[1].im, -balls[0].im.clone());
        let one = BigRational::one();
        assert!((&balls[0].im - &one).abs() <= balls[0].radius);
    }

    #[test]
    fn cube_root_of_two() {
        let (balls, _) = certified_roots(&p(&[-2, 0, 0, 1]), 1, 128);
        assert!(balls[0].is_real());
        let x = balls[0].re.to_f64().unwrap();
        assert!((x - 2f64.cbrt()).abs() < 1e-15);
        assert!(balls.iter().all(|b| b.radius < BigRational::new(1.into(), BigInt::one() << 100)));
    }
}
