use log::warn;

use super::{CodeSpec, ReceivedWord};
use crate::error::{Error, Result};
use crate::ideals::FractionalIdeal;
use crate::okmod::{KPoly, PseudoMatrix};

/// Pseudo-basis of `J^z ∩ M` for one position: polynomials of degree `≤ l`
/// whose value at any `m ≡ r (mod 𝔭)` lies in `𝔭^z`.
pub fn position_module(code: &CodeSpec, i: usize, r: u64, z: u64, l: usize) -> PseudoMatrix {
    let k = code.field();
    let d = k.degree();
    let p = &code.primes()[i];
    let lin = KPoly::linear(&p.lift(k, r));
    let z = z as usize;
    let mut rows = Vec::with_capacity(l + 1);
    let mut power = KPoly::constant(k.one());
    for j in 0..=z.min(l) {
        rows.push((power.to_vector(l + 1), p.ideal.pow(k, (z - j) as i64)));
        if j < z.min(l) {
            power = power.mul(k, &lin);
        }
    }
    if z < l {
        // power = (y − r)^z here
        for j in 1..=l - z {
            rows.push((power.shift(j).to_vector(l + 1), FractionalIdeal::unit(d)));
        }
    }
    PseudoMatrix::new(l + 1, rows).expect("rows have width l + 1")
}

/// Pseudo-basis of `M ∩ ∏ᵢ Jᵢ^{z*ᵢ}`, `M` the polynomials of degree `≤ l`.
pub fn build_decoding_module(word: &ReceivedWord, z_star: &[u64], l: usize, code: &CodeSpec) -> Result<PseudoMatrix> {
    word.validate(code)?;
    if z_star.len() != code.n() {
        return Err(Error::InvalidWeights(format!("expected {} weights, got {}", code.n(), z_star.len())));
    }
    if l == 0 {
        return Err(Error::InvalidWeights("l must be at least 1".into()));
    }
    let k = code.field();
    let mut acc: Option<PseudoMatrix> = None;
    for (i, (&z, &r)) in z_star.iter().zip(&word.residues).enumerate() {
        if z == 0 {
            continue;
        }
        let m = position_module(code, i, r, z, l).pseudo_hnf(k);
        acc = Some(match acc {
            None => m,
            Some(a) => a.intersect(k, &m)?,
        });
    }
    Ok(acc.unwrap_or_else(|| {
        warn!("all weights are zero; the decoding module is every polynomial of degree ≤ {l}");
        PseudoMatrix::free(k.degree(), l + 1)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_position_module() {
        let code = CodeSpec::gauss_6_2();
        let k = code.field();
        let word = ReceivedWord::new(vec![2, 0, 0, 0, 0, 0]);
        let m = build_decoding_module(&word, &[1, 0, 0, 0, 0, 0], 1, &code).unwrap();
        let v = |a: i64, b: i64| vec![k.element(&[a]), k.element(&[b])];
        assert!(m.contains(k, &v(5, 0)).unwrap());
        assert!(m.contains(k, &v(-2, 1)).unwrap());
        assert!(!m.contains(k, &v(1, 0)).unwrap());
    }

    #[test]
    fn zero_weights_give_free_module() {
        let code = CodeSpec::gauss_6_2();
        let m = build_decoding_module(&ReceivedWord::new(vec![0; 6]), &[0; 6], 2, &code).unwrap();
        assert!(m.same_module(code.field(), &PseudoMatrix::free(2, 3)));
    }

    #[test]
    fn members_vanish_modulo_primes() {
        let code = CodeSpec::gauss_6_2();
        let k = code.field();
        let word = ReceivedWord::new(vec![1, 7, 3, 20, 5, 11]);
        let l = 3;
        let m = build_decoding_module(&word, &[1; 6], l, &code).unwrap();
        assert_eq!(m.len(), l + 1);
        for g in m.generators(k) {
            let c = KPoly::new(2, g);
            for (p, &r) in code.primes().iter().zip(&word.residues) {
                // m ≡ r (mod 𝔭): m = r + (p-multiple) + (θ − root)·s
                for s in 0..3i64 {
                    let m = &(&p.lift(k, r) + &k.mul(&(&k.theta() - &k.from_int(p.root)), &k.element(&[s, 1 - s])))
                        + &k.from_int(p.p * s as u64);
                    assert_eq!(p.residue(&m).unwrap(), r);
                    assert!(p.ideal.contains(&c.eval(k, &m)));
                }
            }
        }
    }

    #[test]
    fn higher_multiplicity_rows() {
        let code = CodeSpec::gauss_6_2();
        let k = code.field();
        let m = position_module(&code, 0, 2, 2, 3);
        assert_eq!(m.len(), 4);
        let sq = code.primes()[0].ideal.pow(k, 2);
        // (y − 2)² evaluated at 2 + 5 lies in 𝔭²
        let c = KPoly::new(2, m.rows()[2].0.clone());
        assert!(sq.contains(&c.eval(k, &k.element(&[7]))));
    }
}
