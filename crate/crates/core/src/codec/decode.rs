use log::{info, warn};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::params::{
    norm_weights, f_bound, guaranteed_threshold, integerize_weights_with_gamma, threshold_from_ln_f,
    DEFAULT_GAMMA,
};
use super::roots::{roots_in_ball, RootFinder};
use super::{build_decoding_module, CodeSpec, ReceivedWord};
use crate::error::{Error, Result};
use crate::nfcore::FieldElement;
use crate::okmod::{short_poly, KPoly, PseudoMatrix};
use crate::real::{f64_up, ln_rational};

pub const DEFAULT_L_MAX: usize = 8;

/// Lattice dimension `d·(l+1)` above which decoding is refused.
pub const DEFAULT_MAX_LATTICE_DIM: usize = 64;

/// How weights `z*` and the degree `l` are chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Strategy {
    /// Weights from the prime norms, integerized; the lattice dimension is usually in
    /// the hundreds, so this is bounded by `max_lattice_dim`.
    Paper,
    /// `z* = (1, …, 1)` and the `l ≤ l_max` with the smallest predicted threshold.
    Practical { l_max: usize },
    Explicit { z_star: Vec<u64>, l: usize },
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Paper => "paper",
            Strategy::Practical { .. } => "practical",
            Strategy::Explicit { .. } => "explicit",
        }
    }
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy::Practical { l_max: DEFAULT_L_MAX }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecodeOptions {
    pub epsilon: f64,
    pub gamma: f64,
    pub strategy: Strategy,
    pub root_finder: RootFinder,
    pub max_lattice_dim: usize,
}

impl Default for DecodeOptions {
    fn default() -> Self {
        Self {
            epsilon: 1.0,
            gamma: DEFAULT_GAMMA,
            strategy: Strategy::default(),
            root_finder: RootFinder::default(),
            max_lattice_dim: DEFAULT_MAX_LATTICE_DIM,
        }
    }
}

/// A decoded message with its agreement with the received word.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Codeword {
    pub message: FieldElement,
    /// `Σ aᵢ·z*ᵢ·ln 𝒩(𝔭ᵢ)`.
    pub agreement: f64,
    /// Number of agreeing positions.
    pub matches: usize,
    /// Whether the agreement is strictly above the guaranteed threshold.
    pub guaranteed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecodeParams {
    pub strategy: String,
    pub l: usize,
    pub a: Option<u64>,
    pub gamma: f64,
    pub epsilon: f64,
    pub z_star: Vec<u64>,
    /// Threshold predicted from the a-priori bound `F`.
    pub predicted_threshold: f64,
    pub ln_f_prime: f64,
}

#[derive(Clone, Debug)]
pub struct DecodeReport {
    pub c: KPoly,
    pub f_actual: BigRational,
    pub guaranteed_threshold: f64,
    pub codewords: Vec<Codeword>,
    pub params: DecodeParams,
    /// The module `M ∩ ∏ Jᵢ^{z*ᵢ}` that `c` was drawn from.
    pub module: PseudoMatrix,
}

impl DecodeReport {
    pub fn messages(&self) -> Vec<FieldElement> {
        self.codewords.iter().map(|c| c.message.clone()).collect()
    }

    pub fn f_actual_upper(&self) -> f64 {
        f64_up(&self.f_actual)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "c": self.c.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "f_actual": self.f_actual_upper(),
            "ln_f_actual": ln_rational(&self.f_actual),
            "guaranteed_threshold": self.guaranteed_threshold,
            "codewords": self.codewords.iter().map(|c| json!({
                "message": c.message.to_string(),
                "coords": c.message.coords().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "agreement": c.agreement,
                "matches": c.matches,
                "guaranteed": c.guaranteed,
            })).collect::<Vec<_>>(),
            "params": self.params,
        })
    }
}

struct Selection {
    z_star: Vec<u64>,
    l: usize,
    a: Option<u64>,
}

fn select(code: &CodeSpec, opts: &DecodeOptions) -> Result<Selection> {
    let d = code.field().degree();
    let sel = match &opts.strategy {
        Strategy::Paper => {
            let (z, holds) = norm_weights(code);
            if !holds {
                info!("ln N(p_(k+1)) ≥ max(2dk·ln N(p_k), 2d²) fails for this code");
            }
            let w = integerize_weights_with_gamma(&z, code, opts.epsilon, opts.gamma)?;
            Selection { z_star: w.z_star.unwrap(), l: w.l.unwrap(), a: w.a }
        }
        Strategy::Practical { l_max } => {
            if *l_max == 0 {
                return Err(Error::InvalidWeights("l_max must be at least 1".into()));
            }
            let z = vec![1u64; code.n()];
            let mut best = (f64::INFINITY, 1);
            for l in 1..=*l_max {
                let t = threshold_from_ln_f(f_bound(code, &z, l, opts.gamma)?.ln_f, d);
                if t < best.0 {
                    best = (t, l);
                }
            }
            Selection { z_star: z, l: best.1, a: None }
        }
        Strategy::Explicit { z_star, l } => {
            if z_star.len() != code.n() {
                return Err(Error::InvalidWeights(format!("expected {} weights, got {}", code.n(), z_star.len())));
            }
            if *l == 0 {
                return Err(Error::InvalidWeights("l must be at least 1".into()));
            }
            Selection { z_star: z_star.clone(), l: *l, a: None }
        }
    };
    if sel.z_star.iter().all(|&z| z == 0) {
        return Err(Error::DegenerateCode("all weights are zero".into()));
    }
    let dim = d * (sel.l + 1);
    if dim > opts.max_lattice_dim {
        return Err(Error::TooLarge { dim, limit: opts.max_lattice_dim });
    }
    Ok(sel)
}

/// List-decodes `word`: every message `m` with `‖m‖ ≤ B` whose weighted
/// agreement `Σ aᵢ·z*ᵢ·ln 𝒩(𝔭ᵢ)` exceeds the reported threshold is returned.
pub fn decode(word: &ReceivedWord, code: &CodeSpec, opts: &DecodeOptions) -> Result<DecodeReport> {
    word.validate(code)?;
    let k = code.field();
    let d = k.degree();
    let sel = select(code, opts)?;
    let fb = f_bound(code, &sel.z_star, sel.l, opts.gamma)?;
    let module = build_decoding_module(word, &sel.z_star, sel.l, code)?;
    let sp = short_poly(k, &module, code.b(), sel.l)?;
    let threshold = guaranteed_threshold(&sp.f_actual, d);
    if ln_rational(&sp.f_actual) > fb.ln_f_prime {
        warn!("F_actual exceeds the a-priori bound F′");
    }
    let ln = code.ln_norms();
    let mut codewords = Vec::new();
    for m in roots_in_ball(k, &sp.c, code.b(), opts.root_finder)? {
        let agree = code.agreements(&m, word)?;
        let agreement: f64 =
            agree.iter().zip(&sel.z_star).zip(&ln).filter(|((a, _), _)| **a).map(|((_, z), l)| *z as f64 * l).sum();
        codewords.push(Codeword {
            message: m,
            agreement,
            matches: agree.iter().filter(|a| **a).count(),
            guaranteed: agreement > threshold,
        });
    }
    codewords.sort_by(|a, b| {
        b.agreement.total_cmp(&a.agreement).then_with(|| a.message.coords().cmp(b.message.coords()))
    });
    Ok(DecodeReport {
        c: sp.c,
        f_actual: sp.f_actual,
        guaranteed_threshold: threshold,
        codewords,
        params: DecodeParams {
            strategy: opts.strategy.name().into(),
            l: sel.l,
            a: sel.a,
            gamma: opts.gamma,
            epsilon: opts.epsilon,
            z_star: sel.z_star,
            predicted_threshold: threshold_from_ln_f(fb.ln_f, d),
            ln_f_prime: fb.ln_f_prime,
        },
        module,
    })
}
