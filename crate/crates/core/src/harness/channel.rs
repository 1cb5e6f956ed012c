use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::{CodeSpec, ReceivedWord};
use crate::error::{Error, Result};
use crate::nfcore::FieldElement;

/// Generator recorded in every report.
pub const PRNG_ID: &str = "ChaCha8Rng (rand_chacha 0.9, seed_from_u64)";

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform sampler over the enumerated message ball `{m : ‖m‖ ≤ B}`.
#[derive(Clone, Debug)]
pub struct MessageSampler {
    ball: Vec<FieldElement>,
}

impl MessageSampler {
    pub fn new(code: &CodeSpec) -> Result<Self> {
        let ball = code.message_ball();
        if ball.is_empty() {
            return Err(Error::EmptyBall(code.b().to_string()));
        }
        Ok(Self { ball })
    }

    pub fn ball(&self) -> &[FieldElement] {
        &self.ball
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> FieldElement {
        self.ball[rng.random_range(0..self.ball.len())].clone()
    }
}

pub fn random_message(code: &CodeSpec, seed: u64) -> Result<FieldElement> {
    Ok(MessageSampler::new(code)?.sample(&mut rng_from_seed(seed)))
}

/// Replaces exactly `e` distinct positions by a different uniform residue.
pub fn corrupt(word: &ReceivedWord, code: &CodeSpec, e: usize, seed: u64) -> Result<ReceivedWord> {
    corrupt_with(word, code, e, &mut rng_from_seed(seed))
}

pub fn corrupt_with<R: Rng>(word: &ReceivedWord, code: &CodeSpec, e: usize, rng: &mut R) -> Result<ReceivedWord> {
    word.validate(code)?;
    let n = code.n();
    if e > n {
        return Err(Error::TooManyErrors { errors: e, n });
    }
    let mut out = word.clone();
    let mut positions = index::sample(rng, n, e).into_vec();
    positions.sort_unstable();
    for i in positions {
        let p = code.primes()[i].p;
        out.residues[i] = (word.residues[i] + 1 + rng.random_range(0..p - 1)) % p;
    }
    Ok(out)
}
