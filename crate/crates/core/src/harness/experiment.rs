use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::channel::{corrupt_with, rng_from_seed, MessageSampler, PRNG_ID};
use super::formats::{parse_message, CodeFile};
use super::oracle::Oracle;
use crate::codec::RootFinder;
use crate::codec::{decode, encode, CodeSpec, DecodeOptions, DecodeReport, ReceivedWord, Strategy};
use crate::error::{Error, Result};
use crate::nfcore::FieldElement;
use crate::real::ln_rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MessageSource {
    Explicit { message: String },
    Random { seed: u64 },
}

fn default_epsilon() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub code: CodeFile,
    pub message_source: MessageSource,
    pub error_count: usize,
    pub trials: usize,
    #[serde(default)]
    pub strategy: Strategy,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub root_finder: RootFinder,
    /// Seed of the corruption stream.
    #[serde(default)]
    pub channel_seed: u64,
    /// Wall times make the report non-reproducible, so they are opt-in.
    #[serde(default)]
    pub record_timing: bool,
}

impl ExperimentConfig {
    pub fn validate(&self, code: &CodeSpec) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidWeights("trials must be at least 1".into()));
        }
        if self.error_count > code.n() {
            return Err(Error::TooManyErrors { errors: self.error_count, n: code.n() });
        }
        Ok(())
    }

    pub fn decode_options(&self) -> DecodeOptions {
        DecodeOptions {
            epsilon: self.epsilon,
            strategy: self.strategy.clone(),
            root_finder: self.root_finder,
            ..DecodeOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub message: String,
    pub received: Vec<u64>,
    pub l: usize,
    pub f_actual: f64,
    pub ln_f_actual: f64,
    pub threshold: f64,
    pub message_agreement: f64,
    /// The oracle places the message strictly above the threshold.
    pub message_required: bool,
    pub message_recovered: bool,
    pub success: bool,
    pub list_size: usize,
    pub guaranteed_list_size: usize,
    pub oracle_list_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub trials: usize,
    pub successes: usize,
    pub required: usize,
    pub recovered: usize,
    pub violations: usize,
    pub max_list_size: usize,
    pub mean_list_size: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub prng: String,
    pub config: ExperimentConfig,
    pub trials: Vec<TrialRecord>,
    pub aggregate: Aggregate,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Outcome of comparing the decoder with the oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleCheck {
    pub oracle_list_size: usize,
    pub violation: Option<String>,
}

/// Compares decoder output with the oracle at the decoder's guaranteed
/// threshold: the oracle set must be contained in the output and equal to
/// the output filtered at that threshold.
pub fn check_against_oracle(report: &DecodeReport, oracle: &Oracle, word: &ReceivedWord) -> Result<OracleCheck> {
    let z: Vec<f64> = report.params.z_star.iter().map(|&z| z as f64).collect();
    let t = report.guaranteed_threshold;
    let hits = oracle.decode(word, &z, t)?;
    let expected: BTreeSet<Vec<String>> = hits.iter().map(|h| key(&h.message)).collect();
    let got: BTreeSet<Vec<String>> =
        report.codewords.iter().filter(|c| c.agreement > t).map(|c| key(&c.message)).collect();
    let output: BTreeSet<Vec<String>> = report.codewords.iter().map(|c| key(&c.message)).collect();
    let violation = if let Some(missing) = expected.iter().find(|m| !output.contains(*m)) {
        Some(format!("message {missing:?} above the threshold is missing from the output"))
    } else if expected != got {
        Some(format!("filtered output {got:?} differs from oracle {expected:?}"))
    } else {
        None
    };
    Ok(OracleCheck { oracle_list_size: hits.len(), violation })
}

fn key(m: &FieldElement) -> Vec<String> {
    m.coords().iter().map(|c| c.to_string()).chain(std::iter::once(m.denom().to_string())).collect()
}

/// Runs the configured trials. A completeness or oracle-equivalence
/// violation aborts with [`Error::ContractViolation`].
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let code = cfg.code.to_spec()?;
    cfg.validate(&code)?;
    let sampler = MessageSampler::new(&code)?;
    let oracle = Oracle::with_ball(&code, sampler.ball().to_vec());
    let opts = cfg.decode_options();
    let explicit = match &cfg.message_source {
        MessageSource::Explicit { message } => Some(parse_message(code.field(), message)?),
        MessageSource::Random { .. } => None,
    };
    let mut msg_rng = rng_from_seed(match cfg.message_source {
        MessageSource::Random { seed } => seed,
        MessageSource::Explicit { .. } => 0,
    });
    let mut chan_rng = rng_from_seed(cfg.channel_seed);
    let ln = code.ln_norms();
    let mut records = Vec::with_capacity(cfg.trials);
    for trial in 0..cfg.trials {
        let m = explicit.clone().unwrap_or_else(|| sampler.sample(&mut msg_rng));
        let clean = encode(&m, &code)?;
        let word = corrupt_with(&clean, &code, cfg.error_count, &mut chan_rng)?;
        let start = Instant::now();
        let report = decode(&word, &code, &opts)?;
        let wall = start.elapsed().as_secs_f64() * 1e3;
        let check = check_against_oracle(&report, &oracle, &word)?;
        if let Some(v) = check.violation {
            return Err(Error::ContractViolation(format!("trial {trial}: {v}")));
        }
        let message_agreement: f64 = (0..code.n())
            .filter(|&i| clean.residues[i] == word.residues[i])
            .map(|i| report.params.z_star[i] as f64 * ln[i])
            .sum();
        let required = message_agreement > report.guaranteed_threshold;
        let recovered = report.codewords.iter().any(|c| c.message == m);
        records.push(TrialRecord {
            trial,
            message: m.to_string(),
            received: word.residues.clone(),
            l: report.params.l,
            f_actual: report.f_actual_upper(),
            ln_f_actual: ln_rational(&report.f_actual),
            threshold: report.guaranteed_threshold,
            message_agreement,
            message_required: required,
            message_recovered: recovered,
            success: !required || recovered,
            list_size: report.codewords.len(),
            guaranteed_list_size: report.codewords.iter().filter(|c| c.guaranteed).count(),
            oracle_list_size: check.oracle_list_size,
            wall_ms: cfg.record_timing.then_some(wall),
        });
    }
    let n = records.len();
    let aggregate = Aggregate {
        trials: n,
        successes: records.iter().filter(|r| r.success).count(),
        required: records.iter().filter(|r| r.message_required).count(),
        recovered: records.iter().filter(|r| r.message_recovered).count(),
        violations: records.iter().filter(|r| !r.success).count(),
        max_list_size: records.iter().map(|r| r.list_size).max().unwrap_or(0),
        mean_list_size: records.iter().map(|r| r.list_size as f64).sum::<f64>() / n as f64,
    };
    if aggregate.violations > 0 {
        return Err(Error::ContractViolation(format!("{} trials missed a required message", aggregate.violations)));
    }
    Ok(ExperimentReport { prng: PRNG_ID.into(), config: cfg.clone(), trials: records, aggregate })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(e: usize, trials: usize) -> ExperimentConfig {
        ExperimentConfig {
            code: CodeFile::from_spec(&CodeSpec::gauss_6_2()).unwrap(),
            message_source: MessageSource::Random { seed: 11 },
            error_count: e,
            trials,
            strategy: Strategy::default(),
            epsilon: 1.0,
            root_finder: RootFinder::Hensel,
            channel_seed: 3,
            record_timing: false,
        }
    }

    #[test]
    fn clean_trials_all_succeed() {
        let r = run_experiment(&config(0, 5)).unwrap();
        assert_eq!(r.aggregate.successes, 5);
        assert_eq!(r.aggregate.recovered, 5);
        assert!(r.prng.starts_with("ChaCha8"));
    }

    #[test]
    fn all_positions_corrupted() {
        let r = run_experiment(&config(6, 3)).unwrap();
        assert_eq!(r.aggregate.violations, 0);
        assert!(r.trials.iter().all(|t| !t.message_required));
    }

    #[test]
    fn reports_are_reproducible() {
        let a = run_experiment(&config(1, 3)).unwrap().to_json();
        let b = run_experiment(&config(1, 3)).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn config_json_and_validation() {
        let raw = r#"{
            "code": {"poly": [1, 0, 1], "primes": [{"p": 5, "root": 2}, {"p": 13, "root": 5}, {"p": 17, "root": 4}], "k": 1},
            "message_source": {"kind": "explicit", "message": "1+t"},
            "error_count": 1,
            "trials": 2
        }"#;
        let cfg: ExperimentConfig = serde_json::from_str(raw).unwrap();
        assert_eq!(cfg.epsilon, 1.0);
        let r = run_experiment(&cfg).unwrap();
        assert!(r.trials.iter().all(|t| t.message == "1+t"));
        let mut bad = cfg.clone();
        bad.trials = 0;
        assert!(run_experiment(&bad).is_err());
        bad.trials = 1;
        bad.error_count = 4;
        assert!(matches!(run_experiment(&bad), Err(Error::TooManyErrors { .. })));
    }
}
