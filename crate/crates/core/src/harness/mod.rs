//! Everything needed to exercise the codec: file formats, a seeded channel,
//! an exhaustive oracle decoder, experiment runs and the acceptance suite.

pub mod acceptance;
mod channel;
mod experiment;
mod formats;
mod oracle;

pub use channel::{corrupt, corrupt_with, random_message, rng_from_seed, MessageSampler, PRNG_ID};
pub use experiment::{
    check_against_oracle, run_experiment, Aggregate, ExperimentConfig, ExperimentReport, MessageSource, OracleCheck,
    TrialRecord,
};
pub use formats::{parse_message, CodeFile, PrimeEntry};
pub use oracle::{oracle_decode, Oracle, OracleHit};
