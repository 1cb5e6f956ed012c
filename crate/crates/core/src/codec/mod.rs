//! The code and its list decoder: encoding, Johnson-type parameters, the
//! constants `α` and `β`, weight selection, the decoding module, root
//! extraction and the end-to-end decoder.

mod code;
mod decode;
mod module;
mod params;
mod roots;

pub use code::{encode, johnson_params, CodeSpec, JohnsonParams, ReceivedWord};
pub use decode::{
    decode, Codeword, DecodeOptions, DecodeParams, DecodeReport, Strategy, DEFAULT_L_MAX, DEFAULT_MAX_LATTICE_DIM,
};
pub use module::{build_decoding_module, position_module};
pub use params::{
    alpha_constant, beta_constant, cauchy_schwarz_step, norm_weights, exceeds_threshold_exact, f_bound,
    f_bound_parts, guaranteed_threshold, integerize_weights, integerize_weights_with_gamma, ln_alpha, ln_beta,
    minkowski_count_lb, threshold_from_ln_f, FBound, WeightVector, DEFAULT_GAMMA,
};
pub use roots::{roots_hensel, roots_in_ball, roots_reference, RootFinder};
