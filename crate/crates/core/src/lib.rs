//! Capacity upper bounds for the Gaussian primitive relay channel, and
//! numerical verification of the inequalities behind them.
//!
//! A primitive relay channel has a source broadcasting to a relay
//! (`snr1 = P/N1`) and a destination (`snr2 = P/N2`), with the relay
//! forwarding over a noiseless digital link of rate `r0` bits/channel-use.
//! This crate evaluates, entirely in bits:
//!
//! * the classical cut-set bound and two tighter bounds ([`bounds`]),
//! * the gap between them, its supremum `≈ 0.0535` at infinite symmetric
//!   SNR with `r0 = 0.5`, and the resulting per-node pre-constant for
//!   relay-network approximation guarantees ([`gap`]),
//! * the Gaussian blow-up inequality used in the converse argument, exactly
//!   for half-spaces and by Monte Carlo for other sets ([`concentration`]),
//! * the mutual-information inequality behind the excess-rate term, at one
//!   channel use with a sign-quantizer relay ([`mi_verify`]).
//!
//! All public functions are pure (Monte Carlo takes its seed explicitly)
//! and safe to call concurrently; nothing in the crate holds shared state.

pub mod bounds;
pub mod concentration;
pub mod error;
pub mod gap;
pub mod mi_verify;
pub mod numerics;

pub use bounds::{
    cutset_bound, prop5_bound, solve_astar, theorem1_bound, ActiveConstraint, BoundResult,
    ChannelParams, ConstraintSet,
};
pub use concentration::{
    halfspace_check, monte_carlo_check, CheckMethod, ConcentrationCheck, ConcentrationParams,
    SetDescriptor, Verdict,
};
pub use error::{Error, Result};
pub use gap::{
    gap, gap_astar_closed_form, max_gap_search, network_gap_lower_bound, GapReport, GapSupremum,
    GapVariant, GridSpec,
};
pub use mi_verify::{
    evaluate_quantizer_relay, sweep_quantizer_grid, MIReport, QuantizerRelay,
};
pub use numerics::{
    binary_entropy, bisect, gaussian_cdf, gaussian_cdf_inv, integrate, ExtReal, SolverConfig,
};
