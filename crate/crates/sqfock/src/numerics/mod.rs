//! Special functions and deterministic integration primitives used by
//! every other module. All operations are pure functions of their inputs;
//! rules and grids are immutable after construction.

mod quadrature;
mod special;

pub use quadrature::{
    hermite_rule, Grid, QuadratureRule, RuleKind, MAX_ORDER, MIN_ORDER,
};
pub use special::{erf_eval, fock_mode, hermite_eval, hermite_eval_c, ln_factorial};

pub(crate) use special::{fock_mode_row, fock_mode_unchecked};
