//! Rational functions on tropical curves: semifield operations, divisors,
//! chip firing, restriction and extension, gluing, and parallel-ray constraints.

mod chip;
mod divisor;
mod function;
mod glue_fn;
mod parallel;
mod profile;
mod restrict;

pub use chip::chip_fire;
pub use divisor::{div_of, is_harmonic_at, module_degree, rd_member, Divisor};
pub use function::{first_difference, PlFunction, Value};
pub use glue_fn::glue_function;
pub use parallel::{
    components_of, disconnect_witness, pseudo_tuple, respects_parallel, witness_conditions, ClassViolation,
    WitnessConditions, WitnessOutcome,
};
pub use profile::Profile;
pub use restrict::{extend, restrict, restrict_to};
