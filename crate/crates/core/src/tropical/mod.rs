//! Max-plus scalars, germ semifields, tropical polynomials and plane tropical curves.

mod generators;
mod germ;
mod hypersurface;
mod poly;
mod value;

pub use generators::{verify_rn_generators, verify_rn_generators_bounded, GeneratorReport, IdentityCheck, DEFAULT_BOUND};
pub use germ::{germ_ops, Germ};
pub use hypersurface::{hypersurface2, Window, MAX_TERMS};
pub use poly::{Degree, TropPoly};
pub use value::{trop_ops, TropValue};
