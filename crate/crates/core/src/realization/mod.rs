//! Realizations of curves in ℚⁿ, weighted complexes, balancing, polynomial fitting
//! and transversal intersections in the plane.

mod balance;
mod complex;
mod fit;
mod geometry;
mod intersect;
mod plot;
mod realize;

pub use balance::{check_balanced, BalanceReport};
pub use complex::{CellRef, PolyComplex, Ray, Segment, Spoke};
pub use fit::{fit_tropical_polynomial, ingest_balanced, Ingested, MAX_FIT_CELLS};
pub use geometry::{intersect_cells, Cell, Meet};
pub use intersect::{bezout_check, intersect, Bezout, Crossing};
pub use plot::{to_csv, to_svg};
pub use realize::{harmonic_realization_check, realize, HarmonicReport, ImagePiece, RealizationMap, RealizationReport};
