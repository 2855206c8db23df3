//! Coordinates on the moduli of two-dimensional structures: concave densities
//! on the interval, flat quotients, and convex-body representatives.

mod bodies;
mod flat;
mod interval;

pub use bodies::{
    body_class_check, body_homotopy, o3_match_distance, BodyClass, BodyClassRep, ClassVerdict,
    DiscCase,
};
pub use flat::{
    flat_quotient_distance, flat_quotient_distance_with, lattice_reduce, structure_invariants,
    FlatKind, FlatStructure, LatticeBasis, StripQuotient, Vec2,
};
pub use interval::{
    cd_density_check, cstar_distance, cstar_quotient_distance, interval_contract, ConcaveDensity,
    DensityReport, CSTAR_TERMS, MIN_GRID,
};
