//! Executable constructions from the metric geometry of nonnegatively curved
//! surfaces: convex bodies in R³, intrinsic metrics on their boundaries and
//! doubles, explicit Gromov–Hausdorff correspondences, and coordinates on the
//! moduli of two-dimensional RCD(0,N) structures.

pub mod approx;
pub mod classify;
pub mod convex;
pub mod error;
pub mod gh;
pub mod intrinsic;
pub mod io;
pub mod moduli;

pub use convex::{ConvexBody, Direction, Mat3, Subspace, Vec3};
pub use error::{Error, Result};
