//! Exact and numerical toolkit for Galois points of plane curves.
//!
//! The crate analyzes smooth and mildly singular plane curves over the
//! rationals: it finds singular loci and flexes exactly, computes dual
//! curves, detects extendable Galois points via standard forms, and
//! certifies the monodromy groups of point projections numerically with
//! exact branch-point data. Group-theoretic classification of the results
//! (cyclic, dihedral, `Z/p x D_2p`, ...) closes the loop with the
//! structure theorems the pipeline is designed to check.

pub mod bigfloat;
pub mod error;
pub mod ext;
pub mod linalg;
pub mod monodromy;
pub mod curve;
pub mod galois;
pub mod permgroup;
pub mod poly;

pub use error::{Error, Result};
pub use ext::Ext;
pub use galois::{
    CubicVerification, DualGaloisPrediction, GaloisKind, GaloisPointReport, IntermediateMap,
    OrderBounds, StandardFormCertificate, StructureTag, VerifiedDualPoint,
};
pub use linalg::Mat3;
pub use curve::dual::DualCurve;
pub use curve::{PlaneCurve, ProjectivePoint};
pub use monodromy::{FiberSystem, MonodromyCertificate, MonodromyOptions};
pub use permgroup::{GroupClass, PermGroup, Permutation};
pub use poly::{BinaryForm, BiPoly, FactorProfile, HomPoly, UniPoly};
