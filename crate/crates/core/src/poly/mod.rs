//! Exact polynomial arithmetic: univariate, bivariate, binary forms,
//! homogeneous ternary forms, parsing, and complex root isolation.

pub mod bi;
pub mod binary;
pub mod hom;
pub mod parse;
pub mod roots;
pub mod uni;

pub use bi::{discriminant_x, resultant_x, BiPoly};
pub use binary::{binary_factor_profile, BinaryForm, FactorProfile};
pub use hom::HomPoly;
pub use parse::{parse_hompoly, parse_point};
pub use roots::{aberth, complex_roots, squarefree_roots, PRECISION_LADDER, SEPARATION_TOL};
pub use uni::UniPoly;
