//! Vector-valued Laurent polynomials, Dunkl and Cherednik–Dunkl operators, and
//! nonsymmetric Jack polynomials.

mod laurent;
mod nsjp;
mod operators;

pub use laurent::{CVec, LaurentVPoly, TermOut};
pub use nsjp::{
    compositions, default_degree_cap, eigen_residual, labels_of_degree, leading_vector, nsjp, rank_function,
    spectral_vector, HomogeneousComponent, Label, NsjpBuilder, SpectralVector, COLLISION_TOL,
};
pub use operators::{cherednik_apply, divided_difference, dunkl_apply, transposition_apply};
