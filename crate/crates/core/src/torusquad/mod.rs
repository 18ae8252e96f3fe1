//! Trapezoid quadrature on the torus: pairings, Gram matrices, and Fourier coefficients of `K`.

mod fourier;
mod grid;
mod pairing;

pub use fourier::{
    constant_solution_residual, fcrec_residual, FCREC_FLOOR, fcrec_terms, zero_sum_labels, Coefficient, FcrecLine, FourierK,
    FourierTable,
};
pub use grid::{KField, QuadratureGrid};
pub use pairing::{error_exponent, gram_labels, gram_matrix, gram_on_field, GramReport, Quadrature, TwoGrid};
