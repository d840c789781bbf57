//! Polynomial-method engine: the multilinear polynomials `p_{F,L}`, exact
//! coefficient matrices and independence certificates.

mod certificate;
mod matrix;
mod poly;

pub use certificate::{
    certify_independent, certify_with_one, non_increasing_order, span_intersection_dim,
    triangular_certificate, Certificate, CertificateMode, Diagnostics, TriangularViolation,
    Verdict,
};
pub use matrix::{clear_denominators, coefficient_matrix, rank_exact, rank_rational, Matrix};
pub use poly::{
    build_polynomial, build_raw_polynomial, monomial_space_dimension, multilinearize, LinearForm,
    MonomialSpace, MultilinearPoly, Polynomial, ProductForm,
};
