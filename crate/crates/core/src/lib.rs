//! Exact reducibility decisions for binomials `x^n - a` over Q and Z.
//!
//! - [`arith`]: gcds, factorization, exact roots, perfect powers.
//! - [`polyring`]: dense integer polynomials and cyclotomics.
//! - [`capelli`]: the decision procedure, witnesses and certificates.
//! - [`oracle`]: brute-force root-subset factorization used as ground truth.
//! - [`sweep`]: grid validation of the decision procedure against the oracle.

pub mod arith;
pub mod capelli;
pub mod oracle;
pub mod polyring;
pub mod sweep;

pub use capelli::{
    decide, decide_rational, factor_once, verify_certificate, Binomial, Certificate,
    CertificateDocument, Decision, Verdict, Witness,
};
pub use oracle::{oracle_decide, oracle_factor, OracleVerdict};
pub use polyring::IntPoly;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
