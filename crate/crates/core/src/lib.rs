//! Signature-based Gröbner bases through rewrite bases.
//!
//! The crate computes rewrite bases of submodules of monomial modules
//! (polynomial rings, free modules, monoid algebras) with several reductant
//! selection and signature scheduling strategies, certifies them
//! combinatorially, and checks them against an independent Buchberger
//! oracle and bounded linear-algebra tests.

pub mod coeff;
pub mod critical;
pub mod context;
pub mod element;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod monoid;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod problem;
pub mod sig;
pub mod verify;

pub use coeff::{Coeff, Field};
pub use context::Context;
pub use element::{full_normal_form, normal_form, top_reduce_step, Element, Reducer, Term};
pub use engine::{
    export_dot, faugere_certificate, rewrite_basis_at, run, run_with, validate_sigtree, Certificate, Limits,
    RunConfig, RunError, RunResult, Schedule, Stats, Strategy,
};
pub use error::{Error, Result};
pub use monoid::{CommonMultiples, MonoidSpec};
pub use monomial::{Exponents, Monomial};
pub use order::{Position, ScalarOrder, TermOrder};
pub use problem::{builtin, parse_problem, ProblemSpec, SigInit};
pub use parse::{parse_element, parse_monomial, parse_sigpair, parse_signature};
pub use sig::{
    classify_signature, dominates, find_regular_reducer, make_prebasis_shifted, make_prebasis_sum,
    make_prebasis_unshifted, regular_normal_form, SigClass, SigOrder, SigPair, SigSet, Signature,
};
