//! Exact verification of identities for classical orthogonal polynomials,
//! their Christoffel–Darboux kernels and kernel polynomials.
//!
//! All arithmetic is exact. Integrals are reported relative to the total mass
//! `h_0` of the orthogonality measure, which turns every identity checked here
//! into an equality of rationals.

pub mod basis;
pub mod cdkernel;
pub mod check;
pub mod error;
pub mod exactnum;
pub mod families;
pub mod hahn;
pub mod hyp;
pub mod poly;
pub mod suites;
pub mod symmetric;

pub use basis::{basis_expand, generate_ops, inner_product_n, Basis, BasisCoeffs};
pub use cdkernel::{cd_kernel, kernel_poly, KernelForm, KernelPolyResult};
pub use check::Equality;
pub use error::{Error, Result};
pub use exactnum::{parse_rational, pochhammer, rat, ratio, QuadExt, Rational, Scalar};
pub use families::{FamilyKind, FamilySpec, Measure, SpecialPoint, SpecialValues};
pub use hahn::{first_identity, FirstIdentityForm, HahnContext};
pub use hyp::{eval_truncated, HyperTerm, TruncatedSeries};
pub use poly::Poly;
pub use symmetric::{ps_closed_form, ps_integral, PsMethod, PsResult};
