//! Exact branching functions of untwisted affine Kac-Moody algebras.
//!
//! The graded multiplicity of `L_mu` inside `L_lambda1 (x) L_lambda2` is
//! computed by independent routes that must agree to the last coefficient:
//! a tensor-product peeling oracle, two alternating Weyl-group sums over
//! weight-space characters, and for `A1~1` two closed sums over the integers.
//!
//! ```
//! use branchkit::{branch, AffineAlgebra, BranchingQuery, Context, Method};
//!
//! let alg = AffineAlgebra::from_id("A1~1".parse().unwrap());
//! let ctx = Context::new(alg.clone());
//! let q = BranchingQuery::new(&alg, vec![1, 0], vec![1, 0], vec![2, 0], 6).unwrap();
//! let r = branch(&ctx, &q, Method::Bosonic1).unwrap();
//! assert_eq!(r.series.to_string(), "1 + q^2 + q^3 + 2q^4 + 2q^5 + 3q^6 + O(q^7)");
//! ```

pub mod bounds;
pub mod branching;
pub mod cache;
pub mod cartan;
pub mod characters;
pub mod context;
pub mod error;
pub mod qseries;
pub mod weyl;

pub use branching::{
    branch, branch_bosonic_fraction, branch_bosonic_product, branch_oracle, branch_sl2_closed, conformal_weight,
    coset_character, coset_offset, decompose, BranchingQuery, BranchingResult, Decomposition, Method, Sl2Coords,
    Sl2Form,
};
pub use cache::DiskCache;
pub use cartan::{AffineAlgebra, AlgebraId, CartanType, RootVec, Weight};
pub use characters::{
    character_identity_residual, string_function, weight_multiplicities, weight_space_character, MultTable,
    StringFunction,
};
pub use context::Context;
pub use error::{Error, Result};
pub use qseries::QSeries;
pub use weyl::{enumerate_weyl, ikm_to_weight, shifted_action, simple_reflection, weight_to_ikm, WeylElement};
