//! Exact transvection calculus in SL(n, K).
//!
//! The crate decomposes elements of SL(n, p) into words over a symmetric
//! generating set containing a transvection, decides whether a set of
//! transvection groups generates SL(V), Sp(V), or acts reducibly, and
//! ships the exact linear algebra, transvection-graph machinery, and
//! brute-force oracles those pipelines need. All arithmetic is exact:
//! prime-field residues or arbitrary-precision rationals.

pub mod error;
pub mod field;
pub mod linalg;
pub mod pipeline;
pub mod tgraph;
pub mod word;
pub mod transvection;

pub use error::{AlgebraError, GraphError, TvError};
pub use field::{Field, PrimeField, Rationals};
pub use linalg::{Covector, Matrix, Vector};
pub use transvection::{recognize, Recognized, Transvection, TransvectionGroup};

/// Concrete aliases over the prime-field scalar.
pub type FpMatrix = Matrix<PrimeField>;
pub type FpVector = Vector<PrimeField>;
pub type FpCovector = Covector<PrimeField>;
pub type FpTransvection = Transvection<PrimeField>;
pub type FpTransvectionGroup = TransvectionGroup<PrimeField>;

/// Concrete aliases over the rational scalar.
pub type RatMatrix = Matrix<Rationals>;
pub type RatVector = Vector<Rationals>;
pub type RatCovector = Covector<Rationals>;
pub type RatTransvection = Transvection<Rationals>;
pub type RatTransvectionGroup = TransvectionGroup<Rationals>;
