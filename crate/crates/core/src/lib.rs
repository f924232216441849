//! Minimal free resolutions over local rings `F_p[x_1..x_e]_(x) / I`, Koszul
//! homology, Golod Betti series and decomposability of syzygies of the maximal
//! ideal in embedding dimension two.

pub mod artinian;
pub mod corpus;
pub mod edim2;
pub mod error;
pub mod field;
pub mod koszul;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod quotient;
pub mod resolver;
pub mod session;
pub mod stdbasis;
pub mod vector;

pub use artinian::{ArtinianAlgebra, FlModule, IsoVerdict};
pub use error::{Error, Result};
pub use field::{Fp, PrimeField, DEFAULT_PRIME};
pub use matrix::{MatrixFp, Preimage, Subspace};
pub use monomial::Monomial;
pub use poly::{Order, Poly, PolyRing};
pub use quotient::{Classification, QuotientRing, RingKind};
pub use resolver::{ModuleKind, Resolution, Resolver, SubmoduleR};
pub use session::{parse_session, parse_session_over, NamedIdeal, SessionSpec};
pub use stdbasis::{EngineConfig, Ideal, StandardBasis};
pub use vector::Vector;
