//! Standard bases over the local ring and the ideal operations built on them.

pub mod gcd;
pub mod ideal;
pub mod mora;

pub use gcd::{gcd2, gcd_part};
pub use ideal::{syzygies_of, Ideal};
pub use mora::{kernel, EngineConfig, KernelProblem, StandardBasis, DEFAULT_DEGREE_CAP};
