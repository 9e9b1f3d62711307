//! Exact arithmetic for simplicial toric varieties in Cox coordinates:
//! finite fields, fans and their multigradings, multigraded polynomials,
//! exhaustive point counting with congruence checks, type-IV quintic
//! instances, and the graded Chow-ring certificate over `k(T)`.

pub mod chow;
pub mod count;
pub mod fan;
pub mod ff;
pub mod parallel;
pub mod poly;
pub mod quintic;

pub use fan::{Builtin, ExceptionalSet, Fan, FanError, GradingData, ToricModel};
pub use ff::{FieldElement, FieldError, FieldSpec};
pub use poly::{Coeff, Domain, MultiDegree, MultiPoly, PolyError};
