//! Index-2 quasi-cyclic codes over finite fields: canonical generators,
//! duals under the Euclidean, symplectic and Hermitian forms, distance
//! computation and the associated quantum stabilizer parameters.

pub mod code;
pub mod distance;
pub mod duality;
pub mod error;
pub mod factor;
pub mod gf;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod quantum;

pub use code::{CodeVector, OneGeneratorVerdict, Qc2Code};
pub use duality::FormKind;
pub use error::{Error, Result};
pub use gf::{Elem, Field};
pub use poly::{Poly, RingElem};
