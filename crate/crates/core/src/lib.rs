pub mod error;
pub mod catalog;
pub mod families;
pub mod exactq;
pub mod hilbert;
pub mod reducibility;
pub mod scan;
pub mod structure;

pub use error::{Error, Result};
pub use exactq::{Rational, UniPoly};
pub use hilbert::{H0Vector, HilbertPolynomial};
