pub mod cyclotomic;
pub mod error;
pub mod hyper;
pub mod lfunc;
pub mod padic;
pub mod precision;
pub mod series;
pub mod theorem1;

pub use error::{Error, Result};
pub use padic::Padic;
pub use precision::{Precision, TruncationCertificate, DEFAULT_GUARD_DIGITS};
