//! Quantum convolutional and tail-biting stabilizer codes, handled through their
//! classical label codes over F2 and F4.

pub mod error;
pub mod fields;
pub mod linalg;
pub mod polyring;
pub mod convcode;
pub mod distance;
pub mod blockcode;
pub mod decode;
pub mod search;
pub mod tables;
pub mod sim;
pub mod codespec;

pub use error::{Error, Result};
pub use fields::{Field, Pauli, F4};
