//! Cyclic complexity of automatic sequences, exact linear representations of
//! 2-regular sequences, DFAO extraction, and numeric verification of the
//! identities and bounds satisfied by the cyclic complexity of the
//! Thue-Morse word.

pub mod automata;
pub mod cyclic;
pub mod error;
pub mod linrep;
pub mod reference;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
