//! Groupoidification of spans of finite G-sets, degroupoidification to
//! matrices over the rationals, and Hecke algebra computations for flag
//! varieties over finite fields.

pub mod cli;
pub mod degroup;
pub mod error;
pub mod exactnum;
pub mod groupoids;
pub mod groups;
pub mod hecke;
pub mod presheaves;
pub mod random;
pub mod spans;

pub use error::{Error, Result};
