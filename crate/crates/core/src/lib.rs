#![allow(clippy::mutable_key_type)]

pub mod arith;
pub mod dynamics;
pub mod error;
pub mod escape;
pub mod fp;
pub mod harness;
pub mod nf;
pub mod places;
pub mod poly;
pub mod qscan;
pub mod reductions;

pub use error::{Error, Result};
