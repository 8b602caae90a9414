#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod category;
pub mod error;
pub mod free;
pub mod genmult;
pub mod opetopes;
pub mod perm;
pub mod report;
pub mod slice;
pub mod symmult;
pub mod tree;
pub mod value;
pub mod xi;

pub use error::{Error, Result};
pub use perm::Permutation;
