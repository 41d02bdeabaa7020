//! Document parsing and command dispatch behind the `zhangtwist` binary.

pub mod parse;
pub mod run;
