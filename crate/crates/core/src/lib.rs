//! Dynamic parameterized algorithms.
//!
//! Each module keeps a mutable instance (graph, set family or point set) and
//! answers parameterized queries without recomputing from scratch.

pub mod branchtree;
pub mod colorcoded;
pub mod dynconn;
pub mod fvs;
pub mod graphcore;
pub mod harness;
pub mod hskernel;
pub mod linkcut;
pub mod mlst;
pub mod oracle;
pub mod promisekernels;
pub mod vckernel;
