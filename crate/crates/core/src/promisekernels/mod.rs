//! Promise-model kernels: edge clique cover and point line cover.

pub mod ecc;
pub mod plc;

pub use plc::Point;
