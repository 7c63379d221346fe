//! Finite presemifields built by projection from compatible products.

pub mod bilinear;
pub mod exec;
pub mod families;
pub mod field;
pub mod linalg;
pub mod semifield;
pub mod theory;
pub mod tower;
