#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod numerics;
pub mod rotational;
pub mod surface;
pub mod weakholo;

pub use error::{LabError, Result};
