pub mod error;
pub mod lattice;
pub mod maps;
pub mod maps2;
pub mod maps3;
pub mod matrix;
pub mod refactor;
pub mod sklyanin;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{c, re, CMatrix, C64};
