pub mod error;
pub mod exactalg;
pub mod grothendieck;
pub mod json;
pub mod operad;
pub mod symfun;
pub mod tamari;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
