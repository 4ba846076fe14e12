pub mod bits;
pub mod cli;
pub mod continuity;
pub mod doctrines;
pub mod duality;
pub mod error;
pub mod gelfand;
pub mod interval;
pub mod io;
pub mod order;
pub mod suite;
pub mod umodules;

pub use error::{Error, Result};
