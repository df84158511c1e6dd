pub mod batch;
pub mod cli;
pub mod detect;
pub mod error;
pub mod grid;
pub mod ingest;
pub mod moves;
pub mod oracle;
pub mod render;
pub mod search;
pub mod winding;

pub use error::{Error, Result};
