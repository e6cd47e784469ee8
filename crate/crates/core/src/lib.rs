pub mod bass;
pub mod cech;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod lyubeznik;
pub mod monomial;
pub mod reduction;
pub mod resolutions;
pub mod seqcm;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
