#![doc = include_str!("../../../book/src/introduction.md")]

use thiserror::Error;

pub mod rational;

#[doc = include_str!("../../../book/src/exact_linalg.md")]
pub mod linalg;

pub mod report;

#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebra;

#[doc = include_str!("../../../book/src/representations.md")]
pub mod rep;

#[doc = include_str!("../../../book/src/bialgebras.md")]
pub mod coalgebra;

#[doc = include_str!("../../../book/src/ybe.md")]
pub mod ybe;

#[doc = include_str!("../../../book/src/rota_baxter.md")]
pub mod rota_baxter;

#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions;

#[doc = include_str!("../../../book/src/graded.md")]
pub mod graded;

#[doc = include_str!("../../../book/src/cli.md")]
pub mod format;

pub mod catalog;

pub use algebra::{check_identities, Kind, Role, StructureAlgebra};
pub use rational::Rational;
pub use report::{IdentityReport, IdentityResult, Status};

#[derive(Debug, Error)]
pub enum ForgeError {
    #[error("input error: {0}")]
    Input(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular: {0}")]
    Singular(String),
    #[error("precondition {id} failed: {msg}")]
    Precondition { id: String, msg: String },
    #[error("kind mismatch: {0}")]
    Kind(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl ForgeError {
    pub fn input(msg: impl Into<String>) -> Self {
        ForgeError::Input(msg.into())
    }
}

/// Builds the worker pool size from `FORGE_THREADS` when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("FORGE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
