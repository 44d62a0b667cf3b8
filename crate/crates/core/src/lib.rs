//! Galois ring arithmetic and the quantum Fourier transform over `GR(p^s, p^{sm})`.

pub mod cli;
pub mod crt;
pub mod discriminant;
pub mod error;
pub mod galois_ring;
pub mod hidden_linear;
pub mod qft;
pub mod verify;

pub use error::{Error, Result};
