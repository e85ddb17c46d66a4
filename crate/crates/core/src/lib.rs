//! Exact-rational generation and checking of kappa-class relations on M_g.

pub mod classical;
pub mod cli;
pub mod equiv;
pub mod error;
pub mod foundations;
pub mod fzrel;
pub mod ionel;
pub mod kappa;
pub mod linalg;
pub mod pairing;
pub mod relation;
pub mod series;
pub mod sqrel;
pub mod suite;

pub use error::{Error, Result};
pub use foundations::{Partition, Q};
pub use kappa::KappaPoly;
pub use relation::{Family, Outcome, Relation};
pub use series::{FormalSeries, Space, Var};
