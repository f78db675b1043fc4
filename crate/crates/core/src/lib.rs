//! Normal categories and cross-connection data for the semigroup of singular order-preserving
//! self-maps of a finite chain.
//!
//! Maps act on the right: `f.compose(g)` applies `f` first. Chain points are `1..=n`.

pub mod category;
pub mod checks;
pub mod chain;
pub mod error;
pub mod ideal;
pub mod partition;
pub mod powerset;
pub mod semigroup;

pub use category::{Category, Cone, Functor, NormalFactorization};
pub use checks::{CheckOptions, CheckReport, Selector, Status};
pub use chain::{BlockMap, ChainSize, Green, OpMap, OrderedPartition, SubMap, Subset};
pub use error::{Error, Result};
pub use ideal::{LCategory, LMorphism, RCategory, RMorphism};
pub use partition::{PiCategory, PiMorphism};
pub use powerset::{PMorphism, PoCategory};
pub use semigroup::{ElementMap, FiniteSemigroup};
