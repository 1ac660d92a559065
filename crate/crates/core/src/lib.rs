//! Exact computation of pretropisms of a tuple of Newton polytopes.

pub mod cone;
mod dd;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod polytope;
pub mod stats;
pub mod systems;

pub use cone::{Cone, ConeKey};
pub use engine::{find_pretropisms, Options, PretropismResult};
pub use error::{GeometryError, LinalgError, ParseError, SystemError};
pub use linalg::{IntVector, RatMatrix};
pub use polytope::Polytope;
pub use stats::{LevelStats, OpCounts, Stats};
pub use systems::SystemSpec;
