//! The bundled example quivers.

use crate::quiver::BoundQuiver;

pub const QUIVER_A: &str = include_str!("../fixtures/quiverA.bq");
pub const QUIVER_B: &str = include_str!("../fixtures/quiverB.bq");
pub const KRONECKER: &str = include_str!("../fixtures/kronecker.bq");

fn load(text: &str) -> BoundQuiver {
    crate::parse_bound_quiver(text).expect("bundled fixture parses")
}

/// First quiver of the pair with equal Hochschild cohomology but different `φ`.
pub fn quiver_a() -> BoundQuiver {
    load(QUIVER_A)
}

/// Second quiver of that pair.
pub fn quiver_b() -> BoundQuiver {
    load(QUIVER_B)
}

pub fn kronecker() -> BoundQuiver {
    load(KRONECKER)
}
