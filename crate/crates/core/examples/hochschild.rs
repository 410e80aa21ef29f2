//! Hochschild cohomology dimensions from the AG-invariant.
//!
//! ```text
//! cargo run --example hochschild
//! ```

use gentle_hh::hochschild::{hh_sequence, FieldSpec};
use gentle_hh::{ag_invariant, fixtures};

fn main() {
    let a = fixtures::quiver_a();
    let phi = ag_invariant(&a, 0).unwrap();
    for c in [0, 2, 3] {
        let k = FieldSpec::new(c).unwrap();
        let hh = hh_sequence(&phi, a.vertex_count() as u64, a.arrow_count() as u64, 12, k);
        println!("char {c}: {:?}", hh.dims);
    }
}
