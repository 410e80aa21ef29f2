//! Recognition of m-cluster tilted and Ã-branched algebras.
//!
//! ```text
//! cargo run --example classify
//! ```

use gentle_hh::atilde::{is_atilde_branched, is_m_cluster_tilted_atilde};
use gentle_hh::fixtures;

fn main() {
    let a = fixtures::quiver_a();
    for m in [2, 3] {
        print!("{}", is_m_cluster_tilted_atilde(&a, m));
        print!("{}", is_atilde_branched(&a, m));
    }
}
