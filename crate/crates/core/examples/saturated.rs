//! List m-saturated cycles for a few values of m.
//!
//! ```text
//! cargo run --example saturated
//! ```

use gentle_hh::fixtures;

fn main() {
    let a = fixtures::quiver_a();
    for m in 1..=3 {
        println!("m = {m}: {:?}", a.find_saturated_cycles(m));
    }
}
