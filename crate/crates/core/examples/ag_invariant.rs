//! Threads, the sign solver and the AG-invariant of the two fixtures.
//!
//! ```text
//! cargo run --example ag_invariant
//! ```

use gentle_hh::threads::{assign_signs_for, ThreadDecomposition};
use gentle_hh::{ag_invariant, fixtures, format_ag};

fn main() {
    let a = fixtures::quiver_a();
    let threads = ThreadDecomposition::new(&a).expect("quiver A is gentle");
    print!("{}", threads.dump(&a));
    let signs = assign_signs_for(&a, &threads, 7).expect("signs exist");
    signs.verify(&a, &threads).expect("constraints hold");

    for q in [fixtures::quiver_a(), fixtures::quiver_b(), fixtures::kronecker()] {
        let phi = ag_invariant(&q, 0).expect("gentle and connected");
        println!("phi({}) = {}", q.name(), format_ag(&phi));
    }
}
