//! Root cycle, rays and the parameters (s1, s2, k1, k2, r), checked against
//! the closed form for φ.
//!
//! ```text
//! cargo run --example parameters
//! ```

use gentle_hh::atilde::{decompose, extract_params, free_arrows, phi_from_params};
use gentle_hh::{ag_invariant, fixtures, format_ag};

fn main() {
    for q in [fixtures::quiver_a(), fixtures::quiver_b(), fixtures::kronecker()] {
        let dec = decompose(&q, 2).unwrap();
        print!("{}:\n{}", q.name(), dec.summary(&q));
        let free = free_arrows(&q, 2, &dec);
        let p = extract_params(&q, 2).unwrap();
        println!("free arrows cw {} ccw {}; {p}", free.cw, free.ccw);
        println!(
            "closed form {} / walk {}\n",
            format_ag(&phi_from_params(p).unwrap()),
            format_ag(&ag_invariant(&q, 0).unwrap())
        );
    }
}
