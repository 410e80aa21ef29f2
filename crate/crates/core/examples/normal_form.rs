//! Generate normal forms and read their parameters back.
//!
//! ```text
//! cargo run --example normal_form
//! ```

use gentle_hh::atilde::{extract_params, generate_normal_form, generate_relaxed, BranchParams};
use gentle_hh::{ag_invariant, format_ag};

fn main() {
    let p = BranchParams::new(2, 1, 1, 3, 0, 0);
    let q = generate_normal_form(p).unwrap();
    print!("{q}");
    println!("phi = {}", format_ag(&ag_invariant(&q, 0).unwrap()));
    println!("read back: {}", extract_params(&q, 2).unwrap());

    // one relation is not balanced modulo 2; only the relaxed generator builds it
    let p = BranchParams::new(2, 0, 0, 2, 0, 1);
    println!("checked: {}", generate_normal_form(p).unwrap_err());
    let q = generate_relaxed(p).unwrap();
    println!("relaxed phi = {}", format_ag(&ag_invariant(&q, 0).unwrap()));
}
