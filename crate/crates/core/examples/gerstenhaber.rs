//! Gentle pairs and nontriviality of the Gerstenhaber structure.
//!
//! ```text
//! cargo run --example gerstenhaber
//! ```

use gentle_hh::fixtures;
use gentle_hh::gerstenhaber::{gentle_pairs, gerstenhaber_nontrivial};
use gentle_hh::hochschild::FieldSpec;

fn main() {
    let a = fixtures::quiver_a();
    let degrees: Vec<usize> = (2..=20).filter(|&n| !gentle_pairs(&a, n).is_empty()).collect();
    println!("gentle pairs in degrees {degrees:?}");
    for c in [0, 5] {
        let v = gerstenhaber_nontrivial(&a, FieldSpec::new(c).unwrap(), 20);
        print!("char {c}\n{}", v.describe(&a));
    }
}
