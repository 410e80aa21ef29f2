//! Two algebras with the same Hochschild cohomology and vertex count but
//! different AG-invariants, so not derived equivalent.
//!
//! ```text
//! cargo run --example counterexample
//! ```

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let (code, out) = gentle_hh::cli::run([
        "gentle-hh".to_owned(),
        "compare".into(),
        format!("{dir}/quiverA.bq"),
        format!("{dir}/quiverB.bq"),
        "--m".into(),
        "2".into(),
    ]);
    assert_eq!(code, 0);
    print!("{out}");
}
