//! Parse a bound quiver and check the gentleness conditions.
//!
//! ```text
//! cargo run --example validate
//! ```

use gentle_hh::parse_bound_quiver;

const NOT_GENTLE: &str = "\
quiver claw
vertex c a b d
arrow x a c
arrow y b c
arrow z c d
";

fn main() {
    let q = gentle_hh::fixtures::quiver_a();
    println!("{}: gentle = {}, admissible = {}", q.name(), q.is_gentle(), q.is_admissible());

    // two arrows into c and no relation: z has two permitted predecessors
    let claw = parse_bound_quiver(NOT_GENTLE).expect("well formed");
    for v in claw.gentleness().violations {
        println!("{}: {v}", claw.name());
    }

    match parse_bound_quiver("quiver q\nvertex a\narrow x a b\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("parse error: {e}"),
    }
}
