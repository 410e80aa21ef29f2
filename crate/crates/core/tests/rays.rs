//! Parameters read off quivers with rays must reproduce the walk-based
//! invariant through the closed form.

use gentle_hh::atilde::{decompose, extract_params, phi_from_params, UnionKind};
use gentle_hh::{ag_invariant, parse_bound_quiver};

fn agrees(text: &str, m: u64) -> UnionKind {
    let q = parse_bound_quiver(text).unwrap();
    let dec = decompose(&q, m).unwrap();
    assert_eq!(dec.rays.len(), 1, "{}", q.name());
    let p = extract_params(&q, m).unwrap();
    assert_eq!(
        ag_invariant(&q, 0).unwrap(),
        phi_from_params(p).unwrap(),
        "{}: {p}",
        q.name()
    );
    dec.rays[0].kind
}

const KRONECKER_ROOT: &str = "quiver k\nvertex x y\narrow alpha x y\narrow beta x y\n";
const SPLIT_ROOT: &str = "quiver t\nvertex x y z\narrow a x y\narrow b y z\narrow c x z\nrel a b\n";
const BALANCED_ROOT: &str =
    "quiver bal\nvertex x y z u\narrow a x y\narrow b y z\narrow c x u\narrow e u z\nrel a b\nrel c e\n";
const SAT_ROOT: &str = "quiver s\nvertex x y p\narrow alpha x y\narrow beta x y\n\
    arrow s0 y p\narrow s1 p x\nrel alpha s0\nrel s0 s1\nrel s1 alpha\n";

#[test]
fn external_union_rays() {
    for extra in [
        "vertex z\narrow c y z\nrel alpha c\n",
        "vertex z w\narrow c y z\narrow d z w\nrel alpha c\n",
        "vertex z\narrow c z x\nrel c alpha\n",
        "vertex z\narrow c y z\nrel beta c\n",
    ] {
        let kind = agrees(&format!("{KRONECKER_ROOT}{extra}"), 2);
        assert!(matches!(kind, UnionKind::External(_)));
    }
    // a ray carrying its own saturated cycle
    let text = format!(
        "{KRONECKER_ROOT}vertex w p q\narrow c y w\narrow f w p\narrow g p q\narrow h q w\n\
         rel alpha c\nrel f g\nrel g h\nrel h f\n"
    );
    agrees(&text, 1);
    for rel in ["rel b d\n", "rel c d\n"] {
        let kind = agrees(&format!("{SPLIT_ROOT}vertex w\narrow d z w\n{rel}"), 2);
        assert!(matches!(kind, UnionKind::External(_)));
    }
}

#[test]
fn internal_union_rays() {
    for extra in [
        "vertex w\narrow d y w\n",
        "vertex w u\narrow d y w\narrow e w u\n",
        "vertex w\narrow d w y\n",
    ] {
        let kind = agrees(&format!("{SPLIT_ROOT}{extra}"), 2);
        assert!(matches!(kind, UnionKind::Internal(_)));
    }
    let with_cycle = "vertex w p q\narrow d y w\narrow f w p\narrow g p q\narrow h q w\n\
        rel f g\nrel g h\nrel h f\n";
    agrees(&format!("{SPLIT_ROOT}{with_cycle}"), 1);
    for m in [1, 2] {
        agrees(&format!("{BALANCED_ROOT}vertex w\narrow d y w\n"), m);
        agrees(
            &format!("{BALANCED_ROOT}vertex w w2\narrow d y w\narrow d2 w2 y\nrel d2 d\n"),
            m,
        );
        agrees(&format!("{BALANCED_ROOT}{with_cycle}"), m.min(1));
    }
}

#[test]
fn rays_without_union_relations() {
    for extra in ["vertex w\narrow d p w\n", "vertex w\narrow d w p\n"] {
        let kind = agrees(&format!("{SAT_ROOT}{extra}"), 1);
        assert_eq!(kind, UnionKind::None);
    }
}
