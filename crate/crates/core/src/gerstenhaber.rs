//! Complete and gentle pairs, and whether the cup product and Lie bracket on
//! Hochschild cohomology are nontrivial.
//!
//! `Γₙ` is the set of paths `α1⋯αn` with every `αi·αi+1 ∈ I`. A complete pair
//! closes up: `s(α1) = t(αn)` and `αn·α1 ∈ I`. It is gentle when every cyclic
//! shift avoids extra relations at both ends. Degree 1 (loops with `α² ∈ I`)
//! is not handled; `n` starts at 2.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::hochschild::FieldSpec;
use crate::quiver::{ArrowId, BoundQuiver, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelationPath {
    pub arrows: Vec<ArrowId>,
}

impl RelationPath {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn names(&self, bq: &BoundQuiver) -> Vec<String> {
        bq.names(&self.arrows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompletePair {
    pub path: RelationPath,
    pub base: VertexId,
}

impl CompletePair {
    /// `t(α1⋯αn, e) = (αn α1⋯αn−1, e_{s(αn)})`.
    pub fn rotate(&self, bq: &BoundQuiver) -> CompletePair {
        let mut arrows = self.path.arrows.clone();
        arrows.rotate_right(1);
        CompletePair {
            base: bq.source(arrows[0]),
            path: RelationPath { arrows },
        }
    }

    pub fn describe(&self, bq: &BoundQuiver) -> String {
        format!(
            "({}, {})",
            self.path.names(bq).join(" "),
            bq.vertex_name(self.base)
        )
    }
}

/// Every path `α1⋯αn` with consecutive compositions in `I`.
pub fn gamma_n(bq: &BoundQuiver, n: usize) -> Vec<RelationPath> {
    assert!(n >= 2, "Γn is defined for n >= 2");
    let mut out = Vec::new();
    let mut stack: Vec<Vec<ArrowId>> = bq.arrow_ids().map(|a| vec![a]).collect();
    stack.reverse();
    while let Some(path) = stack.pop() {
        if path.len() == n {
            out.push(RelationPath { arrows: path });
            continue;
        }
        let last = *path.last().unwrap();
        let mut next: Vec<ArrowId> = bq.relation_successors(last).collect();
        next.sort();
        for b in next.into_iter().rev() {
            let mut p = path.clone();
            p.push(b);
            stack.push(p);
        }
    }
    out
}

fn closes(bq: &BoundQuiver, p: &RelationPath) -> bool {
    let (first, last) = (p.arrows[0], *p.arrows.last().unwrap());
    bq.target(last) == bq.source(first) && bq.has_relation(last, first)
}

pub fn complete_pairs(bq: &BoundQuiver, n: usize) -> Vec<CompletePair> {
    gamma_n(bq, n)
        .into_iter()
        .filter(|p| closes(bq, p))
        .map(|path| CompletePair {
            base: bq.source(path.arrows[0]),
            path,
        })
        .collect()
}

/// Membership in `Cn(0)`: no `β ≠ α1` with `αn·β ∈ I` and no `γ ≠ αn` with
/// `γ·α1 ∈ I`.
fn in_c0(bq: &BoundQuiver, c: &CompletePair) -> bool {
    let (first, last) = (c.path.arrows[0], *c.path.arrows.last().unwrap());
    bq.relation_successors(last).all(|b| b == first)
        && bq.relation_predecessors(first).all(|g| g == last)
}

pub fn is_gentle_pair(bq: &BoundQuiver, c: &CompletePair) -> bool {
    let mut cur = c.clone();
    for _ in 0..c.path.len() {
        if !in_c0(bq, &cur) {
            return false;
        }
        cur = cur.rotate(bq);
    }
    true
}

pub fn gentle_pairs(bq: &BoundQuiver, n: usize) -> Vec<CompletePair> {
    complete_pairs(bq, n)
        .into_iter()
        .filter(|c| is_gentle_pair(bq, c))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GerstenhaberVerdict {
    pub cup: bool,
    pub bracket: bool,
    pub witness: Option<CompletePair>,
}

/// Closed relation walks only run around cycles of the relation graph, so a
/// gentle pair exists in some degree `2 ≤ n ≤ n_bound` iff one exists in
/// degree `L` for a relation cycle of length `2 ≤ L ≤ n_bound`. The witness
/// is the smallest such pair, which starts at the smallest arrow of its cycle.
pub fn gerstenhaber_nontrivial(bq: &BoundQuiver, k: FieldSpec, n_bound: usize) -> GerstenhaberVerdict {
    let mut lengths: Vec<usize> = bq
        .critical_cycles()
        .iter()
        .map(Vec::len)
        .filter(|&l| (2..=n_bound).contains(&l))
        .collect();
    lengths.sort();
    lengths.dedup();
    let witness = lengths
        .into_iter()
        .find_map(|n| gentle_pairs(bq, n).into_iter().min());
    let cup = witness.is_some();
    GerstenhaberVerdict {
        cup,
        bracket: cup && k.characteristic() == 0,
        witness,
    }
}

impl GerstenhaberVerdict {
    pub fn describe(&self, bq: &BoundQuiver) -> String {
        let witness = self
            .witness
            .as_ref()
            .map_or_else(|| "none".to_owned(), |w| w.describe(bq));
        format!(
            "cup product nontrivial: {}\nLie bracket nontrivial: {}\nwitness: {witness}\n",
            self.cup, self.bracket
        )
    }
}

impl fmt::Display for RelationPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.arrows.iter().map(|a| a.0.to_string()).collect();
        write!(f, "[{}]", ids.join(" "))
    }
}

impl Serialize for RelationPath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.arrows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn named(bq: &BoundQuiver, paths: &[RelationPath]) -> Vec<String> {
        paths.iter().map(|p| p.names(bq).join(" ")).collect()
    }

    /// Brute force over all arrow tuples of length n.
    fn gamma_oracle(bq: &BoundQuiver, n: usize) -> Vec<Vec<ArrowId>> {
        let arrows: Vec<ArrowId> = bq.arrow_ids().collect();
        let mut out = Vec::new();
        let total = arrows.len().pow(n as u32);
        for mut code in 0..total {
            let mut t = Vec::with_capacity(n);
            for _ in 0..n {
                t.push(arrows[code % arrows.len()]);
                code /= arrows.len();
            }
            t.reverse();
            if t.windows(2).all(|w| bq.has_relation(w[0], w[1])) {
                out.push(t);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn gamma_on_quiver_a() {
        let a = fixtures::quiver_a();
        assert_eq!(
            named(&a, &gamma_n(&a, 4)),
            ["a0 a1 a2 a3", "a1 a2 a3 a0", "a2 a3 a0 a1", "a3 a0 a1 a2"]
        );
        assert_eq!(named(&a, &gamma_n(&a, 5))[0], "a0 a1 a2 a3 a0");
        for n in 2..6 {
            let got: Vec<Vec<ArrowId>> = gamma_n(&a, n).into_iter().map(|p| p.arrows).collect();
            assert_eq!(got, gamma_oracle(&a, n));
        }
        assert!(gamma_n(&fixtures::kronecker(), 3).is_empty());
    }

    #[test]
    fn complete_and_gentle_pairs_on_quiver_a() {
        let a = fixtures::quiver_a();
        assert_eq!(complete_pairs(&a, 4).len(), 4);
        assert!(complete_pairs(&a, 5).is_empty());
        assert!(complete_pairs(&a, 6).is_empty());
        assert_eq!(complete_pairs(&a, 8).len(), 4);
        assert_eq!(gentle_pairs(&a, 4), complete_pairs(&a, 4));
        assert!(gentle_pairs(&a, 6).is_empty());
        let c = &complete_pairs(&a, 4)[0];
        assert_eq!(c.base, a.vertex_by_name("v4").unwrap());
        // rotation permutes the complete pairs
        let all = complete_pairs(&a, 8);
        for c in &all {
            assert!(all.contains(&c.rotate(&a)));
        }
    }

    #[test]
    fn nontriviality() {
        let a = fixtures::quiver_a();
        let v = gerstenhaber_nontrivial(&a, FieldSpec::zero(), 20);
        assert!(v.cup && v.bracket);
        assert_eq!(v.witness.as_ref().unwrap().path.names(&a), ["a0", "a1", "a2", "a3"]);
        let v = gerstenhaber_nontrivial(&a, FieldSpec::new(5).unwrap(), 20);
        assert!(v.cup && !v.bracket);
        let v = gerstenhaber_nontrivial(&a, FieldSpec::zero(), 3);
        assert!(!v.cup);
        let v = gerstenhaber_nontrivial(&fixtures::kronecker(), FieldSpec::zero(), 20);
        assert_eq!(v, GerstenhaberVerdict { cup: false, bracket: false, witness: None });
    }

    #[test]
    fn c0_fails_when_gentleness_fails() {
        // a·b, b·a and a·c in I: not gentle (G3 at a), and the pair (a b) is
        // complete but not gentle
        let q = BoundQuiver::builder("bad")
            .vertices(["x", "y"])
            .arrow("a", "x", "y")
            .arrow("b", "y", "x")
            .arrow("c", "y", "x")
            .relation("a", "b")
            .relation("b", "a")
            .relation("a", "c")
            .build()
            .unwrap();
        let complete = complete_pairs(&q, 2);
        assert!(!complete.is_empty());
        assert!(gentle_pairs(&q, 2).len() < complete.len());
    }
}
