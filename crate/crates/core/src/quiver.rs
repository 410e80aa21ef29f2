//! Bound quivers with quadratic monomial relations.
//!
//! A [`BoundQuiver`] is the input object for everything else in the crate:
//! a finite quiver together with a set of length-two zero relations. Relations
//! are ordered arrow pairs read left to right, so `(a, b)` is the path `a·b`
//! with `t(a) = s(b)`.
//!
//! Vertices and arrows are kept sorted by name, which makes [`VertexId`] and
//! [`ArrowId`] order agree with the lexicographic order of the names.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{decompose_functional, FunctionalDecomposition};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// Structural problems found while assembling a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("invalid identifier `{0}` (expected ASCII letters, digits or `_`)")]
    InvalidIdent(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate relation `{0} {1}`")]
    DuplicateRelation(String, String),
    #[error("relation `{first} {second}` does not compose: t({first}) = {target} but s({second}) = {start}")]
    NonComposing {
        first: String,
        second: String,
        target: String,
        start: String,
    },
    #[error("quiver is not connected ({0} components)")]
    Disconnected(usize),
}

/// The bound quiver `(Q, I)` with `I` generated by paths of length two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: BTreeSet<(ArrowId, ArrowId)>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
}

fn valid_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Incremental construction of a [`BoundQuiver`] from names.
#[derive(Clone, Debug, Default)]
pub struct QuiverBuilder {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<(String, String, String)>,
    relations: Vec<(String, String)>,
}

impl QuiverBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(id.into());
        self
    }

    pub fn vertices<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn arrow(
        mut self,
        name: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        self.arrows.push((name.into(), source.into(), target.into()));
        self
    }

    pub fn relation(mut self, first: impl Into<String>, second: impl Into<String>) -> Self {
        self.relations.push((first.into(), second.into()));
        self
    }

    pub fn build(self) -> Result<BoundQuiver, QuiverError> {
        let mut vertex_set = BTreeSet::new();
        for v in &self.vertices {
            if !valid_ident(v) {
                return Err(QuiverError::InvalidIdent(v.clone()));
            }
            if !vertex_set.insert(v.clone()) {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let vertices: Vec<String> = vertex_set.into_iter().collect();
        let vindex: HashMap<&str, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), VertexId(i)))
            .collect();

        let mut arrow_map = BTreeMap::new();
        for (name, s, t) in &self.arrows {
            if !valid_ident(name) {
                return Err(QuiverError::InvalidIdent(name.clone()));
            }
            let source = *vindex
                .get(s.as_str())
                .ok_or_else(|| QuiverError::UnknownVertex(s.clone()))?;
            let target = *vindex
                .get(t.as_str())
                .ok_or_else(|| QuiverError::UnknownVertex(t.clone()))?;
            let arrow = Arrow {
                name: name.clone(),
                source,
                target,
            };
            if arrow_map.insert(name.clone(), arrow).is_some() {
                return Err(QuiverError::DuplicateArrow(name.clone()));
            }
        }
        let arrows: Vec<Arrow> = arrow_map.into_values().collect();
        let aindex: HashMap<&str, ArrowId> = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.as_str(), ArrowId(i)))
            .collect();

        let mut relations = BTreeSet::new();
        for (f, s) in &self.relations {
            let first = *aindex
                .get(f.as_str())
                .ok_or_else(|| QuiverError::UnknownArrow(f.clone()))?;
            let second = *aindex
                .get(s.as_str())
                .ok_or_else(|| QuiverError::UnknownArrow(s.clone()))?;
            let (a, b) = (&arrows[first.0], &arrows[second.0]);
            if a.target != b.source {
                return Err(QuiverError::NonComposing {
                    first: f.clone(),
                    second: s.clone(),
                    target: vertices[a.target.0].clone(),
                    start: vertices[b.source.0].clone(),
                });
            }
            if !relations.insert((first, second)) {
                return Err(QuiverError::DuplicateRelation(f.clone(), s.clone()));
            }
        }

        let mut outgoing = vec![Vec::new(); vertices.len()];
        let mut incoming = vec![Vec::new(); vertices.len()];
        for (i, a) in arrows.iter().enumerate() {
            outgoing[a.source.0].push(ArrowId(i));
            incoming[a.target.0].push(ArrowId(i));
        }

        Ok(BoundQuiver {
            name: self.name,
            vertices,
            arrows,
            relations,
            outgoing,
            incoming,
        })
    }
}

/// Which gentleness condition failed, and where.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// More than two arrows enter or leave a vertex.
    G1 {
        vertex: String,
        incoming: usize,
        outgoing: usize,
    },
    /// An arrow has several relation-free continuations (or predecessors).
    G2 {
        arrow: String,
        successors: usize,
        predecessors: usize,
    },
    /// An arrow has several relation continuations (or predecessors).
    G3 {
        arrow: String,
        successors: usize,
        predecessors: usize,
    },
}

impl Violation {
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::G1 { .. } => "G1",
            Violation::G2 { .. } => "G2",
            Violation::G3 { .. } => "G3",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::G1 {
                vertex,
                incoming,
                outgoing,
            } => write!(
                f,
                "G1 violated at vertex {vertex}: {incoming} incoming, {outgoing} outgoing arrows"
            ),
            Violation::G2 {
                arrow,
                successors,
                predecessors,
            } => write!(
                f,
                "G2 violated at arrow {arrow}: {successors} relation-free successors, {predecessors} relation-free predecessors"
            ),
            Violation::G3 {
                arrow,
                successors,
                predecessors,
            } => write!(
                f,
                "G3 violated at arrow {arrow}: {successors} relation successors, {predecessors} relation predecessors"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GentlenessReport {
    pub violations: Vec<Violation>,
}

impl GentlenessReport {
    pub fn is_gentle(&self) -> bool {
        self.violations.is_empty()
    }
}

impl BoundQuiver {
    pub fn builder(name: impl Into<String>) -> QuiverBuilder {
        QuiverBuilder::new(name)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(name))
            .ok()
            .map(VertexId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows
            .binary_search_by(|a| a.name.as_str().cmp(name))
            .ok()
            .map(ArrowId)
    }

    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        &self.outgoing[v.0]
    }

    pub fn incoming(&self, v: VertexId) -> &[ArrowId] {
        &self.incoming[v.0]
    }

    pub fn relations(&self) -> impl Iterator<Item = (ArrowId, ArrowId)> + '_ {
        self.relations.iter().copied()
    }

    pub fn has_relation(&self, first: ArrowId, second: ArrowId) -> bool {
        self.relations.contains(&(first, second))
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(Arrow::is_loop)
    }

    /// Arrows `b` with `t(a) = s(b)` and `a·b ∈ I`.
    pub fn relation_successors(&self, a: ArrowId) -> impl Iterator<Item = ArrowId> + '_ {
        self.outgoing[self.target(a).0]
            .iter()
            .copied()
            .filter(move |&b| self.has_relation(a, b))
    }

    pub fn relation_predecessors(&self, a: ArrowId) -> impl Iterator<Item = ArrowId> + '_ {
        self.incoming[self.source(a).0]
            .iter()
            .copied()
            .filter(move |&g| self.has_relation(g, a))
    }

    /// Arrows `b` with `t(a) = s(b)` and `a·b ∉ I`.
    pub fn permitted_successors(&self, a: ArrowId) -> impl Iterator<Item = ArrowId> + '_ {
        self.outgoing[self.target(a).0]
            .iter()
            .copied()
            .filter(move |&b| !self.has_relation(a, b))
    }

    pub fn permitted_predecessors(&self, a: ArrowId) -> impl Iterator<Item = ArrowId> + '_ {
        self.incoming[self.source(a).0]
            .iter()
            .copied()
            .filter(move |&g| !self.has_relation(g, a))
    }

    pub fn gentleness(&self) -> GentlenessReport {
        let mut violations = Vec::new();
        for v in self.vertex_ids() {
            let (i, o) = (self.incoming(v).len(), self.outgoing(v).len());
            if i > 2 || o > 2 {
                violations.push(Violation::G1 {
                    vertex: self.vertex_name(v).to_owned(),
                    incoming: i,
                    outgoing: o,
                });
            }
        }
        for a in self.arrow_ids() {
            let succ = self.permitted_successors(a).count();
            let pred = self.permitted_predecessors(a).count();
            if succ > 1 || pred > 1 {
                violations.push(Violation::G2 {
                    arrow: self.arrow_name(a).to_owned(),
                    successors: succ,
                    predecessors: pred,
                });
            }
        }
        for a in self.arrow_ids() {
            let succ = self.relation_successors(a).count();
            let pred = self.relation_predecessors(a).count();
            if succ > 1 || pred > 1 {
                violations.push(Violation::G3 {
                    arrow: self.arrow_name(a).to_owned(),
                    successors: succ,
                    predecessors: pred,
                });
            }
        }
        GentlenessReport { violations }
    }

    pub fn is_gentle(&self) -> bool {
        self.gentleness().is_gentle()
    }

    /// Unique relation successor of each arrow. Only meaningful under G3.
    pub(crate) fn relation_successor_map(&self) -> Vec<Option<usize>> {
        self.arrow_ids()
            .map(|a| self.relation_successors(a).next().map(|b| b.0))
            .collect()
    }

    /// Unique relation-free successor of each arrow. Only meaningful under G2.
    pub(crate) fn permitted_successor_map(&self) -> Vec<Option<usize>> {
        self.arrow_ids()
            .map(|a| self.permitted_successors(a).next().map(|b| b.0))
            .collect()
    }

    /// A relation-free oriented cycle, if one exists. `None` means the ideal
    /// is admissible.
    ///
    /// Works for arbitrary (not necessarily gentle) inputs.
    pub fn relation_free_cycle(&self) -> Option<Vec<ArrowId>> {
        // iterative DFS over the permitted graph, colours: 0 new, 1 open, 2 done
        let n = self.arrows.len();
        let mut colour = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for start in 0..n {
            if colour[start] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, Vec<usize>)> = Vec::new();
            colour[start] = 1;
            let succ: Vec<usize> = self.permitted_successors(ArrowId(start)).map(|b| b.0).collect();
            stack.push((start, succ));
            while let Some((node, pending)) = stack.last_mut() {
                let node = *node;
                if let Some(next) = pending.pop() {
                    match colour[next] {
                        0 => {
                            colour[next] = 1;
                            parent[next] = node;
                            let succ = self.permitted_successors(ArrowId(next)).map(|b| b.0).collect();
                            stack.push((next, succ));
                        }
                        1 => {
                            let mut cycle = vec![ArrowId(node)];
                            let mut cur = node;
                            while cur != next {
                                cur = parent[cur];
                                cycle.push(ArrowId(cur));
                            }
                            cycle.reverse();
                            return Some(canonical_rotation(cycle));
                        }
                        _ => {}
                    }
                } else {
                    colour[node] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn is_admissible(&self) -> bool {
        self.relation_free_cycle().is_none()
    }

    /// Paths and cycles of the relation graph (nodes = arrows, `a → b` iff
    /// `a·b ∈ I`). Requires G3.
    pub(crate) fn relation_graph(&self) -> FunctionalDecomposition {
        decompose_functional(&self.relation_successor_map())
    }

    /// Connected components of the underlying graph, each as a sub-quiver.
    /// Components are ordered by their smallest vertex name.
    pub fn connected_components(&self) -> Vec<BoundQuiver> {
        let labels = self.component_labels();
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        (0..count)
            .map(|c| {
                let mut b = QuiverBuilder::new(self.name.clone());
                for v in self.vertex_ids().filter(|v| labels[v.0] == c) {
                    b = b.vertex(self.vertex_name(v));
                }
                for a in self.arrow_ids().filter(|&a| labels[self.source(a).0] == c) {
                    let arrow = self.arrow(a);
                    b = b.arrow(
                        &arrow.name,
                        self.vertex_name(arrow.source),
                        self.vertex_name(arrow.target),
                    );
                }
                for (f, s) in self.relations().filter(|&(f, _)| labels[self.source(f).0] == c) {
                    b = b.relation(self.arrow_name(f), self.arrow_name(s));
                }
                b.build().expect("sub-quiver of a valid quiver is valid")
            })
            .collect()
    }

    /// Component index per vertex, numbered in order of first vertex name.
    fn component_labels(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let nbrs = self.outgoing[v]
                    .iter()
                    .map(|&a| self.target(a).0)
                    .chain(self.incoming[v].iter().map(|&a| self.source(a).0));
                for w in nbrs {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        !self.vertices.is_empty() && self.component_labels().iter().all(|&c| c == 0)
    }

    /// `|Q1| − |Q0| + 1` of a connected quiver.
    pub fn euler_characteristic(&self) -> Result<i64, QuiverError> {
        if !self.is_connected() {
            let count = self.component_labels().into_iter().max().map_or(0, |m| m + 1);
            return Err(QuiverError::Disconnected(count));
        }
        Ok(self.arrows.len() as i64 - self.vertices.len() as i64 + 1)
    }

    /// All cycles of the relation graph, each rotated to start at its
    /// smallest arrow. Requires G3.
    pub fn critical_cycles(&self) -> Vec<Vec<ArrowId>> {
        let mut cycles: Vec<Vec<ArrowId>> = self
            .relation_graph()
            .cycles
            .into_iter()
            .map(|c| canonical_rotation(c.into_iter().map(ArrowId).collect()))
            .collect();
        cycles.sort();
        cycles
    }

    /// Oriented cycles of exactly `m + 2` arrows whose cyclic compositions all
    /// lie in `I`.
    pub fn saturated_cycles(&self, m: usize) -> Vec<Vec<ArrowId>> {
        self.critical_cycles()
            .into_iter()
            .filter(|c| c.len() == m + 2)
            .collect()
    }

    /// Same as [`saturated_cycles`](Self::saturated_cycles) but with arrow names.
    pub fn find_saturated_cycles(&self, m: usize) -> Vec<Vec<String>> {
        self.saturated_cycles(m)
            .iter()
            .map(|c| self.names(c))
            .collect()
    }

    /// Longest chain of consecutive relations none of which lies on an
    /// `m`-saturated cycle. Requires G3.
    pub fn max_consecutive_relations_outside(&self, m: usize) -> usize {
        let graph = self.relation_graph();
        let from_paths = graph.paths.iter().map(|p| p.len() - 1);
        let from_cycles = graph
            .cycles
            .iter()
            .filter(|c| c.len() != m + 2)
            .map(|c| c.len());
        from_paths.chain(from_cycles).max().unwrap_or(0)
    }

    pub fn names(&self, arrows: &[ArrowId]) -> Vec<String> {
        arrows.iter().map(|&a| self.arrow_name(a).to_owned()).collect()
    }

    /// The same quiver with every vertex and arrow renamed.
    pub fn renamed(
        &self,
        vertex: impl Fn(&str) -> String,
        arrow: impl Fn(&str) -> String,
    ) -> Result<BoundQuiver, QuiverError> {
        let mut b = QuiverBuilder::new(self.name.clone());
        for v in &self.vertices {
            b = b.vertex(vertex(v));
        }
        for a in &self.arrows {
            b = b.arrow(
                arrow(&a.name),
                vertex(&self.vertices[a.source.0]),
                vertex(&self.vertices[a.target.0]),
            );
        }
        for (f, s) in &self.relations {
            b = b.relation(arrow(self.arrow_name(*f)), arrow(self.arrow_name(*s)));
        }
        b.build()
    }

    /// Text form accepted by [`parse_bound_quiver`](crate::parse_bound_quiver).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# rel a b denotes the path a·b, with t(a) = s(b)\n");
        let _ = writeln!(out, "quiver {}", self.name);
        if !self.vertices.is_empty() {
            let _ = writeln!(out, "vertex {}", self.vertices.join(" "));
        }
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "arrow {} {} {}",
                a.name, self.vertices[a.source.0], self.vertices[a.target.0]
            );
        }
        for &(f, s) in &self.relations {
            let _ = writeln!(out, "rel {} {}", self.arrow_name(f), self.arrow_name(s));
        }
        out
    }
}

impl fmt::Display for BoundQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Rotate a cyclic sequence so it starts at its minimum element.
pub(crate) fn canonical_rotation<T: Ord + Copy>(mut cycle: Vec<T>) -> Vec<T> {
    if let Some(pos) = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, x)| *x)
        .map(|(i, _)| i)
    {
        cycle.rotate_left(pos);
    }
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn quiver_a_counts() {
        let q = fixtures::quiver_a();
        assert_eq!(q.vertex_count(), 7);
        assert_eq!(q.arrow_count(), 8);
        assert_eq!(q.relation_count(), 4);
        assert!(q.is_gentle());
        assert!(q.is_admissible());
        assert_eq!(q.euler_characteristic(), Ok(2));
    }

    #[test]
    fn single_vertex() {
        let q = BoundQuiver::builder("pt").vertex("x").build().unwrap();
        assert_eq!(q.arrow_count(), 0);
        assert!(q.is_gentle());
        assert_eq!(q.euler_characteristic(), Ok(0));
        assert_eq!(q.max_consecutive_relations_outside(1), 0);
    }

    #[test]
    fn kronecker_euler_and_cycles() {
        let q = fixtures::kronecker();
        assert_eq!(q.euler_characteristic(), Ok(1));
        for m in 1..5 {
            assert!(q.find_saturated_cycles(m).is_empty());
        }
        assert_eq!(q.max_consecutive_relations_outside(2), 0);
    }

    #[test]
    fn star_violates_g1() {
        let q = BoundQuiver::builder("star")
            .vertices(["c", "x", "y", "z"])
            .arrow("a", "c", "x")
            .arrow("b", "c", "y")
            .arrow("d", "c", "z")
            .build()
            .unwrap();
        let report = q.gentleness();
        assert!(!report.is_gentle());
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::G1 { vertex, outgoing: 3, .. } if vertex == "c"
        )));
    }

    #[test]
    fn g2_and_g3_violations_are_reported() {
        // two arrows into y, one out, no relations: z has two permitted predecessors
        let q = BoundQuiver::builder("g2")
            .vertices(["x", "y", "z"])
            .arrow("a", "x", "y")
            .arrow("b", "x", "y")
            .arrow("c", "y", "z")
            .build()
            .unwrap();
        let conds: Vec<_> = q.gentleness().violations.iter().map(|v| v.condition()).collect();
        assert_eq!(conds, ["G2"]);

        let q = BoundQuiver::builder("g3")
            .vertices(["x", "y", "z"])
            .arrow("a", "x", "y")
            .arrow("b", "x", "y")
            .arrow("c", "y", "z")
            .relation("a", "c")
            .relation("b", "c")
            .build()
            .unwrap();
        let conds: Vec<_> = q.gentleness().violations.iter().map(|v| v.condition()).collect();
        assert_eq!(conds, ["G3"]);
    }

    #[test]
    fn saturated_cycles_of_quiver_a() {
        let q = fixtures::quiver_a();
        assert_eq!(q.find_saturated_cycles(2), vec![vec!["a0", "a1", "a2", "a3"]]);
        assert!(q.find_saturated_cycles(1).is_empty());
        assert!(q.find_saturated_cycles(3).is_empty());
        assert_eq!(q.max_consecutive_relations_outside(2), 0);
        // at m = 3 the 4-cycle is no longer saturated and counts as a chain
        assert_eq!(q.max_consecutive_relations_outside(3), 4);
    }

    #[test]
    fn consecutive_relations_on_a_path() {
        let q = BoundQuiver::builder("path")
            .vertices(["0", "1", "2", "3"])
            .arrow("al", "0", "1")
            .arrow("be", "1", "2")
            .arrow("ga", "2", "3")
            .relation("al", "be")
            .relation("be", "ga")
            .build()
            .unwrap();
        assert_eq!(q.max_consecutive_relations_outside(3), 2);
    }

    #[test]
    fn relation_free_cycle_detected() {
        let q = BoundQuiver::builder("cyc")
            .vertices(["x", "y"])
            .arrow("a", "x", "y")
            .arrow("b", "y", "x")
            .build()
            .unwrap();
        assert_eq!(q.relation_free_cycle(), Some(vec![ArrowId(0), ArrowId(1)]));
        let q = BoundQuiver::builder("cyc")
            .vertices(["x", "y"])
            .arrow("a", "x", "y")
            .arrow("b", "y", "x")
            .relation("b", "a")
            .build()
            .unwrap();
        assert!(q.is_admissible());
    }

    #[test]
    fn components() {
        let q = fixtures::quiver_a();
        let comps = q.connected_components();
        assert_eq!(comps, vec![q.clone()]);

        let text = format!("{}vertex extra\n", q.to_text());
        let with_extra = crate::parse_bound_quiver(&text).unwrap();
        let comps = with_extra.connected_components();
        assert_eq!(comps.len(), 2);
        assert!(with_extra.euler_characteristic().is_err());

        let empty = BoundQuiver::builder("e").build().unwrap();
        assert!(empty.connected_components().is_empty());
    }

    #[test]
    fn builder_rejects_non_composing_relation() {
        let err = BoundQuiver::builder("x")
            .vertices(["p", "q"])
            .arrow("a", "p", "q")
            .arrow("b", "p", "q")
            .relation("a", "b")
            .build()
            .unwrap_err();
        assert!(matches!(err, QuiverError::NonComposing { .. }));
    }

    #[test]
    fn lookup_by_name() {
        let q = fixtures::quiver_a();
        let a1 = q.arrow_by_name("a1").unwrap();
        assert_eq!(q.vertex_name(q.source(a1)), "v5");
        assert_eq!(q.arrow_by_name("zz"), None);
        assert!(q.vertex_by_name("v7").is_some());
    }
}
