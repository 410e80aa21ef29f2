//! Permitted and forbidden threads of a gentle bound quiver, and the sign
//! functions `σ`, `ε` that drive the AG pairing walk.
//!
//! Nontrivial permitted threads are the maximal paths of the *permitted
//! graph* (nodes are arrows, `a → b` iff `t(a) = s(b)` and `a·b ∉ I`).
//! Nontrivial forbidden threads are the maximal paths of the *relation graph*
//! (`a → b` iff `a·b ∈ I`); cycles of the relation graph are split off as
//! [`CriticalCycle`]s and never produce forbidden threads.
//!
//! Trivial threads sit at vertices with at most one incoming and at most one
//! outgoing arrow. Such a vertex carries a trivial permitted thread unless the
//! composition through it lies in `I`, and a trivial forbidden thread unless
//! the composition through it avoids `I`. A vertex touching a single arrow
//! carries one of each.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};
use std::ops::Neg;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::decompose_functional;
use crate::quiver::{ArrowId, BoundQuiver, Violation, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ThreadKind {
    Permitted,
    Forbidden,
}

impl fmt::Display for ThreadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThreadKind::Permitted => "permitted",
            ThreadKind::Forbidden => "forbidden",
        })
    }
}

/// A permitted or forbidden thread. Trivial threads have no arrows and
/// `start == end == base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Thread {
    pub kind: ThreadKind,
    pub arrows: Vec<ArrowId>,
    pub base: VertexId,
    pub start: VertexId,
    pub end: VertexId,
}

impl Thread {
    fn path(kind: ThreadKind, bq: &BoundQuiver, arrows: Vec<ArrowId>) -> Self {
        let start = bq.source(arrows[0]);
        let end = bq.target(*arrows.last().unwrap());
        Thread {
            kind,
            arrows,
            base: start,
            start,
            end,
        }
    }

    fn trivial(kind: ThreadKind, v: VertexId) -> Self {
        Thread {
            kind,
            arrows: Vec::new(),
            base: v,
            start: v,
            end: v,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn describe(&self, bq: &BoundQuiver) -> String {
        if self.is_trivial() {
            format!("{} trivial @{}", self.kind, bq.vertex_name(self.base))
        } else {
            format!(
                "{} [{}] {} -> {}",
                self.kind,
                bq.names(&self.arrows).join(" "),
                bq.vertex_name(self.start),
                bq.vertex_name(self.end)
            )
        }
    }
}

/// A cycle of the relation graph: every cyclic composition lies in `I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CriticalCycle {
    pub arrows: Vec<ArrowId>,
}

impl CriticalCycle {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ThreadError {
    #[error("not gentle: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    NotGentle(Vec<Violation>),
    #[error("ideal is not admissible: relation-free oriented cycle [{}]", .0.join(" "))]
    NotAdmissible(Vec<String>),
    #[error("thread ends do not pair up at vertex {vertex}: {permitted} permitted vs {forbidden} forbidden")]
    PairingMismatch {
        vertex: String,
        permitted: usize,
        forbidden: usize,
    },
    #[error("sign constraints are unsatisfiable (internal error)")]
    SignConflict,
}

/// All threads and critical cycles of a gentle admissible bound quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreadDecomposition {
    pub permitted: Vec<Thread>,
    pub forbidden: Vec<Thread>,
    pub critical_cycles: Vec<CriticalCycle>,
}

pub(crate) fn require_gentle_admissible(bq: &BoundQuiver) -> Result<(), ThreadError> {
    let report = bq.gentleness();
    if !report.is_gentle() {
        return Err(ThreadError::NotGentle(report.violations));
    }
    if let Some(cycle) = bq.relation_free_cycle() {
        return Err(ThreadError::NotAdmissible(bq.names(&cycle)));
    }
    Ok(())
}

/// The single incoming/outgoing arrow pair at a vertex of in- and
/// out-degree at most one, or `None` if the degree bound fails.
fn low_degree(bq: &BoundQuiver, v: VertexId) -> Option<(Option<ArrowId>, Option<ArrowId>)> {
    let (inc, out) = (bq.incoming(v), bq.outgoing(v));
    (inc.len() <= 1 && out.len() <= 1).then(|| (inc.first().copied(), out.first().copied()))
}

fn trivial_threads(bq: &BoundQuiver, kind: ThreadKind) -> Vec<Thread> {
    bq.vertex_ids()
        .filter(|&v| match low_degree(bq, v) {
            Some((Some(g), Some(b))) => match kind {
                ThreadKind::Permitted => !bq.has_relation(g, b),
                ThreadKind::Forbidden => bq.has_relation(g, b),
            },
            Some(_) => true,
            None => false,
        })
        .map(|v| Thread::trivial(kind, v))
        .collect()
}

fn to_arrows(ids: Vec<usize>) -> Vec<ArrowId> {
    ids.into_iter().map(ArrowId).collect()
}

pub fn permitted_threads(bq: &BoundQuiver) -> Result<Vec<Thread>, ThreadError> {
    require_gentle_admissible(bq)?;
    let graph = decompose_functional(&bq.permitted_successor_map());
    if let Some(cycle) = graph.cycles.first() {
        return Err(ThreadError::NotAdmissible(bq.names(&to_arrows(cycle.clone()))));
    }
    let mut threads: Vec<Thread> = graph
        .paths
        .into_iter()
        .map(|p| Thread::path(ThreadKind::Permitted, bq, to_arrows(p)))
        .collect();
    threads.extend(trivial_threads(bq, ThreadKind::Permitted));
    Ok(threads)
}

pub fn forbidden_threads(
    bq: &BoundQuiver,
) -> Result<(Vec<Thread>, Vec<CriticalCycle>), ThreadError> {
    require_gentle_admissible(bq)?;
    let graph = bq.relation_graph();
    let mut threads: Vec<Thread> = graph
        .paths
        .into_iter()
        .map(|p| Thread::path(ThreadKind::Forbidden, bq, to_arrows(p)))
        .collect();
    threads.extend(trivial_threads(bq, ThreadKind::Forbidden));
    let cycles = bq
        .critical_cycles()
        .into_iter()
        .map(|arrows| CriticalCycle { arrows })
        .collect();
    Ok((threads, cycles))
}

impl ThreadDecomposition {
    pub fn new(bq: &BoundQuiver) -> Result<Self, ThreadError> {
        let permitted = permitted_threads(bq)?;
        let (forbidden, critical_cycles) = forbidden_threads(bq)?;
        Ok(Self {
            permitted,
            forbidden,
            critical_cycles,
        })
    }

    /// One line per thread, then one per critical cycle.
    pub fn dump(&self, bq: &BoundQuiver) -> String {
        let mut out = String::new();
        for t in self.permitted.iter().chain(&self.forbidden) {
            let _ = writeln!(out, "{}", t.describe(bq));
        }
        for c in &self.critical_cycles {
            let _ = writeln!(out, "critical [{}]", bq.names(&c.arrows).join(" "));
        }
        out
    }

    fn threads(&self, kind: ThreadKind) -> &[Thread] {
        match kind {
            ThreadKind::Permitted => &self.permitted,
            ThreadKind::Forbidden => &self.forbidden,
        }
    }

    /// Indices of threads of `kind` ending (or starting) at `v`.
    pub(crate) fn at_vertex(&self, kind: ThreadKind, v: VertexId, ending: bool) -> Vec<usize> {
        self.threads(kind)
            .iter()
            .enumerate()
            .filter(|(_, t)| if ending { t.end == v } else { t.start == v })
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl From<bool> for Sign {
    fn from(b: bool) -> Self {
        if b {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Values of `σ` and `ε` on arrows and on trivial threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignAssignment {
    sigma_arrow: Vec<Sign>,
    epsilon_arrow: Vec<Sign>,
    /// `(σ, ε)` per trivial permitted thread, keyed by thread index.
    trivial_permitted: Vec<Option<(Sign, Sign)>>,
    trivial_forbidden: Vec<Option<(Sign, Sign)>>,
}

impl SignAssignment {
    pub fn sigma_arrow(&self, a: ArrowId) -> Sign {
        self.sigma_arrow[a.0]
    }

    pub fn epsilon_arrow(&self, a: ArrowId) -> Sign {
        self.epsilon_arrow[a.0]
    }

    fn trivial(&self, kind: ThreadKind, index: usize) -> (Sign, Sign) {
        let table = match kind {
            ThreadKind::Permitted => &self.trivial_permitted,
            ThreadKind::Forbidden => &self.trivial_forbidden,
        };
        table[index].expect("trivial thread has signs")
    }

    /// `σ` of thread `index` of `kind` in `threads`.
    pub fn sigma(&self, threads: &ThreadDecomposition, kind: ThreadKind, index: usize) -> Sign {
        let t = &threads.threads(kind)[index];
        match t.arrows.first() {
            Some(&a) => self.sigma_arrow(a),
            None => self.trivial(kind, index).0,
        }
    }

    pub fn epsilon(&self, threads: &ThreadDecomposition, kind: ThreadKind, index: usize) -> Sign {
        let t = &threads.threads(kind)[index];
        match t.arrows.last() {
            Some(&a) => self.epsilon_arrow(a),
            None => self.trivial(kind, index).1,
        }
    }

    /// Re-check every constraint; `Err` names the first one that fails.
    pub fn verify(&self, bq: &BoundQuiver, threads: &ThreadDecomposition) -> Result<(), String> {
        for v in bq.vertex_ids() {
            for (arrows, sign, what) in [
                (bq.outgoing(v), &self.sigma_arrow, "sigma"),
                (bq.incoming(v), &self.epsilon_arrow, "epsilon"),
            ] {
                if let [a, b] = arrows {
                    if a != b && sign[a.0] == sign[b.0] {
                        return Err(format!(
                            "{what}({}) = {what}({})",
                            bq.arrow_name(*a),
                            bq.arrow_name(*b)
                        ));
                    }
                }
            }
        }
        for a in bq.arrow_ids() {
            for b in bq.permitted_successors(a) {
                if self.sigma_arrow(b) != -self.epsilon_arrow(a) {
                    return Err(format!(
                        "sigma({}) != -epsilon({})",
                        bq.arrow_name(b),
                        bq.arrow_name(a)
                    ));
                }
            }
        }
        for v in bq.vertex_ids() {
            for ending in [true, false] {
                let p = threads.at_vertex(ThreadKind::Permitted, v, ending);
                let f = threads.at_vertex(ThreadKind::Forbidden, v, ending);
                let sign = |kind, i| {
                    if ending {
                        self.epsilon(threads, kind, i)
                    } else {
                        self.sigma(threads, kind, i)
                    }
                };
                let mut used = vec![false; f.len()];
                for &h in &p {
                    let want = -sign(ThreadKind::Permitted, h);
                    let hits: Vec<usize> = (0..f.len())
                        .filter(|&j| sign(ThreadKind::Forbidden, f[j]) == want)
                        .collect();
                    match hits.as_slice() {
                        [j] if !used[*j] => used[*j] = true,
                        _ => {
                            return Err(format!(
                                "no pairing of thread {}s at {}",
                                if ending { "end" } else { "start" },
                                bq.vertex_name(v)
                            ))
                        }
                    }
                }
                if used.iter().any(|u| !u) {
                    return Err(format!("unpaired forbidden thread at {}", bq.vertex_name(v)));
                }
            }
        }
        Ok(())
    }
}

/// Parity constraints `x = y` or `x = −y` over ±1 variables.
struct ParitySystem {
    adj: Vec<Vec<(usize, bool)>>,
}

impl ParitySystem {
    fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    fn opposite(&mut self, x: usize, y: usize) {
        self.adj[x].push((y, false));
        self.adj[y].push((x, false));
    }

    /// One solution, with each connected block's free sign drawn from `rng`.
    fn solve(&self, rng: &mut impl Rng) -> Option<Vec<bool>> {
        let n = self.adj.len();
        let mut value: Vec<Option<bool>> = vec![None; n];
        for root in 0..n {
            if value[root].is_some() {
                continue;
            }
            value[root] = Some(rng.gen());
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let vx = value[x].unwrap();
                for &(y, same) in &self.adj[x] {
                    let want = if same { vx } else { !vx };
                    match value[y] {
                        None => {
                            value[y] = Some(want);
                            queue.push_back(y);
                        }
                        Some(vy) if vy != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(value.into_iter().map(Option::unwrap).collect())
    }
}

/// Solve the `σ`, `ε` constraint system. Free signs are drawn from a
/// generator seeded with `seed`.
pub fn assign_signs(bq: &BoundQuiver, seed: u64) -> Result<SignAssignment, ThreadError> {
    let threads = ThreadDecomposition::new(bq)?;
    assign_signs_for(bq, &threads, seed)
}

pub fn assign_signs_for(
    bq: &BoundQuiver,
    threads: &ThreadDecomposition,
    seed: u64,
) -> Result<SignAssignment, ThreadError> {
    let na = bq.arrow_count();
    let sigma = |a: ArrowId| 2 * a.0;
    let epsilon = |a: ArrowId| 2 * a.0 + 1;
    // trivial threads get their own σ/ε variables after the arrow block
    let mut next = 2 * na;
    let mut trivial_var = |list: &[Thread]| -> Vec<Option<usize>> {
        list.iter()
            .map(|t| {
                t.is_trivial().then(|| {
                    next += 2;
                    next - 2
                })
            })
            .collect()
    };
    let p_var = trivial_var(&threads.permitted);
    let f_var = trivial_var(&threads.forbidden);
    let mut sys = ParitySystem::new(next);

    for v in bq.vertex_ids() {
        if let [a, b] = bq.outgoing(v) {
            sys.opposite(sigma(*a), sigma(*b));
        }
        if let [a, b] = bq.incoming(v) {
            sys.opposite(epsilon(*a), epsilon(*b));
        }
    }
    for a in bq.arrow_ids() {
        for b in bq.permitted_successors(a) {
            sys.opposite(sigma(b), epsilon(a));
        }
    }

    let var_of = |kind: ThreadKind, i: usize, ending: bool| -> usize {
        let (list, vars) = match kind {
            ThreadKind::Permitted => (&threads.permitted, &p_var),
            ThreadKind::Forbidden => (&threads.forbidden, &f_var),
        };
        let t = &list[i];
        match (ending, vars[i]) {
            (true, Some(base)) => base + 1,
            (false, Some(base)) => base,
            (true, None) => epsilon(*t.arrows.last().unwrap()),
            (false, None) => sigma(t.arrows[0]),
        }
    };

    for v in bq.vertex_ids() {
        for ending in [true, false] {
            let p = threads.at_vertex(ThreadKind::Permitted, v, ending);
            let f = threads.at_vertex(ThreadKind::Forbidden, v, ending);
            if p.len() != f.len() || p.len() > 2 {
                return Err(ThreadError::PairingMismatch {
                    vertex: bq.vertex_name(v).to_owned(),
                    permitted: p.len(),
                    forbidden: f.len(),
                });
            }
            let pv: Vec<usize> = p.iter().map(|&i| var_of(ThreadKind::Permitted, i, ending)).collect();
            let fv: Vec<usize> = f.iter().map(|&i| var_of(ThreadKind::Forbidden, i, ending)).collect();
            match (pv.as_slice(), fv.as_slice()) {
                ([x], [y]) => sys.opposite(*x, *y),
                ([x1, x2], [y1, y2]) => {
                    sys.opposite(*x1, *x2);
                    sys.opposite(*y1, *y2);
                }
                _ => {}
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = sys.solve(&mut rng).ok_or(ThreadError::SignConflict)?;
    let sign = |x: usize| Sign::from(values[x]);
    let trivial_signs = |vars: &[Option<usize>]| -> Vec<Option<(Sign, Sign)>> {
        vars.iter()
            .map(|v| v.map(|base| (sign(base), sign(base + 1))))
            .collect()
    };
    Ok(SignAssignment {
        sigma_arrow: bq.arrow_ids().map(|a| sign(sigma(a))).collect(),
        epsilon_arrow: bq.arrow_ids().map(|a| sign(epsilon(a))).collect(),
        trivial_permitted: trivial_signs(&p_var),
        trivial_forbidden: trivial_signs(&f_var),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(bq: &BoundQuiver, threads: &[Thread]) -> Vec<Vec<String>> {
        threads
            .iter()
            .filter(|t| !t.is_trivial())
            .map(|t| bq.names(&t.arrows))
            .collect()
    }

    #[test]
    fn quiver_a_permitted() {
        let q = fixtures::quiver_a();
        let p = permitted_threads(&q).unwrap();
        let mut got = names(&q, &p);
        got.sort();
        assert_eq!(
            got,
            vec![
                vec!["a2"],
                vec!["a3"],
                vec!["b1", "b2", "b3", "a1"],
                vec!["b4", "a0"],
            ]
        );
        assert_eq!(p.iter().filter(|t| t.is_trivial()).count(), 2);
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn quiver_a_forbidden() {
        let q = fixtures::quiver_a();
        let (f, cycles) = forbidden_threads(&q).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(q.names(&cycles[0].arrows), ["a0", "a1", "a2", "a3"]);
        let mut got = names(&q, &f);
        got.sort();
        assert_eq!(got, vec![vec!["b1"], vec!["b2"], vec!["b3"], vec!["b4"]]);
        // one trivial forbidden thread per vertex permitted threads end at
        assert_eq!(f.len(), 6);
    }

    #[test]
    fn kronecker_threads() {
        let q = fixtures::kronecker();
        let p = permitted_threads(&q).unwrap();
        assert_eq!(names(&q, &p), vec![vec!["alpha"], vec!["beta"]]);
        assert!(p.iter().all(|t| !t.is_trivial()));
        let (f, c) = forbidden_threads(&q).unwrap();
        assert_eq!(names(&q, &f), vec![vec!["alpha"], vec!["beta"]]);
        assert!(c.is_empty());
    }

    #[test]
    fn single_vertex_has_one_trivial_permitted_thread() {
        let q = BoundQuiver::builder("pt").vertex("x").build().unwrap();
        let p = permitted_threads(&q).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p[0].is_trivial());
    }

    #[test]
    fn full_relation_triangle() {
        let q = BoundQuiver::builder("tri")
            .vertices(["x", "y", "z"])
            .arrow("a", "x", "y")
            .arrow("b", "y", "z")
            .arrow("c", "z", "x")
            .relation("a", "b")
            .relation("b", "c")
            .relation("c", "a")
            .build()
            .unwrap();
        let (f, cycles) = forbidden_threads(&q).unwrap();
        assert!(f.iter().all(Thread::is_trivial));
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 3);
    }

    #[test]
    fn a3_with_relation_pairs_up() {
        // the vertex-pairing rule needs the trivial permitted thread at the
        // ends only, not in the middle where the composition is a relation
        let q = BoundQuiver::builder("a3")
            .vertices(["1", "2", "3"])
            .arrow("a", "1", "2")
            .arrow("b", "2", "3")
            .relation("a", "b")
            .build()
            .unwrap();
        let t = ThreadDecomposition::new(&q).unwrap();
        assert_eq!(t.permitted.len(), 4);
        assert_eq!(t.forbidden.len(), 4);
        let s = assign_signs_for(&q, &t, 3).unwrap();
        s.verify(&q, &t).unwrap();
    }

    #[test]
    fn kronecker_signs_forced_up_to_flip() {
        let q = fixtures::kronecker();
        let (a, b) = (ArrowId(0), ArrowId(1));
        let mut seen = std::collections::HashSet::new();
        for seed in 0..32 {
            let s = assign_signs(&q, seed).unwrap();
            assert_eq!(s.sigma_arrow(a), -s.sigma_arrow(b));
            assert_eq!(s.epsilon_arrow(a), -s.epsilon_arrow(b));
            seen.insert((s.sigma_arrow(a), s.epsilon_arrow(a)));
        }
        assert!(seen.len() > 1);
    }

    #[test]
    fn single_arrow_signs_free() {
        let q = BoundQuiver::builder("a2")
            .vertices(["x", "y"])
            .arrow("a", "x", "y")
            .build()
            .unwrap();
        let t = ThreadDecomposition::new(&q).unwrap();
        let assignments: std::collections::HashSet<_> = (0..16)
            .map(|seed| {
                let s = assign_signs_for(&q, &t, seed).unwrap();
                s.verify(&q, &t).unwrap();
                (s.sigma_arrow(ArrowId(0)), s.epsilon_arrow(ArrowId(0)))
            })
            .collect();
        assert!(assignments.len() > 1);
    }

    #[test]
    fn quiver_a_sign_constraint() {
        let q = fixtures::quiver_a();
        let (a1, b3) = (q.arrow_by_name("a1").unwrap(), q.arrow_by_name("b3").unwrap());
        let t = ThreadDecomposition::new(&q).unwrap();
        for seed in 0..20 {
            let s = assign_signs_for(&q, &t, seed).unwrap();
            assert_eq!(s.sigma_arrow(a1), -s.epsilon_arrow(b3));
            s.verify(&q, &t).unwrap();
        }
    }

    #[test]
    fn rejects_non_gentle_and_non_admissible() {
        let star = BoundQuiver::builder("star")
            .vertices(["c", "x", "y", "z"])
            .arrow("a", "c", "x")
            .arrow("b", "c", "y")
            .arrow("d", "c", "z")
            .build()
            .unwrap();
        assert!(matches!(permitted_threads(&star), Err(ThreadError::NotGentle(_))));
        let cyc = BoundQuiver::builder("cyc")
            .vertices(["x", "y"])
            .arrow("a", "x", "y")
            .arrow("b", "y", "x")
            .build()
            .unwrap();
        assert!(matches!(forbidden_threads(&cyc), Err(ThreadError::NotAdmissible(_))));
    }

    #[test]
    fn dump_is_stable() {
        let q = fixtures::kronecker();
        let t = ThreadDecomposition::new(&q).unwrap();
        assert_eq!(
            t.dump(&q),
            "permitted [alpha] x -> y\n\
             permitted [beta] x -> y\n\
             forbidden [alpha] x -> y\n\
             forbidden [beta] x -> y\n"
        );
    }
}
