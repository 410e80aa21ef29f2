//! The AG-invariant `φ` of a gentle algebra.
//!
//! The walk alternates between permitted and forbidden threads: from a
//! permitted thread `H` ending at `v`, step back along the forbidden thread
//! `F` ending at `v` with `ε(F) = −ε(H)`, then continue with the permitted
//! thread starting at `s(F)` whose `σ` is `−σ(F)`. Each closed orbit of
//! permitted threads contributes a pair `(n, m)`: `n` threads visited and `m`
//! forbidden arrows traversed. Every critical cycle of length `ℓ` adds `(0, ℓ)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::quiver::BoundQuiver;
use crate::threads::{assign_signs_for, SignAssignment, ThreadDecomposition, ThreadError, ThreadKind};

/// A finite multiset of pairs `(n, m)` of naturals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AgInvariant {
    counts: BTreeMap<(u64, u64), u64>,
}

impl AgInvariant {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, pair: (u64, u64), multiplicity: u64) {
        if multiplicity > 0 {
            *self.counts.entry(pair).or_insert(0) += multiplicity;
        }
    }

    /// `φ(n, m)`: how often the pair occurs.
    pub fn multiplicity(&self, n: u64, m: u64) -> u64 {
        self.counts.get(&(n, m)).copied().unwrap_or(0)
    }

    /// Distinct pairs with their multiplicities, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = ((u64, u64), u64)> + '_ {
        self.counts.iter().map(|(&p, &c)| (p, c))
    }

    /// Every pair repeated by multiplicity, sorted.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.iter()
            .flat_map(|(p, c)| std::iter::repeat_n(p, c as usize))
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Parse the `k.(a,b)* + (c,d)*` notation produced by [`format_ag`].
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        let mut out = Self::new();
        if text == "0" {
            return Some(out);
        }
        for term in text.split('+') {
            let term = term.trim();
            let (mult, rest) = match term.split_once(".(") {
                Some((k, rest)) => (k.trim().parse().ok()?, rest),
                None => (1, term.strip_prefix('(')?),
            };
            let inner = rest.strip_suffix(")*")?;
            let (a, b) = inner.split_once(',')?;
            out.add((a.trim().parse().ok()?, b.trim().parse().ok()?), mult);
        }
        Some(out)
    }
}

impl FromIterator<(u64, u64)> for AgInvariant {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut out = Self::new();
        for p in iter {
            out.add(p, 1);
        }
        out
    }
}

impl fmt::Display for AgInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ag(self))
    }
}

impl Serialize for AgInvariant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ag(self))
    }
}

/// Multiset equality.
pub fn ag_equal(a: &AgInvariant, b: &AgInvariant) -> bool {
    a == b
}

/// Terms in lexicographic order joined by `" + "`; multiplicity `k > 1`
/// renders as `k.(a,b)*`; the empty multiset renders as `0`.
pub fn format_ag(a: &AgInvariant) -> String {
    if a.is_empty() {
        return "0".to_owned();
    }
    a.iter()
        .map(|((n, m), k)| {
            if k == 1 {
                format!("({n},{m})*")
            } else {
                format!("{k}.({n},{m})*")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AgError {
    #[error(transparent)]
    Threads(#[from] ThreadError),
    #[error("quiver must be connected; found {0} components")]
    Disconnected(usize),
    #[error("pairing step from permitted thread {thread} has {candidates} candidates (internal error)")]
    Pairing { thread: String, candidates: usize },
}

/// One closed orbit of the walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkOrbit {
    /// Indices into `ThreadDecomposition::permitted`, in visiting order.
    pub permitted: Vec<usize>,
    /// Indices into `ThreadDecomposition::forbidden`.
    pub forbidden: Vec<usize>,
    pub forbidden_length: u64,
}

impl WalkOrbit {
    pub fn pair(&self) -> (u64, u64) {
        (self.permitted.len() as u64, self.forbidden_length)
    }
}

/// Run the walk for a fixed sign assignment. Permitted threads are used as
/// starting points in their canonical order.
pub fn walk_orbits(
    bq: &BoundQuiver,
    threads: &ThreadDecomposition,
    signs: &SignAssignment,
) -> Result<Vec<WalkOrbit>, AgError> {
    let pick = |kind: ThreadKind, v, ending: bool, want, from: usize| -> Result<usize, AgError> {
        let hits: Vec<usize> = threads
            .at_vertex(kind, v, ending)
            .into_iter()
            .filter(|&i| {
                let s = if ending {
                    signs.epsilon(threads, kind, i)
                } else {
                    signs.sigma(threads, kind, i)
                };
                s == want
            })
            .collect();
        match hits.as_slice() {
            [i] => Ok(*i),
            _ => Err(AgError::Pairing {
                thread: threads.permitted[from].describe(bq),
                candidates: hits.len(),
            }),
        }
    };

    let mut used = vec![false; threads.permitted.len()];
    let mut orbits = Vec::new();
    for h0 in 0..threads.permitted.len() {
        if used[h0] {
            continue;
        }
        let mut orbit = WalkOrbit {
            permitted: Vec::new(),
            forbidden: Vec::new(),
            forbidden_length: 0,
        };
        let mut h = h0;
        loop {
            if used[h] {
                // the step map is a bijection, so the first repeat is h0
                if h != h0 {
                    return Err(AgError::Pairing {
                        thread: threads.permitted[h].describe(bq),
                        candidates: 2,
                    });
                }
                break;
            }
            used[h] = true;
            orbit.permitted.push(h);
            let end = threads.permitted[h].end;
            let eps = -signs.epsilon(threads, ThreadKind::Permitted, h);
            let f = pick(ThreadKind::Forbidden, end, true, eps, h)?;
            orbit.forbidden.push(f);
            orbit.forbidden_length += threads.forbidden[f].len() as u64;
            let start = threads.forbidden[f].start;
            let sig = -signs.sigma(threads, ThreadKind::Forbidden, f);
            h = pick(ThreadKind::Permitted, start, false, sig, h)?;
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// The AG-invariant of a connected gentle admissible bound quiver.
pub fn ag_invariant(bq: &BoundQuiver, seed: u64) -> Result<AgInvariant, AgError> {
    if !bq.is_connected() {
        return Err(AgError::Disconnected(bq.connected_components().len()));
    }
    let threads = ThreadDecomposition::new(bq)?;
    let signs = assign_signs_for(bq, &threads, seed)?;
    let orbits = walk_orbits(bq, &threads, &signs)?;
    let mut phi: AgInvariant = orbits.iter().map(WalkOrbit::pair).collect();
    for c in &threads.critical_cycles {
        phi.add((0, c.len() as u64), 1);
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn inv(pairs: &[(u64, u64)]) -> AgInvariant {
        pairs.iter().copied().collect()
    }

    #[test]
    fn quiver_a() {
        let phi = ag_invariant(&fixtures::quiver_a(), 0).unwrap();
        assert_eq!(phi, inv(&[(3, 1), (3, 3), (0, 4)]));
        assert_eq!(format_ag(&phi), "(0,4)* + (3,1)* + (3,3)*");
    }

    #[test]
    fn quiver_b() {
        let phi = ag_invariant(&fixtures::quiver_b(), 0).unwrap();
        assert_eq!(phi, inv(&[(2, 2), (4, 2), (0, 4)]));
    }

    #[test]
    fn kronecker() {
        let phi = ag_invariant(&fixtures::kronecker(), 0).unwrap();
        assert_eq!(phi, inv(&[(1, 1), (1, 1)]));
        assert_eq!(format_ag(&phi), "2.(1,1)*");
    }

    #[test]
    fn linear_a_n() {
        // hereditary A_n has φ = (n+1, n−1)
        for n in 2..7usize {
            let mut b = BoundQuiver::builder("an");
            for i in 0..n {
                b = b.vertex(format!("v{i}"));
            }
            for i in 1..n {
                b = b.arrow(format!("a{i}"), format!("v{}", i - 1), format!("v{i}"));
            }
            let phi = ag_invariant(&b.build().unwrap(), 0).unwrap();
            assert_eq!(phi, inv(&[(n as u64 + 1, n as u64 - 1)]), "A_{n}");
        }
    }

    #[test]
    fn oriented_two_cycle_with_one_relation() {
        let q = BoundQuiver::builder("c2")
            .vertices(["x", "y"])
            .arrow("a", "x", "y")
            .arrow("b", "y", "x")
            .relation("a", "b")
            .build()
            .unwrap();
        assert_eq!(ag_invariant(&q, 0).unwrap(), inv(&[(1, 0), (1, 2)]));
    }

    #[test]
    fn equality_and_formatting() {
        let a = inv(&[(3, 1), (3, 3), (0, 4)]);
        let b = inv(&[(2, 2), (4, 2), (0, 4)]);
        assert!(!ag_equal(&a, &b));
        assert!(ag_equal(&a, &inv(&[(0, 4), (3, 3), (3, 1)])));
        assert!(ag_equal(&AgInvariant::new(), &AgInvariant::new()));
        assert_eq!(format_ag(&AgInvariant::new()), "0");
        assert_eq!(format_ag(&inv(&[(1, 1), (1, 1)])), "2.(1,1)*");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "2.(1,1)*", "(0,4)* + (3,1)* + (3,3)*"] {
            assert_eq!(format_ag(&AgInvariant::parse(s).unwrap()), s);
        }
        assert!(AgInvariant::parse("(1,2").is_none());
    }

    #[test]
    fn disconnected_input_rejected() {
        let q = crate::parse_bound_quiver(&format!("{}vertex lonely\n", fixtures::QUIVER_A)).unwrap();
        assert!(matches!(ag_invariant(&q, 0), Err(AgError::Disconnected(2))));
    }
}
