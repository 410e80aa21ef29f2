//! Path/cycle decomposition of a partial injection on `0..n`.

/// Maximal paths and cycles of a graph where every node has at most one
/// successor and at most one predecessor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctionalDecomposition {
    /// Maximal paths in order of their first node; isolated nodes are
    /// paths of length one.
    pub paths: Vec<Vec<usize>>,
    /// Cycles, each starting at its smallest node, in order of that node.
    pub cycles: Vec<Vec<usize>>,
}

/// Split the graph of `succ` into maximal paths and cycles.
///
/// `succ` must be injective on its support. If it is not, nodes are assigned
/// to the first path that reaches them and the result no longer partitions
/// edges.
pub fn decompose_functional(succ: &[Option<usize>]) -> FunctionalDecomposition {
    let n = succ.len();
    let mut has_pred = vec![false; n];
    for &s in succ.iter().flatten() {
        has_pred[s] = true;
    }
    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    for start in (0..n).filter(|&v| !has_pred[v]) {
        let mut path = Vec::new();
        let mut cur = Some(start);
        while let Some(v) = cur {
            if seen[v] {
                break;
            }
            seen[v] = true;
            path.push(v);
            cur = succ[v];
        }
        paths.push(path);
    }
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cycle.push(v);
            match succ[v] {
                Some(w) => v = w,
                None => break,
            }
        }
        cycles.push(cycle);
    }
    FunctionalDecomposition { paths, cycles }
}
