//! Two independent forest tests over a vertex subset of a multigraph. A
//! repeated edge is a cycle of length two in both.

use fvsk_model::LabeledGraph;

/// Union-find over the edges with both ends kept.
pub fn is_forest_uf(g: &LabeledGraph, keep: &[bool]) -> bool {
    let mut parent: Vec<usize> = (0..g.n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v) in &g.edges {
        if !(keep[u] && keep[v]) {
            continue;
        }
        if u == v {
            return false;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Iterative DFS that remembers the edge it arrived by, so a parallel edge
/// back to the parent is reported.
pub fn is_forest_dfs(g: &LabeledGraph, keep: &[bool]) -> bool {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n];
    for (id, &(u, v)) in g.edges.iter().enumerate() {
        if keep[u] && keep[v] {
            if u == v {
                return false;
            }
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
    }
    let mut seen = vec![false; g.n];
    for s in 0..g.n {
        if !keep[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, usize::MAX)];
        while let Some((x, via)) = stack.pop() {
            for &(y, id) in &adj[x] {
                if id == via {
                    continue;
                }
                if seen[y] {
                    return false;
                }
                seen[y] = true;
                stack.push((y, id));
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use fvsk_model::graph::named;

    #[test]
    fn both_agree_on_basics() {
        let tri = named::triangle();
        let all = vec![true; 3];
        assert!(!is_forest_uf(&tri, &all) && !is_forest_dfs(&tri, &all));
        let drop = [true, true, false];
        assert!(is_forest_uf(&tri, &drop) && is_forest_dfs(&tri, &drop));
        let mut double = named::path(2);
        double.add_edge(0, 1);
        assert!(!is_forest_uf(&double, &[true, true]));
        assert!(!is_forest_dfs(&double, &[true, true]));
    }
}
