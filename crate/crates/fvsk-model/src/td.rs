//! Tree decompositions: validation, a min-degree heuristic and the PACE
//! `.td` format.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::error::{ModelError, Result};
use crate::graph::LabeledGraph;
use crate::text;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Number of graph vertices the decomposition talks about.
    pub n: usize,
    /// Each bag sorted ascending.
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn max_bag(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.max_bag().saturating_sub(1)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// `nb - 1` edges connecting all bags.
    fn check_tree(&self) -> std::result::Result<(), String> {
        let nb = self.bags.len();
        if self.edges.len() + 1 != nb {
            return Err(format!("{} tree edges for {nb} bags", self.edges.len()));
        }
        let adj = self.tree_adjacency();
        let mut seen = vec![false; nb];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        match seen.iter().all(|&s| s) {
            true => Ok(()),
            false => Err("bag tree is not connected".into()),
        }
    }

    /// Checks the tree shape and the three decomposition axioms against `g`.
    pub fn validate(&self, g: &LabeledGraph) -> Result<()> {
        let bad = |m: String| Err(ModelError::InvalidDecomposition(m));
        if self.bags.is_empty() {
            return bad("no bags".into());
        }
        if self.n != g.n {
            return bad(format!("decomposition for {} vertices, graph has {}", self.n, g.n));
        }
        if let Err(m) = self.check_tree() {
            return bad(m);
        }
        let adj = self.tree_adjacency();
        let mut holders = vec![Vec::new(); g.n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n {
                    return bad(format!("bag {} holds unknown vertex {}", i + 1, v + 1));
                }
                holders[v].push(i);
            }
        }
        if let Some(v) = holders.iter().position(Vec::is_empty) {
            return bad(format!("vertex coverage: vertex {} is in no bag", v + 1));
        }
        let sets: Vec<HashSet<usize>> = self.bags.iter().map(|b| b.iter().copied().collect()).collect();
        for &(u, v) in &g.edges {
            if !holders[u].iter().any(|&i| sets[i].contains(&v)) {
                return bad(format!("edge coverage: edge {} {} is in no bag", u + 1, v + 1));
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            let inside: HashSet<usize> = hs.iter().copied().collect();
            let mut reached = HashSet::from([hs[0]]);
            let mut stack = vec![hs[0]];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if inside.contains(&y) && reached.insert(y) {
                        stack.push(y);
                    }
                }
            }
            if reached.len() != inside.len() {
                return bad(format!("connectivity: bags of vertex {} are not a subtree", v + 1));
            }
        }
        Ok(())
    }
}

/// Min-degree elimination ordering turned into a decomposition. Bag `i` is
/// the eliminated vertex plus its neighbours at that time; its parent is the
/// bag of the neighbour eliminated first afterwards.
pub fn greedy_td(g: &LabeledGraph) -> TreeDecomposition {
    let n = g.n;
    if n == 0 {
        return TreeDecomposition { n, bags: vec![Vec::new()], edges: Vec::new() };
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(u, v) in &g.edges {
        if u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    let mut alive = vec![true; n];
    let mut order_pos = vec![0usize; n];
    let mut bag_nbrs: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut elim = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (adj[v].len(), v)).unwrap();
        alive[v] = false;
        order_pos[v] = step;
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &nb {
            adj[a].remove(&v);
            for &b in &nb {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        adj[v].clear();
        elim.push(v);
        bag_nbrs.push(nb);
    }
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in elim.iter().enumerate() {
        let mut bag = bag_nbrs[i].clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        match bag_nbrs[i].iter().map(|&w| order_pos[w]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition { n, bags, edges }
}

/// Parses PACE-2017 `.td` text. Bag ids must be exactly `1..=num_bags`.
pub fn parse_td(input: &str) -> Result<TreeDecomposition> {
    let mut lines = text::lines(input);
    let header = lines.next().ok_or_else(|| ModelError::parse(0, "empty input"))?;
    header.expect_len(5)?;
    if header.toks[0] != "s" || header.toks[1] != "td" {
        return Err(header.err("expected header 's td <bags> <max-bag> <n>'"));
    }
    let nb = header.int(2)?;
    let max_bag = header.int(3)?;
    let n = header.int(4)?;
    if nb == 0 {
        return Err(header.err("no bags"));
    }
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    let mut edge_set = HashSet::new();
    for line in lines {
        if line.toks[0] == "b" {
            if !edges.is_empty() {
                return Err(line.err("bag line after tree edges"));
            }
            let id = line.int(1)?;
            if id == 0 || id > nb {
                return Err(line.err(format!("bag id {id} outside 1..{nb}")));
            }
            if bags.len() < nb {
                bags.resize(nb, None);
            }
            if bags[id - 1].is_some() {
                return Err(line.err(format!("bag {id} defined twice")));
            }
            let mut bag = Vec::with_capacity(line.toks.len() - 2);
            for i in 2..line.toks.len() {
                let v = line.int(i)?;
                if v == 0 || v > n {
                    return Err(line.err(format!("vertex {v} outside 1..{n}")));
                }
                bag.push(v - 1);
            }
            bag.sort_unstable();
            if bag.windows(2).any(|w| w[0] == w[1]) {
                return Err(line.err("repeated vertex in bag"));
            }
            if bag.len() > max_bag {
                return Err(line.err(format!("bag of size {} exceeds declared {max_bag}", bag.len())));
            }
            bags[id - 1] = Some(bag);
        } else {
            line.expect_len(2)?;
            let (a, b) = (line.int(0)?, line.int(1)?);
            for x in [a, b] {
                if x == 0 || x > nb {
                    return Err(line.err(format!("bag id {x} outside 1..{nb}")));
                }
            }
            if a == b {
                return Err(line.err("tree edge is a loop"));
            }
            if !edge_set.insert((a.min(b), a.max(b))) {
                return Err(line.err("duplicate tree edge"));
            }
            edges.push((a - 1, b - 1));
        }
    }
    if bags.len() < nb {
        bags.resize(nb, None);
    }
    let mut out = Vec::with_capacity(nb);
    for (i, b) in bags.into_iter().enumerate() {
        out.push(b.ok_or_else(|| ModelError::parse(0, format!("missing bag id {}", i + 1)))?);
    }
    let td = TreeDecomposition { n, bags: out, edges };
    if td.max_bag() != max_bag {
        return Err(ModelError::parse(1, format!("declared max bag size {max_bag}, actual {}", td.max_bag())));
    }
    td.check_tree().map_err(|m| ModelError::parse(0, m))?;
    Ok(td)
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let mut out = format!("s td {} {} {}\n", td.bags.len(), td.max_bag(), td.n);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}
