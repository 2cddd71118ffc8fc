//! Tree-decompositions of adhesion at most one, built from the blocks of a
//! graph (maximal 2-vertex-connected pieces, bridges, and isolated vertices).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::ExtMultigraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTree {
    parts: Vec<(String, BTreeSet<String>)>,
    edges: Vec<(usize, usize)>,
}

impl BlockTree {
    /// A decomposition from explicit parts and tree edges (by part id). Only
    /// the references are checked here; see [`BlockTree::validate`].
    pub fn new(
        parts: Vec<(String, BTreeSet<String>)>,
        edges: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self> {
        let index: BTreeMap<&str, usize> = parts
            .iter()
            .enumerate()
            .map(|(i, (id, _))| (id.as_str(), i))
            .collect();
        if index.len() != parts.len() {
            return Err(Error::InvalidBlockTree("duplicate part id".into()));
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidBlockTree(format!("unknown part `{id}`")))
        };
        let edges = edges
            .into_iter()
            .map(|(a, b)| Ok((lookup(&a)?, lookup(&b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockTree { parts, edges })
    }

    pub fn parts(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.parts.iter().map(|(id, vs)| (id.as_str(), vs))
    }

    pub fn part(&self, id: &str) -> Option<&BTreeSet<String>> {
        self.parts.iter().find(|(p, _)| p == id).map(|(_, vs)| vs)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn tree_edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.parts[a].0.as_str(), self.parts[b].0.as_str()))
    }

    /// `V_a ∩ V_b` for a tree edge `ab`.
    pub fn adhesions(&self) -> impl Iterator<Item = BTreeSet<String>> + '_ {
        self.edges.iter().map(|&(a, b)| {
            self.parts[a]
                .1
                .intersection(&self.parts[b].1)
                .cloned()
                .collect()
        })
    }

    /// The subgraph of `g` induced by part `id`.
    pub fn part_graph(&self, g: &ExtMultigraph, id: &str) -> Result<ExtMultigraph> {
        let vs = self
            .part(id)
            .ok_or_else(|| Error::InvalidBlockTree(format!("unknown part `{id}`")))?;
        Ok(g.induced(vs.iter().map(String::as_str)))
    }

    /// Checks the tree-decomposition axioms, adhesion at most one, and that
    /// the induced part subgraphs partition the edges of `g`.
    pub fn validate(&self, g: &ExtMultigraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidBlockTree(msg));
        let n = self.parts.len();
        if n > 0 && self.edges.len() != n - 1 {
            return bad(format!(
                "{n} parts need {} tree edges, got {}",
                n - 1,
                self.edges.len()
            ));
        }
        let mut dsu = Dsu::new(n);
        for &(a, b) in &self.edges {
            if !dsu.union(a, b) {
                return bad("tree edges contain a cycle".into());
            }
        }
        let mut covered = BTreeSet::new();
        for (id, vs) in &self.parts {
            for v in vs {
                if !g.has_vertex(v) {
                    return bad(format!("part `{id}` contains unknown vertex `{v}`"));
                }
                covered.insert(v.clone());
            }
        }
        if &covered != g.vertices() {
            return bad("parts do not cover every vertex".into());
        }
        for (p, _) in g.edges() {
            let holders = self
                .parts
                .iter()
                .filter(|(_, vs)| vs.contains(p.lo()) && vs.contains(p.hi()))
                .count();
            if holders != 1 {
                return bad(format!("pair {p} lies in {holders} parts"));
            }
        }
        for v in g.vertices() {
            let holding: Vec<usize> = (0..n).filter(|&i| self.parts[i].1.contains(v)).collect();
            let mut sub = Dsu::new(n);
            for &(a, b) in &self.edges {
                if self.parts[a].1.contains(v) && self.parts[b].1.contains(v) {
                    sub.union(a, b);
                }
            }
            if holding.iter().any(|&i| sub.find(i) != sub.find(holding[0])) {
                return bad(format!(
                    "parts containing `{v}` are not connected in the tree"
                ));
            }
        }
        for (adhesion, &(a, b)) in self.adhesions().zip(&self.edges) {
            if adhesion.len() > 1 {
                return bad(format!(
                    "parts `{}` and `{}` share {} vertices",
                    self.parts[a].0,
                    self.parts[b].0,
                    adhesion.len()
                ));
            }
        }
        Ok(())
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Vertex sets of the blocks of the simple support of `g`, one singleton per
/// isolated vertex, sorted.
pub fn blocks(g: &ExtMultigraph) -> Vec<BTreeSet<String>> {
    let names: Vec<&str> = g.vertices().iter().map(String::as_str).collect();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let adj: Vec<Vec<usize>> = {
        let a = g.adjacency();
        names
            .iter()
            .map(|v| a[v].iter().map(|w| index[w]).collect())
            .collect()
    };
    const UNSEEN: usize = usize::MAX;
    let n = names.len();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out: Vec<BTreeSet<String>> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        if adj[root].is_empty() {
            out.push(BTreeSet::from([names[root].to_string()]));
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, UNSEEN, 0)];
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        while let Some(top) = stack.last_mut() {
            let (v, parent, pos) = *top;
            if pos < adj[v].len() {
                top.2 += 1;
                let w = adj[v][pos];
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((v, w));
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
                continue;
            }
            stack.pop();
            if parent == UNSEEN {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let mut block = BTreeSet::new();
                while let Some((a, b)) = edge_stack.pop() {
                    block.insert(names[a].to_string());
                    block.insert(names[b].to_string());
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                out.push(block);
            }
        }
    }
    out.sort();
    out
}

/// The block decomposition of `g` arranged as a tree: blocks sharing a cut
/// vertex are joined to the first block containing it, and components are
/// chained through their first blocks (empty adhesion). Parts are named
/// `B0`, `B1`, ... in sorted order.
pub fn block_tree(g: &ExtMultigraph) -> BlockTree {
    let blocks = blocks(g);
    let mut holders: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        for v in b {
            holders.entry(v.as_str()).or_default().push(i);
        }
    }
    let mut edges = Vec::new();
    let mut dsu = Dsu::new(blocks.len());
    for list in holders.values() {
        for &j in &list[1..] {
            edges.push((list[0], j));
            dsu.union(list[0], j);
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..blocks.len() {
        if dsu.find(i) == i {
            roots.push(i);
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    edges.sort_unstable();
    let parts = blocks
        .into_iter()
        .enumerate()
        .map(|(i, b)| (format!("B{i}"), b))
        .collect();
    BlockTree { parts, edges }
}
