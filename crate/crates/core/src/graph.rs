//! Finite multigraphs whose edge multiplicities live in `ℕ ∪ {ω}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::ext::ExtNat;

/// An unordered pair of distinct vertices, stored with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    lo: String,
    hi: String,
}

impl Pair {
    /// Panics if `a == b`; use [`Pair::try_new`] for untrusted input.
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Pair {
        Pair::try_new(a, b).expect("a pair needs two distinct vertices")
    }

    pub fn try_new(a: impl Into<String>, b: impl Into<String>) -> Result<Pair> {
        let (a, b) = (a.into(), b.into());
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Pair { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(Pair { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(Error::Loop(a)),
        }
    }

    pub fn lo(&self) -> &str {
        &self.lo
    }

    pub fn hi(&self) -> &str {
        &self.hi
    }

    pub fn contains(&self, v: &str) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: &str) -> Option<&str> {
        if self.lo == v {
            Some(&self.hi)
        } else if self.hi == v {
            Some(&self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// A finite multigraph without loops. Absent pairs have multiplicity 0; only
/// positive multiplicities are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtMultigraph {
    vertices: BTreeSet<String>,
    mult: BTreeMap<Pair, ExtNat>,
}

impl ExtMultigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from vertices and edges; edge endpoints are added as
    /// vertices. Repeated pairs accumulate.
    pub fn from_edges<'a>(
        vertices: impl IntoIterator<Item = &'a str>,
        edges: impl IntoIterator<Item = (&'a str, &'a str, ExtNat)>,
    ) -> Result<Self> {
        let mut g = ExtMultigraph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for (u, v, m) in edges {
            g.add_vertex(u);
            g.add_vertex(v);
            g.add_mult(u, v, m)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: impl Into<String>) {
        self.vertices.insert(v.into());
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn vertices(&self) -> &BTreeSet<String> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn require_vertex(&self, v: &str) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    /// Sets the multiplicity of `uv`, replacing the previous value.
    pub fn set_mult(&mut self, u: &str, v: &str, m: ExtNat) -> Result<()> {
        self.require_vertex(u)?;
        self.require_vertex(v)?;
        let p = Pair::try_new(u, v)?;
        if m.is_zero() {
            self.mult.remove(&p);
        } else {
            self.mult.insert(p, m);
        }
        Ok(())
    }

    /// Adds `m` to the multiplicity of `uv`.
    pub fn add_mult(&mut self, u: &str, v: &str, m: ExtNat) -> Result<()> {
        let cur = self.mult(u, v);
        self.set_mult(u, v, cur + m)
    }

    pub fn mult(&self, u: &str, v: &str) -> ExtNat {
        match Pair::try_new(u, v) {
            Ok(p) => self.mult_of(&p),
            Err(_) => ExtNat::ZERO,
        }
    }

    pub fn mult_of(&self, p: &Pair) -> ExtNat {
        self.mult.get(p).copied().unwrap_or_default()
    }

    /// Pairs with positive multiplicity, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (&Pair, ExtNat)> + '_ {
        self.mult.iter().map(|(p, m)| (p, *m))
    }

    pub fn edge_count(&self) -> usize {
        self.mult.len()
    }

    pub fn total_mult(&self) -> ExtNat {
        self.mult.values().sum()
    }

    /// Sum of all finite multiplicities.
    pub fn finite_total(&self) -> u64 {
        self.mult
            .values()
            .filter_map(|m| m.finite())
            .fold(0u64, u64::saturating_add)
    }

    pub fn has_omega(&self) -> bool {
        self.mult.values().any(|m| m.is_omega())
    }

    pub fn neighbors<'a>(&'a self, v: &'a str) -> impl Iterator<Item = (&'a str, ExtNat)> + 'a {
        self.mult
            .iter()
            .filter_map(move |(p, m)| p.other(v).map(|w| (w, *m)))
    }

    /// Adjacency lists with sorted neighbour lists.
    pub fn adjacency(&self) -> BTreeMap<&str, Vec<&str>> {
        let mut adj: BTreeMap<&str, Vec<&str>> = self
            .vertices
            .iter()
            .map(|v| (v.as_str(), Vec::new()))
            .collect();
        for p in self.mult.keys() {
            adj.get_mut(p.lo()).unwrap().push(p.hi());
            adj.get_mut(p.hi()).unwrap().push(p.lo());
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        adj
    }

    /// Induced subgraph `g[vs]`; unknown vertices are ignored.
    pub fn induced<'a>(&self, vs: impl IntoIterator<Item = &'a str>) -> ExtMultigraph {
        let keep: BTreeSet<String> = vs
            .into_iter()
            .filter(|v| self.has_vertex(v))
            .map(str::to_string)
            .collect();
        let mult = self
            .mult
            .iter()
            .filter(|(p, _)| keep.contains(p.lo()) && keep.contains(p.hi()))
            .map(|(p, m)| (p.clone(), *m))
            .collect();
        ExtMultigraph {
            vertices: keep,
            mult,
        }
    }

    /// `g - vs`.
    pub fn without_vertices(&self, vs: &BTreeSet<String>) -> ExtMultigraph {
        self.induced(
            self.vertices
                .iter()
                .filter(|v| !vs.contains(*v))
                .map(String::as_str),
        )
    }

    /// `h ⊆ self`: vertex sets nest and every multiplicity of `h` is bounded by
    /// the corresponding multiplicity here.
    pub fn contains_subgraph(&self, h: &ExtMultigraph) -> bool {
        h.vertices.is_subset(&self.vertices) && h.edges().all(|(p, m)| m <= self.mult_of(p))
    }

    /// Connected components under edges of positive multiplicity, sorted.
    pub fn components(&self) -> Vec<BTreeSet<String>> {
        let adj = self.adjacency();
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut out = Vec::new();
        for v in &self.vertices {
            if seen.contains(v.as_str()) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([v.as_str()]);
            seen.insert(v);
            while let Some(u) = queue.pop_front() {
                comp.insert(u.to_string());
                for &w in &adj[u] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex sets of components relabelled by `rename`, e.g. for copies.
    pub fn relabel(&self, rename: impl Fn(&str) -> String) -> Result<ExtMultigraph> {
        let mut g = ExtMultigraph::new();
        for v in &self.vertices {
            g.add_vertex(rename(v));
        }
        for (p, m) in self.edges() {
            g.add_mult(&rename(p.lo()), &rename(p.hi()), m)?;
        }
        Ok(g)
    }

    /// Union of two graphs; multiplicities of shared pairs add up.
    pub fn union(&self, other: &ExtMultigraph) -> ExtMultigraph {
        let mut g = self.clone();
        for v in &other.vertices {
            g.add_vertex(v.clone());
        }
        for (p, m) in other.edges() {
            let cur = g.mult_of(p);
            g.mult.insert(p.clone(), cur + m);
        }
        g
    }
}

/// A set of vertex pairs `K`; `||K||` is every edge spanned by those pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Skeleton {
    pairs: BTreeSet<Pair>,
}

impl Skeleton {
    pub fn new(g: &ExtMultigraph, pairs: impl IntoIterator<Item = Pair>) -> Result<Self> {
        let pairs: BTreeSet<Pair> = pairs.into_iter().collect();
        for p in &pairs {
            g.require_vertex(p.lo())?;
            g.require_vertex(p.hi())?;
        }
        Ok(Skeleton { pairs })
    }

    pub fn empty() -> Self {
        Skeleton::default()
    }

    pub fn pairs(&self) -> &BTreeSet<Pair> {
        &self.pairs
    }

    pub fn contains(&self, p: &Pair) -> bool {
        self.pairs.contains(p)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// `G - ||K||`.
pub fn delete_skeleton(g: &ExtMultigraph, k: &Skeleton) -> ExtMultigraph {
    let mut h = g.clone();
    for p in k.pairs() {
        h.mult.remove(p);
    }
    h
}

pub fn components(g: &ExtMultigraph) -> Vec<BTreeSet<String>> {
    g.components()
}

/// `N(C)`: the vertices of `separator` adjacent to the component `c` of
/// `g - separator`.
pub fn neighbors_in_rest(
    g: &ExtMultigraph,
    c: &BTreeSet<String>,
    separator: &BTreeSet<String>,
) -> Result<BTreeSet<String>> {
    for v in c.iter().chain(separator) {
        g.require_vertex(v)?;
    }
    if c.is_empty() || !c.is_disjoint(separator) {
        return Err(Error::NotAComponent);
    }
    let rest = g.without_vertices(separator);
    if !rest.components().iter().any(|comp| comp == c) {
        return Err(Error::NotAComponent);
    }
    let mut out = BTreeSet::new();
    for v in c {
        for (w, _) in g.neighbors(v) {
            if separator.contains(w) {
                out.insert(w.to_string());
            }
        }
    }
    Ok(out)
}
