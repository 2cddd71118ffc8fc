use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{pairs_of, StarRayless, SymbolicOrientation, Template};
use crate::connectivity::verify_well_balanced;
use crate::contraction::{contract, ContractionSpec};
use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin};
use crate::graph::{ExtMultigraph, Pair};
use crate::orientation::Orientation;
use crate::orienter::lift_orientation;

/// A simple graph on a vertex set; used for `R` and `L`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LGraph {
    pub vertices: BTreeSet<String>,
    pub edges: BTreeSet<Pair>,
}

impl LGraph {
    pub fn has_edge(&self, x: &str, y: &str) -> bool {
        Pair::try_new(x, y).is_ok_and(|p| self.edges.contains(&p))
    }

    pub fn components(&self) -> Vec<BTreeSet<String>> {
        ExtMultigraph::from_edges(
            self.vertices.iter().map(String::as_str),
            self.edges.iter().map(|p| (p.lo(), p.hi(), Fin(1))),
        )
        .expect("edges join known vertices")
        .components()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Vertices reachable from `from` along arcs of positive multiplicity.
fn reachable(d: &Orientation, from: &str) -> BTreeSet<String> {
    let mut out: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for ((u, v), m) in d.arcs() {
        if m.is_positive() {
            out.entry(u.as_str()).or_default().push(v.as_str());
        }
    }
    let mut seen = BTreeSet::from([from.to_string()]);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &w in out.get(u).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(w.to_string()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// `L(G⃗, N)`: pairs of `N` joined by a directed path in at least one
/// direction. `N` must be nonempty and independent in the base graph.
pub fn build_l_graph(d: &Orientation, n: &BTreeSet<String>) -> Result<LGraph> {
    let g = d.base();
    for v in n {
        g.require_vertex(v)?;
    }
    if n.is_empty() {
        return Err(Error::InvalidClasses("the vertex set is empty".into()));
    }
    for x in n {
        if let Some((y, _)) = g.neighbors(x).find(|(y, _)| n.contains(*y)) {
            let p = Pair::new(x.as_str(), y);
            return Err(Error::NonContractibleSet(p.lo().into(), p.hi().into()));
        }
    }
    let reach: BTreeMap<&str, BTreeSet<String>> =
        n.iter().map(|x| (x.as_str(), reachable(d, x))).collect();
    let edges = pairs_of(n)
        .into_iter()
        .filter(|p| reach[p.lo()].contains(p.hi()) || reach[p.hi()].contains(p.lo()))
        .collect();
    Ok(LGraph {
        vertices: n.clone(),
        edges,
    })
}

/// Lifts a well-balanced orientation of `g/N` to `g` and reports whether
/// `L(G⃗, N)` is connected. Fails if `g` is disconnected or the quotient
/// orientation is not well-balanced.
pub fn check_l_connected(
    g: &ExtMultigraph,
    n: &BTreeSet<String>,
    d_quotient: &Orientation,
) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::HypothesisViolated(
            "the graph is not connected".into(),
        ));
    }
    if n.is_empty() {
        return Err(Error::InvalidClasses("the vertex set is empty".into()));
    }
    let spec = ContractionSpec::new([n.clone()])?;
    spec.check_contractible(g).map_err(|e| match e {
        Error::NonContractible(a, b) => Error::NonContractibleSet(a, b),
        other => other,
    })?;
    let q = contract(g, &spec)?;
    if !verify_well_balanced(&q.quotient, d_quotient)?.is_well_balanced() {
        return Err(Error::HypothesisViolated(
            "the quotient orientation is not well-balanced".into(),
        ));
    }
    let d = lift_orientation(g, &q, d_quotient)?;
    Ok(build_l_graph(&d, n)?.is_connected())
}

/// The auxiliary data of the induction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliaryGraphs {
    /// `|𝒞(xy)|`: copies whose neighbourhood contains both `x` and `y`.
    pub c_counts: BTreeMap<Pair, ExtNat>,
    /// `|𝒟(xy)|`; empty without an orientation.
    pub d_counts: BTreeMap<Pair, ExtNat>,
    /// Pairs with `|𝒞(xy)| = ω`.
    pub r: LGraph,
    /// Pairs with `|𝒟(xy)| = ω`; edgeless without an orientation.
    pub l: LGraph,
    /// The classes of `∼`: components of `R`, singletons included.
    pub classes: Vec<BTreeSet<String>>,
    /// Templates whose neighbourhood meets more than one class (`𝒞_<∞`).
    pub finite_templates: Vec<usize>,
}

impl AuxiliaryGraphs {
    pub fn class_of(&self, v: &str) -> Option<&BTreeSet<String>> {
        self.classes.iter().find(|c| c.contains(v))
    }

    pub fn equivalent(&self, x: &str, y: &str) -> bool {
        self.class_of(x).is_some_and(|c| c.contains(y))
    }
}

/// Pairs of `N(C)` joined in `L(C⃗, N(C))`, in core names.
pub(crate) fn template_l_edges(t: &Template, o: &Orientation) -> Result<BTreeSet<Pair>> {
    let boundary: BTreeSet<String> = t.attach().keys().cloned().collect();
    let l = build_l_graph(o, &boundary)?;
    Ok(l.edges
        .iter()
        .map(|p| Pair::new(t.attach()[p.lo()].as_str(), t.attach()[p.hi()].as_str()))
        .collect())
}

/// `𝒞(xy)`, `R`, `∼` and `𝒞_<∞`; with an orientation also `𝒟(xy)` and `L`.
pub fn build_auxiliary(
    s: &StarRayless,
    oriented: Option<&SymbolicOrientation>,
) -> Result<AuxiliaryGraphs> {
    let u = s.separator().clone();
    let mut c_counts: BTreeMap<Pair, ExtNat> = BTreeMap::new();
    for t in s.templates() {
        for p in pairs_of(&t.neighborhood()) {
            *c_counts.entry(p).or_default() += t.copies();
        }
    }
    let r = LGraph {
        vertices: u.clone(),
        edges: c_counts
            .iter()
            .filter(|(_, c)| c.is_omega())
            .map(|(p, _)| p.clone())
            .collect(),
    };
    let classes = r.components();
    let class_index = |v: &str| classes.iter().position(|c| c.contains(v));
    let finite_templates: Vec<usize> = s
        .templates()
        .iter()
        .enumerate()
        .filter(|(_, t)| {
            let spanned: BTreeSet<_> = t.neighborhood().iter().map(|v| class_index(v)).collect();
            spanned.len() > 1
        })
        .map(|(i, _)| i)
        .collect();
    let mut d_counts: BTreeMap<Pair, ExtNat> = BTreeMap::new();
    if let Some(o) = oriented {
        o.check(s)?;
        for (ti, (t, tclasses)) in s.templates().iter().zip(&o.classes).enumerate() {
            if finite_templates.contains(&ti) {
                continue;
            }
            for class in tclasses {
                for p in template_l_edges(t, &class.orientation)? {
                    *d_counts.entry(p).or_default() += class.copies;
                }
            }
        }
    }
    let l = LGraph {
        vertices: u,
        edges: d_counts
            .iter()
            .filter(|(_, c)| c.is_omega())
            .map(|(p, _)| p.clone())
            .collect(),
    };
    Ok(AuxiliaryGraphs {
        c_counts,
        d_counts,
        r,
        l,
        classes,
        finite_templates,
    })
}
