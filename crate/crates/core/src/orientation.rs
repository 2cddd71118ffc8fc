use std::collections::BTreeMap;

use crate::contraction::QuotientResult;
use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::graph::{ExtMultigraph, Pair};

/// Arc multiplicities keyed by ordered vertex pairs. Only positive entries are
/// meaningful.
pub type ArcMap = BTreeMap<(String, String), ExtNat>;

/// An orientation of an [`ExtMultigraph`].
///
/// For a finite pair `xy` the two directions are finite and sum to `mult(xy)`;
/// for an `ω` pair at least one direction is `ω` (a partition of a countably
/// infinite set has an infinite part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    base: ExtMultigraph,
    arcs: ArcMap,
}

impl Orientation {
    pub fn new(base: ExtMultigraph, arcs: ArcMap) -> Result<Self> {
        let arcs: ArcMap = arcs.into_iter().filter(|(_, m)| m.is_positive()).collect();
        for (u, v) in arcs.keys() {
            base.require_vertex(u)?;
            base.require_vertex(v)?;
            if u == v {
                return Err(Error::Loop(u.clone()));
            }
            if base.mult(u, v).is_zero() {
                return Err(Error::InvalidOrientation(format!(
                    "arc {u}->{v} on a pair without edges"
                )));
            }
        }
        let o = Orientation { base, arcs };
        for (p, m) in o.base.edges() {
            let fwd = o.arc(p.lo(), p.hi());
            let bwd = o.arc(p.hi(), p.lo());
            let ok = match m {
                ExtNat::Fin(_) => fwd.is_finite() && bwd.is_finite() && fwd + bwd == m,
                ExtNat::Omega => fwd.is_omega() || bwd.is_omega(),
            };
            if !ok {
                return Err(Error::InvalidOrientation(format!(
                    "pair {p} has multiplicity {m} but arcs {fwd} and {bwd}"
                )));
            }
        }
        Ok(o)
    }

    /// Builds an orientation from one `(forward, backward)` split per pair,
    /// where forward means `lo -> hi`.
    pub fn from_splits(
        base: ExtMultigraph,
        splits: impl IntoIterator<Item = (Pair, ExtNat, ExtNat)>,
    ) -> Result<Self> {
        let mut arcs = ArcMap::new();
        for (p, fwd, bwd) in splits {
            arcs.insert((p.lo().to_string(), p.hi().to_string()), fwd);
            arcs.insert((p.hi().to_string(), p.lo().to_string()), bwd);
        }
        Orientation::new(base, arcs)
    }

    /// The empty orientation of an edgeless graph.
    pub fn edgeless(base: ExtMultigraph) -> Result<Self> {
        Orientation::new(base, ArcMap::new())
    }

    pub fn base(&self) -> &ExtMultigraph {
        &self.base
    }

    pub fn arcs(&self) -> &ArcMap {
        &self.arcs
    }

    pub fn arc(&self, u: &str, v: &str) -> ExtNat {
        self.arcs
            .get(&(u.to_string(), v.to_string()))
            .copied()
            .unwrap_or_default()
    }

    /// The same orientation with every arc reversed.
    pub fn reversed(&self) -> Orientation {
        Orientation {
            base: self.base.clone(),
            arcs: self
                .arcs
                .iter()
                .map(|((u, v), m)| ((v.clone(), u.clone()), *m))
                .collect(),
        }
    }

    /// The orientation induced on the quotient: arcs pushed through `π`.
    pub fn contract(&self, q: &QuotientResult) -> Result<Orientation> {
        let mut arcs = ArcMap::new();
        for ((u, v), m) in &self.arcs {
            let (cu, cv) = (q.class_of(u)?, q.class_of(v)?);
            if cu == cv {
                return Err(Error::NonContractible(u.clone(), v.clone()));
            }
            *arcs.entry((cu.to_string(), cv.to_string())).or_default() += *m;
        }
        Orientation::new(q.quotient.clone(), arcs)
    }

    /// Restriction to a subgraph whose multiplicities agree with the base on
    /// every pair it contains (e.g. an induced subgraph).
    pub fn restrict(&self, sub: &ExtMultigraph) -> Result<Orientation> {
        for (p, m) in sub.edges() {
            if self.base.mult_of(p) != m {
                return Err(Error::NotASubgraph(format!(
                    "pair {p} has multiplicity {m} in the subgraph but {} in the base",
                    self.base.mult_of(p)
                )));
            }
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|((u, v), _)| {
                sub.has_vertex(u) && sub.has_vertex(v) && sub.mult(u, v).is_positive()
            })
            .map(|(k, m)| (k.clone(), *m))
            .collect();
        Orientation::new(sub.clone(), arcs)
    }

    /// Relabels vertices; `rename` must be injective on the base vertices.
    pub fn relabel(&self, rename: impl Fn(&str) -> String) -> Result<Orientation> {
        let base = self.base.relabel(&rename)?;
        let arcs = self
            .arcs
            .iter()
            .map(|((u, v), m)| ((rename(u), rename(v)), *m))
            .collect();
        Orientation::new(base, arcs)
    }
}

/// Adds the arcs of `o` into `acc`.
pub(crate) fn accumulate_arcs(acc: &mut ArcMap, o: &Orientation) {
    for (k, m) in o.arcs() {
        *acc.entry(k.clone()).or_default() += *m;
    }
}
