//! Edge-connectivity `λ`, arc-connectivity `λ⃗`, and the well-balanced check.
//!
//! `ω` capacities are replaced by `M = 1 + Σ finite multiplicities`. A cut that
//! avoids every `ω` pair is worth at most `M - 1`, so a flow value of at least
//! `M` means every cut crosses an `ω` pair and the connectivity is `ω`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin, Omega};
use crate::flow::FlowNetwork;
use crate::graph::{ExtMultigraph, Pair};
use crate::orientation::{ArcMap, Orientation};

/// A minimum cut certificate: the source side and the pairs crossing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCut {
    pub value: ExtNat,
    pub source_side: BTreeSet<String>,
    /// Crossing pairs (undirected) or arcs leaving the source side (directed),
    /// with their multiplicities.
    pub crossing: Vec<((String, String), ExtNat)>,
}

/// Prepared flow network over a fixed vertex indexing.
struct Network {
    index: BTreeMap<String, usize>,
    names: Vec<String>,
    net: FlowNetwork,
    bound: u64,
}

impl Network {
    fn new<'a>(
        vertices: impl IntoIterator<Item = &'a String>,
        caps: Vec<(&'a str, &'a str, ExtNat)>,
        directed: bool,
    ) -> Self {
        let names: Vec<String> = vertices.into_iter().cloned().collect();
        let index: BTreeMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let finite: u64 = caps
            .iter()
            .filter_map(|(_, _, m)| m.finite())
            .fold(0, u64::saturating_add);
        let bound = finite.saturating_add(1);
        let mut net = FlowNetwork::new(names.len());
        for (u, v, m) in caps {
            let c = m.finite().unwrap_or(bound);
            let (iu, iv) = (index[u], index[v]);
            if directed {
                net.add_arc(iu, iv, c);
            } else {
                net.add_edge(iu, iv, c);
            }
        }
        Network {
            index,
            names,
            net,
            bound,
        }
    }

    fn ends(&self, x: &str, y: &str) -> Result<(usize, usize)> {
        let ix = *self
            .index
            .get(x)
            .ok_or_else(|| Error::UnknownVertex(x.to_string()))?;
        let iy = *self
            .index
            .get(y)
            .ok_or_else(|| Error::UnknownVertex(y.to_string()))?;
        if ix == iy {
            return Err(Error::EqualEndpoints(x.to_string()));
        }
        Ok((ix, iy))
    }

    fn to_ext(&self, flow: u64) -> ExtNat {
        if flow >= self.bound {
            Omega
        } else {
            Fin(flow)
        }
    }

    fn value(&self, x: &str, y: &str) -> Result<ExtNat> {
        self.value_at_least(x, y, self.bound)
    }

    /// Flow value, computed only up to `limit` (values ≥ `limit` may be
    /// reported as anything ≥ `limit`).
    fn value_at_least(&self, x: &str, y: &str, limit: u64) -> Result<ExtNat> {
        let (ix, iy) = self.ends(x, y)?;
        let mut net = self.net.clone();
        Ok(self.to_ext(net.max_flow(ix, iy, limit.min(self.bound))))
    }

    fn min_cut(&self, x: &str, y: &str) -> Result<(ExtNat, BTreeSet<String>)> {
        let (ix, iy) = self.ends(x, y)?;
        let mut net = self.net.clone();
        // Run to completion so the residual graph certifies a minimum cut.
        let flow = net.max_flow(ix, iy, u64::MAX);
        let side = net.residual_side(ix);
        let source_side = self
            .names
            .iter()
            .zip(side)
            .filter(|(_, s)| *s)
            .map(|(v, _)| v.clone())
            .collect();
        Ok((self.to_ext(flow), source_side))
    }
}

fn undirected(g: &ExtMultigraph) -> Network {
    Network::new(
        g.vertices(),
        g.edges().map(|(p, m)| (p.lo(), p.hi(), m)).collect(),
        false,
    )
}

fn directed<'a>(vertices: &'a BTreeSet<String>, arcs: &'a ArcMap) -> Network {
    Network::new(
        vertices,
        arcs.iter()
            .map(|((u, v), m)| (u.as_str(), v.as_str(), *m))
            .collect(),
        true,
    )
}

/// `λ_G(x, y)`: the maximum number of edge-disjoint `x`-`y` paths.
pub fn lambda(g: &ExtMultigraph, x: &str, y: &str) -> Result<ExtNat> {
    undirected(g).value(x, y)
}

/// `λ⃗(x, y)` in an orientation.
pub fn lambda_dir(d: &Orientation, x: &str, y: &str) -> Result<ExtNat> {
    lambda_arcs(d.base().vertices(), d.arcs(), x, y)
}

/// `λ⃗(x, y)` for an arbitrary arc-multiplicity map.
pub fn lambda_arcs(vertices: &BTreeSet<String>, arcs: &ArcMap, x: &str, y: &str) -> Result<ExtNat> {
    directed(vertices, arcs).value(x, y)
}

/// Minimum `x`-`y` edge cut of `g`; its value equals [`lambda`].
pub fn min_cut(g: &ExtMultigraph, x: &str, y: &str) -> Result<MinCut> {
    let (value, source_side) = undirected(g).min_cut(x, y)?;
    let crossing = g
        .edges()
        .filter(|(p, _)| source_side.contains(p.lo()) != source_side.contains(p.hi()))
        .map(|(p, m)| ((p.lo().to_string(), p.hi().to_string()), m))
        .collect();
    Ok(MinCut {
        value,
        source_side,
        crossing,
    })
}

/// Minimum `x`-`y` arc cut of an orientation; its value equals [`lambda_dir`].
pub fn min_cut_dir(d: &Orientation, x: &str, y: &str) -> Result<MinCut> {
    let (value, source_side) = directed(d.base().vertices(), d.arcs()).min_cut(x, y)?;
    let crossing = d
        .arcs()
        .iter()
        .filter(|((u, v), _)| source_side.contains(u) && !source_side.contains(v))
        .map(|(k, m)| (k.clone(), *m))
        .collect();
    Ok(MinCut {
        value,
        source_side,
        crossing,
    })
}

/// `λ` for every pair of distinct vertices in the same component.
pub fn lambda_all(g: &ExtMultigraph) -> BTreeMap<Pair, ExtNat> {
    let net = undirected(g);
    let mut out = BTreeMap::new();
    for comp in g.components() {
        let vs: Vec<&String> = comp.iter().collect();
        for (i, x) in vs.iter().enumerate() {
            for y in &vs[i + 1..] {
                let l = net.value(x, y).expect("vertices come from the graph");
                out.insert(Pair::new(x.as_str(), y.as_str()), l);
            }
        }
    }
    out
}

/// One line of a [`ConnectivityReport`], for the pair `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub pair: Pair,
    pub lambda: ExtNat,
    /// `λ⃗(lo, hi)`.
    pub forward: ExtNat,
    /// `λ⃗(hi, lo)`.
    pub backward: ExtNat,
    pub required: ExtNat,
    pub satisfied: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub pairs: Vec<PairReport>,
}

impl ConnectivityReport {
    pub fn is_well_balanced(&self) -> bool {
        self.pairs.iter().all(|p| p.satisfied)
    }

    pub fn violations(&self) -> impl Iterator<Item = &PairReport> {
        self.pairs.iter().filter(|p| !p.satisfied)
    }

    pub fn get(&self, x: &str, y: &str) -> Option<&PairReport> {
        let p = Pair::try_new(x, y).ok()?;
        self.pairs.iter().find(|r| r.pair == p)
    }
}

/// `⌊λ/2⌋` for finite `λ`, and `ω` for `λ = ω`.
pub fn required(lambda: ExtNat) -> ExtNat {
    lambda.floor_half()
}

/// Checks every pair of `g` with `λ > 0` against directed connectivity in
/// `arcs`. Pairs in different components are vacuously fine and omitted.
pub fn verify_arcs(g: &ExtMultigraph, arcs: &ArcMap) -> ConnectivityReport {
    let lambdas = lambda_all(g);
    let dnet = directed(g.vertices(), arcs);
    let mut pairs = Vec::new();
    for (p, l) in lambdas {
        if l.is_zero() {
            continue;
        }
        let need = required(l);
        let forward = dnet.value(p.lo(), p.hi()).expect("known vertices");
        let backward = dnet.value(p.hi(), p.lo()).expect("known vertices");
        pairs.push(PairReport {
            satisfied: forward >= need && backward >= need,
            pair: p,
            lambda: l,
            forward,
            backward,
            required: need,
        });
    }
    ConnectivityReport { pairs }
}

/// Whether `d` is a well-balanced orientation of `g`.
pub fn verify_well_balanced(g: &ExtMultigraph, d: &Orientation) -> Result<ConnectivityReport> {
    if d.base() != g {
        return Err(Error::OrientationMismatch(
            "the orientation was built for a different graph".into(),
        ));
    }
    Ok(verify_arcs(g, d.arcs()))
}

/// Cheap feasibility probe used by the search: does `λ⃗(x, y) ≥ need` hold?
pub(crate) struct DirectedProbe {
    net: Network,
}

impl DirectedProbe {
    pub(crate) fn new(vertices: &BTreeSet<String>, arcs: &ArcMap) -> Self {
        DirectedProbe {
            net: directed(vertices, arcs),
        }
    }

    pub(crate) fn reaches(&self, x: &str, y: &str, need: ExtNat) -> bool {
        match need {
            Fin(0) => true,
            Fin(k) => self
                .net
                .value_at_least(x, y, k)
                .map(|v| v >= need)
                .unwrap_or(false),
            Omega => self.net.value(x, y).map(|v| v.is_omega()).unwrap_or(false),
        }
    }
}
