//! Constructions of well-balanced orientations: the finite search, `ω`
//! bundles handled by contraction, extension over deleted skeletons, lifts
//! from quotients, and gluing along block trees.

mod finite;
mod project;

use std::collections::{BTreeMap, BTreeSet};

pub use finite::{orient_finite, orient_finite_with, SearchConfig};
pub use project::{project_path, QuotientPath};

use crate::blocks::BlockTree;
use crate::connectivity::{lambda, lambda_dir};
use crate::contraction::{contract, disaggregate, ContractionSpec, QuotientResult};
use crate::error::{Error, Result};
use crate::ext::{Fin, Omega};
use crate::graph::{delete_skeleton, ExtMultigraph, Skeleton};
use crate::orientation::{accumulate_arcs, ArcMap, Orientation};

/// A well-balanced orientation of a graph that may carry `ω` bundles.
///
/// While some pair `xy` has multiplicity `ω`, its bundle is removed, `x` and
/// `y` are identified, and the smaller graph is oriented recursively. The
/// orientation is lifted back and the bundle is split `ω` both ways, which
/// makes `λ⃗(x, y) = λ⃗(y, x) = ω` and so justifies the lift.
pub fn orient_bounded_vertices(g: &ExtMultigraph, seed: u64) -> Result<Orientation> {
    let Some((p, _)) = g.edges().find(|(_, m)| m.is_omega()) else {
        return orient_finite(g, seed);
    };
    let p = p.clone();
    let h = delete_skeleton(g, &Skeleton::new(g, [p.clone()])?);
    let spec = ContractionSpec::single([p.lo(), p.hi()])?;
    let q = contract(&h, &spec)?;
    let dq = orient_bounded_vertices(&q.quotient, seed)?;
    let dh = lift_orientation(&h, &q, &dq)?;
    let mut arcs = dh.arcs().clone();
    arcs.insert((p.lo().to_string(), p.hi().to_string()), Omega);
    arcs.insert((p.hi().to_string(), p.lo().to_string()), Omega);
    Orientation::new(g.clone(), arcs)
}

/// Pulls an orientation of `G/∼` back to `G`, splitting every quotient pair
/// over the original pairs that merged into it (first pairs first).
pub fn lift_orientation(
    g: &ExtMultigraph,
    q: &QuotientResult,
    d_quotient: &Orientation,
) -> Result<Orientation> {
    if d_quotient.base() != &q.quotient {
        return Err(Error::OrientationMismatch(
            "orientation is not over the quotient".into(),
        ));
    }
    let mut seen = 0usize;
    let mut arcs = ArcMap::new();
    for (qp, prov) in &q.provenance {
        let (a, b) = (qp.lo(), qp.hi());
        let forward = d_quotient.arc(a, b);
        let backward = d_quotient.arc(b, a);
        let splits = disaggregate(forward, backward, prov)?;
        for ((p, m), (out, inn)) in prov.iter().zip(splits) {
            if g.mult_of(p) != *m {
                return Err(Error::InconsistentProvenance(format!(
                    "pair {p} has multiplicity {} in the graph but {m} in the provenance",
                    g.mult_of(p)
                )));
            }
            seen += 1;
            let (u, w) = if q.class_of(p.lo())? == a {
                (p.lo(), p.hi())
            } else {
                (p.hi(), p.lo())
            };
            arcs.insert((u.to_string(), w.to_string()), out);
            arcs.insert((w.to_string(), u.to_string()), inn);
        }
    }
    if seen != g.edge_count() {
        return Err(Error::InconsistentProvenance(
            "provenance does not cover every pair of the graph".into(),
        ));
    }
    Orientation::new(g.clone(), arcs)
}

/// Extends an orientation of `H = G - ||K||` over the skeleton bundles:
/// `ω` pairs are split `ω` both ways, finite pairs are oriented from the
/// smaller endpoint.
///
/// With `spec`, every pair `x ∼ y` must satisfy `λ⃗_H(x, y) = ω` or
/// `mult_G(xy) = ω` (in both orders); otherwise the result is
/// [`Error::HypothesisViolated`].
pub fn orient_extend_skeleton(
    h_oriented: &Orientation,
    g: &ExtMultigraph,
    k: &Skeleton,
    spec: Option<&ContractionSpec>,
) -> Result<Orientation> {
    let h = delete_skeleton(g, k);
    if h_oriented.base() != &h {
        return Err(Error::BaseMismatch(
            "orientation does not orient the graph minus the skeleton".into(),
        ));
    }
    if let Some(spec) = spec {
        spec.check_contractible(&h)?;
        for class in spec.classes() {
            for x in class {
                for y in class {
                    if x != y
                        && !g.mult(x, y).is_omega()
                        && !lambda_dir(h_oriented, x, y)?.is_omega()
                    {
                        return Err(Error::HypothesisViolated(format!(
                            "`{x}` ∼ `{y}` but neither λ⃗_H({x}, {y}) nor mult({x}{y}) is ω"
                        )));
                    }
                }
            }
        }
    }
    let mut arcs = h_oriented.arcs().clone();
    for p in k.pairs() {
        let m = g.mult_of(p);
        let (fwd, bwd) = if m.is_omega() {
            (Omega, Omega)
        } else {
            (m, Fin(0))
        };
        arcs.insert((p.lo().to_string(), p.hi().to_string()), fwd);
        arcs.insert((p.hi().to_string(), p.lo().to_string()), bwd);
    }
    Orientation::new(g.clone(), arcs)
}

/// Orients `G - ||K||` and extends over the skeleton; requires
/// `λ_{G - ||K||}(x, y) = ω` for every skeleton pair.
pub fn orient_with_deleted_skeleton(
    g: &ExtMultigraph,
    k: &Skeleton,
    seed: u64,
) -> Result<Orientation> {
    let h = delete_skeleton(g, k);
    for p in k.pairs() {
        let l = lambda(&h, p.lo(), p.hi())?;
        if !l.is_omega() {
            return Err(Error::HypothesisViolated(format!(
                "skeleton pair {p} has λ = {l} after deleting the skeleton"
            )));
        }
    }
    let dh = orient_bounded_vertices(&h, seed)?;
    orient_extend_skeleton(&dh, g, k, None)
}

/// Union of per-part orientations; each must orient exactly the subgraph
/// induced by its part.
pub fn glue_block_orientations(
    g: &ExtMultigraph,
    bt: &BlockTree,
    parts: &BTreeMap<String, Orientation>,
) -> Result<Orientation> {
    let ids: BTreeSet<&str> = bt.parts().map(|(id, _)| id).collect();
    if let Some(extra) = parts.keys().find(|id| !ids.contains(id.as_str())) {
        return Err(Error::PartMismatch(format!("no part named `{extra}`")));
    }
    let mut arcs = ArcMap::new();
    for (id, _) in bt.parts() {
        let expected = bt.part_graph(g, id)?;
        let o = match parts.get(id) {
            Some(o) => o,
            None if expected.edge_count() == 0 => continue,
            None => {
                return Err(Error::PartMismatch(format!(
                    "no orientation for part `{id}`"
                )))
            }
        };
        if o.base() != &expected {
            return Err(Error::PartMismatch(format!(
                "orientation for part `{id}` does not orient its induced subgraph"
            )));
        }
        accumulate_arcs(&mut arcs, o);
    }
    Orientation::new(g.clone(), arcs)
        .map_err(|e| Error::PartMismatch(format!("glued arcs are inconsistent: {e}")))
}
