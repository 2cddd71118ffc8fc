use std::collections::BTreeSet;

use super::{add_omega_clique, parse_copy_vertex, surrogate, StarRayless, Template};
use crate::connectivity::{lambda, lambda_dir, verify_arcs, ConnectivityReport};
use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin, Omega};
use crate::orientation::{ArcMap, Orientation};

/// Copies of one template that share an orientation of `C̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedClass {
    pub label: String,
    /// An orientation of the template graph, in template-local names.
    pub orientation: Orientation,
    pub copies: ExtNat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicOrientation {
    pub core: Orientation,
    /// Per template (same order as the star), its classes.
    pub classes: Vec<Vec<OrientedClass>>,
}

impl SymbolicOrientation {
    /// Checks that `self` orients `s`: the core orientation is over the core,
    /// every class orients its template, and class copies add up to the
    /// template's copy count.
    pub fn check(&self, s: &StarRayless) -> Result<()> {
        let bad = |msg: String| Err(Error::InconsistentClasses(msg));
        if self.core.base() != s.core() {
            return bad("core orientation is over a different graph".into());
        }
        if self.classes.len() != s.templates().len() {
            return bad(format!(
                "{} templates but classes for {}",
                s.templates().len(),
                self.classes.len()
            ));
        }
        for (t, classes) in s.templates().iter().zip(&self.classes) {
            let total: ExtNat = classes.iter().map(|c| c.copies).sum();
            if total != t.copies() {
                return bad(format!(
                    "classes of `{}` have {total} copies, the template has {}",
                    t.name(),
                    t.copies()
                ));
            }
            let mut labels = BTreeSet::new();
            for c in classes {
                if c.copies.is_zero() {
                    return bad(format!("class `{}` of `{}` is empty", c.label, t.name()));
                }
                if !labels.insert(&c.label) {
                    return bad(format!("label `{}` repeats in `{}`", c.label, t.name()));
                }
                if c.orientation.base() != t.graph() {
                    return bad(format!(
                        "class `{}` does not orient template `{}`",
                        c.label,
                        t.name()
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Relabels a class orientation onto copy `ci` of template `ti`.
fn copy_arcs(t: &Template, ti: usize, ci: u64, o: &Orientation) -> ArcMap {
    o.arcs()
        .iter()
        .map(|((u, v), m)| ((t.copy_name(ti, ci, u), t.copy_name(ti, ci, v)), *m))
        .collect()
}

fn add_arcs(acc: &mut ArcMap, arcs: ArcMap) {
    for (k, m) in arcs {
        *acc.entry(k).or_default() += m;
    }
}

/// Well-balancedness of a symbolic orientation.
///
/// Finite classes are expanded; every `ω` class keeps two explicit copies
/// (so pairs inside one copy and across two copies are represented) and
/// contributes `ω` arcs `a -> b` between attachment targets whenever its
/// orientation of `C̄` has a directed `a`-`b` path. The undirected side uses
/// the surrogate `ω` clique for each `ω` template. Every pair of the
/// resulting graph is checked.
pub fn verify_symbolic(s: &StarRayless, o: &SymbolicOrientation) -> Result<ConnectivityReport> {
    o.check(s)?;
    let mut g = s.core().clone();
    let mut arcs = o.core.arcs().clone();
    for (ti, (t, classes)) in s.templates().iter().zip(&o.classes).enumerate() {
        let mut ci = 0;
        for class in classes {
            let explicit = class.copies.finite().unwrap_or(2);
            for _ in 0..explicit {
                g = g.union(&t.copy_graph(ti, ci));
                add_arcs(&mut arcs, copy_arcs(t, ti, ci, &class.orientation));
                ci += 1;
            }
            if class.copies.is_omega() {
                for (a, ca) in t.attach() {
                    for (b, cb) in t.attach() {
                        if a != b && lambda_dir(&class.orientation, a, b)?.is_positive() {
                            arcs.insert((ca.clone(), cb.clone()), Omega);
                        }
                    }
                }
            }
        }
        if t.copies().is_omega() {
            add_omega_clique(&mut g, &t.neighborhood());
        }
    }
    Ok(verify_arcs(&g, &arcs))
}

/// The finite graph and orientation with every `ω` class replaced by `cap`
/// copies. Copies are numbered class by class.
pub fn instantiate_oriented(
    s: &StarRayless,
    o: &SymbolicOrientation,
    cap: u64,
) -> Result<Orientation> {
    assert!(cap >= 1, "cap must be positive");
    o.check(s)?;
    let mut g = s.core().clone();
    let mut arcs = o.core.arcs().clone();
    for (ti, (t, classes)) in s.templates().iter().zip(&o.classes).enumerate() {
        let mut ci = 0;
        for class in classes {
            for _ in 0..class.copies.finite().unwrap_or(cap) {
                g = g.union(&t.copy_graph(ti, ci));
                add_arcs(&mut arcs, copy_arcs(t, ti, ci, &class.orientation));
                ci += 1;
            }
        }
    }
    Orientation::new(g, arcs)
}

/// `λ(x, y)` in the represented graph. Endpoints are core vertices or copy
/// vertices `ti.ci.v`; the copies holding an endpoint are made explicit and
/// the remaining `ω` copies stay in surrogate form.
pub fn lambda_symbolic(s: &StarRayless, x: &str, y: &str) -> Result<ExtNat> {
    let mut g = surrogate(s);
    let mut explicit = BTreeSet::new();
    for v in [x, y] {
        if s.core().has_vertex(v) {
            continue;
        }
        let (ti, ci, tv) = parse_copy_vertex(v).ok_or_else(|| Error::UnknownVertex(v.into()))?;
        let t = s
            .templates()
            .get(ti)
            .ok_or_else(|| Error::UnknownVertex(v.into()))?;
        let in_range = match t.copies() {
            Fin(n) => ci < n,
            Omega => true,
        };
        if !in_range || !t.graph().has_vertex(tv) || t.is_boundary(tv) {
            return Err(Error::UnknownVertex(v.into()));
        }
        if t.copies().is_omega() && explicit.insert((ti, ci)) {
            g = g.union(&t.copy_graph(ti, ci));
        }
    }
    if x == y {
        return Err(Error::EqualEndpoints(x.into()));
    }
    lambda(&g, x, y)
}
