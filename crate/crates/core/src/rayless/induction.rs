//! One induction step for order-one rayless graphs.
//!
//! With `U` the core and `∼` generated by the pairs of `U` shared by
//! infinitely many components:
//!
//! 1. core pairs inside a `∼` class are set aside (they are `ω`-connected
//!    through the components anyway) and oriented at the very end;
//! 2. the core together with the finitely many components whose
//!    neighbourhood meets several classes is contracted by `∼` and oriented;
//! 3. every other template `C̄` is oriented modulo its neighbourhood;
//! 4. for every edge `xy` of `L` one template with `ω` copies that joins `x`
//!    and `y` gives up two disjoint `ω` families, one kept and one reversed,
//!    so both `x -> y` and `y -> x` carry `ω` arc-disjoint paths;
//! 5. everything is lifted back through `∼`.

use std::collections::BTreeSet;

use super::auxiliary::template_l_edges;
use super::{
    build_auxiliary, instantiate, parse_copy_vertex, AuxiliaryGraphs, OrientedClass, StarRayless,
    SymbolicOrientation, Template,
};
use crate::contraction::{contract, ContractionSpec};
use crate::error::{Error, Result};
use crate::ext::{ExtNat, Omega};
use crate::graph::{delete_skeleton, ExtMultigraph, Pair, Skeleton};
use crate::orientation::{ArcMap, Orientation};
use crate::orienter::{lift_orientation, orient_bounded_vertices, orient_extend_skeleton};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionOutcome {
    pub orientation: SymbolicOrientation,
    /// `R`, `∼`, `𝒞_<∞`, and `𝒟`/`L` as computed before any reversal.
    pub auxiliary: AuxiliaryGraphs,
    /// Core pairs joining equivalent vertices; removed before contracting
    /// and oriented afterwards (`ω` both ways, or from the smaller endpoint).
    pub deleted: Skeleton,
    /// For each edge of `L`, the template whose copies were split for it.
    pub split_for: Vec<(Pair, usize)>,
}

/// Orients a connected order-one star; order-zero input is instantiated and
/// oriented directly.
pub fn orient_rayless1(s: &StarRayless, seed: u64) -> Result<InductionOutcome> {
    if !s.is_connected() {
        return Err(Error::NotConnected);
    }
    if s.order() == 0 {
        let d = orient_bounded_vertices(&instantiate(s, 1), seed)?;
        let classes = (0..s.templates().len())
            .map(|ti| copy_classes(s, ti, &d))
            .collect::<Result<_>>()?;
        let orientation = SymbolicOrientation {
            core: core_part(s.core(), &d)?,
            classes,
        };
        let auxiliary = build_auxiliary(s, Some(&orientation))?;
        return Ok(InductionOutcome {
            orientation,
            auxiliary,
            deleted: Skeleton::empty(),
            split_for: Vec::new(),
        });
    }

    let plain = build_auxiliary(s, None)?;
    let spec = ContractionSpec::new(plain.classes.iter().cloned())?;
    let deleted = Skeleton::new(
        s.core(),
        s.core()
            .edges()
            .filter(|(p, _)| spec.equivalent(p.lo(), p.hi()))
            .map(|(p, _)| p.clone()),
    )?;
    let core_rest = delete_skeleton(s.core(), &deleted);

    let mut h = core_rest.clone();
    for &ti in &plain.finite_templates {
        let t = &s.templates()[ti];
        let n = t.copies().finite().ok_or_else(|| {
            Error::HypothesisViolated(format!(
                "template `{}` has ω copies but meets several classes",
                t.name()
            ))
        })?;
        for ci in 0..n {
            h = h.union(&t.copy_graph(ti, ci));
        }
    }
    let qh = contract(&h, &spec)?;
    let dh = lift_orientation(&h, &qh, &orient_bounded_vertices(&qh.quotient, seed)?)?;
    let core = orient_extend_skeleton(&core_part(&core_rest, &dh)?, s.core(), &deleted, None)?;

    let mut modulo = Vec::with_capacity(s.templates().len());
    let mut classes = Vec::with_capacity(s.templates().len());
    for (ti, t) in s.templates().iter().enumerate() {
        if plain.finite_templates.contains(&ti) {
            modulo.push(None);
            classes.push(copy_classes(s, ti, &dh)?);
        } else {
            let d = orient_modulo_boundary(t, seed)?;
            classes.push(vec![OrientedClass {
                label: "all".into(),
                orientation: d.clone(),
                copies: t.copies(),
            }]);
            modulo.push(Some(d));
        }
    }
    let unsplit = SymbolicOrientation { core, classes };
    let auxiliary = build_auxiliary(s, Some(&unsplit))?;

    let mut split_for = Vec::new();
    for xy in &auxiliary.l.edges {
        let mut donor = None;
        for (ti, t) in s.templates().iter().enumerate() {
            let Some(d) = &modulo[ti] else { continue };
            if t.copies().is_omega() && template_l_edges(t, d)?.contains(xy) {
                donor = Some(ti);
                break;
            }
        }
        let ti = donor.ok_or_else(|| {
            Error::HypothesisViolated(format!("no template with ω copies joins {xy}"))
        })?;
        split_for.push((xy.clone(), ti));
    }

    let SymbolicOrientation { core, mut classes } = unsplit;
    for (ti, d) in modulo.iter().enumerate() {
        let Some(d) = d else { continue };
        let mine: Vec<&Pair> = split_for
            .iter()
            .filter(|(_, t)| *t == ti)
            .map(|(p, _)| p)
            .collect();
        if mine.is_empty() {
            continue;
        }
        let mut split = Vec::new();
        for p in mine {
            split.push(OrientedClass {
                label: format!("L:{}-{}:as-is", p.lo(), p.hi()),
                orientation: d.clone(),
                copies: Omega,
            });
            split.push(OrientedClass {
                label: format!("L:{}-{}:flipped", p.lo(), p.hi()),
                orientation: d.reversed(),
                copies: Omega,
            });
        }
        split.push(OrientedClass {
            label: "rest".into(),
            orientation: d.clone(),
            copies: Omega,
        });
        classes[ti] = split;
    }

    let l_components = auxiliary.l.components();
    for class in &auxiliary.classes {
        let home = l_components.iter().find(|c| c.is_superset(class));
        if home.is_none() {
            return Err(Error::HypothesisViolated(format!(
                "equivalent vertices {class:?} lie in different components of L"
            )));
        }
    }

    Ok(InductionOutcome {
        orientation: SymbolicOrientation { core, classes },
        auxiliary,
        deleted,
        split_for,
    })
}

/// A well-balanced orientation of `C̄/N(C)`, lifted to `C̄`.
fn orient_modulo_boundary(t: &Template, seed: u64) -> Result<Orientation> {
    let boundary: BTreeSet<String> = t.attach().keys().cloned().collect();
    let q = contract(t.graph(), &ContractionSpec::new([boundary])?)?;
    lift_orientation(t.graph(), &q, &orient_bounded_vertices(&q.quotient, seed)?)
}

/// The arcs of `d` between core vertices, as an orientation of `core`.
fn core_part(core: &ExtMultigraph, d: &Orientation) -> Result<Orientation> {
    let arcs: ArcMap = d
        .arcs()
        .iter()
        .filter(|((u, v), _)| core.has_vertex(u) && core.has_vertex(v))
        .map(|(k, m)| (k.clone(), *m))
        .collect();
    Orientation::new(core.clone(), arcs)
}

/// One class per explicit copy of template `ti`, read off `d`.
fn copy_classes(s: &StarRayless, ti: usize, d: &Orientation) -> Result<Vec<OrientedClass>> {
    let t = &s.templates()[ti];
    let n = t.copies().finite().expect("explicit copies are finite");
    let to_core: std::collections::BTreeMap<&str, &str> = t
        .attach()
        .iter()
        .map(|(tv, cv)| (cv.as_str(), tv.as_str()))
        .collect();
    let local = |v: &str| -> String {
        match parse_copy_vertex(v) {
            Some((_, _, tv)) => tv.to_string(),
            None => to_core[v].to_string(),
        }
    };
    (0..n)
        .map(|ci| {
            let mine =
                |v: &str| matches!(parse_copy_vertex(v), Some((a, b, _)) if a == ti && b == ci);
            let arcs: ArcMap = d
                .arcs()
                .iter()
                .filter(|((u, v), _)| mine(u) || mine(v))
                .map(|((u, v), m)| ((local(u), local(v)), *m))
                .collect();
            Ok(OrientedClass {
                label: format!("copy{ci}"),
                orientation: Orientation::new(t.graph().clone(), arcs)?,
                copies: ExtNat::Fin(1),
            })
        })
        .collect()
}
