//! Symbolic rayless graphs of order at most one: a finite core plus finitely
//! many finite templates, each repeated a finite or `ω` number of times. Every
//! copy of a template is one component of `G - U`, where `U` is the core's
//! vertex set, and attaches to `U` through the template's boundary vertices.
//!
//! Copies are named `ti.ci.v` (template index, copy index, template vertex),
//! which is why core vertex names may not contain a `.`.

mod auxiliary;
mod induction;
mod symbolic;

use std::collections::{BTreeMap, BTreeSet};

pub use auxiliary::{build_auxiliary, build_l_graph, check_l_connected, AuxiliaryGraphs, LGraph};
pub use induction::{orient_rayless1, InductionOutcome};
pub use symbolic::{
    instantiate_oriented, lambda_symbolic, verify_symbolic, OrientedClass, SymbolicOrientation,
};

use crate::error::{Error, Result};
use crate::ext::{ExtNat, Omega};
use crate::graph::{ExtMultigraph, Pair};

/// One template `C̄`: the component plus its boundary vertices, in
/// template-local vertex names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    name: String,
    graph: ExtMultigraph,
    attach: BTreeMap<String, String>,
    copies: ExtNat,
}

impl Template {
    /// `attach` maps boundary vertices of `graph` to core vertices. The
    /// remaining vertices form the component itself.
    pub fn new(
        name: impl Into<String>,
        graph: ExtMultigraph,
        attach: BTreeMap<String, String>,
        copies: ExtNat,
    ) -> Result<Self> {
        let name = name.into();
        let bad = |msg: String| Err(Error::InvalidTemplate(format!("template `{name}`: {msg}")));
        if copies.is_zero() {
            return bad("needs at least one copy".into());
        }
        let mut targets = BTreeSet::new();
        for (tv, cv) in &attach {
            if !graph.has_vertex(tv) {
                return bad(format!("attaches unknown vertex `{tv}`"));
            }
            if !targets.insert(cv) {
                return bad(format!("two boundary vertices attach to `{cv}`"));
            }
            if graph.neighbors(tv).next().is_none() {
                return bad(format!("boundary vertex `{tv}` has no edges"));
            }
            if let Some((w, _)) = graph.neighbors(tv).find(|(w, _)| attach.contains_key(*w)) {
                return bad(format!("boundary vertices `{tv}` and `{w}` are adjacent"));
            }
        }
        let interior: Vec<&str> = graph
            .vertices()
            .iter()
            .filter(|v| !attach.contains_key(*v))
            .map(String::as_str)
            .collect();
        if interior.is_empty() {
            return bad("has no interior vertices".into());
        }
        if !graph.induced(interior).is_connected() {
            return bad("interior is not connected".into());
        }
        Ok(Template {
            name,
            graph,
            attach,
            copies,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &ExtMultigraph {
        &self.graph
    }

    pub fn attach(&self) -> &BTreeMap<String, String> {
        &self.attach
    }

    pub fn copies(&self) -> ExtNat {
        self.copies
    }

    pub fn is_boundary(&self, v: &str) -> bool {
        self.attach.contains_key(v)
    }

    pub fn interior(&self) -> impl Iterator<Item = &str> {
        self.graph
            .vertices()
            .iter()
            .map(String::as_str)
            .filter(|v| !self.is_boundary(v))
    }

    /// `N(C)`: the core vertices the component attaches to.
    pub fn neighborhood(&self) -> BTreeSet<String> {
        self.attach.values().cloned().collect()
    }

    /// Name of template vertex `v` in copy `ci` of template `ti`.
    pub fn copy_name(&self, ti: usize, ci: u64, v: &str) -> String {
        match self.attach.get(v) {
            Some(cv) => cv.clone(),
            None => copy_vertex(ti, ci, v),
        }
    }

    /// The copy `ci` as a subgraph of the instantiated graph.
    pub fn copy_graph(&self, ti: usize, ci: u64) -> ExtMultigraph {
        self.graph
            .relabel(|v| self.copy_name(ti, ci, v))
            .expect("boundary vertices are independent and attach injectively")
    }
}

pub fn copy_vertex(ti: usize, ci: u64, v: &str) -> String {
    format!("{ti}.{ci}.{v}")
}

/// Splits `ti.ci.v` into its parts.
pub fn parse_copy_vertex(name: &str) -> Option<(usize, u64, &str)> {
    let mut it = name.splitn(3, '.');
    let ti = it.next()?.parse().ok()?;
    let ci = it.next()?.parse().ok()?;
    Some((ti, ci, it.next()?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarRayless {
    core: ExtMultigraph,
    templates: Vec<Template>,
}

impl StarRayless {
    pub fn new(core: ExtMultigraph, templates: Vec<Template>) -> Result<Self> {
        if let Some(v) = core.vertices().iter().find(|v| v.contains('.')) {
            return Err(Error::InvalidTemplate(format!(
                "core vertex `{v}` contains a `.`"
            )));
        }
        let mut names = BTreeSet::new();
        for t in &templates {
            if !names.insert(t.name()) {
                return Err(Error::InvalidTemplate(format!(
                    "template name `{}` is used twice",
                    t.name()
                )));
            }
            for cv in t.attach().values() {
                if !core.has_vertex(cv) {
                    return Err(Error::InvalidTemplate(format!(
                        "template `{}` attaches to unknown core vertex `{cv}`",
                        t.name()
                    )));
                }
            }
        }
        Ok(StarRayless { core, templates })
    }

    pub fn core(&self) -> &ExtMultigraph {
        &self.core
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    pub fn template_index(&self, name: &str) -> Option<usize> {
        self.templates.iter().position(|t| t.name() == name)
    }

    /// The separator `U`: all core vertices.
    pub fn separator(&self) -> &BTreeSet<String> {
        self.core.vertices()
    }

    /// 0 when every template has finitely many copies, 1 otherwise.
    pub fn order(&self) -> u8 {
        u8::from(self.templates.iter().any(|t| t.copies().is_omega()))
    }

    /// Connectivity of the represented graph. Two copies of each `ω`
    /// template suffice to witness it.
    pub fn is_connected(&self) -> bool {
        instantiate(self, 2).is_connected()
    }
}

/// `order(s)`.
pub fn order(s: &StarRayless) -> u8 {
    s.order()
}

/// The finite graph with every `ω` copy count replaced by `cap` (at least 1).
pub fn instantiate(s: &StarRayless, cap: u64) -> ExtMultigraph {
    assert!(cap >= 1, "cap must be positive");
    let mut g = s.core().clone();
    for (ti, t) in s.templates().iter().enumerate() {
        let n = t.copies().finite().unwrap_or(cap);
        for ci in 0..n {
            g = g.union(&t.copy_graph(ti, ci));
        }
    }
    g
}

/// Finite-copy templates expanded, each `ω` template replaced by `ω` edges
/// between all pairs of its attachment targets. `λ` between vertices of this
/// graph equals `λ` in the represented graph.
pub fn surrogate(s: &StarRayless) -> ExtMultigraph {
    let mut g = s.core().clone();
    for (ti, t) in s.templates().iter().enumerate() {
        match t.copies() {
            ExtNat::Fin(n) => {
                for ci in 0..n {
                    g = g.union(&t.copy_graph(ti, ci));
                }
            }
            Omega => add_omega_clique(&mut g, &t.neighborhood()),
        }
    }
    g
}

pub(crate) fn add_omega_clique(g: &mut ExtMultigraph, vs: &BTreeSet<String>) {
    let vs: Vec<&String> = vs.iter().collect();
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            g.set_mult(a, b, Omega).expect("core vertices");
        }
    }
}

/// Unordered pairs of a set, in order.
pub(crate) fn pairs_of(vs: &BTreeSet<String>) -> Vec<Pair> {
    let vs: Vec<&String> = vs.iter().collect();
    let mut out = Vec::new();
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            out.push(Pair::new(a.as_str(), b.as_str()));
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;
    use crate::ext::Fin;

    /// A template with interior `path` (consecutive unit edges) whose first
    /// vertex attaches to `first` targets and last vertex to `last` targets.
    pub fn path_template(
        name: &str,
        interior: &[&str],
        ends: &[(&str, &str)],
        copies: ExtNat,
    ) -> Template {
        let mut edges: Vec<(String, String)> = interior
            .windows(2)
            .map(|w| (w[0].to_string(), w[1].to_string()))
            .collect();
        let mut attach = BTreeMap::new();
        for (i, (iv, cv)) in ends.iter().enumerate() {
            let b = format!("b{i}");
            edges.push((iv.to_string(), b.clone()));
            attach.insert(b, cv.to_string());
        }
        let g = ExtMultigraph::from_edges(
            interior.iter().copied(),
            edges.iter().map(|(u, v)| (u.as_str(), v.as_str(), Fin(1))),
        )
        .unwrap();
        Template::new(name, g, attach, copies).unwrap()
    }

    pub fn core(vs: &[&str], edges: &[(&str, &str, ExtNat)]) -> ExtMultigraph {
        ExtMultigraph::from_edges(vs.iter().copied(), edges.iter().copied()).unwrap()
    }
}
