//! Contraction by an equivalence relation whose classes are independent sets,
//! and the induce/lift correspondence between subgraphs of `G` and `G/∼`.
//!
//! Contraction keeps every edge: a quotient pair carries the sum of the
//! multiplicities that merged into it, and the provenance map records which
//! original pairs those were. Class identifiers are the lexicographically
//! least member of each class.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin, Omega};
use crate::graph::{ExtMultigraph, Pair};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContractionSpec {
    classes: Vec<BTreeSet<String>>,
}

impl ContractionSpec {
    /// Validates that the blocks are nonempty and pairwise disjoint.
    /// Singleton blocks are dropped, they do not change the relation.
    pub fn new(classes: impl IntoIterator<Item = BTreeSet<String>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for class in classes {
            if class.is_empty() {
                return Err(Error::InvalidClasses("empty class".into()));
            }
            for v in &class {
                if !seen.insert(v.clone()) {
                    return Err(Error::InvalidClasses(format!("`{v}` is in two classes")));
                }
            }
            if class.len() > 1 {
                out.push(class);
            }
        }
        out.sort();
        Ok(ContractionSpec { classes: out })
    }

    pub fn trivial() -> Self {
        ContractionSpec::default()
    }

    /// The relation generated by a single set.
    pub fn single<'a>(class: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        ContractionSpec::new([class.into_iter().map(str::to_string).collect()])
    }

    pub fn classes(&self) -> &[BTreeSet<String>] {
        &self.classes
    }

    pub fn equivalent(&self, x: &str, y: &str) -> bool {
        x == y || self.classes.iter().any(|c| c.contains(x) && c.contains(y))
    }

    /// `π(v)`: the least member of the class of `v`.
    pub fn class_id(&self, v: &str) -> String {
        self.classes
            .iter()
            .find(|c| c.contains(v))
            .and_then(|c| c.first().cloned())
            .unwrap_or_else(|| v.to_string())
    }

    /// Every class member exists in `g` and no two members of a class are
    /// adjacent.
    pub fn check_contractible(&self, g: &ExtMultigraph) -> Result<()> {
        for class in &self.classes {
            for v in class {
                g.require_vertex(v)?;
            }
            for v in class {
                for (w, _) in g.neighbors(v) {
                    if class.contains(w) {
                        let p = Pair::new(v.as_str(), w);
                        return Err(Error::NonContractible(p.lo().into(), p.hi().into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `G/∼` together with the provenance of every quotient pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    pub quotient: ExtMultigraph,
    /// For each quotient pair, the original pairs (with multiplicity) that
    /// were merged into it, in lexicographic order.
    pub provenance: BTreeMap<Pair, Vec<(Pair, ExtNat)>>,
    class_of: BTreeMap<String, String>,
    members: BTreeMap<String, BTreeSet<String>>,
}

impl QuotientResult {
    pub fn class_of(&self, v: &str) -> Result<&str> {
        self.class_of
            .get(v)
            .map(String::as_str)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn members(&self, class: &str) -> Option<&BTreeSet<String>> {
        self.members.get(class)
    }
}

/// `G/∼`.
pub fn contract(g: &ExtMultigraph, spec: &ContractionSpec) -> Result<QuotientResult> {
    spec.check_contractible(g)?;
    let class_of: BTreeMap<String, String> = g
        .vertices()
        .iter()
        .map(|v| (v.clone(), spec.class_id(v)))
        .collect();
    let mut members: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (v, c) in &class_of {
        members.entry(c.clone()).or_default().insert(v.clone());
    }
    let mut quotient = ExtMultigraph::new();
    for c in members.keys() {
        quotient.add_vertex(c.clone());
    }
    let mut provenance: BTreeMap<Pair, Vec<(Pair, ExtNat)>> = BTreeMap::new();
    for (p, m) in g.edges() {
        let (a, b) = (&class_of[p.lo()], &class_of[p.hi()]);
        let qp = Pair::try_new(a.as_str(), b.as_str())
            .map_err(|_| Error::NonContractible(p.lo().into(), p.hi().into()))?;
        quotient.add_mult(a, b, m)?;
        provenance.entry(qp).or_default().push((p.clone(), m));
    }
    Ok(QuotientResult {
        quotient,
        provenance,
        class_of,
        members,
    })
}

/// `π(H)` for a subgraph `h ⊆ g`: vertices `π(V(h))`, edges pushed through
/// the provenance.
pub fn induce_quotient(
    g: &ExtMultigraph,
    h: &ExtMultigraph,
    spec: &ContractionSpec,
) -> Result<ExtMultigraph> {
    if !g.contains_subgraph(h) {
        return Err(Error::NotASubgraph("h is not contained in g".into()));
    }
    spec.check_contractible(g)?;
    let mut out = ExtMultigraph::new();
    for v in h.vertices() {
        out.add_vertex(spec.class_id(v));
    }
    for (p, m) in h.edges() {
        out.add_mult(&spec.class_id(p.lo()), &spec.class_id(p.hi()), m)?;
    }
    Ok(out)
}

/// Lifts a subgraph of the quotient to `g`, assigning each quotient pair's
/// multiplicity greedily to its provenance pairs in order. The lifted vertex
/// set is exactly the endpoints of the lifted edges.
pub fn lift_subgraph(
    g: &ExtMultigraph,
    q: &QuotientResult,
    h: &ExtMultigraph,
) -> Result<ExtMultigraph> {
    if !q.quotient.contains_subgraph(h) {
        return Err(Error::NotASubgraph(
            "h is not contained in the quotient".into(),
        ));
    }
    let mut out = ExtMultigraph::new();
    for (qp, m) in h.edges() {
        let prov = q.provenance.get(qp).map(Vec::as_slice).unwrap_or(&[]);
        for (p, take) in greedy_assign(m, prov)? {
            g.require_vertex(p.lo())?;
            out.add_vertex(p.lo());
            out.add_vertex(p.hi());
            out.add_mult(p.lo(), p.hi(), take)?;
        }
    }
    Ok(out)
}

fn greedy_assign(m: ExtNat, prov: &[(Pair, ExtNat)]) -> Result<Vec<(Pair, ExtNat)>> {
    let total: ExtNat = prov.iter().map(|(_, pm)| *pm).sum();
    if m > total {
        return Err(Error::InconsistentProvenance(format!(
            "cannot lift multiplicity {m} from provenance totalling {total}"
        )));
    }
    let mut out = Vec::new();
    match m {
        Omega => {
            let (p, _) = prov.iter().find(|(_, pm)| pm.is_omega()).ok_or_else(|| {
                Error::InconsistentProvenance("ω multiplicity without an ω provenance pair".into())
            })?;
            out.push((p.clone(), Omega));
        }
        Fin(mut rem) => {
            for (p, pm) in prov {
                if rem == 0 {
                    break;
                }
                let take = match pm {
                    Fin(k) => rem.min(*k),
                    Omega => rem,
                };
                if take > 0 {
                    out.push((p.clone(), Fin(take)));
                    rem -= take;
                }
            }
        }
    }
    Ok(out)
}

/// Splits the arcs `forward` (class `from_class` to the other class) and
/// `backward` of one quotient pair over its provenance pairs. Returns, per
/// provenance pair, the arcs leaving and entering the `from_class` endpoint.
pub(crate) fn disaggregate(
    forward: ExtNat,
    backward: ExtNat,
    prov: &[(Pair, ExtNat)],
) -> Result<Vec<(ExtNat, ExtNat)>> {
    let total: ExtNat = prov.iter().map(|(_, m)| *m).sum();
    if forward + backward != total {
        return Err(Error::InconsistentProvenance(format!(
            "arcs {forward}+{backward} do not match provenance total {total}"
        )));
    }
    let has_omega = prov.iter().any(|(_, m)| m.is_omega());
    if !has_omega {
        // total is finite here, and so are both directions.
        let mut rem = forward.finite().unwrap_or(0);
        return Ok(prov
            .iter()
            .map(|(_, m)| {
                let m = m.finite().unwrap_or(0);
                let f = rem.min(m);
                rem -= f;
                (Fin(f), Fin(m - f))
            })
            .collect());
    }
    match (forward, backward) {
        (Omega, Omega) => Ok(prov
            .iter()
            .map(|(_, m)| match m {
                Omega => (Omega, Omega),
                fin => (*fin, Fin(0)),
            })
            .collect()),
        (Omega, Fin(b)) => Ok(split_with_finite_side(b, prov)),
        (Fin(a), Omega) => Ok(split_with_finite_side(a, prov)
            .into_iter()
            .map(|(big, small)| (small, big))
            .collect()),
        (Fin(_), Fin(_)) => Err(Error::InconsistentProvenance(
            "finite arcs over an ω provenance pair".into(),
        )),
    }
}

/// Distributes a finite amount `small` over the provenance pairs; the other
/// direction takes the remainder, which is `ω` on `ω` pairs.
fn split_with_finite_side(small: u64, prov: &[(Pair, ExtNat)]) -> Vec<(ExtNat, ExtNat)> {
    let mut rem = small;
    let mut out: Vec<(ExtNat, ExtNat)> = prov
        .iter()
        .map(|(_, m)| match m {
            Fin(k) => {
                let s = rem.min(*k);
                rem -= s;
                (Fin(k - s), Fin(s))
            }
            Omega => (Omega, Fin(0)),
        })
        .collect();
    if rem > 0 {
        let (i, _) = prov
            .iter()
            .enumerate()
            .find(|(_, (_, m))| m.is_omega())
            .expect("caller checked for an ω pair");
        out[i].1 = Fin(rem);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_abc() -> ExtMultigraph {
        ExtMultigraph::from_edges([], [("a", "b", Fin(1)), ("b", "c", Fin(1))]).unwrap()
    }

    #[test]
    fn contract_path_ends() {
        let g = path_abc();
        let q = contract(&g, &ContractionSpec::single(["a", "c"]).unwrap()).unwrap();
        assert_eq!(q.quotient.vertex_count(), 2);
        assert_eq!(q.quotient.mult("a", "b"), Fin(2));
        let prov = &q.provenance[&Pair::new("a", "b")];
        // sum of provenance 1 + 1
        assert_eq!(prov.iter().map(|(_, m)| *m).sum::<ExtNat>(), Fin(2));
        assert_eq!(q.class_of("c").unwrap(), "a");
    }

    #[test]
    fn trivial_spec_is_identity() {
        let g = path_abc();
        let q = contract(&g, &ContractionSpec::trivial()).unwrap();
        assert_eq!(q.quotient, g);
    }

    #[test]
    fn adjacent_class_is_rejected() {
        let g = ExtMultigraph::from_edges([], [("a", "b", Fin(1))]).unwrap();
        let err = contract(&g, &ContractionSpec::single(["a", "b"]).unwrap());
        assert_eq!(err, Err(Error::NonContractible("a".into(), "b".into())));
    }

    #[test]
    fn overlapping_classes_are_rejected() {
        let c1: BTreeSet<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let c2: BTreeSet<String> = ["b", "c"].iter().map(|s| s.to_string()).collect();
        assert!(matches!(
            ContractionSpec::new([c1, c2]),
            Err(Error::InvalidClasses(_))
        ));
    }

    #[test]
    fn induce_examples() {
        let g = path_abc();
        let spec = ContractionSpec::single(["a", "c"]).unwrap();
        let single = ExtMultigraph::from_edges(["c"], []).unwrap();
        let img = induce_quotient(&g, &single, &spec).unwrap();
        assert_eq!(img.vertices().iter().collect::<Vec<_>>(), vec!["a"]);
        let img = induce_quotient(&g, &g, &spec).unwrap();
        assert_eq!(img, contract(&g, &spec).unwrap().quotient);
        assert!(img.is_connected());
        let bigger = ExtMultigraph::from_edges([], [("a", "b", Fin(2))]).unwrap();
        assert!(matches!(
            induce_quotient(&g, &bigger, &spec),
            Err(Error::NotASubgraph(_))
        ));
    }

    #[test]
    fn lift_examples() {
        let g = ExtMultigraph::from_edges([], [("a1", "b", Fin(1)), ("a2", "b", Fin(1))]).unwrap();
        let q = contract(&g, &ContractionSpec::single(["a1", "a2"]).unwrap()).unwrap();
        let lifted = lift_subgraph(&g, &q, &q.quotient).unwrap();
        assert_eq!(lifted, g);
        let empty = lift_subgraph(&g, &q, &ExtMultigraph::new()).unwrap();
        assert_eq!(empty.vertex_count(), 0);
        let one = ExtMultigraph::from_edges([], [("a1", "b", Fin(1))]).unwrap();
        let lifted = lift_subgraph(&g, &q, &one).unwrap();
        // minimal vertex set: a2 does not appear
        assert_eq!(
            lifted,
            ExtMultigraph::from_edges([], [("a1", "b", Fin(1))]).unwrap()
        );
        let too_much = ExtMultigraph::from_edges([], [("a1", "b", Fin(3))]).unwrap();
        assert!(lift_subgraph(&g, &q, &too_much).is_err());
    }

    #[test]
    fn disaggregate_cases() {
        let p = |a: &str, b: &str| Pair::new(a, b);
        let prov = vec![(p("a", "x"), Fin(1)), (p("b", "x"), Fin(1))];
        assert_eq!(
            disaggregate(Fin(2), Fin(0), &prov).unwrap(),
            vec![(Fin(1), Fin(0)), (Fin(1), Fin(0))]
        );
        let prov = vec![(p("a", "x"), Fin(2)), (p("b", "x"), Omega)];
        assert_eq!(
            disaggregate(Omega, Fin(3), &prov).unwrap(),
            vec![(Fin(0), Fin(2)), (Omega, Fin(1))]
        );
        assert_eq!(
            disaggregate(Fin(1), Omega, &prov).unwrap(),
            vec![(Fin(1), Fin(1)), (Fin(0), Omega)]
        );
        assert!(disaggregate(Fin(1), Fin(1), &prov).is_err());
        assert!(disaggregate(Fin(3), Fin(0), &[(p("a", "x"), Fin(2))]).is_err());
    }
}
