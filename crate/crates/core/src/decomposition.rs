//! Decompositions of a graph into edge-disjoint connected fragments, bonds,
//! and paths that meet every fragment in at most one edge-containing segment.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::blocks::block_tree;
use crate::connectivity::lambda;
use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin};
use crate::graph::{ExtMultigraph, Pair};
use crate::orientation::{accumulate_arcs, ArcMap, Orientation};

/// Fragments with more vertices than this are not searched for bonds.
pub const MAX_BOND_SEARCH_VERTICES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    base: ExtMultigraph,
    fragments: Vec<(String, ExtMultigraph)>,
}

impl Decomposition {
    /// Checks that the fragments are connected, carry distinct names, and
    /// add up to `base` pair by pair and vertex by vertex.
    pub fn new(base: ExtMultigraph, fragments: Vec<(String, ExtMultigraph)>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        let names: BTreeSet<&str> = fragments.iter().map(|(n, _)| n.as_str()).collect();
        if names.len() != fragments.len() {
            return bad("fragment names repeat".into());
        }
        let mut sum = ExtMultigraph::new();
        for (name, f) in &fragments {
            if f.vertex_count() == 0 {
                return bad(format!("fragment `{name}` is empty"));
            }
            if !f.is_connected() {
                return bad(format!("fragment `{name}` is not connected"));
            }
            if !base.contains_subgraph(f) {
                return bad(format!(
                    "fragment `{name}` is not a subgraph of the base graph"
                ));
            }
            sum = sum.union(f);
        }
        if sum.vertices() != base.vertices() {
            return bad("fragments do not cover every vertex".into());
        }
        for (p, m) in base.edges() {
            if sum.mult_of(p) != m {
                return bad(format!(
                    "fragments give {p} multiplicity {}, the graph has {m}",
                    sum.mult_of(p)
                ));
            }
        }
        if sum.edge_count() != base.edge_count() {
            return bad("fragments use pairs missing from the graph".into());
        }
        Ok(Decomposition { base, fragments })
    }

    /// The blocks of `g`, one fragment each.
    pub fn blocks(g: &ExtMultigraph) -> Self {
        let tree = block_tree(g);
        let fragments = tree
            .parts()
            .map(|(id, _)| {
                let f = tree.part_graph(g, id).expect("block ids are valid");
                (id.to_string(), f)
            })
            .collect();
        Decomposition::new(g.clone(), fragments).expect("blocks decompose the graph")
    }

    pub fn base(&self) -> &ExtMultigraph {
        &self.base
    }

    pub fn fragments(&self) -> &[(String, ExtMultigraph)] {
        &self.fragments
    }

    pub fn fragment(&self, i: usize) -> &ExtMultigraph {
        &self.fragments[i].1
    }

    pub fn len(&self) -> usize {
        self.fragments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fragments.is_empty()
    }
}

/// Whether removing `b` (a count of edges per pair) leaves one more
/// component and every removed edge joins the two new pieces, i.e. `b` is a
/// minimal nonempty cut.
pub fn is_bond(g: &ExtMultigraph, b: &BTreeMap<Pair, ExtNat>) -> Result<bool> {
    let mut rest = g.clone();
    for (p, &c) in b {
        let m = g.mult_of(p);
        if c > m || !g.has_vertex(p.lo()) || !g.has_vertex(p.hi()) {
            return Err(Error::UnknownEdge(p.lo().into(), p.hi().into()));
        }
        // Finitely many edges taken from an `ω` bundle leave `ω` behind.
        let left = if c == m {
            Fin(0)
        } else {
            m.checked_sub(c).unwrap_or(m)
        };
        rest.set_mult(p.lo(), p.hi(), left)?;
    }
    if b.values().all(|c| c.is_zero()) {
        return Ok(false);
    }
    let comps = rest.components();
    if comps.len() != g.components().len() + 1 {
        return Ok(false);
    }
    let comp_of = |v: &str| comps.iter().position(|c| c.contains(v));
    Ok(b.keys().all(|p| comp_of(p.lo()) != comp_of(p.hi())))
}

/// A bond of a fragment that is not a bond of the whole graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BondViolation {
    pub fragment: String,
    /// Side of the fragment's vertex set holding its smallest vertex.
    pub side: BTreeSet<String>,
    pub cut: BTreeMap<Pair, ExtNat>,
}

/// Every bond with at most `b_max` edges of every fragment that is not a
/// bond of the base graph. A fragment bond is the set of fragment edges
/// across a 2-partition of its vertices with both sides connected, so each
/// fragment costs `2^(n-1)` partitions; fragments over
/// [`MAX_BOND_SEARCH_VERTICES`] vertices are rejected.
pub fn bond_faithful(d: &Decomposition, b_max: u64) -> Result<Vec<BondViolation>> {
    let mut out = Vec::new();
    for (name, f) in d.fragments() {
        let vs: Vec<&str> = f.vertices().iter().map(String::as_str).collect();
        let n = vs.len();
        if n > MAX_BOND_SEARCH_VERTICES {
            return Err(Error::InvalidDecomposition(format!(
                "fragment `{name}` has {n} vertices, too many to search for bonds"
            )));
        }
        if n < 2 {
            continue;
        }
        for mask in 0..(1u64 << (n - 1)) {
            // Bit i of `mask` puts vertex i+1 on the side of vertex 0.
            let side: BTreeSet<String> = std::iter::once(vs[0])
                .chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| vs[i]))
                .map(str::to_string)
                .collect();
            if side.len() == n {
                continue;
            }
            let mut cut = BTreeMap::new();
            let mut size = 0u64;
            let mut too_big = false;
            for (p, m) in f.edges() {
                if side.contains(p.lo()) != side.contains(p.hi()) {
                    match m.finite() {
                        Some(k) => size += k,
                        None => too_big = true,
                    }
                    cut.insert(p.clone(), m);
                }
            }
            if too_big || size > b_max {
                continue;
            }
            let other: Vec<&str> = vs.iter().copied().filter(|v| !side.contains(*v)).collect();
            if !f.induced(side.iter().map(String::as_str)).is_connected()
                || !f.induced(other).is_connected()
            {
                continue;
            }
            if !is_bond(d.base(), &cut)? {
                out.push(BondViolation {
                    fragment: name.clone(),
                    side,
                    cut,
                });
            }
        }
    }
    Ok(out)
}

/// One step of a path: the fragment whose edge it uses and which of that
/// fragment's parallel edges (`slot < mult`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub fragment: usize,
    pub slot: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWitness {
    pub vertices: Vec<String>,
    pub steps: Vec<Step>,
}

impl PathWitness {
    pub fn start(&self) -> &str {
        &self.vertices[0]
    }

    pub fn end(&self) -> &str {
        self.vertices.last().expect("paths are nonempty")
    }

    /// Checks that this is a path of `d`'s base graph using only edges that
    /// exist in the named fragments.
    pub fn validate(&self, d: &Decomposition) -> Result<()> {
        let bad = |msg: String| Err(Error::NotAPath(msg));
        if self.vertices.is_empty() {
            return bad("no vertices".into());
        }
        if self.steps.len() + 1 != self.vertices.len() {
            return bad(format!(
                "{} vertices but {} steps",
                self.vertices.len(),
                self.steps.len()
            ));
        }
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            d.base().require_vertex(v)?;
            if !seen.insert(v) {
                return bad(format!("vertex `{v}` repeats"));
            }
        }
        for (i, s) in self.steps.iter().enumerate() {
            let (u, v) = (&self.vertices[i], &self.vertices[i + 1]);
            let Some((name, f)) = d.fragments().get(s.fragment) else {
                return bad(format!("step {i} names fragment {}", s.fragment));
            };
            if Fin(s.slot) >= f.mult(u, v) {
                return bad(format!(
                    "fragment `{name}` has no edge {u}-{v} with slot {}",
                    s.slot
                ));
            }
        }
        Ok(())
    }

    /// Maximal runs of consecutive steps in one fragment, as
    /// `(fragment, first step, one past last step)`.
    pub fn segments(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<(usize, usize, usize)> = Vec::new();
        for (i, s) in self.steps.iter().enumerate() {
            match out.last_mut() {
                Some(last) if last.0 == s.fragment => last.2 = i + 1,
                _ => out.push((s.fragment, i, i + 1)),
            }
        }
        out
    }
}

/// Components of `P ∩ G_i` that contain an edge. Runs of `P` in one fragment
/// separated by other steps share no vertex because `P` is a path.
pub fn edge_components_of_intersection(p: &PathWitness, fragment: usize) -> usize {
    p.segments().iter().filter(|s| s.0 == fragment).count()
}

fn edge_component_total(p: &PathWitness, d: &Decomposition) -> usize {
    (0..d.len())
        .map(|i| edge_components_of_intersection(p, i))
        .sum()
}

pub fn is_efficient(p: &PathWitness, d: &Decomposition) -> bool {
    (0..d.len()).all(|i| edge_components_of_intersection(p, i) <= 1)
}

/// Lexicographically smallest shortest path from `a` to `b` in `f`.
fn shortest_path(f: &ExtMultigraph, a: &str, b: &str) -> Option<Vec<String>> {
    let adj = f.adjacency();
    let mut dist: BTreeMap<&str, usize> = BTreeMap::from([(b, 0)]);
    let mut queue = VecDeque::from([b]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !dist.contains_key(w) {
                dist.insert(w, dist[u] + 1);
                queue.push_back(w);
            }
        }
    }
    let mut cur = a;
    let mut path = vec![a.to_string()];
    let mut left = *dist.get(a)?;
    while left > 0 {
        left -= 1;
        cur = adj[cur]
            .iter()
            .copied()
            .find(|w| dist.get(w) == Some(&left))
            .expect("distances decrease along some neighbour");
        path.push(cur.to_string());
    }
    Some(path)
}

/// Rewrites `p` until it meets every fragment in at most one edge-containing
/// segment. Each round takes the first fragment met at least twice, and
/// replaces the part of `p` between its first and last vertex in that
/// fragment by a shortest path inside the fragment. Fragments `p` does not
/// use stay unused. Returns the new path and the number of rounds.
pub fn efficient_rewrite(d: &Decomposition, p: &PathWitness) -> Result<(PathWitness, usize)> {
    p.validate(d)?;
    let mut p = p.clone();
    let mut rounds = 0;
    while let Some(i) = (0..d.len()).find(|&i| edge_components_of_intersection(&p, i) >= 2) {
        let before = edge_component_total(&p, d);
        let f = d.fragment(i);
        let first = p.vertices.iter().position(|v| f.has_vertex(v)).unwrap();
        let last = p.vertices.iter().rposition(|v| f.has_vertex(v)).unwrap();
        let detour = shortest_path(f, &p.vertices[first], &p.vertices[last])
            .expect("fragments are connected");
        let mut vertices = p.vertices[..first].to_vec();
        vertices.extend(detour.iter().cloned());
        vertices.extend(p.vertices[last + 1..].iter().cloned());
        let mut steps = p.steps[..first].to_vec();
        steps.extend((1..detour.len()).map(|_| Step {
            fragment: i,
            slot: 0,
        }));
        steps.extend(p.steps[last..].iter().copied());
        p = PathWitness { vertices, steps };
        debug_assert!(p.validate(d).is_ok());
        debug_assert!(edge_component_total(&p, d) < before);
        rounds += 1;
    }
    Ok((p, rounds))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub fragment: String,
    pub from: String,
    pub to: String,
    /// `λ` of the endpoints inside the fragment.
    pub lambda: ExtNat,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentReport {
    /// `λ_G` of the path's endpoints.
    pub lambda: ExtNat,
    pub segments: Vec<Segment>,
}

impl SegmentReport {
    pub fn holds(&self) -> bool {
        self.segments.iter().all(|s| s.satisfied)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Segment> {
        self.segments.iter().filter(|s| !s.satisfied)
    }
}

/// For an efficient path from `x` to `y`, compares `λ` inside each fragment
/// between the ends of its segment with `λ_G(x, y)`. With a bond-faithful
/// decomposition every segment should reach it.
pub fn segment_connectivity_check(d: &Decomposition, p: &PathWitness) -> Result<SegmentReport> {
    p.validate(d)?;
    if let Some(i) = (0..d.len()).find(|&i| edge_components_of_intersection(p, i) > 1) {
        return Err(Error::NotEfficient(format!(
            "the path meets fragment `{}` in {} segments",
            d.fragments()[i].0,
            edge_components_of_intersection(p, i)
        )));
    }
    let total = if p.steps.is_empty() {
        Fin(0)
    } else {
        lambda(d.base(), p.start(), p.end())?
    };
    let segments = p
        .segments()
        .into_iter()
        .map(|(i, a, b)| {
            let (from, to) = (&p.vertices[a], &p.vertices[b]);
            let l = lambda(d.fragment(i), from, to)?;
            Ok(Segment {
                fragment: d.fragments()[i].0.clone(),
                from: from.clone(),
                to: to.clone(),
                lambda: l,
                satisfied: l >= total,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SegmentReport {
        lambda: total,
        segments,
    })
}

/// The union of one orientation per fragment.
pub fn glue_decomposition_orientations(
    d: &Decomposition,
    parts: &[Orientation],
) -> Result<Orientation> {
    if parts.len() != d.len() {
        return Err(Error::FragmentMismatch(format!(
            "{} fragments but {} orientations",
            d.len(),
            parts.len()
        )));
    }
    let mut arcs = ArcMap::new();
    for ((name, f), o) in d.fragments().iter().zip(parts) {
        if o.base() != f {
            return Err(Error::FragmentMismatch(format!(
                "orientation does not orient fragment `{name}`"
            )));
        }
        accumulate_arcs(&mut arcs, o);
    }
    Orientation::new(d.base().clone(), arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{lambda_dir, verify_well_balanced};
    use crate::ext::Omega;
    use crate::orienter::orient_finite;

    fn graph(edges: &[(&str, &str, u64)]) -> ExtMultigraph {
        ExtMultigraph::from_edges([], edges.iter().map(|&(u, v, m)| (u, v, Fin(m)))).unwrap()
    }

    fn cut(pairs: &[(&str, &str, u64)]) -> BTreeMap<Pair, ExtNat> {
        pairs
            .iter()
            .map(|&(u, v, m)| (Pair::new(u, v), Fin(m)))
            .collect()
    }

    fn path(vs: &[&str], fragments: &[usize]) -> PathWitness {
        PathWitness {
            vertices: vs.iter().map(|v| v.to_string()).collect(),
            steps: fragments
                .iter()
                .map(|&f| Step {
                    fragment: f,
                    slot: 0,
                })
                .collect(),
        }
    }

    fn square() -> ExtMultigraph {
        graph(&[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)])
    }

    fn square_halves() -> Decomposition {
        Decomposition::new(
            square(),
            vec![
                ("left".into(), graph(&[("a", "b", 1), ("b", "c", 1)])),
                ("right".into(), graph(&[("c", "d", 1), ("d", "a", 1)])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn bonds() {
        let bridge = graph(&[("a", "b", 1), ("b", "c", 2)]);
        assert!(is_bond(&bridge, &cut(&[("a", "b", 1)])).unwrap());
        assert!(!is_bond(&bridge, &cut(&[("b", "c", 1)])).unwrap());
        assert!(is_bond(&bridge, &cut(&[("b", "c", 2)])).unwrap());
        assert!(!is_bond(&bridge, &cut(&[("a", "b", 1), ("b", "c", 2)])).unwrap());
        assert!(is_bond(&square(), &cut(&[("a", "b", 1), ("c", "d", 1)])).unwrap());
        assert!(!is_bond(&square(), &cut(&[("a", "b", 1)])).unwrap());
        assert_eq!(
            is_bond(&square(), &cut(&[("a", "c", 1)])),
            Err(Error::UnknownEdge("a".into(), "c".into()))
        );
        assert!(!is_bond(&square(), &BTreeMap::new()).unwrap());
    }

    #[test]
    fn bond_faithfulness() {
        let single = Decomposition::new(square(), vec![("all".into(), square())]).unwrap();
        assert!(bond_faithful(&single, 10).unwrap().is_empty());
        let v = bond_faithful(&square_halves(), 10).unwrap();
        assert_eq!(v.len(), 4);
        assert!(v.iter().all(|b| b.cut.len() == 1));

        let bowtie = graph(&[
            ("a", "b", 1),
            ("b", "v", 1),
            ("v", "a", 1),
            ("v", "c", 1),
            ("c", "d", 1),
            ("d", "v", 1),
        ]);
        let d = Decomposition::blocks(&bowtie);
        assert_eq!(d.len(), 2);
        assert!(bond_faithful(&d, 10).unwrap().is_empty());
    }

    #[test]
    fn invalid_decompositions() {
        let short = Decomposition::new(
            square(),
            vec![("left".into(), graph(&[("a", "b", 1), ("b", "c", 1)]))],
        );
        assert!(matches!(short, Err(Error::InvalidDecomposition(_))));
        let split = Decomposition::new(
            square(),
            vec![
                ("x".into(), graph(&[("a", "b", 1), ("c", "d", 1)])),
                ("y".into(), graph(&[("b", "c", 1), ("d", "a", 1)])),
            ],
        );
        assert!(matches!(split, Err(Error::InvalidDecomposition(_))));
    }

    #[test]
    fn counting_edge_components() {
        let d = square_halves();
        let p = path(&["a", "b", "c", "d"], &[0, 0, 1]);
        p.validate(&d).unwrap();
        assert_eq!(edge_components_of_intersection(&p, 0), 1);
        assert_eq!(edge_components_of_intersection(&p, 1), 1);
        assert_eq!(
            edge_components_of_intersection(&path(&["b", "c"], &[0]), 1),
            0
        );

        let g = graph(&[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("b", "d", 1)]);
        let d = Decomposition::new(
            g.clone(),
            vec![
                (
                    "p".into(),
                    graph(&[("a", "b", 1), ("c", "d", 1), ("b", "d", 1)]),
                ),
                ("q".into(), graph(&[("b", "c", 1)])),
            ],
        )
        .unwrap();
        let zig = path(&["a", "b", "c", "d"], &[0, 1, 0]);
        zig.validate(&d).unwrap();
        assert_eq!(edge_components_of_intersection(&zig, 0), 2);
        let (fixed, rounds) = efficient_rewrite(&d, &zig).unwrap();
        assert_eq!(rounds, 1);
        assert_eq!(fixed, path(&["a", "b", "d"], &[0, 0]));
        assert!(is_efficient(&fixed, &d));
        assert_eq!(efficient_rewrite(&d, &fixed).unwrap(), (fixed, 0));
    }

    #[test]
    fn invalid_paths() {
        let d = square_halves();
        assert!(matches!(
            path(&["a", "c"], &[0]).validate(&d),
            Err(Error::NotAPath(_))
        ));
        assert!(matches!(
            path(&["a", "b", "a"], &[0, 0]).validate(&d),
            Err(Error::NotAPath(_))
        ));
        let mut p = path(&["a", "b"], &[0]);
        p.steps[0].slot = 1;
        assert!(matches!(p.validate(&d), Err(Error::NotAPath(_))));
    }

    #[test]
    fn segment_checks() {
        let bowtie = graph(&[
            ("a", "b", 1),
            ("b", "v", 1),
            ("v", "a", 1),
            ("v", "c", 1),
            ("c", "d", 1),
            ("d", "v", 1),
        ]);
        let d = Decomposition::blocks(&bowtie);
        let first = d
            .fragments()
            .iter()
            .position(|(_, f)| f.has_vertex("a"))
            .unwrap();
        let p = path(&["a", "v", "c"], &[first, 1 - first]);
        let rep = segment_connectivity_check(&d, &p).unwrap();
        assert_eq!(rep.lambda, Fin(2));
        assert!(rep.holds());
        assert!(rep.segments.iter().all(|s| s.lambda == Fin(2)));

        let rep =
            segment_connectivity_check(&square_halves(), &path(&["a", "b", "c"], &[0, 0])).unwrap();
        assert_eq!(rep.lambda, Fin(2));
        assert_eq!(rep.violations().count(), 1);

        let g = graph(&[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("b", "d", 1)]);
        let d = Decomposition::new(
            g,
            vec![
                (
                    "p".into(),
                    graph(&[("a", "b", 1), ("c", "d", 1), ("b", "d", 1)]),
                ),
                ("q".into(), graph(&[("b", "c", 1)])),
            ],
        )
        .unwrap();
        assert!(matches!(
            segment_connectivity_check(&d, &path(&["a", "b", "c", "d"], &[0, 1, 0])),
            Err(Error::NotEfficient(_))
        ));
    }

    #[test]
    fn gluing() {
        let g = graph(&[("a", "b", 4)]);
        let half = graph(&[("a", "b", 2)]);
        let d = Decomposition::new(
            g.clone(),
            vec![("x".into(), half.clone()), ("y".into(), half.clone())],
        )
        .unwrap();
        let o = orient_finite(&half, 0).unwrap();
        let glued = glue_decomposition_orientations(&d, &[o.clone(), o.clone()]).unwrap();
        assert_eq!(lambda_dir(&glued, "a", "b"), Ok(Fin(2)));
        assert_eq!(lambda_dir(&glued, "b", "a"), Ok(Fin(2)));
        assert!(matches!(
            glue_decomposition_orientations(&d, std::slice::from_ref(&o)),
            Err(Error::FragmentMismatch(_))
        ));

        let w = ExtMultigraph::from_edges([], [("a", "b", Omega), ("b", "c", Fin(3))]).unwrap();
        let d = Decomposition::blocks(&w);
        let parts: Vec<Orientation> = d
            .fragments()
            .iter()
            .map(|(_, f)| crate::orienter::orient_bounded_vertices(f, 0).unwrap())
            .collect();
        let glued = glue_decomposition_orientations(&d, &parts).unwrap();
        assert!(verify_well_balanced(&w, &glued).unwrap().is_well_balanced());

        let single = Decomposition::new(w.clone(), vec![("all".into(), w.clone())]).unwrap();
        let o = crate::orienter::orient_bounded_vertices(&w, 0).unwrap();
        assert_eq!(
            glue_decomposition_orientations(&single, std::slice::from_ref(&o)).unwrap(),
            o
        );
    }
}
