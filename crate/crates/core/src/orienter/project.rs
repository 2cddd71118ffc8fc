use std::collections::{BTreeMap, VecDeque};

use crate::connectivity::lambda;
use crate::contraction::ContractionSpec;
use crate::error::{Error, Result};
use crate::graph::{delete_skeleton, ExtMultigraph, Pair, Skeleton};

/// A path in `(G - ||K||)/∼`: class identifiers, and for every step the pair
/// of `G - ||K||` whose edge realises it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPath {
    pub vertices: Vec<String>,
    pub steps: Vec<Pair>,
}

/// Turns an `x`-`y` path of `g` into a `π(x)`-`π(y)` path of
/// `(g - ||k||)/spec` that uses none of the `forbidden` edges of `g - ||k||`.
///
/// Skeleton steps between equivalent vertices collapse to a single class.
/// Any other skeleton step `ab` needs `λ_{g - ||k||}(a, b) = ω` and is replaced
/// by a shortest `a`-`b` path through the edges still available.
pub fn project_path(
    g: &ExtMultigraph,
    k: &Skeleton,
    spec: &ContractionSpec,
    path: &[String],
    forbidden: &BTreeMap<Pair, u64>,
) -> Result<QuotientPath> {
    let h = delete_skeleton(g, k);
    spec.check_contractible(&h)?;
    check_simple_path(g, path)?;
    for p in k.pairs() {
        if !spec.equivalent(p.lo(), p.hi()) && !lambda(&h, p.lo(), p.hi())?.is_omega() {
            return Err(Error::HypothesisViolated(format!(
                "skeleton pair {p} is neither contracted nor ω-connected outside the skeleton"
            )));
        }
    }
    let mut used: BTreeMap<Pair, u64> = forbidden.clone();
    for w in path.windows(2) {
        let p = Pair::new(w[0].as_str(), w[1].as_str());
        if !k.contains(&p) {
            let count = used.entry(p.clone()).or_default();
            *count += 1;
            if h.mult_of(&p) < *count {
                return Err(Error::HypothesisViolated(format!(
                    "path uses a forbidden edge on {p}"
                )));
            }
        }
    }

    // Walk in g: vertices plus, per step, whether it is an H edge.
    let mut walk: Vec<String> = vec![path[0].clone()];
    for w in path.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let p = Pair::new(a.as_str(), b.as_str());
        if !k.contains(&p) || spec.equivalent(a, b) {
            walk.push(b.clone());
            continue;
        }
        let detour = shortest_available(&h, a, b, &used).ok_or_else(|| {
            Error::HypothesisViolated(format!("no detour for {p} avoiding the used edges"))
        })?;
        for s in detour.windows(2) {
            *used
                .entry(Pair::new(s[0].as_str(), s[1].as_str()))
                .or_default() += 1;
        }
        walk.extend(detour.into_iter().skip(1));
    }

    let mut vertices: Vec<String> = vec![spec.class_id(&walk[0])];
    let mut steps: Vec<Pair> = Vec::new();
    for w in walk.windows(2) {
        let (ca, cb) = (spec.class_id(&w[0]), spec.class_id(&w[1]));
        if ca == cb {
            continue;
        }
        if let Some(pos) = vertices.iter().position(|v| *v == cb) {
            vertices.truncate(pos + 1);
            steps.truncate(pos);
        } else {
            vertices.push(cb);
            steps.push(Pair::new(w[0].as_str(), w[1].as_str()));
        }
    }
    Ok(QuotientPath { vertices, steps })
}

fn check_simple_path(g: &ExtMultigraph, path: &[String]) -> Result<()> {
    if path.is_empty() {
        return Err(Error::NotAPath("empty vertex sequence".into()));
    }
    for (i, v) in path.iter().enumerate() {
        g.require_vertex(v)?;
        if path[..i].contains(v) {
            return Err(Error::NotAPath(format!("vertex `{v}` repeats")));
        }
    }
    for w in path.windows(2) {
        if g.mult(&w[0], &w[1]).is_zero() {
            return Err(Error::NotAPath(format!(
                "no edge between `{}` and `{}`",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// BFS over pairs with an unused edge left, neighbours in lexicographic
/// order, so ties resolve to the lexicographically first shortest path.
fn shortest_available(
    h: &ExtMultigraph,
    from: &str,
    to: &str,
    used: &BTreeMap<Pair, u64>,
) -> Option<Vec<String>> {
    let adj = h.adjacency();
    let mut prev: BTreeMap<&str, &str> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    prev.insert(from, from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut out = vec![to.to_string()];
            let mut at = to;
            while at != from {
                at = prev[at];
                out.push(at.to_string());
            }
            out.reverse();
            return Some(out);
        }
        for &w in &adj[u] {
            if prev.contains_key(w) {
                continue;
            }
            let p = Pair::new(u, w);
            let taken = used.get(&p).copied().unwrap_or(0);
            if h.mult_of(&p) > taken {
                prev.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    None
}
