//! Well-balanced orientations of finite multigraphs.
//!
//! Each block is oriented on its own. Within a block, a few Eulerian
//! orientations of the graph plus a random pairing of odd vertices are tried
//! first; if none verifies, a complete branch-and-bound search over per-pair
//! splits takes over. A branch is cut as soon as some requirement
//! `λ⃗(x, y) ≥ ⌊λ(x, y)/2⌋` fails even with every undecided pair usable in both
//! directions.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::blocks::block_tree;
use crate::connectivity::{lambda_all, DirectedProbe};
use crate::error::{Error, Result};
use crate::ext::{ExtNat, Fin};
use crate::graph::{ExtMultigraph, Pair};
use crate::orientation::{accumulate_arcs, ArcMap, Orientation};

const EULER_TRIES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    /// Search nodes allowed per block before giving up.
    pub node_limit: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            node_limit: 5_000_000,
        }
    }
}

/// A well-balanced orientation of `g`, which must have finite multiplicities.
/// The result depends only on `g` and `seed`.
pub fn orient_finite(g: &ExtMultigraph, seed: u64) -> Result<Orientation> {
    orient_finite_with(
        g,
        &SearchConfig {
            seed,
            ..SearchConfig::default()
        },
    )
}

pub fn orient_finite_with(g: &ExtMultigraph, config: &SearchConfig) -> Result<Orientation> {
    if g.has_omega() {
        return Err(Error::HypothesisViolated(
            "finite search needs finite multiplicities".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut arcs = ArcMap::new();
    for (_, vs) in block_tree(g).parts() {
        let part = g.induced(vs.iter().map(String::as_str));
        if part.edge_count() == 0 {
            continue;
        }
        let o = BlockSearch::new(&part, config.node_limit).run(&mut rng)?;
        accumulate_arcs(&mut arcs, &o);
    }
    Orientation::new(g.clone(), arcs)
}

struct BlockSearch<'a> {
    g: &'a ExtMultigraph,
    pairs: Vec<(Pair, u64)>,
    /// `(x, y, k)`: need `λ⃗(x, y) ≥ k`, largest `k` first.
    needs: Vec<(String, String, u64)>,
    nodes: u64,
    node_limit: u64,
}

impl<'a> BlockSearch<'a> {
    fn new(g: &'a ExtMultigraph, node_limit: u64) -> Self {
        let pairs = g
            .edges()
            .map(|(p, m)| (p.clone(), m.finite().expect("checked finite")))
            .collect();
        let mut needs = Vec::new();
        for (p, l) in lambda_all(g) {
            let k = l.floor_half().finite().expect("finite graph");
            if k > 0 {
                needs.push((p.lo().to_string(), p.hi().to_string(), k));
                needs.push((p.hi().to_string(), p.lo().to_string(), k));
            }
        }
        needs.sort_by(|a, b| b.2.cmp(&a.2).then_with(|| (&a.0, &a.1).cmp(&(&b.0, &b.1))));
        BlockSearch {
            g,
            pairs,
            needs,
            nodes: 0,
            node_limit,
        }
    }

    fn run(mut self, rng: &mut ChaCha8Rng) -> Result<Orientation> {
        let mut hint = Vec::new();
        for _ in 0..EULER_TRIES {
            let candidate = self.euler_candidate(rng);
            if self.feasible(&candidate, candidate.len()) {
                return self.finish(&candidate);
            }
            if hint.is_empty() {
                hint = candidate;
            }
        }
        let mut fwd = vec![0; self.pairs.len()];
        if self.search(0, &mut fwd, &hint)? {
            self.finish(&fwd)
        } else {
            Err(Error::SearchExhausted(self.nodes))
        }
    }

    fn finish(&self, fwd: &[u64]) -> Result<Orientation> {
        Orientation::from_splits(
            self.g.clone(),
            self.pairs
                .iter()
                .zip(fwd)
                .map(|((p, m), &f)| (p.clone(), Fin(f), Fin(m - f))),
        )
    }

    /// Arcs with pairs `0..decided` split by `fwd` and the rest usable both
    /// ways at full multiplicity.
    fn optimistic_arcs(&self, fwd: &[u64], decided: usize) -> ArcMap {
        let mut arcs = ArcMap::new();
        for (i, (p, m)) in self.pairs.iter().enumerate() {
            let (f, b) = if i < decided {
                (fwd[i], m - fwd[i])
            } else {
                (*m, *m)
            };
            arcs.insert((p.lo().to_string(), p.hi().to_string()), Fin(f));
            arcs.insert((p.hi().to_string(), p.lo().to_string()), Fin(b));
        }
        arcs
    }

    fn feasible(&self, fwd: &[u64], decided: usize) -> bool {
        let probe = DirectedProbe::new(self.g.vertices(), &self.optimistic_arcs(fwd, decided));
        self.needs
            .iter()
            .all(|(x, y, k)| probe.reaches(x, y, ExtNat::Fin(*k)))
    }

    fn search(&mut self, i: usize, fwd: &mut Vec<u64>, hint: &[u64]) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::SearchExhausted(self.nodes));
        }
        if !self.feasible(fwd, i) {
            return Ok(false);
        }
        if i == self.pairs.len() {
            return Ok(true);
        }
        let m = self.pairs[i].1;
        let mut order: Vec<u64> = (0..=m).collect();
        order.sort_by_key(|&v| ((2 * v).abs_diff(m), v));
        if let Some(&h) = hint.get(i) {
            order.retain(|&v| v != h);
            order.insert(0, h);
        }
        for v in order {
            fwd[i] = v;
            if self.search(i + 1, fwd, hint)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Splits each pair evenly, then orients the leftover single edges along
    /// closed trails after joining odd vertices by a random pairing.
    fn euler_candidate(&self, rng: &mut ChaCha8Rng) -> Vec<u64> {
        let names: Vec<&String> = self.g.vertices().iter().collect();
        let index = |v: &str| {
            names
                .binary_search_by(|n| n.as_str().cmp(v))
                .expect("known vertex")
        };
        // (u, v, Some(pair index)) for leftover real edges, None for fictitious ones
        let mut edges: Vec<(usize, usize, Option<usize>)> = Vec::new();
        let mut degree = vec![0usize; names.len()];
        for (i, (p, m)) in self.pairs.iter().enumerate() {
            if m % 2 == 1 {
                let (u, v) = (index(p.lo()), index(p.hi()));
                edges.push((u, v, Some(i)));
                degree[u] += 1;
                degree[v] += 1;
            }
        }
        let mut odd: Vec<usize> = (0..names.len()).filter(|&v| degree[v] % 2 == 1).collect();
        odd.shuffle(rng);
        for w in odd.chunks(2) {
            edges.push((w[0], w[1], None));
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); names.len()];
        for (e, &(u, v, _)) in edges.iter().enumerate() {
            incident[u].push(e);
            incident[v].push(e);
        }
        let mut used = vec![false; edges.len()];
        let mut next = vec![0usize; names.len()];
        let mut fwd: Vec<u64> = self.pairs.iter().map(|(_, m)| m / 2).collect();
        for start in 0..names.len() {
            let mut at = start;
            loop {
                while next[at] < incident[at].len() && used[incident[at][next[at]]] {
                    next[at] += 1;
                }
                let Some(&e) = incident[at].get(next[at]) else {
                    break;
                };
                used[e] = true;
                let (u, v, real) = edges[e];
                let to = if u == at { v } else { u };
                if let Some(i) = real {
                    if at == index(self.pairs[i].0.lo()) {
                        fwd[i] += 1;
                    }
                }
                at = to;
            }
        }
        fwd
    }
}
