//! Random instances and invariant checks, shared by the `wbo fuzz` command and
//! the acceptance suite.
//!
//! Every trial draws its instances from a ChaCha8 stream seeded by
//! `(seed, trial)`, so a failing trial can be replayed on its own.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blocks::block_tree;
use crate::connectivity::{lambda, lambda_dir, verify_well_balanced};
use crate::contraction::{contract, induce_quotient, ContractionSpec};
use crate::decomposition::{
    edge_components_of_intersection, efficient_rewrite, is_efficient, segment_connectivity_check,
    Decomposition, PathWitness, Step,
};
use crate::ext::{ExtNat, Fin, Omega};
use crate::format::write_graph;
use crate::graph::{delete_skeleton, ExtMultigraph, Pair, Skeleton};
use crate::orienter::{glue_block_orientations, orient_bounded_vertices, orient_extend_skeleton};
use crate::rayless::check_l_connected;

/// The random stream of one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn vertex(i: usize) -> String {
    format!("v{i}")
}

/// A graph on `v0..v{n-1}`: each pair is an edge with probability `density`,
/// of multiplicity `1..=max_mult`, or `ω` with probability `omega`.
pub fn random_graph(
    rng: &mut impl Rng,
    n: usize,
    max_mult: u64,
    density: f64,
    omega: f64,
) -> ExtMultigraph {
    let mut g = ExtMultigraph::new();
    for i in 0..n {
        g.add_vertex(vertex(i));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                let m = random_mult(rng, max_mult, omega);
                g.set_mult(&vertex(i), &vertex(j), m).unwrap();
            }
        }
    }
    g
}

fn random_mult(rng: &mut impl Rng, max_mult: u64, omega: f64) -> ExtNat {
    if rng.gen_bool(omega) {
        Omega
    } else {
        Fin(rng.gen_range(1..=max_mult.max(1)))
    }
}

/// [`random_graph`] plus a random spanning tree.
pub fn random_connected_graph(
    rng: &mut impl Rng,
    n: usize,
    max_mult: u64,
    density: f64,
    omega: f64,
) -> ExtMultigraph {
    let mut g = random_graph(rng, n, max_mult, density, omega);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        if g.mult(&vertex(i), &vertex(j)).is_zero() {
            let m = random_mult(rng, max_mult, omega);
            g.set_mult(&vertex(i), &vertex(j), m).unwrap();
        }
    }
    g
}

/// A random walk that never revisits a vertex, stopping at a random length
/// or when stuck. Steps name fragments of `d` holding the edge.
pub fn random_path(rng: &mut impl Rng, d: &Decomposition) -> PathWitness {
    let g = d.base();
    let vs: Vec<&String> = g.vertices().iter().collect();
    let start = (*vs.choose(rng).expect("graph has vertices")).clone();
    let target_len = rng.gen_range(0..=g.vertex_count());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut p = PathWitness {
        vertices: vec![start],
        steps: Vec::new(),
    };
    while p.steps.len() < target_len {
        let cur = p.end().to_string();
        let options: Vec<(usize, String, u64)> = d
            .fragments()
            .iter()
            .enumerate()
            .flat_map(|(i, (_, f))| {
                f.neighbors(&cur)
                    .filter(|(w, _)| !seen.contains(*w))
                    .map(move |(w, m)| (i, w.to_string(), m.finite().unwrap_or(3)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let Some((fragment, next, m)) = options.choose(rng).cloned() else {
            break;
        };
        seen.insert(next.clone());
        p.vertices.push(next);
        p.steps.push(Step {
            fragment,
            slot: rng.gen_range(0..m),
        });
    }
    p
}

/// Random pairwise disjoint classes on the vertices of `g`.
pub fn random_classes(rng: &mut impl Rng, g: &ExtMultigraph, classes: usize) -> ContractionSpec {
    let mut groups: Vec<BTreeSet<String>> = vec![BTreeSet::new(); classes.max(1)];
    for v in g.vertices() {
        if rng.gen_bool(0.6) {
            let k = rng.gen_range(0..groups.len());
            groups[k].insert(v.clone());
        }
    }
    ContractionSpec::new(groups.into_iter().filter(|c| !c.is_empty())).unwrap()
}

/// Whether a check held on one instance, did not apply, or failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// The instance did not meet the check's hypothesis.
    Vacuous,
    Fail(String),
}

impl Outcome {
    fn from_result(r: crate::Result<Outcome>) -> Outcome {
        r.unwrap_or_else(|e| Outcome::Fail(format!("unexpected error: {e}")))
    }
}

/// Per-block orientations glued along the block tree are well-balanced.
/// With `faulty`, the verifier demands one more arc than it should.
pub fn check_block_gluing(g: &ExtMultigraph, seed: u64, faulty: bool) -> Outcome {
    Outcome::from_result((|| {
        let bt = block_tree(g);
        bt.validate(g)?;
        let mut parts = BTreeMap::new();
        for (id, _) in bt.parts() {
            let pg = bt.part_graph(g, id)?;
            parts.insert(id.to_string(), orient_bounded_vertices(&pg, seed)?);
        }
        let d = glue_block_orientations(g, &bt, &parts)?;
        let report = verify_well_balanced(g, &d)?;
        let bad: Vec<String> = report
            .pairs
            .iter()
            .filter(|p| {
                if faulty {
                    p.forward.min(p.backward) < p.required + Fin(1)
                } else {
                    !p.satisfied
                }
            })
            .map(|p| {
                format!(
                    "{} (λ {}, λ⃗ {}/{})",
                    p.pair, p.lambda, p.forward, p.backward
                )
            })
            .collect();
        Ok(if bad.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Fail(format!("glued orientation fails at {}", bad.join(", ")))
        })
    })())
}

/// The image of a connected subgraph under a contractible relation is
/// connected.
pub fn check_quotient_connected(rng: &mut impl Rng, g: &ExtMultigraph) -> Outcome {
    let spec = random_classes(rng, g, 2);
    // Drop class members adjacent to earlier members so the classes are
    // independent.
    let classes: Vec<BTreeSet<String>> = spec
        .classes()
        .iter()
        .map(|c| {
            let mut kept = BTreeSet::new();
            for v in c {
                if kept.iter().all(|w: &String| g.mult(v, w).is_zero()) {
                    kept.insert(v.clone());
                }
            }
            kept
        })
        .collect();
    let spec = ContractionSpec::new(classes).unwrap();
    let comps = g.components();
    let comp = comps.choose(rng).expect("graph has vertices");
    // A random connected subgraph: grow from one vertex through random edges,
    // keeping random sub-multiplicities.
    let order: Vec<&String> = comp.iter().collect();
    let root = order.choose(rng).unwrap().to_string();
    let mut h = ExtMultigraph::new();
    h.add_vertex(root.clone());
    loop {
        let frontier: Vec<(String, String, ExtNat)> = h
            .vertices()
            .iter()
            .flat_map(|u| {
                g.neighbors(u)
                    .filter(|(_, m)| m.is_positive())
                    .map(|(w, m)| (u.clone(), w.to_string(), m))
                    .collect::<Vec<_>>()
            })
            .filter(|(u, w, _)| h.mult(u, w).is_zero())
            .collect();
        if frontier.is_empty() || rng.gen_bool(0.15) {
            break;
        }
        let (u, w, m) = frontier.choose(rng).unwrap().clone();
        let sub = match m {
            Fin(k) => Fin(rng.gen_range(1..=k)),
            Omega => {
                if rng.gen_bool(0.5) {
                    Omega
                } else {
                    Fin(rng.gen_range(1..4))
                }
            }
        };
        h.add_vertex(w.clone());
        h.set_mult(&u, &w, sub).unwrap();
    }
    match induce_quotient(g, &h, &spec) {
        Ok(q) if q.is_connected() => Outcome::Pass,
        Ok(_) => Outcome::Fail(format!(
            "image of a connected subgraph is disconnected; classes {:?}",
            spec.classes()
        )),
        Err(e) => Outcome::Fail(format!("unexpected error: {e}")),
    }
}

/// A skeleton `K` and classes `∼` with `∼` contractible in `G - ||K||` and
/// every pair of `K` either equivalent or joined by `ω` edge-disjoint paths
/// in `G - ||K||`.
#[derive(Clone, Debug)]
pub struct SkeletonTriple {
    pub g: ExtMultigraph,
    pub k: Skeleton,
    pub spec: ContractionSpec,
}

impl SkeletonTriple {
    pub fn h(&self) -> ExtMultigraph {
        delete_skeleton(&self.g, &self.k)
    }
}

/// Random classes; `K` takes every adjacent equivalent pair and a few other
/// edges, keeping only those with `λ = ω` once `K` is removed.
pub fn random_skeleton_triple(rng: &mut impl Rng, g: &ExtMultigraph) -> SkeletonTriple {
    let count = rng.gen_range(1..=2);
    let spec = random_classes(rng, g, count);
    let mut pairs: BTreeSet<Pair> = g
        .edges()
        .filter(|(p, _)| spec.equivalent(p.lo(), p.hi()))
        .map(|(p, _)| p.clone())
        .collect();
    let extra: Vec<Pair> = g
        .edges()
        .filter(|(p, _)| !pairs.contains(*p) && rng.gen_bool(0.3))
        .map(|(p, _)| p.clone())
        .collect();
    let all = Skeleton::new(g, pairs.iter().chain(&extra).cloned()).unwrap();
    let h = delete_skeleton(g, &all);
    for p in extra {
        // Removing fewer pairs only enlarges `H`, so this stays true.
        if lambda(&h, p.lo(), p.hi()).unwrap().is_omega() {
            pairs.insert(p);
        }
    }
    let k = Skeleton::new(g, pairs).unwrap();
    SkeletonTriple {
        g: g.clone(),
        k,
        spec,
    }
}

/// `λ_{H/∼}(π(x), π(y)) ≥ λ_G(x, y)` whenever `π(x) ≠ π(y)`.
pub fn check_skeleton_contraction(t: &SkeletonTriple) -> Outcome {
    Outcome::from_result((|| {
        let h = t.h();
        let q = contract(&h, &t.spec)?;
        for x in t.g.vertices() {
            for y in t.g.vertices() {
                if x >= y {
                    continue;
                }
                let (px, py) = (t.spec.class_id(x), t.spec.class_id(y));
                if px == py {
                    continue;
                }
                let lg = lambda(&t.g, x, y)?;
                let lq = lambda(&q.quotient, &px, &py)?;
                if lq < lg {
                    return Ok(Outcome::Fail(format!(
                        "λ_G({x}, {y}) = {lg} but the quotient has only {lq}"
                    )));
                }
            }
        }
        Ok(Outcome::Pass)
    })())
}

/// Orients `H`, extends over `K`, and checks `λ⃗_G(x, y) ≥ λ⃗_{H/∼}(π(x), π(y))`.
/// Vacuous unless every equivalent pair has `λ⃗_H = ω` or an `ω` edge.
pub fn check_skeleton_extension(t: &SkeletonTriple, seed: u64) -> Outcome {
    Outcome::from_result((|| {
        let h = t.h();
        let dh = orient_bounded_vertices(&h, seed)?;
        let dg = match orient_extend_skeleton(&dh, &t.g, &t.k, Some(&t.spec)) {
            Ok(d) => d,
            Err(crate::Error::HypothesisViolated(_)) => return Ok(Outcome::Vacuous),
            Err(e) => return Err(e),
        };
        let q = contract(&h, &t.spec)?;
        let dq = dh.contract(&q)?;
        for x in t.g.vertices() {
            for y in t.g.vertices() {
                let (px, py) = (t.spec.class_id(x), t.spec.class_id(y));
                if px == py {
                    continue;
                }
                let lg = lambda_dir(&dg, x, y)?;
                let lq = lambda_dir(&dq, &px, &py)?;
                if lg < lq {
                    return Ok(Outcome::Fail(format!(
                        "λ⃗_G({x}, {y}) = {lg} but the quotient has {lq}"
                    )));
                }
            }
        }
        Ok(Outcome::Pass)
    })())
}

/// For a connected `g` and a nonempty independent `N`, lifting a
/// well-balanced orientation of `g/N` gives a connected `L(G⃗, N)`.
pub fn check_l_connectivity(rng: &mut impl Rng, g: &ExtMultigraph, seed: u64) -> Outcome {
    let mut vs: Vec<&String> = g.vertices().iter().collect();
    vs.shuffle(rng);
    let size = rng.gen_range(1..=vs.len().min(4));
    let mut n: BTreeSet<String> = BTreeSet::new();
    for v in vs {
        if n.len() < size && n.iter().all(|w| g.mult(v, w).is_zero()) {
            n.insert(v.clone());
        }
    }
    Outcome::from_result((|| {
        let q = contract(g, &ContractionSpec::new([n.clone()])?)?;
        let dq = orient_bounded_vertices(&q.quotient, seed)?;
        Ok(if check_l_connected(g, &n, &dq)? {
            Outcome::Pass
        } else {
            Outcome::Fail(format!("L is disconnected for N = {n:?}"))
        })
    })())
}

/// Rewrites a random path of the blocks decomposition of `g` and checks the
/// result: one segment per fragment, untouched fragments stay untouched,
/// same endpoints, at most `|E|` rounds. Returns the rewritten path too.
pub fn check_efficient_rewrite(
    rng: &mut impl Rng,
    d: &Decomposition,
) -> (Outcome, Option<PathWitness>) {
    let p = random_path(rng, d);
    let (q, rounds) = match efficient_rewrite(d, &p) {
        Ok(r) => r,
        Err(e) => return (Outcome::Fail(format!("unexpected error: {e}")), None),
    };
    let fail = |msg: String| (Outcome::Fail(msg), None);
    if q.validate(d).is_err() {
        return fail("rewritten path is not a path".into());
    }
    if q.start() != p.start() || q.end() != p.end() {
        return fail("rewritten path changed its endpoints".into());
    }
    if !is_efficient(&q, d) {
        return fail("rewritten path is not efficient".into());
    }
    for i in 0..d.len() {
        if edge_components_of_intersection(&p, i) == 0 && edge_components_of_intersection(&q, i) > 0
        {
            return fail(format!(
                "fragment `{}` was not used before",
                d.fragments()[i].0
            ));
        }
    }
    if rounds > d.base().edge_count() {
        return fail(format!(
            "{rounds} rounds for {} edges",
            d.base().edge_count()
        ));
    }
    (Outcome::Pass, Some(q))
}

/// Every segment of an efficient path keeps `λ_G` of the path's ends inside
/// its fragment.
pub fn check_segments(d: &Decomposition, p: &PathWitness) -> Outcome {
    match segment_connectivity_check(d, p) {
        Ok(r) if r.holds() => Outcome::Pass,
        Ok(r) => {
            let s = r.violations().next().unwrap();
            Outcome::Fail(format!(
                "segment {}..{} in `{}` has λ {} < {}",
                s.from, s.to, s.fragment, s.lambda, r.lambda
            ))
        }
        Err(e) => Outcome::Fail(format!("unexpected error: {e}")),
    }
}

/// The invariants exercised by [`run`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    BlockGluing,
    QuotientConnected,
    SkeletonContraction,
    SkeletonExtension,
    LConnected,
    SegmentConnectivity,
    EfficientRewrite,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::BlockGluing,
        Check::QuotientConnected,
        Check::SkeletonContraction,
        Check::SkeletonExtension,
        Check::LConnected,
        Check::SegmentConnectivity,
        Check::EfficientRewrite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::BlockGluing => "block-gluing",
            Check::QuotientConnected => "quotient-connected",
            Check::SkeletonContraction => "skeleton-contraction",
            Check::SkeletonExtension => "skeleton-extension",
            Check::LConnected => "l-connected",
            Check::SegmentConnectivity => "segment-connectivity",
            Check::EfficientRewrite => "efficient-rewrite",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub trial: u64,
    pub check: Check,
    pub message: String,
    /// A graph file whose header comments say how to replay the trial.
    pub replay: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub passed: u64,
    pub vacuous: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub trials: u64,
    pub tallies: BTreeMap<Check, Tally>,
    pub failures: Vec<Failure>,
}

impl Summary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trials == 0 {
            return Ok(());
        }
        writeln!(f, "trials {}", self.trials)?;
        for (check, t) in &self.tallies {
            writeln!(
                f,
                "{:<21} passed {:>5}  vacuous {:>5}  failed {:>5}",
                check.name(),
                t.passed,
                t.vacuous,
                t.failed
            )?;
        }
        for fail in &self.failures {
            writeln!(
                f,
                "trial {} {}: {}",
                fail.trial,
                fail.check.name(),
                fail.message
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    /// Largest number of vertices of a random graph (at least 2).
    pub size: usize,
    pub trials: u64,
    /// First trial index; with `trials = 1` this replays a single trial.
    pub first_trial: u64,
    /// Makes the gluing check use a verifier that asks for too much.
    pub inject_fault: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            size: 6,
            trials: 100,
            first_trial: 0,
            inject_fault: false,
        }
    }
}

/// Runs every check on the instances of one trial.
pub fn run_trial(config: &FuzzConfig, trial: u64) -> Vec<(Check, Outcome, ExtMultigraph)> {
    let mut rng = trial_rng(config.seed, trial);
    let size = config.size.max(2);
    let mut out = Vec::new();

    let n = rng.gen_range(1..=size);
    let g = random_graph(&mut rng, n, 4, 0.5, 0.15);
    let seed = rng.gen();
    out.push((
        Check::BlockGluing,
        check_block_gluing(&g, seed, config.inject_fault),
        g.clone(),
    ));
    out.push((
        Check::QuotientConnected,
        check_quotient_connected(&mut rng, &g),
        g.clone(),
    ));

    let n = rng.gen_range(2..=size);
    let g = random_connected_graph(&mut rng, n, 3, 0.5, 0.3);
    let t = random_skeleton_triple(&mut rng, &g);
    out.push((
        Check::SkeletonContraction,
        check_skeleton_contraction(&t),
        g.clone(),
    ));
    let seed = rng.gen();
    out.push((
        Check::SkeletonExtension,
        check_skeleton_extension(&t, seed),
        g.clone(),
    ));

    let n = rng.gen_range(2..=size.min(8));
    let g = random_connected_graph(&mut rng, n, 3, 0.4, 0.1);
    let seed = rng.gen();
    out.push((
        Check::LConnected,
        check_l_connectivity(&mut rng, &g, seed),
        g,
    ));

    let n = rng.gen_range(2..=size + 2);
    let g = random_connected_graph(&mut rng, n, 3, 0.3, 0.1);
    let d = Decomposition::blocks(&g);
    let (rewrite, path) = check_efficient_rewrite(&mut rng, &d);
    let segments = match &path {
        Some(p) => check_segments(&d, p),
        None => Outcome::Vacuous,
    };
    out.push((Check::EfficientRewrite, rewrite, g.clone()));
    out.push((Check::SegmentConnectivity, segments, g));
    out
}

pub fn run(config: &FuzzConfig) -> Summary {
    let mut summary = Summary {
        trials: config.trials,
        ..Summary::default()
    };
    for trial in config.first_trial..config.first_trial + config.trials {
        for (check, outcome, g) in run_trial(config, trial) {
            let tally = summary.tallies.entry(check).or_default();
            match outcome {
                Outcome::Pass => tally.passed += 1,
                Outcome::Vacuous => tally.vacuous += 1,
                Outcome::Fail(message) => {
                    tally.failed += 1;
                    let replay = format!(
                        "# check {}: {message}\n# replay: wbo fuzz --seed {} --size {} --first-trial {trial} --trials 1\n{}",
                        check.name(),
                        config.seed,
                        config.size,
                        write_graph(&g)
                    );
                    summary.failures.push(Failure {
                        trial,
                        check,
                        message,
                        replay,
                    });
                }
            }
        }
    }
    summary
}
