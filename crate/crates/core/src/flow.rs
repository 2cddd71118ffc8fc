//! Dinic's algorithm on an index-based residual network.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
}

impl FlowNetwork {
    pub(crate) fn new(n: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn push_pair(&mut self, u: usize, v: usize, fwd: u64, bwd: u64) {
        let id = self.to.len();
        self.to.push(v);
        self.cap.push(fwd);
        self.adj[u].push(id);
        self.to.push(u);
        self.cap.push(bwd);
        self.adj[v].push(id + 1);
    }

    pub(crate) fn add_arc(&mut self, u: usize, v: usize, cap: u64) {
        if cap > 0 {
            self.push_pair(u, v, cap, 0);
        }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize, cap: u64) {
        if cap > 0 {
            self.push_pair(u, v, cap, cap);
        }
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn augment(
        &mut self,
        u: usize,
        t: usize,
        pushed: u64,
        level: &[usize],
        it: &mut [usize],
    ) -> u64 {
        if u == t {
            return pushed;
        }
        while it[u] < self.adj[u].len() {
            let e = self.adj[u][it[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u].wrapping_add(1) {
                let got = self.augment(v, t, pushed.min(self.cap[e]), level, it);
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] = self.cap[e ^ 1].saturating_add(got);
                    return got;
                }
            }
            it[u] += 1;
        }
        0
    }

    /// Maximum `s`-`t` flow, stopping early once `limit` is reached.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        if s == t {
            return limit;
        }
        let mut flow = 0u64;
        while flow < limit {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                break;
            }
            let mut it = vec![0; self.adj.len()];
            loop {
                let got = self.augment(s, t, limit - flow, &level, &mut it);
                if got == 0 {
                    break;
                }
                flow += got;
                if flow >= limit {
                    break;
                }
            }
        }
        flow
    }

    /// Vertices reachable from `s` in the residual network.
    pub(crate) fn residual_side(&self, s: usize) -> Vec<bool> {
        self.levels(s)
            .into_iter()
            .map(|l| l != usize::MAX)
            .collect()
    }
}
