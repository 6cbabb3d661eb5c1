//! Highest-label push–relabel maximum flow over real capacities, with the
//! gap heuristic and periodic global relabeling.
//!
//! Both phases run in one loop: vertices that cannot reach the sink climb
//! above `n` and return their excess to the source, so the result is a
//! proper flow and source-side residual reachability yields a minimum cut.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    residual: f64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    arcs: Vec<Arc>,
    capacity: Vec<f64>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            n,
            arcs: Vec::new(),
            capacity: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Adds the arc pair `u -> v` / `v -> u` with the given capacities and
    /// returns the index of the forward arc. An undirected edge is
    /// `add_edge(u, v, c, c)`.
    pub fn add_edge(&mut self, u: usize, v: usize, cap_uv: f64, cap_vu: f64) -> usize {
        debug_assert!(cap_uv >= 0.0 && cap_vu >= 0.0);
        let a = self.arcs.len();
        self.arcs.push(Arc {
            to: v,
            rev: a + 1,
            residual: cap_uv,
        });
        self.arcs.push(Arc {
            to: u,
            rev: a,
            residual: cap_vu,
        });
        self.capacity.push(cap_uv);
        self.capacity.push(cap_vu);
        self.adj[u].push(a);
        self.adj[v].push(a + 1);
        a
    }

    pub fn residual(&self, arc: usize) -> f64 {
        self.arcs[arc].residual
    }

    /// Net flow along the forward direction of an arc pair.
    pub fn flow(&self, arc: usize) -> f64 {
        self.capacity[arc] - self.arcs[arc].residual
    }

    /// Computes a maximum flow from `s` to `t` and returns its value.
    pub fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        if s == t {
            return 0.0;
        }
        let mut solver = Solver::new(self, s, t);
        solver.run();
        solver.excess[t]
    }

    /// Vertices reachable from `s` through arcs with residual above `tol`.
    pub fn source_side(&self, s: usize, tol: f64) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.residual > tol && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }
}

struct Solver<'a> {
    net: &'a mut FlowNetwork,
    s: usize,
    t: usize,
    height: Vec<usize>,
    excess: Vec<f64>,
    current: Vec<usize>,
    count: Vec<usize>,
    buckets: Vec<Vec<usize>>,
    in_bucket: Vec<bool>,
    highest: usize,
    relabels_since_global: usize,
}

impl<'a> Solver<'a> {
    fn new(net: &'a mut FlowNetwork, s: usize, t: usize) -> Self {
        let n = net.n;
        Solver {
            net,
            s,
            t,
            height: vec![0; n],
            excess: vec![0.0; n],
            current: vec![0; n],
            count: vec![0; 2 * n + 1],
            buckets: vec![Vec::new(); 2 * n + 1],
            in_bucket: vec![false; n],
            highest: 0,
            relabels_since_global: 0,
        }
    }

    fn max_height(&self) -> usize {
        2 * self.net.n
    }

    fn run(&mut self) {
        let s = self.s;
        for i in 0..self.net.adj[s].len() {
            let a = self.net.adj[s][i];
            let r = self.net.arcs[a].residual;
            if r > 0.0 {
                self.push_amount(s, a, r);
            }
        }
        self.global_relabel();

        loop {
            while self.highest > 0 && self.buckets[self.highest].is_empty() {
                self.highest -= 1;
            }
            let Some(v) = self.buckets[self.highest].pop() else {
                break;
            };
            self.in_bucket[v] = false;
            self.discharge(v);
        }
    }

    fn activate(&mut self, v: usize) {
        if v == self.s || v == self.t || self.in_bucket[v] || self.excess[v] <= 0.0 {
            return;
        }
        let h = self.height[v];
        self.buckets[h].push(v);
        self.in_bucket[v] = true;
        self.highest = self.highest.max(h);
    }

    fn push_amount(&mut self, u: usize, a: usize, amount: f64) {
        let (to, rev) = {
            let arc = &mut self.net.arcs[a];
            arc.residual -= amount;
            (arc.to, arc.rev)
        };
        self.net.arcs[rev].residual += amount;
        self.excess[u] -= amount;
        self.excess[to] += amount;
    }

    fn discharge(&mut self, v: usize) {
        while self.excess[v] > 0.0 {
            if self.current[v] == self.net.adj[v].len() {
                self.relabel(v);
                if self.height[v] >= self.max_height() {
                    return;
                }
                // let the highest-label rule pick the next vertex
                self.activate(v);
                return;
            }
            let a = self.net.adj[v][self.current[v]];
            let (to, residual) = (self.net.arcs[a].to, self.net.arcs[a].residual);
            if residual > 0.0 && self.height[v] == self.height[to] + 1 {
                let amount = self.excess[v].min(residual);
                self.push_amount(v, a, amount);
                self.activate(to);
            } else {
                self.current[v] += 1;
            }
        }
    }

    fn relabel(&mut self, v: usize) {
        let n = self.net.n;
        let old = self.height[v];
        let mut lowest = self.max_height();
        for &a in &self.net.adj[v] {
            let arc = &self.net.arcs[a];
            if arc.residual > 0.0 {
                lowest = lowest.min(self.height[arc.to] + 1);
            }
        }
        self.set_height(v, lowest.min(self.max_height()));
        self.current[v] = 0;

        if old < n && self.count[old] == 0 {
            self.gap(old);
        }
        self.relabels_since_global += 1;
        if self.relabels_since_global >= n {
            self.global_relabel();
        }
    }

    fn set_height(&mut self, v: usize, h: usize) {
        self.count[self.height[v]] -= 1;
        self.height[v] = h;
        self.count[h] += 1;
    }

    /// No vertex sits at `level`: everything strictly between it and `n`
    /// is cut off from the sink.
    fn gap(&mut self, level: usize) {
        let n = self.net.n;
        for v in 0..n {
            let h = self.height[v];
            if v != self.s && h > level && h < n {
                self.set_height(v, n + 1);
                self.current[v] = 0;
            }
        }
        self.rebuild_buckets();
    }

    /// Exact distance labels: distance to the sink where it is reachable,
    /// `n` plus distance to the source otherwise.
    fn global_relabel(&mut self) {
        let n = self.net.n;
        let unset = usize::MAX;
        let mut label = vec![unset; n];
        for (root, base) in [(self.t, 0), (self.s, n)] {
            if label[root] != unset {
                continue;
            }
            label[root] = base;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &a in &self.net.adj[x] {
                    let arc = &self.net.arcs[a];
                    let w = arc.to;
                    // w -> x has residual capacity
                    if label[w] == unset && self.net.arcs[arc.rev].residual > 0.0 {
                        label[w] = label[x] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        self.count.iter_mut().for_each(|c| *c = 0);
        for (v, &l) in label.iter().enumerate() {
            let h = if l == unset {
                self.max_height()
            } else {
                l.min(self.max_height())
            };
            self.height[v] = h;
            self.count[h] += 1;
            self.current[v] = 0;
        }
        self.height[self.s] = n;
        self.relabels_since_global = 0;
        self.rebuild_buckets();
    }

    fn rebuild_buckets(&mut self) {
        for b in &mut self.buckets {
            b.clear();
        }
        self.in_bucket.iter_mut().for_each(|f| *f = false);
        self.highest = 0;
        for v in 0..self.net.n {
            self.activate(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_network() {
        // CLRS flow network, max flow 23
        let mut net = FlowNetwork::new(6);
        for &(u, v, c) in &[
            (0, 1, 16.0),
            (0, 2, 13.0),
            (2, 1, 4.0),
            (1, 3, 12.0),
            (3, 2, 9.0),
            (2, 4, 14.0),
            (4, 3, 7.0),
            (3, 5, 20.0),
            (4, 5, 4.0),
        ] {
            net.add_edge(u, v, c, 0.0);
        }
        assert_eq!(net.max_flow(0, 5), 23.0);
        let side = net.source_side(0, 1e-12);
        assert!(side[0] && !side[5]);
    }

    #[test]
    fn undirected_parallel_paths() {
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, 1.5, 1.5);
        net.add_edge(1, 3, 0.5, 0.5);
        net.add_edge(0, 2, 2.0, 2.0);
        net.add_edge(2, 3, 3.0, 3.0);
        net.add_edge(1, 2, 1.0, 1.0);
        assert!((net.max_flow(0, 3) - 3.5).abs() < 1e-12);
    }

    #[test]
    fn disconnected_sink() {
        let mut net = FlowNetwork::new(3);
        net.add_edge(0, 1, 1.0, 1.0);
        assert_eq!(net.max_flow(0, 2), 0.0);
        assert_eq!(net.source_side(0, 0.0), vec![true, true, false]);
    }

    #[test]
    fn flow_is_conserved() {
        let mut net = FlowNetwork::new(5);
        let arcs: Vec<usize> = [(0, 1, 3.0), (0, 2, 2.0), (1, 2, 1.0), (1, 3, 2.0), (2, 3, 3.0), (3, 4, 4.0)]
            .iter()
            .map(|&(u, v, c)| net.add_edge(u, v, c, c))
            .collect();
        let value = net.max_flow(0, 4);
        assert!((value - 4.0).abs() < 1e-12);
        let ends = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)];
        for v in 1..4 {
            let mut balance = 0.0;
            for (k, &(a, b)) in ends.iter().enumerate() {
                let f = net.flow(arcs[k]);
                if a == v {
                    balance -= f;
                }
                if b == v {
                    balance += f;
                }
            }
            assert!(balance.abs() < 1e-12, "vertex {v} imbalance {balance}");
        }
    }
}
