//! Blocking-flow max-flow on the vertex-split network.

use std::collections::VecDeque;

use crate::graph::EdgeSet;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u32,
    rev: usize,
}

/// Directed network where every vertex `v` other than the terminals is split into
/// `v_in = 2v` and `v_out = 2v + 1` joined by one unit arc.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
    source: usize,
    sink: usize,
    level: Vec<u32>,
    cursor: Vec<usize>,
}

impl FlowNetwork {
    fn with_nodes(nodes: usize, source: usize, sink: usize) -> Self {
        Self {
            arcs: vec![Vec::new(); nodes],
            source,
            sink,
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let rf = self.arcs[to].len() + usize::from(from == to);
        let rt = self.arcs[from].len();
        self.arcs[from].push(Arc { to, cap, rev: rf });
        self.arcs[to].push(Arc { to: from, cap: 0, rev: rt });
    }

    /// Split network for `s`–`t` vertex-disjoint paths. Edge arcs carry capacity `n` so a
    /// minimum cut never uses them, except a direct `s`–`t` edge which carries one unit.
    pub fn vertex_split(g: &EdgeSet, s: usize, t: usize) -> Self {
        let n = g.n();
        let big = n.max(2) as u32;
        let mut net = Self::with_nodes(2 * n, 2 * s + 1, 2 * t);
        for v in 0..n {
            let cap = if v == s || v == t { big } else { 1 };
            net.add_arc(2 * v, 2 * v + 1, cap);
        }
        for (u, v) in g.edges() {
            let direct = (u == s && v == t) || (u == t && v == s);
            let cap = if direct { 1 } else { big };
            net.add_arc(2 * u + 1, 2 * v, cap);
            net.add_arc(2 * v + 1, 2 * u, cap);
        }
        net
    }

    fn bfs(&mut self) -> bool {
        self.level.fill(u32::MAX);
        self.level[self.source] = 0;
        let mut queue = VecDeque::from([self.source]);
        while let Some(x) = queue.pop_front() {
            for a in &self.arcs[x] {
                if a.cap > 0 && self.level[a.to] == u32::MAX {
                    self.level[a.to] = self.level[x] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        self.level[self.sink] != u32::MAX
    }

    fn dfs(&mut self, x: usize, pushed: u32) -> u32 {
        if x == self.sink {
            return pushed;
        }
        while self.cursor[x] < self.arcs[x].len() {
            let i = self.cursor[x];
            let Arc { to, cap, rev } = self.arcs[x][i];
            if cap > 0 && self.level[to] == self.level[x] + 1 {
                let got = self.dfs(to, pushed.min(cap));
                if got > 0 {
                    self.arcs[x][i].cap -= got;
                    self.arcs[to][rev].cap += got;
                    return got;
                }
            }
            self.cursor[x] += 1;
        }
        0
    }

    /// Pushes flow until saturated or `limit` units have been routed.
    pub fn max_flow(&mut self, limit: usize) -> usize {
        let mut flow = 0usize;
        while flow < limit && self.bfs() {
            self.cursor.fill(0);
            while flow < limit {
                let want = (limit - flow).min(u32::MAX as usize) as u32;
                let got = self.dfs(self.source, want);
                if got == 0 {
                    break;
                }
                flow += got as usize;
            }
        }
        flow
    }

    /// Nodes reachable from the source in the residual network.
    pub fn residual_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[self.source] = true;
        let mut stack = vec![self.source];
        while let Some(x) = stack.pop() {
            for a in &self.arcs[x] {
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        seen
    }
}
