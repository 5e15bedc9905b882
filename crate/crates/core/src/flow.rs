//! Unit-capacity max-flow by shortest augmenting paths.
//!
//! Every augmentation is one breadth-first search over the residual network,
//! so a flow of value `k` costs `O(k * (V + E))`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

pub(crate) struct UnitNetwork {
    head: Vec<usize>,
    residual: Vec<u8>,
    // edge ids leaving each node, in insertion order
    out: Vec<Vec<usize>>,
}

impl UnitNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        UnitNetwork { head: Vec::new(), residual: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    /// Adds a unit-capacity edge and its zero-capacity reverse; returns the
    /// forward edge id. The reverse edge is always `id ^ 1`.
    pub(crate) fn add_edge(&mut self, from: usize, to: usize) -> usize {
        let id = self.head.len();
        self.head.push(to);
        self.residual.push(1);
        self.out[from].push(id);
        self.head.push(from);
        self.residual.push(0);
        self.out[to].push(id + 1);
        id
    }

    /// True when the forward edge `id` carries one unit.
    pub(crate) fn carries_flow(&self, id: usize) -> bool {
        self.residual[id] == 0
    }

    pub(crate) fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut value = 0;
        let mut via = vec![usize::MAX; self.out.len()];
        while self.augment(source, sink, &mut via) {
            value += 1;
        }
        value
    }

    fn augment(&mut self, source: usize, sink: usize, via: &mut [usize]) -> bool {
        via.fill(usize::MAX);
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        'search: while let Some(u) = queue.pop_front() {
            for &e in &self.out[u] {
                let v = self.head[e];
                if self.residual[e] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = e;
                    if v == sink {
                        break 'search;
                    }
                    queue.push_back(v);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut v = sink;
        while v != source {
            let e = via[v];
            self.residual[e] -= 1;
            self.residual[e ^ 1] += 1;
            v = self.head[e ^ 1];
        }
        true
    }
}
