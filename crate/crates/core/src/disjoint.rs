//! Counting and extracting disjoint paths.
//!
//! [`adp`] counts pairwise arc-disjoint paths through a unit-capacity max-flow;
//! [`idp`] does the same after splitting every intermediate vertex so that it
//! can carry at most one path. [`brute_force_adp`] computes the minimum arc
//! cut by exhaustive search and exists only to check [`adp`] on small inputs.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::flow::UnitNetwork;
use crate::{AnnouncementDigraph, AsNumber, Digraph, Error, Result};

/// Arc budget of [`brute_force_adp`].
pub const BRUTE_FORCE_ARC_LIMIT: usize = 20;

/// The converse of an announcement digraph: the paths other ASes may use to
/// reach the origin.
pub fn destination_digraph(a: &AnnouncementDigraph) -> AnnouncementDigraph {
    AnnouncementDigraph::new(a.origin(), a.graph().converse()).expect("converse keeps the vertex set")
}

fn check_endpoints(g: &Digraph, s: AsNumber, t: AsNumber) -> Result<()> {
    for v in [s, t] {
        if !g.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    if s == t {
        return Err(Error::SameEndpoints(s));
    }
    Ok(())
}

fn index_of(g: &Digraph) -> BTreeMap<AsNumber, usize> {
    g.vertices().enumerate().map(|(i, v)| (v, i)).collect()
}

/// Builds the unit network with one node per vertex. Returns the network and
/// the forward edge id of every arc, in `g.arcs()` order.
fn arc_network(g: &Digraph) -> (UnitNetwork, Vec<usize>) {
    let index = index_of(g);
    let mut net = UnitNetwork::new(index.len());
    let ids = g.arcs().map(|(a, b)| net.add_edge(index[&a], index[&b])).collect();
    (net, ids)
}

/// Maximum number of pairwise arc-disjoint directed `s -> t` paths. Zero
/// when `t` is unreachable from `s`.
pub fn adp(g: &Digraph, s: AsNumber, t: AsNumber) -> Result<usize> {
    check_endpoints(g, s, t)?;
    let index = index_of(g);
    let (mut net, _) = arc_network(g);
    Ok(net.max_flow(index[&s], index[&t]))
}

/// Maximum number of `s -> t` paths sharing no intermediate vertex and no arc.
pub fn idp(g: &Digraph, s: AsNumber, t: AsNumber) -> Result<usize> {
    check_endpoints(g, s, t)?;
    let index = index_of(g);
    let n = index.len();
    // vertex i enters at node i and leaves at node n + i; the endpoints are
    // not split
    let exit = |v: AsNumber| -> usize {
        if v == s || v == t {
            index[&v]
        } else {
            n + index[&v]
        }
    };
    let mut net = UnitNetwork::new(2 * n);
    for v in g.vertices() {
        if v != s && v != t {
            net.add_edge(index[&v], n + index[&v]);
        }
    }
    for (a, b) in g.arcs() {
        net.add_edge(exit(a), index[&b]);
    }
    Ok(net.max_flow(index[&s], index[&t]))
}

/// A set of pairwise arc-disjoint paths between two vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSet {
    source: AsNumber,
    target: AsNumber,
    paths: Vec<Vec<AsNumber>>,
}

impl PathSet {
    pub fn source(&self) -> AsNumber {
        self.source
    }

    pub fn target(&self) -> AsNumber {
        self.target
    }

    /// Vertex sequences, each from `source` to `target`, ascending
    /// lexicographically.
    pub fn paths(&self) -> &[Vec<AsNumber>] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn into_paths(self) -> Vec<Vec<AsNumber>> {
        self.paths
    }
}

/// A maximum set of arc-disjoint `s -> t` paths, obtained by decomposing a
/// maximum flow. The walk out of each vertex always takes the lowest-numbered
/// head still carrying flow; flow cycles met on the way are cancelled, so
/// every returned path is simple.
pub fn extract_paths(g: &Digraph, s: AsNumber, t: AsNumber) -> Result<PathSet> {
    check_endpoints(g, s, t)?;
    let index = index_of(g);
    let (mut net, ids) = arc_network(g);
    let value = net.max_flow(index[&s], index[&t]);

    let mut flow: BTreeMap<AsNumber, BTreeSet<AsNumber>> = BTreeMap::new();
    for ((a, b), id) in g.arcs().zip(ids) {
        if net.carries_flow(id) {
            flow.entry(a).or_default().insert(b);
        }
    }

    let mut paths = Vec::with_capacity(value);
    for _ in 0..value {
        let mut walk = vec![s];
        let mut position: BTreeMap<AsNumber, usize> = BTreeMap::from([(s, 0)]);
        let mut u = s;
        while u != t {
            let next = flow
                .get(&u)
                .and_then(|heads| heads.first().copied())
                .expect("flow conservation guarantees an outgoing unit");
            flow.get_mut(&u).unwrap().remove(&next);
            if let Some(&at) = position.get(&next) {
                // drop the cycle next -> ... -> u -> next; its arcs are
                // already out of `flow` or removed below
                for w in walk.drain(at + 1..) {
                    position.remove(&w);
                }
            } else {
                position.insert(next, walk.len());
                walk.push(next);
            }
            u = next;
        }
        paths.push(walk);
    }
    paths.sort();
    Ok(PathSet { source: s, target: t, paths })
}

/// Minimum number of arcs whose removal leaves no `s -> t` path, by trying
/// every arc subset of size 0, 1, 2, ... in turn.
pub fn brute_force_adp(g: &Digraph, s: AsNumber, t: AsNumber) -> Result<usize> {
    check_endpoints(g, s, t)?;
    let m = g.arc_count();
    if m > BRUTE_FORCE_ARC_LIMIT {
        return Err(Error::OracleCapacity { arcs: m, limit: BRUTE_FORCE_ARC_LIMIT });
    }
    let index = index_of(g);
    let arcs: Vec<(usize, usize)> = g.arcs().map(|(a, b)| (index[&a], index[&b])).collect();
    let (s, t) = (index[&s], index[&t]);

    let connected = |removed: u32| -> bool {
        let mut seen = vec![false; index.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for (i, &(a, b)) in arcs.iter().enumerate() {
                if a == u && removed & (1 << i) == 0 && !seen[b] {
                    if b == t {
                        return true;
                    }
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        false
    };

    for k in 0..=m {
        if k == 0 {
            if !connected(0) {
                return Ok(0);
            }
            continue;
        }
        // Gosper's hack: all m-bit masks with k bits set, in increasing order
        let mut mask: u32 = (1 << k) - 1;
        while mask < (1 << m) {
            if !connected(mask) {
                return Ok(k);
            }
            let low = mask & mask.wrapping_neg();
            let ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
        }
    }
    // removing every arc always disconnects s from t
    unreachable!("exhausted all arc subsets")
}
