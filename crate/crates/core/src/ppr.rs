//! Preferred-path selection.
//!
//! A BGP speaker installs one route per destination. Applied at every AS, that
//! rule turns an announcement digraph into an arborescence rooted at the
//! origin. The preference used here is the shortest AS path, with ties broken
//! toward the lowest-numbered neighbour.

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::{AnnouncementDigraph, AsNumber, Digraph};

/// The single-path digraph left after preferred-path selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BgpDigraph {
    origin: AsNumber,
    graph: Digraph,
    unreached: BTreeSet<AsNumber>,
}

impl BgpDigraph {
    /// Assembles a value without checking the arborescence invariant; use
    /// [`verify_single_path`] to test an arbitrary assembly.
    pub fn from_parts(origin: AsNumber, graph: Digraph, unreached: BTreeSet<AsNumber>) -> Self {
        BgpDigraph { origin, graph, unreached }
    }

    pub fn origin(&self) -> AsNumber {
        self.origin
    }

    /// The arborescence over every AS the announcement reaches.
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// ASes of the announcement digraph that the origin cannot reach.
    pub fn unreached(&self) -> &BTreeSet<AsNumber> {
        &self.unreached
    }

    /// The AS from which `v` learns its route, `None` for the origin and for
    /// ASes outside the tree.
    pub fn parent(&self, v: AsNumber) -> Option<AsNumber> {
        self.graph.predecessors(v).next()
    }

    /// The AS path `v` would advertise: `v` first, origin last.
    pub fn as_path(&self, v: AsNumber) -> Option<Vec<AsNumber>> {
        if !self.graph.contains_vertex(v) {
            return None;
        }
        let mut path = alloc::vec![v];
        let mut u = v;
        while let Some(p) = self.parent(u) {
            if path.contains(&p) {
                return None;
            }
            path.push(p);
            u = p;
        }
        Some(path)
    }
}

pub fn select_bgp_digraph(a: &AnnouncementDigraph) -> BgpDigraph {
    let g = a.graph();
    let origin = a.origin();
    let dist = g.distances_from(origin).expect("origin is a vertex");

    let arcs = dist.iter().filter(|(_, &d)| d > 0).map(|(&v, &d)| {
        let parent = g
            .predecessors(v)
            .find(|p| dist.get(p) == Some(&(d - 1)))
            .expect("a BFS layer always has a parent in the layer above");
        (parent, v)
    });
    let graph = Digraph::build(dist.keys().copied(), arcs).expect("tree arcs are not loops");
    let unreached = g.vertices().filter(|v| !dist.contains_key(v)).collect();
    BgpDigraph { origin, graph, unreached }
}

/// True iff every vertex of `b.graph()` has exactly one simple directed path
/// from the origin.
///
/// Builds a breadth-first tree from the origin. The tree path is then the only
/// simple path to each vertex exactly when every non-tree arc points back to
/// an ancestor of its tail, because any other extra arc `u -> v` yields a
/// second path to `v` through `u`.
pub fn verify_single_path(b: &BgpDigraph) -> bool {
    let g = b.graph();
    let origin = b.origin();
    if !g.contains_vertex(origin) {
        return false;
    }
    let mut parent: BTreeMap<AsNumber, Option<AsNumber>> = BTreeMap::from([(origin, None)]);
    let mut queue = VecDeque::from([origin]);
    while let Some(u) = queue.pop_front() {
        for w in g.successors(u) {
            if let Entry::Vacant(slot) = parent.entry(w) {
                slot.insert(Some(u));
                queue.push_back(w);
            }
        }
    }
    if parent.len() != g.vertex_count() {
        return false;
    }
    let is_ancestor = |anc: AsNumber, mut v: AsNumber| loop {
        if v == anc {
            return true;
        }
        match parent[&v] {
            Some(p) => v = p,
            None => return false,
        }
    };
    g.arcs().all(|(u, v)| parent[&v] == Some(u) || is_ancestor(v, u))
}

/// Runs [`select_bgp_digraph`] over every origin in turn.
pub fn select_all<'a, I>(digraphs: I) -> BTreeMap<AsNumber, BgpDigraph>
where
    I: IntoIterator<Item = &'a AnnouncementDigraph>,
{
    digraphs.into_iter().map(|a| (a.origin(), select_bgp_digraph(a))).collect()
}
