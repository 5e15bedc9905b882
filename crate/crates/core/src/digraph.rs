//! Simple directed graphs over AS numbers.
//!
//! A [`Digraph`] never holds self-loops or parallel arcs and is immutable once
//! built; every transformation returns a new value. Iteration order is always
//! ascending by AS number so anything derived from a digraph is deterministic.

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::{AsNumber, Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Digraph {
    // every vertex is a key, possibly with an empty successor set
    succ: BTreeMap<AsNumber, BTreeSet<AsNumber>>,
    pred: BTreeMap<AsNumber, BTreeSet<AsNumber>>,
    arc_count: usize,
}

impl Digraph {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a digraph from a vertex set and an arc list. Arc endpoints are
    /// added to the vertex set and duplicate arcs collapse; a self-loop is
    /// rejected.
    pub fn build<V, A>(vertices: V, arcs: A) -> Result<Self>
    where
        V: IntoIterator<Item = AsNumber>,
        A: IntoIterator<Item = (AsNumber, AsNumber)>,
    {
        let mut g = Digraph::empty();
        for v in vertices {
            g.insert_vertex(v);
        }
        for (tail, head) in arcs {
            if tail == head {
                return Err(Error::SelfLoop(tail));
            }
            g.insert_arc(tail, head);
        }
        Ok(g)
    }

    /// A digraph with the given vertices and no arcs.
    pub fn edgeless<V: IntoIterator<Item = AsNumber>>(vertices: V) -> Self {
        let mut g = Digraph::empty();
        for v in vertices {
            g.insert_vertex(v);
        }
        g
    }

    fn insert_vertex(&mut self, v: AsNumber) {
        self.succ.entry(v).or_default();
        self.pred.entry(v).or_default();
    }

    // callers guarantee tail != head
    fn insert_arc(&mut self, tail: AsNumber, head: AsNumber) {
        self.insert_vertex(tail);
        self.insert_vertex(head);
        if self.succ.get_mut(&tail).unwrap().insert(head) {
            self.pred.get_mut(&head).unwrap().insert(tail);
            self.arc_count += 1;
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn contains_vertex(&self, v: AsNumber) -> bool {
        self.succ.contains_key(&v)
    }

    pub fn contains_arc(&self, tail: AsNumber, head: AsNumber) -> bool {
        self.succ.get(&tail).is_some_and(|s| s.contains(&head))
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> impl ExactSizeIterator<Item = AsNumber> + Clone + '_ {
        self.succ.keys().copied()
    }

    /// Arcs `(tail, head)` in ascending lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (AsNumber, AsNumber)> + Clone + '_ {
        self.succ.iter().flat_map(|(&t, heads)| heads.iter().map(move |&h| (t, h)))
    }

    /// Out-neighbours of `v` in ascending order; empty when `v` is absent.
    pub fn successors(&self, v: AsNumber) -> impl Iterator<Item = AsNumber> + '_ {
        self.succ.get(&v).into_iter().flatten().copied()
    }

    /// In-neighbours of `v` in ascending order; empty when `v` is absent.
    pub fn predecessors(&self, v: AsNumber) -> impl Iterator<Item = AsNumber> + '_ {
        self.pred.get(&v).into_iter().flatten().copied()
    }

    pub fn out_degree(&self, v: AsNumber) -> usize {
        self.succ.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn in_degree(&self, v: AsNumber) -> usize {
        self.pred.get(&v).map_or(0, BTreeSet::len)
    }

    /// Same vertices, every arc reversed.
    pub fn converse(&self) -> Digraph {
        Digraph { succ: self.pred.clone(), pred: self.succ.clone(), arc_count: self.arc_count }
    }

    pub fn union(&self, other: &Digraph) -> Digraph {
        let mut g = self.clone();
        for v in other.vertices() {
            g.insert_vertex(v);
        }
        for (t, h) in other.arcs() {
            g.insert_arc(t, h);
        }
        g
    }

    /// The subgraph induced by `keep`; vertices of `keep` that are not in
    /// `self` are ignored.
    pub fn induced(&self, keep: &BTreeSet<AsNumber>) -> Digraph {
        let mut g = Digraph::edgeless(keep.iter().copied().filter(|&v| self.contains_vertex(v)));
        for (t, h) in self.arcs() {
            if keep.contains(&t) && keep.contains(&h) {
                g.insert_arc(t, h);
            }
        }
        g
    }

    /// The same vertex set with only the arcs accepted by `keep`.
    pub fn filter_arcs<F>(&self, mut keep: F) -> Digraph
    where
        F: FnMut(AsNumber, AsNumber) -> bool,
    {
        let mut g = Digraph::edgeless(self.vertices());
        for (t, h) in self.arcs() {
            if keep(t, h) {
                g.insert_arc(t, h);
            }
        }
        g
    }

    /// All vertices reachable from `v` by a directed walk, `v` included.
    pub fn reachable_from(&self, v: AsNumber) -> Result<BTreeSet<AsNumber>> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut seen = BTreeSet::new();
        seen.insert(v);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for w in self.successors(u) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        Ok(seen)
    }

    /// Breadth-first hop distance from `v` to every reachable vertex.
    pub fn distances_from(&self, v: AsNumber) -> Result<BTreeMap<AsNumber, usize>> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut dist = BTreeMap::new();
        dist.insert(v, 0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            for w in self.successors(u) {
                if let Entry::Vacant(slot) = dist.entry(w) {
                    slot.insert(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// True iff the root has in-degree 0, every other vertex has in-degree
    /// exactly 1 and every vertex is reachable from the root.
    pub fn is_arborescence(&self, root: AsNumber) -> Result<bool> {
        if !self.contains_vertex(root) {
            return Err(Error::UnknownVertex(root));
        }
        if self.in_degree(root) != 0 {
            return Ok(false);
        }
        if self.vertices().any(|v| v != root && self.in_degree(v) != 1) {
            return Ok(false);
        }
        Ok(self.reachable_from(root)?.len() == self.vertex_count())
    }

    /// Vertices sorted ascending and the 0/1 matrix whose row indexes the
    /// tail and column the head of each arc.
    pub fn to_adjacency_matrix(&self) -> (Vec<AsNumber>, Vec<Vec<u8>>) {
        let order: Vec<AsNumber> = self.vertices().collect();
        let index: BTreeMap<AsNumber, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut matrix = alloc::vec![alloc::vec![0u8; order.len()]; order.len()];
        for (t, h) in self.arcs() {
            matrix[index[&t]][index[&h]] = 1;
        }
        (order, matrix)
    }

    /// Inverse of [`Digraph::to_adjacency_matrix`]. The vertex list may be in
    /// any order but must not repeat an AS.
    pub fn from_adjacency_matrix(vertices: &[AsNumber], matrix: &[Vec<u8>]) -> Result<Digraph> {
        let n = vertices.len();
        if matrix.len() != n {
            return Err(Error::DimensionMismatch { expected: n, row: None, found: matrix.len() });
        }
        let mut g = Digraph::empty();
        for &v in vertices {
            if g.contains_vertex(v) {
                return Err(Error::DuplicateVertex(v));
            }
            g.insert_vertex(v);
        }
        for (r, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, row: Some(r), found: row.len() });
            }
            for (c, &cell) in row.iter().enumerate() {
                match (cell, r == c) {
                    (0, _) => {}
                    (1, true) => return Err(Error::NonzeroDiagonal(vertices[r])),
                    (1, false) => g.insert_arc(vertices[r], vertices[c]),
                    (value, _) => return Err(Error::BadEntry { row: r, column: c, value }),
                }
            }
        }
        Ok(g)
    }
}

/// The digraph along which the advertisement of `origin` may propagate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnouncementDigraph {
    origin: AsNumber,
    graph: Digraph,
}

impl AnnouncementDigraph {
    /// Fails with [`Error::UnknownVertex`] when `origin` is not in `graph`.
    pub fn new(origin: AsNumber, graph: Digraph) -> Result<Self> {
        if !graph.contains_vertex(origin) {
            return Err(Error::UnknownVertex(origin));
        }
        Ok(AnnouncementDigraph { origin, graph })
    }

    pub fn origin(&self) -> AsNumber {
        self.origin
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn into_graph(self) -> Digraph {
        self.graph
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn asn(v: u32) -> AsNumber {
        AsNumber::new(v).unwrap()
    }

    fn g(vs: &[u32], arcs: &[(u32, u32)]) -> Digraph {
        Digraph::build(vs.iter().map(|&v| asn(v)), arcs.iter().map(|&(a, b)| (asn(a), asn(b)))).unwrap()
    }

    fn arcs_of(d: &Digraph) -> Vec<(u32, u32)> {
        d.arcs().map(|(a, b)| (a.get(), b.get())).collect()
    }

    fn verts_of(d: &Digraph) -> Vec<u32> {
        d.vertices().map(AsNumber::get).collect()
    }

    pub(crate) fn digraph_strategy(max_v: u32, max_arcs: usize) -> impl Strategy<Value = Digraph> {
        (1..=max_v).prop_flat_map(move |n| {
            proptest::collection::vec((1..=n, 1..=n), 0..=max_arcs).prop_map(move |pairs| {
                Digraph::build(
                    (1..=n).map(|v| AsNumber::new(v).unwrap()),
                    pairs
                        .into_iter()
                        .filter(|(a, b)| a != b)
                        .map(|(a, b)| (AsNumber::new(a).unwrap(), AsNumber::new(b).unwrap())),
                )
                .unwrap()
            })
        })
    }

    #[test]
    fn build_minimal_and_duplicates() {
        let d = g(&[1, 2], &[(1, 2)]);
        assert_eq!(verts_of(&d), vec![1, 2]);
        assert_eq!(arcs_of(&d), vec![(1, 2)]);

        let d = g(&[], &[(1, 2), (1, 2)]);
        assert_eq!(verts_of(&d), vec![1, 2]);
        assert_eq!(arcs_of(&d), vec![(1, 2)]);
        assert_eq!(d.arc_count(), 1);
    }

    #[test]
    fn build_rejects_self_loop() {
        let err = Digraph::build([], [(asn(3), asn(3))]).unwrap_err();
        assert_eq!(err, Error::SelfLoop(asn(3)));
        assert_eq!(alloc::format!("{err}"), "self-loop at AS3");
    }

    #[test]
    fn converse_examples() {
        let d = g(&[1, 2, 3], &[(1, 2), (2, 3)]);
        let c = d.converse();
        assert_eq!(verts_of(&c), vec![1, 2, 3]);
        assert_eq!(arcs_of(&c), vec![(2, 1), (3, 2)]);
        assert_eq!(Digraph::empty().converse(), Digraph::empty());
    }

    #[test]
    fn union_examples() {
        let u = g(&[1, 2], &[(1, 2)]).union(&g(&[2, 3], &[(2, 3)]));
        assert_eq!(verts_of(&u), vec![1, 2, 3]);
        assert_eq!(arcs_of(&u), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn reachability_examples() {
        let d = g(&[1, 2, 3], &[(1, 2)]);
        let r: Vec<u32> = d.reachable_from(asn(1)).unwrap().into_iter().map(AsNumber::get).collect();
        assert_eq!(r, vec![1, 2]);
        let single = g(&[1], &[]);
        assert_eq!(single.reachable_from(asn(1)).unwrap().len(), 1);
        assert_eq!(d.reachable_from(asn(9)).unwrap_err(), Error::UnknownVertex(asn(9)));
    }

    #[test]
    fn arborescence_examples() {
        assert!(g(&[1, 2, 3], &[(1, 2), (1, 3)]).is_arborescence(asn(1)).unwrap());
        assert!(!g(&[1, 2, 3], &[(1, 2), (1, 3), (2, 3)]).is_arborescence(asn(1)).unwrap());
        assert!(!g(&[1, 2], &[]).is_arborescence(asn(1)).unwrap());
        // a cycle hanging off the root: in-degrees are all 1 but 2,3 unreachable
        assert!(!g(&[1, 2, 3], &[(2, 3), (3, 2)]).is_arborescence(asn(1)).unwrap());
        assert!(g(&[1], &[]).is_arborescence(asn(1)).unwrap());
        assert!(g(&[1], &[]).is_arborescence(asn(2)).is_err());
    }

    #[test]
    fn adjacency_matrix_examples() {
        let (order, m) = g(&[1, 2], &[(1, 2)]).to_adjacency_matrix();
        assert_eq!(order, vec![asn(1), asn(2)]);
        assert_eq!(m, vec![vec![0, 1], vec![0, 0]]);

        let (_, m) = g(&[5, 7, 9], &[]).to_adjacency_matrix();
        assert!(m.iter().flatten().all(|&c| c == 0));

        let d = Digraph::from_adjacency_matrix(&[asn(1), asn(2)], &[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(d, g(&[1, 2], &[(1, 2)]));
    }

    #[test]
    fn adjacency_matrix_errors() {
        let e = Digraph::from_adjacency_matrix(&[asn(1), asn(2)], &[vec![1, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(alloc::format!("{e}"), "nonzero diagonal at AS1");

        let e =
            Digraph::from_adjacency_matrix(&[asn(1), asn(2), asn(3)], &[vec![0, 1], vec![0, 0]]).unwrap_err();
        assert!(alloc::format!("{e}").starts_with("dimension mismatch"));

        let e = Digraph::from_adjacency_matrix(&[asn(1), asn(2)], &[vec![0, 1], vec![0]]).unwrap_err();
        assert_eq!(e, Error::DimensionMismatch { expected: 2, row: Some(1), found: 1 });

        let e = Digraph::from_adjacency_matrix(&[asn(1), asn(2)], &[vec![0, 2], vec![0, 0]]).unwrap_err();
        assert_eq!(e, Error::BadEntry { row: 0, column: 1, value: 2 });
    }

    #[test]
    fn induced_and_filter() {
        let d = g(&[1, 2, 3, 4], &[(1, 2), (2, 3), (3, 4)]);
        let keep: BTreeSet<_> = [1, 2, 3].into_iter().map(asn).collect();
        assert_eq!(arcs_of(&d.induced(&keep)), vec![(1, 2), (2, 3)]);
        let f = d.filter_arcs(|t, _| t.get() != 2);
        assert_eq!(arcs_of(&f), vec![(1, 2), (3, 4)]);
        assert_eq!(f.vertex_count(), 4);
    }

    // Floyd-Warshall transitive closure over a dense boolean matrix.
    fn closure_oracle(d: &Digraph) -> Vec<Vec<bool>> {
        let (_, m) = d.to_adjacency_matrix();
        let n = m.len();
        let mut c: Vec<Vec<bool>> =
            (0..n).map(|i| (0..n).map(|j| i == j || m[i][j] == 1).collect()).collect();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if c[i][k] && c[k][j] {
                        c[i][j] = true;
                    }
                }
            }
        }
        c
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn converse_is_involution(d in digraph_strategy(6, 15)) {
            let c = d.converse();
            prop_assert_eq!(c.vertex_count(), d.vertex_count());
            prop_assert_eq!(c.arc_count(), d.arc_count());
            let back = c.converse();
            prop_assert_eq!(back.vertices().collect::<Vec<_>>(), d.vertices().collect::<Vec<_>>());
            prop_assert_eq!(back.arcs().collect::<Vec<_>>(), d.arcs().collect::<Vec<_>>());
        }

        #[test]
        fn union_algebra(a in digraph_strategy(6, 12), b in digraph_strategy(6, 12), c in digraph_strategy(6, 12)) {
            prop_assert_eq!(a.union(&a), a.clone());
            prop_assert_eq!(a.union(&b), b.union(&a));
            prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
            let expected: BTreeSet<_> = a.arcs().chain(b.arcs()).collect();
            prop_assert_eq!(a.union(&b).arcs().collect::<BTreeSet<_>>(), expected);
        }

        #[test]
        fn reachability_matches_closure(d in digraph_strategy(8, 20)) {
            let closure = closure_oracle(&d);
            let order: Vec<_> = d.vertices().collect();
            for (i, &v) in order.iter().enumerate() {
                let reach = d.reachable_from(v).unwrap();
                let expected: BTreeSet<_> =
                    order.iter().enumerate().filter(|(j, _)| closure[i][*j]).map(|(_, &w)| w).collect();
                prop_assert_eq!(reach, expected);
            }
        }

        #[test]
        fn adjacency_round_trip(d in digraph_strategy(7, 20)) {
            let (order, m) = d.to_adjacency_matrix();
            prop_assert_eq!(Digraph::from_adjacency_matrix(&order, &m).unwrap(), d);
        }

        #[test]
        fn arborescence_implies_tree_shape(d in digraph_strategy(6, 8)) {
            for root in d.vertices() {
                if d.is_arborescence(root).unwrap() {
                    prop_assert_eq!(d.arc_count() + 1, d.vertex_count());
                    prop_assert_eq!(d.reachable_from(root).unwrap().len(), d.vertex_count());
                }
            }
        }
    }
}
