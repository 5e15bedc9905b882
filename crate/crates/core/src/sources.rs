//! Turning routing-data records into per-origin announcement digraphs.
//!
//! Three kinds of evidence are supported: AS paths from route tables,
//! import/export declarations from policy registries, and AS-level hop
//! sequences from traceroute. Each is restricted to a [`Roster`]; an AS that
//! is not on the roster breaks adjacency rather than being skipped over, so no
//! arc is ever created between two roster members that were not observed side
//! by side.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::{AnnouncementDigraph, AsNumber, Digraph, Error, Result};

/// Per-origin announcement digraphs, keyed by origin.
pub type OriginMap = BTreeMap<AsNumber, AnnouncementDigraph>;

/// The fixed set of ASes under analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Roster(BTreeSet<AsNumber>);

impl Roster {
    /// Duplicates collapse; fewer than two distinct members is an error.
    pub fn new<I: IntoIterator<Item = AsNumber>>(members: I) -> Result<Self> {
        let set: BTreeSet<_> = members.into_iter().collect();
        if set.len() < 2 {
            return Err(Error::RosterTooSmall(set.len()));
        }
        Ok(Roster(set))
    }

    pub fn contains(&self, v: AsNumber) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = AsNumber> + Clone + '_ {
        self.0.iter().copied()
    }

    pub fn as_set(&self) -> &BTreeSet<AsNumber> {
        &self.0
    }
}

/// Collapses runs of the same AS (prepending) and rejects anything that still
/// repeats an AS.
fn collapse(hops: Vec<AsNumber>) -> Result<Vec<AsNumber>> {
    if hops.is_empty() {
        return Err(Error::EmptyPath);
    }
    let mut out: Vec<AsNumber> = Vec::with_capacity(hops.len());
    for v in hops {
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    let distinct: BTreeSet<_> = out.iter().collect();
    if distinct.len() != out.len() {
        return Err(Error::LoopedPath);
    }
    Ok(out)
}

/// One route-table AS_PATH: leftmost is next to the collector, rightmost is
/// the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteRecord {
    path: Vec<AsNumber>,
}

impl RouteRecord {
    pub fn new(path: Vec<AsNumber>) -> Result<Self> {
        Ok(RouteRecord { path: collapse(path)? })
    }

    pub fn path(&self) -> &[AsNumber] {
        &self.path
    }

    pub fn origin(&self) -> AsNumber {
        *self.path.last().expect("paths are non-empty")
    }
}

/// One traceroute reduced to ASes: leftmost is the monitor, rightmost the
/// destination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    hops: Vec<AsNumber>,
}

impl TraceRecord {
    pub fn new(hops: Vec<AsNumber>) -> Result<Self> {
        Ok(TraceRecord { hops: collapse(hops)? })
    }

    pub fn hops(&self) -> &[AsNumber] {
        &self.hops
    }

    pub fn destination(&self) -> AsNumber {
        *self.hops.last().expect("traces are non-empty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolicyKind {
    /// The subject accepts announcements from the peer.
    Import,
    /// The subject sends announcements to the peer.
    Export,
}

impl PolicyKind {
    pub fn keyword(self) -> &'static str {
        match self {
            PolicyKind::Import => "import",
            PolicyKind::Export => "export",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolicyRule {
    subject: AsNumber,
    kind: PolicyKind,
    peer: AsNumber,
}

impl PolicyRule {
    pub fn new(subject: AsNumber, kind: PolicyKind, peer: AsNumber) -> Result<Self> {
        if subject == peer {
            return Err(Error::SelfPolicy(subject));
        }
        Ok(PolicyRule { subject, kind, peer })
    }

    pub fn subject(&self) -> AsNumber {
        self.subject
    }

    pub fn kind(&self) -> PolicyKind {
        self.kind
    }

    pub fn peer(&self) -> AsNumber {
        self.peer
    }
}

fn empty_map(roster: &Roster) -> BTreeMap<AsNumber, BTreeSet<(AsNumber, AsNumber)>> {
    roster.iter().map(|o| (o, BTreeSet::new())).collect()
}

fn finish(roster: &Roster, arcs: BTreeMap<AsNumber, BTreeSet<(AsNumber, AsNumber)>>) -> OriginMap {
    arcs.into_iter()
        .map(|(origin, arcs)| {
            let g = Digraph::build(roster.iter(), arcs).expect("collapsed paths have no self-loops");
            (origin, AnnouncementDigraph::new(origin, g).expect("origin is on the roster"))
        })
        .collect()
}

/// Arcs between consecutive roster members of a propagation-ordered hop
/// sequence; an off-roster hop breaks the chain.
fn contiguous_arcs<'a>(
    order: impl Iterator<Item = &'a AsNumber> + 'a,
    roster: &'a Roster,
) -> impl Iterator<Item = (AsNumber, AsNumber)> + 'a {
    let hops: Vec<AsNumber> = order.copied().collect();
    (0..hops.len().saturating_sub(1)).filter_map(move |i| {
        let (u, v) = (hops[i], hops[i + 1]);
        (roster.contains(u) && roster.contains(v)).then_some((u, v))
    })
}

/// Every roster member gets an entry; origins without records map to an
/// edgeless digraph over the roster.
pub fn routes_to_digraphs(records: &[RouteRecord], roster: &Roster) -> OriginMap {
    let mut arcs = empty_map(roster);
    for r in records {
        if let Some(set) = arcs.get_mut(&r.origin()) {
            set.extend(contiguous_arcs(r.path().iter().rev(), roster));
        }
    }
    finish(roster, arcs)
}

/// Traces contribute only to the digraph of their own destination, with the
/// hop order reversed into propagation order.
pub fn traces_to_digraphs(records: &[TraceRecord], roster: &Roster) -> OriginMap {
    let mut arcs = empty_map(roster);
    for r in records {
        if let Some(set) = arcs.get_mut(&r.destination()) {
            set.extend(contiguous_arcs(r.hops().iter().rev(), roster));
        }
    }
    finish(roster, arcs)
}

/// The roster-wide permission digraph: `a -> b` exactly when `a` exports to
/// `b` and `b` imports from `a`.
pub fn policy_digraph(rules: &[PolicyRule], roster: &Roster) -> Digraph {
    let declared: BTreeSet<_> = rules
        .iter()
        .filter(|r| roster.contains(r.subject()) && roster.contains(r.peer()))
        .map(|r| (r.subject(), r.kind(), r.peer()))
        .collect();
    let arcs = declared
        .iter()
        .filter(|&&(a, kind, b)| kind == PolicyKind::Export && declared.contains(&(b, PolicyKind::Import, a)))
        .map(|&(a, _, b)| (a, b));
    Digraph::build(roster.iter(), arcs).expect("policy rules never name the same AS twice")
}

/// For each origin, the permission arcs whose tail the origin's announcement
/// can reach.
pub fn policies_to_digraphs(rules: &[PolicyRule], roster: &Roster) -> OriginMap {
    let permitted = policy_digraph(rules, roster);
    roster
        .iter()
        .map(|o| {
            let reach = permitted.reachable_from(o).expect("roster members are vertices");
            let g = permitted.filter_arcs(|tail, _| reach.contains(&tail));
            (o, AnnouncementDigraph::new(o, g).expect("origin is on the roster"))
        })
        .collect()
}

/// Per-origin union over any number of sources.
pub fn merge_sources<'a, I>(maps: I) -> OriginMap
where
    I: IntoIterator<Item = &'a OriginMap>,
{
    let mut merged: BTreeMap<AsNumber, Digraph> = BTreeMap::new();
    for map in maps {
        for (&origin, a) in map {
            let g = match merged.remove(&origin) {
                Some(prev) => prev.union(a.graph()),
                None => a.graph().clone(),
            };
            merged.insert(origin, g);
        }
    }
    merged
        .into_iter()
        .map(|(o, g)| (o, AnnouncementDigraph::new(o, g).expect("origin kept from its source")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn asn(v: u32) -> AsNumber {
        AsNumber::new(v).unwrap()
    }

    fn roster(vs: &[u32]) -> Roster {
        Roster::new(vs.iter().map(|&v| asn(v))).unwrap()
    }

    fn route(p: &[u32]) -> RouteRecord {
        RouteRecord::new(p.iter().map(|&v| asn(v)).collect()).unwrap()
    }

    fn trace(p: &[u32]) -> TraceRecord {
        TraceRecord::new(p.iter().map(|&v| asn(v)).collect()).unwrap()
    }

    fn rule(a: u32, kind: PolicyKind, b: u32) -> PolicyRule {
        PolicyRule::new(asn(a), kind, asn(b)).unwrap()
    }

    fn arcs_of(m: &OriginMap, o: u32) -> BTreeSet<(u32, u32)> {
        m[&asn(o)].graph().arcs().map(|(a, b)| (a.get(), b.get())).collect()
    }

    fn set(arcs: &[(u32, u32)]) -> BTreeSet<(u32, u32)> {
        arcs.iter().copied().collect()
    }

    #[test]
    fn roster_needs_two() {
        assert_eq!(Roster::new([asn(1), asn(1)]), Err(Error::RosterTooSmall(1)));
        assert_eq!(roster(&[1299, 702, 702]).len(), 2);
    }

    #[test]
    fn record_collapsing() {
        assert_eq!(route(&[702, 1299, 1299, 3356]).path(), &[asn(702), asn(1299), asn(3356)]);
        assert_eq!(RouteRecord::new(vec![asn(702), asn(1299), asn(702), asn(3356)]), Err(Error::LoopedPath));
        assert_eq!(RouteRecord::new(vec![]), Err(Error::EmptyPath));
        assert_eq!(trace(&[6667, 6667, 702]).hops(), &[asn(6667), asn(702)]);
        assert_eq!(route(&[5]).origin(), asn(5));
    }

    #[test]
    fn routes_single_path() {
        let m = routes_to_digraphs(&[route(&[702, 1299, 3356])], &roster(&[702, 1299, 3356]));
        assert_eq!(arcs_of(&m, 3356), set(&[(3356, 1299), (1299, 702)]));
        assert_eq!(m.len(), 3);
        assert!(arcs_of(&m, 702).is_empty());
        assert_eq!(m[&asn(702)].graph().vertex_count(), 3);
    }

    #[test]
    fn routes_chain_break() {
        let m = routes_to_digraphs(&[route(&[702, 9999, 3356])], &roster(&[702, 3356]));
        assert!(arcs_of(&m, 3356).is_empty());
        assert!(!m[&asn(3356)].graph().contains_vertex(asn(9999)));
    }

    #[test]
    fn routes_union_of_paths() {
        let r = roster(&[702, 286, 1299, 3356]);
        let both = routes_to_digraphs(&[route(&[702, 1299, 3356]), route(&[286, 1299, 3356])], &r);
        let one = routes_to_digraphs(&[route(&[702, 1299, 3356])], &r);
        let two = routes_to_digraphs(&[route(&[286, 1299, 3356])], &r);
        let expected: BTreeSet<_> = arcs_of(&one, 3356).union(&arcs_of(&two, 3356)).copied().collect();
        assert_eq!(arcs_of(&both, 3356), expected);
        assert_eq!(expected, set(&[(3356, 1299), (1299, 702), (1299, 286)]));
    }

    #[test]
    fn routes_off_roster_origin_ignored() {
        let m = routes_to_digraphs(&[route(&[702, 1299, 77])], &roster(&[702, 1299]));
        assert!(!m.contains_key(&asn(77)));
        assert!(m.values().all(|a| a.graph().arc_count() == 0));
    }

    #[test]
    fn policy_requires_both_sides() {
        use PolicyKind::*;
        let r = roster(&[1, 2]);
        let m = policies_to_digraphs(&[rule(1, Export, 2), rule(2, Import, 1)], &r);
        assert_eq!(arcs_of(&m, 1), set(&[(1, 2)]));
        assert!(arcs_of(&m, 2).is_empty());

        let m = policies_to_digraphs(&[rule(1, Export, 2)], &r);
        assert!(arcs_of(&m, 1).is_empty());
    }

    #[test]
    fn policy_reachability_restricts_arcs() {
        use PolicyKind::*;
        let rules = [
            rule(1, Export, 2),
            rule(2, Import, 1),
            rule(2, Export, 3),
            rule(3, Import, 2),
            rule(4, Export, 5),
            rule(5, Import, 4),
        ];
        let m = policies_to_digraphs(&rules, &roster(&[1, 2, 3, 4, 5]));
        assert_eq!(arcs_of(&m, 1), set(&[(1, 2), (2, 3)]));
        assert_eq!(arcs_of(&m, 2), set(&[(2, 3)]));
        assert_eq!(arcs_of(&m, 4), set(&[(4, 5)]));
        assert!(arcs_of(&m, 3).is_empty());
    }

    #[test]
    fn policy_rules_outside_roster_ignored() {
        use PolicyKind::*;
        let m = policies_to_digraphs(&[rule(1, Export, 9), rule(9, Import, 1)], &roster(&[1, 2]));
        assert!(arcs_of(&m, 1).is_empty());
    }

    #[test]
    fn self_policy_rejected() {
        assert_eq!(PolicyRule::new(asn(702), PolicyKind::Export, asn(702)), Err(Error::SelfPolicy(asn(702))));
    }

    #[test]
    fn traces_reversed_into_destination() {
        let m = traces_to_digraphs(&[trace(&[6667, 1299, 702])], &roster(&[6667, 1299, 702]));
        assert_eq!(arcs_of(&m, 702), set(&[(702, 1299), (1299, 6667)]));
        assert!(arcs_of(&m, 6667).is_empty());

        let m = traces_to_digraphs(&[trace(&[6667, 1299, 702])], &roster(&[6667, 702]));
        assert!(arcs_of(&m, 702).is_empty());
    }

    #[test]
    fn traces_to_same_destination_union() {
        let r = roster(&[1, 2, 3, 4]);
        let (a, b) = (trace(&[1, 2, 4]), trace(&[3, 2, 4]));
        let both = traces_to_digraphs(&[a.clone(), b.clone()], &r);
        let expected: BTreeSet<_> = arcs_of(&traces_to_digraphs(&[a], &r), 4)
            .union(&arcs_of(&traces_to_digraphs(&[b], &r), 4))
            .copied()
            .collect();
        assert_eq!(arcs_of(&both, 4), expected);
    }

    fn five_as_fixture() -> (OriginMap, OriginMap) {
        use PolicyKind::*;
        let r = roster(&[1, 2, 3, 4, 5]);
        let routes = routes_to_digraphs(
            &[route(&[3, 2, 1]), route(&[5, 4, 1]), route(&[1, 2]), route(&[4, 9, 2]), route(&[4, 5])],
            &r,
        );
        let policies = policies_to_digraphs(
            &[
                rule(1, Export, 3),
                rule(3, Import, 1),
                rule(3, Export, 5),
                rule(5, Import, 3),
                rule(2, Export, 4),
                rule(4, Import, 2),
            ],
            &r,
        );
        (routes, policies)
    }

    #[test]
    fn merge_is_arcwise_union() {
        let (routes, policies) = five_as_fixture();
        let merged = merge_sources([&routes, &policies]);
        for o in 1..=5 {
            let expected: BTreeSet<_> = arcs_of(&routes, o).union(&arcs_of(&policies, o)).copied().collect();
            assert_eq!(arcs_of(&merged, o), expected, "origin {o}");
        }
        assert_eq!(arcs_of(&merged, 1), set(&[(1, 2), (2, 3), (1, 4), (4, 5), (1, 3), (3, 5)]));
        assert_eq!(merge_sources([&routes, &policies]), merge_sources([&policies, &routes]));
        assert_eq!(merge_sources([&routes]), routes);
        assert_eq!(merge_sources([&routes, &routes]), routes);
    }

    #[test]
    fn merge_fills_missing_origins() {
        let r = roster(&[1, 2]);
        let mut partial = routes_to_digraphs(&[route(&[2, 1])], &r);
        partial.remove(&asn(2));
        let full = routes_to_digraphs(&[route(&[1, 2])], &r);
        let merged = merge_sources([&partial, &full]);
        assert_eq!(arcs_of(&merged, 1), set(&[(1, 2)]));
        assert_eq!(arcs_of(&merged, 2), set(&[(2, 1)]));
    }

    proptest! {
        #[test]
        fn arcs_stay_on_roster_and_are_attested(
            paths in proptest::collection::vec(proptest::collection::vec(1u32..=8, 1..6), 0..12)
        ) {
            let r = roster(&[1, 2, 3, 4, 5]);
            let records: Vec<RouteRecord> = paths
                .iter()
                .filter_map(|p| RouteRecord::new(p.iter().map(|&v| asn(v)).collect()).ok())
                .collect();
            let m = routes_to_digraphs(&records, &r);
            for (o, a) in &m {
                for (u, v) in a.graph().arcs() {
                    prop_assert!(r.contains(u) && r.contains(v));
                    let attested = records.iter().any(|rec| {
                        rec.origin() == *o && rec.path().windows(2).any(|w| w[0] == v && w[1] == u)
                    });
                    prop_assert!(attested);
                }
            }
        }

        #[test]
        fn policy_tails_reachable_within_own_digraph(
            rules in proptest::collection::vec((1u32..=6, any::<bool>(), 1u32..=6), 0..30)
        ) {
            let r = roster(&[1, 2, 3, 4, 5, 6]);
            let rules: Vec<PolicyRule> = rules
                .into_iter()
                .filter(|(a, _, b)| a != b)
                .map(|(a, imp, b)| rule(a, if imp { PolicyKind::Import } else { PolicyKind::Export }, b))
                .collect();
            for (o, a) in policies_to_digraphs(&rules, &r) {
                let reach = a.graph().reachable_from(o).unwrap();
                prop_assert!(a.graph().arcs().all(|(t, _)| reach.contains(&t)));
            }
        }
    }
}
