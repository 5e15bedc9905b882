//! Synthetic policy-annotated AS topologies.
//!
//! Generation is fully determined by [`SynConfig`]:
//!
//! 1. A ChaCha8 stream is seeded with `seed` through `SeedableRng::seed_from_u64`.
//!    Two primitives draw from it: `below(n)` takes one `u64` word `w` and
//!    returns `(w * n) >> 64`; `chance(p)` takes one word and tests
//!    `(w >> 11) * 2^-53 < p`.
//! 2. AS `k` (for `k` in `0..as_count`) is numbered `FIRST_ASN + k`.
//! 3. For `k = 1, 2, ...` in order: AS `k` gets the provider `below(k)`, then
//!    every other `j < k` in ascending order becomes an additional provider
//!    when `chance(provider_ratio)` holds. Providers therefore always have a
//!    lower index and the hierarchy is acyclic.
//! 4. For every pair `a < b` in lexicographic order with no provider link,
//!    `chance(peer_probability)` adds a peer link.
//! 5. Each link is declared as import/export rules in both directions.
//! 6. For every origin, routes spread valley-free with the usual preference:
//!    a customer-learned route beats a peer-learned one, which beats a
//!    provider-learned one; then the shorter path; then the lower next-hop
//!    AS. Every other AS that ends up with a route records one AS path.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sources::{PolicyKind, PolicyRule, Roster, RouteRecord};
use crate::{AsNumber, Error, Result};

/// AS number given to the top of the generated hierarchy.
pub const FIRST_ASN: u32 = 64512;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynConfig {
    pub as_count: usize,
    /// Probability that each lower-indexed AS becomes an extra provider.
    pub provider_ratio: f64,
    /// Probability that an otherwise unlinked pair peers.
    pub peer_probability: f64,
    pub seed: u64,
}

impl SynConfig {
    pub fn validate(&self) -> Result<()> {
        if self.as_count < 2 {
            return Err(Error::InvalidConfig("as_count must be at least 2"));
        }
        if self.as_count as u64 > (u32::MAX - FIRST_ASN) as u64 + 1 {
            return Err(Error::InvalidConfig("as_count exceeds the AS number space"));
        }
        if !(self.provider_ratio > 0.0 && self.provider_ratio < 1.0) {
            return Err(Error::InvalidConfig("provider_ratio must lie in (0, 1)"));
        }
        if !(self.peer_probability >= 0.0 && self.peer_probability < 1.0) {
            return Err(Error::InvalidConfig("peer_probability must lie in [0, 1)"));
        }
        Ok(())
    }
}

/// What the second AS of a link is to the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relationship {
    Customer,
    Peer,
    Provider,
}

impl Relationship {
    fn inverse(self) -> Self {
        match self {
            Relationship::Customer => Relationship::Provider,
            Relationship::Peer => Relationship::Peer,
            Relationship::Provider => Relationship::Customer,
        }
    }
}

/// An AS hierarchy with provider and peer links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    ases: Vec<AsNumber>,
    links: BTreeMap<AsNumber, BTreeMap<AsNumber, Relationship>>,
}

impl Topology {
    fn new(ases: Vec<AsNumber>) -> Self {
        let links = ases.iter().map(|&a| (a, BTreeMap::new())).collect();
        Topology { ases, links }
    }

    /// Records that `b` is `rel` of `a` (and the inverse for `b`).
    fn link(&mut self, a: AsNumber, b: AsNumber, rel: Relationship) {
        self.links.get_mut(&a).unwrap().insert(b, rel);
        self.links.get_mut(&b).unwrap().insert(a, rel.inverse());
    }

    pub fn ases(&self) -> &[AsNumber] {
        &self.ases
    }

    /// What `b` is to `a`, if they are linked.
    pub fn relationship(&self, a: AsNumber, b: AsNumber) -> Option<Relationship> {
        self.links.get(&a)?.get(&b).copied()
    }

    pub fn neighbors(&self, a: AsNumber) -> impl Iterator<Item = (AsNumber, Relationship)> + '_ {
        self.links.get(&a).into_iter().flatten().map(|(&b, &r)| (b, r))
    }

    /// Each link once, as `(a, b, what b is to a)` with `a < b`.
    pub fn links(&self) -> impl Iterator<Item = (AsNumber, AsNumber, Relationship)> + '_ {
        self.links
            .iter()
            .flat_map(|(&a, m)| m.iter().filter(move |(&b, _)| a < b).map(move |(&b, &r)| (a, b, r)))
    }
}

/// Everything one generator run produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynDataset {
    pub topology: Topology,
    pub roster: Roster,
    pub policies: Vec<PolicyRule>,
    pub routes: Vec<RouteRecord>,
}

struct Draw(ChaCha8Rng);

impl Draw {
    fn below(&mut self, n: usize) -> usize {
        ((self.0.next_u64() as u128 * n as u128) >> 64) as usize
    }

    fn chance(&mut self, p: f64) -> bool {
        ((self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)) < p
    }
}

pub fn generate_topology(cfg: &SynConfig) -> Result<Topology> {
    cfg.validate()?;
    let mut rng = Draw(ChaCha8Rng::seed_from_u64(cfg.seed));
    let ases: Vec<AsNumber> = (0..cfg.as_count)
        .map(|k| AsNumber::new(FIRST_ASN + k as u32).expect("checked by validate"))
        .collect();
    let mut topo = Topology::new(ases.clone());

    for k in 1..ases.len() {
        let primary = rng.below(k);
        topo.link(ases[k], ases[primary], Relationship::Provider);
        for j in (0..k).filter(|&j| j != primary) {
            if rng.chance(cfg.provider_ratio) {
                topo.link(ases[k], ases[j], Relationship::Provider);
            }
        }
    }
    for a in 0..ases.len() {
        for b in a + 1..ases.len() {
            if topo.relationship(ases[a], ases[b]).is_none() && rng.chance(cfg.peer_probability) {
                topo.link(ases[a], ases[b], Relationship::Peer);
            }
        }
    }
    Ok(topo)
}

/// Import/export declarations allowing announcements across every link in
/// both directions.
pub fn policy_rules(topo: &Topology) -> Vec<PolicyRule> {
    let mut rules = Vec::new();
    for (a, b, _) in topo.links() {
        for (x, y) in [(a, b), (b, a)] {
            rules.push(PolicyRule::new(x, PolicyKind::Export, y).expect("linked ASes differ"));
            rules.push(PolicyRule::new(y, PolicyKind::Import, x).expect("linked ASes differ"));
        }
    }
    rules
}

/// Best valley-free route of every AS toward `origin`, as the AS path read
/// from that AS to the origin.
pub fn best_routes(topo: &Topology, origin: AsNumber) -> BTreeMap<AsNumber, Vec<AsNumber>> {
    let mut best: BTreeMap<AsNumber, Vec<AsNumber>> = BTreeMap::new();
    best.insert(origin, alloc::vec![origin]);

    // customer-learned routes climb the hierarchy one layer at a time
    let mut layer = alloc::vec![origin];
    while !layer.is_empty() {
        let mut offers: BTreeMap<AsNumber, AsNumber> = BTreeMap::new();
        for &u in &layer {
            for (p, rel) in topo.neighbors(u) {
                if rel == Relationship::Provider && !best.contains_key(&p) {
                    let hop = offers.entry(p).or_insert(u);
                    *hop = (*hop).min(u);
                }
            }
        }
        layer = offers.keys().copied().collect();
        for (p, via) in offers {
            let path = prepend(p, &best[&via]);
            best.insert(p, path);
        }
    }

    // one peer hop off any customer route
    let customer_side: Vec<AsNumber> = best.keys().copied().collect();
    let mut peer_offers: BTreeMap<AsNumber, (usize, AsNumber)> = BTreeMap::new();
    for &u in &customer_side {
        for (v, rel) in topo.neighbors(u) {
            if rel == Relationship::Peer && !best.contains_key(&v) {
                let offer = (best[&u].len(), u);
                let cur = peer_offers.entry(v).or_insert(offer);
                *cur = (*cur).min(offer);
            }
        }
    }
    for (v, (_, via)) in peer_offers {
        let path = prepend(v, &best[&via]);
        best.insert(v, path);
    }

    // providers precede their customers in `ases`, so one ascending pass
    // sees every provider's final route
    for &v in topo.ases() {
        if best.contains_key(&v) {
            continue;
        }
        let offer = topo
            .neighbors(v)
            .filter(|&(_, rel)| rel == Relationship::Provider)
            .filter_map(|(p, _)| best.get(&p).map(|path| (path.len(), p)))
            .min();
        if let Some((_, via)) = offer {
            let path = prepend(v, &best[&via]);
            best.insert(v, path);
        }
    }
    best
}

fn prepend(v: AsNumber, path: &[AsNumber]) -> Vec<AsNumber> {
    let mut out = Vec::with_capacity(path.len() + 1);
    out.push(v);
    out.extend_from_slice(path);
    out
}

/// One AS path per (collector, origin) pair with a route, ordered by origin
/// then collector.
pub fn simulate_routes(topo: &Topology) -> Vec<RouteRecord> {
    let mut routes = Vec::new();
    for &origin in topo.ases() {
        for (collector, path) in best_routes(topo, origin) {
            if collector != origin {
                routes.push(RouteRecord::new(path).expect("valley-free routes are loop-free"));
            }
        }
    }
    routes
}

pub fn generate(cfg: &SynConfig) -> Result<SynDataset> {
    let topology = generate_topology(cfg)?;
    let roster = Roster::new(topology.ases().iter().copied())?;
    let policies = policy_rules(&topology);
    let routes = simulate_routes(&topology);
    Ok(SynDataset { topology, roster, policies, routes })
}

/// ASes of the topology reachable from `origin` over links, in either
/// direction.
pub fn component_of(topo: &Topology, origin: AsNumber) -> BTreeSet<AsNumber> {
    let mut seen = BTreeSet::from([origin]);
    let mut queue = VecDeque::from([origin]);
    while let Some(u) = queue.pop_front() {
        for (v, _) in topo.neighbors(u) {
            if seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    seen
}
