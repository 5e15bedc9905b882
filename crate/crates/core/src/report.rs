//! Roster-wide aggregation: the pairwise disjoint-path matrix, per-origin
//! mean/min/max rows and the frequency histogram of path counts.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::disjoint;
use crate::sources::OriginMap;
use crate::{AnnouncementDigraph, AsNumber, Error, Result};

/// Which disjointness notion a matrix counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Metric {
    /// Paths may share vertices but not arcs.
    #[default]
    ArcDisjoint,
    /// Paths share neither intermediate vertices nor arcs.
    InternallyDisjoint,
}

/// Path counts for every ordered pair `(source, origin)` of distinct roster
/// members: how many disjoint paths `source` has toward `origin` in the
/// destination digraph of `origin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdpMatrix {
    roster: Vec<AsNumber>,
    entries: BTreeMap<(AsNumber, AsNumber), usize>,
}

impl AdpMatrix {
    /// Checks that `entries` holds exactly the off-diagonal pairs of `roster`.
    pub fn new(
        roster: impl IntoIterator<Item = AsNumber>,
        entries: BTreeMap<(AsNumber, AsNumber), usize>,
    ) -> Result<Self> {
        let mut roster: Vec<AsNumber> = roster.into_iter().collect();
        roster.sort_unstable();
        roster.dedup();
        for &(s, o) in entries.keys() {
            for v in [s, o] {
                if roster.binary_search(&v).is_err() {
                    return Err(Error::InconsistentRoster(v));
                }
            }
            if s == o {
                return Err(Error::SameEndpoints(s));
            }
        }
        let n = roster.len();
        if entries.len() != n * n.saturating_sub(1) {
            let missing = roster
                .iter()
                .copied()
                .find(|&o| roster.iter().any(|&s| s != o && !entries.contains_key(&(s, o))))
                .unwrap_or(AsNumber::MIN);
            return Err(Error::InconsistentRoster(missing));
        }
        Ok(AdpMatrix { roster, entries })
    }

    /// Roster in ascending order.
    pub fn roster(&self) -> &[AsNumber] {
        &self.roster
    }

    pub fn get(&self, source: AsNumber, origin: AsNumber) -> Option<usize> {
        self.entries.get(&(source, origin)).copied()
    }

    /// `((source, origin), count)` in ascending pair order.
    pub fn entries(&self) -> impl ExactSizeIterator<Item = ((AsNumber, AsNumber), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The counts every other roster member has toward `origin`, ascending by
    /// source.
    pub fn column(&self, origin: AsNumber) -> impl Iterator<Item = (AsNumber, usize)> + '_ {
        self.roster
            .iter()
            .copied()
            .filter(move |&s| s != origin)
            .filter_map(move |s| self.get(s, origin).map(|c| (s, c)))
    }
}

/// Checks that the map is keyed by the roster and that every digraph spans
/// it. Returns the roster in ascending order.
pub fn check_roster(digraphs: &OriginMap) -> Result<Vec<AsNumber>> {
    let roster: Vec<AsNumber> = digraphs.keys().copied().collect();
    if roster.len() < 2 {
        return Err(Error::RosterTooSmall(roster.len()));
    }
    for (&o, a) in digraphs {
        if a.origin() != o {
            return Err(Error::InconsistentRoster(o));
        }
        if let Some(&v) = roster.iter().find(|&&v| !a.graph().contains_vertex(v)) {
            return Err(Error::InconsistentRoster(v));
        }
    }
    Ok(roster)
}

/// Counts for every roster member toward the origin of `a`, computed in its
/// destination digraph. This is one column of the matrix; columns are
/// independent and may be computed in any order.
pub fn origin_column(
    a: &AnnouncementDigraph,
    roster: &[AsNumber],
    metric: Metric,
) -> Result<Vec<(AsNumber, usize)>> {
    let dest = disjoint::destination_digraph(a);
    let origin = a.origin();
    roster
        .iter()
        .copied()
        .filter(|&s| s != origin)
        .map(|s| {
            let count = match metric {
                Metric::ArcDisjoint => disjoint::adp(dest.graph(), s, origin)?,
                Metric::InternallyDisjoint => disjoint::idp(dest.graph(), s, origin)?,
            };
            Ok((s, count))
        })
        .collect()
}

/// Assembles a matrix from per-origin columns, in whatever order they were
/// produced.
pub fn assemble_matrix<I>(roster: Vec<AsNumber>, columns: I) -> Result<AdpMatrix>
where
    I: IntoIterator<Item = (AsNumber, Vec<(AsNumber, usize)>)>,
{
    let entries =
        columns.into_iter().flat_map(|(o, col)| col.into_iter().map(move |(s, c)| ((s, o), c))).collect();
    AdpMatrix::new(roster, entries)
}

pub fn compute_matrix(digraphs: &OriginMap, metric: Metric) -> Result<AdpMatrix> {
    let roster = check_roster(digraphs)?;
    let columns = digraphs
        .iter()
        .map(|(&o, a)| Ok((o, origin_column(a, &roster, metric)?)))
        .collect::<Result<Vec<_>>>()?;
    assemble_matrix(roster, columns)
}

/// Arc-disjoint path counts for every ordered roster pair.
pub fn compute_adp_matrix(digraphs: &OriginMap) -> Result<AdpMatrix> {
    compute_matrix(digraphs, Metric::ArcDisjoint)
}

/// An exact arithmetic mean, kept as `sum / count`.
#[derive(Debug, Clone, Copy)]
pub struct Average {
    sum: u64,
    count: u64,
}

impl Average {
    /// `None` when `count` is zero.
    pub fn new(sum: u64, count: u64) -> Option<Self> {
        (count > 0).then_some(Average { sum, count })
    }

    pub fn sum(self) -> u64 {
        self.sum
    }

    pub fn count(self) -> u64 {
        self.count
    }

    pub fn as_f64(self) -> f64 {
        self.sum as f64 / self.count as f64
    }

    /// The mean times 100, rounded half up; `161` for 71/44, `201` for
    /// 401/200.
    pub fn hundredths_half_up(self) -> u64 {
        let (sum, count) = (self.sum as u128, self.count as u128);
        ((200 * sum + count) / (2 * count)) as u64
    }
}

impl PartialEq for Average {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Average {}

impl PartialOrd for Average {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Average {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.sum as u128 * other.count as u128).cmp(&(other.sum as u128 * self.count as u128))
    }
}

/// Mean, minimum and maximum path count toward one origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiversityStats {
    pub origin: AsNumber,
    pub avg: Average,
    pub min: usize,
    pub max: usize,
}

/// Statistics over the column of `origin`; zero entries (unreachable
/// sources) count toward the mean.
pub fn compute_stats(m: &AdpMatrix, origin: AsNumber) -> Result<DiversityStats> {
    if m.roster().binary_search(&origin).is_err() {
        return Err(Error::UnknownVertex(origin));
    }
    let column: Vec<usize> = m.column(origin).map(|(_, c)| c).collect();
    let sum: usize = column.iter().sum();
    let avg = Average::new(sum as u64, column.len() as u64).ok_or(Error::RosterTooSmall(m.roster().len()))?;
    Ok(DiversityStats {
        origin,
        avg,
        min: column.iter().copied().min().unwrap_or(0),
        max: column.iter().copied().max().unwrap_or(0),
    })
}

/// One row per roster member, ascending.
pub fn compute_all_stats(m: &AdpMatrix) -> Result<Vec<DiversityStats>> {
    m.roster().iter().map(|&o| compute_stats(m, o)).collect()
}

/// How many ordered pairs have each path count.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram {
    counts: BTreeMap<usize, usize>,
}

impl Histogram {
    pub fn from_counts(counts: BTreeMap<usize, usize>) -> Self {
        Histogram { counts }
    }

    /// Occurrences of `k`; zero for absent values.
    pub fn get(&self, k: usize) -> usize {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// `(value, occurrences)` ascending, only for values that occur or were
    /// given explicitly.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn min_value(&self) -> Option<usize> {
        self.counts.keys().next().copied()
    }

    pub fn max_value(&self) -> Option<usize> {
        self.counts.keys().next_back().copied()
    }
}

pub fn compute_histogram(m: &AdpMatrix) -> Histogram {
    let mut counts = BTreeMap::new();
    for (_, c) in m.entries() {
        *counts.entry(c).or_insert(0) += 1;
    }
    Histogram { counts }
}

/// Number of ordered pairs with more than one disjoint path.
pub fn diversity_excess(h: &Histogram) -> usize {
    h.iter().filter(|&(k, _)| k >= 2).map(|(_, c)| c).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sources::{routes_to_digraphs, Roster, RouteRecord};
    use crate::Digraph;
    use alloc::vec;

    fn asn(v: u32) -> AsNumber {
        AsNumber::new(v).unwrap()
    }

    fn map(entries: &[(u32, &[(u32, u32)])], roster: &[u32]) -> OriginMap {
        entries
            .iter()
            .map(|&(o, arcs)| {
                let g = Digraph::build(
                    roster.iter().map(|&v| asn(v)),
                    arcs.iter().map(|&(a, b)| (asn(a), asn(b))),
                )
                .unwrap();
                (asn(o), AnnouncementDigraph::new(asn(o), g).unwrap())
            })
            .collect()
    }

    fn matrix(roster: &[u32], cells: &[((u32, u32), usize)]) -> AdpMatrix {
        AdpMatrix::new(
            roster.iter().map(|&v| asn(v)),
            cells.iter().map(|&((s, o), c)| ((asn(s), asn(o)), c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn two_as_matrix() {
        let m = compute_adp_matrix(&map(&[(1, &[(1, 2)]), (2, &[(2, 1)])], &[1, 2])).unwrap();
        assert_eq!(m.get(asn(2), asn(1)), Some(1));
        assert_eq!(m.get(asn(1), asn(2)), Some(1));
        assert_eq!(m.len(), 2);

        let m = compute_adp_matrix(&map(&[(1, &[]), (2, &[(2, 1)])], &[1, 2])).unwrap();
        assert_eq!(m.get(asn(2), asn(1)), Some(0));
    }

    #[test]
    fn inconsistent_rosters_rejected() {
        // origins 1 and 3 do not span 2, origin 2 does not span 3
        let mut m = map(&[(1, &[]), (3, &[])], &[1, 3]);
        m.extend(map(&[(2, &[(2, 1)])], &[1, 2]));
        assert_eq!(compute_adp_matrix(&m), Err(Error::InconsistentRoster(asn(2))));

        let single = map(&[(1, &[])], &[1, 2]);
        assert!(compute_adp_matrix(&single).is_err());
    }

    #[test]
    fn matrix_constructor_checks_pairs() {
        let cells = [((asn(1), asn(2)), 1)].into_iter().collect();
        assert!(AdpMatrix::new([asn(1), asn(2)], cells).is_err());
        let cells = [((asn(1), asn(1)), 1), ((asn(2), asn(1)), 1)].into_iter().collect();
        assert!(AdpMatrix::new([asn(1), asn(2)], cells).is_err());
    }

    #[test]
    fn five_as_matrix_matches_oracle() {
        let roster = Roster::new((1..=5).map(asn)).unwrap();
        let paths: &[&[u32]] = &[
            &[2, 1],
            &[3, 1],
            &[4, 2, 1],
            &[4, 3, 1],
            &[5, 4, 1],
            &[5, 3, 1],
            &[3, 2, 1],
            &[1, 2],
            &[3, 2],
            &[5, 3, 2],
            &[4, 1, 2],
            &[1, 3],
            &[2, 3],
            &[4, 3],
            &[5, 4, 3],
            &[1, 4],
            &[5, 4],
            &[2, 4],
            &[3, 5, 4],
            &[4, 5],
            &[3, 5],
            &[1, 3, 5],
        ];
        let records: Vec<_> =
            paths.iter().map(|p| RouteRecord::new(p.iter().map(|&v| asn(v)).collect()).unwrap()).collect();
        let digraphs = routes_to_digraphs(&records, &roster);
        let m = compute_adp_matrix(&digraphs).unwrap();
        for ((s, o), c) in m.entries() {
            let dest = digraphs[&o].graph().converse();
            assert_eq!(c, disjoint::brute_force_adp(&dest, s, o).unwrap(), "{s} -> {o}");
        }
        let idp = compute_matrix(&digraphs, Metric::InternallyDisjoint).unwrap();
        assert!(idp.entries().all(|((s, o), c)| c <= m.get(s, o).unwrap()));
    }

    #[test]
    fn stats_examples() {
        let m = matrix(
            &[1, 2, 3],
            &[((2, 1), 1), ((3, 1), 1), ((1, 2), 0), ((3, 2), 2), ((1, 3), 4), ((2, 3), 1)],
        );
        let s = compute_stats(&m, asn(1)).unwrap();
        assert_eq!((s.avg.as_f64(), s.min, s.max), (1.0, 1, 1));
        let s = compute_stats(&m, asn(2)).unwrap();
        assert_eq!((s.avg.as_f64(), s.min, s.max), (1.0, 0, 2));
        let s = compute_stats(&m, asn(3)).unwrap();
        assert_eq!((s.avg, s.min, s.max), (Average::new(5, 2).unwrap(), 1, 4));
        assert_eq!(compute_stats(&m, asn(9)), Err(Error::UnknownVertex(asn(9))));
    }

    #[test]
    fn stats_against_direct_recount() {
        let m = matrix(
            &[10, 20, 30, 40],
            &[
                ((20, 10), 3),
                ((30, 10), 0),
                ((40, 10), 2),
                ((10, 20), 1),
                ((30, 20), 1),
                ((40, 20), 5),
                ((10, 30), 2),
                ((20, 30), 2),
                ((40, 30), 2),
                ((10, 40), 0),
                ((20, 40), 0),
                ((30, 40), 1),
            ],
        );
        let expected = [(10, 5, 0, 3), (20, 7, 1, 5), (30, 6, 2, 2), (40, 1, 0, 1)];
        for (row, (o, sum, min, max)) in compute_all_stats(&m).unwrap().into_iter().zip(expected) {
            assert_eq!(row.origin, asn(o));
            assert_eq!(row.avg, Average::new(sum, 3).unwrap());
            assert_eq!((row.min, row.max), (min, max));
            assert!(Average::new(row.min as u64, 1).unwrap() <= row.avg);
            assert!(row.avg <= Average::new(row.max as u64, 1).unwrap());
        }
    }

    #[test]
    fn half_up_rounding() {
        assert_eq!(Average::new(71, 44).unwrap().hundredths_half_up(), 161);
        assert_eq!(Average::new(1, 1).unwrap().hundredths_half_up(), 100);
        assert_eq!(Average::new(401, 200).unwrap().hundredths_half_up(), 201);
        assert_eq!(Average::new(1, 8).unwrap().hundredths_half_up(), 13);
        assert_eq!(Average::new(1, 3).unwrap().hundredths_half_up(), 33);
        assert!(Average::new(1, 0).is_none());
    }

    #[test]
    fn histogram_examples() {
        let m = matrix(&[1, 2], &[((1, 2), 1), ((2, 1), 1)]);
        let h = compute_histogram(&m);
        assert_eq!(h.iter().collect::<Vec<_>>(), vec![(1, 2)]);

        let empty = compute_adp_matrix(&map(&[(1, &[]), (2, &[]), (3, &[])], &[1, 2, 3])).unwrap();
        let h = compute_histogram(&empty);
        assert_eq!(h.iter().collect::<Vec<_>>(), vec![(0, 6)]);
        assert_eq!(diversity_excess(&h), 0);
    }

    #[test]
    fn excess_examples() {
        let h = Histogram::from_counts([(1, 10)].into_iter().collect());
        assert_eq!(diversity_excess(&h), 0);
        let h = Histogram::from_counts([(0, 2), (1, 5), (2, 3), (4, 1)].into_iter().collect());
        assert_eq!(diversity_excess(&h), 4);
        assert_eq!(diversity_excess(&h) + h.get(0) + h.get(1), h.total());
        assert_eq!(h.get(3), 0);
    }
}
