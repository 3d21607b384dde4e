//! Instances of interval cover: a multiset of points on the integer line
//! and a family of closed intervals.

use std::collections::HashMap;
use std::ops::Range;

use crate::error::{CoverError, Result};

/// A closed interval `[lo, hi]` carrying the index it had in the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub id: usize,
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(id: usize, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(CoverError::InvalidInterval { id, lo, hi });
        }
        Ok(Self { id, lo, hi })
    }

    pub fn contains_point(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// True if `other` lies inside `self` (closed containment).
    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// Points (sorted, with multiplicity) and intervals (sorted by `lo`).
///
/// A normalized instance has no interval contained in another, so the
/// order by `lo` and the order by `hi` coincide and both are strict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    points: Vec<i64>,
    intervals: Vec<Interval>,
    normalized: bool,
    positions: HashMap<usize, usize>,
}

/// A set of interval ids together with the number of points they cover.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cover {
    pub interval_ids: Vec<usize>,
    pub value: u64,
}

impl Cover {
    pub fn len(&self) -> usize {
        self.interval_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interval_ids.is_empty()
    }
}

impl Instance {
    /// Builds an instance without removing contained intervals.
    ///
    /// Points are sorted; intervals are sorted by `(lo, hi, id)`.
    pub fn from_raw(mut points: Vec<i64>, mut intervals: Vec<Interval>) -> Result<Self> {
        for iv in &intervals {
            if iv.lo > iv.hi {
                return Err(CoverError::InvalidInterval {
                    id: iv.id,
                    lo: iv.lo,
                    hi: iv.hi,
                });
            }
        }
        points.sort_unstable();
        intervals.sort_by_key(|iv| (iv.lo, iv.hi, iv.id));
        Self::assemble(points, intervals, false)
    }

    /// Builds an instance whose parts are already sorted and, if
    /// `normalized` is set, free of containment.
    pub(crate) fn from_sorted(
        points: Vec<i64>,
        intervals: Vec<Interval>,
        normalized: bool,
    ) -> Result<Self> {
        debug_assert!(points.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(intervals.windows(2).all(|w| w[0].lo <= w[1].lo));
        Self::assemble(points, intervals, normalized)
    }

    fn assemble(points: Vec<i64>, intervals: Vec<Interval>, normalized: bool) -> Result<Self> {
        let mut positions = HashMap::with_capacity(intervals.len());
        for (pos, iv) in intervals.iter().enumerate() {
            if positions.insert(iv.id, pos).is_some() {
                return Err(CoverError::DuplicateId(iv.id));
            }
        }
        Ok(Self {
            points,
            intervals,
            normalized,
            positions,
        })
    }

    /// Returns a normalized copy: contained intervals are dropped, and of
    /// two identical intervals the one with the smaller id survives.
    pub fn normalized(&self) -> Self {
        if self.normalized {
            return self.clone();
        }
        let mut order = self.intervals.clone();
        // Longer intervals first among equal `lo`, then smaller id.
        order.sort_by_key(|iv| (iv.lo, std::cmp::Reverse(iv.hi), iv.id));
        let mut kept: Vec<Interval> = Vec::with_capacity(order.len());
        for iv in order {
            match kept.last() {
                Some(last) if iv.hi <= last.hi => {}
                _ => kept.push(iv),
            }
        }
        Self::assemble(self.points.clone(), kept, true)
            .expect("ids were unique before normalization")
    }

    pub fn points(&self) -> &[i64] {
        &self.points
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_intervals(&self) -> usize {
        self.intervals.len()
    }

    /// Original ids in sorted position order.
    pub fn ids(&self) -> Vec<usize> {
        self.intervals.iter().map(|iv| iv.id).collect()
    }

    /// Position of the interval with the given id in the sorted order.
    pub fn position_of(&self, id: usize) -> Result<usize> {
        self.positions
            .get(&id)
            .copied()
            .ok_or(CoverError::UnknownId(id))
    }

    pub fn interval_by_id(&self, id: usize) -> Result<&Interval> {
        Ok(&self.intervals[self.position_of(id)?])
    }

    /// Index range into `points()` of the points covered by the interval at `pos`.
    pub fn point_range(&self, pos: usize) -> Range<usize> {
        let iv = &self.intervals[pos];
        let start = self.points.partition_point(|&p| p < iv.lo);
        let end = self.points.partition_point(|&p| p <= iv.hi);
        start..end
    }

    /// Number of points (with multiplicity) in the interval at `pos`.
    pub fn count_at(&self, pos: usize) -> u64 {
        self.point_range(pos).len() as u64
    }

    /// Number of points in the union of the intervals with the given ids.
    /// Repeated ids are counted once.
    pub fn measure(&self, ids: &[usize]) -> Result<u64> {
        let positions = ids
            .iter()
            .map(|&id| self.position_of(id))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.measure_positions(&positions))
    }

    /// Same as [`Instance::measure`] but addressed by sorted position.
    pub fn measure_positions(&self, positions: &[usize]) -> u64 {
        let mut spans: Vec<(i64, i64)> = positions
            .iter()
            .map(|&p| (self.intervals[p].lo, self.intervals[p].hi))
            .collect();
        spans.sort_unstable();
        let mut total = 0u64;
        let mut current: Option<(i64, i64)> = None;
        for (lo, hi) in spans {
            current = match current {
                Some((clo, chi)) if lo <= chi.saturating_add(1) => Some((clo, chi.max(hi))),
                Some(done) => {
                    total += self.count_in(done);
                    Some((lo, hi))
                }
                None => Some((lo, hi)),
            };
        }
        if let Some(done) = current {
            total += self.count_in(done);
        }
        total
    }

    fn count_in(&self, (lo, hi): (i64, i64)) -> u64 {
        let start = self.points.partition_point(|&p| p < lo);
        let end = self.points.partition_point(|&p| p <= hi);
        (end - start) as u64
    }

    /// Builds a [`Cover`] for the given ids, computing its value.
    pub fn cover(&self, ids: impl IntoIterator<Item = usize>) -> Result<Cover> {
        let mut interval_ids: Vec<usize> = ids.into_iter().collect();
        interval_ids.sort_unstable();
        interval_ids.dedup();
        let value = self.measure(&interval_ids)?;
        Ok(Cover {
            interval_ids,
            value,
        })
    }
}

/// Normalizes raw input: validates every interval, sorts, and removes
/// intervals contained in others.
pub fn normalize(points: Vec<i64>, intervals: Vec<Interval>) -> Result<Instance> {
    Ok(Instance::from_raw(points, intervals)?.normalized())
}

/// Convenience for building intervals numbered by their position in `spans`.
pub fn intervals_from_spans(spans: &[(i64, i64)]) -> Result<Vec<Interval>> {
    spans
        .iter()
        .enumerate()
        .map(|(id, &(lo, hi))| Interval::new(id, lo, hi))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(points: Vec<i64>, spans: &[(i64, i64)]) -> Instance {
        normalize(points, intervals_from_spans(spans).unwrap()).unwrap()
    }

    fn spans(instance: &Instance) -> Vec<(i64, i64)> {
        instance
            .intervals()
            .iter()
            .map(|iv| (iv.lo, iv.hi))
            .collect()
    }

    #[test]
    fn contained_interval_is_removed() {
        let i = inst((1..=20).collect(), &[(1, 10), (2, 5), (11, 20)]);
        assert_eq!(spans(&i), vec![(1, 10), (11, 20)]);
        assert_eq!(i.ids(), vec![0, 2]);
        assert!(i.is_normalized());
    }

    #[test]
    fn no_intervals() {
        let i = inst(vec![3, 1, 2], &[]);
        assert_eq!(i.num_intervals(), 0);
        assert_eq!(i.points(), &[1, 2, 3]);
    }

    #[test]
    fn sorted_without_removal() {
        let i = inst(vec![], &[(3, 8), (1, 5), (6, 9)]);
        assert_eq!(spans(&i), vec![(1, 5), (3, 8), (6, 9)]);
        assert_eq!(i.ids(), vec![1, 0, 2]);
    }

    #[test]
    fn identical_intervals_keep_smaller_id() {
        let ivs = vec![
            Interval::new(7, 0, 4).unwrap(),
            Interval::new(3, 0, 4).unwrap(),
            Interval::new(5, 0, 2).unwrap(),
        ];
        let i = normalize(vec![0, 1, 2], ivs).unwrap();
        assert_eq!(i.ids(), vec![3]);
    }

    #[test]
    fn shared_endpoints_are_containment() {
        // [2,6] shares lo with [2,9] and hi with [0,6].
        let i = inst(vec![], &[(2, 9), (2, 6), (0, 6), (5, 9)]);
        assert_eq!(spans(&i), vec![(0, 6), (2, 9)]);
    }

    #[test]
    fn rejects_inverted_interval() {
        let err = Interval::new(0, 5, 4).unwrap_err();
        assert!(matches!(
            err,
            CoverError::InvalidInterval {
                id: 0,
                lo: 5,
                hi: 4
            }
        ));
        let bad = vec![Interval {
            id: 1,
            lo: 9,
            hi: 2,
        }];
        assert!(normalize(vec![], bad).is_err());
    }

    #[test]
    fn measure_examples() {
        let i = inst((1..=20).collect(), &[(1, 10), (6, 16), (11, 20)]);
        assert_eq!(i.measure(&[0]).unwrap(), 10);
        assert_eq!(i.measure(&[0, 1]).unwrap(), 16);
        assert_eq!(i.measure(&[]).unwrap(), 0);
        assert_eq!(i.measure(&[0, 1, 2]).unwrap(), 20);
        assert!(matches!(i.measure(&[9]), Err(CoverError::UnknownId(9))));
    }

    #[test]
    fn measure_counts_multiplicity() {
        let i = inst(vec![5, 5, 5, 6, 100], &[(5, 5), (6, 200)]);
        assert_eq!(i.measure(&[0]).unwrap(), 3);
        assert_eq!(i.measure(&[0, 1]).unwrap(), 5);
    }

    #[test]
    fn adjacent_spans_do_not_double_count() {
        let i = inst(vec![1, 2, 3, 4], &[(1, 2), (3, 4)]);
        assert_eq!(i.measure(&[0, 1]).unwrap(), 4);
    }

    #[test]
    fn normalized_order_by_lo_equals_order_by_hi() {
        let i = inst(vec![], &[(0, 3), (1, 2), (2, 8), (4, 5), (6, 9), (7, 7)]);
        let by_hi: Vec<_> = {
            let mut v = i.intervals().to_vec();
            v.sort_by_key(|iv| iv.hi);
            v
        };
        assert_eq!(by_hi, i.intervals());
    }
}
