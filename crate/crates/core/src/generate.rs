//! Instance generators: seeded random instances, the tight example for the
//! greedy ratio, and pairs of disjoint instances.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CoverError, Result};
use crate::model::{normalize, Instance, Interval};

/// Three intervals where greedy takes the middle one first: `[1, s]`,
/// `[s+1, 2s]` and `[s/2+1, 3s/2+1]` over the points `1..=2s`.
///
/// For `s = 2` the third interval swallows the second one, so the
/// normalized result has two intervals.
pub fn gen_tight_example(s: u64) -> Result<Instance> {
    if s < 2 || !s.is_multiple_of(2) {
        return Err(CoverError::InvalidParameter(format!(
            "s must be even and >= 2, got {s}"
        )));
    }
    let s = i64::try_from(s).map_err(|_| CoverError::InvalidParameter("s too large".into()))?;
    let points: Vec<i64> = (1..=2 * s).collect();
    let intervals = vec![
        Interval::new(0, 1, s)?,
        Interval::new(1, s + 1, 2 * s)?,
        Interval::new(2, s / 2 + 1, 3 * s / 2 + 1)?,
    ];
    normalize(points, intervals)
}

fn check_range(range: &RangeInclusive<i64>) -> Result<()> {
    if range.is_empty() {
        return Err(CoverError::InvalidParameter(format!(
            "empty coordinate range {}..={}",
            range.start(),
            range.end()
        )));
    }
    Ok(())
}

/// Uniform random points and intervals with both endpoints drawn uniformly
/// from `range`, then normalized. Deterministic in `seed`.
pub fn gen_random(
    n_points: usize,
    m_intervals: usize,
    range: RangeInclusive<i64>,
    seed: u64,
) -> Result<Instance> {
    check_range(&range)?;
    if m_intervals == 0 {
        return Err(CoverError::InvalidParameter(
            "need at least one interval".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<i64> = (0..n_points)
        .map(|_| rng.gen_range(range.clone()))
        .collect();
    let intervals = (0..m_intervals)
        .map(|id| {
            let a = rng.gen_range(range.clone());
            let b = rng.gen_range(range.clone());
            Interval {
                id,
                lo: a.min(b),
                hi: a.max(b),
            }
        })
        .collect();
    normalize(points, intervals)
}

/// Random instance whose `m_intervals` intervals are already free of
/// containment, so all of them survive normalization.
///
/// Left endpoints are distinct and spread over `range`; each interval
/// reaches up to `max_len` to the right, pushed further if needed to keep
/// right endpoints strictly increasing.
pub fn gen_random_chain(
    n_points: usize,
    m_intervals: usize,
    range: RangeInclusive<i64>,
    max_len: i64,
    seed: u64,
) -> Result<Instance> {
    check_range(&range)?;
    let width = (*range.end() as i128 - *range.start() as i128 + 1) as u128;
    if (m_intervals as u128) > width {
        return Err(CoverError::InvalidParameter(format!(
            "range holds {width} coordinates, fewer than {m_intervals} intervals"
        )));
    }
    if max_len < 0 {
        return Err(CoverError::InvalidParameter(
            "max_len must be non-negative".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<i64> = (0..n_points)
        .map(|_| rng.gen_range(range.clone()))
        .collect();

    let mut los = rand::seq::index::sample(&mut rng, width as usize, m_intervals).into_vec();
    los.sort_unstable();
    let mut intervals = Vec::with_capacity(m_intervals);
    let mut prev_hi = i64::MIN;
    for (id, off) in los.into_iter().enumerate() {
        let lo = range.start() + off as i64;
        let hi = (lo + rng.gen_range(0..=max_len)).max(prev_hi.saturating_add(1));
        prev_hi = hi;
        intervals.push(Interval { id, lo, hi });
    }
    normalize(points, intervals)
}

/// Places `right` after `left` on the line and renumbers its ids past
/// those of `left`. Returns the shifted copy of `right` and the union.
pub fn disjoint_union(left: &Instance, right: &Instance) -> Result<(Instance, Instance)> {
    let left_max = left
        .intervals()
        .iter()
        .map(|iv| iv.hi)
        .chain(left.points().iter().copied())
        .max()
        .unwrap_or(0);
    let right_min = right
        .intervals()
        .iter()
        .map(|iv| iv.lo)
        .chain(right.points().iter().copied())
        .min()
        .unwrap_or(0);
    let shift = left_max - right_min + 1;
    let id_base = left
        .intervals()
        .iter()
        .map(|iv| iv.id + 1)
        .max()
        .unwrap_or(0);

    let shifted_points: Vec<i64> = right.points().iter().map(|p| p + shift).collect();
    let shifted_intervals: Vec<Interval> = right
        .intervals()
        .iter()
        .map(|iv| Interval {
            id: id_base + iv.id,
            lo: iv.lo + shift,
            hi: iv.hi + shift,
        })
        .collect();
    let normalized = left.is_normalized() && right.is_normalized();
    let shifted = Instance::from_sorted(
        shifted_points.clone(),
        shifted_intervals.clone(),
        right.is_normalized(),
    )?;

    let mut points = left.points().to_vec();
    points.extend(shifted_points);
    let mut intervals = left.intervals().to_vec();
    intervals.extend(shifted_intervals);
    let union = Instance::from_sorted(points, intervals, normalized)?;
    Ok((shifted, union))
}

/// Two random normalized instances laid out side by side, plus their union.
pub fn gen_disjoint_pair(
    n_points: usize,
    m_intervals: usize,
    span: i64,
    seed: u64,
) -> Result<(Instance, Instance, Instance)> {
    let left = gen_random(n_points, m_intervals, 0..=span, seed)?;
    let right = gen_random(
        n_points,
        m_intervals,
        0..=span,
        seed ^ 0x9e37_79b9_7f4a_7c15,
    )?;
    let (right, union) = disjoint_union(&left, &right)?;
    Ok((left, right, union))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tight_s10_layout() {
        let t = gen_tight_example(10).unwrap();
        assert_eq!(t.points(), (1..=20).collect::<Vec<_>>().as_slice());
        let spans: Vec<_> = t
            .intervals()
            .iter()
            .map(|iv| (iv.id, iv.lo, iv.hi))
            .collect();
        assert_eq!(spans, vec![(0, 1, 10), (2, 6, 16), (1, 11, 20)]);
        assert_eq!(t.measure(&[2]).unwrap(), 11);
    }

    #[test]
    fn tight_rejects_odd_and_small() {
        assert!(gen_tight_example(7).is_err());
        assert!(gen_tight_example(0).is_err());
        assert!(gen_tight_example(1).is_err());
        assert_eq!(gen_tight_example(2).unwrap().num_intervals(), 2);
    }

    #[test]
    fn random_is_deterministic_and_normalized() {
        let a = gen_random(12, 8, 0..=30, 42).unwrap();
        let b = gen_random(12, 8, 0..=30, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.is_normalized());
        assert!(a.num_intervals() >= 1 && a.num_intervals() <= 8);
        assert_ne!(a, gen_random(12, 8, 0..=30, 43).unwrap());
    }

    #[test]
    fn random_without_points_has_zero_value() {
        let a = gen_random(0, 1, 0..=5, 1).unwrap();
        assert_eq!(a.measure(&a.ids()).unwrap(), 0);
    }

    #[test]
    fn random_rejects_empty_range() {
        #[allow(clippy::reversed_empty_ranges)]
        let r = 5..=4;
        assert!(gen_random(3, 3, r, 0).is_err());
        assert!(gen_random(3, 0, 0..=4, 0).is_err());
    }

    #[test]
    fn chain_keeps_every_interval() {
        let c = gen_random_chain(100, 50, 0..=200, 10, 3).unwrap();
        assert_eq!(c.num_intervals(), 50);
        assert!(c
            .intervals()
            .windows(2)
            .all(|w| w[0].lo < w[1].lo && w[0].hi < w[1].hi));
        assert!(gen_random_chain(1, 10, 0..=5, 3, 0).is_err());
    }

    #[test]
    fn disjoint_pair_does_not_overlap() {
        let (l, r, u) = gen_disjoint_pair(10, 5, 20, 9).unwrap();
        let lmax = l.intervals().iter().map(|iv| iv.hi).max().unwrap();
        let rmin = r.intervals().iter().map(|iv| iv.lo).min().unwrap();
        assert!(lmax < rmin);
        assert_eq!(u.num_intervals(), l.num_intervals() + r.num_intervals());
        assert_eq!(u.num_points(), l.num_points() + r.num_points());
        assert!(u.is_normalized());
    }
}
