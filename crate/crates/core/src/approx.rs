//! `(1 + eps) k`-interval covers that are at least as good as the optimal
//! `k`-cover.
//!
//! Every `delta`-th interval goes into a skeleton. Removing the skeleton
//! splits the instance into independent groups whose uncovered points are
//! disjoint. Each group exposes its optimal marginal profits as a lazy
//! stream backed by a resumable [`DpSolver`], and a max-heap merges the
//! streams, taking `k` profits in total.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_rational::Ratio;
use num_traits::Zero;

use crate::dp::{self, DpSolver};
use crate::error::{CoverError, Result};
use crate::model::{Cover, Instance, Interval};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApproxParams {
    pub k: usize,
    pub eps: Ratio<u64>,
}

impl ApproxParams {
    pub fn new(k: usize, eps: Ratio<u64>) -> Result<Self> {
        if k == 0 {
            return Err(CoverError::InvalidParameter("k must be positive".into()));
        }
        if eps.is_zero() {
            return Err(CoverError::InvalidParameter("eps must be positive".into()));
        }
        Ok(Self { k, eps })
    }

    fn eps_k(&self) -> Ratio<u128> {
        Ratio::new(
            u128::from(*self.eps.numer()) * self.k as u128,
            u128::from(*self.eps.denom()),
        )
    }

    /// Number of skeleton intervals, `floor(eps * k)`.
    pub fn extra(&self) -> usize {
        self.eps_k().to_integer() as usize
    }

    /// Skeleton stride `ceil(m / (eps * k))`, at least 1.
    pub fn delta(&self, m: usize) -> usize {
        let d = (Ratio::from_integer(m as u128) / self.eps_k())
            .ceil()
            .to_integer();
        (d as usize).max(1)
    }
}

/// One group of the partition with local ids `0..` and their global ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubInstance {
    pub instance: Instance,
    pub global_ids: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub skeleton: Vec<usize>,
    pub groups: Vec<SubInstance>,
}

/// Splits a normalized instance around the skeleton `{I_delta, I_2delta, ...}`
/// (1-based positions, at most `floor(eps k)` of them, clamped to `m`).
///
/// Group `j` holds the intervals strictly between skeleton picks `j` and
/// `j + 1`, the last group runs to the final interval, and each group keeps
/// only the points of its union not covered by the skeleton.
pub fn partition(instance: &Instance, params: &ApproxParams) -> Result<Partition> {
    if !instance.is_normalized() {
        return Err(CoverError::InvalidParameter(
            "instance must be normalized".into(),
        ));
    }
    let big_k = params.extra();
    if big_k == 0 {
        return Err(CoverError::InvalidParameter(
            "floor(eps * k) is 0; use the exact solver".into(),
        ));
    }
    let m = instance.num_intervals();
    let delta = params.delta(m);
    let picks: Vec<usize> = (1..=big_k)
        .map(|j| j * delta)
        .take_while(|&p| p <= m)
        .map(|p| p - 1)
        .collect();
    let intervals = instance.intervals();
    let skeleton: Vec<usize> = picks.iter().map(|&p| intervals[p].id).collect();

    // Points left uncovered by the skeleton, in one sweep.
    let mut residual_points = Vec::with_capacity(instance.num_points());
    let mut pick = 0;
    for &x in instance.points() {
        while pick < picks.len() && intervals[picks[pick]].hi < x {
            pick += 1;
        }
        if pick == picks.len() || !intervals[picks[pick]].contains_point(x) {
            residual_points.push(x);
        }
    }

    let mut bounds = Vec::with_capacity(picks.len() + 1);
    let mut start = 0;
    for &p in &picks {
        bounds.push(start..p);
        start = p + 1;
    }
    bounds.push(start..m);

    let mut groups = Vec::with_capacity(bounds.len());
    for range in bounds {
        let members = &intervals[range];
        let mut points = Vec::new();
        let mut taken_until = 0;
        for iv in members {
            let lo = residual_points
                .partition_point(|&x| x < iv.lo)
                .max(taken_until);
            let hi = residual_points.partition_point(|&x| x <= iv.hi).max(lo);
            points.extend_from_slice(&residual_points[lo..hi]);
            taken_until = hi;
        }
        let local: Vec<Interval> = members
            .iter()
            .enumerate()
            .map(|(id, iv)| Interval {
                id,
                lo: iv.lo,
                hi: iv.hi,
            })
            .collect();
        groups.push(SubInstance {
            instance: Instance::from_sorted(points, local, true)?,
            global_ids: members.iter().map(|iv| iv.id).collect(),
        });
    }
    Ok(Partition { skeleton, groups })
}

/// Lazily extended marginal profits of one sub-instance.
#[derive(Debug, Clone)]
pub struct ProfitStream {
    sub: SubInstance,
    solver: DpSolver,
    taken: usize,
    last: Option<u64>,
    next: Option<u64>,
}

impl ProfitStream {
    /// Computes the first profit (one resume) unless the group is empty.
    pub fn new(sub: SubInstance) -> Result<Self> {
        let solver = DpSolver::new(&sub.instance)?;
        let mut stream = Self {
            sub,
            solver,
            taken: 0,
            last: None,
            next: None,
        };
        stream.compute_next()?;
        Ok(stream)
    }

    fn compute_next(&mut self) -> Result<()> {
        self.next = None;
        if self.taken < self.sub.instance.num_intervals() {
            let before = self.solver.value();
            let (_, after) = self.solver.resume();
            let profit = after - before;
            if let Some(last) = self.last {
                if profit > last {
                    return Err(CoverError::InvariantBreach(format!(
                        "stream profit rose from {last} to {profit}"
                    )));
                }
            }
            self.next = Some(profit);
        }
        Ok(())
    }

    pub fn peek(&self) -> Option<u64> {
        self.next
    }

    /// Consumes the current profit and computes the following one.
    pub fn pop(&mut self) -> Result<Option<u64>> {
        let Some(profit) = self.next else {
            return Ok(None);
        };
        self.taken += 1;
        self.last = Some(profit);
        self.compute_next()?;
        Ok(Some(profit))
    }

    pub fn taken(&self) -> usize {
        self.taken
    }

    /// DP resumptions performed so far.
    pub fn resume_calls(&self) -> usize {
        self.solver.k()
    }

    /// Optimal cover of the consumed budget, in global ids.
    pub fn cover(&self) -> Result<Vec<usize>> {
        let local = self.solver.reconstruct(self.taken)?;
        Ok(local
            .interval_ids
            .iter()
            .map(|&id| self.sub.global_ids[id])
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Merged {
    pub take_counts: Vec<usize>,
    pub profits: Vec<u64>,
}

/// Pops up to `k` profits across all streams in non-increasing order.
/// Equal heads go to the lower stream index.
pub fn merge_profits(streams: &mut [ProfitStream], k: usize) -> Result<Merged> {
    let mut heap: BinaryHeap<(u64, Reverse<usize>)> = streams
        .iter()
        .enumerate()
        .filter_map(|(i, s)| s.peek().map(|p| (p, Reverse(i))))
        .collect();
    let mut profits = Vec::with_capacity(k);
    while profits.len() < k {
        let Some((_, Reverse(i))) = heap.pop() else {
            break;
        };
        let profit = streams[i].pop()?.expect("heap entries have a head");
        profits.push(profit);
        if let Some(next) = streams[i].peek() {
            heap.push((next, Reverse(i)));
        }
    }
    Ok(Merged {
        take_counts: streams.iter().map(ProfitStream::taken).collect(),
        profits,
    })
}

/// Sorted merge of plain profit sequences; reference for [`merge_profits`].
pub fn merge_sorted(sequences: &[Vec<u64>]) -> Vec<u64> {
    let mut all: Vec<u64> = sequences.iter().flatten().copied().collect();
    all.sort_unstable_by(|a, b| b.cmp(a));
    all
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub skeleton: Vec<usize>,
    /// Profits consumed from each group's stream.
    pub take_counts: Vec<usize>,
    pub merged_profits: Vec<u64>,
    pub cover: Cover,
    pub value: u64,
    /// Set when `floor(eps k) = 0` and the exact solver was used instead.
    pub fallback: bool,
}

pub fn solve_approx(instance: &Instance, params: &ApproxParams) -> Result<ApproxResult> {
    if params.extra() == 0 {
        let cover = dp::solve(instance, params.k)?;
        return Ok(ApproxResult {
            skeleton: Vec::new(),
            take_counts: Vec::new(),
            merged_profits: Vec::new(),
            value: cover.value,
            cover,
            fallback: true,
        });
    }
    let Partition { skeleton, groups } = partition(instance, params)?;
    let mut streams = groups
        .into_iter()
        .map(ProfitStream::new)
        .collect::<Result<Vec<_>>>()?;
    let merged = merge_profits(&mut streams, params.k)?;

    let skeleton_value = instance.measure(&skeleton)?;
    let value = skeleton_value + merged.profits.iter().sum::<u64>();
    let mut ids = skeleton.clone();
    for s in &streams {
        ids.extend(s.cover()?);
    }
    let cover = instance.cover(ids)?;
    if cover.value != value {
        return Err(CoverError::InvariantBreach(format!(
            "approximate cover measures {} but skeleton + profits = {value}",
            cover.value
        )));
    }
    Ok(ApproxResult {
        skeleton,
        take_counts: merged.take_counts,
        merged_profits: merged.profits,
        cover,
        value,
        fallback: false,
    })
}
