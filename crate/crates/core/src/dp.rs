//! Exact optimal k-cover by dynamic programming over intervals sorted by
//! left endpoint.
//!
//! For the interval at position `i` and budget `t`:
//!
//! * `dp_in[i][t]` is the best coverage by at most `t` intervals among
//!   positions `0..=i` that includes interval `i`;
//! * `dp[i][t]` is the best coverage by at most `t` intervals among
//!   positions `0..=i`.
//!
//! With `L` the leftmost earlier interval intersecting `i` (if any):
//!
//! ```text
//! dp_in[i][t] = max( dp_in[L][t-1] + |i \ L|          if L exists, t > 1
//!                    dp[before(L)][t-1] + |i| )        before(L) = L-1, or i-1 without L
//! dp[i][t]    = max( dp_in[i][t], dp[i-1][t] )
//! ```
//!
//! where `dp[-1][*] = 0`. Row `t` depends only on row `t - 1`, so the
//! solver keeps two rows and can be resumed one budget at a time.

use crate::error::{CoverError, Result};
use crate::model::{Cover, Instance};

/// Per-interval quantities computed in one left-to-right sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpPrecompute {
    /// Points covered by each interval.
    pub counts: Vec<u64>,
    /// Leftmost earlier interval intersecting this one (never itself).
    pub left_partner: Vec<Option<usize>>,
    /// Immediately preceding position.
    pub pred: Vec<Option<usize>>,
    /// Points of the interval strictly right of its left partner's `hi`;
    /// equals `counts` when there is no partner.
    pub residual: Vec<u64>,
}

fn require_normalized(instance: &Instance) -> Result<()> {
    if instance.is_normalized() {
        Ok(())
    } else {
        Err(CoverError::InvalidParameter(
            "instance must be normalized".into(),
        ))
    }
}

pub fn precompute(instance: &Instance) -> Result<DpPrecompute> {
    require_normalized(instance)?;
    let points = instance.points();
    let intervals = instance.intervals();
    let m = intervals.len();

    let mut pre = DpPrecompute {
        counts: Vec::with_capacity(m),
        left_partner: Vec::with_capacity(m),
        pred: Vec::with_capacity(m),
        residual: Vec::with_capacity(m),
    };
    // end[i]: index one past the last point <= hi_i
    let mut end = Vec::with_capacity(m);
    let (mut start_ptr, mut end_ptr, mut partner) = (0usize, 0usize, 0usize);
    for (i, iv) in intervals.iter().enumerate() {
        while start_ptr < points.len() && points[start_ptr] < iv.lo {
            start_ptr += 1;
        }
        end_ptr = end_ptr.max(start_ptr);
        while end_ptr < points.len() && points[end_ptr] <= iv.hi {
            end_ptr += 1;
        }
        end.push(end_ptr);
        pre.counts.push((end_ptr - start_ptr) as u64);

        while partner < i && intervals[partner].hi < iv.lo {
            partner += 1;
        }
        if partner < i {
            pre.left_partner.push(Some(partner));
            pre.residual.push((end_ptr - end[partner]) as u64);
        } else {
            pre.left_partner.push(None);
            pre.residual.push((end_ptr - start_ptr) as u64);
        }
        pre.pred.push(i.checked_sub(1));
    }
    Ok(pre)
}

const FROM_IN: u8 = 0b01;
const VIA_PARTNER: u8 = 0b10;

/// Resumable DP state. Each call to [`DpSolver::resume`] adds one unit of
/// budget in `O(m)` time.
#[derive(Debug, Clone)]
pub struct DpSolver {
    pre: DpPrecompute,
    ids: Vec<usize>,
    k_cur: usize,
    dp: Vec<u64>,
    dp_in: Vec<u64>,
    /// `choices[t - 1][i]` records which branches won at budget `t`.
    choices: Vec<Vec<u8>>,
    values: Vec<u64>,
}

impl DpSolver {
    pub fn new(instance: &Instance) -> Result<Self> {
        let pre = precompute(instance)?;
        let m = instance.num_intervals();
        Ok(Self {
            pre,
            ids: instance.ids(),
            k_cur: 0,
            dp: vec![0; m],
            dp_in: vec![0; m],
            choices: Vec::new(),
            values: vec![0],
        })
    }

    pub fn precomputed(&self) -> &DpPrecompute {
        &self.pre
    }

    /// Budget solved so far.
    pub fn k(&self) -> usize {
        self.k_cur
    }

    /// Optimal values for budgets `0..=k()`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self) -> u64 {
        self.values[self.k_cur]
    }

    /// Extends the tables by one budget row and returns `(k, opt_k)`.
    pub fn resume(&mut self) -> (usize, u64) {
        let t = self.k_cur + 1;
        let m = self.ids.len();
        let mut dp = vec![0u64; m];
        let mut dp_in = vec![0u64; m];
        let mut choice = vec![0u8; m];
        for i in 0..m {
            let partner = self.pre.left_partner[i];
            let before = match partner {
                Some(l) => l.checked_sub(1),
                None => i.checked_sub(1),
            };
            let fresh = before.map_or(0, |b| self.dp[b]) + self.pre.counts[i];
            let extend = match partner {
                Some(l) if t > 1 => Some(self.dp_in[l] + self.pre.residual[i]),
                _ => None,
            };
            match extend {
                Some(v) if v >= fresh => {
                    dp_in[i] = v;
                    choice[i] |= VIA_PARTNER;
                }
                _ => dp_in[i] = fresh,
            }
            let skip = if i > 0 { dp[i - 1] } else { 0 };
            if dp_in[i] >= skip {
                dp[i] = dp_in[i];
                choice[i] |= FROM_IN;
            } else {
                dp[i] = skip;
            }
        }
        let value = dp.last().copied().unwrap_or(0);
        self.dp = dp;
        self.dp_in = dp_in;
        self.choices.push(choice);
        self.values.push(value);
        self.k_cur = t;
        (t, value)
    }

    /// Resumes until the budget reaches `k`.
    pub fn advance_to(&mut self, k: usize) -> u64 {
        while self.k_cur < k {
            self.resume();
        }
        self.values[k]
    }

    /// Optimal cover for a budget `t <= k()`, as original interval ids.
    pub fn reconstruct(&self, t: usize) -> Result<Cover> {
        if t > self.k_cur {
            return Err(CoverError::InvalidParameter(format!(
                "budget {t} not solved yet (solved up to {})",
                self.k_cur
            )));
        }
        let positions = self.reconstruct_positions(t);
        let mut interval_ids: Vec<usize> = positions.iter().map(|&p| self.ids[p]).collect();
        interval_ids.sort_unstable();
        Ok(Cover {
            interval_ids,
            value: self.values[t],
        })
    }

    fn reconstruct_positions(&self, t: usize) -> Vec<usize> {
        enum State {
            Best(Option<usize>, usize),
            With(usize, usize),
        }
        let mut out = Vec::new();
        let mut state = State::Best(self.ids.len().checked_sub(1), t);
        loop {
            state = match state {
                State::Best(None, _) | State::Best(_, 0) => break,
                State::Best(Some(i), t) => {
                    if self.choices[t - 1][i] & FROM_IN != 0 {
                        State::With(i, t)
                    } else {
                        State::Best(i.checked_sub(1), t)
                    }
                }
                State::With(i, t) => {
                    out.push(i);
                    let partner = self.pre.left_partner[i];
                    if self.choices[t - 1][i] & VIA_PARTNER != 0 {
                        State::With(partner.expect("partner branch needs a partner"), t - 1)
                    } else {
                        let before = match partner {
                            Some(l) => l.checked_sub(1),
                            None => i.checked_sub(1),
                        };
                        State::Best(before, t - 1)
                    }
                }
            };
        }
        out.reverse();
        out
    }
}

/// Optimal cover by at most `k` intervals of a normalized instance.
pub fn solve(instance: &Instance, k: usize) -> Result<Cover> {
    let mut solver = DpSolver::new(instance)?;
    solver.advance_to(k);
    solver.reconstruct(k)
}

/// Marginal profits `opt_t - opt_{t-1}` for `t = 1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProfitSequence {
    pub profits: Vec<u64>,
}

impl ProfitSequence {
    /// Prefix sums: `opt_1, opt_2, ...`.
    pub fn opt_values(&self) -> Vec<u64> {
        self.profits
            .iter()
            .scan(0u64, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.profits.windows(2).all(|w| w[0] >= w[1])
    }
}

/// Profit sequence up to `min(k_max, m)` via repeated resumption.
///
/// A rise in the sequence is reported as [`CoverError::InvariantBreach`]:
/// optimal interval covers always have diminishing returns.
pub fn profit_sequence(instance: &Instance, k_max: usize) -> Result<ProfitSequence> {
    let mut solver = DpSolver::new(instance)?;
    let len = k_max.min(instance.num_intervals());
    let mut seq = ProfitSequence {
        profits: Vec::with_capacity(len),
    };
    let mut prev = 0;
    for _ in 0..len {
        let (_, v) = solver.resume();
        seq.profits.push(v - prev);
        prev = v;
    }
    if let Some(t) = seq.profits.windows(2).position(|w| w[0] < w[1]) {
        return Err(CoverError::InvariantBreach(format!(
            "profit rose from {} to {} at k={}",
            seq.profits[t],
            seq.profits[t + 1],
            t + 2
        )));
    }
    Ok(seq)
}
