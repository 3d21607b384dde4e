//! The greedy permutation of intervals and its competitive ratio against
//! exact optima.

use num_rational::Ratio;

use crate::dp::DpSolver;
use crate::error::{CoverError, Result};
use crate::model::Instance;

/// Greedy order `g_1, g_2, ...` with prefix coverage and per-step gains.
/// `prefix_values[i]` is the coverage of the first `i + 1` intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyResult {
    pub permutation: Vec<usize>,
    pub prefix_values: Vec<u64>,
    pub gains: Vec<u64>,
}

impl GreedyResult {
    /// Coverage of the first `k` intervals; saturates at the full permutation.
    pub fn prefix_value(&self, k: usize) -> u64 {
        match k.min(self.prefix_values.len()) {
            0 => 0,
            k => self.prefix_values[k - 1],
        }
    }
}

/// Repeatedly takes the interval covering the most uncovered points,
/// preferring the leftmost one on ties. Every interval is emitted, so the
/// tail may consist of zero-gain steps.
pub fn greedy_permutation(instance: &Instance) -> GreedyResult {
    let m = instance.num_intervals();
    let ranges: Vec<_> = (0..m).map(|pos| instance.point_range(pos)).collect();
    let mut covered = vec![false; instance.num_points()];
    let mut used = vec![false; m];
    // uncovered_prefix[j] = uncovered points among points[..j]
    let mut uncovered_prefix = vec![0u64; instance.num_points() + 1];

    let mut result = GreedyResult {
        permutation: Vec::with_capacity(m),
        prefix_values: Vec::with_capacity(m),
        gains: Vec::with_capacity(m),
    };
    let mut total = 0u64;
    for _ in 0..m {
        for (j, &c) in covered.iter().enumerate() {
            uncovered_prefix[j + 1] = uncovered_prefix[j] + u64::from(!c);
        }
        let mut best: Option<(usize, u64)> = None;
        for pos in (0..m).filter(|&p| !used[p]) {
            let r = &ranges[pos];
            let gain = uncovered_prefix[r.end] - uncovered_prefix[r.start];
            // Positions are in lo order, so strict > keeps the leftmost.
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((pos, gain));
            }
        }
        let (pos, gain) = best.expect("an unused interval remains");
        used[pos] = true;
        covered[ranges[pos].clone()]
            .iter_mut()
            .for_each(|c| *c = true);
        total += gain;
        result.permutation.push(instance.intervals()[pos].id);
        result.gains.push(gain);
        result.prefix_values.push(total);
    }
    result
}

/// Exact per-`k` ratios of greedy prefix coverage to the optimal `k`-cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    /// Entry `k - 1` holds `cr(greedy, k)`; `k` with `opt_k = 0` report 1.
    pub per_k_ratio: Vec<Ratio<u64>>,
    pub greedy_values: Vec<u64>,
    pub opt_values: Vec<u64>,
    /// Minimum over `k` with `opt_k > 0`, or 1 when there is none.
    pub min_ratio: Ratio<u64>,
}

pub fn ratio_report(instance: &Instance, k_max: usize) -> Result<RatioReport> {
    let m = instance.num_intervals();
    if k_max == 0 || k_max > m {
        return Err(CoverError::InvalidParameter(format!(
            "k_max must be in 1..={m}, got {k_max}"
        )));
    }
    let greedy = greedy_permutation(instance);
    let mut solver = DpSolver::new(instance)?;
    let mut report = RatioReport {
        per_k_ratio: Vec::with_capacity(k_max),
        greedy_values: Vec::with_capacity(k_max),
        opt_values: Vec::with_capacity(k_max),
        min_ratio: Ratio::from_integer(1),
    };
    for k in 1..=k_max {
        let (_, opt) = solver.resume();
        let g = greedy.prefix_value(k);
        let ratio = if opt == 0 {
            Ratio::from_integer(1)
        } else {
            Ratio::new(g, opt)
        };
        if opt > 0 && ratio < report.min_ratio {
            report.min_ratio = ratio;
        }
        report.per_k_ratio.push(ratio);
        report.greedy_values.push(g);
        report.opt_values.push(opt);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_tight_example;
    use crate::model::{intervals_from_spans, normalize};

    #[test]
    fn tight_example_trace() {
        let t = gen_tight_example(10).unwrap();
        let g = greedy_permutation(&t);
        assert_eq!(g.permutation, vec![2, 0, 1]);
        assert_eq!(g.prefix_values, vec![11, 16, 20]);
        assert_eq!(g.gains, vec![11, 5, 4]);
        for k in 1..=3 {
            assert_eq!(t.measure(&g.permutation[..k]).unwrap(), g.prefix_value(k));
        }
    }

    #[test]
    fn ties_go_left() {
        let i = normalize(
            (1..=10).collect(),
            intervals_from_spans(&[(6, 10), (1, 5)]).unwrap(),
        )
        .unwrap();
        let g = greedy_permutation(&i);
        assert_eq!(g.permutation, vec![1, 0]);
    }

    #[test]
    fn zero_gain_interval() {
        let i = normalize(vec![100], intervals_from_spans(&[(0, 1)]).unwrap()).unwrap();
        let g = greedy_permutation(&i);
        assert_eq!(g.gains, vec![0]);
        assert_eq!(g.prefix_value(0), 0);
        assert_eq!(g.prefix_value(5), 0);
    }

    #[test]
    fn empty_instance() {
        let i = normalize(vec![1, 2], vec![]).unwrap();
        let g = greedy_permutation(&i);
        assert!(g.permutation.is_empty());
        assert!(ratio_report(&i, 1).is_err());
    }

    #[test]
    fn tight_ratio_report() {
        let t = gen_tight_example(10).unwrap();
        let r = ratio_report(&t, 3).unwrap();
        assert_eq!(r.opt_values, vec![11, 20, 20]);
        assert_eq!(
            r.per_k_ratio,
            vec![
                Ratio::from_integer(1),
                Ratio::new(4, 5),
                Ratio::from_integer(1)
            ]
        );
        assert_eq!(r.min_ratio, Ratio::new(4, 5));
        assert!(ratio_report(&t, 4).is_err());
        assert!(ratio_report(&t, 0).is_err());
    }

    #[test]
    fn single_interval_ratio_is_one() {
        let i = normalize(vec![1, 2, 3], intervals_from_spans(&[(1, 2)]).unwrap()).unwrap();
        let r = ratio_report(&i, 1).unwrap();
        assert_eq!(r.per_k_ratio, vec![Ratio::from_integer(1)]);
    }

    #[test]
    fn no_points_ratio_is_one() {
        let i = normalize(vec![], intervals_from_spans(&[(1, 2), (4, 5)]).unwrap()).unwrap();
        let r = ratio_report(&i, 2).unwrap();
        assert_eq!(r.min_ratio, Ratio::from_integer(1));
    }
}
