//! Browser demo. Each export returns a JSON document that `www/index.html`
//! draws on a canvas. The report builders are plain Rust so they can be
//! tested natively; the `#[wasm_bindgen]` functions only serialize them.

use intcover::approx::{solve_approx, ApproxParams};
use intcover::dp::DpSolver;
use intcover::generate::{gen_random, gen_random_chain, gen_tight_example};
use intcover::greedy::greedy_permutation;
use intcover::set_system::{
    brute_opt, build_counterexample, check_diminishing_returns, profits_from_values,
    CounterexampleSpec,
};
use intcover::Instance;
use num_rational::Ratio;
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize, PartialEq)]
pub struct Span {
    pub id: usize,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Debug, Serialize, PartialEq)]
pub struct RatioRow {
    pub k: usize,
    pub greedy: u64,
    pub opt: u64,
    pub num: u64,
    pub den: u64,
}

/// Greedy prefixes against exact optima for every budget.
#[derive(Debug, Serialize)]
pub struct GreedyReport {
    pub points: Vec<i64>,
    pub intervals: Vec<Span>,
    pub greedy_order: Vec<usize>,
    pub rows: Vec<RatioRow>,
    pub opt_covers: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize)]
pub struct CoverReport {
    pub points: Vec<i64>,
    pub intervals: Vec<Span>,
    pub k: usize,
    pub greedy: Vec<usize>,
    pub greedy_value: u64,
    pub exact: Vec<usize>,
    pub exact_value: u64,
    pub approx: Vec<usize>,
    pub skeleton: Vec<usize>,
    pub approx_value: u64,
    pub approx_budget: usize,
    pub fallback: bool,
}

#[derive(Debug, Serialize)]
pub struct ProfitReport {
    pub n: usize,
    pub set_names: Vec<String>,
    pub set_sizes: Vec<usize>,
    pub opt: Vec<u64>,
    pub profits: Vec<u64>,
    pub witnesses: Vec<Vec<String>>,
    /// `k` at which the profit sequence first rises.
    pub violation_k: Option<usize>,
}

fn spans(instance: &Instance) -> Vec<Span> {
    instance
        .intervals()
        .iter()
        .map(|iv| Span {
            id: iv.id,
            lo: iv.lo,
            hi: iv.hi,
        })
        .collect()
}

pub fn greedy_report(instance: &Instance) -> Result<GreedyReport, String> {
    let greedy = greedy_permutation(instance);
    let mut solver = DpSolver::new(instance).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut opt_covers = Vec::new();
    for k in 1..=instance.num_intervals() {
        let (_, opt) = solver.resume();
        let g = greedy.prefix_value(k);
        let r = if opt == 0 {
            Ratio::from_integer(1)
        } else {
            Ratio::new(g, opt)
        };
        rows.push(RatioRow {
            k,
            greedy: g,
            opt,
            num: *r.numer(),
            den: *r.denom(),
        });
        opt_covers.push(
            solver
                .reconstruct(k)
                .map_err(|e| e.to_string())?
                .interval_ids,
        );
    }
    Ok(GreedyReport {
        points: instance.points().to_vec(),
        intervals: spans(instance),
        greedy_order: greedy.permutation,
        rows,
        opt_covers,
    })
}

pub fn tight_report(s: u64) -> Result<GreedyReport, String> {
    greedy_report(&gen_tight_example(s).map_err(|e| e.to_string())?)
}

#[allow(clippy::too_many_arguments)]
pub fn cover_report(
    n: usize,
    m: usize,
    width: i64,
    chain: bool,
    seed: u64,
    k: usize,
    eps_num: u64,
    eps_den: u64,
) -> Result<CoverReport, String> {
    if eps_den == 0 {
        return Err("eps denominator must be positive".into());
    }
    let instance = if chain {
        gen_random_chain(n, m, 0..=width, (width / m.max(1) as i64).max(1) * 3, seed)
    } else {
        gen_random(n, m, 0..=width, seed)
    }
    .map_err(|e| e.to_string())?;
    let params = ApproxParams::new(k, Ratio::new(eps_num, eps_den)).map_err(|e| e.to_string())?;
    let greedy = greedy_permutation(&instance);
    let take = k.min(greedy.permutation.len());
    let exact = intcover::solve(&instance, k).map_err(|e| e.to_string())?;
    let approx = solve_approx(&instance, &params).map_err(|e| e.to_string())?;
    Ok(CoverReport {
        points: instance.points().to_vec(),
        intervals: spans(&instance),
        k,
        greedy: greedy.permutation[..take].to_vec(),
        greedy_value: greedy.prefix_value(take),
        exact: exact.interval_ids,
        exact_value: exact.value,
        approx: approx.cover.interval_ids,
        skeleton: approx.skeleton,
        approx_value: approx.value,
        approx_budget: k + params.extra(),
        fallback: approx.fallback,
    })
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>, String> {
    let bad = || format!("`{s}` is not a fraction p/q");
    let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let q: u64 = q.trim().parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(p, q))
}

pub fn profit_report(u: u64, alpha: &str, beta: &str, gamma: &str) -> Result<ProfitReport, String> {
    let spec = CounterexampleSpec {
        u,
        alpha: parse_ratio(alpha)?,
        beta: parse_ratio(beta)?,
        gamma: parse_ratio(gamma)?,
    };
    let sys = build_counterexample(&spec).map_err(|e| e.to_string())?;
    let k_max = (u as usize + 2).min(sys.sets().len());
    let mut opt = Vec::new();
    let mut witnesses = Vec::new();
    for k in 1..=k_max {
        let r = brute_opt(&sys, k).map_err(|e| e.to_string())?;
        opt.push(r.value);
        witnesses.push(sys.names(&r.witness));
    }
    let profits = profits_from_values(&opt);
    Ok(ProfitReport {
        n: sys.ground_size(),
        set_names: sys.sets().iter().map(|s| s.name.clone()).collect(),
        set_sizes: sys.sets().iter().map(|s| s.elements.len()).collect(),
        violation_k: check_diminishing_returns(&profits).map(|v| v.k()),
        opt,
        profits,
        witnesses,
    })
}

fn to_json<T: Serialize>(report: Result<T, String>) -> Result<String, JsError> {
    let report = report.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&report).map_err(|e| JsError::new(&e.to_string()))
}

/// Greedy against optimal covers on the three-interval tight example.
#[wasm_bindgen]
pub fn tight_example(s: u32) -> Result<String, JsError> {
    to_json(tight_report(u64::from(s)))
}

/// Greedy, exact and approximate covers of a seeded random instance.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn random_covers(
    n: u32,
    m: u32,
    width: i32,
    chain: bool,
    seed: u32,
    k: u32,
    eps_num: u32,
    eps_den: u32,
) -> Result<String, JsError> {
    to_json(cover_report(
        n as usize,
        m as usize,
        i64::from(width),
        chain,
        u64::from(seed),
        k as usize,
        u64::from(eps_num),
        u64::from(eps_den),
    ))
}

/// Optimal values and marginal profits of the B/C/D set system.
#[wasm_bindgen]
pub fn counterexample(u: u32, alpha: &str, beta: &str, gamma: &str) -> Result<String, JsError> {
    to_json(profit_report(u64::from(u), alpha, beta, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tight_rows() {
        let r = tight_report(10).unwrap();
        assert_eq!(r.greedy_order, vec![2, 0, 1]);
        let k2 = &r.rows[1];
        assert_eq!((k2.greedy, k2.opt, k2.num, k2.den), (16, 20, 4, 5));
        assert_eq!(r.opt_covers[1], vec![0, 1]);
        assert!(tight_report(3).is_err());
    }

    #[test]
    fn covers_respect_guarantees() {
        for seed in 0..20 {
            let r = cover_report(60, 25, 120, seed % 2 == 0, seed, 4, 1, 2).unwrap();
            assert!(r.approx_value >= r.exact_value);
            assert!(r.exact_value >= r.greedy_value);
            assert!(4 * r.greedy_value >= 3 * r.exact_value);
            assert!(r.approx.len() <= r.approx_budget);
        }
        assert!(cover_report(5, 5, 10, false, 0, 2, 1, 0).is_err());
        assert!(cover_report(5, 5, 10, false, 0, 0, 1, 2).is_err());
    }

    #[test]
    fn preset_profits() {
        let r = profit_report(2, "3/5", "3/4", "19/20").unwrap();
        assert_eq!(r.n, 80);
        assert_eq!(r.opt, vec![24, 48, 60, 76]);
        assert_eq!(r.profits, vec![24, 24, 12, 16]);
        assert_eq!(r.violation_k, Some(4));
        assert_eq!(r.witnesses[3], vec!["D1", "D2", "D3", "D4"]);
        assert!(profit_report(2, "3/5", "3/4", "4/5").is_err());
        assert!(profit_report(2, "0.6", "3/4", "19/20").is_err());
    }

    #[test]
    fn reports_serialize() {
        let json = serde_json::to_string(&tight_report(4).unwrap()).unwrap();
        assert!(json.contains("\"greedy_order\""));
    }
}
