//! General set systems: exhaustive optimal k-cover, the generic greedy,
//! and an exact construction whose optimal covers lose diminishing returns.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{CoverError, Result};
use crate::model::Instance;

/// Largest family [`brute_opt`] will enumerate.
pub const ENUMERATION_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSet {
    pub name: String,
    pub elements: Vec<usize>,
}

/// Ground set `0..n` and a family of named subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    n: usize,
    sets: Vec<NamedSet>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn of(n: usize, elements: &[usize]) -> Self {
        let mut b = Self::new(n);
        for &e in elements {
            b.0[e / 64] |= 1 << (e % 64);
        }
        b
    }

    fn union_with(&mut self, other: &Bits) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a |= b);
    }

    fn count(&self) -> u64 {
        self.0.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    fn count_new(&self, other: &Bits) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| u64::from((b & !a).count_ones()))
            .sum()
    }
}

impl SetSystem {
    pub fn new(n: usize, sets: Vec<NamedSet>) -> Result<Self> {
        for set in &sets {
            let mut seen = Bits::new(n);
            for &e in &set.elements {
                if e >= n {
                    return Err(CoverError::InvalidParameter(format!(
                        "set {} has element {e} outside 0..{n}",
                        set.name
                    )));
                }
                if seen.0[e / 64] & (1 << (e % 64)) != 0 {
                    return Err(CoverError::InvalidParameter(format!(
                        "set {} repeats element {e}",
                        set.name
                    )));
                }
                seen.0[e / 64] |= 1 << (e % 64);
            }
        }
        Ok(Self { n, sets })
    }

    /// One element per point (multiplicity kept) and one set per interval,
    /// named `I<id>` and listed in sorted position order.
    pub fn from_instance(instance: &Instance) -> Self {
        let sets = instance
            .intervals()
            .iter()
            .enumerate()
            .map(|(pos, iv)| NamedSet {
                name: format!("I{}", iv.id),
                elements: instance.point_range(pos).collect(),
            })
            .collect();
        Self {
            n: instance.num_points(),
            sets,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[NamedSet] {
        &self.sets
    }

    pub fn names(&self, indices: &[usize]) -> Vec<String> {
        indices.iter().map(|&i| self.sets[i].name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.sets.iter().position(|s| s.name == name)
    }

    /// Size of the union of the sets at the given indices.
    pub fn coverage(&self, indices: &[usize]) -> u64 {
        let mut acc = Bits::new(self.n);
        for &i in indices {
            acc.union_with(&Bits::of(self.n, &self.sets[i].elements));
        }
        acc.count()
    }

    fn bitsets(&self) -> Vec<Bits> {
        self.sets
            .iter()
            .map(|s| Bits::of(self.n, &s.elements))
            .collect()
    }
}

/// A chosen family of sets, by index into [`SetSystem::sets`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub indices: Vec<usize>,
    pub value: u64,
}

/// Standard greedy: `k` rounds of taking the set with the most new
/// elements, first in family order on ties.
pub fn generic_greedy(system: &SetSystem, k: usize) -> Selection {
    let bits = system.bitsets();
    let mut covered = Bits::new(system.n);
    let mut used = vec![false; bits.len()];
    let mut indices = Vec::new();
    for _ in 0..k.min(bits.len()) {
        let mut best: Option<(usize, u64)> = None;
        for (i, b) in bits.iter().enumerate().filter(|(i, _)| !used[*i]) {
            let gain = covered.count_new(b);
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((i, gain));
            }
        }
        let (i, _) = best.expect("an unused set remains");
        used[i] = true;
        covered.union_with(&bits[i]);
        indices.push(i);
    }
    Selection {
        indices,
        value: covered.count(),
    }
}

/// Exhaustive best `k`-subset (all sets when `k` exceeds the family).
/// The witness is the lexicographically first maximizer; `maximizers`
/// counts how many subsets reach the optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteResult {
    pub value: u64,
    pub witness: Vec<usize>,
    pub maximizers: u64,
}

pub fn brute_opt(system: &SetSystem, k: usize) -> Result<BruteResult> {
    let s = system.sets.len();
    if s > ENUMERATION_CAP {
        return Err(CoverError::EnumerationCap {
            sets: s,
            cap: ENUMERATION_CAP,
        });
    }
    let k = k.min(s);
    let bits = system.bitsets();
    let mut best = BruteResult {
        value: 0,
        witness: (0..k).collect(),
        maximizers: 0,
    };
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        let mut acc = Bits::new(system.n);
        for &i in &combo {
            acc.union_with(&bits[i]);
        }
        let v = acc.count();
        if v > best.value || best.maximizers == 0 {
            best = BruteResult {
                value: v,
                witness: combo.clone(),
                maximizers: 1,
            };
        } else if v == best.value {
            best.maximizers += 1;
        }
        // next combination in lexicographic order
        let Some(pos) = (0..k).rev().find(|&p| combo[p] < s - k + p) else {
            break;
        };
        combo[pos] += 1;
        for p in pos + 1..k {
            combo[p] = combo[p - 1] + 1;
        }
    }
    Ok(best)
}

/// Brute-force optimal values `opt_1..=opt_k_max`.
pub fn brute_opt_values(system: &SetSystem, k_max: usize) -> Result<Vec<u64>> {
    (1..=k_max)
        .map(|k| brute_opt(system, k).map(|r| r.value))
        .collect()
}

/// `1 - (1 - 1/k)^k`, the greedy guarantee for budget `k`.
pub fn greedy_guarantee(k: usize) -> Ratio<BigUint> {
    if k == 0 {
        return Ratio::one();
    }
    let kk = BigUint::from(k).pow(k as u32);
    let rest = BigUint::from(k - 1).pow(k as u32);
    Ratio::new(&kk - rest, kk)
}

/// Exact check of `greedy >= (1 - (1 - 1/k)^k) * opt`.
pub fn meets_greedy_guarantee(greedy: u64, opt: u64, k: usize) -> bool {
    Ratio::from_integer(BigUint::from(greedy)) >= greedy_guarantee(k) * BigUint::from(opt)
}

/// A rise `profits[k-2] < profits[k-1]` in a profit sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    /// 1-based index `i` of the smaller profit; the rise happens at `k = i + 1`.
    pub index: usize,
    pub before: u64,
    pub after: u64,
}

impl Violation {
    pub fn k(&self) -> usize {
        self.index + 1
    }
}

pub fn check_diminishing_returns(profits: &[u64]) -> Option<Violation> {
    profits
        .windows(2)
        .position(|w| w[0] < w[1])
        .map(|i| Violation {
            index: i + 1,
            before: profits[i],
            after: profits[i + 1],
        })
}

pub fn profits_from_values(values: &[u64]) -> Vec<u64> {
    let mut prev = 0;
    values
        .iter()
        .map(|&v| {
            let p = v - prev;
            prev = v;
            p
        })
        .collect()
}

/// Parameters of the B/C/D family: `u` B-sets of total measure `alpha`,
/// `u + 1` C-sets of total `beta` and `u + 2` D-sets of total `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterexampleSpec {
    pub u: u64,
    pub alpha: Ratio<u64>,
    pub beta: Ratio<u64>,
    pub gamma: Ratio<u64>,
}

impl CounterexampleSpec {
    /// `u = 2`, `alpha = 3/5`, `beta = 3/4`, `gamma = 19/20`; realized on 80 elements.
    pub fn preset_u2() -> Self {
        Self {
            u: 2,
            alpha: Ratio::new(3, 5),
            beta: Ratio::new(3, 4),
            gamma: Ratio::new(19, 20),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (u, a, b, g) = (self.u, self.alpha, self.beta, self.gamma);
        if u < 2 {
            return Err(CoverError::Constraint("u ≥ 2"));
        }
        let zero = Ratio::zero();
        let one = Ratio::one();
        if !(zero < a && a < b && b < g && g < one) {
            return Err(CoverError::Constraint("0 < α < β < γ < 1"));
        }
        if b - a >= g - b {
            return Err(CoverError::Constraint("β − α < γ − β"));
        }
        if g / (u + 2) >= b / (u + 1) {
            return Err(CoverError::Constraint("γ/(u+2) < β/(u+1)"));
        }
        if b / (u + 1) >= a / u {
            return Err(CoverError::Constraint("β/(u+1) < α/u"));
        }
        Ok(())
    }

    /// Smallest ground-set size for which every stratum of the
    /// construction has an integral size.
    pub fn ground_size(&self) -> u64 {
        let u = self.u;
        let quotas = [
            self.alpha / (u * (u + 1) * (u + 2)),
            (self.beta - self.alpha) / ((u + 1) * (u + 2)),
            (self.gamma - self.beta) / (u + 2),
        ];
        quotas.iter().fold(1, |acc, q| acc.lcm(q.denom()))
    }
}

/// Builds the B/C/D system deterministically.
///
/// `B_i` are consecutive blocks covering `alpha n` elements. Each B-block
/// is dealt round-robin to `C_1..C_{u+1}`, then the next `(beta - alpha) n`
/// elements are dealt to the C-sets as well. Every stratum `B_i ∩ C_j`,
/// every `C_j \ ∪B`, and the `(gamma - beta) n` elements after `beta n` are
/// each dealt round-robin to `D_1..D_{u+2}`.
pub fn build_counterexample(spec: &CounterexampleSpec) -> Result<SetSystem> {
    spec.validate()?;
    let n = spec.ground_size();
    let u = spec.u as usize;
    let scaled = |r: Ratio<u64>| (r * n).to_integer() as usize;
    let (a_n, b_n, g_n) = (scaled(spec.alpha), scaled(spec.beta), scaled(spec.gamma));
    let block = a_n / u;

    let mut b_sets = vec![Vec::new(); u];
    let mut c_sets = vec![Vec::new(); u + 1];
    let mut d_sets = vec![Vec::new(); u + 2];
    // dealing counters for each (B_i ∩ C_j) stratum and each C_j \ ∪B stratum
    let mut bc_deal = vec![vec![0usize; u + 1]; u];
    let mut c_only_deal = vec![0usize; u + 1];

    for e in 0..a_n {
        let (i, off) = (e / block, e % block);
        let j = off % (u + 1);
        b_sets[i].push(e);
        c_sets[j].push(e);
        d_sets[bc_deal[i][j] % (u + 2)].push(e);
        bc_deal[i][j] += 1;
    }
    for e in a_n..b_n {
        let j = (e - a_n) % (u + 1);
        c_sets[j].push(e);
        d_sets[c_only_deal[j] % (u + 2)].push(e);
        c_only_deal[j] += 1;
    }
    for e in b_n..g_n {
        d_sets[(e - b_n) % (u + 2)].push(e);
    }

    let named = |prefix: &str, sets: Vec<Vec<usize>>| {
        sets.into_iter()
            .enumerate()
            .map(|(i, elements)| NamedSet {
                name: format!("{prefix}{}", i + 1),
                elements,
            })
            .collect::<Vec<_>>()
    };
    let mut sets = named("B", b_sets);
    sets.extend(named("C", c_sets));
    sets.extend(named("D", d_sets));
    SetSystem::new(n as usize, sets)
}

fn parse_err(line: usize, reason: impl Into<String>) -> CoverError {
    CoverError::Parse {
        line,
        reason: reason.into(),
    }
}

/// Parses `elements: n` followed by `set: NAME id id ...` lines.
pub fn parse_set_system(text: &str) -> Result<SetSystem> {
    let mut n: Option<usize> = None;
    let mut sets = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, format!("expected `key: values`, got `{line}`")))?;
        match key.trim() {
            "elements" => {
                if n.is_some() {
                    return Err(parse_err(lineno, "duplicate `elements:` line"));
                }
                let v = rest.trim();
                n = Some(
                    v.parse()
                        .map_err(|_| parse_err(lineno, format!("invalid size `{v}`")))?,
                );
            }
            "set" => {
                let size = n.ok_or_else(|| parse_err(lineno, "`set:` before `elements:`"))?;
                let mut toks = rest.split_whitespace();
                let name = toks
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing set name"))?;
                let elements = toks
                    .map(|t| {
                        let e: usize = t
                            .parse()
                            .map_err(|_| parse_err(lineno, format!("invalid element `{t}`")))?;
                        if e >= size {
                            return Err(parse_err(
                                lineno,
                                format!("element {e} outside 0..{size}"),
                            ));
                        }
                        Ok(e)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut sorted = elements.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(parse_err(lineno, format!("set {name} repeats an element")));
                }
                sets.push(NamedSet {
                    name: name.to_string(),
                    elements,
                });
            }
            other => return Err(parse_err(lineno, format!("unknown key `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "missing `elements:` line"))?;
    SetSystem::new(n, sets)
}

pub fn format_set_system(system: &SetSystem) -> String {
    let mut out = format!("elements: {}\n", system.n);
    for set in &system.sets {
        write!(out, "set: {}", set.name).unwrap();
        for e in &set.elements {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    out
}
