//! Single-good sealed-bid auctions over exact rationals: the second-price
//! rule, outcome soundness, and exhaustive weak-dominance sweeps.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::error::{domain, Error, Result};

pub type Value = Rational64;

/// Parses `"3"`, `"3/2"`, or a decimal such as `"0.25"`.
pub fn parse_value(s: &str) -> Result<Value> {
    let s = s.trim();
    let bad = || domain(format!("invalid rational {s:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let whole: i64 = match int.trim_start_matches(['-', '+']) {
            "" => 0,
            digits => digits.parse().map_err(|_| bad())?,
        };
        let denom = 10i64.pow(frac.len() as u32);
        let numer = whole
            .checked_mul(denom)
            .and_then(|w| w.checked_add(frac.parse::<i64>().ok()?))
            .ok_or_else(bad)?;
        let v = Value::new(numer, denom);
        return Ok(if negative { -v } else { v });
    }
    s.parse::<Value>().map_err(|_| bad())
}

/// Parses a comma-separated list of rationals.
pub fn parse_values(list: &str) -> Result<Vec<Value>> {
    list.split(',').map(parse_value).collect()
}

fn non_negative(what: &str, xs: &[Value]) -> Result<()> {
    match xs.iter().position(|x| x.is_negative()) {
        Some(i) => Err(domain(format!("{what} {i} is negative ({})", xs[i]))),
        None => Ok(()),
    }
}

fn ser_value<S: Serializer>(v: &Value, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_values<S: Serializer>(vs: &[Value], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(vs.iter().map(|v| v.to_string()))
}

/// Private valuations, one per participant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Valuations(#[serde(serialize_with = "ser_values")] Vec<Value>);

impl Valuations {
    pub fn new(v: Vec<Value>) -> Result<Self> {
        if v.is_empty() {
            return Err(domain("at least one participant is required"));
        }
        non_negative("valuation", &v)?;
        Ok(Valuations(v))
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn participants(&self) -> usize {
        self.0.len()
    }

    pub fn max(&self) -> Value {
        *self.0.iter().max().expect("non-empty")
    }
}

/// Sealed bids, one per participant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Bids(#[serde(serialize_with = "ser_values")] Vec<Value>);

impl Bids {
    pub fn new(b: Vec<Value>) -> Result<Self> {
        if b.is_empty() {
            return Err(domain("at least one bid is required"));
        }
        non_negative("bid", &b)?;
        Ok(Bids(b))
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn participants(&self) -> usize {
        self.0.len()
    }

    /// Highest bid among everyone but `i` (zero when `i` bids alone).
    pub fn max_excluding(&self, i: usize) -> Value {
        self.0
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &b)| b)
            .max()
            .unwrap_or_else(Value::zero)
    }

    /// Lowest-index participant among the highest bidders.
    pub fn top_bidder(&self) -> usize {
        let best = *self.0.iter().max().expect("non-empty");
        self.0.iter().position(|&b| b == best).expect("max is present")
    }
}

impl fmt::Display for Bids {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

/// Allocation and payments. Constructed without validation so that faulty
/// mechanisms can be represented; see [`AuctionOutcome::violations`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuctionOutcome {
    pub allocation: Vec<bool>,
    #[serde(serialize_with = "ser_values")]
    pub payments: Vec<Value>,
}

/// A broken soundness invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SoundnessViolation {
    ShapeMismatch {
        bidders: usize,
        allocation: usize,
        payments: usize,
    },
    NoWinner,
    MultipleWinners {
        winners: Vec<usize>,
    },
    LoserPays {
        bidder: usize,
        #[serde(serialize_with = "ser_value")]
        amount: Value,
    },
    NegativePayment {
        bidder: usize,
        #[serde(serialize_with = "ser_value")]
        amount: Value,
    },
    Nondeterministic,
}

impl fmt::Display for SoundnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SoundnessViolation::ShapeMismatch {
                bidders,
                allocation,
                payments,
            } => write!(
                f,
                "{bidders} bidders but {allocation} allocations and {payments} payments"
            ),
            SoundnessViolation::NoWinner => f.write_str("the good is not allocated"),
            SoundnessViolation::MultipleWinners { winners } => write!(f, "several winners {winners:?}"),
            SoundnessViolation::LoserPays { bidder, amount } => write!(f, "losing bidder {bidder} pays {amount}"),
            SoundnessViolation::NegativePayment { bidder, amount } => {
                write!(f, "bidder {bidder} has negative payment {amount}")
            }
            SoundnessViolation::Nondeterministic => f.write_str("repeated runs disagree"),
        }
    }
}

impl AuctionOutcome {
    pub fn winners(&self) -> Vec<usize> {
        (0..self.allocation.len()).filter(|&i| self.allocation[i]).collect()
    }

    /// The unique winner, if there is exactly one.
    pub fn winner(&self) -> Option<usize> {
        match self.winners().as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }

    pub fn violations(&self, bidders: usize) -> Vec<SoundnessViolation> {
        let mut out = Vec::new();
        if self.allocation.len() != bidders || self.payments.len() != bidders {
            out.push(SoundnessViolation::ShapeMismatch {
                bidders,
                allocation: self.allocation.len(),
                payments: self.payments.len(),
            });
            return out;
        }
        match self.winners() {
            w if w.is_empty() => out.push(SoundnessViolation::NoWinner),
            w if w.len() > 1 => out.push(SoundnessViolation::MultipleWinners { winners: w }),
            _ => {}
        }
        for (i, (&won, &p)) in self.allocation.iter().zip(&self.payments).enumerate() {
            if !won && !p.is_zero() {
                out.push(SoundnessViolation::LoserPays { bidder: i, amount: p });
            }
            if p.is_negative() {
                out.push(SoundnessViolation::NegativePayment { bidder: i, amount: p });
            }
        }
        out
    }
}

/// `v·x - p`.
pub fn payoff(v: Value, won: bool, p: Value) -> Value {
    if won {
        v - p
    } else {
        -p
    }
}

/// Pricing rule; both award the good to the lowest-index highest bidder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuctionRule {
    /// Winner pays the highest competing bid.
    SecondPrice,
    /// Winner pays its own bid.
    FirstPrice,
}

impl FromStr for AuctionRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "second-price" | "spa" | "vickrey" => Ok(AuctionRule::SecondPrice),
            "first-price" | "fpa" => Ok(AuctionRule::FirstPrice),
            _ => Err(domain(format!("unknown auction rule {s:?}"))),
        }
    }
}

impl fmt::Display for AuctionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuctionRule::SecondPrice => "second-price",
            AuctionRule::FirstPrice => "first-price",
        })
    }
}

impl AuctionRule {
    pub fn run(self, b: &Bids) -> AuctionOutcome {
        let n = b.participants();
        let w = b.top_bidder();
        let price = match self {
            AuctionRule::SecondPrice => b.max_excluding(w),
            AuctionRule::FirstPrice => b.values()[w],
        };
        let mut payments = vec![Value::zero(); n];
        payments[w] = price;
        AuctionOutcome {
            allocation: (0..n).map(|i| i == w).collect(),
            payments,
        }
    }

    /// Bidder `i`'s payoff at value `v` when bidding `bid` against `others`
    /// (the remaining bids in participant order).
    fn payoff_at(self, i: usize, v: Value, bid: Value, others: &[Value]) -> (bool, Value) {
        let mut b = others.to_vec();
        b.insert(i, bid);
        let out = self.run(&Bids(b));
        (out.allocation[i], payoff(v, out.allocation[i], out.payments[i]))
    }
}

/// The second-price (Vickrey) auction.
pub fn run_spa(b: &Bids) -> AuctionOutcome {
    AuctionRule::SecondPrice.run(b)
}

/// Finite strictly ascending bid domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BidGrid(#[serde(serialize_with = "ser_values")] Vec<Value>);

impl BidGrid {
    pub fn new(points: Vec<Value>) -> Result<Self> {
        if points.is_empty() {
            return Err(domain("bid grid is empty"));
        }
        non_negative("grid point", &points)?;
        if let Some(w) = points.windows(2).find(|w| w[0] >= w[1]) {
            return Err(domain(format!(
                "bid grid is not strictly ascending at {} , {}",
                w[0], w[1]
            )));
        }
        Ok(BidGrid(points))
    }

    /// `start..=stop` in steps of `step`.
    pub fn range(start: Value, stop: Value, step: Value, budget: &Budget) -> Result<Self> {
        if !step.is_positive() {
            return Err(domain(format!("grid step must be positive, got {step}")));
        }
        if stop < start {
            return Err(domain(format!("grid stop {stop} is below start {start}")));
        }
        let count = ((stop - start) / step).floor().to_integer() as u128 + 1;
        Budget::check("grid points", Some(count), budget.sweep_cells)?;
        let points = (0..count as i64).map(|k| start + step * k).collect();
        BidGrid::new(points)
    }

    /// Parses `"start:stop:step"` or a comma-separated list.
    pub fn parse(s: &str, budget: &Budget) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [start, stop, step] => BidGrid::range(parse_value(start)?, parse_value(stop)?, parse_value(step)?, budget),
            [_] => BidGrid::new(parse_values(s)?),
            _ => Err(domain(format!("grid {s:?} is neither start:stop:step nor a list"))),
        }
    }

    pub fn points(&self) -> &[Value] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The grid with `v` inserted if absent.
    pub fn with_point(&self, v: Value) -> BidGrid {
        let mut pts = self.0.clone();
        if let Err(pos) = pts.binary_search(&v) {
            pts.insert(pos, v);
        }
        BidGrid(pts)
    }
}

/// A profitable deviation from truthful bidding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominanceCounterexample {
    pub bidder: usize,
    #[serde(serialize_with = "ser_value")]
    pub value: Value,
    /// The other bidders' bids, in participant order.
    #[serde(serialize_with = "ser_values")]
    pub others: Vec<Value>,
    #[serde(serialize_with = "ser_value")]
    pub deviation: Value,
    pub truthful_bids: Bids,
    pub deviation_bids: Bids,
    #[serde(serialize_with = "ser_value")]
    pub truthful_payoff: Value,
    #[serde(serialize_with = "ser_value")]
    pub deviation_payoff: Value,
}

impl fmt::Display for DominanceCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bidder {} (value {}) earns {} bidding truthfully in {} but {} deviating to {} in {}",
            self.bidder,
            self.value,
            self.truthful_payoff,
            self.truthful_bids,
            self.deviation_payoff,
            self.deviation,
            self.deviation_bids
        )
    }
}

/// Cells of a dominance sweep by whether the truthful bid and the deviation win.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CaseCounts {
    pub win_win: u64,
    pub win_lose: u64,
    pub lose_win: u64,
    pub lose_lose: u64,
    /// Cells where both bids win but the payoffs differ.
    pub win_win_unequal: u64,
    /// Cells where both bids lose but a payoff is nonzero.
    pub lose_lose_nonzero: u64,
}

impl CaseCounts {
    fn add(&mut self, o: &CaseCounts) {
        self.win_win += o.win_win;
        self.win_lose += o.win_lose;
        self.lose_win += o.lose_win;
        self.lose_lose += o.lose_lose;
        self.win_win_unequal += o.win_win_unequal;
        self.lose_lose_nonzero += o.lose_lose_nonzero;
    }

    pub fn total(&self) -> u64 {
        self.win_win + self.win_lose + self.lose_win + self.lose_lose
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominanceReport {
    pub rule: AuctionRule,
    pub participants: usize,
    /// Bidders checked.
    pub bidders: Vec<usize>,
    pub cells: u64,
    pub cases: CaseCounts,
    /// Canonically first counterexample: lowest bidder, then opponents'
    /// bids in lexicographic grid order, then lowest deviation.
    pub counterexample: Option<DominanceCounterexample>,
    /// Truthful bidding never produced a negative payoff.
    pub truthful_nonnegative: bool,
}

impl DominanceReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Digits of `k` in base `base`, most significant first.
fn digits(mut k: u64, base: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = (k % base as u64) as usize;
        k /= base as u64;
    }
    d
}

struct BidderSweep {
    cells: u64,
    cases: CaseCounts,
    counterexample: Option<DominanceCounterexample>,
    truthful_nonnegative: bool,
}

/// Every opponent profile from `grid` against every deviation from `grid ∪ {v}`.
fn sweep_bidder(rule: AuctionRule, n: usize, i: usize, v: Value, grid: &BidGrid) -> BidderSweep {
    let opponents = (grid.len() as u64).pow(n as u32 - 1);
    let deviations = grid.with_point(v);
    let per_profile = |k: u64| {
        let others: Vec<Value> = digits(k, grid.len(), n - 1).into_iter().map(|d| grid.0[d]).collect();
        let (t_win, t_pay) = rule.payoff_at(i, v, v, &others);
        let mut cases = CaseCounts::default();
        let mut first = None;
        for &dev in deviations.points() {
            let (d_win, d_pay) = rule.payoff_at(i, v, dev, &others);
            match (t_win, d_win) {
                (true, true) => {
                    cases.win_win += 1;
                    cases.win_win_unequal += u64::from(t_pay != d_pay);
                }
                (true, false) => cases.win_lose += 1,
                (false, true) => cases.lose_win += 1,
                (false, false) => {
                    cases.lose_lose += 1;
                    cases.lose_lose_nonzero += u64::from(!t_pay.is_zero() || !d_pay.is_zero());
                }
            }
            if d_pay > t_pay && first.is_none() {
                let mut truthful = others.clone();
                truthful.insert(i, v);
                let mut deviating = others.clone();
                deviating.insert(i, dev);
                first = Some(DominanceCounterexample {
                    bidder: i,
                    value: v,
                    others: others.clone(),
                    deviation: dev,
                    truthful_bids: Bids(truthful),
                    deviation_bids: Bids(deviating),
                    truthful_payoff: t_pay,
                    deviation_payoff: d_pay,
                });
            }
        }
        (cases, first, !t_pay.is_negative())
    };
    let results: Vec<_> = (0..opponents).into_par_iter().map(per_profile).collect();
    let mut cases = CaseCounts::default();
    let mut counterexample = None;
    let mut truthful_nonnegative = true;
    for (c, ce, nonneg) in results {
        cases.add(&c);
        if counterexample.is_none() {
            counterexample = ce;
        }
        truthful_nonnegative &= nonneg;
    }
    BidderSweep {
        cells: opponents * deviations.len() as u64,
        cases,
        counterexample,
        truthful_nonnegative,
    }
}

fn sweep_budget(n: usize, grid_len: usize, bidders: usize, budget: &Budget) -> Result<()> {
    let cells = (grid_len as u128 + 1)
        .checked_pow(n as u32)
        .and_then(|c| c.checked_mul(bidders as u128));
    Budget::check("sweep cells", cells, budget.sweep_cells).map(|_| ())
}

fn run_sweeps(rule: AuctionRule, n: usize, values: &[(usize, Value)], grid: &BidGrid) -> DominanceReport {
    let mut report = DominanceReport {
        rule,
        participants: n,
        bidders: values.iter().map(|&(i, _)| i).collect(),
        cells: 0,
        cases: CaseCounts::default(),
        counterexample: None,
        truthful_nonnegative: true,
    };
    for &(i, v) in values {
        let s = sweep_bidder(rule, n, i, v, grid);
        report.cells += s.cells;
        report.cases.add(&s.cases);
        report.truthful_nonnegative &= s.truthful_nonnegative;
        if report.counterexample.is_none() {
            report.counterexample = s.counterexample;
        }
    }
    report
}

/// Checks that truthful bidding is weakly dominant for every bidder: for all
/// opponent bids from `grid` and all deviations from `grid ∪ {v_i}`, bidding
/// `v_i` pays at least as well.
pub fn check_weak_dominance(
    rule: AuctionRule,
    v: &Valuations,
    grid: &BidGrid,
    budget: &Budget,
) -> Result<DominanceReport> {
    let n = v.participants();
    if n < 2 {
        return Err(domain("dominance needs at least two participants"));
    }
    sweep_budget(n, grid.len(), n, budget)?;
    let values: Vec<(usize, Value)> = v.values().iter().copied().enumerate().collect();
    Ok(run_sweeps(rule, n, &values, grid))
}

/// The three-point grid `{max(v - δ, 0), v, v + δ}`.
pub fn abstract_grid(v: Value, delta: Value) -> Result<BidGrid> {
    if !delta.is_positive() {
        return Err(domain(format!("delta must be positive, got {delta}")));
    }
    if v.is_negative() {
        return Err(domain(format!("valuation is negative ({v})")));
    }
    let low = if v > delta { v - delta } else { Value::zero() };
    let mut pts = vec![low, v, v + delta];
    pts.dedup();
    BidGrid::new(pts)
}

/// Weak dominance for bidder 0 with value `v` among `n` bidders whose bids
/// range over [`abstract_grid`].
pub fn check_abstract_dominance(
    rule: AuctionRule,
    n: usize,
    v: Value,
    delta: Value,
    budget: &Budget,
) -> Result<DominanceReport> {
    if n < 2 {
        return Err(domain("dominance needs at least two participants"));
    }
    let grid = abstract_grid(v, delta)?;
    sweep_budget(n, grid.len(), 1, budget)?;
    Ok(run_sweeps(rule, n, &[(0, v)], &grid))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EfficiencyReport {
    pub winner: usize,
    #[serde(serialize_with = "ser_value")]
    pub winner_value: Value,
    #[serde(serialize_with = "ser_value")]
    pub max_value: Value,
}

impl EfficiencyReport {
    pub fn holds(&self) -> bool {
        self.winner_value == self.max_value
    }
}

/// Under truthful bidding, the winner has a highest valuation.
pub fn check_efficiency(rule: AuctionRule, v: &Valuations) -> EfficiencyReport {
    let out = rule.run(&Bids(v.values().to_vec()));
    let winner = out.winner().expect("built-in rules allocate to one bidder");
    EfficiencyReport {
        winner,
        winner_value: v.values()[winner],
        max_value: v.max(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub bids: Bids,
    pub outcome: AuctionOutcome,
    pub violations: Vec<SoundnessViolation>,
}

impl SoundnessReport {
    pub fn sound(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a mechanism's outcome on `b` for the soundness invariants and for
/// agreement across repeated calls.
pub fn check_soundness_with<M>(mechanism: &M, b: &Bids) -> SoundnessReport
where
    M: Fn(&Bids) -> AuctionOutcome + ?Sized,
{
    let outcome = mechanism(b);
    let mut violations = outcome.violations(b.participants());
    if (0..2).any(|_| mechanism(b) != outcome) {
        violations.push(SoundnessViolation::Nondeterministic);
    }
    SoundnessReport {
        bids: b.clone(),
        outcome,
        violations,
    }
}

pub fn check_soundness(rule: AuctionRule, b: &Bids) -> SoundnessReport {
    check_soundness_with(&|b: &Bids| rule.run(b), b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessSweep {
    pub participants: usize,
    pub inputs: u64,
    /// Reports for the unsound inputs only, in sweep order.
    pub failures: Vec<SoundnessReport>,
    /// The parallel and sequential sweeps produced identical outcomes.
    pub parallel_agrees: bool,
}

impl SoundnessSweep {
    pub fn sound(&self) -> bool {
        self.failures.is_empty() && self.parallel_agrees
    }
}

/// Runs [`check_soundness_with`] on every bid vector in `grid^n`, once
/// sequentially and once in parallel, and compares the two.
pub fn soundness_sweep_with<M>(mechanism: &M, n: usize, grid: &BidGrid, budget: &Budget) -> Result<SoundnessSweep>
where
    M: Fn(&Bids) -> AuctionOutcome + Sync + ?Sized,
{
    if n == 0 {
        return Err(domain("at least one participant is required"));
    }
    let inputs = Budget::check(
        "sweep cells",
        (grid.len() as u128).checked_pow(n as u32),
        budget.sweep_cells,
    )? as u64;
    let bids = |k: u64| Bids(digits(k, grid.len(), n).into_iter().map(|d| grid.0[d]).collect());
    let sequential: Vec<SoundnessReport> = (0..inputs).map(|k| check_soundness_with(mechanism, &bids(k))).collect();
    let parallel: Vec<SoundnessReport> = (0..inputs)
        .into_par_iter()
        .map(|k| check_soundness_with(mechanism, &bids(k)))
        .collect();
    let parallel_agrees = sequential == parallel;
    Ok(SoundnessSweep {
        participants: n,
        inputs,
        failures: sequential.into_iter().filter(|r| !r.sound()).collect(),
        parallel_agrees,
    })
}

pub fn soundness_sweep(rule: AuctionRule, n: usize, grid: &BidGrid, budget: &Budget) -> Result<SoundnessSweep> {
    soundness_sweep_with(&|b: &Bids| rule.run(b), n, grid, budget)
}

/// A maximum together with the position it was found at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaxWitness<T> {
    pub value: T,
    pub index: usize,
}

/// Classical maximum: some element `w` such that every element is `<= w`,
/// found by testing each candidate against the whole list.
pub fn max_classical<T: Ord + Copy>(xs: &[T]) -> Result<MaxWitness<T>> {
    if xs.is_empty() {
        return Err(domain("maximum of an empty list"));
    }
    let index = (0..xs.len())
        .find(|&i| xs.iter().all(|x| *x <= xs[i]))
        .ok_or_else(|| Error::Invariant("no element bounds the list".into()))?;
    Ok(MaxWitness {
        value: xs[index],
        index,
    })
}

/// Constructive maximum: a singleton's maximum is its element; otherwise
/// compare the head with the maximum of the tail.
pub fn max_constructive<T: Ord + Copy>(xs: &[T]) -> Result<T> {
    match xs {
        [] => Err(domain("maximum of an empty list")),
        [x] => Ok(*x),
        [head, tail @ ..] => {
            // The tail recursion is unrolled as a right fold to keep long lists off the stack.
            let tail_max = tail[..tail.len() - 1]
                .iter()
                .rev()
                .fold(tail[tail.len() - 1], |m, &x| if x >= m { x } else { m });
            Ok(if *head >= tail_max { *head } else { tail_max })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Value {
        Value::from_integer(n)
    }

    fn bids(xs: &[i64]) -> Bids {
        Bids::new(xs.iter().map(|&x| q(x)).collect()).unwrap()
    }

    fn vals(xs: &[i64]) -> Valuations {
        Valuations::new(xs.iter().map(|&x| q(x)).collect()).unwrap()
    }

    #[test]
    fn spa_examples() {
        let o = run_spa(&bids(&[3, 1]));
        assert_eq!((o.allocation, o.payments), (vec![true, false], vec![q(1), q(0)]));
        let o = run_spa(&bids(&[2, 2]));
        assert_eq!((o.winner(), o.payments[0]), (Some(0), q(2)));
        let o = run_spa(&bids(&[0, 0, 5]));
        assert_eq!((o.winner(), o.payments[2]), (Some(2), q(0)));
        let o = run_spa(&bids(&[5]));
        assert_eq!(o.payments, vec![q(0)]);
        assert!(Bids::new(vec![q(-1)]).is_err());
    }

    #[test]
    fn payoff_examples() {
        assert_eq!(payoff(q(3), true, q(1)), q(2));
        assert_eq!(payoff(q(3), false, q(0)), q(0));
        assert_eq!(payoff(q(1), true, q(2)), q(-1));
    }

    #[test]
    fn parses_rationals_and_grids() {
        assert_eq!(parse_value("3/2").unwrap(), Value::new(3, 2));
        assert_eq!(parse_value("0.25").unwrap(), Value::new(1, 4));
        assert_eq!(parse_value("-1.5").unwrap(), Value::new(-3, 2));
        assert_eq!(parse_value(" 7 ").unwrap(), q(7));
        assert!(parse_value("1.").is_err() && parse_value("x").is_err() && parse_value("1/0").is_err());
        let b = Budget::default();
        assert_eq!(
            BidGrid::parse("0:4:1", &b).unwrap().points(),
            &[q(0), q(1), q(2), q(3), q(4)]
        );
        assert_eq!(BidGrid::parse("0:1:1/3", &b).unwrap().len(), 4);
        assert_eq!(BidGrid::parse("0:1:0.4", &b).unwrap().len(), 3);
        assert_eq!(BidGrid::parse("1,2,5", &b).unwrap().len(), 3);
        assert!(BidGrid::parse("2,1", &b).is_err());
        assert!(BidGrid::parse("0:1:0", &b).is_err());
        assert!(BidGrid::parse("0:1000000:1", &Budget::uniform(100)).is_err());
    }

    #[test]
    fn second_price_dominance_holds() {
        let grid = BidGrid::parse("0:4:1", &Budget::default()).unwrap();
        let r = check_weak_dominance(AuctionRule::SecondPrice, &vals(&[3, 1, 2]), &grid, &Budget::default()).unwrap();
        assert!(r.holds());
        assert!(r.truthful_nonnegative);
        assert_eq!(r.cells, 3 * 25 * 5);
        assert_eq!(r.cases.total(), r.cells);
        assert_eq!((r.cases.win_win_unequal, r.cases.lose_lose_nonzero), (0, 0));
    }

    #[test]
    fn first_price_shading_wins() {
        let grid = BidGrid::parse("0,1,2", &Budget::default()).unwrap();
        let r = check_weak_dominance(AuctionRule::FirstPrice, &vals(&[2, 2]), &grid, &Budget::default()).unwrap();
        let ce = r.counterexample.unwrap();
        assert_eq!((ce.bidder, ce.others.clone(), ce.deviation), (0, vec![q(0)], q(0)));
        assert_eq!((ce.truthful_payoff, ce.deviation_payoff), (q(0), q(2)));
    }

    #[test]
    fn zero_values_hold() {
        let grid = BidGrid::parse("0,1", &Budget::default()).unwrap();
        let r = check_weak_dominance(AuctionRule::SecondPrice, &vals(&[0, 0]), &grid, &Budget::default()).unwrap();
        assert!(r.holds());
        assert!(check_weak_dominance(AuctionRule::SecondPrice, &vals(&[1]), &grid, &Budget::default()).is_err());
    }

    #[test]
    fn dominance_budget() {
        let grid = BidGrid::parse("0:9:1", &Budget::default()).unwrap();
        let e =
            check_weak_dominance(AuctionRule::SecondPrice, &vals(&[1; 6]), &grid, &Budget::uniform(1000)).unwrap_err();
        assert!(matches!(e, Error::BudgetExceeded { .. }), "{e}");
    }

    #[test]
    fn efficiency_examples() {
        for (v, w, val) in [(&[3, 1][..], 0, 3), (&[2, 2], 0, 2), (&[1, 4, 4], 1, 4)] {
            let r = check_efficiency(AuctionRule::SecondPrice, &vals(v));
            assert!(r.holds());
            assert_eq!((r.winner, r.winner_value), (w, q(val)));
        }
    }

    #[test]
    fn soundness_flags_faults() {
        let grid = BidGrid::parse("0,1,2", &Budget::default()).unwrap();
        let s = soundness_sweep(AuctionRule::SecondPrice, 3, &grid, &Budget::default()).unwrap();
        assert_eq!(s.inputs, 27);
        assert!(s.sound());
        assert!(check_soundness(AuctionRule::SecondPrice, &bids(&[5])).sound());

        let loser_pays = |b: &Bids| {
            let mut o = run_spa(b);
            for (won, p) in o.allocation.iter().zip(o.payments.iter_mut()) {
                if !won {
                    *p = q(1);
                }
            }
            o
        };
        let r = check_soundness_with(&loser_pays, &bids(&[3, 1]));
        assert_eq!(
            r.violations,
            vec![SoundnessViolation::LoserPays {
                bidder: 1,
                amount: q(1)
            }]
        );
        let s = soundness_sweep_with(&loser_pays, 2, &grid, &Budget::default()).unwrap();
        assert_eq!(s.failures.len(), 9);
    }

    #[test]
    fn maxima() {
        assert_eq!(max_classical(&[7]).unwrap().value, 7);
        assert_eq!(max_constructive(&[7]).unwrap(), 7);
        assert_eq!(max_classical(&[1, 3, 2]).unwrap(), MaxWitness { value: 3, index: 1 });
        assert_eq!(max_constructive(&[1, 3, 2]).unwrap(), 3);
        assert!(max_classical::<i32>(&[]).is_err() && max_constructive::<i32>(&[]).is_err());
    }

    #[test]
    fn abstract_dominance() {
        for n in 2..=6 {
            let r = check_abstract_dominance(AuctionRule::SecondPrice, n, q(10), q(1), &Budget::default()).unwrap();
            assert!(r.holds(), "n={n}");
            assert_eq!(r.cells, 3u64.pow(n as u32 - 1) * 3);
        }
        assert_eq!(abstract_grid(q(0), q(1)).unwrap().points(), &[q(0), q(1)]);
        assert!(
            check_abstract_dominance(AuctionRule::SecondPrice, 3, q(0), q(1), &Budget::default())
                .unwrap()
                .holds()
        );
        let r = check_abstract_dominance(AuctionRule::FirstPrice, 2, q(10), q(1), &Budget::default()).unwrap();
        let ce = r.counterexample.unwrap();
        assert_eq!((ce.others, ce.deviation), (vec![q(9)], q(9)));
    }
}
