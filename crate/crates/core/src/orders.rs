//! Alternatives, strict linear orders, preference profiles and the 3-bit
//! pairwise codec for three alternatives.
//!
//! Orders are stored best-first. Canonical enumeration is lexicographic on
//! the permutation, so for `m = 3` the sequence is
//! `a>b>c, a>c>b, b>a>c, b>c>a, c>a>b, c>b>a`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::budget::Budget;
use crate::error::{domain, Error, Result};

/// Largest supported number of alternatives.
pub const MAX_ALTERNATIVES: usize = 6;

const NAMES: [char; MAX_ALTERNATIVES] = ['a', 'b', 'c', 'd', 'e', 'f'];

/// One alternative, identified by its index in `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alternative(pub usize);

impl Alternative {
    pub fn name(self) -> char {
        NAMES.get(self.0).copied().unwrap_or('?')
    }

    fn from_name(c: char) -> Option<Self> {
        NAMES.iter().position(|&n| n == c).map(Alternative)
    }
}

impl Serialize for Alternative {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// An unordered pair of alternatives, stored with `first < second`.
///
/// The pair's bit in a pairwise code is 1 when `first` is preferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlternativePair {
    pub first: Alternative,
    pub second: Alternative,
}

impl AlternativePair {
    pub fn new(x: usize, y: usize) -> Result<Self> {
        if x == y {
            return Err(domain(format!("pair needs two distinct alternatives, got {x} twice")));
        }
        let (first, second) = if x < y { (x, y) } else { (y, x) };
        Ok(AlternativePair {
            first: Alternative(first),
            second: Alternative(second),
        })
    }
}

impl Serialize for AlternativePair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for AlternativePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first, self.second)
    }
}

/// All unordered pairs over `m` alternatives, lexicographically.
/// For `m = 3` this is `ab, ac, bc`, the bit order of [`PairCode`].
pub fn pairs(m: usize) -> Vec<AlternativePair> {
    let mut out = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for x in 0..m {
        for y in x + 1..m {
            out.push(AlternativePair {
                first: Alternative(x),
                second: Alternative(y),
            });
        }
    }
    out
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 || m > MAX_ALTERNATIVES {
        return Err(domain(format!(
            "alternative count must be in 1..={MAX_ALTERNATIVES}, got {m}"
        )));
    }
    Ok(())
}

fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// A strict total order over `m` alternatives, best first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearOrder {
    ranking: Vec<Alternative>,
}

impl LinearOrder {
    /// Builds an order from a best-first ranking of alternative indices.
    pub fn new(ranking: Vec<usize>) -> Result<Self> {
        let m = ranking.len();
        check_m(m)?;
        let mut seen = [false; MAX_ALTERNATIVES];
        for &x in &ranking {
            if x >= m || seen[x] {
                return Err(domain(format!("{ranking:?} is not a permutation of 0..{m}")));
            }
            seen[x] = true;
        }
        Ok(LinearOrder {
            ranking: ranking.into_iter().map(Alternative).collect(),
        })
    }

    /// The order `0 ≻ 1 ≻ … ≻ m-1`.
    pub fn identity(m: usize) -> Result<Self> {
        LinearOrder::new((0..m).collect())
    }

    pub fn m(&self) -> usize {
        self.ranking.len()
    }

    pub fn ranking(&self) -> &[Alternative] {
        &self.ranking
    }

    /// Position of `x`, 0 being best.
    pub fn position(&self, x: Alternative) -> usize {
        self.ranking
            .iter()
            .position(|&y| y == x)
            .expect("alternative outside the order")
    }

    /// Whether `x ≻ y`.
    pub fn prefers(&self, x: Alternative, y: Alternative) -> bool {
        self.position(x) < self.position(y)
    }

    pub fn best(&self) -> Alternative {
        self.ranking[0]
    }

    pub fn worst(&self) -> Alternative {
        *self.ranking.last().expect("orders are non-empty")
    }

    pub fn reversed(&self) -> LinearOrder {
        LinearOrder {
            ranking: self.ranking.iter().rev().copied().collect(),
        }
    }

    /// Rank of this order in the canonical (lexicographic) sequence.
    pub fn index(&self) -> usize {
        let m = self.m();
        let mut used = [false; MAX_ALTERNATIVES];
        let mut idx = 0;
        for (pos, a) in self.ranking.iter().enumerate() {
            let smaller_unused = (0..a.0).filter(|&x| !used[x]).count();
            idx += smaller_unused * factorial(m - 1 - pos);
            used[a.0] = true;
        }
        idx
    }

    /// Inverse of [`LinearOrder::index`].
    pub fn from_index(m: usize, mut idx: usize) -> Result<Self> {
        check_m(m)?;
        if idx >= factorial(m) {
            return Err(domain(format!("order index {idx} out of range for m={m}")));
        }
        let mut pool: Vec<usize> = (0..m).collect();
        let mut ranking = Vec::with_capacity(m);
        for pos in 0..m {
            let block = factorial(m - 1 - pos);
            ranking.push(pool.remove(idx / block));
            idx %= block;
        }
        LinearOrder::new(ranking)
    }

    /// The 3-bit code `(a≻b, a≻c, b≻c)`; only defined for three alternatives.
    pub fn bits(&self) -> Result<PairCode> {
        bits_of_order(self)
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.ranking.iter().enumerate() {
            if i > 0 {
                f.write_str(">")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for LinearOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ranking = s
            .split('>')
            .map(|tok| {
                let mut chars = tok.trim().chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Alternative::from_name(c)
                        .map(|a| a.0)
                        .ok_or_else(|| domain(format!("unknown alternative {c:?} in {s:?}"))),
                    _ => Err(domain(format!("malformed order {s:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        LinearOrder::new(ranking)
    }
}

impl Serialize for LinearOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LinearOrder {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All `m!` orders in canonical sequence.
pub fn all_linear_orders(m: usize) -> Result<Vec<LinearOrder>> {
    check_m(m)?;
    (0..factorial(m)).map(|i| LinearOrder::from_index(m, i)).collect()
}

/// A three-bit pairwise code: the most significant bit is `a≻b`, then
/// `a≻c`, then `b≻c`. Written as a three-character string, e.g. `"110"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairCode(u8);

impl PairCode {
    pub const AB: usize = 0;
    pub const AC: usize = 1;
    pub const BC: usize = 2;

    /// Codes `010` and `101` describe preference cycles.
    pub const CYCLIC: [PairCode; 2] = [PairCode(0b010), PairCode(0b101)];

    pub fn new(code: u8) -> Result<Self> {
        if code > 0b111 {
            return Err(domain(format!("pair code {code} does not fit in three bits")));
        }
        Ok(PairCode(code))
    }

    pub fn from_bits(ab: bool, ac: bool, bc: bool) -> Self {
        PairCode(((ab as u8) << 2) | ((ac as u8) << 1) | bc as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Bit for pair `0 = ab`, `1 = ac`, `2 = bc`.
    pub fn bit(self, pair: usize) -> bool {
        assert!(pair < 3, "three-alternative codes have three pairs");
        (self.0 >> (2 - pair)) & 1 == 1
    }

    pub fn is_cyclic(self) -> bool {
        PairCode::CYCLIC.contains(&self)
    }
}

impl fmt::Display for PairCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:03b}", self.0)
    }
}

impl FromStr for PairCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() != 3 || !s.chars().all(|c| c == '0' || c == '1') {
            return Err(domain(format!("pair code must be three binary digits, got {s:?}")));
        }
        PairCode::new(u8::from_str_radix(s, 2).expect("validated binary"))
    }
}

/// Encodes a three-alternative order as `(a≻b, a≻c, b≻c)`.
pub fn bits_of_order(order: &LinearOrder) -> Result<PairCode> {
    if order.m() != 3 {
        return Err(domain(format!(
            "the bit codec needs three alternatives, order {order} has {}",
            order.m()
        )));
    }
    let [a, b, c] = [Alternative(0), Alternative(1), Alternative(2)];
    Ok(PairCode::from_bits(
        order.prefers(a, b),
        order.prefers(a, c),
        order.prefers(b, c),
    ))
}

/// Decodes a three-bit code; cyclic codes are rejected with the cycle spelled out.
pub fn order_of_bits(code: PairCode) -> Result<LinearOrder> {
    if code.is_cyclic() {
        let rel = |bit: bool, x: char, y: char| {
            if bit {
                format!("{x}≻{y}")
            } else {
                format!("{y}≻{x}")
            }
        };
        return Err(Error::CyclicCode(format!(
            "{}, {}, {}",
            rel(code.bit(PairCode::AB), 'a', 'b'),
            rel(code.bit(PairCode::AC), 'a', 'c'),
            rel(code.bit(PairCode::BC), 'b', 'c'),
        )));
    }
    // Score each alternative by the number of pairwise wins.
    let mut wins = [0usize; 3];
    let mut credit = |bit: bool, x: usize, y: usize| wins[if bit { x } else { y }] += 1;
    credit(code.bit(PairCode::AB), 0, 1);
    credit(code.bit(PairCode::AC), 0, 2);
    credit(code.bit(PairCode::BC), 1, 2);
    let mut ranking = vec![0, 1, 2];
    ranking.sort_by_key(|&x| std::cmp::Reverse(wins[x]));
    LinearOrder::new(ranking)
}

/// Number of alternative pairs on which two orders disagree.
pub fn kendall_tau(o1: &LinearOrder, o2: &LinearOrder) -> Result<usize> {
    if o1.m() != o2.m() {
        return Err(domain(format!(
            "cannot compare orders over {} and {} alternatives",
            o1.m(),
            o2.m()
        )));
    }
    Ok(pairs(o1.m())
        .into_iter()
        .filter(|p| o1.prefers(p.first, p.second) != o2.prefers(p.first, p.second))
        .count())
}

/// One linear order per agent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Profile {
    orders: Vec<LinearOrder>,
}

impl Profile {
    pub fn new(orders: Vec<LinearOrder>) -> Result<Self> {
        let Some(first) = orders.first() else {
            return Err(domain("a profile needs at least one agent"));
        };
        let m = first.m();
        if orders.iter().any(|o| o.m() != m) {
            return Err(domain("all orders in a profile must share the alternative count"));
        }
        Ok(Profile { orders })
    }

    /// Profile in which all `n` agents hold the same order.
    pub fn uniform(n: usize, order: LinearOrder) -> Result<Self> {
        Profile::new(vec![order; n])
    }

    pub fn agents(&self) -> usize {
        self.orders.len()
    }

    pub fn m(&self) -> usize {
        self.orders[0].m()
    }

    pub fn orders(&self) -> &[LinearOrder] {
        &self.orders
    }

    pub fn order(&self, agent: usize) -> &LinearOrder {
        &self.orders[agent]
    }

    /// Rank in the canonical sequence: agent 0's order index is the most
    /// significant digit in base `m!`.
    pub fn index(&self) -> usize {
        let base = factorial(self.m());
        self.orders.iter().fold(0, |acc, o| acc * base + o.index())
    }

    /// Inverse of [`Profile::index`].
    pub fn from_index(n: usize, m: usize, mut idx: usize) -> Result<Self> {
        check_m(m)?;
        let base = factorial(m);
        let mut digits = vec![0; n];
        for d in digits.iter_mut().rev() {
            *d = idx % base;
            idx /= base;
        }
        if idx != 0 {
            return Err(domain(format!("profile index out of range for n={n}, m={m}")));
        }
        Profile::new(
            digits
                .into_iter()
                .map(|d| LinearOrder::from_index(m, d))
                .collect::<Result<_>>()?,
        )
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, o) in self.orders.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{o}")?;
        }
        f.write_str(")")
    }
}

/// `(m!)^n`, or `None` on overflow.
pub fn profile_count(n: usize, m: usize) -> Option<u128> {
    (factorial(m) as u128).checked_pow(u32::try_from(n).ok()?)
}

/// All `(m!)^n` profiles in canonical order, guarded by `budget.profiles`.
pub fn all_profiles(n: usize, m: usize, budget: &Budget) -> Result<Vec<Profile>> {
    check_m(m)?;
    if n == 0 {
        return Err(domain("agent count must be at least 1"));
    }
    let count = Budget::check("profiles", profile_count(n, m), budget.profiles)?;
    let orders = all_linear_orders(m)?;
    let base = orders.len();
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0usize; n];
    for _ in 0..count {
        out.push(Profile {
            orders: digits.iter().map(|&d| orders[d].clone()).collect(),
        });
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < base {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> PairCode {
        s.parse().unwrap()
    }

    fn order(s: &str) -> LinearOrder {
        s.parse().unwrap()
    }

    #[test]
    fn enumerates_orders() {
        assert_eq!(all_linear_orders(1).unwrap().len(), 1);
        assert_eq!(all_linear_orders(4).unwrap().len(), 24);
        let codes: Vec<String> = all_linear_orders(3)
            .unwrap()
            .iter()
            .map(|o| o.bits().unwrap().to_string())
            .collect();
        assert_eq!(codes, ["111", "110", "011", "001", "100", "000"]);
        assert!(all_linear_orders(0).is_err());
        assert!(all_linear_orders(7).is_err());
    }

    #[test]
    fn orders_are_distinct_permutations() {
        for m in 1..=5 {
            let all = all_linear_orders(m).unwrap();
            assert_eq!(all.len(), factorial(m));
            let set: std::collections::BTreeSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
            assert!(all.windows(2).all(|w| w[0] < w[1]), "not lexicographic at m={m}");
            for (i, o) in all.iter().enumerate() {
                assert_eq!(o.index(), i);
            }
        }
    }

    #[test]
    fn bit_codec() {
        assert_eq!(bits_of_order(&order("a>b>c")).unwrap(), code("111"));
        assert_eq!(bits_of_order(&order("a>c>b")).unwrap(), code("110"));
        assert_eq!(bits_of_order(&order("c>b>a")).unwrap(), code("000"));
        assert!(bits_of_order(&order("a>b")).is_err());
        assert!(bits_of_order(&order("a>b>c>d")).is_err());

        assert_eq!(order_of_bits(code("111")).unwrap(), order("a>b>c"));
        assert_eq!(order_of_bits(code("001")).unwrap(), order("b>c>a"));
        let err = order_of_bits(code("010")).unwrap_err();
        assert_eq!(err.to_string(), "cyclic: b≻a, a≻c, c≻b");
        assert!(matches!(order_of_bits(code("101")), Err(Error::CyclicCode(_))));
    }

    #[test]
    fn decode_matches_permutation_scan() {
        // Decode each valid code by testing all six permutations against the bits.
        for value in 0..8u8 {
            let c = PairCode::new(value).unwrap();
            let matches: Vec<LinearOrder> = all_linear_orders(3)
                .unwrap()
                .into_iter()
                .filter(|o| {
                    let [a, b, cc] = [Alternative(0), Alternative(1), Alternative(2)];
                    o.prefers(a, b) == c.bit(0) && o.prefers(a, cc) == c.bit(1) && o.prefers(b, cc) == c.bit(2)
                })
                .collect();
            if c.is_cyclic() {
                assert!(matches.is_empty());
                assert!(order_of_bits(c).is_err());
            } else {
                assert_eq!(matches.len(), 1);
                assert_eq!(order_of_bits(c).unwrap(), matches[0]);
                assert_eq!(bits_of_order(&matches[0]).unwrap(), c);
            }
        }
    }

    #[test]
    fn kendall_tau_examples_and_metric() {
        let o = |s| order_of_bits(code(s)).unwrap();
        assert_eq!(kendall_tau(&o("111"), &o("111")).unwrap(), 0);
        assert_eq!(kendall_tau(&o("111"), &o("110")).unwrap(), 1);
        assert_eq!(kendall_tau(&o("111"), &o("000")).unwrap(), 3);
        assert!(kendall_tau(&order("a>b"), &order("a>b>c")).is_err());

        let all = all_linear_orders(3).unwrap();
        for x in &all {
            for y in &all {
                let d = kendall_tau(x, y).unwrap();
                let hamming = (x.bits().unwrap().value() ^ y.bits().unwrap().value()).count_ones() as usize;
                assert_eq!(d, hamming);
                assert_eq!(d, kendall_tau(y, x).unwrap());
                assert_eq!(d == 0, x == y);
                assert!(d <= 3);
                for z in &all {
                    assert!(d <= kendall_tau(x, z).unwrap() + kendall_tau(z, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn profiles() {
        let b = Budget::default();
        assert_eq!(all_profiles(2, 3, &b).unwrap().len(), 36);
        assert_eq!(all_profiles(1, 3, &b).unwrap().len(), 6);
        let p3 = all_profiles(3, 3, &b).unwrap();
        assert_eq!(p3.len(), 216);
        for (i, p) in p3.iter().enumerate() {
            assert_eq!(p.index(), i);
            assert_eq!(&Profile::from_index(3, 3, i).unwrap(), p);
        }
        let err = all_profiles(10, 6, &b).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }), "{err}");
        assert!(err.to_string().contains("profiles"));
    }

    #[test]
    fn order_strings() {
        let o = order("c>a>b");
        assert_eq!(o.to_string(), "c>a>b");
        assert_eq!(o.reversed().to_string(), "b>a>c");
        assert!("a>a>b".parse::<LinearOrder>().is_err());
        assert!("a>x".parse::<LinearOrder>().is_err());
        assert!("111".parse::<PairCode>().is_ok());
        assert!("1112".parse::<PairCode>().is_err());
    }
}
