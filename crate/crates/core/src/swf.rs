//! Social welfare functions over three alternatives, their axiom checks, and
//! the exhaustive base-case analysis built on them.
//!
//! A pairwise SWF assigns each of the three alternative pairs a boolean
//! function of the agents' bits on that pair. IIA holds by construction, so
//! enumerating pairwise SWFs whose outputs are never cyclic enumerates exactly
//! the IIA-satisfying SWFs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{domain, Error, Result};
use crate::orders::{
    all_linear_orders, all_profiles, kendall_tau, order_of_bits, pairs, profile_count, Alternative, AlternativePair,
    LinearOrder, PairCode, Profile,
};

/// Largest agent count for the pairwise form (truth tables fit in a `u64`).
pub const MAX_PAIRWISE_AGENTS: usize = 6;

/// Display names of the three pairs, in bit order.
pub const PAIR_NAMES: [&str; 3] = ["ab", "ac", "bc"];

/// Codes of the six orders in canonical order.
const ORDER_CODES: [u8; 6] = [0b111, 0b110, 0b011, 0b001, 0b100, 0b000];

/// Truth table governing one alternative pair.
///
/// Entry `k` is the social bit when agent `i` contributes bit
/// `(k >> (n-1-i)) & 1`; agent 0 is the most significant. The table is
/// written entry 0 first, and `code` stores entry 0 in its most significant
/// bit so numeric order equals lexicographic order of the written form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairTable {
    pair: usize,
    agents: usize,
    code: u64,
}

impl PairTable {
    pub fn new(pair: usize, agents: usize, code: u64) -> Result<Self> {
        if pair >= 3 {
            return Err(domain(format!("pair index {pair} out of range")));
        }
        check_agents(agents)?;
        let len = 1u32 << agents;
        if len < 64 && code >> len != 0 {
            return Err(domain(format!("table code {code:#x} has more than {len} entries")));
        }
        Ok(PairTable { pair, agents, code })
    }

    pub fn pair(&self) -> usize {
        self.pair
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    /// Number of entries, `2^n`.
    pub fn entries(&self) -> usize {
        1 << self.agents
    }

    pub fn entry(&self, k: usize) -> bool {
        entry(self.code, self.entries(), k)
    }

    pub fn is_constant(&self) -> bool {
        self.code == 0 || self.code == full_mask(self.entries())
    }

    fn parse(pair: usize, s: &str) -> Result<Self> {
        let len = s.len();
        if !len.is_power_of_two() || len > 1 << MAX_PAIRWISE_AGENTS || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(domain(format!("truth table {s:?} must be 2^n binary digits")));
        }
        let code = u64::from_str_radix(s, 2).expect("validated binary");
        PairTable::new(pair, len.trailing_zeros() as usize, code)
    }
}

impl fmt::Display for PairTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.entries() {
            f.write_str(if self.entry(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn entry(code: u64, len: usize, k: usize) -> bool {
    (code >> (len - 1 - k)) & 1 == 1
}

fn full_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

pub(crate) fn check_agents(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PAIRWISE_AGENTS {
        return Err(domain(format!(
            "pairwise SWFs support 1..={MAX_PAIRWISE_AGENTS} agents, got {n}"
        )));
    }
    Ok(())
}

/// All agent code vectors in canonical profile order, as `(ab, ac, bc)` entry indices.
pub(crate) fn entry_triples(n: usize) -> Vec<[usize; 3]> {
    let total = 6usize.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        let mut t = [0usize; 3];
        for &d in &digits {
            let c = PairCode::new(ORDER_CODES[d]).expect("valid code");
            for (pair, e) in t.iter_mut().enumerate() {
                *e = (*e << 1) | c.bit(pair) as usize;
            }
        }
        out.push(t);
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < 6 {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// Pairwise table index of each pair for `profile`.
fn profile_entries(profile: &Profile) -> Result<[usize; 3]> {
    let mut t = [0usize; 3];
    for o in profile.orders() {
        let c = o.bits()?;
        for (pair, e) in t.iter_mut().enumerate() {
            *e = (*e << 1) | c.bit(pair) as usize;
        }
    }
    Ok(t)
}

/// An IIA social welfare function over three alternatives, given by three truth tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairwiseSwf {
    tables: [PairTable; 3],
}

impl PairwiseSwf {
    /// Builds and validates an SWF from the `ab`, `ac`, `bc` table codes.
    pub fn new(agents: usize, codes: [u64; 3]) -> Result<Self> {
        let swf = PairwiseSwf {
            tables: [
                PairTable::new(0, agents, codes[0])?,
                PairTable::new(1, agents, codes[1])?,
                PairTable::new(2, agents, codes[2])?,
            ],
        };
        if let Some(p) = swf.first_cyclic_profile() {
            return Err(domain(format!(
                "tables {swf} produce a cyclic social preference on profile {p}"
            )));
        }
        Ok(swf)
    }

    fn unchecked(agents: usize, codes: [u64; 3]) -> Self {
        let t = |pair| PairTable {
            pair,
            agents,
            code: codes[pair],
        };
        PairwiseSwf {
            tables: [t(0), t(1), t(2)],
        }
    }

    /// Every table copies agent `agent`'s bit.
    pub fn dictator(agents: usize, agent: usize) -> Result<Self> {
        if agent >= agents {
            return Err(domain(format!("agent {agent} out of range for {agents} agents")));
        }
        let len = 1usize << agents;
        let copy = (0..len).fold(0u64, |acc, k| (acc << 1) | ((k >> (agents - 1 - agent)) & 1) as u64);
        PairwiseSwf::new(agents, [copy; 3])
    }

    /// Every table negates agent `agent`'s bit.
    pub fn inverse_dictator(agents: usize, agent: usize) -> Result<Self> {
        let d = PairwiseSwf::dictator(agents, agent)?;
        let len = 1usize << agents;
        PairwiseSwf::new(agents, d.codes().map(|c| !c & full_mask(len)))
    }

    /// Always returns `order`.
    pub fn constant(agents: usize, order: &LinearOrder) -> Result<Self> {
        check_agents(agents)?;
        let code = order.bits()?;
        let full = full_mask(1 << agents);
        let t = |pair| if code.bit(pair) { full } else { 0 };
        PairwiseSwf::new(agents, [t(0), t(1), t(2)])
    }

    pub fn agents(&self) -> usize {
        self.tables[0].agents
    }

    pub fn tables(&self) -> &[PairTable; 3] {
        &self.tables
    }

    pub fn codes(&self) -> [u64; 3] {
        self.tables.map(|t| t.code)
    }

    fn social_code(&self, entries: [usize; 3]) -> PairCode {
        PairCode::from_bits(
            self.tables[0].entry(entries[0]),
            self.tables[1].entry(entries[1]),
            self.tables[2].entry(entries[2]),
        )
    }

    fn first_cyclic_profile(&self) -> Option<Profile> {
        entry_triples(self.agents())
            .into_iter()
            .position(|t| self.social_code(t).is_cyclic())
            .map(|i| Profile::from_index(self.agents(), 3, i).expect("index in range"))
    }

    pub fn evaluate(&self, profile: &Profile) -> Result<LinearOrder> {
        if profile.agents() != self.agents() || profile.m() != 3 {
            return Err(domain(format!(
                "profile has {} agents over {} alternatives, SWF expects {} over 3",
                profile.agents(),
                profile.m(),
                self.agents()
            )));
        }
        let code = self.social_code(profile_entries(profile)?);
        order_of_bits(code).map_err(|e| Error::Invariant(format!("SWF {self} output: {e}")))
    }

    /// Tabulates the SWF over every profile.
    pub fn to_extensional(&self) -> ExtensionalSwf {
        let outputs = entry_triples(self.agents())
            .into_iter()
            .map(|t| order_of_bits(self.social_code(t)).expect("validated SWFs are acyclic"))
            .collect();
        ExtensionalSwf {
            agents: self.agents(),
            alternatives: 3,
            outputs,
        }
    }
}

impl fmt::Display for PairwiseSwf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ab={} ac={} bc={}", self.tables[0], self.tables[1], self.tables[2])
    }
}

#[derive(Serialize, Deserialize)]
struct PairwiseRepr {
    ab: String,
    ac: String,
    bc: String,
}

impl Serialize for PairwiseSwf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PairwiseRepr {
            ab: self.tables[0].to_string(),
            ac: self.tables[1].to_string(),
            bc: self.tables[2].to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairwiseSwf {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PairwiseRepr::deserialize(d)?;
        let parse = || -> Result<PairwiseSwf> {
            let t = [
                PairTable::parse(0, &r.ab)?,
                PairTable::parse(1, &r.ac)?,
                PairTable::parse(2, &r.bc)?,
            ];
            if t.iter().any(|x| x.agents != t[0].agents) {
                return Err(domain("truth tables differ in length"));
            }
            PairwiseSwf::new(t[0].agents, t.map(|x| x.code))
        };
        parse().map_err(serde::de::Error::custom)
    }
}

/// An SWF given as an explicit table: one output per profile, indexed by
/// canonical profile index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionalSwf {
    agents: usize,
    alternatives: usize,
    outputs: Vec<LinearOrder>,
}

impl ExtensionalSwf {
    pub fn new(agents: usize, alternatives: usize, outputs: Vec<LinearOrder>) -> Result<Self> {
        let expected = profile_count(agents, alternatives).ok_or_else(|| domain("profile count overflows"))?;
        if outputs.len() as u128 != expected {
            return Err(domain(format!(
                "extensional SWF needs {expected} outputs, got {}",
                outputs.len()
            )));
        }
        if outputs.iter().any(|o| o.m() != alternatives) {
            return Err(domain("output order over the wrong number of alternatives"));
        }
        Ok(ExtensionalSwf {
            agents,
            alternatives,
            outputs,
        })
    }

    /// Tabulates `rule` over all profiles.
    pub fn from_fn(
        agents: usize,
        alternatives: usize,
        budget: &Budget,
        mut rule: impl FnMut(&Profile) -> LinearOrder,
    ) -> Result<Self> {
        let outputs = all_profiles(agents, alternatives, budget)?
            .iter()
            .map(&mut rule)
            .collect();
        ExtensionalSwf::new(agents, alternatives, outputs)
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    pub fn alternatives(&self) -> usize {
        self.alternatives
    }

    pub fn outputs(&self) -> &[LinearOrder] {
        &self.outputs
    }

    /// Replaces the output on one profile.
    pub fn set(&mut self, profile: &Profile, order: LinearOrder) -> Result<()> {
        self.check_profile(profile)?;
        if order.m() != self.alternatives {
            return Err(domain("output order over the wrong number of alternatives"));
        }
        self.outputs[profile.index()] = order;
        Ok(())
    }

    fn check_profile(&self, profile: &Profile) -> Result<()> {
        if profile.agents() != self.agents || profile.m() != self.alternatives {
            return Err(domain(format!(
                "profile has {} agents over {} alternatives, SWF expects {} over {}",
                profile.agents(),
                profile.m(),
                self.agents,
                self.alternatives
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, profile: &Profile) -> Result<LinearOrder> {
        self.check_profile(profile)?;
        Ok(self.outputs[profile.index()].clone())
    }

    /// Converts back to truth tables; fails unless `m = 3` and IIA holds.
    pub fn to_pairwise(&self) -> Result<PairwiseSwf> {
        if self.alternatives != 3 {
            return Err(domain("the pairwise form needs three alternatives"));
        }
        check_agents(self.agents)?;
        if let Err(v) = satisfies_iia(&Swf::Extensional(self.clone())) {
            return Err(domain(format!("not IIA: {v}")));
        }
        let len = 1usize << self.agents;
        let mut codes = [0u64; 3];
        for (t, out) in entry_triples(self.agents).into_iter().zip(&self.outputs) {
            let c = out.bits()?;
            for pair in 0..3 {
                if c.bit(pair) {
                    codes[pair] |= 1 << (len - 1 - t[pair]);
                }
            }
        }
        PairwiseSwf::new(self.agents, codes)
    }

    fn profiles(&self) -> impl Iterator<Item = Profile> + '_ {
        (0..self.outputs.len())
            .map(move |i| Profile::from_index(self.agents, self.alternatives, i).expect("index in range"))
    }
}

#[derive(Serialize)]
struct ExtensionalRow<'a> {
    profile: Profile,
    order: &'a LinearOrder,
}

impl Serialize for ExtensionalSwf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<ExtensionalRow<'_>> = self
            .profiles()
            .zip(&self.outputs)
            .map(|(profile, order)| ExtensionalRow { profile, order })
            .collect();
        let mut st = s.serialize_struct("ExtensionalSwf", 3)?;
        st.serialize_field("agents", &self.agents)?;
        st.serialize_field("alternatives", &self.alternatives)?;
        st.serialize_field("table", &rows)?;
        st.end()
    }
}

/// A social welfare function in either representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum Swf {
    Pairwise(PairwiseSwf),
    Extensional(ExtensionalSwf),
}

impl Swf {
    pub fn agents(&self) -> usize {
        match self {
            Swf::Pairwise(s) => s.agents(),
            Swf::Extensional(s) => s.agents,
        }
    }

    pub fn alternatives(&self) -> usize {
        match self {
            Swf::Pairwise(_) => 3,
            Swf::Extensional(s) => s.alternatives,
        }
    }

    pub fn evaluate(&self, profile: &Profile) -> Result<LinearOrder> {
        match self {
            Swf::Pairwise(s) => s.evaluate(profile),
            Swf::Extensional(s) => s.evaluate(profile),
        }
    }

    /// `(profile, output)` for every profile, in canonical order.
    fn graph(&self) -> Vec<(Profile, LinearOrder)> {
        match self {
            Swf::Pairwise(s) => {
                let ext = s.to_extensional();
                ext.profiles().zip(ext.outputs.iter().cloned()).collect()
            }
            Swf::Extensional(s) => s.profiles().zip(s.outputs.iter().cloned()).collect(),
        }
    }
}

impl From<PairwiseSwf> for Swf {
    fn from(s: PairwiseSwf) -> Self {
        Swf::Pairwise(s)
    }
}

impl From<ExtensionalSwf> for Swf {
    fn from(s: ExtensionalSwf) -> Self {
        Swf::Extensional(s)
    }
}

/// Two profiles on which every agent ranks `pair` identically but the social
/// ranking of `pair` differs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IiaViolation {
    pub pair: AlternativePair,
    pub profiles: (Profile, Profile),
}

impl fmt::Display for IiaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "profiles {} and {} agree on pair {} but the social ranking of it differs",
            self.profiles.0, self.profiles.1, self.pair
        )
    }
}

/// A profile where every agent prefers `preferred` to `over` but society does not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnanimityViolation {
    pub profile: Profile,
    pub preferred: Alternative,
    pub over: Alternative,
}

impl fmt::Display for UnanimityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "every agent in {} prefers {} to {} but society does not",
            self.profile, self.preferred, self.over
        )
    }
}

/// Checks independence of irrelevant alternatives; pairwise SWFs pass trivially.
pub fn satisfies_iia(swf: &Swf) -> std::result::Result<(), IiaViolation> {
    let ext = match swf {
        Swf::Pairwise(_) => return Ok(()),
        Swf::Extensional(e) => e,
    };
    for pair in pairs(ext.alternatives) {
        let mut seen: HashMap<u64, (usize, bool)> = HashMap::new();
        for (idx, (profile, out)) in ext.profiles().zip(&ext.outputs).enumerate() {
            let key = profile
                .orders()
                .iter()
                .fold(0u64, |acc, o| (acc << 1) | o.prefers(pair.first, pair.second) as u64);
            let social = out.prefers(pair.first, pair.second);
            match seen.get(&key) {
                Some(&(first, s)) if s != social => {
                    return Err(IiaViolation {
                        pair,
                        profiles: (
                            Profile::from_index(ext.agents, ext.alternatives, first).expect("index in range"),
                            profile,
                        ),
                    })
                }
                Some(_) => {}
                None => {
                    seen.insert(key, (idx, social));
                }
            }
        }
    }
    Ok(())
}

/// Checks unanimity (weak Pareto).
///
/// For the pairwise form each table must map all-ones to 1 and all-zeros to
/// 0; the witness is the uniform profile `a>b>c` (resp. `c>b>a`), which is
/// unanimous on every pair.
pub fn satisfies_unanimity(swf: &Swf) -> std::result::Result<(), UnanimityViolation> {
    match swf {
        Swf::Pairwise(s) => {
            let n = s.agents();
            let len = 1usize << n;
            for (all_prefer_first, entry_idx, order) in [(true, len - 1, "a>b>c"), (false, 0, "c>b>a")] {
                for (pair, t) in s.tables.iter().enumerate() {
                    if t.entry(entry_idx) != all_prefer_first {
                        let p = pairs(3)[pair];
                        let (preferred, over) = if all_prefer_first {
                            (p.first, p.second)
                        } else {
                            (p.second, p.first)
                        };
                        let o: LinearOrder = order.parse().expect("valid order");
                        return Err(UnanimityViolation {
                            profile: Profile::uniform(n, o).expect("valid profile"),
                            preferred,
                            over,
                        });
                    }
                }
            }
            Ok(())
        }
        Swf::Extensional(e) => {
            let m = e.alternatives;
            for (profile, out) in e.profiles().zip(&e.outputs) {
                for x in 0..m {
                    for y in 0..m {
                        let (x, y) = (Alternative(x), Alternative(y));
                        if x != y && profile.orders().iter().all(|o| o.prefers(x, y)) && !out.prefers(x, y) {
                            return Err(UnanimityViolation {
                                profile,
                                preferred: x,
                                over: y,
                            });
                        }
                    }
                }
            }
            Ok(())
        }
    }
}

fn agent_matching(graph: &[(Profile, LinearOrder)], agents: usize, reverse: bool) -> Option<usize> {
    (0..agents).find(|&i| {
        graph.iter().all(|(p, out)| {
            if reverse {
                p.order(i).reversed() == *out
            } else {
                p.order(i) == out
            }
        })
    })
}

/// The agent whose order the SWF always copies, if any.
pub fn is_dictatorial(swf: &Swf) -> Option<usize> {
    agent_matching(&swf.graph(), swf.agents(), false)
}

/// The agent whose order the SWF always reverses, if any.
pub fn is_inversely_dictatorial(swf: &Swf) -> Option<usize> {
    agent_matching(&swf.graph(), swf.agents(), true)
}

/// Distinct social orders over all profiles.
pub fn range_of(swf: &Swf) -> BTreeSet<LinearOrder> {
    swf.graph().into_iter().map(|(_, o)| o).collect()
}

/// Coarse tag of an [`SwfClass`], used for census counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    Dictatorial,
    InverselyDictatorial,
    Constant,
    SmallRange,
    Unclassified,
}

/// Where an IIA social welfare function falls in the three-alternative
/// classification. `Unclassified` would falsify the classification theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum SwfClass {
    Dictatorial {
        agent: usize,
    },
    InverselyDictatorial {
        agent: usize,
    },
    Constant {
        order: LinearOrder,
    },
    /// Two distinct orders at Kendall tau distance 1.
    SmallRange {
        orders: [LinearOrder; 2],
    },
    Unclassified {
        range: Vec<LinearOrder>,
    },
}

impl SwfClass {
    pub fn tag(&self) -> ClassTag {
        match self {
            SwfClass::Dictatorial { .. } => ClassTag::Dictatorial,
            SwfClass::InverselyDictatorial { .. } => ClassTag::InverselyDictatorial,
            SwfClass::Constant { .. } => ClassTag::Constant,
            SwfClass::SmallRange { .. } => ClassTag::SmallRange,
            SwfClass::Unclassified { .. } => ClassTag::Unclassified,
        }
    }
}

pub fn classify(swf: &Swf) -> SwfClass {
    let graph = swf.graph();
    if let Some(agent) = agent_matching(&graph, swf.agents(), false) {
        return SwfClass::Dictatorial { agent };
    }
    if let Some(agent) = agent_matching(&graph, swf.agents(), true) {
        return SwfClass::InverselyDictatorial { agent };
    }
    let range: Vec<LinearOrder> = graph
        .into_iter()
        .map(|(_, o)| o)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    match range.as_slice() {
        [order] => SwfClass::Constant { order: order.clone() },
        [x, y] if kendall_tau(x, y).is_ok_and(|d| d <= 1) => SwfClass::SmallRange {
            orders: [x.clone(), y.clone()],
        },
        _ => SwfClass::Unclassified { range },
    }
}

/// `(2^(2^n))^3`, the number of candidate table triples.
pub fn candidate_count(agents: usize) -> Option<u128> {
    let bits = 3u32.checked_mul(1u32.checked_shl(agents as u32)?)?;
    1u128.checked_shl(bits).filter(|_| bits < 128)
}

/// All pairwise SWFs over `agents` agents whose outputs are never cyclic,
/// sorted by the concatenated truth tables `ab ‖ ac ‖ bc`.
///
/// For fixed `ab` and `ac` tables each profile either forces a `bc` entry
/// (`ab=0, ac=1` forces 1; `ab=1, ac=0` forces 0) or leaves it free, so the
/// valid `bc` tables are enumerated directly rather than filtered.
pub fn enumerate_iia_swfs(agents: usize, budget: &Budget) -> Result<Vec<PairwiseSwf>> {
    check_agents(agents)?;
    Budget::check(
        "pairwise SWF candidates",
        candidate_count(agents),
        budget.swf_candidates,
    )?;
    let len = 1usize << agents;
    let full = full_mask(len);
    let mut triples = entry_triples(agents);
    triples.sort_unstable();
    triples.dedup();
    let chunks: Vec<Vec<PairwiseSwf>> = (0..=full)
        .into_par_iter()
        .map(|ab| {
            let mut found = Vec::new();
            for ac in 0..=full {
                let mut ones = 0u64;
                let mut zeros = 0u64;
                for t in &triples {
                    let bc_bit = 1u64 << (len - 1 - t[2]);
                    match (entry(ab, len, t[0]), entry(ac, len, t[1])) {
                        (false, true) => ones |= bc_bit,
                        (true, false) => zeros |= bc_bit,
                        _ => {}
                    }
                }
                if ones & zeros != 0 {
                    continue;
                }
                let free = full & !(ones | zeros);
                // Submasks of `free` in increasing numeric order.
                let mut sub = 0u64;
                loop {
                    found.push(PairwiseSwf::unchecked(agents, [ab, ac, ones | sub]));
                    if sub == free {
                        break;
                    }
                    sub = (sub | !free).wrapping_add(1) & free;
                }
            }
            found
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// An SWF with its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifiedSwf {
    pub swf: PairwiseSwf,
    pub class: SwfClass,
}

impl ClassifiedSwf {
    fn new(swf: PairwiseSwf) -> Self {
        ClassifiedSwf {
            class: classify(&Swf::Pairwise(swf)),
            swf,
        }
    }
}

/// Counts per classification tag.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub dictatorial: usize,
    pub inversely_dictatorial: usize,
    pub constant: usize,
    pub small_range: usize,
    pub unclassified: usize,
}

impl Census {
    pub fn of<'a>(swfs: impl IntoIterator<Item = &'a ClassifiedSwf>) -> Self {
        let mut c = Census::default();
        for s in swfs {
            match s.class.tag() {
                ClassTag::Dictatorial => c.dictatorial += 1,
                ClassTag::InverselyDictatorial => c.inversely_dictatorial += 1,
                ClassTag::Constant => c.constant += 1,
                ClassTag::SmallRange => c.small_range += 1,
                ClassTag::Unclassified => c.unclassified += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.dictatorial + self.inversely_dictatorial + self.constant + self.small_range + self.unclassified
    }
}

fn classify_all(swfs: Vec<PairwiseSwf>) -> Vec<ClassifiedSwf> {
    swfs.into_par_iter().map(ClassifiedSwf::new).collect()
}

/// Result of filtering the IIA SWFs by unanimity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrowReport {
    pub agents: usize,
    pub iia_count: usize,
    pub unanimity_filter: bool,
    pub survivors: Vec<ClassifiedSwf>,
    pub census: Census,
    /// Every survivor is dictatorial.
    pub impossibility_holds: bool,
}

pub fn arrow_base_case(agents: usize, unanimity_filter: bool, budget: &Budget) -> Result<ArrowReport> {
    let iia = enumerate_iia_swfs(agents, budget)?;
    let iia_count = iia.len();
    let kept: Vec<PairwiseSwf> = iia
        .into_iter()
        .filter(|s| !unanimity_filter || satisfies_unanimity(&Swf::Pairwise(*s)).is_ok())
        .collect();
    let survivors = classify_all(kept);
    let impossibility_holds = survivors.iter().all(|s| s.class.tag() == ClassTag::Dictatorial);
    Ok(ArrowReport {
        agents,
        iia_count,
        unanimity_filter,
        census: Census::of(&survivors),
        survivors,
        impossibility_holds,
    })
}

/// Result of filtering the IIA SWFs by surjectivity (non-imposition).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WilsonReport {
    pub agents: usize,
    pub iia_count: usize,
    pub survivors: Vec<ClassifiedSwf>,
    pub census: Census,
}

pub fn wilson_base_case(agents: usize, budget: &Budget) -> Result<WilsonReport> {
    let iia = enumerate_iia_swfs(agents, budget)?;
    let iia_count = iia.len();
    let all_orders = all_linear_orders(3)?.len();
    let survivors: Vec<PairwiseSwf> = iia
        .into_par_iter()
        .filter(|s| range_of(&Swf::Pairwise(*s)).len() == all_orders)
        .collect();
    let survivors = classify_all(survivors);
    Ok(WilsonReport {
        agents,
        iia_count,
        census: Census::of(&survivors),
        survivors,
    })
}

/// Classification census of every IIA SWF.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangLinReport {
    pub agents: usize,
    pub iia_count: usize,
    pub census: Census,
    pub unclassified: Vec<ClassifiedSwf>,
    /// No IIA SWF escapes the classification.
    pub holds: bool,
}

pub fn verify_tang_lin(agents: usize, budget: &Budget) -> Result<TangLinReport> {
    let all = classify_all(enumerate_iia_swfs(agents, budget)?);
    let census = Census::of(&all);
    let unclassified: Vec<ClassifiedSwf> = all
        .iter()
        .filter(|s| s.class.tag() == ClassTag::Unclassified)
        .cloned()
        .collect();
    Ok(TangLinReport {
        agents,
        iia_count: all.len(),
        census,
        holds: unclassified.is_empty(),
        unclassified,
    })
}
