//! Extending a linear order on objects to a preference over the nonempty
//! subsets of those objects: the axioms, the min-max ordering, propositional
//! encodings, and a search for inconsistent axiom subsets.
//!
//! The primitive is the weak relation `A ⊵ B`; the strict part is
//! `A ▷ B ⇔ A ⊵ B ∧ ¬(B ⊵ A)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::orders::{Alternative, LinearOrder};
use crate::satkit::{solve_with_limit, Assignment, Cnf, Literal, SolveResult};

pub const MIN_OBJECTS: usize = 2;
pub const MAX_OBJECTS: usize = 6;

/// `m` objects ranked by a base order (by default object 0 is best).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    m: usize,
    base_order: LinearOrder,
}

impl Universe {
    pub fn new(m: usize) -> Result<Self> {
        if !(MIN_OBJECTS..=MAX_OBJECTS).contains(&m) {
            return Err(domain(format!(
                "universe size must be in {MIN_OBJECTS}..={MAX_OBJECTS}, got {m}"
            )));
        }
        Ok(Universe {
            m,
            base_order: LinearOrder::identity(m)?,
        })
    }

    pub fn with_order(base_order: LinearOrder) -> Result<Self> {
        let mut u = Universe::new(base_order.m())?;
        u.base_order = base_order;
        Ok(u)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn base_order(&self) -> &LinearOrder {
        &self.base_order
    }

    /// Number of nonempty subsets, `2^m - 1`.
    pub fn subset_count(&self) -> usize {
        (1 << self.m) - 1
    }

    /// Nonempty subsets in increasing mask order.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetId> {
        (1..=self.subset_count() as u8).map(SubsetId)
    }

    fn object(&self, pos: usize) -> usize {
        self.base_order.ranking()[pos].0
    }

    /// Whether object `x` is strictly preferred to object `y`.
    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.base_order.prefers(Alternative(x), Alternative(y))
    }

    /// Worst element of `s`.
    pub fn min(&self, s: SubsetId) -> usize {
        (0..self.m)
            .rev()
            .map(|p| self.object(p))
            .find(|&x| s.contains(x))
            .expect("subsets are nonempty")
    }

    /// Best element of `s`.
    pub fn max(&self, s: SubsetId) -> usize {
        (0..self.m)
            .map(|p| self.object(p))
            .find(|&x| s.contains(x))
            .expect("subsets are nonempty")
    }

    /// Ordered triples `x ≻ y ≻ z` of distinct objects, in ascending object-index order.
    fn chains3(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.m {
            for y in 0..self.m {
                for z in 0..self.m {
                    if self.prefers(x, y) && self.prefers(y, z) {
                        out.push((x, y, z));
                    }
                }
            }
        }
        out
    }
}

/// A nonempty subset of the universe, as a bitmask (bit `x` = object `x`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetId(u8);

impl SubsetId {
    pub fn new(mask: u8, m: usize) -> Result<Self> {
        if mask == 0 || (mask as usize) >= (1 << m) {
            return Err(domain(format!(
                "mask {mask:#b} is not a nonempty subset of {m} objects"
            )));
        }
        Ok(SubsetId(mask))
    }

    pub fn of(objects: &[usize]) -> Self {
        let mask = objects.iter().fold(0u8, |acc, &x| acc | (1 << x));
        assert!(mask != 0, "subsets are nonempty");
        SubsetId(mask)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    /// Position in [`Universe::subsets`].
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn with(self, x: usize) -> Self {
        SubsetId(self.0 | 1 << x)
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        (0..8).filter(move |&x| self.contains(x))
    }
}

impl fmt::Display for SubsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", Alternative(x))?;
        }
        f.write_str("}")
    }
}

impl Serialize for SubsetId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Structural constraints on a set relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RelationClass {
    /// Transitive.
    Transitive,
    /// Transitive and total.
    WeakOrder,
    /// Transitive, total, and antisymmetric on distinct subsets.
    LinearOrder,
}

impl FromStr for RelationClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "transitive" => Ok(RelationClass::Transitive),
            "weak" | "weakorder" => Ok(RelationClass::WeakOrder),
            "linear" | "linearorder" => Ok(RelationClass::LinearOrder),
            _ => Err(domain(format!("unknown relation class {s:?}"))),
        }
    }
}

impl fmt::Display for RelationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationClass::Transitive => "transitive",
            RelationClass::WeakOrder => "weak-order",
            RelationClass::LinearOrder => "linear-order",
        })
    }
}

/// A weak preference `geq` over the nonempty subsets of a universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetRelation {
    universe: Universe,
    geq: Vec<bool>,
    class: RelationClass,
}

impl SetRelation {
    /// Builds a relation from `rule(A, B) = A ⊵ B`, validating `class`.
    pub fn from_fn(
        universe: &Universe,
        class: RelationClass,
        mut rule: impl FnMut(SubsetId, SubsetId) -> bool,
    ) -> Result<Self> {
        let k = universe.subset_count();
        let mut geq = vec![false; k * k];
        for a in universe.subsets() {
            for b in universe.subsets() {
                geq[a.index() * k + b.index()] = rule(a, b);
            }
        }
        let rel = SetRelation {
            universe: universe.clone(),
            geq,
            class,
        };
        if let Some(why) = rel.class_violation(class) {
            return Err(domain(format!("relation is not {class}: {why}")));
        }
        Ok(rel)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn class(&self) -> RelationClass {
        self.class
    }

    pub fn geq(&self, a: SubsetId, b: SubsetId) -> bool {
        self.geq[a.index() * self.universe.subset_count() + b.index()]
    }

    pub fn strictly(&self, a: SubsetId, b: SubsetId) -> bool {
        self.geq(a, b) && !self.geq(b, a)
    }

    /// Describes the first failure of `class`'s constraints, if any.
    pub fn class_violation(&self, class: RelationClass) -> Option<String> {
        let subsets: Vec<SubsetId> = self.universe.subsets().collect();
        if class >= RelationClass::WeakOrder {
            for &a in &subsets {
                for &b in &subsets {
                    if !self.geq(a, b) && !self.geq(b, a) {
                        return Some(format!("{a} and {b} are incomparable"));
                    }
                }
            }
        }
        if class == RelationClass::LinearOrder {
            for &a in &subsets {
                for &b in &subsets {
                    if a != b && self.geq(a, b) && self.geq(b, a) {
                        return Some(format!("{a} and {b} are indifferent"));
                    }
                }
            }
        }
        for &a in &subsets {
            for &b in &subsets {
                if !self.geq(a, b) {
                    continue;
                }
                for &c in &subsets {
                    if self.geq(b, c) && !self.geq(a, c) {
                        return Some(format!("{a} ⊵ {b} ⊵ {c} but not {a} ⊵ {c}"));
                    }
                }
            }
        }
        None
    }

    /// Indifference classes best first, when the relation is a weak order.
    pub fn tiers(&self) -> Option<Vec<Vec<SubsetId>>> {
        if self.class_violation(RelationClass::WeakOrder).is_some() {
            return None;
        }
        let mut subsets: Vec<SubsetId> = self.universe.subsets().collect();
        let beaten = |a: SubsetId| subsets_count(self, a);
        subsets.sort_by_key(|&a| (std::cmp::Reverse(beaten(a)), a));
        let mut tiers: Vec<Vec<SubsetId>> = Vec::new();
        for s in subsets {
            match tiers.last_mut() {
                Some(t) if self.geq(t[0], s) && self.geq(s, t[0]) => t.push(s),
                _ => tiers.push(vec![s]),
            }
        }
        Some(tiers)
    }
}

fn subsets_count(rel: &SetRelation, a: SubsetId) -> usize {
    rel.universe.subsets().filter(|&b| rel.geq(a, b)).count()
}

impl fmt::Display for SetRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(tiers) = self.tiers() {
            for (i, t) in tiers.iter().enumerate() {
                if i > 0 {
                    f.write_str(" > ")?;
                }
                for (j, s) in t.iter().enumerate() {
                    if j > 0 {
                        f.write_str(" ~ ")?;
                    }
                    write!(f, "{s}")?;
                }
            }
            return Ok(());
        }
        for (i, a) in self.universe.subsets().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            for b in self.universe.subsets() {
                f.write_str(if self.geq(a, b) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// Ranks sets by their worst element, breaking ties by their best element.
pub fn minmax_relation(u: &Universe) -> SetRelation {
    let rank = |x: usize| u.base_order.position(Alternative(x));
    SetRelation::from_fn(u, RelationClass::WeakOrder, |a, b| {
        let (min_a, min_b) = (rank(u.min(a)), rank(u.min(b)));
        min_a < min_b || (min_a == min_b && rank(u.max(a)) <= rank(u.max(b)))
    })
    .expect("the min-max ordering is a weak order")
}

/// The axiom catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AxiomId {
    /// `x ≻ y ⇒ {x} ▷ {x,y} ▷ {y}`.
    SimpleDominance,
    /// `A ▷ B ⇒ A∪{x} ⊵ B∪{x}` for `x ∉ A∪B`.
    Independence,
    /// `x ≻ y ≻ z ⇒ {y} ▷ {x,z}`.
    UncertaintyAversion,
    /// `x ≻ y ≻ z ⇒ {x,z} ▷ {y}`, the dual of aversion.
    UncertaintyAppeal,
    /// `x ≻ y ≻ z ⇒ {x,z} ▷ {y,z}`.
    SimpleTopMonotonicity,
}

impl AxiomId {
    pub const ALL: [AxiomId; 5] = [
        AxiomId::SimpleDominance,
        AxiomId::Independence,
        AxiomId::UncertaintyAversion,
        AxiomId::UncertaintyAppeal,
        AxiomId::SimpleTopMonotonicity,
    ];

    /// The four axioms of the min-max characterization.
    pub const MINMAX_FOUR: [AxiomId; 4] = [
        AxiomId::SimpleDominance,
        AxiomId::Independence,
        AxiomId::UncertaintyAversion,
        AxiomId::SimpleTopMonotonicity,
    ];

    /// Short command-line name.
    pub fn short_name(self) -> &'static str {
        match self {
            AxiomId::SimpleDominance => "dominance",
            AxiomId::Independence => "independence",
            AxiomId::UncertaintyAversion => "aversion",
            AxiomId::UncertaintyAppeal => "appeal",
            AxiomId::SimpleTopMonotonicity => "topmono",
        }
    }

    /// Smallest universe on which the axiom has any instance.
    pub fn min_objects(self) -> usize {
        match self {
            AxiomId::SimpleDominance => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['-', '_', ' '], "");
        AxiomId::ALL
            .into_iter()
            .find(|a| a.short_name() == key || format!("{a:?}").to_ascii_lowercase() == key)
            .ok_or_else(|| domain(format!("unknown axiom {s:?}")))
    }
}

/// Parses a comma-separated axiom list.
pub fn parse_axioms(list: &str) -> Result<Vec<AxiomId>> {
    let mut out: Vec<AxiomId> = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse())
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Right-hand side of a ground constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "sets", rename_all = "lowercase")]
pub enum Conclusion {
    /// `A ▷ B`
    Strict(SubsetId, SubsetId),
    /// `A ⊵ B`
    Weak(SubsetId, SubsetId),
}

impl Conclusion {
    pub fn holds(self, rel: &SetRelation) -> bool {
        match self {
            Conclusion::Strict(a, b) => rel.strictly(a, b),
            Conclusion::Weak(a, b) => rel.geq(a, b),
        }
    }

    fn key(self) -> (u8, u8, u8) {
        match self {
            Conclusion::Strict(a, b) => (a.0, b.0, 0),
            Conclusion::Weak(a, b) => (a.0, b.0, 1),
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Strict(a, b) => write!(f, "{a} ▷ {b}"),
            Conclusion::Weak(a, b) => write!(f, "{a} ⊵ {b}"),
        }
    }
}

/// One instance of an axiom: `premise ⇒ conclusion`, with the premise a
/// strict preference `A ▷ B` (or absent).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroundConstraint {
    pub axiom: AxiomId,
    pub premise: Option<(SubsetId, SubsetId)>,
    pub conclusion: Conclusion,
}

impl GroundConstraint {
    pub fn holds(&self, rel: &SetRelation) -> bool {
        match self.premise {
            Some((a, b)) if !rel.strictly(a, b) => true,
            _ => self.conclusion.holds(rel),
        }
    }

    fn key(&self) -> (Option<(u8, u8)>, (u8, u8, u8)) {
        (self.premise.map(|(a, b)| (a.0, b.0)), self.conclusion.key())
    }
}

impl fmt::Display for GroundConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((a, b)) = self.premise {
            write!(f, "{a} ▷ {b} ⇒ ")?;
        }
        write!(f, "{}", self.conclusion)
    }
}

/// All instances of an axiom over a universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grounding {
    pub axiom: AxiomId,
    pub constraints: Vec<GroundConstraint>,
    /// The axiom has no instance on this universe.
    pub vacuous: bool,
}

pub fn ground_axiom(u: &Universe, axiom: AxiomId) -> Grounding {
    let unconditional = |conclusion| GroundConstraint {
        axiom,
        premise: None,
        conclusion,
    };
    let mut constraints = Vec::new();
    match axiom {
        AxiomId::SimpleDominance => {
            for x in 0..u.m {
                for y in 0..u.m {
                    if u.prefers(x, y) {
                        let (sx, sy, sxy) = (SubsetId::of(&[x]), SubsetId::of(&[y]), SubsetId::of(&[x, y]));
                        constraints.push(unconditional(Conclusion::Strict(sx, sxy)));
                        constraints.push(unconditional(Conclusion::Strict(sxy, sy)));
                    }
                }
            }
        }
        AxiomId::Independence => {
            for a in u.subsets() {
                for b in u.subsets() {
                    if a == b {
                        continue;
                    }
                    for x in 0..u.m {
                        if !a.contains(x) && !b.contains(x) {
                            constraints.push(GroundConstraint {
                                axiom,
                                premise: Some((a, b)),
                                conclusion: Conclusion::Weak(a.with(x), b.with(x)),
                            });
                        }
                    }
                }
            }
        }
        AxiomId::UncertaintyAversion => {
            for (x, y, z) in u.chains3() {
                constraints.push(unconditional(Conclusion::Strict(
                    SubsetId::of(&[y]),
                    SubsetId::of(&[x, z]),
                )));
            }
        }
        AxiomId::UncertaintyAppeal => {
            for (x, y, z) in u.chains3() {
                constraints.push(unconditional(Conclusion::Strict(
                    SubsetId::of(&[x, z]),
                    SubsetId::of(&[y]),
                )));
            }
        }
        AxiomId::SimpleTopMonotonicity => {
            for (x, y, z) in u.chains3() {
                constraints.push(unconditional(Conclusion::Strict(
                    SubsetId::of(&[x, z]),
                    SubsetId::of(&[y, z]),
                )));
            }
        }
    }
    constraints.sort_by_key(|c| c.key());
    constraints.dedup();
    Grounding {
        axiom,
        vacuous: constraints.is_empty(),
        constraints,
    }
}

/// The first instance of `axiom` that `rel` violates, in canonical order.
pub fn check_relation(rel: &SetRelation, axiom: AxiomId) -> std::result::Result<(), GroundConstraint> {
    match ground_axiom(&rel.universe, axiom)
        .constraints
        .into_iter()
        .find(|c| !c.holds(rel))
    {
        Some(c) => Err(c),
        None => Ok(()),
    }
}

/// A ranking-sets encoding: variable `var(A, B)` means `A ⊵ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RanksetsEncoding {
    pub cnf: Cnf,
    pub universe: Universe,
    pub axioms: Vec<AxiomId>,
    pub class: RelationClass,
}

impl RanksetsEncoding {
    pub fn var(&self, a: SubsetId, b: SubsetId) -> u32 {
        geq_var(&self.universe, a, b)
    }

    /// Reads the relation off a model and checks it against the class and every axiom.
    pub fn decode(&self, model: &Assignment) -> Result<SetRelation> {
        let k = self.universe.subset_count();
        let rel = SetRelation {
            universe: self.universe.clone(),
            geq: (1..=(k * k) as u32).map(|v| model.value(v)).collect(),
            class: self.class,
        };
        if let Some(why) = rel.class_violation(self.class) {
            return Err(Error::Invariant(format!(
                "decoded relation is not {}: {why}",
                self.class
            )));
        }
        for &ax in &self.axioms {
            if let Err(c) = check_relation(&rel, ax) {
                return Err(Error::Invariant(format!("decoded relation violates {ax}: {c}")));
            }
        }
        Ok(rel)
    }
}

fn geq_var(u: &Universe, a: SubsetId, b: SubsetId) -> u32 {
    (1 + a.index() * u.subset_count() + b.index()) as u32
}

/// Class constraints plus every ground instance of `axioms`, as CNF.
pub fn encode_ranksets(u: &Universe, axioms: &[AxiomId], class: RelationClass) -> RanksetsEncoding {
    let k = u.subset_count();
    let subsets: Vec<SubsetId> = u.subsets().collect();
    let g = |a, b| geq_var(u, a, b);
    let mut cnf = Cnf::new((k * k) as u32);
    let mut add = |c: Vec<Literal>| cnf.add_clause(c).expect("variables in range");

    for &a in &subsets {
        for &b in &subsets {
            if a == b {
                continue;
            }
            for &c in &subsets {
                if b != c {
                    add(vec![
                        Literal::neg(g(a, b)),
                        Literal::neg(g(b, c)),
                        Literal::pos(g(a, c)),
                    ]);
                }
            }
        }
    }
    if class >= RelationClass::WeakOrder {
        for &a in &subsets {
            add(vec![Literal::pos(g(a, a))]);
            for &b in &subsets {
                if a < b {
                    add(vec![Literal::pos(g(a, b)), Literal::pos(g(b, a))]);
                }
            }
        }
    }
    if class == RelationClass::LinearOrder {
        for &a in &subsets {
            for &b in &subsets {
                if a < b {
                    add(vec![Literal::neg(g(a, b)), Literal::neg(g(b, a))]);
                }
            }
        }
    }
    let mut axioms = axioms.to_vec();
    axioms.sort();
    axioms.dedup();
    for &ax in &axioms {
        for c in ground_axiom(u, ax).constraints {
            // A ▷ B fails iff ¬geq(A,B) ∨ geq(B,A).
            let guard: Vec<Literal> = match c.premise {
                Some((a, b)) => vec![Literal::neg(g(a, b)), Literal::pos(g(b, a))],
                None => Vec::new(),
            };
            let with = |l: Literal| {
                let mut v = guard.clone();
                v.push(l);
                v
            };
            match c.conclusion {
                Conclusion::Strict(a, b) => {
                    add(with(Literal::pos(g(a, b))));
                    add(with(Literal::neg(g(b, a))));
                }
                Conclusion::Weak(a, b) => add(with(Literal::pos(g(a, b)))),
            }
        }
    }
    cnf.canonicalize();
    for &a in &subsets {
        for &b in &subsets {
            cnf.set_var_name(g(a, b), format!("{a}>={b}"))
                .expect("variables in range");
        }
    }
    RanksetsEncoding {
        cnf,
        universe: u.clone(),
        axioms,
        class,
    }
}

/// Status of one (axiom subset, universe size) check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Sat,
    Unsat,
    /// The solver hit its conflict limit.
    Timeout,
}

/// Solves one encoding; `None` limit means run to completion.
pub fn check_subset(
    u: &Universe,
    axioms: &[AxiomId],
    class: RelationClass,
    conflict_limit: Option<u64>,
) -> Result<(CheckStatus, Option<SetRelation>)> {
    let enc = encode_ranksets(u, axioms, class);
    match solve_with_limit(&enc.cnf, conflict_limit) {
        None => Ok((CheckStatus::Timeout, None)),
        Some((SolveResult::Unsat, _)) => Ok((CheckStatus::Unsat, None)),
        Some((SolveResult::Sat(model), _)) => Ok((CheckStatus::Sat, Some(enc.decode(&model)?))),
    }
}

/// Options for [`find_inconsistent_subsets`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DiscoveryOptions {
    /// Skip strict supersets of subsets already found inconsistent.
    pub prune: bool,
    pub conflict_limit: Option<u64>,
}

/// Per-size status of one axiom subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeStatus {
    pub m: usize,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetResult {
    pub axioms: Vec<AxiomId>,
    pub class: RelationClass,
    /// Sizes checked in increasing order, stopping at the first UNSAT.
    pub per_m: Vec<SizeStatus>,
    /// Least universe size at which the subset is inconsistent.
    pub minimal_m: Option<usize>,
    /// Skipped because a strict subset is already inconsistent.
    pub pruned: bool,
    /// A satisfying relation at the largest size checked, when consistent there.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscoveryReport {
    pub u_max: usize,
    pub class: RelationClass,
    pub catalog: Vec<AxiomId>,
    pub options: DiscoveryOptions,
    pub results: Vec<SubsetResult>,
}

impl DiscoveryReport {
    pub fn result_for(&self, axioms: &[AxiomId]) -> Option<&SubsetResult> {
        let mut key = axioms.to_vec();
        key.sort();
        self.results.iter().find(|r| r.axioms == key)
    }

    /// Subsets that are inconsistent at some size.
    pub fn impossibilities(&self) -> impl Iterator<Item = &SubsetResult> {
        self.results.iter().filter(|r| r.minimal_m.is_some())
    }
}

fn run_subset(axioms: Vec<AxiomId>, u_max: usize, class: RelationClass, limit: Option<u64>) -> Result<SubsetResult> {
    let mut per_m = Vec::new();
    let mut minimal_m = None;
    let mut witness = None;
    for m in MIN_OBJECTS..=u_max {
        let (status, model) = check_subset(&Universe::new(m)?, &axioms, class, limit)?;
        per_m.push(SizeStatus { m, status });
        witness = model.map(|r| r.to_string());
        if status == CheckStatus::Unsat {
            minimal_m = Some(m);
            break;
        }
    }
    Ok(SubsetResult {
        axioms,
        class,
        per_m,
        minimal_m,
        pruned: false,
        witness,
    })
}

/// For every nonempty subset of `catalog`, the least universe size
/// `m <= u_max` at which the axioms admit no relation of `class`.
///
/// Subsets are processed by increasing size (each size in parallel) and
/// reported in that order, ties broken by catalog position.
pub fn find_inconsistent_subsets(
    u_max: usize,
    catalog: &[AxiomId],
    class: RelationClass,
    options: DiscoveryOptions,
) -> Result<DiscoveryReport> {
    if !(MIN_OBJECTS..=MAX_OBJECTS).contains(&u_max) {
        return Err(domain(format!(
            "u_max must be in {MIN_OBJECTS}..={MAX_OBJECTS}, got {u_max}"
        )));
    }
    let mut catalog = catalog.to_vec();
    catalog.sort();
    catalog.dedup();
    if catalog.is_empty() {
        return Err(domain("axiom catalog is empty"));
    }
    let mut masks: Vec<u32> = (1..1u32 << catalog.len()).collect();
    masks.sort_by_key(|&mask| (mask.count_ones(), mask.reverse_bits()));
    let subset = |mask: u32| -> Vec<AxiomId> {
        catalog
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
            .collect()
    };

    let mut results: Vec<(u32, SubsetResult)> = Vec::new();
    for size in 1..=catalog.len() as u32 {
        let batch: Vec<u32> = masks.iter().copied().filter(|m| m.count_ones() == size).collect();
        let done = batch
            .into_par_iter()
            .map(|mask| {
                let inconsistent_below = options.prune
                    && results
                        .iter()
                        .any(|(m, r)| r.minimal_m.is_some() && m & mask == *m && *m != mask);
                if inconsistent_below {
                    Ok((
                        mask,
                        SubsetResult {
                            axioms: subset(mask),
                            class,
                            per_m: Vec::new(),
                            minimal_m: None,
                            pruned: true,
                            witness: None,
                        },
                    ))
                } else {
                    run_subset(subset(mask), u_max, class, options.conflict_limit).map(|r| (mask, r))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        results.extend(done);
    }
    Ok(DiscoveryReport {
        u_max,
        class,
        catalog,
        options,
        results: results.into_iter().map(|(_, r)| r).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satkit::solve;

    fn s(objects: &[usize]) -> SubsetId {
        SubsetId::of(objects)
    }

    #[test]
    fn minmax_examples() {
        let u = Universe::new(3).unwrap();
        let r = minmax_relation(&u);
        assert!(r.strictly(s(&[1]), s(&[0, 2])));
        for a in u.subsets() {
            assert!(r.geq(a, a));
        }
        // Same worst and best element: indifferent.
        assert!(r.geq(s(&[0, 2]), s(&[0, 1, 2])) && r.geq(s(&[0, 1, 2]), s(&[0, 2])));
    }

    #[test]
    fn minmax_is_a_weak_order() {
        for m in 2..=5 {
            let u = Universe::new(m).unwrap();
            let r = minmax_relation(&u);
            assert_eq!(r.class_violation(RelationClass::WeakOrder), None);
            assert_eq!(r.class_violation(RelationClass::LinearOrder).is_none(), m == 2, "m={m}");
        }
    }

    #[test]
    fn ground_examples() {
        let u2 = Universe::new(2).unwrap();
        let g = ground_axiom(&u2, AxiomId::SimpleDominance);
        assert_eq!(
            g.constraints.iter().map(|c| c.conclusion).collect::<Vec<_>>(),
            vec![
                Conclusion::Strict(s(&[0]), s(&[0, 1])),
                Conclusion::Strict(s(&[0, 1]), s(&[1]))
            ]
        );
        assert!(!g.vacuous);
        for ax in [
            AxiomId::UncertaintyAversion,
            AxiomId::SimpleTopMonotonicity,
            AxiomId::UncertaintyAppeal,
        ] {
            let g = ground_axiom(&u2, ax);
            assert!(g.constraints.is_empty() && g.vacuous);
        }

        let u3 = Universe::new(3).unwrap();
        let av = ground_axiom(&u3, AxiomId::UncertaintyAversion);
        assert_eq!(av.constraints.len(), 1);
        assert_eq!(av.constraints[0].conclusion, Conclusion::Strict(s(&[1]), s(&[0, 2])));
        let ap = ground_axiom(&u3, AxiomId::UncertaintyAppeal);
        assert_eq!(ap.constraints[0].conclusion, Conclusion::Strict(s(&[0, 2]), s(&[1])));
        assert_eq!(
            ground_axiom(&u3, AxiomId::SimpleTopMonotonicity).constraints[0].conclusion,
            Conclusion::Strict(s(&[0, 2]), s(&[1, 2]))
        );
    }

    #[test]
    fn grounding_is_canonical() {
        let u = Universe::new(4).unwrap();
        for ax in AxiomId::ALL {
            let g = ground_axiom(&u, ax);
            assert!(g.constraints.windows(2).all(|w| w[0].key() < w[1].key()), "{ax}");
            assert_eq!(g, ground_axiom(&u, ax));
        }
    }

    #[test]
    fn minmax_passes_dominance_aversion_topmono() {
        for m in 2..=5 {
            let r = minmax_relation(&Universe::new(m).unwrap());
            for ax in [
                AxiomId::SimpleDominance,
                AxiomId::UncertaintyAversion,
                AxiomId::SimpleTopMonotonicity,
            ] {
                assert_eq!(check_relation(&r, ax), Ok(()), "m={m} {ax}");
            }
        }
    }

    #[test]
    fn encoding_sizes() {
        let u = Universe::new(4).unwrap();
        let enc = encode_ranksets(&u, &[], RelationClass::Transitive);
        assert_eq!(enc.cnf.num_vars(), 225);
        assert!(enc.cnf.num_clauses() <= 15usize.pow(3));
        assert_eq!(enc.cnf.num_clauses(), 15 * 14 * 14);
    }

    #[test]
    fn aversion_and_appeal_conflict() {
        let u = Universe::new(3).unwrap();
        let enc = encode_ranksets(
            &u,
            &[AxiomId::UncertaintyAversion, AxiomId::UncertaintyAppeal],
            RelationClass::Transitive,
        );
        assert_eq!(solve(&enc.cnf), SolveResult::Unsat);
        let u2 = Universe::new(2).unwrap();
        let enc = encode_ranksets(
            &u2,
            &[AxiomId::UncertaintyAversion, AxiomId::UncertaintyAppeal],
            RelationClass::Transitive,
        );
        assert!(solve(&enc.cnf).is_sat());
    }

    #[test]
    fn minmax_satisfies_dominance_encoding() {
        let u = Universe::new(4).unwrap();
        let r = minmax_relation(&u);
        let enc = encode_ranksets(&u, &[AxiomId::SimpleDominance], RelationClass::WeakOrder);
        let k = u.subset_count();
        let mut model = Assignment::all_false((k * k) as u32);
        for a in u.subsets() {
            for b in u.subsets() {
                model.set(enc.var(a, b), r.geq(a, b));
            }
        }
        assert!(enc.cnf.is_satisfied_by(&model));
        assert_eq!(
            enc.decode(&model).unwrap(),
            SetRelation {
                class: RelationClass::WeakOrder,
                ..r
            }
        );
    }

    #[test]
    fn decoded_models_satisfy_their_axioms() {
        let u = Universe::new(3).unwrap();
        for class in [
            RelationClass::Transitive,
            RelationClass::WeakOrder,
            RelationClass::LinearOrder,
        ] {
            for mask in 1u32..32 {
                let axioms: Vec<AxiomId> = AxiomId::ALL
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &a)| a)
                    .collect();
                // decode() re-checks class and axioms.
                let (status, rel) = check_subset(&u, &axioms, class, None).unwrap();
                assert_eq!(status == CheckStatus::Sat, rel.is_some());
            }
        }
    }

    #[test]
    fn parses_names() {
        assert_eq!(
            parse_axioms("dominance, independence,aversion,topmono").unwrap(),
            AxiomId::MINMAX_FOUR.to_vec()
        );
        assert_eq!(
            "UncertaintyAppeal".parse::<AxiomId>().unwrap(),
            AxiomId::UncertaintyAppeal
        );
        assert!("nope".parse::<AxiomId>().is_err());
        assert_eq!("linear".parse::<RelationClass>().unwrap(), RelationClass::LinearOrder);
        assert!(Universe::new(1).is_err() && Universe::new(7).is_err());
        assert!(SubsetId::new(0, 3).is_err() && SubsetId::new(8, 3).is_err());
        assert_eq!(s(&[0, 2]).to_string(), "{a,c}");
    }

    #[test]
    fn discovery_small() {
        let report = find_inconsistent_subsets(
            3,
            &[
                AxiomId::UncertaintyAversion,
                AxiomId::UncertaintyAppeal,
                AxiomId::SimpleDominance,
            ],
            RelationClass::LinearOrder,
            DiscoveryOptions::default(),
        )
        .unwrap();
        assert_eq!(report.results.len(), 7);
        let pair = report
            .result_for(&[AxiomId::UncertaintyAppeal, AxiomId::UncertaintyAversion])
            .unwrap();
        assert_eq!(pair.minimal_m, Some(3));
        assert_eq!(
            pair.per_m[0],
            SizeStatus {
                m: 2,
                status: CheckStatus::Sat
            }
        );
        let dom = report.result_for(&[AxiomId::SimpleDominance]).unwrap();
        assert_eq!(dom.minimal_m, None);
        assert!(dom.witness.is_some());

        let pruned = find_inconsistent_subsets(
            3,
            &[
                AxiomId::UncertaintyAversion,
                AxiomId::UncertaintyAppeal,
                AxiomId::SimpleDominance,
            ],
            RelationClass::LinearOrder,
            DiscoveryOptions {
                prune: true,
                conflict_limit: None,
            },
        )
        .unwrap();
        let all3 = pruned
            .result_for(
                &AxiomId::ALL[..1]
                    .iter()
                    .chain(&AxiomId::ALL[2..4])
                    .copied()
                    .collect::<Vec<_>>(),
            )
            .unwrap();
        assert!(all3.pruned);
        assert_eq!(all3.minimal_m, None);
    }
}
