//! Exhaustive enumeration of monodromy tuples at tiny degree.
//!
//! A tuple `(g_1, ..., g_r)` in `S_d` with `g_1 ... g_r = 1` and transitive
//! generated group is the combinatorial shadow of a connected degree-`d`
//! cover of the line branched at `r` points, with local cycle types the
//! cycle types of the entries. The last entry is forced by the others, so
//! the raw space is `S_d^(r-1)`, walked in lexicographic order. Everything
//! downstream (the branch-bound check, the genus census) re-derives its
//! facts from the emitted tuples rather than trusting the construction.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::group::{symmetric_group_elements, GroupError, PermGroup};
use crate::hurwitz::{rh_genus, zariski_bound_parts, BranchData, HurwitzError};
use crate::perm::packed::{self, Packed};
use crate::perm::Permutation;

/// Degree ceiling for tuple enumeration.
pub const MAX_TUPLE_DEGREE: usize = 6;

/// Ceiling on the raw enumeration space `|S_d|^(r-1)`.
pub const MAX_TUPLE_SPACE: u64 = 450_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonodromyError {
    #[error("tuple enumeration budget exceeded: degree {degree} with {points} points spans {space} raw tuples (degree cap {max_degree}, space cap {max_space})")]
    BudgetExceeded {
        degree: usize,
        points: usize,
        space: u128,
        max_degree: usize,
        max_space: u64,
    },
    #[error("a tuple needs at least one point")]
    NoPoints,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
}

/// Which tuples the stream emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TupleFilter {
    /// Every entry differs from the identity (branch points are genuine).
    pub nonidentity: bool,
    /// The generated group is transitive.
    pub transitive: bool,
    /// The generated group is solvable.
    pub solvable: bool,
    /// The generated group is primitive.
    pub primitive: bool,
}

impl Default for TupleFilter {
    fn default() -> Self {
        TupleFilter {
            nonidentity: true,
            transitive: false,
            solvable: false,
            primitive: false,
        }
    }
}

impl TupleFilter {
    pub fn none() -> Self {
        TupleFilter {
            nonidentity: false,
            transitive: false,
            solvable: false,
            primitive: false,
        }
    }

    pub fn needs_group_facts(&self) -> bool {
        self.transitive || self.solvable || self.primitive
    }
}

/// A product-one tuple with its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyTuple {
    degree: usize,
    entries: Vec<Permutation>,
}

impl MonodromyTuple {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &[Permutation] {
        &self.entries
    }

    /// Left-to-right product of the entries.
    pub fn product(&self) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for g in &self.entries {
            acc = acc.compose(g).expect("uniform degree");
        }
        acc
    }

    /// The group generated by the entries.
    pub fn group(&self) -> Result<PermGroup, GroupError> {
        PermGroup::new(self.degree, self.entries.clone())
    }

    /// Branch contributions of the entries.
    pub fn contributions(&self) -> Vec<usize> {
        self.entries.iter().map(|g| g.branch_contribution()).collect()
    }

    /// Genus of the cover of the line with these local monodromies;
    /// identity entries are not branch points and contribute nothing.
    pub fn genus(&self) -> Result<u64, HurwitzError> {
        let branch_points = self
            .entries
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| g.cycle_type())
            .collect();
        let data = BranchData::new(self.degree as u64, 0, branch_points)?;
        rh_genus(&data)
    }

    /// Entrywise conjugate by `h`.
    pub fn conjugate(&self, h: &Permutation) -> Result<MonodromyTuple, GroupError> {
        let inv = h.inverse();
        let entries = self
            .entries
            .iter()
            .map(|g| h.compose(g)?.compose(&inv))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MonodromyTuple {
            degree: self.degree,
            entries,
        })
    }
}

fn check_budget(degree: usize, points: usize) -> Result<u128, MonodromyError> {
    if points == 0 {
        return Err(MonodromyError::NoPoints);
    }
    let factorial: u128 = (1..=degree as u128).product();
    let space = factorial.checked_pow(points as u32 - 1);
    match space {
        Some(space) if degree <= MAX_TUPLE_DEGREE && space <= MAX_TUPLE_SPACE as u128 => Ok(space),
        _ => Err(MonodromyError::BudgetExceeded {
            degree,
            points,
            space: space.unwrap_or(u128::MAX),
            max_degree: MAX_TUPLE_DEGREE,
            max_space: MAX_TUPLE_SPACE,
        }),
    }
}

/// Deterministic stream of all product-one tuples passing the filter, in
/// lexicographic order of the free entries' image vectors.
pub fn enumerate_tuples(
    degree: usize,
    points: usize,
    filter: TupleFilter,
) -> Result<TupleStream, MonodromyError> {
    check_budget(degree, points)?;
    Ok(TupleStream {
        degree,
        points,
        filter,
        table: symmetric_group_elements(degree),
        odometer: vec![0; points - 1],
        done: false,
        facts: FactsCache::new(degree),
    })
}

pub struct TupleStream {
    degree: usize,
    points: usize,
    filter: TupleFilter,
    table: Vec<Packed>,
    odometer: Vec<usize>,
    done: bool,
    facts: FactsCache,
}

impl TupleStream {
    fn advance(&mut self) {
        for slot in self.odometer.iter_mut().rev() {
            *slot += 1;
            if *slot < self.table.len() {
                return;
            }
            *slot = 0;
        }
        self.done = true;
    }

    fn current(&mut self) -> Option<MonodromyTuple> {
        let d = self.degree;
        let id = packed::identity(d);
        let mut product = id;
        for &i in &self.odometer {
            if self.filter.nonidentity && self.table[i] == id {
                return None;
            }
            product = packed::compose(&product, &self.table[i], d);
        }
        let last = packed::inverse(&product, d);
        if self.filter.nonidentity && self.points > 0 && last == id {
            return None;
        }
        if self.filter.needs_group_facts() {
            let mut gens: Vec<u64> = self
                .odometer
                .iter()
                .map(|&i| packed::pack(&self.table[i]))
                .chain(std::iter::once(packed::pack(&last)))
                .collect();
            gens.sort_unstable();
            gens.dedup();
            let facts = self.facts.facts_for(&gens);
            if (self.filter.transitive && !facts.transitive)
                || (self.filter.solvable && !facts.solvable)
                || (self.filter.primitive && !facts.primitive)
            {
                return None;
            }
        }
        let entries: Vec<Permutation> = self
            .odometer
            .iter()
            .map(|&i| Permutation::from_key(packed::pack(&self.table[i]), d))
            .chain(std::iter::once(Permutation::from_key(
                packed::pack(&last),
                d,
            )))
            .collect();
        let tuple = MonodromyTuple { degree: d, entries };
        // Re-check the defining identity rather than trusting construction.
        debug_assert!(tuple.product().is_identity());
        Some(tuple)
    }
}

impl Iterator for TupleStream {
    type Item = MonodromyTuple;

    fn next(&mut self) -> Option<MonodromyTuple> {
        while !self.done {
            let item = self.current();
            self.advance();
            if let Some(t) = item {
                return Some(t);
            }
        }
        None
    }
}

/// Structural facts about a generated subgroup, memoized two ways: by
/// generator set (cheap hit for repeated tuples) and by element-set
/// fingerprint (one predicate evaluation per distinct subgroup).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupFacts {
    pub order: u64,
    pub transitive: bool,
    pub solvable: bool,
    pub primitive: bool,
}

struct FactsCache {
    degree: usize,
    by_genset: HashMap<GenKey, GroupFacts>,
    by_subgroup: HashMap<(u64, u64), GroupFacts>,
}

/// Sorted generator keys padded to fixed width; within budget a tuple never
/// has more than eight distinct entries.
type GenKey = [u64; 8];

fn gen_key(gens: &[u64]) -> GenKey {
    assert!(gens.len() <= 8, "generator sets within budget fit in 8 slots");
    let mut key = [u64::MAX; 8];
    key[..gens.len()].copy_from_slice(gens);
    key
}

impl FactsCache {
    fn new(degree: usize) -> Self {
        FactsCache {
            degree,
            by_genset: HashMap::new(),
            by_subgroup: HashMap::new(),
        }
    }

    fn facts_for(&mut self, sorted_gens: &[u64]) -> GroupFacts {
        let key = gen_key(sorted_gens);
        if let Some(&f) = self.by_genset.get(&key) {
            return f;
        }
        let keys = crate::group::close_keys(self.degree, sorted_gens, u64::MAX)
            .expect("closure inside a symmetric group is finite");
        let fp = fingerprint(&keys);
        let facts = match self.by_subgroup.get(&fp) {
            Some(&f) => f,
            None => {
                let gens: Vec<Permutation> = sorted_gens
                    .iter()
                    .map(|&k| Permutation::from_key(k, self.degree))
                    .collect();
                let order = keys.len() as u64;
                let group =
                    PermGroup::with_known_elements(self.degree, gens, keys)
                        .expect("valid generators");
                let transitive = group.is_transitive();
                let facts = GroupFacts {
                    order,
                    transitive,
                    solvable: group.is_solvable().expect("closure cached"),
                    primitive: transitive && group.is_primitive(),
                };
                self.by_subgroup.insert(fp, facts);
                facts
            }
        };
        self.by_genset.insert(key, facts);
        facts
    }
}

fn fingerprint(keys: &[u64]) -> (u64, u64) {
    const PRIME: u64 = 0x100000001b3;
    let mut a: u64 = 0xcbf29ce484222325;
    let mut b: u64 = 0x9e3779b97f4a7c15;
    for &k in keys {
        for byte in k.to_le_bytes() {
            a = (a ^ byte as u64).wrapping_mul(PRIME);
            b = (b ^ byte as u64).wrapping_mul(PRIME ^ 0xff51afd7ed558ccd);
        }
    }
    (a, b)
}

/// Memoized access to the structural facts of tuples' generated groups, for
/// callers that classify a stream of tuples.
pub struct TupleInspector {
    cache: FactsCache,
}

impl TupleInspector {
    pub fn new(degree: usize) -> Self {
        TupleInspector {
            cache: FactsCache::new(degree),
        }
    }

    pub fn facts(&mut self, tuple: &MonodromyTuple) -> GroupFacts {
        let mut gens: Vec<u64> = tuple.entries.iter().map(|g| g.key()).collect();
        gens.sort_unstable();
        gens.dedup();
        self.cache.facts_for(&gens)
    }
}

/// Outcome of checking the branch bounds on every primitive solvable tuple.
#[derive(Debug, Clone, Serialize)]
pub struct ZariskiTupleReport {
    pub degree: usize,
    pub points: usize,
    /// Tuples with nonidentity entries and product one.
    pub tuples_seen: u64,
    pub transitive: u64,
    pub transitive_solvable: u64,
    pub primitive_solvable: u64,
    /// Branch-multiplicity lower bound in force, when the degree admits one.
    pub branch_bound: Option<u64>,
    pub fixed_point_bound: Option<u64>,
    pub mersenne_bound: Option<u64>,
    /// Extremes observed over primitive solvable tuples.
    pub min_branch_seen: Option<u64>,
    pub max_fixed_seen: Option<u64>,
    pub violations: Vec<String>,
}

/// Enumerates every product-one tuple with nonidentity entries and, for each
/// one whose group is primitive and solvable, asserts the branch bound and
/// the fixed-point bounds on every entry.
pub fn check_zariski_on_tuples(
    degree: usize,
    points: usize,
) -> Result<ZariskiTupleReport, MonodromyError> {
    check_budget(degree, points)?;
    let bound_parts = zariski_bound_parts(degree as u64).ok();
    let (branch_bound, fixed_point_bound, mersenne_bound) = match &bound_parts {
        Some(b) => (
            Some(b.effective),
            Some(b.prime.pow(b.exponent - 1)),
            b.mersenne.map(|_| 2),
        ),
        None => (None, None, None),
    };

    let mut report = ZariskiTupleReport {
        degree,
        points,
        tuples_seen: 0,
        transitive: 0,
        transitive_solvable: 0,
        primitive_solvable: 0,
        branch_bound,
        fixed_point_bound,
        mersenne_bound,
        min_branch_seen: None,
        max_fixed_seen: None,
        violations: Vec::new(),
    };

    let mut facts_cache = FactsCache::new(degree);
    for tuple in enumerate_tuples(degree, points, TupleFilter::default())? {
        report.tuples_seen += 1;
        let mut gens: Vec<u64> = tuple.entries.iter().map(|g| g.key()).collect();
        gens.sort_unstable();
        gens.dedup();
        let facts = facts_cache.facts_for(&gens);
        if !facts.transitive {
            continue;
        }
        report.transitive += 1;
        if !facts.solvable {
            continue;
        }
        report.transitive_solvable += 1;
        if !facts.primitive {
            continue;
        }
        report.primitive_solvable += 1;

        let Some((l, fp_bound)) = branch_bound.zip(fixed_point_bound) else {
            report.violations.push(format!(
                "primitive solvable tuple at non-prime-power degree {degree}: {}",
                describe(&tuple)
            ));
            continue;
        };
        for g in tuple.entries() {
            let b = g.branch_contribution() as u64;
            let fixed = g.fixed_point_count() as u64;
            report.min_branch_seen =
                Some(report.min_branch_seen.map_or(b, |m| m.min(b)));
            report.max_fixed_seen =
                Some(report.max_fixed_seen.map_or(fixed, |m| m.max(fixed)));
            if b < l {
                report.violations.push(format!(
                    "branch contribution {b} below bound {l} for entry {g} in {}",
                    describe(&tuple)
                ));
            }
            if fixed > fp_bound {
                report.violations.push(format!(
                    "{fixed} fixed points above bound {fp_bound} for entry {g} in {}",
                    describe(&tuple)
                ));
            }
            if let Some(mb) = mersenne_bound {
                if fixed > mb {
                    report.violations.push(format!(
                        "{fixed} fixed points above Mersenne bound {mb} for entry {g} in {}",
                        describe(&tuple)
                    ));
                }
            }
        }
    }
    Ok(report)
}

fn describe(tuple: &MonodromyTuple) -> String {
    let parts: Vec<String> = tuple.entries().iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Multiset of genera per structural class of the generated group.
#[derive(Debug, Clone, Serialize)]
pub struct GenusCensus {
    pub degree: usize,
    pub points: usize,
    pub transitive: BTreeMap<u64, u64>,
    pub transitive_solvable: BTreeMap<u64, u64>,
    pub primitive_solvable: BTreeMap<u64, u64>,
}

/// Genus distribution of the covers realized by product-one transitive
/// tuples with nonidentity entries.
pub fn genus_census(degree: usize, points: usize) -> Result<GenusCensus, MonodromyError> {
    check_budget(degree, points)?;
    let mut census = GenusCensus {
        degree,
        points,
        transitive: BTreeMap::new(),
        transitive_solvable: BTreeMap::new(),
        primitive_solvable: BTreeMap::new(),
    };
    let mut facts_cache = FactsCache::new(degree);
    for tuple in enumerate_tuples(degree, points, TupleFilter::default())? {
        let mut gens: Vec<u64> = tuple.entries.iter().map(|g| g.key()).collect();
        gens.sort_unstable();
        gens.dedup();
        let facts = facts_cache.facts_for(&gens);
        if !facts.transitive {
            continue;
        }
        let genus = tuple.genus()?;
        *census.transitive.entry(genus).or_insert(0) += 1;
        if facts.solvable {
            *census.transitive_solvable.entry(genus).or_insert(0) += 1;
            if facts.primitive {
                *census.primitive_solvable.entry(genus).or_insert(0) += 1;
            }
        }
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(degree: usize, points: usize, filter: TupleFilter) -> u64 {
        enumerate_tuples(degree, points, filter).unwrap().count() as u64
    }

    #[test]
    fn unfiltered_count_is_a_power_of_the_group_order() {
        // The last entry is forced, so the raw count is |S_d|^(r-1).
        assert_eq!(count(2, 3, TupleFilter::none()), 4);
        assert_eq!(count(3, 2, TupleFilter::none()), 6);
        assert_eq!(count(3, 3, TupleFilter::none()), 36);
        assert_eq!(count(4, 2, TupleFilter::none()), 24);
    }

    #[test]
    fn degree_two_with_two_points_forces_the_transposition() {
        let tuples: Vec<_> =
            enumerate_tuples(2, 2, TupleFilter::default()).unwrap().collect();
        assert_eq!(tuples.len(), 1);
        let swap = Permutation::parse("(1 2)", 2).unwrap();
        assert_eq!(tuples[0].entries(), &[swap.clone(), swap]);
    }

    #[test]
    fn degree_three_pairs_are_the_mutually_inverse_three_cycles() {
        let filter = TupleFilter {
            transitive: true,
            ..TupleFilter::default()
        };
        let tuples: Vec<_> = enumerate_tuples(3, 2, filter).unwrap().collect();
        assert_eq!(tuples.len(), 2);
        for t in &tuples {
            assert_eq!(t.entries()[0], t.entries()[1].inverse());
            assert_eq!(t.entries()[0].cycle_type().parts(), &[3]);
        }
    }

    #[test]
    fn five_cycle_triples_realize_genus_two() {
        let filter = TupleFilter {
            transitive: true,
            ..TupleFilter::default()
        };
        let mut found = false;
        for t in enumerate_tuples(5, 3, filter).unwrap() {
            if t.entries().iter().all(|g| g.cycle_type().parts() == [5]) {
                assert_eq!(t.genus().unwrap(), 2);
                found = true;
                break;
            }
        }
        assert!(found, "a triple of 5-cycles with product one exists");
    }

    #[test]
    fn stream_is_lexicographically_ordered_and_rechecked() {
        let tuples: Vec<_> =
            enumerate_tuples(3, 3, TupleFilter::default()).unwrap().collect();
        for t in &tuples {
            assert!(t.product().is_identity());
            assert!(t.entries().iter().all(|g| !g.is_identity()));
        }
        let mut sorted = tuples.clone();
        sorted.sort_by(|a, b| {
            let ka: Vec<_> = a.entries().iter().map(|g| g.images().to_vec()).collect();
            let kb: Vec<_> = b.entries().iter().map(|g| g.images().to_vec()).collect();
            ka.cmp(&kb)
        });
        assert_eq!(
            tuples.iter().map(describe).collect::<Vec<_>>(),
            sorted.iter().map(describe).collect::<Vec<_>>()
        );
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_tuples(7, 2, TupleFilter::none()),
            Err(MonodromyError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            enumerate_tuples(6, 5, TupleFilter::none()),
            Err(MonodromyError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            enumerate_tuples(3, 0, TupleFilter::none()),
            Err(MonodromyError::NoPoints)
        ));
        // Low degree allows many points within the space cap.
        assert_eq!(count(2, 6, TupleFilter::none()), 32);
    }

    #[test]
    fn degree_two_six_points_is_the_hyperelliptic_genus_two_curve() {
        let census = genus_census(2, 6).unwrap();
        assert_eq!(census.transitive.get(&2), Some(&1));
        assert_eq!(census.transitive.len(), 1);
    }

    #[test]
    fn conjugation_preserves_the_invariants() {
        let filter = TupleFilter {
            transitive: true,
            ..TupleFilter::default()
        };
        let tuple = enumerate_tuples(4, 3, filter).unwrap().next().unwrap();
        let h = Permutation::parse("(1 3 2)", 4).unwrap();
        let conj = tuple.conjugate(&h).unwrap();
        assert!(conj.product().is_identity());
        assert_eq!(conj.genus().unwrap(), tuple.genus().unwrap());
        assert_eq!(conj.contributions(), tuple.contributions());
        assert!(conj.group().unwrap().is_transitive());
    }

    #[test]
    fn zariski_check_is_clean_at_degree_four() {
        let report = check_zariski_on_tuples(4, 3).unwrap();
        assert!(report.violations.is_empty());
        assert!(report.primitive_solvable > 0);
        // Both bounds are attained at degree 4.
        assert_eq!(report.min_branch_seen, Some(1));
        assert_eq!(report.max_fixed_seen, Some(2));
        assert_eq!(report.branch_bound, Some(1));
        assert_eq!(report.fixed_point_bound, Some(2));
        assert_eq!(report.mersenne_bound, Some(2));
    }

    #[test]
    fn genus_census_at_degree_two() {
        let census = genus_census(2, 2).unwrap();
        assert_eq!(census.transitive.get(&0), Some(&1));
        assert_eq!(census.transitive.len(), 1);
    }

    #[test]
    fn primitive_solvable_genera_respect_the_branch_bound() {
        // Total branching of an r-point primitive solvable cover is at
        // least l * r, so 2g - 2 + 2d >= l * r for every realized genus.
        let census = genus_census(5, 3).unwrap();
        assert!(!census.primitive_solvable.is_empty());
        let l = zariski_bound_parts(5).unwrap().effective;
        for &genus in census.primitive_solvable.keys() {
            assert!(2 * genus as i64 - 2 + 10 >= (l * 3) as i64, "genus {genus}");
            assert!(genus <= 2);
        }
    }
}
