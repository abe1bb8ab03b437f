//! Generated permutation groups with exhaustive element enumeration.
//!
//! The element list is the base representation: every structural predicate
//! (solvability, primitivity, normal-subgroup structure, fixed-point maxima)
//! is answered by direct inspection of the closure, capped at
//! [`DEFAULT_ELEMENT_CAP`]. Exhaustion is the point: these lists double as
//! the trusted oracle for everything built on top. Target groups have degree
//! at most [`MAX_GROUP_DEGREE`] and order at most a few thousand.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::perm::{PermError, Permutation, MAX_PACKED_DEGREE};

/// Hard ceiling on the degree of a [`PermGroup`]; permutations of larger
/// degree do not pack into `u64` keys.
pub const MAX_GROUP_DEGREE: usize = MAX_PACKED_DEGREE;

/// Default cap on exhaustive element enumeration.
pub const DEFAULT_ELEMENT_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group degree {degree} exceeds the supported maximum {max}")]
    DegreeBudget { degree: usize, max: usize },
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generator degree mismatch: expected {expected}, found {found}")]
    GeneratorDegree { expected: usize, found: usize },
    #[error("group order exceeds the element cap {cap}")]
    OrderExceedsCap { cap: u64 },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("group is not primitive")]
    NotPrimitive,
    #[error("group is not solvable")]
    NotSolvable,
    #[error("operation requires a nontrivial group")]
    TrivialGroup,
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone)]
struct Closure {
    /// Sorted packed keys of every element (lexicographic on image vectors).
    keys: Vec<u64>,
}

impl Closure {
    fn contains(&self, key: u64) -> bool {
        self.keys.binary_search(&key).is_ok()
    }
}

/// A permutation group given by generators, with a lazily computed element
/// closure. Values are cheap to clone before the closure is computed; the
/// closure is filled at most once and shared afterwards.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    element_cap: u64,
    closure: OnceLock<Closure>,
}

impl PermGroup {
    /// Builds a group from a nonempty generator list of uniform degree.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        if degree == 0 || degree > MAX_GROUP_DEGREE {
            return Err(GroupError::DegreeBudget {
                degree,
                max: MAX_GROUP_DEGREE,
            });
        }
        if generators.is_empty() {
            return Err(GroupError::EmptyGenerators);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::GeneratorDegree {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            element_cap: DEFAULT_ELEMENT_CAP,
            closure: OnceLock::new(),
        })
    }

    /// Builds a group from cycle-notation generators.
    pub fn from_cycles(degree: usize, cycles: &[&str]) -> Result<Self, GroupError> {
        let gens = cycles
            .iter()
            .map(|c| Permutation::parse(c, degree))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(degree, gens)
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Result<Self, GroupError> {
        PermGroup::new(degree, vec![Permutation::identity(degree)])
    }

    /// Replaces the element cap (default [`DEFAULT_ELEMENT_CAP`]).
    pub fn with_element_cap(mut self, cap: u64) -> Self {
        self.element_cap = cap.max(1);
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn element_cap(&self) -> u64 {
        self.element_cap
    }

    fn ensure_closure(&self) -> Result<&Closure, GroupError> {
        if let Some(c) = self.closure.get() {
            if c.keys.len() as u64 > self.element_cap {
                return Err(GroupError::OrderExceedsCap {
                    cap: self.element_cap,
                });
            }
            return Ok(c);
        }
        let keys = close_generators(self.degree, &self.generators, self.element_cap)?;
        let _ = self.closure.set(Closure { keys });
        Ok(self.closure.get().expect("closure just set"))
    }

    /// Full element list in lexicographic order of image vectors.
    pub fn elements(&self) -> Result<Vec<Permutation>, GroupError> {
        let c = self.ensure_closure()?;
        Ok(c.keys
            .iter()
            .map(|&k| Permutation::from_key(k, self.degree))
            .collect())
    }

    pub(crate) fn element_keys(&self) -> Result<&[u64], GroupError> {
        Ok(&self.ensure_closure()?.keys)
    }

    pub fn order(&self) -> Result<u64, GroupError> {
        Ok(self.ensure_closure()?.keys.len() as u64)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool, GroupError> {
        if g.degree() != self.degree {
            return Ok(false);
        }
        Ok(self.ensure_closure()?.contains(g.key()))
    }

    /// Two groups are the same subgroup of the symmetric group when their
    /// element sets coincide.
    pub fn same_group(&self, other: &PermGroup) -> Result<bool, GroupError> {
        Ok(self.degree == other.degree
            && self.ensure_closure()?.keys == other.ensure_closure()?.keys)
    }

    /// Orbit of a point under the generators, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        assert!(x < self.degree);
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut queue = vec![x];
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    queue.push(z);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    /// True iff the orbit of point 0 is the whole domain.
    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// The finest G-invariant partition in which the two given points share a
    /// block, or [`BlockSearch::WholeSet`] when that partition is trivial.
    ///
    /// Standard union-find block refinement: merging the pair and repeatedly
    /// propagating merges through the generators converges to the minimal
    /// block system containing the pair.
    pub fn minimal_block_containing(
        &self,
        a: usize,
        b: usize,
    ) -> Result<BlockSearch, GroupError> {
        assert!(a < self.degree && b < self.degree && a != b);
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive);
        }
        let d = self.degree;
        let mut parent: Vec<usize> = (0..d).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        // Merge the classes of a and b, then propagate: whenever two points
        // share a class, their images under every generator must as well.
        // When classes merge, the losing representative is queued so the
        // identification with the new representative also gets propagated;
        // transitivity of the classes then covers every point merged earlier.
        let root_a = find(&mut parent, a);
        let root_b = find(&mut parent, b);
        parent[root_b] = root_a;
        let mut queue = vec![b];
        while let Some(y) = queue.pop() {
            let rep = find(&mut parent, y);
            for g in &self.generators {
                let gy = g.apply(y);
                let grep = g.apply(rep);
                let ry = find(&mut parent, gy);
                let rr = find(&mut parent, grep);
                if ry != rr {
                    parent[ry] = rr;
                    queue.push(ry);
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index: Vec<Option<usize>> = vec![None; d];
        for x in 0..d {
            let r = find(&mut parent, x);
            match index[r] {
                Some(i) => blocks[i].push(x),
                None => {
                    index[r] = Some(blocks.len());
                    blocks.push(vec![x]);
                }
            }
        }
        if blocks.len() == 1 {
            return Ok(BlockSearch::WholeSet);
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(BlockSearch::System(BlockSystem {
            degree: d,
            blocks,
        }))
    }

    /// Transitive with no nontrivial block system: every pair `(0, x)`
    /// generates the whole-set partition.
    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        if self.degree == 1 {
            return true;
        }
        (1..self.degree).all(|x| {
            matches!(
                self.minimal_block_containing(0, x),
                Ok(BlockSearch::WholeSet)
            )
        })
    }

    /// The derived subgroup: normal closure of the commutators of the
    /// generators.
    pub fn derived_subgroup(&self) -> Result<PermGroup, GroupError> {
        let mut seeds = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                // [a, b] = a^-1 b^-1 a b
                let c = a
                    .inverse()
                    .compose(&b.inverse())?
                    .compose(a)?
                    .compose(b)?;
                seeds.push(c);
            }
        }
        let keys = normal_closure_keys(self.degree, &seeds, &self.generators, self.element_cap)?;
        self.subgroup_from_keys(&keys)
    }

    /// Derived series `G ⊇ G' ⊇ G'' ⊇ ...`, ending at the first repetition.
    pub fn derived_series(&self) -> Result<Vec<PermGroup>, GroupError> {
        let mut series = vec![self.clone()];
        loop {
            let current = series.last().expect("nonempty");
            let next = current.derived_subgroup()?;
            if next.order()? == current.order()? {
                break;
            }
            series.push(next);
        }
        Ok(series)
    }

    /// True iff the derived series reaches the trivial group.
    pub fn is_solvable(&self) -> Result<bool, GroupError> {
        Ok(self.derived_series()?.last().expect("nonempty").order()? == 1)
    }

    /// The stabilizer of a point, as a subgroup with a reduced generating set.
    pub fn stabilizer(&self, x: usize) -> Result<PermGroup, GroupError> {
        assert!(x < self.degree);
        let keys: Vec<u64> = self
            .element_keys()?
            .iter()
            .copied()
            .filter(|&k| Permutation::from_key(k, self.degree).apply(x) == x)
            .collect();
        self.subgroup_from_keys(&keys)
    }

    /// The centralizer of `g` inside this group: all elements commuting
    /// with `g`.
    pub fn centralizer_of(&self, g: &Permutation) -> Result<PermGroup, GroupError> {
        if g.degree() != self.degree {
            return Err(GroupError::GeneratorDegree {
                expected: self.degree,
                found: g.degree(),
            });
        }
        let mut keys = Vec::new();
        for &k in self.element_keys()? {
            let a = Permutation::from_key(k, self.degree);
            if a.compose(g)? == g.compose(&a)? {
                keys.push(k);
            }
        }
        self.subgroup_from_keys(&keys)
    }

    /// All minimal elements of the set of nontrivial normal subgroups,
    /// computed as inclusion-minimal normal closures of single elements.
    /// Every minimal normal subgroup is the normal closure of any of its
    /// nonidentity elements, so the scan is exhaustive.
    pub fn minimal_normal_subgroups(&self) -> Result<Vec<PermGroup>, GroupError> {
        let id_key = Permutation::identity(self.degree).key();
        let mut closures: Vec<Vec<u64>> = Vec::new();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        for &k in self.element_keys()? {
            if k == id_key {
                continue;
            }
            let g = Permutation::from_key(k, self.degree);
            let keys = normal_closure_keys(
                self.degree,
                std::slice::from_ref(&g),
                &self.generators,
                self.element_cap,
            )?;
            if seen.insert(keys.clone()) {
                closures.push(keys);
            }
        }
        let mut minimal: Vec<Vec<u64>> = Vec::new();
        'outer: for cand in &closures {
            for other in &closures {
                if other.len() < cand.len() && is_sorted_subset(other, cand) {
                    continue 'outer;
                }
            }
            minimal.push(cand.clone());
        }
        minimal.sort();
        minimal
            .iter()
            .map(|keys| self.subgroup_from_keys(keys))
            .collect()
    }

    /// `(true, Some(p))` iff abelian with every nonidentity element of prime
    /// order `p`; the trivial group reports `(true, None)`.
    pub fn is_elementary_abelian(&self) -> Result<(bool, Option<u64>), GroupError> {
        let elems = self.elements()?;
        for a in &self.generators {
            for b in &self.generators {
                if a.compose(b)? != b.compose(a)? {
                    return Ok((false, None));
                }
            }
        }
        let mut prime: Option<u64> = None;
        for g in &elems {
            if g.is_identity() {
                continue;
            }
            let o = g.order();
            if !is_prime(o) {
                return Ok((false, None));
            }
            match prime {
                None => prime = Some(o),
                Some(p) if p == o => {}
                Some(_) => return Ok((false, None)),
            }
        }
        Ok((true, prime))
    }

    /// Maximum fixed-point count over the nonidentity elements, with the
    /// lexicographically smallest witness attaining it.
    pub fn max_fixed_points(&self) -> Result<(usize, Permutation), GroupError> {
        let id_key = Permutation::identity(self.degree).key();
        let mut best: Option<(usize, Permutation)> = None;
        for &k in self.element_keys()? {
            if k == id_key {
                continue;
            }
            let g = Permutation::from_key(k, self.degree);
            let fp = g.fixed_point_count();
            match &best {
                Some((b, _)) if *b >= fp => {}
                _ => best = Some((fp, g)),
            }
        }
        best.ok_or(GroupError::TrivialGroup)
    }

    /// Verifies the structure a primitive solvable group must have: a unique
    /// minimal normal subgroup that is elementary abelian, complements the
    /// point stabilizer, and acts regularly, forcing the degree to be a prime
    /// power. An auxiliary flag records that the stabilizer contains no
    /// nontrivial normal subgroup of the whole group.
    pub fn verify_structure(&self) -> Result<StructureReport, GroupError> {
        if !self.is_primitive() {
            return Err(GroupError::NotPrimitive);
        }
        if !self.is_solvable()? {
            return Err(GroupError::NotSolvable);
        }
        let order = self.order()?;
        let minimal = self.minimal_normal_subgroups()?;
        let unique_minimal_normal = minimal.len() == 1;
        let minimal_normal_orders = minimal
            .iter()
            .map(|m| m.order())
            .collect::<Result<Vec<_>, _>>()?;

        let socle = minimal.first().cloned();
        let mut socle_elementary_abelian = false;
        let mut stabilizer_complement = false;
        let mut socle_regular = false;
        let mut degree_is_socle_order = false;
        let mut prime = None;
        let mut exponent = None;

        if let Some(a) = &socle {
            let (ea, p) = a.is_elementary_abelian()?;
            socle_elementary_abelian = ea;
            if let Some(p) = p {
                if let Some(k) = perfect_power_exponent(self.degree as u64, p) {
                    prime = Some(p);
                    exponent = Some(k);
                }
            }

            let stab = self.stabilizer(0)?;
            let a_keys = a.element_keys()?;
            let s_keys = stab.element_keys()?;
            let intersection = sorted_intersection_len(a_keys, s_keys);
            stabilizer_complement =
                intersection == 1 && a.order()? * stab.order()? == order;

            // Regularity: a |-> a(0) is a bijection onto the domain.
            let mut hit = vec![false; self.degree];
            let mut regular = a.order()? == self.degree as u64;
            if regular {
                for &k in a_keys {
                    let image = Permutation::from_key(k, self.degree).apply(0);
                    if hit[image] {
                        regular = false;
                        break;
                    }
                    hit[image] = true;
                }
                regular = regular && hit.iter().all(|&h| h);
            }
            socle_regular = regular;
            degree_is_socle_order = a.order()? == self.degree as u64
                && prime.is_some_and(|p| {
                    exponent.is_some_and(|k| (p as u128).pow(k) == self.degree as u128)
                });
        }

        // No minimal normal subgroup lies inside the stabilizer; since every
        // nontrivial normal subgroup contains a minimal one, this certifies
        // the stabilizer core is trivial.
        let stab = self.stabilizer(0)?;
        let s_keys = stab.element_keys()?.to_vec();
        let mut stabilizer_core_trivial = true;
        for m in &minimal {
            if is_sorted_subset(m.element_keys()?, &s_keys) {
                stabilizer_core_trivial = false;
            }
        }

        let socle_generators = socle
            .as_ref()
            .map(|a| a.generators().iter().map(|g| g.to_string()).collect())
            .unwrap_or_default();

        Ok(StructureReport {
            degree: self.degree,
            order,
            prime,
            exponent,
            minimal_normal_orders,
            unique_minimal_normal,
            socle_elementary_abelian,
            stabilizer_complement,
            socle_regular,
            degree_is_socle_order,
            stabilizer_core_trivial,
            socle_generators,
            socle,
        })
    }

    /// Builds a group whose closure is already known (keys need not be
    /// sorted).
    pub(crate) fn with_known_elements(
        degree: usize,
        generators: Vec<Permutation>,
        mut keys: Vec<u64>,
    ) -> Result<PermGroup, GroupError> {
        let group = PermGroup::new(degree, generators)?;
        keys.sort_unstable();
        let _ = group.closure.set(Closure { keys });
        Ok(group)
    }

    /// Builds a subgroup value from element keys, reducing to a small
    /// generating set.
    fn subgroup_from_keys(&self, keys: &[u64]) -> Result<PermGroup, GroupError> {
        let gens = reduce_generators(self.degree, keys);
        let group = PermGroup::new(self.degree, gens)?.with_element_cap(self.element_cap);
        let mut sorted = keys.to_vec();
        sorted.sort_unstable();
        let _ = group.closure.set(Closure { keys: sorted });
        Ok(group)
    }
}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> on {} points", self.degree)
    }
}

/// Result of the minimal-block search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockSearch {
    /// The finest invariant partition joining the pair is the whole set.
    WholeSet,
    System(BlockSystem),
}

/// A nontrivial invariant partition into blocks of equal size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    degree: usize,
    /// Blocks sorted by smallest element; each block sorted.
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Checks genuine invariance: every generator maps each block onto a
    /// block of the system.
    pub fn is_invariant_under(&self, group: &PermGroup) -> bool {
        let index: Vec<usize> = {
            let mut idx = vec![0; self.degree];
            for (i, b) in self.blocks.iter().enumerate() {
                for &x in b {
                    idx[x] = i;
                }
            }
            idx
        };
        group.generators().iter().all(|g| {
            self.blocks.iter().all(|b| {
                let target = index[g.apply(b[0])];
                b.iter().all(|&x| index[g.apply(x)] == target)
            })
        })
    }
}

/// Structure facts for a primitive solvable group; all flags must hold.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub degree: usize,
    pub order: u64,
    pub prime: Option<u64>,
    pub exponent: Option<u32>,
    pub minimal_normal_orders: Vec<u64>,
    pub unique_minimal_normal: bool,
    pub socle_elementary_abelian: bool,
    pub stabilizer_complement: bool,
    pub socle_regular: bool,
    pub degree_is_socle_order: bool,
    /// Auxiliary: the point stabilizer contains no nontrivial normal
    /// subgroup of the group.
    pub stabilizer_core_trivial: bool,
    pub socle_generators: Vec<String>,
    #[serde(skip)]
    pub socle: Option<PermGroup>,
}

impl StructureReport {
    /// True when the four structure clauses hold (the auxiliary stabilizer
    /// flag is reported separately).
    pub fn all_clauses_hold(&self) -> bool {
        self.unique_minimal_normal
            && self.socle_elementary_abelian
            && self.stabilizer_complement
            && self.socle_regular
            && self.degree_is_socle_order
    }
}

/// Breadth-first closure of the generators under composition, returned as
/// sorted keys. Errors once the closure exceeds `cap`.
fn close_generators(
    degree: usize,
    generators: &[Permutation],
    cap: u64,
) -> Result<Vec<u64>, GroupError> {
    let gen_keys: Vec<u64> = {
        let mut ks: Vec<u64> = generators.iter().map(|g| g.key()).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    };
    close_keys(degree, &gen_keys, cap)
}

pub(crate) fn close_keys(degree: usize, gen_keys: &[u64], cap: u64) -> Result<Vec<u64>, GroupError> {
    use crate::perm::packed;
    let gens: Vec<packed::Packed> = gen_keys.iter().map(|&k| packed::unpack(k)).collect();
    let id = packed::identity(degree);
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(packed::pack(&id));
    let mut queue: Vec<packed::Packed> = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head];
        head += 1;
        for g in &gens {
            let next = packed::compose(g, &current, degree);
            if seen.insert(packed::pack(&next)) {
                if seen.len() as u64 > cap {
                    return Err(GroupError::OrderExceedsCap { cap });
                }
                queue.push(next);
            }
        }
    }
    let mut keys: Vec<u64> = seen.into_iter().collect();
    keys.sort_unstable();
    Ok(keys)
}

/// Smallest subgroup containing `seeds` that is closed under conjugation by
/// the ambient generators.
fn normal_closure_keys(
    degree: usize,
    seeds: &[Permutation],
    ambient_gens: &[Permutation],
    cap: u64,
) -> Result<Vec<u64>, GroupError> {
    use crate::perm::packed;
    let amb: Vec<packed::Packed> = ambient_gens
        .iter()
        .map(|g| packed::unpack(g.key()))
        .collect();
    let mut gen_keys: Vec<u64> = seeds.iter().map(|g| g.key()).collect();
    gen_keys.sort_unstable();
    gen_keys.dedup();
    loop {
        let keys = close_keys(degree, &gen_keys, cap)?;
        let set: HashSet<u64> = keys.iter().copied().collect();
        let mut new_keys = Vec::new();
        for &k in &keys {
            let h = packed::unpack(k);
            for s in &amb {
                let ck = packed::pack(&packed::conjugate(s, &h, degree));
                if !set.contains(&ck) {
                    new_keys.push(ck);
                }
            }
        }
        if new_keys.is_empty() {
            return Ok(keys);
        }
        gen_keys.extend(new_keys);
        gen_keys.sort_unstable();
        gen_keys.dedup();
    }
}

/// Greedy reduction of an element set to a small generating sequence.
pub(crate) fn reduce_generators(degree: usize, keys: &[u64]) -> Vec<Permutation> {
    let id_key = Permutation::identity(degree).key();
    let mut sorted = keys.to_vec();
    sorted.sort_unstable();
    let mut gens: Vec<u64> = Vec::new();
    let mut have: Vec<u64> = vec![id_key];
    for &k in &sorted {
        if have.binary_search(&k).is_err() {
            gens.push(k);
            have = close_keys(degree, &gens, u64::MAX).expect("unbounded");
            if have.len() == sorted.len() {
                break;
            }
        }
    }
    if gens.is_empty() {
        gens.push(id_key);
    }
    gens.iter()
        .map(|&k| Permutation::from_key(k, degree))
        .collect()
}

fn is_sorted_subset(small: &[u64], big: &[u64]) -> bool {
    let mut it = big.iter();
    'outer: for s in small {
        for b in it.by_ref() {
            match b.cmp(s) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

fn sorted_intersection_len(a: &[u64], b: &[u64]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// All elements of the symmetric group in lexicographic image order.
pub(crate) fn symmetric_group_elements(degree: usize) -> Vec<crate::perm::packed::Packed> {
    let mut out = Vec::new();
    let mut images: Vec<u8> = (0..degree as u8).collect();
    loop {
        let mut arr = [0u8; 16];
        arr[..degree].copy_from_slice(&images);
        out.push(arr);
        // next lexicographic permutation
        let Some(i) = (0..degree - 1).rev().find(|&i| images[i] < images[i + 1]) else {
            break;
        };
        let j = (i + 1..degree)
            .rev()
            .find(|&j| images[j] > images[i])
            .expect("successor exists");
        images.swap(i, j);
        images[i + 1..].reverse();
    }
    out
}

pub(crate) fn symmetric_group_generators(degree: usize) -> Vec<crate::perm::packed::Packed> {
    let mut gens = Vec::new();
    if degree >= 2 {
        let mut tau = crate::perm::packed::identity(degree);
        tau.swap(0, 1);
        gens.push(tau);
    }
    if degree >= 3 {
        let mut sigma = [0u8; 16];
        for (i, slot) in sigma.iter_mut().enumerate().take(degree) {
            *slot = ((i + 1) % degree) as u8;
        }
        gens.push(sigma);
    }
    if gens.is_empty() {
        gens.push(crate::perm::packed::identity(degree));
    }
    gens
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Returns `k` with `p^k = n`, if any.
fn perfect_power_exponent(n: u64, p: u64) -> Option<u32> {
    if p < 2 {
        return None;
    }
    let mut m = n;
    let mut k = 0;
    while m > 1 {
        if !m.is_multiple_of(p) {
            return None;
        }
        m /= p;
        k += 1;
    }
    if k >= 1 {
        Some(k)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(degree, gens).unwrap()
    }

    fn agl15() -> PermGroup {
        // Affine maps x -> ax + b over F_5 on points {1..5} ~ {0..4}:
        // translation x -> x+1 and multiplication by the primitive root 2.
        group(5, &["(1 2 3 4 5)", "(2 3 5 4)"])
    }

    #[test]
    fn closure_counts() {
        assert_eq!(group(5, &["(1 2 3 4 5)"]).order().unwrap(), 5);
        assert_eq!(group(4, &["(1 2)", "(1 2 3 4)"]).order().unwrap(), 24);
        assert_eq!(PermGroup::trivial(3).unwrap().order().unwrap(), 1);
    }

    #[test]
    fn elements_are_lexicographically_sorted() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let elems = g.elements().unwrap();
        let mut images: Vec<&[usize]> = elems.iter().map(|e| e.images()).collect();
        let sorted = {
            let mut s = images.clone();
            s.sort();
            s
        };
        assert_eq!(images.len(), 24);
        assert_eq!(images, sorted);
        images.dedup();
        assert_eq!(images.len(), 24);
    }

    #[test]
    fn order_cap_is_enforced() {
        let g = group(5, &["(1 2)", "(1 2 3 4 5)"]).with_element_cap(30);
        assert!(matches!(
            g.order(),
            Err(GroupError::OrderExceedsCap { cap: 30 })
        ));
    }

    #[test]
    fn transitivity() {
        assert!(group(5, &["(1 2 3 4 5)"]).is_transitive());
        assert!(!group(4, &["(1 2)"]).is_transitive());
        assert!(group(4, &["(1 2)", "(1 2 3 4)"]).is_transitive());
    }

    #[test]
    fn minimal_blocks_of_cyclic_four() {
        let c4 = group(4, &["(1 2 3 4)"]);
        match c4.minimal_block_containing(0, 2).unwrap() {
            BlockSearch::System(sys) => {
                assert_eq!(sys.blocks(), &[vec![0, 2], vec![1, 3]]);
                assert!(sys.is_invariant_under(&c4));
            }
            BlockSearch::WholeSet => panic!("expected a proper block system"),
        }
        assert_eq!(
            c4.minimal_block_containing(0, 1).unwrap(),
            BlockSearch::WholeSet
        );
    }

    #[test]
    fn prime_degree_blocks_are_trivial() {
        let c5 = group(5, &["(1 2 3 4 5)"]);
        assert_eq!(
            c5.minimal_block_containing(0, 1).unwrap(),
            BlockSearch::WholeSet
        );
    }

    #[test]
    fn s4_is_two_transitive_hence_blockless() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        assert_eq!(
            s4.minimal_block_containing(0, 1).unwrap(),
            BlockSearch::WholeSet
        );
        assert!(s4.is_primitive());
    }

    #[test]
    fn primitivity() {
        assert!(agl15().is_primitive());
        let d4 = group(4, &["(1 2 3 4)", "(1 3)"]);
        assert!(!d4.is_primitive());
        assert!(!group(4, &["(1 2)"]).is_primitive());
    }

    #[test]
    fn derived_series_of_s4() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let series = s4.derived_series().unwrap();
        let orders: Vec<u64> = series.iter().map(|g| g.order().unwrap()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(s4.is_solvable().unwrap());
    }

    #[test]
    fn a5_is_perfect() {
        let s5 = group(5, &["(1 2)", "(1 2 3 4 5)"]);
        let series = s5.derived_series().unwrap();
        let orders: Vec<u64> = series.iter().map(|g| g.order().unwrap()).collect();
        assert_eq!(orders, vec![120, 60]);
        assert!(!s5.is_solvable().unwrap());
    }

    #[test]
    fn cyclic_groups_are_solvable() {
        assert!(group(7, &["(1 2 3 4 5 6 7)"]).is_solvable().unwrap());
        assert!(PermGroup::trivial(4).unwrap().is_solvable().unwrap());
    }

    #[test]
    fn trivial_derived_series() {
        let t = PermGroup::trivial(3).unwrap();
        assert_eq!(t.derived_series().unwrap().len(), 1);
    }

    #[test]
    fn stabilizer_orders() {
        // Orbit-stabilizer: 20 = 4 * 5 for the affine group of F_5.
        let stab = agl15().stabilizer(0).unwrap();
        assert_eq!(stab.order().unwrap(), 4);

        let c5 = group(5, &["(1 2 3 4 5)"]);
        assert_eq!(c5.stabilizer(2).unwrap().order().unwrap(), 1);

        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let s3 = s4.stabilizer(3).unwrap();
        assert_eq!(s3.order().unwrap(), 6);
        assert!(s3.elements().unwrap().iter().all(|g| g.apply(3) == 3));
    }

    #[test]
    fn minimal_normal_subgroups_of_agl15() {
        let minimal = agl15().minimal_normal_subgroups().unwrap();
        assert_eq!(minimal.len(), 1);
        assert_eq!(minimal[0].order().unwrap(), 5);
    }

    #[test]
    fn minimal_normal_subgroups_of_s3() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let minimal = s3.minimal_normal_subgroups().unwrap();
        assert_eq!(minimal.len(), 1);
        assert_eq!(minimal[0].order().unwrap(), 3);
    }

    #[test]
    fn klein_four_regular_has_three_minimal_normals() {
        let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let minimal = v4.minimal_normal_subgroups().unwrap();
        assert_eq!(minimal.len(), 3);
        assert!(minimal.iter().all(|m| m.order().unwrap() == 2));
    }

    #[test]
    fn centralizers() {
        let a = group(5, &["(1 2 3 4 5)"]);
        let g = Permutation::parse("(1 2 3 4 5)", 5).unwrap();
        assert_eq!(a.centralizer_of(&g).unwrap().order().unwrap(), 5);

        // No nonzero translation commutes with x -> 2x.
        let translations = group(5, &["(1 2 3 4 5)"]);
        let mult = Permutation::parse("(2 3 5 4)", 5).unwrap();
        assert_eq!(translations.centralizer_of(&mult).unwrap().order().unwrap(), 1);

        let any = group(4, &["(1 2)", "(1 2 3 4)"]);
        let id = Permutation::identity(4);
        assert_eq!(any.centralizer_of(&id).unwrap().order().unwrap(), 24);
    }

    #[test]
    fn elementary_abelian_detection() {
        let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(v4.is_elementary_abelian().unwrap(), (true, Some(2)));

        let c4 = group(4, &["(1 2 3 4)"]);
        assert_eq!(c4.is_elementary_abelian().unwrap(), (false, None));

        let trivial = PermGroup::trivial(4).unwrap();
        assert_eq!(trivial.is_elementary_abelian().unwrap(), (true, None));
    }

    #[test]
    fn max_fixed_points_of_agl15() {
        let (max, witness) = agl15().max_fixed_points().unwrap();
        assert_eq!(max, 1);
        assert_eq!(witness.fixed_point_count(), 1);
    }

    #[test]
    fn max_fixed_points_of_s4() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let (max, witness) = s4.max_fixed_points().unwrap();
        assert_eq!(max, 2);
        assert_eq!(witness.cycle_type().parts(), &[2, 1, 1]);
    }

    #[test]
    fn max_fixed_points_needs_nontrivial_group() {
        let t = PermGroup::trivial(4).unwrap();
        assert!(matches!(
            t.max_fixed_points(),
            Err(GroupError::TrivialGroup)
        ));
    }

    #[test]
    fn structure_of_agl15() {
        let report = agl15().verify_structure().unwrap();
        assert!(report.all_clauses_hold());
        assert!(report.stabilizer_core_trivial);
        assert_eq!(report.prime, Some(5));
        assert_eq!(report.exponent, Some(1));
        assert_eq!(report.socle.as_ref().unwrap().order().unwrap(), 5);
    }

    #[test]
    fn structure_of_s4() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let report = s4.verify_structure().unwrap();
        assert!(report.all_clauses_hold());
        assert_eq!(report.prime, Some(2));
        assert_eq!(report.exponent, Some(2));
        assert_eq!(report.socle.as_ref().unwrap().order().unwrap(), 4);
    }

    #[test]
    fn structure_rejects_imprimitive_and_unsolvable() {
        let c4 = group(4, &["(1 2 3 4)"]);
        assert!(matches!(
            c4.verify_structure(),
            Err(GroupError::NotPrimitive)
        ));
        let s5 = group(5, &["(1 2)", "(1 2 3 4 5)"]);
        assert!(matches!(s5.verify_structure(), Err(GroupError::NotSolvable)));
    }

    #[test]
    fn centralizer_orbit_is_fixed_set() {
        // For g fixing x, the fixed set of g equals the orbit of x under the
        // centralizer of g in the regular socle.
        let g5 = agl15();
        let report = g5.verify_structure().unwrap();
        let socle = report.socle.unwrap();
        for g in g5.elements().unwrap() {
            if g.is_identity() {
                continue;
            }
            for x in g.fixed_points() {
                let cent = socle.centralizer_of(&g).unwrap();
                let orbit: std::collections::BTreeSet<usize> = cent
                    .elements()
                    .unwrap()
                    .iter()
                    .map(|a| a.apply(x))
                    .collect();
                let fixed: std::collections::BTreeSet<usize> =
                    g.fixed_points().into_iter().collect();
                assert_eq!(orbit, fixed);
            }
        }
    }

    #[test]
    fn reduced_generators_are_small() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let keys = s4.element_keys().unwrap().to_vec();
        let gens = reduce_generators(4, &keys);
        assert!(gens.len() <= 4);
        let regen = PermGroup::new(4, gens).unwrap();
        assert!(regen.same_group(&s4).unwrap());
    }

    #[test]
    fn degree_budget_is_enforced() {
        let gens = vec![Permutation::identity(17)];
        assert!(matches!(
            PermGroup::new(17, gens),
            Err(GroupError::DegreeBudget { .. })
        ));
    }
}
