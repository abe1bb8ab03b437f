//! Exact permutations on a finite set `{0, ..., d-1}`.
//!
//! A [`Permutation`] stores its full image vector, so the degree is part of
//! the value: the identity on 3 points and the identity on 4 points are
//! distinct. Points are 0-indexed internally and 1-indexed in all text I/O
//! (the usual cycle-notation convention).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest degree for which a permutation packs into a single `u64` key
/// (4 bits per point). Group-level machinery relies on this packing.
pub const MAX_PACKED_DEGREE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree must be at least 1")]
    InvalidDegree,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image vector is not a bijection of 0..{degree}")]
    NotABijection { degree: usize },
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("point {point} out of range for degree {degree} (points are 1-indexed)")]
    PointOutOfRange { point: usize, degree: usize },
}

/// A bijection of `{0, ..., d-1}`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity permutation of the given degree (`degree >= 1`).
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "degree must be at least 1");
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image vector, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        if images.is_empty() {
            return Err(PermError::InvalidDegree);
        }
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            if x >= d || seen[x] {
                return Err(PermError::NotABijection { degree: d });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of a single point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Composition acting as `compose(g, h)(x) = g(h(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let images = other.images.iter().map(|&x| self.images[x]).collect();
        Ok(Permutation { images })
    }

    /// Number of points fixed by the permutation.
    pub fn fixed_point_count(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &x)| i == x).count()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x)
            .map(|(i, _)| i)
            .collect()
    }

    /// Nontrivial cycles, each starting at its smallest point, sorted by
    /// smallest point. Fixed points are omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cy = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cy.push(x);
                x = self.images[x];
            }
            out.push(cy);
        }
        out
    }

    /// Multiset of orbit sizes of `<g>` on the whole domain, fixed points
    /// included as parts of size 1.
    pub fn cycle_type(&self) -> CycleType {
        let d = self.degree();
        let mut parts: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let moved: usize = parts.iter().sum();
        parts.extend(std::iter::repeat_n(1, d - moved));
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts, degree: d }
    }

    /// Branch-divisor contribution `sum(m_i - 1)` over all cycles, i.e.
    /// `degree - (number of cycles, fixed points included)`.
    pub fn branch_contribution(&self) -> usize {
        let moved_cycles = self.cycles();
        let moved: usize = moved_cycles.iter().map(|c| c.len()).sum();
        let cycle_count = moved_cycles.len() + (self.degree() - moved);
        self.degree() - cycle_count
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer_lcm(acc, c.len() as u64))
    }

    /// Sign computed from inversion parity, independently of the cycle
    /// decomposition.
    pub fn sign(&self) -> i32 {
        let mut inversions = 0usize;
        for i in 0..self.images.len() {
            for j in (i + 1)..self.images.len() {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Parses disjoint-cycle notation with 1-indexed points, e.g.
    /// `"(1 2 3)(4 5)"`. Unmentioned points are fixed; `""` and `"()"` both
    /// denote the identity. Points may be separated by spaces or commas.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::InvalidDegree);
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(PermError::Malformed(format!(
                    "expected '(' at: {rest:?}"
                )));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| PermError::Malformed("unbalanced '('".into()))?;
            let body = &rest[1..close];
            rest = rest[close + 1..].trim_start();
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let point: usize = tok
                    .parse()
                    .map_err(|_| PermError::Malformed(format!("bad point {tok:?}")))?;
                if point == 0 || point > degree {
                    return Err(PermError::PointOutOfRange { point, degree });
                }
                let p = point - 1;
                if used[p] {
                    return Err(PermError::RepeatedPoint(point));
                }
                used[p] = true;
                cycle.push(p);
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Packs the image vector into a `u64`, 4 bits per point, the image of
    /// point 0 highest. Numeric order on keys equals lexicographic order on
    /// image vectors of equal degree.
    pub(crate) fn key(&self) -> u64 {
        debug_assert!(self.degree() <= MAX_PACKED_DEGREE);
        let mut arr = [0u8; MAX_PACKED_DEGREE];
        for (i, &x) in self.images.iter().enumerate() {
            arr[i] = x as u8;
        }
        packed::pack(&arr)
    }

    pub(crate) fn from_key(key: u64, degree: usize) -> Self {
        debug_assert!(degree <= MAX_PACKED_DEGREE);
        let arr = packed::unpack(key);
        Permutation {
            images: arr[..degree].iter().map(|&x| x as usize).collect(),
        }
    }
}

/// Allocation-free permutation arithmetic on fixed 16-slot arrays, used by
/// the exhaustive group machinery. Slots at or beyond the degree are zero.
pub(crate) mod packed {
    use super::MAX_PACKED_DEGREE;

    pub type Packed = [u8; MAX_PACKED_DEGREE];

    pub fn pack(arr: &Packed) -> u64 {
        let mut k = 0u64;
        for &x in arr {
            k = (k << 4) | x as u64;
        }
        k
    }

    pub fn unpack(key: u64) -> Packed {
        let mut arr = [0u8; MAX_PACKED_DEGREE];
        for (i, slot) in arr.iter_mut().enumerate() {
            let shift = 4 * (MAX_PACKED_DEGREE - 1 - i);
            *slot = ((key >> shift) & 0xf) as u8;
        }
        arr
    }

    pub fn identity(degree: usize) -> Packed {
        let mut arr = [0u8; MAX_PACKED_DEGREE];
        for (i, slot) in arr.iter_mut().enumerate().take(degree) {
            *slot = i as u8;
        }
        arr
    }

    /// `(a . b)(x) = a(b(x))` on the first `degree` slots.
    pub fn compose(a: &Packed, b: &Packed, degree: usize) -> Packed {
        let mut out = [0u8; MAX_PACKED_DEGREE];
        for i in 0..degree {
            out[i] = a[b[i] as usize];
        }
        out
    }

    pub fn inverse(a: &Packed, degree: usize) -> Packed {
        let mut out = [0u8; MAX_PACKED_DEGREE];
        for (i, &x) in a.iter().enumerate().take(degree) {
            out[x as usize] = i as u8;
        }
        out
    }

    /// Conjugate `h` by `s`, i.e. `s h s^-1`.
    pub fn conjugate(s: &Packed, h: &Packed, degree: usize) -> Packed {
        compose(&compose(s, h, degree), &inverse(s, degree), degree)
    }
}

fn num_integer_lcm(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    /// Canonical form: disjoint cycles sorted by smallest element, 1-indexed,
    /// fixed points omitted, identity rendered as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cy in cycles {
            write!(f, "(")?;
            for (i, p) in cy.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Multiset of cycle lengths summing to the degree, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleType {
    parts: Vec<usize>,
    degree: usize,
}

impl CycleType {
    /// Builds a cycle type from parts (any order); parts must be positive and
    /// sum to `degree`.
    pub fn from_parts(mut parts: Vec<usize>, degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::InvalidDegree);
        }
        if parts.contains(&0) || parts.iter().sum::<usize>() != degree {
            return Err(PermError::Malformed(format!(
                "parts must be positive and sum to {degree}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts, degree })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn fixed_point_count(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 1).count()
    }

    /// `sum(m_i - 1)` over all parts.
    pub fn branch_contribution(&self) -> usize {
        self.degree - self.parts.len()
    }

    /// True if some part is at least 2, i.e. a point with this local type is
    /// genuinely a branch point.
    pub fn is_branched(&self) -> bool {
        self.parts.first().is_some_and(|&p| p >= 2)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}
