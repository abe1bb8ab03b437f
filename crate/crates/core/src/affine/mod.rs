//! Affine and semilinear permutation groups over small prime-power domains,
//! plus the exhaustive census of primitive solvable subgroups.
//!
//! Points are labeled by the vector space `F_p^k`: point `i` has the base-p
//! digits of `i` as coordinates, little-endian. Fixing the labeling once
//! makes every generator, witness, and report reproducible.

mod census;
mod field;

pub use census::{
    census_primitive_solvable, census_primitive_solvable_with_cap,
    solvable_subgroup_class_count, solvable_subgroup_classes, verify_fixed_point_bounds,
    verify_fixed_point_bounds_with_cap, CensusEntry, CensusResult, FixedPointReport,
    FixedPointRow, SolvableClass, MAX_EXHAUSTIVE_DEGREE, SEEDED_DEGREE,
};
pub use field::SmallField;

use thiserror::Error;

use crate::group::{GroupError, PermGroup, MAX_GROUP_DEGREE};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AffineError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent must be at least 1")]
    InvalidExponent,
    #[error("degree {degree} exceeds the budget {max}")]
    DegreeBudget { degree: usize, max: usize },
    #[error("census supports degrees up to {max_exhaustive} exhaustively and degree {seeded} via the seeded path; got {degree}")]
    CensusDegree {
        degree: usize,
        max_exhaustive: usize,
        seeded: usize,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Little-endian base-p digits of a point label.
pub fn vector_of_point(x: usize, p: u64, k: u32) -> Vec<u64> {
    let mut v = Vec::with_capacity(k as usize);
    let mut x = x as u64;
    for _ in 0..k {
        v.push(x % p);
        x /= p;
    }
    v
}

/// Inverse of [`vector_of_point`].
pub fn point_of_vector(v: &[u64], p: u64) -> usize {
    let mut x = 0u64;
    for &c in v.iter().rev() {
        x = x * p + c;
    }
    x as usize
}

fn check_parameters(p: u64, k: u32) -> Result<usize, AffineError> {
    if !crate::group::is_prime(p) {
        return Err(AffineError::NotPrime(p));
    }
    if k == 0 {
        return Err(AffineError::InvalidExponent);
    }
    let degree = (p as u128).checked_pow(k).filter(|&d| d <= MAX_GROUP_DEGREE as u128);
    match degree {
        Some(d) => Ok(d as usize),
        None => Err(AffineError::DegreeBudget {
            degree: usize::MAX,
            max: MAX_GROUP_DEGREE,
        }),
    }
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    'candidate: for r in 2..p {
        let mut x = 1u64;
        for _ in 0..(p - 2) {
            x = x * r % p;
            if x == 1 {
                continue 'candidate;
            }
        }
        return r;
    }
    unreachable!("every prime has a primitive root")
}

/// k-by-k matrix over `F_p`, row-major.
type Mat = Vec<Vec<u64>>;

fn mat_apply(m: &Mat, v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(&a, &b)| a * b % p).sum::<u64>() % p)
        .collect()
}

/// Generators of `GL(k, p)`: a transvection, the coordinate cycle, and a
/// diagonal scaling by a primitive root. Conjugating the transvection by
/// cycle powers yields every elementary transvection, hence all of
/// `SL(k, p)`; the diagonal supplies the missing determinants.
fn gl_generators(p: u64, k: u32) -> Vec<Mat> {
    let k = k as usize;
    let r = primitive_root(p);
    let ident = |_: ()| -> Mat {
        (0..k)
            .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
            .collect()
    };
    let mut gens = Vec::new();
    let mut diag = ident(());
    diag[0][0] = r;
    if k == 1 {
        gens.push(diag);
        return gens;
    }
    let mut transvection = ident(());
    transvection[0][1] = 1;
    let mut cycle: Mat = vec![vec![0; k]; k];
    for i in 0..k {
        cycle[(i + 1) % k][i] = 1;
    }
    gens.push(transvection);
    gens.push(cycle);
    if r != 1 {
        gens.push(diag);
    }
    gens
}

fn linear_permutation(m: &Mat, p: u64, k: u32, degree: usize) -> Permutation {
    let images = (0..degree)
        .map(|x| point_of_vector(&mat_apply(m, &vector_of_point(x, p, k), p), p))
        .collect();
    Permutation::from_images(images).expect("invertible matrix acts bijectively")
}

fn translation_permutation(t: &[u64], p: u64, k: u32, degree: usize) -> Permutation {
    let images = (0..degree)
        .map(|x| {
            let v = vector_of_point(x, p, k);
            let sum: Vec<u64> = v.iter().zip(t).map(|(&a, &b)| (a + b) % p).collect();
            point_of_vector(&sum, p)
        })
        .collect();
    Permutation::from_images(images).expect("translation is bijective")
}

/// The full affine group `AGL(k, p)` acting on `F_p^k`:
/// all translations together with `GL(k, p)`.
/// Order `p^k * (p^k - 1)(p^k - p) ... (p^k - p^(k-1))`.
pub fn affine_group(p: u64, k: u32) -> Result<PermGroup, AffineError> {
    let degree = check_parameters(p, k)?;
    let mut gens = Vec::new();
    for i in 0..k as usize {
        let mut t = vec![0u64; k as usize];
        t[i] = 1;
        gens.push(translation_permutation(&t, p, k, degree));
    }
    for m in gl_generators(p, k) {
        gens.push(linear_permutation(&m, p, k, degree));
    }
    Ok(PermGroup::new(degree, gens)?)
}

/// The one-dimensional affine semilinear group `AGammaL(1, p^k)` acting on
/// the field with `p^k` elements: translations, multiplications by a
/// primitive element, and the Frobenius `x -> x^p`.
/// Order `p^k (p^k - 1) k`.
pub fn semilinear_group(p: u64, k: u32) -> Result<PermGroup, AffineError> {
    let degree = check_parameters(p, k)?;
    let field = SmallField::new(p, k);
    let gamma = field.primitive_element();
    let add_one = Permutation::from_images((0..degree).map(|x| field.add(x, 1)).collect())
        .expect("field addition is bijective");
    let mul_gamma = Permutation::from_images((0..degree).map(|x| field.mul(x, gamma)).collect())
        .expect("multiplication by a unit is bijective");
    let frobenius =
        Permutation::from_images((0..degree).map(|x| field.pow(x, p)).collect())
            .expect("frobenius is bijective");
    Ok(PermGroup::new(degree, vec![add_one, mul_gamma, frobenius])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl_order(p: u64, k: u32) -> u64 {
        let d = p.pow(k);
        (0..k).map(|i| d - p.pow(i)).product()
    }

    #[test]
    fn point_labeling_roundtrip() {
        for x in 0..9 {
            let v = vector_of_point(x, 3, 2);
            assert_eq!(point_of_vector(&v, 3), x);
        }
        assert_eq!(vector_of_point(5, 3, 2), vec![2, 1]);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(2), 1);
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
    }

    #[test]
    fn affine_group_orders() {
        assert_eq!(affine_group(5, 1).unwrap().order().unwrap(), 20);
        assert_eq!(affine_group(2, 2).unwrap().order().unwrap(), 24);
        assert_eq!(affine_group(2, 1).unwrap().order().unwrap(), 2);
        assert_eq!(
            affine_group(3, 2).unwrap().order().unwrap(),
            9 * gl_order(3, 2)
        );
        assert_eq!(
            affine_group(2, 3).unwrap().order().unwrap(),
            8 * gl_order(2, 3)
        );
    }

    #[test]
    fn affine_2_2_is_s4() {
        let a = affine_group(2, 2).unwrap();
        let s4 = PermGroup::from_cycles(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        assert!(a.same_group(&s4).unwrap());
    }

    #[test]
    fn affine_groups_are_transitive_and_primitive() {
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)] {
            let g = affine_group(p, k).unwrap();
            assert!(g.is_transitive(), "AGL({k},{p}) transitive");
            assert!(g.is_primitive(), "AGL({k},{p}) primitive");
        }
    }

    #[test]
    fn affine_solvability_follows_the_linear_part() {
        assert!(affine_group(5, 1).unwrap().is_solvable().unwrap());
        assert!(affine_group(3, 2).unwrap().is_solvable().unwrap());
        // GL(3,2) is simple, so AGL(3,2) is not solvable.
        assert!(!affine_group(2, 3).unwrap().is_solvable().unwrap());
    }

    #[test]
    fn translations_recovered_as_regular_socle() {
        let report = affine_group(3, 2).unwrap().verify_structure().unwrap();
        assert!(report.all_clauses_hold());
        assert_eq!(report.prime, Some(3));
        assert_eq!(report.exponent, Some(2));
        let socle = report.socle.unwrap();
        assert_eq!(socle.order().unwrap(), 9);
        // Regular: the orbit map from the socle is a bijection.
        let images: std::collections::BTreeSet<usize> = socle
            .elements()
            .unwrap()
            .iter()
            .map(|a| a.apply(0))
            .collect();
        assert_eq!(images.len(), 9);
    }

    #[test]
    fn semilinear_group_orders() {
        assert_eq!(semilinear_group(2, 3).unwrap().order().unwrap(), 168);
        assert_eq!(semilinear_group(2, 2).unwrap().order().unwrap(), 24);
        assert_eq!(semilinear_group(3, 2).unwrap().order().unwrap(), 144);
        assert_eq!(semilinear_group(2, 4).unwrap().order().unwrap(), 960);
    }

    #[test]
    fn semilinear_of_degree_eight_is_solvable_and_primitive() {
        let g = semilinear_group(2, 3).unwrap();
        assert!(g.is_transitive());
        assert!(g.is_primitive());
        assert!(g.is_solvable().unwrap());
    }

    #[test]
    fn semilinear_with_trivial_frobenius_equals_affine() {
        for p in [3, 5, 7, 11, 13] {
            let a = affine_group(p, 1).unwrap();
            let s = semilinear_group(p, 1).unwrap();
            assert!(a.same_group(&s).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(affine_group(4, 1), Err(AffineError::NotPrime(4))));
        assert!(matches!(
            affine_group(2, 0),
            Err(AffineError::InvalidExponent)
        ));
        assert!(matches!(
            affine_group(2, 5),
            Err(AffineError::DegreeBudget { .. })
        ));
        assert!(matches!(
            affine_group(17, 1),
            Err(AffineError::DegreeBudget { .. })
        ));
    }
}
