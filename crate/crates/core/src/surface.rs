//! Numerical intersection theory on the symmetric square of an elliptic
//! curve.
//!
//! The surface `S = E^(2)` is ruled over `E` via the Abel sum map. Its
//! numerical lattice is generated by the section class `C` (pairs containing
//! the origin) and the fiber class `F`, with pairing
//! `C.C = 1`, `C.F = 1`, `F.F = 0`. The self-intersection `C.C = 1` is
//! forced by `C` arising from the degree-one quotient line bundle of the
//! rank-two extension defining the ruling; adjunction then gives back
//! `g(C) = 1` and `g(F) = 0`, the cross-check that pins the constants. The
//! canonical class is `K = -2C + F` and `chi(O_S) = 0`, the standard values
//! for a ruled surface over a genus-one base.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("adjunction parity violated: D.D + D.K = {0} is odd")]
    ParityViolation(i64),
    #[error("adjunction yields the negative genus {0}")]
    NegativeGenus(i64),
}

/// Integer class `aC + bF` in the numerical lattice of the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DivisorClass {
    pub c: i64,
    pub f: i64,
}

impl DivisorClass {
    pub const fn new(c: i64, f: i64) -> Self {
        DivisorClass { c, f }
    }

    /// Intersection pairing with `C.C = 1`, `C.F = 1`, `F.F = 0`.
    pub fn intersect(self, other: DivisorClass) -> i64 {
        self.c * other.c + self.c * other.f + self.f * other.c
    }

    pub fn self_intersection(self) -> i64 {
        self.intersect(self)
    }

    /// Genus from adjunction: `2g - 2 = D.D + D.K`.
    pub fn adjunction_genus(self) -> Result<u64, SurfaceError> {
        let rhs = self.self_intersection() + self.intersect(canonical_class());
        if rhs % 2 != 0 {
            return Err(SurfaceError::ParityViolation(rhs));
        }
        let g2 = rhs + 2;
        if g2 < 0 {
            return Err(SurfaceError::NegativeGenus(g2 / 2));
        }
        Ok((g2 / 2) as u64)
    }

    /// Euler characteristic from Riemann-Roch with `chi(O_S) = 0`:
    /// `chi(D) = (D.D - D.K) / 2`.
    pub fn euler_characteristic(self) -> Result<i64, SurfaceError> {
        let rhs = self.self_intersection() - self.intersect(canonical_class());
        if rhs % 2 != 0 {
            return Err(SurfaceError::ParityViolation(rhs));
        }
        Ok(rhs / 2)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.c + rhs.c, self.f + rhs.f)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.c - rhs.c, self.f - rhs.f)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(-self.c, -self.f)
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * rhs.c, self * rhs.f)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c, self.f) {
            (0, 0) => write!(f, "0"),
            (c, 0) => write!(f, "{}", coeff(c, "C", true)),
            (0, ff) => write!(f, "{}", coeff(ff, "F", true)),
            (c, ff) => write!(
                f,
                "{} {} {}",
                coeff(c, "C", true),
                if ff < 0 { "-" } else { "+" },
                coeff(ff.abs(), "F", false)
            ),
        }
    }
}

fn coeff(n: i64, sym: &str, signed: bool) -> String {
    match n {
        1 => sym.to_string(),
        -1 if signed => format!("-{sym}"),
        n => format!("{n}{sym}"),
    }
}

/// The section class `C`.
pub const fn section_class() -> DivisorClass {
    DivisorClass::new(1, 0)
}

/// The fiber class `F`.
pub const fn fiber_class() -> DivisorClass {
    DivisorClass::new(0, 1)
}

/// The canonical class `K = -2C + F`.
pub const fn canonical_class() -> DivisorClass {
    DivisorClass::new(-2, 1)
}

/// One named identity checked by the surface report.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Numerical verification of the genus-7 model on the surface: the very
/// ample class `H = 3C - K = 5C - F`, its adjunction genus, its Euler
/// characteristic (hence the dimension of `|H|` granted vanishing), the
/// anticanonical diagonal, and the dimension of the resulting family.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceReport {
    /// Standing assumptions the lattice arithmetic relies on.
    pub assumptions: Vec<String>,
    pub checks: Vec<SurfaceCheck>,
}

impl SurfaceReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&SurfaceCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Runs every numerical identity of the construction and reports each one.
pub fn verify_surface_numerics() -> SurfaceReport {
    let c = section_class();
    let f = fiber_class();
    let k = canonical_class();
    let mut checks = Vec::new();
    let mut push = |name: &str, expected: String, actual: String| {
        checks.push(SurfaceCheck {
            name: name.to_string(),
            pass: expected == actual,
            expected,
            actual,
        });
    };

    // Pairing constants and sanity of the canonical class.
    push("C.F", "1".into(), c.intersect(f).to_string());
    push("F.F", "0".into(), f.intersect(f).to_string());
    push("C.C", "1".into(), c.intersect(c).to_string());
    push("K.K", "0".into(), k.intersect(k).to_string());
    push("K.F", "-2".into(), k.intersect(f).to_string());
    push(
        "genus of a fiber",
        "0".into(),
        f.adjunction_genus().map_or_else(|e| e.to_string(), |g| g.to_string()),
    );
    push(
        "genus of the section",
        "1".into(),
        c.adjunction_genus().map_or_else(|e| e.to_string(), |g| g.to_string()),
    );

    // The very ample class two ways.
    let h = 3 * c - k;
    let z = 5 * c - f;
    push("H = 3C - K equals 5C - F", z.to_string(), h.to_string());
    push("Z.Z", "15".into(), z.self_intersection().to_string());
    push(
        "genus of Z",
        "7".into(),
        z.adjunction_genus().map_or_else(|e| e.to_string(), |g| g.to_string()),
    );
    push(
        "chi(H)",
        "9".into(),
        h.euler_characteristic()
            .map_or_else(|e| e.to_string(), |x| x.to_string()),
    );
    push(
        "dim |H| granted vanishing",
        "8".into(),
        h.euler_characteristic()
            .map_or_else(|e| e.to_string(), |x| (x - 1).to_string()),
    );

    // The diagonal is anticanonical twice over.
    let delta = -2 * k;
    push("-2K", "4C - 2F".into(), delta.to_string());
    push("Delta.F", "4".into(), delta.intersect(f).to_string());

    // Moduli dimension: the linear system, plus one for varying the base
    // elliptic curve.
    let family = h.euler_characteristic().map(|x| (x - 1) + 1);
    push(
        "family dimension = dim |H| + 1",
        "9".into(),
        family.map_or_else(|e| e.to_string(), |x| x.to_string()),
    );

    SurfaceReport {
        assumptions: vec![
            "chi(O_S) = 0 for a ruled surface over a genus-one base".into(),
            "C.C = 1 from the degree-one quotient bundle defining the section".into(),
            "dim |H| = chi(H) - 1 requires vanishing of higher cohomology, asserted not verified"
                .into(),
            "the diagonal class is reported as lattice numbers only".into(),
        ],
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_table() {
        let c = section_class();
        let f = fiber_class();
        assert_eq!(c.intersect(f), 1);
        assert_eq!(f.intersect(f), 0);
        assert_eq!(c.intersect(c), 1);
        let z = DivisorClass::new(5, -1);
        assert_eq!(z.self_intersection(), 15);
    }

    #[test]
    fn canonical_class_numbers() {
        let k = canonical_class();
        assert_eq!(k, DivisorClass::new(-2, 1));
        assert_eq!(k.intersect(fiber_class()), -2);
        assert_eq!(k.intersect(k), 0);
    }

    #[test]
    fn adjunction_genera() {
        assert_eq!(DivisorClass::new(5, -1).adjunction_genus().unwrap(), 7);
        assert_eq!(fiber_class().adjunction_genus().unwrap(), 0);
        assert_eq!(section_class().adjunction_genus().unwrap(), 1);
    }

    #[test]
    fn adjunction_rejects_negative_genus() {
        // -F: D.D = 0, D.K = 2 ... gives 2g - 2 = ... check a genuinely
        // negative case: D = -C: D.D = 1, D.K = 1 - ... compute: (-C).(-C)=1,
        // (-C).K = 1... 2g-2 = 1 + 1? that's parity-even genus 2. Use -F:
        // (-F).(-F) = 0, (-F).K = 2, 2g - 2 = 2 -> g = 2. Take D = (0, -1)?
        // same. Use D = (1, -2): D.D = 1 - 4 = -3, odd with D.K...
        let d = DivisorClass::new(0, 3); // 3F: D.D = 0, D.K = -6 -> g = -2
        assert!(matches!(
            d.adjunction_genus(),
            Err(SurfaceError::NegativeGenus(_))
        ));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(DivisorClass::new(5, -1).euler_characteristic().unwrap(), 9);
        assert_eq!(DivisorClass::new(0, 0).euler_characteristic().unwrap(), 0);
        assert_eq!(canonical_class().euler_characteristic().unwrap(), 0);
    }

    #[test]
    fn full_report_passes() {
        let report = verify_surface_numerics();
        assert!(report.all_pass(), "failures: {:?}", report.failures());
        assert_eq!(report.checks.len(), 15);
    }

    #[test]
    fn adjunction_parity_never_fires_on_this_lattice() {
        // D.D + D.K = (a - 1)(a + 2b) is always even.
        for a in -12..=12 {
            for b in -12..=12 {
                let d = DivisorClass::new(a, b);
                let rhs = d.self_intersection() + d.intersect(canonical_class());
                assert_eq!(rhs % 2, 0, "({a}, {b})");
            }
        }
    }

    #[test]
    fn serre_symmetry_of_euler_characteristic() {
        for a in -8..=8 {
            for b in -8..=8 {
                let d = DivisorClass::new(a, b);
                let dual = canonical_class() - d;
                assert_eq!(
                    d.euler_characteristic().unwrap(),
                    dual.euler_characteristic().unwrap(),
                    "({a}, {b})"
                );
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(DivisorClass::new(5, -1).to_string(), "5C - F");
        assert_eq!(DivisorClass::new(-2, 1).to_string(), "-2C + F");
        assert_eq!(DivisorClass::new(4, -2).to_string(), "4C - 2F");
        assert_eq!(DivisorClass::new(0, 0).to_string(), "0");
        assert_eq!(DivisorClass::new(1, 0).to_string(), "C");
        assert_eq!(DivisorClass::new(0, -1).to_string(), "-F");
    }
}
