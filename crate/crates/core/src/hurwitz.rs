//! Branch-multiplicity lower bounds and moduli-dimension bounds for
//! primitive solvable branched covers, carried as exact rationals.
//!
//! A primitive solvable cover has prime-power degree `d = p^k`, and every
//! branch point contributes at least `ceil((p^k - p^(k-1)) / 2)` to the
//! branch divisor; when `d = 2^k` with `d - 1` a Mersenne prime the sharper
//! bound `2^(k-1) - 1` applies. Feeding the bound through Riemann-Hurwitz
//! caps the dimension of the family of genus-`g` curves admitting such a
//! cover of a rational or elliptic target.

use num_rational::Ratio;
use num_traits::Signed;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::group::is_prime;
use crate::perm::CycleType;

/// Exact rational with machine-integer parts; every quantity in range stays
/// far below overflow.
pub type Rat = Ratio<i64>;

fn serialize_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rat(*r))
}

fn serialize_opt_rat<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&format_rat(*r)),
        None => s.serialize_none(),
    }
}

/// Returns `(p, k)` with `n = p^k`, `p` prime, if `n` is a prime power.
pub fn factor_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut m = n;
            let mut k = 0;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((n, 1))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HurwitzError {
    #[error("degree {0} is not a prime power, so no primitive solvable cover of that degree exists")]
    NotPrimePower(u64),
    #[error("degree must be at least 2")]
    DegreeTooSmall,
    #[error("branch divisor degree {0} is negative: no such cover exists")]
    NegativeBranching(i64),
    #[error("Riemann-Hurwitz parity violated: total branching {0} has the wrong parity")]
    ParityViolation(i64),
    #[error("Riemann-Hurwitz yields the negative genus {0}")]
    NegativeGenus(i64),
    #[error("cycle type of degree {found} in branch data of degree {expected}")]
    DegreeMismatch { expected: u64, found: u64 },
    #[error("listed branch point has trivial local monodromy (all parts 1)")]
    UnbranchedPoint,
}

/// The two pieces of the branch-multiplicity lower bound at a prime-power
/// degree, plus their maximum, which is the bound actually used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZariskiBound {
    pub prime: u64,
    pub exponent: u32,
    /// `ceil((p^k - p^(k-1)) / 2)`.
    pub generic: u64,
    /// `2^(k-1) - 1`, present when `p = 2` and `d - 1` is prime.
    pub mersenne: Option<u64>,
    /// `max(generic, mersenne)`.
    pub effective: u64,
}

/// Both components of the branch-multiplicity bound at degree `d`.
pub fn zariski_bound_parts(d: u64) -> Result<ZariskiBound, HurwitzError> {
    if d < 2 {
        return Err(HurwitzError::DegreeTooSmall);
    }
    let (p, k) = factor_prime_power(d).ok_or(HurwitzError::NotPrimePower(d))?;
    let drop = d - d / p; // p^k - p^(k-1)
    let generic = drop.div_ceil(2);
    let mersenne = if p == 2 && is_prime(d - 1) {
        Some((d / 2) - 1) // 2^(k-1) - 1
    } else {
        None
    };
    let effective = mersenne.map_or(generic, |m| generic.max(m));
    Ok(ZariskiBound {
        prime: p,
        exponent: k,
        generic,
        mersenne,
        effective,
    })
}

/// Best integer lower bound for the branch multiplicity `b(y)` of a
/// primitive solvable cover of degree `d`.
pub fn zariski_lower_bound(d: u64) -> Result<u64, HurwitzError> {
    Ok(zariski_bound_parts(d)?.effective)
}

/// Degree of the branch divisor of a degree-`d` cover of a genus-`g_target`
/// curve by a genus-`g_source` curve: `2 g_source - 2 - d (2 g_target - 2)`.
pub fn branch_divisor_degree(
    g_source: u64,
    g_target: u64,
    d: u64,
) -> Result<i64, HurwitzError> {
    let deg = 2 * g_source as i64 - 2 - d as i64 * (2 * g_target as i64 - 2);
    if deg < 0 {
        return Err(HurwitzError::NegativeBranching(deg));
    }
    Ok(deg)
}

/// Target curve of the cover in the dimension count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Target {
    Rational,
    Elliptic,
}

impl Target {
    pub fn label(self) -> &'static str {
        match self {
            Target::Rational => "p1",
            Target::Elliptic => "elliptic",
        }
    }
}

/// Upper bound for the dimension of the family of genus-`g` curves with a
/// degree-`d` primitive solvable cover of the given target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionBound {
    pub genus: u64,
    pub degree: u64,
    pub prime: u64,
    pub exponent: u32,
    /// Effective branch-multiplicity lower bound.
    pub lower_bound: u64,
    pub target: Target,
    /// `(2g - 2 + 2d)/l - 3` for a rational target, `(2g - 2)/l` for an
    /// elliptic one, exactly.
    #[serde(serialize_with = "serialize_rat")]
    pub bound: Rat,
    /// The elliptic-target expression leaves the one modulus of the target
    /// curve unaccounted; this reports the verbatim value plus one for it.
    #[serde(serialize_with = "serialize_opt_rat")]
    pub bound_with_target_modulus: Option<Rat>,
}

pub fn family_dimension_bound(
    genus: u64,
    degree: u64,
    target: Target,
) -> Result<DimensionBound, HurwitzError> {
    let parts = zariski_bound_parts(degree)?;
    let l = Rat::from_integer(parts.effective as i64);
    let g = genus as i64;
    let d = degree as i64;
    let bound = match target {
        Target::Rational => Rat::from_integer(2 * g - 2 + 2 * d) / l - Rat::from_integer(3),
        Target::Elliptic => Rat::from_integer(2 * g - 2) / l,
    };
    let bound_with_target_modulus = match target {
        Target::Rational => None,
        Target::Elliptic => Some(bound + Rat::from_integer(1)),
    };
    Ok(DimensionBound {
        genus,
        degree,
        prime: parts.prime,
        exponent: parts.exponent,
        lower_bound: parts.effective,
        target,
        bound,
        bound_with_target_modulus,
    })
}

/// Per-prime cap on every dimension bound past the scan horizon:
/// `(2g - 2)/l + 4p/(p - 1) - 3` with `l` the bound at the first power of
/// `p` beyond the horizon.
#[derive(Debug, Clone, Serialize)]
pub struct TailRow {
    pub prime: u64,
    pub first_degree_past_horizon: u64,
    pub lower_bound: u64,
    #[serde(serialize_with = "serialize_rat")]
    pub cap: Rat,
}

/// Scan of the dimension bounds over every prime-power degree in
/// `[5, d_max]`, both targets.
#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub genus: u64,
    pub d_max: u64,
    pub rows: Vec<DimensionBound>,
    #[serde(serialize_with = "serialize_rat")]
    pub max_rational: Rat,
    pub rational_argmax: Vec<u64>,
    #[serde(serialize_with = "serialize_rat")]
    pub max_elliptic: Rat,
    pub elliptic_argmax: Vec<u64>,
    /// Per-prime tail caps for small primes.
    pub tails: Vec<TailRow>,
    /// Every degree beyond the horizon has bound at most this:
    /// `(8g - 8)/d_max + 5`, from `l >= d/4`.
    #[serde(serialize_with = "serialize_rat")]
    pub global_tail_cap: Rat,
}

impl ScanResult {
    pub fn max_overall(&self) -> Rat {
        self.max_rational.max(self.max_elliptic)
    }

    /// True when no degree past the horizon can beat the reported maximum.
    pub fn tail_is_dominated(&self) -> bool {
        self.global_tail_cap <= self.max_overall()
    }
}

/// Evaluates [`family_dimension_bound`] for every prime power in
/// `[5, d_max]` and both targets, reporting the maxima, their argument
/// degrees, and tail caps showing larger horizons cannot raise the maxima.
pub fn scan_dimension_bounds(genus: u64, d_max: u64) -> Result<ScanResult, HurwitzError> {
    if d_max < 5 {
        return Err(HurwitzError::DegreeTooSmall);
    }
    let mut rows = Vec::new();
    let mut max_rational: Option<Rat> = None;
    let mut rational_argmax = Vec::new();
    let mut max_elliptic: Option<Rat> = None;
    let mut elliptic_argmax = Vec::new();
    for d in 5..=d_max {
        if factor_prime_power(d).is_none() {
            continue;
        }
        for target in [Target::Rational, Target::Elliptic] {
            let row = family_dimension_bound(genus, d, target)?;
            let (max, argmax) = match target {
                Target::Rational => (&mut max_rational, &mut rational_argmax),
                Target::Elliptic => (&mut max_elliptic, &mut elliptic_argmax),
            };
            match max {
                Some(m) if *m > row.bound => {}
                Some(m) if *m == row.bound => argmax.push(d),
                _ => {
                    *max = Some(row.bound);
                    argmax.clear();
                    argmax.push(d);
                }
            }
            rows.push(row);
        }
    }

    let mut tails = Vec::new();
    for p in 2..=31u64 {
        if !is_prime(p) {
            continue;
        }
        let mut first = p;
        while first <= d_max {
            first *= p;
        }
        let parts = zariski_bound_parts(first)?;
        let l = Rat::from_integer(parts.effective as i64);
        let cap = Rat::from_integer(2 * genus as i64 - 2) / l
            + Rat::new(4 * p as i64, p as i64 - 1)
            - Rat::from_integer(3);
        tails.push(TailRow {
            prime: p,
            first_degree_past_horizon: first,
            lower_bound: parts.effective,
            cap,
        });
    }
    // l >= d(p-1)/(2p) >= d/4, so past the horizon every rational-target
    // bound is at most (2g-2+2d)(4/d) - 3 <= (8g-8)/d_max + 5, and the
    // elliptic bound is smaller still.
    let global_tail_cap =
        Rat::new(8 * genus as i64 - 8, d_max as i64) + Rat::from_integer(5);

    Ok(ScanResult {
        genus,
        d_max,
        rows,
        max_rational: max_rational.expect("range contains 5"),
        rational_argmax,
        max_elliptic: max_elliptic.expect("range contains 5"),
        elliptic_argmax,
        tails,
        global_tail_cap,
    })
}

/// Branch data of a hypothetical cover: degree, target genus, and the local
/// cycle type over each branch point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchData {
    degree: u64,
    target_genus: u64,
    branch_points: Vec<CycleType>,
}

impl BranchData {
    pub fn new(
        degree: u64,
        target_genus: u64,
        branch_points: Vec<CycleType>,
    ) -> Result<Self, HurwitzError> {
        for ct in &branch_points {
            if ct.degree() as u64 != degree {
                return Err(HurwitzError::DegreeMismatch {
                    expected: degree,
                    found: ct.degree() as u64,
                });
            }
            if !ct.is_branched() {
                return Err(HurwitzError::UnbranchedPoint);
            }
        }
        Ok(BranchData {
            degree,
            target_genus,
            branch_points,
        })
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn target_genus(&self) -> u64 {
        self.target_genus
    }

    pub fn branch_points(&self) -> &[CycleType] {
        &self.branch_points
    }

    /// Number of branch points `r`.
    pub fn point_count(&self) -> u64 {
        self.branch_points.len() as u64
    }

    /// Branch multiplicities `b(y)`, one per branch point.
    pub fn multiplicities(&self) -> Vec<u64> {
        self.branch_points
            .iter()
            .map(|ct| ct.branch_contribution() as u64)
            .collect()
    }

    pub fn total_branching(&self) -> u64 {
        self.multiplicities().iter().sum()
    }
}

/// Genus of the cover from Riemann-Hurwitz:
/// `2g - 2 = d (2h - 2) + total branching`.
pub fn rh_genus(branch: &BranchData) -> Result<u64, HurwitzError> {
    let d = branch.degree() as i64;
    let h = branch.target_genus() as i64;
    let rhs = d * (2 * h - 2) + branch.total_branching() as i64;
    if rhs % 2 != 0 {
        return Err(HurwitzError::ParityViolation(rhs));
    }
    let g2 = rhs + 2;
    if g2 < 0 {
        return Err(HurwitzError::NegativeGenus(g2 / 2));
    }
    Ok((g2 / 2) as u64)
}

/// Renders an exact rational as `num/den` (or just `num` when integral).
pub fn format_rat(r: Rat) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Floor of an exact rational.
pub fn rat_floor(r: Rat) -> i64 {
    let f = r.floor();
    debug_assert!((r - f).abs() < Rat::from_integer(1));
    f.to_integer()
}
