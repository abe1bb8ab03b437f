//! Acceptance suite: every headline claim of the toolkit, run end to end at
//! its stated tolerance, one pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use solvcover_core::affine::census_primitive_solvable;
use solvcover_core::hurwitz::{
    format_rat, scan_dimension_bounds, zariski_bound_parts, zariski_lower_bound, Rat, Target,
};
use solvcover_core::monodromy::check_zariski_on_tuples;
use solvcover_core::perm::Permutation;
use solvcover_core::surface::verify_surface_numerics;
use solvcover_core::PermGroup;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn pass(criterion: u32, elapsed: Duration, limit: Duration, detail: &str) {
    assert!(
        elapsed <= limit,
        "criterion {criterion} exceeded its runtime target: {elapsed:.2?} > {limit:.2?}"
    );
    println!("ACCEPT criterion {criterion} PASS ({elapsed:.2?} <= {limit:.2?}): {detail}");
}

#[test]
fn criterion_1_fixed_point_bound_exhaustive() {
    let start = Instant::now();
    let mut groups = 0u64;
    let mut elements = 0u64;
    for degree in [4usize, 5, 7, 8, 9] {
        let census = census_primitive_solvable(degree).unwrap();
        assert!(census.exhaustive);
        assert!(!census.entries.is_empty(), "degree {degree}");
        for entry in &census.entries {
            groups += 1;
            for g in entry.group.elements().unwrap() {
                if g.is_identity() {
                    continue;
                }
                elements += 1;
                assert!(
                    (g.fixed_point_count() as u64) <= entry.fixed_point_bound,
                    "degree {degree}, order {}: {g} has {} fixed points > bound {}",
                    entry.order,
                    g.fixed_point_count(),
                    entry.fixed_point_bound
                );
            }
        }
    }
    pass(
        1,
        start.elapsed(),
        Duration::from_secs(60),
        &format!("p^(k-1) bound holds for all {elements} nonidentity elements of {groups} census groups at degrees 4,5,7,8,9"),
    );
}

#[test]
fn criterion_2_mersenne_bound_exhaustive() {
    let start = Instant::now();
    let mut witness_at_8: Option<(u64, Permutation)> = None;
    for degree in [4usize, 8] {
        let census = census_primitive_solvable(degree).unwrap();
        for entry in &census.entries {
            assert_eq!(entry.mersenne_bound, Some(2), "degree {degree}");
            for g in entry.group.elements().unwrap() {
                if g.is_identity() {
                    continue;
                }
                assert!(
                    g.fixed_point_count() <= 2,
                    "degree {degree}, order {}: {g} has {} fixed points",
                    entry.order,
                    g.fixed_point_count()
                );
                if degree == 8 && g.fixed_point_count() == 2 && witness_at_8.is_none() {
                    witness_at_8 = Some((entry.order, g.clone()));
                }
            }
        }
    }
    let witness = match &witness_at_8 {
        Some((order, g)) => format!("witness with exactly 2 fixed points at degree 8: {g} in the order-{order} group"),
        None => "no element with exactly 2 fixed points exists at degree 8".to_string(),
    };
    pass(
        2,
        start.elapsed(),
        Duration::from_secs(30),
        &format!("<= 2 fixed points throughout degrees 4 and 8; {witness}"),
    );
}

#[test]
fn criterion_3_structure_clauses_exhaustive() {
    let start = Instant::now();
    let mut groups = 0u64;
    for degree in 2..=9usize {
        let census = census_primitive_solvable(degree).unwrap();
        if degree == 6 {
            assert!(census.entries.is_empty(), "degree 6 census must be empty");
            continue;
        }
        for entry in &census.entries {
            groups += 1;
            assert!(
                entry.structure.all_clauses_hold(),
                "degree {degree}, order {}: {:?}",
                entry.order,
                entry.structure
            );
            assert!(entry.structure.stabilizer_core_trivial);
        }
    }
    pass(
        3,
        start.elapsed(),
        Duration::from_secs(60),
        &format!("all four structure clauses hold for {groups} census groups at degrees 2..=9; degree-6 census is empty"),
    );
}

#[test]
fn criterion_4_branch_bound_table() {
    let start = Instant::now();
    let table: Vec<u64> = [5u64, 7, 8, 9, 16]
        .iter()
        .map(|&d| zariski_lower_bound(d).unwrap())
        .collect();
    assert_eq!(table, vec![2, 3, 3, 3, 4]);
    pass(
        4,
        start.elapsed(),
        Duration::from_secs(1),
        "branch bounds at degrees (5,7,8,9,16) are exactly (2,3,3,3,4)",
    );
}

#[test]
fn criterion_5_genus_seven_scan() {
    let start = Instant::now();
    let scan = scan_dimension_bounds(7, 10_000).unwrap();
    assert_eq!(scan.max_rational, rat(8, 1));
    assert_eq!(scan.rational_argmax, vec![5, 16]);
    assert_eq!(scan.max_elliptic, rat(6, 1));
    assert!(scan.tail_is_dominated());

    // Without the Mersenne refinement, degree 8 would breach the bound.
    let parts = zariski_bound_parts(8).unwrap();
    let generic_only = rat(2 * 7 - 2 + 2 * 8, parts.generic as i64) - rat(3, 1);
    assert_eq!(generic_only, rat(11, 1));
    assert!(generic_only > rat(8, 1));

    // And with it, the degree-8 row sits below 8.
    let d8 = scan
        .rows
        .iter()
        .find(|r| r.degree == 8 && r.target == Target::Rational)
        .unwrap();
    assert_eq!(d8.bound, rat(19, 3));

    pass(
        5,
        start.elapsed(),
        Duration::from_secs(5),
        &format!(
            "genus-7 scan to 10^4: rational max {} at degrees {:?}, elliptic max {}; generic-only degree-8 value {} shows the Mersenne refinement is necessary",
            format_rat(scan.max_rational),
            scan.rational_argmax,
            format_rat(scan.max_elliptic),
            format_rat(generic_only)
        ),
    );
}

#[test]
fn criterion_6_genus_four_scan() {
    let start = Instant::now();
    let scan = scan_dimension_bounds(4, 10_000).unwrap();
    assert_eq!(scan.max_rational, rat(13, 2));
    assert!(scan.max_rational < rat(7, 1));
    assert!(scan.tail_is_dominated());
    pass(
        6,
        start.elapsed(),
        Duration::from_secs(5),
        &format!(
            "genus-4 scan to 10^4: rational max {} < 7, so the 7-dimensional hyperelliptic family admits no such cover",
            format_rat(scan.max_rational)
        ),
    );
}

#[test]
fn criterion_7_tuple_space_verification() {
    let start = Instant::now();
    for (d, r) in [(4usize, 3usize), (4, 4), (5, 3), (5, 4)] {
        let report = check_zariski_on_tuples(d, r).unwrap();
        assert!(
            report.violations.is_empty(),
            "({d},{r}): {:?}",
            report.violations
        );
        assert!(report.primitive_solvable > 0, "({d},{r})");
    }
    let sixes = check_zariski_on_tuples(6, 3).unwrap();
    assert!(sixes.violations.is_empty());
    assert_eq!(
        sixes.primitive_solvable, 0,
        "no primitive solvable tuples exist at degree 6"
    );
    assert!(sixes.transitive > 0);
    pass(
        7,
        start.elapsed(),
        Duration::from_secs(600),
        "zero violations over the full tuple spaces (4,3), (4,4), (5,3), (5,4); (6,3) has transitive tuples but no primitive solvable ones",
    );
}

#[test]
fn criterion_8_surface_numerics() {
    let start = Instant::now();
    let report = verify_surface_numerics();
    assert!(report.all_pass(), "failures: {:?}", report.failures());
    let get = |name: &str| {
        report
            .checks
            .iter()
            .find(|c| c.name == name)
            .unwrap_or_else(|| panic!("check {name} present"))
            .actual
            .clone()
    };
    assert_eq!(get("H = 3C - K equals 5C - F"), "5C - F");
    assert_eq!(get("genus of Z"), "7");
    assert_eq!(get("chi(H)"), "9");
    assert_eq!(get("dim |H| granted vanishing"), "8");
    assert_eq!(get("family dimension = dim |H| + 1"), "9");
    pass(
        8,
        start.elapsed(),
        Duration::from_secs(1),
        "H = 3C - K = 5C - F, g(Z) = 7, chi(H) = 9 (dim |H| = 8 granted vanishing), family dimension 9 = 8 + 1",
    );
}

// ---------------------------------------------------------------------------
// Criterion 9: randomized property suites, >= 100 cases each, plus report
// determinism. Shrinking proptest versions of these live in the properties
// test target; here a seeded generator keeps the acceptance run
// self-contained and reproducible.
// ---------------------------------------------------------------------------

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        // xorshift64*
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    fn permutation(&mut self, degree: usize) -> Permutation {
        let mut images: Vec<usize> = (0..degree).collect();
        for i in (1..degree).rev() {
            let j = self.below(i as u64 + 1) as usize;
            images.swap(i, j);
        }
        Permutation::from_images(images).unwrap()
    }
}

const CASES: usize = 128;

#[test]
fn criterion_9_property_suites() {
    let start = Instant::now();
    let mut rng = Rng(0x5eed_cafe_f00d_0001);

    // Group axioms on random permutations.
    for _ in 0..CASES {
        let d = 2 + rng.below(9) as usize;
        let (g, h, k) = (
            rng.permutation(d),
            rng.permutation(d),
            rng.permutation(d),
        );
        let assoc_left = g.compose(&h).unwrap().compose(&k).unwrap();
        let assoc_right = g.compose(&h.compose(&k).unwrap()).unwrap();
        assert_eq!(assoc_left, assoc_right);
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
        assert_eq!(g.compose(&Permutation::identity(d)).unwrap(), g);
    }

    // Orbit-stabilizer identity on random generated groups.
    for _ in 0..CASES {
        let d = 3 + rng.below(4) as usize; // degrees 3..=6
        let gens = vec![rng.permutation(d), rng.permutation(d)];
        let group = PermGroup::new(d, gens).unwrap();
        let order = group.order().unwrap();
        let x = rng.below(d as u64) as usize;
        let stab = group.stabilizer(x).unwrap().order().unwrap();
        let orbit = group.orbit(x).len() as u64;
        assert_eq!(order, stab * orbit, "degree {d}, point {x}");
    }

    // Sign equals the parity of the branch contribution (two independent
    // computations: inversion count vs cycle count).
    for _ in 0..CASES {
        let d = 2 + rng.below(11) as usize;
        let g = rng.permutation(d);
        let expected = if g.branch_contribution().is_multiple_of(2) { 1 } else { -1 };
        assert_eq!(g.sign(), expected);
    }

    // Bilinearity and symmetry of the intersection pairing.
    for _ in 0..CASES {
        use solvcover_core::DivisorClass;
        let r = |rng: &mut Rng| rng.below(41) as i64 - 20;
        let d1 = DivisorClass::new(r(&mut rng), r(&mut rng));
        let d2 = DivisorClass::new(r(&mut rng), r(&mut rng));
        let e = DivisorClass::new(r(&mut rng), r(&mut rng));
        let (a, b) = (r(&mut rng), r(&mut rng));
        assert_eq!(
            (a * d1 + b * d2).intersect(e),
            a * d1.intersect(e) + b * d2.intersect(e)
        );
        assert_eq!(d1.intersect(d2), d2.intersect(d1));
    }

    // Serre symmetry of the Euler characteristic expression.
    for _ in 0..CASES {
        use solvcover_core::surface::canonical_class;
        use solvcover_core::DivisorClass;
        let r = |rng: &mut Rng| rng.below(41) as i64 - 20;
        let d = DivisorClass::new(r(&mut rng), r(&mut rng));
        let dual = canonical_class() - d;
        assert_eq!(
            d.euler_characteristic().unwrap(),
            dual.euler_characteristic().unwrap()
        );
    }

    // Determinism: rebuilding a report yields byte-identical serialization.
    let scan_a = serde_json::to_string(&scan_dimension_bounds(7, 500).unwrap()).unwrap();
    let scan_b = serde_json::to_string(&scan_dimension_bounds(7, 500).unwrap()).unwrap();
    assert_eq!(scan_a, scan_b);
    let fp_a = serde_json::to_string(
        &solvcover_core::verify_fixed_point_bounds(5).unwrap(),
    )
    .unwrap();
    let fp_b = serde_json::to_string(
        &solvcover_core::verify_fixed_point_bounds(5).unwrap(),
    )
    .unwrap();
    assert_eq!(fp_a, fp_b);

    pass(
        9,
        start.elapsed(),
        Duration::from_secs(60),
        &format!("5 property suites x {CASES} seeded cases plus report-determinism double runs, zero failures"),
    );
}
