//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use permbrsc::actions::{builtin_group, example_base_odd, example_base_sym_pairs, pair_action, Family};
use permbrsc::brsc::{self, DEFAULT_NODE_BUDGET};
use permbrsc::explorer::{self, n_prime, CatalogRow, Verdict};
use permbrsc::galois::{self, DEFAULT_LATTICE_BOUND};
use permbrsc::moore::{validate_moore_family, SimplicialComplex};
use permbrsc::{Permutation, PermutationGroup, PointSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, message: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    check(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn set(width: usize, points: &[usize]) -> PointSet {
    PointSet::from_points(width, points.iter().map(|p| p - 1)).unwrap()
}

fn sym_pair_base_size(n: usize) -> usize {
    match n % 3 {
        0 => 2 * n / 3,
        1 => 2 * (n - 1) / 3,
        _ => 2 * (n - 2) / 3 + 1,
    }
}

fn sym_pair_bases() -> Outcome {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for n in 3..=9 {
        let (pairs, _) = pair_action(&builtin_group(Family::Symmetric, n).unwrap()).unwrap();
        let b = example_base_sym_pairs(n).unwrap();
        check(brsc::is_base(&pairs, &b), format!("n={n}: {b} is not a base"))?;
        check(b.len() == sym_pair_base_size(n), format!("n={n}: size {} expected {}", b.len(), sym_pair_base_size(n)))?;
        sizes.push(format!("{n}:{}", b.len()));
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("sizes {} in {:?}", sizes.join(" "), start.elapsed()))
}

fn odd_order_bases() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in [3, 5, 7, 9] {
        let g = builtin_group(Family::Cyclic, n).unwrap();
        let (pairs, map) = pair_action(&g).unwrap();
        let b = example_base_odd(&g).unwrap();
        check(brsc::is_base(&pairs, &b), format!("C{n}: construction {b} is not a base"))?;
        check(b.len() == (n - 1) / 2, format!("C{n}: construction has size {}", b.len()))?;
        let m = brsc::min_base_size(&pairs, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
        if m.size != (n - 1) / 2 {
            let witness: Vec<String> = m.witness.iter().map(|i| map.name(i)).collect();
            failures.push(format!(
                "C{n}: min_base_size {} via {{{}}} but (n-1)/2 = {}",
                m.size,
                witness.join(","),
                (n - 1) / 2
            ));
        }
    }
    within(start, Duration::from_secs(5))?;
    if failures.is_empty() {
        Ok(format!("constructions are bases, minimum attained, {:?}", start.elapsed()))
    } else {
        Err(failures.join("; "))
    }
}

fn small_family() -> Outcome {
    let start = Instant::now();
    let members = [&[][..], &[1], &[2], &[3], &[2, 3, 4], &[1, 2, 3, 4]];
    let family = validate_moore_family(members.iter().map(|m| set(4, m)).collect(), set(4, &[1, 2, 3, 4]))
        .map_err(|e| e.to_string())?;
    let w = family.is_transversal(&[2, 1, 0]).unwrap().ok_or("(3,2,1) is not a transversal")?;
    let expected = vec![set(4, &[]), set(4, &[3]), set(4, &[2, 3, 4]), set(4, &[1, 2, 3, 4])];
    check(w.chain == expected, format!("chain {:?}", w.chain))?;
    check(family.is_transversal(&[0, 1, 2]).unwrap().is_none(), "(1,2,3) is a transversal")?;
    let complex = family.with_generators(set(4, &[1, 2, 3])).unwrap().transversal_complex();
    let power_set: Vec<PointSet> = PointSet::all_subsets(3).map(|s| set(4, &s.to_one_based())).collect();
    let mut power_set = power_set;
    power_set.sort();
    check(complex.independents() == power_set.as_slice(), format!("independents {:?}", complex.independents()))?;
    let bases = complex.bases();
    check(bases.rank == 3 && bases.pure, "rank or purity")?;
    check(complex.exchange_violation().is_none(), "exchange property fails")?;
    within(start, Duration::from_secs(1))?;
    Ok("chain 0 < 3 < 234 < 1234, complex is P(123)".into())
}

fn oracle_actions() -> Vec<(&'static str, PermutationGroup)> {
    let sym3 = builtin_group(Family::Symmetric, 3).unwrap();
    let sym4 = builtin_group(Family::Symmetric, 4).unwrap();
    vec![
        ("Sym(3)", sym3.clone()),
        ("Sym(4)", sym4.clone()),
        ("C6", builtin_group(Family::Cyclic, 6).unwrap()),
        ("D4", builtin_group(Family::Dihedral, 4).unwrap()),
        ("Sym(3) pairs", pair_action(&sym3).unwrap().0),
        ("Sym(4) pairs", pair_action(&sym4).unwrap().0),
    ]
}

fn independence_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (name, g) in oracle_actions() {
        let family =
            galois::closed_set_lattice(&g, DEFAULT_LATTICE_BOUND).map_err(|e| e.to_string())?.to_moore_family();
        for y in PointSet::all_subsets(g.degree()) {
            let by_group = brsc::is_independent(&g, &y).is_some();
            let by_lattice = family.is_independent_in_family(&y).is_some();
            check(by_group == by_lattice, format!("{name}: {y} group={by_group} lattice={by_lattice}"))?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{checked} subsets agree"))
}

fn base_closure_equivalence() -> Outcome {
    let mut checked = 0;
    for (name, g) in oracle_actions() {
        for b in PointSet::all_subsets(g.degree()) {
            let (base, dense) = brsc::closure_base_equivalence(&g, &b).map_err(|e| e.to_string())?;
            check(base == dense, format!("{name}: {b} base={base} dense={dense}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} subsets agree"))
}

fn random_subset(rng: &mut StdRng, n: usize) -> PointSet {
    PointSet::from_points(n, (0..n).filter(|_| rng.gen_bool(0.4))).unwrap()
}

fn closure_axioms() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let families = [Family::Symmetric, Family::Alternating, Family::Cyclic, Family::Dihedral];
    let cases = 240;
    for case in 0..cases {
        let family = families[case % families.len()];
        let n = rng.gen_range(3..=7);
        let g = builtin_group(family, n).unwrap();
        let y = random_subset(&mut rng, n);
        let z = y.union(&random_subset(&mut rng, n));
        let cl = |s: &PointSet| galois::closure(&g, s).map_err(|e| e.to_string());
        let (cy, cz) = (cl(&y)?, cl(&z)?);
        let tag = format!("case {case} {family:?}({n}) Y={y} Z={z}");
        check(y.is_subset(&cy), format!("{tag}: not extensive"))?;
        check(cl(&cy)? == cy, format!("{tag}: not idempotent"))?;
        check(cy.is_subset(&cz), format!("{tag}: not monotone"))?;
        let (gy, gcy) = (g.pointwise_stabilizer(&y), g.pointwise_stabilizer(&cy));
        check(gy.same_subgroup(&gcy), format!("{tag}: G_Cl(Y) != G_Y"))?;
    }
    Ok(format!("{cases} cases"))
}

fn matroids() -> Outcome {
    let start = Instant::now();
    let triangle_forests = {
        let ground = set(3, &[1, 2, 3]);
        let trees = [set(3, &[1, 2]), set(3, &[1, 3]), set(3, &[2, 3])];
        SimplicialComplex::from_facets(ground, &trees).unwrap()
    };
    let cases = [
        ("U(2,3)", SimplicialComplex::uniform(set(3, &[1, 2, 3]), 2)),
        ("U(2,4)", SimplicialComplex::uniform(set(4, &[1, 2, 3, 4]), 2)),
        ("M(K3)", triangle_forests),
    ];
    for (name, c) in &cases {
        check(c.exchange_violation().is_none(), format!("{name}: exchange property fails"))?;
        check(c.is_boolean_representable().representable, format!("{name}: not boolean representable"))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok("U(2,3), U(2,4), M(K3)".into())
}

fn pair_witness() -> Outcome {
    let sym4 = builtin_group(Family::Symmetric, 4).unwrap();
    let (pairs, map) = pair_action(&sym4).unwrap();
    let bad = map.set_of(&[(0, 1), (2, 3)]);
    check(brsc::is_independent(&pairs, &bad).is_none(), "{12,34} is independent")?;
    check(!brsc::is_base(&pairs, &bad), "{12,34} is a base")?;
    let good = map.set_of(&[(0, 1), (1, 2)]);
    let report = brsc::base_report(&pairs, &good).ok_or("{12,23} is not a base")?;
    check(report.irredundant && report.size == 2, "{12,23} is not an irredundant base of size 2")?;

    let stabilizer = pairs.pointwise_stabilizer(&bad);
    let mut found: Vec<Permutation> = stabilizer.elements().unwrap().into_iter().cloned().collect();
    found.sort_by_key(|p| p.images().collect::<Vec<_>>());
    let expected_gens = vec![Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap()];
    let expected = PermutationGroup::new(4, expected_gens).unwrap();
    let mut expected: Vec<Permutation> =
        expected.elements().unwrap().elements().iter().map(|p| map.induced(p)).collect();
    expected.sort_by_key(|p| p.images().collect::<Vec<_>>());
    let show = |v: &[Permutation]| {
        v.iter()
            .map(|p| {
                let base = sym4.elements().unwrap().elements().iter().find(|s| map.induced(s) == *p).unwrap();
                base.to_string()
            })
            .collect::<Vec<_>>()
            .join(", ")
    };
    check(
        found == expected,
        format!("stabilizer of {{12,34}} is {{{}}}, expected {{{}}}", show(&found), show(&expected)),
    )?;
    Ok("{12,34} dependent with stabilizer {(), (1,2)(3,4)}; {12,23} irredundant base".into())
}

fn conjecture_catalog() -> Outcome {
    let start = Instant::now();
    let specs: Vec<String> = ["cyc:3", "cyc:5", "cyc:7", "alt:5"].iter().map(|s| s.to_string()).collect();
    let rows = explorer::catalog_run(&specs, DEFAULT_NODE_BUDGET, explorer::resolve_builtin);
    let mut failures = Vec::new();
    for row in &rows {
        let r = match row {
            CatalogRow::Report(r) => r,
            CatalogRow::Error { group, error } => return Err(format!("{group}: {error}")),
        };
        check(r.verdict == Verdict::NotAWitness, format!("{}: verdict {}", r.group, r.verdict.as_str()))?;
        check(r.certified, format!("{}: witness not certified", r.group))?;
        if r.min_base != Some(n_prime(r.n)) {
            failures.push(format!("{}: min_base {:?} but n' = {}", r.group, r.min_base, r.n_prime));
        }
    }
    within(start, Duration::from_secs(30))?;
    if failures.is_empty() {
        Ok(format!("{} rows, all not-a-witness with min_base = n'", rows.len()))
    } else {
        Err(format!("all rows not-a-witness and certified, but {}", failures.join("; ")))
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 pair bases for Sym(n)", sym_pair_bases),
        ("2 odd-order pair bases", odd_order_bases),
        ("3 small Moore family", small_family),
        ("4 independence: group vs lattice", independence_equivalence),
        ("5 base iff closure is everything", base_closure_equivalence),
        ("6 closure axioms", closure_axioms),
        ("7 matroids are boolean representable", matroids),
        ("8 Sym(4) pair witness", pair_witness),
        ("9 conjecture catalog", conjecture_catalog),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, criterion) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(criterion)).unwrap_or_else(|e| {
            Err(format!(
                "panicked: {:?}",
                e.downcast_ref::<String>().map(String::as_str).or(e.downcast_ref::<&str>().copied())
            ))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
