//! Acceptance suite: ten criteria, each printed as one PASS/FAIL line.
//! Runs without the libtest harness so the lines always reach the output.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use trichar_core::algebra::Idempotent;
use trichar_core::characters::{perp_check, ClassFunction, ClassLayout, SupercharacterTheory};
use trichar_core::families;
use trichar_core::group::{
    classify_regular, orbits, superclass_of_triple, superclass_triples, triple_of_superclass,
    Ambient, GroupElement, LocalOrbitTable, Regularity, TriangularGroup,
};
use trichar_core::linalg::{self, Vector};
use trichar_core::resind::{
    build_subgroup, catalog_subgroups, diagonal_product_check, product_decompose, SubgroupPair,
};
use trichar_core::scalars::{additive_character, Cyclotomic, FqElem, Rational};

type Outcome = Result<String, String>;

fn catalog() -> Vec<(&'static str, TriangularGroup)> {
    vec![
        ("UT(3,2)", families::ut(3, 2).unwrap()),
        ("UT(3,3)", families::ut(3, 3).unwrap()),
        ("UT(4,2)", families::ut(4, 2).unwrap()),
        ("T(2,3)", families::t(2, 3).unwrap()),
        ("T(2,4)", families::t(2, 4).unwrap()),
        ("T(3,3)", families::t(3, 3).unwrap()),
    ]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::from_int(n, k)
}

/// Per-element value of a superclass function.
fn at(th: &SupercharacterTheory, f: &ClassFunction, g: usize) -> Cyclotomic {
    f.eval(&th.partition, g).clone()
}

/// `|G|^{-1} sum_g f1(g) conj(f2(g))`, summed element by element.
fn elementwise_inner(
    th: &SupercharacterTheory,
    f1: &ClassFunction,
    f2: &ClassFunction,
) -> Cyclotomic {
    let n = th.layout.order;
    let mut total = Cyclotomic::zero(n);
    for g in 0..th.group.order() {
        total = &total + &(&at(th, f1, g) * &at(th, f2, g).conj());
    }
    total.scale(&Rational::new(
        BigInt::from(1),
        BigInt::from(th.group.order()),
    ))
}

fn criterion_1() -> Outcome {
    let g = families::ut(3, 2).map_err(|e| e.to_string())?;
    let order = g.order();
    ensure(order == 8, || format!("|UT(3,2)| = {order}"))?;
    // regular character by counting fixed points of left multiplication
    let rho: Vec<i64> = (0..order)
        .map(|a| {
            let x = g.element(a);
            (0..order)
                .filter(|&b| g.mul(&x, &g.element(b)) == g.element(b))
                .count() as i64
        })
        .collect();
    let chi1: Vec<i64> = vec![1; order];
    let chi2: Vec<i64> = rho.iter().map(|r| r - 1).collect();
    // coarse superclasses K1 = {1}, K2 = G \ {1}; each character must be constant on K2
    for chi in [&chi1, &chi2] {
        ensure(chi[1..].iter().all(|&v| v == chi[1]), || {
            "not constant on G \\ {1}".into()
        })?;
    }
    let table = [[chi1[0], chi2[0]], [chi1[1], chi2[1]]];
    let expected = [[1, order as i64 - 1], [1, -1]];
    ensure(table == expected, || {
        format!("table {table:?}, expected {expected:?}")
    })?;
    let layout = Arc::new(ClassLayout {
        group_order: order,
        sizes: vec![1, order - 1],
        order: 2,
    });
    let c1 = ClassFunction::new(
        layout.clone(),
        vec![int(2, table[0][0]), int(2, table[1][0])],
    )
    .unwrap();
    let c2 = ClassFunction::new(
        layout.clone(),
        vec![int(2, table[0][1]), int(2, table[1][1])],
    )
    .unwrap();
    let ip = trichar_core::characters::inner_product(&c1, &c2).unwrap();
    ensure(ip.is_zero(), || format!("(chi1, chi2) = {ip}"))?;
    let n2 = trichar_core::characters::inner_product(&c2, &c2).unwrap();
    ensure(n2 == int(2, order as i64 - 1), || {
        format!("(chi2, chi2) = {n2}")
    })?;
    // regular identity: chi1 + chi2 * deg/norm = rho, with deg = norm = |G| - 1
    let sum = c1.add(&c2).unwrap();
    ensure(sum == ClassFunction::regular(layout), || {
        "chi1 + chi2 != rho".into()
    })?;
    Ok(format!("table [[1, {}], [1, -1]] on UT(3,2)", order - 1))
}

fn criterion_2(theories: &[(&str, SupercharacterTheory)]) -> Outcome {
    let mut notes = Vec::new();
    for (name, th) in theories {
        for c in th.axioms() {
            ensure(c.passed, || format!("{name}: {} ({:?})", c.name, c.witness))?;
        }
        // independent element-level recomputation
        let t = &th.table;
        ensure(t.len() == th.partition.len(), || {
            format!("{name}: not square")
        })?;
        ensure(th.partition.classes[0].members == [0], || {
            format!("{name}: {{1}} is not a superclass")
        })?;
        for class in &th.partition.classes {
            for chi in &t.characters {
                let v = at(th, chi, class.members[0]);
                ensure(class.members.iter().all(|&m| at(th, chi, m) == v), || {
                    format!("{name}: not constant")
                })?;
            }
        }
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let ip = elementwise_inner(th, &t.characters[i], &t.characters[j]);
                ensure(ip.is_zero(), || format!("{name}: (chi{i}, chi{j}) = {ip}"))?;
            }
        }
        let n = th.layout.order;
        for g in 0..th.group.order() {
            let mut total = Cyclotomic::zero(n);
            for i in 0..t.len() {
                let norm = elementwise_inner(th, &t.characters[i], &t.characters[i])
                    .to_rational()
                    .unwrap();
                let deg = at(th, &t.characters[i], 0).to_rational().unwrap();
                total = &total + &at(th, &t.characters[i], g).scale(&(deg / norm));
            }
            let expect = int(n, if g == 0 { th.group.order() as i64 } else { 0 });
            ensure(total == expect, || {
                format!("{name}: regular identity fails at element {g}")
            })?;
        }
        notes.push(format!("{name}:{}", t.len()));
    }
    Ok(notes.join(" "))
}

/// `e x e` evaluated from the coefficients of `e` in `kH`.
fn sandwich(g: &TriangularGroup, e: Idempotent, x: &[FqElem]) -> Vector {
    let f = g.field();
    let el = g.lattice().element(f, g.h(), e);
    let mut out = vec![FqElem::ZERO; g.dim()];
    for (a, &ca) in el.coeffs.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (b, &cb) in el.coeffs.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let y = g.right_h(b, &g.left_h(a, x));
            out = linalg::add(f, &out, &linalg::scale(f, f.mul(ca, cb), &y));
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    for (name, g) in catalog() {
        let f = g.field().clone();
        let d = g.dim();
        let one = g.lattice().one();
        let proper: Vec<Idempotent> = g.lattice().all().filter(|&e| e != one).collect();
        let in_primal = |e: Idempotent, x: &Vector| sandwich(&g, e, x) == *x;
        let basis: Vec<Vector> = (0..d).map(|k| g.algebra().basis_vector(k)).collect();
        let in_dual = |e: Idempotent, l: &Vector| {
            basis
                .iter()
                .all(|u| linalg::dot(&f, l, &sandwich(&g, e, u)) == linalg::dot(&f, l, u))
        };
        let mut counts = Vec::new();
        for (ambient, member) in [
            (
                Ambient::Primal,
                &in_primal as &dyn Fn(Idempotent, &Vector) -> bool,
            ),
            (Ambient::Dual, &in_dual),
        ] {
            let part = orbits(&g, ambient).map_err(|e| e.to_string())?;
            let covered: usize = part.orbits.iter().map(|o| o.members.len()).sum();
            ensure(covered as u64 == g.space_size(), || {
                format!("{name}: orbits do not cover")
            })?;
            let mut singular = 0;
            for o in &part.orbits {
                let oracle = o
                    .members
                    .iter()
                    .any(|&c| proper.iter().any(|&e| member(e, &g.decode(c))));
                let library = !matches!(classify_regular(&g, o), Regularity::Regular);
                ensure(oracle == library, || {
                    format!(
                        "{name}: orbit of {} classified differently",
                        o.representative
                    )
                })?;
                singular += oracle as usize;
            }
            counts.push((part.orbits.len() - singular, singular));
        }
        ensure(counts[0] == counts[1], || {
            format!("{name}: J {:?} vs J* {:?}", counts[0], counts[1])
        })?;
        notes.push(format!("{name}:{}/{}", counts[0].0, counts[0].1));
    }
    Ok(format!("regular/singular {}", notes.join(" ")))
}

fn criterion_4(theories: &[(&str, SupercharacterTheory)]) -> Outcome {
    for (name, th) in theories {
        let g = &th.group;
        let locals = LocalOrbitTable::build(g);
        for (k, class) in th.partition.classes.iter().enumerate() {
            let t = triple_of_superclass(g, &locals, class).map_err(|e| format!("{name}: {e}"))?;
            let back = superclass_of_triple(g, &th.partition, &t).map_err(|e| e.to_string())?;
            ensure(back == k, || {
                format!("{name}: superclass {k} round-trips to {back}")
            })?;
        }
        let b = superclass_triples(g, &locals).len();
        let a = trichar_core::characters::superchar_triples(g, &locals).len();
        ensure(a == b && b == th.partition.len(), || {
            format!(
                "{name}: |A| = {a}, |B| = {b}, superclasses = {}",
                th.partition.len()
            )
        })?;
    }
    Ok("round trips and counts agree on all catalog groups".into())
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for g in [families::ut(3, 2).unwrap(), families::ut(4, 2).unwrap()] {
        for c in 0..g.space_size() {
            ensure(perp_check(&g, &g.decode(c)), || {
                format!("exhaustive: lambda {c} fails")
            })?;
            checked += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let larger = [
        families::ut(3, 3).unwrap(),
        families::t(3, 3).unwrap(),
        families::ut(5, 2).unwrap(),
    ];
    for g in &larger {
        for _ in 0..100 {
            let c = rng.gen_range(0..g.space_size());
            ensure(perp_check(g, &g.decode(c)), || {
                format!("random: lambda {c} fails")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} forms"))
}

fn pair_reports(
    theories: &[(&str, SupercharacterTheory)],
) -> Result<Vec<(String, trichar_core::resind::PairReport)>, String> {
    let mut out = Vec::new();
    for (name, th) in theories {
        for (label, spec) in catalog_subgroups(&th.group).map_err(|e| e.to_string())? {
            let sub =
                build_subgroup(&th.group, &spec).map_err(|e| format!("{name} {label}: {e}"))?;
            let sub_th =
                SupercharacterTheory::build(sub.group.clone()).map_err(|e| e.to_string())?;
            let report = SubgroupPair::new(th, &sub, &sub_th)
                .analyze()
                .map_err(|e| format!("{name} {label}: {e}"))?;
            out.push((format!("{name} > {label}"), report));
        }
    }
    Ok(out)
}

fn criterion_6(reports: &[(String, trichar_core::resind::PairReport)]) -> Outcome {
    let mut entries = 0;
    for (label, r) in reports {
        ensure(r.restriction_witness.is_none(), || {
            format!("{label}: {:?}", r.restriction_witness)
        })?;
        for row in &r.restriction {
            for m in row {
                ensure(
                    m.is_integer() && *m >= Rational::from_integer(BigInt::from(0)),
                    || format!("{label}: m = {m}"),
                )?;
                entries += 1;
            }
        }
    }
    Ok(format!(
        "{} pairs, {entries} coefficients in Z>=0",
        reports.len()
    ))
}

fn criterion_7(reports: &[(String, trichar_core::resind::PairReport)]) -> Outcome {
    let zero = Rational::from_integer(BigInt::from(0));
    for (label, r) in reports {
        ensure(r.reciprocity_witness.is_none(), || {
            format!("{label}: {:?}", r.reciprocity_witness)
        })?;
        ensure(r.formula_witness.is_none(), || {
            format!("{label}: {:?}", r.formula_witness)
        })?;
        ensure(
            r.reciprocity_residuals.iter().flatten().all(|x| *x == zero),
            || format!("{label}: residual"),
        )?;
        ensure(
            r.superinduction.iter().flatten().all(|a| *a >= zero),
            || format!("{label}: negative a"),
        )?;
    }
    Ok(format!("{} pairs exact", reports.len()))
}

fn criterion_8(theories: &[(&str, SupercharacterTheory)]) -> Outcome {
    let mut count = 0;
    for (name, th) in theories
        .iter()
        .filter(|(n, _)| *n == "UT(3,2)" || *n == "T(2,3)")
    {
        for i in 0..th.len() {
            for j in 0..th.len() {
                let d = product_decompose(th, i, j).map_err(|e| e.to_string())?;
                ensure(d.is_exact() && d.nonneg_integers().is_some(), || {
                    format!("{name}: chi{i} chi{j}")
                })?;
                let degs: u64 = d
                    .nonneg_integers()
                    .unwrap()
                    .iter()
                    .zip(&th.table.degrees)
                    .map(|(c, g)| c * g)
                    .sum();
                ensure(degs == th.table.degrees[i] * th.table.degrees[j], || {
                    format!("{name}: degree mismatch")
                })?;
                count += 1;
            }
        }
    }
    let t23 = &theories.iter().find(|(n, _)| *n == "T(2,3)").unwrap().1;
    let big = (0..t23.len())
        .max_by_key(|&i| t23.table.degrees[i])
        .unwrap();
    diagonal_product_check(t23, big, big).map_err(|e| format!("diagonal: {e}"))?;
    Ok(format!(
        "{count} products; diagonal cross-check on T(2,3) chi{big}^2"
    ))
}

fn criterion_9() -> Outcome {
    let mut notes = Vec::new();
    for (name, g) in [
        ("UT(3,2)", families::ut(3, 2).unwrap()),
        ("UT(3,3)", families::ut(3, 3).unwrap()),
        ("UT(4,2)", families::ut(4, 2).unwrap()),
    ] {
        let f = g.field().clone();
        let alg = g.algebra().clone();
        let d = g.dim();
        let q = g.space_size();
        let th = SupercharacterTheory::build(g.clone()).map_err(|e| e.to_string())?;
        let axb = |a: &Vector, x: &Vector, b: &Vector| {
            // (1 + a) x (1 + b)
            let ax = linalg::add(&f, x, &alg.mul(a, x));
            linalg::add(&f, &ax, &alg.mul(&ax, b))
        };
        // superclasses: 1 + {a x b}
        for class in &th.partition.classes {
            let x = g.element(class.representative).x;
            let mut orbit = BTreeSet::new();
            for a in 0..q {
                for b in 0..q {
                    orbit.insert(g.index(&GroupElement {
                        h: 0,
                        x: axb(&g.decode(a), &x, &g.decode(b)),
                    }));
                }
            }
            ensure(
                orbit.into_iter().collect::<Vec<_>>() == class.members,
                || format!("{name}: superclass differs"),
            )?;
        }
        // dual orbits of N x N on J*
        let basis: Vec<Vector> = (0..d).map(|k| alg.basis_vector(k)).collect();
        let mut seen = vec![false; q as usize];
        let mut reps = Vec::new();
        for c in 0..q {
            if seen[c as usize] {
                continue;
            }
            reps.push(g.decode(c));
            let l = g.decode(c);
            for a in 0..q {
                for b in 0..q {
                    let (av, bv) = (g.decode(a), g.decode(b));
                    let image: Vector = basis
                        .iter()
                        .map(|u| linalg::dot(&f, &l, &axb(&av, u, &bv)))
                        .collect();
                    seen[g.encode(&image) as usize] = true;
                }
            }
        }
        ensure(reps.len() == th.len(), || {
            format!(
                "{name}: {} dual orbits, {} supercharacters",
                reps.len(),
                th.len()
            )
        })?;
        // Ind(xi_lambda, N_rt, N) by the defining sum
        let n = th.layout.order;
        let mut matched = BTreeSet::new();
        for l in &reps {
            let rt: BTreeSet<u64> = (0..q)
                .filter(|&y| {
                    basis
                        .iter()
                        .all(|u| linalg::dot(&f, l, &alg.mul(&g.decode(y), u)).is_zero())
                })
                .collect();
            let values: Vec<Cyclotomic> = (0..g.order())
                .map(|k| {
                    let x = g.element(k);
                    let mut total = Cyclotomic::zero(n);
                    for s in 0..g.order() {
                        let s = g.element(s);
                        let c = g.mul(&g.mul(&g.inv(&s), &x), &s);
                        if rt.contains(&g.encode(&c.x)) {
                            total = &total + &additive_character(&f, n, linalg::dot(&f, l, &c.x));
                        }
                    }
                    total.scale(&Rational::new(BigInt::from(1), BigInt::from(rt.len())))
                })
                .collect();
            let row = (0..th.len())
                .find(|&i| (0..g.order()).all(|k| at(&th, th.character(i), k) == values[k]))
                .ok_or_else(|| format!("{name}: induced character of {l:?} matches no row"))?;
            matched.insert(row);
        }
        ensure(matched.len() == th.len(), || {
            format!("{name}: rows matched {}", matched.len())
        })?;
        notes.push(format!("{name}:{}", th.len()));
    }
    Ok(notes.join(" "))
}

fn criterion_10() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_trichar");
    let run = || {
        Command::new(exe)
            .args([
                "check-all",
                "--builtin",
                "family=t,n=2,q=3",
                "--format",
                "json",
            ])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || {
        format!("exit {:?} / {:?}", a.status, b.status)
    })?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    ensure(!a.stdout.is_empty(), || "empty output".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let start = Instant::now();
    let theories: Vec<(&str, SupercharacterTheory)> = catalog()
        .into_iter()
        .map(|(n, g)| (n, SupercharacterTheory::build(g).expect("theory builds")))
        .collect();
    let reports = pair_reports(&theories);
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "coarse theory table", criterion_1()),
        (2, "supercharacter axioms", criterion_2(&theories)),
        (3, "orbit duality", criterion_3()),
        (4, "triple bijections", criterion_4(&theories)),
        (5, "perp lemma", criterion_5()),
        (
            6,
            "restriction theorem",
            reports.clone().and_then(|r| criterion_6(&r)),
        ),
        (
            7,
            "reciprocity and a-formula",
            reports.clone().and_then(|r| criterion_7(&r)),
        ),
        (8, "product corollary", criterion_8(&theories)),
        (9, "specialization to algebra groups", criterion_9()),
        (10, "determinism", criterion_10()),
    ];
    let mut failed = 0;
    for (k, title, r) in &results {
        match r {
            Ok(detail) => println!("criterion {k:>2} PASS  {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {k:>2} FAIL  {title}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1?}",
        results.len() - failed,
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
