//! Command dispatch. Every command produces a JSON value, a text rendering
//! and an exit status.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};
use trichar_core::algebra::{
    AbelianGroup, HAction, Idempotent, NilpotentAlgebra, ValidationReport,
};
use trichar_core::characters::{perp_check, SupercharacterTheory};
use trichar_core::check::Check;
use trichar_core::families::{builtin_family, Family};
use trichar_core::group::{
    check_orbit_intersections, check_stabilizer_characterization, orbit_duality, orbits,
    superclass_triples, superclasses, triple_bijection, Ambient, GroupElement, LocalOrbitTable,
    SuperclassTriple, TriangularGroup,
};
use trichar_core::resind::{
    build_subgroup, catalog_subgroups, product_decompose, PairReport, SubgroupPair, SubgroupSpec,
};
use trichar_core::{Error, Result};

use crate::config::{read_json, Command, SessionConfig, Source};
use crate::document::{vector_to_values, SubgroupDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_CONSISTENCY: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Consistency(_) => EXIT_CONSISTENCY,
        Error::Capability(_) => EXIT_CAPABILITY,
        _ => EXIT_VALIDATION,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Usage(_) => "usage",
        Error::Hypothesis(_) => "hypothesis",
        Error::Validation(_) => "validation",
        Error::Consistency(_) => "consistency",
        Error::Capability(_) => "capability",
    }
}

/// The result of one command.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub status: i32,
}

impl Outcome {
    pub fn from_error(e: &Error) -> Self {
        Outcome {
            json: json!({ "error": { "kind": error_kind(e), "message": e.to_string() } }),
            text: format!("error: {e}\n"),
            status: exit_code(e),
        }
    }
}

struct Session {
    name: String,
    labels: Vec<String>,
    report: ValidationReport,
    group: TriangularGroup,
}

type Raw = (String, Vec<String>, NilpotentAlgebra, AbelianGroup, HAction);

fn load_raw(config: &SessionConfig) -> Result<Raw> {
    Ok(match (&config.builtin, &config.input) {
        (Some(b), _) => {
            let data = builtin_family(Family::parse(&b.family)?, b.n, b.q)?;
            (b.name(), data.labels, data.algebra, data.h, data.action)
        }
        (None, Some(src)) => {
            let (doc, name) = match src {
                Source::Path(p) => (read_json(p)?, p.display().to_string()),
                Source::Inline(doc) => (doc.clone(), "input".to_string()),
            };
            let raw = doc.load()?;
            let labels = (0..raw.algebra.dim()).map(|i| format!("u{i}")).collect();
            (name, labels, raw.algebra, raw.h, raw.action)
        }
        (None, None) => return Err(Error::Usage("missing group: give builtin or input".into())),
    })
}

fn load(config: &SessionConfig) -> Result<Session> {
    let (name, labels, algebra, h, action) = load_raw(config)?;
    let report = trichar_core::algebra::validate_structure(&algebra, &h, &action);
    if !report.is_valid() {
        report.clone().into_result()?;
    }
    let group = TriangularGroup::new(algebra, h, &action)?;
    Ok(Session {
        name,
        labels,
        report,
        group,
    })
}

fn summary(s: &Session) -> Value {
    let g = &s.group;
    json!({
        "name": s.name,
        "p": g.field().p(),
        "q": g.field().q(),
        "basis": s.labels,
        "h_orders": g.h().orders(),
        "order": g.order(),
        "cyclotomic_order": g.cyclotomic_order(),
        "primitive_idempotents": g.lattice().len(),
    })
}

fn idem(e: Idempotent) -> Vec<usize> {
    e.indices().collect()
}

fn element_json(g: &TriangularGroup, e: &GroupElement) -> Value {
    json!({ "h": g.h().element(e.h), "x": vector_to_values(g.field(), &e.x) })
}

fn beta_json(g: &TriangularGroup, t: &SuperclassTriple) -> Value {
    json!({ "e": idem(t.e), "h": g.h().element(t.h), "omega": vector_to_values(g.field(), &g.decode(t.omega)) })
}

fn rationals(v: &[trichar_core::scalars::Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn checks_status(checks: &[Check]) -> i32 {
    if checks.iter().all(|c| c.passed) {
        EXIT_OK
    } else {
        EXIT_CONSISTENCY
    }
}

fn render_checks(out: &mut String, checks: &[Check]) {
    for c in checks {
        let _ = write!(
            out,
            "[{}] {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name
        );
        if let Some(w) = &c.witness {
            let _ = write!(out, ": {w}");
        }
        out.push('\n');
    }
}

/// Runs a configuration to completion.
pub fn run(config: &SessionConfig) -> Outcome {
    match dispatch(config) {
        Ok(o) => o,
        Err(e) => Outcome::from_error(&e),
    }
}

fn dispatch(config: &SessionConfig) -> Result<Outcome> {
    config.check()?;
    if config.command == Command::Validate {
        return validate(config);
    }
    let s = load(config)?;
    match config.command {
        Command::Validate => unreachable!(),
        Command::Superclasses => superclass_listing(&s),
        Command::Table => table(&s),
        Command::Restrict => pairs(&s, config, true),
        Command::Superinduce => pairs(&s, config, false),
        Command::Products => products(&s),
        Command::CheckAll => Ok(check_all(&s)),
    }
}

/// Reports every violated axiom rather than stopping at the first.
fn validate(config: &SessionConfig) -> Result<Outcome> {
    let (name, _, algebra, h, action) = load_raw(config)?;
    let report = trichar_core::algebra::validate_structure(&algebra, &h, &action);
    let valid = report.is_valid();
    let message = report.clone().into_result().err().map(|e| e.to_string());
    let json = json!({
        "name": name,
        "valid": valid,
        "nilpotency_index": report.nilpotency_index,
        "violations": report.violations,
        "message": message,
    });
    let mut text = format!("{name}: dim J = {}, |H| = {}\n", algebra.dim(), h.order());
    if valid {
        let _ = writeln!(
            text,
            "valid, nilpotency index {}",
            report.nilpotency_index.unwrap_or(0)
        );
    } else {
        for v in &report.violations {
            let _ = writeln!(text, "violation: {v:?}");
        }
        let _ = writeln!(text, "{}", message.unwrap_or_default());
    }
    Ok(Outcome {
        json,
        text,
        status: if valid { EXIT_OK } else { EXIT_VALIDATION },
    })
}

fn superclass_listing(s: &Session) -> Result<Outcome> {
    let g = &s.group;
    let partition = superclasses(g);
    let locals = LocalOrbitTable::build(g);
    let triples = triple_bijection(g, &partition, &locals)?;
    let classes: Vec<Value> = partition
        .classes
        .iter()
        .zip(&triples)
        .map(|(k, t)| {
            json!({
                "representative": element_json(g, &g.element(k.representative)),
                "size": k.size(),
                "triple": beta_json(g, t),
            })
        })
        .collect();
    let mut text = format!("{}: {} superclasses\n", s.name, partition.len());
    for (i, (k, t)) in partition.classes.iter().zip(&triples).enumerate() {
        let r = g.element(k.representative);
        let _ = writeln!(
            text,
            "K{i}: size {}, representative h={:?} x={:?}, triple ({}, h={:?}, omega={:?})",
            k.size(),
            g.h().element(r.h),
            vector_to_values(g.field(), &r.x),
            t.e,
            g.h().element(t.h),
            vector_to_values(g.field(), &g.decode(t.omega))
        );
    }
    let json = json!({ "group": summary(s), "count": partition.len(), "superclasses": classes });
    Ok(Outcome {
        json,
        text,
        status: EXIT_OK,
    })
}

fn theory(s: &Session) -> Result<SupercharacterTheory> {
    SupercharacterTheory::build(s.group.clone())
}

fn table(s: &Session) -> Result<Outcome> {
    let th = theory(s)?;
    let g = &th.group;
    let t = &th.table;
    let checks = th.axioms();
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|a| {
            let chars = trichar_core::characters::h_characters(g, a.e);
            json!({
                "e": idem(a.e),
                "theta": { "index": a.theta, "h_of_e": g.h_of(a.e).iter().map(|&h| g.h().element(h)).collect::<Vec<_>>(), "exponents": chars[a.theta] },
                "omega_star": vector_to_values(g.field(), &g.decode(a.omega_star)),
            })
        })
        .collect();
    let cols: Vec<Value> = th.columns.iter().map(|b| beta_json(g, b)).collect();
    let entries: Vec<&[trichar_core::scalars::Cyclotomic]> =
        t.characters.iter().map(|c| c.values()).collect();
    let json = json!({
        "group": summary(s),
        "rows": rows,
        "cols": cols,
        "class_sizes": th.layout.sizes,
        "entries": entries,
        "degrees": t.degrees,
        "norms": rationals(&t.norms),
        "checks": checks,
    });
    let mut text = format!(
        "{}: {} supercharacters x {} superclasses, values in Q(z{})\n",
        s.name,
        t.len(),
        th.partition.len(),
        g.cyclotomic_order()
    );
    let cells: Vec<Vec<String>> = std::iter::once(
        std::iter::once("".to_string())
            .chain((0..th.partition.len()).map(|k| format!("K{k}")))
            .collect(),
    )
    .chain(t.characters.iter().enumerate().map(|(i, c)| {
        std::iter::once(format!("chi{i}"))
            .chain(c.values().iter().map(ToString::to_string))
            .collect()
    }))
    .collect();
    let widths: Vec<usize> = (0..cells[0].len())
        .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(text, "{}", line.join("  ").trim_end());
    }
    let _ = writeln!(text, "degrees: {:?}", t.degrees);
    let _ = writeln!(text, "norms: {}", rationals(&t.norms).join(", "));
    render_checks(&mut text, &checks);
    Ok(Outcome {
        json,
        text,
        status: checks_status(&checks),
    })
}

#[derive(Serialize)]
struct PairOutput {
    label: String,
    spec: SubgroupDocument,
    order: usize,
    superclasses: usize,
    report: PairReport,
}

fn subgroup_specs(s: &Session, config: &SessionConfig) -> Result<Vec<(String, SubgroupSpec)>> {
    match &config.subgroup {
        None => catalog_subgroups(&s.group),
        Some(src) => {
            let (doc, label): (SubgroupDocument, String) = match src {
                Source::Path(p) => (read_json(p)?, p.display().to_string()),
                Source::Inline(d) => (d.clone(), "subgroup".into()),
            };
            Ok(vec![(label, doc.to_spec(s.group.field())?)])
        }
    }
}

fn analyze_pairs(
    th: &SupercharacterTheory,
    specs: &[(String, SubgroupSpec)],
) -> Result<Vec<PairOutput>> {
    specs
        .iter()
        .map(|(label, spec)| {
            let sub = build_subgroup(&th.group, spec)?;
            let sub_th = SupercharacterTheory::build(sub.group.clone())?;
            let report = SubgroupPair::new(th, &sub, &sub_th).analyze()?;
            Ok(PairOutput {
                label: label.clone(),
                spec: SubgroupDocument::from_spec(th.group.field(), spec),
                order: sub.order(),
                superclasses: sub_th.len(),
                report,
            })
        })
        .collect()
}

fn render_matrix(out: &mut String, title: &str, m: &[Vec<trichar_core::scalars::Rational>]) {
    let _ = writeln!(out, "  {title}:");
    for row in m {
        let _ = writeln!(out, "    {}", rationals(row).join(" "));
    }
}

fn pairs(s: &Session, config: &SessionConfig, restrict: bool) -> Result<Outcome> {
    let th = theory(s)?;
    let specs = subgroup_specs(s, config)?;
    let outputs = analyze_pairs(&th, &specs)?;
    let mut checks = Vec::new();
    let mut text = format!("{}: {} subgroup(s)\n", s.name, outputs.len());
    for o in &outputs {
        let _ = writeln!(
            text,
            "G' = {} (order {}, {} superclasses)",
            o.label, o.order, o.superclasses
        );
        if restrict {
            render_matrix(&mut text, "m[alpha][eta]", &o.report.restriction);
            checks.push(Check::from_witness(
                format!("restriction integrality on {}", o.label),
                o.report.restriction_witness.clone(),
            ));
        } else {
            render_matrix(&mut text, "a[eta][alpha]", &o.report.superinduction);
            checks.push(Check::from_witness(
                format!("reciprocity on {}", o.label),
                o.report.reciprocity_witness.clone(),
            ));
            checks.push(Check::from_witness(
                format!("a-formula on {}", o.label),
                o.report.formula_witness.clone(),
            ));
        }
    }
    render_checks(&mut text, &checks);
    let json = json!({ "group": summary(s), "subgroups": outputs, "checks": checks });
    Ok(Outcome {
        json,
        text,
        status: checks_status(&checks),
    })
}

fn product_table(th: &SupercharacterTheory) -> Result<(Vec<Value>, Option<String>)> {
    let mut rows = Vec::new();
    let mut witness = None;
    for i in 0..th.len() {
        for j in i..th.len() {
            let d = product_decompose(th, i, j)?;
            let coeffs: Vec<String> = d.coefficients.iter().map(ToString::to_string).collect();
            if (!d.is_exact() || d.nonneg_integers().is_none()) && witness.is_none() {
                witness = Some(format!("chi{i} * chi{j} = {coeffs:?}"));
            }
            rows.push(json!({ "i": i, "j": j, "coefficients": coeffs }));
        }
    }
    Ok((rows, witness))
}

fn products(s: &Session) -> Result<Outcome> {
    let th = theory(s)?;
    let (rows, witness) = product_table(&th)?;
    let checks = vec![Check::from_witness("product integrality", witness)];
    let mut text = format!("{}: products of {} supercharacters\n", s.name, th.len());
    for r in &rows {
        let cs: Vec<&str> = r["coefficients"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_str().unwrap())
            .collect();
        let _ = writeln!(text, "chi{} * chi{} = [{}]", r["i"], r["j"], cs.join(" "));
    }
    render_checks(&mut text, &checks);
    let json = json!({ "group": summary(s), "products": rows, "checks": checks });
    Ok(Outcome {
        json,
        text,
        status: checks_status(&checks),
    })
}

/// Linear forms for the perp lemma: all of them when few, else a fixed stride.
fn perp_sample(g: &TriangularGroup) -> Vec<u64> {
    let total = g.space_size();
    if total <= 4096 {
        (0..total).collect()
    } else {
        let step = total / 128;
        (0..128).map(|k| k * step + k % step.max(1)).collect()
    }
}

fn check_all(s: &Session) -> Outcome {
    let g = &s.group;
    let mut checks = vec![Check::from_witness(
        "structure validation",
        (!s.report.is_valid()).then(|| format!("{:?}", s.report.violations)),
    )];
    let primal = orbits(g, Ambient::Primal);
    let dual = orbits(g, Ambient::Dual);
    let locals = LocalOrbitTable::build(g);
    match (&primal, &dual) {
        (Ok(p), Ok(d)) => {
            let r = orbit_duality(g, p, d);
            checks.push(Check::from_witness(
                "orbit duality",
                (!r.holds()).then(|| {
                    format!(
                        "J: {} regular, {} singular; J*: {} regular, {} singular",
                        r.regular_primal, r.singular_primal, r.regular_dual, r.singular_dual
                    )
                }),
            ));
            let inter = check_orbit_intersections(p, &locals.primal)
                .and_then(|_| check_orbit_intersections(d, &locals.dual));
            checks.push(Check::from_result("orbit intersections with J_e", &inter));
        }
        (Err(e), _) | (_, Err(e)) => checks.push(Check::fail("orbit duality", e.to_string())),
    }
    checks.push(Check::from_result(
        "H(e) characterization",
        &check_stabilizer_characterization(g, &locals.primal),
    ));
    let partition = superclasses(g);
    let bij = triple_bijection(g, &partition, &locals);
    checks.push(Check::from_result("superclass/triple bijection", &bij));
    let b_count = superclass_triples(g, &locals).len();
    let a_count = trichar_core::characters::superchar_triples(g, &locals).len();
    checks.push(Check::from_witness(
        "|A-triples| = |B-triples| = #superclasses",
        (a_count != b_count || b_count != partition.len()).then(|| {
            format!(
                "{a_count} A-triples, {b_count} B-triples, {} superclasses",
                partition.len()
            )
        }),
    ));
    let th = match theory(s) {
        Ok(th) => th,
        Err(e) => {
            checks.push(Check::fail("supercharacter construction", e.to_string()));
            return finish_check_all(s, checks);
        }
    };
    checks.extend(th.axioms());
    let bad_perp = perp_sample(g)
        .into_iter()
        .find(|&c| !perp_check(g, &g.decode(c)));
    checks.push(Check::from_witness(
        "perp lemma",
        bad_perp.map(|c| format!("lambda with code {c}")),
    ));
    match catalog_subgroups(g).and_then(|specs| analyze_pairs(&th, &specs)) {
        Ok(outputs) => {
            let first = |f: fn(&PairReport) -> &Option<String>| {
                outputs.iter().find_map(|o| {
                    f(&o.report)
                        .as_ref()
                        .map(|w| format!("G' = {}: {w}", o.label))
                })
            };
            checks.push(Check::from_witness(
                format!("restriction integrality ({} subgroups)", outputs.len()),
                first(|r| &r.restriction_witness),
            ));
            checks.push(Check::from_witness(
                "reciprocity",
                first(|r| &r.reciprocity_witness),
            ));
            checks.push(Check::from_witness(
                "a-formula",
                first(|r| &r.formula_witness),
            ));
        }
        Err(e) => checks.push(Check::fail("restriction integrality", e.to_string())),
    }
    match product_table(&th) {
        Ok((_, w)) => checks.push(Check::from_witness("product integrality", w)),
        Err(e) => checks.push(Check::fail("product integrality", e.to_string())),
    }
    finish_check_all(s, checks)
}

fn finish_check_all(s: &Session, checks: Vec<Check>) -> Outcome {
    let passed = checks.iter().all(|c| c.passed);
    let mut text = format!("{}: check-all\n", s.name);
    render_checks(&mut text, &checks);
    let _ = writeln!(
        text,
        "{}",
        if passed {
            "all checks passed"
        } else {
            "SOME CHECKS FAILED"
        }
    );
    let json = json!({ "group": summary(s), "checks": checks, "passed": passed });
    Outcome {
        json,
        text,
        status: checks_status(&checks),
    }
}
