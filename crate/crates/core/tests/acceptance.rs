//! Acceptance run: one PASS/FAIL line per criterion. Every identity is
//! exact (tolerance 0); runtimes are checked against the pinned budgets.
//!
//! A criterion line reports the criterion as stated. The process fails only
//! when a structural expectation breaks: standard-chart instances must pass
//! and any failing instance must involve a non-standard chart.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nugrass::action::{verify_action_axioms, verify_action_gluing, verify_transitivity, BasePoint, GluingScope};
use nugrass::atlas::{verify_cocycle, Atlas, Chart, Dims};
use nugrass::nulie::{compute_h, nu_defect, verify_closure, verify_defects, verify_jacobi, verify_rho_morphism, ChartVectorField};
use nugrass::poly::{q, RationalFunction};
use nugrass::report::{Report, Suite};
use nugrass::superalgebra::{GrassmannNumber, Parity, Sampler, SuperContext, SuperFunction};
use nugrass::supermatrix::IndexPair;

const SEED: u64 = 0x5eed;

struct Outcome {
    criterion: u8,
    title: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
    /// Structural expectations that must hold even when the criterion fails.
    invariants: Vec<(String, bool)>,
}

impl Outcome {
    fn line(&self) -> String {
        format!(
            "{} criterion {} ({}): {} [{:.2} s, budget {} s, tolerance exact]",
            if self.passed && self.elapsed <= self.budget { "PASS" } else { "FAIL" },
            self.criterion,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

fn small() -> Dims {
    Dims::new(0, 1, 1, 2).unwrap()
}

fn big() -> Dims {
    Dims::new(1, 2, 2, 3).unwrap()
}

fn nonstandard(dims: Dims) -> Vec<String> {
    Atlas::new(dims)
        .unwrap()
        .charts()
        .iter()
        .filter(|c| !c.is_standard())
        .map(|c| c.index.to_string())
        .collect()
}

fn touches(r: &Report, bad: &[String]) -> bool {
    r.instance.split_whitespace().any(|t| bad.iter().any(|b| b == t))
}

/// Failures confined to instances through non-standard charts.
fn confined(suite: &Suite, bad: &[String]) -> bool {
    suite.reports.iter().all(|r| r.ok() || touches(r, bad))
}

fn standard_clean(suite: &Suite, bad: &[String]) -> bool {
    suite.reports.iter().filter(|r| !touches(r, bad)).all(Report::ok)
}

fn tally(suites: &[&Suite]) -> String {
    let reports: Vec<&Report> = suites.iter().flat_map(|s| &s.reports).collect();
    let failing = reports.iter().filter(|r| !r.ok()).count();
    format!("{}/{} instances pass", reports.len() - failing, reports.len())
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let a = Atlas::new(small()).unwrap();
    let b = Atlas::new(big()).unwrap();
    let ip = |s: &str| IndexPair::parse(s).unwrap();
    let g12 = a.transition_symbolic(&ip("∅|{1}"), &ip("∅|{2}")).unwrap().to_string();
    let labels = [
        (b.chart(&ip("{1}|{2,3}")).unwrap(), "[1, x1 | e3, 0, 0; 0, e1 | x2, 1, 0; 0, e2 | x3, 0, 1]"),
        (b.chart(&ip("{1,2}|{2}")).unwrap(), "[1, 0 | ν(x1), 0, e3; 0, 1ν | ν(e1), 0, x2; 0, 0 | ν(e2), 1, x3]"),
        (a.chart(&ip("{1}|∅")).unwrap(), "[1ν | ν(e), x]"),
    ];
    let labels_ok = labels.iter().all(|(c, want)| c.label_inline() == *want);
    let names: Vec<String> = b.charts()[0].coordinate_names().to_vec();
    let checks = [
        ("g12", g12 == "x ↦ 1/x, e ↦ e/x"),
        ("labels", labels_ok),
        ("chart counts", a.charts().len() == 3 && b.charts().len() == 10),
        ("α|β", (b.dims.alpha(), b.dims.beta()) == (3, 3) && names == ["x1", "x2", "x3", "e1", "e2", "e3"]),
    ];
    let passed = checks.iter().all(|c| c.1);
    let detail = checks.iter().map(|(n, ok)| format!("{n} {}", if *ok { "ok" } else { "MISMATCH" })).collect::<Vec<_>>().join(", ");
    Outcome {
        criterion: 1,
        title: "worked examples",
        passed,
        detail: format!("{detail}; g12: {g12}"),
        elapsed: t.elapsed(),
        budget: Duration::from_secs(1),
        invariants: vec![("worked examples reproduce".into(), passed)],
    }
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let mut suites = Vec::new();
    let mut inv = Vec::new();
    for dims in [small(), big()] {
        let s = verify_cocycle(dims, 2, 100, SEED).unwrap();
        let bad = nonstandard(dims);
        inv.push((format!("{dims}: identities hold"), s.with_check("cocycle.identity").all(Report::ok)));
        inv.push((format!("{dims}: inverse pairs hold"), s.with_check("cocycle.inverse").all(Report::ok)));
        inv.push((format!("{dims}: ≥100 samples"), s.min_samples("cocycle.inverse") >= 100 && s.min_samples("cocycle.triple") >= 100));
        inv.push((format!("{dims}: failures only through non-standard charts"), confined(&s, &bad)));
        suites.push(s);
    }
    let refs: Vec<&Suite> = suites.iter().collect();
    let failing: Vec<String> = suites.iter().flat_map(|s| s.failing().map(|r| r.line())).take(2).collect();
    Outcome {
        criterion: 2,
        title: "cocycle identities",
        passed: suites.iter().all(Suite::all_passed),
        detail: format!("{} (e.g. {})", tally(&refs), if failing.is_empty() { "none failing".into() } else { failing.join("; ") }),
        elapsed: t.elapsed(),
        budget: Duration::from_secs(60),
        invariants: inv,
    }
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut inv = Vec::new();
    let mut suites = Vec::new();
    for r in [2, 4] {
        let s = verify_action_gluing(small(), r, 100, SEED, GluingScope::All).unwrap();
        inv.push((format!("r={r}: all-standard quadruples pass"), standard_clean(&s, &nonstandard(small()))));
        inv.push((format!("r={r}: ≥100 samples"), s.min_samples("action.gluing") >= 100));
        suites.push(s);
    }
    let s = verify_action_gluing(big(), 2, 100, SEED, GluingScope::StandardSampled).unwrap();
    inv.push(("standard quadruples of the big atlas pass".into(), s.all_passed() && s.min_samples("action.gluing") >= 100));
    suites.push(s);
    let refs: Vec<&Suite> = suites.iter().collect();
    Outcome {
        criterion: 3,
        title: "action gluing",
        passed: suites.iter().all(Suite::all_passed),
        detail: tally(&refs),
        elapsed: t.elapsed(),
        budget: Duration::from_secs(120),
        invariants: inv,
    }
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let mut inv = Vec::new();
    let mut suites = Vec::new();
    for dims in [small(), big()] {
        let s = verify_action_axioms(dims, 2, 100, SEED).unwrap();
        let bad = nonstandard(dims);
        inv.push((format!("{dims}: unit holds on every chart"), s.with_check("action.unit").all(Report::ok)));
        inv.push((format!("{dims}: standard charts pass"), standard_clean(&s, &bad)));
        inv.push((format!("{dims}: failures only on non-standard charts"), confined(&s, &bad)));
        inv.push((format!("{dims}: ≥100 samples"), s.min_samples("action.associativity") >= 100 && s.min_samples("action.inverse") >= 100));
        suites.push(s);
    }
    let refs: Vec<&Suite> = suites.iter().collect();
    let failing: Vec<String> = suites.iter().flat_map(|s| s.failing().map(|r| format!("{} [{}]", r.check_name, r.instance))).collect();
    Outcome {
        criterion: 4,
        title: "action axioms",
        passed: suites.iter().all(Suite::all_passed),
        detail: format!("{}; failing: {}", tally(&refs), if failing.is_empty() { "none".into() } else { failing.join(", ") }),
        elapsed: t.elapsed(),
        budget: Duration::from_secs(120),
        invariants: inv,
    }
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let dims = small();
    let s = verify_transitivity(dims, 4, 50, SEED, &BasePoint::standard(dims)).unwrap();
    let ok = s.all_passed() && s.min_samples("transitivity.witness") >= 50;
    Outcome {
        criterion: 5,
        title: "transitivity",
        passed: ok,
        detail: s.reports.iter().map(Report::line).collect::<Vec<_>>().join("; "),
        elapsed: t.elapsed(),
        budget: Duration::from_secs(120),
        invariants: vec![("witnesses found".into(), ok)],
    }
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let mut s = Sampler::new(SEED);
    let mut counts = [0usize; 6];
    let mut bad = Vec::new();
    for i in 0..1000 {
        let r = 1 + i % 4;
        let a = s.grassmann(r, Parity::Even, true).checked_add(&s.grassmann(r, Parity::Odd, false)).unwrap();
        if a.checked_mul(&a.inv().unwrap()).unwrap() == GrassmannNumber::one(r) {
            counts[0] += 1;
        }
        if a.nu().unwrap().nu().unwrap() == a {
            counts[1] += 1;
        }
        let (e, o) = (s.grassmann(r, Parity::Even, false), s.grassmann(r, Parity::Odd, false));
        if (e.is_zero() || e.nu().unwrap().is_of_parity(Parity::Odd)) && (o.is_zero() || o.nu().unwrap().is_of_parity(Parity::Even)) {
            counts[2] += 1;
        }
        let c = q(s.int(-5, 5));
        let lhs = a.scale(&c).checked_add(&e).unwrap().nu().unwrap();
        let rhs = a.nu().unwrap().scale(&c).checked_add(&e.nu().unwrap()).unwrap();
        if lhs == rhs {
            counts[3] += 1;
        }
    }
    let ctx = SuperContext::new(["x", "y"], ["e1", "e2"]).unwrap();
    for i in 0..500 {
        let pf = if i % 2 == 0 { Parity::Even } else { Parity::Odd };
        let pg = if i % 3 == 0 { Parity::Even } else { Parity::Odd };
        let f = s.super_function(&ctx, pf, false);
        let g = s.super_function(&ctx, pg, false);
        let sign = if pf.is_odd() && pg.is_odd() { q(-1) } else { q(1) };
        if f.checked_mul(&g).unwrap() == g.checked_mul(&f).unwrap().scale_q(&sign) {
            counts[4] += 1;
        }
        let v = ["x", "y", "e1", "e2"][i % 4];
        let twist = if i % 4 >= 2 && pf.is_odd() { q(-1) } else { q(1) };
        let lhs = f.checked_mul(&g).unwrap().partial(v).unwrap();
        let rhs = f
            .partial(v)
            .unwrap()
            .checked_mul(&g)
            .unwrap()
            .checked_add(&f.checked_mul(&g.partial(v).unwrap()).unwrap().scale_q(&twist))
            .unwrap();
        if lhs == rhs {
            counts[5] += 1;
        }
    }
    let want = [1000, 1000, 1000, 1000, 500, 500];
    let names = ["inverse", "ν²", "parity flip", "linearity", "supercommutativity", "Leibniz"];
    for ((n, c), w) in names.iter().zip(counts).zip(want) {
        if c != w {
            bad.push(format!("{n} {c}/{w}"));
        }
    }
    let detail = names.iter().zip(counts).zip(want).map(|((n, c), w)| format!("{n} {c}/{w}")).collect::<Vec<_>>().join(", ");
    Outcome {
        criterion: 6,
        title: "kernel properties",
        passed: bad.is_empty(),
        detail,
        elapsed: t.elapsed(),
        budget: Duration::from_secs(60),
        invariants: vec![("kernel identities".into(), bad.is_empty())],
    }
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let dims = small();
    let h = compute_h(dims).unwrap();
    let defects = verify_defects(&h).unwrap();
    let closure = verify_closure(&h).unwrap();
    let jacobi = verify_jacobi(&h).unwrap();
    let (rho, sign) = verify_rho_morphism(dims).unwrap();
    let bad = nonstandard(dims);
    let structural = !h.even.is_empty() && defects.ok() && defects.samples == 3 * h.basis().count() && closure.ok() && jacobi.ok();
    let inv = vec![
        ("dim 𝔥₀ ≥ 1, zero defects, closure, Jacobi".into(), structural),
        ("ρ bracket sign consistent on standard charts".into(), sign.is_some() && standard_clean(&rho, &bad)),
    ];
    let rho_lines: Vec<String> = rho.reports.iter().map(Report::line).collect();
    Outcome {
        criterion: 7,
        title: "ν-commutant",
        passed: structural && rho.all_passed() && sign.is_some(),
        detail: format!(
            "dim 𝔥 = {}|{} ({}), sign s = {:?}; {}",
            h.even.len(),
            h.odd.len(),
            h.basis().map(ToString::to_string).collect::<Vec<_>>().join("; "),
            sign,
            rho_lines.join("; ")
        ),
        elapsed: t.elapsed(),
        budget: Duration::from_secs(120),
        invariants: inv,
    }
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let a = Atlas::new(small()).unwrap();
    let c: &Chart = &a.charts()[0];
    let ctx = a.context();
    let x = SuperFunction::even_var(ctx, "x").unwrap();
    let e = SuperFunction::odd_gen(ctx, "e").unwrap();
    let z = SuperFunction::zero(ctx);
    let xdx = ChartVectorField::new(c.index.clone(), Parity::Even, ctx, vec![x, z.clone()]).unwrap();
    let ede = ChartVectorField::new(c.index.clone(), Parity::Even, ctx, vec![z, e]).unwrap();
    let d1 = nu_defect(&xdx).unwrap();
    let d2 = nu_defect(&ede).unwrap();
    let ok = d1.iter().all(SuperFunction::is_zero) && !d2.iter().all(SuperFunction::is_zero);
    Outcome {
        criterion: 8,
        title: "regression pair",
        passed: ok,
        detail: format!(
            "x∂_x defects [{}], e∂_e defects [{}]",
            d1.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            d2.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ),
        elapsed: t.elapsed(),
        budget: Duration::from_secs(1),
        invariants: vec![("x∂_x passes, e∂_e fails".into(), ok)],
    }
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let a = Atlas::new(small()).unwrap();
    let g = a
        .transition_symbolic(&IndexPair::parse("∅|{1}").unwrap(), &IndexPair::parse("∅|{2}").unwrap())
        .unwrap();
    let coeff: RationalFunction = g.image("e").unwrap().coefficient_of("e").unwrap().body();
    let at = |v: i64| coeff.eval_q(&|n| (n == "x").then(|| q(v))).unwrap();
    let (neg, pos) = (at(-1), at(2));
    let ok = coeff.to_string() == "1/x" && neg < q(0) && pos > q(0);
    Outcome {
        criterion: 9,
        title: "reduced line bundle",
        passed: ok,
        detail: format!("coefficient {coeff}, value {neg} at x = -1, {pos} at x = 2"),
        elapsed: t.elapsed(),
        budget: Duration::from_secs(1),
        invariants: vec![("sign change of the coefficient".into(), ok)],
    }
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let mut broken = Vec::new();
    let mut over_budget = Vec::new();
    for c in criteria {
        let out = c();
        println!("{}", out.line());
        for (name, ok) in &out.invariants {
            if !ok {
                broken.push(format!("criterion {}: {name}", out.criterion));
            }
        }
        if out.elapsed > out.budget {
            over_budget.push(format!("criterion {}", out.criterion));
        }
    }
    if !over_budget.is_empty() {
        println!("over budget: {}", over_budget.join(", "));
    }
    if broken.is_empty() {
        println!("structural expectations: all hold");
        ExitCode::SUCCESS
    } else {
        for b in &broken {
            println!("BROKEN {b}");
        }
        ExitCode::FAILURE
    }
}
