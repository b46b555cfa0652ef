use kla_core::arith::{Field, FieldSpec, PrimeField, Rationals};
use kla_core::raag::{clique_data, euler_characteristic_raag, Graph};
use kla_core::spectrum::{
    eigenvalues, newton_check, omega_b2, positivity_report, trc_check, PoincarePoly, PoincareSource, DEFAULT_TOLERANCE,
};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::algebra::{center_dims, Session};
use super::{load, resolve_field, CliError, Command, Loaded, Options, PolyInput};
use crate::frontend::PresentationSource;
use crate::report::{int_json, poly_text, rat_json, Report};

/// Reconstruction error allowed before the eigenvalue report fails.
pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-8;

/// What a polynomial command knows about its input.
struct Subject {
    poly: PoincarePoly,
    /// `sum_j b_{i,j}` for algebras; the polynomial itself otherwise.
    totals: Vec<BigInt>,
    euler: BigInt,
    center: Option<usize>,
    clique_number: Option<usize>,
    source: Value,
}

fn from_coeffs(text: &str, hypothetical: bool) -> Result<Subject, CliError> {
    let coeffs = text
        .split(',')
        .map(|c| c.trim().parse::<BigInt>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::usage(format!("--poly: expected comma-separated integers, found `{text}`")))?;
    let kind = if hypothetical { PoincareSource::Hypothetical } else { PoincareSource::Given };
    let poly = PoincarePoly::new(coeffs, kind)?;
    Ok(Subject {
        totals: poly.coeffs().to_vec(),
        euler: poly.euler_characteristic(),
        center: None,
        clique_number: None,
        source: json!({ "kind": if hypothetical { "hypothetical" } else { "given" } }),
        poly,
    })
}

fn from_graph(name: &str, g: &Graph) -> Result<Subject, CliError> {
    let c = clique_data(g)?;
    let poly = PoincarePoly::from_cliques(&c)?;
    let all = (1u64 << g.len()) - 1;
    let universal = (0..g.len()).filter(|&v| g.neighbors(v) | (1 << v) == all).count();
    Ok(Subject {
        totals: poly.coeffs().to_vec(),
        euler: BigInt::from(euler_characteristic_raag(g)?),
        center: Some(universal),
        clique_number: Some(c.clique_number()),
        source: json!({ "kind": "clique_polynomial", "graph": name }),
        poly,
    })
}

fn from_algebra<F: Field>(src: &PresentationSource, field: F, n: u32) -> Result<Subject, CliError> {
    let p = src.build(field).map_err(|source| CliError::Parse { path: String::new(), source })?;
    let name = p.name().to_string();
    let mut s = Session::new(p, n);
    let center: usize = center_dims(&mut s)?.iter().map(|x| x.1).sum();
    let b = s.betti()?;
    let totals: Vec<BigInt> = (0..=b.rows()).map(|i| (0..=n).map(|j| BigInt::from(b.get(i, j))).sum()).collect();
    let euler = totals.iter().enumerate().map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x }).sum();
    Ok(Subject {
        poly: PoincarePoly::from_betti(b)?,
        totals,
        euler,
        center: Some(center),
        clique_number: None,
        source: json!({ "kind": "betti_diagonal", "algebra": name, "cutoff": n }),
    })
}

fn subject(input: &PolyInput, opts: &Options) -> Result<Subject, CliError> {
    if let Some(text) = &input.poly {
        return from_coeffs(text, input.hypothetical);
    }
    let path = input
        .file
        .as_deref()
        .ok_or_else(|| CliError::usage("give an input file or --poly COEFFS"))?;
    let wrap = |e: CliError| match e {
        CliError::Parse { source, .. } => super::parse_error(path, source),
        other => other,
    };
    match load(path)? {
        Loaded::Graph(g) => from_graph(&g.name, &g.graph),
        Loaded::Algebra(src) => match resolve_field(opts.field.as_deref(), src.field)? {
            FieldSpec::Rationals => from_algebra(&src, Rationals, opts.max_degree),
            FieldSpec::Prime(p) => from_algebra(&src, PrimeField::new(p)?, opts.max_degree),
        }
        .map_err(wrap),
    }
}

pub(super) fn run(cmd: &Command, input: &PolyInput, opts: &Options) -> Result<Report, CliError> {
    let s = subject(input, opts)?;
    let mut r = match cmd {
        Command::Euler(_) => {
            let mut r = Report::new("euler");
            r.set("euler_characteristic", int_json(&s.euler));
            r.line(format!("chi = {}", s.euler));
            r
        }
        Command::Eigenvalues(_) => spectrum(&s)?,
        Command::Newton(_) => newton(&s)?,
        Command::Omega { n, .. } => omega(&s, *n)?,
        Command::Trc(_) => trc(&s)?,
        other => unreachable!("{other:?} is not a polynomial command"),
    };
    r.set("poincare", json!(s.poly.coeffs().iter().map(int_json).collect::<Vec<_>>()));
    r.set("source", s.source.clone());
    Ok(r)
}

fn spectrum(s: &Subject) -> Result<Report, CliError> {
    let mut r = Report::new("eigenvalues");
    let e = eigenvalues(&s.poly, DEFAULT_TOLERANCE)?;
    let err = e.reconstruction_error(&s.poly);
    r.line(format!("P(t) = {}", poly_text(s.poly.coeffs())));
    let mut items = Vec::new();
    for x in &e.eigenvalues {
        let inv = x.value.inv();
        r.line(format!(
            "lambda = {:+.10} {:+.10}i  (x{})  1/lambda = {:+.6} {:+.6}i",
            x.value.re, x.value.im, x.multiplicity, inv.re, inv.im
        ));
        items.push(json!({
            "re": x.value.re,
            "im": x.value.im,
            "multiplicity": x.multiplicity,
            "inverse": { "re": inv.re, "im": inv.im },
        }));
    }
    let pos = positivity_report(&e, 1e-9);
    r.line(format!(
        "real eigenvalues positive: {}",
        if pos.passed() { "yes".to_string() } else { format!("no ({} violations)", pos.violations.len()) }
    ));
    r.line(format!("reconstruction error {err:.3e}"));
    r.set("eigenvalues", json!(items));
    r.set("residual", json!(e.residual));
    r.set("reconstruction_error", json!(err));
    r.set(
        "positivity",
        json!({
            "real": pos.real.iter().map(|x| x.value.re).collect::<Vec<_>>(),
            "violations": pos.violations.iter().map(|x| x.value.re).collect::<Vec<_>>(),
        }),
    );
    r.check("reconstruction", err <= RECONSTRUCTION_TOLERANCE);
    Ok(r)
}

fn newton(s: &Subject) -> Result<Report, CliError> {
    let mut r = Report::new("newton");
    let n = s.poly.degree();
    let mut items = Vec::new();
    let mut ok = true;
    for j in 1..n {
        let v = newton_check(&s.poly, j)?;
        ok &= v.passed();
        r.line(format!("j = {j}: slack {} {}", v.slack, if v.passed() { "ok" } else { "FAIL" }));
        items.push(json!({ "j": j, "slack": rat_json(&v.slack), "status": if v.passed() { "pass" } else { "fail" } }));
    }
    if n < 2 {
        r.line("degree below 2: nothing to check");
    }
    r.set("inequalities", json!(items));
    r.check("newton", ok);
    Ok(r)
}

fn omega(s: &Subject, n: Option<u64>) -> Result<Report, CliError> {
    let mut r = Report::new("omega");
    let n = n.unwrap_or(s.clique_number.unwrap_or(s.poly.degree()) as u64);
    let w = omega_b2(&s.poly.coeff(1), &s.poly.coeff(2), n)?;
    r.set("n", json!(n));
    r.set("omega", int_json(&w));
    r.line(format!("omega = (n-1) b1^2 - 2n b2 = {w}  (n = {n})"));
    r.check("omega_nonnegative", !w.is_negative());
    Ok(r)
}

fn trc(s: &Subject) -> Result<Report, CliError> {
    let mut r = Report::new("trc");
    let z = s
        .center
        .ok_or_else(|| CliError::usage("trc needs an algebra or graph input to know the center"))?;
    let total_poly = PoincarePoly::new(s.totals.clone(), PoincareSource::Given)?;
    let v = trc_check(&total_poly, z);
    r.set("center_dim", json!(z));
    r.set("total_betti", int_json(&v.total));
    r.set("bound", int_json(&v.bound));
    r.line(format!("P(1) = {} {} 2^{z} = {}", v.total, if v.passed() { ">=" } else { "<" }, v.bound));
    r.check("trc", v.passed());
    debug_assert!(v.bound >= BigInt::one());
    Ok(r)
}
