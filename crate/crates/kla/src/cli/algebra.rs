use kla_core::arith::{Field, SparseVec};
use kla_core::cohomology::{
    betti_table, bk_check, probe_free_rank, quadratic_by_shape, quadratic_filtration_search, BettiTable, Strategy, Verdict,
};
use kla_core::free_lie::{FreeLie, LieElement};
use kla_core::hnn::{
    certify_embedding, hnn_compose, hnn_decompose, quadratize_presentation, standardize, validate_derivation, DerivationSpec,
    EmbeddingCertificate,
};
use kla_core::presentation::Presentation;
use kla_core::quadratic_dual::{
    classify_one_relator, darboux_decompose, froberg_check, quadratic_cover, random_two_relator as random_presentation,
    two_relator_dual_cubic, DualAlgebraTable, FrobergOutcome, QuadraticData,
};
use kla_core::quotient::{expand_tables, AlgebraTable, StructureTable, SubalgebraView};
use kla_core::spectrum::{bogvad_divisibility, Divisibility};
use serde_json::{json, Value};

use super::{read, CliError, Command, Options, SeriesKind};
use crate::frontend::{parse_expression, render_presentation, PresentationSource};
use crate::report::{betti_grid, betti_json, rat_json, verdict_json, verdict_text, Report};

/// A presentation with its expansion built on first use.
pub(super) struct Session<F: Field> {
    pub p: Presentation<F>,
    pub n: u32,
    table: Option<AlgebraTable<F>>,
    structure: Option<StructureTable<F>>,
    betti: Option<BettiTable>,
}

impl<F: Field> Session<F> {
    pub fn new(p: Presentation<F>, n: u32) -> Self {
        Session {
            p,
            n,
            table: None,
            structure: None,
            betti: None,
        }
    }

    pub fn table(&mut self) -> Result<&mut AlgebraTable<F>, CliError> {
        if self.table.is_none() {
            self.table = Some(expand_tables(&self.p, self.n)?);
        }
        Ok(self.table.as_mut().expect("built"))
    }

    pub fn structure(&mut self) -> Result<&StructureTable<F>, CliError> {
        if self.structure.is_none() {
            let s = self.table()?.structure();
            self.structure = Some(s);
        }
        Ok(self.structure.as_ref().expect("built"))
    }

    pub fn betti(&mut self) -> Result<&BettiTable, CliError> {
        if self.betti.is_none() {
            let b = betti_table(self.structure()?, None);
            self.betti = Some(b);
        }
        Ok(self.betti.as_ref().expect("built"))
    }

    /// Parses an expression over the generators and evaluates it in the
    /// free algebra.
    pub fn element(&self, text: &str) -> Result<LieElement<F>, CliError> {
        let (expr, _) = parse_expression(text, self.p.generators()).map_err(|source| CliError::Parse {
            path: format!("argument `{text}`"),
            source,
        })?;
        let mut fl = FreeLie::new(self.p.field().clone(), self.p.generators().clone());
        Ok(expr.eval(&mut fl)?)
    }

    /// Local coordinates of an element in the quotient.
    pub fn project(&mut self, text: &str) -> Result<(u32, SparseVec<F::Elem>), CliError> {
        let e = self.element(text)?;
        let d = e.degree();
        if d > self.n {
            return Err(CliError::usage(format!("`{text}` has degree {d}, above --max-degree {}", self.n)));
        }
        Ok((d, self.table()?.project(&e)?))
    }

    fn strategy(&mut self, opts: &Options) -> Result<Strategy<F::Elem>, CliError> {
        let s = opts.strategy.as_str();
        if s == "coordinate" {
            return Ok(Strategy::Coordinate);
        }
        if let Some(count) = s.strip_prefix("random:") {
            let count = count
                .parse()
                .map_err(|_| CliError::usage(format!("--strategy: bad count in `{s}`")))?;
            return Ok(Strategy::Random { count, seed: opts.seed });
        }
        if let Some(path) = s.strip_prefix("list:") {
            let text = read(std::path::Path::new(path))?;
            let mut spans = Vec::new();
            for line in text.lines() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let mut span = Vec::new();
                for item in line.split(';') {
                    let (d, v) = self.project(item.trim())?;
                    if d != 1 {
                        return Err(CliError::usage(format!("{path}: `{}` is not of degree 1", item.trim())));
                    }
                    span.push(v);
                }
                spans.push(span);
            }
            return Ok(Strategy::Explicit(spans));
        }
        Err(CliError::usage(format!("--strategy: expected coordinate, random:COUNT or list:FILE, found `{s}`")))
    }
}

/// `sum c_k * label_k` with signs folded in.
pub(super) fn combination<F: Field, S: AsRef<str>>(f: &F, terms: impl IntoIterator<Item = (S, F::Elem)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        if f.is_zero(&c) {
            continue;
        }
        let s = f.render(&c);
        let (neg, abs) = match s.strip_prefix('-') {
            Some(a) => (true, a.to_string()),
            None => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if abs != "1" {
            out.push_str(&abs);
            out.push('*');
        }
        out.push_str(label.as_ref());
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn local<F: Field>(t: &StructureTable<F>, d: u32, v: &SparseVec<F::Elem>) -> String {
    let start = t.range(d).start;
    combination(t.field(), v.iter().map(|(i, c)| (t.label(start + i), c.clone())))
}

fn dense<F: Field>(f: &F, names: &[String], v: &[F::Elem]) -> String {
    combination(f, names.iter().zip(v).map(|(n, c)| (n.as_str(), c.clone())))
}

fn dims_from_one(dims: &[usize]) -> Vec<usize> {
    dims.iter().skip(1).copied().collect()
}

fn dims_line(dims: &[usize]) -> String {
    dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn certificate_json<F: Field>(c: &EmbeddingCertificate<F>) -> Value {
    json!({
        "max_degree": c.max_degree,
        "source_dims": dims_from_one(&c.source_dims),
        "image_dims": dims_from_one(&c.image_dims),
        "holds": c.holds(),
    })
}

fn certificate_lines<F: Field>(r: &mut Report, c: &EmbeddingCertificate<F>) {
    r.line(format!("source dims: {}", dims_line(&dims_from_one(&c.source_dims))));
    r.line(format!("image dims:  {}", dims_line(&dims_from_one(&c.image_dims))));
    r.line(format!("embedding through degree {}: {}", c.max_degree, if c.holds() { "PASS" } else { "FAIL" }));
}

fn presentation_out<F: Field>(r: &mut Report, key: &str, p: &Presentation<F>) {
    let text = render_presentation(p);
    r.set(
        key,
        json!({
            "text": text,
            "generators": p.generators().len(),
            "relations": p.relations().len(),
        }),
    );
    for l in text.lines() {
        r.line(l.to_string());
    }
}

fn quadratic_verdict<F: Field>(s: &mut Session<F>) -> Result<(Verdict, &'static str), CliError> {
    if let Some(v) = quadratic_by_shape(&s.p, s.n) {
        return Ok((v, "shape"));
    }
    let b = betti_table(s.structure()?, Some(2));
    Ok((b.quadratic_verdict(), "betti"))
}

pub(super) fn run<F: Field>(cmd: &Command, src: &PresentationSource, field: F, opts: &Options) -> Result<Report, CliError> {
    let p = src.build(field.clone()).map_err(|source| CliError::Parse { path: String::new(), source })?;
    let mut s = Session::new(p, opts.max_degree);
    let mut r = match cmd {
        Command::Dims(_) => dims(&mut s)?,
        Command::Hilbert(_) => hilbert(&mut s)?,
        Command::Betti { rows, .. } => betti(&mut s, *rows)?,
        Command::QuadraticCheck(_) => {
            let mut r = Report::new("quadratic-check");
            let (v, method) = quadratic_verdict(&mut s)?;
            let mut j = verdict_json(&v);
            j["method"] = json!(method);
            r.set("quadratic", j);
            r.line(format!("quadratic: {}", verdict_text(&v)));
            r.check("quadratic", v.passed());
            r
        }
        Command::KoszulCheck(_) => koszul(&mut s)?,
        Command::BkCheck(_) => bk(&mut s, opts)?,
        Command::Dual(_) => dual(&mut s)?,
        Command::Froberg(_) => froberg(&mut s)?,
        Command::Cover(_) => {
            let mut r = Report::new("cover");
            let c = quadratic_cover(s.structure()?)?;
            presentation_out(&mut r, "presentation", &c);
            r
        }
        Command::HnnCompose { stable, degree, maps, .. } => compose(&mut s, stable, *degree, maps)?,
        Command::HnnDecompose { generator, .. } => decompose(&mut s, generator.as_deref())?,
        Command::Standardize(_) => {
            let mut r = Report::new("standardize");
            let (q, cert) = standardize(&s.p, s.n)?;
            presentation_out(&mut r, "presentation", &q);
            r.set("certificate", certificate_json(&cert));
            certificate_lines(&mut r, &cert);
            r.check("embedding", cert.holds());
            r
        }
        Command::Quadratize(_) => quadratize(&mut s)?,
        Command::Subalgebra { span, .. } => subalgebra(&mut s, span)?,
        Command::Center(_) => center(&mut s)?,
        Command::Series { kind, .. } => series(&mut s, *kind)?,
        Command::Bogvad(_) => bogvad(&mut s)?,
        Command::Classify1Rel(_) => {
            let mut r = Report::new("classify-1rel");
            let (d, f) = classify_one_relator(&s.p)?;
            r.set("genus", json!(d));
            r.set("free_rank", json!(f));
            r.line(format!("G_{} * free({f})  (d = {d}, f = {f})", 2 * d));
            r
        }
        Command::Check2Rel { .. } => {
            let mut r = Report::new("check-2rel");
            let c = two_relator_dual_cubic(&s.p)?;
            r.set("dual_cubic", json!([c]));
            r.line(format!("dim (L^!)_3 = {c}"));
            r.check("dual_cubic_vanishes", c == 0);
            r
        }
        Command::Darboux(_) => darboux(&mut s)?,
        Command::FreeRank(_) => {
            let mut r = Report::new("free-rank");
            let strategy = s.strategy(opts)?;
            let t = s.structure()?;
            let (rank, span) = probe_free_rank(t, &strategy)?;
            let span: Vec<String> = span.iter().map(|v| local(t, 1, v)).collect();
            r.set("free_rank_lower_bound", json!(rank));
            r.set("span", json!(span));
            r.line(format!("free rank >= {rank}: span{{{}}}", span.join(", ")));
            r
        }
        Command::Filtration(_) => {
            let mut r = Report::new("filtration");
            let t = s.structure()?;
            let f = quadratic_filtration_search(t)?;
            let chain: Vec<Vec<String>> = f.chain.iter().map(|sp| sp.iter().map(|v| local(t, 1, v)).collect()).collect();
            for c in &chain {
                r.line(format!("span{{{}}}", c.join(", ")));
            }
            r.set("chain", json!(chain));
            r.set("stuck_at", json!(f.stuck_at));
            if let Some(k) = f.stuck_at {
                r.line(format!("no quadratic codimension-1 subalgebra below dimension {k}"));
            }
            r.check("filtration", f.stuck_at.is_none());
            r
        }
        other => unreachable!("{other:?} does not take a presentation"),
    };
    assertions(&mut r, &mut s, opts)?;
    r.set("algebra", json!({ "name": s.p.name(), "field": s.p.field().spec().to_string() }));
    r.set("max_degree", json!(s.n));
    Ok(r)
}

fn assertions<F: Field>(r: &mut Report, s: &mut Session<F>, opts: &Options) -> Result<(), CliError> {
    if let Some(cd) = opts.assert_cd {
        let b = s.betti()?;
        let seen = b.cd_lower_bound();
        r.set("assert_cd", json!({ "expected": cd, "observed": seen }));
        r.line(format!("cd: expected {cd}, observed {seen} through degree {}", b.max_degree()));
        r.check("assert_cd", seen == cd);
    }
    if opts.assert_koszul {
        let v = s.betti()?.koszul_verdict();
        r.set("assert_koszul", verdict_json(&v));
        r.line(format!("koszul: {}", verdict_text(&v)));
        r.check("assert_koszul", v.passed());
    }
    if opts.assert_bk {
        let (q, _) = quadratic_verdict(s)?;
        let strategy = s.strategy(opts)?;
        let reports = bk_check(s.structure()?, &strategy)?;
        let failed = reports.iter().find(|x| !x.verdict.passed());
        let ok = q.passed() && failed.is_none();
        r.set(
            "assert_bk",
            json!({
                "quadratic": verdict_json(&q),
                "sampled": reports.len(),
                "witness": failed.map(|f| json!({ "span": f.description, "verdict": verdict_json(&f.verdict) })),
            }),
        );
        r.line(format!("bk: {} ({} subalgebras sampled)", if ok { "PASS" } else { "FAIL" }, reports.len()));
        r.check("assert_bk", ok);
    }
    Ok(())
}

fn dims<F: Field>(s: &mut Session<F>) -> Result<Report, CliError> {
    let mut r = Report::new("dims");
    let d = dims_from_one(&s.table()?.dims());
    for (k, x) in d.iter().enumerate() {
        r.line(format!("{:>3} {x}", k + 1));
    }
    r.set("dims", json!(d));
    Ok(r)
}

fn hilbert<F: Field>(s: &mut Session<F>) -> Result<Report, CliError> {
    let mut r = Report::new("hilbert");
    let t = s.structure()?;
    let (h_l, h_u) = (t.hilbert_series(), t.enveloping_series());
    let lie: Vec<Value> = (0..=t.max_degree() as usize).map(|k| rat_json(&h_l.coeff(k))).collect();
    let env: Vec<Value> = (0..=t.max_degree() as usize).map(|k| rat_json(&h_u.coeff(k))).collect();
    let show = |v: &[Value]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    r.line(format!("H_L: {}", show(&lie)));
    r.line(format!("H_U: {}", show(&env)));
    r.set("lie", json!(lie));
    r.set("enveloping", json!(env));
    Ok(r)
}

fn betti<F: Field>(s: &mut Session<F>, rows: Option<usize>) -> Result<Report, CliError> {
    let mut r = Report::new("betti");
    let b = match rows {
        Some(k) => betti_table(s.structure()?, Some(k)),
        None => s.betti()?.clone(),
    };
    r.set("betti", betti_json(&b));
    r.line(betti_grid(&b).trim_end().to_string());
    Ok(r)
}

fn koszul<F: Field>(s: &mut Session<F>) -> Result<Report, CliError> {
    let mut r = Report::new("koszul-check");
    let v = s.betti()?.koszul_verdict();
    r.set("betti", verdict_json(&v));
    r.line(format!("diagonal cohomology: {}", verdict_text(&v)));
    r.check("diagonal", v.passed());
    if s.p.is_quadratic_shape() {
        let f = froberg_outcome(s)?;
        r.line(format!("Fröberg: {}", froberg_text(&f)));
        r.check("froberg", matches!(f, FrobergOutcome::Ok { .. }));
        r.set("froberg", froberg_json(&f));
    }
    Ok(r)
}

fn froberg_outcome<F: Field>(s: &mut Session<F>) -> Result<FrobergOutcome, CliError> {
    let q = QuadraticData::from_presentation(&s.p)?;
    let n = s.n as usize;
    let dual = DualAlgebraTable::new(&q, n);
    Ok(froberg_check(s.structure()?, &dual, n))
}

fn froberg_json(f: &FrobergOutcome) -> Value {
    match f {
        FrobergOutcome::Ok { up_to } => json!({ "status": "pass", "up_to": up_to }),
        FrobergOutcome::FirstDefect { degree, value } => {
            json!({ "status": "fail", "witness": { "degree": degree, "coefficient": rat_json(value) } })
        }
    }
}

fn froberg_text(f: &FrobergOutcome) -> String {
    match f {
        FrobergOutcome::Ok { up_to } => format!("OK through degree {up_to}"),
        FrobergOutcome::FirstDefect { degree, value } => format!("first defect in degree {degree}: coefficient {value}"),
    }
}

fn froberg<F: Field>(s: &mut Session<F>) -> Result<Report, CliError> {
    let mut r = Report::new("froberg");
    let f = froberg_outcome(s)?;
    let q = QuadraticData::from_presentation(&s.p)?;
    let dual = DualAlgebraTable::new(&q, s.n as usize).dims();
    let n = s.n as usize;
    let h_u = s.structure()?.enveloping_series();
    let env: Vec<Value> = (0..=n).map(|k| rat_json(&h_u.coeff(k))).collect();
    r.set("enveloping", json!(env));
    r.set("dual_dims", json!(dual));
    r.set("froberg", froberg_json(&f));
    r.line(format!("H_U coefficients: {}", env.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")));
    r.line(format!("dual dims: {}", dims_line(&dual)));
    r.line(format!("Fröberg: {}", froberg_text(&f)));
    r.check("froberg", matches!(f, FrobergOutcome::Ok { .. }));
    Ok(r)
}

fn bk<F: Field>(s: &mut Session<F>, opts: &Options) -> Result<Report, CliError> {
    let mut r = Report::new("bk-check");
    let (q, _) = quadratic_verdict(s)?;
    r.line(format!("quadratic: {}", verdict_text(&q)));
    r.set("quadratic", verdict_json(&q));
    r.check("quadratic", q.passed());
    let strategy = s.strategy(opts)?;
    let reports = bk_check(s.structure()?, &strategy)?;
    let mut items = Vec::new();
    for x in &reports {
        r.line(format!("{}: dims {} -> {}", x.description, dims_line(&dims_from_one(&x.dims)), verdict_text(&x.verdict)));
        items.push(json!({
            "span": x.description,
            "dims": dims_from_one(&x.dims),
            "verdict": verdict_json(&x.verdict),
        }));
    }
    r.set("subalgebras", json!(items));
    r.check("subalgebras", reports.iter().all(|x| x.verdict.passed()));
    Ok(r)
}

fn dual<F: Field>(s: &mut Session<F>) -> Result<Report, CliError> {
    let mut r = Report::new("dual");
    let q = QuadraticData::from_presentation(&s.p)?;
    let d = DualAlgebraTable::new(&q, s.n as usize).dims();
    r.line(format!("dual dims: {}", dims_line(&d)));
    r.set("dims", json!(d));
    r.set("rank", json!(q.rank()));
    r.set("relation_rank", json!(q.relation_rank()));
    Ok(r)
}

fn compose<F: Field>(s: &mut Session<F>, stable: &str, degree: u32, maps: &[String]) -> Result<Report, CliError> {
    let mut r = Report::new("hnn-compose");
    let mut domain = Vec::new();
    let mut values = Vec::new();
    for m in maps {
        let (a, v) = m
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("--map: expected DOMAIN=VALUE, found `{m}`")))?;
        let a = s.element(a.trim())?;
        let v = if v.trim() == "0" {
            LieElement::zero(a.degree() + degree)
        } else {
            s.element(v.trim())?
        };
        domain.push(a);
        values.push(v);
    }
    let spec = DerivationSpec { domain, values, degree };
    if let Some(v) = validate_derivation(&s.p, &spec, s.n)? {
        r.set("leibniz", json!({ "status": "fail", "witness": { "degree": v.degree, "dependency": v.dependency } }));
        r.line(format!("not a derivation: Leibniz fails in degree {} on {}", v.degree, v.dependency));
        r.check("leibniz", false);
        return Ok(r);
    }
    r.set("leibniz", json!({ "status": "pass", "up_to": s.n }));
    r.check("leibniz", true);
    let h = hnn_compose(&s.p, &spec, stable, s.n)?;
    presentation_out(&mut r, "presentation", &h);
    Ok(r)
}

fn decompose<F: Field>(s: &mut Session<F>, generator: Option<&str>) -> Result<Report, CliError> {
    let mut r = Report::new("hnn-decompose");
    let g = s.p.generators();
    let x = match generator {
        Some(x) => x.to_string(),
        None => g.name(g.len().checked_sub(1).ok_or_else(|| CliError::usage("no generators"))?).to_string(),
    };
    let split = hnn_decompose(&s.p, &x)?;
    let bg = split.base.generators();
    let f = s.p.field().clone();
    let maps: Vec<Value> = split
        .derivation
        .domain
        .iter()
        .zip(&split.derivation.values)
        .map(|(a, v)| json!({ "domain": a.render(&f, bg), "value": v.render(&f, bg) }))
        .collect();
    r.set("stable_letter", json!(x));
    r.set("base", json!(render_presentation(&split.base)));
    r.set("derivation", json!(maps));
    r.line(format!("stable letter: {x}"));
    r.line("base:");
    for l in render_presentation(&split.base).lines() {
        r.line(format!("  {l}"));
    }
    for m in &maps {
        r.line(format!("  phi({}) = {}", m["domain"].as_str().unwrap_or(""), m["value"].as_str().unwrap_or("")));
    }
    let before = s.table()?.dims();
    let after = expand_tables(&split.reconstruction, s.n)?.dims();
    r.set(
        "recompose",
        json!({ "source_dims": dims_from_one(&before), "recomposed_dims": dims_from_one(&after) }),
    );
    r.line(format!("recomposed dims: {} ({})", dims_line(&dims_from_one(&after)), if before == after { "match" } else { "MISMATCH" }));
    r.check("recompose", before == after);
    Ok(r)
}

fn quadratize<F: Field>(s: &mut Session<F>) -> Result<Report, CliError> {
    let mut r = Report::new("quadratize");
    let (q, images) = quadratize_presentation(&s.p)?;
    presentation_out(&mut r, "presentation", &q);
    let shape = q.is_quadratic_shape();
    r.set("quadratic_shape", json!(shape));
    r.check("quadratic_shape", shape);
    match certify_embedding(&s.p, &q, images, s.n) {
        Ok(cert) => {
            r.set("certificate", certificate_json(&cert));
            certificate_lines(&mut r, &cert);
            r.check("embedding", cert.holds());
        }
        Err(kla_core::Error::TooLarge(why)) => {
            r.set("certificate", json!({ "status": "too_large", "reason": why }));
            r.line(format!("embedding not certified: {why}"));
            r.check("embedding", false);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn subalgebra<F: Field>(s: &mut Session<F>, span: &[String]) -> Result<Report, CliError> {
    let mut r = Report::new("subalgebra");
    let gens = span.iter().map(|e| s.project(e)).collect::<Result<Vec<_>, _>>()?;
    let view = SubalgebraView::generated(s.structure()?, &gens)?;
    let b = betti_table(view.table(), Some(2));
    let d = dims_from_one(view.dims());
    r.set("span", json!(span));
    r.set("dims", json!(d));
    r.set("betti", betti_json(&b));
    r.set("quadratic", verdict_json(&b.quadratic_verdict()));
    r.line(format!("dims: {}", dims_line(&d)));
    r.line(betti_grid(&b).trim_end().to_string());
    r.line(format!("quadratic: {}", verdict_text(&b.quadratic_verdict())));
    Ok(r)
}

pub(super) fn center_dims<F: Field>(s: &mut Session<F>) -> Result<Vec<(u32, usize)>, CliError> {
    Ok(s.structure()?.center().into_iter().map(|(d, b)| (d, b.len())).collect())
}

fn center<F: Field>(s: &mut Session<F>) -> Result<Report, CliError> {
    let mut r = Report::new("center");
    let t = s.structure()?;
    let mut items = Vec::new();
    for (d, basis) in t.center() {
        let b: Vec<String> = basis.iter().map(|v| local(t, d, v)).collect();
        r.line(format!("degree {d}: dim {}{}", b.len(), if b.is_empty() { String::new() } else { format!("  {{{}}}", b.join(", ")) }));
        items.push(json!({ "degree": d, "dim": b.len(), "basis": b }));
    }
    r.set("window", json!(t.center_window()));
    r.set("center", json!(items));
    Ok(r)
}

fn series<F: Field>(s: &mut Session<F>, kind: SeriesKind) -> Result<Report, CliError> {
    let t = s.structure()?;
    match kind {
        SeriesKind::Derived => {
            let mut r = Report::new("series");
            let levels: Vec<Vec<usize>> = t.derived_series().into_iter().map(|l| dims_from_one(&l)).collect();
            for (k, l) in levels.iter().enumerate() {
                r.line(format!("L^({k}): {}", dims_line(l)));
            }
            r.set("kind", json!("derived"));
            r.set("levels", json!(levels));
            Ok(r)
        }
        SeriesKind::Ucs => {
            let mut r = Report::new("series");
            let levels = t.upper_central_series();
            for (k, l) in levels.iter().enumerate() {
                let dims: Vec<usize> = l.iter().map(|x| x.1).collect();
                r.line(format!("Z_{}: {}", k + 1, dims_line(&dims)));
            }
            let levels: Vec<Value> = levels
                .iter()
                .map(|l| json!(l.iter().map(|(d, k)| json!({ "degree": d, "dim": k })).collect::<Vec<_>>()))
                .collect();
            r.set("kind", json!("ucs"));
            r.set("levels", json!(levels));
            Ok(r)
        }
    }
}

fn bogvad<F: Field>(s: &mut Session<F>) -> Result<Report, CliError> {
    let mut r = Report::new("bogvad");
    let degrees: Vec<u32> = center_dims(s)?.into_iter().filter(|x| x.1 > 0).map(|x| x.0).collect();
    let h_u = s.structure()?.enveloping_series();
    let rep = bogvad_divisibility(&h_u, &degrees)?;
    let inv: Vec<Value> = (0..=rep.window).map(|k| rat_json(&rep.inverse.coeff(k))).collect();
    r.set("center_degrees", json!(degrees));
    r.set("inverse", json!(inv));
    let mut per = Vec::new();
    for (n, d) in &rep.per_degree {
        let (status, text) = match d {
            Divisibility::Divisible => (json!({ "status": "pass" }), format!("divisible by 1 - t^{n}")),
            Divisibility::NotDivisible { residue, sum } => (
                json!({ "status": "fail", "witness": { "residue": residue, "sum": rat_json(sum) } }),
                format!("not divisible by 1 - t^{n}: residue class {residue} sums to {sum}"),
            ),
            Divisibility::NotPolynomial => (
                json!({ "status": "fail", "witness": { "not_polynomial_through": rep.window } }),
                format!("1/H_U is not a polynomial through degree {}", rep.window),
            ),
        };
        per.push(json!({ "degree": n, "result": status }));
        r.line(text);
    }
    if degrees.is_empty() {
        r.line(format!("no center through degree {}", s.structure()?.center_window()));
    }
    r.set("divisibility", json!(per));
    r.check("divisibility", rep.passed());
    Ok(r)
}

fn darboux<F: Field>(s: &mut Session<F>) -> Result<Report, CliError> {
    let mut r = Report::new("darboux");
    let q = QuadraticData::from_presentation(&s.p)?;
    let f = s.p.field().clone();
    let names = s.p.generators().names().to_vec();
    let mut forms = Vec::new();
    for (k, rel) in q.relations().iter().enumerate() {
        let d = darboux_decompose(&f, &q.skew_form(rel))?;
        let pairs: Vec<Value> = d
            .pairs
            .iter()
            .map(|(u, v)| json!([dense(&f, &names, u), dense(&f, &names, v)]))
            .collect();
        let radical: Vec<String> = d.radical.iter().map(|u| dense(&f, &names, u)).collect();
        r.line(format!("relation {}: rank {}, {} pairs, radical dim {}", k + 1, 2 * d.pairs.len(), d.pairs.len(), radical.len()));
        for p in &pairs {
            r.line(format!("  ({}, {})", p[0].as_str().unwrap_or(""), p[1].as_str().unwrap_or("")));
        }
        forms.push(json!({ "pairs": pairs, "radical": radical }));
    }
    r.set("forms", json!(forms));
    Ok(r)
}

pub(super) fn random_two_relator<F: Field>(field: F, count: usize, rank: usize, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new("check-2rel");
    let mut dims = Vec::with_capacity(count);
    for k in 0..count as u64 {
        let p = random_presentation(field.clone(), rank, seed.wrapping_add(k))?;
        dims.push(two_relator_dual_cubic(&p)?);
    }
    let bad: Vec<usize> = dims.iter().enumerate().filter(|x| *x.1 != 0).map(|x| x.0).collect();
    r.set("field", json!(field.spec().to_string()));
    r.set("dual_cubic", json!(dims));
    r.set("failures", json!(bad));
    r.line(format!(
        "{count} random two-relator presentations on {rank} generators over {}: {} with dim (L^!)_3 = 0",
        field.spec(),
        count - bad.len()
    ));
    r.check("dual_cubic_vanishes", bad.is_empty());
    Ok(r)
}
