use kla::frontend::{parse_graph, parse_presentation, render_presentation, ParseError};
use kla_core::arith::{Field, PrimeField, Rationals};
use kla_core::free_lie::GeneratorSet;
use kla_core::presentation::{LieExpr, Presentation};
use kla_core::quotient::expand_tables;
use num_bigint::BigInt;
use proptest::prelude::*;

const G4: &str = "algebra G4\ngenerators x:1, y:1, z:1, w:1\nrelations [x,y] - [z,w]\n";
const H2: &str = "algebra h2\ngenerators x1:1, y1:1, x2:1, y2:1\nrelations [x1,x2]; [y1,y2]; [x1,y2]; [x2,y1]; [x2,y2] - [x1,y1]\n";
const WITT: &str = "algebra W\nfield gf(101)\ngenerators x1:1, x2:2\nrelations 6*[[x2,x1],x2] - [[[x2,x1],x1],x1];\n  9*[[[x2,x1],x1],[x2,x1]] - [[[[x2,x1],x1],x1],x2]\n";

fn nth_index(text: &str, pat: &str, k: usize) -> Option<usize> {
    text.match_indices(pat).nth(k).map(|m| m.0)
}

fn delete_nth(text: &str, pat: &str, k: usize) -> Option<String> {
    nth_index(text, pat, k).map(|i| format!("{}{}", &text[..i], &text[i + pat.len()..]))
}

fn replace_nth(text: &str, pat: &str, with: &str, k: usize) -> Option<String> {
    nth_index(text, pat, k).map(|i| format!("{}{with}{}", &text[..i], &text[i + pat.len()..]))
}

/// Edits that each break a valid file in a different way.
fn near_misses(base: &str) -> Vec<String> {
    let rel_at = base.find("relations").unwrap();
    let (head, rels) = base.split_at(rel_at);
    let mut out = Vec::new();
    for k in 0..3 {
        out.extend(delete_nth(base, "]", k));
        out.extend(delete_nth(base, "[", k));
        out.extend(delete_nth(base, ":", k));
        out.extend(replace_nth(rels, "x", "q", k).map(|r| format!("{head}{r}")));
    }
    out.extend(delete_nth(base, ",", 0));
    out.push(base.replacen("generators", "generator", 1));
    out.push(base.replacen("relations", "relation", 1));
    out.push(base.replacen(":1", ":0", 1));
    let decls = &base[base.find("generators ").unwrap() + 11..];
    let first = &decls[..decls.find(',').unwrap()];
    out.push(base.replacen(decls, &format!("{first}, {decls}"), 1));
    out.push(format!("{}@", base.trim_end()));
    out.push(format!("{} + x\n", base.trim_end()));
    out.push(base.replacen("algebra", "field gf(7)\nalgebra", 1));
    out.push(base.replacen("generators", "field gf(2)\ngenerators", 1));
    out.push(base.replacen("generators", "field gf(15)\ngenerators", 1));
    out
}

#[test]
fn fifty_near_misses_get_positioned_diagnostics() {
    let mut cases: Vec<String> = [G4, H2, WITT].iter().flat_map(|b| near_misses(b)).collect();
    cases.sort();
    cases.dedup();
    assert!(cases.len() >= 50, "only {} near misses", cases.len());
    for text in &cases {
        let e = match parse_presentation(text) {
            Err(e) => e,
            Ok(src) => match src.field {
                kla_core::arith::FieldSpec::Rationals => src.build(Rationals).map(|_| ()),
                kla_core::arith::FieldSpec::Prime(p) => src.build(PrimeField::new(p).unwrap()).map(|_| ()),
            }
            .expect_err(&format!("accepted {text:?}")),
        };
        let pos = e.pos();
        assert!(pos.line >= 1 && pos.line <= text.lines().count() + 1, "{e} for {text:?}");
        assert!(pos.col >= 1, "{e} for {text:?}");
        assert!(e.to_string().starts_with(&format!("line {}, column {}", pos.line, pos.col)));
    }
}

#[test]
fn duplicate_generator_near_miss() {
    let e = parse_presentation("algebra a\ngenerators x:1, x:1\nrelations\n").unwrap_err();
    assert!(matches!(e, ParseError::DuplicateGenerator { .. }));
}

#[test]
fn graph_near_misses() {
    let base = "graph C4\nvertices a b c d\nedges a-b b-c c-d d-a\n";
    let cases = [
        base.replacen("d-a", "d-d", 1),
        base.replacen("d-a", "d-e", 1),
        base.replacen("d-a", "a-b", 1),
        base.replacen("d-a", "b-a", 1),
        base.replacen("d-a", "d a", 1),
        base.replacen("d-a", "d-", 1),
        base.replacen("vertices a", "vertices a a", 1),
        base.replacen("vertices", "vertex", 1),
        base.replacen("graph C4\n", "", 1),
        base.replacen("edges", "edges:", 1),
    ];
    for text in &cases {
        let e = parse_graph(text).expect_err(text);
        assert!(e.pos().line >= 1 && e.pos().col >= 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn arbitrary_edits_never_panic(k in 0usize..200, c in proptest::char::any(), drop in any::<bool>()) {
        for base in [G4, WITT] {
            let chars: Vec<char> = base.chars().collect();
            let at = k % chars.len();
            let mut edited = chars.clone();
            if drop {
                edited.remove(at);
            } else {
                edited.insert(at, c);
            }
            let text: String = edited.into_iter().collect();
            if let Err(e) = parse_presentation(&text) {
                prop_assert!(e.pos().line >= 1 && e.pos().col >= 1);
            }
        }
    }
}

fn left_normed(seq: &[usize]) -> LieExpr {
    let g = |i: usize| LieExpr::gen(&format!("g{i}"));
    seq[1..].iter().fold(g(seq[0]), |acc, &i| LieExpr::bracket(acc, g(i)))
}

/// Relations built from rotations of one generator sequence, so all terms
/// share a degree.
fn random_relations() -> impl Strategy<Value = Vec<Vec<(i64, i64, Vec<usize>)>>> {
    let term = (-5i64..=5, 1i64..=4);
    let rel = (prop::collection::vec(0usize..4, 2..5), prop::collection::vec(term, 1..4)).prop_map(|(seq, coeffs)| {
        coeffs
            .into_iter()
            .enumerate()
            .map(|(k, (n, d))| {
                let mut s = seq.clone();
                s.rotate_left(k % seq.len());
                (n, d, s)
            })
            .collect::<Vec<_>>()
    });
    prop::collection::vec(rel, 0..4)
}

fn build<F: Field>(field: F, degrees: &[u32], rels: &[Vec<(i64, i64, Vec<usize>)>]) -> Option<Presentation<F>> {
    let gens = GeneratorSet::new(degrees.iter().enumerate().map(|(i, &d)| (format!("g{i}"), d))).unwrap();
    let exprs: Vec<LieExpr> = rels
        .iter()
        .map(|r| LieExpr::Sum(r.iter().map(|(n, d, s)| (BigInt::from(*n), BigInt::from(*d), left_normed(s))).collect()))
        .collect();
    Presentation::from_exprs("rt", field, gens, &exprs).ok()
}

fn round_trip<F: Field>(field: F, p: &Presentation<F>) -> Result<(), TestCaseError> {
    let text = render_presentation(p);
    let back = parse_presentation(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
    prop_assert_eq!(back.field, field.spec());
    let q = back.build(field).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(q.generators(), p.generators());
    prop_assert_eq!(q.relations(), p.relations());
    prop_assert_eq!(render_presentation(&q), text);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_then_parse_is_identity(degrees in prop::collection::vec(1u32..=2, 4), rels in random_relations()) {
        if let Some(p) = build(Rationals, &degrees, &rels) {
            round_trip(Rationals, &p)?;
        }
        let f = PrimeField::new(101).unwrap();
        if let Some(p) = build(f.clone(), &degrees, &rels) {
            round_trip(f, &p)?;
        }
    }
}

fn quadratic(names: &[&str], rels: &[Vec<(i64, usize, usize)>]) -> Presentation<Rationals> {
    let gens = GeneratorSet::standard(names);
    let exprs: Vec<LieExpr> = rels
        .iter()
        .map(|r| {
            LieExpr::sum(r.iter().map(|&(c, a, b)| (c, LieExpr::bracket(LieExpr::gen(names[a]), LieExpr::gen(names[b])))))
        })
        .collect();
    Presentation::from_exprs("p", Rationals, gens, &exprs).unwrap()
}

fn quadratic_relations(n: usize) -> impl Strategy<Value = Vec<Vec<(i64, usize, usize)>>> {
    prop::collection::vec(prop::collection::vec((-2i64..=2, 0..n, 0..n), 1..3), 0..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn direct_sum_then_killing_second_summand(pr in quadratic_relations(3), qr in quadratic_relations(2)) {
        let p = quadratic(&["x1", "x2", "x3"], &pr);
        let q = quadratic(&["y1", "y2"], &qr);
        let sum = p.direct_sum(&q).unwrap();
        let n = p.generators().len();
        let span: Vec<_> = (0..q.generators().len()).map(|i| vec![(n + i, Rationals.one())]).collect();
        let back = sum.quotient_by_span(&span).unwrap();
        prop_assert_eq!(back.generators(), p.generators());
        prop_assert_eq!(expand_tables(&back, 5).unwrap().dims(), expand_tables(&p, 5).unwrap().dims());
    }
}
