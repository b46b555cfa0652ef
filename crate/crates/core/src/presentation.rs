//! Presentations `<generators | relations>` and syntactic builders.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{Echelon, Field, SparseVec};
use crate::error::{Error, Result};
use crate::free_lie::{FreeLie, GeneratorSet, LieElement};

/// A bracket expression over generator names with integer-fraction coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieExpr {
    Gen(String),
    Bracket(Box<LieExpr>, Box<LieExpr>),
    /// `sum_k (num_k / den_k) * e_k`
    Sum(Vec<(BigInt, BigInt, LieExpr)>),
}

impl LieExpr {
    pub fn gen(name: &str) -> Self {
        LieExpr::Gen(name.to_string())
    }

    pub fn bracket(a: LieExpr, b: LieExpr) -> Self {
        LieExpr::Bracket(Box::new(a), Box::new(b))
    }

    /// Integer linear combination.
    pub fn sum(terms: impl IntoIterator<Item = (i64, LieExpr)>) -> Self {
        LieExpr::Sum(terms.into_iter().map(|(c, e)| (BigInt::from(c), BigInt::one(), e)).collect())
    }

    /// Degree of the expression, checking homogeneity of every sum.
    pub fn degree(&self, gens: &GeneratorSet) -> Result<u32> {
        match self {
            LieExpr::Gen(n) => gens
                .index_of(n)
                .map(|i| gens.degree(i))
                .ok_or_else(|| Error::Usage(alloc::format!("unknown generator {n}"))),
            LieExpr::Bracket(a, b) => Ok(a.degree(gens)? + b.degree(gens)?),
            LieExpr::Sum(terms) => {
                let mut deg = None;
                for (_, _, e) in terms {
                    let d = e.degree(gens)?;
                    match deg {
                        None => deg = Some(d),
                        Some(d0) if d0 != d => return Err(Error::Inhomogeneous { first: d0, second: d }),
                        _ => {}
                    }
                }
                deg.ok_or_else(|| Error::Usage("empty sum".into()))
            }
        }
    }

    /// Evaluates in the free Lie algebra.
    pub fn eval<F: Field>(&self, fl: &mut FreeLie<F>) -> Result<LieElement<F>> {
        let deg = self.degree(fl.generators())?;
        self.eval_inner(fl, deg)
    }

    fn eval_inner<F: Field>(&self, fl: &mut FreeLie<F>, deg: u32) -> Result<LieElement<F>> {
        match self {
            LieExpr::Gen(n) => {
                let i = fl.generators().index_of(n).expect("checked by degree()");
                Ok(fl.generator(i))
            }
            LieExpr::Bracket(a, b) => {
                let da = a.degree(fl.generators())?;
                let u = a.eval_inner(fl, da)?;
                let v = b.eval_inner(fl, deg - da)?;
                Ok(fl.bracket(&u, &v))
            }
            LieExpr::Sum(terms) => {
                let f = fl.field().clone();
                let mut acc = LieElement::zero(deg);
                for (num, den, e) in terms {
                    let c = f
                        .from_ratio(num, den)
                        .ok_or_else(|| Error::Domain(alloc::format!("coefficient {num}/{den} is undefined in {}", f.spec())))?;
                    let v = e.eval_inner(fl, deg)?;
                    acc = acc.add(&f, &v.scale(&f, &c))?;
                }
                Ok(acc)
            }
        }
    }
}

/// A finite presentation of a graded Lie algebra over `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<F: Field> {
    name: String,
    field: F,
    generators: GeneratorSet,
    relations: Vec<LieElement<F>>,
}

impl<F: Field> Presentation<F> {
    /// Validates and builds a presentation. Zero relations are dropped.
    pub fn new(name: impl Into<String>, field: F, generators: GeneratorSet, relations: Vec<LieElement<F>>) -> Result<Self> {
        let mut rels = Vec::new();
        for r in relations {
            if r.is_zero() {
                continue;
            }
            if r.degree() < 2 {
                return Err(Error::Usage("relations must have degree at least 2; use quotient_by_span for degree-1 relations".into()));
            }
            for w in r.terms().keys() {
                if w.iter().any(|&c| c as usize >= generators.len()) {
                    return Err(Error::Usage("relation uses an undeclared generator".into()));
                }
            }
            rels.push(r);
        }
        Ok(Presentation {
            name: name.into(),
            field,
            generators,
            relations: rels,
        })
    }

    /// Builds a presentation from relation expressions.
    pub fn from_exprs(name: impl Into<String>, field: F, generators: GeneratorSet, exprs: &[LieExpr]) -> Result<Self> {
        let mut fl = FreeLie::new(field.clone(), generators.clone());
        let rels = exprs.iter().map(|e| e.eval(&mut fl)).collect::<Result<Vec<_>>>()?;
        Self::new(name, field, generators, rels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn relations(&self) -> &[LieElement<F>] {
        &self.relations
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relations.iter().map(LieElement::degree).max().unwrap_or(0)
    }

    /// All generators in degree 1 and all relations in degree 2.
    pub fn is_quadratic_shape(&self) -> bool {
        self.generators.is_standard() && self.relations.iter().all(|r| r.degree() == 2)
    }

    pub fn free_lie(&self) -> FreeLie<F> {
        FreeLie::new(self.field.clone(), self.generators.clone())
    }

    fn check_disjoint(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Usage("presentations live over different fields".into()));
        }
        for n in other.generators.names() {
            if self.generators.index_of(n).is_some() {
                return Err(Error::Usage(alloc::format!("generator name clash: {n}")));
            }
        }
        Ok(())
    }

    fn concat(&self, other: &Self) -> Result<(GeneratorSet, Vec<LieElement<F>>)> {
        self.check_disjoint(other)?;
        let gens = GeneratorSet::new(
            self.generators
                .names()
                .iter()
                .cloned()
                .zip(self.generators.degrees().iter().copied())
                .chain(other.generators.names().iter().cloned().zip(other.generators.degrees().iter().copied())),
        )?;
        let off = self.generators.len() as u16;
        let mut rels = self.relations.clone();
        for r in &other.relations {
            let shifted = r.terms().iter().map(|(w, c)| (w.iter().map(|&x| x + off).collect(), c.clone()));
            rels.push(LieElement::from_terms(&self.field, &gens, r.degree(), shifted)?);
        }
        Ok((gens, rels))
    }

    /// Free product: generators and relations side by side.
    pub fn free_product(&self, other: &Self) -> Result<Self> {
        let (gens, rels) = self.concat(other)?;
        Self::new(alloc::format!("{}*{}", self.name, other.name), self.field.clone(), gens, rels)
    }

    /// Direct sum: the free product plus all cross brackets `[g_p, g_q]`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let (gens, mut rels) = self.concat(other)?;
        let n = self.generators.len();
        for i in 0..n {
            for j in n..gens.len() {
                let deg = gens.degree(i) + gens.degree(j);
                rels.push(LieElement::from_terms(&self.field, &gens, deg, [(vec![i as u16, j as u16], self.field.one())])?);
            }
        }
        Self::new(alloc::format!("{}x{}", self.name, other.name), self.field.clone(), gens, rels)
    }

    /// Quotient by the span of the given degree-1 vectors (indexed by
    /// generator position). The generators at the pivot positions of the
    /// echelonised span are eliminated; relations are rewritten accordingly.
    pub fn quotient_by_span(&self, span: &[SparseVec<F::Elem>]) -> Result<Self> {
        let f = &self.field;
        let n = self.generators.len();
        let mut ech = Echelon::new(f.clone(), n);
        for v in span {
            for (i, _) in v {
                if *i >= n || self.generators.degree(*i) != 1 {
                    return Err(Error::Usage("subspace is not inside the degree-1 span of generators".into()));
                }
            }
            ech.insert(v);
        }
        let ech = ech.into_reduced();
        let kept: Vec<usize> = (0..n).filter(|&i| !ech.is_pivot(i)).collect();
        let new_gens = GeneratorSet::new(kept.iter().map(|&i| (self.generators.name(i).to_string(), self.generators.degree(i))))?;
        let new_index = |i: usize| kept.iter().position(|&k| k == i);
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            if let Some(k) = new_index(i) {
                images.push(LieElement::generator(f, &new_gens, k));
            } else {
                // x_p = -(tail of its row) modulo the span
                let row = ech.rows().iter().find(|r| r[0].0 == i).expect("pivot row");
                let terms = row[1..].iter().map(|(c, x)| (vec![new_index(*c).expect("free column") as u16], f.neg(x)));
                images.push(LieElement::from_terms(f, &new_gens, 1, terms)?);
            }
        }
        let mut fl = FreeLie::new(f.clone(), new_gens.clone());
        let rels = self
            .relations
            .iter()
            .map(|r| fl.map_element(&self.generators, r, &images))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alloc::format!("{}/V", self.name), f.clone(), new_gens, rels)
    }
}

/// Presentations used throughout the test corpus and the CLI examples.
pub mod library {
    use super::*;

    fn g(n: &str) -> LieExpr {
        LieExpr::gen(n)
    }
    fn br(a: LieExpr, b: LieExpr) -> LieExpr {
        LieExpr::bracket(a, b)
    }

    pub fn free<F: Field>(field: F, rank: usize) -> Presentation<F> {
        let names: Vec<String> = (1..=rank).map(|i| alloc::format!("x{i}")).collect();
        let gens = GeneratorSet::new(names.into_iter().map(|n| (n, 1))).expect("distinct");
        Presentation::new(alloc::format!("free{rank}"), field, gens, Vec::new()).expect("valid")
    }

    pub fn abelian<F: Field>(field: F, rank: usize) -> Presentation<F> {
        let names: Vec<String> = (1..=rank).map(|i| alloc::format!("x{i}")).collect();
        let gens = GeneratorSet::new(names.iter().cloned().map(|n| (n, 1))).expect("distinct");
        let mut exprs = Vec::new();
        for i in 0..rank {
            for j in i + 1..rank {
                exprs.push(br(g(&names[i]), g(&names[j])));
            }
        }
        Presentation::from_exprs(alloc::format!("abelian{rank}"), field, gens, &exprs).expect("valid")
    }

    /// Surface algebra on `x1,y1,...,xd,yd` with the single relation `sum [xi,yi]`.
    pub fn surface<F: Field>(field: F, genus: usize) -> Presentation<F> {
        let mut names = Vec::new();
        for i in 1..=genus {
            names.push(alloc::format!("x{i}"));
            names.push(alloc::format!("y{i}"));
        }
        let gens = GeneratorSet::new(names.iter().cloned().map(|n| (n, 1))).expect("distinct");
        let rel = LieExpr::sum((0..genus).map(|i| (1, br(g(&names[2 * i]), g(&names[2 * i + 1])))));
        Presentation::from_exprs(alloc::format!("G{}", 2 * genus), field, gens, &[rel]).expect("valid")
    }

    /// `G_4` written on `x,y,z,w` with relation `[x,y] - [z,w]`.
    pub fn g4<F: Field>(field: F) -> Presentation<F> {
        let gens = GeneratorSet::standard(&["x", "y", "z", "w"]);
        let rel = LieExpr::sum([(1, br(g("x"), g("y"))), (-1, br(g("z"), g("w")))]);
        Presentation::from_exprs("G4", field, gens, &[rel]).expect("valid")
    }

    /// Heisenberg algebra `h_n` (n >= 2) in its quadratic presentation.
    pub fn heisenberg<F: Field>(field: F, n: usize) -> Presentation<F> {
        let mut names = Vec::new();
        for i in 1..=n {
            names.push(alloc::format!("x{i}"));
            names.push(alloc::format!("y{i}"));
        }
        let gens = GeneratorSet::new(names.iter().cloned().map(|n| (n, 1))).expect("distinct");
        let x = |i: usize| g(&names[2 * i]);
        let y = |i: usize| g(&names[2 * i + 1]);
        let mut exprs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                exprs.push(br(x(i), x(j)));
                exprs.push(br(y(i), y(j)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    if i > 0 {
                        exprs.push(LieExpr::sum([(1, br(x(i), y(i))), (-1, br(x(0), y(0)))]));
                    }
                } else {
                    exprs.push(br(x(i), y(j)));
                }
            }
        }
        Presentation::from_exprs(alloc::format!("h{n}"), field, gens, &exprs).expect("valid")
    }

    /// `h_1 = <a,b | [a,[a,b]], [b,[a,b]]>`.
    pub fn heisenberg1<F: Field>(field: F) -> Presentation<F> {
        let gens = GeneratorSet::standard(&["a", "b"]);
        let ab = br(g("a"), g("b"));
        let exprs = [br(g("a"), ab.clone()), br(g("b"), ab)];
        Presentation::from_exprs("h1", field, gens, &exprs).expect("valid")
    }

    /// Positive Witt algebra on `x1` (degree 1) and `x2` (degree 2) with its
    /// two minimal relations, in degrees 5 and 7.
    pub fn witt_plus<F: Field>(field: F) -> Presentation<F> {
        let gens = GeneratorSet::new([("x1".to_string(), 1), ("x2".to_string(), 2)]).expect("distinct");
        let x21 = br(g("x2"), g("x1"));
        let x211 = br(x21.clone(), g("x1"));
        let r5 = LieExpr::sum([(6, br(x21.clone(), g("x2"))), (-1, br(x211.clone(), g("x1")))]);
        let r7 = LieExpr::sum([(9, br(x211.clone(), x21)), (-1, br(br(x211, g("x1")), g("x2")))]);
        Presentation::from_exprs("W+", field, gens, &[r5, r7]).expect("valid")
    }

    /// `<x,y,z,w | [x,y]-[z,w], [x,w], [x,z]>`.
    pub fn two_gen_koszul<F: Field>(field: F) -> Presentation<F> {
        let gens = GeneratorSet::standard(&["x", "y", "z", "w"]);
        let exprs = [
            LieExpr::sum([(1, br(g("x"), g("y"))), (-1, br(g("z"), g("w")))]),
            br(g("x"), g("w")),
            br(g("x"), g("z")),
        ];
        Presentation::from_exprs("L2genKosz", field, gens, &exprs).expect("valid")
    }

    /// `B_{2d} = <x_i, y_i | [x_i,y_i] - [x_1,y_1], i = 2..d>`.
    pub fn b2d<F: Field>(field: F, d: usize) -> Presentation<F> {
        let mut names = Vec::new();
        for i in 1..=d {
            names.push(alloc::format!("x{i}"));
            names.push(alloc::format!("y{i}"));
        }
        let gens = GeneratorSet::new(names.iter().cloned().map(|n| (n, 1))).expect("distinct");
        let exprs: Vec<LieExpr> = (1..d)
            .map(|i| {
                LieExpr::sum([
                    (1, br(g(&names[2 * i]), g(&names[2 * i + 1]))),
                    (-1, br(g(&names[0]), g(&names[1]))),
                ])
            })
            .collect();
        Presentation::from_exprs(alloc::format!("B{}", 2 * d), field, gens, &exprs).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::library::*;
    use super::*;
    use crate::arith::Rationals;

    #[test]
    fn corpus_shapes() {
        let q = Rationals;
        assert_eq!(g4(q).relations().len(), 1);
        assert_eq!(heisenberg(q, 2).relations().len(), 5);
        assert_eq!(heisenberg1(q).relations().iter().map(|r| r.degree()).collect::<Vec<_>>(), vec![3, 3]);
        let w = witt_plus(q);
        assert_eq!(w.relations().iter().map(|r| r.degree()).collect::<Vec<_>>(), vec![5, 7]);
        assert_eq!(b2d(q, 2).relations().len(), 1);
    }

    /// Evaluates an expression in the positive Witt algebra, where
    /// `[e_m, e_n] = (m - n) e_(m+n)`, with `x1 -> e_1`, `x2 -> e_2`.
    fn witt_value(e: &LieExpr) -> (i64, i64) {
        match e {
            LieExpr::Gen(n) => (if n == "x1" { 1 } else { 2 }, 1),
            LieExpr::Bracket(a, b) => {
                let (m, c) = witt_value(a);
                let (n, d) = witt_value(b);
                (m + n, (m - n) * c * d)
            }
            LieExpr::Sum(terms) => {
                let mut deg = 0;
                let mut acc = 0;
                for (num, _, t) in terms {
                    let (m, c) = witt_value(t);
                    deg = m;
                    acc += i64::try_from(num.clone()).unwrap() * c;
                }
                (deg, acc)
            }
        }
    }

    #[test]
    fn witt_relations_vanish_in_the_witt_algebra() {
        let br = LieExpr::bracket;
        let g = LieExpr::gen;
        let x21 = br(g("x2"), g("x1"));
        let x211 = br(x21.clone(), g("x1"));
        let r5 = LieExpr::sum([(6, br(x21.clone(), g("x2"))), (-1, br(x211.clone(), g("x1")))]);
        let r7 = LieExpr::sum([(9, br(x211.clone(), x21.clone())), (-1, br(br(x211.clone(), g("x1")), g("x2")))]);
        assert_eq!(witt_value(&r5), (5, 0));
        assert_eq!(witt_value(&r7), (7, 0));
        // Ending the second term of r7 on x1 instead gives degree 6, and
        // padding it to degree 7 with another x1 no longer vanishes.
        let six = br(br(x211.clone(), g("x1")), g("x1"));
        assert_eq!(witt_value(&six).0, 6);
        let padded = LieExpr::sum([(9, br(x211.clone(), x21)), (-1, br(six, g("x1")))]);
        assert_ne!(witt_value(&padded).1, 0);
    }

    #[test]
    fn inhomogeneous_sum_reports_both_degrees() {
        let gens = GeneratorSet::standard(&["x", "y", "z"]);
        let e = LieExpr::sum([(1, LieExpr::bracket(LieExpr::gen("x"), LieExpr::gen("y"))), (1, LieExpr::gen("z"))]);
        let err = Presentation::from_exprs("bad", Rationals, gens, &[e]).unwrap_err();
        assert_eq!(err, Error::Inhomogeneous { first: 2, second: 1 });
    }

    #[test]
    fn product_builders() {
        let q = Rationals;
        let px = Presentation::new("X", q, GeneratorSet::standard(&["x"]), vec![]).unwrap();
        let py = Presentation::new("Y", q, GeneratorSet::standard(&["y"]), vec![]).unwrap();
        let fp = px.free_product(&py).unwrap();
        assert_eq!(fp.generators().len(), 2);
        assert!(fp.relations().is_empty());
        let ds = px.direct_sum(&py).unwrap();
        assert_eq!(ds.relations().len(), 1);
        assert_eq!(ds.relations()[0].render(&q, ds.generators()), "[x,y]");
        assert!(px.direct_sum(&px).is_err());
    }

    #[test]
    fn quotient_kills_the_span() {
        let q = Rationals;
        let p = g4(q);
        let w = p.generators().index_of("w").unwrap();
        let quo = p.quotient_by_span(&[vec![(w, q.one())]]).unwrap();
        assert_eq!(quo.generators().names(), &["x", "y", "z"]);
        assert_eq!(quo.relations().len(), 1);
        assert_eq!(quo.relations()[0].render(&q, quo.generators()), "[x,y]");
        let bad = witt_plus(q).quotient_by_span(&[vec![(1, q.one())]]);
        assert!(bad.is_err());
    }
}
