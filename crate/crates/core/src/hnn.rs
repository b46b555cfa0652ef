//! HNN-extensions: derivations, composition and splitting, and the
//! embeddings into standard and quadratic algebras.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{axpy, rank_kernel, Echelon, ExactMatrix, Field, SparseVec};
use crate::error::{Error, Result};
use crate::free_lie::{standard_factorization, FreeLie, GeneratorSet, LieElement, Word};
use crate::presentation::Presentation;
use crate::quadratic_dual::{pair_index, subsets_of_size};
use crate::quotient::{expand_tables, SubalgebraView};

/// A degree-`degree` linear map on the subalgebra generated by degree-1
/// elements `domain[k]`, given by `domain[k] -> values[k]`. Elements are
/// written in the free algebra on the ambient presentation's generators.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationSpec<F: Field> {
    pub domain: Vec<LieElement<F>>,
    pub values: Vec<LieElement<F>>,
    pub degree: u32,
}

impl<F: Field> DerivationSpec<F> {
    fn check_shape(&self, m: &Presentation<F>) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::InvalidDerivation("degree must be at least 1".into()));
        }
        if self.domain.len() != self.values.len() {
            return Err(Error::InvalidDerivation("one value per domain element is required".into()));
        }
        let n = m.generators().len();
        for (a, v) in self.domain.iter().zip(&self.values) {
            if a.degree() != 1 {
                return Err(Error::InvalidDerivation("domain elements must have degree 1".into()));
            }
            if !v.is_zero() && v.degree() != 1 + self.degree {
                return Err(Error::InvalidDerivation(alloc::format!(
                    "value of degree {} for a derivation of degree {}",
                    v.degree(),
                    self.degree
                )));
            }
            for w in a.terms().keys().chain(v.terms().keys()) {
                if w.iter().any(|&c| c as usize >= n) {
                    return Err(Error::InvalidDerivation("value outside the algebra".into()));
                }
            }
        }
        Ok(())
    }
}

/// Where a proposed derivation breaks the Leibniz rule.
#[derive(Clone, Debug, PartialEq)]
pub struct LeibnizViolation {
    /// Degree of the dependency among brackets of domain generators.
    pub degree: u32,
    /// The dependency, in Lyndon words over `a0, a1, ...`.
    pub dependency: String,
}

/// Extends the map by the Leibniz rule over brackets of domain elements and
/// checks that every linear dependency among those brackets (degree up to
/// `N - degree`) is sent to zero.
pub fn validate_derivation<F: Field>(m: &Presentation<F>, spec: &DerivationSpec<F>, max_degree: u32) -> Result<Option<LeibnizViolation>> {
    spec.check_shape(m)?;
    let k = spec.domain.len();
    if k == 0 || spec.degree + 1 > max_degree {
        return Ok(None);
    }
    let mut table = expand_tables(m, max_degree)?;
    let st = table.structure();
    let f = m.field().clone();
    let symbols: Vec<String> = (0..k).map(|i| alloc::format!("a{i}")).collect();
    let sgens = GeneratorSet::new(symbols.into_iter().map(|s| (s, 1)))?;
    let mut free = FreeLie::new(f.clone(), sgens.clone());
    let mut pi: BTreeMap<Word, SparseVec<F::Elem>> = BTreeMap::new();
    let mut phi: BTreeMap<Word, SparseVec<F::Elem>> = BTreeMap::new();
    for i in 0..k {
        let a = st.to_global(1, &table.project(&spec.domain[i])?);
        let v = if spec.values[i].is_zero() {
            Vec::new()
        } else {
            st.to_global(1 + spec.degree, &table.project(&spec.values[i])?)
        };
        pi.insert(vec![i as u16], a);
        phi.insert(vec![i as u16], v);
    }
    for e in 2..=max_degree - spec.degree {
        let words = free.basis(e).0.to_vec();
        let mut images = Vec::with_capacity(words.len());
        for w in &words {
            let (u, v) = standard_factorization(w);
            let p = st.bracket_vectors(&pi[u], &pi[v]);
            let one = f.one();
            let q = axpy(&f, &st.bracket_vectors(&phi[u], &pi[v]), &one, &st.bracket_vectors(&pi[u], &phi[v]));
            pi.insert(w.clone(), p.clone());
            phi.insert(w.clone(), q);
            images.push(p);
        }
        let rows = st.dim(e);
        let off = st.range(e).start;
        let mut entries = Vec::new();
        for (c, img) in images.iter().enumerate() {
            for (r, x) in img {
                entries.push((r - off, c, x.clone()));
            }
        }
        let mat = ExactMatrix::from_entries(f.clone(), rows, words.len(), entries)?;
        let (_, kernel) = rank_kernel(&mat);
        for kv in kernel {
            let mut acc = Vec::new();
            for (c, x) in &kv {
                acc = axpy(&f, &acc, x, &phi[&words[*c]]);
            }
            if !acc.is_empty() {
                let dep = LieElement::from_indexed(e, &words, &kv).render(&f, &sgens);
                return Ok(Some(LeibnizViolation { degree: e, dependency: dep }));
            }
        }
    }
    Ok(None)
}

fn fresh_name(gens: &GeneratorSet, prefix: &str) -> String {
    (1..)
        .map(|i| alloc::format!("{prefix}{i}"))
        .find(|n| gens.index_of(n).is_none())
        .expect("unbounded supply of names")
}

fn extend(gens: &GeneratorSet, extra: &[(String, u32)]) -> Result<GeneratorSet> {
    GeneratorSet::new(
        gens.names()
            .iter()
            .cloned()
            .zip(gens.degrees().iter().copied())
            .chain(extra.iter().cloned()),
    )
}

/// `<M, t | [t, a] - phi(a), relations of M>` after validating `phi` up to `N`.
pub fn hnn_compose<F: Field>(m: &Presentation<F>, spec: &DerivationSpec<F>, stable_letter: &str, max_degree: u32) -> Result<Presentation<F>> {
    if let Some(v) = validate_derivation(m, spec, max_degree)? {
        return Err(Error::InvalidDerivation(alloc::format!(
            "dependency {} in degree {} is not sent to zero",
            v.dependency,
            v.degree
        )));
    }
    if m.generators().index_of(stable_letter).is_some() {
        return Err(Error::Usage(alloc::format!("generator name clash: {stable_letter}")));
    }
    compose_unchecked(m, spec, stable_letter)
}

fn compose_unchecked<F: Field>(m: &Presentation<F>, spec: &DerivationSpec<F>, stable_letter: &str) -> Result<Presentation<F>> {
    let f = m.field().clone();
    let gens = extend(m.generators(), &[(stable_letter.to_string(), spec.degree)])?;
    let t = gens.len() - 1;
    let mut free = FreeLie::new(f.clone(), gens.clone());
    let mut rels = m.relations().to_vec();
    let tt = free.generator(t);
    for (a, v) in spec.domain.iter().zip(&spec.values) {
        let b = free.bracket(&tt, a);
        let r = if v.is_zero() { b } else { b.add(&f, &v.neg(&f))? };
        rels.push(r);
    }
    Presentation::new(alloc::format!("HNN({})", m.name()), f, gens, rels)
}

/// A quadratic presentation split along a degree-1 generator `x`.
#[derive(Clone, Debug)]
pub struct HnnSplit<F: Field> {
    /// Relations not involving `x`, on the remaining generators.
    pub base: Presentation<F>,
    /// Domain basis `a_i` and values `phi(a_i)` in the free algebra of `base`.
    pub derivation: DerivationSpec<F>,
    /// `base` extended by `x` along the derivation.
    pub reconstruction: Presentation<F>,
}

/// Splits a quadratic presentation as an HNN-extension with stable letter
/// `x`: each relation becomes `[x, a_i] + m_i` or a relation among the other
/// generators; `phi(a_i) = -m_i`.
pub fn hnn_decompose<F: Field>(p: &Presentation<F>, x: &str) -> Result<HnnSplit<F>> {
    if !p.is_quadratic_shape() {
        return Err(Error::NotQuadratic("splitting along a generator needs a quadratic presentation".into()));
    }
    let f = p.field().clone();
    let gens = p.generators();
    let n = gens.len();
    let xi = gens.index_of(x).ok_or_else(|| Error::Usage(alloc::format!("unknown generator {x}")))?;
    let others: Vec<usize> = (0..n).filter(|&i| i != xi).collect();
    let pos = |i: usize| others.iter().position(|&o| o == i).expect("not x");
    let m_count = others.len();
    let m_pairs = subsets_of_size(m_count, 2);
    // columns: [x, o_k] first, then pairs among the others
    let width = m_count + m_pairs.len();
    let mut ech = Echelon::new(f.clone(), width);
    for r in p.relations() {
        let mut v = Vec::new();
        for (w, c) in r.terms() {
            let (a, b) = (w[0] as usize, w[1] as usize);
            if a == xi {
                v.push((pos(b), c.clone()));
            } else if b == xi {
                v.push((pos(a), f.neg(c)));
            } else {
                v.push((m_count + pair_index(m_count, pos(a), pos(b)), c.clone()));
            }
        }
        v.sort_by_key(|e| e.0);
        ech.insert(&v);
    }
    let ech = ech.into_reduced();
    let mut rows = ech.rows().to_vec();
    rows.sort_by_key(|r| r[0].0);
    let base_gens = GeneratorSet::new(others.iter().map(|&i| (gens.name(i).to_string(), 1)))?;
    let pair_elem = |v: &[(usize, F::Elem)]| -> Result<LieElement<F>> {
        let terms = v
            .iter()
            .map(|(c, e)| (vec![m_pairs[c - m_count][0] as u16, m_pairs[c - m_count][1] as u16], e.clone()));
        LieElement::from_terms(&f, &base_gens, 2, terms)
    };
    let mut base_rels = Vec::new();
    let mut domain = Vec::new();
    let mut values = Vec::new();
    for r in &rows {
        let split = r.partition_point(|(c, _)| *c < m_count);
        let (xpart, mpart) = r.split_at(split);
        if xpart.is_empty() {
            base_rels.push(pair_elem(mpart)?);
        } else {
            let a = LieElement::from_terms(&f, &base_gens, 1, xpart.iter().map(|(c, e)| (vec![*c as u16], e.clone())))?;
            domain.push(a);
            let m = pair_elem(mpart)?;
            values.push(if m.is_zero() { LieElement::zero(2) } else { m.neg(&f) });
        }
    }
    let base = Presentation::new(alloc::format!("{}-{}", p.name(), x), f.clone(), base_gens, base_rels)?;
    let derivation = DerivationSpec { domain, values, degree: 1 };
    let reconstruction = compose_unchecked(&base, &derivation, x)?;
    Ok(HnnSplit {
        base,
        derivation,
        reconstruction,
    })
}

/// Checks `b_{i+1}(L) = b_i(A) + b_{i+1}(M)` for `-1 <= i <= N - 1` on
/// diagonal Betti numbers (missing entries count as zero). Returns the first
/// failing `i` with both sides.
pub fn betti_recursion_check(l: &[usize], m: &[usize], a: &[usize], max_degree: usize) -> Option<(i64, usize, usize)> {
    let at = |v: &[usize], i: i64| if i < 0 { 0 } else { v.get(i as usize).copied().unwrap_or(0) };
    for i in -1..max_degree as i64 {
        let lhs = at(l, i + 1);
        let rhs = at(a, i) + at(m, i + 1);
        if lhs != rhs {
            return Some((i, lhs, rhs));
        }
    }
    None
}

/// Evidence that a map of presentations is injective through degree `N`:
/// the subalgebra generated by the images has the source's dimensions.
#[derive(Clone, Debug)]
pub struct EmbeddingCertificate<F: Field> {
    pub max_degree: u32,
    /// Images of the source generators in the free algebra of the target.
    pub images: Vec<LieElement<F>>,
    pub source_dims: Vec<usize>,
    pub image_dims: Vec<usize>,
}

impl<F: Field> EmbeddingCertificate<F> {
    pub fn holds(&self) -> bool {
        self.source_dims == self.image_dims
    }
}

/// Builds the certificate by expanding both presentations to `N`.
pub fn certify_embedding<F: Field>(source: &Presentation<F>, target: &Presentation<F>, images: Vec<LieElement<F>>, max_degree: u32) -> Result<EmbeddingCertificate<F>> {
    let source_dims = expand_tables(source, max_degree)?.dims();
    let mut tt = expand_tables(target, max_degree)?;
    let st = tt.structure();
    let mut gens = Vec::new();
    for img in &images {
        if img.degree() <= max_degree && !img.is_zero() {
            gens.push((img.degree(), tt.project(img)?));
        }
    }
    let view = SubalgebraView::generated(&st, &gens)?;
    Ok(EmbeddingCertificate {
        max_degree,
        images,
        source_dims,
        image_dims: view.dims().to_vec(),
    })
}

/// A presentation under construction together with the images of the
/// original generators.
#[derive(Clone, Debug)]
struct Tracked<F: Field> {
    field: F,
    gens: GeneratorSet,
    relations: Vec<LieElement<F>>,
    images: Vec<LieElement<F>>,
}

impl<F: Field> Tracked<F> {
    fn new(p: &Presentation<F>) -> Self {
        let images = (0..p.generators().len()).map(|i| LieElement::generator(p.field(), p.generators(), i)).collect();
        Tracked {
            field: p.field().clone(),
            gens: p.generators().clone(),
            relations: p.relations().to_vec(),
            images,
        }
    }

    fn add_generator(&mut self, prefix: &str, degree: u32) -> Result<usize> {
        let name = fresh_name(&self.gens, prefix);
        self.gens = extend(&self.gens, &[(name, degree)])?;
        Ok(self.gens.len() - 1)
    }

    fn free(&self) -> FreeLie<F> {
        FreeLie::new(self.field.clone(), self.gens.clone())
    }

    /// Removes generator `g`, substituting `value` (which must not involve `g`).
    fn eliminate(&mut self, g: usize, value: &LieElement<F>) -> Result<()> {
        let f = self.field.clone();
        let kept: Vec<usize> = (0..self.gens.len()).filter(|&i| i != g).collect();
        let new_gens = GeneratorSet::new(kept.iter().map(|&i| (self.gens.name(i).to_string(), self.gens.degree(i))))?;
        let reindex = |i: usize| kept.iter().position(|&k| k == i).expect("kept generator");
        let moved = |e: &LieElement<F>| -> Result<LieElement<F>> {
            let terms = e.terms().iter().map(|(w, c)| (w.iter().map(|&x| reindex(x as usize) as u16).collect::<Vec<_>>(), c.clone()));
            // reindexing preserves order of letters, so Lyndon words stay Lyndon
            LieElement::from_terms(&f, &new_gens, e.degree(), terms)
        };
        let value = moved(value)?;
        let images: Vec<LieElement<F>> = (0..self.gens.len())
            .map(|i| if i == g { Ok(value.clone()) } else { Ok(LieElement::generator(&f, &new_gens, reindex(i))) })
            .collect::<Result<_>>()?;
        let mut fl = FreeLie::new(f.clone(), new_gens.clone());
        self.relations = self
            .relations
            .iter()
            .map(|r| fl.map_element(&self.gens, r, &images))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|r| !r.is_zero())
            .collect();
        self.images = self.images.iter().map(|e| fl.map_element(&self.gens, e, &images)).collect::<Result<Vec<_>>>()?;
        self.gens = new_gens;
        Ok(())
    }

    fn presentation(&self, name: &str) -> Result<Presentation<F>> {
        Presentation::new(name, self.field.clone(), self.gens.clone(), self.relations.clone())
    }

    /// Pads with an abelian degree-1 generator if there is none, then
    /// replaces top-degree generators `g` by `[t, x]` with a stable letter
    /// `t` of one degree less, until every generator has degree 1.
    fn standardize(&mut self) -> Result<()> {
        if self.gens.is_empty() {
            return Ok(());
        }
        if !self.gens.degrees().contains(&1) {
            let u = self.add_generator("u", 1)?;
            let mut fl = self.free();
            let uu = fl.generator(u);
            for g in 0..u {
                let b = fl.bracket(&uu, &fl.generator(g));
                self.relations.push(b);
            }
        }
        loop {
            let top = self.gens.max_degree();
            if top <= 1 {
                return Ok(());
            }
            while let Some(g) = (0..self.gens.len()).find(|&i| self.gens.degree(i) == top) {
                let x = (0..self.gens.len()).find(|&i| self.gens.degree(i) == 1).expect("degree-1 generator");
                let t = self.add_generator("t", top - 1)?;
                let mut fl = self.free();
                let value = fl.bracket(&fl.generator(t), &fl.generator(x));
                self.eliminate(g, &value)?;
            }
        }
    }
}

/// Embeds `p` into a presentation with all generators in degree 1.
pub fn standardize<F: Field>(p: &Presentation<F>, max_degree: u32) -> Result<(Presentation<F>, EmbeddingCertificate<F>)> {
    let mut t = Tracked::new(p);
    t.standardize()?;
    let q = t.presentation(&alloc::format!("std({})", p.name()))?;
    let cert = certify_embedding(p, &q, t.images.clone(), max_degree)?;
    Ok((q, cert))
}

/// Writes a homogeneous element of degree at least 2 as `sum_g [g, a_g]`
/// over generators `g`, by Jacobi on the standard bracketing.
pub fn split_by_generators<F: Field>(fl: &mut FreeLie<F>, r: &LieElement<F>) -> Result<BTreeMap<usize, LieElement<F>>> {
    let f = fl.field().clone();
    let mut out: BTreeMap<usize, LieElement<F>> = BTreeMap::new();
    fn word_elem<F: Field>(fl: &FreeLie<F>, w: &[u16]) -> LieElement<F> {
        let g = fl.generators();
        LieElement::from_terms(fl.field(), g, g.weight(w), [(w.to_vec(), fl.field().one())]).expect("Lyndon word")
    }
    fn peel<F: Field>(fl: &mut FreeLie<F>, left: &[u16], right: LieElement<F>, out: &mut BTreeMap<usize, LieElement<F>>) -> Result<()> {
        if right.is_zero() {
            return Ok(());
        }
        let f = fl.field().clone();
        if left.len() == 1 {
            let g = left[0] as usize;
            let cur = out.remove(&g).unwrap_or_else(|| LieElement::zero(right.degree()));
            out.insert(g, cur.add(&f, &right)?);
            return Ok(());
        }
        let (l1, l2) = standard_factorization(left);
        let e1 = word_elem(fl, l1);
        let e2 = word_elem(fl, l2);
        // [[l1, l2], v] = [l1, [l2, v]] - [l2, [l1, v]]
        let a = fl.bracket(&e2, &right);
        let b = fl.bracket(&e1, &right).neg(&f);
        peel(fl, l1, a, out)?;
        peel(fl, l2, b, out)
    }
    if r.degree() < 2 {
        return Err(Error::Usage("only elements of degree at least 2 split".into()));
    }
    for (w, c) in r.terms() {
        if w.len() == 1 {
            return Err(Error::Usage("a generator of top degree does not split".into()));
        }
        let (u, v) = standard_factorization(w);
        let right = word_elem(fl, v).scale(&f, c);
        peel(fl, u, right, &mut out)?;
    }
    out.retain(|_, a| !a.is_zero());
    Ok(out)
}

/// Size guard for [`quadratize`].
pub const QUADRATIZE_GENERATOR_LIMIT: usize = 2000;

/// Embeds `p` into a quadratic presentation: standardize, then remove all
/// relations of the highest degree `d` in one round and standardize again.
///
/// A round splits each `r_k = sum_i [x_i, a_i]`, adds one letter `c` with
/// `[c, g] = 0` for every generator, stable letters `s_i` of degree `d - 2`
/// with `[s_i, c] = a_i` (`i >= 2`), and for each `r_k` a letter `h` with
/// `[h, c] = a_1`, `[h, x_1] = sum_i [x_i, s_i]`. These imply `r_k`.
pub fn quadratize_presentation<F: Field>(p: &Presentation<F>) -> Result<(Presentation<F>, Vec<LieElement<F>>)> {
    let mut t = Tracked::new(p);
    t.standardize()?;
    let f = t.field.clone();
    loop {
        let d = t.relations.iter().map(LieElement::degree).max().unwrap_or(0);
        if d <= 2 {
            break;
        }
        if t.gens.len() > QUADRATIZE_GENERATOR_LIMIT {
            return Err(Error::TooLarge(alloc::format!(
                "quadratization reached {} generators with relations of degree {d} left",
                t.gens.len()
            )));
        }
        let (top, rest): (Vec<_>, Vec<_>) = t.relations.drain(..).partition(|r| r.degree() == d);
        t.relations = rest;
        let mut fl = t.free();
        let splits = top
            .iter()
            .map(|r| split_by_generators(&mut fl, r).map(|s| s.into_iter().collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        let c = t.add_generator("c", 1)?;
        let mut fl = t.free();
        let ec = fl.generator(c);
        for g in 0..c {
            let b = fl.bracket(&ec, &fl.generator(g));
            t.relations.push(b);
        }
        let mut letters = Vec::new();
        for parts in &splits {
            let mut s_letters = Vec::new();
            for (_, a) in parts.iter().skip(1) {
                let s = t.add_generator("s", d - 2)?;
                s_letters.push(s);
                let mut fl = t.free();
                let b = fl.bracket(&fl.generator(s), &fl.generator(c));
                t.relations.push(b.add(&f, &a.neg(&f))?);
            }
            letters.push(s_letters);
        }
        for (parts, s_letters) in splits.iter().zip(&letters) {
            let h = t.add_generator("h", d - 2)?;
            let mut fl = t.free();
            let (x1, a1) = &parts[0];
            let eh = fl.generator(h);
            let b = fl.bracket(&eh, &fl.generator(c));
            t.relations.push(b.add(&f, &a1.neg(&f))?);
            let mut sum = LieElement::zero(d - 1);
            for ((xi, _), s) in parts.iter().skip(1).zip(s_letters) {
                let b = fl.bracket(&fl.generator(*xi), &fl.generator(*s));
                sum = sum.add(&f, &b)?;
            }
            let b = fl.bracket(&eh, &fl.generator(*x1));
            t.relations.push(b.add(&f, &sum.neg(&f))?);
        }
        t.standardize()?;
    }
    let q = t.presentation(&alloc::format!("quad({})", p.name()))?;
    Ok((q, t.images))
}

/// [`quadratize_presentation`] plus its embedding certificate through `N`.
pub fn quadratize<F: Field>(p: &Presentation<F>, max_degree: u32) -> Result<(Presentation<F>, EmbeddingCertificate<F>)> {
    let (q, images) = quadratize_presentation(p)?;
    let cert = certify_embedding(p, &q, images, max_degree)?;
    Ok((q, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rationals;
    use crate::cohomology::betti_table;
    use crate::presentation::library::*;
    use crate::presentation::LieExpr;

    fn q() -> Rationals {
        Rationals
    }

    fn elem(p: &Presentation<Rationals>, e: &LieExpr) -> LieElement<Rationals> {
        let mut fl = p.free_lie();
        e.eval(&mut fl).unwrap()
    }

    fn g(n: &str) -> LieExpr {
        LieExpr::gen(n)
    }

    #[test]
    fn zero_derivation_is_valid_and_composes_to_a_direct_sum() {
        let m = free(q(), 2);
        let spec = DerivationSpec {
            domain: vec![elem(&m, &g("x1")), elem(&m, &g("x2"))],
            values: vec![LieElement::zero(2), LieElement::zero(2)],
            degree: 1,
        };
        assert_eq!(validate_derivation(&m, &spec, 5).unwrap(), None);
        let h = hnn_compose(&m, &spec, "t", 5).unwrap();
        let dims = expand_tables(&h, 4).unwrap().dims();
        // F(2) x k
        assert_eq!(&dims[1..], &[3, 1, 2, 3]);
    }

    #[test]
    fn derivation_on_free_rank_three() {
        let m = Presentation::new("M", q(), GeneratorSet::standard(&["y", "z", "w"]), vec![]).unwrap();
        let spec = DerivationSpec {
            domain: vec![elem(&m, &g("y")), elem(&m, &g("z")), elem(&m, &g("w"))],
            values: vec![elem(&m, &LieExpr::bracket(g("z"), g("w"))), LieElement::zero(2), LieElement::zero(2)],
            degree: 1,
        };
        assert_eq!(validate_derivation(&m, &spec, 5).unwrap(), None);
        let l = hnn_compose(&m, &spec, "x", 6).unwrap();
        let target = two_gen_koszul(q());
        let a = expand_tables(&l, 6).unwrap().structure().enveloping_series();
        let b = expand_tables(&target, 6).unwrap().structure().enveloping_series();
        assert_eq!(a, b);
    }

    #[test]
    fn leibniz_violation_on_abelian_pair() {
        let m = abelian(q(), 2);
        let spec = DerivationSpec {
            domain: vec![elem(&m, &g("x1")), elem(&m, &g("x2"))],
            values: vec![elem(&m, &LieExpr::bracket(g("x1"), g("x2"))), LieElement::zero(2)],
            degree: 1,
        };
        // [phi(x1), x2] + [x1, phi(x2)] = [[x1,x2],x2] = 0 in the abelian algebra
        assert_eq!(validate_derivation(&m, &spec, 4).unwrap(), None);
        let m = free(q(), 3);
        let ab = Presentation::from_exprs("A", q(), m.generators().clone(), &[LieExpr::bracket(g("x1"), g("x2"))]).unwrap();
        let spec = DerivationSpec {
            domain: vec![elem(&ab, &g("x1")), elem(&ab, &g("x2"))],
            values: vec![elem(&ab, &LieExpr::bracket(g("x3"), g("x1"))), LieElement::zero(2)],
            degree: 1,
        };
        let v = validate_derivation(&ab, &spec, 4).unwrap().unwrap();
        assert_eq!(v.degree, 2);
    }

    #[test]
    fn decompose_g4() {
        let p = surface(q(), 2);
        let s = hnn_decompose(&p, "x1").unwrap();
        assert_eq!(s.derivation.domain.len(), 1);
        assert_eq!(s.derivation.domain[0].render(&q(), s.base.generators()), "y1");
        assert_eq!(s.derivation.values[0].render(&q(), s.base.generators()), "-[x2,y2]");
        let a = expand_tables(&p, 5).unwrap().structure().hilbert_series();
        let b = expand_tables(&s.reconstruction, 5).unwrap().structure().hilbert_series();
        assert_eq!(a, b);
    }

    #[test]
    fn decompose_h2() {
        let p = heisenberg(q(), 2);
        let s = hnn_decompose(&p, "x2").unwrap();
        let gens = s.base.generators().clone();
        let dom: Vec<String> = s.derivation.domain.iter().map(|a| a.render(&q(), &gens)).collect();
        let val: Vec<String> = s.derivation.values.iter().map(|a| a.render(&q(), &gens)).collect();
        assert_eq!(dom, vec!["x1", "y1", "y2"]);
        assert_eq!(val, vec!["0", "0", "[x1,y1]"]);
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(betti_recursion_check(&[1, 4, 3], &[1, 3], &[1, 3], 3), None);
        assert_eq!(betti_recursion_check(&[1, 2], &[1, 1], &[1], 2), None);
        assert!(betti_recursion_check(&[1, 5, 3], &[1, 3], &[1, 3], 3).is_some());
    }

    #[test]
    fn split_recovers_the_relation() {
        for p in [heisenberg1(q()), g4(q()), witt_plus(q())] {
            let mut fl = p.free_lie();
            for r in p.relations() {
                let parts = split_by_generators(&mut fl, r).unwrap();
                let mut acc = LieElement::zero(r.degree());
                for (gi, a) in parts {
                    let b = fl.bracket(&fl.generator(gi), &a);
                    acc = acc.add(&q(), &b).unwrap();
                }
                assert_eq!(&acc, r);
            }
        }
    }

    #[test]
    fn standardize_examples() {
        let (s, cert) = standardize(&g4(q()), 4).unwrap();
        assert_eq!(s.generators(), g4(q()).generators());
        assert!(cert.holds());
        let gens = GeneratorSet::new([("x".to_string(), 1), ("s".to_string(), 3)]).unwrap();
        let p = Presentation::new("xs", q(), gens, vec![]).unwrap();
        let (s, cert) = standardize(&p, 6).unwrap();
        assert!(s.generators().is_standard());
        assert_eq!(s.generators().len(), 2);
        assert!(cert.holds());
        let (w, cert) = standardize(&witt_plus(q()), 8).unwrap();
        assert!(w.generators().is_standard());
        assert_eq!(w.generators().len(), 2);
        assert_eq!(&cert.image_dims[1..], &[1; 8]);
        assert!(cert.holds());
        let b = betti_table(&expand_tables(&w, 8).unwrap().structure(), Some(2));
        assert_eq!(b.minimal_presentation_degrees(), (vec![1, 1], vec![5, 7]));
    }

    #[test]
    fn quadratize_h1() {
        let (out, cert) = quadratize(&heisenberg1(q()), 5).unwrap();
        assert!(out.is_quadratic_shape());
        assert_eq!(&cert.image_dims[1..], &[2, 1, 0, 0, 0]);
        assert!(cert.holds());
        let b = betti_table(&expand_tables(&out, 5).unwrap().structure(), Some(2));
        assert!(b.quadratic_verdict().passed());
    }

    #[test]
    fn recompose_preserves_hilbert_series() {
        for p in [g4(q()), heisenberg(q(), 2), two_gen_koszul(q()), surface(q(), 1), b2d(q(), 3)] {
            let want = expand_tables(&p, 5).unwrap().structure().hilbert_series();
            for x in p.generators().names() {
                let s = hnn_decompose(&p, x).unwrap();
                let got = expand_tables(&s.reconstruction, 5).unwrap().structure().hilbert_series();
                assert_eq!(got, want, "{} split along {x}", p.name());
            }
        }
    }

    #[test]
    fn standardize_keeps_high_minimal_relations() {
        let w = witt_plus(q());
        let before = betti_table(&expand_tables(&w, 8).unwrap().structure(), Some(2));
        let (s, _) = standardize(&w, 4).unwrap();
        let after = betti_table(&expand_tables(&s, 8).unwrap().structure(), Some(2));
        for j in 3..=8 {
            assert_eq!(before.get(2, j), after.get(2, j), "j = {j}");
        }
    }

    #[test]
    fn cocyclic_split_has_zero_euler_characteristic() {
        let l = two_gen_koszul(q());
        let b = betti_table(&expand_tables(&l, 5).unwrap().structure(), None);
        let p: i64 = b.diagonal().iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        assert_eq!(p, 0);
    }

    #[test]
    fn quadratized_witt_is_quadratic_but_too_large_to_certify() {
        let (w, _) = standardize(&witt_plus(q()), 4).unwrap();
        let (out, images) = quadratize_presentation(&w).unwrap();
        assert!(out.is_quadratic_shape());
        assert_eq!(images.len(), 2);
        assert!(matches!(certify_embedding(&w, &out, images, 5), Err(Error::TooLarge(_))));
    }
}
