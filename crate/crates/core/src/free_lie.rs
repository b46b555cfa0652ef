//! Free graded Lie algebras on weighted generators.
//!
//! Elements are stored in the Lyndon basis. A Lyndon word `w` stands for its
//! standard bracketing `P(w) = [P(u), P(v)]`, where `v` is the longest proper
//! Lyndon suffix of `w`. Expanded into the tensor algebra, `P(w)` equals `w`
//! plus lexicographically larger words, which lets us read Lie coordinates off
//! any Lie polynomial by repeatedly cancelling its smallest word.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::arith::{Field, SparseVec};
use crate::error::{Error, Result};

/// A word in the generator indices.
pub type Word = Vec<u16>;

/// A noncommutative polynomial: word -> coefficient.
pub type TensorPoly<E> = BTreeMap<Word, E>;

/// Ordered, named generators with positive integer degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    names: Vec<String>,
    degrees: Vec<u32>,
}

impl GeneratorSet {
    pub fn new(gens: impl IntoIterator<Item = (String, u32)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for (n, d) in gens {
            if d == 0 {
                return Err(Error::Usage(alloc::format!("generator {n} must have positive degree")));
            }
            if names.contains(&n) {
                return Err(Error::Usage(alloc::format!("duplicate generator {n}")));
            }
            names.push(n);
            degrees.push(d);
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::TooLarge("too many generators".into()));
        }
        Ok(GeneratorSet { names, degrees })
    }

    /// Generators all of degree 1, named as given.
    pub fn standard(names: &[&str]) -> Self {
        Self::new(names.iter().map(|n| (String::from(*n), 1))).expect("distinct names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weight(&self, w: &[u16]) -> u32 {
        w.iter().map(|&c| self.degrees[c as usize]).sum()
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn is_standard(&self) -> bool {
        self.degrees.iter().all(|&d| d == 1)
    }
}

/// True if `w` is strictly smaller than all of its proper rotations.
pub fn is_lyndon(w: &[u16]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|k| {
        let rot = w[k..].iter().chain(w[..k].iter());
        w.iter().lt(rot)
    })
}

/// Splits a Lyndon word of length >= 2 as `u v` with `v` its longest proper
/// Lyndon suffix.
pub fn standard_factorization(w: &[u16]) -> (&[u16], &[u16]) {
    debug_assert!(w.len() >= 2);
    for k in 1..w.len() {
        if is_lyndon(&w[k..]) {
            return (&w[..k], &w[k..]);
        }
    }
    unreachable!("a single letter is always a Lyndon suffix")
}

/// Lyndon words of total weight `n`, in lexicographic order.
pub fn lyndon_basis(g: &GeneratorSet, n: u32) -> Vec<Word> {
    let k = g.len();
    if k == 0 || n == 0 {
        return Vec::new();
    }
    let min_deg = g.degrees().iter().copied().min().unwrap_or(1);
    let max_len = (n / min_deg) as usize;
    let mut out = Vec::new();
    // Fredricksen-Kessler-Maiorana: all Lyndon words of length <= max_len in lex order.
    let mut w: Vec<u16> = vec![0];
    loop {
        if g.weight(&w) == n {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last().is_some_and(|&c| c as usize == k - 1) {
            w.pop();
        }
        match w.last_mut() {
            Some(c) => *c += 1,
            None => break,
        }
    }
    out
}

fn mobius(n: u64) -> i128 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-`n` component of the free Lie algebra, from the
/// weighted necklace formula (independent of the word enumeration).
///
/// With `h(t) = sum_g t^deg(g)`, the coefficients `a_m` of `t h'(t) / (1 - h(t))`
/// satisfy `a_m = sum_{d | m} d * dim_d`, which Moebius inversion undoes.
pub fn free_dimension(g: &GeneratorSet, n: u32) -> u64 {
    let n = n as usize;
    if n == 0 {
        return 0;
    }
    let mut h = vec![0i128; n + 1];
    for &d in g.degrees() {
        if (d as usize) <= n {
            h[d as usize] += 1;
        }
    }
    // s = 1 / (1 - h)
    let mut s = vec![0i128; n + 1];
    s[0] = 1;
    for m in 1..=n {
        s[m] = (1..=m).map(|i| h[i] * s[m - i]).sum();
    }
    // a = t h' * s
    let a: Vec<i128> = (0..=n)
        .map(|m| (1..=m).map(|i| i as i128 * h[i] * s[m - i]).sum())
        .collect();
    let total: i128 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius((n / d) as u64) * a[d])
        .sum();
    (total / n as i128) as u64
}

/// A homogeneous element of a free Lie algebra in Lyndon coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement<F: Field> {
    degree: u32,
    terms: BTreeMap<Word, F::Elem>,
}

impl<F: Field> LieElement<F> {
    pub fn zero(degree: u32) -> Self {
        LieElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn generator(field: &F, g: &GeneratorSet, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![i as u16], field.one());
        LieElement {
            degree: g.degree(i),
            terms,
        }
    }

    /// Builds an element from Lyndon-word coordinates; all words must have
    /// the given weight.
    pub fn from_terms(field: &F, g: &GeneratorSet, degree: u32, terms: impl IntoIterator<Item = (Word, F::Elem)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (w, c) in terms {
            if !is_lyndon(&w) {
                return Err(Error::Usage("coordinate word is not Lyndon".into()));
            }
            if w.iter().any(|&c| c as usize >= g.len()) {
                return Err(Error::Usage("coordinate word uses an unknown generator".into()));
            }
            let wt = g.weight(&w);
            if wt != degree {
                return Err(Error::Inhomogeneous { first: degree, second: wt });
            }
            add_term(field, &mut out, w, &c);
        }
        Ok(LieElement { degree, terms: out })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Word, F::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u16]) -> Option<&F::Elem> {
        self.terms.get(w)
    }

    pub fn add(&self, field: &F, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Inhomogeneous {
                first: self.degree,
                second: other.degree,
            });
        }
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_term(field, &mut terms, w.clone(), c);
        }
        Ok(LieElement {
            degree: self.degree,
            terms,
        })
    }

    pub fn scale(&self, field: &F, a: &F::Elem) -> Self {
        if field.is_zero(a) {
            return Self::zero(self.degree);
        }
        LieElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), field.mul(a, c))).collect(),
        }
    }

    pub fn neg(&self, field: &F) -> Self {
        self.scale(field, &field.neg(&field.one()))
    }

    /// Sparse coordinates with respect to an indexed basis of this degree.
    pub fn to_indexed(&self, index: &BTreeMap<Word, usize>) -> SparseVec<F::Elem> {
        let mut v: SparseVec<F::Elem> = self.terms.iter().map(|(w, c)| (index[w], c.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// Inverse of [`LieElement::to_indexed`].
    pub fn from_indexed(degree: u32, basis: &[Word], v: &SparseVec<F::Elem>) -> Self {
        LieElement {
            degree,
            terms: v.iter().map(|(i, c)| (basis[*i].clone(), c.clone())).collect(),
        }
    }

    /// Renders as a sum of standard bracketings, e.g. `[x,y] - 2*[z,w]`.
    pub fn render(&self, field: &F, g: &GeneratorSet) -> String {
        let mut s = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let (num, den) = field.to_ratio(c);
            let neg = num < num_bigint::BigInt::from(0);
            let abs = if neg { -num } else { num };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let one = num_bigint::BigInt::from(1);
            if abs != one || den != one {
                if den == one {
                    let _ = write!(s, "{abs}*");
                } else {
                    let _ = write!(s, "{abs}/{den}*");
                }
            }
            s.push_str(&render_bracketing(g, w));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

fn add_term<F: Field>(field: &F, terms: &mut BTreeMap<Word, F::Elem>, w: Word, c: &F::Elem) {
    match terms.get_mut(&w) {
        Some(x) => {
            *x = field.add(x, c);
            if field.is_zero(x) {
                terms.remove(&w);
            }
        }
        None => {
            if !field.is_zero(c) {
                terms.insert(w, c.clone());
            }
        }
    }
}

/// Standard bracketing of a Lyndon word, e.g. `[x,[x,y]]`.
pub fn render_bracketing(g: &GeneratorSet, w: &[u16]) -> String {
    if w.len() == 1 {
        return String::from(g.name(w[0] as usize));
    }
    let (u, v) = standard_factorization(w);
    alloc::format!("[{},{}]", render_bracketing(g, u), render_bracketing(g, v))
}

/// Arithmetic in the free Lie algebra on a generator set, with a cache of
/// tensor expansions of Lyndon bracketings.
#[derive(Clone, Debug)]
pub struct FreeLie<F: Field> {
    field: F,
    gens: GeneratorSet,
    expansions: BTreeMap<Word, TensorPoly<F::Elem>>,
    bases: BTreeMap<u32, (Vec<Word>, BTreeMap<Word, usize>)>,
}

impl<F: Field> FreeLie<F> {
    pub fn new(field: F, gens: GeneratorSet) -> Self {
        FreeLie {
            field,
            gens,
            expansions: BTreeMap::new(),
            bases: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> LieElement<F> {
        LieElement::generator(&self.field, &self.gens, i)
    }

    /// Lyndon basis of degree `n` and its index map.
    pub fn basis(&mut self, n: u32) -> (&[Word], &BTreeMap<Word, usize>) {
        let gens = &self.gens;
        let entry = self.bases.entry(n).or_insert_with(|| {
            let words = lyndon_basis(gens, n);
            let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
            (words, index)
        });
        (&entry.0, &entry.1)
    }

    pub fn dimension(&mut self, n: u32) -> usize {
        self.basis(n).0.len()
    }

    /// Tensor expansion of the standard bracketing of a Lyndon word.
    pub fn expand_word(&mut self, w: &[u16]) -> &TensorPoly<F::Elem> {
        if !self.expansions.contains_key(w) {
            let poly = if w.len() == 1 {
                let mut p = BTreeMap::new();
                p.insert(w.to_vec(), self.field.one());
                p
            } else {
                let (u, v) = standard_factorization(w);
                let pu = self.expand_word(u).clone();
                let pv = self.expand_word(v).clone();
                commutator(&self.field, &pu, &pv)
            };
            self.expansions.insert(w.to_vec(), poly);
        }
        &self.expansions[w]
    }

    /// Image of `u` in the tensor algebra (brackets become commutators).
    pub fn expand(&mut self, u: &LieElement<F>) -> TensorPoly<F::Elem> {
        let mut out = BTreeMap::new();
        for (w, c) in &u.terms {
            let p = self.expand_word(w).clone();
            for (word, x) in p {
                add_term(&self.field, &mut out, word, &self.field.mul(c, &x));
            }
        }
        out
    }

    /// Recovers Lyndon coordinates of a homogeneous Lie polynomial by
    /// cancelling its smallest word against the matching bracketing.
    pub fn from_tensor(&mut self, degree: u32, mut poly: TensorPoly<F::Elem>) -> Result<LieElement<F>> {
        let mut terms = BTreeMap::new();
        while let Some((w, c)) = poly.pop_first() {
            if self.field.is_zero(&c) {
                continue;
            }
            if !is_lyndon(&w) {
                return Err(Error::Domain("tensor is not a Lie polynomial".into()));
            }
            let p = self.expand_word(&w).clone();
            let neg = self.field.neg(&c);
            for (word, x) in p.iter().skip(1) {
                add_term(&self.field, &mut poly, word.clone(), &self.field.mul(&neg, x));
            }
            terms.insert(w, c);
        }
        Ok(LieElement { degree, terms })
    }

    pub fn bracket(&mut self, u: &LieElement<F>, v: &LieElement<F>) -> LieElement<F> {
        let degree = u.degree + v.degree;
        if u.is_zero() || v.is_zero() {
            return LieElement::zero(degree);
        }
        let pu = self.expand(u);
        let pv = self.expand(v);
        let c = commutator(&self.field, &pu, &pv);
        self.from_tensor(degree, c).expect("commutators of Lie polynomials are Lie")
    }

    /// Bracket of two Lyndon basis elements.
    pub fn bracket_words(&mut self, a: &[u16], b: &[u16]) -> LieElement<F> {
        let degree = self.gens.weight(a) + self.gens.weight(b);
        let pa = self.expand_word(a).clone();
        let pb = self.expand_word(b).clone();
        let c = commutator(&self.field, &pa, &pb);
        self.from_tensor(degree, c).expect("commutators of Lie polynomials are Lie")
    }
}

impl<F: Field> FreeLie<F> {
    /// Image of `u` (an element of the free algebra on `src`) under the
    /// homomorphism sending generator `i` of `src` to `images[i]`.
    pub fn map_element(&mut self, src: &GeneratorSet, u: &LieElement<F>, images: &[LieElement<F>]) -> Result<LieElement<F>> {
        for (i, img) in images.iter().enumerate().take(src.len()) {
            if img.degree() != src.degree(i) {
                return Err(Error::Usage(alloc::format!("image of {} has degree {} instead of {}", src.name(i), img.degree(), src.degree(i))));
            }
        }
        let mut memo: BTreeMap<Word, LieElement<F>> = BTreeMap::new();
        let mut out: Option<LieElement<F>> = None;
        for (w, c) in u.terms() {
            let img = self.map_word(w, images, &mut memo).scale(&self.field, c);
            out = Some(match out {
                None => img,
                Some(acc) => acc.add(&self.field, &img)?,
            });
        }
        Ok(out.unwrap_or_else(|| LieElement::zero(u.degree())))
    }

    fn map_word(&mut self, w: &[u16], images: &[LieElement<F>], memo: &mut BTreeMap<Word, LieElement<F>>) -> LieElement<F> {
        if let Some(e) = memo.get(w) {
            return e.clone();
        }
        let e = if w.len() == 1 {
            images[w[0] as usize].clone()
        } else {
            let (u, v) = standard_factorization(w);
            let iu = self.map_word(u, images, memo);
            let iv = self.map_word(v, images, memo);
            let mut b = self.bracket(&iu, &iv);
            if b.is_zero() {
                b = LieElement::zero(iu.degree() + iv.degree());
            }
            b
        };
        memo.insert(w.to_vec(), e.clone());
        e
    }
}

fn commutator<E: Clone, F: Field<Elem = E>>(f: &F, a: &TensorPoly<E>, b: &TensorPoly<E>) -> TensorPoly<E> {
    let mut out = BTreeMap::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let prod = f.mul(ca, cb);
            let mut ab = wa.clone();
            ab.extend_from_slice(wb);
            add_term(f, &mut out, ab, &prod);
            let mut ba = wb.clone();
            ba.extend_from_slice(wa);
            add_term(f, &mut out, ba, &f.neg(&prod));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    fn xy() -> GeneratorSet {
        GeneratorSet::standard(&["x", "y"])
    }

    #[test]
    fn lyndon_words_of_two_letters() {
        let g = xy();
        assert_eq!(lyndon_basis(&g, 2), vec![vec![0, 1]]);
        assert_eq!(lyndon_basis(&g, 3), vec![vec![0, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn weighted_lyndon_words() {
        let g = GeneratorSet::new([("x".into(), 1), ("t".into(), 2)]).unwrap();
        assert_eq!(lyndon_basis(&g, 3), vec![vec![0, 1]]);
        assert_eq!(render_bracketing(&g, &[0, 1]), "[x,t]");
    }

    #[test]
    fn necklace_counts() {
        assert_eq!(free_dimension(&xy(), 1), 2);
        assert_eq!(free_dimension(&xy(), 4), 3);
        assert_eq!(free_dimension(&GeneratorSet::standard(&["a", "b", "c"]), 4), 18);
    }

    #[test]
    fn brackets_normalise_to_lyndon_coordinates() {
        let f = Rationals;
        let mut fl = FreeLie::new(f, xy());
        let x = fl.generator(0);
        let y = fl.generator(1);
        assert!(fl.bracket(&x, &x).is_zero());
        let yx = fl.bracket(&y, &x);
        assert_eq!(yx.terms().len(), 1);
        assert_eq!(yx.coeff(&[0, 1]), Some(&q(-1)));
        let xy_ = fl.bracket(&x, &y);
        let xyx = fl.bracket(&xy_, &x);
        assert_eq!(xyx.terms().len(), 1);
        assert_eq!(xyx.coeff(&[0, 0, 1]), Some(&q(-1)));
    }

    #[test]
    fn tensor_expansions() {
        let f = Rationals;
        let mut fl = FreeLie::new(f, xy());
        let e = fl.expand_word(&[0, 1]).clone();
        assert_eq!(e.len(), 2);
        assert_eq!(e[&vec![0, 1]], q(1));
        assert_eq!(e[&vec![1, 0]], q(-1));
        let e = fl.expand_word(&[0, 0, 1]).clone();
        assert_eq!(e[&vec![0, 0, 1]], q(1));
        assert_eq!(e[&vec![0, 1, 0]], q(-2));
        assert_eq!(e[&vec![1, 0, 0]], q(1));
        assert_eq!(e.len(), 3);
        let x = fl.generator(0);
        assert_eq!(fl.expand(&x).len(), 1);
    }

    #[test]
    fn triangularity_up_to_weight_six() {
        let g = GeneratorSet::new([("a".into(), 1), ("b".into(), 1), ("c".into(), 2)]).unwrap();
        let mut fl = FreeLie::new(Rationals, g.clone());
        for n in 1..=6 {
            for w in lyndon_basis(&g, n) {
                let e = fl.expand_word(&w).clone();
                let (first, c) = e.iter().next().unwrap();
                assert_eq!(first, &w);
                assert_eq!(c, &q(1));
            }
        }
    }

    #[test]
    fn enumeration_matches_necklace_formula() {
        for k in 1..=4usize {
            for degs in (0..k).map(|_| 1..=3u32).fold(vec![vec![]], |acc: Vec<Vec<u32>>, r| {
                acc.into_iter().flat_map(|v| r.clone().map(move |d| {
                    let mut v = v.clone();
                    v.push(d);
                    v
                })).collect()
            }) {
                let g = GeneratorSet::new(degs.iter().enumerate().map(|(i, &d)| (alloc::format!("g{i}"), d))).unwrap();
                for n in 1..=8 {
                    assert_eq!(lyndon_basis(&g, n).len() as u64, free_dimension(&g, n), "{degs:?} n={n}");
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn element(fl: &mut FreeLie<PrimeField>, degree: u32, coeffs: &[u64]) -> LieElement<PrimeField> {
            let f = *fl.field();
            let words = fl.basis(degree).0.to_vec();
            let g = fl.generators().clone();
            LieElement::from_terms(&f, &g, degree, words.into_iter().zip(coeffs.iter().map(|c| c % 101))).unwrap()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]
            #[test]
            fn antisymmetry(da in 1u32..4, db in 1u32..4, ca in proptest::collection::vec(0u64..101, 10), cb in proptest::collection::vec(0u64..101, 10)) {
                let f = PrimeField::new(101).unwrap();
                let mut fl = FreeLie::new(f, GeneratorSet::standard(&["x", "y", "z"]));
                let u = element(&mut fl, da, &ca);
                let v = element(&mut fl, db, &cb);
                let s = fl.bracket(&u, &v).add(&f, &fl.bracket(&v, &u)).unwrap();
                prop_assert!(s.is_zero());
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]
            #[test]
            fn jacobi(da in 1u32..3, db in 1u32..3, dc in 1u32..3, ca in proptest::collection::vec(0u64..101, 6), cb in proptest::collection::vec(0u64..101, 6), cc in proptest::collection::vec(0u64..101, 6)) {
                let f = PrimeField::new(101).unwrap();
                let mut fl = FreeLie::new(f, GeneratorSet::standard(&["x", "y", "z"]));
                let u = element(&mut fl, da, &ca);
                let v = element(&mut fl, db, &cb);
                let w = element(&mut fl, dc, &cc);
                let uv = fl.bracket(&u, &v);
                let vw = fl.bracket(&v, &w);
                let wu = fl.bracket(&w, &u);
                let j = fl.bracket(&uv, &w).add(&f, &fl.bracket(&vw, &u)).unwrap().add(&f, &fl.bracket(&wu, &v)).unwrap();
                prop_assert!(j.is_zero());
            }
        }
    }
}
