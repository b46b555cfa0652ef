//! Quadratic covers, quadratic duals and skew forms of quadratic relations.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{rank_kernel, Echelon, ExactMatrix, Field, PolySeries, SparseVec};
use crate::error::{Error, Result};
use crate::free_lie::{GeneratorSet, LieElement};
use crate::presentation::Presentation;
use crate::quotient::StructureTable;

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Wedge of two sorted monomials: the merged monomial and whether the sign is negative.
pub fn wedge_monomials(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut swaps = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining a's
            swaps += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, swaps % 2 == 1))
}

/// `V = L_1`, the relation space `R` inside `Lambda^2 V` and its annihilator.
#[derive(Clone, Debug)]
pub struct QuadraticData<F: Field> {
    field: F,
    rank: usize,
    relations: Echelon<F>,
    annihilator: Vec<SparseVec<F::Elem>>,
}

/// Index of `{i, j}` (i < j) among the lexicographically ordered pairs of `0..n`.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl<F: Field> QuadraticData<F> {
    /// Reads the quadratic data of a presentation with all generators in degree 1.
    pub fn from_presentation(p: &Presentation<F>) -> Result<Self> {
        if !p.generators().is_standard() {
            return Err(Error::NotQuadratic("generators of degree above 1".into()));
        }
        let vectors = p
            .relations()
            .iter()
            .map(|r| {
                if r.degree() != 2 {
                    return Err(Error::NotQuadratic(alloc::format!("relation of degree {}", r.degree())));
                }
                Ok(Self::relation_vector(p.generators().len(), r))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vectors(p.field().clone(), p.generators().len(), &vectors))
    }

    fn relation_vector(n: usize, r: &LieElement<F>) -> SparseVec<F::Elem> {
        let mut v: SparseVec<F::Elem> = r.terms().iter().map(|(w, c)| (pair_index(n, w[0] as usize, w[1] as usize), c.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// Builds the data from vectors in `Lambda^2 V` (pair coordinates).
    pub fn from_vectors(field: F, rank: usize, relations: &[SparseVec<F::Elem>]) -> Self {
        let pairs = rank * rank.saturating_sub(1) / 2;
        let mut ech = Echelon::new(field.clone(), pairs);
        for v in relations {
            ech.insert(v);
        }
        let m = ExactMatrix::from_rows(field.clone(), pairs, ech.rows().to_vec());
        let (_, annihilator) = rank_kernel(&m);
        QuadraticData {
            field,
            rank,
            relations: ech,
            annihilator,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    pub fn relations(&self) -> &[SparseVec<F::Elem>] {
        self.relations.rows()
    }

    /// Basis of `R^perp` in the dual pair coordinates.
    pub fn annihilator(&self) -> &[SparseVec<F::Elem>] {
        &self.annihilator
    }

    /// `(R^perp)^perp`, which equals `R`.
    pub fn double_annihilator(&self) -> Echelon<F> {
        let pairs = self.rank * self.rank.saturating_sub(1) / 2;
        let m = ExactMatrix::from_rows(self.field.clone(), pairs, self.annihilator.clone());
        let (_, back) = rank_kernel(&m);
        let mut ech = Echelon::new(self.field.clone(), pairs);
        for v in &back {
            ech.insert(v);
        }
        ech
    }

    /// Skew form `beta(e_i, e_j)` of a single relation vector.
    pub fn skew_form(&self, relation: &SparseVec<F::Elem>) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let n = self.rank;
        let mut m = vec![vec![f.zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                if let Some((_, c)) = relation.iter().find(|(k, _)| *k == pair_index(n, i, j)) {
                    m[i][j] = c.clone();
                    m[j][i] = f.neg(c);
                }
            }
        }
        m
    }
}

/// `Lambda(V*) / (R^perp)` with per-degree bases and multiplication.
#[derive(Clone, Debug)]
pub struct DualAlgebraTable<F: Field> {
    field: F,
    rank: usize,
    monomials: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
    ideals: Vec<Echelon<F>>,
    basis: Vec<Vec<usize>>,
}

impl<F: Field> DualAlgebraTable<F> {
    /// Computes degrees `0..=min(max_degree, rank)`.
    pub fn new(data: &QuadraticData<F>, max_degree: usize) -> Self {
        let f = data.field.clone();
        let n = data.rank;
        let top = max_degree.min(n);
        let mut monomials = Vec::new();
        let mut index = Vec::new();
        let mut ideals = Vec::new();
        let mut basis = Vec::new();
        let pairs = subsets_of_size(n, 2);
        for i in 0..=top {
            let mons = subsets_of_size(n, i);
            let idx: BTreeMap<Vec<usize>, usize> = mons.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
            let mut ech = Echelon::new(f.clone(), mons.len());
            if i >= 2 {
                for m in subsets_of_size(n, i - 2) {
                    for phi in &data.annihilator {
                        let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
                        for (p, c) in phi {
                            if let Some((w, neg)) = wedge_monomials(&m, &pairs[*p]) {
                                let v = if neg { f.neg(c) } else { c.clone() };
                                let k = idx[&w];
                                let e = acc.remove(&k).map_or(v.clone(), |x| f.add(&x, &v));
                                if !f.is_zero(&e) {
                                    acc.insert(k, e);
                                }
                            }
                        }
                        let v: SparseVec<F::Elem> = acc.into_iter().collect();
                        if !v.is_empty() {
                            ech.insert(&v);
                        }
                    }
                }
            }
            basis.push(ech.free_columns());
            ideals.push(ech);
            monomials.push(mons);
            index.push(idx);
        }
        DualAlgebraTable {
            field: f,
            rank: n,
            monomials,
            index,
            ideals,
            basis,
        }
    }

    /// `dims()[i] = dim (L^!)_i` for the computed degrees.
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.basis.get(i).map_or(0, Vec::len)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Basis monomials of degree `i` (as sets of dual generator indices).
    pub fn basis_monomials(&self, i: usize) -> Vec<Vec<usize>> {
        self.basis[i].iter().map(|&k| self.monomials[i][k].clone()).collect()
    }

    /// Product of the `a`-th basis element of degree `i` and the `b`-th of
    /// degree `k`, in the basis of degree `i + k`.
    pub fn multiply(&self, i: usize, a: usize, k: usize, b: usize) -> SparseVec<F::Elem> {
        let f = &self.field;
        let d = i + k;
        if d >= self.basis.len() {
            return Vec::new();
        }
        let ma = &self.monomials[i][self.basis[i][a]];
        let mb = &self.monomials[k][self.basis[k][b]];
        let Some((w, neg)) = wedge_monomials(ma, mb) else {
            return Vec::new();
        };
        let c = if neg { f.neg(&f.one()) } else { f.one() };
        let red = self.ideals[d].reduce(&vec![(self.index[d][&w], c)]);
        red.into_iter()
            .map(|(col, x)| (self.basis[d].binary_search(&col).expect("free column"), x))
            .collect()
    }

    /// Hilbert series of the dual modulo `t^(n+1)`.
    pub fn hilbert_series(&self, n: usize) -> PolySeries {
        let c = (0..=n).map(|i| BigRational::from_integer(self.dim(i).into())).collect();
        PolySeries::series(c, n)
    }
}

/// Outcome of comparing `H_U(t) H_{L^!}(-t)` with 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobergOutcome {
    Ok { up_to: usize },
    FirstDefect { degree: usize, value: BigRational },
}

/// Checks the product `H_U(t) * H_dual(-t) = 1` coefficientwise through `t^n`.
pub fn froberg_check<F: Field>(table: &StructureTable<F>, dual: &DualAlgebraTable<F>, n: usize) -> FrobergOutcome {
    let n = n.min(table.max_degree() as usize);
    let hu = table.enveloping_series().truncate(n);
    let hd = dual.hilbert_series(n).negate_variable();
    let prod = hu.mul(&hd);
    for k in 1..=n {
        let c = prod.coeff(k);
        if c != BigRational::from_integer(0.into()) {
            return FrobergOutcome::FirstDefect { degree: k, value: c };
        }
    }
    FrobergOutcome::Ok { up_to: n }
}

/// The quadratic presentation generated by `L_1` with relations
/// `ker(Lambda^2 L_1 -> L_2)`.
pub fn quadratic_cover<F: Field>(table: &StructureTable<F>) -> Result<Presentation<F>> {
    let f = table.field().clone();
    let n = table.dim(1);
    let names: Vec<_> = table.range(1).map(|g| table.label(g).to_string()).collect();
    let gens = GeneratorSet::new(names.into_iter().map(|s| (s, 1)))?;
    let pairs = subsets_of_size(n, 2);
    let off2 = table.range(2).start;
    let mut entries = Vec::new();
    for (k, p) in pairs.iter().enumerate() {
        for (i, c) in table.bracket(p[0], p[1]) {
            entries.push((i - off2, k, c));
        }
    }
    let m = ExactMatrix::from_entries(f.clone(), table.dim(2), pairs.len(), entries)?;
    let (_, kernel) = rank_kernel(&m);
    let rels = kernel
        .iter()
        .map(|v| {
            let terms = v.iter().map(|(k, c)| (vec![pairs[*k][0] as u16, pairs[*k][1] as u16], c.clone()));
            LieElement::from_terms(&f, &gens, 2, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    Presentation::new("cover", f, gens, rels)
}

/// A symplectic splitting of a skew form: `beta(u_k, v_k) = 1`, all other
/// pairings between returned vectors zero, and the radical orthogonal to everything.
#[derive(Clone, Debug)]
pub struct Darboux<E> {
    pub radical: Vec<Vec<E>>,
    pub pairs: Vec<(Vec<E>, Vec<E>)>,
}

fn pairing<F: Field>(f: &F, form: &[Vec<F::Elem>], x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (i, xi) in x.iter().enumerate() {
        if f.is_zero(xi) {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !f.is_zero(yj) && !f.is_zero(&form[i][j]) {
                acc = f.add(&acc, &f.mul(&f.mul(xi, yj), &form[i][j]));
            }
        }
    }
    acc
}

/// Symplectic Gram-Schmidt on a skew-symmetric matrix.
pub fn darboux_decompose<F: Field>(f: &F, form: &[Vec<F::Elem>]) -> Result<Darboux<F::Elem>> {
    let n = form.len();
    for i in 0..n {
        if form[i].len() != n {
            return Err(Error::Domain("form is not square".into()));
        }
        for j in 0..n {
            if f.add(&form[i][j], &form[j][i]) != f.zero() || (i == j && !f.is_zero(&form[i][i])) {
                return Err(Error::Domain("form is not skew-symmetric".into()));
            }
        }
    }
    let mut work: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect();
    let mut pairs = Vec::new();
    let mut radical = Vec::new();
    while let Some(u) = work.first().cloned() {
        work.remove(0);
        let partner = work.iter().position(|w| !f.is_zero(&pairing(f, form, &u, w)));
        let Some(p) = partner else {
            radical.push(u);
            continue;
        };
        let w = work.remove(p);
        let c = pairing(f, form, &u, &w);
        let inv = f.inv(&c).expect("nonzero pairing");
        let v: Vec<F::Elem> = w.iter().map(|x| f.mul(x, &inv)).collect();
        for x in work.iter_mut() {
            let xv = pairing(f, form, x, &v);
            let xu = pairing(f, form, x, &u);
            for k in 0..n {
                let t = f.add(&f.sub(&x[k], &f.mul(&xv, &u[k])), &f.mul(&xu, &v[k]));
                x[k] = t;
            }
        }
        pairs.push((u, v));
    }
    Ok(Darboux { radical, pairs })
}

/// Genus `d` and free rank `f` of a one-relator quadratic presentation,
/// meaning `L = G_{2d} * free(f)`.
pub fn classify_one_relator<F: Field>(p: &Presentation<F>) -> Result<(usize, usize)> {
    let q = QuadraticData::from_presentation(p)?;
    if q.relation_rank() != 1 {
        return Err(Error::Domain(alloc::format!("expected one independent relation, found {}", q.relation_rank())));
    }
    let form = q.skew_form(&q.relations()[0]);
    let d = darboux_decompose(&q.field, &form)?;
    Ok((d.pairs.len(), d.radical.len()))
}

/// Dimension of the degree-3 component of the dual of a two-relator
/// quadratic presentation; zero is the expected answer.
pub fn two_relator_dual_cubic<F: Field>(p: &Presentation<F>) -> Result<usize> {
    let q = QuadraticData::from_presentation(p)?;
    if q.relation_rank() != 2 || p.relations().len() != 2 {
        return Err(Error::Domain(alloc::format!(
            "expected two independent relations, found {} of rank {}",
            p.relations().len(),
            q.relation_rank()
        )));
    }
    Ok(DualAlgebraTable::new(&q, 3).dim(3))
}

/// Two quadratic relations with seeded random coefficients on all brackets
/// `[x_i, x_j]` of `rank` degree-1 generators, redrawn until independent.
pub fn random_two_relator<F: Field>(field: F, rank: usize, seed: u64) -> Result<Presentation<F>> {
    if rank < 2 {
        return Err(Error::Usage("two relations need at least two generators".into()));
    }
    let names: Vec<_> = (1..=rank).map(|i| alloc::format!("x{i}")).collect();
    let gens = GeneratorSet::new(names.into_iter().map(|n| (n, 1)))?;
    let pairs = subsets_of_size(rank, 2);
    if pairs.len() < 2 {
        return Err(Error::Usage("two independent relations need at least three generators".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rels = (0..2)
            .map(|_| {
                let terms: Vec<_> = pairs
                    .iter()
                    .map(|p| (vec![p[0] as u16, p[1] as u16], field.sample(rng.next_u64())))
                    .filter(|(_, c)| !field.is_zero(c))
                    .collect();
                LieElement::from_terms(&field, &gens, 2, terms)
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Presentation::new(alloc::format!("rand2rel({seed})"), field.clone(), gens.clone(), rels)?;
        if p.relations().len() == 2 && QuadraticData::from_presentation(&p)?.relation_rank() == 2 {
            return Ok(p);
        }
    }
}
