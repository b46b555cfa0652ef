//! Degree-by-degree expansion of a presentation into a truncated algebra.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{axpy, rank_kernel, Echelon, ExactMatrix, Field, PolySeries, SparseVec};
use crate::error::{Error, Result};
use crate::free_lie::{free_dimension, render_bracketing, FreeLie, LieElement, Word};
use crate::presentation::Presentation;

/// Structure constants of a graded Lie algebra truncated at `max_degree`.
///
/// Basis elements carry global indices ordered by degree; brackets are
/// stored for pairs `a < b` whose degrees add up to at most `max_degree`.
#[derive(Clone, Debug)]
pub struct StructureTable<F: Field> {
    field: F,
    max_degree: u32,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    labels: Vec<String>,
    brackets: BTreeMap<(usize, usize), SparseVec<F::Elem>>,
    generator_degree: u32,
}

impl<F: Field> StructureTable<F> {
    /// `dims[d]` is the dimension in degree `d` (index 0 is ignored).
    /// `generator_degree` is the largest degree of a generator; it bounds
    /// the window in which centrality can be decided.
    pub fn new(
        field: F,
        max_degree: u32,
        dims: &[usize],
        labels: Vec<String>,
        brackets: BTreeMap<(usize, usize), SparseVec<F::Elem>>,
        generator_degree: u32,
    ) -> Result<Self> {
        let mut d = vec![0usize; max_degree as usize + 1];
        for (k, &x) in dims.iter().enumerate().skip(1).take(max_degree as usize) {
            d[k] = x;
        }
        let mut offsets = vec![0usize; max_degree as usize + 2];
        for k in 1..=max_degree as usize {
            offsets[k + 1] = offsets[k] + d[k];
        }
        let total = offsets[max_degree as usize + 1];
        if labels.len() != total {
            return Err(Error::Usage("one label per basis element is required".into()));
        }
        let t = StructureTable {
            field,
            max_degree,
            dims: d,
            offsets,
            labels,
            brackets: BTreeMap::new(),
            generator_degree: generator_degree.max(1),
        };
        let mut table = t;
        for ((a, b), v) in brackets {
            if a >= b || b >= total {
                return Err(Error::Usage("bracket keys must be increasing pairs of basis indices".into()));
            }
            let deg = table.degree_of(a) + table.degree_of(b);
            if deg > max_degree {
                continue;
            }
            let range = table.range(deg);
            if v.iter().any(|(i, _)| !range.contains(i)) {
                return Err(Error::Usage("bracket leaves its degree".into()));
            }
            if !v.is_empty() {
                table.brackets.insert((a, b), v);
            }
        }
        Ok(table)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn generator_degree(&self) -> u32 {
        self.generator_degree
    }

    /// Dimensions indexed by degree; entry 0 is 0.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, d: u32) -> usize {
        self.dims.get(d as usize).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.offsets[self.max_degree as usize + 1]
    }

    /// Global indices of degree `d`.
    pub fn range(&self, d: u32) -> core::ops::Range<usize> {
        if d == 0 || d > self.max_degree {
            return 0..0;
        }
        self.offsets[d as usize]..self.offsets[d as usize + 1]
    }

    pub fn degree_of(&self, global: usize) -> u32 {
        (1..=self.max_degree).find(|&d| self.range(d).contains(&global)).expect("index in range")
    }

    pub fn label(&self, global: usize) -> &str {
        &self.labels[global]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn brackets(&self) -> &BTreeMap<(usize, usize), SparseVec<F::Elem>> {
        &self.brackets
    }

    /// `[e_a, e_b]` in global coordinates (empty beyond the truncation).
    pub fn bracket(&self, a: usize, b: usize) -> SparseVec<F::Elem> {
        match a.cmp(&b) {
            core::cmp::Ordering::Equal => Vec::new(),
            core::cmp::Ordering::Less => self.brackets.get(&(a, b)).cloned().unwrap_or_default(),
            core::cmp::Ordering::Greater => {
                let f = &self.field;
                self.brackets
                    .get(&(b, a))
                    .map(|v| v.iter().map(|(i, x)| (*i, f.neg(x))).collect())
                    .unwrap_or_default()
            }
        }
    }

    /// Bilinear extension of [`StructureTable::bracket`].
    pub fn bracket_vectors(&self, u: &SparseVec<F::Elem>, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (a, x) in u {
            for (b, y) in v {
                let w = self.bracket(*a, *b);
                if !w.is_empty() {
                    acc = axpy(f, &acc, &f.mul(x, y), &w);
                }
            }
        }
        acc
    }

    /// Converts global coordinates in degree `d` to local ones.
    pub fn to_local(&self, d: u32, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let off = self.range(d).start;
        v.iter().map(|(i, x)| (i - off, x.clone())).collect()
    }

    pub fn to_global(&self, d: u32, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let off = self.range(d).start;
        v.iter().map(|(i, x)| (i + off, x.clone())).collect()
    }

    /// Smaller truncation of the same algebra.
    pub fn truncate(&self, n: u32) -> Self {
        let n = n.min(self.max_degree);
        let total = self.offsets[n as usize + 1];
        let brackets = self
            .brackets
            .iter()
            .filter(|((a, b), _)| *b < total && self.degree_of(*a) + self.degree_of(*b) <= n)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        StructureTable::new(
            self.field.clone(),
            n,
            &self.dims[..=n as usize],
            self.labels[..total].to_vec(),
            brackets,
            self.generator_degree,
        )
        .expect("restriction of a valid table")
    }

    /// First violation of the Jacobi identity among basis triples, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let f = &self.field;
        let n = self.total_dim();
        for a in 0..n {
            let da = self.degree_of(a);
            for b in a + 1..n {
                let db = self.degree_of(b);
                if da + db >= self.max_degree {
                    break;
                }
                for c in b + 1..n {
                    if da + db + self.degree_of(c) > self.max_degree {
                        break;
                    }
                    let t1 = self.bracket_vectors(&vec![(a, f.one())], &self.bracket(b, c));
                    let t2 = self.bracket_vectors(&vec![(b, f.one())], &self.bracket(c, a));
                    let t3 = self.bracket_vectors(&vec![(c, f.one())], &self.bracket(a, b));
                    let one = f.one();
                    let s = axpy(f, &axpy(f, &t1, &one, &t2), &one, &t3);
                    if !s.is_empty() {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Hilbert series `sum dim L_d t^d` modulo `t^(N+1)`.
    pub fn hilbert_series(&self) -> PolySeries {
        let c = self.dims.iter().map(|&d| num_rational::BigRational::from_integer(d.into())).collect();
        PolySeries::series(c, self.max_degree as usize)
    }

    /// Hilbert series of the universal enveloping algebra (PBW product).
    pub fn enveloping_series(&self) -> PolySeries {
        PolySeries::pbw_product(&self.dims[1..], self.max_degree as usize)
    }

    /// Kernel of `x -> ([x, y] mod quotient)_y` on degree `d`, where `y`
    /// runs over bases of degrees `1..=generator_degree` and `quotient[e]`
    /// (if present) is a subspace of degree `e` in local coordinates.
    fn centralizer_kernel(&self, d: u32, quotient: &BTreeMap<u32, Echelon<F>>) -> Vec<SparseVec<F::Elem>> {
        let f = &self.field;
        let cols = self.dim(d);
        let mut entries = Vec::new();
        let mut row = 0usize;
        for e in 1..=self.generator_degree {
            let target = d + e;
            for y in self.range(e) {
                let mut images = Vec::new();
                for (k, x) in self.range(d).enumerate() {
                    let v = self.to_local(target, &self.bracket(x, y));
                    let v = match quotient.get(&target) {
                        Some(ech) => ech.reduce(&v),
                        None => v,
                    };
                    images.push((k, v));
                }
                let width = self.dim(target);
                for (k, v) in images {
                    for (i, c) in v {
                        entries.push((row + i, k, c));
                    }
                }
                row += width;
            }
        }
        let m = ExactMatrix::from_entries(f.clone(), row, cols, entries).expect("entries in range");
        rank_kernel(&m).1
    }

    /// Degrees `d` for which `[x, L_e]` is known for every generator degree `e`.
    pub fn center_window(&self) -> u32 {
        self.max_degree.saturating_sub(self.generator_degree)
    }

    /// Center in each degree `1..=center_window()`, as local bases.
    pub fn center(&self) -> Vec<(u32, Vec<SparseVec<F::Elem>>)> {
        (1..=self.center_window()).map(|d| (d, self.centralizer_kernel(d, &BTreeMap::new()))).collect()
    }

    /// Upper central series `Z_1 <= Z_2 <= ...`; level `n` is reported for
    /// degrees `d <= N - n * generator_degree`. Stops when a level repeats
    /// its predecessor on the common window or the window is empty.
    pub fn upper_central_series(&self) -> Vec<Vec<(u32, usize)>> {
        let f = &self.field;
        let mut levels: Vec<Vec<(u32, usize)>> = Vec::new();
        let mut prev: BTreeMap<u32, Echelon<F>> = BTreeMap::new();
        let mut n = 1u32;
        loop {
            let window = self.max_degree as i64 - (n * self.generator_degree) as i64;
            if window < 1 {
                break;
            }
            let mut next = BTreeMap::new();
            let mut dims = Vec::new();
            for d in 1..=window as u32 {
                let ker = self.centralizer_kernel(d, &prev);
                let mut ech = Echelon::new(f.clone(), self.dim(d));
                for v in &ker {
                    ech.insert(v);
                }
                dims.push((d, ech.rank()));
                next.insert(d, ech);
            }
            let stable = levels.last().is_some_and(|last| dims.iter().all(|x| last.contains(x)));
            levels.push(dims);
            prev = next;
            n += 1;
            if stable {
                break;
            }
        }
        levels
    }

    /// Derived series `L^(0) = L`, `L^(n+1) = [L^(n), L^(n)]` as dims per
    /// degree, up to and including the first level that vanishes.
    pub fn derived_series(&self) -> Vec<Vec<usize>> {
        let f = &self.field;
        let top = self.max_degree as usize;
        let mut level: Vec<Vec<SparseVec<F::Elem>>> = (0..=top)
            .map(|d| self.range(d as u32).map(|g| vec![(g, f.one())]).collect())
            .collect();
        let mut out = vec![level.iter().map(Vec::len).collect::<Vec<_>>()];
        while out.last().is_some_and(|l| l.iter().any(|&x| x > 0)) {
            let mut spans: Vec<Echelon<F>> = (0..=top).map(|_| Echelon::new(f.clone(), self.total_dim())).collect();
            for i in 1..=top {
                for j in i..=top - i {
                    for (a, u) in level[i].iter().enumerate() {
                        let start = if i == j { a + 1 } else { 0 };
                        for v in &level[j][start..] {
                            let w = self.bracket_vectors(u, v);
                            if !w.is_empty() {
                                spans[i + j].insert(&w);
                            }
                        }
                    }
                }
            }
            level = spans.into_iter().map(|e| e.rows().to_vec()).collect();
            out.push(level.iter().map(Vec::len).collect());
        }
        out
    }
}

/// The quotient `F(V)/(R)` expanded up to a fixed degree.
#[derive(Clone, Debug)]
pub struct AlgebraTable<F: Field> {
    presentation: Presentation<F>,
    free: FreeLie<F>,
    max_degree: u32,
    ideals: Vec<Echelon<F>>,
    basis: Vec<Vec<usize>>,
    local: Vec<BTreeMap<usize, usize>>,
    generator_brackets: BTreeMap<(usize, Word), SparseVec<F::Elem>>,
}

/// Largest free-algebra degree piece [`expand_tables`] will build.
pub const EXPANSION_LIMIT: u64 = 250_000;

/// Expands `p` up to degree `max_degree`.
pub fn expand_tables<F: Field>(p: &Presentation<F>, max_degree: u32) -> Result<AlgebraTable<F>> {
    AlgebraTable::build(p, max_degree)
}

impl<F: Field> AlgebraTable<F> {
    pub fn build(p: &Presentation<F>, max_degree: u32) -> Result<Self> {
        if max_degree < 2 {
            return Err(Error::Usage("maximum degree must be at least 2".into()));
        }
        let mut t = AlgebraTable {
            presentation: p.clone(),
            free: p.free_lie(),
            max_degree,
            ideals: Vec::new(),
            basis: Vec::new(),
            local: Vec::new(),
            generator_brackets: BTreeMap::new(),
        };
        t.ideals.push(Echelon::new(p.field().clone(), 0));
        t.basis.push(Vec::new());
        t.local.push(BTreeMap::new());
        for d in 1..=max_degree {
            if free_dimension(p.generators(), d) > EXPANSION_LIMIT {
                return Err(Error::TooLarge(alloc::format!(
                    "free algebra has more than {EXPANSION_LIMIT} basis elements in degree {d}"
                )));
            }
            let dim = t.free.dimension(d);
            let mut ech = Echelon::new(p.field().clone(), dim);
            for r in p.relations().iter().filter(|r| r.degree() == d) {
                let v = {
                    let (_, index) = t.free.basis(d);
                    r.to_indexed(index)
                };
                ech.insert(&v);
            }
            for g in 0..p.generators().len() {
                let k = p.generators().degree(g);
                if k >= d {
                    continue;
                }
                let rows = t.ideals[(d - k) as usize].rows().to_vec();
                for row in rows {
                    let v = t.bracket_generator(g, d - k, &row);
                    ech.insert(&v);
                }
            }
            let free_cols = ech.free_columns();
            let local = free_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            t.ideals.push(ech);
            t.basis.push(free_cols);
            t.local.push(local);
        }
        Ok(t)
    }

    /// `[g, v]` for `v` in Lyndon coordinates of degree `e`.
    fn bracket_generator(&mut self, g: usize, e: u32, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = self.free.field().clone();
        let d = e + self.presentation.generators().degree(g);
        let mut acc = Vec::new();
        for (i, c) in v {
            let w = self.free.basis(e).0[*i].clone();
            let key = (g, w);
            if !self.generator_brackets.contains_key(&key) {
                let b = self.free.bracket_words(&[g as u16], &key.1);
                let (_, index) = self.free.basis(d);
                let bv = b.to_indexed(index);
                self.generator_brackets.insert(key.clone(), bv);
            }
            acc = axpy(&f, &acc, c, &self.generator_brackets[&key]);
        }
        acc
    }

    pub fn presentation(&self) -> &Presentation<F> {
        &self.presentation
    }

    pub fn field(&self) -> &F {
        self.presentation.field()
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// `dims()[d] = dim L_d`; entry 0 is 0.
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, d: u32) -> usize {
        self.basis.get(d as usize).map_or(0, Vec::len)
    }

    /// Dimension of the ideal component `I_d`.
    pub fn ideal_dim(&self, d: u32) -> usize {
        self.ideals.get(d as usize).map_or(0, Echelon::rank)
    }

    /// Lyndon words whose classes form the basis of `L_d`.
    pub fn basis_words(&mut self, d: u32) -> Vec<Word> {
        let cols = self.basis[d as usize].clone();
        let words = self.free.basis(d).0;
        cols.iter().map(|&c| words[c].clone()).collect()
    }

    /// Coordinates of the class of `u` in the basis of `L_deg(u)`.
    pub fn project(&mut self, u: &LieElement<F>) -> Result<SparseVec<F::Elem>> {
        let d = u.degree();
        if d == 0 || d > self.max_degree {
            return Err(Error::Usage("element lies outside the expanded window".into()));
        }
        let (_, index) = self.free.basis(d);
        let v = u.to_indexed(index);
        let red = self.ideals[d as usize].reduce(&v);
        Ok(red.into_iter().map(|(c, x)| (self.local[d as usize][&c], x)).collect())
    }

    /// A free-algebra representative of a local coordinate vector.
    pub fn lift(&mut self, d: u32, v: &SparseVec<F::Elem>) -> LieElement<F> {
        let cols = self.basis[d as usize].clone();
        let global: SparseVec<F::Elem> = v.iter().map(|(i, x)| (cols[*i], x.clone())).collect();
        let words = self.free.basis(d).0.to_vec();
        LieElement::from_indexed(d, &words, &global)
    }

    /// Whether the ideal closure is already stable: bracketing every ideal
    /// component with every generator lands back inside the ideal.
    pub fn closure_is_stable(&mut self) -> bool {
        let n = self.presentation.generators().len();
        for d in 1..=self.max_degree {
            for g in 0..n {
                let k = self.presentation.generators().degree(g);
                if d + k > self.max_degree {
                    continue;
                }
                let rows = self.ideals[d as usize].rows().to_vec();
                for row in rows {
                    let v = self.bracket_generator(g, d, &row);
                    if !self.ideals[(d + k) as usize].contains(&v) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Basis labels rendered as standard bracketings.
    pub fn labels(&mut self) -> Vec<String> {
        let mut out = Vec::new();
        for d in 1..=self.max_degree {
            for w in self.basis_words(d) {
                out.push(render_bracketing(self.presentation.generators(), &w));
            }
        }
        out
    }

    /// Structure constants of the expanded algebra.
    pub fn structure(&mut self) -> StructureTable<F> {
        let n = self.max_degree;
        let words: Vec<Vec<Word>> = (0..=n).map(|d| if d == 0 { Vec::new() } else { self.basis_words(d) }).collect();
        let mut offsets = vec![0usize; n as usize + 2];
        for d in 1..=n as usize {
            offsets[d + 1] = offsets[d] + words[d].len();
        }
        let mut brackets = BTreeMap::new();
        for da in 1..=n {
            for db in da..=n - da {
                for (ia, wa) in words[da as usize].iter().enumerate() {
                    for (ib, wb) in words[db as usize].iter().enumerate() {
                        let (ga, gb) = (offsets[da as usize] + ia, offsets[db as usize] + ib);
                        if ga >= gb {
                            continue;
                        }
                        let u = self.free.bracket_words(wa, wb);
                        let local = self.project(&u).expect("inside window");
                        if !local.is_empty() {
                            let off = offsets[(da + db) as usize];
                            brackets.insert((ga, gb), local.into_iter().map(|(i, x)| (i + off, x)).collect());
                        }
                    }
                }
            }
        }
        let labels = self.labels();
        let gen_deg = self.presentation.generators().max_degree();
        StructureTable::new(self.field().clone(), n, &self.dims(), labels, brackets, gen_deg).expect("consistent table")
    }

    /// Local coordinates of each generator's image (empty if the generator
    /// lies beyond the window).
    pub fn generator_images(&mut self) -> Vec<(u32, SparseVec<F::Elem>)> {
        let gens = self.presentation.generators().clone();
        (0..gens.len())
            .map(|i| {
                let d = gens.degree(i);
                if d > self.max_degree {
                    return (d, Vec::new());
                }
                let e = LieElement::generator(self.field(), &gens, i);
                (d, self.project(&e).expect("inside window"))
            })
            .collect()
    }
}

/// The subalgebra of a structure table generated by homogeneous elements.
#[derive(Clone, Debug)]
pub struct SubalgebraView<F: Field> {
    generators: Vec<(u32, SparseVec<F::Elem>)>,
    /// Per degree, a reduced echelon basis in the parent's local coordinates.
    bases: Vec<Echelon<F>>,
    table: StructureTable<F>,
}

impl<F: Field> SubalgebraView<F> {
    /// Subalgebra generated by a degree-1 subspace (local coordinates of `L_1`).
    pub fn degree_one(parent: &StructureTable<F>, span: &[SparseVec<F::Elem>]) -> Result<Self> {
        let gens: Vec<(u32, SparseVec<F::Elem>)> = span.iter().map(|v| (1, v.clone())).collect();
        Self::generated(parent, &gens)
    }

    /// Subalgebra generated by homogeneous elements given as `(degree, local
    /// coordinates)`. Spanned degreewise by `[g, S_(d - deg g)]`.
    pub fn generated(parent: &StructureTable<F>, generators: &[(u32, SparseVec<F::Elem>)]) -> Result<Self> {
        let f = parent.field().clone();
        let n = parent.max_degree();
        for (d, v) in generators {
            if *d == 0 || *d > n {
                return Err(Error::Usage("generator degree outside the table".into()));
            }
            if v.iter().any(|(i, _)| *i >= parent.dim(*d)) {
                return Err(Error::Usage("generator coordinates outside its degree".into()));
            }
        }
        let mut bases: Vec<Echelon<F>> = Vec::with_capacity(n as usize + 1);
        bases.push(Echelon::new(f.clone(), 0));
        for d in 1..=n {
            let mut ech = Echelon::new(f.clone(), parent.dim(d));
            for (gd, g) in generators {
                if *gd == d {
                    ech.insert(g);
                }
                if *gd < d {
                    let gg = parent.to_global(*gd, g);
                    for row in bases[(d - gd) as usize].rows() {
                        let s = parent.to_global(d - gd, row);
                        let w = parent.bracket_vectors(&gg, &s);
                        if !w.is_empty() {
                            ech.insert(&parent.to_local(d, &w));
                        }
                    }
                }
            }
            bases.push(ech.into_reduced());
        }
        for b in bases.iter_mut() {
            let mut rows = b.rows().to_vec();
            rows.sort_by_key(|r| r[0].0);
            let mut e = Echelon::new(f.clone(), b.dim());
            for r in &rows {
                e.insert(r);
            }
            *b = e;
        }
        let dims: Vec<usize> = bases.iter().map(Echelon::rank).collect();
        let mut offsets = vec![0usize; n as usize + 2];
        for d in 1..=n as usize {
            offsets[d + 1] = offsets[d] + dims[d];
        }
        let mut labels = Vec::new();
        for d in 1..=n as usize {
            for k in 0..dims[d] {
                labels.push(alloc::format!("s{d}_{k}"));
            }
        }
        let mut brackets = BTreeMap::new();
        for da in 1..=n {
            for db in da..=n - da {
                for (ia, ra) in bases[da as usize].rows().iter().enumerate() {
                    for (ib, rb) in bases[db as usize].rows().iter().enumerate() {
                        let (ga, gb) = (offsets[da as usize] + ia, offsets[db as usize] + ib);
                        if ga >= gb {
                            continue;
                        }
                        let w = parent.bracket_vectors(&parent.to_global(da, ra), &parent.to_global(db, rb));
                        if w.is_empty() {
                            continue;
                        }
                        let local = parent.to_local(da + db, &w);
                        let coords = bases[(da + db) as usize]
                            .coordinates(&local)
                            .ok_or_else(|| Error::Domain("subalgebra is not closed under brackets".into()))?;
                        let off = offsets[(da + db) as usize];
                        brackets.insert((ga, gb), coords.into_iter().map(|(i, x)| (i + off, x)).collect());
                    }
                }
            }
        }
        let gen_deg = generators.iter().map(|g| g.0).max().unwrap_or(1);
        let table = StructureTable::new(f, n, &dims, labels, brackets, gen_deg)?;
        Ok(SubalgebraView {
            generators: generators.to_vec(),
            bases,
            table,
        })
    }

    pub fn generators(&self) -> &[(u32, SparseVec<F::Elem>)] {
        &self.generators
    }

    pub fn dims(&self) -> &[usize] {
        self.table.dims()
    }

    /// Basis of `S_d` in the parent's local coordinates.
    pub fn basis(&self, d: u32) -> &[SparseVec<F::Elem>] {
        self.bases[d as usize].rows()
    }

    /// Induced structure constants.
    pub fn table(&self) -> &StructureTable<F> {
        &self.table
    }
}
