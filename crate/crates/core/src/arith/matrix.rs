//! Exact sparse linear algebra: vectors, echelon bases and rank/kernel.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::field::Field;
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn collect_vec<F: Field>(f: &F, entries: impl IntoIterator<Item = (usize, F::Elem)>) -> SparseVec<F::Elem> {
    let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
    for (i, x) in entries {
        add_into(f, &mut acc, i, &x);
    }
    acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect()
}

fn add_into<F: Field>(f: &F, acc: &mut BTreeMap<usize, F::Elem>, i: usize, x: &F::Elem) {
    match acc.get_mut(&i) {
        Some(y) => *y = f.add(y, x),
        None => {
            acc.insert(i, x.clone());
        }
    }
}

/// `y + a * x`.
pub fn axpy<F: Field>(f: &F, y: &SparseVec<F::Elem>, a: &F::Elem, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j == x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i == y.len() || x[j].0 < y[i].0 {
            let v = f.mul(a, &x[j].1);
            if !f.is_zero(&v) {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(&y[i].1, &f.mul(a, &x[j].1));
            if !f.is_zero(&v) {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(f: &F, a: &F::Elem, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    if f.is_zero(a) {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, f.mul(a, v))).collect()
}

/// A subspace kept in semi-echelon form: every row has a distinct leading
/// column (its pivot) with coefficient 1.
///
/// The pivot set of a subspace does not depend on insertion order, so normal
/// forms computed by [`Echelon::reduce`] are canonical.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivot_row: vec![None; dim],
        }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Columns that are not pivots, in increasing order: a basis of the
    /// quotient by this subspace.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    fn eliminate(&self, v: &SparseVec<F::Elem>, record: &mut Option<&mut Vec<(usize, F::Elem)>>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut work: BTreeMap<usize, F::Elem> = v.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((c, x)) = work.pop_first() {
            if f.is_zero(&x) {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    if let Some(rec) = record.as_deref_mut() {
                        rec.push((r, x.clone()));
                    }
                    let neg = f.neg(&x);
                    for (k, y) in self.rows[r].iter().skip(1) {
                        let d = f.mul(&neg, y);
                        match work.get_mut(k) {
                            Some(z) => *z = f.add(z, &d),
                            None => {
                                work.insert(*k, d);
                            }
                        }
                    }
                }
                None => out.push((c, x)),
            }
        }
        out
    }

    /// Canonical normal form of `v` modulo the subspace, supported on free columns.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.eliminate(v, &mut None)
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of `v` with respect to the stored rows, or `None` if `v`
    /// is outside the span.
    pub fn coordinates(&self, v: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let mut rec = Vec::new();
        let rest = self.eliminate(v, &mut Some(&mut rec));
        if !rest.is_empty() {
            return None;
        }
        Some(collect_vec(&self.field, rec))
    }

    /// Adds `v` to the span. Returns the new pivot column if the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> Option<usize> {
        let w = self.reduce(v);
        let (pivot, lead) = w.first()?.clone();
        let inv = self.field.inv(&lead).expect("nonzero leading coefficient");
        let w = scale(&self.field, &inv, &w);
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(w);
        Some(pivot)
    }

    /// Rewrites every row into fully reduced form (reduced row echelon).
    pub fn into_reduced(mut self) -> Self {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| core::cmp::Reverse(self.rows[r][0].0));
        for r in order {
            let row = core::mem::take(&mut self.rows[r]);
            let (p, one) = row[0].clone();
            let tail: SparseVec<F::Elem> = row[1..].to_vec();
            self.pivot_row[p] = None;
            let mut red = self.reduce(&tail);
            self.pivot_row[p] = Some(r);
            red.insert(0, (p, one));
            self.rows[r] = red;
        }
        self
    }
}

/// An exact matrix stored by sparse rows.
#[derive(Clone, Debug)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Builds a matrix from `(row, col, value)` triples; every value must be a
    /// canonical element of `field`.
    pub fn from_entries(field: F, rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, F::Elem)>) -> Result<Self> {
        let mut per_row: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); rows];
        for (r, c, x) in entries {
            if r >= rows || c >= cols {
                return Err(Error::Usage(alloc::format!("entry ({r}, {c}) outside a {rows}x{cols} matrix")));
            }
            if !field.is_canonical(&x) {
                return Err(Error::Usage(alloc::format!("entry ({r}, {c}) is not an element of {}", field.spec())));
            }
            per_row[r].push((c, x));
        }
        let data = per_row.into_iter().map(|e| collect_vec(&field, e)).collect();
        Ok(ExactMatrix { field, rows, cols, data })
    }

    pub fn from_rows(field: F, cols: usize, data: Vec<SparseVec<F::Elem>>) -> Self {
        ExactMatrix {
            field,
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        let data = (0..n).map(|i| vec![(i, one.clone())]).collect();
        ExactMatrix { field, rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn row(&self, r: usize) -> &SparseVec<F::Elem> {
        &self.data[r]
    }
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    /// `M v` for a sparse column vector.
    pub fn apply(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let dense: BTreeMap<usize, &F::Elem> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = f.zero();
            for (c, x) in row {
                if let Some(y) = dense.get(c) {
                    acc = f.add(&acc, &f.mul(x, y));
                }
            }
            if !f.is_zero(&acc) {
                out.push((r, acc));
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &ExactMatrix<F>) -> Result<ExactMatrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Usage("matrix dimensions do not match".into()));
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseVec<F::Elem> = Vec::new();
                for (k, x) in row {
                    acc = axpy(f, &acc, x, &other.data[*k]);
                }
                acc
            })
            .collect();
        Ok(ExactMatrix::from_rows(f.clone(), other.cols, data))
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.field.clone(), self.cols);
        for row in &self.data {
            ech.insert(row);
        }
        ech.rank()
    }
}

/// Fill ratio above which elimination switches to dense storage.
pub const DENSE_FILL_THRESHOLD: f64 = 0.3;

/// Rank and a kernel basis (`M v = 0`) of `m`.
///
/// The kernel basis is read off the reduced row echelon form, one vector per
/// free column, so it is the same whichever storage path runs.
pub fn rank_kernel<F: Field>(m: &ExactMatrix<F>) -> (usize, Vec<SparseVec<F::Elem>>) {
    let f = m.field();
    let cells = (m.rows() * m.cols()).max(1);
    let rref: Vec<SparseVec<F::Elem>> = if (m.nnz() as f64) / (cells as f64) > DENSE_FILL_THRESHOLD {
        dense_rref(m)
    } else {
        let mut ech = Echelon::new(f.clone(), m.cols());
        for r in 0..m.rows() {
            ech.insert(m.row(r));
        }
        let ech = ech.into_reduced();
        let mut rows = ech.rows().to_vec();
        rows.sort_by_key(|r| r[0].0);
        rows
    };
    let rank = rref.len();
    let pivots: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![(free, f.one())];
        for row in &rref {
            if let Some((_, x)) = row.iter().find(|(c, _)| *c == free) {
                v.push((row[0].0, f.neg(x)));
            }
        }
        v.sort_by_key(|e| e.0);
        kernel.push(v);
    }
    (rank, kernel)
}

fn dense_rref<F: Field>(m: &ExactMatrix<F>) -> Vec<SparseVec<F::Elem>> {
    let f = m.field();
    let cols = m.cols();
    let mut a: Vec<Vec<F::Elem>> = (0..m.rows())
        .map(|r| {
            let mut row = vec![f.zero(); cols];
            for (c, x) in m.row(r) {
                row[*c] = x.clone();
            }
            row
        })
        .collect();
    let mut lead = 0;
    for c in 0..cols {
        let Some(p) = (lead..a.len()).find(|&r| !f.is_zero(&a[r][c])) else {
            continue;
        };
        a.swap(lead, p);
        let inv = f.inv(&a[lead][c]).expect("pivot");
        for x in a[lead].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for r in 0..a.len() {
            if r != lead && !f.is_zero(&a[r][c]) {
                let k = a[r][c].clone();
                for j in c..cols {
                    let d = f.mul(&k, &a[lead][j]);
                    a[r][j] = f.sub(&a[r][j], &d);
                }
            }
        }
        lead += 1;
    }
    a.truncate(lead);
    a.into_iter()
        .map(|row| row.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{PrimeField, Rationals};

    fn q(n: i64) -> num_rational::BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = rank_kernel(&ExactMatrix::identity(Rationals, 3));
        assert_eq!(r, 3);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let (r, k) = rank_kernel(&ExactMatrix::zero(Rationals, 2, 5));
        assert_eq!(r, 0);
        assert_eq!(k.len(), 5);
    }

    #[test]
    fn rank_one_kernel_by_hand() {
        // [[1,2],[2,4]]: x + 2y = 0, kernel spanned by (2,-1) up to scale.
        let m = ExactMatrix::from_entries(Rationals, 2, 2, [(0, 0, q(1)), (0, 1, q(2)), (1, 0, q(2)), (1, 1, q(4))]).unwrap();
        let (r, k) = rank_kernel(&m);
        assert_eq!(r, 1);
        assert_eq!(k.len(), 1);
        // kernel vector is (-2, 1) = -(2, -1)
        assert_eq!(k[0], vec![(0, q(-2)), (1, q(1))]);
        assert!(m.apply(&k[0]).is_empty());
    }

    #[test]
    fn mixed_field_entries_are_rejected() {
        let f = PrimeField::new(5).unwrap();
        assert!(ExactMatrix::from_entries(f, 1, 1, [(0, 0, 7u64)]).is_err());
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        let f = PrimeField::new(101).unwrap();
        // dense enough to trigger the dense path
        let entries: Vec<_> = (0..4).flat_map(|r| (0..6).map(move |c| (r, c, ((r * 7 + c * 3 + r * c) % 5) as u64))).collect();
        let m = ExactMatrix::from_entries(f, 4, 6, entries).unwrap();
        let (r1, k1) = rank_kernel(&m);
        let mut ech = Echelon::new(f, 6);
        for i in 0..4 {
            ech.insert(m.row(i));
        }
        assert_eq!(r1, ech.rank());
        for v in &k1 {
            assert!(m.apply(v).is_empty());
        }
        assert_eq!(k1.len(), 6 - r1);
    }

    #[test]
    fn echelon_coordinates_round_trip() {
        let f = Rationals;
        let mut e = Echelon::new(f, 3);
        e.insert(&vec![(0, q(1)), (1, q(1))]);
        e.insert(&vec![(1, q(1)), (2, q(3))]);
        let v = vec![(0, q(2)), (1, q(5)), (2, q(9))];
        let c = e.coordinates(&v).unwrap();
        let mut back = Vec::new();
        for (r, x) in &c {
            back = axpy(&f, &back, x, &e.rows()[*r]);
        }
        assert_eq!(back, v);
        assert!(e.coordinates(&vec![(2, q(1))]).is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rank_is_invariant_under_row_permutation(
                cells in proptest::collection::vec(0u64..101, 20),
                perm_seed in 0usize..24,
            ) {
                let f = PrimeField::new(101).unwrap();
                let rows: Vec<SparseVec<u64>> = cells
                    .chunks(5)
                    .map(|ch| ch.iter().enumerate().filter(|(_, x)| **x != 0).map(|(c, x)| (c, *x)).collect())
                    .collect();
                let m = ExactMatrix::from_rows(f, 5, rows.clone());
                let mut order: Vec<usize> = (0..rows.len()).collect();
                // a deterministic permutation indexed by perm_seed
                let mut s = perm_seed;
                for i in (1..order.len()).rev() {
                    order.swap(i, s % (i + 1));
                    s /= i + 1;
                }
                let permuted = ExactMatrix::from_rows(f, 5, order.iter().map(|&i| rows[i].clone()).collect());
                let (r1, k1) = rank_kernel(&m);
                prop_assert_eq!(r1, permuted.rank());
                prop_assert_eq!(r1 + k1.len(), 5);
                for v in &k1 {
                    prop_assert!(m.apply(v).is_empty());
                }
            }
        }
    }
}
