//! Bigraded Betti numbers through the exterior chain complex, and the
//! verdicts built on them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Echelon, Field, SparseVec};
use crate::free_lie::{free_dimension, GeneratorSet};
use crate::presentation::Presentation;
use crate::quotient::{StructureTable, SubalgebraView};

/// `b[i][j] = dim H^{i,j}` for `j <= max_degree` and `i <= rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    max_degree: u32,
    rows: usize,
    b: Vec<Vec<usize>>,
    chain: Vec<Vec<usize>>,
}

/// Outcome of a bounded check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Nothing contradicts the property through this degree.
    Pass { up_to: u32 },
    /// `b_{i,j} = value` refutes the property.
    Fail { i: usize, j: u32, value: usize },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

impl BettiTable {
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Largest homological degree that was computed.
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn get(&self, i: usize, j: u32) -> usize {
        self.b.get(i).and_then(|r| r.get(j as usize)).copied().unwrap_or(0)
    }

    /// Dimension of the chain group `Lambda^i` in internal degree `j`.
    pub fn chain_dim(&self, i: usize, j: u32) -> usize {
        self.chain.get(i).and_then(|r| r.get(j as usize)).copied().unwrap_or(0)
    }

    /// Nonzero entries `(i, j, b_ij)` ordered by `i`, then `j`.
    pub fn nonzero(&self) -> Vec<(usize, u32, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    out.push((i, j as u32, x));
                }
            }
        }
        out
    }

    /// Diagonal `b_ii` for `i <= min(rows, max_degree)`.
    pub fn diagonal(&self) -> Vec<usize> {
        (0..=self.rows.min(self.max_degree as usize)).map(|i| self.get(i, i as u32)).collect()
    }

    fn first_violation(&self, bad: impl Fn(usize, u32) -> bool) -> Verdict {
        for j in 0..=self.max_degree {
            for i in 0..=self.rows {
                let v = self.get(i, j);
                if v != 0 && bad(i, j) {
                    return Verdict::Fail { i, j, value: v };
                }
            }
        }
        Verdict::Pass { up_to: self.max_degree }
    }

    /// Standard (`b_{1,j} = 0` for `j != 1`) and `b_{2,j} = 0` for `j != 2`.
    pub fn quadratic_verdict(&self) -> Verdict {
        self.first_violation(|i, j| (i == 1 || i == 2) && j != i as u32)
    }

    /// `b_{i,j} = 0` for every computed `i != j`.
    pub fn koszul_verdict(&self) -> Verdict {
        self.first_violation(|i, j| i != j as usize)
    }

    /// Largest `i` with a nonzero entry; a lower bound for the cohomological
    /// dimension.
    pub fn cd_lower_bound(&self) -> usize {
        self.nonzero().iter().map(|e| e.0).max().unwrap_or(0)
    }

    /// Degrees of minimal generators and of minimal relations, with multiplicity.
    pub fn minimal_presentation_degrees(&self) -> (Vec<u32>, Vec<u32>) {
        let expand = |i: usize| {
            let mut out = Vec::new();
            for j in 1..=self.max_degree {
                for _ in 0..self.get(i, j) {
                    out.push(j);
                }
            }
            out
        };
        (expand(1), expand(2))
    }

    /// `sum_i (-1)^i dim Lambda_{i,j}` and `sum_i (-1)^i b_{i,j}` per degree `j`,
    /// only meaningful when every row `i <= j` was computed.
    pub fn euler_poincare(&self, j: u32) -> (i64, i64) {
        let mut chain = 0i64;
        let mut betti = 0i64;
        for i in 0..=self.rows {
            let s = if i % 2 == 0 { 1 } else { -1 };
            chain += s * self.chain_dim(i, j) as i64;
            betti += s * self.get(i, j) as i64;
        }
        (chain, betti)
    }
}

/// Quadratic verdict read off a presentation with all generators in degree 1
/// and all relations in degree 2: `H^1` is spanned by the generators and
/// `H^2` by minimal relations, so nothing off the diagonal can appear.
/// `None` when the presentation has another shape.
pub fn quadratic_by_shape<F: Field>(p: &Presentation<F>, up_to: u32) -> Option<Verdict> {
    p.is_quadratic_shape().then_some(Verdict::Pass { up_to })
}

/// Increasing tuples of basis indices of `t` with degree sum `j`.
pub fn wedge_basis<F: Field>(t: &StructureTable<F>, i: usize, j: u32) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec<F: Field>(t: &StructureTable<F>, start: usize, left: usize, rem: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in start..t.total_dim() {
            let d = t.degree_of(x);
            // remaining elements have degree >= d
            if d * left as u32 > rem {
                break;
            }
            cur.push(x);
            rec(t, x + 1, left - 1, rem - d, cur, out);
            cur.pop();
        }
    }
    if i == 0 {
        if j == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(t, 0, i, j, &mut cur, &mut out);
    out
}

/// Boundary of a wedge of basis elements in the chain complex
/// `d(x_1 ^ ... ^ x_i) = sum_{a<b} (-1)^{a+b} [x_a, x_b] ^ ...` (hats omitted).
pub fn boundary<F: Field>(t: &StructureTable<F>, wedge: &[usize]) -> Vec<(Vec<usize>, F::Elem)> {
    let f = t.field();
    let mut out: BTreeMap<Vec<usize>, F::Elem> = BTreeMap::new();
    for a in 0..wedge.len() {
        for b in a + 1..wedge.len() {
            let br = t.bracket(wedge[a], wedge[b]);
            if br.is_empty() {
                continue;
            }
            let rest: Vec<usize> = wedge.iter().enumerate().filter(|(k, _)| *k != a && *k != b).map(|(_, &x)| x).collect();
            let sign_ab = (a + b) % 2 == 1;
            for (k, c) in br {
                if rest.binary_search(&k).is_ok() {
                    continue;
                }
                let pos = rest.partition_point(|&x| x < k);
                let mut w = rest.clone();
                w.insert(pos, k);
                let neg = sign_ab ^ (pos % 2 == 1);
                let v = if neg { f.neg(&c) } else { c };
                match out.get_mut(&w) {
                    Some(x) => *x = f.add(x, &v),
                    None => {
                        out.insert(w, v);
                    }
                }
            }
        }
    }
    out.into_iter().filter(|(_, x)| !f.is_zero(x)).collect()
}

/// Rank of the boundary map `Lambda_{i,j} -> Lambda_{i-1,j}`.
fn boundary_rank<F: Field>(t: &StructureTable<F>, source: &[Vec<usize>], target: &[Vec<usize>]) -> usize {
    if source.is_empty() || target.is_empty() {
        return 0;
    }
    let index: BTreeMap<&[usize], usize> = target.iter().enumerate().map(|(k, w)| (w.as_slice(), k)).collect();
    let mut ech = Echelon::new(t.field().clone(), target.len());
    for w in source {
        let mut v: SparseVec<F::Elem> = boundary(t, w).into_iter().map(|(w, c)| (index[w.as_slice()], c)).collect();
        v.sort_by_key(|e| e.0);
        if !v.is_empty() {
            ech.insert(&v);
        }
        if ech.rank() == target.len() {
            break;
        }
    }
    ech.rank()
}

/// Betti numbers `b_{i,j}` for `j <= N` and `i <= max_row` (all rows when `None`).
pub fn betti_table<F: Field>(t: &StructureTable<F>, max_row: Option<usize>) -> BettiTable {
    let n = t.max_degree();
    let rows = max_row.unwrap_or(n as usize).min(n as usize);
    let mut b = vec![vec![0usize; n as usize + 1]; rows + 1];
    let mut chain = vec![vec![0usize; n as usize + 1]; rows + 1];
    b[0][0] = 1;
    chain[0][0] = 1;
    for j in 1..=n {
        let top = (j as usize).min(rows + 1);
        let bases: Vec<Vec<Vec<usize>>> = (0..=top).map(|i| wedge_basis(t, i, j)).collect();
        let mut ranks = vec![0usize; top + 2];
        for i in 2..=top {
            ranks[i] = boundary_rank(t, &bases[i], &bases[i - 1]);
        }
        for i in 1..=rows.min(j as usize) {
            chain[i][j as usize] = bases[i].len();
            b[i][j as usize] = bases[i].len() - ranks[i] - ranks[i + 1];
        }
    }
    BettiTable { max_degree: n, rows, b, chain }
}

/// A checked subalgebra: its generating space, Betti rows 0..=2 and the
/// quadratic verdict.
#[derive(Clone, Debug)]
pub struct SubalgebraReport<F: Field> {
    pub generators: Vec<SparseVec<F::Elem>>,
    pub description: String,
    pub dims: Vec<usize>,
    pub betti: BettiTable,
    pub verdict: Verdict,
}

/// How degree-1 subspaces are chosen for sampling.
#[derive(Clone, Debug)]
pub enum Strategy<E> {
    /// Every nonempty subset of the basis of `L_1`.
    Coordinate,
    /// `count` random subspaces from a seeded generator.
    Random { count: usize, seed: u64 },
    /// Given spanning sets.
    Explicit(Vec<Vec<SparseVec<E>>>),
}

/// Largest `L_1` for which coordinate subsets are enumerated.
pub const COORDINATE_LIMIT: usize = 12;

fn describe<F: Field>(f: &F, t: &StructureTable<F>, span: &[SparseVec<F::Elem>]) -> String {
    let mut parts = Vec::new();
    for v in span {
        let mut s = String::new();
        for (k, (i, c)) in v.iter().enumerate() {
            let (num, den) = f.to_ratio(c);
            let neg = num < num_bigint::BigInt::from(0);
            let abs = if neg { -num } else { num };
            if k > 0 {
                s.push_str(if neg { "+-" } else { "+" });
            } else if neg {
                s.push('-');
            }
            let one = num_bigint::BigInt::from(1);
            if abs != one || den != one {
                if den == one {
                    s.push_str(&alloc::format!("{abs}*"));
                } else {
                    s.push_str(&alloc::format!("{abs}/{den}*"));
                }
            }
            s.push_str(t.label(t.range(1).start + i));
        }
        parts.push(s.replace("+-", "-"));
    }
    alloc::format!("span{{{}}}", parts.join(", "))
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1u32 << n)).map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect()).collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    out
}

fn random_subspace<F: Field>(f: &F, rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<SparseVec<F::Elem>> {
    loop {
        let mut ech = Echelon::new(f.clone(), n);
        let mut out = Vec::new();
        for _ in 0..k {
            let v: SparseVec<F::Elem> = (0..n).map(|i| (i, f.sample(rng.next_u64()))).filter(|(_, x)| !f.is_zero(x)).collect();
            if ech.insert(&v).is_some() {
                out.push(v);
            }
        }
        if out.len() == k {
            return out;
        }
    }
}

/// Degree-1 generating spaces selected by a strategy. Random subspaces have
/// dimension at least 2 (when `L_1` allows it).
pub fn sample_subspaces<F: Field>(t: &StructureTable<F>, strategy: &Strategy<F::Elem>) -> Vec<Vec<SparseVec<F::Elem>>> {
    let f = t.field();
    let n = t.dim(1);
    match strategy {
        Strategy::Coordinate => subsets(n.min(COORDINATE_LIMIT))
            .into_iter()
            .map(|s| s.into_iter().map(|i| vec![(i, f.one())]).collect())
            .collect(),
        Strategy::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..*count)
                .map(|_| {
                    let lo = 2.min(n);
                    let k = if n <= lo { n } else { lo + (rng.next_u64() as usize) % (n - lo + 1) };
                    random_subspace(f, &mut rng, n, k)
                })
                .collect()
        }
        Strategy::Explicit(list) => list.clone(),
    }
}

/// Checks quadraticity of the subalgebra generated by a degree-1 span.
pub fn check_subalgebra<F: Field>(t: &StructureTable<F>, span: &[SparseVec<F::Elem>]) -> crate::Result<SubalgebraReport<F>> {
    let view = SubalgebraView::degree_one(t, span)?;
    let betti = betti_table(view.table(), Some(2));
    Ok(SubalgebraReport {
        generators: span.to_vec(),
        description: describe(t.field(), t, span),
        dims: view.dims().to_vec(),
        verdict: betti.quadratic_verdict(),
        betti,
    })
}

/// Samples standard subalgebras and checks each for quadraticity up to `N`.
pub fn bk_check<F: Field>(t: &StructureTable<F>, strategy: &Strategy<F::Elem>) -> crate::Result<Vec<SubalgebraReport<F>>> {
    sample_subspaces(t, strategy).iter().map(|s| check_subalgebra(t, s)).collect()
}

/// Result of the greedy quadratic filtration search.
#[derive(Clone, Debug)]
pub struct Filtration<E> {
    /// Generating spaces from `L_1` downwards, each of codimension 1 in the previous.
    pub chain: Vec<Vec<SparseVec<E>>>,
    /// Dimension of the generating space at which no candidate was quadratic.
    pub stuck_at: Option<usize>,
}

/// Greedy chain of codimension-1 coordinate subspaces whose subalgebras are
/// quadratic up to `N`, trying to drop the last coordinate first.
pub fn quadratic_filtration_search<F: Field>(t: &StructureTable<F>) -> crate::Result<Filtration<F::Elem>> {
    let f = t.field();
    let mut current: Vec<usize> = (0..t.dim(1)).collect();
    let span_of = |idx: &[usize]| -> Vec<SparseVec<F::Elem>> { idx.iter().map(|&i| vec![(i, f.one())]).collect() };
    let mut chain = vec![span_of(&current)];
    if !check_subalgebra(t, &chain[0])?.verdict.passed() {
        return Ok(Filtration { chain, stuck_at: Some(current.len()) });
    }
    while current.len() > 1 {
        let mut next = None;
        for drop in (0..current.len()).rev() {
            let mut cand = current.clone();
            cand.remove(drop);
            if check_subalgebra(t, &span_of(&cand))?.verdict.passed() {
                next = Some(cand);
                break;
            }
        }
        match next {
            Some(c) => {
                current = c;
                chain.push(span_of(&current));
            }
            None => return Ok(Filtration { chain, stuck_at: Some(current.len()) }),
        }
    }
    Ok(Filtration { chain, stuck_at: None })
}

/// Whether a view's dims and relation count look free of rank `dims[1]`.
fn looks_free(report_dims: &[usize], betti: &BettiTable) -> bool {
    let r = report_dims.get(1).copied().unwrap_or(0);
    let names: Vec<String> = (0..r).map(|i| alloc::format!("g{i}")).collect();
    let g = GeneratorSet::new(names.into_iter().map(|n| (n, 1))).expect("distinct");
    let dims_ok = report_dims.iter().enumerate().skip(1).all(|(d, &x)| free_dimension(&g, d as u32) == x as u64);
    let rel_free = (1..=betti.max_degree()).all(|j| betti.get(2, j) == 0);
    dims_ok && rel_free
}

/// Lower bound for the free rank: the largest sampled degree-1 subspace whose
/// subalgebra has free dimensions and no relations up to `N`.
pub fn probe_free_rank<F: Field>(t: &StructureTable<F>, strategy: &Strategy<F::Elem>) -> crate::Result<(usize, Vec<SparseVec<F::Elem>>)> {
    let mut cands = sample_subspaces(t, strategy);
    cands.sort_by_key(|s| core::cmp::Reverse(s.len()));
    for s in cands {
        let r = check_subalgebra(t, &s)?;
        if looks_free(&r.dims, &r.betti) {
            return Ok((s.len(), s));
        }
    }
    Ok((0, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rationals;
    use crate::presentation::library::*;
    use crate::presentation::Presentation;
    use crate::quotient::expand_tables;

    fn table(p: &Presentation<Rationals>, n: u32) -> StructureTable<Rationals> {
        expand_tables(p, n).unwrap().structure()
    }

    #[test]
    fn free_algebras_have_no_relations() {
        let b = betti_table(&table(&free(Rationals, 2), 5), None);
        assert_eq!(b.nonzero(), vec![(0, 0, 1), (1, 1, 2)]);
    }

    #[test]
    fn surface_g4() {
        let b = betti_table(&table(&g4(Rationals), 6), None);
        assert_eq!(b.nonzero(), vec![(0, 0, 1), (1, 1, 4), (2, 2, 1)]);
        assert_eq!(b.minimal_presentation_degrees(), (vec![1, 1, 1, 1], vec![2]));
    }

    #[test]
    fn h1_has_cubic_relations() {
        let b = betti_table(&table(&heisenberg1(Rationals), 4), None);
        assert_eq!(b.get(2, 3), 2);
        assert_eq!(b.get(2, 2), 0);
        assert_eq!(b.quadratic_verdict(), Verdict::Fail { i: 2, j: 3, value: 2 });
    }

    #[test]
    fn abelian_is_koszul() {
        let b = betti_table(&table(&abelian(Rationals, 3), 5), None);
        assert_eq!(b.koszul_verdict(), Verdict::Pass { up_to: 5 });
        assert_eq!(b.diagonal(), vec![1, 3, 3, 1, 0, 0]);
    }

    #[test]
    fn h2_is_quadratic_not_koszul() {
        let t = table(&heisenberg(Rationals, 2), 5);
        let b = betti_table(&t, None);
        assert_eq!(b.quadratic_verdict(), Verdict::Pass { up_to: 5 });
        let k = betti_table(&t.truncate(4), None).koszul_verdict();
        assert!(matches!(k, Verdict::Fail { j, i, .. } if j <= 4 && i != j as usize));
    }

    #[test]
    fn d_squared_vanishes() {
        let t = table(&two_gen_koszul(Rationals), 5);
        let f = Rationals;
        for j in 1..=5u32 {
            for i in 2..=j as usize {
                for w in wedge_basis(&t, i, j) {
                    let mut acc: BTreeMap<Vec<usize>, _> = BTreeMap::new();
                    for (u, c) in boundary(&t, &w) {
                        for (v, e) in boundary(&t, &u) {
                            let x = f.mul(&c, &e);
                            let y = acc.remove(&v).map_or(x.clone(), |z| f.add(&z, &x));
                            if !f.is_zero(&y) {
                                acc.insert(v, y);
                            }
                        }
                    }
                    assert!(acc.is_empty());
                }
            }
        }
    }

    #[test]
    fn euler_poincare_per_degree() {
        for p in [g4(Rationals), heisenberg(Rationals, 2), heisenberg1(Rationals)] {
            let b = betti_table(&table(&p, 5), None);
            for j in 0..=5 {
                let (c, e) = b.euler_poincare(j);
                assert_eq!(c, e);
            }
        }
    }

    #[test]
    fn witt_minimal_degrees() {
        let b = betti_table(&table(&witt_plus(Rationals), 8), Some(2));
        assert_eq!(b.minimal_presentation_degrees(), (vec![1, 2], vec![5, 7]));
    }

    #[test]
    fn g4_subalgebras_pass_and_free_rank() {
        let t = table(&g4(Rationals), 5);
        let reports = bk_check(&t, &Strategy::Coordinate).unwrap();
        assert_eq!(reports.len(), 15);
        assert!(reports.iter().all(|r| r.verdict.passed()));
        let (r, _) = probe_free_rank(&t, &Strategy::Coordinate).unwrap();
        assert_eq!(r, 3);
        let filt = quadratic_filtration_search(&t).unwrap();
        assert_eq!(filt.stuck_at, None);
        assert_eq!(filt.chain.len(), 4);
        assert_eq!(filt.chain[1], vec![vec![(0, Rationals.one())], vec![(1, Rationals.one())], vec![(2, Rationals.one())]]);
    }

    #[test]
    fn abelian_samples() {
        let t = table(&abelian(Rationals, 4), 4);
        let reports = bk_check(&t, &Strategy::Random { count: 20, seed: 1 }).unwrap();
        assert_eq!(reports.len(), 20);
        assert!(reports.iter().all(|r| r.verdict.passed()));
        let t = table(&abelian(Rationals, 2), 4);
        assert_eq!(probe_free_rank(&t, &Strategy::Coordinate).unwrap().0, 1);
    }
}
