use kla_core::arith::{PrimeField, SparseVec};
use kla_core::cohomology::betti_table;
use kla_core::free_lie::GeneratorSet;
use kla_core::hnn::hnn_decompose;
use kla_core::presentation::{LieExpr, Presentation};
use kla_core::quadratic_dual::{DualAlgebraTable, QuadraticData};
use kla_core::quotient::{expand_tables, SubalgebraView};
use kla_core::raag::{clique_data, graphs_up_to_iso, is_chordal, is_droms, raag_presentation, Graph};
use kla_core::spectrum::{eigenvalues, PoincarePoly, DEFAULT_TOLERANCE};
use num_traits::ToPrimitive;
use proptest::prelude::*;

const NAMES: [&str; 5] = ["a", "b", "c", "d", "e"];

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

/// Quadratic presentation on `n` degree-1 generators from coefficient triples.
fn quadratic(n: usize, rels: &[Vec<(i64, usize, usize)>]) -> Presentation<PrimeField> {
    let names = &NAMES[..n];
    let exprs: Vec<LieExpr> = rels
        .iter()
        .map(|r| LieExpr::sum(r.iter().map(|&(c, a, b)| (c, LieExpr::bracket(LieExpr::gen(names[a % n]), LieExpr::gen(names[b % n]))))))
        .collect();
    Presentation::from_exprs("q", f101(), GeneratorSet::standard(names), &exprs).unwrap()
}

fn relations() -> impl Strategy<Value = Vec<Vec<(i64, usize, usize)>>> {
    prop::collection::vec(prop::collection::vec((-3i64..=3, 0usize..5, 0usize..5), 1..4), 0..4)
}

fn graph(n: usize, mask: u32) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let edges: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &e)| e).collect();
    Graph::unnamed(n, &edges).unwrap()
}

fn unit(i: usize) -> SparseVec<u64> {
    vec![(i, 1)]
}

/// Nondecreasing index sequences over a graded basis with total degree `d`.
fn pbw_monomials(degrees: &[u32], d: u32, from: usize) -> u64 {
    if d == 0 {
        return 1;
    }
    (from..degrees.len()).filter(|&k| degrees[k] <= d).map(|k| pbw_monomials(degrees, d - degrees[k], k)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn expanded_tables_are_lie_algebras(rels in relations()) {
        let p = quadratic(4, &rels);
        let mut a = expand_tables(&p, 4).unwrap();
        prop_assert!(a.closure_is_stable());
        let t = a.structure();
        prop_assert_eq!(t.jacobi_violation(), None);
        for x in 0..t.total_dim() {
            for y in 0..t.total_dim() {
                let mut s = t.bracket(x, y);
                for (i, c) in t.bracket(y, x) {
                    s.push((i, c));
                }
                let mut sums = std::collections::BTreeMap::new();
                for (i, c) in s {
                    *sums.entry(i).or_insert(0u64) += c;
                }
                prop_assert!(sums.values().all(|c| c % 101 == 0));
            }
        }
    }

    #[test]
    fn enveloping_series_counts_pbw_monomials(rels in relations()) {
        let t = expand_tables(&quadratic(3, &rels), 4).unwrap().structure();
        let degrees: Vec<u32> = (0..t.total_dim()).map(|g| t.degree_of(g)).collect();
        let hu = t.enveloping_series();
        for d in 0..=4u32 {
            prop_assert_eq!(hu.coeff(d as usize).to_integer().to_u64().unwrap(), pbw_monomials(&degrees, d, 0));
        }
    }

    #[test]
    fn dual_matches_diagonal_cohomology(rels in relations()) {
        let p = quadratic(4, &rels);
        let q = QuadraticData::from_presentation(&p).unwrap();
        prop_assert_eq!(q.relation_rank() + q.annihilator().len(), 6);
        let back = q.double_annihilator();
        prop_assert_eq!(back.rank(), q.relation_rank());
        prop_assert!(q.relations().iter().all(|r| back.contains(r)));
        let dual = DualAlgebraTable::new(&q, 4).dims();
        let diag = betti_table(&expand_tables(&p, 4).unwrap().structure(), None).diagonal();
        for i in 0..=4 {
            prop_assert_eq!(dual.get(i).copied().unwrap_or(0), diag.get(i).copied().unwrap_or(0), "degree {}", i);
        }
    }

    #[test]
    fn recomposition_preserves_hilbert_series(rels in relations(), x in 0usize..4) {
        let p = quadratic(4, &rels);
        let split = hnn_decompose(&p, NAMES[x]).unwrap();
        let before = expand_tables(&p, 5).unwrap().dims();
        prop_assert_eq!(expand_tables(&split.reconstruction, 5).unwrap().dims(), before);
    }

    #[test]
    fn subalgebra_betti_is_stable_under_larger_cutoff(rels in relations(), pick in 1usize..15) {
        let p = quadratic(4, &rels);
        let span: Vec<_> = (0..4).filter(|i| pick & (1 << i) != 0).map(unit).collect();
        let small = expand_tables(&p, 4).unwrap().structure();
        let large = expand_tables(&p, 6).unwrap().structure();
        let a = SubalgebraView::degree_one(&small, &span).unwrap();
        let b = SubalgebraView::degree_one(&large, &span).unwrap();
        let ba = betti_table(a.table(), Some(2));
        let bb = betti_table(&b.table().truncate(4), Some(2));
        prop_assert_eq!(ba.nonzero(), bb.nonzero());
    }

    #[test]
    fn induced_subgraphs_are_retracts(n in 2usize..=5, mask in 0u32..1024, sub in 1u64..32) {
        let g = graph(n, mask);
        let sub = sub & ((1 << n) - 1);
        prop_assume!(sub != 0);
        let t = expand_tables(&raag_presentation(f101(), &g).unwrap(), 5).unwrap().structure();
        let span: Vec<_> = (0..n).filter(|v| sub & (1 << v) != 0).map(unit).collect();
        let view = SubalgebraView::degree_one(&t, &span).unwrap();
        let h = raag_presentation(f101(), &g.induced(sub)).unwrap();
        prop_assert_eq!(view.dims(), &expand_tables(&h, 5).unwrap().dims()[..]);
    }

    #[test]
    fn raag_duals_count_cliques(n in 1usize..=5, mask in 0u32..1024) {
        let g = graph(n, mask);
        let p = raag_presentation(f101(), &g).unwrap();
        let dual = DualAlgebraTable::new(&QuadraticData::from_presentation(&p).unwrap(), n).dims();
        let counts = clique_data(&g).unwrap().counts;
        for (i, &c) in counts.iter().enumerate() {
            prop_assert_eq!(dual.get(i).copied().unwrap_or(0) as u64, c);
        }
    }

    #[test]
    fn clique_polynomials_factor_back(n in 1usize..=10, keep in prop::collection::vec(any::<bool>(), 45)) {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(e, _)| e)
            .collect();
        let g = Graph::unnamed(n, &edges).unwrap();
        let p = PoincarePoly::from_cliques(&clique_data(&g).unwrap()).unwrap();
        let e = eigenvalues(&p, DEFAULT_TOLERANCE).unwrap();
        prop_assert!(e.reconstruction_error(&p) <= 1e-9, "{:?}", p.coeffs());
    }
}

#[test]
fn droms_graphs_are_chordal() {
    for n in 1..=6 {
        for g in graphs_up_to_iso(n).unwrap() {
            if is_droms(&g) {
                assert!(is_chordal(&g), "{:?}", g.edges());
            }
        }
    }
}

#[test]
fn two_generated_raag_subalgebras_are_free_or_abelian() {
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    let f = f101();
    let free2 = [2, 1, 2, 3, 6];
    let abelian2 = [2, 0, 0, 0, 0];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 30 {
        let n = 2 + rng.next_u64() as usize % 4;
        let g = graph(n, rng.next_u64() as u32 % 1024);
        let t = expand_tables(&raag_presentation(f, &g).unwrap(), 5).unwrap().structure();
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| -> SparseVec<u64> {
            (0..n).map(|i| (i, rng.next_u64() % 101)).filter(|x| x.1 != 0).collect()
        };
        let span = [pick(&mut rng), pick(&mut rng)];
        let view = SubalgebraView::degree_one(&t, &span).unwrap();
        if view.dims()[1] < 2 {
            continue;
        }
        let d = &view.dims()[1..];
        assert!(d == free2 || d == abelian2, "{:?} on {:?}: {d:?}", span, g.edges());
        checked += 1;
    }
}
