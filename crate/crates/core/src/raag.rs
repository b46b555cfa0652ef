//! Finite simple graphs and their right-angled Artin Lie algebras.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{Field, PolySeries};
use crate::error::{Error, Result};
use crate::free_lie::{FreeLie, GeneratorSet};
use crate::presentation::Presentation;

/// Graphs are stored as adjacency bitmasks.
pub const MAX_VERTICES: usize = 64;
/// Clique enumeration is exhaustive and refuses larger graphs.
pub const CLIQUE_VERTEX_LIMIT: usize = 20;

/// A finite simple graph with named vertices in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<u64>,
}

impl Graph {
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n > MAX_VERTICES {
            return Err(Error::TooLarge(alloc::format!("{n} vertices (at most {MAX_VERTICES})")));
        }
        let mut seen = BTreeSet::new();
        for v in &names {
            if !seen.insert(v.as_str()) {
                return Err(Error::Usage(alloc::format!("duplicate vertex {v}")));
            }
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Usage("edge endpoint is not a vertex".into()));
            }
            if a == b {
                return Err(Error::Usage(alloc::format!("loop at {}", names[a])));
            }
            if adj[a] >> b & 1 == 1 {
                return Err(Error::Usage(alloc::format!("duplicate edge {}-{}", names[a], names[b])));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(Graph { names, adj })
    }

    pub fn from_names(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |v: &str| {
            names
                .iter()
                .position(|n| n == v)
                .ok_or_else(|| Error::Usage(alloc::format!("undeclared vertex {v}")))
        };
        let e = edges.iter().map(|(a, b)| Ok((find(a)?, find(b)?))).collect::<Result<Vec<_>>>()?;
        Graph::new(names, &e)
    }

    /// Vertices named `v0, v1, ...`.
    pub fn unnamed(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new((0..n).map(|i| alloc::format!("v{i}")).collect(), edges)
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

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.adjacent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    fn all(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// The subgraph induced on the vertices of `mask`, in vertex order.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = bits(mask).collect();
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let mut edges = Vec::new();
        for (x, &a) in keep.iter().enumerate() {
            for (y, &b) in keep.iter().enumerate().skip(x + 1) {
                if self.adjacent(a, b) {
                    edges.push((x, y));
                }
            }
        }
        Graph::new(names, &edges).expect("induced subgraph of a simple graph")
    }

    /// Connected components of the subgraph induced on `mask`.
    pub fn components(&self, mask: u64) -> Vec<u64> {
        let mut left = mask;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let grow = bits(comp).fold(comp, |m, v| m | (self.adj[v] & mask));
                if grow == comp {
                    break;
                }
                comp = grow;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(self.all()).len() <= 1
    }

    pub fn render_set(&self, vs: &[usize]) -> String {
        let names: Vec<&str> = vs.iter().map(|&v| self.names[v].as_str()).collect();
        alloc::format!("{{{}}}", names.join(","))
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Named graph families.
pub mod library {
    use super::Graph;
    use alloc::vec::Vec;

    pub fn empty(n: usize) -> Graph {
        Graph::unnamed(n, &[]).expect("valid graph")
    }

    pub fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Graph::unnamed(n, &e).expect("valid graph")
    }

    pub fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::unnamed(n, &e).expect("valid graph")
    }

    pub fn cycle(n: usize) -> Graph {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            e.push((0, n - 1));
        }
        Graph::unnamed(n, &e).expect("valid graph")
    }

    /// `n` squares glued along rungs: the ladder on `2(n + 1)` vertices.
    pub fn square_ladder(n: usize) -> Graph {
        let m = n + 1;
        let mut e = Vec::new();
        for i in 0..m {
            e.push((2 * i, 2 * i + 1));
            if i + 1 < m {
                e.push((2 * i, 2 * i + 2));
                e.push((2 * i + 1, 2 * i + 3));
            }
        }
        Graph::unnamed(2 * m, &e).expect("valid graph")
    }

    pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
        let n = a.len();
        let mut e = a.edges();
        e.extend(b.edges().into_iter().map(|(x, y)| (x + n, y + n)));
        Graph::unnamed(n + b.len(), &e).expect("valid graph")
    }

    /// `g` with an extra vertex joined to everything.
    pub fn cone(g: &Graph) -> Graph {
        let n = g.len();
        let mut e = g.edges();
        e.extend((0..n).map(|v| (v, n)));
        Graph::unnamed(n + 1, &e).expect("valid graph")
    }

    /// `K_7` together with 8 isolated vertices.
    pub fn k7_plus_8() -> Graph {
        disjoint_union(&complete(7), &empty(8))
    }
}

/// `<x_v | [x_v, x_w] for every edge vw>` with one degree-1 generator per vertex.
pub fn raag_presentation<F: Field>(field: F, g: &Graph) -> Result<Presentation<F>> {
    let gens = GeneratorSet::new(g.names().iter().map(|n| (n.clone(), 1)))?;
    let mut fl = FreeLie::new(field.clone(), gens.clone());
    let rels = g.edges().into_iter().map(|(a, b)| fl.bracket(&fl.generator(a), &fl.generator(b))).collect();
    Presentation::new("raag", field, gens, rels)
}

/// Clique counts `c_0 = 1, c_1, c_2, ...` of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueData {
    pub counts: Vec<u64>,
}

impl CliqueData {
    pub fn clique_number(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn polynomial(&self) -> PolySeries {
        PolySeries::polynomial(self.counts.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    /// Value of the clique polynomial at `-1`.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }
}

fn guard_cliques(g: &Graph) -> Result<()> {
    if g.len() > CLIQUE_VERTEX_LIMIT {
        return Err(Error::TooLarge(alloc::format!(
            "clique enumeration is limited to {CLIQUE_VERTEX_LIMIT} vertices"
        )));
    }
    Ok(())
}

/// Counts every clique by extending with higher-numbered common neighbours.
pub fn clique_data(g: &Graph) -> Result<CliqueData> {
    guard_cliques(g)?;
    fn extend(g: &Graph, size: usize, cand: u64, counts: &mut Vec<u64>) {
        if counts.len() <= size {
            counts.push(0);
        }
        counts[size] += 1;
        for v in bits(cand) {
            let later = cand & !((1u64 << (v + 1)) - 1);
            extend(g, size + 1, later & g.neighbors(v), counts);
        }
    }
    let mut counts = Vec::new();
    extend(g, 0, g.all(), &mut counts);
    Ok(CliqueData { counts })
}

/// Maximal cliques by Bron–Kerbosch with pivoting, each sorted, in discovery order.
pub fn maximal_cliques(g: &Graph) -> Result<Vec<Vec<usize>>> {
    guard_cliques(g)?;
    fn bk(g: &Graph, r: u64, mut p: u64, mut x: u64, out: &mut Vec<Vec<usize>>) {
        if p == 0 {
            if x == 0 {
                out.push(bits(r).collect());
            }
            return;
        }
        let pivot = bits(p | x).max_by_key(|&u| (p & g.neighbors(u)).count_ones()).expect("nonempty");
        for v in bits(p & !g.neighbors(pivot)) {
            let nv = g.neighbors(v);
            bk(g, r | 1 << v, p & nv, x & nv, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut out = Vec::new();
    bk(g, 0, g.all(), 0, &mut out);
    Ok(out)
}

pub fn euler_characteristic_raag(g: &Graph) -> Result<i64> {
    Ok(clique_data(g)?.euler_characteristic())
}

/// The two induced 4-vertex obstructions to the Droms property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// Induced 4-cycle, vertices in cyclic order.
    Square([usize; 4]),
    /// Induced path on 4 vertices, in path order.
    Path([usize; 4]),
}

impl Obstruction {
    pub fn vertices(&self) -> [usize; 4] {
        match self {
            Obstruction::Square(v) | Obstruction::Path(v) => *v,
        }
    }
}

fn classify_four(g: &Graph, q: [usize; 4]) -> Option<Obstruction> {
    let deg = |v: usize| q.iter().filter(|&&w| w != v && g.adjacent(v, w)).count();
    let degs: Vec<usize> = q.iter().map(|&v| deg(v)).collect();
    let edges: usize = degs.iter().sum::<usize>() / 2;
    let walk = |start: usize| {
        let mut order = vec![start];
        while order.len() < 4 {
            let last = *order.last().expect("nonempty");
            let next = q.iter().copied().find(|&w| !order.contains(&w) && g.adjacent(last, w))?;
            order.push(next);
        }
        Some([order[0], order[1], order[2], order[3]])
    };
    if edges == 4 && degs.iter().all(|&d| d == 2) {
        return walk(q[0]).map(Obstruction::Square);
    }
    if edges == 3 && degs.iter().filter(|&&d| d == 1).count() == 2 && degs.iter().filter(|&&d| d == 2).count() == 2 {
        let end = q.iter().copied().find(|&v| deg(v) == 1).expect("endpoint");
        return walk(end).map(Obstruction::Path);
    }
    None
}

/// First induced square or 4-path in lexicographic order of 4-subsets.
pub fn droms_obstruction(g: &Graph) -> Option<Obstruction> {
    let n = g.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if let Some(o) = classify_four(g, [a, b, c, d]) {
                        return Some(o);
                    }
                }
            }
        }
    }
    None
}

pub fn is_droms(g: &Graph) -> bool {
    droms_obstruction(g).is_none()
}

/// Lexicographic breadth-first search order (partition refinement).
pub fn lex_bfs(g: &Graph) -> Vec<usize> {
    let mut classes: Vec<Vec<usize>> = vec![(0..g.len()).collect()];
    let mut order = Vec::with_capacity(g.len());
    while let Some(first) = classes.first_mut() {
        let v = first.remove(0);
        if first.is_empty() {
            classes.remove(0);
        }
        order.push(v);
        let mut next = Vec::with_capacity(classes.len() * 2);
        for class in classes {
            let (inside, outside): (Vec<usize>, Vec<usize>) = class.into_iter().partition(|&w| g.adjacent(v, w));
            if !inside.is_empty() {
                next.push(inside);
            }
            if !outside.is_empty() {
                next.push(outside);
            }
        }
        classes = next;
    }
    order
}

/// A vertex `v` of `order` with two earlier neighbours `a`, `b` that are not
/// adjacent, so that the reverse of `order` is not a perfect elimination ordering.
pub fn peo_violation(g: &Graph, order: &[usize]) -> Option<[usize; 3]> {
    let mut pos = vec![0usize; g.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for (i, &v) in order.iter().enumerate() {
        let earlier: Vec<usize> = bits(g.neighbors(v)).filter(|&w| pos[w] < i).collect();
        if let Some(&parent) = earlier.iter().max_by_key(|&&w| pos[w]) {
            if let Some(&w) = earlier.iter().find(|&&w| w != parent && !g.adjacent(parent, w)) {
                return Some([v, parent, w]);
            }
        }
    }
    None
}

/// Whether the reverse of `order` is a perfect elimination ordering.
pub fn is_reverse_peo(g: &Graph, order: &[usize]) -> bool {
    peo_violation(g, order).is_none()
}

pub fn is_chordal(g: &Graph) -> bool {
    is_reverse_peo(g, &lex_bfs(g))
}

/// Cone / disjoint-union decomposition of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Vertex(usize),
    Cone { tip: usize, rest: alloc::boxed::Box<Decomposition> },
    DisjointUnion(Vec<Decomposition>),
    /// Connected, at least two vertices, no vertex adjacent to all others.
    Indecomposable(Vec<usize>),
}

impl Decomposition {
    /// The first indecomposable piece, depth first.
    pub fn obstruction(&self) -> Option<&[usize]> {
        match self {
            Decomposition::Vertex(_) => None,
            Decomposition::Cone { rest, .. } => rest.obstruction(),
            Decomposition::DisjointUnion(parts) => parts.iter().find_map(Decomposition::obstruction),
            Decomposition::Indecomposable(vs) => Some(vs),
        }
    }

    pub fn render(&self, g: &Graph) -> String {
        match self {
            Decomposition::Vertex(v) => g.names()[*v].clone(),
            Decomposition::Cone { tip, rest } => alloc::format!("cone({}, {})", g.names()[*tip], rest.render(g)),
            Decomposition::DisjointUnion(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.render(g)).collect();
                alloc::format!("union({})", inner.join(", "))
            }
            Decomposition::Indecomposable(vs) => alloc::format!("indecomposable{}", g.render_set(vs)),
        }
    }
}

pub fn decompose(g: &Graph) -> Decomposition {
    fn go(g: &Graph, mask: u64) -> Decomposition {
        if mask.count_ones() == 1 {
            return Decomposition::Vertex(mask.trailing_zeros() as usize);
        }
        let comps = g.components(mask);
        if comps.len() > 1 {
            return Decomposition::DisjointUnion(comps.into_iter().map(|c| go(g, c)).collect());
        }
        match bits(mask).find(|&v| g.neighbors(v) & mask == mask & !(1 << v)) {
            Some(tip) => Decomposition::Cone {
                tip,
                rest: alloc::boxed::Box::new(go(g, mask & !(1 << tip))),
            },
            None => Decomposition::Indecomposable(bits(mask).collect()),
        }
    }
    if g.is_empty() {
        return Decomposition::DisjointUnion(Vec::new());
    }
    go(g, g.all())
}

/// Edge count of the Turán graph `T(n, r)`, the most edges a graph on `n`
/// vertices can have without an `(r + 1)`-clique.
pub fn turan_bound(n: u64, r: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::Usage("the Turán bound needs r >= 1".into()));
    }
    let (q, s) = (n / r, n % r);
    // (1 - 1/r)(n^2 - s^2)/2 with n = qr + s
    Ok(q * (q * r + 2 * s) * (r - 1) / 2 + s * s.saturating_sub(1) / 2)
}

/// `v^2 / (v^2 - 2e)`, a lower bound for the clique number.
pub fn clique_lower_bound(v: u64, e: u64) -> Result<BigRational> {
    let v2 = BigInt::from(v) * BigInt::from(v);
    let den = &v2 - BigInt::from(2 * e);
    if den <= BigInt::from(0) {
        return Err(Error::Domain("the bound needs v^2 > 2e".into()));
    }
    Ok(BigRational::new(v2, den))
}

/// One representative per isomorphism class of graphs on exactly `n` vertices
/// (`n <= 7`), ordered by edge count then by edge mask.
pub fn graphs_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    if n > 7 {
        return Err(Error::TooLarge("isomorphism classes are enumerated for at most 7 vertices".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pairs.iter().position(|&p| p == (a, b)).expect("pair")
    };
    let perms = permutations(n);
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(a, b)| index(p[a], p[b])).collect())
        .collect();
    let total = 1usize << pairs.len();
    let mut seen = vec![false; total];
    let mut reps = Vec::new();
    let mut masks: Vec<usize> = (0..total).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for m in masks {
        if seen[m] {
            continue;
        }
        for map in &maps {
            let mut img = 0usize;
            for (i, &j) in map.iter().enumerate() {
                if m >> i & 1 == 1 {
                    img |= 1 << j;
                }
            }
            seen[img] = true;
        }
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| m >> i & 1 == 1).map(|i| pairs[i]).collect();
        reps.push(Graph::unnamed(n, &edges)?);
    }
    Ok(reps)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::library::*;
    use super::*;
    use crate::arith::Rationals;
    use crate::quotient::expand_tables;

    #[test]
    fn clique_examples() {
        assert_eq!(clique_data(&cycle(4)).unwrap().counts, vec![1, 4, 4]);
        assert_eq!(clique_data(&empty(1)).unwrap().counts, vec![1, 1]);
        let k = clique_data(&k7_plus_8()).unwrap();
        assert_eq!(k.counts, vec![1, 15, 21, 35, 35, 21, 7, 1]);
        let mut want = PolySeries::from_ints(&[1, 1]);
        for _ in 1..7 {
            want = want.mul(&PolySeries::from_ints(&[1, 1]));
        }
        assert_eq!(k.polynomial(), want.add(&PolySeries::from_ints(&[0, 8])));
        assert_eq!(k.clique_number(), 7);
    }

    #[test]
    fn maximal_cliques_cover_every_clique() {
        for g in graphs_up_to_iso(5).unwrap() {
            let maxi = maximal_cliques(&g).unwrap();
            let counts = clique_data(&g).unwrap().counts;
            let biggest = maxi.iter().map(Vec::len).max().unwrap_or(0);
            assert_eq!(biggest, counts.len() - 1);
            for (a, b) in g.edges() {
                assert!(maxi.iter().any(|c| c.contains(&a) && c.contains(&b)));
            }
        }
    }

    #[test]
    fn isomorphism_class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| graphs_up_to_iso(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn droms_and_chordal_examples() {
        assert_eq!(droms_obstruction(&cycle(4)), Some(Obstruction::Square([0, 1, 2, 3])));
        assert!(!is_chordal(&cycle(4)));
        assert_eq!(droms_obstruction(&path(4)), Some(Obstruction::Path([0, 1, 2, 3])));
        assert!(is_chordal(&path(4)));
        for n in 1..7 {
            assert!(is_droms(&complete(n)) && is_chordal(&complete(n)));
        }
        assert!(!is_chordal(&cycle(5)));
        assert!(is_chordal(&square_ladder(0)));
    }

    #[test]
    fn decomposition_examples() {
        let k3 = complete(3);
        assert_eq!(decompose(&k3).render(&k3), "cone(v0, cone(v1, v2))");
        match decompose(&k7_plus_8()) {
            Decomposition::DisjointUnion(parts) => assert_eq!(parts.len(), 9),
            other => panic!("{other:?}"),
        }
        assert_eq!(decompose(&cycle(4)), Decomposition::Indecomposable(vec![0, 1, 2, 3]));
    }

    #[test]
    fn droms_graphs_decompose_completely() {
        for n in 1..=6 {
            for g in graphs_up_to_iso(n).unwrap() {
                assert_eq!(is_droms(&g), decompose(&g).obstruction().is_none());
                if is_droms(&g) {
                    assert!(is_chordal(&g));
                }
            }
        }
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic_raag(&square_ladder(1)).unwrap(), 1);
        assert_eq!(euler_characteristic_raag(&square_ladder(3)).unwrap(), 3);
        assert_eq!(euler_characteristic_raag(&empty(1)).unwrap(), 0);
        assert_eq!(euler_characteristic_raag(&path(4)).unwrap(), 0);
    }

    #[test]
    fn turan_examples() {
        assert_eq!(turan_bound(7, 3).unwrap(), 16);
        assert_eq!(turan_bound(9, 1).unwrap(), 0);
        assert_eq!(turan_bound(4, 2).unwrap(), 4);
        assert_eq!(clique_lower_bound(4, 4).unwrap(), BigRational::from_integer(2.into()));
        assert!(clique_lower_bound(2, 2).is_err());
        assert!(turan_bound(3, 0).is_err());
    }

    #[test]
    fn turan_matches_brute_force() {
        // most edges without an (r+1)-clique, over all graphs on n vertices
        for n in 1..=6usize {
            let graphs = graphs_up_to_iso(n).unwrap();
            for r in 1..=n as u64 {
                let best = graphs
                    .iter()
                    .filter(|g| clique_data(g).unwrap().clique_number() as u64 <= r)
                    .map(Graph::edge_count)
                    .max()
                    .unwrap();
                assert_eq!(best as u64, turan_bound(n as u64, r).unwrap(), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn raag_presentation_dims() {
        let d = expand_tables(&raag_presentation(Rationals, &empty(3)).unwrap(), 3).unwrap().dims();
        assert_eq!(&d[1..], &[3, 3, 8]);
        let d = expand_tables(&raag_presentation(Rationals, &complete(3)).unwrap(), 3).unwrap().dims();
        assert_eq!(&d[1..], &[3, 0, 0]);
        let p = raag_presentation(Rationals, &cycle(4)).unwrap();
        assert_eq!(p.relations().len(), 4);
        let d = expand_tables(&p, 4).unwrap().dims();
        assert_eq!(&d[1..], &[4, 2, 4, 6]);
    }

    #[test]
    fn graph_errors() {
        assert!(Graph::from_names(&["a"], &[("a", "a")]).is_err());
        assert!(Graph::from_names(&["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
        assert!(Graph::from_names(&["a"], &[("a", "c")]).is_err());
    }

    fn has_induced_long_cycle(g: &Graph) -> bool {
        (0u64..1 << g.len()).filter(|m| m.count_ones() >= 4).any(|m| {
            let h = g.induced(m);
            h.is_connected() && (0..h.len()).all(|v| h.neighbors(v).count_ones() == 2)
        })
    }

    #[test]
    fn lex_bfs_agrees_with_induced_cycle_scan() {
        for n in 1..=6 {
            for g in graphs_up_to_iso(n).unwrap() {
                assert_eq!(is_chordal(&g), !has_induced_long_cycle(&g), "{:?}", g.edges());
            }
        }
    }
}
