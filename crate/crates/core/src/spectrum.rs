//! Poincaré polynomials and what they constrain: eigenvalues, Newton
//! inequalities, the b2 bound, divisibility of `1/H_U`, and the center.
//!
//! Root finding is the only floating-point code in the crate; every verdict
//! here other than the eigenvalues themselves is exact.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::arith::PolySeries;
use crate::cohomology::BettiTable;
use crate::error::{Error, Result};
use crate::raag::CliqueData;

/// Where a Poincaré polynomial came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoincareSource {
    /// Diagonal of a Betti table computed through degree `cutoff`; treated as
    /// complete only because the caller asserts so.
    BettiDiagonal { cutoff: u32 },
    /// Clique polynomial of a graph (exact for RAAGs).
    CliquePolynomial,
    /// Supplied coefficients.
    Given,
    /// Supplied coefficients exempt from the sign check, for probing the
    /// positivity diagnostics with polynomials no algebra can have.
    Hypothetical,
}

/// `P(t) = sum b_i t^i` with `b_0 = 1` and `b_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincarePoly {
    coeffs: Vec<BigInt>,
    source: PoincareSource,
}

impl PoincarePoly {
    pub fn new(coeffs: Vec<BigInt>, source: PoincareSource) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.first() != Some(&BigInt::one()) {
            return Err(Error::Domain("a Poincaré polynomial has constant term 1".into()));
        }
        if source != PoincareSource::Hypothetical && coeffs.iter().any(Signed::is_negative) {
            return Err(Error::Domain("a Poincaré polynomial has nonnegative coefficients".into()));
        }
        Ok(PoincarePoly { coeffs, source })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), PoincareSource::Given)
    }

    pub fn hypothetical(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), PoincareSource::Hypothetical)
    }

    pub fn from_betti(b: &BettiTable) -> Result<Self> {
        let diag = b.diagonal().iter().map(|&x| BigInt::from(x)).collect();
        Self::new(diag, PoincareSource::BettiDiagonal { cutoff: b.max_degree() })
    }

    pub fn from_cliques(c: &CliqueData) -> Result<Self> {
        Self::new(c.counts.iter().map(|&x| BigInt::from(x)).collect(), PoincareSource::CliquePolynomial)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn source(&self) -> &PoincareSource {
        &self.source
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: i64) -> BigInt {
        let t = BigInt::from(t);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &t + c)
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.eval(-1)
    }

    pub fn to_series(&self) -> PolySeries {
        PolySeries::polynomial(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }
}

type QPoly = Vec<BigRational>;

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn deriv(p: &QPoly) -> QPoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect())
}

fn divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                r[k + i] -= &c * bc;
            }
        }
        q[k] = c;
    }
    (trim(q), trim(r))
}

fn monic(p: QPoly) -> QPoly {
    let lead = p.last().expect("nonzero polynomial").clone();
    p.into_iter().map(|c| c / &lead).collect()
}

fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

fn exact_div(a: &QPoly, b: &QPoly) -> QPoly {
    divrem(a, b).0
}

/// Yun's square-free factorization of a monic polynomial of degree >= 1.
fn square_free(f: &QPoly) -> Vec<(QPoly, usize)> {
    let fp = deriv(f);
    let a0 = gcd(f, &fp);
    let mut b = exact_div(f, &a0);
    let c = exact_div(&fp, &a0);
    let mut d = trim(sub(&c, &deriv(&b)));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = if d.is_empty() { b.clone() } else { gcd(&b, &d) };
        b = exact_div(&b, &a);
        let c = if d.is_empty() { Vec::new() } else { exact_div(&d, &a) };
        d = trim(sub(&c, &deriv(&b)));
        if a.len() > 1 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(BigRational::zero) - b.get(i).cloned().unwrap_or_else(BigRational::zero))
        .collect()
}

fn horner(p: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// `|p(z)| / sum |a_i| |z|^i`, the relative backward error at `z`.
fn backward_error(p: &[f64], z: Complex64) -> f64 {
    let (v, _) = horner(p, z);
    let scale: f64 = p.iter().rev().fold(0.0, |acc, c| acc * z.norm() + Float::abs(*c));
    if scale == 0.0 {
        0.0
    } else {
        v.norm() / scale
    }
}

/// Iteration cap for the simultaneous root iteration.
pub const MAX_ITERATIONS: usize = 2000;

/// Aberth–Ehrlich iteration on a square-free polynomial (coefficients low to
/// high, degree >= 1). Returns the roots and the worst backward error.
fn aberth(p: &[f64]) -> (Vec<Complex64>, f64) {
    let m = p.len() - 1;
    let lead = p[m];
    let p: Vec<f64> = p.iter().map(|c| c / lead).collect();
    if m == 1 {
        let z = Complex64::new(-p[0], 0.0);
        return (vec![z], backward_error(&p, z));
    }
    let radius = (1..=m)
        .map(|i| Float::powf(Float::abs(p[m - i]), 1.0 / i as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| {
            let angle = 2.0 * core::f64::consts::PI * k as f64 / m as f64 + 0.4;
            Complex64::new(radius * Float::cos(angle), radius * Float::sin(angle))
        })
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut moved = 0.0f64;
        for k in 0..m {
            let (v, d) = horner(&p, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..m {
                if j != k {
                    s += (z[k] - z[j]).inv();
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    let worst = z.iter().map(|&r| backward_error(&p, r)).fold(0.0, f64::max);
    (z, worst)
}

/// One eigenvalue with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigenvalue {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// The `lambda_i` with `P(t) = prod (1 + lambda_i t)`. Non-real values come
/// in adjacent conjugate pairs, positive imaginary part first.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueSet {
    pub eigenvalues: Vec<Eigenvalue>,
    /// Worst relative backward error of the root iteration.
    pub residual: f64,
}

/// Roots closer than this are merged.
pub const CLUSTER_RADIUS: f64 = 1e-7;
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

impl EigenvalueSet {
    pub fn count(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }

    /// Coefficients of `prod (1 + lambda_i t)^m_i`.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let mut acc = vec![Complex64::new(1.0, 0.0)];
        for e in &self.eigenvalues {
            for _ in 0..e.multiplicity {
                let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
                for (i, c) in acc.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] += c * e.value;
                }
                acc = next;
            }
        }
        acc
    }

    /// Largest `|c_i - b_i| / max(1, |b_i|)` between the reconstruction and `p`.
    pub fn reconstruction_error(&self, p: &PoincarePoly) -> f64 {
        let r = self.reconstruct();
        (0..r.len().max(p.coeffs().len()))
            .map(|i| {
                let b = p.coeff(i).to_f64().unwrap_or(f64::INFINITY);
                let c = r.get(i).copied().unwrap_or_default();
                (c - b).norm() / Float::abs(b).max(1.0)
            })
            .fold(0.0, f64::max)
    }

    /// Eigenvalues with positive imaginary part; each stands for a conjugate pair.
    pub fn conjugate_pairs(&self) -> Vec<Eigenvalue> {
        self.eigenvalues.iter().copied().filter(|e| e.value.im > 0.0).collect()
    }
}

/// Eigenvalues of `p` by square-free factorization (exact) followed by
/// Aberth iteration on each factor of `s^n P(1/s) = prod (s + lambda_i)`.
pub fn eigenvalues(p: &PoincarePoly, tol: f64) -> Result<EigenvalueSet> {
    let n = p.degree();
    if n == 0 {
        return Ok(EigenvalueSet {
            eigenvalues: Vec::new(),
            residual: 0.0,
        });
    }
    let reversed: QPoly = p.coeffs().iter().rev().map(|c| BigRational::from_integer(c.clone())).collect();
    let mut roots: Vec<Eigenvalue> = Vec::new();
    let mut residual = 0.0f64;
    for (factor, mult) in square_free(&monic(reversed)) {
        let fl: Vec<f64> = factor.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        let (zs, err) = aberth(&fl);
        residual = residual.max(err);
        for s in zs {
            roots.push(Eigenvalue { value: -s, multiplicity: mult });
        }
    }
    if !(residual < tol) {
        return Err(Error::NoConvergence { residual });
    }
    let mut merged: Vec<Eigenvalue> = Vec::new();
    for r in roots {
        match merged.iter_mut().find(|m| (m.value - r.value).norm() < CLUSTER_RADIUS) {
            Some(m) => m.multiplicity += r.multiplicity,
            None => merged.push(r),
        }
    }
    Ok(EigenvalueSet {
        eigenvalues: pair_up(merged),
        residual,
    })
}

fn pair_up(mut values: Vec<Eigenvalue>) -> Vec<Eigenvalue> {
    let real_tol = |z: Complex64| 1e-9 * z.norm().max(1.0);
    let mut out: Vec<Eigenvalue> = Vec::new();
    values.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(b.value.im.total_cmp(&a.value.im)));
    let mut used = vec![false; values.len()];
    for i in 0..values.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let e = values[i];
        if e.value.im.abs() <= real_tol(e.value) {
            out.push(Eigenvalue {
                value: Complex64::new(e.value.re, 0.0),
                multiplicity: e.multiplicity,
            });
            continue;
        }
        let partner = (0..values.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| {
                let da = (values[a].value - e.value.conj()).norm();
                let db = (values[b].value - e.value.conj()).norm();
                da.total_cmp(&db)
            });
        let upper = if e.value.im > 0.0 { e.value } else { e.value.conj() };
        let avg = match partner {
            Some(j) => {
                used[j] = true;
                let other = values[j].value;
                let other_up = if other.im > 0.0 { other } else { other.conj() };
                (upper + other_up) * 0.5
            }
            None => upper,
        };
        out.push(Eigenvalue { value: avg, multiplicity: e.multiplicity });
        out.push(Eigenvalue {
            value: avg.conj(),
            multiplicity: e.multiplicity,
        });
    }
    out
}

/// Real eigenvalues, and those among them that are not positive.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityReport {
    pub real: Vec<Eigenvalue>,
    pub violations: Vec<Eigenvalue>,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Flags real eigenvalues `<= 0`; an algebra of type FP has none.
pub fn positivity_report(e: &EigenvalueSet, tol: f64) -> PositivityReport {
    let real: Vec<Eigenvalue> = e.eigenvalues.iter().copied().filter(|x| x.value.im.abs() <= tol * x.value.norm().max(1.0)).collect();
    let violations = real.iter().copied().filter(|x| x.value.re <= tol).collect();
    PositivityReport { real, violations }
}

/// `(n - 1) b1^2 - 2 n b2`.
pub fn omega_b2(b1: &BigInt, b2: &BigInt, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Usage("omega needs n >= 1".into()));
    }
    let n = BigInt::from(n);
    Ok((&n - 1) * b1 * b1 - BigInt::from(2) * n * b2)
}

/// One Newton inequality with its exact slack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonVerdict {
    pub j: usize,
    pub n: usize,
    /// `j(n-j) / ((j+1)(n-j+1)) b_j^2 - b_(j-1) b_(j+1)`.
    pub slack: BigRational,
}

impl NewtonVerdict {
    pub fn passed(&self) -> bool {
        !self.slack.is_negative()
    }
}

/// `b_(j-1) b_(j+1) <= j(n-j) / ((j+1)(n-j+1)) b_j^2` with `n = deg P`.
pub fn newton_check(p: &PoincarePoly, j: usize) -> Result<NewtonVerdict> {
    let n = p.degree();
    if j == 0 || j >= n {
        return Err(Error::Usage(alloc::format!("Newton inequality index {j} outside 1..{n}")));
    }
    let factor = BigRational::new(BigInt::from(j * (n - j)), BigInt::from((j + 1) * (n - j + 1)));
    let bj = BigRational::from_integer(p.coeff(j));
    let lhs = BigRational::from_integer(p.coeff(j - 1) * p.coeff(j + 1));
    Ok(NewtonVerdict {
        j,
        n,
        slack: factor * &bj * &bj - lhs,
    })
}

/// Outcome of the divisibility test for one center degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Divisibility {
    Divisible,
    /// The coefficients of residue class `residue` mod `n` sum to `sum != 0`.
    NotDivisible { residue: usize, sum: BigRational },
    /// The inverse has no trailing zero inside the window.
    NotPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BogvadReport {
    /// `1/H_U` modulo `t^(window+1)`.
    pub inverse: PolySeries,
    pub window: usize,
    pub per_degree: Vec<(u32, Divisibility)>,
}

impl BogvadReport {
    pub fn passed(&self) -> bool {
        self.per_degree.iter().all(|(_, v)| *v == Divisibility::Divisible)
    }
}

/// Inverts `H_U` on its window and tests divisibility of the (apparent)
/// polynomial `1/H_U` by `1 - t^n` for each center degree `n`: it holds iff
/// every residue class mod `n` has coefficient sum zero.
pub fn bogvad_divisibility(h_u: &PolySeries, center_degrees: &[u32]) -> Result<BogvadReport> {
    let window = h_u
        .truncation()
        .ok_or_else(|| Error::Usage("expected a truncated series for H_U".into()))?;
    let inverse = h_u.inv(window)?;
    let last = (0..=window).rev().find(|&k| !inverse.coeff(k).is_zero()).unwrap_or(0);
    let looks_polynomial = last < window;
    let mut per_degree = Vec::new();
    let mut degrees: Vec<u32> = center_degrees.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    for n in degrees {
        if n == 0 {
            return Err(Error::Usage("center degrees are positive".into()));
        }
        let verdict = if !looks_polynomial {
            Divisibility::NotPolynomial
        } else {
            let mut sums = vec![BigRational::zero(); n as usize];
            for k in 0..=last {
                sums[k % n as usize] += inverse.coeff(k);
            }
            match sums.into_iter().enumerate().find(|(_, s)| !s.is_zero()) {
                Some((residue, sum)) => Divisibility::NotDivisible { residue, sum },
                None => Divisibility::Divisible,
            }
        };
        per_degree.push((n, verdict));
    }
    Ok(BogvadReport {
        inverse,
        window,
        per_degree,
    })
}

/// `P(1) >= 2^z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrcVerdict {
    pub total: BigInt,
    pub bound: BigInt,
}

impl TrcVerdict {
    pub fn passed(&self) -> bool {
        self.total >= self.bound
    }
}

pub fn trc_check(p: &PoincarePoly, z: usize) -> TrcVerdict {
    TrcVerdict {
        total: p.eval(1),
        bound: BigInt::one() << z,
    }
}

/// Why a center degree is incompatible with an asserted property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterFlag {
    /// A Koszul algebra has its center in odd degrees.
    EvenDegree(u32),
    /// A Koszul algebra has its center below `cd/2 + 1`.
    AboveHalfCd { degree: u32, cd: usize },
    /// A BK algebra has its center in degree 1.
    NotDegreeOne(u32),
}

/// Checks center degrees against asserted Koszulity (with optional
/// cohomological dimension) and the BK property.
pub fn center_constraints(center_degrees: &[u32], cd: Option<usize>, koszul: bool, bk: bool) -> Vec<CenterFlag> {
    let mut degrees: Vec<u32> = center_degrees.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    let mut flags = Vec::new();
    for d in degrees {
        if koszul && d % 2 == 0 {
            flags.push(CenterFlag::EvenDegree(d));
        }
        if let (true, Some(cd)) = (koszul, cd) {
            if 2 * d as usize >= cd + 2 {
                flags.push(CenterFlag::AboveHalfCd { degree: d, cd });
            }
        }
        if bk && d != 1 {
            flags.push(CenterFlag::NotDegreeOne(d));
        }
    }
    flags
}
