//! Fermionic Fock space of `n` modes on each of `N` lattice sites.
//!
//! Operators are sparse matrices over the Gaussian rationals, stored as a
//! pair of integer CSR matrices (real and imaginary parts) over one positive
//! common denominator. Modes are ordered site-major (`m = x·n + A`) and the
//! annihilators carry Jordan-Wigner strings:
//! `a_m |s⟩ = (−1)^{#occupied modes below m} |s − m⟩`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::glc::BracketOps;
use crate::rational::{GaussianRational, Rational};
use crate::report::{CheckReport, Witness};

/// Largest supported total mode count (`n·N`); the space has `2^16` states.
pub const MAX_MODES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("{modes} modes exceed the cap of {MAX_MODES} (2^{MAX_MODES} states)")]
    CapExceeded { modes: usize },
    #[error("a Fock space needs at least one mode")]
    Empty,
}

/// Integer CSR matrix with `ptr.len() == rows + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Csr {
    ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<i64>,
}

impl Csr {
    fn empty(rows: usize) -> Self {
        Self {
            ptr: vec![0; rows + 1],
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    fn nnz(&self) -> usize {
        self.vals.len()
    }

    #[inline]
    fn row(&self, i: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        let (lo, hi) = (self.ptr[i], self.ptr[i + 1]);
        self.cols[lo..hi]
            .iter()
            .map(|&c| c as usize)
            .zip(self.vals[lo..hi].iter().copied())
    }

    fn get(&self, i: usize, j: usize) -> i64 {
        let (lo, hi) = (self.ptr[i], self.ptr[i + 1]);
        match self.cols[lo..hi].binary_search(&(j as u32)) {
            Ok(pos) => self.vals[lo + pos],
            Err(_) => 0,
        }
    }

    fn map_vals(&mut self, f: impl Fn(i64) -> i64) {
        for v in &mut self.vals {
            *v = f(*v);
        }
    }
}

/// Dense scratch row with a list of touched columns.
struct RowAcc {
    vals: Vec<i64>,
    seen: Vec<bool>,
    touched: Vec<u32>,
}

impl RowAcc {
    fn new(dim: usize) -> Self {
        Self {
            vals: vec![0; dim],
            seen: vec![false; dim],
            touched: Vec::new(),
        }
    }

    #[inline]
    fn add(&mut self, j: usize, v: i64) {
        if !self.seen[j] {
            self.seen[j] = true;
            self.touched.push(j as u32);
        }
        self.vals[j] += v;
    }

    fn add_product_row(&mut self, i: usize, coef: i64, x: &Csr, y: &Csr) {
        for (k, xv) in x.row(i) {
            let k_coef = coef * xv;
            for (j, yv) in y.row(k) {
                self.add(j, k_coef * yv);
            }
        }
    }

    fn add_row(&mut self, i: usize, coef: i64, x: &Csr) {
        for (j, v) in x.row(i) {
            self.add(j, coef * v);
        }
    }

    fn all_zero_and_clear(&mut self) -> bool {
        let mut zero = true;
        for &j in &self.touched {
            let j = j as usize;
            zero &= self.vals[j] == 0;
            self.vals[j] = 0;
            self.seen[j] = false;
        }
        self.touched.clear();
        zero
    }

    fn flush_into(&mut self, out: &mut Csr) {
        self.touched.sort_unstable();
        for &j in &self.touched {
            let ju = j as usize;
            let v = self.vals[ju];
            if v != 0 {
                out.cols.push(j);
                out.vals.push(v);
            }
            self.vals[ju] = 0;
            self.seen[ju] = false;
        }
        self.touched.clear();
        out.ptr.push(out.vals.len());
    }
}

/// Which part of the result a term feeds.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Re,
    Im,
}

/// A sparse operator on a Fock space, `(re + i·im) / denom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeOp {
    dim: usize,
    denom: i64,
    re: Csr,
    im: Csr,
}

impl LatticeOp {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            denom: 1,
            re: Csr::empty(dim),
            im: Csr::empty(dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let re = Csr {
            ptr: (0..=dim).collect(),
            cols: (0..dim as u32).collect(),
            vals: vec![1; dim],
        };
        Self {
            dim,
            denom: 1,
            re,
            im: Csr::empty(dim),
        }
    }

    /// Real integer operator from `(row, col, value)` triplets; duplicates add.
    fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, i64)>) -> Self {
        triplets.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut acc = RowAcc::new(dim);
        let mut re = Csr {
            ptr: vec![0],
            cols: Vec::with_capacity(triplets.len()),
            vals: Vec::with_capacity(triplets.len()),
        };
        let mut it = triplets.into_iter().peekable();
        for i in 0..dim {
            while let Some(&(_, j, v)) = it.peek().filter(|t| t.0 == i) {
                acc.add(j, v);
                it.next();
            }
            acc.flush_into(&mut re);
        }
        Self::normalized(dim, 1, re, Csr::empty(dim))
    }

    fn normalized(dim: usize, denom: i64, mut re: Csr, mut im: Csr) -> Self {
        debug_assert!(denom != 0);
        let mut g = denom.abs();
        for &v in re.vals.iter().chain(&im.vals) {
            if g == 1 {
                break;
            }
            g = g.gcd(&v);
        }
        let mut denom = denom;
        if re.nnz() == 0 && im.nnz() == 0 {
            denom = 1;
        } else {
            if denom < 0 {
                g = -g;
            }
            if g != 1 {
                re.map_vals(|v| v / g);
                im.map_vals(|v| v / g);
                denom /= g;
            }
        }
        Self { dim, denom, re, im }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored non-zero entries (real and imaginary parts counted
    /// separately).
    pub fn nnz(&self) -> usize {
        self.re.nnz() + self.im.nnz()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn is_real(&self) -> bool {
        self.im.nnz() == 0
    }

    pub fn get(&self, i: usize, j: usize) -> GaussianRational {
        GaussianRational::new(
            Rational::new(self.re.get(i, j).into(), self.denom.into()),
            Rational::new(self.im.get(i, j).into(), self.denom.into()),
        )
    }

    /// Whether the operator preserves fermion-number parity.
    pub fn is_even(&self) -> bool {
        (0..self.dim).all(|i| {
            self.re
                .row(i)
                .chain(self.im.row(i))
                .all(|(j, _)| (i.count_ones() + j.count_ones()) % 2 == 0)
        })
    }

    fn parts(&self, part: Part) -> &Csr {
        match part {
            Part::Re => &self.re,
            Part::Im => &self.im,
        }
    }

    fn assert_same_dim(&self, other: &Self) {
        assert_eq!(
            self.dim, other.dim,
            "operators act on different Fock spaces"
        );
    }

    /// Product terms of `coef · a·b` as `(coef, x, y, target)`.
    fn push_product_terms<'a>(
        terms: &mut Vec<(i64, &'a Csr, &'a Csr, Part)>,
        coef: i64,
        a: &'a LatticeOp,
        b: &'a LatticeOp,
    ) {
        a.assert_same_dim(b);
        let combos = [
            (coef, Part::Re, Part::Re, Part::Re),
            (-coef, Part::Im, Part::Im, Part::Re),
            (coef, Part::Re, Part::Im, Part::Im),
            (coef, Part::Im, Part::Re, Part::Im),
        ];
        for (k, pa, pb, target) in combos {
            let (x, y) = (a.parts(pa), b.parts(pb));
            if x.nnz() > 0 && y.nnz() > 0 {
                terms.push((k, x, y, target));
            }
        }
    }

    /// `Σ coef·[a, b]` over a list of pairs, all over the same denominator
    /// after scaling; returns the product terms and that denominator.
    fn commutator_terms<'a>(
        pairs: &[(i64, &'a LatticeOp, &'a LatticeOp)],
        anti: bool,
    ) -> (Vec<(i64, &'a Csr, &'a Csr, Part)>, i64) {
        let denom = pairs
            .iter()
            .fold(1i64, |l, (_, a, b)| l.lcm(&(a.denom * b.denom)));
        let mut terms = Vec::new();
        for &(coef, a, b) in pairs {
            let k = coef * (denom / (a.denom * b.denom));
            Self::push_product_terms(&mut terms, k, a, b);
            Self::push_product_terms(&mut terms, if anti { k } else { -k }, b, a);
        }
        (terms, denom)
    }

    fn evaluate(dim: usize, terms: &[(i64, &Csr, &Csr, Part)], denom: i64) -> Self {
        let mut acc_re = RowAcc::new(dim);
        let mut acc_im = RowAcc::new(dim);
        let mut re = Csr {
            ptr: vec![0],
            cols: Vec::new(),
            vals: Vec::new(),
        };
        let mut im = Csr {
            ptr: vec![0],
            cols: Vec::new(),
            vals: Vec::new(),
        };
        for i in 0..dim {
            for &(k, x, y, target) in terms {
                match target {
                    Part::Re => acc_re.add_product_row(i, k, x, y),
                    Part::Im => acc_im.add_product_row(i, k, x, y),
                }
            }
            acc_re.flush_into(&mut re);
            acc_im.flush_into(&mut im);
        }
        Self::normalized(dim, denom, re, im)
    }

    /// Whether the products described by `terms` (over `denom`) equal `rhs`,
    /// checked row by row without building the product.
    fn evaluate_equals(terms: &[(i64, &Csr, &Csr, Part)], denom: i64, rhs: &LatticeOp) -> bool {
        let dim = rhs.dim;
        let mut acc_re = RowAcc::new(dim);
        let mut acc_im = RowAcc::new(dim);
        for i in 0..dim {
            for &(k, x, y, target) in terms {
                let k = k * rhs.denom;
                match target {
                    Part::Re => acc_re.add_product_row(i, k, x, y),
                    Part::Im => acc_im.add_product_row(i, k, x, y),
                }
            }
            acc_re.add_row(i, -denom, &rhs.re);
            acc_im.add_row(i, -denom, &rhs.im);
            let re_zero = acc_re.all_zero_and_clear();
            let im_zero = acc_im.all_zero_and_clear();
            if !(re_zero && im_zero) {
                return false;
            }
        }
        true
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        Self::push_product_terms(&mut terms, 1, self, other);
        Self::evaluate(self.dim, &terms, self.denom * other.denom)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        let (terms, denom) = Self::commutator_terms(&[(1, self, other)], false);
        Self::evaluate(self.dim, &terms, denom)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        let (terms, denom) = Self::commutator_terms(&[(1, self, other)], true);
        Self::evaluate(self.dim, &terms, denom)
    }

    /// Whether `Σ coef·[a, b] == rhs`.
    pub fn commutators_equal(pairs: &[(i64, &LatticeOp, &LatticeOp)], rhs: &LatticeOp) -> bool {
        let (terms, denom) = Self::commutator_terms(pairs, false);
        Self::evaluate_equals(&terms, denom, rhs)
    }

    /// Whether `{a, b} == rhs`.
    pub fn anticommutator_equals(a: &LatticeOp, b: &LatticeOp, rhs: &LatticeOp) -> bool {
        let (terms, denom) = Self::commutator_terms(&[(1, a, b)], true);
        Self::evaluate_equals(&terms, denom, rhs)
    }

    /// `Σ q·op` with Gaussian-rational coefficients.
    pub fn lincomb(dim: usize, terms: &[(GaussianRational, &LatticeOp)]) -> Self {
        let to_i64 = |q: &Rational| -> (i64, i64) {
            (
                i64::try_from(*q.numer()).expect("coefficient numerator fits in i64"),
                i64::try_from(*q.denom()).expect("coefficient denominator fits in i64"),
            )
        };
        let mut denom = 1i64;
        let mut scaled = Vec::with_capacity(terms.len());
        for (q, op) in terms {
            assert_eq!(op.dim, dim, "operators act on different Fock spaces");
            let (xn, xd) = to_i64(&q.re);
            let (yn, yd) = to_i64(&q.im);
            denom = denom.lcm(&(xd * op.denom)).lcm(&(yd * op.denom));
            scaled.push((xn, xd, yn, yd, *op));
        }
        // (x + iy)(re + i·im) = (x·re − y·im) + i(x·im + y·re)
        let mut parts: Vec<(i64, &Csr, Part)> = Vec::new();
        for &(xn, xd, yn, yd, op) in &scaled {
            let x = xn * (denom / (xd * op.denom));
            let y = yn * (denom / (yd * op.denom));
            for (k, src, target) in [
                (x, &op.re, Part::Re),
                (-y, &op.im, Part::Re),
                (x, &op.im, Part::Im),
                (y, &op.re, Part::Im),
            ] {
                if k != 0 && src.nnz() > 0 {
                    parts.push((k, src, target));
                }
            }
        }
        let mut acc_re = RowAcc::new(dim);
        let mut acc_im = RowAcc::new(dim);
        let mut re = Csr {
            ptr: vec![0],
            cols: Vec::new(),
            vals: Vec::new(),
        };
        let mut im = Csr {
            ptr: vec![0],
            cols: Vec::new(),
            vals: Vec::new(),
        };
        for i in 0..dim {
            for &(k, src, target) in &parts {
                match target {
                    Part::Re => acc_re.add_row(i, k, src),
                    Part::Im => acc_im.add_row(i, k, src),
                }
            }
            acc_re.flush_into(&mut re);
            acc_im.flush_into(&mut im);
        }
        Self::normalized(dim, denom, re, im)
    }

    pub fn scale(&self, q: GaussianRational) -> Self {
        Self::lincomb(self.dim, &[(q, self)])
    }

    pub fn add(&self, other: &Self) -> Self {
        let one = GaussianRational::one();
        Self::lincomb(self.dim, &[(one, self), (one, other)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let one = GaussianRational::one();
        Self::lincomb(self.dim, &[(one, self), (-one, other)])
    }
}

/// The commutator bracket on lattice operators.
#[derive(Clone, Copy, Debug)]
pub struct LatticeCommutator {
    pub dim: usize,
}

impl BracketOps for LatticeCommutator {
    type Op = LatticeOp;

    fn bracket(&self, a: &LatticeOp, b: &LatticeOp) -> LatticeOp {
        a.commutator(b)
    }

    fn combine(&self, terms: &[(Rational, &LatticeOp)]) -> LatticeOp {
        let terms: Vec<(GaussianRational, &LatticeOp)> = terms
            .iter()
            .map(|&(q, op)| (GaussianRational::new(q, Rational::zero()), op))
            .collect();
        LatticeOp::lincomb(self.dim, &terms)
    }

    fn equal(&self, a: &LatticeOp, b: &LatticeOp) -> bool {
        a == b
    }

    fn is_zero(&self, a: &LatticeOp) -> bool {
        a.is_zero()
    }

    fn bracket_equals(&self, a: &LatticeOp, b: &LatticeOp, rhs: &LatticeOp) -> bool {
        LatticeOp::commutators_equal(&[(1, a, b)], rhs)
    }
}

/// Creation and annihilation operators of `n` modes on `N` sites.
#[derive(Clone, Debug)]
pub struct FockOps {
    n: usize,
    sites: usize,
    a: Vec<LatticeOp>,
    adag: Vec<LatticeOp>,
}

impl FockOps {
    pub fn modes_per_site(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        1 << (self.n * self.sites)
    }

    /// `a_A(x)`, 0-based.
    pub fn annihilator(&self, mode: usize, site: usize) -> &LatticeOp {
        &self.a[site * self.n + mode]
    }

    /// `a†_A(x)`, 0-based.
    pub fn creator(&self, mode: usize, site: usize) -> &LatticeOp {
        &self.adag[site * self.n + mode]
    }

    pub fn identity(&self) -> LatticeOp {
        LatticeOp::identity(self.dim())
    }
}

pub fn build_fock(n: usize, sites: usize) -> Result<FockOps, FockError> {
    let modes = n * sites;
    if modes == 0 {
        return Err(FockError::Empty);
    }
    if modes > MAX_MODES {
        return Err(FockError::CapExceeded { modes });
    }
    let dim = 1usize << modes;
    let mut a = Vec::with_capacity(modes);
    let mut adag = Vec::with_capacity(modes);
    for m in 0..modes {
        let bit = 1usize << m;
        let below = bit - 1;
        let mut lower = Vec::with_capacity(dim / 2);
        let mut raise = Vec::with_capacity(dim / 2);
        for s in (0..dim).filter(|s| s & bit != 0) {
            let sign = if (s & below).count_ones() & 1 == 0 {
                1
            } else {
                -1
            };
            // a_m |s⟩ = sign |s − m⟩ and a†_m |s − m⟩ = sign |s⟩
            lower.push((s ^ bit, s, sign));
            raise.push((s, s ^ bit, sign));
        }
        a.push(LatticeOp::from_triplets(dim, lower));
        adag.push(LatticeOp::from_triplets(dim, raise));
    }
    Ok(FockOps { n, sites, a, adag })
}

/// `{a_m, a†_m'} = δ·1`, `{a_m, a_m'} = 0`, `{a†_m, a†_m'} = 0` for every
/// pair of modes.
pub fn check_car(ops: &FockOps) -> CheckReport {
    let modes = ops.a.len();
    let one = ops.identity();
    let zero = LatticeOp::zero(ops.dim());
    let label = |m: usize| format!("{}@{}", m % ops.n + 1, m / ops.n + 1);
    for m in 0..modes {
        for k in 0..modes {
            let expected = if m == k { &one } else { &zero };
            if !LatticeOp::anticommutator_equals(&ops.a[m], &ops.adag[k], expected) {
                return CheckReport::fail(
                    "car",
                    Witness::new(vec![m, k], format!("{{a_{}, a†_{}}}", label(m), label(k))),
                );
            }
            if k >= m {
                if !LatticeOp::anticommutator_equals(&ops.a[m], &ops.a[k], &zero) {
                    return CheckReport::fail(
                        "car",
                        Witness::new(vec![m, k], format!("{{a_{}, a_{}}}", label(m), label(k))),
                    );
                }
                if !LatticeOp::anticommutator_equals(&ops.adag[m], &ops.adag[k], &zero) {
                    return CheckReport::fail(
                        "car",
                        Witness::new(vec![m, k], format!("{{a†_{}, a†_{}}}", label(m), label(k))),
                    );
                }
            }
        }
    }
    CheckReport::pass("car")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{imag_unit, int, real};

    #[test]
    fn single_mode() {
        let f = build_fock(1, 1).unwrap();
        let a = f.annihilator(0, 0);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.get(0, 1), real(int(1)));
        assert_eq!(a.get(0, 0), real(int(0)));
        assert_eq!(a.get(1, 0), real(int(0)));
        assert_eq!(a.get(1, 1), real(int(0)));
        assert!(check_car(&f).passed);
    }

    #[test]
    fn two_modes_anticommute() {
        let f = build_fock(2, 1).unwrap();
        let ac = f.annihilator(0, 0).anticommutator(f.creator(1, 0));
        assert!(ac.is_zero());
        assert!(check_car(&f).passed);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            build_fock(8, 3).unwrap_err(),
            FockError::CapExceeded { modes: 24 }
        );
        assert_eq!(build_fock(0, 2).unwrap_err(), FockError::Empty);
    }

    #[test]
    fn number_operator_counts() {
        let f = build_fock(3, 1).unwrap();
        let mut n = LatticeOp::zero(f.dim());
        for m in 0..3 {
            n = n.add(&f.creator(m, 0).mul(f.annihilator(m, 0)));
        }
        for s in 0..8usize {
            assert_eq!(n.get(s, s), real(int(s.count_ones().into())));
        }
        assert!(n.is_even());
        assert!(!f.annihilator(0, 0).is_even());
    }

    #[test]
    fn arithmetic_normalizes() {
        let f = build_fock(2, 1).unwrap();
        let a = f.annihilator(0, 0);
        let half = a.scale(real(crate::rational::rat(1, 2)));
        assert_eq!(half.add(&half), *a);
        let ia = a.scale(imag_unit());
        assert!(!ia.is_real());
        assert_eq!(ia.scale(imag_unit()), a.scale(real(int(-1))));
        assert!(a.sub(a).is_zero());
    }

    #[test]
    fn fused_commutator_matches_materialized() {
        let f = build_fock(3, 1).unwrap();
        let x = f.creator(0, 0).mul(f.annihilator(1, 0)).scale(imag_unit());
        let y = f
            .creator(1, 0)
            .mul(f.annihilator(2, 0))
            .scale(real(crate::rational::rat(2, 3)));
        let c = x.commutator(&y);
        assert!(!c.is_zero());
        assert!(LatticeOp::commutators_equal(&[(1, &x, &y)], &c));
        assert!(!LatticeOp::commutators_equal(&[(1, &y, &x)], &c));
        assert!(LatticeOp::commutators_equal(
            &[(1, &x, &y), (1, &y, &x)],
            &LatticeOp::zero(8)
        ));
    }

    #[test]
    fn car_two_sites() {
        let f = build_fock(2, 2).unwrap();
        assert!(check_car(&f).passed);
        assert!(f
            .annihilator(1, 0)
            .anticommutator(f.creator(1, 1))
            .is_zero());
    }
}
