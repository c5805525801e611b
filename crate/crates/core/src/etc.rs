//! Canonical fermionic fields on a lattice, their Noether charge densities
//! built from a generator set, and exact checks of the equal-time commutator
//! (ETC) algebra of those densities and of the integrated charges.
//!
//! Conventions. The fields are `u^A(x) = a_A(x)` and `p_A(x) = −i a†_A(x)`,
//! so the postulated graded bracket `{p_A(x), u^B(y)} = −i δ_A^B δ_xy` holds.
//! A density `s(M) = p M u` equals `−i Q(M)` with `Q(M) = a† M a`, and
//! `[Q(M), Q(N)] = Q([M, N])` turns into `[s(M), s(N)] = ε i s([M, N])` with
//! `ε = −1`. Every density relation is therefore checked with `i` replaced by
//! `εi`, and the charges `σ = −i Σ_x s(x)` equal `−Q`, so the theorem table is
//! checked on `κσ, κτ, κΥ` with `κ = −1`. The lattice delta `δ_xy` is a
//! Kronecker delta.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::StructureTensor;
use crate::birep::GeneratorSet;
use crate::envelope::{yamaguti_constants, YamagutiTensor};
use crate::fock::{FockOps, LatticeCommutator, LatticeOp};
use crate::glc::{GlcTable, Scan};
use crate::linalg::Matrix;
use crate::rational::{imag_unit, int, rat, real, GaussianRational, Rational};
use crate::report::{CheckReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EtcError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Sign conventions relating the lattice operators to the abstract tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Convention {
    /// Density relations hold with `i` replaced by `epsilon·i`.
    pub epsilon: i8,
    /// Charges are rescaled by `kappa` before the theorem table is checked.
    pub kappa: i8,
}

/// The convention forced by `[Q(M), Q(N)] = Q([M, N])` for fermions.
pub const FERMIONIC: Convention = Convention {
    epsilon: -1,
    kappa: -1,
};

impl Convention {
    fn ei(&self) -> GaussianRational {
        imag_unit() * real(int(self.epsilon.into()))
    }

    pub fn header(&self) -> String {
        let sign = |k: i8| if k < 0 { "-" } else { "+" };
        format!(
            "u = a, p = -i a†, density s(M) = p M u = -i a†Ma; delta(x-y) = Kronecker; \
             density ETCs checked with i -> {}i; charges checked as {}(sigma, tau, Upsilon)",
            sign(self.epsilon),
            sign(self.kappa)
        )
    }
}

/// Canonical fields `u^A(x)` and momenta `p_A(x)`.
#[derive(Clone, Debug)]
pub struct FieldSet {
    n: usize,
    sites: usize,
    dim: usize,
    u: Vec<LatticeOp>,
    p: Vec<LatticeOp>,
}

impl FieldSet {
    /// `u = a`, `p = −i a†`.
    pub fn canonical(ops: &FockOps) -> Self {
        let (n, sites) = (ops.modes_per_site(), ops.sites());
        let minus_i = -imag_unit();
        let mut u = Vec::with_capacity(n * sites);
        let mut p = Vec::with_capacity(n * sites);
        for x in 0..sites {
            for a in 0..n {
                u.push(ops.annihilator(a, x).clone());
                p.push(ops.creator(a, x).scale(minus_i));
            }
        }
        Self {
            n,
            sites,
            dim: ops.dim(),
            u,
            p,
        }
    }

    /// Arbitrary fields, indexed `x·n + A`.
    pub fn from_parts(
        n: usize,
        sites: usize,
        u: Vec<LatticeOp>,
        p: Vec<LatticeOp>,
    ) -> Result<Self, EtcError> {
        if n == 0 || sites == 0 || u.len() != n * sites || p.len() != n * sites {
            return Err(EtcError::DimensionMismatch(format!(
                "{} fields and {} momenta for {n} modes on {sites} sites",
                u.len(),
                p.len()
            )));
        }
        let dim = u[0].dim();
        if u.iter().chain(&p).any(|op| op.dim() != dim) {
            return Err(EtcError::DimensionMismatch(
                "fields act on different spaces".into(),
            ));
        }
        Ok(Self {
            n,
            sites,
            dim,
            u,
            p,
        })
    }

    pub fn modes_per_site(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn u(&self, a: usize, x: usize) -> &LatticeOp {
        &self.u[x * self.n + a]
    }

    pub fn p(&self, a: usize, x: usize) -> &LatticeOp {
        &self.p[x * self.n + a]
    }

    /// `Σ_AB p_A(x) M_AB u^B(x)`.
    pub fn density(&self, m: &Matrix, x: usize) -> LatticeOp {
        let products: Vec<(GaussianRational, LatticeOp)> = (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| !m.get(a, b).is_zero())
            .map(|(a, b)| (real(m.get(a, b)), self.p(a, x).mul(self.u(b, x))))
            .collect();
        let terms: Vec<(GaussianRational, &LatticeOp)> =
            products.iter().map(|(q, op)| (*q, op)).collect();
        LatticeOp::lincomb(self.dim, &terms)
    }

    /// `a† M a` at site `x`, written through the fields as `i·p M u`.
    pub fn bilinear(&self, m: &Matrix, x: usize) -> LatticeOp {
        self.density(m, x).scale(imag_unit())
    }
}

/// Graded canonical brackets: `{p_A(x), u^B(y)} = −i δ_A^B δ_xy`,
/// `{u, u} = 0`, `{p, p} = 0`.
pub fn canonical_etc_check(f: &FieldSet) -> CheckReport {
    let modes = f.n * f.sites;
    let zero = LatticeOp::zero(f.dim);
    let minus_i = LatticeOp::identity(f.dim).scale(-imag_unit());
    let label = |m: usize| format!("{}@{}", m % f.n + 1, m / f.n + 1);
    for m in 0..modes {
        for k in 0..modes {
            let expected = if m == k { &minus_i } else { &zero };
            if !LatticeOp::anticommutator_equals(&f.p[m], &f.u[k], expected) {
                return CheckReport::fail(
                    "canonical-etc",
                    Witness::new(vec![m, k], format!("{{p_{}, u^{}}}", label(m), label(k))),
                );
            }
            if k < m {
                continue;
            }
            if !LatticeOp::anticommutator_equals(&f.u[m], &f.u[k], &zero) {
                return CheckReport::fail(
                    "canonical-etc",
                    Witness::new(vec![m, k], format!("{{u^{}, u^{}}}", label(m), label(k))),
                );
            }
            if !LatticeOp::anticommutator_equals(&f.p[m], &f.p[k], &zero) {
                return CheckReport::fail(
                    "canonical-etc",
                    Witness::new(vec![m, k], format!("{{p_{}, p_{}}}", label(m), label(k))),
                );
            }
        }
    }
    CheckReport::pass("canonical-etc")
}

/// Densities `s^0_j(x)`, `t^0_j(x)` and the Yamagutians `Y^0_jk(x)`.
#[derive(Clone, Debug)]
pub struct ChargeDensitySet {
    r: usize,
    sites: usize,
    dim: usize,
    s: Vec<LatticeOp>,
    t: Vec<LatticeOp>,
    y: Vec<LatticeOp>,
}

impl ChargeDensitySet {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn s(&self, j: usize, x: usize) -> &LatticeOp {
        &self.s[x * self.r + j]
    }

    pub fn t(&self, j: usize, x: usize) -> &LatticeOp {
        &self.t[x * self.r + j]
    }

    pub fn y(&self, j: usize, k: usize, x: usize) -> &LatticeOp {
        &self.y[(x * self.r + j) * self.r + k]
    }
}

/// Builds `s^0_j = p S_j u`, `t^0_j = p T_j u` on every site and solves the
/// `[s, t]` relation for `Y^0_jk = εi[s_j, t_k] + (1/3)c^p_jk (s_p − t_p)`.
pub fn charge_densities(
    f: &FieldSet,
    gen: &GeneratorSet,
    c: &StructureTensor,
) -> Result<ChargeDensitySet, EtcError> {
    if gen.dim() != f.n {
        return Err(EtcError::DimensionMismatch(format!(
            "{}-dimensional generators on {} modes per site",
            gen.dim(),
            f.n
        )));
    }
    if gen.r() != c.dim() {
        return Err(EtcError::DimensionMismatch(format!(
            "{} generators for a tensor of dimension {}",
            gen.r(),
            c.dim()
        )));
    }
    let r = gen.r();
    let mut s = Vec::with_capacity(r * f.sites);
    let mut t = Vec::with_capacity(r * f.sites);
    for x in 0..f.sites {
        s.extend(gen.s().iter().map(|m| f.density(m, x)));
        t.extend(gen.t().iter().map(|m| f.density(m, x)));
    }
    let ei = FERMIONIC.ei();
    let third = rat(1, 3);
    let mut y = Vec::with_capacity(r * r * f.sites);
    for x in 0..f.sites {
        for j in 0..r {
            for k in 0..r {
                let st = s[x * r + j].commutator(&t[x * r + k]);
                let mut terms: Vec<(GaussianRational, &LatticeOp)> = vec![(ei, &st)];
                for p in 0..r {
                    let cp = c.get(p, j, k);
                    if !cp.is_zero() {
                        terms.push((real(third * cp), &s[x * r + p]));
                        terms.push((real(-third * cp), &t[x * r + p]));
                    }
                }
                y.push(LatticeOp::lincomb(f.dim, &terms));
            }
        }
    }
    Ok(ChargeDensitySet {
        r,
        sites: f.sites,
        dim: f.dim,
        s,
        t,
        y,
    })
}

/// Pass/fail of one named relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationStatus {
    pub eq: String,
    pub report: CheckReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtcReport {
    pub convention: Convention,
    /// `"1"`..`"8"`, `"assoc-s"`, `"assoc-t"`, `"symmetry"`.
    pub equations: Vec<EquationStatus>,
    /// The third relation read literally as a `[t_j, s_k]` bracket.
    pub eq3_as_printed: CheckReport,
    /// `[s, t] = 0`, `[s, s] = εi c s`, `[t, t] = −εi c t` on each site.
    pub associative: CheckReport,
}

impl EtcReport {
    pub fn passed(&self) -> bool {
        self.equations.iter().all(|e| e.report.passed)
    }

    pub fn status(&self, eq: &str) -> Option<&CheckReport> {
        self.equations
            .iter()
            .find(|e| e.eq == eq)
            .map(|e| &e.report)
    }
}

struct Verifier<'a> {
    d: &'a ChargeDensitySet,
    c: &'a StructureTensor,
    yam: YamagutiTensor,
    ei: GaussianRational,
    zero: LatticeOp,
}

type Term<'a> = (Rational, &'a LatticeOp);

impl<'a> Verifier<'a> {
    fn r(&self) -> usize {
        self.d.r
    }

    fn sites(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.d.sites;
        (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
    }

    /// `εi Σ q·op` at `x == y`, zero otherwise.
    fn rhs(&self, same_site: bool, terms: &[Term<'_>]) -> LatticeOp {
        if !same_site || terms.is_empty() {
            return self.zero.clone();
        }
        let scaled: Vec<(GaussianRational, &LatticeOp)> = terms
            .iter()
            .map(|&(q, op)| (self.ei * real(q), op))
            .collect();
        LatticeOp::lincomb(self.d.dim, &scaled)
    }

    /// `ky Y_jk + ks c^p_jk s_p + kt c^p_jk t_p` at site `x`.
    fn st_terms(
        &self,
        x: usize,
        j: usize,
        k: usize,
        ky: Rational,
        ks: Rational,
        kt: Rational,
    ) -> Vec<Term<'a>> {
        let d = self.d;
        let mut terms = Vec::new();
        if !ky.is_zero() {
            terms.push((ky, d.y(j, k, x)));
        }
        for p in 0..self.r() {
            let cp = self.c.get(p, j, k);
            if !cp.is_zero() {
                if !ks.is_zero() {
                    terms.push((ks * cp, d.s(p, x)));
                }
                if !kt.is_zero() {
                    terms.push((kt * cp, d.t(p, x)));
                }
            }
        }
        terms
    }

    fn fail(eq: &str, idx: Vec<usize>, detail: String) -> CheckReport {
        CheckReport::fail(eq, Witness::new(idx, detail))
    }

    fn family(&self, which: char, j: usize, x: usize) -> &'a LatticeOp {
        match which {
            's' => self.d.s(j, x),
            _ => self.d.t(j, x),
        }
    }

    /// `[a_j(x), b_k(y)] = εi(ky Y_jk + ks c s + kt c t)(x) δ_xy`.
    fn commutation(
        &self,
        eq: &str,
        (a, b): (char, char),
        (ky, ks, kt): (Rational, Rational, Rational),
        all_pairs: bool,
    ) -> CheckReport {
        let r = self.r();
        for (x, y) in self.sites() {
            for j in 0..r {
                for k in 0..r {
                    if !all_pairs && j >= k {
                        continue;
                    }
                    let rhs = self.rhs(x == y, &self.st_terms(x, j, k, ky, ks, kt));
                    let (l, m) = (self.family(a, j, x), self.family(b, k, y));
                    if !LatticeOp::commutators_equal(&[(1, l, m)], &rhs) {
                        return Self::fail(
                            eq,
                            vec![j + 1, k + 1, x + 1, y + 1],
                            format!("[{a}{}({}), {b}{}({})]", j + 1, x + 1, k + 1, y + 1),
                        );
                    }
                }
            }
        }
        CheckReport::pass(eq)
    }

    fn antisymmetry(&self) -> CheckReport {
        let r = self.r();
        for x in 0..self.d.sites {
            for j in 0..r {
                for k in j..r {
                    let one = GaussianRational::one();
                    let sum = LatticeOp::lincomb(
                        self.d.dim,
                        &[(one, self.d.y(j, k, x)), (one, self.d.y(k, j, x))],
                    );
                    if !sum.is_zero() {
                        return Self::fail(
                            "4",
                            vec![j + 1, k + 1, x + 1],
                            format!("Y{0}{1}({2}) + Y{1}{0}({2})", j + 1, k + 1, x + 1),
                        );
                    }
                }
            }
        }
        CheckReport::pass("4")
    }

    fn cyclic(&self) -> CheckReport {
        let r = self.r();
        for x in 0..self.d.sites {
            for j in 0..r {
                for k in j + 1..r {
                    for l in k + 1..r {
                        let mut terms: Vec<(GaussianRational, &LatticeOp)> = Vec::new();
                        for (a, b, last) in [(j, k, l), (k, l, j), (l, j, k)] {
                            for p in 0..r {
                                let cp = self.c.get(p, a, b);
                                if !cp.is_zero() {
                                    terms.push((real(cp), self.d.y(p, last, x)));
                                }
                            }
                        }
                        if !LatticeOp::lincomb(self.d.dim, &terms).is_zero() {
                            return Self::fail(
                                "5",
                                vec![j + 1, k + 1, l + 1, x + 1],
                                format!(
                                    "cyclic sum ({}, {}, {}) at site {}",
                                    j + 1,
                                    k + 1,
                                    l + 1,
                                    x + 1
                                ),
                            );
                        }
                    }
                }
            }
        }
        CheckReport::pass("5")
    }

    /// `[Y_jk(x), a_n(y)] = εi d^p_jkn a_p(x) δ_xy`.
    fn reductivity(&self, eq: &str, a: char) -> CheckReport {
        let r = self.r();
        for (x, y) in self.sites() {
            for j in 0..r {
                for k in j + 1..r {
                    for n in 0..r {
                        let terms: Vec<Term<'_>> = (0..r)
                            .filter_map(|p| {
                                let dp = self.yam.get(p, j, k, n);
                                (!dp.is_zero()).then(|| (dp, self.family(a, p, x)))
                            })
                            .collect();
                        let rhs = self.rhs(x == y, &terms);
                        if !LatticeOp::commutators_equal(
                            &[(1, self.d.y(j, k, x), self.family(a, n, y))],
                            &rhs,
                        ) {
                            return Self::fail(
                                eq,
                                vec![j + 1, k + 1, n + 1, x + 1, y + 1],
                                format!(
                                    "[Y{}{}({}), {a}{}({})]",
                                    j + 1,
                                    k + 1,
                                    x + 1,
                                    n + 1,
                                    y + 1
                                ),
                            );
                        }
                    }
                }
            }
        }
        CheckReport::pass(eq)
    }

    fn yy_terms(&self, x: usize, j: usize, k: usize, l: usize, n: usize) -> Vec<Term<'a>> {
        let mut terms = Vec::new();
        for p in 0..self.r() {
            let a = self.yam.get(p, j, k, l);
            if !a.is_zero() {
                terms.push((a, self.d.y(p, n, x)));
            }
            let b = self.yam.get(p, j, k, n);
            if !b.is_zero() {
                terms.push((b, self.d.y(l, p, x)));
            }
        }
        terms
    }

    fn yamaguti_bracket(&self) -> CheckReport {
        let r = self.r();
        let pairs: Vec<(usize, usize)> = (0..r)
            .flat_map(|j| (j + 1..r).map(move |k| (j, k)))
            .collect();
        for (x, y) in self.sites() {
            for (a, &(j, k)) in pairs.iter().enumerate() {
                for &(l, n) in &pairs[a..] {
                    let same = x == y;
                    let rhs = self.rhs(same, &self.yy_terms(x, j, k, l, n));
                    let witness = || {
                        Self::fail(
                            "8",
                            vec![j + 1, k + 1, l + 1, n + 1, x + 1, y + 1],
                            format!(
                                "[Y{}{}({}), Y{}{}({})]",
                                j + 1,
                                k + 1,
                                x + 1,
                                l + 1,
                                n + 1,
                                y + 1
                            ),
                        )
                    };
                    if !LatticeOp::commutators_equal(
                        &[(1, self.d.y(j, k, x), self.d.y(l, n, y))],
                        &rhs,
                    ) {
                        return witness();
                    }
                    if same {
                        // the right side must itself be antisymmetric under the swap
                        let swapped = self.rhs(true, &self.yy_terms(x, l, n, j, k));
                        if !rhs.add(&swapped).is_zero() {
                            return witness();
                        }
                    }
                }
            }
        }
        CheckReport::pass("8")
    }

    /// `[a_j(x), a_k(y)] = ±εi c^p_jk a_p(x) δ_xy − 2[s_j(x), t_k(y)]`.
    fn minimal_violation(&self, eq: &str, a: char, sign: i128) -> CheckReport {
        let r = self.r();
        for (x, y) in self.sites() {
            for j in 0..r {
                for k in 0..r {
                    let terms: Vec<Term<'_>> = (0..r)
                        .filter_map(|p| {
                            let cp = self.c.get(p, j, k);
                            (!cp.is_zero()).then(|| (cp * int(sign), self.family(a, p, x)))
                        })
                        .collect();
                    let rhs = self.rhs(x == y, &terms);
                    let pairs = [
                        (1, self.family(a, j, x), self.family(a, k, y)),
                        (2, self.d.s(j, x), self.d.t(k, y)),
                    ];
                    if !LatticeOp::commutators_equal(&pairs, &rhs) {
                        return Self::fail(
                            eq,
                            vec![j + 1, k + 1, x + 1, y + 1],
                            format!("[{a}{}({}), {a}{}({})]", j + 1, x + 1, k + 1, y + 1),
                        );
                    }
                }
            }
        }
        CheckReport::pass(eq)
    }

    /// `[s_j(x), t_k(y)] = [t_j(y), s_k(x)]`.
    fn symmetry(&self) -> CheckReport {
        let r = self.r();
        for (x, y) in self.sites() {
            for j in 0..r {
                for k in 0..r {
                    let pairs = [
                        (1, self.d.s(j, x), self.d.t(k, y)),
                        (-1, self.d.t(j, y), self.d.s(k, x)),
                    ];
                    if !LatticeOp::commutators_equal(&pairs, &self.zero) {
                        return Self::fail(
                            "symmetry",
                            vec![j + 1, k + 1, x + 1, y + 1],
                            format!(
                                "[s{}({}), t{}({})] - [t{}({}), s{}({})]",
                                j + 1,
                                x + 1,
                                k + 1,
                                y + 1,
                                j + 1,
                                y + 1,
                                k + 1,
                                x + 1
                            ),
                        );
                    }
                }
            }
        }
        CheckReport::pass("symmetry")
    }

    fn eq3_as_printed(&self) -> CheckReport {
        let r = self.r();
        let name = "3-as-printed";
        for x in 0..self.d.sites {
            for j in 0..r {
                for k in 0..r {
                    let rhs = self.rhs(
                        true,
                        &self.st_terms(x, j, k, int(2), rat(-2, 3), rat(-1, 3)),
                    );
                    if !LatticeOp::commutators_equal(&[(1, self.d.t(j, x), self.d.s(k, x))], &rhs) {
                        return Self::fail(
                            name,
                            vec![j + 1, k + 1, x + 1, x + 1],
                            format!("[t{}({}), s{}({})]", j + 1, x + 1, k + 1, x + 1),
                        );
                    }
                }
            }
        }
        CheckReport::pass(name)
    }

    fn associative(&self) -> CheckReport {
        let r = self.r();
        let name = "associative";
        for x in 0..self.d.sites {
            for j in 0..r {
                for k in 0..r {
                    if !LatticeOp::commutators_equal(
                        &[(1, self.d.s(j, x), self.d.t(k, x))],
                        &self.zero,
                    ) {
                        return Self::fail(
                            name,
                            vec![j + 1, k + 1, x + 1],
                            format!("[s{}, t{}] != 0", j + 1, k + 1),
                        );
                    }
                    for (a, sign) in [('s', 1), ('t', -1)] {
                        let terms: Vec<Term<'_>> = (0..r)
                            .filter_map(|p| {
                                let cp = self.c.get(p, j, k);
                                (!cp.is_zero()).then(|| (cp * int(sign), self.family(a, p, x)))
                            })
                            .collect();
                        let rhs = self.rhs(true, &terms);
                        let pair = [(1, self.family(a, j, x), self.family(a, k, x))];
                        if !LatticeOp::commutators_equal(&pair, &rhs) {
                            return Self::fail(
                                name,
                                vec![j + 1, k + 1, x + 1],
                                format!(
                                    "[{a}{}, {a}{}] != {}i c {a}",
                                    j + 1,
                                    k + 1,
                                    if sign > 0 { "" } else { "-" }
                                ),
                            );
                        }
                    }
                }
            }
        }
        CheckReport::pass(name)
    }
}

pub fn etc_verify(d: &ChargeDensitySet, c: &StructureTensor) -> Result<EtcReport, EtcError> {
    etc_verify_with(d, c, FERMIONIC)
}

/// Checks every density relation with `i` replaced by `convention.epsilon·i`.
pub fn etc_verify_with(
    d: &ChargeDensitySet,
    c: &StructureTensor,
    convention: Convention,
) -> Result<EtcReport, EtcError> {
    if c.dim() != d.r {
        return Err(EtcError::DimensionMismatch(format!(
            "tensor of dimension {} for {} density pairs",
            c.dim(),
            d.r
        )));
    }
    let v = Verifier {
        d,
        c,
        yam: yamaguti_constants(c),
        ei: convention.ei(),
        zero: LatticeOp::zero(d.dim),
    };
    let equations = vec![
        v.commutation("1", ('s', 's'), (int(2), rat(1, 3), rat(2, 3)), false),
        v.commutation("2", ('s', 't'), (int(-1), rat(1, 3), rat(-1, 3)), true),
        v.commutation("3", ('t', 't'), (int(2), rat(-2, 3), rat(-1, 3)), false),
        v.antisymmetry(),
        v.cyclic(),
        v.reductivity("6", 's'),
        v.reductivity("7", 't'),
        v.yamaguti_bracket(),
        v.minimal_violation("assoc-s", 's', 1),
        v.minimal_violation("assoc-t", 't', -1),
        v.symmetry(),
    ];
    let equations = equations
        .into_iter()
        .map(|report| EquationStatus {
            eq: report.property.clone(),
            report,
        })
        .collect();
    Ok(EtcReport {
        convention,
        equations,
        eq3_as_printed: v.eq3_as_printed(),
        associative: v.associative(),
    })
}

/// Every commutator between `s`/`t` densities on distinct sites vanishes.
pub fn locality_check(d: &ChargeDensitySet) -> CheckReport {
    let zero = LatticeOp::zero(d.dim);
    let r = d.r;
    for x in 0..d.sites {
        for y in (0..d.sites).filter(|&y| y != x) {
            for (a, b) in [('s', 's'), ('s', 't'), ('t', 's'), ('t', 't')] {
                let pick = |f: char, j: usize, site: usize| {
                    if f == 's' {
                        d.s(j, site)
                    } else {
                        d.t(j, site)
                    }
                };
                for j in 0..r {
                    for k in 0..r {
                        if !LatticeOp::commutators_equal(
                            &[(1, pick(a, j, x), pick(b, k, y))],
                            &zero,
                        ) {
                            return CheckReport::fail(
                                "locality",
                                Witness::new(
                                    vec![j + 1, k + 1, x + 1, y + 1],
                                    format!("[{a}{}({}), {b}{}({})]", j + 1, x + 1, k + 1, y + 1),
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    CheckReport::pass("locality")
}

/// Integrated charges `σ_j`, `τ_j`, `Υ_jk`.
#[derive(Clone, Debug)]
pub struct ChargeSet {
    r: usize,
    dim: usize,
    sigma: Vec<LatticeOp>,
    tau: Vec<LatticeOp>,
    upsilon: Vec<LatticeOp>,
}

impl ChargeSet {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn sigma(&self, j: usize) -> &LatticeOp {
        &self.sigma[j]
    }

    pub fn tau(&self, j: usize) -> &LatticeOp {
        &self.tau[j]
    }

    pub fn upsilon(&self, j: usize, k: usize) -> &LatticeOp {
        &self.upsilon[j * self.r + k]
    }
}

/// `σ_j = −i Σ_x s_j(x)`, `τ_j = −i Σ_x t_j(x)`, `Υ_jk = −i Σ_x Y_jk(x)`.
pub fn charges(d: &ChargeDensitySet) -> ChargeSet {
    let minus_i = -imag_unit();
    let integrate = |ops: Vec<&LatticeOp>| {
        let terms: Vec<(GaussianRational, &LatticeOp)> =
            ops.into_iter().map(|op| (minus_i, op)).collect();
        LatticeOp::lincomb(d.dim, &terms)
    };
    let r = d.r;
    let sites = 0..d.sites;
    ChargeSet {
        r,
        dim: d.dim,
        sigma: (0..r)
            .map(|j| integrate(sites.clone().map(|x| d.s(j, x)).collect()))
            .collect(),
        tau: (0..r)
            .map(|j| integrate(sites.clone().map(|x| d.t(j, x)).collect()))
            .collect(),
        upsilon: (0..r * r)
            .map(|jk| integrate(sites.clone().map(|x| d.y(jk / r, jk % r, x)).collect()))
            .collect(),
    }
}

pub fn charge_algebra_check(q: &ChargeSet, c: &StructureTensor) -> CheckReport {
    charge_algebra_check_with(q, c, FERMIONIC)
}

/// The full commutation table on `κσ`, `κτ`, `κΥ`.
pub fn charge_algebra_check_with(
    q: &ChargeSet,
    c: &StructureTensor,
    convention: Convention,
) -> CheckReport {
    if c.dim() != q.r {
        return CheckReport::fail(
            "theorem",
            Witness::new(
                vec![],
                format!("tensor of dimension {} for {} charges", c.dim(), q.r),
            ),
        );
    }
    let kappa = real(int(convention.kappa.into()));
    let rescale =
        |ops: &[LatticeOp]| -> Vec<LatticeOp> { ops.iter().map(|op| op.scale(kappa)).collect() };
    let (s, t, y) = (rescale(&q.sigma), rescale(&q.tau), rescale(&q.upsilon));
    let d = yamaguti_constants(c);
    let ops = LatticeCommutator { dim: q.dim };
    let table = GlcTable {
        ops: &ops,
        s: &s,
        t: &t,
        y: &y,
        c,
        d: &d,
    };
    let families = table.verify(Scan::Reduced);
    let failed = families.all().into_iter().find(|f| !f.passed).cloned();
    match failed {
        None => CheckReport::pass("theorem"),
        Some(f) => {
            let w = f
                .witness
                .unwrap_or_else(|| Witness::new(vec![], String::new()));
            CheckReport::fail(
                "theorem",
                Witness::new(w.indices, format!("{}: {}", f.property, w.detail)),
            )
        }
    }
}

/// `[a†Ma, a†Na] = a†[M, N]a` for seeded random integer matrices, with the
/// bilinears built from the fields of `f` at rotating sites.
pub fn bilinear_lemma_check(f: &FieldSet, trials: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = f.n;
    let random_matrix =
        |rng: &mut ChaCha8Rng| Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-3i128..=3)));
    for trial in 0..trials {
        let m = random_matrix(&mut rng);
        let nm = random_matrix(&mut rng);
        let x = trial % f.sites;
        let (qm, qn) = (f.bilinear(&m, x), f.bilinear(&nm, x));
        let rhs = f.bilinear(&m.commutator(&nm), x);
        if !LatticeOp::commutators_equal(&[(1, &qm, &qn)], &rhs) {
            return CheckReport::fail(
                "bilinear-lemma",
                Witness::new(vec![trial], format!("trial {trial} at site {}", x + 1)),
            );
        }
    }
    CheckReport::pass("bilinear-lemma")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog_algebra;
    use crate::birep::{check_glc, octonion_lr_generators, quaternion_lr_generators};
    use crate::fock::build_fock;

    fn fields(n: usize, sites: usize) -> FieldSet {
        FieldSet::canonical(&build_fock(n, sites).unwrap())
    }

    fn quaternion_c() -> StructureTensor {
        catalog_algebra("su2").unwrap().scale(int(2))
    }

    #[test]
    fn canonical_brackets_hold() {
        assert!(canonical_etc_check(&fields(8, 1)).passed);
        assert!(canonical_etc_check(&fields(2, 2)).passed);
    }

    #[test]
    fn cross_site_canonical_bracket_vanishes() {
        let f = fields(8, 2);
        assert!(f.p(0, 0).anticommutator(f.u(0, 1)).is_zero());
    }

    #[test]
    fn momentum_without_minus_i_fails() {
        let ops = build_fock(3, 1).unwrap();
        let f = fields(3, 1);
        let p: Vec<LatticeOp> = (0..3).map(|a| ops.creator(a, 0).clone()).collect();
        let bad = FieldSet::from_parts(3, 1, f.u.clone(), p).unwrap();
        let report = canonical_etc_check(&bad);
        assert!(!report.passed);
        assert_eq!(report.witness.unwrap().indices, vec![0, 0]);
    }

    #[test]
    fn identity_kernel_gives_number_operator() {
        let f = fields(3, 1);
        let s = f.density(&Matrix::identity(3), 0);
        for state in 0..8usize {
            let count = int(state.count_ones().into());
            assert_eq!(
                s.get(state, state),
                GaussianRational::new(Rational::zero(), -count)
            );
        }
        assert!(s.is_even());
    }

    #[test]
    fn octonion_densities_at_one_site() {
        let m7 = catalog_algebra("m7").unwrap();
        let d = charge_densities(&fields(8, 1), &octonion_lr_generators(), &m7).unwrap();
        assert_eq!(d.r(), 7);
        assert!((0..7).all(|j| d.s(j, 0).is_even() && d.t(j, 0).is_even()));
        let report = etc_verify(&d, &m7).unwrap();
        for e in &report.equations {
            assert!(e.report.passed, "{}", e.report);
        }
        // the [t, s] reading of the third relation does not hold
        assert!(!report.eq3_as_printed.passed);
        assert!(!report.associative.passed);
    }

    #[test]
    fn opposite_sign_convention_fails() {
        let m7 = catalog_algebra("m7").unwrap();
        let d = charge_densities(&fields(8, 1), &octonion_lr_generators(), &m7).unwrap();
        let bosonic = Convention {
            epsilon: 1,
            kappa: 1,
        };
        let report = etc_verify_with(&d, &m7, bosonic).unwrap();
        assert!(!report.status("1").unwrap().passed);
        let q = charges(&d);
        assert!(charge_algebra_check(&q, &m7).passed);
        assert!(!charge_algebra_check_with(&q, &m7, bosonic).passed);
    }

    #[test]
    fn quaternion_densities_are_associative() {
        let c = quaternion_c();
        let d = charge_densities(&fields(4, 2), &quaternion_lr_generators(), &c).unwrap();
        let report = etc_verify(&d, &c).unwrap();
        assert!(report.passed());
        assert!(report.associative.passed);
        for j in 0..3 {
            for k in 0..3 {
                assert!(d.s(j, 0).commutator(d.t(k, 0)).is_zero());
            }
        }
        assert!(locality_check(&d).passed);
    }

    #[test]
    fn quaternion_charges_reduce() {
        let c = quaternion_c();
        let d = charge_densities(&fields(4, 1), &quaternion_lr_generators(), &c).unwrap();
        let q = charges(&d);
        assert!(charge_algebra_check(&q, &c).passed);
        for j in 0..3 {
            for k in 0..3 {
                let mut terms: Vec<(GaussianRational, &LatticeOp)> = Vec::new();
                for p in 0..3 {
                    let cp = c.get(p, j, k) * rat(1, 3);
                    if !cp.is_zero() {
                        terms.push((real(cp), q.sigma(p)));
                        terms.push((real(-cp), q.tau(p)));
                    }
                }
                assert_eq!(*q.upsilon(j, k), LatticeOp::lincomb(d.dim(), &terms));
            }
        }
    }

    #[test]
    fn single_site_charge_is_minus_i_density() {
        let m7 = catalog_algebra("m7").unwrap();
        let d = charge_densities(&fields(8, 1), &octonion_lr_generators(), &m7).unwrap();
        let q = charges(&d);
        assert_eq!(*q.sigma(0), d.s(0, 0).scale(-imag_unit()));
        assert!(charge_algebra_check(&q, &m7).passed);
    }

    #[test]
    fn two_site_charges_are_sums() {
        let c = quaternion_c();
        let d = charge_densities(&fields(4, 2), &quaternion_lr_generators(), &c).unwrap();
        let q = charges(&d);
        let sum = d.s(1, 0).add(d.s(1, 1)).scale(-imag_unit());
        assert_eq!(*q.sigma(1), sum);
        assert!(d.s(1, 0).commutator(d.s(1, 1)).is_zero());
    }

    #[test]
    fn mutated_generators_break_etc_and_glc_together() {
        let m7 = catalog_algebra("m7").unwrap();
        let bad = octonion_lr_generators().with_s_swapped(0, 1);
        let d = charge_densities(&fields(8, 1), &bad, &m7).unwrap();
        assert!(!etc_verify(&d, &m7).unwrap().passed());
        assert!(!check_glc(&bad, &m7).unwrap().passed());
    }

    #[test]
    fn lemma_holds_and_detects_bad_momenta() {
        let f = fields(4, 2);
        assert!(bilinear_lemma_check(&f, 10, 7).passed);
        let m = Matrix::from_fn(4, 4, |i, j| int((i * 4 + j) as i128 % 3 - 1));
        let q = f.bilinear(&m, 0);
        assert!(q.commutator(&q).is_zero());

        let ops = build_fock(4, 1).unwrap();
        let doubled: Vec<LatticeOp> = (0..4)
            .map(|a| ops.creator(a, 0).scale(real(int(2))))
            .collect();
        let u: Vec<LatticeOp> = (0..4).map(|a| ops.annihilator(a, 0).clone()).collect();
        let bad = FieldSet::from_parts(4, 1, u, doubled).unwrap();
        assert!(!bilinear_lemma_check(&bad, 5, 0).passed);
    }

    #[test]
    fn size_mismatches_are_errors() {
        let m7 = catalog_algebra("m7").unwrap();
        assert!(charge_densities(&fields(4, 1), &octonion_lr_generators(), &m7).is_err());
        let c = quaternion_c();
        let d = charge_densities(&fields(4, 1), &quaternion_lr_generators(), &c).unwrap();
        assert!(etc_verify(&d, &m7).is_err());
    }
}
