//! The commutation table of birepresentation generators, checked over any
//! space of operators with a bracket.
//!
//! With generators `S_j`, `T_j`, structure constants `c` and Yamaguti
//! constants `d`, the table reads
//!
//! ```text
//! [S_j, S_k] = 2Y_jk + (1/3)c^p_jk S_p + (2/3)c^p_jk T_p
//! [S_j, T_k] = -Y_jk + (1/3)c^p_jk S_p - (1/3)c^p_jk T_p
//! [T_j, T_k] = 2Y_jk - (2/3)c^p_jk S_p - (1/3)c^p_jk T_p
//! Y_jk + Y_kj = 0
//! c^p_jk Y_pl + c^p_kl Y_pj + c^p_lj Y_pk = 0
//! [Y_jk, S_n] = d^p_jkn S_p        [Y_jk, T_n] = d^p_jkn T_p
//! [Y_jk, Y_ln] = d^p_jkl Y_pn + d^p_jkn Y_lp
//! ```
//!
//! The same checker serves exact matrices ([`MatrixOps`]) and lattice
//! operators (`fock::FockOps`).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::StructureTensor;
use crate::envelope::YamagutiTensor;
use crate::linalg::Matrix;
use crate::rational::{int, rat, Rational};
use crate::report::{CheckReport, Witness};

/// A vector space of operators closed under a bracket.
pub trait BracketOps {
    type Op: Clone;

    fn bracket(&self, a: &Self::Op, b: &Self::Op) -> Self::Op;
    fn combine(&self, terms: &[(Rational, &Self::Op)]) -> Self::Op;
    fn equal(&self, a: &Self::Op, b: &Self::Op) -> bool;
    fn is_zero(&self, a: &Self::Op) -> bool;

    /// Whether `[a, b] == rhs`. Implementations may avoid materializing the
    /// bracket.
    fn bracket_equals(&self, a: &Self::Op, b: &Self::Op, rhs: &Self::Op) -> bool {
        self.equal(&self.bracket(a, b), rhs)
    }
}

/// Exact rational matrices under the commutator.
#[derive(Clone, Copy, Debug, Default)]
pub struct MatrixOps;

impl BracketOps for MatrixOps {
    type Op = Matrix;

    fn bracket(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.commutator(b)
    }

    fn combine(&self, terms: &[(Rational, &Matrix)]) -> Matrix {
        let (rows, cols) = terms
            .first()
            .map(|(_, m)| (m.rows(), m.cols()))
            .expect("combine needs at least one term");
        let mut out = Matrix::zeros(rows, cols);
        for (k, m) in terms {
            out.add_scaled(*k, m);
        }
        out
    }

    fn equal(&self, a: &Matrix, b: &Matrix) -> bool {
        a == b
    }

    fn is_zero(&self, a: &Matrix) -> bool {
        a.is_zero()
    }
}

/// How much of the index range to scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scan {
    /// Every index tuple.
    Full,
    /// One representative per orbit of the antisymmetries (`j < k` etc.).
    /// Sound when the antisymmetry family itself passes; it is checked on
    /// every pair regardless.
    Reduced,
}

/// One report per relation family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlcFamilies {
    /// `[S,S]`, `[S,T]`, `[T,T]`.
    pub commutation: CheckReport,
    /// `Y_jk + Y_kj = 0`.
    pub antisymmetry: CheckReport,
    /// Cyclic relation among the `Y`s.
    pub cyclic: CheckReport,
    /// `[Y,S]` and `[Y,T]`.
    pub reductivity: CheckReport,
    /// `[Y,Y]`.
    pub yamaguti_bracket: CheckReport,
}

impl GlcFamilies {
    pub fn all(&self) -> [&CheckReport; 5] {
        [
            &self.commutation,
            &self.antisymmetry,
            &self.cyclic,
            &self.reductivity,
            &self.yamaguti_bracket,
        ]
    }

    pub fn passed(&self) -> bool {
        self.all().iter().all(|r| r.passed)
    }
}

/// `Y_jk = -[S_j, T_k] + (1/3)c^p_jk S_p - (1/3)c^p_jk T_p`, returned flat
/// with `Y[j·r + k]`.
pub fn extract_yamagutians<B: BracketOps>(
    ops: &B,
    s: &[B::Op],
    t: &[B::Op],
    c: &StructureTensor,
) -> Vec<B::Op> {
    let r = s.len();
    let third = rat(1, 3);
    let mut out = Vec::with_capacity(r * r);
    for j in 0..r {
        for k in 0..r {
            let st = ops.bracket(&s[j], &t[k]);
            let mut terms: Vec<(Rational, &B::Op)> = vec![(int(-1), &st)];
            for p in 0..r {
                let cp = c.get(p, j, k);
                if !cp.is_zero() {
                    terms.push((third * cp, &s[p]));
                    terms.push((-third * cp, &t[p]));
                }
            }
            out.push(ops.combine(&terms));
        }
    }
    out
}

/// Right-hand sides of the `[S,S]`, `[S,T]`, `[T,T]` relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StPair {
    SS,
    ST,
    TT,
}

impl StPair {
    // coefficients of (Y_jk, c·S, c·T)
    fn coefficients(self) -> (Rational, Rational, Rational) {
        match self {
            StPair::SS => (int(2), rat(1, 3), rat(2, 3)),
            StPair::ST => (int(-1), rat(1, 3), rat(-1, 3)),
            StPair::TT => (int(2), rat(-2, 3), rat(-1, 3)),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            StPair::SS => "[S,S]",
            StPair::ST => "[S,T]",
            StPair::TT => "[T,T]",
        }
    }
}

/// Operators of one birepresentation-like triple `(S, T, Y)` together with
/// the constants the table is checked against.
pub struct GlcTable<'a, B: BracketOps> {
    pub ops: &'a B,
    pub s: &'a [B::Op],
    pub t: &'a [B::Op],
    /// Flat `r × r`, `y[j·r + k] = Y_jk`.
    pub y: &'a [B::Op],
    pub c: &'a StructureTensor,
    pub d: &'a YamagutiTensor,
}

impl<'a, B: BracketOps> GlcTable<'a, B> {
    fn r(&self) -> usize {
        self.s.len()
    }

    fn y(&self, j: usize, k: usize) -> &B::Op {
        &self.y[j * self.r() + k]
    }

    pub fn commutation_rhs(&self, pair: StPair, j: usize, k: usize) -> B::Op {
        let (ky, ks, kt) = pair.coefficients();
        let mut terms: Vec<(Rational, &B::Op)> = vec![(ky, self.y(j, k))];
        for p in 0..self.r() {
            let cp = self.c.get(p, j, k);
            if !cp.is_zero() {
                terms.push((ks * cp, &self.s[p]));
                terms.push((kt * cp, &self.t[p]));
            }
        }
        self.ops.combine(&terms)
    }

    fn cyclic_sum(&self, j: usize, k: usize, l: usize) -> Option<B::Op> {
        let mut terms: Vec<(Rational, &B::Op)> = Vec::new();
        for (a, b, last) in [(j, k, l), (k, l, j), (l, j, k)] {
            for p in 0..self.r() {
                let cp = self.c.get(p, a, b);
                if !cp.is_zero() {
                    terms.push((cp, self.y(p, last)));
                }
            }
        }
        (!terms.is_empty()).then(|| self.ops.combine(&terms))
    }

    fn reductive_rhs(&self, ops: &[B::Op], j: usize, k: usize, n: usize) -> Option<B::Op> {
        let terms: Vec<(Rational, &B::Op)> = (0..self.r())
            .filter_map(|p| {
                let dp = self.d.get(p, j, k, n);
                (!dp.is_zero()).then_some((dp, &ops[p]))
            })
            .collect();
        (!terms.is_empty()).then(|| self.ops.combine(&terms))
    }

    fn yy_rhs(&self, j: usize, k: usize, l: usize, n: usize) -> Option<B::Op> {
        let mut terms: Vec<(Rational, &B::Op)> = Vec::new();
        for p in 0..self.r() {
            let a = self.d.get(p, j, k, l);
            if !a.is_zero() {
                terms.push((a, self.y(p, n)));
            }
            let b = self.d.get(p, j, k, n);
            if !b.is_zero() {
                terms.push((b, self.y(l, p)));
            }
        }
        (!terms.is_empty()).then(|| self.ops.combine(&terms))
    }

    fn bracket_matches(&self, a: &B::Op, b: &B::Op, rhs: Option<&B::Op>) -> bool {
        match rhs {
            Some(rhs) => self.ops.bracket_equals(a, b, rhs),
            None => self.ops.is_zero(&self.ops.bracket(a, b)),
        }
    }

    fn commutation(&self, scan: Scan) -> CheckReport {
        let r = self.r();
        for pair in [StPair::SS, StPair::ST, StPair::TT] {
            let (left, right) = match pair {
                StPair::SS => (self.s, self.s),
                StPair::ST => (self.s, self.t),
                StPair::TT => (self.t, self.t),
            };
            for j in 0..r {
                for k in 0..r {
                    if scan == Scan::Reduced && pair != StPair::ST && j >= k {
                        continue;
                    }
                    let rhs = self.commutation_rhs(pair, j, k);
                    if !self.ops.bracket_equals(&left[j], &right[k], &rhs) {
                        return CheckReport::fail(
                            "commutation",
                            Witness::new(
                                vec![j + 1, k + 1],
                                format!("{} relation at j={}, k={}", pair.label(), j + 1, k + 1),
                            ),
                        );
                    }
                }
            }
        }
        CheckReport::pass("commutation")
    }

    fn antisymmetry(&self) -> CheckReport {
        let r = self.r();
        for j in 0..r {
            for k in j..r {
                let sum = self
                    .ops
                    .combine(&[(int(1), self.y(j, k)), (int(1), self.y(k, j))]);
                if !self.ops.is_zero(&sum) {
                    return CheckReport::fail(
                        "antisymmetry",
                        Witness::new(
                            vec![j + 1, k + 1],
                            format!("Y{0}{1} + Y{1}{0} != 0", j + 1, k + 1),
                        ),
                    );
                }
            }
        }
        CheckReport::pass("antisymmetry")
    }

    fn cyclic(&self, scan: Scan) -> CheckReport {
        let r = self.r();
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    if scan == Scan::Reduced && !(j < k && k < l) {
                        continue;
                    }
                    if let Some(sum) = self.cyclic_sum(j, k, l) {
                        if !self.ops.is_zero(&sum) {
                            return CheckReport::fail(
                                "cyclic",
                                Witness::new(
                                    vec![j + 1, k + 1, l + 1],
                                    format!(
                                        "cyclic Y relation at j={}, k={}, l={}",
                                        j + 1,
                                        k + 1,
                                        l + 1
                                    ),
                                ),
                            );
                        }
                    }
                }
            }
        }
        CheckReport::pass("cyclic")
    }

    fn reductivity(&self, scan: Scan) -> CheckReport {
        let r = self.r();
        for (name, ops) in [("S", self.s), ("T", self.t)] {
            for j in 0..r {
                for k in 0..r {
                    if scan == Scan::Reduced && j >= k {
                        continue;
                    }
                    for n in 0..r {
                        let rhs = self.reductive_rhs(ops, j, k, n);
                        if !self.bracket_matches(self.y(j, k), &ops[n], rhs.as_ref()) {
                            return CheckReport::fail(
                                "reductivity",
                                Witness::new(
                                    vec![j + 1, k + 1, n + 1],
                                    format!("[Y{}{}, {name}{}]", j + 1, k + 1, n + 1),
                                ),
                            );
                        }
                    }
                }
            }
        }
        CheckReport::pass("reductivity")
    }

    fn yamaguti_bracket(&self, scan: Scan) -> CheckReport {
        let r = self.r();
        let fail = |j: usize, k: usize, l: usize, n: usize| {
            CheckReport::fail(
                "yamaguti-bracket",
                Witness::new(
                    vec![j + 1, k + 1, l + 1, n + 1],
                    format!("[Y{}{}, Y{}{}]", j + 1, k + 1, l + 1, n + 1),
                ),
            )
        };
        match scan {
            Scan::Full => {
                for j in 0..r {
                    for k in 0..r {
                        for l in 0..r {
                            for n in 0..r {
                                let rhs = self.yy_rhs(j, k, l, n);
                                if !self.bracket_matches(self.y(j, k), self.y(l, n), rhs.as_ref()) {
                                    return fail(j, k, l, n);
                                }
                            }
                        }
                    }
                }
            }
            Scan::Reduced => {
                let pairs: Vec<(usize, usize)> = (0..r)
                    .flat_map(|j| (j + 1..r).map(move |k| (j, k)))
                    .collect();
                for (a, &(j, k)) in pairs.iter().enumerate() {
                    for &(l, n) in &pairs[a..] {
                        let rhs = self.yy_rhs(j, k, l, n);
                        if !self.bracket_matches(self.y(j, k), self.y(l, n), rhs.as_ref()) {
                            return fail(j, k, l, n);
                        }
                        // [Y_ln, Y_jk] = -[Y_jk, Y_ln] must agree with its own right side
                        let swapped = self.yy_rhs(l, n, j, k);
                        let consistent = match (&rhs, &swapped) {
                            (None, None) => true,
                            (Some(x), None) | (None, Some(x)) => self.ops.is_zero(x),
                            (Some(x), Some(y)) => self
                                .ops
                                .is_zero(&self.ops.combine(&[(int(1), x), (int(1), y)])),
                        };
                        if !consistent {
                            return fail(l, n, j, k);
                        }
                    }
                }
            }
        }
        CheckReport::pass("yamaguti-bracket")
    }

    /// Checks all five families.
    pub fn verify(&self, scan: Scan) -> GlcFamilies {
        GlcFamilies {
            commutation: self.commutation(scan),
            antisymmetry: self.antisymmetry(),
            cyclic: self.cyclic(scan),
            reductivity: self.reductivity(scan),
            yamaguti_bracket: self.yamaguti_bracket(scan),
        }
    }
}
