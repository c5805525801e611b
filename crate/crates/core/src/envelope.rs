//! The Lie algebra spanned by abstract `S_j`, `T_j`, `Y_jk` subject to the
//! birepresentation commutation table, built as an exact bracket table.
//!
//! Construction: start from the free span of `S_1..S_r`, `T_1..T_r` and
//! `Y_jk (j < k)`, impose the cyclic relations among the `Y`s by Gaussian
//! elimination (pivots taken in lexicographic `(j, k)` order), then write
//! every bracket in the surviving basis. Whether the brackets respect the
//! quotient is checked, not assumed.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{is_maltsev, StructureTensor};
use crate::birep::{check_glc, GeneratorSet};
use crate::linalg::{rref, EchelonBasis, Matrix};
use crate::rational::{rat, Rational};
use crate::report::{CheckReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopeError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("inconsistent relation system: {0}")]
    InconsistentRelations(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// `d^p_jkl` with `6 d^p_jkl = c^p_js c^s_kl − c^p_ks c^s_jl + c^p_sl c^s_jk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YamagutiTensor {
    dim: usize,
    entries: Vec<Rational>,
}

impl YamagutiTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `d^p_jkl`, 0-based.
    #[inline]
    pub fn get(&self, p: usize, j: usize, k: usize, l: usize) -> Rational {
        let r = self.dim;
        self.entries[((p * r + j) * r + k) * r + l]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

pub fn yamaguti_constants(c: &StructureTensor) -> YamagutiTensor {
    let r = c.dim();
    let sixth = rat(1, 6);
    let mut entries = vec![Rational::zero(); r * r * r * r];
    for p in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    let mut sum = Rational::zero();
                    for s in 0..r {
                        sum += c.get(p, j, s) * c.get(s, k, l) - c.get(p, k, s) * c.get(s, j, l)
                            + c.get(p, s, l) * c.get(s, j, k);
                    }
                    entries[((p * r + j) * r + k) * r + l] = sum * sixth;
                }
            }
        }
    }
    YamagutiTensor { dim: r, entries }
}

/// Name of a basis element (indices 0-based, displayed 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasisLabel {
    S(usize),
    T(usize),
    Y(usize, usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisLabel::S(j) => write!(f, "S{}", j + 1),
            BasisLabel::T(j) => write!(f, "T{}", j + 1),
            BasisLabel::Y(j, k) => write!(f, "Y{},{}", j + 1, k + 1),
        }
    }
}

/// Coordinates over the free symbols `S_1..S_r, T_1..T_r, Y_jk (j<k)`.
struct FreeSpace<'a> {
    r: usize,
    c: &'a StructureTensor,
    d: &'a YamagutiTensor,
    pairs: Vec<(usize, usize)>,
}

impl<'a> FreeSpace<'a> {
    fn new(c: &'a StructureTensor, d: &'a YamagutiTensor) -> Self {
        let r = c.dim();
        let pairs = (0..r)
            .flat_map(|j| (j + 1..r).map(move |k| (j, k)))
            .collect();
        Self { r, c, d, pairs }
    }

    fn len(&self) -> usize {
        2 * self.r + self.pairs.len()
    }

    fn pair_index(&self, j: usize, k: usize) -> usize {
        debug_assert!(j < k);
        // row-major position of (j, k) among j < k pairs
        j * (2 * self.r - j - 1) / 2 + (k - j - 1)
    }

    /// Adds `coef · Y_jk` for any `j, k`.
    fn add_y(&self, v: &mut [Rational], j: usize, k: usize, coef: Rational) {
        match j.cmp(&k) {
            core::cmp::Ordering::Less => v[2 * self.r + self.pair_index(j, k)] += coef,
            core::cmp::Ordering::Greater => v[2 * self.r + self.pair_index(k, j)] -= coef,
            core::cmp::Ordering::Equal => {}
        }
    }

    fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.len()]
    }

    fn st_rhs(
        &self,
        ky: Rational,
        ks: Rational,
        kt: Rational,
        j: usize,
        k: usize,
    ) -> Vec<Rational> {
        let mut v = self.zero();
        self.add_y(&mut v, j, k, ky);
        for p in 0..self.r {
            let cp = self.c.get(p, j, k);
            if !cp.is_zero() {
                v[p] += ks * cp;
                v[self.r + p] += kt * cp;
            }
        }
        v
    }

    /// Bracket of two labels from the commutation table.
    fn bracket(&self, a: BasisLabel, b: BasisLabel) -> Vec<Rational> {
        use BasisLabel::*;
        let r = self.r;
        let neg = |v: Vec<Rational>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
        match (a, b) {
            (S(j), S(k)) => self.st_rhs(rat(2, 1), rat(1, 3), rat(2, 3), j, k),
            (S(j), T(k)) => self.st_rhs(rat(-1, 1), rat(1, 3), rat(-1, 3), j, k),
            (T(j), S(k)) => neg(self.bracket(S(k), T(j))),
            (T(j), T(k)) => self.st_rhs(rat(2, 1), rat(-2, 3), rat(-1, 3), j, k),
            (Y(j, k), S(n)) | (Y(j, k), T(n)) => {
                let offset = if matches!(b, S(_)) { 0 } else { r };
                let mut v = self.zero();
                for p in 0..r {
                    v[offset + p] += self.d.get(p, j, k, n);
                }
                v
            }
            (S(_), Y(..)) | (T(_), Y(..)) => neg(self.bracket(b, a)),
            (Y(j, k), Y(l, n)) => {
                let mut v = self.zero();
                for p in 0..r {
                    let x = self.d.get(p, j, k, l);
                    if !x.is_zero() {
                        self.add_y(&mut v, p, n, x);
                    }
                    let y = self.d.get(p, j, k, n);
                    if !y.is_zero() {
                        self.add_y(&mut v, l, p, y);
                    }
                }
                v
            }
        }
    }

    fn labels(&self) -> Vec<BasisLabel> {
        let mut out: Vec<BasisLabel> = (0..self.r).map(BasisLabel::S).collect();
        out.extend((0..self.r).map(BasisLabel::T));
        out.extend(self.pairs.iter().map(|&(j, k)| BasisLabel::Y(j, k)));
        out
    }

    /// Coefficient rows (over the `Y` symbols) of all cyclic relations.
    fn relations(&self) -> Vec<Vec<Rational>> {
        let r = self.r;
        let mut rows = Vec::new();
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    let mut v = self.zero();
                    for (a, b, last) in [(j, k, l), (k, l, j), (l, j, k)] {
                        for p in 0..r {
                            let cp = self.c.get(p, a, b);
                            if !cp.is_zero() {
                                self.add_y(&mut v, p, last, cp);
                            }
                        }
                    }
                    let y_part = v[2 * r..].to_vec();
                    if y_part.iter().any(|x| !x.is_zero()) {
                        rows.push(y_part);
                    }
                }
            }
        }
        rows
    }
}

/// Abstract Lie algebra on `{S_j, T_j, Y_jk}` modulo the cyclic relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeAlgebra {
    r: usize,
    c: StructureTensor,
    labels: Vec<BasisLabel>,
    free_labels: Vec<BasisLabel>,
    /// Reduced coordinates of every free symbol.
    expand: Vec<Vec<Rational>>,
    /// `brackets[a·dim + b]` = reduced coordinates of `[e_a, e_b]`.
    brackets: Vec<Vec<Rational>>,
    relation_rank: usize,
    compatibility: CheckReport,
}

impl EnvelopeAlgebra {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `2r + r(r−1)/2`, the dimension before any relation is imposed.
    pub fn free_dim(&self) -> usize {
        self.free_labels.len()
    }

    /// Rank of the cyclic relation system among the `Y_jk`.
    pub fn relation_rank(&self) -> usize {
        self.relation_rank
    }

    pub fn structure(&self) -> &StructureTensor {
        &self.c
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Reduced coordinates of a free symbol, e.g. a dependent `Y_jk`.
    pub fn expand(&self, label: BasisLabel) -> Option<&[Rational]> {
        let i = self.free_labels.iter().position(|&l| l == label)?;
        Some(&self.expand[i])
    }

    /// Whether the brackets are well defined on the quotient.
    pub fn compatibility(&self) -> &CheckReport {
        &self.compatibility
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[Rational] {
        &self.brackets[a * self.dim() + b]
    }

    /// Bilinear extension of the bracket table.
    pub fn bracket_vec(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let k = xa * yb;
                for (o, v) in out.iter_mut().zip(self.bracket(a, b)) {
                    if !v.is_zero() {
                        *o += k * v;
                    }
                }
            }
        }
        out
    }

    /// Overwrites the coefficient of `e_c` in `[e_a, e_b]` and the matching
    /// entry of `[e_b, e_a]`.
    pub fn set_bracket_coefficient(&mut self, a: usize, b: usize, c: usize, value: Rational) {
        let n = self.dim();
        self.brackets[a * n + b][c] = value;
        self.brackets[b * n + a][c] = -value;
    }

    /// Non-zero brackets `(a, b, coordinates)` with `a < b`.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &[Rational])> {
        let n = self.dim();
        (0..n)
            .flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
            .map(move |(a, b)| (a, b, self.bracket(a, b)))
            .filter(|(_, _, v)| v.iter().any(|x| !x.is_zero()))
    }
}

pub fn build_envelope(c: &StructureTensor) -> Result<EnvelopeAlgebra, EnvelopeError> {
    let maltsev = is_maltsev(c);
    if !maltsev.passed {
        return Err(EnvelopeError::Precondition(format!("{maltsev}")));
    }
    let d = yamaguti_constants(c);
    let space = FreeSpace::new(c, &d);
    let r = space.r;
    let n_pairs = space.pairs.len();
    let free_labels = space.labels();

    let mut relations = space.relations();
    let pivots = rref(&mut relations);
    let relation_rank = pivots.len();

    // surviving basis: all S, T, and the Y's that are not pivots
    let independent: Vec<usize> = (0..n_pairs).filter(|q| !pivots.contains(q)).collect();
    let dim = 2 * r + independent.len();
    let mut labels: Vec<BasisLabel> = free_labels[..2 * r].to_vec();
    labels.extend(independent.iter().map(|&q| free_labels[2 * r + q]));

    let mut expand = Vec::with_capacity(space.len());
    for i in 0..2 * r {
        let mut v = vec![Rational::zero(); dim];
        v[i] = Rational::one();
        expand.push(v);
    }
    for q in 0..n_pairs {
        let mut v = vec![Rational::zero(); dim];
        if let Some(row) = pivots.iter().position(|&p| p == q) {
            // Y_q + Σ_f rel[f] Y_f = 0 over the independent f
            for (pos, &f) in independent.iter().enumerate() {
                v[2 * r + pos] = -relations[row][f];
            }
        } else {
            let pos = independent.iter().position(|&f| f == q).unwrap();
            v[2 * r + pos] = Rational::one();
        }
        expand.push(v);
    }

    let project = |free: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (q, x) in free.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (o, e) in out.iter_mut().zip(&expand[q]) {
                if !e.is_zero() {
                    *o += x * e;
                }
            }
        }
        out
    };

    // every relation must vanish after projection
    for rel in space.relations() {
        let mut free = space.zero();
        free[2 * r..].copy_from_slice(&rel);
        if project(&free).iter().any(|x| !x.is_zero()) {
            return Err(EnvelopeError::InconsistentRelations(
                "a cyclic relation survives the quotient".into(),
            ));
        }
    }

    let mut brackets = Vec::with_capacity(dim * dim);
    for &a in &labels {
        for &b in &labels {
            brackets.push(project(&space.bracket(a, b)));
        }
    }

    // [Y_dep, Z] must equal Σ α_f [Y_f, Z] for every dependent Y and every symbol Z
    let mut compat_witness = None;
    'outer: for &q in &pivots {
        let dep = free_labels[2 * r + q];
        let alpha = &expand[2 * r + q];
        for &z in &free_labels {
            let direct = project(&space.bracket(dep, z));
            let mut via = vec![Rational::zero(); dim];
            for (pos, &f) in independent.iter().enumerate() {
                let k = alpha[2 * r + pos];
                if k.is_zero() {
                    continue;
                }
                for (o, x) in via
                    .iter_mut()
                    .zip(project(&space.bracket(free_labels[2 * r + f], z)))
                {
                    *o += k * x;
                }
            }
            if direct != via {
                compat_witness = Some(Witness::new(
                    vec![2 * r + q, free_labels.iter().position(|&l| l == z).unwrap()],
                    format!("[{dep}, {z}] disagrees with the expansion of {dep}"),
                ));
                break 'outer;
            }
        }
    }

    Ok(EnvelopeAlgebra {
        r,
        c: c.clone(),
        labels,
        free_labels,
        expand,
        brackets,
        relation_rank,
        compatibility: CheckReport::from_witness("quotient-compatibility", compat_witness),
    })
}

/// Antisymmetry of the table and the Jacobi identity on all basis triples.
pub fn check_jacobi(env: &EnvelopeAlgebra) -> CheckReport {
    let n = env.dim();
    for a in 0..n {
        for b in a..n {
            let sum: Vec<Rational> = env
                .bracket(a, b)
                .iter()
                .zip(env.bracket(b, a))
                .map(|(x, y)| x + y)
                .collect();
            if sum.iter().any(|x| !x.is_zero()) {
                return CheckReport::fail(
                    "jacobi",
                    Witness::new(
                        vec![a, b],
                        format!("[{0},{1}] + [{1},{0}] != 0", env.labels[a], env.labels[b]),
                    ),
                );
            }
        }
    }
    let unit = |a: usize| {
        let mut v = vec![Rational::zero(); n];
        v[a] = Rational::one();
        v
    };
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (ea, eb, ec) = (unit(a), unit(b), unit(c));
                let x = env.bracket_vec(&ea, env.bracket(b, c));
                let y = env.bracket_vec(&eb, env.bracket(c, a));
                let z = env.bracket_vec(&ec, env.bracket(a, b));
                if x.iter()
                    .zip(&y)
                    .zip(&z)
                    .any(|((p, q), s)| !(p + q + s).is_zero())
                {
                    return CheckReport::fail(
                        "jacobi",
                        Witness::new(
                            vec![a, b, c],
                            format!(
                                "J({}, {}, {}) != 0",
                                env.labels[a], env.labels[b], env.labels[c]
                            ),
                        ),
                    );
                }
            }
        }
    }
    CheckReport::pass("jacobi")
}

fn flatten(m: &Matrix) -> Vec<Rational> {
    m.as_slice().to_vec()
}

/// Dimension of the smallest commutator-closed matrix space containing all
/// `S_j` and `T_j`.
pub fn matrix_closure_dim(gen: &GeneratorSet) -> usize {
    let mut basis = EchelonBasis::new();
    let mut elements: Vec<Matrix> = Vec::new();
    for m in gen.s().iter().chain(gen.t()) {
        if basis.insert(&flatten(m)) {
            elements.push(m.clone());
        }
    }
    let mut next = 0;
    while next < elements.len() {
        let x = elements[next].clone();
        for i in 0..next {
            let br = x.commutator(&elements[i]);
            if basis.insert(&flatten(&br)) {
                elements.push(br);
            }
        }
        next += 1;
    }
    basis.dim()
}

/// Outcome of mapping the abstract envelope onto a generator set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizeReport {
    pub report: CheckReport,
    /// `λ` with `c = λ·c_env`; generators are divided by `λ` before the
    /// comparison.
    pub rescale: Rational,
    /// Rank of the image of the envelope basis.
    pub image_dim: usize,
}

/// Checks that `S_j ↦ S_j`, `T_j ↦ T_j`, `Y_jk ↦ Y_jk` (extracted matrices)
/// is a bracket homomorphism from the envelope onto the matrix algebra.
pub fn realize_check(
    env: &EnvelopeAlgebra,
    gen: &GeneratorSet,
    c: &StructureTensor,
) -> Result<RealizeReport, EnvelopeError> {
    if gen.r() != env.r() || c.dim() != env.r() {
        return Err(EnvelopeError::DimensionMismatch(format!(
            "envelope over r={}, generators r={}, tensor r={}",
            env.r(),
            gen.r(),
            c.dim()
        )));
    }
    let glc = check_glc(gen, c).map_err(|e| EnvelopeError::Precondition(format!("{e}")))?;
    if !glc.passed() {
        return Err(EnvelopeError::Precondition(
            "generators violate the commutation table".into(),
        ));
    }
    let rescale = c
        .ratio_to(env.structure())
        .filter(|q| !q.is_zero())
        .ok_or_else(|| {
            EnvelopeError::Precondition("tensor is not a nonzero multiple of the envelope's".into())
        })?;
    let gen = gen.scaled(rescale.recip());
    let glc = check_glc(&gen, env.structure())
        .map_err(|e| EnvelopeError::Precondition(format!("{e}")))?;

    let image_of = |label: BasisLabel| -> Matrix {
        match label {
            BasisLabel::S(j) => gen.s()[j].clone(),
            BasisLabel::T(j) => gen.t()[j].clone(),
            BasisLabel::Y(j, k) => glc.y(j, k).clone(),
        }
    };
    let images: Vec<Matrix> = env.labels().iter().map(|&l| image_of(l)).collect();
    let apply = |coords: &[Rational]| -> Matrix {
        let mut m = Matrix::zeros(gen.dim(), gen.dim());
        for (x, img) in coords.iter().zip(&images) {
            m.add_scaled(*x, img);
        }
        m
    };

    let mut image_basis = EchelonBasis::new();
    for m in &images {
        image_basis.insert(&flatten(m));
    }
    let image_dim = image_basis.dim();

    let mut witness = None;
    for (i, &label) in env.free_labels.iter().enumerate() {
        if apply(&env.expand[i]) != image_of(label) {
            witness = Some(Witness::new(
                vec![i],
                format!("image of {label} violates its expansion"),
            ));
            break;
        }
    }
    if witness.is_none() {
        'scan: for a in 0..env.dim() {
            for b in a + 1..env.dim() {
                if apply(env.bracket(a, b)) != images[a].commutator(&images[b]) {
                    witness = Some(Witness::new(
                        vec![a, b],
                        format!("[{}, {}] is not preserved", env.labels[a], env.labels[b]),
                    ));
                    break 'scan;
                }
            }
        }
    }
    Ok(RealizeReport {
        report: CheckReport::from_witness("realize", witness),
        rescale,
        image_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog_algebra, levi_civita};
    use crate::birep::{octonion_lr_generators, quaternion_lr_generators};
    use crate::rational::int;

    // d for c = ε, written out by hand
    fn su2_yamaguti_closed_form(p: usize, j: usize, k: usize, l: usize) -> Rational {
        let delta = |a: usize, b: usize| i128::from(a == b);
        rat(delta(l, j) * delta(p, k) - delta(l, k) * delta(p, j), 3)
    }

    #[test]
    fn yamaguti_su2_closed_form() {
        let d = yamaguti_constants(&catalog_algebra("su2").unwrap());
        for p in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        assert_eq!(d.get(p, j, k, l), su2_yamaguti_closed_form(p, j, k, l));
                    }
                }
            }
        }
        assert_eq!(d.get(1, 0, 1, 0), rat(1, 3));
        // sanity: the closed form matches 6d = 2 ε_psl ε_sjk
        let eps = |a, b, c| levi_civita(a, b, c);
        for p in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let s: i128 = (0..3).map(|s| eps(p, s, l) * eps(s, j, k)).sum();
                        assert_eq!(su2_yamaguti_closed_form(p, j, k, l) * int(6), int(2 * s));
                    }
                }
            }
        }
    }

    #[test]
    fn yamaguti_abelian_is_zero() {
        assert!(yamaguti_constants(&catalog_algebra("abelian(4)").unwrap()).is_zero());
    }

    #[test]
    fn yamaguti_lie_identity() {
        for name in ["su2", "sl2"] {
            let c = catalog_algebra(name).unwrap();
            let d = yamaguti_constants(&c);
            let r = c.dim();
            for p in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        for l in 0..r {
                            let mut s = Rational::zero();
                            for q in 0..r {
                                s += c.get(p, q, l) * c.get(q, j, k);
                            }
                            assert_eq!(d.get(p, j, k, l) * int(6), s * int(2));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn yamaguti_m7_denominators_divide_three() {
        let d = yamaguti_constants(&catalog_algebra("m7").unwrap());
        let mut nonzero = 0;
        for p in 0..7 {
            for j in 0..7 {
                for k in 0..7 {
                    for l in 0..7 {
                        let x = d.get(p, j, k, l);
                        assert_eq!(3 % x.denom(), 0);
                        assert_eq!(x, -d.get(p, k, j, l));
                        if !x.is_zero() {
                            nonzero += 1;
                        }
                    }
                }
            }
        }
        assert!(nonzero > 0);
    }

    #[test]
    fn su2_envelope() {
        let env = build_envelope(&catalog_algebra("su2").unwrap()).unwrap();
        assert_eq!(env.dim(), 9);
        assert_eq!(env.relation_rank(), 0);
        assert!(env.compatibility().passed);
        assert!(check_jacobi(&env).passed);
    }

    #[test]
    fn abelian_envelope_has_central_yamagutians() {
        let env = build_envelope(&catalog_algebra("abelian(4)").unwrap()).unwrap();
        assert_eq!(env.dim(), 2 * 4 + 6);
        assert_eq!(env.relation_rank(), 0);
        // every Y is central; S and T only bracket into the Y span
        for a in 8..env.dim() {
            for b in 0..env.dim() {
                assert!(env.bracket(a, b).iter().all(Zero::is_zero));
            }
        }
        let y01 = env.index_of(BasisLabel::Y(0, 1)).unwrap();
        assert_eq!(env.bracket(0, 1)[y01], int(2));
        assert_eq!(env.bracket(0, 5)[y01], int(-1));
        assert_eq!(env.bracket(4, 5)[y01], int(2));
        for (_, _, v) in env.nonzero_brackets() {
            assert!(v[..8].iter().all(Zero::is_zero));
        }
        assert!(check_jacobi(&env).passed);
    }

    #[test]
    fn non_maltsev_input_is_rejected() {
        let mut c = catalog_algebra("m7").unwrap();
        c.set_antisymmetric(2, 0, 1, Rational::zero());
        assert!(matches!(
            build_envelope(&c),
            Err(EnvelopeError::Precondition(_))
        ));
    }

    #[test]
    fn m7_envelope_matches_matrix_closure() {
        let m7 = catalog_algebra("m7").unwrap();
        let env = build_envelope(&m7).unwrap();
        assert!(env.compatibility().passed);
        assert!(env.dim() <= 35);
        assert!(check_jacobi(&env).passed);
        let gen = octonion_lr_generators();
        let closure = matrix_closure_dim(&gen);
        assert_eq!(env.dim(), closure);
        let real = realize_check(&env, &gen, &m7).unwrap();
        assert!(real.report.passed, "{}", real.report);
        assert_eq!(real.rescale, int(1));
        assert!(real.image_dim <= env.dim());
    }

    #[test]
    fn dependent_yamagutians_expand_in_the_basis() {
        let env = build_envelope(&catalog_algebra("m7").unwrap()).unwrap();
        for j in 0..7 {
            for k in j + 1..7 {
                let v = env.expand(BasisLabel::Y(j, k)).unwrap();
                assert_eq!(v.len(), env.dim());
                assert!(v[..14].iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn perturbed_bracket_breaks_jacobi() {
        let mut env = build_envelope(&catalog_algebra("su2").unwrap()).unwrap();
        let (s1, s2, t3) = (0, 1, 5);
        let old = env.bracket(s1, s2)[t3];
        env.set_bracket_coefficient(s1, s2, t3, old + int(1));
        assert!(!check_jacobi(&env).passed);
    }

    #[test]
    fn closure_dimensions() {
        assert_eq!(matrix_closure_dim(&quaternion_lr_generators()), 6);
        let zero =
            GeneratorSet::new(vec![Matrix::zeros(3, 3); 2], vec![Matrix::zeros(3, 3); 2]).unwrap();
        assert_eq!(matrix_closure_dim(&zero), 0);
    }

    #[test]
    fn su2_envelope_realized_by_rescaled_quaternions() {
        let su2 = catalog_algebra("su2").unwrap();
        let env = build_envelope(&su2).unwrap();
        let c = su2.scale(int(2));
        let real = realize_check(&env, &quaternion_lr_generators(), &c).unwrap();
        assert!(real.report.passed, "{}", real.report);
        assert_eq!(real.rescale, int(2));
        assert!(matrix_closure_dim(&quaternion_lr_generators()) <= env.dim());
    }

    #[test]
    fn realize_rejects_mutated_generators() {
        let m7 = catalog_algebra("m7").unwrap();
        let env = build_envelope(&m7).unwrap();
        let bad = octonion_lr_generators().with_s_swapped(0, 1);
        assert!(matches!(
            realize_check(&env, &bad, &m7),
            Err(EnvelopeError::Precondition(_))
        ));
    }
}
