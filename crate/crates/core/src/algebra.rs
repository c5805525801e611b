//! Anticommutative algebras given by exact structure constants.
//!
//! A [`StructureTensor`] stores `c^i_jk` with the product
//! `[x, y]^i = Σ c^i_jk x^j y^k`. Indices are 0-based in the API; witnesses
//! and labels use the 1-based names `e1, e2, ...`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::octonion;
use crate::rational::{int, Rational};
use crate::report::{CheckReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be positive")]
    EmptyAlgebra,
    #[error("entries are not antisymmetric at c[{i}][{j}][{k}] (1-based)")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("unknown algebra `{0}`")]
    UnknownName(String),
}

/// Structure constants of an anticommutative algebra of dimension `r`.
///
/// Invariant: `c[i][j][k] == -c[i][k][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTensor {
    dim: usize,
    entries: Vec<Rational>,
    // (i, j, k, value) for every nonzero entry, kept in sync with `entries`
    support: Vec<(usize, usize, usize, Rational)>,
}

impl StructureTensor {
    pub fn zero(dim: usize) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::EmptyAlgebra);
        }
        Ok(Self {
            dim,
            entries: vec![Rational::zero(); dim * dim * dim],
            support: Vec::new(),
        })
    }

    /// Builds a tensor from `f(i, j, k)`, rejecting non-antisymmetric input.
    pub fn from_fn(
        dim: usize,
        mut f: impl FnMut(usize, usize, usize) -> Rational,
    ) -> Result<Self, AlgebraError> {
        let mut t = Self::zero(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let idx = t.index(i, j, k);
                    t.entries[idx] = f(i, j, k);
                }
            }
        }
        t.validate()?;
        t.rebuild_support();
        Ok(t)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in j..self.dim {
                    if self.get(i, j, k) != -self.get(i, k, j) {
                        return Err(AlgebraError::NotAntisymmetric {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn rebuild_support(&mut self) {
        let d = self.dim;
        self.support.clear();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        self.support.push((i, j, k, v));
                    }
                }
            }
        }
    }

    #[inline]
    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^i_jk`, 0-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        self.entries[self.index(i, j, k)]
    }

    /// Nonzero entries `(i, j, k, c^i_jk)`.
    pub fn support(&self) -> &[(usize, usize, usize, Rational)] {
        &self.support
    }

    /// Sets `c^i_jk = value` and `c^i_kj = -value`.
    pub fn set_antisymmetric(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let a = self.index(i, j, k);
        let b = self.index(i, k, j);
        if j == k {
            self.entries[a] = Rational::zero();
        } else {
            self.entries[a] = value;
            self.entries[b] = -value;
        }
        self.rebuild_support();
    }

    pub fn scale(&self, k: Rational) -> Self {
        let mut t = self.clone();
        for x in t.entries.iter_mut() {
            *x *= k;
        }
        t.rebuild_support();
        t
    }

    /// Returns `λ` with `self = λ·other`, if one exists.
    pub fn ratio_to(&self, other: &StructureTensor) -> Option<Rational> {
        if self.dim != other.dim {
            return None;
        }
        let mut ratio: Option<Rational> = None;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (false, true) => return None,
                (true, false) => match ratio {
                    Some(q) if !q.is_zero() => return None,
                    _ => ratio = Some(Rational::zero()),
                },
                (false, false) => {
                    let q = a / b;
                    match ratio {
                        Some(p) if p != q => return None,
                        _ => ratio = Some(q),
                    }
                }
            }
        }
        Some(ratio.unwrap_or_else(Rational::one))
    }

    pub fn basis(&self, a: usize) -> TangentVector {
        TangentVector::basis(self.dim, a)
    }

    fn check_dim(&self, x: &TangentVector) -> Result<(), AlgebraError> {
        if x.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    // unchecked bracket over the support
    fn bracket_raw(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for &(i, j, k, c) in &self.support {
            let (a, b) = (x[j], y[k]);
            if !a.is_zero() && !b.is_zero() {
                out[i] += c * a * b;
            }
        }
        out
    }

    fn jacobiator_raw(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        let a = self.bracket_raw(x, &self.bracket_raw(y, z));
        let b = self.bracket_raw(y, &self.bracket_raw(z, x));
        let c = self.bracket_raw(z, &self.bracket_raw(x, y));
        a.iter()
            .zip(&b)
            .zip(&c)
            .map(|((p, q), r)| p + q + r)
            .collect()
    }
}

/// Exact tangent vector. Its length must match the tensor it is used with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentVector(pub Vec<Rational>);

impl TangentVector {
    pub fn zero(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    /// Basis vector `e_{a+1}`.
    pub fn basis(dim: usize, a: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[a] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i128]) -> Self {
        Self(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl core::ops::Add for &TangentVector {
    type Output = TangentVector;

    fn add(self, rhs: &TangentVector) -> TangentVector {
        TangentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl core::ops::Neg for &TangentVector {
    type Output = TangentVector;

    fn neg(self) -> TangentVector {
        TangentVector(self.0.iter().map(|a| -a).collect())
    }
}

/// `[x, y]^i = Σ c^i_jk x^j y^k`
pub fn bracket(
    c: &StructureTensor,
    x: &TangentVector,
    y: &TangentVector,
) -> Result<TangentVector, AlgebraError> {
    c.check_dim(x)?;
    c.check_dim(y)?;
    Ok(TangentVector(c.bracket_raw(&x.0, &y.0)))
}

/// `J(x, y, z) = [x,[y,z]] + [y,[z,x]] + [z,[x,y]]`
pub fn jacobiator(
    c: &StructureTensor,
    x: &TangentVector,
    y: &TangentVector,
    z: &TangentVector,
) -> Result<TangentVector, AlgebraError> {
    c.check_dim(x)?;
    c.check_dim(y)?;
    c.check_dim(z)?;
    Ok(TangentVector(c.jacobiator_raw(&x.0, &y.0, &z.0)))
}

/// Jacobi identity on basis triples `a < b < c`. The Jacobiator is trilinear
/// and totally antisymmetric, so these triples decide it.
pub fn is_lie(c: &StructureTensor) -> CheckReport {
    let r = c.dim();
    let e: Vec<TangentVector> = (0..r).map(|a| c.basis(a)).collect();
    for a in 0..r {
        for b in a + 1..r {
            for d in b + 1..r {
                let j = c.jacobiator_raw(&e[a].0, &e[b].0, &e[d].0);
                if j.iter().any(|x| !x.is_zero()) {
                    return CheckReport::fail(
                        "lie",
                        Witness::new(
                            vec![a + 1, b + 1, d + 1],
                            format!("J(e{}, e{}, e{}) != 0", a + 1, b + 1, d + 1),
                        ),
                    );
                }
            }
        }
    }
    CheckReport::pass("lie")
}

/// Mal'tsev identity `[J(x,y,z), x] = J(x, y, [x,z])`.
///
/// The identity is quadratic in `x` and linear in `y`, `z`, so over a field
/// of characteristic 0 it suffices to take `x` in `{e_a} ∪ {e_a + e_b}` and
/// `y`, `z` basis vectors.
pub fn is_maltsev(c: &StructureTensor) -> CheckReport {
    let r = c.dim();
    let e: Vec<TangentVector> = (0..r).map(|a| c.basis(a)).collect();
    let mut probes: Vec<(Vec<usize>, TangentVector)> =
        (0..r).map(|a| (vec![a], e[a].clone())).collect();
    for a in 0..r {
        for b in a + 1..r {
            probes.push((vec![a, b], &e[a] + &e[b]));
        }
    }
    for (label, x) in &probes {
        for y in 0..r {
            for z in 0..r {
                let lhs = c.bracket_raw(&c.jacobiator_raw(&x.0, &e[y].0, &e[z].0), &x.0);
                let xz = c.bracket_raw(&x.0, &e[z].0);
                let rhs = c.jacobiator_raw(&x.0, &e[y].0, &xz);
                if lhs != rhs {
                    let x_name = label
                        .iter()
                        .map(|a| format!("e{}", a + 1))
                        .collect::<Vec<_>>()
                        .join("+");
                    let mut indices: Vec<usize> = label.iter().map(|a| a + 1).collect();
                    indices.extend([y + 1, z + 1]);
                    return CheckReport::fail(
                        "maltsev",
                        Witness::new(indices, format!("x={x_name}, y=e{}, z=e{}", y + 1, z + 1)),
                    );
                }
            }
        }
    }
    CheckReport::pass("maltsev")
}

/// Built-in tensors: `abelian(r)`, `su2`, `sl2`, `m7`.
///
/// `m7` is the commutator algebra of the imaginary octonions,
/// `c^i_jk = 2 f_ijk` in the table of [`crate::octonion`].
pub fn catalog_algebra(name: &str) -> Result<StructureTensor, AlgebraError> {
    let unknown = || AlgebraError::UnknownName(name.into());
    match name {
        "su2" => su2(),
        "sl2" => sl2(),
        "m7" => m7(),
        _ => {
            let r = name
                .strip_prefix("abelian(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(unknown)?;
            StructureTensor::zero(r)
        }
    }
}

/// Levi-Civita symbol on 0-based indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i128 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn su2() -> Result<StructureTensor, AlgebraError> {
    StructureTensor::from_fn(3, |i, j, k| int(levi_civita(i, j, k)))
}

// basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
fn sl2() -> Result<StructureTensor, AlgebraError> {
    let mut c = StructureTensor::zero(3)?;
    c.set_antisymmetric(1, 0, 1, int(2));
    c.set_antisymmetric(2, 0, 2, int(-2));
    c.set_antisymmetric(0, 1, 2, int(1));
    Ok(c)
}

fn m7() -> Result<StructureTensor, AlgebraError> {
    StructureTensor::from_fn(7, |i, j, k| {
        int(2 * i128::from(octonion::structure(j + 1, k + 1, i + 1)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn e(r: usize, a: usize) -> TangentVector {
        TangentVector::basis(r, a - 1)
    }

    #[test]
    fn su2_bracket_is_cross_product() {
        let c = catalog_algebra("su2").unwrap();
        assert_eq!(bracket(&c, &e(3, 1), &e(3, 2)).unwrap(), e(3, 3));
        assert!(bracket(&c, &e(3, 1), &e(3, 1)).unwrap().is_zero());
    }

    #[test]
    fn bracket_rejects_wrong_length() {
        let c = catalog_algebra("su2").unwrap();
        let err = bracket(&c, &e(3, 1), &TangentVector::zero(4)).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::DimensionMismatch {
                expected: 3,
                found: 4
            }
        );
    }

    #[test]
    fn m7_bracket_of_first_units() {
        let c = catalog_algebra("m7").unwrap();
        let v = bracket(&c, &e(7, 1), &e(7, 2)).unwrap();
        assert_eq!(v, TangentVector::from_ints(&[0, 0, 2, 0, 0, 0, 0]));
        assert_eq!(c.get(2, 0, 1), int(2));
    }

    #[test]
    fn jacobiator_on_quaternionic_triple_vanishes() {
        let c = catalog_algebra("m7").unwrap();
        assert!(jacobiator(&c, &e(7, 1), &e(7, 2), &e(7, 3))
            .unwrap()
            .is_zero());
        let su2 = catalog_algebra("su2").unwrap();
        assert!(jacobiator(&su2, &e(3, 1), &e(3, 2), &e(3, 3))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn lie_checks() {
        assert!(is_lie(&catalog_algebra("su2").unwrap()).passed);
        assert!(is_lie(&catalog_algebra("sl2").unwrap()).passed);
        assert!(is_lie(&catalog_algebra("abelian(4)").unwrap()).passed);
        let m7 = is_lie(&catalog_algebra("m7").unwrap());
        assert!(!m7.passed);
        assert_eq!(m7.witness.unwrap().indices, vec![1, 2, 4]);
    }

    #[test]
    fn maltsev_checks() {
        for name in ["su2", "sl2", "abelian(3)", "m7"] {
            assert!(is_maltsev(&catalog_algebra(name).unwrap()).passed, "{name}");
        }
    }

    #[test]
    fn zeroing_one_m7_constant_breaks_maltsev() {
        let mut c = catalog_algebra("m7").unwrap();
        c.set_antisymmetric(2, 0, 1, Rational::zero());
        let report = is_maltsev(&c);
        assert!(!report.passed);
        // the witness must reproduce by direct evaluation
        let w = report.witness.unwrap();
        let idx = &w.indices;
        let x = if idx.len() == 3 {
            e(7, idx[0])
        } else {
            &e(7, idx[0]) + &e(7, idx[1])
        };
        let (y, z) = (e(7, idx[idx.len() - 2]), e(7, idx[idx.len() - 1]));
        let lhs = bracket(&c, &jacobiator(&c, &x, &y, &z).unwrap(), &x).unwrap();
        let rhs = jacobiator(&c, &x, &y, &bracket(&c, &x, &z).unwrap()).unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn catalog_names() {
        assert_eq!(catalog_algebra("abelian(5)").unwrap().dim(), 5);
        assert!(catalog_algebra("abelian(5)").unwrap().support().is_empty());
        assert_eq!(catalog_algebra("su2").unwrap().get(2, 0, 1), int(1));
        assert!(matches!(
            catalog_algebra("g2"),
            Err(AlgebraError::UnknownName(_))
        ));
        assert!(matches!(
            catalog_algebra("abelian(0)"),
            Err(AlgebraError::EmptyAlgebra)
        ));
        assert!(catalog_algebra("abelian(x)").is_err());
    }

    #[test]
    fn from_fn_rejects_symmetric_entries() {
        let err =
            StructureTensor::from_fn(2, |i, j, k| if i == 0 && j != k { int(1) } else { int(0) });
        assert_eq!(
            err,
            Err(AlgebraError::NotAntisymmetric { i: 1, j: 1, k: 2 })
        );
    }

    #[test]
    fn ratio_between_tensors() {
        let su2 = catalog_algebra("su2").unwrap();
        let doubled = su2.scale(int(2));
        assert_eq!(doubled.ratio_to(&su2), Some(int(2)));
        assert_eq!(su2.ratio_to(&doubled), Some(rat(1, 2)));
        assert_eq!(su2.ratio_to(&catalog_algebra("sl2").unwrap()), None);
    }
}
