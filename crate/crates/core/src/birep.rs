//! Birepresentations of finite loops and generator sets of differentiable
//! birepresentations.
//!
//! A pair `g ↦ (S_g, T_g)` is a birepresentation when `S_e = T_e = 1`,
//! `T_g S_g S_h = S_{gh} T_g` and `S_g T_g T_h = T_{hg} S_g`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::StructureTensor;
use crate::envelope::yamaguti_constants;
use crate::glc::{extract_yamagutians, GlcFamilies, GlcTable, MatrixOps, Scan};
use crate::linalg::{rank, Matrix};
use crate::loops::{is_moufang, CayleyTable};
use crate::octonion;
use crate::rational::{int, Rational};
use crate::report::{CheckReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BirepError {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("matrix for element {0} is singular")]
    Singular(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Matrices `S_g`, `T_g` for every element of a finite loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopBirep {
    table: CayleyTable,
    s: Vec<Matrix>,
    t: Vec<Matrix>,
}

impl LoopBirep {
    pub fn new(table: CayleyTable, s: Vec<Matrix>, t: Vec<Matrix>) -> Result<Self, BirepError> {
        let n = table.order();
        if s.len() != n || t.len() != n {
            return Err(BirepError::SizeMismatch(format!(
                "{} S and {} T matrices for a loop of order {n}",
                s.len(),
                t.len()
            )));
        }
        let size = s[0].rows();
        for m in s.iter().chain(&t) {
            if !m.is_square() || m.rows() != size {
                return Err(BirepError::SizeMismatch(format!(
                    "matrix of shape {}x{} in a birepresentation of size {size}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for (g, (a, b)) in s.iter().zip(&t).enumerate() {
            for m in [a, b] {
                let rows: Vec<Vec<Rational>> = (0..size).map(|i| m.row(i).to_vec()).collect();
                if rank(&rows) != size {
                    return Err(BirepError::Singular(g));
                }
            }
        }
        Ok(Self { table, s, t })
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn s(&self, g: usize) -> &Matrix {
        &self.s[g]
    }

    pub fn t(&self, g: usize) -> &Matrix {
        &self.t[g]
    }

    pub fn size(&self) -> usize {
        self.s[0].rows()
    }

    /// Copy with `S_g` replaced.
    pub fn with_s(&self, g: usize, m: Matrix) -> Result<Self, BirepError> {
        let mut s = self.s.clone();
        s[g] = m;
        Self::new(self.table.clone(), s, self.t.clone())
    }
}

/// Left and right translations as permutation matrices:
/// `S_g: x ↦ gx`, `T_g: x ↦ xg`.
pub fn regular_birep(t: &CayleyTable) -> Result<LoopBirep, BirepError> {
    let moufang = is_moufang(t).map_err(|e| BirepError::Precondition(format!("{e}")))?;
    if !moufang.passed {
        return Err(BirepError::Precondition(format!("{moufang}")));
    }
    let n = t.order();
    let s = (0..n)
        .map(|g| Matrix::permutation(&(0..n).map(|x| t.mul(g, x)).collect::<Vec<_>>()))
        .collect();
    let tr = (0..n)
        .map(|g| Matrix::permutation(&(0..n).map(|x| t.mul(x, g)).collect::<Vec<_>>()))
        .collect();
    LoopBirep::new(t.clone(), s, tr)
}

fn birep_witness(axiom: usize, g: usize, h: usize, b: &LoopBirep, text: &str) -> Witness {
    let t = &b.table;
    Witness::new(
        alloc::vec![axiom, g, h],
        format!("{text} at g={}, h={}", t.name(g), t.name(h)),
    )
}

/// Exact check of the three birepresentation axioms.
pub fn check_birep(b: &LoopBirep) -> CheckReport {
    let n = b.table.order();
    let id = Matrix::identity(b.size());
    if b.s[0] != id || b.t[0] != id {
        return CheckReport::fail(
            "birep",
            Witness::new(alloc::vec![0, 0, 0], "S_e = T_e = 1 fails"),
        );
    }
    for g in 0..n {
        let ts = &b.t[g] * &b.s[g];
        let st = &b.s[g] * &b.t[g];
        for h in 0..n {
            if &ts * &b.s[h] != &b.s[b.table.mul(g, h)] * &b.t[g] {
                return CheckReport::fail(
                    "birep",
                    birep_witness(1, g, h, b, "T_g S_g S_h = S_gh T_g"),
                );
            }
            if &st * &b.t[h] != &b.t[b.table.mul(h, g)] * &b.s[g] {
                return CheckReport::fail(
                    "birep",
                    birep_witness(2, g, h, b, "S_g T_g T_h = T_hg S_g"),
                );
            }
        }
    }
    CheckReport::pass("birep")
}

/// `S_g S_h = S_{gh}`, `T_g T_h = T_{hg}`, `S_g T_h = T_h S_g`.
pub fn check_associative_birep(b: &LoopBirep) -> CheckReport {
    let n = b.table.order();
    for g in 0..n {
        for h in 0..n {
            if &b.s[g] * &b.s[h] != b.s[b.table.mul(g, h)] {
                return CheckReport::fail(
                    "associative-birep",
                    birep_witness(1, g, h, b, "S_g S_h = S_gh"),
                );
            }
            if &b.t[g] * &b.t[h] != b.t[b.table.mul(h, g)] {
                return CheckReport::fail(
                    "associative-birep",
                    birep_witness(2, g, h, b, "T_g T_h = T_hg"),
                );
            }
            if &b.s[g] * &b.t[h] != &b.t[h] * &b.s[g] {
                return CheckReport::fail(
                    "associative-birep",
                    birep_witness(3, g, h, b, "S_g T_h = T_h S_g"),
                );
            }
        }
    }
    CheckReport::pass("associative-birep")
}

/// Generators `(S_j, T_j)`, `j = 1..r`, all `n × n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    s: Vec<Matrix>,
    t: Vec<Matrix>,
}

impl GeneratorSet {
    pub fn new(s: Vec<Matrix>, t: Vec<Matrix>) -> Result<Self, BirepError> {
        if s.len() != t.len() || s.is_empty() {
            return Err(BirepError::SizeMismatch(format!(
                "{} S and {} T generators",
                s.len(),
                t.len()
            )));
        }
        let n = s[0].rows();
        if s.iter().chain(&t).any(|m| !m.is_square() || m.rows() != n) {
            return Err(BirepError::SizeMismatch(
                "generators must all be square of equal size".into(),
            ));
        }
        Ok(Self { s, t })
    }

    pub fn r(&self) -> usize {
        self.s.len()
    }

    pub fn dim(&self) -> usize {
        self.s[0].rows()
    }

    pub fn s(&self) -> &[Matrix] {
        &self.s
    }

    pub fn t(&self) -> &[Matrix] {
        &self.t
    }

    /// All generators multiplied by `k`. If `(S, T)` satisfies the table for
    /// `c`, the scaled set satisfies it for `k·c`.
    pub fn scaled(&self, k: Rational) -> Self {
        Self {
            s: self.s.iter().map(|m| m.scale(k)).collect(),
            t: self.t.iter().map(|m| m.scale(k)).collect(),
        }
    }

    /// Copy with `S_a` and `S_b` exchanged (0-based).
    pub fn with_s_swapped(&self, a: usize, b: usize) -> Self {
        let mut out = self.clone();
        out.s.swap(a, b);
        out
    }
}

// left/right multiplication by e_j on span{1, e_1, ..., e_{size-1}}
fn unit_multiplication(j: usize, size: usize, left: bool) -> Matrix {
    let mut m = Matrix::zeros(size, size);
    for b in 0..size {
        let (s, c) = if left {
            octonion::unit_product(j, b)
        } else {
            octonion::unit_product(b, j)
        };
        m.set(c, b, int(i128::from(s)));
    }
    m
}

/// `S_j = L_{e_j}`, `T_j = R_{e_j}` on the octonions (r = 7, n = 8).
pub fn octonion_lr_generators() -> GeneratorSet {
    GeneratorSet {
        s: (1..8).map(|j| unit_multiplication(j, 8, true)).collect(),
        t: (1..8).map(|j| unit_multiplication(j, 8, false)).collect(),
    }
}

/// `S_j = L_{e_j}`, `T_j = R_{e_j}` on the quaternions `span{1, e1, e2, e3}`
/// (r = 3, n = 4). Their structure constants are `2ε`.
pub fn quaternion_lr_generators() -> GeneratorSet {
    GeneratorSet {
        s: (1..4).map(|j| unit_multiplication(j, 4, true)).collect(),
        t: (1..4).map(|j| unit_multiplication(j, 4, false)).collect(),
    }
}

/// Result of checking the commutation table on a generator set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlcReport {
    pub families: GlcFamilies,
    /// Extracted `Y_jk` at `j·r + k`.
    pub yamagutians: Vec<Matrix>,
    r: usize,
}

impl GlcReport {
    pub fn passed(&self) -> bool {
        self.families.passed()
    }

    /// `Y_jk`, 0-based.
    pub fn y(&self, j: usize, k: usize) -> &Matrix {
        &self.yamagutians[j * self.r + k]
    }
}

/// Extracts `Y_jk` from the `[S_j, T_k]` relation and checks the rest of the
/// table exactly on every index tuple.
pub fn check_glc(gen: &GeneratorSet, c: &StructureTensor) -> Result<GlcReport, BirepError> {
    if gen.r() != c.dim() {
        return Err(BirepError::SizeMismatch(format!(
            "{} generators for a tensor of dimension {}",
            gen.r(),
            c.dim()
        )));
    }
    let d = yamaguti_constants(c);
    let y = extract_yamagutians(&MatrixOps, &gen.s, &gen.t, c);
    let table = GlcTable {
        ops: &MatrixOps,
        s: &gen.s,
        t: &gen.t,
        y: &y,
        c,
        d: &d,
    };
    let families = table.verify(Scan::Full);
    Ok(GlcReport {
        families,
        yamagutians: y,
        r: gen.r(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog_algebra;
    use crate::loops::groups::*;
    use crate::loops::{chein_double, octonion_unit_loop};
    use crate::rational::rat;

    fn unit_vec(n: usize, a: usize) -> Vec<Rational> {
        (0..n).map(|i| int(i128::from(i == a))).collect()
    }

    #[test]
    fn regular_birep_unit_is_identity() {
        for t in [symmetric3(), octonion_unit_loop()] {
            let b = regular_birep(&t).unwrap();
            assert_eq!(*b.s(0), Matrix::identity(t.order()));
            assert_eq!(*b.t(0), Matrix::identity(t.order()));
        }
    }

    #[test]
    fn regular_birep_is_left_translation() {
        let s3 = symmetric3();
        let g = s3.element("(12)").unwrap();
        let b = regular_birep(&s3).unwrap();
        for x in 0..6 {
            assert_eq!(b.s(g).apply(&unit_vec(6, x)), unit_vec(6, s3.mul(g, x)));
        }
        let o = octonion_unit_loop();
        let b = regular_birep(&o).unwrap();
        let (e1, e2) = (o.element("e1").unwrap(), o.element("e2").unwrap());
        let col = b.t(e1).apply(&unit_vec(16, e2));
        assert_eq!(col, unit_vec(16, o.mul(e2, e1)));
    }

    #[test]
    fn regular_birep_axioms() {
        for t in [
            symmetric3(),
            octonion_unit_loop(),
            chein_double(&symmetric3()).unwrap(),
        ] {
            assert!(check_birep(&regular_birep(&t).unwrap()).passed);
        }
        assert!(check_associative_birep(&regular_birep(&cyclic(4)).unwrap()).passed);
        assert!(!check_associative_birep(&regular_birep(&octonion_unit_loop()).unwrap()).passed);
        assert!(
            !check_associative_birep(
                &regular_birep(&chein_double(&symmetric3()).unwrap()).unwrap()
            )
            .passed
        );
    }

    #[test]
    fn broken_birep_is_caught() {
        let o = octonion_unit_loop();
        let b = regular_birep(&o).unwrap();
        let e1 = o.element("e1").unwrap();
        let broken = b.with_s(e1, Matrix::identity(16)).unwrap();
        let report = check_birep(&broken);
        assert!(!report.passed);
        assert!(report.witness.is_some());
    }

    #[test]
    fn birep_construction_errors() {
        let s3 = symmetric3();
        let b = regular_birep(&s3).unwrap();
        assert!(matches!(
            b.with_s(1, Matrix::zeros(6, 6)),
            Err(BirepError::Singular(1))
        ));
        assert!(matches!(
            b.with_s(1, Matrix::identity(5)),
            Err(BirepError::SizeMismatch(_))
        ));
        let broken = s3.with_entry(1, 0, s3.mul(1, 1)).unwrap();
        assert!(matches!(
            regular_birep(&broken),
            Err(BirepError::Precondition(_))
        ));
    }

    #[test]
    fn octonion_generators_act_like_units() {
        let g = octonion_lr_generators();
        assert_eq!((g.r(), g.dim()), (7, 8));
        // S_1·1 = e1, S_1·e1 = -1, T_2·e1 = e1e2 = e3
        assert_eq!(g.s()[0].apply(&unit_vec(8, 0)), unit_vec(8, 1));
        let minus_one: Vec<Rational> = unit_vec(8, 0).iter().map(|x| -x).collect();
        assert_eq!(g.s()[0].apply(&unit_vec(8, 1)), minus_one);
        assert_eq!(g.t()[1].apply(&unit_vec(8, 1)), unit_vec(8, 3));
    }

    #[test]
    fn glc_holds_for_octonions() {
        let report = check_glc(&octonion_lr_generators(), &catalog_algebra("m7").unwrap()).unwrap();
        for f in report.families.all() {
            assert!(f.passed, "{f}");
        }
    }

    #[test]
    fn glc_quaternion_yamagutians_reduce() {
        let c = catalog_algebra("su2").unwrap().scale(int(2));
        let gen = quaternion_lr_generators();
        let report = check_glc(&gen, &c).unwrap();
        assert!(report.passed());
        for j in 0..3 {
            for k in 0..3 {
                assert!(gen.s()[j].commutator(&gen.t()[k]).is_zero());
                let mut expected = Matrix::zeros(4, 4);
                for p in 0..3 {
                    expected.add_scaled(rat(1, 3) * c.get(p, j, k), &(&gen.s()[p] - &gen.t()[p]));
                }
                assert_eq!(*report.y(j, k), expected);
                let mut ss = Matrix::zeros(4, 4);
                for p in 0..3 {
                    ss.add_scaled(c.get(p, j, k), &gen.s()[p]);
                }
                assert_eq!(gen.s()[j].commutator(&gen.s()[k]), ss);
            }
        }
    }

    #[test]
    fn glc_detects_swapped_generators() {
        let gen = octonion_lr_generators().with_s_swapped(0, 1);
        let report = check_glc(&gen, &catalog_algebra("m7").unwrap()).unwrap();
        assert!(!report.passed());
        let w = report.families.commutation.witness.clone().unwrap();
        assert!(w.detail.contains("[S,S]"), "{}", w.detail);
    }

    #[test]
    fn glc_dimension_mismatch() {
        let err = check_glc(&quaternion_lr_generators(), &catalog_algebra("m7").unwrap());
        assert!(matches!(err, Err(BirepError::SizeMismatch(_))));
    }
}
