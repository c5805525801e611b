//! Local coordinate charts of analytic loops and numeric extraction of their
//! tangent structure constants.
//!
//! This is the only floating-point part of the crate.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::StructureTensor;
use crate::octonion::Octonion;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChartError {
    #[error("point lies outside the chart domain")]
    OutsideDomain,
    #[error("expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("finite-difference step {0} not in (0, 0.1)")]
    InvalidStep(f64),
}

/// Coordinates around the unit of an analytic loop. The unit sits at the
/// origin.
pub trait LoopChart {
    fn dim(&self) -> usize;
    fn multiply(&self, a: &[f64], b: &[f64]) -> Result<Vec<f64>, ChartError>;
    fn invert(&self, a: &[f64]) -> Result<Vec<f64>, ChartError>;
}

/// Unit octonions near 1, parametrized by their imaginary part:
/// `v ↦ (√(1 − |v|²), v)` for `|v| < 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitOctonionChart;

pub fn unit_octonion_chart() -> UnitOctonionChart {
    UnitOctonionChart
}

impl UnitOctonionChart {
    pub fn lift(&self, v: &[f64]) -> Result<Octonion, ChartError> {
        check_len(v, 7)?;
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 >= 1.0 {
            return Err(ChartError::OutsideDomain);
        }
        let mut im = [0.0; 7];
        im.copy_from_slice(v);
        Ok(Octonion::new(libm::sqrt(1.0 - n2), im))
    }

    /// Chart coordinates of a unit octonion with positive real part.
    pub fn project(&self, o: &Octonion) -> Result<Vec<f64>, ChartError> {
        if o.re <= 0.0 {
            return Err(ChartError::OutsideDomain);
        }
        Ok(o.im.to_vec())
    }
}

impl LoopChart for UnitOctonionChart {
    fn dim(&self) -> usize {
        7
    }

    fn multiply(&self, a: &[f64], b: &[f64]) -> Result<Vec<f64>, ChartError> {
        self.project(&(self.lift(a)? * self.lift(b)?))
    }

    fn invert(&self, a: &[f64]) -> Result<Vec<f64>, ChartError> {
        self.project(&self.lift(a)?.conj())
    }
}

/// The positive reals under multiplication in the chart `x ↦ 1 + x`,
/// a one-parameter abelian group.
#[derive(Clone, Copy, Debug, Default)]
pub struct MultiplicativeLineChart;

impl LoopChart for MultiplicativeLineChart {
    fn dim(&self) -> usize {
        1
    }

    fn multiply(&self, a: &[f64], b: &[f64]) -> Result<Vec<f64>, ChartError> {
        check_len(a, 1)?;
        check_len(b, 1)?;
        if a[0] <= -1.0 || b[0] <= -1.0 {
            return Err(ChartError::OutsideDomain);
        }
        Ok(vec![a[0] + b[0] + a[0] * b[0]])
    }

    fn invert(&self, a: &[f64]) -> Result<Vec<f64>, ChartError> {
        check_len(a, 1)?;
        if a[0] <= -1.0 {
            return Err(ChartError::OutsideDomain);
        }
        Ok(vec![-a[0] / (1.0 + a[0])])
    }
}

fn check_len(v: &[f64], expected: usize) -> Result<(), ChartError> {
    if v.len() != expected {
        return Err(ChartError::DimensionMismatch {
            expected,
            found: v.len(),
        });
    }
    Ok(())
}

/// Where the parentheses go in `g h g⁻¹ h⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracketing {
    /// `((gh)g⁻¹)h⁻¹`
    Left,
    /// `g(h(g⁻¹h⁻¹))`
    Right,
}

/// Loop commutator evaluated in chart coordinates.
pub fn chart_commutator(
    chart: &impl LoopChart,
    g: &[f64],
    h: &[f64],
    bracketing: Bracketing,
) -> Result<Vec<f64>, ChartError> {
    let gi = chart.invert(g)?;
    let hi = chart.invert(h)?;
    match bracketing {
        Bracketing::Left => chart.multiply(&chart.multiply(&chart.multiply(g, h)?, &gi)?, &hi),
        Bracketing::Right => chart.multiply(g, &chart.multiply(h, &chart.multiply(&gi, &hi)?)?),
    }
}

/// Floating-point rank-3 tensor, `entries[(i·r + j)·r + k] = c^i_jk`.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatTensor {
    pub dim: usize,
    pub entries: Vec<f64>,
}

impl FloatTensor {
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.entries[(i * self.dim + j) * self.dim + k]
    }

    /// Entrywise max-abs distance to an exact tensor of the same dimension.
    pub fn max_abs_diff(&self, exact: &StructureTensor) -> f64 {
        assert_eq!(self.dim, exact.dim());
        let r = self.dim;
        let mut worst = 0.0f64;
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let q = exact.get(i, j, k);
                    let x = *q.numer() as f64 / *q.denom() as f64;
                    worst = worst.max(libm::fabs(self.get(i, j, k) - x));
                }
            }
        }
        worst
    }

    pub fn max_abs_diff_float(&self, other: &FloatTensor) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| libm::fabs(a - b))
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentEstimate {
    /// Antisymmetrized estimate of `c^i_jk`.
    pub tensor: FloatTensor,
    /// `max |raw^i_jk + raw^i_kj|` before antisymmetrization.
    pub raw_asymmetry: f64,
}

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Estimates `c^i_jk = ∂²(g h g⁻¹ h⁻¹)^i / ∂g^j ∂h^k` at the unit with the
/// central mixed difference
/// `[K(+j,+k) − K(−j,+k) − K(+j,−k) + K(−j,−k)] / (4 step²)`,
/// using left bracketing.
pub fn tangent_structure_constants(
    chart: &impl LoopChart,
    step: f64,
) -> Result<TangentEstimate, ChartError> {
    tangent_structure_constants_with(chart, step, Bracketing::Left)
}

pub fn tangent_structure_constants_with(
    chart: &impl LoopChart,
    step: f64,
    bracketing: Bracketing,
) -> Result<TangentEstimate, ChartError> {
    if !(step > 0.0 && step < 0.1) {
        return Err(ChartError::InvalidStep(step));
    }
    let r = chart.dim();
    let point = |a: usize, s: f64| {
        let mut v = vec![0.0; r];
        v[a] = s;
        v
    };
    let mut raw = vec![0.0; r * r * r];
    let denom = 4.0 * step * step;
    for j in 0..r {
        for k in 0..r {
            let mut acc = vec![0.0; r];
            for (sg, sh, w) in [
                (1.0, 1.0, 1.0),
                (-1.0, 1.0, -1.0),
                (1.0, -1.0, -1.0),
                (-1.0, -1.0, 1.0),
            ] {
                let kv = chart_commutator(
                    chart,
                    &point(j, sg * step),
                    &point(k, sh * step),
                    bracketing,
                )?;
                for (a, x) in acc.iter_mut().zip(kv) {
                    *a += w * x;
                }
            }
            for i in 0..r {
                raw[(i * r + j) * r + k] = acc[i] / denom;
            }
        }
    }
    let mut entries = vec![0.0; r * r * r];
    let mut raw_asymmetry = 0.0f64;
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let a = raw[(i * r + j) * r + k];
                let b = raw[(i * r + k) * r + j];
                raw_asymmetry = raw_asymmetry.max(libm::fabs(a + b));
                entries[(i * r + j) * r + k] = 0.5 * (a - b);
            }
        }
    }
    Ok(TangentEstimate {
        tensor: FloatTensor { dim: r, entries },
        raw_asymmetry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog_algebra;

    fn e(a: usize, s: f64) -> Vec<f64> {
        let mut v = vec![0.0; 7];
        v[a] = s;
        v
    }

    #[test]
    fn unit_axiom_and_inverse() {
        let chart = unit_octonion_chart();
        let v = [0.1, -0.2, 0.05, 0.3, 0.0, -0.1, 0.2];
        let zero = [0.0; 7];
        assert_eq!(chart.multiply(&zero, &v).unwrap(), v.to_vec());
        assert_eq!(chart.multiply(&v, &zero).unwrap(), v.to_vec());
        let inv = chart.invert(&v).unwrap();
        assert_eq!(inv, v.iter().map(|x| -x).collect::<Vec<_>>());
        let prod = chart.multiply(&v, &inv).unwrap();
        assert!(prod.iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn product_of_two_small_units() {
        // (a + h e1)(a + h e2) = a² + a h (e1 + e2) + h² e3, a = √(1 − h²)
        let chart = unit_octonion_chart();
        let h: f64 = 0.1;
        let p = chart.multiply(&e(0, h), &e(1, h)).unwrap();
        let a = (1.0 - h * h).sqrt();
        assert!((p[2] - h * h).abs() < 1e-15);
        assert!((p[0] - a * h).abs() < 1e-15);
        assert!((p[1] - a * h).abs() < 1e-15);
    }

    #[test]
    fn chart_domain_is_enforced() {
        let chart = unit_octonion_chart();
        assert_eq!(chart.invert(&e(0, 1.0)), Err(ChartError::OutsideDomain));
        assert!(matches!(
            chart.multiply(&[0.0; 3], &[0.0; 7]),
            Err(ChartError::DimensionMismatch { .. })
        ));
        // product leaves the positive-real hemisphere
        let big = 0.999;
        assert_eq!(
            chart.multiply(&e(0, big), &e(0, big)),
            Err(ChartError::OutsideDomain)
        );
    }

    #[test]
    fn step_must_be_small_and_positive() {
        let chart = unit_octonion_chart();
        for step in [0.0, -1e-3, 0.1, f64::NAN] {
            assert!(matches!(
                tangent_structure_constants(&chart, step),
                Err(ChartError::InvalidStep(_))
            ));
        }
    }

    #[test]
    fn octonion_constants_match_m7() {
        let est = tangent_structure_constants(&unit_octonion_chart(), 1e-3).unwrap();
        let m7 = catalog_algebra("m7").unwrap();
        assert!(est.tensor.max_abs_diff(&m7) < 1e-5);
        assert!(est.raw_asymmetry <= 1e-6);
    }

    #[test]
    fn abelian_line_has_zero_constants() {
        let est = tangent_structure_constants(&MultiplicativeLineChart, 1e-3).unwrap();
        assert!(est.tensor.entries.iter().all(|x| x.abs() < 1e-8));
        let inv = MultiplicativeLineChart.invert(&[0.25]).unwrap();
        let p = MultiplicativeLineChart.multiply(&[0.25], &inv).unwrap();
        assert!(p[0].abs() < 1e-15);
    }
}
