//! The octonion multiplication table used everywhere in the crate.
//!
//! Basis `1, e1, ..., e7` with `e_a e_b = -δ_ab + Σ_c f_abc e_c`, where `f` is
//! totally antisymmetric and `f_abc = +1` on the oriented triples in
//! [`TRIPLES`]. Index 0 stands for the unit.

use core::ops::{Add, Mul, Neg, Sub};

/// Oriented triples `(a, b, c)` with `e_a e_b = e_c`.
pub const TRIPLES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 7, 6],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 6, 5],
];

/// Product of two basis units as `(sign, index)`.
pub type UnitProduct = (i8, usize);

const fn build_table() -> [[UnitProduct; 8]; 8] {
    let mut t = [[(0i8, 0usize); 8]; 8];
    let mut a = 0;
    while a < 8 {
        t[0][a] = (1, a);
        t[a][0] = (1, a);
        if a > 0 {
            t[a][a] = (-1, 0);
        }
        a += 1;
    }
    let mut n = 0;
    while n < 7 {
        let [x, y, z] = TRIPLES[n];
        // cyclic rotations carry +1, reversed order -1
        t[x][y] = (1, z);
        t[y][z] = (1, x);
        t[z][x] = (1, y);
        t[y][x] = (-1, z);
        t[z][y] = (-1, x);
        t[x][z] = (-1, y);
        n += 1;
    }
    t
}

static TABLE: [[UnitProduct; 8]; 8] = build_table();

/// `e_a e_b` for basis indices `a, b` in `0..8`.
#[inline]
pub fn unit_product(a: usize, b: usize) -> UnitProduct {
    TABLE[a][b]
}

/// Structure tensor `f_abc` for imaginary indices `1..=7`.
pub fn structure(a: usize, b: usize, c: usize) -> i8 {
    if a == 0 || b == 0 || c == 0 || a == b {
        return 0;
    }
    let (s, k) = TABLE[a][b];
    if k == c {
        s
    } else {
        0
    }
}

/// Real octonion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Octonion {
    pub re: f64,
    pub im: [f64; 7],
}

impl Octonion {
    pub const ONE: Octonion = Octonion {
        re: 1.0,
        im: [0.0; 7],
    };

    pub fn new(re: f64, im: [f64; 7]) -> Self {
        Self { re, im }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re,
            im: self.im.map(|x| -x),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im.iter().map(|x| x * x).sum::<f64>()
    }

    fn coord(&self, a: usize) -> f64 {
        if a == 0 {
            self.re
        } else {
            self.im[a - 1]
        }
    }
}

impl Mul for Octonion {
    type Output = Octonion;

    fn mul(self, rhs: Octonion) -> Octonion {
        let mut out = [0.0f64; 8];
        for a in 0..8 {
            let x = self.coord(a);
            if x == 0.0 {
                continue;
            }
            for b in 0..8 {
                let y = rhs.coord(b);
                if y == 0.0 {
                    continue;
                }
                let (s, c) = TABLE[a][b];
                out[c] += f64::from(s) * x * y;
            }
        }
        let mut im = [0.0; 7];
        im.copy_from_slice(&out[1..]);
        Octonion { re: out[0], im }
    }
}

impl Add for Octonion {
    type Output = Octonion;

    fn add(self, rhs: Octonion) -> Octonion {
        let mut im = self.im;
        for (a, b) in im.iter_mut().zip(rhs.im) {
            *a += b;
        }
        Octonion {
            re: self.re + rhs.re,
            im,
        }
    }
}

impl Sub for Octonion {
    type Output = Octonion;

    fn sub(self, rhs: Octonion) -> Octonion {
        self + -rhs
    }
}

impl Neg for Octonion {
    type Output = Octonion;

    fn neg(self) -> Octonion {
        Octonion {
            re: -self.re,
            im: self.im.map(|x| -x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_pair_of_imaginary_units_has_one_product() {
        for a in 1..8 {
            for b in 1..8 {
                if a == b {
                    continue;
                }
                let hits = (1..8).filter(|&c| structure(a, b, c) != 0).count();
                assert_eq!(hits, 1, "pair ({a},{b})");
                let (s, c) = unit_product(a, b);
                assert_eq!(structure(a, b, c), s);
                // total antisymmetry
                assert_eq!(structure(b, a, c), -s);
                assert_eq!(structure(b, c, a), s);
                assert_eq!(structure(a, c, b), -s);
            }
        }
    }

    #[test]
    fn listed_products() {
        assert_eq!(unit_product(1, 2), (1, 3));
        assert_eq!(unit_product(2, 1), (-1, 3));
        assert_eq!(unit_product(1, 1), (-1, 0));
        assert_eq!(unit_product(1, 7), (1, 6));
        assert_eq!(unit_product(1, 6), (-1, 7));
        assert_eq!(unit_product(3, 5), (-1, 6));
    }

    #[test]
    fn units_are_alternative() {
        // (xx)y = x(xy) and (yx)x = y(xx) on all basis pairs
        for a in 0..8 {
            for b in 0..8 {
                let (s1, xx) = unit_product(a, a);
                let (s2, l) = unit_product(xx, b);
                let (s3, xy) = unit_product(a, b);
                let (s4, r) = unit_product(a, xy);
                assert_eq!((s1 * s2, l), (s3 * s4, r));
            }
        }
    }

    #[test]
    fn octonion_norm_is_multiplicative() {
        let x = Octonion::new(0.3, [0.1, -0.2, 0.5, 0.7, -0.1, 0.05, 0.4]);
        let y = Octonion::new(-0.6, [0.2, 0.3, -0.1, 0.0, 0.9, -0.3, 0.2]);
        let lhs = (x * y).norm_sqr();
        let rhs = x.norm_sqr() * y.norm_sqr();
        assert!((lhs - rhs).abs() < 1e-12);
        let unit = x * x.conj();
        assert!((unit.re - x.norm_sqr()).abs() < 1e-12);
        assert!(unit.im.iter().all(|v| v.abs() < 1e-12));
    }
}
