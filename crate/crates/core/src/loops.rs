//! Finite loops given by Cayley tables.
//!
//! Elements are indices `0..n`; index 0 is the unit. Row index is the left
//! factor. Every scan visits tuples in lexicographic order, so the reported
//! witness is always the lowest-index one.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::octonion;
use crate::report::{CheckReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("element index {0} out of range")]
    OutOfRange(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    table: Vec<usize>,
    names: Option<Vec<String>>,
}

impl CayleyTable {
    /// Validates shape and index range; the algebraic properties are left to
    /// the checkers.
    pub fn new(rows: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self, LoopError> {
        let order = rows.len();
        if order == 0 {
            return Err(LoopError::Malformed("empty table".into()));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(LoopError::Malformed(format!(
                    "row {r} has {} entries, expected {order}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= order) {
                return Err(LoopError::Malformed(format!(
                    "row {r} contains out-of-range index {bad}"
                )));
            }
        }
        if let Some(names) = &names {
            if names.len() != order {
                return Err(LoopError::Malformed(format!(
                    "{} names for {order} elements",
                    names.len()
                )));
            }
        }
        Ok(Self {
            order,
            table: rows.into_iter().flatten().collect(),
            names,
        })
    }

    fn from_fn(order: usize, names: Vec<String>, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..order)
            .flat_map(|a| (0..order).map(move |b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        Self {
            order,
            table,
            names: Some(names),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|n| n == name)
    }

    /// Copy of the table with one entry overwritten.
    pub fn with_entry(&self, row: usize, col: usize, value: usize) -> Result<Self, LoopError> {
        for x in [row, col, value] {
            if x >= self.order {
                return Err(LoopError::OutOfRange(x));
            }
        }
        let mut t = self.clone();
        t.table[row * self.order + col] = value;
        Ok(t)
    }

    /// Two-sided inverse of `g`, if it exists.
    pub fn inverse(&self, g: usize) -> Option<usize> {
        let right = (0..self.order).find(|&h| self.mul(g, h) == 0)?;
        (self.mul(right, g) == 0).then_some(right)
    }

    fn check_element(&self, g: usize) -> Result<(), LoopError> {
        if g >= self.order {
            return Err(LoopError::OutOfRange(g));
        }
        Ok(())
    }
}

/// Latin-square property.
pub fn is_quasigroup(t: &CayleyTable) -> CheckReport {
    let n = t.order();
    let mut seen = vec![false; n];
    for r in 0..n {
        seen.fill(false);
        for c in 0..n {
            let x = t.mul(r, c);
            if seen[x] {
                return CheckReport::fail(
                    "quasigroup",
                    Witness::new(vec![r], format!("row {r} repeats {}", t.name(x))),
                );
            }
            seen[x] = true;
        }
    }
    for c in 0..n {
        seen.fill(false);
        for r in 0..n {
            let x = t.mul(r, c);
            if seen[x] {
                return CheckReport::fail(
                    "quasigroup",
                    Witness::new(vec![c], format!("column {c} repeats {}", t.name(x))),
                );
            }
            seen[x] = true;
        }
    }
    CheckReport::pass("quasigroup")
}

/// Index 0 is a two-sided unit.
pub fn has_unit(t: &CayleyTable) -> CheckReport {
    let bad = (0..t.order()).find(|&g| t.mul(0, g) != g || t.mul(g, 0) != g);
    CheckReport::from_witness(
        "unit",
        bad.map(|g| Witness::new(vec![g], format!("{} is not fixed by the unit", t.name(g)))),
    )
}

pub fn has_inverses(t: &CayleyTable) -> CheckReport {
    let bad = (0..t.order()).find(|&g| t.inverse(g).is_none());
    CheckReport::from_witness(
        "inverses",
        bad.map(|g| Witness::new(vec![g], format!("{} has no two-sided inverse", t.name(g)))),
    )
}

/// `(ag)(ha) = (a(gh))a` for all triples, plus two-sided inverses.
///
/// Requires a quasigroup with unit; a violated precondition is an error, not
/// a failed check.
pub fn is_moufang(t: &CayleyTable) -> Result<CheckReport, LoopError> {
    for pre in [is_quasigroup(t), has_unit(t)] {
        if !pre.passed {
            return Err(LoopError::Precondition(pre.to_string()));
        }
    }
    let n = t.order();
    for a in 0..n {
        for g in 0..n {
            let ag = t.mul(a, g);
            for h in 0..n {
                let lhs = t.mul(ag, t.mul(h, a));
                let rhs = t.mul(t.mul(a, t.mul(g, h)), a);
                if lhs != rhs {
                    return Ok(CheckReport::fail(
                        "moufang",
                        Witness::new(
                            vec![a, g, h],
                            format!("a={}, g={}, h={}", t.name(a), t.name(g), t.name(h)),
                        ),
                    ));
                }
            }
        }
    }
    let inv = has_inverses(t);
    if let Some(w) = inv.witness {
        return Ok(CheckReport::fail("moufang", w));
    }
    Ok(CheckReport::pass("moufang"))
}

/// `(gh)a = g(ha)` for all triples.
pub fn is_associative(t: &CayleyTable) -> CheckReport {
    let n = t.order();
    for g in 0..n {
        for h in 0..n {
            let gh = t.mul(g, h);
            for a in 0..n {
                if t.mul(gh, a) != t.mul(g, t.mul(h, a)) {
                    return CheckReport::fail(
                        "associative",
                        Witness::new(
                            vec![g, h, a],
                            format!(
                                "({}{}){} != {}({}{})",
                                t.name(g),
                                t.name(h),
                                t.name(a),
                                t.name(g),
                                t.name(h),
                                t.name(a)
                            ),
                        ),
                    );
                }
            }
        }
    }
    CheckReport::pass("associative")
}

/// `((gh)g⁻¹)h⁻¹`, always bracketed from the left.
pub fn loop_commutator(t: &CayleyTable, g: usize, h: usize) -> Result<usize, LoopError> {
    t.check_element(g)?;
    t.check_element(h)?;
    let gi = t.inverse(g).ok_or(LoopError::NoInverse(g))?;
    let hi = t.inverse(h).ok_or(LoopError::NoInverse(h))?;
    Ok(t.mul(t.mul(t.mul(g, h), gi), hi))
}

fn require_group(g: &CayleyTable) -> Result<(), LoopError> {
    for report in [is_quasigroup(g), has_unit(g), is_associative(g)] {
        if !report.passed {
            return Err(LoopError::NotAGroup(report.to_string()));
        }
    }
    Ok(())
}

/// Chein double `M(G, 2)` on `G ∪ Gu`.
///
/// Element `g` keeps index `g`; `gu` gets index `n + g`. Multiplication:
/// `g·h = gh`, `g·(hu) = (hg)u`, `(gu)·h = (gh⁻¹)u`, `(gu)·(hu) = h⁻¹g`.
pub fn chein_double(g: &CayleyTable) -> Result<CayleyTable, LoopError> {
    require_group(g)?;
    let n = g.order();
    let inv: Vec<usize> = (0..n)
        .map(|x| g.inverse(x).ok_or(LoopError::NoInverse(x)))
        .collect::<Result<_, _>>()?;
    let mut names: Vec<String> = (0..n).map(|x| g.name(x)).collect();
    names.extend((0..n).map(|x| format!("{}u", g.name(x))));
    Ok(CayleyTable::from_fn(2 * n, names, |a, b| {
        match (a < n, b < n) {
            (true, true) => g.mul(a, b),
            (true, false) => n + g.mul(b - n, a),
            (false, true) => n + g.mul(a - n, inv[b]),
            (false, false) => g.mul(inv[b - n], a - n),
        }
    }))
}

/// The 16 elements `±1, ±e1, ..., ±e7` under octonion multiplication.
///
/// Index `8s + a` is `(-1)^s e_a` (`e_0 = 1`), so 0 is `1` and 8 is `-1`.
pub fn octonion_unit_loop() -> CayleyTable {
    let names = (0..16)
        .map(|x| {
            let sign = if x >= 8 { "-" } else { "" };
            match x % 8 {
                0 => format!("{sign}1"),
                a => format!("{sign}e{a}"),
            }
        })
        .collect();
    CayleyTable::from_fn(16, names, |x, y| {
        let (s, c) = octonion::unit_product(x % 8, y % 8);
        let negative = (x >= 8) ^ (y >= 8) ^ (s < 0);
        c + if negative { 8 } else { 0 }
    })
}

/// Small groups used as test inputs.
pub mod groups {
    use super::*;

    fn power_name(base: &str, k: usize) -> String {
        match k {
            0 => "e".into(),
            1 => base.into(),
            _ => format!("{base}^{k}"),
        }
    }

    pub fn cyclic(n: usize) -> CayleyTable {
        assert!(n > 0);
        CayleyTable::from_fn(n, (0..n).map(|k| power_name("a", k)).collect(), |a, b| {
            (a + b) % n
        })
    }

    /// Pairs `(x, y)` indexed `x·|B| + y`.
    pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> CayleyTable {
        let m = b.order();
        let names = (0..a.order() * m)
            .map(|i| {
                let (x, y) = (i / m, i % m);
                if x == 0 && y == 0 {
                    "e".into()
                } else {
                    format!("({},{})", a.name(x), b.name(y))
                }
            })
            .collect();
        CayleyTable::from_fn(a.order() * m, names, |p, q| {
            a.mul(p / m, q / m) * m + b.mul(p % m, q % m)
        })
    }

    /// Dihedral group of order `2n`; `r^k s^m` has index `k + n·m`.
    pub fn dihedral(n: usize) -> CayleyTable {
        assert!(n > 0);
        let names = (0..2 * n)
            .map(|i| {
                let (k, m) = (i % n, i / n);
                match (k, m) {
                    (0, 0) => "e".into(),
                    (_, 0) => power_name("r", k),
                    (0, _) => "s".into(),
                    _ => format!("{}s", power_name("r", k)),
                }
            })
            .collect();
        CayleyTable::from_fn(2 * n, names, |x, y| {
            let (a, m) = (x % n, x / n);
            let (b, p) = (y % n, y / n);
            let k = if m == 0 { (a + b) % n } else { (a + n - b) % n };
            k + n * ((m + p) % 2)
        })
    }

    /// `S3` as permutations of `{1,2,3}`; the product `gh` applies `g` first.
    pub fn symmetric3() -> CayleyTable {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
            .map(String::from)
            .to_vec();
        CayleyTable::from_fn(6, names, |g, h| {
            let composed: [usize; 3] = core::array::from_fn(|x| PERMS[h][PERMS[g][x]]);
            PERMS.iter().position(|p| *p == composed).unwrap()
        })
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}` (the subloop of the octonion unit
    /// loop spanned by `e1, e2, e3`).
    pub fn quaternion8() -> CayleyTable {
        let labels = ["1", "i", "j", "k"];
        let names = (0..8)
            .map(|x| format!("{}{}", if x >= 4 { "-" } else { "" }, labels[x % 4]))
            .collect();
        CayleyTable::from_fn(8, names, |x, y| {
            let (s, c) = octonion::unit_product(x % 4, y % 4);
            let negative = (x >= 4) ^ (y >= 4) ^ (s < 0);
            c + if negative { 4 } else { 0 }
        })
    }

    /// Every group of order at most 8, up to isomorphism.
    pub fn small_groups() -> Vec<(&'static str, CayleyTable)> {
        let z2 = cyclic(2);
        vec![
            ("Z1", cyclic(1)),
            ("Z2", cyclic(2)),
            ("Z3", cyclic(3)),
            ("Z4", cyclic(4)),
            ("Z2xZ2", direct_product(&z2, &z2)),
            ("Z5", cyclic(5)),
            ("Z6", cyclic(6)),
            ("S3", symmetric3()),
            ("Z7", cyclic(7)),
            ("Z8", cyclic(8)),
            ("Z4xZ2", direct_product(&cyclic(4), &z2)),
            ("Z2xZ2xZ2", direct_product(&direct_product(&z2, &z2), &z2)),
            ("D4", dihedral(4)),
            ("Q8", quaternion8()),
        ]
    }

    pub fn by_name(name: &str) -> Option<CayleyTable> {
        small_groups()
            .into_iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(_, t)| t)
    }
}
