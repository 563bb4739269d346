//! Truncated power series in one, two, and three variables.

use std::fmt;

use num_traits::Zero;

use super::{rat, Rat};
use crate::{Error, Result};

/// A power series in `x` truncated after `x^order` (inclusive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rat>,
}

impl Series {
    /// `coeffs[n]` is the coefficient of `x^n`; the length fixes the order.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        Series { coeffs }
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        Series::new(counts.iter().map(|&c| rat(c as i64)).collect())
    }

    /// Highest retained exponent.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Product truncated to the shorter operand's order.
    pub fn mul_truncated(&self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = vec![rat(0); order + 1];
        for i in 0..=order {
            for j in 0..=(order - i) {
                let t = &self.coeff(i) * &rhs.coeff(j);
                out[i + j] += t;
            }
        }
        Series::new(out)
    }

    /// Index of the first coefficient that differs from `counts`
    /// (comparing positions `0..=min(order, counts.len()-1)`).
    pub fn first_mismatch(&self, counts: &[u64]) -> Option<usize> {
        let upto = self.coeffs.len().min(counts.len());
        (0..upto).find(|&n| self.coeff(n) != rat(counts[n] as i64))
    }

    /// True when every overlapping coefficient agrees with `counts`.
    pub fn matches_counts(&self, counts: &[u64]) -> bool {
        self.first_mismatch(counts).is_none()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", rendered.join(","))
    }
}

/// A series in `x` whose coefficients are polynomials in a second marker
/// variable `z`, truncated at `x^x_order` and `z^z_order`. Truncation in `z`
/// is deliberate: `z` only ever carries nonnegative exponents here, so a
/// discarded high row can never feed back into a retained one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    x_order: usize,
    z_order: usize,
    /// `slices[n][r]` = coefficient of `x^n z^r`; inner vectors are trimmed.
    slices: Vec<Vec<Rat>>,
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn z_mul(a: &[Rat], b: &[Rat], z_order: usize) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let len = (a.len() + b.len() - 1).min(z_order + 1);
    let mut out = vec![rat(0); len];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() || i > z_order {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if i + j > z_order {
                break;
            }
            out[i + j] += ca * cb;
        }
    }
    trim(out)
}

fn z_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let x = a.get(i).cloned().unwrap_or_else(|| rat(0));
        let y = b.get(i).cloned().unwrap_or_else(|| rat(0));
        out.push(x + y);
    }
    trim(out)
}

impl BiSeries {
    pub fn zero(x_order: usize, z_order: usize) -> Self {
        BiSeries {
            x_order,
            z_order,
            slices: vec![Vec::new(); x_order + 1],
        }
    }

    pub fn one(x_order: usize, z_order: usize) -> Self {
        let mut s = BiSeries::zero(x_order, z_order);
        s.slices[0] = vec![rat(1)];
        s
    }

    pub fn x_order(&self) -> usize {
        self.x_order
    }

    pub fn z_order(&self) -> usize {
        self.z_order
    }

    pub fn coeff(&self, n: usize, r: usize) -> Rat {
        self.slices
            .get(n)
            .and_then(|s| s.get(r))
            .cloned()
            .unwrap_or_else(|| rat(0))
    }

    /// The row of a fixed `z`-exponent as a series in `x`.
    pub fn z_row(&self, r: usize) -> Series {
        Series::new((0..=self.x_order).map(|n| self.coeff(n, r)).collect())
    }

    /// Sum of each `x`-slice over all retained `z`-exponents.
    pub fn row_sums(&self) -> Series {
        Series::new(
            self.slices
                .iter()
                .map(|s| s.iter().fold(rat(0), |acc, c| acc + c))
                .collect(),
        )
    }

    /// Multiply by `x * z^d`.
    pub fn shift_xz(&self, d: usize) -> Self {
        let mut out = BiSeries::zero(self.x_order, self.z_order);
        for n in 0..self.x_order {
            if d > self.z_order {
                break;
            }
            let mut slice = vec![rat(0); d];
            slice.extend(self.slices[n].iter().cloned());
            slice.truncate(self.z_order + 1);
            out.slices[n + 1] = trim(slice);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let x_order = self.x_order.min(rhs.x_order);
        let z_order = self.z_order.min(rhs.z_order);
        let mut out = BiSeries::zero(x_order, z_order);
        for i in 0..=x_order {
            if self.slices[i].is_empty() {
                continue;
            }
            for j in 0..=(x_order - i) {
                let prod = z_mul(&self.slices[i], &rhs.slices[j], z_order);
                out.slices[i + j] = z_add(&out.slices[i + j], &prod);
            }
        }
        out
    }

    /// `1 / (1 - u)` for `u = self`, which must have a vanishing `x^0` slice.
    pub fn geometric(&self) -> Result<Self> {
        if !self.slices[0].is_empty() {
            return Err(Error::Truncation(
                "geometric expansion needs a series with zero constant slice".into(),
            ));
        }
        let mut out = BiSeries::zero(self.x_order, self.z_order);
        out.slices[0] = vec![rat(1)];
        for n in 1..=self.x_order {
            let mut acc: Vec<Rat> = Vec::new();
            for j in 1..=n {
                if self.slices[j].is_empty() {
                    continue;
                }
                let prod = z_mul(&self.slices[j], &out.slices[n - j], self.z_order);
                acc = z_add(&acc, &prod);
            }
            out.slices[n] = acc;
        }
        Ok(out)
    }
}

/// A series in `x` whose coefficients are polynomials in two marker
/// variables `y` and `z`. Unlike [`BiSeries`], exceeding the `y`/`z` caps is
/// an error: callers size the caps so that exact results always fit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriSeries {
    x_order: usize,
    y_order: usize,
    z_order: usize,
    /// `slices[n][b][c]` = coefficient of `x^n y^b z^c`; rows are trimmed.
    slices: Vec<YzPoly>,
}

/// Polynomial in `y` and `z`: `rows[b][c]` is the coefficient of `y^b z^c`.
pub type YzPoly = Vec<Vec<Rat>>;

pub(crate) fn yz_trim(mut p: YzPoly) -> YzPoly {
    for row in p.iter_mut() {
        while row.last().is_some_and(|c| c.is_zero()) {
            row.pop();
        }
    }
    while p.last().is_some_and(|r| r.is_empty()) {
        p.pop();
    }
    p
}

pub(crate) fn yz_add(a: &YzPoly, b: &YzPoly) -> YzPoly {
    let rows = a.len().max(b.len());
    let mut out: YzPoly = Vec::with_capacity(rows);
    for i in 0..rows {
        let ra = a.get(i).map(|r| r.as_slice()).unwrap_or(&[]);
        let rb = b.get(i).map(|r| r.as_slice()).unwrap_or(&[]);
        let cols = ra.len().max(rb.len());
        let mut row = Vec::with_capacity(cols);
        for j in 0..cols {
            let x = ra.get(j).cloned().unwrap_or_else(|| rat(0));
            let y = rb.get(j).cloned().unwrap_or_else(|| rat(0));
            row.push(x + y);
        }
        out.push(row);
    }
    yz_trim(out)
}

pub(crate) fn yz_mul(a: &YzPoly, b: &YzPoly, y_cap: usize, z_cap: usize) -> Result<YzPoly> {
    let mut out: YzPoly = Vec::new();
    for (ba, row_a) in a.iter().enumerate() {
        for (ca, va) in row_a.iter().enumerate() {
            if va.is_zero() {
                continue;
            }
            for (bb, row_b) in b.iter().enumerate() {
                for (cb, vb) in row_b.iter().enumerate() {
                    if vb.is_zero() {
                        continue;
                    }
                    let (y, z) = (ba + bb, ca + cb);
                    if y > y_cap || z > z_cap {
                        return Err(Error::Truncation(format!(
                            "marker exponent y^{y} z^{z} exceeds caps ({y_cap}, {z_cap})"
                        )));
                    }
                    if out.len() <= y {
                        out.resize(y + 1, Vec::new());
                    }
                    if out[y].len() <= z {
                        out[y].resize(z + 1, rat(0));
                    }
                    out[y][z] += va * vb;
                }
            }
        }
    }
    Ok(yz_trim(out))
}

impl TriSeries {
    pub fn new(x_order: usize, y_order: usize, z_order: usize, slices: Vec<YzPoly>) -> Self {
        assert_eq!(slices.len(), x_order + 1);
        TriSeries {
            x_order,
            y_order,
            z_order,
            slices,
        }
    }

    pub fn x_order(&self) -> usize {
        self.x_order
    }

    pub fn y_order(&self) -> usize {
        self.y_order
    }

    pub fn z_order(&self) -> usize {
        self.z_order
    }

    pub fn coeff(&self, n: usize, b: usize, c: usize) -> Rat {
        self.slices
            .get(n)
            .and_then(|s| s.get(b))
            .and_then(|r| r.get(c))
            .cloned()
            .unwrap_or_else(|| rat(0))
    }

    pub fn x_slice(&self, n: usize) -> &YzPoly {
        &self.slices[n]
    }

    /// Specialize `y -> 1`, keeping `z`: a two-variable view of the data.
    pub fn at_y_one(&self) -> BiSeries {
        let mut out = BiSeries::zero(self.x_order, self.z_order);
        for (n, slice) in self.slices.iter().enumerate() {
            let mut acc: Vec<Rat> = Vec::new();
            for row in slice {
                acc = z_add(&acc, row);
            }
            out.slices[n] = acc;
        }
        out
    }

    /// Specialize `y -> 1, z -> 1`: the plain counting series in `x`.
    pub fn at_y_z_one(&self) -> Series {
        Series::new(
            self.slices
                .iter()
                .map(|slice| {
                    slice
                        .iter()
                        .flat_map(|row| row.iter())
                        .fold(rat(0), |acc, c| acc + c)
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_compare_and_display() {
        let s = Series::from_counts(&[1, 1, 2, 4]);
        assert!(s.matches_counts(&[1, 1, 2, 4, 9999]));
        assert_eq!(s.first_mismatch(&[1, 1, 3]), Some(2));
        assert_eq!(s.to_string(), "1,1,2,4");
        assert_eq!(s.order(), 3);
    }

    #[test]
    fn biseries_geometric_matches_rational_row() {
        // 1/(1 - x z) : coefficient of x^n is z^n.
        let u = BiSeries::one(6, 6).shift_xz(1);
        let g = u.geometric().unwrap();
        for n in 0..=6 {
            for r in 0..=6 {
                let expect = if n == r { rat(1) } else { rat(0) };
                assert_eq!(g.coeff(n, r), expect, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn biseries_z_truncation_is_silent() {
        // With z capped at 1, the x^2 z^2 coefficient of 1/(1-xz) is dropped.
        let u = BiSeries::one(4, 1).shift_xz(1);
        let g = u.geometric().unwrap();
        assert_eq!(g.coeff(2, 2), rat(0));
        assert_eq!(g.coeff(1, 1), rat(1));
    }

    #[test]
    fn triseries_specializations() {
        // x-slices: 1, y + z, constructed by hand.
        let slices = vec![vec![vec![rat(1)]], vec![vec![rat(0), rat(1)], vec![rat(1)]]];
        let t = TriSeries::new(1, 1, 1, slices);
        assert_eq!(t.coeff(1, 1, 0), rat(1));
        assert_eq!(t.coeff(1, 0, 1), rat(1));
        assert_eq!(t.at_y_z_one().coeff(1), rat(2));
        assert_eq!(t.at_y_one().coeff(1, 1), rat(1));
    }

    #[test]
    fn yz_mul_respects_caps() {
        let a: YzPoly = vec![vec![rat(0), rat(1)]]; // z
        let b: YzPoly = vec![vec![rat(0), rat(1)]]; // z
        assert!(yz_mul(&a, &b, 4, 1).is_err());
        let ok = yz_mul(&a, &b, 4, 2).unwrap();
        assert_eq!(ok[0][2], rat(1));
    }
}
