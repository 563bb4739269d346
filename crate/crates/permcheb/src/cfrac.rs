//! Occurrence-counting generating functions as truncated continued
//! fractions and as a trivariate functional equation.
//!
//! * [`cf_biseries`]: the two-variable series whose `x^n z^r` coefficient
//!   counts 132-avoiders of length `n` with exactly `r` occurrences of the
//!   increasing pattern of length `k`; level `j` of the continued fraction
//!   carries the numerator `x·z^C(j-1, k-1)`.
//! * [`statistics_triseries`]: the solution of
//!   `F(x,y,z) = 1 + x·F(xy, yz, z)·F(x,y,z)`, whose `x^n y^b z^c`
//!   coefficient counts 132-avoiders of length `n` with `b` occurrences of
//!   `12` and `c` occurrences of `123`.

use num_traits::{ToPrimitive, Zero};

use crate::exact::{binomial, rat, yz_add, yz_mul, BiSeries, TriSeries, YzPoly};
use crate::{Error, Result};

/// Truncation bounds for one continued-fraction evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CfSpec {
    /// Length of the increasing pattern whose occurrences `z` tracks.
    pub pattern_len: usize,
    /// Number of continued-fraction levels evaluated.
    pub depth: usize,
    /// Series order in `x`.
    pub x_order: usize,
    /// Series order in `z`.
    pub z_order: usize,
}

impl CfSpec {
    /// Depth defaults to the `x` order — sufficient because every level
    /// contributes at least one factor of `x`.
    pub fn new(pattern_len: usize, x_order: usize, z_order: usize) -> Result<Self> {
        CfSpec::with_depth(pattern_len, x_order, x_order, z_order)
    }

    /// Explicit depth; rejected when below the `x` order.
    pub fn with_depth(
        pattern_len: usize,
        depth: usize,
        x_order: usize,
        z_order: usize,
    ) -> Result<Self> {
        if pattern_len < 2 {
            return Err(Error::Precondition(format!(
                "the tracked pattern needs length >= 2, got {pattern_len}"
            )));
        }
        if depth < x_order {
            return Err(Error::Precondition(format!(
                "depth {depth} below x-order {x_order} would drop terms"
            )));
        }
        Ok(CfSpec {
            pattern_len,
            depth,
            x_order,
            z_order,
        })
    }
}

/// `z`-exponent of the numerator at level `j` (1-based): `C(j-1, k-1)`.
fn level_exponent(j: usize, pattern_len: usize) -> Result<usize> {
    let d = binomial(j as i64 - 1, pattern_len as i64 - 1);
    d.to_usize().ok_or_else(|| {
        Error::Truncation(format!("level exponent C({}, {}) overflows", j - 1, pattern_len - 1))
    })
}

/// Evaluates the continued fraction bottom-up in truncated bivariate
/// arithmetic. Exponents beyond the `z` order fall off the end silently —
/// sound because `z` exponents only ever add.
pub fn cf_biseries(spec: CfSpec) -> Result<BiSeries> {
    let mut value = BiSeries::one(spec.x_order, spec.z_order);
    for j in (1..=spec.depth).rev() {
        let d = level_exponent(j, spec.pattern_len)?;
        value = value.shift_xz(d).geometric()?;
    }
    Ok(value)
}

/// CSV rendering of a bivariate coefficient table: `n,r,count` rows in
/// lexicographic `(n, r)` order, zero entries skipped.
pub fn biseries_csv(b: &BiSeries) -> String {
    let mut out = String::from("n,r,count\n");
    for n in 0..=b.x_order() {
        for r in 0..=b.z_order() {
            let c = b.coeff(n, r);
            if !c.is_zero() {
                out.push_str(&format!("{n},{r},{c}\n"));
            }
        }
    }
    out
}

/// Hard size guard for the trivariate solver (raisable via `PERMCHEB_MAX_N`).
pub const DEFAULT_TRISERIES_CAP: usize = 10;

/// Solves `F(x,y,z) = 1 + x·F(xy,yz,z)·F(x,y,z)` by x-degree. The
/// substitution `(x,y,z) -> (xy,yz,z)` sends the monomial `x^a y^b z^c` to
/// `x^a y^{a+b} z^{b+c}`, so the coefficient of `x^n` depends only on
/// lower-degree slices and the iteration closes after `n_max` rounds.
/// Orders in `y` and `z` are the largest possible statistic values,
/// `C(n_max, 2)` and `C(n_max, 3)`, so nothing truncates.
pub fn statistics_triseries(n_max: usize) -> Result<TriSeries> {
    crate::oracle::guard(n_max, DEFAULT_TRISERIES_CAP)?;
    let y_order = binomial(n_max as i64, 2)
        .to_usize()
        .ok_or_else(|| Error::Truncation("y order overflows".into()))?;
    let z_order = binomial(n_max as i64, 3)
        .to_usize()
        .ok_or_else(|| Error::Truncation("z order overflows".into()))?;

    // slices[n] is the yz-polynomial coefficient of x^n.
    let mut slices: Vec<YzPoly> = vec![vec![vec![rat(1)]]];
    for n in 1..=n_max {
        let mut slice: YzPoly = Vec::new();
        for a in 0..n {
            let b = n - 1 - a;
            let shifted = substitute_slice(&slices[a], a);
            let term = yz_mul(&shifted, &slices[b], y_order, z_order)?;
            slice = yz_add(&slice, &term);
        }
        slices.push(slice);
    }
    Ok(TriSeries::new(n_max, y_order, z_order, slices))
}

/// Applies `(x,y,z) -> (xy,yz,z)` to one x-slice: `(b,c) -> (a+b, b+c)`.
fn substitute_slice(slice: &YzPoly, a: usize) -> YzPoly {
    let mut out: YzPoly = Vec::new();
    for (b, row) in slice.iter().enumerate() {
        for (c, coeff) in row.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let nb = a + b;
            let nc = b + c;
            if out.len() <= nb {
                out.resize(nb + 1, Vec::new());
            }
            if out[nb].len() <= nc {
                out[nb].resize(nc + 1, rat(0));
            }
            out[nb][nc] = &out[nb][nc] + coeff;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::parse_constraint_set;
    use crate::oracle::count_upto;

    #[test]
    fn base_row_is_the_bounded_avoider_series() {
        // z = 0 keeps only levels with exponent zero: the plain approximant.
        let b = cf_biseries(CfSpec::new(3, 5, 0).unwrap()).unwrap();
        assert!(b.z_row(0).matches_counts(&[1, 1, 2, 4, 8, 16]));
        let b4 = cf_biseries(CfSpec::new(4, 6, 0).unwrap()).unwrap();
        assert!(b4.z_row(0).matches_counts(&[1, 1, 2, 5, 13, 34, 89]));
    }

    #[test]
    fn rows_match_oracle_occurrence_counts() {
        for (k, r_max, n_max) in [(2usize, 3usize, 6usize), (3, 2, 6)] {
            let b = cf_biseries(CfSpec::new(k, n_max, r_max).unwrap()).unwrap();
            for r in 0..=r_max {
                let id: String = ('1'..).take(k).collect();
                let cs = parse_constraint_set(&format!("avoid:132;exactly:{r}:{id}"))
                    .unwrap();
                let oracle = count_upto(&cs, n_max).unwrap();
                assert!(
                    b.z_row(r).matches_counts(&oracle.counts),
                    "k={k} r={r}: {} vs {:?}",
                    b.z_row(r),
                    oracle.counts
                );
            }
        }
    }

    #[test]
    fn deeper_evaluation_is_stable() {
        let shallow = cf_biseries(CfSpec::new(3, 6, 3).unwrap()).unwrap();
        let deep = cf_biseries(CfSpec::with_depth(3, 12, 6, 3).unwrap()).unwrap();
        for n in 0..=6 {
            for r in 0..=3 {
                assert_eq!(shallow.coeff(n, r), deep.coeff(n, r), "({n},{r})");
            }
        }
        assert!(CfSpec::with_depth(3, 4, 6, 3).is_err());
    }

    #[test]
    fn row_sums_are_catalan_for_any_pattern_length() {
        for k in 2..=5 {
            // z order C(6,k-1)-ish is enough to hold every occurrence count.
            let b = cf_biseries(CfSpec::new(k, 6, 20).unwrap()).unwrap();
            assert!(
                b.row_sums().matches_counts(&[1, 1, 2, 5, 14, 42, 132]),
                "k={k}"
            );
        }
    }

    #[test]
    fn functional_equation_slices() {
        let t = statistics_triseries(4).unwrap();
        // x^3: profiles over the five 132-avoiders of length 3.
        assert_eq!(t.coeff(3, 0, 0), rat(1));
        assert_eq!(t.coeff(3, 1, 0), rat(2));
        assert_eq!(t.coeff(3, 2, 0), rat(1));
        assert_eq!(t.coeff(3, 3, 1), rat(1));
        assert_eq!(t.coeff(3, 3, 0), rat(0));
    }

    #[test]
    fn specializations_recover_simpler_series() {
        let t = statistics_triseries(6).unwrap();
        assert!(t.at_y_z_one().matches_counts(&[1, 1, 2, 5, 14, 42, 132]));
        // y = 1 leaves the occurrence count of the increasing triple.
        let via_cf = cf_biseries(CfSpec::new(3, 6, t.z_order()).unwrap()).unwrap();
        let direct = t.at_y_one();
        for n in 0..=6 {
            for r in 0..=t.z_order() {
                assert_eq!(direct.coeff(n, r), via_cf.coeff(n, r), "({n},{r})");
            }
        }
    }

    #[test]
    fn triseries_guard() {
        assert!(statistics_triseries(11).is_err());
    }

    #[test]
    fn csv_table_shape() {
        let b = cf_biseries(CfSpec::new(3, 3, 1).unwrap()).unwrap();
        let csv = biseries_csv(&b);
        assert!(csv.starts_with("n,r,count\n"));
        assert!(csv.contains("3,0,4\n"));
        assert!(csv.contains("3,1,1\n"));
        assert!(!csv.contains("1,1,"), "zero entries are skipped: {csv}");
    }
}
