//! Structural decompositions at the largest values, and the generic
//! avoidance recursion built on them.
//!
//! * A 132-avoider splits at its maximum into two independent halves with
//!   the left half's values all above the right half's.
//! * A permutation with exactly one occurrence of 132 falls into exactly
//!   one of three shapes: the occurrence sits wholly left of the maximum,
//!   wholly right of it, or is the triple `(i, n, i+1)` with `i` placed
//!   just before `n` and `i+1` after the following block.
//! * A permutation avoiding all six length-4 patterns that place value 1
//!   more than one spot before value 2 splits around `n-1` and `n` into
//!   three descending-interval blocks.
//!
//! [`gf_by_block_recursion`] turns the first split into a memoized
//! computation of the generating function counting 132-avoiders that also
//! avoid an arbitrary 132-avoiding pattern, solving one linear equation
//! per pattern because the pattern reappears on both sides of its own
//! recursion.

use std::collections::BTreeMap;

use crate::exact::RatFun;
use crate::perm::{
    self, prefix_suffix_decomposition, standardize_bytes, Permutation,
};
use crate::{Error, Result};

/// A permutation split around its largest value(s), parts standardized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    /// 132-avoider `(left, n, right)`; left values all exceed right values.
    AvoiderSplit {
        left: Permutation,
        right: Permutation,
    },
    /// Exactly one 132, lying wholly inside `left`.
    OnceInLeft {
        left: Permutation,
        right: Permutation,
    },
    /// Exactly one 132, lying wholly inside `right`.
    OnceInRight {
        left: Permutation,
        right: Permutation,
    },
    /// Exactly one 132, namely `(i, n, i+1)`: the permutation reads
    /// `(upper, i, n, mid, i+1, low)` with `upper` on the values above
    /// `i+1`, `mid` directly below `i`, and `low` at the bottom.
    OnceAtMax {
        upper: Permutation,
        mid: Permutation,
        low: Permutation,
    },
    /// All six gap patterns avoided, `n-1` before `n`:
    /// `(a, n-1, b, n, c)` with descending value blocks `a > b > c`.
    GapFreeMaxSecond {
        a: Permutation,
        b: Permutation,
        c: Permutation,
    },
    /// All six gap patterns avoided, `n` before `n-1`:
    /// `(a, n, b, n-1, c)` with descending value blocks `a > b > c`.
    GapFreeMaxFirst {
        a: Permutation,
        b: Permutation,
        c: Permutation,
    },
}

fn p132() -> Permutation {
    Permutation::new(vec![1, 3, 2]).expect("valid")
}

/// Checks that `vals` is exactly the integer interval `lo..=hi` as a set.
fn is_interval(vals: &[u8], lo: usize, hi: usize) -> bool {
    if hi < lo {
        return vals.is_empty();
    }
    if vals.len() != hi - lo + 1 {
        return false;
    }
    let mut seen = vec![false; hi - lo + 1];
    for &v in vals {
        let v = v as usize;
        if v < lo || v > hi || seen[v - lo] {
            return false;
        }
        seen[v - lo] = true;
    }
    true
}

/// Splits a nonempty 132-avoider at its maximum.
pub fn split_at_max(alpha: &Permutation) -> Result<Decomposition> {
    if alpha.is_empty() {
        return Err(Error::Precondition("cannot split the empty permutation".into()));
    }
    if alpha.contains(&p132()) {
        return Err(Error::Precondition(format!("{alpha} contains 132")));
    }
    let n = alpha.len();
    let pos = alpha.position_of(n as u8).expect("max present");
    let (left, right) = (&alpha.values()[..pos], &alpha.values()[pos + 1..]);
    if !is_interval(left, right.len() + 1, n - 1) {
        return Err(Error::Precondition(format!(
            "{alpha}: values left of the maximum must all exceed those right of it"
        )));
    }
    Ok(Decomposition::AvoiderSplit {
        left: standardize_bytes(left),
        right: standardize_bytes(right),
    })
}

/// Classifies a permutation containing exactly one occurrence of 132 into
/// one of the three shapes.
pub fn classify_one_132(alpha: &Permutation) -> Result<Decomposition> {
    let pat = p132();
    if alpha.occurrences_capped(&pat, 1) != 1 {
        return Err(Error::Precondition(format!(
            "{alpha} does not contain 132 exactly once"
        )));
    }
    let n = alpha.len();
    let pos = alpha.position_of(n as u8).expect("max present");
    let (left, right) = (&alpha.values()[..pos], &alpha.values()[pos + 1..]);
    let left_p = standardize_bytes(left);
    let right_p = standardize_bytes(right);
    let clean_split = is_interval(left, right.len() + 1, n - 1);
    if clean_split {
        let in_left = left_p.occurrences_capped(&pat, 1);
        let in_right = right_p.occurrences_capped(&pat, 1);
        return match (in_left, in_right) {
            (1, 0) => Ok(Decomposition::OnceInLeft {
                left: left_p,
                right: right_p,
            }),
            (0, 1) => Ok(Decomposition::OnceInRight {
                left: left_p,
                right: right_p,
            }),
            _ => Err(Error::Precondition(format!(
                "{alpha}: clean split yet occurrence counts ({in_left},{in_right}) are off"
            ))),
        };
    }
    // The occurrence crosses the maximum: it must be (i, n, i+1) with i the
    // entry just before n and i+1 somewhere after.
    let Some((&i, upper_vals)) = left.split_last() else {
        return Err(Error::Precondition(format!(
            "{alpha}: crossing occurrence with nothing before the maximum"
        )));
    };
    let Some(w) = right.iter().position(|&v| v == i + 1) else {
        return Err(Error::Precondition(format!(
            "{alpha}: expected value {} after the maximum",
            i + 1
        )));
    };
    let (mid_vals, low_vals) = (&right[..w], &right[w + 1..]);
    let r = low_vals.len();
    let i = i as usize;
    if !is_interval(upper_vals, i + 2, n - 1)
        || !is_interval(mid_vals, r + 1, i - 1)
        || !is_interval(low_vals, 1, r)
    {
        return Err(Error::Precondition(format!(
            "{alpha}: crossing shape has wrong value intervals"
        )));
    }
    let upper = standardize_bytes(upper_vals);
    let mid = standardize_bytes(mid_vals);
    let low = standardize_bytes(low_vals);
    for part in [&upper, &mid, &low] {
        if part.contains(&pat) {
            return Err(Error::Precondition(format!(
                "{alpha}: a block of the crossing shape contains 132"
            )));
        }
    }
    Ok(Decomposition::OnceAtMax { upper, mid, low })
}

/// Splits a permutation avoiding all six gap patterns (`1324`, `1342`,
/// `1423`, `1432`, `3142`, `4132`) around its two largest values.
pub fn gap_free_split(alpha: &Permutation) -> Result<Decomposition> {
    let n = alpha.len();
    if n < 2 {
        return Err(Error::Precondition(format!(
            "the two-maxima split needs length >= 2, got {n}"
        )));
    }
    for pat in perm::lp_set(4)? {
        if alpha.contains(&pat) {
            return Err(Error::Precondition(format!(
                "{alpha} contains the gap pattern {pat}"
            )));
        }
    }
    let p_max = alpha.position_of(n as u8).expect("max present");
    let p_next = alpha.position_of((n - 1) as u8).expect("next-max present");
    let (first, second) = (p_max.min(p_next), p_max.max(p_next));
    let vals = alpha.values();
    let (a_vals, b_vals, c_vals) = (
        &vals[..first],
        &vals[first + 1..second],
        &vals[second + 1..],
    );
    let (r, s) = (c_vals.len(), c_vals.len() + b_vals.len());
    if !is_interval(a_vals, s + 1, n - 2)
        || !is_interval(b_vals, r + 1, s)
        || !is_interval(c_vals, 1, r)
    {
        return Err(Error::Precondition(format!(
            "{alpha}: blocks around the two maxima are not descending intervals"
        )));
    }
    let (a, b, c) = (
        standardize_bytes(a_vals),
        standardize_bytes(b_vals),
        standardize_bytes(c_vals),
    );
    if p_next < p_max {
        Ok(Decomposition::GapFreeMaxSecond { a, b, c })
    } else {
        Ok(Decomposition::GapFreeMaxFirst { a, b, c })
    }
}

/// Rebuilds the original permutation from a decomposition.
pub fn reassemble(d: &Decomposition) -> Result<Permutation> {
    // Appends `part` shifted up by `offset`.
    fn extend(vals: &mut Vec<u8>, part: &Permutation, offset: usize) {
        vals.extend(part.values().iter().map(|&v| v + offset as u8));
    }
    let mut vals = Vec::new();
    match d {
        Decomposition::AvoiderSplit { left, right }
        | Decomposition::OnceInLeft { left, right }
        | Decomposition::OnceInRight { left, right } => {
            let n = left.len() + right.len() + 1;
            extend(&mut vals, left, right.len());
            vals.push(n as u8);
            extend(&mut vals, right, 0);
        }
        Decomposition::OnceAtMax { upper, mid, low } => {
            let n = upper.len() + mid.len() + low.len() + 3;
            let i = low.len() + mid.len() + 1;
            extend(&mut vals, upper, i + 1);
            vals.push(i as u8);
            vals.push(n as u8);
            extend(&mut vals, mid, low.len());
            vals.push((i + 1) as u8);
            extend(&mut vals, low, 0);
        }
        Decomposition::GapFreeMaxSecond { a, b, c }
        | Decomposition::GapFreeMaxFirst { a, b, c } => {
            let n = a.len() + b.len() + c.len() + 2;
            let s = b.len() + c.len();
            let first_max = matches!(d, Decomposition::GapFreeMaxFirst { .. });
            extend(&mut vals, a, s);
            vals.push(if first_max { n } else { n - 1 } as u8);
            extend(&mut vals, b, c.len());
            vals.push(if first_max { n - 1 } else { n } as u8);
            extend(&mut vals, c, 0);
        }
    }
    Permutation::new(vals)
}

/// Generating function of 132-avoiders additionally avoiding `tau`
/// (which must itself avoid 132), by structural recursion with
/// memoization. The empty pattern is contained in everything, so its
/// generating function is 0; from there the recursion is self-contained.
pub fn gf_by_block_recursion(tau: &Permutation) -> Result<RatFun> {
    let mut memo: BTreeMap<Permutation, RatFun> = BTreeMap::new();
    gf_memo(tau, &mut memo)
}

fn gf_memo(tau: &Permutation, memo: &mut BTreeMap<Permutation, RatFun>) -> Result<RatFun> {
    if tau.is_empty() {
        return Ok(RatFun::zero());
    }
    if let Some(hit) = memo.get(tau) {
        return Ok(hit.clone());
    }
    let (prefixes, suffixes) = prefix_suffix_decomposition(tau)?;
    // prefixes = [∅, π^0, …, π^r]; suffixes = [τ, σ^1, …, σ^r, ∅].
    // The recursion F = 1 + x·Σ_j (F_{π^j} − F_{π^{j−1}})·F_{σ^j} contains
    // the unknown F twice: as F_{σ^0} (σ^0 = τ) and, when r ≥ 1, as
    // F_{π^r} (π^r = τ). Solving the linear equation for F:
    //   r = 0:  F = 1 / (1 − x·F_{π^0})
    //   r ≥ 1:  F = (1 + x·mid − x·F_{π^{r−1}}·F_{σ^r})
    //              / (1 − x·F_{π^0} − x·F_{σ^r})
    // with mid = Σ_{j=1}^{r-1} (F_{π^j} − F_{π^{j−1}})·F_{σ^j}.
    let r = prefixes.len() - 2;
    let x = RatFun::x();
    let f_pi0 = gf_memo(&prefixes[1], memo)?;
    let result = if r == 0 {
        let den = &RatFun::one() - &(&x * &f_pi0);
        RatFun::one().div(&den)?
    } else {
        let mut mid = RatFun::zero();
        for j in 1..r {
            let f_pj = gf_memo(&prefixes[j + 1], memo)?;
            let f_pj_prev = gf_memo(&prefixes[j], memo)?;
            let f_sj = gf_memo(&suffixes[j], memo)?;
            mid = &mid + &(&(&f_pj - &f_pj_prev) * &f_sj);
        }
        let f_pi_last = gf_memo(&prefixes[r], memo)?;
        let f_sigma_r = gf_memo(&suffixes[r], memo)?;
        let num = &(&RatFun::one() + &(&x * &mid)) - &(&x * &(&f_pi_last * &f_sigma_r));
        let den = &(&RatFun::one() - &(&x * &f_pi0)) - &(&x * &f_sigma_r);
        num.div(&den)?
    };
    memo.insert(tau.clone(), result.clone());
    Ok(result)
}
