//! Brute-force ground truth: exhaustive scans of `S_n` filtered by a
//! constraint set. Deliberately naive — every closed form in the crate is
//! checked against these counts.
//!
//! Resource guards: counting stops at `n = 12` and listing at `n = 10` by
//! default; set `PERMCHEB_MAX_N` to raise both.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::perm::{ConstraintSet, Permutation};
use crate::{Error, Result};

/// Largest `n` scanned by [`count_upto`] without an explicit override.
pub const DEFAULT_COUNT_CAP: usize = 12;
/// Largest `n` accepted by [`list_matching`] without an explicit override.
pub const DEFAULT_LIST_CAP: usize = 10;

fn env_cap() -> Option<usize> {
    std::env::var("PERMCHEB_MAX_N").ok()?.trim().parse().ok()
}

/// Resolves a size guard: the built-in default, raisable via the
/// `PERMCHEB_MAX_N` environment variable.
pub(crate) fn guard(n: usize, default_cap: usize) -> Result<()> {
    let cap = env_cap().unwrap_or(default_cap).max(default_cap);
    if n > cap {
        return Err(Error::ResourceCap { requested: n, cap });
    }
    Ok(())
}

/// Exact counts `#{π ∈ S_n : π satisfies the constraints}` for `n = 0..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    /// Constraint list in literal syntax.
    pub constraint: String,
    /// `counts[n]` is the count for `S_n`.
    pub counts: Vec<u64>,
}

impl CountTable {
    /// CSV rendering with an `n,count` header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }

    /// Compact JSON rendering: `{"constraint": …, "counts": […]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Visits every member of `S_n` in lexicographic order.
fn scan_s_n(n: usize, mut f: impl FnMut(&Permutation)) {
    let mut p = Permutation::identity(n).expect("guarded length");
    loop {
        f(&p);
        if !p.advance_lex() {
            return;
        }
    }
}

/// Counts constraint-satisfying permutations in `S_0..=S_n_max` by full
/// enumeration.
pub fn count_upto(cs: &ConstraintSet, n_max: usize) -> Result<CountTable> {
    guard(n_max, DEFAULT_COUNT_CAP)?;
    let mut counts = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut count = 0u64;
        scan_s_n(n, |p| {
            if cs.satisfied_by(p) {
                count += 1;
            }
        });
        counts.push(count);
    }
    Ok(CountTable {
        constraint: cs.to_string(),
        counts,
    })
}

/// All members of `S_n` satisfying the constraints, in lexicographic order.
pub fn list_matching(cs: &ConstraintSet, n: usize) -> Result<Vec<Permutation>> {
    guard(n, DEFAULT_LIST_CAP)?;
    let mut out = Vec::new();
    scan_s_n(n, |p| {
        if cs.satisfied_by(p) {
            out.push(p.clone());
        }
    });
    Ok(out)
}

/// Distribution of the LIS-growth bit sequence over `S_{p-2}`: maps each
/// length-`p-3` sequence to the number of permutations producing it. This
/// is the weight table consumed by the layered-family sum formulas.
pub fn a_sequence_counts(p: usize) -> Result<BTreeMap<Vec<u8>, u64>> {
    if p < 4 {
        return Err(Error::Precondition(format!(
            "profile counts need p >= 4, got {p}"
        )));
    }
    profile_distribution(p - 2)
}

/// Same distribution taken over `S_p` itself (length `p-1` sequences);
/// kept for side-by-side comparison with [`a_sequence_counts`].
pub fn a_sequence_counts_full(p: usize) -> Result<BTreeMap<Vec<u8>, u64>> {
    if p == 0 {
        return Err(Error::Precondition("profile counts need p >= 1".into()));
    }
    profile_distribution(p)
}

fn profile_distribution(m: usize) -> Result<BTreeMap<Vec<u8>, u64>> {
    guard(m, DEFAULT_LIST_CAP)?;
    let mut map = BTreeMap::new();
    scan_s_n(m, |p| {
        *map.entry(p.a_sequence()).or_insert(0) += 1;
    });
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::parse_constraint_set;

    fn counts(text: &str, n_max: usize) -> Vec<u64> {
        count_upto(&parse_constraint_set(text).unwrap(), n_max)
            .unwrap()
            .counts
    }

    #[test]
    fn catalan_for_single_avoidance() {
        assert_eq!(counts("avoid:132", 6), vec![1, 1, 2, 5, 14, 42, 132]);
        assert_eq!(counts("avoid:321", 6), vec![1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn double_avoidance_gives_powers_of_two() {
        assert_eq!(counts("avoid:132;avoid:123", 6), vec![1, 1, 2, 4, 8, 16, 32]);
    }

    #[test]
    fn single_occurrence_pair() {
        // Exactly one of each of 132 and 123 simultaneously.
        let c = counts("exactly:1:132;exactly:1:123", 6);
        assert_eq!(c[5], 2);
        assert_eq!(c[6], 12);
    }

    #[test]
    fn empty_constraint_counts_everything() {
        let cs = ConstraintSet::new(vec![]).unwrap();
        assert_eq!(count_upto(&cs, 6).unwrap().counts, vec![1, 1, 2, 6, 24, 120, 720]);
    }

    #[test]
    fn occurrence_distribution_partitions_s_n() {
        // Sum over r of #{exactly r occurrences of 132 in S_5} is 5!.
        let mut total = 0u64;
        for r in 0..=10u64 {
            let cs = parse_constraint_set(&format!("exactly:{r}:132")).unwrap();
            total += count_upto(&cs, 5).unwrap().counts[5];
        }
        assert_eq!(total, 120);
    }

    #[test]
    fn listing_examples() {
        let avoid132 = parse_constraint_set("avoid:132").unwrap();
        let names: Vec<String> = list_matching(&avoid132, 3)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(names, vec!["123", "213", "231", "312", "321"]);

        let avoid12 = parse_constraint_set("avoid:12").unwrap();
        let names: Vec<String> = list_matching(&avoid12, 4)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(names, vec!["4321"]);

        let one132 = parse_constraint_set("exactly:1:132").unwrap();
        let names: Vec<String> = list_matching(&one132, 3)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(names, vec!["132"]);
    }

    #[test]
    fn symmetry_invariance_of_counts() {
        use crate::perm::{PatternSpec, Permutation, Quantifier};
        let tau = Permutation::new(vec![2, 3, 1]).unwrap();
        let base = ConstraintSet::new(vec![
            (PatternSpec::Explicit(Permutation::new(vec![1, 3, 2]).unwrap()), Quantifier::Exactly(0)),
            (PatternSpec::Explicit(tau.clone()), Quantifier::Exactly(0)),
        ])
        .unwrap();
        let reversed = ConstraintSet::new(vec![
            (
                PatternSpec::Explicit(Permutation::new(vec![1, 3, 2]).unwrap().reverse()),
                Quantifier::Exactly(0),
            ),
            (PatternSpec::Explicit(tau.reverse()), Quantifier::Exactly(0)),
        ])
        .unwrap();
        assert_eq!(
            count_upto(&base, 7).unwrap().counts,
            count_upto(&reversed, 7).unwrap().counts
        );
    }

    #[test]
    fn profile_count_tables() {
        let p4 = a_sequence_counts(4).unwrap();
        assert_eq!(p4.get(&vec![1]).copied(), Some(1));
        assert_eq!(p4.get(&vec![0]).copied(), Some(1));
        assert_eq!(p4.values().sum::<u64>(), 2);

        let p5 = a_sequence_counts(5).unwrap();
        assert_eq!(p5.values().sum::<u64>(), 6);
        assert_eq!(p5.get(&vec![1, 1]).copied(), Some(1));
        assert_eq!(p5.get(&vec![0, 1]).copied(), Some(2));
        assert_eq!(p5.get(&vec![1, 0]).copied(), Some(2));
        assert_eq!(p5.get(&vec![0, 0]).copied(), Some(1));

        assert!(a_sequence_counts(3).is_err());
        // The whole-S_p variant disagrees with the shifted table by design.
        let full4 = a_sequence_counts_full(4).unwrap();
        assert_eq!(full4.values().sum::<u64>(), 24);
    }

    #[test]
    fn resource_guards() {
        let cs = parse_constraint_set("avoid:132").unwrap();
        assert!(matches!(
            count_upto(&cs, 13),
            Err(Error::ResourceCap { requested: 13, cap: 12 })
        ));
        assert!(list_matching(&cs, 11).is_err());
    }

    #[test]
    fn table_renderings() {
        let cs = parse_constraint_set("avoid:132").unwrap();
        let table = count_upto(&cs, 3).unwrap();
        assert_eq!(table.to_csv(), "n,count\n0,1\n1,1\n2,2\n3,5\n");
        assert_eq!(
            table.to_json(),
            r#"{"constraint":"avoid:132","counts":[1,1,2,5]}"#
        );
    }
}
