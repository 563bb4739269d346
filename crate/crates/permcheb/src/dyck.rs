//! Dyck paths and the height-tracking bijection with 132-avoiding
//! permutations: entry `π_j` maps to "rise to one above the number of later
//! entries exceeding `π_j`, then fall one". The maximum path height equals
//! the longest increasing subsequence length, which turns avoidance of an
//! increasing pattern into a height bound on the path.

use std::fmt;

use crate::perm::Permutation;
use crate::{Error, Result};

/// One step of a Dyck path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Up,
    Down,
}

/// A balanced nonnegative lattice path over `{Up, Down}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    /// Validates the Dyck property: prefixes never dip below zero and the
    /// full path returns to zero.
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height: i64 = 0;
        for s in &steps {
            height += match s {
                Step::Up => 1,
                Step::Down => -1,
            };
            if height < 0 {
                return Err(Error::Parse("path dips below the axis".into()));
            }
        }
        if height != 0 {
            return Err(Error::Parse("path does not return to the axis".into()));
        }
        Ok(DyckPath { steps })
    }

    /// Parses a `"UUDD"`-style rendering.
    pub fn parse(text: &str) -> Result<Self> {
        let steps = text
            .trim()
            .bytes()
            .map(|b| match b {
                b'U' => Ok(Step::Up),
                b'D' => Ok(Step::Down),
                other => Err(Error::Parse(format!(
                    "unexpected character {:?} in path (want U or D)",
                    other as char
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of up-steps (equivalently down-steps).
    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Maximum prefix height.
    pub fn max_height(&self) -> usize {
        let mut height = 0i64;
        let mut best = 0i64;
        for s in &self.steps {
            height += match s {
                Step::Up => 1,
                Step::Down => -1,
            };
            best = best.max(height);
        }
        best as usize
    }

    /// End heights of the down-steps, in order.
    fn down_heights(&self) -> Vec<usize> {
        let mut height = 0i64;
        let mut out = Vec::with_capacity(self.semilength());
        for s in &self.steps {
            match s {
                Step::Up => height += 1,
                Step::Down => {
                    height -= 1;
                    out.push(height as usize);
                }
            }
        }
        out
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

/// Maps a 132-avoiding permutation to its Dyck path: for each entry, rise
/// to one above the count of later larger entries, then take one down-step.
pub fn perm_to_path(perm: &Permutation) -> Result<DyckPath> {
    let p132 = Permutation::new(vec![1, 3, 2]).expect("valid");
    if perm.contains(&p132) {
        return Err(Error::Precondition(format!(
            "{perm} contains 132; the bijection is defined on 132-avoiders"
        )));
    }
    let vals = perm.values();
    let n = vals.len();
    let mut steps = Vec::with_capacity(2 * n);
    let mut height: usize = 0;
    for j in 0..n {
        let h = vals[j + 1..].iter().filter(|&&v| v > vals[j]).count();
        debug_assert!(
            h + 1 >= height,
            "later-larger counts can drop by at most one per step on 132-avoiders"
        );
        for _ in height..h + 1 {
            steps.push(Step::Up);
        }
        steps.push(Step::Down);
        height = h;
    }
    DyckPath::new(steps)
}

/// Inverse map: reads off the down-step heights and places, at each
/// position, the appropriate largest-so-far unused value.
pub fn path_to_perm(path: &DyckPath) -> Result<Permutation> {
    let heights = path.down_heights();
    let n = heights.len();
    if n > crate::perm::MAX_LEN {
        return Err(Error::ResourceCap {
            requested: n,
            cap: crate::perm::MAX_LEN,
        });
    }
    // available[i] true means value i+1 is still unplaced.
    let mut available: Vec<bool> = vec![true; n];
    let mut vals = Vec::with_capacity(n);
    for &h in &heights {
        // The (h+1)-th largest available value.
        let mut seen = 0;
        let mut chosen = None;
        for v in (1..=n).rev() {
            if available[v - 1] {
                seen += 1;
                if seen == h + 1 {
                    chosen = Some(v as u8);
                    break;
                }
            }
        }
        let v = chosen.ok_or_else(|| {
            Error::Parse("path height exceeds the values remaining".into())
        })?;
        available[v as usize - 1] = false;
        vals.push(v);
    }
    Permutation::new(vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::parse_constraint_set;
    use crate::oracle::list_matching;

    fn perm(s: &str) -> Permutation {
        Permutation::new(s.bytes().map(|b| b - b'0').collect()).unwrap()
    }

    #[test]
    fn worked_example() {
        let path = perm_to_path(&perm("534261")).unwrap();
        assert_eq!(path.to_string(), "UUDUUDDUDDUD");
        assert_eq!(path.max_height(), 3);
        assert_eq!(path.semilength(), 6);
        assert_eq!(path_to_perm(&path).unwrap(), perm("534261"));
    }

    #[test]
    fn extreme_shapes() {
        // Decreasing permutation: every entry has no later larger entry.
        let dec = perm("54321");
        assert_eq!(perm_to_path(&dec).unwrap().to_string(), "UDUDUDUDUD");
        assert_eq!(perm_to_path(&dec).unwrap().max_height(), 1);
        // Identity: the path climbs once and then falls all the way.
        let id = perm("12345");
        assert_eq!(perm_to_path(&id).unwrap().to_string(), "UUUUUDDDDD");
        assert_eq!(perm_to_path(&id).unwrap().max_height(), 5);
        // Empty permutation maps to the empty path.
        let empty = Permutation::empty();
        let path = perm_to_path(&empty).unwrap();
        assert_eq!(path.steps().len(), 0);
        assert_eq!(path_to_perm(&path).unwrap(), empty);
    }

    #[test]
    fn rejects_non_avoiders_and_bad_paths() {
        assert!(perm_to_path(&perm("132")).is_err());
        assert!(perm_to_path(&perm("41532")).is_err());
        assert!(DyckPath::parse("UDD").is_err());
        assert!(DyckPath::parse("UU").is_err());
        assert!(DyckPath::parse("DU").is_err());
        assert!(DyckPath::parse("UXUD").is_err());
        assert!(DyckPath::parse("").is_ok());
        assert!(DyckPath::parse(" UD ").is_ok());
    }

    #[test]
    fn parse_display_roundtrip() {
        for text in ["", "UD", "UUDD", "UUDUUDDUDDUD", "UDUDUD"] {
            assert_eq!(DyckPath::parse(text).unwrap().to_string(), text.trim());
        }
    }

    #[test]
    fn exhaustive_roundtrip_and_height_law() {
        let avoid132 = parse_constraint_set("avoid:132").unwrap();
        for n in 0..=6 {
            let members = list_matching(&avoid132, n).unwrap();
            let mut paths = std::collections::BTreeSet::new();
            for p in &members {
                let path = perm_to_path(p).unwrap();
                assert_eq!(path.steps().len(), 2 * n);
                assert_eq!(path_to_perm(&path).unwrap(), *p, "roundtrip at {p}");
                // Height equals the longest increasing subsequence length.
                assert_eq!(path.max_height(), p.lis_length(), "height law at {p}");
                paths.insert(path.to_string());
            }
            // Injective on S_n(132), hence onto all semilength-n paths.
            assert_eq!(paths.len(), members.len());
        }
    }
}
