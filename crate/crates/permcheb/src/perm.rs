//! Permutations, pattern occurrence counting, symmetry operations, pattern
//! families, and the structural attributes used by the recursions:
//! right-to-left maxima, prefix/suffix splits, ascent-profile bit sequences.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// A permutation of `{1, …, n}` (possibly empty), stored one-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    vals: Vec<u8>,
}

/// Hard length limit: values are stored in a byte each.
pub const MAX_LEN: usize = 255;

impl Permutation {
    /// Build from one-based values; must be a rearrangement of `1..=n`.
    pub fn new(vals: Vec<u8>) -> Result<Self> {
        let n = vals.len();
        if n > MAX_LEN {
            return Err(Error::NotAPermutation(format!(
                "length {n} exceeds the supported maximum {MAX_LEN}"
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in &vals {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(Error::NotAPermutation(format!(
                    "values must rearrange 1..={n}"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { vals })
    }

    pub fn empty() -> Self {
        Permutation { vals: Vec::new() }
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n > MAX_LEN {
            return Err(Error::InvalidPattern(format!("identity length {n} too large")));
        }
        Ok(Permutation {
            vals: (1..=n as u16).map(|v| v as u8).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.vals
    }

    /// Zero-based position of a value.
    pub fn position_of(&self, v: u8) -> Option<usize> {
        self.vals.iter().position(|&w| w == v)
    }

    /// Steps to the lexicographic successor in place; false at the last one.
    pub(crate) fn advance_lex(&mut self) -> bool {
        next_permutation(&mut self.vals)
    }

    pub fn reverse(&self) -> Self {
        let mut vals = self.vals.clone();
        vals.reverse();
        Permutation { vals }
    }

    pub fn complement(&self) -> Self {
        let n = self.vals.len() as u16;
        Permutation {
            vals: self.vals.iter().map(|&v| (n + 1 - v as u16) as u8).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut vals = vec![0u8; self.vals.len()];
        for (i, &v) in self.vals.iter().enumerate() {
            vals[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { vals }
    }

    /// Number of occurrences of `pattern` (order-isomorphic subsequences).
    /// The empty pattern occurs exactly once in every permutation.
    pub fn count_occurrences(&self, pattern: &Permutation) -> u64 {
        self.occurrences_capped(pattern, u64::MAX)
    }

    /// Occurrence count with an early exit: the scan stops as soon as the
    /// count exceeds `cap`, so any return value `> cap` just means "more
    /// than cap". Values `<= cap` are exact.
    pub fn occurrences_capped(&self, pattern: &Permutation, cap: u64) -> u64 {
        let k = pattern.len();
        if k == 0 {
            return 1;
        }
        if k > self.len() {
            return 0;
        }
        let mut chosen: Vec<u8> = Vec::with_capacity(k);
        let mut count = 0u64;
        Self::occurrence_dfs(
            &self.vals,
            &pattern.vals,
            0,
            &mut chosen,
            &mut count,
            cap,
        );
        count
    }

    /// Depth-first search over partial embeddings, pruning candidates whose
    /// value breaks order-isomorphism with the pattern prefix. Returns true
    /// when the cap has been exceeded and the scan should unwind.
    fn occurrence_dfs(
        subj: &[u8],
        pat: &[u8],
        start: usize,
        chosen: &mut Vec<u8>,
        count: &mut u64,
        cap: u64,
    ) -> bool {
        let j = chosen.len();
        if j == pat.len() {
            *count += 1;
            return *count > cap;
        }
        // The candidate value must sit strictly between the chosen values
        // whose pattern entries flank pat[j].
        let pj = pat[j];
        let mut lo: u16 = 0;
        let mut hi: u16 = u16::MAX;
        for (i, &v) in chosen.iter().enumerate() {
            if pat[i] < pj {
                lo = lo.max(v as u16);
            } else {
                hi = hi.min(v as u16);
            }
        }
        let last = subj.len() - (pat.len() - j);
        for pos in start..=last {
            let v = subj[pos] as u16;
            if v > lo && v < hi {
                chosen.push(subj[pos]);
                let stop = Self::occurrence_dfs(subj, pat, pos + 1, chosen, count, cap);
                chosen.pop();
                if stop {
                    return true;
                }
            }
        }
        false
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        self.occurrences_capped(pattern, 0) > 0
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    /// Length of the longest increasing subsequence.
    pub fn lis_length(&self) -> usize {
        lis_of(&self.vals)
    }

    /// Right-to-left maxima as one-based `(position, value)` pairs, in
    /// position order. Values strictly decrease along the list and the
    /// first entry always carries the maximum value.
    pub fn rtl_maxima(&self) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        let mut best: u16 = 0;
        for (i, &v) in self.vals.iter().enumerate().rev() {
            if v as u16 > best {
                best = v as u16;
                out.push((i + 1, v));
            }
        }
        out.reverse();
        out
    }

    /// Bit sequence of length `n - 1` tracking how the longest increasing
    /// subsequence of the suffixes grows: bit `j` (1-based) is 1 iff the
    /// LIS of the last `j + 1` entries is strictly longer than that of the
    /// last `j` entries.
    pub fn a_sequence(&self) -> Vec<u8> {
        let n = self.vals.len();
        if n <= 1 {
            return Vec::new();
        }
        let mut lis_suffix = Vec::with_capacity(n);
        for j in 1..=n {
            lis_suffix.push(lis_of(&self.vals[n - j..]));
        }
        (1..n)
            .map(|j| u8::from(lis_suffix[j] > lis_suffix[j - 1]))
            .collect()
    }

    /// Membership in `L_p`: permutations of length `p` shaped
    /// `π₁ 1 π₂ 2 π₃` with `π₂` nonempty — i.e. value 1 appears before
    /// value 2 with at least one entry strictly between them.
    pub fn is_lp_member(&self, p: usize) -> bool {
        if self.len() != p || p < 3 {
            return false;
        }
        let p1 = self.position_of(1).expect("value 1 present");
        let p2 = self.position_of(2).expect("value 2 present");
        p1 + 1 < p2
    }

    /// True iff this is the identity permutation.
    pub fn is_identity(&self) -> bool {
        self.vals.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Layer profile `[m_0, m_1, …, m_r]` when the permutation is layered:
    /// a concatenation of blocks, each an increasing run of consecutive
    /// values, with block value-ranges strictly descending and covering
    /// `n..1`. `m_i` is the top value of block `i` (`m_0 = n`).
    pub fn layered_profile(&self) -> Option<Vec<usize>> {
        if self.is_empty() {
            return Some(Vec::new());
        }
        let mut profile = Vec::new();
        let mut i = 0;
        let mut expected_top = self.vals.len() as u16;
        while i < self.vals.len() {
            let start = self.vals[i] as u16;
            let mut end = start;
            while i + 1 < self.vals.len() && self.vals[i + 1] as u16 == end + 1 {
                end += 1;
                i += 1;
            }
            if end != expected_top {
                return None;
            }
            profile.push(end as usize);
            expected_top = start - 1;
            i += 1;
        }
        if expected_top != 0 {
            return None;
        }
        Some(profile)
    }

    /// `(k, m)` when the permutation is the two-layered `[k, m]`.
    pub fn two_layered_params(&self) -> Option<(usize, usize)> {
        match self.layered_profile() {
            Some(p) if p.len() == 2 => Some((p[0], p[1])),
            _ => None,
        }
    }

    /// True when the permutation is a wedge: for some `s`, the values above
    /// `s` appear left-to-right in increasing order, the permutation opens
    /// with one of them, and every maximal run of values `<= s` is a single
    /// complete layer (an ascending run of consecutive values), the layers
    /// tiling `s..1` downward. Two layers may not sit adjacent: a high value
    /// must separate them, otherwise the class changes.
    pub fn is_wedge(&self) -> bool {
        let n = self.vals.len();
        if n == 0 {
            return false;
        }
        's_loop: for s in 0..n {
            if (self.vals[0] as usize) <= s {
                continue;
            }
            let mut highs: Vec<usize> = Vec::new();
            let mut groups: Vec<Vec<usize>> = Vec::new();
            for (i, &v) in self.vals.iter().enumerate() {
                let v = v as usize;
                if v > s {
                    highs.push(v);
                } else if i > 0 && (self.vals[i - 1] as usize) <= s {
                    groups.last_mut().expect("run open").push(v);
                } else {
                    groups.push(vec![v]);
                }
            }
            if highs.windows(2).any(|w| w[0] > w[1]) {
                continue;
            }
            let mut ceiling = s;
            for g in &groups {
                if g.windows(2).any(|w| w[1] != w[0] + 1) || *g.last().unwrap() != ceiling {
                    continue 's_loop;
                }
                ceiling = g[0] - 1;
            }
            return true;
        }
        false
    }
}

/// Longest increasing subsequence length of a distinct-value word.
fn lis_of(vals: &[u8]) -> usize {
    let mut tails: Vec<u8> = Vec::new();
    for &v in vals {
        match tails.binary_search(&v) {
            Ok(_) => unreachable!("distinct values"),
            Err(pos) => {
                if pos == tails.len() {
                    tails.push(v);
                } else {
                    tails[pos] = v;
                }
            }
        }
    }
    tails.len()
}

/// Order-isomorphic flattening of a word with distinct entries.
pub fn standardize(word: &[i64]) -> Result<Permutation> {
    let mut sorted: Vec<i64> = word.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NotAPermutation("repeated entry".into()));
    }
    if word.len() > MAX_LEN {
        return Err(Error::NotAPermutation(format!(
            "length {} exceeds the supported maximum {MAX_LEN}",
            word.len()
        )));
    }
    let vals = word
        .iter()
        .map(|v| (sorted.binary_search(v).unwrap() + 1) as u8)
        .collect();
    Ok(Permutation { vals })
}

/// Standardize a sub-word of byte values (internal fast path).
pub(crate) fn standardize_bytes(word: &[u8]) -> Permutation {
    let mut sorted: Vec<u8> = word.to_vec();
    sorted.sort_unstable();
    Permutation {
        vals: word
            .iter()
            .map(|v| (sorted.binary_search(v).unwrap() + 1) as u8)
            .collect(),
    }
}

/// All members of `L_p` in lexicographic order.
pub fn lp_set(p: usize) -> Result<Vec<Permutation>> {
    if p < 3 {
        return Err(Error::InvalidPattern(format!(
            "the family needs length >= 3, got {p}"
        )));
    }
    if p > 8 {
        return Err(Error::ResourceCap { requested: p, cap: 8 });
    }
    let mut out = Vec::new();
    let mut vals: Vec<u8> = (1..=p as u8).collect();
    loop {
        let perm = Permutation { vals: vals.clone() };
        if perm.is_lp_member(p) {
            out.push(perm);
        }
        if !next_permutation(&mut vals) {
            break;
        }
    }
    Ok(out)
}

/// In-place lexicographic successor; false once the sequence is descending.
pub(crate) fn next_permutation(vals: &mut [u8]) -> bool {
    if vals.len() < 2 {
        return false;
    }
    let mut i = vals.len() - 1;
    while i > 0 && vals[i - 1] >= vals[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = vals.len() - 1;
    while vals[j] <= vals[i - 1] {
        j -= 1;
    }
    vals.swap(i - 1, j);
    vals[i..].reverse();
    true
}

/// Orbit of a pattern set under the symmetry group generated by reversal,
/// complementation, and inversion (each applied elementwise to the set).
pub fn symmetry_orbit(patterns: &[Permutation]) -> BTreeSet<Vec<Permutation>> {
    fn normalize(mut set: Vec<Permutation>) -> Vec<Permutation> {
        set.sort();
        set.dedup();
        set
    }
    let mut orbit = BTreeSet::new();
    let mut queue = vec![normalize(patterns.to_vec())];
    while let Some(set) = queue.pop() {
        if !orbit.insert(set.clone()) {
            continue;
        }
        for op in [Permutation::reverse, Permutation::complement, Permutation::inverse] {
            let image = normalize(set.iter().map(op).collect());
            if !orbit.contains(&image) {
                queue.push(image);
            }
        }
    }
    orbit
}

/// Splits a 132-avoiding permutation into the data driving the avoidance
/// recursion. Writing the right-to-left maxima as `m_0 > … > m_r` and the
/// in-between segments as `τ^0, …, τ^r`, the prefixes are
/// `π^{-1} = ∅`, `π^0 = τ^0`, `π^i = (τ^0, m_0, …, τ^i, m_i)` and the
/// suffixes are `σ^i = (τ^i, m_i, …, τ^r, m_r)`, `σ^{r+1} = ∅`.
/// Returns `(prefixes π^{-1}..π^r, suffixes σ^0..σ^{r+1})`, standardized.
pub fn prefix_suffix_decomposition(
    tau: &Permutation,
) -> Result<(Vec<Permutation>, Vec<Permutation>)> {
    if tau.is_empty() {
        return Err(Error::Precondition(
            "prefix/suffix decomposition needs a nonempty pattern".into(),
        ));
    }
    let p132 = Permutation::new(vec![1, 3, 2]).expect("valid");
    if tau.contains(&p132) {
        return Err(Error::Precondition(format!(
            "pattern {tau} contains 132; the decomposition applies to 132-avoiders"
        )));
    }
    let maxima = tau.rtl_maxima();
    let positions: Vec<usize> = maxima.iter().map(|&(p, _)| p - 1).collect();
    let vals = tau.values();

    let mut prefixes = vec![Permutation::empty()];
    prefixes.push(standardize_bytes(&vals[..positions[0]]));
    for &p in positions.iter().skip(1) {
        prefixes.push(standardize_bytes(&vals[..=p]));
    }

    let mut suffixes = Vec::with_capacity(positions.len() + 1);
    suffixes.push(tau.clone());
    for window in positions.windows(2) {
        suffixes.push(standardize_bytes(&vals[window[0] + 1..]));
    }
    suffixes.push(Permutation::empty());
    Ok((prefixes, suffixes))
}

/// Renders compactly ("132") up to length 9, comma-separated beyond.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "()");
        }
        if self.len() <= 9 {
            for &v in &self.vals {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.vals.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// How many times a pattern must occur for a constraint to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    /// Exactly `r` occurrences; `Exactly(0)` means "avoids".
    Exactly(u64),
    /// At least `r` occurrences, `r >= 1`.
    AtLeast(u64),
}

impl Quantifier {
    fn holds(&self, subject: &Permutation, pattern: &Permutation) -> bool {
        match *self {
            Quantifier::Exactly(r) => subject.occurrences_capped(pattern, r) == r,
            Quantifier::AtLeast(r) => subject.occurrences_capped(pattern, r - 1) >= r,
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantifier::Exactly(0) => write!(f, "avoid"),
            Quantifier::Exactly(r) => write!(f, "exactly:{r}"),
            Quantifier::AtLeast(r) => write!(f, "atleast:{r}"),
        }
    }
}

/// A pattern given either explicitly or through a named family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternSpec {
    Explicit(Permutation),
    /// `(1, …, k)`.
    Identity(usize),
    /// `(m+1, …, k, 1, …, m)` for `1 <= m <= k-1`.
    TwoLayered(usize, usize),
    /// Layered permutation with strictly decreasing layer tops
    /// `m_0 > m_1 > … > m_r > 0`.
    Layered(Vec<usize>),
    /// Wedge built from alternating segments: each segment contributes an
    /// increasing run of high values, optionally followed by one low layer.
    Wedge(Vec<WedgeSegment>),
}

/// One segment of a wedge: `run >= 1` high values, then at most one low
/// layer. Consecutive layers always have a high run between them; adjacent
/// layers would leave the wedge class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeSegment {
    pub run: usize,
    pub layer: Option<usize>,
}

impl PatternSpec {
    pub fn materialize(&self) -> Result<Permutation> {
        match self {
            PatternSpec::Explicit(p) => Ok(p.clone()),
            PatternSpec::Identity(k) => Permutation::identity(*k),
            PatternSpec::TwoLayered(k, m) => {
                if *m == 0 || m >= k {
                    return Err(Error::InvalidPattern(format!(
                        "two-layered needs 1 <= m <= k-1, got k={k}, m={m}"
                    )));
                }
                PatternSpec::Layered(vec![*k, *m]).materialize()
            }
            PatternSpec::Layered(tops) => {
                if tops.is_empty()
                    || tops.windows(2).any(|w| w[0] <= w[1])
                    || *tops.last().unwrap() == 0
                {
                    return Err(Error::InvalidPattern(
                        "layer tops must be strictly decreasing and positive".into(),
                    ));
                }
                let k = tops[0];
                if k > MAX_LEN {
                    return Err(Error::InvalidPattern(format!("pattern length {k} too large")));
                }
                let mut vals = Vec::with_capacity(k);
                for (i, &top) in tops.iter().enumerate() {
                    let bottom = tops.get(i + 1).copied().unwrap_or(0) + 1;
                    vals.extend((bottom..=top).map(|v| v as u8));
                }
                Permutation::new(vals)
            }
            PatternSpec::Wedge(segments) => {
                if segments.is_empty() {
                    return Err(Error::InvalidPattern("wedge needs at least one segment".into()));
                }
                if segments.iter().any(|g| g.run == 0) {
                    return Err(Error::InvalidPattern(
                        "every wedge segment needs a nonempty high run".into(),
                    ));
                }
                if segments.iter().any(|g| g.layer == Some(0)) {
                    return Err(Error::InvalidPattern("wedge layers must be nonempty".into()));
                }
                let s: usize = segments.iter().filter_map(|g| g.layer).sum();
                let high: usize = segments.iter().map(|g| g.run).sum();
                let k = s + high;
                if k > MAX_LEN {
                    return Err(Error::InvalidPattern(format!("pattern length {k} too large")));
                }
                let mut vals = Vec::with_capacity(k);
                let mut next_high = s + 1;
                let mut low_top = s;
                for seg in segments {
                    for _ in 0..seg.run {
                        vals.push(next_high as u8);
                        next_high += 1;
                    }
                    if let Some(layer) = seg.layer {
                        let bottom = low_top - layer + 1;
                        vals.extend((bottom..=low_top).map(|v| v as u8));
                        low_top -= layer;
                    }
                }
                Permutation::new(vals)
            }
        }
    }
}

/// A conjunction of (pattern, quantifier) requirements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSet {
    items: Vec<(Permutation, Quantifier)>,
}

impl ConstraintSet {
    /// Materializes every pattern; patterns must be pairwise distinct and
    /// `AtLeast` thresholds positive.
    pub fn new(items: Vec<(PatternSpec, Quantifier)>) -> Result<Self> {
        let mut materialized = Vec::with_capacity(items.len());
        for (spec, q) in &items {
            if let Quantifier::AtLeast(0) = q {
                return Err(Error::InvalidPattern("atleast threshold must be >= 1".into()));
            }
            materialized.push((spec.materialize()?, *q));
        }
        for i in 0..materialized.len() {
            for j in i + 1..materialized.len() {
                if materialized[i].0 == materialized[j].0 {
                    return Err(Error::DuplicatePattern(materialized[i].0.to_string()));
                }
            }
        }
        Ok(ConstraintSet {
            items: materialized,
        })
    }

    pub fn items(&self) -> &[(Permutation, Quantifier)] {
        &self.items
    }

    pub fn satisfied_by(&self, subject: &Permutation) -> bool {
        self.items.iter().all(|(p, q)| q.holds(subject, p))
    }

    /// Convenience: avoid every listed pattern.
    pub fn avoid_all(patterns: Vec<PatternSpec>) -> Result<Self> {
        ConstraintSet::new(
            patterns
                .into_iter()
                .map(|p| (p, Quantifier::Exactly(0)))
                .collect(),
        )
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .items
            .iter()
            .map(|(p, q)| match q {
                Quantifier::Exactly(0) => format!("avoid:{p}"),
                Quantifier::Exactly(r) => format!("exactly:{r}:{p}"),
                Quantifier::AtLeast(r) => format!("atleast:{r}:{p}"),
            })
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}
