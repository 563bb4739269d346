//! One-shot re-verification of everything the crate claims: a registry of
//! named checks, each pitting a closed form, bijection, transfer matrix, or
//! continued fraction against the brute-force oracle (or against an
//! independent second computation), plus a machine-readable report.
//!
//! * every identifier in [`closed_forms::catalog`](crate::closed_forms::catalog)
//!   has a check of the same name, so `run_scope("all", …)` exercises the
//!   whole formula surface;
//! * checks carry a [`Tier`]: `proved` checks gate the exit status,
//!   `experimental` ones (numerical evidence without a closed form behind
//!   it) are reported but never fail the run;
//! * reports are canonically ordered by check id whatever the execution
//!   order, so two runs with the same configuration render byte-identically
//!   (timings, when requested, excepted).

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cfrac::{cf_biseries, statistics_triseries, CfSpec};
use crate::cheb::catalan_approximant;
use crate::closed_forms::{
    check_alternating_identity, gf_avoid, gf_avoid_both, gf_avoid_l4, gf_avoid_l4_two_layered,
    gf_avoid_lp, gf_exactly, gf_one_132, gf_one_132_one_pattern, gf_triple_exactly, Base,
};
use crate::dyck::{path_to_perm, perm_to_path};
use crate::exact::{catalan, RatFun, Series};
use crate::literal::parse_constraint_set;
use crate::oracle;
use crate::perm::PatternSpec;
use crate::transfer::{
    binary_tree, dyck_strip_system, fibonacci_tree, succession_system, TransferSystem,
};
use crate::{Error, Result};

/// Default series order for verification runs.
pub const DEFAULT_ORDER: usize = 8;

/// Whether a check rests on an exact derivation or on numerical evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Proved,
    Experimental,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Proved => "proved",
            Tier::Experimental => "experimental",
        })
    }
}

/// Tier selection for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TierFilter {
    #[default]
    All,
    Only(Tier),
}

impl std::str::FromStr for TierFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(TierFilter::All),
            "proved" => Ok(TierFilter::Only(Tier::Proved)),
            "experimental" => Ok(TierFilter::Only(Tier::Experimental)),
            other => Err(Error::Parse(format!(
                "unknown tier {other:?}; expected proved, experimental, or all"
            ))),
        }
    }
}

/// Knobs for a verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Series order / largest permutation length compared.
    pub n_max: usize,
    /// Which tiers to run.
    pub tier: TierFilter,
    /// Attach wall-clock runtimes to the report rows.
    pub timings: bool,
    /// Run independent checks on all available cores.
    pub parallel: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: DEFAULT_ORDER,
            tier: TierFilter::All,
            timings: false,
            parallel: true,
        }
    }
}

/// First disagreement found by a failing check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Power of `x` (usually the permutation length) where the sides split.
    pub n: usize,
    pub expected: String,
    pub actual: String,
}

/// Pass/fail outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One row of the verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    /// Stable check id; formula checks reuse the catalog id.
    pub theorem: String,
    /// Parameter grid the check sweeps.
    pub params: String,
    pub tier: Tier,
    pub status: Status,
    /// `null` on success.
    pub first_mismatch: Option<Mismatch>,
    /// Where inside the grid the failure happened, or the error message.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Only attached when the run asked for timings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

/// A full verification report, canonically ordered by check id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scope: String,
    pub n_max: usize,
    pub checks: Vec<CheckReport>,
}

impl Report {
    /// True when every proved-tier row passed; experimental rows never gate.
    pub fn proved_all_pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.tier == Tier::Experimental || c.status == Status::Pass)
    }

    /// Process exit code the CLI maps the report to.
    pub fn exit_code(&self) -> i32 {
        if self.proved_all_pass() {
            0
        } else {
            1
        }
    }

    /// Pretty JSON, ending in a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Fixed-width pass/fail table with a trailing summary line.
    pub fn to_text(&self) -> String {
        let id_w = self
            .checks
            .iter()
            .map(|c| c.theorem.len())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!(
                "{status}  {:<12}  {:<id_w$}  {}",
                c.tier.to_string(),
                c.theorem,
                c.params
            ));
            if let Some(m) = &c.first_mismatch {
                out.push_str(&format!(
                    "  [n = {}: expected {}, got {}]",
                    m.n, m.expected, m.actual
                ));
            }
            if let Some(note) = &c.note {
                out.push_str(&format!("  ({note})"));
            }
            if let Some(ms) = c.runtime_ms {
                out.push_str(&format!("  {ms} ms"));
            }
            out.push('\n');
        }
        let passed = self
            .checks
            .iter()
            .filter(|c| c.status == Status::Pass)
            .count();
        out.push_str(&format!(
            "{passed}/{} checks passed at order {}; proved tier: {}\n",
            self.checks.len(),
            self.n_max,
            if self.proved_all_pass() {
                "pass"
            } else {
                "FAIL"
            }
        ));
        out
    }

    /// CSV rendering, one row per check.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theorem,params,tier,status,n,expected,actual,runtime_ms\n");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
            };
            let (n, expected, actual) = match &c.first_mismatch {
                Some(m) => (m.n.to_string(), m.expected.clone(), m.actual.clone()),
                None => (String::new(), String::new(), String::new()),
            };
            let ms = c.runtime_ms.map(|v| v.to_string()).unwrap_or_default();
            let row = [
                c.theorem.as_str(),
                c.params.as_str(),
                &c.tier.to_string(),
                status,
                &n,
                &expected,
                &actual,
                &ms,
            ]
            .map(csv_field)
            .join(",");
            out.push_str(&row);
            out.push('\n');
        }
        out
    }
}

/// Quotes a CSV field when it contains a delimiter, quote, or newline.
pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A named check: id, tier, human-readable grid, and the runner.
#[derive(Debug, Clone, Copy)]
pub struct Check {
    pub id: &'static str,
    pub tier: Tier,
    pub params: &'static str,
    run: fn(&Ctx) -> Result<Option<Failure>>,
}

/// Immutable run context handed to every check.
struct Ctx {
    n: usize,
}

/// A located disagreement: grid point plus the first differing order.
struct Failure {
    at: String,
    n: usize,
    expected: String,
    actual: String,
}

impl Ctx {
    fn oracle_counts(&self, constraint: &str) -> Result<Vec<u64>> {
        let cs = parse_constraint_set(constraint)?;
        Ok(oracle::count_upto(&cs, self.n)?.counts)
    }

    /// Series-of-formula vs oracle counts; `at` names the grid point.
    fn formula_vs_oracle(
        &self,
        at: &str,
        f: &RatFun,
        constraint: &str,
    ) -> Result<Option<Failure>> {
        let counts = self.oracle_counts(constraint)?;
        let series = f.series(self.n)?;
        Ok(series.first_mismatch(&counts).map(|i| Failure {
            at: format!("{at} against {constraint}"),
            n: i,
            expected: counts[i].to_string(),
            actual: series.coeff(i).to_string(),
        }))
    }

    /// Two count tables that must agree index by index.
    fn counts_vs_counts(at: &str, expected: &[u64], actual: &[u64]) -> Option<Failure> {
        let upto = expected.len().min(actual.len());
        (0..upto)
            .find(|&i| expected[i] != actual[i])
            .map(|i| Failure {
                at: at.to_string(),
                n: i,
                expected: expected[i].to_string(),
                actual: actual[i].to_string(),
            })
    }

    /// Two series that must agree through this run's order.
    fn series_vs_series(&self, at: &str, expected: &Series, actual: &Series) -> Option<Failure> {
        (0..=self.n)
            .find(|&i| expected.coeff(i) != actual.coeff(i))
            .map(|i| Failure {
                at: at.to_string(),
                n: i,
                expected: expected.coeff(i).to_string(),
                actual: actual.coeff(i).to_string(),
            })
    }

    /// Canonical rational-function equality; `n` in the failure is the
    /// grid index, not a series order.
    fn ratfun_eq(at: &str, grid_index: usize, expected: &RatFun, actual: &RatFun) -> Option<Failure> {
        (expected != actual).then(|| Failure {
            at: at.to_string(),
            n: grid_index,
            expected: expected.to_string(),
            actual: actual.to_string(),
        })
    }
}

fn check_avoid_identity(cx: &Ctx) -> Result<Option<Failure>> {
    for k in 2..=5 {
        let f = gf_avoid(Base::B132, &PatternSpec::Identity(k))?;
        let hit = cx.formula_vs_oracle(&format!("k={k}"), &f, &format!("avoid:132;avoid:id:{k}"))?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn check_avoid_two_layered(cx: &Ctx) -> Result<Option<Failure>> {
    for k in 2..=5 {
        for m in 1..k {
            let f = gf_avoid(Base::B132, &PatternSpec::TwoLayered(k, m))?;
            let hit = cx.formula_vs_oracle(
                &format!("k={k} m={m}"),
                &f,
                &format!("avoid:132;avoid:tl:{k},{m}"),
            )?;
            if hit.is_some() {
                return Ok(hit);
            }
        }
    }
    Ok(None)
}

fn check_avoid_three_layered(cx: &Ctx) -> Result<Option<Failure>> {
    for (k, m1, m2) in [(3, 2, 1), (4, 2, 1), (4, 3, 1), (4, 3, 2), (5, 3, 1), (5, 4, 2)] {
        let f = gf_avoid(Base::B132, &PatternSpec::Layered(vec![k, m1, m2]))?;
        let hit = cx.formula_vs_oracle(
            &format!("tops=({k},{m1},{m2})"),
            &f,
            &format!("avoid:132;avoid:layered:{k},{m1},{m2}"),
        )?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn check_avoid_wedge(cx: &Ctx) -> Result<Option<Failure>> {
    let avoid132 = parse_constraint_set("avoid:132")?;
    for len in 4..=5 {
        let mut found = 0;
        for w in oracle::list_matching(&avoid132, len)? {
            if !w.is_wedge() || w.is_identity() {
                continue;
            }
            found += 1;
            let f = gf_avoid(Base::B132, &PatternSpec::Explicit(w.clone()))?;
            if let Some(fail) = Ctx::ratfun_eq(
                &format!("wedge {w} ladder form"),
                len,
                &catalan_approximant(len)?,
                &f,
            ) {
                return Ok(Some(fail));
            }
            let hit =
                cx.formula_vs_oracle(&format!("wedge {w}"), &f, &format!("avoid:132;avoid:{w}"))?;
            if hit.is_some() {
                return Ok(hit);
            }
        }
        if found == 0 {
            return Err(Error::Precondition(format!(
                "no non-identity wedge patterns of length {len}; enumeration is broken"
            )));
        }
    }
    Ok(None)
}

fn check_avoid_general(cx: &Ctx) -> Result<Option<Failure>> {
    let avoid132 = parse_constraint_set("avoid:132")?;
    for tau in oracle::list_matching(&avoid132, 4)? {
        let f = gf_avoid(Base::B132, &PatternSpec::Explicit(tau.clone()))?;
        let hit =
            cx.formula_vs_oracle(&format!("tau={tau}"), &f, &format!("avoid:132;avoid:{tau}"))?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn check_avoid_321_two_layered(cx: &Ctx) -> Result<Option<Failure>> {
    for k in 2..=5 {
        for m in 1..k {
            let f = gf_avoid(Base::B321, &PatternSpec::TwoLayered(k, m))?;
            let hit = cx.formula_vs_oracle(
                &format!("k={k} m={m}"),
                &f,
                &format!("avoid:321;avoid:tl:{k},{m}"),
            )?;
            if hit.is_some() {
                return Ok(hit);
            }
        }
    }
    Ok(None)
}

fn check_avoid_pair(cx: &Ctx) -> Result<Option<Failure>> {
    for (k, m, l) in [(4, 1, 4), (5, 2, 4), (4, 1, 3), (4, 2, 3), (5, 2, 2), (3, 1, 5)] {
        let f = gf_avoid_both(k, m, l)?;
        let hit = cx.formula_vs_oracle(
            &format!("k={k} m={m} l={l}"),
            &f,
            &format!("avoid:132;avoid:tl:{k},{m};avoid:id:{l}"),
        )?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn check_avoid_gap_family(cx: &Ctx) -> Result<Option<Failure>> {
    for (p, k) in [(4, 2), (4, 3), (4, 4), (4, 5), (5, 3), (5, 4), (5, 5)] {
        let f = gf_avoid_lp(p, k)?;
        if p == 4 {
            if let Some(fail) =
                Ctx::ratfun_eq(&format!("p=4 k={k} short form"), k, &gf_avoid_l4(k)?, &f)
            {
                return Ok(Some(fail));
            }
        }
        let hit = cx.formula_vs_oracle(
            &format!("p={p} k={k}"),
            &f,
            &format!("avoid:lp:{p};avoid:id:{k}"),
        )?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn check_avoid_gap_family_two_layered(cx: &Ctx) -> Result<Option<Failure>> {
    for k in 3..=5 {
        for m in 1..k {
            let f = gf_avoid_l4_two_layered(k, m)?;
            let hit = cx.formula_vs_oracle(
                &format!("k={k} m={m}"),
                &f,
                &format!("avoid:lp:4;avoid:tl:{k},{m}"),
            )?;
            if hit.is_some() {
                return Ok(hit);
            }
        }
    }
    Ok(None)
}

fn check_exactly_identity(cx: &Ctx) -> Result<Option<Failure>> {
    for k in 2..=4u64 {
        for r in 0..=4 {
            let f = gf_exactly(Base::B132, &PatternSpec::Identity(k as usize), r)?;
            let hit = cx.formula_vs_oracle(
                &format!("k={k} r={r}"),
                &f,
                &format!("avoid:132;exactly:{r}:id:{k}"),
            )?;
            if hit.is_some() {
                return Ok(hit);
            }
        }
    }
    Ok(None)
}

fn check_exactly_two_layered(cx: &Ctx) -> Result<Option<Failure>> {
    let mut grid: Vec<(usize, usize, u64)> = Vec::new();
    for k in 3..=5 {
        grid.push((k, 1, 2));
        for m in 1..k {
            grid.push((k, m, 1));
        }
    }
    for (k, m, r) in grid {
        let f = gf_exactly(Base::B132, &PatternSpec::TwoLayered(k, m), r)?;
        let hit = cx.formula_vs_oracle(
            &format!("k={k} m={m} r={r}"),
            &f,
            &format!("avoid:132;exactly:{r}:tl:{k},{m}"),
        )?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn check_exactly_321_two_layered(cx: &Ctx) -> Result<Option<Failure>> {
    for k in 3..=4u64 {
        for r in 1..k {
            let f = gf_exactly(Base::B321, &PatternSpec::TwoLayered(k as usize, 1), r)?;
            let hit = cx.formula_vs_oracle(
                &format!("k={k} r={r}"),
                &f,
                &format!("avoid:321;exactly:{r}:tl:{k},1"),
            )?;
            if hit.is_some() {
                return Ok(hit);
            }
        }
    }
    Ok(None)
}

fn check_exactly_identity_within_pair(cx: &Ctx) -> Result<Option<Failure>> {
    for (k, m, l) in [(4, 1, 3), (4, 1, 4), (5, 2, 4), (5, 2, 2), (2, 1, 3), (5, 1, 3), (4, 2, 3)]
    {
        let f = gf_triple_exactly(k, m, l)?;
        let hit = cx.formula_vs_oracle(
            &format!("k={k} m={m} l={l}"),
            &f,
            &format!("avoid:132;avoid:tl:{k},{m};exactly:1:id:{l}"),
        )?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn check_one_132_identity(cx: &Ctx) -> Result<Option<Failure>> {
    for k in 2..=5 {
        let f = gf_one_132(&PatternSpec::Identity(k))?;
        let hit =
            cx.formula_vs_oracle(&format!("k={k}"), &f, &format!("exactly:1:132;avoid:id:{k}"))?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn check_one_132_two_layered(cx: &Ctx) -> Result<Option<Failure>> {
    for k in 3..=5 {
        for m in 1..k {
            let f = gf_one_132(&PatternSpec::TwoLayered(k, m))?;
            let hit = cx.formula_vs_oracle(
                &format!("k={k} m={m}"),
                &f,
                &format!("exactly:1:132;avoid:tl:{k},{m}"),
            )?;
            if hit.is_some() {
                return Ok(hit);
            }
        }
    }
    Ok(None)
}

fn check_one_132_one_identity(cx: &Ctx) -> Result<Option<Failure>> {
    for k in 2..=5 {
        let f = gf_one_132_one_pattern(&PatternSpec::Identity(k))?;
        let hit = cx.formula_vs_oracle(
            &format!("k={k}"),
            &f,
            &format!("exactly:1:132;exactly:1:id:{k}"),
        )?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn check_one_132_one_two_layered(cx: &Ctx) -> Result<Option<Failure>> {
    for k in 4..=5 {
        let f = gf_one_132_one_pattern(&PatternSpec::TwoLayered(k, 1))?;
        let hit = cx.formula_vs_oracle(
            &format!("k={k}"),
            &f,
            &format!("exactly:1:132;exactly:1:tl:{k},1"),
        )?;
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn check_alternating_sum_identity(cx: &Ctx) -> Result<Option<Failure>> {
    for (k, m) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 2), (6, 3)] {
        if let Some((q, coeff)) = check_alternating_identity(k, m, cx.n.max(10))? {
            return Ok(Some(Failure {
                at: format!("k={k} m={m}"),
                n: q,
                expected: "0".into(),
                actual: coeff.to_string(),
            }));
        }
    }
    Ok(None)
}

fn check_ladder_recurrence(_cx: &Ctx) -> Result<Option<Failure>> {
    let pinned = [
        (1usize, "1"),
        (2, "1/(1 - x)"),
        (3, "(1 - x)/(1 - 2*x)"),
    ];
    for (k, display) in pinned {
        let got = catalan_approximant(k)?.to_string();
        if got != display {
            return Ok(Some(Failure {
                at: format!("pinned approximant k={k}"),
                n: k,
                expected: display.to_string(),
                actual: got,
            }));
        }
    }
    for k in 1..=12 {
        let prev = catalan_approximant(k - 1)?;
        let step = (&RatFun::one() - &(&RatFun::x() * &prev)).recip()?;
        if let Some(fail) =
            Ctx::ratfun_eq(&format!("k={k} ladder step"), k, &catalan_approximant(k)?, &step)
        {
            return Ok(Some(fail));
        }
    }
    Ok(None)
}

fn check_bijection_roundtrip(cx: &Ctx) -> Result<Option<Failure>> {
    let example = crate::perm::Permutation::new(vec![5, 3, 4, 2, 6, 1])?;
    let path = perm_to_path(&example)?;
    if path.to_string() != "UUDUUDDUDDUD" || path.max_height() != 3 {
        return Ok(Some(Failure {
            at: "worked example 534261".into(),
            n: 6,
            expected: "UUDUUDDUDDUD (height 3)".into(),
            actual: format!("{path} (height {})", path.max_height()),
        }));
    }
    let avoid132 = parse_constraint_set("avoid:132")?;
    for n in 0..=cx.n.min(8) {
        let members = oracle::list_matching(&avoid132, n)?;
        let mut seen = std::collections::BTreeSet::new();
        for p in &members {
            let path = perm_to_path(p)?;
            let back = path_to_perm(&path)?;
            if back != *p {
                return Ok(Some(Failure {
                    at: format!("roundtrip of {p}"),
                    n,
                    expected: p.to_string(),
                    actual: back.to_string(),
                }));
            }
            if path.max_height() != p.lis_length() {
                return Ok(Some(Failure {
                    at: format!("height law at {p}"),
                    n,
                    expected: p.lis_length().to_string(),
                    actual: path.max_height().to_string(),
                }));
            }
            seen.insert(path.to_string());
        }
        if seen.len() != members.len() {
            return Ok(Some(Failure {
                at: "injectivity on S_n(132)".into(),
                n,
                expected: members.len().to_string(),
                actual: seen.len().to_string(),
            }));
        }
    }
    Ok(None)
}

fn check_block_recursion(cx: &Ctx) -> Result<Option<Failure>> {
    let avoid132 = parse_constraint_set("avoid:132")?;
    for len in 4..=6 {
        for w in oracle::list_matching(&avoid132, len)? {
            if !w.is_wedge() {
                continue;
            }
            let f = crate::block::gf_by_block_recursion(&w)?;
            if let Some(fail) = Ctx::ratfun_eq(
                &format!("wedge {w}"),
                len,
                &catalan_approximant(len)?,
                &f,
            ) {
                return Ok(Some(fail));
            }
        }
    }
    let long_wedge = crate::perm::Permutation::new(vec![6, 4, 5, 7, 8, 3, 9, 1, 2])?;
    let f = crate::block::gf_by_block_recursion(&long_wedge)?;
    if let Some(fail) =
        Ctx::ratfun_eq("wedge 645783912", 9, &catalan_approximant(9)?, &f)
    {
        return Ok(Some(fail));
    }
    let plain = crate::perm::Permutation::new(vec![4, 5, 3, 1, 2, 6])?;
    let f = crate::block::gf_by_block_recursion(&plain)?;
    cx.formula_vs_oracle("tau=453126", &f, "avoid:132;avoid:453126")
}

/// Builtin systems swept by the transfer checks, with stable names.
fn builtin_systems() -> Result<Vec<(String, TransferSystem)>> {
    let mut out = vec![
        ("binary-tree".to_string(), binary_tree().to_system()),
        ("fibonacci-tree".to_string(), fibonacci_tree().to_system()),
    ];
    for k in 3..=6 {
        out.push((format!("succession-{k}"), succession_system(k)?));
    }
    for cap in 1..=4 {
        out.push((format!("dyck-strip-{cap}"), dyck_strip_system(cap)?));
    }
    Ok(out)
}

fn check_transfer_walk_expansion(_cx: &Ctx) -> Result<Option<Failure>> {
    for (name, sys) in builtin_systems()? {
        let dim = sys.labels().len();
        for r in 0..dim {
            for s in 0..dim {
                let series = sys.walk_gf(r, s)?.series(20)?;
                let powers = sys.point_walk_counts(r, s, 20);
                if let Some(i) = series.first_mismatch(&powers) {
                    return Ok(Some(Failure {
                        at: format!("{name} walks {r}->{s}"),
                        n: i,
                        expected: powers[i].to_string(),
                        actual: series.coeff(i).to_string(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn check_transfer_pattern_walks(cx: &Ctx) -> Result<Option<Failure>> {
    for k in 3..=6usize {
        // The companion pattern is (k-1, k-2, …, 1, k).
        let mut vals: Vec<u8> = (1..k as u8).rev().collect();
        vals.push(k as u8);
        let pattern = crate::perm::Permutation::new(vals)?;
        let counts = cx.oracle_counts(&format!("avoid:123;avoid:{pattern}"))?;
        let sys = succession_system(k)?;
        let open = sys.open_walk_counts(sys.start(), cx.n.saturating_sub(1));
        for n in 1..=cx.n {
            if counts[n] != open[n - 1] {
                return Ok(Some(Failure {
                    at: format!("k={k} open walks of length n-1"),
                    n,
                    expected: counts[n].to_string(),
                    actual: open[n - 1].to_string(),
                }));
            }
        }
        if k >= 4 {
            let closed = sys.closed_walk_counts(sys.start(), cx.n);
            if let Some(fail) =
                Ctx::counts_vs_counts(&format!("k={k} closed walks"), &counts, &closed)
            {
                return Ok(Some(fail));
            }
        }
    }
    Ok(None)
}

fn check_transfer_generating_trees(cx: &Ctx) -> Result<Option<Failure>> {
    let depth = cx.n.max(6);
    let fib = fibonacci_tree().level_counts(depth);
    let mut expected = vec![1u64; depth + 1];
    for i in 2..=depth {
        expected[i] = expected[i - 1] + expected[i - 2];
    }
    if let Some(fail) = Ctx::counts_vs_counts("fibonacci levels", &expected, &fib) {
        return Ok(Some(fail));
    }
    let bin = binary_tree().level_counts(depth);
    let doubling: Vec<u64> = (0..=depth as u32).map(|i| 2u64.pow(i)).collect();
    if let Some(fail) = Ctx::counts_vs_counts("binary levels", &doubling, &bin) {
        return Ok(Some(fail));
    }
    // A strip tall enough never clips, so closed walks recover the Catalan
    // numbers; semilength n uses 2n steps.
    let semi = cx.n.min(9);
    let tall = dyck_strip_system(semi.max(2))?;
    let closed = tall.closed_walk_counts(0, 2 * semi);
    for n in 0..=semi {
        if BigInt::from(closed[2 * n]) != catalan(n as u64) {
            return Ok(Some(Failure {
                at: "unclipped strip vs Catalan".into(),
                n,
                expected: catalan(n as u64).to_string(),
                actual: closed[2 * n].to_string(),
            }));
        }
    }
    Ok(None)
}

fn check_cfrac_occurrence_rows(cx: &Ctx) -> Result<Option<Failure>> {
    let r_max = 3u64;
    for k in 2..=4usize {
        let b = cf_biseries(CfSpec::new(k, cx.n, r_max as usize)?)?;
        for r in 0..=r_max {
            let row = b.z_row(r as usize);
            let formula = gf_exactly(Base::B132, &PatternSpec::Identity(k), r)?.series(cx.n)?;
            if let Some(fail) =
                cx.series_vs_series(&format!("k={k} r={r} row vs closed form"), &formula, &row)
            {
                return Ok(Some(fail));
            }
            let counts = cx.oracle_counts(&format!("avoid:132;exactly:{r}:id:{k}"))?;
            if let Some(i) = row.first_mismatch(&counts) {
                return Ok(Some(Failure {
                    at: format!("k={k} r={r} row vs enumeration"),
                    n: i,
                    expected: counts[i].to_string(),
                    actual: row.coeff(i).to_string(),
                }));
            }
        }
    }
    Ok(None)
}

fn check_cfrac_statistics(cx: &Ctx) -> Result<Option<Failure>> {
    let n = cx.n.min(9);
    let t = statistics_triseries(n)?;
    let catalans: Vec<u64> = (0..=n as u64).map(|i| {
        // Catalan numbers stay far below u64 for n <= 9.
        catalan(i).to_string().parse().expect("small Catalan fits")
    }).collect();
    let collapsed = t.at_y_z_one();
    if let Some(i) = collapsed.first_mismatch(&catalans) {
        return Ok(Some(Failure {
            at: "y=z=1 collapse vs Catalan".into(),
            n: i,
            expected: catalans[i].to_string(),
            actual: collapsed.coeff(i).to_string(),
        }));
    }
    let direct = t.at_y_one();
    let via_cf = cf_biseries(CfSpec::new(3, n, t.z_order())?)?;
    for nn in 0..=n {
        for r in 0..=t.z_order() {
            if direct.coeff(nn, r) != via_cf.coeff(nn, r) {
                return Ok(Some(Failure {
                    at: format!("y=1 slice vs continued fraction at z^{r}"),
                    n: nn,
                    expected: via_cf.coeff(nn, r).to_string(),
                    actual: direct.coeff(nn, r).to_string(),
                }));
            }
        }
    }
    Ok(None)
}

/// Experiment: do 321-avoiders weight the patterns `(k,1)` and `(k,2)`
/// identically at every occurrence count? True for `k = 3` (the two
/// patterns are inverses of each other) and at `r = 1`, but enumeration
/// refutes the general statement: at `k = 4`, `r = 2` the sides first
/// differ at length 5, where 34512 carries exactly two occurrences of
/// 2341 while no 321-avoider of length 5 carries exactly two of 3412.
/// The row records that refutation; being experimental it never gates.
fn check_conjecture_321_occurrences(cx: &Ctx) -> Result<Option<Failure>> {
    for k in 3..=4u64 {
        for r in 1..=k {
            let narrow = cx.oracle_counts(&format!("avoid:321;exactly:{r}:tl:{k},1"))?;
            let wide = cx.oracle_counts(&format!("avoid:321;exactly:{r}:tl:{k},2"))?;
            if let Some(fail) =
                Ctx::counts_vs_counts(&format!("k={k} r={r} (k,1) vs (k,2)"), &narrow, &wide)
            {
                return Ok(Some(fail));
            }
        }
    }
    Ok(None)
}

/// Every check the crate ships, in registry (not canonical) order.
pub fn all_checks() -> Vec<Check> {
    use Tier::{Experimental, Proved};
    vec![
        Check {
            id: "avoid-identity",
            tier: Proved,
            params: "k=2..5",
            run: check_avoid_identity,
        },
        Check {
            id: "avoid-two-layered",
            tier: Proved,
            params: "k=2..5 m=1..k-1",
            run: check_avoid_two_layered,
        },
        Check {
            id: "avoid-three-layered",
            tier: Proved,
            params: "six profiles up to k=5",
            run: check_avoid_three_layered,
        },
        Check {
            id: "avoid-wedge",
            tier: Proved,
            params: "all wedges of length 4..5",
            run: check_avoid_wedge,
        },
        Check {
            id: "avoid-general",
            tier: Proved,
            params: "every 132-avoider of length 4",
            run: check_avoid_general,
        },
        Check {
            id: "avoid-321-two-layered",
            tier: Proved,
            params: "k=2..5 m=1..k-1",
            run: check_avoid_321_two_layered,
        },
        Check {
            id: "avoid-pair",
            tier: Proved,
            params: "six (k,m,l) triples",
            run: check_avoid_pair,
        },
        Check {
            id: "avoid-gap-family",
            tier: Proved,
            params: "p=4 k=2..5; p=5 k=3..5",
            run: check_avoid_gap_family,
        },
        Check {
            id: "avoid-gap-family-two-layered",
            tier: Proved,
            params: "k=3..5 m=1..k-1",
            run: check_avoid_gap_family_two_layered,
        },
        Check {
            id: "exactly-identity",
            tier: Proved,
            params: "k=2..4 r=0..4",
            run: check_exactly_identity,
        },
        Check {
            id: "exactly-two-layered",
            tier: Proved,
            params: "k=3..5 (m=1 r<=2; m>1 r=1)",
            run: check_exactly_two_layered,
        },
        Check {
            id: "exactly-321-two-layered",
            tier: Proved,
            params: "k=3..4 r=1..k-1",
            run: check_exactly_321_two_layered,
        },
        Check {
            id: "exactly-identity-within-pair",
            tier: Proved,
            params: "seven (k,m,l) triples",
            run: check_exactly_identity_within_pair,
        },
        Check {
            id: "one-132-identity",
            tier: Proved,
            params: "k=2..5",
            run: check_one_132_identity,
        },
        Check {
            id: "one-132-two-layered",
            tier: Proved,
            params: "k=3..5 m=1..k-1",
            run: check_one_132_two_layered,
        },
        Check {
            id: "one-132-one-identity",
            tier: Proved,
            params: "k=2..5",
            run: check_one_132_one_identity,
        },
        Check {
            id: "one-132-one-two-layered",
            tier: Proved,
            params: "k=4..5",
            run: check_one_132_one_two_layered,
        },
        Check {
            id: "alternating-sum-identity",
            tier: Proved,
            params: "eight (k,m) pairs up to k=6",
            run: check_alternating_sum_identity,
        },
        Check {
            id: "ladder-recurrence",
            tier: Proved,
            params: "k=1..12",
            run: check_ladder_recurrence,
        },
        Check {
            id: "bijection-roundtrip",
            tier: Proved,
            params: "all of S_n(132) for n<=min(N,8)",
            run: check_bijection_roundtrip,
        },
        Check {
            id: "block-recursion",
            tier: Proved,
            params: "wedges of length 4..6 and 9; one general pattern",
            run: check_block_recursion,
        },
        Check {
            id: "transfer-walk-expansion",
            tier: Proved,
            params: "all vertex pairs of every builtin system, length<=20",
            run: check_transfer_walk_expansion,
        },
        Check {
            id: "transfer-pattern-walks",
            tier: Proved,
            params: "k=3..6",
            run: check_transfer_pattern_walks,
        },
        Check {
            id: "transfer-generating-trees",
            tier: Proved,
            params: "binary, fibonacci, unclipped strip",
            run: check_transfer_generating_trees,
        },
        Check {
            id: "cfrac-occurrence-rows",
            tier: Proved,
            params: "k=2..4 r=0..3",
            run: check_cfrac_occurrence_rows,
        },
        Check {
            id: "cfrac-statistics",
            tier: Proved,
            params: "orders up to min(N,9)",
            run: check_cfrac_statistics,
        },
        Check {
            id: "conjecture-321-occurrences",
            tier: Experimental,
            params: "k=3..4 r=1..k",
            run: check_conjecture_321_occurrences,
        },
    ]
}

/// Selects the checks a scope names: `all`, a check id, a check-id prefix
/// (`transfer`), or a formula-catalog family (`h`, `phi`, `lp`, …).
fn select(scope: &str, tier: TierFilter) -> Result<Vec<Check>> {
    let families: std::collections::BTreeMap<&str, Vec<&str>> = {
        let mut map = std::collections::BTreeMap::new();
        for entry in crate::closed_forms::catalog() {
            map.entry(entry.family).or_insert_with(Vec::new).push(entry.id);
        }
        map
    };
    let matches_scope = |c: &Check| {
        scope == "all"
            || c.id == scope
            || c.id.starts_with(&format!("{scope}-"))
            || families
                .get(scope)
                .is_some_and(|ids| ids.contains(&c.id))
    };
    let matches_tier = |c: &Check| match tier {
        TierFilter::All => true,
        TierFilter::Only(t) => c.tier == t,
    };
    let picked: Vec<Check> = all_checks()
        .into_iter()
        .filter(|c| matches_scope(c) && matches_tier(c))
        .collect();
    if picked.is_empty() {
        return Err(Error::Parse(format!(
            "scope {scope:?} with this tier filter selects no checks"
        )));
    }
    Ok(picked)
}

fn run_one(check: &Check, cx: &Ctx, timings: bool) -> CheckReport {
    let started = Instant::now();
    let outcome = (check.run)(cx);
    let runtime_ms = timings.then(|| started.elapsed().as_millis() as u64);
    let (status, first_mismatch, note) = match outcome {
        Ok(None) => (Status::Pass, None, None),
        Ok(Some(fail)) => (
            Status::Fail,
            Some(Mismatch {
                n: fail.n,
                expected: fail.expected,
                actual: fail.actual,
            }),
            Some(fail.at),
        ),
        Err(e) => (Status::Fail, None, Some(format!("error: {e}"))),
    };
    CheckReport {
        theorem: check.id.to_string(),
        params: check.params.to_string(),
        tier: check.tier,
        status,
        first_mismatch,
        note,
        runtime_ms,
    }
}

/// Runs every check the scope selects and returns the canonical report.
///
/// Errors are reserved for unusable configurations (unknown scope, order
/// beyond the resource cap); a failing check is a `fail` row, not an error.
pub fn run_scope(scope: &str, cfg: &VerifyConfig) -> Result<Report> {
    oracle::guard(cfg.n_max, oracle::DEFAULT_COUNT_CAP)?;
    let checks = select(scope, cfg.tier)?;
    let cx = Ctx { n: cfg.n_max };
    let mut rows: Vec<CheckReport> = if cfg.parallel && checks.len() > 1 {
        let next = AtomicUsize::new(0);
        let results = Mutex::new(Vec::with_capacity(checks.len()));
        let workers = std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
            .min(checks.len());
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(check) = checks.get(i) else { break };
                    let row = run_one(check, &cx, cfg.timings);
                    results.lock().expect("no panics hold this lock").push(row);
                });
            }
        });
        results.into_inner().expect("workers finished")
    } else {
        checks.iter().map(|c| run_one(c, &cx, cfg.timings)).collect()
    };
    rows.sort_by(|a, b| a.theorem.cmp(&b.theorem));
    Ok(Report {
        scope: scope.to_string(),
        n_max: cfg.n_max,
        checks: rows,
    })
}
