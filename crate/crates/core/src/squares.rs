//! Squares built from two-part sum-and-distance systems: even and odd
//! reversible squares, associated magic squares and most perfect squares.
//!
//! Entries are held in doubled units so that the weightless forms of even
//! squares, whose entries are half-integers, stay exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{VerificationReport, Witness};
use crate::sds::{verify_sds, Flavour, SdsSystem};
use crate::sets::{ComponentSet, Limits};

pub const TOROIDAL_CONVENTION: &str = "2x2 blocks taken contiguously with wraparound";

/// `n × n` matrix, row-major, entries stored as twice their value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    n: usize,
    doubled: Vec<i64>,
}

impl SquareMatrix {
    pub fn from_doubled(n: usize, doubled: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("square side must be positive"));
        }
        if doubled.len() != n * n {
            return Err(Error::invalid(format!(
                "side {n} needs {} entries, got {}",
                n * n,
                doubled.len()
            )));
        }
        if let Some(&x) = doubled.first() {
            if let Some(&y) = doubled.iter().find(|&&y| (y - x) % 2 != 0) {
                return Err(Error::invalid(format!(
                    "doubled entries {x} and {y} differ in parity"
                )));
            }
        }
        Ok(SquareMatrix { n, doubled })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::invalid(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                rows[i].len()
            )));
        }
        let doubled = rows
            .iter()
            .flatten()
            .map(|&x| x.checked_mul(2).ok_or(Error::Overflow("doubling")))
            .collect::<Result<_>>()?;
        SquareMatrix::from_doubled(n, doubled)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    /// Doubled entry at 1-based `(i, k)`.
    pub fn doubled_at(&self, i: usize, k: usize) -> i64 {
        self.doubled[(i - 1) * self.n + (k - 1)]
    }

    /// Plain entry at 1-based `(i, k)`, if it is an integer.
    pub fn get(&self, i: usize, k: usize) -> Option<i64> {
        let d = self.doubled_at(i, k);
        (d % 2 == 0).then_some(d / 2)
    }

    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|d| d % 2 == 0)
    }

    /// Plain integer rows. Fails when some entry is a half-integer.
    pub fn rows(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_integral() {
            return Err(Error::invalid("matrix has half-integer entries"));
        }
        Ok(self
            .doubled
            .chunks(self.n)
            .map(|r| r.iter().map(|d| d / 2).collect())
            .collect())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        for row in self.rows()? {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        Ok(out)
    }
}

/// Wire form: `{"n": n, "entries": [[row], ...]}` in plain integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareDocument {
    pub n: usize,
    pub entries: Vec<Vec<i64>>,
}

impl TryFrom<&SquareMatrix> for SquareDocument {
    type Error = Error;

    fn try_from(m: &SquareMatrix) -> Result<Self> {
        Ok(SquareDocument {
            n: m.n,
            entries: m.rows()?,
        })
    }
}

impl TryFrom<SquareDocument> for SquareMatrix {
    type Error = Error;

    fn try_from(doc: SquareDocument) -> Result<Self> {
        let m = SquareMatrix::from_rows(&doc.entries)?;
        if m.n != doc.n {
            return Err(Error::invalid(format!(
                "document says n = {} but has {} rows",
                doc.n, m.n
            )));
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquareKind {
    Reversible,
    Associated,
    MostPerfect,
}

impl std::str::FromStr for SquareKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reversible" => Ok(SquareKind::Reversible),
            "associated" | "magic" => Ok(SquareKind::Associated),
            "most-perfect" | "mostperfect" => Ok(SquareKind::MostPerfect),
            _ => Err(Error::invalid(format!("unknown square kind {s:?}"))),
        }
    }
}

/// ν × ν block in plain row-major form.
type Block = Vec<Vec<i64>>;

fn block(nu: usize, f: impl Fn(usize, usize) -> i64) -> Block {
    (0..nu).map(|i| (0..nu).map(|k| f(i, k)).collect()).collect()
}

fn signed(cs: &ComponentSet) -> Result<Vec<i64>> {
    cs.iter()
        .map(|x| i64::try_from(x).map_err(|_| Error::Overflow("set element")))
        .collect()
}

fn require_two_part_sds(a: &ComponentSet, b: &ComponentSet, flavour: Flavour) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "parts have sizes {} and {}; squares need equal sizes",
            a.len(),
            b.len()
        )));
    }
    let sds = SdsSystem::new(flavour, vec![a.clone(), b.clone()])?;
    verify_sds(&sds, &Limits::default())?.into_result()?;
    Ok(a.len())
}

fn require_zero_sum_signs(v: &[i64], nu: usize, name: &str) -> Result<()> {
    if v.len() != nu {
        return Err(Error::invalid(format!("{name} has length {}, expected {nu}", v.len())));
    }
    if v.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::invalid(format!("{name} must have entries ±1")));
    }
    if v.iter().sum::<i64>() != 0 {
        return Err(Error::invalid(format!("{name} must sum to 0")));
    }
    Ok(())
}

/// `(1, -1, 1, -1, ...)` of length `nu`.
pub fn alternating_signs(nu: usize) -> Vec<i64> {
    (0..nu).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect()
}

/// Assembles `[tl, tr; bl, br]` (doubled weightless units) and adds twice
/// the weight `n² + 1`.
fn assemble(tl: Block, tr: Block, bl: Block, br: Block) -> Result<SquareMatrix> {
    let nu = tl.len();
    let n = 2 * nu;
    let two_w = (n * n + 1) as i64;
    let mut doubled = Vec::with_capacity(n * n);
    for (left, right) in tl.iter().chain(&bl).zip(tr.iter().chain(&br)) {
        doubled.extend(left.iter().chain(right).map(|x| x + two_w));
    }
    SquareMatrix::from_doubled(n, doubled)
}

/// Even reversible square of side `2ν` from a two-part non-inclusive system
/// `{a}, {b}` with `|a| = |b| = ν`.
pub fn reversible_square_even(a: &ComponentSet, b: &ComponentSet) -> Result<SquareMatrix> {
    let nu = require_two_part_sds(a, b, Flavour::NonInclusive)?;
    let (a, b) = (signed(a)?, signed(b)?);
    let r = |i: usize| nu - 1 - i;
    assemble(
        block(nu, |i, k| a[r(k)] + b[r(i)]),
        block(nu, |i, k| -a[k] + b[r(i)]),
        block(nu, |i, k| a[r(k)] - b[i]),
        block(nu, |i, k| -a[k] - b[i]),
    )
}

/// Odd reversible square of side `2ν + 1` from a two-part inclusive system.
pub fn reversible_square_odd(a: &ComponentSet, b: &ComponentSet) -> Result<SquareMatrix> {
    let nu = require_two_part_sds(a, b, Flavour::Inclusive)?;
    let (a, b) = (signed(a)?, signed(b)?);
    let n = 2 * nu + 1;
    let r = |i: usize| nu - 1 - i;
    let weightless = |i: usize, k: usize| -> i64 {
        use std::cmp::Ordering::*;
        match (i.cmp(&nu), k.cmp(&nu)) {
            (Less, Less) => a[r(k)] + b[r(i)],
            (Less, Equal) => b[r(i)],
            (Less, Greater) => -a[k - nu - 1] + b[r(i)],
            (Equal, Less) => a[r(k)],
            (Equal, Equal) => 0,
            (Equal, Greater) => -a[k - nu - 1],
            (Greater, Less) => a[r(k)] - b[i - nu - 1],
            (Greater, Equal) => -b[i - nu - 1],
            (Greater, Greater) => -a[k - nu - 1] - b[i - nu - 1],
        }
    };
    let two_w = (n * n + 1) as i64;
    let mut doubled = Vec::with_capacity(n * n);
    for i in 0..n {
        for k in 0..n {
            doubled.push(2 * weightless(i, k) + two_w);
        }
    }
    SquareMatrix::from_doubled(n, doubled)
}

/// Associated magic square of side `2ν` (ν even) from a non-inclusive
/// system and zero-sum sign vectors `v`, `w`; `None` means alternating signs.
pub fn associated_magic_square(
    a: &ComponentSet,
    b: &ComponentSet,
    v: Option<&[i64]>,
    w: Option<&[i64]>,
) -> Result<SquareMatrix> {
    if !a.len().is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "associated magic squares need even ν, got {}",
            a.len()
        )));
    }
    let nu = require_two_part_sds(a, b, Flavour::NonInclusive)?;
    let default = alternating_signs(nu);
    let v = v.unwrap_or(&default);
    let w = w.unwrap_or(&default);
    require_zero_sum_signs(v, nu, "v")?;
    require_zero_sum_signs(w, nu, "w")?;
    let (a, b) = (signed(a)?, signed(b)?);
    let r = |i: usize| nu - 1 - i;
    // X = J Vᵀ: X(i,k) = V(k, r(i)) = a_k v_{r(i)};  Y = W J: Y(i,k) = b_i w_{r(k)}
    let x = |i: usize, k: usize| a[k] * v[r(i)];
    let y = |i: usize, k: usize| b[i] * w[r(k)];
    assemble(
        block(nu, |i, k| x(r(i), r(k)) + y(r(i), r(k))),
        block(nu, |i, k| -x(r(i), k) + y(r(i), k)),
        block(nu, |i, k| x(i, r(k)) - y(i, r(k))),
        block(nu, |i, k| -x(i, k) - y(i, k)),
    )
}

/// Most perfect square of side `2ν` (ν even); `a2`, `b2` form a two-part
/// non-inclusive system and play the role of `2a`, `2b`.
pub fn most_perfect_square(a2: &ComponentSet, b2: &ComponentSet) -> Result<SquareMatrix> {
    if !a2.len().is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "most perfect squares need even ν, got {}",
            a2.len()
        )));
    }
    let nu = require_two_part_sds(a2, b2, Flavour::NonInclusive)?;
    let (a, b) = (signed(a2)?, signed(b2)?);
    let s = alternating_signs(nu);
    let p = |i: usize, k: usize| a[i] * s[k];
    let q = |i: usize, k: usize| s[i] * b[k];
    assemble(
        block(nu, |i, k| p(i, k) + q(i, k)),
        block(nu, |i, k| p(i, k) - q(i, k)),
        block(nu, |i, k| -p(i, k) + q(i, k)),
        block(nu, |i, k| -p(i, k) - q(i, k)),
    )
}

fn at(m: &SquareMatrix, i: usize, k: usize) -> i64 {
    m.doubled[i * m.n + k]
}

fn fail_at(name: &str, i: usize, k: usize, detail: String) -> VerificationReport {
    VerificationReport::fail(name)
        .with_witness(Witness::Index(vec![i + 1, k + 1]))
        .with_detail(detail)
}

fn check_entry_set(m: &SquareMatrix) -> VerificationReport {
    let size = m.n * m.n;
    let mut seen = vec![false; size];
    for (idx, &d) in m.doubled.iter().enumerate() {
        let (i, k) = (idx / m.n, idx % m.n);
        if d % 2 != 0 {
            return fail_at("entry_set", i, k, format!("entry {}/2 is not an integer", d));
        }
        let x = d / 2;
        if x < 1 || x > size as i64 {
            return fail_at("entry_set", i, k, format!("entry {x} outside 1..={size}"));
        }
        if std::mem::replace(&mut seen[x as usize - 1], true) {
            return fail_at("entry_set", i, k, format!("repeated entry {x}"));
        }
    }
    VerificationReport::pass()
}

/// Rows and columns each read the same as their reversal up to the end sum.
fn check_line_reversal(m: &SquareMatrix) -> VerificationReport {
    let n = m.n;
    for i in 0..n {
        for k in 0..n {
            let row_end = at(m, i, 0) + at(m, i, n - 1);
            if at(m, i, k) + at(m, i, n - 1 - k) != row_end {
                return fail_at("line_reversal", i, k, format!("row {}", i + 1));
            }
            let col_end = at(m, 0, k) + at(m, n - 1, k);
            if at(m, i, k) + at(m, n - 1 - i, k) != col_end {
                return fail_at("line_reversal", i, k, format!("column {}", k + 1));
            }
        }
    }
    VerificationReport::pass()
}

fn check_vertex_sum(m: &SquareMatrix) -> VerificationReport {
    for i in 0..m.n {
        for k in 0..m.n {
            let predicted = at(m, i, 0) + at(m, 0, k) - at(m, 0, 0);
            if at(m, i, k) != predicted {
                return fail_at(
                    "vertex_cross_sum",
                    i,
                    k,
                    format!("doubled entry {}, corner sums give {predicted}", at(m, i, k)),
                );
            }
        }
    }
    VerificationReport::pass()
}

/// Doubled magic constant `n(n² + 1)`.
fn check_magic_lines(m: &SquareMatrix) -> VerificationReport {
    let n = m.n;
    let target = (n * (n * n + 1)) as i64;
    for i in 0..n {
        let row: i64 = (0..n).map(|k| at(m, i, k)).sum();
        if row != target {
            return fail_at("magic_sums", i, 0, format!("row {} sums to {}", i + 1, row / 2));
        }
        let col: i64 = (0..n).map(|k| at(m, k, i)).sum();
        if col != target {
            return fail_at("magic_sums", 0, i, format!("column {} sums to {}", i + 1, col / 2));
        }
    }
    let diag: i64 = (0..n).map(|i| at(m, i, i)).sum();
    let anti: i64 = (0..n).map(|i| at(m, i, n - 1 - i)).sum();
    if diag != target {
        return fail_at("magic_sums", 0, 0, format!("diagonal sums to {}", diag / 2));
    }
    if anti != target {
        return fail_at("magic_sums", 0, n - 1, format!("antidiagonal sums to {}", anti / 2));
    }
    VerificationReport::pass()
}

fn check_associated(m: &SquareMatrix) -> VerificationReport {
    let n = m.n;
    // doubled pair sum
    let target = 2 * (n * n + 1) as i64;
    for i in 0..n {
        for k in 0..n {
            let s = at(m, i, k) + at(m, n - 1 - i, n - 1 - k);
            if s != target {
                return fail_at("associated", i, k, format!("pair sums to {}", s / 2));
            }
        }
    }
    VerificationReport::pass()
}

fn check_most_perfect(m: &SquareMatrix) -> VerificationReport {
    let n = m.n;
    if !n.is_multiple_of(2) {
        return VerificationReport::fail("even_side")
            .with_detail(format!("side {n} is odd"))
            .with_convention(TOROIDAL_CONVENTION);
    }
    let pair = 2 * (n * n + 1) as i64;
    for i in 0..n {
        for k in 0..n {
            let (i1, k1) = ((i + 1) % n, (k + 1) % n);
            let s = at(m, i, k) + at(m, i, k1) + at(m, i1, k) + at(m, i1, k1);
            if s != 2 * pair {
                return fail_at("block_sums", i, k, format!("2x2 block sums to {}", s / 2))
                    .with_convention(TOROIDAL_CONVENTION);
            }
            let s = at(m, i, k) + at(m, (i + n / 2) % n, (k + n / 2) % n);
            if s != pair {
                return fail_at("diagonal_pairs", i, k, format!("pair sums to {}", s / 2))
                    .with_convention(TOROIDAL_CONVENTION);
            }
        }
    }
    check_magic_lines(m).with_convention(TOROIDAL_CONVENTION)
}

/// Checks the entry set `{1, ..., n²}` and the clauses of `kind`:
/// reversible is line reversal plus the vertex sum property; associated is
/// magic rows, columns and diagonals plus central symmetry; most perfect is
/// constant 2×2 block sums (with wraparound), diagonal pairs half a period
/// apart summing to `n² + 1`, and magic lines.
pub fn verify_square(m: &SquareMatrix, kind: SquareKind) -> VerificationReport {
    let entries = check_entry_set(m);
    let report = if !entries.passed {
        entries
    } else {
        match kind {
            SquareKind::Reversible => {
                let r = check_line_reversal(m);
                if r.passed {
                    check_vertex_sum(m)
                } else {
                    r
                }
            }
            SquareKind::Associated => {
                let r = check_magic_lines(m);
                if r.passed {
                    check_associated(m)
                } else {
                    r
                }
            }
            SquareKind::MostPerfect => check_most_perfect(m),
        }
    };
    if kind == SquareKind::MostPerfect && report.convention.is_none() {
        report.with_convention(TOROIDAL_CONVENTION)
    } else {
        report
    }
}
