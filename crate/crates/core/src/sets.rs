//! Integer set and progression primitives, and the Minkowski-sum oracle
//! every verifier in the crate is built on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{VerificationReport, Witness};

/// Default bound on the number of sums any single operation may materialise.
pub const DEFAULT_MAX_PRODUCT: u64 = 100_000_000;

/// Resource bounds shared by every cap-checked operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_product: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_product: DEFAULT_MAX_PRODUCT,
        }
    }
}

impl Limits {
    pub fn new(max_product: u64) -> Self {
        Limits { max_product }
    }

    /// Fails with [`Error::CapExceeded`] unless `product` fits under the cap.
    pub fn check(&self, product: u128) -> Result<()> {
        if product > u128::from(self.max_product) {
            Err(Error::CapExceeded {
                required: product,
                cap: self.max_product,
            })
        } else {
            Ok(())
        }
    }
}

/// Product of cardinalities, saturating in `u128` so cap checks never wrap.
pub(crate) fn cardinality_product<I: IntoIterator<Item = usize>>(lens: I) -> u128 {
    lens.into_iter()
        .fold(1u128, |acc, n| acc.saturating_mul(n as u128))
}

/// `{ start + k * step : 0 <= k < count }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub start: i64,
    pub step: u64,
    pub count: u64,
}

impl Progression {
    pub fn new(start: i64, step: u64, count: u64) -> Result<Self> {
        if step == 0 || count == 0 {
            return Err(Error::invalid(format!(
                "progression needs step >= 1 and count >= 1 (got step {step}, count {count})"
            )));
        }
        let p = Progression { start, step, count };
        p.last()?;
        Ok(p)
    }

    /// `<count>` = {0, 1, ..., count - 1}.
    pub fn range(count: u64) -> Result<Self> {
        Progression::new(0, 1, count)
    }

    pub fn last(&self) -> Result<i64> {
        let span = i64::try_from(self.count - 1)
            .ok()
            .and_then(|k| i64::try_from(self.step).ok().and_then(|s| k.checked_mul(s)))
            .ok_or(Error::Overflow("progression span"))?;
        self.start
            .checked_add(span)
            .ok_or(Error::Overflow("progression end"))
    }

    /// Position of `value` in the progression, if it belongs to it.
    pub fn index_of(&self, value: i64) -> Option<u64> {
        let offset = i128::from(value) - i128::from(self.start);
        if offset < 0 {
            return None;
        }
        let offset = offset as u128;
        let step = u128::from(self.step);
        if !offset.is_multiple_of(step) {
            return None;
        }
        let k = offset / step;
        (k < u128::from(self.count)).then_some(k as u64)
    }

    pub fn nth(&self, k: u64) -> i64 {
        self.start + (k as i64) * (self.step as i64)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.count).map(move |k| self.nth(k))
    }
}

/// A strictly increasing list of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ComponentSet(Vec<u64>);

impl ComponentSet {
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "set elements must be strictly increasing ({} followed by {})",
                w[0], w[1]
            )));
        }
        Ok(ComponentSet(elements))
    }

    pub(crate) fn from_sorted(elements: Vec<u64>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        ComponentSet(elements)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub(crate) fn signed(&self) -> Result<Vec<i64>> {
        self.0
            .iter()
            .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("set element exceeds i64")))
            .collect()
    }
}

impl TryFrom<Vec<u64>> for ComponentSet {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        ComponentSet::new(v)
    }
}

impl From<ComponentSet> for Vec<u64> {
    fn from(s: ComponentSet) -> Self {
        s.0
    }
}

impl AsRef<[u64]> for ComponentSet {
    fn as_ref(&self) -> &[u64] {
        &self.0
    }
}

pub fn progression_set(p: &Progression) -> Result<ComponentSet> {
    if p.start < 0 {
        return Err(Error::invalid("component sets hold non-negative integers only"));
    }
    p.last()?;
    let v = p.iter().map(|x| x as u64).collect();
    Ok(ComponentSet::from_sorted(v))
}

/// Visits `Σ parts[j][k_j]` for every index tuple, part 0 varying fastest.
/// The callback may stop the walk early by returning `false`.
pub(crate) fn for_each_sum<F>(parts: &[&[i64]], mut visit: F) -> Result<()>
where
    F: FnMut(i64) -> bool,
{
    let m = parts.len();
    if m == 0 {
        visit(0);
        return Ok(());
    }
    if parts.iter().any(|p| p.is_empty()) {
        return Ok(());
    }
    // suffix[j] = Σ_{i >= j} parts[i][idx[i]], suffix[m] = 0
    let mut idx = vec![0usize; m];
    let mut suffix = vec![0i64; m + 1];
    for j in (0..m).rev() {
        suffix[j] = suffix[j + 1]
            .checked_add(parts[j][0])
            .ok_or(Error::Overflow("Minkowski sum"))?;
    }
    loop {
        if !visit(suffix[0]) {
            return Ok(());
        }
        let mut j = 0;
        loop {
            idx[j] += 1;
            if idx[j] < parts[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
            if j == m {
                return Ok(());
            }
        }
        for i in (0..=j).rev() {
            suffix[i] = suffix[i + 1]
                .checked_add(parts[i][idx[i]])
                .ok_or(Error::Overflow("Minkowski sum"))?;
        }
    }
}

/// All `∏|A_j|` sums, one per index tuple, sorted with duplicates kept.
pub fn minkowski_sum(sets: &[ComponentSet], limits: &Limits) -> Result<Vec<i64>> {
    limits.check(cardinality_product(sets.iter().map(|s| s.len())))?;
    let signed = sets
        .iter()
        .map(|s| s.signed())
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&[i64]> = signed.iter().map(|v| v.as_slice()).collect();
    minkowski_sum_signed(&refs, limits)
}

pub(crate) fn minkowski_sum_signed(parts: &[&[i64]], limits: &Limits) -> Result<Vec<i64>> {
    let product = cardinality_product(parts.iter().map(|p| p.len()));
    limits.check(product)?;
    let mut out = Vec::with_capacity(product as usize);
    for_each_sum(parts, |s| {
        out.push(s);
        true
    })?;
    out.sort_unstable();
    Ok(out)
}

/// Compares a sorted multiset against the progression, each value once.
pub fn is_progression(ms: &[i64], p: &Progression) -> VerificationReport {
    let mut prev: Option<i64> = None;
    for (k, &x) in ms.iter().enumerate() {
        if k as u64 >= p.count {
            return mismatch("more values than the target holds", x);
        }
        let expected = p.nth(k as u64);
        if x < expected {
            return if prev == Some(x) {
                mismatch("duplicate value", x)
            } else {
                mismatch("value outside target", x)
            };
        }
        if x > expected {
            return mismatch("missing value", expected);
        }
        prev = Some(x);
    }
    if (ms.len() as u64) < p.count {
        return mismatch("missing value", p.nth(ms.len() as u64));
    }
    VerificationReport::pass()
}

fn mismatch(detail: &str, value: i64) -> VerificationReport {
    VerificationReport::fail("target_mismatch")
        .with_witness(Witness::Value(value))
        .with_detail(detail)
}

/// Checks that the sums over `parts` hit every element of `target` exactly
/// once, using a presence bitmap indexed by progression position. Stops at
/// the first offending sum in enumeration order.
pub(crate) fn sums_cover_once(
    parts: &[&[i64]],
    target: &Progression,
    limits: &Limits,
) -> Result<VerificationReport> {
    let product = cardinality_product(parts.iter().map(|p| p.len()));
    limits.check(product)?;
    limits.check(u128::from(target.count))?;
    let mut seen = vec![0u64; (target.count as usize).div_ceil(64)];
    let mut failure: Option<VerificationReport> = None;
    for_each_sum(parts, |s| match target.index_of(s) {
        None => {
            failure = Some(mismatch("sum outside target", s));
            false
        }
        Some(k) => {
            let (word, bit) = ((k / 64) as usize, k % 64);
            if seen[word] & (1 << bit) != 0 {
                failure = Some(mismatch("duplicate sum", s));
                false
            } else {
                seen[word] |= 1 << bit;
                true
            }
        }
    })?;
    if let Some(report) = failure {
        return Ok(report);
    }
    if product < u128::from(target.count) {
        let k = first_unset(&seen, target.count).expect("fewer sums than targets");
        return Ok(mismatch("missing value", target.nth(k)));
    }
    Ok(VerificationReport::pass())
}

fn first_unset(bits: &[u64], count: u64) -> Option<u64> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != u64::MAX)
        .map(|(i, &w)| i as u64 * 64 + u64::from((!w).trailing_zeros()))
        .filter(|&k| k < count)
}
