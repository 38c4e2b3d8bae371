//! Sum systems: construction from a joint ordered factorisation, the
//! sum-system check and its generating-polynomial twin, palindromy and
//! parity of the component sets, and decomposition back to the factorisation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jof::{canonicalise, divisors_from_two, JointOrderedFactorisation, Step};
use crate::report::{VerificationReport, Witness};
use crate::sets::{cardinality_product, sums_cover_once, ComponentSet, Limits, Progression};

/// `m >= 1` component sets, each of cardinality at least 2. Whether the parts
/// actually form a sum system is a separate question; see
/// [`verify_sum_system`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumSystem {
    parts: Vec<ComponentSet>,
}

impl SumSystem {
    pub fn new(parts: Vec<ComponentSet>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("a sum system needs at least one part"));
        }
        if let Some(j) = parts.iter().position(|p| p.len() < 2) {
            return Err(Error::invalid(format!(
                "part {} has {} element(s); sum-system parts need at least 2",
                j + 1,
                parts[j].len()
            )));
        }
        Ok(SumSystem { parts })
    }

    pub fn from_vecs(parts: Vec<Vec<u64>>) -> Result<Self> {
        SumSystem::new(parts.into_iter().map(ComponentSet::new).collect::<Result<_>>()?)
    }

    pub fn parts(&self) -> &[ComponentSet] {
        &self.parts
    }

    pub fn part(&self, j: usize) -> &ComponentSet {
        &self.parts[j]
    }

    pub fn order(&self) -> usize {
        self.parts.len()
    }

    /// Cardinalities `n_j = |A_j|`.
    pub fn dims(&self) -> Vec<u64> {
        self.parts.iter().map(|p| p.len() as u64).collect()
    }

    /// `∏ n_j`, the size of the claimed target `<∏ n_j>`.
    pub fn target_size(&self) -> u128 {
        cardinality_product(self.parts.iter().map(|p| p.len()))
    }

    pub fn into_parts(self) -> Vec<ComponentSet> {
        self.parts
    }

    fn signed_parts(&self) -> Result<Vec<Vec<i64>>> {
        self.parts.iter().map(|p| p.signed()).collect()
    }
}

/// Wire form: `{"dims": [n1, ...], "parts": [[0, ...], ...]}`. `dims` is
/// redundant and must agree with the part cardinalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumSystemDocument {
    pub dims: Vec<u64>,
    pub parts: Vec<Vec<u64>>,
}

impl From<&SumSystem> for SumSystemDocument {
    fn from(ss: &SumSystem) -> Self {
        SumSystemDocument {
            dims: ss.dims(),
            parts: ss.parts.iter().map(|p| p.as_slice().to_vec()).collect(),
        }
    }
}

impl TryFrom<SumSystemDocument> for SumSystem {
    type Error = Error;

    fn try_from(doc: SumSystemDocument) -> Result<Self> {
        let cards: Vec<u64> = doc.parts.iter().map(|p| p.len() as u64).collect();
        if cards != doc.dims {
            return Err(Error::invalid(format!(
                "dims {:?} disagree with part cardinalities {:?}",
                doc.dims, cards
            )));
        }
        SumSystem::from_vecs(doc.parts)
    }
}

/// `A_j = Σ_{j_l = j} (∏_{s<l} f_s)·<f_l>`, built one step at a time: the step
/// `(j, f)` replaces `A_j` by `A_j + F·<f>` where `F` is the running product
/// of all earlier factors.
pub fn build_sum_system(jof: &JointOrderedFactorisation) -> Result<SumSystem> {
    if let Some(j) = jof.dims().iter().position(|&n| n < 2) {
        return Err(Error::invalid(format!(
            "dimension {} is {}; sum-system parts need at least 2 elements",
            j + 1,
            jof.dims()[j]
        )));
    }
    let mut parts: Vec<Vec<u64>> = vec![vec![0]; jof.order()];
    let mut running = 1u64;
    for &Step { direction, factor } in jof.steps() {
        let part = &mut parts[direction - 1];
        let mut grown = Vec::with_capacity(part.len() * factor as usize);
        for q in 0..factor {
            let offset = q.checked_mul(running).ok_or(Error::Overflow("building offset"))?;
            for &a in part.iter() {
                grown.push(a.checked_add(offset).ok_or(Error::Overflow("building offset"))?);
            }
        }
        *part = grown;
        running = running
            .checked_mul(factor)
            .ok_or(Error::Overflow("running factor product"))?;
    }
    SumSystem::new(parts.into_iter().map(ComponentSet::from_sorted).collect())
}

/// Passes when the `∏ n_j` sums hit `<∏ n_j>` once each.
pub fn verify_sum_system(ss: &SumSystem, limits: &Limits) -> Result<VerificationReport> {
    let d = ss.target_size();
    limits.check(d)?;
    let target = Progression::range(d as u64)?;
    let signed = ss.signed_parts()?;
    let refs: Vec<&[i64]> = signed.iter().map(Vec::as_slice).collect();
    sums_cover_once(&refs, &target, limits)
}

/// `cs = max(cs) - cs`. The witness is the first `x` with `max - x` absent.
pub fn check_palindromic(cs: &ComponentSet) -> VerificationReport {
    let v = cs.as_slice();
    let Some(&max) = v.last() else {
        return VerificationReport::fail("nonempty").with_detail("empty set");
    };
    // sorted ascending, so the reflection pairs v[i] with v[len-1-i]
    for (i, &x) in v.iter().enumerate() {
        if x + v[v.len() - 1 - i] != max {
            return VerificationReport::fail("palindromic")
                .with_witness(Witness::Value(x as i64))
                .with_detail(format!("{} - {} = {} is not in the set", max, x, max - x));
        }
    }
    VerificationReport::pass()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(x: u64) -> Self {
        if x.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Parities of `max A_j`. Fails unless `ss` is a sum system.
pub fn parity_signature(ss: &SumSystem, limits: &Limits) -> Result<Vec<Parity>> {
    verify_sum_system(ss, limits)?.into_result()?;
    Ok(ss
        .parts
        .iter()
        .map(|p| Parity::of(p.max().expect("parts are nonempty")))
        .collect())
}

/// All maxima even when every cardinality is odd; otherwise exactly one odd
/// maximum.
pub fn check_parity_dichotomy(ss: &SumSystem, limits: &Limits) -> Result<VerificationReport> {
    let signature = parity_signature(ss, limits)?;
    let odd_maxima: Vec<usize> = signature
        .iter()
        .enumerate()
        .filter(|(_, &p)| p == Parity::Odd)
        .map(|(j, _)| j + 1)
        .collect();
    let all_odd_cards = ss.parts.iter().all(|p| p.len() % 2 == 1);
    let ok = if all_odd_cards {
        odd_maxima.is_empty()
    } else {
        odd_maxima.len() == 1
    };
    if ok {
        return Ok(VerificationReport::pass());
    }
    let mut report = VerificationReport::fail("parity_dichotomy").with_detail(format!(
        "{} odd maxima at parts {:?}",
        odd_maxima.len(),
        odd_maxima
    ));
    if let Some(&j) = odd_maxima.first() {
        report = report.with_witness(Witness::Position(j));
    }
    Ok(report)
}

/// Multiplies the characteristic polynomials `p_A(x) = Σ_{a∈A} x^a` of the
/// parts with exact integer coefficients and passes when the product is
/// `1 + x + ... + x^{d-1}`, `d = ∏ n_j`.
pub fn polynomial_check(ss: &SumSystem, limits: &Limits) -> Result<VerificationReport> {
    let d = ss.target_size();
    limits.check(d)?;
    let degree: u128 = ss
        .parts
        .iter()
        .map(|p| u128::from(p.max().expect("parts are nonempty")))
        .sum();
    if degree + 1 != d {
        return Ok(VerificationReport::fail("polynomial_identity")
            .with_witness(Witness::Value(i64::try_from(degree).unwrap_or(i64::MAX)))
            .with_detail(format!("product has degree {degree}, expected {}", d - 1)));
    }
    let mut coeffs: Vec<u64> = vec![1];
    for part in &ss.parts {
        let shift = part.max().expect("parts are nonempty") as usize;
        let mut next = vec![0u64; coeffs.len() + shift];
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for a in part.iter() {
                let slot = &mut next[i + a as usize];
                *slot = slot
                    .checked_add(c)
                    .ok_or(Error::Overflow("polynomial coefficient"))?;
            }
        }
        coeffs = next;
    }
    match coeffs.iter().position(|&c| c != 1) {
        None => Ok(VerificationReport::pass()),
        Some(k) => Ok(VerificationReport::fail("polynomial_identity")
            .with_witness(Witness::Value(k as i64))
            .with_detail(format!("coefficient of x^{k} is {}", coeffs[k]))),
    }
}

/// Recovers the canonical JOF that builds `ss`, working on the component sets
/// directly.
///
/// Starting from the trivial sub-system (first element of every part) with
/// sum range `<F>`, `F = 1`, the next missing integer `F` is the next unused
/// element of exactly one part `j`. That part is grown to the smallest
/// multiple `t·ñ_j` whose truncated parts again cover `<F·t>` and after which
/// `F·t` is not the next element of part `j`; the step
/// `(j, t)` is recorded and the loop repeats until every part is consumed.
/// Part order is kept as given.
pub fn decompose_sum_system(ss: &SumSystem, limits: &Limits) -> Result<JointOrderedFactorisation> {
    verify_sum_system(ss, limits)?.into_result()?;
    let dims = ss.dims();
    let signed = ss.signed_parts()?;
    let m = ss.order();
    let mut taken = vec![1usize; m];
    let mut covered = 1u64;
    let mut steps = Vec::new();
    while taken.iter().zip(&dims).any(|(&t, &n)| t as u64 != n) {
        let mu = covered as i64;
        let mut hits = (0..m).filter(|&j| taken[j] < signed[j].len() && signed[j][taken[j]] == mu);
        let j = hits
            .next()
            .ok_or_else(|| Error::Internal(format!("{mu} is not the next element of any part")))?;
        if let Some(other) = hits.next() {
            return Err(Error::Internal(format!(
                "{mu} is the next element of both part {} and part {}",
                j + 1,
                other + 1
            )));
        }
        let quotient = dims[j] / taken[j] as u64;
        let mut factor = None;
        for t in divisors_from_two(quotient) {
            let grown = taken[j] * t as usize;
            let refs: Vec<&[i64]> = (0..m)
                .map(|i| &signed[i][..if i == j { grown } else { taken[i] }])
                .collect();
            let target = Progression::range(covered * t)?;
            // a shorter run of blocks can close a sub-system too; the step
            // ends only where the next missing integer leaves part j
            let ends = signed[j].get(grown).is_none_or(|&x| x != (covered * t) as i64);
            if ends && sums_cover_once(&refs, &target, limits)?.passed {
                factor = Some(t);
                break;
            }
        }
        let t = factor.ok_or_else(|| {
            Error::Internal(format!("no extension of part {} closes a sub-system", j + 1))
        })?;
        taken[j] *= t as usize;
        covered *= t;
        steps.push(Step::new(j + 1, t));
    }
    canonicalise(&steps, &dims)
}
