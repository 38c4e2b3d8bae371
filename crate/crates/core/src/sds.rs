//! Sum-and-distance systems (inclusive and non-inclusive), their signed-sum
//! and two-part absolute-value verifiers, and the parity-indexed bijections
//! with sum systems.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::sets::{cardinality_product, is_progression, sums_cover_once, ComponentSet, Limits, Progression};
use crate::sumsystem::{verify_sum_system, SumSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavour {
    #[serde(rename = "inclusive")]
    Inclusive,
    #[serde(rename = "non-inclusive")]
    NonInclusive,
}

impl fmt::Display for Flavour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavour::Inclusive => "inclusive",
            Flavour::NonInclusive => "non-inclusive",
        })
    }
}

impl FromStr for Flavour {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inclusive" => Ok(Flavour::Inclusive),
            "non-inclusive" => Ok(Flavour::NonInclusive),
            other => Err(Error::invalid(format!(
                "unknown flavour `{other}` (expected `inclusive` or `non-inclusive`)"
            ))),
        }
    }
}

/// Non-empty parts of strictly positive integers, stored ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SdsSystem {
    flavour: Flavour,
    parts: Vec<ComponentSet>,
}

impl SdsSystem {
    pub fn new(flavour: Flavour, parts: Vec<ComponentSet>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("a sum-and-distance system needs at least one part"));
        }
        for (j, p) in parts.iter().enumerate() {
            match p.as_slice().first() {
                None => return Err(Error::invalid(format!("part {} is empty", j + 1))),
                Some(0) => {
                    return Err(Error::invalid(format!(
                        "part {} contains 0; parts hold positive integers",
                        j + 1
                    )))
                }
                Some(_) => {}
            }
        }
        Ok(SdsSystem { flavour, parts })
    }

    pub fn from_vecs(flavour: Flavour, parts: Vec<Vec<u64>>) -> Result<Self> {
        SdsSystem::new(flavour, parts.into_iter().map(ComponentSet::new).collect::<Result<_>>()?)
    }

    pub fn flavour(&self) -> Flavour {
        self.flavour
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

    /// The signed target progression for this flavour and these cardinalities.
    pub fn target(&self) -> Result<Progression> {
        match self.flavour {
            Flavour::NonInclusive => {
                // 2<2^m P> - 2^m P + 1
                let count = cardinality_product(self.parts.iter().map(|p| 2 * p.len()));
                let count = u64::try_from(count).map_err(|_| Error::Overflow("target size"))?;
                let start = 1i64
                    .checked_sub_unsigned(count)
                    .ok_or(Error::Overflow("target start"))?;
                Progression::new(start, 2, count)
            }
            Flavour::Inclusive => {
                // <Q> - (Q - 1)/2
                let count = cardinality_product(self.parts.iter().map(|p| 2 * p.len() + 1));
                let count = u64::try_from(count).map_err(|_| Error::Overflow("target size"))?;
                let start = -i64::try_from((count - 1) / 2).map_err(|_| Error::Overflow("target start"))?;
                Progression::new(start, 1, count)
            }
        }
    }

    fn signed_copies(&self) -> Result<Vec<Vec<i64>>> {
        self.parts
            .iter()
            .map(|p| {
                let pos = p.signed()?;
                let mut v: Vec<i64> = pos.iter().rev().map(|&x| -x).collect();
                if self.flavour == Flavour::Inclusive {
                    v.push(0);
                }
                v.extend(pos);
                Ok(v)
            })
            .collect()
    }
}

/// Wire form: `{"flavour": "inclusive" | "non-inclusive", "parts": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SdsDocument {
    pub flavour: Flavour,
    pub parts: Vec<Vec<u64>>,
}

impl From<&SdsSystem> for SdsDocument {
    fn from(s: &SdsSystem) -> Self {
        SdsDocument {
            flavour: s.flavour,
            parts: s.parts.iter().map(|p| p.as_slice().to_vec()).collect(),
        }
    }
}

impl TryFrom<SdsDocument> for SdsSystem {
    type Error = Error;

    fn try_from(doc: SdsDocument) -> Result<Self> {
        SdsSystem::from_vecs(doc.flavour, doc.parts)
    }
}

/// Minkowski sum of the signed copies `A_j ∪ -A_j` (plus `{0}` when
/// inclusive) against the flavour's signed target, each value once.
pub fn verify_sds(s: &SdsSystem, limits: &Limits) -> Result<VerificationReport> {
    let copies = s.signed_copies()?;
    limits.check(cardinality_product(copies.iter().map(Vec::len)))?;
    let target = s.target()?;
    let refs: Vec<&[i64]> = copies.iter().map(Vec::as_slice).collect();
    sums_cover_once(&refs, &target, limits)
}

/// Two-part check through the unsigned values: `|a ± b|` must be the odd
/// numbers `1, 3, ..., 4νμ - 1` once each; inclusive systems add the elements
/// themselves and must give `1, ..., 2νμ + ν + μ`.
pub fn verify_sds_two_part(s: &SdsSystem) -> Result<VerificationReport> {
    if s.order() != 2 {
        return Err(Error::invalid(format!(
            "two-part check needs exactly 2 parts, got {}",
            s.order()
        )));
    }
    let a = s.parts[0].signed()?;
    let b = s.parts[1].signed()?;
    let (nu, mu) = (a.len() as u64, b.len() as u64);
    let mut values = Vec::with_capacity((2 * nu * mu + nu + mu) as usize);
    for &x in &a {
        for &y in &b {
            values.push(x.checked_add(y).ok_or(Error::Overflow("a + b"))?);
            values.push((x - y).abs());
        }
    }
    let target = match s.flavour {
        Flavour::NonInclusive => Progression::new(1, 2, 2 * nu * mu)?,
        Flavour::Inclusive => {
            values.extend(&a);
            values.extend(&b);
            Progression::new(1, 1, 2 * nu * mu + nu + mu)?
        }
    };
    values.sort_unstable();
    Ok(is_progression(&values, &target))
}

fn require_flavour(s: &SdsSystem, flavour: Flavour) -> Result<()> {
    if s.flavour != flavour {
        return Err(Error::invalid(format!(
            "expected a {flavour} system, got {}",
            s.flavour
        )));
    }
    Ok(())
}

/// `½ max A + ½ (A ∪ -A)` for a single part.
pub fn noninclusive_part_to_sum_part(part: &ComponentSet) -> Result<ComponentSet> {
    let max = part.max().ok_or_else(|| Error::invalid("empty part"))?;
    let mut low = Vec::with_capacity(part.len());
    let mut high = Vec::with_capacity(part.len());
    for a in part.iter() {
        if (max - a) % 2 != 0 {
            return Err(Error::invalid(format!(
                "{a} and max {max} differ in parity; (max ± a)/2 is not an integer"
            )));
        }
        low.push((max - a) / 2);
        high.push(max.checked_add(a).ok_or(Error::Overflow("max + a"))? / 2);
    }
    low.reverse();
    low.extend(high);
    ComponentSet::new(low)
}

/// `max A + (A ∪ {0} ∪ -A)` for a single part.
pub fn inclusive_part_to_sum_part(part: &ComponentSet) -> Result<ComponentSet> {
    let max = part.max().ok_or_else(|| Error::invalid("empty part"))?;
    let mut v: Vec<u64> = part.iter().rev().map(|a| max - a).collect();
    v.push(max);
    for a in part.iter() {
        v.push(max.checked_add(a).ok_or(Error::Overflow("max + a"))?);
    }
    ComponentSet::new(v)
}

/// `{α_{ν+k} - α_{ν+1-k} : 1 <= k <= ν}` for a part of size `2ν`.
pub fn sum_part_to_noninclusive_part(part: &ComponentSet) -> Result<ComponentSet> {
    let alpha = part.as_slice();
    if alpha.is_empty() || !alpha.len().is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "part of size {} has no non-inclusive counterpart",
            alpha.len()
        )));
    }
    let nu = alpha.len() / 2;
    ComponentSet::new((1..=nu).map(|k| alpha[nu - 1 + k] - alpha[nu - k]).collect())
}

/// `{½(α_{ν+1+k} - α_{ν+1-k}) : 1 <= k <= ν}` for a part of size `2ν + 1`.
pub fn sum_part_to_inclusive_part(part: &ComponentSet) -> Result<ComponentSet> {
    let alpha = part.as_slice();
    if alpha.len() % 2 != 1 {
        return Err(Error::invalid(format!(
            "part of size {} has no inclusive counterpart",
            alpha.len()
        )));
    }
    let nu = alpha.len() / 2;
    let mut out = Vec::with_capacity(nu);
    for k in 1..=nu {
        let diff = alpha[nu + k] - alpha[nu - k];
        if !diff.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "half-difference ({} - {})/2 is not an integer",
                alpha[nu + k],
                alpha[nu - k]
            )));
        }
        out.push(diff / 2);
    }
    ComponentSet::new(out)
}

pub fn sds_to_sumsys_noninclusive(s: &SdsSystem, limits: &Limits) -> Result<SumSystem> {
    require_flavour(s, Flavour::NonInclusive)?;
    verify_sds(s, limits)?.into_result()?;
    SumSystem::new(
        s.parts
            .iter()
            .map(noninclusive_part_to_sum_part)
            .collect::<Result<_>>()?,
    )
}

pub fn sds_to_sumsys_inclusive(s: &SdsSystem, limits: &Limits) -> Result<SumSystem> {
    require_flavour(s, Flavour::Inclusive)?;
    verify_sds(s, limits)?.into_result()?;
    SumSystem::new(
        s.parts
            .iter()
            .map(inclusive_part_to_sum_part)
            .collect::<Result<_>>()?,
    )
}

/// Applies whichever map the system's flavour calls for.
pub fn sds_to_sumsys(s: &SdsSystem, limits: &Limits) -> Result<SumSystem> {
    match s.flavour {
        Flavour::NonInclusive => sds_to_sumsys_noninclusive(s, limits),
        Flavour::Inclusive => sds_to_sumsys_inclusive(s, limits),
    }
}

/// The flavour a sum system corresponds to: all-even cardinalities give
/// non-inclusive, all-odd give inclusive, anything else is rejected naming
/// the first part whose parity differs from part 1.
pub fn flavour_for(ss: &SumSystem) -> Result<Flavour> {
    let first_even = ss.part(0).len().is_multiple_of(2);
    if let Some(j) = ss.parts().iter().position(|p| (p.len() % 2 == 0) != first_even) {
        return Err(Error::MixedParity {
            part: j + 1,
            cardinality: ss.part(j).len(),
        });
    }
    Ok(if first_even {
        Flavour::NonInclusive
    } else {
        Flavour::Inclusive
    })
}

fn require_parity(ss: &SumSystem, flavour: Flavour) -> Result<()> {
    let want_even = flavour == Flavour::NonInclusive;
    let Some(j) = ss.parts().iter().position(|p| (p.len() % 2 == 0) != want_even) else {
        return Ok(());
    };
    if flavour_for(ss).is_err() {
        return Err(Error::MixedParity {
            part: j + 1,
            cardinality: ss.part(j).len(),
        });
    }
    Err(Error::invalid(format!(
        "every part has {} cardinality; the {flavour} map needs {}",
        if want_even { "odd" } else { "even" },
        if want_even { "even" } else { "odd" }
    )))
}

pub fn sumsys_to_sds_noninclusive(ss: &SumSystem, limits: &Limits) -> Result<SdsSystem> {
    require_parity(ss, Flavour::NonInclusive)?;
    verify_sum_system(ss, limits)?.into_result()?;
    SdsSystem::new(
        Flavour::NonInclusive,
        ss.parts()
            .iter()
            .map(sum_part_to_noninclusive_part)
            .collect::<Result<_>>()?,
    )
}

pub fn sumsys_to_sds_inclusive(ss: &SumSystem, limits: &Limits) -> Result<SdsSystem> {
    require_parity(ss, Flavour::Inclusive)?;
    verify_sum_system(ss, limits)?.into_result()?;
    SdsSystem::new(
        Flavour::Inclusive,
        ss.parts()
            .iter()
            .map(sum_part_to_inclusive_part)
            .collect::<Result<_>>()?,
    )
}

/// Applies the converse map selected by part-cardinality parity.
pub fn sumsys_to_sds(ss: &SumSystem, limits: &Limits) -> Result<SdsSystem> {
    match flavour_for(ss)? {
        Flavour::NonInclusive => sumsys_to_sds_noninclusive(ss, limits),
        Flavour::Inclusive => sumsys_to_sds_inclusive(ss, limits),
    }
}
