//! Joint ordered factorisations of a dimension vector: validation,
//! enumeration in a fixed lexicographic order, counting and canonical form.
//!
//! Directions are 1-based throughout the public surface. The textual form is
//! a comma-separated list of `direction:factor` pairs, e.g. `1:5,2:2,1:3`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::report::{VerificationReport, Witness};

/// One building step: stack `factor` copies along `direction` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub direction: usize,
    pub factor: u64,
}

impl Step {
    pub const fn new(direction: usize, factor: u64) -> Self {
        Step { direction, factor }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.direction, self.factor)
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (d, f) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("expected `direction:factor`, got `{s}`")))?;
        let direction = d
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad direction `{d}`")))?;
        let factor = f
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad factor `{f}`")))?;
        Ok(Step { direction, factor })
    }
}

/// Parses the comma-separated `j:f` syntax. The empty string is the empty
/// sequence.
pub fn parse_steps(s: &str) -> Result<Vec<Step>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

pub fn format_steps(steps: &[Step]) -> String {
    steps
        .iter()
        .map(Step::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// A validated joint ordered factorisation together with the dims it factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JointOrderedFactorisation {
    steps: Vec<Step>,
    dims: Vec<u64>,
}

impl JointOrderedFactorisation {
    pub fn new(steps: Vec<Step>, dims: Vec<u64>) -> Result<Self> {
        validate_jof(&steps, &dims).into_result()?;
        Ok(JointOrderedFactorisation { steps, dims })
    }

    /// Builds from steps alone; `m` is the largest direction mentioned and
    /// each dimension is the product of its factors.
    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        let dims = infer_dims(&steps)?;
        JointOrderedFactorisation::new(steps, dims)
    }

    pub fn parse(s: &str) -> Result<Self> {
        JointOrderedFactorisation::from_steps(parse_steps(s)?)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn into_parts(self) -> (Vec<Step>, Vec<u64>) {
        (self.steps, self.dims)
    }
}

impl fmt::Display for JointOrderedFactorisation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_steps(&self.steps))
    }
}

impl FromStr for JointOrderedFactorisation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        JointOrderedFactorisation::parse(s)
    }
}

fn infer_dims(steps: &[Step]) -> Result<Vec<u64>> {
    let m = steps.iter().map(|s| s.direction).max().unwrap_or(0);
    if steps.iter().any(|s| s.direction == 0) {
        return Err(Error::invalid("directions are 1-based"));
    }
    let mut dims = vec![1u64; m];
    for s in steps {
        let d = &mut dims[s.direction - 1];
        *d = d
            .checked_mul(s.factor)
            .ok_or(Error::Overflow("dimension product"))?;
    }
    Ok(dims)
}

pub fn validate_jof(steps: &[Step], dims: &[u64]) -> VerificationReport {
    let m = dims.len();
    if m == 0 {
        return VerificationReport::fail("dimension_count").with_detail("dims must have m >= 1 entries");
    }
    let mut products = vec![1u128; m];
    for (l, s) in steps.iter().enumerate() {
        let pos = Witness::Position(l + 1);
        if s.direction == 0 || s.direction > m {
            return VerificationReport::fail("direction_range")
                .with_witness(pos)
                .with_detail(format!("direction {} not in 1..={m}", s.direction));
        }
        if s.factor < 2 {
            return VerificationReport::fail("factor_at_least_two")
                .with_witness(pos)
                .with_detail(format!("factor {}", s.factor));
        }
        if l > 0 && steps[l - 1].direction == s.direction {
            return VerificationReport::fail("adjacent_direction")
                .with_witness(pos)
                .with_detail(format!("steps {l} and {} share direction {}", l + 1, s.direction));
        }
        let p = &mut products[s.direction - 1];
        *p = p.saturating_mul(u128::from(s.factor));
    }
    for (j, (&p, &n)) in products.iter().zip(dims).enumerate() {
        if p != u128::from(n) {
            return VerificationReport::fail("direction_product")
                .with_witness(Witness::Position(j + 1))
                .with_detail(format!("direction {}: product {p} != {n}", j + 1));
        }
    }
    VerificationReport::pass()
}

fn check_enumerable(dims: &[u64]) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::invalid("dims must be non-empty"));
    }
    if let Some(j) = dims.iter().position(|&n| n < 2) {
        return Err(Error::invalid(format!(
            "dimension {} is {}; every dimension must be at least 2",
            j + 1,
            dims[j]
        )));
    }
    Ok(())
}

/// Divisors of `n` that are at least 2, ascending.
pub(crate) fn divisors_from_two(n: u64) -> Vec<u64> {
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            low.push(d);
            if d != n / d {
                high.push(n / d);
            }
        }
        d += 1;
    }
    low.into_iter()
        .chain(high.into_iter().rev())
        .filter(|&d| d >= 2)
        .collect()
}

/// Depth-first stream over all JOFs of `dims`, in lexicographic order of the
/// step sequence with direction compared before factor.
pub struct JofIter {
    dims: Vec<u64>,
    remaining: Vec<u64>,
    steps: Vec<Step>,
    frames: Vec<Frame>,
}

struct Frame {
    candidates: Vec<Step>,
    next: usize,
}

impl JofIter {
    fn candidates(&self) -> Vec<Step> {
        let last = self.steps.last().map(|s| s.direction);
        let mut out = Vec::new();
        for (j, &r) in self.remaining.iter().enumerate() {
            let direction = j + 1;
            if r > 1 && Some(direction) != last {
                out.extend(divisors_from_two(r).into_iter().map(|f| Step::new(direction, f)));
            }
        }
        out
    }
}

impl Iterator for JofIter {
    type Item = JointOrderedFactorisation;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let frame = self.frames.last_mut()?;
            if frame.next == frame.candidates.len() {
                self.frames.pop();
                if let Some(s) = self.steps.pop() {
                    self.remaining[s.direction - 1] *= s.factor;
                }
                continue;
            }
            let step = frame.candidates[frame.next];
            frame.next += 1;
            self.remaining[step.direction - 1] /= step.factor;
            self.steps.push(step);
            let candidates = self.candidates();
            self.frames.push(Frame { candidates, next: 0 });
            if self.remaining.iter().all(|&r| r == 1) {
                return Some(JointOrderedFactorisation {
                    steps: self.steps.clone(),
                    dims: self.dims.clone(),
                });
            }
        }
    }
}

pub fn enumerate_jofs(dims: &[u64]) -> Result<JofIter> {
    check_enumerable(dims)?;
    let mut it = JofIter {
        dims: dims.to_vec(),
        remaining: dims.to_vec(),
        steps: Vec::new(),
        frames: Vec::new(),
    };
    let candidates = it.candidates();
    it.frames.push(Frame { candidates, next: 0 });
    Ok(it)
}

/// Number of JOFs of `dims`, by memoised recursion over (remaining
/// quotients, previous direction).
pub fn count_jofs(dims: &[u64]) -> Result<u128> {
    check_enumerable(dims)?;
    let mut memo = HashMap::new();
    count_from(&mut dims.to_vec(), 0, &mut memo)
}

fn count_from(
    remaining: &mut Vec<u64>,
    last: usize,
    memo: &mut HashMap<(Vec<u64>, usize), u128>,
) -> Result<u128> {
    if remaining.iter().all(|&r| r == 1) {
        return Ok(1);
    }
    let key = (remaining.clone(), last);
    if let Some(&c) = memo.get(&key) {
        return Ok(c);
    }
    let mut total = 0u128;
    for j in 0..remaining.len() {
        let r = remaining[j];
        if j + 1 == last || r == 1 {
            continue;
        }
        for f in divisors_from_two(r) {
            remaining[j] = r / f;
            let c = count_from(remaining, j + 1, memo)?;
            remaining[j] = r;
            total = total.checked_add(c).ok_or(Error::Overflow("JOF count"))?;
        }
    }
    memo.insert(key, total);
    Ok(total)
}

/// Fuses adjacent same-direction steps (their factors multiply) until no two
/// neighbours share a direction. Factor-1 steps are identities and dropped.
pub fn canonicalise(steps: &[Step], dims: &[u64]) -> Result<JointOrderedFactorisation> {
    let mut out: Vec<Step> = Vec::with_capacity(steps.len());
    for s in steps {
        if s.direction == 0 || s.direction > dims.len() {
            return Err(Error::invalid(format!(
                "direction {} out of range 1..={}",
                s.direction,
                dims.len()
            )));
        }
        match s.factor {
            0 => return Err(Error::invalid("factor 0 in step sequence")),
            1 => continue,
            _ => {}
        }
        match out.last_mut() {
            Some(prev) if prev.direction == s.direction => {
                prev.factor = prev
                    .factor
                    .checked_mul(s.factor)
                    .ok_or(Error::Overflow("fused factor"))?;
            }
            _ => out.push(*s),
        }
    }
    JointOrderedFactorisation::new(out, dims.to_vec())
}
