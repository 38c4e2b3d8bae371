//! Order-m integer tensors ("cuboids"): direction-j Kronecker products,
//! building operators, construction from a joint ordered factorisation,
//! verification of the principal reversible properties, the bijection with
//! sum systems, and decomposition back to the factorisation.
//!
//! Storage is dense with direction 1 varying fastest: the entry at the 1-based
//! multiindex `k` lives at `Σ_j (k_j - 1) · ∏_{i<j} n_i`.

use std::fmt::Write as _;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jof::{canonicalise, divisors_from_two, JointOrderedFactorisation, Step};
use crate::report::{VerificationReport, Witness};
use crate::sets::{cardinality_product, for_each_sum, Limits};
use crate::sumsystem::{verify_sum_system, SumSystem};

/// A 1-based coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Self {
        MultiIndex(components)
    }

    pub fn root(m: usize) -> Self {
        MultiIndex(vec![1; m])
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl Deref for MultiIndex {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cuboid {
    dims: Vec<usize>,
    entries: Vec<u64>,
}

impl Cuboid {
    /// Accepts unit dimensions; the sum-system bijection and the document
    /// form are where those get rejected.
    pub fn new(dims: Vec<usize>, entries: Vec<u64>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::invalid("a cuboid needs at least one direction"));
        }
        if dims.contains(&0) {
            return Err(Error::invalid("cuboid dimensions must be positive"));
        }
        let size = cardinality_product(dims.iter().copied());
        if size != entries.len() as u128 {
            return Err(Error::invalid(format!(
                "dims {:?} need {} entries, got {}",
                dims,
                size,
                entries.len()
            )));
        }
        Ok(Cuboid { dims, entries })
    }

    /// The order-m cuboid `(0)` with all dimensions 1.
    pub fn trivial(m: usize) -> Self {
        Cuboid {
            dims: vec![1; m],
            entries: vec![0],
        }
    }

    fn filled(dims: Vec<usize>, value: u64) -> Self {
        let size = dims.iter().product();
        Cuboid {
            dims,
            entries: vec![value; size],
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    /// Flat entries, direction 1 fastest.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn strides(&self) -> Vec<usize> {
        strides(&self.dims)
    }

    pub fn linear_index(&self, k: &[usize]) -> Option<usize> {
        if k.len() != self.dims.len() {
            return None;
        }
        let mut idx = 0;
        let mut stride = 1;
        for (&kj, &nj) in k.iter().zip(&self.dims) {
            if kj == 0 || kj > nj {
                return None;
            }
            idx += (kj - 1) * stride;
            stride *= nj;
        }
        Some(idx)
    }

    pub fn multi_index(&self, mut linear: usize) -> MultiIndex {
        let mut k = Vec::with_capacity(self.dims.len());
        for &n in &self.dims {
            k.push(linear % n + 1);
            linear /= n;
        }
        MultiIndex(k)
    }

    pub fn get(&self, k: &[usize]) -> Option<u64> {
        self.linear_index(k).map(|i| self.entries[i])
    }

    pub fn root(&self) -> u64 {
        self.entries[0]
    }

    /// Entries on the direction-`j` axis (1-based `j`), from the root outwards.
    pub fn axis(&self, j: usize) -> Vec<u64> {
        let stride = self.strides()[j - 1];
        (0..self.dims[j - 1]).map(|k| self.entries[k * stride]).collect()
    }

    /// The corner subcuboid `M_[sub]` containing the root.
    pub fn subcuboid(&self, sub: &[usize]) -> Result<Cuboid> {
        if sub.len() != self.dims.len() || sub.iter().zip(&self.dims).any(|(&s, &n)| s == 0 || s > n) {
            return Err(Error::invalid(format!(
                "{:?} is not a corner of dims {:?}",
                sub, self.dims
            )));
        }
        let strides = self.strides();
        let mut entries = Vec::with_capacity(sub.iter().product());
        for_each_corner_index(sub, &strides, |i| entries.push(self.entries[i]));
        Cuboid::new(sub.to_vec(), entries)
    }

    /// Order-2 slices (directions 1 and 2) as CSV, slices separated by a
    /// blank line in lexicographic order of the remaining indices
    /// `(k_3, ..., k_m)`. Each line holds one direction-1 row.
    pub fn to_csv(&self) -> String {
        let n1 = self.dims[0];
        let n2 = self.dims.get(1).copied().unwrap_or(1);
        let rest = &self.dims[self.dims.len().min(2)..];
        let slice_len = n1 * n2;
        let slice_count: usize = rest.iter().product();
        // lexicographic order on (k_3, ..., k_m) puts k_m fastest, which is
        // the reverse of storage order
        let mut outer = vec![1usize; rest.len()];
        let mut out = String::new();
        for s in 0..slice_count {
            if s > 0 {
                out.push('\n');
            }
            let mut base = 0;
            let mut stride = slice_len;
            for (&k, &n) in outer.iter().zip(rest) {
                base += (k - 1) * stride;
                stride *= n;
            }
            for row in 0..n2 {
                let line = &self.entries[base + row * n1..base + (row + 1) * n1];
                let cells: Vec<String> = line.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
            for i in (0..rest.len()).rev() {
                outer[i] += 1;
                if outer[i] <= rest[i] {
                    break;
                }
                outer[i] = 1;
            }
        }
        out
    }
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = Vec::with_capacity(dims.len());
    let mut acc = 1;
    for &n in dims {
        s.push(acc);
        acc *= n;
    }
    s
}

/// Visits the linear indices (under `strides`) of every multiindex `<= sub`,
/// direction 1 fastest.
fn for_each_corner_index<F: FnMut(usize)>(sub: &[usize], strides: &[usize], mut visit: F) {
    let m = sub.len();
    let mut k = vec![0usize; m];
    let mut idx = 0usize;
    loop {
        visit(idx);
        let mut j = 0;
        loop {
            if j == m {
                return;
            }
            k[j] += 1;
            idx += strides[j];
            if k[j] < sub[j] {
                break;
            }
            idx -= k[j] * strides[j];
            k[j] = 0;
            j += 1;
        }
    }
}

/// Wire form: `{"dims": [...], "entries": [flat, direction 1 fastest]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuboidDocument {
    pub dims: Vec<usize>,
    pub entries: Vec<u64>,
}

impl From<&Cuboid> for CuboidDocument {
    fn from(c: &Cuboid) -> Self {
        CuboidDocument {
            dims: c.dims.clone(),
            entries: c.entries.clone(),
        }
    }
}

impl TryFrom<CuboidDocument> for Cuboid {
    type Error = Error;

    fn try_from(doc: CuboidDocument) -> Result<Self> {
        if let Some(j) = doc.dims.iter().position(|&n| n < 2) {
            return Err(Error::invalid(format!(
                "dimension {} is {}; documents need every dimension >= 2",
                j + 1,
                doc.dims[j]
            )));
        }
        Cuboid::new(doc.dims, doc.entries)
    }
}

fn check_direction(j: usize, m: usize) -> Result<()> {
    if j == 0 || j > m {
        return Err(Error::invalid(format!("direction {j} not in 1..={m}")));
    }
    Ok(())
}

/// `(v ⊗_j M)_{n̂ + l·n_j·e_j} = v_{l+1} · M_{n̂}`: `|v|` scaled copies of `M`
/// stacked along direction `j`.
pub fn kron_dir(v: &[u64], j: usize, m: &Cuboid) -> Result<Cuboid> {
    check_direction(j, m.order())?;
    if v.is_empty() {
        return Err(Error::invalid("Kronecker vector must be non-empty"));
    }
    let nj = m.dims[j - 1];
    let inner: usize = m.dims[..j - 1].iter().product();
    let outer: usize = m.dims[j..].iter().product();
    let k = v.len();
    let mut entries = Vec::with_capacity(m.len() * k);
    for o in 0..outer {
        for &scale in v {
            let block = &m.entries[o * nj * inner..(o + 1) * nj * inner];
            for &x in block {
                entries.push(scale.checked_mul(x).ok_or(Error::Overflow("Kronecker product"))?);
            }
        }
    }
    let mut dims = m.dims.clone();
    dims[j - 1] = nj * k;
    Cuboid::new(dims, entries)
}

fn add_entrywise(a: &Cuboid, b: &Cuboid) -> Result<Cuboid> {
    debug_assert_eq!(a.dims, b.dims);
    let entries = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(&x, &y)| x.checked_add(y).ok_or(Error::Overflow("cuboid sum")))
        .collect::<Result<_>>()?;
    Ok(Cuboid {
        dims: a.dims.clone(),
        entries,
    })
}

/// `B_{j,k}(M) = (∏ n_r) · <k>⃗ ⊗_j 1_[n] + 1_k ⊗_j M`: `k` copies of `M`
/// along direction `j`, copy `l` offset by `l · ∏ n_r`.
pub fn building_op(j: usize, k: u64, m: &Cuboid) -> Result<Cuboid> {
    check_direction(j, m.order())?;
    if k == 0 {
        return Err(Error::invalid("building operator needs k >= 1"));
    }
    let size = m.len() as u64;
    let offsets = (0..k)
        .map(|l| l.checked_mul(size).ok_or(Error::Overflow("block offset")))
        .collect::<Result<Vec<_>>>()?;
    let ones = Cuboid::filled(m.dims.clone(), 1);
    let offset_part = kron_dir(&offsets, j, &ones)?;
    let copies = kron_dir(&vec![1; k as usize], j, m)?;
    add_entrywise(&offset_part, &copies)
}

/// `B_{j_L,f_L} ∘ ... ∘ B_{j_1,f_1}((0))`.
pub fn build_cuboid(jof: &JointOrderedFactorisation, limits: &Limits) -> Result<Cuboid> {
    if let Some(j) = jof.dims().iter().position(|&n| n < 2) {
        return Err(Error::invalid(format!(
            "dimension {} is {}; cuboids are built for dimensions >= 2",
            j + 1,
            jof.dims()[j]
        )));
    }
    limits.check(jof.dims().iter().fold(1u128, |a, &n| a.saturating_mul(u128::from(n))))?;
    let mut c = Cuboid::trivial(jof.order());
    for &Step { direction, factor } in jof.steps() {
        c = building_op(direction, factor, &c)?;
    }
    Ok(c)
}

/// `A_j = {M_{1 + k·e_j}}`. Requires `M` to be principal reversible.
pub fn axis_sets(m: &Cuboid) -> Result<SumSystem> {
    verify_reversible(m).into_result()?;
    SumSystem::from_vecs((1..=m.order()).map(|j| m.axis(j)).collect())
}

/// `M_k = Σ_j a_{j, k_j}`, the inverse of [`axis_sets`].
pub fn cuboid_from_sumsystem(ss: &SumSystem, limits: &Limits) -> Result<Cuboid> {
    verify_sum_system(ss, limits)?.into_result()?;
    let signed: Vec<Vec<i64>> = ss
        .parts()
        .iter()
        .map(|p| p.iter().map(|x| x as i64).collect())
        .collect();
    let refs: Vec<&[i64]> = signed.iter().map(Vec::as_slice).collect();
    let mut entries = Vec::with_capacity(ss.target_size() as usize);
    for_each_sum(&refs, |s| {
        entries.push(s as u64);
        true
    })?;
    Cuboid::new(ss.parts().iter().map(|p| p.len()).collect(), entries)
}

/// Checks `M_k = Σ_j M_{1 + (k_j - 1)e_j} - (m - 1)·M_root` everywhere.
#[allow(non_snake_case)]
pub fn verify_property_V(m: &Cuboid) -> VerificationReport {
    let order = m.order();
    let axes: Vec<Vec<u64>> = (1..=order).map(|j| m.axis(j)).collect();
    let root = i128::from(m.root());
    let mut k = vec![0usize; order];
    for (linear, &entry) in m.entries.iter().enumerate() {
        let predicted: i128 =
            k.iter().zip(&axes).map(|(&kj, a)| i128::from(a[kj])).sum::<i128>() - (order as i128 - 1) * root;
        if predicted != i128::from(entry) {
            return VerificationReport::fail("vertex_cross_sum")
                .with_witness(Witness::Index(m.multi_index(linear).into_vec()))
                .with_detail(format!("entry {entry}, axis sums give {predicted}"));
        }
        for (kj, &nj) in k.iter_mut().zip(&m.dims) {
            *kj += 1;
            if *kj < nj {
                break;
            }
            *kj = 0;
        }
    }
    VerificationReport::pass()
}

fn check_entry_set(m: &Cuboid) -> VerificationReport {
    let size = m.len() as u64;
    let mut seen = vec![false; m.len()];
    for (linear, &x) in m.entries.iter().enumerate() {
        let fail = |detail: &str| {
            VerificationReport::fail("entry_set")
                .with_witness(Witness::Index(m.multi_index(linear).into_vec()))
                .with_detail(format!("{detail}: {x}"))
        };
        if x >= size {
            return fail("entry outside target");
        }
        if std::mem::replace(&mut seen[x as usize], true) {
            return fail("repeated entry");
        }
    }
    VerificationReport::pass()
}

fn check_monotone(m: &Cuboid) -> VerificationReport {
    let strides = m.strides();
    for linear in 0..m.len() {
        let k = m.multi_index(linear);
        for j in 0..m.order() {
            if k[j] < m.dims[j] && m.entries[linear] >= m.entries[linear + strides[j]] {
                return VerificationReport::fail("monotone_rows")
                    .with_witness(Witness::Index(k.into_vec()))
                    .with_detail(format!("direction {} is not strictly increasing", j + 1));
            }
        }
    }
    VerificationReport::pass()
}

/// Line reversal symmetry: along every line, `M(l) + M(n_j + 1 - l)` equals
/// the sum of the two end entries.
fn check_line_reversal(m: &Cuboid) -> VerificationReport {
    let strides = m.strides();
    for j in 0..m.order() {
        let nj = m.dims[j];
        let last = (nj - 1) * strides[j];
        for linear in 0..m.len() {
            if !(linear / strides[j]).is_multiple_of(nj) {
                continue;
            }
            let ends = m.entries[linear] + m.entries[linear + last];
            for l in 0..nj {
                let a = m.entries[linear + l * strides[j]];
                let b = m.entries[linear + (nj - 1 - l) * strides[j]];
                if a + b != ends {
                    return VerificationReport::fail("line_reversal")
                        .with_witness(Witness::Index(m.multi_index(linear + l * strides[j]).into_vec()))
                        .with_detail(format!("direction {}: {a} + {b} != {ends}", j + 1));
                }
            }
        }
    }
    VerificationReport::pass()
}

/// Principal reversible: entries exactly `<∏ n_j>`, strictly increasing
/// along every direction, property (V); line reversal symmetry is checked too.
/// The first failing clause in that order is reported.
pub fn verify_reversible(m: &Cuboid) -> VerificationReport {
    if let Some(j) = m.dims.iter().position(|&n| n < 2) {
        return VerificationReport::fail("unit_dimension")
            .with_witness(Witness::Position(j + 1))
            .with_detail("principal reversible cuboids need every dimension >= 2");
    }
    let checks = [
        check_entry_set(m),
        check_monotone(m),
        verify_property_V(m),
        check_line_reversal(m),
    ];
    debug_assert!(
        checks[3].passed || checks[..3].iter().any(|r| !r.passed),
        "line reversal failed on its own: {:?}",
        checks[3]
    );
    checks
        .into_iter()
        .find(|r| !r.passed)
        .unwrap_or_else(VerificationReport::pass)
}

/// Recovers the canonical JOF of a principal reversible cuboid by growing
/// principal reversible corner subcuboids from `(0)`.
///
/// With the current corner `M_[ñ]` covering `<F>`, the smallest missing
/// integer is the least of the next axis entries `a_{j, ñ_j}`; it must equal
/// `F`. Direction `j` is then extended to the least multiple `t·ñ_j` whose
/// corner has entry set `<F·t>` and whose next axis entry is not `F·t`, and
/// `(j, t)` is recorded.
pub fn decompose_cuboid(m: &Cuboid, limits: &Limits) -> Result<JointOrderedFactorisation> {
    verify_reversible(m).into_result()?;
    limits.check(m.len() as u128)?;
    let order = m.order();
    let axes: Vec<Vec<u64>> = (1..=order).map(|j| m.axis(j)).collect();
    let strides = m.strides();
    let mut corner = vec![1usize; order];
    let mut covered = 1u64;
    let mut steps = Vec::new();
    while corner != m.dims {
        let (j, mu) = (0..order)
            .filter(|&j| corner[j] < m.dims[j])
            .map(|j| (j, axes[j][corner[j]]))
            .min_by_key(|&(_, a)| a)
            .expect("some direction is incomplete");
        if mu != covered {
            return Err(Error::Internal(format!(
                "smallest missing entry is {mu}, expected {covered}"
            )));
        }
        let quotient = m.dims[j] / corner[j];
        let mut factor = None;
        for t in divisors_from_two(quotient as u64) {
            let mut grown = corner.clone();
            grown[j] *= t as usize;
            let size = covered * t;
            if axes[j].get(grown[j]).is_some_and(|&x| x == size) {
                continue;
            }
            let mut seen = vec![false; size as usize];
            let mut ok = true;
            for_each_corner_index(&grown, &strides, |i| {
                let x = m.entries[i];
                if ok && x < size && !seen[x as usize] {
                    seen[x as usize] = true;
                } else {
                    ok = false;
                }
            });
            if ok {
                factor = Some(t);
                break;
            }
        }
        let t = factor.ok_or_else(|| {
            Error::Internal(format!("no extension of direction {} closes a corner", j + 1))
        })?;
        corner[j] *= t as usize;
        covered *= t;
        steps.push(Step::new(j + 1, t));
    }
    let dims: Vec<u64> = m.dims.iter().map(|&n| n as u64).collect();
    canonicalise(&steps, &dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cub(dims: &[usize], entries: &[u64]) -> Cuboid {
        Cuboid::new(dims.to_vec(), entries.to_vec()).unwrap()
    }

    fn jof(s: &str) -> JointOrderedFactorisation {
        JointOrderedFactorisation::parse(s).unwrap()
    }

    #[test]
    fn indexing_is_direction_one_fastest() {
        let c = cub(&[2, 3], &[0, 1, 2, 3, 4, 5]);
        assert_eq!(c.get(&[2, 1]), Some(1));
        assert_eq!(c.get(&[1, 2]), Some(2));
        assert_eq!(c.get(&[2, 3]), Some(5));
        assert_eq!(c.get(&[3, 1]), None);
        assert_eq!(c.multi_index(3).into_vec(), vec![2, 2]);
        assert_eq!(c.axis(2), vec![0, 2, 4]);
    }

    #[test]
    fn construction_checks_sizes() {
        assert!(Cuboid::new(vec![2, 2], vec![0, 1, 2]).is_err());
        assert!(Cuboid::new(vec![], vec![0]).is_err());
        assert!(Cuboid::new(vec![0], vec![]).is_err());
        assert!(Cuboid::new(vec![2, 1], vec![0, 1]).is_ok());
    }

    #[test]
    fn kron_examples() {
        let c = kron_dir(&[1, 1], 1, &cub(&[2], &[0, 1])).unwrap();
        assert_eq!(c.entries(), &[0, 1, 0, 1]);
        let c = kron_dir(&[0, 1], 1, &cub(&[2], &[1, 1])).unwrap();
        assert_eq!(c.entries(), &[0, 0, 1, 1]);
        let c = kron_dir(&[1, 2], 2, &cub(&[2, 2], &[1, 2, 3, 4])).unwrap();
        assert_eq!(c.dims(), &[2, 4]);
        assert_eq!(c.entries(), &[1, 2, 3, 4, 2, 4, 6, 8]);
        assert!(kron_dir(&[1], 3, &cub(&[2, 2], &[1, 2, 3, 4])).is_err());
        assert!(kron_dir(&[], 1, &cub(&[2], &[1, 2])).is_err());
    }

    #[test]
    fn kron_interleaves_inner_directions() {
        // j = 2 with an inner direction of length 2 and outer of length 2
        let m = cub(&[2, 1, 2], &[1, 2, 3, 4]);
        let c = kron_dir(&[1, 10], 2, &m).unwrap();
        assert_eq!(c.dims(), &[2, 2, 2]);
        assert_eq!(c.entries(), &[1, 2, 10, 20, 3, 4, 30, 40]);
    }

    #[test]
    fn building_operator_examples() {
        let c = building_op(1, 2, &Cuboid::trivial(1)).unwrap();
        assert_eq!(c.entries(), &[0, 1]);
        let c = building_op(2, 2, &cub(&[2, 1], &[0, 1])).unwrap();
        assert_eq!(c.dims(), &[2, 2]);
        assert_eq!(c.entries(), &[0, 1, 2, 3]);
        assert!(building_op(1, 0, &Cuboid::trivial(1)).is_err());
    }

    #[test]
    fn build_examples() {
        let l = Limits::default();
        let c = build_cuboid(&jof("1:4,2:4"), &l).unwrap();
        assert_eq!(c.entries(), (0..16).collect::<Vec<u64>>().as_slice());
        let c = build_cuboid(&jof("1:2,2:2,1:2"), &l).unwrap();
        assert_eq!(c.dims(), &[4, 2]);
        assert_eq!(c.axis(1), vec![0, 1, 4, 5]);
        let c = build_cuboid(&jof("2:2,1:2"), &l).unwrap();
        assert_eq!(c.entries(), &[0, 2, 1, 3]);
        assert!(build_cuboid(&jof("1:4,2:4"), &Limits::new(15)).is_err());
    }

    #[test]
    fn axis_sets_and_inverse() {
        let l = Limits::default();
        let c = build_cuboid(&jof("1:4,2:4"), &l).unwrap();
        let ss = axis_sets(&c).unwrap();
        assert_eq!(ss.part(0).as_slice(), &[0, 1, 2, 3]);
        assert_eq!(ss.part(1).as_slice(), &[0, 4, 8, 12]);
        assert_eq!(cuboid_from_sumsystem(&ss, &l).unwrap(), c);
        let ss = SumSystem::from_vecs(vec![vec![0, 1], vec![0, 2]]).unwrap();
        assert_eq!(cuboid_from_sumsystem(&ss, &l).unwrap().entries(), &[0, 1, 2, 3]);
        assert!(axis_sets(&cub(&[2, 2], &[0, 1, 3, 2])).is_err());
    }

    #[test]
    fn property_v_cases() {
        let r = verify_property_V(&cub(&[2, 2], &[0, 1, 2, 4]));
        assert_eq!(r.invariant(), Some("vertex_cross_sum"));
        assert_eq!(r.witness, Some(Witness::Index(vec![2, 2])));
        assert!(verify_property_V(&cub(&[2, 2], &[5, 6, 7, 8])).passed);
        assert!(verify_property_V(&build_cuboid(&jof("1:2,2:3,3:2"), &Limits::default()).unwrap()).passed);
    }

    #[test]
    fn reversible_cases() {
        assert!(verify_reversible(&cub(&[2, 2], &[0, 2, 1, 3])).passed);
        let r = verify_reversible(&cub(&[2, 2], &[0, 1, 3, 2]));
        assert_eq!(r.invariant(), Some("monotone_rows"));
        assert_eq!(r.witness, Some(Witness::Index(vec![1, 2])));
        let r = verify_reversible(&cub(&[2, 2], &[0, 1, 2, 4]));
        assert!(!r.passed);
        let r = verify_reversible(&cub(&[2, 2], &[1, 2, 3, 4]));
        assert_eq!(r.invariant(), Some("entry_set"));
        let r = verify_reversible(&cub(&[2, 1], &[0, 1]));
        assert_eq!(r.invariant(), Some("unit_dimension"));
    }

    #[test]
    fn decompose_examples() {
        let l = Limits::default();
        let c = cub(&[4, 4], &(0..16).collect::<Vec<_>>());
        assert_eq!(decompose_cuboid(&c, &l).unwrap().to_string(), "1:4,2:4");
        let c = cub(&[2, 2], &[0, 1, 2, 3]);
        assert_eq!(decompose_cuboid(&c, &l).unwrap().to_string(), "1:2,2:2");
        assert!(decompose_cuboid(&cub(&[2, 2], &[0, 1, 3, 2]), &l).is_err());
    }

    #[test]
    fn subcuboid_corners() {
        let c = build_cuboid(&jof("1:2,2:2,1:2"), &Limits::default()).unwrap();
        let s = c.subcuboid(&[2, 2]).unwrap();
        assert_eq!(s.entries(), &[0, 1, 2, 3]);
        assert!(c.subcuboid(&[5, 1]).is_err());
    }

    #[test]
    fn csv_layout() {
        let c = cub(&[2, 2], &[0, 1, 2, 3]);
        assert_eq!(c.to_csv(), "0,1\n2,3\n");
        let c = cub(&[3], &[0, 1, 2]);
        assert_eq!(c.to_csv(), "0,1,2\n");
        let c = cub(&[1, 1, 2, 2], &[0, 1, 2, 3]);
        // slices (k3,k4) = (1,1), (1,2), (2,1), (2,2)
        assert_eq!(c.to_csv(), "0\n\n2\n\n1\n\n3\n");
    }

    #[test]
    fn document_rejects_unit_dims() {
        let doc = CuboidDocument {
            dims: vec![2, 1],
            entries: vec![0, 1],
        };
        assert!(Cuboid::try_from(doc).is_err());
    }
}
