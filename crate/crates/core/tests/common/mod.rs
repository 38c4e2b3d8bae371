//! Fixtures and brute-force oracles shared by the integration tests and the
//! acceptance target. Oracles here avoid the library's own algorithms.
#![allow(dead_code)]

use addsys::sds::{flavour_for, sds_to_sumsys};
use addsys::{
    axis_sets, build_cuboid, build_sum_system, check_palindromic, check_parity_dichotomy, decompose_cuboid,
    decompose_sum_system, sumsys_to_sds, verify_reversible, verify_sds, verify_sum_system, Error,
    JointOrderedFactorisation, Limits, SumSystem,
};

pub const JOF_15_8_6_A: &str = "1:5,2:2,1:3,3:3,2:2,3:2,2:2";
pub const JOF_15_8_6_B: &str = "1:5,3:3,2:2,3:2,2:2,1:3,2:2";
pub const JOF_14_8_6: &str = "1:2,3:3,2:2,3:2,2:2,1:7,2:2";
pub const JOF_15_7_9: &str = "1:5,2:7,3:3,1:3,3:3";
pub const JOF_28_20_30_18_12: &str = "1:7,2:4,5:2,3:2,4:2,2:5,4:9,3:3,1:4,5:3,3:5,5:2";

pub fn parts_15_8_6_a() -> Vec<Vec<u64>> {
    vec![
        vec![0, 1, 2, 3, 4, 10, 11, 12, 13, 14, 20, 21, 22, 23, 24],
        vec![0, 5, 90, 95, 360, 365, 450, 455],
        vec![0, 30, 60, 180, 210, 240],
    ]
}

pub fn parts_15_8_6_b() -> Vec<Vec<u64>> {
    vec![
        vec![0, 1, 2, 3, 4, 120, 121, 122, 123, 124, 240, 241, 242, 243, 244],
        vec![0, 15, 60, 75, 360, 375, 420, 435],
        vec![0, 5, 10, 30, 35, 40],
    ]
}

pub fn sum_parts_14_8_6() -> Vec<Vec<u64>> {
    vec![
        vec![0, 1, 48, 49, 96, 97, 144, 145, 192, 193, 240, 241, 288, 289],
        vec![0, 6, 24, 30, 336, 342, 360, 366],
        vec![0, 2, 4, 12, 14, 16],
    ]
}

pub fn sds_parts_14_8_6() -> Vec<Vec<u64>> {
    vec![vec![1, 95, 97, 191, 193, 287, 289], vec![306, 318, 354, 366], vec![8, 12, 16]]
}

pub fn sum_parts_15_7_9() -> Vec<Vec<u64>> {
    vec![
        vec![0, 1, 2, 3, 4, 105, 106, 107, 108, 109, 210, 211, 212, 213, 214],
        vec![0, 5, 10, 15, 20, 25, 30],
        vec![0, 35, 70, 315, 350, 385, 630, 665, 700],
    ]
}

pub fn sds_parts_15_7_9() -> Vec<Vec<u64>> {
    vec![vec![1, 2, 103, 104, 105, 106, 107], vec![5, 10, 15], vec![35, 280, 315, 350]]
}

pub fn parts_28_20_30_18_12() -> Vec<Vec<u64>> {
    vec![
        vec![
            0, 1, 2, 3, 4, 5, 6, 30240, 30241, 30242, 30243, 30244, 30245, 30246, 60480, 60481, 60482, 60483, 60484,
            60485, 60486, 90720, 90721, 90722, 90723, 90724, 90725, 90726,
        ],
        vec![
            0, 7, 14, 21, 224, 231, 238, 245, 448, 455, 462, 469, 672, 679, 686, 693, 896, 903, 910, 917,
        ],
        vec![
            0, 56, 10080, 10136, 20160, 20216, 362880, 362936, 372960, 373016, 383040, 383096, 725760, 725816,
            735840, 735896, 745920, 745976, 1088640, 1088696, 1098720, 1098776, 1108800, 1108856, 1451520, 1451576,
            1461600, 1461656, 1471680, 1471736,
        ],
        vec![
            0, 112, 1120, 1232, 2240, 2352, 3360, 3472, 4480, 4592, 5600, 5712, 6720, 6832, 7840, 7952, 8960, 9072,
        ],
        vec![
            0, 28, 120960, 120988, 241920, 241948, 1814400, 1814428, 1935360, 1935388, 2056320, 2056348,
        ],
    ]
}

pub fn jof(s: &str) -> JointOrderedFactorisation {
    JointOrderedFactorisation::parse(s).unwrap()
}

pub fn parts_of(ss: &SumSystem) -> Vec<Vec<u64>> {
    ss.parts().iter().map(|p| p.as_slice().to_vec()).collect()
}

/// Every sum, one element per set, collected and sorted.
pub fn all_sums(sets: &[Vec<i64>]) -> Vec<i64> {
    let mut acc = vec![0i64];
    for s in sets {
        acc = acc.iter().flat_map(|&a| s.iter().map(move |&x| a + x)).collect();
    }
    acc.sort_unstable();
    acc
}

/// Sorted sums equal exactly `0, 1, ..., N - 1`.
pub fn oracle_is_sum_system(parts: &[Vec<u64>]) -> bool {
    let signed: Vec<Vec<i64>> = parts.iter().map(|p| p.iter().map(|&x| x as i64).collect()).collect();
    let sums = all_sums(&signed);
    sums.iter().enumerate().all(|(i, &s)| s == i as i64)
}

/// Mixed-radix reading of the factorisation: each step contributes a digit
/// `d_l in 0..f_l` with place value `f_1 ... f_{l-1}` to its own direction.
pub fn oracle_sum_parts(steps: &[(usize, u64)], m: usize) -> Vec<Vec<u64>> {
    let mut parts: Vec<Vec<u64>> = vec![vec![0]; m];
    let mut place = 1u64;
    for &(j, f) in steps {
        let old = parts[j - 1].clone();
        parts[j - 1] = (0..f).flat_map(|d| old.iter().map(move |&a| a + d * place)).collect();
        parts[j - 1].sort_unstable();
        place *= f;
    }
    parts
}

fn divisors(n: u64) -> Vec<u64> {
    (2..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Plain recursion, no memoisation.
pub fn oracle_count_jofs(rem: &mut Vec<u64>, last: Option<usize>) -> u128 {
    if rem.iter().all(|&r| r == 1) {
        return 1;
    }
    let mut total = 0;
    for j in 0..rem.len() {
        if Some(j) == last || rem[j] == 1 {
            continue;
        }
        let r = rem[j];
        for f in divisors(r) {
            rem[j] = r / f;
            total += oracle_count_jofs(rem, Some(j));
        }
        rem[j] = r;
    }
    total
}

/// Every JOF as `(direction, factor)` lists, in no particular order.
pub fn oracle_list_jofs(dims: &[u64]) -> Vec<Vec<(usize, u64)>> {
    fn go(rem: &mut Vec<u64>, last: Option<usize>, prefix: &mut Vec<(usize, u64)>, out: &mut Vec<Vec<(usize, u64)>>) {
        if rem.iter().all(|&r| r == 1) {
            out.push(prefix.clone());
            return;
        }
        for j in 0..rem.len() {
            if Some(j) == last || rem[j] == 1 {
                continue;
            }
            let r = rem[j];
            for f in divisors(r) {
                rem[j] = r / f;
                prefix.push((j + 1, f));
                go(rem, Some(j), prefix, out);
                prefix.pop();
            }
            rem[j] = r;
        }
    }
    let mut out = Vec::new();
    go(&mut dims.to_vec(), None, &mut Vec::new(), &mut out);
    out
}

/// All dims vectors with entries >= 2, `m <= max_m` and product <= `max_product`,
/// in increasing product order (ties lexicographic).
pub fn dims_up_to(max_product: u64, max_m: usize) -> Vec<Vec<u64>> {
    fn go(prefix: &mut Vec<u64>, prod: u64, max_product: u64, max_m: usize, out: &mut Vec<(u64, Vec<u64>)>) {
        if !prefix.is_empty() {
            out.push((prod, prefix.clone()));
        }
        if prefix.len() == max_m {
            return;
        }
        for n in 2..=max_product / prod {
            prefix.push(n);
            go(prefix, prod * n, max_product, max_m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max_product, max_m, &mut out);
    out.sort();
    out.into_iter().map(|(_, d)| d).collect()
}

/// The full round trip for one canonical JOF: construction, verification,
/// both decompositions, the cuboid/sum-system commuting square, the
/// parity-appropriate SDS round trip, palindromy and the parity dichotomy.
pub fn round_trip(j: &JointOrderedFactorisation, limits: &Limits) -> Result<(), String> {
    let fail = |what: &str, e: &dyn std::fmt::Debug| Err(format!("{j}: {what}: {e:?}"));
    let ss = build_sum_system(j).map_err(|e| format!("{j}: build: {e}"))?;
    let r = verify_sum_system(&ss, limits).map_err(|e| e.to_string())?;
    if !r.passed {
        return fail("verify_sum_system", &r);
    }
    match decompose_sum_system(&ss, limits) {
        Ok(back) if &back == j => {}
        other => return fail("decompose_sum_system", &other),
    }
    let c = build_cuboid(j, limits).map_err(|e| e.to_string())?;
    let r = verify_reversible(&c);
    if !r.passed {
        return fail("verify_reversible", &r);
    }
    match decompose_cuboid(&c, limits) {
        Ok(back) if &back == j => {}
        other => return fail("decompose_cuboid", &other),
    }
    match axis_sets(&c) {
        Ok(axes) if axes == ss => {}
        other => return fail("axis_sets", &other),
    }
    let parities: Vec<bool> = ss.parts().iter().map(|p| p.len() % 2 == 0).collect();
    let uniform = parities.iter().all(|&p| p == parities[0]);
    match sumsys_to_sds(&ss, limits) {
        Ok(sds) if uniform => {
            let r = verify_sds(&sds, limits).map_err(|e| e.to_string())?;
            if !r.passed {
                return fail("verify_sds", &r);
            }
            match sds_to_sumsys(&sds, limits) {
                Ok(back) if back == ss => {}
                other => return fail("sds_to_sumsys", &other),
            }
        }
        Err(Error::MixedParity { .. }) if !uniform => {
            if flavour_for(&ss).is_ok() {
                return fail("flavour_for", &"accepted a mixed-parity system");
            }
        }
        other => return fail("sumsys_to_sds", &other),
    }
    for p in ss.parts() {
        let r = check_palindromic(p);
        if !r.passed {
            return fail("check_palindromic", &r);
        }
    }
    let r = check_parity_dichotomy(&ss, limits).map_err(|e| e.to_string())?;
    if !r.passed {
        return fail("check_parity_dichotomy", &r);
    }
    Ok(())
}

/// The parity dichotomy computed from scratch on the maxima.
pub fn oracle_parity_ok(parts: &[Vec<u64>]) -> bool {
    let odd_maxima = parts.iter().filter(|p| p.last().unwrap() % 2 == 1).count();
    if parts.iter().all(|p| p.len() % 2 == 1) {
        odd_maxima == 0
    } else {
        odd_maxima == 1
    }
}

/// `x in A <=> max - x in A`, from scratch.
pub fn oracle_palindromic(p: &[u64]) -> bool {
    let max = *p.last().unwrap();
    p.iter().all(|&x| p.binary_search(&(max - x)).is_ok())
}
