mod common;

use addsys::squares::alternating_signs;
use addsys::{
    associated_magic_square, build_sum_system, enumerate_jofs, most_perfect_square, reversible_square_even,
    reversible_square_odd, sumsys_to_sds_inclusive, sumsys_to_sds_noninclusive, verify_square, ComponentSet, Limits,
    SquareKind, SquareMatrix,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Two-part non-inclusive systems of size ν from dims (2ν, 2ν).
fn noninclusive_pairs(nu: u64) -> Vec<(ComponentSet, ComponentSet)> {
    let l = Limits::default();
    enumerate_jofs(&[2 * nu, 2 * nu])
        .unwrap()
        .map(|j| {
            let sds = sumsys_to_sds_noninclusive(&build_sum_system(&j).unwrap(), &l).unwrap();
            (sds.part(0).clone(), sds.part(1).clone())
        })
        .collect()
}

fn inclusive_pairs(nu: u64) -> Vec<(ComponentSet, ComponentSet)> {
    let l = Limits::default();
    enumerate_jofs(&[2 * nu + 1, 2 * nu + 1])
        .unwrap()
        .map(|j| {
            let sds = sumsys_to_sds_inclusive(&build_sum_system(&j).unwrap(), &l).unwrap();
            (sds.part(0).clone(), sds.part(1).clone())
        })
        .collect()
}

/// Entries are `1..=n²`, checked by sorting.
fn oracle_entries(m: &SquareMatrix) -> bool {
    let mut e: Vec<i64> = m.rows().unwrap().concat();
    e.sort_unstable();
    e.iter().enumerate().all(|(i, &x)| x == i as i64 + 1)
}

fn oracle_associated(m: &SquareMatrix) -> bool {
    let n = m.n();
    let r = m.rows().unwrap();
    (0..n).all(|i| (0..n).all(|k| r[i][k] + r[n - 1 - i][n - 1 - k] == (n * n + 1) as i64))
}

fn oracle_magic(m: &SquareMatrix) -> bool {
    let n = m.n();
    let r = m.rows().unwrap();
    let c = (n * (n * n + 1) / 2) as i64;
    (0..n).all(|i| r[i].iter().sum::<i64>() == c && (0..n).map(|k| r[k][i]).sum::<i64>() == c)
}

#[test]
fn even_reversible_from_every_small_system() {
    for nu in 1..=3 {
        for (a, b) in noninclusive_pairs(nu) {
            let m = reversible_square_even(&a, &b).unwrap();
            assert_eq!(m.n() as u64, 2 * nu);
            assert!(oracle_entries(&m));
            assert!(oracle_associated(&m));
            assert!(verify_square(&m, SquareKind::Reversible).passed, "{a:?} {b:?}");
        }
    }
}

#[test]
fn odd_reversible_from_every_small_system() {
    for nu in 1..=3 {
        for (a, b) in inclusive_pairs(nu) {
            let m = reversible_square_odd(&a, &b).unwrap();
            let n = m.n();
            assert!(oracle_entries(&m));
            assert!(oracle_associated(&m));
            assert_eq!(m.get(nu as usize + 1, nu as usize + 1), Some((n * n).div_ceil(2) as i64));
            assert!(verify_square(&m, SquareKind::Reversible).passed);
        }
    }
}

#[test]
fn associated_magic_from_sampled_systems() {
    let mut rng = StdRng::seed_from_u64(7);
    for nu in [2usize, 4] {
        let pairs = noninclusive_pairs(nu as u64);
        for (a, b) in pairs.choose_multiple(&mut rng, 20) {
            let mut v = alternating_signs(nu);
            let mut w = alternating_signs(nu);
            v.shuffle(&mut rng);
            w.shuffle(&mut rng);
            let m = associated_magic_square(a, b, Some(&v), Some(&w)).unwrap();
            assert!(oracle_entries(&m) && oracle_magic(&m) && oracle_associated(&m), "{a:?} {b:?} {v:?} {w:?}");
            assert!(verify_square(&m, SquareKind::Associated).passed);
        }
    }
}

#[test]
fn most_perfect_from_dims_four_four() {
    for (a2, b2) in noninclusive_pairs(2) {
        let m = most_perfect_square(&a2, &b2).unwrap();
        assert!(oracle_entries(&m));
        let r = m.rows().unwrap();
        let n = 4;
        for i in 0..n {
            for k in 0..n {
                let block = r[i][k] + r[i][(k + 1) % n] + r[(i + 1) % n][k] + r[(i + 1) % n][(k + 1) % n];
                assert_eq!(block, 34);
                assert_eq!(r[i][k] + r[(i + 2) % n][(k + 2) % n], 17);
            }
        }
        assert!(verify_square(&m, SquareKind::MostPerfect).passed);
    }
}

#[test]
fn most_perfect_order_eight() {
    let pairs = noninclusive_pairs(4);
    for (a2, b2) in pairs.iter().take(10) {
        let m = most_perfect_square(a2, b2).unwrap();
        assert!(oracle_entries(&m) && oracle_magic(&m));
        assert!(verify_square(&m, SquareKind::MostPerfect).passed);
    }
}

#[test]
fn reversible_squares_are_generally_not_most_perfect() {
    let a = ComponentSet::new(vec![7, 9]).unwrap();
    let b = ComponentSet::new(vec![2, 6]).unwrap();
    let m = reversible_square_even(&a, &b).unwrap();
    assert!(!verify_square(&m, SquareKind::MostPerfect).passed);
    assert!(!verify_square(&m, SquareKind::Associated).passed);
}
