use std::collections::HashSet;

use num_bigint::BigUint;
use sidon_codes::constructions::{
    admissible_set_greedy, build_u1, build_u2, build_v1, discrete_log,
};
use sidon_codes::{
    bounds, ConstructionParams, FieldTower, Level, Params1, Params2, TowerConfig,
};

#[test]
fn construction1_sweep_dims_and_sidon() {
    let t = FieldTower::with_q(2, 2, 10).unwrap();
    let p = Params1::new(2, 2, 10, 2).unwrap();
    for ell in 1..=2 {
        for i1 in 0..3 {
            for i2 in 0..3 {
                let u = build_u1(&t, &p, ell, &[i1, i2], 0, 1).unwrap();
                assert_eq!(u.subspace.dim(), 2);
                assert!(t.is_sidon(&u.subspace));
            }
            let v = build_v1(&t, &p, ell, &[i1], 1).unwrap();
            assert_eq!(v.subspace.dim(), 2);
            assert!(t.is_sidon(&v.subspace));
        }
    }
}

#[test]
fn construction1_with_odd_q_and_two_shift_steps() {
    // q = 3 exercises b ∈ {0, 1}; n = 18 gives e = 2 at r = 2, k = 2
    let t = FieldTower::with_q(3, 2, 18).unwrap();
    let p = Params1::new(3, 2, 18, 2).unwrap();
    assert_eq!(p.e, 2);
    let u = build_u1(&t, &p, 2, &[3, 5], 1, 2).unwrap();
    assert!(t.is_sidon(&u.subspace));
    let v = build_v1(&t, &p, 1, &[6], 2).unwrap();
    assert!(t.is_sidon(&v.subspace));
    let t = FieldTower::with_q(3, 2, 10).unwrap();
    let p = Params1::new(3, 2, 10, 2).unwrap();
    assert_eq!(p.u_count(), 2 * 64 * 2);
    assert_eq!(p.v_count(), 2 * 8);
    for (ell, iv, b) in [(1, [0, 0], 0), (2, [7, 3], 1), (1, [4, 6], 1)] {
        let u = build_u1(&t, &p, ell, &iv, b, 1).unwrap();
        assert_eq!(u.subspace.dim(), 2);
        assert!(t.is_sidon(&u.subspace));
    }
    for (ell, i) in [(1, 0), (2, 5)] {
        let v = build_v1(&t, &p, ell, &[i], 1).unwrap();
        assert!(t.is_sidon(&v.subspace));
    }
}

#[test]
fn construction2_sweeps() {
    for (q, k) in [(2u64, 2usize), (2, 3)] {
        let t = FieldTower::with_q(q, k, 4 * k).unwrap();
        let p = Params2::new(&t, 2).unwrap();
        let recs = ConstructionParams::Two(p.clone()).enumerate(&t).unwrap();
        assert_eq!(recs.len() as u64, p.generator_count());
        let keys: HashSet<_> = recs.iter().map(|r| r.subspace.clone()).collect();
        assert_eq!(keys.len(), recs.len());
        for r in &recs {
            assert_eq!(r.subspace.dim(), k);
            assert!(t.is_sidon(&r.subspace));
            assert_eq!(t.orbit_length(&r.subspace).unwrap(), t.projective_count());
        }
    }
}

#[test]
fn u2_with_unit_input_and_zero_b() {
    let t = FieldTower::with_q(2, 2, 8).unwrap();
    let p = Params2::new(&t, 2).unwrap();
    let rec = build_u2(&t, &p, 1, &[0, p.admissible[0]], 0).unwrap();
    assert!(t.is_sidon(&rec.subspace));
}

#[test]
fn admissible_set_is_valid_for_many_moduli() {
    // one irreducible quartic over GF(q^2) per constant term, as the top modulus
    for q in [2u64, 3, 4] {
        let base = FieldTower::with_q(q, 2, 8).unwrap();
        let qk = base.size(Level::Mid);
        let mut tried = 0;
        for c0 in 1..qk {
            let found = (0..qk * qk).map(|x| vec![c0, x % qk, x / qk, 0, 1]).find(|f| {
                base.is_irreducible(Level::Mid, f) == Ok(true)
            });
            if let Some(f) = found {
                let mut cfg = TowerConfig::for_q(q, 2, 8).unwrap();
                cfg.modulus_n = Some(f);
                let t = FieldTower::new(&cfg).unwrap();
                let p = Params2::new(&t, 2).unwrap();
                let xi = t.xi();
                let c = t.element(Level::Mid, p.f0).unwrap();
                for &i in &p.admissible {
                    for &j in &p.admissible {
                        let v = t.mul(c, t.pow(xi, (i + j) as u64)).unwrap();
                        assert_ne!(v, t.one(Level::Mid));
                    }
                }
                assert_eq!(p.admissible.len() as u64, (qk as u64 - 2) / 2);
                assert_eq!(t.pow(xi, p.m).code(), p.f0);
                tried += 1;
            }
        }
        assert!(tried > 0, "q = {q}");
    }
}

#[test]
fn greedy_size_against_independence_number() {
    // brute-force maximum independent set in the conflict graph on Z/m
    for order in 3u64..12 {
        for shift in 0..order {
            let conflict = |i: u64, j: u64| (i + j + shift).is_multiple_of(order);
            let mut best = 0;
            for mask in 0u32..(1 << order) {
                let set: Vec<u64> = (0..order).filter(|&i| mask >> i & 1 == 1).collect();
                if set.iter().all(|&i| set.iter().all(|&j| !conflict(i, j))) {
                    best = best.max(set.len());
                }
            }
            let greedy = admissible_set_greedy(shift, order);
            assert_eq!(greedy.len(), best, "order {order}, m {shift}");
            let floor = ((order + 1 - 2) / 2) as usize;
            // the closed size is exact when q^k − 1 is odd, and a lower bound otherwise
            if order % 2 == 1 {
                assert_eq!(best, floor);
            } else {
                assert!(best >= floor);
            }
        }
    }
}

#[test]
fn discrete_log_over_gf16() {
    let t = FieldTower::with_q(2, 4, 8).unwrap();
    for c in 1..16 {
        let m = discrete_log(&t, c).unwrap();
        assert_eq!(t.pow(t.xi(), m).code(), c);
    }
}

#[test]
fn counts_match_closed_forms() {
    let p = Params1::new(2, 2, 10, 2).unwrap();
    let sizes = (p.u_count() + p.v_count()) * 1023;
    assert_eq!(BigUint::from(sizes), bounds::size_formula_1(2, 2, 10, 2));
    let t = FieldTower::with_q(3, 2, 8).unwrap();
    let p2 = Params2::new(&t, 2).unwrap();
    assert_eq!(p2.generator_count(), 48);
    assert_eq!(p2.enumerated_size(), BigUint::from(157440u32));
    assert_eq!(bounds::size_formula_2(3, 2, 2), BigUint::from(183680u32));
    let note = ConstructionParams::Two(p2).known_discrepancy();
    assert!(note.is_some());
    let t = FieldTower::with_q(2, 2, 8).unwrap();
    assert!(ConstructionParams::Two(Params2::new(&t, 2).unwrap())
        .known_discrepancy()
        .is_none());
}
