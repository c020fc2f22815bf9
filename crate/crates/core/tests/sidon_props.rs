use std::collections::{HashMap, HashSet};

use proptest::prelude::*;
use sidon_codes::{ConstructionParams, FieldElement, FieldTower, Level, Params1, Subspace};

fn span(t: &FieldTower, codes: &[u32]) -> Subspace {
    let v: Vec<FieldElement> = codes
        .iter()
        .map(|&c| t.element(Level::Top, c).unwrap())
        .collect();
    t.span(&v).unwrap()
}

fn all_two_dim(t: &FieldTower) -> Vec<Subspace> {
    let size = t.size(Level::Top);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 1..size {
        for b in a + 1..size {
            let u = span(t, &[a, b]);
            if u.dim() == 2 && seen.insert(u.clone()) {
                out.push(u);
            }
        }
    }
    out
}

/// dim(U ∩ αV) over all α, by materializing αV.
fn shift_oracle(t: &FieldTower, u: &Subspace, v: &Subspace) -> bool {
    let w = t.top_primitive();
    (0..t.size(Level::Top) as u64 - 1).all(|e| {
        let sv = t.scalar_mul(t.pow(w, e), v).unwrap();
        (u == v && sv == *u) || t.intersect_dim(u, &sv).unwrap() <= 1
    })
}

#[test]
fn quadruple_oracle_agrees_on_gf16() {
    let t = FieldTower::with_q(2, 2, 4).unwrap();
    let subs = all_two_dim(&t);
    assert_eq!(subs.len(), 35);
    for u in &subs {
        assert_eq!(t.is_sidon(u), t.is_sidon_quadruple_oracle(u));
    }
}

#[test]
fn quadruple_oracle_agrees_on_odd_q() {
    let t = FieldTower::with_q(3, 2, 4).unwrap();
    for u in all_two_dim(&t).iter().step_by(7) {
        assert_eq!(t.is_sidon(u), t.is_sidon_quadruple_oracle(u));
    }
}

#[test]
fn construction1_generators_pass_both_sidon_tests() {
    let t = FieldTower::with_q(2, 2, 10).unwrap();
    let p = ConstructionParams::One(Params1::new(2, 2, 10, 2).unwrap());
    for r in p.enumerate(&t).unwrap() {
        assert!(t.is_sidon(&r.subspace));
        assert!(t.is_sidon_quadruple_oracle(&r.subspace));
    }
}

#[test]
fn pairwise_with_itself_is_the_ordered_pair_map() {
    let t = FieldTower::with_q(2, 2, 6).unwrap();
    for u in all_two_dim(&t).iter().take(60) {
        let pts = t.projective_points(u);
        let mut seen = HashMap::new();
        let mut injective = true;
        for a in &pts {
            for b in &pts {
                let prod = t.mul(a.rep(), b.rep()).unwrap();
                let class = t.projective_point(prod).unwrap();
                if seen.insert(class, ()).is_some() {
                    injective = false;
                }
            }
        }
        assert_eq!(t.pairwise_ok(u, u).unwrap(), injective);
    }
}

#[test]
fn shiftwise_matches_materialized_shifts() {
    let t = FieldTower::with_q(2, 2, 6).unwrap();
    let subs = all_two_dim(&t);
    for (i, u) in subs.iter().enumerate().step_by(37) {
        for v in subs.iter().skip(i).step_by(53) {
            assert_eq!(t.shiftwise_ok(u, v).unwrap().ok, shift_oracle(&t, u, v));
        }
    }
}

#[test]
fn within_orbit_check_matches_sidon() {
    // Sidon ⇒ every αU ≠ U meets U in dimension ≤ 1
    let t = FieldTower::with_q(3, 2, 4).unwrap();
    for u in all_two_dim(&t).iter().step_by(11) {
        let c = t.shiftwise_ok(u, u).unwrap();
        if t.is_sidon(u) {
            assert!(c.ok);
            assert_eq!(c.stabilizer, 1);
        }
        assert_eq!(c.ok, shift_oracle(&t, u, u));
    }
}

#[test]
fn one_dimensional_shifts_are_fine() {
    let t = FieldTower::with_q(3, 2, 4).unwrap();
    let u = span(&t, &[7]);
    let v = span(&t, &[50]);
    assert!(t.shiftwise_ok(&u, &v).unwrap().ok);
    assert!(t.pairwise_ok(&u, &v).unwrap());
    assert!(t.is_sidon(&u));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projective_rep_is_least_in_class(code in 1u32..625) {
        let t = FieldTower::with_q(5, 2, 4).unwrap();
        let x = t.element(Level::Top, code).unwrap();
        let rep = t.projective_point(x).unwrap().rep();
        let least = (1..5)
            .map(|l| {
                let lam = t.embed(t.element(Level::Base, l).unwrap(), Level::Top).unwrap();
                t.mul(lam, x).unwrap().code()
            })
            .min()
            .unwrap();
        prop_assert_eq!(rep.code(), least);
    }

    #[test]
    fn pairwise_agrees_with_shiftwise_on_random_pairs(a in 1u32..64, b in 1u32..64, c in 1u32..64, d in 1u32..64) {
        let t = FieldTower::with_q(2, 2, 6).unwrap();
        let u = span(&t, &[a, b]);
        let v = span(&t, &[c, d]);
        prop_assume!(u.dim() == 2 && v.dim() == 2 && t.is_sidon(&u) && t.is_sidon(&v));
        prop_assume!(u != v);
        prop_assert_eq!(t.pairwise_ok(&u, &v).unwrap(), t.shiftwise_ok(&u, &v).unwrap().ok);
    }
}
