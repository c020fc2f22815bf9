use std::collections::HashSet;

use proptest::prelude::*;
use sidon_codes::{gaussian_binomial, FieldElement, FieldTower, Level, Subspace};

fn top(t: &FieldTower, c: u32) -> FieldElement {
    t.element(Level::Top, c % t.size(Level::Top)).unwrap()
}

fn span(t: &FieldTower, codes: &[u32]) -> Subspace {
    let v: Vec<FieldElement> = codes.iter().map(|&c| top(t, c)).collect();
    t.span(&v).unwrap()
}

fn nonzero(t: &FieldTower, c: u32) -> FieldElement {
    top(t, c % (t.size(Level::Top) - 1) + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn distance_is_a_metric(a in prop::collection::vec(any::<u32>(), 1..4),
                            b in prop::collection::vec(any::<u32>(), 1..4),
                            c in prop::collection::vec(any::<u32>(), 1..4)) {
        let t = FieldTower::with_q(2, 2, 8).unwrap();
        let (u, v, w) = (span(&t, &a), span(&t, &b), span(&t, &c));
        let d = |x: &Subspace, y: &Subspace| t.distance(x, y).unwrap();
        prop_assert_eq!(d(&u, &u), 0);
        prop_assert_eq!(d(&u, &v), d(&v, &u));
        prop_assert_eq!(d(&u, &v) == 0, u == v);
        prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w));
    }

    #[test]
    fn scalar_mul_composes(a in any::<u32>(), b in any::<u32>(), gens in prop::collection::vec(any::<u32>(), 1..4)) {
        let t = FieldTower::with_q(3, 2, 4).unwrap();
        let u = span(&t, &gens);
        let (x, y) = (nonzero(&t, a), nonzero(&t, b));
        let lhs = t.scalar_mul(x, &t.scalar_mul(y, &u).unwrap()).unwrap();
        let rhs = t.scalar_mul(t.mul(x, y).unwrap(), &u).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let back = t.scalar_mul(t.inv(x).unwrap(), &t.scalar_mul(x, &u).unwrap()).unwrap();
        prop_assert_eq!(&back, &u);
        // GF(q)* scalars fix U, and so orbit members depend only on the coset
        let lam = t.embed(t.element(Level::Base, 2).unwrap(), Level::Top).unwrap();
        prop_assert_eq!(&t.scalar_mul(lam, &u).unwrap(), &u);
        prop_assert_eq!(
            t.scalar_mul(t.mul(lam, x).unwrap(), &u).unwrap(),
            t.scalar_mul(x, &u).unwrap()
        );
    }

    #[test]
    fn canonical_form_is_idempotent(gens in prop::collection::vec(any::<u32>(), 1..5)) {
        let t = FieldTower::with_q(4, 2, 4).unwrap();
        let u = span(&t, &gens);
        prop_assume!(u.dim() > 0);
        let again = t.span(&t.basis(&u)).unwrap();
        prop_assert_eq!(&again, &u);
        prop_assert_eq!(u.rows().count(), u.dim());
        prop_assert_eq!(t.intersect_dim(&u, &u).unwrap(), u.dim());
    }

    #[test]
    fn intersection_matches_membership(a in any::<u32>(), b in any::<u32>(), c in any::<u32>(), d in any::<u32>()) {
        let t = FieldTower::with_q(2, 2, 10).unwrap();
        let u = span(&t, &[a, b]);
        let v = span(&t, &[c, d]);
        prop_assume!(u.dim() == 2);
        let basis = t.basis(&u);
        let points = [basis[0], basis[1], t.add(basis[0], basis[1]).unwrap()];
        let inside = points
            .iter()
            .filter(|&&x| t.intersect_dim(&t.span(&[x]).unwrap(), &v).unwrap() == 1)
            .count();
        // a GF(2)-subspace of dim s has 2^s − 1 nonzero points
        let expected = match inside { 0 => 0, 1 => 1, 3 => 2, _ => unreachable!() };
        prop_assert_eq!(t.intersect_dim(&u, &v).unwrap(), expected);
    }
}

#[test]
fn orbit_length_times_stabilizer() {
    let t = FieldTower::with_q(2, 2, 6).unwrap();
    let total = t.size(Level::Top) as u64 - 1;
    let mut lengths = HashSet::new();
    for a in 1..64u32 {
        for b in a + 1..64 {
            let u = span(&t, &[a, b]);
            let o = t.orbit(&u).unwrap();
            assert_eq!(o.len() as u64 * o.stabilizer, total);
            assert_eq!(t.orbit_length(&u).unwrap(), o.len() as u64);
            lengths.insert(o.len());
        }
    }
    // lengths are (q^n−1)/(q^s−1) for s | n: 63 or 21 here
    assert_eq!(lengths, HashSet::from([63, 21]));
}

#[test]
fn two_dim_subspaces_counted_by_gaussian() {
    for (q, n) in [(2u64, 4usize), (3, 4), (2, 6)] {
        let t = FieldTower::with_q(q, 2, n).unwrap();
        let size = t.size(Level::Top);
        let mut all = HashSet::new();
        for a in 1..size {
            for b in a + 1..size {
                let u = span(&t, &[a, b]);
                if u.dim() == 2 {
                    all.insert(u);
                }
            }
        }
        assert_eq!(
            num_bigint::BigUint::from(all.len()),
            gaussian_binomial(n, 2, q as u32).unwrap()
        );
    }
}

#[test]
fn direct_sum_and_span_edge_cases() {
    let t = FieldTower::with_q(2, 2, 4).unwrap();
    let u = span(&t, &[1, 2]);
    let v = span(&t, &[4, 8]);
    assert_eq!(t.intersect_dim(&u, &v).unwrap(), 0);
    assert_eq!(t.distance(&u, &v).unwrap(), 4);
    assert_eq!(span(&t, &[3, 3]).dim(), 1);
    assert_eq!(t.span(&[t.zero(Level::Top)]).unwrap().dim(), 0);
    let w = span(&t, &[1, 4]);
    assert_eq!(t.distance(&u, &w).unwrap(), 2);
    assert_eq!(t.scalar_mul(t.one(Level::Top), &u).unwrap(), u);
}

#[test]
fn subspace_json_roundtrip() {
    let t = FieldTower::with_q(3, 2, 4).unwrap();
    let u = span(&t, &[5, 40]);
    let j = u.to_json();
    let s = serde_json::to_string(&j).unwrap();
    let back = t.subspace_from_json(&serde_json::from_str(&s).unwrap()).unwrap();
    assert_eq!(back, u);
}
