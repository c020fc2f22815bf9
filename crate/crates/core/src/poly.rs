//! Dense polynomials over one level of the tower, coefficients as codes,
//! low degree first. Only what irreducibility testing needs.

use crate::error::{Error, Result};
use crate::field::Arith;

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn sub(ar: &Arith, a: &[u32], b: &[u32]) -> Vec<u32> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            ar.sub(x, y)
        })
        .collect();
    trim(out)
}

fn mul(ar: &Arith, lvl: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ar.add(out[i + j], ar.mul(lvl, x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo nonzero `m`.
fn rem(ar: &Arith, lvl: usize, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = ar.inv(lvl, m[dm]);
    while a.len() > dm {
        let da = a.len() - 1;
        let c = ar.mul(lvl, a[da], lead_inv);
        for (t, &mt) in m.iter().enumerate() {
            let idx = da - dm + t;
            a[idx] = ar.sub(a[idx], ar.mul(lvl, c, mt));
        }
        a = trim(a);
    }
    a
}

fn gcd(ar: &Arith, lvl: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(ar, lvl, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn pow_mod(ar: &Arith, lvl: usize, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = rem(ar, lvl, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(ar, lvl, &mul(ar, lvl, &acc, &b), m);
        }
        b = rem(ar, lvl, &mul(ar, lvl, &b, &b), m);
        e >>= 1;
    }
    acc
}

/// Ben-Or test: f of degree d is irreducible iff gcd(x^(Q^i) − x, f) = 1
/// for 1 ≤ i ≤ d/2, with Q the size of the coefficient field.
pub(crate) fn is_irreducible(ar: &Arith, lvl: usize, f: &[u32]) -> Result<bool> {
    if f.last() != Some(&1) {
        return Err(Error::NotMonic);
    }
    let d = f.len() - 1;
    if d == 0 {
        return Err(Error::Precondition("degree at least 1".into()));
    }
    let q = ar.size(lvl) as u64;
    let x = vec![0u32, 1];
    let mut h = rem(ar, lvl, &x, f);
    for _ in 1..=d / 2 {
        h = pow_mod(ar, lvl, &h, q, f);
        let g = gcd(ar, lvl, &sub(ar, &h, &x), f);
        if g.len() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scans monic candidates x^d + c_{d−1}x^{d−1} + … + c_0 in increasing
/// order of the code Σ c_i Q^i and returns the first irreducible one.
pub(crate) fn find_irreducible(ar: &Arith, lvl: usize, degree: usize) -> Vec<u32> {
    let q = ar.size(lvl) as u64;
    let mut idx = 0u64;
    loop {
        let mut f = Vec::with_capacity(degree + 1);
        let mut r = idx;
        for _ in 0..degree {
            f.push((r % q) as u32);
            r /= q;
        }
        f.push(1);
        if is_irreducible(ar, lvl, &f).expect("candidate is monic") {
            return f;
        }
        idx += 1;
    }
}

#[cfg(test)]
mod tests {
    use crate::field::{FieldTower, Level};
    use crate::Error;

    #[test]
    fn small_cases_over_gf2() {
        let t = FieldTower::with_q(2, 2, 4).unwrap();
        assert_eq!(t.is_irreducible(Level::Base, &[1, 1, 1]), Ok(true));
        assert_eq!(t.is_irreducible(Level::Base, &[1, 0, 1]), Ok(false));
        assert_eq!(t.is_irreducible(Level::Base, &[1, 1, 0, 0, 1]), Ok(true));
        assert_eq!(t.is_irreducible(Level::Base, &[1, 1, 2]), Err(Error::ElementOutOfRange {
            level: Level::Base,
            code: 2,
            size: 2
        }));
        assert_eq!(t.is_irreducible(Level::Base, &[1, 1, 0]), Err(Error::NotMonic));
        assert_eq!(t.is_irreducible(Level::Base, &[1, 1]), Ok(true));
        assert_eq!(t.find_irreducible(2, Level::Base).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn non_monic_rejected() {
        let t = FieldTower::with_q(3, 2, 4).unwrap();
        assert_eq!(t.is_irreducible(Level::Base, &[1, 0, 2]), Err(Error::NotMonic));
    }

    #[test]
    fn degree_two_over_gf3() {
        let t = FieldTower::with_q(3, 2, 4).unwrap();
        assert_eq!(t.find_irreducible(2, Level::Base).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn scan_is_deterministic() {
        let t = FieldTower::with_q(2, 2, 8).unwrap();
        let a = t.find_irreducible(4, Level::Mid).unwrap();
        let b = t.find_irreducible(4, Level::Mid).unwrap();
        assert_eq!(a, b);
        assert_eq!(t.modulus_n(), a.as_slice());
    }
}
