//! Exact code-size bounds and formulas.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn check_field_order(q: u32) -> Result<()> {
    match crate::field::split_prime_power(q as u64) {
        Some(_) => Ok(()),
        None => Err(Error::InvalidParams(format!("q = {q} is not a prime power"))),
    }
}

fn qpow(q: u32, e: usize) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// Number of s-dimensional subspaces of GF(q)^t.
pub fn gaussian_binomial(t: usize, s: usize, q: u32) -> Result<BigUint> {
    if s > t {
        return Err(Error::InvalidParams(format!("s = {s} exceeds t = {t}")));
    }
    if q < 2 {
        return Err(Error::InvalidParams(format!("q = {q} must be at least 2")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..s {
        num *= qpow(q, t - i) - 1u32;
        den *= qpow(q, i + 1) - 1u32;
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    Ok(quot)
}

fn check_sphere_args(n: usize, k: usize, d: usize) -> Result<()> {
    if !d.is_multiple_of(2) || d == 0 {
        return Err(Error::InvalidParams(format!("d = {d} must be even and positive")));
    }
    if d > 2 * k {
        return Err(Error::InvalidParams(format!("d = {d} exceeds 2k = {}", 2 * k)));
    }
    if k > n || k == 0 {
        return Err(Error::InvalidParams(format!("k = {k} must lie in [1, n = {n}]")));
    }
    Ok(())
}

/// [n, k−d/2+1]_q / [k, k−d/2+1]_q as an exact rational.
pub fn sphere_packing_exact(n: usize, k: usize, d: usize, q: u32) -> Result<BigRational> {
    check_sphere_args(n, k, d)?;
    let s = k - d / 2 + 1;
    let num = gaussian_binomial(n, s, q)?;
    let den = gaussian_binomial(k, s, q)?;
    Ok(BigRational::new(num.into(), den.into()))
}

/// Largest integer not above the sphere-packing bound.
pub fn sphere_packing(n: usize, k: usize, d: usize, q: u32) -> Result<BigUint> {
    let r = sphere_packing_exact(n, k, d, q)?;
    Ok(r.floor().to_integer().to_biguint().expect("bound is positive"))
}

/// r(⌈n/(2rk)⌉−1)[(q^k−1)^r (q^n−1) + (q^k−1)^(r−1) (q^n−1)/(q−1)]
pub fn size_formula_1(q: u32, k: usize, n: usize, r: usize) -> BigUint {
    let e = n.div_ceil(2 * r * k).saturating_sub(1);
    let qk1 = qpow(q, k) - 1u32;
    let qn1 = qpow(q, n) - 1u32;
    let v_part = qk1.pow(r as u32 - 1) * &qn1 / (q - 1);
    big((r * e) as u64) * (qk1.pow(r as u32) * &qn1 + v_part)
}

/// ⌊(r−1)(q^k−2)(q^k−1)^(r−1)(q^n−1)/2⌋ with n = 2rk.
pub fn size_formula_2(q: u32, k: usize, r: usize) -> BigUint {
    let n = 2 * r * k;
    let qk = qpow(q, k);
    let qn1 = qpow(q, n) - 1u32;
    big(r as u64 - 1) * (&qk - 2u32) * (&qk - 1u32).pow(r as u32 - 1) * qn1 / 2u32
}

/// Closed-form size for construction 1 or 2 after validating the parameters.
pub fn size_formula(construction: u8, q: u32, k: usize, n: usize, r: usize) -> Result<BigUint> {
    match construction {
        1 => {
            crate::constructions::Params1::new(q, k, n, r)?;
            Ok(size_formula_1(q, k, n, r))
        }
        2 => {
            check_field_order(q)?;
            if k < 2 || r < 2 || n != 2 * r * k {
                return Err(Error::InvalidParams(format!(
                    "construction 2 needs k ≥ 2, r ≥ 2 and n = 2rk, got k = {k}, r = {r}, n = {n}"
                )));
            }
            Ok(size_formula_2(q, k, r))
        }
        c => Err(Error::InvalidParams(format!("unknown construction {c}"))),
    }
}

/// One comparison row for d = 2k − 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub r: usize,
    pub d: usize,
    #[serde(with = "crate::bigint_str")]
    pub sphere_packing: BigUint,
    #[serde(with = "crate::bigint_str")]
    pub this_paper: BigUint,
    #[serde(with = "crate::bigint_str::opt")]
    pub fw2021: Option<BigUint>,
    #[serde(with = "crate::bigint_str::opt")]
    pub zt2023: Option<BigUint>,
    #[serde(with = "crate::bigint_str::opt")]
    pub nxg2022: Option<BigUint>,
    #[serde(serialize_with = "crate::bigint_str::rational")]
    pub ratio: BigRational,
}

impl BoundRow {
    pub const CSV_HEADER: [&'static str; 10] = [
        "n",
        "k",
        "q",
        "r",
        "sphere_packing",
        "this_paper",
        "fw2021",
        "zt2023",
        "nxg2022",
        "ratio",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        let opt = |x: &Option<BigUint>| x.as_ref().map(|v| v.to_string()).unwrap_or_default();
        vec![
            self.n.to_string(),
            self.k.to_string(),
            self.q.to_string(),
            self.r.to_string(),
            self.sphere_packing.to_string(),
            self.this_paper.to_string(),
            opt(&self.fw2021),
            opt(&self.zt2023),
            opt(&self.nxg2022),
            self.ratio.to_string(),
        ]
    }
}

/// Row for n = 4k (second construction, r = 2) or n = (2r+1)k (first).
/// `ell` is the set size in the NXG2022 entry; left blank when absent.
pub fn table_row(n: usize, k: usize, q: u32, r: usize, ell: Option<u64>) -> Result<BoundRow> {
    check_field_order(q)?;
    if k < 2 || r < 2 {
        return Err(Error::InvalidParams(format!(
            "need k ≥ 2 and r ≥ 2, got k = {k}, r = {r}"
        )));
    }
    let qk = qpow(q, k);
    let qn1 = qpow(q, n) - 1u32;
    let (this_paper, fw, zt, nxg) = if n == 4 * k && r == 2 {
        let fw = &qk * &qn1 / (q - 1);
        (size_formula_2(q, k, 2), Some(fw), None, None)
    } else if n == (2 * r + 1) * k {
        let zt = big(r as u64) * &qk * &qn1;
        let nxg = ell.map(|l| big(l * r as u64) * &qk * &qn1 / (q - 1));
        (size_formula_1(q, k, n, r), None, Some(zt), nxg)
    } else {
        return Err(Error::InvalidParams(format!(
            "n = {n} is neither 4k (with r = 2) nor (2r+1)k for k = {k}, r = {r}"
        )));
    };
    let d = 2 * k - 2;
    let sp = sphere_packing(n, k, d, q)?;
    let ratio = BigRational::new(this_paper.clone().into(), sp.clone().into());
    Ok(BoundRow {
        n,
        k,
        q,
        r,
        d,
        sphere_packing: sp,
        this_paper,
        fw2021: fw,
        zt2023: zt,
        nxg2022: nxg,
        ratio,
    })
}
