//! Sidon-space generators for the two code families.
//!
//! Family one (over any tower with k | n, n ≥ (2r+1)k) has two kinds of
//! generators, indexed by ℓ ∈ [1, r], j ∈ [1, e] with e = ⌈n/(2rk)⌉ − 1:
//!
//! ```text
//! U(ℓ; i_1..i_r; b; j) = { u + (u^q − ξ^b u) ξ^{i_ℓ} γ^{ℓj} + Σ_{m≠ℓ} u ξ^{i_m} γ^{mj} }
//! V(ℓ; i_m for m≠ℓ; j) = { v + v^q γ^{ℓj}              + Σ_{m≠ℓ} v ξ^{i_m} γ^{mj} }
//! ```
//!
//! Family two (n = 2rk, f the modulus of GF(q^n) over GF(q^k)) uses
//!
//! ```text
//! U(ℓ; i_1..i_r; b) = { u + (u^q − ξ^b u) ξ^{i_ℓ} γ^ℓ + Σ_{m≠ℓ} u ξ^{i_m} γ^m },  ℓ ∈ [1, r−1]
//! ```
//!
//! with i_r restricted to an admissible set A: f(0)·ξ^{i+j} ≠ 1 for i, j ∈ A.
//!
//! The maps u ↦ u and u ↦ u^q − ξ^b u are GF(q)-linear, so each generator is
//! spanned by the images of a GF(q)-basis of GF(q^k).

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldTower, Level};
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "1-U")]
    U1,
    #[serde(rename = "1-V")]
    V1,
    #[serde(rename = "2")]
    U2,
    /// Anything supplied from outside the two constructions.
    #[serde(rename = "custom")]
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMeta {
    #[serde(rename = "construction")]
    pub family: Family,
    pub ell: usize,
    /// For 1-V records the ℓ slot is absent, leaving r − 1 entries.
    pub i_vec: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorRecord {
    pub subspace: Subspace,
    pub meta: GeneratorMeta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params1 {
    pub q: u32,
    pub k: usize,
    pub n: usize,
    pub r: usize,
    pub e: usize,
}

impl Params1 {
    pub fn new(q: u32, k: usize, n: usize, r: usize) -> Result<Self> {
        let bad = |s: String| Err(Error::InvalidParams(s));
        if crate::field::split_prime_power(q as u64).is_none() {
            return bad(format!("q = {q} is not a prime power"));
        }
        if k < 2 {
            return bad(format!("k = {k} must be at least 2"));
        }
        if r < 2 {
            return bad(format!("r = {r} must be at least 2"));
        }
        if !n.is_multiple_of(k) {
            return bad(format!("k = {k} does not divide n = {n}"));
        }
        if n < (2 * r + 1) * k {
            return bad(format!("n = {n} is below (2r+1)k = {}", (2 * r + 1) * k));
        }
        let e = n.div_ceil(2 * r * k) - 1;
        if e < 1 || 2 * r * e > n / k - 1 {
            return bad(format!("e = {e} violates 1 ≤ e and 2re ≤ n/k − 1"));
        }
        Ok(Params1 { q, k, n, r, e })
    }

    fn check_tower(&self, t: &FieldTower) -> Result<()> {
        if (t.q(), t.k(), t.n()) != (self.q, self.k, self.n) {
            return Err(Error::InvalidParams(format!(
                "tower is GF({})^{} over k = {}, parameters need q = {}, k = {}, n = {}",
                t.q(),
                t.n(),
                t.k(),
                self.q,
                self.k,
                self.n
            )));
        }
        Ok(())
    }

    /// r·e·(q^k−1)^r·(q−1)
    pub fn u_count(&self) -> u64 {
        let qk1 = (self.q as u64).pow(self.k as u32) - 1;
        (self.r * self.e) as u64 * qk1.pow(self.r as u32) * (self.q as u64 - 1)
    }

    /// r·e·(q^k−1)^(r−1)
    pub fn v_count(&self) -> u64 {
        let qk1 = (self.q as u64).pow(self.k as u32) - 1;
        (self.r * self.e) as u64 * qk1.pow(self.r as u32 - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params2 {
    pub q: u32,
    pub k: usize,
    pub r: usize,
    pub n: usize,
    /// c = f(0) as a GF(q^k) code.
    pub f0: u32,
    /// c = ξ^m.
    pub m: u64,
    #[serde(rename = "A")]
    pub admissible: Vec<u32>,
}

impl Params2 {
    /// Derives c, m and A from the tower's modulus f.
    pub fn new(t: &FieldTower, r: usize) -> Result<Self> {
        let k = t.k();
        if r < 2 {
            return Err(Error::InvalidParams(format!("r = {r} must be at least 2")));
        }
        if t.n() != 2 * r * k {
            return Err(Error::InvalidParams(format!(
                "n = {} must equal 2rk = {}",
                t.n(),
                2 * r * k
            )));
        }
        let f0 = t.modulus_n()[0];
        if f0 == 0 {
            return Err(Error::InvalidParams("f(0) must be nonzero".into()));
        }
        let m = discrete_log(t, f0)?;
        let order = t.size(Level::Mid) as u64 - 1;
        let mut admissible = admissible_set_greedy(m, order);
        admissible.truncate(admissible_size(t.size(Level::Mid) as u64) as usize);
        let p = Params2 {
            q: t.q(),
            k,
            r,
            n: t.n(),
            f0,
            m,
            admissible,
        };
        p.check_admissible(t)?;
        Ok(p)
    }

    fn check_tower(&self, t: &FieldTower) -> Result<()> {
        if (t.q(), t.k(), t.n()) != (self.q, self.k, self.n) || t.modulus_n()[0] != self.f0 {
            return Err(Error::InvalidParams(
                "tower does not match the parameters (q, k, n, f(0))".into(),
            ));
        }
        Ok(())
    }

    /// Re-checks c·ξ^(i+j) ≠ 1 for every i, j ∈ A directly in GF(q^k).
    pub fn check_admissible(&self, t: &FieldTower) -> Result<()> {
        let xi = t.xi();
        let c = t.element(Level::Mid, self.f0)?;
        for &i in &self.admissible {
            for &j in &self.admissible {
                let v = t.mul(c, t.pow(xi, i as u64 + j as u64))?;
                if v == t.one(Level::Mid) {
                    return Err(Error::InvalidParams(format!(
                        "A contains i = {i}, j = {j} with f(0)·ξ^(i+j) = 1"
                    )));
                }
            }
        }
        let expected = admissible_size(t.size(Level::Mid) as u64);
        if self.admissible.len() as u64 != expected {
            return Err(Error::InvalidParams(format!(
                "|A| = {} but ⌊(q^k−2)/2⌋ = {expected}",
                self.admissible.len()
            )));
        }
        Ok(())
    }

    /// (r−1)·(q−1)·(q^k−1)^(r−1)·|A|
    pub fn generator_count(&self) -> u64 {
        let qk1 = (self.q as u64).pow(self.k as u32) - 1;
        (self.r as u64 - 1)
            * (self.q as u64 - 1)
            * qk1.pow(self.r as u32 - 1)
            * self.admissible.len() as u64
    }

    /// (r−1)(q^k−1)^(r−1)·|A|·(q^n−1): the code size when every generator
    /// yields its own full-length orbit.
    pub fn enumerated_size(&self) -> BigUint {
        let q = BigUint::from(self.q);
        let qk1 = q.pow(self.k as u32) - 1u32;
        let qn1 = q.pow(self.n as u32) - 1u32;
        BigUint::from(self.r - 1) * qk1.pow(self.r as u32 - 1) * self.admissible.len() * qn1
    }
}

/// ⌊(q^k − 2)/2⌋
pub fn admissible_size(qk: u64) -> u64 {
    (qk - 2) / 2
}

/// Exponent m with ξ^m = c, by scanning powers of ξ.
pub fn discrete_log(t: &FieldTower, c: u32) -> Result<u64> {
    if c == 0 {
        return Err(Error::ZeroInverse);
    }
    let xi = t.xi();
    let mut x = t.one(Level::Mid);
    let order = t.size(Level::Mid) as u64 - 1;
    for m in 0..order {
        if x.code() == c {
            return Ok(m);
        }
        x = t.mul(x, xi)?;
    }
    Err(Error::ElementOutOfRange {
        level: Level::Mid,
        code: c as u64,
        size: t.size(Level::Mid) as u64,
    })
}

/// Greedy independent set in the graph on Z/(order) with i ~ j iff
/// i + j + m ≡ 0 (self-loops included). Scans i = 0, 1, … in order.
pub fn admissible_set_greedy(m: u64, order: u64) -> Vec<u32> {
    let mut taken = vec![false; order as usize];
    let mut out = Vec::new();
    for i in 0..order {
        if (2 * i + m).is_multiple_of(order) {
            continue;
        }
        let partner = (2 * order - i - m % order) % order;
        if taken[partner as usize] {
            continue;
        }
        taken[i as usize] = true;
        out.push(i as u32);
    }
    out
}

/// Builds span{ u + Σ_{m=1..r} coeff_m(u) γ^{m·step} } over a GF(q)-basis u of GF(q^k).
fn generator_subspace<F>(t: &FieldTower, r: usize, step: usize, coeff: F) -> Result<Subspace>
where
    F: Fn(u32, usize) -> u32,
{
    let q = t.q();
    let gamma = t.gamma();
    let gamma_pows: Vec<u32> = (1..=r)
        .map(|m| t.pow(gamma, (m * step) as u64).code())
        .collect();
    let mut rows = Vec::with_capacity(t.k() * t.n());
    for a in 0..t.k() {
        let u = q.pow(a as u32);
        let mut img = u;
        for (idx, &g) in gamma_pows.iter().enumerate() {
            let c = coeff(u, idx + 1);
            img = t.arith.add(img, t.mul_top(c, g));
        }
        rows.extend(t.flatten_code(img));
    }
    let s = t.subspace_from_matrix(rows);
    if s.dim() != t.k() {
        return Err(Error::Precondition(format!(
            "generator of dimension k = {}, got {}",
            t.k(),
            s.dim()
        )));
    }
    Ok(s)
}

fn check_range(name: &str, v: u64, lo: u64, hi: u64) -> Result<()> {
    if v < lo || v > hi {
        return Err(Error::InvalidParams(format!("{name} = {v} outside [{lo}, {hi}]")));
    }
    Ok(())
}

fn mid_mul(t: &FieldTower, a: u32, b: u32) -> u32 {
    t.arith.mul(2, a, b)
}

fn xi_pow(t: &FieldTower, i: u32) -> u32 {
    t.arith.pow(2, t.xi().code(), i as u64)
}

/// u^q − ξ^b u
fn twisted(t: &FieldTower, u: u32, b: u32) -> u32 {
    let uq = t.arith.pow(2, u, t.q() as u64);
    t.arith.sub(uq, mid_mul(t, xi_pow(t, b), u))
}

pub fn build_u1(
    t: &FieldTower,
    p: &Params1,
    ell: usize,
    i_vec: &[u32],
    b: u32,
    j: usize,
) -> Result<GeneratorRecord> {
    p.check_tower(t)?;
    let qk2 = t.size(Level::Mid) as u64 - 2;
    check_range("ℓ", ell as u64, 1, p.r as u64)?;
    check_range("j", j as u64, 1, p.e as u64)?;
    check_range("b", b as u64, 0, p.q as u64 - 2)?;
    if i_vec.len() != p.r {
        return Err(Error::InvalidParams(format!("i-vector needs {} entries", p.r)));
    }
    for &i in i_vec {
        check_range("i", i as u64, 0, qk2)?;
    }
    let subspace = generator_subspace(t, p.r, j, |u, m| {
        let x = mid_mul(t, u, xi_pow(t, i_vec[m - 1]));
        if m == ell {
            mid_mul(t, twisted(t, u, b), xi_pow(t, i_vec[m - 1]))
        } else {
            x
        }
    })?;
    Ok(GeneratorRecord {
        subspace,
        meta: GeneratorMeta {
            family: Family::U1,
            ell,
            i_vec: i_vec.to_vec(),
            b: Some(b),
            j: Some(j),
        },
    })
}

/// `i_vec` lists i_m for m ≠ ℓ in increasing m.
pub fn build_v1(
    t: &FieldTower,
    p: &Params1,
    ell: usize,
    i_vec: &[u32],
    j: usize,
) -> Result<GeneratorRecord> {
    p.check_tower(t)?;
    let qk2 = t.size(Level::Mid) as u64 - 2;
    check_range("ℓ", ell as u64, 1, p.r as u64)?;
    check_range("j", j as u64, 1, p.e as u64)?;
    if i_vec.len() != p.r - 1 {
        return Err(Error::InvalidParams(format!("i-vector needs {} entries", p.r - 1)));
    }
    for &i in i_vec {
        check_range("i", i as u64, 0, qk2)?;
    }
    let subspace = generator_subspace(t, p.r, j, |u, m| {
        if m == ell {
            t.arith.pow(2, u, t.q() as u64)
        } else {
            let idx = if m < ell { m - 1 } else { m - 2 };
            mid_mul(t, u, xi_pow(t, i_vec[idx]))
        }
    })?;
    Ok(GeneratorRecord {
        subspace,
        meta: GeneratorMeta {
            family: Family::V1,
            ell,
            i_vec: i_vec.to_vec(),
            b: None,
            j: Some(j),
        },
    })
}

pub fn build_u2(
    t: &FieldTower,
    p: &Params2,
    ell: usize,
    i_vec: &[u32],
    b: u32,
) -> Result<GeneratorRecord> {
    p.check_tower(t)?;
    let qk2 = t.size(Level::Mid) as u64 - 2;
    check_range("ℓ", ell as u64, 1, p.r as u64 - 1)?;
    check_range("b", b as u64, 0, p.q as u64 - 2)?;
    if i_vec.len() != p.r {
        return Err(Error::InvalidParams(format!("i-vector needs {} entries", p.r)));
    }
    for &i in i_vec {
        check_range("i", i as u64, 0, qk2)?;
    }
    let ir = i_vec[p.r - 1];
    if !p.admissible.contains(&ir) {
        return Err(Error::InvalidParams(format!("i_r = {ir} is not in A")));
    }
    let subspace = generator_subspace(t, p.r, 1, |u, m| {
        if m == ell {
            mid_mul(t, twisted(t, u, b), xi_pow(t, i_vec[m - 1]))
        } else {
            mid_mul(t, u, xi_pow(t, i_vec[m - 1]))
        }
    })?;
    Ok(GeneratorRecord {
        subspace,
        meta: GeneratorMeta {
            family: Family::U2,
            ell,
            i_vec: i_vec.to_vec(),
            b: Some(b),
            j: None,
        },
    })
}

/// All tuples in [0, base)^len, lexicographic.
fn tuples(base: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (base as u64).pow(len as u32);
    (0..total).map(move |mut x| {
        let mut v = vec![0u32; len];
        for slot in v.iter_mut().rev() {
            *slot = (x % base as u64) as u32;
            x /= base as u64;
        }
        v
    })
}

/// Every U-record then every V-record, each in (ℓ, j, i-vector, b) order.
pub fn enumerate_construction1(t: &FieldTower, p: &Params1) -> Result<Vec<GeneratorRecord>> {
    p.check_tower(t)?;
    let qk1 = t.size(Level::Mid) - 1;
    let mut out = Vec::with_capacity((p.u_count() + p.v_count()) as usize);
    for ell in 1..=p.r {
        for j in 1..=p.e {
            for iv in tuples(qk1, p.r) {
                for b in 0..p.q - 1 {
                    out.push(build_u1(t, p, ell, &iv, b, j)?);
                }
            }
        }
    }
    for ell in 1..=p.r {
        for j in 1..=p.e {
            for iv in tuples(qk1, p.r - 1) {
                out.push(build_v1(t, p, ell, &iv, j)?);
            }
        }
    }
    Ok(out)
}

/// Records in (ℓ, i_1..i_{r−1}, i_r ∈ A, b) order.
pub fn enumerate_construction2(t: &FieldTower, p: &Params2) -> Result<Vec<GeneratorRecord>> {
    p.check_tower(t)?;
    let qk1 = t.size(Level::Mid) - 1;
    let mut out = Vec::with_capacity(p.generator_count() as usize);
    for ell in 1..p.r {
        for head in tuples(qk1, p.r - 1) {
            for &ir in &p.admissible {
                let mut iv = head.clone();
                iv.push(ir);
                for b in 0..p.q - 1 {
                    out.push(build_u2(t, p, ell, &iv, b)?);
                }
            }
        }
    }
    Ok(out)
}

/// Parameters of either construction, for files and size formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionParams {
    One(Params1),
    Two(Params2),
}

impl ConstructionParams {
    pub fn id(&self) -> u8 {
        match self {
            ConstructionParams::One(_) => 1,
            ConstructionParams::Two(_) => 2,
        }
    }

    pub fn formula_size(&self) -> BigUint {
        match self {
            ConstructionParams::One(p) => crate::bounds::size_formula_1(p.q, p.k, p.n, p.r),
            ConstructionParams::Two(p) => crate::bounds::size_formula_2(p.q, p.k, p.r),
        }
    }

    pub fn enumerate(&self, t: &FieldTower) -> Result<Vec<GeneratorRecord>> {
        match self {
            ConstructionParams::One(p) => enumerate_construction1(t, p),
            ConstructionParams::Two(p) => enumerate_construction2(t, p),
        }
    }

    /// Why the closed-form size and the enumerated count may differ, if they can.
    pub fn known_discrepancy(&self) -> Option<String> {
        match self {
            ConstructionParams::Two(p) if p.q % 2 == 1 => {
                let stated = crate::bounds::size_formula_2(p.q, p.k, p.r);
                let enumerated = p.enumerated_size();
                (stated != enumerated).then(|| {
                    format!(
                        "for odd q the closed form ⌊(r−1)(q^k−2)(q^k−1)^(r−1)(q^n−1)/2⌋ = {stated} \
                         exceeds (r−1)(q^k−1)^(r−1)·|A|·(q^n−1) = {enumerated} with \
                         |A| = ⌊(q^k−2)/2⌋ = {}; the enumerated count is authoritative",
                        p.admissible.len()
                    )
                })
            }
            _ => None,
        }
    }
}

/// q^k − 1 as a big integer, handy for count checks.
pub fn big_qk1(q: u32, k: usize) -> BigUint {
    BigUint::from(q).pow(k as u32) - BigUint::one()
}
