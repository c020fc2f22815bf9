//! Exact arithmetic in the tower GF(p) ⊆ GF(q) ⊆ GF(q^k) ⊆ GF(q^n).
//!
//! An element is stored as a packed code: its coefficient vector over the
//! field one level down, written in base (size of that field), least
//! significant coefficient first. Each level's size is a power of the level
//! below, so the code of any element is also the base-p expansion of its
//! full GF(p) coordinate vector. Two consequences are used throughout:
//! addition is digitwise mod p at every level, and embedding an element into
//! a higher level leaves its code unchanged.
//!
//! The canonical order on elements is numeric order on codes.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Fields up to this size get exp/log tables.
const TABLE_LIMIT: u32 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// GF(p)
    Prime,
    /// GF(q), q = p^e
    Base,
    /// GF(q^k)
    Mid,
    /// GF(q^n)
    Top,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Prime, Level::Base, Level::Mid, Level::Top];

    pub fn index(self) -> usize {
        self as usize
    }

    fn from_index(i: usize) -> Level {
        Level::ALL[i]
    }

    pub fn below(self) -> Option<Level> {
        self.index().checked_sub(1).map(Level::from_index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    level: Level,
    code: u32,
}

impl FieldElement {
    pub(crate) fn new(level: Level, code: u32) -> Self {
        FieldElement { level, code }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Packed coefficient code; also the element's rank in canonical order.
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
}

#[derive(Debug, Clone)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Debug, Clone)]
pub(crate) struct LevelData {
    pub size: u32,
    pub sub_size: u32,
    pub degree: usize,
    /// Monic modulus over the level below, low degree first. Empty for GF(p).
    pub modulus: Vec<u32>,
    tables: Option<LogTables>,
}

/// Raw arithmetic on codes for the levels built so far.
#[derive(Debug, Clone)]
pub(crate) struct Arith {
    pub p: u32,
    pub levels: Vec<LevelData>,
}

impl Arith {
    fn new(p: u32) -> Self {
        Arith {
            p,
            levels: vec![LevelData {
                size: p,
                sub_size: p,
                degree: 1,
                modulus: Vec::new(),
                tables: None,
            }],
        }
    }

    pub fn size(&self, lvl: usize) -> u32 {
        self.levels[lvl].size
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p as u64;
        let (mut a, mut b) = (a as u64, b as u64);
        let (mut out, mut w) = (0u64, 1u64);
        while a != 0 || b != 0 {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        out as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let p = self.p as u64;
        let mut a = a as u64;
        let (mut out, mut w) = (0u64, 1u64);
        while a != 0 {
            out += ((p - a % p) % p) * w;
            a /= p;
            w *= p;
        }
        out as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn digits(&self, lvl: usize, mut a: u32) -> Vec<u32> {
        let ld = &self.levels[lvl];
        let mut out = Vec::with_capacity(ld.degree);
        for _ in 0..ld.degree {
            out.push(a % ld.sub_size);
            a /= ld.sub_size;
        }
        out
    }

    pub fn pack_digits(&self, lvl: usize, digits: &[u32]) -> u32 {
        let sub = self.levels[lvl].sub_size;
        digits.iter().rev().fold(0u32, |acc, &d| acc * sub + d)
    }

    pub fn mul(&self, lvl: usize, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let ld = &self.levels[lvl];
        if let Some(t) = &ld.tables {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize];
        }
        if lvl == 0 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        self.mul_poly(lvl, a, b)
    }

    fn mul_poly(&self, lvl: usize, a: u32, b: u32) -> u32 {
        let ld = &self.levels[lvl];
        let d = ld.degree;
        let xa = self.digits(lvl, a);
        let xb = self.digits(lvl, b);
        let mut prod = vec![0u32; 2 * d - 1];
        for (i, &ca) in xa.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in xb.iter().enumerate() {
                if cb != 0 {
                    prod[i + j] = self.add(prod[i + j], self.mul(lvl - 1, ca, cb));
                }
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for t in 0..d {
                let m = ld.modulus[t];
                if m != 0 {
                    prod[i - d + t] = self.sub(prod[i - d + t], self.mul(lvl - 1, c, m));
                }
            }
            prod[i] = 0;
        }
        self.pack_digits(lvl, &prod[..d])
    }

    pub fn pow(&self, lvl: usize, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(lvl, acc, base);
            }
            base = self.mul(lvl, base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, lvl: usize, a: u32) -> u32 {
        debug_assert!(a != 0);
        let ld = &self.levels[lvl];
        if let Some(t) = &ld.tables {
            let order = ld.size - 1;
            return t.exp[((order - t.log[a as usize]) % order) as usize];
        }
        self.pow(lvl, a, ld.size as u64 - 2)
    }

    fn is_primitive(&self, lvl: usize, g: u32, factors: &[u64]) -> bool {
        let order = self.size(lvl) as u64 - 1;
        g != 0 && factors.iter().all(|&f| self.pow(lvl, g, order / f) != 1)
    }

    /// Least code whose multiplicative order is size − 1.
    pub fn find_primitive(&self, lvl: usize) -> u32 {
        let size = self.size(lvl);
        let factors = prime_factors(size as u64 - 1);
        (1..size)
            .find(|&g| self.is_primitive(lvl, g, &factors))
            .expect("every finite field has a primitive element")
    }

    fn push_level(&mut self, degree: usize, modulus: Vec<u32>) {
        let sub_size = self.levels.last().unwrap().size;
        let size = (sub_size as u64).pow(degree as u32) as u32;
        self.levels.push(LevelData {
            size,
            sub_size,
            degree,
            modulus,
            tables: None,
        });
        let lvl = self.levels.len() - 1;
        if size <= TABLE_LIMIT && size > 2 {
            let g = self.find_primitive(lvl);
            let order = (size - 1) as usize;
            let mut exp = vec![0u32; 2 * order];
            let mut log = vec![0u32; size as usize];
            let mut x = 1u32;
            for i in 0..order {
                exp[i] = x;
                exp[i + order] = x;
                log[x as usize] = i as u32;
                x = self.mul(lvl, x, g);
            }
            self.levels[lvl].tables = Some(LogTables { exp, log });
        }
    }
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn is_prime(p: u64) -> bool {
    p >= 2 && prime_factors(p) == [p]
}

/// Parameters for building a tower. Absent moduli and ξ come from the
/// canonical scan.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TowerConfig {
    pub p: u32,
    pub e: usize,
    pub k: usize,
    pub n: usize,
    pub modulus_q: Option<Vec<u32>>,
    pub modulus_k: Option<Vec<u32>>,
    pub modulus_n: Option<Vec<u32>>,
    pub xi: Option<u32>,
}

impl TowerConfig {
    /// Splits the prime power `q` into p^e.
    pub fn for_q(q: u64, k: usize, n: usize) -> Result<Self> {
        let (p, e) = split_prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("q = {q} is not a prime power")))?;
        Ok(TowerConfig {
            p,
            e,
            k,
            n,
            ..Default::default()
        })
    }
}

pub fn split_prime_power(q: u64) -> Option<(u32, usize)> {
    let f = prime_factors(q);
    if f.len() != 1 || q < 2 {
        return None;
    }
    let p = f[0];
    let mut e = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        e += 1;
    }
    Some((u32::try_from(p).ok()?, e))
}

/// JSON description of a tower.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u32,
    pub e: usize,
    pub k: usize,
    pub n: usize,
    pub modulus_q: Option<Vec<u32>>,
    pub modulus_k: Vec<u32>,
    pub modulus_n: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<u32>,
}

/// The chain GF(p) ⊆ GF(q) ⊆ GF(q^k) ⊆ GF(q^n) with GF(q^n) = GF(q^k)[x]/(f).
///
/// Immutable once built; every method is a pure function of its inputs.
#[derive(Debug, Clone)]
pub struct FieldTower {
    pub(crate) arith: Arith,
    e: usize,
    k: usize,
    n: usize,
    has_modulus_q: bool,
    xi: u32,
    top_primitive: u32,
    id: u64,
    pub(crate) gfq: crate::linalg::Gfq,
    /// n×n matrix of multiplication by the top-level primitive element.
    pub(crate) shift_matrix: Vec<u8>,
}

impl FieldTower {
    pub fn new(cfg: &TowerConfig) -> Result<Self> {
        let bad = |s: String| Err(Error::InvalidField(s));
        if !is_prime(cfg.p as u64) {
            return bad(format!("p = {} is not prime", cfg.p));
        }
        if cfg.e == 0 {
            return bad("e must be at least 1".into());
        }
        if cfg.k < 2 {
            return bad(format!("k = {} must be at least 2", cfg.k));
        }
        if !cfg.n.is_multiple_of(cfg.k) {
            return bad(format!("k = {} does not divide n = {}", cfg.k, cfg.n));
        }
        if cfg.n / cfg.k < 2 {
            return bad(format!("n/k = {} must be at least 2", cfg.n / cfg.k));
        }
        let exponent = cfg.e as u32 * cfg.n as u32;
        let top = (cfg.p as u64).checked_pow(exponent).filter(|&s| s <= u32::MAX as u64);
        if top.is_none() {
            return bad(format!("q^n = {}^{} does not fit in 32 bits", cfg.p, exponent));
        }
        if cfg.e == 1 && cfg.modulus_q.is_some() {
            return bad("modulus_q given but q is prime".into());
        }

        let mut arith = Arith::new(cfg.p);
        let steps = [
            (cfg.e, &cfg.modulus_q, "modulus_q"),
            (cfg.k, &cfg.modulus_k, "modulus_k"),
            (cfg.n / cfg.k, &cfg.modulus_n, "modulus_n"),
        ];
        for (lvl, (degree, given, name)) in steps.into_iter().enumerate() {
            let modulus = if lvl == 0 && degree == 1 {
                vec![0, 1]
            } else {
                match given {
                    Some(m) => {
                        check_modulus(&arith, lvl, degree, m)
                            .map_err(|e| Error::InvalidField(format!("{name}: {e}")))?;
                        m.clone()
                    }
                    None => poly::find_irreducible(&arith, lvl, degree),
                }
            };
            arith.push_level(degree, modulus);
        }

        let xi = match cfg.xi {
            Some(x) => {
                let size = arith.size(2);
                let factors = prime_factors(size as u64 - 1);
                if x >= size || !arith.is_primitive(2, x, &factors) {
                    return Err(Error::InvalidField(format!("xi: {}", Error::NotPrimitive(x))));
                }
                x
            }
            None => arith.find_primitive(2),
        };
        let top_primitive = arith.find_primitive(3);

        let mut tower = FieldTower {
            e: cfg.e,
            k: cfg.k,
            n: cfg.n,
            has_modulus_q: cfg.e > 1,
            xi,
            top_primitive,
            id: 0,
            gfq: crate::linalg::Gfq::new(&arith),
            shift_matrix: Vec::new(),
            arith,
        };
        let mut h = DefaultHasher::new();
        tower.description().hash(&mut h);
        tower.id = h.finish();
        tower.shift_matrix = tower.mul_matrix(top_primitive);
        Ok(tower)
    }

    pub fn with_q(q: u64, k: usize, n: usize) -> Result<Self> {
        Self::new(&TowerConfig::for_q(q, k, n)?)
    }

    pub fn from_description(d: &FieldDescription) -> Result<Self> {
        Self::new(&TowerConfig {
            p: d.p,
            e: d.e,
            k: d.k,
            n: d.n,
            modulus_q: d.modulus_q.clone(),
            modulus_k: Some(d.modulus_k.clone()),
            modulus_n: Some(d.modulus_n.clone()),
            xi: d.xi,
        })
    }

    pub fn description(&self) -> FieldDescription {
        FieldDescription {
            p: self.p(),
            e: self.e,
            k: self.k,
            n: self.n,
            modulus_q: self.has_modulus_q.then(|| self.arith.levels[1].modulus.clone()),
            modulus_k: self.arith.levels[2].modulus.clone(),
            modulus_n: self.arith.levels[3].modulus.clone(),
            xi: Some(self.xi),
        }
    }

    pub fn p(&self) -> u32 {
        self.arith.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.arith.size(1)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn id(&self) -> u64 {
        self.id
    }

    pub fn size(&self, level: Level) -> u32 {
        self.arith.size(level.index())
    }

    /// Modulus of `level` over the level below, low degree first.
    /// GF(p) has none; GF(q) with e = 1 reports the trivial `x`.
    pub fn modulus(&self, level: Level) -> &[u32] {
        &self.arith.levels[level.index()].modulus
    }

    /// The modulus f defining GF(q^n) over GF(q^k).
    pub fn modulus_n(&self) -> &[u32] {
        self.modulus(Level::Top)
    }

    /// Primitive element ξ of GF(q^k).
    pub fn xi(&self) -> FieldElement {
        FieldElement::new(Level::Mid, self.xi)
    }

    /// γ, the class of x in GF(q^k)[x]/(f).
    pub fn gamma(&self) -> FieldElement {
        FieldElement::new(Level::Top, self.arith.size(2))
    }

    /// Primitive element of GF(q^n) used to step through shifts.
    pub fn top_primitive(&self) -> FieldElement {
        FieldElement::new(Level::Top, self.top_primitive)
    }

    /// Number of shifts αU needed to cover F*_{q^n}/F*_q.
    pub fn projective_count(&self) -> u64 {
        (self.size(Level::Top) as u64 - 1) / (self.q() as u64 - 1)
    }

    pub fn element(&self, level: Level, code: u32) -> Result<FieldElement> {
        let size = self.size(level);
        if code >= size {
            return Err(Error::ElementOutOfRange {
                level,
                code: code as u64,
                size: size as u64,
            });
        }
        Ok(FieldElement::new(level, code))
    }

    pub fn zero(&self, level: Level) -> FieldElement {
        FieldElement::new(level, 0)
    }

    pub fn one(&self, level: Level) -> FieldElement {
        FieldElement::new(level, 1)
    }

    /// Builds an element from its coefficients over the level below.
    pub fn from_coeffs(&self, level: Level, coeffs: &[u32]) -> Result<FieldElement> {
        let ld = &self.arith.levels[level.index()];
        if level == Level::Prime {
            return match coeffs {
                [c] => self.element(level, *c),
                _ => Err(Error::Precondition("one coefficient for GF(p)".into())),
            };
        }
        if coeffs.len() != ld.degree {
            return Err(Error::Precondition(format!(
                "{} coefficients, got {}",
                ld.degree,
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= ld.sub_size) {
            return Err(Error::ElementOutOfRange {
                level: level.below().unwrap(),
                code: c as u64,
                size: ld.sub_size as u64,
            });
        }
        Ok(FieldElement::new(level, self.arith.pack_digits(level.index(), coeffs)))
    }

    /// Coefficients over the level below (a single residue for GF(p)).
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        if x.level == Level::Prime {
            return vec![x.code];
        }
        self.arith.digits(x.level.index(), x.code)
    }

    /// Reinterprets `x` as an element of the higher level `to`.
    pub fn embed(&self, x: FieldElement, to: Level) -> Result<FieldElement> {
        if to < x.level {
            return Err(Error::LevelMismatch {
                expected: x.level,
                got: to,
            });
        }
        Ok(FieldElement::new(to, x.code))
    }

    fn same_level(x: FieldElement, y: FieldElement) -> Result<Level> {
        if x.level != y.level {
            return Err(Error::LevelMismatch {
                expected: x.level,
                got: y.level,
            });
        }
        Ok(x.level)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let l = Self::same_level(x, y)?;
        Ok(FieldElement::new(l, self.arith.add(x.code, y.code)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let l = Self::same_level(x, y)?;
        Ok(FieldElement::new(l, self.arith.sub(x.code, y.code)))
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        FieldElement::new(x.level, self.arith.neg(x.code))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let l = Self::same_level(x, y)?;
        Ok(FieldElement::new(l, self.arith.mul(l.index(), x.code, y.code)))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        FieldElement::new(x.level, self.arith.pow(x.level.index(), x.code, e))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(FieldElement::new(x.level, self.arith.inv(x.level.index(), x.code)))
    }

    /// x ↦ x^q.
    pub fn frobenius_q(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.q() as u64)
    }

    pub fn is_irreducible(&self, base: Level, poly: &[u32]) -> Result<bool> {
        let lvl = base.index();
        let size = self.arith.size(lvl);
        if let Some(&c) = poly.iter().find(|&&c| c >= size) {
            return Err(Error::ElementOutOfRange {
                level: base,
                code: c as u64,
                size: size as u64,
            });
        }
        poly::is_irreducible(&self.arith, lvl, poly)
    }

    /// Least monic irreducible of `degree` over `base` in canonical order.
    pub fn find_irreducible(&self, degree: usize, base: Level) -> Result<Vec<u32>> {
        if degree == 0 {
            return Err(Error::Precondition("degree at least 1".into()));
        }
        Ok(poly::find_irreducible(&self.arith, base.index(), degree))
    }

    /// Least element of `level` (canonical order) generating its multiplicative group.
    pub fn find_primitive(&self, level: Level) -> FieldElement {
        FieldElement::new(level, self.arith.find_primitive(level.index()))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let lvl = x.level.index();
        let mut order = self.arith.size(lvl) as u64 - 1;
        for f in prime_factors(order) {
            while order.is_multiple_of(f) && self.arith.pow(lvl, x.code, order / f) == 1 {
                order /= f;
            }
        }
        Ok(order)
    }

    /// Coordinates over GF(q) in the basis {β_a γ^b}, index b·k + a,
    /// with β_a = y^a the polynomial basis of GF(q^k).
    pub fn flatten(&self, x: FieldElement) -> Result<Vec<u32>> {
        if x.level != Level::Top {
            return Err(Error::LevelMismatch {
                expected: Level::Top,
                got: x.level,
            });
        }
        Ok(self.flatten_code(x.code).into_iter().map(u32::from).collect())
    }

    pub fn unflatten(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() != self.n {
            return Err(Error::Precondition(format!("{} coordinates", self.n)));
        }
        let q = self.q();
        if let Some(&c) = coords.iter().find(|&&c| c >= q) {
            return Err(Error::ElementOutOfRange {
                level: Level::Base,
                code: c as u64,
                size: q as u64,
            });
        }
        let code = coords.iter().rev().fold(0u32, |acc, &c| acc * q + c);
        Ok(FieldElement::new(Level::Top, code))
    }

    pub(crate) fn flatten_code(&self, mut code: u32) -> Vec<u8> {
        let q = self.q();
        (0..self.n)
            .map(|_| {
                let c = code % q;
                code /= q;
                c as u8
            })
            .collect()
    }

    pub(crate) fn unflatten_code(&self, coords: &[u8]) -> u32 {
        let q = self.q();
        coords.iter().rev().fold(0u32, |acc, &c| acc * q + c as u32)
    }

    /// Row i is flatten(α · e_i), so a coordinate row vector v maps to v·M = flatten(α·v).
    pub(crate) fn mul_matrix(&self, alpha: u32) -> Vec<u8> {
        let q = self.q();
        let mut m = Vec::with_capacity(self.n * self.n);
        let mut unit = 1u32;
        for _ in 0..self.n {
            m.extend(self.flatten_code(self.arith.mul(3, alpha, unit)));
            unit *= q;
        }
        m
    }

    pub(crate) fn mul_top(&self, a: u32, b: u32) -> u32 {
        self.arith.mul(3, a, b)
    }
}

fn check_modulus(arith: &Arith, base: usize, degree: usize, m: &[u32]) -> Result<()> {
    if m.len() != degree + 1 {
        return Err(Error::Precondition(format!("degree {degree} modulus")));
    }
    let size = arith.size(base);
    if let Some(&c) = m.iter().find(|&&c| c >= size) {
        return Err(Error::ElementOutOfRange {
            level: Level::from_index(base),
            code: c as u64,
            size: size as u64,
        });
    }
    if !poly::is_irreducible(arith, base, m)? {
        return Err(Error::Reducible);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4_in_16() -> FieldTower {
        FieldTower::with_q(2, 2, 4).unwrap()
    }

    #[test]
    fn gf4_arithmetic() {
        let t = gf4_in_16();
        assert_eq!(t.modulus(Level::Mid), &[1, 1, 1]);
        let w = t.element(Level::Mid, 2).unwrap();
        let w1 = t.element(Level::Mid, 3).unwrap();
        assert_eq!(t.add(w, w1).unwrap(), t.one(Level::Mid));
        assert_eq!(t.mul(w, w).unwrap(), w1);
        assert_eq!(t.inv(w).unwrap(), w1);
        assert_eq!(t.frobenius_q(w), w1);
        assert_eq!(t.xi(), w);
    }

    #[test]
    fn gf2_basics() {
        let t = gf4_in_16();
        let one = t.one(Level::Base);
        assert!(t.add(one, one).unwrap().is_zero());
        assert_eq!(t.find_primitive(Level::Base), one);
        assert_eq!(t.inv(one).unwrap(), one);
    }

    #[test]
    fn level_mismatch_and_zero_inverse() {
        let t = gf4_in_16();
        let a = t.one(Level::Mid);
        let b = t.one(Level::Top);
        assert!(matches!(t.add(a, b), Err(Error::LevelMismatch { .. })));
        assert!(matches!(t.mul(a, b), Err(Error::LevelMismatch { .. })));
        assert_eq!(t.inv(t.zero(Level::Top)), Err(Error::ZeroInverse));
        assert!(t.flatten(a).is_err());
    }

    #[test]
    fn gamma_satisfies_modulus() {
        let t = FieldTower::with_q(3, 2, 8).unwrap();
        let g = t.gamma();
        let f = t.modulus_n();
        let mut acc = t.zero(Level::Top);
        let mut pw = t.one(Level::Top);
        for &c in f {
            let c = t.embed(t.element(Level::Mid, c).unwrap(), Level::Top).unwrap();
            acc = t.add(acc, t.mul(c, pw).unwrap()).unwrap();
            pw = t.mul(pw, g).unwrap();
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn gamma_power_reduces_by_modulus() {
        let t = FieldTower::with_q(2, 2, 8).unwrap();
        let d = t.n() / t.k();
        let lhs = t.pow(t.gamma(), d as u64);
        // γ^d = −(f0 + f1 γ + … + f_{d−1} γ^{d−1})
        let f = t.modulus_n();
        let coeffs: Vec<u32> = f[..d].iter().map(|&c| t.arith.neg(c)).collect();
        assert_eq!(lhs, t.from_coeffs(Level::Top, &coeffs).unwrap());
    }

    #[test]
    fn flatten_basics() {
        let t = FieldTower::with_q(2, 2, 10).unwrap();
        assert_eq!(t.flatten(t.zero(Level::Top)).unwrap(), vec![0; 10]);
        let mut unit = vec![0; 10];
        unit[2] = 1;
        assert_eq!(t.flatten(t.gamma()).unwrap(), unit);
    }

    #[test]
    fn xi_has_full_order() {
        for (q, k, n) in [(2, 2, 4), (2, 3, 12), (3, 2, 8), (4, 2, 4)] {
            let t = FieldTower::with_q(q, k, n).unwrap();
            let size = t.size(Level::Mid) as u64;
            assert_eq!(t.order(t.xi()).unwrap(), size - 1);
            assert_eq!(t.order(t.top_primitive()).unwrap(), t.size(Level::Top) as u64 - 1);
        }
    }

    #[test]
    fn gf9_primitive_scan() {
        let t = FieldTower::with_q(3, 2, 4).unwrap();
        assert_eq!(t.modulus(Level::Mid), &[1, 0, 1]);
        // enumerate powers of each candidate; the least one with eight distinct powers wins
        let expected = (1..9u32)
            .find(|&g| {
                let x = t.element(Level::Mid, g).unwrap();
                let mut seen = std::collections::HashSet::new();
                let mut y = t.one(Level::Mid);
                for _ in 0..8 {
                    seen.insert(y);
                    y = t.mul(y, x).unwrap();
                }
                seen.len() == 8
            })
            .unwrap();
        assert_eq!(t.xi().code(), expected);
        assert_eq!(t.order(t.xi()).unwrap(), 8);
    }

    #[test]
    fn invalid_configs() {
        assert!(FieldTower::with_q(6, 2, 4).is_err());
        assert!(FieldTower::with_q(2, 2, 9).is_err());
        assert!(FieldTower::with_q(2, 1, 4).is_err());
        assert!(FieldTower::with_q(2, 4, 4).is_err());
        let mut cfg = TowerConfig::for_q(2, 2, 4).unwrap();
        cfg.modulus_k = Some(vec![1, 0, 1]);
        assert!(FieldTower::new(&cfg).is_err());
        cfg.modulus_k = None;
        cfg.xi = Some(1);
        assert!(FieldTower::new(&cfg).is_err());
    }

    #[test]
    fn prime_power_q() {
        let t = FieldTower::with_q(4, 2, 4).unwrap();
        assert_eq!(t.q(), 4);
        assert_eq!(t.description().modulus_q, Some(vec![1, 1, 1]));
        assert_eq!(t.size(Level::Top), 256);
        let lam = t.element(Level::Base, 2).unwrap();
        assert_eq!(t.frobenius_q(lam), lam);
    }

    #[test]
    fn deterministic_construction() {
        let a = FieldTower::with_q(3, 2, 8).unwrap();
        let b = FieldTower::with_q(3, 2, 8).unwrap();
        assert_eq!(a.description(), b.description());
        assert_eq!(a.top_primitive(), b.top_primitive());
        let c = FieldTower::from_description(&a.description()).unwrap();
        assert_eq!(c.id(), a.id());
    }
}
