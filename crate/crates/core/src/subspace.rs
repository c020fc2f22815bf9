//! GF(q)-subspaces of GF(q^n): canonical bases, intersections, distance,
//! cyclic shifts and orbits.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower, Level};

/// A subspace of GF(q^n) held as its RREF basis over GF(q) (rows are
/// flattened vectors). Equal subspaces have identical matrices, so derived
/// equality and hashing are subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    tower: u64,
    n: usize,
    dim: usize,
    rows: Vec<u8>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// n, the dimension of the ambient space GF(q^n) over GF(q).
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.rows.chunks(self.n.max(1))
    }

    /// Canonical key: the RREF matrix bytes, row-major.
    pub fn key(&self) -> &[u8] {
        &self.rows
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson {
            dim: self.dim,
            rows: self
                .rows()
                .map(|r| r.iter().map(|&c| c as u32).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub dim: usize,
    pub rows: Vec<Vec<u32>>,
}

/// The set {αU : α ∈ F*_{q^n}}.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub generator: Subspace,
    /// Distinct members in order of first appearance along ω^0, ω^1, ….
    pub members: Vec<Subspace>,
    /// Number of t in [0, q^n − 1) with ω^t U = U.
    pub stabilizer: u64,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Full-length orbits have (q^n − 1)/(q − 1) members.
    pub fn is_full_length(&self, tower: &FieldTower) -> bool {
        self.members.len() as u64 == tower.projective_count()
    }
}

/// Steps a row set through V, ωV, ω²V, … without reducing.
pub(crate) struct Shifts<'a> {
    tower: &'a FieldTower,
    current: Vec<u8>,
}

impl<'a> Shifts<'a> {
    pub fn new(tower: &'a FieldTower, v: &Subspace) -> Self {
        Shifts {
            tower,
            current: v.rows.clone(),
        }
    }

    pub fn rows(&self) -> &[u8] {
        &self.current
    }

    pub fn advance(&mut self) {
        let t = self.tower;
        self.current = t.gfq.rows_mat(&self.current, &t.shift_matrix, t.n());
    }
}

impl FieldTower {
    fn check_same(&self, u: &Subspace) -> Result<()> {
        if u.tower != self.id() {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    pub(crate) fn subspace_from_matrix(&self, mut rows: Vec<u8>) -> Subspace {
        let n = self.n();
        let dim = self.gfq.rref(&mut rows, n);
        Subspace {
            tower: self.id(),
            n,
            dim,
            rows,
        }
    }

    /// RREF of the flattened vectors.
    pub fn span(&self, vectors: &[FieldElement]) -> Result<Subspace> {
        if vectors.is_empty() {
            return Err(Error::Precondition("at least one vector".into()));
        }
        let mut rows = Vec::with_capacity(vectors.len() * self.n());
        for &v in vectors {
            if v.level() != Level::Top {
                return Err(Error::LevelMismatch {
                    expected: Level::Top,
                    got: v.level(),
                });
            }
            rows.extend(self.flatten_code(v.code()));
        }
        Ok(self.subspace_from_matrix(rows))
    }

    /// Subspace spanned by explicit GF(q) coordinate rows.
    pub fn subspace_from_rows(&self, rows: &[Vec<u32>]) -> Result<Subspace> {
        let n = self.n();
        let q = self.q();
        let mut flat = Vec::with_capacity(rows.len() * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::MalformedSubspace(format!(
                    "row of length {} in a space of dimension {n}",
                    r.len()
                )));
            }
            if let Some(&c) = r.iter().find(|&&c| c >= q) {
                return Err(Error::MalformedSubspace(format!("{c} is not in GF({q})")));
            }
            flat.extend(r.iter().map(|&c| c as u8));
        }
        Ok(self.subspace_from_matrix(flat))
    }

    /// Parses subspace JSON, insisting that the rows are already canonical.
    pub fn subspace_from_json(&self, j: &SubspaceJson) -> Result<Subspace> {
        let s = self.subspace_from_rows(&j.rows)?;
        if s.dim != j.dim || s.to_json() != *j {
            return Err(Error::MalformedSubspace(
                "rows are not a reduced row echelon basis of the stated dimension".into(),
            ));
        }
        Ok(s)
    }

    /// Basis vectors of `u` as top-level elements.
    pub fn basis(&self, u: &Subspace) -> Vec<FieldElement> {
        u.rows()
            .map(|r| FieldElement::new(Level::Top, self.unflatten_code(r)))
            .collect()
    }

    /// Codes of all q^dim elements of `u`, zero first.
    pub(crate) fn element_codes(&self, u: &Subspace) -> Vec<u32> {
        let basis: Vec<u32> = self.basis(u).iter().map(|b| b.code()).collect();
        let q = self.q();
        let mut out = vec![0u32];
        for b in basis {
            let scaled: Vec<u32> = (0..q).map(|c| self.mul_top(c, b)).collect();
            out = out
                .iter()
                .flat_map(|&x| scaled.iter().map(move |&s| (x, s)))
                .map(|(x, s)| self.arith.add(x, s))
                .collect();
        }
        out
    }

    pub fn intersect_dim(&self, u: &Subspace, v: &Subspace) -> Result<usize> {
        self.check_same(u)?;
        self.check_same(v)?;
        Ok(self.intersect_dim_rows(u, &v.rows, v.dim))
    }

    /// `v_rows` must be linearly independent with `v_dim` rows.
    pub(crate) fn intersect_dim_rows(&self, u: &Subspace, v_rows: &[u8], v_dim: usize) -> usize {
        let mut stacked = Vec::with_capacity(u.rows.len() + v_rows.len());
        stacked.extend_from_slice(&u.rows);
        stacked.extend_from_slice(v_rows);
        u.dim + v_dim - self.gfq.rank(&mut stacked, self.n())
    }

    /// d(U, V) = dim U + dim V − 2 dim(U ∩ V).
    pub fn distance(&self, u: &Subspace, v: &Subspace) -> Result<usize> {
        let i = self.intersect_dim(u, v)?;
        Ok(u.dim + v.dim - 2 * i)
    }

    /// αU.
    pub fn scalar_mul(&self, alpha: FieldElement, u: &Subspace) -> Result<Subspace> {
        self.check_same(u)?;
        if alpha.level() != Level::Top {
            return Err(Error::LevelMismatch {
                expected: Level::Top,
                got: alpha.level(),
            });
        }
        if alpha.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let m = self.mul_matrix(alpha.code());
        Ok(self.subspace_from_matrix(self.gfq.rows_mat(&u.rows, &m, self.n())))
    }

    /// Walks α = ω^0, ω^1, …, ω^(q^n − 2) and collects the distinct αU.
    pub fn orbit(&self, u: &Subspace) -> Result<Orbit> {
        self.check_same(u)?;
        if u.dim == 0 {
            return Err(Error::Precondition("a subspace of dimension at least 1".into()));
        }
        let total = self.size(Level::Top) as u64 - 1;
        let mut seen = HashSet::new();
        let mut members = Vec::new();
        let mut stabilizer = 0;
        let mut shifts = Shifts::new(self, u);
        for _ in 0..total {
            let s = self.subspace_from_matrix(shifts.rows().to_vec());
            if s == *u {
                stabilizer += 1;
            }
            if seen.insert(s.clone()) {
                members.push(s);
            }
            shifts.advance();
        }
        Ok(Orbit {
            generator: u.clone(),
            members,
            stabilizer,
        })
    }

    /// |orbit(U)|: the least t ≥ 1 with ω^t U = U. Stops at the first return
    /// instead of collecting members.
    pub fn orbit_length(&self, u: &Subspace) -> Result<u64> {
        self.check_same(u)?;
        if u.dim == 0 {
            return Err(Error::Precondition("a subspace of dimension at least 1".into()));
        }
        let total = self.size(Level::Top) as u64 - 1;
        let mut shifts = Shifts::new(self, u);
        for t in 1..total {
            shifts.advance();
            if self.intersect_dim_rows(u, shifts.rows(), u.dim) == u.dim {
                return Ok(t);
            }
        }
        Ok(total)
    }

    /// GF(q^k) viewed inside GF(q^n): the span of β_0, …, β_{k−1}.
    pub fn mid_field_subspace(&self) -> Subspace {
        let vectors: Vec<FieldElement> = (0..self.k())
            .map(|a| FieldElement::new(Level::Top, self.q().pow(a as u32)))
            .collect();
        self.span(&vectors).expect("top-level vectors")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn top(t: &FieldTower, code: u32) -> FieldElement {
        t.element(Level::Top, code).unwrap()
    }

    #[test]
    fn span_collapses_duplicates() {
        let t = FieldTower::with_q(2, 2, 4).unwrap();
        let x = top(&t, 6);
        assert_eq!(t.span(&[x, x]).unwrap().dim(), 1);
        assert_eq!(t.span(&[t.zero(Level::Top)]).unwrap().dim(), 0);
        assert!(t.span(&[]).is_err());
        assert!(t.span(&[t.one(Level::Mid)]).is_err());
    }

    #[test]
    fn span_of_tower_basis_is_everything() {
        let t = FieldTower::with_q(3, 2, 6).unwrap();
        let mut v = Vec::new();
        let mut g = t.one(Level::Top);
        for _ in 0..t.n() / t.k() {
            for a in 0..t.k() {
                let beta = top(&t, 3u32.pow(a as u32));
                v.push(t.mul(beta, g).unwrap());
            }
            g = t.mul(g, t.gamma()).unwrap();
        }
        assert_eq!(t.span(&v).unwrap().dim(), t.n());
    }

    #[test]
    fn element_codes_of_gf4_in_gf16() {
        let t = FieldTower::with_q(2, 2, 4).unwrap();
        let u = t.mid_field_subspace();
        let mut codes = t.element_codes(&u);
        codes.sort();
        assert_eq!(codes, vec![0, 1, 2, 3]);
    }

    #[test]
    fn element_codes_over_gf4() {
        let t = FieldTower::with_q(4, 2, 4).unwrap();
        let u = t.span(&[t.gamma()]).unwrap();
        let mut codes = t.element_codes(&u);
        codes.sort();
        let mut expected: Vec<u32> = (0..4).map(|c| t.mul_top(c, t.gamma().code())).collect();
        expected.sort();
        assert_eq!(codes, expected);
    }

    #[test]
    fn intersections_and_distance() {
        let t = FieldTower::with_q(2, 2, 4).unwrap();
        let u = t.span(&[top(&t, 1), top(&t, 2)]).unwrap();
        let v = t.span(&[top(&t, 4), top(&t, 8)]).unwrap();
        let w = t.span(&[top(&t, 1), top(&t, 4)]).unwrap();
        assert_eq!(t.intersect_dim(&u, &u).unwrap(), 2);
        assert_eq!(t.intersect_dim(&u, &v).unwrap(), 0);
        assert_eq!(t.distance(&u, &u).unwrap(), 0);
        assert_eq!(t.distance(&u, &v).unwrap(), 4);
        assert_eq!(t.distance(&u, &w).unwrap(), 2);
    }

    #[test]
    fn scalar_mul_basics() {
        let t = FieldTower::with_q(3, 2, 4).unwrap();
        let u = t.span(&[top(&t, 5), top(&t, 31)]).unwrap();
        assert_eq!(t.scalar_mul(t.one(Level::Top), &u).unwrap(), u);
        assert_eq!(t.scalar_mul(top(&t, 2), &u).unwrap(), u);
        let a = top(&t, 17);
        let back = t.scalar_mul(a, &t.scalar_mul(t.inv(a).unwrap(), &u).unwrap()).unwrap();
        assert_eq!(back, u);
        assert_eq!(t.scalar_mul(t.zero(Level::Top), &u), Err(Error::ZeroScalar));
    }

    #[test]
    fn subfield_orbit_is_short() {
        let t = FieldTower::with_q(2, 2, 4).unwrap();
        let u = t.mid_field_subspace();
        let o = t.orbit(&u).unwrap();
        assert_eq!(o.len(), 5);
        assert_eq!(o.stabilizer, 3);
        assert!(!o.is_full_length(&t));
    }

    #[test]
    fn one_dim_orbit_is_projective_line_count() {
        let t = FieldTower::with_q(3, 2, 4).unwrap();
        let u = t.span(&[top(&t, 7)]).unwrap();
        let o = t.orbit(&u).unwrap();
        assert_eq!(o.len() as u64, (81 - 1) / 2);
        assert_eq!(o.len() as u64 * o.stabilizer, 80);
    }

    #[test]
    fn tower_mismatch() {
        let a = FieldTower::with_q(2, 2, 4).unwrap();
        let b = FieldTower::with_q(2, 2, 6).unwrap();
        let u = a.mid_field_subspace();
        let v = b.mid_field_subspace();
        assert_eq!(a.intersect_dim(&u, &v), Err(Error::TowerMismatch));
        assert_eq!(b.distance(&u, &v), Err(Error::TowerMismatch));
    }

    #[test]
    fn json_requires_canonical_rows() {
        let t = FieldTower::with_q(2, 2, 4).unwrap();
        let u = t.mid_field_subspace();
        let j = u.to_json();
        assert_eq!(t.subspace_from_json(&j).unwrap(), u);
        let bad = SubspaceJson {
            dim: 2,
            rows: vec![vec![1, 1, 0, 0], vec![0, 1, 0, 0]],
        };
        assert!(t.subspace_from_json(&bad).is_err());
    }
}
