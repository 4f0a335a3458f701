//! Integer lattices kept in Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::CollectorError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn is_one(&self) -> bool {
        matches!(self, LatticeIndex::Finite(n) if n.is_one())
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// `(d, s, t)` with `s a + t b = d = gcd(a, b) > 0`.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub(crate) fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// Row-style Hermite normal form: pivots strictly increase, are positive,
/// and entries above each pivot lie in `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntLattice {
    pub fn new(dim: usize) -> Self {
        IntLattice { dim, rows: Vec::new() }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: &[BigInt]) -> Result<(), CollectorError> {
        if v.len() != self.dim {
            return Err(CollectorError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut v = v.to_vec();
        while let Some(c) = leading(&v) {
            match self.rows.iter().position(|r| leading(r) == Some(c)) {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    let at = self.rows.iter().position(|r| leading(r) > Some(c)).unwrap_or(self.rows.len());
                    self.rows.insert(at, v);
                    break;
                }
                Some(i) => {
                    let a = self.rows[i][c].clone();
                    let b = v[c].clone();
                    if b.is_multiple_of(&a) {
                        let q = &b / &a;
                        for (x, r) in v.iter_mut().zip(&self.rows[i]) {
                            *x -= &q * r;
                        }
                    } else {
                        let (d, s, t) = ext_gcd(&a, &b);
                        let (ad, bd) = (&a / &d, &b / &d);
                        let row = &self.rows[i];
                        let new_row: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &s * r + &t * x).collect();
                        let new_v: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &ad * x - &bd * r).collect();
                        self.rows[i] = new_row;
                        v = new_v;
                    }
                }
            }
        }
        self.reduce();
        Ok(())
    }

    fn reduce(&mut self) {
        for j in 0..self.rows.len() {
            let p = leading(&self.rows[j]).expect("rows are nonzero");
            let pivot = self.rows[j][p].clone();
            for i in 0..j {
                let q = self.rows[i][p].div_floor(&pivot);
                if !q.is_zero() {
                    let (head, tail) = self.rows.split_at_mut(j);
                    for (x, r) in head[i].iter_mut().zip(&tail[0]) {
                        *x -= &q * r;
                    }
                }
            }
        }
    }

    /// Product of pivots when full rank, else infinite.
    pub fn index(&self) -> LatticeIndex {
        if self.rows.len() < self.dim {
            return LatticeIndex::Infinite;
        }
        let mut acc = BigInt::one();
        for r in &self.rows {
            acc *= &r[leading(r).unwrap()];
        }
        LatticeIndex::Finite(acc)
    }

    /// Rows whose pivot is at column `col` or later; these span the
    /// intersection with the coordinate subspace starting at `col`.
    pub fn tail_from(&self, col: usize) -> IntLattice {
        IntLattice {
            dim: self.dim - col,
            rows: self
                .rows
                .iter()
                .filter(|r| leading(r).is_some_and(|p| p >= col))
                .map(|r| r[col..].to_vec())
                .collect(),
        }
    }
}

/// Functional form of [`IntLattice::insert`].
pub fn hnf_insert(mut lattice: IntLattice, v: &[BigInt]) -> Result<IntLattice, CollectorError> {
    lattice.insert(v)?;
    Ok(lattice)
}

pub fn lattice_index(lattice: &IntLattice) -> LatticeIndex {
    lattice.index()
}
