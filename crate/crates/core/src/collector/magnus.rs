//! Truncated Magnus algebra `Z<<X_1..X_r>> / (degree > c)`.
//!
//! `a_i -> 1 + X_i` embeds the free nilpotent group of rank `r` and class
//! `c` into the units of this algebra, so products computed here are an
//! exact model independent of collection.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MagnusElement {
    pub(crate) coeffs: Vec<BigInt>,
}

impl MagnusElement {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }
}

/// Monomials of degree `d` are indexed by base-`rank` digit strings after `offset(d)`.
#[derive(Clone, Debug)]
pub struct Magnus {
    rank: usize,
    class: usize,
    offsets: Vec<usize>,
    powers: Vec<usize>,
}

impl Magnus {
    pub fn new(rank: usize, class: usize) -> Self {
        let powers: Vec<usize> = (0..=class).map(|d| rank.pow(d as u32)).collect();
        let mut offsets = vec![0];
        for d in 0..=class {
            offsets.push(offsets[d] + powers[d]);
        }
        Magnus {
            rank,
            class,
            offsets,
            powers,
        }
    }

    pub fn dimension(&self) -> usize {
        self.offsets[self.class + 1]
    }

    pub fn one(&self) -> MagnusElement {
        let mut coeffs = vec![BigInt::zero(); self.dimension()];
        coeffs[0] = BigInt::one();
        MagnusElement { coeffs }
    }

    pub fn is_one(&self, x: &MagnusElement) -> bool {
        x.coeffs[0].is_one() && x.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `1 + X_i`
    pub fn generator(&self, i: usize) -> MagnusElement {
        let mut x = self.one();
        if self.class >= 1 {
            x.coeffs[self.offsets[1] + i] = BigInt::one();
        }
        x
    }

    /// Homogeneous component of degree `d`.
    pub fn degree_part<'a>(&self, x: &'a MagnusElement, d: usize) -> &'a [BigInt] {
        &x.coeffs[self.offsets[d]..self.offsets[d + 1]]
    }

    pub fn mul(&self, x: &MagnusElement, y: &MagnusElement) -> MagnusElement {
        let mut out = vec![BigInt::zero(); self.dimension()];
        for d1 in 0..=self.class {
            for i1 in 0..self.powers[d1] {
                let a = &x.coeffs[self.offsets[d1] + i1];
                if a.is_zero() {
                    continue;
                }
                for d2 in 0..=(self.class - d1) {
                    let base = self.offsets[d1 + d2] + i1 * self.powers[d2];
                    for i2 in 0..self.powers[d2] {
                        let b = &y.coeffs[self.offsets[d2] + i2];
                        if !b.is_zero() {
                            out[base + i2] += a * b;
                        }
                    }
                }
            }
        }
        MagnusElement { coeffs: out }
    }

    /// Inverse of a unit with constant term 1: `sum_k (-n)^k` where `x = 1 + n`.
    pub fn inverse(&self, x: &MagnusElement) -> MagnusElement {
        assert!(x.coeffs[0].is_one(), "Magnus element must have constant term 1");
        let mut neg = x.clone();
        neg.coeffs[0] = BigInt::zero();
        for c in neg.coeffs.iter_mut() {
            *c = -&*c;
        }
        let mut acc = self.one();
        let mut term = self.one();
        for _ in 0..self.class {
            term = self.mul(&term, &neg);
            for (a, t) in acc.coeffs.iter_mut().zip(&term.coeffs) {
                *a += t;
            }
        }
        acc
    }

    pub fn pow(&self, x: &MagnusElement, k: &BigInt) -> MagnusElement {
        let base = if k.is_negative() { self.inverse(x) } else { x.clone() };
        let mut e = k.abs();
        let mut acc = self.one();
        let mut sq = base;
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                acc = self.mul(&acc, &sq);
            }
            e /= &two;
            if !e.is_zero() {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// `x^-1 y^-1 x y`
    pub fn comm(&self, x: &MagnusElement, y: &MagnusElement) -> MagnusElement {
        let xi = self.inverse(x);
        let yi = self.inverse(y);
        self.mul(&self.mul(&xi, &yi), &self.mul(x, y))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_inverse() {
        let m = Magnus::new(2, 4);
        let a = m.generator(0);
        let ai = m.inverse(&a);
        assert!(m.is_one(&m.mul(&a, &ai)));
        assert!(m.is_one(&m.mul(&ai, &a)));
        // (1+X)^-1 = 1 - X + X^2 - X^3 + X^4
        let expected: Vec<i64> = vec![1, -1, 1, -1, 1];
        for (d, e) in expected.iter().enumerate() {
            assert_eq!(m.degree_part(&ai, d)[0], BigInt::from(*e));
        }
    }

    #[test]
    fn commutator_leading_term() {
        // [a,b] = 1 + (XY - YX) + higher
        let m = Magnus::new(2, 3);
        let c = m.comm(&m.generator(0), &m.generator(1));
        assert!(m.degree_part(&c, 1).iter().all(Zero::is_zero));
        let deg2: Vec<BigInt> = m.degree_part(&c, 2).to_vec();
        // monomials XX, XY, YX, YY
        assert_eq!(deg2, vec![0, 1, -1, 0].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let m = Magnus::new(3, 3);
        let x = m.mul(&m.generator(0), &m.inverse(&m.generator(2)));
        let mut acc = m.one();
        for _ in 0..5 {
            acc = m.mul(&acc, &x);
        }
        assert_eq!(m.pow(&x, &BigInt::from(5)), acc);
        assert!(m.is_one(&m.mul(&m.pow(&x, &BigInt::from(-7)), &m.pow(&x, &BigInt::from(7)))));
    }
}
