//! Exact linear algebra: fraction-free (Bareiss) determinants and ranks over
//! integral domains, and reduced row echelon form over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{internal, Result};
use crate::poly::LaurentPoly;

/// The operations Bareiss elimination needs from a coefficient ring.
pub trait Domain: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient, `None` when `other` does not divide `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl Domain for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Domain for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero_like(self)
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one_like(self)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        LaurentPoly::div_exact(self, other)
    }
}

/// Determinant by Bareiss elimination. `proto` fixes the ring for the empty
/// matrix.
pub fn determinant<T: Domain>(mut m: Vec<Vec<T>>, proto: &T) -> Result<T> {
    let n = m.len();
    if n == 0 {
        return Ok(proto.one_like());
    }
    let mut negate = false;
    let mut prev = proto.one_like();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(proto.zero_like()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| internal("Bareiss division was not exact"))?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Rank over the fraction field, by fraction-free elimination.
pub fn rank<T: Domain>(mut m: Vec<Vec<T>>, proto: &T) -> Result<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = proto.one_like();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = m[i][j].mul(&m[r][c]).sub(&m[i][c].mul(&m[r][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| internal("Bareiss division was not exact"))?;
            }
            m[i][c] = proto.zero_like();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Ok(r)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut().skip(c) {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Outcome of solving `A x = b` over the rationals.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    /// A particular solution (free variables set to zero) together with the
    /// dimension of the solution space.
    Consistent {
        solution: Vec<BigRational>,
        nullity: usize,
    },
    /// `rank(A) < rank([A | b])`.
    Inconsistent { rank: usize, augmented_rank: usize },
}

pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> LinearSolution {
    let unknowns = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&unknowns) {
        return LinearSolution::Inconsistent {
            rank: pivots.len() - 1,
            augmented_rank: pivots.len(),
        };
    }
    let mut x = vec![BigRational::zero(); unknowns];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][unknowns].clone();
    }
    LinearSolution::Consistent {
        solution: x,
        nullity: unknowns - pivots.len(),
    }
}

/// Rank of a rational matrix.
pub fn rational_rank(a: &[Vec<BigRational>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    #[test]
    fn integer_determinants() {
        let one = BigInt::one();
        assert_eq!(determinant(z(&[&[2, 1], &[1, 1]]), &one).unwrap(), BigInt::from(1));
        assert_eq!(
            determinant(z(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]), &one).unwrap(),
            BigInt::from(-3)
        );
        assert_eq!(determinant(z(&[&[1, 2], &[2, 4]]), &one).unwrap(), BigInt::zero());
    }

    #[test]
    fn ranks() {
        let one = BigInt::one();
        assert_eq!(rank(z(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]), &one).unwrap(), 2);
        assert_eq!(rank(z(&[&[0, 0], &[0, 0]]), &one).unwrap(), 0);
        assert_eq!(rank(z(&[&[0, 1], &[1, 0], &[1, 1]]), &one).unwrap(), 2);
    }

    #[test]
    fn polynomial_determinant() {
        let t = |s: &str| LaurentPoly::parse(&["t"], s).unwrap();
        let m = vec![vec![t("t"), t("1")], vec![t("1"), t("t^-1")]];
        assert!(determinant(m, &t("1")).unwrap().is_zero());
        let m = vec![vec![t("1 - t"), t("-1")], vec![t("t"), t("2 - t")]];
        assert_eq!(determinant(m, &t("1")).unwrap(), t("2 - 2t + t^2"));
    }

    #[test]
    fn inconsistent_system() {
        let q = |n: i64| BigRational::from_integer(BigInt::from(n));
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        let b = vec![q(1), q(3)];
        assert_eq!(
            solve(&a, &b),
            LinearSolution::Inconsistent {
                rank: 1,
                augmented_rank: 2
            }
        );
    }
}
