//! Hankel matrices `(s_{i+j+shift})` and their leading principal minors.
//!
//! Determinants are computed fraction-free: the matrix is scaled to integers
//! by the common denominator of its entries and reduced with Bareiss
//! elimination, whose pivots are exactly the leading principal minors. A
//! zero pivot stops the single pass; the remaining minors are then evaluated
//! one at a time with row pivoting.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PsdVerdict {
    /// Every leading minor is positive.
    Positive,
    /// First negative minor (zero-based index into the minors).
    Refuted { index: usize, value: Rational },
    /// A zero minor came before any negative one; neither refuted nor
    /// certified.
    Degenerate { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HankelReport {
    pub shift: usize,
    pub size: usize,
    pub minors: Vec<Rational>,
    pub verdict: PsdVerdict,
}

/// Leading principal minors of the `size x size` Hankel matrix with entries
/// `seq[i + j + shift]`.
pub fn hankel_minors(seq: &[Rational], shift: usize, size: usize) -> Result<HankelReport> {
    if size > 0 {
        let needed = 2 * (size - 1) + shift;
        if needed >= seq.len() {
            return Err(Error::InsufficientSequence {
                needed,
                available: seq.len(),
            });
        }
    }
    let matrix: Vec<Vec<Rational>> = (0..size)
        .map(|i| (0..size).map(|j| seq[i + j + shift].clone()).collect())
        .collect();
    let minors = leading_principal_minors(&matrix);
    let verdict = psd_verdict(&minors);
    Ok(HankelReport {
        shift,
        size,
        minors,
        verdict,
    })
}

/// Classifies a list of leading minors.
pub fn psd_verdict(minors: &[Rational]) -> PsdVerdict {
    for (index, m) in minors.iter().enumerate() {
        if m.is_negative() {
            return PsdVerdict::Refuted {
                index,
                value: m.clone(),
            };
        }
        if m.is_zero() {
            return PsdVerdict::Degenerate { index };
        }
    }
    PsdVerdict::Positive
}

/// Scales a rational matrix to integers; returns the matrix and the scale.
fn clear_denominators(matrix: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let scale = matrix
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints = matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|r| r.numer() * (&scale / r.denom()))
                .collect()
        })
        .collect();
    (ints, scale)
}

/// Leading principal minors `det(A[..k][..k])` for `k = 1..=n`.
pub fn leading_principal_minors(matrix: &[Vec<Rational>]) -> Vec<Rational> {
    let n = matrix.len();
    let (mut a, scale) = clear_denominators(matrix);
    let mut minors = Vec::with_capacity(n);
    let mut scale_pow = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        scale_pow *= &scale;
        let pivot = a[k][k].clone();
        minors.push(Rational::new(pivot.clone(), scale_pow.clone()));
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &pivot - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = pivot;
    }
    for k in minors.len()..n {
        let sub: Vec<Vec<Rational>> = matrix[..=k].iter().map(|row| row[..=k].to_vec()).collect();
        minors.push(determinant(&sub));
    }
    minors
}

/// Determinant by fraction-free Bareiss elimination with row pivoting.
pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    if n == 0 {
        return Rational::one();
    }
    let (mut a, scale) = clear_denominators(matrix);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = sign * &a[n - 1][n - 1];
    Rational::new(det, num_traits::pow(scale, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ints, ratio};

    /// Leibniz expansion over all permutations; only for tiny matrices.
    fn leibniz(m: &[Vec<Rational>]) -> Rational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return alloc::vec![Vec::new()];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.len();
        let mut total = Rational::zero();
        for p in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = if inversions % 2 == 0 { int(1) } else { int(-1) };
            for (i, &j) in p.iter().enumerate() {
                term *= &m[i][j];
            }
            total += term;
        }
        total
    }

    #[test]
    fn sharpness_minor() {
        for c in [int(0), int(1), int(2), int(-3), ratio(1, 2)] {
            let mut seq = ints(&[1, 0, 1, 0, 2]);
            seq.push(c.clone());
            seq.push(int(5));
            let report = hankel_minors(&seq, 0, 4).unwrap();
            assert_eq!(report.minors[3], int(1) - &c * &c);
        }
    }

    #[test]
    fn shifted_cumulant_witness() {
        let seq = ints(&[1, 2, 6, 21, 80, 322, 1347, 5798, 25512, 114236, 518848]);
        let report = hankel_minors(&seq, 0, 6).unwrap();
        assert_eq!(report.minors, ints(&[1, 2, 7, 38, 228, -3374]));
        assert_eq!(
            report.verdict,
            PsdVerdict::Refuted {
                index: 5,
                value: int(-3374)
            }
        );
    }

    #[test]
    fn point_mass_is_degenerate() {
        let report = hankel_minors(&ints(&[1, 1, 1, 1, 1]), 0, 3).unwrap();
        assert_eq!(report.minors, ints(&[1, 0, 0]));
        assert_eq!(report.verdict, PsdVerdict::Degenerate { index: 1 });
    }

    #[test]
    fn verdicts() {
        assert_eq!(psd_verdict(&ints(&[1, 1, 1, 1])), PsdVerdict::Positive);
        assert_eq!(
            psd_verdict(&ints(&[1, 1, -3])),
            PsdVerdict::Refuted {
                index: 2,
                value: int(-3)
            }
        );
        assert_eq!(
            psd_verdict(&ints(&[1, 0, 0])),
            PsdVerdict::Degenerate { index: 1 }
        );
        assert_eq!(psd_verdict(&[]), PsdVerdict::Positive);
    }

    #[test]
    fn short_sequence_is_rejected() {
        assert_eq!(
            hankel_minors(&ints(&[1, 0, 1]), 0, 3),
            Err(Error::InsufficientSequence {
                needed: 4,
                available: 3
            })
        );
        assert_eq!(
            hankel_minors(&ints(&[1, 0, 1]), 1, 2).unwrap_err(),
            Error::InsufficientSequence {
                needed: 3,
                available: 3
            }
        );
    }

    #[test]
    fn minors_after_a_zero_pivot() {
        // leading 1x1 is zero; larger minors still computed exactly
        let m = alloc::vec![
            alloc::vec![int(0), int(1), int(2)],
            alloc::vec![int(1), ratio(1, 3), int(0)],
            alloc::vec![int(2), int(0), int(5)],
        ];
        let minors = leading_principal_minors(&m);
        assert_eq!(minors[0], int(0));
        assert_eq!(minors[1], int(-1));
        assert_eq!(minors[2], leibniz(&m));
    }

    #[test]
    fn bareiss_agrees_with_leibniz() {
        let seq: Vec<Rational> = (0..11)
            .map(|i| ratio((i * i + 3) % 7 - 2, i % 3 + 1))
            .collect();
        let report = hankel_minors(&seq, 0, 5).unwrap();
        for k in 1..=5 {
            let sub: Vec<Vec<Rational>> = (0..k)
                .map(|i| (0..k).map(|j| seq[i + j].clone()).collect())
                .collect();
            assert_eq!(report.minors[k - 1], leibniz(&sub), "size {k}");
            assert_eq!(determinant(&sub), leibniz(&sub));
        }
    }
}
