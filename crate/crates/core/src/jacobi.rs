//! Jacobi coefficients of a moment functional.
//!
//! Monic orthogonal polynomials satisfy
//! `x p_n = p_{n+1} + b_n p_n + c_{n-1} p_{n-1}`. The Stieltjes procedure
//! builds them directly against the functional `L(x^k) = m_k`:
//! `b_n = L(x p_n^2) / L(p_n^2)` and `c_{n-1} = L(p_n^2) / L(p_{n-1}^2)`.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::transforms::MomentSequence;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct JacobiCoefficients {
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

impl JacobiCoefficients {
    /// True if the recursion stopped at a vanishing `c_N` (finitely many
    /// atoms).
    pub fn terminated(&self) -> bool {
        self.c.last().is_some_and(Zero::is_zero)
    }
}

/// Runs the Stieltjes procedure as far as the moments allow: `b_n` needs
/// `m_{2n+1}` and `c_n` needs `m_{2n+2}`.
pub fn jacobi_from_moments(m: &MomentSequence) -> Result<JacobiCoefficients> {
    let moments = m.as_slice();
    let order = m.order();
    let mut out = JacobiCoefficients::default();
    let mut prev = Polynomial::zero();
    let mut cur = Polynomial::one();
    let mut prev_norm: Option<Rational> = None;
    for n in 0.. {
        if 2 * n > order {
            break;
        }
        let square = &cur * &cur;
        let norm = square.apply_functional(moments);
        if norm.is_negative() {
            return Err(Error::NotAMomentSequence { degree: n });
        }
        if let Some(p) = &prev_norm {
            out.c.push(&norm / p);
        }
        if norm.is_zero() {
            break;
        }
        if 2 * n + 1 > order {
            break;
        }
        let b = square.mul_x().apply_functional(moments) / &norm;
        let next = &(&cur.mul_x() - &cur.scale(&b))
            - &prev.scale(out.c.last().unwrap_or(&Rational::zero()));
        out.b.push(b);
        prev = cur;
        cur = next;
        prev_norm = Some(norm);
    }
    Ok(out)
}
