//! Brute-force moment-cumulant oracle.
//!
//! `m_n = sum over non-crossing partitions pi of {1..n} of prod_{B in pi} kappa_|B|`.
//! Partitions are enumerated explicitly, one at a time, by choosing the block
//! that contains the smallest pending element and recursing into the gaps it
//! leaves. This shares no code with the series route in
//! [`crate::transforms`], which is the point.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::Rational;
use crate::transforms::FreeCumulants;
use crate::{Error, Result};

/// Default ceiling on `n`; there are 208012 partitions at 12.
pub const ORACLE_CAP: usize = 12;

/// Calls `visit` once per non-crossing partition of `{0, ..., n-1}`. Blocks
/// are increasing lists of points.
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&[Vec<usize>])) {
    let mut pending = Vec::new();
    if n > 0 {
        pending.push((0, n));
    }
    let mut blocks = Vec::new();
    descend(&mut pending, &mut blocks, &mut visit);
}

fn descend(
    pending: &mut Vec<(usize, usize)>,
    blocks: &mut Vec<Vec<usize>>,
    visit: &mut dyn FnMut(&[Vec<usize>]),
) {
    let Some((start, end)) = pending.pop() else {
        visit(blocks);
        return;
    };
    if start == end {
        descend(pending, blocks, visit);
    } else {
        let mut block = alloc::vec![start];
        let mut gaps = Vec::new();
        grow_block(start, end, &mut block, &mut gaps, pending, blocks, visit);
    }
    pending.push((start, end));
}

fn grow_block(
    last: usize,
    end: usize,
    block: &mut Vec<usize>,
    gaps: &mut Vec<(usize, usize)>,
    pending: &mut Vec<(usize, usize)>,
    blocks: &mut Vec<Vec<usize>>,
    visit: &mut dyn FnMut(&[Vec<usize>]),
) {
    // close the block here
    gaps.push((last + 1, end));
    let depth = pending.len();
    pending.extend(gaps.iter().copied());
    blocks.push(block.clone());
    descend(pending, blocks, visit);
    blocks.pop();
    pending.truncate(depth);
    gaps.pop();

    // or add another point to it
    for next in last + 1..end {
        gaps.push((last + 1, next));
        block.push(next);
        grow_block(next, end, block, gaps, pending, blocks, visit);
        block.pop();
        gaps.pop();
    }
}

pub fn count_partitions(n: usize) -> u64 {
    let mut count = 0u64;
    for_each_partition(n, |_| count += 1);
    count
}

/// `m_n` from cumulants by enumeration, with `n <= ORACLE_CAP`.
pub fn moments_via_noncrossing(k: &FreeCumulants, n: usize) -> Result<Rational> {
    moments_via_noncrossing_capped(k, n, ORACLE_CAP)
}

pub fn moments_via_noncrossing_capped(k: &FreeCumulants, n: usize, cap: usize) -> Result<Rational> {
    if n > cap {
        return Err(Error::OracleCapExceeded { n, cap });
    }
    if n > k.order() {
        return Err(Error::InsufficientSequence {
            needed: n,
            available: k.order(),
        });
    }
    let mut total = Rational::zero();
    for_each_partition(n, |blocks| {
        let mut term = Rational::one();
        for b in blocks {
            let kappa = k.get(b.len());
            if kappa.is_zero() {
                return;
            }
            term *= kappa;
        }
        total += term;
    });
    Ok(total)
}
