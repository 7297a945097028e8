//! Exact solution of overdetermined integer and rational linear systems.
//!
//! Forward elimination is fraction-free (Bareiss), so every intermediate
//! entry stays an integer; only the final back substitution uses rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Solves `A x = b` where `A` has full column rank. Extra rows must be
/// consistent with the solution.
pub fn solve_integer(rows: &[Vec<BigInt>], rhs: &[BigInt]) -> Result<Vec<BigRational>> {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
    let unknowns = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), unknowns, "ragged matrix");
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();

    let mut prev = BigInt::one();
    for col in 0..unknowns {
        let Some(p) = (col..m.len()).find(|&i| !m[i][col].is_zero()) else {
            return Err(Error::RankDeficient {
                rank: col,
                unknowns,
            });
        };
        m.swap(col, p);
        let (top, below) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        let pivot = &pivot_row[col];
        for row in below.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            if factor.is_zero() {
                for x in row[col + 1..=unknowns].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * pivot / &prev;
                    }
                }
                continue;
            }
            for j in col + 1..=unknowns {
                let v = &row[j] * pivot - &factor * &pivot_row[j];
                debug_assert!(v.is_multiple_of(&prev));
                row[j] = v / &prev;
            }
        }
        prev = m[col][col].clone();
    }

    if m[unknowns..].iter().any(|row| !row[unknowns].is_zero()) {
        return Err(Error::Inconsistent);
    }

    let mut x = vec![BigRational::zero(); unknowns];
    for col in (0..unknowns).rev() {
        let mut acc = BigRational::from_integer(m[col][unknowns].clone());
        for j in col + 1..unknowns {
            acc -= &x[j] * BigRational::from_integer(m[col][j].clone());
        }
        x[col] = acc / BigRational::from_integer(m[col][col].clone());
    }
    Ok(x)
}

/// Solves a rational system by clearing denominators row by row.
pub fn solve_rational(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> Result<Vec<BigRational>> {
    let mut int_rows = Vec::with_capacity(rows.len());
    let mut int_rhs = Vec::with_capacity(rhs.len());
    for (row, b) in rows.iter().zip(rhs) {
        let lcm = row
            .iter()
            .chain(std::iter::once(b))
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scale = |q: &BigRational| q.numer() * (&lcm / q.denom());
        int_rows.push(row.iter().map(scale).collect());
        int_rhs.push(scale(b));
    }
    solve_integer(&int_rows, &int_rhs)
}
