//! Certified kernels over `Q` via elimination modulo a large prime.
//!
//! The rank modulo `p` never exceeds the rank over `Q`, so a family of
//! `nullity_p` independent vectors that exactly satisfy `A x = 0` is a basis of
//! the rational kernel. Candidates come from rational reconstruction of the
//! modular kernel; any failure falls back to exact elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::{Q, QMatrix};

const P: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
}

fn reduce(x: &Q) -> Option<u64> {
    let d = reduce_int(x.denom());
    if d == 0 {
        return None;
    }
    Some(mul(reduce_int(x.numer()), inv(d)))
}

/// Smallest `a/b` congruent to `r` with `|a|, b` below `sqrt(p/2)`.
fn reconstruct(r: u64) -> Option<Q> {
    if r == 0 {
        return Some(Q::zero());
    }
    let bound: i128 = 1_073_741_823;
    let (mut r0, mut r1) = (P as i128, r as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if s1 == 0 || s1.abs() > bound {
        return None;
    }
    let (a, b) = if s1 < 0 { (-r1, -s1) } else { (r1, s1) };
    if a.gcd(&b) != 1 {
        return None;
    }
    Some(Q::new(BigInt::from(a), BigInt::from(b)))
}

fn rref_mod(m: &mut [Vec<u64>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(p, r);
        let iv = inv(m[r][c]);
        for v in m[r][c..].iter_mut() {
            *v = mul(*v, iv);
        }
        let nz: Vec<usize> = (c..cols).filter(|&j| m[r][j] != 0).collect();
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for &j in &nz {
                row[j] = sub(row[j], mul(f, pivot_row[j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Certified kernel basis and pivot columns, or `None` to request the exact path.
pub(crate) fn kernel_and_pivots(a: &QMatrix) -> Option<(QMatrix, Vec<usize>)> {
    let cols = a.cols();
    let mut m: Vec<Vec<u64>> = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let row: Option<Vec<u64>> = a.row(i).iter().map(reduce).collect();
        m.push(row?);
    }
    let pivots = rref_mod(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = QMatrix::zeros(cols, free.len());
    for (idx, &f) in free.iter().enumerate() {
        k.set(f, idx, Q::one());
        for (row, &p) in pivots.iter().enumerate() {
            let v = m[row][f];
            if v != 0 {
                k.set(p, idx, -reconstruct(v)?);
            }
        }
    }
    if !a.mul(&k).is_zero() {
        return None;
    }
    Some((k, pivots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::q_matrix;

    #[test]
    fn reconstructs_small_fractions() {
        let x = Q::new(BigInt::from(-7), BigInt::from(12));
        assert_eq!(reconstruct(reduce(&x).unwrap()), Some(x));
    }

    #[test]
    fn certified_kernel() {
        let a = q_matrix(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let (k, piv) = kernel_and_pivots(&a).unwrap();
        assert_eq!(k.cols(), 1);
        assert_eq!(piv, vec![0, 1]);
    }
}
