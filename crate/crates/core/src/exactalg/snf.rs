//! Smith normal form over the integers with unimodular transforms.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Int, IntMatrix};

/// Result of [`smith_normal_form`]: `u * a * v == d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).filter(|v| !v.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Computes `(U, D, V)` with `U·A·V = D` diagonal, `d_i | d_{i+1}`, `d_i >= 0`.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                let e = d.get(i, t).clone();
                if e.is_zero() {
                    continue;
                }
                let q = e.div_floor(d.get(t, t));
                let k = -q;
                d.add_row_multiple(i, t, &k);
                u.add_row_multiple(i, t, &k);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let e = d.get(t, j).clone();
                if e.is_zero() {
                    continue;
                }
                let q = e.div_floor(d.get(t, t));
                let k = -q;
                d.add_col_multiple(j, t, &k);
                v.add_col_multiple(j, t, &k);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = smallest_in_cross(&d, t);
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let p = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = Int::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            let neg = -Int::one();
            d.scale_row(t, &neg);
            u.scale_row(t, &neg);
        }
        t += 1;
    }
    Smith { u, d, v }
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let e = d.get(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.as_ref().is_none_or(|b| a < b.2) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn smallest_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, d.get(t, t).abs());
    for i in t + 1..d.rows() {
        let e = d.get(i, t);
        if !e.is_zero() && e.abs() < best.2 {
            best = (i, t, e.abs());
        }
    }
    for j in t + 1..d.cols() {
        let e = d.get(t, j);
        if !e.is_zero() && e.abs() < best.2 {
            best = (t, j, e.abs());
        }
    }
    (best.0, best.1)
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn int_det(a: &IntMatrix) -> Int {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return Int::one();
    }
    let mut m = a.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
            return Int::zero();
        };
        if p != k {
            m.swap_rows(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (m.get(i, j).clone() * m.get(k, k).clone()
                    - m.get(i, k).clone() * m.get(k, j).clone())
                    / prev.clone();
                m.set(i, j, val);
            }
        }
        prev = m.get(k, k).clone();
    }
    sign * m.get(n - 1, n - 1).clone()
}

/// Basis of the integer kernel of `a`, as columns; the span is saturated.
pub fn int_kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let r = s.rank();
    let cols: Vec<usize> = (r..a.cols()).collect();
    s.v.select_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::{int, int_matrix};

    fn check(a: &IntMatrix) -> Smith {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(int_det(&s.u).abs().is_one());
        assert!(int_det(&s.v).abs().is_one());
        s
    }

    #[test]
    fn two_by_two() {
        let s = check(&int_matrix(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.invariant_factors(), vec![int(2), int(4)]);
    }

    #[test]
    fn zero_matrix_has_identity_transforms() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.u.is_identity());
        assert!(s.v.is_identity());
        assert!(s.invariant_factors().is_empty());
    }

    #[test]
    fn divisibility_fix() {
        let s = check(&int_matrix(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![int(1), int(6)]);
    }

    #[test]
    fn kernel_is_saturated() {
        let a = int_matrix(&[&[2, 4]]);
        let k = int_kernel(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        let g = k.get(0, 0).gcd(k.get(1, 0));
        assert!(g.is_one());
    }

    #[test]
    fn det_matches_rational() {
        let a = int_matrix(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        assert_eq!(Q::from_integer(int_det(&a)), a.to_q().det());
    }

    use super::super::matrix::Q;
}
