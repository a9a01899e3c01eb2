//! Exact 3x3 matrices over [`Ext`] and a generic numeric nullspace.

use crate::bigfloat::Scalar;
use crate::ext::Ext;

/// Exact 3x3 matrix, used for projective changes of coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat3 {
    m: [[Ext; 3]; 3],
}

impl Mat3 {
    pub fn from_rows(m: [[Ext; 3]; 3]) -> Self {
        Mat3 { m }
    }

    pub fn identity() -> Self {
        let z = Ext::zero;
        let o = Ext::one;
        Mat3 {
            m: [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &Ext {
        &self.m[r][c]
    }

    pub fn row(&self, r: usize) -> &[Ext; 3] {
        &self.m[r]
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let mut out = Mat3::identity();
        for r in 0..3 {
            for c in 0..3 {
                let mut s = Ext::zero();
                for k in 0..3 {
                    s = s + self.m[r][k].clone() * o.m[k][c].clone();
                }
                out.m[r][c] = s;
            }
        }
        out
    }

    pub fn apply(&self, v: &[Ext; 3]) -> [Ext; 3] {
        let mut out = [Ext::zero(), Ext::zero(), Ext::zero()];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut s = Ext::zero();
            for c in 0..3 {
                s = s + self.m[r][c].clone() * v[c].clone();
            }
            *slot = s;
        }
        out
    }

    pub fn transpose(&self) -> Mat3 {
        let mut out = self.clone();
        for r in 0..3 {
            for c in 0..3 {
                out.m[r][c] = self.m[c][r].clone();
            }
        }
        out
    }

    pub fn det(&self) -> Ext {
        let m = &self.m;
        let t = |a: &Ext, b: &Ext| a.clone() * b.clone();
        t(&m[0][0], &(t(&m[1][1], &m[2][2]) - t(&m[1][2], &m[2][1])))
            - t(&m[0][1], &(t(&m[1][0], &m[2][2]) - t(&m[1][2], &m[2][0])))
            + t(&m[0][2], &(t(&m[1][0], &m[2][1]) - t(&m[1][1], &m[2][0])))
    }

    /// Inverse via the adjugate; panics on a singular matrix.
    pub fn inverse(&self) -> Mat3 {
        let d = self.det();
        assert!(!d.is_zero(), "singular matrix");
        let inv_d = d.inv();
        let m = &self.m;
        let cof = |r: usize, c: usize| {
            let (r1, r2) = match r {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c1, c2) = match c {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = m[r1][c1].clone() * m[r2][c2].clone()
                - m[r1][c2].clone() * m[r2][c1].clone();
            if (r + c) % 2 == 0 {
                minor
            } else {
                -minor
            }
        };
        let mut out = Mat3::identity();
        for r in 0..3 {
            for c in 0..3 {
                // adjugate transposes the cofactor matrix
                out.m[r][c] = cof(c, r) * inv_d.clone();
            }
        }
        out
    }
}

/// One kernel vector of an (m x n) matrix stored row-major, via Gaussian
/// elimination with partial pivoting. Returns the free-column solution with
/// the largest pivot margin; `None` when the matrix has full column rank
/// relative to `rank_tol`.
pub fn kernel_vector<S: Scalar>(rows: &[Vec<S>], n: usize, prec: u32, rank_tol: f64) -> Option<Vec<S>> {
    let mut a: Vec<Vec<S>> = rows.to_vec();
    let m = a.len();
    let zero = || S::from_c64(num_complex::Complex64::new(0.0, 0.0), prec);
    let one = || S::from_c64(num_complex::Complex64::new(1.0, 0.0), prec);

    let scale = a
        .iter()
        .flat_map(|r| r.iter().map(|x| x.abs()))
        .fold(0.0f64, f64::max)
        .max(1.0);

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        // find pivot
        let mut best = r;
        let mut best_abs = 0.0;
        for i in r..m {
            let v = a[i][c].abs();
            if v > best_abs {
                best_abs = v;
                best = i;
            }
        }
        if best_abs <= rank_tol * scale {
            continue;
        }
        a.swap(r, best);
        let p = a[r][c].clone();
        for j in c..n {
            a[r][j] = a[r][j].div(&p);
        }
        for i in 0..m {
            if i != r && a[i][c].abs() > 0.0 {
                let f = a[i][c].clone();
                for j in c..n {
                    let t = a[r][j].mul(&f);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m {
            break;
        }
    }

    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let &fc = free.first()?;

    // back-substitute: x[fc] = 1, pivots solve their rows
    let mut x = vec![zero(); n];
    x[fc] = one();
    for (ri, &pc) in pivot_cols.iter().enumerate() {
        // row ri: x[pc] + sum over non-pivot cols = 0
        let mut s = zero();
        for c in (pc + 1)..n {
            if !is_pivot[c] {
                let t = a[ri][c].mul(&x[c]);
                s = s.add(&t);
            }
        }
        x[pc] = s.neg();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn inverse_roundtrip() {
        let a = Mat3::from_rows([
            [Ext::from_int(1), Ext::from_int(2), Ext::from_int(0)],
            [Ext::from_int(0), Ext::from_int(1), Ext::from_int(3)],
            [Ext::from_int(1), Ext::from_int(0), Ext::from_int(1)],
        ]);
        assert_eq!(a.mul(&a.inverse()), Mat3::identity());
        assert_eq!(a.inverse().mul(&a), Mat3::identity());
    }

    #[test]
    fn det_of_swap_is_minus_one() {
        let swap = Mat3::from_rows([
            [Ext::zero(), Ext::one(), Ext::zero()],
            [Ext::one(), Ext::zero(), Ext::zero()],
            [Ext::zero(), Ext::zero(), Ext::one()],
        ]);
        assert_eq!(swap.det(), Ext::from_int(-1));
    }

    #[test]
    fn kernel_of_rank_two() {
        // rows (1,0,-1), (0,1,-1): kernel spanned by (1,1,1)
        let rows = vec![
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-1.0, 0.0),
            ],
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
            ],
        ];
        let k = kernel_vector(&rows, 3, 53, 1e-10).unwrap();
        let t = k[2];
        assert!((k[0] - t).norm() < 1e-12);
        assert!((k[1] - t).norm() < 1e-12);
    }

    #[test]
    fn full_rank_has_no_kernel() {
        let rows: Vec<Vec<Complex64>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect();
        assert!(kernel_vector(&rows, 3, 53, 1e-10).is_none());
    }
}
