//! Exact dense linear algebra over the rationals.
//!
//! Elimination is fraction-free: each row is kept as a primitive integer vector
//! and rows are combined by cross-multiplying pivots, so intermediate entries
//! stay small. Results are converted back to rationals only at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// Rows with integer entries, content removed and first nonzero entry positive.
fn primitive_row(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let negate = row.iter().find(|x| !x.is_zero()).unwrap().is_negative();
    for x in row.iter_mut() {
        if !g.is_one() {
            *x = &*x / &g;
        }
        if negate {
            *x = -&*x;
        }
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Reduced row echelon form. Zero rows are removed; each pivot is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    /// Basis of `{v : M v = 0}` for the matrix with these rows, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

/// Integer Gauss-Jordan on primitive rows; returns (rows, pivot columns).
fn integer_gauss_jordan(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        // smallest pivot keeps growth down
        let Some(best) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].magnitude().bits())
        else {
            continue;
        };
        rows.swap(r, best);
        let pivot_row = std::mem::take(&mut rows[r]);
        let a = pivot_row[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row.is_empty() || row[c].is_zero() {
                continue;
            }
            let g = a.gcd(&row[c]);
            let pa = &a / &g;
            let pb = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pa - y * &pb;
            }
            primitive_row(row);
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rref(matrix: &[Vec<Rational>], ncols: usize) -> Echelon {
    let rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            debug_assert_eq!(row.len(), ncols);
            let mut r = integer_row(row);
            primitive_row(&mut r);
            r
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let (rows, pivots) = integer_gauss_jordan(rows, ncols);
    let rows = rows
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter().map(|x| Rational::new(x, lead.clone())).collect()
        })
        .collect();
    Echelon { rows, pivots, ncols }
}

pub fn rank(matrix: &[Vec<Rational>], ncols: usize) -> usize {
    rref(matrix, ncols).rank()
}

pub fn nullspace(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    rref(matrix, ncols).nullspace()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = Rational::one();
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            let r = integer_row(row);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale /= Rational::from_integer(l);
            r
        })
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    Rational::from_integer(&m[n - 1][n - 1] * sign) * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rref_and_nullspace() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let e = rref(&m, 3);
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots, vec![0, 1]);
        let ns = e.nullspace();
        assert_eq!(ns, vec![vec![rat(-1), rat(-1), rat(1)]]);
        assert!(e.contains(&[rat(3), rat(2), rat(5)]));
        assert!(!e.contains(&[rat(0), rat(0), rat(1)]));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&mat(&[&[2, 1], &[1, 3]])), rat(5));
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])), rat(-1));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])), rat(0));
        let half = vec![vec![Rational::new(1.into(), 2.into()), rat(0)], vec![rat(0), rat(3)]];
        assert_eq!(determinant(&half), Rational::new(3.into(), 2.into()));
    }

    proptest! {
        #[test]
        fn nullspace_vectors_are_annihilated(
            entries in proptest::collection::vec(-4i64..5, 12)
        ) {
            let m: Vec<Vec<Rational>> = entries.chunks(4).map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
            let e = rref(&m, 4);
            let ns = e.nullspace();
            prop_assert_eq!(ns.len() + e.rank(), 4);
            for v in ns {
                for row in &m {
                    let dot: Rational = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                    prop_assert!(dot.is_zero());
                }
            }
            for row in &m {
                prop_assert!(e.contains(row));
            }
        }

        #[test]
        fn determinant_matches_laplace_3x3(entries in proptest::collection::vec(-5i64..6, 9)) {
            let m: Vec<Vec<Rational>> = entries.chunks(3).map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
            let e = |i: usize, j: usize| entries[3 * i + j];
            let laplace = e(0,0)*(e(1,1)*e(2,2)-e(1,2)*e(2,1)) - e(0,1)*(e(1,0)*e(2,2)-e(1,2)*e(2,0)) + e(0,2)*(e(1,0)*e(2,1)-e(1,1)*e(2,0));
            prop_assert_eq!(determinant(&m), rat(laplace));
        }
    }
}
