//! Exact linear algebra over ℚ, just enough to solve for coinvariants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linear::{Key, LinComb};

/// A dense matrix over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigRational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![BigRational::zero(); cols]; rows],
        }
    }

    /// The matrix whose `j`-th column holds the coefficients of `images[j]`,
    /// together with the row keys in canonical order.
    pub fn from_images<K: Key>(images: &[LinComb<K>]) -> (Self, Vec<K>) {
        let mut row_index: BTreeMap<K, usize> = BTreeMap::new();
        for image in images {
            for k in image.keys() {
                row_index.entry(k.clone()).or_insert(0);
            }
        }
        for (i, slot) in row_index.values_mut().enumerate() {
            *slot = i;
        }
        let mut m = Matrix::zeros(row_index.len(), images.len());
        for (j, image) in images.iter().enumerate() {
            for (k, c) in image.iter() {
                m.data[row_index[k]][j] = BigRational::from_integer(c.clone());
            }
        }
        (m, row_index.into_keys().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i][j]
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (
            Matrix {
                rows: self.rows,
                cols: self.cols,
                data: a,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.data[i][f].clone();
                }
                v
            })
            .collect()
    }
}

/// Clears denominators and common factors so a rational vector becomes a
/// primitive integer vector.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        let mut m = Matrix::zeros(2, 3);
        m.data[0] = vec![q(1), q(2), q(3)];
        m.data[1] = vec![q(2), q(4), q(6)];
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &m.data {
                let s: BigRational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![BigRational::new(1.into(), 2.into()), q(-1), q(0)];
        assert_eq!(
            primitive_integer_vector(&v),
            vec![BigInt::from(1), BigInt::from(-2), BigInt::from(0)]
        );
    }
}
