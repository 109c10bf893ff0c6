//! Exact Gauss-Jordan elimination over ℚ and ℚ[i].
//!
//! Every decomposition in the crate reduces to "express this vector in terms
//! of these spanning vectors", so one dense solver serves them all.

use num_traits::{One, Zero};

use crate::scalars::{GaussianRational, Rational};

pub trait Field: Clone + PartialEq + Zero + One {
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn recip(&self) -> Self;
}

impl Field for Rational {
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn recip(&self) -> Self {
        num_traits::Inv::inv(self)
    }
}

impl Field for GaussianRational {
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn recip(&self) -> Self {
        self.inv().expect("pivot is nonzero")
    }
}

/// Reduces `rows` in place to reduced row echelon form and returns the pivot columns.
pub fn rref<F: Field>(rows: &mut [Vec<F>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        let support: Vec<usize> = (c..ncols).filter(|&j| !rows[r][j].is_zero()).collect();
        for &j in &support {
            rows[r][j] = rows[r][j].mul_ref(&inv);
        }
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("row r exists");
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] = row[j].sub_ref(&factor.mul_ref(&pivot_row[j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution<F> {
    /// The system has exactly one solution.
    Unique(Vec<F>),
    /// Consistent but rank deficient; free variables were set to zero.
    Underdetermined(Vec<F>),
    Inconsistent,
}

/// Solves `A x = b` where `columns[j]` is the j-th column of `A`.
pub fn solve_columns<F: Field>(columns: &[Vec<F>], rhs: &[F]) -> Solution<F> {
    let nrows = rhs.len();
    let ncols = columns.len();
    let mut aug: Vec<Vec<F>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<F> = columns.iter().map(|col| col[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return Solution::Inconsistent;
    }
    let mut x = vec![F::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][ncols].clone();
    }
    if pivots.len() == ncols {
        Solution::Unique(x)
    } else {
        Solution::Underdetermined(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank::<Rational>(&[]), 0);
    }

    #[test]
    fn unique_and_inconsistent_solves() {
        // columns (1,1), (1,-1); rhs (3, 1) -> x = (2, 1)
        let cols = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(solve_columns(&cols, &[int(3), int(1)]), Solution::Unique(vec![int(2), int(1)]));
        let cols = vec![vec![int(1), int(2)]];
        assert_eq!(solve_columns(&cols, &[int(1), int(3)]), Solution::Inconsistent);
        let cols = vec![vec![int(1)], vec![int(2)]];
        assert!(matches!(solve_columns(&cols, &[int(4)]), Solution::Underdetermined(_)));
    }

    #[test]
    fn complex_solve() {
        let i = GaussianRational::i();
        let one = GaussianRational::one();
        // [1 i; i 1] x = (1, 0): det = 2, x = (1/2, -i/2)
        let cols = vec![vec![one.clone(), i.clone()], vec![i.clone(), one.clone()]];
        let Solution::Unique(x) = solve_columns(&cols, &[one.clone(), GaussianRational::zero()]) else {
            panic!("expected a unique solution");
        };
        assert_eq!(x[0], GaussianRational::real(rat(1, 2)));
        assert_eq!(x[1], GaussianRational::new(int(0), rat(-1, 2)));
    }
}
