//! Dense Gaussian elimination over a [`FieldCtx`].
//!
//! Matrices are `Vec<Vec<u64>>` of canonical element encodings. Everything
//! here is desk scale; no pivoting strategy beyond first-nonzero is needed
//! because field arithmetic is exact.

use crate::galois::FieldCtx;

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(ctx: &FieldCtx, mat: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = mat.len();
    let mut work: Vec<Vec<u64>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| work[r][col] != 0)?;
        work.swap(col, pivot);
        let inv = ctx.inv(work[col][col]).ok()?;
        for x in work[col].iter_mut() {
            *x = ctx.mul(*x, inv);
        }
        for r in 0..n {
            if r != col && work[r][col] != 0 {
                let factor = work[r][col];
                for c in 0..2 * n {
                    let delta = ctx.mul(factor, work[col][c]);
                    work[r][c] = ctx.sub(work[r][c], delta);
                }
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// A nonzero vector in the kernel of the (rows x ncols) matrix, or `None` if
/// the kernel is trivial. Deterministic: the first free column is set to 1.
pub fn kernel_vector(ctx: &FieldCtx, rows: &[Vec<u64>], ncols: usize) -> Option<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = rows.to_vec();
    let nrows = work.len();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| work[r][col] != 0) else {
            continue;
        };
        work.swap(row, p);
        let inv = ctx.inv(work[row][col]).expect("pivot is nonzero");
        for x in work[row].iter_mut() {
            *x = ctx.mul(*x, inv);
        }
        for r in 0..nrows {
            if r != row && work[r][col] != 0 {
                let factor = work[r][col];
                for c in col..ncols {
                    let delta = ctx.mul(factor, work[row][c]);
                    work[r][c] = ctx.sub(work[r][c], delta);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }

    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    let free = (0..ncols).find(|&c| !is_pivot[c])?;

    let mut sol = vec![0u64; ncols];
    sol[free] = 1;
    // each pivot row reads: x_pivot + sum(coeff * x_free) = 0
    for (r, &pc) in pivot_cols.iter().enumerate() {
        sol[pc] = ctx.neg(work[r][free]);
    }
    Some(sol)
}

/// Row-echelon solver with a cached factorization, for repeated solves
/// against the same matrix.
#[derive(Debug, Clone)]
pub struct CachedSolver {
    /// The recorded row operations T, with T * M in reduced row echelon
    /// form (nrows x nrows).
    transform: Vec<Vec<u64>>,
    /// pivot column of each leading row.
    pivots: Vec<usize>,
    ncols: usize,
}

impl CachedSolver {
    pub fn new(ctx: &FieldCtx, mat: &[Vec<u64>]) -> Self {
        let nrows = mat.len();
        let ncols = if nrows == 0 { 0 } else { mat[0].len() };
        let mut work: Vec<Vec<u64>> = mat
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..nrows).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..ncols {
            if row >= nrows {
                break;
            }
            let Some(p) = (row..nrows).find(|&r| work[r][col] != 0) else {
                continue;
            };
            work.swap(row, p);
            let inv = ctx.inv(work[row][col]).expect("pivot is nonzero");
            for x in work[row].iter_mut() {
                *x = ctx.mul(*x, inv);
            }
            for r in 0..nrows {
                if r != row && work[r][col] != 0 {
                    let factor = work[r][col];
                    for c in 0..ncols + nrows {
                        let delta = ctx.mul(factor, work[row][c]);
                        work[r][c] = ctx.sub(work[r][c], delta);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let transform = work.iter().map(|r| r[ncols..].to_vec()).collect();
        CachedSolver { transform, pivots, ncols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Solves M x = b; returns `None` when inconsistent. Free variables are 0.
    pub fn solve(&self, ctx: &FieldCtx, b: &[u64]) -> Option<Vec<u64>> {
        let tb: Vec<u64> = self
            .transform
            .iter()
            .map(|row| {
                let mut acc = 0;
                for (&c, &bv) in row.iter().zip(b) {
                    acc = ctx.add(acc, ctx.mul(c, bv));
                }
                acc
            })
            .collect();
        // rows past the rank are zero rows of the echelon form
        if tb.iter().skip(self.rank()).any(|&v| v != 0) {
            return None;
        }
        let mut x = vec![0u64; self.ncols];
        for (r, &pc) in self.pivots.iter().enumerate() {
            // echelon row r has 1 at pc and zeros at other pivot columns;
            // with free vars fixed to 0 the solution is direct
            x[pc] = tb[r];
        }
        // verify non-pivot columns do not break the equation: with free vars
        // zero, echelon rows give x[pc] exactly; consistency was checked above
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    #[test]
    fn invert_gf5() {
        let f = make_field(5, 1, None).unwrap();
        let m = vec![vec![1, 2], vec![3, 4]];
        let inv = invert(&f, &m).unwrap();
        // check M * M^-1 = I
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = 0;
                for k in 0..2 {
                    acc = f.add(acc, f.mul(m[i][k], inv[k][j]));
                }
                assert_eq!(acc, u64::from(i == j));
            }
        }
        assert!(invert(&f, &vec![vec![1, 2], vec![2, 4]]).is_none());
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let f = make_field(7, 1, None).unwrap();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let v = kernel_vector(&f, &rows, 3).unwrap();
        assert!(v.iter().any(|&x| x != 0));
        for r in &rows {
            let mut acc = 0;
            for (&c, &x) in r.iter().zip(&v) {
                acc = f.add(acc, f.mul(c, x));
            }
            assert_eq!(acc, 0);
        }
    }

    #[test]
    fn cached_solver_consistency() {
        let f = make_field(5, 1, None).unwrap();
        let m = vec![vec![1, 1], vec![0, 1], vec![1, 2]];
        let s = CachedSolver::new(&f, &m);
        // b = M * [2, 3]
        let x = s.solve(&f, &[0, 3, 3]).unwrap();
        assert_eq!(x, vec![2, 3]);
        assert!(s.solve(&f, &[1, 0, 0]).is_none());
    }
}
