//! Exact dense Gauss-Jordan elimination over a cyclotomic field.
//!
//! Full pivoting with the largest-support pivot; every outcome (unique,
//! inconsistent, underdetermined) is returned as a value.

use super::field::FieldScalar;

/// A rectangular system `matrix * x = rhs`.
#[derive(Clone, Debug)]
pub struct LinSystem {
    pub matrix: Vec<Vec<FieldScalar>>,
    pub rhs: Vec<FieldScalar>,
}

impl LinSystem {
    pub fn new(matrix: Vec<Vec<FieldScalar>>, rhs: Vec<FieldScalar>) -> Self {
        assert_eq!(matrix.len(), rhs.len(), "rhs length must equal row count");
        if let Some(first) = matrix.first() {
            let n = first.len();
            assert!(matrix.iter().all(|r| r.len() == n), "ragged matrix");
        }
        LinSystem { matrix, rhs }
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }
}

/// Result of elimination: `particular` is `None` exactly when the system
/// is inconsistent; `nullspace` spans the homogeneous solutions.
#[derive(Clone, Debug)]
pub struct LinSolution {
    pub rank: usize,
    pub particular: Option<Vec<FieldScalar>>,
    pub nullspace: Vec<Vec<FieldScalar>>,
}

pub fn solve_linear(sys: &LinSystem, two_h: u32) -> LinSolution {
    let rows = sys.rows();
    let cols = sys.cols();
    let mut a: Vec<Vec<FieldScalar>> = sys.matrix.clone();
    let mut b: Vec<FieldScalar> = sys.rhs.clone();
    // col_of[k]: original column sitting at working position k
    let mut col_of: Vec<usize> = (0..cols).collect();

    let mut rank = 0usize;
    while rank < rows && rank < cols {
        // full pivot search over the remaining submatrix
        let mut pivot: Option<(usize, usize, usize)> = None; // (support, row, col)
        for i in rank..rows {
            for j in rank..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let s = a[i][j].support();
                if pivot.map_or(true, |(ps, _, _)| s > ps) {
                    pivot = Some((s, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = pivot else { break };
        a.swap(rank, pi);
        b.swap(rank, pi);
        if pj != rank {
            for row in a.iter_mut() {
                row.swap(rank, pj);
            }
            col_of.swap(rank, pj);
        }
        let inv = a[rank][rank].inverse().expect("pivot is nonzero");
        for j in rank..cols {
            a[rank][j] = a[rank][j].mul(&inv);
        }
        b[rank] = b[rank].mul(&inv);
        for i in 0..rows {
            if i == rank || a[i][rank].is_zero() {
                continue;
            }
            let f = a[i][rank].clone();
            for j in rank..cols {
                let t = f.mul(&a[rank][j]);
                a[i][j] = a[i][j].sub(&t);
            }
            let t = f.mul(&b[rank]);
            b[i] = b[i].sub(&t);
        }
        rank += 1;
    }

    for item in b.iter().take(rows).skip(rank) {
        if !item.is_zero() {
            return LinSolution {
                rank,
                particular: None,
                nullspace: Vec::new(),
            };
        }
    }

    let zero = FieldScalar::zero(two_h);
    let mut particular = vec![zero.clone(); cols];
    for k in 0..rank {
        particular[col_of[k]] = b[k].clone();
    }

    let mut nullspace = Vec::with_capacity(cols - rank);
    for free in rank..cols {
        let mut v = vec![zero.clone(); cols];
        v[col_of[free]] = FieldScalar::one(two_h);
        for k in 0..rank {
            v[col_of[k]] = a[k][free].neg();
        }
        nullspace.push(v);
    }

    LinSolution {
        rank,
        particular: Some(particular),
        nullspace,
    }
}
