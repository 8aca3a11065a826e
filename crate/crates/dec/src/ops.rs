//! Sparse matrices for the operator algebra.
//!
//! Boundary and coboundary matrices are integer valued and all combinatorial
//! identities (`∂∂ = 0`, `dd = 0`, the homotopy identities) are checked in
//! exact integer arithmetic. Metric operators (Hodge stars, codifferentials,
//! Laplacians) use the same storage over `f64`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::NumAssign;
use serde::{Deserialize, Serialize};

/// Which cochain complex a vector lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Primal,
    Dual,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Primal => write!(f, "primal"),
            Side::Dual => write!(f, "dual"),
        }
    }
}

/// A cochain space: degree plus primal/dual side.
///
/// Dual k-cells are indexed by the primal (n-k)-simplices they are dual to,
/// so `dim` here is always the primal simplex dimension used for indexing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Space {
    pub degree: usize,
    pub side: Side,
}

impl Space {
    pub fn primal(degree: usize) -> Self {
        Space { degree, side: Side::Primal }
    }

    pub fn dual(degree: usize) -> Self {
        Space { degree, side: Side::Dual }
    }
}

/// Sorted-triplet sparse matrix.
///
/// Triplets are kept sorted by (row, col) with no duplicates and no explicit
/// zeros, which makes equality, export and iteration deterministic.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    triplets: Vec<(usize, usize, T)>,
}

impl<T: Copy + NumAssign + PartialEq> SparseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, triplets: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            ncols: n,
            triplets: (0..n).map(|i| (i, i, T::one())).collect(),
        }
    }

    /// Build from unsorted triplets, accumulating duplicates and dropping zeros.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut acc: BTreeMap<(usize, usize), T> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "triplet ({r},{c}) out of bounds");
            *acc.entry((r, c)).or_insert_with(T::zero) += v;
        }
        let triplets = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        SparseMatrix { nrows, ncols, triplets }
    }

    pub fn diagonal(values: &[T]) -> Self {
        let n = values.len();
        SparseMatrix {
            nrows: n,
            ncols: n,
            triplets: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, &v)| (i, i, v))
                .collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.triplets.len()
    }

    pub fn triplets(&self) -> &[(usize, usize, T)] {
        &self.triplets
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        match self.triplets.binary_search_by_key(&(r, c), |&(tr, tc, _)| (tr, tc)) {
            Ok(i) => self.triplets[i].2,
            Err(_) => T::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut triplets: Vec<_> = self.triplets.iter().map(|&(r, c, v)| (c, r, v)).collect();
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, triplets }
    }

    pub fn scale(&self, s: T) -> Self {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            triplets: self
                .triplets
                .iter()
                .map(|&(r, c, v)| (r, c, v * s))
                .filter(|(_, _, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        Self::from_triplets(
            self.nrows,
            self.ncols,
            self.triplets.iter().chain(other.triplets.iter()).copied(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(T::zero() - T::one()))
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.ncols, "dimension mismatch in mul_vec");
        let mut y = vec![T::zero(); self.nrows];
        for &(r, c, v) in &self.triplets {
            y[r] += v * x[c];
        }
        y
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in mul");
        // rows of `other` grouped for random access
        let mut row_start = vec![0usize; other.nrows + 1];
        for &(r, _, _) in &other.triplets {
            row_start[r + 1] += 1;
        }
        for i in 0..other.nrows {
            row_start[i + 1] += row_start[i];
        }
        let mut acc: BTreeMap<(usize, usize), T> = BTreeMap::new();
        for &(r, c, v) in &self.triplets {
            for &(_, c2, v2) in &other.triplets[row_start[c]..row_start[c + 1]] {
                *acc.entry((r, c2)).or_insert_with(T::zero) += v * v2;
            }
        }
        let triplets = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, triplets }
    }

    pub fn is_zero(&self) -> bool {
        self.triplets.is_empty()
    }
}

impl SparseMatrix<i64> {
    pub fn to_f64(&self) -> SparseMatrix<f64> {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            triplets: self.triplets.iter().map(|&(r, c, v)| (r, c, v as f64)).collect(),
        }
    }
}

impl SparseMatrix<f64> {
    pub fn norm_inf(&self) -> f64 {
        self.triplets.iter().fold(0.0, |m, &(_, _, v)| m.max(v.abs()))
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.nrows, self.ncols);
        for &(r, c, v) in &self.triplets {
            m[(r, c)] = v;
        }
        m
    }
}

/// A sparse linear map between labelled cochain spaces.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub domain: Space,
    pub codomain: Space,
    pub matrix: SparseMatrix<f64>,
}

impl OperatorMatrix {
    pub fn new(domain: Space, codomain: Space, matrix: SparseMatrix<f64>) -> Self {
        OperatorMatrix { domain, codomain, matrix }
    }

    pub fn compose(&self, inner: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.domain, inner.codomain, "operator composition mismatch");
        OperatorMatrix {
            domain: inner.domain,
            codomain: self.codomain,
            matrix: self.matrix.mul(&inner.matrix),
        }
    }
}
