use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// A sublattice of `Z^dim`, stored as its column Hermite normal form.
///
/// The basis is lower echelon: pivot rows strictly increase with the column index, pivots are
/// positive, and entries of earlier columns in a pivot row are reduced into `[0, pivot)`. Two
/// lattices are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: IntMatrix::zeros(dim, 0), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Lattice { dim, basis: IntMatrix::identity(dim), pivots: (0..dim).collect() }
    }

    /// Lattice spanned by the columns of `m`.
    pub fn from_matrix(m: &IntMatrix) -> Self {
        let mut a = m.clone();
        let dim = a.rows();
        let mut pc = 0;
        let mut pivots = Vec::new();
        for row in 0..dim {
            if pc == a.cols() {
                break;
            }
            // gather the gcd of row entries in columns pc.. into column pc
            for j in pc + 1..a.cols() {
                if a[(row, j)].is_zero() {
                    continue;
                }
                if a[(row, pc)].is_zero() {
                    a.swap_cols(pc, j);
                    continue;
                }
                let x = a[(row, pc)].clone();
                let y = a[(row, j)].clone();
                let e = x.extended_gcd(&y);
                let (xg, yg) = (&x / &e.gcd, &y / &e.gcd);
                // [col_pc, col_j] <- [s col_pc + t col_j, -yg col_pc + xg col_j]
                for i in 0..dim {
                    let cp = a[(i, pc)].clone();
                    let cj = a[(i, j)].clone();
                    a[(i, pc)] = &e.x * &cp + &e.y * &cj;
                    a[(i, j)] = &xg * &cj - &yg * &cp;
                }
            }
            if a[(row, pc)].is_zero() {
                continue;
            }
            if a[(row, pc)].is_negative() {
                a.negate_col(pc);
            }
            let p = a[(row, pc)].clone();
            for j in 0..pc {
                let q = a[(row, j)].div_floor(&p);
                a.add_col_multiple(j, pc, &-q);
            }
            pivots.push(row);
            pc += 1;
        }
        let idx: Vec<usize> = (0..pc).collect();
        Lattice { dim, basis: a.select_cols(&idx), pivots }
    }

    pub fn from_columns(dim: usize, cols: &[Vec<BigInt>]) -> Self {
        Self::from_matrix(&IntMatrix::from_columns(dim, cols))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_columns(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim && self.pivots.iter().enumerate().all(|(j, &r)| self.basis[(r, j)].is_one())
    }

    /// Coefficients `c` with `basis * c = v`, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim, "vector outside the ambient lattice");
        let mut rest = v.to_vec();
        let mut coeffs = vec![BigInt::zero(); self.rank()];
        let mut next_pivot = 0;
        for row in 0..self.dim {
            if next_pivot < self.pivots.len() && self.pivots[next_pivot] == row {
                let j = next_pivot;
                let (q, r) = rest[row].div_rem(&self.basis[(row, j)]);
                if !r.is_zero() {
                    return None;
                }
                if !q.is_zero() {
                    for i in row..self.dim {
                        let d = &self.basis[(i, j)] * &q;
                        rest[i] -= d;
                    }
                }
                coeffs[j] = q;
                next_pivot += 1;
            } else if !rest[row].is_zero() {
                return None;
            }
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis_columns().iter().all(|c| self.contains(c))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        Lattice::from_matrix(&self.basis.hstack(&other.basis))
    }

    pub fn with_columns(&self, cols: &[Vec<BigInt>]) -> Lattice {
        if cols.is_empty() {
            return self.clone();
        }
        Lattice::from_matrix(&self.basis.hstack(&IntMatrix::from_columns(self.dim, cols)))
    }

    /// Index `[Z^dim : self]` for full-rank lattices, `None` otherwise.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() != self.dim {
            return None;
        }
        Some((0..self.dim).map(|j| self.basis[(self.pivots[j], j)].clone()).fold(BigInt::one(), |a, b| a * b))
    }
}
