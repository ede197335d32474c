//! Smith normal form and the integer linear algebra built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Result of a Smith normal form computation: `u * m * v = s`.
///
/// `u_inv` and `v_inv` are the inverses of the unimodular transforms, maintained alongside so
/// callers never have to invert a matrix.
#[derive(Clone, Debug)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// Diagonal entries `d_1 | d_2 | ...`, of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct Reducer {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.s.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.s.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Minimal absolute nonzero entry of the trailing block, first in (row, col) order on ties.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let x = &self.s[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.s[b].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let (rows, cols) = (self.s.rows(), self.s.cols());
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.s[(t, t)].clone();

            let mut clean = true;
            for i in t + 1..rows {
                if self.s[(i, t)].is_zero() {
                    continue;
                }
                let q = self.s[(i, t)].div_floor(&p);
                self.add_row(i, t, &-q);
                clean &= self.s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if self.s[(t, j)].is_zero() {
                    continue;
                }
                let q = self.s[(t, j)].div_floor(&p);
                self.add_col(j, t, &-q);
                clean &= self.s[(t, j)].is_zero();
            }
            if !clean {
                // a nonzero remainder is now the smallest entry
                continue;
            }

            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.s[(i, j)].is_multiple_of(&p)));
            if let Some(i) = offender {
                self.add_row(t, i, &BigInt::from(1));
                continue;
            }
            if p.is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

/// Smith normal form `u * m * v = s` with nonnegative diagonal `d_1 | d_2 | ...`.
pub fn snf(m: &IntMatrix) -> Snf {
    let mut r = Reducer {
        s: m.clone(),
        u: IntMatrix::identity(m.rows()),
        u_inv: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
        v_inv: IntMatrix::identity(m.cols()),
    };
    let rank = r.run();
    Snf { s: r.s, u: r.u, v: r.v, u_inv: r.u_inv, v_inv: r.v_inv, rank }
}

/// Outcome of a lattice membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `lattice * witness = x`
    Member(Vec<BigInt>),
    /// Coordinate `index` of `U x` is `value`, which is not a multiple of the SNF entry `divisor`
    /// (`divisor = 0` past the rank).
    NonMember { index: usize, value: BigInt, divisor: BigInt },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn witness(self) -> Option<Vec<BigInt>> {
        match self {
            Membership::Member(w) => Some(w),
            Membership::NonMember { .. } => None,
        }
    }
}

/// Decides whether `x` lies in the column span of `lattice`.
pub fn membership(x: &[BigInt], lattice: &IntMatrix) -> Result<Membership> {
    if x.len() != lattice.rows() {
        return Err(Error::Dimension(format!(
            "vector of length {} against a lattice in Z^{}",
            x.len(),
            lattice.rows()
        )));
    }
    Ok(membership_with(&snf(lattice), x))
}

pub(crate) fn membership_with(f: &Snf, x: &[BigInt]) -> Membership {
    let ux = f.u.mul_vec(x);
    let mut y = vec![BigInt::zero(); f.v.rows()];
    for (i, c) in ux.into_iter().enumerate() {
        if i < f.rank {
            let d = &f.s[(i, i)];
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Membership::NonMember { index: i, value: c, divisor: d.clone() };
            }
            y[i] = q;
        } else if !c.is_zero() {
            return Membership::NonMember { index: i, value: c, divisor: BigInt::zero() };
        }
    }
    Membership::Member(f.v.mul_vec(&y))
}

/// Integer solution of `a * x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    membership(b, a).ok().and_then(Membership::witness)
}

/// Columns form a basis of the integer kernel `{x : a x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let f = snf(a);
    let idx: Vec<usize> = (f.rank..a.cols()).collect();
    f.v.select_cols(&idx)
}
