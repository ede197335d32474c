//! Inflation from quotient groups and the geometric constructions.

use std::sync::Arc;

use num_bigint::BigInt;

use super::is_zero_slice;
use crate::error::{Error, Result};
use crate::mackey::{CyclicGroupSpec, MackeyFunctor, MackeyMorphism, SubFunctor};
use crate::zmod::{IntMatrix, Lattice, PresentedAbGroup};

/// Inflation along `G -> G/C_{p^k}`: zero below level `k`, then the levels of `mq`.
pub fn inflate(mq: &MackeyFunctor, k: usize, target: CyclicGroupSpec) -> Result<MackeyFunctor> {
    if target.p() != mq.p() || target.n() != mq.n() + k {
        return Err(Error::Input(format!(
            "cannot inflate a functor over {} to {target} along C_{}^{k}",
            mq.spec(),
            mq.p()
        )));
    }
    let n = target.n();
    let zero = Arc::new(PresentedAbGroup::trivial());
    let mut levels = vec![zero; k];
    levels.extend(mq.levels().iter().cloned());
    let mut act: Vec<IntMatrix> = vec![IntMatrix::zeros(0, 0); k];
    act.extend((0..=mq.n()).map(|j| mq.act(j).matrix().clone()));
    let mut res = Vec::new();
    let mut tr = Vec::new();
    for l in 1..=n {
        if l <= k {
            let (lo, hi) = (levels[l - 1].ngens(), levels[l].ngens());
            res.push(IntMatrix::zeros(lo, hi));
            tr.push(IntMatrix::zeros(hi, lo));
        } else {
            res.push(mq.res(l - k).matrix().clone());
            tr.push(mq.tr(l - k).matrix().clone());
        }
    }
    MackeyFunctor::new(target, levels.iter().map(|g| (**g).clone()).collect(), act, res, tr)
}

/// True when levels `0..k` are trivial.
pub fn is_pulled_back(m: &MackeyFunctor, k: usize) -> bool {
    k <= m.n() && (0..k).all(|j| m.level(j).is_trivial())
}

/// Inverse of [`inflate`] on functors pulled back from `G/C_{p^k}`.
pub fn deflate(m: &MackeyFunctor, k: usize) -> Result<MackeyFunctor> {
    if !is_pulled_back(m, k) {
        return Err(Error::Domain(format!("the functor is not pulled back from G/C_{}^{k}", m.p())));
    }
    let spec = m.spec().quotient(k)?;
    let n = m.n();
    MackeyFunctor::new(
        spec,
        (k..=n).map(|j| (**m.level(j)).clone()).collect(),
        (k..=n).map(|j| m.act(j).matrix().clone()).collect(),
        (k + 1..=n).map(|j| m.res(j).matrix().clone()).collect(),
        (k + 1..=n).map(|j| m.tr(j).matrix().clone()).collect(),
    )
}

/// Pulled back from `G/C_{p^k}` and a zero slice there.
pub fn is_pullback_of_zero_slice(m: &MackeyFunctor, k: usize) -> bool {
    deflate(m, k).map(|d| is_zero_slice(&d)).unwrap_or(false)
}

/// The largest sub-functor vanishing below the top level: the kernel of the top restriction.
pub fn max_geometric_sub(m: &MackeyFunctor) -> SubFunctor {
    let n = m.n();
    let mut lattices: Vec<Lattice> = (0..n).map(|k| m.level(k).relation_lattice()).collect();
    lattices.push(if n == 0 { Lattice::full(m.level(0).ngens()) } else { m.res(n).kernel_lattice() });
    SubFunctor::from_lattices(m, lattices).expect("kernel of the top restriction is closed")
}

fn unit(len: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); len];
    v[i] = BigInt::from(1);
    v
}

/// The largest quotient pulled back from `G/C_{p^k}`: `m` modulo everything generated by
/// levels below `k`.
pub fn pullback_quotient(m: &MackeyFunctor, k: usize) -> Result<(MackeyFunctor, MackeyMorphism)> {
    if k > m.n() {
        return Err(Error::Input(format!("level {k} above the top level {}", m.n())));
    }
    let per_level = (0..=m.n())
        .map(|j| {
            let g = m.level(j).ngens();
            if j < k {
                (0..g).map(|i| unit(g, i)).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let sub = SubFunctor::generated_by_levels(m, per_level)?;
    Ok(sub.quotient(m))
}

/// The largest quotient concentrated at the top level.
pub fn geometric_quotient(m: &MackeyFunctor) -> Result<(MackeyFunctor, MackeyMorphism)> {
    pullback_quotient(m, m.n())
}
