//! The augmentation ideal of the Burnside functor as a sum of inflated duals.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::inflate;
use crate::error::{Error, Result};
use crate::mackey::{augmentation, dual_z, CyclicGroupSpec, MackeyElement, MackeyFunctor, MackeyMorphism, SubFunctor};
use crate::zmod::{solve, IntMatrix};

/// The summand generated at level `k` by `[C_{p^k}/C_{p^(k-1)}] - p`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub k: usize,
    pub generator: MackeyElement,
    pub sub: SubFunctor,
    pub functor: MackeyFunctor,
    /// `functor -> inflate(Z* over C_{p^(n-k)}, k)`, sending `tr^j(generator)` to 1
    pub witness: MackeyMorphism,
}

#[derive(Clone, Debug)]
pub struct AugmentationDecomposition {
    pub burnside: MackeyFunctor,
    /// kernel of the augmentation
    pub ideal: SubFunctor,
    pub summands: Vec<Summand>,
    /// the summands add up to the ideal level by level
    pub sum_is_ideal: bool,
    /// ranks add up level by level, so the sum is direct
    pub ranks_add_up: bool,
}

impl AugmentationDecomposition {
    pub fn is_internal_direct_sum(&self) -> bool {
        self.sum_is_ideal && self.ranks_add_up
    }
}

fn summand(a: &MackeyFunctor, k: usize) -> Result<Summand> {
    let spec = a.spec();
    let n = spec.n();
    let mut g = vec![BigInt::from(0); k + 1];
    g[k - 1] = BigInt::one();
    g[k] = -BigInt::from(spec.p());
    let generator = MackeyElement::new(k, g);
    let sub = SubFunctor::generated(a, std::slice::from_ref(&generator))?;
    let (functor, incl) = sub.to_functor(a);
    let target = inflate(&dual_z(spec.quotient(k)?), k, spec)?;

    let mut maps = Vec::new();
    for j in 0..=n {
        let rank = functor.level(j).ngens();
        if j < k {
            maps.push(IntMatrix::zeros(target.level(j).ngens(), rank));
            continue;
        }
        if rank != 1 || target.level(j).ngens() != 1 {
            return Err(Error::Inconsistent(format!("summand {k} has rank {rank} at level {j}")));
        }
        // tr^(j-k)(generator) in Burnside coordinates, then as a multiple of the summand generator
        let chain = a.tr_composite(k, j).apply(&generator.coords);
        let c = coordinate(incl.map(j).matrix(), &chain)
            .ok_or_else(|| Error::Inconsistent(format!("transfer chain leaves summand {k} at level {j}")))?;
        if !c.abs().is_one() {
            return Err(Error::Inconsistent(format!(
                "transfer chain is {c} times the generator of summand {k} at level {j}"
            )));
        }
        maps.push(IntMatrix::scalar(1, c));
    }
    let witness = MackeyMorphism::new(functor.clone(), target, maps)?;
    if !witness.is_morphism() || !witness.is_isomorphism() {
        return Err(Error::Inconsistent(format!("the witness for summand {k} is not an isomorphism")));
    }
    Ok(Summand { k, generator, sub, functor, witness })
}

/// `c` with `column * c = v` for a one-column matrix.
fn coordinate(column: &IntMatrix, v: &[BigInt]) -> Option<BigInt> {
    solve(column, v).map(|x| x[0].clone())
}

/// Splits the augmentation ideal `I ⊂ A` into the summands generated at levels `1..=n`.
pub fn augmentation_decomposition(spec: CyclicGroupSpec) -> Result<AugmentationDecomposition> {
    if spec.n() == 0 {
        return Err(Error::Input("the augmentation ideal of the trivial group is zero".into()));
    }
    let aug = augmentation(spec);
    let burnside = aug.dom().clone();
    let ideal = aug.kernel()?;
    let summands = (1..=spec.n()).map(|k| summand(&burnside, k)).collect::<Result<Vec<_>>>()?;
    let total = summands.iter().fold(SubFunctor::zero(&burnside), |acc, s| acc.sum(&s.sub));
    let sum_is_ideal = total == ideal;
    let ranks_add_up = (0..=spec.n()).all(|j| {
        let parts: usize = summands.iter().map(|s| s.sub.lattice(j).rank()).sum();
        parts == ideal.lattice(j).rank()
    });
    Ok(AugmentationDecomposition { burnside, ideal, summands, sum_is_ideal, ranks_add_up })
}
