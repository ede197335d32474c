use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::{CyclicGroupSpec, MackeyFunctor, MackeyMorphism};
use crate::error::{Error, Result};
use crate::zmod::{Hom, IntMatrix, PresentedAbGroup};

/// The functor with every level trivial.
pub fn zero_functor(spec: CyclicGroupSpec) -> MackeyFunctor {
    let n = spec.n();
    let zero = Arc::new(PresentedAbGroup::trivial());
    let levels = vec![zero; n + 1];
    MackeyFunctor::from_arcs(
        spec,
        levels,
        vec![IntMatrix::zeros(0, 0); n + 1],
        vec![IntMatrix::zeros(0, 0); n],
        vec![IntMatrix::zeros(0, 0); n],
    )
    .expect("empty maps")
}

fn rank_one_levels(spec: CyclicGroupSpec, res: i64, tr: i64) -> MackeyFunctor {
    let n = spec.n();
    let z = Arc::new(PresentedAbGroup::free(1));
    MackeyFunctor::from_arcs(
        spec,
        vec![z; n + 1],
        vec![IntMatrix::identity(1); n + 1],
        vec![IntMatrix::scalar(1, res); n],
        vec![IntMatrix::scalar(1, tr); n],
    )
    .expect("1x1 maps")
}

/// The constant functor `Z`: restriction 1, transfer `p`.
pub fn constant_z(spec: CyclicGroupSpec) -> MackeyFunctor {
    rank_one_levels(spec, 1, spec.p() as i64)
}

/// The dual `Z*`: restriction `p`, transfer 1.
pub fn dual_z(spec: CyclicGroupSpec) -> MackeyFunctor {
    rank_one_levels(spec, spec.p() as i64, 1)
}

/// The Burnside functor. Level `k` is free on the orbits `[C_{p^k}/C_{p^j}]`, `j = 0..=k`, in
/// that order.
pub fn burnside(spec: CyclicGroupSpec) -> MackeyFunctor {
    let n = spec.n();
    let p = BigInt::from(spec.p());
    let levels: Vec<_> = (0..=n).map(|k| Arc::new(PresentedAbGroup::free(k + 1))).collect();
    let act = (0..=n).map(|k| IntMatrix::identity(k + 1)).collect();
    let mut res = Vec::new();
    let mut tr = Vec::new();
    for k in 1..=n {
        // C_{p^k}/C_{p^j} splits into p orbits of C_{p^(k-1)} for j < k; the point stays a point
        let mut r = IntMatrix::zeros(k, k + 1);
        for j in 0..k {
            r[(j, j)] = p.clone();
        }
        r[(k - 1, k)] = BigInt::one();
        res.push(r);
        let mut t = IntMatrix::zeros(k + 1, k);
        for j in 0..k {
            t[(j, j)] = BigInt::one();
        }
        tr.push(t);
    }
    MackeyFunctor::from_arcs(spec, levels, act, res, tr).expect("burnside shapes")
}

/// The augmentation `A -> Z` sending a finite set to its cardinality.
pub fn augmentation(spec: CyclicGroupSpec) -> MackeyMorphism {
    let a = burnside(spec);
    let z = constant_z(spec);
    let maps = (0..=spec.n())
        .map(|k| {
            let row: Vec<BigInt> = (0..=k).map(|j| BigInt::from(spec.pow(k - j))).collect();
            IntMatrix::from_vec(1, k + 1, row).expect("row shape")
        })
        .collect();
    MackeyMorphism::new(a, z, maps).expect("augmentation shapes")
}

/// Fixed point functor of a `G`-module: level `k` is the subgroup fixed by `g^(p^(n-k))`,
/// restriction is inclusion and transfer is the orbit sum.
pub fn fixed_point_functor(spec: CyclicGroupSpec, module: &Arc<PresentedAbGroup>, a: &Hom) -> Result<MackeyFunctor> {
    if **a.dom() != **module || **a.cod() != **module {
        return Err(Error::Input("the action must be an endomorphism of the module".into()));
    }
    if let Some(r) = a.ill_defined_relation() {
        return Err(Error::Input(format!("the action does not respect relation {r}")));
    }
    let a = Hom::new_unchecked(module.clone(), module.clone(), a.matrix().clone());
    let id = Hom::identity(module);
    if !a.pow(spec.order()).equals(&id) {
        return Err(Error::Input(format!("the action does not have order dividing {}", spec.order())));
    }
    let n = spec.n();
    let mut levels = Vec::new();
    let mut incl = Vec::new();
    for k in 0..=n {
        let (fix, i) = a.pow(spec.pow(n - k)).sub(&id).kernel()?;
        levels.push(fix);
        incl.push(i);
    }
    let mut act = Vec::new();
    for k in 0..=n {
        act.push(Hom::lift_through(&incl[k], &incl[k].then(&a))?.matrix().clone());
    }
    let mut res = Vec::new();
    let mut tr = Vec::new();
    for k in 1..=n {
        res.push(Hom::lift_through(&incl[k - 1], &incl[k])?.matrix().clone());
        let step = a.pow(spec.pow(n - k));
        let mut term = id.clone();
        let mut sum = Hom::zero(module, module);
        for _ in 0..spec.p() {
            sum = sum.add(&term);
            term = term.then(&step);
        }
        tr.push(Hom::lift_through(&incl[k], &incl[k - 1].then(&sum))?.matrix().clone());
    }
    Ok(MackeyFunctor::from_arcs(spec, levels, act, res, tr)?.with_reduced_maps())
}
