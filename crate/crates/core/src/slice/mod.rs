//! Slices of Eilenberg-Mac Lane spectra, computed on the Mackey functor level.
//!
//! For `p^t <= k < p^(t+1)` the coslice stage `F^k M` is generated by the elements at levels
//! above `t` that restrict to zero at level `t`. The slice tower of `HM` has its layers
//! `F^r/F^(r+1)` at `r = p^k - 1` and sections `M/F^(r+1)`.

mod burnside;
mod pullback;

use std::fmt::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mackey::{to_json, MackeyElement, MackeyFunctor, MackeyMorphism, SubFunctor};
use crate::zmod::PresentedAbGroup;

pub use burnside::{augmentation_decomposition, AugmentationDecomposition, Summand};
pub use pullback::{
    deflate, geometric_quotient, inflate, is_pullback_of_zero_slice, is_pulled_back, max_geometric_sub,
    pullback_quotient,
};

/// The decreasing filtration `M = F^0 ⊇ F^1 ⊇ … ⊇ F^(p^n) = 0`.
#[derive(Clone, Debug)]
pub struct CosliceFiltration {
    base: MackeyFunctor,
    /// `by_level[t]` is `F^k` for `p^t <= k < p^(t+1)`; `by_level[n]` is zero
    by_level: Vec<SubFunctor>,
    whole: SubFunctor,
}

impl CosliceFiltration {
    pub fn base(&self) -> &MackeyFunctor {
        &self.base
    }

    /// Largest index with a possibly nonzero stage; `F^k = 0` from `p^n` on.
    pub fn top_index(&self) -> u64 {
        self.base.spec().order()
    }

    /// `F^k`
    pub fn stage(&self, k: u64) -> &SubFunctor {
        if k == 0 {
            return &self.whole;
        }
        let p = self.base.p();
        let mut t = 0;
        let mut bound = p;
        while k >= bound && t < self.base.n() {
            t += 1;
            bound = bound.saturating_mul(p);
        }
        &self.by_level[t]
    }

    /// `(k, F^k)` for `k = 0..=p^n`.
    pub fn stages(&self) -> impl Iterator<Item = (u64, &SubFunctor)> {
        (0..=self.top_index()).map(move |k| (k, self.stage(k)))
    }
}

fn composite_kernel_generators(m: &MackeyFunctor, t: usize) -> Vec<MackeyElement> {
    (t + 1..=m.n())
        .flat_map(|j| {
            m.res_composite(j, t).kernel_lattice().basis_columns().into_iter().map(move |c| MackeyElement::new(j, c))
        })
        .collect()
}

/// The coslice filtration of a valid functor.
pub fn coslice_filtration(m: &MackeyFunctor) -> Result<CosliceFiltration> {
    m.ensure_valid()?;
    let by_level = (0..=m.n())
        .map(|t| SubFunctor::generated(m, &composite_kernel_generators(m, t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CosliceFiltration { base: m.clone(), by_level, whole: SubFunctor::whole(m) })
}

/// One nonzero slice of `HM`.
#[derive(Clone, Debug)]
pub struct SliceEntry {
    /// `p^k - 1`
    pub dim: u64,
    /// the `k` above
    pub level: usize,
    /// `F^dim / F^(dim+1)`
    pub layer: MackeyFunctor,
    /// `M / F^(dim+1)`
    pub section: MackeyFunctor,
    pub section_proj: MackeyMorphism,
}

/// Nonzero slices ordered by dimension.
#[derive(Clone, Debug)]
pub struct SliceTower {
    pub base: MackeyFunctor,
    pub entries: Vec<SliceEntry>,
}

impl SliceTower {
    pub fn dims(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.dim).collect()
    }

    /// `[{"dim":r,"layer":…,"section":…},…]` with functors in canonical form.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{{\"dim\":{},\"layer\":{},\"section\":{}}}", e.dim, to_json(&e.layer), to_json(&e.section))
                .expect("write to string");
        }
        out.push(']');
        out
    }
}

/// `outer / inner` for sub-functors `inner ⊆ outer` of `m`.
pub fn subquotient(m: &MackeyFunctor, outer: &SubFunctor, inner: &SubFunctor) -> MackeyFunctor {
    let (s, incl) = outer.to_functor(m);
    let inner_in_s = SubFunctor::preimage(&incl, inner);
    inner_in_s.quotient(&s).0
}

/// The slice tower of `HM`; zero layers are left out.
pub fn slice_tower(m: &MackeyFunctor) -> Result<SliceTower> {
    let filt = coslice_filtration(m)?;
    let p = m.p();
    let mut entries = Vec::new();
    for k in 0..=m.n() {
        let dim = m.spec().pow(k) - 1;
        let upper = filt.stage(dim);
        let lower = filt.stage(dim + 1);
        let layer = subquotient(m, upper, lower);
        if layer.is_zero() {
            continue;
        }
        if !is_pullback_of_zero_slice(&layer, k) {
            return Err(Error::Inconsistent(format!(
                "layer in dimension {dim} is not a pulled back zero slice (p = {p})"
            )));
        }
        let (section, section_proj) = lower.quotient(m);
        entries.push(SliceEntry { dim, level: k, layer, section, section_proj });
    }
    Ok(SliceTower { base: m.clone(), entries })
}

/// True when every composite restriction to level 0 is injective.
pub fn is_zero_slice(m: &MackeyFunctor) -> bool {
    (1..=m.n()).all(|j| m.res_composite(j, 0).is_injective())
}

/// `M/F^1 M` with the projection.
#[derive(Clone, Debug)]
pub struct ZeroSliceQuotient {
    pub quotient: MackeyFunctor,
    pub proj: MackeyMorphism,
    /// level `k` of the quotient computed as the image of the restriction to level 0
    pub images: Vec<Arc<PresentedAbGroup>>,
}

/// Level-wise images of the composite restrictions to level 0.
pub fn restriction_images(m: &MackeyFunctor) -> Result<Vec<Arc<PresentedAbGroup>>> {
    (0..=m.n()).map(|k| Ok(m.res_composite(k, 0).image()?.0)).collect()
}

/// The largest quotient with injective restrictions, cross-checked against the image formula.
pub fn zero_slice_quotient(m: &MackeyFunctor) -> Result<ZeroSliceQuotient> {
    let filt = coslice_filtration(m)?;
    let (quotient, proj) = filt.stage(1).quotient(m);
    if !is_zero_slice(&quotient) {
        return Err(Error::Inconsistent("quotient by F^1 has a non-injective restriction".into()));
    }
    let images = restriction_images(m)?;
    for (k, img) in images.iter().enumerate() {
        if img.invariant_factors() != quotient.level(k).invariant_factors() {
            return Err(Error::Inconsistent(format!(
                "level {k}: quotient {} but restriction image {}",
                quotient.level_strings()[k],
                crate::zmod::group_string(img.invariant_factors())
            )));
        }
    }
    Ok(ZeroSliceQuotient { quotient, proj, images })
}
