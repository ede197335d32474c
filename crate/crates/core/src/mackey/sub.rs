use num_bigint::BigInt;

use super::{MackeyElement, MackeyFunctor, MackeyMorphism};
use crate::error::{Error, Result};
use crate::zmod::{quotient_with_section, sublattice_presentation, Hom, IntMatrix, Lattice, PresentedAbGroup};

/// One pass of the closure loop over all levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosureStep {
    Act,
    /// downward, top level first
    Res,
    /// upward, bottom level first
    Tr,
}

pub const DEFAULT_CLOSURE_ORDER: [ClosureStep; 3] = [ClosureStep::Act, ClosureStep::Res, ClosureStep::Tr];

/// A sub-functor, stored as one lattice per level. Each lattice contains the relations of its
/// level, so it describes a subgroup of `Z^ngens / relations`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubFunctor {
    lattices: Vec<Lattice>,
}

impl SubFunctor {
    pub(crate) fn from_lattices_unchecked(lattices: Vec<Lattice>) -> Self {
        SubFunctor { lattices }
    }

    /// Checked constructor: the lattices must contain the relations and be closed under the
    /// structure maps.
    pub fn from_lattices(m: &MackeyFunctor, lattices: Vec<Lattice>) -> Result<Self> {
        if lattices.len() != m.n() + 1 {
            return Err(Error::Dimension(format!("{} lattices for {} levels", lattices.len(), m.n() + 1)));
        }
        for (k, l) in lattices.iter().enumerate() {
            if l.dim() != m.level(k).ngens() || !l.contains_lattice(&m.level(k).relation_lattice()) {
                return Err(Error::Input(format!("lattice {k} is not a subgroup of level {k}")));
            }
        }
        let s = SubFunctor { lattices };
        if !s.is_closed(m) {
            return Err(Error::Input("the subgroups are not closed under the structure maps".into()));
        }
        Ok(s)
    }

    pub fn zero(m: &MackeyFunctor) -> Self {
        SubFunctor { lattices: m.levels().iter().map(|g| g.relation_lattice()).collect() }
    }

    pub fn whole(m: &MackeyFunctor) -> Self {
        SubFunctor { lattices: m.levels().iter().map(|g| Lattice::full(g.ngens())).collect() }
    }

    /// The smallest sub-functor containing `gens`.
    pub fn generated(m: &MackeyFunctor, gens: &[MackeyElement]) -> Result<Self> {
        Ok(Self::generated_with_order(m, gens, &DEFAULT_CLOSURE_ORDER)?.0)
    }

    /// Closure with a chosen sweep order; also returns the number of sweeps, counting the last
    /// one that changed nothing.
    pub fn generated_with_order(
        m: &MackeyFunctor,
        gens: &[MackeyElement],
        order: &[ClosureStep],
    ) -> Result<(Self, usize)> {
        let mut per_level = vec![Vec::new(); m.n() + 1];
        for e in gens {
            m.check_element(e)?;
            per_level[e.level].push(e.coords.clone());
        }
        Ok(Self::close(m, per_level, order))
    }

    /// Closure of the subgroups spanned by the given generators at each level.
    pub fn generated_by_levels(m: &MackeyFunctor, per_level: Vec<Vec<Vec<BigInt>>>) -> Result<Self> {
        if per_level.len() != m.n() + 1 {
            return Err(Error::Dimension(format!("{} generator lists for {} levels", per_level.len(), m.n() + 1)));
        }
        for (k, gens) in per_level.iter().enumerate() {
            for g in gens {
                m.check_element(&MackeyElement::new(k, g.clone()))?;
            }
        }
        Ok(Self::close(m, per_level, &DEFAULT_CLOSURE_ORDER).0)
    }

    fn close(m: &MackeyFunctor, per_level: Vec<Vec<Vec<BigInt>>>, order: &[ClosureStep]) -> (Self, usize) {
        let n = m.n();
        let mut lat: Vec<Lattice> =
            per_level.iter().enumerate().map(|(k, gens)| m.level(k).relation_lattice().with_columns(gens)).collect();
        let image = |h: &Hom, l: &Lattice| -> Vec<Vec<BigInt>> { h.matrix().mul(l.basis()).columns() };
        let mut sweeps = 0;
        loop {
            sweeps += 1;
            let before = lat.clone();
            for step in order {
                match step {
                    ClosureStep::Act => {
                        for k in 0..=n {
                            let cols = image(m.act(k), &lat[k]);
                            lat[k] = lat[k].with_columns(&cols);
                        }
                    }
                    ClosureStep::Res => {
                        for k in (1..=n).rev() {
                            let cols = image(m.res(k), &lat[k]);
                            lat[k - 1] = lat[k - 1].with_columns(&cols);
                        }
                    }
                    ClosureStep::Tr => {
                        for k in 1..=n {
                            let cols = image(m.tr(k), &lat[k - 1]);
                            lat[k] = lat[k].with_columns(&cols);
                        }
                    }
                }
            }
            if lat == before {
                break;
            }
        }
        (SubFunctor { lattices: lat }, sweeps)
    }

    pub fn lattice(&self, k: usize) -> &Lattice {
        &self.lattices[k]
    }

    pub fn lattices(&self) -> &[Lattice] {
        &self.lattices
    }

    /// Lattice basis vectors at every level, as elements.
    pub fn generators(&self) -> Vec<MackeyElement> {
        self.lattices
            .iter()
            .enumerate()
            .flat_map(|(k, l)| l.basis_columns().into_iter().map(move |c| MackeyElement::new(k, c)))
            .collect()
    }

    pub fn contains(&self, e: &MackeyElement) -> bool {
        self.lattices[e.level].contains(&e.coords)
    }

    pub fn is_contained_in(&self, other: &SubFunctor) -> bool {
        self.lattices.iter().zip(&other.lattices).all(|(a, b)| b.contains_lattice(a))
    }

    pub fn is_zero(&self, m: &MackeyFunctor) -> bool {
        *self == SubFunctor::zero(m)
    }

    pub fn is_closed(&self, m: &MackeyFunctor) -> bool {
        let inside = |h: &Hom, l: &Lattice, target: &Lattice| {
            h.matrix().mul(l.basis()).columns().iter().all(|c| target.contains(c))
        };
        let n = m.n();
        (0..=n).all(|k| inside(m.act(k), &self.lattices[k], &self.lattices[k]))
            && (1..=n).all(|k| {
                inside(m.res(k), &self.lattices[k], &self.lattices[k - 1])
                    && inside(m.tr(k), &self.lattices[k - 1], &self.lattices[k])
            })
    }

    /// Level-wise sum; the sum of two sub-functors is again one.
    pub fn sum(&self, other: &SubFunctor) -> SubFunctor {
        SubFunctor { lattices: self.lattices.iter().zip(&other.lattices).map(|(a, b)| a.sum(b)).collect() }
    }

    /// The sub-functor as a functor in its own right, with its inclusion.
    pub fn to_functor(&self, m: &MackeyFunctor) -> (MackeyFunctor, MackeyMorphism) {
        let n = m.n();
        let (levels, incl): (Vec<_>, Vec<_>) =
            (0..=n).map(|k| sublattice_presentation(m.level(k), &self.lattices[k])).unzip();
        let lift = |inner: &Hom, h: &Hom| -> IntMatrix {
            Hom::lift_through(inner, h).expect("sub-functor is closed").matrix().clone()
        };
        let act = (0..=n).map(|k| lift(&incl[k], &incl[k].then(m.act(k)))).collect();
        let res = (1..=n).map(|k| lift(&incl[k - 1], &incl[k].then(m.res(k)))).collect();
        let tr = (1..=n).map(|k| lift(&incl[k], &incl[k - 1].then(m.tr(k)))).collect();
        let s = MackeyFunctor::from_arcs(m.spec(), levels, act, res, tr).expect("lifted shapes").with_reduced_maps();
        let incl = MackeyMorphism::from_homs(s.clone(), m.clone(), incl);
        (s, incl)
    }

    /// `m / self` with the projection.
    pub fn quotient(&self, m: &MackeyFunctor) -> (MackeyFunctor, MackeyMorphism) {
        let n = m.n();
        let mut levels = Vec::new();
        let mut proj = Vec::new();
        let mut section = Vec::new();
        for k in 0..=n {
            let (q, p, s) = quotient_with_section(m.level(k), &self.lattices[k].basis_columns())
                .expect("lattice vectors have level length");
            levels.push(q);
            proj.push(p);
            section.push(s);
        }
        let induced = |h: &Hom, d: usize, c: usize| proj[c].matrix().mul(h.matrix()).mul(&section[d]);
        let act = (0..=n).map(|k| induced(m.act(k), k, k)).collect();
        let res = (1..=n).map(|k| induced(m.res(k), k, k - 1)).collect();
        let tr = (1..=n).map(|k| induced(m.tr(k), k - 1, k)).collect();
        let q = MackeyFunctor::from_arcs(m.spec(), levels, act, res, tr).expect("induced shapes").with_reduced_maps();
        let proj = MackeyMorphism::from_homs(m.clone(), q.clone(), proj);
        (q, proj)
    }

    /// Elements of `f.dom` whose image lies in `target`.
    pub fn preimage(f: &MackeyMorphism, target: &SubFunctor) -> SubFunctor {
        let lattices = f
            .maps()
            .iter()
            .zip(&target.lattices)
            .map(|(h, t)| {
                let q =
                    std::sync::Arc::new(PresentedAbGroup::new(t.dim(), t.basis().clone()).expect("lattice basis rows"));
                Hom::with_shape(h.dom().clone(), q, h.matrix().clone()).expect("same generators").kernel_lattice()
            })
            .collect();
        SubFunctor { lattices }
    }

    /// Image of `self` (a sub-functor of `f.dom`) in `f.cod`.
    pub fn image_under(&self, f: &MackeyMorphism) -> SubFunctor {
        let lattices = f
            .maps()
            .iter()
            .zip(&self.lattices)
            .map(|(h, l)| h.cod().relation_lattice().with_columns(&h.matrix().mul(l.basis()).columns()))
            .collect();
        SubFunctor { lattices }
    }
}

impl MackeyFunctor {
    /// The sub-functor generated by `gens`, with its inclusion.
    pub fn sub_generated(&self, gens: &[MackeyElement]) -> Result<(MackeyFunctor, MackeyMorphism)> {
        Ok(SubFunctor::generated(self, gens)?.to_functor(self))
    }

    /// Quotient by the image of an injective morphism into `self`.
    pub fn quotient_by(&self, incl: &MackeyMorphism) -> Result<(MackeyFunctor, MackeyMorphism)> {
        if incl.cod() != self {
            return Err(Error::Input("the inclusion does not land in this functor".into()));
        }
        incl.check()?;
        if !incl.is_injective() {
            return Err(Error::Input("the map is not injective, so it does not present a sub-functor".into()));
        }
        Ok(incl.image()?.quotient(self))
    }
}
