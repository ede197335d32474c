use std::fmt;

use num_bigint::BigInt;

use super::{MackeyFunctor, SubFunctor};
use crate::error::{Error, Result};
use crate::zmod::{solve, Hom, IntMatrix, Lattice};

/// Level-wise homomorphisms between two functors over the same group.
#[derive(Clone)]
pub struct MackeyMorphism {
    dom: MackeyFunctor,
    cod: MackeyFunctor,
    maps: Vec<Hom>,
}

impl fmt::Debug for MackeyMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MackeyMorphism").field("maps", &self.maps).finish()
    }
}

impl MackeyMorphism {
    /// Shape-checked constructor; see [`MackeyMorphism::check`] for the structure conditions.
    pub fn new(dom: MackeyFunctor, cod: MackeyFunctor, maps: Vec<IntMatrix>) -> Result<Self> {
        if dom.spec() != cod.spec() {
            return Err(Error::Input(format!("morphism from {} to {}", dom.spec(), cod.spec())));
        }
        if maps.len() != dom.n() + 1 {
            return Err(Error::Dimension(format!("{} level maps for {} levels", maps.len(), dom.n() + 1)));
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(k, m)| Hom::with_shape(dom.level(k).clone(), cod.level(k).clone(), m))
            .collect::<Result<Vec<_>>>()?;
        Ok(MackeyMorphism { dom, cod, maps })
    }

    /// Shape-checked and structure-checked constructor.
    pub fn new_checked(dom: MackeyFunctor, cod: MackeyFunctor, maps: Vec<IntMatrix>) -> Result<Self> {
        let f = Self::new(dom, cod, maps)?;
        f.check()?;
        Ok(f)
    }

    pub(crate) fn from_homs(dom: MackeyFunctor, cod: MackeyFunctor, maps: Vec<Hom>) -> Self {
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(k, h)| {
                Hom::with_shape(dom.level(k).clone(), cod.level(k).clone(), h.matrix().clone()).expect("level shapes")
            })
            .collect();
        MackeyMorphism { dom, cod, maps }
    }

    pub fn identity(m: &MackeyFunctor) -> Self {
        let maps = (0..=m.n()).map(|k| Hom::identity(m.level(k))).collect();
        MackeyMorphism { dom: m.clone(), cod: m.clone(), maps }
    }

    pub fn zero(dom: &MackeyFunctor, cod: &MackeyFunctor) -> Self {
        let maps = (0..=dom.n()).map(|k| Hom::zero(dom.level(k), cod.level(k))).collect();
        MackeyMorphism { dom: dom.clone(), cod: cod.clone(), maps }
    }

    pub fn dom(&self) -> &MackeyFunctor {
        &self.dom
    }

    pub fn cod(&self) -> &MackeyFunctor {
        &self.cod
    }

    pub fn map(&self, k: usize) -> &Hom {
        &self.maps[k]
    }

    pub fn maps(&self) -> &[Hom] {
        &self.maps
    }

    /// Description of the first failure: an ill-defined level map or a structure map that does
    /// not commute.
    pub fn first_failure(&self) -> Option<String> {
        for (k, f) in self.maps.iter().enumerate() {
            if let Some(r) = f.ill_defined_relation() {
                return Some(format!("level {k} map does not respect relation {r}"));
            }
        }
        let (a, b) = (&self.dom, &self.cod);
        for k in 0..=a.n() {
            if let Some(g) = a.act(k).then(&self.maps[k]).first_difference(&self.maps[k].then(b.act(k))) {
                return Some(format!("action not preserved at level {k}, generator {g}"));
            }
        }
        for k in 1..=a.n() {
            if let Some(g) = a.res(k).then(&self.maps[k - 1]).first_difference(&self.maps[k].then(b.res(k))) {
                return Some(format!("restriction not preserved at level {k}, generator {g}"));
            }
            if let Some(g) = a.tr(k).then(&self.maps[k]).first_difference(&self.maps[k - 1].then(b.tr(k))) {
                return Some(format!("transfer not preserved at level {k}, generator {g}"));
            }
        }
        None
    }

    pub fn check(&self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(msg) => Err(Error::Input(format!("not a morphism of Mackey functors: {msg}"))),
        }
    }

    pub fn is_morphism(&self) -> bool {
        self.first_failure().is_none()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &MackeyMorphism) -> MackeyMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(f, g)| f.then(g)).collect();
        MackeyMorphism { dom: self.dom.clone(), cod: other.cod.clone(), maps }
    }

    pub fn apply(&self, level: usize, v: &[BigInt]) -> Vec<BigInt> {
        self.maps[level].apply(v)
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(Hom::is_injective)
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(Hom::is_surjective)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Equality as maps at every level.
    pub fn equals(&self, other: &MackeyMorphism) -> bool {
        self.maps.iter().zip(&other.maps).all(|(f, g)| f.equals(g))
    }

    pub fn is_zero_map(&self) -> bool {
        self.maps.iter().all(Hom::is_zero_map)
    }

    /// Level-wise kernel, a sub-functor of the domain.
    pub fn kernel(&self) -> Result<SubFunctor> {
        self.check()?;
        Ok(SubFunctor::from_lattices_unchecked(self.maps.iter().map(Hom::kernel_lattice).collect()))
    }

    /// Level-wise image, a sub-functor of the codomain.
    pub fn image(&self) -> Result<SubFunctor> {
        self.check()?;
        let lattices = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, f)| self.cod.level(k).relation_lattice().with_columns(&f.matrix().columns()))
            .collect::<Vec<Lattice>>();
        Ok(SubFunctor::from_lattices_unchecked(lattices))
    }

    pub fn kernel_image(&self) -> Result<(SubFunctor, SubFunctor)> {
        Ok((self.kernel()?, self.image()?))
    }

    /// For a surjective `proj: dom -> q` whose kernel `self` kills, the unique `h: q -> cod`
    /// with `h ∘ proj = self`.
    pub fn factor_through(&self, proj: &MackeyMorphism) -> Result<MackeyMorphism> {
        if proj.dom() != self.dom() {
            return Err(Error::Input("the maps have different domains".into()));
        }
        let mut maps = Vec::new();
        for (k, (f, p)) in self.maps.iter().zip(&proj.maps).enumerate() {
            let q = p.cod();
            let a = p.matrix().hstack(q.relations());
            let mut cols = Vec::new();
            for i in 0..q.ngens() {
                let mut e = vec![BigInt::from(0); q.ngens()];
                e[i] = BigInt::from(1);
                let x = solve(&a, &e)
                    .ok_or_else(|| Error::Domain(format!("the projection is not surjective at level {k}")))?;
                cols.push(f.apply(&x[..p.dom().ngens()]));
            }
            let h = Hom::with_shape(q.clone(), f.cod().clone(), IntMatrix::from_columns(f.cod().ngens(), &cols))?;
            if !p.then(&h).equals(f) {
                return Err(Error::Domain(format!("the map does not vanish on the kernel at level {k}")));
            }
            maps.push(h);
        }
        Ok(MackeyMorphism { dom: proj.cod.clone(), cod: self.cod.clone(), maps })
    }
}
