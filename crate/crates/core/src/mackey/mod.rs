//! Mackey functors for the cyclic group `C_{p^n}`.
//!
//! Level `k` holds the value at `G/C_{p^k}`; level `0` is the underlying group and level `n` the
//! fixed level. Every level carries the action of the chosen generator `g` of `G`, restriction
//! goes from level `k` to level `k - 1` and transfer the other way. The axioms checked by
//! [`MackeyFunctor::validate`]:
//!
//! * A1: `act(k)^(p^(n-k)) = 1`
//! * A2: `res(k) ∘ act(k) = act(k-1) ∘ res(k)`
//! * A3: `tr(k) ∘ act(k-1) = act(k) ∘ tr(k)`
//! * A4: `res(k) ∘ tr(k) = Σ_{i<p} act(k-1)^(i p^(n-k))`

mod constructors;
mod iso;
mod json;
mod morphism;
mod sub;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::zmod::{group_string, Hom, IntMatrix, PresentedAbGroup};

pub use constructors::{augmentation, burnside, constant_z, dual_z, fixed_point_functor, zero_functor};
pub use iso::{is_isomorphic_bruteforce, level_isomorphisms, signed_diagonal_isomorphism};
pub use json::{from_json, from_json_value, to_json};
pub use morphism::MackeyMorphism;
pub use sub::{ClosureStep, SubFunctor, DEFAULT_CLOSURE_ORDER};

/// The group `C_{p^n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicGroupSpec {
    p: u64,
    n: usize,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl CyclicGroupSpec {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not a prime")));
        }
        if p.checked_pow(n as u32).is_none() {
            return Err(Error::Input(format!("{p}^{n} does not fit in 64 bits")));
        }
        Ok(CyclicGroupSpec { p, n })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `p^e`
    pub fn pow(&self, e: usize) -> u64 {
        self.p.pow(e as u32)
    }

    /// `|G| = p^n`
    pub fn order(&self) -> u64 {
        self.pow(self.n)
    }

    /// The quotient `C_{p^(n-k)}`.
    pub fn quotient(&self, k: usize) -> Result<Self> {
        if k > self.n {
            return Err(Error::Input(format!("no subgroup C_{}^{k} in C_{}^{}", self.p, self.p, self.n)));
        }
        Ok(CyclicGroupSpec { p: self.p, n: self.n - k })
    }
}

impl fmt::Display for CyclicGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{{{}^{}}}", self.p, self.n)
    }
}

/// Which structure map a check is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureMap {
    Action,
    Restriction,
    Transfer,
}

/// A Mackey functor axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    WellDefined(StructureMap),
    /// A1
    ActionOrder,
    /// A2
    RestrictionEquivariance,
    /// A3
    TransferEquivariance,
    /// A4
    DoubleCoset,
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::WellDefined(StructureMap::Action) => "well-definedness of the action",
            Axiom::WellDefined(StructureMap::Restriction) => "well-definedness of the restriction",
            Axiom::WellDefined(StructureMap::Transfer) => "well-definedness of the transfer",
            Axiom::ActionOrder => "order of the action",
            Axiom::RestrictionEquivariance => "restriction equivariance",
            Axiom::TransferEquivariance => "transfer equivariance",
            Axiom::DoubleCoset => "double coset formula",
        }
    }
}

/// One failed axiom, located at a level and witnessed by a generator of the domain.
///
/// For maps between two levels the reported level is the upper one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub axiom: Axiom,
    pub level: usize,
    pub generator: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, level {} (witness generator {})", self.axiom.name(), self.level, self.generator)
    }
}

/// A Mackey functor for `C_{p^n}`.
#[derive(Clone)]
pub struct MackeyFunctor {
    spec: CyclicGroupSpec,
    levels: Vec<Arc<PresentedAbGroup>>,
    act: Vec<Hom>,
    /// `res[k]`: level `k + 1` to level `k`
    res: Vec<Hom>,
    /// `tr[k]`: level `k` to level `k + 1`
    tr: Vec<Hom>,
}

impl PartialEq for MackeyFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
            && self.levels.len() == other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| a == b)
            && maps_equal(&self.act, &other.act)
            && maps_equal(&self.res, &other.res)
            && maps_equal(&self.tr, &other.tr)
    }
}

impl Eq for MackeyFunctor {}

fn maps_equal(a: &[Hom], b: &[Hom]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.matrix() == y.matrix())
}

/// An element of one level of a Mackey functor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MackeyElement {
    pub level: usize,
    pub coords: Vec<BigInt>,
}

impl MackeyElement {
    pub fn new(level: usize, coords: Vec<BigInt>) -> Self {
        MackeyElement { level, coords }
    }

    pub fn from_i64(level: usize, xs: &[i64]) -> Self {
        MackeyElement { level, coords: xs.iter().map(|&x| BigInt::from(x)).collect() }
    }
}

impl MackeyFunctor {
    /// Assembles a functor from groups and structure maps, checking shapes only.
    ///
    /// `act` has `n + 1` entries; `res[k]` maps level `k + 1` to level `k` and `tr[k]` maps level
    /// `k` to level `k + 1`, for `k < n`.
    pub fn new(
        spec: CyclicGroupSpec,
        levels: Vec<PresentedAbGroup>,
        act: Vec<IntMatrix>,
        res: Vec<IntMatrix>,
        tr: Vec<IntMatrix>,
    ) -> Result<Self> {
        let levels: Vec<Arc<PresentedAbGroup>> = levels.into_iter().map(Arc::new).collect();
        Self::from_arcs(spec, levels, act, res, tr)
    }

    pub(crate) fn from_arcs(
        spec: CyclicGroupSpec,
        levels: Vec<Arc<PresentedAbGroup>>,
        act: Vec<IntMatrix>,
        res: Vec<IntMatrix>,
        tr: Vec<IntMatrix>,
    ) -> Result<Self> {
        let n = spec.n();
        if levels.len() != n + 1 {
            return Err(Error::Dimension(format!("{} levels for {spec}, expected {}", levels.len(), n + 1)));
        }
        if act.len() != n + 1 || res.len() != n || tr.len() != n {
            return Err(Error::Dimension(format!(
                "expected {} actions and {} restrictions and transfers, got {}, {}, {}",
                n + 1,
                n,
                act.len(),
                res.len(),
                tr.len()
            )));
        }
        let wrap = |what: &str, k: usize, e: Error| match e {
            Error::Dimension(msg) => Error::Dimension(format!("{what}[{k}]: {msg}")),
            other => other,
        };
        let act = act
            .into_iter()
            .enumerate()
            .map(|(k, m)| Hom::with_shape(levels[k].clone(), levels[k].clone(), m).map_err(|e| wrap("act", k, e)))
            .collect::<Result<Vec<_>>>()?;
        let res = res
            .into_iter()
            .enumerate()
            .map(|(k, m)| Hom::with_shape(levels[k + 1].clone(), levels[k].clone(), m).map_err(|e| wrap("res", k, e)))
            .collect::<Result<Vec<_>>>()?;
        let tr = tr
            .into_iter()
            .enumerate()
            .map(|(k, m)| Hom::with_shape(levels[k].clone(), levels[k + 1].clone(), m).map_err(|e| wrap("tr", k, e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MackeyFunctor { spec, levels, act, res, tr })
    }

    /// Like [`MackeyFunctor::new`] but also requires every axiom to hold.
    pub fn new_valid(
        spec: CyclicGroupSpec,
        levels: Vec<PresentedAbGroup>,
        act: Vec<IntMatrix>,
        res: Vec<IntMatrix>,
        tr: Vec<IntMatrix>,
    ) -> Result<Self> {
        let m = Self::new(spec, levels, act, res, tr)?;
        m.ensure_valid()?;
        Ok(m)
    }

    #[inline]
    pub fn spec(&self) -> CyclicGroupSpec {
        self.spec
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.spec.n()
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.spec.p()
    }

    pub fn level(&self, k: usize) -> &Arc<PresentedAbGroup> {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[Arc<PresentedAbGroup>] {
        &self.levels
    }

    /// Action of the generator `g` on level `k`.
    pub fn act(&self, k: usize) -> &Hom {
        &self.act[k]
    }

    /// Restriction from level `k` to level `k - 1`, for `1 <= k <= n`.
    pub fn res(&self, k: usize) -> &Hom {
        &self.res[k - 1]
    }

    /// Transfer from level `k - 1` to level `k`, for `1 <= k <= n`.
    pub fn tr(&self, k: usize) -> &Hom {
        &self.tr[k - 1]
    }

    /// Composite restriction from level `from` down to level `to <= from`.
    pub fn res_composite(&self, from: usize, to: usize) -> Hom {
        assert!(to <= from && from <= self.n());
        let mut h = Hom::identity(&self.levels[from]);
        for k in (to + 1..=from).rev() {
            h = h.then(self.res(k));
        }
        h
    }

    /// Composite transfer from level `from` up to level `to >= from`.
    pub fn tr_composite(&self, from: usize, to: usize) -> Hom {
        assert!(from <= to && to <= self.n());
        let mut h = Hom::identity(&self.levels[from]);
        for k in from + 1..=to {
            h = h.then(self.tr(k));
        }
        h
    }

    /// The action of `g^e` on level `k`.
    pub fn act_pow(&self, k: usize, e: u64) -> Hom {
        self.act[k].pow(e)
    }

    /// `Σ_{i<p} act(k-1)^(i p^(n-k))`, the right-hand side of the double coset formula at `k`.
    pub fn weyl_orbit_sum(&self, k: usize) -> Hom {
        let step = self.spec.pow(self.n() - k);
        let g = &self.act[k - 1];
        let gen = g.pow(step);
        let mut term = Hom::identity(&self.levels[k - 1]);
        let mut sum = Hom::zero(&self.levels[k - 1], &self.levels[k - 1]);
        for _ in 0..self.p() {
            sum = sum.add(&term);
            term = term.then(&gen);
        }
        sum
    }

    /// All axiom violations; empty means the functor is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.n();
        for k in 0..=n {
            if let Some(g) = self.act[k].ill_defined_relation() {
                out.push(Violation { axiom: Axiom::WellDefined(StructureMap::Action), level: k, generator: g });
            }
        }
        for k in 1..=n {
            if let Some(g) = self.res(k).ill_defined_relation() {
                out.push(Violation { axiom: Axiom::WellDefined(StructureMap::Restriction), level: k, generator: g });
            }
            if let Some(g) = self.tr(k).ill_defined_relation() {
                out.push(Violation { axiom: Axiom::WellDefined(StructureMap::Transfer), level: k, generator: g });
            }
        }
        for k in 0..=n {
            let lhs = self.act_pow(k, self.spec.pow(n - k));
            if let Some(g) = lhs.first_difference(&Hom::identity(&self.levels[k])) {
                out.push(Violation { axiom: Axiom::ActionOrder, level: k, generator: g });
            }
        }
        for k in 1..=n {
            let lhs = self.act(k).then(self.res(k));
            let rhs = self.res(k).then(self.act(k - 1));
            if let Some(g) = lhs.first_difference(&rhs) {
                out.push(Violation { axiom: Axiom::RestrictionEquivariance, level: k, generator: g });
            }
            let lhs = self.act(k - 1).then(self.tr(k));
            let rhs = self.tr(k).then(self.act(k));
            if let Some(g) = lhs.first_difference(&rhs) {
                out.push(Violation { axiom: Axiom::TransferEquivariance, level: k, generator: g });
            }
            let lhs = self.tr(k).then(self.res(k));
            if let Some(g) = lhs.first_difference(&self.weyl_orbit_sum(k)) {
                out.push(Violation { axiom: Axiom::DoubleCoset, level: k, generator: g });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
            Err(Error::Input(format!("not a Mackey functor: {}", msgs.join("; "))))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|g| g.is_trivial())
    }

    pub fn is_finite(&self) -> bool {
        self.levels.iter().all(|g| g.is_finite())
    }

    pub fn check_element(&self, e: &MackeyElement) -> Result<()> {
        if e.level > self.n() || e.coords.len() != self.levels[e.level].ngens() {
            return Err(Error::Input(format!(
                "element at level {} with {} coordinates does not belong to this functor",
                e.level,
                e.coords.len()
            )));
        }
        Ok(())
    }

    /// Every structure map rewritten so each column is in canonical coordinates.
    pub(crate) fn with_reduced_maps(mut self) -> Self {
        let reduce = |h: &Hom| {
            let cols: Vec<Vec<BigInt>> = h.matrix().columns().iter().map(|c| reduce_in(h.cod(), c)).collect();
            Hom::new_unchecked(h.dom().clone(), h.cod().clone(), IntMatrix::from_columns(h.cod().ngens(), &cols))
        };
        self.act = self.act.iter().map(reduce).collect();
        self.res = self.res.iter().map(reduce).collect();
        self.tr = self.tr.iter().map(reduce).collect();
        self
    }

    /// Isomorphic functor with every level in canonical form `Z/d_1 ⊕ … ⊕ Z^f`.
    ///
    /// Only meaningful for functors whose structure maps are well defined.
    pub fn normalized(&self) -> MackeyFunctor {
        self.normalized_with_iso().0
    }

    /// The normalized functor with the level-wise isomorphisms `self -> normal` and back.
    pub fn normalized_with_iso(&self) -> (MackeyFunctor, Vec<Hom>, Vec<Hom>) {
        let mut normal = Vec::new();
        let mut to = Vec::new();
        let mut from = Vec::new();
        for g in &self.levels {
            let (nrm, t, f) = g.normalized();
            let nrm = Arc::new(nrm);
            to.push(Hom::new_unchecked(g.clone(), nrm.clone(), t.matrix().clone()));
            from.push(Hom::new_unchecked(nrm.clone(), g.clone(), f.matrix().clone()));
            normal.push(nrm);
        }
        let conj = |h: &Hom, d: usize, c: usize| from[d].then(h).then(&to[c]).matrix().clone();
        let n = self.n();
        let act = (0..=n).map(|k| conj(&self.act[k], k, k)).collect();
        let res = (0..n).map(|k| conj(&self.res[k], k + 1, k)).collect();
        let tr = (0..n).map(|k| conj(&self.tr[k], k, k + 1)).collect();
        let m = MackeyFunctor::from_arcs(self.spec, normal, act, res, tr)
            .expect("conjugated maps keep their shapes")
            .with_reduced_maps();
        (m, to, from)
    }

    pub fn is_normalized(&self) -> bool {
        self.levels.iter().all(|g| g.is_normalized())
    }

    /// Direct sum with its two injections.
    pub fn direct_sum(a: &MackeyFunctor, b: &MackeyFunctor) -> Result<(MackeyFunctor, MackeyMorphism, MackeyMorphism)> {
        if a.spec != b.spec {
            return Err(Error::Input(format!("direct sum of functors over {} and {}", a.spec, b.spec)));
        }
        let n = a.n();
        let mut levels = Vec::new();
        let mut inj_a = Vec::new();
        let mut inj_b = Vec::new();
        for k in 0..=n {
            let (s, ia, ib) = PresentedAbGroup::direct_sum(&a.levels[k], &b.levels[k]);
            levels.push(s);
            inj_a.push(ia.matrix().clone());
            inj_b.push(ib.matrix().clone());
        }
        let act = (0..=n).map(|k| a.act[k].matrix().block_diag(b.act[k].matrix())).collect();
        let res = (0..n).map(|k| a.res[k].matrix().block_diag(b.res[k].matrix())).collect();
        let tr = (0..n).map(|k| a.tr[k].matrix().block_diag(b.tr[k].matrix())).collect();
        let s = MackeyFunctor::from_arcs(a.spec, levels, act, res, tr)?;
        let ma = MackeyMorphism::new(a.clone(), s.clone(), inj_a)?;
        let mb = MackeyMorphism::new(b.clone(), s.clone(), inj_b)?;
        Ok((s, ma, mb))
    }

    /// Invariant factors of every level, bottom to top.
    pub fn level_factors(&self) -> Vec<Vec<BigInt>> {
        self.levels.iter().map(|g| g.invariant_factors().to_vec()).collect()
    }

    /// Level groups rendered like `Z⊕Z/2`, bottom to top.
    pub fn level_strings(&self) -> Vec<String> {
        self.levels.iter().map(|g| group_string(g.invariant_factors())).collect()
    }

    /// Multi-line rendering: levels from the top down with `r`, `t` and `γ` matrices.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let n = self.n();
        for k in (0..=n).rev() {
            out.push_str(&format!(
                "  G/C_{{{}^{}}}: {}   γ = {}\n",
                self.p(),
                k,
                group_string(self.levels[k].invariant_factors()),
                self.act[k].matrix()
            ));
            if k > 0 {
                out.push_str(&format!("      r = {}   t = {}\n", self.res(k).matrix(), self.tr(k).matrix()));
            }
        }
        out
    }
}

/// Canonical coordinates of `v` written back as generator coordinates of a normalized group.
pub(crate) fn reduce_in(g: &PresentedAbGroup, v: &[BigInt]) -> Vec<BigInt> {
    if g.is_normalized() {
        g.canonical(v)
    } else {
        v.to_vec()
    }
}

impl fmt::Debug for MackeyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MackeyFunctor over {}\n{}", self.spec, self.render())
    }
}

impl fmt::Display for MackeyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// True when every level of the two functors has the same invariant factors.
pub fn same_level_groups(a: &MackeyFunctor, b: &MackeyFunctor) -> bool {
    a.spec == b.spec && a.level_factors() == b.level_factors()
}
