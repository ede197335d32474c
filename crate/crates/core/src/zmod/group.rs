use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lattice::Lattice;
use super::matrix::IntMatrix;
use super::snf::{integer_kernel, snf, solve};
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^ngens / (column span of relations)`.
///
/// Construction computes the Smith normal form once and keeps the change of basis to the
/// canonical decomposition `Z/d_1 + ... + Z/d_r + Z^f` (unit factors dropped, `d_i | d_(i+1)`).
#[derive(Clone)]
pub struct PresentedAbGroup {
    ngens: usize,
    relations: IntMatrix,
    /// Non-unit invariant factors; zeros (free summands) come last.
    orders: Vec<BigInt>,
    /// `orders.len() x ngens`: generator coordinates to canonical coordinates.
    canon: IntMatrix,
    /// `ngens x orders.len()`: canonical coordinates back to generator coordinates.
    lift: IntMatrix,
}

impl PartialEq for PresentedAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.ngens == other.ngens && self.relations == other.relations
    }
}

impl Eq for PresentedAbGroup {}

impl PresentedAbGroup {
    /// `relations` must have `ngens` rows; its columns are the relations.
    pub fn new(ngens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != ngens {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                ngens
            )));
        }
        let f = snf(&relations);
        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for i in 0..ngens {
            let d = if i < relations.cols() { f.s[(i, i)].clone() } else { BigInt::zero() };
            if !d.is_one() {
                keep.push(i);
                orders.push(d);
            }
        }
        let canon = f.u.select_rows(&keep);
        let lift = f.u_inv.select_cols(&keep);
        Ok(PresentedAbGroup { ngens, relations, orders, canon, lift })
    }

    /// The normalized group `Z/d_1 + ... + Z/d_k` (an order of zero is a free summand).
    ///
    /// `orders` must already be non-unit and in divisibility order with zeros last.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let ngens = orders.len();
        let torsion: Vec<usize> = (0..ngens).filter(|&i| !orders[i].is_zero()).collect();
        let mut relations = IntMatrix::zeros(ngens, torsion.len());
        for (c, &i) in torsion.iter().enumerate() {
            relations[(i, c)] = orders[i].clone();
        }
        debug_assert!(orders.iter().all(|d| !d.is_one() && !d.is_negative()));
        PresentedAbGroup {
            ngens,
            relations,
            orders: orders.to_vec(),
            canon: IntMatrix::identity(ngens),
            lift: IntMatrix::identity(ngens),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self::from_orders(&vec![BigInt::zero(); rank])
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/n`; `n = 0` gives `Z`, `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        if n == 1 {
            Self::trivial()
        } else {
            Self::from_orders(&[BigInt::from(n)])
        }
    }

    /// Direct sum of cyclic groups given in any order.
    pub fn from_cyclic_orders(ns: &[u64]) -> Self {
        let mut r = IntMatrix::zeros(ns.len(), ns.len());
        for (i, &n) in ns.iter().enumerate() {
            r[(i, i)] = BigInt::from(n);
        }
        Self::new(ns.len(), r).expect("square relation matrix").normalized().0
    }

    #[inline]
    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn relation_columns(&self) -> Vec<Vec<BigInt>> {
        self.relations.columns()
    }

    /// Invariant factors in divisibility order, free summands reported as `0` at the end.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.orders.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.orders.iter().filter(|d| !d.is_zero()).fold(BigInt::one(), |a, b| a * b)
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// `Some(|G|)` for finite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// True when the presentation is already the canonical one produced by `from_orders`.
    pub fn is_normalized(&self) -> bool {
        *self == PresentedAbGroup::from_orders(&self.orders)
    }

    /// The canonical presentation with the isomorphisms `self -> normal` and `normal -> self`.
    pub fn normalized(&self) -> (PresentedAbGroup, Hom, Hom) {
        let n = Arc::new(PresentedAbGroup::from_orders(&self.orders));
        let me = Arc::new(self.clone());
        let to = Hom::new_unchecked(me.clone(), n.clone(), self.canon.clone());
        let from = Hom::new_unchecked(n.clone(), me, self.lift.clone());
        ((*n).clone(), to, from)
    }

    fn check_len(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.ngens {
            return Err(Error::Input(format!(
                "element with {} coordinates does not belong to a group on {} generators",
                v.len(),
                self.ngens
            )));
        }
        Ok(())
    }

    /// Canonical coordinates: torsion coordinates reduced into `[0, d_i)`, free ones unchanged.
    pub fn canonical(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ngens, "element from a different group");
        let mut c = self.canon.mul_vec(v);
        for (x, d) in c.iter_mut().zip(&self.orders) {
            if !d.is_zero() {
                *x = x.mod_floor(d);
            }
        }
        c
    }

    /// Generator coordinates of the element with the given canonical coordinates.
    pub fn from_canonical(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.lift.mul_vec(c)
    }

    /// The canonical coordinate map as a matrix (`rank x ngens`).
    pub fn canonical_matrix(&self) -> &IntMatrix {
        &self.canon
    }

    /// Generator coordinates of the canonical generators (`ngens x rank`).
    pub fn lift_matrix(&self) -> &IntMatrix {
        &self.lift
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.canonical(v).iter().all(Zero::is_zero)
    }

    pub fn elements_equal(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&d)
    }

    /// Order of an element, `None` if it has infinite order.
    pub fn element_order(&self, v: &[BigInt]) -> Option<BigInt> {
        let c = self.canonical(v);
        let mut acc = BigInt::one();
        for (x, d) in c.iter().zip(&self.orders) {
            if x.is_zero() {
                continue;
            }
            if d.is_zero() {
                return None;
            }
            acc = acc.lcm(&(d / x.gcd(d)));
        }
        Some(acc)
    }

    /// The lattice of generator vectors representing zero.
    pub fn relation_lattice(&self) -> Lattice {
        Lattice::from_matrix(&self.relations)
    }

    /// Lattice spanned by `elements` together with the relations.
    pub fn span(&self, elements: &[Vec<BigInt>]) -> Result<Lattice> {
        for e in elements {
            self.check_len(e)?;
        }
        Ok(self.relation_lattice().with_columns(elements))
    }

    /// Direct sum with both canonical injections.
    pub fn direct_sum(a: &Arc<Self>, b: &Arc<Self>) -> (Arc<Self>, Hom, Hom) {
        let rel = a.relations.block_diag(&b.relations);
        let s = Arc::new(PresentedAbGroup::new(a.ngens + b.ngens, rel).expect("block relations"));
        let mut ia = IntMatrix::zeros(s.ngens, a.ngens);
        for i in 0..a.ngens {
            ia[(i, i)] = BigInt::one();
        }
        let mut ib = IntMatrix::zeros(s.ngens, b.ngens);
        for i in 0..b.ngens {
            ib[(a.ngens + i, i)] = BigInt::one();
        }
        let inj_a = Hom::new_unchecked(a.clone(), s.clone(), ia);
        let inj_b = Hom::new_unchecked(b.clone(), s.clone(), ib);
        (s, inj_a, inj_b)
    }

    /// Tensor product; generator `(i, j)` is `a_i (x) b_j`, at index `i * b.ngens + j`.
    pub fn tensor(a: &Self, b: &Self) -> Self {
        let left = a.relations.kronecker(&IntMatrix::identity(b.ngens));
        let right = IntMatrix::identity(a.ngens).kronecker(&b.relations);
        PresentedAbGroup::new(a.ngens * b.ngens, left.hstack(&right)).expect("tensor relations")
    }

    /// Every element once, in canonical coordinates, lexicographically ordered.
    /// Fails for infinite groups and for groups larger than `bound`.
    pub fn enumerate(&self, bound: usize) -> Result<Vec<Vec<BigInt>>> {
        let order = self.order().ok_or_else(|| Error::Capacity("cannot enumerate an infinite group".into()))?;
        if order > BigInt::from(bound) {
            return Err(Error::Capacity(format!("group of order {order} exceeds the bound {bound}")));
        }
        let dims: Vec<usize> = self.orders.iter().map(|d| d.to_usize().expect("bounded order")).collect();
        let total: usize = dims.iter().product();
        let mut out = Vec::with_capacity(total);
        let mut cur = vec![0usize; dims.len()];
        for _ in 0..total {
            out.push(cur.iter().map(|&x| BigInt::from(x)).collect());
            for i in (0..dims.len()).rev() {
                cur[i] += 1;
                if cur[i] < dims[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
        Ok(out)
    }

    /// Every element once, as generator coordinates.
    pub fn elements(&self, bound: usize) -> Result<Vec<Vec<BigInt>>> {
        Ok(self.enumerate(bound)?.iter().map(|c| self.from_canonical(c)).collect())
    }

    /// Subgroup generated by `gens`, presented canonically, with its inclusion.
    pub fn subgroup_generated(g: &Arc<Self>, gens: &[Vec<BigInt>]) -> Result<(Arc<Self>, Hom)> {
        let lattice = g.span(gens)?;
        Ok(sublattice_presentation(g, &lattice))
    }

    /// Quotient by the subgroup generated by `sub`, presented canonically, with the projection.
    pub fn quotient_by(g: &Arc<Self>, sub: &[Vec<BigInt>]) -> Result<(Arc<Self>, Hom)> {
        let (q, proj, _) = quotient_with_section(g, sub)?;
        Ok((q, proj))
    }

    pub fn describe(&self) -> String {
        group_string(&self.orders)
    }
}

/// Renders invariant factors as `0`, `Z`, `Z/4`, `Z⊕Z/2` (free summands first).
pub fn group_string(orders: &[BigInt]) -> String {
    let mut parts: Vec<String> = orders.iter().filter(|d| d.is_zero()).map(|_| "Z".to_string()).collect();
    parts.extend(orders.iter().filter(|d| !d.is_zero()).map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("⊕")
    }
}

impl fmt::Debug for PresentedAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PresentedAbGroup({} gens, relations {}, ≅ {})", self.ngens, self.relations, self.describe())
    }
}

impl fmt::Display for PresentedAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Canonical presentation of `lattice / relations` (the lattice must contain the relations),
/// with the inclusion into `g`.
pub(crate) fn sublattice_presentation(g: &Arc<PresentedAbGroup>, lattice: &Lattice) -> (Arc<PresentedAbGroup>, Hom) {
    let basis = lattice.basis();
    let rel_coords: Vec<Vec<BigInt>> = g
        .relation_columns()
        .iter()
        .map(|r| lattice.coordinates(r).expect("sublattice must contain the relations"))
        .collect();
    let raw = PresentedAbGroup::new(basis.cols(), IntMatrix::from_columns(basis.cols(), &rel_coords))
        .expect("coordinates have lattice rank");
    let normal = Arc::new(PresentedAbGroup::from_orders(raw.invariant_factors()));
    let incl = basis.mul(raw.lift_matrix());
    (normal.clone(), Hom::new_unchecked(normal, g.clone(), incl))
}

/// Canonical quotient with its projection and a set-theoretic section on generators
/// (`ngens x rank` matrix sending quotient generators to representatives in `g`).
pub(crate) fn quotient_with_section(
    g: &Arc<PresentedAbGroup>,
    sub: &[Vec<BigInt>],
) -> Result<(Arc<PresentedAbGroup>, Hom, IntMatrix)> {
    for e in sub {
        g.check_len(e)?;
    }
    let rel =
        if sub.is_empty() { g.relations.clone() } else { g.relations.hstack(&IntMatrix::from_columns(g.ngens, sub)) };
    let raw = PresentedAbGroup::new(g.ngens, rel)?;
    let normal = Arc::new(PresentedAbGroup::from_orders(raw.invariant_factors()));
    let proj = Hom::new_unchecked(g.clone(), normal.clone(), raw.canon.clone());
    Ok((normal, proj, raw.lift.clone()))
}

/// A homomorphism given by its action on generator coordinates.
#[derive(Clone)]
pub struct Hom {
    dom: Arc<PresentedAbGroup>,
    cod: Arc<PresentedAbGroup>,
    matrix: IntMatrix,
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom({} -> {}, {})", self.dom, self.cod, self.matrix)
    }
}

impl Hom {
    /// Checked constructor: shape and well-definedness.
    pub fn new(dom: Arc<PresentedAbGroup>, cod: Arc<PresentedAbGroup>, matrix: IntMatrix) -> Result<Self> {
        let h = Self::with_shape(dom, cod, matrix)?;
        if let Some(i) = h.ill_defined_relation() {
            return Err(Error::Input(format!("matrix {} does not respect relation {} of the domain", h.matrix, i)));
        }
        Ok(h)
    }

    /// Checks the shape only.
    pub fn with_shape(dom: Arc<PresentedAbGroup>, cod: Arc<PresentedAbGroup>, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != cod.ngens || matrix.cols() != dom.ngens {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for a map from {} to {} generators",
                matrix.rows(),
                matrix.cols(),
                dom.ngens,
                cod.ngens
            )));
        }
        Ok(Hom { dom, cod, matrix })
    }

    pub(crate) fn new_unchecked(dom: Arc<PresentedAbGroup>, cod: Arc<PresentedAbGroup>, matrix: IntMatrix) -> Self {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (cod.ngens, dom.ngens));
        Hom { dom, cod, matrix }
    }

    pub fn identity(g: &Arc<PresentedAbGroup>) -> Self {
        Hom::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.ngens))
    }

    pub fn zero(dom: &Arc<PresentedAbGroup>, cod: &Arc<PresentedAbGroup>) -> Self {
        Hom::new_unchecked(dom.clone(), cod.clone(), IntMatrix::zeros(cod.ngens, dom.ngens))
    }

    pub fn scalar(g: &Arc<PresentedAbGroup>, c: impl Into<BigInt>) -> Self {
        Hom::new_unchecked(g.clone(), g.clone(), IntMatrix::scalar(g.ngens, c))
    }

    pub fn dom(&self) -> &Arc<PresentedAbGroup> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<PresentedAbGroup> {
        &self.cod
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Index of the first domain relation that is not sent into the relations of the codomain.
    pub fn ill_defined_relation(&self) -> Option<usize> {
        let rel = self.dom.relations();
        (0..rel.cols()).find(|&j| !self.cod.is_zero_element(&self.matrix.mul_vec(&rel.column(j))))
    }

    pub fn is_well_defined(&self) -> bool {
        self.ill_defined_relation().is_none()
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &Hom) -> Hom {
        assert!(Arc::ptr_eq(&self.cod, &other.dom) || *self.cod == *other.dom, "composing maps with mismatched groups");
        Hom::new_unchecked(self.dom.clone(), other.cod.clone(), other.matrix.mul(&self.matrix))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Hom) -> Hom {
        other.then(self)
    }

    pub fn add(&self, other: &Hom) -> Hom {
        Hom::new_unchecked(self.dom.clone(), self.cod.clone(), self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &Hom) -> Hom {
        Hom::new_unchecked(self.dom.clone(), self.cod.clone(), self.matrix.sub(&other.matrix))
    }

    pub fn scale(&self, c: &BigInt) -> Hom {
        Hom::new_unchecked(self.dom.clone(), self.cod.clone(), self.matrix.scale(c))
    }

    pub fn pow(&self, e: u64) -> Hom {
        Hom::new_unchecked(self.dom.clone(), self.cod.clone(), self.matrix.pow(e))
    }

    /// First domain generator on which the two maps differ.
    pub fn first_difference(&self, other: &Hom) -> Option<usize> {
        let d = self.matrix.sub(&other.matrix);
        (0..d.cols()).find(|&j| !self.cod.is_zero_element(&d.column(j)))
    }

    /// Equality as maps of groups.
    pub fn equals(&self, other: &Hom) -> bool {
        self.first_difference(other).is_none()
    }

    pub fn is_zero_map(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.cod.is_zero_element(&self.matrix.column(j)))
    }

    /// Lattice of domain vectors mapped to zero in the codomain.
    pub fn kernel_lattice(&self) -> Lattice {
        let n = self.dom.ngens;
        let a = self.matrix.hstack(self.cod.relations());
        let k = integer_kernel(&a);
        let idx: Vec<usize> = (0..n).collect();
        let top = k.select_rows(&idx);
        self.dom.relation_lattice().sum(&Lattice::from_matrix(&top))
    }

    /// Kernel with its inclusion into the domain.
    pub fn kernel(&self) -> Result<(Arc<PresentedAbGroup>, Hom)> {
        self.ensure_well_defined()?;
        Ok(sublattice_presentation(&self.dom, &self.kernel_lattice()))
    }

    /// Image generators (in the codomain), cokernel and projection.
    pub fn image_cokernel(&self) -> Result<(Vec<Vec<BigInt>>, Arc<PresentedAbGroup>, Hom)> {
        self.ensure_well_defined()?;
        let im = self.matrix.columns();
        let (coker, proj) = PresentedAbGroup::quotient_by(&self.cod, &im)?;
        Ok((im, coker, proj))
    }

    /// Image as an abstract group, with its inclusion into the codomain.
    pub fn image(&self) -> Result<(Arc<PresentedAbGroup>, Hom)> {
        self.ensure_well_defined()?;
        PresentedAbGroup::subgroup_generated(&self.cod, &self.matrix.columns())
    }

    pub fn is_injective(&self) -> bool {
        self.dom.relation_lattice() == self.kernel_lattice()
    }

    pub fn is_surjective(&self) -> bool {
        self.cod.span(&self.matrix.columns()).map(|l| l.is_full()).unwrap_or(false)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    fn ensure_well_defined(&self) -> Result<()> {
        match self.ill_defined_relation() {
            None => Ok(()),
            Some(i) => Err(Error::Input(format!("map is not well defined on relation {i}"))),
        }
    }

    /// For an injective `incl: S -> X` and `f: Y -> X` landing in its image, the unique
    /// `h: Y -> S` with `incl ∘ h = f`.
    pub fn lift_through(incl: &Hom, f: &Hom) -> Result<Hom> {
        let a = incl.matrix.hstack(incl.cod.relations());
        let s = incl.dom.ngens;
        let mut cols = Vec::with_capacity(f.dom.ngens);
        for j in 0..f.matrix.cols() {
            let target = f.matrix.column(j);
            let x = solve(&a, &target)
                .ok_or_else(|| Error::Domain(format!("generator {j} does not map into the image of the inclusion")))?;
            if incl.dom.is_normalized() {
                cols.push(incl.dom.canonical(&x[..s]));
            } else {
                cols.push(x[..s].to_vec());
            }
        }
        Ok(Hom::new_unchecked(f.dom.clone(), incl.dom.clone(), IntMatrix::from_columns(s, &cols)))
    }
}

/// Coordinates of an element of a particular group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(coords: Vec<BigInt>) -> Self {
        GroupElement { coords }
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        GroupElement { coords: xs.iter().map(|&x| BigInt::from(x)).collect() }
    }
}
