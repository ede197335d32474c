//! Real representations and finite sets of `C_{p^n}`, and slice-connectivity of their spheres.
//!
//! Real irreducibles are indexed by `j = 0..=⌊p^n/2⌋`: `j = 0` is trivial, `j = p^n/2` (only for
//! `p = 2`) is the sign, and every other `j` is the rotation `λ(j)` by `2πj/p^n`.

mod literal;
mod sdim;

use std::fmt;

use crate::error::{Error, Result};
use crate::mackey::CyclicGroupSpec;

pub use literal::parse_sphere;
pub use sdim::{induced_negative_sphere, sdim_bounds, SdimEngine, SdimInterval, SdimRule};

/// Larger groups make the multiplicity vectors unwieldy.
pub const MAX_GROUP_ORDER: u64 = 1 << 16;

fn check_order(spec: CyclicGroupSpec) -> Result<u64> {
    let q = spec.order();
    if q > MAX_GROUP_ORDER {
        return Err(Error::Capacity(format!("representations of {spec} (order above {MAX_GROUP_ORDER})")));
    }
    Ok(q)
}

/// Real index of the complex character `i` of a cyclic group of order `q`.
pub fn fold_index(i: u64, q: u64) -> u64 {
    let j = i % q;
    j.min(q - j)
}

/// Real dimension of irreducible `j` for a cyclic group of order `q`.
pub fn irreducible_dim(j: u64, q: u64) -> u64 {
    if j == 0 || 2 * j == q {
        1
    } else {
        2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rep {
    spec: CyclicGroupSpec,
    mult: Vec<u64>,
}

impl Rep {
    pub fn zero(spec: CyclicGroupSpec) -> Result<Self> {
        let q = check_order(spec)?;
        Ok(Rep { spec, mult: vec![0; (q / 2 + 1) as usize] })
    }

    pub fn from_mults(spec: CyclicGroupSpec, mult: Vec<u64>) -> Result<Self> {
        let q = check_order(spec)?;
        if mult.len() as u64 != q / 2 + 1 {
            return Err(Error::Dimension(format!("{} multiplicities for {} irreducibles", mult.len(), q / 2 + 1)));
        }
        Ok(Rep { spec, mult })
    }

    pub fn trivial(spec: CyclicGroupSpec, k: u64) -> Result<Self> {
        let mut r = Self::zero(spec)?;
        r.mult[0] = k;
        Ok(r)
    }

    /// `m` copies of irreducible `j` (any integer index, folded).
    pub fn irreducible(spec: CyclicGroupSpec, j: u64, m: u64) -> Result<Self> {
        let mut r = Self::zero(spec)?;
        r.mult[fold_index(j, spec.order()) as usize] = m;
        Ok(r)
    }

    /// `ρ_G`: every irreducible once.
    pub fn regular(spec: CyclicGroupSpec) -> Result<Self> {
        let mut r = Self::zero(spec)?;
        r.mult.iter_mut().for_each(|m| *m = 1);
        Ok(r)
    }

    pub fn spec(&self) -> CyclicGroupSpec {
        self.spec
    }

    pub fn mults(&self) -> &[u64] {
        &self.mult
    }

    pub fn mult(&self, j: u64) -> u64 {
        self.mult[fold_index(j, self.spec.order()) as usize]
    }

    pub fn add(&self, other: &Rep) -> Result<Rep> {
        if self.spec != other.spec {
            return Err(Error::Input(format!("adding representations of {} and {}", self.spec, other.spec)));
        }
        let mult = self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect();
        Ok(Rep { spec: self.spec, mult })
    }

    pub fn scale(&self, k: u64) -> Rep {
        Rep { spec: self.spec, mult: self.mult.iter().map(|m| m * k).collect() }
    }

    pub fn dim(&self) -> u64 {
        let q = self.spec.order();
        self.mult.iter().enumerate().map(|(j, m)| m * irreducible_dim(j as u64, q)).sum()
    }

    /// Dimension of the `C_{p^k}`-fixed subspace.
    pub fn fixed_dim(&self, k: usize) -> u64 {
        let q = self.spec.order();
        let pk = self.spec.pow(k);
        self.mult
            .iter()
            .enumerate()
            .filter(|(j, _)| *j as u64 % pk == 0)
            .map(|(j, m)| m * irreducible_dim(j as u64, q))
            .sum()
    }

    /// Restriction to `C_{p^m}`.
    pub fn restrict(&self, m: usize) -> Result<Rep> {
        if m > self.spec.n() {
            return Err(Error::Input(format!("no subgroup C_{}^{m} in {}", self.spec.p(), self.spec)));
        }
        let sub = self.spec.quotient(self.spec.n() - m)?;
        let (q, qs) = (self.spec.order(), sub.order());
        let mut out = Rep::zero(sub)?;
        for (j, &k) in self.mult.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let t = fold_index(j as u64, qs);
            // a rotation may become two copies of a one-dimensional irreducible
            let copies = irreducible_dim(j as u64, q) / irreducible_dim(t, qs);
            out.mult[t as usize] += k * copies;
        }
        Ok(out)
    }
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.spec.order();
        let mut parts = Vec::new();
        for (j, &m) in self.mult.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let name = match j as u64 {
                0 => "1".to_string(),
                j if 2 * j == q => "σ".to_string(),
                j => format!("λ({j})"),
            };
            parts.push(if m == 1 { name } else { format!("{m}{name}") });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A finite `C_{p^n}`-set: `counts[k]` orbits isomorphic to `C_{p^n}/C_{p^k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GSet {
    spec: CyclicGroupSpec,
    counts: Vec<u64>,
}

impl GSet {
    pub fn new(spec: CyclicGroupSpec, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != spec.n() + 1 {
            return Err(Error::Dimension(format!("{} orbit counts for {} orbit types", counts.len(), spec.n() + 1)));
        }
        Ok(GSet { spec, counts })
    }

    /// `sizes[i]` orbits of size `p^i`.
    pub fn from_orbit_sizes(spec: CyclicGroupSpec, sizes: &[u64]) -> Result<Self> {
        let mut counts = sizes.to_vec();
        counts.reverse();
        Self::new(spec, counts)
    }

    pub fn point(spec: CyclicGroupSpec) -> Self {
        let mut counts = vec![0; spec.n() + 1];
        counts[spec.n()] = 1;
        GSet { spec, counts }
    }

    pub fn free(spec: CyclicGroupSpec) -> Self {
        let mut counts = vec![0; spec.n() + 1];
        counts[0] = 1;
        GSet { spec, counts }
    }

    pub fn spec(&self) -> CyclicGroupSpec {
        self.spec
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn orbits(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn cardinality(&self) -> u64 {
        let n = self.spec.n();
        self.counts.iter().enumerate().map(|(k, c)| c * self.spec.pow(n - k)).sum()
    }

    /// Points fixed by `C_{p^k}`.
    pub fn fixed_points(&self, k: usize) -> u64 {
        let n = self.spec.n();
        (k..=n).map(|j| self.counts[j] * self.spec.pow(n - j)).sum()
    }

    /// Number of `C_{p^k}`-orbits, the dimension of `ρ_X^(C_{p^k})`.
    pub fn orbits_under(&self, k: usize) -> u64 {
        let n = self.spec.n();
        self.counts.iter().enumerate().map(|(j, c)| c * self.spec.pow(n - j) / self.spec.pow(k.saturating_sub(j))).sum()
    }

    /// Restriction to `C_{p^m}`: an orbit `C_{p^n}/C_{p^k}` splits into orbits of
    /// `C_{p^m}/C_{p^min(k,m)}`.
    pub fn restrict(&self, m: usize) -> Result<GSet> {
        let n = self.spec.n();
        if m > n {
            return Err(Error::Input(format!("no subgroup C_{}^{m} in {}", self.spec.p(), self.spec)));
        }
        let sub = self.spec.quotient(n - m)?;
        let mut counts = vec![0; m + 1];
        for (k, &c) in self.counts.iter().enumerate() {
            let stab = k.min(m);
            let size = self.spec.pow(n - k);
            counts[stab] += c * size / sub.pow(m - stab);
        }
        GSet::new(sub, counts)
    }

    /// Every `C_{p^n}`-set of cardinality at most `bound`.
    pub fn all_up_to(spec: CyclicGroupSpec, bound: u64) -> Vec<GSet> {
        let n = spec.n();
        let mut out = Vec::new();
        let mut counts = vec![0u64; n + 1];
        fn rec(spec: CyclicGroupSpec, k: usize, left: u64, counts: &mut Vec<u64>, out: &mut Vec<GSet>) {
            if k == counts.len() {
                out.push(GSet { spec, counts: counts.clone() });
                return;
            }
            let size = spec.pow(spec.n() - k);
            for c in 0..=left / size {
                counts[k] = c;
                rec(spec, k + 1, left - c * size, counts, out);
            }
            counts[k] = 0;
        }
        rec(spec, 0, bound, &mut counts, &mut out);
        out
    }
}

/// `ρ_X`: every orbit `C_{p^n}/C_{p^k}` contributes the characters `j p^k`.
pub fn permutation_rep(x: &GSet) -> Result<Rep> {
    let spec = x.spec();
    let q = spec.order();
    let mut r = Rep::zero(spec)?;
    for (k, &c) in x.counts().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let pk = spec.pow(k);
        for j in 0..q / pk {
            let i = j * pk;
            // a conjugate pair is one real irreducible
            if i <= q - i {
                r.mult[i as usize] += c;
            }
        }
    }
    Ok(r)
}

/// The virtual sphere `S^(v - desusp)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SphereSpec {
    pub v: Rep,
    pub desusp: u64,
}

impl SphereSpec {
    pub fn new(v: Rep, desusp: u64) -> Self {
        SphereSpec { v, desusp }
    }

    /// `S^(ρ_X - eps)`
    pub fn permutation(x: &GSet, eps: u64) -> Result<Self> {
        Ok(SphereSpec { v: permutation_rep(x)?, desusp: eps })
    }

    /// `S^m` for an integer `m`.
    pub fn trivial(spec: CyclicGroupSpec, m: i64) -> Result<Self> {
        Ok(SphereSpec { v: Rep::trivial(spec, m.max(0) as u64)?, desusp: (-m).max(0) as u64 })
    }

    pub fn spec(&self) -> CyclicGroupSpec {
        self.v.spec()
    }

    /// Virtual dimension.
    pub fn dim(&self) -> i64 {
        self.v.dim() as i64 - self.desusp as i64
    }

    /// Virtual dimension of the `C_{p^k}`-fixed points.
    pub fn fixed_dim(&self, k: usize) -> i64 {
        self.v.fixed_dim(k) as i64 - self.desusp as i64
    }

    pub fn restrict(&self, m: usize) -> Result<SphereSpec> {
        Ok(SphereSpec { v: self.v.restrict(m)?, desusp: self.desusp })
    }

    /// `S^(V + k ρ)`
    pub fn suspend_regular(&self, k: u64) -> Result<SphereSpec> {
        Ok(SphereSpec { v: self.v.add(&Rep::regular(self.spec())?.scale(k))?, desusp: self.desusp })
    }
}

impl fmt::Display for SphereSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.desusp == 0 {
            write!(f, "S^({})", self.v)
        } else {
            write!(f, "S^({} - {})", self.v, self.desusp)
        }
    }
}
