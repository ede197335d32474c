//! Interval bounds on the slice-connectivity of virtual representation spheres.
//!
//! A sphere `S^(V - d)` is first normalized by splitting off `r` copies of `ρ_G`, which shifts
//! slice-connectivity by exactly `r|G|`. Here `r` is as large as the nontrivial part of `V`
//! allows, but never leaves fewer than `-1` trivial summands. The residual then has a zero
//! multiplicity somewhere or fixed dimension `-1`, and is bounded by:
//!
//! * upper: its dimension, and the upper bounds of its restrictions;
//! * lower: the connectivity floor (`τ≥0` is the (-1)-connected spectra, `τ≥-1` the
//!   (-2)-connected ones), the permutation spheres `S^(ρ_X - ε)`, the spheres
//!   `S^(ρ_G - ρ_{G/N})`, and the recursion over an enveloping `W = kρ - ε ⊇ V` with
//!   `W^G = V^G`, taking the minimum of `dim W` and the lower bounds of the restrictions to
//!   subgroups where `W/V` has fixed vectors.

use std::collections::HashMap;
use std::fmt;

use super::{fold_index, irreducible_dim, SphereSpec};
use crate::error::{Error, Result};
use crate::mackey::CyclicGroupSpec;

/// Why a bound holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SdimRule {
    /// spheres of the trivial group
    TrivialGroup,
    /// fixed-point dimension of the residual sphere
    ConnectivityFloor {
        fixed_dim: i64,
    },
    UnderlyingDimension,
    /// restriction to `C_{p^level}` of the residual sphere
    Restriction {
        level: usize,
    },
    PermutationSphere {
        cardinality: u64,
        eps: u64,
    },
    /// `S^(ρ_G - ρ_{G/N})` with `N = C_{p^normal_level}`
    NegativePermutation {
        normal_level: usize,
    },
    /// recursion over `W = kρ - ε`
    Envelope {
        k: u64,
        eps: u64,
    },
}

impl SdimRule {
    pub fn name(&self) -> &'static str {
        match self {
            SdimRule::TrivialGroup => "trivial group",
            SdimRule::ConnectivityFloor { .. } => "connectivity floor",
            SdimRule::UnderlyingDimension => "underlying dimension",
            SdimRule::Restriction { .. } => "restriction",
            SdimRule::PermutationSphere { .. } => "permutation sphere",
            SdimRule::NegativePermutation { .. } => "negative permutation sphere",
            SdimRule::Envelope { .. } => "enveloping regular sphere",
        }
    }

    fn detail(&self, p: u64) -> String {
        match *self {
            SdimRule::TrivialGroup => "a sphere of the trivial group has its dimension".into(),
            SdimRule::ConnectivityFloor { fixed_dim } if fixed_dim >= 0 => {
                format!("fixed points of dimension {fixed_dim}, so (-1)-connected")
            }
            SdimRule::ConnectivityFloor { fixed_dim } => {
                format!("fixed points of dimension {fixed_dim}: (-2)-connected but not (-1)-connected")
            }
            SdimRule::UnderlyingDimension => "bounded by the underlying sphere".into(),
            SdimRule::Restriction { level } => format!("bounded by the restriction to C_{p}^{level}"),
            SdimRule::PermutationSphere { cardinality, eps } => {
                format!("S^(ρ_X - {eps}) with |X| = {cardinality}")
            }
            SdimRule::NegativePermutation { normal_level } => {
                format!("S^(ρ_G - ρ_G/N) with N = C_{p}^{normal_level}")
            }
            SdimRule::Envelope { k, eps } => format!("inside W = {k}ρ - {eps} with equal fixed points"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Bounds {
    lo: i64,
    hi: i64,
    lo_rule: SdimRule,
    hi_rule: SdimRule,
}

impl Bounds {
    fn exact(v: i64, rule: SdimRule) -> Self {
        Bounds { lo: v, hi: v, lo_rule: rule, hi_rule: rule }
    }

    fn shift(self, by: i64) -> Self {
        Bounds { lo: self.lo + by, hi: self.hi + by, ..self }
    }
}

/// `lower <= sdim <= upper`, with the rules that give each end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdimInterval {
    pub lower: i64,
    pub upper: i64,
    /// copies of `ρ_G` split off before bounding the residual (negative when added)
    pub regular_copies: i64,
    pub lower_rule: SdimRule,
    pub upper_rule: SdimRule,
    p: u64,
    order: u64,
}

impl SdimInterval {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// Rule names in the order shift, lower, upper, without repeats.
    pub fn rule_names(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        if self.regular_copies > 0 {
            names.push("rho-desuspension");
        } else if self.regular_copies < 0 {
            names.push("rho-suspension");
        }
        for r in [self.lower_rule, self.upper_rule] {
            if !names.contains(&r.name()) {
                names.push(r.name());
            }
        }
        names
    }

    /// One line per rule applied.
    pub fn provenance(&self) -> Vec<String> {
        let mut lines = Vec::new();
        if self.regular_copies != 0 {
            let name = if self.regular_copies > 0 { "rho-desuspension" } else { "rho-suspension" };
            lines.push(format!(
                "{name}: split off {}ρ, shifting both bounds by {}",
                self.regular_copies,
                self.regular_copies * self.order as i64
            ));
        }
        lines.push(format!("{}: lower {}; {}", self.lower_rule.name(), self.lower, self.lower_rule.detail(self.p)));
        lines.push(format!("{}: upper {}; {}", self.upper_rule.name(), self.upper, self.upper_rule.detail(self.p)));
        lines
    }
}

impl fmt::Display for SdimInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// The bound computation with an optional memo table on residual spheres.
#[derive(Debug)]
pub struct SdimEngine {
    p: u64,
    memo: Option<HashMap<(usize, Vec<u64>, i64), Bounds>>,
}

/// Nontrivial multiplicities (indices `1..=q/2`) and the trivial coefficient of a sphere
/// over `C_{p^m}`.
type Virtual = (Vec<u64>, i64);

fn p_valuation(p: u64, mut i: u64) -> usize {
    let mut v = 0;
    while i % p == 0 {
        i /= p;
        v += 1;
    }
    v
}

impl SdimEngine {
    pub fn new(p: u64) -> Self {
        SdimEngine { p, memo: Some(HashMap::new()) }
    }

    pub fn without_memo(p: u64) -> Self {
        SdimEngine { p, memo: None }
    }

    pub fn bounds(&mut self, s: &SphereSpec) -> Result<SdimInterval> {
        let spec = s.spec();
        if spec.p() != self.p {
            return Err(Error::Input(format!("engine for p = {} given a sphere over {spec}", self.p)));
        }
        let m = spec.n();
        let mults = s.v.mults();
        let v = mults[1..].to_vec();
        let t = mults[0] as i64 - s.desusp as i64;
        let (r, b) = self.full(m, &v, t);
        Ok(SdimInterval {
            lower: b.lo,
            upper: b.hi,
            regular_copies: r,
            lower_rule: b.lo_rule,
            upper_rule: b.hi_rule,
            p: self.p,
            order: spec.order(),
        })
    }

    fn order(&self, m: usize) -> u64 {
        self.p.pow(m as u32)
    }

    /// Splits off copies of `ρ` and bounds the residual.
    fn full(&mut self, m: usize, v: &[u64], t: i64) -> (i64, Bounds) {
        if m == 0 {
            return (0, Bounds::exact(t, SdimRule::TrivialGroup));
        }
        let min = *v.iter().min().expect("a nontrivial group has nontrivial irreducibles") as i64;
        let r = min.min(t + 1);
        let rest: Vec<u64> = v.iter().map(|&x| (x as i64 - r) as u64).collect();
        let b = self.residual(m, rest, t - r);
        (r, b.shift(r * self.order(m) as i64))
    }

    fn residual(&mut self, m: usize, v: Vec<u64>, t: i64) -> Bounds {
        if let Some(b) = self.memo.as_ref().and_then(|memo| memo.get(&(m, v.clone(), t))) {
            return *b;
        }
        let b = self.residual_uncached(m, &v, t);
        if let Some(memo) = self.memo.as_mut() {
            memo.insert((m, v, t), b);
        }
        b
    }

    fn dim(&self, m: usize, v: &[u64], t: i64) -> i64 {
        let q = self.order(m);
        t + v.iter().enumerate().map(|(i, &x)| (x * irreducible_dim(i as u64 + 1, q)) as i64).sum::<i64>()
    }

    fn restrict(&self, m: usize, v: &[u64], t: i64, l: usize) -> Virtual {
        let (q, ql) = (self.order(m), self.order(l));
        let mut out = vec![0u64; (ql / 2) as usize];
        let mut t = t;
        for (i, &x) in v.iter().enumerate() {
            let i = i as u64 + 1;
            let j = fold_index(i, ql);
            let copies = x * irreducible_dim(i, q) / irreducible_dim(j, ql);
            if j == 0 {
                t += copies as i64;
            } else {
                out[j as usize - 1] += copies;
            }
        }
        (out, t)
    }

    fn residual_uncached(&mut self, m: usize, v: &[u64], t: i64) -> Bounds {
        let fixed_dim = t;
        if fixed_dim == -1 {
            return Bounds::exact(-1, SdimRule::ConnectivityFloor { fixed_dim });
        }
        debug_assert!(fixed_dim >= 0);
        let dim = self.dim(m, v, t);
        let mut b = Bounds {
            lo: 0,
            hi: dim,
            lo_rule: SdimRule::ConnectivityFloor { fixed_dim },
            hi_rule: SdimRule::UnderlyingDimension,
        };
        let mut lower = vec![i64::MIN; m];
        for (l, low) in lower.iter_mut().enumerate().skip(1) {
            let (w, s) = self.restrict(m, v, t, l);
            let (_, rb) = self.full(l, &w, s);
            *low = rb.lo;
            if rb.hi < b.hi {
                b.hi = rb.hi;
                b.hi_rule = SdimRule::Restriction { level: l };
            }
        }
        // the trivial subgroup sees the underlying sphere
        if m > 0 {
            lower[0] = dim;
        }
        let raise = |b: &mut Bounds, lo: i64, rule: SdimRule| {
            if lo > b.lo {
                b.lo = lo;
                b.lo_rule = rule;
            }
        };
        if let Some((cardinality, eps)) = self.permutation_shape(m, v, t) {
            raise(&mut b, dim, SdimRule::PermutationSphere { cardinality, eps });
        }
        if let Some(a) = self.negative_permutation_shape(m, v, t) {
            raise(&mut b, self.order(a) as i64 - 1, SdimRule::NegativePermutation { normal_level: a });
        }
        let top = v.iter().copied().max().unwrap_or(0) as i64;
        let envelope = if top <= t {
            Some((t as u64, 0))
        } else if top == t + 1 {
            Some((t as u64 + 1, 1))
        } else {
            None
        };
        if let Some((k, eps)) = envelope {
            let dim_w = (k * self.order(m)) as i64 - eps as i64;
            let mut cand = dim_w;
            for (l, low) in lower.iter().enumerate() {
                let pl = self.order(l);
                let moves = v.iter().enumerate().any(|(i, &x)| x < k && (i as u64 + 1) % pl == 0);
                if moves {
                    cand = cand.min(*low);
                }
            }
            raise(&mut b, cand, SdimRule::Envelope { k, eps });
        }
        debug_assert!(b.lo <= b.hi, "bounds crossed for {v:?} - {t} over C_{}^{m}", self.p);
        b
    }

    /// `(|X|, ε)` when the residual is `S^(ρ_X - ε)`.
    fn permutation_shape(&self, m: usize, v: &[u64], t: i64) -> Option<(u64, u64)> {
        // M[k]: common multiplicity of the irreducibles with p-valuation k
        let mut levels: Vec<Option<u64>> = vec![None; m];
        for (i, &x) in v.iter().enumerate() {
            let k = p_valuation(self.p, i as u64 + 1);
            match levels[k] {
                None => levels[k] = Some(x),
                Some(y) if y != x => return None,
                _ => {}
            }
        }
        let levels: Vec<u64> = levels.into_iter().map(|x| x.unwrap_or(0)).collect();
        if levels.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let nonfixed = *levels.last().unwrap_or(&0) as i64;
        let eps = if t >= nonfixed {
            0
        } else if t + 1 == nonfixed {
            1
        } else {
            return None;
        };
        Some(((self.dim(m, v, t) + eps) as u64, eps as u64))
    }

    /// `a` when the residual is `S^(ρ_G - ρ_{G/C_{p^a}})` for `0 < a < m`.
    fn negative_permutation_shape(&self, m: usize, v: &[u64], t: i64) -> Option<usize> {
        if t != 0 {
            return None;
        }
        (1..m).find(|&a| v.iter().enumerate().all(|(i, &x)| x == u64::from(p_valuation(self.p, i as u64 + 1) < a)))
    }
}

/// Bounds on `sdim S^(V - d)`.
pub fn sdim_bounds(s: &SphereSpec) -> Result<SdimInterval> {
    SdimEngine::new(s.spec().p()).bounds(s)
}

/// `G_+ ∧_H S^(-k)` for `H = C_{p^h}` and `k >= 1` is in `τ≥-(k-1)|H|-1` and not one higher.
pub fn induced_negative_sphere(spec: CyclicGroupSpec, h: usize, k: u64) -> Result<SdimInterval> {
    if k == 0 {
        return Err(Error::Input("the induced negative sphere needs k >= 1".into()));
    }
    if h > spec.n() {
        return Err(Error::Input(format!("no subgroup C_{}^{h} in {spec}", spec.p())));
    }
    let order = spec.pow(h);
    let v = -((k as i64 - 1) * order as i64) - 1;
    Ok(SdimInterval {
        lower: v,
        upper: v,
        regular_copies: 1 - k as i64,
        lower_rule: SdimRule::ConnectivityFloor { fixed_dim: -1 },
        upper_rule: SdimRule::ConnectivityFloor { fixed_dim: -1 },
        p: spec.p(),
        order,
    })
}
