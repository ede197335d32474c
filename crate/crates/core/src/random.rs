//! Seeded random finite Mackey functors, for property tests and benchmarks.
//!
//! A functor is built from a random finite `G`-module (permutation modules, sign twists and
//! unipotent blocks over `Z/d`) or from the Burnside functor mod `d`, then optionally replaced
//! by a random sub-functor or quotient, or summed with a second such functor.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::mackey::{burnside, fixed_point_functor, CyclicGroupSpec, MackeyElement, MackeyFunctor, SubFunctor};
use crate::zmod::{Hom, IntMatrix, PresentedAbGroup};

/// Bounds on the generated functors.
#[derive(Clone, Copy, Debug)]
pub struct RandomConfig {
    /// every level has at most this many elements
    pub max_level_order: u64,
    /// attempts before giving up on the order bound
    pub attempts: usize,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig { max_level_order: 64, attempts: 200 }
    }
}

/// A block of a random module: its cyclic orders and the action on them.
fn random_block(rng: &mut impl Rng, spec: CyclicGroupSpec) -> (Vec<u64>, IntMatrix) {
    let p = spec.p();
    let choice = rng.gen_range(0..4);
    match choice {
        // (Z/d)[G/C_{p^k}] with g shifting the cosets
        0 if spec.n() > 0 => {
            let k = rng.gen_range(0..spec.n());
            let size = spec.pow(spec.n() - k) as usize;
            let d = rng.gen_range(2..=4);
            let mut m = IntMatrix::zeros(size, size);
            for i in 0..size {
                m[((i + 1) % size, i)] = BigInt::from(1);
            }
            (vec![d; size], m)
        }
        // Z/d with g acting by -1
        1 if p == 2 && spec.n() > 0 => {
            let d = rng.gen_range(3..=8);
            (vec![d], IntMatrix::scalar(1, -1))
        }
        // (Z/p^e)^2 with a unipotent action of order p^e
        2 if spec.n() > 0 => {
            let e = rng.gen_range(1..=spec.n().min(2)) as u32;
            let d = p.pow(e);
            (vec![d, d], IntMatrix::from_rows(&[&[1, 1], &[0, 1]]))
        }
        _ => {
            let d = rng.gen_range(2..=9);
            (vec![d], IntMatrix::identity(1))
        }
    }
}

fn random_module_functor(rng: &mut impl Rng, spec: CyclicGroupSpec) -> Result<MackeyFunctor> {
    let blocks = rng.gen_range(1..=2);
    let mut orders = Vec::new();
    let mut action = IntMatrix::zeros(0, 0);
    for _ in 0..blocks {
        let (o, a) = random_block(rng, spec);
        orders.extend(o);
        action = action.block_diag(&a);
    }
    // keep one generator per cyclic factor so the action matrix still applies
    let rel = IntMatrix::diagonal(&orders.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>());
    let module = Arc::new(PresentedAbGroup::new(orders.len(), rel)?);
    let a = Hom::new(module.clone(), module.clone(), action)?;
    fixed_point_functor(spec, &module, &a)
}

/// The Burnside functor with every level reduced mod `d`.
pub fn burnside_mod(spec: CyclicGroupSpec, d: u64) -> Result<MackeyFunctor> {
    let a = burnside(spec);
    let per_level = (0..=spec.n())
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let mut v = vec![BigInt::from(0); k + 1];
                    v[i] = BigInt::from(d);
                    v
                })
                .collect()
        })
        .collect();
    Ok(SubFunctor::generated_by_levels(&a, per_level)?.quotient(&a).0)
}

fn random_element(rng: &mut impl Rng, m: &MackeyFunctor) -> MackeyElement {
    let level = rng.gen_range(0..=m.n());
    let g = m.level(level);
    let coords = g
        .invariant_factors()
        .iter()
        .map(|d| {
            let bound = d.to_i64().filter(|&d| d > 0).unwrap_or(5);
            BigInt::from(rng.gen_range(0..bound))
        })
        .collect::<Vec<_>>();
    // normalized levels have one coordinate per invariant factor
    let coords = if coords.len() == g.ngens() { coords } else { vec![BigInt::from(0); g.ngens()] };
    MackeyElement::new(level, coords)
}

fn small_enough(m: &MackeyFunctor, bound: u64) -> bool {
    m.levels().iter().all(|g| g.order().and_then(|o| o.to_u64()).is_some_and(|o| o <= bound))
}

fn candidate(rng: &mut impl Rng, spec: CyclicGroupSpec, depth: usize) -> Result<MackeyFunctor> {
    let base =
        if rng.gen_bool(0.25) { burnside_mod(spec, rng.gen_range(2..=4))? } else { random_module_functor(rng, spec)? }
            .normalized();
    let gens: Vec<MackeyElement> = (0..rng.gen_range(1..=2)).map(|_| random_element(rng, &base)).collect();
    Ok(match rng.gen_range(0..4) {
        0 => base,
        1 => base.sub_generated(&gens)?.0.normalized(),
        2 if depth == 0 => {
            let other = candidate(rng, spec, depth + 1)?;
            MackeyFunctor::direct_sum(&base, &other)?.0.normalized()
        }
        _ => SubFunctor::generated(&base, &gens)?.quotient(&base).0,
    })
}

/// A random nonzero valid functor over `spec` with finite levels of bounded order.
pub fn random_finite_functor(rng: &mut impl Rng, spec: CyclicGroupSpec, config: RandomConfig) -> Result<MackeyFunctor> {
    for _ in 0..config.attempts {
        let m = candidate(rng, spec, 0)?;
        if !m.is_zero() && small_enough(&m, config.max_level_order) {
            m.ensure_valid()?;
            return Ok(m);
        }
    }
    Err(Error::Capacity(format!(
        "no functor over {spec} with levels of order at most {} in {} attempts",
        config.max_level_order, config.attempts
    )))
}

/// `count` functors alternating between `C_2` and `C_4`, reproducible from `seed`.
pub fn random_corpus(seed: u64, count: usize) -> Result<Vec<MackeyFunctor>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let specs = [CyclicGroupSpec::new(2, 1)?, CyclicGroupSpec::new(2, 2)?];
    (0..count).map(|i| random_finite_functor(&mut rng, specs[i % 2], RandomConfig::default())).collect()
}
