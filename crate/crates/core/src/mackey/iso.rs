use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{MackeyFunctor, MackeyMorphism};
use crate::error::{Error, Result};
use crate::zmod::{Hom, IntMatrix, PresentedAbGroup};

/// Upper limit on candidate maps examined at a single level.
const CANDIDATE_LIMIT: usize = 1 << 20;

/// All isomorphisms between two finite normalized groups with the same invariant factors, as
/// matrices, in lexicographic order of generator images.
pub fn level_isomorphisms(a: &Arc<PresentedAbGroup>, b: &Arc<PresentedAbGroup>, bound: usize) -> Result<Vec<Hom>> {
    if !a.is_normalized() || !b.is_normalized() {
        return Err(Error::Input("level isomorphisms are searched between normalized groups".into()));
    }
    if a.invariant_factors() != b.invariant_factors() {
        return Ok(Vec::new());
    }
    let elements = b.enumerate(bound)?;
    // images of generator i must have order dividing d_i
    let mut choices: Vec<Vec<&Vec<BigInt>>> = Vec::new();
    let mut total: usize = 1;
    for d in a.invariant_factors() {
        let ok: Vec<&Vec<BigInt>> =
            elements.iter().filter(|e| b.element_order(e).is_some_and(|o| d.is_multiple_of(&o))).collect();
        total = total.saturating_mul(ok.len());
        choices.push(ok);
    }
    if total > CANDIDATE_LIMIT {
        return Err(Error::Capacity(format!("{total} candidate level maps exceed the search limit")));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let cols: Vec<Vec<BigInt>> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        let h = Hom::with_shape(a.clone(), b.clone(), IntMatrix::from_columns(b.ngens(), &cols))
            .expect("normalized shapes");
        if h.is_surjective() {
            out.push(h);
        }
        // odometer, last generator fastest so the order is lexicographic
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn check_finite(m: &MackeyFunctor, bound: usize, name: &str) -> Result<()> {
    for (k, g) in m.levels().iter().enumerate() {
        match g.order() {
            None => return Err(Error::Capacity(format!("level {k} of {name} is infinite"))),
            Some(o) if o.to_usize().is_none_or(|o| o > bound) => {
                return Err(Error::Capacity(format!("level {k} of {name} has order {o} > {bound}")))
            }
            _ => {}
        }
    }
    Ok(())
}

/// Exhaustive isomorphism search between finite functors whose levels have order at most
/// `bound`. Returns the lexicographically least isomorphism (levels bottom up) when one exists.
pub fn is_isomorphic_bruteforce(a: &MackeyFunctor, b: &MackeyFunctor, bound: usize) -> Result<Option<MackeyMorphism>> {
    if a.spec() != b.spec() {
        return Err(Error::Input(format!("functors over {} and {}", a.spec(), b.spec())));
    }
    check_finite(a, bound, "the first functor")?;
    check_finite(b, bound, "the second functor")?;
    if a.level_factors() != b.level_factors() {
        return Ok(None);
    }
    let (na, to_a, _) = a.normalized_with_iso();
    let (nb, _, from_b) = b.normalized_with_iso();
    let n = a.n();
    let mut cands = Vec::new();
    for k in 0..=n {
        let all = level_isomorphisms(na.level(k), nb.level(k), bound)?;
        let ok: Vec<Hom> = all.into_iter().filter(|f| na.act(k).then(f).equals(&f.then(nb.act(k)))).collect();
        if ok.is_empty() {
            return Ok(None);
        }
        cands.push(ok);
    }
    let mut chosen: Vec<usize> = Vec::new();
    let mut next = 0usize;
    loop {
        let k = chosen.len();
        if k == n + 1 {
            break;
        }
        let mut found = None;
        for (i, f) in cands[k].iter().enumerate().skip(next) {
            let fits = k == 0 || {
                let g = &cands[k - 1][chosen[k - 1]];
                na.res(k).then(g).equals(&f.then(nb.res(k))) && na.tr(k).then(f).equals(&g.then(nb.tr(k)))
            };
            if fits {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => {
                chosen.push(i);
                next = 0;
            }
            None => match chosen.pop() {
                Some(prev) => next = prev + 1,
                None => return Ok(None),
            },
        }
    }
    let maps = (0..=n).map(|k| to_a[k].then(&cands[k][chosen[k]]).then(&from_b[k])).collect();
    let w = MackeyMorphism::from_homs(a.clone(), b.clone(), maps);
    debug_assert!(w.is_morphism() && w.is_isomorphism());
    Ok(Some(w))
}

/// Searches for an isomorphism whose level maps are diagonal with entries `±1` in the
/// normalized presentations. Works for infinite levels; complete whenever every level
/// automorphism is diagonal, for instance when levels are `Z`, `Z/2` or trivial.
pub fn signed_diagonal_isomorphism(a: &MackeyFunctor, b: &MackeyFunctor) -> Result<Option<MackeyMorphism>> {
    if a.spec() != b.spec() {
        return Err(Error::Input(format!("functors over {} and {}", a.spec(), b.spec())));
    }
    if a.level_factors() != b.level_factors() {
        return Ok(None);
    }
    let (na, to_a, _) = a.normalized_with_iso();
    let (nb, _, from_b) = b.normalized_with_iso();
    let gens: Vec<usize> = na.levels().iter().map(|g| g.ngens()).collect();
    let total: usize = gens.iter().sum();
    if total > 20 {
        return Err(Error::Capacity(format!("{total} generators is too many for a sign search")));
    }
    for mask in 0u32..(1 << total) {
        let mut bit = 0;
        let maps: Vec<Hom> = (0..=a.n())
            .map(|k| {
                let mut d = IntMatrix::identity(gens[k]);
                for i in 0..gens[k] {
                    if mask >> bit & 1 == 1 {
                        d[(i, i)] = BigInt::from(-1);
                    }
                    bit += 1;
                }
                Hom::with_shape(na.level(k).clone(), nb.level(k).clone(), d).expect("square")
            })
            .collect();
        let f = MackeyMorphism::from_homs(na.clone(), nb.clone(), maps);
        if f.is_morphism() {
            let maps = (0..=a.n()).map(|k| to_a[k].then(f.map(k)).then(&from_b[k])).collect();
            return Ok(Some(MackeyMorphism::from_homs(a.clone(), b.clone(), maps)));
        }
    }
    Ok(None)
}
