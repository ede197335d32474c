//! Box product of Mackey functors for `C_{p^n}` by generators and relations.
//!
//! Level `m` of `M ⊠ N` is generated by symbols `[j; x⊗y]` for `j <= m`, with `x` and `y`
//! generators of level `j`. Relations, in this order: bilinearity, invariance under the
//! generator `g^(p^(n-m))` of `C_{p^m}` acting diagonally, and Frobenius reciprocity
//! `[j; tr(x')⊗y] = [j-1; x'⊗res(y)]`, `[j; x⊗tr(y')] = [j-1; res(x)⊗y']`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::mackey::{burnside, MackeyFunctor, MackeyMorphism};
use crate::slice::zero_slice_quotient;
use crate::zmod::{solve, Hom, IntMatrix, PresentedAbGroup};

/// Where the block of symbols `[j; x⊗y]` sits inside level `m`.
#[derive(Clone, Debug)]
struct Layout {
    /// offsets[m][j] for j <= m, plus the total in offsets[m][m+1]
    offsets: Vec<Vec<usize>>,
    /// generator counts of the two factors per level
    a: Vec<usize>,
    b: Vec<usize>,
}

impl Layout {
    fn new(m: &MackeyFunctor, n: &MackeyFunctor) -> Self {
        let a: Vec<usize> = m.levels().iter().map(|g| g.ngens()).collect();
        let b: Vec<usize> = n.levels().iter().map(|g| g.ngens()).collect();
        let offsets = (0..a.len())
            .map(|lvl| {
                let mut o = vec![0];
                for j in 0..=lvl {
                    o.push(o[j] + a[j] * b[j]);
                }
                o
            })
            .collect();
        Layout { offsets, a, b }
    }

    fn total(&self, m: usize) -> usize {
        self.offsets[m][m + 1]
    }

    fn index(&self, m: usize, j: usize, x: usize, y: usize) -> usize {
        self.offsets[m][j] + x * self.b[j] + y
    }

    /// Embeds `u ⊗ v` (coordinates at level `j`) into level `m` as a vector.
    fn place(&self, m: usize, j: usize, u: &[BigInt], v: &[BigInt], out: &mut [BigInt]) {
        for (x, ux) in u.iter().enumerate() {
            if ux == &BigInt::from(0) {
                continue;
            }
            for (y, vy) in v.iter().enumerate() {
                out[self.index(m, j, x, y)] += ux * vy;
            }
        }
    }

    fn unit(len: usize, i: usize) -> Vec<BigInt> {
        let mut e = vec![BigInt::from(0); len];
        e[i] = BigInt::from(1);
        e
    }
}

fn relations(m: &MackeyFunctor, n: &MackeyFunctor, lay: &Layout, lvl: usize) -> Vec<Vec<BigInt>> {
    let total = lay.total(lvl);
    let spec = m.spec();
    let mut rels = Vec::new();
    let zero = || vec![BigInt::from(0); total];
    // bilinearity
    for j in 0..=lvl {
        for r in m.level(j).relation_columns() {
            for y in 0..lay.b[j] {
                let mut c = zero();
                lay.place(lvl, j, &r, &Layout::unit(lay.b[j], y), &mut c);
                rels.push(c);
            }
        }
        for s in n.level(j).relation_columns() {
            for x in 0..lay.a[j] {
                let mut c = zero();
                lay.place(lvl, j, &Layout::unit(lay.a[j], x), &s, &mut c);
                rels.push(c);
            }
        }
    }
    // invariance under the generator of C_{p^lvl}
    let e = spec.pow(spec.n() - lvl);
    for j in 0..=lvl {
        let gm = m.act_pow(j, e);
        let gn = n.act_pow(j, e);
        for x in 0..lay.a[j] {
            for y in 0..lay.b[j] {
                let mut c = zero();
                lay.place(lvl, j, &gm.matrix().column(x), &gn.matrix().column(y), &mut c);
                c[lay.index(lvl, j, x, y)] -= 1;
                rels.push(c);
            }
        }
    }
    // Frobenius reciprocity
    for j in 1..=lvl {
        for x in 0..lay.a[j - 1] {
            for y in 0..lay.b[j] {
                let mut c = zero();
                lay.place(lvl, j, &m.tr(j).matrix().column(x), &Layout::unit(lay.b[j], y), &mut c);
                let mut d = zero();
                lay.place(lvl, j - 1, &Layout::unit(lay.a[j - 1], x), &n.res(j).matrix().column(y), &mut d);
                rels.push(c.iter().zip(&d).map(|(u, v)| u - v).collect());
            }
        }
        for x in 0..lay.a[j] {
            for y in 0..lay.b[j - 1] {
                let mut c = zero();
                lay.place(lvl, j, &Layout::unit(lay.a[j], x), &n.tr(j).matrix().column(y), &mut c);
                let mut d = zero();
                lay.place(lvl, j - 1, &m.res(j).matrix().column(x), &Layout::unit(lay.b[j - 1], y), &mut d);
                rels.push(c.iter().zip(&d).map(|(u, v)| u - v).collect());
            }
        }
    }
    rels
}

/// The box product on the raw symbol presentation, with its layout.
fn raw_box_product(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<(MackeyFunctor, Layout)> {
    if m.spec() != n.spec() {
        return Err(Error::Input(format!("box product of functors over {} and {}", m.spec(), n.spec())));
    }
    let spec = m.spec();
    let top = spec.n();
    let lay = Layout::new(m, n);
    let mut levels = Vec::new();
    for lvl in 0..=top {
        let rels = relations(m, n, &lay, lvl);
        let total = lay.total(lvl);
        levels.push(PresentedAbGroup::new(total, IntMatrix::from_columns(total, &rels))?);
    }
    let mut act = Vec::new();
    for lvl in 0..=top {
        let total = lay.total(lvl);
        let mut cols = Vec::with_capacity(total);
        for j in 0..=lvl {
            for x in 0..lay.a[j] {
                for y in 0..lay.b[j] {
                    let mut c = vec![BigInt::from(0); total];
                    lay.place(lvl, j, &m.act(j).matrix().column(x), &n.act(j).matrix().column(y), &mut c);
                    cols.push(c);
                }
            }
        }
        act.push(IntMatrix::from_columns(total, &cols));
    }
    let mut res = Vec::new();
    let mut tr = Vec::new();
    for lvl in 1..=top {
        let (lo, hi) = (lay.total(lvl - 1), lay.total(lvl));
        // transfer keeps every symbol
        let mut t = IntMatrix::zeros(hi, lo);
        for j in 0..lvl {
            for x in 0..lay.a[j] {
                for y in 0..lay.b[j] {
                    t[(lay.index(lvl, j, x, y), lay.index(lvl - 1, j, x, y))] = BigInt::from(1);
                }
            }
        }
        tr.push(t);
        // restriction: top symbols restrict factor-wise, lower ones become orbit sums
        let step = spec.pow(spec.n() - lvl);
        let mut cols = Vec::with_capacity(hi);
        for j in 0..=lvl {
            for x in 0..lay.a[j] {
                for y in 0..lay.b[j] {
                    let mut c = vec![BigInt::from(0); lo];
                    if j == lvl {
                        lay.place(
                            lvl - 1,
                            lvl - 1,
                            &m.res(lvl).matrix().column(x),
                            &n.res(lvl).matrix().column(y),
                            &mut c,
                        );
                    } else {
                        for i in 0..spec.p() {
                            let gm = m.act_pow(j, i * step);
                            let gn = n.act_pow(j, i * step);
                            lay.place(lvl - 1, j, &gm.matrix().column(x), &gn.matrix().column(y), &mut c);
                        }
                    }
                    cols.push(c);
                }
            }
        }
        res.push(IntMatrix::from_columns(lo, &cols));
    }
    Ok((MackeyFunctor::new(spec, levels, act, res, tr)?, lay))
}

/// `M ⊠ N` in normalized form.
pub fn box_product(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<MackeyFunctor> {
    Ok(raw_box_product(m, n)?.0.normalized())
}

/// The action of a Burnside element `b` (coordinates in the orbit basis of level `j`) on `x`
/// in level `j` of `m`: `Σ_i b_i tr_i^j res^j_i x`.
pub fn burnside_action(m: &MackeyFunctor, j: usize, b: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); m.level(j).ngens()];
    for (i, bi) in b.iter().enumerate() {
        if bi == &BigInt::from(0) {
            continue;
        }
        let down = m.res_composite(j, i).apply(x);
        let up = m.tr_composite(i, j).apply(&down);
        for (o, u) in out.iter_mut().zip(up) {
            *o += bi * u;
        }
    }
    out
}

/// Builds the morphism from the raw `M ⊠ N` to `target` given the image of each symbol, then
/// moves it to the normalized box product.
fn from_symbols(
    raw: &MackeyFunctor,
    lay: &Layout,
    target: &MackeyFunctor,
    image: impl Fn(usize, usize, usize, usize) -> Vec<BigInt>,
) -> MackeyMorphism {
    let (normal, _, from) = raw.normalized_with_iso();
    let mut maps = Vec::new();
    for lvl in 0..=raw.n() {
        let mut cols = Vec::new();
        for j in 0..=lvl {
            for x in 0..lay.a[j] {
                for y in 0..lay.b[j] {
                    cols.push(image(lvl, j, x, y));
                }
            }
        }
        let f = Hom::with_shape(
            raw.level(lvl).clone(),
            target.level(lvl).clone(),
            IntMatrix::from_columns(target.level(lvl).ngens(), &cols),
        )
        .expect("symbol images have target length");
        maps.push(from[lvl].then(&f).matrix().clone());
    }
    MackeyMorphism::new(normal, target.clone(), maps).expect("normalized shapes")
}

/// The canonical map `A ⊠ M -> M`, `[j; b⊗x] ↦ tr_j(b·x)`.
pub fn unit_map(m: &MackeyFunctor) -> Result<MackeyMorphism> {
    let a = burnside(m.spec());
    let (raw, lay) = raw_box_product(&a, m)?;
    let f = from_symbols(&raw, &lay, m, |lvl, j, bi, x| {
        let b = Layout::unit(j + 1, bi);
        let v = burnside_action(m, j, &b, &Layout::unit(m.level(j).ngens(), x));
        m.tr_composite(j, lvl).apply(&v)
    });
    f.check()?;
    Ok(f)
}

/// The comparison map `M ⊠ (A/F^1 A) -> M/F^1 M` and what it is.
#[derive(Clone, Debug)]
pub struct ZeroSliceComparison {
    pub boxed: MackeyFunctor,
    pub target: MackeyFunctor,
    pub map: MackeyMorphism,
    pub surjective: bool,
    pub injective: bool,
}

/// The canonical map from `M ⊠ Z0(A)` onto the zero slice quotient `Z0(M)`.
pub fn comparison_to_zero_slice(m: &MackeyFunctor) -> Result<ZeroSliceComparison> {
    let a = burnside(m.spec());
    let za = zero_slice_quotient(&a)?;
    let zm = zero_slice_quotient(m)?;
    let (raw, lay) = raw_box_product(m, &za.quotient)?;
    // lifts of the generators of Z0(A) back to A
    let lifts: Vec<Vec<Vec<BigInt>>> = (0..=m.n())
        .map(|j| {
            let p = za.proj.map(j);
            let q = p.cod();
            let sys = p.matrix().hstack(q.relations());
            (0..q.ngens())
                .map(|i| {
                    let x = solve(&sys, &Layout::unit(q.ngens(), i))
                        .ok_or_else(|| Error::Inconsistent(format!("A/F^1 A is not a quotient of A at level {j}")))?;
                    Ok(x[..a.level(j).ngens()].to_vec())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let map = from_symbols(&raw, &lay, &zm.quotient, |lvl, j, x, y| {
        let v = burnside_action(m, j, &lifts[j][y], &Layout::unit(m.level(j).ngens(), x));
        let up = m.tr_composite(j, lvl).apply(&v);
        zm.proj.apply(lvl, &up)
    });
    map.check()?;
    let surjective = map.is_surjective();
    let injective = map.is_injective();
    Ok(ZeroSliceComparison { boxed: map.dom().clone(), target: zm.quotient, map, surjective, injective })
}

/// `M ⊠ N` and `N ⊠ M` related by swapping the factors of every symbol.
pub fn swap_map(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<MackeyMorphism> {
    let (raw_mn, lay_mn) = raw_box_product(m, n)?;
    let (raw_nm, lay_nm) = raw_box_product(n, m)?;
    let (normal_nm, to_nm, _) = raw_nm.normalized_with_iso();
    let f = from_symbols(&raw_mn, &lay_mn, &normal_nm, |lvl, j, x, y| {
        let mut c = vec![BigInt::from(0); lay_nm.total(lvl)];
        c[lay_nm.index(lvl, j, y, x)] = BigInt::from(1);
        to_nm[lvl].apply(&c)
    });
    f.check()?;
    Ok(f)
}
