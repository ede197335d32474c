//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed. Time limits are pinned
//! below and apply to debug builds as well.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use mackey_core::boxprod::{box_product, comparison_to_zero_slice};
use mackey_core::mackey::{
    burnside, constant_z, dual_z, from_json, from_json_value, is_isomorphic_bruteforce, to_json, CyclicGroupSpec,
    MackeyElement, MackeyFunctor, MackeyMorphism, SubFunctor,
};
use mackey_core::random::random_corpus;
use mackey_core::rep::{sdim_bounds, GSet, Rep, SphereSpec};
use mackey_core::slice::{
    augmentation_decomposition, coslice_filtration, deflate, geometric_quotient, inflate, is_pullback_of_zero_slice,
    is_pulled_back, is_zero_slice, pullback_quotient, slice_tower, zero_slice_quotient,
};
use mackey_core::zmod::{snf, Hom, IntMatrix, PresentedAbGroup};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

const CORPUS_SEED: u64 = 0x5eed_2024;
const CORPUS_SIZE: usize = 200;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(p: u64, n: usize) -> CyclicGroupSpec {
    CyclicGroupSpec::new(p, n).expect("valid group")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn load(name: &str) -> MackeyFunctor {
    from_json(&std::fs::read_to_string(fixture(name)).expect("fixture exists")).expect("fixture parses")
}

fn functor_json(levels: &[u64], res: i64, tr: i64) -> MackeyFunctor {
    // a C_2 functor with cyclic levels, trivial action and 1x1 structure maps
    let rel = |d: u64| {
        if d == 0 {
            "[[]]".to_string()
        } else {
            format!("[[{d}]]")
        }
    };
    from_json(&format!(
        r#"{{"p":2,"n":1,"levels":[{{"relations":{}}},{{"relations":{}}}],"act":[[[1]],[[1]]],"res":[[[{res}]]],"tr":[[[{tr}]]]}}"#,
        rel(levels[0]),
        rel(levels[1])
    ))
    .expect("well formed")
}

fn order(g: &PresentedAbGroup) -> usize {
    g.order().and_then(|o| o.try_into().ok()).expect("finite level")
}

// 1. The worked example E: F^1 E and E / F^1 E.
fn worked_example() -> Check {
    let e = load("E.json");
    let f = coslice_filtration(&e).map_err(|x| x.to_string())?;
    let (f1, _) = f.stage(1).to_functor(&e);
    ensure(f1.level_strings() == ["0", "Z⊕Z/2"], || format!("F^1 E has levels {:?}", f1.level_strings()))?;
    // 2Z ⊕ Z/2 inside Z ⊕ Z/2
    let member = |v: &[i64]| f.stage(1).contains(&MackeyElement::from_i64(1, v));
    ensure(member(&[2, 0]) && member(&[0, 1]) && !member(&[1, 0]), || "F^1 E(G/G) is not 2Z⊕Z/2".into())?;
    let (q, _) = f.stage(1).quotient(&e);
    let expected = functor_json(&[2, 2], 1, 0);
    let iso = is_isomorphic_bruteforce(&q, &expected, 100).map_err(|x| x.to_string())?;
    ensure(iso.is_some(), || format!("E/F^1 E is {:?}", q.level_strings()))?;
    Ok("F^1 E = (0, 2Z⊕Z/2), E/F^1 E ≅ (Z/2, Z/2; r = 1, t = 0)".into())
}

// 2. E ⊠ Z and its comparison with the zero slice of E.
fn box_product_example() -> Check {
    let e = load("E.json");
    let z = constant_z(spec(2, 1));
    let b = box_product(&e, &z).map_err(|x| x.to_string())?;
    ensure(b.level_strings() == ["Z/2", "Z/4"], || format!("E ⊠ Z has levels {:?}", b.level_strings()))?;
    ensure(b.res(1).is_surjective(), || "restriction is not surjective".into())?;
    // transfer hits 2 · generator: its image has order 2 and r∘t = 1 + γ = 2 = 0
    let image = b.tr(1).apply(&[BigInt::from(1)]);
    ensure(b.level(1).element_order(&image) == Some(BigInt::from(2)), || "transfer is not multiplication by 2".into())?;
    let display = functor_json(&[2, 4], 1, 2);
    ensure(display.is_valid(), || "the displayed functor is not valid".into())?;
    let iso = is_isomorphic_bruteforce(&b, &display, 100).map_err(|x| x.to_string())?;
    ensure(iso.is_some(), || "E ⊠ Z is not the displayed functor".into())?;
    let c = comparison_to_zero_slice(&e).map_err(|x| x.to_string())?;
    ensure(c.surjective && !c.injective, || {
        format!("comparison: surjective {}, injective {}", c.surjective, c.injective)
    })?;
    Ok("E ⊠ Z = (Z/2, Z/4; r onto, t = 2), comparison surjective and not injective".into())
}

const BURNSIDE_CASES: [(u64, usize); 6] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)];

// 3. The augmentation ideal of A as a sum of inflated duals.
fn burnside_decomposition() -> Check {
    for (p, n) in BURNSIDE_CASES {
        let s = spec(p, n);
        let d = augmentation_decomposition(s).map_err(|x| x.to_string())?;
        ensure(d.summands.len() == n, || format!("C_{p}^{n}: {} summands", d.summands.len()))?;
        ensure(d.is_internal_direct_sum(), || format!("C_{p}^{n}: not an internal direct sum"))?;
        // rank bookkeeping: level j of I has rank j, one from each summand with k <= j
        for j in 0..=n {
            let total: usize = d.summands.iter().map(|x| x.functor.level(j).ngens()).sum();
            ensure(total == j, || format!("C_{p}^{n}: summand ranks at level {j} add up to {total}"))?;
            let (ideal, _) = d.ideal.to_functor(&d.burnside);
            ensure(ideal.level(j).free_rank() == j && ideal.level(j).torsion_factors().is_empty(), || {
                format!("C_{p}^{n}: I has level {j} = {}", ideal.level_strings()[j])
            })?;
        }
        for x in &d.summands {
            let target =
                inflate(&dual_z(s.quotient(x.k).map_err(|e| e.to_string())?), x.k, s).map_err(|e| e.to_string())?;
            ensure(x.witness.cod() == &target, || format!("C_{p}^{n}: witness {} has the wrong target", x.k))?;
            ensure(x.witness.is_morphism() && x.witness.is_isomorphism(), || {
                format!("C_{p}^{n}: witness {} is not an isomorphism", x.k)
            })?;
        }
    }
    Ok(format!("{} groups, every summand witnessed", BURNSIDE_CASES.len()))
}

// 4. The slice tower of HA.
fn burnside_tower() -> Check {
    for (p, n) in BURNSIDE_CASES {
        let s = spec(p, n);
        let a = burnside(s);
        let t = slice_tower(&a).map_err(|x| x.to_string())?;
        let dims: Vec<u64> = (0..=n).map(|k| s.pow(k) - 1).collect();
        ensure(t.dims() == dims, || format!("C_{p}^{n}: slices in dimensions {:?}", t.dims()))?;
        ensure(t.entries[0].layer == constant_z(s).normalized(), || format!("C_{p}^{n}: P^0 is not Z"))?;
        let d = augmentation_decomposition(s).map_err(|x| x.to_string())?;
        let f = coslice_filtration(&a).map_err(|x| x.to_string())?;
        for k in 1..=n {
            let summand = &d.summands[k - 1];
            ensure(t.entries[k].layer == summand.functor.normalized(), || {
                format!("C_{p}^{n}: layer {} differs from summand {k}", dims[k])
            })?;
            // the tail sum
            let tail = d.summands[k..].iter().fold(SubFunctor::zero(&a), |acc, x| acc.sum(&x.sub));
            ensure(f.stage(s.pow(k)) == &tail, || format!("C_{p}^{n}: F^{} is not the tail sum", s.pow(k)))?;
            ensure(t.entries[k].section == tail.quotient(&a).0, || format!("C_{p}^{n}: section {k} is not A / tail"))?;
        }
        let first_tail = d.summands.iter().fold(SubFunctor::zero(&a), |acc, x| acc.sum(&x.sub));
        ensure(t.entries[0].section == first_tail.quotient(&a).0, || format!("C_{p}^{n}: section 0 is not A / I"))?;
    }
    Ok(format!("{} groups, layers at p^k - 1 equal to the summands", BURNSIDE_CASES.len()))
}

/// Size of the image of level `k` in level 0, by enumeration.
fn restriction_image_size(m: &MackeyFunctor, k: usize) -> usize {
    let r = m.res_composite(k, 0);
    let bottom = m.level(0);
    m.level(k)
        .elements(1 << 12)
        .expect("small level")
        .iter()
        .map(|x| bottom.canonical(&r.apply(x)))
        .collect::<HashSet<_>>()
        .len()
}

// 5. Zero-slice law on the random corpus.
fn zero_slice_law(corpus: &[MackeyFunctor]) -> Check {
    let mut already = 0;
    for (i, m) in corpus.iter().enumerate() {
        let z = zero_slice_quotient(m).map_err(|x| format!("functor {i}: {x}"))?;
        ensure(is_zero_slice(&z.quotient), || format!("functor {i}: a restriction of the quotient is not injective"))?;
        for k in 0..=m.n() {
            let want = restriction_image_size(m, k);
            ensure(order(z.quotient.level(k)) == want, || {
                format!("functor {i}: level {k} has order {} but the image has {want}", order(z.quotient.level(k)))
            })?;
        }
        // maximality: a nonzero further quotient with injective restrictions would have to
        // kill part of level 0, which is untouched
        ensure(z.proj.map(0).is_isomorphism(), || format!("functor {i}: level 0 is not preserved"))?;
        if is_zero_slice(m) {
            already += 1;
        }
    }
    Ok(format!("{} functors, {already} already zero slices", corpus.len()))
}

// 6. Laws of the coslice filtration on the random corpus.
fn filtration_laws(corpus: &[MackeyFunctor]) -> Check {
    let mut layers = 0;
    for (i, m) in corpus.iter().enumerate() {
        let s = m.spec();
        let f = coslice_filtration(m).map_err(|x| format!("functor {i}: {x}"))?;
        let top = s.order();
        for k in 1..=top {
            ensure(f.stage(k).is_contained_in(f.stage(k - 1)), || format!("functor {i}: F^{k} ⊄ F^{}", k - 1))?;
            let prime_power = (0..=s.n()).any(|t| s.pow(t) == k);
            if !prime_power {
                ensure(f.stage(k) == f.stage(k - 1), || format!("functor {i}: F^{k} ≠ F^{}", k - 1))?;
            }
        }
        ensure(f.stage(top).is_zero(m), || format!("functor {i}: F^{top} ≠ 0"))?;
        let t = slice_tower(m).map_err(|x| format!("functor {i}: {x}"))?;
        for e in &t.entries {
            ensure(is_pullback_of_zero_slice(&e.layer, e.level), || {
                format!("functor {i}: layer {} is not a pulled back zero slice", e.dim)
            })?;
            layers += 1;
        }
    }
    Ok(format!("{} functors, {layers} nonzero layers checked", corpus.len()))
}

/// A functor concentrated at the top level with group Z/d and trivial action.
fn concentrated(s: CyclicGroupSpec, d: u64) -> MackeyFunctor {
    let n = s.n();
    let mut levels = vec![PresentedAbGroup::trivial(); n];
    levels.push(PresentedAbGroup::cyclic(d));
    let mut act = vec![IntMatrix::zeros(0, 0); n];
    act.push(IntMatrix::identity(1));
    let res = (1..=n).map(|k| IntMatrix::zeros(0, usize::from(k == n))).collect();
    let tr = (1..=n).map(|k| IntMatrix::zeros(usize::from(k == n), 0)).collect();
    MackeyFunctor::new(s, levels, act, res, tr).expect("valid shapes")
}

// 7. Inflation and deflation, and the geometric quotient.
fn pullbacks(corpus: &[MackeyFunctor]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut round_trips = 0;
    for (i, m) in corpus.iter().enumerate() {
        for k in 1..=m.n() {
            let (q, _) = pullback_quotient(m, k).map_err(|x| x.to_string())?;
            ensure(is_pulled_back(&q, k), || format!("functor {i}: pullback quotient at {k} is not pulled back"))?;
            let back = inflate(&deflate(&q, k).map_err(|x| x.to_string())?, k, m.spec()).map_err(|x| x.to_string())?;
            ensure(back == q, || format!("functor {i}: inflate∘deflate moved the level {k} pullback"))?;
            round_trips += 1;
        }
    }
    let mut sampled = 0;
    let mut attempts = 0;
    while sampled < 20 {
        attempts += 1;
        if attempts > 2000 {
            return Err(format!("only {sampled} morphisms to concentrated functors found"));
        }
        let m = &corpus[rng.gen_range(0..corpus.len())];
        let n = m.n();
        let (g, proj) = geometric_quotient(m).map_err(|x| x.to_string())?;
        ensure((0..n).all(|k| g.level(k).is_trivial()), || "geometric quotient is not concentrated".into())?;
        let d = rng.gen_range(2..=8u64);
        let c = concentrated(m.spec(), d);
        let row: Vec<Vec<BigInt>> =
            (0..m.level(n).ngens()).map(|_| vec![BigInt::from(rng.gen_range(0..d as i64))]).collect();
        let mut maps: Vec<IntMatrix> = (0..n).map(|k| IntMatrix::zeros(0, m.level(k).ngens())).collect();
        maps.push(IntMatrix::from_columns(1, &row));
        let Ok(f) = MackeyMorphism::new_checked(m.clone(), c, maps) else {
            continue;
        };
        if f.is_zero_map() && sampled > 0 {
            continue;
        }
        let h = f.factor_through(&proj).map_err(|x| format!("no factorization: {x}"))?;
        ensure(h.is_morphism() && proj.then(&h).equals(&f), || "factorization does not commute".into())?;
        sampled += 1;
    }
    Ok(format!("{round_trips} round trips, {sampled} morphisms factor through the geometric quotient"))
}

// 8. sdim catalogue.
fn sdim_catalogue() -> Check {
    let mut count = 0;
    for (p, n) in [(2, 2), (2, 3), (3, 2)] {
        let s = spec(p, n);
        for x in GSet::all_up_to(s, 12) {
            for eps in 0..=1 {
                let b = sdim_bounds(&SphereSpec::permutation(&x, eps).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                let want = x.cardinality() as i64 - eps as i64;
                ensure((b.lower, b.upper) == (want, want), || format!("{s}, X = {:?}, ε = {eps}: {b}", x.counts()))?;
                count += 1;
            }
        }
    }
    for n in [1, 2] {
        let s = spec(2, n);
        let g = s.order() as i64;
        let b = sdim_bounds(&SphereSpec::new(Rep::regular(s).map_err(|e| e.to_string())?.scale(2), 2))
            .map_err(|e| e.to_string())?;
        ensure((b.lower, b.upper) == (g - 1, g - 1), || format!("S^(2ρ-2) over {s}: {b}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let groups = [spec(2, 2), spec(2, 3), spec(3, 2)];
    for _ in 0..50 {
        let s = groups[rng.gen_range(0..groups.len())];
        let len = s.order() as usize / 2 + 1;
        let mults = (0..len).map(|_| rng.gen_range(0..=2)).collect();
        let v = SphereSpec::new(Rep::from_mults(s, mults).map_err(|e| e.to_string())?, rng.gen_range(0..=3));
        let k = rng.gen_range(1..=3);
        let a = sdim_bounds(&v).map_err(|e| e.to_string())?;
        let b = sdim_bounds(&v.suspend_regular(k).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let shift = (k * s.order()) as i64;
        ensure((b.lower, b.upper) == (a.lower + shift, a.upper + shift), || format!("{v} + {k}ρ: {a} became {b}"))?;
    }
    Ok(format!("{count} permutation spheres exact, 2ρ-2 exact, 50 shifts exact"))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    IntMatrix::from_vec(r, c, (0..r * c).map(|_| BigInt::from(rng.gen_range(-50..=50))).collect()).expect("shape")
}

fn random_finite_group(rng: &mut ChaCha8Rng) -> PresentedAbGroup {
    let g = rng.gen_range(1..=3);
    let mut cols: Vec<Vec<BigInt>> =
        (0..g).map(|i| (0..g).map(|j| BigInt::from(if i == j { rng.gen_range(2..=6) } else { 0 })).collect()).collect();
    for _ in 0..2 {
        cols.push((0..g).map(|_| BigInt::from(rng.gen_range(-4..=4))).collect());
    }
    PresentedAbGroup::new(g, IntMatrix::from_columns(g, &cols)).expect("shape")
}

// 9. SNF, kernels, images, cokernels and quotients.
fn exact_arithmetic() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let one = BigInt::from(1);
    for t in 0..1000 {
        let m = random_matrix(&mut rng);
        let f = snf(&m);
        ensure(f.u.mul(&m).mul(&f.v) == f.s, || format!("matrix {t}: u m v ≠ s"))?;
        ensure(
            f.u.determinant().magnitude() == one.magnitude() && f.v.determinant().magnitude() == one.magnitude(),
            || format!("matrix {t}: transforms are not unimodular"),
        )?;
        let d = f.diagonal();
        for w in d.windows(2) {
            let ok = if w[0] == BigInt::from(0) { w[1] == BigInt::from(0) } else { &w[1] % &w[0] == BigInt::from(0) };
            ensure(ok && w[0] >= BigInt::from(0), || {
                format!("matrix {t}: diagonal {d:?} is not a divisibility chain")
            })?;
        }
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                ensure(i == j || f.s[(i, j)] == BigInt::from(0), || format!("matrix {t}: s is not diagonal"))?;
            }
        }
    }
    for t in 0..200 {
        let a = Arc::new(random_finite_group(&mut rng));
        let b0 = random_finite_group(&mut rng);
        let f = IntMatrix::from_vec(
            b0.ngens(),
            a.ngens(),
            (0..a.ngens() * b0.ngens()).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect(),
        )
        .expect("shape");
        let b =
            Arc::new(PresentedAbGroup::new(b0.ngens(), b0.relations().hstack(&f.mul(a.relations()))).expect("shape"));
        let h = Hom::new(a.clone(), b.clone(), f).map_err(|x| x.to_string())?;
        let (k, incl) = h.kernel().map_err(|x| x.to_string())?;
        let (_, coker, proj) = h.image_cokernel().map_err(|x| x.to_string())?;
        ensure(incl.then(&h).is_zero_map() && h.then(&proj).is_zero_map(), || format!("map {t}: not a complex"))?;
        ensure(order(&k) * order(&b) == order(&a) * order(&coker), || format!("map {t}: |ker||B| ≠ |A||coker|"))?;
        let zeros =
            a.elements(1 << 12).map_err(|x| x.to_string())?.iter().filter(|x| b.is_zero_element(&h.apply(x))).count();
        ensure(zeros == order(&k), || {
            format!("map {t}: kernel has {} elements, enumeration finds {zeros}", order(&k))
        })?;

        let gens: Vec<Vec<BigInt>> =
            (0..2).map(|_| (0..a.ngens()).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect()).collect();
        let (q, _) = PresentedAbGroup::quotient_by(&a, &gens).map_err(|x| x.to_string())?;
        let listed = q.enumerate(1 << 12).map_err(|x| x.to_string())?.len();
        ensure(listed == order(&q), || format!("group {t}: quotient order {} but {listed} elements", order(&q)))?;
        let mut span: HashSet<Vec<BigInt>> = HashSet::new();
        // the subgroup generated by gens, by combinations with coefficients below the group order
        let n = order(&a) as i64;
        for i in 0..n {
            for j in 0..n {
                let v: Vec<BigInt> = gens[0].iter().zip(&gens[1]).map(|(x, y)| x * i + y * j).collect();
                span.insert(a.canonical(&v));
            }
        }
        ensure(order(&q) * span.len() == order(&a), || format!("group {t}: |A/H| |H| ≠ |A|"))?;
    }
    Ok("1000 Smith forms, 200 exact sequences, 200 quotients".into())
}

struct Run {
    stdout: Vec<u8>,
    stderr: Vec<u8>,
    code: i32,
}

fn mackey(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_mackey"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs");
    Run { stdout: out.stdout, stderr: out.stderr, code: out.status.code().unwrap_or(-1) }
}

// 10. The command line contract.
fn cli_contract() -> Check {
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", "fixtures/E.json"],
        vec!["validate", "fixtures/swap_bad_tr.json"],
        vec!["slice-tower", "burnside", "--p", "2", "--n", "1"],
        vec!["slice-tower", "fixtures/E.json", "--format", "json"],
        vec!["slice-tower", "constant_Z", "--p", "3", "--n", "2"],
        vec!["boxprod", "fixtures/E.json", "fixtures/Z.json", "--compare-zero-slice"],
        vec!["boxprod", "fixtures/A.json", "fixtures/E.json"],
        vec!["boxprod", "fixtures/Z.json", "fixtures/Z.json", "--format", "json"],
        vec!["sdim", "2*rho - 2", "--p", "2", "--n", "1"],
        vec!["sdim", "perm[1,1,0] - 1", "--p", "2", "--n", "2"],
        vec!["sdim", "0"],
        vec!["chart", "burnside", "--p", "2", "--n", "2"],
        vec!["chart", "burnside", "--p", "3", "--n", "2", "--format", "svg"],
    ];
    for args in &commands {
        let (a, b) = (mackey(args), mackey(args));
        ensure(a.stdout == b.stdout && a.stderr == b.stderr && a.code == b.code, || {
            format!("{args:?} is not deterministic")
        })?;
    }

    let text = |args: &[&str]| String::from_utf8(mackey(args).stdout).expect("utf-8");
    let first_line = |s: String| s.lines().next().unwrap_or_default().to_string();
    ensure(
        first_line(text(&["sdim", "2*rho - 2", "--p", "2", "--n", "1"]))
            == "[1, 1]  rule: rho-desuspension + connectivity floor",
        || "sdim 2*rho - 2 has the wrong first line".into(),
    )?;
    ensure(text(&["sdim", "perm[1,1,0] - 1", "--p", "2", "--n", "2"]).starts_with("[2, 2]"), || {
        "sdim perm[1,1,0] - 1".into()
    })?;
    ensure(text(&["sdim", "0"]).starts_with("[0, 0]"), || "sdim 0".into())?;
    let boxed = text(&["boxprod", "fixtures/E.json", "fixtures/Z.json", "--compare-zero-slice"]);
    ensure(boxed.contains("Z/4") && boxed.contains("surjective, not injective"), || boxed.clone())?;
    ensure(
        text(&["boxprod", "fixtures/A.json", "fixtures/E.json"]).contains("isomorphic to the second factor"),
        || "A ⊠ E is not reported as E".into(),
    )?;
    let chart = text(&["chart", "burnside", "--p", "3", "--n", "2"]);
    let marked: Vec<&str> =
        chart.lines().filter(|l| l.contains('●')).map(|l| l.split('|').next().unwrap_or("").trim()).collect();
    ensure(marked == ["8", "2", "0"], || format!("burnside chart markers at {marked:?}"))?;
    let report = text(&["validate", "fixtures/swap_bad_tr.json"]);
    ensure(report.contains("transfer equivariance, level 1"), || report.clone())?;

    // json round trips
    let tower = text(&["slice-tower", "burnside", "--p", "2", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&tower).map_err(|x| x.to_string())?;
    let expected = slice_tower(&burnside(spec(2, 2))).map_err(|x| x.to_string())?;
    let entries = v.as_array().ok_or("tower json is not an array")?;
    ensure(entries.len() == expected.entries.len(), || "tower json has the wrong length".into())?;
    for (j, e) in entries.iter().zip(&expected.entries) {
        let layer = from_json_value(&j["layer"]).map_err(|x| x.to_string())?;
        let section = from_json_value(&j["section"]).map_err(|x| x.to_string())?;
        ensure(layer == e.layer && section == e.section, || format!("layer {} does not round trip", e.dim))?;
        ensure(from_json(&to_json(&layer)).map_err(|x| x.to_string())? == layer, || "layer json is not stable".into())?;
    }
    let product = text(&["boxprod", "fixtures/Z.json", "fixtures/Z.json", "--format", "json"]);
    let line = product.lines().next().unwrap_or_default();
    let m = from_json(line).map_err(|x| x.to_string())?;
    ensure(to_json(&m) == line && m.is_valid(), || "box product json is not canonical".into())?;

    // exit codes
    let mut cases: Vec<(Vec<String>, i32)> = Vec::new();
    let own = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let mut malformed: Vec<PathBuf> =
        std::fs::read_dir(fixture("malformed")).map_err(|x| x.to_string())?.map(|e| e.expect("entry").path()).collect();
    malformed.sort();
    for path in &malformed {
        let p = path.to_string_lossy().to_string();
        cases.push((own(&["validate", &p]), 2));
        cases.push((own(&["slice-tower", &p]), 2));
        cases.push((own(&["chart", &p, "--format", "svg"]), 2));
        cases.push((own(&["boxprod", &p, "fixtures/E.json"]), 2));
    }
    cases.extend([
        (own(&["validate", "fixtures/E.json"]), 0),
        (own(&["validate", "fixtures/does_not_exist.json"]), 2),
        (own(&["validate", "fixtures/swap_bad_tr.json"]), 1),
        (own(&["slice-tower", "fixtures/swap_bad_tr.json"]), 1),
        (own(&["boxprod", "fixtures/E.json", "fixtures/Z_c3.json"]), 1),
        (own(&["boxprod", "fixtures/E.json", "fixtures/E.json", "--compare-zero-slice"]), 1),
        (own(&["sdim", "rho - lambda(1)", "--p", "2", "--n", "2"]), 1),
        (own(&["sdim", "2*rho +", "--p", "2", "--n", "1"]), 2),
        (own(&["sdim", "rho", "--p", "4", "--n", "1"]), 2),
        (own(&["chart", "burnside", "--format", "png"]), 2),
        (own(&["slice-tower", "burnside", "--unknown"]), 2),
        (own(&["frobnicate"]), 2),
    ]);
    for (args, want) in &cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = mackey(&refs).code;
        ensure(got == *want, || format!("{args:?} exited {got}, expected {want}"))?;
    }
    Ok(format!("{} commands deterministic, {} exit codes checked", commands.len(), cases.len()))
}

fn main() {
    let corpus = random_corpus(CORPUS_SEED, CORPUS_SIZE).expect("random corpus");
    let criteria: Vec<(u32, &str, Duration, Box<dyn Fn() -> Check + '_>)> = vec![
        (1, "worked example E", Duration::from_secs(1), Box::new(worked_example)),
        (2, "E ⊠ Z", Duration::from_secs(1), Box::new(box_product_example)),
        (3, "Burnside decomposition", Duration::from_secs(5), Box::new(burnside_decomposition)),
        (4, "slice tower of HA", Duration::from_secs(5), Box::new(burnside_tower)),
        (5, "zero-slice law", Duration::from_secs(30), Box::new(|| zero_slice_law(&corpus))),
        (6, "filtration laws", Duration::from_secs(30), Box::new(|| filtration_laws(&corpus))),
        (7, "pullback round trips", Duration::from_secs(30), Box::new(|| pullbacks(&corpus))),
        (8, "sdim catalogue", Duration::from_secs(5), Box::new(sdim_catalogue)),
        (9, "exact arithmetic", Duration::from_secs(30), Box::new(exact_arithmetic)),
        (10, "command line contract", Duration::from_secs(60), Box::new(cli_contract)),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match result {
            Ok(_) if took > *limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            r => r,
        };
        match result {
            Ok(detail) => {
                println!("criterion {id:>2} PASS  {name}: {detail} ({took:.2?}, limit {limit:?})")
            }
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {why} ({took:.2?}, limit {limit:?})");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
