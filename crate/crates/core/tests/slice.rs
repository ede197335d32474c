mod common;

use common::{c2_z2, e, orders, spec};
use mackey_core::mackey::{
    burnside, constant_z, dual_z, is_isomorphic_bruteforce, signed_diagonal_isomorphism, MackeyElement, MackeyFunctor,
    MackeyMorphism, SubFunctor,
};
use mackey_core::slice::{
    augmentation_decomposition, coslice_filtration, deflate, geometric_quotient, inflate, is_pulled_back,
    is_zero_slice, max_geometric_sub, pullback_quotient, slice_tower, zero_slice_quotient,
};
use mackey_core::zmod::{IntMatrix, PresentedAbGroup};
use mackey_core::Error;

#[test]
fn constant_functor_has_trivial_filtration() {
    let c = constant_z(spec(3, 2));
    let f = coslice_filtration(&c).unwrap();
    for (k, s) in f.stages() {
        assert_eq!(s.is_zero(&c), k >= 1, "k = {k}");
    }
    let t = slice_tower(&c).unwrap();
    assert_eq!(t.dims(), vec![0]);
    assert_eq!(t.entries[0].layer, c);
}

#[test]
fn filtration_of_e() {
    let m = e();
    let f = coslice_filtration(&m).unwrap();
    let (f1, _) = f.stage(1).to_functor(&m);
    assert_eq!(orders(&f1), vec!["0", "Z⊕Z/2"]);
    assert!(f.stage(1).contains(&MackeyElement::from_i64(1, &[2, 0])));
    assert!(f.stage(1).contains(&MackeyElement::from_i64(1, &[0, 1])));
    assert!(!f.stage(1).contains(&MackeyElement::from_i64(1, &[1, 0])));
    assert!(f.stage(2).is_zero(&m));

    let t = slice_tower(&m).unwrap();
    assert_eq!(t.dims(), vec![0, 1]);
    assert!(is_isomorphic_bruteforce(&t.entries[0].layer, &c2_z2(1, 0), 16).unwrap().is_some());
    assert_eq!(orders(&t.entries[1].layer), vec!["0", "Z⊕Z/2"]);
    assert_eq!(t.entries[1].section, m.normalized());
}

#[test]
fn filtration_of_burnside_c4() {
    let a = burnside(spec(2, 2));
    let f = coslice_filtration(&a).unwrap();
    let (f1, _) = f.stage(1).to_functor(&a);
    assert_eq!(orders(&f1), vec!["0", "Z", "Z⊕Z"]);
    assert_eq!(f.stage(2), f.stage(3));
    assert!(f.stage(4).is_zero(&a));
    let (f2, _) = f.stage(2).to_functor(&a);
    assert_eq!(orders(&f2), vec!["0", "0", "Z"]);
    // F^2 is generated by [C_4/C_2] - 2[C_4/C_4]
    let g = SubFunctor::generated(&a, &[MackeyElement::from_i64(2, &[0, 1, -2])]).unwrap();
    assert_eq!(&g, f.stage(2));
    assert!(is_pulled_back(&f1, 1));
}

#[test]
fn burnside_tower_layers() {
    for (p, n) in [(2, 1), (2, 2), (3, 2)] {
        let s = spec(p, n);
        let t = slice_tower(&burnside(s)).unwrap();
        let dims: Vec<u64> = (0..=n).map(|k| s.pow(k) - 1).collect();
        assert_eq!(t.dims(), dims);
        assert_eq!(t.entries[0].layer, constant_z(s));
        for k in 1..=n {
            let expected = inflate(&dual_z(s.quotient(k).unwrap()), k, s).unwrap();
            let w = signed_diagonal_isomorphism(&t.entries[k].layer, &expected).unwrap();
            assert!(w.is_some(), "p={p} n={n} k={k}");
        }
        assert_eq!(t.entries[n].section, burnside(s));
    }
}

#[test]
fn zero_slice_examples() {
    let a = burnside(spec(2, 1));
    let z = zero_slice_quotient(&a).unwrap();
    assert_eq!(z.quotient, constant_z(spec(2, 1)));
    let q = zero_slice_quotient(&e()).unwrap().quotient;
    assert_eq!(orders(&q), vec!["Z/2", "Z/2"]);
    assert_eq!(q.res(1).matrix(), &IntMatrix::scalar(1, 1));
    assert!(is_zero_slice(&q));
}

#[test]
fn inflation_examples() {
    let z = constant_z(spec(2, 0));
    let m = inflate(&z, 1, spec(2, 1)).unwrap();
    assert_eq!(orders(&m), vec!["0", "Z"]);
    assert!(m.is_valid());

    let d = inflate(&dual_z(spec(2, 1)), 1, spec(2, 2)).unwrap();
    assert_eq!(orders(&d), vec!["0", "Z", "Z"]);
    assert_eq!(d.res(2).matrix(), &IntMatrix::scalar(1, 2));
    assert_eq!(d.tr(2).matrix(), &IntMatrix::scalar(1, 1));
    assert!(d.is_valid());

    let m = e();
    assert_eq!(inflate(&m, 0, m.spec()).unwrap(), m);
    assert!(inflate(&m, 1, spec(3, 2)).is_err());
}

#[test]
fn deflation_examples() {
    let m = inflate(&constant_z(spec(2, 0)), 1, spec(2, 1)).unwrap();
    assert!(is_pulled_back(&m, 1));
    assert_eq!(deflate(&m, 1).unwrap(), constant_z(spec(2, 0)));
    let c = constant_z(spec(2, 2));
    assert!(!is_pulled_back(&c, 1));
    assert!(matches!(deflate(&c, 1), Err(Error::Domain(_))));
    let (f1, _) = coslice_filtration(&burnside(spec(2, 2))).unwrap().stage(1).to_functor(&burnside(spec(2, 2)));
    assert!(is_pulled_back(&f1, 1));
    assert_eq!(inflate(&deflate(&f1, 1).unwrap(), 1, spec(2, 2)).unwrap(), f1);
}

#[test]
fn geometric_examples() {
    assert!(max_geometric_sub(&constant_z(spec(2, 1))).is_zero(&constant_z(spec(2, 1))));

    let a = burnside(spec(2, 1));
    let g = max_geometric_sub(&a);
    assert!(g.contains(&MackeyElement::from_i64(1, &[1, -2])));
    assert_eq!(orders(&g.to_functor(&a).0), vec!["0", "Z"]);

    let m = e();
    let (g, _) = max_geometric_sub(&m).to_functor(&m);
    assert_eq!(orders(&g), vec!["0", "Z⊕Z/2"]);

    let (q, proj) = geometric_quotient(&a).unwrap();
    assert_eq!(orders(&q), vec!["0", "Z"]);
    assert!(proj.is_morphism());
    let (q, _) = geometric_quotient(&constant_z(spec(2, 1))).unwrap();
    assert_eq!(orders(&q), vec!["0", "Z/2"]);
    let (again, _) = geometric_quotient(&q).unwrap();
    assert_eq!(again, q);
}

#[test]
fn pullback_quotient_examples() {
    let m = e();
    assert_eq!(pullback_quotient(&m, 0).unwrap().0, m.normalized());
    let a = burnside(spec(2, 1));
    assert_eq!(pullback_quotient(&a, 1).unwrap().0, geometric_quotient(&a).unwrap().0);
    let a = burnside(spec(2, 2));
    let (q, _) = pullback_quotient(&a, 1).unwrap();
    assert!(is_pulled_back(&q, 1));
    assert_eq!(orders(&q), vec!["0", "Z", "Z⊕Z"]);
    assert_eq!(pullback_quotient(&q, 1).unwrap().0, q);
}

#[test]
fn geometric_quotient_is_universal() {
    // the constant functor maps onto (0, Z/2) concentrated at the top
    let c = constant_z(spec(2, 1));
    let z2 = PresentedAbGroup::cyclic(2);
    let target = MackeyFunctor::new(
        spec(2, 1),
        vec![PresentedAbGroup::trivial(), z2],
        vec![IntMatrix::zeros(0, 0), IntMatrix::identity(1)],
        vec![IntMatrix::zeros(0, 1)],
        vec![IntMatrix::zeros(1, 0)],
    )
    .unwrap();
    let f =
        MackeyMorphism::new_checked(c.clone(), target, vec![IntMatrix::zeros(0, 1), IntMatrix::scalar(1, 1)]).unwrap();
    let (_, proj) = geometric_quotient(&c).unwrap();
    let h = f.factor_through(&proj).unwrap();
    assert!(proj.then(&h).equals(&f));
}

#[test]
fn decomposition_examples() {
    let d = augmentation_decomposition(spec(2, 1)).unwrap();
    assert_eq!(d.summands.len(), 1);
    assert_eq!(d.summands[0].generator, MackeyElement::from_i64(1, &[1, -2]));
    assert!(d.is_internal_direct_sum());

    let d = augmentation_decomposition(spec(2, 2)).unwrap();
    assert_eq!(d.summands.len(), 2);
    let s1 = &d.summands[0].functor;
    assert_eq!(orders(s1), vec!["0", "Z", "Z"]);
    assert_eq!(s1.res(2).matrix().max_abs_entry(), 2.into());
    assert_eq!(s1.tr(2).matrix().max_abs_entry(), 1.into());
    assert_eq!(orders(&d.summands[1].functor), vec!["0", "0", "Z"]);
    // tr(g_1) = [C_4/e] - 2[C_4/C_2], the chain formula
    let t = d.burnside.tr(2).apply(&d.summands[0].generator.coords);
    assert!(d.summands[0].sub.contains(&MackeyElement::new(2, t.clone())));
    assert_eq!(t, mackey_core::zmod::vector(&[1, -2, 0]));

    let d = augmentation_decomposition(spec(3, 1)).unwrap();
    assert_eq!(d.summands[0].generator, MackeyElement::from_i64(1, &[1, -3]));
    assert!(augmentation_decomposition(spec(2, 0)).is_err());
}
