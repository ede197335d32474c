#![allow(dead_code)]

use mackey_core::mackey::{from_json, CyclicGroupSpec, MackeyFunctor};
use mackey_core::zmod::{IntMatrix, PresentedAbGroup};

/// The C_2 functor with top Z⊕Z/2, bottom Z/2, r = [1 0], t = (0,1)ᵀ and trivial action.
pub const E_JSON: &str = r#"{"p":2,"n":1,"levels":[{"relations":[[2]]},{"relations":[[0],[2]]}],"act":[[[1]],[[1,0],[0,1]]],"res":[[[1,0]]],"tr":[[[0],[1]]]}"#;

pub fn e() -> MackeyFunctor {
    from_json(E_JSON).unwrap()
}

pub fn spec(p: u64, n: usize) -> CyclicGroupSpec {
    CyclicGroupSpec::new(p, n).unwrap()
}

/// A C_2 functor with both levels Z/2 and trivial action.
pub fn c2_z2(res: i64, tr: i64) -> MackeyFunctor {
    let z2 = PresentedAbGroup::cyclic(2);
    MackeyFunctor::new(
        spec(2, 1),
        vec![z2.clone(), z2],
        vec![IntMatrix::identity(1), IntMatrix::identity(1)],
        vec![IntMatrix::scalar(1, res)],
        vec![IntMatrix::scalar(1, tr)],
    )
    .unwrap()
}

pub fn orders(m: &MackeyFunctor) -> Vec<String> {
    m.level_strings()
}
