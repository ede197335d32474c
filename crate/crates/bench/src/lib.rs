//! Inputs shared by the benchmarks in `benches/`.

use mackey_core::mackey::{from_json, MackeyFunctor};
use mackey_core::zmod::IntMatrix;
use num_bigint::BigInt;

/// The C_2 functor with top Z⊕Z/2, bottom Z/2, r = [1 0] and t = (0,1)ᵀ.
pub fn example_e() -> MackeyFunctor {
    from_json(
        r#"{"p":2,"n":1,"levels":[{"relations":[[2]]},{"relations":[[0],[2]]}],"act":[[[1]],[[1,0],[0,1]]],"res":[[[1,0]]],"tr":[[[0],[1]]]}"#,
    )
    .expect("fixture parses")
}

/// A dense `n x n` matrix with entries in [-50, 50], fixed by `seed`.
pub fn dense_matrix(n: usize, seed: u64) -> IntMatrix {
    // a small LCG keeps the inputs identical across runs without pulling in an RNG
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let entries = (0..n * n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            BigInt::from((state >> 33) as i64 % 101 - 50)
        })
        .collect();
    IntMatrix::from_vec(n, n, entries).expect("square shape")
}
