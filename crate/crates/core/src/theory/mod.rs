//! Endomorphic cellular automata: enumeration and counting, the
//! correspondence with `Hom(A^S, A)`, the group algebra `End(A)[G]`, and
//! elementary-rule classification.

mod classify;
mod family;
mod group_algebra;

pub use classify::{classify_eca, EcaPredicate};
pub use family::{
    count_endoca, enumerate_endoca, verify_direct_limit, verify_phi, EndoCaFamily, EndoCount,
    EndoCountMethod,
};
pub use group_algebra::{convolve, psi, psi_inverse, verify_group_algebra, GroupAlgebraElement};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Index tuples of length `arity` over `0..n`: all of them when `n^arity`
/// fits in `cap`, otherwise `samples` seeded random tuples.
pub(crate) fn tuples(n: usize, arity: usize, cap: usize, samples: usize, seed: u64) -> (Vec<Vec<usize>>, bool) {
    let total = crate::limits::power_size(n, arity);
    if total <= cap as u128 {
        let mut out = Vec::with_capacity(total as usize);
        let mut t = vec![0; arity];
        if total > 0 {
            loop {
                out.push(t.clone());
                if !crate::tuple::next_tuple(&mut t, n) {
                    break;
                }
            }
        }
        (out, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let out = (0..samples)
            .map(|_| (0..arity).map(|_| rng.random_range(0..n)).collect())
            .collect();
        (out, false)
    }
}
