//! Shared fixtures for the benchmarks.

use torfold::{build_gamma_infinity, LaurentPoly, OrbitSeed, VarKey};

/// `(x0 + x1 + ... + x{k-1} + 1)^e`, a dense polynomial for arithmetic benches.
pub fn dense_poly(k: i64, e: u64) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for site in 0..k {
        p = &p + &LaurentPoly::var(VarKey::mutable(site));
    }
    p.pow(e)
}

/// The initial orbit seed of the alternating quiver with period `2n`.
pub fn gamma_seed(n: usize) -> OrbitSeed {
    OrbitSeed::initial(build_gamma_infinity(n).expect("n is positive"))
}

/// A fixed sequence of mutable orbits.
pub fn zigzag(n: usize, len: usize) -> Vec<usize> {
    (0..len).map(|i| (i * 3 + i / (2 * n)) % (2 * n)).collect()
}
