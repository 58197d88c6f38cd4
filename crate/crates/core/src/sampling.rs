//! Reproducible random sampling of rational parameter and spectral points.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::exact::{rpow, ParamPoint, Rational};

/// Seeded generator used by every sampler and by the simulator.
pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Nonzero rational with numerator and denominator bounded by `bound`,
/// excluding `±1`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-bound..=bound);
        let den: i64 = rng.gen_range(1..=bound);
        let x = Rational::new(BigInt::from(num), BigInt::from(den));
        if !x.is_zero() && x.numer() != x.denom() && -x.numer() != *x.denom() {
            return x;
        }
    }
}

/// Rational strictly inside `(lo, hi)` with denominator at most `bound`.
pub fn random_in<R: Rng>(rng: &mut R, lo: f64, hi: f64, bound: i64) -> Rational {
    loop {
        let den: i64 = rng.gen_range(2..=bound);
        let lo_n = (lo * den as f64).ceil() as i64;
        let hi_n = (hi * den as f64).floor() as i64;
        if lo_n > hi_n {
            continue;
        }
        let num = rng.gen_range(lo_n..=hi_n);
        let x = Rational::new(BigInt::from(num), BigInt::from(den));
        let v = num as f64 / den as f64;
        if v > lo && v < hi && !x.is_zero() {
            return x;
        }
    }
}

/// `abcd t^j ≠ 1` for `j ∈ 0..=window`, and the same for the parameter
/// points shifted by one power of `t` in any one or two boundary slots.
pub fn resonance_free(p: &ParamPoint, window: usize) -> bool {
    let abcd = p.a() * p.b() * p.c() * p.d();
    let one = Rational::one();
    (0..=window as i64 + 2).all(|j| &abcd * rpow(p.t(), j) != one)
        && [p.a() * p.b(), p.c() * p.d()]
            .iter()
            .all(|x| (0..=2).all(|j| x * rpow(p.t(), j) != one))
        && [p.a(), p.b(), p.c(), p.d()]
            .iter()
            .all(|x| (0..=2).all(|j| *x * rpow(p.t(), j) != one))
}

/// Generic point: every parameter an arbitrary bounded rational.
pub fn random_generic_params<R: Rng>(rng: &mut R, bound: i64, window: usize) -> ParamPoint {
    loop {
        let s = random_rational(rng, bound);
        let v: Vec<Rational> = (0..4).map(|_| random_rational(rng, bound)).collect();
        if let Ok(p) = ParamPoint::new(s, v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()) {
            if resonance_free(&p, window) {
                return p;
            }
        }
    }
}

/// Physical point: `0 < s < 1`, `a, c < 0`, `0 < b, d < 1`.
pub fn random_physical_params<R: Rng>(rng: &mut R, bound: i64, window: usize) -> ParamPoint {
    loop {
        let s = random_in(rng, 0.0, 1.0, bound);
        let a = random_in(rng, -4.0, 0.0, bound);
        let b = random_in(rng, 0.0, 1.0, bound);
        let c = random_in(rng, -4.0, 0.0, bound);
        let d = random_in(rng, 0.0, 1.0, bound);
        if let Ok(p) = ParamPoint::new(s, a, b, c, d) {
            if p.is_physical() && resonance_free(&p, window) {
                return p;
            }
        }
    }
}

/// Spectral point `z ∈ (Q^×)^n` with bounded entries.
pub fn random_spectral_point<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng, bound)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn physical_points_are_physical() {
        let mut r = rng(3);
        for _ in 0..10 {
            assert!(random_physical_params(&mut r, 1000, 12).is_physical());
        }
    }

    #[test]
    fn seeded_is_reproducible() {
        let a = random_generic_params(&mut rng(9), 1000, 8);
        let b = random_generic_params(&mut rng(9), 1000, 8);
        assert_eq!(a, b);
    }
}
