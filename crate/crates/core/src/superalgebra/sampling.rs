use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Exterior, GrassmannNumber, Parity, SuperContext, SuperFunction};
use crate::poly::{q, Monomial, Poly, RationalFunction, Var, Q};

/// Deterministic source of random test data.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

/// SplitMix64 finaliser, used to derive independent sub-seeds.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn child(seed: u64, salt: u64) -> Self {
        Self::new(mix_seed(seed, salt))
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn nonzero_int(&mut self, bound: i64) -> i64 {
        let v = self.int(1, bound);
        if self.rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Integer coefficients in `[-3, 3]` on every monomial of the given
    /// parity; a nonzero body when `invertible` is set.
    pub fn grassmann(&mut self, r: usize, parity: Parity, invertible: bool) -> GrassmannNumber {
        let terms: Vec<(u32, Q)> = (0..1u32 << r)
            .filter(|m| Parity::of_degree(m.count_ones()) == parity)
            .map(|m| {
                let c = if m == 0 && invertible {
                    self.nonzero_int(3)
                } else {
                    self.int(-3, 3)
                };
                (m, q(c))
            })
            .collect();
        GrassmannNumber::from_exterior(r, Exterior::from_terms(terms)).expect("mask within range")
    }

    /// Small polynomial in the given variables: a constant plus up to two
    /// monomials of degree at most two.
    pub fn poly(&mut self, vars: &[String]) -> Poly {
        let mut p = Poly::constant(q(self.int(-3, 3)));
        if vars.is_empty() {
            return p;
        }
        for _ in 0..self.int(0, 2) {
            let v: Var = Arc::from(vars[self.index(vars.len())].as_str());
            let deg = self.int(1, 2) as u32;
            let mono = Monomial::from_factors(vec![(v, deg)]);
            p = p.add(&Poly::from_terms([(mono, q(self.nonzero_int(3)))]));
        }
        p
    }

    /// Random coefficient function, occasionally with a linear denominator.
    pub fn rational(&mut self, vars: &[String], nonzero: bool) -> RationalFunction {
        loop {
            let num = self.poly(vars);
            let den = if !vars.is_empty() && self.coin(0.25) {
                let v = &vars[self.index(vars.len())];
                Poly::var(v).add(&Poly::constant(q(self.nonzero_int(3))))
            } else {
                Poly::one()
            };
            let f = RationalFunction::new(num, den).expect("nonzero denominator");
            if !nonzero || !f.is_zero() {
                return f;
            }
        }
    }

    /// Homogeneous random element; each soul monomial appears with
    /// probability one half.
    pub fn super_function(
        &mut self,
        ctx: &Arc<SuperContext>,
        parity: Parity,
        invertible: bool,
    ) -> SuperFunction {
        let vars = ctx.even_names().to_vec();
        let beta = ctx.odd_names().len();
        let mut terms = Vec::new();
        for m in 0..1u32 << beta {
            if Parity::of_degree(m.count_ones()) != parity {
                continue;
            }
            if m == 0 {
                terms.push((m, self.rational(&vars, invertible)));
            } else if self.coin(0.5) {
                terms.push((m, self.rational(&vars, false)));
            }
        }
        SuperFunction::from_exterior(ctx, Exterior::from_terms(terms))
    }
}

/// Seeded random element of `Λ_r` of the given parity; even samples have a
/// nonzero body.
pub fn lambda_sample(r: usize, parity: Parity, seed: u64) -> GrassmannNumber {
    Sampler::new(seed).grassmann(r, parity, parity == Parity::Even)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_homogeneous() {
        let a = lambda_sample(3, Parity::Odd, 7);
        assert_eq!(a, lambda_sample(3, Parity::Odd, 7));
        assert!(a.is_of_parity(Parity::Odd));
        let b = lambda_sample(3, Parity::Even, 7);
        assert!(b.is_of_parity(Parity::Even));
        assert_ne!(b.body(), q(0));
    }
}
