use nugrass::poly::{q, Q};
use nugrass::superalgebra::{Exterior, GrassmannNumber, Parity, Sampler, SuperContext, SuperFunction};
use proptest::prelude::*;

fn grassmann(parity: Option<Parity>) -> impl Strategy<Value = GrassmannNumber> {
    (1usize..=4).prop_flat_map(move |r| {
        prop::collection::vec(-4i64..=4, 1 << r).prop_map(move |cs| {
            let terms = cs
                .into_iter()
                .enumerate()
                .map(|(m, c)| (m as u32, q(c)))
                .filter(|(m, _)| parity.is_none_or(|p| Parity::of_degree(m.count_ones()) == p));
            GrassmannNumber::from_exterior(r, Exterior::from_terms(terms)).unwrap()
        })
    })
}

fn invertible() -> impl Strategy<Value = GrassmannNumber> {
    (grassmann(None), prop_oneof![-5i64..=-1, 1i64..=5]).prop_map(|(a, b)| {
        let body = a.body();
        a.checked_add(&GrassmannNumber::scalar(a.r(), q(b) - body)).unwrap()
    })
}

fn homogeneous_pair() -> impl Strategy<Value = (GrassmannNumber, GrassmannNumber)> {
    (1usize..=4, any::<bool>(), any::<bool>(), any::<u64>()).prop_map(|(r, pa, pb, seed)| {
        let mut s = Sampler::new(seed);
        let par = |b| if b { Parity::Odd } else { Parity::Even };
        (s.grassmann(r, par(pa), false), s.grassmann(r, par(pb), false))
    })
}

fn same_r(a: &GrassmannNumber, b: &GrassmannNumber) -> GrassmannNumber {
    let terms = b.terms().map(|(m, c)| (m & ((1 << a.r()) - 1), c.clone()));
    GrassmannNumber::from_exterior(a.r(), Exterior::from_terms(terms)).unwrap()
}

fn sign(a: Parity, b: Parity) -> Q {
    if Parity::koszul(a, b) {
        q(-1)
    } else {
        q(1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn inverse_is_two_sided(a in invertible()) {
        let inv = a.inv().unwrap();
        prop_assert_eq!(a.checked_mul(&inv).unwrap(), GrassmannNumber::one(a.r()));
        prop_assert_eq!(inv.checked_mul(&a).unwrap(), GrassmannNumber::one(a.r()));
    }

    #[test]
    fn nu_is_an_involution(a in grassmann(None)) {
        prop_assert_eq!(a.nu().unwrap().nu().unwrap(), a);
    }

    #[test]
    fn nu_flips_parity(a in grassmann(Some(Parity::Even)), b in grassmann(Some(Parity::Odd))) {
        prop_assert!(a.nu().unwrap().is_of_parity(Parity::Odd));
        prop_assert!(b.nu().unwrap().is_of_parity(Parity::Even));
    }

    #[test]
    fn nu_is_coefficient_linear(a in grassmann(None), b in grassmann(None), c in -6i64..=6) {
        let b = same_r(&a, &b);
        let lhs = a.scale(&q(c)).checked_add(&b).unwrap().nu().unwrap();
        let rhs = a.nu().unwrap().scale(&q(c)).checked_add(&b.nu().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn supercommutative((a, b) in homogeneous_pair()) {
        let s = sign(a.parity().unwrap_or(Parity::Even), b.parity().unwrap_or(Parity::Even));
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap().scale(&s));
    }

    #[test]
    fn leibniz(seed in any::<u64>(), pf in any::<bool>(), var in 0usize..4) {
        let ctx = SuperContext::new(["x", "y"], ["e1", "e2"]).unwrap();
        let mut s = Sampler::new(seed);
        let pf = if pf { Parity::Odd } else { Parity::Even };
        let f = s.super_function(&ctx, pf, false);
        let g = s.super_function(&ctx, Parity::Even, false).checked_add(&s.super_function(&ctx, Parity::Odd, false)).unwrap();
        let v = ["x", "y", "e1", "e2"][var];
        let twist = if var >= 2 && pf.is_odd() { q(-1) } else { q(1) };
        let lhs = f.checked_mul(&g).unwrap().partial(v).unwrap();
        let rhs = f.partial(v).unwrap().checked_mul(&g).unwrap()
            .checked_add(&f.checked_mul(&g.partial(v).unwrap()).unwrap().scale_q(&twist)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn function_inverse(seed in any::<u64>()) {
        let ctx = SuperContext::new(["x"], ["e1", "e2"]).unwrap();
        let f = Sampler::new(seed).super_function(&ctx, Parity::Even, true);
        prop_assert_eq!(f.checked_mul(&f.inv().unwrap()).unwrap(), SuperFunction::one(&ctx));
    }
}
