use proptest::prelude::*;
use tropcurve::random;
use tropcurve::rat_fun::{chip_fire, div_of, extend, restrict, PlFunction, Value};
use tropcurve::rational::{q, Extended};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn semifield_laws(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let c = random::connected_curve(&mut r, 4);
        let (f, g, h) = (random::function(&mut r, &c), random::function(&mut r, &c), random::function(&mut r, &c));
        prop_assert_eq!(f.oplus(&f).unwrap(), f.clone());
        prop_assert_eq!(f.oplus(&g).unwrap(), g.oplus(&f).unwrap());
        prop_assert_eq!(f.oplus(&g).unwrap().oplus(&h).unwrap(), f.oplus(&g.oplus(&h).unwrap()).unwrap());
        prop_assert_eq!(f.otimes(&g.oplus(&h).unwrap()).unwrap(), f.otimes(&g).unwrap().oplus(&f.otimes(&h).unwrap()).unwrap());
        prop_assert_eq!(f.otimes(&f.inv().unwrap()).unwrap(), PlFunction::constant(c.clone(), q(0)));
        for _ in 0..4 {
            let p = random::finite_point(&mut r, &c);
            let (a, b) = (f.eval(&p).unwrap(), g.eval(&p).unwrap());
            prop_assert_eq!(f.oplus(&g).unwrap().eval(&p).unwrap(), a.clone().max(b.clone()));
            if let (Value::Finite(x), Value::Finite(y)) = (a, b) {
                prop_assert_eq!(f.otimes(&g).unwrap().eval(&p).unwrap(), Value::Finite(x + y));
            }
        }
    }

    #[test]
    fn divisors(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let c = random::connected_curve(&mut r, 4);
        let (f, g) = (random::function(&mut r, &c), random::function(&mut r, &c));
        let (df, dg) = (div_of(&f).unwrap(), div_of(&g).unwrap());
        prop_assert_eq!(df.degree(), 0);
        prop_assert_eq!(div_of(&f.otimes(&g).unwrap()).unwrap(), df.add(&dg).unwrap());
        prop_assert_eq!(div_of(&f.inv().unwrap()).unwrap(), df.neg());
    }

    #[test]
    fn chip_fire_shape(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let c = random::connected_curve(&mut r, 4);
        let g = random::subgraph(&mut r, &c);
        let l = Extended::Finite(q(2));
        let f = chip_fire(&g, &l).unwrap();
        for _ in 0..6 {
            let p = random::finite_point(&mut r, &c);
            let v = f.eval(&p).unwrap();
            prop_assert!(v >= Value::Finite(q(-2)) && v <= Value::Finite(q(0)));
            prop_assert_eq!(v == Value::Finite(q(0)), g.contains(&p).unwrap());
            for s in f.slopes_at(&p).unwrap() {
                prop_assert!((-1..=1).contains(&s));
            }
        }
    }

    #[test]
    fn restrict_after_extend(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let c = random::connected_curve(&mut r, 4);
        let g = random::subgraph(&mut r, &c);
        let f = random::function(&mut r, &c);
        let parts = restrict(&f, &g).unwrap();
        let e = match extend(&parts, &g, -1) {
            Ok(e) => e,
            Err(tropcurve::Error::SlopeTooShallow { min_abs, .. }) => extend(&parts, &g, -min_abs).unwrap(),
            Err(tropcurve::Error::ParallelViolation { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        prop_assert_eq!(restrict(&e, &g).unwrap(), parts);
    }
}
