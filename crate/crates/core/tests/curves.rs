use proptest::prelude::*;
use tropcurve::curve::{canonical_model, PointRef};
use tropcurve::io;
use tropcurve::random;
use tropcurve::rat_fun::div_of;
use tropcurve::rational::{q, Extended};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn distance_is_a_metric(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let c = random::connected_curve(&mut r, 5);
        let pts: Vec<PointRef> = (0..4).map(|_| random::finite_point(&mut r, &c)).collect();
        let d = |a: &PointRef, b: &PointRef| c.distance(a, b).unwrap().value;
        for a in &pts {
            prop_assert_eq!(d(a, a), Extended::Finite(q(0)));
            for b in &pts {
                prop_assert_eq!(d(a, b), d(b, a));
                let same = c.normalize(a).unwrap() == c.normalize(b).unwrap();
                prop_assert_eq!(d(a, b) == Extended::Finite(q(0)), same);
                for m in &pts {
                    let (Extended::Finite(x), Extended::Finite(y), Extended::Finite(z)) = (d(a, b), d(a, m), d(m, b)) else {
                        panic!("finite points on a connected curve")
                    };
                    prop_assert!(x <= y + z);
                }
            }
        }
    }

    #[test]
    fn canonical_model_is_idempotent_and_isometric(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let c = random::connected_curve(&mut r, 5);
        let k = canonical_model(&c).unwrap();
        prop_assert_eq!(canonical_model(&k).unwrap(), k.clone());
        let kept: Vec<(usize, usize)> = (0..k.vertices().len())
            .filter(|&v| !k.vertex(v).at_infinity)
            .map(|v| (v, c.vertex_id(&k.vertex(v).id).unwrap()))
            .collect();
        for &(a, a0) in &kept {
            for &(b, b0) in &kept {
                prop_assert_eq!(
                    k.distance(&PointRef::Vertex(a), &PointRef::Vertex(b)).unwrap().value,
                    c.distance(&PointRef::Vertex(a0), &PointRef::Vertex(b0)).unwrap().value
                );
            }
        }
    }

    #[test]
    fn file_formats_round_trip(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let c = random::connected_curve(&mut r, 4);
        prop_assert_eq!(&io::parse_curve(&io::curve_to_json(&c)).unwrap(), &*c);
        let f = random::function(&mut r, &c);
        prop_assert_eq!(io::parse_function(&io::function_to_json(&f), &c).unwrap(), f.clone());
        let d = div_of(&f).unwrap();
        prop_assert_eq!(io::parse_divisor(&io::divisor_to_json(&d), &c).unwrap(), d);
        let g = random::subgraph(&mut r, &c);
        prop_assert_eq!(io::parse_subgraph(&io::subgraph_to_json(&g), &c).unwrap(), g);
    }
}
