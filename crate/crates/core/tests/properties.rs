use proptest::prelude::*;

use copychains::catalogue::{parse_product, Fiber};
use copychains::order::{FinPoset, Triple};
use copychains::qset::{parse_expr, QSpace};
use copychains::rational::{rat, Rational};
use copychains::sample::Sampler;

/// Every `a/b` with `|a| ≤ 24`, `1 ≤ b ≤ 6`: all endpoints the sampler can
/// produce, and the points between them.
fn grid() -> Vec<Rational> {
    let mut v: Vec<Rational> = (-24..=24)
        .flat_map(|a| (1..=6).map(move |b| rat(a, b)))
        .collect();
    v.sort();
    v.dedup();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_keeps_membership(seed in any::<u64>(), k in 1u32..9) {
        let space = QSpace::new(k).unwrap();
        let mut s = Sampler::new(seed, space);
        let e = s.expr(5);
        let c = space.canonicalize(&e).unwrap();
        for q in grid() {
            prop_assert_eq!(c.member(&q), space.member(&q, &e).unwrap(), "{} at {}", e, q);
        }
        // the canonical set read back as an expression is the same set
        let back = space.canonicalize(&c.to_expr()).unwrap();
        prop_assert_eq!(&back, &c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expressions_print_and_parse_back(seed in any::<u64>()) {
        let space = QSpace::new(8).unwrap();
        let mut s = Sampler::new(seed, space);
        let e = s.expr(6);
        prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e.clone());
        let p = s.product(None, 3);
        let back = parse_product(&p.to_string()).unwrap();
        prop_assert_eq!(back.normalize(&space).unwrap(), p.normalize(&space).unwrap());
    }

    #[test]
    fn product_rows_match_components(seed in any::<u64>()) {
        let space = QSpace::new(8).unwrap();
        let mut s = Sampler::new(seed, space);
        let p = s.product(Some(4), 3);
        let rf = p.normalize(&space).unwrap();
        for q in grid().iter().step_by(7) {
            for i in 0..4 {
                let direct = p.components.iter().any(|(e, f): &(_, Fiber)| {
                    f.contains(i) && space.member(q, e).unwrap()
                });
                prop_assert_eq!(rf.member(q, i), direct);
            }
        }
    }

    #[test]
    fn posets_survive_json(seed in any::<u64>(), n in 0usize..9, d in 0.0f64..1.0) {
        let mut s = Sampler::new(seed, QSpace::new(2).unwrap());
        let p = s.poset(n, d);
        prop_assert_eq!(FinPoset::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn triples_are_disjoint(seed in any::<u64>(), n in 0usize..9) {
        let mut s = Sampler::new(seed, QSpace::new(2).unwrap());
        let pts: Vec<usize> = (0..n).collect();
        let t: Triple<usize> = s.triple(&pts, 4);
        prop_assert!(t.is_disjoint());
        prop_assert!(t.size() <= 4);
    }
}
