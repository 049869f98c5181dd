use std::cmp::Ordering;

use super::*;
use num_traits::ToPrimitive;

use crate::catalogue::{Ambient, Fiber, ProductSetExpr};
use crate::generic::GenericConfig;
use crate::qset::{parse_expr, QSetExpr};
use crate::rational::{int, rat, Rational, RationalEnumeration};
use crate::verdict::Obstruction;

fn amb(id: &str) -> Ambient {
    Ambient::new(id.parse().unwrap(), GenericConfig::default()).unwrap()
}

fn chain(id: &str, desc: &str) -> LazyChain {
    LazyChain::assemble(amb(id), desc.parse().unwrap()).unwrap()
}

fn cut(text: &str) -> Cut {
    parse_cut(text).unwrap()
}

/// Membership in the element at `(x, j)` from the definition, point by point.
fn oracle_member(ch: &LazyChain, x: &Cut, j: usize, q: &Rational) -> bool {
    if *x == Cut::NegInf {
        return false;
    }
    let in_j = ch.space().class_of(q) == 0;
    if in_j && x.above(q) {
        return true;
    }
    for (y, _) in ch.built().lumps() {
        let pts = ch.picks(y).unwrap();
        if y < x && pts.contains(q) {
            return true;
        }
        if y == x && pts[..j].contains(q) {
            return true;
        }
    }
    false
}

#[test]
fn desc_parses_and_validates() {
    let d: LinOrderDesc = "inf:2, 0:3".parse().unwrap();
    assert_eq!(d.to_string(), "0:3,inf:2");
    assert_eq!(d.size_at(&Cut::int(0)), 3);
    assert_eq!(d.size_at(&Cut::int(1)), 1);
    assert!(d.infinity_in_m());
    assert!("".parse::<LinOrderDesc>().unwrap().lumps().is_empty());
    assert!("0:1".parse::<LinOrderDesc>().is_err());
    assert!("-inf:2".parse::<LinOrderDesc>().is_err());
    assert!("0:2,0:3".parse::<LinOrderDesc>().is_err());
    let s: LinOrderDesc = "(sqrt2-plus -1):2".parse().unwrap();
    assert_eq!(s.lumps()[0].0, Cut::sqrt2_plus(int(-1)));
    assert_eq!(s.plus_one().unwrap().to_string(), "(sqrt2-plus -1):2,inf:2");
}

#[test]
fn chain_interval_has_unit_gaps() {
    let space = QSpace::new(8).unwrap();
    let mut en = RationalEnumeration::new();
    for n in 0..=6usize {
        let a = QSetExpr::interval(Cut::NegInf, Cut::int(-10));
        let pts: Vec<Rational> = (0..n).map(|t| en.get(t).clone()).collect();
        let b = a.clone().or(QSetExpr::finite(pts.clone()));
        let added: Vec<Element> = pts.into_iter().map(Element::Rat).collect();
        let c = chain_interval(&space, &SetExpr::Rat(a), &SetExpr::Rat(b), &added).unwrap();
        assert_eq!(c.len(), n + 1);
        // every cut leaves exactly one point between the lower union and upper intersection
        for g in cut_gap_sizes(&space, &c).unwrap() {
            assert_eq!(g, Some(1));
        }
    }
    let a = SetExpr::Rat(QSetExpr::finite([int(1)]));
    let b = SetExpr::Rat(QSetExpr::finite([int(1), int(2)]));
    assert!(chain_interval(&space, &a, &b, &[Element::Rat(int(1))]).is_err());
    assert!(chain_interval(&space, &a, &b, &[]).is_err());
}

#[test]
fn d_chain_elements_match_definition() {
    let ch = chain("D", "0:3,inf:2");
    assert_eq!(ch.case(), Case::I);
    assert_eq!(ch.picks(&Cut::int(0)).unwrap().len(), 2);
    for p in ch.picks(&Cut::int(0)).unwrap() {
        assert!(*p < int(0));
        assert_ne!(ch.space().class_of(p), 0);
    }
    let idx = ch.sample_indices(24);
    let probes = RationalEnumeration::new().take(120);
    for i in &idx {
        let e = ch.canon(&ch.element(i).unwrap()).unwrap();
        for q in &probes {
            assert_eq!(e.contains(&Element::Rat(q.clone())), oracle_member(&ch, &i.x, i.j, q), "{i} at {q}");
        }
    }
    for w in idx.windows(2) {
        assert_eq!(ch.compare(&w[0], &w[1]).unwrap(), Some(Ordering::Less), "{} {}", w[0], w[1]);
    }
}

#[test]
fn lumps_precede_each_other() {
    let ch = chain("D", "0:3,1:2,inf:2");
    let xs = [Cut::int(-1), Cut::int(0), Cut::sqrt2_plus(int(-1)), Cut::int(1), Cut::PosInf];
    for w in xs.windows(2) {
        for a in ch.lump(&w[0]) {
            for b in ch.lump(&w[1]) {
                assert_eq!(ch.compare(&a, &b).unwrap(), Some(Ordering::Less));
            }
        }
    }
}

/// The four closed forms for `x0 = max 𝒜'`, built from chain elements.
fn table_form(ch: &LazyChain, x0: &Cut, row: u8) -> SetExpr {
    let a = ch.base_element(&ChainIndex::at(x0.clone())).unwrap();
    let top = ch.base_element(&ChainIndex::new(x0.clone(), ch.lump_size(x0) - 1)).unwrap();
    let point = |s: SetExpr| match (s, x0.as_rational()) {
        (SetExpr::Rat(e), Some(q)) => SetExpr::Rat(e.or(QSetExpr::point(q.clone()))),
        (SetExpr::Product(p), Some(q)) => {
            SetExpr::Product(p.with(QSetExpr::point(q.clone()), Fiber::OmegaPlus))
        }
        (s, None) => s,
        _ => unreachable!(),
    };
    match row {
        1 => a,
        2 => point(a),
        3 => top,
        4 => point(top),
        _ => unreachable!(),
    }
}

fn check_rows(id: &str, desc: &str, cases: &[(&str, u8)]) {
    let ch = chain(id, desc);
    for (x, row) in cases {
        let x0 = cut(x);
        let r = cut_analysis(&ch, &x0, CutSide::MaxA).unwrap();
        assert_eq!(r.row, CaseRow::MaxA(*row), "row at {x}");
        let want = ch.canon(&table_form(&ch, &x0, *row)).unwrap();
        assert_eq!(ch.canon(&r.inter_b).unwrap(), want, "upper intersection at {x}");
        // the intersection over x > x0 sits inside every A_x just above x0
        let ib = ch.canon(&r.inter_b).unwrap();
        for n in [1, 10, 1000] {
            let step = rat(1, n);
            let above = match &x0 {
                Cut::At(s) => Cut::At(s.add_rational(&step)),
                _ => unreachable!(),
            };
            let ax = ch.canon(&ch.element(&ChainIndex::at(above)).unwrap()).unwrap();
            assert!(ib.subset(&ax).unwrap());
        }
        match row {
            1 | 3 => assert_eq!(r.verdict, CutVerdict::Equal, "{x}"),
            _ => {
                let q = x0.as_rational().unwrap().clone();
                let expect = if id == "C_omega" {
                    Obstruction::MaxSupport { q }
                } else {
                    Obstruction::Maximum { q }
                };
                assert_eq!(r.verdict, CutVerdict::SingletonGapNonCopy { witness: expect }, "{x}");
            }
        }
    }
}

#[test]
fn d_cut_rows() {
    check_rows(
        "D",
        "0:2,(sqrt2-plus -1):3,inf:2",
        &[("(sqrt2-plus 0)", 1), ("8", 2), ("1/2", 1), ("(sqrt2-plus -1)", 3), ("0", 4)],
    );
}

#[test]
fn c_omega_cut_rows() {
    check_rows(
        "C_omega",
        "0:2,(sqrt2-plus -1):3,inf:2",
        &[("(sqrt2-plus 0)", 1), ("8", 2), ("1/2", 2), ("(sqrt2-plus -1)", 3), ("0", 4)],
    );
}

#[test]
fn min_b_and_lump_cuts() {
    let ch = chain("D", "0:3,inf:2");
    for x in ["0", "1/3", "(sqrt2-plus 0)", "inf"] {
        let r = cut_analysis(&ch, &cut(x), CutSide::MinB).unwrap();
        assert_eq!(r.verdict, CutVerdict::Equal, "{x}");
    }
    for j in 0..2 {
        let r = cut_analysis(&ch, &Cut::int(0), CutSide::Lump(j)).unwrap();
        assert_eq!(r.verdict, CutVerdict::LumpCut { gap: 1 });
    }
    assert!(cut_analysis(&ch, &Cut::int(0), CutSide::Lump(2)).is_err());
    assert!(cut_analysis(&ch, &Cut::PosInf, CutSide::MaxA).is_err());
    assert!(cut_analysis(&ch, &Cut::NegInf, CutSide::MinB).is_err());
    let r = cut_analysis(&ch, &Cut::NegInf, CutSide::MaxA).unwrap();
    assert_eq!(r.verdict, CutVerdict::Equal);
}

#[test]
fn case_two_drops_the_top() {
    let ch = chain("D", "0:2");
    assert_eq!(ch.case(), Case::II);
    assert_eq!(ch.lump_size(&Cut::PosInf), 1);
    assert_eq!(ch.top_index(), ChainIndex::at(Cut::PosInf));
    assert!(!ch.contains_index(&ChainIndex::new(Cut::PosInf, 1)));
    // the top is J together with every I_y
    let top = ch.canon(&ch.element(&ch.top_index()).unwrap()).unwrap();
    let mut e = QSetExpr::class(0);
    for (y, _) in ch.desc().lumps() {
        e = e.or(QSetExpr::finite(ch.picks(y).unwrap().to_vec()));
    }
    assert_eq!(top, Canon::Line(ch.space().canonicalize(&e).unwrap()));
    assert!(LazyChain::assemble_case1(amb("D"), "0:2".parse().unwrap()).is_err());
    assert!(LazyChain::assemble_case2(amb("D"), "inf:2".parse().unwrap()).is_err());
}

#[test]
fn transport_keeps_verdicts() {
    let q = chain("Q", "0:2,inf:3");
    let moved = [q.lift_bn(3).unwrap(), q.transport_cn(2).unwrap(), q.chain_b_omega().unwrap()];
    for (x, side) in [
        ("8", CutSide::MaxA),
        ("1/2", CutSide::MaxA),
        ("0", CutSide::MaxA),
        ("(sqrt2-plus 0)", CutSide::MinB),
        ("inf", CutSide::Lump(1)),
    ] {
        let base = cut_analysis(&q, &cut(x), side).unwrap();
        for m in &moved {
            let r = cut_analysis(m, &cut(x), side).unwrap();
            assert_eq!(r.verdict.label(), base.verdict.label(), "{} at {x}", m.structure());
        }
    }
    let b = &moved[0];
    let el = b.element(&ChainIndex::at(Cut::int(1))).unwrap();
    let SetExpr::Product(p) = el else { panic!() };
    let rf = p.normalize(b.space()).unwrap();
    assert_eq!(rf.row(1), &crate::qset::CanonicalSet::full(*b.space()));
    assert!(q.lift_bn(2).unwrap().lift_bn(2).is_err());
}

#[test]
fn b_omega_elements_are_copies() {
    let b = chain("Q", "inf:2").chain_b_omega().unwrap();
    for i in b.sample_indices(12).into_iter().skip(1) {
        let v = crate::catalogue::is_copy(b.ambient(), &b.element(&i).unwrap()).unwrap();
        assert!(v.is_copy(), "{i}: {v}");
    }
}

#[test]
fn probes_find_no_insertion() {
    let ch = chain("D", "0:3,inf:2");
    let samples = ch.sample_indices(20);
    let top = ch.element(&ch.top_index()).unwrap();
    let SetExpr::Rat(top) = top else { panic!() };
    let cands = [
        "(inter (class 0) (interval -inf 1/2))",
        "(union (inter (class 0) (interval -inf 8)) (fin 8))",
        "(diff (inter (class 0) (interval -inf 3)) (fin -8))",
        "(inter (class 0) (union (interval -inf 0) (interval 1 2)))",
        "(fin 8 16)",
        "full",
    ];
    for c in cands {
        let c = SetExpr::Rat(parse_expr(c).unwrap().and(top.clone()));
        let out = maximality_probe(&ch, &c, &samples).unwrap();
        assert!(out.upholds_maximality(), "{c}: {out:?}");
    }
    let lump1 = ch.element(&ChainIndex::new(Cut::int(0), 1)).unwrap();
    assert_eq!(
        maximality_probe(&ch, &lump1, &[]).unwrap(),
        ProbeOutcome::InChain {
            index: ChainIndex::new(Cut::int(0), 1)
        }
    );
    let outside = SetExpr::Rat(QSetExpr::class(3));
    assert!(maximality_probe(&ch, &outside, &samples).is_err());
}

#[test]
fn union_of_chain_is_copy_in_d() {
    let ch = chain("D", "0:2,inf:2");
    let idx = ch.sample_indices(16);
    assert!(union_of_chain_is_copy(&ch, &idx).unwrap().is_copy());
}

#[test]
fn embedding_orders_values() {
    let ch = chain("D", "0:3,inf:2");
    let idx = ch.sample_indices(10);
    let elems: Vec<SetExpr> = idx.iter().map(|i| ch.element(i).unwrap()).collect();
    let top = ch.element(&ch.top_index()).unwrap();
    let pts = enumerate_points(ch.space(), &top, 400).unwrap();
    assert_eq!(pts.len(), 400);
    let e = r_embedding(ch.space(), &elems, &pts, 400).unwrap();
    assert!(e.separated, "{:?}", e.first_tie);
    // independent recomputation with floats on the leading terms
    for (v, x) in e.values.iter().zip(&elems) {
        let c = ch.canon(x).unwrap();
        let f: f64 = pts[..50]
            .iter()
            .enumerate()
            .filter(|(_, p)| c.contains(p))
            .map(|(n, _)| 0.5f64.powi(n as i32))
            .sum();
        let approx = v.to_f64().unwrap();
        assert!((approx - f).abs() < 1e-12, "{approx} vs {f}");
    }
    let few = r_embedding(ch.space(), &elems, &pts, 2).unwrap();
    assert!(!few.separated);
    let rev: Vec<SetExpr> = elems.iter().rev().cloned().collect();
    assert!(r_embedding(ch.space(), &rev, &pts, 8).is_err());
}

#[test]
fn product_points_enumerate() {
    let space = QSpace::new(8).unwrap();
    let x = SetExpr::Product(ProductSetExpr::times(QSetExpr::interval(Cut::int(0), Cut::int(1)), 2));
    let pts = enumerate_points(&space, &x, 10).unwrap();
    assert_eq!(pts.len(), 10);
    for p in &pts {
        let Element::Pair { q, i } = p else { panic!() };
        assert!(*q > int(0) && *q < int(1) && *i < 2);
    }
    let csv = cut_csv(&[cut_analysis(&chain("D", "inf:2"), &Cut::int(8), CutSide::MaxA).unwrap()]).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "x0,row,verdict,gap,witness");
    assert!(csv.contains("8,maxA.2,singleton-gap-non-copy,1,"));
}

#[test]
fn random_probes_uphold_maximality() {
    use crate::sample::Sampler;
    for (id, desc) in [("D", "0:3,inf:2"), ("C_omega", "0:2,inf:2"), ("Q", "1/2:2")] {
        let ch = chain(id, desc);
        let mut s = Sampler::new(11, *ch.space());
        let samples = ch.sample_indices(24);
        for c in probe_candidates(&ch, &mut s, 60).unwrap() {
            let out = maximality_probe(&ch, &c, &samples).unwrap();
            assert!(out.upholds_maximality(), "{id}: {c}: {out:?}");
        }
    }
}

#[test]
fn reindex_is_increasing() {
    let mut pts: Vec<Cut> = RationalEnumeration::new()
        .take(60)
        .into_iter()
        .filter(|q| *q > int(0))
        .map(Cut::rational)
        .collect();
    pts.push(Cut::sqrt2_plus(int(0)));
    pts.push(Cut::quad(int(0), rat(1, 3)));
    pts.sort();
    let img: Vec<Cut> = pts.iter().map(|t| reindex_positive(t).unwrap()).collect();
    for w in img.windows(2) {
        assert!(w[0] < w[1]);
    }
    // √2 − 1/√2 = √2/2
    assert_eq!(reindex_positive(&Cut::sqrt2_plus(int(0))).unwrap(), Cut::quad(int(0), rat(1, 2)));
    assert_eq!(reindex_positive(&Cut::int(1)).unwrap(), Cut::int(0));
    assert!(reindex_positive(&Cut::int(0)).is_err());
    assert!(reindex_positive(&Cut::NegInf).is_err());
}
