use super::*;
use crate::clopen::{parse_clopen, HomeoClass};
use crate::sigcalc;

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn cl(r: u64, d: u64) -> HomeoClass {
    HomeoClass::new(r, d)
}

#[test]
fn block_system_geometry() {
    let sys = BlockSystem::new(1);
    assert_eq!(sys.delta(), o("w^2"));
    assert_eq!(sys.block(1), (o("0"), o("w")));
    assert_eq!(sys.block(3), (o("w*2"), o("w*3")));
    assert_eq!(sys.top_point(4), o("w*4"));
    assert_eq!(sys.block_of(&o("w*2")).unwrap(), Some(2));
    assert_eq!(sys.block_of(&o("w*2+1")).unwrap(), Some(3));
    assert_eq!(sys.block_of(&o("w^2")).unwrap(), None);
    assert!(sys.block_of(&o("0")).is_err());
    assert_eq!(sys.top_index_of(&o("w*7")), Some(7));
    assert_eq!(sys.top_index_of(&o("w*7+1")), None);
}

#[test]
fn phi_examples() {
    let sys = BlockSystem::new(1);
    assert_eq!(sys.phi(3, &o("5")).unwrap(), o("w*2+5"));
    assert_eq!(sys.phi(3, &o("w")).unwrap(), o("w*3"));
    assert!(sys.phi(3, &o("0")).is_err());
    assert!(sys.phi(3, &o("w+1")).is_err());
    assert_eq!(sys.phi_inv(3, &o("w*2+5")).unwrap(), o("5"));
    assert_eq!(sys.phi_ij(3, 5, &o("w*2+5")).unwrap(), o("w*4+5"));
    let sys2 = BlockSystem::new(2);
    assert_eq!(sys2.phi(2, &o("w+4")).unwrap(), o("w^2+w+4"));
}

#[test]
fn lift_is_translation_blockwise() {
    let g = Homeo::lift(1, &Perm::transposition(1, 2));
    assert_eq!(g.eval(&o("3")).unwrap(), o("w+3"));
    assert_eq!(g.eval(&o("w")).unwrap(), o("w*2"));
    assert_eq!(g.eval(&o("w+3")).unwrap(), o("3"));
    assert_eq!(g.eval(&o("w*5+1")).unwrap(), o("w*5+1"));
    assert_eq!(g.eval(&o("w^2")).unwrap(), o("w^2"));
    assert_eq!(g.eval_inv(&o("w+3")).unwrap(), o("3"));
    assert_eq!(g.pi_of(1).unwrap(), 2);
    assert_eq!(g.pi_of(7).unwrap(), 7);
    // Lifts carry trivial signatures.
    let s = g.signature(1).unwrap();
    assert!(s.pair.is_zero_pair());
}

#[test]
fn lift_of_certified_identity_is_identity() {
    let g = Homeo::lift(1, &Perm::identity());
    assert!(g.is_blockwise_certified());
    assert_eq!(g.active_hint(), Some(BTreeSet::new()));
}

#[test]
fn global_chart_requires_matching_cover() {
    let a = Piece::new((o("0"), o("1")), (o("w"), o("w+1"))).unwrap();
    let b = Piece::new((o("w"), o("w+1")), (o("0"), o("1"))).unwrap();
    assert!(Homeo::from_global_chart(1, Chart::new(vec![a.clone()]).unwrap()).is_err());
    let g = Homeo::from_global_chart(1, Chart::new(vec![a, b]).unwrap()).unwrap();
    assert_eq!(g.eval(&o("1")).unwrap(), o("w+1"));
    assert_eq!(g.eval(&o("w+1")).unwrap(), o("1"));
    assert_eq!(g.eval(&o("2")).unwrap(), o("2"));
    assert_eq!(g.eval_inv(&o("1")).unwrap(), o("w+1"));
}

#[test]
fn atom_swap_signature() {
    // Moving one atom of A_1 into A_2 leaves deficiency sets of one
    // atom each, with exchange-equivalent but unequal signature pair.
    let a = Piece::new((o("0"), o("1")), (o("w"), o("w+1"))).unwrap();
    let b = Piece::new((o("w"), o("w+1")), (o("0"), o("1"))).unwrap();
    let g = Homeo::from_global_chart(1, Chart::new(vec![a, b]).unwrap()).unwrap();
    let s1 = g.signature(1).unwrap();
    assert_eq!(s1.p.intervals(), &[(o("0"), o("1"))]);
    assert_eq!(s1.q.intervals(), &[(o("0"), o("1"))]);
    assert_eq!(s1.pair, ClassPair::new(cl(0, 1), cl(0, 1)));
    assert!(sigcalc::sim(&s1.pair, &ClassPair::zero()));
    let s2 = g.signature(2).unwrap();
    assert_eq!(s2.pair, ClassPair::new(cl(0, 1), cl(0, 1)));
}

#[test]
fn compose_and_inverse_cancel() {
    let g = Homeo::lift(1, &Perm::zigzag());
    let h = Homeo::compose(&Homeo::inverse(&g), &g);
    for x in ["1", "w", "w+5", "w*9+2", "w*10", "w^2"] {
        assert_eq!(h.eval(&o(x)).unwrap(), o(x));
        assert_eq!(g.eval_inv(&g.eval(&o(x)).unwrap()).unwrap(), o(x));
    }
    assert_eq!(h.pi_of(5).unwrap(), 5);
}

#[test]
fn compose_refines_across_blocks() {
    // inner moves A_1 to A_2; outer swaps an atom of A_2 with one of A_3.
    let inner = Homeo::lift(1, &Perm::transposition(1, 2));
    let a = Piece::new((o("w"), o("w+1")), (o("w*2"), o("w*2+1"))).unwrap();
    let b = Piece::new((o("w*2"), o("w*2+1")), (o("w"), o("w+1"))).unwrap();
    let outer = Homeo::from_global_chart(1, Chart::new(vec![a, b]).unwrap()).unwrap();
    let c = Homeo::compose(&outer, &inner);
    assert_eq!(c.eval(&o("1")).unwrap(), o("w*2+1"));
    assert_eq!(c.eval(&o("2")).unwrap(), o("w+2"));
    assert_eq!(c.eval(&o("w")).unwrap(), o("w*2"));
    assert_eq!(c.eval_inv(&o("w*2+1")).unwrap(), o("1"));
    // pi is a homomorphism into the block permutations.
    for i in 1..=6 {
        let pi_inner = inner.pi_of(i).unwrap();
        assert_eq!(c.pi_of(i).unwrap(), outer.pi_of(pi_inner).unwrap());
    }
}

#[test]
fn pi_of_reads_top_points() {
    let sigma = Perm::table([(1, 3), (3, 4), (4, 1)]).unwrap();
    let g = Homeo::lift(2, &sigma);
    for i in 1..=6 {
        assert_eq!(g.pi_of(i).unwrap(), sigma.apply(i));
    }
}

#[test]
fn image_of_bounded_set() {
    let g = Homeo::lift(1, &Perm::transposition(1, 2));
    let space = g.sys().space();
    let s = parse_clopen(&space, "{(0, 3], (w*2+1, w*3]}").unwrap();
    let img = g.image_of_set(&s).unwrap();
    assert_eq!(img, parse_clopen(&space, "{(w, w+3], (w*2+1, w*3]}").unwrap());
    assert_eq!(g.preimage_of_set(&img).unwrap(), s);
}

#[test]
fn image_of_unbounded_set_with_hint() {
    let g = Homeo::lift(1, &Perm::transposition(1, 2));
    let space = g.sys().space();
    let s = parse_clopen(&space, "{(1, w^2]}").unwrap();
    let img = g.image_of_set(&s).unwrap();
    // The image misses exactly w+1, the image of the missing atom 1.
    assert_eq!(img, parse_clopen(&space, "{(0, w], (w+1, w^2]}").unwrap());
    // No finite activity bound under the zigzag lift.
    let z = Homeo::lift(1, &Perm::zigzag());
    assert!(matches!(z.image_of_set(&s), Err(HomeoError::Unbounded(_))));
}

#[test]
fn stabilizer_queries() {
    let g = Homeo::lift(1, &Perm::transposition(1, 2));
    let space = g.sys().space();
    let moved = parse_clopen(&space, "{(0, 1]}").unwrap();
    let ans = g.fixes_pointwise(&moved, 10).unwrap();
    assert!(!ans.holds && ans.exact);
    let fixed = parse_clopen(&space, "{(w*4, w*5]}").unwrap();
    let ans = g.fixes_pointwise(&fixed, 10).unwrap();
    assert!(ans.holds && ans.exact);
    let both_blocks = parse_clopen(&space, "{(0, w*2]}").unwrap();
    let ans = g.setwise_stabilizes(&both_blocks, 10).unwrap();
    assert!(ans.holds && ans.exact);
    let one_block = parse_clopen(&space, "{(0, w]}").unwrap();
    let ans = g.setwise_stabilizes(&one_block, 10).unwrap();
    assert!(!ans.holds && ans.exact);
    // Unbounded set, finite activity: still exact.
    let tail = parse_clopen(&space, "{(w*2, w^2]}").unwrap();
    let ans = g.setwise_stabilizes(&tail, 10).unwrap();
    assert!(ans.holds && ans.exact);
    // Zigzag lift on an unbounded set: only a bounded check is possible.
    let z = Homeo::lift(1, &Perm::zigzag());
    let all = parse_clopen(&space, "{(0, w^2]}").unwrap();
    let ans = z.setwise_stabilizes(&all, 5).unwrap();
    assert!(ans.holds && !ans.exact);
}

#[test]
fn blockwise_certificates() {
    assert!(Homeo::identity(1).is_blockwise_certified());
    assert!(!Homeo::lift(1, &Perm::zigzag()).is_blockwise_certified());
    let a = Piece::new((o("0"), o("1")), (o("1"), o("2"))).unwrap();
    let b = Piece::new((o("1"), o("2")), (o("0"), o("1"))).unwrap();
    let g = Homeo::from_global_chart(1, Chart::new(vec![a, b]).unwrap()).unwrap();
    assert!(g.is_blockwise_certified());
    assert_eq!(g.active_hint(), Some(BTreeSet::from([1])));
}

#[test]
fn eq_on_samples() {
    let g = Homeo::lift(1, &Perm::transposition(1, 2));
    let h = Homeo::inverse(&g);
    let pts: Vec<Ordinal> = ["1", "w", "w+1", "w*3"].iter().map(|s| o(s)).collect();
    assert!(Homeo::eq_on(&g, &h, &pts).unwrap());
    let z = Homeo::lift(1, &Perm::zigzag());
    assert_eq!(
        Homeo::first_disagreement(&g, &z, &pts).unwrap(),
        Some(o("w+1"))
    );
}
