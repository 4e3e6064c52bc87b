use std::sync::Arc;

use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::sample::{random_carrier, random_differential, random_map, SampleConfig};

fn small() -> SampleConfig {
    SampleConfig {
        min_dim: 2,
        max_dim: 3,
        min_degree: -1,
        max_degree: 2,
        density: 0.6,
        coeff_bound: 3,
    }
}

fn carrier(basis: &[(&str, i32)]) -> Arc<GradedCarrier> {
    Arc::new(GradedCarrier::new(basis.to_vec()).unwrap())
}

fn word(c: &GradedCarrier, names: &[&str]) -> Vec<Basis> {
    names
        .iter()
        .map(|n| c.basis(c.index_of(n).unwrap(), Mono::ONE))
        .collect()
}

fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
    let c: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(n, &c).unwrap()
}

/// Sorts `v_i` to position `σ(i)` by adjacent swaps, collecting Koszul signs.
fn bubble_oracle(sigma: &Permutation, w: &[Basis]) -> (Vec<Basis>, bool) {
    let mut items: Vec<(usize, Basis)> = w
        .iter()
        .enumerate()
        .map(|(i, b)| (sigma.image(i), *b))
        .collect();
    let mut neg = false;
    let n = items.len();
    for pass in 0..n {
        for j in 0..n - 1 - pass {
            if items[j].0 > items[j + 1].0 {
                if items[j].1.deg % 2 != 0 && items[j + 1].1.deg % 2 != 0 {
                    neg = !neg;
                }
                items.swap(j, j + 1);
            }
        }
    }
    (items.into_iter().map(|(_, b)| b).collect(), neg)
}

fn random_degree<R: Rng>(rng: &mut R) -> i32 {
    rng.gen_range(-1..=1)
}

fn random_triple(seed: u64) -> (Arc<GradedCarrier>, [MultiMap; 3]) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = small();
    let c = random_carrier(&mut rng, &cfg);
    let pick = |rng: &mut ChaCha8Rng| {
        let arity = rng.gen_range(1..=3);
        let deg = random_degree(rng);
        random_map(rng, &c, arity, deg, &cfg)
    };
    let maps = [pick(&mut rng), pick(&mut rng), pick(&mut rng)];
    (c, maps)
}

fn sign(neg: bool) -> Rational {
    if neg {
        -Rational::one()
    } else {
        Rational::one()
    }
}

fn lazy_zero(m: &LazyMap, c: &GradedCarrier) -> bool {
    m.first_nonzero(c, 0).unwrap().is_none()
}

#[test]
fn identity_permutation_fixes_elements() {
    let c = carrier(&[("a", 1), ("b", 0), ("c", 3)]);
    let e = Element::term(word(&c, &["a", "c", "b"]), q(5));
    assert_eq!(e.koszul_permute(&Permutation::identity(3)).unwrap(), e);
}

#[test]
fn swapping_two_odd_factors_flips_sign() {
    let c = carrier(&[("a", 1), ("b", 1)]);
    let e = Element::word(word(&c, &["a", "b"]));
    let swapped = e.koszul_permute(&cyc(2, &[&[1, 2]])).unwrap();
    assert_eq!(swapped, Element::term(word(&c, &["b", "a"]), q(-1)));
}

#[test]
fn three_cycle_matches_adjacent_transpositions() {
    let c = carrier(&[("a", 1), ("b", 1), ("z", 0)]);
    let w = word(&c, &["a", "b", "z"]);
    let sigma = cyc(3, &[&[1, 2, 3]]);
    let (expect, neg) = bubble_oracle(&sigma, &w);
    let got = Element::word(w).koszul_permute(&sigma).unwrap();
    assert_eq!(got, Element::term(expect, sign(neg)));
}

#[test]
fn koszul_action_matches_oracle_exhaustively() {
    let c = carrier(&[("e", 0), ("o", 1), ("t", 2), ("u", -1)]);
    for n in 1..=4 {
        for w in c.words(n, 0) {
            for sigma in Permutation::all(n) {
                let (expect, neg) = bubble_oracle(&sigma, &w);
                let got = Element::word(w.clone()).koszul_permute(&sigma).unwrap();
                assert_eq!(got, Element::term(expect, sign(neg)));
            }
        }
    }
}

#[test]
fn koszul_action_rejects_wrong_arity() {
    let c = carrier(&[("a", 1)]);
    let e = Element::word(word(&c, &["a", "a"]));
    assert!(e.koszul_permute(&Permutation::identity(3)).is_err());
}

#[test]
fn elements_are_canonical() {
    let c = carrier(&[("a", 1), ("b", 0)]);
    let mut e = Element::zero();
    e.add_term(word(&c, &["a", "b"]), q(2));
    e.add_term(word(&c, &["b", "a"]), q(1));
    e.add_term(word(&c, &["a", "b"]), q(-2));
    assert_eq!(e, Element::word(word(&c, &["b", "a"])));
    assert_eq!(e.len(), 1);
    assert_eq!(e.degree(), Some(1));
    assert!(e.sub(&e).is_zero());
}

#[test]
fn acting_by_identity_is_trivial() {
    let (_, [f, ..]) = random_triple(1);
    assert_eq!(f.act(&Permutation::identity(f.arity())).unwrap(), f);
}

#[test]
fn symmetric_product_of_odd_elements() {
    let c = carrier(&[("a", 1), ("b", 1), ("c", 2)]);
    let mut rb = RuleBuilder::new();
    rb.add_plain(&[0, 1], 2, q(1));
    rb.add_plain(&[1, 0], 2, q(-1));
    let m = rb.build(&c, 2, 0).unwrap();
    assert_eq!(m.act(&cyc(2, &[&[1, 2]])).unwrap(), m);
    let ab = m.eval_word(&word(&c, &["a", "b"])).unwrap();
    let ba = m.eval_word(&word(&c, &["b", "a"])).unwrap();
    assert_eq!(ab, ba.scale(&q(-1)));
}

#[test]
fn action_is_a_right_action_on_s3() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let c = carrier(&[("x", 0), ("y", 1), ("z", 1)]);
    let f = random_map(&mut rng, &c, 3, 1, &small());
    assert!(!f.is_zero());
    for s in Permutation::all(3) {
        let fs = f.act(&s).unwrap();
        for t in Permutation::all(3) {
            let lhs = fs.act(&t).unwrap();
            let rhs = f.act(&s.compose(&t)).unwrap();
            assert_eq!(lhs, rhs, "σ = {s}, τ = {t}");
            let lazy = LazyMap::from(&f).act(&s).unwrap().act(&t).unwrap();
            for w in c.words(3, 0) {
                assert_eq!(lazy.eval_word(&w).unwrap(), rhs.eval_word(&w).unwrap());
            }
        }
    }
}

#[test]
fn composition_in_first_slot_has_no_prefix_sign() {
    let c = carrier(&[("a", 1), ("b", 0), ("c", 1)]);
    let mut rb = RuleBuilder::new();
    rb.add_plain(&[1, 0], 0, q(3));
    let f = rb.build(&c, 2, 0).unwrap();
    let mut rb = RuleBuilder::new();
    rb.add_plain(&[0], 1, q(2));
    let g = rb.build(&c, 1, -1).unwrap();
    let w = word(&c, &["a", "a"]);
    let first = f.compose_at(1, &g).unwrap().eval_word(&w).unwrap();
    assert_eq!(first, Element::term(word(&c, &["a"]), q(6)));
    // g odd, |a| odd: the prefix sign appears in slot 2
    let mut rb = RuleBuilder::new();
    rb.add_plain(&[0, 1], 0, q(1));
    let f2 = rb.build(&c, 2, 0).unwrap();
    let second = f2.compose_at(2, &g).unwrap().eval_word(&w).unwrap();
    assert_eq!(second, Element::term(word(&c, &["a"]), q(-2)));
}

#[test]
fn even_insertions_never_carry_a_prefix_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let c = carrier(&[("a", 1), ("b", 0), ("c", 1), ("d", 2)]);
    let f = random_map(&mut rng, &c, 3, 0, &small());
    let g = random_map(&mut rng, &c, 1, 0, &small());
    for i in 1..=3 {
        let fg = f.compose_at(i, &g).unwrap();
        for w in c.words(3, 0) {
            let mut expect = Element::zero();
            for (v, k) in g.eval_word(&w[i - 1..i]).unwrap().terms() {
                let mut word = w.clone();
                word[i - 1] = v[0];
                expect.add_assign_scaled(&f.eval_word(&word).unwrap(), k);
            }
            assert_eq!(fg.eval_word(&w).unwrap(), expect);
        }
    }
}

#[test]
fn composition_rejects_bad_positions() {
    let (_, [f, g, _]) = random_triple(3);
    assert!(f.compose_at(0, &g).is_err());
    assert!(f.compose_at(f.arity() + 1, &g).is_err());
    let fg = f.compose_at(1, &g).unwrap();
    assert_eq!(fg.arity(), f.arity() + g.arity() - 1);
    assert_eq!(fg.degree(), f.degree() + g.degree());
}

#[test]
fn self_bracket() {
    for seed in 0..20 {
        let (_, [f, ..]) = random_triple(seed);
        let ff = insertion_bracket(&f, &f).unwrap();
        if f.degree() % 2 == 0 {
            assert!(ff.is_zero());
        } else {
            assert_eq!(ff, pre_lie(&f, &f).unwrap().scale(&q(2)));
        }
    }
}

#[test]
fn bracket_with_differential_expands_to_leibniz_defect() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let c = random_carrier(&mut rng, &small());
        let d = random_differential(&mut rng, &c, &small());
        let m = random_map(&mut rng, &c, 2, 0, &small());
        let dm = insertion_bracket(&d, &m).unwrap();
        for w in c.words(2, 0) {
            let mut expect = Element::zero();
            for (v, k) in m.eval_word(&w).unwrap().terms() {
                expect.add_assign_scaled(&d.eval_word(v).unwrap(), k);
            }
            for (v, k) in d.eval_word(&w[..1]).unwrap().terms() {
                let word = [v[0], w[1]];
                expect.add_assign_scaled(&m.eval_word(&word).unwrap(), &-k.clone());
            }
            let s = sign(w[0].deg % 2 != 0);
            for (v, k) in d.eval_word(&w[1..]).unwrap().terms() {
                let word = [w[0], v[0]];
                expect.add_assign_scaled(&m.eval_word(&word).unwrap(), &-(k * &s));
            }
            assert_eq!(dm.eval_word(&w).unwrap(), expect);
        }
    }
}

#[test]
fn hom_differential_of_identity_and_chain_maps() {
    let c = carrier(&[("x", 0), ("y", 1), ("x'", 0), ("y'", 1)]);
    let mut rb = RuleBuilder::new();
    rb.add_plain(&[0], 1, q(1));
    rb.add_plain(&[2], 3, q(1));
    let d = rb.build(&c, 1, 1).unwrap();
    assert!(hom_differential(&d, &MultiMap::identity(&c))
        .unwrap()
        .is_zero());
    let mut rb = RuleBuilder::new();
    rb.add_plain(&[0], 2, q(1));
    rb.add_plain(&[2], 0, q(1));
    rb.add_plain(&[1], 3, q(1));
    rb.add_plain(&[3], 1, q(1));
    let swap = rb.build(&c, 1, 0).unwrap();
    assert!(hom_differential(&d, &swap).unwrap().is_zero());
}

#[test]
fn hom_differential_rejects_non_differentials() {
    let c = carrier(&[("x", 0), ("y", 1), ("z", 2)]);
    let mut rb = RuleBuilder::new();
    rb.add_plain(&[0], 1, q(1));
    rb.add_plain(&[1], 2, q(1));
    let d = rb.build(&c, 1, 1).unwrap();
    let f = MultiMap::identity(&c);
    assert!(matches!(
        hom_differential(&d, &f),
        Err(crate::Error::NotSquareZero(_))
    ));
    assert!(hom_differential(&f, &f).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn koszul_action_is_a_group_action(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_carrier(&mut rng, &small());
        let words = c.words(n, 0);
        let mut e = Element::zero();
        for _ in 0..3 {
            let w = words[rng.gen_range(0..words.len())].clone();
            e.add_term(w, q(rng.gen_range(1..=5)));
        }
        let all = Permutation::all(n);
        let s = &all[rng.gen_range(0..all.len())];
        let t = &all[rng.gen_range(0..all.len())];
        let lhs = e.koszul_permute(&s.compose(t)).unwrap();
        let rhs = e.koszul_permute(t).unwrap().koszul_permute(s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbolic_composition_matches_nested_evaluation(seed in any::<u64>()) {
        let (c, [f, g, _]) = random_triple(seed);
        for i in 1..=f.arity() {
            let sym = f.compose_at(i, &g).unwrap();
            let lazy = LazyMap::from(&f).compose(i, &LazyMap::from(&g)).unwrap();
            for w in c.words(sym.arity(), 0) {
                prop_assert_eq!(sym.eval_word(&w).unwrap(), lazy.eval_word(&w).unwrap());
            }
        }
    }

    #[test]
    fn pre_lie_identity(seed in any::<u64>()) {
        let (c, [f, g, h]) = random_triple(seed);
        let assoc = |g: &MultiMap, h: &MultiMap| {
            pre_lie(&pre_lie(&f, g).unwrap(), h)
                .unwrap()
                .sub(&pre_lie(&f, &pre_lie(g, h).unwrap()).unwrap())
                .unwrap()
        };
        let s = sign(g.degree() * h.degree() % 2 != 0);
        let defect = assoc(&g, &h).sub(&assoc(&h, &g).scale(&s)).unwrap();
        prop_assert!(defect.is_zero());

        let (lf, lg, lh) = (LazyMap::from(&f), LazyMap::from(&g), LazyMap::from(&h));
        let lassoc = |g: &LazyMap, h: &LazyMap| {
            lf.pre_lie(g).unwrap().pre_lie(h).unwrap()
                .sub(&lf.pre_lie(&g.pre_lie(h).unwrap()).unwrap())
                .unwrap()
        };
        let ldefect = LazyMap::sum(vec![
            (Rational::one(), lassoc(&lg, &lh)),
            (-s, lassoc(&lh, &lg)),
        ]).unwrap();
        prop_assert!(lazy_zero(&ldefect, &c));
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(seed in any::<u64>()) {
        let (c, [f, g, h]) = random_triple(seed);
        let br = |a: &MultiMap, b: &MultiMap| insertion_bracket(a, b).unwrap();
        let eps = |a: &MultiMap, b: &MultiMap| sign(a.degree() * b.degree() % 2 != 0);
        prop_assert_eq!(br(&f, &g), br(&g, &f).scale(&-eps(&f, &g)));
        let lhs = br(&f, &br(&g, &h));
        let rhs = br(&br(&f, &g), &h).add(&br(&g, &br(&f, &h)).scale(&eps(&f, &g))).unwrap();
        prop_assert_eq!(&lhs, &rhs);

        let (lf, lg, lh) = (LazyMap::from(&f), LazyMap::from(&g), LazyMap::from(&h));
        let lbr = |a: &LazyMap, b: &LazyMap| a.bracket(b).unwrap();
        let anti = LazyMap::sum(vec![
            (Rational::one(), lbr(&lf, &lg)),
            (eps(&f, &g), lbr(&lg, &lf)),
        ]).unwrap();
        prop_assert!(lazy_zero(&anti, &c));
        let jac = LazyMap::sum(vec![
            (Rational::one(), lbr(&lf, &lbr(&lg, &lh))),
            (-Rational::one(), lbr(&lbr(&lf, &lg), &lh)),
            (-eps(&f, &g), lbr(&lg, &lbr(&lf, &lh))),
        ]).unwrap();
        prop_assert!(lazy_zero(&jac, &c));
    }

    #[test]
    fn hom_differential_is_a_square_zero_derivation(seed in any::<u64>()) {
        let (c, [f, g, _]) = random_triple(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd1ff);
        let d = random_differential(&mut rng, &c, &small());
        let dh = |x: &MultiMap| hom_differential(&d, x).unwrap();
        prop_assert!(dh(&dh(&f)).is_zero());
        let lhs = dh(&insertion_bracket(&f, &g).unwrap());
        let rhs = insertion_bracket(&dh(&f), &g).unwrap()
            .add(&insertion_bracket(&f, &dh(&g)).unwrap().scale(&sign(f.degree() % 2 != 0)))
            .unwrap();
        prop_assert_eq!(&lhs, &rhs);

        let ld = LazyMap::from(&d);
        let (lf, lg) = (LazyMap::from(&f), LazyMap::from(&g));
        let ldh = |x: &LazyMap| ld.bracket(x).unwrap();
        prop_assert!(lazy_zero(&ldh(&ldh(&lf)), &c));
        let der = LazyMap::sum(vec![
            (Rational::one(), ldh(&lf.bracket(&lg).unwrap())),
            (-Rational::one(), ldh(&lf).bracket(&lg).unwrap()),
            (-sign(f.degree() % 2 != 0), lf.bracket(&ldh(&lg)).unwrap()),
        ]).unwrap();
        prop_assert!(lazy_zero(&der, &c));
    }
}
