use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use verbalforge::amplify::{kappa_instance, run_experiment, Amplifier, ExperimentConfig, Phi, Sigma};
use verbalforge::descriptor::{GroupDesc, MetricDesc, ProductDesc, WreathDesc};
use verbalforge::group::{FiniteGroup, GroupOps, Permutation, DEFAULT_CAP};
use verbalforge::metric::fp::{FpMatrix, GlRank};
use verbalforge::metric::{rank_dist, MetricGroup, Rational, SymHamming, WreathMetric, WreathPoint};
use verbalforge::product::{EngineChoice, VerbalProduct};
use verbalforge::words::WordSet;
use verbalforge::wreath::VerbalWreath;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn gl(n: usize, p: u32) -> impl Strategy<Value = FpMatrix> {
    prop::collection::vec(0..p, n * n)
        .prop_map(move |a| FpMatrix { n, p, a })
        .prop_filter("invertible", move |m| m.rank() == n)
}

fn matrix(n: usize, p: u32) -> impl Strategy<Value = FpMatrix> {
    prop::collection::vec(0..p, n * n).prop_map(move |a| FpMatrix { n, p, a })
}

fn check_axioms<M: MetricGroup>(m: &M, x: &M::Elem, y: &M::Elem, z: &M::Elem) -> Result<(), TestCaseError> {
    let d = m.dist(x, y);
    prop_assert_eq!(d, m.dist(y, x));
    prop_assert_eq!(d, m.dist(&m.mul(z, x), &m.mul(z, y)));
    prop_assert_eq!(d, m.dist(&m.mul(x, z), &m.mul(y, z)));
    prop_assert!(m.dist(x, z).le_value(d.add(m.dist(y, z))));
    prop_assert!(d.le_value(m.diameter()));
    Ok(())
}

fn group_desc() -> impl Strategy<Value = GroupDesc> {
    prop_oneof![
        (1usize..9).prop_map(GroupDesc::Cyclic),
        (1usize..5).prop_map(GroupDesc::Sym),
        (1usize..6).prop_map(GroupDesc::Dihedral),
        Just(GroupDesc::Klein4),
        Just(GroupDesc::Trivial),
    ]
}

fn word_set() -> impl Strategy<Value = WordSet> {
    prop_oneof![
        (1usize..4).prop_map(WordSet::Nilpotent),
        (1usize..3).prop_map(WordSet::Solvable),
        (2usize..5).prop_map(WordSet::Burnside),
    ]
}

fn metric_desc() -> impl Strategy<Value = MetricDesc> {
    let leaf = prop_oneof![
        (1usize..9).prop_map(MetricDesc::Sym),
        ((1usize..5), prop::sample::select(vec![2u32, 3, 5, 7])).prop_map(|(n, p)| MetricDesc::Gl(n, p)),
        (1usize..5).prop_map(MetricDesc::Unitary),
    ];
    leaf.prop_recursive(2, 4, 1, |inner| (inner, 1usize..5).prop_map(|(m, b)| MetricDesc::WreathMetric(Box::new(m), b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hamming_axioms(x in perm(7), y in perm(7), z in perm(7)) {
        check_axioms(&SymHamming { n: 7 }, &x, &y, &z)?;
        prop_assert_eq!(SymHamming { n: 7 }.dist(&x, &y).is_zero(), x == y);
    }

    #[test]
    fn rank_axioms(x in gl(3, 3), y in gl(3, 3), z in gl(3, 3)) {
        check_axioms(&GlRank::new(3, 3).unwrap(), &x, &y, &z)?;
    }

    #[test]
    fn rank_distance_to_identity_counts_fixed_vectors(m in gl(4, 2)) {
        let one = FpMatrix::identity(4, 2);
        let kernel = 4 - m.sub(&one).rank();
        prop_assert_eq!(rank_dist(&one, &m).unwrap(), Rational::from_integer(1) - Rational::new(kernel as i64, 4));
    }

    #[test]
    fn rank_is_subadditive(a in matrix(3, 5), b in matrix(3, 5)) {
        let sum = a.sub(&FpMatrix::scalar(3, 5, 0).sub(&b));
        prop_assert!(sum.rank() <= a.rank() + b.rank());
        prop_assert!(a.mul(&b).rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn wreath_metric_axioms(
        xs in prop::collection::vec((perm(4), perm(4), perm(4)), 3),
        taus in prop::collection::vec(perm(3), 3),
    ) {
        let m = WreathMetric::new(SymHamming { n: 4 }, 3).unwrap();
        let pts: Vec<_> = xs
            .into_iter()
            .zip(taus)
            .map(|((a, b, c), tau)| WreathPoint { x: vec![a, b, c], tau })
            .collect();
        check_axioms(&m, &pts[0], &pts[1], &pts[2])?;
    }

    #[test]
    fn hamming_defects_are_conjugation_invariant(seed in any::<u64>(), rate in 0.0f64..1.0, pi in perm(24)) {
        let h = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = Sigma::regular(&h, 4).perturb(rate, &mut rng);
        let map = sigma.approx_map(h.elements().collect());
        let conj = map.map_values(|s| pi.compose(s).compose(&pi.inverse()));
        let (a, b) = (map.measure(&h).unwrap(), conj.measure(&h).unwrap());
        prop_assert_eq!(a.mult_defect, b.mult_defect);
        prop_assert_eq!(a.free_defect, b.free_defect);
    }

    #[test]
    fn descriptors_round_trip(a in group_desc(), b in group_desc(), w in word_set(), m in metric_desc()) {
        prop_assert_eq!(a.to_string().parse::<GroupDesc>().unwrap(), a.clone());
        let p = ProductDesc { a: a.clone(), b: b.clone(), words: w.clone(), engine: EngineChoice::Auto };
        prop_assert_eq!(p.to_string().parse::<ProductDesc>().unwrap(), p);
        let wr = WreathDesc { g: a, h: b, words: w };
        prop_assert_eq!(wr.to_string().parse::<WreathDesc>().unwrap(), wr);
        prop_assert_eq!(m.to_string().parse::<MetricDesc>().unwrap(), m);
    }

    #[test]
    fn kappa_bound_holds(
        group in prop::sample::select(vec!["cyclic:5", "sym:3", "dihedral:4", "cyclic:7"]),
        copies in prop::sample::select(vec![1usize, 8, 40]),
        rate in 0.0f64..1.0,
        e_size in 1usize..4,
        seed in any::<u64>(),
    ) {
        let h = group.parse::<GroupDesc>().unwrap().build(DEFAULT_CAP).unwrap();
        let inst = kappa_instance(&h, group, copies, rate, e_size, seed);
        prop_assert!(inst.holds, "{:?}", inst);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_forms_multiply_like_the_table(
        pair in prop::sample::select(vec![("sym:3", "cyclic:2"), ("cyclic:4", "cyclic:6"), ("klein4", "dihedral:4")]),
        w in prop::sample::select(vec!["nil:1", "nil:2", "sol:1"]),
        seed in any::<u64>(),
    ) {
        let a = pair.0.parse::<GroupDesc>().unwrap().build(DEFAULT_CAP).unwrap();
        let b = pair.1.parse::<GroupDesc>().unwrap().build(DEFAULT_CAP).unwrap();
        let p = VerbalProduct::build(&a, &b, &w.parse().unwrap(), EngineChoice::Auto, DEFAULT_CAP).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (p.random_element(&mut rng, 6), p.random_element(&mut rng, 6), p.random_element(&mut rng, 6));
        prop_assert_eq!(p.mul(&p.mul(&x, &y), &z), p.mul(&x, &p.mul(&y, &z)));
        prop_assert_eq!(p.mul(&x, &p.inv(&x)), p.identity());
        prop_assert_eq!(p.from_letters(&p.word_of(&x)), x);
    }

    #[test]
    fn gamma_factors_through_the_top(h_order in 2usize..4, sigma_rate in 0.0f64..0.5, phi_rate in 0.0f64..0.5, seed in any::<u64>()) {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let h = FiniteGroup::cyclic(h_order).unwrap();
        let w = VerbalWreath::new(&c2, &h, &"nil:2".parse().unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = Sigma::regular(&h, 1).perturb(sigma_rate, &mut rng);
        let amp = Amplifier::new(&w, sigma, &w.generators()).unwrap();
        let phi = Phi::regular(&amp.bprod, DEFAULT_CAP).unwrap().perturb(&amp.bprod.identity(), phi_rate, &mut rng);
        for z in w.elements().iter().step_by(5) {
            let whole = amp.gamma_sofic(&phi, z).unwrap();
            let base = amp.gamma_sofic(&phi, &w.base_elem(z.x.clone())).unwrap();
            let top = amp.gamma_sofic(&phi, &w.top(z.h)).unwrap();
            prop_assert_eq!(whole, base.compose(&top));
        }
    }

    #[test]
    fn theta_is_a_homomorphism_on_e_supported_elements(h_order in 2usize..4, rate in 0.0f64..0.5, seed in any::<u64>()) {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let h = FiniteGroup::cyclic(h_order).unwrap();
        let w = VerbalWreath::new(&c3, &h, &"nil:2".parse().unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = Sigma::regular(&h, 1).perturb(rate, &mut rng);
        let amp = Amplifier::new(&w, sigma, &w.generators()).unwrap();
        let e: std::collections::BTreeSet<usize> = amp.hsets.e.iter().copied().collect();
        let inside: Vec<_> = w.base.elements().into_iter().filter(|x| w.support(x).is_subset(&e)).collect();
        for &b in &amp.bsets.b1 {
            for x in inside.iter().step_by(7) {
                for y in inside.iter().step_by(11) {
                    prop_assert_eq!(amp.theta(b, &w.base.mul(x, y)), amp.bprod.mul(&amp.theta(b, x), &amp.theta(b, y)));
                }
            }
        }
    }

    #[test]
    fn four_premise_check_is_sound(
        h in prop::sample::select(vec!["cyclic:2", "cyclic:3"]),
        flavor in prop::sample::select(vec!["sofic", "weak-sofic", "hyperlinear", "linear-sofic"]),
        target in prop::sample::select(vec!["sigma", "phi"]),
        rate in 0.0f64..0.4,
        eps in prop::sample::select(vec![(1i64, 2i64), (3, 4), (1, 1)]),
        seed in any::<u64>(),
    ) {
        let eps = Rational::new(eps.0, eps.1);
        let cfg = ExperimentConfig {
            h: h.into(),
            flavor: flavor.into(),
            epsilon: verbalforge::metric::format_rational(&eps),
            kappa: verbalforge::metric::format_rational(&(eps / 13)),
            perturbation: Some(serde_json::from_value(serde_json::json!({"target": target, "rate": rate})).unwrap()),
            seed,
            ..Default::default()
        };
        let r = run_experiment(&cfg, DEFAULT_CAP).unwrap();
        prop_assert!(r.four_premise.sound(), "{:?}", r.four_premise);
        if r.four_premise.premises_pass {
            prop_assert!(r.four_premise.conclusion.lt(eps));
        }
        if r.freeness.applies {
            prop_assert!(r.freeness.holds, "{:?}", r.freeness);
        }
    }
}

#[test]
fn generated_subgroups_divide_the_order() {
    for g in ["sym:4", "dihedral:6", "cyclic:12"] {
        let g = g.parse::<GroupDesc>().unwrap().build(DEFAULT_CAP).unwrap();
        for x in g.elements() {
            assert_eq!(g.order() % verbalforge::group::subgroup_generated(&g, &[x]).order(), 0);
            assert_eq!(g.order() % g.element_order(x), 0);
        }
    }
}
