mod common;

use bralg::poly::{maximal_ideal, RingSpec};
use bralg::{rat, Aut, Rational};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn random_aut(seed: u64, permute: bool) -> Aut {
    let r = RingSpec::polynomial(&["x", "y"]);
    let mut g = rng(seed);
    let perm = if permute && g.gen_bool(0.5) { vec![1, 0] } else { vec![0, 1] };
    let nonzero = |g: &mut rand_chacha::ChaCha8Rng| loop {
        let v = g.gen_range(-3..=3);
        if v != 0 {
            return rat(v, g.gen_range(1..=2));
        }
    };
    let scale = vec![nonzero(&mut g), nonzero(&mut g)];
    let shift = vec![q(g.gen_range(-2..=2)), q(g.gen_range(-2..=2))];
    Aut::new(&r, perm, scale, shift).unwrap()
}

fn random_point(seed: u64) -> Vec<Rational> {
    let mut g = rng(seed);
    vec![rat(g.gen_range(-5..=5), g.gen_range(1..=3)), rat(g.gen_range(-5..=5), g.gen_range(1..=3))]
}

#[test]
fn documented_actions() {
    let r = RingSpec::polynomial(&["z"]);
    let s = Aut::diagonal(&r, vec![q(1)], vec![q(1)]).unwrap();
    assert_eq!(s.apply(&poly(&r, "z^2")), poly(&r, "z^2 + 2*z + 1"));
    assert_eq!(s.act_point(&[q(0)]).unwrap(), vec![q(-1)]);
    assert!(s.pow(-1).compose(&s).is_identity());

    let l = RingSpec::laurent(&["u", "v"]);
    let t = Aut::diagonal(&l, vec![q(2), q(3)], vec![q(0), q(0)]).unwrap();
    assert!(t.apply_ideal(&ideal(&l, &["u + v"])).equals(&ideal(&l, &["2*u + 3*v"])).unwrap());
    assert_eq!(t.act_point(&[q(-1), q(1)]).unwrap(), vec![rat(-1, 2), rat(1, 3)]);

    let x = RingSpec::polynomial(&["x"]);
    let shift = Aut::diagonal(&x, vec![q(1)], vec![q(1)]).unwrap();
    let scale = Aut::diagonal(&x, vec![q(2)], vec![q(0)]).unwrap();
    assert!(!shift.commutes_with(&scale));
    assert!(shift.commutes_with(&shift));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn point_and_ideal_actions_agree(seed in any::<u64>()) {
        let s = random_aut(seed, true);
        let pt = random_point(seed ^ 7);
        let r = s.ring().clone();
        let image = s.apply_ideal(&maximal_ideal(&r, &pt).unwrap());
        let moved = maximal_ideal(&r, &s.act_point(&pt).unwrap()).unwrap();
        prop_assert!(image.equals(&moved).unwrap());
    }

    #[test]
    fn powers_add(seed in any::<u64>(), a in -5i64..=5, b in -5i64..=5) {
        let s = random_aut(seed, true);
        prop_assert_eq!(s.pow(a + b).images(), s.pow(a).compose(&s.pow(b)).images());
    }

    #[test]
    fn commuting_maps_commute_on_points(seed in any::<u64>()) {
        let s = random_aut(seed, true);
        let t = random_aut(seed.wrapping_mul(31), true);
        let pt = random_point(seed ^ 11);
        if s.commutes_with(&t) {
            let st = s.act_point(&t.act_point(&pt).unwrap()).unwrap();
            let ts = t.act_point(&s.act_point(&pt).unwrap()).unwrap();
            prop_assert_eq!(st, ts);
        }
        // powers of one map always commute
        let s2 = s.pow(2);
        prop_assert!(s.commutes_with(&s2));
        let a = s.act_point(&s2.act_point(&pt).unwrap()).unwrap();
        let b = s2.act_point(&s.act_point(&pt).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}
