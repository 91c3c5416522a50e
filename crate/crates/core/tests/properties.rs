use nikolskii_core::bandlimited::{discrete_transform, make_random_bandlimited, Spectrum};
use nikolskii_core::besov::{phi_k, psi};
use nikolskii_core::lznorm::{lz_norm, rel_diff, weighted_power_equiv_ratio};
use nikolskii_core::nikolskii::{
    classify, in_f1, nikolskii_bound_with, verify_inequality, ClassTag, FamilySpec, PeriodRule,
    TheoremId,
};
use nikolskii_core::{BoxRegion, ExtReal, LogPair, SampledFunction, SpaceParams, StepFunction};
use num_complex::Complex64;
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = LogPair> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| LogPair::new(a, b).unwrap())
}

fn step_fn() -> impl Strategy<Value = StepFunction> {
    prop::collection::vec((0.0..10.0f64, 0.01..5.0f64), 1..40)
        .prop_map(|v| StepFunction::from_pairs(&v).unwrap())
}

fn finite_space() -> impl Strategy<Value = SpaceParams> {
    (
        0.3..8.0f64,
        prop_oneof![(0.3..8.0f64), Just(f64::INFINITY)],
        pair(),
    )
        .prop_map(|(p, b, a)| SpaceParams::from_reals(p, b, (a.alpha0, a.alpha_inf)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn broken_log_symmetry(a in pair(), t in 1e-6..1e6f64) {
        let l = a.l_pow(t).unwrap();
        prop_assert!(rel_diff(a.tilde().l_pow(1.0 / t).unwrap(), l) < 1e-12);
    }

    #[test]
    fn broken_log_multiplicative(a in pair(), b in pair(), k in -2.0..2.0f64, t in 1e-6..1e6f64) {
        let lhs = (a + b).l_pow(t).unwrap();
        prop_assert!(rel_diff(lhs, a.l_pow(t).unwrap() * b.l_pow(t).unwrap()) < 1e-12);
        prop_assert!(rel_diff(a.scale(k).l_pow(t).unwrap(), a.l_pow(t).unwrap().powf(k)) < 1e-12);
    }

    #[test]
    fn rearrange_idempotent_and_equimeasurable(f in step_fn(), lambda in 0.0..10.0f64) {
        let fs = f.rearrange();
        prop_assert!(fs.is_canonical());
        prop_assert_eq!(fs.rearrange(), fs.clone());
        prop_assert!(rel_diff(f.distribution(lambda), fs.distribution(lambda)) < 1e-12);
        prop_assert!(rel_diff(f.total_measure(), fs.total_measure()) < 1e-12);
    }

    #[test]
    fn sampled_rearrangement_matches_sort(
        vals in prop::collection::vec((-4i32..4, -4i32..4), 1..64),
        h in 0.1..2.0f64,
    ) {
        let values: Vec<Complex64> =
            vals.iter().map(|&(a, b)| Complex64::new(a as f64, b as f64)).collect();
        let n = values.len();
        let g = SampledFunction::new(vec![n], vec![h], vec![0.0], values.clone()).unwrap();
        let mut mags: Vec<f64> = values.iter().map(|v| v.norm()).collect();
        mags.sort_by(|a, b| b.total_cmp(a));
        let fs = g.rearrange();
        let mut i = 0;
        for p in fs.pieces() {
            let count = mags[i..].iter().take_while(|&&m| m == p.value).count();
            prop_assert!(count > 0);
            prop_assert!(rel_diff(p.measure, count as f64 * h) < 1e-12);
            i += count;
        }
        prop_assert_eq!(i, n);
    }

    #[test]
    fn norm_homogeneous_and_monotone(f in step_fn(), s in finite_space(), c in 0.01..100.0f64) {
        let inf = ExtReal::Infinity;
        let fs = f.rearrange();
        let base = lz_norm(&fs, &s, inf).unwrap().value;
        let scaled = lz_norm(&f.scaled(c).rearrange(), &s, inf).unwrap().value;
        prop_assert!(rel_diff(scaled, c * base) < 1e-12);
        // Raising every value pointwise cannot decrease the norm.
        let bigger = f.scaled(1.0).pieces().iter()
            .map(|p| (p.value + 0.5, p.measure)).collect::<Vec<_>>();
        let up = lz_norm(&StepFunction::from_pairs(&bigger).unwrap().rearrange(), &s, inf).unwrap();
        prop_assert!(up.value >= base * (1.0 - 1e-9));
    }

    #[test]
    fn box_dilation_measure(
        lo in prop::collection::vec(-3.0..0.0f64, 1..3),
        w in prop::collection::vec(0.1..3.0f64, 2),
        rho in 1u32..5,
    ) {
        let hi: Vec<f64> = lo.iter().zip(&w).map(|(a, d)| a + d).collect();
        let s = Spectrum::new(vec![BoxRegion::new(lo.clone(), hi).unwrap()]).unwrap();
        let n = lo.len() as i32;
        let dilated = s.power_support(rho).unwrap().measure();
        prop_assert!(rel_diff(dilated, (rho as f64).powi(n) * s.measure()) < 1e-12);
    }

    #[test]
    fn rho_is_minimal(q in 2.0..12.0f64, c in 0.5..12.0f64, b in pair()) {
        let cx = ExtReal::Finite(c);
        if let Ok(t) = classify(q, cx, b) {
            let rho = t.rho.unwrap_or(0);
            if t.tag != ClassTag::F0 {
                let r = rho as f64;
                prop_assert!(in_f1(q / r, ExtReal::Finite(c / r), b.scale(r)));
                for smaller in 1..rho {
                    let s = smaller as f64;
                    prop_assert!(!in_f1(q / s, ExtReal::Finite(c / s), b.scale(s)));
                }
            }
        }
    }

    #[test]
    fn bound_increases_with_measure(src in finite_space(), tgt in finite_space()) {
        let grid = [1e-3, 1e-1, 0.5, 1.0, 3.0, 50.0, 1e4];
        let values: Vec<_> = grid.iter()
            .map(|&m| nikolskii_bound_with(&src, &tgt, |rho| Ok(m * rho as f64)))
            .collect();
        if let Some(Ok(first)) = values.first() {
            if first.power_exponent > 0.0 && values.iter().all(|v| v.as_ref().is_ok_and(|b| b.theorem == first.theorem)) {
                let g: Vec<f64> = values.iter().map(|v| v.as_ref().unwrap().value).collect();
                // d log G / d log m ≥ power − max|log exponent| > 0.
                let log_mag = first.log_exponents.alpha0.abs().max(first.log_exponents.alpha_inf.abs());
                if first.power_exponent > log_mag {
                    prop_assert!(g.windows(2).all(|w| w[1] > w[0]), "{:?}", g);
                }
            }
        }
    }

    #[test]
    fn weighted_power_ratio_bounded(sigma in 0.2..3.0f64, b in 0.5..6.0f64, bp in pair()) {
        let ts = [1e-6, 1e-4, 1e-2, 1.0, 1e2, 1e4, 1e6];
        let bp = LogPair::new(bp.alpha0 * 0.3, bp.alpha_inf * 0.3).unwrap();
        let r: Vec<f64> = ts.iter()
            .map(|&t| weighted_power_equiv_ratio(sigma, ExtReal::Finite(b), bp, t).unwrap())
            .collect();
        let max = r.iter().copied().fold(0.0, f64::max);
        let min = r.iter().copied().fold(f64::INFINITY, f64::min);
        prop_assert!(max / min < 100.0, "{:?}", r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verify_ratio_scale_invariant(seed in 0u64..1000, c in 0.01..100.0f64, omega in 1.0..6.0f64) {
        let fam = FamilySpec::Random { dim: 1, seed, inner: 0.0, period: PeriodRule::Fixed(4.0), points: None };
        let f = fam.build(omega).unwrap();
        let src = SpaceParams::from_reals(1.0, 1.0, (0.0, 0.0)).unwrap();
        let tgt = SpaceParams::from_reals(3.0, 2.0, (0.5, -0.5)).unwrap();
        let a = verify_inequality(&f, &src, &tgt).unwrap();
        let b = verify_inequality(&f.scaled(c).unwrap(), &src, &tgt).unwrap();
        prop_assert!(rel_diff(a.ratio, b.ratio) < 1e-12);
        let same = verify_inequality(&f, &tgt, &tgt).unwrap();
        prop_assert_eq!(same.bound.theorem, TheoremId::Identity);
        prop_assert_eq!(same.ratio, 1.0);
    }

    #[test]
    fn square_has_doubled_spectrum(seed in 0u64..1000, r in 1.0..5.0f64) {
        let s = Spectrum::interval(-r, r).unwrap();
        let f = make_random_bandlimited(&s, seed, 4.0, 128).unwrap();
        let sq: Vec<Complex64> = f.samples().values().iter().map(|v| v * v).collect();
        let g = f.samples().with_values(sq).unwrap();
        let hat = discrete_transform(&g).unwrap();
        let two = s.power_support(2).unwrap();
        let max = hat.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let n = hat.len();
        for (k, v) in hat.iter().enumerate() {
            let xi = nikolskii_core::fft::signed_index(k, n) as f64 / 4.0;
            if !two.contains(&[xi]) {
                prop_assert!(v.norm() <= 1e-10 * max);
            }
        }
    }
}

#[test]
fn partition_sums_to_one() {
    for i in 0..=4000 {
        let r = 2f64.powf(-10.0 + 20.0 * i as f64 / 4000.0);
        let s: f64 = psi(r) + (1..=12).map(|k| phi_k(k, r)).sum::<f64>();
        assert!((s - 1.0).abs() < 1e-12, "r = {r}: {s}");
        let h: f64 = (-12..=12).map(|k| phi_k(k, r)).sum();
        assert!((h - 1.0).abs() < 1e-12, "r = {r}: {h}");
    }
}
