use lcheb::arith::{crt_solve, gcd, sharp_flat_decompose, validate_sharp_flat, ParamVec};
use lcheb::dct::{dct1_fast, dct1_naive};
use lcheb::discrete::GridFunction;
use lcheb::lissajous::{classify_curves, n_deg_closed_form, rho_dagger, rho_range};
use lcheb::nodes::{cardinality_formula, decode, NodeSet};
use lcheb::spectral::{class_decomposition, gamma_sets, k_set, reflect, SpectralIndex};
use lcheb::trig::cos_pi_ratio;
use lcheb::{Interpolator, Space};
use proptest::prelude::*;

fn small_params() -> impl Strategy<Value = ParamVec> {
    prop::collection::vec((1u64..=9, -3i64..=3), 1..=3)
        .prop_map(|v| ParamVec::new(v.iter().map(|p| p.0).collect(), v.iter().map(|p| p.1).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn crt_solution_satisfies_congruences(k in prop::collection::vec(1u64..40, 1..4), a in prop::collection::vec(-100i64..100, 4)) {
        let a = &a[..k.len()];
        if let Ok(l) = crt_solve(&k, a) {
            for (ki, ai) in k.iter().zip(a) {
                prop_assert_eq!((l as i64 - ai).rem_euclid(*ki as i64), 0);
            }
        } else {
            let clash = (0..k.len()).any(|i| (i + 1..k.len()).any(|j| (a[i] - a[j]).rem_euclid(gcd(k[i], k[j]) as i64) != 0));
            prop_assert!(clash);
        }
    }

    #[test]
    fn decomposition_always_valid(m in prop::collection::vec(1u64..200, 1..5)) {
        prop_assert!(validate_sharp_flat(&m, &sharp_flat_decompose(&m)));
    }

    #[test]
    fn decode_lands_in_index_set(pv in small_params(), l_seed in 0u64..1000, r_seed in 0u64..1000) {
        let sf = sharp_flat_decompose(pv.m());
        let rhos = rho_range(&sf);
        let rho = &rhos[(r_seed as usize) % rhos.len()];
        let l = l_seed % (2 * sf.sharp_product());
        let n = decode(&pv, &sf, l, rho).unwrap();
        let nodes = NodeSet::new(&pv);
        let k = nodes.position(&n.i);
        prop_assert!(k.is_some());
        prop_assert_eq!(nodes.nodes()[k.unwrap()].clone(), n);
    }

    #[test]
    fn partner_is_involution(pv in small_params()) {
        let sf = sharp_flat_decompose(pv.m());
        for rho in rho_range(&sf) {
            prop_assert_eq!(rho_dagger(&pv, &sf, &rho_dagger(&pv, &sf, &rho)), rho);
        }
        let cc = classify_curves(&pv, &sf);
        prop_assert_eq!(cc.n_deg, n_deg_closed_form(&pv));
        prop_assert_eq!(2 * cc.classes.len() as u64, sf.flat_product() + cc.n_deg);
    }

    #[test]
    fn spectral_counts_match_nodes(pv in small_params()) {
        let sets = gamma_sets(&pv);
        prop_assert_eq!(sets.kappa0.len() as u64, cardinality_formula(&pv, 0));
        prop_assert_eq!(sets.kappa1.len() as u64, cardinality_formula(&pv, 1));
        let cd = class_decomposition(&pv);
        prop_assert_eq!(cd.classes().len(), NodeSet::new(&pv).len());
        let members: usize = cd.classes().iter().map(|c| c.len()).sum();
        prop_assert_eq!(members, sets.bar.len());
        for cls in cd.classes() {
            // representative is the reflection at max K of the common lower index
            if cls.len() > 1 {
                let k = (0..pv.dim()).find(|&j| 2 * cls.representative.0[j] as u64 > pv.m()[j]).unwrap();
                let eta = reflect(&pv, &cls.representative, k);
                prop_assert_eq!(*k_set(&pv, &eta.0).last().unwrap(), k);
            }
        }
    }

    #[test]
    fn reflection_is_involution(pv in small_params(), seed in prop::collection::vec(0usize..10, 3), j in 0usize..3) {
        let d = pv.dim();
        let g = SpectralIndex((0..d).map(|i| seed[i] % (pv.m()[i] as usize + 1)).collect());
        let j = j % d;
        prop_assert_eq!(reflect(&pv, &reflect(&pv, &g, j), j), g);
    }

    #[test]
    fn cosine_reduction_is_periodic_and_even(n in -500i64..500, m in 1u64..60) {
        let c = cos_pi_ratio(n, m);
        prop_assert_eq!(c, cos_pi_ratio(-n, m));
        prop_assert_eq!(c, cos_pi_ratio(n + 2 * m as i64, m));
        prop_assert!(c.abs() <= 1.0);
    }

    #[test]
    fn fast_and_naive_dct_agree(x in prop::collection::vec(-10.0f64..10.0, 2..70)) {
        let a = dct1_naive(&x);
        let b = dct1_fast(&x);
        for (u, v) in a.iter().zip(&b) {
            prop_assert!((u - v).abs() < 1e-10);
        }
    }

    #[test]
    fn interpolation_is_linear(pv in small_params(), s in -3.0f64..3.0, seed in 0u64..1000) {
        let ip = Interpolator::new(&pv);
        let f = |k: usize, t: u64| ((k as f64 + 1.0) * (t as f64 * 0.37 + 0.11)).sin();
        let h1 = GridFunction::from_values(ip.nodes(), (0..ip.nodes().len()).map(|k| f(k, seed)).collect()).unwrap();
        let h2 = GridFunction::from_values(ip.nodes(), (0..ip.nodes().len()).map(|k| f(k, seed + 1)).collect()).unwrap();
        let mix = GridFunction::from_values(
            ip.nodes(),
            h1.values().iter().zip(h2.values()).map(|(a, b)| a + s * b).collect(),
        ).unwrap();
        for space in [Space::Plain, Space::Averaged] {
            let c1 = ip.coefficients_direct(&h1, space).unwrap();
            let c2 = ip.coefficients_direct(&h2, space).unwrap();
            let cm = ip.coefficients_direct(&mix, space).unwrap();
            for k in 0..cm.values.len() {
                prop_assert!((cm.values[k] - c1.values[k] - s * c2.values[k]).abs() < 1e-12);
            }
            let zero = GridFunction::from_fn(ip.nodes(), |_| 0.0);
            prop_assert!(ip.coefficients_dct(&zero, space, Default::default()).unwrap().values.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn averaged_coefficients_respect_class_signs(pv in small_params(), seed in 0u64..1000) {
        let ip = Interpolator::new(&pv);
        let h = GridFunction::from_fn(ip.nodes(), |i| ((i.iter().sum::<usize>() as f64) * 0.7 + seed as f64).cos());
        let c = ip.coefficients_dct(&h, Space::Averaged, Default::default()).unwrap();
        for cls in ip.classes().classes() {
            let rep = c.get(&cls.representative).unwrap();
            for (g, &s) in cls.members.iter().zip(&cls.signs) {
                prop_assert_eq!(c.get(g).unwrap(), s as f64 * rep);
            }
        }
    }

    #[test]
    fn interpolant_reproduces_data(pv in small_params(), seed in 0u64..1000) {
        let ip = Interpolator::new(&pv);
        let h = GridFunction::from_fn(ip.nodes(), |i| ((i.iter().enumerate().map(|(j, &v)| (j + 2) * v).sum::<usize>() as f64) * 0.3 + seed as f64).sin());
        for space in [Space::Plain, Space::Averaged] {
            let p = ip.interpolate(&h, space).unwrap();
            for (n, &v) in ip.nodes().nodes().iter().zip(h.values()) {
                prop_assert!((p.evaluate(&n.coords(&pv)).unwrap() - v).abs() < 1e-10);
            }
        }
    }
}
