//! Library results checked against independent brute-force computations.

use std::collections::{BTreeMap, BTreeSet};

use lcheb::arith::{crt_solve, lcm_vec, sharp_flat_decompose, validate_sharp_flat, ParamVec};
use lcheb::discrete::{chi, GridFunction};
use lcheb::lissajous::{
    classify_curves, curve_family, curves_equivalent, l_dagger, n_deg_closed_form, rho_dagger, rho_range,
    sample_curve, CurveSpec,
};
use lcheb::nodes::{cardinality_formula, decode, enumerate_index_set, face_cardinality_formula, NodeSet, Parity};
use lcheb::spectral::{class_decomposition, gamma_sets, SpectralIndex};
use lcheb::{Interpolator, Space};
use nalgebra::{DMatrix, DVector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const FAMILIES: &[(&[u64], &[i64])] = &[
    (&[10, 5], &[0, 0]),
    (&[10, 5], &[0, 1]),
    (&[4, 4], &[0, 0]),
    (&[4, 4], &[0, 1]),
    (&[5, 5], &[0, 0]),
    (&[5, 4, 2], &[0, 0, 1]),
    (&[4, 4, 4], &[0, 0, 0]),
    (&[5, 6], &[0, 0]),
    (&[3, 4, 5], &[0, 0, 0]),
    (&[6, 4], &[1, -1]),
    (&[6, 9], &[1, 0]),
    (&[2, 2, 2], &[0, 1, 1]),
    (&[1, 3], &[0, 0]),
    (&[8, 12, 6], &[1, 0, 0]),
];

fn families() -> impl Iterator<Item = ParamVec> {
    FAMILIES.iter().map(|(m, k)| ParamVec::new(m.to_vec(), k.to_vec()).unwrap())
}

/// Brute-force membership in `I_kappa` straight from the parity condition.
fn index_set_oracle(pv: &ParamVec) -> BTreeMap<Vec<usize>, u8> {
    let mut out = BTreeMap::new();
    let mut stack = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == pv.dim() {
            for r in 0..2i64 {
                if prefix.iter().enumerate().all(|(j, &i)| (i as i64 - pv.kappa()[j] + r).rem_euclid(2) == 0) {
                    out.insert(prefix.clone(), r as u8);
                }
            }
            continue;
        }
        for v in 0..=pv.m()[prefix.len()] as usize {
            let mut p = prefix.clone();
            p.push(v);
            stack.push(p);
        }
    }
    out
}

#[test]
fn lcm_by_scanning_multiples() {
    for m in [vec![5u64, 4, 2], vec![10, 5], vec![6, 10, 15], vec![7], vec![9, 12]] {
        let first = (1..).find(|l| m.iter().all(|v| l % v == 0)).unwrap();
        assert_eq!(lcm_vec(&m).unwrap(), first);
    }
}

#[test]
fn crt_by_full_scan() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..300 {
        let d = rng.random_range(1..=3);
        let k: Vec<u64> = (0..d).map(|_| rng.random_range(1..=12)).collect();
        let a: Vec<i64> = (0..d).map(|_| rng.random_range(-20..20)).collect();
        let l = lcm_vec(&k).unwrap();
        let sols: Vec<u64> =
            (0..l).filter(|x| k.iter().zip(&a).all(|(&ki, &ai)| (*x as i64 - ai).rem_euclid(ki as i64) == 0)).collect();
        match crt_solve(&k, &a) {
            Ok(x) => assert_eq!(sols, vec![x], "k={k:?} a={a:?}"),
            Err(_) => assert!(sols.is_empty(), "k={k:?} a={a:?}"),
        }
    }
}

#[test]
fn decomposition_examples_pass_validator() {
    for pv in families() {
        assert!(validate_sharp_flat(pv.m(), &sharp_flat_decompose(pv.m())));
    }
}

#[test]
fn sharp_residues_force_flat_multiples() {
    // k ≡ rho_i m_sharp_i (mod m_i) for all i implies rho_i ≡ 0 (mod m_flat_i)
    for m in [vec![10u64, 5], vec![4, 4], vec![6, 4], vec![4, 6, 3], vec![2, 2, 2]] {
        let sf = sharp_flat_decompose(&m);
        let l = lcm_vec(&m).unwrap();
        let rho_ranges: Vec<Vec<u64>> = m.iter().map(|&v| (0..v).collect()).collect();
        let mut rhos = vec![vec![]];
        for r in &rho_ranges {
            rhos = rhos.into_iter().flat_map(|p: Vec<u64>| r.iter().map(move |&v| [p.clone(), vec![v]].concat())).collect();
        }
        for rho in rhos {
            for k in 0..2 * l {
                let hit = (0..m.len()).all(|i| (k as i64 - (rho[i] * sf.m_sharp[i]) as i64).rem_euclid(m[i] as i64) == 0);
                if hit {
                    assert!((0..m.len()).all(|i| rho[i] % sf.m_flat[i] == 0), "m={m:?} rho={rho:?} k={k}");
                }
            }
        }
    }
}

#[test]
fn index_sets_match_parity_oracle() {
    for pv in families() {
        let oracle = index_set_oracle(&pv);
        let got: BTreeMap<Vec<usize>, u8> =
            enumerate_index_set(&pv, Parity::Both).into_iter().map(|n| (n.i, n.r)).collect();
        assert_eq!(got, oracle);
        for r in 0..2u8 {
            let set: Vec<&Vec<usize>> = oracle.iter().filter(|(_, &rr)| rr == r).map(|(i, _)| i).collect();
            assert_eq!(cardinality_formula(&pv, r), set.len() as u64);
            for face in 0..1u64 << pv.dim() {
                let count = set
                    .iter()
                    .filter(|i| {
                        (0..pv.dim()).all(|j| {
                            let interior = i[j] > 0 && (i[j] as u64) < pv.m()[j];
                            interior == (face >> j & 1 == 1)
                        })
                    })
                    .count();
                assert_eq!(face_cardinality_formula(&pv, face, r), count as u64, "{pv:?} face={face:b} r={r}");
            }
        }
    }
}

#[test]
fn decoded_nodes_lie_on_floating_curves() {
    for pv in families() {
        let sf = sharp_flat_decompose(pv.m());
        for c in curve_family(&pv, &sf) {
            for l in 0..2 * sf.sharp_product() {
                let i = decode(&pv, &sf, l, &c.rho).unwrap();
                let t = l as f64 * std::f64::consts::PI / pv.lcm() as f64;
                let x = c.point(&pv, t);
                for j in 0..pv.dim() {
                    let z = (i.i[j] as f64 * std::f64::consts::PI / pv.m()[j] as f64).cos();
                    assert!((x[j] - z).abs() < 1e-12, "{pv:?} rho={:?} l={l}", c.rho);
                }
            }
        }
    }
}

#[test]
fn decode_fibers_by_full_scan() {
    for pv in families().filter(|p| p.p() <= 500) {
        let sf = sharp_flat_decompose(pv.m());
        let nodes = NodeSet::new(&pv);
        let mut fibers: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for rho in rho_range(&sf) {
            for l in 0..2 * sf.sharp_product() {
                let n = decode(&pv, &sf, l, &rho).unwrap();
                assert_eq!(nodes.nodes()[nodes.position(&n.i).expect("decoded index is a node")].r, n.r);
                *fibers.entry(n.i).or_default() += 1;
            }
        }
        assert_eq!(fibers.len(), nodes.len());
        for n in nodes.nodes() {
            assert_eq!(fibers[&n.i], 1 << n.face_size(), "{pv:?} i={:?}", n.i);
        }
    }
}

#[test]
fn partner_from_congruence_scan() {
    // rho' is the partner of rho iff some k solves
    // k - 2 rho'_i s_i - kappa_i ≡ 2 rho_i s_i + kappa_i (mod 2 m_i) for all i
    for pv in families() {
        let sf = sharp_flat_decompose(pv.m());
        let period = 2 * lcm_vec(&pv.m().iter().map(|m| 2 * m).collect::<Vec<_>>()).unwrap();
        let rhos = rho_range(&sf);
        for rho in &rhos {
            let solving: Vec<&Vec<u64>> = rhos
                .iter()
                .filter(|rp| {
                    (0..period as i64).any(|k| {
                        (0..pv.dim()).all(|i| {
                            let s = sf.m_sharp[i] as i64;
                            let lhs = k - 2 * rp[i] as i64 * s - pv.kappa()[i];
                            let rhs = 2 * rho[i] as i64 * s + pv.kappa()[i];
                            (lhs - rhs).rem_euclid(2 * pv.m()[i] as i64) == 0
                        })
                    })
                })
                .collect();
            assert_eq!(solving, vec![&rho_dagger(&pv, &sf, rho)], "{pv:?} rho={rho:?}");
        }
        let ld = l_dagger(&pv, &sf);
        assert!(ld < sf.sharp_product());
        assert!((0..pv.dim()).all(|i| (ld as i64 - pv.kappa()[i]).rem_euclid(sf.m_sharp[i] as i64) == 0));
    }
}

#[test]
fn degeneracy_from_vertex_congruence() {
    // degenerate iff some h has h ≡ 2 rho_i s_i + kappa_i (mod m_i) for all i
    for pv in families() {
        let sf = sharp_flat_decompose(pv.m());
        let cc = classify_curves(&pv, &sf);
        let mut count = 0;
        for (k, rho) in rho_range(&sf).iter().enumerate() {
            let vertex = (0..2 * pv.lcm() as i64).any(|h| {
                (0..pv.dim()).all(|i| {
                    (h - 2 * rho[i] as i64 * sf.m_sharp[i] as i64 - pv.kappa()[i]).rem_euclid(pv.m()[i] as i64) == 0
                })
            });
            assert_eq!(vertex, cc.classes[cc.class_of[k]].degenerate(), "{pv:?} rho={rho:?}");
            count += usize::from(vertex);
        }
        assert_eq!(count as u64, n_deg_closed_form(&pv));
        // the vertex nodes, two per degenerate curve
        let corners = NodeSet::new(&pv).nodes().iter().filter(|n| n.face == 0).count();
        assert_eq!(corners as u64, 2 * cc.n_deg, "{pv:?}");
    }
}

#[test]
fn curve_images_equal_exactly_for_partners() {
    for pv in families() {
        let sf = sharp_flat_decompose(pv.m());
        let curves = curve_family(&pv, &sf);
        for a in &curves {
            for b in &curves {
                let expected = b.rho == a.rho || b.rho == rho_dagger(&pv, &sf, &a.rho);
                assert_eq!(curves_equivalent(&pv, a, b, 3), expected, "{pv:?} {:?} {:?}", a.rho, b.rho);
            }
        }
    }
}

#[test]
fn sampled_sets_are_parity_classes() {
    for pv in families() {
        let sf = sharp_flat_decompose(pv.m());
        let oracle = index_set_oracle(&pv);
        for r in 0..2u64 {
            let sampled: BTreeSet<Vec<usize>> = curve_family(&pv, &sf)
                .iter()
                .flat_map(|c: &CurveSpec| {
                    (0..2 * sf.sharp_product())
                        .filter(|l| l % 2 == r)
                        .map(|l| sample_curve(&pv, &sf, c, l).unwrap())
                        .collect::<Vec<_>>()
                })
                .collect();
            let want: BTreeSet<Vec<usize>> =
                oracle.iter().filter(|(_, &rr)| rr as u64 == r).map(|(i, _)| i.clone()).collect();
            assert_eq!(sampled, want);
        }
    }
}

#[test]
fn classes_match_chi_proportionality() {
    // Two members of Gamma_bar share a class iff their chi vectors are
    // parallel on the nodes.
    for pv in families() {
        let nodes = NodeSet::new(&pv);
        let cd = class_decomposition(&pv);
        let bar = gamma_sets(&pv).bar;
        let vecs: Vec<Vec<f64>> = bar
            .iter()
            .map(|g| nodes.nodes().iter().map(|n| chi(&pv, &g.0, &n.i)).collect())
            .collect();
        for a in 0..bar.len() {
            for b in 0..bar.len() {
                let dot: f64 = (0..nodes.len()).map(|k| vecs[a][k] * vecs[b][k] * nodes.weights()[k]).sum();
                let same = cd.class_id(&bar[a]) == cd.class_id(&bar[b]);
                assert_eq!(dot.abs() > 1e-9, same, "{pv:?} {} {}", bar[a], bar[b]);
                if same {
                    let s = lcheb::spectral::kappa_sign(&cd, &bar[a], &bar[b]).unwrap() as f64;
                    for k in 0..nodes.len() {
                        assert_eq!(vecs[b][k], s * vecs[a][k]);
                    }
                }
            }
        }
    }
}

/// `T_gamma(x)` from the trigonometric definition.
fn t_trig(g: &[usize], x: &[f64]) -> f64 {
    g.iter().zip(x).map(|(&n, &xj)| (n as f64 * xj.clamp(-1.0, 1.0).acos()).cos()).product()
}

/// Solves the interpolation conditions in the basis of plain or class-averaged
/// Chebyshev polynomials over the representative set.
fn vandermonde_coefficients(ip: &Interpolator, space: Space, h: &[f64]) -> BTreeMap<SpectralIndex, f64> {
    let pv = ip.params();
    let cd = ip.classes();
    let reps = cd.representatives();
    let coords: Vec<Vec<f64>> = ip.nodes().nodes().iter().map(|n| n.coords(pv)).collect();
    let n = coords.len();
    let basis = |rep: &SpectralIndex, x: &[f64]| match space {
        Space::Plain => t_trig(&rep.0, x),
        Space::Averaged => {
            let cls = cd.class_of(rep).unwrap();
            cls.members.iter().zip(&cls.signs).map(|(g, &s)| s as f64 * t_trig(&g.0, x)).sum::<f64>()
                / cls.len() as f64
        }
    };
    let a = DMatrix::from_fn(n, n, |r, c| basis(&reps[c], &coords[r]));
    let sol = a.lu().solve(&DVector::from_column_slice(h)).expect("nodes are unisolvent");
    reps.into_iter().zip(sol.iter().copied()).collect()
}

#[test]
fn coefficients_match_vandermonde_solve() {
    let mut rng = StdRng::seed_from_u64(11);
    for pv in families() {
        let ip = Interpolator::new(&pv);
        let h: Vec<f64> = (0..ip.nodes().len()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let hf = GridFunction::from_values(ip.nodes(), h.clone()).unwrap();
        for space in [Space::Plain, Space::Averaged] {
            let want = vandermonde_coefficients(&ip, space, &h);
            let got = ip.coefficients_direct(&hf, space).unwrap();
            for (g, c) in want {
                let diff = (got.get(&g).unwrap() - c).abs();
                assert!(diff < 1e-9, "{pv:?} {space:?} {g}: {diff:e}");
            }
        }
    }
}

#[test]
fn averaged_kernel_has_two_equal_forms() {
    let mut rng = StdRng::seed_from_u64(5);
    for pv in families() {
        let ip = Interpolator::new(&pv);
        for node in 0..ip.nodes().len() {
            let x: Vec<f64> = (0..pv.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let a = ip.fundamental(Space::Averaged, node, &x).unwrap();
            let b = ip.fundamental_averaged_by_representatives(node, &x).unwrap();
            assert!((a - b).abs() < 1e-12, "{pv:?} node {node}: {a} vs {b}");
        }
    }
}

#[test]
fn fundamental_sum_interpolates() {
    let mut rng = StdRng::seed_from_u64(3);
    for pv in families().take(6) {
        let ip = Interpolator::new(&pv);
        let values = (0..ip.nodes().len()).map(|_| rng.random_range(-2.0..2.0)).collect();
        let h = GridFunction::from_values(ip.nodes(), values).unwrap();
        for space in [Space::Plain, Space::Averaged] {
            let p = ip.interpolate(&h, space).unwrap();
            for _ in 0..5 {
                let x: Vec<f64> = (0..pv.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
                let a = p.evaluate(&x).unwrap();
                let b = ip.evaluate_by_fundamentals(&h, space, &x).unwrap();
                assert!((a - b).abs() < 1e-10 * (1.0 + a.abs()), "{pv:?} {space:?}");
            }
        }
    }
}
