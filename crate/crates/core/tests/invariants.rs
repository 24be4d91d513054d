use num::{BigInt, BigRational};
use proptest::prelude::*;
use qgraph::audit::{run_audit, AuditOptions, CorpusEntry, GraphSpec};
use qgraph::capacity::{
    canonical_channel, classical_protocol, confusability_graph, one_shot_capacity, protocol_from_independence_cert,
    residual_states, supermultiplicativity, verify_protocol,
};
use qgraph::combinatorics::{
    chromatic_number, clique_number, find_homomorphism, fractional_chromatic, independence_number, is_independent,
    Homomorphism,
};
use qgraph::graphs::{
    automorphisms, cartesian_product, complete, cycle, homomorphic_product, is_vertex_transitive, kneser,
};
use qgraph::numerics::{projector_rank, random_isometry, seeded_rng, Projector, Tolerances};
use qgraph::quantum::{
    cert_from_classical_hom, cert_to_independence_cert, compose_certificates, kneser_to_projective,
    omega_coloring_certificate, realify_certificate, verify, CERT_TOL,
};
use qgraph::theta::{lovasz_theta, theta_bar, vector_chromatic, SdpOptions, ThetaMode};
use qgraph::{Caps, Graph};

const TOL: f64 = 1e-4;

fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn vertex_transitive_targets() -> Vec<Graph> {
    vec![
        complete(2).unwrap(),
        complete(3).unwrap(),
        complete(4).unwrap(),
        cycle(5).unwrap(),
        cycle(7).unwrap(),
        kneser(5, 2).unwrap(),
    ]
}

fn q(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn odd_girth_by_walks(g: &Graph) -> Option<usize> {
    let n = g.n();
    let a = g.adjacency_matrix();
    let mut power = a.clone();
    let mul = |x: &[f64], y: &[f64]| {
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                if x[i * n + k] != 0.0 {
                    for j in 0..n {
                        out[i * n + j] += x[i * n + k] * y[k * n + j];
                    }
                }
            }
        }
        out
    };
    let a2 = mul(&a, &a);
    let mut k = 1;
    while k <= n {
        if (0..n).any(|i| power[i * n + i] > 0.0) {
            return Some(k);
        }
        power = mul(&power, &a2);
        k += 2;
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn alpha_is_omega_of_complement(g in graph(0, 10)) {
        let a = independence_number(&g).unwrap();
        prop_assert_eq!(a.value, clique_number(&g.complement()).unwrap().value);
        prop_assert!(is_independent(&g, &a.witness));
        prop_assert!(clique_number(&g).unwrap().value <= chromatic_number(&g).unwrap().value);
    }

    #[test]
    fn hom_iff_independent_transversal(x in graph(1, 6), y in graph(1, 4)) {
        let hom = find_homomorphism(&x, &y).unwrap();
        let alpha = independence_number(&homomorphic_product(&x, &y)).unwrap().value;
        prop_assert_eq!(hom.is_some(), alpha == x.n());
    }

    #[test]
    fn vizing(x in graph(1, 6), y in graph(1, 4)) {
        let ax = independence_number(&x).unwrap().value;
        let ay = independence_number(&y).unwrap().value;
        let a = independence_number(&cartesian_product(&x, &y)).unwrap().value;
        prop_assert!(a <= (ax * y.n()).min(ay * x.n()));
    }

    #[test]
    fn no_homomorphism_lemma(x in graph(1, 7), k in 0usize..6) {
        let y = &vertex_transitive_targets()[k];
        if find_homomorphism(&x, y).unwrap().is_some() {
            let (ax, ay) = (independence_number(&x).unwrap().value, independence_number(y).unwrap().value);
            prop_assert!(q(x.n(), ax) <= q(y.n(), ay));
        }
    }

    #[test]
    fn fractional_chromatic_bounds(g in graph(1, 7)) {
        let f = fractional_chromatic(&g).unwrap().value;
        let chi = chromatic_number(&g).unwrap().value;
        let alpha = independence_number(&g).unwrap().value;
        prop_assert!(f <= BigRational::from_integer(BigInt::from(chi)));
        prop_assert!(f >= q(g.n(), alpha));
        if is_vertex_transitive(&g).unwrap() {
            prop_assert_eq!(f, q(g.n(), alpha));
        }
    }

    #[test]
    fn odd_girth_is_shortest_odd_cycle(g in graph(1, 10)) {
        let og = g.odd_girth();
        prop_assert_eq!(og, odd_girth_by_walks(&g));
        if let Some(k) = og {
            prop_assert_eq!(k % 2, 1);
        }
    }

    #[test]
    fn automorphisms_form_a_group(g in graph(1, 7)) {
        let elems = automorphisms(&g).unwrap().elements(5040).unwrap();
        let set: std::collections::HashSet<Vec<usize>> = elems.iter().cloned().collect();
        prop_assert!(set.contains(&(0..g.n()).collect::<Vec<_>>()));
        for a in &elems {
            let mut inv = vec![0; g.n()];
            for (i, &j) in a.iter().enumerate() {
                inv[j] = i;
            }
            prop_assert!(set.contains(&inv));
            for b in elems.iter().take(8) {
                let ab: Vec<usize> = (0..g.n()).map(|i| a[b[i]]).collect();
                prop_assert!(set.contains(&ab));
            }
        }
    }

    #[test]
    fn orthogonal_ranks_add(seed in any::<u64>(), d in 2usize..=8, split in 0.0f64..1.0) {
        let mut rng = seeded_rng(seed);
        let k = 1 + ((d - 1) as f64 * split) as usize;
        let r1 = 1 + (k - 1) / 2;
        let u = random_isometry(d, k, &mut rng).unwrap();
        let p = Projector::from_orthonormal_columns(&u.select_columns(&(0..r1).collect::<Vec<_>>())).unwrap();
        let qm = Projector::from_orthonormal_columns(&u.select_columns(&(r1..k).collect::<Vec<_>>())).unwrap();
        let sum = p.matrix() + qm.matrix();
        prop_assert_eq!(projector_rank(&sum, &Tolerances::default()).unwrap(), p.rank() + qm.rank());
    }

    #[test]
    fn canonical_channel_round_trip(g in graph(1, 9)) {
        prop_assert_eq!(confusability_graph(&canonical_channel(&g)), g);
    }

    #[test]
    fn classical_protocols_match_independence(g in graph(1, 7), words in proptest::collection::vec(0usize..7, 1..4)) {
        let words: Vec<usize> = words.into_iter().map(|w| w % g.n()).collect();
        let p = classical_protocol(g.n(), &words).unwrap();
        let ok = verify_protocol(&p, &g, CERT_TOL).unwrap().ok;
        let beta = residual_states(&p);
        let mut gram_zero = true;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                for z in 0..g.n() {
                    for z2 in 0..g.n() {
                        if (z == z2 || g.has_edge(z, z2)) && (&beta[i][z] * &beta[j][z2]).trace().norm() > CERT_TOL {
                            gram_zero = false;
                        }
                    }
                }
            }
        }
        prop_assert_eq!(ok, gram_zero);
        let distinct: std::collections::BTreeSet<usize> = words.iter().copied().collect();
        prop_assert_eq!(ok, distinct.len() == words.len() && is_independent(&g, &words));
    }

    #[test]
    fn homomorphisms_give_protocols(x in graph(1, 5), k in 0usize..4) {
        let y = &vertex_transitive_targets()[k];
        if let Some(h) = find_homomorphism(&x, y).unwrap() {
            let ic = cert_to_independence_cert(&cert_from_classical_hom(&h).unwrap(), CERT_TOL).unwrap();
            let p = protocol_from_independence_cert(&ic, CERT_TOL).unwrap();
            prop_assert_eq!(p.messages(), x.n());
            prop_assert!(verify_protocol(&p, &homomorphic_product(&x, y), CERT_TOL).unwrap().ok);
        }
    }

    #[test]
    fn strong_powers_are_supermultiplicative(g in graph(1, 4)) {
        let (joint, product) = supermultiplicativity(&g, 1, 1, &Caps::default()).unwrap();
        prop_assert!(joint >= product);
    }

    #[test]
    fn kneser_representation_amplifies(k in 1usize..4) {
        let rep = kneser_to_projective(5, 2, CERT_TOL).unwrap();
        let big = rep.amplify(k, CERT_TOL).unwrap();
        prop_assert_eq!((big.d(), big.r()), (k * rep.d(), k * rep.r()));
        prop_assert_eq!(big.value(), rep.value());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sandwich(g in graph(1, 8)) {
        let tb = theta_bar(&g).unwrap().value;
        let omega = clique_number(&g).unwrap().value as f64;
        let chi = chromatic_number(&g).unwrap().value as f64;
        let f = fractional_chromatic(&g).unwrap().value_f64();
        prop_assert!(omega <= tb + TOL);
        prop_assert!(tb <= f + TOL);
        prop_assert!(f <= chi + TOL);
        let th = lovasz_theta(&g, ThetaMode::Equality).unwrap().value;
        prop_assert!(one_shot_capacity(&g).unwrap() as f64 <= (th + TOL).floor());
    }

    #[test]
    fn vector_chromatic_below_theta_bar(g in graph(1, 8)) {
        let opts = SdpOptions::default();
        let vec_chi = vector_chromatic(&g, &opts).unwrap().value;
        prop_assert!(vec_chi <= theta_bar(&g).unwrap().value + TOL);
    }

    #[test]
    fn deleting_an_edge_never_decreases_theta(g in graph(2, 8), pick in any::<prop::sample::Index>()) {
        let edges = g.edges();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let before = lovasz_theta(&g, ThetaMode::Equality).unwrap().value;
        let after = lovasz_theta(&g.without_edge(u, v), ThetaMode::Equality).unwrap().value;
        prop_assert!(after >= before - TOL);
    }
}

#[test]
fn composition_is_associative() {
    let caps = Caps::default();
    let k4 = complete(4).unwrap();
    let k5 = complete(5).unwrap();
    let c1 = omega_coloring_certificate(4, CERT_TOL, &caps).unwrap();
    let swap = Homomorphism::new(k4.clone(), k4.clone(), vec![1, 0, 3, 2]).unwrap();
    let c2 = realify_certificate(&cert_from_classical_hom(&swap).unwrap(), CERT_TOL).unwrap();
    let c3 = cert_from_classical_hom(&Homomorphism::new(k4, k5, vec![0, 1, 2, 4]).unwrap()).unwrap();
    let left = compose_certificates(&compose_certificates(&c1, &c2, CERT_TOL).unwrap(), &c3, CERT_TOL).unwrap();
    let right = compose_certificates(&c1, &compose_certificates(&c2, &c3, CERT_TOL).unwrap(), CERT_TOL).unwrap();
    assert!(verify(left.data(), CERT_TOL).ok);
    assert!(verify(right.data(), CERT_TOL).ok);
    assert_eq!(left.d(), right.d());
    for x in 0..16 {
        for z in 0..5 {
            assert_eq!(left.rank(x, z), right.rank(x, z));
        }
    }
}

#[test]
fn audit_rows_are_independent() {
    let entry = |name: &str, spec| CorpusEntry::new(name, spec);
    let c5 = entry("C5", GraphSpec::Cycle { n: 5 });
    let k3 = entry("K3", GraphSpec::Complete { n: 3 });
    let opts = AuditOptions::default();
    let alone = run_audit(&[c5.clone()], &opts).unwrap();
    let both = run_audit(&[k3, c5], &opts).unwrap();
    let strip = |row: &qgraph::audit::GraphRow| {
        let mut v = serde_json::to_value(row).unwrap();
        v.as_object_mut().unwrap().remove("seconds");
        v
    };
    assert_eq!(strip(&alone.rows[0]), strip(&both.rows[1]));
}
