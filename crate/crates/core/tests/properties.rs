//! Invariants checked against independent oracles and by randomized tests.

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use quotloc::blockform::{block_forms, p0_weight_system};
use quotloc::euler::{euler_class, euler_factors, inverse_series, is_unit_up_to};
use quotloc::flagint::{FlagIntegrator, FlagType, Lambda};
use quotloc::mirror::Localizer;
use quotloc::partitions::{
    admissible_pairs, all_components, component_dimension, distinguished_components, quot_dim, FixedComponent,
    PartitionSeq,
};
use quotloc::symalg::{rat, AlphaSeries, DegreeMeasure, MPoly, Monomial};
use quotloc::weights::{full_weight_system, wt1, wt1_via_generating_function, wt2, wt3, WeightMultiset};

fn seq(v: &[u32]) -> PartitionSeq {
    PartitionSeq::new(v.to_vec()).unwrap()
}

// ---------------------------------------------------------------- oracles

/// Every weakly increasing length-`len` sequence with entries `<= max`,
/// by filtering the full cartesian product.
fn brute_sequences(len: usize, max: u32) -> Vec<Vec<u32>> {
    (0..len)
        .map(|_| 0..=max)
        .multi_cartesian_product()
        .filter(|v| v.windows(2).all(|w| w[0] <= w[1]))
        .collect()
}

/// Partitions of `k` into at most `r` parts, by the recurrence
/// `p(k, r) = p(k, r-1) + p(k-r, r)`.
fn partition_count(k: i64, r: i64) -> u64 {
    if k == 0 {
        return 1;
    }
    if k < 0 || r == 0 {
        return 0;
    }
    partition_count(k, r - 1) + partition_count(k - r, r)
}

/// Multiplicities of the free-part weights straight from the run data:
/// `n_l + ... + n_j` on `[-b_j, -b_{j-1})`, `r` on `[-b_1, a_1]`,
/// `m_k + ... + m_j` on `(a_{j-1}, a_j]`, all times `n - r`.
fn wt3_closed_form(alpha: &PartitionSeq, beta: &PartitionSeq, n: usize) -> WeightMultiset {
    let r = alpha.len() as u64;
    let a = alpha.runs().runs;
    let b = beta.runs().runs;
    let mut out = WeightMultiset::new();
    let copies = (n as u64) - r;
    // every segment covers [-b_1, a_1]
    let (a1, b1) = (a[0].0 as i64, b[0].0 as i64);
    for mu in -b1..=a1 {
        out.insert(mu, r * copies);
    }
    for j in 1..a.len() {
        let tail: usize = a[j..].iter().map(|&(_, m)| m).sum();
        for mu in (a[j - 1].0 as i64 + 1)..=(a[j].0 as i64) {
            out.insert(mu, tail as u64 * copies);
        }
    }
    for j in 1..b.len() {
        let tail: usize = b[j..].iter().map(|&(_, m)| m).sum();
        for mu in -(b[j].0 as i64)..-(b[j - 1].0 as i64) {
            out.insert(mu, tail as u64 * copies);
        }
    }
    out
}

/// Compositions of `n` into positive parts.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn monomials_of_degree(n: usize, deg: u32) -> Vec<Vec<u32>> {
    (0..n)
        .map(|_| 0..=deg)
        .multi_cartesian_product()
        .filter(|v| v.iter().sum::<u32>() == deg)
        .collect()
}

/// Permutations of `1..=n` that only shuffle roots inside each block.
fn block_permutations(blocks: &[usize]) -> Vec<Vec<usize>> {
    let mut start = 1;
    let per_block: Vec<Vec<Vec<usize>>> = blocks
        .iter()
        .map(|&b| {
            let idx: Vec<usize> = (start..start + b).collect();
            start += b;
            idx.iter().copied().permutations(b).collect()
        })
        .collect();
    per_block
        .into_iter()
        .multi_cartesian_product()
        .map(|parts| parts.concat())
        .collect()
}

// ---------------------------------------------------------- partitions

#[test]
fn admissible_pairs_match_brute_force_and_count_formula() {
    for r in 1..=4usize {
        for d in 0..=6u64 {
            let seqs = brute_sequences(r, d as u32);
            let mut brute = Vec::new();
            for a in &seqs {
                for b in &seqs {
                    let s: u32 = a.iter().chain(b).sum();
                    if s as u64 == d {
                        brute.push((seq(a), seq(b)));
                    }
                }
            }
            brute.sort();
            let got = admissible_pairs(r, d);
            assert_eq!(got, brute, "r={r} d={d}");
            let formula: u64 = (0..=d as i64)
                .map(|k| partition_count(k, r as i64) * partition_count(d as i64 - k, r as i64))
                .sum();
            assert_eq!(got.len() as u64, formula, "r={r} d={d}");
        }
    }
}

#[test]
fn conjugation_is_an_involution_up_to_twelve_boxes() {
    for boxes in 0..=12u64 {
        for len in 1..=12usize {
            for p in quotloc::partitions::partitions_into(boxes, len) {
                let back = p.conjugate(len).conjugate(len);
                assert_eq!(back, p);
            }
        }
    }
}

#[test]
fn dimension_bound_and_equality_case() {
    for n in 1..=5 {
        for r in 1..=n {
            for d in 0..=4 {
                for c in all_components(n, r, d).unwrap() {
                    let base = (n - r) * r;
                    let dim = component_dimension(&c);
                    assert!(dim >= base);
                    let constant = c.alpha().is_constant() && c.beta().is_constant();
                    assert_eq!(dim == base, constant, "{}", c.label());
                }
            }
        }
    }
}

#[test]
fn distinguished_is_the_beta_zero_subset() {
    for n in 2..=5 {
        for r in 1..=n {
            for d in 0..=5 {
                let from_pairs: Vec<_> = all_components(n, r, d)
                    .unwrap()
                    .into_iter()
                    .filter(FixedComponent::is_distinguished)
                    .collect();
                assert_eq!(distinguished_components(n, r, d).unwrap(), from_pairs);
            }
        }
    }
}

// ------------------------------------------------------------- weights

#[test]
fn wt2_is_reflected_wt1_up_to_ten_boxes() {
    for boxes in 0..=10u64 {
        for len in 1..=10usize {
            for b in quotloc::partitions::partitions_into(boxes, len) {
                assert_eq!(wt2(&b), wt1(&b).negate(), "beta={b}");
            }
        }
    }
}

#[test]
fn generating_function_matches_intervals_up_to_seventeen_boxes() {
    for boxes in 0..=17u64 {
        for len in 1..=10usize {
            for a in quotloc::partitions::partitions_into(boxes, len) {
                assert_eq!(wt1_via_generating_function(&a), wt1(&a).nonzero_part(), "alpha={a}");
            }
        }
    }
}

#[test]
fn wt3_matches_closed_form_for_every_matching() {
    for n in 2..=5 {
        for r in 1..n {
            for d in 0..=4 {
                for c in all_components(n, r, d).unwrap() {
                    let expected = wt3_closed_form(c.alpha(), c.beta(), n);
                    for perm in (0..r).permutations(r) {
                        let got = wt3(c.alpha(), c.beta(), n, Some(&perm)).unwrap();
                        assert_eq!(got, expected, "{} perm={perm:?}", c.label());
                    }
                }
            }
        }
    }
}

#[test]
fn nonzero_weights_count_the_codimension() {
    for n in 2..=5 {
        for r in 1..n {
            for d in 0..=4 {
                for c in all_components(n, r, d).unwrap() {
                    let total = full_weight_system(&c).total();
                    let nonzero = total.cardinality() - total.multiplicity(0);
                    let codim = quot_dim(n, r, d).unwrap() - c.dimension() as u64;
                    assert_eq!(nonzero, codim, "{}", c.label());
                }
            }
        }
    }
}

// ----------------------------------------------------------- block forms

#[test]
fn block_forms_agree_with_interval_weights() {
    for n in 1..=6 {
        for r in 1..=n.min(4) {
            for d in 0..=8u64 {
                for c in distinguished_components(n, r, d).unwrap() {
                    let forms = block_forms(c.alpha(), n).unwrap();
                    let from_forms = WeightMultiset::from_pairs(
                        forms.forms().iter().map(|f| (f.w, f.cells.len() as u64)),
                    );
                    let expected = wt1(c.alpha()).union(&wt3(c.alpha(), c.beta(), n, None).unwrap());
                    assert_eq!(from_forms, expected, "{} n={n}", c.label());
                    assert_eq!(forms.get(0).map_or(0, |f| f.cells.len()), c.dimension());
                    assert_eq!(forms.total_cells() as u64, quot_dim(n, r, d).unwrap());
                    let a = c.alpha().parts();
                    for f in forms.forms() {
                        assert!(f.cells.iter().all_unique());
                        for &(i, j) in &f.cells {
                            let aj = a[j - 1] as i64;
                            let lower = if i <= r { aj - a[i - 1] as i64 } else { -1 };
                            assert!(lower < f.w && f.w <= aj, "cell ({i},{j}) in w={}", f.w);
                        }
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------- euler

#[test]
fn euler_factors_consistent_with_weights_and_block_forms() {
    for n in 1..=5 {
        for r in 1..=n {
            for d in 0..=6u64 {
                for c in distinguished_components(n, r, d).unwrap() {
                    let factors = euler_factors(c.alpha(), n).unwrap();
                    assert_eq!(factors.len(), c.codimension(), "{}", c.label());
                    let ws = WeightMultiset::from_pairs(factors.iter().map(|f| (f.w, 1)));
                    let expected = wt1(c.alpha())
                        .union(&wt3(c.alpha(), c.beta(), n, None).unwrap())
                        .nonzero_part();
                    assert_eq!(ws, expected);
                    let mut from_p0: Vec<(i64, usize, usize)> = p0_weight_system(c.alpha(), n)
                        .unwrap()
                        .into_iter()
                        .filter(|p| p.w != 0)
                        .map(|p| (p.w, p.i, p.j))
                        .collect();
                    let mut from_euler: Vec<(i64, usize, usize)> = factors.iter().map(|f| (f.w, f.i, f.j)).collect();
                    from_p0.sort();
                    from_euler.sort();
                    assert_eq!(from_p0, from_euler);
                }
            }
        }
    }
}

#[test]
fn euler_inverse_is_an_inverse() {
    for (a, n) in [(vec![0, 3], 3), (vec![3], 3), (vec![1, 2], 3), (vec![0, 1, 2], 4), (vec![2, 2], 4)] {
        let f = euler_factors(&seq(&a), n).unwrap();
        for cap in 0..=4 {
            let prod = inverse_series(&f, n, cap).unwrap().mul(&euler_class(&f, n), cap).unwrap();
            assert!(is_unit_up_to(&prod, cap), "alpha={a:?} cap={cap}");
        }
    }
}

#[test]
fn inverse_series_alpha_exponents_track_y_degree() {
    let f = euler_factors(&seq(&[0, 1, 3]), 4).unwrap();
    let inv = inverse_series(&f, 4, 5).unwrap();
    for (k, p) in inv.iter() {
        for (m, _) in p.terms() {
            assert_eq!(k, -(f.len() as i64) - m.y_degree() as i64);
        }
    }
}

#[test]
fn euler_class_has_block_symmetry() {
    for (a, n) in [(vec![0, 3], 3), (vec![3], 3), (vec![1, 1, 2], 5), (vec![0, 2, 2], 4)] {
        let c = FixedComponent::distinguished(seq(&a), n).unwrap();
        let e = euler_class(&euler_factors(c.alpha(), n).unwrap(), n);
        for perm in block_permutations(&c.flag_blocks()) {
            assert_eq!(e.permute_y(&perm).unwrap(), e, "alpha={a:?} perm={perm:?}");
        }
    }
}

// -------------------------------------------------------------- flagint

#[test]
fn lambda_independence_for_n_up_to_four() {
    let primary = FlagIntegrator::new(Lambda::Primary);
    let secondary = FlagIntegrator::new(Lambda::Secondary);
    for n in 1..=4 {
        for blocks in compositions(n) {
            let ft = FlagType::new(n, blocks).unwrap();
            for m in monomials_of_degree(n, ft.dimension() as u32) {
                assert_eq!(
                    primary.integrate_monomial(&ft, &m).unwrap(),
                    secondary.integrate_monomial(&ft, &m).unwrap(),
                    "{ft:?} {m:?}"
                );
            }
        }
    }
}

#[test]
fn elementary_symmetric_relations_integrate_to_zero() {
    let integ = FlagIntegrator::default();
    for n in [3usize, 4] {
        let ys: Vec<MPoly> = (1..=n).map(|i| MPoly::y(n, i)).collect();
        for blocks in compositions(n) {
            let ft = FlagType::new(n, blocks).unwrap();
            let dim = ft.dimension() as u32;
            for k in 1..=n {
                let sigma = ys
                    .iter()
                    .combinations(k)
                    .map(|c| c.into_iter().fold(MPoly::one(n), |acc, y| acc.mul(y).unwrap()))
                    .fold(MPoly::zero(n), |acc, t| acc.add(&t).unwrap());
                if (k as u32) > dim {
                    continue;
                }
                for g in monomials_of_degree(n, dim - k as u32) {
                    let gp = MPoly::term(Monomial::new(0, &g), rat(1, 1));
                    let f = AlphaSeries::from_poly(0, sigma.mul(&gp).unwrap());
                    assert!(integ.integrate_poly(&ft, &f).unwrap().is_zero(), "{ft:?} k={k} g={g:?}");
                }
            }
        }
    }
}

#[test]
fn integrals_are_block_symmetric() {
    let integ = FlagIntegrator::default();
    for blocks in [vec![1, 2], vec![2, 1, 1], vec![1, 1, 2], vec![2, 2]] {
        let n: usize = blocks.iter().sum();
        let ft = FlagType::new(n, blocks.clone()).unwrap();
        for m in monomials_of_degree(n, ft.dimension() as u32) {
            let base = integ.integrate_monomial(&ft, &m).unwrap();
            for perm in block_permutations(&blocks) {
                let mut pm = vec![0; n];
                for (i, &e) in m.iter().enumerate() {
                    pm[perm[i] - 1] = e;
                }
                assert_eq!(integ.integrate_monomial(&ft, &pm).unwrap(), base);
            }
        }
    }
}

#[test]
fn fl2_and_projective_plane_sanity() {
    let integ = FlagIntegrator::default();
    assert_eq!(integ.integrate_monomial(&FlagType::complete(2), &[1, 0]).unwrap(), rat(-1, 1));
    assert_eq!(integ.integrate_monomial(&FlagType::complete(2), &[0, 1]).unwrap(), rat(1, 1));
    // λ = (0,1,3), y1 -> each λ in turn: 0 + 1/((0-1)(3-1)) + 9/((0-3)(1-3))
    let p2 = FlagType::new(3, vec![1, 2]).unwrap();
    assert_eq!(integ.integrate_monomial(&p2, &[2, 0, 0]).unwrap(), rat(0, 1) + rat(-1, 2) + rat(3, 2));
}

#[test]
fn concurrent_memo_use_is_consistent() {
    let integ = std::sync::Arc::new(FlagIntegrator::default());
    let ft = FlagType::complete(4);
    let monos = monomials_of_degree(4, 6);
    let serial: Vec<_> = monos.iter().map(|m| FlagIntegrator::default().integrate_monomial(&ft, m).unwrap()).collect();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let integ = integ.clone();
            let ft = ft.clone();
            let monos = monos.clone();
            std::thread::spawn(move || {
                monos
                    .iter()
                    .map(|m| integ.integrate_monomial(&ft, m).unwrap())
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), serial);
    }
}

// --------------------------------------------------------------- mirror

#[test]
fn component_integrals_have_single_alpha_per_zeta_power() {
    let loc = Localizer::default();
    for n in 2..=4 {
        for r in 1..=n {
            for d in 0..=4 {
                for ci in loc.component_integrals(n, r, d).unwrap() {
                    let (dim, codim) = (ci.dim as i64, ci.codim as i64);
                    assert!(ci.value.iter().count() <= ci.dim + 1);
                    for (k, p) in ci.value.iter() {
                        assert_eq!(p.len(), 1);
                        let (m, _) = p.terms().next().unwrap();
                        assert_eq!(m.y_degree(), 0);
                        assert!(m.zeta() as i64 <= dim);
                        assert_eq!(k, -(codim + dim - m.zeta() as i64));
                    }
                }
            }
        }
    }
}

#[test]
fn integrands_are_block_symmetric() {
    let loc = Localizer::default();
    for (a, n) in [(vec![0, 3], 3), (vec![1, 1], 3), (vec![0, 0, 2], 4), (vec![2], 4)] {
        let alpha = seq(&a);
        let (c, integrand) = loc.component_integrand(&alpha, n, a.len()).unwrap();
        for perm in block_permutations(&c.flag_blocks()) {
            assert_eq!(integrand.permute_y(&perm).unwrap(), integrand, "alpha={a:?}");
        }
    }
}

#[test]
fn parallel_and_serial_agree() {
    let serial = Localizer::default();
    let parallel = Localizer::default().parallel(true);
    for (n, r, d) in [(3, 2, 3), (4, 2, 3), (4, 1, 2), (5, 2, 2)] {
        assert_eq!(serial.degree_total(n, r, d).unwrap(), parallel.degree_total(n, r, d).unwrap());
    }
}

#[test]
fn explicit_lambda_does_not_change_totals() {
    let base = Localizer::default();
    let other = Localizer::new(FlagIntegrator::new(Lambda::explicit(vec![-4, 9, 2, 17, 5]).unwrap()));
    for (n, r, d) in [(3, 2, 3), (4, 2, 2), (4, 1, 2)] {
        assert_eq!(base.degree_total(n, r, d).unwrap(), other.degree_total(n, r, d).unwrap());
    }
}

// -------------------------------------------------------------- symalg

fn arb_poly(nvars: usize) -> impl Strategy<Value = MPoly> {
    let term = (prop::collection::vec(0u32..=3, nvars), -6i64..=6, 1i64..=5);
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        MPoly::from_terms(
            nvars,
            terms
                .into_iter()
                .filter(|(e, _, _)| e.iter().sum::<u32>() <= 3)
                .map(|(e, p, q)| (Monomial::new(0, &e), rat(p, q))),
        )
        .unwrap()
    })
}

fn lowest_terms(p: &MPoly) -> bool {
    p.terms()
        .all(|(_, c)| c.denom().is_positive() && c.numer().gcd(c.denom()) == num_bigint::BigInt::from(1) && !c.is_zero())
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(4), b in arb_poly(4), c in arb_poly(4)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(lowest_terms(&a.mul(&b).unwrap().add(&c).unwrap()));
    }

    #[test]
    fn truncated_product_is_truncated_exact_product(a in arb_poly(3), b in arb_poly(3), cap in 0u32..=6) {
        prop_assert_eq!(
            a.mul_capped(&b, Some(cap), DegreeMeasure::Total).unwrap(),
            a.mul(&b).unwrap().truncate(cap, DegreeMeasure::Total)
        );
        prop_assert_eq!(
            a.mul_capped(&b, Some(cap), DegreeMeasure::Y).unwrap(),
            a.mul(&b).unwrap().truncate(cap, DegreeMeasure::Y)
        );
    }

    #[test]
    fn component_json_round_trips(alpha in prop::collection::vec(0u32..5, 1..4), extra in 0usize..3) {
        let (a, _) = PartitionSeq::from_unsorted(alpha);
        let n = a.len() + extra;
        let c = FixedComponent::distinguished(a, n).unwrap();
        let rec = c.record();
        let text = serde_json::to_string(&rec).unwrap();
        let back: quotloc::partitions::ComponentRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, rec);
        let ws = full_weight_system(&c);
        let text = serde_json::to_string(&ws).unwrap();
        let back: quotloc::weights::WeightSystem = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, ws);
    }
}
