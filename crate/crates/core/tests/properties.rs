use std::sync::Arc;

use fppck::chartab::character_table;
use fppck::cyclotomic::{euler_phi, rat, CyclotomicNumber, Rational};
use fppck::groups::{build_group, GroupKind};
use fppck::lefschetz::{order3_trace, order7_trace, SectionGroup};
use fppck::verify::{subrep_dims, SectionContext};
use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;

/// `Σ cᵢ ζ_n^{eᵢ}` with small rational coefficients.
fn element(max_order: usize) -> impl Strategy<Value = (usize, Vec<(i64, i64, i64)>)> {
    (1..=max_order).prop_flat_map(|n| {
        let terms = prop::collection::vec((-6i64..=6, 1i64..=4, 0..n as i64), 0..6);
        (Just(n), terms)
    })
}

fn build(n: usize, terms: &[(i64, i64, i64)]) -> CyclotomicNumber {
    terms
        .iter()
        .map(|&(p, q, e)| CyclotomicNumber::root_of_unity(n, e).unwrap().scale(&rat(p, q)))
        .sum()
}

fn float(n: usize, terms: &[(i64, i64, i64)]) -> Complex64 {
    terms
        .iter()
        .map(|&(p, q, e)| Complex64::from_polar(p as f64 / q as f64, std::f64::consts::TAU * e as f64 / n as f64))
        .sum()
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_unique((n, terms) in element(40)) {
        let x = build(n, &terms);
        prop_assert_eq!(x.coeffs().len(), euler_phi(x.order()));
        let rebuilt = CyclotomicNumber::new(x.order(), x.coeffs().to_vec()).unwrap();
        prop_assert_eq!(rebuilt.coeffs(), x.coeffs());
        // the same element written in a larger field normalizes back
        let lifted = x.lift(x.order() * 2);
        prop_assert_eq!(&lifted, &x);
        prop_assert!(close(lifted.embed_complex(15), x.embed_complex(15), 1e-9));
    }

    #[test]
    fn embedding_is_a_ring_homomorphism((n, s, t) in element(63).prop_flat_map(|(n, s)| {
        let t = prop::collection::vec((-6i64..=6, 1i64..=4, 0..n as i64), 0..6);
        (Just(n), Just(s), t)
    })) {
        let (x, y) = (build(n, &s), build(n, &t));
        let (fx, fy) = (float(n, &s), float(n, &t));
        prop_assert!(close((&x + &y).embed_complex(15), fx + fy, 1e-9));
        prop_assert!(close((&x * &y).embed_complex(15), fx * fy, 1e-9));
        if !y.is_zero() {
            let q = x.checked_div(&y).unwrap();
            prop_assert_eq!(&(&q * &y), &x);
        }
    }

    #[test]
    fn galois_action_composes((n, terms) in element(30), a in 1i64..60, b in 1i64..60) {
        let x = build(n, &terms);
        let order = x.order() as i64;
        prop_assume!(a.gcd(&order) == 1 && b.gcd(&order) == 1);
        let ab = x.galois_conjugate(a).unwrap().galois_conjugate(b).unwrap();
        prop_assert_eq!(ab, x.galois_conjugate(a * b).unwrap());
        // σ_a is a field automorphism
        let y = &x * &x + CyclotomicNumber::from(3);
        prop_assert_eq!(
            y.galois_conjugate(a).unwrap(),
            x.galois_conjugate(a).unwrap().pow(2).unwrap() + CyclotomicNumber::from(3)
        );
    }

    #[test]
    fn display_round_trips((n, terms) in element(30)) {
        let x = build(n, &terms);
        let parsed: CyclotomicNumber = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed, x);
    }

    #[test]
    fn rational_coefficients_survive_serde(p in -1000i64..1000, q in 1i64..1000) {
        let x = CyclotomicNumber::from(Rational::new(p.into(), q.into()));
        let text = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<CyclotomicNumber>(&text).unwrap(), x);
    }
}

fn group_kinds() -> Vec<GroupKind> {
    vec![
        GroupKind::Heisenberg3,
        GroupKind::G21,
        GroupKind::Mu3xG21,
        GroupKind::Abelian(vec![3, 3]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompose_inverts_reconstruct(kind in prop::sample::select(group_kinds()), seed in prop::collection::vec(-5i64..=5, 15)) {
        let table = character_table(&Arc::new(build_group(kind).unwrap())).unwrap();
        let m = &seed[..table.len()];
        let d = table.decompose(&table.reconstruct(m)).unwrap();
        prop_assert_eq!(d.multiplicities.as_slice(), m);
        prop_assert_eq!(d.is_virtual, m.iter().any(|&x| x < 0));
    }

    #[test]
    fn traces_depend_on_residues(k in -200i64..200, a in 1i64..7) {
        prop_assert_eq!(order3_trace(k), order3_trace(k.rem_euclid(3)));
        prop_assert_eq!(order7_trace(k, a).unwrap(), order7_trace(k.rem_euclid(7), a).unwrap());
    }
}

#[test]
fn subrep_dims_contain_zero_and_total() {
    for kind in [SectionGroup::Heisenberg3, SectionGroup::Mu3xG21] {
        let ctx = SectionContext::new(kind).unwrap();
        for k in 4..16 {
            let d = ctx.decompose(k, 0).unwrap();
            let dims = subrep_dims(&d).unwrap();
            assert!(dims.contains(&0));
            assert!(dims.contains(&d.dimension()));
        }
    }
}

#[test]
fn section_characters_are_honest_and_central() {
    for kind in [SectionGroup::Heisenberg3, SectionGroup::Mu3xG21] {
        let ctx = SectionContext::new(kind).unwrap();
        for k in 4..100 {
            let sc = ctx.character(k, 0).unwrap();
            let d = ctx.table.decompose(&sc.character).unwrap();
            assert!(!d.is_virtual, "{kind} k={k}");
            assert_eq!(d.dimension(), (k - 1) * (k - 2) / 2);
            for (irr, &mult) in ctx.table.irreducibles().iter().zip(&d.multiplicities) {
                if mult != 0 {
                    let j = fppck::chartab::central_exponent(irr).unwrap() as i64;
                    assert_eq!(j, k.rem_euclid(3), "{} in k={k}", irr.name);
                }
            }
        }
    }
}
