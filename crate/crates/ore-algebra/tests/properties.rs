//! Cross-module invariants: field axioms, map laws at higher sample
//! counts, the coefficient-extraction view of ideals, and consistency
//! between the different non-simplicity detectors.

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ore_algebra::catalog;
use ore_algebra::ore::{AlgebraSpec, Degree, OrePoly};
use ore_algebra::scalar::{BaseField, Scalar};
use ore_algebra::simplicity::{self, CertProvider, Simplicity, WitnessOutcome};
use ore_algebra::structure::{self, TruncationBound};

fn rational() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=20)
        .prop_map(|(n, d)| Scalar::from_ratio(&BaseField::Q, n, d).expect("nonzero denominator"))
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            let inv = a.inverse().expect("nonzero scalar");
            prop_assert!((&a * &inv).is_one());
        }
    }

    #[test]
    fn fp_field_axioms(a in 0u64..7, b in 0u64..7, c in 0u64..7) {
        let f = BaseField::fp(7).unwrap();
        let (a, b, c) = (
            Scalar::from_i64(&f, a as i64),
            Scalar::from_i64(&f, b as i64),
            Scalar::from_i64(&f, c as i64),
        );
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn polynomial_normal_form_is_idempotent(coeffs in proptest::collection::vec(-9i64..=9, 0..8)) {
        let ring = ore_algebra::ring::RingDescriptor::polynomial(BaseField::Q, "y");
        let scalars: Vec<Scalar> = coeffs.iter().map(|&c| Scalar::from_i64(&BaseField::Q, c)).collect();
        let once = ring.from_poly(scalars);
        let twice = ring.from_poly(once.poly_coeffs().unwrap().to_vec());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn nullspace_vectors_annihilate(entries in proptest::collection::vec(-5i64..=5, 1..=36)) {
        let cols = 6usize.min(entries.len());
        let rows = entries.len() / cols;
        let data: Vec<Scalar> = entries[..rows * cols]
            .iter()
            .map(|&e| Scalar::from_i64(&BaseField::Q, e))
            .collect();
        let m = ore_algebra::linalg::Matrix::new(BaseField::Q, rows, cols, data);
        let ns = m.nullspace();
        prop_assert_eq!(m.rank() + ns.len(), cols);
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }
}

#[test]
fn twisted_leibniz_law_holds_on_500_pairs_per_catalog_entry() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut specs: Vec<Arc<AlgebraSpec>> = catalog::standard_catalog()
        .into_iter()
        .map(|(_, s)| s)
        .collect();
    specs.push(catalog::euler().unwrap());
    specs.push(catalog::eval0_shift().unwrap());
    specs.push(catalog::q_weyl_rational(BaseField::Q, 2).unwrap());
    for spec in &specs {
        let ring = spec.ring();
        let one = ring.one();
        assert_eq!(spec.sigma().apply(&one), one, "sigma fixes 1 in {spec}");
        assert!(spec.delta().apply(&one).is_zero(), "delta kills 1 in {spec}");
        let bound = 2;
        for _ in 0..500 {
            let a = ring.sample(&mut rng, bound);
            let b = ring.sample(&mut rng, bound);
            let lhs = spec.delta().apply(&(&a * &b));
            let rhs = &(&spec.sigma().apply(&a) * &spec.delta().apply(&b))
                + &(&spec.delta().apply(&a) * &b);
            assert_eq!(lhs, rhs, "twisted Leibniz in {spec}");
        }
    }
}

/// The n-th coefficients of a two-sided ideal are closed under the
/// derivation: if p has degree at most n, the commutator with x again lies
/// in the ideal and its n-th coefficient is delta of the original one.
#[test]
fn top_coefficients_of_an_ideal_are_derivation_closed() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for spec in [
        catalog::weyl(BaseField::Q).unwrap(),
        catalog::weyl(BaseField::fp(3).unwrap()).unwrap(),
        catalog::nilpotent_quotient_differential().unwrap(),
    ] {
        let x = OrePoly::x(&spec);
        for _ in 0..25 {
            // A sampled element of the two-sided ideal generated by b.
            let mut b = OrePoly::zero(&spec);
            while b.is_zero() {
                for _ in 0..2 {
                    let deg = rng.random_range(0..=2);
                    b = &b + &OrePoly::monomial(&spec, spec.ring().sample(&mut rng, 2), deg);
                }
            }
            let l = OrePoly::monomial(&spec, spec.ring().sample(&mut rng, 2), rng.random_range(0..=1));
            let r = OrePoly::monomial(&spec, spec.ring().sample(&mut rng, 2), rng.random_range(0..=1));
            let p = &(&l * &b) * &r;
            let Degree::Of(n) = p.degree() else { continue };
            let moved = &(&x * &p) - &(&p * &x);
            assert!(moved.degree() <= Degree::Of(n));
            assert_eq!(moved.coeff(n), spec.delta().apply(&p.coeff(n)));
        }
    }
}

#[test]
fn witness_search_on_the_quotient_ring_either_certifies_or_stalls_centrally() {
    let spec = catalog::nilpotent_quotient_differential().unwrap();
    let provider = CertProvider::for_spec(&spec).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let y = OrePoly::from_ring(&spec, spec.ring().var_elem().unwrap());
    let x = OrePoly::x(&spec);
    for _ in 0..60 {
        let mut b = OrePoly::zero(&spec);
        while b.is_zero() {
            for _ in 0..3 {
                let deg = rng.random_range(0..=3);
                b = &b + &OrePoly::monomial(&spec, spec.ring().sample(&mut rng, 1), deg);
            }
        }
        match simplicity::simplicity_witness(&spec, &b, provider).unwrap() {
            WitnessOutcome::Certificate(cert) => {
                assert!(simplicity::replay(&cert).is_one());
            }
            WitnessOutcome::Stall { central } => {
                assert!(central.degree() > Degree::Of(0));
                assert!(central.commutator(&y).is_zero());
                assert!(central.commutator(&x).is_zero());
            }
        }
    }
}

#[test]
fn non_simplicity_evidence_is_mutually_consistent() {
    // Invariant-ideal route: the Euler spec.
    let euler = catalog::euler().unwrap();
    let verdict = simplicity::is_delta_simple(&euler, 4);
    assert_eq!(verdict.simplicity, Simplicity::NotSimple);
    let evidence =
        simplicity::sigma_delta_ideal_extension(&euler, &verdict.witness.unwrap()).unwrap();
    assert!(evidence.one_excluded_exactly);
    let report = simplicity::main_theorem_report(&euler, &TruncationBound::new(3, 3)).unwrap();
    assert_eq!(report.conclusion, Simplicity::NotSimple);

    // Stall route: the characteristic-2 quotient.
    let f2q = catalog::nilpotent_quotient_differential().unwrap();
    let provider = CertProvider::for_spec(&f2q).unwrap();
    let x2 = OrePoly::x(&f2q).pow(2);
    let WitnessOutcome::Stall { central } =
        simplicity::simplicity_witness(&f2q, &x2, provider).unwrap()
    else {
        panic!("x^2 stalls");
    };
    let center = structure::center(&f2q, &TruncationBound::new(4, 1)).unwrap();
    assert!(center.basis.contains(&central), "the stall witness is reported central");
    let report = simplicity::main_theorem_report(&f2q, &TruncationBound::new(4, 1)).unwrap();
    assert_eq!(report.conclusion, Simplicity::NotSimple);
}

#[test]
fn centralizer_reports_serialize_deterministically() {
    let spec = catalog::weyl(BaseField::fp(3).unwrap()).unwrap();
    let a = structure::centralizer_of_r(&spec, &TruncationBound::new(3, 3)).unwrap();
    let b = structure::centralizer_of_r(&spec, &TruncationBound::new(3, 3)).unwrap();
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
}
