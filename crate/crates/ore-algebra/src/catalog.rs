//! Ready-made algebras used across the test suites and the CLI examples
//! runner: the Weyl algebra and its q-deformation, the quantum plane, the
//! sequence-shift skew ring, the nilpotent-quotient differential ring and
//! the Euler-derivation ring.

use std::sync::Arc;

use crate::error::Result;
use crate::maps::{DerivDescriptor, DerivKind, EndoDescriptor, EndoKind};
use crate::ore::AlgebraSpec;
use crate::ring::RingDescriptor;
use crate::scalar::{BaseField, Scalar};

/// k[y][x; id, d/dy].
pub fn weyl(base: BaseField) -> Result<Arc<AlgebraSpec>> {
    let ring = RingDescriptor::polynomial(base, "y");
    let sigma = EndoDescriptor::identity(&ring);
    let delta = DerivDescriptor::new(&ring, DerivKind::FormalDeriv, &sigma)?;
    AlgebraSpec::new(&ring, sigma, delta)
}

/// k[y][x; y -> q y, Jackson q-difference quotient].
pub fn q_weyl(base: BaseField, q: i64) -> Result<Arc<AlgebraSpec>> {
    let ring = RingDescriptor::polynomial(base, "y");
    let qs = Scalar::from_i64(&base, q);
    let sigma = EndoDescriptor::new(&ring, EndoKind::QScale { q: qs.clone() })?;
    let delta = DerivDescriptor::new(&ring, DerivKind::Jackson { q: qs }, &sigma)?;
    AlgebraSpec::new(&ring, sigma, delta)
}

/// k(y)[x; y -> q y, Jackson], the q-deformation over the rational
/// function field.
pub fn q_weyl_rational(base: BaseField, q: i64) -> Result<Arc<AlgebraSpec>> {
    let ring = RingDescriptor::rational_functions(base, "y");
    let qs = Scalar::from_i64(&base, q);
    let sigma = EndoDescriptor::new(&ring, EndoKind::QScale { q: qs.clone() })?;
    let delta = DerivDescriptor::new(&ring, DerivKind::Jackson { q: qs }, &sigma)?;
    AlgebraSpec::new(&ring, sigma, delta)
}

/// k[y][x; y -> q y, 0], the quantum plane.
pub fn quantum_plane(base: BaseField, q: i64) -> Result<Arc<AlgebraSpec>> {
    let ring = RingDescriptor::polynomial(base, "y");
    let qs = Scalar::from_i64(&base, q);
    let sigma = EndoDescriptor::new(&ring, EndoKind::QScale { q: qs })?;
    let delta = DerivDescriptor::zero(&ring, &sigma)?;
    AlgebraSpec::new(&ring, sigma, delta)
}

/// Eventually constant sequences with the shift endomorphism and zero
/// derivation; the skew ring whose coefficient ring is not a domain.
pub fn sequence_shift() -> Result<Arc<AlgebraSpec>> {
    let ring = RingDescriptor::sequences();
    let sigma = EndoDescriptor::new(&ring, EndoKind::SeqShift)?;
    let delta = DerivDescriptor::zero(&ring, &sigma)?;
    AlgebraSpec::new(&ring, sigma, delta)
}

/// F_2[y]/<y^2> with the induced d/dy; the coefficient ring is
/// derivation-simple yet the extension has the central element x^2.
pub fn nilpotent_quotient_differential() -> Result<Arc<AlgebraSpec>> {
    let f2 = BaseField::fp(2)?;
    let modulus = vec![Scalar::zero(&f2), Scalar::zero(&f2), Scalar::one(&f2)];
    let ring = RingDescriptor::quotient(f2, "y", modulus, None)?;
    let sigma = EndoDescriptor::identity(&ring);
    let delta = DerivDescriptor::new(&ring, DerivKind::QuotientFormalDeriv, &sigma)?;
    AlgebraSpec::new(&ring, sigma, delta)
}

/// Q[y][x; id, Euler derivation y d/dy]: maximal commutative coefficients
/// without derivation-simplicity.
pub fn euler() -> Result<Arc<AlgebraSpec>> {
    let ring = RingDescriptor::polynomial(BaseField::Q, "y");
    let sigma = EndoDescriptor::identity(&ring);
    let delta = DerivDescriptor::new(&ring, DerivKind::Euler, &sigma)?;
    AlgebraSpec::new(&ring, sigma, delta)
}

/// Q[y][x; eval-at-0, monomial shift]: the non-injective-twist example.
pub fn eval0_shift() -> Result<Arc<AlgebraSpec>> {
    let ring = RingDescriptor::polynomial(BaseField::Q, "y");
    let sigma = EndoDescriptor::new(&ring, EndoKind::Eval0)?;
    let delta = DerivDescriptor::new(&ring, DerivKind::MonomialShift, &sigma)?;
    AlgebraSpec::new(&ring, sigma, delta)
}

/// The seven standard algebras exercised by the axiom suite, with stable
/// names.
pub fn standard_catalog() -> Vec<(&'static str, Arc<AlgebraSpec>)> {
    vec![
        ("weyl_q", weyl(BaseField::Q).expect("catalog entry")),
        ("weyl_f3", weyl(BaseField::fp(3).expect("prime")).expect("catalog entry")),
        ("q_weyl_q2", q_weyl(BaseField::Q, 2).expect("catalog entry")),
        (
            "q_weyl_f7_q2",
            q_weyl(BaseField::fp(7).expect("prime"), 2).expect("catalog entry"),
        ),
        ("quantum_plane_q2", quantum_plane(BaseField::Q, 2).expect("catalog entry")),
        ("sequence_shift", sequence_shift().expect("catalog entry")),
        (
            "f2_quotient_diff",
            nilpotent_quotient_differential().expect("catalog entry"),
        ),
    ]
}
