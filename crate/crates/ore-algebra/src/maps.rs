//! Ring endomorphisms and twisted derivations on the supported
//! coefficient rings.
//!
//! Both kinds of map are validated at construction: unit preservation,
//! additivity and multiplicativity for endomorphisms, and the twisted
//! Leibniz law `d(ab) = s(a) d(b) + d(a) b` for derivations, each checked
//! on the ring generators and on at least a hundred deterministic random
//! pairs. Validation failures are construction errors, never latent bugs.

use std::fmt;
use std::sync::Arc;

use num::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{OreError, Result};
use crate::poly;
use crate::ring::{RingDescriptor, RingElement, RingKind};
use crate::scalar::{BaseField, Scalar};

const VALIDATION_SEED: u64 = 0x04ea15;
const VALIDATION_PAIRS: usize = 100;

/// Endomorphism catalog.
#[derive(Clone, Debug, PartialEq)]
pub enum EndoKind {
    /// The identity map.
    Identity,
    /// y -> q*y extended as a ring homomorphism (an automorphism for q != 0).
    QScale { q: Scalar },
    /// The sequence shift: s(f)(0) = f(0), s(f)(n) = f(n-1) for n > 0.
    SeqShift,
    /// Evaluation at zero: p(y) -> p(0).
    Eval0,
}

impl EndoKind {
    pub fn name(&self) -> &'static str {
        match self {
            EndoKind::Identity => "identity",
            EndoKind::QScale { .. } => "q_scale",
            EndoKind::SeqShift => "seq_shift",
            EndoKind::Eval0 => "eval0",
        }
    }
}

/// A validated ring endomorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct EndoDescriptor {
    ring: Arc<RingDescriptor>,
    kind: EndoKind,
}

impl EndoDescriptor {
    pub fn new(ring: &Arc<RingDescriptor>, kind: EndoKind) -> Result<EndoDescriptor> {
        let compatible = match (&kind, ring.kind()) {
            (EndoKind::Identity, _) => true,
            (EndoKind::QScale { .. }, RingKind::Polynomial { .. }) => true,
            (EndoKind::QScale { .. }, RingKind::RationalFunctions { .. }) => true,
            (EndoKind::SeqShift, RingKind::Sequences) => true,
            (EndoKind::Eval0, RingKind::Polynomial { .. }) => true,
            _ => false,
        };
        if !compatible {
            return Err(OreError::Incompatible(format!(
                "endomorphism {} is not defined on {ring}",
                kind.name()
            )));
        }
        if let EndoKind::QScale { q } = &kind {
            if q.field() != ring.base() {
                return Err(OreError::Incompatible(
                    "q must lie in the base field".into(),
                ));
            }
            if q.is_zero() {
                return Err(OreError::InvalidConstruction("q_scale requires q != 0".into()));
            }
        }
        let endo = EndoDescriptor { ring: Arc::clone(ring), kind };
        endo.validate()?;
        Ok(endo)
    }

    pub fn identity(ring: &Arc<RingDescriptor>) -> EndoDescriptor {
        EndoDescriptor::new(ring, EndoKind::Identity).expect("identity is always valid")
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn kind(&self) -> &EndoKind {
        &self.kind
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.kind, EndoKind::Identity)
    }

    pub fn apply(&self, r: &RingElement) -> RingElement {
        assert!(r.ring() == &self.ring, "endomorphism applied to a foreign element");
        let field = self.ring.base();
        match &self.kind {
            EndoKind::Identity => r.clone(),
            EndoKind::QScale { q } => match self.ring.kind() {
                RingKind::Polynomial { .. } => {
                    self.ring.from_poly(poly::scale_var(r.poly_coeffs().unwrap(), q))
                }
                RingKind::RationalFunctions { .. } => {
                    let (num, den) = r.ratfn_parts().unwrap();
                    self.ring
                        .ratfn(poly::scale_var(num, q), poly::scale_var(den, q))
                        .expect("substitution keeps the denominator nonzero")
                }
                _ => unreachable!("validated at construction"),
            },
            EndoKind::SeqShift => {
                let (prefix, tail) = r.seq_parts().unwrap();
                if prefix.is_empty() {
                    return r.clone();
                }
                let mut shifted = Vec::with_capacity(prefix.len() + 1);
                shifted.push(prefix[0].clone());
                shifted.extend(prefix.iter().cloned());
                self.ring.seq(shifted, tail.clone())
            }
            EndoKind::Eval0 => {
                let c = r.poly_coeffs().unwrap();
                let value = c.first().cloned().unwrap_or_else(|| Scalar::zero(&field));
                self.ring.from_scalar(value)
            }
        }
    }

    /// Inverse descriptor, when the map is an automorphism of the catalog.
    pub fn inverse(&self) -> Option<EndoDescriptor> {
        match &self.kind {
            EndoKind::Identity => Some(self.clone()),
            EndoKind::QScale { q } => {
                let qi = q.inverse()?;
                EndoDescriptor::new(&self.ring, EndoKind::QScale { q: qi }).ok()
            }
            _ => None,
        }
    }

    /// Smallest n in 1..=max_n with s^n = identity on the probe set
    /// (generators where available, which suffices for the generated
    /// algebra), or `None`.
    pub fn order_probe(&self, max_n: usize) -> Option<usize> {
        let probes = self.probe_elements();
        let mut images = probes.clone();
        for n in 1..=max_n {
            images = images.iter().map(|e| self.apply(e)).collect();
            if images == probes {
                return Some(n);
            }
        }
        None
    }

    /// Known or sampled nonzero kernel elements.
    pub fn kernel_probe(&self, samples: usize) -> Vec<RingElement> {
        if let EndoKind::Eval0 = self.kind {
            return vec![self.ring.var_elem().expect("polynomial ring")];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
        let mut found = Vec::new();
        for _ in 0..samples {
            let r = self.ring.sample(&mut rng, 4);
            if !r.is_zero() && self.apply(&r).is_zero() {
                found.push(r);
            }
        }
        found
    }

    fn probe_elements(&self) -> Vec<RingElement> {
        let mut probes = self.ring.generators().unwrap_or_else(|_| {
            // The sequence ring: use the indicator of {0} and a second
            // indicator as structure-revealing probes.
            let q = BaseField::Q;
            vec![
                self.ring.seq(vec![Scalar::one(&q)], Scalar::zero(&q)),
                self.ring
                    .seq(vec![Scalar::zero(&q), Scalar::one(&q)], Scalar::zero(&q)),
            ]
        });
        probes.push(self.ring.one());
        let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED ^ 0x5eed);
        for _ in 0..4 {
            probes.push(self.ring.sample(&mut rng, 3));
        }
        probes
    }

    fn validate(&self) -> Result<()> {
        let one = self.ring.one();
        if self.apply(&one) != one {
            return Err(OreError::LawViolation(format!(
                "{} does not fix 1 on {}",
                self.kind.name(),
                self.ring
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
        let gens = self.probe_elements();
        let mut pairs: Vec<(RingElement, RingElement)> = Vec::new();
        for a in &gens {
            for b in &gens {
                pairs.push((a.clone(), b.clone()));
            }
        }
        while pairs.len() < VALIDATION_PAIRS + gens.len() * gens.len() {
            pairs.push((self.ring.sample(&mut rng, 4), self.ring.sample(&mut rng, 4)));
        }
        for (a, b) in &pairs {
            let add_ok = self.apply(&(a + b)) == &self.apply(a) + &self.apply(b);
            let mul_ok = self.apply(&(a * b)) == &self.apply(a) * &self.apply(b);
            if !add_ok || !mul_ok {
                return Err(OreError::LawViolation(format!(
                    "{} is not a ring homomorphism on {} (witness a={a}, b={b})",
                    self.kind.name(),
                    self.ring
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for EndoDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            EndoKind::QScale { q } => write!(f, "q_scale(q={q})"),
            k => write!(f, "{}", k.name()),
        }
    }
}

/// Derivation catalog.
#[derive(Clone, Debug, PartialEq)]
pub enum DerivKind {
    /// The zero map.
    Zero,
    /// Formal derivative d/dy on k[y] or k(y).
    FormalDeriv,
    /// The q-difference quotient p -> (p(qy) - p(y)) / (qy - y), paired
    /// with the q-scale endomorphism.
    Jackson { q: Scalar },
    /// The derivation with d(y) = y extended by the Leibniz rule.
    Euler,
    /// d(r) = a*r - s(r)*a for a stored element a.
    Inner { a: RingElement },
    /// The derivation on k[y]/<f> induced by d/dy; requires d/dy(f) in <f>.
    QuotientFormalDeriv,
    /// d(y^l) = y^(l-1), d(c) = 0; a derivation twisted by evaluation at 0.
    MonomialShift,
}

impl DerivKind {
    pub fn name(&self) -> &'static str {
        match self {
            DerivKind::Zero => "zero",
            DerivKind::FormalDeriv => "d_dy",
            DerivKind::Jackson { .. } => "jackson",
            DerivKind::Euler => "euler",
            DerivKind::Inner { .. } => "inner",
            DerivKind::QuotientFormalDeriv => "quotient_d_dy",
            DerivKind::MonomialShift => "monomial_shift",
        }
    }
}

/// A validated twisted derivation, stored together with its twist.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivDescriptor {
    ring: Arc<RingDescriptor>,
    kind: DerivKind,
    sigma: EndoDescriptor,
}

impl DerivDescriptor {
    pub fn new(
        ring: &Arc<RingDescriptor>,
        kind: DerivKind,
        sigma: &EndoDescriptor,
    ) -> Result<DerivDescriptor> {
        if sigma.ring() != ring {
            return Err(OreError::Incompatible(
                "derivation and twist live on different rings".into(),
            ));
        }
        match (&kind, ring.kind()) {
            (DerivKind::Zero, _) => {}
            (DerivKind::FormalDeriv, RingKind::Polynomial { .. })
            | (DerivKind::FormalDeriv, RingKind::RationalFunctions { .. }) => {
                if !sigma.is_identity() {
                    return Err(OreError::Incompatible(
                        "d_dy must be paired with the identity twist".into(),
                    ));
                }
            }
            (DerivKind::Jackson { q }, RingKind::Polynomial { .. })
            | (DerivKind::Jackson { q }, RingKind::RationalFunctions { .. }) => {
                match sigma.kind() {
                    EndoKind::QScale { q: sq } if sq == q => {}
                    _ => {
                        return Err(OreError::Incompatible(
                            "jackson must be paired with q_scale for the same q".into(),
                        ))
                    }
                }
                if q.is_one() {
                    return Err(OreError::InvalidConstruction(
                        "jackson requires q != 1".into(),
                    ));
                }
            }
            (DerivKind::Euler, RingKind::Polynomial { .. }) => {
                if !sigma.is_identity() {
                    return Err(OreError::Incompatible(
                        "euler must be paired with the identity twist".into(),
                    ));
                }
            }
            (DerivKind::Inner { a }, _) => {
                if a.ring() != ring {
                    return Err(OreError::Incompatible(
                        "inner derivation element must lie in the coefficient ring".into(),
                    ));
                }
            }
            (DerivKind::QuotientFormalDeriv, RingKind::Quotient { modulus, .. }) => {
                if !sigma.is_identity() {
                    return Err(OreError::Incompatible(
                        "quotient_d_dy must be paired with the identity twist".into(),
                    ));
                }
                // d/dy descends exactly when the modulus divides its own
                // derivative.
                let field = ring.base();
                let df = poly::derivative(&field, modulus);
                if !poly::rem(&field, &df, modulus).is_empty() {
                    return Err(OreError::InvalidConstruction(format!(
                        "d/dy does not descend to {ring}: modulus does not divide its derivative"
                    )));
                }
            }
            (DerivKind::MonomialShift, RingKind::Polynomial { .. }) => {
                if !matches!(sigma.kind(), EndoKind::Eval0) {
                    return Err(OreError::Incompatible(
                        "monomial_shift must be paired with eval0".into(),
                    ));
                }
            }
            _ => {
                return Err(OreError::Incompatible(format!(
                    "derivation {} is not defined on {ring}",
                    kind.name()
                )))
            }
        }
        let deriv = DerivDescriptor { ring: Arc::clone(ring), kind, sigma: sigma.clone() };
        deriv.validate()?;
        Ok(deriv)
    }

    pub fn zero(ring: &Arc<RingDescriptor>, sigma: &EndoDescriptor) -> Result<DerivDescriptor> {
        DerivDescriptor::new(ring, DerivKind::Zero, sigma)
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn kind(&self) -> &DerivKind {
        &self.kind
    }

    pub fn sigma(&self) -> &EndoDescriptor {
        &self.sigma
    }

    pub fn is_zero_kind(&self) -> bool {
        matches!(self.kind, DerivKind::Zero)
    }

    pub fn apply(&self, r: &RingElement) -> RingElement {
        assert!(r.ring() == &self.ring, "derivation applied to a foreign element");
        let field = self.ring.base();
        match &self.kind {
            DerivKind::Zero => self.ring.zero(),
            DerivKind::FormalDeriv => match self.ring.kind() {
                RingKind::Polynomial { .. } => {
                    self.ring.from_poly(poly::derivative(&field, r.poly_coeffs().unwrap()))
                }
                RingKind::RationalFunctions { .. } => {
                    let (num, den) = r.ratfn_parts().unwrap();
                    let dn = poly::derivative(&field, num);
                    let dd = poly::derivative(&field, den);
                    let top = poly::sub(
                        &field,
                        &poly::mul(&field, &dn, den),
                        &poly::mul(&field, num, &dd),
                    );
                    let bottom = poly::mul(&field, den, den);
                    self.ring.ratfn(top, bottom).expect("square denominator is nonzero")
                }
                _ => unreachable!("validated at construction"),
            },
            DerivKind::Jackson { q } => match self.ring.kind() {
                RingKind::Polynomial { .. } => {
                    let c = r.poly_coeffs().unwrap();
                    let numerator = poly::sub(&field, &poly::scale_var(c, q), c);
                    // (p(qy) - p(y)) always has zero constant term, and the
                    // division by (q - 1) y is exact for polynomials.
                    let shifted = poly::shift_down(&numerator);
                    let qm1_inv = (q - &Scalar::one(&field)).inverse().expect("q != 1");
                    self.ring.from_poly(poly::scale(&shifted, &qm1_inv))
                }
                RingKind::RationalFunctions { .. } => {
                    let sr = self.sigma.apply(r);
                    let diff = &sr - r;
                    let y = self.ring.var_elem().expect("rational function field");
                    let qm1 = self.ring.from_scalar(q - &Scalar::one(&field));
                    let denom = &qm1 * &y;
                    &diff * &denom.inverse().expect("(q-1)y is nonzero")
                }
                _ => unreachable!("validated at construction"),
            },
            DerivKind::Euler => {
                let c = r.poly_coeffs().unwrap();
                let scaled: Vec<Scalar> = c
                    .iter()
                    .enumerate()
                    .map(|(i, ci)| &Scalar::from_i64(&field, i as i64) * ci)
                    .collect();
                self.ring.from_poly(scaled)
            }
            DerivKind::Inner { a } => &(a * r) - &(&self.sigma.apply(r) * a),
            DerivKind::QuotientFormalDeriv => {
                self.ring.from_poly(poly::derivative(&field, r.poly_coeffs().unwrap()))
            }
            DerivKind::MonomialShift => {
                let c = r.poly_coeffs().unwrap();
                if c.len() <= 1 {
                    self.ring.zero()
                } else {
                    self.ring.from_poly(c[1..].to_vec())
                }
            }
        }
    }

    /// Iterated application; only meaningful with the identity twist.
    pub fn power(&self, n: usize, r: &RingElement) -> Result<RingElement> {
        if !self.sigma.is_identity() {
            return Err(OreError::Unsupported(
                "iterated derivations require the identity twist".into(),
            ));
        }
        let mut acc = r.clone();
        for _ in 0..n {
            acc = self.apply(&acc);
        }
        Ok(acc)
    }

    fn validate(&self) -> Result<()> {
        let one = self.ring.one();
        if !self.apply(&one).is_zero() {
            return Err(OreError::LawViolation(format!(
                "{} does not annihilate 1 on {}",
                self.kind.name(),
                self.ring
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED ^ 0xde17a);
        let gens = self.sigma.probe_elements();
        let mut pairs: Vec<(RingElement, RingElement)> = Vec::new();
        for a in &gens {
            for b in &gens {
                pairs.push((a.clone(), b.clone()));
            }
        }
        while pairs.len() < VALIDATION_PAIRS + gens.len() * gens.len() {
            pairs.push((self.ring.sample(&mut rng, 4), self.ring.sample(&mut rng, 4)));
        }
        for (a, b) in &pairs {
            let add_ok = self.apply(&(a + b)) == &self.apply(a) + &self.apply(b);
            let leibniz = &(&self.sigma.apply(a) * &self.apply(b)) + &(&self.apply(a) * b);
            if !add_ok || self.apply(&(a * b)) != leibniz {
                return Err(OreError::LawViolation(format!(
                    "{} is not a {}-derivation on {} (witness a={a}, b={b})",
                    self.kind.name(),
                    self.sigma,
                    self.ring
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for DerivDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DerivKind::Jackson { q } => write!(f, "jackson(q={q})"),
            DerivKind::Inner { a } => write!(f, "inner(a={a})"),
            k => write!(f, "{}", k.name()),
        }
    }
}

/// Binomial coefficient computed in the integers, then mapped through the
/// characteristic of the target field.
pub fn binomial_in(field: &BaseField, n: usize, k: usize) -> Scalar {
    if k > n {
        return Scalar::zero(field);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Scalar::from_bigint(field, &acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qy() -> Arc<RingDescriptor> {
        RingDescriptor::polynomial(BaseField::Q, "y")
    }

    fn scalar(n: i64) -> Scalar {
        Scalar::from_i64(&BaseField::Q, n)
    }

    #[test]
    fn q_scale_doubles_coordinates() {
        let r = qy();
        let sigma = EndoDescriptor::new(&r, EndoKind::QScale { q: scalar(2) }).unwrap();
        let y = r.var_elem().unwrap();
        let y2 = &y * &y;
        assert_eq!(sigma.apply(&y2), &r.from_i64(4) * &y2);
        assert_eq!(EndoDescriptor::identity(&r).apply(&y2), y2);
    }

    #[test]
    fn shift_spreads_the_indicator() {
        let s = RingDescriptor::sequences();
        let q = BaseField::Q;
        let sigma = EndoDescriptor::new(&s, EndoKind::SeqShift).unwrap();
        let d0 = s.seq(vec![Scalar::one(&q)], Scalar::zero(&q));
        let shifted = sigma.apply(&d0);
        assert_eq!(
            shifted,
            s.seq(vec![Scalar::one(&q), Scalar::one(&q)], Scalar::zero(&q))
        );
        for (n, expect) in [(0, 1), (1, 1), (2, 0), (3, 0)] {
            assert_eq!(shifted.sequence_value(n).unwrap(), Scalar::from_i64(&q, expect));
        }
    }

    #[test]
    fn jackson_difference_quotient_on_y_squared() {
        let r = qy();
        let q = scalar(3);
        let sigma = EndoDescriptor::new(&r, EndoKind::QScale { q: q.clone() }).unwrap();
        let delta = DerivDescriptor::new(&r, DerivKind::Jackson { q: q.clone() }, &sigma).unwrap();
        let y = r.var_elem().unwrap();
        // (q^2 y^2 - y^2)/(qy - y) = (q + 1) y, and d(y) = 1.
        let expected = &r.from_scalar(&q + &Scalar::one(&BaseField::Q)) * &y;
        assert_eq!(delta.apply(&(&y * &y)), expected);
        assert!(delta.apply(&y).is_one());
    }

    #[test]
    fn formal_derivative_kills_cubes_in_characteristic_three() {
        let f3 = BaseField::fp(3).unwrap();
        let r = RingDescriptor::polynomial(f3, "y");
        let sigma = EndoDescriptor::identity(&r);
        let delta = DerivDescriptor::new(&r, DerivKind::FormalDeriv, &sigma).unwrap();
        let y = r.var_elem().unwrap();
        assert!(delta.apply(&y.pow(3)).is_zero());
    }

    #[test]
    fn euler_rescales_monomials_by_degree() {
        let r = qy();
        let sigma = EndoDescriptor::identity(&r);
        let delta = DerivDescriptor::new(&r, DerivKind::Euler, &sigma).unwrap();
        let y = r.var_elem().unwrap();
        let y2 = &y * &y;
        assert_eq!(delta.apply(&y2), &r.from_i64(2) * &y2);
        assert_eq!(delta.apply(&y), y);
        assert!(delta.apply(&r.from_i64(5)).is_zero());
    }

    #[test]
    fn derivative_powers() {
        let r = qy();
        let sigma = EndoDescriptor::identity(&r);
        let delta = DerivDescriptor::new(&r, DerivKind::FormalDeriv, &sigma).unwrap();
        let y = r.var_elem().unwrap();
        assert_eq!(delta.power(2, &y.pow(3)).unwrap(), &r.from_i64(6) * &y);
        assert_eq!(delta.power(0, &y.pow(3)).unwrap(), y.pow(3));
        assert!(delta.power(3, &y.pow(2)).unwrap().is_zero());
        // Iteration demands the identity twist.
        let q2 = EndoDescriptor::new(&r, EndoKind::QScale { q: scalar(2) }).unwrap();
        let jackson = DerivDescriptor::new(&r, DerivKind::Jackson { q: scalar(2) }, &q2).unwrap();
        assert!(jackson.power(2, &y).is_err());
    }

    #[test]
    fn order_probe_detects_roots_of_unity() {
        let f7 = BaseField::fp(7).unwrap();
        let r7 = RingDescriptor::polynomial(f7, "y");
        let sigma7 =
            EndoDescriptor::new(&r7, EndoKind::QScale { q: Scalar::from_i64(&f7, 2) }).unwrap();
        assert_eq!(sigma7.order_probe(10), Some(3));

        let r = qy();
        let sigma = EndoDescriptor::new(&r, EndoKind::QScale { q: scalar(2) }).unwrap();
        assert_eq!(sigma.order_probe(10), None);
        assert_eq!(EndoDescriptor::identity(&r).order_probe(10), Some(1));
    }

    #[test]
    fn kernel_probes() {
        let r = qy();
        let eval0 = EndoDescriptor::new(&r, EndoKind::Eval0).unwrap();
        let y = r.var_elem().unwrap();
        assert!(eval0.kernel_probe(20).contains(&y));
        assert!(EndoDescriptor::identity(&r).kernel_probe(20).is_empty());
        let q2 = EndoDescriptor::new(&r, EndoKind::QScale { q: scalar(2) }).unwrap();
        assert!(q2.kernel_probe(20).is_empty());
    }

    #[test]
    fn monomial_shift_is_a_valid_twisted_derivation() {
        let r = qy();
        let eval0 = EndoDescriptor::new(&r, EndoKind::Eval0).unwrap();
        let delta = DerivDescriptor::new(&r, DerivKind::MonomialShift, &eval0).unwrap();
        let y = r.var_elem().unwrap();
        assert!(delta.apply(&y).is_one());
        assert_eq!(delta.apply(&y.pow(3)), y.pow(2));
        // Pairing it with the identity twist must fail the compatibility
        // check.
        assert!(DerivDescriptor::new(&r, DerivKind::MonomialShift, &EndoDescriptor::identity(&r))
            .is_err());
    }

    #[test]
    fn quotient_derivative_needs_a_compatible_modulus() {
        let f2 = BaseField::fp(2).unwrap();
        let ysq = vec![Scalar::zero(&f2), Scalar::zero(&f2), Scalar::one(&f2)];
        let good = RingDescriptor::quotient(f2, "y", ysq, None).unwrap();
        let delta =
            DerivDescriptor::new(&good, DerivKind::QuotientFormalDeriv, &EndoDescriptor::identity(&good))
                .unwrap();
        assert!(delta.apply(&good.var_elem().unwrap()).is_one());

        // Over F_3 the derivative of y^2 is 2y, not a multiple of y^2.
        let f3 = BaseField::fp(3).unwrap();
        let ysq3 = vec![Scalar::zero(&f3), Scalar::zero(&f3), Scalar::one(&f3)];
        let bad = RingDescriptor::quotient(f3, "y", ysq3, None).unwrap();
        assert!(DerivDescriptor::new(
            &bad,
            DerivKind::QuotientFormalDeriv,
            &EndoDescriptor::identity(&bad)
        )
        .is_err());
    }

    #[test]
    fn inner_derivation_matches_its_definition() {
        use rand::SeedableRng;
        let r = qy();
        let sigma = EndoDescriptor::new(&r, EndoKind::Eval0).unwrap();
        let a = r.var_elem().unwrap();
        let delta =
            DerivDescriptor::new(&r, DerivKind::Inner { a: a.clone() }, &sigma).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = r.sample(&mut rng, 4);
            assert_eq!(delta.apply(&x), &(&a * &x) - &(&sigma.apply(&x) * &a));
        }
    }

    #[test]
    fn jackson_rejects_q_one() {
        let r = qy();
        let sigma = EndoDescriptor::identity(&r);
        assert!(DerivDescriptor::new(&r, DerivKind::Jackson { q: scalar(1) }, &sigma).is_err());
        assert!(EndoDescriptor::new(&r, EndoKind::QScale { q: scalar(0) }).is_err());
    }

    #[test]
    fn binomials_reduce_through_the_characteristic() {
        let f3 = BaseField::fp(3).unwrap();
        assert!(binomial_in(&f3, 3, 1).is_zero());
        assert_eq!(binomial_in(&BaseField::Q, 6, 3).to_string(), "20");
        assert!(binomial_in(&BaseField::Q, 2, 5).is_zero());
    }
}
