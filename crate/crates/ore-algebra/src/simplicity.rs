//! Simplicity analysis: invariant-ideal deciders with witnesses,
//! non-simplicity ideal constructions, and replayable certificates that
//! express 1 as a two-sided combination of a given element.
//!
//! The certificate construction follows the degree-descent idea: first make
//! the working element monic (iterated commutators with x act as the
//! derivation on the leading coefficient, and a provider turns it into a
//! unit), then strike it with commutators against the coefficient-ring
//! generators to lower the degree. A stall at positive degree means a
//! central element has been found, which is itself a non-simplicity
//! witness; that is exactly the characteristic-p quotient phenomenon.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{OreError, Result};
use crate::maps::DerivKind;
use crate::ore::{AlgebraSpec, Degree, OrePoly};
use crate::ring::{all_ideals, IdealHandle, RingElement, RingKind};
use crate::scalar::Scalar;
use crate::structure::{
    center, constants, is_maximal_commutative, ConstantsReport, MaxCommReport, SubspaceReport,
    TruncationBound,
};

/// Verdict values for invariant-ideal simplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    NotSimple,
    Undecided,
}

impl fmt::Display for Simplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Simplicity::Simple => "simple",
            Simplicity::NotSimple => "not-simple",
            Simplicity::Undecided => "undecided",
        };
        write!(f, "{s}")
    }
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecisionMethod {
    PolynomialDivisibility,
    FiniteEnumeration,
    CertificateProvider,
}

impl fmt::Display for DecisionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DecisionMethod::PolynomialDivisibility => "polynomial-divisibility",
            DecisionMethod::FiniteEnumeration => "finite-enumeration",
            DecisionMethod::CertificateProvider => "certificate-provider",
        };
        write!(f, "{s}")
    }
}

/// Whether the coefficient ring has proper nonzero ideals invariant under
/// both maps, with a re-verified witness when it does.
#[derive(Clone, Debug)]
pub struct DeltaSimplicityVerdict {
    pub simplicity: Simplicity,
    pub witness: Option<IdealHandle>,
    pub method: Option<DecisionMethod>,
    /// True when a negative search was exhaustive only up to a degree
    /// bound rather than a complete argument.
    pub bound_limited: bool,
    pub detail: String,
}

impl DeltaSimplicityVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "verdict": self.simplicity.to_string(),
            "witness": self.witness.as_ref().map(|w| w.to_string()),
            "method": self.method.map(|m| m.to_string()),
            "bound_limited": self.bound_limited,
            "detail": self.detail,
        })
    }

    fn undecided(detail: &str) -> DeltaSimplicityVerdict {
        DeltaSimplicityVerdict {
            simplicity: Simplicity::Undecided,
            witness: None,
            method: None,
            bound_limited: false,
            detail: detail.to_string(),
        }
    }
}

/// Decides whether the coefficient ring is simple with respect to the
/// spec's maps. Finite rings are settled by exhaustive ideal enumeration;
/// polynomial rings by principal-ideal divisibility (analytically in
/// characteristic zero, by an exhaustive monic sweep up to `degree_bound`
/// over F_p). Everything else is honestly undecided.
pub fn is_delta_simple(spec: &Arc<AlgebraSpec>, degree_bound: usize) -> DeltaSimplicityVerdict {
    let ring = spec.ring();
    if ring.is_finite() {
        let ideals = all_ideals(ring).expect("finite ring enumerates");
        let total = ring.cardinality().expect("finite ring") as usize;
        for set in &ideals {
            if set.len() == 1 || set.len() == total {
                continue;
            }
            let invariant = set.iter().all(|g| {
                let si = spec.sigma().apply(g);
                let di = spec.delta().apply(g);
                set.contains(&si) && set.contains(&di)
            });
            if invariant {
                let handle =
                    IdealHandle::from_elements(ring, set.clone()).expect("closed set");
                let trace = invariant_ideal_check(spec, &handle).expect("finite membership");
                assert!(trace.invariant, "witness must re-verify");
                return DeltaSimplicityVerdict {
                    simplicity: Simplicity::NotSimple,
                    witness: Some(handle),
                    method: Some(DecisionMethod::FiniteEnumeration),
                    bound_limited: false,
                    detail: format!(
                        "invariant ideal with {} of {} elements found by exhaustive search",
                        set.len(),
                        total
                    ),
                };
            }
        }
        return DeltaSimplicityVerdict {
            simplicity: Simplicity::Simple,
            witness: None,
            method: Some(DecisionMethod::FiniteEnumeration),
            bound_limited: false,
            detail: format!(
                "all {} candidate subsets checked; only the trivial ideals are invariant",
                1usize << total
            ),
        };
    }

    let RingKind::Polynomial { .. } = ring.kind() else {
        return DeltaSimplicityVerdict::undecided(
            "only polynomial rings and finite rings are decided",
        );
    };
    if !spec.is_differential() {
        return DeltaSimplicityVerdict::undecided(
            "non-differential specs are decided for finite rings only",
        );
    }

    // Principal ideals <f>: invariance under delta means f divides
    // delta(f).
    let y = ring.var_elem().expect("polynomial ring");
    let not_simple = |gen: RingElement, detail: String| {
        let handle = IdealHandle::principal(gen).expect("nonzero generator");
        let trace = invariant_ideal_check(spec, &handle).expect("divisibility membership");
        assert!(trace.invariant, "witness must re-verify");
        DeltaSimplicityVerdict {
            simplicity: Simplicity::NotSimple,
            witness: Some(handle),
            method: Some(DecisionMethod::PolynomialDivisibility),
            bound_limited: false,
            detail,
        }
    };

    if ring.characteristic() == 0 {
        // Catalog derivations, analytically.
        let delta_is_zero_map = {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
            spec.delta().apply(&y).is_zero()
                && (0..20).all(|_| spec.delta().apply(&ring.sample(&mut rng, 4)).is_zero())
        };
        if delta_is_zero_map {
            return not_simple(
                y.clone(),
                "the derivation vanishes, so every ideal is invariant".into(),
            );
        }
        match spec.delta().kind() {
            DerivKind::FormalDeriv => DeltaSimplicityVerdict {
                simplicity: Simplicity::Simple,
                witness: None,
                method: Some(DecisionMethod::PolynomialDivisibility),
                bound_limited: false,
                detail: "f | f' forces f' = 0, impossible for nonconstant f in characteristic 0"
                    .into(),
            },
            DerivKind::Euler => not_simple(
                y.clone(),
                "the Euler derivation maps y to y, so <y> is invariant".into(),
            ),
            _ => DeltaSimplicityVerdict::undecided(
                "no analytic divisibility argument for this derivation over Q",
            ),
        }
    } else {
        // Exhaustive monic sweep f of degree 1..=degree_bound over F_p.
        let p = ring.base().cardinality().expect("finite field") as i64;
        for deg in 1..=degree_bound {
            let count = (p as u128).pow(deg as u32);
            for idx in 0..count {
                let mut coeffs: Vec<Scalar> = Vec::with_capacity(deg + 1);
                let mut k = idx;
                for _ in 0..deg {
                    coeffs.push(Scalar::from_i64(&ring.base(), (k % p as u128) as i64));
                    k /= p as u128;
                }
                coeffs.push(Scalar::one(&ring.base()));
                let f = ring.from_poly(coeffs);
                let handle = IdealHandle::principal(f.clone()).expect("monic generator");
                if handle.contains(&spec.delta().apply(&f)).expect("divisibility") {
                    return not_simple(
                        f.clone(),
                        format!("monic f = {f} divides delta(f), found by exhaustive sweep"),
                    );
                }
            }
        }
        DeltaSimplicityVerdict {
            simplicity: Simplicity::Simple,
            witness: None,
            method: Some(DecisionMethod::PolynomialDivisibility),
            bound_limited: true,
            detail: format!("no invariant principal ideal with generator degree <= {degree_bound}"),
        }
    }
}

/// Divisor-based route for finite quotient rings (ideals of k[y]/<f>
/// correspond to monic divisors of f); used as an independent oracle
/// against the enumeration route.
pub fn delta_simple_quotient_by_divisors(spec: &Arc<AlgebraSpec>) -> Result<DeltaSimplicityVerdict> {
    let ring = spec.ring();
    let RingKind::Quotient { modulus, .. } = ring.kind() else {
        return Err(OreError::Unsupported("divisor route needs a quotient ring".into()));
    };
    let p = ring.base().cardinality().ok_or_else(|| {
        OreError::Unsupported("divisor sweep is implemented over F_p".into())
    })? as i64;
    let f_deg = modulus.len() - 1;
    for deg in 1..f_deg {
        let count = (p as u128).pow(deg as u32);
        for idx in 0..count {
            let mut coeffs: Vec<Scalar> = Vec::with_capacity(deg + 1);
            let mut k = idx;
            for _ in 0..deg {
                coeffs.push(Scalar::from_i64(&ring.base(), (k % p as u128) as i64));
                k /= p as u128;
            }
            coeffs.push(Scalar::one(&ring.base()));
            let g = ring.from_poly(coeffs);
            if g.is_zero() {
                continue;
            }
            let handle = IdealHandle::principal(g.clone())?;
            // Only proper nonzero ideals matter; <g> is the whole ring when
            // g is a unit.
            if g.is_unit() {
                continue;
            }
            let trace = invariant_ideal_check(spec, &handle)?;
            if trace.invariant {
                return Ok(DeltaSimplicityVerdict {
                    simplicity: Simplicity::NotSimple,
                    witness: Some(handle),
                    method: Some(DecisionMethod::PolynomialDivisibility),
                    bound_limited: false,
                    detail: format!("invariant proper ideal generated by {g}"),
                });
            }
        }
    }
    Ok(DeltaSimplicityVerdict {
        simplicity: Simplicity::Simple,
        witness: None,
        method: Some(DecisionMethod::PolynomialDivisibility),
        bound_limited: false,
        detail: "no proper divisor of the modulus generates an invariant ideal".into(),
    })
}

/// Per-generator invariance record.
#[derive(Clone, Debug)]
pub struct InvarianceEntry {
    pub generator: RingElement,
    pub sigma_image: RingElement,
    pub sigma_in_ideal: bool,
    pub delta_image: RingElement,
    pub delta_in_ideal: bool,
}

/// Result of checking that both maps send each generator into the ideal.
#[derive(Clone, Debug)]
pub struct InvarianceTrace {
    pub invariant: bool,
    pub entries: Vec<InvarianceEntry>,
}

impl InvarianceTrace {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "invariant": self.invariant,
            "entries": self.entries.iter().map(|e| json!({
                "generator": e.generator.to_string(),
                "sigma_image": e.sigma_image.to_string(),
                "sigma_in_ideal": e.sigma_in_ideal,
                "delta_image": e.delta_image.to_string(),
                "delta_in_ideal": e.delta_in_ideal,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks sigma(J) and delta(J) against J on the generators, which
/// suffices for a sigma-delta-invariant ideal.
pub fn invariant_ideal_check(spec: &Arc<AlgebraSpec>, ideal: &IdealHandle) -> Result<InvarianceTrace> {
    assert!(ideal.ring() == spec.ring(), "ideal over a different ring");
    let mut entries = Vec::new();
    let mut invariant = true;
    for g in ideal.generators() {
        let sigma_image = spec.sigma().apply(g);
        let delta_image = spec.delta().apply(g);
        let sigma_in_ideal = ideal.contains(&sigma_image)?;
        let delta_in_ideal = ideal.contains(&delta_image)?;
        invariant &= sigma_in_ideal && delta_in_ideal;
        entries.push(InvarianceEntry {
            generator: g.clone(),
            sigma_image,
            sigma_in_ideal,
            delta_image,
            delta_in_ideal,
        });
    }
    Ok(InvarianceTrace { invariant, entries })
}

/// Non-simplicity evidence induced by a proper nonzero invariant ideal J:
/// the extension J*A is a proper nonzero two-sided ideal. Every element of
/// J*A has all its coefficients in J (pushing x past j only produces
/// sigma(j) and delta(j), which stay in J), so 1 is excluded exactly, at
/// every degree.
#[derive(Clone, Debug)]
pub struct ExtensionEvidence {
    pub ring_ideal: IdealHandle,
    pub trace: InvarianceTrace,
    /// Number of sampled x*j*a products whose coefficients were all
    /// verified to lie in J.
    pub verified_products: usize,
    /// 1 is excluded by the exact coefficient-wise argument.
    pub one_excluded_exactly: bool,
}

impl ExtensionEvidence {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ring_ideal": self.ring_ideal.to_string(),
            "trace": self.trace.to_json(),
            "verified_products": self.verified_products,
            "one_excluded_exactly": self.one_excluded_exactly,
        })
    }
}

pub fn sigma_delta_ideal_extension(
    spec: &Arc<AlgebraSpec>,
    ideal: &IdealHandle,
) -> Result<ExtensionEvidence> {
    let trace = invariant_ideal_check(spec, ideal)?;
    if !trace.invariant {
        return Err(OreError::Precondition(
            "the ideal is not invariant under both maps".into(),
        ));
    }
    if !ideal.is_proper()? {
        return Err(OreError::Precondition("the ideal is not proper".into()));
    }
    let ring = spec.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1dea);
    let x = OrePoly::x(spec);
    let mut verified = 0usize;
    for _ in 0..10 {
        // j: a random combination of the generators; a: a random Ore
        // polynomial.
        let mut j = ring.zero();
        for g in ideal.generators() {
            j = &j + &(&ring.sample(&mut rng, 2) * g);
        }
        if j.is_zero() {
            continue;
        }
        let mut a = OrePoly::zero(spec);
        for _ in 0..3 {
            let deg = rng.random_range(0..=3);
            a = &a + &OrePoly::monomial(spec, ring.sample(&mut rng, 2), deg);
        }
        let product = &(&x * &OrePoly::from_ring(spec, j)) * &a;
        for (_, c) in product.terms() {
            if !ideal.contains(c)? {
                return Err(OreError::Precondition(
                    "a product escaped the coefficient ideal; the ideal is not invariant".into(),
                ));
            }
        }
        verified += 1;
    }
    Ok(ExtensionEvidence {
        ring_ideal: ideal.clone(),
        trace,
        verified_products: verified,
        one_excluded_exactly: true,
    })
}

/// Non-simplicity evidence from a non-injective twist over a reduced
/// commutative ring: with sigma(a) = 0, the annihilator ideal
/// `{p : p a^k = 0 for some k}` is proper, nonzero, and contains
/// `a x - delta(a)`.
#[derive(Clone, Debug)]
pub struct NonInjectiveEvidence {
    pub member: OrePoly,
    /// member * a^k = 0 for this k.
    pub annihilator_power: usize,
    /// Sampled products (p x) a^(k+1) verified to vanish.
    pub verified_products: usize,
    /// a^k was checked nonzero for k up to this bound (reducedness keeps
    /// every power nonzero, so 1 never annihilates).
    pub nonnilpotent_up_to: usize,
}

impl NonInjectiveEvidence {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "member": self.member.to_string(),
            "annihilator_power": self.annihilator_power,
            "verified_products": self.verified_products,
            "nonnilpotent_up_to": self.nonnilpotent_up_to,
        })
    }
}

pub fn noninjective_sigma_ideal(
    spec: &Arc<AlgebraSpec>,
    a: &RingElement,
) -> Result<NonInjectiveEvidence> {
    let ring = spec.ring();
    assert!(a.ring() == ring, "element over a different ring");
    if a.is_zero() {
        return Err(OreError::Precondition("a must be nonzero".into()));
    }
    if !spec.sigma().apply(a).is_zero() {
        return Err(OreError::Precondition("sigma(a) must vanish".into()));
    }
    if !ring.is_reduced() {
        return Err(OreError::Unsupported(
            "the construction needs a reduced coefficient ring".into(),
        ));
    }
    let member = &OrePoly::monomial(spec, a.clone(), 1)
        - &OrePoly::from_ring(spec, spec.delta().apply(a));
    let a_ore = OrePoly::from_ring(spec, a.clone());
    // (a x - delta(a)) a = a (sigma(a) x + delta(a)) - delta(a) a = 0.
    assert!((&member * &a_ore).is_zero(), "membership identity failed");

    let x = OrePoly::x(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a11);
    let mut verified = 0usize;
    for _ in 0..10 {
        let mut q = OrePoly::zero(spec);
        for _ in 0..2 {
            let deg = rng.random_range(0..=2);
            q = &q + &OrePoly::monomial(spec, ring.sample(&mut rng, 2), deg);
        }
        let p = &q * &member; // p a = 0, so p is in the annihilator ideal
        let shifted = &(&p * &x) * &(&a_ore * &a_ore);
        if !shifted.is_zero() {
            return Err(OreError::Precondition(
                "a sampled product failed to vanish".into(),
            ));
        }
        verified += 1;
    }

    let bound = 12usize;
    let mut power = ring.one();
    for _ in 0..bound {
        power = &power * a;
        if power.is_zero() {
            return Err(OreError::Precondition(
                "a is nilpotent; the ring is not reduced".into(),
            ));
        }
    }
    Ok(NonInjectiveEvidence {
        member,
        annihilator_power: 1,
        verified_products: verified,
        nonnilpotent_up_to: bound,
    })
}

/// One rewrite of the working element of a certificate. Every step maps
/// the two-sided ideal generated by the input into itself.
#[derive(Clone, Debug, PartialEq)]
pub enum CertStep {
    LeftMul(OrePoly),
    RightMul(OrePoly),
    CommutatorWith(OrePoly),
    /// w -> sum over terms of l * w * r.
    LinearCombination(Vec<(OrePoly, OrePoly)>),
}

/// A machine-checkable derivation of 1 from the two-sided ideal generated
/// by `input`: replaying the steps through plain Ore arithmetic must
/// reproduce 1 exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicityCertificate {
    pub input: OrePoly,
    pub steps: Vec<CertStep>,
}

impl SimplicityCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let steps: Vec<serde_json::Value> = self
            .steps
            .iter()
            .map(|s| match s {
                CertStep::LeftMul(c) => json!({"op": "left_mul", "arg": c.to_string()}),
                CertStep::RightMul(c) => json!({"op": "right_mul", "arg": c.to_string()}),
                CertStep::CommutatorWith(g) => {
                    json!({"op": "commutator_with", "arg": g.to_string()})
                }
                CertStep::LinearCombination(terms) => json!({
                    "op": "linear_combination",
                    "terms": terms
                        .iter()
                        .map(|(l, r)| json!([l.to_string(), r.to_string()]))
                        .collect::<Vec<_>>(),
                }),
            })
            .collect();
        json!({
            "input": self.input.to_string(),
            "steps": steps,
            "claim": "1",
        })
    }
}

/// Replays a certificate through Ore arithmetic only; the caller compares
/// the result against 1. Deliberately independent of the construction in
/// [`simplicity_witness`].
pub fn replay(cert: &SimplicityCertificate) -> OrePoly {
    let spec = cert.input.spec();
    let mut w = cert.input.clone();
    for step in &cert.steps {
        w = match step {
            CertStep::LeftMul(c) => c * &w,
            CertStep::RightMul(c) => &w * c,
            CertStep::CommutatorWith(g) => &(g * &w) - &(&w * g),
            CertStep::LinearCombination(terms) => {
                let mut acc = OrePoly::zero(spec);
                for (l, r) in terms {
                    acc = &acc + &(&(l * &w) * r);
                }
                acc
            }
        };
    }
    w
}

/// Monicization recipe for one coefficient: after `delta_steps`
/// applications of the derivation the coefficient becomes a unit, and
/// `left_factor` is its inverse.
#[derive(Clone, Debug)]
pub struct MonicizePlan {
    pub delta_steps: usize,
    pub left_factor: RingElement,
}

/// Per-ring procedure that rewrites any nonzero coefficient into 1 using
/// derivation iterates and a unit multiple; the constructive content of
/// derivation-simplicity for the supported rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertProvider {
    /// Characteristic-zero polynomial ring with the formal derivative:
    /// deg(a) derivative steps reach the nonzero scalar deg(a)! * lc(a).
    PolyCharZeroFormalDeriv,
    /// Finite quotient ring: iterate the derivation until a unit appears.
    QuotientIterateToUnit,
}

impl CertProvider {
    /// The provider registered for this spec's coefficient ring, if any.
    pub fn for_spec(spec: &Arc<AlgebraSpec>) -> Option<CertProvider> {
        if !spec.is_differential() {
            return None;
        }
        match (spec.ring().kind(), spec.delta().kind()) {
            (RingKind::Polynomial { .. }, DerivKind::FormalDeriv)
                if spec.ring().characteristic() == 0 =>
            {
                Some(CertProvider::PolyCharZeroFormalDeriv)
            }
            (RingKind::Quotient { .. }, DerivKind::QuotientFormalDeriv)
                if spec.ring().is_finite() =>
            {
                Some(CertProvider::QuotientIterateToUnit)
            }
            _ => None,
        }
    }

    /// Produces and re-verifies a plan for the given nonzero coefficient.
    pub fn monicize(&self, spec: &Arc<AlgebraSpec>, a: &RingElement) -> Result<MonicizePlan> {
        if a.is_zero() {
            return Err(OreError::Precondition("cannot monicize zero".into()));
        }
        let limit = match self {
            CertProvider::PolyCharZeroFormalDeriv => {
                a.poly_coeffs().map_or(0, |c| c.len().saturating_sub(1))
            }
            CertProvider::QuotientIterateToUnit => {
                spec.ring().cardinality().unwrap_or(16) as usize
            }
        };
        let mut current = a.clone();
        for k in 0..=limit {
            if let Some(inv) = current.inverse() {
                // Re-verify by evaluation before handing the plan out.
                let mut check = a.clone();
                for _ in 0..k {
                    assert!(!check.is_zero(), "derivation iterate vanished early");
                    check = spec.delta().apply(&check);
                }
                if !(&inv * &check).is_one() {
                    return Err(OreError::ProviderFailure(a.to_string()));
                }
                return Ok(MonicizePlan { delta_steps: k, left_factor: inv });
            }
            current = spec.delta().apply(&current);
            if current.is_zero() {
                break;
            }
        }
        Err(OreError::ProviderFailure(a.to_string()))
    }
}

/// Outcome of the witness search: either a replayable certificate, or a
/// stall exposing a central element of positive degree (a non-simplicity
/// witness).
#[derive(Clone, Debug)]
pub enum WitnessOutcome {
    Certificate(SimplicityCertificate),
    Stall { central: OrePoly },
}

/// Constructs a simplicity certificate for the two-sided ideal generated
/// by `b`: monicize the leading coefficient through the provider, lower
/// the degree through commutators with the ring generators and x, repeat.
/// The degree strictly decreases each round, so the loop terminates.
pub fn simplicity_witness(
    spec: &Arc<AlgebraSpec>,
    b: &OrePoly,
    provider: CertProvider,
) -> Result<WitnessOutcome> {
    if !spec.is_differential() {
        return Err(OreError::Unsupported(
            "certificates are constructed for differential specs".into(),
        ));
    }
    if b.is_zero() {
        return Err(OreError::Precondition("b must be nonzero".into()));
    }
    let x = OrePoly::x(spec);
    let mut reducers: Vec<OrePoly> = spec
        .ring()
        .generators()
        .map_err(|_| OreError::Unsupported("the coefficient ring must be finitely generated".into()))?
        .into_iter()
        .map(|g| OrePoly::from_ring(spec, g))
        .collect();
    reducers.push(x.clone());

    let mut w = b.clone();
    let mut steps: Vec<CertStep> = Vec::new();
    let mut rounds = b.degree().as_usize().unwrap_or(0) + 1;
    loop {
        let n = w.degree().as_usize().expect("w stays nonzero");
        let lead = w.leading_coeff().expect("nonzero element").clone();
        if !lead.is_one() {
            let plan = provider.monicize(spec, &lead)?;
            for _ in 0..plan.delta_steps {
                w = &(&x * &w) - &(&w * &x);
                steps.push(CertStep::CommutatorWith(x.clone()));
                assert_eq!(
                    w.degree(),
                    Degree::Of(n),
                    "the leading derivation iterate must stay nonzero"
                );
            }
            if !plan.left_factor.is_one() {
                let u = OrePoly::from_ring(spec, plan.left_factor);
                w = &u * &w;
                steps.push(CertStep::LeftMul(u));
            }
            assert!(
                w.leading_coeff().expect("nonzero").is_one(),
                "monicization must land on a unit leading coefficient"
            );
        }
        if n == 0 {
            assert!(w.is_one(), "a monic degree-zero element is 1");
            let cert = SimplicityCertificate { input: b.clone(), steps };
            debug_assert!(replay(&cert).is_one());
            return Ok(WitnessOutcome::Certificate(cert));
        }
        let reduced = reducers
            .iter()
            .map(|g| (g, g.commutator(&w)))
            .find(|(_, c)| !c.is_zero());
        match reduced {
            Some((g, c)) => {
                assert!(c.degree() < Degree::Of(n), "commutators with a monic element drop degree");
                steps.push(CertStep::CommutatorWith(g.clone()));
                w = c;
            }
            None => return Ok(WitnessOutcome::Stall { central: w }),
        }
        rounds = rounds.checked_sub(1).expect("degree descent exceeded its bound");
    }
}

/// Which criterion settled the verdict of a [`TheoremReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AppliedCriterion {
    /// delta-simple coefficients that are maximal commutative force
    /// simplicity.
    DeltaSimpleAndMaxCommutative,
    /// Over a torsion-free coefficient ring, delta-simple plus a nonzero
    /// derivation forces simplicity.
    TorsionFreeCriterion,
    /// Simplicity is equivalent to delta-simple coefficients plus a center
    /// that is a field.
    CenterFieldCriterion,
    /// A proper nonzero invariant ideal of R extends to a proper nonzero
    /// ideal of the whole extension.
    InvariantIdealObstruction,
    /// A central element of positive degree with a regular leading
    /// coefficient is a non-unit, so the center is not a field.
    CentralElementObstruction,
}

impl fmt::Display for AppliedCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AppliedCriterion::DeltaSimpleAndMaxCommutative => "delta-simple-and-max-commutative",
            AppliedCriterion::TorsionFreeCriterion => "torsion-free-criterion",
            AppliedCriterion::CenterFieldCriterion => "center-field-criterion",
            AppliedCriterion::InvariantIdealObstruction => "invariant-ideal-obstruction",
            AppliedCriterion::CentralElementObstruction => "central-element-obstruction",
        };
        write!(f, "{s}")
    }
}

/// Combined simplicity verdict for a differential spec: the underlying
/// facts (delta-simplicity, constants, center, maximal commutativity,
/// torsion), which criterion applied, and whether the conclusion is
/// certified by explicit witnesses or only bound-limited.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub delta_simple: DeltaSimplicityVerdict,
    pub constants: ConstantsReport,
    pub center: SubspaceReport,
    pub center_is_field_up_to_bound: bool,
    pub max_comm: MaxCommReport,
    pub characteristic: u64,
    pub torsion_free: bool,
    pub conclusion: Simplicity,
    pub applied: Option<AppliedCriterion>,
    pub certified: bool,
    pub extension_evidence: Option<ExtensionEvidence>,
    pub central_witness: Option<OrePoly>,
    pub sample_certificates: Vec<SimplicityCertificate>,
}

impl TheoremReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "delta_simple": self.delta_simple.to_json(),
            "constants": self.constants.to_json(),
            "center": self.center.to_json(),
            "center_is_field_up_to_bound": self.center_is_field_up_to_bound,
            "max_comm": self.max_comm.to_json(),
            "characteristic": self.characteristic,
            "torsion_free": self.torsion_free,
            "conclusion": self.conclusion.to_string(),
            "applied_criterion": self.applied.map(|a| a.to_string()),
            "certified": self.certified,
            "extension_evidence": self.extension_evidence.as_ref().map(|e| e.to_json()),
            "central_witness": self.central_witness.as_ref().map(|w| w.to_string()),
            "sample_certificates":
                self.sample_certificates.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Evaluates delta-simplicity, constants, center and maximal
/// commutativity up to the bound and combines them into a simplicity
/// verdict for the differential polynomial ring.
pub fn main_theorem_report(spec: &Arc<AlgebraSpec>, bound: &TruncationBound) -> Result<TheoremReport> {
    if !spec.is_differential() {
        return Err(OreError::Unsupported(
            "the combined report covers differential specs".into(),
        ));
    }
    let ring = spec.ring();
    let characteristic = ring.characteristic();
    let degree_bound = (characteristic as usize).max(bound.coeff_degree).max(4);
    let delta_simple = is_delta_simple(spec, degree_bound);
    let constants_report = constants(spec, bound)?;
    let center_report = center(spec, bound)?;
    let max_comm = is_maximal_commutative(spec, bound)?;
    let torsion_free = characteristic == 0;

    // A positive-degree central element with a regular leading coefficient
    // cannot be a unit (degrees add), so it disqualifies the center from
    // being a field.
    let central_obstruction = center_report
        .basis
        .iter()
        .find(|b| {
            b.degree() > Degree::Of(0)
                && b.leading_coeff().map(RingElement::is_regular).unwrap_or(false)
        })
        .cloned();
    let center_is_field_up_to_bound = center_report
        .basis
        .iter()
        .all(|b| b.degree() <= Degree::Of(0) && b.coeff(0).is_base_scalar());

    let delta_nonzero = {
        let mut probes = ring.generators().unwrap_or_default();
        let mut rng = ChaCha8Rng::seed_from_u64(0xd317a);
        for _ in 0..10 {
            probes.push(ring.sample(&mut rng, bound.coeff_degree.max(2)));
        }
        probes.iter().any(|r| !spec.delta().apply(r).is_zero())
    };

    let mut extension_evidence = None;
    let mut central_witness = None;
    let mut sample_certificates = Vec::new();
    let (conclusion, applied, certified) = match delta_simple.simplicity {
        Simplicity::NotSimple => {
            let witness = delta_simple.witness.clone().expect("not-simple carries a witness");
            extension_evidence = Some(sigma_delta_ideal_extension(spec, &witness)?);
            (
                Simplicity::NotSimple,
                Some(AppliedCriterion::InvariantIdealObstruction),
                true,
            )
        }
        Simplicity::Simple => {
            if let Some(z) = central_obstruction {
                central_witness = Some(z);
                (
                    Simplicity::NotSimple,
                    Some(AppliedCriterion::CentralElementObstruction),
                    !delta_simple.bound_limited,
                )
            } else if torsion_free
                && ring.is_domain()
                && delta_nonzero
                && max_comm.maximal_up_to_bound
                && !max_comm.fired.is_empty()
            {
                if let Some(provider) = CertProvider::for_spec(spec) {
                    sample_certificates = sample_witnesses(spec, provider, 3)?;
                }
                (
                    Simplicity::Simple,
                    Some(AppliedCriterion::DeltaSimpleAndMaxCommutative),
                    !delta_simple.bound_limited,
                )
            } else if torsion_free && delta_nonzero {
                if let Some(provider) = CertProvider::for_spec(spec) {
                    sample_certificates = sample_witnesses(spec, provider, 3)?;
                }
                (
                    Simplicity::Simple,
                    Some(AppliedCriterion::TorsionFreeCriterion),
                    !delta_simple.bound_limited,
                )
            } else if center_is_field_up_to_bound {
                // Bound-limited: the center was only explored up to the
                // truncation.
                (Simplicity::Simple, Some(AppliedCriterion::CenterFieldCriterion), false)
            } else {
                (Simplicity::Undecided, None, false)
            }
        }
        Simplicity::Undecided => (Simplicity::Undecided, None, false),
    };

    Ok(TheoremReport {
        delta_simple,
        constants: constants_report,
        center: center_report,
        center_is_field_up_to_bound,
        max_comm,
        characteristic,
        torsion_free,
        conclusion,
        applied,
        certified,
        extension_evidence,
        central_witness,
        sample_certificates,
    })
}

fn sample_witnesses(
    spec: &Arc<AlgebraSpec>,
    provider: CertProvider,
    count: usize,
) -> Result<Vec<SimplicityCertificate>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xce27);
    let mut certs = Vec::with_capacity(count);
    while certs.len() < count {
        let mut b = OrePoly::zero(spec);
        for _ in 0..3 {
            let deg = rng.random_range(0..=2);
            b = &b + &OrePoly::monomial(spec, spec.ring().sample(&mut rng, 2), deg);
        }
        if b.is_zero() {
            continue;
        }
        match simplicity_witness(spec, &b, provider)? {
            WitnessOutcome::Certificate(cert) => {
                assert!(replay(&cert).is_one(), "sampled certificate must replay to 1");
                certs.push(cert);
            }
            WitnessOutcome::Stall { central } => {
                return Err(OreError::Precondition(format!(
                    "stalled on central element {central} while sampling certificates"
                )));
            }
        }
    }
    Ok(certs)
}

/// Witness that the derivation is inner over the rational-function field:
/// `a = -delta(alpha) / (sigma(alpha) - alpha)` satisfies
/// `delta(r) = a r - sigma(r) a`, verified on random elements. An inner
/// derivation makes the extension isomorphic to a skew polynomial ring,
/// which is never simple.
#[derive(Clone, Debug)]
pub struct InnerWitness {
    pub element: RingElement,
    pub verified_samples: usize,
    pub note: &'static str,
}

impl InnerWitness {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "element": self.element.to_string(),
            "verified_samples": self.verified_samples,
            "note": self.note,
        })
    }
}

pub fn inner_derivation_witness(
    spec: &Arc<AlgebraSpec>,
    alpha: &RingElement,
    samples: usize,
    seed: u64,
) -> Result<InnerWitness> {
    let ring = spec.ring();
    assert!(alpha.ring() == ring, "alpha over a different ring");
    if !matches!(ring.kind(), RingKind::RationalFunctions { .. }) {
        return Err(OreError::Unsupported(
            "the inner-derivation witness is constructed over k(y)".into(),
        ));
    }
    if spec.sigma().is_identity() {
        return Err(OreError::Precondition(
            "sigma must differ from the identity".into(),
        ));
    }
    let moved = &spec.sigma().apply(alpha) - alpha;
    if moved.is_zero() {
        return Err(OreError::Precondition(
            "sigma(alpha) must differ from alpha".into(),
        ));
    }
    let a = &(-&spec.delta().apply(alpha)) * &moved.inverse().expect("nonzero in a field");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let r = ring.sample(&mut rng, 3);
        let lhs = spec.delta().apply(&r);
        let rhs = &(&a * &r) - &(&spec.sigma().apply(&r) * &a);
        if lhs != rhs {
            return Err(OreError::LawViolation(format!(
                "inner form failed on r = {r}"
            )));
        }
    }
    Ok(InnerWitness {
        element: a,
        verified_samples: samples,
        note: "delta is inner, so the extension is isomorphic to a skew polynomial ring and is not simple",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::maps::{DerivDescriptor, EndoDescriptor};
    use crate::ring::RingDescriptor;
    use crate::scalar::BaseField;

    #[test]
    fn weyl_coefficients_are_derivation_simple() {
        let spec = catalog::weyl(BaseField::Q).unwrap();
        let v = is_delta_simple(&spec, 4);
        assert_eq!(v.simplicity, Simplicity::Simple);
        assert_eq!(v.method, Some(DecisionMethod::PolynomialDivisibility));
        assert!(!v.bound_limited);
    }

    #[test]
    fn euler_coefficients_have_the_invariant_ideal_y() {
        let spec = catalog::euler().unwrap();
        let v = is_delta_simple(&spec, 4);
        assert_eq!(v.simplicity, Simplicity::NotSimple);
        let witness = v.witness.unwrap();
        assert_eq!(witness.generators(), &[spec.ring().var_elem().unwrap()]);
    }

    #[test]
    fn nilpotent_quotient_is_simple_by_enumeration() {
        let spec = catalog::nilpotent_quotient_differential().unwrap();
        let v = is_delta_simple(&spec, 4);
        assert_eq!(v.simplicity, Simplicity::Simple);
        assert_eq!(v.method, Some(DecisionMethod::FiniteEnumeration));
        assert!(v.detail.contains("16"));
        // Divisor-based oracle agrees.
        let oracle = delta_simple_quotient_by_divisors(&spec).unwrap();
        assert_eq!(oracle.simplicity, Simplicity::Simple);
    }

    #[test]
    fn finite_ring_routes_agree_with_a_zero_derivation() {
        // F_3[y]/<y^2> only admits the zero derivation from the catalog;
        // <y> is invariant, so both routes must report not-simple.
        let f3 = BaseField::fp(3).unwrap();
        let modulus = vec![Scalar::zero(&f3), Scalar::zero(&f3), Scalar::one(&f3)];
        let ring = RingDescriptor::quotient(f3, "y", modulus, None).unwrap();
        let sigma = EndoDescriptor::identity(&ring);
        let delta = DerivDescriptor::zero(&ring, &sigma).unwrap();
        let spec = AlgebraSpec::new(&ring, sigma, delta).unwrap();
        let by_enumeration = is_delta_simple(&spec, 4);
        let by_divisors = delta_simple_quotient_by_divisors(&spec).unwrap();
        assert_eq!(by_enumeration.simplicity, Simplicity::NotSimple);
        assert_eq!(by_divisors.simplicity, Simplicity::NotSimple);
        let y = ring.var_elem().unwrap();
        assert!(by_enumeration.witness.unwrap().contains(&y).unwrap());
        assert!(by_divisors.witness.unwrap().contains(&y).unwrap());
    }

    #[test]
    fn char_p_formal_derivative_finds_the_frobenius_ideal() {
        let spec = catalog::weyl(BaseField::fp(3).unwrap()).unwrap();
        let v = is_delta_simple(&spec, 4);
        assert_eq!(v.simplicity, Simplicity::NotSimple);
        let y = spec.ring().var_elem().unwrap();
        assert_eq!(v.witness.unwrap().generators(), &[y.pow(3)]);
    }

    #[test]
    fn invariance_traces() {
        let euler = catalog::euler().unwrap();
        let y_ideal = IdealHandle::principal(euler.ring().var_elem().unwrap()).unwrap();
        assert!(invariant_ideal_check(&euler, &y_ideal).unwrap().invariant);

        let weyl = catalog::weyl(BaseField::Q).unwrap();
        let y_ideal_w = IdealHandle::principal(weyl.ring().var_elem().unwrap()).unwrap();
        let trace = invariant_ideal_check(&weyl, &y_ideal_w).unwrap();
        assert!(!trace.invariant);
        assert!(trace.entries[0].sigma_in_ideal);
        assert!(!trace.entries[0].delta_in_ideal);

        // <y^2> inside F_2[y] is invariant under d/dy (the derivative of
        // y^2 vanishes in characteristic 2).
        let weyl2 = catalog::weyl(BaseField::fp(2).unwrap()).unwrap();
        let ysq = IdealHandle::principal(weyl2.ring().var_elem().unwrap().pow(2)).unwrap();
        assert!(invariant_ideal_check(&weyl2, &ysq).unwrap().invariant);
    }

    #[test]
    fn ideal_extension_evidence() {
        let euler = catalog::euler().unwrap();
        let y_ideal = IdealHandle::principal(euler.ring().var_elem().unwrap()).unwrap();
        let ev = sigma_delta_ideal_extension(&euler, &y_ideal).unwrap();
        assert!(ev.one_excluded_exactly);
        assert!(ev.verified_products > 0);

        let weyl2 = catalog::weyl(BaseField::fp(2).unwrap()).unwrap();
        let ysq = IdealHandle::principal(weyl2.ring().var_elem().unwrap().pow(2)).unwrap();
        assert!(sigma_delta_ideal_extension(&weyl2, &ysq).is_ok());

        // <y> is not invariant under the ordinary derivative over Q.
        let weyl = catalog::weyl(BaseField::Q).unwrap();
        let y_ideal_w = IdealHandle::principal(weyl.ring().var_elem().unwrap()).unwrap();
        assert!(matches!(
            sigma_delta_ideal_extension(&weyl, &y_ideal_w),
            Err(OreError::Precondition(_))
        ));
    }

    #[test]
    fn noninjective_twist_annihilator() {
        let spec = catalog::eval0_shift().unwrap();
        let y = spec.ring().var_elem().unwrap();
        let ev = noninjective_sigma_ideal(&spec, &y).unwrap();
        // a x - delta(a) = y x - 1.
        let expected = &OrePoly::monomial(&spec, y.clone(), 1) - &OrePoly::one(&spec);
        assert_eq!(ev.member, expected);
        assert_eq!(ev.annihilator_power, 1);
        assert!(ev.verified_products > 0);

        // The identity twist has no kernel elements at all.
        let weyl = catalog::weyl(BaseField::Q).unwrap();
        let yw = weyl.ring().var_elem().unwrap();
        assert!(matches!(
            noninjective_sigma_ideal(&weyl, &yw),
            Err(OreError::Precondition(_))
        ));
        assert!(matches!(
            noninjective_sigma_ideal(&spec, &spec.ring().zero()),
            Err(OreError::Precondition(_))
        ));
    }

    #[test]
    fn witness_certificates_in_the_weyl_algebra() {
        let spec = catalog::weyl(BaseField::Q).unwrap();
        let provider = CertProvider::for_spec(&spec).unwrap();
        let y = OrePoly::from_ring(&spec, spec.ring().var_elem().unwrap());
        let WitnessOutcome::Certificate(cert) = simplicity_witness(&spec, &y, provider).unwrap()
        else {
            panic!("expected a certificate for y");
        };
        assert_eq!(cert.steps.len(), 1);
        assert!(replay(&cert).is_one());

        let x = OrePoly::x(&spec);
        let WitnessOutcome::Certificate(cert) = simplicity_witness(&spec, &x, provider).unwrap()
        else {
            panic!("expected a certificate for x");
        };
        assert!(replay(&cert).is_one());
    }

    #[test]
    fn stall_exposes_the_central_square() {
        let spec = catalog::nilpotent_quotient_differential().unwrap();
        let provider = CertProvider::for_spec(&spec).unwrap();
        let x2 = OrePoly::x(&spec).pow(2);
        match simplicity_witness(&spec, &x2, provider).unwrap() {
            WitnessOutcome::Stall { central } => {
                assert_eq!(central, x2);
                let y = OrePoly::from_ring(&spec, spec.ring().var_elem().unwrap());
                assert!(central.commutator(&y).is_zero());
                assert!(central.commutator(&OrePoly::x(&spec)).is_zero());
            }
            WitnessOutcome::Certificate(_) => panic!("x^2 generates a proper ideal"),
        }
        // Yet coefficients with a unit part still certify, e.g. b = 1 + y.
        let b = &OrePoly::one(&spec)
            + &OrePoly::from_ring(&spec, spec.ring().var_elem().unwrap());
        let WitnessOutcome::Certificate(cert) = simplicity_witness(&spec, &b, provider).unwrap()
        else {
            panic!("units certify");
        };
        assert!(replay(&cert).is_one());
    }

    #[test]
    fn combined_reports_match_the_worked_examples() {
        let bound = TruncationBound::new(4, 4);

        let weyl = catalog::weyl(BaseField::Q).unwrap();
        let r = main_theorem_report(&weyl, &bound).unwrap();
        assert_eq!(r.conclusion, Simplicity::Simple);
        assert_eq!(r.applied, Some(AppliedCriterion::DeltaSimpleAndMaxCommutative));
        assert!(r.certified);
        assert_eq!(r.sample_certificates.len(), 3);
        for cert in &r.sample_certificates {
            assert!(replay(cert).is_one());
        }

        let euler = catalog::euler().unwrap();
        let r = main_theorem_report(&euler, &bound).unwrap();
        assert_eq!(r.conclusion, Simplicity::NotSimple);
        assert_eq!(r.applied, Some(AppliedCriterion::InvariantIdealObstruction));
        assert!(r.extension_evidence.is_some());
        // Maximal commutativity holds even though the ring is not simple.
        assert!(r.max_comm.maximal_up_to_bound);

        let f2q = catalog::nilpotent_quotient_differential().unwrap();
        let r = main_theorem_report(&f2q, &TruncationBound::new(4, 1)).unwrap();
        assert_eq!(r.conclusion, Simplicity::NotSimple);
        assert_eq!(r.applied, Some(AppliedCriterion::CentralElementObstruction));
        assert_eq!(r.central_witness, Some(OrePoly::x(&f2q).pow(2)));
        assert_eq!(r.characteristic, 2);
        assert!(!r.torsion_free);
        assert!(!r.center_is_field_up_to_bound);
    }

    #[test]
    fn inner_witness_over_the_rational_functions() {
        let spec = catalog::q_weyl_rational(BaseField::Q, 2).unwrap();
        let alpha = spec.ring().var_elem().unwrap();
        let w = inner_derivation_witness(&spec, &alpha, 50, 7).unwrap();
        // -delta(y)/(sigma(y)-y) = -1/(2y - y) = -1/y.
        assert_eq!(w.element.to_string(), "(-1)/(y)");
        assert_eq!(w.verified_samples, 50);

        assert!(matches!(
            inner_derivation_witness(&spec, &spec.ring().one(), 10, 7),
            Err(OreError::Precondition(_))
        ));
        let weyl = catalog::weyl(BaseField::Q).unwrap();
        let y = weyl.ring().var_elem().unwrap();
        assert!(inner_derivation_witness(&weyl, &y, 10, 7).is_err());
    }
}
