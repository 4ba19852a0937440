//! Truncated centralizer, center and constants computation.
//!
//! "Commutes with all of R" is reduced to commuting with a finite
//! constraint set: the algebra generators where the ring has them (the
//! centralizer of a generating set equals the centralizer of the generated
//! subring), and a sampled constraint set for the sequence ring, in which
//! case the report is explicitly flagged as sampled.
//!
//! Candidates are truncated twice: Ore degree at most `x_degree` and
//! coefficients drawn from a finite spanning set bounded by
//! `coeff_degree`. Results are always labeled "up to bound" and every
//! reported basis element is re-verified by direct commutators, a route
//! independent of the linear solver.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{OreError, Result};
use crate::linalg::Matrix;
use crate::ore::{AlgebraSpec, Degree, OrePoly};
use crate::ring::{RingDescriptor, RingElement, RingKind};
use crate::scalar::{BaseField, Scalar};

/// Default seed for sampled constraint sets; reports record the seed used.
pub const DEFAULT_SAMPLE_SEED: u64 = 0xA11CE;

/// Truncation bounds for the linear solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationBound {
    /// Maximum Ore degree of candidates.
    pub x_degree: usize,
    /// Maximum coefficient-space degree (y-degree or sequence prefix
    /// length) of candidates.
    pub coeff_degree: usize,
    /// Number of sampled constraints for rings without a finite
    /// generating set.
    pub samples: usize,
}

impl TruncationBound {
    pub fn new(x_degree: usize, coeff_degree: usize) -> TruncationBound {
        TruncationBound { x_degree, coeff_degree, samples: 8 }
    }

    pub fn with_samples(mut self, samples: usize) -> TruncationBound {
        self.samples = samples;
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "x_degree": self.x_degree,
            "coeff_degree": self.coeff_degree,
            "samples": self.samples,
        })
    }
}

/// Shape of a computed subspace relative to the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceVerdict {
    /// Every basis element has degree 0: within the bound the subspace is
    /// the coefficient ring itself.
    EqualsRUpToBound,
    /// Some basis element has positive degree; a witness is attached.
    StrictlyLargerWithWitness,
    /// The basis consists of base-field scalars only.
    EqualsScalarsUpToBound,
    Other,
}

impl fmt::Display for SubspaceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubspaceVerdict::EqualsRUpToBound => "equals-R-up-to-bound",
            SubspaceVerdict::StrictlyLargerWithWitness => "strictly-larger-with-witness",
            SubspaceVerdict::EqualsScalarsUpToBound => "equals-scalars-up-to-bound",
            SubspaceVerdict::Other => "other",
        };
        write!(f, "{s}")
    }
}

/// A solved subspace: echelon-normalized basis, the bound it was computed
/// under, and bookkeeping about sampled constraints.
#[derive(Clone, Debug)]
pub struct SubspaceReport {
    pub basis: Vec<OrePoly>,
    pub bound: TruncationBound,
    pub verdict: SubspaceVerdict,
    pub witness: Option<OrePoly>,
    /// True when the constraint set was sampled rather than generating.
    pub sampled: bool,
    /// Seed used for sampled constraints.
    pub seed: Option<u64>,
    /// Names of sufficient conditions that fired (maximal-commutativity
    /// reports only).
    pub sufficient_conditions_fired: Vec<String>,
}

impl SubspaceReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("bound".into(), self.bound.to_json());
        obj.insert(
            "basis".into(),
            json!(self.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>()),
        );
        obj.insert("verdict".into(), json!(self.verdict.to_string()));
        if let Some(w) = &self.witness {
            obj.insert("witness".into(), json!(w.to_string()));
        }
        obj.insert("sampled".into(), json!(self.sampled));
        if let Some(s) = self.seed {
            obj.insert("seed".into(), json!(s));
        }
        obj.insert(
            "sufficient_conditions_fired".into(),
            json!(self.sufficient_conditions_fired),
        );
        serde_json::Value::Object(obj)
    }
}

/// Spanning set of the truncated coefficient space, in solver column
/// order.
fn solve_basis(ring: &Arc<RingDescriptor>, coeff_degree: usize) -> Result<Vec<RingElement>> {
    match ring.kind() {
        RingKind::Field => Ok(vec![ring.one()]),
        RingKind::Polynomial { .. } => {
            let y = ring.var_elem()?;
            Ok((0..=coeff_degree as u32).map(|i| y.pow(i)).collect())
        }
        RingKind::Quotient { modulus, .. } => {
            let y = ring.var_elem()?;
            let top = coeff_degree.min(modulus.len().saturating_sub(2));
            Ok((0..=top as u32).map(|i| y.pow(i)).collect())
        }
        RingKind::Sequences => {
            let q = BaseField::Q;
            let mut basis: Vec<RingElement> = (0..coeff_degree)
                .map(|i| {
                    let mut prefix = vec![Scalar::zero(&q); i + 1];
                    prefix[i] = Scalar::one(&q);
                    ring.seq(prefix, Scalar::zero(&q))
                })
                .collect();
            basis.push(ring.one());
            Ok(basis)
        }
        RingKind::RationalFunctions { .. } => Err(OreError::Unsupported(
            "rational-function coefficients have no bounded solver basis".into(),
        )),
    }
}

/// Linear coordinates for the values appearing in one equation block.
fn coord_dim(ring: &Arc<RingDescriptor>, values: &[RingElement]) -> usize {
    match ring.kind() {
        RingKind::Field => 1,
        RingKind::Polynomial { .. } => values
            .iter()
            .map(|v| v.poly_coeffs().expect("poly payload").len())
            .max()
            .unwrap_or(0)
            .max(1),
        RingKind::Quotient { modulus, .. } => modulus.len() - 1,
        RingKind::Sequences => {
            values
                .iter()
                .map(|v| v.seq_parts().expect("sequence payload").0.len())
                .max()
                .unwrap_or(0)
                + 1
        }
        RingKind::RationalFunctions { .. } => unreachable!("rejected by solve_basis"),
    }
}

fn coords(ring: &Arc<RingDescriptor>, v: &RingElement, dim: usize) -> Vec<Scalar> {
    let field = ring.base();
    match ring.kind() {
        RingKind::Field => vec![v.as_scalar().expect("field payload").clone()],
        RingKind::Polynomial { .. } | RingKind::Quotient { .. } => {
            let c = v.poly_coeffs().expect("poly payload");
            (0..dim)
                .map(|i| c.get(i).cloned().unwrap_or_else(|| Scalar::zero(&field)))
                .collect()
        }
        RingKind::Sequences => {
            let (_, tail) = v.seq_parts().expect("sequence payload");
            let mut out: Vec<Scalar> = (0..dim - 1)
                .map(|n| v.sequence_value(n).expect("sequence payload"))
                .collect();
            out.push(tail.clone());
            out
        }
        RingKind::RationalFunctions { .. } => unreachable!("rejected by solve_basis"),
    }
}

/// Constraint set standing in for "all of R": generators where available,
/// otherwise (sequence ring) the indicator of {0}, the constant 1 and
/// sampled elements. Returns (constraints, sampled?).
fn constraint_set(
    spec: &Arc<AlgebraSpec>,
    bound: &TruncationBound,
    seed: u64,
) -> (Vec<RingElement>, bool) {
    let ring = spec.ring();
    match ring.generators() {
        Ok(gens) => (gens, false),
        Err(_) => {
            let q = BaseField::Q;
            let mut set = vec![
                ring.seq(vec![Scalar::one(&q)], Scalar::zero(&q)),
                ring.one(),
            ];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..bound.samples {
                set.push(ring.sample(&mut rng, bound.coeff_degree.max(1)));
            }
            (set, true)
        }
    }
}

/// Core solver: the elements of degree <= N with coefficients in the
/// truncated spanning set that commute with every constraint.
fn commuting_subspace(
    spec: &Arc<AlgebraSpec>,
    bound: &TruncationBound,
    constraints: &[OrePoly],
) -> Result<Vec<OrePoly>> {
    let ring = spec.ring();
    let field = ring.base();
    let rbasis = solve_basis(ring, bound.coeff_degree)?;
    let unknowns: Vec<(usize, usize)> = (0..=bound.x_degree)
        .flat_map(|i| (0..rbasis.len()).map(move |j| (i, j)))
        .collect();

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in constraints {
        // Commutators of the constraint with each candidate monomial.
        let commutators: Vec<OrePoly> = unknowns
            .iter()
            .map(|&(i, j)| g.commutator(&OrePoly::monomial(spec, rbasis[j].clone(), i)))
            .collect();
        let max_deg = commutators
            .iter()
            .filter_map(|e| e.degree().as_usize())
            .max();
        let Some(max_deg) = max_deg else {
            continue; // this constraint commutes with every candidate
        };
        let values: Vec<RingElement> = commutators
            .iter()
            .flat_map(|e| (0..=max_deg).map(|k| e.coeff(k)))
            .collect();
        let dim = coord_dim(ring, &values);
        for k in 0..=max_deg {
            let coord_vecs: Vec<Vec<Scalar>> = commutators
                .iter()
                .map(|e| coords(ring, &e.coeff(k), dim))
                .collect();
            for l in 0..dim {
                rows.push(coord_vecs.iter().map(|c| c[l].clone()).collect());
            }
        }
    }

    let matrix = Matrix::new(
        field,
        rows.len(),
        unknowns.len(),
        rows.into_iter().flatten().collect(),
    );
    let kernel = matrix.nullspace();

    let basis: Vec<OrePoly> = kernel
        .iter()
        .map(|v| {
            OrePoly::from_terms(
                spec,
                unknowns.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(
                    |(&(i, j), c)| (i, &ring.from_scalar(c.clone()) * &rbasis[j]),
                ),
            )
        })
        .collect();

    // Soundness: re-verify each basis element by direct commutators,
    // independently of the elimination.
    for b in &basis {
        for g in constraints {
            assert!(
                g.commutator(b).is_zero(),
                "solver produced a non-commuting basis element"
            );
        }
    }
    Ok(basis)
}

fn classify(
    basis: &[OrePoly],
    full_dim: usize,
) -> (SubspaceVerdict, Option<OrePoly>) {
    let witness = basis
        .iter()
        .find(|b| b.degree() > Degree::Of(0))
        .cloned();
    if let Some(w) = witness {
        return (SubspaceVerdict::StrictlyLargerWithWitness, Some(w));
    }
    if basis.len() == full_dim {
        return (SubspaceVerdict::EqualsRUpToBound, None);
    }
    if basis
        .iter()
        .all(|b| b.is_zero() || b.coeff(0).is_base_scalar())
    {
        return (SubspaceVerdict::EqualsScalarsUpToBound, None);
    }
    (SubspaceVerdict::Other, None)
}

/// Basis of the centralizer of the coefficient ring, up to the bound.
pub fn centralizer_of_r(spec: &Arc<AlgebraSpec>, bound: &TruncationBound) -> Result<SubspaceReport> {
    centralizer_of_r_seeded(spec, bound, DEFAULT_SAMPLE_SEED)
}

pub fn centralizer_of_r_seeded(
    spec: &Arc<AlgebraSpec>,
    bound: &TruncationBound,
    seed: u64,
) -> Result<SubspaceReport> {
    let (constraints, sampled) = constraint_set(spec, bound, seed);
    let ore_constraints: Vec<OrePoly> = constraints
        .into_iter()
        .map(|g| OrePoly::from_ring(spec, g))
        .collect();
    let basis = commuting_subspace(spec, bound, &ore_constraints)?;
    let full_dim = solve_basis(spec.ring(), bound.coeff_degree)?.len();
    let (verdict, witness) = classify(&basis, full_dim);
    Ok(SubspaceReport {
        basis,
        bound: *bound,
        verdict,
        witness,
        sampled,
        seed: sampled.then_some(seed),
        sufficient_conditions_fired: Vec::new(),
    })
}

/// Basis of the center: elements commuting with the constraint set and
/// with x. For differential specs the x-commutator of `sum q_i x^i` is
/// `sum delta(q_i) x^i`, so the x-rows are exactly the conditions
/// `delta(q_i) = 0`.
pub fn center(spec: &Arc<AlgebraSpec>, bound: &TruncationBound) -> Result<SubspaceReport> {
    center_seeded(spec, bound, DEFAULT_SAMPLE_SEED)
}

pub fn center_seeded(
    spec: &Arc<AlgebraSpec>,
    bound: &TruncationBound,
    seed: u64,
) -> Result<SubspaceReport> {
    let (constraints, sampled) = constraint_set(spec, bound, seed);
    let mut ore_constraints: Vec<OrePoly> = constraints
        .into_iter()
        .map(|g| OrePoly::from_ring(spec, g))
        .collect();
    ore_constraints.push(OrePoly::x(spec));
    let basis = commuting_subspace(spec, bound, &ore_constraints)?;
    let full_dim = solve_basis(spec.ring(), bound.coeff_degree)?.len();
    let (verdict, witness) = classify(&basis, full_dim);
    Ok(SubspaceReport {
        basis,
        bound: *bound,
        verdict,
        witness,
        sampled,
        seed: sampled.then_some(seed),
        sufficient_conditions_fired: Vec::new(),
    })
}

/// Constants report: the kernel of delta inside the truncated coefficient
/// space, together with a field flag.
#[derive(Clone, Debug)]
pub struct ConstantsReport {
    pub report: SubspaceReport,
    /// Whether the constants found form a field: decided exhaustively for
    /// finite rings and by the scalar characterization for polynomial
    /// rings (constants inside k iff every basis element is a scalar).
    pub constants_form_field: bool,
}

impl ConstantsReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.report.to_json();
        v.as_object_mut()
            .expect("report is an object")
            .insert("constants_form_field".into(), json!(self.constants_form_field));
        v
    }
}

/// Basis of `{r in R : delta(r) = 0}` up to the coefficient bound.
pub fn constants(spec: &Arc<AlgebraSpec>, bound: &TruncationBound) -> Result<ConstantsReport> {
    if !spec.is_differential() {
        return Err(OreError::Unsupported(
            "constants are computed for differential specs only".into(),
        ));
    }
    let ring = spec.ring();
    let field = ring.base();
    let rbasis = solve_basis(ring, bound.coeff_degree)?;
    let images: Vec<RingElement> = rbasis.iter().map(|b| spec.delta().apply(b)).collect();
    let dim = coord_dim(ring, &images);
    let mut rows = Vec::with_capacity(dim);
    for l in 0..dim {
        rows.push(
            images
                .iter()
                .map(|v| coords(ring, v, dim)[l].clone())
                .collect::<Vec<_>>(),
        );
    }
    let matrix = Matrix::new(
        field,
        rows.len(),
        rbasis.len(),
        rows.into_iter().flatten().collect(),
    );
    let kernel = matrix.nullspace();
    let elements: Vec<RingElement> = kernel
        .iter()
        .map(|v| {
            let mut acc = ring.zero();
            for (c, b) in v.iter().zip(&rbasis) {
                if !c.is_zero() {
                    acc = &acc + &(&ring.from_scalar(c.clone()) * b);
                }
            }
            acc
        })
        .collect();
    for e in &elements {
        assert!(spec.delta().apply(e).is_zero(), "solver returned a non-constant");
    }
    let constants_form_field = if ring.is_finite() {
        nonzero_span_is_invertible(ring, &elements)
    } else {
        elements.iter().all(RingElement::is_base_scalar)
    };
    let basis: Vec<OrePoly> = elements
        .into_iter()
        .map(|e| OrePoly::from_ring(spec, e))
        .collect();
    let full_dim = rbasis.len();
    let (verdict, witness) = classify(&basis, full_dim);
    Ok(ConstantsReport {
        report: SubspaceReport {
            basis,
            bound: *bound,
            verdict,
            witness,
            sampled: false,
            seed: None,
            sufficient_conditions_fired: Vec::new(),
        },
        constants_form_field,
    })
}

/// Exhaustive unit check of every nonzero combination over a finite base
/// field.
fn nonzero_span_is_invertible(ring: &Arc<RingDescriptor>, basis: &[RingElement]) -> bool {
    let p = ring.base().cardinality().expect("finite base field");
    let n = basis.len() as u32;
    let total = p.pow(n);
    for idx in 1..total {
        let mut combo = ring.zero();
        let mut k = idx;
        for b in basis {
            let c = Scalar::from_i64(&ring.base(), (k % p) as i64);
            k /= p;
            if !c.is_zero() {
                combo = &combo + &(&ring.from_scalar(c) * b);
            }
        }
        if combo.is_zero() {
            continue;
        }
        if !combo.is_unit() {
            return false;
        }
    }
    true
}

/// Names of the sufficient maximal-commutativity conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SufficientCondition {
    /// For every n up to the bound some probe r has sigma^n(r) - r
    /// regular.
    SigmaPowerRegular,
    /// Differential spec over a characteristic-zero domain with a nonzero
    /// derivation.
    CharZeroNonzeroDelta,
}

impl fmt::Display for SufficientCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SufficientCondition::SigmaPowerRegular => "sigma_power_regular",
            SufficientCondition::CharZeroNonzeroDelta => "char_zero_nonzero_delta",
        };
        write!(f, "{s}")
    }
}

/// Maximal-commutativity verdict with the centralizer evidence and the
/// sufficient conditions that fired.
#[derive(Clone, Debug)]
pub struct MaxCommReport {
    pub maximal_up_to_bound: bool,
    pub witness: Option<OrePoly>,
    pub fired: Vec<SufficientCondition>,
    pub centralizer: SubspaceReport,
}

impl MaxCommReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "maximal_up_to_bound": self.maximal_up_to_bound,
            "witness": self.witness.as_ref().map(|w| w.to_string()),
            "sufficient_conditions_fired":
                self.fired.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "centralizer": self.centralizer.to_json(),
        })
    }
}

/// Decides maximal commutativity of R up to the bound (centralizer basis
/// inside R) and reports which sufficient conditions fired.
pub fn is_maximal_commutative(
    spec: &Arc<AlgebraSpec>,
    bound: &TruncationBound,
) -> Result<MaxCommReport> {
    is_maximal_commutative_seeded(spec, bound, DEFAULT_SAMPLE_SEED)
}

pub fn is_maximal_commutative_seeded(
    spec: &Arc<AlgebraSpec>,
    bound: &TruncationBound,
    seed: u64,
) -> Result<MaxCommReport> {
    let mut centralizer = centralizer_of_r_seeded(spec, bound, seed)?;
    let maximal = centralizer
        .basis
        .iter()
        .all(|b| b.degree() <= Degree::Of(0));
    let witness = centralizer.witness.clone();

    let mut fired = Vec::new();
    let ring = spec.ring();
    let mut probes = ring.generators().unwrap_or_default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfeed);
    for _ in 0..10 {
        probes.push(ring.sample(&mut rng, bound.coeff_degree.max(2)));
    }

    // Regularity of sigma^n(r) - r for some probe, for every n <= N.
    let mut all_n_ok = bound.x_degree >= 1;
    for n in 1..=bound.x_degree {
        let mut found = false;
        for r in &probes {
            let mut img = r.clone();
            for _ in 0..n {
                img = spec.sigma().apply(&img);
            }
            if (&img - r).is_regular() {
                found = true;
                break;
            }
        }
        if !found {
            all_n_ok = false;
            break;
        }
    }
    if all_n_ok {
        fired.push(SufficientCondition::SigmaPowerRegular);
    }

    // Characteristic-zero differential test with a nonzero derivation over
    // a domain.
    if spec.is_differential()
        && ring.characteristic() == 0
        && ring.is_domain()
        && probes.iter().any(|r| !spec.delta().apply(r).is_zero())
    {
        fired.push(SufficientCondition::CharZeroNonzeroDelta);
    }

    centralizer.sufficient_conditions_fired = fired.iter().map(|c| c.to_string()).collect();
    Ok(MaxCommReport { maximal_up_to_bound: maximal, witness, fired, centralizer })
}

/// The centralizer of a commutative coefficient ring is itself
/// commutative; this verifies it on the computed basis by exact pairwise
/// products.
pub fn centralizer_commutativity_check(
    spec: &Arc<AlgebraSpec>,
    bound: &TruncationBound,
) -> Result<bool> {
    let report = centralizer_of_r(spec, bound)?;
    for a in &report.basis {
        for b in &report.basis {
            if !a.commutator(b).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Constructive ideal-intersection step for differential specs: starting
/// from a nonzero p, repeatedly replace it by a nonzero commutator with a
/// coefficient-ring element (each strictly lowers the degree, because the
/// top coefficients cancel over a commutative ring) until it commutes with
/// the whole constraint set. The result is a nonzero element of the
/// two-sided ideal generated by p that lies in the centralizer of R.
pub fn ideal_intersection_witness(spec: &Arc<AlgebraSpec>, p: &OrePoly) -> Result<OrePoly> {
    if !spec.is_differential() {
        return Err(OreError::Unsupported(
            "the ideal-intersection construction needs a differential spec".into(),
        ));
    }
    if p.is_zero() {
        return Err(OreError::Precondition("p must be nonzero".into()));
    }
    let (constraints, _) = constraint_set(spec, &TruncationBound::new(0, 2), DEFAULT_SAMPLE_SEED);
    let ore_constraints: Vec<OrePoly> = constraints
        .into_iter()
        .map(|g| OrePoly::from_ring(spec, g))
        .collect();
    let mut current = p.clone();
    let max_rounds = p.degree().as_usize().unwrap_or(0) + 1;
    for _ in 0..max_rounds {
        let next = ore_constraints
            .iter()
            .map(|g| g.commutator(&current))
            .find(|c| !c.is_zero());
        match next {
            None => return Ok(current),
            Some(c) => {
                assert!(c.degree() < current.degree(), "commutator must lower degree");
                current = c;
            }
        }
    }
    unreachable!("degree strictly decreases, so the loop terminates");
}

/// Whether `element` lies in the span of `basis` (all over the same spec),
/// by exact rank comparison.
pub fn in_span(element: &OrePoly, basis: &[OrePoly]) -> bool {
    if element.is_zero() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let spec = element.spec();
    let ring = spec.ring();
    let all: Vec<&OrePoly> = basis.iter().chain(std::iter::once(element)).collect();
    let max_deg = all
        .iter()
        .filter_map(|e| e.degree().as_usize())
        .max()
        .unwrap_or(0);
    let values: Vec<RingElement> = all
        .iter()
        .flat_map(|e| (0..=max_deg).map(|k| e.coeff(k)))
        .collect();
    let dim = coord_dim(ring, &values);
    let row_of = |e: &OrePoly| -> Vec<Scalar> {
        (0..=max_deg)
            .flat_map(|k| coords(ring, &e.coeff(k), dim))
            .collect()
    };
    let cols = (max_deg + 1) * dim;
    let base_rows: Vec<Scalar> = basis.iter().flat_map(|b| row_of(b)).collect();
    let with_rows: Vec<Scalar> = basis
        .iter()
        .map(row_of)
        .chain(std::iter::once(row_of(element)))
        .flatten()
        .collect();
    let base = Matrix::new(ring.base(), basis.len(), cols, base_rows);
    let with = Matrix::new(ring.base(), basis.len() + 1, cols, with_rows);
    base.rank() == with.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn x_pow(spec: &Arc<AlgebraSpec>, n: usize) -> OrePoly {
        OrePoly::x_pow(spec, n)
    }

    fn y_pow(spec: &Arc<AlgebraSpec>, n: u32) -> OrePoly {
        OrePoly::from_ring(spec, spec.ring().var_elem().unwrap().pow(n))
    }

    #[test]
    fn q_weyl_centralizer_is_the_coefficient_ring() {
        let spec = catalog::q_weyl(BaseField::Q, 2).unwrap();
        let report = centralizer_of_r(&spec, &TruncationBound::new(4, 4)).unwrap();
        assert_eq!(report.verdict, SubspaceVerdict::EqualsRUpToBound);
        assert!(!report.sampled);
        assert_eq!(report.basis.len(), 5);
    }

    #[test]
    fn quantum_plane_at_a_root_of_unity_has_central_powers() {
        let spec = catalog::quantum_plane(BaseField::fp(7).unwrap(), 2).unwrap();
        let report = centralizer_of_r(&spec, &TruncationBound::new(3, 3)).unwrap();
        assert_eq!(report.verdict, SubspaceVerdict::StrictlyLargerWithWitness);
        assert!(report.basis.contains(&x_pow(&spec, 3)));
        assert!(report.basis.contains(&y_pow(&spec, 3)));
    }

    #[test]
    fn sequence_shift_produces_the_indicator_witness() {
        let spec = catalog::sequence_shift().unwrap();
        let report = centralizer_of_r(&spec, &TruncationBound::new(2, 3)).unwrap();
        assert!(report.sampled);
        assert_eq!(report.seed, Some(DEFAULT_SAMPLE_SEED));
        let q = BaseField::Q;
        let d0 = spec.ring().seq(vec![Scalar::one(&q)], Scalar::zero(&q));
        let d0x = OrePoly::monomial(&spec, d0, 1);
        assert_eq!(report.verdict, SubspaceVerdict::StrictlyLargerWithWitness);
        assert_eq!(report.witness.as_ref(), Some(&d0x));
        assert!(report.basis.contains(&d0x));
    }

    #[test]
    fn weyl_char_p_witness_is_the_frobenius_power() {
        let spec = catalog::weyl(BaseField::fp(3).unwrap()).unwrap();
        let report = is_maximal_commutative(&spec, &TruncationBound::new(4, 4)).unwrap();
        assert!(!report.maximal_up_to_bound);
        assert_eq!(report.witness.as_ref(), Some(&x_pow(&spec, 3)));
        assert!(report.fired.is_empty());
    }

    #[test]
    fn weyl_q_is_maximal_commutative_by_the_char_zero_test() {
        let spec = catalog::weyl(BaseField::Q).unwrap();
        let report = is_maximal_commutative(&spec, &TruncationBound::new(4, 4)).unwrap();
        assert!(report.maximal_up_to_bound);
        assert!(report.fired.contains(&SufficientCondition::CharZeroNonzeroDelta));
    }

    #[test]
    fn quantum_plane_q_is_maximal_commutative_by_regularity() {
        let spec = catalog::quantum_plane(BaseField::Q, 2).unwrap();
        let report = is_maximal_commutative(&spec, &TruncationBound::new(4, 4)).unwrap();
        assert!(report.maximal_up_to_bound);
        assert!(report.fired.contains(&SufficientCondition::SigmaPowerRegular));
        assert!(!report.fired.contains(&SufficientCondition::CharZeroNonzeroDelta));
    }

    #[test]
    fn weyl_center_is_the_scalars() {
        let spec = catalog::weyl(BaseField::Q).unwrap();
        let report = center(&spec, &TruncationBound::new(6, 6)).unwrap();
        assert_eq!(report.verdict, SubspaceVerdict::EqualsScalarsUpToBound);
        assert_eq!(report.basis, vec![OrePoly::one(&spec)]);
    }

    #[test]
    fn weyl_f3_center_contains_both_cubes() {
        let spec = catalog::weyl(BaseField::fp(3).unwrap()).unwrap();
        let report = center(&spec, &TruncationBound::new(4, 4)).unwrap();
        assert!(report.basis.contains(&x_pow(&spec, 3)));
        assert!(report.basis.contains(&y_pow(&spec, 3)));
    }

    #[test]
    fn nilpotent_quotient_center_contains_x_squared() {
        let spec = catalog::nilpotent_quotient_differential().unwrap();
        let report = center(&spec, &TruncationBound::new(4, 1)).unwrap();
        assert!(report.basis.contains(&x_pow(&spec, 2)));
    }

    #[test]
    fn center_elements_commute_with_random_polynomials() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for spec in [
            catalog::weyl(BaseField::fp(3).unwrap()).unwrap(),
            catalog::nilpotent_quotient_differential().unwrap(),
        ] {
            let report = center(&spec, &TruncationBound::new(4, 3)).unwrap();
            for _ in 0..20 {
                let mut p = OrePoly::zero(&spec);
                for _ in 0..3 {
                    let deg = rng.random_range(0..=4);
                    p = &p + &OrePoly::monomial(&spec, spec.ring().sample(&mut rng, 3), deg);
                }
                for b in &report.basis {
                    assert!(b.commutator(&p).is_zero());
                }
            }
        }
    }

    #[test]
    fn constants_reports() {
        let weyl = catalog::weyl(BaseField::Q).unwrap();
        let c = constants(&weyl, &TruncationBound::new(0, 6)).unwrap();
        assert!(c.constants_form_field);
        assert_eq!(c.report.basis, vec![OrePoly::one(&weyl)]);

        let weyl3 = catalog::weyl(BaseField::fp(3).unwrap()).unwrap();
        let c3 = constants(&weyl3, &TruncationBound::new(0, 5)).unwrap();
        assert!(c3.report.basis.contains(&y_pow(&weyl3, 3)));
        assert!(!c3.constants_form_field);

        let euler = catalog::euler().unwrap();
        let ce = constants(&euler, &TruncationBound::new(0, 5)).unwrap();
        assert!(ce.constants_form_field);
        assert_eq!(ce.report.basis, vec![OrePoly::one(&euler)]);

        let f2q = catalog::nilpotent_quotient_differential().unwrap();
        let cq = constants(&f2q, &TruncationBound::new(0, 1)).unwrap();
        assert_eq!(cq.report.basis, vec![OrePoly::one(&f2q)]);
        assert!(cq.constants_form_field);

        // Skew specs are rejected.
        let plane = catalog::quantum_plane(BaseField::Q, 2).unwrap();
        assert!(constants(&plane, &TruncationBound::new(0, 2)).is_err());
    }

    #[test]
    fn centralizers_of_commutative_rings_are_commutative() {
        for spec in [
            catalog::quantum_plane(BaseField::fp(7).unwrap(), 2).unwrap(),
            catalog::weyl(BaseField::fp(3).unwrap()).unwrap(),
            catalog::weyl(BaseField::Q).unwrap(),
        ] {
            assert!(centralizer_commutativity_check(&spec, &TruncationBound::new(3, 3)).unwrap());
        }
    }

    #[test]
    fn bound_growth_preserves_found_directions() {
        for spec in [
            catalog::weyl(BaseField::fp(3).unwrap()).unwrap(),
            catalog::quantum_plane(BaseField::fp(7).unwrap(), 2).unwrap(),
        ] {
            let small = centralizer_of_r(&spec, &TruncationBound::new(3, 3)).unwrap();
            let large = centralizer_of_r(&spec, &TruncationBound::new(4, 4)).unwrap();
            for b in &small.basis {
                assert!(in_span(b, &large.basis));
            }
        }
    }

    #[test]
    fn ideal_intersection_reduction_terminates_in_the_centralizer() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for spec in [
            catalog::weyl(BaseField::Q).unwrap(),
            catalog::weyl(BaseField::fp(3).unwrap()).unwrap(),
            catalog::euler().unwrap(),
            catalog::nilpotent_quotient_differential().unwrap(),
        ] {
            for _ in 0..15 {
                let mut p = OrePoly::zero(&spec);
                while p.is_zero() {
                    for _ in 0..3 {
                        let deg = rng.random_range(0..=4);
                        p = &p + &OrePoly::monomial(&spec, spec.ring().sample(&mut rng, 3), deg);
                    }
                }
                let w = ideal_intersection_witness(&spec, &p).unwrap();
                assert!(!w.is_zero());
                let y = OrePoly::from_ring(&spec, spec.ring().var_elem().unwrap());
                assert!(y.commutator(&w).is_zero());
            }
        }
    }

    #[test]
    fn rational_function_bounds_are_rejected() {
        let spec = catalog::q_weyl_rational(BaseField::Q, 2).unwrap();
        assert!(centralizer_of_r(&spec, &TruncationBound::new(2, 2)).is_err());
    }
}
