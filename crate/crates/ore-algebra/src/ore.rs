//! The Ore extension ring itself: left-coefficient polynomials in x over a
//! coefficient ring, multiplied through the commutation rule
//! `x r = sigma(r) x + delta(r)`.
//!
//! Products are expanded with the expansion maps `pi(m, n)` defined by
//! `pi(0,0) = id`, `pi(m,n) = 0` for `m > n >= 0` or negative indices, and
//! `pi(m,n) = sigma . pi(m-1,n-1) + delta . pi(m,n-1)` otherwise, so that
//! `x^n r = sum_m pi(m,n)(r) x^m`. Each call computes its own dynamic
//! programming triangle; polynomials stay immutable and shareable.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{OreError, Result};
use crate::maps::{DerivDescriptor, EndoDescriptor};
use crate::ring::{RingDescriptor, RingElement};

/// A coefficient ring together with a validated endomorphism and twisted
/// derivation: everything needed to form R[x;sigma,delta].
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    ring: Arc<RingDescriptor>,
    sigma: EndoDescriptor,
    delta: DerivDescriptor,
    differential: bool,
    skew: bool,
}

impl AlgebraSpec {
    /// Bundles a ring with its maps. The derivation must have been
    /// constructed against the very same twist.
    pub fn new(
        ring: &Arc<RingDescriptor>,
        sigma: EndoDescriptor,
        delta: DerivDescriptor,
    ) -> Result<Arc<AlgebraSpec>> {
        if sigma.ring() != ring || delta.ring() != ring {
            return Err(OreError::Incompatible(
                "maps must live on the spec's coefficient ring".into(),
            ));
        }
        if delta.sigma() != &sigma {
            return Err(OreError::Incompatible(
                "the derivation was validated against a different twist".into(),
            ));
        }
        let differential = sigma.is_identity();
        let skew = delta.is_zero_kind();
        Ok(Arc::new(AlgebraSpec { ring: Arc::clone(ring), sigma, delta, differential, skew }))
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn sigma(&self) -> &EndoDescriptor {
        &self.sigma
    }

    pub fn delta(&self) -> &DerivDescriptor {
        &self.delta
    }

    /// sigma is the identity.
    pub fn is_differential(&self) -> bool {
        self.differential
    }

    /// delta is the zero map.
    pub fn is_skew(&self) -> bool {
        self.skew
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[x; {}, {}]", self.ring, self.sigma, self.delta)
    }
}

/// Degree of an Ore polynomial; the zero polynomial has degree `NegInf`,
/// ordered below every integer degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Of(usize),
}

impl Degree {
    pub fn as_usize(&self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Of(n) => Some(*n),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Of(n) => write!(f, "{n}"),
        }
    }
}

/// A left-coefficient Ore polynomial: finitely many nonzero coefficients
/// `a_i` representing `sum a_i x^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrePoly {
    spec: Arc<AlgebraSpec>,
    coeffs: BTreeMap<usize, RingElement>,
}

impl OrePoly {
    pub fn zero(spec: &Arc<AlgebraSpec>) -> OrePoly {
        OrePoly { spec: Arc::clone(spec), coeffs: BTreeMap::new() }
    }

    pub fn one(spec: &Arc<AlgebraSpec>) -> OrePoly {
        OrePoly::from_ring(spec, spec.ring().one())
    }

    /// Embeds a coefficient-ring element as a degree <= 0 polynomial.
    pub fn from_ring(spec: &Arc<AlgebraSpec>, r: RingElement) -> OrePoly {
        OrePoly::monomial(spec, r, 0)
    }

    /// The generator x.
    pub fn x(spec: &Arc<AlgebraSpec>) -> OrePoly {
        OrePoly::monomial(spec, spec.ring().one(), 1)
    }

    pub fn x_pow(spec: &Arc<AlgebraSpec>, n: usize) -> OrePoly {
        OrePoly::monomial(spec, spec.ring().one(), n)
    }

    pub fn monomial(spec: &Arc<AlgebraSpec>, coeff: RingElement, deg: usize) -> OrePoly {
        assert!(coeff.ring() == spec.ring(), "coefficient from a foreign ring");
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(deg, coeff);
        }
        OrePoly { spec: Arc::clone(spec), coeffs }
    }

    pub fn from_terms(
        spec: &Arc<AlgebraSpec>,
        terms: impl IntoIterator<Item = (usize, RingElement)>,
    ) -> OrePoly {
        let mut out = OrePoly::zero(spec);
        for (deg, c) in terms {
            out.add_term(deg, c);
        }
        out
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.degree() == Degree::Of(0) && self.coeffs[&0].is_one()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.keys().next_back() {
            None => Degree::NegInf,
            Some(&n) => Degree::Of(n),
        }
    }

    pub fn leading_coeff(&self) -> Option<&RingElement> {
        self.coeffs.values().next_back()
    }

    /// The coefficient of x^i (zero when absent).
    pub fn coeff(&self, i: usize) -> RingElement {
        self.coeffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| self.spec.ring().zero())
    }

    /// Nonzero terms in ascending degree order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &RingElement)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    fn add_term(&mut self, deg: usize, c: RingElement) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&deg) {
            None => {
                self.coeffs.insert(deg, c);
            }
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.coeffs.insert(deg, sum);
                }
            }
        }
    }

    fn assert_same_spec(&self, other: &OrePoly) {
        assert!(
            Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec,
            "Ore polynomial operation across distinct algebras"
        );
    }

    /// PQ - QP.
    pub fn commutator(&self, other: &OrePoly) -> OrePoly {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, e: u32) -> OrePoly {
        let mut acc = OrePoly::one(&self.spec);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Right division by a monic divisor: `self = q * d + r` with
    /// `deg r < deg d`. Monicity makes the leading terms cancel exactly
    /// (every power of sigma fixes 1), so no inverse of sigma is needed.
    pub fn right_divide(&self, d: &OrePoly) -> Result<(OrePoly, OrePoly)> {
        self.assert_same_spec(d);
        let Degree::Of(dd) = d.degree() else {
            return Err(OreError::Precondition("division by the zero polynomial".into()));
        };
        if !d.leading_coeff().expect("nonzero divisor").is_one() {
            return Err(OreError::NonMonicDivisor);
        }
        let mut rem = self.clone();
        let mut quot = OrePoly::zero(&self.spec);
        while let Degree::Of(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let a = rem.leading_coeff().expect("nonzero remainder").clone();
            let shift = dr - dd;
            let t = OrePoly::monomial(&self.spec, a.clone(), shift);
            rem = &rem - &(&t * d);
            debug_assert!(rem.degree() < Degree::Of(dr), "leading term must cancel");
            quot.add_term(shift, a);
        }
        Ok((quot, rem))
    }
}

/// The expansion map `pi(m, n)` applied to `r`: the x^m coefficient of
/// `x^n r`. Defined (as zero) for all integer pairs.
pub fn pi_map(spec: &Arc<AlgebraSpec>, m: i64, n: i64, r: &RingElement) -> RingElement {
    if m < 0 || n < 0 || m > n {
        return spec.ring().zero();
    }
    let triangle = pi_triangle(spec, n as usize, r);
    triangle[n as usize][m as usize].clone()
}

/// Expands `x^n r` as a left-coefficient polynomial.
pub fn x_power_times(spec: &Arc<AlgebraSpec>, n: usize, r: &RingElement) -> OrePoly {
    let triangle = pi_triangle(spec, n, r);
    OrePoly::from_terms(
        spec,
        triangle[n].iter().cloned().enumerate(),
    )
}

/// Rows 0..=n of the expansion triangle for a fixed operand:
/// `row[i][m] = pi(m, i)(r)`. Row i+1 is produced from row i by
/// `sigma(row[i][m-1]) + delta(row[i][m])`, sharing every intermediate
/// image, which is what keeps the recursion polynomial-time.
fn pi_triangle(spec: &Arc<AlgebraSpec>, n: usize, r: &RingElement) -> Vec<Vec<RingElement>> {
    assert!(r.ring() == spec.ring(), "operand from a foreign ring");
    let zero = spec.ring().zero();
    let mut rows: Vec<Vec<RingElement>> = Vec::with_capacity(n + 1);
    rows.push(vec![r.clone()]);
    for i in 0..n {
        let prev = &rows[i];
        let mut row = Vec::with_capacity(i + 2);
        for m in 0..=(i + 1) {
            let shifted = if m == 0 { &zero } else { &prev[m - 1] };
            let kept = prev.get(m).unwrap_or(&zero);
            row.push(&spec.sigma().apply(shifted) + &spec.delta().apply(kept));
        }
        rows.push(row);
    }
    rows
}

impl std::ops::Add for &OrePoly {
    type Output = OrePoly;
    fn add(self, rhs: &OrePoly) -> OrePoly {
        self.assert_same_spec(rhs);
        let mut out = self.clone();
        for (deg, c) in &rhs.coeffs {
            out.add_term(*deg, c.clone());
        }
        out
    }
}

impl std::ops::Neg for &OrePoly {
    type Output = OrePoly;
    fn neg(self) -> OrePoly {
        OrePoly {
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl std::ops::Sub for &OrePoly {
    type Output = OrePoly;
    fn sub(self, rhs: &OrePoly) -> OrePoly {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &OrePoly {
    type Output = OrePoly;
    fn mul(self, rhs: &OrePoly) -> OrePoly {
        self.assert_same_spec(rhs);
        let mut out = OrePoly::zero(&self.spec);
        let max_i = match self.degree() {
            Degree::NegInf => return out,
            Degree::Of(n) => n,
        };
        for (j, b) in &rhs.coeffs {
            let triangle = pi_triangle(&self.spec, max_i, b);
            for (i, a) in &self.coeffs {
                for (m, pim) in triangle[*i].iter().enumerate() {
                    if pim.is_zero() {
                        continue;
                    }
                    out.add_term(m + j, a * pim);
                }
            }
        }
        out
    }
}

impl fmt::Display for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match deg {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{deg}")?,
            }
        }
        Ok(())
    }
}

/// JSON form: a list of `{deg, coeff}` objects in descending degree, with
/// exact coefficients rendered as strings.
pub fn ore_poly_to_json(p: &OrePoly) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = p
        .coeffs
        .iter()
        .rev()
        .map(|(deg, c)| serde_json::json!({ "deg": deg, "coeff": c.to_string() }))
        .collect();
    serde_json::json!(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::maps::binomial_in;
    use crate::scalar::BaseField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Expands x * p one step at a time straight from the commutation rule,
    /// independently of the pi-triangle machinery.
    fn x_times_oracle(p: &OrePoly) -> OrePoly {
        let spec = p.spec();
        let mut out = OrePoly::zero(spec);
        for (i, a) in p.terms() {
            out = &out + &OrePoly::monomial(spec, spec.sigma().apply(a), i + 1);
            out = &out + &OrePoly::monomial(spec, spec.delta().apply(a), i);
        }
        out
    }

    #[test]
    fn pi_base_cases() {
        let spec = catalog::weyl(BaseField::Q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let r = spec.ring().sample(&mut rng, 4);
            assert_eq!(pi_map(&spec, 0, 0, &r), r);
            assert!(pi_map(&spec, 2, 1, &r).is_zero());
            assert!(pi_map(&spec, -1, 3, &r).is_zero());
            assert!(pi_map(&spec, 0, -2, &r).is_zero());
        }
    }

    #[test]
    fn pi_differential_closed_form_on_a_square() {
        // With the identity twist, pi(1, 2) = binom(2,1) * delta, so on y^2
        // it evaluates to 2 * (2y) = 4y.
        let spec = catalog::weyl(BaseField::Q).unwrap();
        let y = spec.ring().var_elem().unwrap();
        let got = pi_map(&spec, 1, 2, &y.pow(2));
        assert_eq!(got, &spec.ring().from_i64(4) * &y);
    }

    #[test]
    fn commutation_rule_in_the_weyl_algebra() {
        let spec = catalog::weyl(BaseField::Q).unwrap();
        let yr = spec.ring().var_elem().unwrap();
        let y = OrePoly::from_ring(&spec, yr.clone());
        let x = OrePoly::x(&spec);
        // x y = y x + 1
        let expected = &(&y * &x) + &OrePoly::one(&spec);
        assert_eq!(&x * &y, expected);
        // x^2 y = y x^2 + 2 x
        let x2y = x_power_times(&spec, 2, &yr);
        let expected2 =
            &(&y * &x.pow(2)) + &(&OrePoly::from_ring(&spec, spec.ring().from_i64(2)) * &x);
        assert_eq!(x2y, expected2);
        // x y - y x = 1
        assert!(x.commutator(&y).is_one());
    }

    #[test]
    fn q_deformed_commutation_rule() {
        let spec = catalog::q_weyl(BaseField::Q, 2).unwrap();
        let yr = spec.ring().var_elem().unwrap();
        let y = OrePoly::from_ring(&spec, yr.clone());
        let x = OrePoly::x(&spec);
        // x y = q y x + 1 with delta(y) = (qy - y)/(qy - y) = 1.
        let q_y = OrePoly::from_ring(&spec, &spec.ring().from_i64(2) * &yr);
        let expected = &(&q_y * &x) + &OrePoly::one(&spec);
        assert_eq!(&x * &y, expected);
    }

    #[test]
    fn quantum_plane_skew_commutation() {
        let spec = catalog::quantum_plane(BaseField::Q, 2).unwrap();
        let yr = spec.ring().var_elem().unwrap();
        let y = OrePoly::from_ring(&spec, yr.clone());
        let x = OrePoly::x(&spec);
        let expected = &OrePoly::from_ring(&spec, &spec.ring().from_i64(2) * &yr) * &x;
        assert_eq!(&x * &y, expected);
    }

    #[test]
    fn unit_laws_and_degree() {
        let spec = catalog::q_weyl(BaseField::Q, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let p = random_ore(&spec, &mut rng, 3, 3);
            assert_eq!(&p * &OrePoly::one(&spec), p);
            assert_eq!(&OrePoly::one(&spec) * &p, p);
        }
        assert_eq!(OrePoly::zero(&spec).degree(), Degree::NegInf);
        assert!(Degree::NegInf < Degree::Of(0));
    }

    #[test]
    fn frobenius_power_is_central_in_characteristic_p() {
        let spec = catalog::weyl(BaseField::fp(3).unwrap()).unwrap();
        let y = OrePoly::from_ring(&spec, spec.ring().var_elem().unwrap());
        let x3 = OrePoly::x(&spec).pow(3);
        assert!(x3.commutator(&y).is_zero());
        // r, s in a commutative coefficient ring commute as Ore elements.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let r = OrePoly::from_ring(&spec, spec.ring().sample(&mut rng, 3));
            let s = OrePoly::from_ring(&spec, spec.ring().sample(&mut rng, 3));
            assert!(r.commutator(&s).is_zero());
        }
    }

    #[test]
    fn nilpotent_quotient_central_square() {
        let spec = catalog::nilpotent_quotient_differential().unwrap();
        let y = OrePoly::from_ring(&spec, spec.ring().var_elem().unwrap());
        let x = OrePoly::x(&spec);
        let x2 = x.pow(2);
        assert!(x2.commutator(&y).is_zero());
        assert!(x2.commutator(&x).is_zero());
    }

    #[test]
    fn x_power_times_matches_the_single_step_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (_, spec) in catalog::standard_catalog() {
            for _ in 0..10 {
                let r = spec.ring().sample(&mut rng, 3);
                let mut acc = OrePoly::from_ring(&spec, r.clone());
                for n in 1..=6usize {
                    acc = x_times_oracle(&acc);
                    assert_eq!(x_power_times(&spec, n, &r), acc, "spec {spec}, n={n}");
                }
            }
        }
    }

    #[test]
    fn differential_pi_equals_scaled_derivative_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for spec in [
            catalog::weyl(BaseField::Q).unwrap(),
            catalog::weyl(BaseField::fp(3).unwrap()).unwrap(),
            catalog::nilpotent_quotient_differential().unwrap(),
        ] {
            for _ in 0..10 {
                let r = spec.ring().sample(&mut rng, 3);
                for n in 0..=8i64 {
                    for m in 0..=n {
                        let binom = spec.ring().from_scalar(binomial_in(
                            &spec.ring().base(),
                            n as usize,
                            m as usize,
                        ));
                        let expected =
                            &binom * &spec.delta().power((n - m) as usize, &r).unwrap();
                        assert_eq!(pi_map(&spec, m, n, &r), expected);
                    }
                }
            }
        }
    }

    fn random_ore(
        spec: &Arc<AlgebraSpec>,
        rng: &mut ChaCha8Rng,
        max_deg: usize,
        coeff_bound: usize,
    ) -> OrePoly {
        use rand::Rng;
        let terms = rng.random_range(0..=max_deg + 1);
        let mut p = OrePoly::zero(spec);
        for _ in 0..terms {
            let deg = rng.random_range(0..=max_deg);
            p = &p + &OrePoly::monomial(spec, spec.ring().sample(rng, coeff_bound), deg);
        }
        p
    }

    #[test]
    fn right_division_examples() {
        let spec = catalog::weyl(BaseField::Q).unwrap();
        let y = OrePoly::from_ring(&spec, spec.ring().var_elem().unwrap());
        let x = OrePoly::x(&spec);
        let p = &(&y * &x) + &OrePoly::one(&spec);
        let (q, r) = p.right_divide(&x).unwrap();
        assert_eq!(q, y);
        assert!(r.is_one());

        let d = &x.pow(2) + &y;
        let (q, r) = d.right_divide(&d).unwrap();
        assert!(q.is_one());
        assert!(r.is_zero());

        let spec2 = catalog::nilpotent_quotient_differential().unwrap();
        let one = OrePoly::one(&spec2);
        let (q, r) = one.right_divide(&OrePoly::x(&spec2).pow(2)).unwrap();
        assert!(q.is_zero());
        assert!(r.is_one());

        // Non-monic divisors are rejected.
        let bad = &y * &x;
        assert!(matches!(p.right_divide(&bad), Err(OreError::NonMonicDivisor)));
        assert!(p.right_divide(&OrePoly::zero(&spec)).is_err());
    }

    #[test]
    fn division_reconstructs_and_respects_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for (_, spec) in catalog::standard_catalog() {
            for _ in 0..15 {
                let p = random_ore(&spec, &mut rng, 4, 3);
                let deg = rand::Rng::random_range(&mut rng, 1..=3usize);
                let mut d = OrePoly::x_pow(&spec, deg);
                d = &d + &random_ore(&spec, &mut rng, deg - 1, 2);
                let (q, r) = p.right_divide(&d).unwrap();
                assert_eq!(&(&q * &d) + &r, p);
                assert!(r.degree() < d.degree());
            }
        }
    }

    #[test]
    fn degree_law_for_regular_leading_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (_, spec) in catalog::standard_catalog() {
            for _ in 0..20 {
                let p = random_ore(&spec, &mut rng, 3, 2);
                let q = random_ore(&spec, &mut rng, 3, 2);
                let (Degree::Of(dp), Degree::Of(dq)) = (p.degree(), q.degree()) else {
                    continue;
                };
                let prod = &p * &q;
                assert!(prod.degree() <= Degree::Of(dp + dq));
                let lead_product = {
                    // sigma^(deg p) applied to the leading coefficient of q.
                    let mut lc = q.leading_coeff().unwrap().clone();
                    for _ in 0..dp {
                        lc = spec.sigma().apply(&lc);
                    }
                    p.leading_coeff().unwrap() * &lc
                };
                if !lead_product.is_zero() && lead_product.is_regular() {
                    assert_eq!(prod.degree(), Degree::Of(dp + dq));
                }
            }
        }
    }

    #[test]
    fn display_layout() {
        let spec = catalog::weyl(BaseField::Q).unwrap();
        let y = spec.ring().var_elem().unwrap();
        let p = OrePoly::from_terms(
            &spec,
            [
                (3, &y.pow(2) + &spec.ring().one()),
                (1, spec.ring().from_i64(2)),
                (0, spec.ring().one()),
            ],
        );
        assert_eq!(p.to_string(), "(y^2 + 1)*x^3 + (2)*x + (1)");
        assert_eq!(OrePoly::zero(&spec).to_string(), "0");
    }
}
