//! Coefficient rings: a uniform descriptor-driven contract plus the
//! concrete rings used throughout the crate.
//!
//! Supported rings: a base field k, the polynomial ring k[y], quotients
//! k[y]/<f> by a monic modulus, the rational-function field k(y), and the
//! ring of eventually constant sequences over Q. Every element is kept in a
//! canonical normal form so structural equality is semantic equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use crate::error::{OreError, Result};
use crate::poly;
use crate::scalar::{BaseField, Scalar};

/// Which concrete ring a descriptor denotes.
#[derive(Clone, Debug, PartialEq)]
pub enum RingKind {
    /// The base field itself.
    Field,
    /// Univariate polynomials over the base field.
    Polynomial { var: String },
    /// k[y]/<modulus> with a monic modulus of degree >= 1. The `domain`
    /// flag is computed over F_p (irreducibility sweep) and declared by the
    /// caller over Q.
    Quotient {
        var: String,
        modulus: Vec<Scalar>,
        domain: bool,
    },
    /// The field of rational functions k(y).
    RationalFunctions { var: String },
    /// Eventually constant sequences N -> Q. This is the finitely
    /// representable subring of the full function ring; it is closed under
    /// the shift endomorphism and contains the indicator of {0}.
    Sequences,
}

/// A coefficient ring. Construct through the associated functions, which
/// validate the parameters; share via `Arc`.
#[derive(Clone, Debug, PartialEq)]
pub struct RingDescriptor {
    base: BaseField,
    kind: RingKind,
}

impl RingDescriptor {
    pub fn base_field(base: BaseField) -> Arc<RingDescriptor> {
        Arc::new(RingDescriptor { base, kind: RingKind::Field })
    }

    pub fn polynomial(base: BaseField, var: &str) -> Arc<RingDescriptor> {
        Arc::new(RingDescriptor {
            base,
            kind: RingKind::Polynomial { var: var.to_string() },
        })
    }

    /// k[y]/<modulus>. The modulus must be monic of degree >= 1. Over F_p
    /// the domain flag is decided by an exhaustive irreducibility sweep;
    /// over Q the caller declares it (default: not known to be a domain).
    pub fn quotient(
        base: BaseField,
        var: &str,
        modulus: Vec<Scalar>,
        declared_domain: Option<bool>,
    ) -> Result<Arc<RingDescriptor>> {
        let mut modulus = modulus;
        poly::normalize(&mut modulus);
        if poly::degree(&modulus).is_none_or(|d| d == 0) {
            return Err(OreError::InvalidConstruction(
                "quotient modulus must have degree >= 1".into(),
            ));
        }
        if !poly::is_monic(&modulus) {
            return Err(OreError::InvalidConstruction(
                "quotient modulus must be monic".into(),
            ));
        }
        if modulus.iter().any(|c| c.field() != base) {
            return Err(OreError::InvalidConstruction(
                "modulus coefficients must lie in the base field".into(),
            ));
        }
        let domain = match base {
            BaseField::Fp(_) => poly::is_irreducible_fp(&base, &modulus),
            BaseField::Q => declared_domain.unwrap_or(false),
        };
        Ok(Arc::new(RingDescriptor {
            base,
            kind: RingKind::Quotient { var: var.to_string(), modulus, domain },
        }))
    }

    pub fn rational_functions(base: BaseField, var: &str) -> Arc<RingDescriptor> {
        Arc::new(RingDescriptor {
            base,
            kind: RingKind::RationalFunctions { var: var.to_string() },
        })
    }

    /// Eventually constant sequences; only available over Q.
    pub fn sequences() -> Arc<RingDescriptor> {
        Arc::new(RingDescriptor { base: BaseField::Q, kind: RingKind::Sequences })
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    /// All supported coefficient rings are commutative.
    pub fn is_commutative(&self) -> bool {
        true
    }

    pub fn is_domain(&self) -> bool {
        match &self.kind {
            RingKind::Field | RingKind::Polynomial { .. } | RingKind::RationalFunctions { .. } => {
                true
            }
            RingKind::Quotient { domain, .. } => *domain,
            RingKind::Sequences => false,
        }
    }

    /// No nonzero nilpotents.
    pub fn is_reduced(&self) -> bool {
        match &self.kind {
            RingKind::Quotient { modulus, .. } => poly::is_square_free(&self.base, modulus),
            RingKind::Sequences => true,
            _ => true,
        }
    }

    pub fn is_finite(&self) -> bool {
        match &self.kind {
            RingKind::Field => self.base.is_finite(),
            RingKind::Quotient { .. } => self.base.is_finite(),
            _ => false,
        }
    }

    pub fn cardinality(&self) -> Option<u64> {
        match &self.kind {
            RingKind::Field => self.base.cardinality(),
            RingKind::Quotient { modulus, .. } => {
                let p = self.base.cardinality()?;
                p.checked_pow(poly::degree(modulus)? as u32)
            }
            _ => None,
        }
    }

    pub fn var_name(&self) -> Option<&str> {
        match &self.kind {
            RingKind::Polynomial { var }
            | RingKind::Quotient { var, .. }
            | RingKind::RationalFunctions { var } => Some(var),
            _ => None,
        }
    }

    pub fn modulus(&self) -> Option<&[Scalar]> {
        match &self.kind {
            RingKind::Quotient { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    // ---- element constructors ----

    pub fn zero(self: &Arc<Self>) -> RingElement {
        self.from_scalar(Scalar::zero(&self.base))
    }

    pub fn one(self: &Arc<Self>) -> RingElement {
        self.from_scalar(Scalar::one(&self.base))
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> RingElement {
        self.from_scalar(Scalar::from_i64(&self.base, n))
    }

    pub fn from_scalar(self: &Arc<Self>, s: Scalar) -> RingElement {
        assert_eq!(s.field(), self.base, "scalar is not in the base field");
        match &self.kind {
            RingKind::Field => RingElement::raw(self, Payload::Scalar(s)),
            RingKind::Polynomial { .. } | RingKind::Quotient { .. } => {
                self.from_poly(poly::constant(&self.base, s))
            }
            RingKind::RationalFunctions { .. } => {
                let num = poly::constant(&self.base, s);
                let den = vec![Scalar::one(&self.base)];
                self.ratfn(num, den).expect("constant denominator is nonzero")
            }
            RingKind::Sequences => self.seq(Vec::new(), s),
        }
    }

    /// The generator y, where the ring has one.
    pub fn var_elem(self: &Arc<Self>) -> Result<RingElement> {
        match &self.kind {
            RingKind::Polynomial { .. } | RingKind::Quotient { .. } => {
                Ok(self.from_poly(poly::var(&self.base)))
            }
            RingKind::RationalFunctions { .. } => {
                self.ratfn(poly::var(&self.base), vec![Scalar::one(&self.base)])
            }
            _ => Err(OreError::Unsupported(format!(
                "ring {self} has no polynomial generator"
            ))),
        }
    }

    /// Interprets dense ascending coefficients in this ring (reducing mod
    /// the modulus in quotients). Not available for sequences.
    pub fn from_poly(self: &Arc<Self>, coeffs: Vec<Scalar>) -> RingElement {
        let mut c = coeffs;
        poly::normalize(&mut c);
        match &self.kind {
            RingKind::Field => {
                assert!(c.len() <= 1, "field element of positive degree");
                let s = c.pop().unwrap_or_else(|| Scalar::zero(&self.base));
                RingElement::raw(self, Payload::Scalar(s))
            }
            RingKind::Polynomial { .. } => RingElement::raw(self, Payload::Poly(c)),
            RingKind::Quotient { modulus, .. } => {
                let r = poly::rem(&self.base, &c, modulus);
                RingElement::raw(self, Payload::Residue(r))
            }
            RingKind::RationalFunctions { .. } => self
                .ratfn(c, vec![Scalar::one(&self.base)])
                .expect("constant denominator is nonzero"),
            RingKind::Sequences => panic!("sequences are not polynomial-backed"),
        }
    }

    /// A rational function num/den in normal form (denominator monic and
    /// coprime to the numerator).
    pub fn ratfn(self: &Arc<Self>, num: Vec<Scalar>, den: Vec<Scalar>) -> Result<RingElement> {
        let RingKind::RationalFunctions { .. } = &self.kind else {
            return Err(OreError::Unsupported(format!(
                "ring {self} has no fraction representation"
            )));
        };
        let mut num = num;
        let mut den = den;
        poly::normalize(&mut num);
        poly::normalize(&mut den);
        if den.is_empty() {
            return Err(OreError::InvalidConstruction(
                "rational function with zero denominator".into(),
            ));
        }
        Ok(RingElement::raw(self, normalize_ratfn(&self.base, num, den)))
    }

    /// An eventually constant sequence given by an explicit prefix and the
    /// constant tail value.
    pub fn seq(self: &Arc<Self>, prefix: Vec<Scalar>, tail: Scalar) -> RingElement {
        assert!(matches!(self.kind, RingKind::Sequences), "not a sequence ring");
        let mut prefix = prefix;
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        RingElement::raw(self, Payload::Seq { prefix, tail })
    }

    /// Every element of a finite ring, exactly once, in a deterministic
    /// counter order (constant coefficient varies fastest).
    pub fn enumerate_elements(self: &Arc<Self>) -> Result<Vec<RingElement>> {
        if !self.is_finite() {
            return Err(OreError::Unsupported(format!("ring {self} is infinite")));
        }
        let p = self.base.cardinality().expect("finite base field");
        match &self.kind {
            RingKind::Field => Ok((0..p).map(|v| self.from_i64(v as i64)).collect()),
            RingKind::Quotient { modulus, .. } => {
                let d = poly::degree(modulus).expect("modulus degree >= 1");
                let total = self.cardinality().expect("desk-scale cardinality");
                let mut out = Vec::with_capacity(total as usize);
                for idx in 0..total {
                    let mut coeffs = Vec::with_capacity(d);
                    let mut k = idx;
                    for _ in 0..d {
                        coeffs.push(Scalar::from_i64(&self.base, (k % p) as i64));
                        k /= p;
                    }
                    out.push(self.from_poly(coeffs));
                }
                Ok(out)
            }
            _ => unreachable!("is_finite covers these cases"),
        }
    }

    /// A finite set G such that the smallest subring containing the base
    /// field and G is the whole ring. The sequence ring is not finitely
    /// generated over Q, so callers fall back to sampled elements there.
    pub fn generators(self: &Arc<Self>) -> Result<Vec<RingElement>> {
        match &self.kind {
            RingKind::Field => Ok(Vec::new()),
            RingKind::Polynomial { .. }
            | RingKind::Quotient { .. }
            | RingKind::RationalFunctions { .. } => Ok(vec![self.var_elem()?]),
            RingKind::Sequences => Err(OreError::Unsupported(
                "the sequence ring has no finite generating set".into(),
            )),
        }
    }

    /// Random element with coefficient data bounded by `bound`; scalars are
    /// kept small so exact arithmetic stays readable in failure reports.
    pub fn sample<R: Rng>(self: &Arc<Self>, rng: &mut R, bound: usize) -> RingElement {
        match &self.kind {
            RingKind::Field => self.from_scalar(random_scalar(rng, &self.base)),
            RingKind::Polynomial { .. } => {
                let deg = rng.random_range(0..=bound);
                self.from_poly((0..=deg).map(|_| random_scalar(rng, &self.base)).collect())
            }
            RingKind::Quotient { modulus, .. } => {
                let d = poly::degree(modulus).expect("modulus degree >= 1");
                self.from_poly((0..d).map(|_| random_scalar(rng, &self.base)).collect())
            }
            RingKind::RationalFunctions { .. } => {
                let dn = rng.random_range(0..=bound);
                let num: Vec<Scalar> = (0..=dn).map(|_| random_scalar(rng, &self.base)).collect();
                let den = loop {
                    let dd = rng.random_range(0..=bound);
                    let mut d: Vec<Scalar> =
                        (0..=dd).map(|_| random_scalar(rng, &self.base)).collect();
                    poly::normalize(&mut d);
                    if !d.is_empty() {
                        break d;
                    }
                };
                self.ratfn(num, den).expect("nonzero denominator")
            }
            RingKind::Sequences => {
                let len = rng.random_range(0..=bound);
                let prefix = (0..len).map(|_| random_scalar(rng, &self.base)).collect();
                self.seq(prefix, random_scalar(rng, &self.base))
            }
        }
    }
}

fn random_scalar<R: Rng>(rng: &mut R, field: &BaseField) -> Scalar {
    match field {
        BaseField::Q => {
            if rng.random_bool(0.25) {
                Scalar::from_ratio(field, rng.random_range(-6..=6), rng.random_range(1..=4))
                    .expect("positive denominator")
            } else {
                Scalar::from_i64(field, rng.random_range(-6..=6))
            }
        }
        BaseField::Fp(p) => Scalar::from_i64(field, rng.random_range(0..*p) as i64),
    }
}

fn normalize_ratfn(field: &BaseField, num: Vec<Scalar>, den: Vec<Scalar>) -> Payload {
    if num.is_empty() {
        return Payload::RatFn { num: Vec::new(), den: vec![Scalar::one(field)] };
    }
    let g = poly::gcd(field, &num, &den);
    let (num, den) = if poly::degree(&g) == Some(0) {
        (num, den)
    } else {
        (
            poly::divrem(field, &num, &g).0,
            poly::divrem(field, &den, &g).0,
        )
    };
    let lc_inv = poly::leading(&den)
        .expect("nonzero denominator")
        .inverse()
        .expect("nonzero leading coefficient");
    Payload::RatFn {
        num: poly::scale(&num, &lc_inv),
        den: poly::scale(&den, &lc_inv),
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Field => write!(f, "{}", self.base),
            RingKind::Polynomial { var } => write!(f, "{}[{var}]", self.base),
            RingKind::Quotient { var, modulus, .. } => {
                write!(f, "{}[{var}]/({})", self.base, poly::to_string(modulus, var))
            }
            RingKind::RationalFunctions { var } => write!(f, "{}({var})", self.base),
            RingKind::Sequences => write!(f, "Seq(Q)"),
        }
    }
}

/// Normal-form payload of a ring element.
#[derive(Clone, Debug, PartialEq)]
enum Payload {
    Scalar(Scalar),
    /// Ascending coefficients, no trailing zeros; empty is zero.
    Poly(Vec<Scalar>),
    /// Reduced representative of degree < deg(modulus).
    Residue(Vec<Scalar>),
    /// Monic denominator, coprime to the numerator.
    RatFn { num: Vec<Scalar>, den: Vec<Scalar> },
    /// Minimal prefix (its last entry differs from the tail).
    Seq { prefix: Vec<Scalar>, tail: Scalar },
}

/// An element of a [`RingDescriptor`], always in canonical normal form, so
/// `==` is semantic equality.
#[derive(Clone, Debug, PartialEq)]
pub struct RingElement {
    ring: Arc<RingDescriptor>,
    payload: Payload,
}

impl RingElement {
    fn raw(ring: &Arc<RingDescriptor>, payload: Payload) -> RingElement {
        RingElement { ring: Arc::clone(ring), payload }
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Scalar(s) => s.is_zero(),
            Payload::Poly(c) | Payload::Residue(c) => c.is_empty(),
            Payload::RatFn { num, .. } => num.is_empty(),
            Payload::Seq { prefix, tail } => prefix.iter().all(Scalar::is_zero) && tail.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &self.ring.one()
    }

    /// Dense ascending coefficients for polynomial-backed elements.
    pub fn poly_coeffs(&self) -> Option<&[Scalar]> {
        match &self.payload {
            Payload::Poly(c) | Payload::Residue(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_scalar(&self) -> Option<&Scalar> {
        match &self.payload {
            Payload::Scalar(s) => Some(s),
            _ => None,
        }
    }

    pub fn ratfn_parts(&self) -> Option<(&[Scalar], &[Scalar])> {
        match &self.payload {
            Payload::RatFn { num, den } => Some((num, den)),
            _ => None,
        }
    }

    pub fn seq_parts(&self) -> Option<(&[Scalar], &Scalar)> {
        match &self.payload {
            Payload::Seq { prefix, tail } => Some((prefix, tail)),
            _ => None,
        }
    }

    /// Value of an eventually constant sequence at index `n`.
    pub fn sequence_value(&self, n: usize) -> Result<Scalar> {
        match &self.payload {
            Payload::Seq { prefix, tail } => {
                Ok(prefix.get(n).cloned().unwrap_or_else(|| tail.clone()))
            }
            _ => Err(OreError::Unsupported("not a sequence element".into())),
        }
    }

    /// True when the element is a scalar multiple of 1 (an image of the
    /// base field).
    pub fn is_base_scalar(&self) -> bool {
        match &self.payload {
            Payload::Scalar(_) => true,
            Payload::Poly(c) | Payload::Residue(c) => c.len() <= 1,
            Payload::RatFn { num, den } => num.len() <= 1 && den.len() == 1,
            Payload::Seq { prefix, .. } => prefix.is_empty(),
        }
    }

    fn assert_same_ring(&self, other: &RingElement) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "ring element operation across distinct rings ({} vs {})",
            self.ring,
            other.ring
        );
    }

    /// Neither a left nor a right zero divisor, and nonzero.
    pub fn is_regular(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        match &self.payload {
            Payload::Scalar(_) => true,
            Payload::Poly(_) => true,
            Payload::RatFn { .. } => true,
            Payload::Residue(c) => {
                let modulus = self.ring.modulus().expect("quotient ring");
                poly::degree(&poly::gcd(&self.ring.base, c, modulus)) == Some(0)
            }
            Payload::Seq { prefix, tail } => {
                prefix.iter().all(|v| !v.is_zero()) && !tail.is_zero()
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn inverse(&self) -> Option<RingElement> {
        if self.is_zero() {
            return None;
        }
        match &self.payload {
            Payload::Scalar(s) => Some(self.ring.from_scalar(s.inverse()?)),
            Payload::Poly(c) => {
                if c.len() == 1 {
                    Some(self.ring.from_scalar(c[0].inverse()?))
                } else {
                    None
                }
            }
            Payload::Residue(c) => {
                let modulus = self.ring.modulus().expect("quotient ring");
                let (g, u, _) = poly::ext_gcd(&self.ring.base, c, modulus);
                if poly::degree(&g) == Some(0) {
                    Some(self.ring.from_poly(u))
                } else {
                    None
                }
            }
            Payload::RatFn { num, den } => self.ring.ratfn(den.clone(), num.clone()).ok(),
            Payload::Seq { prefix, tail } => {
                if !self.is_regular() {
                    return None;
                }
                let inv_prefix: Option<Vec<Scalar>> =
                    prefix.iter().map(Scalar::inverse).collect();
                Some(self.ring.seq(inv_prefix?, tail.inverse()?))
            }
        }
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.assert_same_ring(rhs);
        let field = &self.ring.base;
        match (&self.payload, &rhs.payload) {
            (Payload::Scalar(a), Payload::Scalar(b)) => self.ring.from_scalar(a + b),
            (Payload::Poly(a), Payload::Poly(b)) | (Payload::Residue(a), Payload::Residue(b)) => {
                self.ring.from_poly(poly::add(field, a, b))
            }
            (Payload::RatFn { num: n1, den: d1 }, Payload::RatFn { num: n2, den: d2 }) => {
                let num = poly::add(
                    field,
                    &poly::mul(field, n1, d2),
                    &poly::mul(field, n2, d1),
                );
                let den = poly::mul(field, d1, d2);
                self.ring.ratfn(num, den).expect("nonzero denominator")
            }
            (Payload::Seq { prefix: p1, tail: t1 }, Payload::Seq { prefix: p2, tail: t2 }) => {
                let len = p1.len().max(p2.len());
                let prefix = (0..len)
                    .map(|n| {
                        let a = p1.get(n).unwrap_or(t1);
                        let b = p2.get(n).unwrap_or(t2);
                        a + b
                    })
                    .collect();
                self.ring.seq(prefix, t1 + t2)
            }
            _ => unreachable!("same ring implies same payload shape"),
        }
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        match &self.payload {
            Payload::Scalar(s) => self.ring.from_scalar(-s),
            Payload::Poly(c) | Payload::Residue(c) => self.ring.from_poly(poly::neg(c)),
            Payload::RatFn { num, den } => self
                .ring
                .ratfn(poly::neg(num), den.clone())
                .expect("nonzero denominator"),
            Payload::Seq { prefix, tail } => self
                .ring
                .seq(prefix.iter().map(|v| -v).collect(), -tail),
        }
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.assert_same_ring(rhs);
        let field = &self.ring.base;
        match (&self.payload, &rhs.payload) {
            (Payload::Scalar(a), Payload::Scalar(b)) => self.ring.from_scalar(a * b),
            (Payload::Poly(a), Payload::Poly(b)) | (Payload::Residue(a), Payload::Residue(b)) => {
                self.ring.from_poly(poly::mul(field, a, b))
            }
            (Payload::RatFn { num: n1, den: d1 }, Payload::RatFn { num: n2, den: d2 }) => {
                let num = poly::mul(field, n1, n2);
                let den = poly::mul(field, d1, d2);
                self.ring.ratfn(num, den).expect("nonzero denominator")
            }
            (Payload::Seq { prefix: p1, tail: t1 }, Payload::Seq { prefix: p2, tail: t2 }) => {
                let len = p1.len().max(p2.len());
                let prefix = (0..len)
                    .map(|n| {
                        let a = p1.get(n).unwrap_or(t1);
                        let b = p2.get(n).unwrap_or(t2);
                        a * b
                    })
                    .collect();
                self.ring.seq(prefix, t1 * t2)
            }
            _ => unreachable!("same ring implies same payload shape"),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.ring.var_name().unwrap_or("y");
        match &self.payload {
            Payload::Scalar(s) => write!(f, "{s}"),
            Payload::Poly(c) | Payload::Residue(c) => write!(f, "{}", poly::to_string(c, var)),
            Payload::RatFn { num, den } => {
                if den.len() == 1 {
                    write!(f, "{}", poly::to_string(num, var))
                } else {
                    write!(
                        f,
                        "({})/({})",
                        poly::to_string(num, var),
                        poly::to_string(den, var)
                    )
                }
            }
            Payload::Seq { prefix, tail } => {
                write!(f, "seq([")?;
                for (i, v) in prefix.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "], {tail})")
            }
        }
    }
}

/// A finitely generated ideal of a coefficient ring, with optional explicit
/// element listing for finite rings.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealHandle {
    ring: Arc<RingDescriptor>,
    generators: Vec<RingElement>,
    elements: Option<Vec<RingElement>>,
}

impl IdealHandle {
    pub fn new(ring: &Arc<RingDescriptor>, generators: Vec<RingElement>) -> Result<IdealHandle> {
        if generators.iter().any(RingElement::is_zero) {
            return Err(OreError::InvalidConstruction(
                "ideal generators must be nonzero".into(),
            ));
        }
        if generators.is_empty() {
            return Err(OreError::InvalidConstruction(
                "ideal needs at least one generator".into(),
            ));
        }
        for g in &generators {
            assert!(g.ring() == ring, "generator from a different ring");
        }
        Ok(IdealHandle { ring: Arc::clone(ring), generators, elements: None })
    }

    pub fn principal(generator: RingElement) -> Result<IdealHandle> {
        let ring = Arc::clone(generator.ring());
        IdealHandle::new(&ring, vec![generator])
    }

    /// Builds an ideal from an explicit element set of a finite ring,
    /// checking closure under addition and ring multiplication.
    pub fn from_elements(
        ring: &Arc<RingDescriptor>,
        elements: Vec<RingElement>,
    ) -> Result<IdealHandle> {
        let all = ring.enumerate_elements()?;
        let set = elements.clone();
        let contains = |e: &RingElement| set.iter().any(|s| s == e);
        if !contains(&ring.zero()) {
            return Err(OreError::InvalidConstruction("ideal must contain 0".into()));
        }
        for a in &set {
            for b in &set {
                if !contains(&(a + b)) {
                    return Err(OreError::InvalidConstruction(
                        "element set is not closed under addition".into(),
                    ));
                }
            }
            for r in &all {
                if !contains(&(r * a)) {
                    return Err(OreError::InvalidConstruction(
                        "element set is not closed under ring multiplication".into(),
                    ));
                }
            }
        }
        let generators: Vec<RingElement> =
            set.iter().filter(|e| !e.is_zero()).cloned().collect();
        if generators.is_empty() {
            return Err(OreError::InvalidConstruction(
                "the zero ideal has no nonzero generators".into(),
            ));
        }
        Ok(IdealHandle { ring: Arc::clone(ring), generators, elements: Some(set) })
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn generators(&self) -> &[RingElement] {
        &self.generators
    }

    /// Exact membership test. Polynomial and quotient rings go through gcd
    /// reasoning in k[y]; finite rings may use the explicit set.
    pub fn contains(&self, e: &RingElement) -> Result<bool> {
        assert!(e.ring() == &self.ring, "membership across rings");
        if e.is_zero() {
            return Ok(true);
        }
        if let Some(set) = &self.elements {
            return Ok(set.iter().any(|s| s == e));
        }
        let field = &self.ring.base;
        match self.ring.kind() {
            RingKind::Field | RingKind::RationalFunctions { .. } => Ok(true),
            RingKind::Polynomial { .. } => {
                let g = self.generator_gcd();
                Ok(poly::divides(field, &g, e.poly_coeffs().expect("poly payload")))
            }
            RingKind::Quotient { modulus, .. } => {
                // Ideals of k[y]/<f> correspond to monic divisors of f.
                let mut g = self.generator_gcd();
                g = poly::gcd(field, &g, modulus);
                Ok(poly::divides(field, &g, e.poly_coeffs().expect("residue payload")))
            }
            RingKind::Sequences => Err(OreError::Unsupported(
                "ideal membership is not decidable for the sequence ring".into(),
            )),
        }
    }

    fn generator_gcd(&self) -> Vec<Scalar> {
        let field = &self.ring.base;
        let mut g: Vec<Scalar> = Vec::new();
        for gen in &self.generators {
            let c = gen.poly_coeffs().expect("polynomial-backed ideal");
            g = poly::gcd(field, &g, c);
        }
        g
    }

    pub fn is_proper(&self) -> Result<bool> {
        Ok(!self.contains(&self.ring.one())?)
    }

    /// All elements, for finite rings: the closure of the generators under
    /// addition and multiplication by arbitrary ring elements.
    pub fn elements(&self) -> Result<Vec<RingElement>> {
        if let Some(set) = &self.elements {
            return Ok(set.clone());
        }
        let all = self.ring.enumerate_elements()?;
        let mut set = vec![self.ring.zero()];
        let mut frontier = self.generators.clone();
        while let Some(e) = frontier.pop() {
            if set.contains(&e) {
                continue;
            }
            set.push(e.clone());
            for s in set.clone() {
                frontier.push(&s + &e);
            }
            for r in &all {
                frontier.push(r * &e);
            }
        }
        // Deterministic order: enumeration order of the ambient ring.
        let mut ordered = Vec::new();
        for e in all {
            if set.contains(&e) {
                ordered.push(e);
            }
        }
        Ok(ordered)
    }
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// Every ideal of a finite ring, found by exhaustive subset search over the
/// element list (the search space for F_2[y]/<y^2> has 16 subsets).
pub fn all_ideals(ring: &Arc<RingDescriptor>) -> Result<Vec<Vec<RingElement>>> {
    let all = ring.enumerate_elements()?;
    let n = all.len();
    assert!(n <= 16, "subset enumeration is desk-scale only");
    let zero_idx = all
        .iter()
        .position(RingElement::is_zero)
        .expect("finite ring contains zero");
    let mut ideals = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & (1 << zero_idx) == 0 {
            continue;
        }
        let subset: Vec<&RingElement> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &all[i])
            .collect();
        let in_subset = |e: &RingElement| subset.iter().any(|s| *s == e);
        let mut closed = true;
        'outer: for a in &subset {
            for b in &subset {
                if !in_subset(&(*a + *b)) {
                    closed = false;
                    break 'outer;
                }
            }
            for r in &all {
                if !in_subset(&(r * *a)) {
                    closed = false;
                    break 'outer;
                }
            }
        }
        if closed {
            ideals.push(subset.into_iter().cloned().collect());
        }
    }
    Ok(ideals)
}
