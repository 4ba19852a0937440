//! Dense univariate polynomial helpers over [`Scalar`] coefficients.
//!
//! Coefficients are stored in ascending degree order with no trailing
//! zeros; the zero polynomial is the empty vector. These functions are the
//! shared engine behind the polynomial, quotient and rational-function
//! coefficient rings.

use crate::scalar::{BaseField, Scalar};

pub(crate) type Coeffs = Vec<Scalar>;

pub(crate) fn normalize(v: &mut Coeffs) {
    while v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
}

pub(crate) fn degree(v: &[Scalar]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub(crate) fn leading(v: &[Scalar]) -> Option<&Scalar> {
    v.last()
}

pub(crate) fn is_monic(v: &[Scalar]) -> bool {
    v.last().is_some_and(Scalar::is_one)
}

pub(crate) fn constant(field: &BaseField, s: Scalar) -> Coeffs {
    let mut v = vec![s];
    let _ = field;
    normalize(&mut v);
    v
}

pub(crate) fn var(field: &BaseField) -> Coeffs {
    vec![Scalar::zero(field), Scalar::one(field)]
}

pub(crate) fn add(field: &BaseField, a: &[Scalar], b: &[Scalar]) -> Coeffs {
    let mut out: Coeffs = Vec::with_capacity(a.len().max(b.len()));
    for i in 0..a.len().max(b.len()) {
        let x = a.get(i).cloned().unwrap_or_else(|| Scalar::zero(field));
        let y = b.get(i).cloned().unwrap_or_else(|| Scalar::zero(field));
        out.push(&x + &y);
    }
    normalize(&mut out);
    out
}

pub(crate) fn neg(a: &[Scalar]) -> Coeffs {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn sub(field: &BaseField, a: &[Scalar], b: &[Scalar]) -> Coeffs {
    add(field, a, &neg(b))
}

pub(crate) fn mul(field: &BaseField, a: &[Scalar], b: &[Scalar]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    normalize(&mut out);
    out
}

pub(crate) fn scale(a: &[Scalar], s: &Scalar) -> Coeffs {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c * s).collect()
}

/// Euclidean division over a field; panics on a zero divisor.
pub(crate) fn divrem(field: &BaseField, a: &[Scalar], b: &[Scalar]) -> (Coeffs, Coeffs) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem: Coeffs = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = b.last().unwrap().inverse().expect("nonzero leading coefficient");
    if a.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Scalar::zero(field); a.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = &rem[dr] * &lead_inv;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let t = &rem[shift + i] - &(bc * &c);
            rem[shift + i] = t;
        }
        quot[shift] = c;
        normalize(&mut rem);
    }
    normalize(&mut quot);
    (quot, rem)
}

pub(crate) fn rem(field: &BaseField, a: &[Scalar], b: &[Scalar]) -> Coeffs {
    divrem(field, a, b).1
}

pub(crate) fn divides(field: &BaseField, d: &[Scalar], a: &[Scalar]) -> bool {
    rem(field, a, d).is_empty()
}

/// Monic gcd; gcd(0, 0) = 0. Remainders are re-scaled to monic form at
/// every step, which keeps rational coefficients from snowballing.
pub(crate) fn gcd(field: &BaseField, a: &[Scalar], b: &[Scalar]) -> Coeffs {
    let mut x = monic(a);
    let mut y = monic(b);
    while !y.is_empty() {
        let r = monic(&rem(field, &x, &y));
        x = y;
        y = r;
    }
    x
}

/// Extended Euclid: returns (g, u, v) monic g with u*a + v*b = g.
pub(crate) fn ext_gcd(field: &BaseField, a: &[Scalar], b: &[Scalar]) -> (Coeffs, Coeffs, Coeffs) {
    let one = constant(field, Scalar::one(field));
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (one.clone(), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = divrem(field, &r0, &r1);
        let s = sub(field, &s0, &mul(field, &q, &s1));
        let t = sub(field, &t0, &mul(field, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if let Some(lc) = leading(&r0) {
        if !lc.is_one() {
            let inv = lc.inverse().unwrap();
            r0 = scale(&r0, &inv);
            s0 = scale(&s0, &inv);
            t0 = scale(&t0, &inv);
        }
    }
    (r0, s0, t0)
}

pub(crate) fn monic(a: &[Scalar]) -> Coeffs {
    match leading(a) {
        None => Vec::new(),
        Some(lc) if lc.is_one() => a.to_vec(),
        Some(lc) => scale(a, &lc.inverse().expect("nonzero leading coefficient")),
    }
}

/// Formal derivative; exponents are mapped through the characteristic.
pub(crate) fn derivative(field: &BaseField, a: &[Scalar]) -> Coeffs {
    let mut out: Coeffs = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| &Scalar::from_i64(field, i as i64) * c)
        .collect();
    normalize(&mut out);
    out
}

/// Substitution y -> q*y: coefficient i picks up a factor q^i.
pub(crate) fn scale_var(a: &[Scalar], q: &Scalar) -> Coeffs {
    let mut power = Scalar::one(&q.field());
    let mut out = Vec::with_capacity(a.len());
    for c in a {
        out.push(c * &power);
        power = &power * q;
    }
    normalize(&mut out);
    out
}

/// Exact division by the variable; requires a zero constant term.
pub(crate) fn shift_down(a: &[Scalar]) -> Coeffs {
    if a.is_empty() {
        return Vec::new();
    }
    assert!(a[0].is_zero(), "shift_down requires zero constant term");
    a[1..].to_vec()
}

/// Square-free test over a field: gcd(f, f') is constant and f' != 0.
/// (In characteristic p a vanishing derivative means f is a p-th power.)
pub(crate) fn is_square_free(field: &BaseField, f: &[Scalar]) -> bool {
    if degree(f).is_none_or(|d| d == 0) {
        return true;
    }
    let fp = derivative(field, f);
    if fp.is_empty() {
        return false;
    }
    degree(&gcd(field, f, &fp)) == Some(0)
}

/// Irreducibility over F_p by exhaustive trial division with all monic
/// polynomials of degree 1..=deg/2. Desk scale only.
pub(crate) fn is_irreducible_fp(field: &BaseField, f: &[Scalar]) -> bool {
    let p = match field {
        BaseField::Fp(p) => *p,
        BaseField::Q => panic!("irreducibility sweep is only implemented over F_p"),
    };
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    for dd in 1..=d / 2 {
        // Enumerate monic divisor candidates of degree dd.
        let count = (p as u128).pow(dd as u32);
        for idx in 0..count {
            let mut coeffs: Coeffs = Vec::with_capacity(dd + 1);
            let mut k = idx;
            for _ in 0..dd {
                coeffs.push(Scalar::from_i64(field, (k % p as u128) as i64));
                k /= p as u128;
            }
            coeffs.push(Scalar::one(field));
            if divides(field, &coeffs, f) {
                return false;
            }
        }
    }
    true
}

/// Renders coefficients as a human-readable polynomial in `var`,
/// descending powers, e.g. `3/2*y^2 - y + 1`.
pub(crate) fn to_string(a: &[Scalar], var: &str) -> String {
    use crate::scalar::is_display_negative;
    if a.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in a.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (mag, negative) = if is_display_negative(c) {
            (-c, true)
        } else {
            (c.clone(), false)
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coeff_part = if mag.is_one() && i > 0 {
            String::new()
        } else {
            mag.to_string()
        };
        let var_part = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        match (coeff_part.is_empty(), var_part.is_empty()) {
            (true, _) => out.push_str(&var_part),
            (_, true) => out.push_str(&coeff_part),
            _ => {
                out.push_str(&coeff_part);
                out.push('*');
                out.push_str(&var_part);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Q
    }

    fn poly(coeffs: &[i64]) -> Coeffs {
        let mut v: Coeffs = coeffs.iter().map(|&c| Scalar::from_i64(&q(), c)).collect();
        normalize(&mut v);
        v
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(&[1, 1]);
        let b = poly(&[-1, 1]);
        assert_eq!(mul(&q(), &a, &b), poly(&[-1, 0, 1]));
    }

    #[test]
    fn divrem_reconstructs() {
        let a = poly(&[1, 0, 2, 3]);
        let b = poly(&[1, 1]);
        let (qt, r) = divrem(&q(), &a, &b);
        let back = add(&q(), &mul(&q(), &qt, &b), &r);
        assert_eq!(back, a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn gcd_is_monic_and_divides() {
        let a = mul(&q(), &poly(&[1, 1]), &poly(&[2, 0, 1]));
        let b = mul(&q(), &poly(&[1, 1]), &poly(&[3, 1]));
        let g = gcd(&q(), &a, &b);
        assert_eq!(g, poly(&[1, 1]));
        let (g2, u, v) = ext_gcd(&q(), &a, &b);
        assert_eq!(g2, g);
        let combo = add(&q(), &mul(&q(), &u, &a), &mul(&q(), &v, &b));
        assert_eq!(combo, g);
    }

    #[test]
    fn derivative_in_characteristic_three() {
        let f3 = BaseField::fp(3).unwrap();
        let ycubed = vec![
            Scalar::zero(&f3),
            Scalar::zero(&f3),
            Scalar::zero(&f3),
            Scalar::one(&f3),
        ];
        assert!(derivative(&f3, &ycubed).is_empty());
    }

    #[test]
    fn square_free_and_irreducible_checks() {
        let f2 = BaseField::fp(2).unwrap();
        let ysq = vec![Scalar::zero(&f2), Scalar::zero(&f2), Scalar::one(&f2)];
        assert!(!is_square_free(&f2, &ysq));
        assert!(!is_irreducible_fp(&f2, &ysq));
        // y^2 + y + 1 is irreducible over F_2.
        let irr = vec![Scalar::one(&f2), Scalar::one(&f2), Scalar::one(&f2)];
        assert!(is_irreducible_fp(&f2, &irr));
        assert!(is_square_free(&f2, &irr));
    }

    #[test]
    fn display_matches_expected_layout() {
        let p = poly(&[1, -1, 0, 2]);
        assert_eq!(to_string(&p, "y"), "2*y^3 - y + 1");
        assert_eq!(to_string(&poly(&[0]), "y"), "0");
        assert_eq!(to_string(&poly(&[-2, 3]), "y"), "3*y - 2");
    }
}
