//! Complex numbers and second-order Taylor jets.
//!
//! A [`Jet2`] carries `(g(z), g′(z), g″(z))` for some holomorphic `g`.
//! Evaluating a map family's defining expression on the identity jet yields
//! `f`, `f′` and `f″` without using the hand-derived formulas in [`crate::maps`],
//! which makes it an independent oracle for them.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::maps::MapFamily;

pub type Complex = num_complex::Complex64;

pub(crate) fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub(crate) fn pt(z: Complex) -> [f64; 2] {
    [z.re, z.im]
}

pub(crate) fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// True when `z` lies on the principal cut of `ln` (the closed negative real axis).
pub(crate) fn on_log_cut(z: Complex) -> bool {
    z.im == 0.0 && z.re <= 0.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub val: Complex,
    pub d1: Complex,
    pub d2: Complex,
}

impl Jet2 {
    pub fn new(val: Complex, d1: Complex, d2: Complex) -> Self {
        Jet2 { val, d1, d2 }
    }

    /// Jet of `z ↦ z` at `z`.
    pub fn identity(z: Complex) -> Self {
        Jet2::new(z, Complex::new(1.0, 0.0), Complex::new(0.0, 0.0))
    }

    pub fn constant(v: Complex) -> Self {
        Jet2::new(v, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0))
    }

    pub fn zero() -> Self {
        Jet2::constant(Complex::new(0.0, 0.0))
    }

    pub fn scale(self, s: Complex) -> Self {
        Jet2::new(self.val * s, self.d1 * s, self.d2 * s)
    }

    pub fn is_finite(&self) -> bool {
        is_finite(self.val) && is_finite(self.d1) && is_finite(self.d2)
    }

    fn checked(self, at: Complex) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite { at: pt(at) })
        }
    }

    /// Composes an outer function with value `g`, derivative `g1` and second derivative `g2` at `self.val`.
    fn chain(self, g: Complex, g1: Complex, g2: Complex) -> Self {
        Jet2::new(g, g1 * self.d1, g2 * self.d1 * self.d1 + g1 * self.d2)
    }

    pub fn recip(self) -> Result<Self> {
        if self.val.norm() == 0.0 {
            return Err(Error::singular(pt(self.val), "division by a zero jet value"));
        }
        let r = self.val.inv();
        self.chain(r, -r * r, 2.0 * r * r * r).checked(self.val)
    }

    pub fn div(self, rhs: Jet2) -> Result<Self> {
        Ok(self * rhs.recip()?).and_then(|j| j.checked(rhs.val))
    }

    pub fn exp(self) -> Result<Self> {
        let e = self.val.exp();
        self.chain(e, e, e).checked(self.val)
    }

    pub fn ln(self) -> Result<Self> {
        if self.val.norm() == 0.0 {
            return Err(Error::singular(pt(self.val), "logarithm of zero"));
        }
        if on_log_cut(self.val) {
            return Err(Error::domain(pt(self.val), "logarithm on its branch cut"));
        }
        let r = self.val.inv();
        self.chain(self.val.ln(), r, -r * r).checked(self.val)
    }

    pub fn sinh(self) -> Result<Self> {
        let (s, ch) = (self.val.sinh(), self.val.cosh());
        self.chain(s, ch, s).checked(self.val)
    }

    /// Principal `asinh`, cuts on the imaginary axis with `|Im| ≥ 1`.
    pub fn asinh(self) -> Result<Self> {
        let v = self.val;
        if v.re == 0.0 && v.im.abs() >= 1.0 {
            return if v.im.abs() == 1.0 {
                Err(Error::singular(pt(v), "asinh branch point"))
            } else {
                Err(Error::domain(pt(v), "asinh on its branch cut"))
            };
        }
        let q = (Complex::new(1.0, 0.0) + v * v).sqrt();
        let g1 = q.inv();
        let g2 = -v * g1 * g1 * g1;
        self.chain(v.asinh(), g1, g2).checked(v)
    }

    /// Principal power `val^p`; integer exponents avoid the branch cut.
    pub fn powf(self, p: f64) -> Result<Self> {
        let v = self.val;
        if p == 0.0 {
            return Ok(Jet2::constant(Complex::new(1.0, 0.0)));
        }
        if p.fract() == 0.0 && p.abs() < 64.0 {
            let n = p as i32;
            if n < 0 && v.norm() == 0.0 {
                return Err(Error::singular(pt(v), "negative power of zero"));
            }
            let g = v.powi(n);
            let g1 = if n == 0 { Complex::new(0.0, 0.0) } else { v.powi(n - 1) * n as f64 };
            let g2 = if n == 0 || n == 1 { Complex::new(0.0, 0.0) } else { v.powi(n - 2) * (n * (n - 1)) as f64 };
            return self.chain(g, g1, g2).checked(v);
        }
        if v.norm() == 0.0 {
            return Err(Error::singular(pt(v), "fractional power at its branch point"));
        }
        if on_log_cut(v) {
            return Err(Error::domain(pt(v), "fractional power on its branch cut"));
        }
        let g = (v.ln() * p).exp();
        let r = v.inv();
        self.chain(g, g * r * p, g * r * r * (p * (p - 1.0))).checked(v)
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2::new(self.val + o.val, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2::new(self.val - o.val, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2::new(-self.val, -self.d1, -self.d2)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2::new(
            self.val * o.val,
            self.d1 * o.val + self.val * o.d1,
            self.d2 * o.val + 2.0 * self.d1 * o.d1 + self.val * o.d2,
        )
    }
}

/// `(f, f′, f″)` at `z`, computed by running the family's defining expression through jets.
pub fn oracle_derivs(family: &MapFamily, z: Complex) -> Result<(Complex, Complex, Complex)> {
    let id = Jet2::identity(z);
    let k = |v: f64| Jet2::constant(Complex::new(v, 0.0));
    let j = match *family {
        MapFamily::Log { alpha, gamma, delta } => {
            (id * k(alpha / (2.0 * gamma)) + k(delta)).ln()?.scale(c(1.0 / alpha, 0.0))
        }
        MapFamily::Asinh { a, lambda } => (id * k(lambda / (2.0 * a))).asinh()?.scale(c(1.0 / lambda, 0.0)),
        MapFamily::Power { lambda, beta, alpha_shift } => {
            let q = lambda + 1.0;
            (id * k(q / beta) + k(q * alpha_shift)).powf(1.0 / q)?
        }
        MapFamily::ExpRadial { gamma, beta } => (id * k(1.0 / beta)).exp()?.scale(c(gamma, 0.0)),
        MapFamily::Inverse { b } => k(b).div(id)?,
        MapFamily::Quadratic { a } => id * id * k(a),
        MapFamily::Logistic { a, b, lambda } => {
            let den = (id * k(-lambda)).exp()? * k(a) + k(b);
            k(1.0).div(den)?
        }
    };
    Ok((j.val, j.d1, j.d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn square_of_identity() {
        let z = Jet2::identity(c(2.0, 0.0));
        let s = z * z;
        assert_eq!(s, Jet2::new(c(4.0, 0.0), c(4.0, 0.0), c(2.0, 0.0)));
    }

    #[test]
    fn reciprocal_of_identity() {
        let j = Jet2::constant(c(1.0, 0.0)).div(Jet2::identity(c(2.0, 0.0))).unwrap();
        assert!(close(j.val, c(0.5, 0.0), 1e-15));
        assert!(close(j.d1, c(-0.25, 0.0), 1e-15));
        assert!(close(j.d2, c(0.25, 0.0), 1e-15));
    }

    #[test]
    fn division_by_zero_is_singular() {
        let r = Jet2::constant(c(1.0, 0.0)).div(Jet2::zero());
        assert!(matches!(r, Err(Error::Singularity { .. })));
    }

    #[test]
    fn elementary_values() {
        let e = Jet2::zero().exp().unwrap();
        assert_eq!(e.val, c(1.0, 0.0));
        assert_eq!(e.d1, c(0.0, 0.0));

        let l = Jet2::identity(c(1.0, 0.0)).ln().unwrap();
        assert_eq!((l.val, l.d1, l.d2), (c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)));

        let p = Jet2::identity(c(4.0, 0.0)).powf(0.5).unwrap();
        assert!(close(p.val, c(2.0, 0.0), 1e-15));
        assert!(close(p.d1, c(0.25, 0.0), 1e-15));
        assert!(close(p.d2, c(-0.03125, 0.0), 1e-15));
    }

    #[test]
    fn branch_cuts_are_domain_errors() {
        assert!(matches!(Jet2::identity(c(-1.0, 0.0)).ln(), Err(Error::Domain { .. })));
        assert!(matches!(Jet2::identity(c(-2.0, 0.0)).powf(0.5), Err(Error::Domain { .. })));
        assert!(Jet2::identity(c(-2.0, 0.0)).powf(2.0).is_ok());
        assert!(matches!(Jet2::identity(c(0.0, 2.0)).asinh(), Err(Error::Domain { .. })));
        assert!(matches!(Jet2::identity(c(0.0, 1.0)).asinh(), Err(Error::Singularity { .. })));
        assert!(Jet2::identity(c(0.0, 0.5)).asinh().is_ok());
    }

    #[test]
    fn offending_point_is_reported() {
        match Jet2::identity(c(-3.0, 0.0)).ln() {
            Err(Error::Domain { at, .. }) => assert_eq!(at, [-3.0, 0.0]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn overflow_is_not_silent() {
        assert!(matches!(Jet2::identity(c(800.0, 0.0)).exp(), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn sinh_derivatives() {
        let z = c(0.3, -0.7);
        let j = Jet2::identity(z).sinh().unwrap();
        assert!(close(j.d1, z.cosh(), 1e-15));
        assert!(close(j.d2, z.sinh(), 1e-15));
    }

    #[test]
    fn oracle_examples() {
        let (f, fp, fpp) = oracle_derivs(&MapFamily::Inverse { b: 1.0 }, c(2.0, 0.0)).unwrap();
        assert!(close(f, c(0.5, 0.0), 1e-15) && close(fp, c(-0.25, 0.0), 1e-15) && close(fpp, c(0.25, 0.0), 1e-15));
        let (f, fp, fpp) = oracle_derivs(&MapFamily::Quadratic { a: 1.0 }, c(1.0, 1.0)).unwrap();
        assert!(close(f, c(0.0, 2.0), 1e-15) && close(fp, c(2.0, 2.0), 1e-15) && close(fpp, c(2.0, 0.0), 1e-15));
    }

    #[test]
    fn finite_difference_order_of_first_derivative() {
        let fam = MapFamily::Logistic { a: 1.0, b: 0.5, lambda: 1.3 };
        let z = c(0.2, 0.4);
        let (_, fp, _) = oracle_derivs(&fam, z).unwrap();
        let fd = |h: f64| {
            let (fa, _, _) = oracle_derivs(&fam, z + h).unwrap();
            let (fb, _, _) = oracle_derivs(&fam, z - h).unwrap();
            ((fa - fb) / (2.0 * h) - fp).norm()
        };
        let (e1, e2, e3) = (fd(0.04), fd(0.02), fd(0.01));
        for (a, b) in [(e1, e2), (e2, e3)] {
            let order = (a / b).log2();
            assert!((1.8..=2.2).contains(&order), "order {order}");
        }
    }

    fn jet() -> impl Strategy<Value = Jet2> {
        prop::array::uniform6(-3.0..3.0f64).prop_map(|v| Jet2::new(c(v[0], v[1]), c(v[2], v[3]), c(v[4], v[5])))
    }

    fn jclose(a: Jet2, b: Jet2) -> bool {
        let scale = 1.0 + a.val.norm() + a.d1.norm() + a.d2.norm();
        (a.val - b.val).norm() <= 1e-14 * scale
            && (a.d1 - b.d1).norm() <= 1e-14 * scale
            && (a.d2 - b.d2).norm() <= 1e-14 * scale
    }

    proptest! {
        #[test]
        fn additive_inverse(a in jet()) {
            prop_assert_eq!(a + (-a), Jet2::zero());
        }

        #[test]
        fn add_and_mul_commute_and_associate(a in jet(), b in jet(), d in jet()) {
            prop_assert!(jclose(a + b, b + a));
            prop_assert!(jclose(a * b, b * a));
            prop_assert!(jclose((a + b) + d, a + (b + d)));
            let scale = 1.0 + (a * b * d).val.norm() + (a * b * d).d1.norm() + (a * b * d).d2.norm();
            let (l, r) = ((a * b) * d, a * (b * d));
            prop_assert!((l.val - r.val).norm() <= 1e-13 * scale);
            prop_assert!((l.d1 - r.d1).norm() <= 1e-13 * scale);
            prop_assert!((l.d2 - r.d2).norm() <= 1e-13 * scale);
        }

        #[test]
        fn product_rule(a in jet(), b in jet()) {
            let p = a * b;
            prop_assert_eq!(p.d1, a.d1 * b.val + a.val * b.d1);
        }

        #[test]
        fn exp_ln_round_trip(re in -2.0..2.0f64, im in -1.5..1.5f64) {
            let z = Jet2::identity(c(re, im));
            let back = z.exp().unwrap().ln().unwrap();
            prop_assert!(close(back.val, z.val, 1e-14));
            prop_assert!(close(back.d1, z.d1, 1e-14));
            prop_assert!(back.d2.norm() < 1e-13);
        }
    }
}
