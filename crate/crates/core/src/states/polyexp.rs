//! Exact Wirtinger-derivative engine for characteristic functions of the
//! form P(b, b*) * exp(q(b, b*)) with P a bivariate polynomial and q a
//! quadratic form. Every catalog state falls into this family, so the
//! derivatives stay closed under differentiation.

use std::collections::BTreeMap;

use num_complex::Complex64;

/// Polynomial in the two formally independent variables (b, b*),
/// keyed by (power of b, power of b*).
#[derive(Debug, Clone, Default)]
pub(crate) struct Poly2 {
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl Poly2 {
    pub fn constant(c: Complex64) -> Self {
        let mut p = Poly2::default();
        p.add_term(0, 0, c);
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if e.norm_sqr() == 0.0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(i, j), &c) in &other.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::default();
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    /// Partial derivative with respect to b (var = 0) or b* (var = 1).
    pub fn derivative(&self, var: u8) -> Poly2 {
        let mut out = Poly2::default();
        for (&(i, j), &c) in &self.terms {
            match var {
                0 if i > 0 => out.add_term(i - 1, j, c * i as f64),
                1 if j > 0 => out.add_term(i, j - 1, c * j as f64),
                _ => {}
            }
        }
        out
    }

    pub fn eval(&self, b: Complex64, bc: Complex64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (&(i, j), &c) in &self.terms {
            sum += c * b.powu(i) * bc.powu(j);
        }
        sum
    }
}

/// Quadratic exponent q = a b^2 + b b*^2 + c b b* + d b + e b*.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct QuadForm {
    pub b2: Complex64,
    pub bc2: Complex64,
    pub cross: Complex64,
    pub lin_b: Complex64,
    pub lin_bc: Complex64,
}

impl QuadForm {
    fn eval(&self, b: Complex64, bc: Complex64) -> Complex64 {
        self.b2 * b * b + self.bc2 * bc * bc + self.cross * b * bc + self.lin_b * b + self.lin_bc * bc
    }

    /// dq/db as a polynomial.
    fn grad_b(&self) -> Poly2 {
        let mut p = Poly2::default();
        p.add_term(1, 0, 2.0 * self.b2);
        p.add_term(0, 1, self.cross);
        p.add_term(0, 0, self.lin_b);
        p
    }

    /// dq/db* as a polynomial.
    fn grad_bc(&self) -> Poly2 {
        let mut p = Poly2::default();
        p.add_term(0, 1, 2.0 * self.bc2);
        p.add_term(1, 0, self.cross);
        p.add_term(0, 0, self.lin_bc);
        p
    }
}

/// P(b, b*) * exp(q(b, b*)).
#[derive(Debug, Clone)]
pub(crate) struct PolyExp {
    pub poly: Poly2,
    pub quad: QuadForm,
}

impl PolyExp {
    pub fn new(poly: Poly2, quad: QuadForm) -> Self {
        PolyExp { poly, quad }
    }

    pub fn derivative(&self, var: u8) -> PolyExp {
        let grad = match var {
            0 => self.quad.grad_b(),
            _ => self.quad.grad_bc(),
        };
        let poly = self.poly.derivative(var).add(&self.poly.mul(&grad));
        PolyExp {
            poly,
            quad: self.quad,
        }
    }

    /// Evaluate at the physical point b* = conj(b).
    pub fn eval(&self, beta: Complex64) -> Complex64 {
        let bc = beta.conj();
        self.poly.eval(beta, bc) * self.quad.eval(beta, bc).exp()
    }
}
