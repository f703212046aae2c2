//! Multivariate polynomials in canonical form over a shared ring context.
//!
//! A [`Ring`] fixes the coefficient field, the ordered variable names and the
//! monomial order. Polynomials store their terms sorted descending in the
//! ring's order with no zero coefficients, so structural equality is
//! mathematical equality and printing is canonical.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, CoeffField};
use crate::monomial::{Monomial, MonomialOrder};

/// Resource limits guarding basis computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Maximum total degree of any polynomial produced during a basis run.
    pub max_degree: u32,
    /// Maximum number of S-pairs processed in one basis run.
    pub max_pairs: usize,
    /// Maximum quotient iterations inside a saturation.
    pub max_saturation_steps: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_degree: 64,
            max_pairs: 1 << 16,
            max_saturation_steps: 64,
        }
    }
}

/// A polynomial ring context: field, ordered variables, monomial order.
#[derive(Debug, Clone)]
pub struct Ring {
    pub field: CoeffField,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub caps: Caps,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        // caps are a runtime guard, not part of the mathematical context
        self.field == other.field && self.vars == other.vars && self.order == other.order
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn new(field: CoeffField, vars: &[&str]) -> Arc<Ring> {
        Ring::with_order(field, vars, MonomialOrder::GrevLex)
    }

    pub fn with_order(field: CoeffField, vars: &[&str], order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            order,
            caps: Caps::default(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same ring with a different monomial order (for elimination passes).
    pub fn reordered(self: &Arc<Ring>, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            field: self.field.clone(),
            vars: self.vars.clone(),
            order,
            caps: self.caps.clone(),
        })
    }

    /// Ring extended by fresh variables appended after the existing ones.
    pub fn extended(self: &Arc<Ring>, extra: &[&str], order: MonomialOrder) -> Arc<Ring> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|s| s.to_string()));
        Arc::new(Ring {
            field: self.field.clone(),
            vars,
            order,
            caps: self.caps.clone(),
        })
    }

    pub fn zero(self: &Arc<Ring>) -> Poly {
        Poly {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(self: &Arc<Ring>) -> Poly {
        self.constant_int(1)
    }

    pub fn constant(self: &Arc<Ring>, c: Coeff) -> Poly {
        if self.field.is_zero(&c) {
            return self.zero();
        }
        Poly {
            ring: self.clone(),
            terms: vec![(Monomial::one(self.nvars()), c)],
        }
    }

    pub fn constant_int(self: &Arc<Ring>, n: i64) -> Poly {
        let c = self.field.from_int(n);
        self.constant(c)
    }

    pub fn var(self: &Arc<Ring>, i: usize) -> Poly {
        assert!(i < self.nvars(), "variable index out of range");
        Poly {
            ring: self.clone(),
            terms: vec![(Monomial::var(self.nvars(), i), self.field.one())],
        }
    }

    pub fn var_named(self: &Arc<Ring>, name: &str) -> Option<Poly> {
        self.var_index(name).map(|i| self.var(i))
    }

    /// Parse a polynomial from the expression syntax (`+ - * ^`, integer
    /// literals, parentheses). Convenience wrapper over the DSL parser.
    pub fn parse_poly(self: &Arc<Ring>, src: &str) -> Result<Poly> {
        crate::dsl::parse_poly_str(self, src)
    }
}

/// A polynomial in canonical form: terms sorted descending, no zeros.
#[derive(Debug, Clone)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}
impl Eq for Poly {}

impl Poly {
    /// Canonicalize an arbitrary term list: merge equal monomials, drop
    /// zeros, sort descending in the ring order.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, Coeff)>) -> Poly {
        let order = ring.order.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = merged.last_mut() {
                if last.0 == m {
                    last.1 = ring.field.add(&last.1, &c);
                    if ring.field.is_zero(&last.1) {
                        merged.pop();
                    }
                    continue;
                }
            }
            if !ring.field.is_zero(&c) {
                merged.push((m, c));
            }
        }
        Poly {
            ring: ring.clone(),
            terms: merged,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.ring.field.is_one(&self.terms[0].1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    pub fn same_ring(&self, other: &Poly) -> bool {
        *self.ring == *other.ring
    }

    pub fn ensure_same_ring(&self, other: &Poly) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "[{}] vs [{}]",
                self.ring.vars.join(","),
                other.ring.vars.join(",")
            )))
        }
    }

    /// The order-maximal term under the given order (defaults to the ring's
    /// own order when `None`).
    pub fn leading_term(&self, order: Option<&MonomialOrder>) -> Result<(Monomial, Coeff)> {
        if self.terms.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        match order {
            None => Ok(self.terms[0].clone()),
            Some(o) if *o == self.ring.order => Ok(self.terms[0].clone()),
            Some(o) => Ok(self
                .terms
                .iter()
                .max_by(|a, b| o.cmp(&a.0, &b.0))
                .cloned()
                .unwrap()),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert!(self.same_ring(other), "ring mismatch");
        let ring = &self.ring;
        let order = &ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match order.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ring.field.add(&self.terms[i].1, &other.terms[j].1);
                    if !ring.field.is_zero(&c) {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Poly {
        let ring = &self.ring;
        Poly {
            ring: ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), ring.field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    /// Multiply by a single term. Keeps sortedness (orders are
    /// multiplicative), so this is a cheap map.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Poly {
        let ring = &self.ring;
        if ring.field.is_zero(c) {
            return ring.zero();
        }
        Poly {
            ring: ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), ring.field.mul(tc, c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert!(self.same_ring(other), "ring mismatch");
        let mut acc = self.ring.zero();
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, c));
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division in the polynomial ring: returns the quotient when the
    /// divisor divides `self`, otherwise `InexactDivision`. The failure is
    /// meaningful: it certifies non-membership in the principal ideal.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        self.ensure_same_ring(divisor)?;
        if divisor.is_zero() {
            return Err(Error::InvalidInput("division by zero polynomial".into()));
        }
        let ring = &self.ring;
        let (dm, dc) = divisor.terms[0].clone();
        let mut rem = self.clone();
        let mut quo_terms: Vec<(Monomial, Coeff)> = Vec::new();
        while !rem.is_zero() {
            let (lm, lc) = rem.terms[0].clone();
            let Some(qm) = lm.checked_div(&dm) else {
                return Err(Error::InexactDivision {
                    dividend: self.to_string(),
                    divisor: divisor.to_string(),
                });
            };
            let qc = ring.field.div(&lc, &dc);
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quo_terms.push((qm, qc));
        }
        Ok(Poly::from_terms(ring, quo_terms))
    }

    /// Formal partial derivative; coefficients reduce in the field, so
    /// `d(x^p)/dx = 0` in characteristic `p`.
    pub fn partial_derivative(&self, var: usize) -> Poly {
        assert!(var < self.ring.nvars(), "variable index out of range");
        let ring = &self.ring;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let e = m.0[var];
                let mut m2 = m.clone();
                m2.0[var] = e - 1;
                (m2, ring.field.mul_int(c, e as i64))
            })
            .collect();
        Poly::from_terms(ring, terms)
    }

    /// Leading coefficient scaled to one.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.terms[0].1.clone();
        if self.ring.field.is_one(&lc) {
            return self.clone();
        }
        self.scale(&self.ring.field.inv(&lc))
    }

    /// Map into another ring: exponent slot `i` goes to slot `var_map[i]`.
    /// Fields must agree; terms are re-sorted for the target order.
    pub fn map_vars(&self, target: &Arc<Ring>, var_map: &[usize]) -> Poly {
        assert_eq!(self.ring.field, target.field, "field mismatch in map_vars");
        assert_eq!(var_map.len(), self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; target.nvars()];
                for (i, &exp) in m.0.iter().enumerate() {
                    e[var_map[i]] += exp;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Substitute `images[i]` for variable `i`; the images live in the
    /// target ring. This is ring-morphism application.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut term = target.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e as u32));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// True when no exponent is carried by any of the variable slots in
    /// `vars` (used by elimination).
    pub fn free_of_vars(&self, vars: &[usize]) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| vars.iter().all(|&i| m.0[i] == 0))
    }

    fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", self.ring.vars[i])?;
            } else {
                write!(f, "{}^{}", self.ring.vars[i], e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    /// Canonical printing: terms descending in the ring order, coefficients
    /// as least non-negative residues (`F_p`) or reduced fractions (`Q`),
    /// `*` explicit, `^` for powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ac = c.abs();
            if m.is_one() {
                write!(f, "{ac}")?;
            } else if self.ring.field.is_one(&ac) {
                self.fmt_monomial(m, f)?;
            } else {
                write!(f, "{ac}*")?;
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2_xyz() -> Arc<Ring> {
        Ring::new(CoeffField::prime(2).unwrap(), &["x", "y", "z"])
    }

    fn q_xy() -> Arc<Ring> {
        Ring::new(CoeffField::rationals(), &["x", "y"])
    }

    #[test]
    fn freshmans_dream_char2() {
        let r = Ring::new(CoeffField::prime(2).unwrap(), &["y", "z"]);
        let s = r.parse_poly("y + z").unwrap();
        let sq = s.mul(&s);
        assert_eq!(sq, r.parse_poly("y^2 + z^2").unwrap());
    }

    #[test]
    fn exact_division_of_monomials() {
        let r = f2_xyz();
        let f = r.parse_poly("x^2*z").unwrap();
        let g = r.parse_poly("x^2").unwrap();
        assert_eq!(f.exact_div(&g).unwrap(), r.parse_poly("z").unwrap());
    }

    #[test]
    fn inexact_division_is_detected() {
        // x^(n-1) not divisible by x^n at n = 2: the witness that a form is
        // not a pull-back in the wild-cover scenario.
        let r = f2_xyz();
        let f = r.parse_poly("x").unwrap();
        let g = r.parse_poly("x^2").unwrap();
        assert!(matches!(
            f.exact_div(&g),
            Err(Error::InexactDivision { .. })
        ));
    }

    #[test]
    fn whitney_jacobian_entry() {
        // d(y^2 - x*z^2)/dx = -z^2 = z^2 over F_2
        let r = f2_xyz();
        let p = r.parse_poly("y^2 - x*z^2").unwrap();
        assert_eq!(p.partial_derivative(0), r.parse_poly("z^2").unwrap());
        assert_eq!(p.partial_derivative(1), r.zero()); // 2y = 0
        assert_eq!(p.partial_derivative(2), r.zero()); // 2xz = 0
    }

    #[test]
    fn artin_schreier_derivative() {
        // d(z^p + z*x^n - y)/dz = x^n over F_p (here p = 3, n = 2)
        let r = Ring::new(CoeffField::prime(3).unwrap(), &["x", "y", "z"]);
        let p = r.parse_poly("z^3 + z*x^2 - y").unwrap();
        assert_eq!(p.partial_derivative(2), r.parse_poly("x^2").unwrap());
    }

    #[test]
    fn constant_derivative_is_zero() {
        let r = q_xy();
        assert_eq!(r.constant_int(7).partial_derivative(0), r.zero());
    }

    #[test]
    fn leading_terms() {
        let r = Ring::with_order(
            CoeffField::rationals(),
            &["y", "x", "z"],
            MonomialOrder::Lex,
        );
        let p = r.parse_poly("y^2 - x*z^2").unwrap();
        let (m, c) = p.leading_term(None).unwrap();
        assert_eq!(m, Monomial(vec![2, 0, 0]));
        assert!(r.field.is_one(&c));

        // u^p + x^n*u at p = 2, n = 2 under grevlex u > x: degree 3 beats 2
        let r2 = Ring::new(CoeffField::prime(2).unwrap(), &["u", "x"]);
        let q = r2.parse_poly("u^2 + x^2*u").unwrap();
        let (m2, _) = q.leading_term(None).unwrap();
        assert_eq!(m2, Monomial(vec![1, 2]));

        let c5 = q_xy().constant_int(5);
        let (m3, c3) = c5.leading_term(None).unwrap();
        assert!(m3.is_one());
        assert_eq!(c3.to_string(), "5");

        assert!(matches!(
            q_xy().zero().leading_term(None),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn canonical_form_is_bit_exact() {
        let r = q_xy();
        let f = r.parse_poly("3*x^2*y - x + 2").unwrap();
        let g = r.parse_poly("x*y - 7").unwrap();
        let back = f.add(&g.sub(&g));
        assert_eq!(back, f);
        assert_eq!(format!("{back}"), format!("{f}"));
    }

    #[test]
    fn display_canonical() {
        let r = f2_xyz();
        // over F_2 the minus collapses; grevlex puts x*z^2 (degree 3) first
        let p = r.parse_poly("y^2 - x*z^2").unwrap();
        assert_eq!(p.to_string(), "x*z^2 + y^2");
        let q = q_xy().parse_poly("y^2 - x^3").unwrap();
        assert_eq!(q.to_string(), "-x^3 + y^2");
        assert_eq!(q_xy().zero().to_string(), "0");
    }

    #[test]
    fn substitution_applies_ring_maps() {
        // x -> u^2, y -> u*z, z -> z sends y^2 - x*z^2 to 0 in char 2
        let src = f2_xyz();
        let tgt = Ring::new(CoeffField::prime(2).unwrap(), &["u", "z"]);
        let p = src.parse_poly("y^2 - x*z^2").unwrap();
        let images = vec![
            tgt.parse_poly("u^2").unwrap(),
            tgt.parse_poly("u*z").unwrap(),
            tgt.parse_poly("z").unwrap(),
        ];
        assert!(p.substitute(&tgt, &images).is_zero());
    }
}
