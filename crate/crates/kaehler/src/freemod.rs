//! Elements of a free module `A^s` over a polynomial ring.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::{pot_cmp, Monomial};
use crate::poly::{Poly, Ring};

/// A vector of `rank` component polynomials sharing one ring context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeElem {
    comps: Vec<Poly>,
}

impl FreeElem {
    pub fn new(comps: Vec<Poly>) -> FreeElem {
        assert!(!comps.is_empty(), "free module rank must be positive");
        for c in &comps[1..] {
            assert!(c.same_ring(&comps[0]), "components must share a ring");
        }
        FreeElem { comps }
    }

    pub fn zero(ring: &Arc<Ring>, rank: usize) -> FreeElem {
        FreeElem {
            comps: (0..rank).map(|_| ring.zero()).collect(),
        }
    }

    /// `f · e_i` in `A^rank`.
    pub fn basis_scaled(ring: &Arc<Ring>, rank: usize, i: usize, f: &Poly) -> FreeElem {
        let mut v = FreeElem::zero(ring, rank);
        v.comps[i] = f.clone();
        v
    }

    pub fn basis(ring: &Arc<Ring>, rank: usize, i: usize) -> FreeElem {
        FreeElem::basis_scaled(ring, rank, i, &ring.one())
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.comps[0].ring()
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn ensure_rank(&self, rank: usize) -> Result<()> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: rank,
                got: self.rank(),
            })
        }
    }

    pub fn add(&self, other: &FreeElem) -> FreeElem {
        debug_assert_eq!(self.rank(), other.rank());
        FreeElem {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FreeElem) -> FreeElem {
        debug_assert_eq!(self.rank(), other.rank());
        FreeElem {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> FreeElem {
        FreeElem {
            comps: self.comps.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale_poly(&self, f: &Poly) -> FreeElem {
        FreeElem {
            comps: self.comps.iter().map(|c| c.mul(f)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> FreeElem {
        FreeElem {
            comps: self.comps.iter().map(|p| p.mul_term(m, c)).collect(),
        }
    }

    /// Leading term under position-over-term: the first nonzero component's
    /// leading term. Returns `(component, monomial, coefficient)`.
    pub fn leading(&self) -> Option<(usize, Monomial, Coeff)> {
        for (i, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                let (m, co) = c.terms()[0].clone();
                return Some((i, m, co));
            }
        }
        None
    }

    pub fn monic(&self) -> FreeElem {
        match self.leading() {
            None => self.clone(),
            Some((_, _, lc)) => {
                let field = &self.ring().field;
                if field.is_one(&lc) {
                    self.clone()
                } else {
                    let inv = field.inv(&lc);
                    FreeElem {
                        comps: self.comps.iter().map(|c| c.scale(&inv)).collect(),
                    }
                }
            }
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.comps.iter().map(|c| c.total_degree()).max().unwrap_or(0)
    }

    /// Concatenate with another block of components (used by syzygy lifts).
    pub fn concat(&self, other: &FreeElem) -> FreeElem {
        let mut comps = self.comps.clone();
        comps.extend(other.comps.iter().cloned());
        FreeElem { comps }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> FreeElem {
        FreeElem {
            comps: self.comps[range].to_vec(),
        }
    }

    /// Compare two module terms under position-over-term with the ring's
    /// base order.
    pub fn term_cmp(
        &self,
        a: (usize, &Monomial),
        b: (usize, &Monomial),
    ) -> std::cmp::Ordering {
        pot_cmp(&self.ring().order, a, b)
    }

    /// Render with generator labels, e.g. `(z^2)*dx` or `dy + x*dz`.
    pub fn display_with_labels(&self, labels: &[String]) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = &labels[i];
            if c.is_one() {
                parts.push(label.clone());
            } else if c.terms().len() == 1 {
                parts.push(format!("{c}*{label}"));
            } else {
                parts.push(format!("({c})*{label}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for FreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoeffField;

    #[test]
    fn leading_prefers_low_component() {
        let r = Ring::new(CoeffField::prime(2).unwrap(), &["x", "y"]);
        let v = FreeElem::new(vec![r.parse_poly("x").unwrap(), r.parse_poly("y^5").unwrap()]);
        let (comp, m, _) = v.leading().unwrap();
        assert_eq!(comp, 0);
        assert_eq!(m, Monomial(vec![1, 0]));
    }

    #[test]
    fn labelled_display() {
        let r = Ring::new(CoeffField::prime(2).unwrap(), &["x", "y", "z"]);
        let v = FreeElem::new(vec![
            r.parse_poly("z^2").unwrap(),
            r.zero(),
            r.parse_poly("x + 1").unwrap(),
        ]);
        let labels: Vec<String> = ["dx", "dy", "dz"].iter().map(|s| s.to_string()).collect();
        assert_eq!(v.display_with_labels(&labels), "z^2*dx + (x + 1)*dz");
    }
}
