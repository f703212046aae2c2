//! Monomials (exponent vectors) and monomial orders.

use std::cmp::Ordering;

/// Exponent vector of fixed length (the number of ring variables).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, `None` unless `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u16>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn pow(&self, k: u16) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }
}

/// A total order on monomials compatible with multiplication.
///
/// `Block` splits the exponent vector at `split`: the left block dominates
/// and is compared with `left`, ties fall through to `right` on the rest.
/// That is the elimination order used for kernels and implicitization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block {
        split: usize,
        left: Box<MonomialOrder>,
        right: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    /// Elimination order killing the first `split` variables.
    pub fn elimination(split: usize) -> Self {
        MonomialOrder::Block {
            split,
            left: Box::new(MonomialOrder::GrevLex),
            right: Box::new(MonomialOrder::GrevLex),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_slices(&a.0, &b.0)
    }

    fn cmp_slices(&self, a: &[u16], b: &[u16]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.iter().zip(b) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Equal degree: the monomial with smaller exponent at the
                // last differing position is the larger one.
                for (x, y) in a.iter().zip(b).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { split, left, right } => {
                match left.cmp_slices(&a[..*split], &b[..*split]) {
                    Ordering::Equal => right.cmp_slices(&a[*split..], &b[*split..]),
                    ord => ord,
                }
            }
        }
    }
}

/// Position-over-term order on free-module terms `(component, monomial)`.
///
/// Lower component index takes priority; within a component the base order
/// decides. This matches the generator labelling convention (dx before dy
/// before dz) used by the differentials layer.
pub fn pot_cmp(
    base: &MonomialOrder,
    a: (usize, &Monomial),
    b: (usize, &Monomial),
) -> Ordering {
    match a.0.cmp(&b.0) {
        Ordering::Equal => base.cmp(a.1, b.1),
        // lower component index = greater term
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u16]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GrevLex;
        // vars x > y > z by declaration; y^2 vs x*z^2: degree 2 < 3
        assert_eq!(o.cmp(&mono(&[0, 2, 0]), &mono(&[1, 0, 2])), Ordering::Less);
        // same degree: y^2 > z^2 (smaller exponent at the last slot wins)
        assert_eq!(
            o.cmp(&mono(&[0, 2, 0]), &mono(&[0, 0, 2])),
            Ordering::Greater
        );
        // x*y > z^2
        assert_eq!(
            o.cmp(&mono(&[1, 1, 0]), &mono(&[0, 0, 2])),
            Ordering::Greater
        );
    }

    #[test]
    fn lex_basics() {
        let o = MonomialOrder::Lex;
        assert_eq!(
            o.cmp(&mono(&[0, 2, 0]), &mono(&[1, 0, 2])),
            Ordering::Less
        );
        assert_eq!(
            o.cmp(&mono(&[2, 0, 0]), &mono(&[1, 5, 5])),
            Ordering::Greater
        );
    }

    #[test]
    fn block_eliminates_first_group() {
        // two blocks of one variable each: any power of var 0 beats var 1
        let o = MonomialOrder::elimination(1);
        assert_eq!(
            o.cmp(&mono(&[1, 0]), &mono(&[0, 9])),
            Ordering::Greater
        );
    }

    #[test]
    fn pot_prefers_low_component() {
        let base = MonomialOrder::GrevLex;
        let m = mono(&[1, 0]);
        let big = mono(&[5, 5]);
        assert_eq!(pot_cmp(&base, (0, &m), (1, &big)), Ordering::Greater);
        assert_eq!(pot_cmp(&base, (2, &big), (2, &m)), Ordering::Greater);
    }

    fn arb_monomial(nvars: usize, maxdeg: u16) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0..=maxdeg, nvars).prop_map(Monomial)
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::GrevLex),
            Just(MonomialOrder::elimination(2)),
        ]
    }

    proptest! {
        // Every order kind: total, antisymmetric, multiplicative.
        #[test]
        fn order_is_total_and_multiplicative(
            o in arb_order(),
            a in arb_monomial(4, 5),
            b in arb_monomial(4, 5),
            m in arb_monomial(4, 5),
        ) {
            let ab = o.cmp(&a, &b);
            let ba = o.cmp(&b, &a);
            prop_assert_eq!(ab, ba.reverse());
            if ab == Ordering::Equal {
                prop_assert_eq!(&a, &b);
            }
            // m·a vs m·b preserves the comparison
            prop_assert_eq!(o.cmp(&m.mul(&a), &m.mul(&b)), ab);
        }

        #[test]
        fn order_is_transitive(
            o in arb_order(),
            a in arb_monomial(3, 4),
            b in arb_monomial(3, 4),
            c in arb_monomial(3, 4),
        ) {
            let mut v = vec![a, b, c];
            v.sort_by(|x, y| o.cmp(x, y));
            prop_assert!(o.cmp(&v[0], &v[1]) != Ordering::Greater);
            prop_assert!(o.cmp(&v[1], &v[2]) != Ordering::Greater);
            prop_assert!(o.cmp(&v[0], &v[2]) != Ordering::Greater);
        }
    }
}
