//! Explicit cover diagrams and Čech sequences of differential modules.
//!
//! A [`CoverDiagram`] is a base algebra, pieces mapping out of it, and
//! explicitly supplied fibre-product nodes (built upstream with
//! [`crate::algebra::tensor_product`], possibly passed through a reduced
//! structure). Nothing is synthesized implicitly: the s-alt product differs
//! from the scheme product in general, so the caller decides what each node
//! is. Exactness claims are element-level with machine-checkable
//! certificates; no kernel module over the base is ever computed.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraMorphism, FPAlgebra};
use crate::error::{Error, Result};
use crate::freemod::FreeElem;
use crate::omega::{
    pullback, semilinear_image_membership, semilinear_injectivity, FPModule, Injectivity,
    Membership, MembershipMethod, SemilinearMap,
};

/// Informational tag for the kind of cover a diagram encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverKind {
    CdpOpen,
    Sdh,
    SAlt,
    H,
}

impl fmt::Display for CoverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoverKind::CdpOpen => "cdp+open",
            CoverKind::Sdh => "sdh",
            CoverKind::SAlt => "s-alt",
            CoverKind::H => "h",
        };
        write!(f, "{s}")
    }
}

/// One fibre-product node over the pair `(i, j)`: the product algebra with
/// its two restriction arrows `piece_i → P` and `piece_j → P`.
#[derive(Debug, Clone)]
pub struct ProductNode {
    pub algebra: Arc<FPAlgebra>,
    pub first: AlgebraMorphism,
    pub second: AlgebraMorphism,
}

/// An explicit cover with fibre-product nodes and restriction arrows.
#[derive(Debug, Clone)]
pub struct CoverDiagram {
    base: Arc<FPAlgebra>,
    pieces: Vec<(Arc<FPAlgebra>, AlgebraMorphism)>,
    products: BTreeMap<(usize, usize), ProductNode>,
    kind: CoverKind,
}

impl CoverDiagram {
    /// Assemble and validate: every morphism verified, and for each product
    /// node the two composites from the base agree as morphisms.
    pub fn new(
        base: &Arc<FPAlgebra>,
        pieces: Vec<AlgebraMorphism>,
        products: BTreeMap<(usize, usize), ProductNode>,
        kind: CoverKind,
    ) -> Result<CoverDiagram> {
        if pieces.is_empty() {
            return Err(Error::DiagramInvalid("no pieces".into()));
        }
        for (i, p) in pieces.iter().enumerate() {
            p.require_verified()
                .map_err(|_| Error::DiagramInvalid(format!("piece {i}: morphism unverified")))?;
            if **p.source().ring() != **base.ring() {
                return Err(Error::DiagramInvalid(format!(
                    "piece {i}: source is not the base"
                )));
            }
        }
        for (&(i, j), node) in &products {
            if i >= pieces.len() || j >= pieces.len() {
                return Err(Error::DiagramInvalid(format!(
                    "product ({i},{j}): piece index out of range"
                )));
            }
            node.first.require_verified().map_err(|_| {
                Error::DiagramInvalid(format!("product ({i},{j}): first arrow unverified"))
            })?;
            node.second.require_verified().map_err(|_| {
                Error::DiagramInvalid(format!("product ({i},{j}): second arrow unverified"))
            })?;
            let via_i = pieces[i].compose(&node.first)?;
            let via_j = pieces[j].compose(&node.second)?;
            if !via_i.equal_to(&via_j)? {
                return Err(Error::DiagramInvalid(format!(
                    "product ({i},{j}): base composites disagree"
                )));
            }
        }
        let pieces = pieces
            .into_iter()
            .map(|m| (m.target().clone(), m))
            .collect();
        Ok(CoverDiagram {
            base: base.clone(),
            pieces,
            products,
            kind,
        })
    }

    pub fn base(&self) -> &Arc<FPAlgebra> {
        &self.base
    }

    pub fn pieces(&self) -> &[(Arc<FPAlgebra>, AlgebraMorphism)] {
        &self.pieces
    }

    pub fn products(&self) -> &BTreeMap<(usize, usize), ProductNode> {
        &self.products
    }

    pub fn kind(&self) -> CoverKind {
        self.kind
    }
}

/// The two stages of the Čech sequence for a cover, in one degree:
/// `M(base) --alpha--> ⊕ M(piece_i) --beta--> ⊕ M(P_ij)`.
///
/// `beta` on node `(i, j)` is `ρ¹(ω_i) − ρ²(ω_j)` with the stored arrows in
/// stored order; the cocycle identity `beta ∘ alpha = 0` is checked on
/// every generator at construction.
#[derive(Debug, Clone)]
pub struct CechPair {
    degree: usize,
    base_module: FPModule,
    alpha: Vec<SemilinearMap>,
    beta: BTreeMap<(usize, usize), (SemilinearMap, SemilinearMap)>,
}

/// Build the Čech pair in degree `n` from a validated diagram.
pub fn build_cech(diagram: &CoverDiagram, n: usize) -> Result<CechPair> {
    let alpha: Vec<SemilinearMap> = diagram
        .pieces()
        .iter()
        .map(|(_, m)| pullback(m, n))
        .collect::<Result<Vec<_>>>()?;
    let base_module = alpha[0].source().clone();
    let mut beta = BTreeMap::new();
    for (&(i, j), node) in diagram.products() {
        let d1 = pullback(&node.first, n)?;
        let d2 = pullback(&node.second, n)?;
        beta.insert((i, j), (d1, d2));
    }
    let pair = CechPair {
        degree: n,
        base_module,
        alpha,
        beta,
    };
    // cocycle identity on every generator of the base module
    for k in 0..pair.base_module.rank() {
        let v = pair.base_module.basis_elem(k);
        let tuple = pair.apply_alpha(&v)?;
        for (key, img) in pair.apply_beta(&tuple)? {
            if !img.is_zero() {
                return Err(Error::DiagramInvalid(format!(
                    "cocycle failure at node {key:?} on generator {}",
                    pair.base_module.labels()[k]
                )));
            }
        }
    }
    Ok(pair)
}

impl CechPair {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base_module(&self) -> &FPModule {
        &self.base_module
    }

    pub fn piece_module(&self, i: usize) -> &FPModule {
        self.alpha[i].target()
    }

    pub fn pieces(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha_maps(&self) -> &[SemilinearMap] {
        &self.alpha
    }

    pub fn beta_maps(&self) -> &BTreeMap<(usize, usize), (SemilinearMap, SemilinearMap)> {
        &self.beta
    }

    /// The zero element of the middle stage.
    pub fn middle_zero(&self) -> Vec<FreeElem> {
        self.alpha
            .iter()
            .map(|a| a.target().zero_elem())
            .collect()
    }

    /// `alpha` on an element of `M(base)`: one image per piece, each in
    /// canonical form.
    pub fn apply_alpha(&self, v: &FreeElem) -> Result<Vec<FreeElem>> {
        v.ensure_rank(self.base_module.rank())?;
        self.alpha.iter().map(|a| a.apply(v)).collect()
    }

    /// `beta` on a middle-stage tuple: per product node `(i,j)` the value
    /// `ρ¹(ω_i) − ρ²(ω_j)`, keyed in node order.
    pub fn apply_beta(
        &self,
        tuple: &[FreeElem],
    ) -> Result<Vec<((usize, usize), FreeElem)>> {
        if tuple.len() != self.alpha.len() {
            return Err(Error::RankMismatch {
                expected: self.alpha.len(),
                got: tuple.len(),
            });
        }
        for (i, v) in tuple.iter().enumerate() {
            v.ensure_rank(self.alpha[i].target().rank())?;
        }
        let mut out = Vec::new();
        for (&(i, j), (d1, d2)) in &self.beta {
            let img = d1.apply(&tuple[i])?.sub(&d2.apply(&tuple[j])?);
            out.push(((i, j), d1.target().nf(&img)?));
        }
        Ok(out)
    }

    /// Pretty-print a middle-stage tuple with piece indices and labels.
    pub fn show_tuple(&self, tuple: &[FreeElem]) -> String {
        tuple
            .iter()
            .enumerate()
            .map(|(i, v)| self.alpha[i].target().show(v))
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }
}

/// Image-side verdict of an exactness query, with certificates.
#[derive(Debug, Clone)]
pub enum ImageVerdict {
    Member { preimage: FreeElem },
    NonMember { proof: String },
    Unknown { reason: String },
}

impl ImageVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            ImageVerdict::Member { .. } => "member",
            ImageVerdict::NonMember { .. } => "non_member",
            ImageVerdict::Unknown { .. } => "unknown",
        }
    }
}

/// Verdict for one middle-stage element: is it a cocycle, and does it come
/// from the base?
#[derive(Debug, Clone)]
pub struct ExactnessVerdict {
    pub in_kernel: bool,
    pub in_image: ImageVerdict,
}

/// Decide kernel membership by evaluation and image membership by sound
/// rules only:
///
/// 1. if some `alpha` component is certified injective and the candidate
///    vanishes there, a preimage would have to be zero, so a nonzero
///    candidate is a certified non-member;
/// 2. otherwise solve per component (triangular first, then a bounded
///    ansatz) and cross-check any found preimage against every component.
///
/// `unknown` is a valid outcome; a `NonMember` always carries its proof.
pub fn exactness_witness(pair: &CechPair, candidate: &[FreeElem]) -> Result<ExactnessVerdict> {
    let candidate: Vec<FreeElem> = candidate
        .iter()
        .enumerate()
        .map(|(i, v)| pair.alpha[i].target().nf(v))
        .collect::<Result<Vec<_>>>()?;

    let in_kernel = pair
        .apply_beta(&candidate)?
        .iter()
        .all(|(_, v)| v.is_zero());

    let all_zero = candidate.iter().all(|v| v.is_zero());
    if all_zero {
        return Ok(ExactnessVerdict {
            in_kernel,
            in_image: ImageVerdict::Member {
                preimage: pair.base_module.zero_elem(),
            },
        });
    }

    // rule 1: an injective component seeing zero forces a zero preimage
    for (i, a) in pair.alpha.iter().enumerate() {
        if !candidate[i].is_zero() {
            continue;
        }
        match semilinear_injectivity(a) {
            Ok(Injectivity::Injective(cert)) => {
                return Ok(ExactnessVerdict {
                    in_kernel,
                    in_image: ImageVerdict::NonMember {
                        proof: format!(
                            "component {i} is zero and its restriction map is injective \
                             (kernel of the ring morphism is zero; maximal minor {} ≠ 0), \
                             so a preimage would be zero — but the candidate is nonzero",
                            cert.minor
                        ),
                    },
                });
            }
            Ok(_) | Err(Error::CriterionInapplicable(_)) => {}
            Err(e) => return Err(e),
        }
    }

    // rule 2: solve one component, verify against the rest
    let ansatz_degree = {
        let d = candidate.iter().map(|v| v.max_degree()).max().unwrap_or(0) + 3;
        d.min(6)
    };
    let mut reason = String::from("no sound rule applied");
    for (i, a) in pair.alpha.iter().enumerate() {
        let attempts = [
            MembershipMethod::Triangular,
            MembershipMethod::BoundedAnsatz(ansatz_degree),
        ];
        for method in attempts {
            match semilinear_image_membership(a, &candidate[i], method) {
                Ok(Membership::NonMember { proof }) => {
                    return Ok(ExactnessVerdict {
                        in_kernel,
                        in_image: ImageVerdict::NonMember {
                            proof: format!("component {i} is not in the image: {proof}"),
                        },
                    });
                }
                Ok(Membership::Member { preimage }) => {
                    let mut matches = true;
                    for (j, aj) in pair.alpha.iter().enumerate() {
                        if aj.apply(&preimage)? != candidate[j] {
                            matches = false;
                            break;
                        }
                    }
                    if matches {
                        return Ok(ExactnessVerdict {
                            in_kernel,
                            in_image: ImageVerdict::Member { preimage },
                        });
                    }
                    reason = format!(
                        "component {i} solves, but its preimage misses another component"
                    );
                }
                Ok(Membership::Unknown { reason: r }) => {
                    reason = r;
                }
                Err(Error::MethodInapplicable(r)) => {
                    reason = r;
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(ExactnessVerdict {
        in_kernel,
        in_image: ImageVerdict::Unknown { reason },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FPAlgebra;
    use crate::field::CoeffField;
    use crate::poly::Ring;

    /// The blow-up cover of the Whitney umbrella: pieces are the
    /// desingularisation and the singular locus, product node is the
    /// exceptional curve.
    fn whitney_diagram() -> (CoverDiagram, Arc<FPAlgebra>) {
        let f2 = CoeffField::prime(2).unwrap();
        let r = Ring::new(f2.clone(), &["x", "y", "z"]);
        let base = FPAlgebra::new(&r, vec![r.parse_poly("y^2 - x*z^2").unwrap()])
            .assert_domain("irreducible hypersurface");

        let s = Ring::new(f2.clone(), &["u", "z"]);
        let blowup = FPAlgebra::free(&s).assert_domain("affine plane");
        let pi = AlgebraMorphism::verified(
            &base,
            &blowup,
            vec![
                s.parse_poly("u^2").unwrap(),
                s.parse_poly("u*z").unwrap(),
                s.parse_poly("z").unwrap(),
            ],
        )
        .unwrap();

        let xr = Ring::new(f2.clone(), &["x"]);
        let axis = FPAlgebra::free(&xr).assert_domain("affine line");
        let f = AlgebraMorphism::verified(
            &base,
            &axis,
            vec![xr.var(0), xr.zero(), xr.zero()],
        )
        .unwrap();

        // E = V(z) in the blow-up plane, with arrows from both pieces
        let er = Ring::new(f2, &["u"]);
        let e = FPAlgebra::free(&er).assert_domain("affine line");
        let rho1 =
            AlgebraMorphism::verified(&blowup, &e, vec![er.var(0), er.zero()]).unwrap();
        let rho2 =
            AlgebraMorphism::verified(&axis, &e, vec![er.parse_poly("u^2").unwrap()]).unwrap();

        let mut products = BTreeMap::new();
        products.insert(
            (0usize, 1usize),
            ProductNode {
                algebra: e,
                first: rho1,
                second: rho2,
            },
        );
        let diagram =
            CoverDiagram::new(&base, vec![pi, f], products, CoverKind::CdpOpen).unwrap();
        (diagram, base)
    }

    #[test]
    fn whitney_cech_sequence() {
        let (diagram, base) = whitney_diagram();
        let pair = build_cech(&diagram, 1).unwrap();

        // beta(0 ⊕ dx) = 0 since dx|_E = d(u^2) = 0
        let mut tuple = pair.middle_zero();
        tuple[1] = pair.piece_module(1).basis_elem(0);
        let beta = pair.apply_beta(&tuple).unwrap();
        assert!(beta.iter().all(|(_, v)| v.is_zero()));

        // the kernel element is nonzero with zero component on the blow-up
        let verdict = exactness_witness(&pair, &tuple).unwrap();
        assert!(verdict.in_kernel);
        assert!(tuple[0].is_zero() && !tuple[1].is_zero());
        // it is alpha(dx), so it is also a member
        match verdict.in_image {
            ImageVerdict::Member { ref preimage } => {
                assert_eq!(*preimage, pair.base_module().basis_elem(0));
            }
            ref other => panic!("expected member, got {}", other.status()),
        }

        // alpha(dy) is a cocycle and a member
        let ady = pair
            .apply_alpha(&pair.base_module().basis_elem(1))
            .unwrap();
        let v2 = exactness_witness(&pair, &ady).unwrap();
        assert!(v2.in_kernel);
        assert!(matches!(v2.in_image, ImageVerdict::Member { .. }));
        let _ = base;
    }

    #[test]
    fn identity_cover_is_trivial() {
        let r = Ring::new(CoeffField::prime(2).unwrap(), &["x", "y"]);
        let a = FPAlgebra::free(&r).assert_domain("affine plane");
        let id = AlgebraMorphism::identity(&a);
        let mut products = BTreeMap::new();
        products.insert(
            (0usize, 0usize),
            ProductNode {
                algebra: a.clone(),
                first: AlgebraMorphism::identity(&a),
                second: AlgebraMorphism::identity(&a),
            },
        );
        let diagram = CoverDiagram::new(&a, vec![id], products, CoverKind::CdpOpen).unwrap();
        let pair = build_cech(&diagram, 1).unwrap();

        // alpha is the identity, beta vanishes
        let v = pair.base_module().basis_elem(0);
        let t = pair.apply_alpha(&v).unwrap();
        assert_eq!(t[0], v);
        assert!(pair.apply_beta(&t).unwrap().iter().all(|(_, w)| w.is_zero()));

        // alpha(0) is the zero tuple
        let z = pair.apply_alpha(&pair.base_module().zero_elem()).unwrap();
        assert!(z.iter().all(|w| w.is_zero()));
    }

    #[test]
    fn mismatched_composites_are_rejected() {
        let f2 = CoeffField::prime(2).unwrap();
        let r = Ring::new(f2.clone(), &["x"]);
        let base = FPAlgebra::free(&r);
        let id = AlgebraMorphism::identity(&base);
        // a product node whose second arrow is the square map: composites differ
        let sq = AlgebraMorphism::verified(&base, &base, vec![r.parse_poly("x^2").unwrap()])
            .unwrap();
        let mut products = BTreeMap::new();
        products.insert(
            (0usize, 0usize),
            ProductNode {
                algebra: base.clone(),
                first: AlgebraMorphism::identity(&base),
                second: sq,
            },
        );
        let bad = CoverDiagram::new(&base, vec![id], products, CoverKind::H);
        assert!(matches!(bad, Err(Error::DiagramInvalid(_))));
    }

    #[test]
    fn swapping_pieces_preserves_verdicts() {
        // the symmetric Whitney diagram: swap the two pieces and the product
        // arrows; verdict on the swapped candidate is unchanged
        let (diagram, base) = whitney_diagram();
        let pair = build_cech(&diagram, 1).unwrap();

        let pieces: Vec<AlgebraMorphism> = vec![
            diagram.pieces()[1].1.clone(),
            diagram.pieces()[0].1.clone(),
        ];
        let node = diagram.products().get(&(0, 1)).unwrap();
        let mut products = BTreeMap::new();
        products.insert(
            (0usize, 1usize),
            ProductNode {
                algebra: node.algebra.clone(),
                first: node.second.clone(),
                second: node.first.clone(),
            },
        );
        let swapped =
            CoverDiagram::new(&base, pieces, products, CoverKind::CdpOpen).unwrap();
        let spair = build_cech(&swapped, 1).unwrap();

        let mut tuple = pair.middle_zero();
        tuple[1] = pair.piece_module(1).basis_elem(0);
        let mut stuple = spair.middle_zero();
        stuple[0] = spair.piece_module(0).basis_elem(0);

        let v1 = exactness_witness(&pair, &tuple).unwrap();
        let v2 = exactness_witness(&spair, &stuple).unwrap();
        assert_eq!(v1.in_kernel, v2.in_kernel);
        assert_eq!(v1.in_image.status(), v2.in_image.status());

        // beta transposes its sign: on a 2-piece diagram the images negate
        let b1 = pair.apply_beta(&tuple).unwrap();
        let b2 = spair.apply_beta(&stuple).unwrap();
        for ((_, x), (_, y)) in b1.iter().zip(&b2) {
            assert_eq!(x.neg(), *y);
        }
    }
}
