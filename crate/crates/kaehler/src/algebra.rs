//! Finitely presented algebras (affine coordinate rings) and their
//! morphisms.
//!
//! An [`FPAlgebra`] is a quotient of a polynomial ring by a finitely
//! generated ideal; its zero test is the normal form against the reduced
//! basis of the defining ideal. Domain-ness is never auto-proved:
//! irreducibility testing is out of scope, so the flag is asserted with a
//! provenance note and operations that need a domain check the flag.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gb::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::{Poly, Ring};

/// Whether the algebra is an integral domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainFlag {
    /// Asserted by the caller, with a provenance note (citation or oracle).
    Asserted(String),
    /// Known not to be a domain, with a note.
    NotDomain(String),
    Unknown,
}

/// A finitely presented algebra `k[x_1,…,x_s]/I`.
#[derive(Debug, Clone)]
pub struct FPAlgebra {
    ring: Arc<Ring>,
    ideal: Ideal,
    domain: DomainFlag,
}

impl FPAlgebra {
    pub fn new(ring: &Arc<Ring>, ideal_gens: Vec<Poly>) -> Arc<FPAlgebra> {
        for g in &ideal_gens {
            assert!(**g.ring() == **ring, "ideal generator in a different ring");
        }
        Arc::new(FPAlgebra {
            ring: ring.clone(),
            ideal: Ideal::new(ring, ideal_gens),
            domain: DomainFlag::Unknown,
        })
    }

    /// A free polynomial algebra.
    pub fn free(ring: &Arc<Ring>) -> Arc<FPAlgebra> {
        FPAlgebra::new(ring, Vec::new())
    }

    /// The same algebra with `is_domain` asserted. The note must carry the
    /// justification; this engine never proves irreducibility itself.
    pub fn assert_domain(self: &Arc<FPAlgebra>, note: &str) -> Arc<FPAlgebra> {
        Arc::new(FPAlgebra {
            ring: self.ring.clone(),
            ideal: self.ideal.clone(),
            domain: DomainFlag::Asserted(note.to_string()),
        })
    }

    pub fn mark_not_domain(self: &Arc<FPAlgebra>, note: &str) -> Arc<FPAlgebra> {
        Arc::new(FPAlgebra {
            ring: self.ring.clone(),
            ideal: self.ideal.clone(),
            domain: DomainFlag::NotDomain(note.to_string()),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn domain(&self) -> &DomainFlag {
        &self.domain
    }

    pub fn domain_note(&self) -> Option<&str> {
        match &self.domain {
            DomainFlag::Asserted(n) => Some(n),
            _ => None,
        }
    }

    pub fn require_domain(&self, what: &str) -> Result<()> {
        match &self.domain {
            DomainFlag::Asserted(_) => Ok(()),
            _ => Err(Error::NotADomain(format!(
                "{what} requires is_domain asserted on {self}"
            ))),
        }
    }

    /// Canonical representative of `f` in the algebra.
    pub fn nf(&self, f: &Poly) -> Result<Poly> {
        self.ideal.normal_form(f)
    }

    pub fn is_zero(&self, f: &Poly) -> Result<bool> {
        Ok(self.nf(f)?.is_zero())
    }

    /// Presentation equality: same ring context and identical reduced bases.
    pub fn same_presentation(&self, other: &FPAlgebra) -> Result<bool> {
        Ok(**self.ring() == **other.ring() && self.ideal.equals(&other.ideal)?)
    }

    /// `true` iff `(I : f) = I`, by equality of reduced bases. On failure
    /// the witness is a new element of the quotient, reduced mod `I`.
    pub fn nonzerodivisor_check(&self, f: &Poly) -> Result<(bool, Option<Poly>)> {
        let fr = self.nf(f)?;
        if fr.is_zero() {
            return Err(Error::InvalidInput(
                "nonzerodivisor check on the zero class".into(),
            ));
        }
        let q = self.ideal.quotient(&fr)?;
        if q.equals(&self.ideal)? {
            return Ok((true, None));
        }
        for g in q.gens() {
            let w = self.nf(g)?;
            if !w.is_zero() {
                return Ok((false, Some(w)));
            }
        }
        // quotient and ideal have equal spans but different generator lists
        Ok((true, None))
    }

    /// Quotient by a further ideal, with the canonical surjection.
    pub fn quotient_by_ideal(
        self: &Arc<FPAlgebra>,
        extra: &[Poly],
    ) -> Result<(Arc<FPAlgebra>, AlgebraMorphism)> {
        let mut gens = self.ideal.gens().to_vec();
        gens.extend(extra.iter().cloned());
        let quo = FPAlgebra::new(&self.ring, gens);
        let images: Vec<Poly> = (0..self.ring.nvars()).map(|i| self.ring.var(i)).collect();
        let surj = AlgebraMorphism::verified(self, &quo, images)?;
        Ok((quo, surj))
    }

    /// Checks a proposed lift `J` of the nilradical: `I ⊆ J`, every
    /// generator of `J` lies in `√I`, and the quotient carries a
    /// justification note. Returns `A/J` with the domain flag asserted.
    pub fn reduced_candidate_verify(
        self: &Arc<FPAlgebra>,
        candidate: &[Poly],
        note: &str,
    ) -> Result<Arc<FPAlgebra>> {
        if note.trim().is_empty() {
            return Err(Error::CandidateRejected(
                "missing domain/squarefree justification note".into(),
            ));
        }
        let j = Ideal::new(&self.ring, candidate.to_vec());
        for g in self.ideal.gens() {
            if !j.contains(g)? {
                return Err(Error::CandidateRejected(format!(
                    "defining relation {g} is not contained in the candidate"
                )));
            }
        }
        for g in candidate {
            if !self.ideal.radical_membership(g)? {
                return Err(Error::CandidateRejected(format!(
                    "candidate generator {g} is not in the radical of the defining ideal"
                )));
            }
        }
        let (quo, _) = self.quotient_by_ideal(candidate)?;
        Ok(quo.assert_domain(note))
    }
}

impl fmt::Display for FPAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match self.ring.field {
            crate::field::CoeffField::Prime(p) => format!("F{p}"),
            crate::field::CoeffField::Rationals => "Q".to_string(),
        };
        write!(f, "{field}[{}]", self.ring.vars.join(","))?;
        if !self.ideal.is_zero_ideal() {
            let gens: Vec<String> = self.ideal.gens().iter().map(|g| g.to_string()).collect();
            write!(f, "/({})", gens.join(", "))?;
        }
        Ok(())
    }
}

/// A morphism of finitely presented algebras, given by one target image per
/// source variable. `verified` records that every defining relation of the
/// source maps to zero in the target.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    source: Arc<FPAlgebra>,
    target: Arc<FPAlgebra>,
    images: Vec<Poly>,
    verified: bool,
}

impl AlgebraMorphism {
    /// Build and verify in one step; rejects ill-defined maps with the
    /// offending relation as witness.
    pub fn verified(
        source: &Arc<FPAlgebra>,
        target: &Arc<FPAlgebra>,
        images: Vec<Poly>,
    ) -> Result<AlgebraMorphism> {
        let m = AlgebraMorphism::unverified(source, target, images)?;
        m.verify()
    }

    pub fn unverified(
        source: &Arc<FPAlgebra>,
        target: &Arc<FPAlgebra>,
        images: Vec<Poly>,
    ) -> Result<AlgebraMorphism> {
        if images.len() != source.ring().nvars() {
            return Err(Error::InvalidInput(format!(
                "expected {} images, got {}",
                source.ring().nvars(),
                images.len()
            )));
        }
        if source.ring().field != target.ring().field {
            return Err(Error::RingMismatch(
                "morphism between algebras over different fields".into(),
            ));
        }
        for img in &images {
            if **img.ring() != **target.ring() {
                return Err(Error::RingMismatch(
                    "image polynomial outside the target ring".into(),
                ));
            }
        }
        Ok(AlgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            images,
            verified: false,
        })
    }

    pub fn identity(a: &Arc<FPAlgebra>) -> AlgebraMorphism {
        let images = (0..a.ring().nvars()).map(|i| a.ring().var(i)).collect();
        AlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            images,
            verified: true,
        }
    }

    /// Check well-definedness: every source relation, with variables
    /// substituted by the images, reduces to zero in the target.
    pub fn verify(mut self) -> Result<AlgebraMorphism> {
        for rel in self.source.ideal().gens() {
            let image = self
                .target
                .nf(&rel.substitute(self.target.ring(), &self.images))?;
            if !image.is_zero() {
                return Err(Error::IllDefinedMorphism {
                    relation: rel.to_string(),
                    image: image.to_string(),
                });
            }
        }
        self.verified = true;
        Ok(self)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::InvalidInput("morphism is not verified".into()))
        }
    }

    pub fn source(&self) -> &Arc<FPAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FPAlgebra> {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// Apply to an element of the source; the result is reduced in the
    /// target.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        self.target
            .nf(&f.substitute(self.target.ring(), &self.images))
    }

    /// `other ∘ self` (apply `self` first).
    pub fn compose(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if **self.target.ring() != **other.source.ring() {
            return Err(Error::RingMismatch(
                "composition through mismatched rings".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .map(|img| other.apply(img))
            .collect::<Result<Vec<_>>>()?;
        AlgebraMorphism::verified(&self.source, &other.target, images)
    }

    /// Morphism equality: same contexts and NF-equal images.
    pub fn equal_to(&self, other: &AlgebraMorphism) -> Result<bool> {
        if **self.source.ring() != **other.source.ring()
            || **self.target.ring() != **other.target.ring()
        {
            return Ok(false);
        }
        for (a, b) in self.images.iter().zip(&other.images) {
            if self.target.nf(a)? != other.target.nf(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Extended ring `[target vars | one tag per source var]` with the graph
    /// ideal `I_target + (tag_i − image_i)`, under an order eliminating the
    /// target block. Shared by kernel and subalgebra-membership queries.
    fn graph(&self) -> Result<(Arc<Ring>, Ideal, usize)> {
        self.require_verified()?;
        let tring = self.target.ring();
        let sring = self.source.ring();
        let tn = tring.nvars();
        let tags: Vec<String> = sring.vars.iter().map(|v| format!("~{v}")).collect();
        let tag_refs: Vec<&str> = tags.iter().map(|s| s.as_str()).collect();
        let big = tring.extended(&tag_refs, MonomialOrder::elimination(tn));
        let idmap: Vec<usize> = (0..tn).collect();
        let mut gens: Vec<Poly> = self
            .target
            .ideal()
            .gens()
            .iter()
            .map(|g| g.map_vars(&big, &idmap))
            .collect();
        for (i, img) in self.images.iter().enumerate() {
            let tag = big.var(tn + i);
            gens.push(tag.sub(&img.map_vars(&big, &idmap)));
        }
        let graph = Ideal::new(&big, gens);
        Ok((big, graph, tn))
    }

    /// Project a polynomial free of the target block onto the source ring.
    fn project_tags(&self, p: &Poly, tn: usize) -> Poly {
        let sring = self.source.ring();
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| (crate::monomial::Monomial(m.0[tn..].to_vec()), c.clone()))
            .collect();
        Poly::from_terms(sring, terms)
    }

    /// The kernel as an ideal of the source algebra: generators of
    /// `(I_target + graph) ∩ k[tags]`, re-expressed in source variables and
    /// reduced mod the source ideal. An empty generator list means the
    /// morphism is injective.
    pub fn kernel(&self) -> Result<Ideal> {
        let (_big, graph, tn) = self.graph()?;
        let elim = graph.eliminate(tn)?;
        let mut gens = Vec::new();
        for g in elim.gens() {
            let s = self.source.nf(&self.project_tags(g, tn))?;
            if !s.is_zero() {
                gens.push(s);
            }
        }
        Ok(Ideal::new(self.source.ring(), gens))
    }

    /// If `g` lies in the image subalgebra, produce a preimage expression:
    /// the normal form of `g` against the graph ideal under the elimination
    /// order lands in the tag block exactly when `g` is in the image.
    pub fn subalgebra_membership(&self, g: &Poly) -> Result<Option<Poly>> {
        let (big, graph, tn) = self.graph()?;
        let idmap: Vec<usize> = (0..tn).collect();
        let nf = graph.normal_form(&g.map_vars(&big, &idmap))?;
        let target_slots: Vec<usize> = (0..tn).collect();
        if !nf.free_of_vars(&target_slots) {
            return Ok(None);
        }
        let pre = self.source.nf(&self.project_tags(&nf, tn))?;
        // invariant: the preimage maps back onto g
        let back = self.apply(&pre)?;
        let g_red = self.target.nf(g)?;
        if back != g_red {
            return Ok(None);
        }
        Ok(Some(pre))
    }
}

impl fmt::Display for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self
            .source
            .ring()
            .vars
            .iter()
            .zip(&self.images)
            .map(|(v, p)| format!("{v} -> {p}"))
            .collect();
        write!(f, "{{ {} }}", imgs.join(", "))
    }
}

/// Result of a fibre-product construction.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub algebra: Arc<FPAlgebra>,
    /// Verified inclusion of the left factor.
    pub left: AlgebraMorphism,
    /// Verified inclusion of the right factor.
    pub right: AlgebraMorphism,
    /// Variables that had to be renamed, reported as `old -> new`.
    pub renames: Vec<String>,
}

/// The pushout `A ⊗_C B` of two verified morphisms out of a common base.
///
/// The presentation starts on the disjoint union of the factor variables
/// (clashing names get `_1`/`_2` suffixes) with both ideals plus one
/// identification per base variable, then linear generators are substituted
/// away: whenever a relation contains a variable `v` in a single degree-one
/// term with constant coefficient and `v` occurs nowhere else in that
/// relation, `v` is eliminated. Each step is an isomorphism of the presented
/// algebra and the inclusion images are rewritten along the way, so the
/// returned inclusions stay exact. A suffixed survivor is renamed back to
/// its original name once its twin is gone.
pub fn tensor_product(phi_a: &AlgebraMorphism, phi_b: &AlgebraMorphism) -> Result<TensorProduct> {
    phi_a.require_verified()?;
    phi_b.require_verified()?;
    if **phi_a.source().ring() != **phi_b.source().ring() {
        return Err(Error::RingMismatch(
            "tensor product needs a common base".into(),
        ));
    }
    let a = phi_a.target().clone();
    let b = phi_b.target().clone();
    if a.ring().field != b.ring().field {
        return Err(Error::RingMismatch("factors over different fields".into()));
    }

    let a_vars = &a.ring().vars;
    let b_vars = &b.ring().vars;
    let mut names: Vec<String> = Vec::new();
    let mut renames: Vec<String> = Vec::new();
    let mut clash_pairs: Vec<(String, String, String)> = Vec::new();
    let clash = |v: &String| a_vars.contains(v) && b_vars.contains(v);
    let fresh = |base: &str, taken: &[String]| -> String {
        let mut name = base.to_string();
        let mut k = 1;
        while taken.contains(&name) {
            name = format!("{base}_{k}");
            k += 1;
        }
        name
    };
    for v in a_vars {
        let name = if clash(v) {
            fresh(&format!("{v}_1"), &names)
        } else {
            fresh(v, &names)
        };
        if name != *v {
            renames.push(format!("{v} -> {name} (left)"));
        }
        names.push(name);
    }
    for v in b_vars {
        let name = if clash(v) {
            let n = fresh(&format!("{v}_2"), &names);
            clash_pairs.push((
                v.clone(),
                names[a_vars.iter().position(|x| x == v).unwrap()].clone(),
                n.clone(),
            ));
            n
        } else {
            fresh(v, &names)
        };
        if name != *v {
            renames.push(format!("{v} -> {name} (right)"));
        }
        names.push(name);
    }

    let an = a_vars.len();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut ring = Ring::new(a.ring().field.clone(), &name_refs);
    let a_map: Vec<usize> = (0..an).collect();
    let b_map: Vec<usize> = (an..an + b_vars.len()).collect();

    let mut rels: Vec<Poly> = Vec::new();
    for g in a.ideal().gens() {
        rels.push(g.map_vars(&ring, &a_map));
    }
    for g in b.ideal().gens() {
        rels.push(g.map_vars(&ring, &b_map));
    }
    for (ia, ib) in phi_a.images().iter().zip(phi_b.images()) {
        let r = ia.map_vars(&ring, &a_map).sub(&ib.map_vars(&ring, &b_map));
        if !r.is_zero() {
            rels.push(r);
        }
    }

    // images of the original factor variables inside the evolving presentation
    let mut a_images: Vec<Poly> = (0..an).map(|i| ring.var(i)).collect();
    let mut b_images: Vec<Poly> = (0..b_vars.len()).map(|i| ring.var(an + i)).collect();
    let mut vars = names;

    loop {
        let mut found: Option<(usize, usize)> = None; // (relation, variable slot)
        'rels: for (ri, r) in rels.iter().enumerate() {
            let mut best: Option<usize> = None;
            for slot in 0..vars.len() {
                let mut linear = false;
                let mut elsewhere = false;
                for (m, _) in r.terms() {
                    let e = m.0[slot];
                    if e == 0 {
                        continue;
                    }
                    if e == 1 && m.total_degree() == 1 {
                        linear = true;
                    } else {
                        elsewhere = true;
                    }
                }
                if linear && !elsewhere {
                    best = Some(slot); // keep scanning: prefer the last slot
                }
            }
            if let Some(slot) = best {
                found = Some((ri, slot));
                break 'rels;
            }
        }
        let Some((ri, slot)) = found else { break };

        let rel = rels.remove(ri);
        // rel = c·v + g with v absent from g; solve v = -g/c
        let c = rel
            .terms()
            .iter()
            .find(|(m, _)| m.0[slot] == 1 && m.total_degree() == 1)
            .map(|(_, c)| c.clone())
            .expect("linear term vanished");
        let v_poly = ring.var(slot);
        let g = rel.sub(&v_poly.scale(&c));
        let rhs = g.neg().scale(&ring.field.inv(&c));

        let mut new_vars = vars.clone();
        new_vars.remove(slot);
        let new_refs: Vec<&str> = new_vars.iter().map(|s| s.as_str()).collect();
        let new_ring = Ring::new(ring.field.clone(), &new_refs);
        let mut full_map = vec![0usize; vars.len()];
        {
            let mut next = 0usize;
            for (i, fm) in full_map.iter_mut().enumerate() {
                if i != slot {
                    *fm = next;
                    next += 1;
                }
            }
        }
        let mut images: Vec<Poly> = Vec::with_capacity(vars.len());
        for i in 0..vars.len() {
            if i == slot {
                // rhs is v-free, so its image ignores the dropped slot
                images.push(rhs.map_vars(&new_ring, &full_map));
            } else {
                images.push(new_ring.var(full_map[i]));
            }
        }
        rels = rels
            .iter()
            .map(|r| r.substitute(&new_ring, &images))
            .filter(|r| !r.is_zero())
            .collect();
        a_images = a_images
            .iter()
            .map(|p| p.substitute(&new_ring, &images))
            .collect();
        b_images = b_images
            .iter()
            .map(|p| p.substitute(&new_ring, &images))
            .collect();
        vars = new_vars;
        ring = new_ring;
    }

    // rename a lone suffixed survivor back to the original name
    for (orig, n1, n2) in &clash_pairs {
        let has1 = vars.contains(n1);
        let has2 = vars.contains(n2);
        if has1 ^ has2 && !vars.contains(orig) {
            let from = if has1 { n1 } else { n2 };
            let idx = vars.iter().position(|v| v == from).unwrap();
            vars[idx] = orig.clone();
            renames.push(format!("{from} -> {orig} (merged)"));
        }
    }
    let final_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let final_ring = Ring::new(ring.field.clone(), &final_refs);
    let idmap: Vec<usize> = (0..vars.len()).collect();
    let rels: Vec<Poly> = rels.iter().map(|r| r.map_vars(&final_ring, &idmap)).collect();
    let a_images: Vec<Poly> = a_images
        .iter()
        .map(|p| p.map_vars(&final_ring, &idmap))
        .collect();
    let b_images: Vec<Poly> = b_images
        .iter()
        .map(|p| p.map_vars(&final_ring, &idmap))
        .collect();

    let algebra = FPAlgebra::new(&final_ring, rels);
    let left = AlgebraMorphism::verified(&a, &algebra, a_images)?;
    let right = AlgebraMorphism::verified(&b, &algebra, b_images)?;
    Ok(TensorProduct {
        algebra,
        left,
        right,
        renames,
    })
}
