//! Modules of differential forms as finitely presented modules.
//!
//! `Ω^1` of `A = k[x_1,…,x_s]/I` is presented on generators `dx_i` by the
//! rows `Σ_j ∂f/∂x_j · dx_j` for the defining relations `f`; higher degrees
//! are exterior powers of that presentation. Pull-backs along ring
//! morphisms are semilinear maps carried by a matrix over the target.
//! Torsion is computed by saturating the relation module at a maximal
//! nonzero minor of the presentation matrix: away from that minor's locus
//! the module is free of generic rank, so the saturation captures exactly
//! the sections vanishing on a dense open.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraMorphism, FPAlgebra};
use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::freemod::FreeElem;
use crate::gb::Submodule;
use crate::monomial::Monomial;
use crate::poly::{Poly, Ring};

/// A finitely presented module over an [`FPAlgebra`], with printable
/// generator labels (`dx`, `dy∧dz`, …).
///
/// `rows` is the presentation over the algebra, entries reduced mod the
/// defining ideal. `relations` is the lifted submodule over the polynomial
/// ring: the rows plus `f·e_i` for every defining relation `f`, which makes
/// normal forms against it canonical representatives in the module.
#[derive(Debug, Clone)]
pub struct FPModule {
    algebra: Arc<FPAlgebra>,
    labels: Vec<String>,
    rows: Vec<FreeElem>,
    relations: Submodule,
}

impl FPModule {
    pub fn new(algebra: &Arc<FPAlgebra>, labels: Vec<String>, rows: Vec<FreeElem>) -> Result<FPModule> {
        let ring = algebra.ring();
        let rank = labels.len();
        assert!(rank > 0, "module rank must be positive");
        {
            let mut sorted = labels.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), rank, "labels must be pairwise distinct");
        }
        let mut reduced_rows = Vec::new();
        for r in &rows {
            r.ensure_rank(rank)?;
            let red = FreeElem::new(
                r.comps()
                    .iter()
                    .map(|c| algebra.nf(c))
                    .collect::<Result<Vec<_>>>()?,
            );
            if !red.is_zero() {
                reduced_rows.push(red);
            }
        }
        let mut lifted = reduced_rows.clone();
        for f in algebra.ideal().gens() {
            for i in 0..rank {
                lifted.push(FreeElem::basis_scaled(ring, rank, i, f));
            }
        }
        Ok(FPModule {
            algebra: algebra.clone(),
            labels,
            rows: reduced_rows,
            relations: Submodule::new(ring, rank, lifted),
        })
    }

    /// The free module of the given rank.
    pub fn free(algebra: &Arc<FPAlgebra>, labels: Vec<String>) -> Result<FPModule> {
        FPModule::new(algebra, labels, Vec::new())
    }

    pub fn algebra(&self) -> &Arc<FPAlgebra> {
        &self.algebra
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.algebra.ring()
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Presentation rows over the algebra (without the ideal lift).
    pub fn rows(&self) -> &[FreeElem] {
        &self.rows
    }

    /// The lifted relation submodule over the polynomial ring.
    pub fn relations(&self) -> &Submodule {
        &self.relations
    }

    /// Presentation-free module: no relation rows beyond the ideal lift.
    pub fn is_free_presentation(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical representative of an element.
    pub fn nf(&self, v: &FreeElem) -> Result<FreeElem> {
        self.relations.normal_form(v)
    }

    pub fn is_zero_elem(&self, v: &FreeElem) -> Result<bool> {
        Ok(self.nf(v)?.is_zero())
    }

    pub fn zero_elem(&self) -> FreeElem {
        FreeElem::zero(self.ring(), self.rank())
    }

    pub fn basis_elem(&self, i: usize) -> FreeElem {
        FreeElem::basis(self.ring(), self.rank(), i)
    }

    /// The generator with the given label.
    pub fn gen_named(&self, label: &str) -> Option<FreeElem> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.basis_elem(i))
    }

    pub fn show(&self, v: &FreeElem) -> String {
        v.display_with_labels(&self.labels)
    }

    pub fn same_presentation(&self, other: &FPModule) -> Result<bool> {
        Ok(self.labels == other.labels
            && self.algebra.same_presentation(&other.algebra)?
            && self.relations.equals(&other.relations)?)
    }

    /// Scalar restriction to `A/(I + extra)`: same labels, rows reduced in
    /// the quotient.
    pub fn restrict(&self, extra: &[Poly]) -> Result<FPModule> {
        let (quo, _) = self.algebra.quotient_by_ideal(extra)?;
        FPModule::new(&quo, self.labels.clone(), self.rows.clone())
    }
}

impl fmt::Display for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩ over {}", self.labels.join(", "), self.algebra)?;
        if self.rows.is_empty() {
            write!(f, " (free)")?;
        } else {
            let rows: Vec<String> = self.rows.iter().map(|r| self.show(r)).collect();
            write!(f, " / ({} = 0)", rows.join(", "))?;
        }
        Ok(())
    }
}

/// Strictly increasing index tuples of length `n` from `0..s`, in
/// lexicographic order.
pub fn index_tuples(s: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, s: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..s {
            cur.push(i);
            rec(i + 1, s, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, s, n, &mut Vec::new(), &mut out);
    out
}

fn det(ring: &Arc<Ring>, mat: &[Vec<Poly>]) -> Poly {
    let n = mat.len();
    if n == 0 {
        return ring.one();
    }
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = ring.zero();
    for (i, row) in mat.iter().enumerate() {
        if row[0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = mat
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| r[1..].to_vec())
            .collect();
        let cof = row[0].mul(&det(ring, &minor));
        acc = if i % 2 == 0 { acc.add(&cof) } else { acc.sub(&cof) };
    }
    acc
}

/// The presentation of `Ω^n` of an algebra: degree one is the Jacobian
/// presentation on the `dx_i`, higher degrees are exterior powers.
pub fn omega_presentation(algebra: &Arc<FPAlgebra>, n: usize) -> Result<FPModule> {
    let ring = algebra.ring();
    let s = ring.nvars();
    if n == 0 || n > s {
        return Err(Error::DegreeOutOfRange { n, rank: s });
    }
    let labels: Vec<String> = ring.vars.iter().map(|v| format!("d{v}")).collect();
    let rows = algebra
        .ideal()
        .gens()
        .iter()
        .map(|f| FreeElem::new((0..s).map(|j| f.partial_derivative(j)).collect()))
        .collect();
    let omega1 = FPModule::new(algebra, labels, rows)?;
    if n == 1 {
        Ok(omega1)
    } else {
        exterior_power(&omega1, n)
    }
}

/// The universal derivation `d : A → Ω^1_A`, reduced to canonical form.
pub fn universal_d(algebra: &Arc<FPAlgebra>, f: &Poly) -> Result<FreeElem> {
    let omega = omega_presentation(algebra, 1)?;
    let fr = algebra.nf(f)?;
    let s = algebra.ring().nvars();
    let v = FreeElem::new((0..s).map(|j| fr.partial_derivative(j)).collect());
    omega.nf(&v)
}

/// The `n`-th exterior power of a presented module: free rank `C(s,n)` on
/// sorted wedge labels, relations `q ∧ e_J` for every presentation row `q`
/// and every strictly increasing `(n-1)`-tuple `J`.
pub fn exterior_power(m: &FPModule, n: usize) -> Result<FPModule> {
    let s = m.rank();
    if n == 0 || n > s {
        return Err(Error::DegreeOutOfRange { n, rank: s });
    }
    let ring = m.ring();
    let tuples = index_tuples(s, n);
    let labels: Vec<String> = tuples
        .iter()
        .map(|t| {
            t.iter()
                .map(|&i| m.labels()[i].clone())
                .collect::<Vec<_>>()
                .join("∧")
        })
        .collect();
    let tuple_index = |t: &[usize]| tuples.iter().position(|u| u == t).unwrap();

    let mut rows: Vec<FreeElem> = Vec::new();
    for q in m.rows() {
        for j_tuple in index_tuples(s, n - 1) {
            let mut acc = FreeElem::zero(ring, tuples.len());
            for i in 0..s {
                if q.comp(i).is_zero() || j_tuple.contains(&i) {
                    continue;
                }
                // sign of sorting e_i into e_{j_1} ∧ … ∧ e_{j_{n-1}}
                let pos = j_tuple.iter().filter(|&&j| j < i).count();
                let mut sorted = j_tuple.clone();
                sorted.insert(pos, i);
                let coeff = if pos % 2 == 0 {
                    q.comp(i).clone()
                } else {
                    q.comp(i).neg()
                };
                acc = acc.add(&FreeElem::basis_scaled(
                    ring,
                    tuples.len(),
                    tuple_index(&sorted),
                    &coeff,
                ));
            }
            if !acc.is_zero() {
                rows.push(acc);
            }
        }
    }
    FPModule::new(m.algebra(), labels, rows)
}

/// A module map over a ring morphism: `v ↦ matrix · φ(v)`, with the matrix
/// over the target. Well-definedness (source relations land in target
/// relations) is checked at construction.
#[derive(Debug, Clone)]
pub struct SemilinearMap {
    morphism: AlgebraMorphism,
    source: FPModule,
    target: FPModule,
    /// `matrix[k][j]` is the `e_k`-coefficient of the image of source
    /// generator `e_j`; entries reduced in the target algebra.
    matrix: Vec<Vec<Poly>>,
}

impl SemilinearMap {
    pub fn new(
        morphism: AlgebraMorphism,
        source: FPModule,
        target: FPModule,
        matrix: Vec<Vec<Poly>>,
    ) -> Result<SemilinearMap> {
        morphism.require_verified()?;
        assert_eq!(matrix.len(), target.rank(), "matrix row count");
        for row in &matrix {
            assert_eq!(row.len(), source.rank(), "matrix column count");
        }
        let matrix: Vec<Vec<Poly>> = matrix
            .iter()
            .map(|row| row.iter().map(|p| target.algebra().nf(p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let map = SemilinearMap {
            morphism,
            source,
            target,
            matrix,
        };
        for row in map.source.rows() {
            let img = map.apply_raw(row)?;
            if !map.target.is_zero_elem(&img)? {
                return Err(Error::IllDefinedMap(map.target.show(&img)));
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &FPModule {
        &self.source
    }

    pub fn target(&self) -> &FPModule {
        &self.target
    }

    pub fn morphism(&self) -> &AlgebraMorphism {
        &self.morphism
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    fn apply_raw(&self, v: &FreeElem) -> Result<FreeElem> {
        v.ensure_rank(self.source.rank())?;
        let tring = self.target.ring();
        let mut comps = vec![tring.zero(); self.target.rank()];
        for j in 0..self.source.rank() {
            if v.comp(j).is_zero() {
                continue;
            }
            let coef = self.morphism.apply(v.comp(j))?;
            for (k, comp) in comps.iter_mut().enumerate() {
                *comp = comp.add(&self.matrix[k][j].mul(&coef));
            }
        }
        Ok(FreeElem::new(comps))
    }

    /// Image of an element, in canonical form in the target module.
    pub fn apply(&self, v: &FreeElem) -> Result<FreeElem> {
        self.target.nf(&self.apply_raw(v)?)
    }

    /// `other ∘ self` as a semilinear map.
    pub fn compose(&self, other: &SemilinearMap) -> Result<SemilinearMap> {
        let phi = self.morphism.compose(other.morphism())?;
        let mid = self.target.rank();
        let rows = other.target.rank();
        let cols = self.source.rank();
        let tring = other.target.ring();
        let mut matrix = vec![vec![tring.zero(); cols]; rows];
        for (k, mrow) in matrix.iter_mut().enumerate() {
            for (i, entry) in mrow.iter_mut().enumerate() {
                let mut acc = tring.zero();
                for j in 0..mid {
                    let pushed = other.morphism.apply(&self.matrix[j][i])?;
                    acc = acc.add(&other.matrix[k][j].mul(&pushed));
                }
                *entry = acc;
            }
        }
        SemilinearMap::new(phi, self.source.clone(), other.target.clone(), matrix)
    }

    /// Map equality: the two matrices agree column by column as elements of
    /// the target module (equal normal forms).
    pub fn equal_to(&self, other: &SemilinearMap) -> Result<bool> {
        if self.source.rank() != other.source.rank() || self.target.rank() != other.target.rank()
        {
            return Ok(false);
        }
        for j in 0..self.source.rank() {
            let col_a = FreeElem::new(
                (0..self.target.rank())
                    .map(|k| self.matrix[k][j].clone())
                    .collect(),
            );
            let col_b = FreeElem::new(
                (0..other.target.rank())
                    .map(|k| other.matrix[k][j].clone())
                    .collect(),
            );
            if self.target.nf(&col_a)? != other.target.nf(&col_b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The pull-back `dφ : Ω^n(source) → Ω^n(target)` of a verified morphism.
/// Degree one has matrix entries `∂(φ(x_j))/∂y_k`; higher degrees are the
/// wedge (compound) matrices.
pub fn pullback(phi: &AlgebraMorphism, n: usize) -> Result<SemilinearMap> {
    phi.require_verified()?;
    let source = omega_presentation(phi.source(), n)?;
    let target = omega_presentation(phi.target(), n)?;
    let st = phi.target().ring().nvars();
    let ss = phi.source().ring().nvars();
    let base: Vec<Vec<Poly>> = (0..st)
        .map(|k| {
            (0..ss)
                .map(|j| phi.images()[j].partial_derivative(k))
                .collect()
        })
        .collect();
    let matrix = if n == 1 {
        base
    } else {
        let tring = phi.target().ring();
        let rows_t = index_tuples(st, n);
        let cols_t = index_tuples(ss, n);
        rows_t
            .iter()
            .map(|kt| {
                cols_t
                    .iter()
                    .map(|jt| {
                        let sub: Vec<Vec<Poly>> = kt
                            .iter()
                            .map(|&k| jt.iter().map(|&j| base[k][j].clone()).collect())
                            .collect();
                        det(tring, &sub)
                    })
                    .collect()
            })
            .collect()
    };
    SemilinearMap::new(phi.clone(), source, target, matrix)
}

/// One torsion generator together with its annihilator witness:
/// `witness · elem` lies in the relations, exactly.
#[derive(Debug, Clone)]
pub struct TorsionGenerator {
    pub elem: FreeElem,
    pub witness: Poly,
}

/// Result of a torsion computation.
#[derive(Debug, Clone)]
pub struct TorsionResult {
    pub generators: Vec<TorsionGenerator>,
    /// The torsion-free quotient (the module modulo its torsion).
    pub quotient: FPModule,
    /// Generic rank of the module over the fraction field.
    pub rank: usize,
    /// The maximal-size nonzero minor used for the saturation.
    pub fitting_minor: Poly,
}

impl TorsionResult {
    pub fn is_torsion_free(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Generic rank of the presentation matrix over the fraction field, by
/// exhaustive minor enumeration with normal-form zero tests, smallest size
/// first; also returns the lexicographically first nonzero minor of the
/// maximal size (or 1 when the rank is zero).
fn matrix_rank_and_minor(m: &FPModule) -> Result<(usize, Poly)> {
    let ring = m.ring();
    let algebra = m.algebra();
    let nrows = m.rows().len();
    let s = m.rank();
    let mut rank = 0usize;
    let mut minor = ring.one();
    for t in 1..=nrows.min(s) {
        let mut found: Option<Poly> = None;
        'search: for rset in index_tuples(nrows, t) {
            for cset in index_tuples(s, t) {
                let sub: Vec<Vec<Poly>> = rset
                    .iter()
                    .map(|&r| cset.iter().map(|&c| m.rows()[r].comp(c).clone()).collect())
                    .collect();
                let d = algebra.nf(&det(ring, &sub))?;
                if !d.is_zero() {
                    found = Some(d);
                    break 'search;
                }
            }
        }
        match found {
            Some(d) => {
                rank = t;
                minor = d;
            }
            None => break,
        }
    }
    Ok((rank, minor))
}

/// First element of the colon ideal `(relations : v)` that is nonzero in
/// the algebra; `None` when the colon ideal sits inside the defining ideal.
fn annihilator_witness(m: &FPModule, v: &FreeElem) -> Result<Option<Poly>> {
    let colon = m.relations().colon_ideal(v)?;
    for g in colon.groebner()?.polys() {
        let w = m.algebra().nf(&g)?;
        if !w.is_zero() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// A nonzero annihilator of `v` in the module, if one exists. Requires the
/// algebra to be an asserted domain: over a domain these are exactly the
/// sections vanishing on a dense open subscheme.
pub fn is_torsion(m: &FPModule, v: &FreeElem) -> Result<Option<Poly>> {
    m.algebra().require_domain("torsion test")?;
    let nf = m.nf(v)?;
    if nf.is_zero() {
        return Ok(Some(m.ring().one()));
    }
    annihilator_witness(m, &nf)
}

/// The torsion submodule, its witnesses, and the torsion-free quotient.
///
/// The generic rank `r` of the presentation matrix is found by minor
/// enumeration; any nonzero `r`-minor `f` localizes the module to a free
/// one, so `tor M = (relations : f^∞)/relations`. Each returned generator
/// carries an exact annihilator witness.
pub fn torsion_submodule(m: &FPModule) -> Result<TorsionResult> {
    m.algebra().require_domain("torsion computation")?;
    let (r, minor) = matrix_rank_and_minor(m)?;
    let generic_rank = m.rank() - r;
    let saturation = if r == 0 {
        m.relations().clone()
    } else {
        m.relations().saturate(&minor)?
    };
    let mut generators: Vec<TorsionGenerator> = Vec::new();
    for g in saturation.gens() {
        let nf = m.nf(g)?;
        if nf.is_zero() || generators.iter().any(|t| t.elem == nf) {
            continue;
        }
        let witness = annihilator_witness(m, &nf)?.ok_or_else(|| {
            Error::InvalidInput("saturation produced a non-torsion element".into())
        })?;
        // the witness equation holds exactly
        debug_assert!(m.is_zero_elem(&nf.scale_poly(&witness))?);
        generators.push(TorsionGenerator { elem: nf, witness });
    }
    let mut quotient_rows = m.rows().to_vec();
    quotient_rows.extend(generators.iter().map(|t| t.elem.clone()));
    let quotient = FPModule::new(m.algebra(), m.labels().to_vec(), quotient_rows)?;
    Ok(TorsionResult {
        generators,
        quotient,
        rank: generic_rank,
        fitting_minor: minor,
    })
}

/// Outcome of the hyperplane-section criterion.
#[derive(Debug, Clone)]
pub struct HyperplaneVerdict {
    pub pass: bool,
    pub hyperplane_algebra: Arc<FPAlgebra>,
    /// One line per torsion generator: both annihilators, and whether they
    /// agree.
    pub details: Vec<String>,
}

/// Checks that the torsion of `Ω^1_A` restricts injectively to the
/// hyperplane `H = V(h)`: for each torsion generator `g`, the annihilator
/// of its image in `Ω^1_H` must equal the pushed-forward annihilator of
/// `g` (mutual membership of generators). The caller asserts that `H` is
/// integral by supplying a note; without one the check refuses to run.
pub fn hyperplane_criterion(
    algebra: &Arc<FPAlgebra>,
    h: &Poly,
    torsion: &TorsionResult,
    hyperplane_note: Option<&str>,
) -> Result<HyperplaneVerdict> {
    let hr = algebra.nf(h)?;
    if hr.is_zero() {
        return Err(Error::DegenerateHyperplane(format!(
            "{h} is zero on the variety"
        )));
    }
    let note = hyperplane_note.ok_or_else(|| {
        Error::NotADomain("hyperplane section needs an asserted integrality note".into())
    })?;
    let (quo, _) = algebra.quotient_by_ideal(&[hr.clone()])?;
    let h_algebra = quo.assert_domain(note);
    let omega_h = omega_presentation(&h_algebra, 1)?;

    let omega_a = omega_presentation(algebra, 1)?;
    let mut pass = true;
    let mut details = Vec::new();
    for tg in &torsion.generators {
        let image = omega_h.nf(&tg.elem)?;
        let ann_h = omega_h.relations().colon_ideal(&image)?;
        // pushed-forward annihilator: the annihilator upstairs plus (I + h)
        let colon_up = omega_a.relations().colon_ideal(&tg.elem)?;
        let mut pushed_gens: Vec<Poly> = colon_up.gens().to_vec();
        pushed_gens.extend(h_algebra.ideal().gens().iter().cloned());
        let pushed = crate::gb::Ideal::new(algebra.ring(), pushed_gens);

        let mut agree = true;
        for g in ann_h.gens() {
            if !pushed.contains(g)? {
                agree = false;
                break;
            }
        }
        if agree {
            for g in pushed.gens() {
                if !ann_h.contains(g)? {
                    agree = false;
                    break;
                }
            }
        }
        if !agree {
            pass = false;
        }
        details.push(format!(
            "generator {}: image {} in Ω^1_H, annihilator downstairs ({}), pushed annihilator ({}) -> {}",
            torsion.quotient.show(&tg.elem),
            omega_h.show(&image),
            ann_h
                .groebner()?
                .polys()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            pushed
                .groebner()?
                .polys()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            if agree { "equal" } else { "DIFFERENT" }
        ));
    }
    Ok(HyperplaneVerdict {
        pass,
        hyperplane_algebra: h_algebra,
        details,
    })
}

/// How to decide membership in the image of a semilinear map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipMethod {
    /// Column-permute to upper-triangular shape and back-substitute with
    /// exact division; definitive in both directions over a free target.
    Triangular,
    /// Solve the k-linear system over source coefficients of bounded
    /// degree; can certify membership, never non-membership.
    BoundedAnsatz(u32),
}

/// Verdict of an image-membership query. `NonMember` always carries a
/// machine-checkable proof description.
#[derive(Debug, Clone)]
pub enum Membership {
    Member { preimage: FreeElem },
    NonMember { proof: String },
    Unknown { reason: String },
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Decide whether `v` lies in the image of the map.
pub fn semilinear_image_membership(
    map: &SemilinearMap,
    v: &FreeElem,
    method: MembershipMethod,
) -> Result<Membership> {
    match method {
        MembershipMethod::Triangular => triangular_membership(map, v),
        MembershipMethod::BoundedAnsatz(d) => bounded_ansatz_membership(map, v, d),
    }
}

fn triangular_membership(map: &SemilinearMap, v: &FreeElem) -> Result<Membership> {
    let st = map.target.rank();
    let ss = map.source.rank();
    if ss > st {
        return Err(Error::MethodInapplicable(format!(
            "triangular method needs target rank ≥ source rank ({st} < {ss})"
        )));
    }
    if ss > 5 {
        return Err(Error::MethodInapplicable(
            "triangular method capped at source rank 5".into(),
        ));
    }
    let tgt_alg = map.target.algebra();
    let free_target = tgt_alg.ideal().is_zero_ideal();

    // find a column permutation giving an upper-triangular shape with
    // nonzero pivots: position k is solved from row k
    let mut chosen: Option<Vec<usize>> = None;
    'perms: for perm in permutations(ss) {
        for (k, &col) in perm.iter().enumerate() {
            if map.matrix[k][col].is_zero() {
                continue 'perms;
            }
            for row in (k + 1)..st {
                if !map.matrix[row][col].is_zero() {
                    continue 'perms;
                }
            }
        }
        chosen = Some(perm);
        break;
    }
    let Some(perm) = chosen else {
        return Err(Error::MethodInapplicable(
            "matrix is not upper-triangularizable by a column permutation".into(),
        ));
    };
    // pivots must be nonzerodivisors for the forced-solution argument
    for (k, &col) in perm.iter().enumerate() {
        let (nzd, _) = tgt_alg.nonzerodivisor_check(&map.matrix[k][col])?;
        if !nzd {
            return Err(Error::MethodInapplicable(format!(
                "pivot {} is a zerodivisor",
                map.matrix[k][col]
            )));
        }
    }

    let v = map.target.nf(v)?;
    let tring = map.target.ring();
    let mut solved_target: Vec<Poly> = vec![tring.zero(); ss]; // values φ(a_col)
    let mut preimage_comps: Vec<Poly> = vec![map.source.ring().zero(); ss];
    for k in (0..ss).rev() {
        let col = perm[k];
        let mut rhs = v.comp(k).clone();
        for (k2, &col2) in perm.iter().enumerate().skip(k + 1) {
            rhs = rhs.sub(&map.matrix[k][col2].mul(&solved_target[k2]));
        }
        let rhs = tgt_alg.nf(&rhs)?;
        let pivot = &map.matrix[k][col];
        let w = match rhs.exact_div(pivot) {
            Ok(w) => w,
            Err(Error::InexactDivision { .. }) => {
                if free_target {
                    return Ok(Membership::NonMember {
                        proof: format!(
                            "pivot {} does not divide the forced value {} (row {})",
                            pivot, rhs, k
                        ),
                    });
                }
                return Ok(Membership::Unknown {
                    reason: "exact division is not decisive over a quotient target".into(),
                });
            }
            Err(e) => return Err(e),
        };
        match map.morphism.subalgebra_membership(&w)? {
            Some(a) => {
                preimage_comps[col] = a;
                solved_target[k] = w;
            }
            None => {
                if free_target {
                    return Ok(Membership::NonMember {
                        proof: format!(
                            "forced coefficient {} of generator {} is not in the image subalgebra",
                            w,
                            map.source.labels()[col]
                        ),
                    });
                }
                return Ok(Membership::Unknown {
                    reason: "subalgebra test not decisive over a quotient target".into(),
                });
            }
        }
    }
    let candidate = FreeElem::new(preimage_comps);
    let image = map.apply(&candidate)?;
    if image == v {
        Ok(Membership::Member {
            preimage: map.source.nf(&candidate)?,
        })
    } else if free_target {
        Ok(Membership::NonMember {
            proof: format!(
                "the uniquely forced solution {} misses the remaining equations: image {} ≠ {}",
                map.source.show(&candidate),
                map.target.show(&image),
                map.target.show(&v)
            ),
        })
    } else {
        Ok(Membership::Unknown {
            reason: "forced solution fails, but the target is a quotient".into(),
        })
    }
}

fn monomials_up_to(ring: &Arc<Ring>, degree: u32) -> Vec<Monomial> {
    fn rec(slots: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if slots == 0 {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e as u16);
            rec(slots - 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(ring.nvars(), degree, &mut Vec::new(), &mut raw);
    raw.sort();
    raw.into_iter().map(Monomial).collect()
}

fn bounded_ansatz_membership(map: &SemilinearMap, v: &FreeElem, degree: u32) -> Result<Membership> {
    let sring = map.source.ring();
    let field = &sring.field;
    let monos = monomials_up_to(sring, degree);
    let ss = map.source.rank();

    // columns of the linear system: NF(φ(μ)·col_j) for each unknown (j, μ)
    let mut sys_cols: Vec<FreeElem> = Vec::new();
    for j in 0..ss {
        for mu in &monos {
            let mp = Poly::from_terms(sring, vec![(mu.clone(), field.one())]);
            let unit = FreeElem::basis_scaled(sring, ss, j, &mp);
            sys_cols.push(map.apply(&unit)?);
        }
    }
    let rhs = map.target.nf(v)?;

    // coordinatize over the (component, monomial) support
    let mut support: Vec<(usize, Monomial)> = Vec::new();
    let mut push_support = |e: &FreeElem| {
        for (c, comp) in e.comps().iter().enumerate() {
            for (m, _) in comp.terms() {
                if !support.iter().any(|(cc, mm)| *cc == c && mm == m) {
                    support.push((c, m.clone()));
                }
            }
        }
    };
    for c in &sys_cols {
        push_support(c);
    }
    push_support(&rhs);

    let coords = |e: &FreeElem| -> Vec<Coeff> {
        support
            .iter()
            .map(|(c, m)| {
                e.comp(*c)
                    .terms()
                    .iter()
                    .find(|(mm, _)| mm == m)
                    .map(|(_, co)| co.clone())
                    .unwrap_or_else(|| field.zero())
            })
            .collect()
    };

    let ncols = sys_cols.len();
    let nrows = support.len();
    let mut a: Vec<Vec<Coeff>> = (0..nrows).map(|_| vec![field.zero(); ncols]).collect();
    for (j, c) in sys_cols.iter().enumerate() {
        for (i, x) in coords(c).into_iter().enumerate() {
            a[i][j] = x;
        }
    }
    let mut b = coords(&rhs);

    // Gaussian elimination, exact
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut row = 0usize;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&r| !field.is_zero(&a[r][col])) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = field.inv(&a[row][col]);
        for x in a[row].iter_mut() {
            *x = field.mul(x, &inv);
        }
        b[row] = field.mul(&b[row], &inv);
        for r in 0..nrows {
            if r != row && !field.is_zero(&a[r][col]) {
                let factor = a[r][col].clone();
                for c2 in 0..ncols {
                    let t = field.mul(&a[row][c2], &factor);
                    a[r][c2] = field.sub(&a[r][c2], &t);
                }
                let t = field.mul(&b[row], &factor);
                b[r] = field.sub(&b[r], &t);
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == nrows {
            break;
        }
    }
    // consistency: a zero row with nonzero rhs means no solution at this degree
    for r in row..nrows {
        if !field.is_zero(&b[r]) {
            return Ok(Membership::Unknown {
                reason: format!("no preimage with coefficients of degree ≤ {degree}"),
            });
        }
    }
    // read off one solution: free variables at zero
    let mut sol = vec![field.zero(); ncols];
    for (col, pr) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pr {
            sol[col] = b[*r].clone();
        }
    }
    let mut comps = vec![sring.zero(); ss];
    for j in 0..ss {
        let mut terms = Vec::new();
        for (mi, mu) in monos.iter().enumerate() {
            let c = sol[j * monos.len() + mi].clone();
            if !field.is_zero(&c) {
                terms.push((mu.clone(), c));
            }
        }
        comps[j] = Poly::from_terms(sring, terms);
    }
    let candidate = FreeElem::new(comps);
    let image = map.apply(&candidate)?;
    if image == rhs {
        Ok(Membership::Member {
            preimage: map.source.nf(&candidate)?,
        })
    } else {
        Ok(Membership::Unknown {
            reason: "linear solve produced no exact preimage".into(),
        })
    }
}

/// A machine-checkable injectivity certificate: the ring-morphism kernel
/// vanishes and the matrix has a nonzero maximal minor over the (free)
/// target, which pins down injectivity for a free source over a domain.
#[derive(Debug, Clone)]
pub struct InjectivityCertificate {
    pub minor: Poly,
    pub minor_rows: Vec<usize>,
    pub minor_cols: Vec<usize>,
}

/// Verdict of an injectivity check; never a false claim — `Unknown` is the
/// honest answer when the criterion does not apply.
#[derive(Debug, Clone)]
pub enum Injectivity {
    Injective(InjectivityCertificate),
    NotInjective { witness: String },
    Unknown { reason: String },
}

/// Injectivity of a semilinear map out of a free module over a domain.
pub fn semilinear_injectivity(map: &SemilinearMap) -> Result<Injectivity> {
    let src_alg = map.source.algebra();
    if !map.source.is_free_presentation() {
        return Err(Error::CriterionInapplicable(
            "source module is not presented as free".into(),
        ));
    }
    if src_alg.domain_note().is_none() {
        return Err(Error::CriterionInapplicable(
            "source algebra is not an asserted domain".into(),
        ));
    }
    let ss = map.source.rank();
    let st = map.target.rank();

    // a generator mapping to zero is a definitive witness
    for j in 0..ss {
        let col = FreeElem::new((0..st).map(|k| map.matrix[k][j].clone()).collect());
        if map.target.is_zero_elem(&col)? {
            return Ok(Injectivity::NotInjective {
                witness: format!(
                    "generator {} is nonzero in the source and maps to zero",
                    map.source.labels()[j]
                ),
            });
        }
    }
    // a nonzero kernel element of the ring morphism kills a generator
    let kernel = map.morphism.kernel()?;
    if !kernel.is_zero_ideal() {
        let a = &kernel.gens()[0];
        return Ok(Injectivity::NotInjective {
            witness: format!(
                "{a} lies in the kernel of the ring morphism, so ({a})·{} maps to zero",
                map.source.labels()[0]
            ),
        });
    }

    let tgt_alg = map.target.algebra();
    if !tgt_alg.ideal().is_zero_ideal() || !map.target.is_free_presentation() {
        return Ok(Injectivity::Unknown {
            reason: "minor criterion needs a free target module".into(),
        });
    }
    if tgt_alg.domain_note().is_none() {
        return Ok(Injectivity::Unknown {
            reason: "minor criterion needs the target asserted as a domain".into(),
        });
    }
    if ss > st {
        return Ok(Injectivity::Unknown {
            reason: "source rank exceeds target rank".into(),
        });
    }
    for rset in index_tuples(st, ss) {
        let cols: Vec<usize> = (0..ss).collect();
        let sub: Vec<Vec<Poly>> = rset
            .iter()
            .map(|&k| cols.iter().map(|&j| map.matrix[k][j].clone()).collect())
            .collect();
        let d = det(map.target.ring(), &sub);
        if !d.is_zero() {
            return Ok(Injectivity::Injective(InjectivityCertificate {
                minor: d,
                minor_rows: rset,
                minor_cols: cols,
            }));
        }
    }
    Ok(Injectivity::Unknown {
        reason: "all maximal minors vanish".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FPAlgebra;
    use crate::field::CoeffField;

    fn whitney() -> Arc<FPAlgebra> {
        let r = Ring::new(CoeffField::prime(2).unwrap(), &["x", "y", "z"]);
        FPAlgebra::new(&r, vec![r.parse_poly("y^2 - x*z^2").unwrap()])
            .assert_domain("irreducible hypersurface")
    }

    /// π#: the Artin–Schreier-style cover k[x,y] -> k[x,z], y -> z^p + z*x^n.
    fn wild_cover(p: u32, n: u32) -> AlgebraMorphism {
        let f = CoeffField::prime(p).unwrap();
        let src = FPAlgebra::free(&Ring::new(f.clone(), &["x", "y"])).assert_domain("polynomial ring");
        let tring = Ring::new(f, &["x", "z"]);
        let tgt = FPAlgebra::free(&tring).assert_domain("polynomial ring");
        AlgebraMorphism::verified(
            &src,
            &tgt,
            vec![
                tring.parse_poly("x").unwrap(),
                tring.parse_poly(&format!("z^{p} + z*x^{n}")).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn whitney_omega1_presentation() {
        let w = whitney();
        let m = omega_presentation(&w, 1).unwrap();
        assert_eq!(m.labels(), &["dx", "dy", "dz"]);
        assert_eq!(m.rows().len(), 1);
        // d(y^2 - x*z^2) = z^2 dx in characteristic 2
        let expected = FreeElem::basis_scaled(w.ring(), 3, 0, &w.ring().parse_poly("z^2").unwrap());
        assert_eq!(m.rows()[0], expected);
    }

    #[test]
    fn artin_schreier_omega1_row() {
        // three-variable presentation of the cover target: relation row
        // (n z x^{n-1}, -1, x^n); p = 3, n = 2
        let r = Ring::new(CoeffField::prime(3).unwrap(), &["x", "y", "z"]);
        let s = FPAlgebra::new(&r, vec![r.parse_poly("z^3 + z*x^2 - y").unwrap()]);
        let m = omega_presentation(&s, 1).unwrap();
        assert_eq!(m.rows().len(), 1);
        let row = &m.rows()[0];
        assert_eq!(row.comp(0), &r.parse_poly("2*z*x").unwrap());
        assert_eq!(row.comp(1), &r.parse_poly("-1").unwrap());
        assert_eq!(row.comp(2), &r.parse_poly("x^2").unwrap());
    }

    #[test]
    fn polynomial_ring_omega_is_free() {
        let q = Ring::new(CoeffField::rationals(), &["x"]);
        let a = FPAlgebra::free(&q);
        let m = omega_presentation(&a, 1).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(m.is_free_presentation());
    }

    #[test]
    fn universal_d_examples() {
        // d(z^p) = 0 over F_p
        let r = Ring::new(CoeffField::prime(5).unwrap(), &["z"]);
        let a = FPAlgebra::free(&r);
        assert!(universal_d(&a, &r.parse_poly("z^5").unwrap()).unwrap().is_zero());

        // d(u^2) = 0 over F_2[u,z]: torsion dies on the blow-up
        let r2 = Ring::new(CoeffField::prime(2).unwrap(), &["u", "z"]);
        let b = FPAlgebra::free(&r2);
        assert!(universal_d(&b, &r2.parse_poly("u^2").unwrap()).unwrap().is_zero());

        assert!(universal_d(&b, &r2.constant_int(7)).unwrap().is_zero());

        // Leibniz spot check: d(u^2 z) = u^2 dz (char 2)
        let d = universal_d(&b, &r2.parse_poly("u^2*z").unwrap()).unwrap();
        assert_eq!(d.comp(0), &r2.zero());
        assert_eq!(d.comp(1), &r2.parse_poly("u^2").unwrap());
    }

    #[test]
    fn exterior_power_examples() {
        // Λ^2 of a free rank-2 module has rank 1
        let q = Ring::new(CoeffField::rationals(), &["x", "y"]);
        let a = FPAlgebra::free(&q);
        let m1 = omega_presentation(&a, 1).unwrap();
        let m2 = exterior_power(&m1, 2).unwrap();
        assert_eq!(m2.rank(), 1);
        assert_eq!(m2.labels(), &["dx∧dy"]);
        assert!(m2.is_free_presentation());

        // Λ^2 of Ω^1 of the Whitney umbrella: relations z^2·dx∧dy, z^2·dx∧dz
        let w = whitney();
        let o2 = omega_presentation(&w, 2).unwrap();
        assert_eq!(o2.labels(), &["dx∧dy", "dx∧dz", "dy∧dz"]);
        assert_eq!(o2.rows().len(), 2);
        let z2 = w.ring().parse_poly("z^2").unwrap();
        assert_eq!(o2.rows()[0], FreeElem::basis_scaled(w.ring(), 3, 0, &z2));
        assert_eq!(o2.rows()[1], FreeElem::basis_scaled(w.ring(), 3, 1, &z2));

        // top power of a free module has rank 1
        let r3 = Ring::new(CoeffField::rationals(), &["x", "y", "z"]);
        let f3 = FPAlgebra::free(&r3);
        let top = omega_presentation(&f3, 3).unwrap();
        assert_eq!(top.rank(), 1);

        assert!(matches!(
            omega_presentation(&f3, 4),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn pullback_wild_cover_matrix() {
        // dx ↦ dx, dy ↦ n z x^{n-1} dx + x^n dz; p = 3, n = 2
        let pi = wild_cover(3, 2);
        let d = pullback(&pi, 1).unwrap();
        let t = pi.target().ring();
        assert_eq!(d.matrix()[0][0], t.one());
        assert_eq!(d.matrix()[1][0], t.zero());
        assert_eq!(d.matrix()[0][1], t.parse_poly("2*z*x").unwrap());
        assert_eq!(d.matrix()[1][1], t.parse_poly("x^2").unwrap());
    }

    #[test]
    fn pullback_on_exceptional_fibre_is_zero() {
        // Z = k[y] -> Z~ = k[z], y ↦ z^p: the pull-back on Ω^1 is zero
        let f2 = CoeffField::prime(2).unwrap();
        let zr = Ring::new(f2.clone(), &["y"]);
        let z = FPAlgebra::free(&zr);
        let ztr = Ring::new(f2, &["z"]);
        let zt = FPAlgebra::free(&ztr);
        let phi = AlgebraMorphism::verified(&z, &zt, vec![ztr.parse_poly("z^2").unwrap()]).unwrap();
        let d = pullback(&phi, 1).unwrap();
        assert!(d.matrix()[0][0].is_zero());
        let dy = d.source().basis_elem(0);
        assert!(d.apply(&dy).unwrap().is_zero());
    }

    #[test]
    fn pullback_of_identity_is_identity() {
        let w = whitney();
        let id = AlgebraMorphism::identity(&w);
        let d = pullback(&id, 1).unwrap();
        for k in 0..3 {
            for j in 0..3 {
                let e = &d.matrix()[k][j];
                if k == j {
                    assert!(e.is_one());
                } else {
                    assert!(e.is_zero());
                }
            }
        }
    }

    #[test]
    fn whitney_torsion_is_dx_with_witness_z2() {
        let w = whitney();
        let m = omega_presentation(&w, 1).unwrap();
        let tor = torsion_submodule(&m).unwrap();
        assert_eq!(tor.rank, 2);
        assert_eq!(tor.fitting_minor, w.ring().parse_poly("z^2").unwrap());
        assert_eq!(tor.generators.len(), 1);
        let g = &tor.generators[0];
        assert_eq!(g.elem, m.basis_elem(0)); // dx
        assert_eq!(g.witness, w.ring().parse_poly("z^2").unwrap());
        // quotient: dx dies, dy and dz stay free and torsion-free
        assert!(tor.quotient.is_zero_elem(&m.basis_elem(0)).unwrap());
        assert!(is_torsion(&tor.quotient, &m.basis_elem(1)).unwrap().is_none());
        assert!(is_torsion(&tor.quotient, &m.basis_elem(2)).unwrap().is_none());
        // torsion of the quotient is empty
        let tor2 = torsion_submodule(&tor.quotient).unwrap();
        assert!(tor2.is_torsion_free());
    }

    #[test]
    fn cusp_torsion_over_q() {
        // Ω^1 of Q[x,y]/(y^2 - x^3): torsion generated by 2x dy - 3y dx,
        // witness y
        let r = Ring::new(CoeffField::rationals(), &["x", "y"]);
        let cusp =
            FPAlgebra::new(&r, vec![r.parse_poly("y^2 - x^3").unwrap()]).assert_domain("cuspidal cubic");
        let m = omega_presentation(&cusp, 1).unwrap();
        let tor = torsion_submodule(&m).unwrap();
        assert_eq!(tor.rank, 1);
        assert_eq!(tor.generators.len(), 1);
        let g = &tor.generators[0];
        // the generator spans the same line as 2x dy - 3y dx
        let expected = FreeElem::new(vec![
            r.parse_poly("-3*y").unwrap(),
            r.parse_poly("2*x").unwrap(),
        ]);
        // the generator and 2x dy - 3y dx span the same submodule mod relations
        let span_g = crate::gb::Submodule::new(&r, 2, {
            let mut v = vec![g.elem.clone()];
            v.extend(m.relations().gens().iter().cloned());
            v
        });
        assert!(span_g.contains(&expected).unwrap());
        assert_eq!(g.witness, r.parse_poly("y").unwrap());
        // witness equation holds exactly
        assert!(m.is_zero_elem(&g.elem.scale_poly(&g.witness)).unwrap());
    }

    #[test]
    fn free_module_has_no_torsion() {
        let r = Ring::new(CoeffField::prime(2).unwrap(), &["x"]);
        let a = FPAlgebra::free(&r).assert_domain("polynomial ring");
        let m = omega_presentation(&a, 1).unwrap();
        let tor = torsion_submodule(&m).unwrap();
        assert!(tor.is_torsion_free());
        assert_eq!(tor.rank, 1);
        assert!(tor.fitting_minor.is_one());
    }

    #[test]
    fn is_torsion_examples() {
        let w = whitney();
        let m = omega_presentation(&w, 1).unwrap();
        let witness = is_torsion(&m, &m.basis_elem(0)).unwrap();
        assert_eq!(witness.unwrap(), w.ring().parse_poly("z^2").unwrap());

        let r = Ring::new(CoeffField::prime(2).unwrap(), &["x"]);
        let line = FPAlgebra::free(&r).assert_domain("affine line");
        let ml = omega_presentation(&line, 1).unwrap();
        assert!(is_torsion(&ml, &ml.basis_elem(0)).unwrap().is_none());

        let zero = m.zero_elem();
        assert!(is_torsion(&m, &zero).unwrap().unwrap().is_one());

        // refuses without a domain assertion
        let nd_ring = Ring::new(CoeffField::prime(2).unwrap(), &["x", "y"]);
        let nd = FPAlgebra::new(&nd_ring, vec![nd_ring.parse_poly("x*y").unwrap()]);
        let mnd = omega_presentation(&nd, 1).unwrap();
        assert!(matches!(
            is_torsion(&mnd, &mnd.basis_elem(0)),
            Err(Error::NotADomain(_))
        ));
    }

    #[test]
    fn restrict_examples() {
        let w = whitney();
        let m = omega_presentation(&w, 1).unwrap();

        // z = 1 kills dx: relation row becomes (1, 0, 0)
        let r1 = m.restrict(&[w.ring().parse_poly("z - 1").unwrap()]).unwrap();
        assert!(r1.is_zero_elem(&r1.basis_elem(0)).unwrap());
        assert!(!r1.is_zero_elem(&r1.basis_elem(1)).unwrap());

        // restricting a free module stays free
        let f = Ring::new(CoeffField::rationals(), &["x", "y"]);
        let fa = FPAlgebra::free(&f);
        let mf = omega_presentation(&fa, 1).unwrap();
        let rf = mf.restrict(&[f.parse_poly("x - 1").unwrap()]).unwrap();
        assert!(rf.is_free_presentation());

        // x = z gives the cusp: the relation row survives as (z^2, 0, 0)
        let r2 = m.restrict(&[w.ring().parse_poly("x - z").unwrap()]).unwrap();
        assert_eq!(r2.rows().len(), 1);
        assert_eq!(
            r2.rows()[0],
            FreeElem::basis_scaled(r2.ring(), 3, 0, &r2.ring().parse_poly("z^2").unwrap())
        );
    }

    #[test]
    fn hyperplane_criterion_on_whitney() {
        let w = whitney();
        let m = omega_presentation(&w, 1).unwrap();
        let tor = torsion_submodule(&m).unwrap();

        // h = x - z gives the char-2 cusp y^2 = z^3; the criterion passes
        let h = w.ring().parse_poly("x - z").unwrap();
        let verdict =
            hyperplane_criterion(&w, &h, &tor, Some("cuspidal cubic, irreducible")).unwrap();
        assert!(verdict.pass, "{:?}", verdict.details);

        // without an integrality note the check refuses (h = x gives k[y,z]/(y^2))
        let hx = w.ring().parse_poly("x").unwrap();
        assert!(matches!(
            hyperplane_criterion(&w, &hx, &tor, None),
            Err(Error::NotADomain(_))
        ));

        // h ≡ 0 on the variety is rejected
        let zero_h = w.ring().parse_poly("y^2 - x*z^2").unwrap();
        assert!(matches!(
            hyperplane_criterion(&w, &zero_h, &tor, Some("n/a")),
            Err(Error::DegenerateHyperplane(_))
        ));
    }

    #[test]
    fn hyperplane_criterion_vacuous_on_smooth() {
        let r = Ring::new(CoeffField::prime(2).unwrap(), &["x", "y"]);
        let a = FPAlgebra::free(&r).assert_domain("affine plane");
        let m = omega_presentation(&a, 1).unwrap();
        let tor = torsion_submodule(&m).unwrap();
        assert!(tor.is_torsion_free());
        let verdict = hyperplane_criterion(
            &a,
            &r.parse_poly("x - 1").unwrap(),
            &tor,
            Some("affine line"),
        )
        .unwrap();
        assert!(verdict.pass);
        assert!(verdict.details.is_empty());
    }

    #[test]
    fn membership_pivot_division_failure() {
        // p = 2, n = 2: x·dz is not in the image of dπ — pivot x^2 ∤ x
        let pi = wild_cover(2, 2);
        let d = pullback(&pi, 1).unwrap();
        let t = pi.target().ring();
        let v = FreeElem::new(vec![t.zero(), t.parse_poly("x").unwrap()]);
        match semilinear_image_membership(&d, &v, MembershipMethod::Triangular).unwrap() {
            Membership::NonMember { proof } => {
                assert!(proof.contains("x^2"), "{proof}");
            }
            other => panic!("expected NonMember, got {other:?}"),
        }

        // dπ(dy) = x^2 dz is in the image with preimage dy
        let v2 = FreeElem::new(vec![t.zero(), t.parse_poly("x^2").unwrap()]);
        match semilinear_image_membership(&d, &v2, MembershipMethod::Triangular).unwrap() {
            Membership::Member { preimage } => {
                assert_eq!(preimage, d.source().basis_elem(1));
            }
            other => panic!("expected Member, got {other:?}"),
        }

        // identity: everything is a member
        let w = whitney();
        let id = pullback(&AlgebraMorphism::identity(&w), 1).unwrap();
        let v3 = id.source().basis_elem(2);
        match semilinear_image_membership(&id, &v3, MembershipMethod::Triangular).unwrap() {
            Membership::Member { preimage } => assert_eq!(preimage, v3),
            other => panic!("expected Member, got {other:?}"),
        }
    }

    #[test]
    fn membership_bounded_ansatz() {
        let pi = wild_cover(2, 2);
        let d = pullback(&pi, 1).unwrap();
        let t = pi.target().ring();
        // dπ(x·dy + dx) = dx + x^3 dz
        let v = FreeElem::new(vec![t.one(), t.parse_poly("x^3").unwrap()]);
        match semilinear_image_membership(&d, &v, MembershipMethod::BoundedAnsatz(2)).unwrap() {
            Membership::Member { preimage } => {
                let img = d.apply(&preimage).unwrap();
                assert_eq!(img, d.target().nf(&v).unwrap());
            }
            other => panic!("expected Member, got {other:?}"),
        }
        // x·dz has no preimage at any degree; the ansatz answers unknown
        let v2 = FreeElem::new(vec![t.zero(), t.parse_poly("x").unwrap()]);
        match semilinear_image_membership(&d, &v2, MembershipMethod::BoundedAnsatz(3)).unwrap() {
            Membership::Unknown { .. } => {}
            other => panic!("expected Unknown, got {other:?}"),
        }
    }

    #[test]
    fn injectivity_examples() {
        // dπ of the wild cover: kernel zero, minor x^n nonzero
        let pi = wild_cover(5, 3);
        let d = pullback(&pi, 1).unwrap();
        match semilinear_injectivity(&d).unwrap() {
            Injectivity::Injective(cert) => {
                assert_eq!(cert.minor, pi.target().ring().parse_poly("x^3").unwrap());
            }
            other => panic!("expected Injective, got {other:?}"),
        }

        // the zero map out of a free rank-1 module is not injective
        let f2 = CoeffField::prime(2).unwrap();
        let zr = Ring::new(f2.clone(), &["y"]);
        let z = FPAlgebra::free(&zr).assert_domain("affine line");
        let ztr = Ring::new(f2, &["z"]);
        let zt = FPAlgebra::free(&ztr).assert_domain("affine line");
        let phi = AlgebraMorphism::verified(&z, &zt, vec![ztr.parse_poly("z^2").unwrap()]).unwrap();
        let dz = pullback(&phi, 1).unwrap();
        match semilinear_injectivity(&dz).unwrap() {
            Injectivity::NotInjective { witness } => {
                assert!(witness.contains("dy"), "{witness}");
            }
            other => panic!("expected NotInjective, got {other:?}"),
        }
    }

    #[test]
    fn pullback_functoriality_on_composite() {
        // Ω^1(R_whitney) -> Ω^1(k[u,z]) -> Ω^1(k[u]) equals the pull-back of
        // the composed morphism
        let w = whitney();
        let f2 = CoeffField::prime(2).unwrap();
        let s = Ring::new(f2.clone(), &["u", "z"]);
        let sf = FPAlgebra::free(&s);
        let pi = AlgebraMorphism::verified(
            &w,
            &sf,
            vec![
                s.parse_poly("u^2").unwrap(),
                s.parse_poly("u*z").unwrap(),
                s.parse_poly("z").unwrap(),
            ],
        )
        .unwrap();
        let (e, surj) = sf.quotient_by_ideal(&[s.parse_poly("z").unwrap()]).unwrap();
        let _ = e;
        let d1 = pullback(&pi, 1).unwrap();
        let d2 = pullback(&surj, 1).unwrap();
        let composed = d1.compose(&d2).unwrap();
        let direct = pullback(&pi.compose(&surj).unwrap(), 1).unwrap();
        assert!(composed.equal_to(&direct).unwrap());
    }

    #[test]
    fn frobenius_pullback_kills_omega1() {
        // x_i ↦ x_i^p induces the zero map on Ω^1
        let f3 = CoeffField::prime(3).unwrap();
        let r = Ring::new(f3, &["x", "y"]);
        let a = FPAlgebra::free(&r);
        let frob = AlgebraMorphism::verified(
            &a,
            &a,
            vec![r.parse_poly("x^3").unwrap(), r.parse_poly("y^3").unwrap()],
        )
        .unwrap();
        let d = pullback(&frob, 1).unwrap();
        for row in d.matrix() {
            for e in row {
                assert!(e.is_zero());
            }
        }
    }
}
