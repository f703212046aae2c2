//! Gröbner bases for ideals and for submodules of free modules.
//!
//! One engine path serves both: an ideal is a submodule of `A^1`. Module
//! computations run under position-over-term with lower component index
//! first; the base monomial order is the working ring's order. Bases are
//! fully reduced and deterministically sorted, so equal inputs give
//! bit-identical bases and the reduced basis is a fixpoint of the algorithm.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Coeff, CoeffField};
use crate::freemod::FreeElem;
use crate::monomial::{pot_cmp, Monomial, MonomialOrder};
use crate::poly::{Poly, Ring};

thread_local! {
    static STATS: RefCell<EngineStats> = RefCell::new(EngineStats::default());
}

/// Running counters for one scenario pipeline. Deterministic given the
/// inputs; reset and read them around a computation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct EngineStats {
    pub basis_runs: u64,
    pub spairs: u64,
    pub reductions: u64,
    pub max_basis_len: u64,
}

pub fn reset_stats() {
    STATS.with(|s| *s.borrow_mut() = EngineStats::default());
}

pub fn snapshot_stats() -> EngineStats {
    STATS.with(|s| s.borrow().clone())
}

fn bump(f: impl FnOnce(&mut EngineStats)) {
    STATS.with(|s| f(&mut s.borrow_mut()));
}

fn reorder_poly(f: &Poly, target: &Arc<Ring>) -> Poly {
    if **f.ring() == **target {
        return f.clone();
    }
    Poly::from_terms(target, f.terms().to_vec())
}

fn reorder_elem(v: &FreeElem, target: &Arc<Ring>) -> FreeElem {
    FreeElem::new(v.comps().iter().map(|c| reorder_poly(c, target)).collect())
}

fn single_term(ring: &Arc<Ring>, m: Monomial, c: Coeff) -> Poly {
    Poly::from_terms(ring, vec![(m, c)])
}

/// Content-primitive normalization for rational coefficients: divide by the
/// gcd of the numerators over the lcm of the denominators and make the
/// leading coefficient positive. Keeps coefficient growth in check during a
/// basis run. Identity on prime fields.
fn primitive_part(v: &FreeElem) -> FreeElem {
    let ring = v.ring().clone();
    if ring.field != CoeffField::Rationals {
        return v.clone();
    }
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for comp in v.comps() {
        for (_, c) in comp.terms() {
            if let Coeff::Rat(r) = c {
                num_gcd = num_gcd.gcd(r.numer());
                den_lcm = den_lcm.lcm(r.denom());
            }
        }
    }
    if num_gcd.is_zero() {
        return v.clone();
    }
    let content = Coeff::Rat(num_rational::BigRational::new(num_gcd, den_lcm));
    let scaled = v
        .comps()
        .iter()
        .map(|c| {
            Poly::from_terms(
                &ring,
                c.terms()
                    .iter()
                    .map(|(m, co)| (m.clone(), ring.field.div(co, &content)))
                    .collect(),
            )
        })
        .collect();
    let out = FreeElem::new(scaled);
    match out.leading() {
        Some((_, _, lc)) if lc.is_negative() => out.neg(),
        _ => out,
    }
}

fn reduce_full(v: &FreeElem, basis: &[FreeElem], caps_degree: u32) -> Result<FreeElem> {
    let ring = v.ring().clone();
    let rank = v.rank();
    let field = ring.field.clone();
    let mut work = v.clone();
    let mut rem = FreeElem::zero(&ring, rank);
    'outer: while let Some((comp, m, c)) = work.leading() {
        if m.total_degree() > caps_degree {
            return Err(Error::ResourceCap(format!(
                "degree {} exceeds cap {}",
                m.total_degree(),
                caps_degree
            )));
        }
        for b in basis {
            let (bc, bm, bco) = b.leading().expect("basis elements are nonzero");
            if bc == comp {
                if let Some(q) = m.checked_div(&bm) {
                    let qc = field.div(&c, &bco);
                    work = work.sub(&b.mul_term(&q, &qc));
                    bump(|s| s.reductions += 1);
                    continue 'outer;
                }
            }
        }
        let t = FreeElem::basis_scaled(&ring, rank, comp, &single_term(&ring, m, c));
        rem = rem.add(&t);
        work = work.sub(&t);
    }
    Ok(rem)
}

fn s_vector(f: &FreeElem, g: &FreeElem) -> Option<FreeElem> {
    let (cf, mf, af) = f.leading()?;
    let (cg, mg, ag) = g.leading()?;
    if cf != cg {
        return None;
    }
    let l = mf.lcm(&mg);
    let qf = l.checked_div(&mf).unwrap();
    let qg = l.checked_div(&mg).unwrap();
    Some(f.mul_term(&qf, &ag).sub(&g.mul_term(&qg, &af)))
}

/// Pair key for the normal selection strategy: minimal lcm degree first,
/// ties broken by the generator index pair.
fn pair_key(f: &FreeElem, g: &FreeElem, i: usize, j: usize) -> Option<(u32, usize, usize)> {
    let (cf, mf, _) = f.leading()?;
    let (cg, mg, _) = g.leading()?;
    if cf != cg {
        return None;
    }
    Some((mf.lcm(&mg).total_degree(), i, j))
}

fn compute_basis(
    ring: &Arc<Ring>,
    rank: usize,
    gens: &[FreeElem],
    caps_degree: u32,
    caps_pairs: usize,
) -> Result<Vec<FreeElem>> {
    bump(|s| s.basis_runs += 1);
    let mut basis: Vec<FreeElem> = Vec::new();
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();

    let insert = |elem: FreeElem,
                  basis: &mut Vec<FreeElem>,
                  queue: &mut BTreeSet<(u32, usize, usize)>|
     -> Result<()> {
        let red = reduce_full(&elem, basis, caps_degree)?;
        if red.is_zero() {
            return Ok(());
        }
        let red = primitive_part(&red).monic();
        let j = basis.len();
        for (i, b) in basis.iter().enumerate() {
            // Product criterion, classical for ideals: coprime leading
            // monomials in rank one give an S-polynomial reducing to zero.
            if rank == 1 {
                let (_, mi, _) = b.leading().unwrap();
                let (_, mj, _) = red.leading().unwrap();
                if mi.lcm(&mj) == mi.mul(&mj) {
                    continue;
                }
            }
            if let Some(key) = pair_key(b, &red, i, j) {
                queue.insert(key);
            }
        }
        basis.push(red);
        bump(|s| s.max_basis_len = s.max_basis_len.max(basis.len() as u64));
        Ok(())
    };

    for g in gens {
        if !g.is_zero() {
            insert(reorder_elem(g, ring), &mut basis, &mut queue)?;
        }
    }

    let mut processed = 0usize;
    while let Some(&key) = queue.iter().next() {
        queue.remove(&key);
        processed += 1;
        if processed > caps_pairs {
            return Err(Error::ResourceCap(format!(
                "S-pair count exceeds cap {caps_pairs}"
            )));
        }
        bump(|s| s.spairs += 1);
        let (_, i, j) = key;
        if let Some(s) = s_vector(&basis[i], &basis[j]) {
            insert(s, &mut basis, &mut queue)?;
        }
    }

    // Minimalize: drop elements whose leading term another element divides.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (ci, mi, _) = basis[i].leading().unwrap();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (cj, mj, _) = basis[j].leading().unwrap();
            if ci == cj && mj.divides(&mi) && !(mi == mj && j > i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<FreeElem> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(b, k)| k.then_some(b))
        .collect();

    // Tail-reduce each element against the others for the unique reduced basis.
    let mut reduced: Vec<FreeElem> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<FreeElem> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, b)| (j != i).then(|| b.clone()))
            .collect();
        let r = reduce_full(&minimal[i], &others, caps_degree)?;
        if !r.is_zero() {
            reduced.push(r.monic());
        }
    }

    let order = ring.order.clone();
    reduced.sort_by(|a, b| {
        let (ca, ma, _) = a.leading().unwrap();
        let (cb, mb, _) = b.leading().unwrap();
        pot_cmp(&order, (ca, &ma), (cb, &mb))
    });
    Ok(reduced)
}

/// A reduced, deterministically sorted Gröbner basis. `rank == 1` is the
/// ideal case. The basis owns a ring whose order is the working order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    rank: usize,
    elems: Vec<FreeElem>,
}

impl GroebnerBasis {
    /// Compute the reduced basis of the span of `gens` in `A^rank` under
    /// `order` (position-over-term on top of it when `rank > 1`).
    pub fn compute(
        ring: &Arc<Ring>,
        rank: usize,
        gens: &[FreeElem],
        order: &MonomialOrder,
    ) -> Result<GroebnerBasis> {
        for g in gens {
            g.ensure_rank(rank)?;
        }
        let work_ring = if *order == ring.order {
            ring.clone()
        } else {
            ring.reordered(order.clone())
        };
        let elems = compute_basis(
            &work_ring,
            rank,
            gens,
            ring.caps.max_degree,
            ring.caps.max_pairs,
        )?;
        Ok(GroebnerBasis {
            ring: work_ring,
            rank,
            elems,
        })
    }

    pub fn elems(&self) -> &[FreeElem] {
        &self.elems
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.ring.order
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Rank-one view of the basis elements.
    pub fn polys(&self) -> Vec<Poly> {
        assert_eq!(self.rank, 1);
        self.elems.iter().map(|e| e.comp(0).clone()).collect()
    }

    /// The unique remainder of `v` against the reduced basis. `v` lies in
    /// the span iff the result is zero.
    pub fn normal_form(&self, v: &FreeElem) -> Result<FreeElem> {
        v.ensure_rank(self.rank)?;
        let w = reorder_elem(v, &self.ring);
        let r = reduce_full(&w, &self.elems, self.ring.caps.max_degree)?;
        Ok(reorder_elem(&r, v.ring()))
    }

    pub fn normal_form_poly(&self, f: &Poly) -> Result<Poly> {
        let v = FreeElem::new(vec![f.clone()]);
        Ok(self.normal_form(&v)?.comp(0).clone())
    }

    pub fn contains(&self, v: &FreeElem) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    pub fn contains_poly(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form_poly(f)?.is_zero())
    }

    /// True when the basis generates the unit ideal (rank one).
    pub fn is_unit_ideal(&self) -> bool {
        self.rank == 1
            && self
                .elems
                .iter()
                .any(|e| e.comp(0).is_constant() && !e.comp(0).is_zero())
    }

    /// Re-verify the Buchberger criterion: every S-vector reduces to zero.
    pub fn self_test(&self) -> Result<bool> {
        for i in 0..self.elems.len() {
            for j in (i + 1)..self.elems.len() {
                if let Some(s) = s_vector(&self.elems[i], &self.elems[j]) {
                    let r = reduce_full(&s, &self.elems, self.ring.caps.max_degree)?;
                    if !r.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// An ideal of a polynomial ring with a cached reduced basis.
#[derive(Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Poly>,
    gb: OnceLock<Result<GroebnerBasis>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb: self.gb.clone(),
        }
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.gens == other.gens
    }
}
impl Eq for Ideal {}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Poly>) -> Ideal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    fn as_elems(&self) -> Vec<FreeElem> {
        self.gens
            .iter()
            .map(|g| FreeElem::new(vec![g.clone()]))
            .collect()
    }

    /// The cached reduced basis under the ring's own order.
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        self.gb
            .get_or_init(|| {
                GroebnerBasis::compute(&self.ring, 1, &self.as_elems(), &self.ring.order)
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Basis under an arbitrary order, not cached.
    pub fn groebner_with(&self, order: &MonomialOrder) -> Result<GroebnerBasis> {
        GroebnerBasis::compute(&self.ring, 1, &self.as_elems(), order)
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        self.groebner()?.normal_form_poly(f)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Ideal equality via the uniqueness of reduced bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.groebner()?.elems() == other.groebner()?.elems())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit_ideal())
    }

    /// Ideal quotient `(I : f)`, computed through syzygies.
    pub fn quotient(&self, f: &Poly) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::InvalidInput("quotient by zero".into()));
        }
        let sub = self.as_submodule();
        let q = sub.quotient(f)?;
        Ok(Ideal::new(
            &self.ring,
            q.gens().iter().map(|v| v.comp(0).clone()).collect(),
        ))
    }

    /// Saturation `(I : f^∞)`: iterate the quotient until the reduced bases
    /// stabilize.
    pub fn saturate(&self, f: &Poly) -> Result<Ideal> {
        let sub = self.as_submodule().saturate(f)?;
        Ok(Ideal::new(
            &self.ring,
            sub.gens().iter().map(|v| v.comp(0).clone()).collect(),
        ))
    }

    pub fn as_submodule(&self) -> Submodule {
        Submodule::new(&self.ring, 1, self.as_elems())
    }

    /// Generators of `I ∩ k[vars[drop..]]` via a block elimination order.
    /// The kept variables must be a suffix of the declared order.
    pub fn eliminate(&self, drop: usize) -> Result<Ideal> {
        if drop == 0 {
            return Ok(self.clone());
        }
        let order = MonomialOrder::elimination(drop);
        let gb = self.groebner_with(&order)?;
        let dropped: Vec<usize> = (0..drop).collect();
        let gens = gb
            .elems()
            .iter()
            .map(|e| reorder_poly(e.comp(0), &self.ring))
            .filter(|p| p.free_of_vars(&dropped))
            .collect();
        Ok(Ideal::new(&self.ring, gens))
    }

    /// Radical membership by the Rabinowitsch trick: `f ∈ √I` iff
    /// `1 ∈ I + (1 - t·f)` in one extra variable.
    pub fn radical_membership(&self, f: &Poly) -> Result<bool> {
        let mut fresh = "t".to_string();
        let mut k = 0;
        while self.ring.vars.contains(&fresh) {
            fresh = format!("t{k}");
            k += 1;
        }
        let ext = self.ring.extended(&[&fresh], self.ring.order.clone());
        let idmap: Vec<usize> = (0..self.ring.nvars()).collect();
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.map_vars(&ext, &idmap)).collect();
        let t = ext.var(ext.nvars() - 1);
        let f_ext = f.map_vars(&ext, &idmap);
        gens.push(ext.one().sub(&t.mul(&f_ext)));
        Ideal::new(&ext, gens).is_unit()
    }
}

/// A submodule of a free module `A^rank`, with a cached position-over-term
/// reduced basis.
#[derive(Debug)]
pub struct Submodule {
    ring: Arc<Ring>,
    rank: usize,
    gens: Vec<FreeElem>,
    gb: OnceLock<Result<GroebnerBasis>>,
}

impl Clone for Submodule {
    fn clone(&self) -> Self {
        Submodule {
            ring: self.ring.clone(),
            rank: self.rank,
            gens: self.gens.clone(),
            gb: self.gb.clone(),
        }
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.rank == other.rank && self.gens == other.gens
    }
}
impl Eq for Submodule {}

impl Submodule {
    pub fn new(ring: &Arc<Ring>, rank: usize, gens: Vec<FreeElem>) -> Submodule {
        let gens: Vec<FreeElem> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert_eq!(g.rank(), rank, "generator rank mismatch");
        }
        Submodule {
            ring: ring.clone(),
            rank,
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Arc<Ring>, rank: usize) -> Submodule {
        Submodule::new(ring, rank, Vec::new())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[FreeElem] {
        &self.gens
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        self.gb
            .get_or_init(|| GroebnerBasis::compute(&self.ring, self.rank, &self.gens, &self.ring.order))
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn normal_form(&self, v: &FreeElem) -> Result<FreeElem> {
        self.groebner()?.normal_form(v)
    }

    pub fn contains(&self, v: &FreeElem) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    pub fn equals(&self, other: &Submodule) -> Result<bool> {
        Ok(self.groebner()?.elems() == other.groebner()?.elems())
    }

    /// Module quotient `(N : f) = {v : f·v ∈ N}`, through syzygies of
    /// `(f·e_1, …, f·e_s, n_1, …, n_k)`.
    pub fn quotient(&self, f: &Poly) -> Result<Submodule> {
        if f.is_zero() {
            return Err(Error::InvalidInput("quotient by zero".into()));
        }
        let s = self.rank;
        let mut columns: Vec<FreeElem> = (0..s)
            .map(|i| FreeElem::basis_scaled(&self.ring, s, i, f))
            .collect();
        columns.extend(self.gens.iter().cloned());
        let syz = syzygies(&self.ring, s, &columns)?;
        let gens = syz
            .iter()
            .map(|z| z.slice(0..s))
            .filter(|v| !v.is_zero())
            .collect();
        Ok(Submodule::new(&self.ring, s, gens))
    }

    /// `(N : f^∞)`: iterate quotients until the reduced bases agree.
    pub fn saturate(&self, f: &Poly) -> Result<Submodule> {
        let mut current = self.clone();
        for _ in 0..self.ring.caps.max_saturation_steps {
            let next = current.quotient(f)?;
            if next.groebner()?.elems() == current.groebner()?.elems() {
                return Ok(current);
            }
            current = next;
        }
        Err(Error::ResourceCap(format!(
            "saturation did not stabilize within {} steps",
            self.ring.caps.max_saturation_steps
        )))
    }

    /// The colon ideal `(N : v) = {a : a·v ∈ N}` of a single element.
    pub fn colon_ideal(&self, v: &FreeElem) -> Result<Ideal> {
        v.ensure_rank(self.rank)?;
        let mut columns = vec![v.clone()];
        columns.extend(self.gens.iter().cloned());
        let syz = syzygies(&self.ring, self.rank, &columns)?;
        let gens = syz
            .iter()
            .map(|z| z.comp(0).clone())
            .filter(|p| !p.is_zero())
            .collect();
        Ok(Ideal::new(&self.ring, gens))
    }
}

/// Generators of the syzygy module `{(a_1,…,a_r) : Σ a_i·col_i = 0}` of
/// elements of `A^rank`.
///
/// Lifted-basis construction: append tag components behind the ambient
/// block, compute a basis under position-over-term (the ambient block
/// dominates), and read off the basis elements whose ambient part vanished.
/// Completeness is the classical module-elimination theorem.
pub fn syzygies(ring: &Arc<Ring>, rank: usize, columns: &[FreeElem]) -> Result<Vec<FreeElem>> {
    let r = columns.len();
    for c in columns {
        c.ensure_rank(rank)?;
    }
    if r == 0 {
        return Ok(Vec::new());
    }
    let aug_rank = rank + r;
    let augmented: Vec<FreeElem> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| c.concat(&FreeElem::basis(ring, r, i)))
        .collect();
    let gb = GroebnerBasis::compute(ring, aug_rank, &augmented, &ring.order)?;
    let out = gb
        .elems()
        .iter()
        .filter(|e| (0..rank).all(|i| e.comp(i).is_zero()))
        .map(|e| e.slice(rank..aug_rank))
        .collect();
    Ok(out)
}

/// Syzygy check helper: `Σ a_i·col_i` evaluated exactly.
pub fn apply_syzygy(columns: &[FreeElem], coeffs: &FreeElem) -> FreeElem {
    assert_eq!(columns.len(), coeffs.rank());
    let ring = columns[0].ring().clone();
    let rank = columns[0].rank();
    let mut acc = FreeElem::zero(&ring, rank);
    for (i, col) in columns.iter().enumerate() {
        acc = acc.add(&col.scale_poly(coeffs.comp(i)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoeffField;

    fn q_ring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(CoeffField::rationals(), vars)
    }

    fn f2_ring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(CoeffField::prime(2).unwrap(), vars)
    }

    fn ideal(ring: &Arc<Ring>, gens: &[&str]) -> Ideal {
        Ideal::new(
            ring,
            gens.iter().map(|g| ring.parse_poly(g).unwrap()).collect(),
        )
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let r = f2_ring(&["x", "y", "z"]);
        let i = ideal(&r, &["y^2 - x*z^2"]);
        let gb = i.groebner().unwrap();
        assert_eq!(gb.elems().len(), 1);
        assert_eq!(gb.elems()[0].comp(0), &r.parse_poly("y^2 + x*z^2").unwrap());
        assert!(gb.self_test().unwrap());
    }

    #[test]
    fn lex_basis_from_one_spair() {
        // (x*y - 1, y^2 - 1) under lex x > y reduces to {x - y, y^2 - 1}
        let r = Ring::with_order(CoeffField::rationals(), &["x", "y"], MonomialOrder::Lex);
        let i = ideal(&r, &["x*y - 1", "y^2 - 1"]);
        let gb = i.groebner().unwrap();
        let polys: Vec<String> = gb.elems().iter().map(|e| e.comp(0).to_string()).collect();
        // elements sorted ascending by leading term: y^2 < x under lex x > y
        assert_eq!(polys, vec!["y^2 - 1".to_string(), "x - y".to_string()]);
    }

    #[test]
    fn single_generator_submodule() {
        let r = f2_ring(&["x", "y", "z"]);
        let v = FreeElem::basis_scaled(&r, 3, 0, &r.parse_poly("z^2").unwrap());
        let sub = Submodule::new(&r, 3, vec![v.clone()]);
        let gb = sub.groebner().unwrap();
        assert_eq!(gb.elems(), &[v]);
    }

    #[test]
    fn normal_form_single_division_step() {
        let r = Ring::with_order(
            CoeffField::rationals(),
            &["y", "x", "z"],
            MonomialOrder::Lex,
        );
        let i = ideal(&r, &["y^2 - x*z^2"]);
        let nf = i.normal_form(&r.parse_poly("y^2").unwrap()).unwrap();
        assert_eq!(nf, r.parse_poly("x*z^2").unwrap());
    }

    #[test]
    fn generators_reduce_to_zero() {
        let r = q_ring(&["x", "y"]);
        let i = ideal(&r, &["x^2*y - x + 1", "x*y^3 - y"]);
        for g in i.gens() {
            assert!(i.contains(g).unwrap());
        }
    }

    #[test]
    fn elimination_examples() {
        // (T^2 - x) in F_2[T, x]: nothing survives in k[x]
        let r = f2_ring(&["T", "x"]);
        let i = ideal(&r, &["T^2 - x"]);
        assert!(i.eliminate(1).unwrap().is_zero_ideal());

        // graph of the umbrella parametrization: kernel is (Y^2 - X*Z^2)
        let g = f2_ring(&["u", "z", "X", "Y", "Z"]);
        let graph = ideal(&g, &["X - u^2", "Y - u*z", "Z - z"]);
        let ker = graph.eliminate(2).unwrap();
        assert_eq!(ker.gens().len(), 1);
        assert_eq!(ker.gens()[0], g.parse_poly("Y^2 + X*Z^2").unwrap());

        // (x - y) has no pure-y member
        let r2 = q_ring(&["x", "y"]);
        assert!(ideal(&r2, &["x - y"]).eliminate(1).unwrap().is_zero_ideal());
    }

    #[test]
    fn quotient_examples() {
        let r = q_ring(&["x", "y"]);
        // ((x) : x) = (1)
        let q = ideal(&r, &["x"]).quotient(&r.parse_poly("x").unwrap()).unwrap();
        assert!(q.is_unit().unwrap());

        // x is a nonzerodivisor mod (u^2 + x^2*u): the quotient is unchanged
        let s = f2_ring(&["x", "z1", "u"]);
        let i = ideal(&s, &["u^2 + x^2*u"]);
        let q2 = i.quotient(&s.parse_poly("x").unwrap()).unwrap();
        assert!(q2.equals(&i).unwrap());
    }

    #[test]
    fn saturation_examples() {
        let r = q_ring(&["x", "y"]);
        // ((x*y) : y^∞) = (x)
        let sat = ideal(&r, &["x*y"]).saturate(&r.parse_poly("y").unwrap()).unwrap();
        assert!(sat.equals(&ideal(&r, &["x"])).unwrap());

        // ((u^p) : u^∞) = (1)
        let s = Ring::new(CoeffField::prime(3).unwrap(), &["z1", "u"]);
        let i = Ideal::new(&s, vec![s.parse_poly("u^3").unwrap()]);
        assert!(i.saturate(&s.parse_poly("u").unwrap()).unwrap().is_unit().unwrap());
    }

    #[test]
    fn radical_membership_examples() {
        let r = q_ring(&["u"]);
        let i = ideal(&r, &["u^3"]);
        assert!(i.radical_membership(&r.parse_poly("u").unwrap()).unwrap());

        let r2 = q_ring(&["x", "y"]);
        let i2 = ideal(&r2, &["x^2", "x*y"]);
        assert!(i2.radical_membership(&r2.parse_poly("x").unwrap()).unwrap());
        let i3 = ideal(&r2, &["x"]);
        assert!(!i3.radical_membership(&r2.parse_poly("y").unwrap()).unwrap());
    }

    #[test]
    fn koszul_syzygy() {
        let r = q_ring(&["x", "y"]);
        let cols = vec![
            FreeElem::new(vec![r.parse_poly("x").unwrap()]),
            FreeElem::new(vec![r.parse_poly("y").unwrap()]),
        ];
        let syz = syzygies(&r, 1, &cols).unwrap();
        assert_eq!(syz.len(), 1);
        // span{(y, -x)} up to sign and scaling
        let z = &syz[0];
        assert!(apply_syzygy(&cols, z).is_zero());
        let expected = FreeElem::new(vec![r.parse_poly("y").unwrap(), r.parse_poly("-x").unwrap()]);
        let m = Submodule::new(&r, 2, vec![expected]);
        assert!(m.contains(z).unwrap());
    }

    #[test]
    fn duplicate_column_syzygy() {
        let r = q_ring(&["x"]);
        let f = FreeElem::new(vec![r.parse_poly("x^2 + 1").unwrap()]);
        let syz = syzygies(&r, 1, &[f.clone(), f.clone()]).unwrap();
        let m = Submodule::new(
            &r,
            2,
            vec![FreeElem::new(vec![r.one(), r.constant_int(-1)])],
        );
        assert_eq!(syz.len(), 1);
        assert!(m.contains(&syz[0]).unwrap());
    }

    #[test]
    fn basis_is_idempotent_and_deterministic() {
        let r = q_ring(&["x", "y", "z"]);
        let i = ideal(&r, &["x^2 + y", "y^2 + z", "x*z - y"]);
        let gb1 = i.groebner().unwrap();
        let regen = Ideal::new(&r, gb1.polys());
        let gb2 = regen.groebner().unwrap();
        assert_eq!(gb1.elems(), gb2.elems());

        let again = ideal(&r, &["x^2 + y", "y^2 + z", "x*z - y"]);
        assert_eq!(again.groebner().unwrap().elems(), gb1.elems());
    }

    #[test]
    fn resource_cap_fires() {
        let mut ring = (*q_ring(&["x", "y"])).clone();
        ring.caps.max_degree = 3;
        let r = Arc::new(ring);
        let i = Ideal::new(
            &r,
            vec![
                r.parse_poly("x^4 + y").unwrap(),
                r.parse_poly("x*y^4 - x").unwrap(),
            ],
        );
        assert!(matches!(i.groebner(), Err(Error::ResourceCap(_))));
    }
}
