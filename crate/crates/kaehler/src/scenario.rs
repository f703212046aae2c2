//! End-to-end verification scenarios with structured reports.
//!
//! Each scenario reconstructs one worked computation — a torsion form on
//! the Whitney umbrella, descent failures along wild covers, the embedded
//! point of a non-reduced line — runs its checks through the engine, and
//! emits a [`Report`]. Reports are deterministic given the parameters
//! (timing excluded) and every check carries the anchor it verifies.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::{tensor_product, AlgebraMorphism, FPAlgebra};
use crate::descent::{
    build_cech, exactness_witness, CoverDiagram, CoverKind, ImageVerdict, ProductNode,
};
use crate::error::{Error, Result};
use crate::field::CoeffField;
use crate::freemod::FreeElem;
use crate::gb;
use crate::omega::{
    is_torsion, omega_presentation, pullback, semilinear_image_membership,
    semilinear_injectivity, torsion_submodule, FPModule, Injectivity, Membership,
    MembershipMethod,
};
use crate::poly::{Poly, Ring};

/// Status of one check or of a whole report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

/// One named check: what was verified, how it went, the witness text, and
/// the anchor it reproduces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub anchor: String,
    pub id: String,
    pub status: Status,
    pub witness: String,
}

/// A complete scenario run. Field order is alphabetical so the serialized
/// form has sorted keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub params: BTreeMap<String, u64>,
    pub scenario: String,
    pub stats: BTreeMap<String, u64>,
    pub status: Status,
    pub version: u32,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Scenario parameters. Unset values take scenario-specific defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct Params {
    pub p: Option<u32>,
    pub n: Option<u32>,
}

/// Registry entry: name, parameter ranges, and the anchors it exercises.
#[derive(Debug, Clone)]
pub struct ScenarioInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub anchors: &'static [&'static str],
    pub summary: &'static str,
}

/// The complete scenario registry.
pub fn list_scenarios() -> Vec<ScenarioInfo> {
    vec![
        ScenarioInfo {
            name: "whitney_torsion",
            params: "p = 2 (fixed)",
            anchors: &["Example 3.6", "Summary 3.7"],
            summary: "dx is torsion on the Whitney umbrella in characteristic two, \
                      and its pull-back to the singular axis is not",
        },
        ScenarioInfo {
            name: "whitney_cdh",
            params: "p = 2 (fixed)",
            anchors: &["Example 5.15", "Theorem 5.8", "Corollary 5.16", "Corollary 5.17"],
            summary: "the blow-up kills the torsion form, and the descent kernel of the \
                      blow-up cover carries a nonzero section vanishing on the resolution",
        },
        ScenarioInfo {
            name: "h_vanishing",
            params: "p in {2,3,5,7}; m via --n, a multiple of p (default m = p)",
            anchors: &["Lemma 6.1"],
            summary: "adjoining an m-th root with p | m kills da on the cover",
        },
        ScenarioInfo {
            name: "sdh_failure",
            params: "p in {2,3,5}; n in 1..=4",
            anchors: &["Example 6.5", "Proposition 6.6", "Eq. (6.7.2)", "Example 6.3"],
            summary: "0 ⊕ dy is a Čech cocycle for the wild cover plus its exceptional \
                      set, but certifiably not a coboundary",
        },
        ScenarioInfo {
            name: "salt_failure",
            params: "p in {2,3}; n in 2..=4",
            anchors: &["Lemma 6.12", "B.0.4", "Example 6.10.3"],
            summary: "x^{-1}dy lies in the intersection of the integral forms with the \
                      function-field forms of the base, but no integral form maps to it",
        },
        ScenarioInfo {
            name: "warning_2_4",
            params: "p prime <= 7 (default 2)",
            anchors: &["Warning 2.4", "Definition 2.3"],
            summary: "a torsion section of the structure sheaf on a line with an embedded \
                      point pulls back to a non-torsion section on the point",
        },
        ScenarioInfo {
            name: "hyperplane_criterion",
            params: "p = 2 (fixed)",
            anchors: &["Lemma A.5"],
            summary: "the torsion of the umbrella restricts injectively to the cuspidal \
                      hyperplane section x = z",
        },
    ]
}

/// Run a registered scenario. Unknown names and out-of-range parameters are
/// rejected before any computation starts.
pub fn run_scenario(name: &str, params: Params) -> Result<Report> {
    let start = Instant::now();
    gb::reset_stats();
    let (checks, used): (Vec<Check>, BTreeMap<String, u64>) = match name {
        "whitney_torsion" => whitney_torsion(params)?,
        "whitney_cdh" => whitney_cdh(params)?,
        "h_vanishing" => h_vanishing(params)?,
        "sdh_failure" => sdh_failure(params)?,
        "salt_failure" => salt_failure(params)?,
        "warning_2_4" => warning_2_4(params)?,
        "hyperplane_criterion" => hyperplane_criterion_scenario(params)?,
        _ => return Err(Error::UnknownScenario(name.to_string())),
    };
    let engine = gb::snapshot_stats();
    let mut stats = BTreeMap::new();
    stats.insert("basis_runs".to_string(), engine.basis_runs);
    stats.insert("spairs".to_string(), engine.spairs);
    stats.insert("reductions".to_string(), engine.reductions);
    stats.insert("max_basis_len".to_string(), engine.max_basis_len);
    stats.insert(
        "elapsed_ms".to_string(),
        start.elapsed().as_millis() as u64,
    );
    let status = if checks.iter().all(|c| c.status == Status::Pass) {
        Status::Pass
    } else if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Unknown
    };
    Ok(Report {
        checks,
        params: used,
        scenario: name.to_string(),
        stats,
        status,
        version: 1,
    })
}

fn prime_param(params: Params, allowed: &[u32], default: u32) -> Result<u32> {
    let p = params.p.unwrap_or(default);
    CoeffField::prime(p).map_err(|_| Error::ParamOutOfRange(format!("{p} is not prime")))?;
    if !allowed.contains(&p) {
        return Err(Error::ParamOutOfRange(format!(
            "p = {p} not in {allowed:?}"
        )));
    }
    Ok(p)
}

struct Checks(Vec<Check>);

impl Checks {
    fn new() -> Checks {
        Checks(Vec::new())
    }

    fn record(&mut self, id: &str, anchor: &str, ok: bool, witness: String) {
        self.0.push(Check {
            anchor: anchor.to_string(),
            id: id.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
        });
    }

    fn note(&mut self, id: &str, anchor: &str, witness: String) {
        self.0.push(Check {
            anchor: anchor.to_string(),
            id: id.to_string(),
            status: Status::Pass,
            witness,
        });
    }
}

/// `witness * generator = 0`, printed with labels.
fn witness_equation(module: &FPModule, witness: &Poly, elem: &FreeElem) -> String {
    let shown = module.show(elem);
    if shown.contains(' ') || shown.contains('*') {
        format!("{witness} * ({shown}) = 0")
    } else {
        format!("{witness} * {shown} = 0")
    }
}

// ---------------------------------------------------------------------------
// shared constructions

/// The Whitney umbrella coordinate ring over `F_2`, domain asserted.
fn whitney_algebra() -> Result<Arc<FPAlgebra>> {
    let r = Ring::new(CoeffField::prime(2)?, &["x", "y", "z"]);
    Ok(
        FPAlgebra::new(&r, vec![r.parse_poly("y^2 - x*z^2")?]).assert_domain(
            "y^2 - x*z^2 is irreducible; the umbrella is reduced and irreducible",
        ),
    )
}

/// The inclusion of the singular axis: `Q(x,y,z) -> Q(x,0,0)`.
fn whitney_axis_map(w: &Arc<FPAlgebra>) -> Result<(Arc<FPAlgebra>, AlgebraMorphism)> {
    let xr = Ring::new(w.ring().field.clone(), &["x"]);
    let axis = FPAlgebra::free(&xr).assert_domain("polynomial ring in one variable");
    let f = AlgebraMorphism::verified(w, &axis, vec![xr.var(0), xr.zero(), xr.zero()])?;
    Ok((axis, f))
}

/// The desingularisation `x -> u^2, y -> u z, z -> z` of the umbrella.
fn whitney_resolution(w: &Arc<FPAlgebra>) -> Result<(Arc<FPAlgebra>, AlgebraMorphism)> {
    let s = Ring::new(w.ring().field.clone(), &["u", "z"]);
    let blowup = FPAlgebra::free(&s).assert_domain("polynomial ring in two variables");
    let pi = AlgebraMorphism::verified(
        w,
        &blowup,
        vec![s.parse_poly("u^2")?, s.parse_poly("u*z")?, s.parse_poly("z")?],
    )?;
    Ok((blowup, pi))
}

/// The degree-`p` cover `k[x,y] -> k[x,z]`, `y -> z^p + z x^n`: finite,
/// generically étale, wildly ramified over `x = 0`.
fn wild_cover(p: u32, n: u32) -> Result<(Arc<FPAlgebra>, Arc<FPAlgebra>, AlgebraMorphism)> {
    let f = CoeffField::prime(p)?;
    let base = FPAlgebra::free(&Ring::new(f.clone(), &["x", "y"]))
        .assert_domain("polynomial ring in two variables");
    let tring = Ring::new(f, &["x", "z"]);
    let total = FPAlgebra::free(&tring).assert_domain("polynomial ring in two variables");
    let pi = AlgebraMorphism::verified(
        &base,
        &total,
        vec![
            tring.parse_poly("x")?,
            tring.parse_poly(&format!("z^{p} + z*x^{n}"))?,
        ],
    )?;
    Ok((base, total, pi))
}

// ---------------------------------------------------------------------------
// scenarios

fn whitney_torsion(params: Params) -> Result<(Vec<Check>, BTreeMap<String, u64>)> {
    let p = prime_param(params, &[2], 2)?;
    let mut used = BTreeMap::new();
    used.insert("p".to_string(), p as u64);

    let w = whitney_algebra()?;
    let m = omega_presentation(&w, 1)?;
    let tor = torsion_submodule(&m)?;
    let mut checks = Checks::new();

    let dx = m.basis_elem(0);
    let gen_ok = tor.generators.len() == 1
        && tor.generators[0].elem == dx
        && tor.generators[0].witness == w.ring().parse_poly("z^2")?;
    let witness = if gen_ok {
        witness_equation(&m, &tor.generators[0].witness, &tor.generators[0].elem)
    } else {
        format!(
            "unexpected torsion generators: {:?}",
            tor.generators
                .iter()
                .map(|g| m.show(&g.elem))
                .collect::<Vec<_>>()
        )
    };
    checks.record("torsion_generated_by_dx", "Example 3.6", gen_ok, witness);

    let eq_ok = m.is_zero_elem(&dx.scale_poly(&w.ring().parse_poly("z^2")?))?;
    checks.record(
        "annihilator_equation_exact",
        "Example 3.6",
        eq_ok,
        "z^2 * dx reduces to 0 against the relation d(y^2 - x*z^2) = z^2 dx".to_string(),
    );
    checks.note(
        "dense_open_localizer",
        "Definition 2.3",
        "localizing element z: z is a nonzerodivisor on the umbrella, so D(z) is dense"
            .to_string(),
    );

    let quo_ok = tor.rank == 2
        && tor.quotient.is_zero_elem(&dx)?
        && is_torsion(&tor.quotient, &m.basis_elem(1))?.is_none()
        && is_torsion(&tor.quotient, &m.basis_elem(2))?.is_none()
        && torsion_submodule(&tor.quotient)?.is_torsion_free();
    checks.record(
        "quotient_free_of_rank_2",
        "Example 3.6",
        quo_ok,
        "Ω^1 mod torsion is free on dy, dz".to_string(),
    );

    let (axis, f) = whitney_axis_map(&w)?;
    let df = pullback(&f, 1)?;
    let image = df.apply(&dx)?;
    let axis_omega = omega_presentation(&axis, 1)?;
    let image_is_dx = image == axis_omega.basis_elem(0);
    let not_torsion = is_torsion(&axis_omega, &image)?.is_none();
    checks.record(
        "pullback_of_torsion_form_not_torsion",
        "Example 3.6",
        image_is_dx && not_torsion,
        format!(
            "df(dx) = {} in Ω^1 of the axis; is_torsion returns absent",
            axis_omega.show(&image)
        ),
    );

    Ok((checks.0, used))
}

fn whitney_cdh(params: Params) -> Result<(Vec<Check>, BTreeMap<String, u64>)> {
    let p = prime_param(params, &[2], 2)?;
    let mut used = BTreeMap::new();
    used.insert("p".to_string(), p as u64);

    let w = whitney_algebra()?;
    let (blowup, pi) = whitney_resolution(&w)?;
    let (_axis, f) = whitney_axis_map(&w)?;
    let mut checks = Checks::new();

    checks.record(
        "resolution_well_defined",
        "Example 5.15",
        pi.is_verified(),
        "x -> u^2, y -> u*z, z -> z sends y^2 - x*z^2 to (u*z)^2 - u^2*z^2 = 0".to_string(),
    );

    let dpi = pullback(&pi, 1)?;
    let m = omega_presentation(&w, 1)?;
    let killed = dpi.apply(&m.basis_elem(0))?.is_zero();
    checks.record(
        "blowup_kills_torsion_form",
        "Theorem 5.8",
        killed,
        "dπ(dx) = d(u^2) = 0 in Ω^1 of the blow-up plane".to_string(),
    );

    // E = blow-up ×_Y axis, built explicitly as a tensor product
    let t = tensor_product(&pi, &f)?;
    let node = ProductNode {
        algebra: t.algebra.clone(),
        first: t.left.clone(),
        second: t.right.clone(),
    };
    let mut products = BTreeMap::new();
    products.insert((0usize, 1usize), node);
    let diagram = CoverDiagram::new(&w, vec![pi.clone(), f.clone()], products, CoverKind::CdpOpen)?;
    let pair = build_cech(&diagram, 1)?;

    let exceptional_ok =
        t.algebra.ring().vars == vec!["u".to_string()] && t.algebra.ideal().is_zero_ideal();
    checks.record(
        "exceptional_curve_presentation",
        "Example 5.15",
        exceptional_ok,
        format!(
            "blow-up ×_Y axis = {}; arrows z -> 0 and x -> u^2",
            t.algebra
        ),
    );

    let mut tuple = pair.middle_zero();
    tuple[1] = pair.piece_module(1).basis_elem(0);
    let beta = pair.apply_beta(&tuple)?;
    let beta_zero = beta.iter().all(|(_, v)| v.is_zero());
    checks.record(
        "beta_kills_axis_form",
        "Example 5.15",
        beta_zero,
        "β(0 ⊕ dx) = 0 since dx restricts to d(u^2) = 0 on the exceptional curve".to_string(),
    );

    let verdict = exactness_witness(&pair, &tuple)?;
    let kernel_ok = verdict.in_kernel && tuple[0].is_zero() && !tuple[1].is_zero();
    checks.record(
        "kernel_element_vanishes_on_resolution",
        "Corollary 5.16",
        kernel_ok,
        format!(
            "0 ⊕ dx lies in ker β, is nonzero, and has zero component on the blow-up: \
             a torsion section of the descent kernel ({})",
            pair.show_tuple(&tuple)
        ),
    );

    let axis_omega = pair.piece_module(1);
    let restriction_not_torsion = is_torsion(axis_omega, &tuple[1])?.is_none();
    checks.record(
        "restriction_to_axis_not_torsion",
        "Corollary 5.17",
        restriction_not_torsion,
        "the kernel element restricts to dx on the axis, which is not torsion there"
            .to_string(),
    );

    checks.note(
        "kernel_identification_assumption",
        "Example 5.15",
        "identifying the descent sections with ker β uses exactness of the cover sequence \
         for this blow-up square, which is imported, not recomputed here"
            .to_string(),
    );

    let _ = blowup;
    Ok((checks.0, used))
}

fn h_vanishing(params: Params) -> Result<(Vec<Check>, BTreeMap<String, u64>)> {
    let p = prime_param(params, &[2, 3, 5, 7], 2)?;
    let m_exp = params.n.unwrap_or(p);
    if m_exp == 0 || m_exp % p != 0 || m_exp > 64 {
        return Err(Error::ParamOutOfRange(format!(
            "m = {m_exp} must be a positive multiple of p = {p}, at most 64"
        )));
    }
    let mut used = BTreeMap::new();
    used.insert("p".to_string(), p as u64);
    used.insert("m".to_string(), m_exp as u64);

    let f = CoeffField::prime(p)?;
    let a = FPAlgebra::free(&Ring::new(f.clone(), &["x"]));
    let bring = Ring::new(f, &["x", "T"]);
    let b = FPAlgebra::new(&bring, vec![bring.parse_poly(&format!("T^{m_exp} - x"))?]);
    let phi = AlgebraMorphism::verified(&a, &b, vec![bring.var(0)])?;

    let mut checks = Checks::new();
    checks.record(
        "root_cover_well_defined",
        "Lemma 6.1",
        phi.is_verified(),
        format!("A[T]/(T^{m_exp} - x) receives A"),
    );

    let d = pullback(&phi, 1)?;
    let img = d.apply(&d.source().basis_elem(0))?;
    checks.record(
        "da_dies_on_cover",
        "Lemma 6.1",
        img.is_zero(),
        format!(
            "dx = d(T^{m_exp}) = {m_exp}·T^{}·dT = 0 since {p} divides {m_exp}",
            m_exp - 1
        ),
    );
    Ok((checks.0, used))
}

fn sdh_failure(params: Params) -> Result<(Vec<Check>, BTreeMap<String, u64>)> {
    let p = prime_param(params, &[2, 3, 5], 2)?;
    let n = params.n.unwrap_or(1);
    if !(1..=4).contains(&n) {
        return Err(Error::ParamOutOfRange(format!("n = {n} not in 1..=4")));
    }
    let mut used = BTreeMap::new();
    used.insert("p".to_string(), p as u64);
    used.insert("n".to_string(), n as u64);

    let (base, total, pi) = wild_cover(p, n)?;
    let mut checks = Checks::new();

    // Z = V(x) in the base
    let (z_alg, z_quot) = base.quotient_by_ideal(&[base.ring().parse_poly("x")?])?;
    let z_alg = z_alg.assert_domain("coordinate line x = 0");
    let z_incl = AlgebraMorphism::verified(&base, &z_alg, z_quot.images().to_vec())?;

    // the exceptional fibre in its three-variable presentation reduces to a line
    let three = {
        let r = Ring::new(CoeffField::prime(p)?, &["x", "y", "z"]);
        FPAlgebra::new(
            &r,
            vec![
                r.parse_poly(&format!("z^{p} + z*x^{n} - y"))?,
                r.parse_poly("x")?,
            ],
        )
    };
    let line = {
        let r = Ring::new(CoeffField::prime(p)?, &["z"]);
        FPAlgebra::free(&r).assert_domain("polynomial ring in one variable")
    };
    let fwd = AlgebraMorphism::verified(
        &three,
        &line,
        vec![
            line.ring().zero(),
            line.ring().parse_poly(&format!("z^{p}"))?,
            line.ring().var(0),
        ],
    )?;
    let back = AlgebraMorphism::verified(&line, &three, vec![three.ring().var(2)])?;
    let iso_ok = back.compose(&fwd)?.equal_to(&AlgebraMorphism::identity(&line))?
        && fwd.compose(&back)?.equal_to(&AlgebraMorphism::identity(&three))?;
    checks.record(
        "exceptional_fibre_presentation",
        "Eq. (6.7.2)",
        iso_ok,
        format!(
            "{} ≅ {} by mutually inverse morphisms",
            three, line
        ),
    );

    // fibre products, built explicitly
    let t00 = tensor_product(&pi, &pi)?;
    let t01 = tensor_product(&pi, &z_incl)?;
    let t10 = tensor_product(&z_incl, &pi)?;
    let t11 = tensor_product(&z_incl, &z_incl)?;

    let t01_is_line =
        t01.algebra.ring().vars == vec!["z".to_string()] && t01.algebra.ideal().is_zero_ideal();
    checks.record(
        "mixed_product_is_the_line",
        "Eq. (6.7.2)",
        t01_is_line,
        format!("cover ×_base V(x) = {}", t01.algebra),
    );

    let mut products = BTreeMap::new();
    for (key, t) in [
        ((0usize, 0usize), &t00),
        ((0, 1), &t01),
        ((1, 0), &t10),
        ((1, 1), &t11),
    ] {
        products.insert(
            key,
            ProductNode {
                algebra: t.algebra.clone(),
                first: t.left.clone(),
                second: t.right.clone(),
            },
        );
    }
    let diagram = CoverDiagram::new(
        &base,
        vec![pi.clone(), z_incl.clone()],
        products,
        CoverKind::Sdh,
    )?;
    let pair = build_cech(&diagram, 1)?;
    checks.record(
        "cover_diagram_valid",
        "Example 6.3",
        true,
        "all four fibre-product nodes verified; base composites agree".to_string(),
    );

    // the candidate 0 ⊕ dy
    let mut tuple = pair.middle_zero();
    let dy = pair
        .piece_module(1)
        .gen_named("dy")
        .expect("dy generator exists");
    tuple[1] = dy;
    let beta = pair.apply_beta(&tuple)?;
    let beta_zero = beta.len() == 4 && beta.iter().all(|(_, v)| v.is_zero());
    checks.record(
        "beta_of_dy_vanishes",
        "Proposition 6.6",
        beta_zero,
        format!(
            "β(0 ⊕ dy) = ({}) — all four components reduce to zero",
            beta
                .iter()
                .map(|(_, v)| if v.is_zero() { "0" } else { "≠0" })
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );

    let verdict = exactness_witness(&pair, &tuple)?;
    let (image_ok, proof) = match &verdict.in_image {
        ImageVerdict::NonMember { proof } => (true, proof.clone()),
        other => (false, format!("expected non-member, got {}", other.status())),
    };
    checks.record(
        "cocycle_is_not_a_coboundary",
        "Proposition 6.6",
        verdict.in_kernel && image_ok,
        proof,
    );

    let dpi = pullback(&pi, 1)?;
    let inj = semilinear_injectivity(&dpi)?;
    let (inj_ok, inj_witness) = match inj {
        Injectivity::Injective(cert) => (
            cert.minor == total.ring().parse_poly(&format!("x^{n}"))?,
            format!(
                "kernel of the cover morphism is zero; maximal minor {} ≠ 0",
                cert.minor
            ),
        ),
        other => (false, format!("{other:?}")),
    };
    checks.record(
        "restriction_map_injective",
        "Example 6.5",
        inj_ok,
        inj_witness,
    );

    Ok((checks.0, used))
}

fn salt_failure(params: Params) -> Result<(Vec<Check>, BTreeMap<String, u64>)> {
    let p = prime_param(params, &[2, 3], 2)?;
    let n = params.n.unwrap_or(2);
    if !(2..=4).contains(&n) {
        return Err(Error::ParamOutOfRange(format!(
            "n = {n} not in 2..=4 (the witness form needs n ≥ 2)"
        )));
    }
    let mut used = BTreeMap::new();
    used.insert("p".to_string(), p as u64);
    used.insert("n".to_string(), n as u64);

    let (_base, total, pi) = wild_cover(p, n)?;
    let tring = total.ring();
    let mut checks = Checks::new();

    // ω = n z x^{n-2} dx + x^{n-1} dz satisfies x·ω = dπ(dy) exactly
    let dpi = pullback(&pi, 1)?;
    let omega_form = FreeElem::new(vec![
        tring.parse_poly(&format!("{n}*z*x^{}", n - 2))?,
        tring.parse_poly(&format!("x^{}", n - 1))?,
    ]);
    let x = tring.parse_poly("x")?;
    let dy_img = dpi.apply(&dpi.source().basis_elem(1))?;
    let identity_ok = omega_form.scale_poly(&x) == dy_img;
    checks.record(
        "x_times_witness_is_dpi_dy",
        "Lemma 6.12",
        identity_ok,
        format!(
            "x·({}) = {} = dπ(dy), exactly",
            dpi.target().show(&omega_form),
            dpi.target().show(&dy_img)
        ),
    );

    let membership = semilinear_image_membership(&dpi, &omega_form, MembershipMethod::Triangular)?;
    let (non_member_ok, proof) = match membership {
        Membership::NonMember { proof } => (proof.contains(&format!("x^{n}")), proof),
        other => (false, format!("{other:?}")),
    };
    checks.record(
        "witness_form_has_no_preimage",
        "Lemma 6.12",
        non_member_ok,
        proof,
    );

    // the fibre product matches the u-substitution presentation
    let t = tensor_product(&pi, &pi)?;
    let w_ring = Ring::new(CoeffField::prime(p)?, &["x", "z_1", "u"]);
    let w_alg = FPAlgebra::new(&w_ring, vec![w_ring.parse_poly(&format!("u^{p} + x^{n}*u"))?]);
    let fwd = AlgebraMorphism::verified(
        &t.algebra,
        &w_alg,
        vec![
            w_ring.var(0),
            w_ring.var(1),
            w_ring.parse_poly("z_1 + u")?,
        ],
    )?;
    let back = AlgebraMorphism::verified(
        &w_alg,
        &t.algebra,
        vec![
            t.algebra.ring().var(0),
            t.algebra.ring().var(1),
            t.algebra.ring().parse_poly("z_2 - z_1")?,
        ],
    )?;
    let iso_ok = fwd.compose(&back)?.equal_to(&AlgebraMorphism::identity(&t.algebra))?
        && back.compose(&fwd)?.equal_to(&AlgebraMorphism::identity(&w_alg))?;
    checks.record(
        "fibre_product_u_substitution",
        "B.0.4",
        iso_ok,
        format!(
            "{} ≅ {} via u = z_2 - z_1",
            t.algebra, w_alg
        ),
    );

    // reduced structure of the doubled exceptional fibre
    let f = CoeffField::prime(p)?;
    let ybase = FPAlgebra::free(&Ring::new(f.clone(), &["y"]));
    let zline_ring = Ring::new(f, &["z"]);
    let zline = FPAlgebra::free(&zline_ring);
    let frob = AlgebraMorphism::verified(&ybase, &zline, vec![zline_ring.parse_poly(&format!("z^{p}"))?])?;
    let g = tensor_product(&frob, &frob)?;
    let candidate = g.algebra.ring().parse_poly("z_2 - z_1")?;
    let reduced = g.algebra.reduced_candidate_verify(
        &[candidate.clone()],
        "the reduced locus is a line: (z_2 - z_1)^p spans the defining ideal",
    );
    let (reduced_ok, reduced_note) = match &reduced {
        Ok(q) => (true, format!("{} mod (z_2 - z_1) = {}", g.algebra, q)),
        Err(e) => (false, e.to_string()),
    };
    checks.record(
        "reduced_candidate_passes",
        "Lemma 6.12",
        reduced_ok,
        reduced_note,
    );

    let projections_agree = match &reduced {
        Ok(q) => {
            let z1 = g.left.images()[0].clone();
            let z2 = g.right.images()[0].clone();
            let to_q = AlgebraMorphism::verified(
                &g.algebra,
                q,
                (0..g.algebra.ring().nvars())
                    .map(|i| q.ring().var(i))
                    .collect(),
            )?;
            to_q.apply(&z1)? == to_q.apply(&z2)?
        }
        Err(_) => false,
    };
    checks.record(
        "projections_agree_after_reduction",
        "Lemma 6.12",
        projections_agree,
        "both projections send the coordinate to the same class mod (z_2 - z_1)".to_string(),
    );

    let (nzd, _) = w_alg.nonzerodivisor_check(&w_ring.parse_poly("x")?)?;
    checks.record(
        "x_nonzerodivisor_in_fibre_product",
        "Example 6.10.3",
        nzd,
        format!("(ideal : x) = ideal in {w_alg}"),
    );

    let _ = total;
    Ok((checks.0, used))
}

fn warning_2_4(params: Params) -> Result<(Vec<Check>, BTreeMap<String, u64>)> {
    let p = prime_param(params, &[2, 3, 5, 7], 2)?;
    let mut used = BTreeMap::new();
    used.insert("p".to_string(), p as u64);

    let f = CoeffField::prime(p)?;
    let ring = Ring::new(f.clone(), &["x", "y"]);
    let a = FPAlgebra::new(
        &ring,
        vec![ring.parse_poly("x^2")?, ring.parse_poly("x*y")?],
    );
    let mut checks = Checks::new();

    let x = ring.var(0);
    let y = ring.var(1);
    let xy_zero = a.is_zero(&x.mul(&y))?;
    let x_nonzero = !a.is_zero(&x)?;
    checks.record(
        "section_is_torsion_over_dense_open",
        "Warning 2.4",
        xy_zero && x_nonzero,
        "y · x = 0 while x ≠ 0: the section x vanishes on D(y), which is dense in the \
         one-dimensional component"
            .to_string(),
    );
    checks.note(
        "dense_open_localizer",
        "Definition 2.3",
        "localizing element y: V(y) meets only the embedded point, so D(y) is dense"
            .to_string(),
    );

    let tring = Ring::new(f, &["x"]);
    let target = FPAlgebra::new(&tring, vec![tring.parse_poly("x^2")?]);
    let phi = AlgebraMorphism::verified(&a, &target, vec![tring.var(0), tring.zero()])?;
    let image = phi.apply(&x)?;
    checks.record(
        "pullback_section_nonzero",
        "Warning 2.4",
        !image.is_zero(),
        format!("x restricts to {image} ≠ 0 in k[x]/(x^2)"),
    );

    let nilpotent = target.ideal().radical_membership(&tring.var(0))?;
    checks.record(
        "target_is_one_point",
        "Warning 2.4",
        nilpotent,
        "x is nilpotent (radical membership), so the target has a single point and its \
         only dense open is everything; a nonzero section cannot be torsion"
            .to_string(),
    );

    checks.note(
        "presentation_correction_note",
        "Warning 2.4",
        "the printed ideal (x^2, y) collapses the source to the target and makes the \
         claim vacuous; this check uses (x^2, x*y), the line with an embedded point"
            .to_string(),
    );

    Ok((checks.0, used))
}

fn hyperplane_criterion_scenario(params: Params) -> Result<(Vec<Check>, BTreeMap<String, u64>)> {
    let p = prime_param(params, &[2], 2)?;
    let mut used = BTreeMap::new();
    used.insert("p".to_string(), p as u64);

    let w = whitney_algebra()?;
    let m = omega_presentation(&w, 1)?;
    let tor = torsion_submodule(&m)?;
    let mut checks = Checks::new();

    checks.record(
        "torsion_computed",
        "Example 3.6",
        tor.generators.len() == 1,
        format!(
            "tor Ω^1 generated by {} with witness {}",
            m.show(&tor.generators[0].elem),
            tor.generators[0].witness
        ),
    );

    let h = w.ring().parse_poly("x - z")?;
    let verdict = crate::omega::hyperplane_criterion(
        &w,
        &h,
        &tor,
        Some("hyperplane section x = z is the cuspidal cubic y^2 = z^3, irreducible and reduced"),
    )?;
    checks.record(
        "torsion_restricts_injectively",
        "Lemma A.5",
        verdict.pass,
        verdict.details.join("; "),
    );

    // the section is the characteristic-two cusp
    let cr = Ring::new(CoeffField::prime(p)?, &["y", "z"]);
    let cusp = FPAlgebra::new(&cr, vec![cr.parse_poly("y^2 - z^3")?]);
    let fwd = AlgebraMorphism::verified(
        &verdict.hyperplane_algebra,
        &cusp,
        vec![cr.var(1), cr.var(0), cr.var(1)],
    )?;
    let back = AlgebraMorphism::verified(
        &cusp,
        &verdict.hyperplane_algebra,
        vec![
            verdict.hyperplane_algebra.ring().var(1),
            verdict.hyperplane_algebra.ring().var(2),
        ],
    )?;
    let iso_ok = fwd
        .compose(&back)?
        .equal_to(&AlgebraMorphism::identity(&verdict.hyperplane_algebra))?
        && back.compose(&fwd)?.equal_to(&AlgebraMorphism::identity(&cusp))?;
    checks.record(
        "section_is_the_cusp",
        "Lemma A.5",
        iso_ok,
        format!("{} ≅ {}", verdict.hyperplane_algebra, cusp),
    );

    Ok((checks.0, used))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lists_seven_scenarios() {
        let list = list_scenarios();
        assert_eq!(list.len(), 7);
        for info in &list {
            assert!(!info.anchors.is_empty());
        }
        assert!(list.iter().any(|i| i.anchors.contains(&"Example 3.6")));
        assert!(list.iter().any(|i| i.anchors.contains(&"Lemma 6.12")));
    }

    #[test]
    fn whitney_torsion_passes() {
        let report = run_scenario("whitney_torsion", Params::default()).unwrap();
        assert!(report.passed(), "{report:#?}");
        assert_eq!(report.checks[0].witness, "z^2 * dx = 0");
    }

    #[test]
    fn sdh_failure_passes_at_small_params() {
        let report = run_scenario(
            "sdh_failure",
            Params {
                p: Some(2),
                n: Some(1),
            },
        )
        .unwrap();
        assert!(report.passed(), "{report:#?}");
    }

    #[test]
    fn unknown_scenario_and_bad_params() {
        assert!(matches!(
            run_scenario("nosuch", Params::default()),
            Err(Error::UnknownScenario(_))
        ));
        assert!(matches!(
            run_scenario(
                "sdh_failure",
                Params {
                    p: Some(4),
                    n: Some(1)
                }
            ),
            Err(Error::ParamOutOfRange(_))
        ));
        assert!(matches!(
            run_scenario(
                "salt_failure",
                Params {
                    p: Some(2),
                    n: Some(1)
                }
            ),
            Err(Error::ParamOutOfRange(_))
        ));
    }

    #[test]
    fn reports_are_deterministic_up_to_timing() {
        let mut a = run_scenario("whitney_torsion", Params::default()).unwrap();
        let mut b = run_scenario("whitney_torsion", Params::default()).unwrap();
        a.stats.remove("elapsed_ms");
        b.stats.remove("elapsed_ms");
        assert_eq!(a, b);
    }
}
