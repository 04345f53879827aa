use std::cell::OnceCell;
use std::fmt;
use std::time::{Duration, Instant};

use crate::algebra::MonomialAlgebra;
use crate::field::Field;
use crate::format;
use crate::fundamental::{check_theta_diagram, pi1_rank, FundamentalError};
use crate::gluing::{GluedAlgebra, NonSpecial, SpecialPairs, SpecialPaths};
use crate::higher::{check_high_degree_gluing, DEFAULT_DEGREE_CAP, DEFAULT_ENUMERATION_CAP};
use crate::lie::LieAlgebraPresentation;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::quiver::Path;
use crate::strametz::{lie_on, LowDegree, PairSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    ImDelta0Dim,
    ImDelta0Structure,
    RadSqZeroIm,
    KerDelta1Hom,
    KerDelta1Structure,
    Hh1LieIso,
    Hh1CentralSummand,
    Hh1DimGeneral,
    RadSqZeroSummand,
    CenterGeq1,
    CenterIndec,
    CenterSourceSink,
    CenterRadSqZero,
    CenterDiffBlocks,
    Pi1Rank,
    GammaNotInImage,
    ThetaDiagram,
    HighDegrees,
}

impl CheckId {
    pub const ALL: [CheckId; 18] = [
        CheckId::ImDelta0Dim,
        CheckId::ImDelta0Structure,
        CheckId::RadSqZeroIm,
        CheckId::KerDelta1Hom,
        CheckId::KerDelta1Structure,
        CheckId::Hh1LieIso,
        CheckId::Hh1CentralSummand,
        CheckId::Hh1DimGeneral,
        CheckId::RadSqZeroSummand,
        CheckId::CenterGeq1,
        CheckId::CenterIndec,
        CheckId::CenterSourceSink,
        CheckId::CenterRadSqZero,
        CheckId::CenterDiffBlocks,
        CheckId::Pi1Rank,
        CheckId::GammaNotInImage,
        CheckId::ThetaDiagram,
        CheckId::HighDegrees,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::ImDelta0Dim => "im_delta0_dim",
            CheckId::ImDelta0Structure => "im_delta0_structure",
            CheckId::RadSqZeroIm => "rad_sq_zero_im",
            CheckId::KerDelta1Hom => "ker_delta1_hom",
            CheckId::KerDelta1Structure => "ker_delta1_structure",
            CheckId::Hh1LieIso => "hh1_lie_iso",
            CheckId::Hh1CentralSummand => "hh1_central_summand",
            CheckId::Hh1DimGeneral => "hh1_dim_general",
            CheckId::RadSqZeroSummand => "rad_sq_zero_summand",
            CheckId::CenterGeq1 => "center_geq1",
            CheckId::CenterIndec => "center_indec",
            CheckId::CenterSourceSink => "center_source_sink",
            CheckId::CenterRadSqZero => "center_rad_sq_zero",
            CheckId::CenterDiffBlocks => "center_diff_blocks",
            CheckId::Pi1Rank => "pi1_rank",
            CheckId::GammaNotInImage => "gamma_not_in_image",
            CheckId::ThetaDiagram => "theta_diagram",
            CheckId::HighDegrees => "high_degrees",
        }
    }

    pub fn from_name(name: &str) -> Option<CheckId> {
        CheckId::ALL.iter().copied().find(|c| c.name() == name)
    }

    /// Parses `all` or a comma-separated list of check names.
    pub fn parse_list(list: &str) -> Result<Vec<CheckId>, String> {
        if list.trim() == "all" {
            return Ok(CheckId::ALL.to_vec());
        }
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| CheckId::from_name(s).ok_or_else(|| format!("unknown check `{s}`")))
            .collect()
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    AssumptionViolated,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
            Status::AssumptionViolated => "assumption-violated",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: CheckId,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub witness: Option<String>,
    pub note: Option<String>,
    /// Algebra file plus gluing line, present on failures.
    pub reproduction: Option<String>,
    pub elapsed: Duration,
}

struct Outcome {
    status: Status,
    lhs: String,
    rhs: String,
    witness: Option<String>,
    note: Option<String>,
}

impl Outcome {
    fn verdict(ok: bool, lhs: impl Into<String>, rhs: impl Into<String>) -> Outcome {
        Outcome {
            status: if ok { Status::Pass } else { Status::Fail },
            lhs: lhs.into(),
            rhs: rhs.into(),
            witness: None,
            note: None,
        }
    }

    fn equal<T: PartialEq + fmt::Display>(lhs: T, rhs: T) -> Outcome {
        Outcome::verdict(lhs == rhs, lhs.to_string(), rhs.to_string())
    }

    fn not_applicable(reason: impl Into<String>) -> Outcome {
        Outcome {
            status: Status::NotApplicable,
            lhs: String::new(),
            rhs: String::new(),
            witness: None,
            note: Some(reason.into()),
        }
    }

    fn assumption(witness: String) -> Outcome {
        Outcome {
            status: Status::AssumptionViolated,
            lhs: String::new(),
            rhs: String::new(),
            witness: Some(witness),
            note: Some("a loop at a glued vertex has a power relation killed by the characteristic".into()),
        }
    }

    fn with_witness(mut self, w: Option<String>) -> Outcome {
        if self.status == Status::Fail {
            self.witness = w;
        }
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Outcome {
        self.note = Some(note.into());
        self
    }
}

/// Everything the checks share for one gluing, computed on demand.
pub struct GluingContext<'a> {
    pub g: &'a GluedAlgebra,
    pub ha: LowDegree<'a>,
    pub hb: LowDegree<'a>,
    psi0: OnceCell<Matrix>,
    psi1: OnceCell<Matrix>,
    special_paths: OnceCell<SpecialPaths>,
    special_pairs: OnceCell<SpecialPairs>,
    nsp: OnceCell<NonSpecial>,
    lie_a: OnceCell<LieAlgebraPresentation>,
    lie_b: OnceCell<LieAlgebraPresentation>,
}

impl<'a> GluingContext<'a> {
    pub fn new(g: &'a GluedAlgebra) -> Self {
        GluingContext {
            g,
            ha: LowDegree::compute(g.a()),
            hb: LowDegree::compute(g.b()),
            psi0: OnceCell::new(),
            psi1: OnceCell::new(),
            special_paths: OnceCell::new(),
            special_pairs: OnceCell::new(),
            nsp: OnceCell::new(),
            lie_a: OnceCell::new(),
            lie_b: OnceCell::new(),
        }
    }

    pub fn psi0(&self) -> &Matrix {
        self.psi0.get_or_init(|| self.g.psi(self.ha.complex.q0(), self.hb.complex.q0()))
    }

    pub fn psi1(&self) -> &Matrix {
        self.psi1.get_or_init(|| self.g.psi(self.ha.complex.q1(), self.hb.complex.q1()))
    }

    pub fn special_paths(&self) -> &SpecialPaths {
        self.special_paths.get_or_init(|| self.g.special_paths(&self.hb))
    }

    pub fn special_pairs(&self) -> &SpecialPairs {
        self.special_pairs.get_or_init(|| self.g.special_pairs(&self.hb))
    }

    pub fn nsp(&self) -> &NonSpecial {
        self.nsp.get_or_init(|| self.g.nsp_data(&self.hb))
    }

    fn lie_a(&self) -> &LieAlgebraPresentation {
        self.lie_a.get_or_init(|| self.ha.hh1_lie())
    }

    fn lie_b(&self) -> &LieAlgebraPresentation {
        self.lie_b.get_or_init(|| self.hb.hh1_lie())
    }

    fn a(&self) -> &MonomialAlgebra {
        self.g.a()
    }

    fn field(&self) -> Field {
        self.a().field()
    }

    fn components(&self) -> (i64, i64) {
        (
            self.a().quiver().component_count() as i64,
            self.g.b().quiver().component_count() as i64,
        )
    }

    fn gamma_vec(&self) -> Vector {
        Vector::unit(self.g.gamma_pair(self.hb.complex.q1()), self.field())
    }

    fn render_b1(&self, v: &Vector) -> String {
        self.hb.complex.q1().render(self.g.b(), v)
    }

    fn render_a1(&self, v: &Vector) -> String {
        self.ha.complex.q1().render(self.a(), v)
    }

    pub fn reproduction(&self) -> String {
        let q = self.a().quiver();
        format!(
            "{}# glue --alpha {} --beta {}\n",
            format::print(self.a()),
            q.arrow_name(self.g.alpha()),
            q.arrow_name(self.g.beta())
        )
    }
}

const SHOW_LIMIT: usize = 8;

fn show(space: &Subspace, pairs: &PairSpace, a: &MonomialAlgebra) -> String {
    if space.dim() > SHOW_LIMIT {
        return format!("dim {}", space.dim());
    }
    let parts: Vec<String> = space.rows().iter().map(|r| pairs.render(a, r)).collect();
    format!("<{}>", parts.join(", "))
}

/// First row of `small` outside `big`, rendered.
fn missing(small: &Subspace, big: &Subspace, render: impl Fn(&Vector) -> String) -> Option<String> {
    small.rows().iter().find(|r| !big.contains(r)).map(render)
}

pub fn run_check(id: CheckId, cx: &GluingContext<'_>) -> CheckReport {
    let start = Instant::now();
    let out = match id {
        CheckId::ImDelta0Dim => im_delta0_dim(cx),
        CheckId::ImDelta0Structure => im_delta0_structure(cx),
        CheckId::RadSqZeroIm => rad_sq_zero_im(cx),
        CheckId::KerDelta1Hom => ker_delta1_hom(cx),
        CheckId::KerDelta1Structure => ker_delta1_structure(cx),
        CheckId::Hh1LieIso => hh1_lie_iso(cx),
        CheckId::Hh1CentralSummand => hh1_central_summand(cx),
        CheckId::Hh1DimGeneral => hh1_dim_general(cx),
        CheckId::RadSqZeroSummand => rad_sq_zero_summand(cx),
        CheckId::CenterGeq1 => center_geq1(cx),
        CheckId::CenterIndec => center_indec(cx),
        CheckId::CenterSourceSink => center_source_sink(cx),
        CheckId::CenterRadSqZero => center_rad_sq_zero(cx),
        CheckId::CenterDiffBlocks => center_diff_blocks(cx),
        CheckId::Pi1Rank => pi1_rank_check(cx),
        CheckId::GammaNotInImage => gamma_not_in_image(cx),
        CheckId::ThetaDiagram => theta_diagram(cx),
        CheckId::HighDegrees => high_degrees(cx),
    };
    let reproduction = (out.status == Status::Fail).then(|| cx.reproduction());
    CheckReport {
        check: id,
        status: out.status,
        lhs: out.lhs,
        rhs: out.rhs,
        witness: out.witness,
        note: out.note,
        reproduction,
        elapsed: start.elapsed(),
    }
}

pub fn run_checks(g: &GluedAlgebra, ids: &[CheckId]) -> Vec<CheckReport> {
    let cx = GluingContext::new(g);
    ids.iter().map(|&id| run_check(id, &cx)).collect()
}

pub fn run_all(g: &GluedAlgebra) -> Vec<CheckReport> {
    run_checks(g, &CheckId::ALL)
}

fn im_delta0_dim(cx: &GluingContext<'_>) -> Outcome {
    let (ca, cb) = cx.components();
    let sp = cx.special_paths().sp as i64;
    let lhs = cx.ha.im0.dim() as i64;
    let rhs = cx.hb.im0.dim() as i64 + 2 + cb - ca - sp;
    Outcome::equal(lhs, rhs).with_note(format!("sp = {sp}, c_A = {ca}, c_B = {cb}"))
}

/// `ψ₁` kills exactly `⟨α∥α − β∥β⟩` on `sub`.
fn kernel_is_alpha_minus_beta(cx: &GluingContext<'_>, sub: &Subspace, image: &Subspace) -> bool {
    let amb = cx.g.alpha_minus_beta(cx.ha.complex.q1());
    sub.contains(&amb) && sub.dim() == image.dim() + 1
}

fn im_delta0_structure(cx: &GluingContext<'_>) -> Outcome {
    let kind = cx.g.kind();
    if !kind.source_sink {
        return Outcome::not_applicable("requires a source-sink gluing");
    }
    let (b, q1b) = (cx.g.b(), cx.hb.complex.q1());
    let image = cx.ha.im0.map(cx.psi1());
    let z_sp = &cx.special_paths().z_sp;
    let kernel_ok = kernel_is_alpha_minus_beta(cx, &cx.ha.im0, &image);
    let direct = image.is_direct_sum(z_sp);
    let rhs = image.sum(z_sp);
    let gamma = cx.gamma_vec();
    let (lhs, gamma_ok) = if kind.same_block {
        let mut l = cx.hb.im0.clone();
        l.insert(gamma.clone());
        (l, !cx.hb.im0.contains(&gamma))
    } else {
        (cx.hb.im0.clone(), z_sp.dim() == 0)
    };
    let ok = kernel_ok && direct && gamma_ok && lhs == rhs;
    let witness = missing(&lhs, &rhs, |v| cx.render_b1(v)).or_else(|| missing(&rhs, &lhs, |v| cx.render_b1(v)));
    Outcome::verdict(ok, show(&lhs, q1b, b), show(&rhs, q1b, b))
        .with_witness(witness)
        .with_note(format!(
            "kernel on Im δ⁰_A is <α||α − β||β>: {kernel_ok}; sum is direct: {direct}"
        ))
}

fn rad_sq_zero_im(cx: &GluingContext<'_>) -> Outcome {
    let kind = cx.g.kind();
    if !kind.source_sink || !cx.a().is_radical_square_zero() {
        return Outcome::not_applicable("requires a radical square zero algebra and a source-sink gluing");
    }
    let (b, q1b) = (cx.g.b(), cx.hb.complex.q1());
    let image = cx.ha.im0.map(cx.psi1());
    let mut lhs = cx.hb.im0.clone();
    if kind.same_block {
        lhs.insert(cx.gamma_vec());
    }
    let (ca, cb) = cx.components();
    let dims = cx.ha.im0.dim() as i64 == cx.hb.im0.dim() as i64 + 2 + cb - ca;
    let ok = dims && lhs == image && cx.special_paths().sp == 0;
    Outcome::verdict(ok, show(&lhs, q1b, b), show(&image, q1b, b))
        .with_witness(missing(&image, &lhs, |v| cx.render_b1(v)))
        .with_note(format!("dimension identity holds: {dims}"))
}

fn assumption_gate(cx: &GluingContext<'_>) -> Option<Outcome> {
    if cx.g.kind().source_sink {
        return None;
    }
    cx.g.assumption().err().map(|(x, m)| {
        Outcome::assumption(format!("({}, {m})", cx.a().quiver().arrow_name(x)))
    })
}

fn ker_delta1_hom(cx: &GluingContext<'_>) -> Outcome {
    if let Some(o) = assumption_gate(cx) {
        return o;
    }
    let psi1 = cx.psi1();
    let ker_a = &cx.ha.ker1;
    let image = ker_a.map(psi1);
    let contained = cx.hb.ker1.contains_subspace(&image);
    let kernel_ok = kernel_is_alpha_minus_beta(cx, ker_a, &image);
    let mut witness = missing(&image, &cx.hb.ker1, |v| cx.render_b1(v));
    let source_sink = cx.g.kind().source_sink;
    let mut bracket_ok = true;
    if source_sink {
        let rows = ker_a.rows();
        'outer: for (i, x) in rows.iter().enumerate() {
            for y in &rows[i + 1..] {
                let lhs = psi1.apply(&cx.ha.complex.bracket(x, y));
                let rhs = cx.hb.complex.bracket(&psi1.apply(x), &psi1.apply(y));
                if lhs != rhs {
                    bracket_ok = false;
                    witness = Some(format!("[{}, {}]", cx.render_a1(x), cx.render_a1(y)));
                    break 'outer;
                }
            }
        }
    }
    let ok = contained && kernel_ok && bracket_ok;
    let out = Outcome::verdict(
        ok,
        format!("dim ψ₁(Ker δ¹_A) = {}", image.dim()),
        format!("dim Ker δ¹_A − 1 = {}", ker_a.dim() as i64 - 1),
    )
    .with_witness(witness);
    if source_sink {
        out.with_note(format!("contained: {contained}; brackets preserved: {bracket_ok}"))
    } else {
        out.with_note(format!(
            "contained: {contained}; bracket preservation is only checked for source-sink gluings"
        ))
    }
}

fn ker_delta1_structure(cx: &GluingContext<'_>) -> Outcome {
    if let Some(o) = assumption_gate(cx) {
        return o;
    }
    let (b, q1b) = (cx.g.b(), cx.hb.complex.q1());
    let spp = cx.special_pairs();
    let image = cx.ha.ker1.map(cx.psi1());
    let sum = image.sum(&spp.z_spp);
    let direct = image.is_direct_sum(&spp.z_spp);
    let dims = cx.hb.ker1.dim() as i64 == cx.ha.ker1.dim() as i64 - 1 + spp.kspp as i64;
    let mut ok = direct && dims && sum == cx.hb.ker1;
    let mut note = format!(
        "dim Ker δ¹_A = {}, dim Ker δ¹_B = {}, kspp = {}; direct: {direct}; dimension identity: {dims}",
        cx.ha.ker1.dim(),
        cx.hb.ker1.dim(),
        spp.kspp
    );
    if cx.g.kind().source_sink {
        let sp = cx.special_paths();
        let cp = cx.g.crucial_paths().count();
        let same = spp.z_spp == sp.z_sp && Some(spp.kspp) == cp && sp.sp == spp.kspp;
        note.push_str(&format!("; sp = {}, cp = {:?}, Z_spp = Z_sp: {same}", sp.sp, cp.unwrap_or(0)));
        ok &= same;
    }
    Outcome::verdict(ok, show(&cx.hb.ker1, q1b, b), show(&sum, q1b, b))
        .with_witness(missing(&cx.hb.ker1, &sum, |v| cx.render_b1(v)))
        .with_note(note)
}

/// `Im δ⁰_B`, plus `γ*∥γ*` when the gluing stays in one block.
fn hh1_modulus(cx: &GluingContext<'_>) -> Subspace {
    let mut y = cx.hb.im0.clone();
    if cx.g.kind().same_block {
        y.insert(cx.gamma_vec());
    }
    y
}

fn hh1_lie_iso(cx: &GluingContext<'_>) -> Outcome {
    if !cx.g.kind().source_sink {
        return Outcome::not_applicable("requires a source-sink gluing");
    }
    let y = hh1_modulus(cx);
    let ker_b = &cx.hb.ker1;
    let mapped: Vec<Vector> = cx.ha.hh1_reps.iter().map(|x| cx.psi1().apply(x)).collect();
    let target = ker_b.dim() as i64 - y.dim() as i64;
    let lhs = format!("dim HH¹(A) = {}", mapped.len());
    let rhs = format!("dim Ker δ¹_B / Y = {target}");
    if !ker_b.contains_subspace(&y) {
        return Outcome::verdict(false, lhs, rhs).with_note("Y is not inside Ker δ¹_B");
    }
    if let Some(w) = mapped.iter().find(|v| !ker_b.contains(v)) {
        return Outcome::verdict(false, lhs, rhs).with_witness(Some(cx.render_b1(w)));
    }
    let mut span = y.clone();
    let independent = mapped.iter().all(|v| span.insert(v.clone()));
    if !independent || mapped.len() as i64 != target {
        return Outcome::verdict(false, lhs, rhs).with_note("ψ₁ is not bijective on HH¹");
    }
    for yv in y.rows() {
        for k in ker_b.rows() {
            let br = cx.hb.complex.bracket(yv, k);
            if !y.contains(&br) {
                return Outcome::verdict(false, lhs, rhs)
                    .with_witness(Some(format!("[{}, {}]", cx.render_b1(yv), cx.render_b1(k))))
                    .with_note("Y is not a Lie ideal");
            }
        }
    }
    let la = cx.lie_a();
    let lb = lie_on(&cx.hb.complex, &y, &mapped, la.labels().to_vec());
    let n = mapped.len();
    let mismatch = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| la.constant(i, j) != lb.constant(i, j));
    Outcome::verdict(mismatch.is_none(), lhs, rhs).with_witness(
        mismatch.map(|(i, j)| format!("[{}, {}]", la.labels()[i], la.labels()[j])),
    )
}

fn hh1_central_summand(cx: &GluingContext<'_>) -> Outcome {
    let kind = cx.g.kind();
    if !(kind.source_sink && kind.same_block) {
        return Outcome::not_applicable("requires a source-sink gluing within one block");
    }
    if cx.field().characteristic() != 0 {
        return Outcome::not_applicable("requires characteristic zero");
    }
    let gamma = cx.gamma_vec();
    let noncentral = cx
        .hb
        .ker1
        .rows()
        .iter()
        .find(|k| !cx.hb.im0.contains(&cx.hb.complex.bracket(&gamma, k)));
    let (la, lb) = (cx.lie_a(), cx.lie_b());
    let invariants = lb.center_dim() == la.center_dim() + 1 && lb.derived_dim() == la.derived_dim();
    let ok = cx.hb.hh1_dim() == cx.ha.hh1_dim() + 1 && noncentral.is_none() && invariants;
    Outcome::verdict(
        ok,
        format!("dim HH¹(B) = {}", cx.hb.hh1_dim()),
        format!("dim HH¹(A) + 1 = {}", cx.ha.hh1_dim() + 1),
    )
    .with_witness(noncentral.map(|k| format!("[γ*||γ*, {}]", cx.render_b1(k))))
    .with_note(format!(
        "center dims {} / {}, derived dims {} / {}",
        lb.center_dim(),
        la.center_dim(),
        lb.derived_dim(),
        la.derived_dim()
    ))
}

fn hh1_dim_general(cx: &GluingContext<'_>) -> Outcome {
    if let Some(o) = assumption_gate(cx) {
        return o;
    }
    let (ca, cb) = cx.components();
    let sp = cx.special_paths().sp as i64;
    let kspp = cx.special_pairs().kspp as i64;
    let lhs = cx.ha.hh1_dim() as i64;
    let rhs = cx.hb.hh1_dim() as i64 - 1 - kspp + sp + ca - cb;
    Outcome::equal(lhs, rhs).with_note(format!("sp = {sp}, kspp = {kspp}, c_A = {ca}, c_B = {cb}"))
}

fn rad_sq_zero_summand(cx: &GluingContext<'_>) -> Outcome {
    if !cx.a().is_radical_square_zero() || !cx.g.kind().same_block {
        return Outcome::not_applicable("requires a radical square zero algebra and a gluing within one block");
    }
    if cx.field().characteristic() != 0 {
        return Outcome::not_applicable("requires characteristic zero");
    }
    if cx.special_pairs().kspp != 0 {
        return Outcome::not_applicable("Z_spp is nonzero");
    }
    if let Some(o) = assumption_gate(cx) {
        return o;
    }
    let (la, lb) = (cx.lie_a(), cx.lie_b());
    let invariants = lb.center_dim() == la.center_dim() + 1 && lb.derived_dim() == la.derived_dim();
    let ok = cx.hb.hh1_dim() == cx.ha.hh1_dim() + 1 && invariants;
    Outcome::verdict(
        ok,
        format!("dim HH¹(B) = {}", cx.hb.hh1_dim()),
        format!("dim HH¹(A) + 1 = {}", cx.ha.hh1_dim() + 1),
    )
    .with_note(format!(
        "center dims {} / {}, derived dims {} / {}",
        lb.center_dim(),
        la.center_dim(),
        lb.derived_dim(),
        la.derived_dim()
    ))
}

fn center_geq1(cx: &GluingContext<'_>) -> Outcome {
    let (ca, cb) = (&cx.ha.complex, &cx.hb.complex);
    let ker_a = ca.restricted_kernel(&ca.positive_q0());
    let ker_b = cb.restricted_kernel(&cb.positive_q0());
    let image = ker_a.map(cx.psi0());
    let z_nsp = &cx.nsp().z_nsp;
    let injective = image.dim() == ker_a.dim();
    let direct = image.is_direct_sum(z_nsp);
    let sum = image.sum(z_nsp);
    let ok = injective && direct && sum == ker_b;
    let render = |v: &Vector| cb.q0().render(cx.g.b(), v);
    Outcome::verdict(ok, show(&ker_b, cb.q0(), cx.g.b()), show(&sum, cb.q0(), cx.g.b()))
        .with_witness(missing(&ker_b, &sum, render))
        .with_note(format!("nsp = {}; injective: {injective}; direct: {direct}", cx.nsp().nsp))
}

/// `ψ₀` with the trivial pairs at `s(β)` and `t(β)` sent to zero, so that
/// component units go to component units.
fn center_map(cx: &GluingContext<'_>) -> Matrix {
    let [_, _, e3, e4] = cx.g.ends();
    let q0 = cx.ha.complex.q0();
    let a = cx.a();
    let columns = (0..q0.len())
        .map(|i| {
            let right = &a.basis()[q0.pair(i).right];
            if right.is_trivial() && (right.source() == e3 || right.source() == e4) {
                Vector::zero()
            } else {
                cx.psi0().column(i).clone()
            }
        })
        .collect();
    Matrix::from_columns(cx.field(), cx.psi0().nrows(), columns).expect("indices in range")
}

/// Checks that `map` sends `Z(from)` unitally, injectively and multiplicatively into `Z(to)`.
fn center_embedding(from: &LowDegree<'_>, to: &LowDegree<'_>, map: impl Fn(&Vector) -> Vector) -> Result<(), String> {
    let (cf, ct) = (&from.complex, &to.complex);
    let (af, at) = (from.algebra(), to.algebra());
    let image = Subspace::span(af.field(), ct.q0().len(), from.ker0.rows().iter().map(&map));
    if image.dim() != from.ker0.dim() {
        return Err("not injective".into());
    }
    if !to.ker0.contains_subspace(&image) {
        return Err("image leaves the center".into());
    }
    let unit = |c: &crate::strametz::StrametzComplex<'_>| {
        Vector::from_entries(c.trivial_q0().into_iter().map(|i| (i, af.field().one())))
    };
    if map(&unit(cf)) != unit(ct) {
        return Err("not unital".into());
    }
    let rows = from.ker0.rows();
    for x in rows {
        for y in rows {
            let prod = af.multiply_elements(&cf.q0_to_element(x), &cf.q0_to_element(y));
            let lhs = map(&cf.element_to_q0(&prod).ok_or("product is not a sum of cycles")?);
            let rhs_elem = at.multiply_elements(&ct.q0_to_element(&map(x)), &ct.q0_to_element(&map(y)));
            let rhs = ct.element_to_q0(&rhs_elem).ok_or("product is not a sum of cycles")?;
            if lhs != rhs {
                return Err(format!(
                    "not multiplicative on {} · {}",
                    cf.q0().render(af, x),
                    cf.q0().render(af, y)
                ));
            }
        }
    }
    Ok(())
}

fn center_indec(cx: &GluingContext<'_>) -> Outcome {
    if !cx.g.kind().same_block {
        return Outcome::not_applicable("requires a gluing within one block");
    }
    let nsp = cx.nsp().nsp;
    let map = center_map(cx);
    let embedding = center_embedding(&cx.ha, &cx.hb, |v| map.apply(v));
    let lhs = cx.hb.ker0.dim();
    let rhs = cx.ha.ker0.dim() + nsp;
    let ok = lhs == rhs && embedding.is_ok();
    Outcome::verdict(ok, format!("dim Z(B) = {lhs}"), format!("dim Z(A) + nsp = {rhs}"))
        .with_witness(embedding.clone().err())
        .with_note(format!("nsp = {nsp}; unital injective algebra map Z(A) → Z(B): {}", embedding.is_ok()))
}

fn center_source_sink(cx: &GluingContext<'_>) -> Outcome {
    let kind = cx.g.kind();
    if !(kind.source_sink && kind.same_block) {
        return Outcome::not_applicable("requires a source-sink gluing within one block");
    }
    if !cx.g.bridge_paths_empty() {
        return Outcome::not_applicable("there are paths from t(α) to s(β); no isomorphism is claimed");
    }
    let (za, zb) = (cx.ha.ker0.dim(), cx.hb.ker0.dim());
    Outcome::verdict(za == zb && cx.nsp().nsp == 0, format!("dim Z(B) = {zb}"), format!("dim Z(A) = {za}"))
}

fn loops(a: &MonomialAlgebra) -> usize {
    let q = a.quiver();
    q.arrow_ids().filter(|&x| q.is_loop(x)).count()
}

fn center_rad_sq_zero(cx: &GluingContext<'_>) -> Outcome {
    if !cx.a().is_radical_square_zero() || !cx.g.kind().same_block {
        return Outcome::not_applicable("requires a radical square zero algebra and a gluing within one block");
    }
    let qa = cx.a().quiver();
    let [e1, e2, e3, e4] = cx.g.ends();
    let joins = |x, y| {
        qa.arrow_ids()
            .filter(|&a| {
                let (s, t) = (qa.source(a), qa.target(a));
                (s == x && t == y) || (s == y && t == x)
            })
            .count()
    };
    let bridging = joins(e1, e3) + joins(e2, e4);
    let (za, zb) = (cx.ha.ker0.dim(), cx.hb.ker0.dim());
    let iso = za == zb;
    let b = cx.g.b();
    let loop_ok = loops(b) == loops(cx.a()) + bridging;
    let formula = |alg: &MonomialAlgebra, z: usize| z == loops(alg) + alg.quiver().component_count();
    let ok = iso == (bridging == 0) && loop_ok && formula(cx.a(), za) && formula(b, zb);
    Outcome::verdict(
        ok,
        format!("Z(A) ≅ Z(B): {iso}"),
        format!("no arrows between glued vertices: {}", bridging == 0),
    )
    .with_note(format!("dim Z(A) = {za}, dim Z(B) = {zb}, loop counts {} / {}", loops(cx.a()), loops(b)))
}

fn center_diff_blocks(cx: &GluingContext<'_>) -> Outcome {
    if cx.g.kind().same_block {
        return Outcome::not_applicable("requires a gluing across two blocks");
    }
    let iota = super::oracle::embedding(cx.g);
    let (ca, cb) = (&cx.ha.complex, &cx.hb.complex);
    let map = |v: &Vector| {
        ca.element_to_q0(&iota.apply(&cb.q0_to_element(v)))
            .unwrap_or_else(Vector::zero)
    };
    let embedding = center_embedding(&cx.hb, &cx.ha, map);
    let (za, zb) = (cx.ha.ker0.dim(), cx.hb.ker0.dim());
    Outcome::verdict(za == zb + 1 && embedding.is_ok(), format!("dim Z(A) = {za}"), format!("dim Z(B) + 1 = {}", zb + 1))
        .with_witness(embedding.err())
}

fn pi1_rank_check(cx: &GluingContext<'_>) -> Outcome {
    let (ca, cb) = cx.components();
    let ra = pi1_rank(cx.a()) as i64;
    let rb = pi1_rank(cx.g.b()) as i64;
    Outcome::equal(ra, rb + ca - cb - 1)
}

fn gamma_not_in_image(cx: &GluingContext<'_>) -> Outcome {
    let kind = cx.g.kind();
    if !(kind.source_sink && kind.same_block) {
        return Outcome::not_applicable("requires a source-sink gluing within one block");
    }
    let inside = cx.hb.im0.contains(&cx.gamma_vec());
    Outcome::verdict(!inside, format!("γ*||γ* ∈ Im δ⁰_B: {inside}"), "γ*||γ* ∈ Im δ⁰_B: false")
}

fn theta_diagram(cx: &GluingContext<'_>) -> Outcome {
    match check_theta_diagram(cx.g, &cx.ha, &cx.hb) {
        Ok(d) => {
            let bad = d.generators.iter().find(|g| !g.modulo).map(|g| g.chord.clone());
            Outcome::verdict(d.commutes(), format!("θ_B(γ*) = {}", d.gamma_image), "γ*||γ*")
                .with_witness(bad)
                .with_note(format!(
                    "v = {}; θ_A injective: {}, θ_B injective: {}",
                    d.walk_v, d.injective_a, d.injective_b
                ))
        }
        Err(FundamentalError::NotApplicable(reason)) => Outcome::not_applicable(reason),
        Err(e) => Outcome::not_applicable(e.to_string()),
    }
}

fn high_degrees(cx: &GluingContext<'_>) -> Outcome {
    match check_high_degree_gluing(cx.g, DEFAULT_DEGREE_CAP, DEFAULT_ENUMERATION_CAP) {
        Ok(report) => {
            let bad = report.rows.iter().find(|r| !(r.monotone() && r.injective != Some(false)));
            let fmt_row = |f: &dyn Fn(&crate::higher::DegreeRow) -> String| {
                report.rows.iter().map(f).collect::<Vec<_>>().join(" ")
            };
            let lhs = fmt_row(&|r| r.dim_a.to_string());
            let rhs = fmt_row(&|r| r.dim_b.as_ref().map_or("crown".into(), |d| d.to_string()));
            let out = Outcome::verdict(report.passed(), format!("HH^n(A), n=2..: {lhs}"), format!("HH^n(B), n=2..: {rhs}"))
                .with_witness(bad.map(|r| format!("n = {}", r.n)));
            match report.crown_b {
                Some(k) => out.with_note(format!("Q_B is a {k}-crown")),
                None => out,
            }
        }
        Err(reason) => Outcome::not_applicable(reason),
    }
}

/// Basis paths of `B` rendered right to left, for reports.
pub fn render_paths(a: &MonomialAlgebra, paths: &[Path]) -> Vec<String> {
    paths.iter().map(|p| a.quiver().display_path(p)).collect()
}
