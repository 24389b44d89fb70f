//! Reports assembled from a polynomial or from Jordan data, and their
//! Markdown rendering.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::hodge::{
    ic_stalk_weight_table, link_weight_table, milnor_fiber_table, purity_verdict, stalk_cohomology_dims, build_q3,
    build_q4, HodgeError, LaurentPolynomialZ, PurityReason, PurityVerdict, WeightTable,
};
use crate::monodromy::{
    invariant_dimension_n0, jordan_from_flat_boundary, jordan_from_geometry, milnor_number, top_blocks_by_order, vp_milnor_fiber,
    Eigenvalue, JordanBlockData,
};
use crate::newton::{
    check_nondegeneracy, interior_vertices, is_flat, is_quasi_homogeneous, newton_boundary, newton_polyhedron,
    pi_f, FaceVerdict, FlatWitness, InteriorVertexData, NondegeneracyScope, QuasiHomogeneity, Verdict,
};
use crate::poly::{has_linear_term, parse_polynomial, support, ExponentVector, PolyError, SparsePolynomial};

/// A Jordan count that the boundary either fixes or leaves open.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Known(u64),
    Unknown,
}

impl Serialize for Count {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Known(c) => serializer.serialize_u64(*c),
            Count::Unknown => serializer.serialize_str("unknown"),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::N(c) => Ok(Count::Known(c)),
            Raw::S(s) if s == "unknown" => Ok(Count::Unknown),
            Raw::S(s) => Err(serde::de::Error::custom(format!("expected a count or \"unknown\", got {s:?}"))),
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Known(c) => write!(f, "{c}"),
            Count::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopBlocks {
    /// Order of the eigenvalue; every primitive root of this order has the
    /// same count.
    pub order: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialJordan {
    pub top_distances: Vec<i64>,
    /// `J^λ_n` for `λ != 1`, grouped by the order of `λ`.
    pub top_blocks: Vec<TopBlocks>,
    /// `J^1_s` for `1 <= s <= n-1`.
    pub unipotent: BTreeMap<usize, Count>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completion {
    /// A flat boundary carries the semisimple monodromy of its
    /// quasi-homogeneous part.
    CompletedByFlatness,
    /// For curves `J^1_1` is the only unipotent count.
    CurveCase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletedJordan {
    pub completed_by: Completion,
    pub unipotent: BTreeMap<usize, u64>,
    /// Every block, when the boundary fixes all of them.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub jordan: Option<JordanBlockData>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct WeightTables {
    pub milnor_fiber: Vec<WeightTable>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ic_stalk: Option<WeightTable>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub link: Option<WeightTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialEntry {
    pub k: i64,
    pub r: i64,
    pub dim: Count,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct VpPolynomials {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub milnor_fiber: Option<LaurentPolynomialZ>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q3: Option<LaurentPolynomialZ>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q4: Option<LaurentPolynomialZ>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ic_stalk: Option<LaurentPolynomialZ>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub link: Option<LaurentPolynomialZ>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: String,
    pub polynomial: String,
    pub n: usize,
    pub smooth_at_0: bool,
    pub convenient: bool,
    pub flat: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub flat_witness: Option<FlatWitness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub quasi_homogeneous: Option<QuasiHomogeneity>,
    pub vertices: Vec<ExponentVector>,
    pub nondegeneracy: Vec<FaceVerdict>,
    pub interior_vertices: Vec<InteriorVertexData>,
    pub pi_f: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partial_jordan: Option<PartialJordan>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub completed_jordan: Option<CompletedJordan>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stalk_dims: Option<BTreeMap<i64, u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weight_tables: Option<WeightTables>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partial_ic_stalk: Option<Vec<PartialEntry>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vp_polynomials: Option<VpPolynomials>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub purity: Option<PurityVerdict>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    /// Geometric formulas only apply to convenient singular points.
    pub fn formulas_available(&self) -> bool {
        self.convenient || self.smooth_at_0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub assume_nondegenerate: bool,
}

fn face_label(vertices: &[ExponentVector]) -> String {
    vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-")
}

pub fn analyze_text(text: &str, options: AnalyzeOptions) -> Result<AnalysisReport, PolyError> {
    let p = parse_polynomial(text, None)?;
    Ok(analyze(text, &p, options))
}

/// Runs the boundary computations and every formula the boundary data
/// supports.
pub fn analyze(input: &str, p: &SparsePolynomial, options: AnalyzeOptions) -> AnalysisReport {
    let n = p.n();
    let supp: Vec<ExponentVector> = support(p).into_iter().collect();
    let polyhedron = newton_polyhedron(&supp, n).expect("support of a parsed polynomial");
    let boundary = newton_boundary(&polyhedron);
    let flat_witness = is_flat(&boundary);
    let mut warnings = Vec::new();

    let nondegeneracy: Vec<FaceVerdict> = if options.assume_nondegenerate {
        boundary
            .faces
            .iter()
            .map(|face| FaceVerdict {
                face: face.clone(),
                verdict: Verdict::Assumed,
            })
            .collect()
    } else {
        check_nondegeneracy(p, NondegeneracyScope::AtZero).expect("support of a parsed polynomial")
    };
    for fv in &nondegeneracy {
        match fv.verdict {
            Verdict::Assumed => warnings.push(format!(
                "non-degeneracy on the {}-face {} is assumed, not checked",
                fv.face.dim,
                face_label(&fv.face.vertices)
            )),
            Verdict::Degenerate => warnings.push(format!(
                "f is degenerate on the {}-face {}; the formulas below need non-degeneracy",
                fv.face.dim,
                face_label(&fv.face.vertices)
            )),
            Verdict::NonDegenerate => {}
        }
    }

    let mut report = AnalysisReport {
        input: input.to_string(),
        polynomial: p.to_string(),
        n,
        smooth_at_0: has_linear_term(p),
        convenient: boundary.is_convenient(),
        flat: flat_witness.is_some(),
        flat_witness,
        quasi_homogeneous: is_quasi_homogeneous(&supp, n),
        vertices: polyhedron.vertices().to_vec(),
        nondegeneracy,
        interior_vertices: interior_vertices(&boundary),
        pi_f: pi_f(&boundary),
        partial_jordan: None,
        completed_jordan: None,
        n0: None,
        stalk_dims: None,
        weight_tables: None,
        partial_ic_stalk: None,
        vp_polynomials: None,
        purity: None,
        warnings,
    };

    if report.smooth_at_0 {
        report.warnings.push("the origin is a smooth point; the Milnor fiber is contractible".into());
        if n >= 2 {
            fill_tables(&mut report, &JordanBlockData::new(n).expect("n >= 2"), true);
        }
        report.purity = Some(PurityVerdict {
            pure: true,
            witnesses: vec![PurityReason::SmoothPoint],
        });
        return report;
    }
    if !report.convenient {
        report.warnings.push("f is not convenient; Jordan data and weight tables are unavailable".into());
        return report;
    }
    if n < 2 {
        report.warnings.push("weight tables need at least two variables".into());
        return report;
    }

    let partial = jordan_from_geometry(&boundary, n).expect("checked convenient");
    let mut unipotent: BTreeMap<usize, Count> = (1..n).map(|s| (s, Count::Unknown)).collect();
    unipotent.insert(n - 1, Count::Known(partial.sub_top_for_one));
    let full = report
        .flat_witness
        .as_ref()
        .map(|w| jordan_from_flat_boundary(&w.normal, w.offset).expect("flat and convenient"));
    if let Some(j) = &full {
        if j.unipotent(n - 1) != partial.sub_top_for_one || !partial.top_distances.is_empty() {
            report
                .warnings
                .push("Jordan data from flatness disagrees with the interior vertices or edges".into());
        }
        for s in 1..n {
            unipotent.insert(s, Count::Known(j.unipotent(s)));
        }
    }
    report.partial_jordan = Some(PartialJordan {
        top_blocks: top_blocks_by_order(&partial)
            .into_iter()
            .map(|(order, count)| TopBlocks { order, count })
            .collect(),
        top_distances: partial.top_distances,
        unipotent: unipotent.clone(),
    });

    match (full, n) {
        (Some(j), _) => {
            report.completed_jordan = Some(CompletedJordan {
                completed_by: Completion::CompletedByFlatness,
                unipotent: (1..n).map(|s| (s, j.unipotent(s))).collect(),
                jordan: Some(j.clone()),
            });
            fill_tables(&mut report, &j, true);
        }
        (None, 2) => {
            let counts = BTreeMap::from([(1, partial.sub_top_for_one)]);
            let j = JordanBlockData::from_blocks(2, [(Eigenvalue::ONE, 1, partial.sub_top_for_one)])
                .expect("sizes start at 1");
            report.completed_jordan = Some(CompletedJordan {
                completed_by: Completion::CurveCase,
                unipotent: counts,
                jordan: None,
            });
            fill_tables(&mut report, &j, false);
        }
        (None, _) => fill_partial(&mut report, &unipotent),
    }

    report.purity = geometric_purity(&report);
    if report.purity.is_none() {
        report.warnings.push(
            "purity is undetermined: the boundary is not flat and no interior edge carries a lattice point".into(),
        );
    }
    report
}

/// Tables from `j`; with `full == false` only the eigenvalue-1 part of `j`
/// is trusted.
fn fill_tables(report: &mut AnalysisReport, j: &JordanBlockData, full: bool) {
    let n = report.n;
    let n0 = invariant_dimension_n0(j);
    report.n0 = Some(n0);
    report.stalk_dims = Some(stalk_cohomology_dims(n, n0).expect("n >= 2"));
    let mut eigenvalues = vec![Eigenvalue::ONE];
    if full {
        eigenvalues.extend(j.eigenvalues().into_iter().filter(|l| !l.is_one()));
    }
    let milnor = eigenvalues
        .into_iter()
        .map(|l| milnor_fiber_table(j, l).expect("valid by construction"))
        .collect();
    let ic = ic_stalk_weight_table(n, j).expect("valid by construction");
    let link = (n >= 3).then(|| link_weight_table(n, j).expect("valid by construction"));
    report.vp_polynomials = Some(VpPolynomials {
        milnor_fiber: full.then(|| vp_milnor_fiber(j)),
        q3: full.then(|| build_q3(n, j)),
        q4: Some(build_q4(n, j)),
        ic_stalk: Some(ic.virtual_poincare()),
        link: link.as_ref().map(WeightTable::virtual_poincare),
    });
    report.weight_tables = Some(WeightTables {
        milnor_fiber: milnor,
        ic_stalk: Some(ic),
        link,
    });
}

fn fill_partial(report: &mut AnalysisReport, unipotent: &BTreeMap<usize, Count>) {
    let n = report.n as i64;
    let mut rows = vec![PartialEntry {
        k: 0,
        r: 0,
        dim: Count::Known(1),
    }];
    for r in 0..=n - 2 {
        rows.push(PartialEntry {
            k: n - 2,
            r,
            dim: unipotent[&((n - r - 1) as usize)],
        });
    }
    report.partial_ic_stalk = Some(rows);
    report
        .warnings
        .push("J^1_s for 1 <= s <= n-2 is not fixed by the boundary; weight tables are omitted".into());
}

fn geometric_purity(report: &AnalysisReport) -> Option<PurityVerdict> {
    let n = report.n;
    let mut verdict = if n == 2 {
        PurityVerdict {
            pure: true,
            witnesses: vec![PurityReason::CurveCase],
        }
    } else if report.flat {
        purity_verdict(n, None, Some(true)).expect("flatness given")
    } else if report.pi_f > 0 {
        PurityVerdict {
            pure: false,
            witnesses: vec![
                PurityReason::NotFlat,
                PurityReason::LargeUnipotentBlocks {
                    size: n - 1,
                    count: report.pi_f as u64,
                },
            ],
        }
    } else {
        return None;
    };
    if verdict.pure && report.quasi_homogeneous.is_some() {
        verdict.witnesses.push(PurityReason::QuasiHomogeneous);
    }
    Some(verdict)
}

/// Everything computable from a full Jordan dataset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanReport {
    pub n: usize,
    pub jordan: JordanBlockData,
    pub n0: u64,
    pub milnor_number: u64,
    pub stalk_dims: BTreeMap<i64, u64>,
    pub weight_tables: WeightTables,
    pub vp_polynomials: VpPolynomials,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub purity: Option<PurityVerdict>,
    pub warnings: Vec<String>,
}

impl JordanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn jordan_report(j: &JordanBlockData) -> Result<JordanReport, HodgeError> {
    let n = j.n();
    let mut warnings = Vec::new();
    let mut eigenvalues = j.eigenvalues();
    if !eigenvalues.contains(&Eigenvalue::ONE) {
        eigenvalues.insert(0, Eigenvalue::ONE);
    }
    let milnor = eigenvalues
        .into_iter()
        .filter(|l| !l.is_one() || n >= 2)
        .map(|l| milnor_fiber_table(j, l))
        .collect::<Result<Vec<_>, _>>()?;
    let n0 = invariant_dimension_n0(j);
    let (stalk_dims, ic, link, purity) = if n >= 2 {
        let link = if n >= 3 { Some(link_weight_table(n, j)?) } else { None };
        let purity = if n >= 3 {
            Some(purity_verdict(n, Some(j), None)?)
        } else {
            Some(PurityVerdict {
                pure: true,
                witnesses: vec![PurityReason::CurveCase],
            })
        };
        (stalk_cohomology_dims(n, n0)?, Some(ic_stalk_weight_table(n, j)?), link, purity)
    } else {
        warnings.push("stalk and link tables need n >= 2".into());
        (BTreeMap::new(), None, None, None)
    };
    Ok(JordanReport {
        n,
        jordan: j.clone(),
        n0,
        milnor_number: milnor_number(j),
        stalk_dims,
        vp_polynomials: VpPolynomials {
            milnor_fiber: Some(vp_milnor_fiber(j)),
            q3: Some(build_q3(n, j)),
            q4: Some(build_q4(n, j)),
            ic_stalk: ic.as_ref().map(WeightTable::virtual_poincare),
            link: link.as_ref().map(WeightTable::virtual_poincare),
        },
        weight_tables: WeightTables {
            milnor_fiber: milnor,
            ic_stalk: ic,
            link,
        },
        purity,
        warnings,
    })
}

/// ANSI styling for the Markdown renderer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Style {
    pub color: bool,
}

impl Style {
    /// Reads `SINGHODGE_COLOR`; `1`, `true`, `yes`, `always` turn color on.
    pub fn from_env() -> Self {
        let color = std::env::var("SINGHODGE_COLOR")
            .map(|v| matches!(v.to_ascii_lowercase().as_str(), "1" | "true" | "yes" | "always" | "on"))
            .unwrap_or(false);
        Style { color }
    }

    fn paint(&self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn heading(&self, text: &str) -> String {
        self.paint("1", text)
    }

    fn good(&self, text: &str) -> String {
        self.paint("32", text)
    }

    fn bad(&self, text: &str) -> String {
        self.paint("31", text)
    }
}

fn render_table(out: &mut String, style: Style, title: &str, t: &WeightTable) {
    let weights: Vec<i64> = {
        let mut w: Vec<i64> = t.iter().map(|e| e.r).collect();
        w.sort_unstable();
        w.dedup();
        w
    };
    let _ = writeln!(out, "\n{}\n", style.heading(&format!("### {title}")));
    let _ = write!(out, "| k \\ r |");
    for r in &weights {
        let _ = write!(out, " {r} |");
    }
    let _ = write!(out, "\n|---|");
    for _ in &weights {
        let _ = write!(out, "---|");
    }
    out.push('\n');
    for k in t.degrees() {
        let _ = write!(out, "| {k} |");
        for &r in &weights {
            let _ = write!(out, " {} |", t.get(k, r));
        }
        out.push('\n');
    }
}

fn table_title(t: &WeightTable) -> String {
    use crate::hodge::WeightKind;
    match (t.kind, t.eigenvalue) {
        (WeightKind::MilnorFiber, Some(l)) => format!("Milnor fiber, eigenvalue exp(2πi·{l})"),
        (WeightKind::MilnorFiber, None) => "Milnor fiber".into(),
        (WeightKind::IcStalk, _) => "IC stalk".into(),
        (WeightKind::Link, _) => "Link".into(),
    }
}

fn render_tables(out: &mut String, style: Style, tables: &WeightTables) {
    for t in tables.milnor_fiber.iter().chain(&tables.ic_stalk).chain(&tables.link) {
        render_table(out, style, &table_title(t), t);
    }
}

fn render_vp(out: &mut String, style: Style, vp: &VpPolynomials) {
    let _ = writeln!(out, "\n{}\n", style.heading("### Virtual Poincaré polynomials"));
    let rows = [
        ("Milnor fiber", &vp.milnor_fiber),
        ("Q3", &vp.q3),
        ("Q4", &vp.q4),
        ("IC stalk", &vp.ic_stalk),
        ("Link", &vp.link),
    ];
    for (name, p) in rows {
        if let Some(p) = p {
            let _ = writeln!(out, "- {name}: `{p}`");
        }
    }
}

fn render_purity(out: &mut String, style: Style, purity: &Option<PurityVerdict>) {
    let text = match purity {
        Some(v) if v.pure => style.good("pure"),
        Some(_) => style.bad("impure"),
        None => "undetermined".to_string(),
    };
    let _ = writeln!(out, "- IC stalk purity: {text}");
}

fn render_warnings(out: &mut String, style: Style, warnings: &[String]) {
    if warnings.is_empty() {
        return;
    }
    let _ = writeln!(out, "\n{}\n", style.heading("### Warnings"));
    for w in warnings {
        let _ = writeln!(out, "- {w}");
    }
}

pub fn render_analysis_markdown(report: &AnalysisReport, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}\n", style.heading(&format!("## f = {}", report.polynomial)));
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(out, "- variables: {}", report.n);
    let _ = writeln!(out, "- smooth at 0: {}", yes_no(report.smooth_at_0));
    let _ = writeln!(out, "- convenient: {}", yes_no(report.convenient));
    match &report.flat_witness {
        Some(w) => {
            let _ = writeln!(out, "- flat: yes, normal {:?}, offset {}", w.normal, w.offset);
        }
        None => {
            let _ = writeln!(out, "- flat: no");
        }
    }
    if let Some(q) = &report.quasi_homogeneous {
        let _ = writeln!(out, "- quasi-homogeneous: weights {:?}, degree {}", q.weights, q.degree);
    }
    let vertices: Vec<String> = report.vertices.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "- vertices: {}", vertices.join(", "));
    let interior: Vec<String> = report
        .interior_vertices
        .iter()
        .map(|iv| format!("{} (d = {})", iv.q, iv.d))
        .collect();
    if !interior.is_empty() {
        let _ = writeln!(out, "- interior vertices: {}", interior.join(", "));
    }
    let _ = writeln!(out, "- Π_f: {}", report.pi_f);
    if let Some(n0) = report.n0 {
        let _ = writeln!(out, "- N₀: {n0}");
    }
    render_purity(&mut out, style, &report.purity);

    if let Some(p) = &report.partial_jordan {
        let _ = writeln!(out, "\n{}\n", style.heading("### Unipotent Jordan blocks"));
        let _ = writeln!(out, "| size | count |\n|---|---|");
        for (s, c) in &p.unipotent {
            let _ = writeln!(out, "| {s} | {c} |");
        }
        if !p.top_blocks.is_empty() {
            let _ = writeln!(out, "\n| eigenvalue order | blocks of size {} |\n|---|---|", report.n);
            for tb in &p.top_blocks {
                let _ = writeln!(out, "| {} | {} |", tb.order, tb.count);
            }
        }
    }
    if let Some(rows) = &report.partial_ic_stalk {
        let _ = writeln!(out, "\n{}\n", style.heading("### IC stalk (partial)"));
        let _ = writeln!(out, "| k | r | dim |\n|---|---|---|");
        for e in rows {
            let _ = writeln!(out, "| {} | {} | {} |", e.k, e.r, e.dim);
        }
    }
    if let Some(t) = &report.weight_tables {
        render_tables(&mut out, style, t);
    }
    if let Some(vp) = &report.vp_polynomials {
        render_vp(&mut out, style, vp);
    }
    render_warnings(&mut out, style, &report.warnings);
    out
}

pub fn render_jordan_markdown(report: &JordanReport, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}\n", style.heading(&format!("## Jordan data, n = {}", report.n)));
    let _ = writeln!(out, "| eigenvalue | size | count |\n|---|---|---|");
    for b in report.jordan.entries() {
        let _ = writeln!(out, "| {} | {} | {} |", b.eigenvalue, b.size, b.count);
    }
    let _ = writeln!(out, "\n- μ: {}\n- N₀: {}", report.milnor_number, report.n0);
    render_purity(&mut out, style, &report.purity);
    render_tables(&mut out, style, &report.weight_tables);
    render_vp(&mut out, style, &report.vp_polynomials);
    render_warnings(&mut out, style, &report.warnings);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> AnalysisReport {
        analyze_text(text, AnalyzeOptions::default()).unwrap()
    }

    #[test]
    fn figure_one() {
        let r = run("y^4 + x^3");
        assert!(r.flat && r.convenient && !r.smooth_at_0);
        let q = r.quasi_homogeneous.as_ref().unwrap();
        assert_eq!((q.weights.as_slice(), q.degree), (&[4, 3][..], 12));
        assert_eq!(r.pi_f, 0);
        assert!(r.purity.as_ref().unwrap().pure);
        let c = r.completed_jordan.as_ref().unwrap();
        assert_eq!(c.completed_by, Completion::CompletedByFlatness);
        assert_eq!(c.unipotent, BTreeMap::from([(1, 0)]));
        assert_eq!(milnor_number(c.jordan.as_ref().unwrap()), 6);
        assert_eq!(r.stalk_dims, Some(BTreeMap::from([(0, 1)])));
    }

    #[test]
    fn figure_two() {
        let r = run("y^4 + x*y + x^3");
        assert!(!r.flat);
        assert_eq!(r.pi_f, 1);
        assert_eq!(r.n0, Some(1));
        assert_eq!(r.weight_tables.as_ref().unwrap().ic_stalk.as_ref().unwrap().get(0, 0), 2);
    }

    #[test]
    fn t_type_is_partial_and_impure() {
        let r = run("x^2 + y^3 + z^7 + x*y*z");
        assert_eq!(r.interior_vertices.len(), 1);
        assert_eq!(r.interior_vertices[0].d, 1);
        assert_eq!(r.pi_f, 1);
        let p = r.partial_jordan.as_ref().unwrap();
        assert_eq!(p.unipotent[&2], Count::Known(1));
        assert_eq!(p.unipotent[&1], Count::Unknown);
        assert!(r.weight_tables.is_none() && r.completed_jordan.is_none());
        let rows = r.partial_ic_stalk.as_ref().unwrap();
        assert!(rows.contains(&PartialEntry { k: 1, r: 0, dim: Count::Known(1) }));
        assert!(rows.contains(&PartialEntry { k: 1, r: 1, dim: Count::Unknown }));
        assert!(!r.purity.as_ref().unwrap().pure);
        let json = r.to_json();
        assert!(json.contains("\"unknown\""));
    }

    #[test]
    fn non_flat_without_edge_points_is_undetermined() {
        let r = run("x^3 + y^3 + z^3 + x*y");
        assert!(r.convenient && !r.flat);
        assert_eq!(r.pi_f, 0);
        assert!(r.purity.is_none());
    }

    #[test]
    fn brieskorn() {
        let r = run("x^2 + y^2 + z^2");
        let q = r.quasi_homogeneous.as_ref().unwrap();
        assert_eq!((q.weights.as_slice(), q.degree), (&[1, 1, 1][..], 2));
        assert!(r.flat);
        let purity = r.purity.as_ref().unwrap();
        assert!(purity.pure);
        assert!(purity.witnesses.contains(&PurityReason::QuasiHomogeneous));
        let tables = r.weight_tables.as_ref().unwrap();
        assert_eq!(tables.link.as_ref().unwrap().get(3, 4), 1);
        let c = r.completed_jordan.as_ref().unwrap();
        assert_eq!(c.unipotent, BTreeMap::from([(1, 0), (2, 0)]));
        assert_eq!(tables.milnor_fiber.len(), 2);
        let half = tables.milnor_fiber.iter().find(|t| t.eigenvalue == Some("1/2".parse().unwrap())).unwrap();
        assert_eq!(half.get(2, 2), 1);
        assert_eq!(r.n0, Some(0));
    }

    #[test]
    fn not_convenient_keeps_geometry() {
        let r = run("x^2*y + y^3*x");
        assert!(!r.convenient && !r.formulas_available());
        assert!(r.partial_jordan.is_none() && r.weight_tables.is_none());
        assert!(!r.vertices.is_empty());
    }

    #[test]
    fn smooth_point() {
        let r = run("x + y^2*x");
        assert!(r.smooth_at_0 && r.formulas_available());
        assert!(r.purity.unwrap().pure);
    }

    #[test]
    fn assumed_faces_are_warned() {
        let r = analyze_text("x^2 + y^2 + z^2", AnalyzeOptions { assume_nondegenerate: true }).unwrap();
        let assumed = r.nondegeneracy.iter().filter(|fv| fv.verdict == Verdict::Assumed).count();
        let warned = r.warnings.iter().filter(|w| w.contains("assumed")).count();
        assert_eq!(assumed, warned);
        let r = run("x^2 + y^2 + z^2");
        assert_eq!(r.warnings.iter().filter(|w| w.contains("assumed")).count(), 1);
    }

    #[test]
    fn deterministic_json() {
        assert_eq!(run("y^4 + x*y + x^3").to_json(), run("y^4 + x*y + x^3").to_json());
    }

    #[test]
    fn jordan_examples() {
        let j = JordanBlockData::from_json(r#"{"n":3,"blocks":[{"eigenvalue":"0/1","size":2,"count":1},{"eigenvalue":"0/1","size":1,"count":2}]}"#).unwrap();
        let r = jordan_report(&j).unwrap();
        let ic = r.weight_tables.ic_stalk.as_ref().unwrap();
        assert_eq!(ic.row(1), BTreeMap::from([(0, 1), (1, 2)]));
        assert_eq!(r.vp_polynomials.ic_stalk, Some(LaurentPolynomialZ::monomial(1, -2)));
        assert_eq!(r.n0, 3);
        assert!(!r.purity.unwrap().pure);

        let j = JordanBlockData::from_json(r#"{"n":3,"blocks":[{"eigenvalue":"1/2","size":3,"count":1}]}"#).unwrap();
        let r = jordan_report(&j).unwrap();
        let m = r.weight_tables.milnor_fiber.iter().find(|t| t.eigenvalue == Some("1/2".parse().unwrap())).unwrap();
        assert_eq!(m.row(2), BTreeMap::from([(0, 1), (1, 0), (2, 1), (3, 0), (4, 1)]));
        assert_eq!(r.n0, 0);
        assert!(r.purity.unwrap().pure);

        let j = JordanBlockData::from_json(r#"{"n":3,"blocks":[{"eigenvalue":"0/1","size":3,"count":1}]}"#).unwrap();
        assert!(matches!(jordan_report(&j), Err(HodgeError::InvalidJordanData(_))));
    }

    #[test]
    fn markdown_color_toggle() {
        let r = run("x^2 + y^2 + z^2");
        let plain = render_analysis_markdown(&r, Style { color: false });
        let colored = render_analysis_markdown(&r, Style { color: true });
        assert!(!plain.contains('\x1b'));
        assert!(colored.contains("\x1b[32mpure"));
        assert!(plain.contains("### IC stalk"));
    }
}
