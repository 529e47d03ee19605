//! Input parsing and deterministic machine-readable reports.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fan_search::{
    enumerate_sf, test_pseudofan_conjecture, validate_fan_matrix, Fan, FanMatrix, IndexSet,
};
use crate::groebner_fan::{degree_projection, enumerate_psf, PsfResult};
use crate::linalg::IntMatrix;
use crate::polyhedra::Cone;
use crate::secondary::{
    area_accounting, bunch_of_fan, cf_cover, fan_matrix_of, gale_dual, movable_cone, nef_cones,
    WeightMatrix,
};
use crate::toric::{check_fiber_minima, groebner_region, has_unit_binomial, TermOrder};

#[derive(Deserialize)]
struct RawInput {
    #[serde(rename = "V")]
    v: Option<Vec<Vec<i64>>>,
    #[serde(rename = "Q")]
    q: Option<Vec<Vec<i64>>>,
}

/// A fan matrix with a Gale dual, from either side.
#[derive(Clone, Debug)]
pub struct Input {
    pub v: FanMatrix,
    pub q: WeightMatrix,
}

fn matrix_from(rows: &[Vec<i64>], name: &str) -> Result<IntMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidInput(format!(
            "\"{name}\" must be a nonempty rectangular integer matrix"
        )));
    }
    Ok(IntMatrix::from_i64_rows(rows))
}

impl Input {
    pub fn from_v(v: FanMatrix) -> Result<Self> {
        let q = gale_dual(&v)?;
        Ok(Self { v, q })
    }

    pub fn from_q(q: &IntMatrix) -> Result<Self> {
        let v = fan_matrix_of(q)?;
        let q = WeightMatrix::new(q.clone(), &v)?;
        Ok(Self { v, q })
    }

    /// Parses `{"V": [[…]]}` or `{"Q": [[…]]}`.
    pub fn parse(json: &str) -> Result<Self> {
        let raw: RawInput = serde_json::from_str(json)?;
        match (raw.v, raw.q) {
            (Some(v), None) => Self::from_v(validate_fan_matrix(&matrix_from(&v, "V")?)?),
            (None, Some(q)) => Self::from_q(&matrix_from(&q, "Q")?),
            _ => Err(Error::InvalidInput(
                "input needs exactly one of \"V\" and \"Q\"".into(),
            )),
        }
    }
}

fn num(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn vector(v: &[BigInt]) -> Vec<Value> {
    v.iter().map(num).collect()
}

fn matrix(m: &IntMatrix) -> Vec<Vec<Value>> {
    m.to_rows().iter().map(|r| vector(r)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConeInfo {
    pub dim: usize,
    pub rays: Vec<Vec<Value>>,
    pub lineality: Vec<Vec<Value>>,
}

impl ConeInfo {
    pub fn of(c: &Cone) -> Self {
        let mut rays: Vec<Vec<BigInt>> = c.rays().to_vec();
        rays.sort();
        Self {
            dim: c.dim(),
            rays: rays.iter().map(|r| vector(r)).collect(),
            lineality: c.lineality().iter().map(|r| vector(r)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixInfo {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub is_cf: bool,
    pub v: Vec<Vec<Value>>,
    pub q: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InitialIdealInfo {
    pub generators: Vec<Vec<i64>>,
    pub text: String,
    pub reduced_gb: Vec<String>,
    pub weight: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FanEntry {
    /// 1-based position in canonical order.
    pub index: usize,
    pub max_cones: Vec<IndexSet>,
    pub in_sf: bool,
    pub in_psf: bool,
    pub projective: bool,
    /// Label of the chamber in the plot, for projective fans.
    pub chamber: Option<usize>,
    pub nef_cone: ConeInfo,
    pub initial_ideals: Vec<InitialIdealInfo>,
    pub radical: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroebnerInfo {
    pub toric_ideal: Vec<String>,
    pub homogenized_ideal: Vec<String>,
    /// Gröbner cones of the homogenized ideal with no power of the extra variable.
    pub homogenized_cones: usize,
    /// Of those, the ones surviving the variable-power filter.
    pub surviving_homogenized_cones: usize,
    pub initial_ideals_before_filter: usize,
    pub initial_ideals: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FanReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<(u64, u64)>,
    pub matrix: MatrixInfo,
    pub effective_cone: ConeInfo,
    pub movable_cone: ConeInfo,
    pub anticanonical_class: Vec<Value>,
    pub sf_count: Option<usize>,
    pub psf_count: Option<usize>,
    pub fans: Vec<FanEntry>,
    pub groebner: Option<GroebnerInfo>,
    pub checks: Vec<Check>,
}

impl FanReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mi = &self.matrix;
        let _ = writeln!(s, "command: {}", self.command);
        if let Some((p, q)) = self.family {
            let _ = writeln!(s, "family: p={p} q={q}");
        }
        let _ = writeln!(
            s,
            "matrix: n={} m={} r={} {}",
            mi.n,
            mi.m,
            mi.r,
            if mi.is_cf { "CF" } else { "not CF" }
        );
        let _ = writeln!(s, "V = {}", rows_text(&mi.v));
        let _ = writeln!(s, "Q = {}", rows_text(&mi.q));
        let _ = writeln!(
            s,
            "anticanonical class: {}",
            row_text(&self.anticanonical_class)
        );
        let _ = writeln!(
            s,
            "effective cone rays: {}",
            rows_text(&self.effective_cone.rays)
        );
        let _ = writeln!(
            s,
            "movable cone rays: {}",
            rows_text(&self.movable_cone.rays)
        );
        if let Some(c) = self.sf_count {
            let _ = writeln!(s, "SF: {c} fans");
        }
        if let Some(c) = self.psf_count {
            let _ = writeln!(s, "PSF: {c} fans");
        }
        if let Some(g) = &self.groebner {
            let _ = writeln!(s, "toric ideal: ({})", g.toric_ideal.join(", "));
            let _ = writeln!(s, "homogenized ideal: ({})", g.homogenized_ideal.join(", "));
            let _ = writeln!(
                s,
                "homogenized Gröbner cones: {} ({} surviving); initial ideals: {} before filter, {} after",
                g.homogenized_cones, g.surviving_homogenized_cones, g.initial_ideals_before_filter, g.initial_ideals
            );
        }
        for f in &self.fans {
            let cones: Vec<String> = f.max_cones.iter().map(|c| format!("{c:?}")).collect();
            let _ = writeln!(s, "fan {}: {}", f.index, cones.join(" "));
            let status = if f.projective {
                "projective"
            } else {
                "not projective"
            };
            let chamber = f
                .chamber
                .map(|c| format!(", chamber {c}"))
                .unwrap_or_default();
            let _ = writeln!(
                s,
                "  {status}{chamber}; nef cone dim {} rays {}",
                f.nef_cone.dim,
                rows_text(&f.nef_cone.rays)
            );
            if !f.in_sf || !f.in_psf {
                let _ = writeln!(s, "  in SF: {}, in PSF: {}", f.in_sf, f.in_psf);
            }
            for i in &f.initial_ideals {
                let _ = writeln!(s, "  initial ideal {}", i.text);
            }
        }
        for c in &self.checks {
            let _ = writeln!(
                s,
                "check {}: {} ({})",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.detail
            );
        }
        s
    }
}

fn row_text(r: &[Value]) -> String {
    let parts: Vec<String> = r.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn rows_text(rows: &[Vec<Value>]) -> String {
    let parts: Vec<String> = rows.iter().map(|r| row_text(r)).collect();
    parts.join(" ")
}

/// What to run.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub sf: bool,
    pub psf: bool,
    pub verify_overlap: bool,
    /// Degree bound of the fiber-minimum oracle; 0 disables it.
    pub fiber_bound: usize,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Point of the simplex section through the relative interior of a cone.
fn section_key(c: &Cone) -> Vec<BigRational> {
    let p = c.relative_interior_point();
    let s: BigInt = p.iter().sum();
    if s.is_zero() {
        return p.into_iter().map(BigRational::from_integer).collect();
    }
    p.into_iter()
        .map(|x| BigRational::new(x, s.clone()))
        .collect()
}

/// Chamber labels `1, 2, …` of full-dimensional nef cones, by the position of
/// their section interior points.
pub fn chamber_labels(nef: &[Cone], r: usize) -> Vec<Option<usize>> {
    let mut order: Vec<usize> = (0..nef.len()).filter(|&i| nef[i].dim() == r).collect();
    order.sort_by_key(|&i| section_key(&nef[i]));
    let mut labels = vec![None; nef.len()];
    for (k, i) in order.into_iter().enumerate() {
        labels[i] = Some(k + 1);
    }
    labels
}

fn psf_checks(
    input: &Input,
    psf: &PsfResult,
    nef: &[Cone],
    fans: &[Fan],
    bound: usize,
    checks: &mut Vec<Check>,
) {
    let v = &input.v;
    let q = &input.q;
    let region = groebner_region(v, q.matrix());
    checks.push(check(
        "groebner_region",
        region.agree() && region.contains_orthant(),
        "dual of U, projection and preimage of the effective cone coincide",
    ));
    checks.push(check(
        "radical_consistency",
        psf.records.iter().all(|r| r.radical == r.initial.radical()),
        "radical of each initial ideal is the Stanley-Reisner ideal of its fan",
    ));
    checks.push(check(
        "unit_binomial",
        psf.records.iter().all(|r| has_unit_binomial(&r.reduced_gb)),
        "every reduced Gröbner basis contains some x^u - 1",
    ));
    let proj = degree_projection(&q.matrix().to_rows());
    let refined = psf.records.iter().all(|r| {
        let k = fans.iter().position(|f| *f == r.fan);
        k.is_some_and(|k| {
            r.homogenized_cones
                .iter()
                .all(|c| nef[k].contains_cone(&c.image(&proj)))
        })
    });
    checks.push(check(
        "refinement",
        refined,
        "projected Gröbner cones lie in the chamber of their fan",
    ));
    if bound > 0 {
        let failures: usize = psf
            .records
            .iter()
            .map(|r| {
                check_fiber_minima(v, &r.reduced_gb, &TermOrder::new(r.weight.clone()), bound)
                    .failures
                    .len()
            })
            .sum();
        checks.push(check(
            "fiber_minima",
            failures == 0,
            format!("degree bound {bound}, {failures} failures"),
        ));
    }
}

/// Runs the requested pipelines and assembles a report.
pub fn analyze(command: &str, input: &Input, opts: Options) -> Result<FanReport> {
    let v = &input.v;
    let q = &input.q;
    let mut checks = Vec::new();

    let sf = if opts.sf {
        let fans = enumerate_sf(v, opts.verify_overlap)?;
        let valid = fans.iter().all(|f| f.check(v).is_ok());
        checks.push(check(
            "sf_fans_valid",
            valid,
            "every fan passes the direct fan check",
        ));
        Some(fans)
    } else {
        None
    };
    let psf = if opts.psf {
        Some(enumerate_psf(v)?)
    } else {
        None
    };

    let mut fans: Vec<Fan> = sf
        .iter()
        .flatten()
        .chain(psf.iter().flat_map(|p| p.fans.iter()))
        .cloned()
        .collect();
    fans.sort();
    fans.dedup();
    let nef = nef_cones(&fans, q);
    let labels = chamber_labels(&nef, q.r());
    let mov = movable_cone(q);
    let eff = q.effective_cone();

    let bunches_ok = fans
        .iter()
        .all(|f| bunch_of_fan(f, q).is_bunch().unwrap_or(false));
    checks.push(check(
        "bunch_condition",
        bunches_ok,
        "bunch cones pairwise meet in their interiors",
    ));
    let nested = nef.iter().all(|c| mov.contains_cone(c)) && eff.contains_cone(&mov);
    checks.push(check(
        "nef_in_movable",
        nested,
        "nef cone within movable cone within effective cone",
    ));

    if let Some(p) = &psf {
        psf_checks(input, p, &nef, &fans, opts.fiber_bound, &mut checks);
    }
    if let (Some(s), Some(p)) = (&sf, &psf) {
        let projective: Vec<&Fan> = s
            .iter()
            .filter(|f| nef[fans.binary_search(f).unwrap()].dim() == q.r())
            .collect();
        let subset = p.fans.iter().all(|f| s.contains(f));
        checks.push(check(
            "psf_subset_sf",
            subset,
            format!("{} of {} fans", p.fans.len(), s.len()),
        ));
        let equal =
            projective.len() == p.fans.len() && projective.iter().all(|f| p.fans.contains(f));
        checks.push(check(
            "psf_equals_projective_sf",
            equal,
            format!(
                "{} projective fans in SF, {} in PSF",
                projective.len(),
                p.fans.len()
            ),
        ));
        if q.r() == 3 && q.is_nonnegative() {
            let acc = area_accounting(&nef, q)?;
            let detail = format!(
                "movable area {}, chamber sum {}",
                acc.movable_area, acc.chamber_area_sum
            );
            checks.push(check("chamber_areas", acc.holds(), detail));
        }
    }

    let entries: Vec<FanEntry> = fans
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let records: Vec<_> = psf
                .iter()
                .flat_map(|p| p.records.iter())
                .filter(|r| r.fan == *f)
                .collect();
            FanEntry {
                index: i + 1,
                max_cones: f.max_cones().iter().cloned().collect(),
                in_sf: sf.as_ref().is_none_or(|s| s.contains(f)),
                in_psf: psf.as_ref().is_none_or(|p| p.fans.contains(f)),
                projective: nef[i].dim() == q.r(),
                chamber: labels[i],
                nef_cone: ConeInfo::of(&nef[i]),
                initial_ideals: records
                    .iter()
                    .map(|r| InitialIdealInfo {
                        generators: r.initial.generators().to_vec(),
                        text: r.initial.to_string(),
                        reduced_gb: r.reduced_gb.iter().map(ToString::to_string).collect(),
                        weight: vector(&r.weight),
                    })
                    .collect(),
                radical: records.first().map(|r| r.radical.generators().to_vec()),
            }
        })
        .collect();

    let groebner = psf.as_ref().map(|p| GroebnerInfo {
        toric_ideal: p
            .ideal
            .generators()
            .iter()
            .map(ToString::to_string)
            .collect(),
        homogenized_ideal: p
            .homogenized
            .generators()
            .iter()
            .map(ToString::to_string)
            .collect(),
        homogenized_cones: p.groebner_cones,
        surviving_homogenized_cones: p.surviving_cones(),
        initial_ideals_before_filter: p.before_filter,
        initial_ideals: p.records.len(),
    });

    Ok(FanReport {
        command: command.into(),
        family: None,
        matrix: MatrixInfo {
            n: v.n(),
            m: v.m(),
            r: q.r(),
            is_cf: v.is_cf(),
            v: matrix(v.matrix()),
            q: matrix(q.matrix()),
        },
        effective_cone: ConeInfo::of(&eff),
        movable_cone: ConeInfo::of(&mov),
        anticanonical_class: vector(&q.anticanonical_class()),
        sf_count: sf.as_ref().map(Vec::len),
        psf_count: psf.as_ref().map(|p| p.fans.len()),
        fans: entries,
        groebner,
        checks,
    })
}

/// Report of the `validate` command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violation: Option<String>,
    pub n: usize,
    pub m: usize,
    pub r: Option<usize>,
    pub is_cf: Option<bool>,
    pub q: Option<Vec<Vec<Value>>>,
    pub cf_cover: Option<Vec<Vec<Value>>>,
}

impl ValidationReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match (&self.violation, self.r, self.is_cf) {
            (None, Some(r), Some(cf)) => {
                let kind = if cf {
                    "valid F-matrix, CF"
                } else {
                    "valid F-matrix, not CF"
                };
                let _ = writeln!(s, "{kind}, n={} m={} r={r}", self.n, self.m);
            }
            (Some(v), ..) => {
                let _ = writeln!(s, "invalid: {v}");
            }
            _ => {}
        }
        if let Some(q) = &self.q {
            let _ = writeln!(s, "Q = {}", rows_text(q));
        }
        if let Some(c) = &self.cf_cover {
            let _ = writeln!(s, "CF cover = {}", rows_text(c));
        }
        s
    }
}

/// Validates a raw matrix given as `{"V": …}` or `{"Q": …}`.
pub fn validate_json(json: &str) -> Result<ValidationReport> {
    let raw: RawInput = serde_json::from_str(json)?;
    let v = match (raw.v, raw.q) {
        (Some(v), None) => matrix_from(&v, "V")?,
        (None, Some(q)) => crate::linalg::integer_kernel_basis(&matrix_from(&q, "Q")?),
        _ => {
            return Err(Error::InvalidInput(
                "input needs exactly one of \"V\" and \"Q\"".into(),
            ))
        }
    };
    let (n, m) = (v.rows(), v.cols());
    match validate_fan_matrix(&v) {
        Ok(fm) => {
            let input = Input::from_v(fm.clone())?;
            let cover = cf_cover(&fm)?;
            Ok(ValidationReport {
                valid: true,
                violation: None,
                n,
                m,
                r: Some(input.q.r()),
                is_cf: Some(fm.is_cf()),
                q: Some(matrix(input.q.matrix())),
                cf_cover: Some(matrix(cover.matrix())),
            })
        }
        Err(e @ Error::AxiomViolation { .. }) => Ok(ValidationReport {
            valid: false,
            violation: Some(e.to_string()),
            n,
            m,
            r: None,
            is_cf: None,
            q: None,
            cf_cover: None,
        }),
        Err(e) => Err(e),
    }
}

/// Report of the `conjecture` command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub pseudofans: usize,
    pub fans: usize,
    pub counterexamples: Vec<crate::fan_search::PseudofanCounterexample>,
}

pub fn conjecture(input: &Input) -> Result<ConjectureReport> {
    let rep = test_pseudofan_conjecture(&input.v)?;
    Ok(ConjectureReport {
        pseudofans: rep.pseudofans,
        fans: rep.fans,
        counterexamples: rep.counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BH: &str = r#"{"V": [[1,0,0,0,-1,1],[0,1,0,-1,-1,2],[0,0,1,-1,0,1]]}"#;

    fn all() -> Options {
        Options {
            sf: true,
            psf: true,
            verify_overlap: true,
            fiber_bound: 3,
        }
    }

    #[test]
    fn parse_rejects_both_or_neither() {
        assert!(Input::parse(r#"{"V": [[1,0,-1],[0,1,-1]], "Q": [[1,1,1]]}"#).is_err());
        assert!(Input::parse("{}").is_err());
        assert!(Input::parse("{\"V\": [[1,0],[0]]}").is_err());
        assert!(matches!(Input::parse("not json"), Err(Error::Json(_))));
    }

    #[test]
    fn q_input_gives_same_fans() {
        let a = Input::parse(BH).unwrap();
        let b = Input::parse(r#"{"Q": [[1,1,0,0,1,0],[0,1,1,1,0,0],[0,0,0,1,1,1]]}"#).unwrap();
        let ra = analyze("compare", &a, all()).unwrap();
        let rb = analyze("compare", &b, all()).unwrap();
        assert_eq!(ra.sf_count, Some(8));
        assert_eq!(rb.sf_count, Some(8));
        assert_eq!(ra.psf_count, Some(6));
        assert_eq!(rb.psf_count, Some(6));
    }

    #[test]
    fn bh_compare_report() {
        let input = Input::parse(BH).unwrap();
        let rep = analyze("compare", &input, all()).unwrap();
        assert!(rep.all_checks_pass(), "{:?}", rep.checks);
        let non: Vec<&FanEntry> = rep.fans.iter().filter(|f| !f.projective).collect();
        assert_eq!(non.len(), 2);
        for f in non {
            assert!(!f.in_psf);
            assert_eq!(f.nef_cone.dim, 1);
            // anticanonical class of this Q, which is primitive up to a factor
            let anti: Vec<i64> = rep
                .anticanonical_class
                .iter()
                .map(|x| x.as_i64().unwrap())
                .collect();
            let g = anti.iter().fold(0, |a, &b| num_integer::gcd(a, b));
            let ray: Vec<Value> = anti.iter().map(|x| Value::from(x / g)).collect();
            assert_eq!(f.nef_cone.rays, vec![ray]);
        }
        let labels: Vec<usize> = rep.fans.iter().filter_map(|f| f.chamber).collect();
        assert_eq!(labels.len(), 6);
        assert_eq!(
            rep.to_json(),
            analyze("compare", &input, all()).unwrap().to_json()
        );
    }

    #[test]
    fn validation_reports() {
        let ok = validate_json(BH).unwrap();
        assert!(ok.to_text().starts_with("valid F-matrix, CF, n=3 m=6 r=3"));
        let quadrant = validate_json(r#"{"V": [[1,0],[0,1]]}"#).unwrap();
        assert!(!quadrant.valid);
        assert!(quadrant.violation.unwrap().contains("(d)"));
    }
}
