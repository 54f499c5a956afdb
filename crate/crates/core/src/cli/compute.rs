use serde::Serialize;

use crate::automorphisms::out_datum;
use crate::cohomology::{
    h1_reflection, h1_torus, h1_torus_all_methods, h1_torus_at, h2_torus, truncation_levels, CohomologyResult, Method,
};
use crate::datum::{BaseRing, RootDatum};
use crate::ext::{minimal_lift_order, recover_marking, root_subgroup, test_triples, torsor, NormalizerExtension};
use crate::linalg::RationalModZVector;

use super::report::{CheckRow, Origin, Report};
use super::{load_datum, parse_point, read_spec, CliError, ComputeArgs, ComputeKind, MethodArg};

/// Refuse bar computations whose sparse coboundary would exceed `mb` megabytes.
pub fn check_budget(d: &RootDatum, degree: usize, mb: u64) -> Result<(), CliError> {
    let w = d.weyl().order() as f64;
    // one sparse row with degree + 2 entries per cochain of degree + 1
    let bytes = d.rank() as f64 * (w - 1.0).powi(degree as i32 + 1) * (degree as f64 + 2.0) * 16.0;
    if bytes > mb as f64 * 1e6 {
        return Err(CliError::Budget(format!(
            "{}: degree {degree} bar cochains need about {:.0} MB, budget {mb} MB",
            d.name(),
            bytes / 1e6
        )));
    }
    Ok(())
}

pub(super) fn run(a: &ComputeArgs) -> Result<Report, CliError> {
    let ring = a.ring.base_ring()?;
    let command = format!("compute {}", format!("{:?}", a.kind).to_lowercase());
    if a.kind == ComputeKind::Validate {
        return validate(a, ring, &command);
    }
    let (d, text) = load_datum(&a.datum, ring)?;
    let mut inputs = vec![text, d.ring().to_string()];
    inputs.extend(flag_inputs(a));
    let other = match &a.other {
        Some(p) => {
            let (o, t) = load_datum(p, ring)?;
            inputs.push(t);
            Some(o)
        }
        None => None,
    };
    let mut report = Report::new(&command, &inputs);
    match a.kind {
        ComputeKind::Validate => unreachable!("handled above"),
        ComputeKind::Center => center(&d, &mut report)?,
        ComputeKind::Cohomology => cohomology(&d, a, &mut report)?,
        ComputeKind::Normalizer => normalizer(&d, &mut report)?,
        ComputeKind::Out => {
            let out = out_datum(&d)?;
            report.result(&OutRow { order: out.order(), out });
        }
        ComputeKind::Centralizer => centralizer(&d, a, other.as_ref(), &mut report)?,
        ComputeKind::Isomorphic => {
            let o = other.ok_or_else(|| CliError::Usage("isomorphic needs --other FILE".into()))?;
            let map = d.is_isomorphic(&o)?;
            report.result(&IsoRow { first: d.name().into(), second: o.name().into(), isomorphic: map.is_some(), map });
        }
    }
    Ok(report)
}

fn flag_inputs(a: &ComputeArgs) -> Vec<String> {
    vec![
        format!("deg={}", a.deg),
        format!("coeff={}", a.coeff),
        format!("reflection={:?}", a.reflection),
        format!("method={:?}", a.method),
        format!("trunc={:?}", a.trunc),
        format!("points={:?}", a.points),
    ]
}

fn validate(a: &ComputeArgs, ring: Option<BaseRing>, command: &str) -> Result<Report, CliError> {
    let (mut spec, text) = read_spec(&a.datum)?;
    if let Some(r) = ring {
        spec.ring = r;
    }
    let mut report = Report::new(command, &[text, spec.ring.to_string()]);
    let v = spec.validate();
    let name = spec.name.clone().unwrap_or_else(|| "datum".into());
    for c in &v.checks {
        report.check(CheckRow::flag(&name, &c.name, c.passed, Origin::Trivial).with_witnesses(c.violations.clone()));
    }
    report.result(&v);
    Ok(report)
}

#[derive(Serialize)]
struct OutRow {
    order: usize,
    #[serde(flatten)]
    out: crate::automorphisms::OutDatum,
}

#[derive(Serialize)]
struct IsoRow {
    first: String,
    second: String,
    isomorphic: bool,
    map: Option<crate::datum::LatticeMap>,
}

#[derive(Serialize)]
struct CenterRow {
    datum: String,
    summary: String,
    #[serde(flatten)]
    detail: crate::datum::CenterSplitting,
}

fn center(d: &RootDatum, report: &mut Report) -> Result<(), CliError> {
    let s = d.center_splitting()?;
    report.check(CheckRow::flag(d.name(), "T^W is the center plus (Z/2)^s", s.consistent, Origin::Literature));
    report.result(&CenterRow {
        datum: d.name().into(),
        summary: format!("Z = {}, T^W = {}, V = {}, s = {}", s.center, s.fixed_points, s.complement, s.so_odd_factors),
        detail: s,
    });
    Ok(())
}

fn method(m: MethodArg) -> Option<Method> {
    match m {
        MethodArg::All => None,
        MethodArg::Bockstein => Some(Method::Bockstein),
        MethodArg::Fox => Some(Method::Fox),
        MethodArg::Truncated => Some(Method::Truncated),
        MethodArg::Direct => Some(Method::Direct),
    }
}

fn cohomology(d: &RootDatum, a: &ComputeArgs, report: &mut Report) -> Result<(), CliError> {
    if a.coeff != "torus" {
        return Err(CliError::Usage(format!("--coeff {}: only torus coefficients are supported", a.coeff)));
    }
    if let Some(mb) = a.output.budget {
        check_budget(d, a.deg, mb)?;
    }
    let rows: Vec<CohomologyResult> = match (a.deg, a.reflection) {
        (1, Some(r)) => {
            if r >= d.reflections().len() {
                return Err(CliError::Usage(format!("reflection {r} out of range ({} reflections)", d.reflections().len())));
            }
            match method(a.method) {
                Some(m) => vec![h1_reflection(d, r, m)?],
                None => {
                    let mut v = vec![h1_reflection(d, r, Method::Direct)?, h1_reflection(d, r, Method::Truncated)?];
                    if !d.is_truncated() {
                        v.push(h1_reflection(d, r, Method::Bockstein)?);
                    }
                    v
                }
            }
        }
        (1, None) => match (method(a.method), a.trunc) {
            (Some(Method::Truncated) | None, Some(k)) => {
                let levels: Vec<(i64, u32)> = truncation_levels(d).into_iter().map(|(p, _)| (p, k)).collect();
                vec![h1_torus_at(d, &levels)?]
            }
            (Some(m), _) => vec![h1_torus(d, m)?],
            (None, None) => h1_torus_all_methods(d)?,
        },
        (2, None) => vec![h2_torus(d)?],
        (deg, _) => return Err(CliError::Usage(format!("degree {deg} is not supported here; use 1, or 2 without --reflection"))),
    };
    if rows.len() > 1 {
        let first = &rows[0].invariant_factors;
        let agree = rows.iter().all(|r| &r.invariant_factors == first);
        let w = rows.iter().map(|r| r.to_string()).collect();
        report.check(CheckRow::flag(d.name(), "methods agree", agree, Origin::Computed).with_witnesses(w));
    }
    for r in &rows {
        report.result(r);
    }
    Ok(())
}

#[derive(Serialize)]
struct ReflectionRow {
    reflection: usize,
    element: usize,
    marking: RationalModZVector,
    recovered_marking: RationalModZVector,
    minimal_lift_order: i64,
    torsor_size: usize,
    root_subgroup_generator: crate::ext::ExtElement,
}

#[derive(Serialize)]
struct NormalizerRow {
    datum: String,
    split: bool,
    reflections: Vec<ReflectionRow>,
}

fn normalizer(d: &RootDatum, report: &mut Report) -> Result<(), CliError> {
    let n = NormalizerExtension::new(d)?;
    let triples = test_triples(d.weyl().order(), 4000, 7);
    let bad = n.cocycle_violation(triples);
    report.check(
        CheckRow::flag(d.name(), "cocycle identity on tested triples", bad.is_none(), Origin::Trivial)
            .with_witnesses(bad.iter().map(|t| format!("{t:?}")).collect()),
    );
    let mut rows = Vec::new();
    let mut mismatched = Vec::new();
    for r in 0..d.reflections().len() {
        let rs = root_subgroup(&n, r)?;
        let recovered = recover_marking(&n, r)?;
        if recovered != d.marking(r) {
            mismatched.push(format!("reflection {r}"));
        }
        rows.push(ReflectionRow {
            reflection: r,
            element: d.reflections().get(r).element,
            marking: d.marking(r),
            recovered_marking: recovered,
            minimal_lift_order: minimal_lift_order(&n, r)?,
            torsor_size: torsor(&n, &rs)?.len(),
            root_subgroup_generator: rs.x,
        });
    }
    report.check(
        CheckRow::flag(d.name(), "markings recovered from the extension", mismatched.is_empty(), Origin::Literature)
            .with_witnesses(mismatched),
    );
    report.result(&NormalizerRow { datum: d.name().into(), split: n.splits()?, reflections: rows });
    Ok(())
}

#[derive(Serialize)]
struct CentralizerRow {
    datum: String,
    points: Vec<RationalModZVector>,
    reflections: Vec<usize>,
    weyl_order: usize,
    index: usize,
    subdatum: crate::datum::DatumSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    isomorphic_to_other: Option<bool>,
}

fn centralizer(d: &RootDatum, a: &ComputeArgs, other: Option<&RootDatum>, report: &mut Report) -> Result<(), CliError> {
    if a.points.is_empty() {
        return Err(CliError::Usage("centralizer needs at least one --point".into()));
    }
    let points = a.points.iter().map(|s| parse_point(s)).collect::<Result<Vec<_>, _>>()?;
    if let Some(p) = points.iter().find(|p| p.len() != d.rank()) {
        return Err(CliError::Usage(format!("torus point {p} does not have length {}", d.rank())));
    }
    let c = d.centralizer_subdatum(&points)?;
    let iso = match other {
        Some(o) => Some(c.is_isomorphic(o)?.is_some()),
        None => None,
    };
    report.result(&CentralizerRow {
        datum: d.name().into(),
        reflections: d.centralizer_reflections(&points),
        points,
        weyl_order: c.weyl().order(),
        index: d.weyl().order() / c.weyl().order(),
        subdatum: c.canonical_spec(),
        isomorphic_to_other: iso,
    });
    Ok(())
}
