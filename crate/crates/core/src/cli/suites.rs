//! Named verification suites and their golden values.

use std::sync::Arc;

use crate::automorphisms::{canonical_splitting, exact_sequence_report, h1calc_check, out_datum, preserves_root_subgroups};
use crate::cohomology::{
    h1_bar_finite, h1_fox_finite, h1_reflection, h1_torus, h1_torus_all_methods, h1_truncated, h2_torus, restriction_torus,
    transfer_injective, tsurj_check, Method,
};
use crate::datum::{catalog, BaseRing, RootDatum};
use crate::ext::{
    gen210, minimal_lift_order, product_report, pullback, recover_marking, root_subgroup, root_subgroups, torsor, Action,
    NormalizerExtension, ReflectionExtension, TitsExtension,
};
use crate::groups::di4::gl3_f2_presentation;
use crate::linalg::RationalModZVector;

use super::report::{CheckRow, Observed, Origin};
use super::CliError;

pub const SUITES: [&str; 10] =
    ["gen210", "reconstr", "torsor", "tsurj", "h1calc", "exactseq", "splitting", "wdi4", "b2family", "products-pullback"];

pub const BUILTIN_SETS: [&str; 7] = ["rank2", "coxeter", "b2family", "all", "gen210", "exactseq", "odd"];

/// A stored expected value.
#[derive(Clone, Debug)]
pub struct Golden {
    pub datum: &'static str,
    pub operation: &'static str,
    pub expected: Observed,
    pub origin: Origin,
}

fn g(datum: &'static str, operation: &'static str, expected: Observed) -> Golden {
    Golden { datum, operation, expected, origin: Origin::Literature }
}

/// Golden values attached to a suite's default data.
pub fn registry(suite: &str) -> Vec<Golden> {
    use Observed::*;
    match suite {
        "reconstr" => vec![
            g("SU(2)", "order of a minimal lift of the reflection", Count(4)),
            g("SO(3)", "order of a minimal lift of the reflection", Count(2)),
        ],
        "torsor" => vec![
            g("SU(2)", "torsor sizes over reflection classes", Group(vec![1])),
            g("Spin(5)", "torsor sizes over reflection classes", Group(vec![1, 2])),
            g("DI(4)", "torsor sizes over reflection classes", Group(vec![2])),
        ],
        "exactseq" => vec![g("F4", "H1(W;T)", Group(vec![])), g("F4", "order of Out(D)", Count(1))],
        "wdi4" => vec![
            g("DI(4)", "H1(W;T) at k = 4", Group(vec![2])),
            g("DI(4)", "H1(W;T) at k = 5", Group(vec![2])),
            g("DI(4)", "H1(<s>;T) for each reflection class", Groups(vec![vec![2]])),
            g("GL3(F2)", "H1(G;F2^3) by Fox calculus", Group(vec![2])),
            g("GL3(F2)", "H1(G;F2^3) by bar cochains", Group(vec![2])),
            g("DI(4)", "index of the Spin(7) Weyl group", Count(7)),
            g("DI(4)", "restriction to the Spin(7) Weyl group is injective", Flag(true)),
        ],
        "b2family" => vec![
            g("Spin(5) @2", "H1(W;T)", Group(vec![2])),
            g("Spin(5) @2", "H1(<s1>;T)", Group(vec![2])),
            g("Spin(5) @2", "H1(<s2>;T)", Group(vec![])),
            g("Spin(5) @2", "H2(W;T)", Group(vec![2, 2])),
            g("Spin(5) @2", "H2 restriction to the SU(2)xSU(2) centralizer injects into (Z/2)^4", Flag(true)),
            g("SO(5) @2", "H2(W;T)", Group(vec![2, 2])),
            g("SO(5) @2", "H2 restriction to the two involution centralizers is an isomorphism", Flag(true)),
            g("(Spin(5) x S1)/C2 @2", "H1(W;T)", Group(vec![2, 2])),
            g("(Spin(5) x S1)/C2 @2", "H1 restriction to <s1> x <s2> is an isomorphism", Flag(true)),
        ],
        _ => Vec::new(),
    }
}

fn golden(suite: &str, datum: &str, operation: &str) -> Option<Golden> {
    registry(suite).into_iter().find(|x| x.datum == datum && x.operation == operation)
}

fn golden_row(suite: &str, datum: &str, operation: &str, observed: Observed) -> Option<CheckRow> {
    golden(suite, datum, operation).map(|x| CheckRow::new(datum, operation, x.expected, observed, x.origin))
}

/// Data for a named built-in set.
pub fn builtin_set(name: &str) -> Result<Vec<RootDatum>, CliError> {
    let names = |ns: &[&str]| ns.iter().map(|n| catalog::by_name(n)).collect::<Result<Vec<_>, _>>();
    let at = |ds: Vec<RootDatum>, p: i64| ds.iter().map(|d| d.base_change(BaseRing::Padic(p))).collect::<Result<Vec<_>, _>>();
    Ok(match name {
        "rank2" => names(&["SU(2)xSU(2)", "SU(3)", "Spin(5)", "G2"])?,
        "coxeter" => catalog::coxeter_catalog()?,
        "b2family" => catalog::b2_family()?,
        "all" => catalog::full_catalog()?,
        "gen210" => names(&["SU(2)", "SU(2)xSU(2)", "SU(3)", "Spin(5)", "G2", "Spin(7)"])?,
        "exactseq" => at(names(&["SU(2)", "SO(3)", "SU(3)", "Spin(5)", "SO(5)", "G2", "SU(2)xSO(3)"])?, 2)?,
        "odd" => {
            let base = names(&["SU(3)", "Spin(5)", "G2"])?;
            let mut out = Vec::new();
            for p in [3, 5, 7] {
                out.extend(at(base.clone(), p)?);
            }
            out
        }
        _ => return Err(CliError::Usage(format!("unknown built-in set {name}; expected one of {}", BUILTIN_SETS.join(", ")))),
    })
}

fn default_data(suite: &str) -> Result<Vec<RootDatum>, CliError> {
    Ok(match suite {
        "gen210" => builtin_set("gen210")?,
        "reconstr" => builtin_set("all")?,
        "torsor" => vec![catalog::su(2)?, catalog::spin(5)?, catalog::di4(catalog::DI4_PRECISION)?],
        "tsurj" | "splitting" => builtin_set("coxeter")?,
        "h1calc" => {
            let mut v = builtin_set("b2family")?;
            v.push(catalog::di4(catalog::DI4_PRECISION)?);
            v
        }
        "exactseq" => {
            let mut v = builtin_set("exactseq")?;
            v.push(catalog::f4()?);
            v.extend(builtin_set("odd")?);
            v
        }
        "products-pullback" => Vec::new(),
        _ => Vec::new(),
    })
}

/// Suites computing a fixed list of values, which take no datum.
pub fn is_fixed(suite: &str) -> bool {
    matches!(suite, "wdi4" | "b2family")
}

/// Run a suite on explicit data, or on its default data when `data` is `None`.
pub fn run(suite: &str, data: Option<Vec<RootDatum>>) -> Result<Vec<CheckRow>, CliError> {
    if !SUITES.contains(&suite) {
        return Err(CliError::Usage(format!("unknown suite {suite}; expected one of {}", SUITES.join(", "))));
    }
    if is_fixed(suite) {
        if data.is_some() {
            return Err(CliError::Inapplicable(format!("suite {suite} runs on its own fixed data")));
        }
        return if suite == "wdi4" { wdi4() } else { b2family() };
    }
    let defaults = data.is_none();
    if suite == "products-pullback" && defaults {
        return products_default();
    }
    let data = match data {
        Some(d) => d,
        None => default_data(suite)?,
    };
    let mut rows = Vec::new();
    for d in &data {
        rows.extend(match suite {
            "gen210" => gen210_rows(d)?,
            "reconstr" => reconstr_rows(d)?,
            "torsor" => torsor_rows(d)?,
            "tsurj" => tsurj_rows(d)?,
            "h1calc" => h1calc_rows(d)?,
            "exactseq" => exactseq_rows(d)?,
            "splitting" => splitting_rows(d)?,
            "products-pullback" => products_rows(d)?,
            _ => unreachable!("suite names are checked above"),
        });
    }
    Ok(rows)
}

fn reflection_extension(d: &RootDatum) -> Result<ReflectionExtension, CliError> {
    Ok(ReflectionExtension::new(d.weyl_arc(), Arc::new(d.reflections().clone()))?)
}

fn gen210_rows(d: &RootDatum) -> Result<Vec<CheckRow>, CliError> {
    let r = gen210(&reflection_extension(d)?)?;
    let name = d.name();
    let lit = Origin::Literature;
    Ok(vec![
        CheckRow::flag(name, "no lift of an involution squares to 1", r.no_involutions, lit),
        CheckRow::flag(name, "square roots of a reflection lie over it", r.projection, lit),
        CheckRow::flag(name, "ker(1 + s) = im(1 - s) on Z[reflections]", r.c_sigma_agree, lit),
        CheckRow::flag(name, "square roots form a coset with the expected products", r.coset_structure, lit),
    ]
    .into_iter()
    .map(|row| row.with_witnesses(r.failures.clone()))
    .collect())
}

fn reconstr_rows(d: &RootDatum) -> Result<Vec<CheckRow>, CliError> {
    let n = NormalizerExtension::new(d)?;
    let name = d.name();
    let mut bad = Vec::new();
    let mut orders = Vec::new();
    for r in 0..d.reflections().len() {
        let m = recover_marking(&n, r)?;
        if m != d.marking(r) {
            bad.push(format!("reflection {r}: recovered {m}, marking {}", d.marking(r)));
        }
        orders.push(minimal_lift_order(&n, r)?);
    }
    let mut rows =
        vec![CheckRow::flag(name, "markings recovered from the normalizer extension", bad.is_empty(), Origin::Literature)
            .with_witnesses(bad)];
    if let Some(&o) = orders.first() {
        rows.extend(golden_row("reconstr", name, "order of a minimal lift of the reflection", Observed::Count(o)));
    }
    Ok(rows)
}

fn torsor_rows(d: &RootDatum) -> Result<Vec<CheckRow>, CliError> {
    let n = NormalizerExtension::new(d)?;
    let name = d.name();
    let mut rows = Vec::new();
    let mut sizes = Vec::new();
    for (i, class) in d.reflections().classes.iter().enumerate() {
        let r = class[0];
        let t = torsor(&n, &root_subgroup(&n, r)?)?;
        let h = h1_reflection(d, r, Method::Direct)?;
        rows.push(CheckRow::new(
            name,
            &format!("torsor size equals |H1(<s>;T)| for class {i}"),
            Observed::Count(h.order() as i64),
            Observed::Count(t.len() as i64),
            Origin::Computed,
        ));
        rows.push(CheckRow::flag(name, &format!("translation action is free and transitive for class {i}"), t.verified, Origin::Trivial));
        sizes.push(t.len() as i64);
    }
    sizes.sort_unstable();
    rows.extend(golden_row("torsor", name, "torsor sizes over reflection classes", Observed::Group(sizes)));
    Ok(rows)
}

fn tsurj_rows(d: &RootDatum) -> Result<Vec<CheckRow>, CliError> {
    if d.is_truncated() || !d.is_coxeter_type() {
        return Err(CliError::Inapplicable(format!("{}: the surjectivity certificate needs a Coxeter-type exact datum", d.name())));
    }
    let c = tsurj_check(d)?;
    let w = vec![format!(
        "rank {} of {} simple reflections, kernel dimension {}, fixed dimension {}",
        c.rank_of_map, c.simple_reflections, c.kernel_dimension, c.fixed_dimension
    )];
    Ok(vec![
        CheckRow::flag(d.name(), "T maps onto the product of T0^-(s) over simple s", c.surjective, Origin::Literature).with_witnesses(w)
    ])
}

fn h1calc_rows(d: &RootDatum) -> Result<Vec<CheckRow>, CliError> {
    let n = NormalizerExtension::new(d)?;
    let roots = root_subgroups(&n)?;
    let c = h1calc_check(&n, &roots)?;
    let w: Vec<String> = c
        .counterexample
        .iter()
        .map(|f| f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .map(|s| format!("nonprincipal constrained derivation {s}"))
        .collect();
    Ok(vec![
        CheckRow::flag(d.name(), "derivations preserving root subgroups are principal", c.constrained_are_principal, Origin::Literature)
            .with_witnesses(w),
        CheckRow::flag(d.name(), "principal derivations preserve root subgroups", c.principal_satisfy_conditions, Origin::Trivial),
    ])
}

fn exactseq_rows(d: &RootDatum) -> Result<Vec<CheckRow>, CliError> {
    let r = exact_sequence_report(d)?;
    let name = d.name();
    let w = r.witnesses.clone();
    let mut rows = Vec::new();
    match (&r.h1_cross_check, golden("exactseq", name, "H1(W;T)")) {
        (_, Some(x)) => rows.push(CheckRow::new(name, "H1(W;T)", x.expected, Observed::Group(r.h1.clone()), x.origin)),
        (Some(c), None) => rows.push(CheckRow::new(
            name,
            "H1(W;T) from derivations agrees with Fox calculus",
            Observed::Group(c.clone()),
            Observed::Group(r.h1.clone()),
            Origin::Computed,
        )),
        (None, None) => {}
    }
    if let Some(o) = r.out_datum_order {
        rows.extend(golden_row("exactseq", name, "order of Out(D)", Observed::Count(o as i64)));
        rows.push(CheckRow::flag(name, "s is a homomorphic section", r.section, Origin::Literature).with_witnesses(w.clone()));
    }
    rows.push(CheckRow::flag(name, "no nonprincipal derivation is inner", r.injective, Origin::Literature).with_witnesses(w.clone()));
    rows.push(
        CheckRow::flag(name, "image of s preserves root subgroups and the kernel is H1", r.image, Origin::Literature)
            .with_witnesses(w.clone()),
    );
    if let Some(odd) = r.odd_degeneration {
        rows.push(CheckRow::flag(name, "every sampled automorphism preserves root subgroups", odd, Origin::Literature).with_witnesses(w));
    }
    Ok(rows)
}

fn splitting_rows(d: &RootDatum) -> Result<Vec<CheckRow>, CliError> {
    if d.is_truncated() || !d.is_coxeter_type() {
        return Err(CliError::Inapplicable(format!("{}: the splitting suite needs a Coxeter-type exact datum", d.name())));
    }
    let name = d.name();
    let n = NormalizerExtension::new(d)?;
    let t = TitsExtension::new(&n)?.report()?;
    let mut rows = vec![
        CheckRow::flag(name, "Tits generators satisfy the braid relations", t.braid_relations, Origin::Literature),
        CheckRow::flag(name, "left and right Tits multiplication agree", t.rules_agree, Origin::Trivial),
        CheckRow::flag(name, "Tits extension is equivalent to the normalizer extension", t.equivalent, Origin::Literature),
    ];
    if d.is_semisimple() {
        let roots = root_subgroups(&n)?;
        let out = out_datum(d)?;
        let lifts = out.elements.iter().map(|e| canonical_splitting(&n, &roots, e)).collect::<Result<Vec<_>, _>>()?;
        let mut bad = Vec::new();
        let mut moved = Vec::new();
        for (a, sa) in lifts.iter().enumerate() {
            if sa.phi.matrix != out.elements[a].matrix || !sa.is_homomorphism(&n) {
                bad.push(format!("s(#{a}) does not lie over its class"));
            }
            for (b, sb) in lifts.iter().enumerate() {
                if sa.compose(sb) != lifts[out.table[a][b]] {
                    bad.push(format!("s(#{a}) s(#{b}) != s(#{a} #{b})"));
                }
            }
            if !preserves_root_subgroups(&n, sa, &roots)? {
                moved.push(format!("s(#{a}) moves a root subgroup"));
            }
        }
        rows.push(
            CheckRow::flag(name, "canonical splitting is a homomorphic section", bad.is_empty(), Origin::Literature).with_witnesses(bad),
        );
        rows.push(
            CheckRow::flag(name, "canonical splitting preserves root subgroups", moved.is_empty(), Origin::Literature)
                .with_witnesses(moved),
        );
    }
    Ok(rows)
}

fn halves(v: &[&str]) -> RationalModZVector {
    RationalModZVector::parse(v).expect("literal torus point")
}

fn wdi4() -> Result<Vec<CheckRow>, CliError> {
    let d = catalog::di4(catalog::DI4_PRECISION)?;
    let name = "DI(4)";
    let w = d.weyl();
    let action = Action::of_group(w);
    let mut rows = Vec::new();
    for k in [4, 5] {
        let h = h1_truncated(w, w.generators(), &action, 2, k)?.group;
        let op = if k == 4 { "H1(W;T) at k = 4" } else { "H1(W;T) at k = 5" };
        rows.extend(golden_row("wdi4", name, op, Observed::Group(h.invariant_factors().to_vec())));
    }
    let mut per_class = Vec::new();
    for (i, class) in d.reflections().classes.iter().enumerate() {
        let t = h1_reflection(&d, class[0], Method::Truncated)?.invariant_factors;
        let direct = h1_reflection(&d, class[0], Method::Direct)?.invariant_factors;
        rows.push(CheckRow::new(
            name,
            &format!("H1(<s>;T) for class {i}: truncation agrees with T^-/T0^-"),
            Observed::Group(direct),
            Observed::Group(t.clone()),
            Origin::Computed,
        ));
        per_class.push(t);
    }
    per_class.dedup();
    rows.extend(golden_row("wdi4", name, "H1(<s>;T) for each reflection class", Observed::Groups(per_class)));

    let (gl, pres) = gl3_f2_presentation()?;
    let natural = Action { dim: 3, matrices: gl.elements().to_vec(), modulus: Some(2) };
    let fox = h1_fox_finite(&gl, &pres, &natural, 2, 1)?;
    let bar = h1_bar_finite(&gl, &natural, 2, 1)?;
    rows.extend(golden_row("wdi4", "GL3(F2)", "H1(G;F2^3) by Fox calculus", Observed::Group(fox.invariant_factors().to_vec())));
    rows.extend(golden_row("wdi4", "GL3(F2)", "H1(G;F2^3) by bar cochains", Observed::Group(bar.invariant_factors().to_vec())));

    let c = d.centralizer_subdatum(&[halves(&["1/2", "0", "0"])])?;
    let index = (w.order() / c.weyl().order()) as i64;
    rows.extend(golden_row("wdi4", name, "index of the Spin(7) Weyl group", Observed::Count(index)));
    let sub = d.weyl_elements_of(&c).ok_or_else(|| CliError::Inconsistent("centralizer is not a subgroup".into()))?;
    let inj = transfer_injective(&d, &sub, 2, catalog::DI4_PRECISION / 2 - 1)?;
    rows.extend(golden_row("wdi4", name, "restriction to the Spin(7) Weyl group is injective", Observed::Flag(inj)));
    Ok(rows)
}

fn methods_agree(d: &RootDatum) -> Result<CheckRow, CliError> {
    let all = h1_torus_all_methods(d)?;
    let first = all[0].invariant_factors.clone();
    let w: Vec<String> = all.iter().map(|r| r.to_string()).collect();
    let agree = all.iter().all(|r| r.invariant_factors == first);
    Ok(CheckRow::flag(d.name(), "H1(W;T) agrees across methods", agree, Origin::Computed).with_witnesses(w))
}

fn b2family() -> Result<Vec<CheckRow>, CliError> {
    let p2 = BaseRing::Padic(2);
    let suite = "b2family";
    let mut rows = Vec::new();
    let factors = |r: crate::cohomology::CohomologyResult| Observed::Group(r.invariant_factors);

    let spin5 = catalog::spin(5)?.base_change(p2)?;
    let name = spin5.name().to_string();
    rows.extend(golden_row(suite, &name, "H1(W;T)", factors(h1_torus(&spin5, Method::Bockstein)?)));
    rows.push(methods_agree(&spin5)?);
    // s1 is the class with nontrivial cohomology
    let mut per: Vec<Vec<i64>> = spin5
        .reflections()
        .classes
        .iter()
        .map(|c| h1_reflection(&spin5, c[0], Method::Direct).map(|r| r.invariant_factors))
        .collect::<Result<_, _>>()?;
    per.sort_by(|a, b| b.cmp(a));
    rows.extend(golden_row(suite, &name, "H1(<s1>;T)", Observed::Group(per[0].clone())));
    rows.extend(golden_row(suite, &name, "H1(<s2>;T)", Observed::Group(per.get(1).cloned().unwrap_or_default())));
    rows.extend(golden_row(suite, &name, "H2(W;T)", factors(h2_torus(&spin5)?)));
    let su2sq = catalog::product(&catalog::su(2)?, &catalog::su(2)?)?.base_change(p2)?;
    let mut cent = None;
    for a in spin5.two_torsion_points() {
        let c = spin5.centralizer_subdatum(&[a])?;
        if c.is_isomorphic(&su2sq)?.is_some() {
            cent = Some(c);
            break;
        }
    }
    let cent = cent.ok_or_else(|| CliError::Inconsistent("no SU(2)xSU(2) involution centralizer".into()))?;
    let sub = spin5.weyl_elements_of(&cent).expect("centralizer is a subgroup");
    let map = restriction_torus(&spin5, 2, &[sub])?;
    let ok = map.injective && map.targets == vec![vec![2, 2, 2, 2]];
    rows.extend(
        golden_row(suite, &name, "H2 restriction to the SU(2)xSU(2) centralizer injects into (Z/2)^4", Observed::Flag(ok))
            .map(|r| r.with_witnesses(vec![format!("{map:?}")])),
    );

    let so5 = catalog::so(5)?.base_change(p2)?;
    let name = so5.name().to_string();
    rows.extend(golden_row(suite, &name, "H2(W;T)", factors(h2_torus(&so5)?)));
    let subs = [halves(&["1/2", "1/2"]), halves(&["1/2", "0"])]
        .into_iter()
        .map(|a| so5.centralizer_subdatum(&[a]).map(|c| so5.weyl_elements_of(&c).expect("centralizer is a subgroup")))
        .collect::<Result<Vec<_>, _>>()?;
    let map = restriction_torus(&so5, 2, &subs)?;
    let ok = map.isomorphism && map.targets == vec![vec![2], vec![2]];
    rows.extend(
        golden_row(suite, &name, "H2 restriction to the two involution centralizers is an isomorphism", Observed::Flag(ok))
            .map(|r| r.with_witnesses(vec![format!("{map:?}")])),
    );

    let q = catalog::spin5_circle_quotient()?.base_change(p2)?;
    let name = q.name().to_string();
    rows.extend(golden_row(suite, &name, "H1(W;T)", factors(h1_torus(&q, Method::Bockstein)?)));
    rows.push(methods_agree(&q)?);
    let subs: Vec<Vec<usize>> = q.reflections().classes.iter().map(|c| vec![0, q.reflections().get(c[0]).element]).collect();
    let map = restriction_torus(&q, 1, &subs)?;
    rows.extend(
        golden_row(suite, &name, "H1 restriction to <s1> x <s2> is an isomorphism", Observed::Flag(map.isomorphism))
            .map(|r| r.with_witnesses(vec![format!("{map:?}")])),
    );
    Ok(rows)
}

fn pullback_rows(d: &RootDatum) -> Result<Vec<CheckRow>, CliError> {
    let big = reflection_extension(d)?;
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut rows = Vec::new();
    if d.is_truncated() {
        return Ok(rows);
    }
    for a in d.two_torsion_points() {
        let refl = d.centralizer_reflections(std::slice::from_ref(&a));
        if refl.is_empty() || refl.len() == d.reflections().len() || seen.contains(&refl) {
            continue;
        }
        seen.push(refl.clone());
        let gens: Vec<usize> = refl.iter().map(|&r| d.reflections().get(r).element).collect();
        let p = pullback(d.name(), &big, &gens)?;
        let label = format!("pullback to the centralizer of {a}");
        rows.push(CheckRow::flag(
            d.name(),
            &format!("{label}: reflection part is the subgroup's extension"),
            p.restricted_matches,
            Origin::Literature,
        ));
        rows.push(CheckRow::new(
            d.name(),
            &format!("{label}: complement splits exactly when stabilizers fix the outside lines"),
            Observed::Flag(p.complement_predicted),
            Observed::Flag(p.complement_splits),
            Origin::Computed,
        ));
    }
    Ok(rows)
}

fn product_rows(a: &RootDatum, b: &RootDatum) -> Result<Vec<CheckRow>, CliError> {
    let r = product_report(a, b)?;
    let name = format!("{} x {}", a.name(), b.name());
    let mut rows =
        vec![CheckRow::flag(&name, "extension of a product is the sum of the factor extensions", r.splits_as_product, Origin::Literature)];
    for (i, p) in r.factor_pullbacks.iter().enumerate() {
        rows.push(CheckRow::flag(
            &name,
            &format!("pullback to factor {i} is the factor extension plus a split part"),
            p.passed(),
            Origin::Literature,
        ));
    }
    Ok(rows)
}

fn products_rows(d: &RootDatum) -> Result<Vec<CheckRow>, CliError> {
    let mut rows = pullback_rows(d)?;
    let dec = d.decompose()?;
    if dec.factors.len() >= 2 {
        let rest = catalog::product_all(&dec.factors[1..])?;
        rows.extend(product_rows(&dec.factors[0], &rest)?);
    }
    Ok(rows)
}

fn products_default() -> Result<Vec<CheckRow>, CliError> {
    let mut rows = Vec::new();
    for (a, b) in [("SU(2)", "SO(3)"), ("SU(2)", "SU(2)"), ("SU(3)", "SO(3)"), ("Spin(5)", "S1")] {
        rows.extend(product_rows(&catalog::by_name(a)?, &catalog::by_name(b)?)?);
    }
    for name in ["Spin(5)", "SO(5)", "SU(3)", "G2", "Spin(7)"] {
        rows.extend(pullback_rows(&catalog::by_name(name)?)?);
    }
    Ok(rows)
}
