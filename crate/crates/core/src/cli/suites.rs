//! Verification suites. Each runs on a loaded input file when one is given
//! and on a fixed set of built-in instances otherwise.

use std::sync::Arc;

use serde_json::json;

use super::input::Loaded;
use crate::algebra::{Algebra, AlgebraKind, Element};
use crate::derivation::{Derivation, Tri};
use crate::error::{Error, Result};
use crate::exactmath::{Field, UniPoly};
use crate::kerrad::{
    exppoly_radical_check, factor_closed_model, is_reduced, kernel_power_radical_check, ker_op, matrix_violation_check, ms_witness_verify,
    radical_annihilator_check, radical_member, reduced_kernel_check, truncated_operator_matrix,
    word_algebra_counterexample_check, MsWitnessOutcome,
};
use crate::report::{Check, Report, Status};
use crate::sample::Sampler;
use crate::spectral::{
    char_p_nilpotent_check, derivation_image_checks, extremal_component_check, extremal_witness_search, find_extremal,
    homogeneous_values_from_dilations, is_extremal, joint_grading, kernel_homogeneity_check,
    radical_in_degree_zero_check, shifted_leibniz_check, weights_to_json,
};
use crate::vandermonde::{
    alpha_recursion, column_reduction_check, f_df_nilpotent_check, factorial_hankel_check, vandermonde_det_check,
    vandermonde_radical_check,
};
use crate::weylop::{
    ad_expansion_check, ad_lowering_check, multi_indices, polynomials_killing_powers, power_kernel_check,
    test_points, tuple_is_canonical, DiffOperator, OperatorPolynomial,
};

pub const SUITES: [&str; 6] = ["weyl", "grading", "radical", "derivations", "vandermonde", "all"];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub trials: usize,
    pub budget: u32,
    pub m_max: usize,
    pub n_max: usize,
    pub assert_no_common_zero: bool,
}

impl Default for SuiteOptions {
    fn default() -> SuiteOptions {
        SuiteOptions {
            seed: 0,
            trials: 20,
            budget: 64,
            m_max: 8,
            n_max: 8,
            assert_no_common_zero: false,
        }
    }
}

pub fn run_suite(name: &str, input: Option<&Loaded>, opts: &SuiteOptions) -> Result<Report> {
    let mut root = Sampler::new(opts.seed);
    let mut one = |suite: &str| -> Result<Report> {
        let mut s = root.fork(suite);
        match suite {
            "weyl" => weyl(input, opts, &mut s),
            "grading" => grading(input, opts, &mut s),
            "radical" => radical(input, opts, &mut s),
            "derivations" => derivations(input, opts, &mut s),
            "vandermonde" => vandermonde(input, opts, &mut s),
            other => Err(Error::BadDescriptor(format!("unknown suite {other:?}"))),
        }
    };
    if name == "all" {
        let mut report = Report::new();
        for suite in &SUITES[..5] {
            report.extend(one(suite)?.prefixed(suite));
        }
        Ok(report)
    } else {
        one(name)
    }
}

// Built-in instances.

fn bidegree_algebra() -> Result<(Algebra, Arc<Vec<Derivation>>)> {
    let a = Algebra::truncated(Field::Rational, &["x1", "x2"], &[2, 3])?;
    let ders = vec![
        Derivation::euler(&a, &[1, 0])?.with_name("x1*d1"),
        Derivation::euler(&a, &[0, 1])?.with_name("x2*d2"),
    ];
    Ok((a, Arc::new(ders)))
}

/// `A_n = ℚ[x_1..x_n]/(x_1^2, x_2^3, …, x_n^{n+1})`.
pub fn staircase_algebra(n: usize) -> Result<Algebra> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let powers: Vec<u32> = (2..=n as u32 + 1).collect();
    Algebra::truncated(Field::Rational, &refs, &powers)
}

/// `ℚ[x]/(x² − x)` in the basis `{one, x}`.
pub fn idempotent_algebra() -> Result<Algebra> {
    let q = Field::Rational;
    let (o, z) = (q.one(), q.zero());
    let table = vec![
        vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
        vec![vec![z.clone(), o.clone()], vec![z, o]],
    ];
    Algebra::structure_constants(q, &["one", "x"], table, 0)
}

fn word_algebra() -> Result<Loaded> {
    let a = Algebra::noncommutative(Field::Rational, &["X", "Y"], &["YY"], None)?;
    let ders = Arc::new(vec![Derivation::partial(&a, "X")?.with_name("dX")]);
    let p = OperatorPolynomial::parse_terms(&a, 1, &[(vec![0], "1"), (vec![1], "-X")])?;
    Ok(Loaded {
        name: "word algebra Q<X,Y>/(YY)".into(),
        elements: vec![a.parse("X*Y")?, a.parse("X + Y*X")?],
        witness: Some((a.parse("X*Y")?, a.var("X")?, a.one())),
        operator: Some(p),
        derivations: ders,
        algebra: a,
    })
}

fn exp_poly_ddx() -> Result<(Algebra, Arc<Vec<Derivation>>)> {
    let e = Algebra::exp_poly();
    let d = Derivation::d_dx(&e)?;
    Ok((e, Arc::new(vec![d])))
}

/// Scalar operators on exponential polynomials with rational roots.
fn exp_poly_operators(e: &Algebra) -> Vec<OperatorPolynomial> {
    [&[2, -3, 1][..], &[0, 0, 1], &[0, -1, 1], &[1, 1], &[0, 1]]
        .iter()
        .map(|c| OperatorPolynomial::univariate(e, &UniPoly::from_ints(Field::Rational, c)))
        .collect()
}

// Random instances.

fn random_scalar_polynomial(alg: &Algebra, arity: usize, degree: usize, s: &mut Sampler) -> Result<OperatorPolynomial> {
    loop {
        let terms: Vec<(Vec<u32>, i64)> = multi_indices(arity, degree)
            .into_iter()
            .filter_map(|a| {
                let c = if s.coin(0.6) { s.small_int() } else { 0 };
                (c != 0).then_some((a, c))
            })
            .collect();
        let p = OperatorPolynomial::from_ints(alg, arity, &terms)?;
        if p.degree().unwrap_or(0) >= 1 {
            return Ok(p);
        }
    }
}

/// A random element of the span of `polys`.
fn combine(alg: &Algebra, arity: usize, polys: &[OperatorPolynomial], s: &mut Sampler) -> Result<OperatorPolynomial> {
    let mut acc = OperatorPolynomial::zero(alg, arity);
    for p in polys {
        let c = alg.scalar(s.scalar(alg.field()));
        let scaled: Vec<(Vec<u32>, Element)> = p.terms().iter().map(|(k, v)| (k.clone(), &c * v)).collect();
        acc = acc.add(&OperatorPolynomial::from_terms(alg, arity, scaled)?);
    }
    Ok(acc)
}

/// `(P, u)` with `P(D)(u^m) = 0` for `1 ≤ m ≤ deg P + 1`, `deg P ≥ 1`.
pub fn power_kernel_instance(
    alg: &Algebra,
    ders: &Arc<Vec<Derivation>>,
    degree: usize,
    s: &mut Sampler,
) -> Result<Option<(OperatorPolynomial, Element)>> {
    for _ in 0..10 {
        let u = s.element(alg);
        let basis = polynomials_killing_powers(&u, ders, degree, degree as u32 + 1)?;
        if basis.is_empty() {
            continue;
        }
        let p = combine(alg, ders.len(), &basis, s)?;
        if p.degree().unwrap_or(0) >= 1 {
            return Ok(Some((p, u)));
        }
    }
    Ok(None)
}

fn samples(l: &Loaded, count: usize, s: &mut Sampler) -> Vec<Element> {
    let mut out = l.elements.clone();
    out.extend((0..count).map(|_| s.element(&l.algebra)));
    out
}

fn default_operator(l: &Loaded) -> Result<OperatorPolynomial> {
    match &l.operator {
        Some(p) => Ok(p.clone()),
        None => {
            let n = l.derivations.len();
            let terms: Vec<(Vec<u32>, i64)> = multi_indices(n, 1).into_iter().map(|a| (a, 1)).collect();
            OperatorPolynomial::from_ints(&l.algebra, n, &terms)
        }
    }
}

fn require_derivations(l: &Loaded) -> Result<()> {
    if l.derivations.is_empty() {
        return Err(Error::BadDescriptor(format!("{} declares no derivations", l.name)));
    }
    Ok(())
}

// Suites.

fn weyl_on(l: &Loaded, opts: &SuiteOptions, s: &mut Sampler) -> Result<Report> {
    require_derivations(l)?;
    let alg = &l.algebra;
    let ders = &l.derivations;
    let p = default_operator(l)?;
    let phi = DiffOperator::from_polynomial(&p, ders.clone())?;
    let us = samples(l, opts.trials, s);
    let extra: Vec<Element> = (0..4).map(|_| s.element(alg)).collect();
    let points = test_points(alg, 3, &extra)?;
    let mut report = Report::new();
    for k in 1..=4 {
        let checks = us.iter().map(|u| ad_expansion_check(u, &phi, k, &points)).collect::<Result<Vec<_>>>()?;
        report.push(Check::aggregate(format!("{}: ad-power expansion k={k}", l.name), checks));
    }
    for (i, d) in ders.iter().enumerate() {
        let mut checks = Vec::new();
        for m in 1..=4 {
            for _ in 0..opts.trials.div_ceil(4) {
                let (lam, mu) = (alg.field().int(s.small_int()), alg.field().int(s.small_int()));
                let pairs = vec![(s.element(alg), s.element(alg))];
                checks.push(shifted_leibniz_check(d, &lam, &mu, m, &pairs)?);
            }
        }
        report.push(Check::aggregate(format!("{}: shifted Leibniz rule for D{}", l.name, i + 1), checks));
    }
    if alg.is_commutative() && tuple_is_canonical(alg, ders)? {
        let checks = us.iter().map(|u| ad_lowering_check(u, &p, ders.clone(), &points)).collect::<Result<Vec<_>>>()?;
        let flat: Vec<Check> = checks.into_iter().flat_map(|r| r.checks).collect();
        report.push(Check::aggregate(format!("{}: ad lowers operator order", l.name), flat));
        if alg.dim().is_some() {
            let mut checks = Vec::new();
            for t in 0..opts.trials {
                if let Some((q, u)) = power_kernel_instance(alg, ders, 1 + t % 3, s)? {
                    checks.extend(power_kernel_check(&q, ders.clone(), &u)?.checks);
                }
            }
            report.push(Check::aggregate(format!("{}: power kernel identity on generated instances", l.name), checks));
        }
    }
    Ok(report)
}

fn weyl(input: Option<&Loaded>, opts: &SuiteOptions, s: &mut Sampler) -> Result<Report> {
    if let Some(l) = input {
        return weyl_on(l, opts, s);
    }
    let (a, ders) = bidegree_algebra()?;
    let bideg = Loaded {
        name: a.to_string(),
        operator: Some(OperatorPolynomial::from_ints(&a, 2, &[(vec![1, 1], 1), (vec![0, 2], -1), (vec![0, 0], 2)])?),
        elements: vec![a.parse("x1 + x2")?],
        witness: None,
        derivations: ders,
        algebra: a,
    };
    let mut report = weyl_on(&bideg, opts, s)?;
    report.extend(weyl_on(&word_algebra()?, opts, s)?);
    Ok(report)
}

fn grading_on(l: &Loaded, opts: &SuiteOptions, s: &mut Sampler) -> Result<Report> {
    require_derivations(l)?;
    let alg = &l.algebra;
    let g = joint_grading(l.derivations.clone())?;
    let n = g.arity();
    let mut report = g.invariants_check()?.prefixed(&l.name);

    let weights = g.weights();
    let mut agree = Vec::new();
    for w in &weights {
        let lp = is_extremal(w, &weights)?;
        let brute = extremal_witness_search(w, &weights, 12)?.is_none();
        agree.push(Check::verdict("extremality", lp == brute, format!("weight {}", crate::spectral::fmt_weight(w))));
    }
    let found = find_extremal(&weights)?;
    report.push(
        Check::aggregate(format!("{}: extremality by LP agrees with enumeration", l.name), agree)
            .with_counterexample(json!({"weights": weights_to_json(&weights), "first_extremal": weights_to_json(&[found])})),
    );

    let mut polys: Vec<OperatorPolynomial> = l.operator.iter().filter(|p| p.is_scalar()).cloned().collect();
    for _ in 0..opts.trials {
        polys.push(random_scalar_polynomial(alg, n, 2, s)?);
    }
    let (mut homog, mut dil, mut extremal) = (Vec::new(), Vec::new(), Vec::new());
    for p in &polys {
        homog.extend(kernel_homogeneity_check(p, &g)?.checks);
        let w = s.choose(&weights).clone();
        let got = homogeneous_values_from_dilations(p, &w)?;
        let direct = (0..got.len()).map(|k| p.homogeneous(k).eval_scalar(&w)).collect::<Result<Vec<_>>>()?;
        dil.push(Check::verdict("dilations", got == direct, format!("P = {p}")));
        let v = ker_op(&DiffOperator::from_polynomial(p, l.derivations.clone())?)?;
        let u = if s.coin(0.5) { s.element_of(alg, &v) } else { s.element(alg) };
        extremal.extend(extremal_component_check(p, &g, &u)?.checks);
    }
    report.push(Check::aggregate(format!("{}: kernels of P(D) are homogeneous", l.name), homog));
    report.push(Check::aggregate(format!("{}: homogeneous parts recovered from dilations", l.name), dil));
    report.push(Check::aggregate(format!("{}: extremal components of radical members", l.name), extremal));

    if alg.field().is_rational() && is_reduced(alg)? {
        for p in &polys[..polys.len().min(3)] {
            report.extend(
                radical_in_degree_zero_check(p, l.derivations.clone(), s, opts.trials, opts.assert_no_common_zero)?
                    .prefixed(&format!("{} P = {p}", l.name)),
            );
        }
    } else {
        report.push(Check::new(
            format!("{}: radical lies in the degree-zero component", l.name),
            Status::NotApplicable,
            "algebra is not reduced",
        ));
    }
    Ok(report)
}

fn grading(input: Option<&Loaded>, opts: &SuiteOptions, s: &mut Sampler) -> Result<Report> {
    if let Some(l) = input {
        if matches!(l.algebra.kind(), AlgebraKind::ExpPoly) {
            let mut report = Report::new();
            for p in l.operator.iter().cloned().chain(exp_poly_operators(&l.algebra)) {
                report.extend(
                    radical_in_degree_zero_check(&p, l.derivations.clone(), s, opts.trials, opts.assert_no_common_zero)?
                        .prefixed(&format!("P = {p}")),
                );
            }
            return Ok(report);
        }
        return grading_on(l, opts, s);
    }
    let (a, ders) = bidegree_algebra()?;
    let bideg = Loaded {
        name: a.to_string(),
        operator: None,
        elements: vec![],
        witness: None,
        derivations: ders,
        algebra: a,
    };
    let mut report = grading_on(&bideg, opts, s)?;
    let (e, dx) = exp_poly_ddx()?;
    for p in exp_poly_operators(&e) {
        report.extend(radical_in_degree_zero_check(&p, dx.clone(), s, opts.trials, false)?.prefixed(&format!("exp polys, P = {p}")));
    }
    let f3 = Algebra::product_of_fields(Field::Rational, 3)?;
    let zero = Arc::new(vec![Derivation::zero(&f3), Derivation::zero(&f3)]);
    for terms in [&[(vec![1, 1], 1)][..], &[(vec![1, 0], 1), (vec![0, 0], 1)]] {
        let p = OperatorPolynomial::from_ints(&f3, 2, terms)?;
        report.extend(
            radical_in_degree_zero_check(&p, zero.clone(), s, opts.trials, opts.assert_no_common_zero)?
                .prefixed(&format!("Q^3, P = {p}")),
        );
    }
    Ok(report)
}

/// Truncates a word algebra so that the witness powers up to `m_max` survive,
/// then checks the premise, the kernel, and the expected violation.
fn word_witness_check(l: &Loaded, m_max: usize) -> Result<Report> {
    let (a, b, c) = l.witness.clone().ok_or_else(|| Error::BadDescriptor("no witness given".into()))?;
    let p = default_operator(l)?;
    let phi = DiffOperator::from_polynomial(&p, l.derivations.clone())?;
    let mut report = Report::new();
    let mut premise = None;
    let mut image = None;
    for m in 1..=m_max as u32 {
        let am = a.pow(m);
        if premise.is_none() && (am.is_zero() || !phi.apply(&am)?.is_zero()) {
            premise = Some(m);
        }
        if image.is_none() && phi.apply(&(&(&b * &am) * &c))?.is_zero() {
            image = Some(m);
        }
    }
    let range = format!("1 <= m <= {m_max}");
    report.push(Check::verdict(
        format!("{}: nonzero powers of a = {a} lie in Ker P(D)", l.name),
        premise.is_none(),
        premise.map_or(range.clone(), |m| format!("fails at m = {m}")),
    ));
    report.push(Check::verdict(
        format!("{}: b a^m c leaves Ker P(D)", l.name),
        image.is_none(),
        image.map_or(range, |m| format!("b a^{m} c is in the kernel")),
    ));

    if l.algebra.dim().is_some() {
        let v = ker_op(&phi)?;
        let w = ms_witness_verify(&v, &a, &b, &c, None)?;
        report.push(Check::verdict(
            format!("{}: witness confirms Ker P(D) is not a Mathieu subspace", l.name),
            w.outcome == MsWitnessOutcome::ViolationConfirmed,
            format!("exact eventual check, premise {}", w.premise_holds),
        ));
        return Ok(report);
    }
    if !matches!(l.algebra.kind(), AlgebraKind::Noncommutative { .. }) {
        return Ok(report);
    }
    let mut words = Vec::new();
    for m in 1..=m_max as u32 {
        let am = a.pow(m);
        words.push(&(&b * &am) * &c);
        words.push(am);
    }
    let trunc = factor_closed_model(&l.algebra, &words)?;
    let v = truncated_operator_matrix(&trunc, &phi)?.kernel();
    let w = ms_witness_verify(&v, &trunc.project(&a), &trunc.project(&b), &trunc.project(&c), Some(m_max))?;
    report.push(Check::verdict(
        format!("{}: witness confirms Ker P(D) is not a Mathieu subspace", l.name),
        w.outcome == MsWitnessOutcome::ViolationConfirmed,
        format!(
            "expected violation; factor-closed model of dim {}, premise {}, first violation at m = {}",
            trunc.dim().unwrap_or(0),
            if w.premise_holds { "holds" } else { "fails" },
            w.violating_power.map_or("none".into(), |m| m.to_string())
        ),
    ));
    Ok(report)
}

fn radical_on(l: &Loaded, opts: &SuiteOptions, s: &mut Sampler) -> Result<Report> {
    let alg = &l.algebra;
    let mut report = Report::new();
    if l.witness.is_some() {
        report.extend(word_witness_check(l, opts.m_max)?);
    }
    let Some(p) = &l.operator else {
        return Ok(report);
    };
    match alg.kind() {
        AlgebraKind::ExpPoly => report.extend(exppoly_radical_check(p, s, opts.trials)?.prefixed(&l.name)),
        _ if alg.is_commutative() && alg.dim().is_some() && alg.field().is_rational() => {
            report.extend(radical_annihilator_check(p, l.derivations.clone(), s, opts.trials)?.prefixed(&l.name));
        }
        _ => {}
    }
    if alg.dim().is_some() && !l.elements.is_empty() {
        let v = ker_op(&DiffOperator::from_polynomial(p, l.derivations.clone())?)?;
        let mut verdicts = Vec::new();
        for u in &l.elements {
            let d = radical_member(u, &v)?;
            verdicts.push(json!({"u": u.to_string(), "in_radical": d.in_radical(), "stabilization_index": d.stabilization_index}));
        }
        report.push(
            Check::pass(format!("{}: radical membership of listed elements", l.name), format!("dim Ker P(D) = {}", v.dim()))
                .with_counterexample(json!(verdicts)),
        );
    }
    Ok(report)
}

fn radical(input: Option<&Loaded>, opts: &SuiteOptions, s: &mut Sampler) -> Result<Report> {
    if let Some(l) = input {
        return radical_on(l, opts, s);
    }
    let mut report = word_algebra_counterexample_check(opts.m_max)?.prefixed("word algebra Q<X,Y>/(YY)");
    report.push(matrix_violation_check()?);
    let (e, _) = exp_poly_ddx()?;
    for p in exp_poly_operators(&e) {
        report.extend(exppoly_radical_check(&p, s, opts.trials)?.prefixed("exp polys"));
    }
    let (a, _) = bidegree_algebra()?;
    let euler = Arc::new(vec![Derivation::euler(&a, &[1, 1])?]);
    for terms in [&[(vec![0], 1), (vec![1], -2), (vec![2], 1)][..], &[(vec![2], 1)], &[(vec![1], 1), (vec![0], -3)]] {
        let p = OperatorPolynomial::from_ints(&a, 1, terms)?;
        report.extend(radical_annihilator_check(&p, euler.clone(), s, opts.trials)?.prefixed(&format!("{a}, P = {p}")));
    }
    let f3 = Algebra::product_of_fields(Field::Rational, 3)?;
    report.extend(reduced_kernel_check(&Derivation::zero(&f3), 3, s, opts.trials)?.prefixed("Q^3"));
    Ok(report)
}

fn classification_check(d: &Derivation, budget: usize) -> Result<Check> {
    let c = d.classify(budget)?;
    let t = |x: Tri| format!("{x:?}").to_lowercase();
    Ok(Check::pass(
        format!("classification of {}", d.name()),
        format!(
            "nilpotent: {}, locally nilpotent: {}, locally finite: {}, algebraic: {}{}",
            t(c.nilpotent),
            t(c.locally_nilpotent),
            t(c.locally_finite),
            t(c.algebraic),
            c.minimal_polynomial.map_or(String::new(), |m| format!(", minimal polynomial {m}"))
        ),
    ))
}

fn kernel_power_instances(d: &Derivation, elements: &[Element]) -> Result<Check> {
    let mut checks = Vec::new();
    for a in elements {
        for r in 1..=3 {
            checks.push(kernel_power_radical_check(d, a, r)?);
        }
    }
    Ok(Check::aggregate(format!("D^r kills low powers of a implies Da = 0 ({})", d.name()), checks))
}

fn derivations(input: Option<&Loaded>, opts: &SuiteOptions, s: &mut Sampler) -> Result<Report> {
    let mut report = Report::new();
    if let Some(l) = input {
        for d in l.derivations.iter() {
            report.push(classification_check(d, opts.budget as usize)?);
            let alg = d.algebra();
            if alg.is_commutative() && alg.dim().is_some() {
                report.extend(derivation_image_checks(d, s, opts.trials)?);
            }
            if alg.field().is_rational() && is_reduced(alg).unwrap_or(false) {
                let pts = samples(l, 4, s);
                report.push(kernel_power_instances(d, &pts)?);
            }
        }
        return Ok(report);
    }
    let mut degrees = Vec::new();
    for n in 1..=4 {
        let a = staircase_algebra(n)?;
        let d = Derivation::euler(&a, &vec![1; n])?.with_name(&format!("sum x_i d_i on A_{n}"));
        report.push(classification_check(&d, opts.budget as usize)?);
        report.extend(derivation_image_checks(&d, s, opts.trials)?.prefixed(&format!("A_{n}")));
        degrees.push(d.minimal_polynomial()?.degree().unwrap_or(0));
    }
    report.push(Check::verdict(
        "minimal polynomial degree grows along A_1..A_4",
        degrees.windows(2).all(|w| w[0] < w[1]),
        format!("degrees {degrees:?}"),
    ));
    for a in [Algebra::product_of_fields(Field::Rational, 3)?, idempotent_algebra()?] {
        report.extend(derivation_image_checks(&Derivation::zero(&a), s, opts.trials)?.prefixed(&a.to_string()));
    }
    for p in [3, 5] {
        report.extend(char_p_nilpotent_check(p, 50)?);
    }
    let (e, dx) = exp_poly_ddx()?;
    let pts = ["3", "x", "E(1)", "x*E(2) + 1", "-2"].iter().map(|t| e.parse(t)).collect::<Result<Vec<_>>>()?;
    report.push(kernel_power_instances(&dx[0], &pts)?);
    let f3 = Algebra::product_of_fields(Field::Rational, 3)?;
    let pts: Vec<Element> = (0..4).map(|_| s.element(&f3)).collect();
    report.push(kernel_power_instances(&Derivation::zero(&f3), &pts)?);
    Ok(report)
}

fn vandermonde_instances(
    alg: &Algebra,
    d: &Derivation,
    fs: &[Element],
    n_max: usize,
    s: &mut Sampler,
) -> Result<(Vec<Check>, Vec<Check>, Vec<Check>)> {
    let (mut det, mut red, mut rad) = (Vec::new(), Vec::new(), Vec::new());
    for f in fs {
        for n in 1..=n_max.min(5) {
            det.extend(vandermonde_det_check(f, d, n)?.checks);
        }
        for k in 2..=n_max.clamp(2, 5) {
            red.push(column_reduction_check(f, d, k)?);
        }
    }
    let ders = Arc::new(vec![d.clone()]);
    if alg.dim().is_some() {
        for (i, _) in fs.iter().enumerate() {
            if let Some((p, f)) = power_kernel_instance(alg, &ders, 1 + i % 2, s)? {
                rad.extend(vandermonde_radical_check(&p, d, &f)?.checks);
                rad.extend(f_df_nilpotent_check(&p, d, &f)?.checks);
            }
        }
    }
    Ok((det, red, rad))
}

fn vandermonde(input: Option<&Loaded>, opts: &SuiteOptions, s: &mut Sampler) -> Result<Report> {
    let mut report = factorial_hankel_check(opts.n_max)?;
    let tables = alpha_recursion(12);
    let bad = tables.iter().find(|t| t.coefficients.iter().sum::<num_bigint::BigInt>() != num_bigint::BigInt::from(1));
    report.push(Check::verdict(
        "column-reduction coefficients sum to 1 for k <= 12",
        bad.is_none(),
        format!("alpha_(12,j) = {:?}", tables.last().unwrap().coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    ));

    let (mut det, mut red, mut rad) = (Vec::new(), Vec::new(), Vec::new());
    let mut push = |(a, b, c): (Vec<Check>, Vec<Check>, Vec<Check>)| {
        det.extend(a);
        red.extend(b);
        rad.extend(c);
    };
    if let Some(l) = input {
        require_derivations(l)?;
        if !l.algebra.is_commutative() {
            return Err(Error::Noncommutative);
        }
        let fs = samples(l, opts.trials.min(10), s);
        push(vandermonde_instances(&l.algebra, &l.derivations[0], &fs, opts.n_max, s)?);
        if let Some(p) = l.operator.as_ref().filter(|p| p.arity() == 1) {
            for f in &fs {
                rad.extend(vandermonde_radical_check(p, &l.derivations[0], f)?.checks);
                rad.extend(f_df_nilpotent_check(p, &l.derivations[0], f)?.checks);
            }
        }
    } else {
        for _ in 0..opts.trials {
            let a = s.commutative_algebra(12);
            let d = s.any_derivation(&a)?;
            let f = vec![s.element(&a)];
            push(vandermonde_instances(&a, &d, &f, opts.n_max, s)?);
        }
        for n in 1..=4 {
            let a = staircase_algebra(n)?;
            let d = Derivation::euler(&a, &vec![1; n])?;
            let f = vec![s.element(&a)];
            push(vandermonde_instances(&a, &d, &f, opts.n_max, s)?);
        }
    }
    report.push(Check::aggregate("differential Vandermonde determinant identity", det));
    report.push(Check::aggregate("column reduction identity", red));
    report.push(Check::aggregate("coefficients kill (Df)^(d(d+1)/2) f^(d+1)", rad.iter().step_by(2).cloned()));
    report.push(Check::aggregate("f Df is nilpotent", rad.iter().skip(1).step_by(2).cloned()));

    if input.is_none() {
        let (e, dx) = exp_poly_ddx()?;
        let p = OperatorPolynomial::univariate(&e, &UniPoly::from_ints(Field::Rational, &[2, -3, 1]));
        let c = &vandermonde_radical_check(&p, &dx[0], &e.parse("E(1)")?)?.checks[0];
        report.push(Check::verdict(
            "exp polys: hypothesis fails at f^3 for f = e^x, P = (t-1)(t-2)",
            c.status == Status::HypothesisNotMet && c.details.contains("f^3"),
            c.details.clone(),
        ));
    }
    Ok(report)
}
