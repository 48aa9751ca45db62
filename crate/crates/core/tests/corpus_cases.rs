//! Every corpus case expectation must be reproduced by the pipeline.

use std::path::PathBuf;

use darboux_core::corpus::{case_params, list_cases, load_case, CaseCheck};
use darboux_core::darboux::{constant_cofactor_eigenspaces, in_span, search_numeric, SearchConfig};
use darboux_core::integrals::{certify_integral, IntegralFn};
use darboux_core::model::load_model;
use darboux_core::ode::{drift_integral, standard_probe};
use darboux_core::parse::{parse_polynomial, ParseContext};
use darboux_core::report::run_claim;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn inventory_is_large_enough() {
    let cases = list_cases();
    assert!(cases.len() >= 15, "only {} cases", cases.len());
    let mut ids: Vec<&str> = cases.iter().map(|c| c.id).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), cases.len(), "case ids must be unique");
}

#[test]
fn all_cases_reproduce() {
    let dir = corpus_dir();
    for case in list_cases() {
        let model = load_case(&dir, &case)
            .unwrap_or_else(|e| panic!("case {}: cannot build: {e}", case.id));
        let field = model.effective_field();
        let ctx = ParseContext::with_params(field.var_names.clone(), model.field.params.clone());
        for check in case.checks {
            match check {
                CaseCheck::EigenPair { degree, g, lambda } => {
                    let g = parse_polynomial(g, &ctx).unwrap();
                    let lam = parse_polynomial(lambda, &ctx)
                        .unwrap()
                        .as_constant()
                        .unwrap();
                    let spaces = constant_cofactor_eigenspaces(field, *degree)
                        .unwrap_or_else(|e| panic!("case {}: {e}", case.id));
                    let space = spaces.iter().find(|(l, _)| *l == lam).unwrap_or_else(|| {
                        panic!(
                            "case {}: no eigenvalue {lam} (found {:?})",
                            case.id,
                            spaces
                                .iter()
                                .map(|(l, _)| l.to_string())
                                .collect::<Vec<_>>()
                        )
                    });
                    assert!(
                        in_span(&space.1, &g),
                        "case {}: {} not in the {lam}-eigenspace",
                        case.id,
                        g.render(&field.var_names)
                    );
                }
                CaseCheck::NumericPair { degree, g, lambda } => {
                    let g = parse_polynomial(g, &ctx).unwrap().monic();
                    let lam = parse_polynomial(lambda, &ctx).unwrap();
                    let cfg = SearchConfig {
                        degree: *degree,
                        ..SearchConfig::default()
                    };
                    let pairs = search_numeric(field, &cfg)
                        .unwrap_or_else(|e| panic!("case {}: {e}", case.id));
                    assert!(
                        pairs.iter().any(|p| p.g == g && p.lambda == lam),
                        "case {}: pair ({}, {}) not found among {:?}",
                        case.id,
                        g.render(&field.var_names),
                        lam.render(&field.var_names),
                        pairs
                            .iter()
                            .map(|p| (
                                p.g.render(&field.var_names),
                                p.lambda.render(&field.var_names)
                            ))
                            .collect::<Vec<_>>()
                    );
                }
                CaseCheck::Integral { name } => {
                    let claim = model
                        .integrals
                        .iter()
                        .find(|i| i.name == *name)
                        .unwrap_or_else(|| panic!("case {}: no integral `{name}`", case.id));
                    let rep = certify_integral(field, &claim.integral);
                    assert!(
                        rep.pass(),
                        "case {}: integral `{name}` failed certification: {:?}",
                        case.id,
                        rep
                    );
                    // numeric cross-check on the standard probe
                    let f = IntegralFn::compile(&claim.integral);
                    let reports: Vec<_> = standard_probe(field)
                        .iter()
                        .map(|t| drift_integral(&f, t))
                        .collect();
                    let usable: Vec<_> = reports.iter().filter(|r| !r.truncated).collect();
                    assert!(
                        !usable.is_empty(),
                        "case {}: every probe trajectory truncated",
                        case.id
                    );
                    let max = usable
                        .iter()
                        .map(|r| r.max_relative_drift)
                        .fold(0.0f64, f64::max);
                    assert!(
                        max < darboux_core::corpus::DRIFT_TOLERANCE,
                        "case {}: integral `{name}` drift {max}",
                        case.id
                    );
                }
                CaseCheck::Claim { name, pass } => {
                    let claim = model
                        .claims
                        .iter()
                        .find(|c| c.name == *name)
                        .unwrap_or_else(|| panic!("case {}: no claim `{name}`", case.id));
                    let result = run_claim(field, claim);
                    assert_eq!(
                        result.passed(),
                        *pass,
                        "case {}: claim `{name}` expected pass={pass}, got {:?}",
                        case.id,
                        result
                    );
                }
            }
        }
    }
}

#[test]
fn corpus_files_parse_and_roundtrip() {
    let dir = corpus_dir();
    for file in darboux_core::corpus::corpus_files() {
        let src = load_model(&dir.join(file)).unwrap_or_else(|e| panic!("{file}: {e}"));
        // every expression prints back to the identical polynomial; parameters
        // without defaults are pinned to 1 for this purpose
        let defaults: std::collections::BTreeMap<_, _> = src
            .params
            .iter()
            .filter(|(_, d)| d.is_none())
            .map(|(n, _)| (n.clone(), darboux_core::rational::rat_i(1)))
            .collect();
        let model = src
            .build(&defaults)
            .unwrap_or_else(|e| panic!("{file}: {e}"));
        let names = model.effective_field().var_names.clone();
        let ctx = ParseContext::with_params(names.clone(), model.field.params.clone());
        let field_ctx =
            ParseContext::with_params(model.field.var_names.clone(), model.field.params.clone());
        for (context, expr) in src.all_expressions() {
            let use_ctx = if context.starts_with("[field]") {
                &field_ctx
            } else {
                &ctx
            };
            match parse_polynomial(&expr, use_ctx) {
                Ok(p) => {
                    let printed = p.render(&if context.starts_with("[field]") {
                        model.field.var_names.clone()
                    } else {
                        names.clone()
                    });
                    let again = parse_polynomial(&printed, use_ctx)
                        .unwrap_or_else(|e| panic!("{file} {context}: reparse `{printed}`: {e}"));
                    assert_eq!(p, again, "{file} {context}: canonical round-trip");
                }
                Err(_) => {
                    // ratio entries (metric tensors): round-trip via the ratio parser
                    let r = darboux_core::parse::parse_ratio(&expr, use_ctx)
                        .unwrap_or_else(|e| panic!("{file} {context}: `{expr}`: {e}"));
                    let printed = r.render(&names);
                    let again = darboux_core::parse::parse_ratio(&printed, use_ctx).unwrap();
                    // unreduced fractions compare by cross-multiplication
                    assert_eq!(
                        &r.num * &again.den,
                        &again.num * &r.den,
                        "{file} {context}: ratio round-trip"
                    );
                }
            }
        }
    }
}

#[test]
fn oregonator_parameter_substitution() {
    // q=0, eps=-1, p=-1, h=-3/2 folds the 1/eps and 1/p coefficients into
    // the field (-x - y + xy, -y - 3z - xy, -x + z)
    let dir = corpus_dir();
    let model = load_model(&dir.join("oregonator.model"))
        .unwrap()
        .build(&Default::default())
        .unwrap();
    let names = model.field.var_names.clone();
    assert_eq!(model.field.comps[0].render(&names), "x*y - x - y");
    assert_eq!(model.field.comps[1].render(&names), "-x*y - y - 3*z");
    assert_eq!(model.field.comps[2].render(&names), "-x + z");
    // and the transformed variant reproduces the clock-carrying system
    let model = load_model(&dir.join("oregonator_transformed.model"))
        .unwrap()
        .build(&Default::default())
        .unwrap();
    let tf = model.transformed.as_ref().unwrap();
    assert_eq!(tf.comps[0].render(&tf.var_names), "u*v*exp(-2 t) + u - v");
    assert_eq!(
        tf.comps[1].render(&tf.var_names),
        "-u*v*exp(-2 t) + v - 3*w"
    );
    assert_eq!(tf.comps[2].render(&tf.var_names), "-u + 3*w");
}

#[test]
fn dropping_declaration_tokens_is_rejected() {
    let dir = corpus_dir();
    let text = std::fs::read_to_string(dir.join("three_wave.model")).unwrap();
    let params = case_params(&list_cases()[5]);
    // mutate declaration lines only: [model] keys, section headers, field
    // keys. Tokens inside a component expression are not declarations (a
    // mutation there can legitimately still parse as a different field), so
    // on component lines only the key and the `=` are dropped.
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        let is_component = trimmed.contains("' =");
        let is_decl = trimmed.starts_with('[')
            || trimmed.starts_with("name")
            || trimmed.starts_with("vars")
            || trimmed.starts_with("params")
            || trimmed.starts_with("kind")
            || is_component;
        if !is_decl || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let droppable = if is_component {
            2.min(tokens.len())
        } else {
            tokens.len()
        };
        for drop in 0..droppable {
            let mutated_line: Vec<&str> = tokens
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, t)| *t)
                .collect();
            let mut lines: Vec<&str> = text.lines().collect();
            let joined = mutated_line.join(" ");
            lines[lineno] = &joined;
            let mutated = lines.join("\n");
            let outcome =
                darboux_core::model::parse_model(&mutated).and_then(|src| src.build(&params));
            assert!(
                outcome.is_err(),
                "dropping token {drop} from declaration line {} still builds: {trimmed}",
                lineno + 1
            );
        }
    }
}
