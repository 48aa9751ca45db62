//! The model file format: a vector field plus optional transform, structure
//! claims, and integral claims, in a line-oriented sectioned text file.
//!
//! ```text
//! # comment
//! [model]
//! name = three-wave
//! vars = x, y, z
//! params = gamma, delta = 1
//!
//! [field]
//! x' = -2*y^2 + gamma*x + z + delta*y
//! y' = 2*x*y + gamma*y - delta*x
//! z' = -2*x*z - 2*z
//!
//! [transform]            # optional exponential rescaling
//! a = 1, 1, 2
//! c = 1
//! new_vars = u, v, w
//!
//! [claim some-name]
//! kind = nambu
//! M = 1
//! H1 = ...
//! H2 = ...
//!
//! [integral some-name]
//! rate = -2
//! factor = (y*z - delta/2*z)^1
//! ```
//!
//! Parameters may carry defaults (`delta = 1` above); parameters without a
//! default must be supplied at build time. Expressions are parsed after
//! parameter substitution, so every identifier must be a declared variable, a
//! bound parameter, or the clock token. A factor line carries an exponent
//! only when it ends with `)^n`; otherwise the whole line is the factor and
//! the exponent is one. When a `[transform]` section is present, claim and
//! integral expressions are written in the transformed variables.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::{FieldError, VectorField};
use crate::integrals::FirstIntegral;
use crate::parse::{parse_constant, parse_polynomial, parse_ratio, ParseContext, ParseError};
use crate::ratio::Ratio;
use crate::rational::{parse_rational, Rational};
use crate::structure::{ClaimKind, Generator, SpecError, StructureSpec};
use crate::transform::{transform, ExpScaling};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("in {context}: {source}")]
    Expr {
        context: String,
        #[source]
        source: ParseError,
    },
    #[error("duplicate section `{0}`")]
    DuplicateSection(String),
    #[error("missing section `{0}`")]
    MissingSection(&'static str),
    #[error("missing component `{0}'` in [field]")]
    MissingComponent(String),
    #[error("unknown key `{key}` in section `{section}`")]
    UnknownKey { section: String, key: String },
    #[error("parameter `{0}` is not bound; pass --param {0}=VALUE or give it a default")]
    UnboundParam(String),
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("claim `{name}`: {source}")]
    Spec {
        name: String,
        #[source]
        source: SpecError,
    },
    #[error("{0}")]
    Validation(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> ModelError {
    ModelError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Split on `sep` at parenthesis depth zero.
fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur.trim().to_string());
    out
}

#[derive(Clone, Debug)]
pub struct TransformDecl {
    pub a: [i64; 3],
    pub c: i64,
    pub new_vars: Option<[String; 3]>,
}

impl TransformDecl {
    pub fn scaling(&self) -> ExpScaling {
        ExpScaling {
            a: self.a,
            c: self.c,
        }
    }
}

#[derive(Clone, Debug)]
struct ClaimSource {
    name: String,
    kind: String,
    entries: Vec<(String, String)>,
    line: usize,
}

#[derive(Clone, Debug)]
struct IntegralSource {
    name: String,
    rate: String,
    factors: Vec<String>,
    line: usize,
}

/// A parsed (but not yet parameter-bound) model file.
#[derive(Clone, Debug)]
pub struct ModelSource {
    pub name: String,
    pub vars: [String; 3],
    /// Declared parameters with optional defaults, in declaration order.
    pub params: Vec<(String, Option<Rational>)>,
    field_exprs: [String; 3],
    pub transform: Option<TransformDecl>,
    claims: Vec<ClaimSource>,
    integrals: Vec<IntegralSource>,
}

/// A fully bound model: concrete field, optional transformed field, claims.
#[derive(Clone, Debug)]
pub struct Model {
    pub name: String,
    pub field: VectorField,
    pub scaling: Option<ExpScaling>,
    pub transformed: Option<VectorField>,
    pub claims: Vec<Claim>,
    pub integrals: Vec<IntegralClaim>,
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub name: String,
    pub spec: StructureSpec,
}

#[derive(Clone, Debug)]
pub struct IntegralClaim {
    pub name: String,
    pub integral: FirstIntegral,
}

impl Model {
    /// The field that searches, claims and simulations run against: the
    /// transformed field when a transform is declared, the original
    /// otherwise.
    pub fn effective_field(&self) -> &VectorField {
        self.transformed.as_ref().unwrap_or(&self.field)
    }
}

enum Section {
    None,
    Model,
    Field,
    Transform,
    Claim(usize),
    Integral(usize),
}

struct RawModel {
    model_kv: Vec<(String, String, usize)>,
    field_kv: Vec<(String, String, usize)>,
    transform_kv: Option<Vec<(String, String, usize)>>,
    claims: Vec<ClaimSource>,
    integrals: Vec<IntegralSource>,
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars().next().unwrap().is_ascii_alphabetic()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "t"
        && s != "exp"
}

pub fn parse_model(text: &str) -> Result<ModelSource, ModelError> {
    let mut raw = RawModel {
        model_kv: Vec::new(),
        field_kv: Vec::new(),
        transform_kv: None,
        claims: Vec::new(),
        integrals: Vec::new(),
    };
    let mut seen_model = false;
    let mut seen_field = false;
    let mut section = Section::None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('[') {
            let Some(header) = header.strip_suffix(']') else {
                return Err(syntax(line_no, "unterminated section header"));
            };
            let header = header.trim();
            section = match header {
                "model" => {
                    if seen_model {
                        return Err(ModelError::DuplicateSection("model".into()));
                    }
                    seen_model = true;
                    Section::Model
                }
                "field" => {
                    if seen_field {
                        return Err(ModelError::DuplicateSection("field".into()));
                    }
                    seen_field = true;
                    Section::Field
                }
                "transform" => {
                    if raw.transform_kv.is_some() {
                        return Err(ModelError::DuplicateSection("transform".into()));
                    }
                    raw.transform_kv = Some(Vec::new());
                    Section::Transform
                }
                other => {
                    if let Some(name) = other.strip_prefix("claim ") {
                        let name = name.trim().to_string();
                        if raw.claims.iter().any(|c| c.name == name) {
                            return Err(ModelError::DuplicateSection(format!("claim {name}")));
                        }
                        raw.claims.push(ClaimSource {
                            name,
                            kind: String::new(),
                            entries: Vec::new(),
                            line: line_no,
                        });
                        Section::Claim(raw.claims.len() - 1)
                    } else if let Some(name) = other.strip_prefix("integral ") {
                        let name = name.trim().to_string();
                        if raw.integrals.iter().any(|c| c.name == name) {
                            return Err(ModelError::DuplicateSection(format!("integral {name}")));
                        }
                        raw.integrals.push(IntegralSource {
                            name,
                            rate: String::new(),
                            factors: Vec::new(),
                            line: line_no,
                        });
                        Section::Integral(raw.integrals.len() - 1)
                    } else {
                        return Err(syntax(line_no, format!("unknown section `[{other}]`")));
                    }
                }
            };
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(syntax(line_no, "expected `key = value`"));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(syntax(line_no, "expected `key = value`"));
        }
        match section {
            Section::None => return Err(syntax(line_no, "content before the first section")),
            Section::Model => raw.model_kv.push((key, value, line_no)),
            Section::Field => raw.field_kv.push((key, value, line_no)),
            Section::Transform => raw
                .transform_kv
                .as_mut()
                .unwrap()
                .push((key, value, line_no)),
            Section::Claim(i) => {
                if key == "kind" {
                    raw.claims[i].kind = value;
                } else {
                    raw.claims[i].entries.push((key, value));
                }
            }
            Section::Integral(i) => {
                if key == "rate" {
                    raw.integrals[i].rate = value;
                } else if key == "factor" {
                    raw.integrals[i].factors.push(value);
                } else {
                    return Err(ModelError::UnknownKey {
                        section: format!("integral {}", raw.integrals[i].name),
                        key,
                    });
                }
            }
        }
    }

    if !seen_model {
        return Err(ModelError::MissingSection("model"));
    }
    if !seen_field {
        return Err(ModelError::MissingSection("field"));
    }

    // [model]
    let mut name = None;
    let mut vars: Option<[String; 3]> = None;
    let mut params: Vec<(String, Option<Rational>)> = Vec::new();
    for (key, value, line_no) in &raw.model_kv {
        match key.as_str() {
            "name" => name = Some(value.clone()),
            "vars" => {
                let list = split_top_level(value, ',');
                if list.len() != 3 || !list.iter().all(|v| is_ident(v)) {
                    return Err(syntax(*line_no, "vars must list exactly three identifiers"));
                }
                if list[0] == list[1] || list[0] == list[2] || list[1] == list[2] {
                    return Err(syntax(*line_no, "variable names must be distinct"));
                }
                vars = Some([list[0].clone(), list[1].clone(), list[2].clone()]);
            }
            "params" => {
                for item in split_top_level(value, ',') {
                    if item.is_empty() {
                        return Err(syntax(*line_no, "empty parameter declaration"));
                    }
                    let (pname, default) = match item.split_once('=') {
                        Some((n, d)) => {
                            let d = parse_rational(d).ok_or_else(|| {
                                syntax(*line_no, format!("bad default value in `{item}`"))
                            })?;
                            (n.trim().to_string(), Some(d))
                        }
                        None => (item.clone(), None),
                    };
                    if !is_ident(&pname) {
                        return Err(syntax(*line_no, format!("bad parameter name `{pname}`")));
                    }
                    if params.iter().any(|(n, _)| *n == pname) {
                        return Err(syntax(*line_no, format!("duplicate parameter `{pname}`")));
                    }
                    params.push((pname, default));
                }
            }
            other => {
                return Err(ModelError::UnknownKey {
                    section: "model".into(),
                    key: other.to_string(),
                })
            }
        }
    }
    let name = name.ok_or_else(|| ModelError::Validation("missing `name` in [model]".into()))?;
    let vars = vars.ok_or_else(|| ModelError::Validation("missing `vars` in [model]".into()))?;

    // [field]: expect `<var>' = expr` for each declared variable exactly once
    let mut field_exprs: [Option<String>; 3] = [None, None, None];
    for (key, value, line_no) in &raw.field_kv {
        let Some(base) = key.strip_suffix('\'') else {
            return Err(syntax(
                *line_no,
                format!("field keys look like `{}'`", vars[0]),
            ));
        };
        let base = base.trim();
        let Some(i) = vars.iter().position(|v| v == base) else {
            return Err(syntax(
                *line_no,
                format!("unknown variable `{base}` in [field]"),
            ));
        };
        if field_exprs[i].is_some() {
            return Err(syntax(
                *line_no,
                format!("duplicate component for `{base}`"),
            ));
        }
        field_exprs[i] = Some(value.clone());
    }
    let field_exprs: [String; 3] = match field_exprs {
        [Some(a), Some(b), Some(c)] => [a, b, c],
        ref e => {
            let missing = (0..3).find(|&i| e[i].is_none()).unwrap();
            return Err(ModelError::MissingComponent(vars[missing].clone()));
        }
    };

    // [transform]
    let transform = match &raw.transform_kv {
        None => None,
        Some(kv) => {
            let mut a: Option<[i64; 3]> = None;
            let mut c = 0i64;
            let mut new_vars: Option<[String; 3]> = None;
            for (key, value, line_no) in kv {
                match key.as_str() {
                    "a" => {
                        let list = split_top_level(value, ',');
                        let ints: Option<Vec<i64>> = list.iter().map(|v| v.parse().ok()).collect();
                        match ints.as_deref() {
                            Some([p, q, r]) => a = Some([*p, *q, *r]),
                            _ => {
                                return Err(syntax(
                                    *line_no,
                                    "transform `a` must be three integers",
                                ))
                            }
                        }
                    }
                    "c" => {
                        c = value
                            .parse()
                            .map_err(|_| syntax(*line_no, "transform `c` must be an integer"))?;
                    }
                    "new_vars" => {
                        let list = split_top_level(value, ',');
                        if list.len() != 3 || !list.iter().all(|v| is_ident(v)) {
                            return Err(syntax(
                                *line_no,
                                "new_vars must list exactly three identifiers",
                            ));
                        }
                        new_vars = Some([list[0].clone(), list[1].clone(), list[2].clone()]);
                    }
                    other => {
                        return Err(ModelError::UnknownKey {
                            section: "transform".into(),
                            key: other.to_string(),
                        })
                    }
                }
            }
            let a = a.ok_or_else(|| ModelError::Validation("missing `a` in [transform]".into()))?;
            Some(TransformDecl { a, c, new_vars })
        }
    };

    for c in &raw.claims {
        if c.kind.is_empty() {
            return Err(syntax(
                c.line,
                format!("claim `{}` is missing `kind`", c.name),
            ));
        }
    }
    for i in &raw.integrals {
        if i.rate.is_empty() {
            return Err(syntax(
                i.line,
                format!("integral `{}` is missing `rate`", i.name),
            ));
        }
        if i.factors.is_empty() {
            return Err(syntax(
                i.line,
                format!("integral `{}` has no factors", i.name),
            ));
        }
    }

    Ok(ModelSource {
        name,
        vars,
        params,
        field_exprs,
        transform,
        claims: raw.claims,
        integrals: raw.integrals,
    })
}

/// Load and parse a model file.
pub fn load_model(path: &std::path::Path) -> Result<ModelSource, ModelError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ModelError::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_model(&text)
}

fn expr_err(context: impl Into<String>) -> impl FnOnce(ParseError) -> ModelError {
    let context = context.into();
    move |source| ModelError::Expr { context, source }
}

/// Split `(base)^n` at the trailing exponent; absent that shape the exponent
/// is one.
fn split_factor(value: &str) -> (String, String) {
    if let Some(caret) = value.rfind('^') {
        let (head, tail) = value.split_at(caret);
        let head_t = head.trim_end();
        if head_t.ends_with(')') {
            let tail = tail[1..].trim();
            let tail = tail
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(tail);
            return (head_t.to_string(), tail.to_string());
        }
    }
    (value.to_string(), "1".to_string())
}

impl ModelSource {
    /// Bind parameters (defaults overridden by `overrides`) and build the
    /// concrete model.
    pub fn build(&self, overrides: &BTreeMap<String, Rational>) -> Result<Model, ModelError> {
        for name in overrides.keys() {
            if !self.params.iter().any(|(p, _)| p == name) {
                return Err(ModelError::UnknownParam(name.clone()));
            }
        }
        let mut bound: BTreeMap<String, Rational> = BTreeMap::new();
        for (name, default) in &self.params {
            match overrides.get(name).or(default.as_ref()) {
                Some(v) => {
                    bound.insert(name.clone(), v.clone());
                }
                None => return Err(ModelError::UnboundParam(name.clone())),
            }
        }

        let field_ctx = ParseContext::with_params(self.vars.clone(), bound.clone());
        let comps: [crate::poly::Polynomial; 3] = [
            parse_polynomial(&self.field_exprs[0], &field_ctx)
                .map_err(expr_err(format!("[field] {}'", self.vars[0])))?,
            parse_polynomial(&self.field_exprs[1], &field_ctx)
                .map_err(expr_err(format!("[field] {}'", self.vars[1])))?,
            parse_polynomial(&self.field_exprs[2], &field_ctx)
                .map_err(expr_err(format!("[field] {}'", self.vars[2])))?,
        ];
        let field = VectorField::with_names(&self.name, comps, self.vars.clone(), bound.clone())?;

        let (scaling, transformed, claim_ctx) = match &self.transform {
            None => (None, None, field_ctx.clone()),
            Some(decl) => {
                let sc = decl.scaling();
                let tf = transform(&field, &sc, decl.new_vars.clone());
                let ctx = ParseContext::with_params(tf.var_names.clone(), bound.clone());
                (Some(sc), Some(tf), ctx)
            }
        };

        let mut claims = Vec::new();
        for c in &self.claims {
            claims.push(Claim {
                name: c.name.clone(),
                spec: build_claim(c, &claim_ctx)?,
            });
        }

        let mut integrals = Vec::new();
        for i in &self.integrals {
            let context = format!("[integral {}]", i.name);
            let rate = parse_constant(&i.rate, &claim_ctx).map_err(expr_err(context.clone()))?;
            let mut factors = Vec::new();
            for f in &i.factors {
                let (base, exp) = split_factor(f);
                let g = parse_polynomial(&base, &claim_ctx).map_err(expr_err(context.clone()))?;
                let n = parse_rational(&exp).ok_or_else(|| {
                    ModelError::Validation(format!("{context}: bad exponent `{exp}`"))
                })?;
                factors.push((g, n));
            }
            integrals.push(IntegralClaim {
                name: i.name.clone(),
                integral: FirstIntegral::new(rate, factors),
            });
        }

        Ok(Model {
            name: self.name.clone(),
            field,
            scaling,
            transformed,
            claims,
            integrals,
        })
    }

    /// Every expression string in the file, with a context label; used by the
    /// canonical-form round-trip checks.
    pub fn all_expressions(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, e) in self.field_exprs.iter().enumerate() {
            out.push((format!("[field] {}'", self.vars[i]), e.clone()));
        }
        for c in &self.claims {
            for (key, value) in &c.entries {
                match key.as_str() {
                    "S" | "lambda" => {}
                    "J" => {
                        for (k, part) in split_top_level(value, ',').into_iter().enumerate() {
                            out.push((format!("[claim {}] J[{k}]", c.name), part));
                        }
                    }
                    "G" => {
                        for (r, row) in split_top_level(value, ';').into_iter().enumerate() {
                            for (k, part) in split_top_level(&row, ',').into_iter().enumerate() {
                                out.push((format!("[claim {}] G[{r}][{k}]", c.name), part));
                            }
                        }
                    }
                    _ => out.push((format!("[claim {}] {key}", c.name), value.clone())),
                }
            }
        }
        for i in &self.integrals {
            for f in &i.factors {
                let (base, _) = split_factor(f);
                out.push((format!("[integral {}] factor", i.name), base));
            }
        }
        out
    }

    /// The parse context a bound model would use for claim expressions.
    pub fn claim_context(
        &self,
        overrides: &BTreeMap<String, Rational>,
    ) -> Result<ParseContext, ModelError> {
        let model = self.build(overrides)?;
        let names = model.effective_field().var_names.clone();
        Ok(ParseContext::with_params(names, model.field.params.clone()))
    }
}

fn build_claim(c: &ClaimSource, ctx: &ParseContext) -> Result<StructureSpec, ModelError> {
    let kind = ClaimKind::parse(&c.kind).ok_or_else(|| {
        ModelError::Validation(format!("claim `{}`: unknown kind `{}`", c.name, c.kind))
    })?;
    let mut spec = StructureSpec::new(kind);
    for (key, value) in &c.entries {
        let context = format!("[claim {}] {key}", c.name);
        match key.as_str() {
            "J" => {
                let parts = split_top_level(value, ',');
                if parts.len() != 3 {
                    return Err(ModelError::Validation(format!(
                        "{context}: J needs three comma-separated components"
                    )));
                }
                let mut comps = Vec::new();
                for p in &parts {
                    comps.push(parse_polynomial(p, ctx).map_err(expr_err(context.clone()))?);
                }
                spec.j = Some(crate::field::PolyVector([
                    comps[0].clone(),
                    comps[1].clone(),
                    comps[2].clone(),
                ]));
            }
            "H" => spec.h = Some(parse_polynomial(value, ctx).map_err(expr_err(context))?),
            "H1" => spec.h1 = Some(parse_polynomial(value, ctx).map_err(expr_err(context))?),
            "H2" => spec.h2 = Some(parse_polynomial(value, ctx).map_err(expr_err(context))?),
            "M" => spec.m = Some(parse_ratio(value, ctx).map_err(expr_err(context))?),
            "S" => {
                spec.s_is = Some(match value.as_str() {
                    "H1" => Generator::H1,
                    "H2" => Generator::H2,
                    other => {
                        return Err(ModelError::Validation(format!(
                            "{context}: S must be H1 or H2, got `{other}`"
                        )))
                    }
                })
            }
            "lambda" => {
                spec.lambda = parse_constant(value, ctx).map_err(expr_err(context))?;
            }
            "G" => {
                let rows = split_top_level(value, ';');
                if rows.len() != 3 {
                    return Err(ModelError::Validation(format!(
                        "{context}: G needs three semicolon-separated rows"
                    )));
                }
                let mut g: [[Ratio; 3]; 3] =
                    std::array::from_fn(|_| std::array::from_fn(|_| Ratio::zero()));
                for (r, row) in rows.iter().enumerate() {
                    let entries = split_top_level(row, ',');
                    if entries.len() != 3 {
                        return Err(ModelError::Validation(format!(
                            "{context}: each G row needs three entries"
                        )));
                    }
                    for (k, e) in entries.iter().enumerate() {
                        g[r][k] = parse_ratio(e, ctx).map_err(expr_err(context.clone()))?;
                    }
                }
                spec.g = Some(g);
            }
            other => {
                return Err(ModelError::UnknownKey {
                    section: format!("claim {}", c.name),
                    key: other.to_string(),
                })
            }
        }
    }
    spec.validate().map_err(|source| ModelError::Spec {
        name: c.name.clone(),
        source,
    })?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    const THREE_WAVE: &str = "\
[model]
name = three-wave
vars = x, y, z
params = gamma, delta

[field]
x' = -2*y^2 + gamma*x + z + delta*y
y' = 2*x*y + gamma*y - delta*x
z' = -2*x*z - 2*z

[integral case1]
rate = -2
factor = (y*z - delta/2*z)^1
";

    fn binds(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        pairs
            .iter()
            .map(|(n, v)| (n.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn parse_and_build_three_wave() {
        let src = parse_model(THREE_WAVE).unwrap();
        assert_eq!(src.vars, ["x", "y", "z"].map(String::from));
        let model = src
            .build(&binds(&[("gamma", rat_i(0)), ("delta", rat_i(1))]))
            .unwrap();
        assert_eq!(model.field.degree(), 2);
        assert_eq!(model.integrals.len(), 1);
        let g = &model.integrals[0].integral.factors[0].0;
        assert_eq!(g.render_canonical(), "y*z - 1/2*z");
    }

    #[test]
    fn unbound_parameter() {
        let src = parse_model(THREE_WAVE).unwrap();
        let err = src.build(&binds(&[("gamma", rat_i(0))])).unwrap_err();
        assert!(matches!(err, ModelError::UnboundParam(p) if p == "delta"));
    }

    #[test]
    fn unknown_override() {
        let src = parse_model(THREE_WAVE).unwrap();
        let err = src
            .build(&binds(&[
                ("gamma", rat_i(0)),
                ("delta", rat_i(1)),
                ("nu", rat_i(1)),
            ]))
            .unwrap_err();
        assert!(matches!(err, ModelError::UnknownParam(p) if p == "nu"));
    }

    #[test]
    fn defaults_and_overrides() {
        let text = THREE_WAVE.replace("params = gamma, delta", "params = gamma = 0, delta = 1");
        let src = parse_model(&text).unwrap();
        let model = src.build(&BTreeMap::new()).unwrap();
        assert_eq!(model.field.params["gamma"], rat_i(0));
        let model = src.build(&binds(&[("gamma", rat(1, 2))])).unwrap();
        assert_eq!(model.field.params["gamma"], rat(1, 2));
    }

    #[test]
    fn unknown_identifier_in_component() {
        let text = THREE_WAVE.replace("z' = -2*x*z - 2*z", "z' = -2*x*w - 2*z");
        let src = parse_model(&text).unwrap();
        let err = src
            .build(&binds(&[("gamma", rat_i(0)), ("delta", rat_i(1))]))
            .unwrap_err();
        match err {
            ModelError::Expr { source, .. } => {
                assert!(source.msg.contains("unknown identifier `w`"))
            }
            other => panic!("expected Expr error, got {other:?}"),
        }
    }

    #[test]
    fn missing_component_rejected() {
        let text = THREE_WAVE.replace("z' = -2*x*z - 2*z\n", "");
        let err = parse_model(&text).unwrap_err();
        assert!(matches!(err, ModelError::MissingComponent(v) if v == "z"));
    }

    #[test]
    fn duplicate_sections_rejected() {
        let text = format!("{THREE_WAVE}\n[integral case1]\nrate = -2\nfactor = x\n");
        assert!(matches!(
            parse_model(&text),
            Err(ModelError::DuplicateSection(_))
        ));
    }

    #[test]
    fn transform_section() {
        let text = "\
[model]
name = case5
vars = x, y, z
params =  gamma = -1, delta = 0

[field]
x' = -2*y^2 + gamma*x + z + delta*y
y' = 2*x*y + gamma*y - delta*x
z' = -2*x*z - 2*z

[transform]
a = 1, 1, 2
c = 1
new_vars = u, v, w

[claim bi-ham]
kind = hamiltonian
J = 0, w, v
H = u^2 + v^2 + w
";
        let src = parse_model(text).unwrap();
        let model = src.build(&BTreeMap::new()).unwrap();
        let t = model.transformed.as_ref().unwrap();
        assert_eq!(t.var_names, ["u", "v", "w"].map(String::from));
        // (-2v^2 + w, 2uv, -2uw)
        assert_eq!(t.comps[0].render(&t.var_names), "-2*v^2 + w");
        assert_eq!(model.claims.len(), 1);
    }

    #[test]
    fn factor_exponent_forms() {
        assert_eq!(split_factor("(y*z)^(1/3)"), ("(y*z)".into(), "1/3".into()));
        assert_eq!(split_factor("(x + y)^2"), ("(x + y)".into(), "2".into()));
        assert_eq!(split_factor("x^2"), ("x^2".into(), "1".into()));
        assert_eq!(
            split_factor("y*z - 1/2*z"),
            ("y*z - 1/2*z".into(), "1".into())
        );
    }
}
