//! `translate`, `expand` and `verify`.

use std::io::Read;

use jnorm::field::{rat, OrderedField, RatFunc, Rational};
use jnorm::interp::{
    builtin, counterexample, default_extras, eval_bounded, expand_mu, parse, parse_with, translate, Formula, Language,
    Sort,
};
use serde_json::{json, Value};

use crate::config::{Config, FieldChoice};
use crate::output::Out;
use crate::{CliError, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    /// The seven axioms of Robinson arithmetic, translated
    Q,
    /// The six conjuncts of the interpretation's well-formedness sentence
    Ok,
    /// A scalar sentence given as an argument or on stdin
    Sentence,
}

/// The argument, or stdin when it is absent or `-`.
fn input(arg: Option<&str>) -> Result<String, CliError> {
    match arg {
        Some(text) if text != "-" => Ok(text.to_string()),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("reading stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn interp_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

pub fn translate_cmd(out: &mut Out, formula: Option<&str>, builtin_q: Option<usize>) -> Result<Verdict, CliError> {
    let source = match builtin_q {
        Some(i) if (1..=7).contains(&i) => builtin::q(i),
        Some(i) => return Err(CliError::Input(format!("there is no axiom Q{i}; use 1..7"))),
        None => parse(&input(formula)?, Language::Pa).map_err(interp_err)?,
    };
    let t = translate(&source).map_err(interp_err)?;
    out.record("formula", json!({"language": "scalar", "input": source.to_string(), "formula": t.to_string()}), || {
        t.to_string()
    });
    Ok(Verdict::True)
}

pub fn expand_cmd(out: &mut Out, formula: Option<&str>, free: &[String]) -> Result<Verdict, CliError> {
    let text = input(formula)?;
    let scope: Vec<(&str, Sort)> = free.iter().map(|n| (n.as_str(), Sort::K)).collect();
    let f = parse_with(&text, Language::K, &scope).map_err(interp_err)?;
    let e = expand_mu(&f);
    out.record(
        "formula",
        json!({"language": "normed-space", "input": f.to_string(), "formula": e.to_string()}),
        || e.to_string(),
    );
    Ok(Verdict::True)
}

pub fn verify(cfg: &Config, out: &mut Out, target: Target, formula: Option<&str>) -> Result<Verdict, CliError> {
    let items: Vec<(String, Formula)> = match target {
        Target::Q => (1..=7)
            .map(|i| translate(&builtin::q(i)).map(|t| (format!("Q{i}"), t)))
            .collect::<Result<_, _>>()
            .map_err(interp_err)?,
        Target::Ok => (1..=6).map(|i| (format!("OK{i}"), builtin::ok_conjunct(i))).collect(),
        Target::Sentence => vec![("sentence".into(), parse(&input(formula)?, Language::K).map_err(interp_err)?)],
    };
    if target != Target::Sentence && formula.is_some() {
        return Err(CliError::Input("only 'verify sentence' takes a formula".into()));
    }
    match cfg.field {
        FieldChoice::Rat => verify_in::<Rational>(cfg, out, &items, default_extras()),
        FieldChoice::RatEps => {
            let e = RatFunc::epsilon();
            let mut extras = default_extras::<RatFunc>();
            extras.push(e.clone());
            extras.push(RatFunc::from_rational(&rat(2)) + e);
            verify_in::<RatFunc>(cfg, out, &items, extras)
        }
    }
}

fn verify_in<F: OrderedField>(
    cfg: &Config,
    out: &mut Out,
    items: &[(String, Formula)],
    extras: Vec<F>,
) -> Result<Verdict, CliError> {
    let mut all = true;
    for (name, f) in items {
        let holds = eval_bounded(f, cfg.bound, &extras).map_err(interp_err)?;
        all &= holds;
        let mut rec = json!({"name": name, "holds": holds, "bound": cfg.bound});
        let mut text = format!("{name}: {}", if holds { "holds" } else { "FAILS" });
        if !holds {
            if let Some(cx) = counterexample(f, cfg.bound, &extras).map_err(interp_err)? {
                let shown: Vec<String> = cx.iter().map(|(n, v)| format!("{n} = {v}")).collect();
                text.push_str(&format!(" at {}", shown.join(", ")));
                rec["counterexample"] =
                    Value::Array(cx.iter().map(|(n, v)| json!({"name": n, "value": v.to_string()})).collect());
            }
        }
        out.record("check", rec, || text);
    }
    out.record("summary", json!({"holds": all}), || {
        format!("{} at bound {}", if all { "all hold" } else { "some fail" }, cfg.bound)
    });
    Ok(if all { Verdict::True } else { Verdict::False })
}
