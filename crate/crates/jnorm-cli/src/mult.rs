//! `mult-check`.

use jnorm::field::{parse_scalar, rat, OrderedField, RatFunc, Rational};
use jnorm::geometry::JSpace;
use jnorm::predicates::{mult_graph_holds, MgiOracle, Witness, WitnessError};
use serde_json::{json, Value};

use crate::config::{Config, FieldChoice};
use crate::output::{joined, strings, Out};
use crate::{CliError, Verdict};

/// The `MGI` triple that encodes `x * y = z` on the shifted naturals.
fn shifted(x: &Rational, y: &Rational, z: &Rational) -> (Rational, Rational, Rational) {
    let two = rat(2);
    (x + &two, y + &two, rat(4) + &two * x + &two * y + z)
}

fn certificate(space: &JSpace, x: &Rational, y: &Rational, z: &Rational) -> Result<Witness, WitnessError> {
    let (mx, my, mz) = shifted(x, y, z);
    Witness::certify(space, &mx, &my, &mz)
}

fn witness_json(w: &Witness) -> Value {
    json!({
        "mgi": [w.lengths[1].to_string(), w.lengths[3].to_string(), w.lengths[2].to_string()],
        "pair_index": w.index,
        "radius": w.radius.to_string(),
        "nodes": strings(&w.nodes),
        "lengths": strings(&w.lengths),
    })
}

fn witness_text(w: &Witness) -> String {
    format!(
        "  witness for MGI({}, {}, {}): r = {}, pair index {}, vertices {}, edge lengths {}",
        w.lengths[1],
        w.lengths[3],
        w.lengths[2],
        w.radius,
        w.index,
        joined(&w.nodes),
        joined(&w.lengths)
    )
}

/// The oracle depth that reaches every pair up to `(max, max)` after the
/// shift.
fn oracle_depth(space: &JSpace, max: u32, floor: usize) -> usize {
    let i = space.disc().with_sequences(|s| s.pairs().index_of(max + 2, max + 2)).unwrap_or(0);
    (4 * i + 8).max(floor)
}

pub fn single(cfg: &Config, out: &mut Out, x: &str, y: &str, z: &str) -> Result<Verdict, CliError> {
    match cfg.field {
        FieldChoice::Rat => single_in::<Rational>(cfg, out, [x, y, z]),
        FieldChoice::RatEps => single_in::<RatFunc>(cfg, out, [x, y, z]),
    }
}

fn single_in<F: OrderedField>(cfg: &Config, out: &mut Out, texts: [&str; 3]) -> Result<Verdict, CliError> {
    let space = cfg.space()?;
    let [x, y, z] = texts.map(|t| parse_scalar::<F>(t).map_err(|e| CliError::Input(format!("'{t}': {e}"))));
    let (x, y, z) = (x?, y?, z?);
    let holds = mult_graph_holds(&x, &y, &z);
    let mut rec = json!({
        "x": x.to_string(),
        "y": y.to_string(),
        "z": z.to_string(),
        "holds": holds,
    });
    let mut lines = vec![format!("M({x}, {y}, {z}) = {holds}")];
    let standard = (x.as_rational(), y.as_rational(), z.as_rational());
    if let (Some(x), Some(y), Some(z)) = standard {
        if holds {
            match certificate(&space, &x, &y, &z) {
                Ok(w) => {
                    lines.push(witness_text(&w));
                    rec["witness"] = witness_json(&w);
                }
                Err(e) => {
                    lines.push(format!("  {e}"));
                    rec["witness"] = Value::Null;
                    rec["witness_error"] = Value::String(e.to_string());
                }
            }
        } else {
            // brute-force confirmation within the configured depth
            let oracle = MgiOracle::build(&space, cfg.depth);
            let (mx, my, mz) = shifted(&x, &y, &z);
            let found = oracle.holds(&mx, &my, &mz);
            lines.push(format!(
                "  run search to depth {}: {}",
                cfg.depth,
                if found { "a matching run exists" } else { "no matching run" }
            ));
            rec["oracle"] = json!({"depth": cfg.depth, "holds": found});
        }
    }
    out.record("verdict", rec, || lines.join("\n"));
    Ok(if holds { Verdict::True } else { Verdict::False })
}

/// Every `x, y <= max` and `z <= max^2`: the analytic verdict, the run
/// search, and a certificate for each product.
pub fn table(cfg: &Config, out: &mut Out, max: u32) -> Result<Verdict, CliError> {
    let space = cfg.space()?;
    let depth = oracle_depth(&space, max, cfg.depth);
    let oracle = MgiOracle::build(&space, depth);
    let top = i64::from(max) * i64::from(max);
    let mut consistent = true;
    for x in 0..=i64::from(max) {
        for y in 0..=i64::from(max) {
            let (xr, yr) = (rat(x), rat(y));
            let mut refuted = 0u64;
            let mut disagreements = Vec::new();
            for z in 0..=top {
                let zr = rat(z);
                let holds = mult_graph_holds(&xr, &yr, &zr);
                let (mx, my, mz) = shifted(&xr, &yr, &zr);
                if holds != (z == x * y) || oracle.holds(&mx, &my, &mz) != holds {
                    disagreements.push(z);
                } else if !holds {
                    refuted += 1;
                }
            }
            let z = rat(x * y);
            let witness = certificate(&space, &xr, &yr, &z);
            let ok = disagreements.is_empty() && witness.is_ok();
            consistent &= ok;
            let mut rec = json!({
                "x": x,
                "y": y,
                "z": x * y,
                "refuted": refuted,
                "disagreements": disagreements,
                "consistent": ok,
            });
            let mut text = format!("M({x}, {y}, {}) = true; {refuted} other z <= {top} refuted", x * y);
            match &witness {
                Ok(w) => {
                    rec["witness"] = witness_json(w);
                    text.push('\n');
                    text.push_str(&witness_text(w));
                }
                Err(e) => {
                    rec["witness"] = Value::Null;
                    rec["witness_error"] = Value::String(e.to_string());
                    text.push_str(&format!("\n  {e}"));
                }
            }
            if !disagreements.is_empty() {
                text.push_str(&format!("\n  disagreement at z = {disagreements:?}"));
            }
            out.record("row", rec, || text);
        }
    }
    out.record(
        "summary",
        json!({"max": max, "oracle_depth": depth, "oracle_matches": oracle.matches().len(), "consistent": consistent}),
        || {
            format!(
                "run search to depth {depth} found {} matching runs; table {}",
                oracle.matches().len(),
                if consistent { "consistent" } else { "INCONSISTENT" }
            )
        },
    );
    Ok(if consistent { Verdict::True } else { Verdict::False })
}
