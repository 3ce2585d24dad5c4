//! `constants`, `vertices`, `facets` and `norm`.

use jnorm::constants::tail_bound;
use jnorm::field::{parse_scalar, OrderedField, RatFunc, Rational};
use jnorm::geometry::{FacetKind, JSpace, RayCase, SphereClass, Vec2, VecD};
use serde_json::{json, Value};

use crate::config::{Config, FieldChoice};
use crate::output::{joined, strings, Out};
use crate::{CliError, Verdict};

pub fn constants(cfg: &Config, out: &mut Out, stages: Option<usize>) -> Result<Verdict, CliError> {
    let params = cfg.params()?;
    let stages = stages.unwrap_or(cfg.depth.div_ceil(4));
    out.record("limits", json!({"a": params.a().to_string(), "b": params.b().to_string()}), || {
        format!("a = {}\nb = {}", params.a(), params.b())
    });
    out.note("i\tm\tn\tkey\ta_{4i+1..4i+4}\tb_{4i+1..4i+4}");
    let space = cfg.space()?;
    for i in 0..stages {
        let (pair, a, b) = space.disc().with_sequences(|s| {
            let pair = s.pair(i).clone();
            let ks = 4 * i + 1..=4 * i + 4;
            let a: Vec<Rational> = ks.clone().map(|k| s.a(k)).collect();
            let b: Vec<Rational> = ks.map(|k| s.b(k)).collect();
            (pair, a, b)
        });
        out.record(
            "stage",
            json!({
                "i": i,
                "m": pair.m,
                "n": pair.n,
                "key": pair.key.to_string(),
                "a": strings(&a),
                "b": strings(&b),
            }),
            || format!("{i}\t{}\t{}\t{}\t{}\t{}", pair.m, pair.n, pair.key, joined(&a), joined(&b)),
        );
    }
    let listed = 4 * stages;
    let tail = tail_bound(&params, listed);
    out.record("tail", json!({"listed": listed, "bound": tail.to_string()}), || {
        format!("sum of a_k beyond k = {listed} is at most {tail}")
    });
    Ok(Verdict::True)
}

pub fn vertices(cfg: &Config, out: &mut Out, count: Option<usize>) -> Result<Verdict, CliError> {
    let space = cfg.space()?;
    let d = space.disc();
    for k in 0..=count.unwrap_or(cfg.depth) {
        let (v, h) = (d.vertex(k), d.ray_slope(k));
        out.record(
            "vertex",
            json!({"k": k, "x": v.x.to_string(), "y": v.y.to_string(), "ray_slope": h.to_string()}),
            || format!("v{k} = {v}\th = {h}"),
        );
    }
    let lim = d.limit_point();
    out.record(
        "limit",
        json!({"x": lim.x.to_string(), "y": lim.y.to_string(), "ray_slope": d.limit_slope().to_string()}),
        || format!("v_inf = {lim}\th = {}", d.limit_slope()),
    );
    Ok(Verdict::True)
}

fn facet_kind(kind: FacetKind) -> String {
    match kind {
        FacetKind::ChainSegment(k) => format!("chain-{k}"),
        FacetKind::EastLimit => "east-limit".into(),
        FacetKind::NorthEastEdge => "north-east".into(),
        FacetKind::SouthAxisPoint => "south-axis".into(),
    }
}

fn ray_case(case: RayCase) -> &'static str {
    match case {
        RayCase::Chain => "chain",
        RayCase::EastLimit => "east-limit",
        RayCase::NorthEast => "north-east",
        RayCase::Axis => "axis",
    }
}

pub fn facets(cfg: &Config, out: &mut Out, count: Option<usize>) -> Result<Verdict, CliError> {
    let space = cfg.space()?;
    for f in space.disc().facets(count.unwrap_or(cfg.depth)) {
        let gradient = f.gradient.as_ref().map_or(Value::Null, |g| Value::String(g.to_string()));
        let kind = facet_kind(f.kind);
        out.record(
            "facet",
            json!({
                "kind": kind,
                "from": [f.from.x.to_string(), f.from.y.to_string()],
                "to": [f.to.x.to_string(), f.to.y.to_string()],
                "support": [f.support.x.to_string(), f.support.y.to_string()],
                "gradient": gradient,
            }),
            || {
                let g = f.gradient.as_ref().map_or("vertical".to_string(), |g| g.to_string());
                format!(
                    "{kind}\t{} -> {}\t{}*x + {}*y = 1\tgradient {g}",
                    f.from, f.to, f.support.x, f.support.y
                )
            },
        );
    }
    Ok(Verdict::True)
}

/// Splits `(a, b, ...)` at top-level commas.
pub fn split_tuple(text: &str) -> Result<Vec<&str>, CliError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| CliError::Input(format!("expected a vector like \"(x,y)\", got '{text}'")))?;
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(CliError::Input(format!("unbalanced parentheses in '{text}'")));
        }
    }
    parts.push(inner[start..].trim());
    if depth != 0 {
        return Err(CliError::Input(format!("unbalanced parentheses in '{text}'")));
    }
    Ok(parts)
}

fn parse_vec<F: OrderedField>(space: &JSpace, text: &str) -> Result<VecD<F>, CliError> {
    let parts = split_tuple(text)?;
    if parts.len() < 2 {
        return Err(CliError::Input(format!("a vector needs at least two coordinates, got '{text}'")));
    }
    let scalars = parts
        .iter()
        .map(|s| parse_scalar::<F>(s).map_err(|e| CliError::Input(format!("'{s}': {e}"))))
        .collect::<Result<Vec<F>, _>>()?;
    let mut it = scalars.into_iter();
    let j = Vec2::new(it.next().unwrap(), it.next().unwrap());
    let v = VecD::from_parts(j, it.enumerate().map(|(i, c)| (i + 1, c)));
    space.check(&v).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(v)
}

pub fn norm(cfg: &Config, out: &mut Out, text: &str) -> Result<Verdict, CliError> {
    match cfg.field {
        FieldChoice::Rat => norm_in::<Rational>(cfg, out, text),
        FieldChoice::RatEps => norm_in::<RatFunc>(cfg, out, text),
    }
}

fn norm_in<F: OrderedField>(cfg: &Config, out: &mut Out, text: &str) -> Result<Verdict, CliError> {
    let space = cfg.space()?;
    let v = parse_vec::<F>(&space, text)?;
    let n = space.norm(&v);
    let mut rec = json!({
        "vector": v.to_string(),
        "norm": n.to_string(),
        "in_unit_disc": n <= F::one(),
    });
    let mut lines = vec![format!("norm = {n}")];
    if let Some(sp) = n.standard_part().filter(|s| F::from_rational(s) != n) {
        rec["standard_part"] = Value::String(sp.to_string());
        lines.push(format!("standard part = {sp}"));
    }
    match space.disc().classify_ray(v.j_part()) {
        Ok(c) => {
            let kind = facet_kind(c.facet.kind);
            rec["facet"] = json!({"kind": kind, "mirrored": c.facet.mirrored, "case": ray_case(c.case)});
            let m = if c.facet.mirrored { " (mirrored)" } else { "" };
            lines.push(format!("J-part facet = {kind}{m}, ray case {}", ray_case(c.case)));
        }
        Err(_) => {
            rec["facet"] = Value::Null;
            lines.push("J-part is zero".into());
        }
    }
    if !v.is_zero() {
        let class = match space.extreme_classify(&n, &v).map_err(|e| CliError::Input(e.to_string()))? {
            SphereClass::Extreme(kind) => format!("extreme {kind}"),
            SphereClass::OnSphereNotExtreme => "not extreme".into(),
            SphereClass::NotOnSphere => unreachable!("v lies on the sphere of radius |v|"),
        };
        rec["sphere_point"] = Value::String(class.clone());
        lines.push(format!("on its sphere: {class}"));
    }
    out.record("norm", rec, || lines.join("\n"));
    Ok(Verdict::True)
}
