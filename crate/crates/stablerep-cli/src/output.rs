//! JSON envelopes and the human-readable renderings derived from them.
//!
//! Every command emits one envelope `{schema, command, invocation, result}`.
//! The human tables are produced by walking the serialized JSON value, never
//! from the original structs, so the two views cannot drift apart.

use serde::Serialize;
use serde_json::Value;

use stablerep::Result;

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
pub struct Envelope<I: Serialize, R: Serialize> {
    pub schema: u32,
    pub command: String,
    pub invocation: I,
    pub result: R,
}

impl<I: Serialize, R: Serialize> Envelope<I, R> {
    pub fn new(command: &str, invocation: I, result: R) -> Envelope<I, R> {
        Envelope { schema: SCHEMA, command: command.to_string(), invocation, result }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

// ---------------------------------------------------------------------------
// Value access helpers (missing fields render as blanks, never panic).

fn field<'a>(v: &'a Value, key: &str) -> &'a Value {
    v.get(key).unwrap_or(&Value::Null)
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn flag(v: &Value) -> bool {
    v.as_bool().unwrap_or(false)
}

fn items(v: &Value) -> &[Value] {
    v.as_array().map(Vec::as_slice).unwrap_or(&[])
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Isomorphism-type string from a serialized group presentation.
fn group_desc(v: &Value) -> String {
    let mut parts: Vec<String> = Vec::new();
    match field(v, "free_rank").as_u64().unwrap_or(0) {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    for d in items(field(v, "torsion")) {
        parts.push(format!("Z/{}", d.as_u64().unwrap_or(0)));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" x ")
    }
}

fn int_list(v: &Value) -> String {
    let entries: Vec<String> = items(v).iter().map(text).collect();
    format!("[{}]", entries.join(", "))
}

fn matrix_desc(v: &Value) -> String {
    let rows: Vec<String> = items(v).iter().map(int_list).collect();
    format!("[{}]", rows.join(", "))
}

// ---------------------------------------------------------------------------
// Per-command renderers.  Each takes the full envelope value.

pub fn render_alg_info(env: &Value) {
    let r = field(env, "result");
    println!("algebra: {}", text(field(r, "reference")));
    println!(
        "p: {}  dim: {}  commutative: {}",
        text(field(r, "p")),
        text(field(r, "dim")),
        yes_no(flag(field(r, "commutative")))
    );
    let labels: Vec<String> = items(field(r, "labels")).iter().map(text).collect();
    println!("labels: {}", labels.join(" "));
    let series: Vec<String> = items(field(r, "radical_series_dims")).iter().map(text).collect();
    if series.is_empty() {
        println!("radical: zero (semisimple)");
    } else {
        println!("radical series dims: {}", series.join(", "));
    }
    let simple_dims: Vec<String> = items(field(r, "simples"))
        .iter()
        .map(|s| text(field(s, "dim")))
        .collect();
    println!("simples: {} (dims {})", simple_dims.len(), simple_dims.join(", "));
    println!("indecomposable projectives:");
    for p in items(field(r, "projectives")) {
        println!(
            "  {}: dim {}, multiplicity {} in the regular module, injective: {}",
            text(field(p, "label")),
            text(field(p, "dim")),
            text(field(p, "multiplicity")),
            yes_no(flag(field(p, "injective")))
        );
    }
    println!("quasi-Frobenius: {}", yes_no(flag(field(r, "quasi_frobenius"))));
    let units = field(r, "unit_group");
    if units.is_null() {
        println!("unit group: not computed (non-commutative algebra)");
    } else {
        let factors: Vec<u64> =
            items(field(units, "factors")).iter().filter_map(Value::as_u64).collect();
        let desc = if factors.is_empty() {
            "0".to_string()
        } else {
            factors.iter().rev().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
        };
        println!("unit group: {desc} (order {})", text(field(units, "order")));
        let gens = items(field(units, "generators"));
        for (g, d) in gens.iter().zip(factors.iter()) {
            println!("  generator {} of order {d}", text(g));
        }
    }
}

pub fn render_kgroups(env: &Value) {
    let r = field(env, "result");
    println!("theory: {}", text(field(r, "theory")));
    println!("algebra: {}", text(field(r, "reference")));
    if let Some(md) = field(r, "max_dim").as_u64() {
        println!("max dim: {md}");
    }
    let g = field(r, "group");
    println!("group: {}", group_desc(g));
    println!("invariant factors: {}", int_list(field(g, "torsion")));
    println!("free rank: {}", text(field(g, "free_rank")));
    println!("generators:");
    for l in items(field(g, "labels")) {
        println!("  {}", text(l));
    }
    println!("relations: {}", items(field(g, "relations")).len());
    render_caveats(field(g, "caveats"), "");
}

fn render_caveats(v: &Value, indent: &str) {
    for c in items(v) {
        println!("{indent}note: {}", text(c));
    }
}

fn regime_desc(v: &Value) -> String {
    match text(field(v, "kind")).as_str() {
        "exhaustive" => "exhaustive".into(),
        "seeded" => format!("seeded {}", text(field(v, "seed"))),
        _ => text(v),
    }
}

fn render_check_report(report: &Value, indent: &str) {
    println!(
        "{indent}{} [{}] — {} ({} samples, {})",
        text(field(report, "name")),
        text(field(report, "subject")),
        if flag(field(report, "passed")) { "pass" } else { "FAIL" },
        text(field(report, "samples")),
        regime_desc(field(report, "regime"))
    );
    for item in items(field(report, "items")) {
        println!(
            "{indent}  [{}] {}",
            if flag(field(item, "passed")) { "ok" } else { "XX" },
            text(field(item, "label"))
        );
        let witness = field(item, "witness");
        if !witness.is_null() {
            for line in text(witness).lines() {
                println!("{indent}        {line}");
            }
        }
    }
    render_caveats(field(report, "caveats"), &format!("{indent}  "));
}

pub fn render_waldhausen(env: &Value) {
    let r = field(env, "result");
    println!("algebra: {}", text(field(r, "reference")));
    println!(
        "cofibrations: {}   weak equivalences: {}",
        text(field(r, "cof")),
        text(field(r, "we"))
    );
    println!("universe: {} modules", text(field(r, "universe_size")));
    for report in items(field(r, "reports")) {
        render_check_report(report, "");
    }
    println!("overall: {}", if flag(field(r, "all_passed")) { "PASS" } else { "FAIL" });
}

fn render_group_map(label: &str, v: &Value, indent: &str) {
    if v.is_null() {
        println!("{indent}{label}: not available");
        return;
    }
    let ok = flag(field(v, "well_defined"));
    print!(
        "{indent}{label} ({}): {}, matrix {}",
        text(field(v, "label")),
        if ok { "well-defined" } else { "NOT well-defined" },
        matrix_desc(field(v, "matrix"))
    );
    let witness = field(v, "witness");
    if !witness.is_null() {
        print!(", witness relation {}", int_list(witness));
    }
    println!();
}

fn render_verdict(label: &str, v: &Value, indent: &str) {
    if v.is_null() {
        println!("{indent}{label}: not decided");
        return;
    }
    let passed = flag(field(v, "passed"));
    print!("{indent}{label}: {}", if passed { "pass" } else { "FAIL" });
    let witness = field(v, "witness");
    if !witness.is_null() {
        print!(" — {}", text(witness));
    }
    println!();
}

pub fn render_les_report(report: &Value, indent: &str) {
    println!("{indent}subject: {}", text(field(report, "subject")));
    println!(
        "{indent}hypotheses: {}",
        if flag(field(report, "hypotheses_pass")) { "PASS" } else { "FAIL" }
    );
    for h in items(field(report, "hypotheses")) {
        print!(
            "{indent}  [{}] {}",
            if flag(field(h, "passed")) { "ok" } else { "XX" },
            text(field(h, "label"))
        );
        let witness = field(h, "witness");
        if !witness.is_null() {
            print!(" — {}", text(witness));
        }
        println!();
    }
    println!(
        "{indent}groups: A = {}, B = {}, C = {}",
        group_desc(field(report, "group_a")),
        group_desc(field(report, "group_b")),
        group_desc(field(report, "group_c"))
    );
    render_group_map("alpha", field(report, "alpha"), indent);
    render_group_map("beta", field(report, "beta"), indent);
    let middle = field(report, "middle_pullback");
    if middle.is_null() {
        println!("{indent}base-change-exact structure: not computed (hypotheses failed)");
    } else {
        println!("{indent}base-change-exact structure on B: group {}", group_desc(middle));
        render_group_map("  alpha'", field(report, "alpha_pullback"), indent);
        render_group_map("  beta'", field(report, "beta_pullback"), indent);
    }
    render_verdict(
        "exact at B (kernel of the quotient comparison = image of induction)",
        field(report, "exact_at_b"),
        indent,
    );
    render_verdict("surjective at C", field(report, "surjective_at_c"), indent);
    let variant = field(report, "variant_all_monos");
    if !variant.is_null() {
        println!(
            "{indent}variant (all monomorphisms as cofibrations): group {}",
            group_desc(field(variant, "middle"))
        );
        render_group_map("  alpha", field(variant, "alpha"), indent);
        render_group_map("  beta", field(variant, "beta"), indent);
        render_verdict("  exact at B", field(variant, "exact_at_b"), indent);
        render_verdict("  surjective at C", field(variant, "surjective_at_c"), indent);
    }
    let fibers = items(field(report, "fiber_comparison"));
    if !fibers.is_empty() {
        println!("{indent}fiber comparison (projective base change vs induced):");
        for f in fibers {
            println!(
                "{indent}  {}: projective base change: {}, induced from subalgebra: {}",
                text(field(f, "module")),
                yes_no(flag(field(f, "projective_base_change"))),
                yes_no(flag(field(f, "induced_from_subalgebra")))
            );
        }
    }
    render_caveats(field(report, "caveats"), indent);
}

pub fn render_les(env: &Value) {
    let r = field(env, "result");
    render_les_report(field(r, "report"), "");
    println!("overall: {}", if flag(field(r, "passed")) { "PASS" } else { "FAIL" });
}

pub fn render_tower(env: &Value) {
    let r = field(env, "result");
    println!("tower: {}", text(field(r, "reference")));
    for (i, stage) in items(field(r, "stages")).iter().enumerate() {
        println!(
            "stage {} [{}]: {}",
            i + 1,
            text(field(stage, "algebra")),
            if flag(field(stage, "passed")) { "PASS" } else { "FAIL" }
        );
        render_les_report(field(stage, "report"), "  ");
    }
    println!("overall: {}", if flag(field(r, "all_passed")) { "PASS" } else { "FAIL" });
}
