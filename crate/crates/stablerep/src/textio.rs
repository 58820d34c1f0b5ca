//! Versioned plain-text formats for algebras, morphisms, modules, and towers.
//!
//! Every file starts with a version tag (`algebra v1`, `morphism v1`,
//! `module v1`, `tower v1`); blank lines and `#` comments are ignored
//! everywhere.  Parse errors carry 1-based line numbers.
//!
//! Algebra v1: after the tag, a header `p <prime> dim <n>`, a `labels` line
//! with `n` tokens, a `unit` line with `n` coordinates, and `n²` structure
//! lines `i j : k₁ c₁ k₂ c₂ …` listing the nonzero coordinates of each basis
//! product `eᵢ·eⱼ`.
//!
//! Morphism v1: `source <ref>` and `target <ref>` lines naming the two
//! algebras (resolution of the references is the caller's job), then one
//! dense row per source basis element.
//!
//! Module v1: `algebra <ref>` and `dim <d>` lines, then one dense `d × d`
//! action matrix per algebra basis element, row by row.
//!
//! Tower v1: repeated stage blocks `stage <ref>` / `sub <vectors>` /
//! `ideal <vectors>`, where a vector list separates coordinate vectors with
//! `;`.  Each stage describes a subalgebra (generated by the `sub` elements)
//! and a quotient (by the ideal the `ideal` elements generate) of the named
//! middle algebra.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::error::Error;
use crate::linalg::fp::FpMatrix;
use crate::modules::Module;
use crate::Result;

/// Resolves an algebra reference (e.g. a preset spec or a file path) to an
/// algebra; supplied by the caller of the morphism/module parsers.
pub type AlgebraResolver<'a> = dyn Fn(&str) -> Result<Arc<Algebra>> + 'a;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Significant lines of a file: 1-based line number plus trimmed content,
/// with blanks and `#` comments dropped.
fn significant_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        Lines { items: significant_lines(text), pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.items.get(self.pos) {
            Some(&(n, l)) => {
                self.pos += 1;
                Ok((n, l))
            }
            None => {
                let n = self.items.last().map(|&(n, _)| n).unwrap_or(0) + 1;
                Err(parse_err(n, format!("unexpected end of file, expected {what}")))
            }
        }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn expect_tag(&mut self, tag: &str) -> Result<()> {
        let (n, l) = self.next(&format!("`{tag}`"))?;
        if l == tag {
            Ok(())
        } else {
            Err(parse_err(n, format!("expected `{tag}`, found `{l}`")))
        }
    }

    /// Remaining-line check for trailing garbage.
    fn expect_end(&self) -> Result<()> {
        match self.items.get(self.pos) {
            None => Ok(()),
            Some(&(n, l)) => Err(parse_err(n, format!("unexpected trailing content `{l}`"))),
        }
    }
}

fn parse_u64(line: usize, tok: &str) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| parse_err(line, format!("`{tok}` is not a number")))
}

fn parse_usize(line: usize, tok: &str) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| parse_err(line, format!("`{tok}` is not a number")))
}

/// A line of exactly `n` numeric coordinates.
fn parse_vector(line: usize, text: &str, n: usize) -> Result<Vec<u64>> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() != n {
        return Err(parse_err(line, format!("expected {n} coordinates, found {}", toks.len())));
    }
    toks.iter().map(|t| parse_u64(line, t)).collect()
}

/// A keyword line `key rest…`; returns the rest.
fn keyword_line<'a>(line: usize, text: &'a str, key: &str) -> Result<&'a str> {
    match text.strip_prefix(key) {
        Some(rest) if rest.starts_with(char::is_whitespace) || rest.is_empty() => Ok(rest.trim()),
        _ => Err(parse_err(line, format!("expected `{key} …`, found `{text}`"))),
    }
}

fn sanitize_label(label: &str) -> String {
    label.split_whitespace().collect::<Vec<_>>().join("_")
}

/// Render an algebra in the `algebra v1` format.
pub fn render_algebra(alg: &Algebra) -> String {
    let mut out = String::new();
    out.push_str("algebra v1\n");
    out.push_str(&format!("p {} dim {}\n", alg.p, alg.dim));
    let labels: Vec<String> = alg.labels.iter().map(|l| sanitize_label(l)).collect();
    out.push_str(&format!("labels {}\n", labels.join(" ")));
    let unit: Vec<String> = alg.unit.iter().map(|c| c.to_string()).collect();
    out.push_str(&format!("unit {}\n", unit.join(" ")));
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            let mut line = format!("{i} {j} :");
            for (k, &c) in alg.mul[i][j].iter().enumerate() {
                if c != 0 {
                    line.push_str(&format!(" {k} {c}"));
                }
            }
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

/// Parse the `algebra v1` format and validate the structure constants.
pub fn parse_algebra(text: &str) -> Result<Arc<Algebra>> {
    let mut lines = Lines::new(text);
    lines.expect_tag("algebra v1")?;

    let (hn, header) = lines.next("header `p <prime> dim <n>`")?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "p" || toks[2] != "dim" {
        return Err(parse_err(hn, "expected header `p <prime> dim <n>`"));
    }
    let p = parse_u64(hn, toks[1])?;
    let dim = parse_usize(hn, toks[3])?;
    if dim == 0 {
        return Err(parse_err(hn, "dimension must be positive"));
    }

    let (ln, label_line) = lines.next("`labels …`")?;
    let rest = keyword_line(ln, label_line, "labels")?;
    let labels: Vec<String> = rest.split_whitespace().map(String::from).collect();
    if labels.len() != dim {
        return Err(parse_err(ln, format!("expected {dim} labels, found {}", labels.len())));
    }

    let (un, unit_line) = lines.next("`unit …`")?;
    let unit = parse_vector(un, keyword_line(un, unit_line, "unit")?, dim)?;

    let mut mul = vec![vec![vec![0u64; dim]; dim]; dim];
    let mut seen = vec![vec![false; dim]; dim];
    for _ in 0..dim * dim {
        let (sn, sline) = lines.next("a structure line `i j : …`")?;
        let (head, tail) = sline
            .split_once(':')
            .ok_or_else(|| parse_err(sn, "structure line needs `i j : …`"))?;
        let idx: Vec<&str> = head.split_whitespace().collect();
        if idx.len() != 2 {
            return Err(parse_err(sn, "structure line needs two indices before `:`"));
        }
        let i = parse_usize(sn, idx[0])?;
        let j = parse_usize(sn, idx[1])?;
        if i >= dim || j >= dim {
            return Err(parse_err(sn, format!("index out of range in `{sline}`")));
        }
        if seen[i][j] {
            return Err(parse_err(sn, format!("duplicate structure line for ({i}, {j})")));
        }
        seen[i][j] = true;
        let toks: Vec<&str> = tail.split_whitespace().collect();
        if toks.len() % 2 != 0 {
            return Err(parse_err(sn, "structure coordinates come in `index coefficient` pairs"));
        }
        for pair in toks.chunks(2) {
            let k = parse_usize(sn, pair[0])?;
            let c = parse_u64(sn, pair[1])?;
            if k >= dim {
                return Err(parse_err(sn, format!("coordinate index {k} out of range")));
            }
            mul[i][j][k] = c;
        }
    }
    lines.expect_end()?;
    Algebra::new(p, labels, mul, unit)
}

/// Render an algebra morphism in the `morphism v1` format; the algebra
/// references are caller-chosen strings (preset specs or file paths).
pub fn render_morphism(f: &AlgebraMorphism, source_ref: &str, target_ref: &str) -> String {
    let mut out = String::new();
    out.push_str("morphism v1\n");
    out.push_str(&format!("source {source_ref}\n"));
    out.push_str(&format!("target {target_ref}\n"));
    for i in 0..f.source.dim {
        let row: Vec<String> = f.matrix.row(i).iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parse the `morphism v1` format, resolving the algebra references through
/// `resolve`, and validate the morphism equations.
pub fn parse_morphism(text: &str, resolve: &AlgebraResolver) -> Result<AlgebraMorphism> {
    let mut lines = Lines::new(text);
    lines.expect_tag("morphism v1")?;
    let (sn, sline) = lines.next("`source …`")?;
    let source = resolve(keyword_line(sn, sline, "source")?)?;
    let (tn, tline) = lines.next("`target …`")?;
    let target = resolve(keyword_line(tn, tline, "target")?)?;
    let mut rows = Vec::with_capacity(source.dim);
    for _ in 0..source.dim {
        let (rn, rline) = lines.next("a matrix row")?;
        rows.push(parse_vector(rn, rline, target.dim)?);
    }
    lines.expect_end()?;
    let p = source.p;
    AlgebraMorphism::new(source, target, FpMatrix::from_rows(p, &rows))
}

/// Render a module in the `module v1` format.
pub fn render_module(m: &Module, algebra_ref: &str) -> String {
    let mut out = String::new();
    out.push_str("module v1\n");
    out.push_str(&format!("algebra {algebra_ref}\n"));
    out.push_str(&format!("dim {}\n", m.dim));
    for a in &m.action {
        for r in 0..m.dim {
            let row: Vec<String> = a.row(r).iter().map(|c| c.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

/// Parse the `module v1` format, resolving the algebra reference through
/// `resolve`, and validate the action.
pub fn parse_module(text: &str, resolve: &AlgebraResolver) -> Result<Module> {
    let mut lines = Lines::new(text);
    lines.expect_tag("module v1")?;
    let (an, aline) = lines.next("`algebra …`")?;
    let alg = resolve(keyword_line(an, aline, "algebra")?)?;
    let (dn, dline) = lines.next("`dim …`")?;
    let dim = parse_usize(dn, keyword_line(dn, dline, "dim")?)?;
    let mut action = Vec::with_capacity(alg.dim);
    for _ in 0..alg.dim {
        let mut rows = Vec::with_capacity(dim);
        for _ in 0..dim {
            let (rn, rline) = lines.next("an action matrix row")?;
            rows.push(parse_vector(rn, rline, dim)?);
        }
        action.push(FpMatrix::from_rows(alg.p, &rows));
    }
    lines.expect_end()?;
    Module::new(alg, action)
}

/// Render several modules over one algebra in the `modules v1` list format:
/// an `algebra <ref>` header, then per module a `module` line, a `dim <d>`
/// line, and the action matrices as in the single-module format.
pub fn render_module_list(mods: &[Module], algebra_ref: &str) -> Result<String> {
    let mut out = String::new();
    out.push_str("modules v1\n");
    out.push_str(&format!("algebra {algebra_ref}\n"));
    for (i, m) in mods.iter().enumerate() {
        if i > 0 && !m.alg.same_structure(&mods[0].alg) {
            return Err(Error::AlgebraMismatch(
                "module list entries live over different algebras".into(),
            ));
        }
        out.push_str("module\n");
        out.push_str(&format!("dim {}\n", m.dim));
        for a in &m.action {
            for r in 0..m.dim {
                let row: Vec<String> = a.row(r).iter().map(|c| c.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
    }
    Ok(out)
}

/// Parse the `modules v1` list format.
pub fn parse_module_list(text: &str, resolve: &AlgebraResolver) -> Result<Vec<Module>> {
    let mut lines = Lines::new(text);
    lines.expect_tag("modules v1")?;
    let (an, aline) = lines.next("`algebra …`")?;
    let alg = resolve(keyword_line(an, aline, "algebra")?)?;
    let mut mods = Vec::new();
    while let Some((mn, mline)) = lines.peek() {
        lines.pos += 1;
        if mline != "module" {
            return Err(parse_err(mn, format!("expected `module`, found `{mline}`")));
        }
        let (dn, dline) = lines.next("`dim …`")?;
        let dim = parse_usize(dn, keyword_line(dn, dline, "dim")?)?;
        let mut action = Vec::with_capacity(alg.dim);
        for _ in 0..alg.dim {
            let mut rows = Vec::with_capacity(dim);
            for _ in 0..dim {
                let (rn, rline) = lines.next("an action matrix row")?;
                rows.push(parse_vector(rn, rline, dim)?);
            }
            action.push(FpMatrix::from_rows(alg.p, &rows));
        }
        mods.push(Module::new(alg.clone(), action)?);
    }
    if mods.is_empty() {
        return Err(parse_err(2, "module list has no modules"));
    }
    Ok(mods)
}

/// One stage of a tower file: a middle-algebra reference, subalgebra
/// generators, and quotient-ideal generators (all as elements of the middle
/// algebra).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerStageSpec {
    pub algebra: String,
    pub sub_generators: Vec<Vec<u64>>,
    pub ideal_generators: Vec<Vec<u64>>,
}

/// A `;`-separated list of coordinate vectors (lengths checked later against
/// the resolved algebra).
fn parse_vector_list(line: usize, text: &str) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for chunk in text.split(';') {
        let toks: Vec<&str> = chunk.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        out.push(toks.iter().map(|t| parse_u64(line, t)).collect::<Result<Vec<u64>>>()?);
    }
    if out.is_empty() {
        return Err(parse_err(line, "expected at least one coordinate vector"));
    }
    Ok(out)
}

/// Render a tower file from `(algebra ref, subalgebra gens, ideal gens)`
/// stages.
pub fn render_tower(stages: &[TowerStageSpec]) -> String {
    let mut out = String::new();
    out.push_str("tower v1\n");
    let join = |vs: &[Vec<u64>]| -> String {
        vs.iter()
            .map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(" ; ")
    };
    for s in stages {
        out.push_str(&format!("stage {}\n", s.algebra));
        out.push_str(&format!("sub {}\n", join(&s.sub_generators)));
        out.push_str(&format!("ideal {}\n", join(&s.ideal_generators)));
    }
    out
}

/// Parse the `tower v1` format into its stage descriptions.
pub fn parse_tower(text: &str) -> Result<Vec<TowerStageSpec>> {
    let mut lines = Lines::new(text);
    lines.expect_tag("tower v1")?;
    let mut stages = Vec::new();
    while let Some((sn, sline)) = lines.peek() {
        lines.pos += 1;
        let algebra = keyword_line(sn, sline, "stage")?.to_string();
        if algebra.is_empty() {
            return Err(parse_err(sn, "stage line needs an algebra reference"));
        }
        let (gn, gline) = lines.next("`sub …`")?;
        let sub_generators = parse_vector_list(gn, keyword_line(gn, gline, "sub")?)?;
        let (in_, iline) = lines.next("`ideal …`")?;
        let ideal_generators = parse_vector_list(in_, keyword_line(in_, iline, "ideal")?)?;
        stages.push(TowerStageSpec { algebra, sub_generators, ideal_generators });
    }
    if stages.is_empty() {
        return Err(parse_err(2, "tower file has no stages"));
    }
    Ok(stages)
}
