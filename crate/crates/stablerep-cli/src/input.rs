//! Input plumbing: algebra/morphism/module references, class descriptors,
//! and universe specifications.
//!
//! A reference is either `preset:<name>:<args>` or a file path; file paths
//! inside a loaded file resolve relative to that file's directory.  Loading
//! errors are reported as input errors (CLI exit code 2) regardless of which
//! validation tripped, since at this stage the data is user input.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use stablerep::algebra::{Algebra, AlgebraMorphism};
use stablerep::allowable::AllowableClass;
use stablerep::decomp::enumerate_indecomposables;
use stablerep::error::Error;
use stablerep::modules::Module;
use stablerep::textio;
use stablerep::Result;

/// Named-object loader with a per-run cache, so identical references map to
/// identical objects and ids are stable across runs.
pub struct Workspace {
    algebras: RefCell<BTreeMap<String, Arc<Algebra>>>,
}

impl Workspace {
    pub fn new() -> Workspace {
        Workspace { algebras: RefCell::new(BTreeMap::new()) }
    }

    /// Resolve an algebra reference; `base` anchors relative file paths.
    pub fn algebra(&self, reference: &str, base: &Path) -> Result<Arc<Algebra>> {
        let key = if reference.starts_with("preset:") {
            reference.to_string()
        } else {
            join(base, reference).to_string_lossy().into_owned()
        };
        if let Some(found) = self.algebras.borrow().get(&key) {
            return Ok(found.clone());
        }
        let alg = if let Some(spec) = reference.strip_prefix("preset:") {
            preset_algebra(spec)?
        } else {
            let path = join(base, reference);
            let text = read(&path)?;
            textio::parse_algebra(&text).map_err(|e| load_err(&path, e))?
        };
        self.algebras.borrow_mut().insert(key, alg.clone());
        Ok(alg)
    }

    /// Load a morphism file; inner algebra references resolve relative to the
    /// file.
    pub fn morphism(&self, reference: &str, base: &Path) -> Result<AlgebraMorphism> {
        let path = join(base, reference);
        let text = read(&path)?;
        let dir = parent(&path);
        let resolve = |r: &str| self.algebra(r, &dir);
        textio::parse_morphism(&text, &resolve).map_err(|e| load_err(&path, e))
    }

    /// Load a single-module file.
    pub fn module(&self, reference: &str, base: &Path) -> Result<Module> {
        let path = join(base, reference);
        let text = read(&path)?;
        let dir = parent(&path);
        let resolve = |r: &str| self.algebra(r, &dir);
        textio::parse_module(&text, &resolve).map_err(|e| load_err(&path, e))
    }

    /// Load a module-list file.
    pub fn module_list(&self, reference: &str, base: &Path) -> Result<Vec<Module>> {
        let path = join(base, reference);
        let text = read(&path)?;
        let dir = parent(&path);
        let resolve = |r: &str| self.algebra(r, &dir);
        textio::parse_module_list(&text, &resolve).map_err(|e| load_err(&path, e))
    }
}

fn join(base: &Path, reference: &str) -> PathBuf {
    let p = Path::new(reference);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn parent(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read `{}`: {e}", path.display())))
}

/// Keep parse errors (they carry line numbers) but downgrade mathematical
/// validation failures in loaded files to input errors.
fn load_err(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, msg } => {
            Error::Parse { line, msg: format!("{}: {msg}", path.display()) }
        }
        Error::Input(msg) => Error::Input(msg),
        Error::CapExceeded(msg) => Error::CapExceeded(msg),
        other => Error::Input(format!("invalid input `{}`: {other}", path.display())),
    }
}

fn num<T: std::str::FromStr>(what: &str, tok: &str) -> Result<T> {
    tok.parse::<T>().map_err(|_| Error::Input(format!("{what}: `{tok}` is not a number")))
}

/// Build an algebra from a preset spec (the part after `preset:`), e.g.
/// `trunc_poly:2:4` or `field:3`.
fn preset_algebra(spec: &str) -> Result<Arc<Algebra>> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["field", p] => Algebra::field(num("field", p)?),
        ["trunc_poly", p, n] => Algebra::trunc_poly(num("trunc_poly", p)?, num("trunc_poly", n)?),
        ["exterior", p, g] => Algebra::exterior(num("exterior", p)?, num("exterior", g)?),
        ["square_zero", p, g] => {
            Algebra::square_zero(num("square_zero", p)?, num("square_zero", g)?)
        }
        ["upper_triangular_2x2", p] => {
            Algebra::upper_triangular_2x2(num("upper_triangular_2x2", p)?)
        }
        ["full_matrix", p, n] => Algebra::full_matrix(num("full_matrix", p)?, num("full_matrix", n)?),
        _ => Err(Error::Input(format!(
            "unknown preset `{spec}` (expected field:p, trunc_poly:p:n, exterior:p:g, square_zero:p:g, upper_triangular_2x2:p, or full_matrix:p:n)"
        ))),
    }
}

/// Parse a class descriptor over the given ambient algebra.
///
/// Grammar: `all` | `trivial` | `projgen <module-ref>…` |
/// `injgen <module-ref>…` | `pullback <morphism-ref> <class>` |
/// `pushforward <morphism-ref> <class>`.  Module references are `regular`,
/// `coregular`, or module file paths; morphism references are file paths.
pub fn parse_class(
    ws: &Workspace,
    descriptor: &str,
    alg: &Arc<Algebra>,
    base: &Path,
) -> Result<AllowableClass> {
    let mut tokens: Vec<&str> = descriptor.split_whitespace().collect();
    let cls = parse_class_tokens(ws, &mut tokens, alg, base)?;
    if !tokens.is_empty() {
        return Err(Error::Input(format!(
            "trailing tokens `{}` in class descriptor `{descriptor}`",
            tokens.join(" ")
        )));
    }
    cls.validate(alg).map_err(|e| Error::Input(format!("invalid class `{descriptor}`: {e}")))?;
    Ok(cls)
}

fn parse_class_tokens(
    ws: &Workspace,
    tokens: &mut Vec<&str>,
    alg: &Arc<Algebra>,
    base: &Path,
) -> Result<AllowableClass> {
    if tokens.is_empty() {
        return Err(Error::Input("empty class descriptor".into()));
    }
    let head = tokens.remove(0);
    match head {
        "all" => Ok(AllowableClass::All),
        "trivial" => Ok(AllowableClass::Trivial),
        "projgen" | "injgen" => {
            if tokens.is_empty() {
                return Err(Error::Input(format!("`{head}` needs at least one module")));
            }
            let mut gens = Vec::new();
            while !tokens.is_empty() {
                gens.push(module_ref(ws, tokens.remove(0), alg, base)?);
            }
            Ok(if head == "projgen" {
                AllowableClass::ProjGenerated(gens)
            } else {
                AllowableClass::InjGenerated(gens)
            })
        }
        "pullback" | "pushforward" => {
            if tokens.is_empty() {
                return Err(Error::Input(format!("`{head}` needs a morphism and a class")));
            }
            let phi = ws.morphism(tokens.remove(0), base)?;
            let inner = parse_class_tokens(ws, tokens, &phi.target.clone(), base)?;
            Ok(if head == "pullback" {
                AllowableClass::Pullback(phi, Box::new(inner))
            } else {
                AllowableClass::Pushforward(phi, Box::new(inner))
            })
        }
        other => Err(Error::Input(format!(
            "unknown class keyword `{other}` (expected all, trivial, projgen, injgen, pullback, or pushforward)"
        ))),
    }
}

fn module_ref(ws: &Workspace, reference: &str, alg: &Arc<Algebra>, base: &Path) -> Result<Module> {
    match reference {
        "regular" => Ok(Module::regular(alg)),
        "coregular" => Ok(Module::coregular(alg)),
        _ => ws.module(reference, base),
    }
}

/// Resolve a universe specification: `census` / `census:<max_dim>` for the
/// indecomposables up to a dimension bound, or a module-list file path.
pub fn parse_universe(
    ws: &Workspace,
    spec: &str,
    alg: &Arc<Algebra>,
    default_max_dim: usize,
    cap: u128,
    base: &Path,
) -> Result<Vec<Module>> {
    if spec == "census" || spec.starts_with("census:") {
        let max_dim = match spec.strip_prefix("census:") {
            None | Some("") => default_max_dim,
            Some(n) => num("census", n)?,
        };
        let census = enumerate_indecomposables(alg, max_dim, cap)?;
        return Ok(census.modules);
    }
    let mods = ws.module_list(spec, base)?;
    for m in &mods {
        if !m.alg.same_structure(alg) {
            return Err(Error::Input(
                "universe modules live over a different algebra than the subject".into(),
            ));
        }
    }
    Ok(mods)
}

/// Parse a `;`-separated list of coordinate vectors, each of length `dim`.
pub fn parse_vectors(option: &str, text: &str, dim: usize) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for chunk in text.split(';') {
        let toks: Vec<&str> = chunk.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() != dim {
            return Err(Error::Input(format!(
                "{option}: expected {dim} coordinates per vector, found {}",
                toks.len()
            )));
        }
        out.push(toks.iter().map(|t| num::<u64>(option, t)).collect::<Result<Vec<u64>>>()?);
    }
    if out.is_empty() {
        return Err(Error::Input(format!("{option}: expected at least one vector")));
    }
    Ok(out)
}
