//! Finite right modules over a [`crate::algebra::Algebra`], stored as one
//! action matrix per algebra basis element.
//!
//! Row convention throughout: module elements are row vectors and a
//! homomorphism `f: M → N` is a `dim M × dim N` matrix `F` acting by
//! `v ↦ v·F`; it must intertwine the actions, `ρ_M(a)·F = F·ρ_N(a)`.

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::error::Error;
use crate::linalg::fp::{coords_in_rowbasis, echelonize, vector_count};
use crate::linalg::FpMatrix;
use crate::Result;
use std::sync::Arc;

/// A finite right module given by its action matrices.
#[derive(Clone)]
pub struct Module {
    pub alg: Arc<Algebra>,
    pub dim: usize,
    /// `action[i]` is the matrix of the right action of the `i`-th algebra
    /// basis element.
    pub action: Vec<FpMatrix>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_structure(&other.alg) && self.dim == other.dim && self.action == other.action
    }
}
impl Eq for Module {}

impl std::fmt::Debug for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Module(dim={} over {:?})", self.dim, self.alg)
    }
}

/// A homomorphism of right modules.
#[derive(Clone, PartialEq)]
pub struct ModuleHom {
    pub source: Module,
    pub target: Module,
    pub matrix: FpMatrix,
}

impl std::fmt::Debug for ModuleHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModuleHom({} -> {})", self.source.dim, self.target.dim)
    }
}

/// A validated short exact sequence `0 → X → Y → Z → 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub f: ModuleHom,
    pub g: ModuleHom,
}

impl Algebra {
    /// Structural equality ignoring basis labels (quotients and presets with
    /// the same table are interchangeable as module coefficients).
    pub fn same_structure(&self, other: &Algebra) -> bool {
        self.p == other.p && self.dim == other.dim && self.mul == other.mul
            && self.unit == other.unit
    }
}

impl Module {
    /// Validated construction: the actions must respect the structure
    /// constants and the unit must act as the identity.
    pub fn new(alg: Arc<Algebra>, action: Vec<FpMatrix>) -> Result<Module> {
        if action.len() != alg.dim {
            return Err(Error::DimMismatch(format!(
                "{} action matrices for algebra of dim {}",
                action.len(),
                alg.dim
            )));
        }
        let dim = action[0].rows;
        for m in &action {
            if m.rows != dim || m.cols != dim || m.p != alg.p {
                return Err(Error::DimMismatch("action matrices must be square, same p".into()));
            }
        }
        let module = Module { alg: alg.clone(), dim, action };
        // ρ(e_i)·ρ(e_j) = Σ_k c[i][j][k]·ρ(e_k)
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                let lhs = module.action[i].mul(&module.action[j])?;
                let rhs = module.action_of(&alg.mul[i][j]);
                if lhs != rhs {
                    return Err(Error::BadAction(i, j));
                }
            }
        }
        if !module.action_of(&alg.unit).is_identity() {
            return Err(Error::BadUnitAction);
        }
        Ok(module)
    }

    /// The right regular representation.
    pub fn regular(alg: &Arc<Algebra>) -> Module {
        let action = (0..alg.dim)
            .map(|i| {
                FpMatrix::from_fn(alg.p, alg.dim, alg.dim, |j, k| alg.mul[j][i][k])
            })
            .collect();
        Module::new(alg.clone(), action).expect("regular module is valid")
    }

    /// The zero module.
    pub fn zero(alg: &Arc<Algebra>) -> Module {
        let action = (0..alg.dim).map(|_| FpMatrix::zeros(alg.p, 0, 0)).collect();
        Module { alg: alg.clone(), dim: 0, action }
    }

    /// The standard injective cogenerator `U = D(A)`: the linear dual of the
    /// algebra with action `(f·a)(m) = f(a·m)`.
    pub fn coregular(alg: &Arc<Algebra>) -> Module {
        let action = (0..alg.dim)
            .map(|i| {
                // Transpose of left multiplication by e_i.
                FpMatrix::from_fn(alg.p, alg.dim, alg.dim, |j, k| alg.mul[i][k][j])
            })
            .collect();
        Module::new(alg.clone(), action).expect("coregular module is valid")
    }

    /// Matrix of the action of an arbitrary element.
    pub fn action_of(&self, a: &[u64]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.alg.p, self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.action[i].scale(c)).expect("same shape");
            }
        }
        m
    }

    /// `v · a` for a module element `v` and algebra element `a`.
    pub fn act(&self, v: &[u64], a: &[u64]) -> Vec<u64> {
        self.action_of(a).row_apply(v)
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// The dual module over the opposite algebra: actions are transposed.
    pub fn dual(&self) -> Module {
        let opp = self.alg.opposite();
        let action = self.action.iter().map(|m| m.transpose()).collect();
        Module::new(opp, action).expect("dual module is valid")
    }
}

impl ModuleHom {
    /// Validated construction: checks the intertwining equations.
    pub fn new(source: Module, target: Module, matrix: FpMatrix) -> Result<ModuleHom> {
        if !source.alg.same_structure(&target.alg) {
            return Err(Error::AlgebraMismatch("hom between different algebras".into()));
        }
        if matrix.rows != source.dim || matrix.cols != target.dim {
            return Err(Error::DimMismatch(format!(
                "hom matrix {}x{}, expected {}x{}",
                matrix.rows, matrix.cols, source.dim, target.dim
            )));
        }
        for i in 0..source.alg.dim {
            let lhs = source.action[i].mul(&matrix)?;
            let rhs = matrix.mul(&target.action[i])?;
            if lhs != rhs {
                return Err(Error::NotAHom(i));
            }
        }
        Ok(ModuleHom { source, target, matrix })
    }

    pub fn identity(m: &Module) -> ModuleHom {
        ModuleHom {
            source: m.clone(),
            target: m.clone(),
            matrix: FpMatrix::identity(m.alg.p, m.dim),
        }
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleHom {
        ModuleHom {
            source: source.clone(),
            target: target.clone(),
            matrix: FpMatrix::zeros(source.alg.p, source.dim, target.dim),
        }
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if self.target != other.source {
            return Err(Error::AlgebraMismatch("composition endpoints differ".into()));
        }
        Ok(ModuleHom {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimMismatch("hom addition endpoints differ".into()));
        }
        Ok(ModuleHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim == self.target.dim && self.matrix.rank() == self.source.dim
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.matrix.row_apply(v)
    }
}

impl ShortExact {
    /// Validate `0 → X →f Y →g Z → 0`.
    pub fn new(f: ModuleHom, g: ModuleHom) -> Result<ShortExact> {
        if f.target != g.source {
            return Err(Error::NotExact("middle modules differ".into()));
        }
        if !f.is_injective() {
            return Err(Error::NotExact("first map is not injective".into()));
        }
        if !g.is_surjective() {
            return Err(Error::NotExact("second map is not surjective".into()));
        }
        if !f.compose(&g)?.is_zero() {
            return Err(Error::NotExact("composite is nonzero".into()));
        }
        if f.source.dim + g.target.dim != f.target.dim {
            return Err(Error::NotExact("dimension count fails".into()));
        }
        // rank f = dim X and rank g = dim Z with f·g = 0 and the dimension
        // count force im f = ker g.
        Ok(ShortExact { f, g })
    }

    pub fn x(&self) -> &Module {
        &self.f.source
    }
    pub fn y(&self) -> &Module {
        &self.f.target
    }
    pub fn z(&self) -> &Module {
        &self.g.target
    }
}

/// Echelonized basis of the hom space `Hom_A(M, N)`, returned as matrices.
/// Deterministic: solutions of the intertwining system in row-major variable
/// order.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<FpMatrix>> {
    if !m.alg.same_structure(&n.alg) {
        return Err(Error::AlgebraMismatch("hom between different algebras".into()));
    }
    let p = m.alg.p;
    let (dm, dn) = (m.dim, n.dim);
    let vars = dm * dn;
    if vars == 0 {
        // Hom to or from the zero module is zero-dimensional.
        return Ok(Vec::new());
    }
    // Equations: for each algebra basis element i and each (a, b):
    //   Σ_r ρ_M(i)[a][r]·F[r][b] − Σ_c F[a][c]·ρ_N(i)[c][b] = 0.
    let mut rows = Vec::with_capacity(m.alg.dim * vars);
    for i in 0..m.alg.dim {
        let am = &m.action[i];
        let an = &n.action[i];
        for a in 0..dm {
            for b in 0..dn {
                let mut row = vec![0u64; vars];
                for r in 0..dm {
                    row[r * dn + b] = (row[r * dn + b] + am.get(a, r)) % p;
                }
                for c in 0..dn {
                    row[a * dn + c] = (row[a * dn + c] + p - an.get(c, b) % p) % p;
                }
                rows.push(row);
            }
        }
    }
    let sys = FpMatrix::from_rows(p, &rows);
    // Canonicalize to true reduced echelon form (sorted pivots) so that
    // coordinates in this basis can be read off directly downstream.
    let basis = echelonize(p, &sys.nullspace_basis());
    Ok(basis
        .into_iter()
        .map(|v| FpMatrix::from_fn(p, dm, dn, |r, c| v[r * dn + c]))
        .collect())
}

/// The submodule spanned by the given rows (closed under the action), with
/// its inclusion. The rows are closed up under the action automatically.
pub fn submodule_from_rows(m: &Module, rows: &[Vec<u64>]) -> (Module, ModuleHom) {
    let p = m.alg.p;
    let mut basis = echelonize(p, rows);
    loop {
        let mut new_rows = basis.clone();
        for b in &basis {
            for act in &m.action {
                new_rows.push(act.row_apply(b));
            }
        }
        let closed = echelonize(p, &new_rows);
        if closed.len() == basis.len() {
            break;
        }
        basis = closed;
    }
    let k = basis.len();
    let action: Vec<FpMatrix> = m
        .action
        .iter()
        .map(|act| {
            if k == 0 {
                return FpMatrix::zeros(p, 0, 0);
            }
            FpMatrix::from_rows(
                p,
                &basis
                    .iter()
                    .map(|b| {
                        coords_in_rowbasis(p, &basis, &act.row_apply(b))
                            .expect("invariant subspace")
                    })
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let sub = Module::new(m.alg.clone(), action).expect("submodule is valid");
    let incl_matrix = if k == 0 {
        FpMatrix::zeros(p, 0, m.dim)
    } else {
        FpMatrix::from_rows(p, &basis)
    };
    let incl = ModuleHom::new(sub.clone(), m.clone(), incl_matrix).expect("inclusion is a hom");
    (sub, incl)
}

/// The quotient of `m` by an action-invariant subspace, with its projection.
/// The subspace rows must already be action-invariant.
pub fn quotient_by_invariant_subspace(m: &Module, rows: &[Vec<u64>]) -> (Module, ModuleHom) {
    let p = m.alg.p;
    let basis = echelonize(p, rows);
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).expect("nonzero row"))
        .collect();
    let keep: Vec<usize> = (0..m.dim).filter(|k| !pivots.contains(k)).collect();
    let q = keep.len();
    let project = |v: &[u64]| -> Vec<u64> {
        let mut w = v.to_vec();
        for (b, &piv) in basis.iter().zip(pivots.iter()) {
            let c = w[piv];
            if c != 0 {
                for (wi, bi) in w.iter_mut().zip(b.iter()) {
                    *wi = (*wi + (p - c) * bi) % p;
                }
            }
        }
        keep.iter().map(|&k| w[k]).collect()
    };
    let action: Vec<FpMatrix> = m
        .action
        .iter()
        .map(|act| {
            let rows: Vec<Vec<u64>> = keep
                .iter()
                .map(|&k| {
                    let mut e = vec![0u64; m.dim];
                    e[k] = 1;
                    project(&act.row_apply(&e))
                })
                .collect();
            if q == 0 {
                FpMatrix::zeros(p, 0, 0)
            } else {
                FpMatrix::from_rows(p, &rows)
            }
        })
        .collect();
    let quot = Module::new(m.alg.clone(), action).expect("quotient by invariant subspace");
    let proj_rows: Vec<Vec<u64>> = (0..m.dim)
        .map(|i| {
            let mut e = vec![0u64; m.dim];
            e[i] = 1;
            project(&e)
        })
        .collect();
    let proj_matrix = if q == 0 {
        FpMatrix::zeros(p, m.dim, 0)
    } else {
        FpMatrix::from_rows(p, &proj_rows)
    };
    let proj = ModuleHom::new(m.clone(), quot.clone(), proj_matrix).expect("projection is a hom");
    (quot, proj)
}

/// Kernel of a hom, with its inclusion.
pub fn kernel(f: &ModuleHom) -> (Module, ModuleHom) {
    let rows = f.matrix.left_nullspace_basis();
    submodule_from_rows(&f.source, &rows)
}

/// Image of a hom: the submodule of the target it spans, with inclusion and
/// the surjection from the source onto it.
pub fn image(f: &ModuleHom) -> (Module, ModuleHom, ModuleHom) {
    let rows = f.matrix.row_space_basis();
    let (img, incl) = submodule_from_rows(&f.target, &rows);
    // Corestriction: express each image of a source basis vector in the
    // image basis.
    let p = f.source.alg.p;
    let basis: Vec<Vec<u64>> = (0..img.dim).map(|i| incl.matrix.row(i)).collect();
    let epi_rows: Vec<Vec<u64>> = (0..f.source.dim)
        .map(|i| coords_in_rowbasis(p, &basis, &f.matrix.row(i)).expect("row in image"))
        .collect();
    let epi_matrix = if img.dim == 0 {
        FpMatrix::zeros(p, f.source.dim, 0)
    } else {
        FpMatrix::from_rows(p, &epi_rows)
    };
    let epi = ModuleHom::new(f.source.clone(), img.clone(), epi_matrix).expect("corestriction");
    (img, incl, epi)
}

/// Cokernel of a hom, with its projection.
pub fn cokernel(f: &ModuleHom) -> (Module, ModuleHom) {
    let rows = f.matrix.row_space_basis();
    quotient_by_invariant_subspace(&f.target, &rows)
}

/// Direct sum with injections and projections.
pub fn direct_sum(ms: &[&Module]) -> Result<(Module, Vec<ModuleHom>, Vec<ModuleHom>)> {
    let alg = match ms.first() {
        Some(m) => m.alg.clone(),
        None => return Err(Error::Input("direct_sum of an empty list needs an algebra".into())),
    };
    if !ms.iter().all(|m| m.alg.same_structure(&alg)) {
        return Err(Error::AlgebraMismatch("direct sum over different algebras".into()));
    }
    let p = alg.p;
    let action: Vec<FpMatrix> = (0..alg.dim)
        .map(|i| {
            let blocks: Vec<&FpMatrix> = ms.iter().map(|m| &m.action[i]).collect();
            FpMatrix::block_diag(p, &blocks)
        })
        .collect();
    let total = Module::new(alg, action)?;
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for m in ms {
        let mut inj = FpMatrix::zeros(p, m.dim, total.dim);
        let mut proj = FpMatrix::zeros(p, total.dim, m.dim);
        for i in 0..m.dim {
            inj.set(i, offset + i, 1);
            proj.set(offset + i, i, 1);
        }
        injections.push(ModuleHom::new((*m).clone(), total.clone(), inj)?);
        projections.push(ModuleHom::new(total.clone(), (*m).clone(), proj)?);
        offset += m.dim;
    }
    Ok((total, injections, projections))
}

/// A pushout square: `P = (Y ⊕ Z) / im(x ↦ (f(x), −c(x)))`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub module: Module,
    /// Structure map `Y → P`.
    pub from_y: ModuleHom,
    /// Structure map `Z → P`.
    pub from_z: ModuleHom,
    /// Projection `Y ⊕ Z → P` (kept internally for induced maps).
    pub quotient: ModuleHom,
}

/// Pushout of `f: X → Y` along `c: X → Z`.
pub fn pushout(f: &ModuleHom, c: &ModuleHom) -> Result<Pushout> {
    if f.source != c.source {
        return Err(Error::AlgebraMismatch("pushout legs must share a source".into()));
    }
    let (sum, injs, _) = direct_sum(&[&f.target, &c.target])?;
    // x ↦ (f(x), −c(x)) : X → Y ⊕ Z.
    let glue = f
        .compose(&injs[0])?
        .add(&ModuleHom {
            source: c.source.clone(),
            target: sum.clone(),
            matrix: c.compose(&injs[1])?.matrix.neg(),
        })?;
    let rows = glue.matrix.row_space_basis();
    let (module, quotient) = quotient_by_invariant_subspace(&sum, &rows);
    let from_y = injs[0].compose(&quotient)?;
    let from_z = injs[1].compose(&quotient)?;
    Ok(Pushout { module, from_y, from_z, quotient })
}

impl Pushout {
    /// The induced map out of the pushout: given `u: Y → Q`, `v: Z → Q` with
    /// `f·u = c·v`, the unique `P → Q` through which they factor.
    pub fn universal(&self, u: &ModuleHom, v: &ModuleHom) -> Result<ModuleHom> {
        if u.target != v.target {
            return Err(Error::AlgebraMismatch("universal targets differ".into()));
        }
        let p = self.module.alg.p;
        let stacked = u.matrix.vstack(&v.matrix)?;
        // A section of the projection lifts each P basis vector to Y⊕Z;
        // compose with [u; v] stacked.
        let id_p = FpMatrix::identity(p, self.module.dim);
        let section = self
            .quotient
            .matrix
            .solve_left(&id_p)
            .ok_or_else(|| Error::Input("quotient projection has no section".into()))?;
        let matrix = section.mul(&stacked)?;
        // Factorization only exists when the cocone kills the relations.
        if self.quotient.matrix.mul(&matrix)? != stacked {
            return Err(Error::Input("cocone does not agree on the glued submodule".into()));
        }
        ModuleHom::new(self.module.clone(), u.target.clone(), matrix)
    }
}

/// Pullback of a cospan `f: Y → W ← Z : g`, with its two projections.
pub fn pullback(f: &ModuleHom, g: &ModuleHom) -> Result<(Module, ModuleHom, ModuleHom)> {
    if f.target != g.target {
        return Err(Error::AlgebraMismatch("pullback legs must share a target".into()));
    }
    let (sum, _, projs) = direct_sum(&[&f.source, &g.source])?;
    // (y, z) ↦ f(y) − g(z).
    let diff = projs[0]
        .compose(f)?
        .add(&ModuleHom {
            source: sum.clone(),
            target: f.target.clone(),
            matrix: projs[1].compose(g)?.matrix.neg(),
        })?;
    let (pb, incl) = kernel(&diff);
    let to_y = incl.compose(&projs[0])?;
    let to_z = incl.compose(&projs[1])?;
    Ok((pb, to_y, to_z))
}

/// All submodules of `m` (as echelonized row bases), sorted by dimension and
/// then lexicographically. Exhaustive: every submodule is a sum of cyclic
/// submodules, and the sum-closure of all cyclics is computed.
pub fn submodules(m: &Module, cap: usize) -> Result<Vec<Vec<Vec<u64>>>> {
    let p = m.alg.p;
    if vector_count(p, m.dim) > 1 << 20 {
        return Err(Error::CapExceeded(format!(
            "submodule enumeration over p^{} vectors",
            m.dim
        )));
    }
    // Cyclic submodules.
    let mut cyclics: Vec<Vec<Vec<u64>>> = Vec::new();
    for v in crate::linalg::fp::all_vectors(p, m.dim) {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let (sub, incl) = submodule_from_rows(m, &[v]);
        let basis: Vec<Vec<u64>> = (0..sub.dim).map(|i| incl.matrix.row(i)).collect();
        if !cyclics.contains(&basis) {
            cyclics.push(basis);
        }
    }
    // Sum-closure, starting from the zero submodule.
    let mut all: Vec<Vec<Vec<u64>>> = vec![Vec::new()];
    for c in &cyclics {
        if !all.contains(c) {
            all.push(c.clone());
        }
    }
    loop {
        let mut grew = false;
        let snapshot = all.clone();
        for s in &snapshot {
            for c in &cyclics {
                let mut rows = s.clone();
                rows.extend(c.iter().cloned());
                let join = echelonize(p, &rows);
                if !all.contains(&join) {
                    all.push(join);
                    grew = true;
                    if all.len() > cap {
                        return Err(Error::CapExceeded(format!(
                            "more than {cap} submodules"
                        )));
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    if all.len() > cap {
        return Err(Error::CapExceeded(format!("more than {cap} submodules")));
    }
    all.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(all)
}

/// Base change `M ⊗_B C = M / M·ker φ` along a surjective algebra morphism,
/// with the natural projection (a map of B-modules onto the restriction).
pub fn base_change(m: &Module, phi: &AlgebraMorphism) -> Result<(Module, ModuleHom)> {
    if !phi.surjective {
        return Err(Error::NotSurjective);
    }
    if !m.alg.same_structure(&phi.source) {
        return Err(Error::AlgebraMismatch("module is not over the morphism source".into()));
    }
    let p = m.alg.p;
    let ker = phi.matrix.left_nullspace_basis();
    // M · ker φ: rows of the action of each kernel element.
    let mut rows = Vec::new();
    for k in &ker {
        let act = m.action_of(k);
        for i in 0..m.dim {
            rows.push(act.row(i));
        }
    }
    let (quot_b, proj_b) = quotient_by_invariant_subspace(m, &rows);
    // C-action on the quotient: act through any preimage of each C basis
    // element (well-defined because M·ker φ is killed).
    let c_alg = phi.target.clone();
    let idc = FpMatrix::identity(p, c_alg.dim);
    let preimages = phi
        .matrix
        .solve_left(&idc)
        .expect("surjective morphism has preimages");
    let action: Vec<FpMatrix> = (0..c_alg.dim)
        .map(|j| {
            let b_elem = preimages.row(j);
            let act_b = m.action_of(&b_elem);
            // Induced matrix on the quotient: project(e_keep · act_b).
            let rows: Vec<Vec<u64>> = (0..quot_b.dim)
                .map(|t| {
                    // Lift quotient basis vector t to m, act, project.
                    let mut e = vec![0u64; quot_b.dim];
                    e[t] = 1;
                    let lift = proj_b
                        .matrix
                        .solve_left(&FpMatrix::from_rows(p, &[e]))
                        .expect("projection surjective")
                        .row(0);
                    proj_b.matrix.row_apply(&act_b.row_apply(&lift))
                })
                .collect();
            if quot_b.dim == 0 {
                FpMatrix::zeros(p, 0, 0)
            } else {
                FpMatrix::from_rows(p, &rows)
            }
        })
        .collect();
    let result = Module::new(c_alg, action)?;
    // The projection as a hom of B-modules M → restrict(result).
    let restricted = restrict(&result, phi)?;
    let proj = ModuleHom::new(m.clone(), restricted, proj_b.matrix.clone())?;
    Ok((result, proj))
}

/// The map `M ⊗_B C → N ⊗_B C` induced on base changes by `f: M → N`.
///
/// Both projections have full column rank, so the induced matrix is the
/// unique solution of `Π_M · F̄ = F · Π_N`.
pub fn base_change_hom(f: &ModuleHom, phi: &AlgebraMorphism) -> Result<ModuleHom> {
    let (mc, pm) = base_change(&f.source, phi)?;
    let (nc, pn) = base_change(&f.target, phi)?;
    let rhs = f.matrix.mul(&pn.matrix)?;
    let fbar = pm
        .matrix
        .solve(&rhs)
        .ok_or_else(|| Error::Input("map does not descend to the base change".into()))?
        .particular;
    ModuleHom::new(mc, nc, fbar)
}

/// View a module annihilated by `ker φ` as a module over the target of the
/// surjection `φ: B → C` (inverse to [`restrict`] on its image).
pub fn promote(m: &Module, phi: &AlgebraMorphism) -> Result<Module> {
    if !phi.surjective {
        return Err(Error::NotSurjective);
    }
    if !m.alg.same_structure(&phi.source) {
        return Err(Error::AlgebraMismatch("module is not over the morphism source".into()));
    }
    for k in phi.matrix.left_nullspace_basis() {
        if !m.action_of(&k).is_zero() {
            return Err(Error::Input("module is not annihilated by the morphism kernel".into()));
        }
    }
    let p = m.alg.p;
    let idc = FpMatrix::identity(p, phi.target.dim);
    let preimages = phi.matrix.solve_left(&idc).expect("surjective morphism has preimages");
    let action: Vec<FpMatrix> =
        (0..phi.target.dim).map(|j| m.action_of(&preimages.row(j))).collect();
    Module::new(phi.target.clone(), action)
}

/// Restriction of a C-module to a B-module along `φ: B → C`.
pub fn restrict(n: &Module, phi: &AlgebraMorphism) -> Result<Module> {
    if !n.alg.same_structure(&phi.target) {
        return Err(Error::AlgebraMismatch("module is not over the morphism target".into()));
    }
    let action: Vec<FpMatrix> =
        (0..phi.source.dim).map(|i| n.action_of(&phi.matrix.row(i))).collect();
    Module::new(phi.source.clone(), action)
}

/// Induction `N ⊗_A B` along an inclusion `A ⊆ B` with a given free basis
/// `b_1, …, b_r` of `B` as a right A-module. Basis of the result:
/// `(n_α ⊗ b_i)` ordered with `i` major.
pub fn induce(
    n: &Module,
    incl: &AlgebraMorphism,
    free_basis: &[Vec<u64>],
) -> Result<Module> {
    if !n.alg.same_structure(&incl.source) {
        return Err(Error::AlgebraMismatch("module is not over the inclusion source".into()));
    }
    let p = n.alg.p;
    let b_alg = incl.target.clone();
    let r = free_basis.len();
    let sub_dim = incl.source.dim;
    if r * sub_dim != b_alg.dim {
        return Err(Error::NotFree("free basis has the wrong rank".into()));
    }
    // F_p-basis of B adapted to the decomposition: b_i · s_t for the images
    // s_t of the A-basis.
    let mut adapted = Vec::with_capacity(b_alg.dim);
    for b in free_basis {
        for t in 0..sub_dim {
            adapted.push(b_alg.mul_elems(b, &incl.matrix.row(t)));
        }
    }
    let adapted_m = FpMatrix::from_rows(p, &adapted);
    if adapted_m.rank() != b_alg.dim {
        return Err(Error::NotFree("claimed free basis does not span".into()));
    }
    let inv = adapted_m.inverse().expect("adapted basis is invertible");
    // For each B basis element e: b_i·e = Σ_j b_j·a_ij with a_ij ∈ A.
    // Coordinates of b_i·e in the adapted basis give a_ij directly.
    let dn = n.dim;
    let action: Vec<FpMatrix> = (0..b_alg.dim)
        .map(|e| {
            let ebasis: Vec<u64> = {
                let mut v = vec![0u64; b_alg.dim];
                v[e] = 1;
                v
            };
            let mut big = FpMatrix::zeros(p, r * dn, r * dn);
            for (i, b) in free_basis.iter().enumerate() {
                let prod = b_alg.mul_elems(b, &ebasis);
                // coords·adapted = prod, so coords = prod·adapted⁻¹.
                let coords = inv.row_apply(&prod);
                for j in 0..r {
                    // a_ij has A-coordinates coords[j*sub_dim .. (j+1)*sub_dim].
                    let a_ij: Vec<u64> =
                        coords[j * sub_dim..(j + 1) * sub_dim].to_vec();
                    let block = n.action_of(&a_ij);
                    for x in 0..dn {
                        for y in 0..dn {
                            big.set(i * dn + x, j * dn + y, block.get(x, y));
                        }
                    }
                }
            }
            if r * dn == 0 {
                FpMatrix::zeros(p, 0, 0)
            } else {
                big
            }
        })
        .collect();
    Module::new(b_alg, action)
}

/// The induced map `f ⊗ id_B` between inductions computed with the same free
/// basis.
pub fn induce_hom(
    f: &ModuleHom,
    incl: &AlgebraMorphism,
    free_basis: &[Vec<u64>],
) -> Result<ModuleHom> {
    let src = induce(&f.source, incl, free_basis)?;
    let tgt = induce(&f.target, incl, free_basis)?;
    let r = free_basis.len();
    let p = f.source.alg.p;
    let (dm, dn) = (f.source.dim, f.target.dim);
    let mut big = FpMatrix::zeros(p, r * dm, r * dn);
    for i in 0..r {
        for x in 0..dm {
            for y in 0..dn {
                big.set(i * dm + x, i * dn + y, f.matrix.get(x, y));
            }
        }
    }
    ModuleHom::new(src, tgt, big)
}

/// Search for an isomorphism `M ≅ N`: an invertible element of the hom
/// space. Deterministic: tries basis elements, then pair sums, then all
/// combinations up to the cap.
pub fn find_isomorphism(m: &Module, n: &Module, cap: u64) -> Result<Option<FpMatrix>> {
    if m.dim != n.dim {
        return Ok(None);
    }
    if m.dim == 0 {
        return Ok(Some(FpMatrix::zeros(m.alg.p, 0, 0)));
    }
    // Cheap invariants first.
    for i in 0..m.alg.dim {
        if m.action[i].rank() != n.action[i].rank() {
            return Ok(None);
        }
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let p = m.alg.p;
    for h in &basis {
        if h.rank() == m.dim {
            return Ok(Some(h.clone()));
        }
    }
    for (i, a) in basis.iter().enumerate() {
        for b in basis.iter().skip(i + 1) {
            let s = a.add(b)?;
            if s.rank() == m.dim {
                return Ok(Some(s));
            }
        }
    }
    let total = vector_count(p, basis.len());
    if total > cap as u128 {
        return Err(Error::CapExceeded(format!(
            "isomorphism search over p^{} hom combinations",
            basis.len()
        )));
    }
    for idx in 0..total {
        let coeffs = crate::linalg::fp::decode_vector(p, basis.len(), idx);
        let mut acc = FpMatrix::zeros(p, m.dim, n.dim);
        for (c, h) in coeffs.iter().zip(basis.iter()) {
            if *c != 0 {
                acc = acc.add(&h.scale(*c))?;
            }
        }
        if acc.rank() == m.dim {
            return Ok(Some(acc));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(m: &Module, n: &Module, cap: u64) -> Result<bool> {
    Ok(find_isomorphism(m, n, cap)?.is_some())
}

/// Standard fixtures used across tests and examples.
#[doc(hidden)]
pub mod fixtures {
    use super::*;

    /// The cyclic module `F_p[x]/x^d` over a truncated polynomial algebra
    /// `F_p[x]/x^n` (requires `d ≤ n`): basis element `i` times `x^j` is
    /// basis element `i+j` or zero.
    pub fn trunc_module(alg: &Arc<Algebra>, d: usize) -> Module {
        let p = alg.p;
        let shift = FpMatrix::from_fn(p, d, d, |i, j| u64::from(j == i + 1));
        let action: Vec<FpMatrix> = (0..alg.dim)
            .map(|j| shift.pow(j as u64).expect("square"))
            .collect();
        Module::new(alg.clone(), action).expect("truncated module is valid")
    }

    /// The one-dimensional module over a local algebra on which the radical
    /// acts by zero.
    pub fn trivial_module(alg: &Arc<Algebra>) -> Module {
        let rad = crate::algebra::jacobson_radical(alg);
        let p = alg.p;
        // Coefficients: e_i acts by the scalar its image takes in A/rad ≅ k.
        // For a local algebra the quotient is one-dimensional.
        let (quot, proj) = crate::algebra::quotient_by_ideal(alg, &rad)
            .expect("radical is proper");
        assert_eq!(quot.dim, 1, "algebra is local");
        let action: Vec<FpMatrix> = (0..alg.dim)
            .map(|i| {
                let c = proj.matrix.get(i, 0);
                FpMatrix::from_rows(p, &[vec![c]])
            })
            .collect();
        Module::new(alg.clone(), action).expect("trivial module is valid")
    }

    /// The embedding `M_s → M_b` of truncated modules, `m_i ↦ m_{i+(b−s)}`.
    pub fn trunc_embedding(alg: &Arc<Algebra>, s: usize, b: usize) -> ModuleHom {
        let src = trunc_module(alg, s);
        let tgt = trunc_module(alg, b);
        let matrix = FpMatrix::from_fn(alg.p, s, b, |i, j| u64::from(j == i + b - s));
        ModuleHom::new(src, tgt, matrix).expect("shift embedding is a hom")
    }

    /// The projection `M_b → M_s` of truncated modules, `m_i ↦ m_i` (i < s).
    pub fn trunc_projection(alg: &Arc<Algebra>, b: usize, s: usize) -> ModuleHom {
        let src = trunc_module(alg, b);
        let tgt = trunc_module(alg, s);
        let matrix = FpMatrix::from_fn(alg.p, b, s, |i, j| u64::from(i == j));
        ModuleHom::new(src, tgt, matrix).expect("truncation is a hom")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn t2() -> Arc<Algebra> {
        Algebra::trunc_poly(2, 2).unwrap()
    }
    fn t4() -> Arc<Algebra> {
        Algebra::trunc_poly(2, 4).unwrap()
    }

    #[test]
    fn regular_and_zero() {
        let reg = Module::regular(&t2());
        assert_eq!(reg.dim, 2);
        // x acts nilpotently: ρ(x)² = 0.
        let rx = &reg.action[1];
        assert!(rx.mul(rx).unwrap().is_zero());
        assert!(!rx.is_zero());
        let z = Module::zero(&t2());
        assert_eq!(z.dim, 0);
        let f = Module::regular(&Algebra::field(2).unwrap());
        assert_eq!(f.dim, 1);
    }

    #[test]
    fn module_validation_rejects_bad_action() {
        let alg = t2();
        // x acting as identity violates x² = 0.
        let action = vec![FpMatrix::identity(2, 1), FpMatrix::identity(2, 1)];
        assert!(matches!(
            Module::new(alg.clone(), action).unwrap_err(),
            Error::BadAction(..)
        ));
        // Unit acting as zero.
        let action = vec![FpMatrix::zeros(2, 1, 1), FpMatrix::zeros(2, 1, 1)];
        assert!(matches!(
            Module::new(alg, action).unwrap_err(),
            Error::BadUnitAction
        ));
    }

    #[test]
    fn hom_space_examples() {
        let alg = t2();
        let k = trunc_module(&alg, 1);
        let reg = Module::regular(&alg);
        // hom(k, regular) is one-dimensional (socle embedding).
        let h = hom_space(&k, &reg).unwrap();
        assert_eq!(h.len(), 1);
        // The image must be the socle span{x}.
        assert_eq!(h[0].row(0), vec![0, 1]);
        // hom(M, M) contains the identity.
        for m in [&k, &reg] {
            let h = hom_space(m, m).unwrap();
            let id = FpMatrix::identity(2, m.dim);
            // Identity must be in the span.
            let span: Vec<Vec<u64>> = h
                .iter()
                .map(|f| (0..m.dim).flat_map(|i| f.row(i)).collect())
                .collect();
            let idv: Vec<u64> = (0..m.dim).flat_map(|i| id.row(i)).collect();
            assert!(crate::linalg::fp::in_row_span(
                2,
                &echelonize(2, &span),
                &idv
            ));
        }
        // hom(k, k) over trunc_poly(2,4) is one-dimensional.
        let alg4 = t4();
        let k4 = trunc_module(&alg4, 1);
        assert_eq!(hom_space(&k4, &k4).unwrap().len(), 1);
    }

    #[test]
    fn kernel_cokernel_image() {
        let alg = t2();
        let reg = Module::regular(&alg);
        let k = trunc_module(&alg, 1);
        // kernel(identity) = 0.
        let (ker, _) = kernel(&ModuleHom::identity(&reg));
        assert_eq!(ker.dim, 0);
        // cokernel(0 → M) = M.
        let z = Module::zero(&alg);
        let (cok, proj) = cokernel(&ModuleHom::zero(&z, &reg));
        assert_eq!(cok, reg);
        assert!(proj.matrix.is_identity());
        // cokernel of the socle embedding k → M₂ is M₁ ≅ k.
        let emb = trunc_embedding(&alg, 1, 2);
        let (cok, _) = cokernel(&emb);
        assert_eq!(cok.dim, 1);
        assert!(is_isomorphic(&cok, &k, 1 << 16).unwrap());
        // image of the zero map is 0; image of an embedding is the source.
        let (img, _, _) = image(&ModuleHom::zero(&reg, &reg));
        assert_eq!(img.dim, 0);
        let (img, incl, epi) = image(&emb);
        assert_eq!(img.dim, 1);
        assert!(incl.is_injective());
        assert!(epi.is_surjective());
        // epi then incl recovers the original map.
        assert_eq!(epi.compose(&incl).unwrap().matrix, emb.matrix);
    }

    #[test]
    fn direct_sum_shapes() {
        let alg = t4();
        let m1 = trunc_module(&alg, 1);
        let m2 = trunc_module(&alg, 2);
        let (s, injs, projs) = direct_sum(&[&m1, &m2]).unwrap();
        assert_eq!(s.dim, 3);
        // Round trips: inj then proj is identity on each summand.
        for (inj, proj) in injs.iter().zip(projs.iter()) {
            assert!(inj.compose(proj).unwrap().matrix.is_identity());
        }
        // M ⊕ 0 ≅ M.
        let z = Module::zero(&alg);
        let (s, _, _) = direct_sum(&[&m2, &z]).unwrap();
        assert!(is_isomorphic(&s, &m2, 1 << 16).unwrap());
        // k ⊕ k has trivial action of x.
        let (kk, _, _) = direct_sum(&[&m1, &m1]).unwrap();
        assert!(kk.action[1].is_zero());
    }

    #[test]
    fn pushout_examples() {
        let alg = t2();
        let reg = Module::regular(&alg);
        let k = trunc_module(&alg, 1);
        // Pushout of id along id: the common module.
        let id = ModuleHom::identity(&reg);
        let po = pushout(&id, &id).unwrap();
        assert!(is_isomorphic(&po.module, &reg, 1 << 16).unwrap());
        // Pushout along the zero-target map: cokernel.
        let emb = trunc_embedding(&alg, 1, 2);
        let zmap = ModuleHom::zero(&k, &Module::zero(&alg));
        let po = pushout(&emb, &zmap).unwrap();
        assert_eq!(po.module.dim, 1);
        // Pushout of the socle embedding along the identity on k: M₂ again.
        let idk = ModuleHom::identity(&k);
        let po = pushout(&emb, &idk).unwrap();
        assert!(is_isomorphic(&po.module, &reg, 1 << 16).unwrap());
        // The square commutes.
        let via_y = emb.compose(&po.from_y).unwrap();
        let via_z = idk.compose(&po.from_z).unwrap();
        assert_eq!(via_y.matrix, via_z.matrix);
        // Universal property for the cocone (id_M2, emb).
        let u = ModuleHom::identity(&reg);
        let induced = po.universal(&u, &emb).unwrap();
        assert!(induced.is_isomorphism());
    }

    #[test]
    fn pullback_of_surjection_is_surjective() {
        let alg = t4();
        let samples = vec![
            (trunc_projection(&alg, 2, 1), trunc_projection(&alg, 3, 1)),
            (trunc_projection(&alg, 4, 2), trunc_projection(&alg, 2, 2)),
            (trunc_embedding(&alg, 1, 2).compose(&trunc_projection(&alg, 2, 1)).unwrap(),
             trunc_projection(&alg, 1, 1)),
        ];
        for (f, g) in samples {
            assert!(g.is_surjective());
            let (_, to_y, _) = pullback(&f, &g).unwrap();
            assert!(to_y.is_surjective(), "pullback projection must be surjective");
        }
    }

    #[test]
    fn short_exact_validation() {
        let alg = t4();
        let emb = trunc_embedding(&alg, 2, 4);
        let (cok, proj) = cokernel(&emb);
        let ses = ShortExact::new(emb.clone(), proj).unwrap();
        assert_eq!(ses.x().dim + ses.z().dim, ses.y().dim);
        assert_eq!(cok.dim, 2);
        // Wrong pairing: not exact.
        let bad = ShortExact::new(emb.clone(), ModuleHom::zero(ses.y(), &Module::zero(&alg)));
        assert!(bad.is_err());
    }

    #[test]
    fn submodules_examples() {
        let alg2 = t2();
        let k = trunc_module(&alg2, 1);
        assert_eq!(submodules(&k, 64).unwrap().len(), 2);
        let reg = Module::regular(&alg2);
        let subs = submodules(&reg, 64).unwrap();
        assert_eq!(subs.len(), 3); // 0 ⊂ soc ⊂ M₂
        assert_eq!(subs[0].len(), 0);
        assert_eq!(subs[1], vec![vec![0, 1]]);
        assert_eq!(subs[2].len(), 2);
        let alg4 = t4();
        let m4 = Module::regular(&alg4);
        assert_eq!(submodules(&m4, 64).unwrap().len(), 5); // chain of length 5
        // Exterior regular module has more than a chain.
        let ext = Algebra::exterior(2, 2).unwrap();
        let subs = submodules(&Module::regular(&ext), 64).unwrap();
        assert!(subs.len() > 5, "{}", subs.len());
        // Cap is enforced.
        assert!(matches!(
            submodules(&m4, 2).unwrap_err(),
            Error::CapExceeded(_)
        ));
    }

    #[test]
    fn base_change_examples() {
        let b = t4();
        let x2 = b.parse_element("x^2").unwrap();
        let ideal = crate::algebra::Ideal::from_generators(&b, &[x2]);
        let (c, phi) = crate::algebra::quotient_by_ideal(&b, &ideal).unwrap();
        assert!(phi.surjective);
        // regular(B) ⊗ C = regular(C), on the nose.
        let (q, proj) = base_change(&Module::regular(&b), &phi).unwrap();
        assert_eq!(q, Module::regular(&c));
        assert!(proj.is_surjective());
        // M₃ ⊗ C ≅ regular(C).
        let m3 = trunc_module(&b, 3);
        let (q, _) = base_change(&m3, &phi).unwrap();
        assert_eq!(q.dim, 2);
        assert!(is_isomorphic(&q, &Module::regular(&c), 1 << 16).unwrap());
        // k ⊗ C = k.
        let k = trunc_module(&b, 1);
        let (q, _) = base_change(&k, &phi).unwrap();
        assert_eq!(q.dim, 1);
        // Non-surjective morphism is rejected.
        let (_, incl) = crate::algebra::subalgebra_generated(&b, &[b.parse_element("x^2").unwrap()])
            .unwrap();
        assert!(matches!(
            base_change(&Module::regular(&b), &incl).unwrap_err(),
            Error::NotSurjective
        ));
    }

    #[test]
    fn restrict_examples() {
        let b = t4();
        let x2 = b.parse_element("x^2").unwrap();
        let ideal = crate::algebra::Ideal::from_generators(&b, &[x2]);
        let (c, phi) = crate::algebra::quotient_by_ideal(&b, &ideal).unwrap();
        // restrict(regular C) over B is M₂ on the nose.
        let r = restrict(&Module::regular(&c), &phi).unwrap();
        assert_eq!(r, trunc_module(&b, 2));
        // restrict(0) = 0.
        let r = restrict(&Module::zero(&c), &phi).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn counit_restrict_base_change() {
        let b = t4();
        let x2 = b.parse_element("x^2").unwrap();
        let ideal = crate::algebra::Ideal::from_generators(&b, &[x2]);
        let (c, phi) = crate::algebra::quotient_by_ideal(&b, &ideal).unwrap();
        for n in [Module::regular(&c), trunc_module(&c, 1)] {
            let restricted = restrict(&n, &phi).unwrap();
            let (back, _) = base_change(&restricted, &phi).unwrap();
            assert!(is_isomorphic(&back, &n, 1 << 16).unwrap());
        }
    }

    #[test]
    fn promote_and_base_change_hom() {
        let b = t4();
        let x2 = b.parse_element("x^2").unwrap();
        let ideal = crate::algebra::Ideal::from_generators(&b, &[x2]);
        let (c, phi) = crate::algebra::quotient_by_ideal(&b, &ideal).unwrap();
        // M₂ over B is annihilated by (x²); promoted it becomes regular C,
        // and promote ∘ restrict is the identity construction.
        let m2 = trunc_module(&b, 2);
        let promoted = promote(&m2, &phi).unwrap();
        assert_eq!(promoted, Module::regular(&c));
        assert_eq!(promote(&restrict(&promoted, &phi).unwrap(), &phi).unwrap(), promoted);
        // M₃ is not annihilated by x².
        assert!(promote(&trunc_module(&b, 3), &phi).is_err());
        // Base change of the embedding M₁ → M₂ (1 ↦ x) stays injective …
        let f = trunc_embedding(&b, 1, 2);
        let fbar = base_change_hom(&f, &phi).unwrap();
        assert!(fbar.is_injective());
        assert!(fbar.target.alg.same_structure(&c));
        // … while the embedding M₁ → M₃ (1 ↦ x²) dies on the quotient.
        let g = trunc_embedding(&b, 1, 3);
        let gbar = base_change_hom(&g, &phi).unwrap();
        assert!(gbar.is_zero());
        // Functoriality on a composable pair.
        let h = trunc_embedding(&b, 2, 3);
        let lhs = base_change_hom(&f.compose(&h).unwrap(), &phi).unwrap();
        let rhs = base_change_hom(&f, &phi).unwrap().compose(&base_change_hom(&h, &phi).unwrap()).unwrap();
        assert_eq!(lhs.matrix, rhs.matrix);
    }

    #[test]
    fn induce_examples() {
        let b = t4();
        let x2 = b.parse_element("x^2").unwrap();
        let (a, incl) = crate::algebra::subalgebra_generated(&b, &[x2]).unwrap();
        let free = crate::algebra::is_free_over_subalgebra(&b, &incl)
            .unwrap()
            .expect("B free over A");
        // induce(k over A) → M₂ on the nose with this basis ordering.
        let k = trunc_module(&a, 1);
        let ind = induce(&k, &incl, &free).unwrap();
        assert_eq!(ind, trunc_module(&b, 2));
        // induce(regular A) ≅ regular B.
        let ind = induce(&Module::regular(&a), &incl, &free).unwrap();
        assert_eq!(ind.dim, 4);
        assert!(is_isomorphic(&ind, &Module::regular(&b), 1 << 16).unwrap());
        // induce(0) = 0.
        let ind = induce(&Module::zero(&a), &incl, &free).unwrap();
        assert!(ind.is_zero());
    }

    #[test]
    fn induce_is_exact() {
        // A ≅ F_2[u]/u² sits inside B = F_2[x]/x⁴ as 1, x². Induce the
        // sequence 0 → k → A → k → 0 and check exactness over B.
        let b = t4();
        let x2 = b.parse_element("x^2").unwrap();
        let (a, incl) = crate::algebra::subalgebra_generated(&b, &[x2]).unwrap();
        let free = crate::algebra::is_free_over_subalgebra(&b, &incl).unwrap().unwrap();
        let emb = trunc_embedding(&a, 1, 2);
        let (_, proj) = cokernel(&emb);
        let ses_a = ShortExact::new(emb.clone(), proj.clone()).unwrap();
        let f = induce_hom(&ses_a.f, &incl, &free).unwrap();
        let g = induce_hom(&ses_a.g, &incl, &free).unwrap();
        let ses_b = ShortExact::new(f, g).expect("induction preserves exactness");
        assert_eq!(ses_b.y().dim, 4);
    }

    #[test]
    fn dual_and_coregular() {
        let b = t4();
        // dual(k) ≅ k (commutative: same algebra structurally).
        let k = trunc_module(&b, 1);
        let dk = k.dual();
        assert!(dk.alg.same_structure(&b));
        assert!(is_isomorphic(&dk, &k, 1 << 16).unwrap());
        // Double dual is literally the original.
        let m2 = trunc_module(&b, 2);
        assert_eq!(m2.dual().dual(), m2);
        // dual(M₂) ≅ M₂ over trunc_poly(2,4).
        assert!(is_isomorphic(&m2.dual(), &m2, 1 << 16).unwrap());
        // coregular(trunc_poly(2,4)) ≅ regular (self-injective algebra).
        let u = Module::coregular(&b);
        assert!(is_isomorphic(&u, &Module::regular(&b), 1 << 16).unwrap());
        // Dual over a non-commutative algebra lives over the opposite.
        let tri = Algebra::upper_triangular_2x2(2).unwrap();
        let reg = Module::regular(&tri);
        let dreg = reg.dual();
        assert!(dreg.alg.same_structure(&tri.opposite()));
        assert_eq!(dreg.dual(), reg);
        // dim preserved.
        assert_eq!(dreg.dim, reg.dim);
    }

    #[test]
    fn coregular_vs_dual_of_opposite_regular() {
        for alg in [
            t4(),
            Algebra::exterior(2, 2).unwrap(),
            Algebra::upper_triangular_2x2(3).unwrap(),
        ] {
            let u = Module::coregular(&alg);
            let via_dual = Module::regular(&alg.opposite()).dual();
            assert!(u.alg.same_structure(&via_dual.alg));
            assert_eq!(u.action, via_dual.action);
        }
    }

    #[test]
    fn trivial_module_fixture() {
        let ext = Algebra::exterior(2, 2).unwrap();
        let k = trivial_module(&ext);
        assert_eq!(k.dim, 1);
        assert!(k.action[1].is_zero());
        assert!(k.action[2].is_zero());
        assert!(k.action[0].is_identity());
    }
}
