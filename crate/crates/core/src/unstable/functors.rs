//! ℱ, Φ, λ, Ω, Ω¹, ρ_V and tensor products as transformations of action tables.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use super::{GradedSpace, ModuleMap, UnstableModule};
use crate::algebra::SteenrodAlgebra;
use crate::error::{Error, Result};
use crate::filtration::{gamma_with, mu_tilde, top_degree, top_generator, GammaIndex, MuTilde};
use crate::linalg::{Matrix, Subspace};
use crate::milnor::{coproduct_monomial, Element};
use crate::monomial::MilnorMonomial;

/// The algebra plus caches shared by the functors.
pub struct UnstableContext<'a> {
    alg: &'a SteenrodAlgebra,
    mu: Mutex<HashMap<(u32, u32), Arc<MuTilde>>>,
    gammas: Mutex<HashMap<(MilnorMonomial, u32), Element>>,
}

impl<'a> UnstableContext<'a> {
    pub fn new(alg: &'a SteenrodAlgebra) -> Self {
        UnstableContext {
            alg,
            mu: Mutex::new(HashMap::new()),
            gammas: Mutex::new(HashMap::new()),
        }
    }

    pub fn alg(&self) -> &SteenrodAlgebra {
        self.alg
    }

    pub fn p(&self) -> u32 {
        self.alg.p()
    }

    fn mu_tilde(&self, level: u32, shift: u32) -> Result<Arc<MuTilde>> {
        if let Some(m) = self.mu.lock().unwrap().get(&(level, shift)) {
            return Ok(m.clone());
        }
        let m = Arc::new(mu_tilde(self.alg, level, shift)?);
        self.mu.lock().unwrap().insert((level, shift), m.clone());
        Ok(m)
    }

    /// psi with gamma(theta ⊗ g_l) = g_L ⊗ psi, as in [`gamma_with`].
    fn gamma(&self, theta: &MilnorMonomial, idx: &GammaIndex) -> Result<Element> {
        let key = (theta.clone(), idx.source_level);
        if let Some(g) = self.gammas.lock().unwrap().get(&key) {
            return Ok(g.clone());
        }
        let mt = self.mu_tilde(idx.target_level, idx.shift)?;
        let g = gamma_with(self.alg, &mt, idx, &self.alg.monomial(theta.clone()))?;
        self.gammas.lock().unwrap().insert(key, g.clone());
        Ok(g)
    }

    fn monomials(&self, n: u32) -> Result<Vec<MilnorMonomial>> {
        Ok(self.alg.basis(n)?.monomials.clone())
    }
}

/// ℱ(V) with the bookkeeping of which summand and which monomial each basis
/// vector comes from.
#[derive(Debug, Clone)]
pub struct FreeModule {
    pub module: UnstableModule,
    /// Degree of each generator of V, in summand order.
    pub generators: Vec<i64>,
    /// Per degree, the (summand, theta) of each basis vector.
    pub cells: Vec<Vec<(usize, MilnorMonomial)>>,
}

impl FreeModule {
    /// Index in degree `k` of the basis vector theta ⊗ v_summand.
    pub fn position(&self, k: u32, summand: usize, theta: &MilnorMonomial) -> Option<usize> {
        self.cells
            .get(k as usize)?
            .iter()
            .position(|(s, t)| *s == summand && t == theta)
    }
}

/// ℱ(V) = ⊕ Σ^n A/F_{n+1} ⊗ V^n up to degree `top`. Generators in negative
/// degrees contribute nothing (A/F_0 = 0).
pub fn free_with_cells(ctx: &UnstableContext, v: &GradedSpace, top: u32) -> Result<FreeModule> {
    let p = ctx.p();
    ctx.alg.ctx().check_degree(top)?;
    let generators: Vec<i64> = v
        .dims()
        .iter()
        .flat_map(|(&n, &d)| std::iter::repeat_n(n, d))
        .collect();
    let bases = (0..=top).map(|j| ctx.monomials(j)).collect::<Result<Vec<_>>>()?;

    let mut cells: Vec<Vec<(usize, MilnorMonomial)>> = vec![Vec::new(); top as usize + 1];
    let mut names: Vec<Vec<String>> = vec![Vec::new(); top as usize + 1];
    for (s, &n) in generators.iter().enumerate() {
        if n < 0 || n > top as i64 {
            continue;
        }
        let n = n as u32;
        for j in 0..=top - n {
            for theta in &bases[j as usize] {
                if theta.weight(p) <= n {
                    cells[(n + j) as usize].push((s, theta.clone()));
                    names[(n + j) as usize].push(format!("{theta}⊗v{s}"));
                }
            }
        }
    }
    let index: Vec<HashMap<(usize, MilnorMonomial), usize>> = cells
        .iter()
        .map(|c| c.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
        .collect();

    let mut actions = BTreeMap::new();
    for n in 0..=top {
        if cells[n as usize].is_empty() {
            continue;
        }
        for j in 1..=top - n {
            let k = n + j;
            for a in &bases[j as usize] {
                let mut mat = Matrix::zeros(p, cells[k as usize].len(), cells[n as usize].len());
                for (col, (s, theta)) in cells[n as usize].iter().enumerate() {
                    let gen = generators[*s] as u32;
                    for (m, c) in ctx.alg.multiply_monomials(a, theta).iter() {
                        if m.weight(p) <= gen {
                            let row = index[k as usize][&(*s, m.clone())];
                            mat.set(row, col, (mat.get(row, col) + c) % p);
                        }
                    }
                }
                actions.insert((n, a.clone()), mat);
            }
        }
    }
    let module = UnstableModule::unchecked(p, top, names, actions)?;
    Ok(FreeModule {
        module,
        generators,
        cells,
    })
}

pub fn free(ctx: &UnstableContext, v: &GradedSpace, top: u32) -> Result<UnstableModule> {
    if let Some((&n, _)) = v.dims().iter().next() {
        if n < 0 {
            return Err(Error::Invalid(format!("generator in negative degree {n}")));
        }
    }
    Ok(free_with_cells(ctx, v, top)?.module)
}

/// Levels l with l + t_l <= top, and the degree l + t_l of g_l ⊗ M^l in ΦM.
fn phi_degrees(p: u32, top: u32) -> Vec<(u32, u32)> {
    (0..=top)
        .map(|l| (l, l + top_degree(p, l)))
        .filter(|&(_, k)| k <= top)
        .collect()
}

fn require_unstable(m: &UnstableModule) -> Result<()> {
    if let Some(w) = m.unstable_witnesses().first() {
        return Err(Error::NotUnstable(format!(
            "{} acts nontrivially on basis vector {} of degree {}",
            w.theta, w.index, w.degree
        )));
    }
    Ok(())
}

/// ΦM, with (ΦM)^{l + t_l} = g_l ⊗ M^l and θ·(g_l ⊗ m) = g_L ⊗ ψ·m where
/// γ(θ ⊗ g_l) = g_L ⊗ ψ.
pub fn phi(ctx: &UnstableContext, m: &UnstableModule) -> Result<UnstableModule> {
    require_unstable(m)?;
    let p = ctx.p();
    let top = m.top();
    let degrees = phi_degrees(p, top);
    let mut names = vec![Vec::new(); top as usize + 1];
    for &(l, k) in &degrees {
        names[k as usize] = m.names(l).iter().map(|s| format!("g{l}⊗{s}")).collect();
    }
    let mut actions = BTreeMap::new();
    for &(l, k) in &degrees {
        if m.dim(l) == 0 {
            continue;
        }
        for d in 1..=top - k {
            let Some(idx) = GammaIndex::for_operation(p, l, d) else {
                continue;
            };
            let big = idx.target_level;
            if big + top_degree(p, big) != k + d {
                return Err(Error::Invalid(format!("gamma from level {l} by degree {d} lands off the grid")));
            }
            if m.dim(big) == 0 {
                continue;
            }
            for theta in ctx.monomials(d)? {
                let psi = ctx.gamma(&theta, &idx)?;
                actions.insert((k, theta), m.element_matrix(&psi, idx.shift, l));
            }
        }
    }
    UnstableModule::unchecked(p, top, names, actions)
}

/// λ: ΦM → M, g_l ⊗ m ↦ g_l·m.
pub fn lambda(ctx: &UnstableContext, m: &UnstableModule, phi_m: &UnstableModule) -> Result<ModuleMap> {
    let p = ctx.p();
    let top = m.top().min(phi_m.top());
    let mut mats: Vec<Matrix> = (0..=top).map(|k| Matrix::zeros(p, m.dim(k), phi_m.dim(k))).collect();
    for (l, k) in phi_degrees(p, top) {
        mats[k as usize] = m.action_matrix(&top_generator(p, l), l);
    }
    ModuleMap::new(p, top, mats)
}

/// Φf: ΦM → ΦN, g_l ⊗ m ↦ g_l ⊗ f(m).
pub fn phi_map(p: u32, f: &ModuleMap, source: &UnstableModule, target: &UnstableModule) -> Result<ModuleMap> {
    let top = f.top().min(source.top()).min(target.top());
    let mut mats: Vec<Matrix> = (0..=top).map(|_| Matrix::zeros(p, 0, 0)).collect();
    for (l, k) in phi_degrees(p, top) {
        mats[k as usize] = f.matrix(l).clone();
    }
    ModuleMap::new(p, top, mats)
}

/// Everything derived from λ_M in one go.
#[derive(Debug, Clone)]
pub struct LambdaData {
    pub phi: UnstableModule,
    pub lambda: ModuleMap,
    pub image: Vec<Subspace>,
    pub kernel: Vec<Subspace>,
}

pub fn lambda_data(ctx: &UnstableContext, m: &UnstableModule) -> Result<LambdaData> {
    let phi_m = phi(ctx, m)?;
    let lam = lambda(ctx, m, &phi_m)?;
    let image = (0..=lam.top()).map(|k| lam.image(k)).collect();
    let kernel = (0..=lam.top()).map(|k| lam.kernel(k)).collect();
    Ok(LambdaData {
        phi: phi_m,
        lambda: lam,
        image,
        kernel,
    })
}

/// Coker λ_M together with the quotient map M → Coker λ_M.
pub fn cokernel_lambda(ctx: &UnstableContext, m: &UnstableModule) -> Result<(UnstableModule, ModuleMap)> {
    let data = lambda_data(ctx, m)?;
    m.quotient(&data.image)
}

/// Ω(M) = Σ^{-1} Coker λ_M.
pub fn omega(ctx: &UnstableContext, m: &UnstableModule) -> Result<UnstableModule> {
    if m.top() == 0 {
        return Err(Error::Invalid("Ω needs a module known past degree 0".into()));
    }
    cokernel_lambda(ctx, m)?.0.suspend(-1)
}

/// Ω¹(M) = Σ^{-1} Ker λ_M.
pub fn omega1(ctx: &UnstableContext, m: &UnstableModule) -> Result<UnstableModule> {
    if m.top() == 0 {
        return Err(Error::Invalid("Ω¹ needs a module known past degree 0".into()));
    }
    let data = lambda_data(ctx, m)?;
    let (ker, _) = data.phi.submodule(&data.kernel, "k")?;
    ker.suspend(-1)
}

/// ρ_V: ℱ(V) → Σℱ(Σ^{-1}V), θ ⊗ v ↦ θ ⊗ σ^{-1}v when weight θ < |v|, else 0.
/// Returns the target and the map.
pub fn rho_free(ctx: &UnstableContext, source: &FreeModule) -> Result<(UnstableModule, ModuleMap)> {
    let p = ctx.p();
    let top = source.module.top();
    let v: GradedSpace = GradedSpace::new(source.generators.iter().fold(BTreeMap::new(), |mut acc, &n| {
        *acc.entry(n - 1).or_insert(0) += 1;
        acc
    }));
    if top == 0 {
        return Ok((UnstableModule::zero(p, 0), ModuleMap::new(p, 0, vec![Matrix::zeros(p, 0, source.module.dim(0))])?));
    }
    let below = free_with_cells(ctx, &v, top - 1)?;
    // summand order agrees because generators are sorted by degree
    let target = below.module.suspend(1)?;
    let mut mats = Vec::new();
    for k in 0..=top {
        let mut mat = Matrix::zeros(p, target.dim(k), source.module.dim(k));
        if k > 0 {
            for (col, (s, theta)) in source.cells[k as usize].iter().enumerate() {
                if let Some(row) = below.position(k - 1, *s, theta) {
                    mat.set(row, col, 1);
                }
            }
        }
        mats.push(mat);
    }
    Ok((target, ModuleMap::new(p, top, mats)?))
}

/// M ⊗ N with θ·(m ⊗ n) = Σ (-1)^{|θ''||m|} θ'm ⊗ θ''n.
pub fn tensor(ctx: &UnstableContext, m: &UnstableModule, n: &UnstableModule) -> Result<UnstableModule> {
    require_unstable(m)?;
    require_unstable(n)?;
    let p = ctx.p();
    let top = m.top().min(n.top());
    // degree k basis: (i, a, b) with a in M^i, b in N^{k-i}
    let mut cells: Vec<Vec<(u32, usize, usize)>> = vec![Vec::new(); top as usize + 1];
    let mut names = vec![Vec::new(); top as usize + 1];
    for k in 0..=top {
        for i in 0..=k {
            for a in 0..m.dim(i) {
                for b in 0..n.dim(k - i) {
                    cells[k as usize].push((i, a, b));
                    names[k as usize].push(format!("{}⊗{}", m.names(i)[a], n.names(k - i)[b]));
                }
            }
        }
    }
    let offsets: Vec<HashMap<u32, usize>> = cells
        .iter()
        .map(|c| {
            let mut o = HashMap::new();
            for (idx, &(i, a, b)) in c.iter().enumerate() {
                if a == 0 && b == 0 {
                    o.insert(i, idx);
                }
            }
            o
        })
        .collect();
    let mut actions = BTreeMap::new();
    for k in 0..=top {
        if cells[k as usize].is_empty() {
            continue;
        }
        for j in 1..=top - k {
            for theta in ctx.monomials(j)? {
                let delta = coproduct_monomial(p, &theta);
                let mut mat = Matrix::zeros(p, cells[(k + j) as usize].len(), cells[k as usize].len());
                for ((t1, t2), c) in delta.iter() {
                    let (j1, j2) = (t1.degree(p), t2.degree(p));
                    for (col, &(i, a, b)) in cells[k as usize].iter().enumerate() {
                        let (i2, k2) = (i + j1, k - i + j2);
                        if m.dim(i2) == 0 || n.dim(k2) == 0 {
                            continue;
                        }
                        let sign = if (j2 * i) % 2 == 1 { p - 1 } else { 1 };
                        let ma = m.action_matrix(t1, i).column(a);
                        let nb = n.action_matrix(t2, k - i).column(b);
                        let base = offsets[(k + j) as usize][&i2];
                        let width = n.dim(k2);
                        for (x, &u) in ma.iter().enumerate() {
                            if u == 0 {
                                continue;
                            }
                            for (y, &w) in nb.iter().enumerate() {
                                if w != 0 {
                                    let row = base + x * width + y;
                                    mat.set(row, col, (mat.get(row, col) + c * sign % p * u % p * w) % p);
                                }
                            }
                        }
                    }
                }
                actions.insert((k, theta), mat);
            }
        }
    }
    UnstableModule::unchecked(p, top, names, actions)
}

/// The one-dimensional module in degree 0.
pub fn trivial(p: u32, top: u32) -> UnstableModule {
    let mut names = vec![Vec::new(); top as usize + 1];
    names[0] = vec!["1".to_string()];
    UnstableModule::unchecked(p, top, names, BTreeMap::new()).expect("trivial module")
}

/// Σ^n A/F_{n+1}: the free module on one generator in degree n.
pub fn sphere(ctx: &UnstableContext, n: u32, top: u32) -> Result<UnstableModule> {
    free(ctx, &GradedSpace::sphere(n as i64), top)
}
