//! Unstable modules over the Steenrod algebra, stored as action tables up to
//! a degree cap, and the functors between them.

pub mod functors;
pub mod verify;

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::SteenrodAlgebra;
use crate::error::{Error, Result};
use crate::filtration::{top_degree, top_generator};
use crate::linalg::{Matrix, Subspace};
use crate::milnor::Element;
use crate::monomial::MilnorMonomial;

/// A finite graded vector space: dimension per degree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedSpace {
    dims: BTreeMap<i64, usize>,
}

impl GradedSpace {
    pub fn new(dims: impl IntoIterator<Item = (i64, usize)>) -> Self {
        GradedSpace {
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// F_p in degree n.
    pub fn sphere(n: i64) -> Self {
        Self::new([(n, 1)])
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// (Σ^s V)^i = V^{i-s}.
    pub fn suspend(&self, s: i64) -> Self {
        GradedSpace {
            dims: self.dims.iter().map(|(&n, &d)| (n + s, d)).collect(),
        }
    }

    /// Every space of total dimension at most `max_total` supported in 0..=max_degree.
    pub fn all_small(max_total: usize, max_degree: i64) -> Vec<GradedSpace> {
        fn go(n: i64, top: i64, left: usize, acc: &mut Vec<(i64, usize)>, out: &mut Vec<GradedSpace>) {
            if n > top {
                out.push(GradedSpace::new(acc.iter().copied()));
                return;
            }
            for d in 0..=left {
                acc.push((n, d));
                go(n + 1, top, left - d, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(0, max_degree, max_total, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .dims
            .iter()
            .map(|(n, d)| if *d == 1 { format!("Σ^{n}") } else { format!("{d}Σ^{n}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A violation of instability: theta of weight > n acting nontrivially on
/// basis vector `index` of degree n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub theta: MilnorMonomial,
    pub degree: u32,
    pub index: usize,
}

/// A left module over the Steenrod algebra, known in degrees 0..=top.
///
/// The table holds, for each source degree n and Milnor monomial theta of
/// positive degree j with n + j <= top, the matrix of theta: M^n -> M^{n+j}
/// (columns are images). Missing entries act as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnstableModule {
    p: u32,
    top: u32,
    names: Vec<Vec<String>>,
    actions: BTreeMap<(u32, MilnorMonomial), Matrix>,
    verified_unstable: bool,
}

/// Exhaustive associativity checks cover degrees up to this bound.
pub const EXHAUSTIVE_DEGREE: u32 = 10;
/// Random triples checked on construction above the exhaustive range.
pub const ASSOCIATIVITY_SAMPLES: usize = 500;

fn is_zero_matrix(m: &Matrix) -> bool {
    (0..m.rows()).all(|i| m.row(i).iter().all(|&x| x == 0))
}

impl UnstableModule {
    /// Builds a module from its table, checking shapes and associativity.
    pub fn new(
        alg: &SteenrodAlgebra,
        top: u32,
        names: Vec<Vec<String>>,
        actions: BTreeMap<(u32, MilnorMonomial), Matrix>,
    ) -> Result<Self> {
        let m = Self::unchecked(alg.p(), top, names, actions)?;
        alg.ctx().check_degree(top)?;
        if let Some(bad) = m.associativity_failure(alg, EXHAUSTIVE_DEGREE, ASSOCIATIVITY_SAMPLES, 0)? {
            return Err(Error::Invalid(format!("action is not associative: {bad}")));
        }
        Ok(m)
    }

    /// Checks shapes only; functors whose outputs are modules by construction use this.
    pub(crate) fn unchecked(
        p: u32,
        top: u32,
        mut names: Vec<Vec<String>>,
        mut actions: BTreeMap<(u32, MilnorMonomial), Matrix>,
    ) -> Result<Self> {
        names.resize(top as usize + 1, Vec::new());
        if names.len() > top as usize + 1 && names[top as usize + 1..].iter().any(|v| !v.is_empty()) {
            return Err(Error::Invalid("basis above the top degree".into()));
        }
        names.truncate(top as usize + 1);
        for ((n, theta), mat) in &actions {
            let j = theta.degree(p);
            if j == 0 || n + j > top {
                return Err(Error::Invalid(format!("action of {theta} on degree {n} is outside 1..={top}")));
            }
            let (r, c) = (names[(n + j) as usize].len(), names[*n as usize].len());
            if mat.rows() != r || mat.cols() != c {
                return Err(Error::Invalid(format!("action of {theta} on degree {n} should be {r}x{c}")));
            }
        }
        actions.retain(|_, m| !is_zero_matrix(m));
        let mut m = UnstableModule {
            p,
            top,
            names,
            actions,
            verified_unstable: false,
        };
        m.verified_unstable = m.unstable_witnesses().is_empty();
        Ok(m)
    }

    pub fn zero(p: u32, top: u32) -> Self {
        Self::unchecked(p, top, vec![], BTreeMap::new()).expect("zero module")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// The largest degree in which the module is known.
    pub fn top(&self) -> u32 {
        self.top
    }

    pub fn dim(&self, n: u32) -> usize {
        self.names.get(n as usize).map_or(0, |v| v.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top).map(|n| self.dim(n)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    pub fn names(&self, n: u32) -> &[String] {
        self.names.get(n as usize).map_or(&[], |v| v.as_slice())
    }

    pub fn is_verified_unstable(&self) -> bool {
        self.verified_unstable
    }

    /// Stored nonzero actions, keyed by (source degree, theta).
    pub fn actions(&self) -> &BTreeMap<(u32, MilnorMonomial), Matrix> {
        &self.actions
    }

    /// The matrix of theta on degree n (identity for theta = 1).
    pub fn action_matrix(&self, theta: &MilnorMonomial, n: u32) -> Matrix {
        let j = theta.degree(self.p);
        if j == 0 {
            return Matrix::identity(self.p, self.dim(n));
        }
        self.actions
            .get(&(n, theta.clone()))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.p, self.dim(n + j), self.dim(n)))
    }

    /// The matrix of a homogeneous element of degree j on degree n.
    pub fn element_matrix(&self, a: &Element, j: u32, n: u32) -> Matrix {
        let p = self.p;
        let mut out = Matrix::zeros(p, self.dim(n + j), self.dim(n));
        for (m, c) in a.iter() {
            let x = self.action_matrix(m, n);
            for r in 0..out.rows() {
                for k in 0..out.cols() {
                    out.set(r, k, (out.get(r, k) + c * x.get(r, k)) % p);
                }
            }
        }
        out
    }

    pub fn act(&self, theta: &MilnorMonomial, n: u32, v: &[u32]) -> Vec<u32> {
        self.action_matrix(theta, n).mul_vec(v)
    }

    /// Stored actions of theta with weight > n on M^n that are nonzero, one
    /// witness per affected basis vector.
    pub fn unstable_witnesses(&self) -> Vec<Witness> {
        let mut out = Vec::new();
        for ((n, theta), mat) in &self.actions {
            if theta.weight(self.p) > *n {
                for k in 0..mat.cols() {
                    if (0..mat.rows()).any(|r| mat.get(r, k) != 0) {
                        out.push(Witness {
                            theta: theta.clone(),
                            degree: *n,
                            index: k,
                        });
                    }
                }
            }
        }
        out
    }

    /// F_{n+1} A · M^n = 0 for all n in range.
    pub fn check_unstable(&self) -> bool {
        self.unstable_witnesses().is_empty()
    }

    /// The criterion through top generators: the generator of
    /// (F_{2i+e})^{2i(p-1)+e} kills M^k for every k < 2i + e.
    pub fn check_unstable_top(&self) -> bool {
        let p = self.p;
        for level in 1..=self.top {
            let t = top_degree(p, level);
            let g = top_generator(p, level);
            for k in 0..level.min(self.top + 1) {
                if k + t <= self.top && !is_zero_matrix(&self.action_matrix(&g, k)) {
                    return false;
                }
            }
        }
        true
    }

    /// The first failing triple of (theta theta') m = theta (theta' m), if any:
    /// exhaustive when all three degrees sum to at most `exhaustive`, plus
    /// `samples` seeded random triples over the whole range.
    pub fn associativity_failure(
        &self,
        alg: &SteenrodAlgebra,
        exhaustive: u32,
        samples: usize,
        seed: u64,
    ) -> Result<Option<String>> {
        let p = self.p;
        let check = |a: &MilnorMonomial, b: &MilnorMonomial, n: u32| -> Option<String> {
            let (ja, jb) = (a.degree(p), b.degree(p));
            let lhs = self.element_matrix(&alg.multiply_monomials(a, b), ja + jb, n);
            let rhs = self.action_matrix(a, n + jb).mul(&self.action_matrix(b, n));
            (lhs != rhs).then(|| format!("({a})({b}) on degree {n}"))
        };
        let bases = (0..=self.top)
            .map(|d| alg.basis(d).map(|b| b.monomials.clone()))
            .collect::<Result<Vec<_>>>()?;
        let cap = self.top.min(exhaustive);
        for n in 0..=cap {
            if self.dim(n) == 0 {
                continue;
            }
            for ja in 1..=cap - n {
                for jb in 1..=cap - n - ja {
                    for a in &bases[ja as usize] {
                        for b in &bases[jb as usize] {
                            if let Some(bad) = check(a, b, n) {
                                return Ok(Some(bad));
                            }
                        }
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let occupied: Vec<u32> = (0..self.top.saturating_sub(1)).filter(|&n| self.dim(n) > 0).collect();
        if occupied.is_empty() {
            return Ok(None);
        }
        for _ in 0..samples {
            let n = occupied[rng.gen_range(0..occupied.len())];
            let room = self.top - n;
            let ja = rng.gen_range(1..room);
            let jb = rng.gen_range(1..=room - ja);
            let (ba, bb) = (&bases[ja as usize], &bases[jb as usize]);
            if ba.is_empty() || bb.is_empty() {
                continue;
            }
            let a = &ba[rng.gen_range(0..ba.len())];
            let b = &bb[rng.gen_range(0..bb.len())];
            if let Some(bad) = check(a, b, n) {
                return Ok(Some(bad));
            }
        }
        Ok(None)
    }

    /// Σ^s M, known up to top + s; fails if a nonzero degree would become negative.
    pub fn suspend(&self, s: i64) -> Result<Self> {
        let shift = |n: u32| -> Option<u32> { u32::try_from(n as i64 + s).ok() };
        if let Some(n) = (0..=self.top).find(|&n| self.dim(n) > 0 && shift(n).is_none()) {
            return Err(Error::Invalid(format!("desuspension leaves degree {n} negative")));
        }
        let top = shift(self.top).ok_or_else(|| Error::Invalid("desuspension past degree 0".into()))?;
        let mut names = vec![Vec::new(); top as usize + 1];
        for n in 0..=self.top {
            if let Some(m) = shift(n) {
                names[m as usize] = self.names(n).to_vec();
            }
        }
        let actions = self
            .actions
            .iter()
            .filter_map(|((n, theta), mat)| shift(*n).map(|m| ((m, theta.clone()), mat.clone())))
            .collect();
        Self::unchecked(self.p, top, names, actions)
    }

    /// The module known only up to a lower top degree.
    pub fn truncate(&self, top: u32) -> Self {
        let top = top.min(self.top);
        let actions = self
            .actions
            .iter()
            .filter(|((n, theta), _)| n + theta.degree(self.p) <= top)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Self::unchecked(self.p, top, self.names[..=top as usize].to_vec(), actions).expect("truncation")
    }

    /// Direct sum, known up to the smallest top.
    pub fn direct_sum(p: u32, parts: &[&UnstableModule]) -> Result<Self> {
        let top = parts.iter().map(|m| m.top).min().unwrap_or(0);
        let mut names = vec![Vec::new(); top as usize + 1];
        for (k, m) in parts.iter().enumerate() {
            for n in 0..=top {
                names[n as usize].extend(m.names(n).iter().map(|s| format!("{s}#{k}")));
            }
        }
        let mut keys: Vec<(u32, MilnorMonomial)> = parts
            .iter()
            .flat_map(|m| m.actions.keys().cloned())
            .filter(|(n, theta)| n + theta.degree(p) <= top)
            .collect();
        keys.sort();
        keys.dedup();
        let mut actions = BTreeMap::new();
        for (n, theta) in keys {
            let j = theta.degree(p);
            let blocks: Vec<Matrix> = parts.iter().map(|m| m.action_matrix(&theta, n)).collect();
            actions.insert((n, theta), block_diagonal(p, &blocks, names[(n + j) as usize].len(), names[n as usize].len()));
        }
        Self::unchecked(p, top, names, actions)
    }

    /// The submodule with the given subspace in each degree; errors if it is
    /// not closed under the action. Returns it with its inclusion.
    pub fn submodule(&self, spaces: &[Subspace], label: &str) -> Result<(Self, ModuleMap)> {
        let p = self.p;
        let mut names = Vec::new();
        let mut inclusion = Vec::new();
        for n in 0..=self.top {
            let s = &spaces[n as usize];
            names.push((0..s.dim()).map(|k| format!("{label}{n}_{k}")).collect::<Vec<_>>());
            inclusion.push(Matrix::from_columns(p, self.dim(n), s.basis()));
        }
        let mut actions = BTreeMap::new();
        for ((n, theta), mat) in &self.actions {
            let j = theta.degree(p);
            let (src, dst) = (&spaces[*n as usize], &spaces[(n + j) as usize]);
            let mut cols = Vec::new();
            for b in src.basis() {
                let img = mat.mul_vec(b);
                let coords: Vec<u32> = dst.pivots().iter().map(|&c| img[c]).collect();
                let back = Matrix::from_columns(p, self.dim(n + j), dst.basis()).mul_vec(&coords);
                if back != img {
                    return Err(Error::Invalid(format!("{label} is not closed under {theta} in degree {n}")));
                }
                cols.push(coords);
            }
            actions.insert((*n, theta.clone()), Matrix::from_columns(p, dst.dim(), &cols));
        }
        let sub = Self::unchecked(p, self.top, names, actions)?;
        let map = ModuleMap::new(p, self.top, inclusion)?;
        Ok((sub, map))
    }

    /// M modulo the given subspaces (assumed closed), with the quotient map.
    /// The quotient basis is the set of non-pivot coordinates.
    pub fn quotient(&self, spaces: &[Subspace]) -> Result<(Self, ModuleMap)> {
        let p = self.p;
        let comp: Vec<Vec<usize>> = spaces.iter().map(|s| s.complement_coordinates()).collect();
        let project = |n: u32, v: &[u32]| -> Vec<u32> {
            let r = spaces[n as usize].reduce(v);
            comp[n as usize].iter().map(|&c| r[c]).collect()
        };
        let mut names = Vec::new();
        let mut maps = Vec::new();
        for n in 0..=self.top {
            names.push(comp[n as usize].iter().map(|&c| format!("[{}]", self.names(n)[c])).collect::<Vec<_>>());
            let cols: Vec<Vec<u32>> = (0..self.dim(n))
                .map(|k| project(n, &crate::linalg::unit_vector(self.dim(n), k)))
                .collect();
            maps.push(Matrix::from_columns(p, comp[n as usize].len(), &cols));
        }
        let mut actions = BTreeMap::new();
        for ((n, theta), mat) in &self.actions {
            let j = theta.degree(p);
            let cols: Vec<Vec<u32>> = comp[*n as usize]
                .iter()
                .map(|&c| {
                    let img = mat.mul_vec(&crate::linalg::unit_vector(self.dim(*n), c));
                    project(n + j, &img)
                })
                .collect();
            actions.insert((*n, theta.clone()), Matrix::from_columns(p, comp[(n + j) as usize].len(), &cols));
        }
        let q = Self::unchecked(p, self.top, names, actions)?;
        let map = ModuleMap::new(p, self.top, maps)?;
        Ok((q, map))
    }

    /// `{"schema":1,"p","top","dims","names","actions":[{"degree","E","R","matrix"}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let actions: Vec<serde_json::Value> = self
            .actions
            .iter()
            .map(|((n, theta), mat)| {
                json!({
                    "degree": n,
                    "E": theta.e.entries(),
                    "R": theta.r.entries(),
                    "matrix": mat.to_rows(),
                })
            })
            .collect();
        json!({
            "schema": 1,
            "p": self.p,
            "top": self.top,
            "dims": self.dims(),
            "names": self.names,
            "actions": actions,
        })
    }
}

impl fmt::Display for UnstableModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims().iter().map(|d| d.to_string()).collect();
        write!(f, "module over F_{} up to degree {}: dims [{}]", self.p, self.top, dims.join(","))
    }
}

fn block_diagonal(p: u32, blocks: &[Matrix], rows: usize, cols: usize) -> Matrix {
    let mut out = Matrix::zeros(p, rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                out.set(r0 + r, c0 + c, b.get(r, c));
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    out
}

/// A degree-preserving linear map between modules, one matrix per degree
/// (rows: target dimension, columns: source dimension).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    p: u32,
    top: u32,
    matrices: Vec<Matrix>,
}

impl ModuleMap {
    pub fn new(p: u32, top: u32, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.len() != top as usize + 1 {
            return Err(Error::Invalid(format!("need {} matrices", top + 1)));
        }
        Ok(ModuleMap { p, top, matrices })
    }

    pub fn zero(source: &UnstableModule, target: &UnstableModule) -> Self {
        let top = source.top.min(target.top);
        ModuleMap {
            p: source.p,
            top,
            matrices: (0..=top).map(|n| Matrix::zeros(source.p, target.dim(n), source.dim(n))).collect(),
        }
    }

    pub fn identity(m: &UnstableModule) -> Self {
        ModuleMap {
            p: m.p,
            top: m.top,
            matrices: (0..=m.top).map(|n| Matrix::identity(m.p, m.dim(n))).collect(),
        }
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    pub fn matrix(&self, n: u32) -> &Matrix {
        &self.matrices[n as usize]
    }

    pub fn rank(&self, n: u32) -> usize {
        self.matrices[n as usize].rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(is_zero_matrix)
    }

    /// self ∘ first.
    pub fn after(&self, first: &ModuleMap) -> Result<ModuleMap> {
        let top = self.top.min(first.top);
        let matrices = (0..=top as usize)
            .map(|n| {
                let (a, b) = (&self.matrices[n], &first.matrices[n]);
                if a.cols() != b.rows() {
                    return Err(Error::Invalid(format!("maps do not compose in degree {n}")));
                }
                Ok(a.mul(b))
            })
            .collect::<Result<_>>()?;
        Ok(ModuleMap { p: self.p, top, matrices })
    }

    /// Commutes with every stored action of source and target in range; the
    /// first failure is returned.
    pub fn module_map_failure(&self, source: &UnstableModule, target: &UnstableModule) -> Option<String> {
        let top = self.top.min(source.top).min(target.top);
        let mut keys: Vec<&(u32, MilnorMonomial)> = source.actions.keys().chain(target.actions.keys()).collect();
        keys.sort();
        keys.dedup();
        for (n, theta) in keys {
            let j = theta.degree(self.p);
            if n + j > top {
                continue;
            }
            let lhs = self.matrices[(n + j) as usize].mul(&source.action_matrix(theta, *n));
            let rhs = target.action_matrix(theta, *n).mul(&self.matrices[*n as usize]);
            if lhs != rhs {
                return Some(format!("{theta} on degree {n}"));
            }
        }
        None
    }

    pub fn kernel(&self, n: u32) -> Subspace {
        let m = &self.matrices[n as usize];
        let rows: Vec<Vec<u32>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        if rows.is_empty() {
            return Subspace::full(self.p, m.cols());
        }
        Subspace::span(self.p, m.cols(), Matrix::from_rows(self.p, m.cols(), &rows).kernel())
    }

    pub fn image(&self, n: u32) -> Subspace {
        let m = &self.matrices[n as usize];
        Subspace::span(self.p, m.rows(), (0..m.cols()).map(|c| m.column(c)))
    }
}
