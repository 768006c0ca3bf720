//! Irreducible `G_n`-modules in the Gelfand-Tsetlin basis.
//!
//! The basis of `V^mu` is indexed by pairs `(T, j)` where `T` runs over the
//! standard tableaux of shape `mu` in enumeration order and `j` is a
//! multi-index into `B^{r_T(1)} x ... x B^{r_T(n)}` in lexicographic order
//! with the first factor most significant. Matrices act on column vectors:
//! column `k` is the image of basis vector `k`.
//!
//! Coxeter generators couple the block of `T` only with the block of
//! `s_i T`. On the tensor factors they act through the swap `N` of factors
//! `i` and `i+1`:
//!
//! * `i`, `i+1` in one row: `+N`; in one column: `-N`.
//! * in different diagrams: `N` carries the block of `T` onto that of `s_i T`.
//! * otherwise, with `r = c_T(i+1) - c_T(i)`: `r^-1 N` on the diagonal and
//!   `N` or `(1 - r^-2) N` off it (seminormal), or `sqrt(1 - r^-2) N`
//!   (orthogonal).
//!
//! The off-diagonal blocks must be tensor swaps rather than identities:
//! only then does `s_i g^{(i)} s_i = g^{(i+1)}` hold when some `dim V^sigma > 1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::combinatorics::{
    enumerate_gdiagrams, enumerate_gtableaux, length, multinomial, GTableau, GYoungDiagram,
    Partition,
};
use crate::error::{Error, Result};
use crate::exec::{par_map, par_map_range};
use crate::group::GroupTable;
use crate::matrix::Matrix;
use crate::report::{Check, Report};
use crate::scalar::{qi, Cyc, Scalar, ScalarKind, Q};
use crate::wreath::{b_element, enumerate_types, yjm, WreathElement, WreathGroup, WreathType};

/// Default tolerance for floating comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    Seminormal,
    Orthogonal,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Seminormal => "seminormal",
            Form::Orthogonal => "orthogonal",
        })
    }
}

impl FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seminormal" => Ok(Form::Seminormal),
            "orthogonal" => Ok(Form::Orthogonal),
            other => Err(Error::InvalidArgument(format!("unknown form {other:?}"))),
        }
    }
}

/// `dim V^mu = multinomial(n; n_1..n_t) prod f^{mu_i} prod d_i^{n_i}`.
pub fn dimension(mu: &GYoungDiagram, g: &GroupTable) -> u128 {
    let dims = g.dims();
    let sizes = mu.sizes();
    multinomial(&sizes)
        * mu.shapes()
            .iter()
            .map(Partition::num_standard_tableaux)
            .product::<u128>()
        * sizes
            .iter()
            .zip(&dims)
            .map(|(&n, &d)| (d as u128).pow(n as u32))
            .product::<u128>()
}

#[derive(Clone, Debug)]
pub struct Block {
    pub tableau: GTableau,
    pub offset: usize,
    /// `dim V^{r_T(i)}` for each position.
    pub factor_dims: Vec<usize>,
    pub size: usize,
    pub length: usize,
}

impl Block {
    /// Multi-index of local basis vector `j`.
    pub fn multi_index(&self, mut j: usize) -> Vec<usize> {
        let mut out = vec![0; self.factor_dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.factor_dims).rev() {
            *slot = j % d;
            j /= d;
        }
        out
    }

    fn local_index(dims: &[usize], idx: &[usize]) -> usize {
        idx.iter().zip(dims).fold(0, |acc, (&b, &d)| acc * d + b)
    }
}

/// Local index after exchanging tensor factors `i` and `i+1` (1-based),
/// expressed in the dimension sequence with those factors exchanged.
fn swap_index(block: &Block, j: usize, i: usize) -> usize {
    let mut idx = block.multi_index(j);
    idx.swap(i - 1, i);
    let mut dims = block.factor_dims.clone();
    dims.swap(i - 1, i);
    Block::local_index(&dims, &idx)
}

/// An irreducible `G_n`-module in the Gelfand-Tsetlin basis.
#[derive(Clone)]
pub struct GZRep<S> {
    group: GroupTable,
    mu: GYoungDiagram,
    form: Form,
    n: usize,
    blocks: Vec<Block>,
    dim: usize,
    coxeter: Vec<Matrix<S>>,
    irreps: Vec<Vec<Matrix<S>>>,
}

enum CoxeterCase {
    Row,
    Column,
    Apart { target: usize },
    Mixed { target: usize, r: i64, up: bool },
}

fn coxeter_case(
    t: &GTableau,
    i: usize,
    index: &HashMap<GTableau, usize>,
    lengths: &[usize],
    me: usize,
) -> CoxeterCase {
    let (s1, r1, c1) = t.box_of(i);
    let (s2, r2, c2) = t.box_of(i + 1);
    if s1 == s2 && r1 == r2 {
        return CoxeterCase::Row;
    }
    if s1 == s2 && c1 == c2 {
        return CoxeterCase::Column;
    }
    let target = index[&t.swapped(i)];
    if s1 != s2 {
        return CoxeterCase::Apart { target };
    }
    let r = t.content_of(i + 1) - t.content_of(i);
    CoxeterCase::Mixed {
        target,
        r,
        up: lengths[target] == lengths[me] + 1,
    }
}

impl<S: Scalar> GZRep<S> {
    /// Builds the module, or `None` when `S` cannot hold the irrep entries
    /// of `G` or the square roots the orthogonal form needs.
    pub fn build(mu: &GYoungDiagram, g: &GroupTable, form: Form) -> Result<Option<Self>> {
        let n = mu.size();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "the diagram must have at least one box".into(),
            ));
        }
        if mu.t() != g.num_classes() {
            return Err(Error::InvalidArgument(format!(
                "diagram has {} components but G has {} irreps",
                mu.t(),
                g.num_classes()
            )));
        }
        let Some(irreps) = g
            .irreps()
            .iter()
            .map(|ir| ir.matrices::<S>().map(<[Matrix<S>]>::to_vec))
            .collect::<Option<Vec<_>>>()
        else {
            return Ok(None);
        };
        let dims = g.dims();

        let tableaux = enumerate_gtableaux(mu);
        let mut blocks = Vec::with_capacity(tableaux.len());
        let mut offset = 0;
        for t in tableaux {
            let factor_dims: Vec<usize> = t.labels().iter().map(|&s| dims[s]).collect();
            let size = factor_dims.iter().product();
            let length = length(&t);
            blocks.push(Block {
                tableau: t,
                offset,
                factor_dims,
                size,
                length,
            });
            offset += size;
        }
        let index: HashMap<GTableau, usize> = blocks
            .iter()
            .enumerate()
            .map(|(k, b)| (b.tableau.clone(), k))
            .collect();
        let lengths: Vec<usize> = blocks.iter().map(|b| b.length).collect();

        let built: Vec<Option<Matrix<S>>> = par_map_range(n - 1, |k| {
            let i = k + 1;
            let mut m = Matrix::<S>::zeros(offset, offset);
            for (bt, block) in blocks.iter().enumerate() {
                let case = coxeter_case(&block.tableau, i, &index, &lengths, bt);
                for j in 0..block.size {
                    let col = block.offset + j;
                    let swapped = swap_index(block, j, i);
                    match case {
                        CoxeterCase::Row => m[(block.offset + swapped, col)] = S::one(),
                        CoxeterCase::Column => m[(block.offset + swapped, col)] = -S::one(),
                        CoxeterCase::Apart { target } => {
                            m[(blocks[target].offset + swapped, col)] = S::one()
                        }
                        CoxeterCase::Mixed { target, r, up } => {
                            let rinv = Q::new(1, r as i128);
                            let off = Q::one() - rinv * rinv;
                            let off = match form {
                                Form::Seminormal if up => S::one(),
                                Form::Seminormal => S::from_q(&off),
                                Form::Orthogonal => S::sqrt_q(&off)?,
                            };
                            m[(block.offset + swapped, col)] = S::from_q(&rinv);
                            m[(blocks[target].offset + swapped, col)] = off;
                        }
                    }
                }
            }
            Some(m)
        });
        let Some(coxeter) = built.into_iter().collect::<Option<Vec<_>>>() else {
            return Ok(None);
        };
        Ok(Some(GZRep {
            group: g.clone(),
            mu: mu.clone(),
            form,
            n,
            blocks,
            dim: offset,
            coxeter,
            irreps,
        }))
    }

    pub fn mu(&self) -> &GYoungDiagram {
        &self.mu
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `rho(s_i)`, `1 <= i < n`.
    pub fn coxeter(&self, i: usize) -> &Matrix<S> {
        &self.coxeter[i - 1]
    }

    /// `rho(g^{(l)})`: `I x ... x M_{r_T(l)}(g) x ... x I` on each block.
    pub fn factor_action(&self, l: usize, g: usize) -> Matrix<S> {
        let mut gvec = vec![0; self.n];
        gvec[l - 1] = g;
        self.base_matrix(&gvec)
    }

    /// `rho(g_1^{(1)} ... g_n^{(n)})`, block diagonal.
    pub fn base_matrix(&self, gvec: &[usize]) -> Matrix<S> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for block in &self.blocks {
            let labels = block.tableau.labels();
            let mut acc = Matrix::identity(1);
            for (k, &s) in labels.iter().enumerate() {
                acc = acc.kron(&self.irreps[s][gvec[k]]);
            }
            out.set_block(block.offset, block.offset, &acc);
        }
        out
    }

    /// `rho(pi)` through a reduced word of `pi`.
    pub fn permutation_matrix(&self, perm: &[usize]) -> Matrix<S> {
        let mut acc = Matrix::identity(self.dim);
        for i in coxeter_word(perm) {
            acc = acc.matmul(&self.coxeter[i - 1]);
        }
        acc
    }

    /// `rho(w)` with `w = g_1^{(1)} ... g_n^{(n)} pi`.
    pub fn group_element_matrix(&self, w: &WreathElement) -> Matrix<S> {
        let base = self.base_matrix(&w.g);
        if w.perm.iter().enumerate().all(|(i, &p)| i == p) {
            return base;
        }
        base.matmul(&self.permutation_matrix(&w.perm))
    }

    fn algebra_matrix(&self, terms: impl Iterator<Item = (WreathElement, Q)>) -> Matrix<S> {
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for (x, c) in terms {
            acc = acc.add(&self.group_element_matrix(&x).scale(&S::from_q(&c)));
        }
        acc
    }

    /// `rho(X_i)`.
    pub fn yjm_matrix(&self, i: usize) -> Matrix<S> {
        let w = WreathGroup::new(&self.group, self.n);
        let x = yjm(&w, i);
        self.algebra_matrix(x.terms().map(|(e, c)| (e.clone(), *c)))
    }

    pub fn b_matrix(&self, i: usize) -> Matrix<S> {
        let w = WreathGroup::new(&self.group, self.n);
        let b = b_element(&w, i);
        self.algebra_matrix(b.terms().map(|(e, c)| (e.clone(), *c)))
    }

    /// `(|G| / dim V^{r_T(i)}) c(b_T(i))` on the block of `T`.
    pub fn yjm_diagonal_expected(&self, i: usize) -> Matrix<S> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        let dims = self.group.dims();
        for block in &self.blocks {
            let t = &block.tableau;
            let value = Q::new(self.group.order() as i128, dims[t.label(i)] as i128)
                * qi(t.content_of(i) as i128);
            let v = S::from_q(&value);
            for j in 0..block.size {
                out[(block.offset + j, block.offset + j)] = v.clone();
            }
        }
        out
    }

    pub fn character(&self, w: &WreathElement) -> S {
        self.group_element_matrix(w).trace()
    }

    pub fn is_rational(&self) -> bool {
        self.coxeter.iter().all(Matrix::is_rational)
            && self.irreps.iter().flatten().all(Matrix::is_rational)
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        if !S::EXACT {
            ScalarKind::Float
        } else if self.is_rational() {
            ScalarKind::Rational
        } else {
            ScalarKind::Cyclotomic
        }
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .blocks
            .iter()
            .flat_map(|b| {
                (0..b.size).map(move |j| json!({ "tableau": b.tableau.to_json(), "multi_index": b.multi_index(j) }))
            })
            .collect();
        let coxeter: Vec<Value> = self
            .coxeter
            .iter()
            .enumerate()
            .map(|(k, m)| json!({ "i": k + 1, "matrix": m.to_json() }))
            .collect();
        let factors: Vec<Value> = (1..=self.n)
            .flat_map(|l| (0..self.group.order()).map(move |g| (l, g)))
            .map(|(l, g)| json!({ "l": l, "g": g, "matrix": self.factor_action(l, g).to_json() }))
            .collect();
        json!({
            "group": self.group.name(),
            "n": self.n,
            "mu": self.mu.to_json(),
            "form": self.form.to_string(),
            "scalar_kind": self.scalar_kind().to_string(),
            "dimension": self.dim,
            "basis": basis,
            "coxeter": coxeter,
            "factor_actions": factors,
        })
    }

    /// The relation, unitarity and YJM checks for this module.
    pub fn verify(&self, opts: &VerifyOptions) -> Report {
        verify_rep(self, opts)
    }
}

/// Reduced word `i_1 ... i_k` with `pi = s_{i_1} ... s_{i_k}`, by bubble sort.
pub fn coxeter_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut rev = Vec::new();
    while let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
        // p = (p s_i) s_i and p s_i has one inversion fewer
        p.swap(i, i + 1);
        rev.push(i + 1);
    }
    rev.reverse();
    rev
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol: DEFAULT_TOL,
            samples: 100,
            seed: 0,
        }
    }
}

struct Tally<'a> {
    name: &'a str,
    exact: bool,
    tol: f64,
    worst: f64,
    count: usize,
    witness: Option<String>,
}

impl<'a> Tally<'a> {
    fn new(name: &'a str, exact: bool, tol: f64) -> Self {
        Tally {
            name,
            exact,
            tol,
            worst: 0.0,
            count: 0,
            witness: None,
        }
    }

    fn compare<S: Scalar>(
        &mut self,
        lhs: &Matrix<S>,
        rhs: &Matrix<S>,
        what: impl FnOnce() -> String,
    ) {
        let r = lhs.residual(rhs);
        self.count += 1;
        self.worst = self.worst.max(r);
        let ok = if self.exact { lhs == rhs } else { r < self.tol };
        if !ok && self.witness.is_none() {
            self.witness = Some(format!("{} (residual {r:.3e})", what()));
        }
    }

    fn finish(self) -> Check {
        let c = match self.witness {
            None => Check::pass(self.name).with_detail(format!("{} instances", self.count)),
            Some(w) => Check::fail(self.name, w),
        };
        c.with_residual(self.worst)
    }
}

fn verify_rep<S: Scalar>(rep: &GZRep<S>, opts: &VerifyOptions) -> Report {
    let n = rep.n;
    let order = rep.group.order();
    let exact = S::EXACT;
    let mut report = Report::new(format!("{} {} {}", rep.group.name(), rep.mu, rep.form));
    let id = Matrix::<S>::identity(rep.dim);
    let s = |i: usize| rep.coxeter(i);

    let mut t = Tally::new("s_i^2 = 1", exact, opts.tol);
    for i in 1..n {
        t.compare(&s(i).matmul(s(i)), &id, || format!("i = {i}"));
    }
    report.push(t.finish());

    let mut t = Tally::new("braid relations", exact, opts.tol);
    for i in 1..n.saturating_sub(1) {
        let lhs = s(i).matmul(s(i + 1)).matmul(s(i));
        let rhs = s(i + 1).matmul(s(i)).matmul(s(i + 1));
        t.compare(&lhs, &rhs, || format!("i = {i}"));
    }
    for i in 1..n {
        for j in i + 2..n {
            t.compare(&s(i).matmul(s(j)), &s(j).matmul(s(i)), || {
                format!("s_{i} s_{j}")
            });
        }
    }
    report.push(t.finish());

    let factors: Vec<Vec<Matrix<S>>> = (1..=n)
        .map(|l| (0..order).map(|g| rep.factor_action(l, g)).collect())
        .collect();
    let f = |l: usize, g: usize| &factors[l - 1][g];

    let mut t = Tally::new("s_i g^(i) s_i = g^(i+1)", exact, opts.tol);
    for i in 1..n {
        for g in 0..order {
            t.compare(&s(i).matmul(f(i, g)).matmul(s(i)), f(i + 1, g), || {
                format!("i = {i}, g = {g}")
            });
        }
    }
    report.push(t.finish());

    let mut t = Tally::new("s_i commutes with g^(l), l != i, i+1", exact, opts.tol);
    for i in 1..n {
        for l in (1..=n).filter(|&l| l != i && l != i + 1) {
            for g in 0..order {
                t.compare(&s(i).matmul(f(l, g)), &f(l, g).matmul(s(i)), || {
                    format!("i = {i}, l = {l}, g = {g}")
                });
            }
        }
    }
    report.push(t.finish());

    let mut t = Tally::new("factor actions are homomorphisms", exact, opts.tol);
    for l in 1..=n {
        for a in 0..order {
            for b in 0..order {
                let ab = rep.group.mul(a, b);
                t.compare(&f(l, a).matmul(f(l, b)), f(l, ab), || {
                    format!("l = {l}, g = {a}, h = {b}")
                });
            }
        }
    }
    report.push(t.finish());

    let mut t = Tally::new("homomorphism on random pairs", exact, opts.tol);
    let w = WreathGroup::new(&rep.group, n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pairs: Vec<(WreathElement, WreathElement)> = (0..opts.samples)
        .map(|_| (w.random_element(&mut rng), w.random_element(&mut rng)))
        .collect();
    let products = par_map(&pairs, |(x, y)| {
        let lhs = rep
            .group_element_matrix(x)
            .matmul(&rep.group_element_matrix(y));
        let rhs = rep.group_element_matrix(&w.mul(x, y));
        (lhs, rhs)
    });
    for ((x, y), (lhs, rhs)) in pairs.iter().zip(&products) {
        t.compare(lhs, rhs, || format!("x = {x:?}, y = {y:?}"));
    }
    report.push(t.finish());

    let mut t = Tally::new("coxeter matrices couple T only with s_i T", true, 0.0);
    for i in 1..n {
        for block in &rep.blocks {
            let target = block.tableau.swapped(i);
            let allowed = |row: usize| {
                let rb = rep
                    .blocks
                    .iter()
                    .find(|b| row >= b.offset && row < b.offset + b.size)
                    .expect("row in a block");
                rb.tableau == block.tableau || rb.tableau == target
            };
            let bad = (block.offset..block.offset + block.size)
                .flat_map(|col| (0..rep.dim).map(move |row| (row, col)))
                .find(|&(row, col)| !s(i)[(row, col)].is_zero() && !allowed(row));
            let ok = bad.is_none();
            t.count += 1;
            if !ok && t.witness.is_none() {
                t.witness = Some(format!("i = {i}, entry {bad:?}"));
            }
        }
    }
    report.push(t.finish());

    if rep.form == Form::Orthogonal {
        let mut t = Tally::new("generators are unitary", exact, opts.tol);
        for i in 1..n {
            t.compare(&s(i).matmul(&s(i).adjoint()), &id, || format!("s_{i}"));
        }
        for l in 1..=n {
            for g in 0..order {
                t.compare(&f(l, g).matmul(&f(l, g).adjoint()), &id, || {
                    format!("g^({l}), g = {g}")
                });
            }
        }
        report.push(t.finish());
    }

    let xs: Vec<Matrix<S>> = par_map_range(n, |k| rep.yjm_matrix(k + 1));
    let mut t = Tally::new(
        "X_i is diagonal with eigenvalue (|G|/dim) content",
        exact,
        opts.tol,
    );
    for (k, x) in xs.iter().enumerate() {
        t.compare(x, &rep.yjm_diagonal_expected(k + 1), || {
            format!("i = {}", k + 1)
        });
    }
    report.push(t.finish());

    let mut t = Tally::new("X_(i+1) s_i = s_i X_i + b_i", exact, opts.tol);
    for i in 1..n {
        let lhs = xs[i].matmul(s(i));
        let rhs = s(i).matmul(&xs[i - 1]).add(&rep.b_matrix(i));
        t.compare(&lhs, &rhs, || format!("i = {i}"));
    }
    report.push(t.finish());

    let mut t = Tally::new("X_i commutes with G^n", exact, opts.tol);
    for (k, x) in xs.iter().enumerate() {
        for l in 1..=n {
            for g in 0..order {
                t.compare(&x.matmul(f(l, g)), &f(l, g).matmul(x), || {
                    format!("X_{}, g^({l}) g = {g}", k + 1)
                });
            }
        }
    }
    report.push(t.finish());

    report.push(Check::from_bool(
        "dimension matches the product formula",
        rep.dim as u128 == dimension(&rep.mu, &rep.group),
        || format!("{} vs {}", rep.dim, dimension(&rep.mu, &rep.group)),
    ));
    report
}

/// A module over whichever scalar field could represent it.
#[derive(Clone)]
pub enum AnyRep {
    Exact(GZRep<Cyc>),
    Float(GZRep<Complex64>),
}

/// Builds `V^mu`, exactly when possible and in floating point otherwise.
pub fn build_rep(mu: &GYoungDiagram, g: &GroupTable, form: Form) -> Result<AnyRep> {
    if g.scalar_kind() != ScalarKind::Float {
        if let Some(rep) = GZRep::<Cyc>::build(mu, g, form)? {
            return Ok(AnyRep::Exact(rep));
        }
        log::warn!("{mu} ({form} form over {}) needs square roots outside Q(i, sqrt 3); using floating point", g.name());
    }
    let rep =
        GZRep::<Complex64>::build(mu, g, form)?.expect("floating point represents everything");
    Ok(AnyRep::Float(rep))
}

impl AnyRep {
    pub fn dimension(&self) -> usize {
        match self {
            AnyRep::Exact(r) => r.dimension(),
            AnyRep::Float(r) => r.dimension(),
        }
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        match self {
            AnyRep::Exact(r) => r.scalar_kind(),
            AnyRep::Float(r) => r.scalar_kind(),
        }
    }

    pub fn mu(&self) -> &GYoungDiagram {
        match self {
            AnyRep::Exact(r) => r.mu(),
            AnyRep::Float(r) => r.mu(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyRep::Exact(r) => r.to_json(),
            AnyRep::Float(r) => r.to_json(),
        }
    }

    pub fn verify(&self, opts: &VerifyOptions) -> Report {
        match self {
            AnyRep::Exact(r) => r.verify(opts),
            AnyRep::Float(r) => r.verify(opts),
        }
    }

    pub fn character_c64(&self, w: &WreathElement) -> Complex64 {
        match self {
            AnyRep::Exact(r) => r.character(w).to_c64(),
            AnyRep::Float(r) => r.character(w),
        }
    }
}

/// An element of the given type: each cycle on consecutive positions, the
/// class representative at its last position.
pub fn type_representative(ty: &WreathType, g: &GroupTable) -> WreathElement {
    let n = ty.n();
    let mut x = WreathElement {
        g: vec![0; n],
        perm: (0..n).collect(),
    };
    let mut start = 0;
    for &(k, j) in &ty.parts {
        for p in start..start + k - 1 {
            x.perm[p] = p + 1;
        }
        x.perm[start + k - 1] = start;
        x.g[start + k - 1] = g.classes()[j][0];
        start += k;
    }
    x
}

/// Characters of all irreducible `G_n`-modules on all conjugacy classes.
#[derive(Clone, Debug)]
pub struct CharTable {
    pub n: usize,
    pub diagrams: Vec<GYoungDiagram>,
    pub types: Vec<WreathType>,
    pub class_sizes: Vec<u128>,
    /// Rows are diagrams, columns are types.
    pub exact: Option<Vec<Vec<Cyc>>>,
    pub float: Vec<Vec<Complex64>>,
}

pub fn char_table(n: usize, g: &GroupTable) -> Result<CharTable> {
    let diagrams = enumerate_gdiagrams(n, g.num_classes());
    let types = enumerate_types(n, g.num_classes());
    let class_sizes = types.iter().map(|t| t.class_size(g)).collect();
    let reps: Vec<WreathElement> = types.iter().map(|t| type_representative(t, g)).collect();
    if n == 0 {
        let one = vec![vec![Cyc::one()]];
        return Ok(CharTable {
            n,
            diagrams,
            types,
            class_sizes,
            exact: Some(one),
            float: vec![vec![Complex64::new(1.0, 0.0)]],
        });
    }
    type Row = (Option<Vec<Cyc>>, Vec<Complex64>);
    let rows: Vec<Result<Row>> = par_map(&diagrams, |mu| {
        if g.scalar_kind() != ScalarKind::Float {
            if let Some(rep) = GZRep::<Cyc>::build(mu, g, Form::Seminormal)? {
                let vals: Vec<Cyc> = reps.iter().map(|x| rep.character(x)).collect();
                let fl = vals.iter().map(Scalar::to_c64).collect();
                return Ok((Some(vals), fl));
            }
        }
        let rep = GZRep::<Complex64>::build(mu, g, Form::Seminormal)?.expect("float build");
        Ok((None, reps.iter().map(|x| rep.character(x)).collect()))
    });
    let mut exact = Some(Vec::new());
    let mut float = Vec::new();
    for row in rows {
        let (e, f) = row?;
        match (exact.as_mut(), e) {
            (Some(acc), Some(e)) => acc.push(e),
            _ => exact = None,
        }
        float.push(f);
    }
    Ok(CharTable {
        n,
        diagrams,
        types,
        class_sizes,
        exact,
        float,
    })
}

impl CharTable {
    pub fn group_order(&self) -> u128 {
        self.class_sizes.iter().sum()
    }

    /// `<chi_a, chi_b>` computed exactly when possible.
    pub fn inner_product_exact(&self, a: &[Cyc], b: &[Cyc]) -> Cyc {
        let mut s = Cyc::zero();
        for ((x, y), &c) in a.iter().zip(b).zip(&self.class_sizes) {
            s += (x * &y.conj()).scale(&qi(c as i128));
        }
        s.scale(&Q::new(1, self.group_order() as i128))
    }

    pub fn inner_product_float(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        let s: Complex64 = a
            .iter()
            .zip(b)
            .zip(&self.class_sizes)
            .map(|((x, y), &c)| x * y.conj() * c as f64)
            .sum();
        s / self.group_order() as f64
    }

    /// First orthogonality, `chi(e) = dim` and the completeness identities.
    pub fn verify(&self, g: &GroupTable, tol: f64) -> Report {
        let mut report = Report::new(format!("characters {} n={}", g.name(), self.n));
        let k = self.diagrams.len();
        let mut worst = 0.0f64;
        let mut failure = None;
        for a in 0..k {
            for b in 0..k {
                let expect = if a == b { 1.0 } else { 0.0 };
                let (ok, r) = match &self.exact {
                    Some(rows) => {
                        let v = self.inner_product_exact(&rows[a], &rows[b]);
                        let e = if a == b { Cyc::one() } else { Cyc::zero() };
                        (v == e, (v.to_c64() - Complex64::new(expect, 0.0)).norm())
                    }
                    None => {
                        let v = self.inner_product_float(&self.float[a], &self.float[b]);
                        let r = (v - Complex64::new(expect, 0.0)).norm();
                        (r < tol, r)
                    }
                };
                worst = worst.max(r);
                if !ok && failure.is_none() {
                    failure = Some(format!(
                        "<chi_{}, chi_{}>",
                        self.diagrams[a], self.diagrams[b]
                    ));
                }
            }
        }
        report.push(
            match failure {
                None => Check::pass("character rows are orthonormal"),
                Some(d) => Check::fail("character rows are orthonormal", d),
            }
            .with_residual(worst),
        );

        let identity_col = self
            .types
            .iter()
            .position(|t| t.parts.iter().all(|&p| p == (1, 0)));
        let dims: Vec<u128> = self.diagrams.iter().map(|mu| dimension(mu, g)).collect();
        let chi_e_ok = identity_col.is_some_and(|c| {
            self.float
                .iter()
                .zip(&dims)
                .all(|(row, &d)| (row[c] - Complex64::new(d as f64, 0.0)).norm() < tol)
        });
        report.push(Check::from_bool("chi(e) = dim", chi_e_ok, || {
            "character at the identity differs".into()
        }));

        let sum_sq: u128 = dims.iter().map(|d| d * d).sum();
        report.push(Check::from_bool(
            "sum of dim^2 = |G|^n n!",
            sum_sq == self.group_order(),
            || format!("{sum_sq} vs {}", self.group_order()),
        ));
        report.push(Check::from_bool(
            "number of diagrams = number of types",
            self.diagrams.len() == self.types.len(),
            || {
                format!(
                    "{} diagrams, {} types",
                    self.diagrams.len(),
                    self.types.len()
                )
            },
        ));
        report
    }
}

/// `mu | sigma`: the diagrams obtained by removing a corner of `mu(sigma)`.
pub fn mu_down_sigma(mu: &GYoungDiagram, sigma: usize) -> Vec<GYoungDiagram> {
    mu.down(sigma)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchResult {
    pub parts: Vec<(GYoungDiagram, usize)>,
}

impl BranchResult {
    pub fn total_dimension(&self, g: &GroupTable) -> u128 {
        self.parts
            .iter()
            .map(|(l, m)| *m as u128 * dimension(l, g))
            .sum()
    }

    pub fn multiplicity(&self, lambda: &GYoungDiagram) -> usize {
        self.parts
            .iter()
            .filter(|(l, _)| l == lambda)
            .map(|(_, m)| m)
            .sum()
    }

    pub fn to_json(&self) -> Value {
        self.parts
            .iter()
            .map(|(l, m)| json!({ "lambda": l.to_json(), "multiplicity": m }))
            .collect::<Vec<_>>()
            .into()
    }
}

/// Restriction of `V^mu` from `G_{n+1}` to `G_n`: each corner of each
/// `mu(sigma)` contributes with multiplicity `dim V^sigma`.
pub fn branch(mu: &GYoungDiagram, g: &GroupTable) -> Result<BranchResult> {
    if mu.size() == 0 {
        return Err(Error::InvalidArgument("cannot restrict from G_0".into()));
    }
    let dims = g.dims();
    let parts = (0..mu.t())
        .flat_map(|s| {
            let d = dims[s];
            mu_down_sigma(mu, s).into_iter().map(move |l| (l, d))
        })
        .collect();
    Ok(BranchResult { parts })
}

/// Compares [`branch`] with multiplicities computed from characters of the
/// restriction along `G_n -> G_{n+1}`.
pub fn verify_branching(mu: &GYoungDiagram, g: &GroupTable, tol: f64) -> Result<Report> {
    let n1 = mu.size();
    let combinatorial = branch(mu, g)?;
    let mut report = Report::new(format!("branching {} {mu}", g.name()));
    let n = n1 - 1;
    let dim_mu = dimension(mu, g);
    report.push(Check::from_bool(
        "sum of multiplicity x dimension = dim V^mu",
        combinatorial.total_dimension(g) == dim_mu,
        || format!("{} vs {dim_mu}", combinatorial.total_dimension(g)),
    ));

    let big = build_rep(mu, g, Form::Seminormal)?;
    let small_table = char_table(n, g)?;
    // chi^mu on G_n, one value per type of G_n
    let restricted: Vec<Complex64> = small_table
        .types
        .iter()
        .map(|ty| {
            let mut parts = ty.parts.clone();
            parts.push((1, 0));
            big.character_c64(&type_representative(&WreathType::new(parts), g))
        })
        .collect();
    let mut worst = 0.0f64;
    let mut failure = None;
    for (lambda, row) in small_table.diagrams.iter().zip(&small_table.float) {
        let m = small_table.inner_product_float(&restricted, row);
        let expect = combinatorial.multiplicity(lambda) as f64;
        let r = (m - Complex64::new(expect, 0.0)).norm();
        worst = worst.max(r);
        if r >= tol.max(1e-9) && failure.is_none() {
            failure = Some(format!(
                "{lambda}: character multiplicity {m}, combinatorial {expect}"
            ));
        }
    }
    report.push(
        match failure {
            None => Check::pass("multiplicities agree with characters"),
            Some(d) => Check::fail("multiplicities agree with characters", d),
        }
        .with_residual(worst),
    );
    Ok(report)
}
