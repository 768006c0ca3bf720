//! The wreath product `G_n = G ~ S_n`, its group algebra with exact
//! rational coefficients, Young-Jucys-Murphy elements, class sums and the
//! algebra-level verification suites.
//!
//! Permutations are stored 0-based in one-line form, `perm[i] = pi(i)`, and
//! compose as functions: `(pi tau)(i) = pi(tau(i))`. The product is
//! `(g, pi)(h, tau) = (g_i h_{pi^-1(i)}, pi tau)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::combinatorics::total_gtableaux;
use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::group::GroupTable;
use crate::linalg::{nullspace, EchelonBasis, SparseVec};
use crate::report::{Check, Report};
use crate::scalar::{parse_q, Q};

/// Default bound on `|G_n|` for anything that materializes the whole group.
pub const DEFAULT_MAX_ORDER: u128 = 10_000;

/// The materialization bound, overridable through `WREATHREP_MAX_ORDER`.
pub fn max_order() -> u128 {
    std::env::var("WREATHREP_MAX_ORDER")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub g: Vec<usize>,
    pub perm: Vec<usize>,
}

impl WreathElement {
    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn to_json(&self) -> Value {
        json!({ "g": self.g, "perm": self.perm.iter().map(|p| p + 1).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let g: Vec<usize> = serde_json::from_value(v.get("g").cloned().unwrap_or(Value::Null))?;
        let perm: Vec<usize> =
            serde_json::from_value(v.get("perm").cloned().unwrap_or(Value::Null))?;
        if perm.contains(&0) {
            return Err(Error::Parse("permutation images are 1-based".into()));
        }
        Ok(WreathElement {
            g,
            perm: perm.into_iter().map(|p| p - 1).collect(),
        })
    }
}

impl fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<usize> = self.perm.iter().map(|p| p + 1).collect();
        write!(f, "({:?}; {:?})", self.g, perm)
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `G_n` for a fixed base group and `n`.
#[derive(Clone, Copy)]
pub struct WreathGroup<'a> {
    pub base: &'a GroupTable,
    pub n: usize,
}

impl<'a> WreathGroup<'a> {
    pub fn new(base: &'a GroupTable, n: usize) -> Self {
        WreathGroup { base, n }
    }

    /// `|G|^n n!`, saturating.
    pub fn order(&self) -> u128 {
        (0..self.n)
            .try_fold(factorial(self.n), |acc, _| {
                acc.checked_mul(self.base.order() as u128)
            })
            .unwrap_or(u128::MAX)
    }

    /// Errors when the group is too large to materialize.
    pub fn guard(&self) -> Result<()> {
        let (order, limit) = (self.order(), max_order());
        if order > limit {
            Err(Error::TooLarge {
                n: self.n,
                order,
                limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            g: vec![0; self.n],
            perm: (0..self.n).collect(),
        }
    }

    pub fn check(&self, x: &WreathElement) -> Result<()> {
        let mut seen = vec![false; self.n];
        let perm_ok = x.perm.len() == self.n
            && x.perm
                .iter()
                .all(|&p| p < self.n && !std::mem::replace(&mut seen[p], true));
        if x.g.len() != self.n || !perm_ok || x.g.iter().any(|&g| g >= self.base.order()) {
            return Err(Error::InvalidArgument(format!(
                "{x:?} is not an element of G_{}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn mul(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        let inv = invert_perm(&x.perm);
        let g = (0..self.n)
            .map(|i| self.base.mul(x.g[i], y.g[inv[i]]))
            .collect();
        let perm = y.perm.iter().map(|&t| x.perm[t]).collect();
        WreathElement { g, perm }
    }

    pub fn inv(&self, x: &WreathElement) -> WreathElement {
        let g = (0..self.n).map(|i| self.base.inv(x.g[x.perm[i]])).collect();
        WreathElement {
            g,
            perm: invert_perm(&x.perm),
        }
    }

    /// `g^{(l)}`, with `l` 1-based.
    pub fn base_element(&self, l: usize, g: usize) -> WreathElement {
        let mut x = self.identity();
        x.g[l - 1] = g;
        x
    }

    /// The transposition `(k, l)`, 1-based.
    pub fn transposition(&self, k: usize, l: usize) -> WreathElement {
        let mut x = self.identity();
        x.perm.swap(k - 1, l - 1);
        x
    }

    /// `s_i = (i, i+1)`.
    pub fn coxeter(&self, i: usize) -> WreathElement {
        self.transposition(i, i + 1)
    }

    /// Dense index: permutations in lexicographic order, then base tuples in
    /// lexicographic order.
    pub fn index_of(&self, x: &WreathElement) -> usize {
        let t = self.base.order();
        let tuple = x.g.iter().fold(0usize, |acc, &g| acc * t + g);
        let tuples = t.pow(self.n as u32);
        perm_rank(&x.perm) * tuples + tuple
    }

    pub fn element_at(&self, mut idx: usize) -> WreathElement {
        let t = self.base.order();
        let tuples = t.pow(self.n as u32);
        let perm = perm_unrank(idx / tuples, self.n);
        idx %= tuples;
        let mut g = vec![0; self.n];
        for slot in g.iter_mut().rev() {
            *slot = idx % t;
            idx /= t;
        }
        WreathElement { g, perm }
    }

    /// All elements in index order.
    pub fn elements(&self) -> Result<Vec<WreathElement>> {
        self.guard()?;
        let size = self.order() as usize;
        Ok((0..size).map(|k| self.element_at(k)).collect())
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> WreathElement {
        let mut perm: Vec<usize> = (0..self.n).collect();
        for i in (1..self.n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let g = (0..self.n)
            .map(|_| rng.gen_range(0..self.base.order()))
            .collect();
        WreathElement { g, perm }
    }

    /// Cycles of `pi`, each listed `i_1, pi(i_1), ...` from its smallest point.
    pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; perm.len()];
        let mut out = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = perm[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle product `g_{i_k} ... g_{i_1}` of a cycle `(i_1, ..., i_k)`.
    pub fn cycle_product(&self, x: &WreathElement, cycle: &[usize]) -> usize {
        cycle.iter().fold(0, |acc, &i| self.base.mul(x.g[i], acc))
    }

    pub fn type_of(&self, x: &WreathElement) -> WreathType {
        let mut parts: Vec<(usize, usize)> = Self::cycles(&x.perm)
            .iter()
            .map(|c| (c.len(), self.base.class_of(self.cycle_product(x, c))))
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        WreathType { parts }
    }

    /// Length and cycle-product class of the cycle through `n`.
    pub fn cycle_through_last(&self, x: &WreathElement) -> (usize, usize) {
        let cycles = Self::cycles(&x.perm);
        let c = cycles
            .iter()
            .find(|c| c.contains(&(self.n - 1)))
            .expect("n lies on a cycle");
        (c.len(), self.base.class_of(self.cycle_product(x, c)))
    }
}

pub fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &pi) in p.iter().enumerate() {
        inv[pi] = i;
    }
    inv
}

fn perm_rank(p: &[usize]) -> usize {
    let n = p.len();
    (0..n)
        .map(|i| {
            let smaller = (i + 1..n).filter(|&j| p[j] < p[i]).count();
            smaller * factorial(n - 1 - i) as usize
        })
        .sum()
}

fn perm_unrank(mut r: usize, n: usize) -> Vec<usize> {
    let mut avail: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i) as usize;
        out.push(avail.remove(r / f));
        r %= f;
    }
    out
}

/// Multiset of `(cycle length, cycle-product class)`, sorted decreasingly.
/// Classes are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathType {
    pub parts: Vec<(usize, usize)>,
}

impl WreathType {
    pub fn new(mut parts: Vec<(usize, usize)>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        WreathType { parts }
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(|p| p.0).sum()
    }

    /// `{(i, j)}` plus `n - i` trivial one-cycles.
    pub fn single_cycle(n: usize, i: usize, j: usize) -> Self {
        let mut parts = vec![(i, j)];
        parts.extend(std::iter::repeat_n((1, 0), n - i));
        Self::new(parts)
    }

    /// Number of elements of this type in `G_n`.
    pub fn class_size(&self, g: &GroupTable) -> u128 {
        // |G_n| / centralizer order; centralizer of a part (k, j) repeated m
        // times contributes m! (k |G| / |C_j|)^m
        let n = self.n();
        let mut total = factorial(n) * (g.order() as u128).pow(n as u32);
        let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_default() += 1;
        }
        for (&(k, j), &m) in &counts {
            let per = k as u128 * g.order() as u128 / g.classes()[j].len() as u128;
            total /= factorial(m as usize) * per.pow(m);
        }
        total
    }

    pub fn to_json(&self) -> Value {
        self.parts
            .iter()
            .map(|&(k, j)| json!([k, j + 1]))
            .collect::<Vec<_>>()
            .into()
    }
}

impl fmt::Display for WreathType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(k, j)| format!("({k},{})", j + 1))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All types of `G_n`, i.e. multisets of (length, class) with lengths
/// summing to `n`.
pub fn enumerate_types(n: usize, t: usize) -> Vec<WreathType> {
    fn rec(
        rest: usize,
        max: (usize, usize),
        cur: &mut Vec<(usize, usize)>,
        t: usize,
        out: &mut Vec<WreathType>,
    ) {
        if rest == 0 {
            out.push(WreathType { parts: cur.clone() });
            return;
        }
        for k in (1..=rest.min(max.0)).rev() {
            for j in (0..t).rev() {
                if (k, j) > max {
                    continue;
                }
                cur.push((k, j));
                rec(rest - k, (k, j), cur, t, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, (n, t.saturating_sub(1)), &mut Vec::new(), t, &mut out);
    out
}

/// The triples `(rho, lambda, j)` with `(lambda, j)` a part of `rho`.
pub fn enumerate_pprime(n: usize, t: usize) -> Vec<(WreathType, usize, usize)> {
    let mut out = Vec::new();
    for rho in enumerate_types(n, t) {
        let mut parts = rho.parts.clone();
        parts.dedup();
        for (k, j) in parts {
            out.push((rho.clone(), k, j));
        }
    }
    out
}

/// Sparse element of `Q[G_n]`; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<WreathElement, Q>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_element(x: WreathElement) -> Self {
        let mut a = Self::zero();
        a.add_term(x, Q::one());
        a
    }

    pub fn add_term(&mut self, x: WreathElement, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(x).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WreathElement, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coef(&self, x: &WreathElement) -> Q {
        self.terms.get(x).copied().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(x, c)| (x.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self, w: &WreathGroup) -> Self {
        let left: Vec<(&WreathElement, &Q)> = self.terms.iter().collect();
        let partials = par_map(&left, |&(x, a)| {
            other
                .terms
                .iter()
                .map(|(y, b)| (w.mul(x, y), a * b))
                .collect::<Vec<_>>()
        });
        let mut acc: BTreeMap<WreathElement, Q> = BTreeMap::new();
        for (x, c) in partials.into_iter().flatten() {
            *acc.entry(x).or_insert_with(Q::zero) += c;
        }
        acc.retain(|_, c| !c.is_zero());
        AlgebraElement { terms: acc }
    }

    pub fn commutator(&self, other: &Self, w: &WreathGroup) -> Self {
        self.mul(other, w).sub(&other.mul(self, w))
    }

    /// Some term where `self` and `other` differ: `(element, lhs, rhs)`.
    pub fn first_difference(&self, other: &Self) -> Option<(WreathElement, Q, Q)> {
        let diff = self.sub(other);
        diff.terms
            .iter()
            .next()
            .map(|(x, _)| (x.clone(), self.coef(x), other.coef(x)))
    }

    pub fn to_sparse(&self, w: &WreathGroup) -> SparseVec {
        self.terms
            .iter()
            .map(|(x, c)| (w.index_of(x), *c))
            .collect()
    }

    pub fn from_sparse(v: &SparseVec, w: &WreathGroup) -> Self {
        AlgebraElement {
            terms: v.iter().map(|(&k, c)| (w.element_at(k), *c)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        self.terms
            .iter()
            .map(|(x, c)| {
                let mut v = x.to_json();
                v["coef"] = json!(c.to_string());
                v
            })
            .collect::<Vec<_>>()
            .into()
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Parse("algebra element must be an array".into()))?;
        let mut out = Self::zero();
        for item in items {
            let x = WreathElement::from_json(item)?;
            let c = item
                .get("coef")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("term without coef".into()))?;
            out.add_term(x, parse_q(c)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(x, c)| format!("{c}*{x:?}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `X_i = sum_{k<i} sum_g (g^-1)^{(k)} g^{(i)} (k, i)`.
pub fn yjm(w: &WreathGroup, i: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for k in 1..i {
        for g in 0..w.base.order() {
            let mut x = w.transposition(k, i);
            x.g[k - 1] = w.base.inv(g);
            x.g[i - 1] = g;
            out.add_term(x, Q::one());
        }
    }
    out
}

/// `b_i = sum_g g^{(i)} (g^-1)^{(i+1)}`.
pub fn b_element(w: &WreathGroup, i: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for g in 0..w.base.order() {
        let mut x = w.identity();
        x.g[i - 1] = g;
        x.g[i] = w.base.inv(g);
        out.add_term(x, Q::one());
    }
    out
}

/// `c_{(rho, lambda, j)}`: the sum of the elements of type `rho` whose cycle
/// through `n` has length `lambda` and cycle product in class `j`.
pub fn class_sum(
    w: &WreathGroup,
    rho: &WreathType,
    lambda: usize,
    j: usize,
) -> Result<AlgebraElement> {
    if rho.n() != w.n || !rho.parts.contains(&(lambda, j)) {
        return Err(Error::InvalidArgument(format!(
            "({rho}, {lambda}, {}) is not a valid triple for n = {}",
            j + 1,
            w.n
        )));
    }
    let elements = w.elements()?;
    let mut out = AlgebraElement::zero();
    for x in elements {
        if w.cycle_through_last(&x) == (lambda, j) && &w.type_of(&x) == rho {
            out.add_term(x, Q::one());
        }
    }
    Ok(out)
}

/// `Y_{i,j}`: nontrivial `i`-cycles of type `j` not moving `n`.
pub fn y_element(w: &WreathGroup, i: usize, j: usize) -> Result<AlgebraElement> {
    if (i, j) == (1, 0) || i >= w.n {
        return Ok(AlgebraElement::zero());
    }
    class_sum(w, &WreathType::single_cycle(w.n, i, j), 1, 0)
}

/// `Y'_{i,j}`: nontrivial `i`-cycles of type `j` through `n`.
pub fn y_prime_element(w: &WreathGroup, i: usize, j: usize) -> Result<AlgebraElement> {
    if (i, j) == (1, 0) {
        return Ok(AlgebraElement::zero());
    }
    class_sum(w, &WreathType::single_cycle(w.n, i, j), i, j)
}

/// Sums of `G^n` over products of conjugacy classes: a basis of the center
/// of `C[G^n]`.
pub fn base_center_basis(w: &WreathGroup) -> Vec<AlgebraElement> {
    let t = w.base.num_classes();
    let combos = t.pow(w.n as u32);
    (0..combos)
        .map(|mut code| {
            let mut classes = vec![0; w.n];
            for slot in classes.iter_mut().rev() {
                *slot = code % t;
                code /= t;
            }
            let mut acc = vec![w.identity()];
            for (l, &j) in classes.iter().enumerate() {
                acc = acc
                    .into_iter()
                    .flat_map(|x| {
                        w.base.classes()[j].iter().map(move |&g| {
                            let mut y = x.clone();
                            y.g[l] = g;
                            y
                        })
                    })
                    .collect();
            }
            let mut out = AlgebraElement::zero();
            for x in acc {
                out.add_term(x, Q::one());
            }
            out
        })
        .collect()
}

fn check_family(
    report: &mut Report,
    name: &str,
    cases: Vec<(String, AlgebraElement, AlgebraElement)>,
) {
    let count = cases.len();
    let failure = cases.iter().find_map(|(label, lhs, rhs)| {
        lhs.first_difference(rhs)
            .map(|(x, a, b)| format!("{label}: coefficient of {x:?} is {a} vs {b}"))
    });
    report.push(match failure {
        None => Check::pass(name)
            .with_residual(0.0)
            .with_detail(format!("{count} instances")),
        Some(d) => Check::fail(name, d),
    });
}

/// Relations (a)-(f) between YJM elements, Coxeter generators and base-group
/// factors, together with `X_i s_i = s_i X_{i+1} - b_i` and
/// `h^{(l)} b_i = b_i h^{(s_i(l))}`. Everything is exact.
pub fn verify_relations(n: usize, g: &GroupTable) -> Result<Report> {
    let w = WreathGroup::new(g, n);
    w.guard()?;
    let mut report = Report::new(format!("relations {} n={n}", g.name()));
    let xs: Vec<AlgebraElement> = (1..=n).map(|i| yjm(&w, i)).collect();
    let s: Vec<AlgebraElement> = (1..n)
        .map(|i| AlgebraElement::from_element(w.coxeter(i)))
        .collect();
    let base = |l: usize, h: usize| AlgebraElement::from_element(w.base_element(l, h));
    let zero = AlgebraElement::zero;
    let order = g.order();

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let cases = par_map(&pairs, |&(i, j)| {
        (
            format!("[X_{}, X_{}]", i + 1, j + 1),
            xs[i].commutator(&xs[j], &w),
            zero(),
        )
    });
    check_family(&mut report, "(a) YJM elements commute", cases);

    let triples: Vec<(usize, usize, usize)> = (1..=n)
        .flat_map(|i| (1..=n).flat_map(move |l| (0..order).map(move |h| (i, l, h))))
        .collect();
    let cases = par_map(&triples, |&(i, l, h)| {
        (
            format!("[X_{i}, g{h}^({l})]"),
            xs[i - 1].commutator(&base(l, h), &w),
            zero(),
        )
    });
    check_family(&mut report, "(b) YJM elements commute with G^n", cases);

    let pairs: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| (0..order).map(move |h| (i, h)))
        .collect();
    let cases = par_map(&pairs, |&(i, h)| {
        let lhs = s[i - 1].mul(&base(i, h), &w).mul(&s[i - 1], &w);
        (format!("s_{i} g{h}^({i}) s_{i}"), lhs, base(i + 1, h))
    });
    check_family(&mut report, "(c) s_i g^(i) s_i = g^(i+1)", cases);

    let triples: Vec<(usize, usize, usize)> = (1..n)
        .flat_map(|i| {
            (1..=n)
                .filter(move |&l| l != i && l != i + 1)
                .flat_map(move |l| (0..order).map(move |h| (i, l, h)))
        })
        .collect();
    let cases = par_map(&triples, |&(i, l, h)| {
        (
            format!("[s_{i}, g{h}^({l})]"),
            s[i - 1].commutator(&base(l, h), &w),
            zero(),
        )
    });
    check_family(
        &mut report,
        "(d) s_i commutes with g^(l), l != i, i+1",
        cases,
    );

    let idx: Vec<usize> = (1..n).collect();
    let cases = par_map(&idx, |&i| {
        let mut lhs = s[i - 1].mul(&xs[i - 1], &w).mul(&s[i - 1], &w);
        for h in 0..order {
            let term = base(i + 1, h)
                .mul(&s[i - 1], &w)
                .mul(&base(i + 1, g.inv(h)), &w);
            lhs = lhs.add(&term);
        }
        (format!("i = {i}"), lhs, xs[i].clone())
    });
    check_family(
        &mut report,
        "(e) s_i X_i s_i + sum_g g^(i+1) s_i (g^-1)^(i+1) = X_(i+1)",
        cases,
    );

    let pairs: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| {
            (1..=n)
                .filter(move |&l| l != i && l != i + 1)
                .map(move |l| (i, l))
        })
        .collect();
    let cases = par_map(&pairs, |&(i, l)| {
        (
            format!("[s_{i}, X_{l}]"),
            s[i - 1].commutator(&xs[l - 1], &w),
            zero(),
        )
    });
    check_family(&mut report, "(f) s_i commutes with X_l, l != i, i+1", cases);

    let cases = par_map(&idx, |&i| {
        let lhs = xs[i - 1].mul(&s[i - 1], &w);
        let rhs = s[i - 1].mul(&xs[i], &w).sub(&b_element(&w, i));
        (format!("i = {i}"), lhs, rhs)
    });
    check_family(&mut report, "X_i s_i = s_i X_(i+1) - b_i", cases);

    let triples: Vec<(usize, usize, usize)> = (1..n)
        .flat_map(|i| (1..=n).flat_map(move |l| (0..order).map(move |h| (i, l, h))))
        .collect();
    let cases = par_map(&triples, |&(i, l, h)| {
        let b = b_element(&w, i);
        let swapped = if l == i {
            i + 1
        } else if l == i + 1 {
            i
        } else {
            l
        };
        (
            format!("h = {h}, l = {l}, i = {i}"),
            base(l, h).mul(&b, &w),
            b.mul(&base(swapped, h), &w),
        )
    });
    check_family(&mut report, "h^(l) b_i = b_i h^(s_i(l))", cases);

    Ok(report)
}

/// Generators of `H_{n-1,n} = G^n S_{n-1}`.
fn h_generators(w: &WreathGroup) -> Vec<WreathElement> {
    let mut gens = Vec::new();
    for l in 1..=w.n {
        for h in 1..w.base.order() {
            gens.push(w.base_element(l, h));
        }
    }
    for i in 1..w.n.saturating_sub(1) {
        gens.push(w.coxeter(i));
    }
    gens
}

/// Result of [`verify_commutant`].
#[derive(Clone, Debug)]
pub struct CommutantResult {
    pub dimension: usize,
    pub num_class_sums: usize,
    pub report: Report,
}

/// Computes the centralizer of `C[H_{n-1,n}]` in `C[G_n]` by solving
/// `h x = x h` over the generators `h`, and compares it with the span of the
/// class sums `c_{(rho, lambda, j)}`.
pub fn verify_commutant(n: usize, g: &GroupTable) -> Result<CommutantResult> {
    let w = WreathGroup::new(g, n);
    w.guard()?;
    let size = w.order() as usize;
    let mut report = Report::new(format!("commutant {} n={n}", g.name()));

    // x commutes with h iff x_{h y h^-1} = x_y for all y
    let gens = h_generators(&w);
    let rows: Vec<SparseVec> = gens
        .iter()
        .flat_map(|h| {
            let hinv = w.inv(h);
            (0..size).filter_map(move |k| {
                let y = w.element_at(k);
                let conj = w.index_of(&w.mul(&w.mul(h, &y), &hinv));
                (conj != k).then(|| {
                    let mut r = SparseVec::new();
                    r.insert(k, -Q::one());
                    r.insert(conj, Q::one());
                    r
                })
            })
        })
        .collect();
    let solution = nullspace(&rows, size);
    let dimension = solution.len();
    let mut solution_space = EchelonBasis::new();
    for v in &solution {
        solution_space.insert(v);
    }

    let triples = enumerate_pprime(n, g.num_classes());
    let sums: Vec<AlgebraElement> = triples
        .iter()
        .map(|(rho, lambda, j)| class_sum(&w, rho, *lambda, *j))
        .collect::<Result<_>>()?;
    let vecs: Vec<SparseVec> = sums.iter().map(|c| c.to_sparse(&w)).collect();

    let outside = vecs.iter().position(|v| !solution_space.contains(v));
    report.push(match outside {
        None => Check::pass("class sums commute with H_{n-1,n}"),
        Some(k) => {
            let (rho, l, j) = &triples[k];
            Check::fail(
                "class sums commute with H_{n-1,n}",
                format!("c({rho}, {l}, {}) does not", j + 1),
            )
        }
    });

    let mut span = EchelonBasis::new();
    let dependent = vecs.iter().position(|v| !span.insert(v));
    report.push(match dependent {
        None => Check::pass("class sums are linearly independent"),
        Some(k) => Check::fail(
            "class sums are linearly independent",
            format!("triple {} is dependent", k + 1),
        ),
    });
    report.push(Check::from_bool(
        "dimension equals the number of triples",
        dimension == triples.len() && span.rank() == dimension,
        || {
            format!(
                "solution space {dimension}, triples {}, span {}",
                triples.len(),
                span.rank()
            )
        },
    ));

    let pairs: Vec<(usize, usize)> = (0..sums.len())
        .flat_map(|a| (a + 1..sums.len()).map(move |b| (a, b)))
        .collect();
    let noncommuting = par_map(&pairs, |&(a, b)| {
        (!sums[a].commutator(&sums[b], &w).is_zero()).then_some((a, b))
    });
    let first = noncommuting.into_iter().flatten().next();
    report.push(match first {
        None => {
            Check::pass("commutant is commutative").with_detail(format!("{} pairs", pairs.len()))
        }
        Some((a, b)) => Check::fail(
            "commutant is commutative",
            format!(
                "c{:?} and c{:?} do not commute",
                (&triples[a].0.to_string(), triples[a].1),
                (&triples[b].0.to_string(), triples[b].1)
            ),
        ),
    });

    Ok(CommutantResult {
        dimension,
        num_class_sums: triples.len(),
        report,
    })
}

/// Dimension of the algebra generated by the center of `C[G^n]` and
/// `X_1, ..., X_n`, by closing the span of `1` under multiplication.
pub fn gz_dimension(n: usize, g: &GroupTable) -> Result<usize> {
    let w = WreathGroup::new(g, n);
    w.guard()?;
    let mut gens = base_center_basis(&w);
    gens.extend((2..=n).map(|i| yjm(&w, i)));

    let bound = w.order() as usize;
    let mut basis = EchelonBasis::new();
    let one = AlgebraElement::from_element(w.identity());
    basis.insert(&one.to_sparse(&w));
    let mut frontier = vec![one];
    while !frontier.is_empty() {
        let products: Vec<AlgebraElement> = frontier
            .iter()
            .flat_map(|v| gens.iter().map(move |h| (v, h)))
            .collect::<Vec<_>>()
            .iter()
            .map(|(v, h)| v.mul(h, &w))
            .collect();
        let mut next = Vec::new();
        for p in products {
            if basis.insert(&p.to_sparse(&w)) {
                next.push(p);
            }
        }
        if basis.rank() > bound {
            return Err(Error::InvalidArgument("span closure exceeded |G_n|".into()));
        }
        frontier = next;
    }
    Ok(basis.rank())
}

pub fn gz_dimension_report(n: usize, g: &GroupTable) -> Result<Report> {
    let dim = gz_dimension(n, g)?;
    let expect = total_gtableaux(n, g.num_classes());
    let mut report = Report::new(format!("gz-dimension {} n={n}", g.name()));
    report.push(
        Check::from_bool(
            "dimension equals the number of standard G-tableaux",
            dim as u128 == expect,
            || format!("generated algebra has dimension {dim}, expected {expect}"),
        )
        .with_detail(format!("dimension {dim}")),
    );
    Ok(report)
}

/// Checks that `X_i` commutes with `C[H_{i-1,n}]`.
pub fn verify_yjm_centralizes(n: usize, g: &GroupTable) -> Result<Report> {
    let w = WreathGroup::new(g, n);
    w.guard()?;
    let mut report = Report::new(format!("yjm centralizer {} n={n}", g.name()));
    for i in 1..=n {
        let x = yjm(&w, i);
        let mut gens: Vec<WreathElement> = (1..=n)
            .flat_map(|l| (0..g.order()).map(move |h| (l, h)))
            .map(|(l, h)| w.base_element(l, h))
            .collect();
        gens.extend((1..i.saturating_sub(1)).map(|k| w.coxeter(k)));
        let bad = gens.iter().find(|h| {
            !x.commutator(&AlgebraElement::from_element((*h).clone()), &w)
                .is_zero()
        });
        report.push(match bad {
            None => Check::pass(format!("X_{i} centralizes H_({},n)", i.max(1) - 1)),
            Some(h) => Check::fail(
                format!("X_{i} centralizes H_({},n)", i.max(1) - 1),
                format!("fails for {h:?}"),
            ),
        });
    }
    Ok(report)
}

/// `h x h^-1` for all `h`: the conjugacy class of `x` by brute force.
pub fn conjugacy_class(
    w: &WreathGroup,
    x: &WreathElement,
    elements: &[WreathElement],
) -> Vec<WreathElement> {
    let mut out: Vec<WreathElement> = elements
        .iter()
        .map(|h| w.mul(&w.mul(h, x), &w.inv(h)))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn groups() -> Vec<GroupTable> {
        vec![
            GroupTable::trivial(),
            GroupTable::cyclic(2).unwrap(),
            GroupTable::cyclic(3).unwrap(),
            GroupTable::sym3(),
        ]
    }

    #[test]
    fn group_law() {
        let c3 = GroupTable::cyclic(3).unwrap();
        let w = WreathGroup::new(&c3, 2);
        let x = w.base_element(1, 1);
        assert_eq!(w.mul(&x, &w.identity()), x);
        assert_eq!(
            w.mul(&w.base_element(1, 1), &w.base_element(1, 2)),
            w.base_element(1, 0)
        );
        let s1 = w.coxeter(1);
        assert_eq!(w.mul(&w.mul(&s1, &x), &s1), w.base_element(2, 1));

        let s3 = GroupTable::sym3();
        let w = WreathGroup::new(&s3, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (x, y, z) = (
                w.random_element(&mut rng),
                w.random_element(&mut rng),
                w.random_element(&mut rng),
            );
            assert_eq!(w.inv(&w.mul(&x, &y)), w.mul(&w.inv(&y), &w.inv(&x)));
            assert_eq!(w.mul(&w.mul(&x, &y), &z), w.mul(&x, &w.mul(&y, &z)));
            assert_eq!(w.mul(&x, &w.inv(&x)), w.identity());
            assert_eq!(w.element_at(w.index_of(&x)), x);
        }
    }

    #[test]
    fn indexing_is_a_bijection() {
        let c2 = GroupTable::cyclic(2).unwrap();
        let w = WreathGroup::new(&c2, 3);
        let els = w.elements().unwrap();
        assert_eq!(els.len(), 48);
        for (k, x) in els.iter().enumerate() {
            assert_eq!(w.index_of(x), k);
            w.check(x).unwrap();
        }
    }

    #[test]
    fn types() {
        let c2 = GroupTable::cyclic(2).unwrap();
        let w = WreathGroup::new(&c2, 3);
        assert_eq!(w.type_of(&w.identity()).parts, vec![(1, 0); 3]);
        let mut cyc = w.identity();
        cyc.perm = vec![1, 2, 0];
        assert_eq!(w.type_of(&cyc).parts, vec![(3, 0)]);
        assert_eq!(enumerate_types(2, 2).len(), 5);
        assert_eq!(enumerate_pprime(2, 2).len(), 6);
    }

    #[test]
    fn types_are_conjugacy_classes() {
        for g in groups() {
            for n in 1..=3 {
                let w = WreathGroup::new(&g, n);
                if w.order() > 1000 {
                    continue;
                }
                let els = w.elements().unwrap();
                let mut classes: BTreeMap<WreathType, Vec<WreathElement>> = BTreeMap::new();
                for x in &els {
                    classes.entry(w.type_of(x)).or_default().push(x.clone());
                }
                for (ty, members) in classes.iter_mut() {
                    members.sort();
                    assert_eq!(
                        conjugacy_class(&w, &members[0], &els),
                        *members,
                        "{} n={n} {ty}",
                        g.name()
                    );
                    assert_eq!(ty.class_size(&g), members.len() as u128);
                }
                assert_eq!(classes.len(), enumerate_types(n, g.num_classes()).len());
            }
        }
    }

    #[test]
    fn yjm_examples() {
        let triv = GroupTable::trivial();
        let w = WreathGroup::new(&triv, 3);
        assert!(yjm(&w, 1).is_zero());
        assert_eq!(
            yjm(&w, 2),
            AlgebraElement::from_element(w.transposition(1, 2))
        );
        let c2 = GroupTable::cyclic(2).unwrap();
        let w = WreathGroup::new(&c2, 2);
        let x2 = yjm(&w, 2);
        assert_eq!(x2.len(), 2);
        assert!(x2.terms().all(|(_, c)| c.is_one()));
        assert_eq!(
            b_element(&WreathGroup::new(&triv, 2), 1),
            AlgebraElement::from_element(WreathGroup::new(&triv, 2).identity())
        );
        assert_eq!(b_element(&w, 1).len(), 2);
    }

    #[test]
    fn class_sum_examples() {
        let triv = GroupTable::trivial();
        let w = WreathGroup::new(&triv, 2);
        let e = class_sum(&w, &WreathType::new(vec![(1, 0), (1, 0)]), 1, 0).unwrap();
        assert_eq!(e, AlgebraElement::from_element(w.identity()));
        let t = class_sum(&w, &WreathType::new(vec![(2, 0)]), 2, 0).unwrap();
        assert_eq!(t, yjm(&w, 2));
        assert!(class_sum(&w, &WreathType::new(vec![(2, 0)]), 1, 0).is_err());
        assert_eq!(y_prime_element(&w, 2, 0).unwrap(), yjm(&w, 2));
    }

    #[test]
    fn algebra_json_round_trip() {
        let c3 = GroupTable::cyclic(3).unwrap();
        let w = WreathGroup::new(&c3, 3);
        let x = yjm(&w, 3).scale(&Q::new(-2, 3));
        assert_eq!(AlgebraElement::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn relations_small() {
        for (g, n) in [
            (GroupTable::trivial(), 3),
            (GroupTable::cyclic(2).unwrap(), 2),
        ] {
            let r = verify_relations(n, &g).unwrap();
            assert!(r.passed, "{:?}", r.first_failure());
        }
    }

    #[test]
    fn commutant_examples() {
        let triv = GroupTable::trivial();
        let r = verify_commutant(3, &triv).unwrap();
        assert_eq!(r.dimension, 4);
        assert!(r.report.passed);
        assert_eq!(verify_commutant(2, &triv).unwrap().dimension, 2);
        let c2 = GroupTable::cyclic(2).unwrap();
        let r = verify_commutant(2, &c2).unwrap();
        assert_eq!(r.dimension, 6);
        assert!(r.report.passed, "{:?}", r.report.first_failure());
    }

    #[test]
    fn gz_dimension_examples() {
        let triv = GroupTable::trivial();
        assert_eq!(gz_dimension(2, &triv).unwrap(), 2);
        assert_eq!(gz_dimension(3, &triv).unwrap(), 4);
        assert_eq!(gz_dimension(2, &GroupTable::cyclic(2).unwrap()).unwrap(), 6);
    }

    #[test]
    fn guard_refuses_large_groups() {
        let s3 = GroupTable::sym3();
        let w = WreathGroup::new(&s3, 4);
        assert!(matches!(w.guard(), Err(Error::TooLarge { .. })));
    }
}
