//! Johnson schemes: symmetric Jordan bases of the Boolean lattice and the
//! generalized scheme of `G_n` acting on words over `{L_0} + X`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::combinatorics::{
    binomial, enumerate_gdiagrams, row_major_tableau, GTableau, GYoungDiagram, Partition,
};
use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::group::GroupTable;
use crate::gz_rep::{char_table, dimension, CharTable};
use crate::report::{Check, Report};
use crate::scalar::{q_to_string, qi, Cyc, Scalar, ScalarKind, Q};
use crate::wreath::{max_order, yjm, WreathElement, WreathGroup};

/// A subset of `{1..n}` as a bit mask, element `e` at bit `e - 1`.
pub type Subset = u64;

fn subset_elements(s: Subset) -> Vec<usize> {
    (0..64).filter(|b| s >> b & 1 == 1).map(|b| b + 1).collect()
}

/// A vector of `V(B(n))` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankedVector {
    terms: BTreeMap<Subset, Q>,
}

impl RankedVector {
    pub fn zero() -> Self {
        RankedVector::default()
    }

    /// The basis vector of a subset given by 1-based elements.
    pub fn subset(elements: &[usize]) -> Self {
        let mut v = RankedVector::zero();
        v.add_term(elements.iter().fold(0, |m, &e| m | 1 << (e - 1)), Q::one());
        v
    }

    pub fn from_terms(terms: &[(&[usize], i128)]) -> Self {
        let mut v = RankedVector::zero();
        for (els, c) in terms {
            v = v.add(&RankedVector::subset(els).scale(&qi(*c)));
        }
        v
    }

    pub fn add_term(&mut self, s: Subset, c: Q) {
        let e = self.terms.entry(s).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &Q)> {
        self.terms.iter().map(|(&s, c)| (s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &RankedVector) -> RankedVector {
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s, *c);
        }
        out
    }

    pub fn sub(&self, other: &RankedVector) -> RankedVector {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> RankedVector {
        if k.is_zero() {
            return RankedVector::zero();
        }
        RankedVector {
            terms: self.terms.iter().map(|(&s, c)| (s, c * k)).collect(),
        }
    }

    /// The common subset size, or `None` for zero or mixed vectors.
    pub fn rank(&self) -> Option<usize> {
        let mut sizes = self.terms.keys().map(|s| s.count_ones() as usize);
        let first = sizes.next()?;
        sizes.all(|r| r == first).then_some(first)
    }

    /// `X -> X + {m}` on every term.
    pub fn bar(&self, m: usize) -> RankedVector {
        RankedVector {
            terms: self
                .terms
                .iter()
                .map(|(&s, c)| (s | 1 << (m - 1), *c))
                .collect(),
        }
    }

    /// Action of the transposition `(k, l)` of `S_n`.
    pub fn transpose(&self, k: usize, l: usize) -> RankedVector {
        let (bk, bl) = (1u64 << (k - 1), 1u64 << (l - 1));
        let mut out = RankedVector::zero();
        for (s, c) in self.terms() {
            let swapped = if (s & bk != 0) == (s & bl != 0) {
                s
            } else {
                s ^ bk ^ bl
            };
            out.add_term(swapped, *c);
        }
        out
    }

    /// Action of a permutation of `{1..n}` (0-based one-line notation).
    pub fn permute(&self, perm: &[usize]) -> RankedVector {
        let mut out = RankedVector::zero();
        for (s, c) in self.terms() {
            let image = subset_elements(s)
                .iter()
                .fold(0, |m, &e| m | 1 << perm[e - 1]);
            out.add_term(image, *c);
        }
        out
    }

    pub fn to_sparse(&self) -> crate::linalg::SparseVec {
        self.terms.iter().map(|(&s, c)| (s as usize, *c)).collect()
    }

    pub fn to_json(&self) -> Value {
        self.sorted_terms()
            .into_iter()
            .map(|(els, c)| json!({ "subset": els, "coef": q_to_string(&c) }))
            .collect::<Vec<_>>()
            .into()
    }

    fn sorted_terms(&self) -> Vec<(Vec<usize>, Q)> {
        let mut out: Vec<(Vec<usize>, Q)> = self
            .terms()
            .map(|(s, c)| (subset_elements(s), *c))
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for RankedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (els, c)) in self.sorted_terms().into_iter().enumerate() {
            let set = els
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",");
            let neg = c < Q::zero();
            let mag = if neg { -c } else { c };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{}", q_to_string(&mag))?;
            }
            write!(f, "{{{set}}}")?;
        }
        Ok(())
    }
}

/// `U_n(X) = sum of the covers of X` in `B(n)`.
pub fn up_operator(v: &RankedVector, n: usize) -> RankedVector {
    let mut out = RankedVector::zero();
    for (s, c) in v.terms() {
        for b in (0..n).filter(|b| s >> b & 1 == 0) {
            out.add_term(s | 1 << b, *c);
        }
    }
    out
}

/// `Y_j = sum_{k<j} (k, j)` applied to `v`.
pub fn yjm_sn_apply(j: usize, v: &RankedVector) -> RankedVector {
    (1..j).fold(RankedVector::zero(), |acc, k| acc.add(&v.transpose(k, j)))
}

/// A symmetric Jordan chain `v_k, ..., v_{n-k}` with its tableau label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SJChain {
    pub start_rank: usize,
    pub tableau: GTableau,
    pub vectors: Vec<RankedVector>,
}

impl SJChain {
    pub fn end_rank(&self) -> usize {
        self.start_rank + self.vectors.len() - 1
    }

    /// The vector of rank `r`, if the chain reaches it.
    pub fn at_rank(&self, r: usize) -> Option<&RankedVector> {
        r.checked_sub(self.start_rank)
            .and_then(|k| self.vectors.get(k))
    }

    pub fn to_json(&self) -> Value {
        let grid = self.tableau.grid().expect("valid tableau");
        json!({
            "start_rank": self.start_rank,
            "tableau": grid[0],
            "vectors": self.vectors.iter().map(RankedVector::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SJChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vectors.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn two_row(a: usize, b: usize) -> GYoungDiagram {
    let parts = [a, b].into_iter().filter(|&p| p > 0).collect();
    GYoungDiagram::new(vec![Partition::new(parts).expect("two-row shape")])
}

/// `T +_row (n+1)`.
fn extend_tableau(t: &GTableau, row: usize) -> GTableau {
    let parts = t.shape().shape(0).parts();
    let a = parts.first().copied().unwrap_or(0);
    let b = parts.get(1).copied().unwrap_or(0);
    let (shape, col) = if row == 0 {
        (two_row(a + 1, b), a)
    } else {
        (two_row(a, b + 1), b)
    };
    let mut pos = t.positions().to_vec();
    pos.push((0, row, col));
    GTableau::new(shape, pos).expect("standard extension")
}

/// The symmetric Jordan basis of `V(B(n))` built recursively from that of
/// `V(B(n-1))`.
pub fn build_sjb(n: usize) -> Vec<SJChain> {
    let mut chains = vec![SJChain {
        start_rank: 0,
        tableau: GTableau::new(GYoungDiagram::empty(1), Vec::new()).expect("empty tableau"),
        vectors: vec![RankedVector::subset(&[])],
    }];
    for m in 0..n {
        chains = chains.iter().flat_map(|c| extend_chain(c, m)).collect();
    }
    chains
}

/// The one or two chains of `V(B(m+1))` coming from a chain of `V(B(m))`.
fn extend_chain(chain: &SJChain, m: usize) -> Vec<SJChain> {
    let k = chain.start_rank;
    let bar = |v: &RankedVector| v.bar(m + 1);
    if 2 * k == m {
        let x = &chain.vectors[0];
        return vec![SJChain {
            start_rank: k,
            tableau: extend_tableau(&chain.tableau, 0),
            vectors: vec![x.clone(), bar(x)],
        }];
    }
    let zero = RankedVector::zero();
    // x_l for k-1 <= l <= m+1-k, zero outside the chain
    let x = |l: usize| chain.at_rank(l).unwrap_or(&zero);
    let xbar_prev = |l: usize| {
        if l == 0 {
            RankedVector::zero()
        } else {
            bar(x(l - 1))
        }
    };
    let y = (k..=m + 1 - k)
        .map(|l| x(l).add(&xbar_prev(l).scale(&qi((l - k) as i128))))
        .collect();
    let z = (k + 1..=m - k)
        .map(|l| xbar_prev(l).scale(&qi((m - k + 1 - l) as i128)).sub(x(l)))
        .collect();
    vec![
        SJChain {
            start_rank: k,
            tableau: extend_tableau(&chain.tableau, 0),
            vectors: y,
        },
        SJChain {
            start_rank: k + 1,
            tableau: extend_tableau(&chain.tableau, 1),
            vectors: z,
        },
    ]
}

pub fn sjb_to_json(chains: &[SJChain]) -> Value {
    chains
        .iter()
        .map(SJChain::to_json)
        .collect::<Vec<_>>()
        .into()
}

/// Structural checks: chain conditions, basis, label bijection.
pub fn verify_sjb(n: usize, chains: &[SJChain]) -> Report {
    let mut report = Report::new(format!("symmetric Jordan basis n={n}"));
    let bad_chain = chains.iter().position(|c| {
        let ranks_ok = c
            .vectors
            .iter()
            .enumerate()
            .all(|(o, v)| v.rank() == Some(c.start_rank + o));
        let ups_ok = c.vectors.windows(2).all(|w| up_operator(&w[0], n) == w[1]);
        let last_ok = c
            .vectors
            .last()
            .is_some_and(|v| up_operator(v, n).is_zero());
        !(ranks_ok && ups_ok && last_ok && c.start_rank + c.end_rank() == n)
    });
    report.push(Check::from_bool(
        "every chain is a symmetric Jordan chain",
        bad_chain.is_none(),
        || format!("chain {}", bad_chain.unwrap_or(0)),
    ));

    let vectors: Vec<_> = chains
        .iter()
        .flat_map(|c| c.vectors.iter().map(RankedVector::to_sparse))
        .collect();
    let r = crate::linalg::rank(&vectors);
    report.push(Check::from_bool(
        "vectors form a basis of V(B(n))",
        vectors.len() == 1 << n && r == 1 << n,
        || {
            format!(
                "{} vectors of rank {r}, expected {}",
                vectors.len(),
                1u64 << n
            )
        },
    ));

    let mut labels_ok = true;
    for k in 0..=n / 2 {
        let mut labels: Vec<&GTableau> = chains
            .iter()
            .filter(|c| c.start_rank == k)
            .map(|c| &c.tableau)
            .collect();
        let count = labels.len();
        labels.sort();
        labels.dedup();
        let shape_ok = labels.iter().all(|t| *t.shape() == two_row(n - k, k));
        let f = two_row(n - k, k).shape(0).num_standard_tableaux();
        labels_ok &= shape_ok && labels.len() == count && count as u128 == f;
    }
    report.push(Check::from_bool(
        "labels biject tab(n,(n-k,k)) onto chains starting at k",
        labels_ok,
        || "label counts or shapes differ".into(),
    ));
    report
}

/// `Y_j v = c(b_T(j)) v` for every vector of every chain.
pub fn verify_ev(chains: &[SJChain]) -> Report {
    let mut report = Report::new("SJB eigenvalues");
    let mut failure = None;
    let mut count = 0;
    'outer: for (ci, c) in chains.iter().enumerate() {
        let n = c.tableau.n();
        for (vi, v) in c.vectors.iter().enumerate() {
            for j in 1..=n {
                count += 1;
                let expect = v.scale(&qi(c.tableau.content_of(j) as i128));
                if yjm_sn_apply(j, v) != expect {
                    failure = Some(format!(
                        "chain {ci} labeled {}, j = {j}, vector {vi}",
                        c.tableau
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.push(match failure {
        None => Check::pass("Y_j v = c(b_T(j)) v").with_detail(format!("{count} instances")),
        Some(d) => Check::fail("Y_j v = c(b_T(j)) v", d),
    });
    report
}

/// Constituents `(k, dim V^{(n-k,k)})` of `V(B(n)_i)`.
pub fn johnson_decomposition(n: usize, i: usize) -> Vec<(usize, u128)> {
    (0..=i.min(n.saturating_sub(i)))
        .map(|k| (k, two_row_dim(n, k)))
        .collect()
}

fn two_row_dim(n: usize, k: usize) -> u128 {
    binomial(n, k) - if k == 0 { 0 } else { binomial(n, k - 1) }
}

/// `2^n = sum_k (n-2k+1)(C(n,k) - C(n,k-1))`.
pub fn identity_bi(n: usize) -> bool {
    let rhs: u128 = (0..=n / 2)
        .map(|k| (n - 2 * k + 1) as u128 * two_row_dim(n, k))
        .sum();
    rhs == 1u128 << n
}

/// Checks the decomposition of each `V(B(n)_i)` against the SJB.
pub fn verify_johnson(n: usize) -> Report {
    let mut report = Report::new(format!("Johnson scheme n={n}"));
    let chains = build_sjb(n);
    report.extend(verify_sjb(n, &chains));
    report.extend(verify_ev(&chains));
    let ok = (0..=n).all(|i| {
        johnson_decomposition(n, i).iter().all(|&(k, d)| {
            chains
                .iter()
                .filter(|c| c.start_rank == k && c.at_rank(i).is_some())
                .count() as u128
                == d
        }) && johnson_decomposition(n, i)
            .iter()
            .map(|&(_, d)| d)
            .sum::<u128>()
            == binomial(n, i)
    });
    report.push(Check::from_bool(
        "V(B(n)_i) = sum of W(n,k,i) with the expected dimensions",
        ok,
        || "dimension mismatch".into(),
    ));
    report.push(Check::from_bool(
        "2^n = sum (n-2k+1)(C(n,k)-C(n,k-1))",
        identity_bi(n),
        || "identity fails".into(),
    ));
    report
}

/// A permutation action of `G` on a finite set `X = {0..points}`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    name: String,
    points: usize,
    /// `table[g][x] = g.x`
    table: Vec<Vec<usize>>,
    multiplicities: Vec<usize>,
}

impl GroupAction {
    /// Validates the action and requires `V(X)` to be multiplicity free.
    pub fn new(name: impl Into<String>, g: &GroupTable, table: Vec<Vec<usize>>) -> Result<Self> {
        let name = name.into();
        if table.len() != g.order() {
            return Err(Error::InvalidArgument(format!(
                "action {name} has {} rows, |G| = {}",
                table.len(),
                g.order()
            )));
        }
        let points = table[0].len();
        if points == 0 {
            return Err(Error::InvalidArgument(format!(
                "action {name} is on an empty set"
            )));
        }
        for row in &table {
            let mut seen = vec![false; points];
            if row.len() != points
                || row
                    .iter()
                    .any(|&x| x >= points || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::InvalidArgument(format!(
                    "action {name} is not by permutations"
                )));
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if (0..points).any(|x| table[g.mul(a, b)][x] != table[a][table[b][x]]) {
                    return Err(Error::InvalidArgument(format!(
                        "action {name} is not a homomorphism"
                    )));
                }
            }
        }
        let chars = g.character_table();
        let fixed: Vec<f64> = g
            .classes()
            .iter()
            .map(|c| (0..points).filter(|&x| table[c[0]][x] == x).count() as f64)
            .collect();
        let mut multiplicities = Vec::new();
        for (sigma, row) in chars.iter().enumerate() {
            let m: Complex64 = g
                .classes()
                .iter()
                .zip(row)
                .zip(&fixed)
                .map(|((c, chi), &f)| chi.conj() * f * c.len() as f64)
                .sum::<Complex64>()
                / g.order() as f64;
            let r = m.re.round();
            if (m - Complex64::new(r, 0.0)).norm() > 1e-6 {
                return Err(Error::InvalidGroup(format!(
                    "non-integral multiplicity {m} for irrep {}",
                    sigma + 1
                )));
            }
            if r > 1.0 {
                return Err(Error::NotMultiplicityFree(format!(
                    "irrep {} occurs {r} times in the permutation representation of {name}",
                    sigma + 1
                )));
            }
            multiplicities.push(r as usize);
        }
        if multiplicities[0] != 1 {
            return Err(Error::NotMultiplicityFree(format!(
                "{name} is not transitive"
            )));
        }
        Ok(GroupAction {
            name,
            points,
            table,
            multiplicities,
        })
    }

    /// `G` acting trivially on one point.
    pub fn point(g: &GroupTable) -> Self {
        GroupAction::new("point", g, vec![vec![0]; g.order()]).expect("trivial action")
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(g: &GroupTable) -> Result<Self> {
        let table = (0..g.order())
            .map(|a| (0..g.order()).map(|x| g.mul(a, x)).collect())
            .collect();
        GroupAction::new("regular", g, table)
    }

    /// The permutation action a group file declares, if any.
    pub fn natural(g: &GroupTable) -> Result<Self> {
        let table = g.natural_action().ok_or_else(|| {
            Error::InvalidArgument(format!("{} declares no natural action", g.name()))
        })?;
        GroupAction::new("natural", g, table.to_vec())
    }

    /// `point`, `regular` or `natural`.
    pub fn from_spec(spec: &str, g: &GroupTable) -> Result<Self> {
        match spec {
            "point" => Ok(GroupAction::point(g)),
            "regular" => GroupAction::regular(g),
            "natural" => GroupAction::natural(g),
            other => Err(Error::InvalidArgument(format!("unknown action {other:?}"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.table[g][x]
    }

    /// Irreps occurring in `V(X)`, in index order; the trivial one is first.
    pub fn constituents(&self) -> Vec<usize> {
        (0..self.multiplicities.len())
            .filter(|&s| self.multiplicities[s] == 1)
            .collect()
    }
}

/// A diagram in `Y_{2,n}` with its statistics `a >= b` and `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Y2Diagram {
    pub mu: GYoungDiagram,
    pub a: usize,
    pub b: usize,
    pub s: usize,
}

impl Y2Diagram {
    /// Whether `V^mu` occurs in `V(B_X(n)_i)`: `b + s <= i <= a + s`.
    pub fn occurs_at(&self, i: usize) -> bool {
        self.b + self.s <= i && i <= self.a + self.s
    }
}

/// `Y_{2,n}`: at most two rows on the trivial irrep, at most one on the
/// other constituents of `V(X)`, nothing elsewhere.
pub fn enumerate_y2(n: usize, g: &GroupTable, action: &GroupAction) -> Vec<Y2Diagram> {
    let cons = action.constituents();
    enumerate_gdiagrams(n, g.num_classes())
        .into_iter()
        .filter_map(|mu| {
            for (sigma, p) in mu.shapes().iter().enumerate() {
                let limit = if sigma == 0 {
                    2
                } else if cons.contains(&sigma) {
                    1
                } else {
                    0
                };
                if p.num_rows() > limit {
                    return None;
                }
            }
            let first = mu.shape(0).parts();
            let a = first.first().copied().unwrap_or(0);
            let b = first.get(1).copied().unwrap_or(0);
            let s = mu.size() - a - b;
            Some(Y2Diagram { mu, a, b, s })
        })
        .collect()
}

/// Both sides of `(|X|+1)^n = sum_{Y_{2,n}} (1 + a - b) dim V^mu`.
pub fn identity_rti(n: usize, g: &GroupTable, action: &GroupAction) -> (u128, u128) {
    let lhs = (action.points() as u128 + 1).pow(n as u32);
    let rhs = enumerate_y2(n, g, action)
        .iter()
        .map(|y| (1 + y.a - y.b) as u128 * dimension(&y.mu, g))
        .sum();
    (lhs, rhs)
}

/// Words over `{L_0} + X` of length `n`, letter 0 standing for `L_0`.
#[derive(Clone, Debug)]
struct Words<'a> {
    n: usize,
    base: usize,
    action: &'a GroupAction,
}

impl<'a> Words<'a> {
    fn new(n: usize, action: &'a GroupAction) -> Result<Self> {
        let base = action.points() + 1;
        let size = (base as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        let limit = max_order();
        if size > limit {
            return Err(Error::TooLarge {
                n,
                order: size,
                limit,
            });
        }
        Ok(Words { n, base, action })
    }

    fn len(&self) -> usize {
        self.base.pow(self.n as u32)
    }

    fn letters(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.base;
            idx /= self.base;
        }
        out
    }

    fn index(&self, letters: &[usize]) -> usize {
        letters.iter().fold(0, |acc, &a| acc * self.base + a)
    }

    fn support(&self, idx: usize) -> usize {
        self.letters(idx).iter().filter(|&&a| a != 0).count()
    }

    /// `(g, pi) a = b` with `b_i = g_i a_{pi^-1(i)}`.
    fn act(&self, x: &WreathElement, idx: usize) -> usize {
        let a = self.letters(idx);
        let mut b = vec![0; self.n];
        for (src, &letter) in a.iter().enumerate() {
            let dst = x.perm[src];
            b[dst] = if letter == 0 {
                0
            } else {
                1 + self.action.act(x.g[dst], letter - 1)
            };
        }
        self.index(&b)
    }
}

/// Multiplicities of the irreducibles in `V(B_X(n)_i)`, from characters.
#[derive(Clone, Debug)]
pub struct PermutationDecomposition {
    pub i: usize,
    /// `(mu, multiplicity)` for every irreducible of `G_n`.
    pub multiplicities: Vec<(GYoungDiagram, Complex64)>,
    pub exact: bool,
}

fn permutation_decomposition(
    words: &Words,
    table: &CharTable,
    g: &GroupTable,
) -> Vec<PermutationDecomposition> {
    let n = words.n;
    let reps: Vec<WreathElement> = table
        .types
        .iter()
        .map(|t| crate::gz_rep::type_representative(t, g))
        .collect();
    // fixed[i][type]
    let mut fixed = vec![vec![0i128; reps.len()]; n + 1];
    for (c, x) in reps.iter().enumerate() {
        for idx in 0..words.len() {
            if words.act(x, idx) == idx {
                fixed[words.support(idx)][c] += 1;
            }
        }
    }
    fixed
        .into_iter()
        .enumerate()
        .map(|(i, chi)| {
            let multiplicities = match &table.exact {
                Some(rows) => {
                    let chi: Vec<Cyc> = chi.iter().map(|&v| Cyc::rational(qi(v))).collect();
                    rows.iter()
                        .map(|row| table.inner_product_exact(&chi, row).to_c64())
                        .collect::<Vec<_>>()
                }
                None => {
                    let chi: Vec<Complex64> =
                        chi.iter().map(|&v| Complex64::new(v as f64, 0.0)).collect();
                    table
                        .float
                        .iter()
                        .map(|row| table.inner_product_float(&chi, row))
                        .collect()
                }
            };
            PermutationDecomposition {
                i,
                multiplicities: table.diagrams.iter().cloned().zip(multiplicities).collect(),
                exact: table.exact.is_some(),
            }
        })
        .collect()
}

/// The `rti` identity, multiplicity freeness of every `V(B_X(n)_i)` with
/// the predicted constituents, and the highest subspaces.
pub fn generalized_scheme(
    n: usize,
    g: &GroupTable,
    action: &GroupAction,
    tol: f64,
) -> Result<Report> {
    let mut report = Report::new(format!(
        "generalized Johnson scheme {} on {} n={n}",
        g.name(),
        action.name()
    ));
    let (lhs, rhs) = identity_rti(n, g, action);
    report.push(Check::from_bool(
        "(|X|+1)^n = sum (1+a-b) dim V^mu",
        lhs == rhs,
        || format!("{lhs} vs {rhs}"),
    ));
    if n == 0 {
        return Ok(report);
    }

    let words = Words::new(n, action)?;
    WreathGroup::new(g, n).guard()?;
    let table = char_table(n, g)?;
    let y2 = enumerate_y2(n, g, action);
    let decomposition = permutation_decomposition(&words, &table, g);
    for dec in &decomposition {
        let mut worst = 0.0f64;
        let mut failure = None;
        for (mu, m) in &dec.multiplicities {
            let expect = if y2.iter().any(|y| &y.mu == mu && y.occurs_at(dec.i)) {
                1.0
            } else {
                0.0
            };
            let r = (m - Complex64::new(expect, 0.0)).norm();
            worst = worst.max(r);
            let ok = if dec.exact { r == 0.0 } else { r < tol };
            if !ok && failure.is_none() {
                failure = Some(format!("{mu}: multiplicity {m}, expected {expect}"));
            }
        }
        let name = format!(
            "V(B_X(n)_{}) is the multiplicity free sum over Y_(2,n)_i",
            dec.i
        );
        report.push(
            match failure {
                None => Check::pass(name),
                Some(d) => Check::fail(name, d),
            }
            .with_residual(worst),
        );
    }

    let pairs: Vec<(Y2Diagram, usize)> = y2
        .iter()
        .flat_map(|y| {
            (0..=n)
                .filter(|&i| y.occurs_at(i))
                .map(move |i| (y.clone(), i))
        })
        .collect();
    let subspaces = par_map(&pairs, |(y, i)| {
        gz_highest_subspace(&y.mu, *i, g, action, tol)
    });
    for sub in subspaces {
        report.extend(sub?.report);
    }
    Ok(report)
}

/// The subspace `W = Gamma(u) x W_{r(q+1)} x ... x W_{r(n)}` of
/// `V(B_X(n)_i)` of type `V_R`.
#[derive(Clone, Debug)]
pub struct HighestSubspace {
    pub mu: GYoungDiagram,
    pub i: usize,
    pub dimension: usize,
    /// Predicted eigenvalue of `X_j`, `j = 1..n`.
    pub eigenvalues: Vec<Q>,
    pub scalar_kind: ScalarKind,
    pub report: Report,
}

pub fn gz_highest_subspace(
    mu: &GYoungDiagram,
    i: usize,
    g: &GroupTable,
    action: &GroupAction,
    tol: f64,
) -> Result<HighestSubspace> {
    if g.scalar_kind() != ScalarKind::Float {
        if let Some(h) = highest_subspace::<Cyc>(mu, i, g, action, tol)? {
            return Ok(h);
        }
    }
    Ok(highest_subspace::<Complex64>(mu, i, g, action, tol)?.expect("floating characters exist"))
}

fn highest_subspace<S: Scalar>(
    mu: &GYoungDiagram,
    i: usize,
    g: &GroupTable,
    action: &GroupAction,
    tol: f64,
) -> Result<Option<HighestSubspace>> {
    let n = mu.size();
    let y = enumerate_y2(n, g, action)
        .into_iter()
        .find(|y| &y.mu == mu)
        .ok_or_else(|| {
            Error::InvalidArgument(format!("{mu} is not in Y_(2,n) for {}", action.name()))
        })?;
    if !y.occurs_at(i) {
        return Err(Error::InvalidArgument(format!(
            "{mu} does not occur at rank {i}"
        )));
    }
    let words = Words::new(n, action)?;
    let q = y.a + y.b;
    let r = row_major_tableau(mu);

    // u: the SJB vector of the chain labeled by the row tableau of (a, b)
    let label = row_major_tableau(&two_row(y.a, y.b));
    let chains = build_sjb(q);
    let u = chains
        .iter()
        .find(|c| c.tableau == label)
        .and_then(|c| c.at_rank(i - y.s))
        .ok_or_else(|| {
            Error::InvalidArgument(format!("no SJB vector of rank {} for {mu}", i - y.s))
        })?
        .clone();

    // isotypic components of V(X) inside V(Y)
    let mut components: BTreeMap<usize, Vec<Vec<S>>> = BTreeMap::new();
    for sigma in r.labels().into_iter().skip(q) {
        if components.contains_key(&sigma) {
            continue;
        }
        let Some(basis) = isotypic_basis::<S>(g, action, sigma, tol) else {
            return Ok(None);
        };
        components.insert(sigma, basis);
    }

    let base = action.points() + 1;
    let l0: Vec<S> = unit(base, 0);
    let z: Vec<S> = (0..base)
        .map(|a| if a == 0 { S::zero() } else { S::one() })
        .collect();
    let mut gamma = vec![S::zero(); base.pow(q as u32)];
    for (set, c) in u.terms() {
        let factors: Vec<&Vec<S>> = (0..q)
            .map(|k| if set >> k & 1 == 1 { &z } else { &l0 })
            .collect();
        let t = kron_all(&factors);
        for (slot, v) in gamma.iter_mut().zip(t) {
            *slot += v * S::from_q(c);
        }
    }

    let mut basis = vec![gamma];
    for sigma in r.labels().into_iter().skip(q) {
        let comp = &components[&sigma];
        basis = basis
            .iter()
            .flat_map(|v| comp.iter().map(move |w| kron(v, w)))
            .collect();
    }

    let dims = g.dims();
    let eigenvalues: Vec<Q> = (1..=n)
        .map(|j| Q::new(g.order() as i128, dims[r.label(j)] as i128) * qi(r.content_of(j) as i128))
        .collect();

    let mut report = Report::new(format!("highest subspace {mu} i={i}"));
    let expected_dim: usize = r.labels().iter().skip(q).map(|&s| dims[s]).product();
    let rank = rank_of(&basis, tol);
    report.push(Check::from_bool(
        "dim W = prod dim V^(r_R(j))",
        rank == expected_dim && basis.len() == expected_dim,
        || {
            format!(
                "rank {rank} of {} vectors, expected {expected_dim}",
                basis.len()
            )
        },
    ));
    let support_ok = basis.iter().all(|v| {
        v.iter()
            .enumerate()
            .all(|(idx, c)| c.abs_f64() <= tol || words.support(idx) == i)
    });
    report.push(Check::from_bool(
        "W lies in V(B_X(n)_i)",
        support_ok,
        || "support of the wrong size".into(),
    ));

    let w = WreathGroup::new(g, n);
    let mut worst = 0.0f64;
    let mut failure = None;
    for j in 1..=n {
        let x = yjm(&w, j);
        let lambda = S::from_q(&eigenvalues[j - 1]);
        for (bi, v) in basis.iter().enumerate() {
            let mut image = vec![S::zero(); v.len()];
            for (elem, c) in x.terms() {
                let c = S::from_q(c);
                for (idx, val) in v.iter().enumerate().filter(|(_, val)| !val.is_zero()) {
                    image[words.act(elem, idx)] += val.clone() * c.clone();
                }
            }
            let res = image
                .iter()
                .zip(v)
                .map(|(a, b)| (a.clone() - b.clone() * lambda.clone()).abs_f64())
                .fold(0.0, f64::max);
            worst = worst.max(res);
            let ok = if S::EXACT { res == 0.0 } else { res < tol };
            if !ok && failure.is_none() {
                failure = Some(format!("X_{j} on basis vector {bi}"));
            }
        }
    }
    report.push(
        match failure {
            None => Check::pass("X_j acts on W by (|G|/dim) c(b_R(j))"),
            Some(d) => Check::fail("X_j acts on W by (|G|/dim) c(b_R(j))", d),
        }
        .with_residual(worst),
    );

    let mut closed = true;
    for l in 0..n {
        for h in 0..g.order() {
            let mut e = w.identity();
            e.g[l] = h;
            let mut all = basis.clone();
            for v in &basis {
                let mut image = vec![S::zero(); v.len()];
                for (idx, val) in v.iter().enumerate() {
                    image[words.act(&e, idx)] += val.clone();
                }
                all.push(image);
            }
            closed &= rank_of(&all, tol) == rank;
        }
    }
    report.push(Check::from_bool("W is G^n-invariant", closed, || {
        "an image leaves W".into()
    }));

    let scalar_kind = if !S::EXACT {
        ScalarKind::Float
    } else if basis.iter().flatten().all(Scalar::is_rational) {
        ScalarKind::Rational
    } else {
        ScalarKind::Cyclotomic
    };
    Ok(Some(HighestSubspace {
        mu: mu.clone(),
        i,
        dimension: rank,
        eigenvalues,
        scalar_kind,
        report,
    }))
}

fn unit<S: Scalar>(len: usize, k: usize) -> Vec<S> {
    (0..len)
        .map(|j| if j == k { S::one() } else { S::zero() })
        .collect()
}

fn kron<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.clone() * y.clone()))
        .collect()
}

fn kron_all<S: Scalar>(factors: &[&Vec<S>]) -> Vec<S> {
    factors.iter().fold(vec![S::one()], |acc, f| kron(&acc, f))
}

/// A basis of the `sigma`-isotypic part of `V(X)`, embedded in `V(Y)`,
/// from the projection `(d/|G|) sum_g chi(g^-1) g`.
fn isotypic_basis<S: Scalar>(
    g: &GroupTable,
    action: &GroupAction,
    sigma: usize,
    tol: f64,
) -> Option<Vec<Vec<S>>> {
    let base = action.points() + 1;
    let d = g.dims()[sigma];
    let coef: Vec<S> = (0..g.order())
        .map(|h| {
            Some(
                g.character::<S>(sigma, g.inv(h))?
                    * S::from_q(&Q::new(d as i128, g.order() as i128)),
            )
        })
        .collect::<Option<_>>()?;
    let mut basis: Vec<Vec<S>> = Vec::new();
    for x in 0..action.points() {
        let mut v = vec![S::zero(); base];
        for (h, c) in coef.iter().enumerate() {
            v[1 + action.act(h, x)] += c.clone();
        }
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rank_of(&trial, tol) > basis.len() {
            basis.push(v);
        }
    }
    Some(basis)
}

/// Rank by Gaussian elimination; exact fields test for zero exactly.
fn rank_of<S: Scalar>(vectors: &[Vec<S>], tol: f64) -> usize {
    let mut rows: Vec<Vec<S>> = vectors.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let pivot = (rank..rows.len())
            .filter(|&r| {
                if S::EXACT {
                    !rows[r][c].is_zero()
                } else {
                    rows[r][c].abs_f64() > tol
                }
            })
            .max_by(|&a, &b| rows[a][c].abs_f64().total_cmp(&rows[b][c].abs_f64()));
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().expect("nonzero pivot");
        let prow: Vec<S> = rows[rank].iter().map(|v| v.clone() * inv.clone()).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        rows[rank] = prow;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn up_operator_examples() {
        assert_eq!(
            up_operator(&RankedVector::subset(&[]), 3),
            RankedVector::from_terms(&[(&[1], 1), (&[2], 1), (&[3], 1)])
        );
        assert!(up_operator(&RankedVector::subset(&[1, 2, 3]), 3).is_zero());
        assert_eq!(
            up_operator(&RankedVector::subset(&[1]), 3),
            RankedVector::from_terms(&[(&[1, 2], 1), (&[1, 3], 1)])
        );
    }

    #[test]
    fn sjb_small() {
        let one = build_sjb(1);
        assert_eq!(one.len(), 1);
        assert_eq!(
            one[0].vectors,
            vec![RankedVector::subset(&[]), RankedVector::subset(&[1])]
        );
        let two = build_sjb(2);
        assert_eq!(two.len(), 2);
        assert_eq!(
            two[1].vectors,
            vec![RankedVector::from_terms(&[(&[2], 1), (&[1], -1)])]
        );
        assert_eq!(two[0].to_string(), "({}, {1} + {2}, 2{1,2})");
    }

    #[test]
    fn yjm_on_subsets() {
        let v = RankedVector::from_terms(&[(&[2], 1), (&[1], -1)]);
        assert!(yjm_sn_apply(1, &v).is_zero());
        assert_eq!(
            yjm_sn_apply(2, &RankedVector::subset(&[1])),
            RankedVector::subset(&[2])
        );
        assert_eq!(yjm_sn_apply(2, &v), v.scale(&qi(-1)));
    }

    #[test]
    fn sjb_structure_and_eigenvalues() {
        for n in 0..=6 {
            let chains = build_sjb(n);
            let r = verify_sjb(n, &chains);
            assert!(r.passed, "n={n}: {:?}", r.first_failure());
            assert!(verify_ev(&chains).passed, "n={n}");
        }
    }

    #[test]
    fn johnson_numbers() {
        assert_eq!(johnson_decomposition(3, 1), vec![(0, 1), (1, 2)]);
        assert_eq!(johnson_decomposition(5, 0), vec![(0, 1)]);
        assert!((0..=10).all(identity_bi));
        assert!(verify_johnson(4).passed);
    }

    #[test]
    fn actions() {
        let s3 = GroupTable::sym3();
        assert!(matches!(
            GroupAction::regular(&s3),
            Err(Error::NotMultiplicityFree(_))
        ));
        let nat = GroupAction::natural(&s3).unwrap();
        assert_eq!(nat.constituents().len(), 2);
        let c3 = GroupTable::cyclic(3).unwrap();
        assert_eq!(
            GroupAction::regular(&c3).unwrap().constituents(),
            vec![0, 1, 2]
        );
        assert_eq!(GroupAction::point(&c3).constituents(), vec![0]);
    }

    #[test]
    fn rti_small() {
        let c2 = GroupTable::cyclic(2).unwrap();
        let x = GroupAction::regular(&c2).unwrap();
        assert_eq!(identity_rti(1, &c2, &x), (3, 3));
        let c3 = GroupTable::cyclic(3).unwrap();
        let x = GroupAction::regular(&c3).unwrap();
        assert_eq!(identity_rti(2, &c3, &x), (16, 16));
    }

    #[test]
    fn point_action_reduces_to_johnson() {
        let triv = GroupTable::trivial();
        let pt = GroupAction::point(&triv);
        for n in 1..=4 {
            for i in 0..=n {
                let mut from_y2: Vec<(usize, u128)> = enumerate_y2(n, &triv, &pt)
                    .iter()
                    .filter(|y| y.occurs_at(i))
                    .map(|y| (y.b, dimension(&y.mu, &triv)))
                    .collect();
                from_y2.sort();
                assert_eq!(from_y2, johnson_decomposition(n, i));
            }
        }
    }

    #[test]
    fn highest_subspace_examples() {
        let c2 = GroupTable::cyclic(2).unwrap();
        let x = GroupAction::regular(&c2).unwrap();
        let mu = GYoungDiagram::new(vec![Partition::empty(), Partition::new(vec![1]).unwrap()]);
        let h = gz_highest_subspace(&mu, 1, &c2, &x, 1e-9).unwrap();
        assert!(h.report.passed, "{:?}", h.report.first_failure());
        assert_eq!(h.dimension, 1);
        let mu = GYoungDiagram::new(vec![Partition::new(vec![2]).unwrap(), Partition::empty()]);
        let h = gz_highest_subspace(&mu, 1, &c2, &x, 1e-9).unwrap();
        assert!(h.report.passed);
        assert_eq!(h.eigenvalues[1], qi(2));
    }

    #[test]
    fn generalized_scheme_c2() {
        let c2 = GroupTable::cyclic(2).unwrap();
        let x = GroupAction::regular(&c2).unwrap();
        for n in 1..=3 {
            let r = generalized_scheme(n, &c2, &x, 1e-9).unwrap();
            assert!(r.passed, "n={n}: {:?}", r.first_failure());
        }
    }

    #[test]
    fn generalized_scheme_natural_s3() {
        let s3 = GroupTable::sym3();
        let x = GroupAction::natural(&s3).unwrap();
        let r = generalized_scheme(2, &s3, &x, 1e-9).unwrap();
        assert!(r.passed, "{:?}", r.first_failure());
    }
}
