//! Partitions, Young G-diagrams, standard Young G-tableaux and content
//! vectors with respect to `G`.
//!
//! Internally irrep labels, rows and columns are 0-based; the JSON forms and
//! `Display` use 1-based labels.

use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::report::{Check, Report};
use crate::scalar::{qi, Q};

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "partition {parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition {parts:?} is not decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn num_standard_tableaux(&self) -> u128 {
        let conj = self.conjugate();
        let hooks: u128 = self
            .0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| {
                let conj = &conj;
                (0..len).map(move |c| ((len - c) + (conj.0[c] - r) - 1) as u128)
            })
            .product();
        (1..=self.size() as u128).product::<u128>() / hooks
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..cols)
                .map(|c| self.0.iter().filter(|&&len| len > c).count())
                .collect(),
        )
    }

    /// `(row, col)` of every removable corner.
    pub fn corners(&self) -> Vec<(usize, usize)> {
        (0..self.0.len())
            .filter(|&r| r + 1 == self.0.len() || self.0[r + 1] < self.0[r])
            .map(|r| (r, self.0[r] - 1))
            .collect()
    }

    /// The partition with the box in row `r` removed (`r` must be a corner row).
    pub fn remove_box(&self, r: usize) -> Partition {
        let mut parts = self.0.clone();
        parts[r] -= 1;
        if parts[r] == 0 {
            parts.pop();
        }
        Partition(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Map from irrep index to partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GYoungDiagram {
    shapes: Vec<Partition>,
}

impl GYoungDiagram {
    pub fn new(shapes: Vec<Partition>) -> Self {
        GYoungDiagram { shapes }
    }

    pub fn empty(t: usize) -> Self {
        GYoungDiagram {
            shapes: vec![Partition::empty(); t],
        }
    }

    /// Diagram with a single nonempty component.
    pub fn single(t: usize, sigma: usize, p: Partition) -> Self {
        let mut d = Self::empty(t);
        d.shapes[sigma] = p;
        d
    }

    pub fn t(&self) -> usize {
        self.shapes.len()
    }

    pub fn shape(&self, sigma: usize) -> &Partition {
        &self.shapes[sigma]
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    pub fn size(&self) -> usize {
        self.shapes.iter().map(Partition::size).sum()
    }

    /// `n_sigma`, the number of boxes of each component.
    pub fn sizes(&self) -> Vec<usize> {
        self.shapes.iter().map(Partition::size).collect()
    }

    /// Diagrams obtained by removing one corner of component `sigma`.
    pub fn down(&self, sigma: usize) -> Vec<GYoungDiagram> {
        self.shapes[sigma]
            .corners()
            .into_iter()
            .map(|(r, _)| {
                let mut d = self.clone();
                d.shapes[sigma] = d.shapes[sigma].remove_box(r);
                d
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (s, p) in self.shapes.iter().enumerate() {
            m.insert((s + 1).to_string(), json!(p.parts()));
        }
        Value::Object(m)
    }

    /// Accepts `{"1": [2,1], "3": [1]}` (missing labels are empty) or `[[2,1],[],[1]]`.
    pub fn from_json(v: &Value, t: usize) -> Result<Self> {
        let parse_parts = |x: &Value| -> Result<Partition> {
            let parts: Vec<usize> = serde_json::from_value(x.clone())
                .map_err(|e| Error::Parse(format!("bad partition {x}: {e}")))?;
            Partition::new(parts)
        };
        let mut shapes = vec![Partition::empty(); t];
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let s: usize = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad irrep label {k:?}")))?;
                    if s == 0 || s > t {
                        return Err(Error::InvalidArgument(format!(
                            "irrep label {s} not in 1..{t}"
                        )));
                    }
                    shapes[s - 1] = parse_parts(x)?;
                }
            }
            Value::Array(xs) => {
                if xs.len() > t {
                    return Err(Error::InvalidArgument(format!(
                        "{} components for {t} irreps",
                        xs.len()
                    )));
                }
                for (s, x) in xs.iter().enumerate() {
                    shapes[s] = parse_parts(x)?;
                }
            }
            other => {
                return Err(Error::Parse(format!(
                    "expected object or array for a diagram, got {other}"
                )))
            }
        }
        Ok(GYoungDiagram { shapes })
    }
}

impl fmt::Display for GYoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .shapes
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_empty())
            .map(|(s, p)| format!("{}:{p}", s + 1))
            .collect();
        if parts.is_empty() {
            f.write_str("{}")
        } else {
            write!(f, "{{{}}}", parts.join(" "))
        }
    }
}

/// All Young G-diagrams with `n` boxes and `t` components. Components are
/// compared in turn, each by size (largest first) and then by parts in
/// decreasing lexicographic order.
pub fn enumerate_gdiagrams(n: usize, t: usize) -> Vec<GYoungDiagram> {
    fn rec(rest: usize, t: usize, cur: &mut Vec<Partition>, out: &mut Vec<GYoungDiagram>) {
        if cur.len() + 1 == t {
            for p in Partition::all(rest) {
                cur.push(p);
                out.push(GYoungDiagram::new(cur.clone()));
                cur.pop();
            }
            return;
        }
        for size in (0..=rest).rev() {
            for p in Partition::all(size) {
                cur.push(p);
                rec(rest - size, t, cur, out);
                cur.pop();
            }
        }
    }
    assert!(t >= 1, "at least one irrep");
    let mut out = Vec::new();
    rec(n, t, &mut Vec::new(), &mut out);
    out
}

/// Position of a box: `(sigma, row, col)`, all 0-based.
pub type BoxPos = (usize, usize, usize);

/// A standard Young G-tableau. `pos[i-1]` is the box holding `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GTableau {
    shape: GYoungDiagram,
    pos: Vec<BoxPos>,
}

impl GTableau {
    /// Builds a tableau and checks that it is a standard filling of `shape`.
    pub fn new(shape: GYoungDiagram, pos: Vec<BoxPos>) -> Result<Self> {
        let t = GTableau { shape, pos };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<()> {
        if self.pos.len() != self.shape.size() {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a diagram with {} boxes",
                self.pos.len(),
                self.shape.size()
            )));
        }
        let grid = self.grid()?;
        for (s, rows) in grid.iter().enumerate() {
            for (r, row) in rows.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    let left_ok = c == 0 || row[c - 1] < v;
                    let up_ok = r == 0 || rows[r - 1][c] < v;
                    if !left_ok || !up_ok {
                        return Err(Error::InvalidArgument(format!(
                            "not standard at irrep {} box ({}, {})",
                            s + 1,
                            r + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `grid[sigma][row][col]` = entry (1-based).
    pub fn grid(&self) -> Result<Vec<Vec<Vec<usize>>>> {
        let mut grid: Vec<Vec<Vec<usize>>> = self
            .shape
            .shapes()
            .iter()
            .map(|p| p.parts().iter().map(|&len| vec![0; len]).collect())
            .collect();
        for (k, &(s, r, c)) in self.pos.iter().enumerate() {
            let cell = grid
                .get_mut(s)
                .and_then(|rows| rows.get_mut(r))
                .and_then(|row| row.get_mut(c))
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("entry {} outside the diagram", k + 1))
                })?;
            if *cell != 0 {
                return Err(Error::InvalidArgument(format!(
                    "box of entry {} filled twice",
                    k + 1
                )));
            }
            *cell = k + 1;
        }
        Ok(grid)
    }

    pub fn shape(&self) -> &GYoungDiagram {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    /// Box of entry `i` (1-based).
    pub fn box_of(&self, i: usize) -> BoxPos {
        self.pos[i - 1]
    }

    pub fn positions(&self) -> &[BoxPos] {
        &self.pos
    }

    /// `r_T(i)`, the 0-based irrep label of entry `i`.
    pub fn label(&self, i: usize) -> usize {
        self.pos[i - 1].0
    }

    pub fn labels(&self) -> Vec<usize> {
        self.pos.iter().map(|p| p.0).collect()
    }

    /// Content `col - row` of the box of `i`.
    pub fn content_of(&self, i: usize) -> i64 {
        let (_, r, c) = self.pos[i - 1];
        c as i64 - r as i64
    }

    /// `s_i . T`: `i` and `i+1` exchanged, without a standardness check.
    pub fn swapped(&self, i: usize) -> GTableau {
        let mut pos = self.pos.clone();
        pos.swap(i - 1, i);
        GTableau {
            shape: self.shape.clone(),
            pos,
        }
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .pos
            .iter()
            .map(|&(s, r, c)| json!([s + 1, r + 1, c + 1]))
            .collect();
        json!({ "shape": self.shape.to_json(), "entries": entries })
    }

    pub fn from_json(v: &Value, t: usize) -> Result<Self> {
        let shape = GYoungDiagram::from_json(
            v.get("shape")
                .ok_or_else(|| Error::Parse("tableau without shape".into()))?,
            t,
        )?;
        let entries: Vec<[usize; 3]> = serde_json::from_value(
            v.get("entries")
                .cloned()
                .ok_or_else(|| Error::Parse("tableau without entries".into()))?,
        )?;
        let pos = entries
            .into_iter()
            .map(|[s, r, c]| {
                if s == 0 || r == 0 || c == 0 {
                    Err(Error::Parse("tableau coordinates are 1-based".into()))
                } else {
                    Ok((s - 1, r - 1, c - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        GTableau::new(shape, pos)
    }
}

impl fmt::Display for GTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let grid = self.grid().map_err(|_| fmt::Error)?;
        let mut first = true;
        for (s, rows) in grid.iter().enumerate() {
            if rows.is_empty() {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let rows: Vec<String> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            write!(f, "{}:[{}]", s + 1, rows.join("|"))?;
        }
        Ok(())
    }
}

/// All standard tableaux of shape `mu`. Entries are placed in increasing
/// order, each time trying addable boxes by `(sigma, row)`; the row-major
/// tableau comes first.
pub fn enumerate_gtableaux(mu: &GYoungDiagram) -> Vec<GTableau> {
    fn rec(
        mu: &GYoungDiagram,
        filled: &mut Vec<Vec<usize>>,
        pos: &mut Vec<BoxPos>,
        out: &mut Vec<GTableau>,
    ) {
        if pos.len() == mu.size() {
            out.push(GTableau {
                shape: mu.clone(),
                pos: pos.clone(),
            });
            return;
        }
        for s in 0..mu.t() {
            let parts = mu.shape(s).parts();
            for r in 0..parts.len() {
                let c = filled[s][r];
                if c < parts[r] && (r == 0 || filled[s][r - 1] > c) {
                    filled[s][r] += 1;
                    pos.push((s, r, c));
                    rec(mu, filled, pos, out);
                    pos.pop();
                    filled[s][r] -= 1;
                }
            }
        }
    }
    let mut filled: Vec<Vec<usize>> = mu.shapes().iter().map(|p| vec![0; p.num_rows()]).collect();
    let mut out = Vec::new();
    rec(mu, &mut filled, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j as u128 + 1))
}

pub fn multinomial(parts: &[usize]) -> u128 {
    let mut total = 0;
    let mut acc = 1u128;
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

/// `|tab_G(n, mu)|`: multinomial coefficient times the product of `f^{mu(sigma)}`.
pub fn num_gtableaux(mu: &GYoungDiagram) -> u128 {
    multinomial(&mu.sizes())
        * mu.shapes()
            .iter()
            .map(Partition::num_standard_tableaux)
            .product::<u128>()
}

/// Content of the box in (1-based) row `row` and column `col`.
pub fn content(row: usize, col: usize) -> i64 {
    col as i64 - row as i64
}

/// A weight: irrep labels (0-based) and YJM eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContentVector {
    pub labels: Vec<usize>,
    pub values: Vec<Q>,
}

impl ContentVector {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "labels": self.labels.iter().map(|s| s + 1).collect::<Vec<_>>(),
            "values": self.values.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }

    /// Whether `s_i` is admissible: labels differ, or the values do not
    /// differ by exactly `|G| / dim`.
    pub fn is_admissible(&self, i: usize, order: usize, dims: &[usize]) -> bool {
        let (a, b) = (i - 1, i);
        if self.labels[a] != self.labels[b] {
            return true;
        }
        let step = Q::new(order as i128, dims[self.labels[a]] as i128);
        let diff = self.values[b] - self.values[a];
        diff != step && diff != -step
    }

    pub fn swapped(&self, i: usize) -> ContentVector {
        let mut out = self.clone();
        out.labels.swap(i - 1, i);
        out.values.swap(i - 1, i);
        out
    }
}

fn scale_factor(order: usize, dim: usize) -> Q {
    Q::new(order as i128, dim as i128)
}

/// `Phi(T)`: labels `r_T(i)` and values `(|G| / dim V^{r_T(i)}) c(b_T(i))`.
pub fn phi_with(t: &GTableau, order: usize, dims: &[usize]) -> ContentVector {
    let labels = t.labels();
    let values = (1..=t.n())
        .map(|i| scale_factor(order, dims[t.label(i)]) * qi(t.content_of(i) as i128))
        .collect();
    ContentVector { labels, values }
}

pub fn phi(t: &GTableau, g: &GroupTable) -> ContentVector {
    phi_with(t, g.order(), &g.dims())
}

/// Checks conditions (i), (ii') and (iii) on an integer sequence.
pub fn content_vector_violation(a: &[i64]) -> Option<String> {
    if let Some(&first) = a.first() {
        if first != 0 {
            return Some(format!("first value is {first}, not 0"));
        }
    }
    for q in 1..a.len() {
        let v = a[q];
        let need = if v > 0 {
            Some(v - 1)
        } else if v < 0 {
            Some(v + 1)
        } else {
            None
        };
        if let Some(w) = need {
            if !a[..q].contains(&w) {
                return Some(format!(
                    "value {v} at position {} is not preceded by {w}",
                    q + 1
                ));
            }
        }
    }
    for p in 0..a.len() {
        for q in p + 1..a.len() {
            if a[p] == a[q] {
                let between = &a[p + 1..q];
                if !between.contains(&(a[p] - 1)) || !between.contains(&(a[p] + 1)) {
                    return Some(format!(
                        "positions {} and {} both hold {} without {} and {} between them",
                        p + 1,
                        q + 1,
                        a[p],
                        a[p] - 1,
                        a[p] + 1
                    ));
                }
                break;
            }
        }
    }
    None
}

/// The rescaled subsequence `sigma(alpha)` for every irrep, or an error if it
/// is not integral.
fn components(
    labels: &[usize],
    values: &[Q],
    order: usize,
    dims: &[usize],
) -> Result<Vec<Vec<i64>>> {
    if labels.len() != values.len() {
        return Err(Error::InvalidArgument(
            "labels and values differ in length".into(),
        ));
    }
    let mut out = vec![Vec::new(); dims.len()];
    for (k, (&s, v)) in labels.iter().zip(values).enumerate() {
        if s >= dims.len() {
            return Err(Error::InvalidArgument(format!(
                "label {} out of range",
                s + 1
            )));
        }
        let x = v / scale_factor(order, dims[s]);
        if !x.is_integer() {
            return Err(Error::InvalidArgument(format!(
                "value {v} at position {} is not a multiple of |G|/dim",
                k + 1
            )));
        }
        out[s].push(*x.numer() as i64);
    }
    Ok(out)
}

pub fn content_vector_g_violation(
    labels: &[usize],
    values: &[Q],
    order: usize,
    dims: &[usize],
) -> Option<String> {
    match components(labels, values, order, dims) {
        Err(e) => Some(e.to_string()),
        Ok(comps) => comps.iter().enumerate().find_map(|(s, a)| {
            content_vector_violation(a).map(|why| format!("irrep {}: {why}", s + 1))
        }),
    }
}

#[allow(non_snake_case)]
pub fn is_content_vector_G(labels: &[usize], values: &[Q], g: &GroupTable) -> bool {
    content_vector_g_violation(labels, values, g.order(), &g.dims()).is_none()
}

pub fn phi_inverse_with(cv: &ContentVector, order: usize, dims: &[usize]) -> Result<GTableau> {
    if let Some(why) = content_vector_g_violation(&cv.labels, &cv.values, order, dims) {
        return Err(Error::InvalidArgument(format!(
            "not a content vector: {why}"
        )));
    }
    let comps = components(&cv.labels, &cv.values, order, dims)?;
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); dims.len()];
    let mut next = vec![0usize; dims.len()];
    let mut pos = Vec::with_capacity(cv.len());
    for &s in &cv.labels {
        let c = comps[s][next[s]];
        next[s] += 1;
        // the addable boxes of a diagram have distinct contents
        let shape = &mut rows[s];
        let addable = (0..=shape.len()).find(|&r| {
            let len = shape.get(r).copied().unwrap_or(0);
            let fits = r == 0 || shape[r - 1] > len;
            fits && len as i64 - r as i64 == c
        });
        let r = addable
            .ok_or_else(|| Error::InvalidArgument(format!("no addable box of content {c}")))?;
        if r == shape.len() {
            shape.push(0);
        }
        pos.push((s, r, shape[r]));
        shape[r] += 1;
    }
    let shape = GYoungDiagram::new(rows.into_iter().map(Partition).collect());
    GTableau::new(shape, pos)
}

pub fn phi_inverse(cv: &ContentVector, g: &GroupTable) -> Result<GTableau> {
    phi_inverse_with(cv, g.order(), &g.dims())
}

/// `R`: the components filled in turn, each in row-major order.
pub fn row_major_tableau(mu: &GYoungDiagram) -> GTableau {
    let pos = mu
        .shapes()
        .iter()
        .enumerate()
        .flat_map(|(s, p)| {
            p.parts()
                .iter()
                .enumerate()
                .flat_map(move |(r, &len)| (0..len).map(move |c| (s, r, c)))
        })
        .collect();
    GTableau {
        shape: mu.clone(),
        pos,
    }
}

/// Whether exchanging `i` and `i+1` in `t` is an admissible transposition.
pub fn is_admissible(t: &GTableau, i: usize) -> bool {
    let (s1, r1, c1) = t.box_of(i);
    let (s2, r2, c2) = t.box_of(i + 1);
    s1 != s2 || (r1 != r2 && c1 != c2)
}

/// The permutation `s` with `s(R(b)) = T(b)`, as a 0-based one-line list.
pub fn permutation_from_r(t: &GTableau) -> Vec<usize> {
    let r = row_major_tableau(t.shape());
    let grid = t.grid().expect("valid tableau");
    r.positions()
        .iter()
        .map(|&(s, row, col)| grid[s][row][col] - 1)
        .collect()
}

pub fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
        .sum()
}

/// `l(T)`, the length of the permutation carrying `R` to `T`.
pub fn length(t: &GTableau) -> usize {
    inversions(&permutation_from_r(t))
}

/// Coxeter indices `i_1, ..., i_k` of admissible transpositions with
/// `T = s_{i_k} ... s_{i_1} R` and `k = l(T)`.
pub fn path_from_r(t: &GTableau) -> Vec<usize> {
    let r = row_major_tableau(t.shape());
    let mut cur = t.clone();
    let mut steps = Vec::new();
    // move the entry in R's box of m to position m, for m = n down to 1
    for m in (1..=t.n()).rev() {
        let target = r.box_of(m);
        let mut k = cur
            .positions()
            .iter()
            .position(|&b| b == target)
            .expect("box present")
            + 1;
        while k < m {
            debug_assert!(is_admissible(&cur, k));
            cur = cur.swapped(k);
            steps.push(k);
            k += 1;
        }
    }
    debug_assert_eq!(cur, r);
    steps.reverse();
    steps
}

/// Sum over all diagrams of the tableau counts: `|spec_G(n)|`.
pub fn total_gtableaux(n: usize, t: usize) -> u128 {
    enumerate_gdiagrams(n, t).iter().map(num_gtableaux).sum()
}

/// `|G|/dim` for each irrep.
pub fn eigen_steps(g: &GroupTable) -> Vec<Q> {
    g.dims()
        .iter()
        .map(|&d| scale_factor(g.order(), d))
        .collect()
}

/// `cont_G(n)`: label sequences with per-irrep integer components in
/// `[-(n-1), n-1]` satisfying the content vector conditions, rescaled.
pub fn enumerate_content_vectors(n: usize, order: usize, dims: &[usize]) -> Vec<ContentVector> {
    let mut out = Vec::new();
    let mut comps = vec![Vec::new(); dims.len()];
    let mut labels = Vec::with_capacity(n);
    extend_content(n, &mut labels, &mut comps, &mut out, order, dims);
    out.sort();
    out
}

fn extend_content(
    n: usize,
    labels: &mut Vec<usize>,
    comps: &mut Vec<Vec<i64>>,
    out: &mut Vec<ContentVector>,
    order: usize,
    dims: &[usize],
) {
    if labels.len() == n {
        let mut next = vec![0; dims.len()];
        let values = labels
            .iter()
            .map(|&s| {
                let c = comps[s][next[s]];
                next[s] += 1;
                scale_factor(order, dims[s]) * qi(c as i128)
            })
            .collect();
        out.push(ContentVector {
            labels: labels.clone(),
            values,
        });
        return;
    }
    let bound = n as i64 - 1;
    for s in 0..dims.len() {
        for c in -bound..=bound {
            comps[s].push(c);
            // every condition only looks backwards, so prefixes can be pruned
            if content_vector_violation(&comps[s]).is_none() {
                labels.push(s);
                extend_content(n, labels, comps, out, order, dims);
                labels.pop();
            }
            comps[s].pop();
        }
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Classes of a relation generated by `edges` on `0..len`, as a label per item.
fn components_of(len: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..len).collect();
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    (0..len).map(|x| find(&mut parent, x)).collect()
}

/// Whether the partition of items by `a` equals the partition by `b`.
fn same_partition<A: Ord, B: Ord>(a: &[A], b: &[B]) -> bool {
    use std::collections::BTreeMap;
    let mut ab: BTreeMap<&A, &B> = BTreeMap::new();
    let mut ba: BTreeMap<&B, &A> = BTreeMap::new();
    a.iter()
        .zip(b)
        .all(|(x, y)| *ab.entry(x).or_insert(y) == y && *ba.entry(y).or_insert(x) == x)
}

/// `Phi(tab_G(n)) = cont_G(n)`, and the admissible-transposition classes on
/// both sides are exactly the shapes.
pub fn verify_spec(n: usize, g: &GroupTable) -> Report {
    let order = g.order();
    let dims = g.dims();
    let mut report = Report::new(format!("spec = cont {} n={n}", g.name()));
    let tableaux: Vec<GTableau> = enumerate_gdiagrams(n, g.num_classes())
        .iter()
        .flat_map(enumerate_gtableaux)
        .collect();
    let mut images: Vec<ContentVector> =
        tableaux.iter().map(|t| phi_with(t, order, &dims)).collect();
    images.sort();
    let cont = enumerate_content_vectors(n, order, &dims);
    report.push(Check::from_bool(
        "Phi(tab_G(n)) = cont_G(n)",
        images == cont,
        || format!("{} images, {} content vectors", images.len(), cont.len()),
    ));

    let index: std::collections::HashMap<&GTableau, usize> =
        tableaux.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let index = &index;
    let edges = tableaux.iter().enumerate().flat_map(|(k, t)| {
        (1..n)
            .filter(move |&i| is_admissible(t, i))
            .map(move |i| (k, index[&t.swapped(i)]))
    });
    let classes = components_of(tableaux.len(), edges);
    let shapes: Vec<&GYoungDiagram> = tableaux.iter().map(GTableau::shape).collect();
    report.push(Check::from_bool(
        "tableaux: admissible classes are the shapes",
        same_partition(&classes, &shapes),
        || "class and shape partitions differ".into(),
    ));

    let cindex: std::collections::HashMap<&ContentVector, usize> =
        cont.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let edges: Vec<(usize, usize)> = cont
        .iter()
        .enumerate()
        .flat_map(|(k, c)| {
            (1..n)
                .filter(|&i| c.is_admissible(i, order, &dims))
                .filter_map(|i| cindex.get(&c.swapped(i)).map(|&j| (k, j)))
                .collect::<Vec<_>>()
        })
        .collect();
    let closed = cont.iter().all(|c| {
        (1..n)
            .filter(|&i| c.is_admissible(i, order, &dims))
            .all(|i| cindex.contains_key(&c.swapped(i)))
    });
    report.push(Check::from_bool(
        "cont_G(n) is closed under admissible transpositions",
        closed,
        || "an admissible swap leaves cont_G(n)".into(),
    ));
    let classes = components_of(cont.len(), edges.into_iter());
    let shapes: Vec<Option<GYoungDiagram>> = cont
        .iter()
        .map(|c| {
            phi_inverse_with(c, order, &dims)
                .ok()
                .map(|t| t.shape().clone())
        })
        .collect();
    report.push(Check::from_bool(
        "content vectors: admissible classes are the shapes",
        shapes.iter().all(Option::is_some) && same_partition(&classes, &shapes),
        || "class and shape partitions differ".into(),
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn diagram_enumeration() {
        assert_eq!(enumerate_gdiagrams(2, 1).len(), 2);
        let d = enumerate_gdiagrams(2, 2);
        assert_eq!(d.len(), 5);
        assert_eq!(d[0], GYoungDiagram::new(vec![p(&[2]), Partition::empty()]));
        assert_eq!(d[2], GYoungDiagram::new(vec![p(&[1]), p(&[1])]));
        let e = enumerate_gdiagrams(0, 3);
        assert_eq!(e, vec![GYoungDiagram::empty(3)]);
    }

    #[test]
    fn tableau_enumeration() {
        let row = GYoungDiagram::single(1, 0, p(&[3]));
        assert_eq!(enumerate_gtableaux(&row).len(), 1);
        let split = GYoungDiagram::new(vec![p(&[1]), p(&[1])]);
        assert_eq!(enumerate_gtableaux(&split).len(), 2);
        let hook = GYoungDiagram::single(1, 0, p(&[2, 1]));
        let ts = enumerate_gtableaux(&hook);
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[0], row_major_tableau(&hook));
        for n in 0..=5 {
            for t in 1..=3 {
                for mu in enumerate_gdiagrams(n, t) {
                    assert_eq!(
                        enumerate_gtableaux(&mu).len() as u128,
                        num_gtableaux(&mu),
                        "{mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(p(&[2, 1]).num_standard_tableaux(), 2);
        assert_eq!(p(&[3, 2]).num_standard_tableaux(), 5);
        assert_eq!(p(&[3, 2, 1]).num_standard_tableaux(), 16);
        assert_eq!(Partition::empty().num_standard_tableaux(), 1);
    }

    #[test]
    fn contents() {
        assert_eq!(content(1, 1), 0);
        assert_eq!(content(1, 3), 2);
        assert_eq!(content(2, 1), -1);
    }

    #[test]
    fn phi_examples() {
        let triv = GroupTable::trivial();
        let row = row_major_tableau(&GYoungDiagram::single(1, 0, p(&[3])));
        let cv = phi(&row, &triv);
        assert_eq!(cv.labels, vec![0, 0, 0]);
        assert_eq!(cv.values, vec![qi(0), qi(1), qi(2)]);

        let c2 = GroupTable::cyclic(2).unwrap();
        let t = row_major_tableau(&GYoungDiagram::new(vec![p(&[1]), p(&[1])]));
        assert_eq!(phi(&t, &c2).values, vec![qi(0), qi(0)]);
        assert_eq!(phi(&t, &c2).labels, vec![0, 1]);

        let s3 = GroupTable::sym3();
        let t = row_major_tableau(&GYoungDiagram::single(3, 2, p(&[2])));
        assert_eq!(phi(&t, &s3).values, vec![qi(0), qi(3)]);
    }

    #[test]
    fn content_vector_conditions() {
        assert!(content_vector_violation(&[0, 1, 2]).is_none());
        assert!(content_vector_violation(&[0, 2]).is_some());
        assert!(content_vector_violation(&[0, 1, 0]).is_some());
        assert!(content_vector_violation(&[0, 1, -1, 0]).is_none());
        assert!(content_vector_violation(&[1]).is_some());
    }

    #[test]
    fn phi_inverse_examples() {
        let triv = GroupTable::trivial();
        let cv = ContentVector {
            labels: vec![0],
            values: vec![qi(0)],
        };
        assert_eq!(phi_inverse(&cv, &triv).unwrap().n(), 1);
        let c2 = GroupTable::cyclic(2).unwrap();
        let cv = ContentVector {
            labels: vec![0, 0],
            values: vec![qi(0), qi(-2)],
        };
        let t = phi_inverse(&cv, &c2).unwrap();
        assert_eq!(t.shape().shape(0), &p(&[1, 1]));
        let bad = ContentVector {
            labels: vec![0, 0],
            values: vec![qi(0), q(1, 2)],
        };
        assert!(phi_inverse(&bad, &c2).is_err());
        let bad = ContentVector {
            labels: vec![0, 0],
            values: vec![qi(0), qi(4)],
        };
        assert!(phi_inverse(&bad, &c2).is_err());
    }

    #[test]
    fn phi_round_trip() {
        for (g, n_max) in [
            (GroupTable::trivial(), 5),
            (GroupTable::cyclic(2).unwrap(), 4),
        ] {
            for n in 0..=n_max {
                for mu in enumerate_gdiagrams(n, g.num_classes()) {
                    for t in enumerate_gtableaux(&mu) {
                        let cv = phi(&t, &g);
                        assert!(is_content_vector_G(&cv.labels, &cv.values, &g));
                        assert_eq!(phi_inverse(&cv, &g).unwrap(), t);
                    }
                }
            }
        }
    }

    #[test]
    fn admissibility_and_paths() {
        let hook = GYoungDiagram::single(1, 0, p(&[2, 1]));
        let r = row_major_tableau(&hook);
        assert!(!is_admissible(&r, 1));
        assert!(is_admissible(&r, 2));
        assert!(path_from_r(&r).is_empty());

        let col = GYoungDiagram::single(1, 0, p(&[1, 1]));
        assert!(path_from_r(&enumerate_gtableaux(&col)[0]).is_empty());

        let split = GYoungDiagram::new(vec![p(&[1]), p(&[1])]);
        assert!(is_admissible(&row_major_tableau(&split), 1));

        for n in 1..=5 {
            for mu in enumerate_gdiagrams(n, 2) {
                let r = row_major_tableau(&mu);
                for t in enumerate_gtableaux(&mu) {
                    let path = path_from_r(&t);
                    assert_eq!(path.len(), length(&t));
                    let mut cur = r.clone();
                    for &i in &path {
                        assert!(is_admissible(&cur, i));
                        cur = cur.swapped(i);
                    }
                    assert_eq!(cur, t);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let mu = GYoungDiagram::new(vec![p(&[2, 1]), p(&[1])]);
        for t in enumerate_gtableaux(&mu) {
            assert_eq!(GTableau::from_json(&t.to_json(), 2).unwrap(), t);
        }
        let arr: Value = serde_json::from_str("[[2,1],[1]]").unwrap();
        assert_eq!(GYoungDiagram::from_json(&arr, 2).unwrap(), mu);
        let obj: Value = serde_json::from_str(r#"{"1":[2,1],"2":[1]}"#).unwrap();
        assert_eq!(GYoungDiagram::from_json(&obj, 2).unwrap(), mu);
    }

    #[test]
    fn spec_equals_cont_small() {
        let c2 = GroupTable::cyclic(2).unwrap();
        for n in 1..=3 {
            let r = verify_spec(n, &c2);
            assert!(r.passed, "n={n}: {:?}", r.first_failure());
        }
        assert_eq!(enumerate_content_vectors(3, 1, &[1]).len(), 4);
    }
}
