//! The base group `G`: multiplication table, conjugacy classes, the
//! inverse-class involution and explicit irreducible representations.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::{Check, Report};
use crate::scalar::{q, qi, Cyc, Scalar, ScalarKind, Q};

/// Tolerance used to validate floating irreps.
pub const IRREP_TOL: f64 = 1e-9;

/// An irreducible representation of `G` as one matrix per group element.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub index: usize,
    pub dim: usize,
    exact: Option<Vec<Matrix<Cyc>>>,
    float: Vec<Matrix<Complex64>>,
}

impl Irrep {
    pub fn exact(index: usize, matrices: Vec<Matrix<Cyc>>) -> Self {
        let float = matrices.iter().map(|m| m.map(Cyc::to_c64)).collect();
        let dim = matrices.first().map_or(0, Matrix::rows);
        Irrep {
            index,
            dim,
            exact: Some(matrices),
            float,
        }
    }

    pub fn float(index: usize, matrices: Vec<Matrix<Complex64>>) -> Self {
        let dim = matrices.first().map_or(0, Matrix::rows);
        Irrep {
            index,
            dim,
            exact: None,
            float: matrices,
        }
    }

    pub fn exact_matrices(&self) -> Option<&[Matrix<Cyc>]> {
        self.exact.as_deref()
    }

    pub fn float_matrices(&self) -> &[Matrix<Complex64>] {
        &self.float
    }

    pub fn matrices<S: Scalar>(&self) -> Option<&[Matrix<S>]> {
        S::irrep_matrices(self)
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }
}

/// `class j -> class of the inverses of its members`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInvolution {
    pub map: Vec<usize>,
}

impl ClassInvolution {
    pub fn apply(&self, j: usize) -> usize {
        self.map[j]
    }
}

/// A finite group given by its multiplication table. Element 0 is the
/// identity; class 0 is `{e}`.
#[derive(Clone, Debug)]
pub struct GroupTable {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    irreps: Vec<Irrep>,
    natural_action: Option<Vec<Vec<usize>>>,
}

impl GroupTable {
    /// Validates the table, computes classes and checks the supplied irreps.
    /// Irreps are reordered so that the trivial one comes first.
    pub fn new(name: impl Into<String>, mul: Vec<Vec<usize>>, irreps: Vec<Irrep>) -> Result<Self> {
        let name = name.into();
        let order = mul.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        for (a, row) in mul.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "row {a} has length {}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= order) {
                return Err(Error::InvalidGroup(format!(
                    "entry {bad} out of range in row {a}"
                )));
            }
        }
        let flat: Vec<usize> = mul.iter().flatten().copied().collect();
        let at = |a: usize, b: usize| flat[a * order + b];
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; order];
        for (a, slot) in inv.iter_mut().enumerate() {
            match (0..order).find(|&b| at(a, b) == 0 && at(b, a) == 0) {
                Some(b) => *slot = b,
                None => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }

        // conjugacy classes, sorted by (size, smallest member)
        let mut seen = vec![false; order];
        let mut classes = Vec::new();
        for g in 0..order {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..order).map(|h| at(at(h, g), inv[h])).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes.sort_by_key(|c| (c.len(), c[0]));
        let mut class_of = vec![0; order];
        for (j, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = j;
            }
        }

        let mut group = GroupTable {
            name,
            order,
            mul: flat,
            inv,
            class_of,
            classes,
            irreps: Vec::new(),
            natural_action: None,
        };

        if irreps.len() != group.classes.len() {
            return Err(Error::InvalidGroup(format!(
                "{} irreps supplied but the group has {} conjugacy classes",
                irreps.len(),
                group.classes.len()
            )));
        }
        for (k, ir) in irreps.iter().enumerate() {
            if ir.float.len() != order
                || ir
                    .float
                    .iter()
                    .any(|m| m.rows() != ir.dim || m.cols() != ir.dim)
            {
                return Err(Error::InvalidGroup(format!(
                    "irrep {k}: expected {order} square matrices of size {}",
                    ir.dim
                )));
            }
        }
        let mut irreps = irreps;
        let trivial = irreps.iter().position(|ir| {
            ir.dim == 1
                && ir
                    .float
                    .iter()
                    .all(|m| (m[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < IRREP_TOL)
        });
        if let Some(t) = trivial {
            let ir = irreps.remove(t);
            irreps.insert(0, ir);
        }
        for (k, ir) in irreps.iter_mut().enumerate() {
            ir.index = k;
        }
        group.irreps = irreps;

        let report = verify_group_irreps(&group);
        if let Some(bad) = report.first_failure() {
            return Err(Error::InvalidGroup(format!(
                "irreps rejected: {} ({})",
                bad.name,
                bad.detail.clone().unwrap_or_default()
            )));
        }
        Ok(group)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group").renamed("trivial")
    }

    /// Z/m with characters `k -> w^{jk}`.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("cyclic group of order 0".into()));
        }
        let mul = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        let irreps = (0..m)
            .map(|j| {
                let exact: Option<Vec<Matrix<Cyc>>> = (0..m)
                    .map(|k| {
                        Cyc::root_of_unity((j * k) as i64, m as i64)
                            .map(|w| Matrix::from_rows(vec![vec![w]]))
                    })
                    .collect();
                match exact {
                    Some(ms) => Irrep::exact(j, ms),
                    None => Irrep::float(
                        j,
                        (0..m)
                            .map(|k| {
                                let angle =
                                    2.0 * std::f64::consts::PI * ((j * k) % m) as f64 / m as f64;
                                Matrix::from_rows(vec![vec![Complex64::from_polar(1.0, angle)]])
                            })
                            .collect(),
                    ),
                }
            })
            .collect();
        Self::new(format!("cyclic:{m}"), mul, irreps)
    }

    /// S3 acting on {0,1,2}, elements in lexicographic order of their
    /// one-line notation. Irreps: trivial, sign, and the 2-dimensional
    /// representation on the sum-zero plane in an orthonormal basis.
    pub fn sym3() -> Self {
        let perms = all_permutations(3);
        let index = |p: &[usize]| perms.iter().position(|x| x == p).expect("permutation");
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&x| a[x]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();

        let trivial = perms.iter().map(|_| Matrix::identity(1)).collect();
        let sign = perms
            .iter()
            .map(|p| Matrix::from_rows(vec![vec![Cyc::rational(qi(permutation_sign(p)))]]))
            .collect();
        // orthonormal basis u1 = (1,-1,0)/sqrt2, u2 = (1,1,-2)/sqrt6
        let u: [[i128; 3]; 2] = [[1, -1, 0], [1, 1, -2]];
        let scale = |a: usize, b: usize| -> Cyc {
            match (a, b) {
                (0, 0) => Cyc::rational(q(1, 2)),
                (1, 1) => Cyc::rational(q(1, 6)),
                _ => Cyc::sqrt3().scale(&q(1, 6)),
            }
        };
        let standard = perms
            .iter()
            .map(|p| {
                let rows = (0..2)
                    .map(|a| {
                        (0..2)
                            .map(|b| {
                                // u_a . P u_b with (P v)[p(x)] = v[x]
                                let dot: i128 = (0..3).map(|x| u[a][p[x]] * u[b][x]).sum();
                                scale(a, b).scale(&qi(dot))
                            })
                            .collect()
                    })
                    .collect();
                Matrix::from_rows(rows)
            })
            .collect();
        let irreps = vec![
            Irrep::exact(0, trivial),
            Irrep::exact(1, sign),
            Irrep::exact(2, standard),
        ];
        let mut g = Self::new("sym:3", mul, irreps).expect("S3 is a valid group");
        g.natural_action = Some(perms);
        g
    }

    /// Parses `trivial`, `cyclic:m`, `sym:3`, or a path to a JSON group file.
    pub fn load(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "trivial" {
            return Ok(Self::trivial());
        }
        if let Some(m) = spec.strip_prefix("cyclic:") {
            let m: usize = m.parse().map_err(|_| Error::UnknownGroup(spec.into()))?;
            return Self::cyclic(m);
        }
        if spec == "sym:3" {
            return Ok(Self::sym3());
        }
        let path = Path::new(spec);
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            return Self::from_json(&text, spec);
        }
        Err(Error::UnknownGroup(spec.into()))
    }

    pub fn from_json(text: &str, name: &str) -> Result<Self> {
        let file: GroupFile = serde_json::from_str(text)?;
        if file.mul.len() != file.order {
            return Err(Error::InvalidGroup(format!(
                "order {} but table has {} rows",
                file.order,
                file.mul.len()
            )));
        }
        let irreps = file
            .irreps
            .into_iter()
            .enumerate()
            .map(|(k, ir)| ir.into_irrep(k))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            file.name.unwrap_or_else(|| name.to_string()),
            file.mul,
            irreps,
        )
    }

    fn renamed(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn irrep(&self, sigma: usize) -> &Irrep {
        &self.irreps[sigma]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|ir| ir.dim).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Permutation action on points, for groups built as permutation groups.
    pub fn natural_action(&self) -> Option<&[Vec<usize>]> {
        self.natural_action.as_deref()
    }

    /// `Rational` if every irrep matrix is rational, `Cyclotomic` if exact, else `Float`.
    pub fn scalar_kind(&self) -> ScalarKind {
        if self.irreps.iter().any(|ir| !ir.is_exact()) {
            ScalarKind::Float
        } else if self.irreps.iter().all(|ir| {
            ir.exact
                .as_ref()
                .is_some_and(|ms| ms.iter().all(Matrix::is_rational))
        }) {
            ScalarKind::Rational
        } else {
            ScalarKind::Cyclotomic
        }
    }

    /// Character value `chi_sigma(g)`.
    pub fn character<S: Scalar>(&self, sigma: usize, g: usize) -> Option<S> {
        Some(self.irreps[sigma].matrices::<S>()?[g].trace())
    }

    /// Floating character table, rows = irreps, columns = classes.
    pub fn character_table(&self) -> Vec<Vec<Complex64>> {
        self.irreps
            .iter()
            .map(|ir| {
                self.classes
                    .iter()
                    .map(|c| ir.float[c[0]].trace())
                    .collect()
            })
            .collect()
    }
}

#[derive(Deserialize)]
struct GroupFile {
    #[serde(default)]
    name: Option<String>,
    order: usize,
    mul: Vec<Vec<usize>>,
    irreps: Vec<IrrepFile>,
}

#[derive(Deserialize)]
struct IrrepFile {
    dim: usize,
    matrices: Vec<Vec<Vec<[serde_json::Value; 2]>>>,
}

enum Entry {
    Exact(Cyc),
    Float(Complex64),
}

fn parse_entry(pair: &[serde_json::Value; 2]) -> Result<Entry> {
    use serde_json::Value;
    match pair {
        [Value::String(re), Value::String(im)] => {
            let re: Cyc = re.parse()?;
            let im: Cyc = im.parse()?;
            if !re.c.is_zero() || !re.d.is_zero() || !im.c.is_zero() || !im.d.is_zero() {
                return Err(Error::Parse("real and imaginary parts must be real".into()));
            }
            Ok(Entry::Exact(re + &im * &Cyc::i()))
        }
        [re, im] => {
            let f = |v: &Value| -> Result<f64> {
                match v {
                    Value::Number(x) => x
                        .as_f64()
                        .ok_or_else(|| Error::Parse(format!("bad number {x}"))),
                    Value::String(s) => s
                        .parse::<Cyc>()
                        .map(|c| c.to_c64().re)
                        .map_err(|_| Error::Parse(format!("bad scalar {s:?}"))),
                    other => Err(Error::Parse(format!("bad scalar {other}"))),
                }
            };
            Ok(Entry::Float(Complex64::new(f(re)?, f(im)?)))
        }
    }
}

impl IrrepFile {
    fn into_irrep(self, index: usize) -> Result<Irrep> {
        let mut exact = Vec::new();
        let mut float = Vec::new();
        let mut all_exact = true;
        for m in &self.matrices {
            if m.len() != self.dim || m.iter().any(|row| row.len() != self.dim) {
                return Err(Error::InvalidGroup(format!(
                    "irrep {index}: matrix is not {0}x{0}",
                    self.dim
                )));
            }
            let mut em = Vec::new();
            let mut fm = Vec::new();
            for row in m {
                let mut er = Vec::new();
                let mut fr = Vec::new();
                for pair in row {
                    match parse_entry(pair)? {
                        Entry::Exact(c) => {
                            fr.push(c.to_c64());
                            er.push(c);
                        }
                        Entry::Float(z) => {
                            all_exact = false;
                            fr.push(z);
                            er.push(Cyc::zero());
                        }
                    }
                }
                em.push(er);
                fm.push(fr);
            }
            exact.push(Matrix::from_rows(em));
            float.push(Matrix::from_rows(fm));
        }
        Ok(if all_exact {
            Irrep::exact(index, exact)
        } else {
            Irrep::float(index, float)
        })
    }
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn permutation_sign(p: &[usize]) -> i128 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn inverse_class_involution(g: &GroupTable) -> Result<ClassInvolution> {
    let map = g
        .classes()
        .iter()
        .enumerate()
        .map(|(j, class)| {
            let target = g.class_of(g.inv(class[0]));
            match class.iter().find(|&&x| g.class_of(g.inv(x)) != target) {
                Some(x) => Err(Error::InvalidGroup(format!(
                    "inverse class of class {j} is not well defined at element {x}"
                ))),
                None => Ok(target),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassInvolution { map })
}

/// Homomorphism, unitarity, `M(e) = I`, character orthonormality and
/// `sum d^2 = |G|`. Exact irreps are checked exactly, floating ones to
/// [`IRREP_TOL`].
pub fn verify_group_irreps(g: &GroupTable) -> Report {
    let mut report = Report::new(format!("irreps of {}", g.name()));
    let order = g.order();

    for ir in g.irreps() {
        let label = format!("irrep {}", ir.index + 1);
        match ir.exact_matrices() {
            Some(ms) => {
                report.push(check_irrep(g, ms, &label, 0.0));
            }
            None => {
                report.push(check_irrep(g, ir.float_matrices(), &label, IRREP_TOL));
            }
        }
    }

    // first orthogonality: <chi_a, chi_b> = delta_ab
    let exact_chars: Option<Vec<Vec<Cyc>>> = g
        .irreps()
        .iter()
        .map(|ir| {
            ir.exact_matrices()
                .map(|ms| ms.iter().map(Matrix::trace).collect())
        })
        .collect();
    match exact_chars {
        Some(chars) => {
            let mut failure = None;
            for a in 0..chars.len() {
                for b in 0..chars.len() {
                    let mut s = Cyc::zero();
                    for (x, y) in chars[a].iter().zip(&chars[b]) {
                        s += x * &y.conj();
                    }
                    let s = s.scale(&Q::new(1, order as i128));
                    let expect = if a == b { Cyc::one() } else { Cyc::zero() };
                    if s != expect && failure.is_none() {
                        failure = Some(format!("<chi_{}, chi_{}> = {s}", a + 1, b + 1));
                    }
                }
            }
            report.push(match failure {
                None => Check::pass("character orthonormality").with_residual(0.0),
                Some(d) => Check::fail("character orthonormality", d),
            });
        }
        None => {
            let chars: Vec<Vec<Complex64>> = g
                .irreps()
                .iter()
                .map(|ir| ir.float_matrices().iter().map(Matrix::trace).collect())
                .collect();
            let mut worst: (f64, usize, usize) = (0.0, 0, 0);
            for a in 0..chars.len() {
                for b in 0..chars.len() {
                    let s: Complex64 = (0..order)
                        .map(|h| chars[a][h] * chars[b][h].conj())
                        .sum::<Complex64>()
                        / order as f64;
                    let expect = if a == b { 1.0 } else { 0.0 };
                    let r = (s - Complex64::new(expect, 0.0)).norm();
                    if r > worst.0 {
                        worst = (r, a, b);
                    }
                }
            }
            let c = Check::from_bool("character orthonormality", worst.0 < IRREP_TOL, || {
                format!("worst pair ({}, {})", worst.1 + 1, worst.2 + 1)
            });
            report.push(c.with_residual(worst.0));
        }
    }

    let sum_sq: usize = g.dims().iter().map(|d| d * d).sum();
    report.push(Check::from_bool(
        "sum of squared dimensions",
        sum_sq == order,
        || format!("sum d^2 = {sum_sq}, |G| = {order}"),
    ));
    report
}

fn check_irrep<S: Scalar>(g: &GroupTable, ms: &[Matrix<S>], label: &str, tol: f64) -> Check {
    let order = g.order();
    let mut worst = 0.0f64;
    let mut witness = None;
    let mut note = |r: f64, what: String, exact_fail: bool| {
        let bad = if S::EXACT { exact_fail } else { r >= tol };
        if bad && witness.is_none() {
            witness = Some(what);
        }
        worst = worst.max(r);
    };
    let id = Matrix::identity(ms[0].rows());
    note(ms[0].residual(&id), "M(e) != I".into(), ms[0] != id);
    for a in 0..order {
        let u = ms[a].matmul(&ms[a].adjoint());
        note(
            u.residual(&id),
            format!("not unitary at element {a}"),
            u != id,
        );
        for b in 0..order {
            let lhs = ms[a].matmul(&ms[b]);
            let rhs = &ms[g.mul(a, b)];
            note(
                lhs.residual(rhs),
                format!("M({a})M({b}) != M({a}{b})"),
                &lhs != rhs,
            );
        }
    }
    match witness {
        None => Check::pass(format!("{label}: homomorphism + unitary")).with_residual(worst),
        Some(w) => Check::fail(format!("{label}: homomorphism + unitary"), w).with_residual(worst),
    }
}

/// Element -> class multiplicities, handy for class-function sums.
pub fn class_sizes(g: &GroupTable) -> BTreeMap<usize, usize> {
    g.classes()
        .iter()
        .enumerate()
        .map(|(j, c)| (j, c.len()))
        .collect()
}
