//! Scalar fields used by the representation matrices.
//!
//! Two scalar types implement [`Scalar`]:
//!
//! * [`Cyc`], the exact field Q(i, sqrt 3) (equal to the 12th cyclotomic field).
//!   It contains every character value of the cyclic groups of order dividing
//!   12, the unitary 2-dimensional irrep of S3, and the square roots
//!   `sqrt(1 - r^-2)` needed by the orthogonal form whenever `|r| = 2`.
//! * [`Complex64`], the floating fallback.
//!
//! Rational numbers are `Ratio<i128>`; every profile is built with overflow
//! checks so an overflow aborts instead of producing a wrong answer.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::Irrep;
use crate::matrix::Matrix;

/// Exact rational number.
pub type Q = Ratio<i128>;

pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i128) -> Q {
    Q::from_integer(n)
}

/// Formats a rational as `"p/q"` (or `"p"` when integral).
pub fn q_to_string(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// How the entries of a matrix family are represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarKind {
    /// Exact, and every entry is rational.
    Rational,
    /// Exact in Q(i, sqrt 3).
    Cyclotomic,
    /// Double precision complex.
    Float,
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarKind::Rational => "rational",
            ScalarKind::Cyclotomic => "cyclotomic",
            ScalarKind::Float => "float",
        })
    }
}

/// Field operations shared by exact and floating scalars.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + 'static
{
    const EXACT: bool;

    fn from_q(x: &Q) -> Self;

    fn from_i64(x: i64) -> Self {
        Self::from_q(&qi(x as i128))
    }

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Complex conjugate.
    fn conj(&self) -> Self;

    fn to_c64(&self) -> Complex64;

    /// Square root of a rational, if it lies in the field.
    fn sqrt_q(x: &Q) -> Option<Self>;

    /// Exact entries serialize as strings, floating ones as `[re, im]`.
    fn to_json(&self) -> serde_json::Value;

    /// True when the value is (exactly) a rational number.
    fn is_rational(&self) -> bool;

    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    /// The matrices of `irrep` over this field, if available.
    fn irrep_matrices(irrep: &Irrep) -> Option<&[Matrix<Self>]>;
}

/// An element `(a + b*sqrt3) + i*(c + d*sqrt3)` of Q(i, sqrt 3).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyc {
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub d: Q,
}

impl Cyc {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Self {
        Cyc { a, b, c, d }
    }

    pub fn rational(a: Q) -> Self {
        Cyc {
            a,
            ..Default::default()
        }
    }

    pub fn sqrt3() -> Self {
        Cyc {
            b: Q::one(),
            ..Default::default()
        }
    }

    pub fn i() -> Self {
        Cyc {
            c: Q::one(),
            ..Default::default()
        }
    }

    /// `exp(2 pi i k / m)` when it lies in the field (`m` divides 12).
    pub fn root_of_unity(k: i64, m: i64) -> Option<Self> {
        if m <= 0 || 12 % m != 0 {
            return None;
        }
        let step = (k.rem_euclid(m) * (12 / m)) as usize;
        // cos and sin of 2*pi*j/12 as (rational, sqrt3-coefficient).
        const COS: [(i128, i128, i128); 12] = [
            (1, 1, 0),
            (0, 1, 1),
            (1, 2, 0),
            (0, 1, 0),
            (-1, 2, 0),
            (0, 1, -1),
            (-1, 1, 0),
            (0, 1, -1),
            (-1, 2, 0),
            (0, 1, 0),
            (1, 2, 0),
            (0, 1, 1),
        ];
        // cos(2 pi j / 12) = COS[j]: (num, den, sqrt3 sign with coefficient 1/2)
        let cos = |j: usize| -> (Q, Q) {
            let (n, d, s) = COS[j % 12];
            (Q::new(n, d), Q::new(s, 2))
        };
        let (ca, cb) = cos(step);
        // sin x = cos(x - pi/2)
        let (sa, sb) = cos((step + 9) % 12);
        Some(Cyc::new(ca, cb, sa, sb))
    }

    fn re_mul(a: &Q, b: &Q, c: &Q, d: &Q) -> (Q, Q) {
        // (a + b s)(c + d s), s^2 = 3
        (a * c + b * d * qi(3), a * d + b * c)
    }

    /// Real part as an element `p + q sqrt3`.
    pub fn re(&self) -> (Q, Q) {
        (self.a, self.b)
    }

    pub fn im(&self) -> (Q, Q) {
        (self.c, self.d)
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.b.is_zero() && self.c.is_zero() && self.d.is_zero() {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn scale(&self, k: &Q) -> Self {
        Cyc::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }
}

fn perfect_square(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// `sqrt(x)` for `x >= 0` as `(p, q)` with value `p + q sqrt3`.
fn sqrt_nonneg(x: &Q) -> Option<(Q, Q)> {
    let (n, d) = (*x.numer(), *x.denom());
    if let Some(r) = perfect_square(n * d) {
        return Some((Q::new(r, d), Q::zero()));
    }
    if let Some(r) = perfect_square(3 * n * d) {
        return Some((Q::zero(), Q::new(r, 3 * d)));
    }
    None
}

impl Zero for Cyc {
    fn zero() -> Self {
        Cyc::default()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl One for Cyc {
    fn one() -> Self {
        Cyc::rational(Q::one())
    }
}

impl Add for Cyc {
    type Output = Cyc;
    fn add(self, o: Cyc) -> Cyc {
        Cyc::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl AddAssign for Cyc {
    fn add_assign(&mut self, o: Cyc) {
        self.a += o.a;
        self.b += o.b;
        self.c += o.c;
        self.d += o.d;
    }
}

impl Sub for Cyc {
    type Output = Cyc;
    fn sub(self, o: Cyc) -> Cyc {
        Cyc::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, o: Cyc) -> Cyc {
        &self * &o
    }
}

impl<'a> Mul<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn mul(self, o: &Cyc) -> Cyc {
        if let (Some(x), Some(y)) = (self.as_rational(), o.as_rational()) {
            return Cyc::rational(x * y);
        }
        let (rr_a, rr_b) = Cyc::re_mul(&self.a, &self.b, &o.a, &o.b);
        let (ii_a, ii_b) = Cyc::re_mul(&self.c, &self.d, &o.c, &o.d);
        let (ri_a, ri_b) = Cyc::re_mul(&self.a, &self.b, &o.c, &o.d);
        let (ir_a, ir_b) = Cyc::re_mul(&self.c, &self.d, &o.a, &o.b);
        Cyc::new(rr_a - ii_a, rr_b - ii_b, ri_a + ir_a, ri_b + ir_b)
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyc {
    /// Canonical text form, e.g. `-1/2+1/2*sqrt(3)*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [
            (&self.a, ""),
            (&self.b, "*sqrt(3)"),
            (&self.c, "*i"),
            (&self.d, "*sqrt(3)*i"),
        ];
        let mut out = String::new();
        for (coef, suffix) in terms {
            if coef.is_zero() {
                continue;
            }
            if coef.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&coef.abs().to_string());
            out.push_str(suffix);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl FromStr for Cyc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut out = Cyc::zero();
        let mut start = 0;
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        for (k, &ch) in bytes.iter().enumerate() {
            if (ch == b'+' || ch == b'-') && k > 0 {
                pieces.push(&s[start..k]);
                start = k;
            }
        }
        pieces.push(&s[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-1, &piece[1..]),
                b'+' => (1, &piece[1..]),
                _ => (1, piece),
            };
            let (num, has_i) = match body.strip_suffix("*i") {
                Some(rest) => (rest, true),
                None if body == "i" => ("1", true),
                None => (body, false),
            };
            let (num, has_s) = match num.strip_suffix("*sqrt(3)") {
                Some(rest) => (rest, true),
                None if num == "sqrt(3)" => ("1", true),
                None => (num, false),
            };
            let coef = parse_q(num)? * qi(sign);
            match (has_s, has_i) {
                (false, false) => out.a += coef,
                (true, false) => out.b += coef,
                (false, true) => out.c += coef,
                (true, true) => out.d += coef,
            }
        }
        Ok(out)
    }
}

fn q_f64(x: &Q) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

impl Scalar for Cyc {
    const EXACT: bool = true;

    fn from_q(x: &Q) -> Self {
        Cyc::rational(*x)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(x) = self.as_rational() {
            return Some(Cyc::rational(x.recip()));
        }
        // |z|^2 = re^2 + im^2 = p + q sqrt3
        let (p1, q1) = Cyc::re_mul(&self.a, &self.b, &self.a, &self.b);
        let (p2, q2) = Cyc::re_mul(&self.c, &self.d, &self.c, &self.d);
        let (p, qq) = (p1 + p2, q1 + q2);
        // 1/(p + q s) = (p - q s) / (p^2 - 3 q^2)
        let norm = p * p - qi(3) * qq * qq;
        let inv_mod = Cyc::new(p / norm, -qq / norm, Q::zero(), Q::zero());
        Some(&self.conj() * &inv_mod)
    }

    fn conj(&self) -> Self {
        Cyc::new(self.a, self.b, -self.c, -self.d)
    }

    fn to_c64(&self) -> Complex64 {
        let s3 = 3f64.sqrt();
        Complex64::new(
            q_f64(&self.a) + q_f64(&self.b) * s3,
            q_f64(&self.c) + q_f64(&self.d) * s3,
        )
    }

    fn sqrt_q(x: &Q) -> Option<Self> {
        if x.is_negative() {
            let (p, s) = sqrt_nonneg(&-*x)?;
            Some(Cyc::new(Q::zero(), Q::zero(), p, s))
        } else {
            let (p, s) = sqrt_nonneg(x)?;
            Some(Cyc::new(p, s, Q::zero(), Q::zero()))
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }

    fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    fn irrep_matrices(irrep: &Irrep) -> Option<&[Matrix<Self>]> {
        irrep.exact_matrices()
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_q(x: &Q) -> Self {
        Complex64::new(q_f64(x), 0.0)
    }

    fn inv(&self) -> Option<Self> {
        (self.norm_sqr() > 0.0).then(|| self.inv())
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn sqrt_q(x: &Q) -> Option<Self> {
        Some(Complex64::new(q_f64(x), 0.0).sqrt())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!([self.re, self.im])
    }

    fn is_rational(&self) -> bool {
        false
    }

    fn irrep_matrices(irrep: &Irrep) -> Option<&[Matrix<Self>]> {
        Some(irrep.float_matrices())
    }
}
