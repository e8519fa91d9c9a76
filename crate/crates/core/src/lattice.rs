//! Picard lattices of rational surfaces and the intersection pairing on them.
//!
//! Two lattice shapes are supported: the plane blown up in `n` points, with
//! basis `ℓ, e₁, …, eₙ`, and the quadric `P¹ × P¹` with its two rulings. A
//! class on the blown-up plane is written `(a; b₁, …, bₙ)` and stands for
//! `aℓ − Σ bᵢeᵢ`; on the quadric `(a, b)` is the bidegree.
//!
//! All arithmetic is checked. An overflow is reported as
//! [`LatticeError::Overflow`] and never wraps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice mismatch: {left} vs {right}")]
    BasisMismatch { left: Basis, right: Basis },
    #[error("{basis} classes have {expected} coefficients, got {got}")]
    Length { basis: Basis, expected: usize, got: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("C² + C·K = {0} is odd; the canonical class is not characteristic")]
    Parity(i64),
    #[error("cannot parse divisor class {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;

/// Which lattice a class lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// P² blown up in the given number of points; rank `1 + n`.
    BlownUpPlane(usize),
    /// P¹ × P¹; rank 2.
    Quadric,
}

impl Basis {
    pub fn rank(self) -> usize {
        match self {
            Basis::BlownUpPlane(n) => n + 1,
            Basis::Quadric => 2,
        }
    }

    /// The canonical class `(−3; −1ⁿ)` or `(−2, −2)`.
    pub fn canonical_class(self) -> DivisorClass {
        match self {
            Basis::BlownUpPlane(n) => {
                let mut coeffs = vec![-1; n + 1];
                coeffs[0] = -3;
                DivisorClass { basis: self, coeffs }
            }
            Basis::Quadric => DivisorClass {
                basis: self,
                coeffs: vec![-2, -2],
            },
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::BlownUpPlane(n) => write!(f, "blownup_plane({n})"),
            Basis::Quadric => f.write_str("quadric"),
        }
    }
}

/// The symmetric bilinear form of a lattice.
///
/// On the blown-up plane `ℓ² = 1`, `eᵢ² = −1` and all mixed products vanish;
/// on the quadric the Gram matrix is `[[0, 1], [1, 0]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionForm {
    pub basis: Basis,
}

impl IntersectionForm {
    pub fn new(basis: Basis) -> Self {
        Self { basis }
    }

    /// Pairs two raw coefficient vectors, both assumed to have the right length.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        match self.basis {
            Basis::BlownUpPlane(_) => {
                let mut acc = mul(x[0], y[0])?;
                for (a, b) in x[1..].iter().zip(&y[1..]) {
                    acc = sub(acc, mul(*a, *b)?)?;
                }
                Ok(acc)
            }
            Basis::Quadric => add(mul(x[0], y[1])?, mul(x[1], y[0])?),
        }
    }
}

/// An integral divisor class, compared structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    basis: Basis,
    coeffs: Vec<i64>,
}

impl DivisorClass {
    pub fn new(basis: Basis, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != basis.rank() {
            return Err(LatticeError::Length {
                basis,
                expected: basis.rank(),
                got: coeffs.len(),
            });
        }
        Ok(Self { basis, coeffs })
    }

    /// `(a; b₁, …, bₙ)` on the plane blown up in `bs.len()` points.
    pub fn blown_up(a: i64, bs: &[i64]) -> Self {
        let mut coeffs = Vec::with_capacity(bs.len() + 1);
        coeffs.push(a);
        coeffs.extend_from_slice(bs);
        Self {
            basis: Basis::BlownUpPlane(bs.len()),
            coeffs,
        }
    }

    /// Bidegree `(a, b)` on the quadric.
    pub fn quadric(a: i64, b: i64) -> Self {
        Self {
            basis: Basis::Quadric,
            coeffs: vec![a, b],
        }
    }

    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            coeffs: vec![0; basis.rank()],
        }
    }

    /// The exceptional curve `eᵢ` (1-based) on the plane blown up in `n` points.
    pub fn exceptional(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "exceptional index {i} out of 1..={n}");
        let mut coeffs = vec![0; n + 1];
        coeffs[i] = -1;
        Self {
            basis: Basis::BlownUpPlane(n),
            coeffs,
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> i64 {
        self.coeffs.iter().map(|c| c.saturating_abs()).max().unwrap_or(0)
    }

    fn same_basis(&self, other: &Self) -> Result<()> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(LatticeError::BasisMismatch {
                left: self.basis,
                right: other.basis,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| add(*a, *b))
            .collect::<Result<_>>()?;
        Ok(Self {
            basis: self.basis,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| sub(*a, *b))
            .collect::<Result<_>>()?;
        Ok(Self {
            basis: self.basis,
            coeffs,
        })
    }

    pub fn try_scale(&self, k: i64) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|a| mul(*a, k)).collect::<Result<_>>()?;
        Ok(Self {
            basis: self.basis,
            coeffs,
        })
    }

    /// `self + k·other`.
    pub fn plus_multiple(&self, k: i64, other: &Self) -> Result<Self> {
        self.try_add(&other.try_scale(k)?)
    }

    /// Compact notation with repeated tail entries grouped, e.g. `(5;3,1^4)`.
    pub fn notation(&self) -> String {
        match self.basis {
            Basis::Quadric => format!("({},{})", self.coeffs[0], self.coeffs[1]),
            Basis::BlownUpPlane(0) => format!("({};)", self.coeffs[0]),
            Basis::BlownUpPlane(_) => {
                let mut parts = Vec::new();
                let bs = &self.coeffs[1..];
                let mut i = 0;
                while i < bs.len() {
                    let mut j = i;
                    while j + 1 < bs.len() && bs[j + 1] == bs[i] {
                        j += 1;
                    }
                    let run = j - i + 1;
                    if run > 1 {
                        parts.push(format!("{}^{}", bs[i], run));
                    } else {
                        parts.push(bs[i].to_string());
                    }
                    i = j + 1;
                }
                format!("({};{})", self.coeffs[0], parts.join(","))
            }
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

/// Parses `a;b1,b2,…` (runs like `1^4` allowed, parentheses optional) or a
/// plain comma list `a,b1,…`. Two entries without a `;` are read as a
/// quadric bidegree only through [`parse_for_basis`].
impl FromStr for DivisorClass {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self> {
        let flat = parse_coefficients(s)?;
        let (a, bs) = flat.split_first().ok_or_else(|| LatticeError::Parse {
            input: s.to_string(),
            reason: "empty".into(),
        })?;
        Ok(DivisorClass::blown_up(*a, bs))
    }
}

/// Parses a coefficient list and checks it against the expected lattice.
pub fn parse_for_basis(s: &str, basis: Basis) -> Result<DivisorClass> {
    DivisorClass::new(basis, parse_coefficients(s)?)
}

fn parse_coefficients(s: &str) -> Result<Vec<i64>> {
    let err = |reason: String| LatticeError::Parse {
        input: s.to_string(),
        reason,
    };
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    let mut out = Vec::new();
    for tok in trimmed.split([';', ',']) {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        match tok.split_once('^') {
            Some((v, run)) => {
                let v: i64 = v.trim().parse().map_err(|e| err(format!("{tok}: {e}")))?;
                let run: usize = run.trim().parse().map_err(|e| err(format!("{tok}: {e}")))?;
                out.extend(std::iter::repeat_n(v, run));
            }
            None => out.push(tok.parse().map_err(|e| err(format!("{tok}: {e}")))?),
        }
    }
    if out.is_empty() {
        return Err(err("no coefficients".into()));
    }
    Ok(out)
}

/// A surface with a polarization and a canonical class in its Picard lattice.
pub trait Polarized {
    fn hyperplane(&self) -> &DivisorClass;
    fn canonical(&self) -> &DivisorClass;
}

pub fn intersect(d1: &DivisorClass, d2: &DivisorClass) -> Result<i64> {
    d1.same_basis(d2)?;
    IntersectionForm::new(d1.basis).pair(&d1.coeffs, &d2.coeffs)
}

pub fn self_intersection(c: &DivisorClass) -> Result<i64> {
    intersect(c, c)
}

/// `C·H`.
pub fn degree<S: Polarized + ?Sized>(c: &DivisorClass, s: &S) -> Result<i64> {
    intersect(c, s.hyperplane())
}

/// Adjunction: `2g − 2 = C² + C·K`.
pub fn arithmetic_genus<S: Polarized + ?Sized>(c: &DivisorClass, s: &S) -> Result<i64> {
    let twice = add(self_intersection(c)?, intersect(c, s.canonical())?)?;
    if twice % 2 != 0 {
        return Err(LatticeError::Parity(twice));
    }
    add(twice / 2, 1)
}

/// Riemann–Roch estimate `C·(C − K)/2` for `dim |C|` on a rational surface.
///
/// This is the value in the nonspecial case (`h¹ = h² = 0`); it is not a
/// certified `h⁰ − 1`.
pub fn expected_dim_linear_system<S: Polarized + ?Sized>(c: &DivisorClass, s: &S) -> Result<i64> {
    let c_minus_k = c.try_sub(s.canonical())?;
    let v = intersect(c, &c_minus_k)?;
    // C² − C·K has the parity of C² + C·K
    if v % 2 != 0 {
        return Err(LatticeError::Parity(v));
    }
    Ok(v / 2)
}

/// Every class `x` with `x·H = degree`, `x² = self_int` and `x·K = canonical_degree`.
///
/// `H` must be ample enough that `H² > 0`; the search box comes from the
/// Hodge index theorem and is exhaustive. Results are sorted.
pub fn enumerate_classes(
    h: &DivisorClass,
    k: &DivisorClass,
    degree: i64,
    self_int: i64,
    canonical_degree: i64,
) -> Result<Vec<DivisorClass>> {
    h.same_basis(k)?;
    let hh = self_intersection(h)?;
    assert!(hh > 0, "polarization must have positive square");
    // Hodge index: x² ≤ (x·H)²/H²
    if i128::from(self_int) * i128::from(hh) > i128::from(degree) * i128::from(degree) {
        return Ok(Vec::new());
    }
    let mut out = match h.basis {
        Basis::BlownUpPlane(_) => enumerate_blown_up(h, k, degree, self_int, canonical_degree)?,
        Basis::Quadric => enumerate_quadric(h, k, degree, self_int, canonical_degree)?,
    };
    out.sort();
    Ok(out)
}

/// Every class of the given degree and arithmetic genus.
///
/// Writing `x = (d/H²)H + v` with `v ⊥ H`, the form is negative definite on
/// `v`, so `x² + x·K = 2g − 2` confines `v` to a bounded region. With
/// `T = d² − x²·H²`, `C = (2g − 2)H² − d² − d(H·K)` and
/// `κ = (H·K)² − K²·H²` the admissible squares satisfy `(C + T)² ≤ T·κ`,
/// which forces `0 ≤ T ≤ max(κ − 2C, 0)`.
pub fn enumerate_degree_genus(
    h: &DivisorClass,
    k: &DivisorClass,
    degree: i64,
    genus: i64,
) -> Result<Vec<DivisorClass>> {
    let hh = i128::from(self_intersection(h)?);
    let hk = i128::from(intersect(h, k)?);
    let kk = i128::from(self_intersection(k)?);
    let d = i128::from(degree);
    let g2 = 2 * i128::from(genus) - 2;
    let c = g2 * hh - d * d - d * hk;
    let kappa = hk * hk - kk * hh;
    let t_max = (kappa - 2 * c).max(0);
    let mut out = Vec::new();
    for t in 0..=t_max {
        if (d * d - t) % hh != 0 {
            continue;
        }
        if (c + t) * (c + t) > t * kappa {
            continue;
        }
        let s = i64::try_from((d * d - t) / hh).map_err(|_| LatticeError::Overflow("genus search"))?;
        let kd = i64::try_from(g2 - i128::from(s)).map_err(|_| LatticeError::Overflow("genus search"))?;
        out.extend(enumerate_classes(h, k, degree, s, kd)?);
    }
    out.sort();
    Ok(out)
}

fn enumerate_blown_up(h: &DivisorClass, k: &DivisorClass, d: i64, s: i64, kd: i64) -> Result<Vec<DivisorClass>> {
    let n = h.coeffs.len() - 1;
    let hh = i128::from(self_intersection(h)?);
    let h0 = i128::from(h.coeffs[0]);
    let d128 = i128::from(d);
    // (a·H² − d·h₀)² ≤ (d² − s·H²)(h₀² − H²), from Hodge index applied to x and ℓ
    let rhs = (d128 * d128 - i128::from(s) * hh) * (h0 * h0 - hh);
    if rhs < 0 {
        return Ok(Vec::new());
    }
    let root = isqrt(rhs as u128) as i128;
    let a_lo = div_ceil(d128 * h0 - root, hh);
    let a_hi = div_floor(d128 * h0 + root, hh);

    let hs: Vec<i128> = h.coeffs[1..].iter().map(|&x| i128::from(x)).collect();
    let ks: Vec<i128> = k.coeffs[1..].iter().map(|&x| i128::from(x)).collect();
    let tail_h2 = suffix_sums(&hs);
    let tail_k2 = suffix_sums(&ks);
    let k0 = i128::from(k.coeffs[0]);

    let mut out = Vec::new();
    for a in a_lo..=a_hi {
        let norm = a * a - i128::from(s);
        if norm < 0 {
            continue;
        }
        // Σ hᵢbᵢ = a·h₀ − d and Σ kᵢbᵢ = a·k₀ − x·K
        let lin_h = a * h0 - d128;
        let lin_k = a * k0 - i128::from(kd);
        let mut bs = vec![0i128; n];
        let ctx = BSearch {
            hs: &hs,
            ks: &ks,
            tail_h2: &tail_h2,
            tail_k2: &tail_k2,
        };
        ctx.fill(0, norm, lin_h, lin_k, &mut bs, &mut |bs| {
            let mut coeffs = Vec::with_capacity(n + 1);
            coeffs.push(a as i64);
            coeffs.extend(bs.iter().map(|&b| b as i64));
            out.push(DivisorClass { basis: h.basis, coeffs });
        });
    }
    Ok(out)
}

struct BSearch<'a> {
    hs: &'a [i128],
    ks: &'a [i128],
    tail_h2: &'a [i128],
    tail_k2: &'a [i128],
}

impl BSearch<'_> {
    fn fill(&self, i: usize, norm: i128, lin_h: i128, lin_k: i128, bs: &mut [i128], emit: &mut dyn FnMut(&[i128])) {
        if i == bs.len() {
            if norm == 0 && lin_h == 0 && lin_k == 0 {
                emit(bs);
            }
            return;
        }
        // Cauchy–Schwarz on the remaining coordinates
        if lin_h * lin_h > norm * self.tail_h2[i] || lin_k * lin_k > norm * self.tail_k2[i] {
            return;
        }
        let r = isqrt(norm as u128) as i128;
        for b in -r..=r {
            bs[i] = b;
            self.fill(
                i + 1,
                norm - b * b,
                lin_h - self.hs[i] * b,
                lin_k - self.ks[i] * b,
                bs,
                emit,
            );
        }
        bs[i] = 0;
    }
}

fn enumerate_quadric(h: &DivisorClass, k: &DivisorClass, d: i64, s: i64, kd: i64) -> Result<Vec<DivisorClass>> {
    // x = (a, b): x·H = a·q + b·p, x² = 2ab, with H = (p, q)
    let (p, q) = (i128::from(h.coeffs[0]), i128::from(h.coeffs[1]));
    let (d, s) = (i128::from(d), i128::from(s));
    let mut out = Vec::new();
    let mut push = |a: i128, b: i128| -> Result<()> {
        let x = DivisorClass::quadric(
            i64::try_from(a).map_err(|_| LatticeError::Overflow("quadric search"))?,
            i64::try_from(b).map_err(|_| LatticeError::Overflow("quadric search"))?,
        );
        if i128::from(intersect(&x, k)?) == i128::from(kd) && !out.contains(&x) {
            out.push(x);
        }
        Ok(())
    };
    if q == 0 || p == 0 {
        // degenerate polarization: not ample, nothing sensible to enumerate
        return Ok(Vec::new());
    }
    // b = (d − a·q)/p, 2a(d − a·q) = s·p  ⇒  2q·a² − 2d·a + s·p = 0
    let disc = 4 * d * d - 8 * q * s * p;
    if disc < 0 {
        return Ok(Vec::new());
    }
    let root = isqrt(disc as u128) as i128;
    if root * root != disc {
        return Ok(Vec::new());
    }
    for num in [2 * d - root, 2 * d + root] {
        if num % (4 * q) == 0 {
            let a = num / (4 * q);
            if (d - a * q) % p == 0 {
                push(a, (d - a * q) / p)?;
            }
        }
    }
    Ok(out)
}

fn suffix_sums(v: &[i128]) -> Vec<i128> {
    let mut out = vec![0; v.len() + 1];
    for i in (0..v.len()).rev() {
        out[i] = out[i + 1] + v[i] * v[i];
    }
    out
}

pub(crate) fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(LatticeError::Overflow("addition"))
}

fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(LatticeError::Overflow("subtraction"))
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(LatticeError::Overflow("multiplication"))
}
