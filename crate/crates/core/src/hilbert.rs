//! h-vectors of zero-dimensional schemes, Macaulay growth, Gorenstein
//! h-vectors, the numerical shadow of linkage, and postulation characters.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("h-vector {0:?} has a negative entry")]
    Negative(Vec<i64>),
    #[error("h-vector {0:?} must start with 1")]
    BadStart(Vec<i64>),
    #[error("linking scheme {w} does not contain {z}: fails at index {index}")]
    NotContained { z: HVector, w: HVector, index: usize },
    #[error("linking scheme {0} is not Gorenstein")]
    NotGorenstein(HVector),
    #[error("residual has negative entry at index {index}")]
    NegativeResidual { index: usize },
    #[error("residual is empty")]
    EmptyResidual,
    #[error("residual {entries:?} is not an O-sequence: fails at index {index}")]
    InvalidResidual { entries: Vec<i64>, index: usize },
    #[error("Gorenstein test is only defined in codimension 2 or 3, got {0}")]
    UnsupportedCodim(usize),
    #[error("Hilbert function does not stabilize to a curve: {0}")]
    NotACurve(String),
    #[error("arithmetic overflow")]
    Overflow,
}

pub type Result<T, E = HilbertError> = std::result::Result<T, E>;

/// The h-vector of an Artinian reduction: `h(0) = 1`, finitely many nonzero
/// entries, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HVector {
    entries: Vec<i64>,
    /// codimension of the scheme: 2 for points in P², 3 for points in P³
    codim: usize,
}

impl HVector {
    pub fn new(mut entries: Vec<i64>, codim: usize) -> Result<Self> {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        if entries.iter().any(|&x| x < 0) {
            return Err(HilbertError::Negative(entries));
        }
        if entries.first() != Some(&1) {
            return Err(HilbertError::BadStart(entries));
        }
        Ok(Self { entries, codim })
    }

    /// The single point.
    pub fn point(codim: usize) -> Self {
        Self {
            entries: vec![1],
            codim,
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    /// Entry `i`, zero past the end.
    pub fn get(&self, i: usize) -> i64 {
        self.entries.get(i).copied().unwrap_or(0)
    }

    /// Number of points, `Σ h(i)`.
    pub fn mass(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Last index with a nonzero entry.
    pub fn socle_degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().eq(self.entries.iter().rev())
    }

    pub fn is_o_sequence(&self) -> bool {
        o_sequence_violation(&self.entries).is_none()
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * i128::from(n - i) / i128::from(i + 1);
    }
    i64::try_from(acc).expect("binomial fits in i64")
}

/// `i`-th Macaulay representation `h = C(k_i, i) + C(k_{i−1}, i−1) + …`, as
/// the pairs `(k_j, j)`.
pub fn macaulay_representation(mut h: i64, i: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut j = i;
    while h > 0 && j > 0 {
        // largest k with C(k, j) ≤ h
        let mut k = j;
        while binomial(k + 1, j) <= h {
            k += 1;
        }
        out.push((k, j));
        h -= binomial(k, j);
        j -= 1;
    }
    out
}

/// Macaulay's bound `h^⟨i⟩` on the next value of a Hilbert function.
pub fn macaulay_bound(h: i64, i: i64) -> i64 {
    macaulay_representation(h, i)
        .into_iter()
        .map(|(k, j)| binomial(k + 1, j + 1))
        .sum()
}

/// Index `i + 1` of the first violated growth condition, if any.
fn o_sequence_violation(h: &[i64]) -> Option<usize> {
    if h.first() != Some(&1) {
        return Some(0);
    }
    if let Some(i) = h.iter().position(|&x| x < 0) {
        return Some(i);
    }
    for i in 1..h.len().saturating_sub(1) {
        if h[i + 1] > macaulay_bound(h[i], i as i64) {
            return Some(i + 1);
        }
    }
    None
}

pub fn is_o_sequence(h: &HVector) -> bool {
    h.is_o_sequence()
}

/// Per-degree cap on the h-vector of points in `P^ambient`, optionally
/// constrained to lie on a hypersurface of degree `surface_degree`.
pub fn h_vector_cap(ambient: usize, surface_degree: Option<i64>, i: i64) -> i64 {
    let r = ambient as i64;
    let full = binomial(i + r - 1, r - 1);
    match surface_degree {
        Some(e) => full - binomial(i - e + r - 1, r - 1),
        None => full,
    }
}

/// h-vector of `n` general points: greedy maximal growth under
/// [`h_vector_cap`].
pub fn generic_points_h_vector_on(n: i64, ambient: usize, surface_degree: Option<i64>) -> HVector {
    assert!(n >= 1, "need at least one point");
    let mut left = n;
    let mut entries = Vec::new();
    let mut i = 0;
    while left > 0 {
        let take = h_vector_cap(ambient, surface_degree, i).min(left);
        assert!(take > 0, "a hypersurface of degree 0 holds no points");
        entries.push(take);
        left -= take;
        i += 1;
    }
    HVector {
        entries,
        codim: ambient,
    }
}

pub fn generic_points_h_vector(n: i64, ambient: usize) -> HVector {
    generic_points_h_vector_on(n, ambient, None)
}

/// Symmetric h-vectors of Artinian Gorenstein quotients.
///
/// Codimension 3: symmetric, `h(1) ≤ 3`, and the first difference of the
/// first half is an O-sequence (an SI-sequence). Codimension 2: symmetric
/// O-sequence with `h(1) ≤ 2`, i.e. a complete intersection.
pub fn is_gorenstein_h_vector(h: &HVector) -> Result<bool> {
    if !h.is_symmetric() || !h.is_o_sequence() {
        return Ok(false);
    }
    match h.codim {
        2 => Ok(h.get(1) <= 2),
        3 => {
            if h.get(1) > 3 {
                return Ok(false);
            }
            let half = h.socle_degree() / 2;
            let mut diff = Vec::with_capacity(half + 1);
            for i in 0..=half {
                let prev = if i == 0 { 0 } else { h.entries[i - 1] };
                diff.push(h.entries[i] - prev);
            }
            while diff.last() == Some(&0) && diff.len() > 1 {
                diff.pop();
            }
            Ok(o_sequence_violation(&diff).is_none())
        }
        c => Err(HilbertError::UnsupportedCodim(c)),
    }
}

/// Residual of `z` in the Gorenstein scheme `w`: `h(i) = w(i) − z(s − i)`.
pub fn link_h_vector(z: &HVector, w: &HVector) -> Result<HVector> {
    if !is_gorenstein_h_vector(w)? {
        return Err(HilbertError::NotGorenstein(w.clone()));
    }
    let s = w.socle_degree();
    if z.entries.len() > s + 1 {
        return Err(HilbertError::NotContained {
            z: z.clone(),
            w: w.clone(),
            index: s + 1,
        });
    }
    if let Some(index) = (0..z.entries.len()).find(|&i| z.entries[i] > w.get(i)) {
        return Err(HilbertError::NotContained {
            z: z.clone(),
            w: w.clone(),
            index,
        });
    }
    let mut res = Vec::with_capacity(s + 1);
    for i in 0..=s {
        let v = w.get(i) - z.get(s - i);
        if v < 0 {
            return Err(HilbertError::NegativeResidual { index: i });
        }
        res.push(v);
    }
    while res.last() == Some(&0) {
        res.pop();
    }
    if res.is_empty() {
        return Err(HilbertError::EmptyResidual);
    }
    if let Some(index) = o_sequence_violation(&res) {
        return Err(HilbertError::InvalidResidual { entries: res, index });
    }
    Ok(HVector {
        entries: res,
        codim: w.codim,
    })
}

/// Castelnuovo's bound on the genus of a nondegenerate reduced irreducible
/// curve of degree `d` in `P^r`.
pub fn castelnuovo_bound(d: i64, r: i64) -> i64 {
    let m = (d - 1) / (r - 1);
    let eps = d - 1 - m * (r - 1);
    m * (m - 1) * (r - 1) / 2 + m * eps
}

/// Genus of an ACM curve whose Artinian reduction has h-vector `h`:
/// `1 + Σ (i − 1)·h(i)`.
pub fn acm_curve_genus(h: &HVector) -> i64 {
    1 + h
        .entries
        .iter()
        .enumerate()
        .map(|(i, &v)| (i as i64 - 1) * v)
        .sum::<i64>()
}

/// `(d, g)` of nondegenerate ACM curves in `P^(codim+1)` with `d ≤ max_degree`:
/// h-vectors `(1, codim, …)` that are O-sequences, with genus at most the
/// Castelnuovo bound.
pub fn acm_curve_numbers(max_degree: i64, codim: usize) -> std::collections::BTreeSet<(i64, i64)> {
    fn grow(prefix: &mut Vec<i64>, left: i64, codim: usize, out: &mut Vec<HVector>) {
        if left == 0 {
            out.push(HVector {
                entries: prefix.clone(),
                codim,
            });
            return;
        }
        let i = prefix.len() as i64 - 1;
        let cap = macaulay_bound(prefix[prefix.len() - 1], i).min(left);
        for v in 1..=cap {
            prefix.push(v);
            grow(prefix, left - v, codim, out);
            prefix.pop();
        }
    }
    let r = codim as i64 + 1;
    let mut out = std::collections::BTreeSet::new();
    for d in (1 + codim as i64)..=max_degree {
        let mut hs = Vec::new();
        grow(&mut vec![1, codim as i64], d - 1 - codim as i64, codim, &mut hs);
        for h in hs {
            let g = acm_curve_genus(&h);
            if g <= castelnuovo_bound(d, r) {
                out.insert((d, g));
            }
        }
    }
    out
}

/// `γ(n)`, stored from `n = 0` with finite support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PostulationCharacter {
    pub values: Vec<i64>,
    /// degree of the curve, `Σ n·γ(n)`
    pub degree: i64,
}

impl PostulationCharacter {
    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn weighted_sum(&self) -> i64 {
        self.values.iter().enumerate().map(|(n, &g)| n as i64 * g).sum()
    }
}

/// `γ = −Δ³φ` for a Hilbert function `φ(0), φ(1), …` of a curve.
///
/// The last three values must already lie on the line `φ(n) = dn + 1 − g`
/// with `d > 0`; values past the end are taken from that line.
pub fn postulation_character(hf: &[i64]) -> Result<PostulationCharacter> {
    let n = hf.len();
    if n < 3 {
        return Err(HilbertError::NotACurve(format!("only {n} values")));
    }
    let d = hf[n - 1] - hf[n - 2];
    if hf[n - 2] - hf[n - 3] != d {
        return Err(HilbertError::NotACurve("tail is not linear".into()));
    }
    if d <= 0 {
        return Err(HilbertError::NotACurve(format!("tail slope {d} is not positive")));
    }
    // φ extended by 0 in negative degrees
    let phi = |t: i64| -> i64 {
        if t < 0 {
            0
        } else {
            hf[t as usize]
        }
    };
    let mut values: Vec<i64> = (0..n as i64)
        .map(|t| -(phi(t) - 3 * phi(t - 1) + 3 * phi(t - 2) - phi(t - 3)))
        .collect();
    while values.last() == Some(&0) {
        values.pop();
    }
    let ch = PostulationCharacter { values, degree: d };
    debug_assert_eq!(ch.sum(), 0);
    debug_assert_eq!(ch.weighted_sum(), d);
    Ok(ch)
}

/// `γ(0) = −1`, and once `γ` is nonnegative at some `s₀ ≥ 1` it stays so.
pub fn character_is_positive(gamma: &[i64]) -> bool {
    if gamma.first() != Some(&-1) {
        return false;
    }
    match (1..gamma.len()).find(|&n| gamma[n] >= 0) {
        Some(s0) => gamma[s0..].iter().all(|&g| g >= 0),
        None => true,
    }
}

/// `{n : γ(n) > 0}` is an interval.
pub fn character_is_connected(gamma: &[i64]) -> bool {
    let positive: Vec<usize> = (0..gamma.len()).filter(|&n| gamma[n] > 0).collect();
    match (positive.first(), positive.last()) {
        (Some(&a), Some(&b)) => b - a + 1 == positive.len(),
        _ => true,
    }
}

/// Hilbert function `φ(0..len)` of an ACM scheme of dimension `dim` whose
/// Artinian reduction has h-vector `h`.
pub fn acm_hilbert_function(h: &[i64], dim: i64, len: usize) -> Vec<i64> {
    (0..len as i64)
        .map(|t| {
            h.iter()
                .enumerate()
                .filter(|(i, _)| t >= *i as i64)
                .map(|(i, &hi)| hi * binomial(t - i as i64 + dim, dim))
                .sum()
        })
        .collect()
}
