//! Explicit families: singletons, uniform layers, chains, the chain-based
//! `{0,...,t}`-sd family `F_{n,t}`, projective planes over prime fields and
//! the `{1}`-close Sperner point set in `{0,...,q-1}^n` with its embedding
//! into `2^[(q-1)n]`.

use std::fmt;

use itertools::Itertools;
use num_integer::binomial;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::subset::Subset;

fn build(n: usize, sets: Vec<Subset>) -> Result<SetFamily> {
    SetFamily::new_wide(n, sets)
}

/// `{{1}, ..., {n}}`.
pub fn singletons(n: usize) -> Result<SetFamily> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    build(
        n,
        (1..=n)
            .map(|i| Subset::from_elements(n, [i]))
            .collect::<Result<_>>()?,
    )
}

/// All `k`-subsets of `[n]`, in lexicographic order.
pub fn uniform_layer(n: usize, k: usize) -> Result<SetFamily> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if k > n {
        return Err(Error::InvalidInput(format!(
            "level k = {k} exceeds n = {n}"
        )));
    }
    let sets = (1..=n)
        .combinations(k)
        .map(|c| Subset::from_elements(n, c))
        .collect::<Result<_>>()?;
    build(n, sets)
}

/// `∅ ⊂ {1} ⊂ {1,2} ⊂ ... ⊂ [n]`.
pub fn maximal_chain(n: usize) -> Result<SetFamily> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    build(n, (0..=n).map(Subset::prefix).collect())
}

/// Below `n = 2t` the closed form no longer counts the family.
fn check_ffp_range(n: usize, t: usize) -> Result<()> {
    if n < 2 * t || n == 0 {
        return Err(Error::DegenerateRange { n, t });
    }
    Ok(())
}

/// Whether `(n, t)` lies in the range `n ≥ 2(t+2)` where the construction
/// is compared against the known upper bound. Outside it the family is still
/// generated but callers should flag the result.
pub fn ffp_in_standard_range(n: usize, t: usize) -> bool {
    n >= 2 * (t + 2)
}

/// `binom(n,t+1) - binom(2t+1,t+1) + 2 Σ_{i≤t} binom(n,i)`.
pub fn ffp_size(n: usize, t: usize) -> Result<u128> {
    check_ffp_range(n, t)?;
    let (n, t) = (n as u128, t as u128);
    let low: u128 = (0..=t).map(|i| binomial(n, i)).sum();
    Ok(binomial(n, t + 1) + 2 * low - binomial(2 * t + 1, t + 1))
}

/// `F_{n,t}` over the chain `C_i = {1,...,i}`: every `F` with `|F| ≤ t`,
/// `|F| ≥ n - t`, or `C_{|F|-t} ⊆ F`. Sets are listed by size, then
/// lexicographically.
pub fn ffp_family(n: usize, t: usize) -> Result<SetFamily> {
    check_ffp_range(n, t)?;
    let mut sets = Vec::new();
    for size in 0..=n {
        if size <= t || size + t >= n {
            sets.extend(
                (1..=n)
                    .combinations(size)
                    .map(|c| Subset::from_elements(n, c))
                    .collect::<Result<Vec<_>>>()?,
            );
        } else {
            let base = size - t;
            for extra in (base + 1..=n).combinations(t) {
                sets.push(Subset::from_elements(n, (1..=base).chain(extra))?);
            }
        }
    }
    build(n, sets)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Parameters of `PG(2, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlaneSpec {
    pub q: usize,
}

impl PlaneSpec {
    pub fn new(q: usize) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::UnsupportedOrder(q));
        }
        Ok(Self { q })
    }

    /// `q² + q + 1`, both the point count and the line count.
    pub fn size(&self) -> usize {
        self.q * self.q + self.q + 1
    }

    pub fn line_size(&self) -> usize {
        self.q + 1
    }

    /// Normalized representatives of the 1-dimensional subspaces of
    /// `GF(q)^3` (first nonzero coordinate equal to 1), in lexicographic order.
    pub fn points(&self) -> Vec<[usize; 3]> {
        let q = self.q;
        let mut pts = Vec::with_capacity(self.size());
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    let v = [a, b, c];
                    if v.iter().find(|&&x| x != 0) == Some(&1) {
                        pts.push(v);
                    }
                }
            }
        }
        pts
    }
}

/// Lines of the projective plane of order `q` (prime) as subsets of the
/// `q²+q+1` points. Line `u` is `{p : u·p = 0 mod q}`; lines are listed in
/// the same order as their normal vectors `u`.
pub fn projective_plane_lines(q: usize) -> Result<SetFamily> {
    let plane = PlaneSpec::new(q)?;
    let points = plane.points();
    let n = points.len();
    let lines: Vec<Subset> = points
        .iter()
        .map(|u| {
            let mut line = Subset::empty();
            for (idx, p) in points.iter().enumerate() {
                if (u[0] * p[0] + u[1] * p[1] + u[2] * p[2]) % q == 0 {
                    line.insert(idx + 1);
                }
            }
            line
        })
        .collect();
    validate_plane(&plane, &lines)?;
    build(n, lines)
}

fn validate_plane(plane: &PlaneSpec, lines: &[Subset]) -> Result<()> {
    if lines.len() != plane.size() {
        return Err(Error::PlaneAxiom(format!(
            "{} lines, expected {}",
            lines.len(),
            plane.size()
        )));
    }
    for (i, l) in lines.iter().enumerate() {
        if l.len() != plane.line_size() {
            return Err(Error::PlaneAxiom(format!(
                "line {i} has {} points, expected {}",
                l.len(),
                plane.line_size()
            )));
        }
        for (j, m) in lines.iter().enumerate().skip(i + 1) {
            let meet = l.intersection_len(m);
            if meet != 1 {
                return Err(Error::PlaneAxiom(format!(
                    "lines {i} and {j} meet in {meet} points"
                )));
            }
        }
    }
    Ok(())
}

/// A point of `{0, ..., q-1}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPoint {
    q: usize,
    coords: Vec<usize>,
}

impl QPoint {
    pub fn new(q: usize, coords: Vec<usize>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidInput(format!("alphabet size q = {q} < 2")));
        }
        if let Some(c) = coords.iter().find(|&&c| c >= q) {
            return Err(Error::InvalidInput(format!(
                "coordinate {c} outside [0, {}]",
                q - 1
            )));
        }
        Ok(Self { q, coords })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coords.iter().join(" "))
    }
}

/// The `(q-1)(n-1)` points `v_{i,h}`, `2 ≤ i ≤ n`, `1 ≤ h ≤ q-1`, with
/// `h` at coordinate `i`, `q - h` at coordinate 1 and zeros elsewhere.
///
/// Coordinate 1 uses `q - h` so that it stays inside `{0, ..., q-1}`; see
/// [`QN_FIRST_COORDINATE_NOTE`].
pub fn qn_points(q: usize, n: usize) -> Result<Vec<QPoint>> {
    if q < 2 || n < 2 {
        return Err(Error::InvalidInput(format!(
            "need q ≥ 2 and n ≥ 2, got q = {q}, n = {n}"
        )));
    }
    let mut out = Vec::with_capacity((q - 1) * (n - 1));
    for i in 2..=n {
        for h in 1..q {
            let mut coords = vec![0; n];
            coords[i - 1] = h;
            coords[0] = q - h;
            out.push(QPoint::new(q, coords)?);
        }
    }
    Ok(out)
}

/// Printed next to generated `Q^n` point sets.
pub const QN_FIRST_COORDINATE_NOTE: &str =
    "first coordinate set to q-h (the q-h+1 form leaves {0,...,q-1} at h=1); size and pairwise sd unchanged";

/// `min(#{i : a_i < b_i}, #{i : a_i > b_i})`.
pub fn qn_sd(a: &QPoint, b: &QPoint) -> Result<usize> {
    if a.dim() != b.dim() || a.q != b.q {
        return Err(Error::InvalidInput(format!(
            "points of shape (q={}, n={}) and (q={}, n={}) are not comparable",
            a.q,
            a.dim(),
            b.q,
            b.dim()
        )));
    }
    let (mut below, mut above) = (0, 0);
    for (x, y) in a.coords.iter().zip(&b.coords) {
        match x.cmp(y) {
            std::cmp::Ordering::Less => below += 1,
            std::cmp::Ordering::Greater => above += 1,
            std::cmp::Ordering::Equal => {}
        }
    }
    Ok(below.min(above))
}

/// `F_a = ⋃_i {(q-1)(i-1) + j : 1 ≤ j ≤ a_i} ⊆ [(q-1)n]`.
pub fn qn_embed(a: &QPoint) -> Subset {
    let block = a.q - 1;
    let mut s = Subset::empty();
    for (i, &ai) in a.coords.iter().enumerate() {
        for j in 1..=ai {
            s.insert(block * i + j);
        }
    }
    s
}

/// `{F_a : a ∈ points}` over the ground set `[(q-1)n]`.
pub fn qn_embed_family(points: &[QPoint]) -> Result<SetFamily> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidInput("no points to embed".into()))?;
    let (q, dim) = (first.q, first.dim());
    if points.iter().any(|p| p.q != q || p.dim() != dim) {
        return Err(Error::InvalidInput("points have mixed shapes".into()));
    }
    build((q - 1) * dim, points.iter().map(qn_embed).collect())
}

/// `Σ_{h=0}^{q-1} binom((q-1)n, h)`.
pub fn qn_upper_bound(q: usize, n: usize) -> u128 {
    let ground = ((q - 1) * n) as u128;
    (0..q as u128).map(|h| binomial(ground, h)).sum()
}

/// Writes a point set as `q <int>`, `n <int>`, then one line of
/// space-separated coordinates per point.
pub fn qn_to_text(q: usize, n: usize, points: &[QPoint]) -> String {
    let mut out = format!("q {q}\nn {n}\n");
    for p in points {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_qn(text: &str) -> Result<(usize, usize, Vec<QPoint>)> {
    let mut header: Vec<usize> = Vec::new();
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |message: String| Error::Parse {
            line: idx + 1,
            message,
        };
        if header.len() < 2 {
            let key = if header.is_empty() { "q " } else { "n " };
            let value = line
                .strip_prefix(key)
                .and_then(|v| v.trim().parse::<usize>().ok())
                .ok_or_else(|| perr(format!("expected '{}<integer>'", key)))?;
            header.push(value);
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|c| {
                c.parse::<usize>()
                    .map_err(|_| perr(format!("bad coordinate '{c}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != header[1] {
            return Err(perr(format!("expected {} coordinates", header[1])));
        }
        points.push(QPoint::new(header[0], coords).map_err(|e| perr(e.to_string()))?);
    }
    if header.len() < 2 {
        return Err(Error::Parse {
            line: 0,
            message: "missing 'q' / 'n' header".into(),
        });
    }
    Ok((header[0], header[1], points))
}
