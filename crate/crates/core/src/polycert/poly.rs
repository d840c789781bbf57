//! Multilinear polynomials over `{0,1}`-valued variables, and the general
//! polynomials they are reduced from.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::family::DistanceSpec;
use crate::scalar::Scalar;
use crate::subset::{CharVector, Subset};

/// `constant + Σ coeff_i x_i`; variables are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm<T> {
    pub n: usize,
    pub constant: T,
    pub coeffs: BTreeMap<usize, T>,
}

/// An unexpanded product of linear forms.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductForm<T> {
    pub n: usize,
    pub factors: Vec<LinearForm<T>>,
}

/// Polynomial with arbitrary exponents: exponent vector (length `n`) to
/// nonzero coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    n: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

fn accumulate<K: Ord, T: Scalar>(terms: &mut BTreeMap<K, T>, key: K, value: T) {
    if value.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().clone() + value;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

impl<T: Scalar> Polynomial<T> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, T)>>(n: usize, terms: I) -> Result<Self> {
        let mut p = Self::zero(n);
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(Error::InvalidInput(format!(
                    "exponent vector of length {} in {n} variables",
                    exps.len()
                )));
            }
            accumulate(&mut p.terms, exps, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, T> {
        &self.terms
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                accumulate(&mut out.terms, e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[T]) -> Result<T> {
        if point.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "point of length {} for {} variables",
                point.len(),
                self.n
            )));
        }
        let mut total = T::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term = term * x.clone();
                }
            }
            total = total + term;
        }
        Ok(total)
    }
}

impl<T: Scalar> LinearForm<T> {
    fn to_polynomial(&self) -> Polynomial<T> {
        let mut p = Polynomial::zero(self.n);
        accumulate(&mut p.terms, vec![0; self.n], self.constant.clone());
        for (&i, c) in &self.coeffs {
            let mut e = vec![0; self.n];
            e[i - 1] = 1;
            accumulate(&mut p.terms, e, c.clone());
        }
        p
    }

    fn to_multilinear(&self) -> MultilinearPoly<T> {
        let mut p = MultilinearPoly::constant(self.n, self.constant.clone());
        for (&i, c) in &self.coeffs {
            let mut m = Subset::empty();
            m.insert(i);
            accumulate(&mut p.terms, m, c.clone());
        }
        p
    }
}

impl<T: Scalar> ProductForm<T> {
    /// Full expansion, keeping powers.
    pub fn expand(&self) -> Polynomial<T> {
        let mut acc = Polynomial::from_terms(self.n, [(vec![0; self.n], T::one())])
            .expect("constant term has the right shape");
        for f in &self.factors {
            acc = acc.mul(&f.to_polynomial());
        }
        acc
    }
}

/// Square-free polynomial: support subset to nonzero coefficient. The empty
/// support is the constant term.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearPoly<T> {
    n: usize,
    terms: BTreeMap<Subset, T>,
}

impl<T: Scalar> MultilinearPoly<T> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: T) -> Self {
        let mut p = Self::zero(n);
        accumulate(&mut p.terms, Subset::empty(), c);
        p
    }

    /// The constant polynomial `1`.
    pub fn one(n: usize) -> Self {
        Self::constant(n, T::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Subset, T)>>(n: usize, terms: I) -> Result<Self> {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            if m.max_element() > n {
                return Err(Error::InvalidInput(format!(
                    "monomial {m} uses a variable beyond x_{n}"
                )));
            }
            accumulate(&mut p.terms, m, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Subset, T> {
        &self.terms
    }

    pub fn coefficient(&self, monomial: &Subset) -> T {
        self.terms.get(monomial).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest support size; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Subset::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut out.terms, m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &T) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            accumulate(&mut out.terms, m.clone(), c.clone() * k.clone());
        }
        out
    }

    /// Product followed by `x_i² → x_i`, i.e. supports combine by union.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut out.terms, ma.union(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Value at the 0/1 point whose support is `point`: a monomial
    /// contributes iff its support lies inside `point`.
    pub fn evaluate_at(&self, point: &Subset) -> T {
        self.terms
            .iter()
            .filter(|(m, _)| m.is_subset(point))
            .fold(T::zero(), |acc, (_, c)| acc + c.clone())
    }

    pub fn evaluate(&self, v: &CharVector) -> Result<T> {
        if v.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "vector of length {} for {} variables",
                v.len(),
                self.n
            )));
        }
        Ok(self.evaluate_at(&v.support()))
    }
}

impl<T: Scalar> fmt::Display for MultilinearPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut monos: Vec<_> = self.terms.iter().collect();
        monos.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.lex_cmp(b.0)));
        let parts = monos.into_iter().map(|(m, c)| {
            if m.is_empty() {
                format!("{c}")
            } else {
                format!("({c})*{}", m.elements().map(|i| format!("x{i}")).join("*"))
            }
        });
        write!(f, "{}", parts.format(" + "))
    }
}

/// Replaces every `x_i^t` (`t ≥ 2`) by `x_i` and merges like terms.
pub fn multilinearize<T: Scalar>(p: &Polynomial<T>) -> MultilinearPoly<T> {
    let mut out = MultilinearPoly::zero(p.n);
    for (exps, c) in &p.terms {
        let mut m = Subset::empty();
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                m.insert(i + 1);
            }
        }
        accumulate(&mut out.terms, m, c.clone());
    }
    out
}

fn check_positive(spec: &DistanceSpec) -> Result<()> {
    if spec.contains_zero() {
        Err(Error::CertificateUndefined)
    } else {
        Ok(())
    }
}

fn factor<T: Scalar>(set: &Subset, n: usize, h: usize) -> LinearForm<T> {
    LinearForm {
        n,
        constant: T::from_int(set.len() as i64 - h as i64),
        coeffs: set.elements().map(|i| (i, -T::one())).collect(),
    }
}

/// `p'_{F,L}(x) = Π_{h∈L} (|F| - v_F·x - h)` as an unexpanded product.
pub fn build_raw_polynomial<T: Scalar>(
    set: &Subset,
    spec: &DistanceSpec,
    n: usize,
) -> Result<ProductForm<T>> {
    check_positive(spec)?;
    if set.max_element() > n {
        return Err(Error::InvalidInput(format!(
            "{set} is not a subset of [{n}]"
        )));
    }
    Ok(ProductForm {
        n,
        factors: spec.iter().map(|h| factor(set, n, h)).collect(),
    })
}

/// `p_{F,L}`: the multilinear reduction of `p'_{F,L}`, reduced after every
/// factor so intermediate results never hold powers.
pub fn build_polynomial<T: Scalar>(
    set: &Subset,
    spec: &DistanceSpec,
    n: usize,
) -> Result<MultilinearPoly<T>> {
    let raw = build_raw_polynomial::<T>(set, spec, n)?;
    Ok(raw.factors.iter().fold(MultilinearPoly::one(n), |acc, f| {
        acc.mul(&f.to_multilinear())
    }))
}

/// `Σ_{i=0}^{l} binom(n, i)`.
pub fn monomial_space_dimension(n: usize, l: usize) -> u128 {
    (0..=l.min(n) as u128).map(|i| binomial(n as u128, i)).sum()
}

/// A canonical (degree, then lexicographic) list of square-free monomials of
/// degree at most `degree_cap`; either all of them (`M_l`) or a sub-list.
#[derive(Debug, Clone)]
pub struct MonomialSpace {
    n: usize,
    degree_cap: usize,
    monomials: Vec<Subset>,
    index: HashMap<Subset, usize>,
}

fn deglex(a: &Subset, b: &Subset) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.lex_cmp(b))
}

impl MonomialSpace {
    fn from_sorted(n: usize, degree_cap: usize, monomials: Vec<Subset>) -> Self {
        let index = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        Self {
            n,
            degree_cap,
            monomials,
            index,
        }
    }

    /// The full space `M_l` over `n` variables.
    pub fn full(n: usize, degree_cap: usize) -> Self {
        let monomials = (0..=degree_cap.min(n))
            .flat_map(|d| (1..=n).combinations(d))
            .map(|c| Subset::from_elements(n, c).expect("elements in range"))
            .collect();
        Self::from_sorted(n, degree_cap, monomials)
    }

    /// Only the monomials occurring in `polys` (plus `extra`), in canonical
    /// order. Ranks over this sub-list equal ranks over the full space since
    /// the omitted columns are zero.
    pub fn spanned_by<T: Scalar>(
        n: usize,
        degree_cap: usize,
        polys: &[MultilinearPoly<T>],
        extra: &[Subset],
    ) -> Self {
        let mut monomials: Vec<Subset> = polys
            .iter()
            .flat_map(|p| p.terms.keys().cloned())
            .chain(extra.iter().cloned())
            .collect();
        monomials.sort_by(deglex);
        monomials.dedup();
        Self::from_sorted(n, degree_cap, monomials)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Subset] {
        &self.monomials
    }

    pub fn position(&self, monomial: &Subset) -> Option<usize> {
        self.index.get(monomial).copied()
    }
}
