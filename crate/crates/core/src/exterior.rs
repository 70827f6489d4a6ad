//! Exterior algebra over `ℚ^m` with exact coefficients.
//!
//! Basis elements are subsets of `{0, …, m-1}` stored as bitmasks ([`Blade`]).
//! Forms (covariant) and multivectors (contravariant) share one sparse
//! representation, [`Graded`], tagged by a zero-sized variance marker.
//!
//! Sign conventions, fixed globally:
//! * `e^A ∧ e^B` carries the sign of the shuffle that sorts `A ∪ B`.
//! * `ι_{∂_i} e^A = (-1)^{#{a ∈ A : a < i}} e^{A \ i}`.
//! * `ι_{X_1 ∧ … ∧ X_k} = ι_{X_k} ∘ … ∘ ι_{X_1}` (leading factor innermost),
//!   so `ι_{∂_1 ∧ ∂_2} e^{12} = 1` and the basis pairing is the identity.
//!
//! Indices are 0-based in the API and 1-based in the literal syntax
//! (`3/2 e{1,3} - e{2,4}`).

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Result, ShlError};
use crate::linalg::Matrix;
use crate::scalar::{format_scalar, parse_scalar, Scalar};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 16;

/// A basis label: a subset of `{0, …, m-1}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Blade(u32);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn from_bits(bits: u32) -> Self { Blade(bits) }

    pub fn single(i: usize) -> Self { Blade(1 << i) }

    /// Builds a blade from distinct indices; `None` on a repeated index.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Option<Self> {
        let mut bits = 0u32;
        for i in indices {
            if bits & (1 << i) != 0 {
                return None;
            }
            bits |= 1 << i;
        }
        Some(Blade(bits))
    }

    pub fn bits(self) -> u32 { self.0 }

    pub fn degree(self) -> usize { self.0.count_ones() as usize }

    pub fn contains(self, i: usize) -> bool { self.0 & (1 << i) != 0 }

    pub fn is_disjoint(self, other: Blade) -> bool { self.0 & other.0 == 0 }

    pub fn union(self, other: Blade) -> Blade { Blade(self.0 | other.0) }

    pub fn without(self, i: usize) -> Blade { Blade(self.0 & !(1 << i)) }

    pub fn is_subset_of(self, other: Blade) -> bool { self.0 & !other.0 == 0 }

    /// Indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    /// Number of indices strictly below `i`.
    fn count_below(self, i: usize) -> u32 { (self.0 & ((1u32 << i) - 1)).count_ones() }

    /// Position of this blade in the colexicographic list of `degree`-subsets.
    pub fn rank(self) -> usize {
        self.indices().enumerate().map(|(pos, i)| binomial(i, pos + 1)).sum()
    }

    /// Inverse of [`Blade::rank`].
    pub fn unrank(degree: usize, mut rank: usize) -> Blade {
        let mut bits = 0u32;
        for pos in (1..=degree).rev() {
            let mut i = pos - 1;
            while binomial(i + 1, pos) <= rank {
                i += 1;
            }
            rank -= binomial(i, pos);
            bits |= 1 << i;
        }
        Blade(bits)
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", idx.join(","))
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `{0, …, m-1}` in colex order (the coordinate order).
pub fn blades(m: usize, k: usize) -> Vec<Blade> {
    (0..binomial(m, k)).map(|r| Blade::unrank(k, r)).collect()
}

/// Sign of `e^a ∧ e^b`, or `0` when the blades overlap.
pub fn wedge_sign(a: Blade, b: Blade) -> i32 {
    if !a.is_disjoint(b) {
        return 0;
    }
    let mut swaps = 0u32;
    for j in b.indices() {
        swaps += (a.0 >> (j + 1)).count_ones();
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `ι_{∂_B} e^A` on basis elements: `(sign, A \ B)`, sign `0` if `B ⊄ A`.
pub fn contract_sign(vector: Blade, form: Blade) -> (i32, Blade) {
    if !vector.is_subset_of(form) {
        return (0, Blade::EMPTY);
    }
    let mut sign = 1;
    let mut rest = form;
    for i in vector.indices() {
        if rest.count_below(i) % 2 == 1 {
            sign = -sign;
        }
        rest = rest.without(i);
    }
    (sign, rest)
}

pub trait Variance: Copy + Clone + fmt::Debug + PartialEq + Eq + Default {
    /// Letter used by the literal syntax (`e` for forms, `v` for multivectors).
    const SYMBOL: char;
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub struct Co;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub struct Contra;

impl Variance for Co {
    const SYMBOL: char = 'e';
}

impl Variance for Contra {
    const SYMBOL: char = 'v';
}

/// A homogeneous element of `Λ^degree` with no stored zero coefficients.
///
/// Equality ignores the degree of zero elements: `0` is `0` in every degree.
#[derive(Clone)]
pub struct Graded<V: Variance> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Blade, Scalar>,
    _variance: PhantomData<V>,
}

pub type Form = Graded<Co>;
pub type Multivector = Graded<Contra>;

impl<V: Variance> Graded<V> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "ambient dimension {dim} exceeds {MAX_DIM}");
        Graded { dim, degree, terms: BTreeMap::new(), _variance: PhantomData }
    }

    pub fn one(dim: usize) -> Self { Self::scalar(dim, Scalar::one()) }

    pub fn scalar(dim: usize, c: Scalar) -> Self {
        let mut out = Self::zero(dim, 0);
        out.add_term(Blade::EMPTY, c);
        out
    }

    pub fn basis(dim: usize, blade: Blade) -> Self {
        let mut out = Self::zero(dim, blade.degree());
        out.add_term(blade, Scalar::one());
        out
    }

    /// Convenience constructor from 0-based indices; panics on repeats.
    pub fn basis_from(dim: usize, indices: &[usize]) -> Self {
        let blade = Blade::from_indices(indices.iter().copied()).expect("repeated index");
        Self::basis(dim, blade)
    }

    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Blade, Scalar)>,
    {
        let mut out = Self::zero(dim, degree);
        for (b, c) in terms {
            if b.degree() != degree {
                return Err(ShlError::DegreeMismatch { expected: degree, found: b.degree() });
            }
            if b.bits() >> dim != 0 {
                return Err(ShlError::DimensionMismatch { expected: dim, found: 32 - b.bits().leading_zeros() as usize });
            }
            out.add_term(b, c);
        }
        Ok(out)
    }

    /// Coordinates in the colex basis of `Λ^degree`.
    pub fn from_coords(dim: usize, degree: usize, coords: &[Scalar]) -> Self {
        assert_eq!(coords.len(), binomial(dim, degree));
        let mut out = Self::zero(dim, degree);
        for (r, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(Blade::unrank(degree, r), c.clone());
            }
        }
        out
    }

    pub fn to_coords(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); binomial(self.dim, self.degree)];
        for (b, c) in &self.terms {
            v[b.rank()] = c.clone();
        }
        v
    }

    pub fn dim(&self) -> usize { self.dim }

    pub fn degree(&self) -> usize { self.degree }

    pub fn is_zero(&self) -> bool { self.terms.is_empty() }

    pub fn len(&self) -> usize { self.terms.len() }

    pub fn is_empty(&self) -> bool { self.terms.is_empty() }

    pub fn coeff(&self, blade: Blade) -> Scalar {
        self.terms.get(&blade).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Scalar)> { self.terms.iter() }

    fn add_term(&mut self, blade: Blade, c: Scalar) {
        debug_assert_eq!(blade.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(blade).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&blade);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.degree);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(ShlError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    /// Exterior product; errors on mismatched ambient dimensions.
    pub fn try_wedge(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                match wedge_sign(*a, *b) {
                    0 => {}
                    s => out.add_term(a.union(*b), signed(s, ca * cb)),
                }
            }
        }
        Ok(out)
    }

    /// Exterior product. Panics on mismatched ambient dimensions.
    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("wedge of elements over different dimensions")
    }

    /// `self^k`, with `self^0 = 1`.
    pub fn power(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.dim), |acc, _| acc.wedge(self))
    }

    /// Parses the literal syntax; see the module docs.
    pub fn parse(dim: usize, text: &str) -> Result<Self> { parse_literal(dim, text) }
}

fn signed(s: i32, c: Scalar) -> Scalar {
    if s < 0 {
        -c
    } else {
        c
    }
}

impl<V: Variance> PartialEq for Graded<V> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.terms == other.terms && (self.degree == other.degree || self.terms.is_empty())
    }
}

impl<V: Variance> Eq for Graded<V> {}

impl<V: Variance> std::hash::Hash for Graded<V> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        if !self.terms.is_empty() {
            self.degree.hash(state);
        }
        self.terms.hash(state);
    }
}

impl<V: Variance> fmt::Debug for Graded<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { write!(f, "{self}") }
}

impl<V: Variance> fmt::Display for Graded<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (b, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let idx: Vec<String> = b.indices().map(|i| (i + 1).to_string()).collect();
            if b.degree() == 0 {
                write!(f, "{}", format_scalar(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}{{{}}}", V::SYMBOL, idx.join(","))?;
            } else {
                write!(f, "{} {}{{{}}}", format_scalar(&mag), V::SYMBOL, idx.join(","))?;
            }
        }
        Ok(())
    }
}

/// Literal grammar (whitespace between tokens is free):
///
/// ```text
/// literal := '0' | ['-'] term (('+' | '-') term)*
/// term    := rational ['*'] basis | rational | basis
/// basis   := SYMBOL '{' [index (',' index)*] '}'      indices 1-based, distinct
/// rational:= digits ['/' digits]
/// ```
///
/// Unsorted indices are accepted and reordered with the permutation sign.
/// All terms must share one degree.
fn parse_literal<V: Variance>(dim: usize, text: &str) -> Result<Graded<V>> {
    let err = |msg: &str| ShlError::Parse(format!("{msg} in literal '{text}'"));
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err("empty literal"));
    }
    let mut pos = 0;
    let mut terms: Vec<(Blade, Scalar)> = Vec::new();
    let mut first = true;
    while pos < chars.len() {
        let mut negative = false;
        if chars[pos] == '+' || chars[pos] == '-' {
            negative = chars[pos] == '-';
            pos += 1;
        } else if !first {
            return Err(err("expected '+' or '-'"));
        }
        first = false;
        let start = pos;
        while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
            pos += 1;
        }
        let coeff = if pos > start {
            let s: String = chars[start..pos].iter().collect();
            Some(parse_scalar(&s)?)
        } else {
            None
        };
        if pos < chars.len() && chars[pos] == '*' {
            if coeff.is_none() {
                return Err(err("dangling '*'"));
            }
            pos += 1;
        }
        let blade_and_sign = if pos < chars.len() && chars[pos] == V::SYMBOL {
            pos += 1;
            if pos >= chars.len() || chars[pos] != '{' {
                return Err(err("expected '{'"));
            }
            pos += 1;
            let close = chars[pos..].iter().position(|&c| c == '}').ok_or_else(|| err("missing '}'"))?;
            let inner: String = chars[pos..pos + close].iter().collect();
            pos += close + 1;
            let mut indices = Vec::new();
            if !inner.is_empty() {
                for tok in inner.split(',') {
                    let i: usize = tok.parse().map_err(|_| err("bad index"))?;
                    if i == 0 || i > dim {
                        return Err(err(&format!("index {i} outside 1..={dim}")));
                    }
                    indices.push(i - 1);
                }
            }
            let blade = Blade::from_indices(indices.iter().copied()).ok_or_else(|| err("repeated index"))?;
            Some((blade, permutation_sign(&indices)))
        } else {
            None
        };
        let (blade, sign) = match (coeff.as_ref(), blade_and_sign) {
            (_, Some(bs)) => bs,
            (Some(_), None) => (Blade::EMPTY, 1),
            (None, None) => return Err(err("expected a term")),
        };
        let mut c = coeff.unwrap_or_else(Scalar::one);
        if negative != (sign < 0) {
            c = -c;
        }
        terms.push((blade, c));
    }
    let degree = terms[0].0.degree();
    let is_zero_literal = terms.len() == 1 && terms[0].1.is_zero();
    let mut out = Graded::zero(dim, degree);
    for (b, c) in terms {
        if b.degree() != degree && !is_zero_literal {
            return Err(ShlError::Parse(format!("non-homogeneous literal '{text}'")));
        }
        out.add_term(b, c);
    }
    Ok(out)
}

fn permutation_sign(indices: &[usize]) -> i32 {
    let mut inversions = 0;
    for a in 0..indices.len() {
        for b in a + 1..indices.len() {
            if indices[a] > indices[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl<V: Variance> Add for &Graded<V> {
    type Output = Graded<V>;

    fn add(self, rhs: &Graded<V>) -> Graded<V> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<V: Variance> AddAssign<&Graded<V>> for Graded<V> {
    fn add_assign(&mut self, rhs: &Graded<V>) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() && self.degree != rhs.degree {
            self.degree = rhs.degree;
        }
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        for (b, c) in &rhs.terms {
            self.add_term(*b, c.clone());
        }
    }
}

impl<V: Variance> Sub for &Graded<V> {
    type Output = Graded<V>;

    fn sub(self, rhs: &Graded<V>) -> Graded<V> { self + &(-rhs) }
}

impl<V: Variance> Neg for &Graded<V> {
    type Output = Graded<V>;

    fn neg(self) -> Graded<V> {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }
}

impl<V: Variance> Mul<&Graded<V>> for &Scalar {
    type Output = Graded<V>;

    fn mul(self, rhs: &Graded<V>) -> Graded<V> { rhs.scale(self) }
}

/// `ι_X ξ` with the leading factor of `X` applied first.
///
/// When `deg X > deg ξ` the result is the zero 0-form; see
/// [`contract_strict`] for the erroring variant. Panics on mismatched
/// ambient dimensions.
pub fn contract(x: &Multivector, xi: &Form) -> Form {
    assert_eq!(x.dim, xi.dim, "dimension mismatch");
    if x.degree > xi.degree {
        return Form::zero(xi.dim, 0);
    }
    let mut out = Form::zero(xi.dim, xi.degree - x.degree);
    for (a, ca) in &x.terms {
        for (b, cb) in &xi.terms {
            let (s, rest) = contract_sign(*a, *b);
            if s != 0 {
                out.add_term(rest, signed(s, ca * cb));
            }
        }
    }
    out
}

pub fn contract_strict(x: &Multivector, xi: &Form) -> Result<Form> {
    if x.dim != xi.dim {
        return Err(ShlError::DimensionMismatch { expected: xi.dim, found: x.dim });
    }
    if x.degree > xi.degree {
        return Err(ShlError::ContractionDegree { vector_degree: x.degree, form_degree: xi.degree });
    }
    Ok(contract(x, xi))
}

/// Contraction with a single vector given by its coordinates.
pub fn contract_vector(v: &[Scalar], xi: &Form) -> Form { contract(&vector(v), xi) }

/// The degree-1 multivector with the given coordinates.
pub fn vector(v: &[Scalar]) -> Multivector {
    let mut out = Multivector::zero(v.len(), 1);
    for (i, c) in v.iter().enumerate() {
        out.add_term(Blade::single(i), c.clone());
    }
    out
}

/// The 1-form with the given coordinates.
pub fn covector(v: &[Scalar]) -> Form {
    let mut out = Form::zero(v.len(), 1);
    for (i, c) in v.iter().enumerate() {
        out.add_term(Blade::single(i), c.clone());
    }
    out
}

/// The full pairing `⟨X, ξ⟩` of equal-degree elements.
pub fn pairing(x: &Multivector, xi: &Form) -> Scalar {
    assert_eq!(x.degree, xi.degree, "pairing needs equal degrees");
    contract(x, xi).coeff(Blade::EMPTY)
}

/// Extends a linear map given on generators to the whole exterior algebra.
fn induced<V: Variance>(dim: usize, images: &[Graded<V>], xi: &Graded<V>) -> Graded<V> {
    let mut out = Graded::zero(dim, xi.degree);
    for (b, c) in &xi.terms {
        let img = b.indices().fold(Graded::one(dim), |acc, i| acc.wedge(&images[i]));
        out += &img.scale(c);
    }
    out
}

fn check_map(a: &Matrix, dim: usize) -> Result<()> {
    if a.rows() != dim || a.cols() != dim {
        return Err(ShlError::DimensionMismatch { expected: dim, found: a.rows().max(a.cols()) });
    }
    if a.determinant().is_zero() {
        return Err(ShlError::SingularMatrix);
    }
    Ok(())
}

/// `A^* ξ` for the linear map `x ↦ A x`: `A^* e^i = Σ_j A_{ij} e^j`,
/// extended multiplicatively.
pub fn pullback(a: &Matrix, xi: &Form) -> Result<Form> {
    check_map(a, xi.dim)?;
    Ok(pullback_unchecked(a, xi))
}

pub(crate) fn pullback_unchecked(a: &Matrix, xi: &Form) -> Form {
    let images: Vec<Form> = (0..xi.dim).map(|i| covector(&a.row(i))).collect();
    induced(xi.dim, &images, xi)
}

/// `A_* X`: `A_* ∂_j = Σ_i A_{ij} ∂_i`, extended multiplicatively.
pub fn pushforward(a: &Matrix, x: &Multivector) -> Result<Multivector> {
    check_map(a, x.dim)?;
    let images: Vec<Multivector> = (0..x.dim).map(|j| vector(&a.column(j))).collect();
    Ok(induced(x.dim, &images, x))
}
