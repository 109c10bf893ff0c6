//! The complexified Clifford algebra ℂ_m with `e_j² = -1`.
//!
//! Blades are stored as bitmasks (bit `i - 1` set for `e_i`), so a product of
//! basis blades is an XOR plus a sign.

mod spinor;

pub use spinor::{spin_rank, spinor_algebra_dim, spinor_components, spinor_generators, SpinLabel, SpinorFrame, SpinorSpace};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, Rational};

/// Largest supported algebra dimension.
pub const MAX_DIM: usize = 16;

/// A basis blade `e_{i_1} ... e_{i_r}` with `i_1 < ... < i_r`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BladeIndex(u32);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    pub fn from_bits(bits: u32) -> Self {
        BladeIndex(bits)
    }

    /// Builds a blade from strictly increasing 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        let mut last = 0;
        for &i in indices {
            if i == 0 || i > MAX_DIM {
                return Err(Error::BladeOutOfRange { index: i, dim: MAX_DIM });
            }
            if i <= last {
                return Err(Error::Parse(format!("blade indices must be strictly increasing: {indices:?}")));
            }
            last = i;
            bits |= 1 << (i - 1);
        }
        Ok(BladeIndex(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    /// Highest index present, 0 for the scalar blade.
    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// `e_A e_B = sign · e_{A Δ B}`; the sign counts transpositions plus one
    /// factor `-1` per shared generator.
    pub fn product(self, other: BladeIndex) -> (bool, BladeIndex) {
        let (a, b) = (self.0, other.0);
        let mut swaps = 0u32;
        let mut x = a >> 1;
        while x != 0 {
            swaps += (x & b).count_ones();
            x >>= 1;
        }
        swaps += (a & b).count_ones();
        (swaps % 2 == 1, BladeIndex(a ^ b))
    }

    /// Sign of the conjugation on this blade, `(-1)^{r(r+1)/2}`.
    pub fn conjugation_negates(self) -> bool {
        let r = self.grade();
        (r * (r + 1) / 2) % 2 == 1
    }

    /// Lexicographic order on the index lists, used for serialized output.
    pub fn lex_cmp(self, other: BladeIndex) -> std::cmp::Ordering {
        self.indices().cmp(&other.indices())
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e")?;
        let idx = self.indices();
        if idx.iter().all(|&i| i < 10) {
            for i in idx {
                write!(f, "{i}")?;
            }
        } else {
            let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of ℂ_m. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    dim: usize,
    terms: BTreeMap<BladeIndex, GaussianRational>,
}

impl Multivector {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "algebra dimension {dim} exceeds {MAX_DIM}");
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, GaussianRational::one())
    }

    pub fn scalar(dim: usize, c: GaussianRational) -> Self {
        let mut mv = Self::zero(dim);
        mv.add_term(BladeIndex::SCALAR, c);
        mv
    }

    pub fn rational(dim: usize, r: Rational) -> Self {
        Self::scalar(dim, GaussianRational::real(r))
    }

    /// The generator `e_i`, `1 <= i <= dim`.
    pub fn basis_vector(dim: usize, i: usize) -> Result<Self> {
        Self::blade(dim, &[i])
    }

    /// `e_{i_1} e_{i_2} ...` taken in the given order (indices need not be sorted).
    pub fn blade(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut acc = Self::one(dim);
        for &i in indices {
            if i == 0 || i > dim {
                return Err(Error::BladeOutOfRange { index: i, dim });
            }
            let mut e = Self::zero(dim);
            e.add_term(BladeIndex(1 << (i - 1)), GaussianRational::one());
            acc = &acc * &e;
        }
        Ok(acc)
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (BladeIndex, GaussianRational)>) -> Result<Self> {
        let mut mv = Self::zero(dim);
        for (b, c) in terms {
            if b.max_index() > dim {
                return Err(Error::BladeOutOfRange { index: b.max_index(), dim });
            }
            mv.add_term(b, c);
        }
        Ok(mv)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BladeIndex, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, b: BladeIndex) -> GaussianRational {
        self.terms.get(&b).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn scalar_part(&self) -> GaussianRational {
        self.coeff(BladeIndex::SCALAR)
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|b| *b == BladeIndex::SCALAR)
    }

    /// Terms sorted lexicographically by blade index list.
    pub fn sorted_terms(&self) -> Vec<(BladeIndex, GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(b, c)| (*b, c.clone())).collect();
        v.sort_by(|a, b| a.0.lex_cmp(b.0));
        v
    }

    pub fn add_term(&mut self, b: BladeIndex, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(b) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self { dim: self.dim, terms: self.terms.iter().map(|(b, v)| (*b, v * c)).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&GaussianRational::real(r.clone()))
    }

    /// Embeds into ℂ_dim for `dim >= self.dim()`.
    pub fn lift(&self, dim: usize) -> Result<Self> {
        if dim < self.dim {
            return Err(Error::DimensionMismatch(self.dim, dim));
        }
        Ok(Self { dim, terms: self.terms.clone() })
    }

    /// The geometric product `self · other`.
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Self::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (neg, blade) = a.product(*b);
                let c = ca * cb;
                out.add_term(blade, if neg { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Clifford conjugation `ē_j = -e_j` (an anti-automorphism) composed with
    /// complex conjugation of the coefficients.
    pub fn conjugate(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(b, c)| {
                let cc = c.conj();
                (*b, if b.conjugation_negates() { -cc } else { cc })
            })
            .collect();
        Self { dim: self.dim, terms }
    }

    /// Complex conjugation of the coefficients only.
    pub fn complex_conjugate(&self) -> Self {
        Self { dim: self.dim, terms: self.terms.iter().map(|(b, c)| (*b, c.conj())).collect() }
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.dim, other.dim, "multivector dimension mismatch");
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, if negate { -c } else { c.clone() });
        }
        out
    }
}

impl Add<&Multivector> for &Multivector {
    type Output = Multivector;
    fn add(self, o: &Multivector) -> Multivector {
        self.combine(o, false)
    }
}

impl Sub<&Multivector> for &Multivector {
    type Output = Multivector;
    fn sub(self, o: &Multivector) -> Multivector {
        self.combine(o, true)
    }
}

impl Mul<&Multivector> for &Multivector {
    type Output = Multivector;
    /// Panics on dimension mismatch; see [`Multivector::geometric_product`].
    fn mul(self, o: &Multivector) -> Multivector {
        self.geometric_product(o).expect("multivector dimension mismatch")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector { dim: self.dim, terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect() }
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(b, c)| if b == BladeIndex::SCALAR { c.to_string() } else { format!("{c}*{b}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector[{}]({})", self.dim, self)
    }
}
