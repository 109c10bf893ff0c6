//! Polynomials in `x_1..x_m` with ℂ_d-valued coefficients.
//!
//! The number of variables and the dimension of the coefficient algebra are
//! tracked separately: spinor-valued polynomials on odd-dimensional `ℝ^m`
//! take values in ℂ_{m+1}. Operators built from Clifford elements (the Dirac
//! operator, `∂_12`) act by left multiplication.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::clifford::{BladeIndex, Multivector};
use crate::error::{Error, Result};
use crate::scalars::{format_rational, int, rat, GaussianRational, Rational};
use crate::Sign;

/// Exponents `(α_1, ..., α_m)` of the monomial `x^α`.
///
/// Ordered by total degree, then lexicographically with larger leading
/// exponents first (`x1^2 < x1*x2 < x2^2`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn unit(nvars: usize, axis: usize) -> Self {
        let mut e = vec![0; nvars];
        e[axis - 1] = 1;
        ExponentVector(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All exponent vectors of total degree `k` in `nvars` variables, in order.
    pub fn all_of_degree(nvars: usize, k: u32) -> Vec<ExponentVector> {
        fn rec(rest: usize, k: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if rest == 1 {
                cur.push(k);
                out.push(ExponentVector(cur.clone()));
                cur.pop();
                return;
            }
            for e in (0..=k).rev() {
                cur.push(e);
                rec(rest - 1, k - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if k == 0 {
                out.push(ExponentVector(vec![]));
            }
            return out;
        }
        rec(nvars, k, &mut Vec::with_capacity(nvars), &mut out);
        out
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Which variables the Dirac operator differentiates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiracVars {
    /// `∂ = e_1 ∂_1 + ... + e_m ∂_m`
    Full,
    /// `∂̲ = e_1 ∂_1 + ... + e_{m-1} ∂_{m-1}`
    Leading,
}

/// A Clifford-valued polynomial. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffPoly {
    nvars: usize,
    alg_dim: usize,
    terms: BTreeMap<ExponentVector, Multivector>,
}

impl CliffPoly {
    pub fn zero(nvars: usize, alg_dim: usize) -> Self {
        Self { nvars, alg_dim, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Multivector) -> Self {
        let mut p = Self::zero(nvars, c.dim());
        p.add_term(ExponentVector::zero(nvars), c);
        p
    }

    pub fn one(nvars: usize, alg_dim: usize) -> Self {
        Self::constant(nvars, Multivector::one(alg_dim))
    }

    pub fn scalar(nvars: usize, alg_dim: usize, c: GaussianRational) -> Self {
        Self::constant(nvars, Multivector::scalar(alg_dim, c))
    }

    pub fn rational(nvars: usize, alg_dim: usize, r: Rational) -> Self {
        Self::scalar(nvars, alg_dim, GaussianRational::real(r))
    }

    /// The coordinate `x_axis` (1-based).
    pub fn var(nvars: usize, alg_dim: usize, axis: usize) -> Result<Self> {
        check_axis(axis, nvars)?;
        let mut p = Self::zero(nvars, alg_dim);
        p.add_term(ExponentVector::unit(nvars, axis), Multivector::one(alg_dim));
        Ok(p)
    }

    pub fn monomial(exp: ExponentVector, c: Multivector) -> Self {
        let mut p = Self::zero(exp.len(), c.dim());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(nvars: usize, alg_dim: usize, terms: impl IntoIterator<Item = (ExponentVector, Multivector)>) -> Result<Self> {
        let mut p = Self::zero(nvars, alg_dim);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(e.len(), nvars));
            }
            if c.dim() != alg_dim {
                return Err(Error::DimensionMismatch(c.dim(), alg_dim));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn alg_dim(&self) -> usize {
        self.alg_dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Multivector)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Multivector {
        self.terms.get(e).cloned().unwrap_or_else(|| Multivector::zero(self.alg_dim))
    }

    pub fn constant_term(&self) -> Multivector {
        self.coeff(&ExponentVector::zero(self.nvars))
    }

    pub fn add_term(&mut self, e: ExponentVector, c: Multivector) {
        debug_assert_eq!(e.len(), self.nvars);
        debug_assert_eq!(c.dim(), self.alg_dim);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    /// `true` when every monomial has total degree `k` (the zero polynomial
    /// is homogeneous of every degree).
    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|e| e.degree() == k)
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self {
            nvars: self.nvars,
            alg_dim: self.alg_dim,
            terms: self.terms.iter().filter(|(e, _)| e.degree() == k).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.values().all(Multivector::is_scalar)
    }

    /// Embeds into more variables and/or a larger coefficient algebra.
    pub fn embed(&self, nvars: usize, alg_dim: usize) -> Result<Self> {
        if nvars < self.nvars {
            return Err(Error::DimensionMismatch(self.nvars, nvars));
        }
        let mut out = Self::zero(nvars, alg_dim);
        for (e, c) in &self.terms {
            let mut ex = e.0.clone();
            ex.resize(nvars, 0);
            out.add_term(ExponentVector(ex), c.lift(alg_dim)?);
        }
        Ok(out)
    }

    /// Drops trailing variables the polynomial does not depend on.
    pub fn restrict_vars(&self, nvars: usize) -> Result<Self> {
        let mut out = Self::zero(nvars, self.alg_dim);
        for (e, c) in &self.terms {
            if e.0[nvars.min(e.len())..].iter().any(|&x| x != 0) {
                return Err(Error::Decomposition(format!("polynomial depends on variables beyond x{nvars}")));
            }
            let mut ex = e.0.clone();
            ex.truncate(nvars);
            out.add_term(ExponentVector(ex), c.clone());
        }
        Ok(out)
    }

    /// Substitutes `x_axis = 0`, keeping the variable count.
    pub fn set_zero(&self, axis: usize) -> Result<Self> {
        check_axis(axis, self.nvars)?;
        Ok(Self {
            nvars: self.nvars,
            alg_dim: self.alg_dim,
            terms: self.terms.iter().filter(|(e, _)| e.0[axis - 1] == 0).map(|(e, c)| (e.clone(), c.clone())).collect(),
        })
    }

    fn map_coeffs(&self, f: impl Fn(&Multivector) -> Multivector) -> Self {
        let mut out = Self::zero(self.nvars, self.alg_dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map_coeffs(|m| m.scale(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map_coeffs(|m| m.scale_rational(r))
    }

    /// `a · p` for a constant multivector `a`.
    pub fn left_mul(&self, a: &Multivector) -> Self {
        self.map_coeffs(|m| a * m)
    }

    /// `p · a` for a constant multivector `a`.
    pub fn right_mul(&self, a: &Multivector) -> Self {
        self.map_coeffs(|m| m * a)
    }

    /// Coefficient-wise Clifford conjugation.
    pub fn conjugate(&self) -> Self {
        self.map_coeffs(Multivector::conjugate)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(self.nvars, other.nvars));
        }
        if self.alg_dim != other.alg_dim {
            return Err(Error::DimensionMismatch(self.alg_dim, other.alg_dim));
        }
        Ok(())
    }

    /// `p · q`: coefficients multiplied with `p`'s on the left.
    pub fn poly_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars, self.alg_dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars, self.alg_dim), |acc, _| &acc * self)
    }

    pub fn partial_derivative(&self, axis: usize) -> Result<Self> {
        check_axis(axis, self.nvars)?;
        let mut out = Self::zero(self.nvars, self.alg_dim);
        for (e, c) in &self.terms {
            let a = e.0[axis - 1];
            if a == 0 {
                continue;
            }
            let mut ex = e.0.clone();
            ex[axis - 1] -= 1;
            out.add_term(ExponentVector(ex), c.scale_rational(&int(a as i64)));
        }
        Ok(out)
    }

    /// `∂^n / ∂x_axis^n`.
    pub fn partial_derivative_n(&self, axis: usize, n: u32) -> Result<Self> {
        check_axis(axis, self.nvars)?;
        let mut p = self.clone();
        for _ in 0..n {
            if p.is_zero() {
                break;
            }
            p = p.partial_derivative(axis)?;
        }
        Ok(p)
    }

    /// `∂_s = (∂_1 + s·i ∂_2) / 2`.
    pub fn d_pm(&self, s: Sign) -> Result<Self> {
        let d1 = self.partial_derivative(1)?;
        let d2 = self.partial_derivative(2)?;
        let phase = GaussianRational::new(int(0), int(s.as_i64()));
        Ok((&d1 + &d2.scale(&phase)).scale_rational(&rat(1, 2)))
    }

    /// `∂_12 = (∂_1 + e_12 ∂_2) / 2`, with `e_12` acting on the left.
    pub fn d_12(&self) -> Result<Self> {
        let e12 = Multivector::blade(self.alg_dim, &[1, 2])?;
        let d1 = self.partial_derivative(1)?;
        let d2 = self.partial_derivative(2)?;
        Ok((&d1 + &d2.left_mul(&e12)).scale_rational(&rat(1, 2)))
    }

    /// Left Dirac operator `Σ e_i ∂_i p`.
    pub fn dirac_left(&self, vars: DiracVars) -> Result<Self> {
        let top = match vars {
            DiracVars::Full => self.nvars,
            DiracVars::Leading => self.nvars.saturating_sub(1),
        };
        if top > self.alg_dim {
            return Err(Error::DimensionMismatch(top, self.alg_dim));
        }
        let mut out = Self::zero(self.nvars, self.alg_dim);
        for i in 1..=top {
            let ei = Multivector::basis_vector(self.alg_dim, i)?;
            out = &out + &self.partial_derivative(i)?.left_mul(&ei);
        }
        Ok(out)
    }

    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.nvars, self.alg_dim);
        for i in 1..=self.nvars {
            out = &out + &self.partial_derivative_n(i, 2).expect("axis in range");
        }
        out
    }

    pub fn is_harmonic(&self) -> bool {
        self.laplacian().is_zero()
    }

    pub fn is_monogenic(&self) -> Result<bool> {
        Ok(self.dirac_left(DiracVars::Full)?.is_zero())
    }

    /// Cauchy-Kovalevskaya extension `Σ_l (x_m e_m ∂̲)^l p / l!` of a
    /// polynomial in `x_1..x_{m-1}` to `ℝ^m`.
    pub fn ck_extension(&self) -> Result<Self> {
        let m = self.nvars + 1;
        if self.alg_dim < m {
            return Err(Error::DimensionMismatch(m, self.alg_dim));
        }
        let base = self.embed(m, self.alg_dim)?;
        let xm = Self::var(m, self.alg_dim, m)?;
        let em = Multivector::basis_vector(self.alg_dim, m)?;
        let mut sum = base.clone();
        let mut term = base;
        let mut l = 1i64;
        loop {
            term = (&xm * &term.dirac_left(DiracVars::Leading)?).left_mul(&em).scale_rational(&rat(1, l));
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
            l += 1;
        }
        Ok(sum)
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<Multivector> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(point.len(), self.nvars));
        }
        let mut acc = Multivector::zero(self.alg_dim);
        for (e, c) in &self.terms {
            let mut v = GaussianRational::one();
            for (x, &a) in point.iter().zip(&e.0) {
                for _ in 0..a {
                    v = &v * x;
                }
            }
            acc = &acc + &c.scale(&v);
        }
        Ok(acc)
    }

    /// Coordinates of the polynomial in the basis `x^α e_B` (real and
    /// imaginary parts together as one complex entry), listed for the
    /// given monomials and blades.
    pub fn coordinates(&self, monomials: &[ExponentVector], blades: &[BladeIndex]) -> Vec<GaussianRational> {
        let mut out = Vec::with_capacity(monomials.len() * blades.len());
        for e in monomials {
            let c = self.terms.get(e);
            for b in blades {
                out.push(c.map_or_else(GaussianRational::zero, |c| c.coeff(*b)));
            }
        }
        out
    }

    /// Every blade of the coefficient algebra.
    pub fn all_blades(&self) -> Vec<BladeIndex> {
        (0..1u32 << self.alg_dim).map(BladeIndex::from_bits).collect()
    }
}

fn check_axis(axis: usize, nvars: usize) -> Result<()> {
    if axis == 0 || axis > nvars {
        return Err(Error::AxisOutOfRange { axis, nvars });
    }
    Ok(())
}

impl Add<&CliffPoly> for &CliffPoly {
    type Output = CliffPoly;
    fn add(self, o: &CliffPoly) -> CliffPoly {
        self.check_same(o).expect("polynomial dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub<&CliffPoly> for &CliffPoly {
    type Output = CliffPoly;
    fn sub(self, o: &CliffPoly) -> CliffPoly {
        self + &(-o)
    }
}

impl Neg for &CliffPoly {
    type Output = CliffPoly;
    fn neg(self) -> CliffPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Mul<&CliffPoly> for &CliffPoly {
    type Output = CliffPoly;
    /// Panics on dimension mismatch; see [`CliffPoly::poly_mul`].
    fn mul(self, o: &CliffPoly) -> CliffPoly {
        self.poly_mul(o).expect("polynomial dimension mismatch")
    }
}

/// Prints in the expression grammar accepted by the CLI parser, one atom per
/// (monomial, blade, real/imaginary part).
impl fmt::Display for CliffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            for (b, z) in c.sorted_terms() {
                for (part, imaginary) in [(&z.re, false), (&z.im, true)] {
                    if part.is_zero() {
                        continue;
                    }
                    let negative = part.is_negative();
                    if first {
                        if negative {
                            f.write_str("-")?;
                        }
                    } else {
                        f.write_str(if negative { " - " } else { " + " })?;
                    }
                    first = false;
                    let mut factors: Vec<String> = Vec::new();
                    let mag = part.abs();
                    if !mag.is_one() {
                        factors.push(format_rational(&mag));
                    }
                    if imaginary {
                        factors.push("i".into());
                    }
                    if b != BladeIndex::SCALAR {
                        factors.push(b.to_string());
                    }
                    for (idx, &a) in e.0.iter().enumerate() {
                        match a {
                            0 => {}
                            1 => factors.push(format!("x{}", idx + 1)),
                            _ => factors.push(format!("x{}^{}", idx + 1, a)),
                        }
                    }
                    if factors.is_empty() {
                        factors.push("1".into());
                    }
                    f.write_str(&factors.join("*"))?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CliffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffPoly[{} vars, C_{}]({})", self.nvars, self.alg_dim, self)
    }
}

/// `x̲ e_m = (x_1 e_1 + ... + x_{m-1} e_{m-1}) e_m` in `m` variables.
pub fn xbar_em(m: usize, alg_dim: usize) -> Result<CliffPoly> {
    let em = Multivector::basis_vector(alg_dim, m)?;
    let mut out = CliffPoly::zero(m, alg_dim);
    for i in 1..m {
        let coeff = &Multivector::basis_vector(alg_dim, i)? * &em;
        out.add_term(ExponentVector::unit(m, i), coeff);
    }
    Ok(out)
}

/// `x_1 - e_12 x_2` in `nvars` variables.
pub fn x1_minus_e12_x2(nvars: usize, alg_dim: usize) -> Result<CliffPoly> {
    let e12 = Multivector::blade(alg_dim, &[1, 2])?;
    let mut out = CliffPoly::var(nvars, alg_dim, 1)?;
    out.add_term(ExponentVector::unit(nvars, 2), -&e12);
    Ok(out)
}

/// `x_1 - s·i x_2` in `nvars` variables (scalar valued).
pub fn x1_minus_s_i_x2(nvars: usize, alg_dim: usize, s: Sign) -> Result<CliffPoly> {
    let mut out = CliffPoly::var(nvars, alg_dim, 1)?;
    out.add_term(ExponentVector::unit(nvars, 2), Multivector::scalar(alg_dim, GaussianRational::new(int(0), int(-s.as_i64()))));
    Ok(out)
}
