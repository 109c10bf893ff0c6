//! Gelfand-Tsetlin labels and the three basis families built from them:
//!
//! * `h_{k,μ}`, spherical harmonics, `μ = (k_{m-1}, ..., k_3, ±k_2)`;
//! * `f_{k,μ}`, ℂ_m-valued spherical monogenics, `μ = (k_{m-1}, ..., k_2)`;
//! * `f^ν_{k,μ} = f_{k,μ} v^ν`, spinor-valued spherical monogenics.
//!
//! Sign convention: a harmonic label with sign `s` carries the factor
//! `(x_1 - s·i x_2)^{k_2}` and is differentiated by `∂_s = (∂_1 + s·i ∂_2)/2`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::clifford::{BladeIndex, Multivector, SpinLabel, SpinorSpace};
use crate::error::{Error, Result};
use crate::factors::{embedding_factor_f_in, embedding_factor_x_in, FactorSpec};
use crate::linalg::{solve_columns, Solution};
use crate::poly::{x1_minus_e12_x2, x1_minus_s_i_x2, xbar_em, CliffPoly, ExponentVector};
use crate::scalars::GaussianRational;
use crate::Sign;

/// Harmonic label `(k_{m-1}, ..., k_3, s·k_2)`; the sign of `k_2` is stored in
/// the last entry and `±0` is canonically `0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HarmLabel {
    pub chain: Vec<i64>,
}

/// Monogenic label `(k_{m-1}, ..., k_2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoLabel {
    pub chain: Vec<u32>,
}

impl HarmLabel {
    pub fn new(chain: Vec<i64>) -> Self {
        Self { chain }
    }

    /// `k_r` for `2 <= r <= m - 1`.
    pub fn level(&self, r: usize) -> u32 {
        let m = self.chain.len() + 2;
        self.chain[m - 1 - r].unsigned_abs() as u32
    }

    pub fn sign(&self) -> Sign {
        if self.chain.last().copied().unwrap_or(0) < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn validate(&self, m: usize, k: u32) -> Result<()> {
        let bad = || Error::InvalidLabel { label: self.to_string(), m, k };
        if m < 3 || self.chain.len() != m - 2 {
            return Err(bad());
        }
        let (last, upper) = self.chain.split_last().expect("m >= 3");
        let mut prev = k as i64;
        for &c in upper.iter().chain(std::iter::once(&last.abs())) {
            if c < 0 || c > prev {
                return Err(bad());
            }
            prev = c;
        }
        Ok(())
    }
}

impl MonoLabel {
    pub fn new(chain: Vec<u32>) -> Self {
        Self { chain }
    }

    /// `k_r` for `2 <= r <= m - 1`.
    pub fn level(&self, r: usize) -> u32 {
        let m = self.chain.len() + 2;
        self.chain[m - 1 - r]
    }

    pub fn validate(&self, m: usize, k: u32) -> Result<()> {
        if m < 3 || self.chain.len() != m - 2 {
            return Err(Error::InvalidLabel { label: self.to_string(), m, k });
        }
        let mut prev = k;
        for &c in &self.chain {
            if c > prev {
                return Err(Error::InvalidLabel { label: self.to_string(), m, k });
            }
            prev = c;
        }
        Ok(())
    }

    /// The label of `f_{k-1,μ}` seen from `ℝ^{m-1}`: drops `k_{m-1}`.
    pub fn tail(&self) -> MonoLabel {
        MonoLabel { chain: self.chain[1..].to_vec() }
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for HarmLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.chain))
    }
}

impl fmt::Display for MonoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.chain))
    }
}

impl fmt::Debug for HarmLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl fmt::Debug for MonoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

fn parse_chain<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| Error::Parse(format!("invalid label entry {p:?}"))))
        .collect()
}

impl FromStr for HarmLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(HarmLabel { chain: parse_chain(s)? })
    }
}

impl FromStr for MonoLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(MonoLabel { chain: parse_chain(s)? })
    }
}

/// Serializes a degree together with its chain, `"k|chain"`.
pub fn format_indexed<L: fmt::Display>(k: u32, label: &L) -> String {
    format!("{k}|{label}")
}

/// Parses `"k|chain"`.
pub fn parse_indexed<L: FromStr<Err = Error>>(s: &str) -> Result<(u32, L)> {
    let (k, chain) = s.split_once('|').ok_or_else(|| Error::Parse(format!("label {s:?} lacks 'k|'")))?;
    let k = k.trim().parse().map_err(|_| Error::Parse(format!("invalid degree in {s:?}")))?;
    Ok((k, chain.parse()?))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LabelKind {
    Harmonic,
    Monogenic,
    Spinor,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Label {
    Harmonic(HarmLabel),
    Monogenic(MonoLabel),
    Spinor(SpinLabel),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Harmonic(l) => l.fmt(f),
            Label::Monogenic(l) => l.fmt(f),
            Label::Spinor(l) => l.fmt(f),
        }
    }
}

/// Weakly decreasing chains of `len` naturals bounded by `k`, lexicographic.
fn decreasing_chains(len: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for c in 0..=bound {
            cur.push(c);
            rec(len, c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, k, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Labels of `N^m_k`, lexicographic in the signed chain.
pub fn harmonic_labels(m: usize, k: u32) -> Vec<HarmLabel> {
    if m < 3 {
        return Vec::new();
    }
    let mut out: Vec<HarmLabel> = decreasing_chains(m - 2, k)
        .into_iter()
        .flat_map(|chain| {
            let last = *chain.last().expect("m >= 3") as i64;
            let signed: Vec<i64> = chain.iter().map(|&c| c as i64).collect();
            let mut variants = vec![HarmLabel { chain: signed.clone() }];
            if last != 0 {
                let mut neg = signed;
                *neg.last_mut().expect("nonempty") = -last;
                variants.push(HarmLabel { chain: neg });
            }
            variants
        })
        .collect();
    out.sort();
    out
}

/// Labels of `J^m_k`, lexicographic.
pub fn monogenic_labels(m: usize, k: u32) -> Vec<MonoLabel> {
    if m < 3 {
        return Vec::new();
    }
    decreasing_chains(m - 2, k).into_iter().map(MonoLabel::new).collect()
}

pub fn enumerate_labels(kind: LabelKind, m: usize, k: u32) -> Vec<Label> {
    match kind {
        LabelKind::Harmonic => harmonic_labels(m, k).into_iter().map(Label::Harmonic).collect(),
        LabelKind::Monogenic => monogenic_labels(m, k).into_iter().map(Label::Monogenic).collect(),
        LabelKind::Spinor => {
            if m < 3 {
                return Vec::new();
            }
            SpinLabel::enumerate(m).into_iter().map(Label::Spinor).collect()
        }
    }
}

/// `h_{k,μ} = (x_1 - s·i x_2)^{k_2} Π_{r=3..m} F^{(k_r - k_{r-1})}_{r,k_{r-1}}`,
/// scalar valued in `m` variables over ℂ_m.
pub fn harmonic_element(m: usize, k: u32, mu: &HarmLabel) -> Result<CliffPoly> {
    mu.validate(m, k)?;
    let alg = m;
    let level = |r: usize| if r == m { k } else { mu.level(r) };
    let mut out = x1_minus_s_i_x2(m, alg, mu.sign())?.pow(mu.level(2));
    for r in 3..=m {
        let spec = FactorSpec::new(r, level(r - 1), level(r) - level(r - 1))?;
        out = &out * &embedding_factor_f_in(spec, m, alg)?;
    }
    Ok(out)
}

/// `f_{k,μ} = X^{(k-k_{m-1})}_{m,k_{m-1}} ··· X^{(k_3-k_2)}_{3,k_2} (x_1 - e_12 x_2)^{k_2}`
/// in `m` variables over ℂ_{alg_dim}, `alg_dim >= m`, multiplied in this order.
pub fn monogenic_element_in(m: usize, k: u32, mu: &MonoLabel, alg_dim: usize) -> Result<CliffPoly> {
    mu.validate(m, k)?;
    if alg_dim < m {
        return Err(Error::DimensionMismatch(m, alg_dim));
    }
    let level = |r: usize| if r == m { k } else { mu.level(r) };
    let mut out = CliffPoly::one(m, alg_dim);
    for r in (3..=m).rev() {
        let spec = FactorSpec::new(r, level(r - 1), level(r) - level(r - 1))?;
        out = &out * &embedding_factor_x_in(spec, m, alg_dim)?;
    }
    Ok(&out * &x1_minus_e12_x2(m, alg_dim)?.pow(mu.level(2)))
}

pub fn monogenic_element(m: usize, k: u32, mu: &MonoLabel) -> Result<CliffPoly> {
    monogenic_element_in(m, k, mu, m)
}

/// `f^ν_{k,μ} = f_{k,μ} v^ν` with values in the realized spinor space.
pub fn spinor_element(space: &SpinorSpace, k: u32, mu: &MonoLabel, nu: &SpinLabel) -> Result<CliffPoly> {
    let v = space.generator(nu)?;
    Ok(monogenic_element_in(space.m, k, mu, space.algebra_dim())?.right_mul(v))
}

/// A ℂ-basis of `H_j(ℝ^dim)` (`dim >= 2`) as scalar polynomials in `dim`
/// variables over ℂ_alg.
pub fn harmonic_space_basis(dim: usize, j: u32, alg: usize) -> Result<Vec<CliffPoly>> {
    if dim == 2 {
        let signs: &[Sign] = if j == 0 { &[Sign::Plus] } else { &[Sign::Plus, Sign::Minus] };
        return signs.iter().map(|&s| Ok(x1_minus_s_i_x2(2, alg, s)?.pow(j))).collect();
    }
    harmonic_labels(dim, j).iter().map(|mu| harmonic_element(dim, j, mu)?.embed(dim, alg)).collect()
}

/// A right ℂ_alg-module basis of `M_j(ℝ^dim, ℂ_alg)` (`dim >= 2`).
pub fn monogenic_space_basis(dim: usize, j: u32, alg: usize) -> Result<Vec<CliffPoly>> {
    if dim == 2 {
        return Ok(vec![x1_minus_e12_x2(2, alg)?.pow(j)]);
    }
    monogenic_labels(dim, j).iter().map(|mu| monogenic_element_in(dim, j, mu, alg)).collect()
}

/// Expresses `target` in the span of `columns` through their coordinates on
/// the given monomials and blades; errors unless the solution exists and is unique.
fn solve_in_span(columns: &[CliffPoly], target: &CliffPoly, monomials: &[ExponentVector], blades: &[BladeIndex]) -> Result<Vec<GaussianRational>> {
    let cols: Vec<Vec<GaussianRational>> = columns.iter().map(|c| c.coordinates(monomials, blades)).collect();
    let rhs = target.coordinates(monomials, blades);
    match solve_columns(&cols, &rhs) {
        Solution::Unique(x) => Ok(x),
        Solution::Inconsistent => Err(Error::Decomposition("target lies outside the spanned space".into())),
        Solution::Underdetermined(_) => Err(Error::Decomposition("spanning set is linearly dependent".into())),
    }
}

/// Components `P_0, ..., P_k`, `P_j ∈ H_j(ℝ^{m-1})` in `m - 1` variables,
/// with `P = Σ_j F^{(k-j)}_{m,j} P_j`.
pub fn branch_decompose_harmonic(p: &CliffPoly, k: u32) -> Result<Vec<CliffPoly>> {
    let m = p.nvars();
    if m < 3 {
        return Err(Error::InvalidDimension(m, "branching needs m >= 3"));
    }
    if !p.is_scalar() {
        return Err(Error::NotScalar);
    }
    if !p.is_homogeneous(k) {
        return Err(Error::NotHomogeneous(k));
    }
    if !p.is_harmonic() {
        return Err(Error::NotHarmonic);
    }
    let alg = p.alg_dim();
    let mut columns = Vec::new();
    let mut owners = Vec::new();
    for j in 0..=k {
        let factor = embedding_factor_f_in(FactorSpec::new(m, j, k - j)?, m, alg)?;
        for b in harmonic_space_basis(m - 1, j, alg)? {
            columns.push(&factor * &b.embed(m, alg)?);
            owners.push((j, b));
        }
    }
    let coeffs = solve_in_span(&columns, p, &ExponentVector::all_of_degree(m, k), &[BladeIndex::SCALAR])?;
    let mut parts = vec![CliffPoly::zero(m - 1, alg); k as usize + 1];
    for ((j, b), c) in owners.into_iter().zip(coeffs) {
        if !c.is_zero() {
            parts[j as usize] = &parts[j as usize] + &b.scale(&c);
        }
    }
    Ok(parts)
}

/// Fischer decomposition `P = Σ_j (x̲ e_m)^{k-j} M_j` of a `k`-homogeneous
/// polynomial in `m - 1` variables over ℂ_alg (`alg >= m`); `M_j` monogenic.
pub fn fischer_decompose(p: &CliffPoly, k: u32) -> Result<Vec<(u32, CliffPoly)>> {
    let n = p.nvars();
    let m = n + 1;
    if n < 2 {
        return Err(Error::InvalidDimension(m, "Fischer decomposition needs m >= 3"));
    }
    let alg = p.alg_dim();
    if alg < m {
        return Err(Error::DimensionMismatch(m, alg));
    }
    if !p.is_homogeneous(k) {
        return Err(Error::NotHomogeneous(k));
    }
    let (columns, owners) = fischer_spanning_set(n, k, alg)?;
    let blades: Vec<BladeIndex> = (0..1u32 << alg).map(BladeIndex::from_bits).collect();
    let coeffs = solve_in_span(&columns, p, &ExponentVector::all_of_degree(n, k), &blades)?;
    let mut parts: Vec<(u32, CliffPoly)> = (0..=k).map(|j| (j, CliffPoly::zero(n, alg))).collect();
    for ((j, piece), c) in owners.into_iter().zip(coeffs) {
        if !c.is_zero() {
            let slot = &mut parts[j as usize].1;
            *slot = &*slot + &piece.scale(&c);
        }
    }
    Ok(parts)
}

pub type FischerSpanningSet = (Vec<CliffPoly>, Vec<(u32, CliffPoly)>);

/// The ℂ-spanning set `(x̲ e_m)^{k-j} f e_A` of `P_k(ℝ^{m-1}, ℂ_alg)`, with
/// each column's `(j, f e_A)`.
pub fn fischer_spanning_set(n: usize, k: u32, alg: usize) -> Result<FischerSpanningSet> {
    let m = n + 1;
    let xe = xbar_em(m, alg)?.restrict_vars(n)?;
    let mut columns = Vec::new();
    let mut owners = Vec::new();
    for j in 0..=k {
        let lift = xe.pow(k - j);
        for f in monogenic_space_basis(n, j, alg)? {
            for bits in 0..1u32 << alg {
                let ea = Multivector::from_terms(alg, [(BladeIndex::from_bits(bits), GaussianRational::from_int(1))])?;
                let piece = f.right_mul(&ea);
                columns.push(&lift * &piece);
                owners.push((j, piece));
            }
        }
    }
    Ok((columns, owners))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::scalars::{int, rat};

    fn x(m: usize, i: usize) -> CliffPoly {
        CliffPoly::var(m, m, i).unwrap()
    }

    #[test]
    fn label_enumeration() {
        let h = harmonic_labels(3, 1);
        assert_eq!(h.iter().map(|l| l.to_string()).collect::<Vec<_>>(), vec!["-1", "0", "1"]);
        assert_eq!(monogenic_labels(3, 0), vec![MonoLabel::new(vec![0])]);
        assert_eq!(enumerate_labels(LabelKind::Spinor, 4, 0).len(), 2);
        assert_eq!(harmonic_labels(4, 2).len(), 9);
        assert_eq!(monogenic_labels(4, 2).len(), 6);
    }

    #[test]
    fn label_parsing_and_validation() {
        let (k, l): (u32, HarmLabel) = parse_indexed("3|2,1,-1").unwrap();
        assert_eq!((k, l.chain.clone()), (3, vec![2, 1, -1]));
        assert_eq!(format_indexed(k, &l), "3|2,1,-1");
        assert_eq!(l.sign(), Sign::Minus);
        assert!(l.validate(5, 3).is_ok());
        assert!(l.validate(5, 1).is_err());
        assert!(HarmLabel::new(vec![1, 2]).validate(4, 3).is_err());
        assert!(MonoLabel::new(vec![2, 3]).validate(4, 3).is_err());
        assert!(parse_indexed::<MonoLabel>("3").is_err());
    }

    #[test]
    fn harmonic_examples() {
        let mu0 = HarmLabel::new(vec![0]);
        assert_eq!(harmonic_element(3, 1, &mu0).unwrap(), x(3, 3));
        let plus = HarmLabel::new(vec![1]);
        assert_eq!(harmonic_element(3, 1, &plus).unwrap(), x1_minus_s_i_x2(3, 3, Sign::Plus).unwrap());
        let h2 = harmonic_element(3, 2, &mu0).unwrap();
        assert_eq!(h2, &x(3, 3).pow(2) - &(&x(3, 1).pow(2) + &x(3, 2).pow(2)).scale_rational(&rat(1, 2)));
        assert!(harmonic_element(3, 1, &HarmLabel::new(vec![2])).is_err());
    }

    #[test]
    fn monogenic_examples() {
        let f11 = monogenic_element(3, 1, &MonoLabel::new(vec![1])).unwrap();
        assert_eq!(f11, x1_minus_e12_x2(3, 3).unwrap());
        let f10 = monogenic_element(3, 1, &MonoLabel::new(vec![0])).unwrap();
        assert_eq!(f10, &x(3, 3) + &xbar_em(3, 3).unwrap().scale_rational(&rat(1, 2)));
        let f21 = monogenic_element(3, 2, &MonoLabel::new(vec![1])).unwrap();
        assert_eq!(f21.partial_derivative(3).unwrap(), f11.scale_rational(&int(2)));
    }

    #[test]
    fn spinor_examples() {
        let space = SpinorSpace::new(4, Sign::Plus).unwrap();
        let plus: SpinLabel = "+".parse().unwrap();
        let v = space.generator(&plus).unwrap().clone();
        let f0 = spinor_element(&space, 0, &MonoLabel::new(vec![0, 0]), &plus).unwrap();
        assert_eq!(f0, CliffPoly::constant(4, v.clone()));
        let f1 = spinor_element(&space, 1, &MonoLabel::new(vec![1, 1]), &plus).unwrap();
        assert_eq!(f1, x1_minus_s_i_x2(4, 4, Sign::Plus).unwrap().right_mul(&v));
        assert!(f1.is_monogenic().unwrap());
    }

    #[test]
    fn branch_examples() {
        let comps = branch_decompose_harmonic(&x(3, 3), 1).unwrap();
        assert_eq!(comps[0], CliffPoly::one(2, 3));
        assert!(comps[1].is_zero());
        for k in 0..3 {
            let comps = branch_decompose_harmonic(&CliffPoly::zero(4, 4), k).unwrap();
            assert_eq!(comps.len(), k as usize + 1);
            assert!(comps.iter().all(CliffPoly::is_zero));
        }
        for mu in harmonic_labels(4, 3) {
            let h = harmonic_element(4, 3, &mu).unwrap();
            let comps = branch_decompose_harmonic(&h, 3).unwrap();
            for (j, c) in comps.iter().enumerate() {
                assert_eq!(c.is_zero(), j as u32 != mu.level(3), "{mu:?} at j = {j}");
            }
        }
        assert_eq!(branch_decompose_harmonic(&x(3, 1).pow(2), 2), Err(Error::NotHarmonic));
        assert_eq!(branch_decompose_harmonic(&x(3, 1), 2), Err(Error::NotHomogeneous(2)));
    }

    #[test]
    fn fischer_examples() {
        let f = x1_minus_e12_x2(2, 3).unwrap();
        let parts = fischer_decompose(&f, 1).unwrap();
        assert!(parts[0].1.is_zero());
        assert_eq!(parts[1].1, f);
        let xe = xbar_em(3, 3).unwrap().restrict_vars(2).unwrap();
        let parts = fischer_decompose(&xe, 1).unwrap();
        assert_eq!(parts[0].1, CliffPoly::one(2, 3));
        assert!(parts[1].1.is_zero());
        assert!(fischer_decompose(&(&xe + &CliffPoly::one(2, 3)), 1).is_err());
    }

    #[test]
    fn fischer_spanning_set_has_full_rank() {
        for (n, k) in [(2, 0), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let alg = n + 1;
            let (cols, _) = fischer_spanning_set(n, k, alg).unwrap();
            let monos = ExponentVector::all_of_degree(n, k);
            let blades: Vec<BladeIndex> = (0..1u32 << alg).map(BladeIndex::from_bits).collect();
            let rows: Vec<Vec<GaussianRational>> = cols.iter().map(|c| c.coordinates(&monos, &blades)).collect();
            assert_eq!(cols.len(), monos.len() << alg);
            assert_eq!(rank(&rows), monos.len() << alg, "n = {n}, k = {k}");
        }
    }

    #[test]
    fn fischer_parts_are_monogenic() {
        // x1^2 e3 + x2 x1 e1 in R^2, values in C_3
        let e = |i: &[usize]| Multivector::blade(3, i).unwrap();
        let x1 = CliffPoly::var(2, 3, 1).unwrap();
        let x2 = CliffPoly::var(2, 3, 2).unwrap();
        let p = &x1.pow(2).right_mul(&e(&[3])) + &(&x1 * &x2).left_mul(&e(&[1]));
        let parts = fischer_decompose(&p, 2).unwrap();
        let xe = xbar_em(3, 3).unwrap().restrict_vars(2).unwrap();
        let mut sum = CliffPoly::zero(2, 3);
        for (j, mj) in &parts {
            assert!(mj.is_monogenic().unwrap());
            assert!(mj.is_homogeneous(*j));
            sum = &sum + &(&xe.pow(2 - j) * mj);
        }
        assert_eq!(sum, p);
    }
}
