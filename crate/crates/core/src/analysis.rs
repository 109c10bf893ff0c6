//! Exact inner products, generalized Taylor expansion and the brute-force
//! dimension oracle.
//!
//! L² values on the unit ball are `c · π^{⌊m/2⌋}` with `c` exact, so zero
//! tests never touch floating point. The Monte Carlo estimator at the bottom
//! is a floating-point cross-check only.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::bases::{harmonic_element, harmonic_labels, monogenic_element_in, monogenic_labels, HarmLabel, Label, MonoLabel};
use crate::clifford::{spinor_algebra_dim, BladeIndex, Multivector, SpinLabel, SpinorSpace};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::poly::{CliffPoly, ExponentVector};
use crate::scalars::{factorial, GaussianRational, Rational};
use crate::Sign;

/// `coeff · π^{⌊m/2⌋}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactBallValue {
    pub m: usize,
    pub coeff: Multivector,
}

impl ExactBallValue {
    pub fn pi_power(&self) -> u32 {
        (self.m / 2) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Floating-point value of one blade component.
    pub fn approx(&self, blade: BladeIndex) -> (f64, f64) {
        let (re, im) = self.coeff.coeff(blade).to_f64_pair();
        let pi = std::f64::consts::PI.powi(self.pi_power() as i32);
        (re * pi, im * pi)
    }
}

/// `Γ(a + 1/2) / √π = (2a)! / (4^a a!)`.
fn gamma_half_over_sqrt_pi(a: u32) -> Rational {
    Rational::new(factorial(2 * a), (BigInt::one() << (2 * a)) * factorial(a))
}

/// Rational coefficient of `∫_{B_m} x^α dλ = coeff · π^{⌊m/2⌋}`.
///
/// `∫_B x^α = Π Γ((α_i+1)/2) / Γ((|α|+m)/2 + 1)` for even `α`; the `√π`
/// factors pair up to `π^{⌊m/2⌋}`.
pub fn ball_monomial_coeff(alpha: &[u32]) -> Rational {
    if alpha.iter().any(|a| a % 2 == 1) {
        return Rational::zero();
    }
    let m = alpha.len() as u32;
    let numer = alpha.iter().fold(Rational::one(), |acc, &a| acc * gamma_half_over_sqrt_pi(a / 2));
    let total = alpha.iter().sum::<u32>() + m;
    // Γ(total/2 + 1)
    let denom = if total.is_multiple_of(2) {
        Rational::from_integer(factorial(total / 2))
    } else {
        gamma_half_over_sqrt_pi(total.div_ceil(2))
    };
    numer / denom
}

pub fn monomial_ball_integral(m: usize, alpha: &ExponentVector) -> Result<ExactBallValue> {
    if alpha.len() != m {
        return Err(Error::DimensionMismatch(alpha.len(), m));
    }
    Ok(ExactBallValue { m, coeff: Multivector::rational(m, ball_monomial_coeff(&alpha.0)) })
}

fn check_pair(p: &CliffPoly, q: &CliffPoly) -> Result<()> {
    if p.nvars() != q.nvars() {
        return Err(Error::DimensionMismatch(p.nvars(), q.nvars()));
    }
    if p.alg_dim() != q.alg_dim() {
        return Err(Error::DimensionMismatch(p.alg_dim(), q.alg_dim()));
    }
    Ok(())
}

/// `(P, Q) = ∫_{B_m} P̄ Q dλ`.
pub fn l2_inner(p: &CliffPoly, q: &CliffPoly) -> Result<ExactBallValue> {
    check_pair(p, q)?;
    let m = p.nvars();
    let mut cache: HashMap<ExponentVector, Rational> = HashMap::new();
    let mut acc = Multivector::zero(p.alg_dim());
    let conj: Vec<(&ExponentVector, Multivector)> = p.terms().map(|(e, c)| (e, c.conjugate())).collect();
    for (ea, ca) in &conj {
        for (eb, cb) in q.terms() {
            if ea.0.iter().zip(&eb.0).any(|(a, b)| (a + b) % 2 == 1) {
                continue;
            }
            let e = ea.add(eb);
            let w = cache.entry(e).or_insert_with_key(|e| ball_monomial_coeff(&e.0)).clone();
            acc = &acc + &(ca * cb).scale_rational(&w);
        }
    }
    Ok(ExactBallValue { m, coeff: acc })
}

/// Fischer pairing `Σ_α α! · ā_α b_α`.
pub fn fischer_inner(p: &CliffPoly, q: &CliffPoly) -> Result<Multivector> {
    check_pair(p, q)?;
    let mut acc = Multivector::zero(p.alg_dim());
    for (e, a) in p.terms() {
        let b = q.coeff(e);
        if b.is_zero() {
            continue;
        }
        let weight = e.0.iter().fold(BigInt::one(), |w, &x| w * factorial(x));
        acc = &acc + &(&a.conjugate() * &b).scale_rational(&Rational::from_integer(weight));
    }
    Ok(acc)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TaylorKind {
    Harmonic,
    Clifford,
    Spinor,
}

/// The lowest-order operator of an Appell derivative chain.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PlaneOperator {
    /// `∂_± = (∂_1 ± i ∂_2) / 2`
    Pm(Sign),
    /// `∂_12 = (∂_1 + e_12 ∂_2) / 2`
    D12,
}

/// Applies `op^{k_2} ∂_{x_3}^{k_3-k_2} ··· ∂_{x_m}^{k-k_{m-1}}` where `levels`
/// is `(k_{m-1}, ..., k_2)`.
pub fn appell_chain(p: &CliffPoly, k: u32, levels: &[u32], op: PlaneOperator) -> Result<CliffPoly> {
    let m = levels.len() + 2;
    if p.nvars() != m {
        return Err(Error::DimensionMismatch(p.nvars(), m));
    }
    let mut q = p.clone();
    let mut upper = k;
    for (idx, &lower) in levels.iter().enumerate() {
        let axis = m - idx;
        q = q.partial_derivative_n(axis, upper.checked_sub(lower).ok_or_else(|| Error::InvalidLabel {
            label: format!("{levels:?}"),
            m,
            k,
        })?)?;
        upper = lower;
    }
    for _ in 0..upper {
        if q.is_zero() {
            break;
        }
        q = match op {
            PlaneOperator::Pm(s) => q.d_pm(s)?,
            PlaneOperator::D12 => q.d_12()?,
        };
    }
    Ok(q)
}

fn harm_levels(mu: &HarmLabel) -> Vec<u32> {
    mu.chain.iter().map(|c| c.unsigned_abs() as u32).collect()
}

/// Index of one Taylor coefficient: degree, Gelfand-Tsetlin label and, for
/// spinor expansions, the spinor label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TaylorKey {
    pub k: u32,
    pub mu: Label,
    pub nu: Option<SpinLabel>,
}

/// Nonzero generalized Taylor coefficients of a polynomial.
///
/// Harmonic and spinor coefficients are complex scalars stored as scalar
/// multivectors; Clifford coefficients multiply basis elements on the right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TaylorTable {
    pub kind: TaylorKind,
    pub m: usize,
    pub alg_dim: usize,
    pub chirality: Sign,
    pub entries: BTreeMap<TaylorKey, Multivector>,
}

impl TaylorTable {
    pub fn new(kind: TaylorKind, m: usize, alg_dim: usize, chirality: Sign) -> Self {
        Self { kind, m, alg_dim, chirality, entries: BTreeMap::new() }
    }

    pub fn get(&self, key: &TaylorKey) -> Multivector {
        self.entries.get(key).cloned().unwrap_or_else(|| Multivector::zero(self.alg_dim))
    }
}

/// Where an expansion happens: dimension, kind and (for spinors) chirality.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TaylorContext {
    pub kind: TaylorKind,
    pub m: usize,
    pub chirality: Sign,
}

impl TaylorContext {
    pub fn new(kind: TaylorKind, m: usize) -> Self {
        Self { kind, m, chirality: Sign::Plus }
    }

    pub fn spinor(m: usize, chirality: Sign) -> Self {
        Self { kind: TaylorKind::Spinor, m, chirality }
    }
}

fn k_factorial_inv(k: u32) -> Rational {
    Rational::new(BigInt::one(), factorial(k))
}

fn check_taylor_input(g: &CliffPoly, ctx: &TaylorContext) -> Result<Option<SpinorSpace>> {
    let m = ctx.m;
    if m < 3 {
        return Err(Error::InvalidDimension(m, "Taylor expansion needs m >= 3"));
    }
    if g.nvars() != m {
        return Err(Error::DimensionMismatch(g.nvars(), m));
    }
    match ctx.kind {
        TaylorKind::Harmonic => {
            if !g.is_scalar() {
                return Err(Error::NotScalar);
            }
            if !g.is_harmonic() {
                return Err(Error::NotHarmonic);
            }
            Ok(None)
        }
        TaylorKind::Clifford => {
            if g.alg_dim() < m {
                return Err(Error::DimensionMismatch(m, g.alg_dim()));
            }
            if !g.is_monogenic()? {
                return Err(Error::NotMonogenic);
            }
            Ok(None)
        }
        TaylorKind::Spinor => {
            let space = SpinorSpace::new(m, ctx.chirality)?;
            if g.alg_dim() != space.algebra_dim() {
                return Err(Error::DimensionMismatch(g.alg_dim(), space.algebra_dim()));
            }
            if !g.is_monogenic()? {
                return Err(Error::NotMonogenic);
            }
            Ok(Some(space))
        }
    }
}

/// `(1/k!) · chain g |_{x=0}` for a `k`-homogeneous `g`.
fn chain_value(gk: &CliffPoly, k: u32, levels: &[u32], op: PlaneOperator) -> Result<Multivector> {
    Ok(appell_chain(gk, k, levels, op)?.constant_term().scale_rational(&k_factorial_inv(k)))
}

/// The derivative formulas evaluated literally: for every `k` and label,
/// `(1/k!) ∂^{k_2} ∂_{x_3}^{k_3-k_2} ··· ∂_{x_m}^{k-k_{m-1}} g |_{x=0}`, with
/// `∂_±` on spinor components chosen by the last sign of `ν`.
///
/// These are the Taylor coefficients only in `m = 3`. For `m >= 4` a chain
/// also detects basis elements with dominated labels (for instance
/// `∂_{x_3} f_{1,(0,0)} = e_34 / 3` in `ℝ^4`); [`taylor_expand`] removes that
/// unitriangular mixing.
pub fn raw_taylor_values(g: &CliffPoly, ctx: &TaylorContext) -> Result<TaylorTable> {
    let space = check_taylor_input(g, ctx)?;
    let m = ctx.m;
    let top = g.degree().unwrap_or(0);
    let mut table = TaylorTable::new(ctx.kind, m, g.alg_dim(), ctx.chirality);
    let mut put = |key: TaylorKey, t: Multivector| {
        if !t.is_zero() {
            table.entries.insert(key, t);
        }
    };
    match &space {
        None => {
            for k in 0..=top {
                let gk = g.homogeneous_part(k);
                if gk.is_zero() {
                    continue;
                }
                if ctx.kind == TaylorKind::Harmonic {
                    for mu in harmonic_labels(m, k) {
                        let t = chain_value(&gk, k, &harm_levels(&mu), PlaneOperator::Pm(mu.sign()))?;
                        put(TaylorKey { k, mu: Label::Harmonic(mu), nu: None }, t);
                    }
                } else {
                    for mu in monogenic_labels(m, k) {
                        let t = chain_value(&gk, k, &mu.chain, PlaneOperator::D12)?;
                        put(TaylorKey { k, mu: Label::Monogenic(mu), nu: None }, t);
                    }
                }
            }
        }
        Some(space) => {
            for (nu, gnu) in spinor_component_polys(g, space)? {
                let op = PlaneOperator::Pm(nu.last().unwrap_or(Sign::Plus));
                for k in 0..=top {
                    let gk = gnu.homogeneous_part(k);
                    if gk.is_zero() {
                        continue;
                    }
                    for mu in monogenic_labels(m, k) {
                        let t = chain_value(&gk, k, &mu.chain, op)?;
                        put(TaylorKey { k, mu: Label::Monogenic(mu), nu: Some(nu.clone()) }, t);
                    }
                }
            }
        }
    }
    Ok(table)
}

fn dominates(upper: &[u32], lower: &[u32]) -> bool {
    upper.iter().zip(lower).all(|(a, b)| a >= b)
}

/// Solves `raw_{μ'} = Σ_μ A_{μ'μ} t_μ` where `A_{μ'μ}` is the chain of `μ'`
/// applied to the basis element of `μ`. `A` has unit diagonal and vanishes
/// unless the levels of `μ'` dominate those of `μ`, so labels are processed
/// by increasing level sum.
fn unmix_level(
    labels: Vec<(Label, Vec<u32>)>,
    raw: &BTreeMap<Label, Multivector>,
    alg: usize,
    basis: impl Fn(&Label) -> Result<CliffPoly>,
    chain: impl Fn(&CliffPoly, &Label) -> Result<Multivector>,
) -> Result<BTreeMap<Label, Multivector>> {
    let mut order = labels;
    order.sort_by_key(|(_, lv)| lv.iter().sum::<u32>());
    let mut solved: Vec<(Vec<u32>, CliffPoly, Multivector)> = Vec::new();
    let mut out = BTreeMap::new();
    for (mu, levels) in order {
        let mut t = raw.get(&mu).cloned().unwrap_or_else(|| Multivector::zero(alg));
        for (lower, element, tl) in &solved {
            if tl.is_zero() || lower == &levels || !dominates(&levels, lower) {
                continue;
            }
            let a = chain(element, &mu)?;
            t = &t - &(&a * tl);
        }
        let element = basis(&mu)?;
        if !t.is_zero() {
            out.insert(mu, t.clone());
        }
        solved.push((levels, element, t));
    }
    Ok(out)
}

/// Generalized Taylor coefficients of a polynomial `g`: harmonic
/// `g = Σ t h`, Clifford `g = Σ f t` (coefficients on the right) or spinor
/// `g = Σ t^ν f^ν`.
pub fn taylor_expand(g: &CliffPoly, ctx: &TaylorContext) -> Result<TaylorTable> {
    let raw = raw_taylor_values(g, ctx)?;
    let m = ctx.m;
    let alg = g.alg_dim();
    let top = g.degree().unwrap_or(0);
    // Spinor values are folded into Clifford ones, t_{k,μ} = Σ_ν t^ν_{k,μ} v^ν,
    // unmixed there and split again.
    let space = match ctx.kind {
        TaylorKind::Spinor => Some(SpinorSpace::new(m, ctx.chirality)?),
        _ => None,
    };
    let mut by_k: BTreeMap<u32, BTreeMap<Label, Multivector>> = BTreeMap::new();
    for (key, t) in &raw.entries {
        let folded = match (&space, &key.nu) {
            (Some(space), Some(nu)) => t * space.generator(nu)?,
            _ => t.clone(),
        };
        let slot = by_k.entry(key.k).or_default().entry(key.mu.clone()).or_insert_with(|| Multivector::zero(alg));
        *slot = &*slot + &folded;
    }
    let mut table = TaylorTable::new(ctx.kind, m, alg, ctx.chirality);
    for k in 0..=top {
        let Some(level_raw) = by_k.get(&k) else { continue };
        let solved = match ctx.kind {
            TaylorKind::Harmonic => unmix_level(
                harmonic_labels(m, k).into_iter().map(|mu| { let lv = harm_levels(&mu); (Label::Harmonic(mu), lv) }).collect(),
                level_raw,
                alg,
                |mu| match mu {
                    Label::Harmonic(mu) => harmonic_element(m, k, mu)?.embed(m, alg),
                    _ => unreachable!("harmonic labels only"),
                },
                |h, mu| match mu {
                    Label::Harmonic(mu) => chain_value(h, k, &harm_levels(mu), PlaneOperator::Pm(mu.sign())),
                    _ => unreachable!("harmonic labels only"),
                },
            )?,
            _ => unmix_level(
                monogenic_labels(m, k).into_iter().map(|mu| { let lv = mu.chain.clone(); (Label::Monogenic(mu), lv) }).collect(),
                level_raw,
                alg,
                |mu| match mu {
                    Label::Monogenic(mu) => monogenic_element_in(m, k, mu, alg),
                    _ => unreachable!("monogenic labels only"),
                },
                |f, mu| match mu {
                    Label::Monogenic(mu) => chain_value(f, k, &mu.chain, PlaneOperator::D12),
                    _ => unreachable!("monogenic labels only"),
                },
            )?,
        };
        for (mu, t) in solved {
            match &space {
                None => {
                    table.entries.insert(TaylorKey { k, mu, nu: None }, t);
                }
                Some(space) => {
                    for (nu, z) in space.components(&t)? {
                        if !z.is_zero() {
                            table.entries.insert(TaylorKey { k, mu: mu.clone(), nu: Some(nu) }, Multivector::scalar(alg, z));
                        }
                    }
                }
            }
        }
    }
    Ok(table)
}

/// Splits a spinor-valued polynomial into complex components, `g = Σ g^ν v^ν`.
pub fn spinor_component_polys(g: &CliffPoly, space: &SpinorSpace) -> Result<BTreeMap<SpinLabel, CliffPoly>> {
    let alg = g.alg_dim();
    let mut out: BTreeMap<SpinLabel, CliffPoly> =
        space.generators.keys().map(|nu| (nu.clone(), CliffPoly::zero(g.nvars(), alg))).collect();
    for (e, c) in g.terms() {
        for (nu, z) in space.components(c)? {
            if let Some(slot) = out.get_mut(&nu) {
                slot.add_term(e.clone(), Multivector::scalar(alg, z));
            }
        }
    }
    Ok(out)
}

/// Rebuilds `Σ h t`, `Σ f t` or `Σ t f^ν` from a table.
pub fn reconstruct(table: &TaylorTable) -> Result<CliffPoly> {
    let m = table.m;
    let alg = table.alg_dim;
    let unknown = |key: &TaylorKey| Error::UnknownLabel(format!("k = {}, mu = {}, nu = {:?}", key.k, key.mu, key.nu));
    let space = match table.kind {
        TaylorKind::Spinor => Some(SpinorSpace::new(m, table.chirality)?),
        _ => None,
    };
    let mut out = CliffPoly::zero(m, alg);
    for (key, t) in &table.entries {
        if t.dim() != alg {
            return Err(Error::DimensionMismatch(t.dim(), alg));
        }
        let term = match (table.kind, &key.mu, &key.nu) {
            (TaylorKind::Harmonic, Label::Harmonic(mu), None) => {
                let h = harmonic_element(m, key.k, mu).map_err(|_| unknown(key))?.embed(m, alg)?;
                h.right_mul(t)
            }
            (TaylorKind::Clifford, Label::Monogenic(mu), None) => {
                monogenic_element_in(m, key.k, mu, alg).map_err(|_| unknown(key))?.right_mul(t)
            }
            (TaylorKind::Spinor, Label::Monogenic(mu), Some(nu)) => {
                let space = space.as_ref().expect("spinor space built above");
                let v = space.generator(nu).map_err(|_| unknown(key))?;
                monogenic_element_in(m, key.k, mu, alg).map_err(|_| unknown(key))?.right_mul(v).left_mul(t)
            }
            _ => return Err(unknown(key)),
        };
        out = &out + &term;
    }
    Ok(out)
}

/// Checks `t_{k,μ}(g) = Σ_ν t^ν_{k,μ}(g) v^ν` for every `(k, μ)`.
pub fn coefficient_relation_check(g: &CliffPoly, m: usize, chirality: Sign) -> Result<bool> {
    let clifford = taylor_expand(g, &TaylorContext::new(TaylorKind::Clifford, m))?;
    let spinor = taylor_expand(g, &TaylorContext::spinor(m, chirality))?;
    let space = SpinorSpace::new(m, chirality)?;
    let alg = g.alg_dim();
    let mut rhs: BTreeMap<(u32, Label), Multivector> = BTreeMap::new();
    for (key, t) in &spinor.entries {
        let nu = key.nu.as_ref().ok_or_else(|| Error::UnknownLabel("spinor entry without nu".into()))?;
        let v = space.generator(nu)?;
        let slot = rhs.entry((key.k, key.mu.clone())).or_insert_with(|| Multivector::zero(alg));
        *slot = &*slot + &(t * v);
    }
    let lhs: BTreeMap<(u32, Label), Multivector> =
        clifford.entries.into_iter().map(|(key, t)| ((key.k, key.mu), t)).collect();
    Ok(lhs == rhs)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Space {
    Harmonic,
    Monogenic,
}

/// Kernel dimension of the Laplacian (scalar polynomials) or of the Dirac
/// operator (ℂ_m-valued polynomials) on `P_k(ℝ^m)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct KernelDimension {
    /// Dimension over ℂ.
    pub complex_dim: usize,
    /// Rank as a right ℂ_m-module (equals `complex_dim` for harmonics).
    pub module_rank: usize,
}

/// Brute-force kernel dimension by exact elimination on the monomial basis.
pub fn dimension_oracle(space: Space, m: usize, k: u32) -> Result<KernelDimension> {
    if m < 2 {
        return Err(Error::InvalidDimension(m, "dimension oracle needs m >= 2"));
    }
    let domain = ExponentVector::all_of_degree(m, k);
    if k == 0 {
        // Both operators kill constants.
        let d = match space {
            Space::Harmonic => 1,
            Space::Monogenic => 1 << m,
        };
        return Ok(KernelDimension { complex_dim: d, module_rank: 1 });
    }
    match space {
        Space::Harmonic => {
            let target = if k >= 2 { ExponentVector::all_of_degree(m, k - 2) } else { Vec::new() };
            let index: HashMap<&ExponentVector, usize> = target.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let mut rows = vec![vec![Rational::zero(); domain.len()]; target.len()];
            for (col, e) in domain.iter().enumerate() {
                for i in 0..m {
                    let a = e.0[i];
                    if a < 2 {
                        continue;
                    }
                    let mut t = e.clone();
                    t.0[i] -= 2;
                    rows[index[&t]][col] += Rational::from_integer(BigInt::from(a * (a - 1)));
                }
            }
            let d = domain.len() - rank(&rows);
            Ok(KernelDimension { complex_dim: d, module_rank: d })
        }
        Space::Monogenic => {
            let blades = 1usize << m;
            let target = ExponentVector::all_of_degree(m, k - 1);
            let index: HashMap<&ExponentVector, usize> = target.iter().enumerate().map(|(i, e)| (e, i)).collect();
            // The Dirac operator has real integer entries in the basis x^α e_B,
            // so its complex rank is its rational rank.
            let mut rows = vec![vec![Rational::zero(); domain.len() * blades]; target.len() * blades];
            for (di, e) in domain.iter().enumerate() {
                for b in 0..blades as u32 {
                    let col = di * blades + b as usize;
                    for i in 0..m {
                        let a = e.0[i];
                        if a == 0 {
                            continue;
                        }
                        let mut t = e.clone();
                        t.0[i] -= 1;
                        let (neg, blade) = BladeIndex::from_bits(1 << i).product(BladeIndex::from_bits(b));
                        let row = index[&t] * blades + blade.bits() as usize;
                        let v = Rational::from_integer(BigInt::from(a));
                        rows[row][col] += if neg { -v } else { v };
                    }
                }
            }
            let d = domain.len() * blades - rank(&rows);
            Ok(KernelDimension { complex_dim: d, module_rank: d / blades })
        }
    }
}

/// Linear rank of a family of polynomials over ℂ.
pub fn poly_rank(polys: &[CliffPoly]) -> usize {
    let mut monos: Vec<ExponentVector> = polys.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).collect();
    monos.sort();
    monos.dedup();
    let mut blades: Vec<BladeIndex> = polys.iter().flat_map(|p| p.terms().flat_map(|(_, c)| c.terms().map(|(b, _)| *b)).collect::<Vec<_>>()).collect();
    blades.sort();
    blades.dedup();
    let rows: Vec<Vec<GaussianRational>> = polys.iter().map(|p| p.coordinates(&monos, &blades)).collect();
    rank(&rows)
}

/// Which part of a Gram entry must vanish off the diagonal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GramCheck {
    FullMultivector,
    ScalarPart,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InnerProduct {
    L2,
    Fischer,
}

/// Outcome of an off-diagonal Gram sweep.
#[derive(Clone, Debug, Default)]
pub struct GramReport {
    pub pairs: usize,
    /// Off-diagonal pairs `(i, j)` violating the requested check.
    pub violations: Vec<(usize, usize)>,
    /// Pairs whose scalar part vanishes while the full multivector does not.
    pub scalar_only: Vec<(usize, usize)>,
    /// Diagonal entries with zero scalar part (should never happen).
    pub degenerate_diagonal: Vec<usize>,
}

impl GramReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.degenerate_diagonal.is_empty()
    }
}

/// Checks pairwise orthogonality of `elems` (upper triangle only; both inner
/// products are Hermitian).
pub fn gram_sweep(elems: &[CliffPoly], inner: InnerProduct, check: GramCheck) -> Result<GramReport> {
    let value = |p: &CliffPoly, q: &CliffPoly| -> Result<Multivector> {
        Ok(match inner {
            InnerProduct::L2 => l2_inner(p, q)?.coeff,
            InnerProduct::Fischer => fischer_inner(p, q)?,
        })
    };
    let mut report = GramReport::default();
    for i in 0..elems.len() {
        let d = value(&elems[i], &elems[i])?;
        if d.scalar_part().is_zero() {
            report.degenerate_diagonal.push(i);
        }
        for j in i + 1..elems.len() {
            report.pairs += 1;
            let g = value(&elems[i], &elems[j])?;
            if g.is_zero() {
                continue;
            }
            let scalar_zero = g.scalar_part().is_zero();
            if scalar_zero {
                report.scalar_only.push((i, j));
            }
            if check == GramCheck::FullMultivector || !scalar_zero {
                report.violations.push((i, j));
            }
        }
    }
    Ok(report)
}

/// Floating-point Monte Carlo estimate of one blade component of `(P, Q)`.
#[derive(Clone, Copy, Debug)]
pub struct McEstimate {
    pub blade: BladeIndex,
    pub mean_re: f64,
    pub se_re: f64,
    pub mean_im: f64,
    pub se_im: f64,
}

/// Estimates `∫_{B_m} P̄ Q` by uniform sampling of the cube `[-1, 1]^m`.
pub fn monte_carlo_l2<R: Rng>(p: &CliffPoly, q: &CliffPoly, samples: usize, rng: &mut R) -> Result<Vec<McEstimate>> {
    check_pair(p, q)?;
    let m = p.nvars();
    let integrand = &p.conjugate() * q;
    let mut blades: Vec<BladeIndex> = integrand.terms().flat_map(|(_, c)| c.terms().map(|(b, _)| *b).collect::<Vec<_>>()).collect();
    blades.sort();
    blades.dedup();
    // per blade: list of (exponents, re, im)
    let tables: Vec<Vec<(Vec<u32>, f64, f64)>> = blades
        .iter()
        .map(|b| {
            integrand
                .terms()
                .filter_map(|(e, c)| {
                    let z = c.coeff(*b);
                    (!z.is_zero()).then(|| {
                        let (re, im) = z.to_f64_pair();
                        (e.0.clone(), re, im)
                    })
                })
                .collect()
        })
        .collect();
    let mut sums = vec![[0.0f64; 4]; blades.len()];
    let mut point = vec![0.0f64; m];
    for _ in 0..samples {
        for x in point.iter_mut() {
            *x = rng.random_range(-1.0..1.0);
        }
        if point.iter().map(|x| x * x).sum::<f64>() > 1.0 {
            continue;
        }
        for (table, s) in tables.iter().zip(sums.iter_mut()) {
            let (mut re, mut im) = (0.0, 0.0);
            for (e, cr, ci) in table {
                let mono: f64 = e.iter().zip(&point).map(|(&a, x)| x.powi(a as i32)).product();
                re += cr * mono;
                im += ci * mono;
            }
            s[0] += re;
            s[1] += re * re;
            s[2] += im;
            s[3] += im * im;
        }
    }
    let n = samples as f64;
    let volume = 2f64.powi(m as i32);
    let stats = |sum: f64, sq: f64| {
        let mean = sum / n;
        let var = (sq / n - mean * mean).max(0.0);
        (volume * mean, volume * (var / n).sqrt())
    };
    Ok(blades
        .into_iter()
        .zip(sums)
        .map(|(blade, s)| {
            let (mean_re, se_re) = stats(s[0], s[1]);
            let (mean_im, se_im) = stats(s[2], s[3]);
            McEstimate { blade, mean_re, se_re, mean_im, se_im }
        })
        .collect())
}

/// Every `h_{k,μ}` with `k <= max_k`, paired with its label.
pub fn harmonic_basis_up_to(m: usize, max_k: u32) -> Result<Vec<(u32, HarmLabel, CliffPoly)>> {
    let mut out = Vec::new();
    for k in 0..=max_k {
        for mu in harmonic_labels(m, k) {
            let h = harmonic_element(m, k, &mu)?;
            out.push((k, mu, h));
        }
    }
    Ok(out)
}

/// Every `f_{k,μ}` with `k <= max_k` over ℂ_alg.
pub fn monogenic_basis_up_to(m: usize, max_k: u32, alg: usize) -> Result<Vec<(u32, MonoLabel, CliffPoly)>> {
    let mut out = Vec::new();
    for k in 0..=max_k {
        for mu in monogenic_labels(m, k) {
            let f = monogenic_element_in(m, k, &mu, alg)?;
            out.push((k, mu, f));
        }
    }
    Ok(out)
}

/// Every `f^ν_{k,μ}` with `k <= max_k`.
pub fn spinor_basis_up_to(space: &SpinorSpace, max_k: u32) -> Result<Vec<(u32, MonoLabel, SpinLabel, CliffPoly)>> {
    let mut out = Vec::new();
    for (k, mu, f) in monogenic_basis_up_to(space.m, max_k, spinor_algebra_dim(space.m))? {
        for (nu, v) in &space.generators {
            out.push((k, mu.clone(), nu.clone(), f.right_mul(v)));
        }
    }
    Ok(out)
}
