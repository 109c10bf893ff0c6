//! Named verifications behind `gtmono check`.

use clap::ValueEnum;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::SpaceArg;
use crate::analysis::{
    appell_chain, coefficient_relation_check, dimension_oracle, gram_sweep, harmonic_basis_up_to, monogenic_basis_up_to, poly_rank,
    spinor_basis_up_to, GramCheck, InnerProduct, PlaneOperator, Space,
};
use crate::bases::{harmonic_labels, monogenic_labels, monogenic_space_basis};
use crate::clifford::{Multivector, SpinorSpace};
use crate::error::Result;
use crate::factors::{embedding_factor_x_in, mu_constant, FactorSpec};
use crate::poly::{xbar_em, CliffPoly};
use crate::scalars::{factorial, rat, Rational};
use crate::Sign;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Appell,
    Orthogonality,
    Monogenicity,
    Ck,
    Dimensions,
    CoeffRelation,
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub property: String,
    pub space: String,
    pub m: usize,
    pub k: u32,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    pub diagnostics: Vec<String>,
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
    diagnostics: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self { checked: 0, failures: Vec::new(), diagnostics: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Runs `property` on every basis element of degree `<= k`.
pub fn run_check(property: Property, space: SpaceArg, m: usize, k: u32, chirality: Sign) -> Result<CheckOutcome> {
    let mut t = Tally::new();
    match property {
        Property::Appell => appell(&mut t, space, m, k, chirality)?,
        Property::Orthogonality => orthogonality(&mut t, space, m, k, chirality)?,
        Property::Monogenicity => monogenicity(&mut t, space, m, k, chirality)?,
        Property::Ck => ck(&mut t, m, k)?,
        Property::Dimensions => dimensions(&mut t, space, m, k, chirality)?,
        Property::CoeffRelation => coeff_relation(&mut t, m, k, chirality)?,
    }
    Ok(CheckOutcome {
        property: property.to_string(),
        space: space.to_string(),
        m,
        k,
        passed: t.failures.is_empty(),
        checked: t.checked,
        failures: t.failures,
        diagnostics: t.diagnostics,
    })
}

/// Chain value `k!` plus the ladder `∂_{x_m} b_k = k b_{k-1}` (or `0` when
/// `k = k_{m-1}`).
fn appell(t: &mut Tally, space: SpaceArg, m: usize, k: u32, chirality: Sign) -> Result<()> {
    let expect_const = |p: &CliffPoly, c: &Multivector| p.degree().unwrap_or(0) == 0 && p.constant_term() == *c;
    match space {
        SpaceArg::Harmonic => {
            let basis = harmonic_basis_up_to(m, k)?;
            for (kk, mu, h) in &basis {
                let levels: Vec<u32> = mu.chain.iter().map(|c| c.unsigned_abs() as u32).collect();
                let v = appell_chain(h, *kk, &levels, PlaneOperator::Pm(mu.sign()))?;
                t.expect(expect_const(&v, &Multivector::rational(m, Rational::from_integer(factorial(*kk)))), || format!("chain of h[{kk}|{mu}]"));
                let d = h.partial_derivative(m)?;
                let ok = if *kk == levels[0] {
                    d.is_zero()
                } else {
                    let lower = basis.iter().find(|(j, l, _)| *j == kk - 1 && l == mu).map(|(_, _, p)| p.clone());
                    lower.is_some_and(|lower| d == lower.scale_rational(&rat(*kk as i64, 1)))
                };
                t.expect(ok, || format!("ladder of h[{kk}|{mu}]"));
            }
        }
        SpaceArg::Clifford | SpaceArg::Spinor => {
            let alg = if space == SpaceArg::Spinor { crate::clifford::spinor_algebra_dim(m) } else { m };
            let basis = monogenic_basis_up_to(m, k, alg)?;
            for (kk, mu, f) in &basis {
                let lower = || basis.iter().find(|(j, l, _)| *j == kk - 1 && l == mu).map(|(_, _, p)| p.clone());
                if space == SpaceArg::Clifford {
                    let v = appell_chain(f, *kk, &mu.chain, PlaneOperator::D12)?;
                    t.expect(expect_const(&v, &Multivector::rational(alg, Rational::from_integer(factorial(*kk)))), || {
                        format!("chain of f[{kk}|{mu}]")
                    });
                    let d = f.partial_derivative(m)?;
                    let ok = if *kk == mu.chain[0] {
                        d.is_zero()
                    } else {
                        lower().is_some_and(|lower| d == lower.scale_rational(&rat(*kk as i64, 1)))
                    };
                    t.expect(ok, || format!("ladder of f[{kk}|{mu}]"));
                } else {
                    let spin = SpinorSpace::new(m, chirality)?;
                    for (nu, v) in &spin.generators {
                        let fnu = f.right_mul(v);
                        let op = PlaneOperator::Pm(nu.last().unwrap_or(Sign::Plus));
                        let c = appell_chain(&fnu, *kk, &mu.chain, op)?;
                        let target = v.scale_rational(&Rational::from_integer(factorial(*kk)));
                        t.expect(expect_const(&c, &target), || format!("chain of f[{kk}|{mu}|{nu}]"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn orthogonality(t: &mut Tally, space: SpaceArg, m: usize, k: u32, chirality: Sign) -> Result<()> {
    let (names, elems, inner, check): (Vec<String>, Vec<CliffPoly>, _, _) = match space {
        SpaceArg::Harmonic => {
            let b = harmonic_basis_up_to(m, k)?;
            (b.iter().map(|(k, mu, _)| format!("h[{k}|{mu}]")).collect(), b.into_iter().map(|x| x.2).collect(), InnerProduct::L2, GramCheck::FullMultivector)
        }
        SpaceArg::Clifford => {
            let b = monogenic_basis_up_to(m, k, m)?;
            (b.iter().map(|(k, mu, _)| format!("f[{k}|{mu}]")).collect(), b.into_iter().map(|x| x.2).collect(), InnerProduct::L2, GramCheck::FullMultivector)
        }
        SpaceArg::Spinor => {
            let b = spinor_basis_up_to(&SpinorSpace::new(m, chirality)?, k)?;
            (
                b.iter().map(|(k, mu, nu, _)| format!("f[{k}|{mu}|{nu}]")).collect(),
                b.into_iter().map(|x| x.3).collect(),
                InnerProduct::Fischer,
                GramCheck::ScalarPart,
            )
        }
    };
    let report = gram_sweep(&elems, inner, check)?;
    t.checked += report.pairs + elems.len();
    for (i, j) in &report.violations {
        t.failures.push(format!("({}, {}) != 0", names[*i], names[*j]));
    }
    for i in &report.degenerate_diagonal {
        t.failures.push(format!("({0}, {0}) has zero scalar part", names[*i]));
    }
    if !report.scalar_only.is_empty() {
        t.diagnostics.push(format!("{} off-diagonal pairs vanish only in the scalar part", report.scalar_only.len()));
    }
    Ok(())
}

fn monogenicity(t: &mut Tally, space: SpaceArg, m: usize, k: u32, chirality: Sign) -> Result<()> {
    match space {
        SpaceArg::Harmonic => {
            for (kk, mu, h) in harmonic_basis_up_to(m, k)? {
                t.expect(h.is_harmonic(), || format!("h[{kk}|{mu}] is not harmonic"));
            }
        }
        SpaceArg::Clifford => {
            for (kk, mu, f) in monogenic_basis_up_to(m, k, m)? {
                t.expect(f.is_monogenic()?, || format!("f[{kk}|{mu}] is not monogenic"));
            }
        }
        SpaceArg::Spinor => {
            let spin = SpinorSpace::new(m, chirality)?;
            for (kk, mu, nu, f) in spinor_basis_up_to(&spin, k)? {
                let in_space = f.terms().all(|(_, c)| spin.contains(c));
                t.expect(f.is_monogenic()? && in_space, || format!("f[{kk}|{mu}|{nu}] is not a spinor-valued monogenic"));
            }
        }
    }
    Ok(())
}

/// `CK((x̲ e_m)^a P) = μ^{(a)}_{m,j} X^{(a)}_{m,j} P` for `a + j <= k`.
fn ck(t: &mut Tally, m: usize, k: u32) -> Result<()> {
    let xe = xbar_em(m, m)?.restrict_vars(m - 1)?;
    for j in 0..=k {
        let basis = monogenic_space_basis(m - 1, j, m)?;
        for a in 0..=k - j {
            let spec = FactorSpec::new(m, j, a)?;
            let x = embedding_factor_x_in(spec, m, m)?;
            let mu = mu_constant(spec)?;
            let lift = xe.pow(a);
            for (idx, p) in basis.iter().enumerate() {
                let lhs = (&lift * p).ck_extension()?;
                let rhs = (&x * &p.embed(m, m)?).scale_rational(&mu);
                t.expect(lhs == rhs, || format!("CK identity a = {a}, j = {j}, element {idx}"));
            }
        }
    }
    Ok(())
}

fn dimensions(t: &mut Tally, space: SpaceArg, m: usize, k: u32, chirality: Sign) -> Result<()> {
    for kk in 0..=k {
        match space {
            SpaceArg::Harmonic => {
                let n = harmonic_labels(m, kk).len();
                let oracle = dimension_oracle(Space::Harmonic, m, kk)?.complex_dim;
                t.expect(n == oracle, || format!("|N| = {n} but dim H_{kk} = {oracle}"));
                let basis: Vec<CliffPoly> = harmonic_basis_up_to(m, kk)?.into_iter().filter(|x| x.0 == kk).map(|x| x.2).collect();
                t.expect(poly_rank(&basis) == n, || format!("degree {kk} harmonic basis is linearly dependent"));
            }
            SpaceArg::Clifford => {
                let n = monogenic_labels(m, kk).len();
                let oracle = dimension_oracle(Space::Monogenic, m, kk)?;
                t.expect(n == oracle.module_rank && oracle.complex_dim == n << m, || {
                    format!("|J| = {n} but the Dirac kernel has rank {} ({} complex)", oracle.module_rank, oracle.complex_dim)
                });
            }
            SpaceArg::Spinor => {
                let spin = SpinorSpace::new(m, chirality)?;
                let n = monogenic_labels(m, kk).len() * spin.generators.len();
                let basis: Vec<CliffPoly> = spinor_basis_up_to(&spin, kk)?.into_iter().filter(|x| x.0 == kk).map(|x| x.3).collect();
                let r = poly_rank(&basis);
                t.expect(r == n, || format!("degree {kk} spinor basis has rank {r}, expected {n}"));
            }
        }
    }
    Ok(())
}

/// Each basis element plus a few seeded random combinations.
fn coeff_relation(t: &mut Tally, m: usize, k: u32, chirality: Sign) -> Result<()> {
    let spin = SpinorSpace::new(m, chirality)?;
    let basis = spinor_basis_up_to(&spin, k)?;
    for (kk, mu, nu, f) in &basis {
        t.expect(coefficient_relation_check(f, m, chirality)?, || format!("f[{kk}|{mu}|{nu}]"));
    }
    let mut rng = StdRng::seed_from_u64(0x6774);
    for trial in 0..5 {
        let mut g = CliffPoly::zero(m, spin.algebra_dim());
        for (_, _, _, f) in &basis {
            let c = Rational::new(BigInt::from(rng.random_range(-5..=5)), BigInt::from(rng.random_range(1..=4)));
            g = &g + &f.scale_rational(&c);
        }
        t.expect(coefficient_relation_check(&g, m, chirality)?, || format!("random combination {trial}"));
    }
    Ok(())
}
