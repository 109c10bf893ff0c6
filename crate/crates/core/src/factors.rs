//! Gegenbauer polynomials and the embedding factors that lift basis elements
//! from `ℝ^{m-1}` to `ℝ^m`.
//!
//! `F^{(a)}_{m,j}` is `a`-homogeneous, and `F^{(a)}_{m,j} P` is harmonic in
//! `ℝ^m` for every `P ∈ H_j(ℝ^{m-1})`. The radicals in
//! `|x|^a C^ν_a(x_m / |x|)` cancel by parity: each `(x_m/|x|)^{a-2i}` term
//! becomes `x_m^{a-2i} (x_1² + ... + x_m²)^i`.

use num_traits::{One, Zero};

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::poly::{xbar_em, CliffPoly, ExponentVector};
use crate::scalars::{factorial, int, pochhammer, rat, Rational};

/// Indices of `F^{(a)}_{m,j}` and `X^{(a)}_{m,j}`: dimension `m`, lower
/// degree `j`, step `a = k - j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FactorSpec {
    pub m: usize,
    pub j: u32,
    pub a: u32,
}

impl FactorSpec {
    pub fn new(m: usize, j: u32, a: u32) -> Result<Self> {
        let spec = FactorSpec { m, j, a };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 3 {
            return Err(Error::InvalidFactorSpec { m: self.m, j: self.j, a: self.a });
        }
        Ok(())
    }

    /// The Gegenbauer parameter `m/2 + j - 1`.
    pub fn nu(&self) -> Rational {
        rat(self.m as i64, 2) + int(self.j as i64 - 1)
    }
}

/// A univariate polynomial with rational coefficients, `coeffs[p]` of `z^p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatPoly {
    pub coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * z + c)
    }

    pub fn coeff(&self, p: usize) -> Rational {
        self.coeffs.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }
}

/// `C^ν_k(z) = Σ_i (-1)^i (ν)_{k-i} (2z)^{k-2i} / (i! (k-2i)!)`.
pub fn gegenbauer(nu: &Rational, k: u32) -> RatPoly {
    let mut coeffs = vec![Rational::zero(); k as usize + 1];
    for i in 0..=k / 2 {
        let p = k - 2 * i;
        let denom = Rational::from_integer(factorial(i) * factorial(p));
        let mut c = pochhammer(nu, k - i) * Rational::from_integer(num_bigint::BigInt::one() << p) / denom;
        if i % 2 == 1 {
            c = -c;
        }
        coeffs[p as usize] = c;
    }
    RatPoly { coeffs }
}

/// `C^ν_k(0)`.
pub fn gegenbauer_at_zero(nu: &Rational, k: u32) -> Rational {
    gegenbauer(nu, k).coeff(0)
}

/// `|x|²` restricted to the first `m` of `nvars` variables.
fn radius_squared(m: usize, nvars: usize, alg_dim: usize) -> CliffPoly {
    let mut r2 = CliffPoly::zero(nvars, alg_dim);
    for l in 1..=m {
        let mut e = ExponentVector::zero(nvars);
        e.0[l - 1] = 2;
        r2.add_term(e, Multivector::one(alg_dim));
    }
    r2
}

/// `F^{(a)}_{m,j}` in `nvars >= m` variables with coefficients in ℂ_{alg_dim}.
pub fn embedding_factor_f_in(spec: FactorSpec, nvars: usize, alg_dim: usize) -> Result<CliffPoly> {
    spec.validate()?;
    if nvars < spec.m {
        return Err(Error::DimensionMismatch(spec.m, nvars));
    }
    let FactorSpec { m, j, a } = spec;
    let scale = pochhammer(&int(j as i64 + 1), a) / pochhammer(&int(m as i64 + 2 * j as i64 - 2), a);
    let c = gegenbauer(&spec.nu(), a);
    let r2 = radius_squared(m, nvars, alg_dim);
    let xm = CliffPoly::var(nvars, alg_dim, m)?;
    let mut out = CliffPoly::zero(nvars, alg_dim);
    for i in 0..=a / 2 {
        let p = a - 2 * i;
        let term = &xm.pow(p) * &r2.pow(i);
        out = &out + &term.scale_rational(&(c.coeff(p as usize) * &scale));
    }
    Ok(out)
}

/// `F^{(a)}_{m,j}` as a scalar polynomial in `m` variables over ℂ_m.
pub fn embedding_factor_f(spec: FactorSpec) -> Result<CliffPoly> {
    embedding_factor_f_in(spec, spec.m, spec.m)
}

/// `X^{(a)}_{m,j} = F^{(a)}_{m,j} + (j+1)/(m+2j-1) · F^{(a-1)}_{m,j+1} · x̲ e_m`
/// in `nvars >= m` variables over ℂ_{alg_dim}, `alg_dim >= m`.
pub fn embedding_factor_x_in(spec: FactorSpec, nvars: usize, alg_dim: usize) -> Result<CliffPoly> {
    let f = embedding_factor_f_in(spec, nvars, alg_dim)?;
    if spec.a == 0 {
        return Ok(f);
    }
    if alg_dim < spec.m {
        return Err(Error::DimensionMismatch(spec.m, alg_dim));
    }
    let FactorSpec { m, j, a } = spec;
    let lower = embedding_factor_f_in(FactorSpec { m, j: j + 1, a: a - 1 }, nvars, alg_dim)?;
    let ratio = rat(j as i64 + 1, m as i64 + 2 * j as i64 - 1);
    let xe = xbar_em(m, alg_dim)?.embed(nvars, alg_dim)?;
    Ok(&f + &(&lower * &xe).scale_rational(&ratio))
}

pub fn embedding_factor_x(spec: FactorSpec) -> Result<CliffPoly> {
    embedding_factor_x_in(spec, spec.m, spec.m)
}

/// `(-1)^l / C^{ν}_{2l}(0)` for `a = 2l` and
/// `(-1)^l (m+2j+2l-1)/(m+2j-2) / C^{ν+1}_{2l}(0)` for `a = 2l+1`.
///
/// This is the CK constant of the embedding factor built from Gegenbauer
/// polynomials without the `(j+1)_a / (m+2j-2)_a` prefactor that `F` carries.
pub fn mu_constant_gegenbauer(spec: FactorSpec) -> Result<Rational> {
    spec.validate()?;
    let FactorSpec { m, j, a } = spec;
    let l = a / 2;
    let sign = if l % 2 == 0 { int(1) } else { int(-1) };
    if a % 2 == 0 {
        Ok(sign / gegenbauer_at_zero(&spec.nu(), 2 * l))
    } else {
        let (m, j, l) = (m as i64, j as i64, l as i64);
        let ratio = rat(m + 2 * j + 2 * l - 1, m + 2 * j - 2);
        Ok(sign * ratio / gegenbauer_at_zero(&(spec.nu() + int(1)), 2 * l as u32))
    }
}

/// The constant `μ^{(a)}_{m,j}` with
/// `CK((x̲ e_m)^a P) = μ^{(a)}_{m,j} X^{(a)}_{m,j} P` for the normalized
/// factors of this crate: [`mu_constant_gegenbauer`] times
/// `(m+2j-2)_a / (j+1)_a`. The two agree for `m = 3, j = 0`.
pub fn mu_constant(spec: FactorSpec) -> Result<Rational> {
    let FactorSpec { m, j, a } = spec;
    let scale = pochhammer(&int(m as i64 + 2 * j as i64 - 2), a) / pochhammer(&int(j as i64 + 1), a);
    Ok(mu_constant_gegenbauer(spec)? * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{x1_minus_s_i_x2, DiracVars};
    use crate::Sign;

    fn x(m: usize, i: usize) -> CliffPoly {
        CliffPoly::var(m, m, i).unwrap()
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer(&rat(5, 2), 0).coeffs, vec![int(1)]);
        assert_eq!(gegenbauer(&rat(1, 2), 1).coeffs, vec![int(0), int(1)]);
        // Legendre P_2 = (3z² - 1)/2
        assert_eq!(gegenbauer(&rat(1, 2), 2).coeffs, vec![rat(-1, 2), int(0), rat(3, 2)]);
        for l in 0..5u32 {
            for nu in [rat(1, 2), int(1), rat(3, 2), int(2)] {
                let expected = pochhammer(&nu, l) / Rational::from_integer(factorial(l)) * if l % 2 == 0 { int(1) } else { int(-1) };
                assert_eq!(gegenbauer_at_zero(&nu, 2 * l), expected);
            }
        }
    }

    #[test]
    fn gegenbauer_three_term_recurrence() {
        // k C_k = 2 (k + ν - 1) z C_{k-1} - (k + 2ν - 2) C_{k-2}
        for nu in [rat(1, 2), int(1), rat(5, 2)] {
            for k in 2..8u32 {
                let ck = gegenbauer(&nu, k);
                let c1 = gegenbauer(&nu, k - 1);
                let c2 = gegenbauer(&nu, k - 2);
                for p in 0..=k as usize {
                    let lhs = int(k as i64) * ck.coeff(p);
                    let shifted = if p == 0 { int(0) } else { c1.coeff(p - 1) };
                    let rhs = int(2) * (int(k as i64 - 1) + &nu) * shifted - (int(k as i64 - 2) + int(2) * &nu) * c2.coeff(p);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn f_examples() {
        for m in 3..6 {
            for j in 0..3 {
                assert_eq!(embedding_factor_f(FactorSpec::new(m, j, 0).unwrap()).unwrap(), CliffPoly::one(m, m));
            }
        }
        assert_eq!(embedding_factor_f(FactorSpec::new(3, 0, 1).unwrap()).unwrap(), x(3, 3));
        let expected = &x(3, 3).pow(2) - &(&x(3, 1).pow(2) + &x(3, 2).pow(2)).scale_rational(&rat(1, 2));
        let f2 = embedding_factor_f(FactorSpec::new(3, 0, 2).unwrap()).unwrap();
        assert_eq!(f2, expected);
        assert!(f2.is_harmonic());
        assert!(FactorSpec::new(2, 0, 1).is_err());
    }

    #[test]
    fn f_is_homogeneous_harmonic_with_appell_ladder() {
        for m in 3..=6 {
            for j in 0..=6u32 {
                for a in 0..=(6 - j) {
                    let f = embedding_factor_f(FactorSpec::new(m, j, a).unwrap()).unwrap();
                    assert!(f.is_homogeneous(a));
                    // F alone is harmonic only for j = 0; in general F·P is, for P ∈ H_j(ℝ^{m-1}).
                    let p = x1_minus_s_i_x2(m, m, Sign::Minus).unwrap().pow(j);
                    assert!((&f * &p).is_harmonic(), "F^({a})_({m},{j}) P");
                    assert_eq!(f.is_harmonic(), j == 0 || a <= 1);
                    if a >= 1 {
                        let lower = embedding_factor_f(FactorSpec::new(m, j, a - 1).unwrap()).unwrap();
                        assert_eq!(f.partial_derivative(m).unwrap(), lower.scale_rational(&int((j + a) as i64)));
                    }
                }
            }
        }
    }

    #[test]
    fn x_examples_and_ladder() {
        assert_eq!(embedding_factor_x(FactorSpec::new(4, 2, 0).unwrap()).unwrap(), CliffPoly::one(4, 4));
        let x1 = embedding_factor_x(FactorSpec::new(3, 0, 1).unwrap()).unwrap();
        let expected = &x(3, 3) + &xbar_em(3, 3).unwrap().scale_rational(&rat(1, 2));
        assert_eq!(x1, expected);
        assert!(x1.dirac_left(DiracVars::Full).unwrap().is_zero());
        for m in 3..=5 {
            for j in 0..=3u32 {
                for a in 1..=(4 - j.min(3)) {
                    let xa = embedding_factor_x(FactorSpec::new(m, j, a).unwrap()).unwrap();
                    let lower = embedding_factor_x(FactorSpec::new(m, j, a - 1).unwrap()).unwrap();
                    assert_eq!(xa.partial_derivative(m).unwrap(), lower.scale_rational(&int((j + a) as i64)));
                }
            }
        }
    }

    #[test]
    fn mu_examples() {
        for m in 3..6 {
            assert_eq!(mu_constant(FactorSpec::new(m, 1, 0).unwrap()).unwrap(), int(1));
        }
        assert_eq!(mu_constant(FactorSpec::new(3, 0, 1).unwrap()).unwrap(), int(2));
        assert_eq!(mu_constant(FactorSpec::new(3, 0, 2).unwrap()).unwrap(), int(2));
    }

    #[test]
    fn ck_identity_holds_with_mu() {
        use crate::bases::monogenic_space_basis;
        for m in 3..=5 {
            let xe = xbar_em(m, m).unwrap().restrict_vars(m - 1).unwrap();
            for j in 0..=3u32 {
                for a in 0..=4 - j {
                    let spec = FactorSpec::new(m, j, a).unwrap();
                    let x = embedding_factor_x_in(spec, m, m).unwrap();
                    let mu = mu_constant(spec).unwrap();
                    for p in monogenic_space_basis(m - 1, j, m).unwrap() {
                        let lhs = (&xe.pow(a) * &p).ck_extension().unwrap();
                        assert_eq!(lhs, (&x * &p.embed(m, m).unwrap()).scale_rational(&mu), "m = {m}, j = {j}, a = {a}");
                    }
                }
            }
        }
    }

    #[test]
    fn gegenbauer_and_normalized_mu() {
        // μ^{(1)}_{m,0}: CK(x̲ e_m) = x̲ e_m + (m-1) x_m = (m-1) X^{(1)}_{m,0}
        for m in 3..=6 {
            assert_eq!(mu_constant(FactorSpec::new(m, 0, 1).unwrap()).unwrap(), int(m as i64 - 1));
            assert_eq!(mu_constant_gegenbauer(FactorSpec::new(m, 0, 1).unwrap()).unwrap(), rat(m as i64 - 1, m as i64 - 2));
        }
        for a in 0..=4 {
            let spec = FactorSpec::new(3, 0, a).unwrap();
            assert_eq!(mu_constant(spec).unwrap(), mu_constant_gegenbauer(spec).unwrap());
        }
    }
}
