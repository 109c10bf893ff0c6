//! Spinor spaces realized as minimal left ideals of ℂ_{2n}.
//!
//! With the Witt basis `w_j = (e_{2j-1} + i e_{2j}) / 2` and the idempotent
//! `I = I_1 ... I_n`, `I_j = w̄_j w_j`, the space `Λ(w_1..w_n) I` splits by
//! parity into the half-spinor spaces `S^±_{2n}`, the ±1 eigenspaces of
//! `θ_{2n} = (-i)^n e_1 ... e_{2n}`. For odd `m = 2n - 1` the spinor space is
//! taken to be `S^+_{2n}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::Multivector;
use crate::error::{Error, Result};
use crate::linalg::{solve_columns, Solution};
use crate::scalars::{rat, GaussianRational};
use crate::Sign;

/// `n` with `m = 2n` or `m = 2n - 1`.
pub fn spin_rank(m: usize) -> usize {
    m.div_ceil(2)
}

/// Dimension of the Clifford algebra hosting the spinor space for `ℝ^m`.
pub fn spinor_algebra_dim(m: usize) -> usize {
    2 * spin_rank(m)
}

/// A Gelfand-Tsetlin index of a one-dimensional piece of the spinor space:
/// `n - 1` signs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinLabel {
    pub signs: Vec<Sign>,
}

impl SpinLabel {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self { signs }
    }

    /// All labels for `ℝ^m` in lexicographic order (`+` before `-`).
    pub fn enumerate(m: usize) -> Vec<SpinLabel> {
        let len = spin_rank(m).saturating_sub(1);
        (0..1u32 << len)
            .map(|code| {
                let signs = (0..len)
                    .map(|p| if code >> (len - 1 - p) & 1 == 0 { Sign::Plus } else { Sign::Minus })
                    .collect();
                SpinLabel { signs }
            })
            .collect()
    }

    pub fn last(&self) -> Option<Sign> {
        self.signs.last().copied()
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        if self.signs.len() + 1 != spin_rank(m) {
            return Err(Error::InvalidLabel { label: self.to_string(), m, k: 0 });
        }
        Ok(())
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpinLabel({self})")
    }
}

impl FromStr for SpinLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(Error::Parse(format!("invalid spinor label {s:?}"))),
            })
            .collect::<Result<_>>()?;
        Ok(SpinLabel { signs })
    }
}

/// Witt basis, idempotents and chirality operator of ℂ_{2n}.
#[derive(Clone, Debug)]
pub struct SpinorFrame {
    pub n: usize,
    /// `w_1 .. w_n` (index 0 holds `w_1`).
    pub w: Vec<Multivector>,
    pub w_bar: Vec<Multivector>,
    pub idempotents: Vec<Multivector>,
    /// The primitive idempotent `I = I_1 ... I_n`.
    pub primitive: Multivector,
    pub theta: Multivector,
}

impl SpinorFrame {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(0, "spinor frame needs n >= 1"));
        }
        let dim = 2 * n;
        let half = rat(1, 2);
        let i = GaussianRational::i();
        let mut w = Vec::with_capacity(n);
        let mut w_bar = Vec::with_capacity(n);
        let mut idempotents = Vec::with_capacity(n);
        for j in 1..=n {
            let odd = Multivector::basis_vector(dim, 2 * j - 1)?;
            let even = Multivector::basis_vector(dim, 2 * j)?.scale(&i);
            let wj = (&odd + &even).scale_rational(&half);
            let wbj = (&even - &odd).scale_rational(&half);
            idempotents.push(&wbj * &wj);
            w.push(wj);
            w_bar.push(wbj);
        }
        let primitive = idempotents.iter().fold(Multivector::one(dim), |acc, ij| &acc * ij);
        let mut minus_i_pow = GaussianRational::one();
        for _ in 0..n {
            minus_i_pow = -minus_i_pow.mul_i();
        }
        let all: Vec<usize> = (1..=dim).collect();
        let theta = Multivector::blade(dim, &all)?.scale(&minus_i_pow);
        Ok(Self { n, w, w_bar, idempotents, primitive, theta })
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// `w_j`, 1-based.
    pub fn witt(&self, j: usize) -> &Multivector {
        &self.w[j - 1]
    }
}

/// Generators `v^ν` of the one-dimensional pieces of the spinor space for
/// `ℝ^m`, keyed by label.
///
/// The label is read as a chain of parities starting from the chirality:
/// whenever consecutive parities differ at level `j`, `w_{n-j+1}` is
/// multiplied on the left. A final `-` adds a leading `w_1`.
pub fn spinor_generators(m: usize, chirality: Sign) -> Result<BTreeMap<SpinLabel, Multivector>> {
    if m < 3 {
        return Err(Error::InvalidDimension(m, "spinor generators need m >= 3"));
    }
    if m % 2 == 1 && chirality == Sign::Minus {
        return Err(Error::InvalidChirality(m));
    }
    let frame = SpinorFrame::new(spin_rank(m))?;
    Ok(generators_in_frame(&frame, m, chirality))
}

fn generators_in_frame(frame: &SpinorFrame, m: usize, chirality: Sign) -> BTreeMap<SpinLabel, Multivector> {
    let n = frame.n;
    SpinLabel::enumerate(m)
        .into_iter()
        .map(|nu| {
            let mut parity = chirality;
            let mut current = frame.primitive.clone();
            for (level, &t) in nu.signs.iter().enumerate() {
                let j = level + 1;
                if t != parity {
                    current = frame.witt(n - j + 1) * &current;
                }
                parity = t;
            }
            let v = match nu.last() {
                Some(Sign::Minus) => frame.witt(1) * &current,
                _ => current,
            };
            (nu, v)
        })
        .collect()
}

/// Coefficients `g^ν` with `u = Σ g^ν v^ν`.
pub fn spinor_components(
    u: &Multivector,
    generators: &BTreeMap<SpinLabel, Multivector>,
) -> Result<BTreeMap<SpinLabel, GaussianRational>> {
    if let Some(v) = generators.values().next() {
        if v.dim() != u.dim() {
            return Err(Error::DimensionMismatch(u.dim(), v.dim()));
        }
    }
    if u.is_zero() {
        return Ok(generators.keys().map(|k| (k.clone(), GaussianRational::zero())).collect());
    }
    let mut blades: Vec<_> = u.terms().map(|(b, _)| *b).collect();
    for v in generators.values() {
        blades.extend(v.terms().map(|(b, _)| *b));
    }
    blades.sort();
    blades.dedup();
    let columns: Vec<Vec<GaussianRational>> =
        generators.values().map(|v| blades.iter().map(|b| v.coeff(*b)).collect()).collect();
    let rhs: Vec<GaussianRational> = blades.iter().map(|b| u.coeff(*b)).collect();
    match solve_columns(&columns, &rhs) {
        Solution::Unique(x) => Ok(generators.keys().cloned().zip(x).collect()),
        Solution::Inconsistent => Err(Error::NotInSpinorSpace),
        Solution::Underdetermined(_) => Err(Error::Decomposition("spinor generators are dependent".into())),
    }
}

/// A realized spinor space: dimension, chirality and its generators.
#[derive(Clone, Debug)]
pub struct SpinorSpace {
    pub m: usize,
    pub chirality: Sign,
    pub frame: SpinorFrame,
    pub generators: BTreeMap<SpinLabel, Multivector>,
}

impl SpinorSpace {
    pub fn new(m: usize, chirality: Sign) -> Result<Self> {
        let generators = spinor_generators(m, chirality)?;
        let frame = SpinorFrame::new(spin_rank(m))?;
        Ok(Self { m, chirality, frame, generators })
    }

    pub fn algebra_dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn generator(&self, nu: &SpinLabel) -> Result<&Multivector> {
        self.generators.get(nu).ok_or_else(|| Error::InvalidLabel { label: nu.to_string(), m: self.m, k: 0 })
    }

    pub fn components(&self, u: &Multivector) -> Result<BTreeMap<SpinLabel, GaussianRational>> {
        spinor_components(u, &self.generators)
    }

    /// Whether `u` lies in the realized spinor space.
    pub fn contains(&self, u: &Multivector) -> bool {
        self.components(u).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    fn e(dim: usize, idx: &[usize]) -> Multivector {
        Multivector::blade(dim, idx).unwrap()
    }

    #[test]
    fn frame_idempotents() {
        for n in 1..=3 {
            let fr = SpinorFrame::new(n).unwrap();
            for ij in &fr.idempotents {
                assert_eq!(ij * ij, *ij);
            }
            for a in &fr.idempotents {
                for b in &fr.idempotents {
                    assert_eq!(a * b, b * a);
                }
            }
            assert_eq!(&fr.primitive * &fr.primitive, fr.primitive);
        }
    }

    #[test]
    fn first_idempotent_in_c2() {
        // expanding w̄_1 w_1 by hand: (1 - i e12) / 2
        let fr = SpinorFrame::new(1).unwrap();
        let expected = (&Multivector::one(2) - &e(2, &[1, 2]).scale(&GaussianRational::i())).scale_rational(&rat(1, 2));
        assert_eq!(fr.idempotents[0], expected);
        assert_eq!(fr.theta, e(2, &[1, 2]).scale(&-GaussianRational::i()));
    }

    #[test]
    fn generators_in_witt_basis() {
        let fr2 = SpinorFrame::new(2).unwrap();
        let (w, i) = (&fr2.w, &fr2.primitive);
        let g = spinor_generators(4, Sign::Plus).unwrap();
        assert_eq!(g[&"+".parse().unwrap()], *i);
        assert_eq!(g[&"-".parse().unwrap()], &(&w[0] * &w[1]) * i);
        let g = spinor_generators(4, Sign::Minus).unwrap();
        assert_eq!(g[&"+".parse().unwrap()], &w[1] * i);
        assert_eq!(g[&"-".parse().unwrap()], &w[0] * i);

        let fr3 = SpinorFrame::new(3).unwrap();
        let (w, i) = (&fr3.w, &fr3.primitive);
        let g = spinor_generators(6, Sign::Plus).unwrap();
        assert_eq!(g[&"++".parse().unwrap()], *i);
        assert_eq!(g[&"+-".parse().unwrap()], &(&w[0] * &w[1]) * i);
        assert_eq!(g[&"-+".parse().unwrap()], &(&w[1] * &w[2]) * i);
        assert_eq!(g[&"--".parse().unwrap()], &(&w[0] * &w[2]) * i);
        let g = spinor_generators(6, Sign::Minus).unwrap();
        assert_eq!(g[&"++".parse().unwrap()], &w[2] * i);
        assert_eq!(g[&"+-".parse().unwrap()], &(&(&w[0] * &w[1]) * &w[2]) * i);
        assert_eq!(g[&"-+".parse().unwrap()], &w[1] * i);
        assert_eq!(g[&"--".parse().unwrap()], &w[0] * i);
    }

    #[test]
    fn chirality_and_e12_eigenvalues() {
        for m in 3..=6 {
            let chir: &[Sign] = if m % 2 == 0 { &[Sign::Plus, Sign::Minus] } else { &[Sign::Plus] };
            for &c in chir {
                let space = SpinorSpace::new(m, c).unwrap();
                let dim = space.algebra_dim();
                assert_eq!(space.generators.len(), 1 << (spin_rank(m) - 1));
                let e12 = e(dim, &[1, 2]);
                for (nu, v) in &space.generators {
                    assert!(!v.is_zero());
                    let expected = if c == Sign::Plus { v.clone() } else { -v };
                    assert_eq!(&space.frame.theta * v, expected, "theta on {nu}");
                    let phase = GaussianRational::new(int(0), int(nu.last().unwrap().as_i64()));
                    assert_eq!(&e12 * v, v.scale(&phase), "e12 on {nu}");
                }
            }
        }
    }

    #[test]
    fn odd_dimension_rejects_minus_chirality() {
        assert_eq!(spinor_generators(5, Sign::Minus), Err(Error::InvalidChirality(5)));
        assert!(spinor_generators(2, Sign::Plus).is_err());
    }

    #[test]
    fn component_extraction() {
        let space = SpinorSpace::new(4, Sign::Plus).unwrap();
        let plus: SpinLabel = "+".parse().unwrap();
        let minus: SpinLabel = "-".parse().unwrap();
        let vp = space.generator(&plus).unwrap();
        let vm = space.generator(&minus).unwrap();
        let comps = space.components(vp).unwrap();
        assert_eq!(comps[&plus], GaussianRational::one());
        assert!(comps[&minus].is_zero());
        let zero = space.components(&Multivector::zero(4)).unwrap();
        assert!(zero.values().all(|c| c.is_zero()));
        let u = &vp.scale(&GaussianRational::from_int(2)) + &vm.scale(&GaussianRational::new(int(0), int(3)));
        let comps = space.components(&u).unwrap();
        assert_eq!(comps[&plus], GaussianRational::from_int(2));
        assert_eq!(comps[&minus], GaussianRational::new(int(0), int(3)));
        assert_eq!(space.components(&Multivector::one(4)), Err(Error::NotInSpinorSpace));
    }
}
