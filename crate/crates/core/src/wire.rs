//! JSON forms of multivectors, polynomials, Taylor tables and ball integrals.
//!
//! Rationals are always written `"num/den"`; blades are listed in
//! lexicographic order and polynomial terms in graded order, so equal values
//! serialize to identical bytes.

use serde::{Deserialize, Serialize};

use crate::analysis::{ExactBallValue, TaylorKey, TaylorKind, TaylorTable};
use crate::bases::Label;
use crate::clifford::{BladeIndex, Multivector, SpinLabel};
use crate::error::{Error, Result};
use crate::poly::{CliffPoly, ExponentVector};
use crate::scalars::{parse_rational, rational_to_wire, GaussianRational};
use crate::Sign;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BladeJson {
    pub idx: Vec<usize>,
    pub re: String,
    pub im: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub m: usize,
    pub blades: Vec<BladeJson>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: MultivectorJson,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub m: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TaylorEntryJson {
    pub k: u32,
    pub mu: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<String>,
    pub coeff: MultivectorJson,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BallValueJson {
    pub pi_power: u32,
    pub coeff: MultivectorJson,
}

impl From<&Multivector> for MultivectorJson {
    fn from(a: &Multivector) -> Self {
        let blades = a
            .sorted_terms()
            .into_iter()
            .map(|(b, c)| BladeJson { idx: b.indices(), re: rational_to_wire(&c.re), im: rational_to_wire(&c.im) })
            .collect();
        MultivectorJson { m: a.dim(), blades }
    }
}

impl TryFrom<&MultivectorJson> for Multivector {
    type Error = Error;
    fn try_from(j: &MultivectorJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.blades.len());
        for b in &j.blades {
            let blade = BladeIndex::from_indices(&b.idx)?;
            terms.push((blade, GaussianRational::new(parse_rational(&b.re)?, parse_rational(&b.im)?)));
        }
        Multivector::from_terms(j.m, terms)
    }
}

impl From<&CliffPoly> for PolyJson {
    fn from(p: &CliffPoly) -> Self {
        let terms = p.terms().map(|(e, c)| TermJson { exp: e.0.clone(), coeff: c.into() }).collect();
        PolyJson { m: p.nvars(), terms }
    }
}

impl TryFrom<&PolyJson> for CliffPoly {
    type Error = Error;
    fn try_from(j: &PolyJson) -> Result<Self> {
        let alg = j.terms.first().map_or(j.m, |t| t.coeff.m);
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.coeff.m != alg {
                return Err(Error::DimensionMismatch(t.coeff.m, alg));
            }
            terms.push((ExponentVector(t.exp.clone()), Multivector::try_from(&t.coeff)?));
        }
        CliffPoly::from_terms(j.m, alg, terms)
    }
}

impl From<&ExactBallValue> for BallValueJson {
    fn from(v: &ExactBallValue) -> Self {
        BallValueJson { pi_power: v.pi_power(), coeff: (&v.coeff).into() }
    }
}

pub fn taylor_to_json(table: &TaylorTable) -> Vec<TaylorEntryJson> {
    table
        .entries
        .iter()
        .map(|(key, t)| TaylorEntryJson {
            k: key.k,
            mu: key.mu.to_string(),
            nu: key.nu.as_ref().map(|nu| nu.to_string()),
            coeff: t.into(),
        })
        .collect()
}

/// Rebuilds a table; `kind`, `m` and `chirality` are not part of the JSON form.
pub fn taylor_from_json(entries: &[TaylorEntryJson], kind: TaylorKind, m: usize, alg_dim: usize, chirality: Sign) -> Result<TaylorTable> {
    let mut table = TaylorTable::new(kind, m, alg_dim, chirality);
    for e in entries {
        let mu = match kind {
            TaylorKind::Harmonic => Label::Harmonic(e.mu.parse()?),
            _ => Label::Monogenic(e.mu.parse()?),
        };
        let nu = e.nu.as_deref().map(str::parse::<SpinLabel>).transpose()?;
        let coeff = Multivector::try_from(&e.coeff)?;
        table.entries.insert(TaylorKey { k: e.k, mu, nu }, coeff);
    }
    Ok(table)
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("wire types always serialize")
}

pub fn poly_from_json_str(s: &str) -> Result<CliffPoly> {
    let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    CliffPoly::try_from(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{taylor_expand, TaylorContext};
    use crate::bases::monogenic_element;
    use crate::scalars::rat;

    #[test]
    fn multivector_form() {
        let a = &Multivector::blade(3, &[1, 2]).unwrap().scale_rational(&rat(-1, 2)) + &Multivector::one(3);
        let j = MultivectorJson::from(&a);
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"m":3,"blades":[{"idx":[],"re":"1/1","im":"0/1"},{"idx":[1,2],"re":"-1/2","im":"0/1"}]}"#
        );
        assert_eq!(Multivector::try_from(&j).unwrap(), a);
    }

    #[test]
    fn poly_round_trip() {
        let f = monogenic_element(3, 2, &"1".parse().unwrap()).unwrap();
        let s = to_json_string(&PolyJson::from(&f));
        assert_eq!(poly_from_json_str(&s).unwrap(), f);
        assert_eq!(s, to_json_string(&PolyJson::from(&f.clone())));
    }

    #[test]
    fn taylor_round_trip() {
        let f = monogenic_element(4, 2, &"1,1".parse().unwrap()).unwrap();
        let t = taylor_expand(&f, &TaylorContext::new(TaylorKind::Clifford, 4)).unwrap();
        let j = taylor_to_json(&t);
        assert_eq!(j[0].mu, "1,1");
        assert!(j[0].nu.is_none());
        assert_eq!(taylor_from_json(&j, TaylorKind::Clifford, 4, 4, Sign::Plus).unwrap(), t);
    }

    #[test]
    fn rejects_bad_rationals() {
        let j = MultivectorJson { m: 2, blades: vec![BladeJson { idx: vec![1], re: "1/0".into(), im: "0".into() }] };
        assert!(Multivector::try_from(&j).is_err());
    }
}
