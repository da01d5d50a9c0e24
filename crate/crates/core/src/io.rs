//! JSON input formats for groups, Hecke scenarios and corpora.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffalg::{
    FieldElement, GaloisField, LocalElement, LocalRing, LocalRingSpec, Matrix, Poly, Ring, TruncatedLocalRing,
};
use crate::grouprep::{check, AdequacyReport, GnElement, GnGroup, GroupOverField, Mode, Variant};
use crate::weylhecke::HeckeScenario;

/// A scalar given either as an integer (image of `Z`) or as integer
/// coordinates in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Coords(Vec<i64>),
}

impl Scalar {
    pub fn to_field(&self, field: &GaloisField) -> Result<FieldElement> {
        match self {
            Scalar::Int(v) => field.from_coords(&[*v]),
            Scalar::Coords(c) => field.from_coords(c),
        }
    }

    pub fn to_local(&self, ring: &TruncatedLocalRing) -> Result<LocalElement> {
        match self {
            Scalar::Int(v) => ring.element(&[*v]),
            Scalar::Coords(c) => ring.element(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInput {
    pub l: u64,
    #[serde(default = "one")]
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one() -> usize {
    1
}

impl FieldInput {
    pub fn build(&self) -> Result<GaloisField> {
        GaloisField::from_parts(self.l, self.m, self.modulus.clone())
    }
}

/// `{field, n, generators, variant, mu, eps}`; generators are row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInput {
    pub field: FieldInput,
    pub n: usize,
    #[serde(default)]
    pub generators: Vec<Vec<Scalar>>,
    #[serde(default = "default_variant")]
    pub variant: Variant,
    /// Similitude factors, one per generator (`gn` only; default 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<Scalar>>,
    /// Exponent of `j`, one per generator (`gn` only; default 0).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<u8>>,
}

fn default_variant() -> Variant {
    Variant::Gl
}

/// A closed group of either variant.
#[derive(Clone, Debug)]
pub enum BuiltGroup {
    Gl(GroupOverField),
    Gn(GnGroup),
}

impl BuiltGroup {
    pub fn order(&self) -> usize {
        match self {
            BuiltGroup::Gl(g) => g.order(),
            BuiltGroup::Gn(g) => g.order(),
        }
    }

    pub fn check(&self, mode: Mode, require_semisimple: bool) -> Result<AdequacyReport> {
        match self {
            BuiltGroup::Gl(g) => check(g, mode, require_semisimple),
            BuiltGroup::Gn(g) => check(g, mode, require_semisimple),
        }
    }
}

impl GroupInput {
    pub fn matrices(&self, field: &GaloisField) -> Result<Vec<Matrix<FieldElement>>> {
        let n = self.n;
        if n == 0 {
            return Err(Error::Dimension("n must be positive".into()));
        }
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if g.len() != n * n {
                    return Err(Error::Dimension(format!("generator {i} has {} entries, expected {}", g.len(), n * n)));
                }
                let entries = g.iter().map(|s| s.to_field(field)).collect::<Result<Vec<_>>>()?;
                Matrix::from_vec(n, n, entries)
            })
            .collect()
    }

    pub fn build(&self, cap: usize) -> Result<BuiltGroup> {
        let field = self.field.build()?;
        let mats = self.matrices(&field)?;
        match self.variant {
            Variant::Gl => {
                if self.mu.is_some() || self.eps.is_some() {
                    return Err(Error::Invalid("mu and eps apply only to the gn variant".into()));
                }
                Ok(BuiltGroup::Gl(GroupOverField::generate(&field, self.n, mats, cap)?))
            }
            Variant::Gn => {
                let count = mats.len();
                let mu = match &self.mu {
                    Some(v) if v.len() != count => {
                        return Err(Error::Dimension(format!("{} mu values for {count} generators", v.len())))
                    }
                    Some(v) => v.iter().map(|s| s.to_field(&field)).collect::<Result<Vec<_>>>()?,
                    None => vec![crate::ffalg::Ring::one(&field); count],
                };
                let eps = match &self.eps {
                    Some(v) if v.len() != count => {
                        return Err(Error::Dimension(format!("{} eps values for {count} generators", v.len())))
                    }
                    Some(v) => v.clone(),
                    None => vec![0; count],
                };
                let gens = mats
                    .into_iter()
                    .zip(mu)
                    .zip(eps)
                    .enumerate()
                    .map(|(i, ((g, m), e))| {
                        GnElement::new(&field, g, m, e).map_err(|err| match err {
                            Error::Singular | Error::NotUnit(_) => Error::NonInvertibleGenerator(i),
                            other => other,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(BuiltGroup::Gn(GnGroup::generate(&field, self.n, gens, cap)?))
            }
        }
    }
}

/// `{ring: {l, m, N}, q, sqrt_q, n1, n2, chi, psi, alpha_bar}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioInput {
    pub ring: LocalRingSpec,
    pub q: Scalar,
    /// Defaults to `1`, which is only allowed when `q = 1 mod l`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt_q: Option<Scalar>,
    pub n1: usize,
    pub n2: usize,
    #[serde(default)]
    pub chi: Vec<Scalar>,
    #[serde(default)]
    pub psi: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_bar: Option<Scalar>,
}

impl ScenarioInput {
    pub fn build(&self) -> Result<HeckeScenario> {
        let ring = TruncatedLocalRing::from_spec(&self.ring)?;
        let local = |v: &[Scalar]| v.iter().map(|s| s.to_local(&ring)).collect::<Result<Vec<_>>>();
        let alpha_bar = self.alpha_bar.as_ref().map(|a| a.to_field(ring.residue_field())).transpose()?;
        let q = self.q.to_local(&ring)?;
        let sqrt_q = match &self.sqrt_q {
            Some(s) => s.to_local(&ring)?,
            None => {
                let k = ring.residue_field();
                if ring.reduce(&q) != k.one() {
                    return Err(Error::Invalid("sqrt_q is required unless q = 1 mod l".into()));
                }
                ring.one()
            }
        };
        HeckeScenario::new(ring.clone(), q, sqrt_q, self.n1, self.n2, local(&self.chi)?, local(&self.psi)?, alpha_bar)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub group: GroupInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_big: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_adequate: Option<bool>,
}

/// Parses a corpus (a JSON array of entries) and checks that names are unique.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let entries: Vec<CorpusEntry> = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("corpus: {e}")))?;
    let mut names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    names.sort_unstable();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Invalid(format!("duplicate corpus entry {}", w[0])));
    }
    Ok(entries)
}

/// Coordinates of each coefficient, lowest degree first.
pub fn field_poly_coords(p: &Poly<FieldElement>, field: &GaloisField) -> Vec<Vec<u64>> {
    p.coeffs().iter().map(|&c| field.coords(c)).collect()
}

/// Coordinates of each coefficient, lowest degree first.
pub fn local_poly_coords(p: &Poly<LocalElement>) -> Vec<Vec<u64>> {
    p.coeffs().iter().map(|c| c.coords().to_vec()).collect()
}
