//! JSON forms of algebra elements, identity reports and matrices.

use hechain_scalar::Scalar;
use serde::{Deserialize, Serialize};

use crate::affine::{AffineElement, AffineKey};
use crate::fusion::IdentityReport;
use crate::hecke::HeckeElement;
use crate::perm::Perm;
use crate::tlblob::{BlobDiagram, BlobElement};
use crate::{AlgebraError, Element};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeckeTerm {
    pub perm: Vec<usize>,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineTerm {
    pub ypow: Vec<i32>,
    pub perm: Vec<usize>,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlobTerm {
    pub diagram: Vec<[usize; 2]>,
    pub blobs: Vec<usize>,
    pub coeff: Scalar,
}

/// Tagged element JSON, `{basis: "hecke" | "affine" | "blob", rank, terms}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "basis", rename_all = "lowercase")]
pub enum ElementJson {
    Hecke { rank: usize, terms: Vec<HeckeTerm> },
    Affine { rank: usize, terms: Vec<AffineTerm> },
    Blob { rank: usize, terms: Vec<BlobTerm> },
}

impl From<&HeckeElement> for ElementJson {
    fn from(e: &HeckeElement) -> ElementJson {
        let n = e.rank();
        ElementJson::Hecke {
            rank: n,
            terms: e.terms().map(|(w, c)| HeckeTerm { perm: w.images(n), coeff: c.clone() }).collect(),
        }
    }
}

impl From<&AffineElement> for ElementJson {
    fn from(e: &AffineElement) -> ElementJson {
        let n = e.rank();
        ElementJson::Affine {
            rank: n,
            terms: e
                .terms()
                .map(|(k, c)| AffineTerm { ypow: k.ypow(n), perm: k.perm().images(n), coeff: c.clone() })
                .collect(),
        }
    }
}

impl From<&BlobElement> for ElementJson {
    fn from(e: &BlobElement) -> ElementJson {
        ElementJson::Blob {
            rank: e.rank(),
            terms: e
                .terms()
                .map(|(d, c)| BlobTerm {
                    diagram: d.arcs().into_iter().map(|(a, b)| [a, b]).collect(),
                    blobs: d.blobbed_arcs(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }
}

fn bad(what: &str) -> AlgebraError {
    AlgebraError::InvalidParameter(format!("malformed {what} term"))
}

impl ElementJson {
    pub fn rank(&self) -> usize {
        match self {
            ElementJson::Hecke { rank, .. } | ElementJson::Affine { rank, .. } | ElementJson::Blob { rank, .. } => *rank,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ElementJson::Hecke { terms, .. } => terms.len(),
            ElementJson::Affine { terms, .. } => terms.len(),
            ElementJson::Blob { terms, .. } => terms.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_hecke(&self) -> Result<HeckeElement, AlgebraError> {
        let ElementJson::Hecke { rank, terms } = self else {
            return Err(AlgebraError::InvalidParameter("expected a hecke element".into()));
        };
        let parsed = terms
            .iter()
            .map(|t| Ok((Perm::from_images(&t.perm).filter(|_| t.perm.len() == *rank).ok_or_else(|| bad("hecke"))?, t.coeff.clone())))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(Element::from_terms(*rank, parsed))
    }

    pub fn to_affine(&self) -> Result<AffineElement, AlgebraError> {
        let ElementJson::Affine { rank, terms } = self else {
            return Err(AlgebraError::InvalidParameter("expected an affine element".into()));
        };
        let parsed = terms
            .iter()
            .map(|t| {
                if t.perm.len() != *rank || t.ypow.len() != *rank {
                    return Err(bad("affine"));
                }
                let perm = Perm::from_images(&t.perm).ok_or_else(|| bad("affine"))?;
                Ok((AffineKey::new(&t.ypow, perm).ok_or_else(|| bad("affine"))?, t.coeff.clone()))
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(Element::from_terms(*rank, parsed))
    }

    pub fn to_blob(&self) -> Result<BlobElement, AlgebraError> {
        let ElementJson::Blob { rank, terms } = self else {
            return Err(AlgebraError::InvalidParameter("expected a blob element".into()));
        };
        let parsed = terms
            .iter()
            .map(|t| {
                let arcs: Vec<(usize, usize)> = t.diagram.iter().map(|&[a, b]| (a, b)).collect();
                Ok((BlobDiagram::from_arcs(*rank, &arcs, &t.blobs).ok_or_else(|| bad("blob"))?, t.coeff.clone()))
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(Element::from_terms(*rank, parsed))
    }
}

/// `{identity, k, mode, lhs, rhs, difference, pass}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReportJson<T> {
    pub identity: String,
    pub k: usize,
    pub mode: String,
    pub lhs: T,
    pub rhs: T,
    pub difference: T,
    pub pass: bool,
}

impl<E> IdentityReport<E> {
    pub fn to_json<T>(&self, mode: &str, f: impl Fn(&E) -> T) -> IdentityReportJson<T> {
        IdentityReportJson {
            identity: self.identity.clone(),
            k: self.k,
            mode: mode.to_string(),
            lhs: f(&self.lhs),
            rhs: f(&self.rhs),
            difference: f(&self.difference),
            pass: self.pass,
        }
    }
}
