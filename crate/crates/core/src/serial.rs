//! JSON wire formats. Ring elements serialize as arrays of decimal strings
//! (exact at any magnitude); matrices as row-major 4x4 arrays of those;
//! Weyl words as strings over {"a", "b"}.

use crate::bruhat::{BorelCoords, BruhatForm};
use crate::congruence::{QCertificate, QFactor};
use crate::error::{Error, Result};
use crate::rings::{RingElem, RingId};
use crate::sp4::{Root, SpMatrix};
use crate::weyl::WeylWord;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

pub type CoordsDto = Vec<String>;

pub fn elem_to_dto(e: &RingElem) -> CoordsDto {
    e.coords().iter().map(|c| c.to_string()).collect()
}

pub fn elem_from_dto(ring: RingId, dto: &[String]) -> Result<RingElem> {
    let coords: Vec<BigInt> = dto
        .iter()
        .map(|s| {
            BigInt::from_str(s).map_err(|_| Error::BadInput(format!("bad integer {s:?}")))
        })
        .collect::<Result<_>>()?;
    RingElem::from_coords(ring, &coords)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDto {
    pub ring: String,
    /// Row-major 4x4 entries, each an array of coordinate strings.
    pub entries: Vec<Vec<String>>,
}

pub fn matrix_to_dto(m: &SpMatrix) -> MatrixDto {
    MatrixDto {
        ring: m.ring().to_string(),
        entries: m.entries().iter().map(elem_to_dto).collect(),
    }
}

pub fn matrix_from_dto(dto: &MatrixDto) -> Result<SpMatrix> {
    let ring = RingId::from_str(&dto.ring)?;
    if dto.entries.len() != 16 {
        return Err(Error::BadInput("matrix needs 16 entries".into()));
    }
    let entries = dto
        .entries
        .iter()
        .map(|c| elem_from_dto(ring, c))
        .collect::<Result<Vec<_>>>()?;
    SpMatrix::from_entries(ring, entries)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BorelDto {
    pub t_2ab: CoordsDto,
    pub t_ab: CoordsDto,
    pub t_b: CoordsDto,
    pub t_a: CoordsDto,
    pub s_a: CoordsDto,
    pub s_b: CoordsDto,
}

pub fn borel_to_dto(b: &BorelCoords) -> BorelDto {
    BorelDto {
        t_2ab: elem_to_dto(&b.t_2ab),
        t_ab: elem_to_dto(&b.t_ab),
        t_b: elem_to_dto(&b.t_b),
        t_a: elem_to_dto(&b.t_a),
        s_a: elem_to_dto(&b.s_a),
        s_b: elem_to_dto(&b.s_b),
    }
}

pub fn borel_from_dto(ring: RingId, dto: &BorelDto) -> Result<BorelCoords> {
    BorelCoords::new(
        ring,
        elem_from_dto(ring, &dto.t_2ab)?,
        elem_from_dto(ring, &dto.t_ab)?,
        elem_from_dto(ring, &dto.t_b)?,
        elem_from_dto(ring, &dto.t_a)?,
        elem_from_dto(ring, &dto.s_a)?,
        elem_from_dto(ring, &dto.s_b)?,
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BruhatDto {
    pub ring: String,
    pub b1: BorelDto,
    pub w: String,
    pub b2: BorelDto,
}

pub fn bruhat_to_dto(f: &BruhatForm) -> BruhatDto {
    BruhatDto {
        ring: f.ring().to_string(),
        b1: borel_to_dto(&f.b1),
        w: f.word.as_string(),
        b2: borel_to_dto(&f.b2),
    }
}

pub fn bruhat_from_dto(dto: &BruhatDto) -> Result<BruhatForm> {
    let ring = RingId::from_str(&dto.ring)?;
    Ok(BruhatForm::from_parts(
        borel_from_dto(ring, &dto.b1)?,
        WeylWord::parse(&dto.w)?,
        borel_from_dto(ring, &dto.b2)?,
    ))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QFactorDto {
    pub conjugator: Vec<Vec<String>>,
    pub root: String,
    pub value: CoordsDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDto {
    pub ring: String,
    pub target: MatrixDto,
    pub factors: Vec<QFactorDto>,
    pub length: usize,
    pub j: usize,
    pub bound_8j_plus_6: usize,
    pub emitted_fold: usize,
    pub emitted_normalize: usize,
    pub verified: bool,
}

pub fn certificate_to_dto(c: &QCertificate) -> Result<CertificateDto> {
    Ok(CertificateDto {
        ring: c.ring.to_string(),
        target: matrix_to_dto(&c.target),
        factors: c
            .factors
            .iter()
            .map(|f| QFactorDto {
                conjugator: f.conjugator.entries().iter().map(elem_to_dto).collect(),
                root: f.root.name().to_string(),
                value: elem_to_dto(&f.value),
            })
            .collect(),
        length: c.len(),
        j: c.j_blocks,
        bound_8j_plus_6: c.bound,
        emitted_fold: c.emission_split.0,
        emitted_normalize: c.emission_split.1,
        verified: c.verify()?,
    })
}

pub fn certificate_from_dto(dto: &CertificateDto) -> Result<QCertificate> {
    let ring = RingId::from_str(&dto.ring)?;
    let target = matrix_from_dto(&dto.target)?;
    let mut factors = Vec::with_capacity(dto.factors.len());
    for f in &dto.factors {
        if f.conjugator.len() != 16 {
            return Err(Error::BadInput("conjugator needs 16 entries".into()));
        }
        let entries = f
            .conjugator
            .iter()
            .map(|c| elem_from_dto(ring, c))
            .collect::<Result<Vec<_>>>()?;
        factors.push(QFactor::new(
            SpMatrix::from_entries(ring, entries)?,
            Root::from_name(&f.root)?,
            elem_from_dto(ring, &f.value)?,
        )?);
    }
    Ok(QCertificate {
        ring,
        target,
        factors,
        j_blocks: dto.j,
        bound: dto.bound_8j_plus_6,
        emission_split: (dto.emitted_fold, dto.emitted_normalize),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::CellContext;
    use crate::congruence::congruence_factor;
    use crate::sp4::root_element;
    use proptest::prelude::*;

    #[test]
    fn matrix_json_round_trip() {
        let o5 = RingId::QuadraticOrder(5);
        let m = root_element(o5, Root::AlphaBeta, &RingElem::quad(o5, -3, 7));
        let dto = matrix_to_dto(&m);
        let text = serde_json::to_string(&dto).unwrap();
        let back: MatrixDto = serde_json::from_str(&text).unwrap();
        assert_eq!(matrix_from_dto(&back).unwrap(), m);
    }

    #[test]
    fn certificate_json_round_trip_verifies() {
        let z = RingId::Integers;
        let ctx = CellContext::new(z).unwrap();
        let m = root_element(z, Root::Beta, &RingElem::from_i64(z, 2))
            .mul(&root_element(z, Root::NegAlpha, &RingElem::from_i64(z, 4)))
            .unwrap();
        let cert = congruence_factor(&m, &ctx).unwrap();
        let dto = certificate_to_dto(&cert).unwrap();
        assert!(dto.verified);
        let text = serde_json::to_string_pretty(&dto).unwrap();
        let back: CertificateDto = serde_json::from_str(&text).unwrap();
        let cert2 = certificate_from_dto(&back).unwrap();
        assert!(cert2.verify().unwrap());
        assert_eq!(cert2.len(), cert.len());
    }

    proptest! {
        #[test]
        fn element_coords_round_trip(a in -1000i64..1000, b in -1000i64..1000) {
            for ring in [RingId::Integers, RingId::QuadraticOrder(5), RingId::QuadraticOrder(-3)] {
                let e = match ring {
                    RingId::Integers => RingElem::from_i64(ring, a),
                    _ => RingElem::quad(ring, a, b),
                };
                let dto = elem_to_dto(&e);
                prop_assert_eq!(elem_from_dto(ring, &dto).unwrap(), e);
            }
            let loc = RingId::LocalizedIntegers(5);
            let e = RingElem::localized(loc, a, (b % 3) as i64);
            let dto = elem_to_dto(&e);
            prop_assert_eq!(elem_from_dto(loc, &dto).unwrap(), e);
        }
    }
}
