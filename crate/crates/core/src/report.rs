//! Report generators: the pseudo-goodness table over quadratic orders,
//! cubic-order certificates, and the assembled constants tables with
//! provenance tags.

use crate::error::Result;
use crate::rings::pseudogood::{pell_unit, search_pell_witness, PellWitness};
use crate::rings::{is_pseudo_good, norm_trace, reduce_mod2, PseudoGoodness, RingElem, RingId};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

/// Verdict column of the pseudo-goodness table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TableVerdict {
    Yes,
    No,
    InconclusiveBySearch,
}

/// One row of the quadratic pseudo-goodness survey.
#[derive(Debug, Clone, Serialize)]
pub struct PseudoGoodRow {
    pub d: i64,
    pub verdict: TableVerdict,
    pub witness: Option<PellWitness>,
    /// The witness equation in the display form `b^2*D = a^2 +- 4`.
    pub equation: Option<String>,
    pub note: String,
}

/// Known fundamental units for the negative verdicts the survey reports;
/// the only entry below 100 is D = 37 with unit 6 + sqrt(37).
pub fn known_fundamental_unit(d: i64) -> Option<RingElem> {
    match d {
        37 => Some(RingElem::quad(RingId::QuadraticOrder(37), 5, 2)),
        _ => None,
    }
}

/// Surveys squarefree D = 5 mod 8 below `bound_d`: a unit witness from
/// the odd solutions of `b^2 D = a^2 +- 4`, or a negative verdict from a
/// known fundamental unit, or inconclusive.
pub fn pseudo_good_table(bound_d: i64, search_bound: u64) -> Result<Vec<PseudoGoodRow>> {
    let mut rows = Vec::new();
    for d in 5..bound_d {
        if d.rem_euclid(8) != 5 || !crate::rings::is_squarefree_i64(d) {
            continue;
        }
        let ring = RingId::QuadraticOrder(d);
        let row = match search_pell_witness(d, search_bound) {
            Some(w) => {
                // sanity: the unit exists and has odd trace
                let u = pell_unit(ring, &w);
                let (n, t) = norm_trace(&u)?;
                debug_assert!(n.abs() == BigInt::one());
                debug_assert_eq!(t, BigInt::from(w.a));
                PseudoGoodRow {
                    d,
                    verdict: TableVerdict::Yes,
                    witness: Some(w),
                    equation: Some(w.equation(d)),
                    note: format!("unit ({} + {}*sqrt({d}))/2 has odd trace", w.a, w.b),
                }
            }
            None => match known_fundamental_unit(d) {
                Some(u) => match is_pseudo_good(ring, search_bound, Some(&u))? {
                    PseudoGoodness::No { reason } => PseudoGoodRow {
                        d,
                        verdict: TableVerdict::No,
                        witness: None,
                        equation: None,
                        note: format!("fundamental unit {u}: {reason}"),
                    },
                    other => PseudoGoodRow {
                        d,
                        verdict: TableVerdict::Yes,
                        witness: None,
                        equation: None,
                        note: format!("fundamental unit {u} certifies: {other:?}"),
                    },
                },
                None => PseudoGoodRow {
                    d,
                    verdict: TableVerdict::InconclusiveBySearch,
                    witness: None,
                    equation: None,
                    note: format!("no odd (a, b) with b^2*{d} = a^2 +- 4 up to b <= {search_bound}"),
                },
            },
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Certificate for one cubic order `Z[x_p]`.
#[derive(Debug, Clone, Serialize)]
pub struct CubicCertificate {
    pub p: u32,
    /// `T^3 + p T^2 - 1` reduces to `T^3 + T^2 + 1` mod 2, which has no
    /// roots in F2 and is therefore irreducible.
    pub reduction_irreducible: bool,
    /// `x_p^2 (x_p + p) = 1` holds exactly in the order.
    pub unit_identity: bool,
    /// The GF(8) image of x_p (polynomial bits); must differ from 1.
    pub gf8_image: u8,
    pub pseudo_good: bool,
}

pub fn cubic_certificate(p: u32) -> Result<CubicCertificate> {
    let ring = RingId::CubicOrder(p);
    ring.validate()?;
    let x = RingElem::cubic(ring, 0, 1, 0);
    // Q_p(T) = T^3 + pT^2 - 1 == T^3 + T^2 + 1 mod 2 (p odd, -1 == 1);
    // a cubic over F2 is irreducible iff it has no roots: Q(0) = Q(1) = 1.
    let reduction_irreducible = (p % 2 == 1) && {
        let f2 = RingId::PrimeField(2);
        let eval = |t: i64| -> RingElem {
            let tt = RingElem::from_i64(f2, t);
            let t2 = tt.mul(&tt).unwrap();
            let t3 = t2.mul(&tt).unwrap();
            t3.add(&t2).unwrap().add(&f2.one()).unwrap()
        };
        !eval(0).is_zero() && !eval(1).is_zero()
    };
    let unit_identity = x
        .mul(&x)?
        .mul(&x.add(&RingElem::from_i64(ring, p as i64))?)?
        .is_one();
    let gf8_image = reduce_mod2(&x)?.field_code().unwrap();
    let pseudo_good = matches!(
        is_pseudo_good(ring, 0, None)?,
        PseudoGoodness::Yes { .. }
    );
    Ok(CubicCertificate {
        p,
        reduction_irreducible,
        unit_identity,
        gf8_image,
        pseudo_good,
    })
}

/// One line of the assembled constants report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportLine {
    pub item: String,
    pub value: String,
    /// "paper" for literature-sourced constants, "computed" for values the
    /// toolkit derives or recomputes.
    pub source: &'static str,
}

/// The constants table: the pipeline accounting, both K profiles, both L
/// profiles with the observed product discrepancies, and the lower-bound
/// lines.
pub fn theorem_report() -> Vec<ReportLine> {
    let mut lines = Vec::new();
    lines.push(ReportLine {
        item: "pipeline accounting".into(),
        value: "4(2J - 1) + 10 = 8J + 6 conjugate factors per congruence element".into(),
        source: "computed",
    });
    lines.push(ReportLine {
        item: "K(C2, 2R), infinitely many units (J = 5)".into(),
        value: format!("8*5 + 6 = {}", crate::congruence::pipeline_bound(5)),
        source: "paper",
    });
    lines.push(ReportLine {
        item: "K(C2, 2R), principal ideal domain (J = 80)".into(),
        value: format!("8*80 + 6 = {}", crate::congruence::pipeline_bound(80)),
        source: "paper",
    });
    lines.push(ReportLine {
        item: "L(C2, R) for principal ideal domains".into(),
        value: "320".into(),
        source: "paper",
    });
    lines.push(ReportLine {
        item: "L = 320 products".into(),
        value: "320*646 = 206720, 320*46 = 14720".into(),
        source: "computed",
    });
    lines.push(ReportLine {
        item: "L = 384 products".into(),
        value: "384*646 = 248064, 384*46 = 17664".into(),
        source: "computed",
    });
    lines.push(ReportLine {
        item: "headline bound discrepancy".into(),
        value: "the published 248064k matches L = 384 exactly (not L = 320); \
                the published 17644 appears to be a typo for 17664 = 384*46; \
                both profiles are reported, no silent choice is made"
            .into(),
        source: "computed",
    });
    lines.push(ReportLine {
        item: "Delta_infty(Sp4(F2))".into(),
        value: "<= 5 via cn(S6) = 5".into(),
        source: "computed",
    });
    lines.push(ReportLine {
        item: "Delta_infty(Sp4(F4))".into(),
        value: "<= 4 via cn(Sp4(F4)) = 4".into(),
        source: "paper",
    });
    lines.push(ReportLine {
        item: "lower bound".into(),
        value: "Delta_k(Sp4(R)) >= 4k + r(R) for k >= r(R)".into(),
        source: "paper",
    });
    lines.push(ReportLine {
        item: "lower bound witness over Z (k = 2, aux prime 3)".into(),
        value: "S = {eps_beta(3), eps_beta(2)} certifies 9 = 4*2 + 1".into(),
        source: "computed",
    });
    lines
}
