//! Normal-generation classification and strong-boundedness bound assembly:
//! the maximal-ideal obstruction Π(S), the abelianization onto F2^r, the
//! two-leg classifier, and the Δ_k lower/upper bound reports.

use crate::congruence::unipotent_factor;
use crate::error::{Error, Result};
use crate::finite::{word_norm_profile, TableCache};
use crate::rings::ideal::{ideal_sum_product_is_unit, IdealVerdict};
use crate::rings::{reduce_mod2, RingElem, RingId};
use crate::sp4::{root_element, Root, SpMatrix};
use num_bigint::BigInt;

/// Number of primes over 2 with residue field F2; the F2-rank of the
/// abelianization of Sp4(R).
pub fn r_of_ring(ring: RingId) -> Result<usize> {
    ring.validate()?;
    Ok(match ring {
        RingId::Integers | RingId::LocalizedIntegers(_) => 1,
        // 2 is inert: 2R is prime with residue GF(4)
        RingId::QuadraticOrder(d) => {
            if d.rem_euclid(8) == 5 {
                0
            } else {
                return Err(Error::UnsupportedRing(format!(
                    "O({d}): the splitting of 2 is outside the catalog"
                )));
            }
        }
        RingId::CubicOrder(_) => 0,
        // 2R = (0) in F2, a prime with residue F2; 2R = R in F3
        RingId::PrimeField(2) => 1,
        RingId::PrimeField(_) => 0,
        RingId::Gf4 | RingId::Gf8 => 0,
    })
}

/// Verdict of the Π(S) = ∅ test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiVerdict {
    Empty,
    /// A non-unit obstruction ideal (gcd or HNF rows rendered as text).
    Witness(String),
}

fn shifted_entries(a: &SpMatrix, shift: i64) -> Result<Vec<RingElem>> {
    let ring = a.ring();
    let mut out = Vec::with_capacity(16);
    for i in 0..4 {
        for j in 0..4 {
            let d = if i == j {
                RingElem::from_i64(ring, shift)
            } else {
                ring.zero()
            };
            out.push(a.at(i, j).add(&d)?);
        }
    }
    Ok(out)
}

/// Decides whether Π(S) is empty: no maximal ideal at which every element
/// of S reduces to ±I. Computably, `Σ_A I(A - I) · I(A + I) = R`.
pub fn pi_is_empty(s: &[SpMatrix]) -> Result<PiVerdict> {
    let ring = match s.first() {
        Some(a) => a.ring(),
        None => return Ok(PiVerdict::Witness("empty set".into())),
    };
    if ring.is_field() {
        // the only maximal ideal is (0); centrality means A = +-I
        let id = SpMatrix::identity(ring);
        let neg_id = id.neg();
        for a in s {
            if *a != id && *a != neg_id {
                return Ok(PiVerdict::Empty);
            }
        }
        return Ok(PiVerdict::Witness("(0): every element is central".into()));
    }
    let mut sets: Vec<Vec<RingElem>> = Vec::with_capacity(s.len());
    for a in s {
        if a.ring() != ring {
            return Err(Error::MixedRings(ring.to_string(), a.ring().to_string()));
        }
        let minus = shifted_entries(a, -1)?;
        let plus = shifted_entries(a, 1)?;
        // I(A-I) * I(A+I) is generated by the pairwise entry products
        let mut prods = Vec::with_capacity(256);
        for x in &minus {
            for y in &plus {
                prods.push(x.mul(y)?);
            }
        }
        sets.push(prods);
    }
    match ideal_sum_product_is_unit(ring, &sets)? {
        IdealVerdict::Unit => Ok(PiVerdict::Empty),
        IdealVerdict::WitnessGcd(g) => Ok(PiVerdict::Witness(format!("({g})"))),
        IdealVerdict::WitnessHnf(rows) => Ok(PiVerdict::Witness(format!(
            "HNF[[{}, {}], [{}, {}]]",
            rows[0][0], rows[0][1], rows[1][0], rows[1][1]
        ))),
    }
}

/// Image of a matrix under the abelianization `Sp4(R) -> F2^r`, computed
/// by factoring into root elements and summing parameters mod each prime
/// over 2 with residue F2.
pub fn abelianization(m: &SpMatrix) -> Result<Vec<u8>> {
    let ring = m.ring();
    let r = r_of_ring(ring)?;
    if r == 0 {
        return Ok(vec![]);
    }
    let word = unipotent_factor(m)?;
    let mut bit = 0u8;
    for (_, t) in word.letters() {
        let residue = reduce_mod2(t)?;
        bit ^= residue.field_code().unwrap();
    }
    Ok(vec![bit])
}

/// Verdict of the normal-generation classifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyVerdict {
    Yes,
    No { reason: String },
}

/// Classifies whether S normally generates Sp4(R): Π(S) must be empty and
/// the abelianization images must span F2^r.
pub fn classify_normal_gen(s: &[SpMatrix]) -> Result<ClassifyVerdict> {
    if s.is_empty() {
        return Ok(ClassifyVerdict::No { reason: "empty set".into() });
    }
    let ring = s[0].ring();
    for a in s {
        if !a.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
    }
    match pi_is_empty(s)? {
        PiVerdict::Witness(w) => {
            return Ok(ClassifyVerdict::No {
                reason: format!("Pi(S) is nonempty; obstruction ideal {w}"),
            })
        }
        PiVerdict::Empty => {}
    }
    let r = r_of_ring(ring)?;
    if r == 0 {
        return Ok(ClassifyVerdict::Yes);
    }
    // r = 1 throughout the catalog: the images must span F2
    let mut any_odd = false;
    for a in s {
        let img = abelianization(a)?;
        if img.iter().any(|&b| b != 0) {
            any_odd = true;
            break;
        }
    }
    if any_odd {
        Ok(ClassifyVerdict::Yes)
    } else {
        Ok(ClassifyVerdict::No {
            reason: "abelianization images do not span F2^r".into(),
        })
    }
}

/// One quotient's contribution to the lower-bound certificate.
#[derive(Debug, Clone)]
pub struct QuotientContribution {
    pub prime: u64,
    /// The generator parameter's residue in F_p.
    pub residue_param: u64,
    /// The certified per-quotient constant (5 for p = 2, 4 otherwise).
    pub certified: u32,
    /// "bfs" when the quotient table was enumerated and the diameter
    /// computed; "paper" when the proven constant is taken on faith.
    pub source: &'static str,
    /// The exact BFS diameter when computed.
    pub bfs_diameter: Option<u32>,
}

/// Lower-bound certificate for `Delta_k(Sp4(Z)) >= 4k + r`.
#[derive(Debug, Clone)]
pub struct LowerBoundReport {
    pub k: usize,
    pub r: usize,
    /// Generator parameters r_1, .., r_k of the witness set
    /// `S = {eps_beta(r_u)}`.
    pub params: Vec<BigInt>,
    pub normally_generates: bool,
    /// `4k + r`, every term certified against its quotient.
    pub certified_lower: u32,
    /// Sum of the exact quotient diameters where computed (may exceed the
    /// certified bound; never smaller).
    pub measured_lower: u32,
    pub contributions: Vec<QuotientContribution>,
}

/// Builds the witness set of the lower-bound theorem over Z and certifies
/// `Delta_k >= 4k + r(Z) = 4k + 1` through the quotient product.
///
/// `aux_primes` supplies the k-1 distinct odd primes; quotients at 2 and 3
/// are certified by BFS in the enumerated tables, larger primes contribute
/// the proven constant 4 with a paper-source flag.
pub fn delta_lower_certify(
    ring: RingId,
    k: usize,
    aux_primes: &[u64],
    tables: &mut TableCache,
) -> Result<LowerBoundReport> {
    if ring != RingId::Integers {
        return Err(Error::UnsupportedRing(format!(
            "{ring}: the lower-bound construction runs over Z at desk scale"
        )));
    }
    if k == 0 || aux_primes.len() != k - 1 {
        return Err(Error::BadInput(format!(
            "k = {k} requires exactly {} auxiliary primes",
            k.saturating_sub(1)
        )));
    }
    if k > 32 {
        return Err(Error::TooLarge(format!("k = {k} exceeds the desk-scale cap 32")));
    }
    let mut seen = std::collections::HashSet::new();
    for &p in aux_primes {
        if p == 2 || p < 3 || !seen.insert(p) || !is_prime_u64(p) {
            return Err(Error::BadInput(format!(
                "auxiliary primes must be distinct odd primes; got {p}"
            )));
        }
    }

    // r(Z) = 1 with P_1 = (2), x_1 = 2 (class number 1). The recipe:
    // r_1 = prod(aux), r_u = 2 * prod(aux except v_u) for u >= 2.
    let r = 1usize;
    let mut params: Vec<BigInt> = Vec::with_capacity(k);
    let full: BigInt = aux_primes.iter().product::<u64>().into();
    params.push(full);
    for (u, &v) in aux_primes.iter().enumerate() {
        let mut prod = BigInt::from(2);
        for (w, &p) in aux_primes.iter().enumerate() {
            if w != u {
                prod *= BigInt::from(p);
            }
        }
        let _ = v;
        params.push(prod);
    }

    let set: Vec<SpMatrix> = params
        .iter()
        .map(|p| root_element(ring, Root::Beta, &RingElem::from_bigint(ring, p.clone())))
        .collect();
    let normally_generates = classify_normal_gen(&set)? == ClassifyVerdict::Yes;
    if !normally_generates {
        return Err(Error::ResidualNotIdentity(
            "the constructed witness set fails the classifier".into(),
        ));
    }

    // quotient list: prime 2 paired with r_1, prime v_u with r_u.
    let mut contributions = Vec::with_capacity(k);
    let mut certified = 0u32;
    let mut measured = 0u32;
    let quotients: Vec<(u64, &BigInt)> = std::iter::once((2u64, &params[0]))
        .chain(aux_primes.iter().copied().zip(params[1..].iter()))
        .collect();
    for (p, param) in quotients {
        use num_integer::Integer;
        let residue_param = param.mod_floor(&BigInt::from(p));
        let residue_u64: u64 = u64::try_from(&residue_param).unwrap();
        if residue_u64 == 0 {
            return Err(Error::ResidualNotIdentity(format!(
                "witness parameter vanishes mod {p}"
            )));
        }
        let target: u32 = if p == 2 { 5 } else { 4 };
        let (source, bfs_diameter) = if p == 2 || p == 3 {
            let table = tables.get(p as u8)?;
            let gen = table
                .group
                .pack_root_element(Root::Beta, residue_u64 as u8);
            let ball = word_norm_profile(table, &[gen]);
            let d = ball
                .diameter
                .ok_or_else(|| Error::ResidualNotIdentity(format!(
                    "eps_beta({residue_u64}) fails to normally generate Sp4(F{p})"
                )))?;
            if d < target {
                return Err(Error::ResidualNotIdentity(format!(
                    "BFS diameter {d} in Sp4(F{p}) undercuts the proven constant {target}"
                )));
            }
            ("bfs", Some(d))
        } else {
            ("paper", None)
        };
        certified += target;
        measured += bfs_diameter.unwrap_or(target);
        contributions.push(QuotientContribution {
            prime: p,
            residue_param: residue_u64,
            certified: target,
            source,
            bfs_diameter,
        });
    }
    debug_assert_eq!(certified as usize, 4 * k + r);

    Ok(LowerBoundReport {
        k,
        r,
        params,
        normally_generates,
        certified_lower: certified,
        measured_lower: measured,
        contributions,
    })
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact bound report `Delta_k(Sp4(R)) <= L * K * k + delta_infty(R/2R)`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundReport {
    pub ring: String,
    pub k: u64,
    pub l_const: u64,
    pub k_const: u64,
    pub delta_infty_quotient: u64,
    pub upper: u128,
    /// `4k + r` when `k >= r`.
    pub lower: Option<u64>,
    pub constants_provenance: Vec<(String, String)>,
}

/// The catalog default for `K(C2, 2R)`: 46 with infinitely many units,
/// 646 for the PID route.
pub fn default_k_const(ring: RingId) -> u64 {
    match ring {
        RingId::Integers | RingId::QuadraticOrder(-3) => 646,
        _ => 46,
    }
}

/// `Delta_infty(Sp4(R/2R))`: 5 for residue F2, 4 for residue GF(4).
pub fn delta_infty_quotient(ring: RingId) -> Result<u64> {
    match ring.residue_ring()? {
        RingId::PrimeField(2) => Ok(5),
        RingId::Gf4 => Ok(4),
        other => Err(Error::UnsupportedRing(format!(
            "no covering-number constant for residue {other}"
        ))),
    }
}

pub fn delta_upper_report(ring: RingId, k: u64, l: u64, k_const: u64) -> Result<BoundReport> {
    ring.validate()?;
    let d_inf = delta_infty_quotient(ring)?;
    let r = r_of_ring(ring)? as u64;
    let upper = (l as u128) * (k_const as u128) * (k as u128) + d_inf as u128;
    let lower = if k >= r { Some(4 * k + r) } else { None };
    let mut provenance = vec![
        (
            format!("L = {l}"),
            if l == 320 {
                "centralization constant L(C2, R) for principal ideal domains".to_string()
            } else {
                "alternate L profile matching the headline products (384*646 = 248064, 384*46 = 17664)"
                    .to_string()
            },
        ),
        (
            format!("K = {k_const}"),
            match k_const {
                46 => "level-2R factorization bound 8J+6 with J = 5 (infinitely many units)".into(),
                646 => "level-2R factorization bound 8J+6 with J = 80 (principal ideal domain)".into(),
                _ => "caller-supplied".into(),
            },
        ),
        (
            format!("delta_infty = {d_inf}"),
            match d_inf {
                5 => "covering number of Sp4(F2) = S6 (computed: cn = 5)".into(),
                4 => "covering number of Sp4(F4) (literature value 4; recomputable)".into(),
                _ => unreachable!(),
            },
        ),
    ];
    if matches!(ring, RingId::QuadraticOrder(d) if d > 0) {
        provenance.push((
            "class number".into(),
            "O(D) is assumed a principal ideal domain; this hypothesis is not verified here"
                .into(),
        ));
    }
    Ok(BoundReport {
        ring: ring.to_string(),
        k,
        l_const: l,
        k_const,
        delta_infty_quotient: d_inf,
        upper,
        lower,
        constants_provenance: provenance,
    })
}
