//! Degree-truncated depth diagnostics: regular sequences, detection by
//! families of restriction maps, the numbers τ_H, τ_a, τ_aH, the lifting
//! lemma for powers, associated-prime witnesses and the Duflot-tightness
//! equivalences.
//!
//! Positive verdicts hold "through degree D"; witnesses of failure are exact.
//! Witness search takes the lowest degree first, then the lexicographically
//! smallest coordinate vector in the quotient's monomial basis.

use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::cohmodel::CohomologySystem;
use crate::error::{Error, Result};
use crate::fplinalg::{FpMatrix, Subspace};
use crate::graded::map::joint_kernel_in_degree;
use crate::graded::{AlgebraMap, Element, PresentedAlgebra};
use crate::polarise::{Mode, ParameterSystem};
use crate::verdict::Verdict;

fn as_string<S: Serializer>(e: &Element, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

/// A class of a quotient ring, with its degree and quotient coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub degree: u32,
    #[serde(serialize_with = "as_string")]
    pub element: Element,
    pub coords: Vec<u32>,
}

impl Witness {
    fn from_coords(a: &PresentedAlgebra, degree: u32, coords: &[u32]) -> Self {
        Witness {
            degree,
            element: a.element_from_coords(degree, coords),
            coords: coords.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StepVerdict {
    /// Multiplication by the element is injective on the quotient by its
    /// predecessors in every degree <= `through`.
    Regular { through: u32 },
    ZeroDivisor { witness: Witness },
    NotReached,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegSeqCertificate {
    #[serde(serialize_with = "strings")]
    pub sequence: Vec<Element>,
    pub bound: u32,
    pub steps: Vec<StepVerdict>,
    /// The Hilbert-series criterion H_{Q/θ} = (1 - t^deg θ) H_Q mod t^{D+1}
    /// gave the same answer as the injectivity check at every step.
    pub hilbert_agrees: bool,
}

fn strings<S: Serializer>(v: &[Element], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|e| e.to_string()))
}

impl RegSeqCertificate {
    /// Length of the longest prefix certified regular.
    pub fn regular_prefix(&self) -> usize {
        self.steps
            .iter()
            .take_while(|s| matches!(s, StepVerdict::Regular { .. }))
            .count()
    }

    pub fn is_regular(&self) -> bool {
        self.regular_prefix() == self.sequence.len()
    }

    pub fn verdict(&self) -> Verdict {
        match self.steps.iter().find(|s| !matches!(s, StepVerdict::Regular { .. })) {
            None => Verdict::through(self.bound),
            Some(StepVerdict::ZeroDivisor { witness }) => {
                let k = self.regular_prefix();
                Verdict::fail(format!(
                    "element {} kills {} (degree {}) modulo its predecessors",
                    k + 1,
                    witness.element,
                    witness.degree
                ))
            }
            Some(_) => Verdict::unknown("sequence not fully examined"),
        }
    }
}

fn homogeneous_degree(e: &Element) -> Result<u32> {
    match e.degree() {
        Err(_) => Err(Error::Inhomogeneous(e.to_string())),
        Ok(None) => Err(Error::Invalid("zero has no degree".into())),
        Ok(Some(0)) => Err(Error::Invalid(format!("{e} has degree 0"))),
        Ok(Some(d)) => Ok(d),
    }
}

/// Checks each prefix θ_1..θ_k: multiplication by θ_{k+1} must be injective on
/// A/(θ_1..θ_k) in degrees <= D - deg θ_{k+1}. Stops at the first failure.
pub fn is_regular_sequence(a: &PresentedAlgebra, seq: &[Element], bound: u32) -> Result<RegSeqCertificate> {
    let degrees = seq.iter().map(homogeneous_degree).collect::<Result<Vec<_>>>()?;
    let mut quotient = a.clone();
    let mut steps = Vec::new();
    let mut hilbert_agrees = true;
    let mut failed = false;
    for (theta, &e) in seq.iter().zip(&degrees) {
        if failed {
            steps.push(StepVerdict::NotReached);
            continue;
        }
        let theta = theta.rehost(quotient.free())?;
        let mut witness = None;
        if e <= bound {
            for d in 0..=bound - e {
                let kernel = quotient.multiplication_matrix(&theta, d)?.kernel_basis();
                if let Some(v) = kernel.smallest_nonzero() {
                    witness = Some(Witness::from_coords(&quotient, d, v));
                    break;
                }
            }
        }
        let next = quotient.quotient(std::slice::from_ref(&theta))?;
        let h = quotient.hilbert_series(bound);
        let hq = next.hilbert_series(bound);
        let factorises = (0..=bound as usize).all(|d| {
            let shifted = if d >= e as usize { h[d - e as usize] } else { 0 };
            hq[d] as i64 == h[d] as i64 - shifted as i64
        });
        if factorises != witness.is_none() {
            hilbert_agrees = false;
        }
        match witness {
            Some(w) => {
                steps.push(StepVerdict::ZeroDivisor { witness: w });
                failed = true;
            }
            None => steps.push(StepVerdict::Regular { through: bound }),
        }
        quotient = next;
    }
    Ok(RegSeqCertificate {
        sequence: seq.to_vec(),
        bound,
        steps,
        hilbert_agrees,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Detection {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

/// Injectivity of R/(I) -> ∏ S_h/(f_h(I)) through degree `bound`. All maps
/// must start at `r`. An empty family detects nothing but the zero ring.
pub fn detection_injective(
    r: &Arc<PresentedAlgebra>,
    maps: &[AlgebraMap],
    mod_ideal: &[Element],
    bound: u32,
) -> Result<Detection> {
    for m in maps {
        if **m.source() != **r {
            return Err(Error::Invalid("detection maps must share the source ring".into()));
        }
    }
    let ideal = mod_ideal.iter().map(|x| x.rehost(r.free())).collect::<Result<Vec<_>>>()?;
    let quotient = r.quotient(&ideal)?;
    let induced = maps.iter().map(|m| m.modulo(&ideal)).collect::<Result<Vec<_>>>()?;
    for d in 0..=bound {
        let kernel = joint_kernel_in_degree(&induced, &quotient, d)?;
        if let Some(v) = kernel.smallest_nonzero() {
            let w = Witness::from_coords(&quotient, d, v);
            return Ok(Detection {
                verdict: Verdict::fail(format!("{} (degree {d}) is not detected", w.element)),
                witness: Some(w),
            });
        }
    }
    Ok(Detection {
        verdict: Verdict::through(bound),
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftReport {
    pub powers: Vec<u32>,
    /// Injectivity modulo (θ_i^{n_i}) through `bound`.
    pub premise: Verdict,
    /// What the lemma concludes for the quotient by (θ_i), with the bound
    /// lowered by sum (n_i - 1) deg θ_i.
    pub conclusion: Verdict,
    /// Injectivity modulo (θ_i), computed directly through the same bound.
    pub direct: Verdict,
    /// False when the premise holds but the direct check finds a kernel
    /// element, which would contradict the lemma.
    pub consistent: bool,
}

/// Checker for the lemma: if θ is regular and R/(θ^n) -> S/(f θ^n) is
/// injective, then R/(θ) -> S/(f θ) is injective. Refuses to conclude
/// without a certificate that `seq` is regular.
pub fn lift_injection_through_powers(
    r: &Arc<PresentedAlgebra>,
    maps: &[AlgebraMap],
    seq: &[Element],
    powers: &[u32],
    bound: u32,
    certificate: Option<&RegSeqCertificate>,
) -> Result<LiftReport> {
    if powers.len() != seq.len() || powers.contains(&0) {
        return Err(Error::Invalid("one positive power per sequence element is required".into()));
    }
    let powered: Vec<Element> = seq.iter().zip(powers).map(|(t, &n)| t.pow(n as u64)).collect();
    let premise = detection_injective(r, maps, &powered, bound)?.verdict;
    let mut shift = 0u32;
    for (t, &n) in seq.iter().zip(powers) {
        shift += (n - 1) * homogeneous_degree(t)?;
    }
    let lowered = bound.saturating_sub(shift);
    let regular = match certificate {
        None => None,
        Some(c) if c.sequence == seq && c.is_regular() && c.bound >= bound => Some(c),
        Some(_) => None,
    };
    let conclusion = match (&premise, regular) {
        (_, None) => Verdict::unknown("no certificate that the sequence is regular through the bound"),
        (Verdict::Pass { .. }, Some(_)) => Verdict::through(lowered),
        (Verdict::Fail { .. }, Some(_)) => Verdict::unknown("premise fails; the lemma gives nothing"),
        (Verdict::Unknown { .. }, Some(_)) => premise.clone(),
    };
    let direct = detection_injective(r, maps, seq, lowered)?.verdict;
    let consistent = !(conclusion.is_pass() && direct.is_fail());
    Ok(LiftReport {
        powers: powers.to_vec(),
        premise,
        conclusion,
        direct,
        consistent,
    })
}

/// Smallest-degree x ∉ I with κ_j x ∈ I for every j, searched through
/// `bound`. This certifies Ann(x) ⊇ (κ), not that Ann(x) is prime.
pub fn assoc_prime_witness(
    r: &PresentedAlgebra,
    ideal: &[Element],
    kappas: &[Element],
    bound: u32,
) -> Result<Option<Witness>> {
    let q = r.quotient(ideal)?;
    for k in kappas {
        homogeneous_degree(k)?;
    }
    let f = q.field();
    for d in 0..=bound {
        let n = q.dim(d);
        if n == 0 {
            continue;
        }
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for k in kappas {
            rows.extend(q.multiplication_matrix(&k.rehost(q.free())?, d)?.row_vectors());
        }
        let kernel = if rows.is_empty() {
            Subspace::full(f, n)
        } else {
            FpMatrix::from_residue_rows(f, n, rows)?.kernel_basis()
        };
        if let Some(v) = kernel.smallest_nonzero() {
            return Ok(Some(Witness::from_coords(&q, d, v)));
        }
    }
    Ok(None)
}

/// A depth-type number that may be unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthNumber {
    pub value: Option<usize>,
    pub note: String,
}

impl DepthNumber {
    fn known(value: usize, note: impl Into<String>) -> Self {
        DepthNumber {
            value: Some(value),
            note: note.into(),
        }
    }

    fn unknown(note: impl Into<String>) -> Self {
        DepthNumber {
            value: None,
            note: note.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DepthReport {
    pub z: usize,
    pub r: usize,
    pub bound: u32,
    pub s_a: DepthNumber,
    pub tau_a: DepthNumber,
    /// Membership of 0..=r-z in S_aH; `None` where the data is missing.
    pub s_ah_set: Vec<Option<bool>>,
    pub s_ah: DepthNumber,
    pub tau_ah: DepthNumber,
    pub tau_h: DepthNumber,
    pub regularity: Option<RegSeqCertificate>,
    pub non_detected: Vec<(usize, Witness)>,
    pub tightness: TightnessReport,
    /// Bounded computations contradicting a theorem.
    pub red_alerts: Vec<String>,
    pub notes: Vec<String>,
}

/// Restrictions realising the family ℋᶜ_d, when they are available. For
/// d = z the family is {G}. Otherwise each V ∈ 𝒜ᶜ_d must equal its
/// centraliser, and the restriction to V must be supplied.
pub fn centralizer_family(sys: &CohomologySystem, d: usize) -> std::result::Result<Vec<AlgebraMap>, String> {
    let params = sys.params();
    if d == params.z {
        return Ok(vec![AlgebraMap::identity(Arc::clone(sys.ring()))]);
    }
    let g = sys.group().ok_or("no group table to enumerate the family")?;
    let mut maps = Vec::new();
    for v in g.enumerate_acd(d as u32).members {
        if g.centralizer(&v) != v {
            return Err(format!(
                "C_G(V) for V = {} is larger than V; its cohomology is not supplied",
                v.id()
            ));
        }
        let r = sys
            .restriction(&v.id())
            .ok_or_else(|| format!("no restriction to {}", v.id()))?;
        maps.push(r.map.clone());
    }
    Ok(maps)
}

/// Default bound: twice the largest parameter degree plus the largest
/// relation degree.
pub fn default_bound(sys: &CohomologySystem, ps: &ParameterSystem) -> u32 {
    2 * ps.degrees().into_iter().max().unwrap_or(0) + sys.ring().max_relation_degree()
}

/// s_a, S_aH, τ_a, τ_aH and τ_H for a ring-mode parameter system.
pub fn tau_numbers(sys: &CohomologySystem, ps: &ParameterSystem, bound: u32) -> Result<DepthReport> {
    let params = sys.params();
    let (z, r) = (params.z, params.r);
    let mut report = DepthReport {
        z,
        r,
        bound,
        s_a: DepthNumber::unknown("not computed"),
        tau_a: DepthNumber::unknown("not computed"),
        s_ah_set: vec![None; r - z + 1],
        s_ah: DepthNumber::unknown("not computed"),
        tau_ah: DepthNumber::unknown("not computed"),
        tau_h: DepthNumber::unknown("not computed"),
        regularity: None,
        non_detected: Vec::new(),
        tightness: TightnessReport::default(),
        red_alerts: Vec::new(),
        notes: vec!["for a polarised system τ_a = τ_aH = depth (the theorem on polarised systems)".into()],
    };
    if ps.mode != Mode::Ring {
        let why = "restriction-only system: no ring-level parameters";
        report.s_a = DepthNumber::unknown(why);
        report.tau_a = DepthNumber::unknown(why);
        report.s_ah = DepthNumber::unknown(why);
        report.tau_ah = DepthNumber::unknown(why);
    } else {
        let cert = is_regular_sequence(sys.ring(), &ps.kappas, bound)?;
        if !cert.hilbert_agrees {
            report
                .red_alerts
                .push("injectivity and Hilbert-series criteria disagree on the κ sequence".into());
        }
        let s_a = cert.regular_prefix();
        report.s_a = DepthNumber::known(s_a, format!("κ_1..κ_{s_a} regular through degree {bound}"));
        report.tau_a = DepthNumber::known(z + s_a, "z + s_a");
        report.regularity = Some(cert);

        report.s_ah_set[0] = Some(true);
        for s in 1..=r - z {
            let maps = match centralizer_family(sys, z + s) {
                Ok(m) => m,
                Err(why) => {
                    report.notes.push(format!("S_aH membership of {s}: {why}"));
                    continue;
                }
            };
            let det = detection_injective(sys.ring(), &maps, &ps.kappas[..s - 1], bound)?;
            report.s_ah_set[s] = det.verdict.as_bool();
            if let Some(w) = det.witness {
                report.non_detected.push((z + s, w));
            }
        }
        let known_prefix = report.s_ah_set.iter().take_while(|m| m.is_some()).count();
        let members: Vec<usize> = (0..=r - z).filter(|&s| report.s_ah_set[s] == Some(true)).collect();
        let s_ah = *members.last().unwrap_or(&0);
        if members.iter().enumerate().any(|(i, &s)| i != s) {
            report
                .red_alerts
                .push(format!("S_aH = {members:?} is not an initial segment"));
        }
        // the maximum is only certain once every larger s is known
        if report.s_ah_set[s_ah + 1..].iter().all(|m| m.is_some()) || known_prefix == r - z + 1 {
            report.s_ah = DepthNumber::known(s_ah, format!("max S_aH through degree {bound}"));
            report.tau_ah = DepthNumber::known(z + s_ah, "z + s_aH");
        } else {
            report.s_ah = DepthNumber::unknown(format!("at least {s_ah}; some families lack data"));
            report.tau_ah = DepthNumber::unknown(format!("at least {}", z + s_ah));
        }
    }

    let mut detects = Vec::new();
    for d in z..=r {
        match centralizer_family(sys, d) {
            Ok(maps) => {
                let det = detection_injective(sys.ring(), &maps, &[], bound)?;
                if let Some(w) = &det.witness {
                    if !report.non_detected.iter().any(|(dd, _)| *dd == d) {
                        report.non_detected.push((d, w.clone()));
                    }
                }
                detects.push(det.verdict.as_bool());
            }
            Err(why) => {
                report.notes.push(format!("ℋᶜ_{d}: {why}"));
                detects.push(None);
            }
        }
    }
    let best = (z..=r).zip(&detects).filter(|(_, v)| **v == Some(true)).map(|(d, _)| d).max();
    let best = best.unwrap_or(z);
    report.tau_h = if detects[best - z + 1..].iter().all(|v| v.is_some()) {
        DepthNumber::known(best, format!("largest d whose ℋᶜ_d detects, through degree {bound}"))
    } else {
        DepthNumber::unknown(format!("at least {best}"))
    };

    if let (Some(ta), Some(tah)) = (report.tau_a.value, report.tau_ah.value) {
        if ta < tah {
            report.red_alerts.push(format!("τ_a = {ta} < τ_aH = {tah}"));
        }
        if ta != tah {
            report
                .red_alerts
                .push(format!("τ_a = {ta} differs from τ_aH = {tah} (should coincide for polarised systems)"));
        }
    }
    if let (Some(th), Some(tah)) = (report.tau_h.value, report.tau_ah.value) {
        if th < tah {
            report.red_alerts.push(format!("τ_H = {th} < τ_aH = {tah}"));
        }
    }
    report.tightness = duflot_tightness(sys, ps, bound)?;
    if !report.tightness.consistent {
        report
            .red_alerts
            .push("the equivalent depth-z statements disagree; raise the bound".into());
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Statement {
    pub label: String,
    pub holds: Option<bool>,
    pub detail: String,
}

/// The five equivalent conditions for depth = z, each evaluated separately.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TightnessReport {
    pub statements: Vec<Statement>,
    /// depth = z, when the computed statements agree.
    pub tight: Option<bool>,
    pub consistent: bool,
}

/// Evaluates the equivalent characterisations of depth = z at bound D.
/// With r = z there are no κ's: depth = z = r is forced, so the κ
/// statements hold vacuously and the empty family ℋᶜ_{z+1} detects nothing.
pub fn duflot_tightness(sys: &CohomologySystem, ps: &ParameterSystem, bound: u32) -> Result<TightnessReport> {
    let params = sys.params();
    let (z, r) = (params.z, params.r);
    let mut statements = Vec::new();

    let not_detected = if z == r {
        Statement {
            label: "not detected on ℋᶜ_{z+1}".into(),
            holds: Some(true),
            detail: "the family is empty".into(),
        }
    } else {
        match centralizer_family(sys, z + 1) {
            Ok(maps) => {
                let det = detection_injective(sys.ring(), &maps, &[], bound)?;
                Statement {
                    label: "not detected on ℋᶜ_{z+1}".into(),
                    holds: det.verdict.as_bool().map(|b| !b),
                    detail: format!("detection: {}", det.verdict),
                }
            }
            Err(why) => Statement {
                label: "not detected on ℋᶜ_{z+1}".into(),
                holds: None,
                detail: why,
            },
        }
    };
    statements.push(not_detected);

    let ring_mode = ps.mode == Mode::Ring;
    let unknown = |label: &str| Statement {
        label: label.into(),
        holds: None,
        detail: "restriction-only system: ring-level statement not computable".into(),
    };
    if ring_mode {
        let w = assoc_prime_witness(sys.ring(), &[], &ps.kappas, bound)?;
        statements.push(Statement {
            label: "associated prime of dimension z".into(),
            holds: Some(w.is_some()),
            detail: match &w {
                Some(w) => format!("{} (degree {}) is killed by every κ_j", w.element, w.degree),
                None => format!("no nonzero class killed by all κ_j through degree {bound}"),
            },
        });
        let k1 = match ps.kappas.first() {
            None => Statement {
                label: "κ_1 is a zero divisor".into(),
                holds: Some(true),
                detail: "r = z: no κ's, depth = z is forced".into(),
            },
            Some(k) => {
                let c = is_regular_sequence(sys.ring(), std::slice::from_ref(k), bound)?;
                Statement {
                    label: "κ_1 is a zero divisor".into(),
                    holds: Some(!c.is_regular()),
                    detail: c.verdict().to_string(),
                }
            }
        };
        statements.push(k1);
        let tau_a_is_z = match ps.kappas.first() {
            None => Some(true),
            Some(_) => statements.last().and_then(|s| s.holds),
        };
        statements.push(Statement {
            label: "depth = z (via τ_a)".into(),
            holds: tau_a_is_z,
            detail: "τ_a = z exactly when κ_1 is a zero divisor".into(),
        });
    } else {
        statements.push(unknown("associated prime of dimension z"));
        statements.push(unknown("κ_1 is a zero divisor"));
        statements.push(unknown("depth = z (via τ_a)"));
    }
    let known: Vec<bool> = statements.iter().filter_map(|s| s.holds).collect();
    let consistent = known.windows(2).all(|w| w[0] == w[1]);
    Ok(TightnessReport {
        tight: if consistent { known.first().copied() } else { None },
        statements,
        consistent,
    })
}
