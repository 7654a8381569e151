//! Numeric invariants of a valuation ring `V` of `K` in characteristic `p`,
//! and the verdicts built from them: F-finiteness, whether `V` is a DVR,
//! and whether `V` is Frobenius split.
//!
//! Descriptors are taken at their word: a declared value group or residue
//! field is not re-derived from the construction.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::ClassifyError;
use crate::field::GroundField;
use crate::frob::{splitting_witness, SplittingWitness};
use crate::group::ValueGroup;
use crate::ratfunc::FieldDescriptor;
use crate::sample::PolyShape;
use crate::series::SeriesEmbedding;
use crate::valuation::{GaussValuation, GaussVariant, MonomialValuation};

/// A valuation together with the data the classifier reads off it.
#[derive(Clone, Debug)]
pub enum ValuationDescriptor {
    /// A monomial valuation on `F_q(x_1..x_n)`.
    Monomial(MonomialValuation),
    /// The Gauss extension of the `s`-adic valuation of `F_p(s^{1/p^∞})`
    /// to `L(X)`.
    Gauss(GaussValuation),
    /// The discrete valuation of `F_p(X, Y)` pulled back from `F_p((t))`.
    SeriesEmbedding(SeriesEmbedding),
    /// A valuation of `F_p(X, Y)` with value group `Z[1/p]` and residue
    /// field `F_p`, as realized by Hahn series.
    Hahn { p: u32 },
    /// The `t`-adic valuation of `κ((t))`.
    Laurent { residue: FieldDescriptor },
}

/// A local domain `R` dominated by `V`, described by its dimension and
/// residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterDescriptor {
    pub dimension: usize,
    pub residue_field: FieldDescriptor,
    /// The standard center (a localized polynomial ring, or `V` itself for
    /// complete DVRs).
    pub canonical: bool,
    pub description: String,
}

impl CenterDescriptor {
    pub fn new(dimension: usize, residue_field: FieldDescriptor, description: impl Into<String>) -> Self {
        CenterDescriptor {
            dimension,
            residue_field,
            canonical: false,
            description: description.into(),
        }
    }
}

fn prime_field(p: u32) -> FieldDescriptor {
    FieldDescriptor::new(GroundField::prime(p).expect("descriptor primes are validated"), Vec::<String>::new())
}

fn field_label(field: &FieldDescriptor) -> String {
    let q = field.base.order();
    if field.variables.is_empty() {
        format!("F_{q}")
    } else {
        format!("F_{q}({})", field.variables.join(", "))
    }
}

impl ValuationDescriptor {
    pub fn p(&self) -> u32 {
        match self {
            ValuationDescriptor::Monomial(nu) => nu.p(),
            ValuationDescriptor::Gauss(w) => w.p(),
            ValuationDescriptor::SeriesEmbedding(e) => e.field().p(),
            ValuationDescriptor::Hahn { p } => *p,
            ValuationDescriptor::Laurent { residue } => residue.p(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ValuationDescriptor::Monomial(_) => "monomial",
            ValuationDescriptor::Gauss(w) => match w.variant() {
                GaussVariant::GroupFirst => "gauss (group first)",
                GaussVariant::ZFirst => "gauss (degree first)",
            },
            ValuationDescriptor::SeriesEmbedding(_) => "series embedding",
            ValuationDescriptor::Hahn { .. } => "hahn",
            ValuationDescriptor::Laurent { .. } => "laurent",
        }
    }

    /// The field `K`, in words.
    pub fn field_label(&self) -> String {
        let p = self.p();
        match self {
            ValuationDescriptor::Monomial(nu) => field_label(nu.field()),
            ValuationDescriptor::Gauss(_) => format!("L(X), L = F_{p}(s^(1/p^inf))"),
            ValuationDescriptor::SeriesEmbedding(_) | ValuationDescriptor::Hahn { .. } => format!("F_{p}(X, Y)"),
            ValuationDescriptor::Laurent { residue } => format!("{}((t))", field_label(residue)),
        }
    }

    pub fn group(&self) -> ValueGroup {
        match self {
            ValuationDescriptor::Monomial(nu) => nu.group().clone(),
            ValuationDescriptor::Gauss(w) => w.group().clone(),
            ValuationDescriptor::SeriesEmbedding(_) | ValuationDescriptor::Laurent { .. } => ValueGroup::integers(),
            ValuationDescriptor::Hahn { p } => ValueGroup::p_divisible(*p),
        }
    }

    /// `[K : K^p]`.
    pub fn field_degree(&self) -> BigUint {
        let p = BigUint::from(self.p());
        match self {
            ValuationDescriptor::Monomial(nu) => pth_power_degree(nu.field()),
            ValuationDescriptor::Gauss(w) => pth_power_degree(w.field()),
            ValuationDescriptor::SeriesEmbedding(_) | ValuationDescriptor::Hahn { .. } => &p * &p,
            ValuationDescriptor::Laurent { residue } => p * pth_power_degree(residue),
        }
    }

    /// The residue field `κ_ν`.
    pub fn residue_field(&self) -> FieldDescriptor {
        match self {
            ValuationDescriptor::Monomial(nu) => nu.residue_field().field,
            ValuationDescriptor::Laurent { residue } => residue.clone(),
            _ => prime_field(self.p()),
        }
    }

    /// The standard center, when there is one.
    pub fn canonical_center(&self) -> Option<CenterDescriptor> {
        let p = self.p();
        match self {
            ValuationDescriptor::Monomial(nu) => {
                let field = nu.field();
                let (zero, positive): (Vec<usize>, Vec<usize>) =
                    (0..field.nvars()).partition(|&i| nu.weights()[i].is_zero());
                let names = |ix: &[usize]| ix.iter().map(|&i| field.variables[i].clone()).collect::<Vec<_>>();
                let residue = FieldDescriptor::new(field.base, names(&zero));
                let description = format!(
                    "{}[{}] localized at ({})",
                    field_label(&residue),
                    names(&positive).join(", "),
                    names(&positive).join(", ")
                );
                Some(CenterDescriptor {
                    dimension: positive.len(),
                    residue_field: residue,
                    canonical: true,
                    description,
                })
            }
            ValuationDescriptor::Gauss(_) => None,
            ValuationDescriptor::SeriesEmbedding(_) | ValuationDescriptor::Hahn { .. } => Some(CenterDescriptor {
                dimension: 2,
                residue_field: prime_field(p),
                canonical: true,
                description: format!("F_{p}[X, Y] localized at (X, Y)"),
            }),
            ValuationDescriptor::Laurent { residue } => Some(CenterDescriptor {
                dimension: 1,
                residue_field: residue.clone(),
                canonical: true,
                description: "the valuation ring itself".to_string(),
            }),
        }
    }

    /// Transcendence degree of `κ_ν` over `κ_R`, or an error when `κ_R`
    /// is not visibly a subfield of `κ_ν`.
    fn residue_trdeg_over(&self, center: &CenterDescriptor) -> Result<usize, ClassifyError> {
        let kappa = self.residue_field();
        let kr = &center.residue_field;
        let incomparable = |why: String| ClassifyError::IncomparableResidueFields(why);
        if kr.base != kappa.base {
            return Err(incomparable(format!(
                "{} and {} have different ground fields",
                field_label(kr),
                field_label(&kappa)
            )));
        }
        // names of elements of K whose residues are independent in κ_ν
        let available: Vec<String> = match self {
            ValuationDescriptor::Monomial(nu) => {
                let f = nu.field();
                (0..f.nvars())
                    .filter(|&i| nu.weights()[i].is_zero())
                    .map(|i| f.variables[i].clone())
                    .collect()
            }
            ValuationDescriptor::Laurent { residue } => residue.variables.clone(),
            _ => Vec::new(),
        };
        for v in &kr.variables {
            if !available.contains(v) {
                return Err(incomparable(format!(
                    "`{v}` in the residue field of the center is not a unit of {} with a residue in {}",
                    center.description,
                    field_label(&kappa)
                )));
            }
        }
        let mut distinct = kr.variables.clone();
        distinct.sort();
        distinct.dedup();
        Ok(kappa.transcendence_degree() - distinct.len())
    }
}

/// `[K : K^p]` of a rational function field (1 when perfected; the
/// perfectly closed variables contribute nothing).
pub fn pth_power_degree(field: &FieldDescriptor) -> BigUint {
    field.degree_over_pth_powers()
}

/// `log_p` of a power of `p`.
fn log_p(mut n: BigUint, p: u32) -> u32 {
    let mut k = 0;
    while n > BigUint::one() {
        n /= p;
        k += 1;
    }
    k
}

/// Both sides of `[Γ : pΓ]·[κ : κ^p] = [K : K^p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectCheck {
    pub group_index: BigUint,
    pub residue_degree: BigUint,
    pub field_degree: BigUint,
    pub holds: bool,
}

impl DefectCheck {
    pub fn product(&self) -> BigUint {
        &self.group_index * &self.residue_degree
    }
}

pub fn defect_identity(nu: &ValuationDescriptor) -> DefectCheck {
    let group_index = nu.group().index_p_gamma(nu.p());
    let residue_degree = pth_power_degree(&nu.residue_field());
    let field_degree = nu.field_degree();
    let holds = &group_index * &residue_degree == field_degree;
    DefectCheck {
        group_index,
        residue_degree,
        field_degree,
        holds,
    }
}

/// Both sides of `rank_Q(Γ) + trdeg(κ_ν/κ_R) ≤ dim R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbhyankarCheck {
    pub rational_rank: usize,
    pub residue_trdeg: usize,
    pub center_dimension: usize,
    /// Equality: `R` is an Abhyankar center.
    pub holds: bool,
}

/// Whether `R` is an Abhyankar center of `ν`. Errors if the inequality
/// fails (the center cannot be a center of `ν`) or if the residue fields
/// are not comparable.
pub fn abhyankar_center_check(nu: &ValuationDescriptor, center: &CenterDescriptor) -> Result<AbhyankarCheck, ClassifyError> {
    let rational_rank = nu.group().rational_rank();
    let residue_trdeg = nu.residue_trdeg_over(center)?;
    let lhs = rational_rank + residue_trdeg;
    if lhs > center.dimension {
        return Err(ClassifyError::InequalityViolated {
            lhs: format!("{rational_rank} + {residue_trdeg}"),
            rhs: center.dimension.to_string(),
        });
    }
    Ok(AbhyankarCheck {
        rational_rank,
        residue_trdeg,
        center_dimension: center.dimension,
        holds: lhs == center.dimension,
    })
}

/// Both sides of `[K : K^p] = p^{dim R}·[κ_R : κ_R^p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterDegreeCheck {
    pub field_degree: BigUint,
    pub center_side: BigUint,
    pub holds: bool,
}

pub fn center_degree_identity(center: &CenterDescriptor, field_degree: &BigUint, p: u32) -> CenterDegreeCheck {
    let center_side = BigUint::from(p).pow(center.dimension as u32) * pth_power_degree(&center.residue_field);
    CenterDegreeCheck {
        holds: &center_side == field_degree,
        field_degree: field_degree.clone(),
        center_side,
    }
}

/// `[Γ : pΓ]·[κ : κ^p] ≤ p^{dim R}·[κ_R : κ_R^p]`; a violation is an error.
pub fn ramification_residue_bound(nu: &ValuationDescriptor, center: &CenterDescriptor) -> Result<(), ClassifyError> {
    let lhs = defect_identity(nu).product();
    let rhs = BigUint::from(nu.p()).pow(center.dimension as u32) * pth_power_degree(&center.residue_field);
    if lhs > rhs {
        return Err(ClassifyError::InequalityViolated {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
    Ok(())
}

/// `dim_{κ^p}(V / m^{[p]})` and whether `m` is finitely generated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreDimension {
    pub dimension: BigUint,
    pub maximal_ideal_finitely_generated: bool,
}

pub fn fibre_dimension(nu: &ValuationDescriptor) -> FibreDimension {
    let residue = pth_power_degree(&nu.residue_field());
    let principal = nu.group().smallest_positive().is_some();
    FibreDimension {
        dimension: if principal { residue * nu.p() } else { residue },
        maximal_ideal_finitely_generated: principal,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub citation: String,
}

/// Noetherian valuation ring: a field (trivial group) or a DVR.
fn is_noetherian(group: &ValueGroup) -> bool {
    group.krull_dimension() == 0 || group.is_discrete_rank_one()
}

/// `V` is F-finite iff `dim_{κ^p}(V/m^{[p]}) = [K:K^p]`. A yes is cross
/// checked against the consequences `[Γ:pΓ] ∈ {1, p}` and "finitely
/// generated Γ forces a DVR".
pub fn f_finite_verdict(nu: &ValuationDescriptor) -> Result<Verdict, ClassifyError> {
    let fibre = fibre_dimension(nu);
    let degree = nu.field_degree();
    let yes = fibre.dimension == degree;
    if yes {
        let group = nu.group();
        let index = group.index_p_gamma(nu.p());
        if !(index.is_one() || index == BigUint::from(nu.p())) {
            return Err(ClassifyError::Inconsistent(format!(
                "F-finite valuation ring with [Γ:pΓ] = {index}, expected 1 or p"
            )));
        }
        if group.is_finitely_generated() && group.krull_dimension() > 0 && !group.is_discrete_rank_one() {
            return Err(ClassifyError::Inconsistent(
                "F-finite valuation ring with finitely generated value group that is not a DVR".into(),
            ));
        }
    }
    Ok(Verdict {
        answer: Answer::from_bool(yes),
        citation: format!(
            "V is F-finite iff dim_(κ^p)(V/m^[p]) = [K:K^p]; here {} {} {}",
            fibre.dimension,
            if yes { "=" } else { "!=" },
            degree
        ),
    })
}

pub fn dvr_verdict(nu: &ValuationDescriptor) -> Verdict {
    let group = nu.group();
    let yes = group.is_discrete_rank_one();
    Verdict {
        answer: Answer::from_bool(yes),
        citation: format!(
            "a DVR has a finitely generated value group of rational rank 1 with a least positive element; Γ = {group}"
        ),
    }
}

/// Which rule of the splitting decision tree fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitRule {
    /// Noetherian `V`: split iff F-finite.
    Noetherian,
    /// F-finite valuation rings are split.
    FFinite,
    /// `[Γ:pΓ][κ:κ^p] = 1` over a non-perfect `K`: not split.
    TotallyUnramified,
    /// Monomialized Abhyankar valuation: the monomial splitting, verified.
    MonomialSplitting,
    /// No rule applies.
    Undecided,
}

impl SplitRule {
    pub fn number(self) -> u8 {
        match self {
            SplitRule::Noetherian => 1,
            SplitRule::FFinite => 2,
            SplitRule::TotallyUnramified => 3,
            SplitRule::MonomialSplitting => 4,
            SplitRule::Undecided => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SplitRule::Noetherian => "noetherian",
            SplitRule::FFinite => "f-finite",
            SplitRule::TotallyUnramified => "totally-unramified",
            SplitRule::MonomialSplitting => "monomial-splitting",
            SplitRule::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitVerdict {
    pub answer: Answer,
    pub rule: SplitRule,
    pub citation: String,
    pub witness: Option<SplittingWitness>,
}

/// Sample budget for the splitting checks behind a yes from the monomial
/// rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitBudget {
    pub seed: u64,
    pub samples: usize,
}

impl Default for SplitBudget {
    fn default() -> Self {
        SplitBudget { seed: 0, samples: 200 }
    }
}

/// The decision tree; exactly one rule fires, the first that applies.
pub fn split_verdict(nu: &ValuationDescriptor, budget: SplitBudget) -> Result<SplitVerdict, ClassifyError> {
    let group = nu.group();
    let f_finite = f_finite_verdict(nu)?;
    let verdict = |answer, rule, citation: String| SplitVerdict {
        answer,
        rule,
        citation,
        witness: None,
    };
    if group.is_finitely_generated() && group.rational_rank() <= 1 && group.smallest_positive().is_some() {
        return Ok(verdict(
            f_finite.answer,
            SplitRule::Noetherian,
            "a Noetherian valuation ring (DVR) with F-finite fraction field is Frobenius split iff it is F-finite (equivalently excellent)".into(),
        ));
    }
    if f_finite.answer == Answer::Yes {
        return Ok(verdict(Answer::Yes, SplitRule::FFinite, "any F-finite valuation ring is Frobenius split".into()));
    }
    let defect = defect_identity(nu);
    if defect.product().is_one() && !defect.field_degree.is_one() {
        return Ok(verdict(
            Answer::No,
            SplitRule::TotallyUnramified,
            "[Γ:pΓ][κ:κ^p] = 1 while K is not perfect: every element of the maximal ideal is a unit times a p-th power, so no Frobenius splitting of V exists".into(),
        ));
    }
    if let ValuationDescriptor::Monomial(m) = nu {
        if m.verify_monomialized().holds && defect.holds {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            let witness = splitting_witness(m, &mut rng, budget.samples, PolyShape::default())?;
            return Ok(SplitVerdict {
                answer: Answer::Yes,
                rule: SplitRule::MonomialSplitting,
                citation: "the valuation ring of an Abhyankar valuation of a function field over a perfect field is Frobenius split; monomial basis splitting verified".into(),
                witness: Some(witness),
            });
        }
    }
    Ok(verdict(
        Answer::Unknown,
        SplitRule::Undecided,
        "no criterion applies: not Noetherian, not F-finite, defect product strictly between 1 and [K:K^p] or no verified monomial form".into(),
    ))
}

/// Everything the classifier knows about one descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub kind: String,
    pub field: String,
    pub p: u32,
    pub group: String,
    pub residue_field: String,
    pub defect: DefectCheck,
    pub fibre: FibreDimension,
    pub center: Option<CenterDescriptor>,
    pub abhyankar: Option<AbhyankarCheck>,
    pub center_degree: Option<CenterDegreeCheck>,
    pub f_finite: Verdict,
    pub dvr: Verdict,
    pub split: SplitVerdict,
    pub notes: Vec<String>,
    pub budget: SplitBudget,
    pub series_seed: Option<u64>,
    pub series_cap: Option<usize>,
}

/// Full classification; `center` defaults to the canonical one.
pub fn classify(
    nu: &ValuationDescriptor,
    center: Option<&CenterDescriptor>,
    budget: SplitBudget,
) -> Result<ClassificationReport, ClassifyError> {
    if let ValuationDescriptor::Monomial(m) = nu {
        if !m.weights_generate_group() {
            return Err(ClassifyError::Inconsistent(format!(
                "the weights do not generate the declared value group {}",
                m.group()
            )));
        }
    }
    let center = center.cloned().or_else(|| nu.canonical_center());
    let (abhyankar, center_degree) = match &center {
        Some(c) => {
            ramification_residue_bound(nu, c)?;
            (
                Some(abhyankar_center_check(nu, c)?),
                Some(center_degree_identity(c, &nu.field_degree(), nu.p())),
            )
        }
        None => (None, None),
    };
    let defect = defect_identity(nu);
    let fibre = fibre_dimension(nu);
    let f_finite = f_finite_verdict(nu)?;
    let split = split_verdict(nu, budget)?;
    let group = nu.group();
    let mut notes = Vec::new();
    if f_finite.answer == Answer::Yes && !is_noetherian(&group) {
        notes.push(
            "V is F-finite but not Noetherian, so the valuation is not centered on any excellent local domain with fraction field K"
                .to_string(),
        );
    }
    let s = log_p(defect.field_degree.clone(), nu.p());
    if group.krull_dimension() > s as usize {
        notes.push(format!(
            "dim V = {} exceeds s = {s} where [K:K^p] = p^s, so the valuation is not centered on any excellent local domain with fraction field K",
            group.krull_dimension()
        ));
    }
    let (series_seed, series_cap) = match nu {
        ValuationDescriptor::SeriesEmbedding(e) => (e.seed(), Some(e.cap())),
        _ => (None, None),
    };
    Ok(ClassificationReport {
        kind: nu.kind_name().to_string(),
        field: nu.field_label(),
        p: nu.p(),
        group: group.to_string(),
        residue_field: field_label(&nu.residue_field()),
        defect,
        fibre,
        center,
        abhyankar,
        center_degree,
        f_finite,
        dvr: dvr_verdict(nu),
        split,
        notes,
        budget,
        series_seed,
        series_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupElement, Irrational};
    use crate::series::DEFAULT_SEED;

    fn field(p: u32, vars: &[&str]) -> FieldDescriptor {
        FieldDescriptor::new(GroundField::prime(p).unwrap(), vars.iter().copied())
    }

    fn lex(p: u32, n: usize) -> ValuationDescriptor {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        ValuationDescriptor::Monomial(MonomialValuation::lex(FieldDescriptor::new(GroundField::prime(p).unwrap(), names)))
    }

    fn series(p: u32) -> ValuationDescriptor {
        ValuationDescriptor::SeriesEmbedding(SeriesEmbedding::new(p, DEFAULT_SEED).unwrap())
    }

    fn gauss(p: u32, v: GaussVariant) -> ValuationDescriptor {
        ValuationDescriptor::Gauss(GaussValuation::new(p, v).unwrap())
    }

    fn blow_up_chart() -> ValuationDescriptor {
        let k = field(2, &["x", "u", "w"]);
        let nu = MonomialValuation::new(
            k,
            ValueGroup::embedded(Irrational::Pi),
            vec![
                GroupElement::from_integers([1, 0]),
                GroupElement::from_integers([0, 0]),
                GroupElement::from_integers([-1, 1]),
            ],
            vec![0, 2],
            vec![1],
        )
        .unwrap();
        ValuationDescriptor::Monomial(nu)
    }

    #[test]
    fn degrees() {
        let p = 5u32;
        assert_eq!(pth_power_degree(&field(p, &["x", "y"])), BigUint::from(25u32));
        assert_eq!(pth_power_degree(&field(p, &["s"]).perfected()), BigUint::one());
        let w = GaussValuation::new(p, GaussVariant::GroupFirst).unwrap();
        assert_eq!(pth_power_degree(w.field()), BigUint::from(p));
    }

    #[test]
    fn defect_examples() {
        assert!(defect_identity(&lex(3, 3)).holds);
        let d = defect_identity(&series(3));
        assert!(!d.holds);
        assert_eq!((d.product(), d.field_degree), (BigUint::from(3u32), BigUint::from(9u32)));
        assert!(defect_identity(&gauss(3, GaussVariant::GroupFirst)).holds);
    }

    #[test]
    fn abhyankar_examples() {
        let nu = lex(2, 3);
        assert!(abhyankar_center_check(&nu, &nu.canonical_center().unwrap()).unwrap().holds);
        let s = series(2);
        let c = s.canonical_center().unwrap();
        let chk = abhyankar_center_check(&s, &c).unwrap();
        assert_eq!((chk.rational_rank, chk.residue_trdeg, chk.holds), (1, 0, false));
        let own_ring = CenterDescriptor::new(1, prime_field(2), "the valuation ring");
        assert!(abhyankar_center_check(&s, &own_ring).unwrap().holds);
        let chart = blow_up_chart();
        let chk = abhyankar_center_check(&chart, &chart.canonical_center().unwrap()).unwrap();
        assert_eq!((chk.rational_rank, chk.residue_trdeg, chk.center_dimension), (2, 0, 2));
        let bad = CenterDescriptor::new(1, field(2, &["x"]), "bad");
        assert!(matches!(
            abhyankar_center_check(&s, &bad),
            Err(ClassifyError::IncomparableResidueFields(_))
        ));
        let point = CenterDescriptor::new(0, prime_field(2), "a field");
        assert!(matches!(
            abhyankar_center_check(&s, &point),
            Err(ClassifyError::InequalityViolated { .. })
        ));
    }

    #[test]
    fn blow_up_original_coordinates() {
        // weights 1, 1, pi on x, y, z: canonical center has dimension 3 and
        // the residue field picks up y/x
        let k = field(2, &["x", "y", "z"]);
        let nu = MonomialValuation::from_weights(
            k,
            ValueGroup::embedded(Irrational::Pi),
            vec![
                GroupElement::from_integers([1, 0]),
                GroupElement::from_integers([1, 0]),
                GroupElement::from_integers([0, 1]),
            ],
        )
        .unwrap();
        let d = ValuationDescriptor::Monomial(nu);
        let chk = abhyankar_center_check(&d, &d.canonical_center().unwrap()).unwrap();
        assert_eq!((chk.rational_rank, chk.residue_trdeg, chk.center_dimension, chk.holds), (2, 1, 3, true));
    }

    #[test]
    fn center_degree_examples() {
        let nu = lex(3, 2);
        let c = nu.canonical_center().unwrap();
        assert!(center_degree_identity(&c, &nu.field_degree(), 3).holds);
        let s = series(3);
        let own_ring = CenterDescriptor::new(1, prime_field(3), "the valuation ring");
        assert!(!center_degree_identity(&own_ring, &s.field_degree(), 3).holds);
        let point = CenterDescriptor::new(0, field(3, &["x"]), "a field");
        assert!(center_degree_identity(&point, &BigUint::from(3u32), 3).holds);
    }

    #[test]
    fn fibre_and_f_finite() {
        let p = 3u32;
        let l = lex(p, 2);
        assert_eq!(fibre_dimension(&l).dimension, BigUint::from(p));
        assert_eq!(f_finite_verdict(&l).unwrap().answer, Answer::No);
        let z = gauss(p, GaussVariant::ZFirst);
        let f = fibre_dimension(&z);
        assert_eq!((f.dimension, f.maximal_ideal_finitely_generated), (BigUint::one(), false));
        assert_eq!(f_finite_verdict(&z).unwrap().answer, Answer::No);
        let g = gauss(p, GaussVariant::GroupFirst);
        assert_eq!(fibre_dimension(&g).dimension, BigUint::from(p));
        assert_eq!(f_finite_verdict(&g).unwrap().answer, Answer::Yes);
        assert_eq!(fibre_dimension(&series(p)).dimension, BigUint::from(p));
        assert_eq!(f_finite_verdict(&series(p)).unwrap().answer, Answer::No);
    }

    #[test]
    fn split_examples() {
        let budget = SplitBudget { seed: 1, samples: 30 };
        let v = split_verdict(&lex(2, 2), budget).unwrap();
        assert_eq!((v.answer, v.rule), (Answer::Yes, SplitRule::MonomialSplitting));
        assert!(v.witness.is_some());
        let v = split_verdict(&series(2), budget).unwrap();
        assert_eq!((v.answer, v.rule), (Answer::No, SplitRule::Noetherian));
        let v = split_verdict(&ValuationDescriptor::Hahn { p: 3 }, budget).unwrap();
        assert_eq!((v.answer, v.rule), (Answer::No, SplitRule::TotallyUnramified));
        let v = split_verdict(&gauss(3, GaussVariant::GroupFirst), budget).unwrap();
        assert_eq!((v.answer, v.rule), (Answer::Yes, SplitRule::FFinite));
        let v = split_verdict(&gauss(3, GaussVariant::ZFirst), budget).unwrap();
        assert_eq!((v.answer, v.rule), (Answer::Unknown, SplitRule::Undecided));
        let laurent = ValuationDescriptor::Laurent { residue: field(5, &["u"]) };
        let v = split_verdict(&laurent, budget).unwrap();
        assert_eq!((v.answer, v.rule), (Answer::Yes, SplitRule::Noetherian));
        assert_eq!(split_verdict(&lex(5, 1), budget).unwrap().answer, Answer::Yes);
    }

    #[test]
    fn reports_and_notes() {
        let budget = SplitBudget { seed: 1, samples: 10 };
        let r = classify(&gauss(2, GaussVariant::GroupFirst), None, budget).unwrap();
        assert!(r.center.is_none());
        assert_eq!(r.notes.len(), 2);
        let r = classify(&lex(2, 2), None, budget).unwrap();
        assert!(r.notes.is_empty());
        assert!(r.abhyankar.unwrap().holds);
        let k = field(2, &["x", "y"]);
        let sub = MonomialValuation::from_weights(
            k,
            ValueGroup::lex(1),
            vec![GroupElement::from_integers([2]), GroupElement::from_integers([2])],
        )
        .unwrap();
        assert!(matches!(
            classify(&ValuationDescriptor::Monomial(sub), None, budget),
            Err(ClassifyError::Inconsistent(_))
        ));
    }

    #[test]
    fn canonical_centers_agree_with_defect() {
        let mut all = vec![lex(2, 1), lex(3, 2), series(2), series(5), blow_up_chart()];
        all.push(ValuationDescriptor::Hahn { p: 3 });
        all.push(ValuationDescriptor::Laurent { residue: field(3, &["u", "v"]) });
        for nu in &all {
            let c = nu.canonical_center().unwrap();
            ramification_residue_bound(nu, &c).unwrap();
            assert_eq!(abhyankar_center_check(nu, &c).unwrap().holds, defect_identity(nu).holds, "{}", nu.kind_name());
        }
    }
}
