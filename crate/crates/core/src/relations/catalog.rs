use serde::Serialize;

use super::{inapplicable, Check, Direction, EvalContext};
use crate::duality::{
    self, entanglement_entropy, generalized_concurrence, info_content_i, info_content_s,
    minus_maximally_mixed, predictability, pure_state_bound, qubit_predictability,
    qubit_visibility, rank_factor_r, relative_entropy, reverse_pinsker_m, trace_distance,
    two_qubit_pure_measures, visibility, LogBase,
};
use crate::error::{Error, Result};
use crate::linalg::hs_norm;
use crate::profile::Bipartition;
use crate::states::{DensityMatrix, PureState, TwoQubitAmplitudes};

/// Tolerance for deciding whether a supplied channel is unital.
const UNITAL_TOL: f64 = 1e-10;

/// What a relation needs from its evaluation context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Requirement {
    Any,
    Pure,
    Qubit,
    Bipartite,
    PureBipartite,
    TwoQubitPure,
    Tripartite,
    PureTripartite,
    Channel,
    Pair,
}

impl Requirement {
    pub fn pure_only(self) -> bool {
        matches!(self, Self::Pure | Self::PureBipartite | Self::TwoQubitPure | Self::PureTripartite)
    }

    /// `Ok` when the context satisfies the requirement, otherwise the reason.
    pub fn check(self, ctx: &EvalContext<'_>) -> std::result::Result<(), String> {
        let rho = ctx.subject.density();
        let profile = rho.profile();
        let pure = ctx.subject.pure().is_some();
        let need_pure = || if pure { Ok(()) } else { Err("needs a pure state".to_string()) };
        let need_parties = |k: usize| {
            if profile.parties() == k {
                Ok(())
            } else {
                Err(format!("needs {k} parties, profile {profile} has {}", profile.parties()))
            }
        };
        let need_cut = || -> std::result::Result<(), String> {
            if profile.parties() < 2 {
                return Err(format!("needs at least 2 parties, profile is {profile}"));
            }
            if let Some(cut) = ctx.cut {
                let covered = cut.left().len() + cut.right().len();
                if covered != profile.parties()
                    || cut.sides().iter().flat_map(|s| s.iter()).any(|&p| p >= profile.parties())
                {
                    return Err(format!("cut does not partition profile {profile}"));
                }
            }
            Ok(())
        };
        match self {
            Self::Any => Ok(()),
            Self::Pure => need_pure(),
            Self::Qubit => {
                if rho.dim() == 2 {
                    Ok(())
                } else {
                    Err(format!("needs a qubit, dimension is {}", rho.dim()))
                }
            }
            Self::Bipartite => need_cut(),
            Self::PureBipartite => need_cut().and_then(|_| need_pure()),
            Self::TwoQubitPure => {
                if profile.dims() != [2, 2] {
                    return Err(format!("needs a 2x2 profile, got {profile}"));
                }
                need_pure()
            }
            Self::Tripartite => need_parties(3),
            Self::PureTripartite => need_parties(3).and_then(|_| need_pure()),
            Self::Channel => match ctx.channel {
                None => Err("needs a channel".into()),
                Some(ch) if ch.in_dim() != rho.dim() => Err(format!(
                    "channel input dimension {} differs from state dimension {}",
                    ch.in_dim(),
                    rho.dim()
                )),
                Some(ch) => match ch.is_unital(UNITAL_TOL) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err("channel is not unital".into()),
                    Err(e) => Err(e.to_string()),
                },
            },
            Self::Pair => match ctx.sigma {
                None => Err("needs a second state".into()),
                Some(s) if s.dim() != rho.dim() => Err(format!(
                    "second state has dimension {}, expected {}",
                    s.dim(),
                    rho.dim()
                )),
                Some(_) => Ok(()),
            },
        }
    }
}

type Evaluator = fn(&EvalContext<'_>) -> Result<Vec<Check>>;

/// One registered relation.
#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub id: &'static str,
    pub description: &'static str,
    /// The relation as a formula.
    pub statement: &'static str,
    pub direction: Direction,
    pub requirement: Requirement,
    pub saturation_note: &'static str,
    /// Diagnostic variants are only run when requested by id.
    pub diagnostic: bool,
    #[serde(skip)]
    eval: Evaluator,
}

impl Relation {
    pub fn tags(&self) -> Vec<&'static str> {
        let mut t = Vec::new();
        if self.requirement.pure_only() {
            t.push("pure-only");
        }
        t.push(match self.requirement {
            Requirement::Any | Requirement::Pure => "single",
            Requirement::Qubit => "qubit",
            Requirement::Bipartite | Requirement::PureBipartite => "bipartite",
            Requirement::TwoQubitPure => "two-qubit",
            Requirement::Tripartite | Requirement::PureTripartite => "tripartite",
            Requirement::Channel => "channel",
            Requirement::Pair => "pair",
        });
        if self.diagnostic {
            t.push("diagnostic");
        }
        t
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags().contains(&tag)
    }

    pub fn applicable(&self, ctx: &EvalContext<'_>) -> std::result::Result<(), String> {
        self.requirement.check(ctx)
    }

    pub(crate) fn checks(&self, ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
        self.applicable(ctx).map_err(|r| inapplicable(self.id, r))?;
        (self.eval)(ctx).map_err(|e| match e {
            Error::Inapplicable { reason, .. } => inapplicable(self.id, reason),
            other => other,
        })
    }
}

macro_rules! relation {
    ($id:expr, $desc:expr, $stmt:expr, $dir:ident, $req:ident, $sat:expr, $eval:expr) => {
        relation!($id, $desc, $stmt, $dir, $req, $sat, $eval, false)
    };
    ($id:expr, $desc:expr, $stmt:expr, $dir:ident, $req:ident, $sat:expr, $eval:expr, $diag:expr) => {
        Relation {
            id: $id,
            description: $desc,
            statement: $stmt,
            direction: Direction::$dir,
            requirement: Requirement::$req,
            saturation_note: $sat,
            diagnostic: $diag,
            eval: $eval,
        }
    };
}

static CATALOG: &[Relation] = &[
    relation!("R1", "single-system complementarity of predictability and visibility",
        "S^2 = P^2 + V^2 <= 2(n-1)/n", Leq, Any,
        "equality iff the state is pure", r1),
    relation!("R2", "subsystem information plus generalized concurrence, pure bipartite",
        "S_k^2 + C^2 = 2(n_k-1)/n_k, k = A, B", Eq, PureBipartite,
        "identity on pure states", r2),
    relation!("R3", "both subsystems plus concurrence, pure bipartite",
        "S_A^2 + S_B^2 + 2C^2 <= 2(n_A-1)/n_A + 2(n_B-1)/n_B", Leq, PureBipartite,
        "equality for every pure state", r3),
    relation!("R4", "monogamy of S^2 for tripartite states, coefficient n_B + n_C",
        "S_AB^2 + S_AC^2 <= (n_B + n_C) S_ABC^2", Leq, Tripartite,
        "saturates only at the purity bounds", r4),
    relation!("R4'", "monogamy of S^2 for tripartite states, coefficient n_A + n_B",
        "S_AB^2 + S_AC^2 <= (n_A + n_B) S_ABC^2", Leq, Tripartite,
        "compared against R4; differs when n_A != n_C", r4_prime),
    relation!("R5", "monogamy of S^2 for pure tripartite states",
        "S_AB^2 + S_AC^2 <= 2 S_ABC^2", Leq, PureTripartite,
        "not saturated for finite dimensions", r5),
    relation!("R6", "tightened monogamy of S^2 for pure tripartite states",
        "S_AB^2 + S_AC^2 <= (2N - n_C - n_B)/(N - 1) S_ABC^2, N = n_A n_B n_C", Leq, PureTripartite,
        "equality when both two-party marginals are pure", r6),
    relation!("R7", "S is sqrt(2) times the Hilbert-Schmidt distance to I/n",
        "S = sqrt(2) ||rho - I/n||_2", Eq, Any,
        "identity", r7),
    relation!("R8", "joint versus marginal Hilbert-Schmidt information",
        "S_AB^2 >= S_A^2 / n_B and S_AB^2 >= S_B^2 / n_A", Geq, Bipartite,
        "equality for I/n_A (x) pure", r8),
    relation!("R9", "pure-state value of both information contents",
        "S^2 = I = 2(1 - 1/n)", Eq, Pure,
        "identity on pure states", r9),
    relation!("R10", "upper bound on the trace-distance information content",
        "I <= 2(1 - 1/n)", Leq, Any,
        "equality iff the state is pure", r10),
    relation!("R11", "trace/Hilbert-Schmidt sandwich with rank factor R(rho, I/n)",
        "S <= I <= sqrt(2 R(rho, I/n)) S", Leq, Any,
        "lower side tight for rank-two differences", r11),
    relation!("R12", "entanglement versus trace-distance information (Pinsker)",
        "E + c I(rho_k)^2 <= log n_k, c = 1/(2 ln 2) in bits, 1/2 in nats", Leq, PureBipartite,
        "equality for maximally entangled states", r12),
    relation!("R13", "entanglement versus Hilbert-Schmidt information",
        "E + c S(rho_k)^2 <= log n_k and E + c (P_k^2 + V_k^2) <= log n_k", Leq, PureBipartite,
        "equality for maximally entangled states", r13),
    relation!("R14", "entanglement versus both subsystems' predictability and visibility",
        "2E + c sum_k (P_k^2 + V_k^2) <= log(n_A n_B)", Leq, PureBipartite,
        "equality for maximally entangled states with n_A = n_B", r14),
    relation!("R15", "reverse complementarity of entanglement and information (reverse Pinsker)",
        "E + M(rho_k, I/n_k) I(rho_k) >= log n_k", Geq, PureBipartite,
        "equality for maximally entangled states", r15),
    relation!("R16", "reverse complementarity in predictability and visibility",
        "E + M(rho_k, I/n_k) sqrt(2 R(rho_k, I/n_k) (P_k^2 + V_k^2)) >= log n_k", Geq, PureBipartite,
        "equality for maximally entangled states", r16),
    relation!("R17", "trace-distance information is monotone under unital channels",
        "I(Phi(rho)) <= I(rho)", Leq, Channel,
        "equality for unitary channels", r17),
    relation!("R18", "monogamy of trace-distance information",
        "I(rho_AB) + I(rho_AC) <= 2 I(rho_ABC)", Leq, Tripartite,
        "equality for I/n_A (x) I/n_B (x) I/n_C", r18),
    relation!("R19", "two-qubit pure-state complementarity",
        "C^2 + P_k^2 + V_k^2 = 1, k = 1, 2", Eq, TwoQubitPure,
        "identity", r19),
    relation!("R20", "qubit predictability-visibility complementarity",
        "P^2 + V^2 <= 1 with P = |rho_11 - rho_22|, V = 2|rho_12|", Leq, Qubit,
        "equality iff the qubit is pure", r20),
    relation!("R21", "quantum Pinsker inequality",
        "D(rho||sigma) >= c ||rho - sigma||_1^2", Geq, Pair,
        "equality iff rho = sigma", r21),
    relation!("R22", "reverse Pinsker inequality",
        "D(rho||sigma) <= M(rho, sigma) ||rho - sigma||_1", Leq, Pair,
        "equality iff rho = sigma", r22),
    relation!("R11-inv", "trace/Hilbert-Schmidt sandwich with the rank factor inverted",
        "S <= I <= sqrt(2 / R(rho, I/n)) S", Leq, Any,
        "upper side tight for pure states in dimension 2", r11_inverted, true),
    relation!("R12-literal", "R12 with entropy in nats but the bits constant 1/(2 ln 2)",
        "E_nats + I(rho_k)^2 / (2 ln 2) <= ln n_k", Leq, PureBipartite,
        "violated by product states", r12_literal, true),
];

/// Every registered relation, in catalog order.
pub fn list_relations() -> &'static [Relation] {
    CATALOG
}

/// Non-diagnostic relations (what `all` expands to).
pub fn primary_relations() -> impl Iterator<Item = &'static Relation> {
    CATALOG.iter().filter(|r| !r.diagnostic)
}

pub fn find_relation(id: &str) -> Result<&'static Relation> {
    let id = id.trim();
    let canonical = match id.to_ascii_lowercase().as_str() {
        "r4p" | "r4prime" | "r4′" => "R4'",
        _ => id,
    };
    CATALOG
        .iter()
        .find(|r| r.id.eq_ignore_ascii_case(canonical))
        .ok_or_else(|| Error::UnknownRelation(id.to_string()))
}

/// Expands `"all"` and comma lists into catalog ids, preserving catalog order
/// for `all` and request order otherwise.
pub fn resolve_ids<S: AsRef<str>>(requested: &[S]) -> Result<Vec<&'static str>> {
    let mut out: Vec<&'static str> = Vec::new();
    for item in requested {
        for id in item.as_ref().split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let ids: Vec<&'static str> = if id.eq_ignore_ascii_case("all") {
                primary_relations().map(|r| r.id).collect()
            } else {
                vec![find_relation(id)?.id]
            };
            for i in ids {
                if !out.contains(&i) {
                    out.push(i);
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Config("no relations requested".into()));
    }
    Ok(out)
}

fn pure_of<'a>(ctx: &EvalContext<'a>) -> Result<&'a PureState> {
    ctx.subject
        .pure()
        .ok_or_else(|| inapplicable("", "needs a pure state"))
}

fn cut_of(ctx: &EvalContext<'_>) -> Result<Bipartition> {
    match ctx.cut {
        Some(c) => Ok(c.clone()),
        None => ctx.subject.density().profile().default_cut(),
    }
}

/// The two sides of the cut: reduced state and its dimension.
fn sides(ctx: &EvalContext<'_>) -> Result<[(DensityMatrix, usize); 2]> {
    let rho = ctx.subject.density();
    let cut = cut_of(ctx)?;
    let p = rho.profile();
    Ok([
        (rho.reduce(cut.left())?, p.dim_of(cut.left())),
        (rho.reduce(cut.right())?, p.dim_of(cut.right())),
    ])
}

fn s2(rho: &DensityMatrix) -> f64 {
    info_content_s(rho).powi(2)
}

fn pv2(rho: &DensityMatrix) -> f64 {
    predictability(rho).powi(2) + visibility(rho).powi(2)
}

fn tripartite_marginals(ctx: &EvalContext<'_>) -> Result<(DensityMatrix, DensityMatrix, [usize; 3])> {
    let rho = ctx.subject.density();
    let d = rho.profile().dims();
    Ok((rho.reduce(&[0, 1])?, rho.reduce(&[0, 2])?, [d[0], d[1], d[2]]))
}

fn entanglement(ctx: &EvalContext<'_>, base: LogBase) -> Result<f64> {
    entanglement_entropy(pure_of(ctx)?, &cut_of(ctx)?, base)
}

fn r1(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let rho = ctx.subject.density();
    Ok(vec![Check::new("S^2 <= 2(n-1)/n", s2(rho), Direction::Leq, pure_state_bound(rho.dim()))])
}

fn r2(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let c2 = generalized_concurrence(pure_of(ctx)?, &cut_of(ctx)?)?.powi(2);
    Ok(sides(ctx)?
        .iter()
        .zip(["A", "B"])
        .map(|((rk, nk), k)| {
            Check::new(format!("S_{k}^2 + C^2 = 2(n_{k}-1)/n_{k}"), s2(rk) + c2, Direction::Eq, pure_state_bound(*nk))
        })
        .collect())
}

fn r3(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let c2 = generalized_concurrence(pure_of(ctx)?, &cut_of(ctx)?)?.powi(2);
    let [(a, na), (b, nb)] = sides(ctx)?;
    Ok(vec![Check::new(
        "S_A^2 + S_B^2 + 2C^2 <= bound",
        s2(&a) + s2(&b) + 2.0 * c2,
        Direction::Leq,
        pure_state_bound(na) + pure_state_bound(nb),
    )])
}

fn monogamy_s2(ctx: &EvalContext<'_>, label: &str, coeff: impl Fn([usize; 3]) -> f64) -> Result<Vec<Check>> {
    let (ab, ac, dims) = tripartite_marginals(ctx)?;
    let abc = s2(ctx.subject.density());
    Ok(vec![Check::new(label, s2(&ab) + s2(&ac), Direction::Leq, coeff(dims) * abc)])
}

fn r4(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    monogamy_s2(ctx, "S_AB^2 + S_AC^2 <= (n_B + n_C) S_ABC^2", |[_, b, c]| (b + c) as f64)
}

fn r4_prime(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    monogamy_s2(ctx, "S_AB^2 + S_AC^2 <= (n_A + n_B) S_ABC^2", |[a, b, _]| (a + b) as f64)
}

fn r5(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    monogamy_s2(ctx, "S_AB^2 + S_AC^2 <= 2 S_ABC^2", |_| 2.0)
}

/// `(2N - n_C - n_B) / (N - 1)` with `N = n_A n_B n_C`.
pub(crate) fn pure_monogamy_coefficient([a, b, c]: [usize; 3]) -> f64 {
    let n = (a * b * c) as f64;
    (2.0 * n - c as f64 - b as f64) / (n - 1.0)
}

fn r6(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    monogamy_s2(ctx, "S_AB^2 + S_AC^2 <= k S_ABC^2", pure_monogamy_coefficient)
}

fn r7(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let rho = ctx.subject.density();
    let hs = 2f64.sqrt() * hs_norm(&minus_maximally_mixed(rho));
    Ok(vec![Check::new("S = sqrt(2) ||rho - I/n||_2", info_content_s(rho), Direction::Eq, hs)])
}

fn r8(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let joint = s2(ctx.subject.density());
    let [(a, na), (b, nb)] = sides(ctx)?;
    Ok(vec![
        Check::new("S_AB^2 >= S_A^2 / n_B", joint, Direction::Geq, s2(&a) / nb as f64),
        Check::new("S_AB^2 >= S_B^2 / n_A", joint, Direction::Geq, s2(&b) / na as f64),
    ])
}

fn r9(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let rho = ctx.subject.density();
    let i = info_content_i(rho)?;
    Ok(vec![
        Check::new("S^2 = I", s2(rho), Direction::Eq, i),
        Check::new("I = 2(1 - 1/n)", i, Direction::Eq, pure_state_bound(rho.dim())),
    ])
}

fn r10(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let rho = ctx.subject.density();
    Ok(vec![Check::new("I <= 2(1 - 1/n)", info_content_i(rho)?, Direction::Leq, pure_state_bound(rho.dim()))])
}

fn sandwich(ctx: &EvalContext<'_>, factor: impl Fn(f64) -> f64, upper: &str) -> Result<Vec<Check>> {
    let rho = ctx.subject.density();
    let mm = DensityMatrix::maximally_mixed(rho.profile().clone());
    let s = info_content_s(rho);
    let i = info_content_i(rho)?;
    let r = rank_factor_r(rho, &mm)?;
    Ok(vec![
        Check::new("S <= I", s, Direction::Leq, i),
        Check::new(upper, i, Direction::Leq, factor(r).sqrt() * s),
    ])
}

fn r11(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    sandwich(ctx, |r| 2.0 * r, "I <= sqrt(2R) S")
}

fn r11_inverted(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    sandwich(ctx, |r| 2.0 / r, "I <= sqrt(2/R) S")
}

fn r12_with(ctx: &EvalContext<'_>, base: LogBase, constant: f64) -> Result<Vec<Check>> {
    let e = entanglement(ctx, base)?;
    sides(ctx)?
        .iter()
        .zip(["A", "B"])
        .map(|((rk, nk), k)| {
            let i = info_content_i(rk)?;
            Ok(Check::new(
                format!("E + c I(rho_{k})^2 <= log n_{k}"),
                e + constant * i * i,
                Direction::Leq,
                base.log(*nk as f64),
            ))
        })
        .collect()
}

fn r12(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    r12_with(ctx, ctx.base, ctx.base.pinsker_constant())
}

fn r12_literal(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    r12_with(ctx, LogBase::E, LogBase::Two.pinsker_constant())
}

fn r13(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let base = ctx.base;
    let c = base.pinsker_constant();
    let e = entanglement(ctx, base)?;
    let mut out = Vec::new();
    for ((rk, nk), k) in sides(ctx)?.iter().zip(["A", "B"]) {
        let bound = base.log(*nk as f64);
        out.push(Check::new(format!("E + c S(rho_{k})^2 <= log n_{k}"), e + c * s2(rk), Direction::Leq, bound));
        out.push(Check::new(format!("E + c (P_{k}^2 + V_{k}^2) <= log n_{k}"), e + c * pv2(rk), Direction::Leq, bound));
    }
    Ok(out)
}

fn r14(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let base = ctx.base;
    let e = entanglement(ctx, base)?;
    let [(a, na), (b, nb)] = sides(ctx)?;
    Ok(vec![Check::new(
        "2E + c sum_k (P_k^2 + V_k^2) <= log n",
        2.0 * e + base.pinsker_constant() * (pv2(&a) + pv2(&b)),
        Direction::Leq,
        base.log((na * nb) as f64),
    )])
}

fn reverse(ctx: &EvalContext<'_>, pv_form: bool) -> Result<Vec<Check>> {
    let base = ctx.base;
    let e = entanglement(ctx, base)?;
    sides(ctx)?
        .iter()
        .zip(["A", "B"])
        .map(|((rk, nk), k)| {
            let mm = DensityMatrix::maximally_mixed(rk.profile().clone());
            let m = reverse_pinsker_m(rk, &mm, base)?;
            let (label, term) = if pv_form {
                let r = rank_factor_r(rk, &mm)?;
                (format!("E + M sqrt(2R (P_{k}^2 + V_{k}^2)) >= log n_{k}"), (2.0 * r * pv2(rk)).sqrt())
            } else {
                (format!("E + M I(rho_{k}) >= log n_{k}"), info_content_i(rk)?)
            };
            Ok(Check::new(label, e + m * term, Direction::Geq, base.log(*nk as f64)))
        })
        .collect()
}

fn r15(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    reverse(ctx, false)
}

fn r16(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    reverse(ctx, true)
}

fn r17(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let rho = ctx.subject.density();
    let ch = ctx.channel.ok_or_else(|| inapplicable("", "needs a channel"))?;
    let out = ch.apply(rho)?;
    Ok(vec![Check::new("I(Phi(rho)) <= I(rho)", info_content_i(&out)?, Direction::Leq, info_content_i(rho)?)])
}

fn r18(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let (ab, ac, _) = tripartite_marginals(ctx)?;
    let abc = info_content_i(ctx.subject.density())?;
    Ok(vec![Check::new(
        "I(rho_AB) + I(rho_AC) <= 2 I(rho_ABC)",
        info_content_i(&ab)? + info_content_i(&ac)?,
        Direction::Leq,
        2.0 * abc,
    )])
}

fn r19(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let m = two_qubit_pure_measures(&TwoQubitAmplitudes::from_pure(pure_of(ctx)?)?);
    let c2 = m.c * m.c;
    Ok(vec![
        Check::new("C^2 + P_1^2 + V_1^2 = 1", c2 + m.p1 * m.p1 + m.v1 * m.v1, Direction::Eq, 1.0),
        Check::new("C^2 + P_2^2 + V_2^2 = 1", c2 + m.p2 * m.p2 + m.v2 * m.v2, Direction::Eq, 1.0),
    ])
}

fn r20(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let rho = ctx.subject.density();
    let p = qubit_predictability(rho)?;
    let v = qubit_visibility(rho)?;
    Ok(vec![Check::new("P^2 + V^2 <= 1", p * p + v * v, Direction::Leq, 1.0)])
}

fn finite_relative_entropy<'a>(ctx: &EvalContext<'a>) -> Result<(f64, &'a DensityMatrix)> {
    let rho = ctx.subject.density();
    let sigma = ctx.sigma.ok_or_else(|| inapplicable("", "needs a second state"))?;
    let d = relative_entropy(rho, sigma, ctx.base)?;
    if !d.is_finite() {
        return Err(inapplicable("", "support of rho is not inside the support of sigma"));
    }
    Ok((d, sigma))
}

fn r21(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let (d, sigma) = finite_relative_entropy(ctx)?;
    let t = trace_distance(ctx.subject.density(), sigma)?;
    Ok(vec![Check::new("D >= c ||rho - sigma||_1^2", d, Direction::Geq, ctx.base.pinsker_constant() * t * t)])
}

fn r22(ctx: &EvalContext<'_>) -> Result<Vec<Check>> {
    let (d, sigma) = finite_relative_entropy(ctx)?;
    let rho = ctx.subject.density();
    let bound = reverse_pinsker_m(rho, sigma, ctx.base)? * duality::trace_distance(rho, sigma)?;
    Ok(vec![Check::new("D <= M ||rho - sigma||_1", d, Direction::Leq, bound)])
}
