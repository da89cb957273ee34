//! Verification suites: each check compares two independent computations
//! over a whole (small) group and reports the first disagreement.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::antimatroid::check_word;
use crate::arquiver::ar_word_w0;
use crate::grassmann::verify_le_theorem;
use crate::leftmost::{category_of, word_from_missing};
use crate::preproj::PreprojAlgebra;
use crate::quiver::Quiver;
use crate::repkit::{Catalogue, IndecSet};
use crate::sortable::{inversion_set, verify_torsion_pair, SortingContext};
use crate::weyl::{WeylElement, WeylGroup};

/// Largest group the suites enumerate.
pub const MAX_GROUP: usize = 1000;
/// Largest catalogue searched subset by subset.
pub const MAX_CATALOGUE: usize = 20;
/// Largest `n` swept by the default `le` suite.
pub const LE_DEFAULT_MAX_N: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Bijection,
    Ideals,
    Duality,
    Bruhat,
    Sorting,
    Le,
    Antimatroid,
    Subclosed,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Bijection,
        Suite::Ideals,
        Suite::Duality,
        Suite::Bruhat,
        Suite::Sorting,
        Suite::Le,
        Suite::Antimatroid,
        Suite::Subclosed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bijection => "bijection",
            Suite::Ideals => "ideals",
            Suite::Duality => "duality",
            Suite::Bruhat => "bruhat",
            Suite::Sorting => "sorting",
            Suite::Le => "le",
            Suite::Antimatroid => "antimatroid",
            Suite::Subclosed => "subclosed",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::EACH.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("suites need a Dynkin quiver, got {0}")]
    NotDynkin(String),
    #[error("{0} has more than {MAX_GROUP} elements, too many for exhaustive suites")]
    GroupTooLarge(String),
    #[error("{0} has {1} indecomposables, exhaustive subset search is capped at {MAX_CATALOGUE}")]
    CatalogueTooLarge(String, usize),
    #[error("setup failed: {0}")]
    Setup(String),
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub p: u32,
    pub seed: u64,
    /// `(n, k)` for the `le` suite; `None` sweeps `1 <= k <= n <= 5`.
    pub le: Option<(usize, usize)>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            p: 5,
            seed: 0,
            le: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub pass: bool,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub quiver: String,
    pub p: u32,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

struct Env {
    group: WeylGroup,
    elements: Vec<WeylElement>,
    cat: Catalogue,
    alg: PreprojAlgebra,
}

impl Env {
    fn word(&self, w: &WeylElement) -> Value {
        json!(self.group.reduced_word(w))
    }

    fn labels(&self, s: &IndecSet) -> Value {
        json!(s
            .iter()
            .map(|&i| self.cat.label(i).to_string())
            .collect::<Vec<_>>())
    }

    /// Catalogue indices of the modules kept by the class attached to `w`.
    fn kept(&self, w: &WeylElement) -> Result<IndecSet, String> {
        let spec = category_of(&self.group, w).map_err(|e| e.to_string())?;
        let missing = self
            .cat
            .indices_of_labels(spec.missing())
            .map_err(|i| format!("{i} is not in the catalogue"))?;
        Ok(self.cat.complement(&missing))
    }
}

fn setup_err(e: impl fmt::Display) -> VerifyError {
    VerifyError::Setup(e.to_string())
}

/// Runs `suite` on `quiver`. The `le` suite is independent of the quiver.
pub fn run_suite(
    quiver: &Quiver,
    suite: Suite,
    cfg: &SuiteConfig,
) -> Result<VerifyReport, VerifyError> {
    let suites = suite.expand();
    let mut checks = Vec::new();
    let needs_env = suites.iter().any(|s| *s != Suite::Le);
    let env = if needs_env {
        Some(build_env(quiver, cfg)?)
    } else {
        None
    };
    for s in suites {
        let mut found = match (s, &env) {
            (Suite::Le, _) => le_checks(cfg),
            (_, Some(env)) => match s {
                Suite::Bijection => vec![bijection(env)],
                Suite::Ideals => vec![ideals_theorem(env), ideals_reduced_words(env)],
                Suite::Duality => vec![duality(env)],
                Suite::Bruhat => vec![bruhat(env)],
                Suite::Sorting => vec![sorting_torsion(env), inversion_weak_order(env)],
                Suite::Antimatroid => antimatroid(env),
                Suite::Subclosed => vec![subclosed(env)],
                Suite::Le | Suite::All => unreachable!(),
            },
            (_, None) => unreachable!(),
        };
        for c in &mut found {
            c.suite = s;
        }
        checks.extend(found);
    }
    Ok(VerifyReport {
        quiver: quiver.to_string(),
        p: cfg.p,
        seed: cfg.seed,
        checks,
    })
}

fn build_env(quiver: &Quiver, cfg: &SuiteConfig) -> Result<Env, VerifyError> {
    if !quiver.is_dynkin() {
        return Err(VerifyError::NotDynkin(quiver.to_string()));
    }
    let group = WeylGroup::new(quiver);
    let elements = group
        .enumerate(MAX_GROUP)
        .map_err(|_| VerifyError::GroupTooLarge(quiver.to_string()))?;
    let cat = Catalogue::new(quiver, cfg.p, cfg.seed).map_err(setup_err)?;
    if cat.len() > MAX_CATALOGUE {
        return Err(VerifyError::CatalogueTooLarge(
            quiver.to_string(),
            cat.len(),
        ));
    }
    let alg = PreprojAlgebra::build(quiver, cfg.p).map_err(setup_err)?;
    Ok(Env {
        group,
        elements,
        cat,
        alg,
    })
}

fn check(name: &str, detail: Value, counterexample: Option<Value>) -> Check {
    Check {
        suite: Suite::All,
        name: name.to_string(),
        pass: counterexample.is_none(),
        detail,
        counterexample,
    }
}

fn bijection(env: &Env) -> Check {
    let name = "quotient-closed classes biject with W";
    let closed: BTreeSet<IndecSet> = env.cat.quotient_closed_sets().into_iter().collect();
    let mut images = BTreeSet::new();
    let detail = |images: usize| json!({ "group_order": env.elements.len(), "quotient_closed": closed.len(), "distinct_images": images });
    for w in &env.elements {
        let spec = match category_of(&env.group, w) {
            Ok(s) => s,
            Err(e) => {
                return check(
                    name,
                    detail(images.len()),
                    Some(json!({"w": env.word(w), "error": e.to_string()})),
                )
            }
        };
        let back = env.group.evaluate(&word_from_missing(&spec));
        if back.as_ref() != Ok(w) {
            return check(
                name,
                detail(images.len()),
                Some(json!({"w": env.word(w), "round_trip": back.ok().map(|b| env.word(&b))})),
            );
        }
        let kept = match env.kept(w) {
            Ok(k) => k,
            Err(e) => {
                return check(
                    name,
                    detail(images.len()),
                    Some(json!({"w": env.word(w), "error": e})),
                )
            }
        };
        if !closed.contains(&kept) {
            return check(
                name,
                detail(images.len()),
                Some(json!({"w": env.word(w), "not_quotient_closed": env.labels(&kept)})),
            );
        }
        images.insert(kept);
    }
    let ok = images.len() == env.elements.len() && images == closed;
    let cex = (!ok).then(|| {
        let extra: Vec<Value> = closed.difference(&images).map(|s| env.labels(s)).collect();
        json!({"unmatched_quotient_closed": extra})
    });
    check(name, detail(images.len()), cex)
}

fn ideals_theorem(env: &Env) -> Check {
    let name = "summands of I_w are the class attached to w";
    for w in &env.elements {
        let via_ideal = env.alg.c_of(&env.cat, w);
        let kept = env.kept(w);
        match (via_ideal, kept) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => {
                return check(
                    name,
                    json!({"elements": env.elements.len()}),
                    Some(json!({
                        "w": env.word(w),
                        "ideal": a.map(|s| env.labels(&s)).unwrap_or_else(|e| json!(e.to_string())),
                        "leftmost": b.map(|s| env.labels(&s)).unwrap_or_else(|e| json!(e)),
                    })),
                )
            }
        }
    }
    check(name, json!({"elements": env.elements.len()}), None)
}

/// Per element, how many reduced words are multiplied out letter by letter.
const WORDS_PER_ELEMENT_SMALL: usize = usize::MAX;
const WORDS_PER_ELEMENT_LARGE: usize = 4;

fn ideals_reduced_words(env: &Env) -> Check {
    let name = "I_w does not depend on the reduced word";
    let limit = if env.elements.len() <= 24 {
        WORDS_PER_ELEMENT_SMALL
    } else {
        WORDS_PER_ELEMENT_LARGE
    };
    let mut words_checked = 0;
    for w in &env.elements {
        let Ok(cached) = env.alg.ideal_of(w) else {
            return check(name, json!({}), Some(json!({"w": env.word(w)})));
        };
        for word in env.group.all_reduced_words(w).into_iter().take(limit) {
            words_checked += 1;
            match env.alg.ideal_w(&word) {
                Ok(ideal) if ideal.space() == cached.space() => {}
                _ => {
                    return check(
                        name,
                        json!({"words_checked": words_checked}),
                        Some(json!({"w": env.word(w), "word": word})),
                    )
                }
            }
        }
    }
    check(name, json!({"words_checked": words_checked}), None)
}

fn duality(env: &Env) -> Check {
    let name = "D I_w and Pi / I_{w0 w^-1} have matching graded dimensions";
    let nu = env.alg.nakayama_permutation().ok();
    for w in &env.elements {
        if env.alg.verify_duality(w) != Ok(true) {
            return check(
                name,
                json!({"nakayama": nu}),
                Some(json!({"w": env.word(w)})),
            );
        }
    }
    check(
        name,
        json!({"elements": env.elements.len(), "nakayama": nu}),
        None,
    )
}

fn bruhat(env: &Env) -> Check {
    let name = "I_v contains I_w iff v <= w in Bruhat order";
    let mut pairs = 0;
    for v in &env.elements {
        for w in &env.elements {
            pairs += 1;
            let ideal = env.alg.ideal_contains(v, w);
            let order = env.group.bruhat_leq(v, w);
            if ideal.as_ref() != Ok(&order) {
                return check(
                    name,
                    json!({"pairs": pairs}),
                    Some(
                        json!({"v": env.word(v), "w": env.word(w), "bruhat": order, "ideal": ideal.ok()}),
                    ),
                );
            }
        }
    }
    check(name, json!({"pairs": pairs}), None)
}

fn sorting_torsion(env: &Env) -> Check {
    let name = "sorting criterion picks out torsion classes and torsion pairs";
    let ctx = match SortingContext::new(&env.group, MAX_GROUP) {
        Ok(c) => c,
        Err(e) => return check(name, json!({}), Some(json!({"error": e.to_string()}))),
    };
    let mut candidates = Vec::new();
    for w in &env.elements {
        let fail = |what: &str, extra: Value| {
            Some(json!({"w": env.word(w), "failure": what, "info": extra}))
        };
        let cand = match ctx.is_torsion_candidate(w) {
            Ok(c) => c,
            Err(e) => return check(name, json!({}), fail("criterion", json!(e.to_string()))),
        };
        let kept = match env.kept(w) {
            Ok(k) => k,
            Err(e) => return check(name, json!({}), fail("category", json!(e))),
        };
        let torsion = env.cat.is_torsion_class(&kept);
        if torsion.as_ref() != Ok(&cand) {
            return check(
                name,
                json!({}),
                fail(
                    "torsion class",
                    json!({"candidate": cand, "torsion_class": torsion.ok()}),
                ),
            );
        }
        if cand {
            match verify_torsion_pair(&ctx, &env.alg, &env.cat, w) {
                Ok(pair) if pair.holds() => {}
                Ok(pair) => return check(name, json!({}), fail("torsion pair", json!(pair))),
                Err(e) => {
                    return check(name, json!({}), fail("torsion pair", json!(e.to_string())))
                }
            }
            candidates.push(env.word(w));
        }
    }
    check(
        name,
        json!({"elements": env.elements.len(), "candidates": candidates.len()}),
        None,
    )
}

fn inversion_weak_order(env: &Env) -> Check {
    let name = "Inv(v) is contained in Inv(w) iff v <=_R w";
    let inv: Vec<_> = env
        .elements
        .iter()
        .map(|w| inversion_set(&env.group, w))
        .collect();
    for (v, iv) in env.elements.iter().zip(&inv) {
        for (w, iw) in env.elements.iter().zip(&inv) {
            let order = env.group.weak_leq_right(v, w);
            if iv.is_subset(iw) != order {
                return check(
                    name,
                    json!({}),
                    Some(json!({"v": env.word(v), "w": env.word(w), "weak": order})),
                );
            }
        }
    }
    check(name, json!({"pairs": inv.len() * inv.len()}), None)
}

fn le_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let cases: Vec<(usize, usize)> = match cfg.le {
        Some(nk) => vec![nk],
        None => (1..=LE_DEFAULT_MAX_N)
            .flat_map(|n| (1..=n).map(move |k| (n, k)))
            .collect(),
    };
    cases
        .into_iter()
        .map(|(n, k)| {
            let name = format!("leftmost iff no bad <= (n = {n}, k = {k})");
            match verify_le_theorem(n, k) {
                Ok(report) => {
                    let cex = report.counterexample.as_ref().map(|c| json!(c));
                    check(&name, json!(report), cex)
                }
                Err(e) => check(&name, json!({}), Some(json!({"error": e.to_string()}))),
            }
        })
        .collect()
}

fn antimatroid(env: &Env) -> Vec<Check> {
    let mut words = vec![(
        "AR reading word of w0".to_string(),
        ar_word_w0(env.group.quiver()),
    )];
    if env.elements.len() <= 6 {
        if let Ok(w0) = env.group.longest_element() {
            for word in env.group.all_reduced_words(&w0) {
                words.push((format!("reduced word {word} of w0"), Ok(word)));
            }
        }
    }
    words
        .into_iter()
        .map(|(label, word)| {
            let name = format!("leftmost position sets form a supersolvable antimatroid: {label}");
            match word
                .map_err(|e| e.to_string())
                .and_then(|w| check_word(&env.group, &w).map_err(|e| e.to_string()))
            {
                Ok(report) => {
                    let cex = (!report.holds()).then(|| json!(report));
                    check(&name, json!(report), cex)
                }
                Err(e) => check(&name, json!({}), Some(json!({"error": e}))),
            }
        })
        .collect()
}

fn subclosed(env: &Env) -> Check {
    let name = "summands of Pi / I_w are exactly the subclosed classes";
    let closed: BTreeSet<IndecSet> = env.cat.subclosed_sets().into_iter().collect();
    let mut images = BTreeSet::new();
    for w in &env.elements {
        match env.alg.c_of_quotient(&env.cat, w) {
            Ok(s) if closed.contains(&s) => {
                images.insert(s);
            }
            Ok(s) => {
                return check(
                    name,
                    json!({"subclosed": closed.len()}),
                    Some(json!({"w": env.word(w), "not_subclosed": env.labels(&s)})),
                )
            }
            Err(e) => {
                return check(
                    name,
                    json!({"subclosed": closed.len()}),
                    Some(json!({"w": env.word(w), "error": e.to_string()})),
                )
            }
        }
    }
    let detail = json!({
        "group_order": env.elements.len(),
        "subclosed": closed.len(),
        "distinct_images": images.len(),
    });
    let ok = images.len() == env.elements.len() && images == closed;
    check(name, detail, (!ok).then(|| json!({"image_mismatch": true})))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn a2_all_passes() {
        let q = Quiver::builtin("A2").unwrap();
        let cfg = SuiteConfig {
            le: Some((3, 2)),
            ..SuiteConfig::default()
        };
        let report = run_suite(&q, Suite::All, &cfg).unwrap();
        for c in &report.checks {
            assert!(c.pass, "{}", serde_json::to_string_pretty(c).unwrap());
        }
        assert!(report.checks.len() >= 10);
    }

    #[test]
    fn non_dynkin_rejected() {
        let q = Quiver::builtin("triangle").unwrap();
        assert!(matches!(
            run_suite(&q, Suite::Bijection, &SuiteConfig::default()),
            Err(VerifyError::NotDynkin(_))
        ));
        let le_only = run_suite(
            &q,
            Suite::Le,
            &SuiteConfig {
                le: Some((2, 1)),
                ..SuiteConfig::default()
            },
        )
        .unwrap();
        assert!(le_only.passed());
    }
}
