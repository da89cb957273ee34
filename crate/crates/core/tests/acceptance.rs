//! Acceptance criteria 1-11. Runs as a plain binary (`harness = false`) and
//! prints one PASS/FAIL line per criterion.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use qclosed::antimatroid::check_word;
use qclosed::arquiver::{ar_word_w0, enumerate_preprojectives, knit_preprojectives};
use qclosed::grassmann::{rectangle_word, verify_le_theorem};
use qclosed::leftmost::{
    category_of, leftmost_positions, positions_to_indices, word_from_missing, Base,
};
use qclosed::preproj::PreprojAlgebra;
use qclosed::repkit::{Catalogue, IndecSet};
use qclosed::sortable::{inversion_set, verify_torsion_pair, SortingContext};
use qclosed::verify::{run_suite, Suite, SuiteConfig};
use qclosed::{PreprojIndex, Quiver, WeylElement, WeylGroup, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn quiver(name: &str) -> Quiver {
    Quiver::builtin(name).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn kept(group: &WeylGroup, cat: &Catalogue, w: &WeylElement) -> Result<IndecSet, String> {
    let spec = category_of(group, w).map_err(e)?;
    let missing = cat
        .indices_of_labels(spec.missing())
        .map_err(|i| format!("{i} missing from catalogue"))?;
    Ok(cat.complement(&missing))
}

fn c1_bijection_count() -> Outcome {
    // |W(A_n)| = (n+1)!, |W(D_4)| = 2^3 * 4!.
    let expected = [
        ("A2", factorial(3)),
        ("A3", factorial(4)),
        ("A4", factorial(5)),
        ("D4", 8 * factorial(4)),
    ];
    let mut parts = Vec::new();
    for (name, order) in expected {
        let q = quiver(name);
        let cat = Catalogue::new(&q, 5, 0).map_err(e)?;
        let count = cat.quotient_closed_sets().len();
        let group = WeylGroup::new(&q).enumerate(usize::MAX).map_err(e)?.len();
        ensure(count == order && group == order, || {
            format!("{name}: {count} quotient-closed sets, |W| = {group}, expected {order}")
        })?;
        parts.push(format!("{name} {count}"));
    }
    Ok(parts.join(", "))
}

fn c2_round_trip() -> Outcome {
    let mut parts = Vec::new();
    for name in ["A3", "D4"] {
        let q = quiver(name);
        let group = WeylGroup::new(&q);
        let cat = Catalogue::new(&q, 5, 0).map_err(e)?;
        let elements = group.enumerate(usize::MAX).map_err(e)?;
        let mut missing_sets = BTreeSet::new();
        let mut complements = BTreeSet::new();
        for w in &elements {
            let spec = category_of(&group, w).map_err(e)?;
            let back = group.evaluate(&word_from_missing(&spec)).map_err(e)?;
            ensure(&back == w, || {
                format!("{name}: round trip fails at {}", group.reduced_word(w))
            })?;
            missing_sets.insert(spec.missing().to_vec());
            complements.insert(kept(&group, &cat, w)?);
        }
        let closed: BTreeSet<IndecSet> = cat.quotient_closed_sets().into_iter().collect();
        ensure(missing_sets.len() == elements.len(), || {
            format!("{name}: only {} distinct missing sets", missing_sets.len())
        })?;
        ensure(complements == closed, || {
            format!("{name}: complements differ from the quotient-closed sets")
        })?;
        parts.push(format!("{name} {} distinct", missing_sets.len()));
    }
    Ok(parts.join(", "))
}

fn c3_worked_examples() -> Outcome {
    let p = |j, k| PreprojIndex::new(j, k);

    let q = quiver("A3");
    let g = WeylGroup::new(&q);
    let w = g.evaluate(&Word::new(vec![1, 2, 3, 2])).map_err(e)?;
    let spec = category_of(&g, &w).map_err(e)?;
    let expected = vec![p(1, 0), p(2, 0), p(3, 0), p(2, 1)];
    ensure(spec.missing() == expected, || {
        format!("A3: got {:?}", spec.missing())
    })?;
    ensure(
        word_from_missing(&spec) == Word::new(vec![1, 2, 3, 2]),
        || "A3: word from missing set differs".into(),
    )?;

    let q = quiver("triangle");
    let g = WeylGroup::new(&q);
    let w = g.evaluate(&Word::new(vec![1, 2, 3, 2, 1])).map_err(e)?;
    let positions = leftmost_positions(&g, &w, Base::CInfinity).map_err(e)?;
    ensure(positions.as_slice() == [1, 2, 3, 5, 7], || {
        format!("triangle: positions {:?}", positions.as_slice())
    })?;
    let indices = positions_to_indices(&q, &positions).map_err(e)?;
    let expected = vec![p(1, 0), p(2, 0), p(3, 0), p(2, 1), p(1, 2)];
    ensure(indices == expected, || format!("triangle: got {indices:?}"))?;
    Ok("A3 s1s2s3s2 and triangle s1s2s3s2s1 reproduced".into())
}

fn c4_ideal_description() -> Outcome {
    let mut parts = Vec::new();
    for name in ["A2", "A3"] {
        let q = quiver(name);
        let alg = PreprojAlgebra::build(&q, 5).map_err(e)?;
        let cat = Catalogue::new(&q, 5, 0).map_err(e)?;
        let elements = alg.group().enumerate(usize::MAX).map_err(e)?;
        for w in &elements {
            let via_ideal = alg.c_of(&cat, w).map_err(e)?;
            ensure(via_ideal == kept(alg.group(), &cat, w)?, || {
                format!("{name}: mismatch at {}", alg.group().reduced_word(w))
            })?;
        }
        parts.push(format!("{name} {} elements", elements.len()));
    }
    Ok(parts.join(", "))
}

fn c5_bruhat() -> Outcome {
    let mut parts = Vec::new();
    for (name, pairs) in [("A2", 36), ("A3", 576)] {
        let q = quiver(name);
        let alg = PreprojAlgebra::build(&q, 5).map_err(e)?;
        let g = alg.group();
        let elements = g.enumerate(usize::MAX).map_err(e)?;
        let mut count = 0;
        for v in &elements {
            for w in &elements {
                count += 1;
                ensure(
                    alg.ideal_contains(v, w).map_err(e)? == g.bruhat_leq(v, w),
                    || {
                        format!(
                            "{name}: v = {}, w = {}",
                            g.reduced_word(v),
                            g.reduced_word(w)
                        )
                    },
                )?;
            }
        }
        ensure(count == pairs, || format!("{name}: {count} pairs"))?;
        parts.push(format!("{name} {count} pairs"));
    }
    Ok(parts.join(", "))
}

fn c6_duality() -> Outcome {
    let mut parts = Vec::new();
    for name in ["A2", "A3"] {
        let alg = PreprojAlgebra::build(&quiver(name), 5).map_err(e)?;
        let elements = alg.group().enumerate(usize::MAX).map_err(e)?;
        for w in &elements {
            ensure(alg.verify_duality(w).map_err(e)?, || {
                format!("{name}: fails at {}", alg.group().reduced_word(w))
            })?;
        }
        parts.push(format!("{name} {}", elements.len()));
    }
    Ok(parts.join(", "))
}

fn c7_subclosed() -> Outcome {
    let mut parts = Vec::new();
    for name in ["A2", "A3"] {
        let q = quiver(name);
        let alg = PreprojAlgebra::build(&q, 5).map_err(e)?;
        let cat = Catalogue::new(&q, 5, 0).map_err(e)?;
        let elements = alg.group().enumerate(usize::MAX).map_err(e)?;
        let closed: BTreeSet<IndecSet> = cat.subclosed_sets().into_iter().collect();
        let images: BTreeSet<IndecSet> = elements
            .iter()
            .map(|w| alg.c_of_quotient(&cat, w))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        ensure(closed.len() == elements.len(), || {
            format!(
                "{name}: {} subclosed sets, |W| = {}",
                closed.len(),
                elements.len()
            )
        })?;
        ensure(images.len() == elements.len() && images == closed, || {
            format!("{name}: quotient images do not match the subclosed sets")
        })?;
        parts.push(format!("{name} {}", closed.len()));
    }
    Ok(parts.join(", "))
}

fn c8_sorting() -> Outcome {
    let q = quiver("A2");
    let g = WeylGroup::new(&q);
    let ctx = SortingContext::new(&g, 100).map_err(e)?;
    let found: BTreeSet<WeylElement> = ctx
        .elements()
        .iter()
        .filter(|w| ctx.is_torsion_candidate(w).unwrap_or(false))
        .cloned()
        .collect();
    let expected: BTreeSet<WeylElement> = [&[][..], &[1], &[1, 2], &[2, 1], &[1, 2, 1]]
        .iter()
        .map(|l| g.evaluate(&Word::new(l.to_vec())).unwrap())
        .collect();
    ensure(found == expected, || "(a) A2 candidate list differs".into())?;

    let q = quiver("A3");
    let alg = PreprojAlgebra::build(&q, 5).map_err(e)?;
    let cat = Catalogue::new(&q, 5, 0).map_err(e)?;
    let g = alg.group();
    let ctx = SortingContext::new(g, 100).map_err(e)?;
    let mut candidates = 0;
    for w in ctx.elements() {
        let cand = ctx.is_torsion_candidate(w).map_err(e)?;
        let torsion = cat.is_torsion_class(&kept(g, &cat, w)?).map_err(e)?;
        ensure(cand == torsion, || {
            format!("(b) A3 mismatch at {}", g.reduced_word(w))
        })?;
        if cand {
            candidates += 1;
            let pair = verify_torsion_pair(&ctx, &alg, &cat, w).map_err(e)?;
            ensure(pair.holds(), || {
                format!("(c) {} gives {pair:?}", g.reduced_word(w))
            })?;
        }
    }
    let inv: Vec<_> = ctx.elements().iter().map(|w| inversion_set(g, w)).collect();
    for (v, iv) in ctx.elements().iter().zip(&inv) {
        for (w, iw) in ctx.elements().iter().zip(&inv) {
            ensure(iv.is_subset(iw) == g.weak_leq_right(v, w), || {
                format!("(d) v = {}, w = {}", g.reduced_word(v), g.reduced_word(w))
            })?;
        }
    }
    Ok(format!(
        "A2 list matches, A3 {candidates} torsion classes, Inv/weak order agree"
    ))
}

fn c9_le_diagrams() -> Outcome {
    let grid = rectangle_word(4, 2).map_err(e)?;
    ensure(
        grid.flattened() == Word::new(vec![2, 3, 4, 1, 2, 3]),
        || format!("n = 4, k = 2 rectangle word is {}", grid.flattened()),
    )?;
    let mut selections = 0;
    for n in 1..=5 {
        for k in 1..=n {
            let report = verify_le_theorem(n, k).map_err(e)?;
            ensure(report.holds(), || {
                format!("n = {n}, k = {k}: {:?}", report.counterexample)
            })?;
            selections += report.reduced_selections;
        }
    }
    Ok(format!(
        "all 1 <= k <= n <= 5, {selections} reduced selections"
    ))
}

fn c10_antimatroid() -> Outcome {
    let mut parts = Vec::new();
    for name in ["A2", "A3", "A4"] {
        let q = quiver(name);
        let g = WeylGroup::new(&q);
        let word = ar_word_w0(&q).map_err(e)?;
        let report = check_word(&g, &word).map_err(e)?;
        ensure(report.holds(), || format!("{name}: {report:?}"))?;
        parts.push(format!("{name} {} sets", report.feasible_sets));
    }
    let g = WeylGroup::new(&quiver("A2"));
    let w0 = g.longest_element().map_err(e)?;
    let words = g.all_reduced_words(&w0);
    for word in &words {
        let report = check_word(&g, word).map_err(e)?;
        ensure(report.holds(), || format!("A2 word {word}: {report:?}"))?;
    }
    parts.push(format!("{} reduced words of w0 in A2", words.len()));
    Ok(parts.join(", "))
}

fn c11_coherence() -> Outcome {
    for (name, dim) in [("A2", 4), ("A3", 10), ("A4", 20)] {
        let q = quiver(name);
        let oracle: i64 = enumerate_preprojectives(&q, 0)
            .rows()
            .iter()
            .map(|(_, d)| d.total())
            .sum();
        let alg = PreprojAlgebra::build(&q, 5).map_err(e)?;
        ensure(oracle == dim && alg.dim() as i64 == dim, || {
            format!(
                "{name}: dim Pi = {}, sum of preprojectives = {oracle}",
                alg.dim()
            )
        })?;
    }
    for name in ["A2", "A3", "D4"] {
        let q = quiver(name);
        let coxeter = enumerate_preprojectives(&q, 0);
        let knitted = knit_preprojectives(&q, 0);
        ensure(coxeter.rows() == knitted.rows(), || {
            format!("{name}: knitting differs")
        })?;
    }
    let alg = PreprojAlgebra::build(&quiver("A3"), 5).map_err(e)?;
    let g = alg.group();
    let mut words = 0;
    for w in g.enumerate(usize::MAX).map_err(e)? {
        let cached = alg.ideal_of(&w).map_err(e)?;
        for word in g.all_reduced_words(&w) {
            words += 1;
            let ideal = alg.ideal_w(&word).map_err(e)?;
            ensure(ideal.space() == cached.space(), || {
                format!("A3: I_w differs for {word}")
            })?;
        }
    }
    let q = quiver("A2");
    let mut reports = HashMap::new();
    for p in [3, 5] {
        let cfg = SuiteConfig {
            p,
            seed: 0,
            le: Some((3, 2)),
        };
        let report = run_suite(&q, Suite::All, &cfg).map_err(e)?;
        ensure(report.passed(), || format!("A2 suite fails at p = {p}"))?;
        reports.insert(p, serde_json::to_value(&report.checks).map_err(e)?);
    }
    ensure(reports[&3] == reports[&5], || {
        "A2 suite differs between p = 3 and p = 5".into()
    })?;
    Ok(format!(
        "dims 4/10/20, knitting agrees, {words} reduced words in A3, p = 3 and 5 agree"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("bijection count", c1_bijection_count),
        ("round trip", c2_round_trip),
        ("worked examples", c3_worked_examples),
        ("ideal description", c4_ideal_description),
        ("ideal containment vs Bruhat order", c5_bruhat),
        ("duality shadow", c6_duality),
        ("subclosed bijection", c7_subclosed),
        ("sorting and torsion classes", c8_sorting),
        ("Le-diagram criterion", c9_le_diagrams),
        ("supersolvable antimatroids", c10_antimatroid),
        ("internal coherence", c11_coherence),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
