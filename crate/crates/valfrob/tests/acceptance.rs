//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use valfrob::descriptor::{laurent_model, LoadOptions, Loaded};
use valfrob::gallery;
use valfrob::verify::{
    claim_suite, extension_suite, gauss_suite, monomial_rule, ring_elements, series_split_suite, splitting_axioms,
    Check, VerifyBudget, SERIES_TRUNCATION,
};
use valfrob_core::frob::gauss_basis;
use valfrob_core::sample::PolyShape;
use valfrob_core::series::DEFAULT_SEED;
use valfrob_core::{
    abhyankar_center_check, classify::ramification_residue_bound, defect_identity, f_finite_verdict, fibre_dimension,
    hahn_embed_value, poly_parse, rf_parse, split_verdict, unit_pth_power_factor, verify_free_basis, Answer,
    BasisSetting, CenterDescriptor, FieldDescriptor, GaussValuation, GaussVariant, GroundField, GroupElement,
    Irrational, MonomialValuation, SeriesEmbedding, SplitBudget, SplitRule, ValuationDescriptor, ValueGroup,
};

type Outcome = Result<String, String>;

const TIME_LIMIT: Duration = Duration::from_secs(60);

fn field(p: u32, names: &[&str]) -> FieldDescriptor {
    FieldDescriptor::new(GroundField::prime(p).unwrap(), names.iter().copied())
}

fn lex(p: u32, n: usize) -> MonomialValuation {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    MonomialValuation::lex(FieldDescriptor::new(GroundField::prime(p).unwrap(), names))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(label: &str, checks: &[Check]) -> Result<usize, String> {
    for c in checks {
        if let Some(f) = &c.failure {
            return Err(format!("{label}: {} failed after {} samples on {f}", c.name, c.samples));
        }
    }
    Ok(checks.iter().map(|c| c.samples).sum())
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Monomialized descriptors of the gallery, in splitting coordinates.
fn gallery_monomial() -> Result<Vec<(String, MonomialValuation)>, String> {
    let mut out = Vec::new();
    for e in gallery::entries() {
        let loaded: Loaded = e.load(LoadOptions::default()).map_err(err)?;
        if let Some(nu) = loaded.split_valuation() {
            if nu.verify_monomialized().holds {
                out.push((e.name.clone(), nu));
            }
        }
    }
    Ok(out)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for p in [2, 3, 5] {
        for n in 1..=3 {
            let mut rng = ChaCha8Rng::seed_from_u64(u64::from(p) * 10 + n as u64);
            let checks = splitting_axioms(&lex(p, n), &mut rng, 500, PolyShape::default()).map_err(err)?;
            total += all_pass(&format!("p={p} n={n}"), &checks)?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{total} checks over 9 (p, n) pairs in {:.2?}", elapsed))
}

fn criterion_2() -> Outcome {
    let descriptors = gallery_monomial()?;
    ensure(descriptors.len() >= 4, || format!("only {} monomialized gallery descriptors", descriptors.len()))?;
    let mut total = 0;
    for (i, (name, nu)) in descriptors.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(200 + i as u64);
        total += all_pass(name, &claim_suite(nu, &mut rng, 500, PolyShape::default()).map_err(err)?)?;
    }
    Ok(format!("{total} checks on {} descriptors", descriptors.len()))
}

fn criterion_3() -> Outcome {
    let descriptors = gallery_monomial()?;
    let mut total = 0;
    for (i, (name, nu)) in descriptors.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(300 + i as u64);
        total += all_pass(name, &extension_suite(nu, &mut rng, 200, PolyShape::default()).map_err(err)?)?;
    }
    Ok(format!("{total} checks on {} descriptors", descriptors.len()))
}

fn criterion_4() -> Outcome {
    let mut total = 0;
    for p in [2, 3] {
        for n in 1..=3 {
            let c = monomial_rule(&lex(p, n), 2 * u64::from(p)).map_err(err)?;
            total += all_pass(&format!("p={p} n={n}"), &[c])?;
        }
    }
    Ok(format!("{total} monomials"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let entry = gallery::find("blow_up").ok_or("no blow_up gallery entry")?;
    let loaded = entry.load(LoadOptions::default()).map_err(err)?;
    let original = loaded.original.clone().ok_or("blow_up has no original coordinates")?;
    let chart = loaded.split_valuation().ok_or("blow_up has no chart valuation")?;
    ensure(!original.verify_monomialized().holds, || "monomialized in x, y, z".into())?;
    ensure(chart.verify_monomialized().holds, || "not monomialized in x, u, w".into())?;
    let names = &chart.field().variables;
    let params: Vec<&str> = chart.parameters().iter().map(|&i| names[i].as_str()).collect();
    ensure(params == ["x", "w"], || format!("parameters {params:?}"))?;
    let weights: Vec<String> = chart.parameters().iter().map(|&i| chart.render_value(&chart.weights()[i])).collect();
    ensure(weights == ["1", "-1 + pi"], || format!("parameter weights {weights:?}"))?;

    let desc = ValuationDescriptor::Monomial(original.clone());
    let center = desc.canonical_center().ok_or("no canonical center")?;
    let chk = abhyankar_center_check(&desc, &center).map_err(err)?;
    ensure(
        chk.holds && (chk.rational_rank, chk.residue_trdeg, chk.center_dimension) == (2, 1, 3),
        || format!("abhyankar {chk:?}"),
    )?;

    let u = rf_parse("u", chart.field()).map_err(err)?;
    let residue = chart.residue_field();
    let ru = chart.residue(&u).map_err(err)?;
    ensure(
        residue.transcendence_degree() == 1 && ru == residue.field.var(0),
        || "the residue of u is not the transcendental generator".into(),
    )?;
    let yx = rf_parse("y/x", original.field()).map_err(err)?;
    let ryx = original.residue(&yx).map_err(err)?;
    ensure(ryx == original.residue_field().field.var(0), || "residue of y/x".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let shape = PolyShape::default();
    let mut total = all_pass("axioms", &splitting_axioms(&chart, &mut rng, 500, shape).map_err(err)?)?;
    total += all_pass("claim", &claim_suite(&chart, &mut rng, 500, shape).map_err(err)?)?;
    total += all_pass("extension", &extension_suite(&chart, &mut rng, 200, shape).map_err(err)?)?;
    let elapsed = start.elapsed();
    ensure(elapsed < TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("2 + 1 = 3, splitting suite {total} checks in {elapsed:.2?}"))
}

fn criterion_6() -> Outcome {
    for p in [2, 3, 5] {
        let e = SeriesEmbedding::new(p, DEFAULT_SEED).map_err(err)?;
        let k = e.field().clone();
        let vx = e.embed_value(&k.var(0)).map_err(err)?;
        let vy = e.embed_value(&k.var(1)).map_err(err)?;
        ensure(vx == 1 && vy >= 2, || format!("p={p}: values {vx}, {vy}"))?;
        let desc = ValuationDescriptor::SeriesEmbedding(e);
        let local = CenterDescriptor::new(2, field(p, &[]), "F_p[X, Y] at (X, Y)");
        let chk = abhyankar_center_check(&desc, &local).map_err(err)?;
        ensure(
            !chk.holds && (chk.rational_rank, chk.residue_trdeg, chk.center_dimension) == (1, 0, 2),
            || format!("p={p}: abhyankar {chk:?}"),
        )?;
        let fibre = fibre_dimension(&desc).dimension;
        ensure(fibre == BigUint::from(p), || format!("p={p}: fibre {fibre}"))?;
        ensure(desc.field_degree() == BigUint::from(p * p), || format!("p={p}: field degree"))?;
        let ff = f_finite_verdict(&desc).map_err(err)?;
        ensure(ff.answer == Answer::No, || format!("p={p}: F-finite {:?}", ff.answer))?;
        let split = split_verdict(&desc, SplitBudget::default()).map_err(err)?;
        ensure(split.answer == Answer::No && split.rule == SplitRule::Noetherian, || {
            format!("p={p}: split {:?} via {:?}", split.answer, split.rule)
        })?;
    }
    Ok(format!("p = 2, 3, 5 with seed {DEFAULT_SEED}"))
}

fn criterion_7() -> Outcome {
    for p in [2, 3, 5] {
        let w = GaussValuation::new(p, GaussVariant::GroupFirst).map_err(err)?;
        let desc = ValuationDescriptor::Gauss(w.clone());
        let fibre = fibre_dimension(&desc).dimension;
        ensure(fibre == BigUint::from(p) && fibre == desc.field_degree(), || format!("p={p}: fibre {fibre}"))?;
        ensure(f_finite_verdict(&desc).map_err(err)?.answer == Answer::Yes, || format!("p={p}: not F-finite"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(70 + u64::from(p));
        let sample = ring_elements(w.as_monomial(), &mut rng, 50).map_err(err)?;
        let basis = gauss_basis(&w, 1);
        ensure(basis.len() == p as usize, || format!("p={p}: basis size {}", basis.len()))?;
        let report = verify_free_basis(&sample, &basis, BasisSetting::Gauss(&w), 1).map_err(err)?;
        ensure(report.all_certified && report.certificates.len() == 50, || format!("p={p}: basis not certified"))?;

        let z = ValuationDescriptor::Gauss(GaussValuation::new(p, GaussVariant::ZFirst).map_err(err)?);
        let fz = fibre_dimension(&z).dimension;
        ensure(fz.is_one(), || format!("p={p}: z_first fibre {fz}"))?;
        ensure(f_finite_verdict(&z).map_err(err)?.answer == Answer::No, || format!("p={p}: z_first F-finite"))?;
        if let ValuationDescriptor::Gauss(zw) = &z {
            let b = VerifyBudget {
                samples: 20,
                ..VerifyBudget::default()
            };
            all_pass("z_first", &gauss_suite(zw, &b).map_err(err)?)?;
        }
    }
    Ok("group_first: fibre p, F-finite, 50 elements certified; z_first: fibre 1, not F-finite".into())
}

fn criterion_8() -> Outcome {
    for p in [2, 3, 5] {
        let desc = ValuationDescriptor::Hahn { p };
        let split = split_verdict(&desc, SplitBudget::default()).map_err(err)?;
        ensure(
            split.answer == Answer::No
                && split.rule == SplitRule::TotallyUnramified
                && split.citation.contains("no Frobenius splitting of V exists"),
            || format!("p={p}: split {:?} via {:?}", split.answer, split.rule),
        )?;
        let group = ValueGroup::p_divisible(p);
        let mut rng = ChaCha8Rng::seed_from_u64(80 + u64::from(p));
        let mut done = 0;
        while done < 20 {
            let gamma = group.random_element(&mut rng, 40);
            if !group.is_positive(&gamma).map_err(err)? {
                continue;
            }
            let root = unit_pth_power_factor(&group, p, &gamma).map_err(err)?;
            ensure(
                root.scale(&BigInt::from(p)) == gamma && group.is_positive(&root).map_err(err)?,
                || format!("p={p}: bad factor for {}", group.render(&gamma)),
            )?;
            done += 1;
        }
        let y = poly_parse("y", &field(p, &["x", "y"])).map_err(err)?;
        let bound = BigRational::from_integer(BigInt::from(16));
        let v = hahn_embed_value(&y, &bound).map_err(err)?;
        let expect = BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(p));
        ensure(v == GroupElement(vec![expect.clone()]), || format!("p={p}: value of Y {:?}", v))?;
    }
    Ok("p = 2, 3, 5: totally unramified, 20 factors each, Y -> 1 - 1/p".into())
}

fn sweep_descriptors() -> Result<Vec<(String, ValuationDescriptor)>, String> {
    let mut out = Vec::new();
    for p in [2, 3, 5] {
        for n in 1..=3 {
            out.push((format!("lex p={p} n={n}"), ValuationDescriptor::Monomial(lex(p, n))));
        }
    }
    let ints = |v: &[i64]| GroupElement::from_integers(v.iter().copied());
    for p in [2, 3] {
        let k = field(p, &["x", "y", "z"]);
        for alpha in [Irrational::Pi, Irrational::Sqrt2] {
            let g = ValueGroup::embedded(alpha);
            let nu = MonomialValuation::from_weights(k.clone(), g.clone(), vec![ints(&[1, 0]), ints(&[1, 0]), ints(&[0, 1])])
                .map_err(err)?;
            out.push((format!("{} weights 1, 1, {} p={p}", g, alpha.name()), ValuationDescriptor::Monomial(nu)));
            let nu = MonomialValuation::from_weights(k.clone(), g.clone(), vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[0, 0])])
                .map_err(err)?;
            out.push((format!("{} weights 1, {}, 0 p={p}", g, alpha.name()), ValuationDescriptor::Monomial(nu)));
        }
        let nu = MonomialValuation::from_weights(field(p, &["x", "y"]), ValueGroup::integers(), vec![ints(&[1]), ints(&[2])])
            .map_err(err)?;
        out.push((format!("Z weights 1, 2 p={p}"), ValuationDescriptor::Monomial(nu)));
        let nu = MonomialValuation::from_weights(
            FieldDescriptor::new(GroundField::new(p, 2).map_err(err)?, ["a", "b"]),
            ValueGroup::lex(2),
            vec![ints(&[1, 0]), ints(&[0, 1])],
        )
        .map_err(err)?;
        out.push((format!("lex over F_{}", p * p), ValuationDescriptor::Monomial(nu)));
        let lz = ValueGroup::lex_sum(vec![ValueGroup::lex(1), ValueGroup::integers()]);
        let nu = MonomialValuation::from_weights(field(p, &["x", "y", "z"]), lz, vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[0, 0])])
            .map_err(err)?;
        out.push((format!("lex sum p={p}"), ValuationDescriptor::Monomial(nu)));
        out.push((format!("hahn p={p}"), ValuationDescriptor::Hahn { p }));
        out.push((
            format!("laurent p={p}"),
            ValuationDescriptor::Laurent {
                residue: field(p, &["a"]),
            },
        ));
    }
    for p in [2, 3, 5] {
        out.push((
            format!("series p={p}"),
            ValuationDescriptor::SeriesEmbedding(SeriesEmbedding::new(p, DEFAULT_SEED).map_err(err)?),
        ));
    }
    // the t-adic model used by the CLI for Laurent descriptors
    out.push(("t-adic model".into(), ValuationDescriptor::Monomial(laurent_model(&field(3, &["a", "b"])))));
    Ok(out)
}

fn criterion_9() -> Outcome {
    let descriptors = sweep_descriptors()?;
    ensure(descriptors.len() >= 20, || format!("only {} descriptors", descriptors.len()))?;
    let (mut yes, mut no) = (0, 0);
    for (name, d) in &descriptors {
        let center = d.canonical_center().ok_or_else(|| format!("{name}: no canonical center"))?;
        ramification_residue_bound(d, &center).map_err(|e| format!("{name}: {e}"))?;
        let abh = abhyankar_center_check(d, &center).map_err(|e| format!("{name}: {e}"))?;
        let defect = defect_identity(d);
        ensure(abh.holds == defect.holds, || {
            format!("{name}: abhyankar {} but defect identity {}", abh.holds, defect.holds)
        })?;
        if abh.holds {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("{} descriptors ({yes} Abhyankar centers, {no} not)", descriptors.len()))
}

fn criterion_10() -> Outcome {
    let mut total = 0;
    for p in [2, 3, 5] {
        let checks = series_split_suite(GroundField::prime(p).map_err(err)?, 100 + u64::from(p), 30, SERIES_TRUNCATION);
        total += all_pass(&format!("p={p}"), &checks)?;
    }
    Ok(format!("{total} checks on {SERIES_TRUNCATION}-coefficient truncations"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("splitting axioms", criterion_1),
        ("value bound and least-term equation", criterion_2),
        ("extension to the valuation ring", criterion_3),
        ("monomial splitting rule", criterion_4),
        ("blow-up chart", criterion_5),
        ("series embedding DVR", criterion_6),
        ("Gauss extensions", criterion_7),
        ("Hahn valuation", criterion_8),
        ("Abhyankar center sweep", criterion_9),
        ("series splitting", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
