//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the verdict lines always reach the
//! console. Exits non-zero when any asserted criterion fails; the last
//! criterion only reports evidence and never fails the run.

use std::time::{Duration, Instant};

use fano_hilbert::catalog::{classify, embedded_table, EntryData};
use fano_hilbert::exactq::{int, is_rational_square, rat, Rational, UniPoly};
use fano_hilbert::families::{
    bundle_case13_poly, bundle_case2_h0, bundle_case2_poly, del_pezzo, del_pezzo_delta,
    fourfold_conditions, fourfold_from_chern, mukai, mukai_delta, projective_space, quadric,
    surface_from_k2, surface_indices, threefold_from_k3, weighted_product, ChernData4,
    DelPezzoData, MukaiData,
};
use fano_hilbert::hilbert::{center, hyperplane_section, product, HilbertPolynomial};
use fano_hilbert::reducibility::{
    analyze_hilbert, gamma_lines, strip_check, totally_reducible_q, totally_reducible_r,
    StripStatus,
};
use fano_hilbert::scan::{conjecture_evidence, scan};
use fano_hilbert::structure::check_structure;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Debug>(x: T) -> String {
    format!("{x:?}")
}

fn cli_json(args: &[&str]) -> Result<(serde_json::Value, Duration), String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["fano-hilbert", "--format", "json"];
    argv.extend_from_slice(args);
    let start = Instant::now();
    let code = fano_hilbert_cli::run(argv, &mut std::io::empty(), &mut out, &mut err);
    let elapsed = start.elapsed();
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)));
    }
    Ok((serde_json::from_slice(&out).map_err(e)?, elapsed))
}

fn strings(v: &serde_json::Value) -> Vec<String> {
    v.as_array()
        .map(|a| a.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect())
        .unwrap_or_default()
}

fn coefficient_recovery() -> Verdict {
    let limit = Duration::from_millis(10);
    let (j, t2) = cli_json(&["from-h0", "--n", "3", "--iota", "2", "--h0", "1,9,31"])?;
    let a = strings(&j["polynomial"]["r_factor"]);
    ensure(a == ["1", "7/3", "7/6"], format!("m=2 a = {a:?}"))?;
    ensure(
        j["r_factored"] == "(1/6)(7*z^2 + 14*z + 6)",
        format!("m=2 R = {}", j["r_factored"]),
    )?;
    let h0: Vec<String> = (0..=3).map(|t| bundle_case2_h0(3, t).unwrap().to_string()).collect();
    let (j, t3) = cli_json(&["from-h0", "--n", "5", "--iota", "3", "--h0", &h0.join(",")])?;
    let expect = UniPoly::from_ints(&[60, 157, 117, 26]).scale(&rat(1, 120));
    ensure(strings(&j["polynomial"]["r_factor"]) == expect.to_strings(), "m=3 R differs")?;
    ensure(t2 < limit && t3 < limit, format!("runtime {t2:?}, {t3:?} exceeds {limit:?}"))?;
    Ok(format!("exact; h0 for m=3 is {}; runtimes {t2:?}, {t3:?}", h0.join(",")))
}

fn bundle_scan() -> Verdict {
    let start = Instant::now();
    let recs = scan(2, 150, 0).map_err(e)?;
    let elapsed = start.elapsed();
    ensure(recs.len() == 149, "wrong record count")?;
    let split: Vec<u32> = recs.iter().filter(|r| r.q_split).map(|r| r.m).collect();
    ensure(split.is_empty(), format!("q_split true at m = {split:?}"))?;
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("q_split false for m = 2..150 in {elapsed:?}"))
}

fn surfaces() -> Verdict {
    let mut split = Vec::new();
    for k2 in 1..=9 {
        for iota in surface_indices(k2) {
            let hp = surface_from_k2(k2, iota).map_err(e)?;
            if totally_reducible_q(hp.poly()).map_err(e)?.0 {
                split.push((k2, iota));
            }
        }
    }
    ensure(split == [(8, 2), (8, 1), (9, 3)], format!("Q-reducible pairs {split:?}"))?;
    let w = |c: &[Rational]| UniPoly::new(c.to_vec());
    let expect = [
        ((9, 3), w(&[rat(-1, 8), int(0), rat(1, 2)])),
        ((8, 2), w(&[int(0), int(0), int(1)])),
        ((8, 1), w(&[int(0), int(0), int(4)])),
    ];
    for ((k2, iota), q) in expect {
        let c = center(&surface_from_k2(k2, iota).map_err(e)?);
        ensure(c == q, format!("centered form of ({k2},{iota}) is {c}"))?;
    }
    Ok("Q-reducible exactly for (9,3), (8,2), (8,1); centered forms match".into())
}

fn del_pezzo_geography() -> Verdict {
    for n in 3..=8u32 {
        for d in 1..=8u32 {
            let (hp, delta) = del_pezzo(DelPezzoData { n, d }).map_err(e)?;
            // independent oracle: discriminant of R divided by its squared leading coefficient
            let r = hp.r_factor();
            let (a, b, c) = (r.coeff(2), r.coeff(1), r.coeff(0));
            let disc = (&b * &b - int(4) * &a * &c) / (&a * &a);
            ensure(disc == delta, format!("Delta({n},{d}) = {delta}, oracle {disc}"))?;
            if n >= 7 && d <= 4 {
                ensure(delta < int(0), format!("Delta({n},{d}) = {delta} not negative"))?;
                ensure(!totally_reducible_r(hp.poly()).map_err(e)?, format!("({n},{d}) splits over R"))?;
            }
        }
    }
    let spots = [
        ((3, 7), rat(4, 7)),
        ((3, 8), int(1)),
        ((4, 6), int(1)),
        ((6, 5), int(1)),
        ((3, 6), int(0)),
        ((5, 5), int(0)),
    ];
    for ((n, d), v) in spots {
        ensure(del_pezzo_delta(n, d) == v, format!("Delta({n},{d}) != {v}"))?;
    }
    let (hp, _) = del_pezzo(DelPezzoData { n: 3, d: 7 }).map_err(e)?;
    let g = gamma_lines(&hp, 1).map_err(e)?;
    let eqs: Vec<&str> = g.q_lines.iter().map(|l| l.equation.as_str()).collect();
    ensure(eqs == ["y-2x+1=0"], format!("Gamma_Q of (3,7) = {eqs:?}"))?;
    Ok("48 (n,d) pairs match the discriminant oracle and all spot values".into())
}

fn mukai_criterion() -> Verdict {
    let list = [(5, 18), (6, 16), (7, 14), (8, 14), (9, 12), (10, 12)];
    for (n, d) in list {
        let delta = mukai_delta(n, d);
        ensure(is_rational_square(&delta), format!("Delta({n},{d}) = {delta} not a square"))?;
        let (hp, _) = mukai(MukaiData { n, d, genus: None }).map_err(e)?;
        ensure(totally_reducible_q(hp.poly()).map_err(e)?.0, format!("({n},{d}) does not split"))?;
    }
    let bad = mukai_delta(5, 26);
    ensure(!is_rational_square(&bad), format!("Delta(5,26) = {bad} is a square"))?;
    Ok(format!("six squares; excluded case Delta = {bad}"))
}

fn threefolds() -> Verdict {
    let mut real = Vec::new();
    let mut rational = Vec::new();
    for k in 2..=64u32 {
        let hp = threefold_from_k3(k, 1).map_err(e)?;
        let rep = analyze_hilbert(&hp).map_err(e)?;
        if rep.r_verdict {
            real.push(k);
        }
        if rep.q_verdict {
            rational.push(k);
        }
    }
    ensure(real == (48..=64).collect::<Vec<_>>(), format!("R-reducible on {real:?}"))?;
    let even: Vec<u32> = rational.iter().copied().filter(|k| k % 2 == 0).collect();
    let odd: Vec<u32> = rational.iter().copied().filter(|k| k % 2 == 1).collect();
    ensure(even == [48, 50, 54, 64], format!("Q-reducible on {rational:?}"))?;
    ensure(odd == [49], format!("Q-reducible on {rational:?}"))?;
    Ok("R on [48,64]; Q on {48,50,54,64} among even degrees, plus odd 49 where 1-48/49 = (1/7)^2".into())
}

fn fourfolds() -> Verdict {
    let rows = embedded_table("fourfolds").ok_or("missing fourfold table")?;
    ensure(rows.len() == 21, "table size")?;
    for row in &rows {
        let c = classify(row).map_err(e)?;
        ensure(c.report.q_verdict, format!("{} not Q-reducible", row.id))?;
    }
    let f = fourfold_conditions(400, 196).map_err(e)?;
    ensure(
        f.alpha == Some(int(4)) && f.beta == Some(rat(1, 5)) && f.gamma == Some(int(0)),
        format!("(400,196): {f:?}"),
    )?;
    let (k, h) = (400, 150);
    ensure(h * h < 96 * k, "synthetic pair")?;
    let hp = fourfold_from_chern(ChernData4 { k, h, iota: 1 }).map_err(e)?;
    ensure(!totally_reducible_r(hp.poly()).map_err(e)?, "synthetic pair splits over R")?;
    ensure(!fourfold_conditions(k, h).map_err(e)?.r_reducible, "conditions claim R")?;
    Ok("21 rows Q-reducible; alpha=4 beta=1/5 gamma=0; (400,150) not R-reducible".into())
}

fn all_generated() -> Result<Vec<(String, HilbertPolynomial)>, String> {
    let mut v: Vec<(String, HilbertPolynomial)> = Vec::new();
    for n in 1..=10 {
        v.push((format!("P{n}"), projective_space(n).map_err(e)?));
    }
    for n in 2..=10 {
        v.push((format!("Q{n}"), quadric(n).map_err(e)?));
    }
    for n in 3..=8 {
        for d in 1..=8 {
            v.push((format!("dP({n},{d})"), del_pezzo(DelPezzoData { n, d }).map_err(e)?.0));
        }
    }
    for n in 3..=10 {
        for d in [2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 24, 26, 32] {
            v.push((format!("Mukai({n},{d})"), mukai(MukaiData { n, d, genus: None }).map_err(e)?.0));
        }
    }
    for k2 in 1..=9 {
        for iota in surface_indices(k2) {
            v.push((format!("S({k2},{iota})"), surface_from_k2(k2, iota).map_err(e)?));
        }
    }
    for k in 2..=64 {
        for iota in 1..=4 {
            if let Ok(hp) = threefold_from_k3(k, iota) {
                v.push((format!("V({k},{iota})"), hp));
            }
        }
    }
    for row in embedded_table("fourfolds").ok_or("missing table")? {
        if let Some(EntryData::Chern4(c)) = row.data {
            v.push((row.id.clone(), fourfold_from_chern(c).map_err(e)?));
        }
    }
    for m in 2..=10 {
        v.push((format!("bundle13({m})"), bundle_case13_poly(m).map_err(e)?));
    }
    for m in 2..=150 {
        v.push((format!("bundle2({m})"), bundle_case2_poly(m).map_err(e)?));
    }
    Ok(v)
}

fn structural_suite() -> Verdict {
    let all = all_generated()?;
    let bad: Vec<String> = all
        .iter()
        .filter_map(|(name, hp)| {
            let r = check_structure(hp);
            (!r.ok()).then(|| format!("{name}: {}", r.violations().join("; ")))
        })
        .collect();
    ensure(bad.is_empty(), bad.join(" | "))?;
    Ok(format!("{} polynomials, zero violations", all.len()))
}

fn cross_constructions() -> Verdict {
    let p3 = projective_space(3).map_err(e)?;
    let (dp38, _) = del_pezzo(DelPezzoData { n: 3, d: 8 }).map_err(e)?;
    let doubled = p3.poly().compose_linear(&int(2), &int(0));
    ensure(dp38.poly() == &doubled, "del_pezzo(3,8) differs from P3(2z)")?;
    for m in 2..=10 {
        let pm = projective_space(m).map_err(e)?;
        let section = hyperplane_section(&product(&pm, &pm).map_err(e)?).map_err(e)?;
        ensure(bundle_case13_poly(m).map_err(e)? == section, format!("case 1/3 differs at m={m}"))?;
    }
    let p4 = projective_space(4).map_err(e)?;
    ensure(fourfold_from_chern(ChernData4 { k: 625, h: 250, iota: 5 }).map_err(e)? == p4, "(625,250) != P4")?;
    let p1 = projective_space(1).map_err(e)?;
    let p3p1 = weighted_product(&p1, 1, &p3, 2, 2).map_err(e)?;
    ensure(
        fourfold_from_chern(ChernData4 { k: 512, h: 224, iota: 2 }).map_err(e)? == p3p1,
        "(512,224) != P3 x P1",
    )?;
    let p2 = projective_space(2).map_err(e)?;
    ensure(
        fourfold_from_chern(ChernData4 { k: 486, h: 216, iota: 3 }).map_err(e)?
            == product(&p2, &p2).map_err(e)?,
        "(486,216) != P2 x P2",
    )?;
    Ok("all five constructions agree exactly".into())
}

fn strip() -> Verdict {
    let tol = Rational::new(1.into(), num_traits::pow(10.into(), 20));
    for n in 1..=10 {
        let v = strip_check(&projective_space(n).map_err(e)?, &tol).map_err(e)?;
        ensure(v.iter().all(|x| x.status != StripStatus::Outside), format!("P{n} has a root outside"))?;
    }
    let v = strip_check(&quadric(3).map_err(e)?, &tol).map_err(e)?;
    ensure(v.iter().all(|x| x.status == StripStatus::Inside), "Q3 not strictly inside")?;
    Ok("P1..P10 within the closed strip; Q3 strictly inside".into())
}

fn conjecture_two() -> Verdict {
    let recs = scan(2, 50, 0).map_err(e)?;
    let table = conjecture_evidence(&recs);
    if table.deviations.is_empty() {
        Ok(format!("{} rows consistent (evidence only)", table.rows.len()))
    } else {
        Err(format!("deviations at m = {:?} (evidence only)", table.deviations))
    }
}

type Criterion = (&'static str, fn() -> Verdict, bool);

fn main() {
    let criteria: [Criterion; 11] = [
        ("coefficient recovery", coefficient_recovery, true),
        ("bundle scan 2..150", bundle_scan, true),
        ("surface classification", surfaces, true),
        ("del Pezzo geography", del_pezzo_geography, true),
        ("Mukai criterion", mukai_criterion, true),
        ("threefold criterion", threefolds, true),
        ("fourfold table", fourfolds, true),
        ("structural property suite", structural_suite, true),
        ("cross-construction oracles", cross_constructions, true),
        ("strip check", strip, true),
        ("conjectured root pattern", conjecture_two, false),
    ];
    let mut failed = 0;
    for (i, (name, f, asserted)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{t:.2?}]", i + 1);
                if *asserted {
                    failed += 1;
                }
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
