//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use parastat::projective::{
    cross_ratio_distance, double_cover, geodesic_rpn_product, hermitian_distance, orientable, pierce_mirror,
    sphere_distance, Hyperquadric, ProjectivePoint, RpPoint,
};
use parastat::pseudo_metric::{bilinear_eval, causal_class, signature_of_gram};
use parastat::stat_manifold::{
    alpha_connection_curvature, bhattacharyya_affinity, cone_geodesic, connection_forms, embed_projective,
    geodesic_trace, parse_trace_csv, simplex_geodesic, CurvedExponentialFamily, Derivatives, Direction,
    ExponentialFamily, Measure, MixtureFamily, ProbDist,
};
use parastat::verify::{run_suite, totally_geodesic_check, PierceFixedSet, SheetCouplingHyperplane};
use parastat::{CausalClass, Form, PcRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn random_dist(rng: &mut ChaCha8Rng, atoms: usize) -> ProbDist {
    let w: Vec<f64> = (0..atoms).map(|_| rng.random_range(0.02..1.0)).collect();
    Measure::positive(w).unwrap().normalize().unwrap()
}

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

fn unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let v = gaussian(rng, n);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

fn criterion_1() -> Outcome {
    let report = run_suite("algebra", 42, &BTreeMap::new()).map_err(|e| e.to_string())?;
    for p in &report.properties {
        ensure(p.max_residual == 0.0 && p.pass, format!("{} residual {}", p.name, p.max_residual))?;
    }
    let laws = report.properties.iter().filter(|p| p.cases >= 10_000).count();
    ensure(laws >= 8, format!("only {laws} properties ran on 10^4 triples"))?;
    // the idempotent relations once more, directly
    let (ep, em) = (PcRational::e_plus(), PcRational::e_minus());
    ensure(
        ep * ep == ep && em * em == em && ep * em == PcRational::zero() && ep + em == PcRational::one(),
        "idempotent relations".into(),
    )?;
    Ok(format!("{} properties, residual 0 on {} cases", report.properties.len(), report.cases))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut worst_exact, mut worst_fd) = (0.0f64, 0.0f64);
    for atoms in 3..=6 {
        let family = ExponentialFamily::full(atoms).unwrap();
        for _ in 0..100 {
            let theta: Vec<f64> = (0..atoms - 1).map(|_| rng.random_range(-2.0..2.0)).collect();
            let exact = connection_forms(&family, &theta, Derivatives::Auto).map_err(|e| e.to_string())?;
            let fd = connection_forms(&family, &theta, Derivatives::FiniteDifference).map_err(|e| e.to_string())?;
            ensure(exact.analytic && !fd.analytic, "derivative provenance".into())?;
            worst_exact = worst_exact.max(exact.residual);
            worst_fd = worst_fd.max(fd.residual);
        }
    }
    ensure(worst_exact <= 1e-8, format!("analytic residual {worst_exact:e}"))?;
    ensure(worst_fd <= 1e-5, format!("finite-difference residual {worst_fd:e}"))?;
    let curved = CurvedExponentialFamily::new(ExponentialFamily::full(4).unwrap());
    let mut weakest = f64::INFINITY;
    for _ in 0..50 {
        let t = rng.random_range(-1.0..1.0);
        let forms = connection_forms(&curved, &[t], Derivatives::Auto).map_err(|e| e.to_string())?;
        weakest = weakest.min(forms.residual);
    }
    ensure(weakest > 1e-2, format!("curved control residual only {weakest:e}"))?;
    let suite = run_suite("maurer_cartan", 7, &BTreeMap::new()).map_err(|e| e.to_string())?;
    ensure(suite.pass, "maurer_cartan suite failed".into())?;
    Ok(format!("analytic {worst_exact:.1e}, finite-difference {worst_fd:.1e}, curved control >= {weakest:.3}"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut flat, mut curved) = (0.0f64, f64::INFINITY);
    for atoms in 3..=5 {
        let e = ExponentialFamily::full(atoms).unwrap();
        let m = MixtureFamily::new(atoms).unwrap();
        for _ in 0..5 {
            let theta: Vec<f64> = (0..atoms - 1).map(|_| rng.random_range(-1.5..1.5)).collect();
            flat = flat.max(alpha_connection_curvature(&e, &theta, 1.0).map_err(|e| e.to_string())?);
            let p = random_dist(&mut rng, atoms);
            let eta = &p.probs()[..atoms - 1];
            flat = flat.max(alpha_connection_curvature(&m, eta, -1.0).map_err(|e| e.to_string())?);
            curved = curved.min(alpha_connection_curvature(&m, eta, 0.0).map_err(|e| e.to_string())?);
        }
    }
    ensure(flat <= 1e-5, format!("alpha = ±1 curvature {flat:e}"))?;
    ensure(curved >= 0.1, format!("alpha = 0 curvature only {curved}"))?;
    Ok(format!("max |R| for alpha = ±1: {flat:.1e}; alpha = 0 control: min {curved:.3}"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut squared, mut cross, mut unsquared) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..1000 {
        let atoms = 2 + i % 5;
        let (p, q) = (random_dist(&mut rng, atoms), random_dist(&mut rng, atoms));
        let (x, y) = (embed_projective(&p).unwrap(), embed_projective(&q).unwrap());
        let delta = hermitian_distance(&x, &y, 1.0).map_err(|e| e.to_string())?;
        let cos2 = delta.cos().powi(2);
        let bc = bhattacharyya_affinity(&p, &q).unwrap();
        squared = squared.max((cos2 - bc * bc).abs());
        unsquared = unsquared.max((cos2 - bc).abs());
        let via_cross = cross_ratio_distance(&x, &y, &Hyperquadric::identity(atoms), 1.0).map_err(|e| e.to_string())?;
        cross = cross.max((delta - via_cross.value).abs());
    }
    ensure(squared <= 1e-8, format!("|cos² − BC²| = {squared:e}"))?;
    ensure(cross <= 1e-8, format!("|hermitian − cross-ratio| = {cross:e}"))?;
    ensure(unsquared > 1e-8, format!("unsquared comparison unexpectedly holds ({unsquared:e})"))?;
    Ok(format!(
        "|cos²δ − BC²| {squared:.1e}, |hermitian − cross-ratio| {cross:.1e}; unsquared |cos²δ − BC| = {unsquared:.3} FAILS as expected"
    ))
}

fn criterion_5() -> Outcome {
    for n in 1..=50 {
        let g = Form::lorentzian(n).unwrap().gram();
        let sig = signature_of_gram(&g, 1e-12).map_err(|e| e.to_string())?;
        ensure((sig.neg, sig.zero, sig.pos) == (1, 0, n - 1), format!("n={n}: {sig}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut counts = [0usize; 3];
    for i in 0..10_000 {
        let n = 2 + i % 5;
        let form = Form::lorentzian(n).unwrap();
        let mut x = gaussian(&mut rng, n);
        if i % 3 == 0 {
            x[0] = x[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
        }
        let b = bilinear_eval(&form, &x, &x).unwrap();
        let tol = 1e-10 * (1.0 + x.iter().map(|v| v * v).sum::<f64>());
        let class = causal_class(&form, &x, None).map_err(|e| e.to_string())?;
        let expected = if b < -tol {
            CausalClass::Timelike
        } else if b > tol {
            CausalClass::Spacelike
        } else {
            CausalClass::Null
        };
        ensure(class == expected, format!("x={x:?}: {class} but B(x,x)={b}"))?;
        counts[class as usize] += 1;
    }
    ensure(counts.iter().all(|&c| c > 0), format!("not every class reached: {counts:?}"))?;
    Ok(format!("(1,0,n−1) for n ≤ 50; 10^4 vectors classified (timelike/null/spacelike = {counts:?})"))
}

fn random_point(rng: &mut ChaCha8Rng, coords: usize) -> ProjectivePoint {
    let plus = gaussian(rng, coords);
    let minus: Vec<f64> = plus.iter().map(|v| v + 0.5 * rng.sample::<f64, _>(StandardNormal)).collect();
    ProjectivePoint::from_sheets(&plus, &minus).unwrap()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut pairs = 0;
    while pairs < 1000 {
        let coords = rng.random_range(2..=5);
        let split = rng.random_range(0..coords - 1);
        let (x, y) = (random_point(&mut rng, coords), random_point(&mut rng, coords));
        let Ok(d) = hermitian_distance(&x, &y, 1.0) else { continue };
        let fx = pierce_mirror(&x, split).unwrap();
        let fy = pierce_mirror(&y, split).unwrap();
        worst = worst.max((d - hermitian_distance(&fx, &fy, 1.0).map_err(|e| e.to_string())?).abs());
        pairs += 1;
    }
    ensure(worst <= 1e-12, format!("mirror isometry defect {worst:e}"))?;
    let fixed = [0, 1]
        .iter()
        .map(|&split| totally_geodesic_check(geodesic_rpn_product, &PierceFixedSet { coords: 3, split }, 200, 6))
        .fold(0.0, f64::max);
    ensure(fixed <= 1e-9, format!("fixed-set deviation {fixed:e}"))?;
    let control = totally_geodesic_check(geodesic_rpn_product, &SheetCouplingHyperplane { coords: 3 }, 200, 6);
    ensure(control >= 1e-2, format!("hyperplane control deviation only {control:e}"))?;
    Ok(format!("isometry defect {worst:.1e}; fixed-set deviation {fixed:.1e}; hyperplane control {control:.3}"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let len = 2 + i % 5;
        let (q1, q2) = (unit(&mut rng, len), unit(&mut rng, len));
        let (c1, d1) = double_cover(&q1).map_err(|e| e.to_string())?;
        let (c2, d2) = double_cover(&q2).map_err(|e| e.to_string())?;
        let fiber: Vec<&Vec<f64>> = [&q1, &d1].into_iter().filter(|v| RpPoint::from_vector(v).unwrap() == c1).collect();
        ensure(fiber.len() == 2 && fiber[0] != fiber[1], format!("fiber over {q1:?}"))?;
        let theta = sphere_distance(&q1, &q2);
        ensure(sphere_distance(&d1, &d2) == theta, format!("deck map moved distance at {q1:?}, {q2:?}"))?;
        worst = worst.max((c1.distance(&c2) - theta.min(PI - theta)).abs());
    }
    ensure(worst <= 1e-10, format!("quotient distance defect {worst:e}"))?;
    for n in 1..=20 {
        ensure(orientable(n) == (n % 2 == 1), format!("orientable({n})"))?;
    }
    Ok(format!("fibers of size 2, deck exact, quotient defect {worst:.1e}, parity rule n ≤ 20"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut sum_err, mut subgroup, mut gauge) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..50 {
        let atoms = 2 + i % 5;
        let p0 = random_dist(&mut rng, atoms);
        let q = Direction::new(gaussian(&mut rng, atoms)).unwrap();
        let qmax = q.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let s_max = 1e3 / qmax * if i % 2 == 0 { 1.0 } else { -1.0 };
        let c = rng.random_range(-1.0..1.0);
        let shifted = Direction::new(q.values().iter().map(|v| v + c).collect()).unwrap();
        let trace = geodesic_trace(&p0, &q, s_max, 99).map_err(|e| e.to_string())?;
        ensure(trace.len() == 100, "trace length".into())?;
        for row in &trace {
            sum_err = sum_err.max((row.p.probs().iter().sum::<f64>() - 1.0).abs());
            ensure(row.p.is_interior(), format!("left the open simplex at s={}", row.s))?;
            let other = simplex_geodesic(&p0, &shifted, row.s).unwrap();
            let diff = row.p.probs().iter().zip(other.probs()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            gauge = gauge.max(diff);
        }
        // one-parameter subgroup law, on the cone and on the simplex
        let (s, t) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let f0 = p0.as_measure();
        let two = cone_geodesic(&cone_geodesic(&f0, &q, s).unwrap(), &q, t).unwrap();
        let one = cone_geodesic(&f0, &q, s + t).unwrap();
        for (a, b) in two.weights().iter().zip(one.weights()) {
            subgroup = subgroup.max((a - b).abs() / b.abs());
        }
        let two = simplex_geodesic(&simplex_geodesic(&p0, &q, s).unwrap(), &q, t).unwrap();
        let one = simplex_geodesic(&p0, &q, s + t).unwrap();
        for (a, b) in two.probs().iter().zip(one.probs()) {
            subgroup = subgroup.max((a - b).abs());
        }
    }
    ensure(sum_err <= 1e-12, format!("sum-to-one defect {sum_err:e}"))?;
    ensure(subgroup <= 1e-12, format!("subgroup defect {subgroup:e}"))?;
    ensure(gauge <= 1e-12, format!("gauge defect {gauge:e}"))?;
    Ok(format!("sum {sum_err:.1e}, subgroup {subgroup:.1e}, gauge {gauge:.1e} with |s·q| up to 1e3"))
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_parastat")).args(args).output().expect("run parastat");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let write = |name: &str, body: &str| {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        path.to_string_lossy().into_owned()
    };
    let a = write("a.json", r#"{"atoms": 2, "p": [0.5, 0.5]}"#);
    let b = write("b.json", r#"{"atoms": 2, "p": [0.9, 0.1]}"#);
    let p0 = write("p0.json", r#"{"atoms": 3, "p": [0.2, 0.3, 0.5]}"#);
    let bad = write("bad.json", r#"{"atoms": 2, "p": [0.7, 0.7]}"#);
    let x = write("x.json", r#"{"coords": [[1, 0], [0, 0]]}"#);
    let y = write("y.json", r#"{"coords": [[1, 0], [1, 0]]}"#);

    let (code, out, _) = bin(&["dist", "--metric", "bhattacharyya", &a, &b]);
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(code == 0 && v["metric"] == "bhattacharyya", format!("dist: {code} {out}"))?;
    ensure((v["value"].as_f64().unwrap() - 0.89443).abs() < 1e-5, format!("dist value {out}"))?;
    let (code, out, _) = bin(&["dist", "--metric", "hermitian", &x, &y]);
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(code == 0 && (v["value"].as_f64().unwrap() - PI / 4.0).abs() < 1e-12, format!("hermitian {out}"))?;

    let (code, csv, _) = bin(&["geodesic", "--q", "1,-1,0", "--s-max", "3", "--steps", "100", &p0]);
    ensure(code == 0, format!("geodesic exit {code}"))?;
    let rows = parse_trace_csv(&csv).map_err(|e| e.to_string())?;
    ensure(rows.len() == 101 && rows[0].1 == vec![0.2, 0.3, 0.5], "geodesic s=0 row is not the input".into())?;
    let (_, json, _) = bin(&["geodesic", "--q", "1,-1,0", "--s-max", "3", "--steps", "100", "--format", "json", &p0]);
    let parsed: Vec<serde_json::Value> = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    for (row, (s, p)) in parsed.iter().zip(&rows) {
        let jp: Vec<f64> = row["p"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
        ensure(row["s"].as_f64() == Some(*s) && &jp == p, "CSV and JSON traces differ".into())?;
    }

    let (code, out, _) = bin(&["signature", "--dim", "3", "--index", "1"]);
    ensure(code == 0 && out.trim() == r#"{"neg":1,"zero":0,"pos":2}"#, format!("signature: {out}"))?;
    let (code, out, _) = bin(&["causal", "1,1,0"]);
    ensure(code == 0 && out == "Null\n", format!("causal: {out}"))?;
    let (code, out, _) = bin(&["pc", "mul", "2+1ε", "3+2ε"]);
    ensure(code == 0 && out.contains("8+7ε"), format!("pc: {out}"))?;
    let (code, out, _) = bin(&["verify", "--suite", "algebra", "--seed", "42"]);
    let report: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(code == 0 && report["pass"] == true, format!("verify exit {code}"))?;

    for (args, want, name) in [
        (vec!["dist", "--metric", "bhattacharyya", &a, &bad], 1, Some("NotADistribution")),
        (vec!["pc", "inv", "1+ε"], 1, Some("ZeroDivisor")),
        (vec!["causal", "--index", "2", "1,0,0"], 1, Some("NotLorentzian")),
        (vec!["verify", "--suite", "nope", "--seed", "1"], 1, Some("UnknownSuite")),
        (vec!["dist", "--metric", "bhattacharyya", &a, "/nonexistent.json"], 1, Some("Io")),
        (vec!["verify", "--suite", "algebra"], 2, None),
        (vec!["dist", "--metric", "euclid", &a, &b], 2, None),
        (vec!["geodesic", "--unknown"], 2, None),
        (vec![], 2, None),
    ] {
        let (code, _, err) = bin(&args);
        ensure(code == want, format!("{args:?}: exit {code}, expected {want}"))?;
        if let Some(name) = name {
            ensure(err.starts_with(name), format!("{args:?}: stderr `{err}`"))?;
        }
    }
    Ok("formats round-trip; exit codes 0/1/2 verified on 9 error cases".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 algebra suite", criterion_1),
        ("2 Maurer–Cartan frame equations", criterion_2),
        ("3 flat connection pair", criterion_3),
        ("4 metric equivalence", criterion_4),
        ("5 Lorentzian structure", criterion_5),
        ("6 mirror symmetry", criterion_6),
        ("7 double cover", criterion_7),
        ("8 geodesics", criterion_8),
        ("9 command line", criterion_9),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    let elapsed = start.elapsed();
    println!("acceptance: {} of 9 passed in {:.2} s", 9 - failures, elapsed.as_secs_f64());
    if failures > 0 || elapsed.as_secs() >= 60 {
        std::process::exit(1);
    }
}
