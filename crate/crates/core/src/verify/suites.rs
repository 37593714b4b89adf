//! The individual suites. Each draws from its own generator seeded with the
//! suite seed, so results depend only on `(suite, seed)`.

use nalgebra::DMatrix;
use num_rational::Rational64;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{PropertyResult, Tolerances, Tracker};
use super::submanifold::{gaussian_vec, totally_geodesic_check, PierceFixedSet, SheetCouplingHyperplane};
use crate::error::Result;
use crate::paracomplex::{AlgebraKind, PcMatrix};
use crate::projective::{
    cross_ratio_distance, double_cover, geodesic_rpn_product, hermitian_cos2, hermitian_distance, is_unitary,
    orientable, pierce_mirror, sphere_distance, Collineation, Hyperquadric, ProjectivePoint, RpPoint,
};
use crate::pseudo_metric::{bilinear_eval, causal_class, orthant_is_self_dual, signature_of_gram, CausalClass};
use crate::scalar::Scalar;
use crate::stat_manifold::{
    alpha_connection_curvature, bhattacharyya_affinity, connection_forms, ConnectionForms, embed_projective, score_vectors,
    CurvedExponentialFamily, Derivatives, ExponentialFamily, Measure, MixtureFamily, ProbDist,
};
use crate::{BilinearForm, Paracomplex};

type Q = Paracomplex<Rational64>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational64 {
    Rational64::new(rng.random_range(-12..=12), rng.random_range(1..=9))
}

/// Random exact paracomplex number; one draw in four lies on the
/// zero-divisor locus.
fn random_q(rng: &mut ChaCha8Rng) -> Q {
    let (p, m) = (random_rational(rng), random_rational(rng));
    match rng.random_range(0..8) {
        0 => Q::from_idempotent(Rational64::from(0), m),
        1 => Q::from_idempotent(p, Rational64::from(0)),
        _ => Q::from_idempotent(p, m),
    }
}

fn q_residual(a: Q, b: Q) -> f64 {
    let d = a - b;
    d.plus().abs().max(d.minus().abs()).as_f64()
}

/// Product through the structure constants in the basis `(1, ε)`.
fn product_by_structure_constants(a: Q, b: Q) -> Q {
    let c = AlgebraKind::Paracomplex.structure_constants();
    let (u, v) = ([a.x(), a.y()], [b.x(), b.y()]);
    let mut out = [Rational64::from(0); 2];
    for (k, slot) in out.iter_mut().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                *slot += Rational64::from(c[k][i][j] as i64) * u[i] * v[j];
            }
        }
    }
    Q::new(out[0], out[1])
}

pub(super) fn algebra(seed: u64) -> Result<Vec<PropertyResult>> {
    let mut rng = rng(seed);
    let mut add_comm = Tracker::check("add_commutative", 0.0);
    let mut add_assoc = Tracker::check("add_associative", 0.0);
    let mut mul_comm = Tracker::check("mul_commutative", 0.0);
    let mut mul_assoc = Tracker::check("mul_associative", 0.0);
    let mut distrib = Tracker::check("distributive", 0.0);
    let mut structure = Tracker::check("structure_constants", 0.0);
    let mut conj_real = Tracker::check("conj_product_real", 0.0);
    let mut inverse = Tracker::check("zero_divisor_inverse_dichotomy", 0.0);
    for _ in 0..10_000 {
        let (a, b, c) = (random_q(&mut rng), random_q(&mut rng), random_q(&mut rng));
        let show = || format!("a={a}, b={b}, c={c}");
        add_comm.record(q_residual(a + b, b + a), show);
        add_assoc.record(q_residual((a + b) + c, a + (b + c)), show);
        mul_comm.record(q_residual(a * b, b * a), show);
        mul_assoc.record(q_residual((a * b) * c, a * (b * c)), show);
        distrib.record(q_residual(a * (b + c), a * b + a * c), show);
        structure.record(q_residual(a * b, product_by_structure_constants(a, b)), show);
        conj_real.record((a * a.conj()).y().abs().as_f64(), show);
        let singular = a.plus() == Rational64::from(0) || a.minus() == Rational64::from(0);
        let residual = match a.inv() {
            Ok(inv) if !singular => q_residual(a * inv, Q::one()),
            Err(_) if singular => 0.0,
            _ => 1.0,
        };
        inverse.record(residual, show);
    }
    let mut idem = Tracker::check("idempotent_relations", 0.0);
    let (ep, em) = (Q::e_plus(), Q::e_minus());
    for (lhs, rhs, what) in [
        (ep * ep, ep, "e+e+ = e+"),
        (em * em, em, "e-e- = e-"),
        (ep * em, Q::zero(), "e+e- = 0"),
        (ep + em, Q::one(), "e+ + e- = 1"),
        (ep - em, Q::eps(), "e+ - e- = eps"),
    ] {
        idem.record(q_residual(lhs, rhs), || what.to_string());
    }
    Ok([add_comm, add_assoc, mul_comm, mul_assoc, distrib, structure, conj_real, inverse, idem]
        .into_iter()
        .map(Tracker::finish)
        .collect())
}

pub(super) fn random_dist(rng: &mut ChaCha8Rng, atoms: usize) -> ProbDist {
    let w: Vec<f64> = (0..atoms).map(|_| rng.random_range(0.02..1.0)).collect();
    Measure::positive(w).and_then(|m| m.normalize()).expect("positive weights normalize")
}

fn flatten_forms(f: &ConnectionForms) -> Vec<f64> {
    let mut v = f.omega.clone();
    v.extend(f.omega_s.iter().flatten());
    v.extend(f.omega_i.iter().flatten());
    v.extend(f.omega_ij.iter().flatten().flatten());
    v
}

/// Largest coefficient difference, relative to `max(1, |coefficient|)`.
fn forms_distance(a: &ConnectionForms, b: &ConnectionForms) -> f64 {
    flatten_forms(a)
        .iter()
        .zip(flatten_forms(b))
        .map(|(x, y)| (x - y).abs() / x.abs().max(1.0))
        .fold(0.0, f64::max)
}

pub(super) fn maurer_cartan(seed: u64, tol: &Tolerances) -> Result<Vec<PropertyResult>> {
    let mut rng = rng(seed);
    let mut analytic = Tracker::check("frame_residual_analytic", tol.analytic);
    let mut fd = Tracker::check("frame_residual_finite_difference", tol.finite_difference);
    let mut agree = Tracker::check("forms_finite_difference_vs_analytic", tol.finite_difference);
    let mut centered = Tracker::check("scores_centered", tol.analytic);
    let mut curved = Tracker::control("curved_subfamily_residual", tol.separation);
    for atoms in 3..=6 {
        let family = ExponentialFamily::full(atoms)?;
        for _ in 0..100 {
            let theta: Vec<f64> = (0..atoms - 1).map(|_| rng.random_range(-2.0..2.0)).collect();
            let show = || format!("full family on {atoms} atoms, theta={theta:?}");
            let exact = connection_forms(&family, &theta, Derivatives::Auto);
            let approx = connection_forms(&family, &theta, Derivatives::FiniteDifference);
            match &exact {
                Ok(f) => analytic.record(f.residual, show),
                Err(e) => analytic.record_error(e, show),
            }
            match &approx {
                Ok(f) => fd.record(f.residual, show),
                Err(e) => fd.record_error(e, show),
            }
            if let (Ok(a), Ok(b)) = (&exact, &approx) {
                agree.record(forms_distance(a, b), show);
            }
            let frame = score_vectors(&family, &theta, Derivatives::Auto)?;
            let worst = (0..atoms - 1)
                .map(|j| (0..atoms).map(|w| frame.r[w] * frame.scores[(w, j)]).sum::<f64>().abs())
                .fold(0.0, f64::max);
            centered.record(worst, show);
        }
        if atoms >= 4 {
            let family = CurvedExponentialFamily::new(ExponentialFamily::full(atoms)?);
            for _ in 0..25 {
                let t = rng.random_range(-1.0..1.0);
                let show = || format!("curve (t, t², …) on {atoms} atoms at t={t}");
                match connection_forms(&family, &[t], Derivatives::Auto) {
                    Ok(f) => curved.record(f.residual, show),
                    Err(e) => curved.record_error(&e, show),
                }
            }
        }
    }
    Ok([analytic, fd, agree, centered, curved].into_iter().map(Tracker::finish).collect())
}

pub(super) fn metric_equivalence(seed: u64, tol: &Tolerances) -> Result<Vec<PropertyResult>> {
    let mut rng = rng(seed);
    let mut squared = Tracker::check("hermitian_cos2_vs_bc_squared", tol.analytic);
    let mut cross = Tracker::check("hermitian_vs_cross_ratio_distance", tol.analytic);
    let mut unsquared = Tracker::discrepancy("hermitian_cos2_vs_unsquared_bc", tol.analytic);
    for i in 0..1000 {
        let atoms = 2 + i % 5;
        let (p, q) = (random_dist(&mut rng, atoms), random_dist(&mut rng, atoms));
        let show = || format!("p={:?}, q={:?}", p.probs(), q.probs());
        let (x, y) = (embed_projective(&p)?, embed_projective(&q)?);
        let bc = bhattacharyya_affinity(&p, &q)?;
        let cos2 = hermitian_cos2(&x, &y)?;
        squared.record((cos2 - bc * bc).abs(), show);
        unsquared.record((cos2 - bc).abs(), show);
        let quadric = Hyperquadric::identity(atoms);
        match cross_ratio_distance(&x, &y, &quadric, 1.0) {
            Ok(d) => cross.record((hermitian_distance(&x, &y, 1.0)? - d.value).abs(), show),
            Err(e) => cross.record_error(&e, show),
        }
    }
    Ok([squared, cross, unsquared].into_iter().map(Tracker::finish).collect())
}

/// Random point of `ℭ𝒫ⁿ` whose Hermitian norm is bounded away from zero
/// relative to its size: the `(−)` sheet is a perturbation of the `(+)`
/// sheet.
fn random_point(rng: &mut ChaCha8Rng, coords: usize) -> ProjectivePoint {
    loop {
        let plus = gaussian_vec(rng, coords);
        let minus: Vec<f64> = plus.iter().map(|v| v + 0.5 * rng.sample::<f64, _>(rand_distr::StandardNormal)).collect();
        let nn: f64 = plus.iter().zip(&minus).map(|(a, b)| a * b).sum();
        let size: f64 = plus.iter().chain(&minus).map(|v| v * v).sum();
        if nn > 0.1 * size {
            if let Ok(p) = ProjectivePoint::from_sheets(&plus, &minus) {
                return p;
            }
        }
    }
}

/// Unitary collineation: `A₋ = A₊^{−T}` makes `ĀᵀA = I` sheetwise.
fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> Collineation {
    loop {
        let plus = DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } + 0.3 * rng.sample::<f64, _>(rand_distr::StandardNormal));
        if let Some(inv) = plus.clone().try_inverse() {
            let minus = inv.transpose();
            let rows = |m: &DMatrix<f64>| m.row_iter().map(|r| r.iter().copied().collect()).collect::<Vec<Vec<f64>>>();
            let matrix = PcMatrix::from_sheets(&rows(&plus), &rows(&minus)).expect("square sheets");
            if let Ok(t) = Collineation::new(matrix, false) {
                return t;
            }
        }
    }
}

fn random_non_unitary(rng: &mut ChaCha8Rng, n: usize) -> Collineation {
    let mut diag = vec![Paracomplex::one(); n];
    diag[0] = Paracomplex::real(rng.random_range(2.0..4.0));
    let mut m = PcMatrix::diagonal(&diag);
    m.set(n - 1, 0, Paracomplex::new(rng.random_range(0.5..1.0), 0.0));
    Collineation::new(m, false).expect("triangular with nonzero diagonal")
}

fn coords_residual(a: &ProjectivePoint, b: &ProjectivePoint) -> f64 {
    a.coords()
        .iter()
        .zip(b.coords().iter())
        .map(|(u, v)| (u.plus() - v.plus()).abs().max((u.minus() - v.minus()).abs()))
        .fold(0.0, f64::max)
}

pub(super) fn mirror(seed: u64, tol: &Tolerances) -> Result<Vec<PropertyResult>> {
    let mut rng = rng(seed);
    let mut isometry = Tracker::check("pierce_mirror_isometry", tol.isometry);
    let mut involution = Tracker::check("pierce_mirror_involution", tol.exact);
    let mut unitary_detected = Tracker::check("unitary_collineation_detected", tol.exact);
    let mut unitary = Tracker::check("unitary_invariance", tol.invariance);
    let mut non_unitary = Tracker::control("non_unitary_distance_defect", tol.separation);
    for i in 0..1000 {
        let coords = 2 + i % 4;
        let split = rng.random_range(0..coords - 1);
        let (x, y) = (random_point(&mut rng, coords), random_point(&mut rng, coords));
        let show = || format!("x={:?}, y={:?}, split={split}", x.coords().0, y.coords().0);
        let (fx, fy) = (pierce_mirror(&x, split)?, pierce_mirror(&y, split)?);
        isometry.record((hermitian_distance(&x, &y, 1.0)? - hermitian_distance(&fx, &fy, 1.0)?).abs(), show);
        involution.record(coords_residual(&pierce_mirror(&fx, split)?, &x), show);

        let t = random_unitary(&mut rng, coords);
        unitary_detected.record(if is_unitary(&t, 1e-10) { 0.0 } else { 1.0 }, show);
        let (tx, ty) = (t.apply(&x)?, t.apply(&y)?);
        unitary.record((hermitian_distance(&x, &y, 1.0)? - hermitian_distance(&tx, &ty, 1.0)?).abs(), show);
    }
    for _ in 0..50 {
        let coords = rng.random_range(2..=5);
        let t = random_non_unitary(&mut rng, coords);
        let mut worst = if is_unitary(&t, 1e-10) { 0.0 } else { f64::INFINITY };
        if worst > 0.0 {
            worst = 0.0f64;
            for _ in 0..20 {
                let (x, y) = (random_point(&mut rng, coords), random_point(&mut rng, coords));
                let defect = (hermitian_distance(&x, &y, 1.0)? - hermitian_distance(&t.apply(&x)?, &t.apply(&y)?, 1.0)?).abs();
                worst = worst.max(defect);
            }
        }
        non_unitary.record(worst, || format!("collineation {:?}", t.matrix()));
    }

    let mut fixed = Tracker::check("pierce_fixed_set_totally_geodesic", tol.containment);
    let mut hyper = Tracker::control("coupling_hyperplane_deviation", tol.separation);
    for (k, split) in [0usize, 1].into_iter().enumerate() {
        let s = seed.wrapping_add(k as u64);
        let set = PierceFixedSet { coords: 3, split };
        fixed.record(totally_geodesic_check(geodesic_rpn_product, &set, 200, s), || {
            format!("Pierce fixed set in CP^2, split={split}, seed={s}")
        });
        let set = SheetCouplingHyperplane { coords: 3 };
        hyper.record(totally_geodesic_check(geodesic_rpn_product, &set, 200, s), || {
            format!("coupling hyperplanes in CP^2, seed={s}")
        });
    }
    Ok([isometry, involution, unitary_detected, unitary, non_unitary, fixed, hyper].into_iter().map(Tracker::finish).collect())
}

fn random_unit(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let v = gaussian_vec(rng, len);
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

pub(super) fn cover(seed: u64, tol: &Tolerances) -> Result<Vec<PropertyResult>> {
    let mut rng = rng(seed);
    let mut fiber = Tracker::check("fiber_cardinality", tol.exact);
    let mut deck = Tracker::check("deck_isometry", tol.exact);
    let mut quotient = Tracker::check("quotient_distance", tol.quotient);
    for i in 0..1000 {
        let len = 2 + i % 5;
        let (q1, q2) = (random_unit(&mut rng, len), random_unit(&mut rng, len));
        let show = || format!("q1={q1:?}, q2={q2:?}");
        let (c1, d1) = double_cover(&q1)?;
        let (c2, d2) = double_cover(&q2)?;
        // The fiber over c1 among {q1, −q1}: both must project to c1 and be distinct.
        let in_fiber = [&q1, &d1].iter().filter(|v| RpPoint::from_vector(v).is_ok_and(|c| c == c1)).count();
        let distinct = if q1 != d1 { 2 } else { 1 };
        fiber.record((in_fiber.min(distinct) as f64 - 2.0).abs(), show);
        let theta = sphere_distance(&q1, &q2);
        deck.record((sphere_distance(&d1, &d2) - theta).abs(), show);
        let expected = theta.min(std::f64::consts::PI - theta);
        quotient.record((c1.distance(&c2) - expected).abs(), show);
    }
    let mut parity = Tracker::check("orientability_parity", tol.exact);
    for n in 1..=20usize {
        // ℝ𝒫ⁿ is orientable iff the antipodal map of ℝⁿ⁺¹ preserves orientation.
        let antipodal = DMatrix::<f64>::from_diagonal_element(n + 1, n + 1, -1.0);
        let oracle = antipodal.determinant() > 0.0;
        parity.record(if orientable(n) == oracle { 0.0 } else { 1.0 }, || format!("n={n}"));
    }
    Ok([fiber, deck, quotient, parity].into_iter().map(Tracker::finish).collect())
}

pub(super) fn flatness(seed: u64, tol: &Tolerances) -> Result<Vec<PropertyResult>> {
    let mut rng = rng(seed);
    let mut exp = Tracker::check("exponential_connection_curvature", tol.finite_difference);
    let mut mix = Tracker::check("mixture_connection_curvature", tol.finite_difference);
    let mut levi = Tracker::control("levi_civita_curvature", tol.curvature);
    for atoms in 3..=5 {
        let e = ExponentialFamily::full(atoms)?;
        let m = MixtureFamily::new(atoms)?;
        for _ in 0..10 {
            let theta: Vec<f64> = (0..atoms - 1).map(|_| rng.random_range(-1.5..1.5)).collect();
            let show = || format!("natural chart, {atoms} atoms, theta={theta:?}");
            match alpha_connection_curvature(&e, &theta, 1.0) {
                Ok(r) => exp.record(r, show),
                Err(err) => exp.record_error(&err, show),
            }
            let p = random_dist(&mut rng, atoms);
            let eta = &p.probs()[..atoms - 1];
            let show = || format!("mixture chart, {atoms} atoms, eta={eta:?}");
            match alpha_connection_curvature(&m, eta, -1.0) {
                Ok(r) => mix.record(r, show),
                Err(err) => mix.record_error(&err, show),
            }
            match alpha_connection_curvature(&m, eta, 0.0) {
                Ok(r) => levi.record(r, show),
                Err(err) => levi.record_error(&err, show),
            }
        }
    }
    Ok([exp, mix, levi].into_iter().map(Tracker::finish).collect())
}

pub(super) fn causal(seed: u64, tol: &Tolerances) -> Result<Vec<PropertyResult>> {
    let mut rng = rng(seed);
    let mut signature = Tracker::check("lorentzian_signature", tol.exact);
    for n in 1..=50 {
        let form = BilinearForm::<f64>::lorentzian(n)?;
        let sig = signature_of_gram(&form.gram(), 1e-12)?;
        let ok = (sig.neg, sig.zero, sig.pos) == (1, 0, n - 1);
        signature.record(if ok { 0.0 } else { 1.0 }, || format!("n={n}, got {sig}"));
    }

    let mut roundtrip = Tracker::check("causal_class_matches_form_sign", tol.exact);
    let mut scaling = Tracker::check("causal_class_scale_invariant", tol.exact);
    for i in 0..10_000 {
        let n = 2 + i % 5;
        let form = BilinearForm::<f64>::lorentzian(n)?;
        let mut x = gaussian_vec(&mut rng, n);
        if i % 3 == 0 {
            // on the light cone
            let space: f64 = x[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
            x[0] = if x[0] < 0.0 { -space } else { space };
        }
        let show = || format!("x={x:?}");
        let value = -x[0] * x[0] + x[1..].iter().map(|v| v * v).sum::<f64>();
        let t = 1e-10 * (1.0 + x.iter().map(|v| v * v).sum::<f64>());
        let oracle = if value < -t {
            CausalClass::Timelike
        } else if value > t {
            CausalClass::Spacelike
        } else {
            CausalClass::Null
        };
        let class = causal_class(&form, &x, None)?;
        let sign_ok = class == oracle && bilinear_eval(&form, &x, &x)?.signum() == value.signum() || value == 0.0;
        roundtrip.record(if sign_ok { 0.0 } else { 1.0 }, show);
        let lambda = rng.random_range(0.1..10.0) * if rng.random_bool(0.5) { -1.0 } else { 1.0 };
        let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
        let same = causal_class(&form, &scaled, None)? == class;
        scaling.record(if same { 0.0 } else { 1.0 }, || format!("x={x:?}, lambda={lambda}"));
    }

    let mut fisher = Tracker::check("fisher_gram_positive_definite", tol.exact);
    for atoms in 3..=6 {
        let theta: Vec<f64> = (0..atoms - 1).map(|_| rng.random_range(-1.0..1.0)).collect();
        let frame = score_vectors(&ExponentialFamily::full(atoms)?, &theta, Derivatives::Auto)?;
        let n = atoms - 1;
        let g: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..atoms).map(|w| frame.r[w] * frame.scores[(w, i)] * frame.scores[(w, j)]).sum()).collect())
            .collect();
        let sig = signature_of_gram(&g, 1e-12)?;
        let ok = (sig.neg, sig.zero, sig.pos) == (0, 0, n);
        fisher.record(if ok { 0.0 } else { 1.0 }, || format!("{atoms} atoms, theta={theta:?}, got {sig}"));
    }

    let mut orthant = Tracker::check("orthant_self_dual", tol.exact);
    for n in 1..=6 {
        let ok = orthant_is_self_dual(n, 1000, seed.wrapping_add(n as u64));
        orthant.record(if ok { 0.0 } else { 1.0 }, || format!("n={n}"));
    }
    Ok([signature, roundtrip, scaling, fisher, orthant].into_iter().map(Tracker::finish).collect())
}
