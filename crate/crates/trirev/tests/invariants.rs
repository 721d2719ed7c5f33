//! Property tests for the analytic invariants: norm axioms, Schwarz inequalities,
//! semi-inner-product axioms, operator-norm consistency, hypothesis soundness of the
//! generated instances, sandwich/scale/dominance laws of the checks, and quadrature
//! consistency.

use proptest::prelude::*;

use trirev::continuous::{cont_add_single, cont_margin_check, cont_mult_family, evaluate};
use trirev::discrete::{
    add_cp, add_family, check_margin, dm_single, mult_cp, mult_sumfunc, run_check, DmForm,
    DiscreteInstance, EqualityParams, Hypothesis, TheoremId,
};
use trirev::functional::{
    family_constant, gram_eigen_constant, sphere_search_constant, Functional, FunctionalFamily,
    SearchConfig,
};
use trirev::instances::{gen_ball_points, gen_margin, gen_slack, GenConfig, SharpnessParams};
use trirev::path::{PathFunction, SlackFunction};
use trirev::quadrature::QuadratureSpec;
use trirev::space::{inner, norm, sip, unit, Field, NormKind, PExp, Scalar, SpaceSpec, Vector};
use trirev::tol::Tolerance;

fn tol() -> Tolerance {
    Tolerance::default()
}

// --- generators ---------------------------------------------------------------------

fn arb_field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Real), Just(Field::Complex)]
}

fn arb_p() -> impl Strategy<Value = PExp> {
    prop_oneof![
        Just(PExp::Finite(1.0)),
        Just(PExp::Finite(1.5)),
        Just(PExp::Finite(2.0)),
        Just(PExp::Finite(3.0)),
        Just(PExp::Infinity),
    ]
}

fn arb_entry(field: Field) -> impl Strategy<Value = Scalar> {
    let range = -3.0..3.0f64;
    (range.clone(), range).prop_map(move |(re, im)| match field {
        Field::Real => Scalar::new(re, 0.0),
        Field::Complex => Scalar::new(re, im),
    })
}

fn arb_vector(field: Field, dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(arb_entry(field), dim).prop_map(|v| Vector::new(v).unwrap())
}

fn arb_space() -> impl Strategy<Value = SpaceSpec> {
    (1usize..5, arb_field(), arb_p())
        .prop_map(|(dim, field, p)| SpaceSpec::lp(dim, field, p).unwrap())
}

fn arb_space_with_vectors(
    count: usize,
) -> impl Strategy<Value = (SpaceSpec, Vec<Vector>)> {
    arb_space().prop_flat_map(move |s| {
        prop::collection::vec(arb_vector(s.field, s.dim), count).prop_map(move |vs| (s, vs))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    // --- core spaces ------------------------------------------------------------

    #[test]
    fn norm_axioms((space, vs) in arb_space_with_vectors(2), lambda in -4.0..4.0f64) {
        let t = tol();
        let (x, y) = (&vs[0], &vs[1]);
        let nx = norm(&space, x).unwrap();
        // homogeneity
        let nl = norm(&space, &x.scale(lambda)).unwrap();
        prop_assert!(t.eq(nl, lambda.abs() * nx), "{nl} vs {}", lambda.abs() * nx);
        // triangle
        let ns = norm(&space, &x.add(y)).unwrap();
        prop_assert!(t.le(ns, nx + norm(&space, y).unwrap()));
        // definiteness
        prop_assert!(nx >= 0.0);
        prop_assert_eq!(nx == 0.0, x.is_zero());
    }

    #[test]
    fn cauchy_schwarz_on_lp2(
        (field, dim) in (arb_field(), 1usize..5),
        seed in any::<u64>(),
    ) {
        use rand::SeedableRng;
        use rand::Rng;
        let space = SpaceSpec::lp(dim, field, PExp::Finite(2.0)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || {
            Vector::new((0..dim).map(|_| Scalar::new(
                rng.gen_range(-2.0..2.0),
                if field == Field::Complex { rng.gen_range(-2.0..2.0) } else { 0.0 },
            )).collect()).unwrap()
        };
        let (x, y) = (draw(), draw());
        let ip = inner(&space, &x, &y).unwrap();
        let bound = norm(&space, &x).unwrap() * norm(&space, &y).unwrap();
        prop_assert!(tol().le(ip.norm(), bound));
    }

    #[test]
    fn projection_identity_on_lp2((field, dim) in (arb_field(), 1usize..5), seed in any::<u64>()) {
        use rand::SeedableRng;
        use rand::Rng;
        let space = SpaceSpec::lp(dim, field, PExp::Finite(2.0)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || {
            Vector::new((0..dim).map(|_| Scalar::new(
                rng.gen_range(-2.0..2.0),
                if field == Field::Complex { rng.gen_range(-2.0..2.0) } else { 0.0 },
            )).collect()).unwrap()
        };
        let (u, v) = (draw(), draw());
        let nv = norm(&space, &v).unwrap();
        prop_assume!(nv > 1e-3);
        let uv = inner(&space, &u, &v).unwrap();
        let lhs = norm(&space, &u.sub(&v.scale_scalar(uv / (nv * nv)))).unwrap().powi(2);
        let nu = norm(&space, &u).unwrap();
        let rhs = (nu * nu * nv * nv - uv.norm_sqr()) / (nv * nv);
        prop_assert!(tol().eq(lhs, rhs), "{lhs} vs {rhs}");
    }

    #[test]
    fn sip_axioms(
        (field, dim, pf) in (arb_field(), 1usize..5, prop_oneof![Just(1.3), Just(1.5), Just(2.5), Just(4.0)]),
        seed in any::<u64>(),
        lam_re in -2.0..2.0f64,
        lam_im in -2.0..2.0f64,
    ) {
        use rand::SeedableRng;
        use rand::Rng;
        let space = SpaceSpec::lp(dim, field, PExp::Finite(pf)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || {
            Vector::new((0..dim).map(|_| Scalar::new(
                rng.gen_range(-2.0..2.0),
                if field == Field::Complex { rng.gen_range(-2.0..2.0) } else { 0.0 },
            )).collect()).unwrap()
        };
        let (x, y, z) = (draw(), draw(), draw());
        let t = tol();
        let lam = match field {
            Field::Real => Scalar::new(lam_re, 0.0),
            Field::Complex => Scalar::new(lam_re, lam_im),
        };
        // additivity in the first argument
        let lhs = sip(&space, &x.add(&y), &z).unwrap();
        let rhs = sip(&space, &x, &z).unwrap() + sip(&space, &y, &z).unwrap();
        prop_assert!((lhs - rhs).norm() <= t.slack(lhs.norm(), rhs.norm()));
        // homogeneity in the first argument
        let lhs = sip(&space, &x.scale_scalar(lam), &y).unwrap();
        let rhs = lam * sip(&space, &x, &y).unwrap();
        prop_assert!((lhs - rhs).norm() <= t.slack(lhs.norm(), rhs.norm()));
        // conjugate homogeneity in the second argument
        let lhs = sip(&space, &x, &y.scale_scalar(lam)).unwrap();
        let rhs = lam.conj() * sip(&space, &x, &y).unwrap();
        prop_assert!((lhs - rhs).norm() <= t.slack(lhs.norm(), rhs.norm()));
        // positivity and norm generation
        let xx = sip(&space, &x, &x).unwrap();
        prop_assert!(xx.im.abs() <= t.slack(xx.re, 0.0));
        let nx = norm(&space, &x).unwrap();
        prop_assert!(t.eq(xx.re, nx * nx));
        // Schwarz
        let ny = norm(&space, &y).unwrap();
        prop_assert!(t.le(sip(&space, &x, &y).unwrap().norm(), nx * ny));
    }

    #[test]
    fn strict_convexity_witness(
        (field, dim, pf) in (arb_field(), 2usize..4, prop_oneof![Just(1.5), Just(2.0), Just(3.0)]),
        seed in any::<u64>(),
        lam in 0.1..3.0f64,
        eps_exp in -9.0..-2.0f64,
        exact in prop::bool::ANY,
    ) {
        use rand::SeedableRng;
        use rand::Rng;
        let space = SpaceSpec::lp(dim, field, PExp::Finite(pf)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || {
            Vector::new((0..dim).map(|_| Scalar::new(
                rng.gen_range(-2.0..2.0),
                if field == Field::Complex { rng.gen_range(-2.0..2.0) } else { 0.0 },
            )).collect()).unwrap()
        };
        let x = draw();
        prop_assume!(norm(&space, &x).unwrap() > 1e-2);
        let eps = if exact { 0.0 } else { 10f64.powf(eps_exp) };
        let y = x.add(&draw().scale(eps)).scale(lam);
        let (nx, ny) = (norm(&space, &x).unwrap(), norm(&space, &y).unwrap());
        prop_assume!(ny > 1e-6);
        let gap = (sip(&space, &x, &y).unwrap() - Scalar::new(nx * ny, 0.0)).norm();
        // near-equality in the semi-inner-product Schwarz bound forces the
        // normalised vectors together; constant frozen from a sampling oracle
        if gap <= tol().slack(nx * ny, nx * ny) {
            let dist = norm(&space, &x.scale(1.0 / nx).sub(&y.scale(1.0 / ny))).unwrap();
            let derived = 6.0 * (gap / (nx * ny)).max(1e-16).powf(1.0 / pf.max(2.0)) + 1e-9;
            prop_assert!(dist <= derived, "dist {dist} > derived {derived} (gap {gap})");
        }
        if exact {
            // exactly parallel pairs must trigger the premise
            prop_assert!(gap <= tol().slack(nx * ny, nx * ny));
        }
    }

    // --- functionals ------------------------------------------------------------

    #[test]
    fn apply_bounded_by_op_norm((space, vs) in arb_space_with_vectors(2)) {
        let f = Functional::new(space, vs[0].clone()).unwrap();
        let est = f.op_norm();
        let val = f.apply(&vs[1]).unwrap().norm();
        prop_assert!(tol().le(val, est.value * norm(&space, &vs[1]).unwrap()));
        // certificate reproduces the value
        let cert_ratio = f.apply(&est.certificate).unwrap().norm()
            / norm(&space, &est.certificate).unwrap();
        prop_assert!(tol().eq(cert_ratio, est.value));
    }

    #[test]
    fn family_constant_caps_and_certificates(
        (space, reps) in arb_space().prop_flat_map(|s| {
            prop::collection::vec(arb_vector(s.field, s.dim), 1..4).prop_map(move |v| (s, v))
        }),
        p in arb_p(),
        seed in any::<u64>(),
    ) {
        let members: Vec<Functional> = reps
            .into_iter()
            .map(|r| Functional::new(space, r).unwrap())
            .collect();
        let fam = FunctionalFamily::new(members).unwrap();
        let est = family_constant(&fam, p, &SearchConfig { starts: 6, iters: 60, seed }, &[])
            .unwrap();
        let cap = fam.constant_cap(p);
        prop_assert!(tol().le(est.value, cap), "estimate {} above cap {cap}", est.value);
        if est.value > 0.0 {
            let ratio = fam.aggregate_ratio(p, &est.certificate).unwrap();
            prop_assert!(tol().eq(ratio, est.value));
        }
    }

    #[test]
    fn unit_norm_family_constant_range(
        (field, dim, m) in (arb_field(), 1usize..6, 1usize..6),
        seed in any::<u64>(),
    ) {
        use rand::SeedableRng;
        use rand::Rng;
        let space = SpaceSpec::lp(dim, field, PExp::Finite(2.0)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let members: Vec<Functional> = (0..m).map(|_| {
            let rep = Vector::new((0..dim).map(|_| Scalar::new(
                rng.gen_range(-2.0..2.0),
                if field == Field::Complex { rng.gen_range(-2.0..2.0) } else { 0.0 },
            )).collect()).unwrap();
            let f = Functional::new(space, rep).unwrap();
            let n = f.op_norm().value;
            prop_assume!(n > 1e-6);
            Ok(Functional::new(space, f.representer().scale(1.0 / n)).unwrap())
        }).collect::<std::result::Result<_, TestCaseError>>()?;
        let fam = FunctionalFamily::new(members).unwrap();
        let c = gram_eigen_constant(&fam).unwrap().value.powi(2);
        prop_assert!(c >= 1.0 - 1e-9 && c <= m as f64 + 1e-9, "c = {c}, m = {m}");
    }

    // --- generated instances and the discrete checks ------------------------------

    #[test]
    fn generated_margin_instances_are_clean_and_sound(
        (dim, field) in (2usize..5, arb_field()),
        n in 1usize..5,
        seed in any::<u64>(),
        frac in 0.05..0.95f64,
    ) {
        let space = SpaceSpec::lp(dim, field, PExp::Finite(2.0)).unwrap();
        let e = Vector::basis(dim, 0);
        let fam = FunctionalFamily::from_directions(space, &[e]).unwrap();
        let cfg = GenConfig::new(seed, n, space);
        let inst = gen_margin(&cfg, &fam, &[frac]).unwrap();
        prop_assert!(check_margin(&inst, &tol()).unwrap().is_empty());
        // triangle sandwich
        let sum_norm = norm(&space, &inst.sum_vector()).unwrap();
        let lhs_sum = inst.sum_norms().unwrap();
        prop_assert!(tol().le(sum_norm, lhs_sum));
        // the bound itself
        let res = dm_single(&inst, &DmForm::Norm, &tol()).unwrap();
        prop_assert!(res.passed, "lhs {} rhs {}", res.lhs, res.rhs);
    }

    #[test]
    fn generated_slack_instances_are_clean_and_sound(
        (dim, field) in (2usize..5, arb_field()),
        n in 1usize..5,
        m in 1usize..4,
        seed in any::<u64>(),
        pad in 0.0..1.0f64,
    ) {
        use rand::SeedableRng;
        use rand::Rng;
        let space = SpaceSpec::lp(dim, field, PExp::Finite(2.0)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let members: Vec<Functional> = (0..m).map(|_| {
            let rep = Vector::new((0..dim).map(|_| Scalar::new(
                rng.gen_range(-1.0..1.0),
                if field == Field::Complex { rng.gen_range(-1.0..1.0) } else { 0.0 },
            )).collect()).unwrap();
            Functional::new(space, rep).unwrap()
        }).collect();
        prop_assume!(members.iter().any(|f| f.op_norm().value > 1e-6));
        let fam = FunctionalFamily::new(members).unwrap();
        let cfg = GenConfig::new(seed, n, space);
        let inst = gen_slack(&cfg, &fam, pad).unwrap();
        let res = add_family(&inst, &tol()).unwrap();
        prop_assert!(res.hypothesis_clean());
        prop_assert!(res.passed, "lhs {} rhs {}", res.lhs, res.rhs);
        // monotone slack: inflating the matrix weakly increases the rhs
        let inflated = match &inst.hypothesis {
            Hypothesis::Slack(mtx) => mtx.iter()
                .map(|row| row.iter().map(|v| v + 0.25).collect())
                .collect(),
            _ => unreachable!(),
        };
        let inst2 = DiscreteInstance::new(
            space,
            inst.vectors.clone(),
            inst.family.clone(),
            Hypothesis::Slack(inflated),
        ).unwrap();
        let res2 = add_family(&inst2, &tol()).unwrap();
        prop_assert!(res2.rhs >= res.rhs - 1e-12);
    }

    #[test]
    fn scale_invariance_and_slack_scaling(
        seed in any::<u64>(),
        lambda in 0.2..5.0f64,
        frac in 0.1..0.9f64,
    ) {
        let space = SpaceSpec::euclidean(3);
        let fam = FunctionalFamily::from_directions(space, &[Vector::basis(3, 0)]).unwrap();
        let cfg = GenConfig::new(seed, 3, space);
        let inst = gen_margin(&cfg, &fam, &[frac]).unwrap();
        let scaled = inst.scaled(lambda, false).unwrap();
        prop_assert_eq!(
            check_margin(&inst, &tol()).unwrap().is_empty(),
            check_margin(&scaled, &tol()).unwrap().is_empty()
        );
        let a = dm_single(&inst, &DmForm::Norm, &tol()).unwrap();
        let b = dm_single(&scaled, &DmForm::Norm, &tol()).unwrap();
        prop_assert_eq!(a.passed, b.passed);

        // additive: exact deficits scale as λ·k_i
        let slack_inst = gen_slack(&cfg, &fam, 0.0).unwrap();
        let slack_scaled = slack_inst.scaled(lambda, true).unwrap();
        let ra = trirev::discrete::add_single(&slack_inst, &tol()).unwrap();
        let rb = trirev::discrete::add_single(&slack_scaled, &tol()).unwrap();
        prop_assert!(rb.hypothesis_clean());
        prop_assert!(tol().eq(rb.lhs, lambda * ra.lhs));
        prop_assert!(tol().eq(rb.rhs, lambda * ra.rhs));
    }

    #[test]
    fn bound_dominance(seed in any::<u64>(), n in 1usize..4) {
        use rand::SeedableRng;
        let space = SpaceSpec::euclidean(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let dirs: Vec<Vector> = (0..2).map(|_| {
            let v = Vector::new((0..3).map(|_|
                Scalar::new(rng.gen_range(0.2..1.5), 0.0)).collect()).unwrap();
            unit(&space, &v).unwrap()
        }).collect();
        let fam = FunctionalFamily::from_directions(space, &dirs).unwrap();
        let margins = vec![0.3, 0.25];
        let cfg = GenConfig::new(seed, n, space);
        let inst = match gen_margin(&cfg, &fam, &margins) {
            Ok(i) => i,
            Err(_) => return Ok(()),
        };
        let search = SearchConfig::light(seed);
        // sharper bound never exceeds its coarser companion
        let res = mult_sumfunc(&inst, &tol()).unwrap();
        prop_assert!(tol().le(res.rhs, res.coarse_rhs.unwrap()));
        for p in [PExp::Finite(1.0), PExp::Finite(2.0), PExp::Infinity] {
            let res = mult_cp(&inst, p, &tol(), &search).unwrap();
            prop_assert!(tol().le(res.rhs, res.coarse_rhs.unwrap()));
            prop_assert!(res.passed);
        }
        let slack_inst = gen_slack(&cfg, &fam, 0.2).unwrap();
        for p in [PExp::Finite(2.0), PExp::Infinity] {
            let res = add_cp(&slack_inst, p, &tol(), &search).unwrap();
            prop_assert!(tol().le(res.rhs, res.coarse_rhs.unwrap()));
            prop_assert!(res.passed);
        }
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), n in 1usize..5) {
        let space = SpaceSpec::hermitian(3);
        let fam = FunctionalFamily::from_directions(
            space,
            &[Vector::basis(3, 0), Vector::basis(3, 1)],
        ).unwrap();
        let cfg = GenConfig::new(seed, n, space);
        let a = gen_margin(&cfg, &fam, &[0.3, 0.2]).unwrap();
        let b = gen_margin(&cfg, &fam, &[0.3, 0.2]).unwrap();
        for (x, y) in a.vectors.iter().zip(&b.vectors) {
            for (p, q) in x.entries().iter().zip(y.entries()) {
                prop_assert_eq!(p.re.to_bits(), q.re.to_bits());
                prop_assert_eq!(p.im.to_bits(), q.im.to_bits());
            }
        }
    }

    #[test]
    fn equality_diagnosis_soundness(
        variant in 0usize..4usize,
        scale in 0.5..2.0f64,
    ) {
        // whenever every condition of the diagnosis holds, the gap is inside tolerance
        let space = SpaceSpec::euclidean(2);
        let fam = FunctionalFamily::from_directions(
            space, &[Vector::basis(2, 0), Vector::basis(2, 1)],
        ).unwrap();
        let single = FunctionalFamily::from_directions(space, &[Vector::basis(2, 0)]).unwrap();
        let (theorem, params) = match variant {
            0 => (TheoremId::DM_SINGLE, EqualityParams::new(single, vec![scale]).with_margin(0.7)),
            1 => (TheoremId::MULT_SUMFUNC, EqualityParams::new(fam, vec![scale, scale * 0.5])),
            2 => (TheoremId::ADD_SINGLE, EqualityParams::new(single, vec![scale]).with_margin(0.4)),
            _ => (TheoremId::ADD_FAMILY, EqualityParams::new(fam, vec![scale])),
        };
        let inst = trirev::discrete::equality_instance(theorem, &params).unwrap();
        let res = run_check(&inst, theorem, params.p, &tol(), &SearchConfig::light(1)).unwrap();
        prop_assert!(res.equality.all_conditions_hold());
        prop_assert!(res.equality.gap <= tol().slack(res.lhs, res.rhs));
    }

    // --- continuous -------------------------------------------------------------

    #[test]
    fn continuous_triangle_inequality_for_catalog_paths(
        which in 0usize..4usize,
        a in -1.0..0.0f64,
        len in 0.5..2.0f64,
        omega in 0.5..3.0f64,
    ) {
        let b = a + len;
        let s2 = SpaceSpec::euclidean(2);
        let f = match which {
            0 => PathFunction::constant(s2, a, b, Vector::real(&[0.7, -0.2]).unwrap()).unwrap(),
            1 => PathFunction::circular(s2, a, b, omega).unwrap(),
            2 => PathFunction::polynomial(
                s2, a, b,
                vec![Vector::real(&[0.5, 0.1]).unwrap(), Vector::real(&[-0.3, 1.0]).unwrap()],
            ).unwrap(),
            _ => PathFunction::complex_phase(SpaceSpec::cmod(PExp::Finite(2.0)), a, b, omega)
                .unwrap(),
        };
        let ev = evaluate(&f, &QuadratureSpec::default(), &tol()).unwrap();
        let int_norm = norm(&f.space, &ev.integral).unwrap();
        prop_assert!(tol().le(int_norm, ev.norm_integral));
    }

    #[test]
    fn exact_deficit_slack_never_fails(
        seed in any::<u64>(),
        amp in 0.0..0.5f64,
        omega in 0.5..3.0f64,
    ) {
        use rand::SeedableRng;
        let s2 = SpaceSpec::euclidean(2);
        let e = Vector::basis(2, 0);
        let func = Functional::inner_with(s2, &e).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let base = e.scale(rng.gen_range(0.8..1.5));
        let f = PathFunction::trig(
            s2, 0.0, 2.0, base,
            vec![trirev::path::TrigTerm {
                amplitude: Vector::basis(2, 1).scale(amp),
                omega,
                phase: rng.gen_range(0.0..1.0),
            }],
        ).unwrap();
        let fam = FunctionalFamily::new(vec![func.clone()]).unwrap();
        let k = SlackFunction::exact_deficit(&f, &fam).unwrap();
        let res = cont_add_single(&f, &func, &k, &QuadratureSpec::default(), &tol()).unwrap();
        prop_assert!(res.hypothesis_clean());
        prop_assert!(res.rhs - res.lhs >= -tol().slack(res.lhs, res.rhs));
    }

    #[test]
    fn transformed_margins_never_beat_direct_node_checks(
        rho in 0.05..0.6f64,
        amp_frac in 0.0..0.9f64,
        omega in 0.5..4.0f64,
    ) {
        // if the path stays in the ball, the transformed margin holds at every node
        let s2 = SpaceSpec::euclidean(2);
        let e = Vector::basis(2, 0);
        let f = PathFunction::trig(
            s2, 0.0, 1.5, e.clone(),
            vec![trirev::path::TrigTerm {
                amplitude: Vector::basis(2, 1).scale(rho * amp_frac),
                omega,
                phase: 0.3,
            }],
        ).unwrap();
        let ball = trirev::transform::BallHypothesis::new(e.clone(), rho).unwrap();
        let margin = trirev::transform::ball_to_margin(&s2, &ball).unwrap();
        let fam = FunctionalFamily::from_directions(s2, &[e]).unwrap();
        let ev = evaluate(&f, &QuadratureSpec::default(), &tol()).unwrap();
        let violations = cont_margin_check(&f, &fam, &[margin], &ev.nodes, &tol()).unwrap();
        prop_assert!(violations.is_empty());
        let res = cont_mult_family(
            &f, &fam, &[margin], &QuadratureSpec::default(), &tol(), None,
            &SearchConfig::light(1),
        ).unwrap();
        prop_assert!(res.passed);
    }

    #[test]
    fn ball_points_inside_all_balls(
        seed in any::<u64>(),
        rho in 0.05..0.5f64,
        off in 0.0..0.3f64,
    ) {
        let space = SpaceSpec::euclidean(3);
        let c1 = Vector::basis(3, 0);
        let c2 = c1.add(&Vector::basis(3, 1).scale(off));
        let cfg = GenConfig::new(seed, 4, space);
        let radii = [rho, rho + off];
        match gen_ball_points(&cfg, &[c1.clone(), c2.clone()], &radii) {
            Ok(pts) => for x in pts {
                prop_assert!(norm(&space, &x.sub(&c1)).unwrap() <= radii[0] + 1e-12);
                prop_assert!(norm(&space, &x.sub(&c2)).unwrap() <= radii[1] + 1e-12);
            },
            Err(trirev::error::Error::ConstructionFailure(_)) => {},
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        }
    }

    #[test]
    fn sharpness_never_exceeds_bound(seed in any::<u64>(), r in 0.2..0.9f64) {
        let space = SpaceSpec::euclidean(2);
        let fam = FunctionalFamily::from_directions(space, &[Vector::basis(2, 0)]).unwrap();
        let params = SharpnessParams::new(fam, vec![r], 2, seed);
        let res = trirev::instances::sharpness_search(TheoremId::DM_SINGLE, &params, 300).unwrap();
        prop_assert!(res.best_ratio <= res.bound + tol().slack(res.best_ratio, res.bound));
    }
}

// --- non-proptest invariants ----------------------------------------------------

#[test]
fn gram_and_sphere_agree_on_small_families() {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
    for trial in 0..10 {
        let dim = 2 + trial % 4;
        let m = 1 + trial % 3;
        let space = SpaceSpec::lp(dim, Field::Real, PExp::Finite(2.0)).unwrap();
        let members: Vec<Functional> = (0..m)
            .map(|_| {
                let rep = Vector::new(
                    (0..dim)
                        .map(|_| Scalar::new(rng.gen_range(-2.0..2.0), 0.0))
                        .collect(),
                )
                .unwrap();
                Functional::new(space, rep).unwrap()
            })
            .collect();
        let fam = FunctionalFamily::new(members).unwrap();
        let g = gram_eigen_constant(&fam).unwrap();
        let s = sphere_search_constant(
            &fam,
            PExp::Finite(2.0),
            &SearchConfig::with_seed(trial as u64),
            &[],
        )
        .unwrap();
        let rel = (g.value - s.value).abs() / g.value.max(1e-12);
        assert!(rel <= 1e-6, "trial {trial}: gram {} sphere {}", g.value, s.value);
    }
}

#[test]
fn quadrature_refinement_is_stable_for_catalog_paths() {
    let t = tol();
    let s2 = SpaceSpec::euclidean(2);
    let paths = vec![
        PathFunction::constant(s2, 0.0, 1.0, Vector::real(&[1.0, 0.5]).unwrap()).unwrap(),
        PathFunction::circular(s2, -0.7, 0.9, 1.3).unwrap(),
        PathFunction::polynomial(
            s2,
            0.0,
            2.0,
            vec![
                Vector::real(&[1.0, 0.0]).unwrap(),
                Vector::real(&[0.2, 0.4]).unwrap(),
                Vector::real(&[0.0, -0.1]).unwrap(),
            ],
        )
        .unwrap(),
        PathFunction::piecewise_constant(
            s2,
            &[Vector::real(&[1.0, 0.0]).unwrap(), Vector::real(&[0.5, 0.5]).unwrap()],
        )
        .unwrap(),
    ];
    let base = QuadratureSpec::default();
    let doubled = QuadratureSpec {
        panels: base.panels * 2,
        ..base
    };
    for f in paths {
        let a = evaluate(&f, &base, &t).unwrap();
        let b = evaluate(&f, &doubled, &t).unwrap();
        assert!((a.norm_integral - b.norm_integral).abs() < 1e-9);
        let d = a
            .integral
            .sub(&b.integral)
            .entries()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(d < 1e-9, "integral moved by {d}");
    }
}

#[test]
fn cmod_arc_ratio_minimum_sits_at_endpoints() {
    // supports the arc margins used by the complex-function suites: on arcs of
    // half-angle <= π/4 the ratio Re F(e^{it})/|e^{it}|_q (phase-aligned F) is
    // minimal at the endpoints
    for q in [
        PExp::Finite(1.0),
        PExp::Finite(1.5),
        PExp::Finite(2.0),
        PExp::Finite(4.0),
        PExp::Finite(8.0),
        PExp::Infinity,
    ] {
        let space = SpaceSpec::cmod(q);
        let func = Functional::new(space, Vector::complex(&[(1.0, 0.0)]).unwrap()).unwrap();
        let theta = std::f64::consts::FRAC_PI_4;
        let ratio = |t: f64| {
            let z = Vector::complex(&[(t.cos(), t.sin())]).unwrap();
            func.re_apply(&z).unwrap() / norm(&space, &z).unwrap()
        };
        let endpoint = ratio(theta);
        for i in 0..=2000 {
            let t = -theta + 2.0 * theta * (i as f64) / 2000.0;
            assert!(
                ratio(t) >= endpoint - 1e-12,
                "q={q:?}: ratio({t}) = {} < endpoint {endpoint}",
                ratio(t)
            );
        }
    }
}

#[test]
fn report_round_trip_preserves_verdicts() {
    use trirev::report::WitnessInstance;
    let space = SpaceSpec::euclidean(3);
    let fam = FunctionalFamily::from_directions(
        space,
        &[Vector::basis(3, 0), Vector::basis(3, 1)],
    )
    .unwrap();
    let cfg = GenConfig::new(8, 4, space);
    let inst = gen_margin(&cfg, &fam, &[0.4, 0.3]).unwrap();
    let t = tol();
    let search = SearchConfig::light(0);
    for (theorem, p) in [
        (TheoremId::MULT_SUMFUNC, None),
        (TheoremId::MULT_CINF, None),
        (TheoremId::MULT_CP, Some(PExp::Finite(2.0))),
    ] {
        let direct = run_check(&inst, theorem, p, &t, &search).unwrap();
        let w = WitnessInstance::from_instance(&inst, theorem, p);
        let json = serde_json::to_string(&w).unwrap();
        let back: WitnessInstance = serde_json::from_str(&json).unwrap();
        let re = back.recheck(&t, &search).unwrap();
        assert_eq!(direct.passed, re.passed);
        assert_eq!(direct.lhs.to_bits(), re.lhs.to_bits());
        assert_eq!(direct.rhs.to_bits(), re.rhs.to_bits());
    }
}

#[test]
fn smooth_ball_paths_pass_the_transformed_check() {
    // the generated smooth interpolant stays inside the balls, so the transformed
    // multiplicative corollary runs clean on it
    use trirev::continuous::{cont_mult_transformed, GeoHypothesis};
    use trirev::instances::gen_ball_path;
    let space = SpaceSpec::euclidean(2);
    let center = Vector::real(&[1.0, 0.2]).unwrap();
    let cfg = trirev::instances::GenConfig::new(23, 1, space);
    let f = gen_ball_path(&cfg, &[center.clone()], &[0.35], (0.0, 1.5)).unwrap();
    let res = cont_mult_transformed(
        &f,
        &[center],
        &GeoHypothesis::Ball { radii: vec![0.35] },
        &QuadratureSpec::default(),
        &tol(),
        &SearchConfig::light(0),
    )
    .unwrap();
    assert!(res.hypothesis_clean(), "{} violations", res.violations.len());
    assert!(res.passed);
}

#[test]
fn norm_kind_marker() {
    // keep the enum import exercised
    let s = SpaceSpec::cmod(PExp::Finite(2.0));
    assert!(matches!(s.norm, NormKind::CMod(_)));
}
