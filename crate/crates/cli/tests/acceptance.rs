//! Acceptance gate. One test per shipped guarantee; each prints a single
//! `criterion N: PASS/FAIL (...)` line with its measured numbers and
//! enforces the stated tolerance and time budget. Run with `--nocapture`
//! to see all lines.

use std::f64::consts::{E, PI, TAU};
use std::time::Instant;

use metronoid::polygon::{cap_level_for_area, convex_hull, polygon_area};
use metronoid::rng::Stream;
use metronoid::{
    ball_certificate, cross_polytope_certificate, density_factor, directional_ratio_exact_2d,
    equivalence_pipeline, fvein_search, grunbaum_ratio, mean_abs_inner, required_resolution,
    sample_sphere, snap_to_grid, tail_lower_bound, tail_volume_ratio, uniform_body_construction,
    uniform_cap_extreme_2d, CertificateKind, ContainmentMethod, ConvexBody, DirectionNet,
    DiscreteMeasure, GridSpec, LinearMap, MembershipStatus, Metronoid, Vector,
};

fn conclude(criterion: u32, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {verdict} ({detail})");
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn v(coords: &[f64]) -> Vector {
    Vector::new(coords.to_vec()).unwrap()
}

/// Random measure with total mass at least 1.2 so the generated set is
/// full-bodied rather than the barycenter singleton.
fn random_measure(s: &Stream, case: u64, n: usize, max_atoms: usize) -> DiscreteMeasure {
    let sub = s.substream(case);
    let m = 3 + (sub.unit_at(900) * (max_atoms - 2) as f64) as usize;
    let mut atoms = Vec::with_capacity(m);
    let mut total = 0.0;
    for j in 0..m {
        let x = Vector(
            (0..n)
                .map(|i| 4.0 * sub.unit_at((10 * j + i) as u64) - 2.0)
                .collect(),
        );
        let w = 0.1 + sub.unit_at(500 + j as u64);
        total += w;
        atoms.push((x, w));
    }
    if total < 1.2 {
        let f = 1.2 / total;
        for a in atoms.iter_mut() {
            a.1 *= f;
        }
    }
    DiscreteMeasure::new(n, atoms).unwrap()
}

#[test]
fn criterion_01_greedy_support_matches_lp() {
    let t0 = Instant::now();
    let s = Stream::new(401, "acceptance-c1");
    let mut worst = 0.0f64;
    for case in 0..200u64 {
        let n = 2 + (case % 4) as usize;
        let mu = random_measure(&s, case, n, 12);
        let met = Metronoid::new(mu).unwrap();
        let dirs = s.substream(10_000 + case);
        for d in 0..50u64 {
            let theta = Vector(dirs.normal_coords(d, n)).normalized().unwrap();
            let greedy = met.msupport(&theta).unwrap();
            let lp = met.msupport_lp(&theta).unwrap();
            worst = worst.max((greedy - lp).abs());
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    conclude(
        1,
        worst <= 1e-9 && secs < 30.0,
        format!("200 measures x 50 directions, max |greedy - lp| {worst:.3e}, {secs:.1} s"),
    );
}

#[test]
fn criterion_02_cross_polytope_cost_exact_and_floor() {
    let t0 = Instant::now();
    let mut worst_cost_gap = 0.0f64;
    let mut floor_margin = f64::INFINITY;
    let s = Stream::new(402, "acceptance-c2");
    for n in 1..=8usize {
        let cert = cross_polytope_certificate(n).unwrap();
        assert_eq!(cert.kind, CertificateKind::Exact);
        assert_eq!(cert.verified.method, ContainmentMethod::ExactVertices);
        assert!(cert.verified.contained);
        worst_cost_gap = worst_cost_gap.max((cert.cost - 2.0 * n as f64).abs());

        // Re-check every cross-polytope vertex membership from scratch.
        let met = Metronoid::new(cert.measure.clone()).unwrap();
        let tiny = DirectionNet::with_count(n, 4, 0).unwrap();
        for i in 0..n {
            for sgn in [1.0f64, -1.0] {
                let vertex = Vector::basis(n, i).scale(sgn);
                let m = met.membership_with_net(&vertex, &tiny).unwrap();
                assert!(m.status != MembershipStatus::Outside, "vertex out at n={n}");
            }
        }

        // Twenty random containing measures, squeezed to the containment
        // threshold by bisection on a common weight scale; their transport
        // cost must respect the 2n lower bound.
        let k = ConvexBody::cross_polytope(n, 1.0).unwrap();
        for j in 0..20u64 {
            let sub = s.substream(n as u64 * 100 + j);
            let mut dirs: Vec<Vector> = Vec::new();
            for i in 0..n {
                let stretch = 1.0 + sub.unit_at(i as u64);
                dirs.push(Vector::basis(n, i).scale(stretch));
                dirs.push(Vector::basis(n, i).scale(-stretch));
            }
            for p in 0..2u64 {
                let g = Vector(sub.normal_coords(50 + p, n)).normalized().unwrap();
                let r = 0.6 + sub.unit_at(80 + p);
                dirs.push(g.scale(r));
                dirs.push(g.scale(-r));
            }
            let contains = |t: f64| -> bool {
                let atoms: Vec<(Vector, f64)> = dirs.iter().map(|x| (x.clone(), t)).collect();
                let met = Metronoid::new(DiscreteMeasure::new(n, atoms).unwrap()).unwrap();
                for i in 0..n {
                    for sgn in [1.0f64, -1.0] {
                        let vertex = Vector::basis(n, i).scale(sgn);
                        let m = met.membership_with_net(&vertex, &tiny).unwrap();
                        if m.status == MembershipStatus::Outside {
                            return false;
                        }
                    }
                }
                true
            };
            let (mut lo, mut hi) = (1e-3f64, 2.0f64);
            assert!(contains(hi), "bracket must contain at n={n}, j={j}");
            for _ in 0..45 {
                let mid = 0.5 * (lo + hi);
                if contains(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let atoms: Vec<(Vector, f64)> = dirs.iter().map(|x| (x.clone(), hi)).collect();
            let mu = DiscreteMeasure::new(n, atoms).unwrap();
            let cost = mu.transport_cost(&k).unwrap();
            floor_margin = floor_margin.min(cost - 2.0 * n as f64);
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    conclude(
        2,
        worst_cost_gap <= 1e-12 && floor_margin >= -1e-5 && secs < 10.0,
        format!(
            "cost gap {worst_cost_gap:.1e}, tightest containing-measure margin {floor_margin:.3e} above 2n, {secs:.1} s"
        ),
    );
}

#[test]
fn criterion_03_ball_certificate_cost_and_cover() {
    let t0 = Instant::now();
    let formula = |n: usize| 2.0 / mean_abs_inner(n).unwrap();
    let cert = ball_certificate(2, 10_000, 0).unwrap();
    let pi_gap = (cert.cost - PI).abs();
    let formula_gap = (cert.cost - formula(2)).abs();

    let met = Metronoid::new(cert.measure.clone()).unwrap();
    let net = DirectionNet::standard(2, 0).unwrap();
    let mut dev = 0.0f64;
    for theta in net.directions() {
        dev = dev.max((met.msupport(theta).unwrap() - 1.0).abs());
    }

    // Certificate cost is the closed form by construction; spot-check once
    // off the planar case, then follow the trend ratio at larger n.
    let spot = ball_certificate(10, 400, 1).unwrap();
    let spot_gap = (spot.cost - formula(10)).abs();
    let mut trend_lo = f64::INFINITY;
    let mut trend_hi = 0.0f64;
    for n in [10usize, 50, 100] {
        let ratio = formula(n) / (TAU * n as f64).sqrt();
        trend_lo = trend_lo.min(ratio);
        trend_hi = trend_hi.max(ratio);
    }
    let secs = t0.elapsed().as_secs_f64();
    conclude(
        3,
        pi_gap <= 1e-12
            && formula_gap <= 1e-12
            && spot_gap <= 1e-12
            && dev <= 0.02
            && trend_lo >= 0.95
            && trend_hi <= 1.05
            && secs < 60.0,
        format!(
            "cost - pi = {pi_gap:.1e}, max |h - 1| = {dev:.4} at 1e4 atoms, trend ratio in [{trend_lo:.3}, {trend_hi:.3}], {secs:.1} s"
        ),
    );
}

#[test]
fn criterion_04_mass_exact_and_net_containment() {
    let t0 = Instant::now();
    let mut worst_slack = f64::INFINITY;
    let mut worst_ratio = 0.0f64;
    let mut seed = 100;
    for (n, r) in [(2usize, 2.0f64), (3, 2.0), (3, 3.0)] {
        for k in [
            ConvexBody::cube(n, 1.0).unwrap(),
            ConvexBody::cross_polytope(n, 1.0).unwrap(),
        ] {
            seed += 1;
            let rep = uniform_body_construction(&k, r, 200_000, seed).unwrap();
            assert_eq!(rep.mass, density_factor(n, r).unwrap(), "designed mass must be the closed form");
            assert_eq!(rep.claimed_bounds.1, r * rep.claimed_bounds.0, "cost bound column must be R x mass");
            let slack = rep.containment.inner.worst_slack.expect("net containment");
            worst_slack = worst_slack.min(slack);
            worst_ratio = worst_ratio.max(rep.containment.outer_ratio.unwrap_or(0.0));
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    conclude(
        4,
        worst_slack >= -1e-2 && secs < 120.0,
        format!(
            "six 2e5-atom constructions, worst containment slack {worst_slack:.4}, worst outer ratio {worst_ratio:.3}, {secs:.1} s"
        ),
    );
}

#[test]
fn criterion_05_grunbaum_and_tail_bounds() {
    let t0 = Instant::now();
    let samples = 1_000_000u64;
    let stated = |n: usize| (-1.0 - (n as f64 - 1.0)).exp();
    let mut notes: Vec<String> = Vec::new();
    let mut seed = 500;
    let mut oracle_sigmas = 0.0f64;

    for n in [2usize, 3] {
        let simplex = if n == 2 {
            ConvexBody::vpolytope(vec![
                v(&[0.0, 2.0]),
                v(&[-(3.0f64.sqrt()), -1.0]),
                v(&[3.0f64.sqrt(), -1.0]),
            ])
            .unwrap()
        } else {
            ConvexBody::vpolytope(vec![
                v(&[1.0, 1.0, 1.0]),
                v(&[1.0, -1.0, -1.0]),
                v(&[-1.0, 1.0, -1.0]),
                v(&[-1.0, -1.0, 1.0]),
            ])
            .unwrap()
        };
        let apex = simplex.vertices().unwrap()[0].normalized().unwrap();
        let bodies: Vec<(&str, ConvexBody, Vec<Vector>)> = vec![
            ("ball", ConvexBody::ball(n, 1.0).unwrap(), vec![Vector::basis(n, 0)]),
            ("simplex", simplex, vec![apex.clone(), apex.neg()]),
        ];
        for (name, body, dirs) in &bodies {
            for (di, u) in dirs.iter().enumerate() {
                seed += 1;
                let half = grunbaum_ratio(body, u, samples, seed).unwrap();
                assert!(
                    half.value >= 1.0 / E - 3.0 * half.std_error,
                    "halfspace floor broken for {name} n={n} dir {di}: {}",
                    half.value
                );
                seed += 1;
                let tail = tail_volume_ratio(body, u, 2.0, samples, seed).unwrap();
                let corrected = tail_lower_bound(n, 2.0);
                assert!(
                    tail.value >= corrected - 3.0 * tail.std_error,
                    "tail floor broken for {name} n={n} dir {di}: {} < {corrected}",
                    tail.value
                );
                let vertex_cut_simplex_2d = *name == "simplex" && n == 2 && di == 0;
                if vertex_cut_simplex_2d {
                    // The widely stated constant exp(-1-(n-1)) overstates
                    // this case: the planar simplex cut toward a vertex at
                    // R = 2 has exact tail ratio 1/9 < e^-2. The guaranteed
                    // bound above still holds; record the exception rather
                    // than asserting a false inequality.
                    let exact = 1.0 / 9.0;
                    assert!((tail.value - exact).abs() <= 3.0 * tail.std_error);
                    notes.push(format!(
                        "simplex n=2 vertex cut: tail {0:.5} matches exact 1/9, below stated e^-2 = {1:.5}",
                        tail.value,
                        stated(2)
                    ));
                } else {
                    assert!(
                        tail.value >= stated(n) - 3.0 * tail.std_error,
                        "stated tail constant broken for {name} n={n} dir {di}: {} < {}",
                        tail.value,
                        stated(n)
                    );
                }
                if n == 2 {
                    let exact_half = directional_ratio_exact_2d(body, u, 0.0).unwrap();
                    let level = body.support(u).unwrap() / 2.0;
                    let exact_tail = directional_ratio_exact_2d(body, u, level).unwrap();
                    let sig_h = (half.value - exact_half).abs() / half.std_error;
                    let sig_t = (tail.value - exact_tail).abs() / tail.std_error;
                    oracle_sigmas = oracle_sigmas.max(sig_h.max(sig_t));
                    assert!(sig_h <= 3.0 && sig_t <= 3.0, "clipping oracle disagrees");
                }
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    for note in &notes {
        println!("criterion 5 note: {note}");
    }
    conclude(
        5,
        oracle_sigmas <= 3.0 && secs < 120.0,
        format!(
            "1e6-sample floors hold (corrected bound everywhere, stated constant where true), worst oracle gap {oracle_sigmas:.2} sigma, {secs:.1} s"
        ),
    );
}

#[test]
fn criterion_06_structural_identities() {
    let t0 = Instant::now();
    let s = Stream::new(406, "acceptance-c6");

    // Generated set inside hull and one-sided zonotope, 500 instances.
    let mut sandwich_excess = 0.0f64;
    for case in 0..500u64 {
        let n = 2 + (case % 3) as usize;
        let met = Metronoid::new(random_measure(&s, case, n, 9)).unwrap();
        let dirs = s.substream(20_000 + case);
        for d in 0..5u64 {
            let theta = Vector(dirs.normal_coords(d, n)).normalized().unwrap();
            let (hm, hull, zono) = met.hull_zonotope_bounds(&theta).unwrap();
            sandwich_excess = sandwich_excess.max(hm - hull.min(zono));
        }
    }

    // Symmetric zonoid closed form and the zonotope equality condition.
    let mut zonoid_gap = 0.0f64;
    let mut equality_failures = 0usize;
    for case in 0..100u64 {
        let n = 2 + (case % 3) as usize;
        let sub = s.substream(40_000 + case);
        let pairs = 2 + (sub.unit_at(0) * 3.0) as usize;
        let mut atoms = vec![(Vector::zeros(n), 1.0)];
        let budget = 0.9 / pairs as f64;
        for p in 0..pairs {
            let x = Vector(sub.normal_coords(1 + p as u64, n));
            let w = budget * (0.3 + 0.7 * sub.unit_at(100 + p as u64)) / 2.0;
            atoms.push((x.clone(), w));
            atoms.push((x.neg(), w));
        }
        let met = Metronoid::new(DiscreteMeasure::new(n, atoms).unwrap()).unwrap();
        assert!(met.meets_zonotope_condition());
        for d in 0..10u64 {
            let theta = Vector(sub.normal_coords(300 + d, n)).normalized().unwrap();
            let closed = met.zonoid_support_symmetric(&theta).unwrap();
            zonoid_gap = zonoid_gap.max((met.msupport(&theta).unwrap() - closed).abs());
        }
        let check_net = DirectionNet::with_count(n, 120, case).unwrap();
        let eq = met.zonotope_equality_check_with_net(&check_net).unwrap();
        if !eq.equal {
            equality_failures += 1;
        }
    }

    // Radial rescale: transport cost invariant, support never shrinks.
    let ball = ConvexBody::ball(2, 1.0).unwrap();
    let mut cost_drift = 0.0f64;
    let mut mono_break = 0.0f64;
    for case in 0..100u64 {
        let mu = random_measure(&s, 60_000 + case, 2, 8);
        let sub = s.substream(70_000 + case);
        let off_origin = mu.atoms().iter().filter(|(x, _)| !x.is_zero()).count();
        let factors: Vec<f64> = (0..off_origin)
            .map(|i| 1.0 + 2.0 * sub.unit_at(i as u64))
            .collect();
        let rescaled = mu.radial_rescale(&factors).unwrap();
        let before = mu.transport_cost(&ball).unwrap();
        let after = rescaled.transport_cost(&ball).unwrap();
        cost_drift = cost_drift.max((after - before).abs() / (1.0 + before));
        let m0 = Metronoid::new(mu).unwrap();
        let m1 = Metronoid::new(rescaled).unwrap();
        for d in 0..40u64 {
            let phi = TAU * d as f64 / 40.0;
            let theta = v(&[phi.cos(), phi.sin()]);
            mono_break = mono_break
                .max(m0.msupport(&theta).unwrap() - m1.msupport(&theta).unwrap());
        }
    }

    // Support identity under invertible pushforward.
    let mut push_gap = 0.0f64;
    for case in 0..60u64 {
        let n = 2 + (case % 3) as usize;
        let sub = s.substream(80_000 + case);
        let t = loop {
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| 2.0 * sub.unit_at((case % 7) * 100 + (10 * i + j) as u64) - 1.0)
                        .collect()
                })
                .collect();
            let cand = LinearMap::new(rows).unwrap();
            if cand.inverse().is_ok() {
                break cand;
            }
        };
        let mu = random_measure(&s, 90_000 + case, n, 8);
        let pushed = Metronoid::new(mu.pushforward(&t).unwrap()).unwrap();
        let met = Metronoid::new(mu).unwrap();
        for d in 0..15u64 {
            let theta = Vector(sub.normal_coords(400 + d, n)).normalized().unwrap();
            let lhs = pushed.msupport(&theta).unwrap();
            let rhs = met.msupport(&t.apply_transpose(&theta)).unwrap();
            push_gap = push_gap.max((lhs - rhs).abs());
        }
    }

    let secs = t0.elapsed().as_secs_f64();
    conclude(
        6,
        sandwich_excess <= 1e-9
            && zonoid_gap <= 1e-10
            && equality_failures == 0
            && cost_drift <= 1e-12
            && mono_break <= 1e-9
            && push_gap <= 1e-8
            && secs < 60.0,
        format!(
            "sandwich excess {sandwich_excess:.1e}, zonoid gap {zonoid_gap:.1e}, {equality_failures} equality failures, cost drift {cost_drift:.1e}, monotonicity break {mono_break:.1e}, pushforward gap {push_gap:.1e}, {secs:.1} s"
        ),
    );
}

#[test]
fn criterion_07_discretization_sandwich() {
    let t0 = Instant::now();
    let net = DirectionNet::standard(2, 0).unwrap();
    let mut violations = 0usize;
    let mut worst_margin = f64::INFINITY;
    let s = Stream::new(407, "acceptance-c7");
    for case in 0..4u64 {
        // Frame atoms pin the generated set around the unit disk, which is
        // the regime where the snapped measure obeys the two-sided bound.
        let mut atoms = vec![
            (v(&[2.0, 0.0]), 0.6),
            (v(&[-2.0, 0.0]), 0.6),
            (v(&[0.0, 2.0]), 0.6),
            (v(&[0.0, -2.0]), 0.6),
        ];
        let sub = s.substream(case);
        for j in 0..196u64 {
            let x = v(&[
                3.0 * sub.unit_at(3 * j) - 1.5,
                3.0 * sub.unit_at(3 * j + 1) - 1.5,
            ]);
            atoms.push((x, 0.002 + 0.004 * sub.unit_at(3 * j + 2)));
        }
        let mu = DiscreteMeasure::new(2, atoms).unwrap();
        assert_eq!(mu.len(), 200);
        let met = Metronoid::new(mu.clone()).unwrap();
        let supports: Vec<f64> = net
            .directions()
            .iter()
            .map(|theta| met.msupport(theta).unwrap())
            .collect();
        let h_min = supports.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(h_min >= 1.0, "unit ball must sit inside the generated set");

        for eps in [0.05f64, 0.1] {
            let grid = GridSpec::new(
                2.0,
                required_resolution(2, mu.total_mass(), eps),
                eps,
            )
            .unwrap();
            let snapped = Metronoid::new(snap_to_grid(&mu, &grid).unwrap()).unwrap();
            for (theta, h) in net.directions().iter().zip(&supports) {
                let hm = snapped.msupport(theta).unwrap();
                let (lo, hi) = ((1.0 - 2.0 * eps) * h, (1.0 + 2.0 * eps) * h);
                if hm < lo || hm > hi {
                    violations += 1;
                }
                worst_margin = worst_margin.min((hm - lo).min(hi - hm));
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    conclude(
        7,
        violations == 0 && secs < 30.0,
        format!(
            "4 measures x 2 epsilons x 720 directions, {violations} violations, slimmest margin {worst_margin:.4}, {secs:.1} s"
        ),
    );
}

#[test]
fn criterion_08_cap_centroid_between_floating_bodies() {
    let t0 = Instant::now();
    let net = DirectionNet::standard(2, 0).unwrap();
    let square = vec![v(&[1.0, 1.0]), v(&[-1.0, 1.0]), v(&[-1.0, -1.0]), v(&[1.0, -1.0])];
    let s = Stream::new(408, "acceptance-c8");
    let hexagon: Vec<Vector> = (0..6)
        .map(|i| {
            let phi = TAU * i as f64 / 6.0;
            let r = 0.85 + 0.3 * s.unit_at(i);
            v(&[r * phi.cos(), r * phi.sin()])
        })
        .collect();
    let hex_hull = convex_hull(&hexagon).unwrap();
    assert_eq!(hex_hull.len(), 6, "hexagon fixture degenerated");

    let mut worst_lo = f64::INFINITY;
    let mut worst_hi = f64::INFINITY;
    for poly in [square, hexagon] {
        let hull = convex_hull(&poly).unwrap();
        let area = polygon_area(&hull);
        let body = ConvexBody::vpolytope(poly).unwrap();
        for frac in [0.05f64, 0.1, 0.2] {
            let delta = frac * area;
            for theta in net.directions() {
                let centroid = uniform_cap_extreme_2d(&body, delta, theta).unwrap();
                let h = centroid.dot(theta);
                let level_outer = cap_level_for_area(&hull, theta, delta).unwrap();
                let level_inner = cap_level_for_area(&hull, theta, delta / E).unwrap();
                worst_lo = worst_lo.min(h - level_outer);
                worst_hi = worst_hi.min(level_inner - h);
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    conclude(
        8,
        worst_lo >= -1e-7 && worst_hi >= -1e-7 && secs < 30.0,
        format!(
            "square and hexagon, three cap fractions, 720 directions: margins {worst_lo:.2e} above K_delta and {worst_hi:.2e} below K_(delta/e), {secs:.1} s"
        ),
    );
}

#[test]
fn criterion_09_search_recovers_known_optima() {
    let t0 = Instant::now();
    let cases = [
        ("cross 2d", ConvexBody::cross_polytope(2, 1.0).unwrap(), 4usize, 4.2f64),
        ("cross 3d", ConvexBody::cross_polytope(3, 1.0).unwrap(), 6, 6.3),
        ("disk", ConvexBody::ball(2, 1.0).unwrap(), 16, 1.10 * PI),
    ];
    let mut summary = Vec::new();
    for (name, k, m, bound) in &cases {
        let out = fvein_search(k, *m, 0, 10_000).unwrap();
        let cost = out.certificate.cost;
        assert!(cost <= *bound, "{name}: cost {cost} above {bound}");
        assert!(out.certificate.verified.contained, "{name}: not verified");
        // Re-verify the certificate from its own measure, independently of
        // anything the search cached.
        let met = Metronoid::new(out.certificate.measure.clone()).unwrap();
        let net = DirectionNet::standard(k.dim(), 0).unwrap();
        let again = met.contains_body(k, &net).unwrap();
        assert!(again.contained, "{name}: re-verification failed");
        let recost = out.certificate.measure.transport_cost(k).unwrap();
        assert!(
            (recost - cost).abs() <= 1e-9 * (1.0 + cost),
            "{name}: cost mismatch on recompute"
        );
        summary.push(format!("{name} {cost:.4} <= {bound:.4}"));
    }
    let secs = t0.elapsed().as_secs_f64();
    conclude(
        9,
        secs < 120.0,
        format!("{}, all re-verified, {secs:.1} s", summary.join("; ")),
    );
}

#[test]
fn criterion_10_centroid_energy_trend_and_bridge() {
    let t0 = Instant::now();
    let mut worst_rel = 0.0f64;
    let mut min_margin = f64::INFINITY;
    for n in 2..=8usize {
        let w = 1.0 / (2 * n) as f64;
        let atoms: Vec<(Vector, f64)> = (0..2 * n)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                (Vector::basis(n, j / 2).scale(sign), w)
            })
            .collect();
        let coord = DiscreteMeasure::new(n, atoms).unwrap();
        let coord_energy = metronoid::centroid_energy(&coord).unwrap();
        min_margin = min_margin.min(coord_energy - (n as f64).sqrt());

        let sphere = sample_sphere(n, 1.0, 1.0, 10_000, 600 + n as u64).unwrap();
        let sphere_energy = metronoid::centroid_energy(&sphere).unwrap();
        min_margin = min_margin.min(sphere_energy - (n as f64).sqrt());
        let closed = 1.0 / mean_abs_inner(n).unwrap();
        worst_rel = worst_rel.max((sphere_energy - closed).abs() / closed);
    }

    let mut bridge = 0.0f64;
    for n in 2..=4usize {
        let cert = cross_polytope_certificate(n).unwrap();
        let k = ConvexBody::cross_polytope(n, 1.0).unwrap();
        let rep = equivalence_pipeline(&cert.measure, &k).unwrap();
        bridge = bridge.max(rep.bridge_gap);
        assert!(rep.containment.contained);
    }
    let secs = t0.elapsed().as_secs_f64();
    conclude(
        10,
        min_margin >= 0.0 && worst_rel <= 0.02 && bridge <= 1e-10 && secs < 60.0,
        format!(
            "energies clear sqrt(n) by {min_margin:.3} minimum, sphere family within {worst_rel:.4} of closed form, bridge gap {bridge:.1e}, {secs:.1} s"
        ),
    );
}

#[test]
fn criterion_11_byte_identical_across_worker_counts() {
    let t0 = Instant::now();
    let bin = env!("CARGO_BIN_EXE_metronoid");
    let runs: Vec<Vec<&str>> = vec![
        vec!["verify", "--cases", "40", "--seed", "0"],
        vec!["tables", "--suite", "dstar", "--count", "4000", "--seed", "0"],
        vec!["tables", "--suite", "fvein", "--seed", "0"],
        vec!["tables", "--suite", "centroid-energy", "--count", "500", "--seed", "0"],
    ];
    let mut checked = 0usize;
    for args in &runs {
        let mut outputs: Vec<Vec<u8>> = Vec::new();
        for threads in ["1", "2", "8"] {
            let out = std::process::Command::new(bin)
                .args(args)
                .env("METRONOID_THREADS", threads)
                .output()
                .expect("spawn cli");
            assert!(
                out.status.success(),
                "{:?} failed at {threads} threads: {}",
                args,
                String::from_utf8_lossy(&out.stderr)
            );
            outputs.push(out.stdout);
        }
        assert!(
            outputs[0] == outputs[1] && outputs[0] == outputs[2],
            "output of {args:?} varies with the worker count"
        );
        checked += 1;
    }
    let secs = t0.elapsed().as_secs_f64();
    conclude(
        11,
        checked == 4,
        format!("verify and three table suites byte-identical across 1, 2, 8 workers, {secs:.1} s"),
    );
}
