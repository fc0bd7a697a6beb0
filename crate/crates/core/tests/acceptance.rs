//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use latval::field::ScalarField;
use latval::geom::{same_triangulation, LatticePolygon};
use latval::kernel::{
    descent_chain, exp_divdiff2, rho_to_tildef, tildef_to_rho, RegionTag, RhoKernel, DESCENT_CAP,
    TAU,
};
use latval::laplace::quadrature_polygon;
use latval::sampling::{
    random_convex_pair, random_polygon, random_polygon_2d, random_polynomial, random_unimodular,
    rng, sample_points, PairKind,
};
use latval::verify::{equation_residuals, fibonacci_mismatches, rho_residual};
use latval::{KernelSpec, Valuation};

/// (e - 1)^2 / 2
const LT_1_2: f64 = 1.476246221006279878254926258934841;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn laplace_anchor() -> Outcome {
    let z = Valuation::laplace();
    let mut r = rng(101);
    let mut max = 0.0f64;
    for _ in 0..50 {
        let p = random_polygon_2d(&mut r, 12, 5);
        for _ in 0..20 {
            let x = [r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0)];
            let q = quadrature_polygon(&p, x, 1e-11).unwrap_or(f64::NAN);
            max = worst(max, (z.evaluate(&p, x) - q).abs() / (1.0 + q.abs()));
        }
    }
    let t = LatticePolygon::base_triangle();
    let a0 = (z.evaluate(&t, [0.0, 0.0]) - 0.5).abs();
    let a12 = (z.evaluate(&t, [1.0, 2.0]) - LT_1_2).abs();
    outcome(
        max <= 1e-8 && a0 <= 1e-14 && a12 <= 1e-12,
        format!("max rel residual {max:.3e} over 1000 cases; |Z(T)(0,0)-1/2| = {a0:.1e}; |Z(T)(1,2)-(e-1)^2/2| = {a12:.1e}"),
    )
}

fn valuation_axiom() -> Outcome {
    let kernels = [
        KernelSpec::parse(0.0, "0", "1").unwrap(),
        KernelSpec::parse(1.0, "1", "1").unwrap(),
        KernelSpec::parse(0.5, "phi(x)", "x^2+1").unwrap(),
    ];
    let kinds = [
        PairKind::Segments,
        PairKind::Slices,
        PairKind::Slices,
        PairKind::Nested,
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for (k, spec) in kernels.iter().enumerate() {
        let z = Valuation::new(spec);
        let mut r = rng(200 + k as u64);
        let mut max = 0.0f64;
        let mut counts = [0usize; 3];
        for i in 0..200 {
            let kind = kinds[i % kinds.len()];
            let (p, q) = random_convex_pair(&mut r, kind);
            counts[match kind {
                PairKind::Segments => 0,
                PairKind::Slices => 1,
                PairKind::Nested => 2,
            }] += 1;
            let xs = sample_points(8, r.gen());
            let rep = z.check_valuation(&p, &q, &xs).expect("convex union");
            max = worst(max, rep.max_residual);
        }
        pass &= max <= 1e-9;
        parts.push(format!(
            "kernel {} max {max:.3e} ({} segment, {} slice, {} nested pairs)",
            k + 1,
            counts[0],
            counts[1],
            counts[2]
        ));
    }
    outcome(pass, parts.join("; "))
}

fn covariance() -> Outcome {
    let kernels = [
        KernelSpec::laplace(),
        KernelSpec::parse(0.5, "phi(x)", "x^2+1").unwrap(),
    ];
    let mut r = rng(300);
    let maps: Vec<_> = (0..100).map(|_| random_unimodular(&mut r, 3, 5)).collect();
    let polys: Vec<_> = (0..20).map(|_| random_polygon(&mut r, 12, 5)).collect();
    let mut parts = Vec::new();
    let mut pass = true;
    for (k, spec) in kernels.iter().enumerate() {
        let z = Valuation::new(spec);
        let mut max = 0.0f64;
        for a in &maps {
            for p in &polys {
                let xs = sample_points(2, r.gen());
                max = worst(max, z.check_covariance(p, a, &xs).unwrap().max_residual);
            }
        }
        pass &= max <= 1e-9;
        parts.push(format!("kernel {} max {max:.3e}", k + 1));
    }
    outcome(
        pass,
        format!("100 maps x 20 polygons; {}", parts.join("; ")),
    )
}

fn functional_equations() -> Outcome {
    let mut r = rng(400);
    let mut max = [0.0f64; 5];
    let mut seeds = Vec::new();
    for _ in 0..5 {
        let src = random_polynomial(&mut r, 3);
        let z = Valuation::new(&KernelSpec::parse(0.0, "0", &src).unwrap());
        for _ in 0..10_000 {
            let (x, y) = (r.gen_range(-4.0..=4.0), r.gen_range(-4.0..=4.0));
            let res = equation_residuals(z.f2(), x, y);
            for i in 0..4 {
                max[i] = worst(max[i], res[i]);
            }
            let (a, b) = (r.gen_range(0.0..=8.0), r.gen_range(0.0..=8.0));
            max[4] = worst(max[4], rho_residual(z.rho().unwrap(), a, b));
        }
        seeds.push(src);
    }
    let pass =
        max[0] <= 1e-9 && max[1] <= 1e-9 && max[2] == 0.0 && max[3] <= 1e-9 && max[4] <= 1e-9;
    outcome(
        pass,
        format!(
            "5 seeds x 1e4 points: reflection {:.3e}, shift {:.3e}, symmetry {:e}, cone {:.3e}, rho {:.3e}",
            max[0], max[1], max[2], max[3], max[4]
        ),
    )
}

fn fibonacci() -> Outcome {
    let mut r = rng(500);
    let mismatches = fibonacci_mismatches(&mut r, 10_000);
    let mut longest = 0;
    let mut ray_ok = true;
    for _ in 0..1000 {
        let t: f64 = 10f64.powf(r.gen_range(-3.0..3.0));
        let chain = descent_chain(TAU * t, t, 0.0).unwrap();
        longest = longest.max(chain.len() - 1);
        ray_ok &= matches!(
            latval::kernel::region_tag(TAU * t, t),
            Ok(RegionTag::RaySegment(_))
        );
    }
    let rho = RhoKernel::new(ScalarField::from_fn(|x, y| x * y + 1.0));
    let finite = (0..1000).all(|i| {
        let t = 1e-3 * 1.0069f64.powi(i);
        rho.eval(TAU * t, t).unwrap().is_finite()
    });
    outcome(
        mismatches == 0 && ray_ok && finite && longest <= DESCENT_CAP as usize,
        format!("{mismatches} index mismatches in 1e4 cone points; ray points: longest chain {longest} steps, all values finite: {finite}"),
    )
}

fn bijection() -> Outcome {
    let mut r = rng(600);
    let mut max = 0.0f64;
    for _ in 0..5 {
        let src = random_polynomial(&mut r, 3);
        let seed = ScalarField::from_expr(&src).unwrap();
        let f = rho_to_tildef(Arc::new(RhoKernel::new(seed.clone())));
        let back = tildef_to_rho(&f);
        for _ in 0..1000 {
            let x: f64 = r.gen_range(0.0..8.0);
            let y: f64 = r.gen_range(x..8.0);
            let want = seed.eval(x, y);
            max = worst(max, (back.eval(x, y) - want).abs() / (1.0 + want.abs()));
        }
    }
    let lt = ScalarField::from_fn(|x, y| exp_divdiff2(0.0, x, y));
    let rho = tildef_to_rho(&lt);
    let mut unit = 0.0f64;
    for _ in 0..1000 {
        let x: f64 = r.gen_range(0.0..8.0);
        let y: f64 = r.gen_range(x..8.0);
        unit = worst(unit, (rho.eval(x, y) - 1.0).abs());
    }
    outcome(
        max <= 1e-10 && unit <= 1e-12,
        format!("seed roundtrip max {max:.3e} (5 seeds x 1e3 points); Laplace f~ -> rho=1 max {unit:.3e}"),
    )
}

fn triangulation_independence() -> Outcome {
    let mut r = rng(700);
    let kernels = [
        Valuation::laplace(),
        Valuation::new(&KernelSpec::parse(0.0, "0", &random_polynomial(&mut r, 3)).unwrap()),
    ];
    let mut polys = vec![LatticePolygon::rectangle(0, 0, 1, 1).unwrap()];
    polys.extend((0..50).map(|_| random_polygon_2d(&mut r, 8, 4)));
    let mut distinct = 0;
    let mut max = 0.0f64;
    for p in &polys {
        let a = p.empty_triangulation().unwrap();
        let b = p.alternative_triangulation().unwrap();
        if !same_triangulation(&a, &b) {
            distinct += 1;
        }
        let xs = sample_points(8, r.gen());
        for z in &kernels {
            max = worst(
                max,
                z.check_triangulation_independence(p, &xs)
                    .unwrap()
                    .max_residual,
            );
        }
    }
    let sq = &polys[0];
    let flip = !same_triangulation(
        &sq.empty_triangulation().unwrap(),
        &sq.alternative_triangulation().unwrap(),
    );
    outcome(
        max <= 1e-10 && flip,
        format!("max {max:.3e}; unit square flipped: {flip}; {distinct}/{} polygons with distinct triangulations", polys.len()),
    )
}

fn analytic_example() -> Outcome {
    let z = Valuation::analytic_example();
    let mut r = rng(800);
    let mut max = [0.0f64; 4];
    for _ in 0..10_000 {
        let (x, y) = (r.gen_range(-4.0..=4.0), r.gen_range(-4.0..=4.0));
        let res = equation_residuals(z.f2(), x, y);
        for i in 0..4 {
            max[i] = worst(max[i], res[i]);
        }
    }
    let t = LatticePolygon::base_triangle();
    let gap = (z.z2(&t, [1.0, 1.0]) - Valuation::laplace().evaluate(&t, [1.0, 1.0])).abs();
    let pass = max[0] <= 1e-9 && max[1] <= 1e-9 && max[2] == 0.0 && max[3] <= 1e-9 && gap > 1e-6;
    outcome(
        pass,
        format!(
            "reflection {:.3e}, shift {:.3e}, symmetry {:e}, cone {:.3e}; |Z2(T)(1,1) - L(T)(1,1)| = {gap:.6}",
            max[0], max[1], max[2], max[3]
        ),
    )
}

fn origin_convention() -> Outcome {
    let spec = KernelSpec::laplace();
    let z = Valuation::new(&spec);
    let v = z.evaluate(&LatticePolygon::base_triangle(), [0.0, 0.0]);
    let half_seed = spec.rho_seed.eval(0.0, 0.0) / 2.0;
    outcome(
        v == 0.5 && v == half_seed,
        format!("Z(T)(0,0) = {v}, rho(0,0)/2 = {half_seed}"),
    )
}

fn pick_exactness() -> Outcome {
    let mut r = rng(1000);
    let mut pick_fail = 0;
    let mut tri_fail = 0;
    let mut two_d = 0;
    for _ in 0..1000 {
        let p = random_polygon(&mut r, 12, 5);
        if p.dim() < 2 {
            continue;
        }
        two_d += 1;
        let lp = p.lattice_points();
        let (b, i) = (lp.boundary.len() as i128, lp.interior.len() as i128);
        if p.doubled_area() != 2 * i + b - 2 {
            pick_fail += 1;
        }
        for tris in [
            p.empty_triangulation().unwrap(),
            p.alternative_triangulation().unwrap(),
        ] {
            if tris.len() as i128 != p.doubled_area() || tris.iter().any(|t| t.det() != 1) {
                tri_fail += 1;
            }
        }
    }
    outcome(
        pick_fail == 0 && tri_fail == 0,
        format!("{two_d} two-dimensional hulls of 1000: {pick_fail} Pick failures, {tri_fail} triangulation failures"),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 10] = [
        (
            "Laplace anchor",
            laplace_anchor,
            Some(Duration::from_secs(30)),
        ),
        (
            "valuation axiom",
            valuation_axiom,
            Some(Duration::from_secs(60)),
        ),
        ("covariance", covariance, None),
        ("functional equations", functional_equations, None),
        ("Fibonacci oracle", fibonacci, None),
        ("bijection roundtrip", bijection, None),
        (
            "triangulation independence",
            triangulation_independence,
            None,
        ),
        ("analytic example", analytic_example, None),
        ("origin convention", origin_convention, None),
        ("Pick exactness", pick_exactness, None),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = run();
        let took = start.elapsed();
        if let Some(limit) = limit {
            if took > *limit {
                o.pass = false;
                o.detail
                    .push_str(&format!("; exceeded {}s budget", limit.as_secs()));
            }
        }
        println!(
            "{} criterion {:>2} ({name}): {} [{:.2}s]",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            took.as_secs_f64()
        );
        if !o.pass {
            failures += 1;
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
