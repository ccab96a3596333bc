//! Acceptance suite: one PASS/FAIL line per criterion, subchecks indented
//! beneath it. Exits non-zero when any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use coprenyi::bounds::{bound_report, ccri_bound_integrals, scri_bound_integrals};
use coprenyi::quadrature::IntegrationConfig;
use coprenyi::simulation::{run_study, SimulationConfig};
use coprenyi::*;

const PIMA_FRANK: f64 = 1.3776;
const PIMA_GUMBEL: f64 = 1.1542;
const PIMA_JOE: f64 = 1.1977;
/// Published MCCRI values against the Frank baseline at γ = 3.
const PIMA_MCCRI_GUMBEL: f64 = 2.717615;
const PIMA_MCCRI_JOE: f64 = 4.328715;
const PIMA_MCCRI_PRODUCT: f64 = 2.767670;
const PIMA_REL_TOL: f64 = 0.02;
const PIMA_TIME_LIMIT: Duration = Duration::from_secs(60);

const CLOSED_FORM_TOL: f64 = 1e-8;
const RELATION_TOL: f64 = 1e-12;
const CONTINUITY_TOL: f64 = 1e-2;
const PROPERTY_TIME_LIMIT: Duration = Duration::from_secs(300);

/// Published MSE for θ = 1.5, φ = 2, γ = 3 at n = 100, 300, 500.
const PUBLISHED_MSE: [f64; 3] = [0.0006327, 0.0001759, 0.0000947];
const SIMULATION_TIME_LIMIT: Duration = Duration::from_secs(1800);

#[derive(Default)]
struct Criterion {
    checks: Vec<(bool, String)>,
}

impl Criterion {
    fn check(&mut self, ok: bool, detail: impl Into<String>) {
        self.checks.push((ok, detail.into()));
    }

    fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.0)
    }

    fn report(&self, id: usize, name: &str) -> bool {
        let pass = self.passed();
        println!(
            "{} criterion {id}: {name}",
            if pass { "PASS" } else { "FAIL" }
        );
        for (ok, detail) in &self.checks {
            println!("    [{}] {detail}", if *ok { "ok" } else { "FAIL" });
        }
        pass
    }
}

fn model(f: Family, dim: usize, t: f64) -> CopulaModel {
    CopulaModel::new(f, dim, t).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn pima_selection() -> Criterion {
    let mut c = Criterion::default();
    let frank = model(Family::Frank, 3, PIMA_FRANK);
    let cfg = IntegrationConfig::tensor(64).with_refinements(0);
    let candidates = [
        (
            "gumbel",
            model(Family::Gumbel, 3, PIMA_GUMBEL),
            PIMA_MCCRI_GUMBEL,
        ),
        ("joe", model(Family::Joe, 3, PIMA_JOE), PIMA_MCCRI_JOE),
        ("product", CopulaModel::product(3), PIMA_MCCRI_PRODUCT),
    ];
    let mut forward = Vec::new();
    let mut reversed = Vec::new();
    let mut within = true;
    for (name, candidate, published) in candidates {
        let start = Instant::now();
        let v = reduced_mccri(&candidate, &frank, 3.0, &cfg).unwrap().value;
        let elapsed = start.elapsed();
        let r = reduced_mccri(&frank, &candidate, 3.0, &cfg).unwrap().value;
        let ok = rel(v, published) <= PIMA_REL_TOL;
        within &= ok;
        c.check(
            ok,
            format!("{name}: MCCRI(truth {name}, reference frank) = {v:.6}, published {published:.6}, rel. error {:.3}", rel(v, published)),
        );
        c.check(
            elapsed < PIMA_TIME_LIMIT,
            format!("{name}: evaluated in {elapsed:.2?} (< 60 s)"),
        );
        forward.push((name, v));
        reversed.push((name, r));
    }
    if !within {
        fn ranks(vals: &[(&'static str, f64)]) -> Vec<&'static str> {
            let mut v = vals.to_vec();
            v.sort_by(|a, b| a.1.total_cmp(&b.1));
            v.iter().map(|x| x.0).collect()
        }
        let expected = ["gumbel", "product", "joe"];
        let (f, r) = (ranks(&forward), ranks(&reversed));
        c.check(
            f == expected || r == expected,
            format!(
                "fallback ranking gumbel < product < joe: forward order {f:?}, reversed order {r:?} (reversed values {:?})",
                reversed.iter().map(|x| format!("{}={:.6}", x.0, x.1)).collect::<Vec<_>>()
            ),
        );
    }
    c
}

fn closed_forms() -> Criterion {
    let mut c = Criterion::default();
    for gamma in [0.5, 2.0, 3.0] {
        let exact = 2.0 * (gamma + 1.0f64).ln() / (gamma - 1.0);
        let cfg = IntegrationConfig {
            rel_tol: 1e-12,
            max_refinements: 4,
            ..IntegrationConfig::tensor(32)
        };
        let v = evaluate(
            &MeasureRequest::new(
                MeasureKind::Mccre,
                Some(gamma),
                CopulaModel::product(2),
                None,
            )
            .with_integration(cfg),
        )
        .unwrap()
        .value;
        c.check(
            (v - exact).abs() <= CLOSED_FORM_TOL,
            format!("MCCRE(product, γ={gamma}) = {v:.12}, closed form {exact:.12}"),
        );
    }
    let b = ccri_bound_integrals(&BoundRequest::new(3.0, 1.0, 1.0, BoundTarget::Mccri).unwrap())
        .unwrap();
    c.check(
        (b.w_kernel_integral - 71.0 / 1260.0).abs() <= CLOSED_FORM_TOL,
        format!(
            "W-kernel integral at γ=3, α=β=1: {:.12} vs 71/1260",
            b.w_kernel_integral
        ),
    );
    c.check(
        (b.m_kernel_integral - 1.0 / 14.0).abs() <= CLOSED_FORM_TOL,
        format!(
            "M-kernel integral at γ=3, α=β=1: {:.12} vs 1/14",
            b.m_kernel_integral
        ),
    );
    c
}

fn bivariate_zoo() -> Vec<CopulaModel> {
    [
        (Family::Fgm, -0.7),
        (Family::Fgm, 0.5),
        (Family::Amh, -0.6),
        (Family::Amh, 0.8),
        (Family::Joe, 1.5),
        (Family::Joe, 4.0),
        (Family::Gumbel, 1.3),
        (Family::Gumbel, 3.0),
        (Family::Frank, -4.0),
        (Family::Frank, 6.0),
        (Family::Clayton, 0.5),
        (Family::Clayton, 3.0),
        (Family::Product, 0.0),
    ]
    .into_iter()
    .map(|(f, t)| model(f, 2, t))
    .collect()
}

fn grid_101() -> impl Iterator<Item = [f64; 2]> {
    (0..=100).flat_map(|i| (0..=100).map(move |j| [i as f64 / 100.0, j as f64 / 100.0]))
}

fn measure(
    kind: MeasureKind,
    gamma: Option<f64>,
    x: CopulaModel,
    y: Option<CopulaModel>,
    dist: Option<DistortionProfile>,
) -> f64 {
    let mut req = MeasureRequest::new(kind, gamma, x, y)
        .with_integration(IntegrationConfig::tensor(48).with_refinements(1));
    if let Some(d) = dist {
        req = req.with_distortion(d);
    }
    evaluate(&req).unwrap().value
}

fn property_suites() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();

    let mut worst = 0.0f64;
    for m in bivariate_zoo() {
        for p in grid_101() {
            let v = m.cdf(&p).unwrap();
            let w = (p[0] + p[1] - 1.0).max(0.0);
            let mm = p[0].min(p[1]);
            worst = worst.max(w - v).max(v - mm);
        }
    }
    c.check(
        worst <= RELATION_TOL,
        format!("Fréchet-Hoeffding sandwich on 101² grids, all families: worst excess {worst:.2e}"),
    );

    let mut worst = 0.0f64;
    for m in bivariate_zoo() {
        for p in grid_101() {
            let (u, v) = (p[0], p[1]);
            let cu = m.cdf(&p).unwrap();
            let s = m.survival(&p).unwrap();
            worst = worst
                .max((s - (u + v - 1.0 + m.cdf(&[1.0 - u, 1.0 - v]).unwrap())).abs())
                .max((m.co_copula(&p).unwrap() - (u + v - s)).abs())
                .max((m.dual(&p).unwrap() - (u + v - cu)).abs());
        }
    }
    c.check(
        worst <= RELATION_TOL,
        format!("survival/co-copula/dual relations at n=2: worst residual {worst:.2e}"),
    );

    let params: [(Family, [f64; 5]); 6] = [
        (Family::Fgm, [-1.0, -0.5, 0.2, 0.6, 1.0]),
        (Family::Amh, [-1.0, -0.4, 0.3, 0.7, 0.95]),
        (Family::Joe, [1.2, 1.5, 2.0, 3.0, 5.0]),
        (Family::Gumbel, [1.2, 1.5, 2.0, 3.0, 5.0]),
        (Family::Frank, [-6.0, -2.0, 1.0, 4.0, 9.0]),
        (Family::Clayton, [0.3, 0.8, 1.5, 3.0, 6.0]),
    ];
    let mut sign_ok = true;
    for (f, ts) in params {
        for t in ts {
            for gamma in [0.5, 3.0] {
                for kind in [MeasureKind::Mccre, MeasureKind::Mscre] {
                    let v = measure(kind, Some(gamma), model(f, 2, t), None, None);
                    sign_ok &= if gamma > 1.0 { v >= 0.0 } else { v <= 0.0 };
                }
            }
        }
    }
    c.check(
        sign_ok,
        "MCCRE/MSCRE ≥ 0 for γ > 1 and ≤ 0 for γ < 1, six families × five parameters",
    );

    // power-distorted reference: α < β gives mccri(α) ≤ mccri(β) for γ > 1 and ≥ for γ < 1
    let grid = [0.5, 0.8, 1.5, 2.5];
    let truth = model(Family::Gumbel, 2, 2.0);
    let reference = model(Family::Clayton, 2, 1.0);
    for gamma in [3.0, 0.5] {
        let mut holds = 0;
        let mut total = 0;
        for &a in &grid {
            for &b in grid.iter().filter(|&&b| b > a) {
                let va = measure(
                    MeasureKind::Mccri,
                    Some(gamma),
                    truth,
                    Some(reference),
                    Some(DistortionProfile::powers(Scale::Cdf, &[a, a]).unwrap()),
                );
                let vb = measure(
                    MeasureKind::Mccri,
                    Some(gamma),
                    truth,
                    Some(reference),
                    Some(DistortionProfile::powers(Scale::Cdf, &[b, b]).unwrap()),
                );
                total += 1;
                if (gamma > 1.0 && va <= vb) || (gamma < 1.0 && va >= vb) {
                    holds += 1;
                }
            }
        }
        let dir = if gamma > 1.0 { "≤" } else { "≥" };
        c.check(holds == total, format!("PRHR monotonicity, γ={gamma}: mccri(α) {dir} mccri(β) for α<β in {holds}/{total} pairs"));
    }

    // lower orthant order: C_X ≥ C_Y gives mccri(Z,X) ≤ mccri(Z,Y) for γ > 1 and ≥ for γ < 1
    let (x, y) = (
        model(Family::Clayton, 2, 3.0),
        model(Family::Clayton, 2, 1.0),
    );
    let dom = check_pointwise_dominance(&x, &y, 41, DominanceMode::Cdf).unwrap();
    c.check(
        dom.verdict == Verdict::ADominates,
        format!("dominance check confirms C_X ≥ C_Y: {:?}", dom.verdict),
    );
    for gamma in [3.0, 0.5] {
        let mut holds = 0;
        for z in [CopulaModel::product(2), model(Family::Fgm, 2, 0.5)] {
            let vx = measure(MeasureKind::Mccri, Some(gamma), z, Some(x), None);
            let vy = measure(MeasureKind::Mccri, Some(gamma), z, Some(y), None);
            if (gamma > 1.0 && vx <= vy) || (gamma < 1.0 && vx >= vy) {
                holds += 1;
            }
        }
        let dir = if gamma > 1.0 { "≤" } else { "≥" };
        c.check(holds == 2, format!("lower orthant order, γ={gamma}: mccri(Z,X) {dir} mccri(Z,Y) for {holds}/2 choices of Z"));
    }

    // upper orthant order: Ĉ_X ≤ Ĉ_Y gives mscri(Z,X) ≥ mscri(Z,Y) in both regimes
    let (x, y) = (model(Family::Joe, 2, 1.2), model(Family::Joe, 2, 3.0));
    let dom = check_pointwise_dominance(&x, &y, 41, DominanceMode::Survival).unwrap();
    let mut holds = dom.verdict == Verdict::BDominates;
    for gamma in [3.0, 0.5] {
        for z in [CopulaModel::product(2), model(Family::Fgm, 2, 0.5)] {
            holds &= measure(MeasureKind::Mscri, Some(gamma), z, Some(x), None)
                >= measure(MeasureKind::Mscri, Some(gamma), z, Some(y), None);
        }
    }
    c.check(
        holds,
        "upper orthant order: mscri(Z,X) ≥ mscri(Z,Y) for γ ∈ {0.5, 3}",
    );

    let mut worst = 0.0f64;
    for (tx, ty) in [(0.5, -0.3), (1.0, 1.0), (-0.8, 0.6)] {
        for gamma in [0.5, 3.0] {
            for p in [[1.0, 1.0], [2.0, 0.5]] {
                let (x, y) = (model(Family::Fgm, 2, tx), model(Family::Fgm, 2, ty));
                let cc = measure(
                    MeasureKind::Mccri,
                    Some(gamma),
                    x,
                    Some(y),
                    Some(DistortionProfile::powers(Scale::Cdf, &p).unwrap()),
                );
                let sc = measure(
                    MeasureKind::Mscri,
                    Some(gamma),
                    x,
                    Some(y),
                    Some(DistortionProfile::powers(Scale::Survival, &p).unwrap()),
                );
                worst = worst.max((cc - sc).abs());
            }
        }
    }
    c.check(
        worst <= 1e-9,
        format!("FGM radial symmetry: |mscri - mccri| ≤ {worst:.2e}"),
    );

    let configs = [
        (
            MeasureKind::Mccri,
            MeasureKind::Cci,
            model(Family::Gumbel, 2, 2.0),
            model(Family::Clayton, 2, 1.0),
        ),
        (
            MeasureKind::Mscri,
            MeasureKind::Sci,
            model(Family::Fgm, 2, 0.5),
            CopulaModel::product(2),
        ),
        (
            MeasureKind::Mccri,
            MeasureKind::Cci,
            model(Family::Frank, 2, 3.0),
            model(Family::Joe, 2, 2.0),
        ),
    ];
    for (kind, limit, x, y) in configs {
        let base = measure(limit, None, x, Some(y), None);
        for gamma in [0.99, 1.01] {
            let v = measure(kind, Some(gamma), x, Some(y), None);
            c.check(
                (v - base).abs() <= CONTINUITY_TOL,
                format!(
                    "γ→1 continuity {kind}({x}, {y}) at γ={gamma}: {v:.6} vs {limit} {base:.6}"
                ),
            );
        }
    }

    let elapsed = start.elapsed();
    c.check(
        elapsed < PROPERTY_TIME_LIMIT,
        format!("property suites ran in {elapsed:.2?} (< 5 min)"),
    );
    c
}

fn bounds_sandwich() -> Criterion {
    let mut c = Criterion::default();
    let truths = [
        model(Family::Fgm, 2, 0.5),
        model(Family::Fgm, 2, -0.5),
        model(Family::Gumbel, 2, 2.0),
        model(Family::Frank, 2, -3.0),
        model(Family::Clayton, 2, 1.0),
    ];
    let mut combos = 0;
    for gamma in [0.5, 2.0, 3.0] {
        for (alpha, beta) in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.5), (1.5, 1.5)] {
            combos += 1;
            let mut ok = true;
            let mut detail = String::new();
            for (target, kind, scale) in [
                (BoundTarget::Mccri, MeasureKind::Mccri, Scale::Cdf),
                (BoundTarget::Mscri, MeasureKind::Mscri, Scale::Survival),
            ] {
                let req = BoundRequest::new(gamma, alpha, beta, target).unwrap();
                let b = match target {
                    BoundTarget::Mccri => ccri_bound_integrals(&req).unwrap(),
                    BoundTarget::Mscri => scri_bound_integrals(&req).unwrap(),
                };
                for truth in truths {
                    let v = measure(
                        kind,
                        Some(gamma),
                        truth,
                        Some(CopulaModel::product(2)),
                        Some(DistortionProfile::powers(scale, &[alpha, beta]).unwrap()),
                    );
                    if !(b.lower <= v + 1e-9 && v <= b.upper + 1e-9) {
                        ok = false;
                        detail = format!(
                            "{kind} {truth}: {v:.9} outside [{:.9}, {:.9}]",
                            b.lower, b.upper
                        );
                    }
                }
            }
            c.check(ok, format!("γ={gamma}, α={alpha}, β={beta}: five truths within the oriented bounds {detail}"));
        }
    }
    c.check(combos == 12, format!("{combos} (γ, α, β) combinations"));
    let report =
        bound_report(&BoundRequest::new(3.0, 1.0, 1.0, BoundTarget::Mccri).unwrap()).unwrap();
    c.check(
        !report.w_kernel_agrees && !report.m_kernel_agrees && !report.errata.is_empty(),
        format!("errata at γ=3, α=β=1: {}", report.errata.join("; ")),
    );
    c
}

fn estimation() -> Criterion {
    let mut c = Criterion::default();
    let data = DataMatrix::new(model(Family::Gumbel, 2, 2.0).sample(5000, 2024).unwrap()).unwrap();
    let fit = fit_mpl(Family::Gumbel, &pseudo_observations(&data).unwrap(), None).unwrap();
    c.check(
        rel(fit.theta_hat, 2.0) <= 0.05,
        format!("gumbel φ=2, n=5000: φ̂ = {:.4}", fit.theta_hat),
    );

    let data = DataMatrix::new(
        model(Family::Frank, 3, PIMA_FRANK)
            .sample(724, 724)
            .unwrap(),
    )
    .unwrap();
    let fit = fit_mpl(Family::Frank, &pseudo_observations(&data).unwrap(), None).unwrap();
    c.check(
        rel(fit.theta_hat, PIMA_FRANK) <= 0.15,
        format!("frank θ=1.3776, n=724, d=3: θ̂ = {:.4}", fit.theta_hat),
    );

    let mapped = DataMatrix::new(
        data.rows()
            .iter()
            .map(|r| vec![r[0].ln(), r[1].powi(3) * 1000.0, r[2].exp()])
            .collect(),
    )
    .unwrap();
    let (pa, pb) = (
        pseudo_observations(&data).unwrap(),
        pseudo_observations(&mapped).unwrap(),
    );
    let fa = fit_mpl(Family::Frank, &pa, None).unwrap();
    let fb = fit_mpl(Family::Frank, &pb, None).unwrap();
    let cfg = IntegrationConfig::tensor(24).with_refinements(0);
    let ea = estimate_mccri(Family::Gumbel, Family::Frank, &data, 3.0, &cfg).unwrap();
    let eb = estimate_mccri(Family::Gumbel, Family::Frank, &mapped, 3.0, &cfg).unwrap();
    c.check(
        pa == pb && fa == fb && ea == eb,
        "rank invariance: pseudo-observations, MPL fit and MCCRI estimate bit-identical under monotone column maps",
    );
    c
}

fn simulation() -> Criterion {
    let mut c = Criterion::default();
    let mut cfg = SimulationConfig::new(
        model(Family::Joe, 3, 1.5),
        model(Family::Gumbel, 3, 2.0),
        3.0,
    );
    cfg.replications = 100;
    cfg.master_seed = 2024;
    let start = Instant::now();
    let report = run_study(&cfg).unwrap();
    let elapsed = start.elapsed();
    let cells = &report.cells;
    for cell in cells {
        println!(
            "    n={:<4} reference {:.6} mean {:.6} SD {:.6} AB {:.6} MSE {:.7} excluded {}",
            cell.sample_size,
            cell.reference_value,
            cell.mean_estimate,
            cell.sd,
            cell.ab,
            cell.mse,
            cell.excluded
        );
    }
    let (first, last) = (&cells[0], &cells[cells.len() - 1]);
    c.check(
        last.sd < first.sd,
        format!("SD decreases n=100→500: {:.6} → {:.6}", first.sd, last.sd),
    );
    c.check(
        last.ab < first.ab,
        format!("AB decreases n=100→500: {:.6} → {:.6}", first.ab, last.ab),
    );
    c.check(
        last.mse < first.mse,
        format!(
            "MSE decreases n=100→500: {:.7} → {:.7}",
            first.mse, last.mse
        ),
    );
    for (cell, published) in cells.iter().zip(PUBLISHED_MSE) {
        let ratio = cell.mse / published;
        c.check(
            (0.1..=10.0).contains(&ratio),
            format!(
                "n={}: MSE {:.7} vs published {published} (ratio {ratio:.2})",
                cell.sample_size, cell.mse
            ),
        );
    }
    c.check(
        elapsed < SIMULATION_TIME_LIMIT,
        format!("100-replication study ran in {elapsed:.2?} (< 30 min)"),
    );
    c
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_coprenyi"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism() -> Criterion {
    let mut c = Criterion::default();
    let dir = tempfile::tempdir().unwrap();
    let fixture: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "tests",
        "fixtures",
        "pima_like_synthetic.csv",
    ]
    .iter()
    .collect();
    let fixture = fixture.to_str().unwrap().to_string();
    let sim = dir.path().join("sim.toml");
    std::fs::write(
        &sim,
        "truth_x = \"joe:1.5:2\"\ntruth_y = \"gumbel:2:2\"\ngamma = 3.0\nsample_sizes = [40, 80]\nreplications = 4\nmaster_seed = 11\n",
    )
    .unwrap();
    let sim = sim.to_str().unwrap().to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "measure",
            "--kind",
            "mccri",
            "--gamma",
            "3",
            "--copula-x",
            "gumbel:1.1542:3",
            "--copula-y",
            "frank:1.3776:3",
            "--nodes",
            "32",
            "--refinements",
            "0",
        ],
        vec![
            "measure",
            "--kind",
            "mccri",
            "--gamma",
            "2",
            "--copula-x",
            "clayton:1:2",
            "--copula-y",
            "gumbel:2:2",
            "--method",
            "monte-carlo",
            "--mc-samples",
            "20000",
            "--seed",
            "5",
        ],
        vec![
            "bounds", "--gamma", "3", "--alpha", "1", "--beta", "1", "--target", "mscri",
        ],
        vec!["sample", "joe", "2", "3", "50", "42"],
        vec!["fit", "--data", &fixture, "--family", "gumbel"],
        vec![
            "select",
            "--data",
            &fixture,
            "--families",
            "frank,gumbel,product",
            "--nodes",
            "24",
            "--refinements",
            "0",
        ],
        vec!["simulate", &sim],
    ];
    for args in &commands {
        let (code_a, out_a) = cli(args);
        let (code_b, out_b) = cli(args);
        c.check(
            code_a == 0 && code_b == 0 && !out_a.is_empty() && out_a == out_b,
            format!(
                "`coprenyi {}` exit {code_a}/{code_b}, {} bytes, identical: {}",
                args.join(" "),
                out_a.len(),
                out_a == out_b
            ),
        );
    }
    c
}

type Check = fn() -> Criterion;

fn main() {
    let criteria: [(&str, Check); 7] = [
        (
            "trivariate MCCRI model-selection values against the Frank baseline",
            pima_selection,
        ),
        ("closed-form MCCRE and bound-integral checks", closed_forms),
        ("property suites", property_suites),
        (
            "bound integrals sandwich the measure; errata flagged",
            bounds_sandwich,
        ),
        (
            "maximum pseudo-likelihood recovery and rank invariance",
            estimation,
        ),
        ("simulation error trend and magnitude", simulation),
        ("CLI determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !run().report(i + 1, name) {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: criteria {failed:?} failed");
        std::process::exit(1);
    }
}
