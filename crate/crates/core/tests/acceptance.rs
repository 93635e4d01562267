//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{binary_entropy, random_model};
use hqmm_core::catalog;
use hqmm_core::classify::{analyze, assert_impossible_cases, AnalyzeOptions, CaseLabel, GramClass, Metrics};
use hqmm_core::hmm::{sample, stationary_distribution, word_distribution, WordDistribution};
use hqmm_core::info::{channel_mutual_information, excess_curve, excess_entropy_epsilon_machine, shannon_entropy};
use hqmm_core::quantum::{density_spectrum, holevo_report, induce_quantum_model, simulate_hqmm};
use hqmm_core::{build_diagonal_construction, Hmm64, LogBase};
use nalgebra::DMatrix;

const B: LogBase = LogBase::Two;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn unit_grid(steps: usize) -> Vec<f64> {
    (0..=steps).map(|k| k as f64 / steps as f64).collect()
}

fn rnc_excess(p: f64, q: f64) -> f64 {
    let d = p + q * (1.0 - p);
    let tail = if d > 0.0 { d / 2.0 * binary_entropy(p / d) } else { 0.0 };
    1.0 + binary_entropy(p) / 2.0 - tail
}

fn ac1() -> Outcome {
    let (mut dh, mut de, mut ds) = (0.0f64, 0.0f64, 0.0f64);
    for &p in &unit_grid(20) {
        for &q in &unit_grid(20) {
            let m = catalog::rnc::<f64>(p, q).unwrap();
            let mu = stationary_distribution(&m).unwrap();
            let h = shannon_entropy(&mu, B).unwrap();
            dh = dh.max((h - (1.0 + binary_entropy(p) / 2.0)).abs());

            let e = excess_entropy_epsilon_machine(&m, B).unwrap();
            de = de.max((e - rnc_excess(p, q)).abs());

            let root = (1.0 - 4.0 * p + 4.0 * p * p + 4.0 * p * q - 4.0 * p * p * q).max(0.0).sqrt();
            let mut want = [0.5, 0.25 * (1.0 + root), 0.25 * (1.0 - root)];
            want.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let got = density_spectrum(&induce_quantum_model(&m, B).unwrap()).unwrap();
            for (g, w) in got.iter().zip(want) {
                ds = ds.max((g - w).abs());
            }
        }
    }
    let tol = 1e-9;
    outcome(
        dh <= tol && de <= tol && ds <= tol,
        format!("441 (p, q) points: max |dH| {dh:.2e}, |dE| {de:.2e}, |d spectrum| {ds:.2e} (tol {tol:.0e})"),
    )
}

fn ac2() -> Outcome {
    let opts = AnalyzeOptions {
        assertions: hqmm_core::Assertions {
            epsilon_machine: true,
            minimal: false,
        },
        ..AnalyzeOptions::default()
    };
    let mut problems = Vec::new();
    let mut max_dev_q0 = 0.0f64;
    let (mut min_gap_q1, mut min_gap_i, mut min_gap_h) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for &p in &unit_grid(100) {
        let interior = p > 0.0 && p < 1.0;
        let strict = (0.1 - 1e-12..=0.9 + 1e-12).contains(&p);

        let r = analyze(&catalog::rnc::<f64>(p, 0.0).unwrap(), &opts).unwrap();
        max_dev_q0 = max_dev_q0.max((r.c_q - r.h_mu).abs());
        if r.case_label != CaseLabel::I {
            problems.push(format!("q=0 p={p}: case {}", r.case_label));
        }

        let r = analyze(&catalog::rnc::<f64>(p, 1.0).unwrap(), &opts).unwrap();
        if interior && r.case_label != CaseLabel::III {
            problems.push(format!("q=1 p={p}: case {}", r.case_label));
        }
        if (r.i_xy - r.c_q).abs() > 1e-9 {
            problems.push(format!("q=1 p={p}: I != C_q"));
        }
        if strict {
            min_gap_q1 = min_gap_q1.min(r.h_mu - r.c_q);
        }

        let r = analyze(&catalog::rnc::<f64>(p, 0.7).unwrap(), &opts).unwrap();
        if interior && r.case_label != CaseLabel::V {
            problems.push(format!("q=0.7 p={p}: case {}", r.case_label));
        }
        if strict {
            min_gap_i = min_gap_i.min(r.c_q - r.i_xy);
            min_gap_h = min_gap_h.min(r.h_mu - r.c_q);
        }
    }
    let passed = problems.is_empty() && max_dev_q0 <= 1e-9 && min_gap_q1 >= 1e-6 && min_gap_i >= 1e-6 && min_gap_h >= 1e-6;
    let mut detail = format!(
        "q=0 max |C_q - H| {max_dev_q0:.2e}; q=1 min H - C_q {min_gap_q1:.3e}; q=0.7 min gaps {min_gap_i:.3e}, {min_gap_h:.3e}"
    );
    if !problems.is_empty() {
        detail.push_str(&format!("; {}", problems.join("; ")));
    }
    outcome(passed, detail)
}

fn ac3() -> Outcome {
    let (mut d_markov, mut d_3state, mut d_h) = (0.0f64, 0.0f64, 0.0f64);
    for k in 1..=19 {
        let eps = k as f64 * 0.05;
        let markov = catalog::perturbed_coin_em::<f64>(eps).unwrap();
        let three = catalog::perturbed_coin_3state::<f64>(eps).unwrap();
        let want = 0.5 * ((1.0 + eps) * (1.0 + eps).log2() + (1.0 - eps) * (1.0 - eps).log2());
        d_markov = d_markov.max((channel_mutual_information(&markov, B).unwrap() - want).abs());
        d_3state = d_3state.max((channel_mutual_information(&three, B).unwrap() - eps).abs());
        let h_closed = -(1.0 - eps) * (1.0 - eps).log2() - eps * (eps / 2.0).log2();
        d_h = d_h.max((shannon_entropy(three.initial(), B).unwrap() - h_closed).abs());
    }
    let crossing = [0.05, 0.1, 0.15, 0.2].iter().all(|&eps| {
        let three = catalog::perturbed_coin_3state::<f64>(eps).unwrap();
        shannon_entropy(three.initial(), B).unwrap() < 1.0
    });
    let tol = 1e-9;
    outcome(
        d_markov <= tol && d_3state <= tol && d_h <= tol && crossing,
        format!(
            "max |dI_Markov| {d_markov:.2e}, |dI_3state| {d_3state:.2e}, |dH(p)| {d_h:.2e}; H(p) < 1 for eps <= 0.2: {crossing}"
        ),
    )
}

fn ac4() -> Outcome {
    let four = catalog::four_symbol::<f64>();
    let h = shannon_entropy(four.initial(), B).unwrap();
    let i = channel_mutual_information(&four, B).unwrap();
    let diag = build_diagonal_construction(&four, B).unwrap().c_q_tilde;
    let cq = induce_quantum_model(&four, B).unwrap().c_q;
    let two_level = catalog::monras_2level::<f64>();
    let s = two_level.entropy(B).unwrap();
    let mut words = 0.0f64;
    for l in 1..=4 {
        let a = word_distribution(&four, l).unwrap();
        let b = two_level.word_distribution(l).unwrap();
        words = words.max(a.max_abs_diff(&b));
    }
    let passed = (h - 2.0).abs() <= 1e-9
        && (i - 0.5).abs() <= 1e-9
        && (diag - 2.0).abs() <= 1e-9
        && (cq - 1.2018).abs() <= 5e-4
        && (s - 1.0).abs() <= 1e-9
        && words <= 1e-9;
    outcome(
        passed,
        format!("H {h:.12}, I {i:.12}, diagonal {diag:.12}, C_q {cq:.6}, two-level S {s:.12}, word diff (L <= 4) {words:.2e}"),
    )
}

fn ac5() -> Outcome {
    let start = Instant::now();
    let tol = 1e-8;
    let slack = 1e-8;
    let mut failures = Vec::new();
    let mut cases = [0usize; 3];
    for seed in 0..500u64 {
        let m = random_model(seed, 6, 3);
        let qm = induce_quantum_model(&m, B).unwrap();
        let metrics = Metrics::compute(&m, &qm, B).unwrap();
        let curve = excess_curve(&m, 6, B).unwrap();
        if let Some(&(l, e)) = curve.points.iter().find(|p| p.1 > metrics.i_xy + tol) {
            failures.push(format!("seed {seed}: E_{l} {e} > I {}", metrics.i_xy));
        }
        if metrics.i_xy > metrics.c_q + tol || metrics.c_q > metrics.h_mu + tol {
            failures.push(format!("seed {seed}: chain broken"));
        }
        let equality = (metrics.c_q - metrics.h_mu).abs() <= slack && (metrics.i_xy - metrics.c_q).abs() <= slack;
        if equality != qm.is_orthogonal() {
            failures.push(format!("seed {seed}: equality {equality} vs orthogonal {}", qm.is_orthogonal()));
        }
        let holevo = holevo_report(&qm).unwrap();
        if holevo.gap < -tol || (holevo.gap.abs() <= slack) != qm.is_zero_one() {
            failures.push(format!("seed {seed}: holevo gap {:.3e}, zero-one {}", holevo.gap, qm.is_zero_one()));
        }
        if !assert_impossible_cases(&metrics) {
            failures.push(format!("seed {seed}: excluded case realized"));
        }
        cases[match GramClass::of(&qm) {
            GramClass::Orthogonal => 0,
            GramClass::ZeroOneWithDuplicates => 1,
            GramClass::General => 2,
        }] += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    let mut detail = format!(
        "500 models (cases i/iii/v: {}/{}/{}), {} failures, {secs:.1}s",
        cases[0],
        cases[1],
        cases[2],
        failures.len()
    );
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    outcome(failures.is_empty() && secs < 60.0, detail)
}

fn ac6() -> Outcome {
    let mut machines: Vec<Hmm64> = Vec::new();
    let params: Vec<f64> = (2..=8).map(|k| k as f64 / 10.0).collect();
    for &x in &params {
        machines.push(catalog::perturbed_coin_em(x).unwrap());
        for &q in &params {
            machines.push(catalog::rnc(x, q).unwrap());
        }
    }
    let mut worst = (0.0f64, String::new());
    let mut failing = 0;
    let mut check = |m: &Hmm64| {
        let e10 = excess_curve(m, 10, B).unwrap().last();
        let i = channel_mutual_information(m, B).unwrap();
        let dev = (e10 - i).abs();
        if dev > 0.01 {
            failing += 1;
        }
        if dev > worst.0 {
            worst = (dev, m.name().to_string());
        }
    };
    for m in &machines {
        check(m);
    }
    let redundant: Vec<Hmm64> = params.iter().map(|&p| catalog::rnc(p, 1.0).unwrap()).collect();
    for m in &redundant {
        check(m);
    }
    let total = machines.len() + redundant.len();
    outcome(
        failing == 0,
        format!(
            "{failing}/{total} models with |E_10 - I| > 0.01; worst {:.4} at {}",
            worst.0, worst.1
        ),
    )
}

fn ac7() -> Outcome {
    let start = Instant::now();
    let m = catalog::rnc::<f64>(0.5, 0.7).unwrap();
    let exact = word_distribution(&m, 3).unwrap();
    let n = 1_000_000;
    let classical = sample(&m, n, 2024).unwrap().symbols;
    let qm = induce_quantum_model(&m, B).unwrap();
    let quantum = simulate_hqmm(&qm, n, 2025).unwrap();
    let tv_c = WordDistribution::<f64>::empirical(&classical, 3, B).total_variation(&exact);
    let tv_q = WordDistribution::<f64>::empirical(&quantum, 3, B).total_variation(&exact);
    let secs = start.elapsed().as_secs_f64();
    outcome(
        tv_c <= 0.01 && tv_q <= 0.01 && secs < 60.0,
        format!("N = 10^6, L = 3: TV classical {tv_c:.5}, quantum {tv_q:.5}, {secs:.1}s"),
    )
}

fn ac8() -> Outcome {
    let mut models: Vec<Hmm64> = Vec::new();
    for &x in &unit_grid(10) {
        for &q in &unit_grid(10) {
            models.push(catalog::rnc(x, q).unwrap());
        }
        models.push(catalog::rnc_merged(x).unwrap());
        if x > 0.0 {
            models.push(catalog::perturbed_coin_em(x).unwrap());
            models.push(catalog::perturbed_coin_3state(x).unwrap());
        }
    }
    models.push(catalog::four_symbol());
    let mut worst = 0.0f64;
    let mut checked = 0;
    for m in models.iter().filter(|m| m.n_states() * m.n_symbols() <= 16) {
        let qm = induce_quantum_model(m, B).unwrap();
        let rho = qm.density_matrix();
        let d = rho.rows();
        let mut full: Vec<f64> = DMatrix::from_fn(d, d, |i, j| rho[(i, j)])
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        full.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let gram = density_spectrum(&qm).unwrap();
        for (k, f) in full.iter().enumerate() {
            let g = gram.get(k).copied().unwrap_or(0.0);
            worst = worst.max((f - g).abs());
        }
        checked += 1;
    }
    outcome(
        worst <= 1e-9,
        format!("{checked} catalog models: max eigenvalue difference {worst:.2e}"),
    )
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1", "noisy-copy closed forms", ac1),
        ("AC2", "noisy-copy sweeps by q", ac2),
        ("AC3", "perturbed coin", ac3),
        ("AC4", "four-symbol exhibit", ac4),
        ("AC5", "random-model inequality chain", ac5),
        ("AC6", "finite-L excess entropy convergence", ac6),
        ("AC7", "simulation equivalence", ac7),
        ("AC8", "spectrum oracle", ac8),
    ];
    let mut all = true;
    for (id, title, run) in criteria {
        let o = run();
        all &= o.passed;
        println!("[{}] {id} {title}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
