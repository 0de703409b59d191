//! Batched verification suites: classical convolution identities, norm
//! axioms on random finitely supported functions, operator-norm probes and
//! the Dirichlet product identity. Shared by the CLI `verify` subcommand
//! and the integration tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::functions::{build_classical, Kind};
use crate::norms::{u_norm_hybrid, u_norm_log};
use crate::operators::{default_battery, operator_norm_estimate, Operator};
use crate::series::{dirichlet_partial, verify_product};
use crate::table::FunctionTable;

/// Named tolerances used by the suites. Defaults are the pinned contract
/// values; the CLI can override them by name for exploratory runs.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    pub triangle_slack: f64,
    pub homogeneity_rel: f64,
    pub product_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            triangle_slack: 1e-9,
            homogeneity_rel: 1e-12,
            product_rel: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        match name {
            "triangle-slack" => self.triangle_slack = value,
            "homogeneity-rel" => self.homogeneity_rel = value,
            "product-rel" => self.product_rel = value,
            _ => return false,
        }
        true
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub ok: bool,
    pub info: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: u64,
    pub failed: u64,
    /// Empirical violations of a claimed bound: findings, not failures.
    pub falsified: u64,
    pub details: Vec<CheckResult>,
}

impl SuiteReport {
    fn new(suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            passed: 0,
            failed: 0,
            falsified: 0,
            details: Vec::new(),
        }
    }

    fn record(&mut self, name: impl Into<String>, ok: bool, info: impl Into<String>) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.details.push(CheckResult {
            name: name.into(),
            ok,
            info: info.into(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// mu*1 = eps, 1*1 = tau, mu*Id = phi exactly at length `n`;
/// Lambda = mu*log within 1e-9 at length min(n, 10^5).
pub fn identities(n: usize) -> Result<SuiteReport> {
    use crate::operators::convolve;
    let mut rep = SuiteReport::new("identities");

    let mu = build_classical(Kind::Mobius, n)?;
    let one = build_classical(Kind::One, n)?;
    let eps = build_classical(Kind::Epsilon, n)?;
    let conv = convolve(&mu, &one)?;
    rep.record(
        "mu*1 = eps",
        conv.as_int() == eps.as_int(),
        format!("exact over n <= {n}"),
    );

    let tau = build_classical(Kind::DivisorTau, n)?;
    let conv = convolve(&one, &one)?;
    rep.record(
        "1*1 = tau",
        conv.as_int() == tau.as_int(),
        format!("exact over n <= {n}"),
    );

    let id = build_classical(Kind::IdPow(1), n)?;
    let phi = build_classical(Kind::EulerPhi, n)?;
    let conv = convolve(&mu, &id)?;
    rep.record(
        "mu*Id = phi",
        conv.as_int() == phi.as_int(),
        format!("exact over n <= {n}"),
    );

    let nl = n.min(100_000);
    let mu_s = build_classical(Kind::Mobius, nl)?;
    let log = build_classical(Kind::LogPow(1), nl)?;
    let vm = build_classical(Kind::VonMangoldt, nl)?;
    let conv = convolve(&mu_s, &log)?;
    let max_err = conv
        .as_real()
        .unwrap()
        .iter()
        .zip(vm.as_real().unwrap())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    rep.record(
        "Lambda = mu*log",
        max_err <= 1e-9,
        format!("max elementwise error {max_err:.3e} over n <= {nl}"),
    );
    Ok(rep)
}

fn scale_table(f: &FunctionTable, a: f64) -> FunctionTable {
    let vals: Vec<f64> = (1..=f.len()).map(|m| a * f.get(m).re).collect();
    FunctionTable::from_real("scaled", vals).expect("finite scaling")
}

fn add_tables(f: &FunctionTable, g: &FunctionTable) -> FunctionTable {
    let vals: Vec<f64> = (1..=f.len()).map(|m| f.get(m).re + g.get(m).re).collect();
    FunctionTable::from_real("sum", vals).expect("finite sum")
}

/// Triangle inequality (slack 1e-9), absolute homogeneity (1e-12
/// relative) and positivity, for both norms, on `cases` seeded random
/// finitely supported pairs.
pub fn norm_axioms(seed: u64, cases: usize, tol: &Tolerances) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("norm-axioms");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tri_fail = 0usize;
    let mut hom_fail = 0usize;
    for _ in 0..cases {
        let support = rng.gen_range(1..=1000usize);
        let len = 1000usize;
        let mk = |rng: &mut ChaCha8Rng| {
            let mut v = vec![0.0f64; len];
            for slot in v.iter_mut().take(support) {
                *slot = rng.gen_range(-10.0..=10.0);
            }
            FunctionTable::from_real("rand", v).unwrap()
        };
        let f = mk(&mut rng);
        let g = mk(&mut rng);
        let alpha: f64 = rng.gen_range(-4.0..=4.0);
        let sum = add_tables(&f, &g);
        let af = scale_table(&f, alpha);

        // LogSup
        let nf = u_norm_log(&f, None)?.value;
        let ng = u_norm_log(&g, None)?.value;
        let nsum = u_norm_log(&sum, None)?.value;
        let naf = u_norm_log(&af, None)?.value;
        if nsum > nf + ng + tol.triangle_slack {
            tri_fail += 1;
        }
        if (naf - alpha.abs() * nf).abs() > tol.homogeneity_rel * (1.0 + naf.abs()) {
            hom_fail += 1;
        }

        // HybridU
        let nf = u_norm_hybrid(&f, None, len, None)?.value;
        let ng = u_norm_hybrid(&g, None, len, None)?.value;
        let nsum = u_norm_hybrid(&sum, None, len, None)?.value;
        let naf = u_norm_hybrid(&af, None, len, None)?.value;
        if nsum > nf + ng + tol.triangle_slack {
            tri_fail += 1;
        }
        if (naf - alpha.abs() * nf).abs() > tol.homogeneity_rel * (1.0 + naf.abs()) {
            hom_fail += 1;
        }
    }
    rep.record(
        "triangle inequality",
        tri_fail == 0,
        format!("{tri_fail} violations in {cases} cases x 2 norms"),
    );
    rep.record(
        "absolute homogeneity",
        hom_fail == 0,
        format!("{hom_fail} violations in {cases} cases x 2 norms"),
    );

    // positivity: exact for integer inputs
    let zero = FunctionTable::from_int("zero", vec![0; 100]);
    let z1 = u_norm_log(&zero, None)?.value;
    let z2 = u_norm_hybrid(&zero, None, 100, None)?.value;
    let mut spike = vec![0i64; 100];
    spike[41] = 1;
    let e = FunctionTable::from_int("spike", spike);
    let p1 = u_norm_log(&e, None)?.value;
    let p2 = u_norm_hybrid(&e, None, 100, None)?.value;
    rep.record(
        "positivity",
        z1 == 0.0 && z2 == 0.0 && p1 > 0.0 && p2 > 0.0,
        format!("zero -> ({z1}, {z2}), spike -> ({p1}, {p2})"),
    );
    Ok(rep)
}

/// Probe the claimed operator-norm bounds with the default battery.
/// A lower bound exceeding a claimed bound is recorded as a falsification
/// finding, not a failure.
pub fn operator_bounds(seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("operator-bounds");
    let n = 10_000;
    let battery = default_battery(n, seed, 100)?;
    let mu = build_classical(Kind::Mobius, n)?;
    let ops = [
        Operator::MulBy(&mu),
        Operator::Shift(1),
        Operator::Shift(2),
        Operator::Shift(10),
        Operator::Cesaro(5),
        Operator::ConvolveBy(&mu),
    ];
    for op in &ops {
        let est = operator_norm_estimate(op, crate::norms::NormKind::LogSup, &battery)?;
        if est.falsified {
            rep.falsified += 1;
        }
        let info = match est.claimed_bound {
            Some(c) => format!(
                "lower {:.6} vs claimed {:.6} (witness {})",
                est.lower_bound, c, est.witness_function
            ),
            None => format!(
                "lower {:.6}, no claimed bound (witness {})",
                est.lower_bound, est.witness_function
            ),
        };
        rep.record(est.operator_label.clone(), true, info);
    }
    Ok(rep)
}

/// Dirichlet product identity on seeded finite-support pairs at s = 2+3i.
pub fn product(seed: u64, cases: usize, tol: &Tolerances) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("product");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = Complex64::new(2.0, 3.0);
    let mut worst = 0.0f64;
    let mut fails = 0usize;
    for _ in 0..cases {
        let sf = rng.gen_range(1..=200usize);
        let sg = rng.gen_range(1..=200usize);
        let f = FunctionTable::from_int(
            "f",
            (0..sf).map(|_| rng.gen_range(-9i64..=9)).collect::<Vec<_>>(),
        );
        let g = FunctionTable::from_int(
            "g",
            (0..sg).map(|_| rng.gen_range(-9i64..=9)).collect::<Vec<_>>(),
        );
        let r = verify_product(&f, &g, s)?;
        let scale = 1.0 + (dirichlet_partial(&f, s) * dirichlet_partial(&g, s)).norm();
        let rel = r / scale;
        worst = worst.max(rel);
        if rel > tol.product_rel {
            fails += 1;
        }
    }
    rep.record(
        "D(f*g;s) = D(f;s)D(g;s)",
        fails == 0,
        format!("{cases} pairs, worst relative residual {worst:.3e}"),
    );
    Ok(rep)
}
