//! The operator algebra: Dirichlet convolution, Möbius inversion,
//! pointwise products, shifts, Cesàro averaging, and empirical probes of
//! the claimed operator-norm bounds.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, CHUNK};
use crate::functions::{build_classical, Kind};
use crate::norms::{u_norm_hybrid, u_norm_log, NormKind};
use crate::table::{FunctionTable, ValueKind, Values};

trait ConvScalar:
    Copy + Send + Sync + std::ops::AddAssign + std::ops::Mul<Output = Self>
{
    fn zero() -> Self;
}

impl ConvScalar for i64 {
    fn zero() -> Self {
        0
    }
}

impl ConvScalar for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl ConvScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
}

/// Multiples-loop convolution into disjoint output chunks. Within a chunk
/// the divisor loop runs in the same ascending order as the sequential
/// build, so the float accumulation order per output index is fixed.
fn convolve_kernel<T: ConvScalar>(f: &[T], g: &[T], out: &mut [T]) {
    exec::fill_chunks(out, CHUNK, |offset, chunk| {
        let hi = offset + chunk.len(); // output indices (offset, hi], 1-based
        for slot in chunk.iter_mut() {
            *slot = T::zero();
        }
        for d in 1..=hi {
            let mut j = offset / d + 1;
            let mut m = d * j;
            while m <= hi {
                chunk[m - 1 - offset] += f[d - 1] * g[j - 1];
                j += 1;
                m += d;
            }
        }
    });
}

/// Dirichlet convolution (f*g)(n) = sum_{d|n} f(d) g(n/d), O(N log N).
/// Exact when both inputs are integer tables.
pub fn convolve(f: &FunctionTable, g: &FunctionTable) -> Result<FunctionTable> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    let n = f.len();
    let kind = f.kind().join(g.kind());
    let label = format!("{}*{}", f.label(), g.label());
    match kind {
        ValueKind::ExactInt => {
            let (a, b) = (f.as_int().unwrap(), g.as_int().unwrap());
            let mut out = vec![0i64; n];
            convolve_kernel(a, b, &mut out);
            Ok(FunctionTable::from_int(label, out))
        }
        ValueKind::Real => {
            let fp = f.promote(ValueKind::Real);
            let gp = g.promote(ValueKind::Real);
            let mut out = vec![0f64; n];
            convolve_kernel(fp.as_real().unwrap(), gp.as_real().unwrap(), &mut out);
            FunctionTable::from_real(label, out)
        }
        ValueKind::Complex => {
            let fp = f.promote(ValueKind::Complex);
            let gp = g.promote(ValueKind::Complex);
            let mut out = vec![Complex64::new(0.0, 0.0); n];
            convolve_kernel(fp.as_complex().unwrap(), gp.as_complex().unwrap(), &mut out);
            FunctionTable::from_complex(label, out)
        }
    }
}

/// Convolve with the Möbius table of the same length; inverts g = f * 1.
pub fn mobius_invert(g: &FunctionTable) -> Result<FunctionTable> {
    let mu = build_classical(Kind::Mobius, g.len())?;
    convolve(g, &mu)
}

pub fn pointwise_mul(f: &FunctionTable, g: &FunctionTable) -> Result<FunctionTable> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    let n = f.len();
    let label = format!("{}.{}", f.label(), g.label());
    match f.kind().join(g.kind()) {
        ValueKind::ExactInt => {
            let (a, b) = (f.as_int().unwrap(), g.as_int().unwrap());
            Ok(FunctionTable::from_int(
                label,
                (0..n).map(|i| a[i] * b[i]).collect(),
            ))
        }
        ValueKind::Real => {
            let fp = f.promote(ValueKind::Real);
            let gp = g.promote(ValueKind::Real);
            let (a, b) = (fp.as_real().unwrap(), gp.as_real().unwrap());
            FunctionTable::from_real(label, (0..n).map(|i| a[i] * b[i]).collect())
        }
        ValueKind::Complex => FunctionTable::from_complex(
            label,
            (1..=n).map(|m| f.get(m) * g.get(m)).collect(),
        ),
    }
}

/// (S_k f)(n) = f(n+k); output length N - k, no zero padding.
pub fn shift(f: &FunctionTable, k: usize) -> Result<FunctionTable> {
    let n = f.len();
    if k >= n {
        return Err(Error::Domain(format!("shift k = {k} >= table length {n}")));
    }
    let label = format!("S{k}({})", f.label());
    let t = match f.values() {
        Values::Int(v) => FunctionTable::from_int(label, v[k..].to_vec()),
        Values::Real(v) => FunctionTable::from_real(label, v[k..].to_vec())?,
        Values::Complex(v) => FunctionTable::from_complex(label, v[k..].to_vec())?,
    };
    Ok(t)
}

/// (A_W f)(n) = (1/W) sum_{j=1..W} f(n+j); output length N - W.
pub fn cesaro(f: &FunctionTable, w: usize) -> Result<FunctionTable> {
    let n = f.len();
    if w == 0 {
        return Err(Error::InvalidParameter("cesaro window must be >= 1".into()));
    }
    if w >= n {
        return Err(Error::Domain(format!("cesaro W = {w} >= table length {n}")));
    }
    if w == 1 {
        return shift(f, 1);
    }
    let label = format!("A{w}({})", f.label());
    let out_len = n - w;
    match f.values() {
        Values::Int(v) => {
            // exact sliding integer window, divided once at the end
            let mut window: i64 = v[1..=w].iter().sum();
            let mut out = Vec::with_capacity(out_len);
            out.push(window as f64 / w as f64);
            for i in 1..out_len {
                window += v[i + w] - v[i];
                out.push(window as f64 / w as f64);
            }
            FunctionTable::from_real(label, out)
        }
        _ => {
            let mut prefix = vec![Complex64::new(0.0, 0.0); n + 1];
            for m in 1..=n {
                prefix[m] = prefix[m - 1] + f.get(m);
            }
            let vals: Vec<Complex64> = (1..=out_len)
                .map(|m| (prefix[m + w] - prefix[m]) / w as f64)
                .collect();
            if f.kind() == ValueKind::Real {
                FunctionTable::from_real(label, vals.iter().map(|z| z.re).collect())
            } else {
                FunctionTable::from_complex(label, vals)
            }
        }
    }
}

/// The shift-operator bound C_k = sup_n log(2+n+k)/log(2+n) = log(3+k)/log 3;
/// the ratio is decreasing in n, so the sup sits at n = 1.
pub fn shift_constant(k: usize) -> f64 {
    (3.0 + k as f64).ln() / 3f64.ln()
}

/// Scan the shift ratio over n <= limit; returns (sup, argmax).
pub fn shift_ratio_scan(k: usize, limit: usize) -> (f64, usize) {
    let mut best = 0.0;
    let mut arg = 1;
    for n in 1..=limit {
        let r = (2.0 + (n + k) as f64).ln() / (2.0 + n as f64).ln();
        if r > best {
            best = r;
            arg = n;
        }
    }
    (best, arg)
}

/// Empirical trajectory of C(n) = sum_{d|n} log(2+d)log(2+n/d) / log^2(2+n).
#[derive(Clone, Debug, Serialize)]
pub struct ConstantScanReport {
    pub n_max: u64,
    pub sup_value: f64,
    pub argmax_n: u64,
    /// (n, running sup) at powers of 10.
    pub trajectory: Vec<(u64, f64)>,
}

impl ConstantScanReport {
    pub fn trajectory_csv(&self) -> String {
        let mut s = String::from("n,running_sup\n");
        for (n, v) in &self.trajectory {
            s.push_str(&format!("{n},{v}\n"));
        }
        s
    }
}

/// Divisor-sum scan behind the convolution bound hypothesis. Reports the
/// running sup of C(n) for n <= N; takes no position on whether the sup
/// stays bounded as N grows.
pub fn convolution_constant_scan(n: usize) -> Result<ConstantScanReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    if n > crate::functions::MAX_N {
        return Err(Error::Capacity {
            what: "scan N",
            requested: n as u64,
            limit: crate::functions::MAX_N as u64,
        });
    }
    let logs: Vec<f64> = (0..=n).map(|i| (2.0 + i as f64).ln()).collect();
    let mut sums = vec![0f64; n];
    exec::fill_chunks(&mut sums, CHUNK, |offset, chunk| {
        let hi = offset + chunk.len();
        for d in 1..=hi {
            let ld = logs[d];
            let mut j = offset / d + 1;
            let mut m = d * j;
            while m <= hi {
                chunk[m - 1 - offset] += ld * logs[j];
                j += 1;
                m += d;
            }
        }
    });
    let mut sup = 0.0f64;
    let mut arg = 1u64;
    let mut trajectory = Vec::new();
    let mut next_checkpoint = 1usize;
    for m in 1..=n {
        let c = sums[m - 1] / (logs[m] * logs[m]);
        if c > sup {
            sup = c;
            arg = m as u64;
        }
        if m == next_checkpoint {
            trajectory.push((m as u64, sup));
            next_checkpoint = next_checkpoint.saturating_mul(10);
        }
    }
    if trajectory.last().map(|&(x, _)| x as usize) != Some(n) {
        trajectory.push((n as u64, sup));
    }
    Ok(ConstantScanReport {
        n_max: n as u64,
        sup_value: sup,
        argmax_n: arg,
        trajectory,
    })
}

#[derive(Clone, Debug)]
pub enum Operator<'a> {
    MulBy(&'a FunctionTable),
    Shift(usize),
    Cesaro(usize),
    ConvolveBy(&'a FunctionTable),
}

impl Operator<'_> {
    pub fn label(&self) -> String {
        match self {
            Operator::MulBy(g) => format!("mul_by({})", g.label()),
            Operator::Shift(k) => format!("shift({k})"),
            Operator::Cesaro(w) => format!("cesaro({w})"),
            Operator::ConvolveBy(g) => format!("convolve_by({})", g.label()),
        }
    }

    /// The bound claimed for this operator, when a formula exists.
    pub fn claimed_bound(&self) -> Option<f64> {
        match self {
            Operator::MulBy(g) => {
                let mut sup = 0.0f64;
                for m in 1..=g.len() {
                    sup = sup.max(g.abs(m));
                }
                Some(sup)
            }
            Operator::Shift(k) => Some(shift_constant(*k)),
            Operator::Cesaro(w) => {
                // average of shift ratios, each maximal at n = 1
                let s: f64 = (1..=*w).map(|j| (3.0 + j as f64).ln()).sum();
                Some(s / (*w as f64 * 3f64.ln()))
            }
            Operator::ConvolveBy(_) => None,
        }
    }

    pub fn apply(&self, f: &FunctionTable) -> Result<FunctionTable> {
        match self {
            Operator::MulBy(g) => pointwise_mul(f, g),
            Operator::Shift(k) => shift(f, *k),
            Operator::Cesaro(w) => cesaro(f, *w),
            Operator::ConvolveBy(g) => convolve(f, g),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OperatorNormEstimate {
    pub operator_label: String,
    pub lower_bound: f64,
    pub claimed_bound: Option<f64>,
    pub witness_function: String,
    pub battery_size: u64,
    /// True when the empirical lower bound exceeds the claimed bound by
    /// more than 1e-9: a finding, not a fault.
    pub falsified: bool,
}

fn table_norm(f: &FunctionTable, kind: NormKind) -> Result<f64> {
    Ok(match kind {
        NormKind::LogSup => u_norm_log(f, None)?.value,
        NormKind::HybridU => u_norm_hybrid(f, None, f.len(), None)?.value,
    })
}

/// Best ratio ||Tf|| / ||f|| over the battery: an empirical lower bound
/// on the operator norm.
pub fn operator_norm_estimate(
    op: &Operator,
    norm_kind: NormKind,
    battery: &[FunctionTable],
) -> Result<OperatorNormEstimate> {
    if battery.is_empty() {
        return Err(Error::InvalidParameter("empty battery".into()));
    }
    let mut lower = 0.0f64;
    let mut witness = String::new();
    for f in battery {
        if f.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "zero function {:?} in battery",
                f.label()
            )));
        }
        let denom = table_norm(f, norm_kind)?;
        let image = op.apply(f)?;
        let num = if image.is_empty() {
            0.0
        } else {
            table_norm(&image, norm_kind)?
        };
        let ratio = num / denom;
        if ratio > lower {
            lower = ratio;
            witness = f.label().to_string();
        }
    }
    let claimed = op.claimed_bound();
    let falsified = claimed.is_some_and(|c| lower > c + 1e-9);
    Ok(OperatorNormEstimate {
        operator_label: op.label(),
        lower_bound: lower,
        claimed_bound: claimed,
        witness_function: witness,
        battery_size: battery.len() as u64,
        falsified,
    })
}

/// Default probe battery: every built-in at length `n` plus `spikes`
/// seeded single-support functions (spikes witness shift constants).
pub fn default_battery(n: usize, seed: u64, spikes: usize) -> Result<Vec<FunctionTable>> {
    use rand::{Rng, SeedableRng};
    let mut battery = Vec::new();
    for kind in [
        Kind::One,
        Kind::Epsilon,
        Kind::Mobius,
        Kind::Liouville,
        Kind::VonMangoldt,
        Kind::EulerPhi,
        Kind::DivisorTau,
        Kind::LogPow(1),
    ] {
        battery.push(build_classical(kind, n)?);
    }
    // small spikes first: spike_2 shifted by k lands on n = 2 - ... and
    // realizes the shift ratio at n = 1
    let push_spike = |m: usize, battery: &mut Vec<FunctionTable>| {
        let mut v = vec![0i64; n];
        v[m - 1] = 1;
        battery.push(FunctionTable::from_int(format!("spike_{m}"), v));
    };
    for m in 2..=12.min(n) {
        push_spike(m, &mut battery);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..spikes {
        let m = rng.gen_range(2..=n);
        push_spike(m, &mut battery);
    }
    Ok(battery)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// Per-n divisor-loop reference convolution, for small n only.
    fn naive_convolve(f: &FunctionTable, g: &FunctionTable) -> Vec<Complex64> {
        let n = f.len();
        (1..=n)
            .map(|m| {
                let mut acc = Complex64::new(0.0, 0.0);
                for d in 1..=m {
                    if m % d == 0 {
                        acc += f.get(d) * g.get(m / d);
                    }
                }
                acc
            })
            .collect()
    }

    #[test]
    fn convolve_matches_naive_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let n = 10_000;
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-10..=10)).collect();
        let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-10..=10)).collect();
        let f = FunctionTable::from_int("a", a);
        let g = FunctionTable::from_int("b", b);
        let fast = convolve(&f, &g).unwrap();
        let slow = naive_convolve(&f, &g);
        for m in 1..=n {
            assert_eq!(fast.get(m), slow[m - 1], "n = {m}");
        }
    }

    #[test]
    fn mobius_inversion_identities() {
        let n = 1_000_000;
        let mu = build_classical(Kind::Mobius, n).unwrap();
        let one = build_classical(Kind::One, n).unwrap();
        let eps = build_classical(Kind::Epsilon, n).unwrap();
        let conv = convolve(&mu, &one).unwrap();
        assert_eq!(conv.as_int().unwrap(), eps.as_int().unwrap());

        let tau = build_classical(Kind::DivisorTau, n).unwrap();
        let one_one = convolve(&one, &one).unwrap();
        assert_eq!(one_one.as_int().unwrap()[5], 4); // tau(6)
        assert_eq!(one_one.as_int().unwrap(), tau.as_int().unwrap());

        let id = build_classical(Kind::IdPow(1), n).unwrap();
        let phi = build_classical(Kind::EulerPhi, n).unwrap();
        let mu_id = convolve(&mu, &id).unwrap();
        assert_eq!(mu_id.as_int().unwrap()[11], 4); // phi(12)
        assert_eq!(mu_id.as_int().unwrap(), phi.as_int().unwrap());
    }

    #[test]
    fn mobius_invert_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 10_000;
        let one = build_classical(Kind::One, n).unwrap();
        for _ in 0..100 {
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
            let f = FunctionTable::from_int("f", v);
            let g = convolve(&f, &one).unwrap();
            let back = mobius_invert(&g).unwrap();
            assert_eq!(back.as_int().unwrap(), f.as_int().unwrap());
        }
    }

    #[test]
    fn epsilon_is_identity_and_epsilon_invert() {
        let n = 5000;
        let eps = build_classical(Kind::Epsilon, n).unwrap();
        let tau = build_classical(Kind::DivisorTau, n).unwrap();
        let left = convolve(&eps, &tau).unwrap();
        let right = convolve(&tau, &eps).unwrap();
        assert_eq!(left.as_int().unwrap(), tau.as_int().unwrap());
        assert_eq!(right.as_int().unwrap(), tau.as_int().unwrap());

        // epsilon * mu = mu, so mobius_invert(epsilon) is mu itself
        let mu = build_classical(Kind::Mobius, n).unwrap();
        let inv = mobius_invert(&eps).unwrap();
        assert_eq!(inv.as_int().unwrap(), mu.as_int().unwrap());
    }

    #[test]
    fn commutative_associative_distributive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let n = 1000;
        for _ in 0..50 {
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                FunctionTable::from_int(
                    "r",
                    (0..n).map(|_| rng.gen_range(-5i64..=5)).collect::<Vec<_>>(),
                )
            };
            let f = mk(&mut rng);
            let g = mk(&mut rng);
            let h = mk(&mut rng);
            let fg = convolve(&f, &g).unwrap();
            let gf = convolve(&g, &f).unwrap();
            assert_eq!(fg.as_int().unwrap(), gf.as_int().unwrap());
            let fg_h = convolve(&fg, &h).unwrap();
            let gh = convolve(&g, &h).unwrap();
            let f_gh = convolve(&f, &gh).unwrap();
            assert_eq!(fg_h.as_int().unwrap(), f_gh.as_int().unwrap());
            let sum = FunctionTable::from_int(
                "g+h",
                g.as_int()
                    .unwrap()
                    .iter()
                    .zip(h.as_int().unwrap())
                    .map(|(a, b)| a + b)
                    .collect::<Vec<_>>(),
            );
            let lhs = convolve(&f, &sum).unwrap();
            let fh = convolve(&f, &h).unwrap();
            let rhs: Vec<i64> = fg
                .as_int()
                .unwrap()
                .iter()
                .zip(fh.as_int().unwrap())
                .map(|(a, b)| a + b)
                .collect();
            assert_eq!(lhs.as_int().unwrap(), &rhs[..]);
        }
    }

    #[test]
    fn associativity_floating_kinds() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        let n = 1000;
        for _ in 0..10 {
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                FunctionTable::from_real(
                    "r",
                    (0..n).map(|_| rng.gen_range(-5.0..=5.0)).collect::<Vec<f64>>(),
                )
                .unwrap()
            };
            let f = mk(&mut rng);
            let g = mk(&mut rng);
            let h = mk(&mut rng);
            let lhs = convolve(&convolve(&f, &g).unwrap(), &h).unwrap();
            let rhs = convolve(&f, &convolve(&g, &h).unwrap()).unwrap();
            for m in 1..=n {
                assert!((lhs.get(m) - rhs.get(m)).norm() < 1e-10, "n = {m}");
            }
        }
    }

    #[test]
    fn von_mangoldt_is_mu_conv_log() {
        let n = 100_000;
        let mu = build_classical(Kind::Mobius, n).unwrap();
        let log = build_classical(Kind::LogPow(1), n).unwrap();
        let vm = build_classical(Kind::VonMangoldt, n).unwrap();
        let conv = convolve(&mu, &log).unwrap();
        let a = conv.as_real().unwrap();
        let b = vm.as_real().unwrap();
        for m in 0..n {
            assert!((a[m] - b[m]).abs() < 1e-9, "n = {}", m + 1);
        }
    }

    #[test]
    fn shift_and_cesaro_basics() {
        let n = 1000;
        let eps = build_classical(Kind::Epsilon, n).unwrap();
        let s1 = shift(&eps, 1).unwrap();
        assert_eq!(s1.len(), n - 1);
        assert!(s1.as_int().unwrap().iter().all(|&x| x == 0));

        let one = build_classical(Kind::One, n).unwrap();
        let s0 = shift(&one, 0).unwrap();
        assert_eq!(s0.as_int().unwrap(), one.as_int().unwrap());
        for w in [1usize, 5, 100] {
            let a = cesaro(&one, w).unwrap();
            assert_eq!(a.len(), n - w);
            for m in 1..=a.len() {
                assert!((a.get(m).re - 1.0).abs() < 1e-15);
            }
        }
        // W = 1 is the unit shift
        let id = build_classical(Kind::IdPow(1), n).unwrap();
        let c1 = cesaro(&id, 1).unwrap();
        let s1 = shift(&id, 1).unwrap();
        for m in 1..=n - 1 {
            assert_eq!(c1.get(m), s1.get(m));
        }
        assert!(shift(&one, n).is_err());
        assert!(cesaro(&one, n).is_err());
    }

    #[test]
    fn cesaro_matches_direct_window_average() {
        let n = 2000;
        let phi = build_classical(Kind::EulerPhi, n).unwrap();
        let w = 7;
        let a = cesaro(&phi, w).unwrap();
        let v = phi.as_int().unwrap();
        for m in 1..=n - w {
            let direct: i64 = (1..=w).map(|j| v[m + j - 1]).sum();
            assert!((a.get(m).re - direct as f64 / w as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn squarefree_indicator_from_mu_squared() {
        let n = 1_000_000;
        let mu = build_classical(Kind::Mobius, n).unwrap();
        let sq = pointwise_mul(&mu, &mu).unwrap();
        let v = sq.as_int().unwrap();
        let m = mu.as_int().unwrap();
        for i in 0..n {
            assert_eq!(v[i], m[i].abs());
        }
    }

    #[test]
    fn shift_constants() {
        assert_eq!(shift_constant(0), 1.0);
        assert!((shift_constant(1) - 1.261860).abs() < 1e-6);
        assert!((shift_constant(10) - 2.334718).abs() < 1e-6);
        for k in [1usize, 2, 10] {
            let (sup, arg) = shift_ratio_scan(k, 100_000);
            assert_eq!(arg, 1, "k = {k}");
            assert!((sup - shift_constant(k)).abs() < 1e-15);
        }
    }

    #[test]
    fn constant_scan_small_values() {
        let r = convolution_constant_scan(10).unwrap();
        // C(1) = 1 exactly
        let c1 = r.trajectory[0].1;
        assert!((c1 - 1.0).abs() < 1e-12);
        // C(2) = 2 log3 log4 / log^2 4
        let ln3 = 3f64.ln();
        let ln4 = 4f64.ln();
        let c2 = 2.0 * ln3 * ln4 / (ln4 * ln4);
        assert!((c2 - 1.585).abs() < 1e-3);
        assert!(r.sup_value >= c2 - 1e-12);
        for w in r.trajectory.windows(2) {
            assert!(w[1].1 >= w[0].1);
        }
    }

    #[test]
    fn constant_scan_argmax_highly_composite() {
        let r = convolution_constant_scan(100_000).unwrap();
        // the record holder must have many divisors
        let arg = r.argmax_n as usize;
        let tau = (1..=arg).filter(|d| arg.is_multiple_of(*d)).count();
        assert!(tau >= 48, "argmax {arg} has only {tau} divisors");
        for w in r.trajectory.windows(2) {
            assert!(w[1].1 >= w[0].1);
        }
        assert_eq!(r.trajectory.last().unwrap().1, r.sup_value);
    }

    #[test]
    fn operator_norm_probes() {
        let n = 10_000;
        let battery = default_battery(n, 42, 100).unwrap();
        let mu = build_classical(Kind::Mobius, n).unwrap();

        let est = operator_norm_estimate(&Operator::MulBy(&mu), NormKind::LogSup, &battery).unwrap();
        assert!(est.lower_bound <= 1.0 + 1e-9);
        assert_eq!(est.claimed_bound, Some(1.0));
        assert!(!est.falsified);

        let est = operator_norm_estimate(&Operator::Shift(1), NormKind::LogSup, &battery).unwrap();
        let c1 = shift_constant(1);
        assert!(est.lower_bound >= 0.99 * c1, "lower = {}", est.lower_bound);
        assert!(est.lower_bound <= c1 + 1e-9);
        assert!(!est.falsified);

        let one = build_classical(Kind::One, n).unwrap();
        let est =
            operator_norm_estimate(&Operator::Cesaro(10), NormKind::LogSup, std::slice::from_ref(&one)).unwrap();
        assert!((est.lower_bound - 1.0).abs() < 1e-12);
        assert!(est.claimed_bound.unwrap() >= 1.0);

        assert!(operator_norm_estimate(&Operator::Shift(1), NormKind::LogSup, &[]).is_err());
        let zero = FunctionTable::from_int("zero", vec![0; n]);
        assert!(operator_norm_estimate(&Operator::Shift(1), NormKind::LogSup, &[zero]).is_err());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let a = build_classical(Kind::One, 10).unwrap();
        let b = build_classical(Kind::One, 20).unwrap();
        assert!(convolve(&a, &b).is_err());
        assert!(pointwise_mul(&a, &b).is_err());
    }
}
