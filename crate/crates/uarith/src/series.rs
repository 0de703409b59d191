//! Certified evaluation of Dirichlet series sum f(n)/n^s, the
//! vertical-line majorant, the convolution-product identity, and the
//! desk-scale scans (Mertens partial sums, Chebyshev psi, twisted series).

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::exec::{self, CHUNK};
use crate::functions::{build_classical, Kind, MAX_N};
use crate::kahan::{KahanComplex, KahanSum};
use crate::norms::log_power_tail;
use crate::operators::convolve;
use crate::table::{FunctionTable, GrowthBound, ValueKind, Values};

/// Partial sum at a complex point together with a certified tail radius:
/// when `certified`, the true series value lies within `tail_radius` of
/// `partial` whenever the defining series converges absolutely at s.
#[derive(Clone, Copy, Debug)]
pub struct SeriesEvaluation {
    pub s: Complex64,
    pub partial: Complex64,
    pub n: u64,
    pub tail_radius: f64,
    pub certified: bool,
}

impl SeriesEvaluation {
    /// Distance from the certified disk to a reference value; <= 0 means
    /// the reference is inside.
    pub fn contains(&self, reference: Complex64) -> bool {
        (self.partial - reference).norm() <= self.tail_radius
    }
}

impl Serialize for SeriesEvaluation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SeriesEvaluation", 5)?;
        st.serialize_field("s", &[self.s.re, self.s.im])?;
        st.serialize_field("value", &[self.partial.re, self.partial.im])?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("tail", &self.tail_radius)?;
        st.serialize_field("certified", &self.certified)?;
        st.end()
    }
}

/// Finite Dirichlet sum over the whole table, compensated, chunked.
pub fn dirichlet_partial(f: &FunctionTable, s: Complex64) -> Complex64 {
    let n = f.len();
    let partials = exec::map_chunks(n, CHUNK, |range| {
        let mut k = KahanComplex::new();
        for i in range {
            let m = i + 1;
            let v = f.get(m);
            if v != Complex64::new(0.0, 0.0) {
                k.add(v * (-s * (m as f64).ln()).exp());
            }
        }
        k
    });
    let mut total = KahanComplex::new();
    for p in partials {
        total.merge(p);
    }
    total.value()
}

/// The vertical-line majorant C(sigma) = sum log(2+n)/n^sigma: partial sum
/// to N plus a certified tail from
/// integral_N^inf log(2+t) t^(-sigma) dt
///   <= N^(1-sigma) (log(2+N)/(sigma-1) + 1/(sigma-1)^2).
pub fn majorant_sum(sigma: f64, n: usize) -> Result<(f64, f64, bool)> {
    if sigma <= 1.0 {
        return Err(Error::Domain(format!(
            "majorant sum diverges for sigma = {sigma} <= 1"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    let partials = exec::map_chunks(n, CHUNK, |range| {
        let mut k = KahanSum::new();
        for i in range {
            let m = (i + 1) as f64;
            k.add((2.0 + m).ln() / m.powf(sigma));
        }
        k
    });
    let mut total = KahanSum::new();
    for p in partials {
        total.merge(p);
    }
    let nf = n as f64;
    let tail = nf.powf(1.0 - sigma) * ((2.0 + nf).ln() / (sigma - 1.0) + (sigma - 1.0).powi(-2));
    Ok((total.value(), tail, true))
}

/// Certified evaluation of sum f(n)/n^s under a growth bound. Requires
/// Re(s) > alpha + 1, the certified absolute-convergence region.
pub fn evaluate_dirichlet(
    f: &FunctionTable,
    s: Complex64,
    bound: GrowthBound,
) -> Result<SeriesEvaluation> {
    bound.verify(f)?;
    if s.re <= bound.alpha + 1.0 {
        return Err(Error::Domain(format!(
            "Re(s) = {} outside the certified region Re(s) > {}",
            s.re,
            bound.alpha + 1.0
        )));
    }
    if f.is_empty() {
        return Err(Error::Domain("empty table".into()));
    }
    let partial = dirichlet_partial(f, s);
    let tail = bound.c * log_power_tail(f.len(), bound.alpha - s.re, bound.k as i32)?;
    Ok(SeriesEvaluation {
        s,
        partial,
        n: f.len() as u64,
        tail_radius: tail,
        certified: true,
    })
}

pub fn zeta(s: Complex64, n: usize) -> Result<SeriesEvaluation> {
    let one = build_classical(Kind::One, n)?;
    evaluate_dirichlet(&one, s, GrowthBound::new(1.0, 0.0, 0))
}

pub fn inv_zeta(s: Complex64, n: usize) -> Result<SeriesEvaluation> {
    let mu = build_classical(Kind::Mobius, n)?;
    evaluate_dirichlet(&mu, s, GrowthBound::new(1.0, 0.0, 0))
}

pub fn neg_zeta_log_deriv(s: Complex64, n: usize) -> Result<SeriesEvaluation> {
    let vm = build_classical(Kind::VonMangoldt, n)?;
    evaluate_dirichlet(&vm, s, GrowthBound::new(1.0, 0.0, 1))
}

pub fn l_function(chi: &CharacterTable, s: Complex64, n: usize) -> Result<SeriesEvaluation> {
    let table = chi.to_table(n)?;
    evaluate_dirichlet(&table, s, GrowthBound::new(1.0, 0.0, 0))
}

/// Residual of D(f*g;s) = D(f;s) D(g;s) for finitely supported f, g.
/// The convolution is recomputed at length support(f)*support(g), so all
/// three sums are exact finite sums and the identity holds to rounding.
pub fn verify_product(f: &FunctionTable, g: &FunctionTable, s: Complex64) -> Result<f64> {
    let sf = f.support();
    let sg = g.support();
    if sf == 0 || sg == 0 {
        return Ok(0.0);
    }
    let len = sf.checked_mul(sg).filter(|&l| l <= MAX_N).ok_or(Error::Capacity {
        what: "product support",
        requested: (sf as u64).saturating_mul(sg as u64),
        limit: MAX_N as u64,
    })?;
    let fe = f.zero_extend(len);
    let ge = g.zero_extend(len);
    let fg = convolve(&fe, &ge)?;
    let left = dirichlet_partial(&fg, s);
    let right = dirichlet_partial(&fe, s) * dirichlet_partial(&ge, s);
    Ok((left - right).norm())
}

/// Exact prefix sums M_f(x) = sum_{n<=x} f(n) for x <= N.
pub fn partial_sums(f: &FunctionTable) -> FunctionTable {
    let label = format!("prefix({})", f.label());
    match f.values() {
        Values::Int(v) => {
            let mut acc = 0i64;
            FunctionTable::from_int(
                label,
                v.iter()
                    .map(|&x| {
                        acc += x;
                        acc
                    })
                    .collect::<Vec<_>>(),
            )
        }
        Values::Real(v) => {
            let mut acc = KahanSum::new();
            FunctionTable::from_real(
                label,
                v.iter()
                    .map(|&x| {
                        acc.add(x);
                        acc.value()
                    })
                    .collect::<Vec<_>>(),
            )
            .expect("prefix of a finite table")
        }
        Values::Complex(v) => {
            let mut acc = KahanComplex::new();
            FunctionTable::from_complex(
                label,
                v.iter()
                    .map(|&z| {
                        acc.add(z);
                        acc.value()
                    })
                    .collect::<Vec<_>>(),
            )
            .expect("prefix of a finite table")
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub x: u64,
    pub statistic_label: String,
    pub sup_value: f64,
    pub argmax_x: u64,
    /// Statistic sampled at powers of 10.
    pub checkpoints: Vec<(u64, f64)>,
}

impl ScanReport {
    pub fn checkpoints_csv(&self) -> String {
        let mut s = String::from("x,value\n");
        for (x, v) in &self.checkpoints {
            s.push_str(&format!("{x},{v}\n"));
        }
        s
    }
}

/// sup_{x<=X} |M_mu(x)| / x^theta, with the statistic sampled at powers
/// of 10.
pub fn mertens_scan(x: usize, theta: f64) -> Result<ScanReport> {
    if !(0.0..1.0).contains(&theta) || theta == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in (0,1), got {theta}"
        )));
    }
    let mu = build_classical(Kind::Mobius, x)?;
    let v = mu.as_int().unwrap();
    let mut m = 0i64;
    let mut sup = 0.0f64;
    let mut arg = 1u64;
    let mut checkpoints = Vec::new();
    let mut next_cp = 1usize;
    for t in 1..=x {
        m += v[t - 1];
        let stat = (m.abs() as f64) / (t as f64).powf(theta);
        if stat > sup {
            sup = stat;
            arg = t as u64;
        }
        if t == next_cp {
            checkpoints.push((t as u64, stat));
            next_cp = next_cp.saturating_mul(10);
        }
    }
    Ok(ScanReport {
        x: x as u64,
        statistic_label: format!("|M_mu(x)|/x^{theta}"),
        sup_value: sup,
        argmax_x: arg,
        checkpoints,
    })
}

/// sup over x in [2, X] of |psi(x) - x| / x, psi the Chebyshev function.
pub fn psi_scan(x: usize) -> Result<ScanReport> {
    if x < 2 {
        return Err(Error::InvalidParameter("psi scan needs X >= 2".into()));
    }
    let vm = build_classical(Kind::VonMangoldt, x)?;
    let v = vm.as_real().unwrap();
    let mut psi = KahanSum::new();
    let mut sup = 0.0f64;
    let mut arg = 2u64;
    let mut checkpoints = Vec::new();
    let mut next_cp = 10usize;
    for t in 1..=x {
        psi.add(v[t - 1]);
        if t >= 2 {
            let stat = (psi.value() - t as f64).abs() / t as f64;
            if stat > sup {
                sup = stat;
                arg = t as u64;
            }
        }
        if t == next_cp {
            checkpoints.push((t as u64, (psi.value() - t as f64).abs() / t as f64));
            next_cp = next_cp.saturating_mul(10);
        }
    }
    Ok(ScanReport {
        x: x as u64,
        statistic_label: "|psi(x)-x|/x".into(),
        sup_value: sup,
        argmax_x: arg,
        checkpoints,
    })
}

/// Residual and comparison tolerance for the twisted identity
/// D(f*chi;s) = D(f;s) L(s,chi), both sides as finite sums.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TwistedCheck {
    pub residual: f64,
    /// Combined certified tails of the two truncations; the identity
    /// holds when residual <= tolerance.
    pub tolerance: f64,
}

pub fn twisted_series_check(
    f: &FunctionTable,
    chi: &CharacterTable,
    s: Complex64,
    support_cap: usize,
) -> Result<TwistedCheck> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "twisted check needs Re(s) > 1, got {}",
            s.re
        )));
    }
    if support_cap == 0 {
        return Err(Error::InvalidParameter("support cap must be >= 1".into()));
    }
    let len = support_cap.checked_mul(support_cap).filter(|&l| l <= MAX_N).ok_or(
        Error::Capacity {
            what: "twisted check length",
            requested: (support_cap as u64).pow(2),
            limit: MAX_N as u64,
        },
    )?;
    // truncate f to the cap, then extend with zeros to the working length
    let mut ft = f.promote(ValueKind::Complex);
    let vals: Vec<Complex64> = (1..=support_cap.min(f.len()))
        .map(|m| ft.get(m))
        .collect();
    ft = FunctionTable::from_complex(f.label(), vals)?.zero_extend(len);
    let chi_table = chi.to_table(len)?;
    let conv = convolve(&ft, &chi_table)?;
    let left = dirichlet_partial(&conv, s);
    let df = dirichlet_partial(&ft, s);
    let l_partial = dirichlet_partial(&chi_table, s);
    let residual = (left - df * l_partial).norm();

    // |(f*chi)(n)| <= sum |f| for every n, |chi| <= 1
    let f_l1: f64 = (1..=ft.len()).map(|m| ft.abs(m)).sum();
    let series_tail = log_power_tail(len, -s.re, 0)?;
    let tolerance = (f_l1 + df.norm()) * series_tail + 1e-10 * (1.0 + (df * l_partial).norm());
    Ok(TwistedCheck {
        residual,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::character_group;
    use rand::{Rng, SeedableRng};

    const PI2_OVER_6: f64 = 1.6449340668482264;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn majorant_certified_interval_brackets_high_n_sum() {
        let (v4, t4, cert) = majorant_sum(2.0, 10_000).unwrap();
        assert!(cert);
        let (v7, _, _) = majorant_sum(2.0, 10_000_000).unwrap();
        assert!(v4 <= v7 && v7 <= v4 + t4, "[{v4}, {}] vs {v7}", v4 + t4);
    }

    #[test]
    fn majorant_rapid_decay_and_domain() {
        let (_, tail, _) = majorant_sum(10.0, 100).unwrap();
        assert!(tail < 1e-8);
        assert!(majorant_sum(1.0, 100).is_err());
        assert!(majorant_sum(0.5, 100).is_err());
    }

    #[test]
    fn epsilon_series_is_one() {
        let eps = crate::functions::build_classical(Kind::Epsilon, 100).unwrap();
        // epsilon vanishes past n = 1, so a steeply decaying majorant is
        // valid and certifies an essentially zero tail
        let e = evaluate_dirichlet(&eps, c(2.0, 3.0), GrowthBound::new(1.0, -20.0, 0)).unwrap();
        assert_eq!(e.partial, c(1.0, 0.0));
        assert!(e.tail_radius < 1e-30);
        assert!(e.certified);
    }

    #[test]
    fn zeta_at_two_contains_pi_squared_over_six() {
        let e = zeta(c(2.0, 0.0), 1_000_000).unwrap();
        assert!(e.contains(c(PI2_OVER_6, 0.0)));
        assert_eq!(e.partial.im, 0.0);
    }

    #[test]
    fn inv_zeta_times_zeta_is_one() {
        let z = zeta(c(2.0, 0.0), 1_000_000).unwrap();
        let iz = inv_zeta(c(2.0, 0.0), 1_000_000).unwrap();
        let prod = z.partial * iz.partial;
        let radius = z.partial.norm() * iz.tail_radius
            + iz.partial.norm() * z.tail_radius
            + z.tail_radius * iz.tail_radius;
        assert!((prod - c(1.0, 0.0)).norm() <= radius);
    }

    #[test]
    fn region_and_bound_errors() {
        let one = crate::functions::build_classical(Kind::One, 100).unwrap();
        assert!(evaluate_dirichlet(&one, c(1.0, 0.0), GrowthBound::new(1.0, 0.0, 0)).is_err());
        // table violates the claimed bound
        assert!(evaluate_dirichlet(&one, c(2.0, 0.0), GrowthBound::new(0.5, 0.0, 0)).is_err());
        assert!(zeta(c(0.9, 4.0), 100).is_err());
    }

    #[test]
    fn product_identity_on_random_finite_supports() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let s = c(2.0, 3.0);
        for _ in 0..100 {
            let sf = rng.gen_range(1..=200);
            let sg = rng.gen_range(1..=200);
            let f = FunctionTable::from_int(
                "f",
                (0..sf).map(|_| rng.gen_range(-9i64..=9)).collect::<Vec<_>>(),
            );
            let g = FunctionTable::from_int(
                "g",
                (0..sg).map(|_| rng.gen_range(-9i64..=9)).collect::<Vec<_>>(),
            );
            let r = verify_product(&f, &g, s).unwrap();
            let scale = 1.0
                + (dirichlet_partial(&f, s) * dirichlet_partial(&g, s)).norm();
            assert!(r <= 1e-10 * scale, "residual {r} vs scale {scale}");
        }
    }

    #[test]
    fn product_identity_epsilon() {
        let eps = crate::functions::build_classical(Kind::Epsilon, 50).unwrap();
        assert_eq!(verify_product(&eps, &eps, c(2.0, 3.0)).unwrap(), 0.0);
    }

    /// Truncating the convolution shorter than support(f)*support(g)
    /// loses mass: the full-length residual is small while a same-length
    /// convolution of mu and one leaves a visible mismatch.
    #[test]
    fn product_identity_needs_full_convolution_length() {
        let n = 1000;
        let mu = crate::functions::build_classical(Kind::Mobius, n).unwrap();
        let one = crate::functions::build_classical(Kind::One, n).unwrap();
        let s = c(2.0, 0.0);
        let full = verify_product(&mu, &one, s).unwrap();
        assert!(full <= 1e-10 * (1.0 + 1.0));

        // deliberately truncated: convolve at length n only
        let conv = convolve(&mu, &one).unwrap();
        let left = dirichlet_partial(&conv, s);
        let right = dirichlet_partial(&mu, s) * dirichlet_partial(&one, s);
        let truncated = (left - right).norm();
        assert!(truncated > 1e-6, "truncated residual {truncated}");
    }

    #[test]
    fn certified_intervals_nest_with_growing_n() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..500 {
            let len = rng.gen_range(200..=2000);
            let vals: Vec<i64> = (0..len).map(|_| rng.gen_range(-5i64..=5)).collect();
            let cmax = vals.iter().map(|v| v.abs()).max().unwrap().max(1) as f64;
            let f = FunctionTable::from_int("f", vals);
            let k = rng.gen_range(0..=1u32);
            let bound = GrowthBound::new(cmax, 0.0, k);
            let s = c(rng.gen_range(1.2..3.0), rng.gen_range(-5.0..5.0));
            let n1 = rng.gen_range(100..len);
            let n2 = rng.gen_range(n1..=len);
            let sub1 = FunctionTable::from_int("f1", f.as_int().unwrap()[..n1].to_vec());
            let sub2 = FunctionTable::from_int("f2", f.as_int().unwrap()[..n2].to_vec());
            let e1 = evaluate_dirichlet(&sub1, s, bound).unwrap();
            let e2 = evaluate_dirichlet(&sub2, s, bound).unwrap();
            assert!(e2.tail_radius <= e1.tail_radius + 1e-18);
            assert!(
                (e1.partial - e2.partial).norm() + e2.tail_radius <= e1.tail_radius * (1.0 + 1e-9),
                "not nested: |dp| = {}, t2 = {}, t1 = {}",
                (e1.partial - e2.partial).norm(),
                e2.tail_radius,
                e1.tail_radius
            );
        }
    }

    #[test]
    fn principal_character_mod_one_matches_zeta_bitwise() {
        let g = character_group(1).unwrap();
        let s = c(1.7, 2.5);
        let n = 10_000;
        let le = l_function(&g[0], s, n).unwrap();
        let chi_table = g[0].to_table(n).unwrap();
        let one = crate::functions::build_classical(Kind::One, n).unwrap();
        // identical values => identical partial sums, bit for bit
        for m in 1..=n {
            assert_eq!(chi_table.get(m), one.get(m));
        }
        let ze = zeta(s, n).unwrap();
        assert_eq!(le.partial.re.to_bits(), ze.partial.re.to_bits());
        assert_eq!(le.partial.im.to_bits(), ze.partial.im.to_bits());
    }

    #[test]
    fn l_function_mod_four_against_high_n_oracle() {
        let g = character_group(4).unwrap();
        let chi = &g[1];
        let s = c(1.5, 0.0);
        let e = l_function(chi, s, 100_000).unwrap();
        // direct high-N summation oracle (alternating series 1 - 3^-s + ...)
        let mut oracle = KahanSum::new();
        for m in (1..=40_000_000u64).step_by(2) {
            let sign = if m % 4 == 1 { 1.0 } else { -1.0 };
            oracle.add(sign * (m as f64).powf(-1.5));
        }
        assert!(
            (e.partial.re - oracle.value()).abs() <= e.tail_radius,
            "{} vs {} (tail {})",
            e.partial.re,
            oracle.value(),
            e.tail_radius
        );
    }

    #[test]
    fn prefix_sums_exact() {
        let mu = crate::functions::build_classical(Kind::Mobius, 10_000).unwrap();
        let m = partial_sums(&mu);
        let mv = m.as_int().unwrap();
        assert_eq!(mv[0], 1);
        assert_eq!(mv[1], 0);
        assert_eq!(mv[2], -1);
        let muv = mu.as_int().unwrap();
        for x in 1..10_000 {
            assert_eq!(mv[x] - mv[x - 1], muv[x]);
        }
        let eps = crate::functions::build_classical(Kind::Epsilon, 100).unwrap();
        assert!(partial_sums(&eps).as_int().unwrap().iter().all(|&v| v == 1));
    }

    #[test]
    fn mertens_scan_small_and_monotone_in_theta() {
        let r = mertens_scan(10, 0.5).unwrap();
        assert_eq!(r.sup_value, 1.0);
        assert_eq!(r.argmax_x, 1);
        let r5 = mertens_scan(100_000, 0.5).unwrap();
        let r6 = mertens_scan(100_000, 0.6).unwrap();
        assert!(r6.sup_value <= r5.sup_value);
        assert!(mertens_scan(100, 0.0).is_err());
        assert!(mertens_scan(100, 1.0).is_err());
    }

    #[test]
    fn psi_scan_values() {
        let r = psi_scan(10).unwrap();
        // psi(10) = 3 log2 + 2 log3 + log5 + log7
        let psi10 = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((psi10 - 7.832014180505469).abs() < 1e-12);
        let last = r.checkpoints.last().unwrap();
        assert_eq!(last.0, 10);
        assert!((last.1 - (psi10 - 10.0).abs() / 10.0).abs() < 1e-12);
        assert!(psi_scan(1).is_err());
    }

    #[test]
    fn scans_are_bit_reproducible() {
        let a = mertens_scan(100_000, 0.5).unwrap();
        let b = mertens_scan(100_000, 0.5).unwrap();
        assert_eq!(a.sup_value.to_bits(), b.sup_value.to_bits());
        assert_eq!(a.checkpoints, b.checkpoints);
        let a = psi_scan(100_000).unwrap();
        let b = psi_scan(100_000).unwrap();
        assert_eq!(a.sup_value.to_bits(), b.sup_value.to_bits());
    }

    #[test]
    fn twisted_identity() {
        let g4 = character_group(4).unwrap();
        let s = c(2.0, 0.0);
        // f = epsilon: left side is exactly the truncated L-series
        let eps = crate::functions::build_classical(Kind::Epsilon, 10).unwrap();
        let r = twisted_series_check(&eps, &g4[1], s, 100).unwrap();
        assert!(r.residual <= r.tolerance);
        assert!(r.residual < 1e-10);

        // random finite support
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let vals: Vec<i64> = (0..100).map(|_| rng.gen_range(-5i64..=5)).collect();
            let f = FunctionTable::from_int("f", vals);
            let r = twisted_series_check(&f, &g4[1], s, 100).unwrap();
            assert!(r.residual <= r.tolerance, "{} > {}", r.residual, r.tolerance);
        }

        // principal chi mod 1 reduces to the plain product identity
        let g1 = character_group(1).unwrap();
        let f = FunctionTable::from_int("f", vec![2, -1, 3]);
        let r = twisted_series_check(&f, &g1[0], s, 50).unwrap();
        assert!(r.residual <= r.tolerance);
    }

    #[test]
    fn series_json_shape() {
        let e = zeta(c(2.0, 0.0), 100).unwrap();
        let j = serde_json::to_value(e).unwrap();
        assert_eq!(j["s"], serde_json::json!([2.0, 0.0]));
        assert!(j["value"].is_array());
        assert_eq!(j["N"], 100);
        assert!(j["tail"].is_number());
        assert_eq!(j["certified"], true);
    }
}
