//! The two norms on the function space: the hybrid norm (weighted-l2
//! Hilbert part plus a log-normalized partial-sum part) and the
//! sup-over-log norm, with explicit certification status.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, CHUNK};
use crate::kahan::{KahanComplex, KahanSum};
use crate::table::{FunctionTable, GrowthBound};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    HybridU,
    LogSup,
}

/// Norm value with provenance: the scanned lower bound, the certified
/// upper bound when a growth bound made one available, and the witness.
#[derive(Clone, Debug, Serialize)]
pub struct NormReport {
    pub kind: NormKind,
    pub value: f64,
    pub certified_upper: Option<f64>,
    pub argmax: Option<u64>,
    pub scan_limit: u64,
    pub hilbert_part: Option<f64>,
    pub log_average_part: Option<f64>,
}

/// Upper bound on sum_{n>N} n^beta * log(2+n)^m for beta < -1.
///
/// The sum is compared to the integral of t^beta log(2+t)^m, which for
/// m <= 0 is at most N^(beta+1) log(2+N)^m / (-beta-1) and for m >= 1 is
/// bounded by unrolling integration by parts m times:
///   I_m <= N^(beta+1)/c * sum_{j=0..m} m!/(m-j)! * log(2+N)^(m-j) / c^j,
/// with c = -beta-1. Requires the integrand to be nonincreasing from N on,
/// i.e. m <= -beta * log(2+N) * (2+N)/N.
pub fn log_power_tail(n: usize, beta: f64, m: i32) -> Result<f64> {
    let c = -beta - 1.0;
    if c <= 0.0 {
        return Err(Error::Divergence {
            need: "exponent beta < -1".into(),
            got: beta,
        });
    }
    let nf = n as f64;
    let l = (2.0 + nf).ln();
    if m > 0 && (m as f64) > -beta * l * (2.0 + nf) / nf {
        return Err(Error::Domain(format!(
            "tail start N = {n} too small for a monotone integrand (m = {m})"
        )));
    }
    let lead = nf.powf(beta + 1.0) / c;
    if m <= 0 {
        return Ok(lead * l.powi(m));
    }
    let mut term = l.powi(m);
    let mut sum = term;
    let mut falling = m as f64;
    for _ in 0..m {
        term *= falling / (c * l);
        sum += term;
        falling -= 1.0;
    }
    Ok(lead * sum)
}

#[derive(Clone, Copy, Debug)]
pub struct HilbertResult {
    /// Square root of the partial sum over the table.
    pub value: f64,
    /// Certified bound on the omitted remainder of the *squared* sum;
    /// the certified interval is [value, sqrt(value^2 + tail)].
    pub tail: f64,
    pub certified: bool,
}

impl HilbertResult {
    pub fn upper(&self) -> f64 {
        (self.value * self.value + self.tail).sqrt()
    }
}

/// The weighted-l2 component at a fixed s:
/// (sum_{n<=N} |f(n)|^2 / (n^{2s} log^2(2+n)))^{1/2}.
pub fn hilbert_component(
    f: &FunctionTable,
    s: f64,
    bound: Option<GrowthBound>,
) -> Result<HilbertResult> {
    if s < 1.0 {
        return Err(Error::Domain(format!("hilbert component needs s >= 1, got {s}")));
    }
    if f.is_empty() {
        return Err(Error::Domain("empty table".into()));
    }
    let n = f.len();
    let partials = exec::map_chunks(n, CHUNK, |range| {
        let mut k = KahanSum::new();
        for i in range {
            let m = (i + 1) as f64;
            let a = f.abs(i + 1);
            if a != 0.0 {
                let w = m.powf(s) * (2.0 + m).ln();
                let t = a / w;
                k.add(t * t);
            }
        }
        k
    });
    let mut total = KahanSum::new();
    for p in partials {
        total.merge(p);
    }
    let value = total.value().sqrt();

    let (tail, certified) = match bound {
        None => (0.0, false),
        Some(b) => {
            if 2.0 * (s - b.alpha) <= 1.0 {
                return Err(Error::Divergence {
                    need: "2(s - alpha) > 1".into(),
                    got: 2.0 * (s - b.alpha),
                });
            }
            let beta = 2.0 * b.alpha - 2.0 * s;
            let m = 2 * b.k as i32 - 2;
            let t = log_power_tail(n, beta, m)?;
            (b.c * b.c * t, true)
        }
    };
    Ok(HilbertResult {
        value,
        tail,
        certified,
    })
}

/// sup over s > 1 of the weighted-l2 component. Each summand is
/// nonincreasing in s, so the sup is the monotone limit s -> 1+, which
/// equals the s = 1 value.
pub fn hilbert_sup(f: &FunctionTable, bound: Option<GrowthBound>) -> Result<HilbertResult> {
    hilbert_component(f, 1.0, bound)
}

/// max over integer x <= X of |sum_{n<=x} f(n)/n| / log(2+x).
///
/// Between consecutive integers the numerator is constant while
/// 1/log(2+x) decreases, so the sup over real x >= 1 restricted to [1, X]
/// is attained at an integer; a single prefix sweep suffices. The result
/// is a lower bound for the global sup, never certified.
pub fn log_average_component(f: &FunctionTable, x: usize) -> Result<(f64, usize)> {
    if x == 0 || x > f.len() {
        return Err(Error::Domain(format!(
            "scan limit X = {x} outside table of length {}",
            f.len()
        )));
    }
    let mut prefix = KahanComplex::new();
    let mut best = 0.0f64;
    let mut arg = 1usize;
    for m in 1..=x {
        prefix.add(f.get(m) / m as f64);
        let v = prefix.value().norm() / (2.0 + m as f64).ln();
        if v > best {
            best = v;
            arg = m;
        }
    }
    Ok((best, arg))
}

/// Hybrid norm: hilbert_sup + log_average_component over x <= X.
///
/// `log_global` is an optional a-priori bound on the global log-average
/// sup; only with it (and a usable hilbert tail) can an upper bound be
/// certified.
pub fn u_norm_hybrid(
    f: &FunctionTable,
    bound: Option<GrowthBound>,
    x: usize,
    log_global: Option<f64>,
) -> Result<NormReport> {
    let h = hilbert_sup(f, bound)?;
    let (la, arg) = log_average_component(f, x)?;
    let certified_upper = match (h.certified, log_global) {
        (true, Some(g)) => Some(h.upper() + g.max(la)),
        _ => None,
    };
    Ok(NormReport {
        kind: NormKind::HybridU,
        value: h.value + la,
        certified_upper,
        argmax: Some(arg as u64),
        scan_limit: x as u64,
        hilbert_part: Some(h.value),
        log_average_part: Some(la),
    })
}

/// Sup-over-log norm: max_n |f(n)| / log(2+n) over the table, with a
/// certified upper bound when the growth bound has alpha <= 0 and k <= 1
/// (then the tail sup beyond the table is at most C).
pub fn u_norm_log(f: &FunctionTable, bound: Option<GrowthBound>) -> Result<NormReport> {
    if f.is_empty() {
        return Err(Error::Domain("empty table".into()));
    }
    let (value, arg) = log_sup_scan(f, 0, f.len());
    let certified_upper = bound.and_then(|b| {
        if b.alpha <= 0.0 && b.k <= 1 {
            Some(value.max(b.c))
        } else {
            None
        }
    });
    Ok(NormReport {
        kind: NormKind::LogSup,
        value,
        certified_upper,
        argmax: Some(arg as u64),
        scan_limit: f.len() as u64,
        hilbert_part: None,
        log_average_part: None,
    })
}

/// Chunked max of |f(n)|/log(2+n) over n in (lo, hi], smallest argmax on
/// ties; identical result under parallel and sequential execution.
fn log_sup_scan(f: &FunctionTable, lo: usize, hi: usize) -> (f64, usize) {
    let len = hi - lo;
    let locals = exec::map_chunks(len, CHUNK, |range| {
        let mut best = f64::NEG_INFINITY;
        let mut arg = 0usize;
        for i in range {
            let n = lo + i + 1;
            let v = f.abs(n) / (2.0 + n as f64).ln();
            if v > best {
                best = v;
                arg = n;
            }
        }
        (best, arg)
    });
    let mut best = 0.0f64;
    let mut arg = lo + 1;
    for (v, a) in locals {
        if v > best {
            best = v;
            arg = a;
        }
    }
    (best, arg)
}

/// Norm of f restricted to n > M, computed over the table: a lower bound
/// on the true truncation error of dropping everything past M.
pub fn truncation_error(f: &FunctionTable, m: usize, kind: NormKind) -> Result<f64> {
    if m >= f.len() {
        return Err(Error::Domain(format!(
            "truncation point M = {m} must be < table length {}",
            f.len()
        )));
    }
    match kind {
        NormKind::LogSup => Ok(log_sup_scan(f, m, f.len()).0),
        NormKind::HybridU => {
            let masked = mask_tail(f, m);
            let h = hilbert_sup(&masked, None)?;
            let (la, _) = log_average_component(&masked, masked.len())?;
            Ok(h.value + la)
        }
    }
}

fn mask_tail(f: &FunctionTable, m: usize) -> FunctionTable {
    use crate::table::Values;
    match f.values() {
        Values::Int(v) => {
            let mut w = v.clone();
            w[..m].fill(0);
            FunctionTable::from_int(f.label(), w)
        }
        Values::Real(v) => {
            let mut w = v.clone();
            w[..m].fill(0.0);
            FunctionTable::from_real(f.label(), w).expect("masked copy of a finite table")
        }
        Values::Complex(v) => {
            let mut w = v.clone();
            w[..m].fill(num_complex::Complex64::new(0.0, 0.0));
            FunctionTable::from_complex(f.label(), w).expect("masked copy of a finite table")
        }
    }
}
