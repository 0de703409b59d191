//! Sieve-based construction of the classical arithmetic functions.

use crate::error::{Error, Result};
use crate::table::FunctionTable;

/// Memory budget for table construction.
pub const MAX_N: usize = 1 << 28;

fn check_capacity(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::Capacity {
            what,
            requested: n as u64,
            limit: limit as u64,
        });
    }
    Ok(())
}

/// Smallest prime factor of every n in 2..=N; entries 0 and 1 are 0.
pub fn sieve_spf(n: usize) -> Result<Vec<u32>> {
    if n < 2 {
        return Err(Error::InvalidParameter("sieve_spf requires N >= 2".into()));
    }
    check_capacity("sieve N", n, MAX_N)?;
    let mut spf = vec![0u32; n + 1];
    for p in 2..=n {
        if spf[p] == 0 {
            for m in (p..=n).step_by(p) {
                if spf[m] == 0 {
                    spf[m] = p as u32;
                }
            }
        }
    }
    Ok(spf)
}

/// Decompose n as p^m using the spf table, if n is a prime power.
pub fn prime_power(spf: &[u32], n: usize) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = spf[n] as usize;
    let mut m = 0u32;
    let mut rest = n;
    while rest > 1 {
        if spf[rest] as usize != p {
            return None;
        }
        rest /= p;
        m += 1;
    }
    Some((p as u64, m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    One,
    IdPow(u32),
    LogPow(u32),
    Epsilon,
    Mobius,
    Liouville,
    VonMangoldt,
    EulerPhi,
    DivisorTau,
}

impl Kind {
    pub fn label(&self) -> String {
        match self {
            Kind::One => "one".into(),
            Kind::IdPow(a) => format!("id^{a}"),
            Kind::LogPow(k) => format!("log^{k}"),
            Kind::Epsilon => "epsilon".into(),
            Kind::Mobius => "mobius".into(),
            Kind::Liouville => "liouville".into(),
            Kind::VonMangoldt => "von_mangoldt".into(),
            Kind::EulerPhi => "euler_phi".into(),
            Kind::DivisorTau => "divisor_tau".into(),
        }
    }

    /// Cache kind tag: low byte selects the family, high byte the power.
    pub fn tag(&self) -> u16 {
        match self {
            Kind::One => 0,
            Kind::Epsilon => 1,
            Kind::Mobius => 2,
            Kind::Liouville => 3,
            Kind::VonMangoldt => 4,
            Kind::EulerPhi => 5,
            Kind::DivisorTau => 6,
            Kind::IdPow(a) => 7 | ((*a as u16) << 8),
            Kind::LogPow(k) => 8 | ((*k as u16) << 8),
        }
    }

    pub fn from_tag(tag: u16) -> Option<Kind> {
        let hi = tag >> 8;
        match tag & 0xff {
            0 => Some(Kind::One),
            1 => Some(Kind::Epsilon),
            2 => Some(Kind::Mobius),
            3 => Some(Kind::Liouville),
            4 => Some(Kind::VonMangoldt),
            5 => Some(Kind::EulerPhi),
            6 => Some(Kind::DivisorTau),
            7 => Some(Kind::IdPow(hi as u32)),
            8 => Some(Kind::LogPow(hi as u32)),
            _ => None,
        }
    }

    /// Parse a CLI name: `one`, `epsilon`, `mobius`, `liouville`,
    /// `von-mangoldt`, `euler-phi`, `divisor-tau`, `id`, `id^2`, `log`,
    /// `log^3`, `zero`.
    pub fn from_name(name: &str) -> Option<Kind> {
        match name {
            "one" | "1" => Some(Kind::One),
            "epsilon" | "eps" => Some(Kind::Epsilon),
            "mobius" | "mu" => Some(Kind::Mobius),
            "liouville" | "lambda-liouville" => Some(Kind::Liouville),
            "von-mangoldt" | "von_mangoldt" | "lambda" => Some(Kind::VonMangoldt),
            "euler-phi" | "euler_phi" | "phi" => Some(Kind::EulerPhi),
            "divisor-tau" | "divisor_tau" | "tau" => Some(Kind::DivisorTau),
            "id" => Some(Kind::IdPow(1)),
            "log" => Some(Kind::LogPow(1)),
            _ => {
                let (base, pow) = name.split_once('^')?;
                let p: u32 = pow.parse().ok()?;
                match base {
                    "id" => Some(Kind::IdPow(p)),
                    "log" => Some(Kind::LogPow(p)),
                    _ => None,
                }
            }
        }
    }

    pub fn all_names() -> &'static [&'static str] {
        &[
            "one",
            "epsilon",
            "mobius",
            "liouville",
            "von-mangoldt",
            "euler-phi",
            "divisor-tau",
            "id",
            "id^K",
            "log",
            "log^K",
        ]
    }
}

/// Build the dense table f(1..=N) for a classical function.
pub fn build_classical(kind: Kind, n: usize) -> Result<FunctionTable> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    check_capacity("table N", n, MAX_N)?;
    let label = kind.label();
    match kind {
        Kind::One => Ok(FunctionTable::from_int(label, vec![1i64; n])),
        Kind::Epsilon => {
            let mut v = vec![0i64; n];
            v[0] = 1;
            Ok(FunctionTable::from_int(label, v))
        }
        Kind::IdPow(a) => {
            let mut v = vec![0i64; n];
            for (i, slot) in v.iter_mut().enumerate() {
                let base = (i + 1) as i64;
                let mut acc = 1i64;
                for _ in 0..a {
                    acc = acc.checked_mul(base).ok_or(Error::Capacity {
                        what: "id^a overflows i64",
                        requested: (i + 1) as u64,
                        limit: 0,
                    })?;
                }
                *slot = acc;
            }
            Ok(FunctionTable::from_int(label, v))
        }
        Kind::LogPow(k) => {
            let v: Vec<f64> = (1..=n)
                .map(|m| (m as f64).ln().powi(k as i32))
                .collect();
            FunctionTable::from_real(label, v)
        }
        Kind::Mobius => {
            let spf = sieve_spf(n.max(2))?;
            let mut v = vec![0i64; n];
            v[0] = 1;
            for m in 2..=n {
                let p = spf[m] as usize;
                let rest = m / p;
                v[m - 1] = if rest.is_multiple_of(p) { 0 } else { -v[rest - 1] };
            }
            Ok(FunctionTable::from_int(label, v))
        }
        Kind::Liouville => {
            let spf = sieve_spf(n.max(2))?;
            let mut v = vec![0i64; n];
            v[0] = 1;
            for m in 2..=n {
                let p = spf[m] as usize;
                v[m - 1] = -v[m / p - 1];
            }
            Ok(FunctionTable::from_int(label, v))
        }
        Kind::EulerPhi => {
            let spf = sieve_spf(n.max(2))?;
            let mut v = vec![0i64; n];
            v[0] = 1;
            for m in 2..=n {
                let p = spf[m] as usize;
                let rest = m / p;
                v[m - 1] = if rest.is_multiple_of(p) {
                    v[rest - 1] * p as i64
                } else {
                    v[rest - 1] * (p as i64 - 1)
                };
            }
            Ok(FunctionTable::from_int(label, v))
        }
        Kind::DivisorTau => {
            let spf = sieve_spf(n.max(2))?;
            let mut v = vec![0i64; n];
            // exponent of spf(m) in m, for the (e+1) factor update
            let mut exp = vec![0u32; n + 1];
            v[0] = 1;
            for m in 2..=n {
                let p = spf[m] as usize;
                let rest = m / p;
                if rest.is_multiple_of(p) {
                    exp[m] = exp[rest] + 1;
                    v[m - 1] = v[rest - 1] / (exp[rest] as i64 + 1) * (exp[m] as i64 + 1);
                } else {
                    exp[m] = 1;
                    v[m - 1] = v[rest - 1] * 2;
                }
            }
            Ok(FunctionTable::from_int(label, v))
        }
        Kind::VonMangoldt => {
            let spf = sieve_spf(n.max(2))?;
            let mut v = vec![0f64; n];
            for m in 2..=n {
                if let Some((p, _)) = prime_power(&spf, m) {
                    v[m - 1] = (p as f64).ln();
                }
            }
            FunctionTable::from_real(label, v)
        }
    }
}
