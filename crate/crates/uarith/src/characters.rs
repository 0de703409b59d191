//! Dirichlet characters mod q, enumerated against canonical generators of
//! the unit group (Z/qZ)*.
//!
//! Values are held exactly as exponents of a common root of unity: the
//! entry for a residue r is e with chi(r) = exp(2*pi*i*e/L), where L is the
//! exponent of the unit group. Multiplicativity is therefore exact.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::table::FunctionTable;

/// Largest modulus accepted by `character_group`.
pub const MAX_Q: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    modulus: usize,
    index: usize,
    order: u64,
    principal: bool,
    /// Common root-of-unity order (exponent of the unit group).
    unity_order: u64,
    /// exps[r] = Some(e) means chi(r) = exp(2*pi*i*e/unity_order);
    /// None when gcd(r, q) > 1.
    exps: Vec<Option<u64>>,
}

impl CharacterTable {
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_principal(&self) -> bool {
        self.principal
    }

    pub fn unity_order(&self) -> u64 {
        self.unity_order
    }

    /// Exact exponent at residue r (0..q), None off the units.
    pub fn exponent(&self, r: usize) -> Option<u64> {
        self.exps[r % self.modulus]
    }

    /// chi(r) for a residue r in 0..q.
    pub fn value(&self, r: usize) -> Complex64 {
        self.eval(r)
    }

    /// chi(n) for any n >= 0, by period-q extension.
    pub fn eval(&self, n: usize) -> Complex64 {
        match self.exps[n % self.modulus] {
            None => Complex64::new(0.0, 0.0),
            Some(0) => Complex64::new(1.0, 0.0),
            Some(e) => {
                let theta = 2.0 * std::f64::consts::PI * e as f64 / self.unity_order as f64;
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }

    /// Periodic extension chi(1..=N) as a complex table.
    pub fn to_table(&self, n: usize) -> Result<FunctionTable> {
        let vals: Vec<Complex64> = (1..=n).map(|m| self.eval(m)).collect();
        FunctionTable::from_complex(format!("chi_mod{}_idx{}", self.modulus, self.index), vals)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn primitive_root(m: u64, phi: u64) -> u64 {
    let factors = factorize(phi);
    'outer: for g in 2..m {
        if gcd(g, m) != 1 {
            continue;
        }
        for (p, _) in &factors {
            if pow_mod(g, phi / p, m) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("primitive root exists for odd prime powers")
}

/// One cyclic factor of (Z/qZ)*: generator of order `order` modulo the
/// prime-power component `modulus`, with a precomputed discrete-log table.
struct CyclicFactor {
    modulus: u64,
    order: u64,
    /// dlog[r] = t with generator^t = r (mod modulus), for units r only.
    dlog: Vec<Option<u64>>,
}

impl CyclicFactor {
    fn new(modulus: u64, generator: u64, order: u64) -> CyclicFactor {
        let mut dlog = vec![None; modulus as usize];
        let mut acc = 1u64 % modulus;
        for t in 0..order {
            dlog[acc as usize] = Some(t);
            acc = acc * generator % modulus;
        }
        CyclicFactor {
            modulus,
            order,
            dlog,
        }
    }
}

/// Cyclic decomposition of (Z/qZ)*: trivial 2-part for q = 2, the {-1}
/// factor then the {5} factor for 8 | q, and one factor per odd prime
/// power, primes ascending.
fn unit_group_factors(q: u64) -> Vec<CyclicFactor> {
    let mut factors = Vec::new();
    for (p, e) in factorize(q) {
        let pe = p.pow(e);
        if p == 2 {
            match e {
                1 => {}
                2 => factors.push(CyclicFactor::new(4, 3, 2)),
                _ => {
                    // (Z/2^e)* = <-1> x <5>; every unit is (-1)^s 5^t, so
                    // the two discrete logs must be tabulated jointly --
                    // neither generator alone reaches all units.
                    let half = pe / 4;
                    let mut d_sign = vec![None; pe as usize];
                    let mut d_five = vec![None; pe as usize];
                    let mut acc = 1u64;
                    for t in 0..half {
                        d_sign[acc as usize] = Some(0);
                        d_five[acc as usize] = Some(t);
                        d_sign[(pe - acc) as usize] = Some(1);
                        d_five[(pe - acc) as usize] = Some(t);
                        acc = acc * 5 % pe;
                    }
                    factors.push(CyclicFactor {
                        modulus: pe,
                        order: 2,
                        dlog: d_sign,
                    });
                    factors.push(CyclicFactor {
                        modulus: pe,
                        order: half,
                        dlog: d_five,
                    });
                }
            }
        } else {
            let phi = pe / p * (p - 1);
            let g = primitive_root(pe, phi);
            factors.push(CyclicFactor::new(pe, g, phi));
        }
    }
    factors
}

/// All phi(q) Dirichlet characters mod q, enumerated lexicographically by
/// exponent vector against the canonical generators. Index 0 is principal.
pub fn character_group(q: usize) -> Result<Vec<CharacterTable>> {
    if q == 0 {
        return Err(Error::InvalidParameter("modulus must be >= 1".into()));
    }
    if q > MAX_Q {
        return Err(Error::Capacity {
            what: "character modulus",
            requested: q as u64,
            limit: MAX_Q as u64,
        });
    }
    let qq = q as u64;
    let factors = unit_group_factors(qq);
    let unity_order = factors.iter().fold(1u64, |l, f| lcm(l, f.order)).max(1);
    let phi_q: u64 = factors.iter().map(|f| f.order).product();

    // Per-residue discrete logs against every factor, None off the units.
    let logs: Vec<Option<Vec<u64>>> = (0..q)
        .map(|r| {
            if gcd(r as u64, qq) != 1 {
                return None;
            }
            factors
                .iter()
                .map(|f| f.dlog[(r as u64 % f.modulus) as usize])
                .collect()
        })
        .collect();

    let mut out = Vec::with_capacity(phi_q as usize);
    let mut exps_vec = vec![0u64; factors.len()];
    for index in 0..phi_q as usize {
        // decode index -> exponent vector, first factor most significant
        let mut rem = index as u64;
        for (j, f) in factors.iter().enumerate().rev() {
            exps_vec[j] = rem % f.order;
            rem /= f.order;
        }
        let order = factors
            .iter()
            .zip(&exps_vec)
            .fold(1u64, |o, (f, &c)| lcm(o, f.order / gcd(c, f.order)));
        let exps: Vec<Option<u64>> = logs
            .iter()
            .map(|l| {
                l.as_ref().map(|ts| {
                    factors
                        .iter()
                        .zip(&exps_vec)
                        .zip(ts)
                        .map(|((f, &c), &t)| c * t % f.order * (unity_order / f.order) % unity_order)
                        .fold(0u64, |acc, e| (acc + e) % unity_order)
                })
            })
            .collect();
        out.push(CharacterTable {
            modulus: q,
            index,
            order,
            principal: index == 0,
            unity_order,
            exps,
        });
    }
    Ok(out)
}
