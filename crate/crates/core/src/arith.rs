//! Integer foundations: frequency/shift parameters, gcd and lcm, simultaneous
//! congruences and the sharp/flat factorization of the frequency vector.

use crate::error::{Error, Result};

/// Frequency vector `m` and shift vector `kappa` of one node family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamVec {
    m: Vec<u64>,
    kappa: Vec<i64>,
    p: u64,
    lcm: u64,
}

/// Largest supported dimension; faces are stored as bitmasks.
pub const MAX_DIM: usize = 63;

impl ParamVec {
    pub fn new(m: Vec<u64>, kappa: Vec<i64>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::InvalidParams("dimension must be at least 1".into()));
        }
        if m.len() > MAX_DIM {
            return Err(Error::InvalidParams(format!("dimension {} exceeds {MAX_DIM}", m.len())));
        }
        if m.len() != kappa.len() {
            return Err(Error::InvalidParams(format!(
                "m has {} entries but kappa has {}",
                m.len(),
                kappa.len()
            )));
        }
        if let Some(j) = m.iter().position(|&v| v == 0) {
            return Err(Error::InvalidParams(format!("m_{} must be positive", j + 1)));
        }
        let p = product(&m)?;
        let l = lcm_vec(&m)?;
        let max_m = *m.iter().max().unwrap();
        // Congruence arithmetic works with values up to 2 p[m] max(m).
        p.checked_mul(2)
            .and_then(|v| v.checked_mul(max_m))
            .filter(|&v| v <= i64::MAX as u64)
            .ok_or_else(|| Error::Overflow(format!("2 * p[m] * max(m) exceeds 64-bit range for m = {m:?}")))?;
        Ok(ParamVec { m, kappa, p, lcm: l })
    }

    /// Zero shift vector.
    pub fn unshifted(m: Vec<u64>) -> Result<Self> {
        let d = m.len();
        Self::new(m, vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    pub fn kappa(&self) -> &[i64] {
        &self.kappa
    }

    /// `kappa_j mod 2`.
    pub fn kappa_parity(&self, j: usize) -> u64 {
        self.kappa[j].rem_euclid(2) as u64
    }

    /// `p[m]`, the product of the frequencies.
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn lcm(&self) -> u64 {
        self.lcm
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .filter(|&v| v <= i64::MAX as u64)
        .ok_or_else(|| Error::Overflow(format!("lcm({a}, {b})")))
}

pub fn lcm_vec(m: &[u64]) -> Result<u64> {
    if m.is_empty() || m.contains(&0) {
        return Err(Error::InvalidParams("lcm needs a non-empty sequence of positive integers".into()));
    }
    m.iter().try_fold(1, |acc, &v| lcm(acc, v))
}

pub fn product(m: &[u64]) -> Result<u64> {
    m.iter()
        .try_fold(1u64, |acc, &v| acc.checked_mul(v))
        .filter(|&v| v <= i64::MAX as u64)
        .ok_or_else(|| Error::Overflow(format!("product of {m:?}")))
}

// (g, x) with g = gcd(a, b) and a x ≡ g mod b.
fn ext_gcd(a: i128, b: i128) -> (i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0, s0)
}

/// The unique `l` in `0..lcm(k)` with `l ≡ a_i mod k_i` for all `i`.
pub fn crt_solve(k: &[u64], a: &[i64]) -> Result<u64> {
    if k.len() != a.len() {
        return Err(Error::InvalidParams("moduli and residues differ in length".into()));
    }
    lcm_vec(k)?;
    for i in 0..k.len() {
        for j in i + 1..k.len() {
            let g = gcd(k[i], k[j]) as i128;
            if (a[i] as i128 - a[j] as i128).rem_euclid(g) != 0 {
                return Err(Error::Incompatible { i, j });
            }
        }
    }
    let (mut x, mut modulus) = (0i128, 1i128);
    for (&ki, &ai) in k.iter().zip(a) {
        let ki = ki as i128;
        let ai = (ai as i128).rem_euclid(ki);
        let (g, inv) = ext_gcd(modulus, ki);
        let step = ki / g;
        let t = ((ai - x) / g).rem_euclid(step) * inv.rem_euclid(step) % step;
        x += modulus * t;
        modulus *= step;
        x = x.rem_euclid(modulus);
    }
    Ok(x as u64)
}

/// Factorization `m_i = m_flat_i * m_sharp_i` with pairwise coprime `m_sharp`
/// and `lcm(m) = prod(m_sharp)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SharpFlat {
    pub m_sharp: Vec<u64>,
    pub m_flat: Vec<u64>,
}

impl SharpFlat {
    /// `p[m_flat]`, the number of curves in the generating family.
    pub fn flat_product(&self) -> u64 {
        self.m_flat.iter().product()
    }

    /// `p[m_sharp]`, which equals `lcm(m)`.
    pub fn sharp_product(&self) -> u64 {
        self.m_sharp.iter().product()
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Builds the factorization prime by prime in increasing order. Each prime
/// power goes, at its highest exponent, to the first coordinate attaining that
/// exponent; in every other coordinate it goes to the flat part.
pub fn sharp_flat_decompose(m: &[u64]) -> SharpFlat {
    let d = m.len();
    let factors: Vec<Vec<(u64, u32)>> = m.iter().map(|&v| factorize(v)).collect();
    let mut primes: Vec<u64> = factors.iter().flatten().map(|&(p, _)| p).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut m_sharp = vec![1u64; d];
    let mut m_flat = vec![1u64; d];
    for p in primes {
        let exps: Vec<u32> = factors
            .iter()
            .map(|f| f.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e))
            .collect();
        let top = *exps.iter().max().unwrap();
        let owner = exps.iter().position(|&e| e == top).unwrap();
        for (j, &e) in exps.iter().enumerate() {
            if j == owner {
                m_sharp[j] *= p.pow(e);
            } else {
                m_flat[j] *= p.pow(e);
            }
        }
    }
    SharpFlat { m_sharp, m_flat }
}

pub fn validate_sharp_flat(m: &[u64], cand: &SharpFlat) -> bool {
    let d = m.len();
    if cand.m_sharp.len() != d || cand.m_flat.len() != d {
        return false;
    }
    let factors_ok = (0..d).all(|i| {
        cand.m_flat[i].checked_mul(cand.m_sharp[i]) == Some(m[i]) && gcd(cand.m_flat[i], cand.m_sharp[i]) == 1
    });
    let coprime = (0..d).all(|i| (i + 1..d).all(|j| gcd(cand.m_sharp[i], cand.m_sharp[j]) == 1));
    let lcm_ok = match (lcm_vec(m), product(&cand.m_sharp)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    factors_ok && coprime && lcm_ok
}
