//! Exact integer combinations of roots of unity.
//!
//! A value is stored sparsely as `Σ c_q · e^{2πi q}` with `q` a rational
//! turn in `[0, 1)`. Equality and integrality are decided by reducing the
//! dense polynomial in `ζ_L` modulo the cyclotomic polynomial `Φ_L`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_rational::Ratio;

/// A fraction of a full turn, normalized into `[0, 1)`.
pub type Turn = Ratio<i64>;

/// Reduce a turn modulo 1.
pub fn wrap(q: Turn) -> Turn {
    q - q.floor()
}

pub fn turn(num: i64, den: i64) -> Turn {
    wrap(Ratio::new(num, den))
}

#[derive(Clone, Debug, Default)]
pub struct Cyclotomic {
    terms: BTreeMap<Turn, i64>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn integer(n: i64) -> Self {
        let mut c = Self::zero();
        c.add_term(Ratio::from_integer(0), n);
        c
    }

    /// `e^{2πi q}`.
    pub fn root(q: Turn) -> Self {
        let mut c = Self::zero();
        c.add_term(q, 1);
        c
    }

    /// `2 cos(2π q)`, stored as `ζ^q + ζ^{-q}`.
    pub fn two_cos(q: Turn) -> Self {
        let mut c = Self::root(q);
        c.add_term(-q, 1);
        c
    }

    pub fn add_term(&mut self, q: Turn, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let q = wrap(q);
        let slot = self.terms.entry(q).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&q);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Turn, i64)> + '_ {
        self.terms.iter().map(|(q, c)| (*q, *c))
    }

    /// Least common denominator of the stored turns.
    pub fn conductor(&self) -> i64 {
        self.terms.keys().fold(1, |l, q| l.lcm(q.denom()))
    }

    /// Remainder of the dense polynomial modulo `Φ_L`, `L` the conductor.
    fn reduced(&self) -> Vec<i64> {
        let l = self.conductor();
        let mut dense = vec![0i64; l as usize];
        for (q, c) in &self.terms {
            dense[(q.numer() * (l / q.denom())) as usize] += c;
        }
        let phi = cyclotomic_poly(l as u64);
        let deg = phi.len() - 1;
        for i in (deg..dense.len()).rev() {
            let lead = dense[i];
            if lead != 0 {
                for (k, p) in phi.iter().enumerate() {
                    dense[i - deg + k] -= lead * p;
                }
            }
        }
        dense.truncate(deg.max(1));
        dense
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|&c| c == 0)
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<i64> {
        let r = self.reduced();
        if r[1..].iter().all(|&c| c == 0) {
            Some(r[0])
        } else {
            None
        }
    }

    pub fn re(&self) -> f64 {
        self.terms
            .iter()
            .map(|(q, c)| *c as f64 * (std::f64::consts::TAU * ratio_f64(*q)).cos())
            .sum()
    }

    pub fn im(&self) -> f64 {
        self.terms
            .iter()
            .map(|(q, c)| *c as f64 * (std::f64::consts::TAU * ratio_f64(*q)).sin())
            .sum()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (q, c) in &self.terms {
            out.add_term(-*q, *c);
        }
        out
    }
}

fn ratio_f64(q: Turn) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl Eq for Cyclotomic {}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        for (q, c) in &rhs.terms {
            self.add_term(*q, *c);
        }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self += &rhs;
        self
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        let mut out = Self::zero();
        for (q, c) in self.terms {
            out.add_term(q, -c);
        }
        out
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        self + (-rhs)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let mut out = Cyclotomic::zero();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.add_term(*p + *q, a * b);
            }
        }
        out
    }
}

impl Mul<i64> for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, k: i64) -> Cyclotomic {
        let mut out = Cyclotomic::zero();
        for (q, c) in self.terms {
            out.add_term(q, c * k);
        }
        out
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_integer() {
            return write!(f, "{n}");
        }
        // Real values of the form 2cos(2πq) print as such.
        if self.terms.len() == 2 {
            let v: Vec<_> = self.terms().collect();
            if v[0].1 == 1 && v[1].1 == 1 && wrap(v[0].0 + v[1].0) == Ratio::from_integer(0) {
                return write!(f, "2cos(2pi*{})", v[0].0);
            }
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(q, c)| format!("{c}*E({})", q))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type PolyCache = Mutex<HashMap<u64, Arc<Vec<i64>>>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients (low degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = exact_div(&num, &cyclotomic_poly(d));
    }
    let p = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, p.clone());
    p
}

/// Exact division by a monic polynomial.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let lead = rem[i + dn];
        quot[i] = lead;
        for (k, c) in den.iter().enumerate() {
            rem[i + k] -= lead * c;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}
