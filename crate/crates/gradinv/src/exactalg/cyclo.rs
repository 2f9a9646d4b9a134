//! Elements of the cyclotomic field Q(ζ_N) in the power basis modulo the
//! N-th cyclotomic polynomial, with integer numerators over a common
//! positive denominator.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduction tables for one conductor.
pub struct Field {
    pub n: u32,
    pub phi: usize,
    /// x^k reduced mod Φ_N, for 0 ≤ k < 2N.
    powers: Vec<Vec<i64>>,
    units: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.n)
    }
}

fn poly_divexact(a: &[i64], b: &[i64]) -> Vec<i64> {
    // a / b for integer polynomials with b monic, low degree first.
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for j in 0..=db {
            r[i + j] -= c * b[j];
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_divexact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl Field {
    fn build(n: u32) -> Field {
        let phi_poly = cyclotomic_poly(n);
        let phi = phi_poly.len() - 1;
        let mut powers = Vec::with_capacity(2 * n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..(2 * n as usize).max(2 * phi) {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1];
            }
            for i in 0..phi {
                next[i] -= top * phi_poly[i];
            }
            cur = next;
        }
        let units = (1..=n).filter(|k| k.gcd(&n) == 1).collect();
        Field { n, phi, powers, units }
    }

    pub fn get(n: u32) -> &'static Field {
        static CACHE: OnceLock<Mutex<HashMap<u32, &'static Field>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard.entry(n).or_insert_with(|| Box::leak(Box::new(Field::build(n))))
    }

    fn pow_vec(&self, k: usize) -> &[i64] {
        &self.powers[k % self.n as usize]
    }
}

#[derive(Clone)]
pub struct Cyc {
    f: &'static Field,
    den: i64,
    /// Empty for zero, otherwise length φ(N).
    num: Vec<i64>,
}

impl PartialEq for Cyc {
    fn eq(&self, o: &Cyc) -> bool {
        self.f.n == o.f.n && self.den == o.den && self.num == o.num
    }
}
impl Eq for Cyc {}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let r = Rational64::new(c, self.den);
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{r}")?,
                _ => write!(f, "({r})z{}^{k}", self.f.n)?,
            }
        }
        Ok(())
    }
}

impl Cyc {
    pub fn zero(n: u32) -> Cyc {
        Cyc { f: Field::get(n), den: 1, num: Vec::new() }
    }

    pub fn field(&self) -> &'static Field {
        self.f
    }

    pub fn conductor(&self) -> u32 {
        self.f.n
    }

    pub fn from_int(n: u32, v: i64) -> Cyc {
        Cyc::from_rational(n, Rational64::from_integer(v))
    }

    pub fn one(n: u32) -> Cyc {
        Cyc::from_int(n, 1)
    }

    pub fn from_rational(n: u32, r: Rational64) -> Cyc {
        let f = Field::get(n);
        let mut num = vec![0i64; f.phi];
        num[0] = *r.numer();
        Cyc::normalized(f, *r.denom(), num)
    }

    /// ζ_N^k.
    pub fn zeta(n: u32, k: i64) -> Cyc {
        let f = Field::get(n);
        let k = k.rem_euclid(n as i64) as usize;
        Cyc::normalized(f, 1, f.pow_vec(k).to_vec())
    }

    /// The imaginary unit; needs 4 | N.
    pub fn i(n: u32) -> Cyc {
        assert!(n.is_multiple_of(4), "conductor {n} does not contain i");
        Cyc::zeta(n, n as i64 / 4)
    }

    pub fn from_coeffs(n: u32, coeffs: &[Rational64]) -> Result<Cyc> {
        let f = Field::get(n);
        if coeffs.len() != f.phi {
            return Err(Error::Parse(format!("expected {} coefficients for conductor {n}", f.phi)));
        }
        let den = coeffs.iter().fold(1i64, |l, c| l.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (den / c.denom())).collect();
        Ok(Cyc::normalized(f, den, num))
    }

    pub fn coeffs(&self) -> Vec<Rational64> {
        if self.is_zero() {
            return vec![Rational64::from_integer(0); self.f.phi];
        }
        self.num.iter().map(|&c| Rational64::new(c, self.den)).collect()
    }

    fn normalized(f: &'static Field, den: i64, mut num: Vec<i64>) -> Cyc {
        if num.iter().all(|&c| c == 0) {
            return Cyc { f, den: 1, num: Vec::new() };
        }
        let mut g = den.abs();
        for &c in &num {
            if g == 1 {
                break;
            }
            g = g.gcd(&c);
        }
        let sign = if den < 0 { -1 } else { 1 };
        let g = g * sign;
        if g != 1 {
            for c in num.iter_mut() {
                *c /= g;
            }
        }
        Cyc { f, den: den / g, num }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den == 1 && !self.num.is_empty() && self.num[0] == 1 && self.num[1..].iter().all(|&c| c == 0)
    }

    fn same_field(&self, o: &Cyc) {
        assert_eq!(self.f.n, o.f.n, "mixed conductors");
    }

    pub fn add(&self, o: &Cyc) -> Cyc {
        self.same_field(o);
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(a, b)| a + b).collect();
            return Cyc::normalized(self.f, self.den, num);
        }
        let l = self.den.lcm(&o.den);
        let (sa, sb) = (l / self.den, l / o.den);
        let num = self.num.iter().zip(&o.num).map(|(a, b)| a * sa + b * sb).collect();
        Cyc::normalized(self.f, l, num)
    }

    pub fn neg(&self) -> Cyc {
        Cyc { f: self.f, den: self.den, num: self.num.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Cyc) -> Cyc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Cyc) -> Cyc {
        self.same_field(o);
        if self.is_zero() || o.is_zero() {
            return Cyc::zero(self.f.n);
        }
        let phi = self.f.phi;
        let mut prod = vec![0i64; 2 * phi - 1];
        for (i, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.num.iter().enumerate() {
                if b != 0 {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut num = prod[..phi].to_vec();
        for (k, &c) in prod.iter().enumerate().skip(phi) {
            if c != 0 {
                for (t, &p) in self.f.pow_vec(k).iter().enumerate() {
                    num[t] += c * p;
                }
            }
        }
        Cyc::normalized(self.f, self.den * o.den, num)
    }

    pub fn scale_int(&self, k: i64) -> Cyc {
        Cyc::normalized(self.f, self.den, self.num.iter().map(|c| c * k).collect())
    }

    pub fn scale_rational(&self, r: Rational64) -> Cyc {
        if self.is_zero() {
            return self.clone();
        }
        Cyc::normalized(self.f, self.den * r.denom(), self.num.iter().map(|c| c * r.numer()).collect())
    }

    /// Image under ζ ↦ ζ^k, k coprime to N.
    pub fn galois(&self, k: u32) -> Cyc {
        if self.is_zero() {
            return self.clone();
        }
        let mut num = vec![0i64; self.f.phi];
        for (j, &c) in self.num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = (j as u64 * k as u64) % self.f.n as u64;
            for (t, &p) in self.f.pow_vec(e as usize).iter().enumerate() {
                num[t] += c * p;
            }
        }
        Cyc::normalized(self.f, self.den, num)
    }

    pub fn conj(&self) -> Cyc {
        self.galois(self.f.n - 1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn rational_value(&self) -> Option<Rational64> {
        if self.is_zero() {
            return Some(Rational64::from_integer(0));
        }
        if self.num[1..].iter().all(|&c| c == 0) {
            Some(Rational64::new(self.num[0], self.den))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::Numerical("inverse of zero".into()));
        }
        let mut p = Cyc::one(self.f.n);
        for &k in &self.f.units {
            if k != 1 {
                p = p.mul(&self.galois(k));
            }
        }
        let norm = self.mul(&p).rational_value().expect("norm is rational");
        Ok(p.scale_rational(norm.recip()))
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        let mut z = num_complex::Complex64::new(0.0, 0.0);
        let n = self.f.n as f64;
        for (k, &c) in self.num.iter().enumerate() {
            if c != 0 {
                let a = 2.0 * std::f64::consts::PI * k as f64 / n;
                z += num_complex::Complex64::new(a.cos(), a.sin()) * c as f64;
            }
        }
        z / self.den as f64
    }

    /// Sign of a real element: exact zero test, sign read from a float
    /// evaluation with a separation check.
    pub fn real_sign(&self) -> Result<i8> {
        if !self.is_real() {
            return Err(Error::Numerical(format!("{self} is not real")));
        }
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(r) = self.rational_value() {
            return Ok(if r > Rational64::from_integer(0) { 1 } else { -1 });
        }
        let v = self.to_c64().re;
        let scale: f64 = self.num.iter().map(|&c| (c as f64).abs()).sum::<f64>() / self.den as f64;
        if v.abs() <= 1e-9 * scale.max(1.0) {
            return Err(Error::Numerical(format!("cannot separate {self} from zero")));
        }
        Ok(if v > 0.0 { 1 } else { -1 })
    }

    /// k with self = ζ_N^k, if self is an N-th root of unity.
    pub fn root_of_unity_exponent(&self) -> Option<u32> {
        if self.den != 1 || self.is_zero() {
            return None;
        }
        (0..self.f.n).find(|&k| self.f.pow_vec(k as usize) == &self.num[..])
    }

    /// The same number in Q(ζ_M) for N | M.
    pub fn lift(&self, m: u32) -> Cyc {
        assert!(m.is_multiple_of(self.f.n), "cannot lift conductor {} to {m}", self.f.n);
        let g = Field::get(m);
        if self.is_zero() {
            return Cyc::zero(m);
        }
        let step = (m / self.f.n) as usize;
        let mut num = vec![0i64; g.phi];
        for (j, &c) in self.num.iter().enumerate() {
            if c != 0 {
                for (t, &p) in g.pow_vec(j * step).iter().enumerate() {
                    num[t] += c * p;
                }
            }
        }
        Cyc::normalized(g, self.den, num)
    }
}

/// JSON dump {"N":8,"c":["1/2","0",...]}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycDoc {
    #[serde(rename = "N")]
    pub n: u32,
    pub c: Vec<String>,
}

impl From<&Cyc> for CycDoc {
    fn from(z: &Cyc) -> CycDoc {
        CycDoc { n: z.conductor(), c: z.coeffs().iter().map(crate::forms::fmt_rational).collect() }
    }
}

impl CycDoc {
    pub fn to_cyc(&self) -> Result<Cyc> {
        let c = self.c.iter().map(|s| crate::forms::parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Cyc::from_coeffs(self.n, &c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(Field::get(20).phi, 8);
    }

    #[test]
    fn roots_of_unity() {
        for n in [4u32, 8, 12, 20] {
            let z = Cyc::zeta(n, 1);
            let mut p = Cyc::one(n);
            for _ in 0..n {
                p = p.mul(&z);
            }
            assert!(p.is_one());
            assert_eq!(z.mul(&z.conj()), Cyc::one(n));
            assert_eq!(Cyc::zeta(n, 3).root_of_unity_exponent(), Some(3));
        }
        let i = Cyc::i(8);
        assert_eq!(i.mul(&i), Cyc::from_int(8, -1));
    }

    #[test]
    fn inverses_and_signs() {
        let n = 12;
        let x = Cyc::one(n).add(&Cyc::zeta(n, 1)).add(&Cyc::from_int(n, 3));
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        let c = Cyc::zeta(n, 1).add(&Cyc::zeta(n, -1));
        assert!(c.is_real());
        assert_eq!(c.real_sign().unwrap(), 1);
        assert_eq!(c.neg().real_sign().unwrap(), -1);
        assert!(Cyc::i(n).real_sign().is_err());
    }

    #[test]
    fn lifting() {
        let z = Cyc::zeta(4, 1);
        assert_eq!(z.lift(8), Cyc::zeta(8, 2));
        let w = Cyc::zeta(6, 1).lift(12);
        assert_eq!(w, Cyc::zeta(12, 2));
    }

    #[test]
    fn doc_roundtrip() {
        let z = Cyc::zeta(8, 1).scale_rational(Rational64::new(1, 2));
        let d = CycDoc::from(&z);
        assert_eq!(d.c, vec!["0", "1/2", "0", "0"]);
        assert_eq!(d.to_cyc().unwrap(), z);
    }
}
