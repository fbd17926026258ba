use crate::error::{LatticeError, Result};

pub const SUPPORTED_ORDERS: [usize; 7] = [2, 3, 4, 5, 7, 8, 9];

/// A small finite field with precomputed tables. Elements are `0..q`; for
/// `q = p^k` the digits of an element in base `p` are polynomial coefficients.
#[derive(Clone, Debug)]
pub struct Gf {
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl Gf {
    pub fn new(q: usize) -> Result<Self> {
        // Modulus coefficients, constant term first, leading 1 last.
        let (p, modulus): (usize, &[usize]) = match q {
            2 | 3 | 5 | 7 => (q, &[0, 1]),
            4 => (2, &[1, 1, 1]),
            8 => (2, &[1, 1, 0, 1]),
            9 => (3, &[1, 0, 1]),
            _ => {
                return Err(LatticeError::ArgumentOutOfRange(format!(
                    "field order {q} not in {SUPPORTED_ORDERS:?}"
                )))
            }
        };
        let k = modulus.len() - 1;
        let digits = |mut a: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let undigits = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s);
                if k == 1 {
                    mul[a * q + b] = a * b % p;
                    continue;
                }
                let mut prod = vec![0; 2 * k - 1];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for deg in (k..prod.len()).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (i, &m) in modulus.iter().enumerate() {
                            let idx = deg - k + i;
                            prod[idx] = (prod[idx] + (p - c) * m) % p;
                        }
                    }
                }
                mul[a * q + b] = undigits(&prod[..k]);
            }
        }
        Ok(Gf { q, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }
}
