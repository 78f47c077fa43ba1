//! Discrete-log tables for `F_q`.
//!
//! Elements are addressed by their code: the residue itself for `F_p`, and
//! `sum c_i p^i` for `F_p[x]/(m)`. Units are addressed by their log with
//! respect to the smallest-code primitive element.

use super::poly::Poly;

#[derive(Debug)]
pub struct FiniteTables {
    pub p: u64,
    pub q: u64,
    modulus: Option<Poly>,
    exp: Vec<u64>,
    log: Vec<u32>,
    one_minus: Vec<Option<u32>>,
    minus_one: u32,
    least_nonsquare: u64,
}

impl FiniteTables {
    pub(crate) fn new(p: u64, modulus: Option<Poly>) -> Self {
        let q = match &modulus {
            None => p,
            Some(m) => p.pow(m.deg().unwrap() as u32),
        };
        let order = q - 1;
        let mut t = FiniteTables {
            p,
            q,
            modulus,
            exp: Vec::new(),
            log: vec![u32::MAX; q as usize],
            one_minus: Vec::new(),
            minus_one: 0,
            least_nonsquare: 0,
        };
        for g in 2..q {
            let mut powers = Vec::with_capacity(order as usize);
            let mut x = 1u64;
            for _ in 0..order {
                powers.push(x);
                x = t.mul_code(x, g);
                if x == 1 {
                    break;
                }
            }
            if powers.len() as u64 == order {
                t.exp = powers;
                break;
            }
        }
        for (i, &c) in t.exp.iter().enumerate() {
            t.log[c as usize] = i as u32;
        }
        t.minus_one = t.log[t.neg_code(1) as usize];
        t.one_minus = (0..order)
            .map(|i| {
                let c = t.sub_code(1, t.exp[i as usize]);
                (c != 0).then(|| t.log[c as usize])
            })
            .collect();
        t.least_nonsquare = (1..q).find(|&c| t.log[c as usize] % 2 == 1).unwrap_or(0);
        t
    }

    pub fn order(&self) -> u32 {
        (self.q - 1) as u32
    }

    pub fn exp(&self, i: u32) -> u64 {
        self.exp[(i % self.order()) as usize]
    }

    pub fn log(&self, code: u64) -> u32 {
        debug_assert!(code != 0);
        self.log[code as usize]
    }

    pub fn minus_one(&self) -> u32 {
        self.minus_one
    }

    /// `log(1 - g^i)`, or `None` when `g^i = 1`.
    pub fn one_minus(&self, i: u32) -> Option<u32> {
        self.one_minus[(i % self.order()) as usize]
    }

    pub fn mul_log(&self, i: u32, j: u32) -> u32 {
        ((i as u64 + j as u64) % self.order() as u64) as u32
    }

    /// `log(g^i + g^j)`, or `None` when the sum vanishes.
    pub fn add_log(&self, i: u32, j: u32) -> Option<u32> {
        let c = self.add_code(self.exp(i), self.exp(j));
        (c != 0).then(|| self.log(c))
    }

    pub fn least_nonsquare(&self) -> u64 {
        self.least_nonsquare
    }

    pub fn is_square_code(&self, code: u64) -> bool {
        self.log(code) % 2 == 0
    }

    pub fn add_code(&self, a: u64, b: u64) -> u64 {
        match &self.modulus {
            None => (a + b) % self.p,
            Some(_) => self.digitwise(a, b, |x, y| (x + y) % self.p),
        }
    }

    pub fn neg_code(&self, a: u64) -> u64 {
        match &self.modulus {
            None => (self.p - a) % self.p,
            Some(_) => self.digitwise(a, 0, |x, _| (self.p - x) % self.p),
        }
    }

    pub fn sub_code(&self, a: u64, b: u64) -> u64 {
        self.add_code(a, self.neg_code(b))
    }

    pub fn mul_code(&self, a: u64, b: u64) -> u64 {
        match &self.modulus {
            None => super::poly::mulm(a, b, self.p),
            Some(m) => {
                let (x, y) = (Poly::from_code(a, self.p), Poly::from_code(b, self.p));
                x.mul_mod(&y, m, self.p).code(self.p)
            }
        }
    }

    fn digitwise(&self, mut a: u64, mut b: u64, f: impl Fn(u64, u64) -> u64) -> u64 {
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.modulus.as_ref().unwrap().deg().unwrap() {
            out += f(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }
}
