//! The coefficient sequences behind the construction.
//!
//! For coprime `p, q > 1` the pairs `(m, n)` with `m, n >= 2` are listed in
//! increasing order of `p^m q^n`. Each pair contributes four coefficients
//! `a_k` proportional to `1, m, mn, n` with common factor `p^-m q^-n`, and
//! `sum a_k = a(p, q)`. The gradient coefficients `b_k` are a strictly
//! decreasing perturbation of the step sequence `b'_k = p^-m q^-n` with the
//! same weighted sum `sum b_k a_k = a(p^2, q^2)`.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::field::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstantsError {
    /// A base or ratio that must exceed one does not.
    NotAboveOne,
    NotCoprime { p: u32, q: u32 },
    /// The coefficient series does not sum to less than one.
    LimitTooLarge { a: Rational },
}

impl fmt::Display for ConstantsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantsError::NotAboveOne => f.write_str("parameter must be greater than 1"),
            ConstantsError::NotCoprime { p, q } => write!(f, "p = {p} and q = {q} are not coprime"),
            ConstantsError::LimitTooLarge { a } => write!(f, "a(p, q) = {a} is not below 1"),
        }
    }
}

/// The two tails `f(r) = sum_{m>=2} r^-m` and `g(r) = sum_{m>=2} m r^-m`
/// in closed form.
pub fn closed_forms(r: &Rational) -> Result<(Rational, Rational), ConstantsError> {
    if *r <= Rational::one() {
        return Err(ConstantsError::NotAboveOne);
    }
    let one = Rational::one();
    let inv = r.recip();
    let geometric = (&one - &inv).recip();
    let f = &geometric - &one - &inv;
    let g = &inv * (&geometric * &geometric - &one);
    Ok((f, g))
}

/// The exact sum `a(p, q)` of the coefficient series.
pub fn a_closed(p: u32, q: u32) -> Result<Rational, ConstantsError> {
    let (fp, gp) = closed_forms(&rat(p.into()))?;
    let (fq, gq) = closed_forms(&rat(q.into()))?;
    Ok(&fp * &fq + &gp * &fq + &gp * &gq + &fp * &gq)
}

/// Validated parameters with the two limits `a = a(p, q)` and
/// `b = a(p^2, q^2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    p: u32,
    q: u32,
    a: Rational,
    b: Rational,
}

impl Params {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }
}

impl Default for Params {
    fn default() -> Self {
        validate_params(2, 5).expect("(2, 5) is valid")
    }
}

pub fn validate_params(p: u32, q: u32) -> Result<Params, ConstantsError> {
    if p < 2 || q < 2 {
        return Err(ConstantsError::NotAboveOne);
    }
    if p.gcd(&q) != 1 {
        return Err(ConstantsError::NotCoprime { p, q });
    }
    let a = a_closed(p, q)?;
    if a >= Rational::one() {
        return Err(ConstantsError::LimitTooLarge { a });
    }
    let b = a_closed(p * p, q * q)?;
    Ok(Params { p, q, a, b })
}

/// One enumerated pair with its key `p^m q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair {
    pub m: u32,
    pub n: u32,
    pub key: BigUint,
}

impl Pair {
    /// `p^-m q^-n`.
    pub fn weight(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.key.clone()))
    }
}

/// The pairs `(m, n)`, `m, n >= 2`, in increasing key order, extended on
/// demand.
#[derive(Debug, Clone)]
pub struct PairEnum {
    p: u32,
    q: u32,
    frontier: BinaryHeap<Reverse<(BigUint, u32, u32)>>,
    pairs: Vec<Pair>,
}

impl PairEnum {
    pub fn new(params: &Params) -> PairEnum {
        let mut e = PairEnum {
            p: params.p,
            q: params.q,
            frontier: BinaryHeap::new(),
            pairs: Vec::new(),
        };
        e.push(2, 2);
        e
    }

    fn push(&mut self, m: u32, n: u32) {
        let key = BigUint::from(self.p).pow(m) * BigUint::from(self.q).pow(n);
        self.frontier.push(Reverse((key, m, n)));
    }

    fn extend_to(&mut self, count: usize) {
        while self.pairs.len() < count {
            let Reverse((key, m, n)) = self.frontier.pop().expect("frontier is never empty");
            // every (m, n) is reached exactly once: along its row from
            // (m, 2), and (m + 1, 2) is seeded when (m, 2) is popped
            self.push(m, n + 1);
            if n == 2 {
                self.push(m + 1, 2);
            }
            self.pairs.push(Pair { m, n, key });
        }
    }

    pub fn get(&mut self, i: usize) -> &Pair {
        self.extend_to(i + 1);
        &self.pairs[i]
    }

    pub fn prefix(&mut self, count: usize) -> &[Pair] {
        self.extend_to(count);
        &self.pairs[..count]
    }

    /// Index of `(m, n)` in the enumeration.
    pub fn index_of(&mut self, m: u32, n: u32) -> Option<usize> {
        if m < 2 || n < 2 {
            return None;
        }
        let key = BigUint::from(self.p).pow(m) * BigUint::from(self.q).pow(n);
        let mut i = 0;
        loop {
            let pair = self.get(i);
            if pair.key == key {
                return Some(i);
            }
            if pair.key > key {
                return None;
            }
            i += 1;
        }
    }
}

/// The first `count` pairs.
pub fn enumerate_pairs(params: &Params, count: usize) -> Vec<Pair> {
    PairEnum::new(params).prefix(count).to_vec()
}

/// Bookkeeping for one stage of the gradient construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRecord {
    /// Strict upper bound `U_i` for the first value of the block.
    pub upper: Rational,
    /// Strict lower bound `L_i` for the last value of the block.
    pub lower: Rational,
    /// `p^-m_i q^-n_i`.
    pub base: Rational,
    pub delta: Rational,
    pub halvings: u32,
}

/// Memoized `a_k`, `b_k` and the stage records that produced the `b_k`.
///
/// Extension needs `&mut self`; callers that share a sequence across
/// threads must guard it.
#[derive(Debug, Clone)]
pub struct Sequences {
    params: Params,
    pairs: PairEnum,
    b: Vec<Rational>,
    stages: Vec<StageRecord>,
}

/// Which of `1, m, mn, n` scales `p^-m q^-n` at position `k` (1-based).
fn multiplier(pair: &Pair, k: usize) -> u64 {
    let (m, n) = (u64::from(pair.m), u64::from(pair.n));
    match (k - 1) % 4 {
        0 => 1,
        1 => m,
        2 => m * n,
        _ => n,
    }
}

impl Sequences {
    pub fn new(params: Params) -> Sequences {
        let pairs = PairEnum::new(&params);
        Sequences {
            params,
            pairs,
            b: Vec::new(),
            stages: Vec::new(),
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn pair(&mut self, i: usize) -> &Pair {
        self.pairs.get(i)
    }

    pub fn pairs(&mut self) -> &mut PairEnum {
        &mut self.pairs
    }

    /// `a_k` for `k >= 1`.
    pub fn a(&mut self, k: usize) -> Rational {
        assert!(k >= 1, "coefficients are indexed from 1");
        let pair = self.pairs.get((k - 1) / 4);
        pair.weight() * rat(multiplier(pair, k) as i64)
    }

    /// The step approximation `b'_k = p^-m_i q^-n_i`, `k = 4i + j`.
    pub fn b_step(&mut self, k: usize) -> Rational {
        assert!(k >= 1, "coefficients are indexed from 1");
        self.pairs.get((k - 1) / 4).weight()
    }

    /// `b_k` for `k >= 1`.
    pub fn b(&mut self, k: usize) -> Rational {
        assert!(k >= 1, "coefficients are indexed from 1");
        self.extend_stages(k.div_ceil(4));
        self.b[k - 1].clone()
    }

    pub fn stage(&mut self, i: usize) -> &StageRecord {
        self.extend_stages(i + 1);
        &self.stages[i]
    }

    /// Completed stages so far.
    pub fn stages(&self) -> &[StageRecord] {
        &self.stages
    }

    fn extend_stages(&mut self, count: usize) {
        while self.stages.len() < count {
            self.run_stage();
        }
    }

    // Stage i sets c_j(d) = base + (4 - j) d for j = 1, 2, 3 and solves the
    // block-sum equation for c_4. d starts at (U - base) / 8 and is halved
    // until U > c_1, c_3 > base and c_4 > L.
    fn run_stage(&mut self) {
        let i = self.stages.len();
        let base = self.pairs.get(i).weight();
        let lower = self.pairs.get(i + 1).weight();
        let upper = match self.b.last() {
            Some(prev) => prev.clone(),
            None => Rational::one(),
        };
        let pair = self.pairs.get(i).clone();
        let (m, n) = (rat(pair.m.into()), rat(pair.n.into()));
        // (3 a_1 + 2 a_2 + a_3) / a_4 for this block
        let slope = (rat(3) + rat(2) * &m + &m * &n) / &n;

        let mut delta = (&upper - &base) / rat(8);
        let mut halvings = 0;
        let block = loop {
            let c1 = &base + rat(3) * &delta;
            let c3 = &base + &delta;
            let c4 = &base - &delta * &slope;
            if upper > c1 && c3 > base && c4 > lower {
                let c2 = &base + rat(2) * &delta;
                break [c1, c2, c3, c4];
            }
            delta /= rat(2);
            halvings += 1;
        };
        self.b.extend(block);
        self.stages.push(StageRecord {
            upper,
            lower,
            base,
            delta,
            halvings,
        });
    }
}

/// Upper bound on `a - sum_{k <= 4I} a_k` from the pairs beyond the first
/// `I`: each pair's block is at most `4 (m + 1)(n + 1) p^-m q^-n`, summed
/// over every pair with key above the last enumerated one.
///
/// The tail over all pairs is bounded by integrating the block bound over
/// the pairs not yet listed, which we do exactly by listing rows: for each
/// `m` the remaining `n` form a tail of an arithmetico-geometric series in
/// `q^-1` with a closed form.
pub fn tail_bound(params: &Params, listed: usize) -> Rational {
    let mut pairs = PairEnum::new(params);
    let prefix = pairs.prefix(listed).to_vec();
    let (p, q) = (rat(params.p.into()), rat(params.q.into()));
    let qi = q.recip();
    // sum_{n >= n0} (n + 1) x^n = x^n0 (n0 + 1 - n0 x) / (1 - x)^2
    let row_tail = |n0: u32, x: &Rational| -> Rational {
        let one = Rational::one();
        let n0r = rat(n0.into());
        x.pow(n0 as i32) * (&n0r + &one - &n0r * x) / ((&one - x) * (&one - x))
    };
    // smallest unlisted n in each row m; rows beyond the listed ones start at 2
    let max_m = prefix.iter().map(|pr| pr.m).max().unwrap_or(1);
    let mut total = Rational::zero();
    for m in 2..=max_m {
        let n0 = prefix
            .iter()
            .filter(|pr| pr.m == m)
            .map(|pr| pr.n + 1)
            .max()
            .unwrap_or(2);
        let mr = rat(m.into());
        total += rat(4) * (&mr + rat(1)) * Rational::pow(&p, -(m as i32)) * row_tail(n0, &qi);
    }
    // rows m > max_m: sum_{m > max_m} (m + 1) p^-m * sum_{n >= 2} (n + 1) q^-n
    let pi = p.recip();
    total += rat(4) * row_tail(max_m + 1, &pi) * row_tail(2, &qi);
    total
}
