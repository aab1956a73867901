//! Sturmian (balanced) words: mechanical words of rational slope, their
//! block decomposition, the two non-periodic sequences of each rational
//! rotation number, and integer bounds for the multiplier of the periodic
//! word.
//!
//! Letters are identified with binary digits by `alpha = 1`, `beta = 0`;
//! the rotation number is the frequency of `alpha`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::cf::SymbolSequence;
use crate::surd::QuadSurd;
use crate::word::{Letter, Word};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationNumber {
    p: u64,
    q: u64,
}

impl RotationNumber {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || p >= q || p.gcd(&q) != 1 {
            return Err(Error::InvalidRotation { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn q(self) -> u64 {
        self.q
    }

    /// `(q - p)/q`, the rotation number of the letter-swapped word.
    pub fn mirror(self) -> Self {
        Self {
            p: self.q - self.p,
            q: self.q,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// Count of the minority letter: `min(p, q - p)`.
    pub fn minority(self) -> u64 {
        self.p.min(self.q - self.p)
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RotationNumber {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected p/q, got `{s}`")))?;
        let p = a.trim().parse().map_err(|_| Error::Parse(format!("bad numerator `{a}`")))?;
        let q = b.trim().parse().map_err(|_| Error::Parse(format!("bad denominator `{b}`")))?;
        RotationNumber::new(p, q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmianBlock {
    pub word: Word,
    pub rotation: RotationNumber,
}

/// Letter `k` is alpha iff `floor((k+1)p/q) > floor(kp/q)`, for `k < q`.
pub fn mechanical_word(r: RotationNumber) -> Vec<Letter> {
    let (p, q) = (r.p as u128, r.q as u128);
    (0..q)
        .map(|k| {
            if (k + 1) * p / q > k * p / q {
                Letter::Alpha
            } else {
                Letter::Beta
            }
        })
        .collect()
}

/// Least cyclic rotation in the binary order `beta (0) < alpha (1)`.
pub fn least_binary_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let key = |i: usize| letters[i..].iter().chain(&letters[..i]).map(|&l| l == Letter::Alpha);
    let best = (0..n).min_by(|&i, &j| key(i).cmp(key(j))).unwrap_or(0);
    let mut v = letters.to_vec();
    v.rotate_left(best);
    v
}

/// The periodic Sturmian block `T_{p/q}`, as the least rotation of the
/// mechanical word in binary order; e.g. `1/3 -> bba` (binary `001`).
pub fn t_word(r: RotationNumber) -> SturmianBlock {
    let letters = least_binary_rotation(&mechanical_word(r));
    SturmianBlock {
        word: Word::new(letters).expect("q >= 2"),
        rotation: r,
    }
}

/// Balanced in the cyclic sense: for every window length the alpha-counts
/// over all cyclic windows differ by at most one.
pub fn is_sturmian(letters: &[Letter]) -> bool {
    let n = letters.len();
    if n == 0 {
        return false;
    }
    let a: Vec<usize> = letters.iter().map(|&l| (l == Letter::Alpha) as usize).collect();
    for len in 1..=n {
        let mut count: usize = (0..len).map(|i| a[i % n]).sum();
        let (mut lo, mut hi) = (count, count);
        for start in 1..n {
            count = count + a[(start + len - 1) % n] - a[start - 1];
            lo = lo.min(count);
            hi = hi.max(count);
        }
        if hi - lo > 1 {
            return false;
        }
    }
    true
}

/// Rotation number of a periodic itinerary: the alpha-frequency of a
/// balanced word containing both letters, reduced to lowest terms.
pub fn rotation_number(letters: &[Letter]) -> Option<RotationNumber> {
    if !is_sturmian(letters) {
        return None;
    }
    let p = letters.iter().filter(|&&l| l == Letter::Alpha).count() as u64;
    let q = letters.len() as u64;
    let g = p.gcd(&q);
    RotationNumber::new(p / g, q / g).ok()
}

/// `(floor(q/p)^(2p), (1 + ceil(q/p))^(2p))` with `p` the minority count.
pub fn multiplier_bounds(r: RotationNumber) -> (BigInt, BigInt) {
    let p = r.minority();
    let q = r.q;
    let lo = BigInt::from(q / p).pow(2 * p as u32);
    let hi = BigInt::from(1 + q.div_ceil(p)).pow(2 * p as u32);
    (lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// `majority^(r-1) minority`
    Short,
    /// `majority^r minority`
    Long,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub r: u64,
    pub s: u64,
    pub majority: Letter,
    pub kinds: Vec<BlockKind>,
}

impl BlockStructure {
    pub fn count(&self, kind: BlockKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }
}

/// Split a cyclic Sturmian word into blocks `X^(r-1) Y` and `X^r Y`, with `X`
/// the majority letter and `Y` the minority letter. Blocks are read from the
/// rotation ending in the minority letter, first minority letter onwards.
pub fn block_structure(letters: &[Letter]) -> Result<BlockStructure> {
    if !is_sturmian(letters) {
        return Err(Error::Decomposition("word is not balanced".into()));
    }
    let alphas = letters.iter().filter(|&&l| l == Letter::Alpha).count();
    let n = letters.len();
    if alphas == 0 || alphas == n {
        return Err(Error::Decomposition("word uses a single letter".into()));
    }
    let (minority, majority, m) = if alphas <= n - alphas {
        (Letter::Alpha, Letter::Beta, alphas)
    } else {
        (Letter::Beta, Letter::Alpha, n - alphas)
    };
    let r = (n / m) as u64;
    let first = letters.iter().position(|&l| l == minority).expect("both letters");
    let mut rot = letters.to_vec();
    rot.rotate_left(first + 1);
    let mut kinds = Vec::with_capacity(m);
    let mut run = 0u64;
    for &l in &rot {
        if l == majority {
            run += 1;
            continue;
        }
        let kind = if run + 1 == r {
            BlockKind::Short
        } else if run == r {
            BlockKind::Long
        } else {
            return Err(Error::Decomposition(format!(
                "block with {run} majority letters, expected {} or {r}",
                r - 1
            )));
        };
        kinds.push(kind);
        run = 0;
    }
    Ok(BlockStructure {
        r,
        s: kinds.len() as u64,
        majority,
        kinds,
    })
}

/// The two non-periodic balanced sequences of rotation number `p/q`, from
/// the two ways of splicing the lower and upper staircases of the line of
/// slope `p/q` at the origin. The marker sits at the splice.
pub fn non_periodic_pair(r: RotationNumber) -> (SymbolSequence, SymbolSequence) {
    let (p, q) = (r.p as i128, r.q as i128);
    let lower = |x: i128| Integer::div_floor(&(p * x), &q);
    let upper = |x: i128| Integer::div_ceil(&(p * x), &q) - 1;
    let build = |left: &dyn Fn(i128) -> i128, right: &dyn Fn(i128) -> i128| {
        let h = |x: i128| if x <= 0 { left(x) } else { right(x) };
        let letter = |n: i128| {
            if h(n + 1) - h(n) == 1 {
                Letter::Alpha
            } else {
                Letter::Beta
            }
        };
        let left_period: Vec<Letter> = (-q..0).map(letter).collect();
        let right_pre = vec![letter(0)];
        let right_period: Vec<Letter> = (1..=q).map(letter).collect();
        SymbolSequence::new(left_period, Vec::new(), right_pre, right_period)
            .expect("nonempty periods")
    };
    (build(&lower, &upper), build(&upper, &lower))
}

/// `c_n = floor((n+2) nu) - floor((n+1) nu)` for `n < len`, as letters.
pub fn characteristic_prefix(nu: &QuadSurd, len: usize) -> Result<Vec<Letter>> {
    if nu.signum() != std::cmp::Ordering::Greater || nu.floor().is_positive() {
        return Err(Error::Domain(format!("slope {nu} is not in (0,1)")));
    }
    let at = |k: usize| {
        nu.checked_mul(&QuadSurd::from_int(k as u64))
            .expect("rational multiple")
            .floor()
    };
    Ok((0..len)
        .map(|n| {
            let d = at(n + 2) - at(n + 1);
            if d.to_i64() == Some(1) {
                Letter::Alpha
            } else {
                Letter::Beta
            }
        })
        .collect())
}

/// `w0 = a`, `w1 = ab`, `w_{n+1} = w_n w_{n-1}`.
pub fn fibonacci_word(n: usize) -> Vec<Letter> {
    let mut prev = vec![Letter::Alpha];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![Letter::Alpha, Letter::Beta];
    for _ in 1..n {
        let mut next = cur.clone();
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rn(p: u64, q: u64) -> RotationNumber {
        RotationNumber::new(p, q).unwrap()
    }

    fn letters(s: &str) -> Vec<Letter> {
        s.parse::<Word>().unwrap().letters().to_vec()
    }

    fn bits(v: &[Letter]) -> String {
        v.iter().map(|&l| if l == Letter::Alpha { '1' } else { '0' }).collect()
    }

    #[test]
    fn t_word_examples() {
        assert_eq!(t_word(rn(1, 3)).word.to_string(), "bba");
        assert!(t_word(rn(2, 3)).word.is_cyclic_rotation_of(&"aab".parse().unwrap()));
        assert!(t_word(rn(1, 2)).word.is_cyclic_rotation_of(&"ab".parse().unwrap()));
        assert_eq!(bits(t_word(rn(2, 5)).word.letters()), "00101");
        assert_eq!(t_word(rn(7, 31)).word.alpha_count(), 7);
    }

    #[test]
    fn rotation_rejects_bad_input() {
        assert!(RotationNumber::new(2, 4).is_err());
        assert!(RotationNumber::new(0, 1).is_err());
        assert!(RotationNumber::new(3, 3).is_err());
        assert_eq!("3/8".parse::<RotationNumber>().unwrap(), rn(3, 8));
    }

    #[test]
    fn balanced_examples() {
        assert!(is_sturmian(&letters("aab")));
        assert!(!is_sturmian(&letters("aabb")));
        assert!(is_sturmian(t_word(rn(7, 31)).word.letters()));
        assert_eq!(rotation_number(&letters("aabaab")), Some(rn(2, 3)));
        assert_eq!(rotation_number(&letters("aabb")), None);
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(multiplier_bounds(rn(1, 3)), (9.into(), 16.into()));
        assert_eq!(
            multiplier_bounds(rn(7, 31)),
            (BigInt::from(4).pow(14), BigInt::from(6).pow(14))
        );
        assert_eq!(multiplier_bounds(rn(2, 3)), (9.into(), 16.into()));
        let mu = t_word(rn(1, 3)).word.multiplier().unwrap().mu;
        assert!((mu.to_f64() - (7.0 + 4.0 * 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn blocks() {
        let b = block_structure(t_word(rn(7, 31)).word.letters()).unwrap();
        assert_eq!((b.r, b.s, b.majority), (4, 7, Letter::Beta));
        assert_eq!((b.count(BlockKind::Short), b.count(BlockKind::Long)), (4, 3));
        let b = block_structure(t_word(rn(1, 5)).word.letters()).unwrap();
        assert_eq!((b.r, b.s), (5, 1));
        assert_eq!(b.kinds, vec![BlockKind::Short]);
        let b = block_structure(t_word(rn(2, 5)).word.letters()).unwrap();
        assert_eq!((b.r, b.s), (2, 2));
        assert_eq!((b.count(BlockKind::Short), b.count(BlockKind::Long)), (1, 1));
        assert!(matches!(block_structure(&letters("aabb")), Err(Error::Decomposition(_))));
    }

    fn window(s: &SymbolSequence, from: i64, to: i64) -> String {
        (from..to)
            .map(|n| {
                let l = if n < 0 { s.left_letter((-n - 1) as usize) } else { s.right_letter(n as usize + 1) };
                if l == Letter::Alpha { '1' } else { '0' }
            })
            .collect()
    }

    #[test]
    fn non_periodic_one_third() {
        let (a, b) = non_periodic_pair(rn(1, 3));
        assert_eq!(window(&a, -6, 7), "0010010001001");
        assert_eq!(window(&b, -6, 6), "100100101001");
        assert!(window(&a, -9, 10).contains("0010010001001001"));
        assert!(window(&b, -9, 10).contains("00100101001001"));
    }

    #[test]
    fn fibonacci_prefixes() {
        let strs: Vec<String> = (0..5).map(|n| bits(&fibonacci_word(n))).collect();
        assert_eq!(strs, ["1", "10", "101", "10110", "10110101"]);
        let nu = QuadSurd::new((-1).into(), 1.into(), 5.into(), 2.into()).unwrap();
        let c = characteristic_prefix(&nu, 89).unwrap();
        assert_eq!(c, fibonacci_word(10)[..89]);
    }
}
