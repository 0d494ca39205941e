//! Rational revolving angles and the finite cyclic group they generate.
//!
//! An angle `2πq/p` is kept as a reduced fraction. The revolving group of a
//! generator set `{θ₀ = 0, θ₁, …, θ_{m−1}}` is the cyclic group of
//! `L = lcm(p₁, …, p_{m−1})`-th roots of unity, stored as integer exponents
//! modulo `L`. Complex values only appear when an element is evaluated.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The angle `2πq/p`, reduced and normalized to `(−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAngle", into = "RawAngle")]
pub struct RationalAngle {
    q: i64,
    p: u64,
}

#[derive(Serialize, Deserialize)]
struct RawAngle {
    q: i64,
    p: u64,
}

impl TryFrom<RawAngle> for RationalAngle {
    type Error = Error;

    fn try_from(raw: RawAngle) -> Result<Self> {
        RationalAngle::new(raw.q, raw.p)
    }
}

impl From<RationalAngle> for RawAngle {
    fn from(a: RationalAngle) -> Self {
        RawAngle { q: a.q, p: a.p }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u64, b: u64) -> Option<u64> {
    (a / gcd(a, b)).checked_mul(b)
}

impl RationalAngle {
    pub const ZERO: RationalAngle = RationalAngle { q: 0, p: 1 };

    pub fn new(q: i64, p: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = gcd(q.unsigned_abs(), p);
        let p = p / g;
        // |q| / g < p after the remainder, so everything fits in i64 again.
        let mut r = (q / g as i64).rem_euclid(p as i64);
        if 2 * r as u64 > p {
            r -= p as i64;
        }
        Ok(RationalAngle { q: r, p })
    }

    pub fn numerator(&self) -> i64 {
        self.q
    }

    pub fn denominator(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.q == 0
    }

    pub fn radians(&self) -> f64 {
        std::f64::consts::TAU * self.q as f64 / self.p as f64
    }

    /// `e^{iθ}`.
    pub fn to_complex(&self) -> Complex64 {
        unit_root(self.q.rem_euclid(self.p as i64) as u64, self.p)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 1 {
            write!(f, "{}", self.q)
        } else {
            write!(f, "{}/{}", self.q, self.p)
        }
    }
}

/// Parses `q/p` (a fraction of a full turn) or a bare integer.
impl FromStr for RationalAngle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::ParseWord {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let (q, p) = match s.trim().split_once('/') {
            Some((q, p)) => (q.trim(), p.trim()),
            None => (s.trim(), "1"),
        };
        let q: i64 = q.parse().map_err(|_| bad("numerator is not an integer"))?;
        let p: u64 = p
            .parse()
            .map_err(|_| bad("denominator is not a positive integer"))?;
        RationalAngle::new(q, p)
    }
}

/// `e^{2πik/n}` for `0 ≤ k < n`.
pub(crate) fn unit_root(k: u64, n: u64) -> Complex64 {
    let (s, c) = (std::f64::consts::TAU * k as f64 / n as f64).sin_cos();
    Complex64::new(c, s)
}

/// Ordered generator angles `θ₀ = 0, θ₁, …, θ_{m−1}`, pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    angles: Vec<RationalAngle>,
}

impl GeneratorSet {
    pub fn new(angles: Vec<RationalAngle>) -> Result<Self> {
        let first = *angles.first().ok_or(Error::EmptyGeneratorSet)?;
        if !first.is_zero() {
            return Err(Error::NonZeroFirstAngle(first));
        }
        for (i, a) in angles.iter().enumerate() {
            if let Some(j) = angles[..i].iter().position(|b| b == a) {
                return Err(Error::DuplicateAngle(*a, j, i));
            }
        }
        Ok(GeneratorSet { angles })
    }

    /// Builds a set from `(q, p)` pairs, each meaning `2πq/p`.
    pub fn from_fractions(fractions: &[(i64, u64)]) -> Result<Self> {
        let angles = fractions
            .iter()
            .map(|&(q, p)| RationalAngle::new(q, p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(angles)
    }

    pub fn angles(&self) -> &[RationalAngle] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// `S = {0}`: the group is trivial and every Δ-word is constant.
    pub fn is_degenerate(&self) -> bool {
        self.angles.len() == 1
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.angles.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// `e^{2πik/L}` for a group of order `L`; `k` is always reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupElement(u64);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn exponent(self) -> u64 {
        self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The revolving group Δ generated by a [`GeneratorSet`], as `Z_L`.
#[derive(Debug, Clone)]
pub struct RevolvingGroup {
    set: GeneratorSet,
    order: u64,
    // steps[k] = exponent of e^{iθ_k}; steps[0] = 0.
    steps: Vec<u64>,
    roots: Vec<Complex64>,
}

// Everything else is derived from the set.
impl PartialEq for RevolvingGroup {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set
    }
}

impl Eq for RevolvingGroup {}

/// Orders above this are exact but have no precomputed root table.
const ROOT_TABLE_LIMIT: u64 = 1 << 16;

impl RevolvingGroup {
    pub fn new(set: GeneratorSet) -> Result<Self> {
        let mut order = 1u64;
        for a in &set.angles()[1..] {
            order = lcm(order, a.denominator()).ok_or(Error::GroupTooLarge)?;
        }
        let steps = set
            .angles()
            .iter()
            .map(|a| {
                let unit = order / a.denominator();
                (a.numerator().rem_euclid(a.denominator() as i64) as u64) * unit
            })
            .collect();
        let roots = if order <= ROOT_TABLE_LIMIT {
            (0..order).map(|k| unit_root(k, order)).collect()
        } else {
            Vec::new()
        };
        Ok(RevolvingGroup {
            set,
            order,
            steps,
            roots,
        })
    }

    pub fn from_fractions(fractions: &[(i64, u64)]) -> Result<Self> {
        Self::new(GeneratorSet::from_fractions(fractions)?)
    }

    pub fn generator_set(&self) -> &GeneratorSet {
        &self.set
    }

    pub fn angles(&self) -> &[RationalAngle] {
        self.set.angles()
    }

    /// `m`, the number of generator angles including `θ₀ = 0`.
    pub fn num_generators(&self) -> usize {
        self.steps.len()
    }

    /// `L = |Δ|`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponents `a₁ … a_{m−1}` of `e^{iθ_j}` in `Z_L`.
    pub fn generator_exponents(&self) -> &[u64] {
        &self.steps[1..]
    }

    /// Exponent of `e^{iθ_k}` for any `k < m` (`0` for `k = 0`).
    pub fn step_exponent(&self, k: usize) -> u64 {
        self.steps[k]
    }

    pub fn element(&self, exponent: u64) -> Result<GroupElement> {
        if exponent < self.order {
            Ok(GroupElement(exponent))
        } else {
            Err(Error::ExponentOutOfRange {
                exponent,
                modulus: self.order,
            })
        }
    }

    /// Element nearest to `z`, provided `z` is within `1e-9` of a group element.
    pub fn element_of_complex(&self, z: Complex64) -> Result<GroupElement> {
        let turns = z.arg() / std::f64::consts::TAU;
        let k = (turns * self.order as f64).round().rem_euclid(self.order as f64) as u64;
        let g = GroupElement(k % self.order);
        if (self.to_complex(g) - z).norm() < 1e-9 {
            Ok(g)
        } else {
            Err(Error::NotAGroupElement(z))
        }
    }

    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        GroupElement(add_mod(g.0, h.0, self.order))
    }

    /// `g · e^{iθ_k}` by generator index.
    pub fn rotate(&self, g: GroupElement, k: usize) -> GroupElement {
        GroupElement(add_mod(g.0, self.steps[k], self.order))
    }

    /// `g · e^{iθ}` for `θ ∈ S`.
    pub fn apply_angle(&self, g: GroupElement, angle: RationalAngle) -> Result<GroupElement> {
        let k = self
            .index_of(angle)
            .ok_or(Error::AngleNotInSet(angle))?;
        Ok(self.rotate(g, k))
    }

    pub fn index_of(&self, angle: RationalAngle) -> Option<usize> {
        self.set.angles().iter().position(|a| *a == angle)
    }

    /// The generator index `k` with `to = from · e^{iθ_k}`, if any.
    pub fn step_index(&self, from: GroupElement, to: GroupElement) -> Option<usize> {
        let diff = sub_mod(to.0, from.0, self.order);
        self.steps.iter().position(|&s| s == diff)
    }

    pub fn to_complex(&self, g: GroupElement) -> Complex64 {
        match self.roots.get(g.0 as usize) {
            Some(z) => *z,
            None => unit_root(g.0, self.order),
        }
    }

    /// All `L` elements in exponent order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(GroupElement)
    }

    /// Additive order of the exponent `a` in `Z_L`.
    pub fn additive_order(&self, a: u64) -> u64 {
        self.order / gcd(a % self.order, self.order)
    }
}

fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

fn sub_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + n as u128 - b as u128) % n as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn make_angle_reduces_and_normalizes() {
        let a = RationalAngle::new(1, 4).unwrap();
        assert_eq!((a.numerator(), a.denominator()), (1, 4));
        let a = RationalAngle::new(2, 8).unwrap();
        assert_eq!((a.numerator(), a.denominator()), (1, 4));
        let a = RationalAngle::new(0, 7).unwrap();
        assert_eq!(a, RationalAngle::ZERO);
        assert_eq!(RationalAngle::new(1, 2).unwrap().numerator(), 1);
        assert_eq!(RationalAngle::new(-1, 2).unwrap().numerator(), 1);
        assert!(matches!(RationalAngle::new(1, 0), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn five_sixths_normalizes_to_minus_one_sixth() {
        // Oracle: subtract full turns until the angle lies in (-π, π].
        let mut theta = 5.0 * std::f64::consts::TAU / 6.0;
        while theta > std::f64::consts::PI {
            theta -= std::f64::consts::TAU;
        }
        let a = RationalAngle::new(5, 6).unwrap();
        assert_eq!((a.numerator(), a.denominator()), (-1, 6));
        assert!((a.radians() - theta).abs() < 1e-12);
        let lhs = Complex64::from_polar(1.0, 5.0 * std::f64::consts::PI / 3.0);
        let rhs = Complex64::from_polar(1.0, -std::f64::consts::PI / 3.0);
        assert!(close(lhs, rhs, 1e-12));
        assert!(close(a.to_complex(), rhs, 1e-12));
    }

    #[test]
    fn parse_fraction() {
        assert_eq!("1/2".parse::<RationalAngle>().unwrap(), RationalAngle::new(1, 2).unwrap());
        assert_eq!("-1/4".parse::<RationalAngle>().unwrap(), RationalAngle::new(3, 4).unwrap());
        assert_eq!("0".parse::<RationalAngle>().unwrap(), RationalAngle::ZERO);
        assert!("x/2".parse::<RationalAngle>().is_err());
        assert!("1/0".parse::<RationalAngle>().is_err());
    }

    #[test]
    fn generator_set_rules() {
        assert!(GeneratorSet::from_fractions(&[(0, 1), (1, 2)]).is_ok());
        assert!(matches!(
            GeneratorSet::from_fractions(&[(1, 2), (0, 1)]),
            Err(Error::NonZeroFirstAngle(_))
        ));
        assert!(matches!(
            GeneratorSet::from_fractions(&[(0, 1), (1, 3), (0, 1)]),
            Err(Error::DuplicateAngle(..))
        ));
        assert!(matches!(
            GeneratorSet::from_fractions(&[(0, 1), (1, 4), (2, 8)]),
            Err(Error::DuplicateAngle(..))
        ));
        assert!(GeneratorSet::new(vec![]).is_err());
        assert!(GeneratorSet::from_fractions(&[(0, 1)]).unwrap().is_degenerate());
    }

    #[test]
    fn group_order_examples() {
        let g = RevolvingGroup::from_fractions(&[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.generator_exponents(), &[3, 2]);
        let g = RevolvingGroup::from_fractions(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.order(), 2);
        let g = RevolvingGroup::from_fractions(&[(0, 1)]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.elements().collect::<Vec<_>>(), vec![GroupElement::IDENTITY]);
    }

    #[test]
    fn quarter_turns_generate_order_four() {
        let g = RevolvingGroup::from_fractions(&[(0, 1), (1, 4), (-1, 4)]).unwrap();
        // Oracle: closure of {i, -i} under complex multiplication.
        let gens = [Complex64::i(), -Complex64::i()];
        let mut seen = vec![Complex64::new(1.0, 0.0)];
        let mut frontier = seen.clone();
        while let Some(z) = frontier.pop() {
            for w in gens {
                let p = z * w;
                if !seen.iter().any(|s| close(*s, p, 1e-9)) {
                    seen.push(p);
                    frontier.push(p);
                }
            }
        }
        assert_eq!(seen.len(), 4);
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn apply_angle_examples() {
        let g = RevolvingGroup::from_fractions(&[(0, 1), (1, 2), (1, 3)]).unwrap();
        let two_thirds_pi = RationalAngle::new(1, 3).unwrap();
        assert_eq!(g.apply_angle(GroupElement(3), two_thirds_pi).unwrap(), GroupElement(5));
        for k in 0..6 {
            assert_eq!(g.apply_angle(GroupElement(k), RationalAngle::ZERO).unwrap(), GroupElement(k));
        }
        let wrapped = g.apply_angle(GroupElement(5), two_thirds_pi).unwrap();
        assert_eq!(wrapped, GroupElement(1));
        // Oracle: e^{i5π/3}·e^{i2π/3} computed in floating point.
        let z = Complex64::from_polar(1.0, 5.0 * std::f64::consts::PI / 3.0)
            * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!(close(g.to_complex(wrapped), z, 1e-12));
        let quarter = RationalAngle::new(1, 4).unwrap();
        assert!(matches!(
            g.apply_angle(GroupElement(0), quarter),
            Err(Error::AngleNotInSet(_))
        ));
    }

    #[test]
    fn to_complex_examples() {
        let g6 = RevolvingGroup::from_fractions(&[(0, 1), (1, 2), (1, 3)]).unwrap();
        let g4 = RevolvingGroup::from_fractions(&[(0, 1), (1, 4)]).unwrap();
        assert!(close(g6.to_complex(GroupElement(0)), Complex64::new(1.0, 0.0), 1e-15));
        assert!(close(g6.to_complex(GroupElement(3)), Complex64::new(-1.0, 0.0), 1e-15));
        assert!(close(g4.to_complex(GroupElement(1)), Complex64::new(0.0, 1.0), 1e-15));
        for k in 0..6 {
            assert!((g6.to_complex(GroupElement(k)).norm() - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn element_of_complex_membership() {
        let g = RevolvingGroup::from_fractions(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.element_of_complex(Complex64::new(-1.0, 0.0)).unwrap(), GroupElement(1));
        assert!(g.element_of_complex(Complex64::i()).is_err());
        assert!(g.element(2).is_err());
    }

    #[test]
    fn generators_have_their_denominator_as_order() {
        let g = RevolvingGroup::from_fractions(&[(0, 1), (1, 4), (2, 5), (-1, 6)]).unwrap();
        assert_eq!(g.order(), 60);
        for (a, angle) in g.generator_exponents().iter().zip(&g.angles()[1..]) {
            assert_eq!(g.additive_order(*a), angle.denominator());
        }
    }

    #[test]
    fn large_order_skips_root_table() {
        let g = RevolvingGroup::from_fractions(&[(0, 1), (1, 23), (1, 19), (1, 17), (1, 13)]).unwrap();
        assert_eq!(g.order(), 23 * 19 * 17 * 13);
        assert!(g.order() > ROOT_TABLE_LIMIT && g.roots.is_empty());
        let z = g.to_complex(GroupElement(g.order() - 1));
        assert!(close(z, Complex64::from_polar(1.0, -std::f64::consts::TAU / g.order() as f64), 1e-12));
    }
}
