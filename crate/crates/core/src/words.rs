//! Finite prefixes of coding sequences and of the three revolving grammars.
//!
//! * [`CodingWord`]: digits `x₁ … x_N` in `0..m`.
//! * [`DeltaWord`]: a walk `γ₁ … γ_N` on the revolving group where each step
//!   multiplies by some `e^{iθ_j}`, `θ_j ∈ S` (current-dependent).
//! * [`DeltaZeroWord`]: entries in `Δ ∪ {0}`; each nonzero entry after the
//!   first is the previous nonzero entry rotated by some `θ_k ∈ S∖{0}`.
//! * [`GrWord`]: entries in `{0} ∪ {e^{ikθ}}` for a single angle `θ`; each
//!   nonzero entry after the first is the previous nonzero entry times `e^{iθ}`.
//!
//! Text forms: coding words are digit strings (`"10212"`), Δ-words are
//! comma-separated exponents (`"0,3,5"`), and zero-capable words write the
//! zero tag as `z` (`"0,3,z,5"`).

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{GroupElement, RationalAngle, RevolvingGroup};

/// Default upper bound on the number of words any enumeration may produce.
pub const DEFAULT_CAP: u64 = 5_000_000;

/// An entry of a zero-capable word. `Zero` is the origin, never the unit `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot<T> {
    Zero,
    Unit(T),
}

impl<T: Copy> Slot<T> {
    pub fn unit(self) -> Option<T> {
        match self {
            Slot::Zero => None,
            Slot::Unit(t) => Some(t),
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Slot::Zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodingWord(Vec<usize>);

impl CodingWord {
    pub fn new(digits: Vec<usize>, m: usize) -> Result<Self> {
        if let Some(&digit) = digits.iter().find(|&&d| d >= m) {
            return Err(Error::DigitOutOfRange { digit, m });
        }
        Ok(CodingWord(digits))
    }

    pub fn zeros(n: usize) -> Self {
        CodingWord(vec![0; n])
    }

    pub fn digits(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parse(text: &str, m: usize) -> Result<Self> {
        let digits = text
            .trim()
            .chars()
            .map(|c| {
                c.to_digit(36).map(|d| d as usize).ok_or_else(|| Error::ParseWord {
                    text: text.to_string(),
                    reason: format!("{c:?} is not a digit"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(digits, m)
    }
}

impl fmt::Display for CodingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.0 {
            let c = char::from_digit(d as u32, 36).unwrap_or('?');
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaWord(Vec<GroupElement>);

impl DeltaWord {
    pub fn from_elements(elements: Vec<GroupElement>) -> Self {
        DeltaWord(elements)
    }

    pub fn from_exponents(grp: &RevolvingGroup, exponents: &[u64]) -> Result<Self> {
        exponents
            .iter()
            .map(|&e| grp.element(e))
            .collect::<Result<Vec<_>>>()
            .map(DeltaWord)
    }

    /// Rejects any value that is not a group element.
    pub fn from_complex(grp: &RevolvingGroup, values: &[Complex64]) -> Result<Self> {
        values
            .iter()
            .map(|&z| grp.element_of_complex(z))
            .collect::<Result<Vec<_>>>()
            .map(DeltaWord)
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(γ·γₙ)`.
    pub fn rotated(&self, grp: &RevolvingGroup, g: GroupElement) -> DeltaWord {
        DeltaWord(self.0.iter().map(|&h| grp.mul(g, h)).collect())
    }

    pub fn parse(text: &str, grp: &RevolvingGroup) -> Result<Self> {
        let exps = split_entries(text)
            .map(|tok| parse_exponent(text, tok))
            .collect::<Result<Vec<_>>>()?;
        Self::from_exponents(grp, &exps)
    }
}

impl fmt::Display for DeltaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.0.iter().map(|g| g.exponent().to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaZeroWord(Vec<Slot<GroupElement>>);

impl DeltaZeroWord {
    pub fn from_entries(entries: Vec<Slot<GroupElement>>) -> Self {
        DeltaZeroWord(entries)
    }

    pub fn zeros(n: usize) -> Self {
        DeltaZeroWord(vec![Slot::Zero; n])
    }

    pub fn from_exponents(grp: &RevolvingGroup, entries: &[Option<u64>]) -> Result<Self> {
        entries
            .iter()
            .map(|e| match e {
                None => Ok(Slot::Zero),
                Some(e) => grp.element(*e).map(Slot::Unit),
            })
            .collect::<Result<Vec<_>>>()
            .map(DeltaZeroWord)
    }

    pub fn entries(&self) -> &[Slot<GroupElement>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotated(&self, grp: &RevolvingGroup, g: GroupElement) -> DeltaZeroWord {
        DeltaZeroWord(
            self.0
                .iter()
                .map(|s| match s {
                    Slot::Zero => Slot::Zero,
                    Slot::Unit(h) => Slot::Unit(grp.mul(g, *h)),
                })
                .collect(),
        )
    }

    pub fn parse(text: &str, grp: &RevolvingGroup) -> Result<Self> {
        let entries = parse_slots(text)?;
        Self::from_exponents(grp, &entries)
    }
}

impl fmt::Display for DeltaZeroWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.0.iter().map(|s| slot_text(s.unit().map(|g| g.exponent()))))
    }
}

/// A generalized revolving word; `Unit(k)` is `e^{ikθ}` with `0 ≤ k < p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrWord {
    theta: RationalAngle,
    entries: Vec<Slot<u64>>,
}

impl GrWord {
    pub fn new(theta: RationalAngle, entries: Vec<Slot<u64>>) -> Result<Self> {
        if theta.is_zero() {
            return Err(Error::ZeroRevolvingAngle);
        }
        let p = theta.denominator();
        for s in &entries {
            if let Slot::Unit(k) = s {
                if *k >= p {
                    return Err(Error::ExponentOutOfRange {
                        exponent: *k,
                        modulus: p,
                    });
                }
            }
        }
        Ok(GrWord { theta, entries })
    }

    pub fn theta(&self) -> RationalAngle {
        self.theta
    }

    pub fn entries(&self) -> &[Slot<u64>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Complex value of entry `n`: `0` or `e^{ikθ}`.
    pub fn value(&self, n: usize) -> Complex64 {
        match self.entries[n] {
            Slot::Zero => Complex64::new(0.0, 0.0),
            Slot::Unit(k) => gr_unit(self.theta, k),
        }
    }

    pub fn parse(text: &str, theta: RationalAngle) -> Result<Self> {
        let entries = parse_slots(text)?
            .into_iter()
            .map(|e| e.map_or(Slot::Zero, Slot::Unit))
            .collect();
        Self::new(theta, entries)
    }
}

impl fmt::Display for GrWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.entries.iter().map(|s| slot_text(s.unit())))
    }
}

/// `e^{ikθ}`, evaluated through the reduced exponent `kq mod p`.
pub(crate) fn gr_unit(theta: RationalAngle, k: u64) -> Complex64 {
    let p = theta.denominator();
    let q = theta.numerator().rem_euclid(p as i64) as u64;
    crate::group::unit_root(((k as u128 * q as u128) % p as u128) as u64, p)
}

fn split_entries(text: &str) -> impl Iterator<Item = &str> {
    let t = text.trim();
    let empty = t.is_empty();
    t.split(',').map(str::trim).filter(move |_| !empty)
}

fn parse_exponent(text: &str, tok: &str) -> Result<u64> {
    tok.parse().map_err(|_| Error::ParseWord {
        text: text.to_string(),
        reason: format!("{tok:?} is not an exponent"),
    })
}

fn parse_slots(text: &str) -> Result<Vec<Option<u64>>> {
    split_entries(text)
        .map(|tok| {
            if tok == "z" || tok == "Z" {
                Ok(None)
            } else {
                parse_exponent(text, tok).map(Some)
            }
        })
        .collect()
}

fn slot_text(s: Option<u64>) -> String {
    s.map_or_else(|| "z".to_string(), |e| e.to_string())
}

fn write_joined(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = String>) -> fmt::Result {
    for (i, s) in items.enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

pub fn validate_grc(w: &GrWord) -> bool {
    let p = w.theta.denominator();
    let mut last: Option<u64> = None;
    for s in &w.entries {
        match (*s, last) {
            (Slot::Zero, _) => {}
            (Slot::Unit(k), None) => last = Some(k),
            (Slot::Unit(k), Some(prev)) => {
                if k != (prev + 1) % p {
                    return false;
                }
                last = Some(k);
            }
        }
    }
    true
}

pub fn validate_drc(w: &DeltaWord, grp: &RevolvingGroup) -> bool {
    w.0.iter().all(|g| g.exponent() < grp.order())
        && w.0.windows(2).all(|p| grp.step_index(p[0], p[1]).is_some())
}

pub fn validate_dzrc(w: &DeltaZeroWord, grp: &RevolvingGroup) -> bool {
    let mut last: Option<GroupElement> = None;
    for s in &w.0 {
        if let Slot::Unit(g) = *s {
            if g.exponent() >= grp.order() {
                return false;
            }
            if let Some(prev) = last {
                match grp.step_index(prev, g) {
                    Some(k) if k > 0 => {}
                    _ => return false,
                }
            }
            last = Some(g);
        }
    }
    true
}

fn check_cap(count: u128, cap: u64) -> Result<()> {
    if count > cap as u128 {
        Err(Error::CapExceeded { count, cap })
    } else {
        Ok(())
    }
}

fn pow_u128(base: u128, exp: usize) -> u128 {
    let mut r: u128 = 1;
    for _ in 0..exp {
        r = r.saturating_mul(base);
    }
    r
}

/// `|W^Δ|` restricted to length `n` (`|Δ|·m^{n−1}`, or `m^{n−1}` with a fixed start).
pub fn count_drc(grp: &RevolvingGroup, n: usize, fixed_first: bool) -> u128 {
    if n == 0 {
        return 1;
    }
    let firsts = if fixed_first { 1 } else { grp.order() as u128 };
    firsts.saturating_mul(pow_u128(grp.num_generators() as u128, n - 1))
}

/// Number of GRC words of length `n`: `1 + p·(2ⁿ − 1)`.
pub fn count_grc(theta: RationalAngle, n: usize) -> u128 {
    let p = theta.denominator() as u128;
    1u128.saturating_add(p.saturating_mul(pow_u128(2, n).saturating_sub(1)))
}

/// Number of DZRC words of length `n`: `1 + L·Σ_{j<n} m^j`.
pub fn count_dzrc(grp: &RevolvingGroup, n: usize) -> u128 {
    let m = grp.num_generators() as u128;
    let tails = (0..n).fold(0u128, |acc, j| acc.saturating_add(pow_u128(m, j)));
    1u128.saturating_add((grp.order() as u128).saturating_mul(tails))
}

/// All DRC words of length `n`, lexicographic in (first element, step indices).
pub fn enumerate_drc(
    grp: &RevolvingGroup,
    n: usize,
    first: Option<GroupElement>,
    cap: u64,
) -> Result<Vec<DeltaWord>> {
    if n == 0 {
        return Err(Error::WordTooShort { len: 0, min: 1 });
    }
    let count = count_drc(grp, n, first.is_some());
    check_cap(count, cap)?;
    let starts: Vec<GroupElement> = match first {
        Some(g) => vec![g],
        None => grp.elements().collect(),
    };
    let mut out = Vec::with_capacity(count as usize);
    let mut buf = Vec::with_capacity(n);
    for g in starts {
        buf.clear();
        buf.push(g);
        drc_rec(grp, n, &mut buf, &mut out);
    }
    Ok(out)
}

fn drc_rec(grp: &RevolvingGroup, n: usize, buf: &mut Vec<GroupElement>, out: &mut Vec<DeltaWord>) {
    if buf.len() == n {
        out.push(DeltaWord(buf.clone()));
        return;
    }
    let cur = *buf.last().expect("nonempty prefix");
    for k in 0..grp.num_generators() {
        buf.push(grp.rotate(cur, k));
        drc_rec(grp, n, buf, out);
        buf.pop();
    }
}

/// All GRC words of length `n` for angle `θ`, lexicographic with `Zero` first.
pub fn enumerate_grc(theta: RationalAngle, n: usize, cap: u64) -> Result<Vec<GrWord>> {
    if theta.is_zero() {
        return Err(Error::ZeroRevolvingAngle);
    }
    check_cap(count_grc(theta, n), cap)?;
    let p = theta.denominator();
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(n);
    gr_rec(p, n, None, &mut buf, &mut |w: &[Slot<u64>]| {
        out.push(GrWord {
            theta,
            entries: w.to_vec(),
        })
    });
    Ok(out)
}

fn gr_rec(
    p: u64,
    n: usize,
    last: Option<u64>,
    buf: &mut Vec<Slot<u64>>,
    emit: &mut dyn FnMut(&[Slot<u64>]),
) {
    if buf.len() == n {
        emit(buf);
        return;
    }
    buf.push(Slot::Zero);
    gr_rec(p, n, last, buf, emit);
    buf.pop();
    match last {
        None => {
            for k in 0..p {
                buf.push(Slot::Unit(k));
                gr_rec(p, n, Some(k), buf, emit);
                buf.pop();
            }
        }
        Some(prev) => {
            let k = (prev + 1) % p;
            buf.push(Slot::Unit(k));
            gr_rec(p, n, Some(k), buf, emit);
            buf.pop();
        }
    }
}

/// All DZRC words of length `n`, lexicographic with `Zero` first.
pub fn enumerate_dzrc(grp: &RevolvingGroup, n: usize, cap: u64) -> Result<Vec<DeltaZeroWord>> {
    check_cap(count_dzrc(grp, n), cap)?;
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(n);
    dz_rec(grp, n, None, &mut buf, &mut out);
    Ok(out)
}

fn dz_rec(
    grp: &RevolvingGroup,
    n: usize,
    last: Option<GroupElement>,
    buf: &mut Vec<Slot<GroupElement>>,
    out: &mut Vec<DeltaZeroWord>,
) {
    if buf.len() == n {
        out.push(DeltaZeroWord(buf.clone()));
        return;
    }
    buf.push(Slot::Zero);
    dz_rec(grp, n, last, buf, out);
    buf.pop();
    match last {
        None => {
            for g in grp.elements() {
                buf.push(Slot::Unit(g));
                dz_rec(grp, n, Some(g), buf, out);
                buf.pop();
            }
        }
        Some(prev) => {
            for k in 1..grp.num_generators() {
                let g = grp.rotate(prev, k);
                buf.push(Slot::Unit(g));
                dz_rec(grp, n, Some(g), buf, out);
                buf.pop();
            }
        }
    }
}

/// Uniform first element, then a uniform generator index per step.
pub fn random_drc<R: Rng + ?Sized>(grp: &RevolvingGroup, n: usize, rng: &mut R) -> DeltaWord {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return DeltaWord(out);
    }
    let mut cur = grp
        .element(rng.random_range(0..grp.order()))
        .expect("in range");
    out.push(cur);
    for _ in 1..n {
        cur = grp.rotate(cur, rng.random_range(0..grp.num_generators()));
        out.push(cur);
    }
    DeltaWord(out)
}

/// Uniform over the allowed options at each position (`p + 1` while the
/// prefix is all zero, then zero-or-rotate).
pub fn random_grc<R: Rng + ?Sized>(theta: RationalAngle, n: usize, rng: &mut R) -> Result<GrWord> {
    if theta.is_zero() {
        return Err(Error::ZeroRevolvingAngle);
    }
    let p = theta.denominator();
    let mut last: Option<u64> = None;
    let mut entries = Vec::with_capacity(n);
    for _ in 0..n {
        let slot = match last {
            None => match rng.random_range(0..=p) {
                0 => Slot::Zero,
                k => Slot::Unit(k - 1),
            },
            Some(prev) => {
                if rng.random_bool(0.5) {
                    Slot::Unit((prev + 1) % p)
                } else {
                    Slot::Zero
                }
            }
        };
        if let Slot::Unit(k) = slot {
            last = Some(k);
        }
        entries.push(slot);
    }
    Ok(GrWord { theta, entries })
}

/// Uniform over `Δ₀` while the prefix is all zero, then uniform over
/// zero and the `m − 1` nonzero rotations.
pub fn random_dzrc<R: Rng + ?Sized>(grp: &RevolvingGroup, n: usize, rng: &mut R) -> DeltaZeroWord {
    let m = grp.num_generators();
    let mut last: Option<GroupElement> = None;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let slot = match last {
            None => match rng.random_range(0..=grp.order()) {
                0 => Slot::Zero,
                k => Slot::Unit(grp.element(k - 1).expect("in range")),
            },
            Some(prev) => match rng.random_range(0..m) {
                0 => Slot::Zero,
                k => Slot::Unit(grp.rotate(prev, k)),
            },
        };
        if let Slot::Unit(g) = slot {
            last = Some(g);
        }
        out.push(slot);
    }
    DeltaZeroWord(out)
}

#[derive(Debug, Clone)]
pub enum Grammar<'a> {
    Drc(&'a RevolvingGroup),
    Dzrc(&'a RevolvingGroup),
    Grc(RationalAngle),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Word {
    Delta(DeltaWord),
    DeltaZero(DeltaZeroWord),
    Gr(GrWord),
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Delta(w) => w.fmt(f),
            Word::DeltaZero(w) => w.fmt(f),
            Word::Gr(w) => w.fmt(f),
        }
    }
}

/// A seeded random word of the given grammar (ChaCha8, platform independent).
pub fn sample_random(grammar: &Grammar<'_>, n: usize, seed: u64) -> Result<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match grammar {
        Grammar::Drc(grp) => Word::Delta(random_drc(grp, n, &mut rng)),
        Grammar::Dzrc(grp) => Word::DeltaZero(random_dzrc(grp, n, &mut rng)),
        Grammar::Grc(theta) => Word::Gr(random_grc(*theta, n, &mut rng)?),
    })
}

/// `γ₁ = 1`, `γ_{n+1} = γ_n · e^{iθ_{x_n}}`; length `N + 1`.
pub fn coding_to_delta(x: &CodingWord, grp: &RevolvingGroup) -> DeltaWord {
    let mut cur = GroupElement::IDENTITY;
    let mut out = Vec::with_capacity(x.len() + 1);
    out.push(cur);
    for &d in x.digits() {
        cur = grp.rotate(cur, d);
        out.push(cur);
    }
    DeltaWord(out)
}

/// Inverse of [`coding_to_delta`] up to the choice of `γ₁`.
pub fn delta_to_coding(w: &DeltaWord, grp: &RevolvingGroup) -> Result<CodingWord> {
    w.0.windows(2)
        .map(|p| {
            grp.step_index(p[0], p[1]).ok_or(Error::InvalidStep {
                from: p[0].exponent(),
                to: p[1].exponent(),
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(CodingWord)
}

/// `s_n = c_k` where step `n → n+1` uses `θ_k`; length `N − 1`.
pub fn constant_sequence(
    w: &DeltaWord,
    grp: &RevolvingGroup,
    constants: &[Complex64],
) -> Result<Vec<Complex64>> {
    if w.len() < 2 {
        return Err(Error::WordTooShort { len: w.len(), min: 2 });
    }
    if constants.len() != grp.num_generators() {
        return Err(Error::ConstantCount {
            expected: grp.num_generators(),
            got: constants.len(),
        });
    }
    Ok(delta_to_coding(w, grp)?
        .digits()
        .iter()
        .map(|&k| constants[k])
        .collect())
}

/// `δ_n = 0` where `x_n = 0`, else `e^{iΣ_{j<n} θ_{x_j}}`.
pub fn dzrc_from_coding(x: &CodingWord, grp: &RevolvingGroup) -> DeltaZeroWord {
    let mut cur = GroupElement::IDENTITY;
    let mut out = Vec::with_capacity(x.len());
    for &d in x.digits() {
        out.push(if d == 0 { Slot::Zero } else { Slot::Unit(cur) });
        cur = grp.rotate(cur, d);
    }
    DeltaZeroWord(out)
}

/// For `S = {0, θ}`: `δ_n = γ_n` when step `n` rotates, `0` when it stays.
///
/// Consumes a Δ-word of length `N + 1` and yields a GR word of length `N`.
pub fn delta_to_grs(w: &DeltaWord, grp: &RevolvingGroup) -> Result<GrWord> {
    if grp.num_generators() != 2 {
        return Err(Error::Degenerate(format!(
            "single-angle reduction needs m = 2, got m = {}",
            grp.num_generators()
        )));
    }
    let theta = grp.angles()[1];
    let p = grp.order();
    let a = grp.step_exponent(1);
    let a_inv = mod_inverse(a, p).expect("generator exponent is a unit mod its own order");
    let coding = delta_to_coding(w, grp)?;
    let entries = coding
        .digits()
        .iter()
        .zip(&w.0)
        .map(|(&d, g)| {
            if d == 0 {
                Slot::Zero
            } else {
                Slot::Unit(((g.exponent() as u128 * a_inv as u128) % p as u128) as u64)
            }
        })
        .collect();
    GrWord::new(theta, entries)
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r > 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn s_pi_two_thirds() -> RevolvingGroup {
        RevolvingGroup::from_fractions(&[(0, 1), (1, 2), (1, 3)]).unwrap()
    }

    fn angle(q: i64, p: u64) -> RationalAngle {
        RationalAngle::new(q, p).unwrap()
    }

    #[test]
    fn grc_example_word_is_valid() {
        // θ = π/3: (0, 1, e^{iπ/3}, 0, e^{i2π/3}, 0, 0, e^{iπ}, e^{i4π/3}, 0)
        let w = GrWord::parse("z,0,1,z,2,z,z,3,4,z", angle(1, 6)).unwrap();
        assert!(validate_grc(&w));
        assert!(validate_grc(&GrWord::parse("z,z,z,z", angle(1, 6)).unwrap()));
        // θ = π/2: (1, −1) skips a quarter turn.
        let w = GrWord::parse("0,2", angle(1, 4)).unwrap();
        assert!(!validate_grc(&w));
        assert!(GrWord::parse("0,4", angle(1, 4)).is_err());
        assert!(GrWord::new(RationalAngle::ZERO, vec![]).is_err());
    }

    #[test]
    fn drc_example_word_is_valid() {
        let grp = s_pi_two_thirds();
        // (1, e^{iπ}, e^{iπ}, e^{i(π+2π/3)}, …, e^{i2π/3}) as exponents of e^{2πi/6}
        let w = DeltaWord::parse("0,3,3,5,5,5,2", &grp).unwrap();
        assert!(validate_drc(&w, &grp));
        let constant = DeltaWord::parse("4,4,4,4", &grp).unwrap();
        assert!(validate_drc(&constant, &grp));
        let jump = DeltaWord::parse("0,1", &grp).unwrap();
        assert!(!validate_drc(&jump, &grp));
    }

    #[test]
    fn drc_rejects_non_members() {
        let grp = RevolvingGroup::from_fractions(&[(0, 1), (1, 2)]).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert!(DeltaWord::from_complex(&grp, &[one, Complex64::i()]).is_err());
        // Inside a larger group the same step is simply not a generator step.
        let g4 = RevolvingGroup::from_fractions(&[(0, 1), (1, 2), (-1, 4)]).unwrap();
        let w = DeltaWord::from_complex(&g4, &[one, Complex64::i()]).unwrap();
        assert!(!validate_drc(&w, &g4));
    }

    #[test]
    fn dzrc_examples() {
        let grp = s_pi_two_thirds();
        let w = DeltaZeroWord::parse("0,3,z,5,z,z,2", &grp).unwrap();
        assert!(validate_dzrc(&w, &grp));
        assert!(validate_dzrc(&DeltaZeroWord::zeros(5), &grp));
        let stay = DeltaZeroWord::parse("0,0", &grp).unwrap();
        assert!(!validate_dzrc(&stay, &grp));
        // The same steps are fine for DRC.
        assert!(validate_drc(&DeltaWord::parse("0,0", &grp).unwrap(), &grp));
    }

    #[test]
    fn drc_enumeration_counts() {
        let grp = s_pi_two_thirds();
        let words = enumerate_drc(&grp, 1, None, DEFAULT_CAP).unwrap();
        assert_eq!(words.len(), 6);
        let words = enumerate_drc(&grp, 3, Some(GroupElement::IDENTITY), DEFAULT_CAP).unwrap();
        assert_eq!(words.len(), 9);
        let g2 = RevolvingGroup::from_fractions(&[(0, 1), (1, 2)]).unwrap();
        let words = enumerate_drc(&g2, 4, None, DEFAULT_CAP).unwrap();
        // Oracle: filter all of Δ⁴ through the validator and dedup.
        let mut brute = HashSet::new();
        for code in 0..16u64 {
            let exps: Vec<u64> = (0..4).map(|i| (code >> i) & 1).collect();
            let w = DeltaWord::from_exponents(&g2, &exps).unwrap();
            if validate_drc(&w, &g2) {
                brute.insert(w);
            }
        }
        assert_eq!(brute.len(), 16);
        assert_eq!(words.iter().cloned().collect::<HashSet<_>>(), brute);
    }

    #[test]
    fn enumeration_refuses_above_cap() {
        let grp = s_pi_two_thirds();
        match enumerate_drc(&grp, 4, None, 100) {
            Err(Error::CapExceeded { count, cap }) => {
                assert_eq!(count, 6 * 27);
                assert_eq!(cap, 100);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
        assert!(enumerate_grc(angle(1, 4), 10, 100).is_err());
        assert!(enumerate_dzrc(&grp, 6, 100).is_err());
    }

    fn brute_grc(theta: RationalAngle, n: usize) -> usize {
        let p = theta.denominator();
        let symbols = p + 1;
        let total = symbols.pow(n as u32);
        (0..total)
            .filter(|&code| {
                let entries = (0..n)
                    .map(|i| match (code / symbols.pow(i as u32)) % symbols {
                        0 => Slot::Zero,
                        k => Slot::Unit(k - 1),
                    })
                    .collect();
                validate_grc(&GrWord::new(theta, entries).unwrap())
            })
            .count()
    }

    #[test]
    fn grc_counts_match_brute_force() {
        let theta = angle(1, 4);
        for n in 1..=4 {
            let words = enumerate_grc(theta, n, DEFAULT_CAP).unwrap();
            assert_eq!(words.len(), brute_grc(theta, n), "n = {n}");
            assert_eq!(words.len() as u128, count_grc(theta, n));
            assert!(words.iter().all(validate_grc));
            let distinct: HashSet<_> = words.iter().cloned().collect();
            assert_eq!(distinct.len(), words.len());
        }
        assert_eq!(
            (1..=3).map(|n| brute_grc(theta, n)).collect::<Vec<_>>(),
            vec![5, 13, 29]
        );
    }

    #[test]
    fn dzrc_counts_match_brute_force() {
        let g2 = RevolvingGroup::from_fractions(&[(0, 1), (1, 2)]).unwrap();
        let words = enumerate_dzrc(&g2, 1, DEFAULT_CAP).unwrap();
        assert_eq!(words.len(), 3);
        assert_eq!(enumerate_dzrc(&g2, 2, DEFAULT_CAP).unwrap().len(), 7);
        for grp in [g2, s_pi_two_thirds()] {
            for n in 1..=4 {
                let words = enumerate_dzrc(&grp, n, DEFAULT_CAP).unwrap();
                let symbols = grp.order() + 1;
                let brute = (0..symbols.pow(n as u32))
                    .filter(|&code| {
                        let entries: Vec<Option<u64>> = (0..n)
                            .map(|i| match (code / symbols.pow(i as u32)) % symbols {
                                0 => None,
                                k => Some(k - 1),
                            })
                            .collect();
                        validate_dzrc(&DeltaZeroWord::from_exponents(&grp, &entries).unwrap(), &grp)
                    })
                    .count();
                assert_eq!(words.len(), brute);
                assert_eq!(words.len() as u128, count_dzrc(&grp, n));
                assert!(words.contains(&DeltaZeroWord::zeros(n)));
                assert!(words.iter().all(|w| validate_dzrc(w, &grp)));
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let grp = s_pi_two_thirds();
        let a = sample_random(&Grammar::Drc(&grp), 5, 0).unwrap();
        let b = sample_random(&Grammar::Drc(&grp), 5, 0).unwrap();
        assert_eq!(a, b);
        for seed in 0..50 {
            match sample_random(&Grammar::Drc(&grp), 12, seed).unwrap() {
                Word::Delta(w) => assert!(validate_drc(&w, &grp)),
                _ => unreachable!(),
            }
            match sample_random(&Grammar::Dzrc(&grp), 12, seed).unwrap() {
                Word::DeltaZero(w) => assert!(validate_dzrc(&w, &grp)),
                _ => unreachable!(),
            }
            match sample_random(&Grammar::Grc(angle(1, 6)), 12, seed).unwrap() {
                Word::Gr(w) => assert!(validate_grc(&w)),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn drc_step_frequencies_are_uniform() {
        let grp = s_pi_two_thirds();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let samples = 100_000;
        let mut counts = [0usize; 3];
        for _ in 0..samples {
            let w = random_drc(&grp, 2, &mut rng);
            counts[grp.step_index(w.elements()[0], w.elements()[1]).unwrap()] += 1;
        }
        for c in counts {
            let freq = c as f64 / samples as f64;
            assert!((freq - 1.0 / 3.0).abs() <= 0.01, "frequency {freq}");
        }
    }

    #[test]
    fn coding_and_delta_conversions() {
        let grp = s_pi_two_thirds();
        let zeros = CodingWord::zeros(4);
        let w = coding_to_delta(&zeros, &grp);
        assert!(w.elements().iter().all(|&g| g == GroupElement::IDENTITY));
        assert_eq!(w.len(), 5);
        let x = CodingWord::new(vec![1, 2], 3).unwrap();
        assert_eq!(coding_to_delta(&x, &grp).to_string(), "0,3,5");
        assert_eq!(delta_to_coding(&coding_to_delta(&x, &grp), &grp).unwrap(), x);

        let example = DeltaWord::parse("0,3,3,5,5,5,2", &grp).unwrap();
        // Oracle: exponent differences 3,0,2,0,0,3 → θ₁ = π, θ₀, θ₂ = 2π/3, …
        let diffs: Vec<u64> = example
            .elements()
            .windows(2)
            .map(|p| (p[1].exponent() + 6 - p[0].exponent()) % 6)
            .collect();
        assert_eq!(diffs, vec![3, 0, 2, 0, 0, 3]);
        assert_eq!(delta_to_coding(&example, &grp).unwrap().to_string(), "102001");
        assert!(delta_to_coding(&DeltaWord::parse("0,1", &grp).unwrap(), &grp).is_err());
    }

    #[test]
    fn constant_sequences() {
        let g4 = RevolvingGroup::from_fractions(&[(0, 1), (1, 4)]).unwrap();
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let constant = DeltaWord::parse("2,2,2", &g4).unwrap();
        assert_eq!(constant_sequence(&constant, &g4, &[zero, one]).unwrap(), vec![zero; 2]);
        let w = DeltaWord::parse("0,1,1,2,3", &g4).unwrap();
        assert_eq!(
            constant_sequence(&w, &g4, &[zero, one]).unwrap(),
            vec![one, zero, one, one]
        );
        let ff = RevolvingGroup::from_fractions(&[(0, 1), (1, 6), (-1, 3)]).unwrap();
        let alpha = Complex64::new(0.5, -(3f64.sqrt()) / 6.0);
        let x = CodingWord::new(vec![1, 2], 3).unwrap();
        let w = coding_to_delta(&x, &ff);
        assert_eq!(
            constant_sequence(&w, &ff, &[zero, alpha, alpha.conj()]).unwrap(),
            vec![alpha, alpha.conj()]
        );
        assert!(constant_sequence(&DeltaWord::parse("0", &g4).unwrap(), &g4, &[zero, one]).is_err());
    }

    #[test]
    fn dzrc_from_coding_examples() {
        let g2 = RevolvingGroup::from_fractions(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(dzrc_from_coding(&CodingWord::zeros(3), &g2), DeltaZeroWord::zeros(3));
        let x = CodingWord::new(vec![1], 2).unwrap();
        assert_eq!(dzrc_from_coding(&x, &g2).to_string(), "0");
        let x = CodingWord::new(vec![1, 1, 0, 1], 2).unwrap();
        // Oracle: accumulate angle sums 0, π, 2π, 2π → (1, −1, 0, 1).
        let w = dzrc_from_coding(&x, &g2);
        let values: Vec<Complex64> = w
            .entries()
            .iter()
            .map(|s| s.unit().map_or(Complex64::new(0.0, 0.0), |g| g2.to_complex(g)))
            .collect();
        let expected = [1.0, -1.0, 0.0, 1.0];
        for (v, e) in values.iter().zip(expected) {
            assert!((v - Complex64::new(e, 0.0)).norm() < 1e-12);
        }
        assert!(validate_dzrc(&w, &g2));
    }

    #[test]
    fn text_round_trip() {
        let grp = s_pi_two_thirds();
        let w = DeltaZeroWord::parse("0,3,z,5", &grp).unwrap();
        assert_eq!(w.to_string(), "0,3,z,5");
        let x = CodingWord::parse("10212", 3).unwrap();
        assert_eq!(x.to_string(), "10212");
        assert!(CodingWord::parse("103", 3).is_err());
        assert!(DeltaWord::parse("0,6", &grp).is_err());
        assert!(DeltaWord::parse("0,a", &grp).is_err());
    }

    #[test]
    fn single_angle_reduction_lands_in_grc() {
        let g4 = RevolvingGroup::from_fractions(&[(0, 1), (-1, 4)]).unwrap();
        let theta = g4.angles()[1];
        for n in 1..=8 {
            let words = enumerate_drc(&g4, n + 1, None, DEFAULT_CAP).unwrap();
            let mapped: HashSet<_> = words
                .iter()
                .map(|w| delta_to_grs(w, &g4).unwrap())
                .inspect(|w| assert!(validate_grc(w)))
                .collect();
            let all: HashSet<_> = enumerate_grc(theta, n, DEFAULT_CAP).unwrap().into_iter().collect();
            assert_eq!(mapped, all, "n = {n}");
        }
        assert!(delta_to_grs(
            &DeltaWord::parse("0,0", &s_pi_two_thirds()).unwrap(),
            &s_pi_two_thirds()
        )
        .is_err());
    }
}
