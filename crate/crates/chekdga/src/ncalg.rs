//! The free noncommutative unital algebra Z<a_1,...,a_n, t, t^{-1}> (or the
//! same over F_q), in which the Chekanov-Eliashberg differential lives.
//!
//! The invertible generator t does *not* commute with the chord generators,
//! so a monomial is an alternating word
//!
//! ```text
//!     t^{e_0} c_1 t^{e_1} c_2 ... c_k t^{e_k}
//! ```
//!
//! with chord indices `c_i` and integer exponents `e_i` (inner exponents may
//! be zero, in which case adjacent chords are simply juxtaposed). Elements
//! are finite linear combinations of such words in canonical form.

use std::collections::BTreeMap;
use std::fmt;

use crate::ring::CoeffRing;

/// A monomial `t^{lead} c_1 t^{e_1} ... c_k t^{e_k}` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NcWord {
    /// Exponent of the leading power of t.
    pub lead: i32,
    /// The chords, each followed by a power of t.
    pub tail: Vec<(usize, i32)>,
}

impl NcWord {
    pub fn one() -> Self {
        NcWord { lead: 0, tail: Vec::new() }
    }

    pub fn t_pow(k: i32) -> Self {
        NcWord { lead: k, tail: Vec::new() }
    }

    pub fn gen(c: usize) -> Self {
        NcWord { lead: 0, tail: vec![(c, 0)] }
    }

    /// Number of chord letters in the word.
    pub fn len(&self) -> usize {
        self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tail.is_empty()
    }

    /// True when the word is a power of t (possibly 1).
    pub fn is_unit_word(&self) -> bool {
        self.tail.is_empty()
    }

    /// Concatenation of words (the algebra product of monomials).
    pub fn concat(&self, other: &NcWord) -> NcWord {
        let mut w = self.clone();
        if w.tail.is_empty() {
            w.lead += other.lead;
        } else {
            w.tail.last_mut().unwrap().1 += other.lead;
        }
        w.tail.extend_from_slice(&other.tail);
        w
    }

    /// True if the chord `c` occurs in the word.
    pub fn contains_gen(&self, c: usize) -> bool {
        self.tail.iter().any(|&(g, _)| g == c)
    }

    /// Degree of the word with respect to chord degrees and |t|.
    pub fn degree(&self, deg: &[i64], t_deg: i64) -> i64 {
        let mut d = self.lead as i64 * t_deg;
        for &(c, e) in &self.tail {
            d += deg[c] + e as i64 * t_deg;
        }
        d
    }
}

impl fmt::Display for NcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut printed = false;
        let put_t = |f: &mut fmt::Formatter<'_>, e: i32, printed: &mut bool| -> fmt::Result {
            if e != 0 {
                if *printed {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{e}")?;
                }
                *printed = true;
            }
            Ok(())
        };
        put_t(f, self.lead, &mut printed)?;
        for &(c, e) in &self.tail {
            if printed {
                write!(f, "*")?;
            }
            write!(f, "a{}", c + 1)?;
            printed = true;
            put_t(f, e, &mut printed)?;
        }
        if !printed {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// An element of the free noncommutative algebra over the chosen ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcElement {
    pub ring: CoeffRing,
    terms: BTreeMap<NcWord, i64>,
}

impl NcElement {
    pub fn zero(ring: CoeffRing) -> Self {
        NcElement { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: CoeffRing) -> Self {
        Self::from_word(ring, NcWord::one(), 1)
    }

    pub fn gen(ring: CoeffRing, c: usize) -> Self {
        Self::from_word(ring, NcWord::gen(c), 1)
    }

    pub fn t_pow(ring: CoeffRing, k: i32) -> Self {
        Self::from_word(ring, NcWord::t_pow(k), 1)
    }

    pub fn from_word(ring: CoeffRing, w: NcWord, c: i64) -> Self {
        let mut e = Self::zero(ring);
        e.add_term(w, c);
        e
    }

    pub fn constant(ring: CoeffRing, c: i64) -> Self {
        Self::from_word(ring, NcWord::one(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NcWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a word.
    pub fn coeff(&self, w: &NcWord) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: NcWord, c: i64) {
        let c = self.ring.normalize(c);
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = self.ring.add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &NcElement) -> NcElement {
        debug_assert_eq!(self.ring, other.ring);
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &NcElement) -> NcElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcElement {
        let mut out = Self::zero(self.ring);
        for (w, c) in self.terms() {
            out.add_term(w.clone(), self.ring.neg(c));
        }
        out
    }

    pub fn scale(&self, k: i64) -> NcElement {
        let mut out = Self::zero(self.ring);
        for (w, c) in self.terms() {
            out.add_term(w.clone(), self.ring.mul(c, k));
        }
        out
    }

    pub fn mul(&self, other: &NcElement) -> NcElement {
        debug_assert_eq!(self.ring, other.ring);
        let mut out = Self::zero(self.ring);
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                out.add_term(w1.concat(w2), self.ring.mul(c1, c2));
            }
        }
        out
    }

    /// Left and right multiplication by powers of t.
    pub fn conjugate_t(&self, left: i32, right: i32) -> NcElement {
        let l = NcElement::t_pow(self.ring, left);
        let r = NcElement::t_pow(self.ring, right);
        l.mul(self).mul(&r)
    }

    pub fn contains_gen(&self, c: usize) -> bool {
        self.terms.keys().any(|w| w.contains_gen(c))
    }

    /// All chord indices occurring in the element.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .terms
            .keys()
            .flat_map(|w| w.tail.iter().map(|&(c, _)| c))
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// If every word is homogeneous of one degree, return it (zero: `None`).
    pub fn homogeneous_degree(&self, deg: &[i64], t_deg: i64) -> Option<Option<i64>> {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Some(None),
            Some(w) => w.degree(deg, t_deg),
        };
        for w in it {
            if w.degree(deg, t_deg) != first {
                return None;
            }
        }
        Some(Some(first))
    }

    /// Canonical text rendering: terms sorted by (degree, word length,
    /// lexicographic word), with larger leading t-powers first among ties.
    pub fn render(&self, deg: &[i64], t_deg: i64) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&NcWord, i64)> = self.terms().collect();
        terms.sort_by(|(a, _), (b, _)| {
            a.degree(deg, t_deg)
                .cmp(&b.degree(deg, t_deg))
                .then(a.tail.len().cmp(&b.tail.len()))
                .then(a.tail.cmp(&b.tail))
                .then(a.lead.abs().cmp(&b.lead.abs()))
                .then(a.lead.cmp(&b.lead))
        });
        let mut out = String::new();
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push(' ');
                out.push_str(sign);
                out.push(' ');
            }
            let trivial_word = w.is_unit_word() && w.lead == 0;
            if mag != 1 || trivial_word {
                out.push_str(&mag.to_string());
                if !trivial_word {
                    out.push('*');
                }
            }
            if !trivial_word {
                out.push_str(&w.to_string());
            }
        }
        out
    }

    /// Change the coefficient ring (reduction Z -> F_p, or F_p -> F_p).
    pub fn map_ring(&self, ring: CoeffRing) -> NcElement {
        let mut out = NcElement::zero(ring);
        for (w, c) in self.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl fmt::Display for NcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let trivial_word = w.is_unit_word() && w.lead == 0;
            if mag != 1 || trivial_word {
                write!(f, "{mag}")?;
                if !trivial_word {
                    write!(f, "*")?;
                }
            }
            if !trivial_word {
                write!(f, "{w}")?;
            }
        }
        Ok(())
    }
}

impl NcElement {
    /// Render with explicit generator names (used for script serialization,
    /// where stabilization generators need not follow the `a<i>` pattern).
    pub fn render_with_names(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push(' ');
                out.push_str(sign);
                out.push(' ');
            }
            let mut parts: Vec<String> = Vec::new();
            let push_t = |parts: &mut Vec<String>, e: i32| {
                if e == 1 {
                    parts.push("t".to_string());
                } else if e != 0 {
                    parts.push(format!("t^{e}"));
                }
            };
            push_t(&mut parts, w.lead);
            for &(c, e) in &w.tail {
                parts.push(names[c].clone());
                push_t(&mut parts, e);
            }
            if mag != 1 || parts.is_empty() {
                parts.insert(0, mag.to_string());
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

/// Parse an element in the canonical rendering: terms separated by `+`/`-`,
/// each a `*`-separated product of an optional integer coefficient, generator
/// names, and `t`/`t^k` powers. Inverse of [`NcElement::render_with_names`].
pub fn parse_element(s: &str, ring: CoeffRing, names: &[String]) -> Result<NcElement, String> {
    let s = s.trim();
    let mut out = NcElement::zero(ring);
    if s.is_empty() || s == "0" {
        return Ok(out);
    }
    // Split into signed terms. A `+`/`-` separates terms unless it follows
    // `^` (an exponent sign, as in `t^-1`) or starts the string.
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && prev != Some('^') {
            if cur.trim().is_empty() {
                if ch == '-' {
                    sign = -sign;
                }
            } else {
                terms.push((sign, cur.trim().to_string()));
                cur = String::new();
                sign = if ch == '-' { -1 } else { 1 };
            }
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if cur.trim().is_empty() {
        return Err(format!("dangling sign in {s:?}"));
    }
    terms.push((sign, cur.trim().to_string()));

    for (sgn, term) in terms {
        let mut coeff = sgn;
        let mut word = NcWord::one();
        for factor in term.split('*') {
            let f = factor.trim();
            if f.is_empty() {
                return Err(format!("empty factor in term {term:?}"));
            }
            if let Ok(k) = f.parse::<i64>() {
                coeff *= k;
            } else if f == "t" {
                word = word.concat(&NcWord::t_pow(1));
            } else if let Some(e) = f.strip_prefix("t^") {
                let k: i32 = e.parse().map_err(|_| format!("bad t power {f:?}"))?;
                word = word.concat(&NcWord::t_pow(k));
            } else if let Some(i) = names.iter().position(|n| n == f) {
                word = word.concat(&NcWord::gen(i));
            } else {
                return Err(format!("unknown generator {f:?}"));
            }
        }
        out.add_term(word, coeff);
    }
    Ok(out)
}

/// A target algebra into which `NcElement`s can be evaluated: provides the
/// images of 1, t^k and each chord generator, plus ring operations.
pub trait NcTarget {
    type El: Clone;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn t_pow(&self, k: i32) -> Self::El;
    fn gen(&self, c: usize) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn scale(&self, k: i64, a: &Self::El) -> Self::El;

    fn eval(&self, e: &NcElement) -> Self::El {
        let mut acc = self.zero();
        for (w, c) in e.terms() {
            let mut m = self.t_pow(w.lead);
            for &(g, e) in &w.tail {
                m = self.mul(&m, &self.gen(g));
                if e != 0 {
                    m = self.mul(&m, &self.t_pow(e));
                }
            }
            acc = self.add(&acc, &self.scale(c, &m));
        }
        acc
    }
}

/// Evaluation target: the algebra itself, with prescribed generator images
/// (an algebra endomorphism fixing t).
pub struct NcSubst<'a> {
    pub ring: CoeffRing,
    pub images: &'a [NcElement],
}

impl NcTarget for NcSubst<'_> {
    type El = NcElement;
    fn zero(&self) -> NcElement {
        NcElement::zero(self.ring)
    }
    fn one(&self) -> NcElement {
        NcElement::one(self.ring)
    }
    fn t_pow(&self, k: i32) -> NcElement {
        NcElement::t_pow(self.ring, k)
    }
    fn gen(&self, c: usize) -> NcElement {
        self.images[c].clone()
    }
    fn add(&self, a: &NcElement, b: &NcElement) -> NcElement {
        a.add(b)
    }
    fn mul(&self, a: &NcElement, b: &NcElement) -> NcElement {
        a.mul(b)
    }
    fn scale(&self, k: i64, a: &NcElement) -> NcElement {
        a.scale(k)
    }
}

/// Evaluation target: the scalar ring itself, with a unit image for t and a
/// scalar image per chord (this is exactly an augmentation-style evaluation).
pub struct ScalarTarget<'a> {
    pub ring: CoeffRing,
    /// Image of t (must be a unit of the ring).
    pub t_val: i64,
    /// Inverse of `t_val`.
    pub t_inv: i64,
    pub images: &'a [i64],
}

impl<'a> ScalarTarget<'a> {
    pub fn new(ring: CoeffRing, t_val: i64, images: &'a [i64]) -> Self {
        let t_inv = ring.inv(t_val).expect("image of t must be a unit");
        ScalarTarget { ring, t_val, t_inv, images }
    }
}

impl NcTarget for ScalarTarget<'_> {
    type El = i64;
    fn zero(&self) -> i64 {
        0
    }
    fn one(&self) -> i64 {
        1
    }
    fn t_pow(&self, k: i32) -> i64 {
        let base = if k >= 0 { self.t_val } else { self.t_inv };
        let mut v = 1;
        for _ in 0..k.abs() {
            v = self.ring.mul(v, base);
        }
        v
    }
    fn gen(&self, c: usize) -> i64 {
        self.images[c]
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        self.ring.add(*a, *b)
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        self.ring.mul(*a, *b)
    }
    fn scale(&self, k: i64, a: &i64) -> i64 {
        self.ring.mul(k, *a)
    }
}

/// Extend chord images to a derivation via the signed Leibniz rule
/// d(vw) = d(v)w + (-1)^{|v|} v d(w), with d(t) = 0.
///
/// `deg` gives integer chord degrees, `t_deg` the degree of t; the sign only
/// depends on parities, so any integer lift of a (2k)-graded degree works.
/// `char2` suppresses signs entirely (required for odd-graded settings).
pub fn leibniz(
    ring: CoeffRing,
    images: &[NcElement],
    deg: &[i64],
    t_deg: i64,
    e: &NcElement,
) -> NcElement {
    let mut out = NcElement::zero(ring);
    for (w, c) in e.terms() {
        // d(t^{e0} c_1 t^{e1} ... ) = sum_k +- prefix * d(c_k) * suffix
        for k in 0..w.tail.len() {
            let prefix = NcWord { lead: w.lead, tail: w.tail[..k].to_vec() };
            let suffix = NcWord { lead: w.tail[k].1, tail: w.tail[k + 1..].to_vec() };
            let sign = if prefix.degree(deg, t_deg) % 2 != 0 { -1 } else { 1 };
            let mid = &images[w.tail[k].0];
            let piece = NcElement::from_word(ring, prefix, ring.mul(c, sign))
                .mul(mid)
                .mul(&NcElement::from_word(ring, suffix, 1));
            out = out.add(&piece);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoeffRing = CoeffRing::Int;

    fn a(i: usize) -> NcElement {
        NcElement::gen(Z, i)
    }

    #[test]
    fn word_concat_merges_t_powers() {
        let w1 = NcWord { lead: 1, tail: vec![(0, -1)] }; // t a1 t^-1
        let w2 = NcWord { lead: 2, tail: vec![(1, 0)] }; // t^2 a2
        let w = w1.concat(&w2);
        assert_eq!(w, NcWord { lead: 1, tail: vec![(0, 1), (1, 0)] });
    }

    #[test]
    fn product_is_associative_and_units_cancel() {
        let x = a(0).mul(&NcElement::t_pow(Z, 1));
        let y = NcElement::t_pow(Z, -1).mul(&a(1));
        let xy = x.mul(&y);
        // a1 t t^-1 a2 = a1 a2
        assert_eq!(xy, a(0).mul(&a(1)));
        let z = a(2).add(&NcElement::one(Z));
        assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn addition_cancels_terms() {
        let s = a(0).add(&a(0).neg());
        assert!(s.is_zero());
    }

    #[test]
    fn leibniz_sign_follows_parity() {
        // Two generators x (odd), y (even) with d(x) = 1, d(y) = x.
        // d(xy) = d(x) y + (-1)^1 x d(y) = y - x^2.
        let deg = vec![1, 2];
        let images = vec![NcElement::one(Z), a(0)];
        let xy = a(0).mul(&a(1));
        let d = leibniz(Z, &images, &deg, 0, &xy);
        let expected = a(1).sub(&a(0).mul(&a(0)));
        assert_eq!(d, expected);
    }

    #[test]
    fn leibniz_kills_t() {
        let deg = vec![1];
        let images = vec![NcElement::one(Z)];
        let w = NcElement::t_pow(Z, 3).mul(&a(0)).mul(&NcElement::t_pow(Z, -2));
        let d = leibniz(Z, &images, &deg, 0, &w);
        assert_eq!(d, NcElement::t_pow(Z, 1));
    }

    #[test]
    fn trefoil_differential_squares_to_zero_by_hand() {
        // d a1 = 1 + a3 + a5 + a5 a4 a3, d a2 = 1 - a3 t - a5 t - a3 a4 a5 t,
        // d a3 = d a4 = d a5 = 0; |a1| = |a2| = 1, others 0.
        let deg = vec![1, 1, 0, 0, 0];
        let one = NcElement::one(Z);
        let t = NcElement::t_pow(Z, 1);
        let d1 = one
            .add(&a(2))
            .add(&a(4))
            .add(&a(4).mul(&a(3)).mul(&a(2)));
        let d2 = one
            .sub(&a(2).mul(&t))
            .sub(&a(4).mul(&t))
            .sub(&a(2).mul(&a(3)).mul(&a(4)).mul(&t));
        let images = vec![d1, d2, NcElement::zero(Z), NcElement::zero(Z), NcElement::zero(Z)];
        for i in 0..5 {
            let dd = leibniz(Z, &images, &deg, 0, &images[i]);
            assert!(dd.is_zero(), "d^2(a{}) = {}", i + 1, dd);
        }
    }

    #[test]
    fn scalar_evaluation_matches_hand_computation() {
        // Over F_3 with t -> 2, a1 -> 1, a2 -> 2: eval(t a1 a2 t^{-1} + 2) = 2*1*2*2 + 2 = 10 = 1.
        let r = CoeffRing::Fp(3);
        let e = NcElement::t_pow(r, 1)
            .mul(&NcElement::gen(r, 0))
            .mul(&NcElement::gen(r, 1))
            .mul(&NcElement::t_pow(r, -1))
            .add(&NcElement::constant(r, 2));
        let images = [1, 2];
        let tgt = ScalarTarget::new(r, 2, &images);
        assert_eq!(tgt.eval(&e), 1);
    }
}
