//! Finite unions of intervals and isolated points, with the set operators
//! `⊞` (Minkowski sum), `⊟` (Minkowski difference) and `⊡` (pointwise product).
//!
//! Endpoints carry an open/closed flag. A result endpoint is closed exactly
//! when some pair of operand values attaining it is present in both operands,
//! so `[0,0.12] ⊞ (0.16,0.40]` yields `(0.16,0.52]`.
//!
//! Values produced by `⊟` may fall outside `[0,1]`; [`SubunitarySet::clamp_unit`]
//! maps them back.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Tolerance for treating two computed endpoints as the same number.
const ENDPOINT_EPS: f64 = 1e-12;

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= ENDPOINT_EPS
}

/// One connected component: an interval, or a point when `lo == hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Piece {
    pub fn point(x: f64) -> Self {
        Self {
            lo: x,
            hi: x,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    fn is_valid(&self) -> bool {
        self.lo < self.hi || (self.lo == self.hi && self.lo_closed && self.hi_closed)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = x > self.lo || (x == self.lo && self.lo_closed);
        let below = x < self.hi || (x == self.hi && self.hi_closed);
        above && below
    }

    fn sign_split(self) -> Vec<Piece> {
        let touches_neg = self.lo < 0.0;
        let touches_pos = self.hi > 0.0;
        let has_zero = self.contains(0.0);
        if !has_zero && !(touches_neg && touches_pos) {
            return vec![self];
        }
        let mut out = Vec::with_capacity(3);
        if touches_neg {
            out.push(Piece {
                lo: self.lo,
                hi: 0.0,
                lo_closed: self.lo_closed,
                hi_closed: false,
            });
        }
        if has_zero {
            out.push(Piece::point(0.0));
        }
        if touches_pos {
            out.push(Piece {
                lo: 0.0,
                hi: self.hi,
                lo_closed: false,
                hi_closed: self.hi_closed,
            });
        }
        out
    }
}

/// Pick the extreme among candidate endpoint values; the endpoint is closed
/// when any candidate attaining it is closed.
fn extreme(cands: &[(f64, bool)], want_min: bool) -> (f64, bool) {
    let v = cands
        .iter()
        .map(|c| c.0)
        .fold(if want_min { f64::INFINITY } else { f64::NEG_INFINITY }, |acc, x| {
            if want_min {
                acc.min(x)
            } else {
                acc.max(x)
            }
        });
    let closed = cands.iter().any(|&(x, c)| c && same(x, v));
    (v, closed)
}

/// A finite union of disjoint, non-adjacent pieces sorted by lower bound.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SubunitarySet {
    pieces: Vec<Piece>,
}

impl SubunitarySet {
    pub fn empty() -> Self {
        Self { pieces: Vec::new() }
    }

    pub fn point(x: f64) -> Self {
        Self {
            pieces: vec![Piece::point(x)],
        }
    }

    pub fn points(xs: &[f64]) -> Self {
        Self::from_pieces(xs.iter().map(|&x| Piece::point(x)))
    }

    pub fn interval(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        let p = Piece {
            lo,
            hi,
            lo_closed,
            hi_closed,
        };
        if !lo.is_finite() || !hi.is_finite() || !p.is_valid() {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { pieces: vec![p] })
    }

    /// `[lo, hi]`
    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Self::interval(lo, hi, true, true)
    }

    /// `(lo, hi)`
    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        Self::interval(lo, hi, false, false)
    }

    /// Build from arbitrary pieces, dropping invalid ones and merging.
    pub fn from_pieces(pieces: impl IntoIterator<Item = Piece>) -> Self {
        let mut v: Vec<Piece> = pieces.into_iter().filter(Piece::is_valid).collect();
        v.sort_by(|a, b| {
            a.lo.total_cmp(&b.lo)
                .then_with(|| b.lo_closed.cmp(&a.lo_closed))
        });
        let mut out: Vec<Piece> = Vec::with_capacity(v.len());
        for p in v {
            if let Some(c) = out.last_mut() {
                let overlaps = p.lo < c.hi - ENDPOINT_EPS;
                let touches = same(p.lo, c.hi) && (c.hi_closed || p.lo_closed);
                if overlaps || touches {
                    if same(p.lo, c.lo) {
                        c.lo_closed |= p.lo_closed;
                    }
                    if same(p.hi, c.hi) {
                        c.hi_closed |= p.hi_closed;
                    } else if p.hi > c.hi {
                        c.hi = p.hi;
                        c.hi_closed = p.hi_closed;
                    }
                    continue;
                }
            }
            out.push(p);
        }
        Self { pieces: out }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_pieces(self.pieces.iter().chain(&other.pieces).copied())
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn inf(&self) -> Option<f64> {
        self.pieces.first().map(|p| p.lo)
    }

    pub fn sup(&self) -> Option<f64> {
        self.pieces.last().map(|p| p.hi)
    }

    /// The single value of a one-point set.
    pub fn as_point(&self) -> Option<f64> {
        match self.pieces.as_slice() {
            [p] if p.is_point() => Some(p.lo),
            _ => None,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    /// Membership with endpoints widened by `tol`.
    pub fn contains_within(&self, x: f64, tol: f64) -> bool {
        self.pieces.iter().any(|p| x >= p.lo - tol && x <= p.hi + tol)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for p in &self.pieces {
            for q in &other.pieces {
                let (lo, lo_closed) = if p.lo > q.lo {
                    (p.lo, p.lo_closed)
                } else if q.lo > p.lo {
                    (q.lo, q.lo_closed)
                } else {
                    (p.lo, p.lo_closed && q.lo_closed)
                };
                let (hi, hi_closed) = if p.hi < q.hi {
                    (p.hi, p.hi_closed)
                } else if q.hi < p.hi {
                    (q.hi, q.hi_closed)
                } else {
                    (p.hi, p.hi_closed && q.hi_closed)
                };
                out.push(Piece {
                    lo,
                    hi,
                    lo_closed,
                    hi_closed,
                });
            }
        }
        Self::from_pieces(out)
    }

    fn pairwise(&self, other: &Self, f: impl Fn(&Piece, &Piece) -> Piece) -> Self {
        let mut out = Vec::with_capacity(self.pieces.len() * other.pieces.len());
        for p in &self.pieces {
            for q in &other.pieces {
                out.push(f(p, q));
            }
        }
        Self::from_pieces(out)
    }

    /// `⊞` without the emptiness check. An empty operand gives an empty result.
    pub(crate) fn plus(&self, other: &Self) -> Self {
        self.pairwise(other, |p, q| Piece {
            lo: p.lo + q.lo,
            hi: p.hi + q.hi,
            lo_closed: p.lo_closed && q.lo_closed,
            hi_closed: p.hi_closed && q.hi_closed,
        })
    }

    pub(crate) fn minus(&self, other: &Self) -> Self {
        self.pairwise(other, |p, q| Piece {
            lo: p.lo - q.hi,
            hi: p.hi - q.lo,
            lo_closed: p.lo_closed && q.hi_closed,
            hi_closed: p.hi_closed && q.lo_closed,
        })
    }

    pub(crate) fn times(&self, other: &Self) -> Self {
        let lhs: Vec<Piece> = self.pieces.iter().flat_map(|p| p.sign_split()).collect();
        let rhs: Vec<Piece> = other.pieces.iter().flat_map(|p| p.sign_split()).collect();
        let mut out = Vec::with_capacity(lhs.len() * rhs.len());
        for p in &lhs {
            for q in &rhs {
                // Every interior value times zero is zero, whatever the endpoints.
                if (p.is_point() && p.lo == 0.0) || (q.is_point() && q.lo == 0.0) {
                    out.push(Piece::point(0.0));
                    continue;
                }
                // Each factor has constant sign, so the extremes sit at endpoint pairs.
                let cands = [
                    (p.lo * q.lo, p.lo_closed && q.lo_closed),
                    (p.lo * q.hi, p.lo_closed && q.hi_closed),
                    (p.hi * q.lo, p.hi_closed && q.lo_closed),
                    (p.hi * q.hi, p.hi_closed && q.hi_closed),
                ];
                let (lo, lo_closed) = extreme(&cands, true);
                let (hi, hi_closed) = extreme(&cands, false);
                out.push(Piece {
                    lo,
                    hi,
                    lo_closed,
                    hi_closed,
                });
            }
        }
        Self::from_pieces(out)
    }

    fn checked(&self, other: &Self) -> Result<()> {
        if self.is_empty() || other.is_empty() {
            Err(Error::EmptyOperand)
        } else {
            Ok(())
        }
    }

    /// `self ⊞ other = { x + y }`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.checked(other)?;
        Ok(self.plus(other))
    }

    /// `self ⊟ other = { x - y }`. The result is not clamped.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.checked(other)?;
        Ok(self.minus(other))
    }

    /// `self ⊡ other = { x · y }`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.checked(other)?;
        Ok(self.times(other))
    }

    /// Pointwise `{ min(x, y) }`.
    pub fn pointwise_min(&self, other: &Self) -> Self {
        self.pairwise(other, |p, q| {
            let (lo, lo_closed) = if p.lo < q.lo {
                (p.lo, p.lo_closed)
            } else if q.lo < p.lo {
                (q.lo, q.lo_closed)
            } else {
                (p.lo, p.lo_closed || q.lo_closed)
            };
            let (hi, hi_closed) = if p.hi < q.hi {
                (p.hi, p.hi_closed)
            } else if q.hi < p.hi {
                (q.hi, q.hi_closed)
            } else {
                (p.hi, p.hi_closed && q.hi_closed)
            };
            Piece {
                lo,
                hi,
                lo_closed,
                hi_closed,
            }
        })
    }

    /// Pointwise `{ max(x, y) }`.
    pub fn pointwise_max(&self, other: &Self) -> Self {
        self.pairwise(other, |p, q| {
            let (lo, lo_closed) = if p.lo > q.lo {
                (p.lo, p.lo_closed)
            } else if q.lo > p.lo {
                (q.lo, q.lo_closed)
            } else {
                (p.lo, p.lo_closed && q.lo_closed)
            };
            let (hi, hi_closed) = if p.hi > q.hi {
                (p.hi, p.hi_closed)
            } else if q.hi > p.hi {
                (q.hi, q.hi_closed)
            } else {
                (p.hi, p.hi_closed || q.hi_closed)
            };
            Piece {
                lo,
                hi,
                lo_closed,
                hi_closed,
            }
        })
    }

    /// Image under `x ↦ clamp(x, lo, hi)`.
    pub fn clamp(&self, lo: f64, hi: f64) -> Self {
        Self::from_pieces(self.pieces.iter().map(|p| {
            if p.hi < lo || (p.hi == lo && !p.hi_closed) {
                Piece::point(lo)
            } else if p.lo > hi || (p.lo == hi && !p.lo_closed) {
                Piece::point(hi)
            } else {
                let (l, lc) = if p.lo < lo { (lo, true) } else { (p.lo, p.lo_closed) };
                let (h, hc) = if p.hi > hi { (hi, true) } else { (p.hi, p.hi_closed) };
                Piece {
                    lo: l,
                    hi: h,
                    lo_closed: lc,
                    hi_closed: hc,
                }
            }
        }))
    }

    /// Image under clamping to `[0, 1]`.
    pub fn clamp_unit(&self) -> Self {
        self.clamp(0.0, 1.0)
    }

    /// Map every value by a positive scale factor.
    pub fn scale(&self, k: f64) -> Self {
        Self::from_pieces(self.pieces.iter().map(|p| Piece {
            lo: p.lo * k,
            hi: p.hi * k,
            ..*p
        }))
    }

    /// Structural comparison with endpoints compared up to `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.pieces.len() == other.pieces.len()
            && self.pieces.iter().zip(&other.pieces).all(|(p, q)| {
                (p.lo - q.lo).abs() <= tol
                    && (p.hi - q.hi).abs() <= tol
                    && p.lo_closed == q.lo_closed
                    && p.hi_closed == q.hi_closed
                    && p.is_point() == q.is_point()
            })
    }

    /// Render with a fixed number of decimals.
    pub fn to_string_with_precision(&self, precision: usize) -> String {
        self.render(|x| format!("{x:.precision$}"))
    }

    fn render(&self, num: impl Fn(f64) -> String) -> String {
        if self.pieces.is_empty() {
            return "{}".into();
        }
        let mut out: Vec<String> = Vec::new();
        let mut run: Vec<String> = Vec::new();
        for p in &self.pieces {
            if p.is_point() {
                run.push(num(p.lo));
                continue;
            }
            if !run.is_empty() {
                out.push(format!("{{{}}}", run.join(",")));
                run.clear();
            }
            out.push(format!(
                "{}{},{}{}",
                if p.lo_closed { '[' } else { '(' },
                num(p.lo),
                num(p.hi),
                if p.hi_closed { ']' } else { ')' }
            ));
        }
        if !run.is_empty() {
            out.push(format!("{{{}}}", run.join(",")));
        }
        out.join("u")
    }
}

/// Shortest round-tripping decimals, e.g. `[0.1,0.2]u{0.3}`.
impl fmt::Display for SubunitarySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|x| format!("{x}")))
    }
}

/// Parses `[a,b]`, `(a,b)`, `[a,b)`, `(a,b]`, `{x,y,..}` and bare numbers,
/// joined by `u` or `∪`.
impl FromStr for SubunitarySet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut pieces = Vec::new();
        let mut pos = 0usize;
        let err = |column: usize, message: &str| Error::Parse {
            column: column + 1,
            message: message.to_string(),
        };
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let number = |pos: &mut usize| -> Result<f64> {
            skip_ws(pos);
            let start = *pos;
            while *pos < chars.len()
                && (chars[*pos].is_ascii_digit() || matches!(chars[*pos], '.' | '-' | '+' | 'e' | 'E'))
            {
                *pos += 1;
            }
            let text: String = chars[start..*pos].iter().collect();
            text.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| err(start, "expected a number"))
        };
        loop {
            skip_ws(&mut pos);
            let Some(&c) = chars.get(pos) else {
                return Err(err(pos, "expected a set"));
            };
            match c {
                '[' | '(' => {
                    pos += 1;
                    let lo = number(&mut pos)?;
                    skip_ws(&mut pos);
                    if chars.get(pos) != Some(&',') {
                        return Err(err(pos, "expected `,`"));
                    }
                    pos += 1;
                    let hi = number(&mut pos)?;
                    skip_ws(&mut pos);
                    let close = match chars.get(pos) {
                        Some(']') => true,
                        Some(')') => false,
                        _ => return Err(err(pos, "expected `]` or `)`")),
                    };
                    let piece = Piece {
                        lo,
                        hi,
                        lo_closed: c == '[',
                        hi_closed: close,
                    };
                    if !piece.is_valid() {
                        return Err(Error::InvalidInterval { lo, hi });
                    }
                    pieces.push(piece);
                    pos += 1;
                }
                '{' => {
                    pos += 1;
                    loop {
                        pieces.push(Piece::point(number(&mut pos)?));
                        skip_ws(&mut pos);
                        match chars.get(pos) {
                            Some(',') => pos += 1,
                            Some('}') => {
                                pos += 1;
                                break;
                            }
                            _ => return Err(err(pos, "expected `,` or `}`")),
                        }
                    }
                }
                _ => pieces.push(Piece::point(number(&mut pos)?)),
            }
            skip_ws(&mut pos);
            match chars.get(pos) {
                None => break,
                Some('u' | '∪' | 'U') => pos += 1,
                Some(_) => return Err(err(pos, "expected `u` between pieces")),
            }
        }
        Ok(Self::from_pieces(pieces))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> SubunitarySet {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let s = set("[0.1,0.2]u{0.3}");
        assert_eq!(s.pieces().len(), 2);
        assert_eq!(s.to_string(), "[0.1,0.2]u{0.3}");
        assert_eq!(set("(0.4,0.6) u [0.7,0.8]").to_string(), "(0.4,0.6)u[0.7,0.8]");
        assert_eq!(set("0.5").as_point(), Some(0.5));
        assert_eq!(set("{0.5,0.6}").to_string(), "{0.5,0.6}");
        assert!("[0.3,0.1]".parse::<SubunitarySet>().is_err());
        assert!("(0.3,0.3)".parse::<SubunitarySet>().is_err());
        assert!("[0.1,0.2".parse::<SubunitarySet>().is_err());
        assert!("".parse::<SubunitarySet>().is_err());
    }

    #[test]
    fn merging_rules() {
        // (0,0.24) ∪ [0,0.32] = [0,0.32]
        assert_eq!(set("(0,0.24)u[0,0.32]"), set("[0,0.32]"));
        assert_eq!(set("[0,0.1)u[0.1,0.2]"), set("[0,0.2]"));
        assert_eq!(set("[0,0.1)u(0.1,0.2]").pieces().len(), 2);
        assert_eq!(set("{0.1}u(0.1,0.2]"), set("[0.1,0.2]"));
        assert_eq!(set("{0.15}u[0.1,0.2]"), set("[0.1,0.2]"));
    }

    #[test]
    fn addition_example() {
        let lhs = set("[0,0.12]u{0.15,0.18}");
        let rhs = set("(0.16,0.40]");
        let sum = lhs.add(&rhs).unwrap();
        assert!(sum.approx_eq(&set("(0.16,0.58]"), 1e-12), "{sum}");
        let s = set("[0.1,0.2]u{0.3}");
        assert_eq!(s.add(&SubunitarySet::point(0.0)).unwrap(), s);
        let pts = set("{0.1}").add(&set("{0.2,0.3}")).unwrap();
        assert!(pts.approx_eq(&set("{0.3,0.4}"), 1e-12), "{pts}");
    }

    #[test]
    fn subtraction_examples() {
        let d = SubunitarySet::point(1.0).sub(&set("[0.2,0.4]")).unwrap();
        assert!(d.approx_eq(&set("[0.6,0.8]"), 1e-12));
        let s = set("(0.2,0.5]u{0.7}");
        assert_eq!(s.sub(&SubunitarySet::point(0.0)).unwrap(), s);
        let d = set("[0.5,0.6]").sub(&set("[0.5,0.6]")).unwrap();
        assert!((d.inf().unwrap() + 0.1).abs() < 1e-12);
        assert!((d.sup().unwrap() - 0.1).abs() < 1e-12);
    }

    #[test]
    fn multiplication_examples() {
        let a = set("[0.1,0.2]").mul(&set("[0.4,0.5]")).unwrap();
        assert!(a.approx_eq(&set("[0.04,0.10]"), 1e-12));
        let b = set("{0.3}").mul(&set("[0.4,0.5]")).unwrap();
        assert!(b.approx_eq(&set("[0.12,0.15]"), 1e-12));
        let c = set("(0.4,0.6)u[0.7,0.8]").mul(&set("[0,0.4]u{0.5,0.6}")).unwrap();
        assert!(c.approx_eq(&set("[0,0.40]u[0.42,0.48]"), 1e-12), "{c}");
    }

    #[test]
    fn zero_factor_is_attained() {
        // 0 ∈ [0,0.4], so 0 = x·0 lies in the product.
        let p = set("(0.4,0.6)").mul(&set("[0,0.4]")).unwrap();
        assert!(p.approx_eq(&set("[0,0.24)"), 1e-12), "{p}");
        let q = set("(0.4,0.6)").mul(&set("(0,0.4]")).unwrap();
        assert!(q.approx_eq(&set("(0,0.24)"), 1e-12), "{q}");
    }

    #[test]
    fn empty_operands_rejected() {
        let e = SubunitarySet::empty();
        let s = set("[0,1]");
        assert_eq!(e.add(&s), Err(Error::EmptyOperand));
        assert_eq!(s.sub(&e), Err(Error::EmptyOperand));
        assert_eq!(s.mul(&e), Err(Error::EmptyOperand));
    }

    #[test]
    fn clamping() {
        assert_eq!(set("[-0.1,0.1]").clamp_unit(), set("[0,0.1]"));
        assert_eq!(set("(-0.3,-0.1)").clamp_unit(), set("{0}"));
        assert_eq!(set("(0.9,1.2)").clamp_unit(), set("(0.9,1]"));
        assert_eq!(set("{1.5}").clamp_unit(), set("{1}"));
    }

    #[test]
    fn pointwise_min_max() {
        let a = set("[0.2,0.5]");
        let b = set("(0.3,0.4]");
        assert_eq!(a.pointwise_min(&b), set("[0.2,0.4]"));
        assert_eq!(a.pointwise_max(&b), set("(0.3,0.5]"));
        assert_eq!(set("{0.6}").pointwise_max(&set("{0.5}")), set("{0.6}"));
    }

    #[test]
    fn intersection() {
        let a = set("[0.1,0.2]u{0.3}");
        let b = set("[0.2,0.3]u(0.4,0.6)");
        assert_eq!(a.intersect(&b), set("{0.2,0.3}"));
        assert!(set("[0,0.1)").intersect(&set("[0.1,0.2]")).is_empty());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn piece() -> impl Strategy<Value = Piece> {
            (0.0..1.0f64, 0.0..0.5f64, any::<bool>(), any::<bool>(), any::<bool>()).prop_map(
                |(lo, w, lc, hc, pt)| {
                    if pt || w < 1e-3 {
                        Piece::point(lo)
                    } else {
                        Piece {
                            lo,
                            hi: lo + w,
                            lo_closed: lc,
                            hi_closed: hc,
                        }
                    }
                },
            )
        }

        fn sub_set() -> impl Strategy<Value = SubunitarySet> {
            prop::collection::vec(piece(), 1..4).prop_map(SubunitarySet::from_pieces)
        }

        /// Members of a set: endpoints that are attained plus interior points.
        fn samples(s: &SubunitarySet) -> Vec<f64> {
            let mut out = Vec::new();
            for p in s.pieces() {
                if p.lo_closed {
                    out.push(p.lo);
                }
                if p.hi_closed && !p.is_point() {
                    out.push(p.hi);
                }
                for k in 1..8 {
                    out.push(p.lo + (p.hi - p.lo) * k as f64 / 8.0);
                }
            }
            out.retain(|&x| s.contains(x));
            out
        }

        proptest! {
            #[test]
            fn operators_contain_pointwise_images(a in sub_set(), b in sub_set()) {
                let sum = a.add(&b).unwrap();
                let diff = a.sub(&b).unwrap();
                let prod = a.mul(&b).unwrap();
                for x in samples(&a) {
                    for y in samples(&b) {
                        prop_assert!(sum.contains_within(x + y, 1e-9), "{} in {}", x + y, sum);
                        prop_assert!(diff.contains_within(x - y, 1e-9), "{} in {}", x - y, diff);
                        prop_assert!(prod.contains_within(x * y, 1e-9), "{} in {}", x * y, prod);
                    }
                }
            }

            #[test]
            fn bounds_are_tight(a in sub_set(), b in sub_set()) {
                let sum = a.add(&b).unwrap();
                prop_assert!((sum.inf().unwrap() - (a.inf().unwrap() + b.inf().unwrap())).abs() < 1e-12);
                prop_assert!((sum.sup().unwrap() - (a.sup().unwrap() + b.sup().unwrap())).abs() < 1e-12);
                let prod = a.mul(&b).unwrap();
                prop_assert!((prod.inf().unwrap() - a.inf().unwrap() * b.inf().unwrap()).abs() < 1e-12);
                prop_assert!((prod.sup().unwrap() - a.sup().unwrap() * b.sup().unwrap()).abs() < 1e-12);
            }

            #[test]
            fn commutative(a in sub_set(), b in sub_set()) {
                prop_assert!(a.add(&b).unwrap().approx_eq(&b.add(&a).unwrap(), 1e-12));
                prop_assert!(a.mul(&b).unwrap().approx_eq(&b.mul(&a).unwrap(), 1e-12));
            }

            #[test]
            fn associative(a in sub_set(), b in sub_set(), c in sub_set()) {
                let l = a.add(&b).unwrap().add(&c).unwrap();
                let r = a.add(&b.add(&c).unwrap()).unwrap();
                prop_assert!(l.approx_eq(&r, 1e-9), "{} vs {}", l, r);
                let l = a.mul(&b).unwrap().mul(&c).unwrap();
                let r = a.mul(&b.mul(&c).unwrap()).unwrap();
                prop_assert!(l.approx_eq(&r, 1e-9), "{} vs {}", l, r);
            }

            #[test]
            fn display_round_trips(a in sub_set()) {
                let back: SubunitarySet = a.to_string().parse().unwrap();
                prop_assert_eq!(back, a);
            }

            #[test]
            fn point_arithmetic_is_exact(x in 0.0..1.0f64, y in 0.0..1.0f64) {
                let (px, py) = (SubunitarySet::point(x), SubunitarySet::point(y));
                prop_assert_eq!(px.add(&py).unwrap(), SubunitarySet::point(x + y));
                prop_assert_eq!(px.mul(&py).unwrap(), SubunitarySet::point(x * y));
                prop_assert_eq!(px.sub(&py).unwrap(), SubunitarySet::point(x - y));
            }
        }
    }
}
