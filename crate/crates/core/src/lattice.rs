//! The hyper-power set `D^Θ` of a frame.
//!
//! An element of `D^Θ` is stored as the set of Venn-diagram *parts* it covers.
//! A part is identified by the nonempty subset `S ⊆ {1..n}` of hypotheses it
//! lies inside of, so a frame of size `n` has `2^n - 1` parts and an element is
//! a bitset over them (bit `S - 1` for the part `S`, with `S` read as a bitmask
//! where `θ_i` is bit `i - 1`).
//!
//! Elements generated by `∪` and `∩` from the hypotheses are exactly the
//! upward-closed families of parts: if part `S` is covered then so is every
//! `S' ⊇ S`. Meet and join are bitwise `AND` and `OR`, which keeps logically
//! equal expressions equal by construction.
//!
//! A [`Model`] forces some parts empty. Reducing an element under a model
//! clears those bits; two elements are equal under the model when their
//! reductions are equal.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Hard upper bound on the frame size: `2^6 - 1 = 63` parts fit in a `u64`.
pub const MAX_FRAME: usize = 6;

/// Largest frame enumerated by [`enumerate_hyper_power_set`]. Frames of size
/// [`MAX_FRAME`] need [`enumerate_hyper_power_set_with_limit`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 5;

/// An ordered list of distinct hypothesis labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_FRAME {
            return Err(Error::FrameTooLarge {
                n: labels.len(),
                max: MAX_FRAME,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if !is_valid_label(label) {
                return Err(Error::InvalidLabel(label.clone()));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// A frame labelled `th1 .. thn`.
    pub fn with_size(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("th{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// 1-based index of a label.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label).map(|i| i + 1)
    }

    pub fn part_count(&self) -> usize {
        part_count(self.len())
    }

    /// The hypothesis `θ_i` (1-based).
    pub fn atom(&self, i: usize) -> Result<Element> {
        Element::atom(self.len(), i)
    }

    pub fn atoms(&self) -> Vec<Element> {
        (1..=self.len())
            .map(|i| Element::atom(self.len(), i).expect("index in range"))
            .collect()
    }

    pub fn empty(&self) -> Element {
        Element::empty(self.len())
    }

    /// `I_t = θ_1 ∪ … ∪ θ_n`.
    pub fn total_ignorance(&self) -> Result<Element> {
        if self.is_empty() {
            return Err(Error::EmptyFrame);
        }
        Ok(Element::full(self.len()))
    }

    /// Render an element as a union of intersections of labels.
    pub fn render(&self, x: Element, notation: Notation) -> String {
        CanonicalForm::of_bits(x).render(self, notation)
    }

    pub(crate) fn check(&self, x: Element) -> Result<()> {
        if x.frame_size() == self.len() {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

fn is_valid_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn part_count(n: usize) -> usize {
    (1usize << n) - 1
}

fn all_parts(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - part_count(n))
    }
}

/// Iterate the part masks (`S` as a bitmask over hypotheses) set in `bits`.
fn part_masks(bits: u64) -> impl Iterator<Item = u64> {
    let mut rest = bits;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let b = rest.trailing_zeros() as u64;
        rest &= rest - 1;
        Some(b + 1)
    })
}

/// An element of `D^Θ`, or its reduction under a model.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    parts: u64,
    n: u8,
}

impl Element {
    pub fn empty(n: usize) -> Self {
        Self { parts: 0, n: n as u8 }
    }

    pub fn full(n: usize) -> Self {
        Self {
            parts: all_parts(n),
            n: n as u8,
        }
    }

    pub fn atom(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let bit = 1u64 << (i - 1);
        let parts = (1..=part_count(n) as u64)
            .filter(|s| s & bit != 0)
            .fold(0u64, |acc, s| acc | 1 << (s - 1));
        Ok(Self { parts, n: n as u8 })
    }

    /// Upward closure of an antichain of part masks.
    pub fn from_antichain(n: usize, antichain: &[u64]) -> Self {
        let parts = (1..=part_count(n) as u64)
            .filter(|s| antichain.iter().any(|a| a & s == *a))
            .fold(0u64, |acc, s| acc | 1 << (s - 1));
        Self { parts, n: n as u8 }
    }

    /// Wrap a raw part bitset. Bits beyond the frame's parts are discarded.
    pub fn from_parts(n: usize, parts: u64) -> Self {
        Self {
            parts: parts & all_parts(n),
            n: n as u8,
        }
    }

    pub fn parts(self) -> u64 {
        self.parts
    }

    pub fn frame_size(self) -> usize {
        self.n as usize
    }

    pub fn is_empty(self) -> bool {
        self.parts == 0
    }

    /// Number of covered parts (the free-model DSm cardinality).
    pub fn part_count(self) -> u32 {
        self.parts.count_ones()
    }

    pub fn contains_part(self, mask: u64) -> bool {
        mask != 0 && self.parts >> (mask - 1) & 1 == 1
    }

    pub fn meet(self, other: Self) -> Result<Self> {
        self.same_frame(other)?;
        Ok(self & other)
    }

    pub fn join(self, other: Self) -> Result<Self> {
        self.same_frame(other)?;
        Ok(self | other)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.parts & !other.parts == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.parts & other.parts != 0
    }

    /// True when the bitset is closed under taking supersets of parts.
    pub fn is_upward_closed(self) -> bool {
        let n = self.n as usize;
        part_masks(self.parts).all(|s| {
            (0..n).all(|i| {
                let sup = s | 1 << i;
                self.contains_part(sup)
            })
        })
    }

    /// Parts of the bitset with no proper subset also present.
    pub fn minimal_parts(self) -> Vec<u64> {
        part_masks(self.parts)
            .filter(|&s| !part_masks(self.parts).any(|t| t != s && t & s == t))
            .collect()
    }

    fn same_frame(self, other: Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

impl std::ops::BitAnd for Element {
    type Output = Element;

    /// Meet. Panics when the frames differ; use [`Element::meet`] for a checked version.
    fn bitand(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "elements over different frames");
        Self {
            parts: self.parts & rhs.parts,
            n: self.n,
        }
    }
}

impl std::ops::BitOr for Element {
    type Output = Element;

    /// Join. Panics when the frames differ; use [`Element::join`] for a checked version.
    fn bitor(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "elements over different frames");
        Self {
            parts: self.parts | rhs.parts,
            n: self.n,
        }
    }
}

/// Enumeration order: part count, then bitset value.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.parts.count_ones().cmp(&other.parts.count_ones()))
            .then(self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .minimal_parts()
            .iter()
            .map(|m| {
                let idx: Vec<String> = (0..self.n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| (i + 1).to_string())
                    .collect();
                idx.join("&")
            })
            .collect();
        if terms.is_empty() {
            write!(f, "Element(n={}, ∅)", self.n)
        } else {
            write!(f, "Element(n={}, {})", self.n, terms.join(" | "))
        }
    }
}

/// Enumerate `D^Θ` for frames up to [`DEFAULT_ENUMERATION_LIMIT`].
pub fn enumerate_hyper_power_set(frame: &Frame) -> Result<Vec<Element>> {
    enumerate_hyper_power_set_with_limit(frame, DEFAULT_ENUMERATION_LIMIT)
}

/// Enumerate `D^Θ`, allowing frames up to `limit` (itself capped at [`MAX_FRAME`]).
///
/// Elements come sorted by part count, then by bitset value. The empty
/// element is always first.
pub fn enumerate_hyper_power_set_with_limit(frame: &Frame, limit: usize) -> Result<Vec<Element>> {
    let max = limit.min(MAX_FRAME);
    let n = frame.len();
    if n > max {
        return Err(Error::FrameTooLarge { n, max });
    }
    let mut out: Vec<Element> = monotone_truth_tables(n)
        .into_iter()
        // Truth-table bit 0 is the empty subset; only the constant-true
        // function sets it, and that one is not an element of D^Θ.
        .filter(|t| t & 1 == 0)
        .map(|t| Element {
            parts: t >> 1,
            n: n as u8,
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Truth tables of all monotone Boolean functions of `n` variables, with
/// bit `s` holding `f(s)`.
fn monotone_truth_tables(n: usize) -> Vec<u64> {
    let mut tables = vec![0u64, 1u64];
    for k in 1..=n {
        let half = 1u32 << (k - 1);
        let mut next = Vec::with_capacity(tables.len() * tables.len() / 2);
        for &low in &tables {
            for &high in &tables {
                if low & !high == 0 {
                    next.push(low | high << half);
                }
            }
        }
        tables = next;
    }
    tables
}

/// How an integrity constraint was declared. Both kinds empty exactly the
/// parts of their element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// An intersection of hypotheses declared empty.
    Exclusive(Element),
    /// An element declared non-existent.
    NonExistent(Element),
}

impl Constraint {
    /// Classify `x = ∅` by its shape: elements with a single generating
    /// intersection of two or more hypotheses are exclusivity constraints.
    pub fn forcing_empty(x: Element) -> Self {
        let min = x.minimal_parts();
        if min.len() == 1 && min[0].count_ones() >= 2 {
            Constraint::Exclusive(x)
        } else {
            Constraint::NonExistent(x)
        }
    }

    pub fn element(self) -> Element {
        match self {
            Constraint::Exclusive(x) | Constraint::NonExistent(x) => x,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Free,
    Shafer,
    Hybrid,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Free => "free",
            ModelKind::Shafer => "shafer",
            ModelKind::Hybrid => "hybrid",
        })
    }
}

/// A free, Shafer or hybrid DSm model over a frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Model {
    frame: Frame,
    base: ModelKind,
    constraints: Vec<Constraint>,
    emptied: u64,
}

impl Model {
    pub fn free(frame: &Frame) -> Self {
        Self {
            frame: frame.clone(),
            base: ModelKind::Free,
            constraints: Vec::new(),
            emptied: 0,
        }
    }

    /// Shafer's model: every intersection of two or more hypotheses is empty.
    pub fn shafer(frame: &Frame) -> Self {
        let emptied = (1..=frame.part_count() as u64)
            .filter(|s| s.count_ones() >= 2)
            .fold(0u64, |acc, s| acc | 1 << (s - 1));
        Self {
            frame: frame.clone(),
            base: ModelKind::Shafer,
            constraints: Vec::new(),
            emptied,
        }
    }

    /// A model built from the free one by the given constraints.
    pub fn hybrid(frame: &Frame, constraints: impl IntoIterator<Item = Constraint>) -> Result<Self> {
        let mut model = Self::free(frame);
        model.base = ModelKind::Hybrid;
        for c in constraints {
            model = model.with_constraint(c)?;
        }
        Ok(model)
    }

    pub fn with_constraint(mut self, c: Constraint) -> Result<Self> {
        self.frame.check(c.element())?;
        self.emptied |= c.element().parts();
        self.constraints.push(c);
        Ok(self)
    }

    /// Shorthand for `with_constraint(Constraint::forcing_empty(x))`.
    pub fn forcing_empty(self, x: Element) -> Result<Self> {
        self.with_constraint(Constraint::forcing_empty(x))
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// The model kind, judged from the emptied parts rather than from how
    /// the model was built.
    pub fn kind(&self) -> ModelKind {
        let shafer = Self::shafer(&self.frame).emptied;
        if self.emptied == 0 {
            ModelKind::Free
        } else if self.emptied == shafer {
            ModelKind::Shafer
        } else {
            ModelKind::Hybrid
        }
    }

    /// The kind the model was constructed from (before extra constraints).
    pub fn base_kind(&self) -> ModelKind {
        self.base
    }

    /// Every intersection of distinct hypotheses is empty, so reduced
    /// elements behave like subsets of `Θ`.
    pub fn is_shafer_compatible(&self) -> bool {
        let shafer = Self::shafer(&self.frame).emptied;
        self.emptied & shafer == shafer
    }

    pub fn emptied_parts(&self) -> Element {
        Element::from_parts(self.frame.len(), self.emptied)
    }

    pub fn reduce(&self, x: Element) -> Element {
        Element {
            parts: x.parts & !self.emptied,
            n: x.n,
        }
    }

    pub fn is_empty_element(&self, x: Element) -> bool {
        x.parts & !self.emptied == 0
    }

    pub fn equivalent(&self, a: Element, b: Element) -> bool {
        self.reduce(a) == self.reduce(b)
    }

    /// DSm cardinality `C_M(x)`: the number of parts of `x` left nonempty by the model.
    pub fn cardinality(&self, x: Element) -> u32 {
        self.reduce(x).part_count()
    }

    /// Canonical form of `x` after reduction.
    pub fn canonical_form(&self, x: Element) -> CanonicalForm {
        CanonicalForm::of_bits(self.reduce(x))
    }

    /// The reduced total ignorance.
    pub fn total_ignorance(&self) -> Result<Element> {
        Ok(self.reduce(self.frame.total_ignorance()?))
    }

    /// Distinct reductions of every element of `D^Θ`, in enumeration order.
    pub fn reduced_lattice(&self, limit: usize) -> Result<Vec<Element>> {
        let mut out: Vec<Element> = enumerate_hyper_power_set_with_limit(&self.frame, limit)?
            .into_iter()
            .map(|x| self.reduce(x))
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn render(&self, x: Element, notation: Notation) -> String {
        self.canonical_form(x).render(&self.frame, notation)
    }
}

/// Symbols used when rendering expressions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Notation {
    #[default]
    Unicode,
    Ascii,
}

impl Notation {
    fn symbols(self) -> (&'static str, &'static str, &'static str) {
        match self {
            Notation::Unicode => ("∩", "∪", "∅"),
            Notation::Ascii => ("&", "|", "{}"),
        }
    }
}

/// An antichain of parts whose upward closure is the element: a union of
/// intersections of hypotheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    n: usize,
    terms: Vec<u64>,
}

impl CanonicalForm {
    /// The antichain of minimal parts of the raw bitset (no reduction).
    pub fn of_bits(x: Element) -> Self {
        let n = x.frame_size();
        let mut terms = x.minimal_parts();
        terms.sort_by_key(|&m| term_indices(n, m));
        Self { n, terms }
    }

    /// Each term is a bitmask of the hypotheses intersected in it.
    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Upward closure of the antichain, as a free-model element.
    pub fn expand(&self) -> Element {
        Element::from_antichain(self.n, &self.terms)
    }

    /// 1-based indices appearing anywhere in the expression.
    pub fn indices(&self) -> Vec<usize> {
        let all = self.terms.iter().fold(0u64, |a, m| a | m);
        (0..self.n).filter(|i| all >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn render(&self, frame: &Frame, notation: Notation) -> String {
        let (and, or, empty) = notation.symbols();
        if self.terms.is_empty() {
            return empty.to_string();
        }
        let many = self.terms.len() > 1;
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|&m| {
                let labels: Vec<&str> = term_indices(self.n, m)
                    .into_iter()
                    .map(|i| frame.labels()[i - 1].as_str())
                    .collect();
                let body = labels.join(and);
                if many && labels.len() > 1 {
                    format!("({body})")
                } else {
                    body
                }
            })
            .collect();
        rendered.join(or)
    }
}

fn term_indices(n: usize, mask: u64) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// `u(x)`: the union of all hypotheses appearing in the canonical form of `x`.
pub fn component_union(x: Element) -> Result<Element> {
    if x.is_empty() {
        return Err(Error::EmptyArgument);
    }
    let n = x.frame_size();
    let indices = CanonicalForm::of_bits(x).indices();
    Ok(indices
        .into_iter()
        .map(|i| Element::atom(n, i).expect("index from canonical form"))
        .fold(Element::empty(n), |acc, a| acc | a))
}
