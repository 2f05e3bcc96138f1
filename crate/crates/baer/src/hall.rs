//! Basic commutators (the Hall basis) on a totally ordered finite alphabet:
//! representation, generation by weight, the basis order, and the mixed-content
//! predicate used by the direct-product correction term.
//!
//! A basic commutator is either a letter or a pair `[c_i, c_j]` with
//! `c_i > c_j`, and when `c_i = [c_s, c_t]`, additionally `c_j >= c_t`.
//! Weight-`n` elements follow all lighter ones; within a weight the order is
//! lexicographic on `(left, right)`.

use crate::witt::witt;
use num_bigint::BigUint;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Default ceiling on the total number of generated basis elements.
pub const DEFAULT_BASIS_CEILING: u64 = 1_000_000;

/// Errors from basis construction and alphabet-checked comparisons.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HallError {
    /// Predicted basis size exceeds the configured ceiling.
    #[error("enumeration too large: predicted {predicted} basis elements exceeds ceiling {ceiling}")]
    EnumerationTooLarge { predicted: BigUint, ceiling: u64 },
    /// A commutator mentions a letter outside this basis' alphabet.
    #[error("commutator letter x{} is outside the alphabet of size {alphabet}", index + 1)]
    ForeignLetter { index: usize, alphabet: usize },
    /// Weight must be at least 1.
    #[error("max_weight must be >= 1")]
    ZeroWeight,
    /// Alphabet labels must be unique and non-empty.
    #[error("invalid alphabet: {0}")]
    BadAlphabet(String),
}

/// An ordered alphabet of letters with display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
}

impl Alphabet {
    /// Alphabet `x1 < x2 < ... < xd` with default labels.
    pub fn with_size(d: usize) -> Self {
        Alphabet {
            labels: (1..=d).map(|i| format!("x{i}")).collect(),
        }
    }

    /// Alphabet with custom labels, ordered as given.
    pub fn from_labels<I, S>(labels: I) -> Result<Self, HallError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(HallError::BadAlphabet("empty label".into()));
            }
            if labels[..i].contains(l) {
                return Err(HallError::BadAlphabet(format!("duplicate label {l:?}")));
            }
        }
        Ok(Alphabet { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Display label of letter `index`.
    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    /// The letter at `index` as a value.
    pub fn letter(&self, index: usize) -> Option<Letter> {
        (index < self.len()).then(|| Letter {
            index,
            label: self.labels[index].clone(),
        })
    }
}

/// A weight-one basic commutator: a position in the alphabet order plus its
/// display label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Letter(usize),
    Pair(Arc<BasicCommutator>, Arc<BasicCommutator>),
}

/// A bracketed tree over ordered letters, with cached weight and letter
/// content. Equality and hashing are structural.
#[derive(Debug, Clone)]
pub struct BasicCommutator {
    node: Node,
    weight: u32,
    /// Sorted `(letter index, count)` pairs; the content multiset.
    content: Box<[(usize, u32)]>,
}

impl PartialEq for BasicCommutator {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}
impl Eq for BasicCommutator {}

impl std::hash::Hash for BasicCommutator {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.node.hash(state);
    }
}

impl BasicCommutator {
    /// The weight-one commutator on letter `index`.
    pub fn letter(index: usize) -> Self {
        BasicCommutator {
            node: Node::Letter(index),
            weight: 1,
            content: Box::new([(index, 1)]),
        }
    }

    /// The pair `[left, right]`. This builds the tree unconditionally; use
    /// [`BasicCommutator::is_basic`] to check the Hall conditions.
    pub fn pair(left: Arc<BasicCommutator>, right: Arc<BasicCommutator>) -> Self {
        let weight = left.weight + right.weight;
        let content = merge_content(&left.content, &right.content);
        BasicCommutator {
            node: Node::Pair(left, right),
            weight,
            content,
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// `true` for weight-one elements.
    pub fn is_letter(&self) -> bool {
        matches!(self.node, Node::Letter(_))
    }

    /// Letter index when this is a letter.
    pub fn letter_index(&self) -> Option<usize> {
        match self.node {
            Node::Letter(i) => Some(i),
            Node::Pair(..) => None,
        }
    }

    /// Children when this is a pair.
    pub fn children(&self) -> Option<(&Arc<BasicCommutator>, &Arc<BasicCommutator>)> {
        match &self.node {
            Node::Letter(_) => None,
            Node::Pair(l, r) => Some((l, r)),
        }
    }

    /// Content multiset as sorted `(letter index, count)` pairs.
    pub fn content(&self) -> &[(usize, u32)] {
        &self.content
    }

    /// Number of occurrences of letter `index`.
    pub fn letter_count(&self, index: usize) -> u32 {
        self.content
            .iter()
            .find(|&&(i, _)| i == index)
            .map_or(0, |&(_, c)| c)
    }

    /// Largest letter index appearing in the tree.
    pub fn max_letter(&self) -> usize {
        self.content.last().expect("content is never empty").0
    }

    /// The Hall conditions, checked independently of how the tree was built:
    /// a letter is basic; `[l, r]` is basic iff `l` and `r` are basic,
    /// `l > r`, and when `l = [s, t]`, `r >= t`.
    pub fn is_basic(&self) -> bool {
        match &self.node {
            Node::Letter(_) => true,
            Node::Pair(l, r) => {
                if !l.is_basic() || !r.is_basic() {
                    return false;
                }
                if compare(l, r) != Ordering::Greater {
                    return false;
                }
                match &l.node {
                    Node::Letter(_) => true,
                    Node::Pair(_, t) => compare(r, t) != Ordering::Less,
                }
            }
        }
    }

    /// True when the content meets both blocks of the split: at least one
    /// letter with index `< split` and at least one with index `>= split`.
    pub fn is_mixed(&self, split: usize) -> bool {
        let low = self.content.iter().any(|&(i, _)| i < split);
        let high = self.content.iter().any(|&(i, _)| i >= split);
        low && high
    }

    /// Render with the given labels. Left-normed chains flatten, so
    /// `[[x2,x1],x1]` prints as `[x2,x1,x1]`; a bracketed right child keeps
    /// its own brackets.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        match &self.node {
            Node::Letter(i) => alphabet.label(*i).to_string(),
            Node::Pair(l, r) => {
                let mut out = String::from("[");
                l.render_chain(alphabet, &mut out);
                out.push(',');
                out.push_str(&r.render(alphabet));
                out.push(']');
                out
            }
        }
    }

    fn render_chain(&self, alphabet: &Alphabet, out: &mut String) {
        match &self.node {
            Node::Letter(i) => out.push_str(alphabet.label(*i)),
            Node::Pair(l, r) => {
                l.render_chain(alphabet, out);
                out.push(',');
                out.push_str(&r.render(alphabet));
            }
        }
    }
}

fn merge_content(a: &[(usize, u32)], b: &[(usize, u32)]) -> Box<[(usize, u32)]> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out.into_boxed_slice()
}

/// The basis order on trees: by weight first, then letters by index, then
/// pairs lexicographically on `(left, right)`.
pub fn compare(a: &BasicCommutator, b: &BasicCommutator) -> Ordering {
    a.weight.cmp(&b.weight).then_with(|| match (&a.node, &b.node) {
        (Node::Letter(i), Node::Letter(j)) => i.cmp(j),
        (Node::Pair(al, ar), Node::Pair(bl, br)) => {
            compare(al, bl).then_with(|| compare(ar, br))
        }
        // Same weight rules out letter-vs-pair.
        _ => unreachable!("letters have weight 1, pairs have weight >= 2"),
    })
}

/// A complete Hall basis up to a weight bound, in basis order.
#[derive(Debug, Clone)]
pub struct HallBasis {
    alphabet: Alphabet,
    max_weight: u32,
    elements: Vec<Arc<BasicCommutator>>,
    index_of: HashMap<Arc<BasicCommutator>, usize>,
    /// `strata[n - 1]` is the index range of weight-`n` elements.
    strata: Vec<std::ops::Range<usize>>,
}

impl HallBasis {
    /// Generate all basic commutators of weight `<= max_weight` on `d`
    /// letters, with the default size ceiling.
    pub fn generate(d: usize, max_weight: u32) -> Result<Self, HallError> {
        Self::generate_on(Alphabet::with_size(d), max_weight, DEFAULT_BASIS_CEILING)
    }

    /// As [`HallBasis::generate`] with an explicit ceiling.
    pub fn generate_with_ceiling(
        d: usize,
        max_weight: u32,
        ceiling: u64,
    ) -> Result<Self, HallError> {
        Self::generate_on(Alphabet::with_size(d), max_weight, ceiling)
    }

    /// Generate over a custom alphabet.
    pub fn generate_on(
        alphabet: Alphabet,
        max_weight: u32,
        ceiling: u64,
    ) -> Result<Self, HallError> {
        if max_weight == 0 {
            return Err(HallError::ZeroWeight);
        }
        let d = alphabet.len();

        let mut predicted = BigUint::from(0u32);
        for n in 1..=max_weight {
            predicted += witt(n, d as u64).expect("n >= 1");
        }
        if predicted > BigUint::from(ceiling) {
            return Err(HallError::EnumerationTooLarge { predicted, ceiling });
        }

        let mut elements: Vec<Arc<BasicCommutator>> = Vec::new();
        let mut strata: Vec<std::ops::Range<usize>> = Vec::new();

        // Weight 1: the letters, in alphabet order.
        for i in 0..d {
            elements.push(Arc::new(BasicCommutator::letter(i)));
        }
        strata.push(0..d);

        // Tail condition per element: for a letter there is no constraint
        // (encoded as 0); for a pair [s, t], the right child's index.
        let mut tail_floor: Vec<usize> = vec![0; d];

        for n in 2..=max_weight {
            let start = elements.len();
            // Pairs (u, v) with wt u + wt v = n, v < u, v >= t(u), scanned in
            // (u index, v index) order, which is the within-weight
            // lexicographic order.
            for u_idx in 0..start {
                let wu = elements[u_idx].weight();
                if wu >= n {
                    break;
                }
                let wv = n - wu;
                let v_range = strata[(wv - 1) as usize].clone();
                let lo = v_range.start.max(tail_floor[u_idx]);
                let hi = v_range.end.min(u_idx);
                for v_idx in lo..hi {
                    let bc = BasicCommutator::pair(
                        elements[u_idx].clone(),
                        elements[v_idx].clone(),
                    );
                    elements.push(Arc::new(bc));
                    tail_floor.push(v_idx);
                }
            }
            strata.push(start..elements.len());
        }

        let index_of = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();

        Ok(HallBasis {
            alphabet,
            max_weight,
            elements,
            index_of,
            strata,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Arc<BasicCommutator>] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Arc<BasicCommutator> {
        &self.elements[index]
    }

    /// Position of a commutator in the basis order, if it is a member.
    pub fn index_of(&self, bc: &BasicCommutator) -> Option<usize> {
        self.index_of.get(bc).copied()
    }

    /// The weight-`n` elements, `1 <= n <= max_weight`.
    pub fn stratum(&self, weight: u32) -> &[Arc<BasicCommutator>] {
        let r = self.stratum_range(weight);
        &self.elements[r]
    }

    /// Index range of the weight-`n` elements.
    pub fn stratum_range(&self, weight: u32) -> std::ops::Range<usize> {
        assert!(
            weight >= 1 && weight <= self.max_weight,
            "weight {weight} outside 1..={}",
            self.max_weight
        );
        self.strata[(weight - 1) as usize].clone()
    }

    /// Weight of the element at `index`.
    pub fn weight_of(&self, index: usize) -> u32 {
        self.elements[index].weight()
    }

    /// The basis order, validating that both sides live over this alphabet.
    pub fn compare(
        &self,
        a: &BasicCommutator,
        b: &BasicCommutator,
    ) -> Result<Ordering, HallError> {
        for bc in [a, b] {
            let max = bc.max_letter();
            if max >= self.alphabet.len() {
                return Err(HallError::ForeignLetter {
                    index: max,
                    alphabet: self.alphabet.len(),
                });
            }
        }
        Ok(compare(a, b))
    }

    /// Render an element with this basis' labels.
    pub fn render(&self, bc: &BasicCommutator) -> String {
        bc.render(&self.alphabet)
    }
}

impl fmt::Display for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "w={} {}", e.weight(), self.render(e))?;
        }
        Ok(())
    }
}
