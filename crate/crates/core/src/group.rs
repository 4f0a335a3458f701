//! Finite groups materialized as full multiplication tables.
//!
//! Conventions: `[g,h] = g^-1 h^-1 g h`, `g^h = h^-1 g h`, and Engel
//! commutators are left-normed, `[g,_n x] = [[g,_{n-1} x], x]`.
//! Element 0 is always the identity.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::perm::Permutation;
use crate::word::Word;

pub const DEFAULT_ORDER_CAP: usize = 20_000;

/// Tables up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;
const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order exceeds the order cap of {cap}")]
    OrderCap { cap: usize },
    #[error("generators have different degrees ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("unbound label `{0}`")]
    UnboundLabel(String),
    #[error("Cayley table is empty")]
    EmptyTable,
    #[error("Cayley table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("Cayley table is not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("element 0 is not the identity")]
    IdentityMisplaced,
    #[error("associativity fails for elements ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

/// An element of a specific [`FiniteGroup`], by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn new(index: usize) -> Self {
        Elem(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<(String, Elem)>,
    words: Vec<Word>,
    perms: Option<Vec<Permutation>>,
}

impl FiniteGroup {
    /// Breadth-first closure of permutation generators.
    ///
    /// Elements are numbered in discovery order: each dequeued element is
    /// multiplied on the right by the generators in the order given.
    pub fn close(
        gens: &[(String, Permutation)],
        cap: usize,
        name: impl Into<String>,
    ) -> Result<FiniteGroup, GroupError> {
        let degree = gens.first().map(|(_, p)| p.degree()).unwrap_or(0);
        if let Some((_, p)) = gens.iter().find(|(_, p)| p.degree() != degree) {
            return Err(GroupError::DegreeMismatch(degree, p.degree()));
        }
        let cap = cap.max(1);

        let mut index: HashMap<Permutation, u32> = HashMap::new();
        let mut perms = vec![Permutation::identity(degree)];
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        index.insert(perms[0].clone(), 0);
        // right[x * k + j] = x * gen_j
        let k = gens.len();
        let mut right: Vec<u32> = Vec::new();
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (j, (_, g)) in gens.iter().enumerate() {
                let y = perms[x as usize].then(g);
                let next = index.len() as u32;
                let id = *index.entry(y.clone()).or_insert(next);
                if id == next {
                    if perms.len() >= cap {
                        return Err(GroupError::OrderCap { cap });
                    }
                    perms.push(y);
                    parent.push((x, j as u32));
                    queue.push_back(id);
                }
                right.push(id);
            }
            debug_assert_eq!(right.len(), (x as usize + 1) * k);
        }

        let n = perms.len();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            mul[i * n] = i as u32;
            for j in 1..n {
                let (p, g) = parent[j];
                let ip = mul[i * n + p as usize] as usize;
                mul[i * n + j] = right[ip * k + g as usize];
            }
        }
        let labels: Vec<String> = gens.iter().map(|(l, _)| l.clone()).collect();
        let words = spanning_words(&parent, &labels);
        let generators = gens
            .iter()
            .map(|(l, p)| (l.clone(), Elem(index[p])))
            .collect();
        let inv = inverse_table(&mul, n);
        Ok(FiniteGroup {
            name: name.into(),
            order: n,
            mul,
            inv,
            generators,
            words,
            perms: Some(perms),
        })
    }

    /// Validates a Cayley table and picks generators greedily by index.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::EmptyTable);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { row, len: r.len(), expected: n });
            }
        }
        for (i, r) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for (j, &v) in r.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::NotLatinSquare(format!("entry ({i},{j}) = {v} out of range")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GroupError::NotLatinSquare(format!("row {i} repeats {v}")));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for (i, r) in table.iter().enumerate() {
                if std::mem::replace(&mut seen[r[j]], true) {
                    return Err(GroupError::NotLatinSquare(format!("column {j} repeats {} at row {i}", r[j])));
                }
            }
        }
        if (0..n).any(|i| table[0][i] != i || table[i][0] != i) {
            return Err(GroupError::IdentityMisplaced);
        }
        let mul: Vec<u32> = table.iter().flatten().map(|&v| v as u32).collect();
        check_associativity(&mul, n)?;
        let inv = inverse_table(&mul, n);

        // Greedy generators, then BFS words.
        let mut in_span = vec![false; n];
        in_span[0] = true;
        let mut gens: Vec<u32> = Vec::new();
        let mut span: Vec<u32> = vec![0];
        for cand in 1..n as u32 {
            if in_span[cand as usize] {
                continue;
            }
            gens.push(cand);
            let mut qi = 0;
            while qi < span.len() {
                let x = span[qi];
                for &g in &gens {
                    let y = mul[x as usize * n + g as usize];
                    if !in_span[y as usize] {
                        in_span[y as usize] = true;
                        span.push(y);
                    }
                }
                qi += 1;
            }
        }
        let labels = default_labels(gens.len());
        let mut parent = vec![(0u32, 0u32); n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut order_found = vec![0u32];
        let mut qi = 0;
        while qi < order_found.len() {
            let x = order_found[qi];
            for (j, &g) in gens.iter().enumerate() {
                let y = mul[x as usize * n + g as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    parent[y as usize] = (x, j as u32);
                    order_found.push(y);
                }
            }
            qi += 1;
        }
        // discovery order differs from index order here
        let mut words = vec![Word::new(); n];
        for &y in order_found.iter().skip(1) {
            let (p, j) = parent[y as usize];
            let mut w = words[p as usize].clone();
            w.push(labels[j as usize].clone(), 1);
            words[y as usize] = w;
        }
        let generators = labels.into_iter().zip(gens.iter().map(|&g| Elem(g))).collect();
        Ok(FiniteGroup {
            name: name.into(),
            order: n,
            mul,
            inv,
            generators,
            words,
            perms: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order as u32).map(Elem)
    }

    /// Checked constructor for an element index.
    pub fn elem(&self, index: usize) -> Result<Elem, GroupError> {
        if index < self.order {
            Ok(Elem(index as u32))
        } else {
            Err(GroupError::IndexOutOfRange { index, order: self.order })
        }
    }

    pub fn generators(&self) -> &[(String, Elem)] {
        &self.generators
    }

    pub fn generator(&self, label: &str) -> Option<Elem> {
        self.generators.iter().find(|(l, _)| l == label).map(|&(_, e)| e)
    }

    /// Permutation realizing `g`, for groups built from permutations.
    pub fn permutation(&self, g: Elem) -> Option<&Permutation> {
        self.perms.as_ref().map(|p| &p[g.index()])
    }

    #[inline]
    pub fn mul(&self, g: Elem, h: Elem) -> Elem {
        Elem(self.mul[g.index() * self.order + h.index()])
    }

    #[inline]
    pub fn inv(&self, g: Elem) -> Elem {
        Elem(self.inv[g.index()])
    }

    /// `g^h = h^-1 g h`
    #[inline]
    pub fn conj(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.inv(h), self.mul(g, h))
    }

    /// `[g,h] = g^-1 h^-1 g h`
    #[inline]
    pub fn comm(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))
    }

    /// `[g,_n x]`, with `[g,_0 x] = g`.
    pub fn engel_commutator(&self, g: Elem, x: Elem, n: usize) -> Elem {
        let mut c = g;
        for _ in 0..n {
            if c == Elem::IDENTITY {
                break;
            }
            c = self.comm(c, x);
        }
        c
    }

    pub fn pow(&self, g: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut e = k.unsigned_abs() % self.element_order(g) as u64;
        let mut acc = Elem::IDENTITY;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != Elem::IDENTITY {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn commute(&self, g: Elem, h: Elem) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&(_, g)| self.generators.iter().all(|&(_, h)| self.commute(g, h)))
    }

    /// Left-to-right product of assigned elements raised to the listed exponents.
    pub fn evaluate_word(&self, w: &Word, assignment: &HashMap<String, Elem>) -> Result<Elem, GroupError> {
        let mut acc = Elem::IDENTITY;
        for (label, exp) in w.syllables() {
            let g = *assignment
                .get(label)
                .ok_or_else(|| GroupError::UnboundLabel(label.clone()))?;
            acc = self.mul(acc, self.pow(g, *exp));
        }
        Ok(acc)
    }

    /// Evaluates a word in this group's own generator labels.
    pub fn evaluate(&self, w: &Word) -> Result<Elem, GroupError> {
        let assignment: HashMap<String, Elem> = self.generators.iter().cloned().collect();
        self.evaluate_word(w, &assignment)
    }

    /// A shortest positive word in the generators (BFS spanning tree).
    pub fn word_of(&self, g: Elem) -> &Word {
        &self.words[g.index()]
    }

    /// Element printed as a generator word.
    pub fn show(&self, g: Elem) -> String {
        self.words[g.index()].to_string()
    }

    /// Raw row-major multiplication table.
    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    /// Renames the group.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// `a, b, ..., z`, then `x27, x28, ...`.
pub fn default_labels(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{}", i + 1)
            }
        })
        .collect()
}

fn spanning_words(parent: &[(u32, u32)], labels: &[String]) -> Vec<Word> {
    let mut words: Vec<Word> = Vec::with_capacity(parent.len());
    words.push(Word::new());
    for &(p, g) in &parent[1..] {
        let mut w = words[p as usize].clone();
        w.push(labels[g as usize].clone(), 1);
        words.push(w);
    }
    words
}

fn inverse_table(mul: &[u32], n: usize) -> Vec<u32> {
    let mut inv = vec![0u32; n];
    for i in 0..n {
        for j in 0..n {
            if mul[i * n + j] == 0 {
                inv[i] = j as u32;
                break;
            }
        }
    }
    inv
}

fn check_associativity(mul: &[u32], n: usize) -> Result<(), GroupError> {
    let m = |a: usize, b: usize| mul[a * n + b] as usize;
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0xA55C);
        for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if m(m(a, b), c) != m(a, m(b, c)) {
                return Err(GroupError::NotAssociative(a, b, c));
            }
        }
    }
    Ok(())
}
