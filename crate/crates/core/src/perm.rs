//! Permutations in cycle notation.
//!
//! Points are 1-based in text and 0-based internally. Products compose
//! left-to-right: `p.then(q)` applies `p` first, so `(1 2)(2 3)` sends
//! 1 to 3.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle expression: {0}")]
    Malformed(String),
    #[error("point {0} repeated within one cycle")]
    RepeatedPoint(usize),
    #[error("non-numeric token `{0}` in cycle expression")]
    NonNumeric(String),
    #[error("points are 1-based; 0 is not allowed")]
    ZeroPoint,
    #[error("point {point} exceeds declared degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images; `None` unless `images` is a bijection.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Pads with fixed points up to `degree`. Never shrinks.
    pub fn extend(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u32..degree.max(self.images.len()) as u32);
        Permutation { images }
    }

    /// Composite "self, then other". Degrees are padded to the larger one.
    pub fn then(&self, other: &Permutation) -> Permutation {
        let n = self.degree().max(other.degree());
        let a = self.extend(n);
        let b = other.extend(n);
        Permutation {
            images: a.images.iter().map(|&i| b.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Shifts every point up by `offset`, fixing `0..offset`.
    pub fn shifted(&self, offset: usize) -> Permutation {
        let mut images: Vec<u32> = (0..offset as u32).collect();
        images.extend(self.images.iter().map(|&i| i + offset as u32));
        Permutation { images }
    }

    /// Nontrivial cycles, 0-based, each starting at its smallest point, sorted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Parses cycle notation; the degree is the largest point mentioned.
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let cycles = parse_cycles(text)?;
        let degree = cycles.iter().flatten().copied().max().unwrap_or(0);
        Ok(compose_cycles(&cycles, degree))
    }

    /// Parses cycle notation on a declared degree.
    pub fn parse_with_degree(text: &str, degree: usize) -> Result<Self, PermError> {
        let cycles = parse_cycles(text)?;
        if let Some(&point) = cycles.iter().flatten().find(|&&p| p > degree) {
            return Err(PermError::PointOutOfRange { point, degree });
        }
        Ok(compose_cycles(&cycles, degree))
    }
}

fn compose_cycles(cycles: &[Vec<usize>], degree: usize) -> Permutation {
    let mut acc = Permutation::identity(degree);
    for cycle in cycles {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (k, &p) in cycle.iter().enumerate() {
            let q = cycle[(k + 1) % cycle.len()];
            images[p - 1] = (q - 1) as u32;
        }
        acc = acc.then(&Permutation { images });
    }
    acc
}

// Returns cycles as lists of 1-based points.
fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let mut cycles = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut token = String::new();

    fn flush(token: &mut String, current: &mut Option<Vec<usize>>) -> Result<(), PermError> {
        if token.is_empty() {
            return Ok(());
        }
        let t = std::mem::take(token);
        let cycle = current
            .as_mut()
            .ok_or_else(|| PermError::Malformed(format!("token `{t}` outside parentheses")))?;
        let point: usize = t.parse().map_err(|_| PermError::NonNumeric(t.clone()))?;
        if point == 0 {
            return Err(PermError::ZeroPoint);
        }
        if cycle.contains(&point) {
            return Err(PermError::RepeatedPoint(point));
        }
        cycle.push(point);
        Ok(())
    }

    for ch in text.chars() {
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(PermError::Malformed("nested `(`".into()));
                }
                if !token.is_empty() {
                    return Err(PermError::Malformed(format!("token `{token}` outside parentheses")));
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush(&mut token, &mut current)?;
                let cycle = current
                    .take()
                    .ok_or_else(|| PermError::Malformed("unmatched `)`".into()))?;
                cycles.push(cycle);
            }
            c if c.is_whitespace() || c == ',' => flush(&mut token, &mut current)?,
            c => {
                if current.is_none() {
                    return Err(PermError::Malformed(format!("unexpected `{c}` outside parentheses")));
                }
                token.push(c);
            }
        }
    }
    if current.is_some() {
        return Err(PermError::Malformed("unclosed `(`".into()));
    }
    if !token.is_empty() {
        return Err(PermError::Malformed(format!("trailing token `{token}`")));
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
