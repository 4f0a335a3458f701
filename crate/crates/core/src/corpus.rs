//! Built-in families of small groups and Cayley-table file I/O.
//!
//! Naming: `C<n>` cyclic, `D<n>` dihedral with rotation order `n` (order
//! `2n`), `Q<4n>` dicyclic of order `4n` when `n` is a power of two
//! (`Q8`, `Q16`, ...) and `Dic<n>` otherwise, `S<n>`/`A<n>` symmetric and
//! alternating, `Heis<p>` the Heisenberg group of order `p^3`, `C<p>^<k>`
//! elementary abelian, and `XxY` direct products.

use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::group::{default_labels, FiniteGroup, GroupError, DEFAULT_ORDER_CAP};
use crate::perm::{PermError, Permutation};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{family}: parameter {value} out of range ({range})")]
    OutOfRange {
        family: &'static str,
        value: usize,
        range: &'static str,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("line {line}: {source}")]
    Perm { line: usize, source: PermError },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Rotation order `n`, order `2n`.
    Dihedral(usize),
    /// Order `4n`.
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Heisenberg(usize),
    ElementaryAbelian { p: usize, k: usize },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// Cayley-format file contents, with a name.
    Cayley { name: String, text: String },
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    pub fn name(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("C{n}"),
            GroupSpec::Dihedral(n) => format!("D{n}"),
            GroupSpec::Dicyclic(n) if n.is_power_of_two() => format!("Q{}", 4 * n),
            GroupSpec::Dicyclic(n) => format!("Dic{n}"),
            GroupSpec::Symmetric(n) => format!("S{n}"),
            GroupSpec::Alternating(n) => format!("A{n}"),
            GroupSpec::Heisenberg(p) => format!("Heis{p}"),
            GroupSpec::ElementaryAbelian { p, k: 1 } => format!("C{p}"),
            GroupSpec::ElementaryAbelian { p, k } => format!("C{p}^{k}"),
            GroupSpec::Product(a, b) => format!("{}x{}", a.name(), b.name()),
            GroupSpec::Cayley { name, .. } => name.clone(),
        }
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn range_err(family: &'static str, value: usize, range: &'static str) -> CorpusError {
    CorpusError::OutOfRange { family, value, range }
}

fn cycle(points: impl IntoIterator<Item = usize>, degree: usize) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (k, &p) in pts.iter().enumerate() {
        images[p] = pts[(k + 1) % pts.len()] as u32;
    }
    Permutation::from_images(images).expect("cycle is a bijection")
}

/// Right regular representation of a group given by element count and a right-multiplication rule.
fn regular(n: usize, gens: &[usize], mul: impl Fn(usize, usize) -> usize) -> Vec<Permutation> {
    gens.iter()
        .map(|&g| Permutation::from_images((0..n).map(|x| mul(x, g) as u32).collect()).expect("regular action"))
        .collect()
}

/// Permutation generators for a family member; products concatenate on disjoint points.
fn generators(spec: &GroupSpec) -> Result<Vec<Permutation>, CorpusError> {
    Ok(match *spec {
        GroupSpec::Cyclic(n) => {
            if n == 0 {
                return Err(range_err("cyclic", n, "n >= 1"));
            }
            vec![cycle(0..n, n)]
        }
        GroupSpec::Dihedral(n) => {
            if n < 2 {
                return Err(range_err("dihedral", n, "n >= 2"));
            }
            if n == 2 {
                vec![cycle([0, 1], 4).then(&cycle([2, 3], 4)), cycle([0, 2], 4).then(&cycle([1, 3], 4))]
            } else {
                let refl = Permutation::from_images((0..n).map(|i| ((n - i) % n) as u32).collect()).unwrap();
                vec![cycle(0..n, n), refl]
            }
        }
        GroupSpec::Dicyclic(n) => {
            if n < 2 {
                return Err(range_err("dicyclic", n, "n >= 2"));
            }
            // x^k y^e as k + 2n e; y x = x^-1 y, y^2 = x^n
            let m = 2 * n;
            let mul = |u: usize, v: usize| {
                let (k, e) = (u % m, u / m);
                let (l, f) = (v % m, v / m);
                let l = if e == 1 { (m - l) % m } else { l };
                let mut k = (k + l) % m;
                let mut s = e + f;
                if s == 2 {
                    k = (k + n) % m;
                    s = 0;
                }
                k + m * s
            };
            regular(4 * n, &[1, m], mul)
        }
        GroupSpec::Symmetric(n) => {
            if !(1..=6).contains(&n) {
                return Err(range_err("symmetric", n, "1..=6"));
            }
            if n == 1 {
                vec![Permutation::identity(1)]
            } else {
                vec![cycle([0, 1], n), cycle(0..n, n)]
            }
        }
        GroupSpec::Alternating(n) => {
            if !(1..=6).contains(&n) {
                return Err(range_err("alternating", n, "1..=6"));
            }
            match n {
                1 | 2 => vec![Permutation::identity(n)],
                3 => vec![cycle(0..3, 3)],
                _ if n % 2 == 1 => vec![cycle(0..3, n), cycle(0..n, n)],
                _ => vec![cycle(0..3, n), cycle(1..n, n)],
            }
        }
        GroupSpec::Heisenberg(p) => {
            if !is_prime(p) || p > 23 {
                return Err(range_err("heisenberg", p, "prime p <= 23"));
            }
            // (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y'), encoded x + p y + p^2 z
            let enc = |x: usize, y: usize, z: usize| x % p + p * (y % p) + p * p * (z % p);
            let mul = |u: usize, v: usize| {
                let (x, y, z) = (u % p, (u / p) % p, u / (p * p));
                let (a, b, c) = (v % p, (v / p) % p, v / (p * p));
                enc(x + a, y + b, z + c + x * b)
            };
            regular(p * p * p, &[enc(1, 0, 0), enc(0, 1, 0)], mul)
        }
        GroupSpec::ElementaryAbelian { p, k } => {
            if !is_prime(p) || k == 0 {
                return Err(range_err("elementary-abelian", p, "prime p, k >= 1"));
            }
            (0..k).map(|i| cycle(i * p..(i + 1) * p, p * k)).collect()
        }
        GroupSpec::Product(ref a, ref b) => {
            let ga = generators(a)?;
            let gb = generators(b)?;
            let da = ga.first().map(|p| p.degree()).unwrap_or(0);
            let db = gb.first().map(|p| p.degree()).unwrap_or(0);
            let mut out: Vec<Permutation> = ga.iter().map(|p| p.extend(da + db)).collect();
            out.extend(gb.iter().map(|p| p.shifted(da)));
            out
        }
        GroupSpec::Cayley { ref name, .. } => {
            return Err(CorpusError::Format {
                line: 0,
                msg: format!("table-loaded group {name} cannot be a direct factor"),
            })
        }
    })
}

pub fn build(spec: &GroupSpec) -> Result<FiniteGroup, CorpusError> {
    build_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn build_with_cap(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup, CorpusError> {
    if let GroupSpec::Cayley { name, text } = spec {
        let g = parse_cayley_table(text, name)?;
        if g.order() > cap {
            return Err(GroupError::OrderCap { cap }.into());
        }
        return Ok(g);
    }
    let perms = generators(spec)?;
    let labelled: Vec<(String, Permutation)> = default_labels(perms.len()).into_iter().zip(perms).collect();
    Ok(FiniteGroup::close(&labelled, cap, spec.name())?)
}

/// Parses the Cayley format: optional `#` lines, then `n`, then `n` rows of `n` 0-based indices.
pub fn parse_cayley_table(text: &str, name: &str) -> Result<FiniteGroup, CorpusError> {
    let mut lines = text.lines().enumerate().peekable();
    while let Some((_, l)) = lines.peek() {
        if l.trim_start().starts_with('#') {
            lines.next();
        } else {
            break;
        }
    }
    let (first_no, first) = lines.next().ok_or(CorpusError::Format {
        line: 1,
        msg: "missing order line".into(),
    })?;
    let n: usize = first.trim().parse().map_err(|_| CorpusError::Format {
        line: first_no + 1,
        msg: format!("expected element count, found `{}`", first.trim()),
    })?;
    let mut table = Vec::with_capacity(n);
    for (no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|_| CorpusError::Format {
            line: no + 1,
            msg: "non-integer table entry".into(),
        })?;
        table.push(row);
    }
    if table.len() != n {
        return Err(GroupError::NotSquare {
            row: table.len().min(n),
            len: table.len(),
            expected: n,
        }
        .into());
    }
    Ok(FiniteGroup::from_table(name, table)?)
}

pub fn load_cayley_table(path: &Path, name: &str) -> Result<FiniteGroup, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_cayley_table(&text, name)
}

/// Writes `g` in the Cayley format.
pub fn format_cayley_table(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = format!("# {}\n{n}\n", g.name());
    for row in g.table().chunks(n) {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parses `name = cycles` lines (`#` comments) into labelled generators on a common degree.
pub fn parse_permutation_file(text: &str) -> Result<Vec<(String, Permutation)>, CorpusError> {
    let mut gens = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, cycles) = line.split_once('=').ok_or_else(|| CorpusError::Format {
            line: no + 1,
            msg: "expected `name = cycles`".into(),
        })?;
        let name = name.trim();
        if name.is_empty() || !name.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(CorpusError::Format {
                line: no + 1,
                msg: format!("bad generator name `{name}`"),
            });
        }
        let p = Permutation::parse(cycles.trim()).map_err(|source| CorpusError::Perm { line: no + 1, source })?;
        gens.push((name.to_string(), p));
    }
    let degree = gens.iter().map(|(_, p)| p.degree()).max().unwrap_or(0);
    Ok(gens.into_iter().map(|(n, p)| (n, p.extend(degree))).collect())
}

pub fn load_permutation_file(path: &Path, name: &str, cap: usize) -> Result<FiniteGroup, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let gens = parse_permutation_file(&text)?;
    Ok(FiniteGroup::close(&gens, cap, name)?)
}

/// Frobenius group of order 21, shipped as a Cayley table.
pub const C7_C3_TABLE: &str = include_str!("../data/c7_c3.cayley");

/// The fixed list of specs behind [`default_corpus`].
pub fn default_specs() -> Vec<GroupSpec> {
    use GroupSpec::*;
    let p = GroupSpec::product;
    let ea = |p, k| ElementaryAbelian { p, k };
    vec![
        // abelian
        Cyclic(1),
        Cyclic(2),
        Cyclic(6),
        Cyclic(12),
        Cyclic(27),
        ea(2, 2),
        ea(2, 3),
        ea(2, 7),
        ea(3, 4),
        p(Cyclic(4), Cyclic(4)),
        p(Cyclic(8), Cyclic(2)),
        p(Cyclic(9), Cyclic(3)),
        // nilpotent 2-groups
        Dihedral(4),
        Dihedral(8),
        Dihedral(16),
        Dihedral(32),
        Dihedral(64),
        Dicyclic(2),
        Dicyclic(4),
        Dicyclic(8),
        Dicyclic(16),
        p(Dicyclic(2), Cyclic(2)),
        p(Dihedral(4), Cyclic(2)),
        p(Dihedral(4), Cyclic(4)),
        p(Dihedral(8), ea(2, 2)),
        p(Dicyclic(2), Dihedral(4)),
        // nilpotent 3- and 5-groups
        Heisenberg(3),
        Heisenberg(5),
        p(Heisenberg(3), Cyclic(3)),
        Heisenberg(7),
        // soluble, not nilpotent
        Symmetric(3),
        Dihedral(3),
        Dihedral(5),
        Dihedral(6),
        Dihedral(12),
        Dicyclic(3),
        Dicyclic(5),
        Alternating(4),
        Symmetric(4),
        p(Symmetric(3), Cyclic(4)),
        p(Symmetric(3), Cyclic(3)),
        p(Symmetric(3), Symmetric(3)),
        p(Symmetric(4), Cyclic(2)),
        p(Alternating(4), Cyclic(2)),
        p(Dicyclic(2), Cyclic(3)),
        p(Dicyclic(3), Cyclic(2)),
        p(Symmetric(4), Symmetric(3)),
        p(Dihedral(4), Symmetric(3)),
        Cayley {
            name: "C7:C3".into(),
            text: C7_C3_TABLE.into(),
        },
        // not soluble
        Alternating(5),
        Symmetric(5),
        p(Alternating(5), Cyclic(2)),
        p(Alternating(5), Cyclic(3)),
    ]
}

/// The default-corpus spec with the given canonical name.
pub fn lookup(name: &str) -> Option<GroupSpec> {
    default_specs().into_iter().find(|s| s.name() == name)
}

/// Deterministic corpus; builders run concurrently, output order is fixed.
pub fn default_corpus() -> Vec<FiniteGroup> {
    default_specs()
        .par_iter()
        .map(|s| build(s).expect("corpus specs are in range"))
        .collect()
}
