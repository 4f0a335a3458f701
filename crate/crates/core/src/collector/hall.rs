use super::CollectorError;

pub const MAX_RANK: usize = 3;
pub const MAX_CLASS: usize = 5;

/// A basic commutator of the Hall basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicCommutator {
    pub id: usize,
    pub weight: usize,
    /// `(left, right)` component ids; `None` for generators.
    pub components: Option<(usize, usize)>,
    pub label: String,
}

impl BasicCommutator {
    pub fn is_generator(&self) -> bool {
        self.components.is_none()
    }
}

pub fn generator_label(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

/// Hall basis of the free nilpotent group of the given rank and class.
///
/// Weight-`n` elements are `[u, v]` with `u > v`, `wt(u) + wt(v) = n`, and
/// `t <= v` whenever `u = [s, t]`. Listed by weight, then by `(u, v)`.
pub fn hall_basis(rank: usize, class: usize) -> Result<Vec<BasicCommutator>, CollectorError> {
    if !(1..=MAX_RANK).contains(&rank) || !(1..=MAX_CLASS).contains(&class) {
        return Err(CollectorError::OutOfRange { rank, class });
    }
    let mut basis: Vec<BasicCommutator> = (0..rank)
        .map(|i| BasicCommutator {
            id: i,
            weight: 1,
            components: None,
            label: generator_label(i),
        })
        .collect();
    for n in 2..=class {
        let mut fresh = Vec::new();
        for u in &basis {
            for v in &basis {
                if u.weight + v.weight != n || u.id <= v.id {
                    continue;
                }
                if let Some((_, t)) = u.components {
                    if t > v.id {
                        continue;
                    }
                }
                fresh.push((u.id, v.id));
            }
        }
        fresh.sort();
        for (u, v) in fresh {
            let label = format!("[{},{}]", basis[u].label, basis[v].label);
            basis.push(BasicCommutator {
                id: basis.len(),
                weight: n,
                components: Some((u, v)),
                label,
            });
        }
    }
    Ok(basis)
}
