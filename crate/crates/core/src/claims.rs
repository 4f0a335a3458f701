//! Registry of checkable statements about Engel elements, each run over one finite group.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::elemset::ElementSet;
use crate::engel::{l2_characterization, l3_characterization_with, left_engel_set, right_engel_set, N2Cache};
use crate::exponent::{eval_exponent, parse_exponent};
use crate::group::{Elem, FiniteGroup};
use crate::structure::{
    baer_radical, class_at_most, commutator_subgroup, derived_length, nilpotency_class, normal_closure,
    subgroup_generate, Subgroup,
};

/// Pair loops are exhaustive up to this group order and sampled above it.
pub const EXHAUSTIVE_PAIR_ORDER: usize = 256;
pub const SAMPLED_PAIRS: usize = 10_000;
/// Triple loops are exhaustive while `|L_3|^3` stays at or below this count.
pub const TRIPLE_BUDGET: usize = 8_000;
const SEED: u64 = 0x1e3e_46e1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    Theorem,
    Lemma,
    Corollary,
    Proposition,
    Remark,
    CitedFact,
    Informational,
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimKind::Theorem => "theorem",
            ClaimKind::Lemma => "lemma",
            ClaimKind::Corollary => "corollary",
            ClaimKind::Proposition => "proposition",
            ClaimKind::Remark => "remark",
            ClaimKind::CitedFact => "cited-fact",
            ClaimKind::Informational => "informational",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub kind: ClaimKind,
}

pub type Witness = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub claim: String,
    pub group: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub ms: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClaimError {
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
}

const CLAIMS: [Claim; 19] = [
    Claim {
        id: "CHK-01",
        statement: "[a,_0 b] = a and [a,_n b] = [[a,_{n-1} b],b]",
        kind: ClaimKind::Lemma,
    },
    Claim {
        id: "CHK-02",
        statement: "L_2(G) = {x : <x>^G is abelian}",
        kind: ClaimKind::Lemma,
    },
    Claim {
        id: "CHK-03",
        statement: "a^2 = 1 implies [x,_m a] = [x,a]^((-2)^(m-1)) for 1 <= m <= 6",
        kind: ClaimKind::Lemma,
    },
    Claim {
        id: "CHK-04",
        statement: "Heineken: (R_n(G))^-1 is contained in L_{n+1}(G) for 1 <= n <= 4",
        kind: ClaimKind::CitedFact,
    },
    Claim {
        id: "CHK-05",
        statement: "Kappe: R_2(G) is a characteristic subgroup (subgroup, conjugation-stable)",
        kind: ClaimKind::CitedFact,
    },
    Claim {
        id: "CHK-06",
        statement: "R_2(G) is contained in L_2(G)",
        kind: ClaimKind::CitedFact,
    },
    Claim {
        id: "CHK-07",
        statement: "Newell: the normal closure of every element of R_3(G) is nilpotent of class at most 3",
        kind: ClaimKind::CitedFact,
    },
    Claim {
        id: "CHK-08",
        statement: "(R_3(G))^2 is contained in L_3(G) and (R_3(G))^4 in R_3(G)",
        kind: ClaimKind::CitedFact,
    },
    Claim {
        id: "CHK-09",
        statement: "[y,_3 x] = [y^-1,_3 x] = 1 if and only if <x,x^y> is nilpotent of class at most 2",
        kind: ClaimKind::Lemma,
    },
    Claim {
        id: "CHK-10",
        statement: "L_3(G) = {x : <x,x^y> in N_2 for all y}; every power of a left 3-Engel element is left 3-Engel",
        kind: ClaimKind::Corollary,
    },
    Claim {
        id: "CHK-11",
        statement: "left 3-Engel elements of coprime orders commute",
        kind: ClaimKind::Proposition,
    },
    Claim {
        id: "CHK-12",
        statement: "x in L_3(G) with x^(p^n) = 1, n >= 2, implies x^(p^(n-1)) in L_2(G)",
        kind: ClaimKind::Lemma,
    },
    Claim {
        id: "CHK-13",
        statement: "x in L_3(G) of order p^n, n > 1: <x^p>^G is soluble of derived length at most n-1 and x^p is in B(G)",
        kind: ClaimKind::Theorem,
    },
    Claim {
        id: "CHK-14",
        statement: "a in L_3(G): [a,x]^(a^2) = [a,x]^(2a-1) and [a,x]^(a^-1) = [a,x]^(-a+2)",
        kind: ClaimKind::Remark,
    },
    Claim {
        id: "CHK-15",
        statement: "a,b in L_3(G): <a,b>' = <[a,b], [a,b]^a, [a,b]^b, [a,b]^(ab)>",
        kind: ClaimKind::Lemma,
    },
    Claim {
        id: "CHK-16",
        statement: "a,b in L_3(G): [a,b] and [a,b]^(ab) centralize [a,b]^a and [a,b]^b",
        kind: ClaimKind::Lemma,
    },
    Claim {
        id: "CHK-17",
        statement: "a,b in L_3(G): <a,b> is nilpotent of class at most 4 and metabelian",
        kind: ClaimKind::Theorem,
    },
    Claim {
        id: "CHK-18",
        statement: "search for x in R_3(G) with x^-1 or x^2 outside R_3(G)",
        kind: ClaimKind::Informational,
    },
    Claim {
        id: "CHK-19",
        statement: "largest class of a nilpotent <a,b,c> with a,b,c in L_3(G)",
        kind: ClaimKind::Informational,
    },
];

pub fn claims() -> &'static [Claim] {
    &CLAIMS
}

pub fn claim(id: &str) -> Result<&'static Claim, ClaimError> {
    CLAIMS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| ClaimError::UnknownClaim(id.to_string()))
}

struct Outcome {
    status: Status,
    witness: Option<Witness>,
}

fn pass() -> Outcome {
    Outcome {
        status: Status::Pass,
        witness: None,
    }
}

fn pass_with(w: Witness) -> Outcome {
    Outcome {
        status: Status::Pass,
        witness: Some(w),
    }
}

fn fail(w: Witness) -> Outcome {
    Outcome {
        status: Status::Fail,
        witness: Some(w),
    }
}

fn info(w: Witness) -> Outcome {
    Outcome {
        status: Status::Info,
        witness: Some(w),
    }
}

fn wit<const N: usize>(entries: [(&str, String); N]) -> Witness {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Runs one claim on one group. `ms` is left at 0 here; see [`run_all`].
pub fn run_claim(id: &str, g: &FiniteGroup) -> Result<ClaimResult, ClaimError> {
    let c = claim(id)?;
    let out = match c.id {
        "CHK-01" => chk01(g),
        "CHK-02" => chk02(g),
        "CHK-03" => chk03(g),
        "CHK-04" => chk04(g),
        "CHK-05" => chk05(g),
        "CHK-06" => chk06(g),
        "CHK-07" => chk07(g),
        "CHK-08" => chk08(g),
        "CHK-09" => chk09(g),
        "CHK-10" => chk10(g),
        "CHK-11" => chk11(g),
        "CHK-12" => chk12(g),
        "CHK-13" => chk13(g),
        "CHK-14" => chk14(g),
        "CHK-15" => chk15(g),
        "CHK-16" => chk16(g),
        "CHK-17" => chk17(g),
        "CHK-18" => chk18(g),
        "CHK-19" => chk19(g),
        _ => unreachable!("registry and dispatch list the same ids"),
    };
    Ok(ClaimResult {
        claim: c.id.to_string(),
        group: g.name().to_string(),
        status: out.status,
        witness: out.witness,
        ms: 0,
    })
}

/// Runs every (claim, group) pair concurrently and returns results sorted by
/// claim id, then group name. Elapsed times are recorded only with `timings`,
/// so reports without it are reproducible byte for byte.
pub fn run_all(groups: &[FiniteGroup], claim_ids: &[String], timings: bool) -> Result<Vec<ClaimResult>, ClaimError> {
    for id in claim_ids {
        claim(id)?;
    }
    let jobs: Vec<(&String, &FiniteGroup)> = claim_ids.iter().flat_map(|c| groups.iter().map(move |g| (c, g))).collect();
    let mut results: Vec<ClaimResult> = jobs
        .par_iter()
        .map(|(c, g)| {
            let start = Instant::now();
            let mut r = run_claim(c, g).expect("claim ids validated above");
            if timings {
                r.ms = start.elapsed().as_millis() as u64;
            }
            r
        })
        .collect();
    results.sort_by(|a, b| (&a.claim, &a.group).cmp(&(&b.claim, &b.group)));
    Ok(results)
}

fn show(g: &FiniteGroup, x: Elem) -> String {
    g.show(x)
}

/// `(p, n)` with `k = p^n`, `n >= 1`.
pub fn prime_power(k: usize) -> Option<(usize, u32)> {
    if k < 2 {
        return None;
    }
    let p = (2..=k).find(|d| k.is_multiple_of(*d)).unwrap();
    let mut m = k;
    let mut n = 0;
    while m.is_multiple_of(p) {
        m /= p;
        n += 1;
    }
    (m == 1).then_some((p, n))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Pairs drawn from `set`: all of them when `|G|` is at most
/// [`EXHAUSTIVE_PAIR_ORDER`], otherwise [`SAMPLED_PAIRS`] seeded draws.
fn pairs(g: &FiniteGroup, set: &[Elem], ordered: bool) -> (Vec<(Elem, Elem)>, Witness) {
    if g.order() <= EXHAUSTIVE_PAIR_ORDER || set.is_empty() {
        let mut out = Vec::new();
        for (i, &a) in set.iter().enumerate() {
            let from = if ordered { 0 } else { i };
            for &b in &set[from..] {
                out.push((a, b));
            }
        }
        let n = out.len();
        (out, wit([("pair_mode", "exhaustive".into()), ("pairs", n.to_string())]))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let out: Vec<(Elem, Elem)> = (0..SAMPLED_PAIRS)
            .map(|_| (set[rng.gen_range(0..set.len())], set[rng.gen_range(0..set.len())]))
            .collect();
        (
            out,
            wit([
                ("pair_mode", "sampled".into()),
                ("pairs", SAMPLED_PAIRS.to_string()),
                ("seed", SEED.to_string()),
            ]),
        )
    }
}

fn l3_brute(g: &FiniteGroup) -> Vec<Elem> {
    left_engel_set(g, 3).elements()
}

fn chk01(g: &FiniteGroup) -> Outcome {
    for a in g.elements() {
        for b in g.elements() {
            if g.engel_commutator(a, b, 0) != a {
                return fail(wit([("a", show(g, a)), ("b", show(g, b)), ("n", "0".into())]));
            }
            let mut prev = a;
            for n in 1..=6 {
                let step = g.comm(prev, b);
                if g.engel_commutator(a, b, n) != step {
                    return fail(wit([("a", show(g, a)), ("b", show(g, b)), ("n", n.to_string())]));
                }
                prev = step;
            }
        }
    }
    pass()
}

fn set_difference_witness(g: &FiniteGroup, lhs: &ElementSet, rhs: &ElementSet, names: (&str, &str)) -> Witness {
    let x = g
        .elements()
        .find(|&x| lhs.contains(x) != rhs.contains(x))
        .expect("sets differ");
    wit([
        ("x", show(g, x)),
        (names.0, lhs.contains(x).to_string()),
        (names.1, rhs.contains(x).to_string()),
    ])
}

fn chk02(g: &FiniteGroup) -> Outcome {
    let brute = left_engel_set(g, 2).members;
    let char = l2_characterization(g).members;
    if brute == char {
        pass()
    } else {
        fail(set_difference_witness(g, &brute, &char, ("in_L2", "closure_abelian")))
    }
}

fn chk03(g: &FiniteGroup) -> Outcome {
    for a in g.elements().filter(|&a| g.mul(a, a) == Elem::IDENTITY) {
        for x in g.elements() {
            let c = g.comm(x, a);
            for m in 1..=6u32 {
                let k = (-2i64).pow(m - 1);
                if g.engel_commutator(x, a, m as usize) != g.pow(c, k) {
                    return fail(wit([("a", show(g, a)), ("x", show(g, x)), ("m", m.to_string())]));
                }
            }
        }
    }
    pass()
}

fn chk04(g: &FiniteGroup) -> Outcome {
    for n in 1..=4 {
        let r = right_engel_set(g, n);
        let l = left_engel_set(g, n + 1);
        for x in r.elements() {
            if !l.contains(g.inv(x)) {
                return fail(wit([("x", show(g, x)), ("n", n.to_string())]));
            }
        }
    }
    pass()
}

fn chk05(g: &FiniteGroup) -> Outcome {
    let r2 = right_engel_set(g, 2);
    if !r2.contains(Elem::IDENTITY) {
        return fail(wit([("missing", "identity".into())]));
    }
    let elems = r2.elements();
    for &x in &elems {
        for &y in &elems {
            if !r2.contains(g.mul(x, y)) {
                return fail(wit([("x", show(g, x)), ("y", show(g, y)), ("product_outside", "true".into())]));
            }
        }
        if !r2.contains(g.inv(x)) {
            return fail(wit([("x", show(g, x)), ("inverse_outside", "true".into())]));
        }
        for h in g.elements() {
            if !r2.contains(g.conj(x, h)) {
                return fail(wit([("x", show(g, x)), ("h", show(g, h)), ("conjugate_outside", "true".into())]));
            }
        }
    }
    pass_with(wit([("order_R2", elems.len().to_string())]))
}

fn chk06(g: &FiniteGroup) -> Outcome {
    let l2 = left_engel_set(g, 2);
    match right_engel_set(g, 2).elements().into_iter().find(|&x| !l2.contains(x)) {
        Some(x) => fail(wit([("x", show(g, x))])),
        None => pass(),
    }
}

fn chk07(g: &FiniteGroup) -> Outcome {
    for x in right_engel_set(g, 3).elements() {
        let n = normal_closure(g, &[x]);
        if !class_at_most(&n, 3) {
            let class = nilpotency_class(&n).map_or("not nilpotent".into(), |c| c.to_string());
            return fail(wit([("x", show(g, x)), ("class", class)]));
        }
    }
    pass()
}

fn chk08(g: &FiniteGroup) -> Outcome {
    let r3 = right_engel_set(g, 3);
    let l3 = left_engel_set(g, 3);
    for x in r3.elements() {
        if !l3.contains(g.pow(x, 2)) {
            return fail(wit([("x", show(g, x)), ("square_outside_L3", "true".into())]));
        }
        if !r3.contains(g.pow(x, 4)) {
            return fail(wit([("x", show(g, x)), ("fourth_power_outside_R3", "true".into())]));
        }
    }
    pass()
}

fn chk09(g: &FiniteGroup) -> Outcome {
    let mut cache = N2Cache::new();
    for x in g.elements() {
        for y in g.elements() {
            let engel = g.engel_commutator(y, x, 3) == Elem::IDENTITY
                && g.engel_commutator(g.inv(y), x, 3) == Elem::IDENTITY;
            let n2 = cache.pair_in_n2(g, x, g.conj(x, y));
            if engel != n2 {
                return fail(wit([
                    ("x", show(g, x)),
                    ("y", show(g, y)),
                    ("engel_side", engel.to_string()),
                    ("n2_side", n2.to_string()),
                ]));
            }
        }
    }
    pass()
}

fn chk10(g: &FiniteGroup) -> Outcome {
    let brute = left_engel_set(g, 3);
    let char = l3_characterization_with(g, &mut N2Cache::new());
    if brute.members != char.members {
        return fail(set_difference_witness(g, &brute.members, &char.members, ("in_L3", "pairs_in_N2")));
    }
    for x in brute.elements() {
        for k in 2..g.element_order(x) as i64 {
            if !brute.contains(g.pow(x, k)) {
                return fail(wit([("x", show(g, x)), ("k", k.to_string())]));
            }
        }
    }
    pass()
}

fn chk11(g: &FiniteGroup) -> Outcome {
    let l3 = l3_brute(g);
    let (ps, caps) = pairs(g, &l3, false);
    for (a, b) in ps {
        if gcd(g.element_order(a), g.element_order(b)) == 1 && !g.commute(a, b) {
            return fail(wit([("a", show(g, a)), ("b", show(g, b))]));
        }
    }
    pass_with(caps)
}

fn chk12(g: &FiniteGroup) -> Outcome {
    let l2 = left_engel_set(g, 2);
    for x in l3_brute(g) {
        let Some((p, n)) = prime_power(g.element_order(x)) else {
            continue;
        };
        if n >= 2 && !l2.contains(g.pow(x, (p as i64).pow(n - 1))) {
            return fail(wit([("x", show(g, x)), ("p", p.to_string()), ("n", n.to_string())]));
        }
    }
    pass()
}

fn chk13(g: &FiniteGroup) -> Outcome {
    let baer = baer_radical(g);
    let mut w = Witness::new();
    let mut order_p = 0usize;
    for x in l3_brute(g) {
        let Some((p, n)) = prime_power(g.element_order(x)) else {
            continue;
        };
        let xp = g.pow(x, p as i64);
        if n == 1 {
            // x^p = 1 lies in every subgroup
            order_p += 1;
            continue;
        }
        let k = normal_closure(g, &[xp]);
        let dl = derived_length(&k);
        let in_baer = baer.contains(xp);
        let dl_text = dl.map_or("not soluble".into(), |d| d.to_string());
        if !in_baer || dl.is_none_or(|d| d > n as usize - 1) {
            return fail(wit([
                ("x", show(g, x)),
                ("p", p.to_string()),
                ("n", n.to_string()),
                ("derived_length", dl_text),
                ("x^p_in_baer", in_baer.to_string()),
            ]));
        }
        w.insert(show(g, x), format!("p={p} n={n} derived_length={dl_text}"));
    }
    w.insert("order_p_elements".into(), order_p.to_string());
    pass_with(w)
}

fn chk14(g: &FiniteGroup) -> Outcome {
    let two_a = parse_exponent("2a-1").expect("fixed expression");
    let minus_a = parse_exponent("-a+2").expect("fixed expression");
    for a in l3_brute(g) {
        let env: HashMap<String, Elem> = [("a".to_string(), a)].into();
        let ai = g.inv(a);
        for x in g.elements() {
            let u = g.comm(a, x);
            let lhs1 = g.conj(g.conj(u, a), a);
            let rhs1 = eval_exponent(g, u, &two_a, &env).expect("a is bound");
            let lhs2 = g.conj(u, ai);
            let rhs2 = eval_exponent(g, u, &minus_a, &env).expect("a is bound");
            if lhs1 != rhs1 || lhs2 != rhs2 {
                let which = if lhs1 != rhs1 { "2a-1" } else { "-a+2" };
                return fail(wit([("a", show(g, a)), ("x", show(g, x)), ("identity", which.into())]));
            }
        }
    }
    pass()
}

fn chk15(g: &FiniteGroup) -> Outcome {
    let l3 = l3_brute(g);
    let (ps, caps) = pairs(g, &l3, true);
    let mut derived: HashMap<ElementSet, ElementSet> = HashMap::new();
    for (a, b) in ps {
        let h = subgroup_generate(g, &[a, b]);
        let lhs = derived
            .entry(h.members().clone())
            .or_insert_with(|| commutator_subgroup(&h, &h).members().clone());
        let c = g.comm(a, b);
        let gens = [c, g.conj(c, a), g.conj(c, b), g.conj(c, g.mul(a, b))];
        let rhs = subgroup_generate(g, &gens);
        if lhs != rhs.members() {
            return fail(wit([
                ("a", show(g, a)),
                ("b", show(g, b)),
                ("derived_order", lhs.len().to_string()),
                ("generated_order", rhs.order().to_string()),
            ]));
        }
    }
    pass_with(caps)
}

fn chk16(g: &FiniteGroup) -> Outcome {
    let l3 = l3_brute(g);
    let (ps, caps) = pairs(g, &l3, true);
    for (a, b) in ps {
        let c = g.comm(a, b);
        let centre = [g.conj(c, a), g.conj(c, b)];
        for (name, u) in [("[a,b]", c), ("[a,b]^ab", g.conj(c, g.mul(a, b)))] {
            if let Some(v) = centre.iter().find(|&&v| !g.commute(u, v)) {
                return fail(wit([
                    ("a", show(g, a)),
                    ("b", show(g, b)),
                    ("element", name.into()),
                    ("noncommuting_with", show(g, *v)),
                ]));
            }
        }
    }
    pass_with(caps)
}

fn chk17(g: &FiniteGroup) -> Outcome {
    let l3 = l3_brute(g);
    let (ps, caps) = pairs(g, &l3, false);
    let mut seen: HashMap<ElementSet, Option<(Option<usize>, Option<usize>)>> = HashMap::new();
    for (a, b) in ps {
        let h = subgroup_generate(g, &[a, b]);
        let verdict = seen.entry(h.members().clone()).or_insert_with(|| {
            let ok = class_at_most(&h, 4) && derived_length(&h).is_some_and(|d| d <= 2);
            (!ok).then(|| (nilpotency_class(&h), derived_length(&h)))
        });
        if let Some((class, dl)) = verdict {
            let text = |v: &Option<usize>, none: &str| v.map_or(none.to_string(), |d| d.to_string());
            return fail(wit([
                ("a", show(g, a)),
                ("b", show(g, b)),
                ("class", text(class, "not nilpotent")),
                ("derived_length", text(dl, "not soluble")),
            ]));
        }
    }
    pass_with(caps)
}

fn chk18(g: &FiniteGroup) -> Outcome {
    let r3 = right_engel_set(g, 3);
    let mut w = wit([("order_R3", r3.len().to_string())]);
    let bad_inv: Vec<Elem> = r3.elements().into_iter().filter(|&x| !r3.contains(g.inv(x))).collect();
    let bad_sq: Vec<Elem> = r3.elements().into_iter().filter(|&x| !r3.contains(g.pow(x, 2))).collect();
    w.insert("inverse_outside".into(), bad_inv.len().to_string());
    w.insert("square_outside".into(), bad_sq.len().to_string());
    if let Some(&x) = bad_inv.first() {
        w.insert("inverse_example".into(), show(g, x));
    }
    if let Some(&x) = bad_sq.first() {
        w.insert("square_example".into(), show(g, x));
    }
    info(w)
}

fn chk19(g: &FiniteGroup) -> Outcome {
    let l3 = l3_brute(g);
    let n = l3.len();
    let triples: Vec<[Elem; 3]> = if n * n * n <= TRIPLE_BUDGET {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    out.push([l3[i], l3[j], l3[k]]);
                }
            }
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        (0..TRIPLE_BUDGET)
            .map(|_| std::array::from_fn(|_| l3[rng.gen_range(0..n)]))
            .collect()
    };
    let mode = if n * n * n <= TRIPLE_BUDGET { "exhaustive" } else { "sampled" };
    let mut classes: HashMap<ElementSet, Option<usize>> = HashMap::new();
    let mut best: Option<(usize, [Elem; 3])> = None;
    let mut nilpotent = 0usize;
    for t in &triples {
        let h: Subgroup<'_> = subgroup_generate(g, t);
        let class = *classes.entry(h.members().clone()).or_insert_with(|| nilpotency_class(&h));
        if let Some(c) = class {
            nilpotent += 1;
            if best.is_none_or(|(b, _)| c > b) {
                best = Some((c, *t));
            }
        }
    }
    let mut w = wit([
        ("triple_mode", mode.into()),
        ("triples", triples.len().to_string()),
        ("nilpotent_triples", nilpotent.to_string()),
        ("order_L3", n.to_string()),
    ]);
    if let Some((c, t)) = best {
        w.insert("max_class".into(), c.to_string());
        w.insert("max_class_example".into(), t.iter().map(|&x| show(g, x)).collect::<Vec<_>>().join(" | "));
    }
    info(w)
}
