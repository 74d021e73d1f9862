//! Disconnected maximal geometric subgroups and their restriction maps.
//!
//! Every family is realised by sending the ambient ε-basis to ε-vectors of
//! the factors of H⁰ (and to central charges). Pairing with the factor
//! coroots then gives an integer matrix from ambient fundamental
//! coordinates to H⁰ fundamental coordinates. The choices of conjugate
//! below reproduce the printed restriction formulas of each family.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::charcalc::ProductSystem;
use crate::error::{Error, Result};
use crate::rootsys::{build_root_system, q, Family, LieType, RootSystem, Weight, Q};

/// Subgroup family and parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GeomFamily {
    /// B_n ⊃ D_n.2
    C1Dn,
    /// B_n ⊃ D_l B_{n−l}.2, D_n ⊃ D_l D_{n−l}.2
    C1 { l: usize },
    /// Imprimitive subgroups X_l^t; `sub` is the factor family
    /// (A for A_l^t T_{t−1} in A_n, B for 2^{t−1} × B_l^t, C or D otherwise).
    C2 { sub: Family, l: usize, t: usize },
    /// A_{n−1} T_1.2 in C_n or D_n
    C3,
    /// C_a D_b.2 in C_n, D_a D_b.2² in D_n, with n = 2ab
    C4i { a: usize, b: usize },
    /// Tensor-decomposition stabilisers X_l^t.S_t
    C4ii { sub: Family, l: usize, t: usize },
    /// D_m.2 in A_{2m−1}, D_n.2 in C_n
    C6,
}

impl GeomFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            GeomFamily::C1Dn | GeomFamily::C1 { .. } => "C1",
            GeomFamily::C2 { .. } => "C2",
            GeomFamily::C3 => "C3",
            GeomFamily::C4i { .. } => "C4i",
            GeomFamily::C4ii { .. } => "C4ii",
            GeomFamily::C6 => "C6",
        }
    }

    /// Parse a family spec such as `c1:Dn`, `c1:l=2`, `c2:l=1,t=2`,
    /// `c2:Dl,l=2,t=2`, `c3`, `c4i:a=1,b=2`, `c4ii:Cl,l=1,t=3` or `c6`.
    pub fn parse(spec: &str, ambient: LieType) -> Result<GeomFamily> {
        let bad = |m: &str| Error::Parse {
            line: 0,
            msg: format!("family spec '{spec}': {m}"),
        };
        let spec_l = spec.trim();
        let (head, rest) = match spec_l.split_once(':') {
            Some((h, r)) => (h, r),
            None => (spec_l, ""),
        };
        let mut sub: Option<Family> = None;
        let mut dn = false;
        let mut vals = std::collections::BTreeMap::new();
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if let Some((k, v)) = item.split_once('=') {
                let v: usize = v.trim().parse().map_err(|_| bad("bad integer"))?;
                vals.insert(k.trim().to_ascii_lowercase(), v);
            } else {
                let mut c = item.chars();
                let f = c
                    .next()
                    .and_then(Family::from_letter)
                    .ok_or_else(|| bad("bad factor family"))?;
                match c.as_str() {
                    "l" | "" | "a" | "b" => sub = Some(f),
                    "n" | "m" => {
                        dn = true;
                        sub = Some(f)
                    }
                    _ => return Err(bad("bad factor token")),
                }
            }
        }
        let get = |k: &str| vals.get(k).copied().ok_or_else(|| bad(&format!("missing {k}")));
        let default_sub = |c4: bool| match ambient.family {
            Family::D => {
                if c4 {
                    Family::C
                } else {
                    Family::D
                }
            }
            f => f,
        };
        match head.to_ascii_lowercase().as_str() {
            "c1" => {
                if dn || vals.is_empty() {
                    Ok(GeomFamily::C1Dn)
                } else {
                    Ok(GeomFamily::C1 { l: get("l")? })
                }
            }
            "c2" => Ok(GeomFamily::C2 {
                sub: sub.unwrap_or_else(|| default_sub(false)),
                l: get("l")?,
                t: get("t")?,
            }),
            "c3" => Ok(GeomFamily::C3),
            "c4i" => Ok(GeomFamily::C4i {
                a: get("a")?,
                b: get("b")?,
            }),
            "c4ii" => Ok(GeomFamily::C4ii {
                sub: sub.unwrap_or_else(|| default_sub(true)),
                l: get("l")?,
                t: get("t")?,
            }),
            "c6" => Ok(GeomFamily::C6),
            _ => Err(bad("unknown family tag")),
        }
    }
}

impl fmt::Display for GeomFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomFamily::C1Dn => write!(f, "c1:Dn"),
            GeomFamily::C1 { l } => write!(f, "c1:l={l}"),
            GeomFamily::C2 { sub, l, t } => write!(f, "c2:{}l,l={l},t={t}", sub.letter()),
            GeomFamily::C3 => write!(f, "c3"),
            GeomFamily::C4i { a, b } => write!(f, "c4i:a={a},b={b}"),
            GeomFamily::C4ii { sub, l, t } => write!(f, "c4ii:{}l,l={l},t={t}", sub.letter()),
            GeomFamily::C6 => write!(f, "c6"),
        }
    }
}

/// Characteristic constraint on the existence of a subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PRequirement {
    Any,
    NotTwo,
    Two,
}

/// Existence and maximality data, consulted by the checker but never enforced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Existence {
    pub p: PRequirement,
    /// False when the subgroup is not maximal for structural reasons (C3 in D_n, n odd).
    pub maximal: bool,
    pub notes: Vec<String>,
}

impl Existence {
    pub fn holds_at(&self, p: u64) -> bool {
        self.maximal
            && match self.p {
                PRequirement::Any => true,
                PRequirement::NotTwo => p != 2,
                PRequirement::Two => p == 2,
            }
    }
}

/// Integer matrices on H⁰ coordinates generating the action of H/H⁰.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentAction {
    pub generators: Vec<Vec<Vec<i64>>>,
    /// Order of the acting quotient of H/H⁰ named by the subgroup label.
    pub nominal_order: u64,
}

impl ComponentAction {
    /// Order of the matrix group generated by the generators.
    pub fn group_order(&self, dim: usize) -> usize {
        let id: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(m) = stack.pop() {
            for g in &self.generators {
                let p = mat_mul(g, &m);
                if seen.insert(p.clone()) {
                    stack.push(p);
                }
            }
        }
        seen.len()
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// The result of [`ell_value`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllValue {
    pub total: Q,
    pub per_j: Vec<Q>,
}

/// A subgroup H of G with the restriction map to H⁰.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub ambient: LieType,
    pub family: GeomFamily,
    /// Simple factors of (H⁰)′ in order; B_1, C_1 and the reducible D_2 are allowed.
    pub factors: Vec<LieType>,
    pub torus_rank: usize,
    /// Central charges are stored multiplied by this integer.
    pub charge_scale: i64,
    /// `restriction[r][c]`: coordinate r of the image of λ_{c+1}.
    pub restriction: Vec<Vec<i64>>,
    /// Image of each ambient simple root, computed from its ε-form.
    pub simple_root_images: Vec<Vec<i64>>,
    pub action: ComponentAction,
    pub existence: Existence,
    /// Printable name of H, such as `D2B3.2`.
    pub label: String,
    pub product: ProductSystem,
}

/// A root system for a factor type (D_2 is A_1 × A_1).
pub fn factor_root_system(t: LieType) -> RootSystem {
    build_root_system(t)
}

/// Flat ε-space of H⁰: factor ε-blocks followed by torus slots.
struct EpsBuilder {
    factors: Vec<LieType>,
    offsets: Vec<usize>,
    eps_len: usize,
    torus: usize,
    /// per ambient ε index, image in the flat space (filled in later)
    images: Vec<Vec<Q>>,
}

impl EpsBuilder {
    fn new() -> EpsBuilder {
        EpsBuilder {
            factors: Vec::new(),
            offsets: Vec::new(),
            eps_len: 0,
            torus: 0,
            images: Vec::new(),
        }
    }

    fn factor(&mut self, t: LieType) -> usize {
        self.factors.push(t);
        self.offsets.push(self.eps_len);
        self.eps_len += t.eps_dim();
        self.factors.len() - 1
    }

    fn charge(&mut self) -> usize {
        self.torus += 1;
        self.torus - 1
    }

    fn width(&self) -> usize {
        self.eps_len + self.torus
    }

    fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.width()]
    }

    fn eps(&self, f: usize, j: usize) -> usize {
        self.offsets[f] + j
    }

    fn slot(&self, s: usize) -> usize {
        self.eps_len + s
    }
}

/// Where a block of consecutive ambient ε's lands.
#[derive(Clone, Copy, Debug)]
enum Block {
    Factor(usize),
    Charge(usize),
}

fn lie(f: Family, r: usize) -> Result<LieType> {
    LieType::factor(f, r)
}

fn invalid(msg: String) -> Error {
    Error::InvalidParams(msg)
}

/// Index into the natural module weight list N_0..N_{N−1} for an ε-type of
/// dimension `d`: returns (ε index, sign) or None for the zero weight.
fn natural_weight(f: Family, n: usize, k: usize) -> Option<(usize, i64)> {
    match f {
        Family::A => Some((k, 1)),
        Family::B => {
            if k < n {
                Some((k, 1))
            } else if k == n {
                None
            } else {
                Some((2 * n - k, -1))
            }
        }
        Family::C | Family::D => {
            if k < n {
                Some((k, 1))
            } else {
                Some((2 * n - 1 - k, -1))
            }
        }
    }
}

fn natural_dim(f: Family, n: usize) -> usize {
    match f {
        Family::A => n + 1,
        Family::B => 2 * n + 1,
        Family::C | Family::D => 2 * n,
    }
}

/// Build the embedding of a family in an ambient group.
pub fn build_embedding(ambient: LieType, family: GeomFamily) -> Result<Embedding> {
    let n = ambient.rank;
    let af = ambient.family;
    let mut b = EpsBuilder::new();
    let d = ambient.eps_dim();
    let mut imgs: Vec<Vec<Q>> = Vec::new();
    let mut gens: Vec<Vec<Generator>> = Vec::new();
    let mut existence = Existence {
        p: PRequirement::Any,
        maximal: true,
        notes: Vec::new(),
    };
    let label;
    let nominal: u64;
    let fact = |m: usize| (1..=m as u64).product::<u64>();
    match (af, family) {
        (Family::B, GeomFamily::C1Dn) => {
            let f = b.factor(lie(Family::D, n)?);
            for k in 0..n {
                let mut v = b.zero();
                v[b.eps(f, k)] = q(1);
                imgs.push(v);
            }
            gens.push(vec![Generator::Flip(Block::Factor(f))]);
            label = format!("D{n}.2");
            nominal = 2;
        }
        (Family::B, GeomFamily::C1 { l }) | (Family::D, GeomFamily::C1 { l }) => {
            if af == Family::B && !(1..n).contains(&l) {
                return Err(invalid(format!("need 1 <= l < n for B{n}, got l={l}")));
            }
            if af == Family::D && !(l >= 1 && 2 * l < n) {
                return Err(invalid(format!("need 1 <= l < n/2 for D{n}, got l={l}")));
            }
            let first = if l == 1 {
                Block::Charge(usize::MAX)
            } else {
                Block::Factor(usize::MAX)
            };
            let second_t = lie(af, n - l)?;
            // Semisimple factors come first; a D_1 block becomes a charge.
            let (blk1, blk2) = match first {
                Block::Charge(_) => {
                    let f2 = b.factor(second_t);
                    (Block::Charge(b.charge()), Block::Factor(f2))
                }
                Block::Factor(_) => {
                    let f1 = b.factor(lie(Family::D, l)?);
                    let f2 = b.factor(second_t);
                    (Block::Factor(f1), Block::Factor(f2))
                }
            };
            for k in 0..n {
                let mut v = b.zero();
                if k < l {
                    place(&b, &mut v, blk1, k, 1);
                } else {
                    place(&b, &mut v, blk2, k - l, 1);
                }
                imgs.push(v);
            }
            if af == Family::B {
                gens.push(vec![Generator::Flip(blk1)]);
                label = format!("{}B{}.2", dname(l), n - l);
            } else {
                gens.push(vec![Generator::Flip(blk1), Generator::Flip(blk2)]);
                label = format!("{}D{}.2", dname(l), n - l);
            }
            nominal = 2;
        }
        (_, GeomFamily::C2 { sub, l, t }) => {
            if t < 2 {
                return Err(invalid(format!("need t >= 2, got t={t}")));
            }
            let blocks: Vec<Block>;
            let block_len: usize;
            let mut starts: Vec<usize> = Vec::new();
            match (af, sub) {
                (Family::A, Family::A) => {
                    if (l + 1) * t != n + 1 {
                        return Err(invalid(format!("need n+1 = (l+1)t, got n={n}, l={l}, t={t}")));
                    }
                    blocks = (0..t)
                        .map(|_| {
                            if l == 0 {
                                Block::Charge(usize::MAX)
                            } else {
                                Block::Factor(b.factor(LieType::factor(Family::A, l).unwrap()))
                            }
                        })
                        .collect();
                    block_len = l + 1;
                    (0..t).for_each(|i| starts.push(i * (l + 1)));
                    for _ in 0..t - 1 {
                        b.charge();
                    }
                    label = if l == 0 {
                        format!("T{}.S{t}", t - 1)
                    } else {
                        format!("A{l}^{t}T{}.S{t}", t - 1)
                    };
                    nominal = fact(t);
                }
                (Family::B, Family::B) | (Family::D, Family::B) => {
                    let ok = l >= 1
                        && if af == Family::B {
                            t % 2 == 1 && t >= 3 && 2 * n + 1 == (2 * l + 1) * t
                        } else {
                            t % 2 == 0 && 2 * n == (2 * l + 1) * t
                        };
                    if !ok {
                        return Err(invalid(format!(
                            "B_l^t in {ambient}: need l >= 1 and dim relation with t of the right parity (l={l}, t={t})"
                        )));
                    }
                    blocks = (0..t)
                        .map(|_| Block::Factor(b.factor(lie(Family::B, l).unwrap())))
                        .collect();
                    block_len = l;
                    (0..t).for_each(|i| starts.push(i * l + i / 2));
                    if af == Family::D {
                        existence.p = PRequirement::NotTwo;
                    }
                    label = format!("(2^{} x B{l}^{t}).S{t}", t - 1);
                    nominal = (1u64 << (t - 1)) * fact(t);
                }
                (Family::C, Family::C) | (Family::D, Family::D) => {
                    if l < 1 || l * t != n {
                        return Err(invalid(format!("need n = lt with l >= 1 (n={n}, l={l}, t={t})")));
                    }
                    blocks = (0..t)
                        .map(|_| {
                            if af == Family::D && l == 1 {
                                Block::Charge(usize::MAX)
                            } else {
                                Block::Factor(b.factor(lie(sub, l).unwrap()))
                            }
                        })
                        .collect();
                    block_len = l;
                    (0..t).for_each(|i| starts.push(i * l));
                    if af == Family::C {
                        label = format!("C{l}^{t}.S{t}");
                        nominal = fact(t);
                    } else {
                        label = format!("({}^{t}.2^{}).S{t}", dname(l), t - 1);
                        nominal = (1u64 << (t - 1)) * fact(t);
                    }
                }
                _ => return Err(invalid(format!("no C2 family X={sub:?} in {ambient}"))),
            }
            // Charge blocks (A_0 or D_1) get their own slots.
            let blocks: Vec<Block> = blocks
                .into_iter()
                .map(|blk| match blk {
                    Block::Charge(_) if af == Family::D => Block::Charge(b.charge()),
                    other => other,
                })
                .collect();
            for k in 0..d {
                let mut v = b.zero();
                if let Some(i) = (0..t).rev().find(|&i| starts[i] <= k) {
                    let j = k - starts[i];
                    if j < block_len {
                        match (af, blocks[i]) {
                            (Family::A, blk) => {
                                if let Block::Factor(f) = blk {
                                    v[b.eps(f, j)] = q(1);
                                }
                                let base = b.torus - (t - 1);
                                if i + 1 < t {
                                    v[b.slot(base + i)] += q(1);
                                } else {
                                    for s in 0..t - 1 {
                                        v[b.slot(base + s)] -= q(1);
                                    }
                                }
                            }
                            (_, blk) => place(&b, &mut v, blk, j, 1),
                        }
                    }
                }
                imgs.push(v);
            }
            for i in 0..t - 1 {
                if af == Family::A {
                    let mut g = vec![Generator::ATorusSwap { t, i }];
                    if l > 0 {
                        g.push(Generator::Swap(blocks[i], blocks[i + 1]));
                    }
                    gens.push(g);
                } else {
                    gens.push(vec![Generator::Swap(blocks[i], blocks[i + 1])]);
                }
                if af == Family::D && sub == Family::D {
                    gens.push(vec![Generator::Flip(blocks[i]), Generator::Flip(blocks[i + 1])]);
                }
            }
        }
        (Family::C, GeomFamily::C3) | (Family::D, GeomFamily::C3) => {
            let f = b.factor(LieType::factor(Family::A, n - 1)?);
            let s = b.charge();
            for k in 0..n {
                let mut v = b.zero();
                v[b.eps(f, k)] = q(1);
                v[b.slot(s)] = q(1);
                imgs.push(v);
            }
            gens.push(vec![
                Generator::Flip(Block::Factor(f)),
                Generator::Flip(Block::Charge(s)),
            ]);
            if af == Family::C {
                existence.p = PRequirement::NotTwo;
            } else if n % 2 == 1 {
                existence.maximal = false;
                existence
                    .notes
                    .push("A_{n-1}T_1.2 is not maximal in D_n for odd n".into());
            }
            label = format!("A{}T1.2", n - 1);
            nominal = 2;
        }
        (Family::C, GeomFamily::C4i { a, b: bb }) | (Family::D, GeomFamily::C4i { a, b: bb }) => {
            let ok = n == 2 * a * bb && a >= 1 && bb >= 2 && (af == Family::C || a > bb);
            if !ok {
                return Err(invalid(format!(
                    "C4(i) in {ambient}: need n = 2ab, b >= 2 (and a > b for D); a={a}, b={bb}"
                )));
            }
            let f1 = b.factor(lie(af, a)?);
            let f2 = b.factor(lie(Family::D, bb)?);
            for k in 0..n {
                let mut v = b.zero();
                let j = k / (2 * a);
                let r = k % (2 * a);
                if r < a {
                    v[b.eps(f1, r)] += q(1);
                } else {
                    v[b.eps(f1, 2 * a - 1 - r)] -= q(1);
                }
                v[b.eps(f2, j)] += q(1);
                imgs.push(v);
            }
            gens.push(vec![Generator::Flip(Block::Factor(f2))]);
            if af == Family::D {
                gens.push(vec![Generator::Flip(Block::Factor(f1))]);
                label = format!("D{a}D{bb}.2^2");
                nominal = 4;
            } else {
                label = format!("C{a}D{bb}.2");
                nominal = 2;
            }
            existence.p = PRequirement::NotTwo;
        }
        (_, GeomFamily::C4ii { sub, l, t }) => {
            let base = natural_dim(sub, l);
            let ok = t >= 2
                && l >= 1
                && match (af, sub) {
                    (Family::A, Family::A) => l >= 2,
                    (Family::B, Family::B) => true,
                    (Family::C, Family::C) => t >= 3 && t % 2 == 1,
                    (Family::D, Family::C) => true,
                    (Family::D, Family::D) => l >= 3,
                    _ => false,
                }
                && (base as u128).checked_pow(t as u32) == Some(natural_dim(af, n) as u128);
            if !ok {
                return Err(invalid(format!(
                    "C4(ii) X={sub:?}, l={l}, t={t} does not fit {ambient}"
                )));
            }
            let fs: Vec<usize> = (0..t).map(|_| b.factor(lie(sub, l).unwrap())).collect();
            for k in 0..d {
                let mut v = b.zero();
                let (idx, sign) = natural_weight(af, n, k).expect("ε index has a natural weight");
                debug_assert_eq!((idx, sign), (k, 1));
                let mut rest = k;
                for &f in &fs {
                    let r = rest % base;
                    rest /= base;
                    if let Some((j, s)) = natural_weight(sub, l, r) {
                        v[b.eps(f, j)] += q(s);
                    }
                }
                imgs.push(v);
            }
            for i in 0..t - 1 {
                gens.push(vec![Generator::Swap(Block::Factor(fs[i]), Block::Factor(fs[i + 1]))]);
            }
            nominal = match (af, sub) {
                (Family::D, Family::D) => {
                    for &f in &fs {
                        gens.push(vec![Generator::Flip(Block::Factor(f))]);
                    }
                    (1u64 << t) * fact(t)
                }
                _ => fact(t),
            };
            existence.p = match (af, sub) {
                (Family::C, _) | (Family::D, Family::D) => PRequirement::NotTwo,
                (Family::D, Family::C) if t % 2 == 1 => PRequirement::Two,
                _ => PRequirement::Any,
            };
            label = match (af, sub) {
                (Family::D, Family::D) => format!("(D{l}^{t}.2^{t}).S{t}"),
                _ => format!("{}{l}^{t}.S{t}", sub.letter()),
            };
        }
        (Family::A, GeomFamily::C6) => {
            if n.is_multiple_of(2) || n < 3 {
                return Err(invalid(format!("D_m.2 in A{n} needs n = 2m-1 >= 3")));
            }
            let m = n.div_ceil(2);
            let f = b.factor(lie(Family::D, m)?);
            for k in 0..d {
                let mut v = b.zero();
                if k < m {
                    v[b.eps(f, k)] = q(1);
                } else {
                    v[b.eps(f, 2 * m - 1 - k)] = q(-1);
                }
                imgs.push(v);
            }
            gens.push(vec![Generator::Flip(Block::Factor(f))]);
            existence.p = PRequirement::NotTwo;
            label = format!("D{m}.2");
            nominal = 2;
        }
        (Family::C, GeomFamily::C6) => {
            let f = b.factor(lie(Family::D, n)?);
            for k in 0..n {
                let mut v = b.zero();
                v[b.eps(f, k)] = q(1);
                imgs.push(v);
            }
            gens.push(vec![Generator::Flip(Block::Factor(f))]);
            existence.p = PRequirement::Two;
            label = format!("D{n}.2");
            nominal = 2;
        }
        _ => {
            return Err(invalid(format!("family {family} does not occur in {ambient}")));
        }
    }
    if af == Family::B {
        existence.notes.push("p = 2 is excluded for B_n".into());
        if existence.p == PRequirement::Any {
            existence.p = PRequirement::NotTwo;
        }
    }
    b.images = imgs;
    finish(ambient, family, b, gens, existence, label, nominal)
}

fn dname(l: usize) -> String {
    if l == 1 {
        "T1".into()
    } else {
        format!("D{l}")
    }
}

fn place(b: &EpsBuilder, v: &mut [Q], blk: Block, j: usize, sign: i64) {
    match blk {
        Block::Factor(f) => v[b.eps(f, j)] += q(sign),
        Block::Charge(s) => v[b.slot(s)] += q(sign),
    }
}

/// Elementary pieces of a component-group generator.
#[derive(Clone, Copy, Debug)]
enum Generator {
    Swap(Block, Block),
    Flip(Block),
    /// Effect of swapping blocks i, i+1 on the A-type charge differences.
    ATorusSwap {
        t: usize,
        i: usize,
    },
}

/// Map an ε-space image to H⁰ coordinates (rational charges unscaled).
fn eps_image_to_h(b: &EpsBuilder, x: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut ss = Vec::new();
    for (f, t) in b.factors.iter().enumerate() {
        let o = b.offsets[f];
        ss.extend(t.eps_to_weight(&x[o..o + t.eps_dim()]));
    }
    (ss, x[b.eps_len..].to_vec())
}

fn apply_eps(b: &EpsBuilder, x: &[Q]) -> Vec<Q> {
    let mut out = b.zero();
    for (k, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(&b.images[k]) {
            *o += c * y;
        }
    }
    out
}

fn finish(
    ambient: LieType,
    family: GeomFamily,
    b: EpsBuilder,
    gens: Vec<Vec<Generator>>,
    existence: Existence,
    label: String,
    nominal: u64,
) -> Result<Embedding> {
    let n = ambient.rank;
    let mut cols_ss: Vec<Vec<Q>> = Vec::with_capacity(n);
    let mut cols_t: Vec<Vec<Q>> = Vec::with_capacity(n);
    for j in 1..=n {
        let (ss, t) = eps_image_to_h(&b, &apply_eps(&b, &ambient.fundamental_eps(j)));
        cols_ss.push(ss);
        cols_t.push(t);
    }
    let mut scale = BigInt::one();
    for c in cols_t.iter().flatten() {
        scale = scale.lcm(c.denom());
    }
    let scale_q = Q::from_integer(scale.clone());
    let charge_scale = scale.to_i64().unwrap();
    let to_int = |x: &Q| -> Result<i64> {
        if !x.is_integer() {
            return Err(Error::Precondition(format!("non-integral restriction coefficient {x}")));
        }
        Ok(x.to_integer().to_i64().unwrap())
    };
    let ss_dim: usize = b.factors.iter().map(|t| t.rank).sum();
    let h_dim = ss_dim + b.torus;
    let mut restriction = vec![vec![0i64; n]; h_dim];
    for j in 0..n {
        for (r, x) in cols_ss[j].iter().enumerate() {
            restriction[r][j] = to_int(x)?;
        }
        for (s, x) in cols_t[j].iter().enumerate() {
            restriction[ss_dim + s][j] = to_int(&(x * &scale_q))?;
        }
    }
    let mut simple_root_images = Vec::with_capacity(n);
    for root in ambient.simple_roots_eps() {
        let x: Vec<Q> = root.iter().map(|&c| q(c)).collect();
        let (ss, t) = eps_image_to_h(&b, &apply_eps(&b, &x));
        let mut v = Vec::with_capacity(h_dim);
        for x in &ss {
            v.push(to_int(x)?);
        }
        for x in &t {
            v.push(to_int(&(x * &scale_q))?);
        }
        simple_root_images.push(v);
    }
    // Coordinate ranges for blocks and the component-group matrices.
    let mut off = Vec::new();
    let mut o = 0;
    for t in &b.factors {
        off.push(o);
        o += t.rank;
    }
    let identity =
        |m: usize| -> Vec<Vec<i64>> { (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect() };
    let range = |blk: Block| -> (usize, usize) {
        match blk {
            Block::Factor(f) => (off[f], b.factors[f].rank),
            Block::Charge(s) => (ss_dim + s, 1),
        }
    };
    let mut generators = Vec::new();
    for g in &gens {
        let mut m = identity(h_dim);
        for piece in g {
            let mut e = identity(h_dim);
            match *piece {
                Generator::Swap(x, y) => {
                    let (ox, len) = range(x);
                    let (oy, _) = range(y);
                    for i in 0..len {
                        e[ox + i][ox + i] = 0;
                        e[oy + i][oy + i] = 0;
                        e[ox + i][oy + i] = 1;
                        e[oy + i][ox + i] = 1;
                    }
                }
                Generator::Flip(Block::Charge(s)) => e[ss_dim + s][ss_dim + s] = -1,
                Generator::Flip(Block::Factor(f)) => {
                    let t = b.factors[f];
                    let o = off[f];
                    let r = t.rank;
                    let perm: Vec<usize> = match t.family {
                        Family::A => (0..r).rev().collect(),
                        Family::D => {
                            let mut p: Vec<usize> = (0..r).collect();
                            p.swap(r - 2, r - 1);
                            p
                        }
                        _ => (0..r).collect(),
                    };
                    for i in 0..r {
                        e[o + i][o + i] = 0;
                    }
                    for (i, &pi) in perm.iter().enumerate() {
                        e[o + pi][o + i] = 1;
                    }
                }
                Generator::ATorusSwap { t, i } => {
                    let base = ss_dim + b.torus - (t - 1);
                    if i + 2 < t {
                        e[base + i][base + i] = 0;
                        e[base + i + 1][base + i + 1] = 0;
                        e[base + i][base + i + 1] = 1;
                        e[base + i + 1][base + i] = 1;
                    } else {
                        for jj in 0..t - 1 {
                            e[base + jj][base + i] = -1;
                        }
                        e[base + i][base + i] = -1;
                    }
                }
            }
            m = mat_mul(&e, &m);
        }
        generators.push(m);
    }
    let product = ProductSystem {
        factors: b.factors.iter().map(|&t| factor_root_system(t)).collect(),
        torus_rank: b.torus,
    };
    Ok(Embedding {
        ambient,
        family,
        factors: b.factors,
        torus_rank: b.torus,
        charge_scale,
        restriction,
        simple_root_images,
        action: ComponentAction {
            generators,
            nominal_order: nominal,
        },
        existence,
        label,
        product,
    })
}

impl Embedding {
    /// Number of H⁰ coordinates (factor ranks plus charges).
    pub fn h_dim(&self) -> usize {
        self.restriction.len()
    }

    pub fn semisimple_dim(&self) -> usize {
        self.h_dim() - self.torus_rank
    }

    /// Offsets of the factor coordinate blocks.
    pub fn offsets(&self) -> Vec<usize> {
        self.product.offsets()
    }

    /// Format an H⁰ weight as `ω(i,j)` terms followed by the charges.
    pub fn format_h0(&self, w: &[i64]) -> String {
        let off = self.offsets();
        let mut terms = Vec::new();
        for (f, t) in self.factors.iter().enumerate() {
            for j in 0..t.rank {
                let c = w[off[f] + j];
                if c != 0 {
                    let coef = if c == 1 { String::new() } else { c.to_string() };
                    terms.push(format!("{coef}ω({},{})", f + 1, j + 1));
                }
            }
        }
        let mut s = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        };
        if self.torus_rank > 0 {
            let ch: Vec<String> = w[self.semisimple_dim()..]
                .iter()
                .map(|&c| {
                    let r = Q::new(BigInt::from(c), BigInt::from(self.charge_scale));
                    r.to_string()
                })
                .collect();
            s.push_str(&format!(" [T:{}]", ch.join(",")));
        }
        s
    }
}

/// Image of an ambient weight in H⁰ coordinates.
pub fn restrict_weight(e: &Embedding, w: &Weight) -> Vec<i64> {
    mat_vec(&e.restriction, &w.coeffs)
}

/// Restriction into a caller-provided buffer.
pub(crate) fn restrict_into(e: &Embedding, w: &[i64], out: &mut [i64]) {
    for (o, row) in out.iter_mut().zip(&e.restriction) {
        *o = row.iter().zip(w).map(|(a, b)| a * b).sum();
    }
}

/// Orbit of an H⁰ weight under the component group, sorted.
pub fn component_orbit(action: &ComponentAction, hw: &[i64]) -> Vec<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    seen.insert(hw.to_vec());
    let mut stack = vec![hw.to_vec()];
    while let Some(v) = stack.pop() {
        for g in &action.generators {
            let w = mat_vec(g, &v);
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// Sum of all fundamental-weight coefficients of the semisimple part.
pub fn h_value(e: &Embedding, hw: &[i64]) -> i64 {
    hw[..e.semisimple_dim()].iter().sum()
}

/// Root coordinates (numerators, common denominator) of the semisimple part.
fn factor_root_coords(e: &Embedding, w: &[i64]) -> Vec<Q> {
    let off = e.offsets();
    let mut out = Vec::with_capacity(e.semisimple_dim());
    for (f, rs) in e.product.factors.iter().enumerate() {
        let part = &w[off[f]..off[f + 1]];
        let den = BigInt::from(rs.root_coord_den());
        out.extend(
            rs.root_coords_num(part)
                .into_iter()
                .map(|x| Q::new(BigInt::from(x), den.clone())),
        );
    }
    out
}

/// The ℓ-invariant of a tensor-decomposition subgroup:
/// ℓ_j is the total coefficient of β_{·,j} in μ_h − λ_h; `sigma` permutes
/// the factors of λ_h and μ_h − σ(λ_h) must lie in the factor root lattice.
pub fn ell_value(e: &Embedding, mu_h: &[i64], lambda_h: &[i64], sigma: &[usize]) -> Result<EllValue> {
    let t = e.factors.len();
    if t == 0 || e.factors.iter().any(|f| *f != e.factors[0]) || sigma.len() != t {
        return Err(Error::Precondition(
            "ℓ needs t isomorphic factors and a permutation of them".into(),
        ));
    }
    let l = e.factors[0].rank;
    let mut sl = lambda_h.to_vec();
    for i in 0..t {
        for j in 0..l {
            sl[sigma[i] * l + j] = lambda_h[i * l + j];
        }
    }
    let diff_s: Vec<i64> = mu_h.iter().zip(&sl).map(|(a, b)| a - b).collect();
    if factor_root_coords(e, &diff_s).iter().any(|c| !c.is_integer()) {
        return Err(Error::Precondition(
            "μ_h − σ(λ_h) is not in the factor root lattice".into(),
        ));
    }
    let diff: Vec<i64> = mu_h.iter().zip(lambda_h).map(|(a, b)| a - b).collect();
    let rc = factor_root_coords(e, &diff);
    let mut per_j = vec![Q::zero(); l];
    for i in 0..t {
        for j in 0..l {
            per_j[j] += &rc[i * l + j];
        }
    }
    let total = per_j.iter().fold(Q::zero(), |a, b| a + b);
    Ok(EllValue { total, per_j })
}

fn divisors_pow(target: usize, base_of: impl Fn(usize) -> usize, min_l: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for l in min_l..=target {
        let bse = base_of(l);
        if bse < 2 || bse > target {
            continue;
        }
        let mut pow = bse;
        let mut t = 1;
        while pow < target {
            pow = pow.saturating_mul(bse);
            t += 1;
        }
        if pow == target && t >= 2 {
            out.push((l, t));
        }
    }
    out
}

/// Every family with valid structural parameters in the ambient group.
pub fn family_instances(ambient: LieType) -> Vec<GeomFamily> {
    let n = ambient.rank;
    let mut out = Vec::new();
    match ambient.family {
        Family::A => {
            for t in 2..=n + 1 {
                if (n + 1).is_multiple_of(t) {
                    out.push(GeomFamily::C2 {
                        sub: Family::A,
                        l: (n + 1) / t - 1,
                        t,
                    });
                }
            }
            for (l, t) in divisors_pow(n + 1, |l| l + 1, 2) {
                out.push(GeomFamily::C4ii { sub: Family::A, l, t });
            }
            if n >= 3 && n % 2 == 1 {
                out.push(GeomFamily::C6);
            }
        }
        Family::B => {
            out.push(GeomFamily::C1Dn);
            for l in 1..n {
                out.push(GeomFamily::C1 { l });
            }
            for t in (3..=2 * n + 1).step_by(2) {
                if (2 * n + 1).is_multiple_of(t) && (2 * n + 1) / t >= 3 {
                    out.push(GeomFamily::C2 {
                        sub: Family::B,
                        l: ((2 * n + 1) / t - 1) / 2,
                        t,
                    });
                }
            }
            for (l, t) in divisors_pow(2 * n + 1, |l| 2 * l + 1, 1) {
                out.push(GeomFamily::C4ii { sub: Family::B, l, t });
            }
        }
        Family::C => {
            for t in 2..=n {
                if n.is_multiple_of(t) {
                    out.push(GeomFamily::C2 {
                        sub: Family::C,
                        l: n / t,
                        t,
                    });
                }
            }
            out.push(GeomFamily::C3);
            for b in 2..=n {
                if n.is_multiple_of(2 * b) {
                    out.push(GeomFamily::C4i { a: n / (2 * b), b });
                }
            }
            for (l, t) in divisors_pow(2 * n, |l| 2 * l, 1) {
                if t >= 3 && t % 2 == 1 {
                    out.push(GeomFamily::C4ii { sub: Family::C, l, t });
                }
            }
            out.push(GeomFamily::C6);
        }
        Family::D => {
            for l in 1..n {
                if 2 * l < n {
                    out.push(GeomFamily::C1 { l });
                }
            }
            for t in (2..=2 * n).step_by(2) {
                if (2 * n).is_multiple_of(t) && (2 * n) / t >= 3 && ((2 * n) / t) % 2 == 1 {
                    out.push(GeomFamily::C2 {
                        sub: Family::B,
                        l: ((2 * n) / t - 1) / 2,
                        t,
                    });
                }
            }
            for t in 2..=n {
                if n.is_multiple_of(t) {
                    out.push(GeomFamily::C2 {
                        sub: Family::D,
                        l: n / t,
                        t,
                    });
                }
            }
            out.push(GeomFamily::C3);
            for b in 2..=n {
                if n.is_multiple_of(2 * b) && n / (2 * b) > b {
                    out.push(GeomFamily::C4i { a: n / (2 * b), b });
                }
            }
            for (l, t) in divisors_pow(2 * n, |l| 2 * l, 1) {
                out.push(GeomFamily::C4ii { sub: Family::C, l, t });
                if l >= 3 {
                    out.push(GeomFamily::C4ii { sub: Family::D, l, t });
                }
            }
        }
    }
    out
}

/// Size of the Weyl group orbit of an H⁰-dominant weight under H⁰.
pub fn h0_orbit_size(e: &Embedding, hw: &[i64]) -> BigUint {
    let off = e.offsets();
    let mut acc = BigUint::one();
    for (f, rs) in e.product.factors.iter().enumerate() {
        let part = Weight::new(hw[off[f]..off[f + 1]].to_vec());
        acc *= crate::weylgroup::orbit_size(rs, &part).orbit_size;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(f: Family, n: usize) -> LieType {
        LieType::new(f, n).unwrap()
    }

    #[test]
    fn b_spin_to_dn() {
        let e = build_embedding(amb(Family::B, 4), GeomFamily::C1Dn).unwrap();
        assert_eq!(restrict_weight(&e, &Weight::fundamental(4, 4)), vec![0, 0, 0, 1]);
        assert_eq!(restrict_weight(&e, &Weight::fundamental(4, 3)), vec![0, 0, 1, 1]);
    }

    #[test]
    fn a5_middle_to_d3() {
        let e = build_embedding(amb(Family::A, 5), GeomFamily::C6).unwrap();
        assert_eq!(restrict_weight(&e, &Weight::fundamental(5, 3)), vec![0, 0, 2]);
    }

    #[test]
    fn c4_tensor_c1_cubed() {
        let e = build_embedding(
            amb(Family::C, 4),
            GeomFamily::C4ii {
                sub: Family::C,
                l: 1,
                t: 3,
            },
        )
        .unwrap();
        assert_eq!(restrict_weight(&e, &Weight::fundamental(4, 2)), vec![0, 2, 2]);
        assert_eq!(restrict_weight(&e, &Weight::fundamental(4, 3)), vec![1, 1, 3]);
    }
}
