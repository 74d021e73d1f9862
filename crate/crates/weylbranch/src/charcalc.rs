//! Characters and dimensions.
//!
//! Freudenthal's recursion over dominant weights, Weyl's dimension formula,
//! the closed-form dimensions of small irreducible modules in positive
//! characteristic, the congruence rules for special multiplicities, Levi
//! reduction and the Weyl-character subtraction used for branching.

use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{Family, LieType, RootSystem, Weight};
use crate::weylgroup::{dominate_in_place, orbit_size};

/// Characteristic of the ground field (0 or a prime).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Characteristic {
    pub p: u64,
}

impl Characteristic {
    pub fn new(p: u64) -> Result<Characteristic> {
        if p != 0 && !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not 0 or a prime")));
        }
        Ok(Characteristic { p })
    }

    pub fn zero() -> Characteristic {
        Characteristic { p: 0 }
    }

    /// p divides x, reading p = 0 as "x = 0".
    pub fn divides(&self, x: i64) -> bool {
        if self.p == 0 {
            x == 0
        } else {
            x.rem_euclid(self.p as i64) == 0
        }
    }

    /// x ≡ y (mod p), reading p = 0 as equality.
    pub fn congruent(&self, x: i64, y: i64) -> bool {
        self.divides(x - y)
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Dominant-weight multiplicities of a Weyl module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub highest_weight: Weight,
    pub entries: BTreeMap<Weight, BigUint>,
    pub total_dim: BigUint,
}

impl CharacterTable {
    /// Multiplicity of an arbitrary weight (looked up through its dominant representative).
    pub fn multiplicity(&self, rs: &RootSystem, w: &Weight) -> BigUint {
        let mut v = w.coeffs.clone();
        dominate_in_place(rs, &mut v);
        self.entries.get(&Weight::new(v)).cloned().unwrap_or_default()
    }
}

fn require_dominant(rs: &RootSystem, w: &Weight) -> Result<()> {
    if w.rank() != rs.rank() {
        return Err(Error::LengthMismatch {
            expected: rs.rank(),
            got: w.rank(),
        });
    }
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.coeffs.clone()));
    }
    Ok(())
}

/// All dominant weights under λ, sorted by height of λ − μ and then
/// lexicographically (descending).
pub fn saturate(rs: &RootSystem, lambda: &Weight) -> Result<Vec<Weight>> {
    require_dominant(rs, lambda)?;
    let roots = rs.positive_roots_weight();
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    seen.insert(lambda.coeffs.clone(), ());
    let mut queue = vec![lambda.coeffs.clone()];
    let mut k = 0;
    while k < queue.len() {
        let nu = queue[k].clone();
        k += 1;
        for a in roots {
            let next: Vec<i64> = nu.iter().zip(a).map(|(x, y)| x - y).collect();
            if next.iter().all(|&c| c >= 0) && !seen.contains_key(&next) {
                seen.insert(next.clone(), ());
                queue.push(next);
            }
        }
    }
    let mut out: Vec<(i64, Vec<i64>)> = queue
        .into_iter()
        .map(|mu| {
            let diff: Vec<i64> = lambda.coeffs.iter().zip(&mu).map(|(a, b)| a - b).collect();
            (rs.height_num(&diff), mu)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
    Ok(out.into_iter().map(|(_, w)| Weight::new(w)).collect())
}

/// Freudenthal's multiplicity recursion
/// ((λ+ρ,λ+ρ) − (μ+ρ,μ+ρ)) m(μ) = 2 Σ_{α>0} Σ_{i≥1} (μ+iα, α) m(μ+iα),
/// run over dominant weights in increasing height of λ − μ.
pub fn freudenthal(rs: &RootSystem, lambda: &Weight) -> Result<CharacterTable> {
    let order = saturate(rs, lambda)?;
    let n = rs.rank();
    let index: HashMap<Vec<i64>, usize> = order.iter().enumerate().map(|(i, w)| (w.coeffs.clone(), i)).collect();
    let roots = rs.positive_roots_weight();
    let shift = |w: &[i64]| -> Vec<i64> { w.iter().map(|c| c + 1).collect() };
    let lr = shift(&lambda.coeffs);
    let top = rs.inner_scaled(&lr, &lr);
    let mut mult: Vec<BigInt> = vec![BigInt::zero(); order.len()];
    mult[0] = BigInt::one();
    let mut buf = vec![0i64; n];
    for idx in 1..order.len() {
        let mu = &order[idx].coeffs;
        let mr = shift(mu);
        let den = top - rs.inner_scaled(&mr, &mr);
        let mut num = BigInt::zero();
        for a in roots {
            let mut cur = mu.clone();
            loop {
                for (c, d) in cur.iter_mut().zip(a) {
                    *c += d;
                }
                buf.copy_from_slice(&cur);
                dominate_in_place(rs, &mut buf);
                match index.get(&buf) {
                    Some(&j) => {
                        let ip = rs.inner_scaled(&cur, a);
                        num += &mult[j] * BigInt::from(ip);
                    }
                    None => break,
                }
            }
        }
        num *= 2;
        let d = BigInt::from(den);
        let (qv, r) = num.div_rem(&d);
        debug_assert!(r.is_zero(), "Freudenthal division not exact");
        mult[idx] = qv;
    }
    let mut entries = BTreeMap::new();
    let mut total = BigUint::zero();
    for (w, m) in order.into_iter().zip(mult) {
        let m = m.to_biguint().expect("negative multiplicity");
        total += &m * orbit_size(rs, &w).orbit_size;
        entries.insert(w, m);
    }
    Ok(CharacterTable {
        highest_weight: lambda.clone(),
        entries,
        total_dim: total,
    })
}

/// Weyl's dimension formula Π_{α>0} ⟨λ+ρ, α⟩ / ⟨ρ, α⟩.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<BigUint> {
    require_dominant(rs, lambda)?;
    let lr: Vec<i64> = lambda.coeffs.iter().map(|c| c + 1).collect();
    let rho = &rs.rho.coeffs;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 0..rs.positive_roots.len() {
        num *= rs.coroot_pairing(&lr, k) as u64;
        den *= rs.coroot_pairing(rho, k) as u64;
    }
    Ok(num / den)
}

/// True iff p = 0 or p > e(G); then L(λ) and W(λ) share their weight set.
pub fn premet_applies(rs: &RootSystem, chi: Characteristic) -> bool {
    chi.p == 0 || chi.p > rs.e_g as u64
}

/// Multiplicity of λ − dα_i (i is 1-based), which is 1 for 1 ≤ d ≤ a_i.
pub fn chain_multiplicity(lambda: &Weight, i: usize, d: i64) -> Result<u32> {
    let a = *lambda
        .coeffs
        .get(i.wrapping_sub(1))
        .ok_or_else(|| Error::Precondition(format!("index {i} out of range")))?;
    if d < 1 || d > a {
        return Err(Error::Precondition(format!("need 1 <= d <= a_i, got d={d}, a_i={a}")));
    }
    Ok(1)
}

/// Relative length of two adjacent simple roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthCase {
    Equal,
    Double,
    Triple,
}

/// Multiplicity of λ − α − β for adjacent simple roots with ⟨λ,α⟩ = c,
/// ⟨λ,β⟩ = d; here α is the longer root in the unequal cases.
pub fn mult_rule_118(c: i64, d: i64, case: LengthCase, chi: Characteristic) -> Result<u32> {
    if c <= 0 || d <= 0 {
        return Err(Error::Precondition("c and d must be positive".into()));
    }
    if chi.p == 0 {
        return Ok(2);
    }
    let one = match case {
        LengthCase::Equal => c + d == chi.p as i64 - 1,
        LengthCase::Double => chi.divides(2 * c + d + 2),
        LengthCase::Triple => chi.divides(3 * c + d + 3),
    };
    Ok(if one { 1 } else { 2 })
}

/// A_n, λ = aλ_i + bλ_j, μ = λ − (α_r + … + α_s) with r ≤ i < j ≤ s.
pub fn mult_rule_s816(a: i64, b: i64, i: usize, j: usize, chi: Characteristic) -> Result<i64> {
    if !(i < j) || a <= 0 || b <= 0 {
        return Err(Error::Precondition("need i < j and a, b > 0".into()));
    }
    let span = (j - i) as i64;
    Ok(if chi.p != 0 && chi.divides(a + b + span) {
        span
    } else {
        span + 1
    })
}

/// B_n, λ = λ_1 + λ_n, μ = λ_n.
pub fn mult_rule_bwt(n: usize, chi: Characteristic) -> Result<i64> {
    if chi.p == 2 {
        return Err(Error::Precondition("p = 2 is excluded".into()));
    }
    let n = n as i64;
    Ok(if chi.p != 0 && chi.divides(2 * n + 1) { n - 1 } else { n })
}

/// C_n, λ = λ_{n−1} + aλ_n with 2a+3 ≡ 0 (mod p): μ = λ − α_{n−2} − 2α_{n−1} − α_n has m = 1.
pub fn mult_rule_c2l3(a: i64, chi: Characteristic) -> Result<i64> {
    if chi.p == 0 || a < 0 || a as u64 >= chi.p || !chi.divides(2 * a + 3) {
        return Err(Error::Precondition(format!(
            "need 0 <= a < p and 2a+3 = 0 mod p (a={a}, p={})",
            chi.p
        )));
    }
    Ok(1)
}

/// Outcome of a dimension query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimResult {
    /// A closed form valid in the given characteristic.
    Exact {
        value: BigUint,
        rule: String,
    },
    /// Weyl's formula at p = 0 (where it is the irreducible dimension).
    WeylAtP0(BigUint),
    Unknown,
}

impl DimResult {
    /// The dimension when it is known.
    pub fn value(&self) -> Option<&BigUint> {
        match self {
            DimResult::Exact { value, .. } => Some(value),
            DimResult::WeylAtP0(v) => Some(v),
            DimResult::Unknown => None,
        }
    }
}

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn big(x: i64) -> BigUint {
    BigUint::from(x as u64)
}

/// Closed forms for the small modules of the dimension table.
fn table_dim(t: LieType, w: &[i64], chi: Characteristic) -> Option<(BigUint, String)> {
    let n = t.rank;
    let ni = n as i64;
    let p = chi.p;
    let only = |idx: &[usize], vals: &[i64]| -> bool {
        w.iter()
            .enumerate()
            .all(|(k, &c)| match idx.iter().position(|&i| i == k + 1) {
                Some(pos) => c == vals[pos],
                None => c == 0,
            })
    };
    let pow2 = |e: usize| BigUint::one() << e;
    match t.family {
        Family::A => {
            for idx in [1, n] {
                let a = w[idx - 1];
                if a > 0 && only(&[idx], &[a]) && (p == 0 || (a as u64) < p) {
                    return Some((binom((n as u64) + a as u64, a as u64), "A: (n+a)!/(n!a!)".into()));
                }
            }
            None
        }
        Family::B => {
            if p == 2 {
                return None;
            }
            let d = chi.p != 0 && chi.divides(2 * ni + 1);
            if only(&[1], &[2]) && (p == 0 || p > 2) {
                let v = ni * (2 * ni + 3) - if d { 1 } else { 0 };
                return Some((big(v), "B: 2λ1".into()));
            }
            if n == 2 && only(&[2], &[1]) {
                return Some((big(4), "B: λ2 (n=2)".into()));
            }
            if only(&[2], &[1]) {
                return Some((big(ni * (2 * ni + 1)), "B: λ2".into()));
            }
            if only(&[n], &[1]) {
                return Some((pow2(n), "B: λn".into()));
            }
            if only(&[1, n], &[1, 1]) {
                let v = if d {
                    pow2(n) * big(2 * ni - 1)
                } else {
                    pow2(n + 1) * big(ni)
                };
                return Some((v, "B: λ1+λn".into()));
            }
            None
        }
        Family::C => {
            if only(&[1], &[2]) {
                let v = if p == 2 { 2 * ni } else { ni * (2 * ni + 1) };
                return Some((big(v), "C: 2λ1".into()));
            }
            if only(&[2], &[1]) {
                let base = (ni - 1) * (2 * ni + 1);
                let v = if chi.p != 0 && chi.divides(ni) { base - 1 } else { base };
                return Some((big(v), "C: λ2".into()));
            }
            if p >= 3 && only(&[n - 1, n], &[1, (p as i64 - 3) / 2]) {
                let v = (BigUint::from(p).pow(n as u32) - 1u32) / 2u32;
                return Some((v, "C: λ(n-1)+((p-3)/2)λn".into()));
            }
            None
        }
        Family::D => {
            if only(&[1], &[2]) {
                let base = (ni + 1) * (2 * ni - 1);
                let v = if p == 2 {
                    2 * ni
                } else if chi.p != 0 && chi.divides(ni) {
                    base - 1
                } else {
                    base
                };
                return Some((big(v), "D: 2λ1".into()));
            }
            for idx in [n - 1, n] {
                if only(&[idx], &[1]) {
                    return Some((pow2(n - 1), "D: λ(n-1), λn".into()));
                }
            }
            if n >= 4 && only(&[2], &[1]) {
                let base = ni * (2 * ni - 1);
                let v = match (p, n % 2) {
                    (2, 0) => base - 2,
                    (2, _) => base - 1,
                    _ => base,
                };
                return Some((big(v), "D: λ2".into()));
            }
            for idx in [n - 1, n] {
                if only(&[idx], &[2]) {
                    let v = if p == 2 {
                        pow2(n - 1)
                    } else {
                        binom(2 * n as u64, n as u64) / 2u32
                    };
                    return Some((v, "D: 2λ(n-1), 2λn".into()));
                }
            }
            for idx in [n - 1, n] {
                if only(&[1, idx], &[1, 1]) {
                    let v = if chi.p != 0 && chi.divides(ni) {
                        pow2(n) * big(ni - 1)
                    } else {
                        pow2(n - 1) * big(2 * ni - 1)
                    };
                    return Some((v, "D: λ1+λ(n-1), λ1+λn".into()));
                }
            }
            None
        }
    }
}

/// Dimension of L_G(λ) in characteristic p.
///
/// Closed forms from the dimension table are tried first (including the
/// Frobenius-twisted lines 2λ_1 and 2λ_{n±} at p = 2). Minimal weights give
/// the Weyl dimension in every characteristic. Otherwise the Weyl dimension
/// is returned at p = 0 and `Unknown` at p > 0.
pub fn irr_dim(rs: &RootSystem, lambda: &Weight, chi: Characteristic) -> Result<DimResult> {
    require_dominant(rs, lambda)?;
    if lambda.is_zero() {
        return Ok(DimResult::Exact {
            value: BigUint::one(),
            rule: "trivial".into(),
        });
    }
    if let Some(t) = rs.lie_type {
        if let Some((value, rule)) = table_dim(t, &lambda.coeffs, chi) {
            return Ok(DimResult::Exact { value, rule });
        }
    }
    if !lambda.is_restricted(chi.p) {
        return Err(Error::NotRestricted {
            weight: lambda.coeffs.clone(),
            p: chi.p,
        });
    }
    if let Some(t) = rs.lie_type {
        if crate::rootsys::minimal_weights(t).contains(lambda) {
            return Ok(DimResult::Exact {
                value: weyl_dim(rs, lambda)?,
                rule: "minimal weight".into(),
            });
        }
    }
    if chi.p == 0 {
        return Ok(DimResult::WeylAtP0(weyl_dim(rs, lambda)?));
    }
    Ok(DimResult::Unknown)
}

/// Dimension of an irreducible module for a subgroup factor, allowing
/// non-restricted weights through Steinberg's tensor product theorem.
/// B_1 and C_1 are treated as A_1, and D_2 as A_1 × A_1.
pub fn factor_irr_dim(t: LieType, w: &[i64], chi: Characteristic) -> Option<BigUint> {
    if chi.p != 0 && w.iter().any(|&c| c as u64 >= chi.p) {
        let p = chi.p as i64;
        let mut rest = w.to_vec();
        let mut acc = BigUint::one();
        while rest.iter().any(|&c| c != 0) {
            let digit: Vec<i64> = rest.iter().map(|c| c % p).collect();
            acc *= factor_irr_dim(t, &digit, chi)?;
            rest.iter_mut().for_each(|c| *c /= p);
        }
        return Some(acc);
    }
    let a1 = LieType {
        family: Family::A,
        rank: 1,
    };
    let (types, parts): (Vec<LieType>, Vec<Vec<i64>>) = match (t.family, t.rank) {
        (Family::B, 1) | (Family::C, 1) => (vec![a1], vec![w.to_vec()]),
        (Family::D, 2) => (vec![a1, a1], vec![vec![w[0]], vec![w[1]]]),
        _ => (vec![t], vec![w.to_vec()]),
    };
    let mut acc = BigUint::one();
    for (t, part) in types.iter().zip(parts) {
        let rs = crate::rootsys::build_root_system(*t);
        acc *= irr_dim(&rs, &Weight::new(part), chi).ok()?.value()?.clone();
    }
    Some(acc)
}

/// The Levi instance that carries the multiplicity of μ in L(λ).
pub fn levi_reduce(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<(RootSystem, Weight, Weight)> {
    let diff = lambda.sub(mu);
    let coords = rs.weight_to_root_coords(&diff)?;
    let ints = coords
        .to_ints()
        .filter(|v| v.iter().all(|&c| c >= 0))
        .ok_or_else(|| Error::Precondition("λ − μ is not a non-negative sum of simple roots".into()))?;
    let support: Vec<usize> = (0..rs.rank()).filter(|&i| ints[i] > 0).collect();
    let sub = rs.levi(&support);
    let pick = |w: &Weight| Weight::new(support.iter().map(|&i| w.coeffs[i]).collect());
    Ok((sub, pick(lambda), pick(mu)))
}

type TableKey = (String, Vec<i64>);

/// Process-wide memo of Freudenthal tables, keyed by root-system label and highest weight.
pub struct TableCache {
    map: RwLock<HashMap<TableKey, Arc<CharacterTable>>>,
}

impl TableCache {
    pub fn global() -> &'static TableCache {
        static CACHE: OnceLock<TableCache> = OnceLock::new();
        CACHE.get_or_init(|| TableCache {
            map: RwLock::new(HashMap::new()),
        })
    }

    pub fn get(&self, rs: &RootSystem, lambda: &[i64]) -> Result<Arc<CharacterTable>> {
        let key = (rs.label.clone(), lambda.to_vec());
        if let Some(t) = self.map.read().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(freudenthal(rs, &Weight::new(lambda.to_vec()))?);
        self.map.write().unwrap().insert(key, t.clone());
        Ok(t)
    }
}

/// A product of root systems with a central torus; weights are laid out as
/// the concatenated factor coordinates followed by `torus_rank` charges.
#[derive(Clone, Debug)]
pub struct ProductSystem {
    pub factors: Vec<RootSystem>,
    pub torus_rank: usize,
}

impl ProductSystem {
    pub fn offsets(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.factors.len() + 1);
        let mut o = 0;
        for f in &self.factors {
            v.push(o);
            o += f.rank();
        }
        v.push(o);
        v
    }

    pub fn dim(&self) -> usize {
        self.offsets()[self.factors.len()] + self.torus_rank
    }

    pub fn is_dominant(&self, w: &[i64]) -> bool {
        let ss = self.offsets()[self.factors.len()];
        w[..ss].iter().all(|&c| c >= 0)
    }

    fn height_den(&self) -> i64 {
        self.factors.iter().fold(1i64, |acc, f| acc.lcm(&f.root_coord_den()))
    }

    /// Height (sum of factor root coordinates) scaled by a fixed common denominator.
    pub fn height_scaled(&self, w: &[i64]) -> i64 {
        let l = self.height_den();
        let off = self.offsets();
        self.factors
            .iter()
            .enumerate()
            .map(|(i, f)| f.height_num(&w[off[i]..off[i + 1]]) * (l / f.root_coord_den()))
            .sum()
    }

    /// The dominant part of the Weyl character with highest weight `hw`.
    pub fn dominant_character(&self, hw: &[i64]) -> Result<Vec<(Vec<i64>, BigUint)>> {
        let off = self.offsets();
        let ss = off[self.factors.len()];
        let mut acc: Vec<(Vec<i64>, BigUint)> = vec![(Vec::new(), BigUint::one())];
        for (i, f) in self.factors.iter().enumerate() {
            let table = TableCache::global().get(f, &hw[off[i]..off[i + 1]])?;
            let mut next = Vec::with_capacity(acc.len() * table.entries.len());
            for (prefix, m) in &acc {
                for (w, mm) in &table.entries {
                    let mut v = prefix.clone();
                    v.extend_from_slice(&w.coeffs);
                    next.push((v, m * mm));
                }
            }
            acc = next;
        }
        for (v, _) in acc.iter_mut() {
            v.extend_from_slice(&hw[ss..]);
        }
        Ok(acc)
    }

    /// Product of the factor Weyl dimensions.
    pub fn weyl_dim(&self, hw: &[i64]) -> Result<BigUint> {
        let off = self.offsets();
        let mut acc = BigUint::one();
        for (i, f) in self.factors.iter().enumerate() {
            acc *= weyl_dim(f, &Weight::new(hw[off[i]..off[i + 1]].to_vec()))?;
        }
        Ok(acc)
    }
}

/// Decompose a W-invariant multiset into Weyl characters of a product
/// system. Only the dominant part of the input is read. The maximal
/// remaining weight (greatest height, then lexicographically largest) is
/// peeled off repeatedly.
pub fn weyl_character_subtract(
    ps: &ProductSystem,
    multiset: &HashMap<Vec<i64>, BigInt>,
) -> Result<BTreeMap<Vec<i64>, BigUint>> {
    let mut remaining: HashMap<Vec<i64>, BigInt> = multiset
        .iter()
        .filter(|(w, m)| ps.is_dominant(w) && !m.is_zero())
        .map(|(w, m)| (w.clone(), m.clone()))
        .collect();
    let mut heap: BinaryHeap<(i64, Vec<i64>)> = remaining.keys().map(|w| (ps.height_scaled(w), w.clone())).collect();
    let mut out = BTreeMap::new();
    while let Some((_, top)) = heap.pop() {
        let Some(m) = remaining.remove(&top) else { continue };
        if m.is_negative() {
            return Err(Error::NegativeMultiplicity(top));
        }
        for (w, mm) in ps.dominant_character(&top)? {
            if w == top {
                continue;
            }
            let fresh = !remaining.contains_key(&w);
            let e = remaining.entry(w.clone()).or_insert_with(BigInt::zero);
            *e -= &m * BigInt::from(mm);
            if e.is_negative() {
                return Err(Error::NegativeMultiplicity(w));
            }
            if e.is_zero() {
                remaining.remove(&w);
            } else if fresh {
                heap.push((ps.height_scaled(&w), w));
            }
        }
        out.insert(top, m.to_biguint().unwrap());
    }
    Ok(out)
}

/// Expand product Weyl characters back into their dominant multiset.
pub fn expand_characters(ps: &ProductSystem, chars: &BTreeMap<Vec<i64>, BigUint>) -> Result<HashMap<Vec<i64>, BigInt>> {
    let mut out: HashMap<Vec<i64>, BigInt> = HashMap::new();
    for (hw, m) in chars {
        for (w, mm) in ps.dominant_character(hw)? {
            *out.entry(w).or_insert_with(BigInt::zero) += BigInt::from(m * mm);
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Convert a small big integer for display and bookkeeping.
pub fn to_u128(x: &BigUint) -> Option<u128> {
    x.to_u128()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    fn rs(f: Family, n: usize) -> RootSystem {
        build_root_system(LieType::new(f, n).unwrap())
    }

    #[test]
    fn a1_string() {
        let t = freudenthal(&rs(Family::A, 1), &Weight::new(vec![2])).unwrap();
        assert_eq!(t.total_dim, BigUint::from(3u32));
    }

    #[test]
    fn b3_spin_plus_natural() {
        let r = rs(Family::B, 3);
        let t = freudenthal(&r, &Weight::new(vec![1, 0, 1])).unwrap();
        assert_eq!(t.entries[&Weight::new(vec![0, 0, 1])], BigUint::from(3u32));
        assert_eq!(t.total_dim, weyl_dim(&r, &Weight::new(vec![1, 0, 1])).unwrap());
    }
}
