//! Root data and weight-lattice arithmetic for the classical types in
//! Bourbaki labelling.
//!
//! Weights are integer vectors in the fundamental-weight basis. Root
//! coordinates are exact rationals. Squared root lengths are normalised so
//! that short roots have length 1.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub(crate) fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            _ => None,
        }
    }
}

/// A classical type with its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    /// Strict constructor for ambient groups: A_n (n >= 1), B_n, C_n (n >= 2), D_n (n >= 3).
    pub fn new(family: Family, rank: usize) -> Result<LieType> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        };
        if rank < min {
            return Err(Error::InvalidType {
                family: family.letter(),
                rank,
                reason: "rank below the simplicity bound",
            });
        }
        Ok(LieType { family, rank })
    }

    /// Permissive constructor for subgroup factors. Allows B_1, C_1 and the
    /// reducible D_2.
    pub fn factor(family: Family, rank: usize) -> Result<LieType> {
        let min = match family {
            Family::D => 2,
            _ => 1,
        };
        if rank < min {
            return Err(Error::InvalidType {
                family: family.letter(),
                rank,
                reason: "rank too small for a factor",
            });
        }
        Ok(LieType { family, rank })
    }

    /// Dimension of the ambient epsilon space (n+1 for A_n, n otherwise).
    pub fn eps_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Simple roots in epsilon coordinates.
    pub fn simple_roots_eps(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let d = self.eps_dim();
        let diff = |i: usize| {
            let mut v = vec![0; d];
            v[i] = 1;
            v[i + 1] = -1;
            v
        };
        let mut roots: Vec<Vec<i64>> = Vec::with_capacity(n);
        match self.family {
            Family::A => (0..n).for_each(|i| roots.push(diff(i))),
            Family::B | Family::C => {
                (0..n - 1).for_each(|i| roots.push(diff(i)));
                let mut v = vec![0; d];
                v[n - 1] = if self.family == Family::B { 1 } else { 2 };
                roots.push(v);
            }
            Family::D => {
                (0..n - 1).for_each(|i| roots.push(diff(i)));
                let mut v = vec![0; d];
                v[n - 2] = 1;
                v[n - 1] = 1;
                roots.push(v);
            }
        }
        roots
    }

    /// Simple coroots 2α/(α,α) in epsilon coordinates.
    pub fn simple_coroots_eps(&self) -> Vec<Vec<i64>> {
        let mut roots = self.simple_roots_eps();
        let n = self.rank;
        match self.family {
            Family::B => roots[n - 1][n - 1] = 2,
            Family::C => roots[n - 1][n - 1] = 1,
            _ => {}
        }
        roots
    }

    /// The fundamental weight λ_k (1-based) in epsilon coordinates. For A_n
    /// the GL lift ε_1+…+ε_k is used.
    pub fn fundamental_eps(&self, k: usize) -> Vec<Q> {
        let n = self.rank;
        let d = self.eps_dim();
        assert!(k >= 1 && k <= n, "fundamental weight index out of range");
        let mut v = vec![Q::zero(); d];
        let spin = |v: &mut Vec<Q>, last: i64| {
            for x in v.iter_mut().take(n - 1) {
                *x = q_frac(1, 2);
            }
            v[n - 1] = q_frac(last, 2);
        };
        match self.family {
            Family::A | Family::C => (0..k).for_each(|i| v[i] = q(1)),
            Family::B => {
                if k < n {
                    (0..k).for_each(|i| v[i] = q(1));
                } else {
                    spin(&mut v, 1);
                }
            }
            Family::D => {
                if k + 2 <= n {
                    (0..k).for_each(|i| v[i] = q(1));
                } else if k == n - 1 {
                    spin(&mut v, -1);
                } else {
                    spin(&mut v, 1);
                }
            }
        }
        v
    }

    /// Epsilon coordinates of a weight given in the fundamental basis.
    pub fn weight_to_eps(&self, w: &[i64]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.eps_dim()];
        for (k, &c) in w.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, f) in out.iter_mut().zip(self.fundamental_eps(k + 1)) {
                *o += f * q(c);
            }
        }
        out
    }

    /// Fundamental coordinates of an epsilon vector (pairings with the simple coroots).
    pub fn eps_to_weight(&self, x: &[Q]) -> Vec<Q> {
        self.simple_coroots_eps()
            .iter()
            .map(|cr| cr.iter().zip(x).fold(Q::zero(), |acc, (&c, xi)| acc + xi * q(c)))
            .collect()
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> BigUint {
        let n = self.rank as u64;
        let fact = |m: u64| (1..=m).fold(BigUint::one(), |acc, i| acc * i);
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => fact(n) << n as usize,
            Family::D => fact(n) << (n - 1) as usize,
        }
    }

    /// The diagram automorphism τ (reversal for A, swap of the last two nodes
    /// for D, identity for B and C).
    pub fn diagram_flip(&self, w: &[i64]) -> Vec<i64> {
        let mut v = w.to_vec();
        match self.family {
            Family::A => v.reverse(),
            Family::D => v.swap(self.rank - 2, self.rank - 1),
            _ => {}
        }
        v
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<LieType> {
        let s = s.trim();
        let bad = || Error::Parse {
            line: 0,
            msg: format!("bad Lie type '{s}'"),
        };
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let rank: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
        LieType::new(family, rank)
    }
}

/// A weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub coeffs: Vec<i64>,
}

impl Weight {
    pub fn new(coeffs: Vec<i64>) -> Weight {
        Weight { coeffs }
    }

    pub fn zero(rank: usize) -> Weight {
        Weight { coeffs: vec![0; rank] }
    }

    /// λ_i with 1-based index.
    pub fn fundamental(rank: usize, i: usize) -> Weight {
        let mut coeffs = vec![0; rank];
        coeffs[i - 1] = 1;
        Weight { coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// All coefficients below p (always true when p = 0).
    pub fn is_restricted(&self, p: u64) -> bool {
        p == 0 || self.coeffs.iter().all(|&c| c >= 0 && (c as u64) < p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn coeff_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }

    /// Parse a comma-separated coefficient list such as `1,0,2`.
    pub fn parse(s: &str) -> Result<Weight> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim().parse::<i64>().map_err(|_| Error::Parse {
                    line: 0,
                    msg: format!("bad weight coefficient '{t}'"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight { coeffs })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Coordinates in the basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootCoords {
    pub coeffs: Vec<Q>,
}

impl RootCoords {
    pub fn from_ints(v: &[i64]) -> RootCoords {
        RootCoords {
            coeffs: v.iter().map(|&c| q(c)).collect(),
        }
    }

    /// Simple root α_i with 1-based index.
    pub fn simple(rank: usize, i: usize) -> RootCoords {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        RootCoords::from_ints(&v)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn height(&self) -> Q {
        self.coeffs.iter().fold(Q::zero(), |a, c| a + c)
    }
}

/// Full root datum of a (possibly reducible) root system given by its
/// Cartan matrix.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub lie_type: Option<LieType>,
    pub label: String,
    /// `cartan[i][j] = ⟨α_i, α_j⟩`.
    pub cartan: Vec<Vec<i64>>,
    pub root_lengths: Vec<i64>,
    pub positive_roots: Vec<RootCoords>,
    pub rho: Weight,
    pub e_g: i64,
    pos_int: Vec<Vec<i64>>,
    pos_weight: Vec<Vec<i64>>,
    pos_len: Vec<i64>,
    inv_num: Vec<Vec<i64>>,
    inv_den: i64,
    gram_num: Vec<Vec<i64>>,
    gram_den: i64,
}

/// Build the root system of a classical type.
pub fn build_root_system(t: LieType) -> RootSystem {
    let roots = t.simple_roots_eps();
    let coroots = t.simple_coroots_eps();
    let n = t.rank;
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| dot(&roots[i], &coroots[j])).collect())
        .collect();
    let raw: Vec<i64> = roots.iter().map(|r| dot(r, r)).collect();
    RootSystem::from_cartan(cartan, raw, t.to_string(), Some(t))
}

impl RootSystem {
    /// Build from a Cartan matrix and (unnormalised) squared lengths of the
    /// simple roots.
    pub fn from_cartan(
        cartan: Vec<Vec<i64>>,
        raw_lengths: Vec<i64>,
        label: String,
        lie_type: Option<LieType>,
    ) -> RootSystem {
        let n = cartan.len();
        let min = raw_lengths.iter().copied().min().unwrap_or(1).max(1);
        let root_lengths: Vec<i64> = raw_lengths.iter().map(|l| l / min).collect();
        let pos_int = positive_roots_from_cartan(&cartan);
        let pos_weight: Vec<Vec<i64>> = pos_int
            .iter()
            .map(|c| (0..n).map(|j| (0..n).map(|i| c[i] * cartan[i][j]).sum()).collect())
            .collect();
        let sym = |x: &[i64], y: &[i64]| -> i64 {
            // 2(x, y) for root-coordinate vectors
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    s += x[i] * cartan[i][j] * root_lengths[j] * y[j];
                }
            }
            s
        };
        let pos_len: Vec<i64> = pos_int.iter().map(|c| sym(c, c) / 2).collect();
        let e_g = if pos_len.is_empty() {
            1
        } else {
            pos_len.iter().max().unwrap() / pos_len.iter().min().unwrap()
        };
        let (inv_num, inv_den) = inverse_transpose(&cartan);
        let g = 2 * inv_den;
        let mut gram_num = vec![vec![0i64; n]; n];
        for (i, row) in gram_num.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = inv_num[j][i] * root_lengths[j];
            }
        }
        let positive_roots = pos_int.iter().map(|c| RootCoords::from_ints(c)).collect();
        RootSystem {
            lie_type,
            label,
            cartan,
            root_lengths,
            positive_roots,
            rho: Weight::new(vec![1; n]),
            e_g,
            pos_int,
            pos_weight,
            pos_len,
            inv_num,
            inv_den,
            gram_num,
            gram_den: g,
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Positive roots as integer root coordinates.
    pub fn positive_roots_int(&self) -> &[Vec<i64>] {
        &self.pos_int
    }

    /// Positive roots in the fundamental-weight basis.
    pub fn positive_roots_weight(&self) -> &[Vec<i64>] {
        &self.pos_weight
    }

    /// Normalised squared lengths of the positive roots.
    pub fn positive_root_lengths(&self) -> &[i64] {
        &self.pos_len
    }

    /// The simple root α_i (0-based) in the fundamental-weight basis.
    pub fn simple_root_weight(&self, i: usize) -> Vec<i64> {
        self.cartan[i].clone()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::LengthMismatch {
                expected: self.rank(),
                got: len,
            });
        }
        Ok(())
    }

    /// Index of ±α among the positive roots together with its sign.
    pub fn find_root(&self, alpha: &RootCoords) -> Result<(usize, i64)> {
        self.check_len(alpha.coeffs.len())?;
        let ints = alpha
            .to_ints()
            .ok_or_else(|| Error::NotARoot(format!("{:?}", alpha.coeffs)))?;
        let neg: Vec<i64> = ints.iter().map(|c| -c).collect();
        for (k, r) in self.pos_int.iter().enumerate() {
            if *r == ints {
                return Ok((k, 1));
            }
            if *r == neg {
                return Ok((k, -1));
            }
        }
        Err(Error::NotARoot(format!("{ints:?}")))
    }

    /// ⟨w, β⟩ for the k-th positive root β.
    pub fn coroot_pairing(&self, w: &[i64], k: usize) -> i64 {
        let c = &self.pos_int[k];
        let s: i64 = (0..self.rank()).map(|i| c[i] * w[i] * self.root_lengths[i]).sum();
        s / self.pos_len[k]
    }

    /// ⟨w, α⟩ = 2(w, α)/(α, α) for a root α.
    pub fn pairing(&self, w: &Weight, alpha: &RootCoords) -> Result<i64> {
        self.check_len(w.rank())?;
        let (k, sign) = self.find_root(alpha)?;
        Ok(sign * self.coroot_pairing(&w.coeffs, k))
    }

    /// Numerators of the root coordinates of `w`; the denominator is
    /// [`Self::root_coord_den`].
    pub fn root_coords_num(&self, w: &[i64]) -> Vec<i64> {
        self.inv_num
            .iter()
            .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn root_coord_den(&self) -> i64 {
        self.inv_den
    }

    pub fn weight_to_root_coords(&self, w: &Weight) -> Result<RootCoords> {
        self.check_len(w.rank())?;
        let d = BigInt::from(self.inv_den);
        Ok(RootCoords {
            coeffs: self
                .root_coords_num(&w.coeffs)
                .into_iter()
                .map(|x| Q::new(BigInt::from(x), d.clone()))
                .collect(),
        })
    }

    /// Inverse conversion; fails when the result is not a lattice weight.
    pub fn root_coords_to_weight(&self, c: &RootCoords) -> Result<Weight> {
        self.check_len(c.coeffs.len())?;
        let n = self.rank();
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let s = (0..n).fold(Q::zero(), |a, i| a + &c.coeffs[i] * q(self.cartan[i][j]));
            if !s.is_integer() {
                return Err(Error::Precondition("root coordinates not in the weight lattice".into()));
            }
            out.push(s.to_integer().to_i64().unwrap());
        }
        Ok(Weight::new(out))
    }

    /// The inner product scaled by [`Self::gram_den`], exact in integers.
    pub fn inner_scaled(&self, x: &[i64], y: &[i64]) -> i128 {
        let mut s: i128 = 0;
        for (&xi, row) in x.iter().zip(&self.gram_num) {
            if xi == 0 {
                continue;
            }
            let r: i128 = row.iter().zip(y).map(|(&g, &yj)| g as i128 * yj as i128).sum();
            s += xi as i128 * r;
        }
        s
    }

    pub fn gram_den(&self) -> i64 {
        self.gram_den
    }

    /// (x, y) as an exact rational.
    pub fn inner(&self, x: &Weight, y: &Weight) -> Q {
        Q::new(
            BigInt::from(self.inner_scaled(&x.coeffs, &y.coeffs)),
            BigInt::from(self.gram_den),
        )
    }

    /// True when `lambda - mu` is a non-negative integral combination of simple roots.
    pub fn is_under(&self, mu: &[i64], lambda: &[i64]) -> bool {
        let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        self.root_coords_num(&diff)
            .iter()
            .all(|&x| x >= 0 && x % self.inv_den == 0)
    }

    /// Height of `lambda - mu` times the root-coordinate denominator.
    pub fn height_num(&self, w: &[i64]) -> i64 {
        self.root_coords_num(w).iter().sum()
    }

    /// Restriction to the Levi subsystem on the given simple-root indices (0-based, sorted).
    pub fn levi(&self, support: &[usize]) -> RootSystem {
        let cartan: Vec<Vec<i64>> = support
            .iter()
            .map(|&i| support.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        let lens: Vec<i64> = support.iter().map(|&i| self.root_lengths[i]).collect();
        let lie_type = identify_connected(&cartan, &lens);
        let label = match lie_type {
            Some(t) => t.to_string(),
            None => format!("levi{support:?}"),
        };
        RootSystem::from_cartan(cartan, lens, label, lie_type)
    }
}

/// Identify a connected classical Cartan matrix.
pub(crate) fn identify_connected(cartan: &[Vec<i64>], lens: &[i64]) -> Option<LieType> {
    let n = cartan.len();
    if n == 0 {
        return None;
    }
    let comps = crate::weylgroup::dynkin_components(cartan);
    if comps.len() != 1 {
        return None;
    }
    let degree = |i: usize| (0..n).filter(|&j| j != i && cartan[i][j] != 0).count();
    let has_double = (0..n).any(|i| (0..n).any(|j| cartan[i][j] == -2));
    if has_double {
        let minl = *lens.iter().min().unwrap();
        let shorts = lens.iter().filter(|&&l| l == minl).count();
        let fam = if n == 2 || shorts == 1 { Family::B } else { Family::C };
        return LieType::factor(fam, n).ok();
    }
    if (0..n).any(|i| degree(i) == 3) {
        return LieType::factor(Family::D, n).ok();
    }
    LieType::factor(Family::A, n).ok()
}

fn positive_roots_from_cartan(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut set: HashSet<Vec<i64>> = HashSet::new();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    for r in &layer {
        set.insert(r.clone());
    }
    while !layer.is_empty() {
        roots.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let pr: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut r = 0;
                let mut g = beta.clone();
                loop {
                    g[i] -= 1;
                    if set.contains(&g) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                if r - pr > 0 {
                    let mut nb = beta.clone();
                    nb[i] += 1;
                    if set.insert(nb.clone()) {
                        next.push(nb);
                    }
                }
            }
        }
        next.sort();
        layer = next;
    }
    roots
}

/// Integer form of (Cᵀ)⁻¹ as (numerators, common denominator).
fn inverse_transpose(cartan: &[Vec<i64>]) -> (Vec<Vec<i64>>, i64) {
    let n = cartan.len();
    let mut a: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| q(cartan[j][i])).collect()).collect();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("singular Cartan matrix");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &a[col][j] * &f;
                    a[r][j] -= t;
                    let t = &inv[col][j] * &f;
                    inv[r][j] -= t;
                }
            }
        }
    }
    let mut den = BigInt::one();
    for row in &inv {
        for x in row {
            den = den.lcm(x.denom());
        }
    }
    let num = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| (x * Q::from_integer(den.clone())).to_integer().to_i64().unwrap())
                .collect()
        })
        .collect();
    (num, den.abs().to_i64().unwrap())
}

/// The non-zero minimal weights of a classical type.
pub fn minimal_weights(t: LieType) -> Vec<Weight> {
    let n = t.rank;
    let idx: Vec<usize> = match t.family {
        Family::A => (1..=n).collect(),
        Family::B => vec![n],
        Family::C => vec![1],
        Family::D => vec![1, n - 1, n],
    };
    idx.into_iter().map(|i| Weight::fundamental(n, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_b2() {
        let rs = build_root_system(LieType::new(Family::B, 2).unwrap());
        assert_eq!(rs.cartan, vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(rs.root_lengths, vec![2, 1]);
    }

    #[test]
    fn gram_is_symmetric() {
        for t in [(Family::A, 4), (Family::B, 3), (Family::C, 4), (Family::D, 5)] {
            let rs = build_root_system(LieType::new(t.0, t.1).unwrap());
            let n = rs.rank();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(rs.gram_num[i][j], rs.gram_num[j][i]);
                }
            }
        }
    }

    #[test]
    fn d2_factor_is_reducible() {
        let rs = build_root_system(LieType::factor(Family::D, 2).unwrap());
        assert_eq!(rs.cartan, vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(rs.positive_roots.len(), 2);
    }

    #[test]
    fn levi_of_c6_is_c3() {
        let rs = build_root_system(LieType::new(Family::C, 6).unwrap());
        let l = rs.levi(&[3, 4, 5]);
        assert_eq!(
            l.lie_type,
            Some(LieType {
                family: Family::C,
                rank: 3
            })
        );
    }
}
