//! Weyl group actions on weights: reflections, dominant representatives,
//! orbit sizes, bounded orbit enumeration and the longest element.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::rootsys::{identify_connected, LieType, RootCoords, RootSystem, Weight};

pub const DEFAULT_CAP: u64 = 1_000_000;

/// Enumeration cap, overridable with `WEYLBRANCH_CAP`.
pub fn default_cap() -> u64 {
    std::env::var("WEYLBRANCH_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSummary {
    pub dominant_rep: Weight,
    pub orbit_size: BigUint,
    pub stabilizer_type: Vec<LieType>,
}

/// Connected components of the Dynkin diagram, each sorted.
pub fn dynkin_components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Types of the components of the subsystem on `support`.
fn subsystem_types(rs: &RootSystem, support: &[usize]) -> Vec<LieType> {
    let sub: Vec<Vec<i64>> = support
        .iter()
        .map(|&i| support.iter().map(|&j| rs.cartan[i][j]).collect())
        .collect();
    let mut out: Vec<LieType> = dynkin_components(&sub)
        .into_iter()
        .map(|comp| {
            let c: Vec<Vec<i64>> = comp
                .iter()
                .map(|&i| comp.iter().map(|&j| sub[i][j]).collect())
                .collect();
            let lens: Vec<i64> = comp.iter().map(|&i| rs.root_lengths[support[i]]).collect();
            identify_connected(&c, &lens).expect("non-classical subsystem")
        })
        .collect();
    out.sort();
    out
}

/// Order of the Weyl group of a root system.
pub fn weyl_group_order(rs: &RootSystem) -> BigUint {
    let all: Vec<usize> = (0..rs.rank()).collect();
    subsystem_types(rs, &all)
        .iter()
        .fold(BigUint::one(), |acc, t| acc * t.weyl_order())
}

/// s_α(λ) = λ − ⟨λ, α⟩α.
pub fn reflect(rs: &RootSystem, w: &Weight, alpha: &RootCoords) -> Result<Weight> {
    let (k, _) = rs.find_root(alpha)?;
    if w.rank() != rs.rank() {
        return Err(Error::LengthMismatch {
            expected: rs.rank(),
            got: w.rank(),
        });
    }
    let pr = rs.coroot_pairing(&w.coeffs, k);
    let aw = &rs.positive_roots_weight()[k];
    Ok(Weight::new(w.coeffs.iter().zip(aw).map(|(a, b)| a - pr * b).collect()))
}

#[inline]
pub(crate) fn simple_reflect_in_place(rs: &RootSystem, w: &mut [i64], i: usize) {
    let c = w[i];
    if c == 0 {
        return;
    }
    for (x, &a) in w.iter_mut().zip(&rs.cartan[i]) {
        *x -= c * a;
    }
}

/// Dominant representative of the orbit of `w` in a raw buffer; returns the
/// number of simple reflections used.
pub(crate) fn dominate_in_place(rs: &RootSystem, w: &mut [i64]) -> usize {
    let mut steps = 0;
    while let Some(i) = w.iter().position(|&c| c < 0) {
        simple_reflect_in_place(rs, w, i);
        steps += 1;
    }
    steps
}

/// The unique dominant weight in the orbit of `w`, with the word length of
/// the reflection chain that reached it.
pub fn dominant_representative(rs: &RootSystem, w: &Weight) -> (Weight, usize) {
    let mut v = w.coeffs.clone();
    let steps = dominate_in_place(rs, &mut v);
    (Weight::new(v), steps)
}

/// Orbit size as |W| / |W_J| where J is the set of simple roots orthogonal
/// to the dominant representative.
pub fn orbit_size(rs: &RootSystem, w: &Weight) -> OrbitSummary {
    let (dom, _) = dominant_representative(rs, w);
    let zeros: Vec<usize> = (0..rs.rank()).filter(|&i| dom.coeffs[i] == 0).collect();
    let stab = subsystem_types(rs, &zeros);
    let stab_order = stab.iter().fold(BigUint::one(), |acc, t| acc * t.weyl_order());
    OrbitSummary {
        dominant_rep: dom,
        orbit_size: weyl_group_order(rs) / stab_order,
        stabilizer_type: stab,
    }
}

/// Visit every element of the orbit of a dominant weight exactly once.
///
/// Each non-dominant element ν has the parent s_j ν with j the smallest
/// index where ν is negative. The walk descends this tree, so no hashing is
/// needed.
pub fn orbit_visit<F: FnMut(&[i64])>(rs: &RootSystem, dominant: &[i64], mut f: F) {
    let n = rs.rank();
    let mut stack: Vec<Vec<i64>> = vec![dominant.to_vec()];
    while let Some(nu) = stack.pop() {
        for i in 0..n {
            let c = nu[i];
            if c <= 0 {
                continue;
            }
            let row = &rs.cartan[i];
            if (0..i).all(|j| nu[j] - c * row[j] >= 0) {
                let child: Vec<i64> = nu.iter().zip(row).map(|(x, a)| x - c * a).collect();
                stack.push(child);
            }
        }
        f(&nu);
    }
}

/// The full orbit of `w`, sorted lexicographically. Fails when the orbit is
/// larger than `cap`.
pub fn orbit_enumerate(rs: &RootSystem, w: &Weight, cap: u64) -> Result<Vec<Weight>> {
    let summary = orbit_size(rs, w);
    if summary.orbit_size > BigUint::from(cap) {
        return Err(Error::OrbitTooLarge {
            size: summary.orbit_size.to_string(),
            cap,
        });
    }
    let mut out = Vec::with_capacity(summary.orbit_size.to_usize().unwrap_or(0));
    orbit_visit(rs, &summary.dominant_rep.coeffs, |v| out.push(Weight::new(v.to_vec())));
    out.sort();
    Ok(out)
}

/// w_0·w, computed as Σ w_i · (−dom(−λ_i)).
pub fn longest_word_image(rs: &RootSystem, w: &Weight) -> Weight {
    let n = rs.rank();
    let mut out = vec![0i64; n];
    for i in 0..n {
        if w.coeffs[i] == 0 {
            continue;
        }
        let mut v = vec![0i64; n];
        v[i] = -1;
        dominate_in_place(rs, &mut v);
        for j in 0..n {
            out[j] -= w.coeffs[i] * v[j];
        }
    }
    Weight::new(out)
}
