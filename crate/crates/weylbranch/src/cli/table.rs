//! Line-oriented classification tables.
//!
//! One record per line, eight tab-separated fields:
//!
//! ```text
//! id  family  ambient  params  lambda  p-condition  kappa  restriction
//! ```
//!
//! * `family`: `c1:Dn`, `c1`, `c2:Xl`, `c3`, `c4i`, `c4ii:Xl` or `c6`.
//! * `ambient`: a family letter (all ranks up to the cap) or a type such as `D8`.
//! * `params`: a boolean expression over the family variables, optionally
//!   followed by `; var=lo..hi` ranges introducing extra variables.
//! * `lambda`: `idx:coef` terms joined by `;`, or `@ford` / `@an0`.
//! * `kappa`: an integer expression or `-`.
//! * `restriction`: `F,J,C` terms (factor, fundamental index, coefficient)
//!   joined by `;`, each optionally prefixed with a loop `i=lo..hi:`.
//!   Terms with J ≤ 0 are dropped; `-` means no restriction is recorded.
//!
//! Lines starting with `#` and blank lines are kept verbatim.

use std::collections::BTreeSet;

use crate::charcalc::Characteristic;
use crate::checker::{candidate_weights, ford_condition_check, ClassificationEntry};
use crate::condexpr::{eval_bool, eval_int, eval_int_lambda};
use crate::embeddings::{build_embedding, family_instances, Embedding, GeomFamily};
use crate::error::{Error, Result};
use crate::rootsys::{Family, LieType, Weight};

/// Coefficient-sum bound for the `@ford` and `@an0` weight families.
pub const GENERIC_SUM_BOUND: i64 = 4;

pub type Vars = Vec<(String, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRecord {
    pub id: String,
    pub family: String,
    pub ambient: String,
    pub params: String,
    pub lambda: String,
    pub p_condition: String,
    pub kappa: String,
    pub restriction: String,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableLine {
    Verbatim(String),
    Record(TableRecord),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TableFile {
    pub lines: Vec<TableLine>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Split at `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn with_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { msg, .. } => perr(line, msg),
        other => perr(line, other.to_string()),
    })
}

/// `var=lo..hi`, with bounds evaluated in `vars`.
fn parse_range(s: &str, vars: &Vars, line: usize) -> Result<(String, i64, i64)> {
    let (name, range) = s
        .split_once('=')
        .ok_or_else(|| perr(line, format!("bad range '{s}'")))?;
    let (lo, hi) = range
        .split_once("..")
        .ok_or_else(|| perr(line, format!("bad range '{s}'")))?;
    let lo = with_line(line, eval_int(lo, vars))?;
    let hi = with_line(line, eval_int(hi, vars))?;
    Ok((name.trim().to_string(), lo, hi))
}

impl TableRecord {
    pub fn parse(text: &str, line: usize) -> Result<TableRecord> {
        let f: Vec<&str> = text.split('\t').collect();
        if f.len() != 8 {
            return Err(perr(
                line,
                format!("expected 8 tab-separated fields, found {}", f.len()),
            ));
        }
        let rec = TableRecord {
            id: f[0].into(),
            family: f[1].into(),
            ambient: f[2].into(),
            params: f[3].into(),
            lambda: f[4].into(),
            p_condition: f[5].into(),
            kappa: f[6].into(),
            restriction: f[7].into(),
            line,
        };
        rec.family_kind()?;
        rec.ambient_spec()?;
        Ok(rec)
    }

    pub fn serialize(&self) -> String {
        [
            &self.id,
            &self.family,
            &self.ambient,
            &self.params,
            &self.lambda,
            &self.p_condition,
            &self.kappa,
            &self.restriction,
        ]
        .map(String::as_str)
        .join("\t")
    }

    /// Family tag and optional factor family.
    fn family_kind(&self) -> Result<(String, Option<Family>)> {
        let (head, rest) = match self.family.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (self.family.as_str(), None),
        };
        let head = head.trim().to_ascii_lowercase();
        if !["c1", "c2", "c3", "c4i", "c4ii", "c6"].contains(&head.as_str()) {
            return Err(perr(self.line, format!("unknown family '{}'", self.family)));
        }
        let sub = match rest {
            None => None,
            Some("Dn") if head == "c1" => None,
            Some(r) => {
                let mut c = r.chars();
                let f = c.next().and_then(Family::from_letter);
                match (f, c.as_str()) {
                    (Some(f), "l") => Some(f),
                    _ => return Err(perr(self.line, format!("bad factor in '{}'", self.family))),
                }
            }
        };
        let head = if self.family == "c1:Dn" {
            "c1:Dn".to_string()
        } else {
            head
        };
        Ok((head, sub))
    }

    /// Either a family letter or a concrete type.
    fn ambient_spec(&self) -> Result<(Family, Option<usize>)> {
        let s = self.ambient.trim();
        let mut c = s.chars();
        let fam = c
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| perr(self.line, format!("bad ambient '{s}'")))?;
        let rest = c.as_str();
        if rest.is_empty() {
            return Ok((fam, None));
        }
        let n = rest
            .parse()
            .map_err(|_| perr(self.line, format!("bad ambient '{s}'")))?;
        Ok((fam, Some(n)))
    }

    pub fn matches_family(&self, fam: &GeomFamily) -> bool {
        let Ok((head, sub)) = self.family_kind() else {
            return false;
        };
        match fam {
            GeomFamily::C1Dn => head == "c1:Dn",
            GeomFamily::C1 { .. } => head == "c1",
            GeomFamily::C2 { sub: s, .. } => head == "c2" && sub == Some(*s),
            GeomFamily::C3 => head == "c3",
            GeomFamily::C4i { .. } => head == "c4i",
            GeomFamily::C4ii { sub: s, .. } => head == "c4ii" && sub == Some(*s),
            GeomFamily::C6 => head == "c6",
        }
    }

    pub fn matches_ambient(&self, t: LieType) -> bool {
        match self.ambient_spec() {
            Ok((f, None)) => f == t.family && t.rank >= min_rank(f),
            Ok((f, Some(n))) => f == t.family && n == t.rank,
            Err(_) => false,
        }
    }

    /// Ambient types covered by this record up to `rank_cap`.
    pub fn ambients(&self, rank_cap: usize) -> Result<Vec<LieType>> {
        let (f, n) = self.ambient_spec()?;
        let ranks: Vec<usize> = match n {
            Some(n) if n <= rank_cap => vec![n],
            Some(_) => vec![],
            None => (min_rank(f)..=rank_cap).collect(),
        };
        ranks.into_iter().map(|r| LieType::new(f, r)).collect()
    }

    /// Variable assignments for which the record applies to (ambient, fam).
    pub fn bindings(&self, ambient: LieType, fam: &GeomFamily, p: u64) -> Result<Vec<Vars>> {
        if !self.matches_ambient(ambient) || !self.matches_family(fam) {
            return Ok(vec![]);
        }
        let n = ambient.rank as i64;
        let mut base: Vars = vec![("n".into(), n), ("p".into(), p as i64)];
        match *fam {
            GeomFamily::C1 { l } => base.push(("l".into(), l as i64)),
            GeomFamily::C2 { l, t, .. } | GeomFamily::C4ii { l, t, .. } => {
                base.push(("l".into(), l as i64));
                base.push(("t".into(), t as i64));
            }
            GeomFamily::C4i { a, b } => {
                base.push(("a".into(), a as i64));
                base.push(("b".into(), b as i64));
            }
            GeomFamily::C6 => {
                let m = if ambient.family == Family::A { (n + 1) / 2 } else { n };
                base.push(("m".into(), m));
            }
            GeomFamily::C1Dn | GeomFamily::C3 => {}
        }
        let parts = split_top(&self.params, ';');
        let cond = parts[0];
        let mut envs = vec![base];
        for r in &parts[1..] {
            let mut next = Vec::new();
            for env in &envs {
                let (name, lo, hi) = parse_range(r, env, self.line)?;
                for v in lo..=hi {
                    let mut e = env.clone();
                    e.push((name.clone(), v));
                    next.push(e);
                }
            }
            envs = next;
        }
        let mut out = Vec::new();
        for env in envs {
            if with_line(self.line, eval_bool(cond, &env))? {
                out.push(env);
            }
        }
        Ok(out)
    }

    /// Highest weights named by the record under a binding.
    pub fn weights(&self, ambient: LieType, vars: &Vars, chi: Characteristic) -> Result<Vec<Weight>> {
        let n = ambient.rank;
        let spec = self.lambda.trim();
        if spec == "@ford" || spec == "@an0" {
            if spec == "@ford" && chi.p == 2 {
                return Ok(vec![]);
            }
            let mut out = Vec::new();
            for w in candidate_weights(n, chi.p, GENERIC_SUM_BOUND) {
                let keep = if spec == "@ford" {
                    ford_condition_check(&w, n, chi)?
                } else {
                    w.coeffs[n - 1] == 0
                };
                if keep {
                    out.push(w);
                }
            }
            return Ok(out);
        }
        let mut c = vec![0i64; n];
        for term in split_top(spec, ';') {
            let (i, a) = term
                .split_once(':')
                .ok_or_else(|| perr(self.line, format!("bad λ term '{term}'")))?;
            let i = with_line(self.line, eval_int(i, vars))?;
            let a = with_line(self.line, eval_int(a, vars))?;
            if i < 1 || i as usize > n {
                return Err(perr(self.line, format!("λ index {i} out of range for {ambient}")));
            }
            c[i as usize - 1] += a;
        }
        Ok(vec![Weight::new(c)])
    }

    pub fn kappa_value(&self, vars: &Vars) -> Result<Option<u64>> {
        let k = self.kappa.trim();
        if k == "-" {
            return Ok(None);
        }
        let v = with_line(self.line, eval_int(k, vars))?;
        u64::try_from(v)
            .ok()
            .filter(|&v| v > 0)
            .map(Some)
            .ok_or_else(|| perr(self.line, format!("κ = {v} is not positive")))
    }

    /// Semisimple part of the expected restriction, laid out as in `e`.
    pub fn restriction_value(&self, e: &Embedding, vars: &Vars, lambda: &Weight) -> Result<Option<Vec<i64>>> {
        let spec = self.restriction.trim();
        if spec == "-" {
            return Ok(None);
        }
        let off = e.offsets();
        let mut out = vec![0i64; e.semisimple_dim()];
        for term in split_top(spec, ';') {
            let (range, body) = match term.split_once(':') {
                Some((r, b)) => (Some(parse_range(r, vars, self.line)?), b),
                None => (None, term),
            };
            let loop_vals: Vec<Option<(String, i64)>> = match range {
                Some((name, lo, hi)) => (lo..=hi).map(|v| Some((name.clone(), v))).collect(),
                None => vec![None],
            };
            for lv in loop_vals {
                let mut env = vars.clone();
                env.extend(lv);
                let parts = split_top(body, ',');
                if parts.len() != 3 {
                    return Err(perr(self.line, format!("bad restriction term '{body}'")));
                }
                let ev = |s: &str| with_line(self.line, eval_int_lambda(s, &env, &lambda.coeffs));
                let (f, j, c) = (ev(parts[0])?, ev(parts[1])?, ev(parts[2])?);
                if j <= 0 {
                    continue;
                }
                let f = usize::try_from(f - 1)
                    .ok()
                    .filter(|&f| f < e.factors.len())
                    .ok_or_else(|| perr(self.line, format!("factor {f} out of range for {}", e.label)))?;
                if j as usize > e.factors[f].rank {
                    return Err(perr(
                        self.line,
                        format!("ω index {j} out of range for factor {}", e.factors[f]),
                    ));
                }
                out[off[f] + j as usize - 1] += c;
            }
        }
        Ok(Some(out))
    }

    /// All bound entries up to `rank_cap` in characteristic p.
    pub fn instantiate(&self, rank_cap: usize, chi: Characteristic) -> Result<Vec<ClassificationEntry>> {
        let mut out = Vec::new();
        for ambient in self.ambients(rank_cap)? {
            for fam in family_instances(ambient) {
                let bindings = self.bindings(ambient, &fam, chi.p)?;
                if bindings.is_empty() {
                    continue;
                }
                let e = with_line(self.line, build_embedding(ambient, fam))?;
                for vars in bindings {
                    let kappa = self.kappa_value(&vars)?;
                    for lambda in self.weights(ambient, &vars, chi)? {
                        let restriction = self.restriction_value(&e, &vars, &lambda)?;
                        let vars: Vars = vars.iter().filter(|(k, _)| k != "p").cloned().collect();
                        out.push(ClassificationEntry {
                            id: format!("{}|{}|{}|{}", self.id, ambient, fam, lambda),
                            ambient,
                            family: fam,
                            lambda: lambda.clone(),
                            p_condition: self.p_condition.clone(),
                            vars,
                            expected_restriction: restriction,
                            expected_kappa: kappa,
                            source: self.id.clone(),
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Smallest rank covered by a rank-generic record.
pub fn min_rank(f: Family) -> usize {
    match f {
        Family::A => 1,
        Family::B => 3,
        Family::C => 2,
        Family::D => 4,
    }
}

impl TableFile {
    pub fn parse(text: &str) -> Result<TableFile> {
        let mut lines = Vec::new();
        for (i, l) in text.lines().enumerate() {
            if l.trim().is_empty() || l.starts_with('#') {
                lines.push(TableLine::Verbatim(l.to_string()));
            } else {
                lines.push(TableLine::Record(TableRecord::parse(l, i + 1)?));
            }
        }
        Ok(TableFile { lines })
    }

    pub fn serialize(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            match l {
                TableLine::Verbatim(v) => s.push_str(v),
                TableLine::Record(r) => s.push_str(&r.serialize()),
            }
            s.push('\n');
        }
        s
    }

    pub fn records(&self) -> impl Iterator<Item = &TableRecord> {
        self.lines.iter().filter_map(|l| match l {
            TableLine::Record(r) => Some(r),
            TableLine::Verbatim(_) => None,
        })
    }

    pub fn instantiate(&self, rank_cap: usize, chi: Characteristic) -> Result<Vec<ClassificationEntry>> {
        let mut out = Vec::new();
        for r in self.records() {
            out.extend(r.instantiate(rank_cap, chi)?);
        }
        Ok(out)
    }

    /// Weights with coefficient sum ≤ bound that the records list as
    /// irreducible for (ambient, fam) in characteristic p.
    pub fn expected_weights(
        &self,
        ambient: LieType,
        fam: &GeomFamily,
        chi: Characteristic,
        bound: i64,
    ) -> Result<BTreeSet<Weight>> {
        let mut out = BTreeSet::new();
        for r in self.records() {
            for vars in r.bindings(ambient, fam, chi.p)? {
                if !with_line(r.line, eval_bool(&r.p_condition, &vars))? {
                    continue;
                }
                for w in r.weights(ambient, &vars, chi)? {
                    if w.coeff_sum() <= bound && w.is_restricted(chi.p) && !w.is_zero() {
                        out.insert(w);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The shipped tables, by name.
pub const BUILTIN_TABLES: [(&str, &str); 5] = [
    ("table1", include_str!("../../data/table1.tsv")),
    ("c136", include_str!("../../data/c136.tsv")),
    ("c2", include_str!("../../data/c2.tsv")),
    ("c4i", include_str!("../../data/c4i.tsv")),
    ("c4ii", include_str!("../../data/c4ii.tsv")),
];

pub fn builtin(name: &str) -> Option<&'static str> {
    BUILTIN_TABLES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// The per-family tables carrying κ and restrictions.
pub fn family_tables() -> Result<Vec<TableFile>> {
    ["c136", "c2", "c4i", "c4ii"]
        .iter()
        .map(|n| TableFile::parse(builtin(n).expect("shipped table")))
        .collect()
}

pub fn main_table() -> Result<TableFile> {
    TableFile::parse(builtin("table1").expect("shipped table"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_respects_parens() {
        assert_eq!(split_top("1,1,if(l==1,2,1)", ','), vec!["1", "1", "if(l==1,2,1)"]);
    }

    #[test]
    fn record_round_trip() {
        let line = "x\tc2:Cl\tC\tt==2; a=0..2\tn-1:1;n:a\tp!=2\t2\t1,l,a+1;2,l-1,1";
        let r = TableRecord::parse(line, 1).unwrap();
        assert_eq!(r.serialize(), line);
        assert!(TableRecord::parse("a\tb", 3).is_err());
    }
}
