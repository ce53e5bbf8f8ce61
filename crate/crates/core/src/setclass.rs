//! Families of subsets of a small finite ground set, their complement,
//! union and intersection closures, and `𝒜`-semicontinuity of extended-real
//! functions.
//!
//! Subsets are bitmasks over the ground set. On a finite ground set countable
//! unions and intersections reduce to finite ones, so `𝒜_σ` and `𝒜_δ` are
//! finite fixpoints.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest ground set a family may live on.
pub const MAX_GROUND: usize = 16;
/// Largest ground set for the exhaustive identity checks.
pub const MAX_IDENTITY_GROUND: usize = 12;

pub type Subset = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SetFamily {
    ground: Vec<String>,
    members: Vec<Subset>,
}

impl SetFamily {
    pub fn new(ground: Vec<String>, members: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if ground.len() > MAX_GROUND {
            return Err(Error::Capacity { what: "ground set", size: ground.len(), limit: MAX_GROUND });
        }
        let unique: BTreeSet<&String> = ground.iter().collect();
        if unique.len() != ground.len() {
            return Err(Error::input("ground set has repeated elements"));
        }
        let full = full_mask(ground.len());
        let members: BTreeSet<Subset> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|&&m| m & !full != 0) {
            return Err(Error::input(format!("subset {bad:#b} is not contained in the ground set")));
        }
        Ok(Self { ground, members: members.into_iter().collect() })
    }

    /// Ground set `{0, …, n−1}` labelled by position.
    pub fn indexed(n: usize, members: impl IntoIterator<Item = Subset>) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), members)
    }

    pub fn power_set(ground: Vec<String>) -> Result<Self> {
        let n = ground.len();
        if n > MAX_GROUND {
            return Err(Error::Capacity { what: "ground set", size: n, limit: MAX_GROUND });
        }
        Self::new(ground, 0..=full_mask(n))
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn ground_len(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> Subset {
        full_mask(self.ground.len())
    }

    /// Members in increasing bitmask order.
    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn is_subfamily_of(&self, other: &Self) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    fn with_members(&self, members: impl IntoIterator<Item = Subset>) -> Self {
        let members: BTreeSet<Subset> = members.into_iter().collect();
        Self { ground: self.ground.clone(), members: members.into_iter().collect() }
    }

    /// Elements of `s` by label.
    pub fn labels(&self, s: Subset) -> Vec<&str> {
        (0..self.ground.len()).filter(|i| s >> i & 1 == 1).map(|i| self.ground[i].as_str()).collect()
    }

    pub fn format_subset(&self, s: Subset) -> String {
        if s == 0 {
            "{}".to_string()
        } else {
            self.labels(s).join(",")
        }
    }

    /// True when the family contains `∅` and the ground set and is closed
    /// under unions and intersections.
    pub fn is_topology(&self) -> bool {
        self.contains(0)
            && self.contains(self.full())
            && self.members.iter().all(|&a| self.members.iter().all(|&b| self.contains(a | b) && self.contains(a & b)))
    }

    /// Parses the text format: a `ground:` header listing the elements, then
    /// one subset per line as comma-separated elements, `{}` for the empty
    /// set. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or_else(|| Error::input("empty set family file"))?;
        let ground_list = header
            .strip_prefix("ground:")
            .ok_or_else(|| Error::Parse { line, message: "expected 'ground:' header".into() })?;
        let ground: Vec<String> = split_elements(ground_list);
        let mut members = Vec::new();
        for (line, l) in lines {
            let mut mask = 0;
            if l != "{}" {
                for e in split_elements(l) {
                    let i = ground
                        .iter()
                        .position(|g| *g == e)
                        .ok_or_else(|| Error::Parse { line, message: format!("unknown element '{e}'") })?;
                    mask |= 1 << i;
                }
            }
            members.push(mask);
        }
        Self::new(ground, members)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ground: {}", self.ground.join(","))?;
        for &m in &self.members {
            writeln!(f, "{}", self.format_subset(m))?;
        }
        Ok(())
    }
}

fn split_elements(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|e| !e.is_empty()).map(String::from).collect()
}

fn full_mask(n: usize) -> Subset {
    if n == 32 {
        Subset::MAX
    } else {
        (1 << n) - 1
    }
}

/// `𝒜_c`.
pub fn complements(f: &SetFamily) -> SetFamily {
    let full = f.full();
    f.with_members(f.members.iter().map(|&m| full & !m))
}

fn closure(f: &SetFamily, op: impl Fn(Subset, Subset) -> Subset) -> SetFamily {
    let mut all: BTreeSet<Subset> = f.members.iter().copied().collect();
    let mut frontier: Vec<Subset> = all.iter().copied().collect();
    while let Some(a) = frontier.pop() {
        let fresh: Vec<Subset> = all.iter().map(|&b| op(a, b)).filter(|c| !all.contains(c)).collect();
        for c in fresh {
            if all.insert(c) {
                frontier.push(c);
            }
        }
    }
    f.with_members(all)
}

/// `𝒜_σ`: closure under finite unions.
pub fn sigma_closure(f: &SetFamily) -> SetFamily {
    closure(f, |a, b| a | b)
}

/// `𝒜_δ`: closure under finite intersections.
pub fn delta_closure(f: &SetFamily) -> SetFamily {
    closure(f, |a, b| a & b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyIdentity {
    /// `𝒜_{cδc} = 𝒜_σ`
    CDeltaCIsSigma,
    /// `𝒜_{σc} = 𝒜_{cδ}`
    SigmaCIsCDelta,
    /// `𝒜_{δc} = 𝒜_{cσ}`
    DeltaCIsCSigma,
}

impl FamilyIdentity {
    pub const ALL: [FamilyIdentity; 3] =
        [FamilyIdentity::CDeltaCIsSigma, FamilyIdentity::SigmaCIsCDelta, FamilyIdentity::DeltaCIsCSigma];

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "cdc=s" | "cδc=σ" => Ok(Self::CDeltaCIsSigma),
            "sc=cd" | "σc=cδ" => Ok(Self::SigmaCIsCDelta),
            "dc=cs" | "δc=cσ" => Ok(Self::DeltaCIsCSigma),
            _ => Err(Error::input(format!("unknown identity '{s}'"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::CDeltaCIsSigma => "cδc=σ",
            Self::SigmaCIsCDelta => "σc=cδ",
            Self::DeltaCIsCSigma => "δc=cσ",
        }
    }

    fn sides(self, f: &SetFamily) -> (SetFamily, SetFamily) {
        match self {
            Self::CDeltaCIsSigma => (complements(&delta_closure(&complements(f))), sigma_closure(f)),
            Self::SigmaCIsCDelta => (complements(&sigma_closure(f)), delta_closure(&complements(f))),
            Self::DeltaCIsCSigma => (complements(&delta_closure(f)), sigma_closure(&complements(f))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub holds: bool,
    /// A set in exactly one of the two sides.
    pub counterexample: Option<Subset>,
}

pub fn verify_family_identity(f: &SetFamily, identity: FamilyIdentity) -> Result<IdentityOutcome> {
    if f.ground_len() > MAX_IDENTITY_GROUND {
        return Err(Error::Capacity { what: "ground set", size: f.ground_len(), limit: MAX_IDENTITY_GROUND });
    }
    let (lhs, rhs) = identity.sides(f);
    let counterexample = lhs
        .members
        .iter()
        .find(|&&m| !rhs.contains(m))
        .or_else(|| rhs.members.iter().find(|&&m| !lhs.contains(m)))
        .copied();
    Ok(IdentityOutcome { holds: counterexample.is_none(), counterexample })
}

/// An extended-real function on the ground set `{0, …, n−1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiniteField {
    values: Vec<f64>,
}

impl FiniteField {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::input("field values must not be NaN"));
        }
        if values.len() > MAX_GROUND {
            return Err(Error::Capacity { what: "ground set", size: values.len(), limit: MAX_GROUND });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self { values: self.values.iter().map(|v| -v).collect() }
    }

    pub fn preimage(&self, pred: impl Fn(f64) -> bool) -> Subset {
        self.values.iter().enumerate().filter(|(_, &v)| pred(v)).fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Real thresholds representing every distinct preimage `{f < γ}`,
    /// `{f ≤ γ}`, `{f > γ}`, `{f ≥ γ}` as `γ` ranges over `ℝ`: the finite
    /// values, midpoints between consecutive ones, and one point beyond each
    /// end.
    pub fn thresholds(&self) -> Vec<f64> {
        let mut finite: Vec<f64> = self.values.iter().copied().filter(|v| v.is_finite()).collect();
        finite.sort_by(f64::total_cmp);
        finite.dedup();
        let (Some(&lo), Some(&hi)) = (finite.first(), finite.last()) else {
            return vec![0.0];
        };
        let mut out = vec![lo - 1.0];
        for w in finite.windows(2) {
            out.push(w[0]);
            out.push(w[0] + (w[1] - w[0]) / 2.0);
        }
        out.push(hi);
        out.push(hi + 1.0);
        out
    }
}

fn check_len(f: &FiniteField, fam: &SetFamily) -> Result<()> {
    if f.len() != fam.ground_len() {
        return Err(Error::input(format!("field has {} values for a ground set of {}", f.len(), fam.ground_len())));
    }
    Ok(())
}

/// First threshold whose sublevel set `{f < γ}` is missing from the family.
fn upper_sc_witness(f: &FiniteField, fam: &SetFamily) -> Option<f64> {
    f.thresholds().into_iter().find(|&g| !fam.contains(f.preimage(|v| v < g)))
}

/// First threshold whose superlevel set `{f > γ}` is missing from the family.
fn lower_sc_witness(f: &FiniteField, fam: &SetFamily) -> Option<f64> {
    f.thresholds().into_iter().find(|&g| !fam.contains(f.preimage(|v| v > g)))
}

/// `f⁻¹[−∞, γ) ∈ 𝒜` for every real `γ`.
#[allow(non_snake_case)]
pub fn is_A_upper_sc(f: &FiniteField, fam: &SetFamily) -> Result<bool> {
    check_len(f, fam)?;
    Ok(upper_sc_witness(f, fam).is_none())
}

/// `f⁻¹(γ, +∞] ∈ 𝒜` for every real `γ`.
#[allow(non_snake_case)]
pub fn is_A_lower_sc(f: &FiniteField, fam: &SetFamily) -> Result<bool> {
    check_len(f, fam)?;
    Ok(lower_sc_witness(f, fam).is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Semicontinuity {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Conclusion {
    pub label: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

/// The four consequences of `𝒜`-upper semicontinuity (or, with
/// [`Semicontinuity::Lower`], of `𝒜`-lower semicontinuity), each verified
/// against the explicitly computed families.
pub fn check_duality_props(f: &FiniteField, fam: &SetFamily, mode: Semicontinuity) -> Result<Vec<Conclusion>> {
    check_len(f, fam)?;
    let fam_c = complements(fam);
    let fam_sigma = sigma_closure(fam);
    let fam_delta = delta_closure(fam);
    let fam_sigma_c = complements(&fam_sigma);
    let fam_delta_c = complements(&fam_delta);
    let fam_c_sigma = sigma_closure(&fam_c);

    let (hyp, ge, finite_side, infinite_side, opposite) = match mode {
        Semicontinuity::Upper => (
            upper_sc_witness(f, fam),
            Box::new(|v: f64, g: f64| v >= g) as Box<dyn Fn(f64, f64) -> bool>,
            f.preimage(|v| v < f64::INFINITY),
            f64::INFINITY,
            f64::NEG_INFINITY,
        ),
        Semicontinuity::Lower => (
            lower_sc_witness(f, fam),
            Box::new(|v: f64, g: f64| v <= g) as Box<dyn Fn(f64, f64) -> bool>,
            f.preimage(|v| v > f64::NEG_INFINITY),
            f64::NEG_INFINITY,
            f64::INFINITY,
        ),
    };
    if let Some(g) = hyp {
        let kind = match mode {
            Semicontinuity::Upper => "upper",
            Semicontinuity::Lower => "lower",
        };
        return Err(Error::input(format!(
            "hypothesis fails: field is not {kind} semicontinuous for the family (threshold {g})"
        )));
    }

    let thresholds = f.thresholds();
    let mut out = Vec::new();

    let bad = thresholds.iter().find(|&&g| !fam_c.contains(f.preimage(|v| ge(v, g))));
    out.push(Conclusion { label: "(i)", holds: bad.is_none(), witness: bad.map(|g| format!("threshold {g}")) });

    let inf_set = f.preimage(|v| v == infinite_side);
    let ok = fam_sigma.contains(finite_side) && fam_sigma_c.contains(inf_set);
    out.push(Conclusion { label: "(ii)", holds: ok, witness: (!ok).then(|| fam.format_subset(inf_set)) });

    let opp_set = f.preimage(|v| v == opposite);
    let ok = fam_delta.contains(opp_set) && fam_delta_c.contains(fam.full() & !opp_set);
    out.push(Conclusion { label: "(iii)", holds: ok, witness: (!ok).then(|| fam.format_subset(opp_set)) });

    let bad = match mode {
        Semicontinuity::Upper => lower_sc_witness(f, &fam_c_sigma),
        Semicontinuity::Lower => upper_sc_witness(f, &fam_c_sigma),
    };
    out.push(Conclusion { label: "(iv)", holds: bad.is_none(), witness: bad.map(|g| format!("threshold {g}")) });
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Extremum {
    Sup,
    Inf,
}

/// The pointwise supremum of `𝒜`-upper semicontinuous fields is
/// `𝒜_{cσ}`-lower semicontinuous; dually for infima of lower
/// semicontinuous fields.
pub fn check_sup_inf_props(fs: &[FiniteField], fam: &SetFamily, mode: Extremum) -> Result<bool> {
    let first = fs.first().ok_or_else(|| Error::input("need at least one field"))?;
    for (i, f) in fs.iter().enumerate() {
        check_len(f, fam)?;
        let ok = match mode {
            Extremum::Sup => upper_sc_witness(f, fam).is_none(),
            Extremum::Inf => lower_sc_witness(f, fam).is_none(),
        };
        if !ok {
            return Err(Error::input(format!("hypothesis fails for field {i}")));
        }
    }
    let values: Vec<f64> = (0..first.len())
        .map(|x| {
            let it = fs.iter().map(|f| f.values[x]);
            match mode {
                Extremum::Sup => it.fold(f64::NEG_INFINITY, f64::max),
                Extremum::Inf => it.fold(f64::INFINITY, f64::min),
            }
        })
        .collect();
    let g = FiniteField { values };
    let target = sigma_closure(&complements(fam));
    Ok(match mode {
        Extremum::Sup => lower_sc_witness(&g, &target).is_none(),
        Extremum::Inf => upper_sc_witness(&g, &target).is_none(),
    })
}

/// Every topology on `{0, …, n−1}`, via the bijection with preorders: the
/// open sets of a finite topology are the up-sets of its specialization
/// preorder.
pub fn all_topologies(n: usize) -> Result<Vec<SetFamily>> {
    const LIMIT: usize = 5;
    if n > LIMIT {
        return Err(Error::Capacity { what: "topology enumeration ground set", size: n, limit: LIMIT });
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        // above[i]: elements j with i ≤ j
        let mut above = vec![0 as Subset; n];
        for (i, a) in above.iter_mut().enumerate() {
            *a = 1 << i;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                above[i] |= 1 << j;
            }
        }
        let transitive = (0..n).all(|i| (0..n).filter(|&j| above[i] >> j & 1 == 1).all(|j| above[j] & !above[i] == 0));
        if !transitive {
            continue;
        }
        let opens = (0..=full_mask(n)).filter(|&u| (0..n).filter(|&i| u >> i & 1 == 1).all(|i| above[i] & !u == 0));
        out.push(SetFamily::indexed(n, opens)?);
    }
    Ok(out)
}

/// The topology generated by the given sets as a subbase.
pub fn generated_topology(n: usize, subbase: impl IntoIterator<Item = Subset>) -> Result<SetFamily> {
    let base = SetFamily::indexed(n, subbase.into_iter().chain([0, full_mask(n)]))?;
    Ok(sigma_closure(&delta_closure(&base)))
}

/// A random topology on `n` points generated by a few random subsets.
pub fn random_topology(n: usize, seed: u64) -> Result<SetFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(0..=n.max(1));
    let full = full_mask(n);
    generated_topology(n, (0..k).map(|_| rng.gen::<Subset>() & full).collect::<Vec<_>>())
}

/// A random family of subsets of `n` points.
pub fn random_family(n: usize, members: usize, seed: u64) -> Result<SetFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = full_mask(n);
    SetFamily::indexed(n, (0..members).map(|_| rng.gen::<Subset>() & full).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(elems: &[usize]) -> Subset {
        elems.iter().fold(0, |m, &e| m | 1 << e)
    }

    fn fam3(members: &[&[usize]]) -> SetFamily {
        SetFamily::new(vec!["1".into(), "2".into(), "3".into()], members.iter().map(|m| s(m))).unwrap()
    }

    #[test]
    fn complements_of_small_family() {
        let f = fam3(&[&[], &[0]]);
        assert_eq!(complements(&f), fam3(&[&[0, 1, 2], &[1, 2]]));
        assert_eq!(complements(&complements(&f)), f);
        let p = SetFamily::power_set(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(complements(&p), p);
    }

    #[test]
    fn sigma_and_delta_examples() {
        let f = fam3(&[&[0], &[1]]);
        assert_eq!(sigma_closure(&f), fam3(&[&[0], &[1], &[0, 1]]));
        assert_eq!(sigma_closure(&sigma_closure(&f)), sigma_closure(&f));
        let g = fam3(&[&[0, 1], &[1, 2]]);
        assert_eq!(delta_closure(&g), fam3(&[&[0, 1], &[1, 2], &[1]]));
        assert_eq!(delta_closure(&g), complements(&sigma_closure(&complements(&g))));
    }

    #[test]
    fn identities_on_chain_topology() {
        let t = fam3(&[&[], &[0], &[0, 1], &[0, 1, 2]]);
        assert!(t.is_topology());
        for id in FamilyIdentity::ALL {
            assert!(verify_family_identity(&t, id).unwrap().holds);
        }
    }

    #[test]
    fn identity_capacity_limit() {
        let f = SetFamily::indexed(13, [1, 2]).unwrap();
        assert!(matches!(verify_family_identity(&f, FamilyIdentity::CDeltaCIsSigma), Err(Error::Capacity { .. })));
    }

    #[test]
    fn subsets_must_fit_the_ground() {
        assert!(SetFamily::indexed(2, [0b100]).is_err());
        assert!(SetFamily::indexed(17, []).is_err());
    }

    #[test]
    fn upper_sc_threshold_examples() {
        let ind = FiniteField::new(vec![1.0, 0.0]).unwrap();
        let good = SetFamily::new(vec!["1".into(), "2".into()], [0, s(&[1]), s(&[0, 1])]).unwrap();
        assert!(is_A_upper_sc(&ind, &good).unwrap());
        let bad = SetFamily::new(vec!["1".into(), "2".into()], [0, s(&[0, 1])]).unwrap();
        assert!(!is_A_upper_sc(&ind, &bad).unwrap());
        let c = FiniteField::new(vec![2.0, 2.0]).unwrap();
        assert!(is_A_upper_sc(&c, &bad).unwrap());
    }

    #[test]
    fn constant_infinite_fields() {
        let t = fam3(&[&[], &[0], &[0, 1, 2]]);
        let plus = FiniteField::new(vec![f64::INFINITY; 3]).unwrap();
        let r = check_duality_props(&plus, &t, Semicontinuity::Upper).unwrap();
        assert!(r.iter().all(|c| c.holds));
        let minus = FiniteField::new(vec![f64::NEG_INFINITY; 3]).unwrap();
        let r = check_duality_props(&minus, &t, Semicontinuity::Upper).unwrap();
        assert!(r.iter().all(|c| c.holds));
    }

    #[test]
    fn duality_requires_hypothesis() {
        let t = fam3(&[&[], &[0, 1, 2]]);
        let f = FiniteField::new(vec![0.0, 1.0, 1.0]).unwrap();
        assert!(check_duality_props(&f, &t, Semicontinuity::Upper).is_err());
        assert!(check_sup_inf_props(&[f], &t, Extremum::Sup).is_err());
    }

    #[test]
    fn sup_of_two_indicators() {
        let t = fam3(&[&[], &[0], &[1], &[0, 1], &[0, 1, 2]]);
        // indicators of closed sets are upper semicontinuous
        let a = FiniteField::new(vec![0.0, 1.0, 1.0]).unwrap();
        let b = FiniteField::new(vec![1.0, 0.0, 1.0]).unwrap();
        assert!(check_sup_inf_props(&[a.clone(), b.clone()], &t, Extremum::Sup).unwrap());
        let single = check_sup_inf_props(std::slice::from_ref(&a), &t, Extremum::Sup).unwrap();
        let iv = check_duality_props(&a, &t, Semicontinuity::Upper).unwrap()[3].holds;
        assert_eq!(single, iv);
    }

    #[test]
    fn topology_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| all_topologies(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
        assert!(all_topologies(3).unwrap().iter().all(SetFamily::is_topology));
    }

    #[test]
    fn random_topologies_are_topologies() {
        for seed in 0..20 {
            assert!(random_topology(4, seed).unwrap().is_topology());
        }
    }

    #[test]
    fn text_round_trip() {
        let f = SetFamily::new(vec!["a".into(), "b".into(), "c".into()], [0, s(&[0, 2]), s(&[1])]).unwrap();
        let text = f.to_string();
        assert_eq!(SetFamily::parse(&text).unwrap(), f);
        let g = SetFamily::parse("# comment\nground: x, y\n{}\nx\n\ny,x\n").unwrap();
        assert_eq!(g.members(), &[0, 1, 3]);
        assert!(SetFamily::parse("ground: x\nz\n").is_err());
        assert!(SetFamily::parse("x,y\n").is_err());
    }

    #[test]
    fn thresholds_cover_all_levels() {
        let f = FiniteField::new(vec![f64::NEG_INFINITY, 0.0, 1.0, f64::INFINITY]).unwrap();
        assert_eq!(f.thresholds(), vec![-1.0, 0.0, 0.5, 1.0, 2.0]);
        assert_eq!(FiniteField::new(vec![f64::INFINITY]).unwrap().thresholds(), vec![0.0]);
    }
}
