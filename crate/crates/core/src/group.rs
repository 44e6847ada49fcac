//! Matchings between finite subsets of abelian groups: bijections φ: A → B with
//! a + φ(a) ∉ A, found by augmenting paths on the bipartite graph of allowed pairs.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Only the two extremes of the matching-property dichotomy are modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    /// Z_n, elements are residues `[r]` with 0 ≤ r < n.
    Cyclic(u64),
    /// Z^d, elements are integer d-tuples.
    FreeAbelian(usize),
}

pub type GroupElement = Vec<i64>;

impl GroupDescriptor {
    pub fn identity(&self) -> GroupElement {
        match *self {
            GroupDescriptor::Cyclic(_) => vec![0],
            GroupDescriptor::FreeAbelian(d) => vec![0; d],
        }
    }

    pub fn op(&self, a: &[i64], b: &[i64]) -> GroupElement {
        match *self {
            GroupDescriptor::Cyclic(n) => vec![(a[0] + b[0]).rem_euclid(n as i64)],
            GroupDescriptor::FreeAbelian(_) => a.iter().zip(b).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn is_element(&self, x: &[i64]) -> bool {
        match *self {
            GroupDescriptor::Cyclic(n) => x.len() == 1 && (0..n as i64).contains(&x[0]),
            GroupDescriptor::FreeAbelian(d) => x.len() == d,
        }
    }

    /// Elements scanned by [`matching_property_scan`]: all of Z_n, or the box
    /// [-radius, radius]^d of Z^d.
    pub fn scan_universe(&self, radius: i64) -> Vec<GroupElement> {
        match *self {
            GroupDescriptor::Cyclic(n) => (0..n as i64).map(|r| vec![r]).collect(),
            GroupDescriptor::FreeAbelian(d) => {
                let mut out = vec![Vec::new()];
                for _ in 0..d {
                    out = out
                        .into_iter()
                        .flat_map(|v: Vec<i64>| {
                            (-radius..=radius).map(move |x| {
                                let mut w = v.clone();
                                w.push(x);
                                w
                            })
                        })
                        .collect();
                }
                out
            }
        }
    }

    pub fn element_json(&self, x: &[i64]) -> Value {
        match self {
            GroupDescriptor::Cyclic(_) => Value::from(x[0]),
            GroupDescriptor::FreeAbelian(_) => Value::from(x.to_vec()),
        }
    }

    /// Whether the group has the matching property (torsion-free, or cyclic of prime order).
    pub fn has_matching_property(&self) -> bool {
        match *self {
            GroupDescriptor::Cyclic(n) => crate::fp::is_prime(n),
            GroupDescriptor::FreeAbelian(_) => true,
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic(n) => write!(f, "Z{n}"),
            GroupDescriptor::FreeAbelian(d) => write!(f, "Z^{d}"),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    /// `Z5` for a cyclic group, `Z^2` for a free abelian group.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("unrecognized group {s:?}"));
        let rest = s.strip_prefix('Z').ok_or_else(bad)?;
        if let Some(d) = rest.strip_prefix('^') {
            let d: usize = d.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(GroupDescriptor::FreeAbelian(d))
        } else {
            let n: u64 = rest.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(GroupDescriptor::Cyclic(n))
        }
    }
}

/// A finite subset in sorted order without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    elements: Vec<GroupElement>,
}

impl GroupSubset {
    pub fn new(group: &GroupDescriptor, mut elements: Vec<GroupElement>) -> Result<Self> {
        if let Some(x) = elements.iter().find(|x| !group.is_element(x)) {
            return Err(Error::Invalid(format!(
                "{x:?} is not an element of {group}"
            )));
        }
        elements.sort();
        elements.dedup();
        Ok(GroupSubset { elements })
    }

    /// Residues of a cyclic group.
    pub fn residues(group: &GroupDescriptor, rs: &[i64]) -> Result<Self> {
        Self::new(group, rs.iter().map(|&r| vec![r]).collect())
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.elements
            .binary_search_by(|e| e.as_slice().cmp(x))
            .is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupMatching {
    /// Pairs (a, φ(a)) in the sorted order of A.
    Matching(Vec<(GroupElement, GroupElement)>),
    /// S ⊂ A whose allowed partners N(S) ⊂ B number fewer than |S|.
    Deficient {
        subset: Vec<GroupElement>,
        neighborhood: Vec<GroupElement>,
    },
}

impl GroupMatching {
    pub fn is_matching(&self) -> bool {
        matches!(self, GroupMatching::Matching(_))
    }
}

/// Augmenting-path search (Kuhn) for a perfect matching with a·φ(a) ∉ A.
pub fn find_matching(
    a: &GroupSubset,
    b: &GroupSubset,
    group: &GroupDescriptor,
) -> Result<GroupMatching> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len();
    let adj: Vec<Vec<usize>> = a
        .elements
        .iter()
        .map(|x| {
            (0..n)
                .filter(|&j| !a.contains(&group.op(x, &b.elements[j])))
                .collect()
        })
        .collect();

    let mut match_b: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        let mut seen_b = vec![false; n];
        let mut seen_a = vec![false; n];
        if !augment(u, &adj, &mut match_b, &mut seen_a, &mut seen_b) {
            // The alternating tree rooted at u is Hall-deficient.
            let subset = (0..n)
                .filter(|&i| seen_a[i])
                .map(|i| a.elements[i].clone())
                .collect();
            let neighborhood = (0..n)
                .filter(|&j| seen_b[j])
                .map(|j| b.elements[j].clone())
                .collect();
            return Ok(GroupMatching::Deficient {
                subset,
                neighborhood,
            });
        }
    }
    let mut phi: Vec<Option<usize>> = vec![None; n];
    for (j, m) in match_b.iter().enumerate() {
        phi[m.expect("perfect")] = Some(j);
    }
    let pairs: Vec<(GroupElement, GroupElement)> = phi
        .into_iter()
        .enumerate()
        .map(|(i, j)| (a.elements[i].clone(), b.elements[j.unwrap()].clone()))
        .collect();
    debug_assert!(pairs.iter().all(|(x, y)| !a.contains(&group.op(x, y))));
    Ok(GroupMatching::Matching(pairs))
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_b: &mut [Option<usize>],
    seen_a: &mut [bool],
    seen_b: &mut [bool],
) -> bool {
    seen_a[u] = true;
    for &v in &adj[u] {
        if seen_b[v] {
            continue;
        }
        seen_b[v] = true;
        let free = match match_b[v] {
            None => true,
            Some(w) => augment(w, adj, match_b, seen_a, seen_b),
        };
        if free {
            match_b[v] = Some(u);
            return true;
        }
    }
    false
}

/// A pair (A, B) with |A| = |B| and identity ∉ B admitting no matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCounterexample {
    pub group: GroupDescriptor,
    pub a: GroupSubset,
    pub b: GroupSubset,
}

impl Serialize for GroupCounterexample {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            group: String,
            #[serde(rename = "A")]
            a: Vec<Value>,
            #[serde(rename = "B")]
            b: Vec<Value>,
            matching: Option<()>,
        }
        let enc = |set: &GroupSubset| {
            set.elements
                .iter()
                .map(|x| self.group.element_json(x))
                .collect()
        };
        Repr {
            group: self.group.to_string(),
            a: enc(&self.a),
            b: enc(&self.b),
            matching: None,
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupScanReport {
    pub group: String,
    pub max_size: usize,
    pub pairs_checked: u64,
    pub pairs_matched: u64,
    pub first_counterexample: Option<GroupCounterexample>,
    pub self_checked: u64,
    pub self_failures: u64,
    pub first_self_failure: Option<GroupCounterexample>,
}

impl GroupScanReport {
    pub fn has_counterexample(&self) -> bool {
        self.first_counterexample.is_some()
    }
}

fn n_choose(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn subsets_of_size(universe: &[GroupElement], size: usize) -> Vec<Vec<GroupElement>> {
    crate::matching::subsets_by_size(universe.len())
        .skip_while(|s| s.len() < size)
        .take_while(|s| s.len() == size)
        .map(|s| s.into_iter().map(|i| universe[i].clone()).collect())
        .collect()
}

/// Checks every (A, B) with |A| = |B| ≤ `max_size` and identity ∉ B inside the scan
/// universe, and every B-to-B matching for B without identity.
pub fn matching_property_scan(
    group: &GroupDescriptor,
    max_size: usize,
    radius: i64,
    cap: u128,
) -> Result<GroupScanReport> {
    let universe = group.scan_universe(radius);
    let id = group.identity();
    let nonid: Vec<GroupElement> = universe.iter().filter(|x| **x != id).cloned().collect();
    let predicted: u128 = (1..=max_size)
        .map(|s| n_choose(universe.len(), s) * n_choose(nonid.len(), s))
        .sum();
    if predicted > cap {
        return Err(Error::GuardExceeded { predicted, cap });
    }

    let mut report = GroupScanReport {
        group: group.to_string(),
        max_size,
        pairs_checked: 0,
        pairs_matched: 0,
        first_counterexample: None,
        self_checked: 0,
        self_failures: 0,
        first_self_failure: None,
    };
    for size in 1..=max_size {
        let a_sets: Vec<GroupSubset> = subsets_of_size(&universe, size)
            .into_iter()
            .map(|s| GroupSubset::new(group, s))
            .collect::<Result<_>>()?;
        let b_sets: Vec<GroupSubset> = subsets_of_size(&nonid, size)
            .into_iter()
            .map(|s| GroupSubset::new(group, s))
            .collect::<Result<_>>()?;
        for a in &a_sets {
            for b in &b_sets {
                report.pairs_checked += 1;
                if find_matching(a, b, group)?.is_matching() {
                    report.pairs_matched += 1;
                } else if report.first_counterexample.is_none() {
                    report.first_counterexample = Some(GroupCounterexample {
                        group: *group,
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
        for b in &b_sets {
            report.self_checked += 1;
            if !find_matching(b, b, group)?.is_matching() {
                report.self_failures += 1;
                if report.first_self_failure.is_none() {
                    report.first_self_failure = Some(GroupCounterexample {
                        group: *group,
                        a: b.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> GroupDescriptor {
        GroupDescriptor::Cyclic(n)
    }

    #[test]
    fn z5_example() {
        let g = z(5);
        let a = GroupSubset::residues(&g, &[1, 2]).unwrap();
        let b = GroupSubset::residues(&g, &[1, 3]).unwrap();
        assert_eq!(
            find_matching(&a, &b, &g).unwrap(),
            GroupMatching::Matching(vec![(vec![1], vec![3]), (vec![2], vec![1])])
        );
    }

    #[test]
    fn z4_example_is_deficient() {
        let g = z(4);
        let a = GroupSubset::residues(&g, &[0, 2]).unwrap();
        let b = GroupSubset::residues(&g, &[1, 2]).unwrap();
        let GroupMatching::Deficient {
            subset,
            neighborhood,
        } = find_matching(&a, &b, &g).unwrap()
        else {
            panic!("expected no matching")
        };
        assert!(neighborhood.len() < subset.len());
        assert_eq!(neighborhood, vec![vec![1]]);
    }

    #[test]
    fn identity_in_b_blocks() {
        let g = z(7);
        let a = GroupSubset::residues(&g, &[1, 2, 4]).unwrap();
        let b = GroupSubset::residues(&g, &[0, 3, 5]).unwrap();
        assert!(!find_matching(&a, &b, &g).unwrap().is_matching());
        let c = GroupSubset::residues(&g, &[1]).unwrap();
        assert!(matches!(
            find_matching(&a, &c, &g),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn parse_groups() {
        assert_eq!("Z4".parse::<GroupDescriptor>().unwrap(), z(4));
        assert_eq!(
            "Z^2".parse::<GroupDescriptor>().unwrap(),
            GroupDescriptor::FreeAbelian(2)
        );
        assert!("Q8".parse::<GroupDescriptor>().is_err());
        assert!("Z0".parse::<GroupDescriptor>().is_err());
    }

    #[test]
    fn scans() {
        let r5 = matching_property_scan(&z(5), 3, 0, 1 << 20).unwrap();
        assert!(!r5.has_counterexample());
        let r4 = matching_property_scan(&z(4), 2, 0, 1 << 20).unwrap();
        assert!(r4.has_counterexample());
        let r6 = matching_property_scan(&z(6), 3, 0, 1 << 20).unwrap();
        assert_eq!(r6.self_failures, 0);
        assert!(r6.self_checked > 0);
        let free = matching_property_scan(&GroupDescriptor::FreeAbelian(1), 2, 2, 1 << 20).unwrap();
        assert!(!free.has_counterexample());
    }

    #[test]
    fn counterexample_json() {
        let g = z(4);
        let c = GroupCounterexample {
            group: g,
            a: GroupSubset::residues(&g, &[0, 2]).unwrap(),
            b: GroupSubset::residues(&g, &[1, 2]).unwrap(),
        };
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"group":"Z4","A":[0,2],"B":[1,2],"matching":null}"#
        );
    }
}
