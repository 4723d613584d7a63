//! Shared-feature decomposition across domains: exact groups (features
//! common to exactly one subset of domains) and cumulative counts
//! (features common to a subset including those inherited from supersets).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{FeatureSet, Result, SelectionError};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SharedGroup {
    pub subset: BTreeSet<String>,
    pub exact_features: BTreeSet<String>,
    pub n: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SharedFeatureTable {
    pub domains: Vec<String>,
    /// Groups with at least two domains and a non-empty exact feature set,
    /// largest subsets first.
    pub groups: Vec<SharedGroup>,
    sets: BTreeMap<String, BTreeSet<String>>,
}

/// Decompose per-domain feature sets into exact-subset groups. A feature
/// common to exactly the domains of S lands in S's group; subsets with no
/// exact features are omitted (their CC stays queryable).
pub fn shared_features(sets: &[FeatureSet]) -> Result<SharedFeatureTable> {
    if sets.len() < 2 {
        return Err(SelectionError::TooFewDomains(sets.len()));
    }
    let mut by_domain: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut domains = Vec::new();
    for fs in sets {
        if by_domain.contains_key(&fs.domain) {
            return Err(SelectionError::DuplicateDomain(fs.domain.clone()));
        }
        domains.push(fs.domain.clone());
        by_domain.insert(fs.domain.clone(), fs.name_set());
    }

    // Membership map: feature -> set of domains containing it.
    let mut membership: BTreeMap<&str, BTreeSet<String>> = BTreeMap::new();
    for (domain, names) in &by_domain {
        for name in names {
            membership
                .entry(name.as_str())
                .or_default()
                .insert(domain.clone());
        }
    }
    let mut groups_map: BTreeMap<BTreeSet<String>, BTreeSet<String>> = BTreeMap::new();
    for (feature, doms) in membership {
        if doms.len() >= 2 {
            groups_map.entry(doms).or_default().insert(feature.to_string());
        }
    }
    let mut groups: Vec<SharedGroup> = groups_map
        .into_iter()
        .map(|(subset, exact_features)| SharedGroup {
            n: exact_features.len(),
            subset,
            exact_features,
        })
        .collect();
    groups.sort_by(|a, b| {
        b.subset
            .len()
            .cmp(&a.subset.len())
            .then_with(|| a.subset.cmp(&b.subset))
    });
    Ok(SharedFeatureTable {
        domains,
        groups,
        sets: by_domain,
    })
}

impl SharedFeatureTable {
    /// CC(S): number of features common to every domain of S, including
    /// features inherited from supersets of S.
    pub fn cc(&self, subset: &BTreeSet<String>) -> usize {
        let mut iter = subset.iter();
        let Some(first) = iter.next() else { return 0 };
        let Some(mut acc) = self.sets.get(first).cloned() else {
            return 0;
        };
        for domain in iter {
            match self.sets.get(domain) {
                Some(s) => acc = acc.intersection(s).cloned().collect(),
                None => return 0,
            }
        }
        acc.len()
    }

    /// CC by summing exact group sizes over supersets.
    fn cc_by_group_sums(&self, subset: &BTreeSet<String>) -> usize {
        self.groups
            .iter()
            .filter(|g| subset.is_subset(&g.subset))
            .map(|g| g.n)
            .sum()
    }

    /// Markdown table in the `Subset | N | Common Features | CC` layout;
    /// the full-domain subset renders as "All".
    pub fn to_markdown(&self) -> String {
        let all: BTreeSet<String> = self.domains.iter().cloned().collect();
        let mut out = String::from("| Subset | N | Common Features | CC |\n|---|---|---|---|\n");
        for group in &self.groups {
            let subset = if group.subset == all {
                "All".to_string()
            } else {
                group
                    .subset
                    .iter()
                    .cloned()
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let features = group
                .exact_features
                .iter()
                .cloned()
                .collect::<Vec<_>>()
                .join(", ");
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                subset,
                group.n,
                features,
                self.cc(&group.subset)
            ));
        }
        out
    }
}

/// CC for every group subset, computed two independent ways (direct
/// intersection and superset group sums) which must agree.
pub fn cumulative_counts(table: &SharedFeatureTable) -> Result<BTreeMap<BTreeSet<String>, usize>> {
    let mut out = BTreeMap::new();
    for group in &table.groups {
        let direct = table.cc(&group.subset);
        let by_sum = table.cc_by_group_sums(&group.subset);
        if direct != by_sum {
            return Err(SelectionError::CcMismatch {
                subset: group.subset.iter().cloned().collect(),
                by_sum,
                by_intersection: direct,
            });
        }
        out.insert(group.subset.clone(), direct);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(domain: &str, names: &[&str]) -> FeatureSet {
        FeatureSet::new(domain, names.iter().map(|s| s.to_string()).collect())
    }

    fn subset(domains: &[&str]) -> BTreeSet<String> {
        domains.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn simple_three_domain_case() {
        // A={a,b}, B={a,c}, C={a} -> exact(All)={a}, exact(A,B) empty, CC(A,B)=1.
        let table = shared_features(&[fs("A", &["a", "b"]), fs("B", &["a", "c"]), fs("C", &["a"])]).unwrap();
        assert_eq!(table.groups.len(), 1);
        assert_eq!(table.groups[0].subset, subset(&["A", "B", "C"]));
        assert_eq!(table.groups[0].n, 1);
        assert_eq!(table.cc(&subset(&["A", "B"])), 1);
        let cc = cumulative_counts(&table).unwrap();
        assert_eq!(cc[&subset(&["A", "B", "C"])], 1);
    }

    #[test]
    fn exact_groups_partition_pairwise_shared() {
        let table = shared_features(&[
            fs("A", &["x", "y", "z", "only_a"]),
            fs("B", &["x", "y", "w"]),
            fs("C", &["x", "z", "w"]),
        ])
        .unwrap();
        // Every feature shared by >= 2 domains appears in exactly one group.
        let mut seen = BTreeSet::new();
        for g in &table.groups {
            for f in &g.exact_features {
                assert!(seen.insert(f.clone()), "{f} appeared twice");
            }
        }
        assert_eq!(seen, subset(&["w", "x", "y", "z"]));
        // Unique features never appear.
        assert!(!seen.contains("only_a"));
    }

    #[test]
    fn cc_identity_holds() {
        let table = shared_features(&[
            fs("A", &["x", "y", "z", "q"]),
            fs("B", &["x", "y", "w", "q"]),
            fs("C", &["x", "z", "w"]),
            fs("D", &["x", "q"]),
        ])
        .unwrap();
        let cc = cumulative_counts(&table).unwrap();
        for (s, &count) in &cc {
            assert_eq!(count, table.cc(s));
        }
        // CC(A,B) = |{x,y,q}| = 3.
        assert_eq!(table.cc(&subset(&["A", "B"])), 3);
    }

    #[test]
    fn single_group_table() {
        let table = shared_features(&[fs("A", &["k1", "k2"]), fs("B", &["k1", "k2"])]).unwrap();
        assert_eq!(table.groups.len(), 1);
        assert_eq!(table.groups[0].n, 2);
        // CC of every queried subset equals k.
        assert_eq!(table.cc(&subset(&["A"])), 2);
        assert_eq!(table.cc(&subset(&["A", "B"])), 2);
    }

    #[test]
    fn duplicate_domain_rejected() {
        let err = shared_features(&[fs("A", &["x"]), fs("A", &["y"])]).unwrap_err();
        assert!(matches!(err, SelectionError::DuplicateDomain(_)));
    }

    #[test]
    fn markdown_layout() {
        let table = shared_features(&[
            fs("F", &["and", "you"]),
            fs("J", &["and", "you"]),
            fs("P", &["and"]),
        ])
        .unwrap();
        let md = table.to_markdown();
        assert!(md.starts_with("| Subset | N | Common Features | CC |"));
        assert!(md.contains("| All | 1 | and | 1 |"));
        assert!(md.contains("| F, J | 1 | you | 2 |"));
    }
}
