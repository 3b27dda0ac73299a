//! The truncated poset of finite p-groups up to isomorphism, ordered by
//! embedding, and its lattice of closed (subgroup-closed) subsets.
//!
//! Every lattice predicate here is relative to the truncation: a catalog only
//! knows the p-groups up to its order bound.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{embeds, is_isomorphic, is_p_power, is_prime, Perm, PermGroup};

const BUNDLED: &str = include_str!("../data/pgroups.json");

/// Closed-set enumeration refuses catalogs larger than this by default.
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

/// One record of the p-group dataset file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetEntry {
    pub p: u64,
    pub order: usize,
    pub label: String,
    pub degree: usize,
    pub generators: Vec<Vec<u64>>,
}

impl DatasetEntry {
    pub fn build(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| Perm::from_one_based(g, self.degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(PermGroup::from_generators(self.degree, gens)?.named(self.label.clone()))
    }
}

/// The dataset shipped with the crate.
pub fn bundled_dataset() -> Result<&'static [DatasetEntry]> {
    static DATA: OnceLock<std::result::Result<Vec<DatasetEntry>, String>> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(BUNDLED).map_err(|e| e.to_string()))
        .as_deref()
        .map_err(|e| Error::ValidationFailed(format!("bundled dataset: {e}")))
}

pub fn load_dataset(path: &std::path::Path) -> Result<Vec<DatasetEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::ValidationFailed(format!("{}: {e}", path.display())))
}

/// Largest order the dataset covers for `p`, if any.
pub fn dataset_bound(dataset: &[DatasetEntry], p: u64) -> Option<usize> {
    dataset.iter().filter(|e| e.p == p).map(|e| e.order).max()
}

/// Order bound used when none is given: everything the bundled dataset has
/// for `p`.
pub fn default_max_order(p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    dataset_bound(bundled_dataset()?, p).ok_or(Error::DatasetMissing { p, max_order: 0 })
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub label: String,
    pub group: PermGroup,
    pub dataset_index: usize,
}

/// p-groups of order at most `max_order`, pairwise non-isomorphic, sorted by
/// order then dataset index, with their embedding relation.
#[derive(Debug)]
pub struct PGroupCatalog {
    p: u64,
    max_order: usize,
    entries: Vec<CatalogEntry>,
    /// `embed[i][j]` iff entry `i` is isomorphic to a subgroup of entry `j`.
    embed: Vec<Vec<bool>>,
}

/// Builds the catalog for `p` from the bundled dataset.
pub fn build_catalog(p: u64, max_order: usize) -> Result<PGroupCatalog> {
    build_catalog_from(bundled_dataset()?, p, max_order)
}

/// Builds and validates the catalog for `p` from an arbitrary dataset.
pub fn build_catalog_from(
    dataset: &[DatasetEntry],
    p: u64,
    max_order: usize,
) -> Result<PGroupCatalog> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let missing = Error::DatasetMissing {
        p,
        max_order: max_order as u64,
    };
    match dataset_bound(dataset, p) {
        Some(b) if max_order >= 1 && max_order <= b => {}
        _ => return Err(missing),
    }
    let mut picked: Vec<(usize, &DatasetEntry)> = dataset
        .iter()
        .enumerate()
        .filter(|(_, e)| e.p == p && e.order <= max_order)
        .collect();
    picked.sort_by_key(|&(i, e)| (e.order, i));

    let mut entries = Vec::with_capacity(picked.len());
    for (i, e) in picked {
        let group = e
            .build()
            .map_err(|err| Error::ValidationFailed(format!("entry {}: {err}", e.label)))?;
        if group.order() != e.order {
            return Err(Error::ValidationFailed(format!(
                "entry {} declares order {} but generates a group of order {}",
                e.label,
                e.order,
                group.order()
            )));
        }
        if !is_p_power(e.order as u64, p) {
            return Err(Error::ValidationFailed(format!(
                "entry {} has order {} which is not a power of {p}",
                e.label, e.order
            )));
        }
        entries.push(CatalogEntry {
            label: e.label.clone(),
            group,
            dataset_index: i,
        });
    }
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let (a, b) = (&entries[i], &entries[j]);
            if a.group.order() == b.group.order() && is_isomorphic(&a.group, &b.group)? {
                return Err(Error::ValidationFailed(format!(
                    "entries {} and {} are isomorphic",
                    a.label, b.label
                )));
            }
        }
    }
    if entries.first().map(|e| e.group.order()) != Some(1) {
        return Err(Error::ValidationFailed("no trivial group entry".into()));
    }
    if max_order >= p as usize && entries.get(1).map(|e| e.group.order()) != Some(p as usize) {
        return Err(Error::ValidationFailed(format!("no cyclic group of order {p}")));
    }

    let n = entries.len();
    let mut embed = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            embed[i][j] = i == j || embeds(&entries[i].group, &entries[j].group)?;
        }
    }
    Ok(PGroupCatalog {
        p,
        max_order,
        entries,
        embed,
    })
}

impl PGroupCatalog {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &CatalogEntry {
        &self.entries[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.entries[i].label
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.label == label)
    }

    /// Entry `i` is isomorphic to a subgroup of entry `j`.
    pub fn embeds(&self, i: usize, j: usize) -> bool {
        self.embed[i][j]
    }

    pub fn embed_matrix(&self) -> &[Vec<bool>] {
        &self.embed
    }

    /// Catalog index of the entry isomorphic to `g`, if any.
    pub fn find(&self, g: &PermGroup) -> Result<Option<usize>> {
        for (i, e) in self.entries.iter().enumerate() {
            if e.group.order() == g.order() && is_isomorphic(&e.group, g)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn empty_set(&self) -> ClosedSet<'_> {
        ClosedSet {
            catalog: self,
            members: vec![false; self.len()],
        }
    }

    pub fn full_set(&self) -> ClosedSet<'_> {
        ClosedSet {
            catalog: self,
            members: vec![true; self.len()],
        }
    }

    /// All entries isomorphic to a subgroup of entry `i`.
    pub fn down_set(&self, i: usize) -> ClosedSet<'_> {
        ClosedSet {
            catalog: self,
            members: (0..self.len()).map(|k| self.embed[k][i]).collect(),
        }
    }

    /// All entries isomorphic to a proper subgroup of entry `i`.
    pub fn strict_down_set(&self, i: usize) -> ClosedSet<'_> {
        let mut s = self.down_set(i);
        s.members[i] = false;
        s
    }

    /// Smallest closed set containing the given entries.
    pub fn closure(&self, indices: &[usize]) -> ClosedSet<'_> {
        ClosedSet {
            catalog: self,
            members: (0..self.len())
                .map(|k| indices.iter().any(|&j| self.embed[k][j]))
                .collect(),
        }
    }

    /// Every closed subset, in a fixed order: entries are decided in catalog
    /// order, exclusion before inclusion.
    pub fn enumerate_closed_sets(&self, bound: usize) -> Result<Vec<ClosedSet<'_>>> {
        if self.len() > bound {
            return Err(Error::EnumerationBoundExceeded {
                entries: self.len(),
                bound,
            });
        }
        let mut out = Vec::new();
        let mut members = vec![false; self.len()];
        self.enumerate_rec(0, &mut members, &mut out);
        Ok(out)
    }

    fn enumerate_rec<'a>(&'a self, i: usize, members: &mut Vec<bool>, out: &mut Vec<ClosedSet<'a>>) {
        if i == self.len() {
            out.push(ClosedSet {
                catalog: self,
                members: members.clone(),
            });
            return;
        }
        self.enumerate_rec(i + 1, members, out);
        // entries embedding into i come earlier in the catalog order
        if (0..i).all(|k| !self.embed[k][i] || members[k]) {
            members[i] = true;
            self.enumerate_rec(i + 1, members, out);
            members[i] = false;
        }
    }
}

/// A subgroup-closed subset of a catalog.
#[derive(Clone)]
pub struct ClosedSet<'c> {
    catalog: &'c PGroupCatalog,
    members: Vec<bool>,
}

impl PartialEq for ClosedSet<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.catalog, other.catalog) && self.members == other.members
    }
}

impl Eq for ClosedSet<'_> {}

impl fmt::Debug for ClosedSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

/// Join, meet and order relation of two closed sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeOps<'c> {
    pub join: ClosedSet<'c>,
    pub meet: ClosedSet<'c>,
    pub leq: bool,
}

impl<'c> ClosedSet<'c> {
    pub fn catalog(&self) -> &'c PGroupCatalog {
        self.catalog
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }

    pub fn labels(&self) -> Vec<&'c str> {
        self.indices()
            .into_iter()
            .map(|i| self.catalog.label(i))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Downward closed under the embedding relation.
    pub fn is_closed(&self) -> bool {
        let n = self.members.len();
        (0..n).all(|j| !self.members[j] || (0..n).all(|i| !self.catalog.embed[i][j] || self.members[i]))
    }

    fn same_catalog(&self, other: &ClosedSet<'_>) -> Result<()> {
        if std::ptr::eq(self.catalog, other.catalog) {
            Ok(())
        } else {
            Err(Error::CatalogMismatch)
        }
    }

    pub fn lattice_ops(&self, other: &ClosedSet<'c>) -> Result<LatticeOps<'c>> {
        self.same_catalog(other)?;
        let zip = |f: fn(bool, bool) -> bool| ClosedSet {
            catalog: self.catalog,
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        };
        Ok(LatticeOps {
            join: zip(|a, b| a || b),
            meet: zip(|a, b| a && b),
            leq: self.is_subset(other),
        })
    }

    pub fn is_subset(&self, other: &ClosedSet<'_>) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    /// Nonempty and equal to the down-set of a single entry.
    pub fn is_completely_prime(&self) -> bool {
        !self.is_empty() && (0..self.catalog.len()).any(|i| *self == self.catalog.down_set(i))
    }

    /// Nonempty with a unique maximal entry under embedding.
    pub fn is_join_irreducible(&self) -> bool {
        self.maximal_entries().len() == 1
    }

    /// Entries of the set not properly embedded in another member.
    pub fn maximal_entries(&self) -> Vec<usize> {
        let idx = self.indices();
        idx.iter()
            .copied()
            .filter(|&i| !idx.iter().any(|&j| j != i && self.catalog.embed[i][j]))
            .collect()
    }
}
