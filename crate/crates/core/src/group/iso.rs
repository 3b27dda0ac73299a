use std::collections::BTreeMap;

use super::PermGroup;
use crate::error::{Error, Result};

/// Isomorphism and embedding tests refuse groups larger than this.
pub const DEFAULT_ISO_BOUND: usize = 256;

/// Cheap isomorphism invariants, compared before any search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupInvariants {
    pub order: usize,
    pub exponent: usize,
    /// element order -> number of elements of that order
    pub order_histogram: BTreeMap<usize, usize>,
    /// sorted (class size, element order) pairs
    pub classes: Vec<(usize, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
}

impl GroupInvariants {
    pub fn of(g: &PermGroup) -> Self {
        let mut order_histogram = BTreeMap::new();
        for e in g.elements() {
            *order_histogram.entry(e.order()).or_insert(0) += 1;
        }
        let mut classes: Vec<(usize, usize)> = (0..g.class_count())
            .map(|c| {
                let m = g.class_members(c);
                (m.len(), g.element_order(m[0]))
            })
            .collect();
        classes.sort_unstable();
        GroupInvariants {
            order: g.order(),
            exponent: g.exponent(),
            order_histogram,
            classes,
            center_order: g.center().order(),
            derived_order: g.derived_subgroup().order(),
        }
    }
}

fn check_bound(g: &PermGroup) -> Result<()> {
    if g.order() > DEFAULT_ISO_BOUND {
        Err(Error::OrderBoundExceeded {
            bound: DEFAULT_ISO_BOUND,
        })
    } else {
        Ok(())
    }
}

/// A short generating set, preferring elements of large order.
fn small_generating_set(g: &PermGroup) -> Vec<usize> {
    let mut by_order: Vec<usize> = (0..g.order()).collect();
    by_order.sort_by_key(|&i| (std::cmp::Reverse(g.element_order(i)), i));
    let mut gens = Vec::new();
    let mut flags = g.closure_flags(&gens);
    for i in by_order {
        if flags.iter().all(|&f| f) {
            break;
        }
        if !flags[i] {
            gens.push(i);
            flags = g.closure_flags(&gens);
        }
    }
    gens
}

/// Tries to extend `gens[k] -> images[k]` to an injective homomorphism from
/// the subgroup they generate. Returns false on any inconsistency.
fn extends_injectively(a: &PermGroup, gens: &[usize], b: &PermGroup, images: &[usize]) -> bool {
    let mut map = vec![usize::MAX; a.order()];
    let mut used = vec![false; b.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let img = b.mul(map[x], h);
            if map[y] == usize::MAX {
                if used[img] {
                    return false;
                }
                used[img] = true;
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return false;
            }
        }
    }
    true
}

fn search(a: &PermGroup, b: &PermGroup) -> bool {
    let gens = small_generating_set(a);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let ord = a.element_order(g);
            (0..b.order()).filter(|&h| b.element_order(h) == ord).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    fn rec(
        a: &PermGroup,
        b: &PermGroup,
        gens: &[usize],
        cands: &[Vec<usize>],
        images: &mut Vec<usize>,
    ) -> bool {
        let k = images.len();
        if k == gens.len() {
            return true;
        }
        for &c in &cands[k] {
            images.push(c);
            if extends_injectively(a, &gens[..=k], b, images) && rec(a, b, gens, cands, images) {
                return true;
            }
            images.pop();
        }
        false
    }
    rec(a, b, &gens, &candidates, &mut images)
}

/// True iff the two groups are isomorphic: invariant screening, then a
/// backtracking search over generator images.
pub fn is_isomorphic(a: &PermGroup, b: &PermGroup) -> Result<bool> {
    check_bound(a)?;
    check_bound(b)?;
    if a.order() != b.order() {
        return Ok(false);
    }
    if GroupInvariants::of(a) != GroupInvariants::of(b) {
        return Ok(false);
    }
    Ok(search(a, b))
}

/// True iff `q` is isomorphic to a subgroup of `p`.
pub fn embeds(q: &PermGroup, p: &PermGroup) -> Result<bool> {
    check_bound(q)?;
    check_bound(p)?;
    if !p.order().is_multiple_of(q.order()) {
        return Ok(false);
    }
    Ok(search(q, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;

    #[test]
    fn small_cases() {
        let d8 = named_group("D8").unwrap();
        let q8 = named_group("Q8").unwrap();
        let v4 = named_group("C2xC2").unwrap();
        let c4 = named_group("C4").unwrap();
        assert!(!is_isomorphic(&d8, &q8).unwrap());
        assert_eq!(
            GroupInvariants::of(&d8).order_histogram[&2],
            5,
            "D8 has five involutions"
        );
        assert_eq!(GroupInvariants::of(&q8).order_histogram[&2], 1);
        assert!(is_isomorphic(&d8, &d8).unwrap());
        assert!(!is_isomorphic(&v4, &c4).unwrap());
        assert!(embeds(&v4, &d8).unwrap());
        assert!(!embeds(&v4, &q8).unwrap());
        assert!(embeds(&named_group("C1").unwrap(), &q8).unwrap());
        assert!(!embeds(&named_group("C3").unwrap(), &q8).unwrap());
    }

    #[test]
    fn different_permutation_models_are_isomorphic() {
        // D8 on 4 points vs. the dihedral catalog entry on 8 points
        let a = named_group("D8").unwrap();
        let b = named_group("C4xC2").unwrap();
        assert!(!is_isomorphic(&a, &b).unwrap());
        let s3 = named_group("S3").unwrap();
        let d6 = named_group("D6").unwrap();
        assert!(is_isomorphic(&s3, &d6).unwrap());
        let c6 = named_group("C6").unwrap();
        let c3c2 = named_group("C3xC2").unwrap();
        assert!(is_isomorphic(&c6, &c3c2).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let s6 = named_group("S6").unwrap();
        assert!(matches!(
            is_isomorphic(&s6, &s6),
            Err(Error::OrderBoundExceeded { .. })
        ));
    }
}
