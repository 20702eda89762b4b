//! The "type T1" condition on subsets of a finite abelian group: subgroups
//! generated by any two disjoint parts of the subset meet only in zero.

use crate::error::{Error, Result};

/// Default bound on the ambient group order for [`is_type_t1`].
pub const DEFAULT_T1_BOUND: u64 = 1 << 20;

/// `Z/n_1 + ... + Z/n_k`, given by its cyclic factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&n| n == 0) {
            return Err(Error::InvalidInput("cyclic factor orders must be positive".into()));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Group order, or `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n))
    }

    fn index(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&v, &n)| acc * n as usize + (v % n) as usize)
    }

    fn add_index(&self, i: usize, g: &[u64]) -> usize {
        // Mixed-radix addition, last factor least significant.
        let mut out = 0usize;
        let mut rest = i;
        let mut place = 1usize;
        for (&n, &gv) in self.factors.iter().zip(g).rev() {
            let n = n as usize;
            let digit = rest % n;
            rest /= n;
            out += ((digit + (gv as usize % n)) % n) * place;
            place *= n;
        }
        out
    }

    /// Membership bitmap of the subgroup generated by `gens`.
    fn subgroup(&self, gens: &[&Vec<u64>], order: usize) -> Vec<bool> {
        let mut member = vec![false; order];
        member[0] = true;
        let mut elems = vec![0usize];
        for g in gens {
            // Close under adding g; the set stays a subgroup after each pass.
            let mut frontier = elems.clone();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for &e in &frontier {
                    let s = self.add_index(e, g);
                    if !member[s] {
                        member[s] = true;
                        next.push(s);
                    }
                }
                elems.extend(&next);
                frontier = next;
            }
        }
        member
    }
}

/// Whether `elements` is of type T1 in `group`.
///
/// Enumerates bipartitions of the index set: if `<A> + <B>` meet trivially for
/// every partition then they do for every pair of disjoint parts, since
/// shrinking a part shrinks its subgroup.
pub fn is_type_t1(group: &AbelianGroup, elements: &[Vec<u64>], bound: u64) -> Result<bool> {
    let order = group
        .order()
        .filter(|&o| o <= bound)
        .ok_or_else(|| Error::SizeBound {
            size: group.factors.iter().map(u64::to_string).collect::<Vec<_>>().join("*"),
            bound,
        })?;
    if let Some(bad) = elements.iter().find(|e| e.len() != group.factors.len()) {
        return Err(Error::Dimension(format!(
            "element {bad:?} has {} coordinates, group has {}",
            bad.len(),
            group.factors.len()
        )));
    }
    let k = elements.len();
    if k > 24 {
        return Err(Error::SizeBound {
            size: format!("2^{k} partitions"),
            bound: 1 << 24,
        });
    }
    if k < 2 {
        return Ok(true);
    }
    let order = order as usize;
    debug_assert_eq!(group.index(&vec![0; group.factors.len()]), 0);
    // The last element always sits in B, so each partition is visited once.
    for mask in 0..(1u64 << (k - 1)) {
        let (a, b): (Vec<_>, Vec<_>) = elements
            .iter()
            .enumerate()
            .partition(|(i, _)| mask >> i & 1 == 1);
        let a: Vec<&Vec<u64>> = a.into_iter().map(|(_, e)| e).collect();
        let b: Vec<&Vec<u64>> = b.into_iter().map(|(_, e)| e).collect();
        let sa = group.subgroup(&a, order);
        let sb = group.subgroup(&b, order);
        if sa.iter().zip(&sb).skip(1).any(|(&x, &y)| x && y) {
            return Ok(false);
        }
    }
    Ok(true)
}
