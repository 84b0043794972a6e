//! Conjunctive selectors over a proposition pool.
//!
//! A [`Conjunction`] is identified with its ascending list of proposition
//! ids. Two refinement operators generate the search tree: [`refine_cnj`]
//! over all conjunctions and [`refine_ccj`] over closed conjunctions, the
//! latter being prefix-preserving so that every closed conjunction is reached
//! from the root along exactly one path.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::dataset::PropositionPool;
use crate::error::{Error, Result};
use crate::rowset::RowSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjunction {
    props: Vec<usize>,
    extension: RowSet,
    core_index: usize,
}

impl Conjunction {
    /// The empty conjunction, selecting every row.
    pub fn bottom(pool: &PropositionPool) -> Self {
        Conjunction {
            props: Vec::new(),
            extension: RowSet::full(pool.rows()),
            core_index: 0,
        }
    }

    /// Conjunction of the given ids (any order, duplicates ignored).
    pub fn new(ids: &[usize], pool: &PropositionPool) -> Result<Self> {
        let set: BTreeSet<usize> = ids.iter().copied().collect();
        let props: Vec<usize> = set.into_iter().collect();
        let extension = extension_of(&props, pool)?;
        Ok(Self::from_parts(props, extension, pool))
    }

    fn from_parts(props: Vec<usize>, extension: RowSet, pool: &PropositionPool) -> Self {
        let core_index = compute_core_index(&props, &extension, pool);
        Conjunction {
            props,
            extension,
            core_index,
        }
    }

    pub fn props(&self) -> &[usize] {
        &self.props
    }

    pub fn extension(&self) -> &RowSet {
        &self.extension
    }

    pub fn core_index(&self) -> usize {
        self.core_index
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.props.binary_search(&id).is_ok()
    }

    pub fn is_closed(&self, pool: &PropositionPool) -> bool {
        closure(self, pool).props == self.props
    }

    /// Human-readable form: member labels joined by `" & "`, or `true` for ⊥.
    pub fn describe(&self, pool: &PropositionPool) -> String {
        if self.props.is_empty() {
            return "true".to_owned();
        }
        self.props
            .iter()
            .map(|&id| pool.prop(id).label.as_str())
            .collect::<Vec<_>>()
            .join(" & ")
    }

    /// Lexicographic order on the id lists.
    pub fn lex_cmp(&self, other: &Conjunction) -> Ordering {
        self.props.cmp(&other.props)
    }
}

/// Intersection of the extensions of `ids`; the full row set for no ids.
pub fn extension_of(ids: &[usize], pool: &PropositionPool) -> Result<RowSet> {
    let mut ext = RowSet::full(pool.rows());
    for &id in ids {
        ext = ext.intersection(&pool.get(id)?.extension);
    }
    Ok(ext)
}

fn compute_core_index(props: &[usize], extension: &RowSet, pool: &PropositionPool) -> usize {
    if extension.is_full() {
        return 0;
    }
    let mut prefix = RowSet::full(pool.rows());
    for &id in props {
        prefix = prefix.intersection(&pool.prop(id).extension);
        // prefix extensions only shrink towards `extension`
        if prefix.len() == extension.len() {
            return id;
        }
    }
    unreachable!("extension does not match its propositions")
}

/// Smallest `i` such that the members of `sigma` with id `<= i` already
/// determine its extension.
pub fn core_index(sigma: &Conjunction) -> usize {
    sigma.core_index
}

/// Conjunction of all propositions whose extension contains `ext(sigma)`.
pub fn closure(sigma: &Conjunction, pool: &PropositionPool) -> Conjunction {
    let ext = &sigma.extension;
    let props: Vec<usize> = pool
        .iter()
        .filter(|p| p.extension.intersection_len(ext) == ext.len())
        .map(|p| p.id)
        .collect();
    Conjunction::from_parts(props, ext.clone(), pool)
}

/// `sigma ∧ π_i` for every `i` above the largest id in `sigma`.
pub fn refine_cnj(sigma: &Conjunction, pool: &PropositionPool) -> Vec<Conjunction> {
    let start = sigma.props.last().map_or(1, |&last| last + 1);
    (start..=pool.len())
        .map(|i| {
            let mut props = sigma.props.clone();
            props.push(i);
            let ext = sigma.extension.intersection(&pool.prop(i).extension);
            Conjunction::from_parts(props, ext, pool)
        })
        .collect()
}

/// Prefix-preserving closure extensions of a closed conjunction.
///
/// Returns `closure(sigma ∧ π_j)` for every `j > core_index(sigma)` with
/// `π_j ∉ sigma` whose closure adds no proposition with id below `j`.
pub fn refine_ccj(sigma: &Conjunction, pool: &PropositionPool) -> Result<Vec<Conjunction>> {
    if !sigma.is_closed(pool) {
        return Err(Error::Invariant(format!(
            "refine_ccj called on non-closed selector {:?}",
            sigma.props
        )));
    }
    Ok(refine_ccj_unchecked(sigma, pool))
}

pub(crate) fn refine_ccj_unchecked(
    sigma: &Conjunction,
    pool: &PropositionPool,
) -> Vec<Conjunction> {
    let mut out = Vec::new();
    for j in sigma.core_index + 1..=pool.len() {
        if sigma.contains(j) {
            continue;
        }
        let ext = sigma.extension.intersection(&pool.prop(j).extension);
        let covers = |id: usize| pool.prop(id).extension.intersection_len(&ext) == ext.len();
        // members of sigma always cover ext; any other id below j breaks the prefix
        let prefix_ok = (1..j).all(|i| sigma.contains(i) || !covers(i));
        if !prefix_ok {
            continue;
        }
        let mut props: Vec<usize> = sigma.props.iter().copied().filter(|&i| i < j).collect();
        props.push(j);
        props.extend((j + 1..=pool.len()).filter(|&i| sigma.contains(i) || covers(i)));
        out.push(Conjunction::from_parts(props, ext, pool));
    }
    out
}

/// Every closed conjunction of the pool, found by closing all `2^k` subsets.
///
/// Exponential; intended as a reference for small pools (`k <= 20`).
pub fn closed_conjunctions_brute_force(pool: &PropositionPool) -> Result<Vec<Conjunction>> {
    const CAP: usize = 20;
    let k = pool.len();
    if k > CAP {
        return Err(Error::CapExceeded { size: k, cap: CAP });
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << k) {
        let ids: Vec<usize> = (0..k)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| b + 1)
            .collect();
        let c = closure(&Conjunction::new(&ids, pool)?, pool);
        if seen.insert(c.props.clone()) {
            out.push(c);
        }
    }
    out.sort_by(Conjunction::lex_cmp);
    Ok(out)
}
