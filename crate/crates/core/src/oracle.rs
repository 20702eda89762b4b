//! Exhaustive enumeration of the `G`-stable submodules of a small module.
//!
//! Every submodule is a finite sum of cyclic ones `<v, sigma v, ...>`, so the
//! lattice is the closure of the zero module under "add one cyclic
//! submodule". Spans are memoized by their Howell form, which is canonical.
//! The closure runs on each isotypic piece separately and the pieces are
//! recombined.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::gmodule::{component, decompose, trivial_component, Decomposition, GModule, Submodule};
use crate::matrix::HowellForm;
use crate::solvability::HShape;

pub const DEFAULT_SIZE_BOUND: u64 = 1 << 20;

/// All `G`-submodules of `parent`, grouped by isomorphism type.
#[derive(Clone, Debug)]
pub struct SubmoduleInventory {
    pub parent: GModule,
    /// Bases in each bucket are sorted.
    pub entries: BTreeMap<Decomposition, Vec<Submodule>>,
}

impl SubmoduleInventory {
    pub fn total(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Decomposition, &Submodule)> {
        self.entries
            .iter()
            .flat_map(|(d, subs)| subs.iter().map(move |s| (d, s)))
    }

    /// Every submodule, in sorted order.
    pub fn submodules(&self) -> Vec<&Submodule> {
        let mut all: Vec<&Submodule> = self.entries.values().flatten().collect();
        all.sort();
        all
    }

    pub fn contains(&self, sub: &Submodule) -> bool {
        self.entries.values().any(|subs| subs.binary_search(sub).is_ok())
    }

    /// Number of submodules whose decomposition satisfies `pred`.
    pub fn count_where(&self, mut pred: impl FnMut(&Decomposition) -> bool) -> usize {
        self.entries
            .iter()
            .filter(|(d, _)| pred(d))
            .map(|(_, subs)| subs.len())
            .sum()
    }
}

/// `|M|`, or a refusal if it exceeds `bound`.
fn checked_size(module: &GModule, bound: u64) -> Result<u64> {
    let refuse = || Error::SizeBound {
        size: format!("{}^{}", module.l(), module.log_size()),
        bound,
    };
    let size = u32::try_from(module.log_size())
        .ok()
        .and_then(|e| module.l().checked_pow(e))
        .ok_or_else(refuse)?;
    if size > bound {
        return Err(refuse());
    }
    Ok(size)
}

/// Mixed-radix position of a carrier element, from its Howell coordinates.
fn element_index(carrier: &HowellForm, radices: &[u64], v: &[u64]) -> usize {
    let (_, coords) = carrier.reduce_with_coords(v);
    coords
        .iter()
        .zip(radices)
        .rev()
        .fold(0u64, |acc, (&w, &r)| acc * r + w) as usize
}

/// The distinct cyclic submodules `<v, sigma v, ...>` of the module.
pub fn cyclic_submodules(module: &GModule, size_bound: u64) -> Result<BTreeSet<HowellForm>> {
    let size = checked_size(module, size_bound)? as usize;
    let m = module.modulus();
    let carrier = module.carrier();
    let c = m.exponent();
    let radices: Vec<u64> = carrier
        .pivots()
        .iter()
        .map(|&(_, v)| m.prime_pow(c - v))
        .collect();
    let units: Vec<u64> = (1..m.value()).filter(|&x| m.is_unit(x)).collect();
    let sigma = module.sigma();

    let mut seen = vec![false; size];
    let mut out = BTreeSet::new();
    for v in carrier.elements() {
        let idx = element_index(carrier, &radices, &v);
        if seen[idx] {
            continue;
        }
        let mut orbit = vec![v.clone()];
        loop {
            let next = sigma.apply(orbit.last().expect("non-empty orbit"));
            if next == v {
                break;
            }
            orbit.push(next);
        }
        // u * sigma^k v generates the same cyclic submodule as v.
        for w in &orbit {
            for &u in &units {
                let uw: Vec<u64> = w.iter().map(|&x| m.mul(u, x)).collect();
                seen[element_index(carrier, &radices, &uw)] = true;
            }
        }
        out.insert(HowellForm::from_rows(m, module.rank(), orbit));
    }
    Ok(out)
}

/// The submodule lattice of `module` as the closure of `{0}` under adding
/// cyclic submodules. Works for any module; cost grows with
/// `#submodules * #cyclic submodules`.
pub fn closure_lattice(module: &GModule, size_bound: u64) -> Result<BTreeSet<HowellForm>> {
    let cyclics: Vec<HowellForm> = cyclic_submodules(module, size_bound)?.into_iter().collect();
    let zero = HowellForm::zero(module.modulus(), module.rank());
    let mut found: BTreeSet<HowellForm> = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(span) = queue.pop_front() {
        for cyc in &cyclics {
            if span.contains_all(cyc) {
                continue;
            }
            let bigger = span.sum(cyc);
            if found.insert(bigger.clone()) {
                queue.push_back(bigger);
            }
        }
    }
    Ok(found)
}

/// The isotypic pieces `e M`, one per idempotent, trivial piece first.
fn isotypic_pieces(module: &GModule) -> Result<Vec<GModule>> {
    let mut pieces = vec![trivial_component(module)?];
    for (b, j) in module.factorization().component_indices() {
        pieces.push(component(module, b, j)?);
    }
    let total: u64 = pieces.iter().map(GModule::log_size).sum();
    if total != module.log_size() {
        return Err(Error::Inconsistent(format!(
            "isotypic pieces account for l^{total} elements, module has l^{}",
            module.log_size()
        )));
    }
    Ok(pieces)
}

/// Every `G`-stable submodule of `module`, refusing modules with more than
/// `size_bound` elements.
///
/// A submodule `T` splits as the direct sum of its pieces `e T` over the
/// idempotents `e` of the group ring, so the lattice is the product of the
/// lattices of the isotypic pieces, each found by [`closure_lattice`].
pub fn enumerate_g_submodules(module: &GModule, size_bound: u64) -> Result<SubmoduleInventory> {
    checked_size(module, size_bound)?;
    let pieces = isotypic_pieces(module)?;
    let lattices: Vec<Vec<HowellForm>> = pieces
        .iter()
        .filter(|piece| piece.log_size() > 0)
        .map(|piece| closure_lattice(piece, size_bound).map(|set| set.into_iter().collect()))
        .collect::<Result<_>>()?;
    let expected: usize = lattices.iter().map(Vec::len).product();

    let mut found: BTreeSet<HowellForm> = BTreeSet::new();
    let mut choice = vec![0usize; lattices.len()];
    loop {
        let rows: Vec<Vec<u64>> = choice
            .iter()
            .zip(&lattices)
            .flat_map(|(&k, lattice)| lattice[k].rows().iter().cloned())
            .collect();
        found.insert(HowellForm::from_rows(module.modulus(), module.rank(), rows));
        let Some(pos) = choice
            .iter()
            .zip(&lattices)
            .position(|(&k, lattice)| k + 1 < lattice.len())
        else {
            break;
        };
        choice[pos] += 1;
        choice[..pos].iter_mut().for_each(|k| *k = 0);
    }
    if found.len() != expected {
        return Err(Error::Inconsistent(format!(
            "{} distinct sums from {expected} choices of isotypic submodules",
            found.len()
        )));
    }

    let mut entries: BTreeMap<Decomposition, Vec<Submodule>> = BTreeMap::new();
    for basis in found {
        let sub = Submodule::from_basis(basis);
        let d = decompose(&module.restrict(&sub)?)?;
        entries.entry(d).or_default().push(sub);
    }
    // `found` was iterated in sorted order, so each bucket is sorted already.
    Ok(SubmoduleInventory {
        parent: module.clone(),
        entries,
    })
}

fn padded(v: &[u64], len: usize) -> Option<Vec<u64>> {
    if v.len() > len && v[len..].iter().any(|&x| x != 0) {
        return None;
    }
    let mut out = v[..v.len().min(len)].to_vec();
    out.resize(len, 0);
    Some(out)
}

/// Number of inventory members isomorphic to `shape`.
///
/// Without action data only the abelian group type is matched; with it the
/// full summand signature must agree.
pub fn count_isomorphic(inventory: &SubmoduleInventory, shape: &HShape) -> Result<u64> {
    let parent = &inventory.parent;
    shape.validate(parent.p())?;
    let c = parent.c() as usize;
    let l = parent.l();
    let n_components = parent.factorization().component_indices().len();

    // Requested abelian exponents e_1..e_c; `None` when H cannot live in an
    // l-group of exponent dividing l^c.
    let exponents: Option<Vec<u64>> = match shape {
        HShape::Field { l: hl, n, .. } => {
            if *n == 0 {
                Some(vec![0; c])
            } else if *hl == l {
                padded(&[*n], c)
            } else {
                None
            }
        }
        HShape::PrimePower { l: hl, exponents, .. } => {
            if exponents.iter().all(|&e| e == 0) {
                Some(vec![0; c])
            } else if *hl == l {
                padded(exponents, c)
            } else {
                None
            }
        }
        HShape::SquareFree { m, n } => {
            if *n == 0 {
                Some(vec![0; c])
            } else if *m == l {
                padded(&[*n], c)
            } else {
                None
            }
        }
    };
    let Some(exponents) = exponents else {
        return Ok(0);
    };

    let signature: Option<(Vec<u64>, Vec<Vec<u64>>)> = match shape {
        HShape::Field { action: Some(act), .. } => {
            let flat: Vec<u64> = act.gamma_prime.iter().flatten().copied().collect();
            if flat.len() != n_components {
                return Err(Error::InvalidInput(format!(
                    "action lists {} component multiplicities, module has {n_components} components",
                    flat.len()
                )));
            }
            // c >= 1, so one-layer data always pads.
            let one_layer = |x: u64| padded(&[x], c).expect("c >= 1");
            Some((one_layer(act.u), flat.into_iter().map(one_layer).collect()))
        }
        HShape::PrimePower { action: Some(act), .. } => {
            let flat: Vec<Vec<u64>> = act.components.iter().flatten().cloned().collect();
            if flat.len() != n_components {
                return Err(Error::InvalidInput(format!(
                    "action lists {} component multiplicities, module has {n_components} components",
                    flat.len()
                )));
            }
            let (Some(trivial), Some(comps)) = (
                padded(&act.trivial, c),
                flat.iter().map(|v| padded(v, c)).collect::<Option<Vec<_>>>(),
            ) else {
                return Ok(0);
            };
            Some((trivial, comps))
        }
        _ => None,
    };

    let count = inventory.count_where(|d| {
        d.abelian_exponents() == exponents
            && signature.as_ref().map_or(true, |(trivial, comps)| {
                &d.trivial == trivial
                    && d
                        .components
                        .iter()
                        .zip(comps)
                        .all(|(s, want)| &s.multiplicities == want)
            })
    });
    Ok(count as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::modarith::Modulus;
    use crate::pm_builder::{artin_schreier_example, synthetic_module};
    use crate::solvability::{count_nsext, invariants_of, CountInput, FieldAction};

    fn trivial_f2_square() -> GModule {
        let f2 = Modulus::new(2, 1).unwrap();
        GModule::new(3, 1, 2, 1, Matrix::identity(f2, 2)).unwrap()
    }

    fn regular_f2_z7() -> GModule {
        let f2 = Modulus::new(2, 1).unwrap();
        let perm: Vec<usize> = (0..7).map(|i| (i + 1) % 7).collect();
        GModule::new(7, 1, 2, 1, Matrix::permutation(f2, &perm)).unwrap()
    }

    fn field(l: u64, n: u64) -> HShape {
        HShape::Field { l, n, action: None }
    }

    #[test]
    fn trivial_plane() {
        let inv = enumerate_g_submodules(&trivial_f2_square(), DEFAULT_SIZE_BOUND).unwrap();
        assert_eq!(inv.total(), 5);
        assert_eq!(count_isomorphic(&inv, &field(2, 1)).unwrap(), 3);
        assert_eq!(count_isomorphic(&inv, &field(2, 0)).unwrap(), 1);
        assert_eq!(count_isomorphic(&inv, &field(2, 2)).unwrap(), 1);
        assert_eq!(count_isomorphic(&inv, &field(2, 3)).unwrap(), 0);
        assert_eq!(count_isomorphic(&inv, &field(5, 1)).unwrap(), 0);
    }

    #[test]
    fn artin_schreier_irreducible() {
        let pm = artin_schreier_example(3, 2).unwrap();
        let inv = enumerate_g_submodules(pm.module(), DEFAULT_SIZE_BOUND).unwrap();
        let shape = HShape::Field {
            l: 2,
            n: 2,
            action: Some(FieldAction { u: 0, gamma_prime: vec![vec![1]] }),
        };
        assert_eq!(count_isomorphic(&inv, &shape).unwrap(), 1);
    }

    #[test]
    fn zero_module_has_one_submodule() {
        let f2 = Modulus::new(2, 1).unwrap();
        let m = GModule::new(3, 1, 2, 1, Matrix::identity(f2, 1)).unwrap();
        let zero = m.restrict(&m.submodule_from_rows(vec![]).unwrap()).unwrap();
        let inv = enumerate_g_submodules(&zero, DEFAULT_SIZE_BOUND).unwrap();
        assert_eq!(inv.total(), 1);
    }

    #[test]
    fn regular_z7_cubics() {
        let inv = enumerate_g_submodules(&regular_f2_z7(), DEFAULT_SIZE_BOUND).unwrap();
        // Three simple summands of multiplicity one: 2^3 submodules.
        assert_eq!(inv.total(), 8);
        for gp in [vec![1, 0], vec![0, 1]] {
            let shape = HShape::Field {
                l: 2,
                n: 3,
                action: Some(FieldAction { u: 0, gamma_prime: vec![gp] }),
            };
            assert_eq!(count_isomorphic(&inv, &shape).unwrap(), 1);
        }
        assert_eq!(count_isomorphic(&inv, &field(2, 3)).unwrap(), 2);
    }

    #[test]
    fn refuses_large_modules() {
        let big = synthetic_module(3, 1, &[1, 3, 3, 3, 3], 2).unwrap();
        assert!(matches!(
            enumerate_g_submodules(big.module(), 1 << 10),
            Err(Error::SizeBound { .. })
        ));
    }

    #[test]
    fn lattice_is_closed_and_stable() {
        let m = synthetic_module(3, 1, &[1, 3, 3], 2).unwrap();
        let inv = enumerate_g_submodules(m.module(), DEFAULT_SIZE_BOUND).unwrap();
        let subs = inv.submodules();
        assert!(subs.iter().any(|s| s.is_zero()));
        assert!(inv.contains(&m.module().whole()));
        for a in &subs {
            assert!(a.basis().is_stable_under(m.module().sigma()));
            for b in &subs {
                let s = Submodule::from_basis(a.basis().sum(b.basis()));
                let i = Submodule::from_basis(a.basis().intersect(b.basis()));
                assert!(inv.contains(&s) && inv.contains(&i));
            }
        }
    }

    #[test]
    fn counts_match_formula_and_duality() {
        let m = synthetic_module(3, 1, &[1, 1, 3, 3], 2).unwrap();
        let fi = invariants_of(m.module()).unwrap();
        let inv = enumerate_g_submodules(m.module(), DEFAULT_SIZE_BOUND).unwrap();
        let gamma = fi.levels[0].gamma[0];
        for u in 0..=fi.n0 {
            for g in 0..=gamma {
                let shape = HShape::Field {
                    l: 2,
                    n: u + 2 * g,
                    action: Some(FieldAction { u, gamma_prime: vec![vec![g]] }),
                };
                let dual = HShape::Field {
                    l: 2,
                    n: (fi.n0 - u) + 2 * (gamma - g),
                    action: Some(FieldAction { u: fi.n0 - u, gamma_prime: vec![vec![gamma - g]] }),
                };
                let brute = count_isomorphic(&inv, &shape).unwrap();
                assert_eq!(brute, count_isomorphic(&inv, &dual).unwrap());
                let formula = count_nsext(&CountInput::from_invariants(&fi, u, vec![vec![g]])).unwrap();
                assert_eq!(formula.value, brute.into());
            }
        }
    }

    #[test]
    fn product_lattice_matches_plain_closure() {
        let cases = [
            synthetic_module(3, 1, &[1, 3, 3], 2).unwrap().into_module(),
            synthetic_module(3, 1, &[1, 1, 3], 4).unwrap().into_module(),
            synthetic_module(2, 2, &[1, 4], 3).unwrap().into_module(),
            regular_f2_z7(),
            trivial_f2_square(),
        ];
        for m in cases {
            let inv = enumerate_g_submodules(&m, DEFAULT_SIZE_BOUND).unwrap();
            let direct = closure_lattice(&m, DEFAULT_SIZE_BOUND).unwrap();
            let listed: Vec<&HowellForm> = inv.submodules().into_iter().map(Submodule::basis).collect();
            assert_eq!(listed, direct.iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let m = synthetic_module(3, 1, &[1, 3], 4).unwrap();
        let a = enumerate_g_submodules(m.module(), DEFAULT_SIZE_BOUND).unwrap();
        let b = enumerate_g_submodules(m.module(), DEFAULT_SIZE_BOUND).unwrap();
        assert_eq!(a.entries, b.entries);
    }
}
