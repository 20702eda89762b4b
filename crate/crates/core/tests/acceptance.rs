//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use embedkit_core::cyclotomic::{cyclotomic_poly, factor_cyclotomic, CycloFactorization};
use embedkit_core::gmodule::{decompose, graded_dims, is_type_t1, AbelianGroup, GModule};
use embedkit_core::matrix::Matrix;
use embedkit_core::modarith::{multiplicative_order, Modulus, Poly};
use embedkit_core::oracle::{count_isomorphic, enumerate_g_submodules, SubmoduleInventory, DEFAULT_SIZE_BOUND};
use embedkit_core::pm_builder::{build_pm_genus0, pm_inclusion, synthetic_spec, PmModule, PuncturedCoverSpec};
use embedkit_core::solvability::{
    count_nsext, gaussian_binomial, invariants_of, solvable_field, solvable_prime_power, CountInput,
    FieldAction, FieldInvariants, HShape, Verdict,
};
use embedkit_core::Error;

const FACTOR_GRID: [(u64, u64); 7] = [(3, 2), (3, 7), (5, 2), (5, 3), (7, 2), (2, 3), (2, 5)];
const MAX_ORDER: u64 = 1 << 16;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

// ---------------------------------------------------------------------------
// Module grid

struct GridModule {
    name: String,
    pm: PmModule,
}

fn module_order(l: u64, c: u32, rank: u64) -> Option<u64> {
    l.checked_pow(c * rank as u32)
}

/// Orbit-size lists for covers with group `Z/p^a`: 1 or 2 fixed points plus
/// up to two orbits of size `p` and (for `a = 2`) up to one of size `p^2`.
fn orbit_lists(p: u64, a: u32) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for fixed in 1..=2 {
        for small in 0..=2usize {
            for big in 0..=usize::from(a == 2) {
                if small + big == 0 && fixed == 1 {
                    continue;
                }
                let mut v = vec![1u64; fixed];
                v.extend(std::iter::repeat(p).take(small));
                v.extend(std::iter::repeat(p * p).take(big));
                out.push(v);
            }
        }
    }
    out
}

/// The same cover with shuffled labels and puncture order.
fn shuffled_spec(spec: &PuncturedCoverSpec, rng: &mut ChaCha8Rng) -> PuncturedCoverSpec {
    let n = spec.punctures.len();
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    // New position of old index i is order[i].
    let mut punctures = vec![String::new(); n];
    let mut image = vec![0; n];
    for i in 0..n {
        punctures[order[i]] = format!("P{:02}", rng.gen_range(0..1000) * 100 + i);
        image[order[i]] = order[spec.generator_image[i]];
    }
    PuncturedCoverSpec {
        p: spec.p,
        a: spec.a,
        punctures,
        generator_image: image,
        m: spec.m,
    }
}

fn grid(c: u32) -> Vec<GridModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e1d);
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for a in [1u32, 2] {
            for l in [2u64, 3, 5] {
                if l == p {
                    continue;
                }
                for (k, orbits) in orbit_lists(p, a).into_iter().enumerate() {
                    let rank = orbits.iter().sum::<u64>() - 1;
                    if module_order(l, c, rank).map_or(true, |o| o > MAX_ORDER) {
                        continue;
                    }
                    let m = l.pow(c);
                    let spec = synthetic_spec(p, a, &orbits, m).expect("valid synthetic cover");
                    out.push(GridModule {
                        name: format!("synthetic p={p} a={a} m={m} orbits={orbits:?}"),
                        pm: build_pm_genus0(&spec).expect("synthetic cover builds"),
                    });
                    if k % 3 == 0 {
                        let shuffled = shuffled_spec(&spec, &mut rng);
                        out.push(GridModule {
                            name: format!("genus-0 p={p} a={a} m={m} orbits={orbits:?} (relabelled)"),
                            pm: build_pm_genus0(&shuffled).expect("relabelled cover builds"),
                        });
                    }
                }
            }
        }
    }
    out
}

struct Enumerated {
    name: String,
    module: GModule,
    invariants: FieldInvariants,
    inventory: SubmoduleInventory,
}

fn enumerate_field_grid() -> Result<(Vec<Enumerated>, Duration), String> {
    let start = Instant::now();
    let mut out = Vec::new();
    for g in grid(1) {
        let module = g.pm.module().clone();
        let inventory = enumerate_g_submodules(&module, DEFAULT_SIZE_BOUND).map_err(|e| format!("{}: {e}", g.name))?;
        let invariants = invariants_of(&module).map_err(|e| format!("{}: {e}", g.name))?;
        out.push(Enumerated {
            name: g.name,
            module,
            invariants,
            inventory,
        });
    }
    Ok((out, start.elapsed()))
}

// ---------------------------------------------------------------------------
// Criteria

fn ac1_shape_law() -> Check {
    let start = Instant::now();
    let mut cases = 0;
    for (p, l) in FACTOR_GRID {
        for b in 1..=2u32 {
            let d = multiplicative_order(l, p, b).map_err(|e| e.to_string())?;
            let expected = p.pow(b - 1) * (p - 1) / d;
            let factors = factor_cyclotomic(p, b, l).map_err(|e| format!("p={p} b={b} l={l}: {e}"))?;
            ensure(factors.len() as u64 == expected, || {
                format!("p={p} b={b} l={l}: {} factors, expected {expected}", factors.len())
            })?;
            ensure(factors.iter().all(|f| f.degree() == Some(d as usize)), || {
                format!("p={p} b={b} l={l}: a factor has degree other than {d}")
            })?;
            let fl = Modulus::new(l, 1).unwrap();
            let product = factors
                .iter()
                .try_fold(Poly::one(fl), |acc, f| acc.try_mul(f))
                .map_err(|e| e.to_string())?;
            let phi = Poly::from_i64(fl, &cyclotomic_poly(p, b).unwrap());
            ensure(product == phi, || format!("p={p} b={b} l={l}: product differs from the cyclotomic polynomial"))?;
            cases += 1;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {} (limit 1s)", secs(took)))?;
    Ok(format!("{cases} (p, l, b) cases, {}", secs(took)))
}

fn ac2_hensel() -> Check {
    let mut cases = 0;
    for (p, l) in FACTOR_GRID {
        for c in [2u32, 3] {
            let tag = format!("p={p} l={l} c={c}");
            let fact = CycloFactorization::new(p, 2, l, c).map_err(|e| format!("{tag}: {e}"))?;
            let ring = fact.modulus();
            let fl = Modulus::new(l, 1).unwrap();
            let mut product = fact.linear_factor.clone();
            for level in &fact.levels {
                for (lifted, base) in level.factors_lifted.iter().zip(&level.factors_mod_l) {
                    ensure(lifted.is_monic(), || format!("{tag}: lifted factor not monic"))?;
                    ensure(&lifted.change_modulus(fl) == base, || {
                        format!("{tag}: lifted factor does not reduce to its base factor")
                    })?;
                    product = product.try_mul(lifted).map_err(|e| e.to_string())?;
                }
            }
            let target = Poly::x_pow_minus_one(ring, (p * p) as usize);
            ensure(product == target, || format!("{tag}: product of lifts is not x^(p^2) - 1"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (p, l, c) cases, lifts exact mod l^c"))
}

fn ac3_field_criterion(grid: &[Enumerated], enum_time: Duration) -> Check {
    let start = Instant::now();
    let mut instances = 0;
    let mut yes = 0;
    for g in grid {
        let inv = &g.invariants;
        for n in 0..=g.module.rank() as u64 {
            let verdict = solvable_field(n, inv).map_err(|e| e.to_string())?.verdict;
            let found = g.inventory.entries.keys().any(|d| d.abelian_exponents() == vec![n]);
            ensure((verdict == Verdict::Yes) == found, || {
                format!("{} n={n}: criterion says {verdict:?}, oracle found={found}", g.name)
            })?;
            instances += 1;
            yes += usize::from(found);
        }
    }
    let took = enum_time + start.elapsed();
    ensure(took < Duration::from_secs(300), || format!("took {} (limit 300s)", secs(took)))?;
    Ok(format!(
        "{} modules, {instances} (module, n) instances ({yes} solvable), 100% agreement, {}",
        grid.len(),
        secs(took)
    ))
}

/// All `gamma'` with `0 <= gamma'_bj <= gamma_bj`.
fn sub_shapes(gamma: &[Vec<u64>]) -> Vec<Vec<Vec<u64>>> {
    let flat: Vec<u64> = gamma.iter().flatten().copied().collect();
    let mut out = Vec::new();
    let mut cur = vec![0u64; flat.len()];
    loop {
        let mut it = cur.iter().copied();
        out.push(gamma.iter().map(|row| row.iter().map(|_| it.next().unwrap()).collect()).collect());
        let Some(pos) = cur.iter().zip(&flat).position(|(&x, &max)| x < max) else {
            break;
        };
        cur[pos] += 1;
        cur[..pos].iter_mut().for_each(|x| *x = 0);
    }
    out
}

fn ac4_count(grid: &[Enumerated]) -> Check {
    let mut compared = 0;
    let mut saw_five = false;
    for g in grid {
        let inv = &g.invariants;
        let degrees = inv.degrees();
        for u in 0..=inv.n0 {
            for gp in sub_shapes(&inv.gammas()) {
                let n = u + gp.iter().zip(&degrees).map(|(row, d)| d * row.iter().sum::<u64>()).sum::<u64>();
                let formula = count_nsext(&CountInput::from_invariants(inv, u, gp.clone()))
                    .map_err(|e| format!("{}: {e}", g.name))?
                    .value;
                let shape = HShape::Field {
                    l: inv.l,
                    n,
                    action: Some(FieldAction { u, gamma_prime: gp.clone() }),
                };
                let brute = count_isomorphic(&g.inventory, &shape).map_err(|e| e.to_string())?;
                ensure(formula == BigUint::from(brute), || {
                    format!("{} u={u} gamma'={gp:?}: formula {formula}, oracle {brute}", g.name)
                })?;
                let whole = u == inv.n0 && gp == inv.gammas();
                if whole {
                    ensure(brute == 1, || format!("{}: whole-module count is {brute}", g.name))?;
                }
                if inv.l == 2 && degrees == [2] && inv.gammas() == [vec![2]] && gp == [vec![1]] && u == 0 {
                    ensure(brute == 5, || format!("{}: q = 4 case gives {brute}", g.name))?;
                    saw_five = true;
                }
                compared += 1;
            }
        }
    }
    ensure(saw_five, || "grid lacks the gamma = 2, gamma' = 1, q = 4 case".into())?;
    Ok(format!("{compared} (module, u, gamma') counts equal, incl. q=4 -> 5 and whole module -> 1"))
}

/// `[n choose k]_q` by the q-Pascal rule.
fn q_pascal(n: u64, k: u64, q: &BigUint) -> BigUint {
    let mut row = vec![BigUint::from(1u32)];
    for m in 1..=n as usize {
        let mut next = vec![BigUint::from(1u32); m + 1];
        for j in 1..m {
            next[j] = &row[j - 1] + q.pow(j as u32) * &row[j];
        }
        row = next;
    }
    row.get(k as usize).cloned().unwrap_or_default()
}

fn ac5_gaussian() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let primes = [2u64, 3, 5, 7, 11, 13];
    for t in 0..1000 {
        let gamma = rng.gen_range(0..=6u64);
        let gp = rng.gen_range(0..=gamma);
        let l = primes[rng.gen_range(0..primes.len())];
        let d = rng.gen_range(1..=6u64);
        let q = BigUint::from(l).pow(d as u32);
        let literal = count_nsext(&CountInput {
            l,
            degrees: vec![d],
            gamma: vec![vec![gamma]],
            gamma_prime: vec![vec![gp]],
            n0: 0,
            u: 0,
        })
        .map_err(|e| format!("tuple {t}: {e}"))?;
        let reference = q_pascal(gamma, gp, &q);
        ensure(literal.value == reference && gaussian_binomial(gamma, gp, &q) == reference, || {
            format!("gamma={gamma} gamma'={gp} l={l} d={d}: {} vs {reference}", literal.value)
        })?;
    }
    Ok("1000 random (gamma, gamma', l, d) tuples agree exactly".into())
}

fn random_invertible(modulus: Modulus, n: usize, rng: &mut ChaCha8Rng) -> (Matrix, Matrix) {
    loop {
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..modulus.value())).collect())
            .collect();
        let m = Matrix::from_u64_rows(modulus, n, &rows).unwrap();
        if let Ok(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

fn ac6_conservation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut modules = 0;
    for c in [2u32, 3] {
        for g in grid(c) {
            let module = g.pm.module();
            let base = decompose(module).map_err(|e| format!("{}: {e}", g.name))?;
            ensure(base.log_size() == module.log_size(), || {
                format!("{}: summands give l^{}, module has l^{}", g.name, base.log_size(), module.log_size())
            })?;
            for _ in 0..100 {
                let (p, _) = random_invertible(module.modulus(), module.rank(), &mut rng);
                let moved = module.change_basis(&p).map_err(|e| e.to_string())?;
                let d = decompose(&moved).map_err(|e| format!("{}: {e}", g.name))?;
                ensure(d == base, || format!("{}: decomposition changed under a basis change", g.name))?;
            }
            modules += 1;
        }
    }
    Ok(format!("{modules} modules with c in {{2, 3}}, sizes conserved, invariant under 100 basis changes each"))
}

/// All `(e_1..e_c)` with `sum i * e_i <= budget`.
fn exponent_vectors(c: usize, budget: u64) -> Vec<Vec<u64>> {
    fn go(i: usize, c: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i > c {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left / i as u64 {
            cur.push(e);
            go(i + 1, c, left - e * i as u64, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, c, budget, &mut Vec::new(), &mut out);
    out
}

fn ac7_prime_power() -> Check {
    let mut yes = 0;
    let mut unknown = 0;
    let mut modules = 0;
    let f4 = Modulus::new(2, 2).unwrap();
    let shift = GModule::new(3, 1, 2, 2, Matrix::permutation(f4, &[1, 2, 0])).unwrap();
    let mut cases: Vec<(String, GModule)> = vec![("(Z/4)^3 cyclic shift".into(), shift.clone())];
    for g in grid(2) {
        if g.pm.module().log_size() <= 12 {
            cases.push((g.name, g.pm.module().clone()));
        }
    }
    for (name, module) in &cases {
        let dims = graded_dims(module).map_err(|e| e.to_string())?;
        let inventory = enumerate_g_submodules(module, DEFAULT_SIZE_BOUND).map_err(|e| format!("{name}: {e}"))?;
        let c = module.c() as usize;
        let levels: Vec<u32> = dims.level_degrees().iter().map(|&(b, _)| b).collect();
        for e in exponent_vectors(c, module.log_size()) {
            let report = solvable_prime_power(module.l(), &e, &dims).map_err(|err| err.to_string())?;
            match report.verdict {
                Verdict::Yes => {
                    let realized = inventory.entries.keys().any(|d| {
                        report.checks.iter().all(|chk| {
                            let i = chk.exponent.unwrap();
                            let w = chk.witness.as_ref().unwrap();
                            d.trivial[i - 1] == w.unit
                                && levels
                                    .iter()
                                    .zip(&w.counts)
                                    .all(|(&b, &cnt)| d.level_multiplicity(b, i) == cnt)
                        })
                    });
                    ensure(realized, || format!("{name} e={e:?}: witness not realized by any submodule"))?;
                    yes += 1;
                }
                Verdict::SufficientOnlyUnknown => unknown += 1,
                Verdict::No => return Err(format!("{name} e={e:?}: sufficient criterion answered no")),
            }
        }
        modules += 1;
    }
    let inventory = enumerate_g_submodules(&shift, DEFAULT_SIZE_BOUND).map_err(|e| e.to_string())?;
    let dims = graded_dims(&shift).map_err(|e| e.to_string())?;
    let verdict = solvable_prime_power(2, &[1, 0], &dims).map_err(|e| e.to_string())?.verdict;
    let z2 = HShape::PrimePower { l: 2, c: 2, exponents: vec![1, 0], action: None };
    let found = count_isomorphic(&inventory, &z2).map_err(|e| e.to_string())?;
    ensure(verdict == Verdict::SufficientOnlyUnknown && found >= 1, || {
        format!("Z/2 in (Z/4)^3: verdict {verdict:?}, oracle found {found}")
    })?;
    Ok(format!(
        "{modules} modules: {yes} yes-witnesses realized, {unknown} undecided; Z/2 in (Z/4)^3 undecided with {found} submodule(s)"
    ))
}

fn random_cover(rng: &mut ChaCha8Rng) -> PuncturedCoverSpec {
    let (p, a) = [(2u64, 1u32), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)][rng.gen_range(0..6)];
    let torsions: Vec<u64> = [2u64, 3, 4, 5, 7, 8, 9, 25, 27].into_iter().filter(|m| m % p != 0).collect();
    let m = torsions[rng.gen_range(0..torsions.len())];
    let mut sizes = Vec::new();
    let orbit_count = rng.gen_range(1..=4);
    for _ in 0..orbit_count {
        sizes.push(p.pow(rng.gen_range(0..=a)));
    }
    if sizes.iter().sum::<u64>() < 2 {
        sizes.push(1);
    }
    let spec = synthetic_spec(p, a, &sizes, m).unwrap();
    shuffled_spec(&spec, rng)
}

fn orbits_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut k = perm[start];
        while k != start {
            seen[k] = true;
            orbit.push(k);
            k = perm[k];
        }
        out.push(orbit);
    }
    out
}

fn ac8_genus0() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut inclusions = 0;
    for t in 0..50 {
        let spec = random_cover(&mut rng);
        let pm = build_pm_genus0(&spec).map_err(|e| format!("spec {t}: {e}"))?;
        let m = pm.module();
        ensure(m.rank() == spec.punctures.len() - 1, || format!("spec {t}: rank {} for {} punctures", m.rank(), spec.punctures.len()))?;
        let order = spec.p.pow(spec.a);
        ensure(m.sigma().pow(order).map_err(|e| e.to_string())?.is_identity(), || {
            format!("spec {t}: sigma^{order} is not the identity")
        })?;
        for _ in 0..20 {
            let v: Vec<u64> = (0..m.rank()).map(|_| rng.gen_range(0..spec.m)).collect();
            let div = pm.to_divisor(&v);
            let moved = pm.to_divisor(&m.sigma().apply(&v));
            ensure(pm.degree(&div) == 0 && pm.degree(&moved) == 0, || format!("spec {t}: degree not zero"))?;
            ensure(pm.act_on_divisor(&div) == moved, || format!("spec {t}: action disagrees with divisor push-forward"))?;
            ensure(pm.from_divisor(&div).ok().as_deref() == Some(&v[..]), || format!("spec {t}: divisor round trip"))?;
        }
        let orbits = orbits_of(pm.permutation());
        let chosen: Vec<String> = orbits
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .flatten()
            .map(|&k| pm.points()[k].clone())
            .collect();
        let (sub, cert) = pm_inclusion(&pm, &chosen).map_err(|e| format!("spec {t}: {e}"))?;
        ensure(cert.holds() && sub.basis().is_stable_under(m.sigma()), || {
            format!("spec {t}: stability certificate fails for {chosen:?}")
        })?;
        inclusions += 1;
        if let Some(orbit) = orbits.iter().find(|o| o.len() > 1) {
            let partial = vec![pm.points()[orbit[0]].clone()];
            ensure(matches!(pm_inclusion(&pm, &partial), Err(Error::NotGStable(_))), || {
                format!("spec {t}: unstable subset {partial:?} accepted")
            })?;
        }
    }
    Ok(format!("50 random covers: rank, sigma order and degree laws hold; {inclusions} inclusions certified"))
}

/// Subgroup generated by `gens` in `Z/n_1 x ... x Z/n_k`, by closure.
fn span(factors: &[u64], gens: &[&Vec<u64>]) -> BTreeSet<Vec<u64>> {
    let zero = vec![0; factors.len()];
    let mut set = BTreeSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<u64> = x.iter().zip(g.iter()).zip(factors).map(|((a, b), n)| (a + b) % n).collect();
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

fn brute_t1(factors: &[u64], elements: &[Vec<u64>]) -> bool {
    let k = elements.len();
    // Each element goes to A, B or neither.
    for code in 0..3u32.pow(k as u32) {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        let mut x = code;
        for e in elements {
            match x % 3 {
                1 => a.push(e),
                2 => b.push(e),
                _ => {}
            }
            x /= 3;
        }
        if span(factors, &a).intersection(&span(factors, &b)).count() > 1 {
            return false;
        }
    }
    true
}

fn ac9_t1() -> Check {
    let groups: Vec<Vec<u64>> = vec![
        vec![2],
        vec![7],
        vec![4],
        vec![2, 2],
        vec![8],
        vec![2, 4],
        vec![3, 3],
        vec![9],
        vec![2, 2, 2],
        vec![12],
        vec![2, 6],
        vec![4, 4],
        vec![3, 9],
        vec![5, 5],
        vec![2, 2, 2, 2],
        vec![6, 6],
        vec![4, 4, 4],
        vec![3, 3, 3, 3],
        vec![2, 2, 2, 2, 2, 2, 2, 2],
        vec![2, 8, 16],
        vec![16, 16],
        vec![256],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checks = 0;
    let mut t1_true = 0;
    for factors in &groups {
        let group = AbelianGroup::new(factors.clone()).map_err(|e| e.to_string())?;
        ensure(group.order().is_some_and(|o| o <= 256), || format!("{factors:?} exceeds 256"))?;
        let mut sets: Vec<Vec<Vec<u64>>> = Vec::new();
        let basis: Vec<Vec<u64>> = (0..factors.len())
            .map(|i| (0..factors.len()).map(|j| u64::from(i == j)).collect())
            .collect();
        sets.push(basis.clone());
        sets.push(vec![basis[0].clone(), basis[0].clone()]);
        for _ in 0..30 {
            let k = rng.gen_range(1..=5);
            sets.push(
                (0..k)
                    .map(|_| factors.iter().map(|&n| rng.gen_range(0..n)).collect())
                    .collect(),
            );
        }
        for elements in &sets {
            let fast = is_type_t1(&group, elements, 256).map_err(|e| e.to_string())?;
            let slow = brute_t1(factors, elements);
            ensure(fast == slow, || format!("{factors:?} {elements:?}: checker {fast}, brute force {slow}"))?;
            checks += 1;
            t1_true += usize::from(slow);
        }
    }
    Ok(format!("{} groups, {checks} element sets ({t1_true} of type T1), all agree", groups.len()))
}

// ---------------------------------------------------------------------------

fn run(label: &str, title: &str, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let took = secs(start.elapsed());
    match outcome {
        Ok(detail) => {
            println!("[PASS] {label} {title}: {detail} ({took})");
            true
        }
        Err(why) => {
            println!("[FAIL] {label} {title}: {why} ({took})");
            false
        }
    }
}

fn main() {
    // Quiet the default panic message; failures are reported on the criterion line.
    std::panic::set_hook(Box::new(|_| {}));
    let mut ok = true;
    ok &= run("AC1", "cyclotomic shape law", ac1_shape_law);
    ok &= run("AC2", "Hensel consistency", ac2_hensel);
    let field_grid = catch_unwind(enumerate_field_grid).unwrap_or_else(|_| Err("enumeration panicked".into()));
    match &field_grid {
        Ok((grid, took)) => {
            ok &= run("AC3", "field criterion vs oracle", || ac3_field_criterion(grid, *took));
            ok &= run("AC4", "submodule count vs oracle", || ac4_count(grid));
        }
        Err(why) => {
            println!("[FAIL] AC3 field criterion vs oracle: {why}");
            println!("[FAIL] AC4 submodule count vs oracle: {why}");
            ok = false;
        }
    }
    ok &= run("AC5", "Gaussian binomial identity", ac5_gaussian);
    ok &= run("AC6", "decomposition conservation", ac6_conservation);
    ok &= run("AC7", "prime-power sufficiency", ac7_prime_power);
    ok &= run("AC8", "genus-0 rank law", ac8_genus0);
    ok &= run("AC9", "T1 checker vs brute force", ac9_t1);
    if !ok {
        std::process::exit(1);
    }
}
