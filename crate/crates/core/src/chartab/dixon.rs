use std::fmt::Display;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::modp;
use crate::covers::FiniteGroupTable;
use crate::error::{Error, Result};
use crate::qforms::arith::is_prime_u64;

/// An odd prime `p ≡ 1 (mod e)` with `p > 2·√|G|`, `e` the group exponent.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DixonPrime {
    pub p: u64,
    pub e: u64,
}

/// Default search limit for the Dixon prime; products stay inside `u64`.
pub const DEFAULT_PRIME_BOUND: u64 = 1 << 31;

impl DixonPrime {
    pub fn find(order: usize, exponent: usize, bound: u64) -> Result<Self> {
        let e = exponent as u64;
        let four_n = 4 * order as u128;
        let mut p = e + 1;
        while p < 3 || (p as u128) * (p as u128) <= four_n || p.is_multiple_of(2) || !is_prime_u64(p) {
            p += e;
            if p >= bound {
                return Err(Error::NoDixonPrime(bound));
            }
        }
        Ok(DixonPrime { p, e })
    }
}

#[derive(Clone, Debug)]
pub struct DixonOptions {
    /// Seed for the random class mixtures used when single classes do not
    /// separate all characters.
    pub seed: u64,
    /// Worker threads for building class matrices; results do not depend on it.
    pub workers: usize,
    pub prime_bound: u64,
    pub max_attempts: usize,
}

impl Default for DixonOptions {
    fn default() -> Self {
        DixonOptions { seed: 0, workers: 1, prime_bound: DEFAULT_PRIME_BOUND, max_attempts: 64 }
    }
}

/// Irreducible character degrees and central signs of a finite group,
/// with the underlying class data and character values mod `p`.
///
/// Characters are sorted by degree, then by central signs, then by their
/// values mod `p`.
#[derive(Clone, Debug, Serialize)]
pub struct CharTable {
    pub order: usize,
    pub prime: DixonPrime,
    /// Index of each class representative in the group table.
    pub class_reps: Vec<usize>,
    pub class_labels: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub degrees: Vec<u64>,
    /// Group indices of the central involutions.
    pub central_involutions: Vec<usize>,
    pub central_labels: Vec<String>,
    /// `central_signs[χ][k] = χ(z_k)/χ(1)` for the `k`-th central involution.
    pub central_signs: Vec<Vec<i8>>,
    /// `values[χ][k] = χ(g_k) mod p`.
    #[serde(skip)]
    pub values: Vec<Vec<u64>>,
}

impl CharTable {
    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    /// Position of `z` among [`CharTable::central_involutions`].
    pub fn involution_position(&self, z: usize) -> Option<usize> {
        self.central_involutions.iter().position(|&x| x == z)
    }
}

struct ClassData {
    members: Vec<Vec<usize>>,
    class_of: Vec<u32>,
    inverse_class: Vec<usize>,
}

impl ClassData {
    fn new<E: Clone + Eq + Hash + Ord>(g: &FiniteGroupTable<E>) -> Self {
        let members = g.conjugacy_classes();
        let mut class_of = vec![0u32; g.order()];
        for (k, c) in members.iter().enumerate() {
            for &x in c {
                class_of[x] = k as u32;
            }
        }
        let inverse_class = members.iter().map(|c| class_of[g.inv(c[0])] as usize).collect();
        ClassData { members, class_of, inverse_class }
    }

    fn len(&self) -> usize {
        self.members.len()
    }
}

/// `M_j` stored by columns as sparse `(row, count)` lists, where
/// `(M_j)_{ik} = #{y ∈ C_j : g_k y⁻¹ ∈ C_i}`. The vector of central
/// characters `ω_χ(C_k)` is a right eigenvector with eigenvalue `ω_χ(C_j)`.
type SparseCols = Vec<Vec<(u32, u64)>>;

fn class_matrix<E: Clone + Eq + Hash + Ord + Sync>(
    g: &FiniteGroupTable<E>,
    cd: &ClassData,
    j: usize,
    p: u64,
) -> SparseCols {
    let inverses: Vec<usize> = cd.members[j].iter().map(|&y| g.inv(y)).collect();
    (0..cd.len())
        .into_par_iter()
        .map(|k| {
            let rep = cd.members[k][0];
            let mut counts: Vec<(u32, u64)> = Vec::new();
            let mut dense = std::collections::BTreeMap::new();
            for &yi in &inverses {
                *dense.entry(cd.class_of[g.mul_idx(rep, yi)]).or_insert(0u64) += 1;
            }
            counts.extend(dense.into_iter().map(|(i, c)| (i, c % p)));
            counts
        })
        .collect()
}

fn apply(m: &SparseCols, v: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; v.len()];
    for (k, col) in m.iter().enumerate() {
        if v[k] == 0 {
            continue;
        }
        for &(i, c) in col {
            out[i as usize] = modp::add(out[i as usize], modp::mul(c, v[k], p), p);
        }
    }
    out
}

/// A subspace held as rows in reduced echelon form.
#[derive(Clone)]
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn from_vectors(mut rows: Vec<Vec<u64>>, p: u64) -> Self {
        let pivots = modp::rref(&mut rows, p);
        Subspace { basis: rows, pivots }
    }
}

/// Splits `space` into eigenspaces of the (invariant) operator `m`; `None`
/// when the restriction is not diagonalizable over `F_p`.
fn split(space: &Subspace, m: &dyn Fn(&[u64]) -> Vec<u64>, p: u64) -> Option<Vec<Subspace>> {
    let d = space.dim();
    let images: Vec<Vec<u64>> = space.basis.iter().map(|b| m(b)).collect();
    // restricted matrix: column l holds the coordinates of M b_l
    let a: Vec<Vec<u64>> = (0..d)
        .map(|r| (0..d).map(|l| images[l][space.pivots[r]]).collect())
        .collect();
    let cp = modp::charpoly(&a, p);
    let mut parts = Vec::new();
    let mut total = 0;
    for lambda in modp::roots(&cp, p) {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| if r == c { modp::sub(a[r][c], lambda, p) } else { a[r][c] })
                    .collect()
            })
            .collect();
        let ns = modp::nullspace(&shifted, p);
        total += ns.len();
        let vectors = ns
            .iter()
            .map(|coords| {
                let mut v = vec![0u64; space.basis[0].len()];
                for (l, &c) in coords.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (x, &b) in v.iter_mut().zip(&space.basis[l]) {
                        *x = modp::add(*x, modp::mul(c, b, p), p);
                    }
                }
                v
            })
            .collect();
        parts.push(Subspace::from_vectors(vectors, p));
    }
    (total == d).then_some(parts)
}

/// The Dixon–Schneider algorithm over `F_p`.
///
/// Common eigenvectors of the class matrices are found by splitting
/// `F_p^c` with one class matrix at a time, then with seeded random
/// combinations if needed. Each one-dimensional piece is a central
/// character `ω_χ`, from which `χ(1)² = |G| / Σ_k ω_k ω_{k*}/|C_k|` is read
/// off mod `p`. The degree is the unique square root below `p/2`.
pub fn dixon_character_table<E>(g: &FiniteGroupTable<E>, opts: &DixonOptions) -> Result<CharTable>
where
    E: Clone + Eq + Hash + Ord + Sync + Send + Display,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| table_inner(g, opts))
}

fn table_inner<E>(g: &FiniteGroupTable<E>, opts: &DixonOptions) -> Result<CharTable>
where
    E: Clone + Eq + Hash + Ord + Sync + Send + Display,
{
    let order = g.order();
    let prime = DixonPrime::find(order, g.exponent(), opts.prime_bound)?;
    let p = prime.p;
    let cd = ClassData::new(g);
    let c = cd.len();
    let sizes: Vec<usize> = cd.members.iter().map(Vec::len).collect();

    let identity: Vec<Vec<u64>> = (0..c)
        .map(|i| (0..c).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![Subspace::from_vectors(identity, p)];
    let mut cache: Vec<Option<SparseCols>> = vec![None; c];
    let get = |j: usize, cache: &mut Vec<Option<SparseCols>>| {
        if cache[j].is_none() {
            cache[j] = Some(class_matrix(g, &cd, j, p));
        }
    };

    let done = |spaces: &[Subspace]| spaces.iter().all(|s| s.dim() == 1);
    for j in 1..c {
        if done(&spaces) {
            break;
        }
        get(j, &mut cache);
        let m = cache[j].as_ref().expect("just built");
        let op = |v: &[u64]| apply(m, v, p);
        spaces = refine(spaces, &op, p);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut attempts = 0;
    while !done(&spaces) {
        if attempts == opts.max_attempts {
            return Err(Error::SplittingFailed(attempts));
        }
        attempts += 1;
        let picks: Vec<(usize, u64)> = (0..4.min(c))
            .map(|_| (rng.gen_range(0..c), rng.gen_range(1..p)))
            .collect();
        for &(j, _) in &picks {
            get(j, &mut cache);
        }
        let mats: Vec<(&SparseCols, u64)> =
            picks.iter().map(|&(j, w)| (cache[j].as_ref().expect("built"), w)).collect();
        let op = |v: &[u64]| {
            let mut out = vec![0u64; v.len()];
            for (m, w) in &mats {
                for (x, y) in out.iter_mut().zip(apply(m, v, p)) {
                    *x = modp::add(*x, modp::mul(*w, y, p), p);
                }
            }
            out
        };
        spaces = refine(spaces, &op, p);
    }

    // central characters normalized at the identity class
    let mut omegas: Vec<Vec<u64>> = Vec::with_capacity(c);
    for s in &spaces {
        let w = &s.basis[0];
        if w[0] == 0 {
            return Err(Error::Inconsistency("central character vanishes at the identity".into()));
        }
        let iv = modp::inv(w[0], p);
        omegas.push(w.iter().map(|&x| modp::mul(x, iv, p)).collect());
    }

    let size_inv: Vec<u64> = sizes.iter().map(|&s| modp::inv(s as u64 % p, p)).collect();
    let max_degree = (order as f64).sqrt() as u64 + 1;
    let mut chars: Vec<(u64, Vec<u64>)> = Vec::with_capacity(c);
    for w in omegas {
        let mut sum = 0u64;
        for k in 0..c {
            let t = modp::mul(modp::mul(w[k], w[cd.inverse_class[k]], p), size_inv[k], p);
            sum = modp::add(sum, t, p);
        }
        if sum == 0 {
            return Err(Error::Inconsistency("degenerate central character".into()));
        }
        let d2 = modp::mul(order as u64 % p, modp::inv(sum, p), p);
        let d = (1..=max_degree)
            .find(|&d| modp::mul(d, d, p) == d2)
            .ok_or_else(|| Error::Inconsistency("no integral degree for a central character".into()))?;
        let values: Vec<u64> =
            (0..c).map(|k| modp::mul(modp::mul(w[k], d % p, p), size_inv[k], p)).collect();
        chars.push((d, values));
    }

    let central_involutions: Vec<usize> = cd
        .members
        .iter()
        .filter(|m| m.len() == 1 && m[0] != g.identity() && g.element_order(m[0]) == 2)
        .map(|m| m[0])
        .collect();
    let sign_of = |values: &[u64], d: u64, z: usize| -> Result<i8> {
        let k = cd.class_of[z] as usize;
        let ratio = modp::mul(values[k], modp::inv(d % p, p), p);
        match ratio {
            1 => Ok(1),
            r if r == p - 1 => Ok(-1),
            _ => Err(Error::Inconsistency("central involution acts by a non-sign scalar".into())),
        }
    };
    let mut rows: Vec<(u64, Vec<i8>, Vec<u64>)> = Vec::with_capacity(c);
    for (d, values) in chars {
        let signs = central_involutions
            .iter()
            .map(|&z| sign_of(&values, d, z))
            .collect::<Result<Vec<i8>>>()?;
        rows.push((d, signs, values));
    }
    rows.sort();

    verify(&rows, &sizes, &cd.inverse_class, order, p)?;

    Ok(CharTable {
        order,
        prime,
        class_reps: cd.members.iter().map(|m| m[0]).collect(),
        class_labels: cd.members.iter().map(|m| g.element(m[0]).to_string()).collect(),
        class_sizes: sizes,
        degrees: rows.iter().map(|r| r.0).collect(),
        central_labels: central_involutions.iter().map(|&z| g.element(z).to_string()).collect(),
        central_involutions,
        central_signs: rows.iter().map(|r| r.1.clone()).collect(),
        values: rows.into_iter().map(|r| r.2).collect(),
    })
}

fn refine(spaces: Vec<Subspace>, op: &dyn Fn(&[u64]) -> Vec<u64>, p: u64) -> Vec<Subspace> {
    let mut out = Vec::with_capacity(spaces.len());
    for s in spaces {
        if s.dim() == 1 {
            out.push(s);
            continue;
        }
        match split(&s, op, p) {
            Some(parts) => out.extend(parts),
            None => out.push(s),
        }
    }
    out
}

fn verify(
    rows: &[(u64, Vec<i8>, Vec<u64>)],
    sizes: &[usize],
    inverse_class: &[usize],
    order: usize,
    p: u64,
) -> Result<()> {
    let c = sizes.len();
    if rows.len() != c {
        return Err(Error::Inconsistency("character count differs from class count".into()));
    }
    let sum_sq: u128 = rows.iter().map(|r| (r.0 as u128).pow(2)).sum();
    if sum_sq != order as u128 {
        return Err(Error::Inconsistency(format!("sum of squared degrees {sum_sq} ≠ |G| = {order}")));
    }
    if let Some(r) = rows.iter().find(|r| !(order as u64).is_multiple_of(r.0)) {
        return Err(Error::Inconsistency(format!("degree {} does not divide |G|", r.0)));
    }
    // column orthogonality: Σ_χ χ(g_k) χ(g_l⁻¹) = δ_kl |G|/|C_k|
    for k in 0..c {
        let expected = modp::mul(order as u64 % p, modp::inv(sizes[k] as u64 % p, p), p);
        for l in 0..c {
            let li = inverse_class[l];
            let s = rows
                .iter()
                .fold(0u64, |acc, r| modp::add(acc, modp::mul(r.2[k], r.2[li], p), p));
            let want = if k == l { expected } else { 0 };
            if s != want {
                return Err(Error::Inconsistency(format!("column orthogonality fails at ({k}, {l})")));
            }
        }
    }
    Ok(())
}

/// Minimal dimension of an irreducible representation with `ρ(z) = -1`,
/// and how many irreducibles attain it.
///
/// Requires the center to be exactly `{1, z}`; then every faithful
/// representation of minimal dimension is irreducible.
pub fn min_faithful_irrep<E>(
    g: &FiniteGroupTable<E>,
    z: &E,
    opts: &DixonOptions,
) -> Result<(u64, usize)>
where
    E: Clone + Eq + Hash + Ord + Sync + Send + Display,
{
    let zi = g
        .index_of(z)
        .ok_or_else(|| Error::Precondition("z is not an element of the group".into()))?;
    let center = g.center_indices();
    if center.len() != 2 || !center.contains(&zi) || zi == g.identity() {
        return Err(Error::CenterNotOrderTwo(center.len()));
    }
    let table = dixon_character_table(g, opts)?;
    let pos = table
        .involution_position(zi)
        .ok_or_else(|| Error::Inconsistency("z missing from central involutions".into()))?;
    let faithful: Vec<u64> = table
        .degrees
        .iter()
        .zip(&table.central_signs)
        .filter(|(_, s)| s[pos] == -1)
        .map(|(&d, _)| d)
        .collect();
    let min = *faithful
        .iter()
        .min()
        .ok_or_else(|| Error::Inconsistency("no irreducible with ρ(z) = -1".into()))?;
    Ok((min, faithful.iter().filter(|&&d| d == min).count()))
}

pub fn min_faithful_irrep_dim<E>(g: &FiniteGroupTable<E>, z: &E, opts: &DixonOptions) -> Result<u64>
where
    E: Clone + Eq + Hash + Ord + Sync + Send + Display,
{
    Ok(min_faithful_irrep(g, z, opts)?.0)
}

pub fn count_min_faithful<E>(g: &FiniteGroupTable<E>, z: &E, opts: &DixonOptions) -> Result<usize>
where
    E: Clone + Eq + Hash + Ord + Sync + Send + Display,
{
    Ok(min_faithful_irrep(g, z, opts)?.1)
}
