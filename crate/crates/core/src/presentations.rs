//! Presentations of pure braid groups, braid groups, their sphere
//! quotients, the fundamental groups of the configuration strata of
//! points in complex projective space, and of the Pappus configuration
//! space.
//!
//! Generator names: `a{i}_{j}` for the pure generators `α_ij`, `s{i}` for
//! the Artin generators `σ_i`, and `b{i}_{j}` / `bp{i}_{j}` for the Pappus
//! generators `β_ij` / `β'_ij`.

use thiserror::Error;

use crate::braid::{delta_word, BraidWord, DeltaVariant, PureGenerator};
use crate::fpgroup::{
    eliminate_generator, prove_by_commuting, ConsequenceCertificate, FreeWord, GroupError, Lemma, Presentation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StratumError {
    #[error("invalid stratum parameters k={k_points}, i={i_dim}, n={n_dim}")]
    InvalidParams {
        k_points: usize,
        i_dim: usize,
        n_dim: usize,
    },
    #[error("stratum k={k_points}, i={i_dim}, n={n_dim} is empty")]
    EmptyStratum {
        k_points: usize,
        i_dim: usize,
        n_dim: usize,
    },
}

/// Configurations of `k_points` points in `CP^n_dim` spanning a projective
/// subspace of dimension `i_dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StratumParams {
    k_points: usize,
    i_dim: usize,
    n_dim: usize,
}

impl StratumParams {
    pub fn new(k_points: usize, i_dim: usize, n_dim: usize) -> Result<Self, StratumError> {
        if k_points == 0 || i_dim == 0 || n_dim == 0 || i_dim > n_dim {
            return Err(StratumError::InvalidParams { k_points, i_dim, n_dim });
        }
        Ok(StratumParams { k_points, i_dim, n_dim })
    }

    pub fn k_points(&self) -> usize {
        self.k_points
    }

    pub fn i_dim(&self) -> usize {
        self.i_dim
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    fn empty_error(&self) -> StratumError {
        StratumError::EmptyStratum {
            k_points: self.k_points,
            i_dim: self.i_dim,
            n_dim: self.n_dim,
        }
    }
}

/// Complex dimension `k·i + (i+1)(n−i)`.
pub fn stratum_dimension(params: &StratumParams) -> usize {
    let (k, i, n) = (params.k_points, params.i_dim, params.n_dim);
    k * i + (i + 1) * (n - i)
}

/// Nonemptiness as the criterion `i ≤ min(k + 1, n)`.
pub fn stratum_nonempty(params: &StratumParams) -> bool {
    params.i_dim <= (params.k_points + 1).min(params.n_dim)
}

/// The stricter bound `i ≤ min(k − 1, n)`: `k` points span at most a
/// `(k−1)`-dimensional subspace.
pub fn spanning_consistent(params: &StratumParams) -> bool {
    params.i_dim < params.k_points && params.i_dim <= params.n_dim
}

/// Pairs `(i, j)`, `1 ≤ i < j ≤ n`, in generator order.
pub fn pure_generator_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// 1-based position of `α_ij` among the generators of `PB_n`.
fn alpha_index(n: usize, i: usize, j: usize) -> i32 {
    // Pairs starting with 1..i-1 come first.
    let before: usize = (1..i).map(|r| n - r).sum();
    (before + (j - i)) as i32
}

fn alpha(n: usize, i: usize, j: usize) -> FreeWord {
    FreeWord::generator(alpha_index(n, i, j) as usize)
}

/// `PB_n` with generators `α_ij` and the Yang–Baxter relations: two
/// relators per triple from `α_ij α_ik α_jk = α_ik α_jk α_ij = α_jk α_ij α_ik`
/// and four commutators per quadruple.
pub fn pure_braid_presentation(n: usize) -> Presentation {
    let names = pure_generator_pairs(n).into_iter().map(|(i, j)| format!("a{i}_{j}"));
    let mut p = Presentation::new(names).expect("valid names");
    let a = |i, j| alpha(n, i, j);
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let chain = [
                    FreeWord::product([&a(i, j), &a(i, k), &a(j, k)]),
                    FreeWord::product([&a(i, k), &a(j, k), &a(i, j)]),
                    FreeWord::product([&a(j, k), &a(i, j), &a(i, k)]),
                ];
                p.add_equality_chain(&chain).expect("generators exist");
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    let relators = [
                        FreeWord::commutator(&a(k, l), &a(i, j)),
                        FreeWord::commutator(&a(i, l), &a(j, k)),
                        FreeWord::commutator(&a(j, l), &FreeWord::product([&a(j, k).inverse(), &a(i, k), &a(j, k)])),
                        FreeWord::commutator(&a(j, l), &FreeWord::product([&a(k, l), &a(i, k), &a(k, l).inverse()])),
                    ];
                    for r in &relators {
                        p.add_relator(r).expect("generators exist");
                    }
                }
            }
        }
    }
    p
}

/// `D_k = α_12 (α_13 α_23) … (α_1k … α_{k−1,k})` over the generators of
/// [`pure_braid_presentation`]`(k)`.
pub fn pure_full_twist(k: usize) -> FreeWord {
    let mut letters = Vec::new();
    for j in 2..=k {
        for i in 1..j {
            letters.push(alpha_index(k, i, j));
        }
    }
    FreeWord::new(letters)
}

/// Maps a word in the generators of `PB_n` to the braid it denotes.
pub fn pure_word_to_braid(w: &FreeWord, n: usize) -> BraidWord {
    let pairs = pure_generator_pairs(n);
    let mut letters = Vec::new();
    for &e in w.letters() {
        let (i, j) = pairs[e.unsigned_abs() as usize - 1];
        let g = PureGenerator::new(i, j, n).expect("valid pair").expand();
        if e > 0 {
            letters.extend_from_slice(g.letters());
        } else {
            letters.extend_from_slice(g.inverse().letters());
        }
    }
    BraidWord::new(n.max(1), letters).expect("letters in range")
}

/// `B_n` with generators `σ_1 … σ_{n−1}`: commuting relators for
/// `|i − j| ≥ 2`, then braid relators for adjacent pairs.
pub fn artin_presentation(n: usize) -> Presentation {
    let gens = n.saturating_sub(1);
    let mut p = Presentation::new((1..=gens).map(|i| format!("s{i}"))).expect("valid names");
    let s = FreeWord::generator;
    for i in 1..=gens {
        for j in i + 2..=gens {
            p.add_relator(&FreeWord::commutator(&s(i), &s(j)))
                .expect("generators exist");
        }
    }
    for i in 1..gens {
        let lhs = FreeWord::product([&s(i), &s(i + 1), &s(i)]);
        let rhs = FreeWord::product([&s(i + 1), &s(i), &s(i + 1)]);
        p.add_relation(&lhs, &rhs).expect("generators exist");
    }
    p
}

/// `PB_k` with the extra relator `D_k²`: the pure braid group of `k + 1`
/// points on the sphere.
pub fn sphere_pure_presentation(k: usize) -> Presentation {
    let mut p = pure_braid_presentation(k);
    p.add_relator(&pure_full_twist(k).pow(2)).expect("generators exist");
    p
}

/// `σ_1 σ_2 … σ_{k−1} σ_k² σ_{k−1} … σ_1`
pub fn sphere_relator(k: usize) -> FreeWord {
    let k = k as i32;
    let mut letters: Vec<i32> = (1..=k).collect();
    letters.extend((1..=k).rev());
    FreeWord::new(letters)
}

/// `B_{k+1}` with the sphere relator: the braid group of `k + 1` points on
/// the sphere.
pub fn sphere_braid_presentation(k: usize) -> Presentation {
    let mut p = artin_presentation(k + 1);
    p.add_relator(&sphere_relator(k)).expect("generators exist");
    p
}

/// `Δ_k² = (σ_1 (σ_2σ_1) … (σ_{k−1} … σ_1))²`, using only `σ_1 … σ_{k−1}`.
pub fn half_twist_squared(k: usize) -> FreeWord {
    match delta_word(k, DeltaVariant::AscendingStacks) {
        Ok(d) => FreeWord::new(d.letters().to_vec()).pow(2),
        Err(_) => FreeWord::empty(),
    }
}

/// Coxeter presentation of `Σ_m`: Artin relators plus `σ_i²`.
pub fn symmetric_presentation(m: usize) -> Presentation {
    let mut p = artin_presentation(m);
    for i in 1..m {
        p.add_relator(&FreeWord::generator(i).pow(2)).expect("generators exist");
    }
    p
}

/// Fundamental group of the ordered stratum. With `k = k_points − 1`:
/// `i = n = 1, k ≥ 2` gives the sphere pure braid group; `i = 1, n ≥ 2,
/// k ≥ 3` gives `PB_k` with `D_k = 1`; every other nonempty stratum is
/// simply connected.
pub fn f_stratum_presentation(params: &StratumParams) -> Result<Presentation, StratumError> {
    if !stratum_nonempty(params) {
        return Err(params.empty_error());
    }
    let k = params.k_points - 1;
    Ok(match (params.i_dim, params.n_dim) {
        (1, 1) if k >= 2 => sphere_pure_presentation(k),
        (1, n) if n >= 2 && k >= 3 => {
            let mut p = pure_braid_presentation(k);
            p.add_relator(&pure_full_twist(k)).expect("generators exist");
            p
        }
        _ => Presentation::trivial(),
    })
}

/// Fundamental group of the unordered stratum. With `k = k_points − 1`:
/// `i = n = 1, k ≥ 2` gives the sphere braid group on `k + 1` strands;
/// `i = 1, n ≥ 2, k ≥ 3` adds `Δ_k² = 1`; otherwise `Σ_{k_points}`.
pub fn c_stratum_presentation(params: &StratumParams) -> Result<Presentation, StratumError> {
    if !stratum_nonempty(params) {
        return Err(params.empty_error());
    }
    let k = params.k_points - 1;
    Ok(match (params.i_dim, params.n_dim) {
        (1, 1) if k >= 2 => sphere_braid_presentation(k),
        (1, n) if n >= 2 && k >= 3 => {
            let mut p = sphere_braid_presentation(k);
            p.add_relator(&half_twist_squared(k)).expect("generators exist");
            p
        }
        _ => symmetric_presentation(params.k_points),
    })
}

const PAPPUS_PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

/// Fundamental group of the Pappus subspace `P_I`: generators `β_ij` and
/// `β'_ij`, Yang–Baxter chains for each family, all commutators
/// `[β_ij, β'_pq]`, and `β'_12 β'_13 β'_23 = β_12 β_13 β_23`.
pub fn pappus_pi_presentation() -> Presentation {
    let names = ["b", "bp"]
        .iter()
        .flat_map(|prefix| PAPPUS_PAIRS.iter().map(move |(i, j)| format!("{prefix}{i}_{j}")));
    let mut p = Presentation::new(names).expect("valid names");
    let b = |i: usize| FreeWord::generator(i);
    let bp = |i: usize| FreeWord::generator(i + 3);
    for g in [b, bp] {
        // generators 1, 2, 3 are the pairs 12, 13, 23
        let chain = [
            FreeWord::product([&g(1), &g(2), &g(3)]),
            FreeWord::product([&g(2), &g(3), &g(1)]),
            FreeWord::product([&g(3), &g(1), &g(2)]),
        ];
        p.add_equality_chain(&chain).expect("generators exist");
    }
    for x in 1..=3 {
        for y in 1..=3 {
            p.add_relator(&FreeWord::commutator(&b(x), &bp(y)))
                .expect("generators exist");
        }
    }
    p.add_relation(&pappus_product(true), &pappus_product(false))
        .expect("generators exist");
    p
}

/// `β_12 β_13 β_23`, or `β'_12 β'_13 β'_23` when `primed`.
pub fn pappus_product(primed: bool) -> FreeWord {
    let offset = if primed { 3 } else { 0 };
    FreeWord::new(vec![1 + offset, 2 + offset, 3 + offset])
}

/// The Pappus configuration space: `P_I` with `β_12 β_13 β_23 = 1`.
pub fn pappus_p_presentation() -> Presentation {
    let mut p = pappus_pi_presentation();
    p.add_relator(&pappus_product(false)).expect("generators exist");
    p
}

/// Outcome of eliminating generators and then discarding relators that
/// are certified consequences of a target set.
#[derive(Debug, Clone)]
pub struct TietzeReduction {
    /// Presentation right after the eliminations.
    pub eliminated: Presentation,
    /// Same generators, only the target relators.
    pub reduced: Presentation,
    /// The discarded relators with certificates over `reduced`.
    pub removed: Vec<(FreeWord, ConsequenceCertificate)>,
}

fn eliminate_via(p: &Presentation, gen: &str, defining: &FreeWord) -> Result<Presentation, GroupError> {
    let index = p
        .find_relator(defining)
        .ok_or_else(|| GroupError::MissingRelator(p.format_word(defining)))?;
    eliminate_generator(p, gen, index)
}

fn reduce_to(
    eliminated: Presentation,
    target: &[FreeWord],
    left: &[usize],
    right: &[usize],
    lemma_pairs: &[(usize, usize)],
) -> Result<TietzeReduction, GroupError> {
    let keep = target
        .iter()
        .map(|w| {
            eliminated
                .find_relator(w)
                .ok_or_else(|| GroupError::MissingRelator(eliminated.format_word(w)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let reduced = eliminated.with_relators(&keep)?;
    let lemmas = lemma_pairs
        .iter()
        .map(|&(a, b)| Ok(Lemma::relator(&reduced, a)?.product(&Lemma::relator(&reduced, b)?)))
        .collect::<Result<Vec<_>, GroupError>>()?;
    let mut removed = Vec::new();
    for (i, r) in eliminated.relators().iter().enumerate() {
        if keep.contains(&i) {
            continue;
        }
        let cert = prove_by_commuting(&reduced, r, left, right, &lemmas)
            .ok_or_else(|| GroupError::Uncertified(eliminated.format_word(r)))?;
        removed.push((r.clone(), cert));
    }
    Ok(TietzeReduction {
        eliminated,
        reduced,
        removed,
    })
}

/// Eliminates `β_23` (via `β_12 β_13 β_23`) and then `β'_23` (via
/// `β'_12 β'_13 β'_23`) from a presentation on the Pappus generators, and
/// reduces the rest to the four commutators `[β_1x, β'_1y]`.
pub fn reduce_pappus_p(p: &Presentation) -> Result<TietzeReduction, GroupError> {
    let once = eliminate_via(p, "b2_3", &pappus_product(false))?;
    let primed = FreeWord::product(
        ["bp1_2", "bp1_3", "bp2_3"]
            .iter()
            .map(|g| once.generator_word(g))
            .collect::<Result<Vec<_>, _>>()?
            .iter(),
    );
    let twice = eliminate_via(&once, "bp2_3", &primed)?;
    let g = |name: &str| twice.generator_word(name);
    let mut target = Vec::new();
    for x in ["b1_2", "b1_3"] {
        for y in ["bp1_2", "bp1_3"] {
            target.push(FreeWord::commutator(&g(x)?, &g(y)?));
        }
    }
    reduce_to(twice, &target, &[1, 2], &[3, 4], &[])
}

/// Eliminates `β'_23` via `β'_12 β'_13 β'_23 = β_12 β_13 β_23` and reduces
/// the rest to the Yang–Baxter relators in the `β_ij` plus the commutators
/// `[β_ij, β'_1y]`.
pub fn reduce_pappus_pi(p: &Presentation) -> Result<TietzeReduction, GroupError> {
    let relation = pappus_product(true).concat(&pappus_product(false).inverse());
    let e = eliminate_via(p, "bp2_3", &relation)?;
    let g = |name: &str| e.generator_word(name);
    let (x, y, z) = (g("b1_2")?, g("b1_3")?, g("b2_3")?);
    let mut target = vec![
        FreeWord::product([&x, &y, &z, &FreeWord::product([&y, &z, &x]).inverse()]),
        FreeWord::product([&y, &z, &x, &FreeWord::product([&z, &x, &y]).inverse()]),
    ];
    for b in ["b1_2", "b1_3", "b2_3"] {
        for bp in ["bp1_2", "bp1_3"] {
            target.push(FreeWord::commutator(&g(b)?, &g(bp)?));
        }
    }
    // The product of the two Yang–Baxter relators lets conjugates of
    // β_12 β_13 β_23 be shortened.
    reduce_to(e, &target, &[1, 2, 3], &[4, 5], &[(0, 1)])
}
