//! The twelve acceptance criteria, one pass/fail line each.
//!
//! Runs as a plain binary so the report is always printed; exits non-zero
//! if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use braidforge::braid::{
    ascending_run, delta_word, descending_run, full_twist_word, BraidWord, DeltaVariant, FullTwistVariant,
    PureGenerator,
};
use braidforge::fpgroup::{
    abelianization, check_homomorphism, coset_enumerate, eliminate_generator, is_free_of_rank, isomorphic_small_groups,
    multiplication_table, smith_normal_form, verify_consequence, AbelianInvariants, FreeWord, Presentation,
    DEFAULT_MAX_COSETS,
};
use braidforge::garside::{braids_equal, normal_form};
use braidforge::perm::Permutation;
use braidforge::presentations::{self, pure_full_twist, StratumParams};
use braidforge::trajectory::{extract_braid, sample_rotating_loop, ExtractionParams};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Option<u64>, Check); 12] = [
        ("half-twist words agree, n=2..8", Some(1), half_twist_words),
        ("full-twist words and cancelation identity", Some(5), full_twist_words),
        ("run identities and full-twist centrality", None, run_identities),
        ("ordered strata abelianizations", None, ordered_homology),
        ("unordered strata abelianizations", None, unordered_homology),
        ("three unordered points: dicyclic of order 12", Some(1), dicyclic),
        ("three ordered points: Z_2", None, ordered_order_two),
        ("four ordered points on a line: free of rank 2", None, free_rank_two),
        ("Pappus reductions", None, pappus),
        ("rotating loop traces the full twist", Some(10), rotating_loop),
        ("symmetric quotients of unordered strata", None, symmetric_quotients),
        ("random-word and random-matrix properties", None, properties),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(secs)) if elapsed > Duration::from_secs(*secs) => {
                Err(format!("took {elapsed:.2?}, limit {secs}s"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} pass  {name} ({detail}; {elapsed:.2?})", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn equal(u: &BraidWord, v: &BraidWord) -> bool {
    braids_equal(u, v).unwrap()
}

fn s(n: usize, i: usize) -> BraidWord {
    BraidWord::new(n, vec![i as i32]).unwrap()
}

fn cat(words: &[&BraidWord]) -> BraidWord {
    words[1..]
        .iter()
        .fold(words[0].clone(), |acc, w| acc.concat(w).unwrap())
}

fn params(k: usize, i: usize, n: usize) -> StratumParams {
    StratumParams::new(k, i, n).unwrap()
}

fn binom2(k: usize) -> usize {
    k * (k - 1) / 2
}

fn half_twist_words() -> Result<String, String> {
    for n in 2..=8 {
        let words: Vec<BraidWord> = DeltaVariant::ALL.iter().map(|&v| delta_word(n, v).unwrap()).collect();
        for a in &words {
            for b in &words {
                ensure(equal(a, b), || format!("n={n}: {a} vs {b}"))?;
                ensure(normal_form(a) == normal_form(b), || {
                    format!("n={n}: normal forms differ")
                })?;
            }
        }
    }
    Ok("4 variants".into())
}

fn full_twist_words() -> Result<String, String> {
    for n in 2..=7 {
        let words: Vec<BraidWord> = FullTwistVariant::ALL
            .iter()
            .map(|&v| full_twist_word(n, v).unwrap())
            .collect();
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                ensure(equal(a, b), || format!("n={n}: {a} vs {b}"))?;
            }
        }
    }
    for n in 2..=8 {
        let letters: Vec<i32> = (1..n)
            .flat_map(|i| PureGenerator::new(i, n, n).unwrap().expand().letters().to_vec())
            .collect();
        let lhs = BraidWord::new(n, letters).unwrap();
        let rhs = cat(&[&descending_run(n, n - 1).unwrap(), &ascending_run(n, n - 1).unwrap()]);
        ensure(equal(&lhs, &rhs), || format!("cancelation fails for n={n}"))?;
    }
    Ok("7 variants, n=2..7; cancelation n=2..8".into())
}

fn run_identities() -> Result<String, String> {
    let mut count = 0;
    for n in 2..=8 {
        for k in 1..n {
            let up = ascending_run(n, k).unwrap();
            let down = descending_run(n, k).unwrap();
            let hook = cat(&[&down, &up]);
            for i in 1..k {
                ensure(equal(&cat(&[&up, &s(n, i)]), &cat(&[&s(n, i + 1), &up])), || {
                    format!("ascending n={n} k={k} i={i}")
                })?;
                ensure(equal(&cat(&[&hook, &s(n, i)]), &cat(&[&s(n, i), &hook])), || {
                    format!("hook n={n} k={k} j={i}")
                })?;
                count += 2;
            }
            for i in 2..=k {
                ensure(equal(&cat(&[&down, &s(n, i)]), &cat(&[&s(n, i - 1), &down])), || {
                    format!("descending n={n} k={k} i={i}")
                })?;
                count += 1;
            }
        }
    }
    for n in 2..=7 {
        let d = full_twist_word(n, FullTwistVariant::A).unwrap();
        for i in 1..n {
            ensure(equal(&cat(&[&d, &s(n, i)]), &cat(&[&s(n, i), &d])), || {
                format!("centrality n={n} i={i}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} identities"))
}

fn expect(p: &Presentation, expected: AbelianInvariants, what: String) -> Result<(), String> {
    let h = abelianization(p);
    ensure(h == expected, || format!("{what}: got {h}, expected {expected}"))
}

fn ordered_homology() -> Result<String, String> {
    for k in 2..=8 {
        let rank = binom2(k) - 1;
        let p = presentations::f_stratum_presentation(&params(k + 1, 1, 1)).unwrap();
        expect(&p, AbelianInvariants::new(rank, &[2]), format!("k={k} n=1"))?;
        for n in 2..=4 {
            let p = presentations::f_stratum_presentation(&params(k + 1, 1, n)).unwrap();
            expect(&p, AbelianInvariants::new(rank, &[]), format!("k={k} n={n}"))?;
        }
    }
    Ok("k=2..8".into())
}

fn unordered_homology() -> Result<String, String> {
    for k in 2..=8 {
        let p = presentations::c_stratum_presentation(&params(k + 1, 1, 1)).unwrap();
        expect(&p, AbelianInvariants::new(0, &[2 * k as u64]), format!("k={k} n=1"))?;
    }
    for k in 3..=8 {
        let d = if k % 2 == 0 { k } else { 2 * k } as u64;
        for n in 2..=4 {
            let p = presentations::c_stratum_presentation(&params(k + 1, 1, n)).unwrap();
            expect(&p, AbelianInvariants::new(0, &[d]), format!("k={k} n={n}"))?;
        }
    }
    let mut generic = 0;
    for k_points in 1..=6 {
        for n in 2..=6 {
            for i in 2..=n {
                let ps = params(k_points, i, n);
                if !presentations::stratum_nonempty(&ps) {
                    continue;
                }
                let p = presentations::c_stratum_presentation(&ps).unwrap();
                // A single point has trivial symmetric group.
                let expected = if k_points == 1 {
                    AbelianInvariants::new(0, &[])
                } else {
                    AbelianInvariants::new(0, &[2])
                };
                expect(&p, expected, format!("k_points={k_points} i={i} n={n}"))?;
                generic += 1;
            }
        }
    }
    Ok(format!("{generic} non-exceptional strata"))
}

fn dicyclic() -> Result<String, String> {
    let p = presentations::c_stratum_presentation(&params(3, 1, 1)).unwrap();
    let t = coset_enumerate(&p, &[], DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
    ensure(t.cosets() == 12, || format!("{} cosets", t.cosets()))?;
    let dic: Presentation = "gens: a b\nrel: a a a a a a\nrel: b b a' a' a'\nrel: b' a b a"
        .parse()
        .unwrap();
    let dt = coset_enumerate(&dic, &[], DEFAULT_MAX_COSETS).unwrap();
    let a = multiplication_table(&t, &p).map_err(|e| e.to_string())?;
    let b = multiplication_table(&dt, &dic).unwrap();
    ensure(isomorphic_small_groups(&a, &b).unwrap(), || {
        "not isomorphic to Dic_3".into()
    })?;
    Ok("12 cosets".into())
}

fn ordered_order_two() -> Result<String, String> {
    let p = presentations::f_stratum_presentation(&params(3, 1, 1)).unwrap();
    let t = coset_enumerate(&p, &[], DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
    ensure(t.cosets() == 2, || format!("order {}", t.cosets()))?;
    Ok("order 2".into())
}

fn free_rank_two() -> Result<String, String> {
    let p = presentations::f_stratum_presentation(&params(4, 1, 2)).unwrap();
    let d = p.find_relator(&pure_full_twist(3)).ok_or("missing D_3")?;
    for g in ["a1_2", "a1_3", "a2_3"] {
        let q = eliminate_generator(&p, g, d).map_err(|e| format!("{g}: {e}"))?;
        ensure(q.generator_count() == 2 && q.relators().is_empty(), || {
            format!("{g}: {q}")
        })?;
        ensure(is_free_of_rank(&q) == Some(2), || format!("{g}: not free of rank 2"))?;
    }
    Ok("3 elimination choices".into())
}

/// Every relator of `actual` is in `expected` up to rotation and
/// inversion, and conversely.
fn same_relator_set(actual: &Presentation, expected: &Presentation) -> Result<(), String> {
    ensure(actual.generators() == expected.generators(), || {
        "generator names differ".into()
    })?;
    ensure(actual.relators().len() == expected.relators().len(), || {
        format!(
            "{} relators, expected {}",
            actual.relators().len(),
            expected.relators().len()
        )
    })?;
    for r in actual.relators() {
        ensure(expected.find_relator(r).is_some(), || {
            format!("unexpected relator {}", actual.format_word(r))
        })?;
    }
    Ok(())
}

fn pappus() -> Result<String, String> {
    let g = FreeWord::generator;
    let red = presentations::reduce_pappus_p(&presentations::pappus_p_presentation()).map_err(|e| e.to_string())?;
    let mut expected = Presentation::new(["b1_2", "b1_3", "bp1_2", "bp1_3"]).unwrap();
    for x in 1..=2 {
        for y in 3..=4 {
            expected.add_relator(&FreeWord::commutator(&g(x), &g(y))).unwrap();
        }
    }
    same_relator_set(&red.reduced, &expected).map_err(|e| format!("P: {e}"))?;
    for (w, cert) in &red.removed {
        ensure(verify_consequence(&red.reduced, w, cert), || {
            "P: certificate rejected".into()
        })?;
    }
    ensure(abelianization(&red.reduced) == AbelianInvariants::new(4, &[]), || {
        "P: H_1".into()
    })?;

    let red = presentations::reduce_pappus_pi(&presentations::pappus_pi_presentation()).map_err(|e| e.to_string())?;
    let mut expected = Presentation::new(["b1_2", "b1_3", "b2_3", "bp1_2", "bp1_3"]).unwrap();
    let cyc = |a: usize, b: usize, c: usize| FreeWord::product([&g(a), &g(b), &g(c)]);
    expected
        .add_equality_chain(&[cyc(1, 2, 3), cyc(2, 3, 1), cyc(3, 1, 2)])
        .unwrap();
    for x in 1..=3 {
        for y in 4..=5 {
            expected.add_relator(&FreeWord::commutator(&g(x), &g(y))).unwrap();
        }
    }
    same_relator_set(&red.reduced, &expected).map_err(|e| format!("P_I: {e}"))?;
    for (w, cert) in &red.removed {
        ensure(verify_consequence(&red.reduced, w, cert), || {
            "P_I: certificate rejected".into()
        })?;
    }
    ensure(abelianization(&red.reduced) == AbelianInvariants::new(5, &[]), || {
        "P_I: H_1".into()
    })?;
    Ok("F_2 × F_2 and PB_3 × F_2 relator sets".into())
}

fn rotating_loop() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut extractions = 0;
    for k in 2..=5 {
        let twist = full_twist_word(k, FullTwistVariant::F).unwrap();
        let base = 16 * k * k;
        for samples in [base, 2 * base] {
            let paths = sample_rotating_loop(k, samples).map_err(|e| e.to_string())?;
            let mut angles = vec![0.0];
            angles.extend((0..5).map(|_| rng.gen_range(0.0..std::f64::consts::PI)));
            for angle in angles {
                let params = ExtractionParams {
                    projection_angle: angle,
                    ..ExtractionParams::default()
                };
                let x = extract_braid(&paths, &params).map_err(|e| format!("k={k}: {e}"))?;
                ensure(equal(&x.word, &twist), || {
                    format!("k={k} samples={samples} angle={angle}: {}", x.word)
                })?;
                extractions += 1;
            }
        }
    }
    Ok(format!("{extractions} extractions"))
}

fn symmetric_quotients() -> Result<String, String> {
    let mut count = 0;
    for k_points in 1..=7 {
        for n in 1..=6 {
            for i in 1..=n {
                let ps = params(k_points, i, n);
                if !presentations::stratum_nonempty(&ps) {
                    continue;
                }
                let p = presentations::c_stratum_presentation(&ps).unwrap();
                let images = p
                    .generators()
                    .iter()
                    .enumerate()
                    .map(|(j, g)| (g.clone(), Permutation::transposition(k_points, j + 1, j + 2).unwrap()))
                    .collect();
                let ok = check_homomorphism(&p, &images).map_err(|e| e.to_string())?;
                ensure(ok, || format!("k_points={k_points} i={i} n={n}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} strata"))
}

fn random_word(rng: &mut ChaCha8Rng) -> BraidWord {
    let n = rng.gen_range(2..=6);
    let len = rng.gen_range(0..=40);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(n, letters).unwrap()
}

/// Inserts a braid relation, a far commutation or a free cancellation at
/// a random position.
fn perturb(w: &BraidWord, rng: &mut ChaCha8Rng) -> BraidWord {
    let n = w.strands() as i32;
    let i = rng.gen_range(1..n);
    let insert: Vec<i32> = match rng.gen_range(0..3) {
        0 => vec![i, -i],
        1 if i + 1 < n => vec![i, i + 1, i, -(i + 1), -i, -(i + 1)],
        _ => {
            let far = (1..n).find(|j| (j - i).abs() >= 2);
            match far {
                Some(j) => vec![i, j, -i, -j],
                None => vec![-i, i],
            }
        }
    };
    let pos = rng.gen_range(0..=w.len());
    let mut letters = w.letters().to_vec();
    letters.splice(pos..pos, insert);
    BraidWord::new(w.strands(), letters).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
        .collect()
}

fn every_family() -> Vec<(String, Presentation)> {
    let mut out = Vec::new();
    for k in 2..=5 {
        out.push((format!("pb{k}"), presentations::pure_braid_presentation(k)));
        out.push((format!("artin{k}"), presentations::artin_presentation(k)));
        out.push((format!("sphere-pure{k}"), presentations::sphere_pure_presentation(k)));
        out.push((format!("sphere{k}"), presentations::sphere_braid_presentation(k)));
    }
    for k_points in 2..=6 {
        for n in 1..=3 {
            for i in 1..=n {
                let ps = params(k_points, i, n);
                if presentations::stratum_nonempty(&ps) {
                    let tag = format!("k{k_points}i{i}n{n}");
                    out.push((format!("f-{tag}"), presentations::f_stratum_presentation(&ps).unwrap()));
                    out.push((format!("c-{tag}"), presentations::c_stratum_presentation(&ps).unwrap()));
                }
            }
        }
    }
    out.push(("pappus-pi".into(), presentations::pappus_pi_presentation()));
    out.push(("pappus-p".into(), presentations::pappus_p_presentation()));
    out
}

fn properties() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let w = random_word(&mut rng);
        let nf = normal_form(&w);
        let back = nf.to_word();
        ensure(normal_form(&back) == nf, || format!("round trip fails for {w}"))?;
        ensure(equal(&w, &back), || format!("normal form word differs from {w}"))?;
        let v = perturb(&w, &mut rng);
        ensure(normal_form(&v) == nf, || {
            format!("{w} and {v} have different normal forms")
        })?;
    }

    for _ in 0..200 {
        let m = random_matrix(&mut rng);
        let snf = smith_normal_form(&m);
        ensure(snf.factors.len() == snf.rank, || "rank mismatch".into())?;
        ensure(snf.factors.iter().all(|d| d.is_positive()), || {
            "non-positive factor".into()
        })?;
        for pair in snf.factors.windows(2) {
            ensure(pair[1].is_multiple_of(&pair[0]), || {
                format!("chain broken in {:?}", snf.factors)
            })?;
        }
        // The first invariant factor is the gcd of all entries.
        let g = m
            .iter()
            .flatten()
            .fold(BigInt::zero(), |acc, &v| acc.gcd(&BigInt::from(v)));
        if !g.is_zero() {
            ensure(snf.factors[0] == g, || {
                format!("d_1 = {} but gcd = {g}", snf.factors[0])
            })?;
        }
        let mut shuffled = m.clone();
        shuffled.shuffle(&mut rng);
        let mut cols: Vec<usize> = (0..m[0].len()).collect();
        cols.shuffle(&mut rng);
        let shuffled: Vec<Vec<i64>> = shuffled.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        ensure(smith_normal_form(&shuffled) == snf, || format!("shuffle changes {m:?}"))?;
    }

    let mut eliminations = 0;
    for (name, p) in every_family() {
        let h = abelianization(&p);
        for (gen_idx, gen) in p.generators().iter().enumerate() {
            for (rel_idx, r) in p.relators().iter().enumerate() {
                if r.occurrences(gen_idx + 1) != 1 {
                    continue;
                }
                let q = eliminate_generator(&p, gen, rel_idx).map_err(|e| format!("{name}: {e}"))?;
                ensure(abelianization(&q) == h, || {
                    format!("{name}: eliminating {gen} changes H_1")
                })?;
                eliminations += 1;
            }
        }
    }
    Ok(format!("1000 words, 200 matrices, {eliminations} eliminations"))
}
