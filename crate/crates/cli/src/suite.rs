//! Claim verifier: runs every check and collects a report.

use std::panic::{catch_unwind, AssertUnwindSafe};

use braidforge::braid::{
    ascending_run, delta_word, descending_run, full_twist_word, BraidWord, DeltaVariant, FullTwistVariant,
    PureGenerator,
};
use braidforge::fpgroup::{
    abelianization, check_homomorphism, coset_enumerate, eliminate_generator, is_free_of_rank, isomorphic_small_groups,
    multiplication_table, verify_consequence, AbelianInvariants, Presentation, DEFAULT_MAX_COSETS,
};
use braidforge::garside::{braids_equal, normal_form};
use braidforge::perm::Permutation;
use braidforge::presentations::{
    self, pure_full_twist, reduce_pappus_p, reduce_pappus_pi, StratumError, StratumParams, TietzeReduction,
};
use braidforge::trajectory::verify_rotating_loop;
use serde::Serialize;

/// Where the suite gets the presentations it checks. Replacing a method
/// lets a test corrupt one family and observe which checks notice.
pub trait PresentationSource {
    fn f_stratum(&self, params: &StratumParams) -> Result<Presentation, StratumError> {
        presentations::f_stratum_presentation(params)
    }

    fn c_stratum(&self, params: &StratumParams) -> Result<Presentation, StratumError> {
        presentations::c_stratum_presentation(params)
    }

    fn pappus_pi(&self) -> Presentation {
        presentations::pappus_pi_presentation()
    }

    fn pappus_p(&self) -> Presentation {
        presentations::pappus_p_presentation()
    }
}

pub struct StandardPresentations;

impl PresentationSource for StandardPresentations {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub citation: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl SuiteReport {
    fn new(mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
        };
        SuiteReport { checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failing_ids(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.id.as_str())
            .collect()
    }

    /// One `id<TAB>status<TAB>citation<TAB>detail` line per check.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("id\tstatus\tcitation\tdetail\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                c.id,
                c.status.as_str(),
                c.citation,
                c.detail
            ));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "# passed={} failed={} skipped={}\n",
            s.passed, s.failed, s.skipped
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidRange(pub usize);

impl std::fmt::Display for InvalidRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "--max-n must lie in 3..=8, got {}", self.0)
    }
}

type Outcome = Result<String, String>;

struct Runner {
    results: Vec<CheckResult>,
}

impl Runner {
    fn check(&mut self, id: impl Into<String>, citation: &str, f: impl FnOnce() -> Outcome) {
        let (status, detail) = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(Ok(detail)) => (Status::Pass, detail),
            Ok(Err(detail)) => (Status::Fail, detail),
            Err(panic) => {
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into());
                (Status::Fail, format!("panic: {msg}"))
            }
        };
        self.results.push(CheckResult {
            id: id.into(),
            status,
            citation: citation.to_string(),
            detail: detail.replace(['\t', '\n'], " "),
        });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn equal(u: &BraidWord, v: &BraidWord) -> Result<bool, String> {
    braids_equal(u, v).map_err(|e| e.to_string())
}

fn word(n: usize, letters: Vec<i32>) -> Result<BraidWord, String> {
    BraidWord::new(n, letters).map_err(|e| e.to_string())
}

fn concat(u: &BraidWord, v: &BraidWord) -> Result<BraidWord, String> {
    u.concat(v).map_err(|e| e.to_string())
}

fn params(k: usize, i: usize, n: usize) -> Result<StratumParams, String> {
    StratumParams::new(k, i, n).map_err(|e| e.to_string())
}

fn binom2(k: usize) -> usize {
    k * (k - 1) / 2
}

/// Runs all checks with braid sizes up to `max_n`.
pub fn run_suite(max_n: usize, source: &dyn PresentationSource) -> Result<SuiteReport, InvalidRange> {
    if !(3..=8).contains(&max_n) {
        return Err(InvalidRange(max_n));
    }
    let mut r = Runner { results: Vec::new() };
    braid_checks(&mut r, max_n);
    homology_checks(&mut r, max_n, source);
    coset_checks(&mut r, source);
    tietze_checks(&mut r, source);
    quotient_checks(&mut r, max_n, source);
    for k in 2..=max_n.min(5) {
        r.check(
            format!("trajectory.rotating-loop.k{k}"),
            "rotating k points once around the origin traces the full twist D_k",
            || match verify_rotating_loop(k) {
                Ok(true) => Ok("extracted braid equals the full twist".into()),
                Ok(false) => Err("extracted braid differs from the full twist".into()),
                Err(e) => Err(e.to_string()),
            },
        );
    }
    Ok(SuiteReport::new(r.results))
}

fn braid_checks(r: &mut Runner, max_n: usize) {
    r.check(
        "braid.half-twist-words",
        "the four positive words for the half twist agree",
        || {
            for n in 2..=max_n {
                let forms = DeltaVariant::ALL
                    .iter()
                    .map(|&v| delta_word(n, v).map(|w| normal_form(&w)))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| e.to_string())?;
                ensure(forms.windows(2).all(|w| w[0] == w[1]), || {
                    format!("n={n}: normal forms differ")
                })?;
            }
            Ok(format!("n=2..{max_n}"))
        },
    );
    let twist_max = max_n.min(7);
    r.check(
        "braid.full-twist-words",
        "the seven words for the full twist agree, including the pure-generator forms",
        || {
            for n in 2..=twist_max {
                let words = FullTwistVariant::ALL
                    .iter()
                    .map(|&v| full_twist_word(n, v))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| e.to_string())?;
                for (v, w) in FullTwistVariant::ALL.iter().zip(&words).skip(1) {
                    ensure(equal(&words[0], w)?, || format!("n={n}: variant {} differs", v.name()))?;
                }
            }
            Ok(format!("n=2..{twist_max}"))
        },
    );
    r.check(
        "braid.alpha-cancelation",
        "α_1n α_2n … α_{n−1,n} equals (σ_{n−1}…σ_1)(σ_1…σ_{n−1})",
        || {
            for n in 2..=max_n {
                let mut letters = Vec::new();
                for i in 1..n {
                    let a = PureGenerator::new(i, n, n).map_err(|e| e.to_string())?;
                    letters.extend_from_slice(a.expand().letters());
                }
                let lhs = word(n, letters)?;
                let down = descending_run(n, n - 1).map_err(|e| e.to_string())?;
                let up = ascending_run(n, n - 1).map_err(|e| e.to_string())?;
                ensure(equal(&lhs, &concat(&down, &up)?)?, || format!("n={n}"))?;
            }
            Ok(format!("n=2..{max_n}"))
        },
    );
    r.check(
        "braid.conjugation-identities",
        "runs of generators shift σ_i by one under conjugation; the hook commutes with lower generators",
        || {
            let mut count = 0;
            for n in 2..=max_n {
                for k in 1..n {
                    let up = ascending_run(n, k).map_err(|e| e.to_string())?;
                    let down = descending_run(n, k).map_err(|e| e.to_string())?;
                    let hook = concat(&down, &up)?;
                    let s = |i: usize| word(n, vec![i as i32]);
                    for i in 1..k {
                        ensure(equal(&concat(&up, &s(i)?)?, &concat(&s(i + 1)?, &up)?)?, || {
                            format!("n={n} k={k} i={i}: ascending")
                        })?;
                        ensure(equal(&concat(&hook, &s(i)?)?, &concat(&s(i)?, &hook)?)?, || {
                            format!("n={n} k={k} j={i}: hook")
                        })?;
                        count += 2;
                    }
                    for i in 2..=k {
                        ensure(equal(&concat(&down, &s(i)?)?, &concat(&s(i - 1)?, &down)?)?, || {
                            format!("n={n} k={k} i={i}: descending")
                        })?;
                        count += 1;
                    }
                }
            }
            Ok(format!("{count} identities, n=2..{max_n}"))
        },
    );
    r.check("braid.full-twist-central", "the full twist is central", || {
        for n in 2..=twist_max {
            let d = full_twist_word(n, FullTwistVariant::A).map_err(|e| e.to_string())?;
            for i in 1..n {
                let s = word(n, vec![i as i32])?;
                ensure(equal(&concat(&d, &s)?, &concat(&s, &d)?)?, || format!("n={n} i={i}"))?;
            }
        }
        Ok(format!("n=2..{twist_max}"))
    });
}

fn expect_homology(p: &Presentation, expected: &AbelianInvariants) -> Outcome {
    let h = abelianization(p);
    if &h == expected {
        Ok(h.to_string())
    } else {
        Err(format!("got {h}, expected {expected}"))
    }
}

fn homology_checks(r: &mut Runner, max_n: usize, source: &dyn PresentationSource) {
    let ordered = "first homology of the ordered exceptional strata";
    let unordered = "first homology of the unordered exceptional strata";
    for k in 2..=max_n {
        r.check(format!("h1.f-stratum.k{k}.n1"), ordered, || {
            let p = source.f_stratum(&params(k + 1, 1, 1)?).map_err(|e| e.to_string())?;
            expect_homology(&p, &AbelianInvariants::new(binom2(k) - 1, &[2]))
        });
        r.check(format!("h1.c-stratum.k{k}.n1"), unordered, || {
            let p = source.c_stratum(&params(k + 1, 1, 1)?).map_err(|e| e.to_string())?;
            expect_homology(&p, &AbelianInvariants::new(0, &[2 * k as u64]))
        });
        r.check(format!("h1.f-stratum.k{k}.n2"), ordered, || {
            for n in 2..=3 {
                let p = source.f_stratum(&params(k + 1, 1, n)?).map_err(|e| e.to_string())?;
                expect_homology(&p, &AbelianInvariants::new(binom2(k) - 1, &[])).map_err(|e| format!("n={n}: {e}"))?;
            }
            Ok(format!("Z^{}", binom2(k) - 1))
        });
        if k >= 3 {
            r.check(format!("h1.c-stratum.k{k}.n2"), unordered, || {
                let p = source.c_stratum(&params(k + 1, 1, 2)?).map_err(|e| e.to_string())?;
                let d = if k % 2 == 0 { k } else { 2 * k };
                expect_homology(&p, &AbelianInvariants::new(0, &[d as u64]))?;
                let p = source.c_stratum(&params(k + 1, 1, 3)?).map_err(|e| e.to_string())?;
                expect_homology(&p, &AbelianInvariants::new(0, &[d as u64])).map_err(|e| format!("n=3: {e}"))
            });
        }
    }
    r.check(
        "h1.c-stratum.generic",
        "first homology of the other unordered strata is Z_2",
        || {
            let mut count = 0;
            for k_points in 2..=max_n.min(6) {
                for n in 2..=4 {
                    for i in 2..=n {
                        let ps = params(k_points, i, n)?;
                        if !presentations::stratum_nonempty(&ps) {
                            continue;
                        }
                        let p = source.c_stratum(&ps).map_err(|e| e.to_string())?;
                        expect_homology(&p, &AbelianInvariants::new(0, &[2]))
                            .map_err(|e| format!("k={k_points} i={i} n={n}: {e}"))?;
                        count += 1;
                    }
                }
            }
            Ok(format!("{count} strata"))
        },
    );
}

fn group_order(p: &Presentation) -> Result<usize, String> {
    coset_enumerate(p, &[], DEFAULT_MAX_COSETS)
        .map(|t| t.cosets())
        .map_err(|e| e.to_string())
}

/// `Dic_3 = ⟨a, b | a⁶, b² a⁻³, b⁻¹ a b a⟩`
pub fn dicyclic_12() -> Presentation {
    "gens: a b\nrel: a a a a a a\nrel: b b a' a' a'\nrel: b' a b a"
        .parse()
        .expect("valid presentation")
}

fn coset_checks(r: &mut Runner, source: &dyn PresentationSource) {
    r.check(
        "coset.f-stratum.order-2",
        "three ordered points on a projective line: fundamental group Z_2",
        || {
            let p = source.f_stratum(&params(3, 1, 1)?).map_err(|e| e.to_string())?;
            let order = group_order(&p)?;
            ensure(order == 2, || format!("order={order}"))?;
            Ok("order=2".into())
        },
    );
    r.check(
        "coset.c-stratum.dicyclic-12",
        "three unordered points on a projective line: the dicyclic group of order 12",
        || {
            let p = source.c_stratum(&params(3, 1, 1)?).map_err(|e| e.to_string())?;
            let t = coset_enumerate(&p, &[], DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
            ensure(t.cosets() == 12, || format!("order={}", t.cosets()))?;
            let table = multiplication_table(&t, &p).map_err(|e| e.to_string())?;
            let dic = dicyclic_12();
            let dt = coset_enumerate(&dic, &[], DEFAULT_MAX_COSETS).map_err(|e| e.to_string())?;
            let dic_table = multiplication_table(&dt, &dic).map_err(|e| e.to_string())?;
            let iso = isomorphic_small_groups(&table, &dic_table).map_err(|e| e.to_string())?;
            ensure(iso, || "order 12 but not dicyclic".into())?;
            Ok("order=12, isomorphic to Dic_3".into())
        },
    );
}

fn describe_reduction(red: &TietzeReduction, rank: usize) -> Outcome {
    for (w, cert) in &red.removed {
        ensure(verify_consequence(&red.reduced, w, cert), || {
            format!("certificate for {} does not verify", red.eliminated.format_word(w))
        })?;
    }
    let h = abelianization(&red.reduced);
    ensure(h == AbelianInvariants::new(rank, &[]), || format!("abelianization {h}"))?;
    ensure(abelianization(&red.eliminated) == h, || {
        "elimination changed the abelianization".into()
    })?;
    Ok(format!(
        "{} generators, {} relators kept, {} certified redundant, H_1 = {h}",
        red.reduced.generator_count(),
        red.reduced.relators().len(),
        red.removed.len()
    ))
}

fn tietze_checks(r: &mut Runner, source: &dyn PresentationSource) {
    r.check(
        "tietze.f-stratum.free-rank-2",
        "four ordered points on a line in the projective plane: free group of rank 2",
        || {
            let p = source.f_stratum(&params(4, 1, 2)?).map_err(|e| e.to_string())?;
            let d = p.find_relator(&pure_full_twist(3)).ok_or("relator D_3 missing")?;
            for g in ["a1_2", "a1_3", "a2_3"] {
                let q = eliminate_generator(&p, g, d).map_err(|e| format!("{g}: {e}"))?;
                ensure(q.relators().is_empty(), || {
                    format!("{g}: {} relators remain", q.relators().len())
                })?;
                ensure(is_free_of_rank(&q) == Some(2), || format!("{g}: not free of rank 2"))?;
            }
            Ok("each elimination leaves 2 generators and no relators".into())
        },
    );
    r.check(
        "tietze.pappus-p",
        "the Pappus configuration space has fundamental group F_2 × F_2",
        || {
            let red = reduce_pappus_p(&source.pappus_p()).map_err(|e| e.to_string())?;
            describe_reduction(&red, 4)
        },
    );
    r.check(
        "tietze.pappus-pi",
        "the Pappus subspace P_I has fundamental group PB_3 × F_2",
        || {
            let red = reduce_pappus_pi(&source.pappus_pi()).map_err(|e| e.to_string())?;
            describe_reduction(&red, 5)
        },
    );
}

fn quotient_checks(r: &mut Runner, max_n: usize, source: &dyn PresentationSource) {
    for k_points in 2..=max_n + 1 {
        r.check(
            format!("hom.c-stratum.k{k_points}"),
            "σ_i ↦ (i, i+1) defines a map onto the symmetric group",
            || {
                let mut count = 0;
                for n in 1..=4 {
                    for i in 1..=n {
                        let ps = params(k_points, i, n)?;
                        if !presentations::stratum_nonempty(&ps) {
                            continue;
                        }
                        let p = source.c_stratum(&ps).map_err(|e| e.to_string())?;
                        let images = p
                            .generators()
                            .iter()
                            .enumerate()
                            .map(|(j, g)| Permutation::transposition(k_points, j + 1, j + 2).map(|t| (g.clone(), t)))
                            .collect::<Result<_, _>>()
                            .map_err(|e| e.to_string())?;
                        let ok = check_homomorphism(&p, &images).map_err(|e| e.to_string())?;
                        ensure(ok, || {
                            format!("i={i} n={n}: some relator maps to a non-identity permutation")
                        })?;
                        count += 1;
                    }
                }
                Ok(format!("{count} strata"))
            },
        );
    }
}
