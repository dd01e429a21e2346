//! Braids read off from sampled motions of points in the plane.
//!
//! Positions are projected onto the line at angle `projection_angle`.
//! Whenever two strands exchange projected order, a crossing `σ_p^{±1}` is
//! recorded at their position `p` in the current left-to-right order. A
//! crossing is positive when the exchange is counterclockwise, i.e. the
//! strand moving rightwards has the smaller orthogonal coordinate.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::braid::{full_twist_word, BraidWord, FullTwistVariant};
use crate::garside::braids_equal;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrajectoryError {
    #[error("need at least one strand")]
    NoStrands,
    #[error("strand count {0} outside 2..=6")]
    UnsupportedStrandCount(usize),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("sample times must increase strictly from 0 to 1")]
    InvalidTimes,
    #[error("sample {sample} has {found} positions, expected {expected}")]
    WrongArity {
        sample: usize,
        found: usize,
        expected: usize,
    },
    #[error("strands {a} and {b} collide at sample {sample}")]
    Collision { sample: usize, a: usize, b: usize },
    #[error("final positions are not a permutation of the initial ones")]
    NotALoop,
    #[error("tie tolerance must be positive")]
    InvalidTolerance,
    #[error("projection stayed degenerate after {attempts} attempts")]
    DegenerateProjection { attempts: usize },
    #[error("strands {a} and {b} turn too far between samples {interval} and {}", interval + 1)]
    UndersampledCrossing { interval: usize, a: usize, b: usize },
    #[error("malformed trajectory: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub positions: Vec<Complex64>,
}

/// Positions of `k` strands at increasing times `0 = t_0 < … < t_m = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct StrandPaths {
    strands: usize,
    samples: Vec<Sample>,
}

impl StrandPaths {
    pub fn new(strands: usize, samples: Vec<Sample>) -> Result<Self, TrajectoryError> {
        if strands == 0 {
            return Err(TrajectoryError::NoStrands);
        }
        if samples.len() < 2 {
            return Err(TrajectoryError::TooFewSamples {
                needed: 2,
                got: samples.len(),
            });
        }
        if samples[0].t != 0.0
            || samples.last().is_some_and(|s| s.t != 1.0)
            || samples
                .windows(2)
                .any(|w| w[1].t.partial_cmp(&w[0].t) != Some(std::cmp::Ordering::Greater))
        {
            return Err(TrajectoryError::InvalidTimes);
        }
        for (m, s) in samples.iter().enumerate() {
            if s.positions.len() != strands {
                return Err(TrajectoryError::WrongArity {
                    sample: m,
                    found: s.positions.len(),
                    expected: strands,
                });
            }
            for a in 0..strands {
                for b in a + 1..strands {
                    if (s.positions[a] - s.positions[b]).norm() == 0.0 || !s.positions[a].is_finite() {
                        return Err(TrajectoryError::Collision {
                            sample: m,
                            a: a + 1,
                            b: b + 1,
                        });
                    }
                }
            }
        }
        let paths = StrandPaths { strands, samples };
        paths.final_matching().ok_or(TrajectoryError::NotALoop)?;
        Ok(paths)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    /// Largest distance between two strands over all samples.
    fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for s in &self.samples {
            for a in 0..self.strands {
                for b in a + 1..self.strands {
                    d = d.max((s.positions[a] - s.positions[b]).norm());
                }
            }
        }
        d
    }

    /// For each strand `j`, the strand whose initial position it occupies
    /// at the end (0-based), matched up to a relative tolerance.
    fn final_matching(&self) -> Option<Vec<usize>> {
        let first = &self.samples[0].positions;
        let last = &self.samples.last()?.positions;
        let tol = 1e-9 * self.diameter().max(1.0);
        let mut used = vec![false; self.strands];
        let mut out = Vec::with_capacity(self.strands);
        for z in last {
            let j = (0..self.strands).find(|&j| !used[j] && (first[j] - z).norm() <= tol)?;
            used[j] = true;
            out.push(j);
        }
        Some(out)
    }

    /// The same motion run backwards.
    pub fn reversed(&self) -> StrandPaths {
        let samples = self
            .samples
            .iter()
            .rev()
            .map(|s| Sample {
                t: 1.0 - s.t,
                positions: s.positions.clone(),
            })
            .collect();
        StrandPaths {
            strands: self.strands,
            samples,
        }
    }

    /// Endpoint permutation in terms of projected ranks: position `q` of
    /// the final left-to-right order maps to the initial rank of the strand
    /// found there. An extracted braid has this permutation.
    pub fn endpoint_permutation(&self, angle: f64) -> Permutation {
        let rot = Complex64::from_polar(1.0, -angle);
        let rank = |positions: &[Complex64]| {
            let mut order: Vec<usize> = (0..self.strands).collect();
            order.sort_by(|&a, &b| (positions[a] * rot).re.total_cmp(&(positions[b] * rot).re));
            order
        };
        let start = rank(&self.samples[0].positions);
        let end = rank(&self.samples.last().expect("two samples").positions);
        let mut initial_rank = vec![0; self.strands];
        for (r, &j) in start.iter().enumerate() {
            initial_rank[j] = r + 1;
        }
        let images: Vec<usize> = end.iter().map(|&j| initial_rank[j]).collect();
        Permutation::from_images(&images).expect("ranks are a permutation")
    }
}

impl fmt::Display for StrandPaths {
    /// `k=<int>` followed by one `t, re_1, im_1, …` row per sample.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}", self.strands)?;
        for s in &self.samples {
            write!(f, "\n{}", s.t)?;
            for z in &s.positions {
                write!(f, ", {}, {}", z.re, z.im)?;
            }
        }
        Ok(())
    }
}

impl FromStr for StrandPaths {
    type Err = TrajectoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| TrajectoryError::Parse("missing `k=` header".into()))?;
        let k: usize = header
            .strip_prefix("k=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| TrajectoryError::Parse(format!("bad header {header:?}")))?;
        let mut samples = Vec::new();
        for line in lines {
            let values: Vec<f64> = line
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| TrajectoryError::Parse(format!("{line:?}: {e}")))?;
            if values.len() != 1 + 2 * k {
                return Err(TrajectoryError::Parse(format!(
                    "row has {} values, expected {}",
                    values.len(),
                    1 + 2 * k
                )));
            }
            samples.push(Sample {
                t: values[0],
                positions: values[1..].chunks(2).map(|c| Complex64::new(c[0], c[1])).collect(),
            });
        }
        StrandPaths::new(k, samples)
    }
}

/// Strand `j` at `j·e^{2πit}` for `j = 1..k`, sampled at `t = m/(N−1)`.
/// The last sample repeats the first exactly.
pub fn sample_rotating_loop(k: usize, num_samples: usize) -> Result<StrandPaths, TrajectoryError> {
    if k == 0 {
        return Err(TrajectoryError::NoStrands);
    }
    let needed = 8 * k * k;
    if num_samples < needed {
        return Err(TrajectoryError::TooFewSamples {
            needed,
            got: num_samples,
        });
    }
    let last = num_samples - 1;
    let mut samples: Vec<Sample> = (0..last)
        .map(|m| {
            let t = m as f64 / last as f64;
            let turn = Complex64::from_polar(1.0, 2.0 * PI * t);
            Sample {
                t,
                positions: (1..=k).map(|j| turn * j as f64).collect(),
            }
        })
        .collect();
    samples.push(Sample {
        t: 1.0,
        positions: samples[0].positions.clone(),
    });
    StrandPaths::new(k, samples)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionParams {
    pub projection_angle: f64,
    /// Relative to the largest distance between strands.
    pub tie_tolerance: f64,
    pub max_retries: usize,
    pub retry_seed: u64,
}

impl Default for ExtractionParams {
    fn default() -> Self {
        ExtractionParams {
            projection_angle: 0.0,
            tie_tolerance: 1e-9,
            max_retries: 16,
            retry_seed: 0,
        }
    }
}

/// An extracted braid and the projection that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub word: BraidWord,
    pub angle: f64,
    pub crossings: usize,
}

enum Attempt {
    Done(Vec<i32>),
    Ambiguous,
}

/// Reads the braid traced by `paths`. A projection on which some crossing
/// is ambiguous (a tie at a sample, strands meeting in projection at equal
/// depth, or simultaneous crossings of opposite signs) is replaced by a
/// pseudorandom one drawn from `retry_seed`.
pub fn extract_braid(paths: &StrandPaths, params: &ExtractionParams) -> Result<Extraction, TrajectoryError> {
    if params.tie_tolerance.is_nan() || params.tie_tolerance <= 0.0 {
        return Err(TrajectoryError::InvalidTolerance);
    }
    check_sampling(paths)?;
    let tol = params.tie_tolerance * paths.diameter().max(f64::MIN_POSITIVE);
    let mut rng = ChaCha8Rng::seed_from_u64(params.retry_seed);
    let mut angle = params.projection_angle;
    for _ in 0..=params.max_retries {
        if let Attempt::Done(letters) = extract_at(paths, angle, tol) {
            let crossings = letters.len();
            let word = BraidWord::new(paths.strands(), letters).expect("positions in range");
            return Ok(Extraction { word, angle, crossings });
        }
        angle = rng.gen_range(0.0..PI);
    }
    Err(TrajectoryError::DegenerateProjection {
        attempts: params.max_retries + 1,
    })
}

/// Rejects intervals in which some pair's relative position turns by more
/// than a quarter turn: such motion is too coarse to read crossings from.
fn check_sampling(paths: &StrandPaths) -> Result<(), TrajectoryError> {
    let k = paths.strands();
    for (m, w) in paths.samples().windows(2).enumerate() {
        for a in 0..k {
            for b in a + 1..k {
                let d0 = w[0].positions[a] - w[0].positions[b];
                let d1 = w[1].positions[a] - w[1].positions[b];
                if (d1 / d0).arg().abs() > PI / 2.0 {
                    return Err(TrajectoryError::UndersampledCrossing {
                        interval: m,
                        a: a + 1,
                        b: b + 1,
                    });
                }
            }
        }
    }
    Ok(())
}

struct Crossing {
    time: f64,
    sign: i32,
}

fn extract_at(paths: &StrandPaths, angle: f64, tol: f64) -> Attempt {
    let k = paths.strands();
    let rot = Complex64::from_polar(1.0, -angle);
    let project = |s: &Sample| -> Vec<Complex64> { s.positions.iter().map(|z| z * rot).collect() };

    let first = project(&paths.samples()[0]);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| first[a].re.total_cmp(&first[b].re));
    if order.windows(2).any(|w| (first[w[1]].re - first[w[0]].re).abs() <= tol) {
        return Attempt::Ambiguous;
    }

    let mut letters = Vec::new();
    for w in paths.samples().windows(2) {
        let (p0, p1) = (project(&w[0]), project(&w[1]));
        let mut events = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let d0 = p0[a].re - p0[b].re;
                let d1 = p1[a].re - p1[b].re;
                if d1.abs() <= tol {
                    return Attempt::Ambiguous;
                }
                if (d0 < 0.0) == (d1 < 0.0) {
                    continue;
                }
                let s = d0 / (d0 - d1);
                let ya = p0[a].im + s * (p1[a].im - p0[a].im);
                let yb = p0[b].im + s * (p1[b].im - p0[b].im);
                if (ya - yb).abs() <= tol {
                    return Attempt::Ambiguous;
                }
                // The strand starting on the left moves rightwards.
                let (y_right_mover, y_left_mover) = if d0 < 0.0 { (ya, yb) } else { (yb, ya) };
                let sign = if y_right_mover < y_left_mover { 1 } else { -1 };
                events.push(Crossing { time: s, sign });
            }
        }
        if events.is_empty() {
            continue;
        }
        events.sort_by(|x, y| x.time.total_cmp(&y.time));

        let mut start = 0;
        while start < events.len() {
            let mut end = start + 1;
            while end < events.len() && events[end].time - events[end - 1].time <= 1e-9 {
                end += 1;
            }
            let sign = events[start].sign;
            if events[start..end].iter().any(|e| e.sign != sign) {
                return Attempt::Ambiguous;
            }
            // Order just after this group of simultaneous crossings.
            let next = events.get(end).map_or(1.0, |e| e.time);
            let s = 0.5 * (events[end - 1].time + next);
            let x = |j: usize| p0[j].re + s * (p1[j].re - p0[j].re);
            let mut target = order.clone();
            target.sort_by(|&a, &b| x(a).total_cmp(&x(b)));
            // Adjacent exchanges taking `order` to `target`; every pair
            // exchanged here crossed in this group, all with one sign.
            let mut rank = vec![0; k];
            for (r, &j) in target.iter().enumerate() {
                rank[j] = r;
            }
            let mut swapped = true;
            while swapped {
                swapped = false;
                for p in 0..k - 1 {
                    if rank[order[p]] > rank[order[p + 1]] {
                        order.swap(p, p + 1);
                        letters.push(sign * (p as i32 + 1));
                        swapped = true;
                    }
                }
            }
            start = end;
        }
    }
    Attempt::Done(letters)
}

/// Extracts the braid of the rotating loop on `k` strands and compares it
/// with the full twist `α_12 (α_13 α_23) … (α_1k … α_{k−1,k})`.
pub fn verify_rotating_loop(k: usize) -> Result<bool, TrajectoryError> {
    if !(2..=6).contains(&k) {
        return Err(TrajectoryError::UnsupportedStrandCount(k));
    }
    let paths = sample_rotating_loop(k, 16 * k * k)?;
    let extraction = extract_braid(&paths, &ExtractionParams::default())?;
    let twist = full_twist_word(k, FullTwistVariant::F).expect("k ≥ 2");
    Ok(braids_equal(&extraction.word, &twist).expect("same strand count"))
}
