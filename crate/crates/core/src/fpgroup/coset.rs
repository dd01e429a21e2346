//! Todd–Coxeter coset enumeration (HLT strategy with lookahead).

use crate::perm::Permutation;

use super::{FreeWord, GroupError, Presentation};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

const UNDEF: usize = usize::MAX;

/// A complete coset table. Coset `0` is the subgroup itself; column
/// `2i` holds the action of generator `i + 1` and column `2i + 1` its
/// inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generators: usize,
    rows: Vec<Vec<usize>>,
}

fn column(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

impl CosetTable {
    pub fn cosets(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Image of 0-based `coset` under a signed 1-based generator letter.
    pub fn act(&self, coset: usize, letter: i32) -> usize {
        self.rows[coset][column(letter)]
    }

    pub fn trace(&self, coset: usize, w: &FreeWord) -> usize {
        w.letters().iter().fold(coset, |c, &e| self.act(c, e))
    }

    /// The permutation of cosets (1-based) induced by generator `index`.
    pub fn generator_permutation(&self, index: usize) -> Permutation {
        let images: Vec<usize> = self.rows.iter().map(|row| row[2 * (index - 1)] + 1).collect();
        Permutation::from_images(&images).expect("complete coset table")
    }

    /// Whether every relator fixes every coset.
    pub fn respects(&self, p: &Presentation) -> bool {
        (0..self.cosets()).all(|c| p.relators().iter().all(|r| self.trace(c, r) == c))
    }

    /// Shortest-first representative word for each coset, by breadth-first
    /// search over generator columns in order.
    pub fn representatives(&self) -> Vec<FreeWord> {
        let mut reps: Vec<Option<Vec<i32>>> = vec![None; self.cosets()];
        reps[0] = Some(Vec::new());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for g in 1..=self.generators as i32 {
                for letter in [g, -g] {
                    let d = self.act(c, letter);
                    if reps[d].is_none() {
                        let mut w = reps[c].clone().unwrap_or_default();
                        w.push(letter);
                        reps[d] = Some(w);
                        queue.push_back(d);
                    }
                }
            }
        }
        reps.into_iter()
            .map(|r| FreeWord::new(r.expect("coset table is transitive")))
            .collect()
    }
}

enum Scan {
    Done,
    Full,
}

struct Enumerator {
    columns: usize,
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    max: usize,
}

impl Enumerator {
    fn new(generators: usize, max: usize) -> Self {
        Enumerator {
            columns: 2 * generators,
            rows: vec![vec![UNDEF; 2 * generators]],
            parent: vec![0],
            live: 1,
            max,
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = c;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        if self.live >= self.max {
            return false;
        }
        let d = self.rows.len();
        self.rows.push(vec![UNDEF; self.columns]);
        self.parent.push(d);
        self.live += 1;
        self.rows[c][x] = d;
        self.rows[d][x ^ 1] = c;
        true
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop] = keep;
        self.live -= 1;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.columns {
                let f = self.rows[e][x];
                if f == UNDEF {
                    continue;
                }
                self.rows[f][x ^ 1] = UNDEF;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.rows[e1][x] != UNDEF {
                    let t = self.rows[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.rows[f1][x ^ 1] != UNDEF {
                    let t = self.rows[f1][x ^ 1];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.rows[e1][x] = f1;
                    self.rows[f1][x ^ 1] = e1;
                }
            }
        }
    }

    /// Traces `w` (as columns) from `c` forwards and backwards, filling
    /// gaps by definitions when `define` is set.
    fn scan_and_fill(&mut self, c: usize, w: &[usize], define: bool) -> Scan {
        if w.is_empty() {
            return Scan::Done;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.rows[f][w[i as usize]] != UNDEF {
                f = self.rows[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Scan::Done;
            }
            while j >= i && self.rows[b][w[j as usize] ^ 1] != UNDEF {
                b = self.rows[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Scan::Done;
            }
            if i == j {
                let x = w[i as usize];
                self.rows[f][x] = b;
                self.rows[b][x ^ 1] = f;
                return Scan::Done;
            }
            if !define {
                return Scan::Done;
            }
            if !self.define(f, w[i as usize]) {
                return Scan::Full;
            }
        }
    }

    /// Scans every relator at every live coset without defining new ones.
    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.rows.len() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan_and_fill(c, r, false);
            }
            c += 1;
        }
    }

    /// Renumbers live cosets consecutively, preserving their order.
    fn compact(&mut self) -> Vec<usize> {
        let mut map = vec![UNDEF; self.rows.len()];
        let mut next = 0;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.parent[c] == c {
                *slot = next;
                next += 1;
            }
        }
        let mut rows = Vec::with_capacity(next);
        for (c, row) in self.rows.iter().enumerate() {
            if map[c] != UNDEF {
                rows.push(row.iter().map(|&d| if d == UNDEF { UNDEF } else { map[d] }).collect());
            }
        }
        self.rows = rows;
        self.parent = (0..next).collect();
        map
    }
}

fn columns_of(w: &FreeWord) -> Vec<usize> {
    w.letters().iter().map(|&e| column(e)).collect()
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group presented by `p`. At most `max_cosets` cosets are live at any
/// time; when that bound is hit a lookahead pass runs, and if it frees
/// nothing the enumeration fails with `EnumerationOverflow`.
pub fn coset_enumerate(p: &Presentation, subgroup: &[FreeWord], max_cosets: usize) -> Result<CosetTable, GroupError> {
    let max = max_cosets.max(1);
    for w in subgroup {
        if w.max_generator() > p.generator_count() {
            return Err(GroupError::LetterOutOfRange {
                letter: w.max_generator() as i32,
                generators: p.generator_count(),
            });
        }
    }
    let relators: Vec<Vec<usize>> = p.relators().iter().map(columns_of).collect();
    let subgroup: Vec<Vec<usize>> = subgroup.iter().map(|w| columns_of(&w.free_reduce())).collect();
    let mut e = Enumerator::new(p.generator_count(), max);

    let mut pending = subgroup.iter();
    let mut current: Option<&Vec<usize>> = pending.next();
    while let Some(h) = current {
        match e.scan_and_fill(0, h, true) {
            Scan::Done => current = pending.next(),
            Scan::Full => {
                make_room(&mut e, &relators, max)?;
            }
        }
    }

    let mut c = 0;
    'outer: while c < e.rows.len() {
        if e.is_live(c) {
            for r in &relators {
                if !e.is_live(c) {
                    break;
                }
                if let Scan::Full = e.scan_and_fill(c, r, true) {
                    let map = make_room(&mut e, &relators, max)?;
                    c = first_live_at_or_after(&map, c);
                    continue 'outer;
                }
            }
            for x in 0..e.columns {
                if !e.is_live(c) {
                    break;
                }
                if e.rows[c][x] == UNDEF && !e.define(c, x) {
                    let map = make_room(&mut e, &relators, max)?;
                    c = first_live_at_or_after(&map, c);
                    continue 'outer;
                }
            }
        }
        c += 1;
    }
    e.compact();
    Ok(CosetTable {
        generators: p.generator_count(),
        rows: e.rows,
    })
}

fn make_room(e: &mut Enumerator, relators: &[Vec<usize>], max: usize) -> Result<Vec<usize>, GroupError> {
    let before = e.live;
    e.lookahead(relators);
    if e.live >= max || e.live == before {
        return Err(GroupError::EnumerationOverflow(max));
    }
    Ok(e.compact())
}

fn first_live_at_or_after(map: &[usize], c: usize) -> usize {
    map[c..]
        .iter()
        .find(|&&m| m != UNDEF)
        .copied()
        .unwrap_or_else(|| map.iter().filter(|&&m| m != UNDEF).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(text: &str) -> Result<usize, GroupError> {
        let p: Presentation = text.parse().unwrap();
        let t = coset_enumerate(&p, &[], DEFAULT_MAX_COSETS)?;
        assert!(t.respects(&p));
        Ok(t.cosets())
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(order("gens: a\nrel: a a").unwrap(), 2);
        assert_eq!(order("gens: a\nrel: a a a").unwrap(), 3);
        assert_eq!(order("gens: a b\nrel: a a\nrel: b b\nrel: a b a b").unwrap(), 4);
        assert_eq!(order("gens:").unwrap(), 1);
        assert_eq!(order("gens: a b\nrel: a\nrel: b").unwrap(), 1);
        // S_4 as a Coxeter group
        let s4 = "gens: a b c\nrel: a a\nrel: b b\nrel: c c\nrel: a b a b a b\nrel: b c b c b c\nrel: a c a c";
        assert_eq!(order(s4).unwrap(), 24);
        // Dic_3
        assert_eq!(
            order("gens: a b\nrel: a a a a a a\nrel: b b a' a' a'\nrel: b' a b a").unwrap(),
            12
        );
    }

    #[test]
    fn larger_coxeter_group() {
        // S_6: 720 elements
        let mut text = String::from("gens: a b c d e");
        let g = ["a", "b", "c", "d", "e"];
        for (i, x) in g.iter().enumerate() {
            text += &format!("\nrel: {x} {x}");
            for (j, y) in g.iter().enumerate().skip(i + 1) {
                if j == i + 1 {
                    text += &format!("\nrel: {x} {y} {x} {y} {x} {y}");
                } else {
                    text += &format!("\nrel: {x} {y} {x} {y}");
                }
            }
        }
        assert_eq!(order(&text).unwrap(), 720);
    }

    #[test]
    fn subgroup_index() {
        let p: Presentation = "gens: a b\nrel: a a a\nrel: b b\nrel: a b a b".parse().unwrap();
        let t = coset_enumerate(&p, &[FreeWord::new(vec![1])], 100).unwrap();
        assert_eq!(t.cosets(), 2);
        assert_eq!(t.trace(0, &FreeWord::new(vec![1])), 0);
    }

    #[test]
    fn infinite_groups_overflow() {
        let p: Presentation = "gens: a b\nrel: a b a' b'".parse().unwrap();
        assert_eq!(coset_enumerate(&p, &[], 500), Err(GroupError::EnumerationOverflow(500)));
    }

    #[test]
    fn cap_below_the_order_overflows() {
        let p: Presentation = "gens: a b\nrel: a a a a a a\nrel: b b a' a' a'\nrel: b' a b a"
            .parse()
            .unwrap();
        assert_eq!(coset_enumerate(&p, &[], 11), Err(GroupError::EnumerationOverflow(11)));
        assert_eq!(coset_enumerate(&p, &[], 40).unwrap().cosets(), 12);
    }
}
