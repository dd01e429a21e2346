//! Multiplication tables of finite groups and brute-force isomorphism.

use super::{CosetTable, GroupError, Presentation};

pub const MAX_ISOMORPHISM_ORDER: usize = 64;

/// Cayley table of a finite group; element `0` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    mult: Vec<Vec<usize>>,
}

impl GroupTable {
    /// Builds a table from a full product matrix. Returns `None` unless
    /// element `0` is a two-sided identity and every row and column is a
    /// permutation.
    pub fn from_products(mult: Vec<Vec<usize>>) -> Option<Self> {
        let n = mult.len();
        if n == 0 || mult.iter().any(|row| row.len() != n) {
            return None;
        }
        for (i, row) in mult.iter().enumerate() {
            if row[0] != i || mult[0][i] != i {
                return None;
            }
            let mut seen = vec![false; n];
            for &v in row {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return None;
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &mult {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return None;
                }
            }
        }
        Some(GroupTable { mult })
    }

    /// Cyclic group of order `n` (`n ≥ 1`).
    pub fn cyclic(n: usize) -> Self {
        GroupTable {
            mult: (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.mult[a].iter().position(|&v| v == 0).expect("group table")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mult[x][a];
            k += 1;
        }
        k
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mult[a][b];
                (0..n).all(|c| self.mult[ab][c] == self.mult[a][self.mult[b][c]])
            })
        })
    }

    fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Greedy generating set: scan elements in index order, keeping those
    /// outside the subgroup generated so far.
    fn generating_set(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut inside = vec![false; n];
        inside[0] = true;
        for a in 1..n {
            if inside[a] {
                continue;
            }
            gens.push(a);
            let mut members = vec![0];
            inside = vec![false; n];
            inside[0] = true;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &g in &gens {
                    let y = self.mult[x][g];
                    if !std::mem::replace(&mut inside[y], true) {
                        members.push(y);
                    }
                }
            }
        }
        gens
    }
}

/// Regular-representation multiplication table of the group enumerated
/// over the trivial subgroup. Element `c` is the coset `c`, i.e. the
/// group element given by its breadth-first representative word.
pub fn multiplication_table(t: &CosetTable, p: &Presentation) -> Result<GroupTable, GroupError> {
    if t.generator_count() != p.generator_count() {
        return Err(GroupError::NotRegular);
    }
    let reps = t.representatives();
    let n = t.cosets();
    let mult: Vec<Vec<usize>> = (0..n).map(|c| reps.iter().map(|w| t.trace(c, w)).collect()).collect();
    // The permutations induced by the representatives must be closed
    // under the generators; together with transitivity this forces the
    // action to be regular.
    for c in 0..n {
        for g in 1..=t.generator_count() as i32 {
            for letter in [g, -g] {
                let d = t.act(c, letter);
                if (0..n).any(|e| t.act(mult[e][c], letter) != mult[e][d]) {
                    return Err(GroupError::NotRegular);
                }
            }
        }
    }
    GroupTable::from_products(mult).ok_or(GroupError::NotRegular)
}

/// Whether two finite groups of order at most 64 are isomorphic.
pub fn isomorphic_small_groups(a: &GroupTable, b: &GroupTable) -> Result<bool, GroupError> {
    for t in [a, b] {
        if t.order() > MAX_ISOMORPHISM_ORDER {
            return Err(GroupError::TooLarge(t.order()));
        }
    }
    if a.order() != b.order() || a.order_profile() != b.order_profile() {
        return Ok(false);
    }
    let gens = a.generating_set();
    let orders_b: Vec<usize> = (0..b.order()).map(|x| b.element_order(x)).collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(a, b, &gens, &orders_b, &mut images))
}

fn search(a: &GroupTable, b: &GroupTable, gens: &[usize], orders_b: &[usize], images: &mut Vec<usize>) -> bool {
    let k = images.len();
    if k == gens.len() {
        return extends_to_isomorphism(a, b, gens, images);
    }
    let want = a.element_order(gens[k]);
    for h in 0..b.order() {
        if orders_b[h] != want {
            continue;
        }
        images.push(h);
        if search(a, b, gens, orders_b, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Extends `gens[i] ↦ images[i]` along right multiplication and checks
/// the result is a well-defined bijection.
fn extends_to_isomorphism(a: &GroupTable, b: &GroupTable, gens: &[usize], images: &[usize]) -> bool {
    let n = a.order();
    let mut phi = vec![usize::MAX; n];
    phi[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.multiply(x, g);
            let z = b.multiply(phi[x], h);
            if phi[y] == usize::MAX {
                phi[y] = z;
                queue.push(y);
            } else if phi[y] != z {
                return false;
            }
        }
    }
    let mut seen = vec![false; n];
    phi.iter()
        .all(|&v| v != usize::MAX && !std::mem::replace(&mut seen[v], true))
}
