use std::fmt;

use serde::{Serialize, Serializer};

use crate::linalg::IntMatrix;

use super::{GroupError, WeylGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn gen(g: usize) -> Letter {
        Letter { gen: g, inv: false }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, inv: !self.inv }
    }

    fn column(self) -> usize {
        2 * self.gen + usize::from(self.inv)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let g = self.gen as i64 + 1;
        s.serialize_i64(if self.inv { -g } else { g })
    }
}

pub type Word = Vec<Letter>;

pub fn word_inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

pub fn word_power(w: &[Letter], k: usize) -> Word {
    w.iter().copied().cycle().take(w.len() * k).collect()
}

/// `a^{-1} b^{-1} a b`.
pub fn commutator(a: &[Letter], b: &[Letter]) -> Word {
    let mut out = word_inverse(a);
    out.extend(word_inverse(b));
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out
}

/// A finite presentation with a representation by matrices.
#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
    #[serde(skip)]
    pub images: Vec<IntMatrix>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |l: &Letter| format!("x{}{}", l.gen + 1, if l.inv { "'" } else { "" });
        let rels: Vec<String> = self.relators.iter().map(|r| r.iter().map(names).collect::<Vec<_>>().join("")).collect();
        write!(f, "<{} generators | {}>", self.generators, rels.join(", "))
    }
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Word>, images: Vec<IntMatrix>) -> Self {
        Presentation { generators, relators, images }
    }

    /// Element indices of the generator images inside `g`.
    pub fn generator_elements(&self, g: &WeylGroup) -> Result<Vec<usize>, GroupError> {
        self.images.iter().map(|m| g.index_of(m).ok_or_else(|| GroupError::BadGenerators("image not in group".into()))).collect()
    }

    pub fn evaluate(&self, g: &WeylGroup, gens: &[usize], word: &[Letter]) -> usize {
        word.iter().fold(0, |acc, l| {
            let x = if l.inv { g.inv(gens[l.gen]) } else { gens[l.gen] };
            g.mul(acc, x)
        })
    }

    /// Check that every relator evaluates to the identity and that the images generate `g`.
    pub fn verify_in(&self, g: &WeylGroup) -> Result<(), GroupError> {
        let gens = self.generator_elements(g)?;
        for (k, r) in self.relators.iter().enumerate() {
            if self.evaluate(g, &gens, r) != 0 {
                return Err(GroupError::RelatorFails(k));
            }
        }
        if g.subgroup(&gens).len() != g.order() {
            return Err(GroupError::BadGenerators("images do not generate the group".into()));
        }
        Ok(())
    }

    /// Order of the presented group by coset enumeration over the trivial subgroup.
    pub fn order(&self, max_cosets: usize) -> Result<usize, GroupError> {
        todd_coxeter(self.generators, &self.relators, max_cosets)
    }

    /// A presentation read off from the Cayley graph: one relator per non-tree edge.
    pub fn from_cayley(g: &WeylGroup) -> Presentation {
        let ngen = g.generators().len();
        let word_of = |i: usize| -> Word { g.word(i).into_iter().map(Letter::gen).collect() };
        let mut relators = Vec::new();
        let mut tree = vec![vec![false; ngen]; g.order()];
        for i in 1..g.order() {
            let w = g.word(i);
            // element_i = s_{w0} * element_{rest}; mark that edge as tree edge
            let rest = {
                let mut k = 0;
                for &s in w[1..].iter().rev() {
                    k = g.left_gen(s, k);
                }
                k
            };
            tree[rest][w[0]] = true;
        }
        for x in 0..g.order() {
            for s in 0..ngen {
                if tree[x][s] {
                    continue;
                }
                let y = g.left_gen(s, x);
                let mut r = vec![Letter::gen(s)];
                r.extend(word_of(x));
                r.extend(word_inverse(&word_of(y)));
                let r = free_reduce(&r);
                if !r.is_empty() && !relators.contains(&r) {
                    relators.push(r);
                }
            }
        }
        Presentation::new(ngen, relators, g.generator_matrices())
    }
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

const UNDEF: usize = usize::MAX;

struct CosetTable {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    max: usize,
}

impl CosetTable {
    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), GroupError> {
        if self.table.len() >= self.max {
            return Err(GroupError::BoundExceeded(self.max));
        }
        let n = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(n);
        self.table[c][x] = n;
        self.table[n][x ^ 1] = c;
        Ok(())
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = if k < l { (k, l) } else { (l, k) };
        self.parent[hi] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == UNDEF {
                    continue;
                }
                if self.table[f][x ^ 1] == e {
                    self.table[f][x ^ 1] = UNDEF;
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != UNDEF {
                    let t = self.table[e1][x];
                    self.merge(f1, t);
                } else if self.table[f1][x ^ 1] != UNDEF {
                    let t = self.table[f1][x ^ 1];
                    self.merge(e1, t);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][x ^ 1] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<(), GroupError> {
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        loop {
            while i <= j && self.table[f][word[i as usize]] != UNDEF {
                f = self.table[f][word[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][word[j as usize] ^ 1] != UNDEF {
                b = self.table[b][word[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = word[i as usize];
                self.table[f][x] = b;
                self.table[b][x ^ 1] = f;
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }
}

fn todd_coxeter(ngens: usize, relators: &[Word], max_cosets: usize) -> Result<usize, GroupError> {
    let cols = 2 * ngens;
    let rels: Vec<Vec<usize>> = relators.iter().map(|r| r.iter().map(|l| l.column()).collect()).collect();
    let mut t = CosetTable { cols, table: vec![vec![UNDEF; cols]], parent: vec![0], queue: Vec::new(), max: max_cosets };
    let mut c = 0;
    while c < t.table.len() {
        if t.live(c) {
            for r in &rels {
                if !t.live(c) {
                    break;
                }
                t.scan_and_fill(c, r)?;
            }
            if t.live(c) {
                for x in 0..cols {
                    if t.table[c][x] == UNDEF {
                        t.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }
    Ok((0..t.table.len()).filter(|&c| t.live(c)).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: usize) -> Letter {
        Letter::gen(i)
    }

    #[test]
    fn cyclic_and_dihedral_orders() {
        let p = Presentation::new(1, vec![vec![g(0); 5]], vec![]);
        assert_eq!(p.order(1000).unwrap(), 5);
        let d4 = Presentation::new(2, vec![vec![g(0), g(0)], vec![g(1), g(1)], word_power(&[g(0), g(1)], 4)], vec![]);
        assert_eq!(d4.order(1000).unwrap(), 8);
    }

    #[test]
    fn gl3_f2_order() {
        let x = vec![g(0)];
        let y = vec![g(1)];
        let rels = vec![word_power(&x, 2), word_power(&y, 3), word_power(&[g(0), g(1)], 7), word_power(&commutator(&x, &y), 4)];
        let p = Presentation::new(2, rels, vec![]);
        assert_eq!(p.order(100_000).unwrap(), 168);
    }
}
