use crate::error::{Error, Result};

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    names: Vec<String>,
    /// For permutation groups, the permutation of `0..m` each element induces.
    permutations: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    /// Validates the table by enumeration: closure, identity at index 0,
    /// inverses, associativity.
    pub fn new(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::input("a group has at least one element"));
        }
        if names.len() != n {
            return Err(Error::input(format!("{} names for a group of order {n}", names.len())));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::input(format!("row {g} of the multiplication table is malformed")));
            }
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return Err(Error::structural(format!("element 0 is not an identity (fails at {})", names[g])));
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == 0 && table[h][g] == 0)
                .ok_or_else(|| Error::structural(format!("{} has no inverse", names[g])))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::structural(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, inverses, names, permutations: None })
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// ℤ/n with generator `g`; element k is `g^k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        FiniteGroup::new(table, names).expect("cyclic table is a group")
    }

    /// The symmetric group on `m` letters, elements in lexicographic order of
    /// their one-line notation (so the identity comes first). The product
    /// `στ` is the composite "first τ, then σ".
    pub fn symmetric(m: usize) -> Self {
        let mut perms = Vec::new();
        let mut current: Vec<usize> = (0..m).collect();
        loop {
            perms.push(current.clone());
            if !next_permutation(&mut current) {
                break;
            }
        }
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&t.iter().map(|&i| s[i]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .enumerate()
            .map(|(k, p)| {
                if k == 0 {
                    "e".to_string()
                } else {
                    format!("[{}]", p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" "))
                }
            })
            .collect();
        let mut g = FiniteGroup::new(table, names).expect("symmetric table is a group");
        g.permutations = Some(perms);
        g
    }

    /// `Z<n>` or `S<m>`, e.g. `Z2`, `Z3`, `S3`.
    pub fn preset(name: &str) -> Result<Self> {
        let bad = || Error::input(format!("unknown group preset {name:?} (expected Z<n> or S<m>)"));
        let (kind, rest) = name.split_at(name.len().min(1));
        let k: usize = rest.parse().map_err(|_| bad())?;
        match kind {
            "Z" if (1..=24).contains(&k) => Ok(FiniteGroup::cyclic(k)),
            "S" if (1..=4).contains(&k) => Ok(FiniteGroup::symmetric(k)),
            _ => Err(bad()),
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.permutations.as_ref().map(|p| p[a].as_slice())
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = vec![0usize];
        let mut member = vec![false; self.order()];
        member[0] = true;
        for g in 1..self.order() {
            if member[g] {
                continue;
            }
            gens.push(g);
            // Regenerate the subgroup closure.
            let mut frontier: Vec<usize> = reached.clone();
            while let Some(x) = frontier.pop() {
                for &s in &gens {
                    let y = self.mul(s, x);
                    if !member[y] {
                        member[y] = true;
                        reached.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}
