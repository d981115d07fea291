//! Fully materialized finite groups: an indexed element set with a dense
//! multiplication table, two-sided identity and inverses, and a generating
//! set whose closure is the whole group.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::perm::Permutation;
use crate::{Error, GroupRef, Result, DEFAULT_ENUM_LIMIT};

/// How a group was built. Direct products record their factor boundaries so
/// block operations need no rediscovery.
#[derive(Debug, Clone)]
pub enum Provenance {
    Atomic,
    Direct { left: GroupRef, right: GroupRef },
}

/// A finite group on element indices `0..order`, multiplication given by a
/// row-major Cayley table. Immutable after construction; shared via
/// [`GroupRef`].
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: u32,
    inverses: Vec<u32>,
    generators: Vec<u32>,
    labels: Vec<String>,
    provenance: Provenance,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates a raw Cayley table and wraps it. Checks that the table is a
    /// Latin square, locates a two-sided identity and all inverses, and
    /// verifies that the generators close to the full element set. Full
    /// associativity is not checked here (see [`verify_associativity`]); all
    /// in-crate constructors produce associative tables by construction.
    ///
    /// [`verify_associativity`]: FiniteGroup::verify_associativity
    pub fn from_table(
        table: Vec<u32>,
        generators: Vec<u32>,
        labels: Vec<String>,
    ) -> Result<GroupRef> {
        Self::from_parts(table, generators, labels, Provenance::Atomic)
    }

    pub(crate) fn from_parts(
        table: Vec<u32>,
        generators: Vec<u32>,
        labels: Vec<String>,
        provenance: Provenance,
    ) -> Result<GroupRef> {
        let order = labels.len();
        let invalid = |msg: &str| Error::InvalidArgument(msg.to_string());
        if order == 0 || table.len() != order * order {
            return Err(invalid("table size does not match label count"));
        }
        let n = order as u32;
        if table.iter().any(|&x| x >= n) {
            return Err(invalid("table entry out of range"));
        }
        // Latin square: every row and every column is a permutation.
        let mut seen_row = vec![false; order];
        let mut seen_col = vec![false; order];
        for a in 0..order {
            seen_row.iter_mut().for_each(|s| *s = false);
            seen_col.iter_mut().for_each(|s| *s = false);
            for b in 0..order {
                let r = table[a * order + b] as usize;
                let c = table[b * order + a] as usize;
                if seen_row[r] || seen_col[c] {
                    return Err(invalid("table is not a Latin square"));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| {
                (0..order)
                    .all(|x| table[e * order + x] == x as u32 && table[x * order + e] == x as u32)
            })
            .ok_or_else(|| invalid("table has no two-sided identity"))?
            as u32;
        let mut inverses = vec![0u32; order];
        for g in 0..order {
            let inv = (0..order)
                .find(|&x| table[g * order + x] == identity && table[x * order + g] == identity)
                .ok_or_else(|| invalid("element has no two-sided inverse"))?;
            inverses[g] = inv as u32;
        }
        for &g in &generators {
            if g >= n {
                return Err(Error::IndexOutOfRange {
                    index: g as usize,
                    order,
                });
            }
        }
        let group = FiniteGroup {
            order,
            table,
            identity,
            inverses,
            generators,
            labels,
            provenance,
        };
        // Generators must reach every element.
        let mut reached = vec![false; order];
        let mut stack = vec![identity as usize];
        reached[identity as usize] = true;
        while let Some(g) = stack.pop() {
            for &s in &group.generators {
                for prod in [group.mul(g as u32, s), group.mul(s, g as u32)] {
                    if !reached[prod as usize] {
                        reached[prod as usize] = true;
                        stack.push(prod as usize);
                    }
                }
            }
        }
        if reached.iter().any(|&r| !r) {
            return Err(invalid("generators do not generate the group"));
        }
        Ok(Arc::new(group))
    }

    /// The one-element group.
    pub fn trivial() -> GroupRef {
        FiniteGroup::from_parts(vec![0], vec![], vec!["e".to_string()], Provenance::Atomic).unwrap()
    }

    /// Cyclic group of order `n` in additive convention: element `i` is the
    /// residue `i`, generator `1` (none for `n = 1`).
    pub fn cyclic(n: usize) -> Result<GroupRef> {
        Self::cyclic_limited(n, DEFAULT_ENUM_LIMIT)
    }

    pub fn cyclic_limited(n: usize, limit: usize) -> Result<GroupRef> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "cyclic group order must be positive".into(),
            ));
        }
        check_buildable(n, limit)?;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a + b) % n) as u32;
            }
        }
        let generators = if n > 1 { vec![1] } else { vec![] };
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_parts(table, generators, labels, Provenance::Atomic)
    }

    /// Dicyclic group of order `4k`: elements `a^i` (`i < 2k`) then `a^i x`,
    /// with `a^{2k} = e`, `x^2 = a^k`, `x^{-1} a x = a^{-1}`.
    pub fn dicyclic(k: usize) -> Result<GroupRef> {
        Self::dicyclic_limited(k, DEFAULT_ENUM_LIMIT)
    }

    pub fn dicyclic_limited(k: usize, limit: usize) -> Result<GroupRef> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "dicyclic parameter must be positive".into(),
            ));
        }
        let m = 2 * k;
        let order = 2 * m;
        check_buildable(order, limit)?;
        let idx = |i: usize, s: usize| (s * m + i) as u32;
        let mut table = vec![0u32; order * order];
        for i in 0..m {
            for s in 0..2 {
                for j in 0..m {
                    for t in 0..2 {
                        // (a^i x^s)(a^j x^t): pull a^j through x^s, then x^s x^t.
                        let rot = if s == 0 { (i + j) % m } else { (i + m - j) % m };
                        let (rot, flip) = if s == 1 && t == 1 {
                            ((rot + k) % m, 0)
                        } else {
                            (rot, (s + t) % 2)
                        };
                        table[(idx(i, s) as usize) * order + idx(j, t) as usize] = idx(rot, flip);
                    }
                }
            }
        }
        let labels = (0..order)
            .map(|e| {
                let (i, s) = (e % m, e / m);
                match (i, s) {
                    (0, 0) => "e".to_string(),
                    (1, 0) => "a".to_string(),
                    (i, 0) => format!("a^{i}"),
                    (0, _) => "x".to_string(),
                    (1, _) => "a x".to_string(),
                    (i, _) => format!("a^{i} x"),
                }
            })
            .collect();
        Self::from_parts(
            table,
            vec![idx(1, 0), idx(0, 1)],
            labels,
            Provenance::Atomic,
        )
    }

    /// Symmetric group on `d` points, elements ordered lexicographically by
    /// image vector (so the identity is element 0), labeled in cycle notation.
    pub fn symmetric(d: usize) -> Result<GroupRef> {
        Self::symmetric_limited(d, DEFAULT_ENUM_LIMIT)
    }

    pub fn symmetric_limited(d: usize, limit: usize) -> Result<GroupRef> {
        if d == 0 {
            return Err(Error::InvalidArgument(
                "symmetric degree must be positive".into(),
            ));
        }
        let mut order: usize = 1;
        for i in 2..=d {
            order = order.saturating_mul(i);
            check_buildable(order, limit)?;
        }
        let mut gens = Vec::new();
        if d >= 2 {
            gens.push(Permutation::from_cycles(d, &[vec![0, 1]])?);
            if d >= 3 {
                gens.push(Permutation::from_cycles(d, &[(0..d).collect()])?);
            }
        }
        Self::from_permutations_limited(d, &gens, limit)
    }

    /// The group generated by the given permutations, materialized by
    /// closure. Elements are sorted by image vector, so the numbering is
    /// canonical for the generated set; labels are cycle strings.
    pub fn from_permutations(degree: usize, generators: &[Permutation]) -> Result<GroupRef> {
        Self::from_permutations_limited(degree, generators, DEFAULT_ENUM_LIMIT)
    }

    pub fn from_permutations_limited(
        degree: usize,
        generators: &[Permutation],
        limit: usize,
    ) -> Result<GroupRef> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(g.degree(), degree));
            }
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(elements[0].clone(), ());
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in generators {
                let next = current.compose(g)?;
                if !seen.contains_key(&next) {
                    check_buildable(elements.len() + 1, limit)?;
                    seen.insert(next.clone(), ());
                    elements.push(next);
                }
            }
        }
        elements.sort();
        let index: HashMap<&Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i as u32))
            .collect();
        let order = elements.len();
        let mut table = vec![0u32; order * order];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                table[a * order + b] = index[&pa.compose(pb)?];
            }
        }
        let gen_indices = generators.iter().map(|g| index[g]).collect();
        let labels = elements.iter().map(|p| p.to_string()).collect();
        Self::from_parts(table, gen_indices, labels, Provenance::Atomic)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, g: u32) -> u32 {
        self.inverses[g as usize]
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn label(&self, g: u32) -> &str {
        &self.labels[g as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `g` conjugated: `h g h^{-1}`.
    #[inline]
    pub fn conj(&self, h: u32, g: u32) -> u32 {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn pow(&self, g: u32, k: usize) -> u32 {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    /// Least `k >= 1` with `g^k = e`; divides the group order.
    pub fn element_order(&self, g: u32) -> usize {
        let mut k = 1;
        let mut acc = g;
        while acc != self.identity {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32)
            .all(|a| (0..self.order as u32).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive associativity check over all `order^3` triples. Intended
    /// for verification sweeps on small groups, not construction.
    pub fn verify_associativity(&self) -> bool {
        let n = self.order as u32;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True when both groups have identical order and multiplication tables
    /// (same element numbering, not just isomorphic).
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }
}

pub(crate) fn check_limit(order: usize, limit: usize) -> Result<()> {
    if order > limit {
        Err(Error::LimitExceeded { order, limit })
    } else {
        Ok(())
    }
}

/// Guard for constructors that allocate an order^2 table: the user limit
/// applies, but never above [`crate::MAX_TABLE_ORDER`].
pub(crate) fn check_buildable(order: usize, limit: usize) -> Result<()> {
    check_limit(order, limit.min(crate::MAX_TABLE_ORDER))
}
