//! Finite groups given by Cayley tables, and the subgroup calculus on them.
//!
//! Elements are indices `0..n` with the identity at index 0. Conjugation
//! and commutators follow the right-action convention: `y^x = x⁻¹yx` and
//! `[x, y] = x⁻¹y⁻¹xy`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// Default order cap for loaded and constructed groups.
pub const DEFAULT_ORDER_CAP: usize = 5000;

/// Above this order associativity checking may be skipped for tables that
/// are correct by construction.
pub const ASSOC_CHECK_THRESHOLD: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("group order {order} exceeds cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("row {row} has length {len}, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry {value} at ({row}, {col}) out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("index 0 is not the identity (fails at {0})")]
    IdentityNotAtZero(usize),
    #[error("row {0} is not a permutation")]
    NotLatinRow(usize),
    #[error("column {0} is not a permutation")]
    NotLatinColumn(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group order {0} is not a power of {1}")]
    NotPGroup(usize, u64),
    #[error("names list has {0} entries for a group of order {1}")]
    BadNames(usize, usize),
}

/// How to treat the O(n³) associativity check on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssocCheck {
    Always,
    /// Check only when the order is at most [`ASSOC_CHECK_THRESHOLD`].
    UpToThreshold,
    Never,
}

#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    pub cap: usize,
    pub assoc: AssocCheck,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { cap: DEFAULT_ORDER_CAP, assoc: AssocCheck::Always }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    elt_order: Vec<u32>,
    names: Option<Vec<String>>,
}

/// A subgroup of some [`FiniteGroup`], as a sorted member list plus a
/// membership mask over the parent's elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
    generators: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    LowerCentral,
    Derived,
    UpperCentral,
}

/// A quotient group together with the projection from the parent.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the coset index of element `x`.
    pub projection: Vec<usize>,
    /// Smallest element of each coset.
    pub representatives: Vec<usize>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd(a, b)
}

/// `Some(k)` when `n == p^k`.
pub fn prime_power_exponent(n: usize, p: u64) -> Option<u32> {
    if n == 0 || p < 2 {
        return None;
    }
    let mut n = n as u64;
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

/// The unique prime dividing `n`, when `n > 1` is a prime power.
pub fn prime_of_prime_power(n: usize) -> Option<u64> {
    let n = n as u64;
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            break;
        }
        d += 1;
    }
    let p = if d * d > n { n } else { d };
    prime_power_exponent(n as usize, p).map(|_| p)
}

impl FiniteGroup {
    /// Validates a Cayley table: square shape, identity at index 0,
    /// Latin-square rows and columns, associativity (per `opts`).
    pub fn from_table(rows: &[Vec<usize>], opts: &LoadOptions) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > opts.cap {
            return Err(GroupError::OrderCap { order: n, cap: opts.cap });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { row: i, len: r.len(), order: n });
            }
            for (j, &v) in r.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { row: i, col: j, value: v });
                }
                table.push(v as u32);
            }
        }
        Self::validate_flat(n, table, opts)
    }

    pub(crate) fn validate_flat(
        n: usize,
        table: Vec<u32>,
        opts: &LoadOptions,
    ) -> Result<Self, GroupError> {
        if n > opts.cap {
            return Err(GroupError::OrderCap { order: n, cap: opts.cap });
        }
        for j in 0..n {
            if table[j] as usize != j || table[j * n] as usize != j {
                return Err(GroupError::IdentityNotAtZero(j));
            }
        }
        let mut seen = vec![u32::MAX; n];
        for i in 0..n {
            for j in 0..n {
                let v = table[i * n + j] as usize;
                if seen[v] == i as u32 {
                    return Err(GroupError::NotLatinRow(i));
                }
                seen[v] = i as u32;
            }
        }
        seen.fill(u32::MAX);
        for j in 0..n {
            for i in 0..n {
                let v = table[i * n + j] as usize;
                if seen[v] == j as u32 {
                    return Err(GroupError::NotLatinColumn(j));
                }
                seen[v] = j as u32;
            }
        }
        let check = match opts.assoc {
            AssocCheck::Always => true,
            AssocCheck::UpToThreshold => n <= ASSOC_CHECK_THRESHOLD,
            AssocCheck::Never => false,
        };
        if check {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a * n + b] as usize;
                    for c in 0..n {
                        let bc = table[b * n + c] as usize;
                        if table[ab * n + c] != table[a * n + bc] {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        }
        Ok(Self::from_trusted(n, table))
    }

    /// Builds a group from a table already known to be a group table.
    pub(crate) fn from_trusted(n: usize, table: Vec<u32>) -> Self {
        let mut inverse = vec![0u32; n];
        for i in 0..n {
            let row = &table[i * n..(i + 1) * n];
            inverse[i] = row.iter().position(|&v| v == 0).expect("latin row") as u32;
        }
        let mut elt_order = vec![0u32; n];
        for x in 0..n {
            let mut y = x;
            let mut k = 1;
            while y != 0 {
                y = table[y * n + x] as usize;
                k += 1;
            }
            elt_order[x] = k;
        }
        FiniteGroup { order: n, table, inverse, elt_order, names: None }
    }

    pub fn trivial() -> Self {
        Self::from_trusted(1, vec![0])
    }

    /// Cyclic group of order `n` with element `k` the `k`-th power of a generator.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|ij| (((ij / n) + (ij % n)) % n) as u32).collect();
        Self::from_trusted(n, table)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.order {
            return Err(GroupError::BadNames(names.len(), self.order));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Table row `i` as indices.
    pub fn table_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.table[i * self.order..(i + 1) * self.order].iter().map(|&v| v as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.elt_order[a] as usize
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let k = e % self.elt_order[a] as u64;
        let mut y = 0;
        for _ in 0..k {
            y = self.mul(y, a);
        }
        y
    }

    /// `y^x = x⁻¹ y x`.
    #[inline]
    pub fn conj(&self, y: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), y), x)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    #[inline]
    pub fn comm(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn has_odd_order(&self) -> bool {
        self.order % 2 == 1
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order).collect(),
            mask: vec![true; self.order],
            generators: self.generating_set(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        Subgroup { members: vec![0], mask, generators: Vec::new() }
    }

    /// A generating set chosen greedily in index order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut h = self.trivial_subgroup();
        for x in 0..self.order {
            if !h.mask[x] {
                self.extend(&mut h, x);
            }
        }
        h.generators
    }

    /// Adds `g` to the generators of `h` and closes.
    fn extend(&self, h: &mut Subgroup, g: usize) {
        if h.mask[g] {
            return;
        }
        h.generators.push(g);
        let mut queue: Vec<usize> = h.members.clone();
        let mut i = 0;
        while i < queue.len() {
            let m = queue[i];
            i += 1;
            for &s in &h.generators {
                let y = self.mul(m, s);
                if !h.mask[y] {
                    h.mask[y] = true;
                    h.members.push(y);
                    queue.push(y);
                }
            }
        }
        h.members.sort_unstable();
    }

    /// `⟨gens⟩`, or its normal closure in the whole group when `normal` is set.
    pub fn generated_subgroup(&self, gens: &[usize], normal: bool) -> Subgroup {
        let h = self.subgroup_from_elements(gens.iter().copied());
        if normal {
            let conj = self.generating_set();
            self.close_under_conjugation(h, &conj)
        } else {
            h
        }
    }

    /// Subgroup generated by an arbitrary element stream; only elements not
    /// already present become generators.
    pub fn subgroup_from_elements(&self, elems: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut h = self.trivial_subgroup();
        for x in elems {
            if !h.mask[x] {
                self.extend(&mut h, x);
            }
        }
        h
    }

    /// Subgroup with the given members; panics in debug builds if the set
    /// is not closed.
    pub fn subgroup_from_mask(&self, mask: &[bool]) -> Subgroup {
        let h = self.subgroup_from_elements((0..self.order).filter(|&x| mask[x]));
        debug_assert_eq!(h.mask, mask, "member set is not a subgroup");
        h
    }

    /// Smallest subgroup containing `h` and closed under conjugation by
    /// every element of `by`.
    pub fn close_under_conjugation(&self, mut h: Subgroup, by: &[usize]) -> Subgroup {
        let mut i = 0;
        while i < h.generators.len() {
            let g = h.generators[i];
            for &c in by {
                let y = self.conj(g, c);
                if !h.mask[y] {
                    self.extend(&mut h, y);
                }
            }
            i += 1;
        }
        h
    }

    /// Normal closure of `seeds` inside the subgroup generated by `within`.
    pub fn normal_closure_in(&self, seeds: &[usize], within: &[usize]) -> Subgroup {
        let h = self.subgroup_from_elements(seeds.iter().copied());
        self.close_under_conjugation(h, within)
    }

    /// Derived subgroup of `⟨gens⟩`: the normal closure there of the
    /// pairwise commutators of the generators.
    pub fn derived_of_generated(&self, gens: &[usize]) -> Subgroup {
        let mut seeds = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[..i] {
                seeds.push(self.comm(a, b));
            }
        }
        self.normal_closure_in(&seeds, gens)
    }

    /// `[A, B]` for subgroups normal in the whole group, via generators.
    pub fn commutator_of_normal(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seeds = Vec::new();
        for &x in &a.generators {
            for &y in &b.generators {
                seeds.push(self.comm(x, y));
            }
        }
        self.generated_subgroup(&seeds, true)
    }

    /// `[A, B] = ⟨[a, b] : a ∈ A, b ∈ B⟩` by full enumeration.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut h = self.trivial_subgroup();
        for &x in &a.members {
            for &y in &b.members {
                let c = self.comm(x, y);
                if !h.mask[c] {
                    self.extend(&mut h, c);
                }
            }
        }
        h
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_of_normal(&g, &g)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut h = a.clone();
        for &x in &b.generators {
            self.extend(&mut h, x);
        }
        h
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.subgroup_from_elements(a.members.iter().copied().filter(|&x| b.mask[x]))
    }

    /// Membership mask of the product set `AB`.
    pub fn product_set(&self, a: &[usize], b: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        for &x in a {
            for &y in b {
                mask[self.mul(x, y)] = true;
            }
        }
        mask
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let gens = self.generating_set();
        h.generators.iter().all(|&x| gens.iter().all(|&g| h.mask[self.conj(x, g)]))
    }

    pub fn centralizer_of_set(&self, s: &[usize]) -> Subgroup {
        let mask: Vec<bool> = (0..self.order)
            .map(|x| s.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
            .collect();
        self.subgroup_from_mask(&mask)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_of_set(&self.generating_set())
    }

    /// Terms of the requested series, starting from G (lower central,
    /// derived) or from 1 (upper central), until two consecutive terms
    /// coincide. The repeated term is not listed twice.
    pub fn series(&self, kind: SeriesKind) -> Vec<Subgroup> {
        let g = self.whole();
        let mut out = Vec::new();
        match kind {
            SeriesKind::LowerCentral | SeriesKind::Derived => {
                let mut cur = g.clone();
                loop {
                    let next = match kind {
                        SeriesKind::LowerCentral => self.commutator_of_normal(&cur, &g),
                        _ => self.commutator_of_normal(&cur, &cur),
                    };
                    let stable = next.order() == cur.order();
                    out.push(cur);
                    if stable {
                        break;
                    }
                    cur = next;
                }
            }
            SeriesKind::UpperCentral => {
                let gens = self.generating_set();
                let mut cur = self.trivial_subgroup();
                loop {
                    let mask: Vec<bool> = (0..self.order)
                        .map(|x| gens.iter().all(|&y| cur.mask[self.comm(x, y)]))
                        .collect();
                    let next = self.subgroup_from_mask(&mask);
                    let stable = next.order() == cur.order();
                    out.push(cur);
                    if stable {
                        break;
                    }
                    cur = next;
                }
            }
        }
        out
    }

    /// Upper central series by the definition over all pairs; used as an
    /// independent cross-check of [`Self::series`].
    pub fn upper_central_by_definition(&self) -> Vec<Subgroup> {
        let mut out = Vec::new();
        let mut cur = self.trivial_subgroup();
        loop {
            let mask: Vec<bool> = (0..self.order)
                .map(|x| (0..self.order).all(|y| cur.mask[self.comm(x, y)]))
                .collect();
            let next = self.subgroup_from_mask(&mask);
            let stable = next.order() == cur.order();
            out.push(cur);
            if stable {
                break;
            }
            cur = next;
        }
        out
    }

    pub fn is_nilpotent(&self) -> bool {
        self.series(SeriesKind::LowerCentral).last().map_or(true, |s| s.is_trivial())
    }

    /// Nilpotency class, when nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let lcs = self.series(SeriesKind::LowerCentral);
        lcs.last().unwrap().is_trivial().then(|| lcs.len() - 1)
    }

    /// `⟨x^e : x ∈ H⟩`.
    pub fn power_subgroup(&self, h: &Subgroup, e: u64) -> Subgroup {
        self.subgroup_from_elements(h.members.iter().map(|&x| self.pow(x, e)))
    }

    /// Least common multiple of the element orders of `h`.
    pub fn exponent_of(&self, h: &Subgroup) -> u64 {
        h.members.iter().fold(1, |acc, &x| lcm(acc, self.elt_order[x] as u64))
    }

    pub fn exponent(&self) -> u64 {
        self.exponent_of(&self.whole())
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their
    /// smallest element, so the identity coset is 0.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient, GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if projection[x] == usize::MAX {
                let c = reps.len();
                reps.push(x);
                for &y in &n.members {
                    projection[self.mul(x, y)] = c;
                }
            }
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(projection[self.mul(a, b)] as u32);
            }
        }
        Ok(Quotient { group: Self::from_trusted(m, table), projection, representatives: reps })
    }

    /// The subgroup `h` as a standalone group; returns the group and the
    /// embedding (new index → parent index). Member order is preserved.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let m = h.order();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in h.members.iter().enumerate() {
            pos[x] = i;
        }
        let mut table = Vec::with_capacity(m * m);
        for &a in &h.members {
            for &b in &h.members {
                table.push(pos[self.mul(a, b)] as u32);
            }
        }
        (Self::from_trusted(m, table), h.members.clone())
    }

    /// Direct product; element `(a, b)` has index `a + b·|self|`.
    pub fn direct_product(&self, other: &FiniteGroup, cap: usize) -> Result<Self, GroupError> {
        let (n1, n2) = (self.order, other.order);
        let n = n1 * n2;
        if n > cap {
            return Err(GroupError::OrderCap { order: n, cap });
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let (a, b) = (x % n1, x / n1);
            for y in 0..n {
                let (c, d) = (y % n1, y / n1);
                table.push((self.mul(a, c) + other.mul(b, d) * n1) as u32);
            }
        }
        Ok(Self::from_trusted(n, table))
    }

    /// Powerful p-group test: `G' ≤ G^p` for odd p, `G' ≤ G^4` for p = 2.
    pub fn is_powerful(&self, p: u64) -> Result<bool, GroupError> {
        if prime_power_exponent(self.order, p).is_none() {
            return Err(GroupError::NotPGroup(self.order, p));
        }
        let g = self.whole();
        let derived = self.derived_subgroup();
        let pw = self.power_subgroup(&g, if p == 2 { 4 } else { p });
        Ok(derived.is_subgroup_of(&pw))
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.mask[x])
    }

    /// Same member set (generators may differ).
    pub fn same_members(&self, other: &Subgroup) -> bool {
        self.members == other.members
    }

    /// Image of the member set under an index map, as a mask of the given size.
    pub fn image_mask(&self, map: &[usize], size: usize) -> Vec<bool> {
        let mut m = vec![false; size];
        for &x in &self.members {
            m[map[x]] = true;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::PcPresentation;

    /// Heisenberg group mod 3 from the explicit product formula
    /// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'-b·a')`, index `a + 3b + 9c`.
    fn heisenberg_formula(p: usize) -> FiniteGroup {
        let n = p * p * p;
        let dec = |x: usize| (x % p, (x / p) % p, x / (p * p));
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let (a, b, c) = dec(x);
                (0..n)
                    .map(|y| {
                        let (a2, b2, c2) = dec(y);
                        let cc = (c + c2 + p * p - (b * a2) % p) % p;
                        (a + a2) % p + ((b + b2) % p) * p + cc * p * p
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&rows, &LoadOptions::default()).unwrap()
    }

    fn heis3() -> FiniteGroup {
        heisenberg_formula(3)
    }

    const X: usize = 1;
    const Y: usize = 3;
    const Z: usize = 9;

    #[test]
    fn load_small_tables() {
        let t = FiniteGroup::from_table(&[vec![0]], &LoadOptions::default()).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.exponent(), 1);
        let c3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = FiniteGroup::from_table(&c3, &LoadOptions::default()).unwrap();
        assert_eq!((g.order(), g.exponent()), (3, 3));
        assert_eq!(heis3().order(), 27);
    }

    #[test]
    fn load_errors_name_the_failure() {
        let opts = LoadOptions::default();
        let bad_id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(FiniteGroup::from_table(&bad_id, &opts), Err(GroupError::IdentityNotAtZero(0)));
        let not_latin = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        assert_eq!(FiniteGroup::from_table(&not_latin, &opts), Err(GroupError::NotLatinRow(1)));
        // a Latin square with identity 0 that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(&loop5, &opts),
            Err(GroupError::NotAssociative(..))
        ));
        let ragged = vec![vec![0, 1], vec![1]];
        assert!(matches!(FiniteGroup::from_table(&ragged, &opts), Err(GroupError::NotSquare { .. })));
        let capped = LoadOptions { cap: 2, ..opts };
        let c3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(matches!(FiniteGroup::from_table(&c3, &capped), Err(GroupError::OrderCap { .. })));
    }

    #[test]
    fn formula_table_matches_collection() {
        let pc = PcPresentation::heisenberg(3);
        let g = pc.to_group(&LoadOptions::default()).unwrap();
        assert_eq!(g, heis3());
    }

    #[test]
    fn generated_subgroups() {
        let g = heis3();
        assert!(g.generated_subgroup(&[], false).is_trivial());
        assert_eq!(g.generated_subgroup(&[X], false).members(), &[0, 1, 2]);
        assert_eq!(g.generated_subgroup(&[X, Y], false).order(), 27);
        assert_eq!(g.generated_subgroup(&[X], true).order(), 9);
    }

    #[test]
    fn series_examples() {
        let c5 = FiniteGroup::cyclic(5);
        let c5_3 = c5.direct_product(&c5, 5000).unwrap().direct_product(&c5, 5000).unwrap();
        let d = c5_3.series(SeriesKind::Derived);
        assert_eq!(d.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![125, 1]);
        assert_eq!(c5_3.nilpotency_class(), Some(1));

        let g = heis3();
        let lcs = g.series(SeriesKind::LowerCentral);
        assert_eq!(lcs.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![27, 3, 1]);
        assert_eq!(lcs[1].members(), &[0, Z, 2 * Z]);
        let ucs = g.series(SeriesKind::UpperCentral);
        assert_eq!(ucs.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 3, 27]);
        assert_eq!(g.nilpotency_class(), Some(2));
    }

    #[test]
    fn power_subgroups_and_exponents() {
        let c9 = FiniteGroup::cyclic(9);
        assert_eq!(c9.power_subgroup(&c9.whole(), 3).members(), &[0, 3, 6]);
        assert_eq!(c9.exponent(), 9);
        let g = heis3();
        assert_eq!(g.exponent(), 3);
        assert!(g.power_subgroup(&g.whole(), 3).is_trivial());
        assert!(g.power_subgroup(&g.whole(), g.exponent()).is_trivial());
        assert_eq!(FiniteGroup::trivial().exponent(), 1);
    }

    #[test]
    fn quotients() {
        let g = heis3();
        let z = g.generated_subgroup(&[Z], false);
        let q = g.quotient(&z).unwrap();
        assert_eq!(q.group.order(), 9);
        assert!(q.group.is_abelian());
        assert_eq!(q.group.exponent(), 3);
        let same = g.quotient(&g.trivial_subgroup()).unwrap();
        assert_eq!(same.group, g);
        assert_eq!(g.quotient(&g.whole()).unwrap().group.order(), 1);
        let x = g.generated_subgroup(&[X], false);
        assert_eq!(g.quotient(&x).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn centralizers() {
        let g = heis3();
        assert_eq!(g.centralizer_of_set(&[0]).order(), 27);
        let cx = g.centralizer_of_set(&[X]);
        assert_eq!(cx.order(), 9);
        assert!(cx.contains(X) && cx.contains(Z));
        let all: Vec<usize> = (0..27).collect();
        assert_eq!(g.centralizer_of_set(&all).members(), &[0, Z, 2 * Z]);
    }

    #[test]
    fn powerful_predicate() {
        assert!(FiniteGroup::cyclic(9).is_powerful(3).unwrap());
        let c3 = FiniteGroup::cyclic(3);
        assert!(c3.direct_product(&c3, 100).unwrap().is_powerful(3).unwrap());
        assert!(!heis3().is_powerful(3).unwrap());
        assert!(FiniteGroup::cyclic(6).is_powerful(3).is_err());
    }

    #[test]
    fn series_cross_check_by_definition() {
        let g = heis3();
        let a = g.series(SeriesKind::UpperCentral);
        let b = g.upper_central_by_definition();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!(x.same_members(y));
        }
        let whole = g.whole();
        assert!(g.derived_subgroup().same_members(&g.commutator_subgroup(&whole, &whole)));
    }

    #[test]
    fn prime_power_helpers() {
        assert_eq!(prime_power_exponent(27, 3), Some(3));
        assert_eq!(prime_power_exponent(1, 3), Some(0));
        assert_eq!(prime_power_exponent(75, 5), None);
        assert_eq!(prime_of_prime_power(125), Some(5));
        assert_eq!(prime_of_prime_power(75), None);
        assert_eq!(prime_of_prime_power(1), None);
        assert_eq!(lcm(3, 5), 15);
    }
}
