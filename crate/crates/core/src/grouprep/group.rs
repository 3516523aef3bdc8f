//! Finite groups given by multiplication tables.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite group with a validated multiplication table and a generating set.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    /// Breadth-first spanning tree: `(parent, generator index)` for each element.
    tree: Vec<Option<(usize, usize)>>,
    order_bfs: Vec<usize>,
    subgroups: BTreeMap<String, Vec<usize>>,
}

impl FiniteGroup {
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let name = name.into();
        let n = table.len();
        if n == 0 {
            return Err(Error::domain(format!("group {name}: empty table")));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::domain(format!("group {name}: table is not a square table on {n} elements")));
            }
            if row.iter().collect::<BTreeSet<_>>().len() != n {
                return Err(Error::domain(format!("group {name}: a row is not a permutation")));
            }
        }
        for j in 0..n {
            if (0..n).map(|i| table[i][j]).collect::<BTreeSet<_>>().len() != n {
                return Err(Error::domain(format!("group {name}: a column is not a permutation")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::domain(format!("group {name}: no identity element")))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::domain(format!("group {name}: multiplication is not associative")));
                    }
                }
            }
        }
        let inverses = (0..n).map(|a| (0..n).find(|&b| table[a][b] == identity).unwrap_or(identity)).collect();
        if generators.iter().any(|&g| g >= n) {
            return Err(Error::domain(format!("group {name}: generator out of range")));
        }
        let mut tree = vec![None; n];
        let mut seen = vec![false; n];
        seen[identity] = true;
        let mut order_bfs = vec![identity];
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in generators.iter().enumerate() {
                let y = table[x][g];
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = Some((x, k));
                    order_bfs.push(y);
                    queue.push_back(y);
                }
            }
        }
        if order_bfs.len() != n {
            return Err(Error::domain(format!("group {name}: generators do not generate the group")));
        }
        Ok(FiniteGroup { name, table, identity, inverses, generators, tree, order_bfs, subgroups: BTreeMap::new() })
    }

    /// Group generated by permutations of `0..k`, composed as functions (`(s t)(i) = s(t(i))`).
    pub fn from_permutations(name: impl Into<String>, gens: &[Vec<usize>]) -> Result<Self> {
        let name = name.into();
        let k = gens.first().map_or(0, Vec::len);
        for g in gens {
            if g.len() != k || g.iter().collect::<BTreeSet<_>>().len() != k || g.iter().any(|&x| x >= k) {
                return Err(Error::domain(format!("group {name}: generator is not a permutation of 0..{k}")));
            }
        }
        let id: Vec<usize> = (0..k).collect();
        let mut elems = vec![id];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        index.insert(elems[0].clone(), 0);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p: Vec<usize> = (0..k).map(|x| elems[i][g[x]]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let p: Vec<usize> = (0..k).map(|x| elems[a][elems[b][x]]).collect();
                        index[&p]
                    })
                    .collect()
            })
            .collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        Self::new(name, table, generators)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Elements in breadth-first order from the identity, with their tree parents.
    pub fn spanning_tree(&self) -> impl Iterator<Item = (usize, Option<(usize, usize)>)> + '_ {
        self.order_bfs.iter().map(|&x| (x, self.tree[x]))
    }

    /// A word in generator indices evaluating to `a`.
    pub fn word(&self, a: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut x = a;
        while let Some((p, k)) = self.tree[x] {
            w.push(k);
            x = p;
        }
        w.reverse();
        w
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `elems`, sorted.
    pub fn closure(&self, elems: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in elems {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        (0..self.order()).all(|g| set.iter().all(|&h| set.contains(&self.conj(g, h))))
    }

    /// All subgroups, sorted by order and then lexicographically.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = (0..self.order()).map(|a| self.closure(&[a])).collect();
        loop {
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut grew = false;
            for a in &current {
                for b in &current {
                    let mut gens = a.clone();
                    gens.extend(b);
                    if found.insert(self.closure(&gens)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
        out
    }

    /// Representatives `t_i` of the left cosets `t_i H`, smallest element of each coset.
    pub fn left_coset_reps(&self, h: &[usize]) -> Vec<usize> {
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &x in h {
                covered[self.mul(g, x)] = true;
            }
        }
        reps
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for a in 0..self.order() {
            if seen[a] {
                continue;
            }
            let cls: BTreeSet<usize> = (0..self.order()).map(|g| self.conj(g, a)).collect();
            for &c in &cls {
                seen[c] = true;
            }
            out.push(cls.into_iter().collect());
        }
        out
    }

    pub fn add_subgroup(&mut self, name: impl Into<String>, elems: Vec<usize>) -> Result<()> {
        let name = name.into();
        if elems.iter().any(|&x| x >= self.order()) || !self.is_subgroup(&elems) {
            return Err(Error::domain(format!("group {}: '{name}' is not a subgroup", self.name)));
        }
        let mut elems = elems;
        elems.sort_unstable();
        elems.dedup();
        self.subgroups.insert(name, elems);
        Ok(())
    }

    pub fn subgroup(&self, name: &str) -> Option<&[usize]> {
        self.subgroups.get(name).map(Vec::as_slice)
    }

    pub fn named_subgroups(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.subgroups
    }

    /// The subgroup as a group in its own right, with its inclusion.
    pub fn subgroup_as_group(self: &Arc<Self>, name: impl Into<String>, elems: &[usize]) -> Result<GroupHom> {
        if !self.is_subgroup(elems) {
            return Err(Error::domain(format!("group {}: not a subgroup", self.name)));
        }
        let mut elems = elems.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let table = elems.iter().map(|&a| elems.iter().map(|&b| pos[&self.mul(a, b)]).collect()).collect();
        let gens = minimal_generators(self, &elems).iter().map(|g| pos[g]).collect();
        let sub = Arc::new(FiniteGroup::new(name, table, gens)?);
        GroupHom::new(sub, self.clone(), elems)
    }
}

/// A small generating set of the subgroup `elems`, chosen greedily.
fn minimal_generators(g: &FiniteGroup, elems: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.closure(&gens);
    for &x in elems {
        if !span.contains(&x) {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    gens
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

/// A homomorphism of finite groups.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(Error::domain(format!(
                "map {} -> {} has the wrong shape",
                source.name(),
                target.name()
            )));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::domain(format!(
                        "map {} -> {} is not a homomorphism",
                        source.name(),
                        target.name()
                    )));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    /// Determined by the images of the source generators.
    pub fn from_generator_images(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: &[usize]) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::domain("wrong number of generator images"));
        }
        let mut map = vec![usize::MAX; source.order()];
        for (x, parent) in source.spanning_tree() {
            map[x] = match parent {
                None => target.identity(),
                Some((p, k)) => target.mul(map[p], images[k]),
            };
        }
        Self::new(source, target, map)
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let map = (0..g.order()).collect();
        GroupHom { source: g.clone(), target: g, map }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().collect::<BTreeSet<_>>().len() == self.map.len()
    }

    pub fn image(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.map.iter().copied().collect();
        s.into_iter().collect()
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source.order()).filter(|&a| self.map[a] == self.target.identity()).collect()
    }

    pub fn compose(&self, after: &GroupHom) -> Result<GroupHom> {
        if after.source != self.target {
            return Err(Error::domain("composition of incompatible homomorphisms"));
        }
        let map = self.map.iter().map(|&a| after.map[a]).collect();
        Ok(GroupHom { source: self.source.clone(), target: after.target.clone(), map })
    }
}

/// A finite set with a left action.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    /// `action[g][x]` is `g·x`.
    action: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: Arc<FiniteGroup>, size: usize, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != group.order() || action.iter().any(|p| p.len() != size || p.iter().any(|&x| x >= size)) {
            return Err(Error::domain("G-set action has the wrong shape"));
        }
        if (0..size).any(|x| action[group.identity()][x] != x) {
            return Err(Error::domain("identity does not act trivially"));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = group.mul(a, b);
                if (0..size).any(|x| action[ab][x] != action[a][action[b][x]]) {
                    return Err(Error::domain("G-set action is not compatible with multiplication"));
                }
            }
        }
        Ok(GSet { group, size, action })
    }

    /// The action is determined by permutations for the generators.
    pub fn from_generator_permutations(group: Arc<FiniteGroup>, size: usize, perms: &[Vec<usize>]) -> Result<Self> {
        if perms.len() != group.generators().len() {
            return Err(Error::domain("wrong number of generator permutations"));
        }
        let mut action = vec![Vec::new(); group.order()];
        for (x, parent) in group.spanning_tree() {
            action[x] = match parent {
                None => (0..size).collect(),
                Some((p, k)) => {
                    let prev: &Vec<usize> = &action[p];
                    (0..size).map(|i| prev[perms[k][i]]).collect()
                }
            };
        }
        Self::new(group, size, action)
    }

    pub fn trivial(group: Arc<FiniteGroup>, size: usize) -> Self {
        let action = vec![(0..size).collect(); group.order()];
        GSet { group, size, action }
    }

    /// `G/H` with left multiplication.
    pub fn cosets(group: Arc<FiniteGroup>, h: &[usize]) -> Self {
        let reps = group.left_coset_reps(h);
        let which = |g: usize| {
            reps.iter().position(|&t| h.iter().any(|&x| group.mul(t, x) == g)).expect("coset representative")
        };
        let action = (0..group.order()).map(|g| reps.iter().map(|&t| which(group.mul(g, t))).collect()).collect();
        GSet { size: reps.len(), group, action }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = (0..self.group.order()).map(|g| self.act(g, x)).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        if self.group != other.group {
            return Err(Error::domain("disjoint union of G-sets for different groups"));
        }
        let action = (0..self.group.order())
            .map(|g| {
                let mut p = self.action[g].clone();
                p.extend(other.action[g].iter().map(|&x| x + self.size));
                p
            })
            .collect();
        Ok(GSet { group: self.group.clone(), size: self.size + other.size, action })
    }

    /// Product with the diagonal action; the pair `(x, y)` has index `x * other.size + y`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        if self.group != other.group {
            return Err(Error::domain("product of G-sets for different groups"));
        }
        let action = (0..self.group.order())
            .map(|g| {
                let mut p = Vec::with_capacity(self.size * other.size);
                for x in 0..self.size {
                    for y in 0..other.size {
                        p.push(self.action[g][x] * other.size + other.action[g][y]);
                    }
                }
                p
            })
            .collect();
        Ok(GSet { group: self.group.clone(), size: self.size * other.size, action })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    #[test]
    fn permutation_group() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.all_subgroups().len(), 6);
        assert_eq!(g.conjugacy_classes().len(), 3);
        for a in 0..6 {
            let w = g.word(a);
            let v = w.iter().fold(g.identity(), |acc, &k| g.mul(acc, g.generators()[k]));
            assert_eq!(v, a);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::new("bad", vec![vec![0, 1], vec![0, 1]], vec![1]).is_err());
        assert!(FiniteGroup::new("c2", vec![vec![0, 1], vec![1, 0]], vec![]).is_err());
        assert!(FiniteGroup::new("c2", vec![vec![0, 1], vec![1, 0]], vec![1]).is_ok());
    }

    #[test]
    fn cosets_action() {
        let g = Arc::new(s3());
        let h = g.closure(&[g.generators()[0]]);
        let x = GSet::cosets(g.clone(), &h);
        assert_eq!(x.size(), 3);
        assert_eq!(x.orbits().len(), 1);
        let inc = g.subgroup_as_group("C2", &h).unwrap();
        assert!(inc.is_injective());
        assert_eq!(inc.source().order(), 2);
    }
}
