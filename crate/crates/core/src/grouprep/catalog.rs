//! Built-in groups of order at most 16.

use super::group::FiniteGroup;

fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group of order 0");
    FiniteGroup::from_permutations(format!("C{n}"), &[cycle(n)]).expect("cyclic group")
}

/// Symmetries of the regular `n`-gon, order `2n`; generators rotation then reflection.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 3, "dihedral group needs n >= 3");
    let reflection = (0..n).map(|i| (n - i) % n).collect();
    FiniteGroup::from_permutations(format!("D{n}"), &[cycle(n), reflection]).expect("dihedral group")
}

/// `S3` generated by a transposition and a 3-cycle.
pub fn symmetric3() -> FiniteGroup {
    FiniteGroup::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
}

pub fn alternating4() -> FiniteGroup {
    FiniteGroup::from_permutations("A4", &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).expect("A4")
}

pub fn klein_four() -> FiniteGroup {
    FiniteGroup::from_permutations("V4", &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).expect("V4")
}

/// Quaternion group; elements `±1, ±i, ±j, ±k` indexed as `sign * 4 + unit`.
pub fn quaternion() -> FiniteGroup {
    // unit products: (a, b) -> (sign flip, unit) for units 1, i, j, k
    const PROD: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let table = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (flip, u) = PROD[a % 4][b % 4];
                    let neg = (a >= 4) ^ (b >= 4) ^ flip;
                    u + if neg { 4 } else { 0 }
                })
                .collect()
        })
        .collect();
    FiniteGroup::new("Q8", table, vec![1, 2]).expect("Q8")
}

/// Direct product with elements `(a, b)` indexed `a * |B| + b`.
pub fn direct_product(name: &str, a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let nb = b.order();
    let n = a.order() * nb;
    let table = (0..n)
        .map(|x| (0..n).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
        .collect();
    let mut gens: Vec<usize> = a.generators().iter().map(|&g| g * nb + b.identity()).collect();
    gens.extend(b.generators().iter().map(|&h| a.identity() * nb + h));
    FiniteGroup::new(name, table, gens).expect("direct product")
}

/// The catalog used by the property suites.
pub fn catalog() -> Vec<FiniteGroup> {
    let c2 = cyclic(2);
    vec![
        cyclic(1),
        c2.clone(),
        cyclic(3),
        cyclic(4),
        cyclic(5),
        cyclic(6),
        cyclic(8),
        klein_four(),
        direct_product("C2xC4", &c2, &cyclic(4)),
        direct_product("C2xC2xC2", &c2, &klein_four()),
        symmetric3(),
        dihedral(4),
        quaternion(),
        dihedral(5),
        dihedral(6),
        alternating4(),
        dihedral(8),
    ]
}

pub fn by_name(name: &str) -> Option<FiniteGroup> {
    if name == "S3" {
        return Some(symmetric3());
    }
    catalog().into_iter().find(|g| g.name() == name).or_else(|| {
        let n: usize = name.strip_prefix('C')?.parse().ok()?;
        (1..=64).contains(&n).then(|| cyclic(n))
    })
}
