use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::DirectedGradedCategory;

/// Degree criterion for the vanishing of all higher products.
///
/// For every chain `X₀ < … < X_d` (`d ≥ 3`) with nonzero consecutive homs and
/// every choice of basis degrees along it, `hom(X₀, X_d)` must vanish in
/// degree `Σ degrees + 2 − d`. Reachable degree sums are propagated chain
/// length by chain length instead of enumerating chains.
pub fn formality_check(c: &DirectedGradedCategory) -> bool {
    let n = c.object_count();
    // step degrees available between x < y
    let step: Vec<Vec<BTreeSet<i64>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    if y <= x {
                        BTreeSet::new()
                    } else {
                        c.hom(x, y)
                            .iter()
                            .map(|&id| c.morphism(id).degree)
                            .collect()
                    }
                })
                .collect()
        })
        .collect();

    for start in 0..n {
        // reach[y] = degree sums of chains start < … < y with `len` steps
        let mut reach: Vec<BTreeSet<i64>> = step[start].clone();
        let mut len = 1usize;
        while reach.iter().any(|s| !s.is_empty()) {
            let mut next: Vec<BTreeSet<i64>> = alloc::vec![BTreeSet::new(); n];
            for y in 0..n {
                if reach[y].is_empty() {
                    continue;
                }
                for z in y + 1..n {
                    for &d in &step[y][z] {
                        for &s in &reach[y] {
                            next[z].insert(s + d);
                        }
                    }
                }
            }
            len += 1;
            if len >= 3 {
                for (z, sums) in next.iter().enumerate() {
                    let target = c.hom_dims(start, z);
                    for &s in sums {
                        if target.contains_key(&(s + 2 - len as i64)) {
                            return false;
                        }
                    }
                }
            }
            reach = next;
        }
    }
    true
}
