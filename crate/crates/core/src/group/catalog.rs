use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::FiniteGroup;

/// Cyclic group `C_n` with element `k` standing for `a^k`.
pub fn cyclic(n: usize) -> FiniteGroup {
    let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteGroup::validate(&format!("C{n}"), &rows).expect("cyclic table")
}

/// Group of order `2n` on `a^i b^j` (index `i + n j`), with `b a b^{-1} = a^r`
/// and `b^2 = a^t`.
pub fn metacyclic(name: &str, n: usize, r: usize, t: usize) -> FiniteGroup {
    let pow_r = |j: usize| if j == 0 { 1 } else { r };
    let mul = |x: usize, y: usize| -> usize {
        let (i, j) = (x % n, x / n);
        let (k, l) = (y % n, y / n);
        let mut a = i + pow_r(j) * k;
        let mut b = j + l;
        if b == 2 {
            a += t;
            b = 0;
        }
        a % n + n * b
    };
    let rows: Vec<Vec<usize>> = (0..2 * n).map(|x| (0..2 * n).map(|y| mul(x, y)).collect()).collect();
    FiniteGroup::validate(name, &rows).expect("metacyclic parameters must define a group")
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(&format!("D{n}"), n, n - 1, 0)
}

/// Quaternion group; elements `1, i, -1, -i, j, k, -j, -k`.
pub fn quaternion8() -> FiniteGroup {
    metacyclic("Q8", 4, 3, 2)
}

/// Semidihedral group of order 16: `b a b^{-1} = a^3`.
pub fn semidihedral16() -> FiniteGroup {
    metacyclic("SD16", 8, 3, 0)
}

/// Closure of the given permutations (images of `0..m`), composed right to left.
/// The identity is element 0 and the remaining order is breadth-first.
pub fn from_permutations(name: &str, gens: &[Vec<usize>]) -> FiniteGroup {
    let m = gens[0].len();
    let id: Vec<usize> = (0..m).collect();
    let compose = |s: &[usize], t: &[usize]| -> Vec<usize> { t.iter().map(|&x| s[x]).collect() };
    let mut elems = vec![id.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&elems[x], g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elems.len());
                queue.push_back(elems.len());
                elems.push(y);
            }
        }
    }
    let rows: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
        .collect();
    FiniteGroup::validate(name, &rows).expect("permutation closure is a group")
}

pub fn symmetric(m: usize) -> FiniteGroup {
    let mut cycle: Vec<usize> = (1..m).collect();
    cycle.push(0);
    let mut swap: Vec<usize> = (0..m).collect();
    swap.swap(0, 1);
    from_permutations(&format!("S{m}"), &[swap, cycle])
}

pub fn alternating4() -> FiniteGroup {
    from_permutations("A4", &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

pub fn klein_four() -> FiniteGroup {
    from_permutations("V4", &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
}

/// The built-in battery: every index-2 pair of these groups is exercised.
pub fn battery() -> Vec<Arc<FiniteGroup>> {
    vec![
        Arc::new(cyclic(4)),
        Arc::new(quaternion8()),
        Arc::new(dihedral(4)),
        Arc::new(symmetric(3)),
        Arc::new(dihedral(6)),
        Arc::new(semidihedral16()),
        Arc::new(symmetric(4)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(quaternion8().order(), 8);
        assert_eq!(semidihedral16().order(), 16);
        assert_eq!(dihedral(6).order(), 12);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating4().order(), 12);
        assert_eq!(klein_four().order(), 4);
        assert!(klein_four().is_abelian());
        assert!(!quaternion8().is_abelian());
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion8();
        // i^2 = j^2 = -1, ij = k
        assert_eq!(q.mul(1, 1), 2);
        assert_eq!(q.mul(4, 4), 2);
        assert_eq!(q.mul(1, 4), 5);
        assert_eq!(q.mul(5, 5), 2);
    }
}
