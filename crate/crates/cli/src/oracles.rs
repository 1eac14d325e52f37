//! Brute-force recounts that share no code with the library routines they
//! check.

use flatlab_core::presheaf::SetFunctor;

/// Functions `f: n → n` with `f(f(x)) = x`, by listing all `n^n` tables.
pub fn involution_count(n: usize) -> usize {
    let mut f = vec![0; n];
    let mut count = 0;
    loop {
        if (0..n).all(|x| f[f[x]] == x) {
            count += 1;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            f[i] += 1;
            if f[i] < n {
                break;
            }
            f[i] = 0;
        }
    }
}

/// Quotient of `{0..n}` by the equivalence generated by `pairs`, by
/// relaxing labels to the least reachable element. Classes are numbered
/// in order of their least element.
pub fn quotient(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in pairs {
            let m = label[a].min(label[b]);
            if label[a] != m || label[b] != m {
                label[a] = m;
                label[b] = m;
                changed = true;
            }
        }
    }
    let mut seen: Vec<usize> = Vec::new();
    label
        .iter()
        .map(|l| match seen.iter().position(|s| s == l) {
            Some(i) => i,
            None => {
                seen.push(*l);
                seen.len() - 1
            }
        })
        .collect()
}

/// Colimit of finite sets `sizes[i]` along maps `(from, to, table)`, as
/// the class of each element in object-major order.
pub fn set_colimit(sizes: &[usize], arrows: &[(usize, usize, Vec<usize>)]) -> Vec<usize> {
    let offset: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let total = sizes.iter().sum();
    let mut pairs = Vec::new();
    for (from, to, t) in arrows {
        for (x, &y) in t.iter().enumerate() {
            pairs.push((offset[*from] + x, offset[*to] + y));
        }
    }
    quotient(total, &pairs)
}

/// Families `(x_c)` with `F(f)(x_src) = x_tgt` for every morphism of a
/// covariant diagram, by listing the whole product.
pub fn compatible_families(f: &SetFunctor) -> usize {
    let c = f.base();
    let n = c.num_objects();
    if (0..n).any(|o| f.carrier(o) == 0) {
        return usize::from(n == 0);
    }
    let mut x = vec![0; n];
    let mut count = 0;
    loop {
        if (0..c.num_morphisms()).all(|m| f.apply(m, x[c.src(m)]) == x[c.tgt(m)]) {
            count += 1;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            x[i] += 1;
            if x[i] < f.carrier(i) {
                break;
            }
            x[i] = 0;
        }
    }
}

/// Number of connected classes of the elements of a covariant diagram.
pub fn colimit_size(f: &SetFunctor) -> usize {
    let c = f.base();
    let sizes: Vec<usize> = (0..c.num_objects()).map(|o| f.carrier(o)).collect();
    let arrows: Vec<(usize, usize, Vec<usize>)> =
        (0..c.num_morphisms()).map(|m| (c.src(m), c.tgt(m), f.action(m).to_vec())).collect();
    let classes = set_colimit(&sizes, &arrows);
    classes.iter().max().map_or(0, |m| m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involutions() {
        // 1, 1, 2, 4, 10, 26: telephone numbers
        let counts: Vec<usize> = (0..=5).map(involution_count).collect();
        assert_eq!(counts, [1, 1, 2, 4, 10, 26]);
    }

    #[test]
    fn quotients() {
        assert_eq!(quotient(4, &[(3, 1)]), [0, 1, 2, 1]);
        assert_eq!(set_colimit(&[2, 2], &[(0, 1, vec![1, 1])]), [0, 0, 1, 0]);
    }
}
