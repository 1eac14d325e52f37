use super::Verdict;
use crate::fincat::{FinCategory, ObjId};
use crate::UnionFind;

/// Nonempty, every pair of objects has a cospan, every parallel pair is
/// coequalized by some morphism.
pub fn is_filtered(c: &FinCategory) -> Verdict {
    if c.is_empty() {
        return Verdict::decided(false, "empty", "the empty category is not filtered");
    }
    let n = c.num_objects();
    for a in 0..n {
        for b in a + 1..n {
            let cospan = (0..n).any(|d| !c.hom(a, d).is_empty() && !c.hom(b, d).is_empty());
            if !cospan {
                return Verdict::decided(
                    false,
                    "no-cospan",
                    format!("no cospan on ({}, {})", c.object_name(a), c.object_name(b)),
                );
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let hom = c.hom(a, b);
            for (i, &f) in hom.iter().enumerate() {
                for &g in &hom[i + 1..] {
                    if !c.out_of(b).any(|h| c.comp(h, f) == c.comp(h, g)) {
                        return Verdict::decided(
                            false,
                            "not-coequalized",
                            format!("({}, {}) is never coequalized", c.morphism_name(f), c.morphism_name(g)),
                        );
                    }
                }
            }
        }
    }
    Verdict::decided(true, "filtered", "cospans and coequalizing arrows exist")
}

/// Nonempty, and for every pair `(a, b)` the category of cospans out of
/// `(a, b)` is nonempty and connected.
pub fn is_sifted(c: &FinCategory) -> Verdict {
    if c.is_empty() {
        return Verdict::decided(false, "empty", "the empty category is not sifted");
    }
    let n = c.num_objects();
    for a in 0..n {
        for b in a..n {
            if let Some(reason) = cospans_fail(c, a, b) {
                return Verdict::decided(
                    false,
                    "cospans-disconnected",
                    format!("cospans on ({}, {}) {reason}", c.object_name(a), c.object_name(b)),
                );
            }
        }
    }
    Verdict::decided(true, "sifted", "all cospan categories are connected")
}

fn cospans_fail(c: &FinCategory, a: ObjId, b: ObjId) -> Option<&'static str> {
    let mut cospans = Vec::new();
    for d in 0..c.num_objects() {
        for &f in c.hom(a, d) {
            for &g in c.hom(b, d) {
                cospans.push((d, f, g));
            }
        }
    }
    if cospans.is_empty() {
        return Some("do not exist");
    }
    let mut uf = UnionFind::new(cospans.len());
    for (i, &(d, f, g)) in cospans.iter().enumerate() {
        for h in c.out_of(d) {
            let image = (c.tgt(h), c.comp(h, f), c.comp(h, g));
            let j = cospans.iter().position(|&x| x == image).unwrap();
            uf.union(i, j);
        }
    }
    (uf.classes().1 != 1).then_some("form more than one component")
}

pub fn is_connected(c: &FinCategory) -> Verdict {
    match c.connected_components().len() {
        1 => Verdict::decided(true, "connected", "one connected component"),
        0 => Verdict::decided(false, "empty", "the empty category has no components"),
        k => Verdict::decided(false, "disconnected", format!("{k} connected components")),
    }
}

/// Every connected component is filtered (vacuous for the empty category).
pub fn components_filtered(c: &FinCategory) -> Verdict {
    for comp in c.connected_components() {
        let (sub, _) = c.full_subcategory(&comp);
        if let Verdict::Decided { value: false, certificate } = is_filtered(&sub) {
            return Verdict::decided(
                false,
                "component-not-filtered",
                format!("component containing {}: {}", c.object_name(comp[0]), certificate.detail),
            );
        }
    }
    Verdict::decided(true, "components-filtered", "every component is filtered")
}

/// `p(c)` or `c` is empty.
pub fn or_empty(c: &FinCategory, p: fn(&FinCategory) -> Verdict) -> Verdict {
    if c.is_empty() {
        Verdict::decided(true, "empty", "the empty category")
    } else {
        p(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::families;

    #[test]
    fn filtered_examples() {
        assert!(is_filtered(&families::chain(3)).leaning());
        assert!(is_filtered(&families::cospan()).leaning());
        assert!(is_filtered(&families::coequalized_pair()).leaning());
        assert!(!is_filtered(&families::discrete(2)).leaning());
        assert!(!is_filtered(&families::parallel_pair()).leaning());
        assert!(!is_filtered(&families::span()).leaning());
        assert!(!is_filtered(&families::empty()).leaning());
        // a group is not filtered unless trivial
        assert!(!is_filtered(&families::cyclic_group(2)).leaning());
        assert!(is_filtered(&families::idempotent_monoid()).leaning());
    }

    #[test]
    fn sifted_examples() {
        assert!(is_sifted(&families::reflexive_pair()).leaning());
        assert!(!is_sifted(&families::discrete(2)).leaning());
        assert!(!is_sifted(&families::parallel_pair()).leaning());
        assert!(is_sifted(&families::chain(3)).leaning());
        // binary coproducts: the poset of subsets of {0, 1}
        let subsets = families::preorder(
            vec!["0".into(), "x".into(), "y".into(), "xy".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        );
        assert!(is_sifted(&subsets).leaning());
    }

    #[test]
    fn filtered_implies_sifted() {
        for (name, c) in families::curated() {
            if is_filtered(&c).leaning() {
                assert!(is_sifted(&c).leaning(), "{name}");
            }
        }
    }
}
