//! Files bundled into the binary. A path on the command line that does not
//! exist on disk is looked up here by its trailing components.

pub const FILES: &[(&str, &str)] = &[
    ("categories/discrete2.cat", include_str!("../corpus/categories/discrete2.cat")),
    ("categories/idempotent.cat", include_str!("../corpus/categories/idempotent.cat")),
    ("categories/parallel-pair.cat", include_str!("../corpus/categories/parallel-pair.cat")),
    ("categories/reflexive-pair.cat", include_str!("../corpus/categories/reflexive-pair.cat")),
    ("categories/span.cat", include_str!("../corpus/categories/span.cat")),
    ("categories/terminal.cat", include_str!("../corpus/categories/terminal.cat")),
    ("categories/walking-arrow.cat", include_str!("../corpus/categories/walking-arrow.cat")),
    ("categories/z2.cat", include_str!("../corpus/categories/z2.cat")),
    ("monads/identity3.monad", include_str!("../corpus/monads/identity3.monad")),
    ("monads/maybe3.monad", include_str!("../corpus/monads/maybe3.monad")),
    ("structures/constant.str", include_str!("../corpus/structures/constant.str")),
    ("structures/swap.str", include_str!("../corpus/structures/swap.str")),
    ("theories/involution.thy", include_str!("../corpus/theories/involution.thy")),
    ("theories/pointed-set.thy", include_str!("../corpus/theories/pointed-set.thy")),
    ("theories/two-equal-constants.thy", include_str!("../corpus/theories/two-equal-constants.thy")),
    ("theories/unary.thy", include_str!("../corpus/theories/unary.thy")),
    ("weights/discrete2-pair.psh", include_str!("../corpus/weights/discrete2-pair.psh")),
    ("weights/discrete2-point.psh", include_str!("../corpus/weights/discrete2-point.psh")),
    ("weights/discrete2-terminal.psh", include_str!("../corpus/weights/discrete2-terminal.psh")),
    ("weights/idempotent-terminal.psh", include_str!("../corpus/weights/idempotent-terminal.psh")),
    ("weights/parallel-pair-terminal.psh", include_str!("../corpus/weights/parallel-pair-terminal.psh")),
    ("weights/reflexive-pair-terminal.psh", include_str!("../corpus/weights/reflexive-pair-terminal.psh")),
    ("weights/span-diagram.psh", include_str!("../corpus/weights/span-diagram.psh")),
    ("weights/span-terminal.psh", include_str!("../corpus/weights/span-terminal.psh")),
    ("weights/terminal-terminal.psh", include_str!("../corpus/weights/terminal-terminal.psh")),
    ("weights/walking-arrow-terminal.psh", include_str!("../corpus/weights/walking-arrow-terminal.psh")),
    ("weights/z2-terminal.psh", include_str!("../corpus/weights/z2-terminal.psh")),
];

/// Finds a bundled file whose path ends with the components of `path`
/// (e.g. `examples/discrete2.cat` finds `categories/discrete2.cat`).
pub fn lookup(path: &str) -> Option<(&'static str, &'static str)> {
    let name = path.rsplit(['/', '\\']).next()?;
    let exact = FILES.iter().find(|(p, _)| path.ends_with(p));
    exact
        .or_else(|| FILES.iter().find(|(p, _)| p.rsplit('/').next() == Some(name)))
        .copied()
}

pub fn get(path: &str) -> &'static str {
    FILES
        .iter()
        .find(|(p, _)| *p == path)
        .map(|(_, s)| *s)
        .unwrap_or_else(|| panic!("no bundled file {path}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_by_suffix() {
        assert_eq!(lookup("examples/discrete2.cat").unwrap().0, "categories/discrete2.cat");
        assert_eq!(lookup("theories/involution.thy").unwrap().0, "theories/involution.thy");
        assert!(lookup("nowhere.cat").is_none());
    }
}
