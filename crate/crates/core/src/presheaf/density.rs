use std::sync::Arc;

use super::{category_of_elements, PresheafError, SetFunctor};
use crate::cocompletion::ColimitExpression;

/// `P` as the colimit over `El(P)^op` of the representables `y(c)`, one
/// per element `(c, x)`.
pub fn density_presentation(p: &SetFunctor) -> Result<ColimitExpression, PresheafError> {
    let el = category_of_elements(p)?;
    let c = p.base();
    let shape = Arc::new(el.total.opposite());
    let vertices = el
        .elements
        .iter()
        .map(|&(o, _)| Arc::new(ColimitExpression::Representable(o)))
        .collect();
    // the El^op morphism over f: c' → c is y(f): y(c') → y(c)
    let edges = el
        .underlying
        .iter()
        .map(|&f| {
            (0..c.num_objects())
                .map(|d| {
                    c.hom(d, c.src(f))
                        .iter()
                        .map(|&h| {
                            let fh = c.comp(f, h);
                            c.hom(d, c.tgt(f)).iter().position(|&k| k == fh).unwrap()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(ColimitExpression::Colim {
        shape,
        vertices,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::fincat::families;
    use crate::presheaf::{presheaf_iso, random_functor, Variance};

    #[test]
    fn representables_and_empty() {
        let c = Arc::new(families::reflexive_pair());
        for o in 0..c.num_objects() {
            let y = SetFunctor::representable(c.clone(), o);
            let e = density_presentation(&y).unwrap();
            if let ColimitExpression::Colim { shape, .. } = &e {
                assert!(!shape.terminal_objects().is_empty());
            }
            assert!(presheaf_iso(&e.evaluate(&c), &y).unwrap().is_some());
        }
        let empty = SetFunctor::empty(c.clone(), Variance::Contravariant);
        let e = density_presentation(&empty).unwrap();
        match &e {
            ColimitExpression::Colim { shape, .. } => assert!(shape.is_empty()),
            _ => panic!(),
        }
        assert_eq!(e.evaluate(&c), empty);
    }

    #[test]
    fn random_presheaves() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (name, c) in families::curated() {
            let c = Arc::new(c);
            for _ in 0..3 {
                let Some(p) = random_functor(&c, Variance::Contravariant, 6, &mut rng, 50) else {
                    continue;
                };
                let e = density_presentation(&p).unwrap();
                assert!(presheaf_iso(&e.evaluate(&c), &p).unwrap().is_some(), "{name}");
            }
        }
    }
}
