use crate::doctrine::{weighted_commutation_refute, DoctrineError, SearchConfig, ShapeClass, Verdict};
use crate::presheaf::{natural_transformations, PresheafError, SetFunctor, Variance};

/// `(c, section, retraction)` with components indexed `[object][element]`.
pub type Splitting = (usize, Vec<Vec<usize>>, Vec<Vec<usize>>);

/// A splitting `M → y(c) → M` of the identity.
pub fn retract_of_representable(m: &SetFunctor) -> Result<Option<Splitting>, PresheafError> {
    if m.variance() != Variance::Contravariant {
        return Err(PresheafError::WrongVariance {
            expected: Variance::Contravariant,
        });
    }
    let base = m.base();
    for c in 0..base.num_objects() {
        let y = SetFunctor::representable(base.clone(), c);
        let sections = natural_transformations(m, &y, usize::MAX)?;
        if sections.is_empty() {
            continue;
        }
        // by Yoneda, y(c) → M is an element of M(c)
        let retractions = natural_transformations(&y, m, usize::MAX)?;
        for s in &sections {
            for r in &retractions {
                let id = s
                    .iter()
                    .zip(r)
                    .all(|(sd, rd)| sd.iter().enumerate().all(|(x, &y)| rd[y] == x));
                if id {
                    return Ok(Some((c, s.clone(), r.clone())));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `M`-weighted colimits commute with all finite limits: decided by
/// a splitting through a representable, else searched for a failure among
/// the shapes of the bounded universe.
pub fn is_cauchy_weight(m: &SetFunctor, cfg: &SearchConfig) -> Result<Verdict, DoctrineError> {
    if let Some((c, _, _)) = retract_of_representable(m)? {
        return Ok(Verdict::decided(
            true,
            "retract-of-representable",
            format!("splits through y({})", m.base().object_name(c)),
        ));
    }
    let shapes = ShapeClass::AllFinite(cfg.shape_bound).shapes();
    weighted_commutation_refute(m.base(), Some(m), &shapes, cfg)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::families;

    #[test]
    fn representables_are_cauchy() {
        let c = Arc::new(families::reflexive_pair());
        for o in 0..2 {
            let y = SetFunctor::representable(c.clone(), o);
            assert_eq!(is_cauchy_weight(&y, &SearchConfig::default()).unwrap().label(), "decided-true");
        }
    }

    #[test]
    fn coproduct_weight_is_not() {
        let d2 = Arc::new(families::discrete(2));
        let m = SetFunctor::terminal(d2, Variance::Contravariant);
        let v = is_cauchy_weight(&m, &SearchConfig::default()).unwrap();
        assert!(v.is_refuted());
    }

    #[test]
    fn split_idempotent_image() {
        // the image of e on y(*) over the idempotent monoid {1, e} is a point
        let c = Arc::new(families::idempotent_monoid());
        let p = SetFunctor::terminal(c.clone(), Variance::Contravariant);
        let split = retract_of_representable(&p).unwrap();
        assert!(split.is_some());
        assert_eq!(is_cauchy_weight(&p, &SearchConfig::default()).unwrap().label(), "decided-true");
    }
}
