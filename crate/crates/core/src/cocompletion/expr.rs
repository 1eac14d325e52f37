use std::sync::Arc;

use serde_json::{json, Value};

use crate::fincat::{FinCategory, ObjId};
use crate::presheaf::{colimit, SetFunctor, Variance};

/// A presheaf built from representables by iterated conical colimits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColimitExpression {
    Representable(ObjId),
    Colim {
        shape: Arc<FinCategory>,
        vertices: Vec<Arc<ColimitExpression>>,
        /// For each shape morphism `m: i → j`, a natural transformation
        /// `eval(vertices[i]) → eval(vertices[j])` as components
        /// `edges[m][c][x]`.
        edges: Vec<Vec<Vec<usize>>>,
    },
}

impl ColimitExpression {
    pub fn depth(&self) -> usize {
        match self {
            ColimitExpression::Representable(_) => 0,
            ColimitExpression::Colim { vertices, .. } => {
                1 + vertices.iter().map(|v| v.depth()).max().unwrap_or(0)
            }
        }
    }

    /// Evaluates bottom-up; colimits are computed pointwise.
    pub fn evaluate(&self, base: &Arc<FinCategory>) -> SetFunctor {
        match self {
            ColimitExpression::Representable(c) => SetFunctor::representable(base.clone(), *c),
            ColimitExpression::Colim {
                shape,
                vertices,
                edges,
            } => {
                let values: Vec<SetFunctor> = vertices.iter().map(|v| v.evaluate(base)).collect();
                colimit_of_presheaves(base, shape, &values, edges)
            }
        }
    }

    /// Nested structured form with names from `base`.
    pub fn to_json(&self, base: &FinCategory) -> Value {
        match self {
            ColimitExpression::Representable(c) => json!({ "representable": base.object_name(*c) }),
            ColimitExpression::Colim {
                shape,
                vertices,
                edges,
            } => json!({
                "colim": {
                    "shape": shape.to_raw(),
                    "vertices": vertices.iter().map(|v| v.to_json(base)).collect::<Vec<_>>(),
                    "edges": edges,
                }
            }),
        }
    }
}

/// Colimit in presheaves of a diagram `shape → [C^op, Set]` given by
/// values and transformation components.
pub fn colimit_of_presheaves(
    base: &Arc<FinCategory>,
    shape: &Arc<FinCategory>,
    values: &[SetFunctor],
    edges: &[Vec<Vec<usize>>],
) -> SetFunctor {
    let c = &**base;
    let pointwise: Vec<_> = (0..c.num_objects())
        .map(|o| {
            let carriers = values.iter().map(|v| v.carrier(o)).collect();
            let action = (0..shape.num_morphisms()).map(|m| edges[m][o].clone()).collect();
            colimit(&SetFunctor::new_unchecked(shape.clone(), Variance::Covariant, carriers, action))
        })
        .collect();
    let carriers: Vec<usize> = pointwise.iter().map(|p| p.size()).collect();
    let action = (0..c.num_morphisms())
        .map(|g| {
            // g: c' → c acts Q(c) → Q(c')
            let (from, to) = (c.tgt(g), c.src(g));
            pointwise[from]
                .representatives
                .iter()
                .map(|&(i, x)| pointwise[to].cocone.legs[i][values[i].apply(g, x)])
                .collect()
        })
        .collect();
    SetFunctor::new(base.clone(), Variance::Contravariant, carriers, action)
        .expect("pointwise colimit of presheaves is a presheaf")
}
