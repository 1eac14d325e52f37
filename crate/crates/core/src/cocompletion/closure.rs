use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::{colimit_of_presheaves, ColimitExpression};
use crate::doctrine::{DoctrineError, ShapeClass};
use crate::fincat::{find_isomorphism, skeleton, FinCategory, ObjId};
use crate::par::{self, Parallelism};
use crate::presheaf::enumerate::{plan, Plan};
use crate::presheaf::{invariant_key, natural_transformations, presheaf_iso, SetFunctor, Variance};

type Nat = Vec<Vec<usize>>;

#[derive(Clone, Debug)]
pub struct ClosureMember {
    pub presheaf: SetFunctor,
    pub expression: Arc<ColimitExpression>,
    /// First stage at which the class appeared.
    pub stage: usize,
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub members: Vec<ClosureMember>,
    /// Number of classes present after each stage.
    pub stage_sizes: Vec<usize>,
    pub diagrams_tested: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct ClosureConfig {
    pub depth: usize,
    pub value_bound: usize,
    /// Cap on diagrams evaluated over all stages.
    pub budget: u64,
    pub parallelism: Parallelism,
    /// Skip diagrams that differ from an enumerated one by automorphisms
    /// of the vertices or a permutation of coproduct summands.
    pub reduce_symmetry: bool,
}

impl ClosureConfig {
    pub fn new(depth: usize, value_bound: usize) -> Self {
        ClosureConfig {
            depth,
            value_bound,
            budget: 5_000_000,
            parallelism: Parallelism::default(),
            reduce_symmetry: true,
        }
    }
}

/// Keeps one member per isomorphism class, the first in order.
#[derive(Default)]
struct Dedup {
    by_key: HashMap<Vec<usize>, Vec<usize>>,
}

impl Dedup {
    fn insert(&mut self, members: &[ClosureMember], p: &SetFunctor) -> bool {
        let key = invariant_key(p);
        let bucket = self.by_key.entry(key).or_default();
        if bucket
            .iter()
            .any(|&i| presheaf_iso(&members[i].presheaf, p).expect("same base").is_some())
        {
            return false;
        }
        bucket.push(members.len());
        true
    }
}

/// Representables, then `depth` rounds of adding colimits of diagrams
/// (over the shapes of `class`) valued in the previous stage. Presheaves
/// with a carrier above the value bound are discarded. One member per
/// isomorphism class.
pub fn bounded_closure(c: &Arc<FinCategory>, class: &ShapeClass, cfg: &ClosureConfig) -> Result<Closure, DoctrineError> {
    let mut members: Vec<ClosureMember> = Vec::new();
    let mut dedup = Dedup::default();
    for o in 0..c.num_objects() {
        let y = SetFunctor::representable(c.clone(), o);
        if y.carriers().iter().any(|&n| n > cfg.value_bound) {
            continue;
        }
        if dedup.insert(&members, &y) {
            members.push(ClosureMember {
                presheaf: y,
                expression: Arc::new(ColimitExpression::Representable(o)),
                stage: 0,
            });
        }
    }
    let mut stage_sizes = vec![members.len()];
    let shapes = effective_shapes(&class.shapes());
    let counter = AtomicU64::new(0);
    // diagrams valued entirely in stage n - 2 were expanded already
    let mut fresh = 0;
    for stage in 1..=cfg.depth {
        let prev = members.len();
        let nats = transformation_table(&members[..prev], cfg.parallelism);
        let auts: Vec<Vec<Nat>> = (0..prev)
            .map(|i| {
                nats[i][i]
                    .iter()
                    .filter(|a| a.iter().all(|c| is_permutation(c)))
                    .cloned()
                    .collect()
            })
            .collect();
        for (_, shape) in &shapes {
            let found = expand(c, shape, &members[..prev], &nats, &auts, fresh, cfg, &counter)?;
            for (p, expr) in found {
                if dedup.insert(&members, &p) {
                    members.push(ClosureMember {
                        presheaf: p,
                        expression: Arc::new(expr),
                        stage,
                    });
                }
            }
        }
        stage_sizes.push(members.len());
        fresh = prev;
        if members.len() == prev {
            // saturated; later stages add nothing
            stage_sizes.resize(cfg.depth + 1, prev);
            break;
        }
    }
    Ok(Closure {
        members,
        stage_sizes,
        diagrams_tested: counter.load(Ordering::Relaxed),
    })
}

fn transformation_table(members: &[ClosureMember], mode: Parallelism) -> Vec<Vec<Arc<Vec<Nat>>>> {
    let idx: Vec<usize> = (0..members.len()).collect();
    par::map(mode, &idx, |&i| {
        members
            .iter()
            .map(|q| Arc::new(natural_transformations(&members[i].presheaf, &q.presheaf, usize::MAX).unwrap()))
            .collect()
    })
}

fn compose(beta: &Nat, alpha: &Nat) -> Nat {
    alpha
        .iter()
        .zip(beta)
        .map(|(a, b)| a.iter().map(|&x| b[x]).collect())
        .collect()
}

fn is_permutation(xs: &[usize]) -> bool {
    let mut seen = vec![false; xs.len()];
    xs.iter().all(|&x| x < xs.len() && !std::mem::replace(&mut seen[x], true))
}

fn inverse(g: &Nat) -> Nat {
    g.iter()
        .map(|gc| {
            let mut inv = vec![0; gc.len()];
            for (x, &y) in gc.iter().enumerate() {
                inv[y] = x;
            }
            inv
        })
        .collect()
}

fn identity(p: &SetFunctor) -> Nat {
    p.carriers().iter().map(|&n| (0..n).collect()).collect()
}

/// How vertex automorphisms may normalize a branched edge `s → t`: an
/// endpoint not yet touched by a placed edge can be relabelled freely.
#[derive(Clone, Copy)]
enum Freedom {
    None,
    Post,
    Pre,
    Both,
    Conjugate,
}

fn freedoms(shape: &FinCategory, plan: &Plan) -> Vec<Freedom> {
    let mut touched = vec![false; shape.num_objects()];
    let mut out = Vec::new();
    for &m in &plan.order {
        let (s, t) = (shape.src(m), shape.tgt(m));
        out.push(match (touched[s], touched[t]) {
            (false, false) if s == t => Freedom::Conjugate,
            (false, false) => Freedom::Both,
            (true, false) => Freedom::Post,
            (false, true) => Freedom::Pre,
            (true, true) => Freedom::None,
        });
        touched[s] = true;
        touched[t] = true;
    }
    out
}

struct Search<'a> {
    shape: &'a FinCategory,
    plan: Plan,
    freedom: Vec<Freedom>,
    members: &'a [ClosureMember],
    nats: &'a [Vec<Arc<Vec<Nat>>>],
    /// Automorphisms of each member.
    auts: &'a [Vec<Nat>],
    /// Diagrams must use at least one member from here on.
    fresh: usize,
    discrete: bool,
}

impl Search<'_> {
    fn vertices(&self, i: usize, v: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize], &[Nat]) -> bool) -> bool {
        let ns = self.shape.num_objects();
        if i == ns {
            if v.iter().all(|&m| m < self.fresh) {
                return true;
            }
            let mut edges: Vec<Nat> = vec![Vec::new(); self.shape.num_morphisms()];
            for s in 0..ns {
                edges[self.shape.identity(s)] = identity(&self.members[v[s]].presheaf);
            }
            if !self.consistent(0, &edges) {
                return true;
            }
            return self.edges(0, v, &mut edges, visit);
        }
        // coproducts are symmetric in their summands
        let start = if self.discrete && i > 0 { v[i - 1] } else { 0 };
        for m in start..self.members.len() {
            v[i] = m;
            if !self.vertices(i + 1, v, visit) {
                return false;
            }
        }
        true
    }

    /// Whether `alpha` is least in its orbit under the allowed relabellings.
    fn canonical(&self, freedom: Freedom, s: usize, t: usize, alpha: &Nat) -> bool {
        let (pre, post) = (&self.auts[s], &self.auts[t]);
        match freedom {
            Freedom::None => true,
            Freedom::Post => post.iter().all(|g| compose(g, alpha) >= *alpha),
            Freedom::Pre => pre.iter().all(|h| compose(alpha, h) >= *alpha),
            Freedom::Both => post
                .iter()
                .all(|g| pre.iter().all(|h| compose(g, &compose(alpha, h)) >= *alpha)),
            Freedom::Conjugate => post
                .iter()
                .all(|g| compose(g, &compose(alpha, &inverse(g))) >= *alpha),
        }
    }

    fn consistent(&self, step: usize, edges: &[Nat]) -> bool {
        self.plan.checks[step]
            .iter()
            .all(|&(a, b, h)| compose(&edges[b], &edges[a]) == edges[h])
    }

    fn edges(&self, k: usize, v: &[usize], edges: &mut Vec<Nat>, visit: &mut dyn FnMut(&[usize], &[Nat]) -> bool) -> bool {
        if k == self.plan.order.len() {
            return visit(v, edges);
        }
        let m = self.plan.order[k];
        if let Some((a, b)) = self.plan.forced[k] {
            edges[m] = compose(&edges[b], &edges[a]);
            return !self.consistent(k + 1, edges) || self.edges(k + 1, v, edges, visit);
        }
        let (s, t) = (v[self.shape.src(m)], v[self.shape.tgt(m)]);
        let cands = self.nats[s][t].clone();
        for alpha in cands.iter() {
            if !self.canonical(self.freedom[k], s, t, alpha) {
                continue;
            }
            edges[m] = alpha.clone();
            if self.consistent(k + 1, edges) && !self.edges(k + 1, v, edges, visit) {
                return false;
            }
        }
        true
    }
}

/// Shapes whose colimits can add something: skeletal representatives,
/// without those having a terminal object (their colimit is a value of the
/// diagram), one per isomorphism class.
pub fn effective_shapes(shapes: &[(String, Arc<FinCategory>)]) -> Vec<(String, Arc<FinCategory>)> {
    let mut out: Vec<(String, Arc<FinCategory>)> = Vec::new();
    for (name, s) in shapes {
        let sk = skeleton(s);
        if !sk.terminal_objects().is_empty() {
            continue;
        }
        if out
            .iter()
            .any(|(_, t)| t.num_morphisms() == sk.num_morphisms() && find_isomorphism(t, &sk).is_some())
        {
            continue;
        }
        out.push((name.clone(), Arc::new(sk)));
    }
    out
}

/// Colimits of all diagrams `shape → members` within the value bound,
/// deduplicated up to isomorphism, in enumeration order.
fn expand(
    c: &Arc<FinCategory>,
    shape: &Arc<FinCategory>,
    members: &[ClosureMember],
    nats: &[Vec<Arc<Vec<Nat>>>],
    auts: &[Vec<Nat>],
    fresh: usize,
    cfg: &ClosureConfig,
    counter: &AtomicU64,
) -> Result<Vec<(SetFunctor, ColimitExpression)>, DoctrineError> {
    let plan = plan(shape, Variance::Covariant);
    let search = Search {
        shape,
        freedom: if cfg.reduce_symmetry {
            freedoms(shape, &plan)
        } else {
            vec![Freedom::None; plan.order.len()]
        },
        plan,
        members,
        nats,
        auts,
        fresh,
        discrete: cfg.reduce_symmetry && shape.num_morphisms() == shape.num_objects(),
    };
    let ns = shape.num_objects();
    let evaluate = |v: &[usize], edges: &[Nat]| {
        let values: Vec<SetFunctor> = v.iter().map(|&i| members[i].presheaf.clone()).collect();
        // pointwise edge components indexed [m][c][x]
        colimit_of_presheaves(c, shape, &values, edges)
    };
    let make_expr = |v: &[usize], edges: &[Nat]| ColimitExpression::Colim {
        shape: shape.clone(),
        vertices: v.iter().map(|&i| members[i].expression.clone()).collect(),
        edges: edges.to_vec(),
    };
    let over_bound = |p: &SetFunctor| p.carriers().iter().any(|&n| n > cfg.value_bound);
    if ns == 0 {
        if fresh > 0 {
            return Ok(vec![]);
        }
        counter.fetch_add(1, Ordering::Relaxed);
        let p = evaluate(&[], &[]);
        return Ok(if over_bound(&p) { vec![] } else { vec![(p, make_expr(&[], &[]))] });
    }
    let firsts: Vec<ObjId> = (0..members.len()).collect();
    let chunks = par::map(cfg.parallelism, &firsts, |&first| -> Result<Vec<(SetFunctor, ColimitExpression)>, DoctrineError> {
        let mut local: Vec<(SetFunctor, ColimitExpression)> = Vec::new();
        let mut keys: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        let mut v = vec![0; ns];
        v[0] = first;
        let mut exceeded = false;
        search.vertices(1, &mut v, &mut |v, edges| {
            if counter.fetch_add(1, Ordering::Relaxed) >= cfg.budget {
                exceeded = true;
                return false;
            }
            let p = evaluate(v, edges);
            if over_bound(&p) {
                return true;
            }
            let bucket = keys.entry(invariant_key(&p)).or_default();
            if bucket.iter().any(|&i| presheaf_iso(&local[i].0, &p).unwrap().is_some()) {
                return true;
            }
            bucket.push(local.len());
            local.push((p, make_expr(v, edges)));
            true
        });
        if exceeded {
            return Err(DoctrineError::BudgetExceeded {
                budget: cfg.budget,
                checked: counter.load(Ordering::Relaxed),
            });
        }
        Ok(local)
    });
    let mut out = Vec::new();
    for chunk in chunks {
        out.extend(chunk?);
    }
    Ok(out)
}

/// Whether some member is isomorphic to `p`.
pub fn closure_contains(closure: &Closure, p: &SetFunctor) -> bool {
    let key = invariant_key(p);
    closure
        .members
        .iter()
        .any(|m| invariant_key(&m.presheaf) == key && presheaf_iso(&m.presheaf, p).unwrap().is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::families;

    fn sizes(cl: &Closure) -> Vec<usize> {
        let mut s: Vec<usize> = cl.members.iter().map(|m| m.presheaf.carrier(0)).collect();
        s.sort();
        s
    }

    #[test]
    fn sets_from_points() {
        let one = Arc::new(families::terminal());
        let cl = bounded_closure(&one, &ShapeClass::FiniteDiscrete(3), &ClosureConfig::new(1, 3)).unwrap();
        assert_eq!(sizes(&cl), vec![0, 1, 2, 3]);
        let cl = bounded_closure(&one, &ShapeClass::AllFinite(3), &ClosureConfig::new(2, 3)).unwrap();
        assert_eq!(sizes(&cl), vec![0, 1, 2, 3]);
    }

    #[test]
    fn depth_zero_is_representables() {
        for (_, c) in families::curated() {
            let c = Arc::new(c);
            let cl = bounded_closure(&c, &ShapeClass::AllFinite(2), &ClosureConfig::new(0, 8)).unwrap();
            assert!(cl.members.iter().all(|m| matches!(*m.expression, ColimitExpression::Representable(_))));
            assert!(cl.members.len() <= c.num_objects());
        }
    }

    #[test]
    fn symmetry_reduction_loses_nothing() {
        for (c, class) in [
            (families::walking_arrow(), ShapeClass::AllFinite(2)),
            (families::cyclic_group(2), ShapeClass::AllFinite(3)),
            (families::idempotent_monoid(), ShapeClass::FiniteConnected(3)),
        ] {
            let c = Arc::new(c);
            let fast = bounded_closure(&c, &class, &ClosureConfig::new(2, 3)).unwrap();
            let slow_cfg = ClosureConfig {
                reduce_symmetry: false,
                ..ClosureConfig::new(2, 3)
            };
            let slow = bounded_closure(&c, &class, &slow_cfg).unwrap();
            assert_eq!(fast.members.len(), slow.members.len());
            assert!(slow.members.iter().all(|m| closure_contains(&fast, &m.presheaf)));
            assert!(fast.diagrams_tested <= slow.diagrams_tested);
        }
    }

    #[test]
    fn provenance_evaluates_to_member() {
        let c = Arc::new(families::walking_arrow());
        let cl = bounded_closure(&c, &ShapeClass::AllFinite(2), &ClosureConfig::new(2, 3)).unwrap();
        for m in &cl.members {
            let e = m.expression.evaluate(&c);
            assert!(presheaf_iso(&e, &m.presheaf).unwrap().is_some());
            assert!(m.expression.depth() <= m.stage);
        }
    }
}
