//! Bounded search for diagrams on which weighted colimits fail to commute
//! with limits of a given shape.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::{Bounds, CommutationWitness, ComparisonFailure, DoctrineError, SearchConfig, Verdict, Witness};
use crate::fincat::{FinCategory, ObjId};
use crate::par;
use crate::presheaf::enumerate::plan;
use crate::presheaf::{
    category_of_elements, functors_up_to_iso, limit, natural_transformations, weighted_colimit, SetFunctor,
    Variance,
};
use crate::UnionFind;

/// Components of a natural transformation, `alpha[c][x]`.
type Nat = Vec<Vec<usize>>;

/// `M * G` for covariant `G`: classes of pairs `(e, g)` with `e` an element
/// of `M` over `c` and `g ∈ G(c)`.
struct Tensor {
    class_of: Vec<Vec<usize>>,
    count: usize,
    reps: Vec<(usize, usize)>,
}

struct Rep {
    f: SetFunctor,
    tensor: Tensor,
}

/// Precomputed data for one weight `M` on a base `C` at a value bound.
pub struct Oracle {
    base: Arc<FinCategory>,
    weight: SetFunctor,
    conical: bool,
    /// Object of `C` under each element of `M`.
    elem_obj: Vec<ObjId>,
    /// `(from, to, f)`: `(from, g) ~ (to, G(f) g)`.
    links: Vec<(usize, usize, usize)>,
    reps: Vec<Rep>,
    value_bound: usize,
}

impl Oracle {
    /// `weight = None` means the terminal weight, i.e. conical colimits
    /// over `base`.
    pub fn new(base: &Arc<FinCategory>, weight: Option<&SetFunctor>, value_bound: usize) -> Result<Self, DoctrineError> {
        let conical = weight.is_none();
        let weight = match weight {
            Some(m) => m.clone(),
            None => SetFunctor::terminal(base.clone(), Variance::Contravariant),
        };
        let el = category_of_elements(&weight)?;
        let elem_obj: Vec<ObjId> = el.elements.iter().map(|&(o, _)| o).collect();
        let mut links = Vec::new();
        for (i, &f) in el.underlying.iter().enumerate() {
            if base.is_identity(f) {
                continue;
            }
            let mor = el.total.morphism(i);
            links.push((mor.tgt, mor.src, f));
        }
        let mut oracle = Oracle {
            base: base.clone(),
            weight,
            conical,
            elem_obj,
            links,
            reps: Vec::new(),
            value_bound,
        };
        oracle.reps = functors_up_to_iso(base, Variance::Covariant, value_bound)
            .into_iter()
            .map(|f| {
                let tensor = oracle.tensor(&f);
                Rep { f, tensor }
            })
            .collect();
        Ok(oracle)
    }

    pub fn num_reps(&self) -> usize {
        self.reps.len()
    }

    fn tensor(&self, g: &SetFunctor) -> Tensor {
        let ne = self.elem_obj.len();
        let mut offset = vec![0; ne + 1];
        for e in 0..ne {
            offset[e + 1] = offset[e] + g.carrier(self.elem_obj[e]);
        }
        let mut uf = UnionFind::new(offset[ne]);
        for &(from, to, f) in &self.links {
            for x in 0..g.carrier(self.elem_obj[from]) {
                uf.union(offset[from] + x, offset[to] + g.apply(f, x));
            }
        }
        let (cls, count) = uf.classes();
        let class_of: Vec<Vec<usize>> = (0..ne).map(|e| cls[offset[e]..offset[e + 1]].to_vec()).collect();
        let mut reps = vec![(usize::MAX, 0); count];
        for (e, row) in class_of.iter().enumerate() {
            for (x, &k) in row.iter().enumerate() {
                if reps[k].0 == usize::MAX {
                    reps[k] = (e, x);
                }
            }
        }
        Tensor { class_of, count, reps }
    }

    /// Searches diagrams `shape × C → Set` in canonical order. Returns the
    /// first failing one, or `None` when all pass.
    pub fn refute_shape(
        &self,
        shape_name: &str,
        shape: &Arc<FinCategory>,
        cfg: &SearchConfig,
        counter: &AtomicU64,
    ) -> Result<Option<CommutationWitness>, DoctrineError> {
        let info = ShapeInfo::new(shape);
        let k = shape.num_objects();
        let r = self.reps.len();
        let discrete = shape.num_morphisms() == k;
        let firsts: Vec<usize> = if k == 0 { vec![0] } else { (0..r).collect() };
        let found = par::find_map_first(cfg.parallelism, &firsts, |&first| {
            let mut tuple = vec![first; k];
            loop {
                if let Some(res) = self.search_tuple(&info, &tuple, cfg, counter) {
                    return Some(res);
                }
                // advance positions 1.. lexicographically
                let mut i = k;
                loop {
                    if i <= 1 {
                        return None;
                    }
                    i -= 1;
                    tuple[i] += 1;
                    if tuple[i] < r {
                        let start = tuple[i];
                        for t in tuple.iter_mut().skip(i + 1) {
                            *t = if discrete { start } else { 0 };
                        }
                        break;
                    }
                }
            }
        });
        match found {
            None => Ok(None),
            Some(Err(e)) => Err(e),
            Some(Ok((tuple, alphas))) => Ok(Some(self.witness(shape_name, shape, &tuple, &alphas))),
        }
    }

    /// Tries every choice of transformations over a fixed tuple of
    /// representatives.
    fn search_tuple(
        &self,
        info: &ShapeInfo,
        tuple: &[usize],
        cfg: &SearchConfig,
        counter: &AtomicU64,
    ) -> Option<Result<Found, DoctrineError>> {
        let shape = &*info.shape;
        let nc = self.base.num_objects();
        let mut alphas: Vec<Nat> = (0..shape.num_morphisms())
            .map(|m| {
                if shape.is_identity(m) {
                    let f = &self.reps[tuple[shape.src(m)]].f;
                    (0..nc).map(|c| (0..f.carrier(c)).collect()).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let mut choices: Vec<Vec<Nat>> = Vec::with_capacity(info.plan.order.len());
        for (i, &m) in info.plan.order.iter().enumerate() {
            if info.plan.forced[i].is_some() {
                choices.push(Vec::new());
            } else {
                let (p, q) = (&self.reps[tuple[shape.src(m)]].f, &self.reps[tuple[shape.tgt(m)]].f);
                let nats = natural_transformations(p, q, usize::MAX).unwrap();
                if nats.is_empty() {
                    return None;
                }
                choices.push(nats);
            }
        }
        let mut out = None;
        self.assign(info, &choices, 0, tuple, &mut alphas, cfg, counter, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        info: &ShapeInfo,
        choices: &[Vec<Nat>],
        step: usize,
        tuple: &[usize],
        alphas: &mut Vec<Nat>,
        cfg: &SearchConfig,
        counter: &AtomicU64,
        out: &mut Option<Result<Found, DoctrineError>>,
    ) -> bool {
        let nc = self.base.num_objects();
        if step == info.plan.order.len() {
            let n = counter.fetch_add(1, Ordering::Relaxed) + 1;
            if n > cfg.budget {
                *out = Some(Err(DoctrineError::BudgetExceeded {
                    budget: cfg.budget,
                    checked: n,
                }));
                return true;
            }
            if self.compare(info, tuple, alphas).is_some() {
                *out = Some(Ok((tuple.to_vec(), alphas.clone())));
                return true;
            }
            return false;
        }
        let consistent = |alphas: &Vec<Nat>| {
            info.plan.checks[step + 1].iter().all(|&(a, b, h)| {
                (0..nc).all(|c| (0..alphas[a][c].len()).all(|x| alphas[h][c][x] == alphas[b][c][alphas[a][c][x]]))
            })
        };
        let m = info.plan.order[step];
        if let Some((a, b)) = info.plan.forced[step] {
            let comp: Nat = (0..nc)
                .map(|c| alphas[a][c].iter().map(|&x| alphas[b][c][x]).collect())
                .collect();
            alphas[m] = comp;
            return consistent(alphas) && self.assign(info, choices, step + 1, tuple, alphas, cfg, counter, out);
        }
        for choice in &choices[step] {
            alphas[m] = choice.clone();
            if consistent(alphas) && self.assign(info, choices, step + 1, tuple, alphas, cfg, counter, out) {
                return true;
            }
        }
        false
    }

    /// Compares `M * lim F` with `lim (M * F)`; `Some` on failure with
    /// both sizes.
    fn compare(&self, info: &ShapeInfo, tuple: &[usize], alphas: &[Nat]) -> Option<(ComparisonFailure, usize, usize)> {
        let k = tuple.len();
        let nc = self.base.num_objects();
        let funcs: Vec<&SetFunctor> = tuple.iter().map(|&r| &self.reps[r].f).collect();
        let tens: Vec<&Tensor> = tuple.iter().map(|&r| &self.reps[r].tensor).collect();
        // families of lim F at each c, with mixed-radix lookup
        let mut fams: Vec<Vec<Vec<usize>>> = Vec::with_capacity(nc);
        let mut lookup: Vec<Vec<usize>> = Vec::with_capacity(nc);
        let mut radices: Vec<Vec<usize>> = Vec::with_capacity(nc);
        for c in 0..nc {
            let radix: Vec<usize> = funcs.iter().map(|f| f.carrier(c)).collect();
            let size: usize = radix.iter().product();
            let mut table = vec![usize::MAX; size];
            let mut list = Vec::new();
            let mut cur = vec![0usize; k];
            families(&radix, &info.closing, alphas, c, 0, &mut cur, &mut list);
            for (i, fam) in list.iter().enumerate() {
                table[encode(fam, &radix)] = i;
            }
            fams.push(list);
            lookup.push(table);
            radices.push(radix);
        }
        // M * lim F
        let ne = self.elem_obj.len();
        let mut offset = vec![0; ne + 1];
        for e in 0..ne {
            offset[e + 1] = offset[e] + fams[self.elem_obj[e]].len();
        }
        let mut uf = UnionFind::new(offset[ne]);
        let mut moved = vec![0usize; k];
        for &(from, to, f) in &self.links {
            let (cf, ct) = (self.elem_obj[from], self.elem_obj[to]);
            for (i, fam) in fams[cf].iter().enumerate() {
                for s in 0..k {
                    moved[s] = funcs[s].apply(f, fam[s]);
                }
                let j = lookup[ct][encode(&moved, &radices[ct])];
                uf.union(offset[from] + i, offset[to] + j);
            }
        }
        let (cls, lhs) = uf.classes();
        // lim (M * F)
        let counts: Vec<usize> = tens.iter().map(|t| t.count).collect();
        let induced: Vec<(usize, usize, Vec<usize>)> = info
            .morphisms
            .iter()
            .map(|&(m, s, t)| {
                let map = tens[s]
                    .reps
                    .iter()
                    .map(|&(e, x)| tens[t].class_of[e][alphas[m][self.elem_obj[e]][x]])
                    .collect();
                (s, t, map)
            })
            .collect();
        let rhs = count_compatible(&counts, &induced);
        let mut done = vec![false; lhs];
        let mut seen = std::collections::HashSet::new();
        for e in 0..ne {
            let c = self.elem_obj[e];
            for (i, fam) in fams[c].iter().enumerate() {
                let class = cls[offset[e] + i];
                if !done[class] {
                    done[class] = true;
                    let img: Vec<usize> = (0..k).map(|s| tens[s].class_of[e][fam[s]]).collect();
                    if !seen.insert(encode(&img, &counts)) {
                        return Some((ComparisonFailure::NotInjective, lhs, rhs));
                    }
                }
            }
        }
        (lhs != rhs).then_some((ComparisonFailure::NotSurjective, lhs, rhs))
    }

    /// Assembles `F: shape × C → Set` from representatives and
    /// transformations.
    fn bifunctor(&self, shape: &Arc<FinCategory>, tuple: &[usize], alphas: &[Nat]) -> SetFunctor {
        let c = &*self.base;
        let (nc, nmc) = (c.num_objects(), c.num_morphisms());
        let prod = Arc::new(shape.product(c));
        let carriers = (0..shape.num_objects())
            .flat_map(|s| (0..nc).map(move |o| (s, o)))
            .map(|(s, o)| self.reps[tuple[s]].f.carrier(o))
            .collect();
        let action = (0..shape.num_morphisms() * nmc)
            .map(|pm| {
                let (m, g) = (pm / nmc, pm % nmc);
                let f = &self.reps[tuple[shape.src(m)]].f;
                f.action(g).iter().map(|&x| alphas[m][c.tgt(g)][x]).collect()
            })
            .collect();
        SetFunctor::new(prod, Variance::Covariant, carriers, action).expect("assembled bifunctor is a functor")
    }

    fn witness(&self, shape_name: &str, shape: &Arc<FinCategory>, tuple: &[usize], alphas: &[Nat]) -> CommutationWitness {
        let info = ShapeInfo::new(shape);
        let (failure, lhs, rhs) = self.compare(&info, tuple, alphas).expect("witness fails");
        let f = self.bifunctor(shape, tuple, alphas);
        CommutationWitness {
            shape_name: shape_name.to_string(),
            shape: shape.to_raw(),
            base: self.base.to_raw(),
            weight: (!self.conical).then(|| self.weight.to_raw(None)),
            diagram: f.to_raw(None),
            colim_of_lim: lhs,
            lim_of_colim: rhs,
            failure,
        }
    }

    pub fn value_bound(&self) -> usize {
        self.value_bound
    }
}

type Found = (Vec<usize>, Vec<Nat>);

struct ShapeInfo {
    shape: Arc<FinCategory>,
    plan: crate::presheaf::enumerate::Plan,
    /// Non-identity morphisms `(m, src, tgt)`.
    morphisms: Vec<(usize, usize, usize)>,
    /// Non-identity morphisms bucketed by the larger of their endpoints.
    closing: Vec<Vec<(usize, usize, usize)>>,
}

impl ShapeInfo {
    fn new(shape: &Arc<FinCategory>) -> Self {
        let morphisms: Vec<(usize, usize, usize)> =
            shape.non_identities().map(|m| (m, shape.src(m), shape.tgt(m))).collect();
        let mut closing = vec![Vec::new(); shape.num_objects()];
        for &(m, s, t) in &morphisms {
            closing[s.max(t)].push((m, s, t));
        }
        ShapeInfo {
            shape: shape.clone(),
            plan: plan(shape, Variance::Covariant),
            morphisms,
            closing,
        }
    }
}

/// Recomputes a witness from its serialized form with the generic
/// library operations, independently of the search code. Returns the
/// sizes `(|M * lim F|, |lim (M * F)|)` and whether the comparison map is a
/// bijection.
pub fn recheck_witness(w: &CommutationWitness) -> Result<(usize, usize, bool), DoctrineError> {
    let bad = |e: String| DoctrineError::BadWitness(e);
    let shape = Arc::new(w.shape.validate().map_err(|e| bad(e.to_string()))?);
    let base = Arc::new(w.base.validate().map_err(|e| bad(e.to_string()))?);
    let weight = match &w.weight {
        Some(raw) => raw.validate(base.clone())?,
        None => SetFunctor::terminal(base.clone(), Variance::Contravariant),
    };
    let prod = Arc::new(shape.product(&base));
    let f = w.diagram.validate(prod)?;
    let (ns, nc) = (shape.num_objects(), base.num_objects());
    let (nms, nmc) = (shape.num_morphisms(), base.num_morphisms());
    let obj = |s: usize, c: usize| s * nc + c;
    let mor = |m: usize, g: usize| m * nmc + g;

    // lim F, pointwise in C
    let slices: Vec<_> = (0..nc)
        .map(|c| {
            let carriers = (0..ns).map(|s| f.carrier(obj(s, c))).collect();
            let action = (0..nms).map(|m| f.action(mor(m, base.identity(c))).to_vec()).collect();
            limit(&SetFunctor::new(shape.clone(), Variance::Covariant, carriers, action).expect("slice"))
        })
        .collect();
    let lim_carriers = slices.iter().map(|l| l.size()).collect();
    let lim_action = (0..nmc)
        .map(|g| {
            let (a, b) = (base.src(g), base.tgt(g));
            slices[a]
                .families
                .iter()
                .map(|fam| {
                    let moved: Vec<usize> = (0..ns).map(|s| f.apply(mor(shape.identity(s), g), fam[s])).collect();
                    slices[b].families.iter().position(|x| *x == moved).expect("limit is functorial")
                })
                .collect()
        })
        .collect();
    let lim_f = SetFunctor::new(base.clone(), Variance::Covariant, lim_carriers, lim_action)?;
    let lhs = weighted_colimit(&weight, &lim_f)?;

    // M * F(s, -) for each s, then the limit over the shape
    let columns: Vec<_> = (0..ns)
        .map(|s| {
            let carriers = (0..nc).map(|c| f.carrier(obj(s, c))).collect();
            let action = (0..nmc).map(|g| f.action(mor(shape.identity(s), g)).to_vec()).collect();
            let g = SetFunctor::new(base.clone(), Variance::Covariant, carriers, action).expect("column");
            weighted_colimit(&weight, &g)
        })
        .collect::<Result<_, _>>()?;
    let elems = &lhs.elements.elements;
    let col_carriers = columns.iter().map(|w| w.size()).collect();
    let col_action = (0..nms)
        .map(|m| {
            let (s, t) = (shape.src(m), shape.tgt(m));
            columns[s]
                .colimit
                .representatives
                .iter()
                .map(|&(e, x)| {
                    let c = elems[e].0;
                    columns[t].colimit.cocone.legs[e][f.apply(mor(m, base.identity(c)), x)]
                })
                .collect()
        })
        .collect();
    let rhs_diag = SetFunctor::new(shape.clone(), Variance::Covariant, col_carriers, col_action)?;
    let rhs = limit(&rhs_diag);

    // the comparison map on representatives of M * lim F
    let mut images = Vec::new();
    for &(e, i) in &lhs.colimit.representatives {
        let c = elems[e].0;
        let fam = &slices[c].families[i];
        let img: Vec<usize> = (0..ns).map(|s| columns[s].colimit.cocone.legs[e][fam[s]]).collect();
        images.push(img);
    }
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    let bijective = sorted.len() == images.len() && images.len() == rhs.size();
    Ok((lhs.size(), rhs.size(), bijective))
}

/// Bounded search over diagrams `shape × C → Set` for a failure of
/// `colim_C lim_shape F ≅ lim_shape colim_C F`.
pub fn commutation_refute(
    c: &Arc<FinCategory>,
    shape: &Arc<FinCategory>,
    cfg: &SearchConfig,
) -> Result<Verdict, DoctrineError> {
    weighted_commutation_refute(c, None, &[("shape".to_string(), shape.clone())], cfg)
}

/// As [`commutation_refute`] for `M`-weighted colimits, over a list of
/// shapes tried in order.
pub fn weighted_commutation_refute(
    base: &Arc<FinCategory>,
    weight: Option<&SetFunctor>,
    shapes: &[(String, Arc<FinCategory>)],
    cfg: &SearchConfig,
) -> Result<Verdict, DoctrineError> {
    let oracle = Oracle::new(base, weight, cfg.value_bound)?;
    let counter = AtomicU64::new(0);
    for (name, shape) in shapes {
        if let Some(w) = oracle.refute_shape(name, shape, cfg, &counter)? {
            return Ok(Verdict::Refuted { witness: Box::new(Witness::Commutation(w)) });
        }
    }
    Ok(Verdict::ConsistentUpTo {
        bounds: Bounds {
            value_bound: cfg.value_bound,
            shape_bound: None,
            category_bound: None,
            shapes_tested: shapes.len(),
            diagrams_tested: counter.load(Ordering::Relaxed),
            categories_tested: None,
        },
    })
}

fn encode(xs: &[usize], radix: &[usize]) -> usize {
    xs.iter().zip(radix).fold(0, |acc, (&x, &r)| acc * r + x)
}

fn families(
    radix: &[usize],
    closing: &[Vec<(usize, usize, usize)>],
    alphas: &[Nat],
    c: ObjId,
    s: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if s == radix.len() {
        out.push(cur.clone());
        return;
    }
    for x in 0..radix[s] {
        cur[s] = x;
        if closing[s].iter().all(|&(m, a, b)| alphas[m][c][cur[a]] == cur[b]) {
            families(radix, closing, alphas, c, s + 1, cur, out);
        }
    }
}

fn count_compatible(counts: &[usize], induced: &[(usize, usize, Vec<usize>)]) -> usize {
    let k = counts.len();
    let mut closing = vec![Vec::new(); k];
    for (i, (s, t, _)) in induced.iter().enumerate() {
        closing[(*s).max(*t)].push(i);
    }
    fn go(counts: &[usize], induced: &[(usize, usize, Vec<usize>)], closing: &[Vec<usize>], s: usize, cur: &mut Vec<usize>) -> usize {
        if s == counts.len() {
            return 1;
        }
        let mut total = 0;
        for x in 0..counts[s] {
            cur[s] = x;
            if closing[s].iter().all(|&i| {
                let (a, b, map) = &induced[i];
                map[cur[*a]] == cur[*b]
            }) {
                total += go(counts, induced, closing, s + 1, cur);
            }
        }
        total
    }
    go(counts, induced, &closing, 0, &mut vec![0; k])
}
