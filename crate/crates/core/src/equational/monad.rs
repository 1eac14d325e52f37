use serde::{Deserialize, Serialize};

use super::structure::{decode, encode, power};
use super::EquationalError;

/// A monad on finite sets known on `{0..n}` for `n ≤ window`: object sizes,
/// the action on every function `m → n` inside the window, unit
/// components, and multiplication components where `T(n)` is inside the
/// window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadTable {
    window: usize,
    sizes: Vec<usize>,
    /// `arrows[m][n][code of g]` is `T(g)`.
    arrows: Vec<Vec<Vec<Vec<usize>>>>,
    unit: Vec<Vec<usize>>,
    mult: Vec<Option<Vec<usize>>>,
}

fn functions(m: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..power(n, m)).map(move |code| decode(code, n, m))
}

impl MonadTable {
    pub fn from_fns(
        window: usize,
        size: impl Fn(usize) -> usize,
        map: impl Fn(usize, usize, &[usize]) -> Vec<usize>,
        unit: impl Fn(usize) -> Vec<usize>,
        mult: impl Fn(usize) -> Vec<usize>,
    ) -> Self {
        let sizes: Vec<usize> = (0..=window).map(&size).collect();
        let arrows = (0..=window)
            .map(|m| (0..=window).map(|n| functions(m, n).map(|g| map(m, n, &g)).collect()).collect())
            .collect();
        let unit = (0..=window).map(&unit).collect();
        let mult = (0..=window).map(|n| (sizes[n] <= window).then(|| mult(n))).collect();
        MonadTable {
            window,
            sizes,
            arrows,
            unit,
            mult,
        }
    }

    pub fn identity(window: usize) -> Self {
        MonadTable::from_fns(window, |n| n, |_, _, g| g.to_vec(), |n| (0..n).collect(), |n| (0..n).collect())
    }

    /// `T(A) = A + 1`, the new point last.
    pub fn maybe(window: usize) -> Self {
        MonadTable::from_fns(
            window,
            |n| n + 1,
            |m, n, g| (0..=m).map(|x| if x < m { g[x] } else { n }).collect(),
            |n| (0..n).collect(),
            |n| (0..n + 2).map(|x| x.min(n)).collect(),
        )
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn size(&self, n: usize) -> Result<usize, EquationalError> {
        self.sizes.get(n).copied().ok_or(EquationalError::WindowExceeded { n, window: self.window })
    }

    pub fn map(&self, g: &[usize], n: usize) -> Result<&[usize], EquationalError> {
        let m = g.len();
        if m > self.window || n > self.window {
            return Err(EquationalError::WindowExceeded { n: m.max(n), window: self.window });
        }
        Ok(&self.arrows[m][n][encode(g, n)])
    }

    pub fn unit(&self, n: usize) -> Result<&[usize], EquationalError> {
        self.unit.get(n).map(|u| u.as_slice()).ok_or(EquationalError::WindowExceeded { n, window: self.window })
    }

    pub fn mult(&self, n: usize) -> Result<&[usize], EquationalError> {
        match self.mult.get(n) {
            Some(Some(m)) => Ok(m),
            _ => Err(EquationalError::WindowExceeded { n, window: self.window }),
        }
    }

    /// Functor, naturality and monad laws: identities and naturality on the
    /// whole window, composition for sets of size at most `composition_up_to`.
    pub fn check_laws(&self, composition_up_to: usize) -> Result<(), EquationalError> {
        let bad = |what: String| Err(EquationalError::BadMonad(what));
        let w = self.window;
        for n in 0..=w {
            let id: Vec<usize> = (0..n).collect();
            if self.map(&id, n)? != (0..self.sizes[n]).collect::<Vec<_>>() {
                return bad(format!("T(id_{n}) is not the identity"));
            }
            if self.unit[n].len() != n || self.unit[n].iter().any(|&x| x >= self.sizes[n]) {
                return bad(format!("unit at {n} has the wrong type"));
            }
        }
        let k = composition_up_to.min(w);
        for a in 0..=k {
            for b in 0..=k {
                for c in 0..=k {
                    for f in functions(a, b) {
                        for g in functions(b, c) {
                            let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                            let tgf = self.map(&gf, c)?;
                            let (tf, tg) = (self.map(&f, b)?, self.map(&g, c)?);
                            if tf.iter().map(|&x| tg[x]).ne(tgf.iter().copied()) {
                                return bad(format!("T does not preserve a composite {a} → {b} → {c}"));
                            }
                        }
                    }
                }
            }
        }
        for m in 0..=w {
            for n in 0..=w {
                for g in functions(m, n) {
                    let tg = self.map(&g, n)?;
                    if (0..m).any(|x| tg[self.unit[m][x]] != self.unit[n][g[x]]) {
                        return bad(format!("unit is not natural at {g:?}"));
                    }
                    let (tm, tn) = (self.sizes[m], self.sizes[n]);
                    if tm <= w && tn <= w {
                        let ttg = self.map(tg, tn)?;
                        let (mu_m, mu_n) = (self.mult(m)?, self.mult(n)?);
                        if (0..self.sizes[tm]).any(|u| tg[mu_m[u]] != mu_n[ttg[u]]) {
                            return bad(format!("multiplication is not natural at {g:?}"));
                        }
                    }
                }
            }
        }
        for n in 0..=w {
            let Ok(mu) = self.mult(n) else { continue };
            let tn = self.sizes[n];
            let eta_t = self.unit(tn)?;
            let t_eta = self.map(&self.unit[n], tn)?;
            if (0..tn).any(|x| mu[eta_t[x]] != x || mu[t_eta[x]] != x) {
                return bad(format!("unit law fails at {n}"));
            }
            if let Ok(mu_t) = self.mult(tn) {
                let t_mu = self.map(mu, tn)?;
                if (0..mu_t.len()).any(|u| mu[mu_t[u]] != mu[t_mu[u]]) {
                    return bad(format!("associativity fails at {n}"));
                }
            }
        }
        Ok(())
    }

    pub fn to_raw(&self) -> RawMonadTable {
        let mut arrows = Vec::new();
        for m in 0..=self.window {
            for n in 0..=self.window {
                for (g, image) in functions(m, n).zip(&self.arrows[m][n]) {
                    arrows.push(RawArrow {
                        to: n,
                        map: g,
                        image: image.clone(),
                    });
                }
            }
        }
        RawMonadTable {
            window: self.window,
            objects: self.sizes.clone(),
            arrows,
            unit: self.unit.clone(),
            mult: self.mult.clone(),
        }
    }
}

/// File form: every function inside the window must be listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMonadTable {
    pub window: usize,
    pub objects: Vec<usize>,
    pub arrows: Vec<RawArrow>,
    pub unit: Vec<Vec<usize>>,
    pub mult: Vec<Option<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawArrow {
    pub to: usize,
    pub map: Vec<usize>,
    pub image: Vec<usize>,
}

impl RawMonadTable {
    pub fn validate(&self) -> Result<MonadTable, EquationalError> {
        let w = self.window;
        let bad = |what: String| EquationalError::BadMonad(what);
        if self.objects.len() != w + 1 || self.unit.len() != w + 1 || self.mult.len() != w + 1 {
            return Err(bad(format!("objects, unit and mult need {} entries", w + 1)));
        }
        let mut arrows: Vec<Vec<Vec<Option<Vec<usize>>>>> = (0..=w)
            .map(|m| (0..=w).map(|n| vec![None; power(n, m)]).collect())
            .collect();
        for a in &self.arrows {
            let m = a.map.len();
            if m > w || a.to > w || a.map.iter().any(|&x| x >= a.to) {
                return Err(bad(format!("arrow {:?} → {} is outside the window", a.map, a.to)));
            }
            if a.image.len() != self.objects[m] || a.image.iter().any(|&x| x >= self.objects[a.to]) {
                return Err(bad(format!("image of {:?} → {} has the wrong type", a.map, a.to)));
            }
            arrows[m][a.to][encode(&a.map, a.to)] = Some(a.image.clone());
        }
        let arrows = arrows
            .into_iter()
            .enumerate()
            .map(|(m, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(n, col)| {
                        col.into_iter()
                            .enumerate()
                            .map(|(code, img)| img.ok_or_else(|| bad(format!("missing T of {:?} → {n}", decode(code, n, m)))))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        for (n, mu) in self.mult.iter().enumerate() {
            let tn = self.objects[n];
            match mu {
                Some(mu) if tn > w => return Err(bad(format!("mult at {n} needs T({tn}), outside the window"))),
                Some(mu) if mu.len() != self.objects[tn] || mu.iter().any(|&x| x >= tn) => {
                    return Err(bad(format!("mult at {n} has the wrong type")))
                }
                None if tn <= w => return Err(bad(format!("mult at {n} is missing"))),
                _ => {}
            }
        }
        Ok(MonadTable {
            window: w,
            sizes: self.objects.clone(),
            arrows,
            unit: self.unit.clone(),
            mult: self.mult.clone(),
        })
    }
}

/// All `a: T(n) → n` with `a ∘ η = id` and `a ∘ T(a) = a ∘ μ`.
pub fn monad_algebras(t: &MonadTable, n: usize) -> Result<Vec<Vec<usize>>, EquationalError> {
    let tn = t.size(n)?;
    if tn > t.window() {
        return Err(EquationalError::WindowExceeded { n: tn, window: t.window() });
    }
    let (eta, mu) = (t.unit(n)?, t.mult(n)?);
    let mut out = Vec::new();
    for a in functions(tn, n) {
        if (0..n).any(|x| a[eta[x]] != x) {
            continue;
        }
        let ta = t.map(&a, n)?;
        if (0..mu.len()).all(|u| a[ta[u]] == a[mu[u]]) {
            out.push(a);
        }
    }
    Ok(out)
}

pub fn monad_algebra_count(t: &MonadTable, n: usize) -> Result<usize, EquationalError> {
    Ok(monad_algebras(t, n)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_monads_are_monads() {
        MonadTable::identity(3).check_laws(3).unwrap();
        MonadTable::maybe(4).check_laws(3).unwrap();
    }

    #[test]
    fn broken_unit_is_caught() {
        let mut raw = MonadTable::maybe(2).to_raw();
        raw.unit[1] = vec![1];
        assert!(raw.validate().unwrap().check_laws(2).is_err());
    }

    #[test]
    fn raw_round_trip() {
        let t = MonadTable::maybe(3);
        assert_eq!(t.to_raw().validate().unwrap(), t);
    }

    #[test]
    fn algebra_counts() {
        let id = MonadTable::identity(4);
        for n in 0..=4 {
            assert_eq!(monad_algebra_count(&id, n).unwrap(), 1);
        }
        let maybe = MonadTable::maybe(5);
        for n in 0..=4 {
            assert_eq!(monad_algebra_count(&maybe, n).unwrap(), n);
        }
        assert!(matches!(monad_algebra_count(&maybe, 5), Err(EquationalError::WindowExceeded { .. })));
    }
}
