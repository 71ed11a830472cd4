//! Idealization (trivial extension) of a module: the ring on `R x M`
//! with `(r, m)(r', m') = (rr', rm' + r'm)`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::module::{same_module, FiniteModule, Submodule};
use crate::ring::{Elem, FiniteRing, Ideal};

#[derive(Debug, Clone)]
pub struct Idealization {
    ring: Arc<FiniteRing>,
    base_ring: Arc<FiniteRing>,
    base_module: Arc<FiniteModule>,
}

impl Idealization {
    pub fn new(module: &Arc<FiniteModule>, budget: &Budget) -> Result<Self> {
        let r = module.ring().clone();
        let nr = r.size();
        let nm = module.size();
        let size = nr * nm;
        let mut add = vec![0 as Elem; size * size];
        let mut mul = vec![0 as Elem; size * size];
        for ra in 0..nr {
            for xa in 0..nm {
                let a = ra * nm + xa;
                for rb in 0..nr {
                    for xb in 0..nm {
                        let b = rb * nm + xb;
                        let rs = r.add(ra as Elem, rb as Elem) as usize;
                        let xs = module.add(xa as Elem, xb as Elem) as usize;
                        add[a * size + b] = (rs * nm + xs) as Elem;
                        let rp = r.mul(ra as Elem, rb as Elem) as usize;
                        let xp = module
                            .add(module.act(ra as Elem, xb as Elem), module.act(rb as Elem, xa as Elem))
                            as usize;
                        mul[a * size + b] = (rp * nm + xp) as Elem;
                    }
                }
            }
        }
        let names: Vec<_> = (0..size)
            .map(|i| format!("({},{})", r.name((i / nm) as Elem), module.name((i % nm) as Elem)))
            .collect();
        let zero = (r.zero() as usize * nm + module.zero() as usize) as Elem;
        let one = (r.one() as usize * nm + module.zero() as usize) as Elem;
        let label = format!("{}(+){}", r.label(), module.label());
        let ring = FiniteRing::from_tables(add, mul, zero, one, label, names, budget)?;
        Ok(Idealization { ring, base_ring: r, base_module: module.clone() })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn base_ring(&self) -> &Arc<FiniteRing> {
        &self.base_ring
    }

    pub fn base_module(&self) -> &Arc<FiniteModule> {
        &self.base_module
    }

    #[inline]
    pub fn index(&self, r: Elem, m: Elem) -> Elem {
        (r as usize * self.base_module.size() + m as usize) as Elem
    }

    #[inline]
    pub fn pair(&self, i: Elem) -> (Elem, Elem) {
        let nm = self.base_module.size();
        ((i as usize / nm) as Elem, (i as usize % nm) as Elem)
    }

    /// `I (+) F` as an ideal of the idealization. This is an ideal
    /// exactly when `I M` lands inside `F`, which is checked first and
    /// reported, not repaired.
    pub fn embed_ideal(&self, i: &Ideal, f: &Submodule, budget: &Budget) -> Result<Ideal> {
        if !crate::ring::same_ring(i.ring(), &self.base_ring) {
            return Err(AlgebraError::Mismatch("ideal of a different base ring".into()));
        }
        if !same_module(f.module(), &self.base_module) {
            return Err(AlgebraError::Mismatch("submodule of a different base module".into()));
        }
        let im = Submodule::ideal_times(i, &self.base_module, budget)?;
        if !f.contains_all(&im) {
            let stray = im
                .members()
                .into_iter()
                .find(|&x| !f.contains(x))
                .expect("some product escapes");
            return Err(AlgebraError::IdealActionEscapes(format!(
                "I*M reaches {} which is outside F",
                self.base_module.name(stray)
            )));
        }
        let mut members = Vec::with_capacity(i.len() * f.len());
        for &r in &i.members() {
            for &m in &f.members() {
                members.push(self.index(r, m));
            }
        }
        let ideal = Ideal::from_members(&self.ring, members)?;
        assert_eq!(ideal.len(), i.len() * f.len(), "idealized ideal size");
        Ok(ideal)
    }
}
