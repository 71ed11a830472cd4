//! Localization of finite rings and modules at a multiplicatively
//! closed subset, via the pair equivalence
//! `(a, u) ~ (b, v) iff w(va) = w(ub) for some w in S`.
//!
//! On a finite carrier the canonical map into the localization is
//! always onto: every denominator has an idempotent power `e = s^m`,
//! and `a/s = (a s^{2m-1})/1`. The construction leans on that fact to
//! present localized submodules as images, and asserts it.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::module::{same_module, FiniteModule, ModuleHom, Submodule};
use crate::ring::{same_ring, Elem, FiniteRing, MultSet, RingHom};

#[derive(Debug, Clone)]
pub struct LocalizedRing {
    pub ring: Arc<FiniteRing>,
    pub to_fractions: RingHom,
    /// True when `0` is in the denominator set, collapsing everything
    /// to the zero ring.
    pub collapsed: bool,
}

#[derive(Debug, Clone)]
pub struct LocalizedModule {
    pub module: Arc<FiniteModule>,
    pub to_fractions: ModuleHom,
    pub collapsed: bool,
}

/// Union-find with union-by-least-root, so each class is represented
/// by its least pair index.
struct Classes {
    parent: Vec<u32>,
}

impl Classes {
    fn new(n: usize) -> Self {
        Classes { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
    }
}

/// Partition the pairs `(carrier element, denominator)` by the
/// localization equivalence. `act` is the scalar action used to form
/// the products (ring multiplication or module action).
fn partition(
    carrier: usize,
    s_members: &[Elem],
    act: impl Fn(Elem, Elem) -> Elem,
    budget: &Budget,
) -> Result<(Classes, Vec<u32>)> {
    let ns = s_members.len();
    let np = carrier * ns;
    let mut meter = budget.meter();
    meter.charge_for((np as u64) * (np as u64) * (ns as u64), "localization pair scan")?;
    let mut classes = Classes::new(np);
    for i in 0..np as u32 {
        let (a, u) = (i / ns as u32, s_members[i as usize % ns]);
        for j_pair in (i + 1)..np as u32 {
            let (b, v) = (j_pair / ns as u32, s_members[j_pair as usize % ns]);
            if classes.find(i) == classes.find(j_pair) {
                continue;
            }
            let va = act(v, a);
            let ub = act(u, b);
            if s_members.iter().any(|&w| act(w, va) == act(w, ub)) {
                classes.union(i, j_pair);
            }
        }
    }
    let mut reps = Vec::new();
    for i in 0..np as u32 {
        if classes.find(i) == i {
            reps.push(i);
        }
    }
    Ok((classes, reps))
}

pub fn localize_ring(r: &Arc<FiniteRing>, s: &MultSet, budget: &Budget) -> Result<LocalizedRing> {
    if !same_ring(s.ring(), r) {
        return Err(AlgebraError::Mismatch("denominator set of a different ring".into()));
    }
    let s_members = s.members();
    let ns = s_members.len();
    let (mut classes, reps) =
        partition(r.size(), &s_members, |x, y| r.mul(x, y), budget)?;
    let size = reps.len();
    let mut class_of = vec![0 as Elem; r.size() * ns];
    for i in 0..class_of.len() as u32 {
        let root = classes.find(i);
        class_of[i as usize] = reps.binary_search(&root).expect("root is a rep") as Elem;
    }
    let pair_of = |rep: u32| -> (Elem, Elem) { (rep / ns as u32, s_members[rep as usize % ns]) };
    let class_of_pair = |classes: &mut Classes, a: Elem, u: Elem| -> Elem {
        let k = s_members.iter().position(|&x| x == u).expect("denominator in S");
        let idx = a * ns as Elem + k as Elem;
        let root = classes.find(idx);
        reps.binary_search(&root).expect("root is a rep") as Elem
    };
    let mut add = vec![0 as Elem; size * size];
    let mut mul = vec![0 as Elem; size * size];
    for (i, &ri) in reps.iter().enumerate() {
        let (a, u) = pair_of(ri);
        for (k, &rk) in reps.iter().enumerate() {
            let (b, v) = pair_of(rk);
            let num = r.add(r.mul(v, a), r.mul(u, b));
            let den = r.mul(u, v);
            add[i * size + k] = class_of_pair(&mut classes, num, den);
            mul[i * size + k] = class_of_pair(&mut classes, r.mul(a, b), den);
        }
    }
    let names: Vec<_> = reps
        .iter()
        .map(|&rep| {
            let (a, u) = pair_of(rep);
            format!("{}/{}", r.name(a), r.name(u))
        })
        .collect();
    let one_s = s_members.iter().position(|&x| x == r.one()).expect("1 is in S");
    let zero = class_of[r.zero() as usize * ns + one_s];
    let one = class_of[r.one() as usize * ns + one_s];
    let label = format!("{} localized at {}", r.label(), s.describe());
    let ring = FiniteRing::from_tables(add, mul, zero, one, label, names, budget)?;
    let map: Vec<Elem> = (0..r.size()).map(|a| class_of[a * ns + one_s]).collect();
    let to_fractions = RingHom::new(r.clone(), ring.clone(), map)?;
    assert!(to_fractions.is_surjective(), "the canonical map is onto on a finite carrier");
    let collapsed = s.contains_zero();
    if collapsed {
        assert_eq!(ring.size(), 1, "denominator 0 collapses everything");
    }
    if s.all_units() {
        assert!(to_fractions.is_bijective(), "unit denominators change nothing");
    }
    Ok(LocalizedRing { ring, to_fractions, collapsed })
}

pub fn localize_module(
    m: &Arc<FiniteModule>,
    s: &MultSet,
    lr: &LocalizedRing,
    budget: &Budget,
) -> Result<LocalizedModule> {
    if !same_ring(s.ring(), m.ring()) {
        return Err(AlgebraError::Mismatch("denominator set of a different ring".into()));
    }
    if !same_ring(lr.to_fractions.dom(), m.ring()) {
        return Err(AlgebraError::Mismatch("localized ring of a different base ring".into()));
    }
    let s_members = s.members();
    let ns = s_members.len();
    let (mut classes, reps) = partition(m.size(), &s_members, |r, x| m.act(r, x), budget)?;
    let size = reps.len();
    let mut class_of = vec![0 as Elem; m.size() * ns];
    for i in 0..class_of.len() as u32 {
        let root = classes.find(i);
        class_of[i as usize] = reps.binary_search(&root).expect("root is a rep") as Elem;
    }
    let pair_of = |rep: u32| -> (Elem, Elem) { (rep / ns as u32, s_members[rep as usize % ns]) };
    let class_of_pair = |classes: &mut Classes, x: Elem, u: Elem| -> Elem {
        let k = s_members.iter().position(|&x| x == u).expect("denominator in S");
        let idx = x * ns as Elem + k as Elem;
        let root = classes.find(idx);
        reps.binary_search(&root).expect("root is a rep") as Elem
    };
    let ring = m.ring();
    let mut add = vec![0 as Elem; size * size];
    for (i, &ri) in reps.iter().enumerate() {
        let (x, u) = pair_of(ri);
        for (k, &rk) in reps.iter().enumerate() {
            let (y, v) = pair_of(rk);
            let num = m.add(m.act(v, x), m.act(u, y));
            add[i * size + k] = class_of_pair(&mut classes, num, ring.mul(u, v));
        }
    }
    // Scalar action of the localized ring: each scalar class is named
    // by its representative fraction a/u.
    let lr_reps: Vec<(Elem, Elem)> = (0..lr.ring.size() as Elem)
        .map(|c| {
            let a = (0..ring.size() as Elem)
                .find_map(|a| {
                    s_members.iter().find(|&&u| {
                        lr.to_fractions.apply(a) == lr.ring.mul(c, lr.to_fractions.apply(u))
                    }).map(|&u| (a, u))
                })
                .expect("every fraction has a representative pair");
            a
        })
        .collect();
    let mut act = vec![0 as Elem; lr.ring.size() * size];
    for (ci, &(a, u)) in lr_reps.iter().enumerate() {
        for (k, &rk) in reps.iter().enumerate() {
            let (x, v) = pair_of(rk);
            act[ci * size + k] = class_of_pair(&mut classes, m.act(a, x), ring.mul(u, v));
        }
    }
    let names: Vec<_> = reps
        .iter()
        .map(|&rep| {
            let (x, u) = pair_of(rep);
            format!("{}/{}", m.name(x), ring.name(u))
        })
        .collect();
    let one_s = s_members.iter().position(|&x| x == ring.one()).expect("1 is in S");
    let zero = class_of[m.zero() as usize * ns + one_s];
    let label = format!("{} localized at {}", m.label(), s.describe());
    let module = FiniteModule::from_tables(lr.ring.clone(), add, act, zero, label, names, budget)?;
    let map: Vec<Elem> = (0..m.size()).map(|x| class_of[x * ns + one_s]).collect();
    let to_fractions = ModuleHom::new(lr.to_fractions.clone(), m.clone(), module.clone(), map)?;
    assert!(to_fractions.is_surjective(), "the canonical map is onto on a finite carrier");
    Ok(LocalizedModule { module, to_fractions, collapsed: lr.collapsed })
}

/// The localized submodule, presented through the canonical map: on a
/// finite carrier `S^{-1}F` is exactly the image of `F`.
pub fn localize_submodule(f: &Submodule, lm: &LocalizedModule) -> Result<Submodule> {
    if !same_module(f.module(), lm.to_fractions.dom()) {
        return Err(AlgebraError::Mismatch("submodule of a different module".into()));
    }
    let members = lm.to_fractions.image_set(f)?;
    Submodule::from_members(lm.to_fractions.cod(), members)
}
