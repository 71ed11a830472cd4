//! Finite modules over table rings, their submodules and the
//! absorbing-style predicates decided by exhaustive search.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::ring::{same_ring, Elem, FiniteRing, Ideal, RingHom};
use crate::set::CarrierSet;
use crate::verdict::{Verdict, Witness};

#[derive(Clone)]
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    size: usize,
    add: Vec<Elem>,
    act: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    label: String,
    names: Vec<String>,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteModule({} over {}, size {})", self.label, self.ring.label(), self.size)
    }
}

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.add == other.add
            && self.act == other.act
            && *self.ring == *other.ring
    }
}

impl Eq for FiniteModule {}

pub fn same_module(a: &Arc<FiniteModule>, b: &Arc<FiniteModule>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FiniteModule {
    /// Build from explicit tables and validate every module axiom.
    ///
    /// `add` is row-major over the module carrier; `act[r * size + x]`
    /// is the scalar action of ring element `r` on module element `x`.
    pub fn from_tables(
        ring: Arc<FiniteRing>,
        add: Vec<Elem>,
        act: Vec<Elem>,
        zero: Elem,
        label: String,
        names: Vec<String>,
        budget: &Budget,
    ) -> Result<Arc<Self>> {
        let size = names.len();
        if size == 0 {
            return Err(AlgebraError::InvalidSize(0));
        }
        if add.len() != size * size {
            return Err(AlgebraError::Mismatch(format!(
                "addition table for {label} must have {} entries",
                size * size
            )));
        }
        if act.len() != ring.size() * size {
            return Err(AlgebraError::Mismatch(format!(
                "action table for {label} must have {} entries",
                ring.size() * size
            )));
        }
        for &v in add.iter().chain(act.iter()) {
            if v as usize >= size {
                return Err(AlgebraError::BadElement { index: v as usize, size });
            }
        }
        if zero as usize >= size {
            return Err(AlgebraError::BadElement { index: zero as usize, size });
        }
        let mut neg = vec![0 as Elem; size];
        for a in 0..size {
            match (0..size).find(|&b| add[a * size + b] == zero) {
                Some(b) => neg[a] = b as Elem,
                None => {
                    return Err(AlgebraError::NotAModule {
                        axiom: "additive inverse",
                        witness: names[a].clone(),
                    })
                }
            }
        }
        let module = FiniteModule { ring, size, add, act, neg, zero, label, names };
        module.validate(budget)?;
        Ok(Arc::new(module))
    }

    /// Exhaustive module axiom check.
    pub fn validate(&self, budget: &Budget) -> Result<()> {
        let m = self.size;
        let r = self.ring.size();
        let mut meter = budget.meter();
        let cost = (m as u64).pow(3)
            + (r as u64) * (m as u64) * (m as u64)
            + (r as u64) * (r as u64) * (m as u64) * 2
            + 4 * (m as u64) * (m as u64);
        meter.charge_for(cost, "validating module axioms")?;
        let wit1 = |a: usize| self.names[a].clone();
        for a in 0..m {
            if self.add[a * m + self.zero as usize] != a as Elem {
                return Err(AlgebraError::NotAModule { axiom: "zero identity", witness: wit1(a) });
            }
            if self.act[self.ring.one() as usize * m + a] != a as Elem {
                return Err(AlgebraError::NotAModule { axiom: "unit action", witness: wit1(a) });
            }
        }
        for a in 0..m {
            for b in 0..m {
                if self.add[a * m + b] != self.add[b * m + a] {
                    return Err(AlgebraError::NotAModule {
                        axiom: "commutativity of +",
                        witness: format!("({}, {})", self.names[a], self.names[b]),
                    });
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = self.add[a * m + b] as usize;
                for c in 0..m {
                    if self.add[ab * m + c] != self.add[a * m + self.add[b * m + c] as usize] {
                        return Err(AlgebraError::NotAModule {
                            axiom: "associativity of +",
                            witness: format!(
                                "({}, {}, {})",
                                self.names[a], self.names[b], self.names[c]
                            ),
                        });
                    }
                }
            }
        }
        for r1 in 0..self.ring.size() {
            for x in 0..m {
                let rx = self.act[r1 * m + x] as usize;
                for y in 0..m {
                    // r(x + y) = rx + ry
                    let lhs = self.act[r1 * m + self.add[x * m + y] as usize];
                    let rhs = self.add[rx * m + self.act[r1 * m + y] as usize];
                    if lhs != rhs {
                        return Err(AlgebraError::NotAModule {
                            axiom: "distributivity over module addition",
                            witness: format!(
                                "({}, {}, {})",
                                self.ring.name(r1 as Elem),
                                self.names[x],
                                self.names[y]
                            ),
                        });
                    }
                }
                for r2 in 0..self.ring.size() {
                    // (r1 + r2)x = r1 x + r2 x and (r1 r2)x = r1 (r2 x)
                    let sum = self.ring.add(r1 as Elem, r2 as Elem) as usize;
                    let lhs = self.act[sum * m + x];
                    let rhs = self.add[rx * m + self.act[r2 * m + x] as usize];
                    if lhs != rhs {
                        return Err(AlgebraError::NotAModule {
                            axiom: "distributivity over scalar addition",
                            witness: format!(
                                "({}, {}, {})",
                                self.ring.name(r1 as Elem),
                                self.ring.name(r2 as Elem),
                                self.names[x]
                            ),
                        });
                    }
                    let prod = self.ring.mul(r1 as Elem, r2 as Elem) as usize;
                    let lhs = self.act[prod * m + x];
                    let rhs = self.act[r1 * m + self.act[r2 * m + x] as usize];
                    if lhs != rhs {
                        return Err(AlgebraError::NotAModule {
                            axiom: "associativity of the action",
                            witness: format!(
                                "({}, {}, {})",
                                self.ring.name(r1 as Elem),
                                self.ring.name(r2 as Elem),
                                self.names[x]
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The ring acting on itself.
    pub fn regular(ring: &Arc<FiniteRing>, budget: &Budget) -> Result<Arc<Self>> {
        let n = ring.size();
        let add = (0..n * n).map(|i| ring.add((i / n) as Elem, (i % n) as Elem)).collect();
        let act = (0..n * n).map(|i| ring.mul((i / n) as Elem, (i % n) as Elem)).collect();
        let names = ring.names().to_vec();
        Self::from_tables(ring.clone(), add, act, ring.zero(), ring.label().to_string(), names, budget)
    }

    /// Product module over the product of the two scalar rings; pairs
    /// ordered with the left factor major, matching the product ring.
    pub fn product(a: &Arc<FiniteModule>, b: &Arc<FiniteModule>, budget: &Budget) -> Result<Arc<Self>> {
        let ring = FiniteRing::product(&a.ring, &b.ring, budget)?;
        let (ma, mb) = (a.size, b.size);
        let size = ma * mb;
        let mut add = vec![0 as Elem; size * size];
        for xa in 0..ma {
            for xb in 0..mb {
                let x = xa * mb + xb;
                for ya in 0..ma {
                    for yb in 0..mb {
                        let y = ya * mb + yb;
                        add[x * size + y] = (a.add[xa * ma + ya] as usize * mb
                            + b.add[xb * mb + yb] as usize) as Elem;
                    }
                }
            }
        }
        let rb = b.ring.size();
        let mut act = vec![0 as Elem; ring.size() * size];
        for ra in 0..a.ring.size() {
            for rbi in 0..rb {
                let r = ra * rb + rbi;
                for x in 0..size {
                    let (xa, xb) = (x / mb, x % mb);
                    act[r * size + x] = (a.act[ra * ma + xa] as usize * mb
                        + b.act[rbi * mb + xb] as usize) as Elem;
                }
            }
        }
        let names: Vec<String> = (0..size)
            .map(|x| format!("({},{})", a.names[x / mb], b.names[x % mb]))
            .collect();
        let zero = (a.zero as usize * mb + b.zero as usize) as Elem;
        let label = format!("{}x{}", a.label, b.label);
        Self::from_tables(ring, add, act, zero, label, names, budget)
    }

    /// The same carrier viewed over the domain of `f`, acting through
    /// `f`. The module structure is inherited, not re-derived.
    pub fn restrict(n: &Arc<FiniteModule>, f: &RingHom, budget: &Budget) -> Result<Arc<Self>> {
        if !same_ring(f.cod(), &n.ring) {
            return Err(AlgebraError::Mismatch(
                "scalar restriction needs a map into the module's ring".into(),
            ));
        }
        let size = n.size;
        let mut act = vec![0 as Elem; f.dom().size() * size];
        for r in 0..f.dom().size() {
            let fr = f.apply(r as Elem) as usize;
            act[r * size..(r + 1) * size].copy_from_slice(&n.act[fr * size..(fr + 1) * size]);
        }
        let label = format!("{} over {}", n.label, f.dom().label());
        Self::from_tables(
            f.dom().clone(),
            n.add.clone(),
            act,
            n.zero,
            label,
            n.names.clone(),
            budget,
        )
    }

    /// Quotient by a submodule, cosets named by their least member;
    /// the projection is a module map over the identity of the ring.
    pub fn quotient(m: &Arc<FiniteModule>, sub: &Submodule, budget: &Budget) -> Result<QuotientModule> {
        if !same_module(&sub.parent, m) {
            return Err(AlgebraError::Mismatch("quotient by a submodule of a different module".into()));
        }
        let size_m = m.size;
        let mut coset_of = vec![Elem::MAX; size_m];
        let mut reps: Vec<Elem> = Vec::new();
        for x in 0..size_m as Elem {
            if coset_of[x as usize] != Elem::MAX {
                continue;
            }
            let rep_index = reps.len() as Elem;
            reps.push(x);
            for s in sub.members.iter() {
                coset_of[m.add(x, s) as usize] = rep_index;
            }
        }
        let size = reps.len();
        let mut add = vec![0 as Elem; size * size];
        for (i, &xi) in reps.iter().enumerate() {
            for (j, &xj) in reps.iter().enumerate() {
                add[i * size + j] = coset_of[m.add(xi, xj) as usize];
            }
        }
        let mut act = vec![0 as Elem; m.ring.size() * size];
        for r in 0..m.ring.size() as Elem {
            for (i, &xi) in reps.iter().enumerate() {
                act[r as usize * size + i] = coset_of[m.act(r, xi) as usize];
            }
        }
        let names: Vec<String> = reps.iter().map(|&x| m.names[x as usize].clone()).collect();
        let zero = coset_of[m.zero as usize];
        let label = format!("{}/{}", m.label, sub.describe());
        let module = Self::from_tables(m.ring.clone(), add, act, zero, label, names, budget)?;
        let projection = ModuleHom::new(
            RingHom::identity(&m.ring),
            m.clone(),
            module.clone(),
            coset_of,
        )?;
        Ok(QuotientModule { module, projection })
    }

    #[inline]
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn act(&self, r: Elem, x: Elem) -> Elem {
        self.act[r as usize * self.size + x as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size as Elem
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Whether this is literally the ring acting on itself, which is
    /// what lets ideals be read as submodules and vice versa.
    pub fn is_regular(&self) -> bool {
        self.size == self.ring.size()
            && self.zero == self.ring.zero()
            && (0..self.size as Elem).all(|a| {
                (0..self.size as Elem).all(|b| {
                    self.add(a, b) == self.ring.add(a, b) && self.act(a, b) == self.ring.mul(a, b)
                })
            })
    }

    /// `(0 :_R M)`, the scalars killing the whole module.
    pub fn annihilator(self: &Arc<Self>) -> Ideal {
        let members = (0..self.ring.size() as Elem)
            .filter(|&r| (0..self.size as Elem).all(|x| self.act(r, x) == self.zero));
        Ideal::from_members(&self.ring, members).expect("annihilator is an ideal")
    }

    /// Least generator of the whole module, if one exists.
    pub fn cyclic_generator(&self) -> Option<Elem> {
        (0..self.size as Elem).find(|&x| {
            let mut hit = CarrierSet::empty(self.size);
            for r in 0..self.ring.size() as Elem {
                hit.insert(self.act(r, x));
            }
            hit.len() == self.size
        })
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    /// Multiplication module test: every submodule must equal
    /// `(F : M) M`. On failure the witness lists the members of the
    /// first offending submodule in enumeration order.
    pub fn is_multiplication(self: &Arc<Self>, budget: &Budget) -> Result<Verdict> {
        let subs = self.submodules(budget)?;
        let mut iters = 0u64;
        for sub in &subs {
            let resid = sub.residual_module();
            let image = Submodule::ideal_times(&resid, self, budget)?;
            iters += (self.ring.size() * self.size) as u64;
            if image.members != sub.members {
                let witness = Witness(sub.members.iter().map(|x| ("member", x)).collect());
                return Ok(Verdict::refuted(witness, iters));
            }
        }
        Ok(Verdict::confirmed(iters))
    }

    /// All submodules, ordered by size then members.
    pub fn submodules(self: &Arc<Self>, budget: &Budget) -> Result<Vec<Submodule>> {
        let mut meter = budget.meter();
        let zero = Submodule::generated(self, &[], budget)?;
        let mut seen: Vec<Vec<Elem>> = vec![zero.members.members()];
        let mut found = vec![zero];
        let mut frontier = 0;
        while frontier < found.len() {
            let base = found[frontier].members.clone();
            frontier += 1;
            for x in 0..self.size as Elem {
                if base.contains(x) {
                    continue;
                }
                meter.charge_for((self.size + self.ring.size()) as u64, "enumerating submodules")?;
                let mut gens = base.members();
                gens.push(x);
                let bigger = Submodule::generated(self, &gens, budget)?;
                let key = bigger.members.members();
                if !seen.contains(&key) {
                    seen.push(key);
                    found.push(bigger);
                }
            }
        }
        found.sort_by(|a, b| a.members.canonical_cmp(&b.members));
        Ok(found)
    }

    /// Scalars acting as zero divisors on `M / F`: some element outside
    /// `F` is pushed into `F`. Decided by the full pair scan.
    pub fn zero_divisors_on_quotient(self: &Arc<Self>, f: &Submodule) -> Result<Vec<Elem>> {
        if !same_module(&f.parent, self) {
            return Err(AlgebraError::Mismatch("submodule of a different module".into()));
        }
        if !f.is_proper() {
            return Err(AlgebraError::NotProper);
        }
        let mut out = Vec::new();
        for r in 0..self.ring.size() as Elem {
            let hit = (0..self.size as Elem)
                .any(|x| !f.members.contains(x) && f.members.contains(self.act(r, x)));
            if hit {
                out.push(r);
            }
        }
        Ok(out)
    }
}

/// Quotient module together with the canonical projection.
#[derive(Debug, Clone)]
pub struct QuotientModule {
    pub module: Arc<FiniteModule>,
    pub projection: ModuleHom,
}

/// Validated submodule of a specific module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    parent: Arc<FiniteModule>,
    members: CarrierSet,
}

impl Submodule {
    pub fn from_members<I: IntoIterator<Item = Elem>>(
        module: &Arc<FiniteModule>,
        members: I,
    ) -> Result<Self> {
        let set = CarrierSet::from_members(module.size(), members).ok_or_else(|| {
            AlgebraError::BadElement { index: usize::MAX, size: module.size() }
        })?;
        Self::from_set(module, set)
    }

    pub(crate) fn from_set(module: &Arc<FiniteModule>, set: CarrierSet) -> Result<Self> {
        if !set.contains(module.zero()) {
            return Err(AlgebraError::NotASubmodule("zero is missing".into()));
        }
        for a in set.iter() {
            for b in set.iter() {
                let s = module.add(a, b);
                if !set.contains(s) {
                    return Err(AlgebraError::NotASubmodule(format!(
                        "{} + {} = {} escapes",
                        module.name(a),
                        module.name(b),
                        module.name(s)
                    )));
                }
            }
            for r in module.ring().elements() {
                let p = module.act(r, a);
                if !set.contains(p) {
                    return Err(AlgebraError::NotASubmodule(format!(
                        "{} * {} = {} escapes",
                        module.ring().name(r),
                        module.name(a),
                        module.name(p)
                    )));
                }
            }
        }
        Ok(Submodule { parent: module.clone(), members: set })
    }

    pub fn generated(module: &Arc<FiniteModule>, gens: &[Elem], budget: &Budget) -> Result<Self> {
        for &g in gens {
            if g as usize >= module.size() {
                return Err(AlgebraError::BadElement { index: g as usize, size: module.size() });
            }
        }
        let mut meter = budget.meter();
        let mut set = CarrierSet::empty(module.size());
        set.insert(module.zero());
        let mut queue: Vec<Elem> = vec![module.zero()];
        for &g in gens {
            if !set.contains(g) {
                set.insert(g);
                queue.push(g);
            }
        }
        while let Some(x) = queue.pop() {
            meter.charge_for((module.size() + module.ring().size()) as u64, "closing a submodule")?;
            for y in set.clone().iter() {
                let s = module.add(x, y);
                if !set.contains(s) {
                    set.insert(s);
                    queue.push(s);
                }
            }
            for r in module.ring().elements() {
                let p = module.act(r, x);
                if !set.contains(p) {
                    set.insert(p);
                    queue.push(p);
                }
            }
        }
        Ok(Submodule { parent: module.clone(), members: set })
    }

    pub fn zero(module: &Arc<FiniteModule>) -> Self {
        let mut set = CarrierSet::empty(module.size());
        set.insert(module.zero());
        Submodule { parent: module.clone(), members: set }
    }

    pub fn full(module: &Arc<FiniteModule>) -> Self {
        Submodule { parent: module.clone(), members: CarrierSet::full(module.size()) }
    }

    /// `J M` as a submodule: additive closure of the orbit of `M`
    /// under the members of `J`.
    pub fn ideal_times(j: &Ideal, module: &Arc<FiniteModule>, budget: &Budget) -> Result<Self> {
        if !same_ring(j.ring(), module.ring()) {
            return Err(AlgebraError::Mismatch("ideal of a different ring acting on the module".into()));
        }
        let mut gens = Vec::new();
        for jj in j.members() {
            for x in 0..module.size() as Elem {
                gens.push(module.act(jj, x));
            }
        }
        Self::generated(module, &gens, budget)
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.parent
    }

    pub fn members(&self) -> Vec<Elem> {
        self.members.members()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_proper(&self) -> bool {
        self.members.len() < self.parent.size()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains_all(&self, other: &Submodule) -> bool {
        other.members.is_subset(&self.members)
    }

    pub fn describe(&self) -> String {
        let names: Vec<&str> = self.members.iter().map(|x| self.parent.name(x)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn intersection(&self, other: &Submodule) -> Result<Submodule> {
        if !same_module(&self.parent, &other.parent) {
            return Err(AlgebraError::Mismatch("intersecting submodules of different modules".into()));
        }
        Ok(Submodule { parent: self.parent.clone(), members: self.members.intersect(&other.members) })
    }

    /// `(F :_R K)` for a nonempty subset `K` of the module.
    pub fn residual_subset(&self, k: &[Elem]) -> Result<Ideal> {
        if k.is_empty() {
            return Err(AlgebraError::EmptySubset);
        }
        for &x in k {
            if x as usize >= self.parent.size() {
                return Err(AlgebraError::BadElement { index: x as usize, size: self.parent.size() });
            }
        }
        let module = &self.parent;
        let members = (0..module.ring().size() as Elem)
            .filter(|&r| k.iter().all(|&x| self.members.contains(module.act(r, x))));
        Ideal::from_members(module.ring(), members)
    }

    /// `(F :_R M)`.
    pub fn residual_module(&self) -> Ideal {
        let module = &self.parent;
        let members = (0..module.ring().size() as Elem)
            .filter(|&r| (0..module.size() as Elem).all(|x| self.members.contains(module.act(r, x))));
        Ideal::from_members(module.ring(), members).expect("residual by the module is an ideal")
    }

    /// `(F :_M I)`, the elements sent into `F` by every member of `I`.
    pub fn colon_ideal(&self, i: &Ideal) -> Result<Submodule> {
        if !same_ring(i.ring(), self.parent.ring()) {
            return Err(AlgebraError::Mismatch("ideal of a different ring".into()));
        }
        let module = &self.parent;
        let members = (0..module.size() as Elem)
            .filter(|&x| i.members().iter().all(|&r| self.members.contains(module.act(r, x))));
        Submodule::from_members(module, members)
    }

    /// `(F :_M r)` for one scalar.
    pub fn colon_element(&self, r: Elem) -> Result<Submodule> {
        let module = &self.parent;
        if r as usize >= module.ring().size() {
            return Err(AlgebraError::BadElement { index: r as usize, size: module.ring().size() });
        }
        let members =
            (0..module.size() as Elem).filter(|&x| self.members.contains(module.act(r, x)));
        Submodule::from_members(module, members)
    }

    /// Prime test: `a m` in `F` forces `a` in `(F : M)` or `m` in `F`.
    pub fn is_prime(&self, budget: &Budget) -> Result<Verdict> {
        if !self.is_proper() {
            return Err(AlgebraError::NotProper);
        }
        let module = &self.parent;
        let resid = self.residual_module();
        let nr = module.ring().size() as Elem;
        let nm = module.size() as Elem;
        let mut meter = budget.meter();
        let mut iters = 0u64;
        for a in 0..nr {
            if resid.contains(a) {
                continue;
            }
            meter.charge_for(nm as u64, "prime submodule scan")?;
            for m in 0..nm {
                iters += 1;
                if self.members.contains(m) {
                    continue;
                }
                if self.members.contains(module.act(a, m)) {
                    return Ok(Verdict::refuted(Witness::pair("a", a, "m", m), iters));
                }
            }
        }
        Ok(Verdict::confirmed(iters))
    }

    /// 2-absorbing test: `a b m` in `F` forces `ab` into `(F : M)` or
    /// `a m` or `b m` into `F`. The condition is symmetric in the two
    /// scalars, so the scan takes `a <= b` and still reports the least
    /// witness overall.
    pub fn is_two_absorbing(&self, budget: &Budget) -> Result<Verdict> {
        if !self.is_proper() {
            return Err(AlgebraError::NotProper);
        }
        let module = &self.parent;
        let ring = module.ring();
        let resid = self.residual_module();
        let nr = ring.size() as Elem;
        let nm = module.size() as Elem;
        let mut meter = budget.meter();
        let mut iters = 0u64;
        for a in 0..nr {
            meter.charge_for((nr - a) as u64 * nm as u64, "2-absorbing submodule scan")?;
            for b in a..nr {
                let ab = ring.mul(a, b);
                if resid.contains(ab) {
                    continue;
                }
                for m in 0..nm {
                    iters += 1;
                    if !self.members.contains(module.act(ab, m)) {
                        continue;
                    }
                    if self.members.contains(module.act(a, m))
                        || self.members.contains(module.act(b, m))
                    {
                        continue;
                    }
                    return Ok(Verdict::refuted(Witness::triple("a", a, "b", b, "m", m), iters));
                }
            }
        }
        Ok(Verdict::confirmed(iters))
    }

    /// Primary test with the radical of `(F : M)` computed by power
    /// iteration (exponents up to the ring size suffice on a finite
    /// carrier). Returns the verdict and that radical.
    pub fn is_primary(&self, budget: &Budget) -> Result<(Verdict, Ideal)> {
        if !self.is_proper() {
            return Err(AlgebraError::NotProper);
        }
        let module = &self.parent;
        let ring = module.ring();
        let resid = self.residual_module();
        let radical = radical_of_ideal(&resid);
        let nr = ring.size() as Elem;
        let nm = module.size() as Elem;
        let mut meter = budget.meter();
        let mut iters = 0u64;
        for a in 0..nr {
            if radical.contains(a) {
                continue;
            }
            meter.charge_for(nm as u64, "primary submodule scan")?;
            for m in 0..nm {
                iters += 1;
                if self.members.contains(m) {
                    continue;
                }
                if self.members.contains(module.act(a, m)) {
                    return Ok((Verdict::refuted(Witness::pair("a", a, "m", m), iters), radical));
                }
            }
        }
        Ok((Verdict::confirmed(iters), radical))
    }

    /// Intersection of all prime submodules containing this one; the
    /// whole module when no prime contains it.
    pub fn radical(&self, budget: &Budget) -> Result<Submodule> {
        let module = &self.parent;
        let subs = module.submodules(budget)?;
        let mut acc: Option<CarrierSet> = None;
        for sub in &subs {
            if !sub.is_proper() || !self.members.is_subset(&sub.members) {
                continue;
            }
            if sub.is_prime(budget)?.holds {
                acc = Some(match acc {
                    None => sub.members.clone(),
                    Some(cur) => cur.intersect(&sub.members),
                });
            }
        }
        Ok(match acc {
            None => Submodule::full(module),
            Some(set) => Submodule { parent: module.clone(), members: set },
        })
    }
}

fn radical_of_ideal(ideal: &Ideal) -> Ideal {
    let ring = ideal.ring();
    let members = (0..ring.size() as Elem).filter(|&r| {
        let mut p = r;
        for _ in 0..ring.size() {
            if ideal.contains(p) {
                return true;
            }
            p = ring.mul(p, r);
        }
        ideal.contains(p)
    });
    Ideal::from_members(ring, members).expect("radical of an ideal is an ideal")
}

/// Validate that the list is an ascending inclusion chain.
fn check_chain(chain: &[Submodule]) -> Result<()> {
    if chain.is_empty() {
        return Err(AlgebraError::EmptySubset);
    }
    for w in chain.windows(2) {
        if !same_module(&w[0].parent, &w[1].parent) {
            return Err(AlgebraError::Mismatch("chain mixes different modules".into()));
        }
    }
    for (i, w) in chain.windows(2).enumerate() {
        if !w[0].members.is_subset(&w[1].members) {
            return Err(AlgebraError::NotAChain { position: i });
        }
    }
    Ok(())
}

/// Intersection of an ascending chain; unordered input is an error.
pub fn intersect_chain(chain: &[Submodule]) -> Result<Submodule> {
    check_chain(chain)?;
    let mut members = chain[0].members.clone();
    for sub in &chain[1..] {
        members = members.intersect(&sub.members);
    }
    Ok(Submodule { parent: chain[0].parent.clone(), members })
}

/// Union of an ascending chain; rejects a union that is the whole
/// module, since no absorbing predicate accepts it.
pub fn union_chain(chain: &[Submodule]) -> Result<Submodule> {
    check_chain(chain)?;
    let mut members = chain[0].members.clone();
    for sub in &chain[1..] {
        members = members.union(&sub.members);
    }
    if members.len() == chain[0].parent.size() {
        return Err(AlgebraError::UnionNotProper);
    }
    Ok(Submodule { parent: chain[0].parent.clone(), members })
}

/// Module homomorphism over a ring homomorphism: additive and
/// compatible with the actions through the ring map. The plain
/// same-ring case uses the identity ring map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleHom {
    ring_hom: RingHom,
    dom: Arc<FiniteModule>,
    cod: Arc<FiniteModule>,
    map: Vec<Elem>,
}

impl ModuleHom {
    pub fn new(
        ring_hom: RingHom,
        dom: Arc<FiniteModule>,
        cod: Arc<FiniteModule>,
        map: Vec<Elem>,
    ) -> Result<Self> {
        if !same_ring(ring_hom.dom(), dom.ring()) || !same_ring(ring_hom.cod(), cod.ring()) {
            return Err(AlgebraError::Mismatch(
                "ring map does not connect the scalar rings of the modules".into(),
            ));
        }
        if map.len() != dom.size() {
            return Err(AlgebraError::Mismatch(format!(
                "map table has {} entries for a domain of size {}",
                map.len(),
                dom.size()
            )));
        }
        for &v in &map {
            if v as usize >= cod.size() {
                return Err(AlgebraError::BadElement { index: v as usize, size: cod.size() });
            }
        }
        let n = dom.size() as Elem;
        for a in 0..n {
            for b in 0..n {
                let lhs = map[dom.add(a, b) as usize];
                let rhs = cod.add(map[a as usize], map[b as usize]);
                if lhs != rhs {
                    return Err(AlgebraError::NotAHom {
                        axiom: "additivity",
                        witness: format!("({}, {})", dom.name(a), dom.name(b)),
                    });
                }
            }
        }
        for r in 0..dom.ring().size() as Elem {
            for x in 0..n {
                let lhs = map[dom.act(r, x) as usize];
                let rhs = cod.act(ring_hom.apply(r), map[x as usize]);
                if lhs != rhs {
                    return Err(AlgebraError::NotAHom {
                        axiom: "scalar compatibility",
                        witness: format!("({}, {})", dom.ring().name(r), dom.name(x)),
                    });
                }
            }
        }
        Ok(ModuleHom { ring_hom, dom, cod, map })
    }

    pub fn identity(module: &Arc<FiniteModule>) -> Self {
        ModuleHom {
            ring_hom: RingHom::identity(module.ring()),
            dom: module.clone(),
            cod: module.clone(),
            map: (0..module.size() as Elem).collect(),
        }
    }

    pub fn ring_hom(&self) -> &RingHom {
        &self.ring_hom
    }

    pub fn dom(&self) -> &Arc<FiniteModule> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteModule> {
        &self.cod
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    pub fn map_table(&self) -> &[Elem] {
        &self.map
    }

    pub fn image_set(&self, f: &Submodule) -> Result<Vec<Elem>> {
        if !same_module(&f.parent, &self.dom) {
            return Err(AlgebraError::Mismatch("image of a submodule of a different module".into()));
        }
        let mut set = CarrierSet::empty(self.cod.size());
        for x in f.members.iter() {
            set.insert(self.apply(x));
        }
        Ok(set.members())
    }

    /// Image as a submodule of the codomain. The image is always
    /// closed under the image of the scalar map; when the ring map is
    /// not surjective the remaining scalars can move it, and that
    /// failure is reported rather than repaired.
    pub fn image_submodule(&self, f: &Submodule) -> Result<Submodule> {
        let members = self.image_set(f)?;
        Submodule::from_members(&self.cod, members).map_err(|e| match e {
            AlgebraError::NotASubmodule(detail) => AlgebraError::ImageNotSubmodule(detail),
            other => other,
        })
    }

    pub fn preimage_submodule(&self, n2: &Submodule) -> Result<Submodule> {
        if !same_module(&n2.parent, &self.cod) {
            return Err(AlgebraError::Mismatch("preimage of a submodule of a different module".into()));
        }
        let members = (0..self.dom.size() as Elem).filter(|&x| n2.members.contains(self.apply(x)));
        Submodule::from_members(&self.dom, members)
    }

    pub fn kernel(&self) -> Submodule {
        let members = (0..self.dom.size() as Elem).filter(|&x| self.apply(x) == self.cod.zero());
        Submodule::from_members(&self.dom, members).expect("kernel is a submodule")
    }

    pub fn image_size(&self) -> usize {
        let mut set = CarrierSet::empty(self.cod.size());
        for &v in &self.map {
            set.insert(v);
        }
        set.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_size() == self.cod.size()
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_surjective()
    }

    /// All module maps `dom -> cod` over the fixed ring map, by image
    /// tuples on an additive generating set, validated exhaustively.
    pub fn enumerate(
        ring_hom: &RingHom,
        dom: &Arc<FiniteModule>,
        cod: &Arc<FiniteModule>,
        budget: &Budget,
    ) -> Result<Vec<ModuleHom>> {
        let gens = module_additive_generators(dom);
        let k = gens.len();
        let mut count = 1u64;
        for _ in 0..k {
            count = count.saturating_mul(cod.size() as u64);
        }
        let mut meter = budget.meter();
        meter.charge_for(
            count.saturating_mul(
                (dom.size() as u64) * (dom.size() as u64)
                    + (dom.ring().size() as u64) * (dom.size() as u64),
            ),
            "enumerating module homs",
        )?;
        let plan = module_extension_plan(dom, &gens);
        let mut found = Vec::new();
        let mut images = vec![0 as Elem; k];
        loop {
            if let Some(map) = extend_module_plan(dom, cod, &plan, &images) {
                if let Ok(hom) = ModuleHom::new(ring_hom.clone(), dom.clone(), cod.clone(), map) {
                    found.push(hom);
                }
            }
            let mut pos = k;
            loop {
                if pos == 0 {
                    return Ok(found);
                }
                pos -= 1;
                images[pos] += 1;
                if (images[pos] as usize) < cod.size() {
                    break;
                }
                images[pos] = 0;
            }
        }
    }
}

fn module_additive_generators(module: &FiniteModule) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut span = CarrierSet::empty(module.size());
    span.insert(module.zero());
    while span.len() < module.size() {
        let x = (0..module.size() as Elem).find(|&x| !span.contains(x)).unwrap();
        gens.push(x);
        let mut queue: Vec<Elem> = span.members();
        span.insert(x);
        queue.push(x);
        while let Some(y) = queue.pop() {
            for z in span.clone().iter() {
                let s = module.add(y, z);
                if !span.contains(s) {
                    span.insert(s);
                    queue.push(s);
                }
            }
        }
    }
    gens
}

fn module_extension_plan(module: &FiniteModule, gens: &[Elem]) -> Vec<(Elem, usize)> {
    let n = module.size();
    let mut plan = vec![(Elem::MAX, usize::MAX); n];
    plan[module.zero() as usize] = (module.zero(), usize::MAX);
    let mut frontier = vec![module.zero()];
    while let Some(x) = frontier.pop() {
        for (gi, &g) in gens.iter().enumerate() {
            let y = module.add(x, g);
            if plan[y as usize].0 == Elem::MAX {
                plan[y as usize] = (x, gi);
                frontier.push(y);
            }
        }
    }
    plan
}

fn extend_module_plan(
    dom: &FiniteModule,
    cod: &FiniteModule,
    plan: &[(Elem, usize)],
    images: &[Elem],
) -> Option<Vec<Elem>> {
    let n = dom.size();
    let mut map = vec![Elem::MAX; n];
    map[dom.zero() as usize] = cod.zero();
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            if map[x] != Elem::MAX {
                continue;
            }
            let (pred, gi) = plan[x];
            if pred == Elem::MAX {
                return None;
            }
            if map[pred as usize] != Elem::MAX {
                map[x] = cod.add(map[pred as usize], images[gi]);
                changed = true;
            }
        }
    }
    if map.iter().any(|&v| v == Elem::MAX) {
        return None;
    }
    Some(map)
}
