//! Amalgamation of a module along a ring map and an ideal, with the
//! distinguished submodules and the projection onto the target module.
//!
//! Given `f: R1 -> R2`, an ideal `J` of `R2`, and a module map
//! `phi: M -> N` over `f`, the pair ring has carrier
//! `{(r, f(r)+j) : r in R1, j in J}` and the pair module has carrier
//! `{(m, phi(m)+n) : m in M, n in JN}`, both with componentwise
//! operations. Everything is rebuilt as explicit tables and passed
//! through the same exhaustive validation as any other ring or module.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::module::{same_module, FiniteModule, ModuleHom, Submodule};
use crate::ring::{same_ring, Elem, FiniteRing, Ideal, RingHom};

#[derive(Debug, Clone)]
pub struct Amalgamation {
    f: RingHom,
    j: Ideal,
    phi: ModuleHom,
    jn: Submodule,
    ring: Arc<FiniteRing>,
    ring_pairs: Vec<(Elem, Elem)>,
    ring_index: Vec<Elem>,
    module: Arc<FiniteModule>,
    module_pairs: Vec<(Elem, Elem)>,
    module_index: Vec<Elem>,
    target_ring: Arc<FiniteRing>,
    target_embed: RingHom,
    target_module: Arc<FiniteModule>,
    target_members: Vec<Elem>,
    ring_projection: RingHom,
    projection: ModuleHom,
}

impl Amalgamation {
    /// Build the whole picture: pair ring, pair module, target ring
    /// `f(R1)+J`, target module `phi(M)+JN`, and the projection onto
    /// the second coordinate. The scalar action of the pair module is
    /// cross-checked element by element against its expanded form
    /// `(rm, phi(rm) + f(r)n + j phi(m) + j n)`.
    pub fn new(f: &RingHom, j: &Ideal, phi: &ModuleHom, budget: &Budget) -> Result<Self> {
        if !same_ring(j.ring(), f.cod()) {
            return Err(AlgebraError::Mismatch(
                "the ideal must live in the codomain of the ring map".into(),
            ));
        }
        if phi.ring_hom() != f {
            return Err(AlgebraError::Mismatch(
                "the module map must be taken over the given ring map".into(),
            ));
        }
        let r1 = f.dom().clone();
        let r2 = f.cod().clone();
        let m = phi.dom().clone();
        let n = phi.cod().clone();
        let jn = Submodule::ideal_times(j, &n, budget)?;

        // Pair ring carrier, in lexicographic order. For fixed r the
        // second coordinates form the coset f(r)+J, so the count is
        // exactly |R1| * |J|.
        let mut ring_pairs: Vec<(Elem, Elem)> = Vec::with_capacity(r1.size() * j.len());
        for r in 0..r1.size() as Elem {
            let fr = f.apply(r);
            let mut seconds: Vec<Elem> = j.members().iter().map(|&jj| r2.add(fr, jj)).collect();
            seconds.sort_unstable();
            for s in seconds {
                ring_pairs.push((r, s));
            }
        }
        assert_eq!(ring_pairs.len(), r1.size() * j.len(), "pair ring carrier count");
        let mut ring_index = vec![Elem::MAX; r1.size() * r2.size()];
        for (i, &(r, s)) in ring_pairs.iter().enumerate() {
            ring_index[r as usize * r2.size() + s as usize] = i as Elem;
        }
        let rn = ring_pairs.len();
        let pair_ring_at = |r: Elem, s: Elem| -> Elem {
            let idx = ring_index[r as usize * r2.size() + s as usize];
            assert_ne!(idx, Elem::MAX, "pair ring operation escaped the carrier");
            idx
        };
        let mut add = vec![0 as Elem; rn * rn];
        let mut mul = vec![0 as Elem; rn * rn];
        for (i, &(ra, sa)) in ring_pairs.iter().enumerate() {
            for (k, &(rb, sb)) in ring_pairs.iter().enumerate() {
                add[i * rn + k] = pair_ring_at(r1.add(ra, rb), r2.add(sa, sb));
                mul[i * rn + k] = pair_ring_at(r1.mul(ra, rb), r2.mul(sa, sb));
            }
        }
        let names = ring_pairs
            .iter()
            .map(|&(r, s)| format!("({},{})", r1.name(r), r2.name(s)))
            .collect();
        let zero = pair_ring_at(r1.zero(), r2.zero());
        let one = pair_ring_at(r1.one(), f.apply(r1.one()));
        let label = format!("{} bowtie {}", r1.label(), j.describe());
        let ring = FiniteRing::from_tables(add, mul, zero, one, label, names, budget)?;

        // Pair module carrier; for fixed m the second coordinates form
        // the coset phi(m)+JN.
        let mut module_pairs: Vec<(Elem, Elem)> = Vec::with_capacity(m.size() * jn.len());
        for x in 0..m.size() as Elem {
            let px = phi.apply(x);
            let mut seconds: Vec<Elem> = jn.members().iter().map(|&nn| n.add(px, nn)).collect();
            seconds.sort_unstable();
            for t in seconds {
                module_pairs.push((x, t));
            }
        }
        assert_eq!(module_pairs.len(), m.size() * jn.len(), "pair module carrier count");
        let mut module_index = vec![Elem::MAX; m.size() * n.size()];
        for (i, &(x, t)) in module_pairs.iter().enumerate() {
            module_index[x as usize * n.size() + t as usize] = i as Elem;
        }
        let mn = module_pairs.len();
        let pair_module_at = |x: Elem, t: Elem| -> Elem {
            let idx = module_index[x as usize * n.size() + t as usize];
            assert_ne!(idx, Elem::MAX, "pair module operation escaped the carrier");
            idx
        };
        let mut madd = vec![0 as Elem; mn * mn];
        for (i, &(xa, ta)) in module_pairs.iter().enumerate() {
            for (k, &(xb, tb)) in module_pairs.iter().enumerate() {
                madd[i * mn + k] = pair_module_at(m.add(xa, xb), n.add(ta, tb));
            }
        }
        let mut mact = vec![0 as Elem; rn * mn];
        for (ri, &(r, s)) in ring_pairs.iter().enumerate() {
            let jj = r2.sub(s, f.apply(r));
            for (xi, &(x, t)) in module_pairs.iter().enumerate() {
                let rx = m.act(r, x);
                let st = n.act(s, t);
                // Expanded form of the same action, using t = phi(x)+nn
                // and s = f(r)+jj.
                let nn = n.sub(t, phi.apply(x));
                let expanded = n.add(
                    phi.apply(rx),
                    n.add(n.act(f.apply(r), nn), n.add(n.act(jj, phi.apply(x)), n.act(jj, nn))),
                );
                assert_eq!(
                    st, expanded,
                    "componentwise action disagrees with its expanded form"
                );
                mact[ri * mn + xi] = pair_module_at(rx, st);
            }
        }
        let mnames = module_pairs
            .iter()
            .map(|&(x, t)| format!("({},{})", m.name(x), n.name(t)))
            .collect();
        let mzero = pair_module_at(m.zero(), n.zero());
        let mlabel = format!("{} bowtie {}", m.label(), jn.describe());
        let module =
            FiniteModule::from_tables(ring.clone(), madd, mact, mzero, mlabel, mnames, budget)?;

        // Target ring f(R1)+J and the second-coordinate ring projection.
        let (target_ring, target_embed) = crate::ring::image_plus_ideal(f, j, budget)?;
        let mut r2_to_target = vec![Elem::MAX; r2.size()];
        for (i, &x) in target_embed.map_table().iter().enumerate() {
            r2_to_target[x as usize] = i as Elem;
        }
        let ring_proj_map: Vec<Elem> = ring_pairs
            .iter()
            .map(|&(_, s)| {
                let idx = r2_to_target[s as usize];
                assert_ne!(idx, Elem::MAX, "second coordinate outside f(R1)+J");
                idx
            })
            .collect();
        let ring_projection = RingHom::new(ring.clone(), target_ring.clone(), ring_proj_map)?;

        // Target module phi(M)+JN over the target ring.
        let mut tset = crate::set::CarrierSet::empty(n.size());
        for &(_, t) in &module_pairs {
            tset.insert(t);
        }
        let target_members = tset.members();
        let tn = target_members.len();
        let mut n_to_target = vec![Elem::MAX; n.size()];
        for (i, &x) in target_members.iter().enumerate() {
            n_to_target[x as usize] = i as Elem;
        }
        let mut tadd = vec![0 as Elem; tn * tn];
        for (i, &xi) in target_members.iter().enumerate() {
            for (k, &xk) in target_members.iter().enumerate() {
                let s = n_to_target[n.add(xi, xk) as usize];
                assert_ne!(s, Elem::MAX, "target module is not additively closed");
                tadd[i * tn + k] = s;
            }
        }
        let mut tact = vec![0 as Elem; target_ring.size() * tn];
        for (ti, &s) in target_embed.map_table().iter().enumerate() {
            for (xi, &x) in target_members.iter().enumerate() {
                let y = n_to_target[n.act(s, x) as usize];
                assert_ne!(y, Elem::MAX, "target module is not closed under f(R1)+J");
                tact[ti * tn + xi] = y;
            }
        }
        let tnames = target_members.iter().map(|&x| n.name(x).to_string()).collect();
        let tzero = n_to_target[n.zero() as usize];
        let tlabel = format!("phi({})+{}", m.label(), jn.describe());
        let target_module = FiniteModule::from_tables(
            target_ring.clone(),
            tadd,
            tact,
            tzero,
            tlabel,
            tnames,
            budget,
        )?;

        let proj_map: Vec<Elem> =
            module_pairs.iter().map(|&(_, t)| n_to_target[t as usize]).collect();
        let projection =
            ModuleHom::new(ring_projection.clone(), module.clone(), target_module.clone(), proj_map)?;
        assert!(projection.is_surjective(), "second-coordinate projection must be onto");

        // The kernel is exactly the pairs (x, 0) with phi(x) in JN.
        let kernel = projection.kernel();
        let expected: Vec<Elem> = (0..m.size() as Elem)
            .filter(|&x| jn.contains(phi.apply(x)))
            .map(|x| pair_module_at(x, n.zero()))
            .collect();
        let mut got = kernel.members();
        got.sort_unstable();
        let mut want = expected;
        want.sort_unstable();
        assert_eq!(got, want, "projection kernel must be the pairs (x, 0) with phi(x) in JN");

        Ok(Amalgamation {
            f: f.clone(),
            j: j.clone(),
            phi: phi.clone(),
            jn,
            ring,
            ring_pairs,
            ring_index,
            module,
            module_pairs,
            module_index,
            target_ring,
            target_embed,
            target_module,
            target_members,
            ring_projection,
            projection,
        })
    }

    /// Duplication along an ideal: both maps are identities, so the
    /// pair module carrier is the pairs whose difference lies in `JM`.
    pub fn duplication(j: &Ideal, m: &Arc<FiniteModule>, budget: &Budget) -> Result<Self> {
        if !same_ring(j.ring(), m.ring()) {
            return Err(AlgebraError::Mismatch("duplication needs an ideal of the scalar ring".into()));
        }
        let f = RingHom::identity(m.ring());
        let phi = ModuleHom::identity(m);
        let amalg = Self::new(&f, j, &phi, budget)?;
        for &(x, t) in &amalg.module_pairs {
            assert!(
                amalg.jn.contains(m.sub(t, x)),
                "duplication carrier must consist of pairs differing by JM"
            );
        }
        Ok(amalg)
    }

    pub fn ring_map(&self) -> &RingHom {
        &self.f
    }

    pub fn ideal(&self) -> &Ideal {
        &self.j
    }

    pub fn module_map(&self) -> &ModuleHom {
        &self.phi
    }

    /// `J N` inside the codomain module.
    pub fn jn(&self) -> &Submodule {
        &self.jn
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn target_ring(&self) -> &Arc<FiniteRing> {
        &self.target_ring
    }

    /// Embedding of the target ring back into the ambient codomain ring.
    pub fn target_embed(&self) -> &RingHom {
        &self.target_embed
    }

    pub fn target_module(&self) -> &Arc<FiniteModule> {
        &self.target_module
    }

    /// Target module members as elements of the ambient codomain module.
    pub fn target_members(&self) -> &[Elem] {
        &self.target_members
    }

    pub fn ring_projection(&self) -> &RingHom {
        &self.ring_projection
    }

    /// Second-coordinate projection onto the target module.
    pub fn projection(&self) -> &ModuleHom {
        &self.projection
    }

    pub fn ring_pair(&self, i: Elem) -> (Elem, Elem) {
        self.ring_pairs[i as usize]
    }

    pub fn ring_pair_index(&self, r: Elem, s: Elem) -> Option<Elem> {
        let idx = self.ring_index[r as usize * self.f.cod().size() + s as usize];
        (idx != Elem::MAX).then_some(idx)
    }

    pub fn module_pair(&self, i: Elem) -> (Elem, Elem) {
        self.module_pairs[i as usize]
    }

    pub fn module_pair_index(&self, x: Elem, t: Elem) -> Option<Elem> {
        let idx = self.module_index[x as usize * self.phi.cod().size() + t as usize];
        (idx != Elem::MAX).then_some(idx)
    }

    /// `F bowtie JN`: the pairs whose first coordinate lies in `F`.
    pub fn sub_amalg(&self, f_sub: &Submodule) -> Result<Submodule> {
        if !same_module(f_sub.module(), self.phi.dom()) {
            return Err(AlgebraError::Mismatch(
                "expected a submodule of the domain module".into(),
            ));
        }
        let members = self
            .module_pairs
            .iter()
            .enumerate()
            .filter(|&(_, &(x, _))| f_sub.contains(x))
            .map(|(i, _)| i as Elem);
        Submodule::from_members(&self.module, members)
    }

    /// Preimage of a target submodule under the projection, checked to
    /// land back on the input when pushed forward.
    pub fn bar_submodule(&self, n2: &Submodule) -> Result<Submodule> {
        let bar = self.projection.preimage_submodule(n2)?;
        let mut image = self.projection.image_set(&bar)?;
        image.sort_unstable();
        assert_eq!(image, n2.members(), "projection image of the preimage must be the input");
        Ok(bar)
    }

    /// First-coordinate ring projection onto the domain ring.
    pub fn first_ring_projection(&self) -> RingHom {
        let map = self.ring_pairs.iter().map(|&(r, _)| r).collect();
        RingHom::new(self.ring.clone(), self.f.dom().clone(), map)
            .expect("first-coordinate projection is a ring map")
    }

    /// The canonical isomorphism from the pair module modulo
    /// `F bowtie JN` onto `M / F`, taken over the first-coordinate
    /// ring projection. Both quotients are built and the induced map
    /// is validated and checked bijective.
    pub fn base_quotient_iso(&self, f_sub: &Submodule, budget: &Budget) -> Result<ModuleHom> {
        let sub = self.sub_amalg(f_sub)?;
        let q_pair = FiniteModule::quotient(&self.module, &sub, budget)?;
        let m = self.phi.dom().clone();
        let q_base = FiniteModule::quotient(&m, f_sub, budget)?;
        let pr1 = self.first_ring_projection();
        let map: Vec<Elem> = (0..q_pair.module.size() as Elem)
            .map(|c| {
                // Any representative works; quotient reps are fixed, so
                // find one pair in the coset and project it.
                let pair = (0..self.module.size() as Elem)
                    .find(|&i| q_pair.projection.apply(i) == c)
                    .expect("every coset has a representative");
                let (x, _) = self.module_pairs[pair as usize];
                q_base.projection.apply(x)
            })
            .collect();
        let iso = ModuleHom::new(pr1, q_pair.module.clone(), q_base.module.clone(), map)?;
        assert!(iso.is_bijective(), "pair quotient must match the base quotient");
        assert_eq!(sub.len(), f_sub.len() * self.jn.len(), "distinguished submodule size");
        assert_eq!(q_pair.module.size() * sub.len(), self.module.size(), "coset count");
        Ok(iso)
    }
}
