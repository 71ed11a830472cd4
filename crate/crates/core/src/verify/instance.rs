//! Declarative instance descriptions and their realization into
//! validated carriers, maps, and the amalgamated pair objects.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::module::{FiniteModule, ModuleHom};
use crate::ring::{FiniteRing, Ideal, RingHom};
use crate::amalg::Amalgamation;

/// How to build a base ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingSpec {
    /// Integers mod n.
    Zmod(u32),
    /// Direct product of two rings, indexed left-major.
    Product(Box<RingSpec>, Box<RingSpec>),
    /// Quotient by the ideal with the listed members.
    Quotient(Box<RingSpec>, Vec<u32>),
}

impl RingSpec {
    pub fn build(&self, budget: &Budget) -> Result<Arc<FiniteRing>> {
        match self {
            RingSpec::Zmod(n) => FiniteRing::zmod(*n, budget),
            RingSpec::Product(a, b) => {
                let ra = a.build(budget)?;
                let rb = b.build(budget)?;
                FiniteRing::product(&ra, &rb, budget)
            }
            RingSpec::Quotient(base, members) => {
                let rb = base.build(budget)?;
                let ideal = Ideal::from_members(&rb, members.iter().copied())?;
                let q = FiniteRing::quotient(&rb, &ideal, budget)?;
                Ok(q.ring)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            RingSpec::Zmod(n) => format!("Z{n}"),
            RingSpec::Product(a, b) => format!("{}x{}", a.label(), b.label()),
            RingSpec::Quotient(base, members) => {
                format!("{}/({} members)", base.label(), members.len())
            }
        }
    }

    /// Left-major nested product of zmod rings, one factor per size.
    pub fn for_shape(shape: &[u32]) -> Result<RingSpec> {
        if shape.is_empty() {
            return Err(AlgebraError::BadInstance("empty product shape".into()));
        }
        let mut spec = RingSpec::Zmod(shape[0]);
        for &size in &shape[1..] {
            spec = RingSpec::Product(Box::new(spec), Box::new(RingSpec::Zmod(size)));
        }
        Ok(spec)
    }
}

/// How to build a module over an already-built ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleSpec {
    /// The ring acting on itself.
    Regular,
    /// Za x Zb acted on by Z_l through reduction mod a and mod b; the
    /// ring spec must be Zmod(l) with a and b dividing l.
    Restricted { a: u32, b: u32 },
}

impl ModuleSpec {
    fn build(
        &self,
        ring_spec: &RingSpec,
        ring: &Arc<FiniteRing>,
        budget: &Budget,
    ) -> Result<Arc<FiniteModule>> {
        match self {
            ModuleSpec::Regular => FiniteModule::regular(ring, budget),
            ModuleSpec::Restricted { a, b } => {
                let l = match ring_spec {
                    RingSpec::Zmod(l) => *l,
                    _ => {
                        return Err(AlgebraError::BadInstance(
                            "restricted module needs a zmod base ring".into(),
                        ))
                    }
                };
                if *a < 2 || *b < 2 || l % a != 0 || l % b != 0 {
                    return Err(AlgebraError::BadInstance(
                        "restricted module needs factor sizes dividing the ring size".into(),
                    ));
                }
                let ra = FiniteRing::zmod(*a, budget)?;
                let rb = FiniteRing::zmod(*b, budget)?;
                let rp = FiniteRing::product(&ra, &rb, budget)?;
                let ma = FiniteModule::regular(&ra, budget)?;
                let mb = FiniteModule::regular(&rb, budget)?;
                let mp = FiniteModule::product(&ma, &mb, budget)?;
                let map: Vec<u32> = (0..l).map(|r| (r % a) * b + (r % b)).collect();
                let reduce = RingHom::new(ring.clone(), rp, map)?;
                FiniteModule::restrict(&mp, &reduce, budget)
            }
        }
    }
}

/// How to build a map between already-built carriers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomSpec {
    Identity,
    Table(Vec<u32>),
}

/// Everything needed to rebuild one amalgamation instance from scratch.
/// The optional fields pin quantified choices so that a counterexample
/// serialized from a sweep re-runs as a single concrete case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub r1: RingSpec,
    pub r2: RingSpec,
    pub f: HomSpec,
    pub j: Vec<u32>,
    pub m: ModuleSpec,
    pub n: ModuleSpec,
    pub phi: HomSpec,
    /// Component sizes when the module is a left-major product of
    /// regular zmod modules; enables factor-wise checks.
    pub product_shape: Option<Vec<u32>>,
    pub f_sub: Option<Vec<u32>>,
    pub k1: Option<Vec<u32>>,
    pub n2: Option<Vec<u32>>,
    pub s: Option<Vec<u32>>,
    pub chain: Option<Vec<Vec<u32>>>,
    pub r_elem: Option<u32>,
    pub i_ideal: Option<Vec<u32>>,
    pub seed: Option<u64>,
}

impl InstanceSpec {
    pub fn basic(
        r1: RingSpec,
        r2: RingSpec,
        f: HomSpec,
        j: Vec<u32>,
        m: ModuleSpec,
        n: ModuleSpec,
        phi: HomSpec,
    ) -> Self {
        InstanceSpec {
            r1,
            r2,
            f,
            j,
            m,
            n,
            phi,
            product_shape: None,
            f_sub: None,
            k1: None,
            n2: None,
            s: None,
            chain: None,
            r_elem: None,
            i_ideal: None,
            seed: None,
        }
    }

    /// Zn glued to itself along the identity over the ideal with the
    /// given members, with the regular module on both sides.
    pub fn identity_zmod(n: u32, j_members: Vec<u32>) -> Self {
        InstanceSpec::basic(
            RingSpec::Zmod(n),
            RingSpec::Zmod(n),
            HomSpec::Identity,
            j_members,
            ModuleSpec::Regular,
            ModuleSpec::Regular,
            HomSpec::Identity,
        )
    }

    pub fn label(&self) -> String {
        let mut j = self.j.clone();
        j.sort_unstable();
        format!("{} over {} with J of size {}", self.m_label(), self.r1.label(), j.len())
    }

    fn m_label(&self) -> String {
        match &self.m {
            ModuleSpec::Regular => self.r1.label(),
            ModuleSpec::Restricted { a, b } => format!("Z{a}xZ{b}"),
        }
    }
}

/// A fully realized instance: validated carriers plus the pair objects.
pub struct Instance {
    pub spec: InstanceSpec,
    pub r1: Arc<FiniteRing>,
    pub r2: Arc<FiniteRing>,
    pub f: RingHom,
    pub j: Ideal,
    pub m: Arc<FiniteModule>,
    pub n: Arc<FiniteModule>,
    pub phi: ModuleHom,
    pub amalg: Amalgamation,
}

impl Instance {
    /// Clone this instance's `InstanceSpec` with one or more quantified
    /// choices pinned.
    pub fn pin(&self, edit: impl FnOnce(&mut InstanceSpec)) -> InstanceSpec {
        let mut spec = self.spec.clone();
        edit(&mut spec);
        spec
    }
}

fn identity_ring_hom(dom: &Arc<FiniteRing>, cod: &Arc<FiniteRing>) -> Result<RingHom> {
    if dom.size() != cod.size() {
        return Err(AlgebraError::BadInstance(
            "identity map needs carriers of equal size".into(),
        ));
    }
    let map: Vec<u32> = (0..dom.size() as u32).collect();
    RingHom::new(dom.clone(), cod.clone(), map)
}

pub fn realize(spec: &InstanceSpec, budget: &Budget) -> Result<Instance> {
    let r1 = spec.r1.build(budget)?;
    let r2 = spec.r2.build(budget)?;
    let f = match &spec.f {
        HomSpec::Identity => identity_ring_hom(&r1, &r2)?,
        HomSpec::Table(map) => RingHom::new(r1.clone(), r2.clone(), map.clone())?,
    };
    let j = Ideal::from_members(&r2, spec.j.iter().copied())?;
    let m = spec.m.build(&spec.r1, &r1, budget)?;
    let n = spec.n.build(&spec.r2, &r2, budget)?;
    let phi = match &spec.phi {
        HomSpec::Identity => {
            if m.size() != n.size() {
                return Err(AlgebraError::BadInstance(
                    "identity map needs carriers of equal size".into(),
                ));
            }
            let map: Vec<u32> = (0..m.size() as u32).collect();
            ModuleHom::new(f.clone(), m.clone(), n.clone(), map)?
        }
        HomSpec::Table(map) => ModuleHom::new(f.clone(), m.clone(), n.clone(), map.clone())?,
    };
    if let Some(shape) = &spec.product_shape {
        let expected: u64 = shape.iter().map(|&s| s as u64).product();
        if shape.iter().any(|&s| s < 2) || expected != m.size() as u64 {
            return Err(AlgebraError::BadInstance(
                "product shape does not match the module size".into(),
            ));
        }
        if spec.m != ModuleSpec::Regular {
            return Err(AlgebraError::BadInstance(
                "product shape applies to regular modules only".into(),
            ));
        }
    }
    let amalg = Amalgamation::new(&f, &j, &phi, budget)?;
    Ok(Instance {
        spec: spec.clone(),
        r1,
        r2,
        f,
        j,
        m,
        n,
        phi,
        amalg,
    })
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn zmod_ideal_members(n: u32, d: u32) -> Vec<u32> {
    (0..n).filter(|x| x % d == 0).collect()
}

/// Named instance families used by the sweeps and the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Zn glued to itself along the identity, every ideal J, regular
    /// module on both sides, for 2 <= n <= max_n.
    AmalgZmod { max_n: u32 },
    /// Trivially glued instances for the residual, chain, localization,
    /// and idealization statements: zmod rings up to max_n plus
    /// products Za x Zb with a, b up to prod_max.
    Section2 { max_n: u32, prod_max: u32 },
    /// Product-module instances for the factor-wise statements,
    /// including one three-fold product.
    Products,
    /// Z30 glued to itself along the identity, every ideal J. The
    /// largest instance here needs a raised step budget.
    Zmod30,
    /// Seeded random instances with tables drawn from enumerated maps.
    Random { count: u32, seed: u64, max_size: u32 },
}

impl Family {
    pub fn instances(&self, budget: &Budget) -> Result<Vec<InstanceSpec>> {
        match self {
            Family::AmalgZmod { max_n } => {
                let mut out = Vec::new();
                for n in 2..=*max_n {
                    for d in divisors(n) {
                        out.push(InstanceSpec::identity_zmod(n, zmod_ideal_members(n, d)));
                    }
                }
                Ok(out)
            }
            Family::Section2 { max_n, prod_max } => {
                let mut out = Vec::new();
                for n in 2..=*max_n {
                    out.push(InstanceSpec::identity_zmod(n, vec![0]));
                }
                for a in 2..=*prod_max {
                    for b in a..=*prod_max {
                        let r = RingSpec::for_shape(&[a, b])?;
                        let mut spec = InstanceSpec::basic(
                            r.clone(),
                            r,
                            HomSpec::Identity,
                            vec![0],
                            ModuleSpec::Regular,
                            ModuleSpec::Regular,
                            HomSpec::Identity,
                        );
                        spec.product_shape = Some(vec![a, b]);
                        out.push(spec);
                    }
                }
                Ok(out)
            }
            Family::Products => {
                let shapes: [&[u32]; 4] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2]];
                let mut out = Vec::new();
                for shape in shapes {
                    let size: u32 = shape.iter().product();
                    let r = RingSpec::for_shape(shape)?;
                    for j in [vec![0], (0..size).collect::<Vec<u32>>()] {
                        let mut spec = InstanceSpec::basic(
                            r.clone(),
                            r.clone(),
                            HomSpec::Identity,
                            j,
                            ModuleSpec::Regular,
                            ModuleSpec::Regular,
                            HomSpec::Identity,
                        );
                        spec.product_shape = Some(shape.to_vec());
                        out.push(spec);
                    }
                }
                Ok(out)
            }
            Family::Zmod30 => {
                let mut out = Vec::new();
                for d in divisors(30) {
                    out.push(InstanceSpec::identity_zmod(30, zmod_ideal_members(30, d)));
                }
                Ok(out)
            }
            Family::Random { count, seed, max_size } => random_family(*count, *seed, *max_size, budget),
        }
    }
}

fn random_family(
    count: u32,
    seed: u64,
    max_size: u32,
    budget: &Budget,
) -> Result<Vec<InstanceSpec>> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for item in 0..count {
        let mut attempts = 0u32;
        loop {
            attempts += 1;
            if attempts > 64 {
                return Err(AlgebraError::NoValidInstance { attempts: attempts - 1 });
            }
            match random_spec(&mut rng, max_size, seed ^ (item as u64), budget) {
                Ok(spec) => {
                    out.push(spec);
                    break;
                }
                Err(_) => continue,
            }
        }
    }
    Ok(out)
}

fn pick(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> usize {
    (rng.next_u32() as usize) % n.max(1)
}

fn random_ring_spec(rng: &mut rand_chacha::ChaCha8Rng, max_size: u32) -> RingSpec {
    let cap = max_size.max(4);
    match rng.next_u32() % 4 {
        0 | 1 => RingSpec::Zmod(2 + (rng.next_u32() % (cap - 1))),
        2 => {
            let a = 2 + (rng.next_u32() % 3);
            let b = 2 + (rng.next_u32() % 3);
            if a * b <= cap {
                RingSpec::Product(Box::new(RingSpec::Zmod(a)), Box::new(RingSpec::Zmod(b)))
            } else {
                RingSpec::Zmod(a.max(b))
            }
        }
        _ => {
            let n = 4 + (rng.next_u32() % (cap - 3));
            let ds: Vec<u32> = divisors(n).into_iter().filter(|&d| d >= 2 && d < n).collect();
            if ds.is_empty() {
                RingSpec::Zmod(n)
            } else {
                let d = ds[pick(rng, ds.len())];
                RingSpec::Quotient(Box::new(RingSpec::Zmod(n)), zmod_ideal_members(n, d))
            }
        }
    }
}

fn random_spec(
    rng: &mut rand_chacha::ChaCha8Rng,
    max_size: u32,
    seed: u64,
    budget: &Budget,
) -> Result<InstanceSpec> {
    let r1_spec = random_ring_spec(rng, max_size);
    let r2_spec = if rng.next_u32() % 2 == 0 {
        r1_spec.clone()
    } else {
        random_ring_spec(rng, max_size)
    };
    let r1 = r1_spec.build(budget)?;
    let r2 = r2_spec.build(budget)?;
    let homs = RingHom::enumerate(&r1, &r2, budget)?;
    if homs.is_empty() {
        return Err(AlgebraError::NoValidInstance { attempts: 1 });
    }
    let f = homs[pick(rng, homs.len())].clone();
    let ideals = r2.ideals(budget)?;
    let j = &ideals[pick(rng, ideals.len())];
    let m = FiniteModule::regular(&r1, budget)?;
    let n = FiniteModule::regular(&r2, budget)?;
    let phis = ModuleHom::enumerate(&f, &m, &n, budget)?;
    if phis.is_empty() {
        return Err(AlgebraError::NoValidInstance { attempts: 1 });
    }
    let phi = &phis[pick(rng, phis.len())];
    let mut spec = InstanceSpec::basic(
        r1_spec,
        r2_spec,
        HomSpec::Table(f.map_table().to_vec()),
        j.members(),
        ModuleSpec::Regular,
        ModuleSpec::Regular,
        HomSpec::Table(phi.map_table().to_vec()),
    );
    spec.seed = Some(seed);
    realize(&spec, budget)?;
    Ok(spec)
}
