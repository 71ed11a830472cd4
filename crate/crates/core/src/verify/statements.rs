//! One checker per cataloged claim. Every checker walks the declared
//! quantifiers of its statement, counts how often the hypotheses are
//! actually satisfied, and records a pinned, re-runnable instance for
//! every failed conclusion.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::amalg::Amalgamation;
use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::idealize::Idealization;
use crate::localize::{localize_module, localize_ring, localize_submodule, LocalizedModule};
use crate::module::{intersect_chain, union_chain, FiniteModule, ModuleHom, Submodule};
use crate::ring::{Elem, FiniteRing, Ideal, MultSet, RingHom};
use crate::verdict::{Verdict, Witness};

use super::instance::{Instance, InstanceSpec};

/// Identifier of one checkable claim.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatementId {
    P2_1,
    P2_2,
    P2_3a,
    P2_3b,
    P2_4a,
    P2_4b,
    P2_6,
    P2_7,
    L3_1a,
    L3_1b,
    L3_2,
    L3_3,
    T3_4a,
    T3_4b,
    C3_5,
    C3_8_1,
    C3_8_2,
    C3_8_3,
    C3_9_1,
    C3_9_2,
    C3_9_3,
    C3_9_4,
    C3_9_5,
    C3_9_6,
    C3_9_7,
    C3_10_1,
    C3_10_2,
    C3_10_3,
    C3_10_4,
}

impl StatementId {
    pub const ALL: [StatementId; 29] = [
        StatementId::P2_1,
        StatementId::P2_2,
        StatementId::P2_3a,
        StatementId::P2_3b,
        StatementId::P2_4a,
        StatementId::P2_4b,
        StatementId::P2_6,
        StatementId::P2_7,
        StatementId::L3_1a,
        StatementId::L3_1b,
        StatementId::L3_2,
        StatementId::L3_3,
        StatementId::T3_4a,
        StatementId::T3_4b,
        StatementId::C3_5,
        StatementId::C3_8_1,
        StatementId::C3_8_2,
        StatementId::C3_8_3,
        StatementId::C3_9_1,
        StatementId::C3_9_2,
        StatementId::C3_9_3,
        StatementId::C3_9_4,
        StatementId::C3_9_5,
        StatementId::C3_9_6,
        StatementId::C3_9_7,
        StatementId::C3_10_1,
        StatementId::C3_10_2,
        StatementId::C3_10_3,
        StatementId::C3_10_4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatementId::P2_1 => "P2_1",
            StatementId::P2_2 => "P2_2",
            StatementId::P2_3a => "P2_3a",
            StatementId::P2_3b => "P2_3b",
            StatementId::P2_4a => "P2_4a",
            StatementId::P2_4b => "P2_4b",
            StatementId::P2_6 => "P2_6",
            StatementId::P2_7 => "P2_7",
            StatementId::L3_1a => "L3_1a",
            StatementId::L3_1b => "L3_1b",
            StatementId::L3_2 => "L3_2",
            StatementId::L3_3 => "L3_3",
            StatementId::T3_4a => "T3_4a",
            StatementId::T3_4b => "T3_4b",
            StatementId::C3_5 => "C3_5",
            StatementId::C3_8_1 => "C3_8_1",
            StatementId::C3_8_2 => "C3_8_2",
            StatementId::C3_8_3 => "C3_8_3",
            StatementId::C3_9_1 => "C3_9_1",
            StatementId::C3_9_2 => "C3_9_2",
            StatementId::C3_9_3 => "C3_9_3",
            StatementId::C3_9_4 => "C3_9_4",
            StatementId::C3_9_5 => "C3_9_5",
            StatementId::C3_9_6 => "C3_9_6",
            StatementId::C3_9_7 => "C3_9_7",
            StatementId::C3_10_1 => "C3_10_1",
            StatementId::C3_10_2 => "C3_10_2",
            StatementId::C3_10_3 => "C3_10_3",
            StatementId::C3_10_4 => "C3_10_4",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            StatementId::P2_1 => {
                "for 2-absorbing F and a submodule K1 not inside F, the residuals (F : K1) and (F : M) are 2-absorbing ideals"
            }
            StatementId::P2_2 => {
                "for 2-absorbing F and a scalar r outside (F : M), the colon submodule (F :_M r) is 2-absorbing and contains F"
            }
            StatementId::P2_3a => {
                "the intersection of a chain of 2-absorbing submodules is 2-absorbing"
            }
            StatementId::P2_3b => {
                "the union of a chain of 2-absorbing submodules of a finitely generated module is 2-absorbing"
            }
            StatementId::P2_4a => {
                "a 2-absorbing F whose residual misses the denominator set stays 2-absorbing after localization"
            }
            StatementId::P2_4b => {
                "if the localized submodule is 2-absorbing and no denominator is a zero divisor on M/F, then F is 2-absorbing"
            }
            StatementId::P2_6 => {
                "an ideal I is 2-absorbing exactly when I(+)M is a 2-absorbing ideal of the idealization"
            }
            StatementId::P2_7 => {
                "if I(+)F is a 2-absorbing ideal of the idealization, then I is a 2-absorbing ideal"
            }
            StatementId::L3_1a => {
                "a surjective image of a 2-absorbing submodule containing the kernel is 2-absorbing"
            }
            StatementId::L3_1b => "the preimage of a 2-absorbing submodule is 2-absorbing",
            StatementId::L3_2 => {
                "for K inside F, F is 2-absorbing exactly when F/K is 2-absorbing in M/K"
            }
            StatementId::L3_3 => {
                "F is 2-absorbing exactly when the zero submodule of M/F is 2-absorbing"
            }
            StatementId::T3_4a => {
                "the distinguished lift of F is 2-absorbing in the pair module exactly when F is 2-absorbing in M"
            }
            StatementId::T3_4b => {
                "the bar lift of N2 is 2-absorbing in the pair module exactly when N2 is 2-absorbing in the target module"
            }
            StatementId::C3_5 => {
                "in a duplication both distinguished lifts are 2-absorbing exactly when their base submodules are"
            }
            StatementId::C3_8_1 => {
                "the intersection of two distinct prime submodules lifts to a 2-absorbing pair submodule"
            }
            StatementId::C3_8_2 => {
                "on a cyclic module, a 2-absorbing residual (F : M) makes the lift of F 2-absorbing"
            }
            StatementId::C3_8_3 => {
                "on a cyclic module, a primary F whose prime radical P satisfies P^2 M inside F lifts to a 2-absorbing pair submodule"
            }
            StatementId::C3_9_1 => {
                "on a regular module, the residual (F : K1) of a 2-absorbing F lifts to a 2-absorbing pair submodule"
            }
            StatementId::C3_9_2 => {
                "on a regular module, the residual (F : M) of a 2-absorbing F lifts to a 2-absorbing pair submodule"
            }
            StatementId::C3_9_3 => {
                "the colon submodule (F :_M r) of a 2-absorbing F, for r outside (F : M), lifts to a 2-absorbing pair submodule"
            }
            StatementId::C3_9_4 => {
                "the intersection of a chain of 2-absorbing submodules lifts to a 2-absorbing pair submodule"
            }
            StatementId::C3_9_5 => {
                "the union of a chain of 2-absorbing submodules lifts to a 2-absorbing pair submodule"
            }
            StatementId::C3_9_6 => {
                "a 2-absorbing F whose residual misses the denominator set localizes to a 2-absorbing pair submodule of the localized gluing"
            }
            StatementId::C3_9_7 => {
                "if the localized F is 2-absorbing and no denominator is a zero divisor on M/F, the lift of F is 2-absorbing"
            }
            StatementId::C3_10_1 => {
                "on a multiplication module, a 2-absorbing residual (F : M) makes the lift of F 2-absorbing"
            }
            StatementId::C3_10_2 => {
                "on a multiplication module, F = IM for a 2-absorbing ideal I containing the annihilator lifts to a 2-absorbing pair submodule"
            }
            StatementId::C3_10_3 => {
                "a two-factor product submodule with one 2-absorbing factor beside a full factor, or two prime factors, lifts to a 2-absorbing pair submodule"
            }
            StatementId::C3_10_4 => {
                "an n-factor product submodule with one 2-absorbing factor beside full factors, or two prime factors beside full factors, lifts to a 2-absorbing pair submodule"
            }
        }
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        StatementId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| AlgebraError::UnknownStatement(s.into()))
    }
}

/// A failed conclusion, pinned down far enough to re-run on its own.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub statement: StatementId,
    pub instance: InstanceSpec,
    pub detail: String,
    pub witness: Option<Witness>,
}

/// Outcome of checking one statement over one or more instances.
#[derive(Debug, Clone)]
pub struct StatementReport {
    pub id: StatementId,
    pub instances: u64,
    pub cases: u64,
    pub hypotheses_met: u64,
    pub confirmed: u64,
    pub counterexamples: Vec<Counterexample>,
    pub iters: u64,
}

impl StatementReport {
    fn new(id: StatementId) -> Self {
        StatementReport {
            id,
            instances: 1,
            cases: 0,
            hypotheses_met: 0,
            confirmed: 0,
            counterexamples: Vec::new(),
            iters: 0,
        }
    }

    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn absorb(&mut self, other: StatementReport) {
        assert_eq!(self.id, other.id, "reports for different statements");
        self.instances += other.instances;
        self.cases += other.cases;
        self.hypotheses_met += other.hypotheses_met;
        self.confirmed += other.confirmed;
        self.iters += other.iters;
        self.counterexamples.extend(other.counterexamples);
    }
}

struct Ctx<'a> {
    inst: &'a Instance,
    budget: &'a Budget,
    report: StatementReport,
}

impl<'a> Ctx<'a> {
    fn new(id: StatementId, inst: &'a Instance, budget: &'a Budget) -> Self {
        Ctx { inst, budget, report: StatementReport::new(id) }
    }

    fn case(&mut self) {
        self.report.cases += 1;
    }

    fn met(&mut self) {
        self.report.hypotheses_met += 1;
    }

    fn ok(&mut self) {
        self.report.confirmed += 1;
    }

    fn track(&mut self, v: &Verdict) -> bool {
        self.report.iters += v.iters;
        v.holds
    }

    fn refute(&mut self, pinned: InstanceSpec, detail: String, witness: Option<Witness>) {
        self.report.counterexamples.push(Counterexample {
            statement: self.report.id,
            instance: pinned,
            detail,
            witness,
        });
    }
}

fn verdict_word(holds: bool) -> &'static str {
    if holds {
        "2-absorbing"
    } else {
        "not 2-absorbing"
    }
}

fn witness_text(w: &Witness, ring: &FiniteRing, module: &FiniteModule) -> String {
    w.render(|role, idx| match role {
        "m" | "member" => module.name(idx).into(),
        _ => ring.name(idx).into(),
    })
}

fn submodule_pool(
    m: &Arc<FiniteModule>,
    pin: &Option<Vec<u32>>,
    budget: &Budget,
) -> Result<Vec<Submodule>> {
    match pin {
        Some(members) => Ok(vec![Submodule::from_members(m, members.iter().copied())?]),
        None => m.submodules(budget),
    }
}

fn mult_set_pool(r: &Arc<FiniteRing>, pin: &Option<Vec<u32>>) -> Result<Vec<MultSet>> {
    if let Some(members) = pin {
        return Ok(vec![MultSet::from_members(r, members.iter().copied())?]);
    }
    let mut out: Vec<MultSet> = Vec::new();
    let push_unique = |list: &mut Vec<MultSet>, s: MultSet| {
        if !list.iter().any(|t| t.members() == s.members()) {
            list.push(s);
        }
    };
    for x in r.elements() {
        push_unique(&mut out, MultSet::generated_by(r, x)?);
    }
    push_unique(&mut out, MultSet::units(r));
    Ok(out)
}

fn scalar_pool(r: &Arc<FiniteRing>, pin: &Option<Elem>) -> Vec<Elem> {
    match pin {
        Some(x) => vec![*x],
        None => r.elements().collect(),
    }
}

fn ideal_pool(r: &Arc<FiniteRing>, pin: &Option<Vec<u32>>, budget: &Budget) -> Result<Vec<Ideal>> {
    match pin {
        Some(members) => Ok(vec![Ideal::from_members(r, members.iter().copied())?]),
        None => r.ideals(budget),
    }
}

/// Candidate chains: every pinned chain verbatim, otherwise all strictly
/// ascending runs of length one to three through the proper 2-absorbing
/// submodules.
fn chain_pool(
    m: &Arc<FiniteModule>,
    pin: &Option<Vec<Vec<u32>>>,
    budget: &Budget,
) -> Result<Vec<Vec<Submodule>>> {
    if let Some(chain) = pin {
        let built = chain
            .iter()
            .map(|members| Submodule::from_members(m, members.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        return Ok(vec![built]);
    }
    let mut two_abs = Vec::new();
    for s in m.submodules(budget)? {
        if s.is_proper() && s.is_two_absorbing(budget)?.holds {
            two_abs.push(s);
        }
    }
    let strict_below = |a: &Submodule, b: &Submodule| a.len() < b.len() && b.contains_all(a);
    let mut out: Vec<Vec<Submodule>> = Vec::new();
    for i in 0..two_abs.len() {
        out.push(vec![two_abs[i].clone()]);
        for j in 0..two_abs.len() {
            if !strict_below(&two_abs[i], &two_abs[j]) {
                continue;
            }
            out.push(vec![two_abs[i].clone(), two_abs[j].clone()]);
            for k in 0..two_abs.len() {
                if strict_below(&two_abs[j], &two_abs[k]) {
                    out.push(vec![
                        two_abs[i].clone(),
                        two_abs[j].clone(),
                        two_abs[k].clone(),
                    ]);
                }
            }
        }
    }
    Ok(out)
}

/// Check an ascending-chain hypothesis: every link proper and
/// 2-absorbing. Returns false without erroring on malformed chains so
/// pinned re-runs stay honest.
fn chain_hypothesis(ctx: &mut Ctx, chain: &[Submodule]) -> Result<bool> {
    if chain.is_empty() {
        return Ok(false);
    }
    for s in chain {
        if !s.is_proper() {
            return Ok(false);
        }
        let v = s.is_two_absorbing(ctx.budget)?;
        if !ctx.track(&v) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pin_chain(chain: &[Submodule]) -> Vec<Vec<u32>> {
    chain.iter().map(|s| s.members()).collect()
}

/// Localize the whole gluing datum at a denominator set of the first
/// ring: both rings, both modules, the ideal, and the structure maps,
/// then reglue. Surjectivity of the canonical maps makes the induced
/// maps total.
fn localized_amalgamation(
    inst: &Instance,
    s: &MultSet,
    budget: &Budget,
) -> Result<(Amalgamation, LocalizedModule)> {
    let lr1 = localize_ring(&inst.r1, s, budget)?;
    let s2 = MultSet::from_members(&inst.r2, s.members().iter().map(|&x| inst.f.apply(x)))?;
    let lr2 = localize_ring(&inst.r2, &s2, budget)?;
    let mut f_map = vec![0u32; lr1.ring.size()];
    for c in lr1.ring.elements() {
        let a = inst
            .r1
            .elements()
            .find(|&a| lr1.to_fractions.apply(a) == c)
            .expect("the canonical map reaches every fraction class");
        f_map[c as usize] = lr2.to_fractions.apply(inst.f.apply(a));
    }
    let f_loc = RingHom::new(lr1.ring.clone(), lr2.ring.clone(), f_map)?;
    let lm = localize_module(&inst.m, s, &lr1, budget)?;
    let ln = localize_module(&inst.n, &s2, &lr2, budget)?;
    let mut phi_map = vec![0u32; lm.module.size()];
    for c in lm.module.elements() {
        let x = inst
            .m
            .elements()
            .find(|&x| lm.to_fractions.apply(x) == c)
            .expect("the canonical map reaches every fraction class");
        phi_map[c as usize] = ln.to_fractions.apply(inst.phi.apply(x));
    }
    let phi_loc = ModuleHom::new(f_loc, lm.module.clone(), ln.module.clone(), phi_map)?;
    let j_loc = Ideal::from_members(
        &lr2.ring,
        inst.j.members().iter().map(|&x| lr2.to_fractions.apply(x)),
    )?;
    let glued = Amalgamation::new(phi_loc.ring_hom(), &j_loc, &phi_loc, budget)?;
    Ok((glued, lm))
}

/// Decide all conclusions of one statement over one instance.
pub fn verify_statement(id: StatementId, inst: &Instance, budget: &Budget) -> Result<StatementReport> {
    let mut ctx = Ctx::new(id, inst, budget);
    match id {
        StatementId::P2_1 => check_p2_1(&mut ctx)?,
        StatementId::P2_2 => check_p2_2(&mut ctx)?,
        StatementId::P2_3a => check_p2_3a(&mut ctx)?,
        StatementId::P2_3b => check_p2_3b(&mut ctx)?,
        StatementId::P2_4a => check_p2_4a(&mut ctx)?,
        StatementId::P2_4b => check_p2_4b(&mut ctx)?,
        StatementId::P2_6 => check_p2_6(&mut ctx)?,
        StatementId::P2_7 => check_p2_7(&mut ctx)?,
        StatementId::L3_1a => check_l3_1a(&mut ctx)?,
        StatementId::L3_1b => check_l3_1b(&mut ctx)?,
        StatementId::L3_2 => check_l3_2(&mut ctx)?,
        StatementId::L3_3 => check_l3_3(&mut ctx)?,
        StatementId::T3_4a => check_t3_4a(&mut ctx)?,
        StatementId::T3_4b => check_t3_4b(&mut ctx)?,
        StatementId::C3_5 => check_c3_5(&mut ctx)?,
        StatementId::C3_8_1 => check_c3_8_1(&mut ctx)?,
        StatementId::C3_8_2 => check_c3_8_2(&mut ctx)?,
        StatementId::C3_8_3 => check_c3_8_3(&mut ctx)?,
        StatementId::C3_9_1 => check_c3_9_1(&mut ctx)?,
        StatementId::C3_9_2 => check_c3_9_2(&mut ctx)?,
        StatementId::C3_9_3 => check_c3_9_3(&mut ctx)?,
        StatementId::C3_9_4 => check_c3_9_4(&mut ctx)?,
        StatementId::C3_9_5 => check_c3_9_5(&mut ctx)?,
        StatementId::C3_9_6 => check_c3_9_6(&mut ctx)?,
        StatementId::C3_9_7 => check_c3_9_7(&mut ctx)?,
        StatementId::C3_10_1 => check_c3_10_1(&mut ctx)?,
        StatementId::C3_10_2 => check_c3_10_2(&mut ctx)?,
        StatementId::C3_10_3 => check_products(&mut ctx, Some(2))?,
        StatementId::C3_10_4 => check_products(&mut ctx, None)?,
    }
    Ok(ctx.report)
}

fn check_p2_1(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    let ks = submodule_pool(&m, &ctx.inst.spec.k1, ctx.budget)?;
    for f in fs.iter().filter(|f| f.is_proper()) {
        let vf = f.is_two_absorbing(ctx.budget)?;
        ctx.report.iters += vf.iters;
        for k1 in &ks {
            ctx.case();
            if !vf.holds || f.contains_all(k1) {
                continue;
            }
            ctx.met();
            let by_k = f.residual_subset(&k1.members())?;
            let by_m = f.residual_module();
            let v1 = by_k.is_two_absorbing(false, ctx.budget)?;
            let v2 = by_m.is_two_absorbing(false, ctx.budget)?;
            let h1 = ctx.track(&v1);
            let h2 = ctx.track(&v2);
            if h1 && h2 {
                ctx.ok();
            } else {
                let pin = ctx.inst.pin(|s| {
                    s.f_sub = Some(f.members());
                    s.k1 = Some(k1.members());
                });
                let (which, v) = if h1 { ("(F : M)", v2) } else { ("(F : K1)", v1) };
                let w = v.witness;
                let detail = format!(
                    "F = {}, K1 = {}: residual {} is not a 2-absorbing ideal ({})",
                    f.describe(),
                    k1.describe(),
                    which,
                    w.as_ref().map(|w| witness_text(w, &ctx.inst.r1, &m)).unwrap_or_default(),
                );
                ctx.refute(pin, detail, w);
            }
        }
    }
    Ok(())
}

fn check_p2_2(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    let rs = scalar_pool(&ctx.inst.r1, &ctx.inst.spec.r_elem);
    for f in fs.iter().filter(|f| f.is_proper()) {
        let vf = f.is_two_absorbing(ctx.budget)?;
        ctx.report.iters += vf.iters;
        let res = f.residual_module();
        for &r in &rs {
            ctx.case();
            if !vf.holds || res.contains(r) {
                continue;
            }
            ctx.met();
            let colon = f.colon_element(r)?;
            let v = colon.is_two_absorbing(ctx.budget)?;
            let holds = ctx.track(&v);
            if holds && colon.contains_all(f) {
                ctx.ok();
            } else {
                let pin = ctx.inst.pin(|s| {
                    s.f_sub = Some(f.members());
                    s.r_elem = Some(r);
                });
                let detail = if holds {
                    format!(
                        "F = {}, r = {}: (F :_M r) = {} does not contain F",
                        f.describe(),
                        ctx.inst.r1.name(r),
                        colon.describe(),
                    )
                } else {
                    format!(
                        "F = {}, r = {}: (F :_M r) is not 2-absorbing",
                        f.describe(),
                        ctx.inst.r1.name(r),
                    )
                };
                ctx.refute(pin, detail, v.witness);
            }
        }
    }
    Ok(())
}

fn check_p2_3a(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let chains = chain_pool(&m, &ctx.inst.spec.chain, ctx.budget)?;
    for chain in &chains {
        ctx.case();
        if !chain_hypothesis(ctx, chain)? {
            continue;
        }
        let inter = match intersect_chain(chain) {
            Ok(i) => i,
            Err(_) => continue,
        };
        ctx.met();
        let v = inter.is_two_absorbing(ctx.budget)?;
        if ctx.track(&v) {
            ctx.ok();
        } else {
            let pin = ctx.inst.pin(|s| s.chain = Some(pin_chain(chain)));
            let detail = format!(
                "chain intersection {} is not 2-absorbing",
                inter.describe(),
            );
            ctx.refute(pin, detail, v.witness);
        }
    }
    Ok(())
}

fn check_p2_3b(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let chains = chain_pool(&m, &ctx.inst.spec.chain, ctx.budget)?;
    for chain in &chains {
        ctx.case();
        if !chain_hypothesis(ctx, chain)? {
            continue;
        }
        let union = match union_chain(chain) {
            Ok(u) => u,
            Err(_) => continue,
        };
        ctx.met();
        let v = union.is_two_absorbing(ctx.budget)?;
        if ctx.track(&v) {
            ctx.ok();
        } else {
            let pin = ctx.inst.pin(|s| s.chain = Some(pin_chain(chain)));
            let detail = format!("chain union {} is not 2-absorbing", union.describe());
            ctx.refute(pin, detail, v.witness);
        }
    }
    Ok(())
}

fn check_p2_4a(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    let sets = mult_set_pool(&ctx.inst.r1, &ctx.inst.spec.s)?;
    for f in fs.iter().filter(|f| f.is_proper()) {
        let vf = f.is_two_absorbing(ctx.budget)?;
        ctx.report.iters += vf.iters;
        let res = f.residual_module();
        for s in &sets {
            ctx.case();
            if !vf.holds || s.members().iter().any(|&x| res.contains(x)) {
                continue;
            }
            ctx.met();
            let lr = localize_ring(&ctx.inst.r1, s, ctx.budget)?;
            let lm = localize_module(&m, s, &lr, ctx.budget)?;
            let lf = localize_submodule(f, &lm)?;
            if !lf.is_proper() {
                let pin = ctx.inst.pin(|sp| {
                    sp.f_sub = Some(f.members());
                    sp.s = Some(s.members());
                });
                let detail = format!(
                    "F = {}, S = {}: the localized submodule fills the localized module",
                    f.describe(),
                    s.describe(),
                );
                ctx.refute(pin, detail, None);
                continue;
            }
            let v = lf.is_two_absorbing(ctx.budget)?;
            if ctx.track(&v) {
                ctx.ok();
            } else {
                let pin = ctx.inst.pin(|sp| {
                    sp.f_sub = Some(f.members());
                    sp.s = Some(s.members());
                });
                let detail = format!(
                    "F = {}, S = {}: the localized submodule is not 2-absorbing",
                    f.describe(),
                    s.describe(),
                );
                ctx.refute(pin, detail, v.witness);
            }
        }
    }
    Ok(())
}

fn check_p2_4b(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    let sets = mult_set_pool(&ctx.inst.r1, &ctx.inst.spec.s)?;
    for f in fs.iter().filter(|f| f.is_proper()) {
        let zdiv = m.zero_divisors_on_quotient(f)?;
        for s in &sets {
            ctx.case();
            if zdiv.iter().any(|&x| s.contains(x)) {
                continue;
            }
            let lr = localize_ring(&ctx.inst.r1, s, ctx.budget)?;
            let lm = localize_module(&m, s, &lr, ctx.budget)?;
            let lf = localize_submodule(f, &lm)?;
            if !lf.is_proper() {
                continue;
            }
            let vl = lf.is_two_absorbing(ctx.budget)?;
            if !ctx.track(&vl) {
                continue;
            }
            ctx.met();
            let vf = f.is_two_absorbing(ctx.budget)?;
            if ctx.track(&vf) {
                ctx.ok();
            } else {
                let pin = ctx.inst.pin(|sp| {
                    sp.f_sub = Some(f.members());
                    sp.s = Some(s.members());
                });
                let detail = format!(
                    "F = {}, S = {}: the localized submodule is 2-absorbing but F is not",
                    f.describe(),
                    s.describe(),
                );
                ctx.refute(pin, detail, vf.witness);
            }
        }
    }
    Ok(())
}

fn check_p2_6(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let idz = Idealization::new(&m, ctx.budget)?;
    let full = Submodule::full(&m);
    let ideals = ideal_pool(&ctx.inst.r1, &ctx.inst.spec.i_ideal, ctx.budget)?;
    for i in ideals.iter().filter(|i| i.is_proper()) {
        ctx.case();
        ctx.met();
        let vi = i.is_two_absorbing(false, ctx.budget)?;
        let emb = idz.embed_ideal(i, &full, ctx.budget)?;
        let ve = emb.is_two_absorbing(false, ctx.budget)?;
        let hi = ctx.track(&vi);
        let he = ctx.track(&ve);
        if hi == he {
            ctx.ok();
        } else {
            let pin = ctx.inst.pin(|s| s.i_ideal = Some(i.members()));
            let detail = format!(
                "I = {}: I is {} but I(+)M is {}",
                i.describe(),
                verdict_word(hi),
                verdict_word(he),
            );
            ctx.refute(pin, detail, vi.witness.or(ve.witness));
        }
    }
    Ok(())
}

fn check_p2_7(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let idz = Idealization::new(&m, ctx.budget)?;
    let ideals = ideal_pool(&ctx.inst.r1, &ctx.inst.spec.i_ideal, ctx.budget)?;
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    for i in ideals.iter().filter(|i| i.is_proper()) {
        for f in fs.iter().filter(|f| f.is_proper()) {
            ctx.case();
            let im = Submodule::ideal_times(i, &m, ctx.budget)?;
            if !f.contains_all(&im) {
                continue;
            }
            let emb = idz.embed_ideal(i, f, ctx.budget)?;
            let ve = emb.is_two_absorbing(false, ctx.budget)?;
            if !ctx.track(&ve) {
                continue;
            }
            ctx.met();
            let vi = i.is_two_absorbing(false, ctx.budget)?;
            if ctx.track(&vi) {
                ctx.ok();
            } else {
                let pin = ctx.inst.pin(|s| {
                    s.i_ideal = Some(i.members());
                    s.f_sub = Some(f.members());
                });
                let detail = format!(
                    "I = {}, F = {}: I(+)F is 2-absorbing but I is not",
                    i.describe(),
                    f.describe(),
                );
                ctx.refute(pin, detail, vi.witness);
            }
        }
    }
    Ok(())
}

fn check_l3_1a(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let ks = submodule_pool(&m, &ctx.inst.spec.k1, ctx.budget)?;
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    for k in &ks {
        let q = FiniteModule::quotient(&m, k, ctx.budget)?;
        for f in &fs {
            ctx.case();
            if !f.is_proper() || !f.contains_all(k) {
                continue;
            }
            let vf = f.is_two_absorbing(ctx.budget)?;
            if !ctx.track(&vf) {
                continue;
            }
            ctx.met();
            let image = q.projection.image_submodule(f)?;
            let v = image.is_two_absorbing(ctx.budget)?;
            if ctx.track(&v) {
                ctx.ok();
            } else {
                let pin = ctx.inst.pin(|s| {
                    s.f_sub = Some(f.members());
                    s.k1 = Some(k.members());
                });
                let detail = format!(
                    "F = {}, kernel = {}: the image of F is not 2-absorbing",
                    f.describe(),
                    k.describe(),
                );
                ctx.refute(pin, detail, v.witness);
            }
        }
    }
    Ok(())
}

fn check_l3_1b(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let ks = submodule_pool(&m, &ctx.inst.spec.k1, ctx.budget)?;
    for k in &ks {
        let q = FiniteModule::quotient(&m, k, ctx.budget)?;
        let pool = submodule_pool(&q.module, &ctx.inst.spec.n2, ctx.budget)?;
        for n2 in pool.iter().filter(|n| n.is_proper()) {
            ctx.case();
            let vn = n2.is_two_absorbing(ctx.budget)?;
            if !ctx.track(&vn) {
                continue;
            }
            ctx.met();
            let pre = q.projection.preimage_submodule(n2)?;
            let v = pre.is_two_absorbing(ctx.budget)?;
            if ctx.track(&v) {
                ctx.ok();
            } else {
                let pin = ctx.inst.pin(|s| {
                    s.k1 = Some(k.members());
                    s.n2 = Some(n2.members());
                });
                let detail = format!(
                    "kernel = {}, N2 = {}: the preimage of N2 is not 2-absorbing",
                    k.describe(),
                    n2.describe(),
                );
                ctx.refute(pin, detail, v.witness);
            }
        }
    }
    Ok(())
}

fn check_l3_2(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let ks = submodule_pool(&m, &ctx.inst.spec.k1, ctx.budget)?;
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    for k in &ks {
        let q = FiniteModule::quotient(&m, k, ctx.budget)?;
        for f in &fs {
            ctx.case();
            if !f.is_proper() || !f.contains_all(k) {
                continue;
            }
            ctx.met();
            let vf = f.is_two_absorbing(ctx.budget)?;
            let fq = q.projection.image_submodule(f)?;
            let vq = fq.is_two_absorbing(ctx.budget)?;
            let hf = ctx.track(&vf);
            let hq = ctx.track(&vq);
            if hf == hq {
                ctx.ok();
            } else {
                let pin = ctx.inst.pin(|s| {
                    s.f_sub = Some(f.members());
                    s.k1 = Some(k.members());
                });
                let detail = format!(
                    "F = {}, K = {}: F is {} but F/K is {}",
                    f.describe(),
                    k.describe(),
                    verdict_word(hf),
                    verdict_word(hq),
                );
                ctx.refute(pin, detail, vf.witness.or(vq.witness));
            }
        }
    }
    Ok(())
}

fn check_l3_3(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    for f in fs.iter().filter(|f| f.is_proper()) {
        ctx.case();
        ctx.met();
        let vf = f.is_two_absorbing(ctx.budget)?;
        let q = FiniteModule::quotient(&m, f, ctx.budget)?;
        let zero = Submodule::zero(&q.module);
        let vz = zero.is_two_absorbing(ctx.budget)?;
        let hf = ctx.track(&vf);
        let hz = ctx.track(&vz);
        if hf == hz {
            ctx.ok();
        } else {
            let pin = ctx.inst.pin(|s| s.f_sub = Some(f.members()));
            let detail = format!(
                "F = {}: F is {} but the zero submodule of M/F is {}",
                f.describe(),
                verdict_word(hf),
                verdict_word(hz),
            );
            ctx.refute(pin, detail, vf.witness.or(vz.witness));
        }
    }
    Ok(())
}

fn check_t3_4a(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    for f in fs.iter().filter(|f| f.is_proper()) {
        ctx.case();
        ctx.met();
        let lift = ctx.inst.amalg.sub_amalg(f)?;
        let vl = lift.is_two_absorbing(ctx.budget)?;
        let vb = f.is_two_absorbing(ctx.budget)?;
        let hl = ctx.track(&vl);
        let hb = ctx.track(&vb);
        let _iso = ctx.inst.amalg.base_quotient_iso(f, ctx.budget)?;
        if hl == hb {
            ctx.ok();
        } else {
            let pin = ctx.inst.pin(|s| s.f_sub = Some(f.members()));
            let detail = format!(
                "F = {}: the base side is {} but the lift is {}",
                f.describe(),
                verdict_word(hb),
                verdict_word(hl),
            );
            ctx.refute(pin, detail, vb.witness.or(vl.witness));
        }
    }
    Ok(())
}

fn check_t3_4b(ctx: &mut Ctx) -> Result<()> {
    let target = ctx.inst.amalg.target_module().clone();
    let pool = match &ctx.inst.spec.n2 {
        Some(ambient) => {
            let mut members = Vec::new();
            for &x in ambient {
                let pos = ctx
                    .inst
                    .amalg
                    .target_members()
                    .binary_search(&x)
                    .map_err(|_| {
                        AlgebraError::BadInstance(
                            "pinned element lies outside the target module".into(),
                        )
                    })?;
                members.push(pos as u32);
            }
            vec![Submodule::from_members(&target, members)?]
        }
        None => target.submodules(ctx.budget)?,
    };
    for n2 in pool.iter().filter(|n| n.is_proper()) {
        ctx.case();
        ctx.met();
        let bar = ctx.inst.amalg.bar_submodule(n2)?;
        let vbar = bar.is_two_absorbing(ctx.budget)?;
        let vn = n2.is_two_absorbing(ctx.budget)?;
        let hbar = ctx.track(&vbar);
        let hn = ctx.track(&vn);
        if hbar == hn {
            ctx.ok();
        } else {
            let ambient: Vec<u32> = n2
                .members()
                .iter()
                .map(|&i| ctx.inst.amalg.target_members()[i as usize])
                .collect();
            let pin = ctx.inst.pin(|s| s.n2 = Some(ambient));
            let detail = format!(
                "N2 = {}: the target side is {} but the bar lift is {}",
                n2.describe(),
                verdict_word(hn),
                verdict_word(hbar),
            );
            ctx.refute(pin, detail, vn.witness.or(vbar.witness));
        }
    }
    Ok(())
}

fn is_identity_module_map(phi: &ModuleHom) -> bool {
    phi.dom().size() == phi.cod().size()
        && phi.map_table().iter().enumerate().all(|(i, &y)| i as u32 == y)
}

fn check_c3_5(ctx: &mut Ctx) -> Result<()> {
    if !ctx.inst.f.is_identity_shape() || !is_identity_module_map(&ctx.inst.phi) {
        return Ok(());
    }
    let m = ctx.inst.m.clone();
    let amalg = &ctx.inst.amalg;
    let jn = amalg.jn();

    // Carrier shape: the duplication consists exactly of the pairs that
    // differ by an element of JM.
    ctx.case();
    ctx.met();
    let mut shape_ok = true;
    for i in 0..amalg.module().size() {
        let (x, t) = amalg.module_pair(i as u32);
        if !jn.contains(m.sub(t, x)) {
            shape_ok = false;
            break;
        }
    }
    if shape_ok {
        ctx.ok();
    } else {
        let pin = ctx.inst.pin(|_| {});
        ctx.refute(pin, "a duplicated pair does not differ by JM".into(), None);
    }

    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    for f in fs.iter().filter(|f| f.is_proper()) {
        ctx.case();
        ctx.met();
        let lift = amalg.sub_amalg(f)?;
        let vl = lift.is_two_absorbing(ctx.budget)?;
        let vb = f.is_two_absorbing(ctx.budget)?;
        let hl = ctx.track(&vl);
        let hb = ctx.track(&vb);
        if hl == hb {
            ctx.ok();
        } else {
            let pin = ctx.inst.pin(|s| s.f_sub = Some(f.members()));
            let detail = format!(
                "duplication, F = {}: the base side is {} but the lift is {}",
                f.describe(),
                verdict_word(hb),
                verdict_word(hl),
            );
            ctx.refute(pin, detail, vb.witness.or(vl.witness));
        }
    }

    let target = amalg.target_module().clone();
    let pool = match &ctx.inst.spec.n2 {
        Some(ambient) => {
            let mut members = Vec::new();
            for &x in ambient {
                match amalg.target_members().binary_search(&x) {
                    Ok(pos) => members.push(pos as u32),
                    Err(_) => {
                        return Err(AlgebraError::BadInstance(
                            "pinned element lies outside the target module".into(),
                        ))
                    }
                }
            }
            vec![Submodule::from_members(&target, members)?]
        }
        None => target.submodules(ctx.budget)?,
    };
    for n2 in pool.iter().filter(|n| n.is_proper()) {
        ctx.case();
        ctx.met();
        let bar = amalg.bar_submodule(n2)?;
        let vbar = bar.is_two_absorbing(ctx.budget)?;
        let vn = n2.is_two_absorbing(ctx.budget)?;
        let hbar = ctx.track(&vbar);
        let hn = ctx.track(&vn);
        if hbar == hn {
            ctx.ok();
        } else {
            let ambient: Vec<u32> = n2
                .members()
                .iter()
                .map(|&i| amalg.target_members()[i as usize])
                .collect();
            let pin = ctx.inst.pin(|s| s.n2 = Some(ambient));
            let detail = format!(
                "duplication, N2 = {}: the base side is {} but the bar lift is {}",
                n2.describe(),
                verdict_word(hn),
                verdict_word(hbar),
            );
            ctx.refute(pin, detail, vn.witness.or(vbar.witness));
        }
    }
    Ok(())
}

/// Lift a submodule and demand the lift be 2-absorbing; shared tail of
/// the one-directional corollaries.
fn expect_lift_two_absorbing(
    ctx: &mut Ctx,
    f: &Submodule,
    pin: InstanceSpec,
    context: &str,
) -> Result<()> {
    let lift = ctx.inst.amalg.sub_amalg(f)?;
    let v = lift.is_two_absorbing(ctx.budget)?;
    if ctx.track(&v) {
        ctx.ok();
    } else {
        let text = v
            .witness
            .as_ref()
            .map(|w| witness_text(w, ctx.inst.amalg.ring(), ctx.inst.amalg.module()))
            .unwrap_or_default();
        let detail = format!("{context}: the lift of {} is not 2-absorbing ({text})", f.describe());
        ctx.refute(pin, detail, v.witness);
    }
    Ok(())
}

fn check_c3_8_1(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let mut primes = Vec::new();
    for s in m.submodules(ctx.budget)? {
        if !s.is_proper() {
            continue;
        }
        let v = s.is_prime(ctx.budget)?;
        if ctx.track(&v) {
            primes.push(s);
        }
    }
    match &ctx.inst.spec.f_sub {
        Some(members) => {
            let f = Submodule::from_members(&m, members.iter().copied())?;
            ctx.case();
            let mut is_pair_meet = false;
            'outer: for i in 0..primes.len() {
                for j in i + 1..primes.len() {
                    if primes[i].intersection(&primes[j])?.members() == f.members() {
                        is_pair_meet = true;
                        break 'outer;
                    }
                }
            }
            if is_pair_meet {
                ctx.met();
                let pin = ctx.inst.pin(|s| s.f_sub = Some(f.members()));
                expect_lift_two_absorbing(ctx, &f, pin, "pinned prime pair meet")?;
            }
        }
        None => {
            for i in 0..primes.len() {
                for j in i + 1..primes.len() {
                    ctx.case();
                    ctx.met();
                    let f = primes[i].intersection(&primes[j])?;
                    let pin = ctx.inst.pin(|s| s.f_sub = Some(f.members()));
                    let context = format!(
                        "primes {} and {}",
                        primes[i].describe(),
                        primes[j].describe(),
                    );
                    expect_lift_two_absorbing(ctx, &f, pin, &context)?;
                }
            }
        }
    }
    Ok(())
}

fn check_c3_8_2(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    for f in fs.iter().filter(|f| f.is_proper()) {
        ctx.case();
        if !m.is_cyclic() {
            continue;
        }
        let res = f.residual_module();
        if !res.is_proper() {
            continue;
        }
        let v = res.is_two_absorbing(false, ctx.budget)?;
        if !ctx.track(&v) {
            continue;
        }
        ctx.met();
        let pin = ctx.inst.pin(|s| s.f_sub = Some(f.members()));
        expect_lift_two_absorbing(ctx, f, pin, "cyclic module, 2-absorbing residual")?;
    }
    Ok(())
}

fn check_c3_8_3(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    for f in fs.iter().filter(|f| f.is_proper()) {
        ctx.case();
        if !m.is_cyclic() {
            continue;
        }
        let (vp, p) = f.is_primary(ctx.budget)?;
        if !ctx.track(&vp) {
            continue;
        }
        if !p.is_proper() {
            continue;
        }
        let vprime = p.is_prime(ctx.budget)?;
        if !ctx.track(&vprime) {
            continue;
        }
        let p2 = p.product(&p, ctx.budget)?;
        let p2m = Submodule::ideal_times(&p2, &m, ctx.budget)?;
        if !f.contains_all(&p2m) {
            continue;
        }
        ctx.met();
        let pin = ctx.inst.pin(|s| s.f_sub = Some(f.members()));
        expect_lift_two_absorbing(ctx, f, pin, "primary submodule with prime radical")?;
    }
    Ok(())
}

fn check_c3_9_1(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    if !m.is_regular() {
        return Ok(());
    }
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    let ks = submodule_pool(&m, &ctx.inst.spec.k1, ctx.budget)?;
    for f in fs.iter().filter(|f| f.is_proper()) {
        let vf = f.is_two_absorbing(ctx.budget)?;
        ctx.report.iters += vf.iters;
        for k1 in &ks {
            ctx.case();
            if !vf.holds || f.contains_all(k1) {
                continue;
            }
            ctx.met();
            let resid = f.residual_subset(&k1.members())?;
            let as_sub = Submodule::from_members(&m, resid.members())?;
            let pin = ctx.inst.pin(|s| {
                s.f_sub = Some(f.members());
                s.k1 = Some(k1.members());
            });
            let context = format!("F = {}, K1 = {}", f.describe(), k1.describe());
            expect_lift_two_absorbing(ctx, &as_sub, pin, &context)?;
        }
    }
    Ok(())
}

fn check_c3_9_2(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    if !m.is_regular() {
        return Ok(());
    }
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    for f in fs.iter().filter(|f| f.is_proper()) {
        ctx.case();
        let vf = f.is_two_absorbing(ctx.budget)?;
        if !ctx.track(&vf) {
            continue;
        }
        ctx.met();
        let resid = f.residual_module();
        let as_sub = Submodule::from_members(&m, resid.members())?;
        let pin = ctx.inst.pin(|s| s.f_sub = Some(f.members()));
        let context = format!("F = {}", f.describe());
        expect_lift_two_absorbing(ctx, &as_sub, pin, &context)?;
    }
    Ok(())
}

fn check_c3_9_3(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    let rs = scalar_pool(&ctx.inst.r1, &ctx.inst.spec.r_elem);
    for f in fs.iter().filter(|f| f.is_proper()) {
        let vf = f.is_two_absorbing(ctx.budget)?;
        ctx.report.iters += vf.iters;
        let res = f.residual_module();
        for &r in &rs {
            ctx.case();
            if !vf.holds || res.contains(r) {
                continue;
            }
            ctx.met();
            let colon = f.colon_element(r)?;
            let pin = ctx.inst.pin(|s| {
                s.f_sub = Some(f.members());
                s.r_elem = Some(r);
            });
            let context = format!("F = {}, r = {}", f.describe(), ctx.inst.r1.name(r));
            expect_lift_two_absorbing(ctx, &colon, pin, &context)?;
        }
    }
    Ok(())
}

fn check_c3_9_4(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let chains = chain_pool(&m, &ctx.inst.spec.chain, ctx.budget)?;
    for chain in &chains {
        ctx.case();
        if !chain_hypothesis(ctx, chain)? {
            continue;
        }
        let inter = match intersect_chain(chain) {
            Ok(i) => i,
            Err(_) => continue,
        };
        let vi = inter.is_two_absorbing(ctx.budget)?;
        if !ctx.track(&vi) {
            continue;
        }
        ctx.met();
        let pin = ctx.inst.pin(|s| s.chain = Some(pin_chain(chain)));
        expect_lift_two_absorbing(ctx, &inter, pin, "chain intersection")?;
    }
    Ok(())
}

fn check_c3_9_5(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let chains = chain_pool(&m, &ctx.inst.spec.chain, ctx.budget)?;
    for chain in &chains {
        ctx.case();
        if !chain_hypothesis(ctx, chain)? {
            continue;
        }
        let union = match union_chain(chain) {
            Ok(u) => u,
            Err(_) => continue,
        };
        let vu = union.is_two_absorbing(ctx.budget)?;
        if !ctx.track(&vu) {
            continue;
        }
        ctx.met();
        let pin = ctx.inst.pin(|s| s.chain = Some(pin_chain(chain)));
        expect_lift_two_absorbing(ctx, &union, pin, "chain union")?;
    }
    Ok(())
}

fn check_c3_9_6(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    let sets = mult_set_pool(&ctx.inst.r1, &ctx.inst.spec.s)?;
    let mut cache: BTreeMap<Vec<Elem>, (Amalgamation, LocalizedModule)> = BTreeMap::new();
    for f in fs.iter().filter(|f| f.is_proper()) {
        let vf = f.is_two_absorbing(ctx.budget)?;
        ctx.report.iters += vf.iters;
        let res = f.residual_module();
        for s in &sets {
            ctx.case();
            if !vf.holds || s.members().iter().any(|&x| res.contains(x)) {
                continue;
            }
            ctx.met();
            if !cache.contains_key(&s.members()) {
                cache.insert(s.members(), localized_amalgamation(ctx.inst, s, ctx.budget)?);
            }
            let (glued, lm) = &cache[&s.members()];
            let lf = localize_submodule(f, lm)?;
            let pin = ctx.inst.pin(|sp| {
                sp.f_sub = Some(f.members());
                sp.s = Some(s.members());
            });
            if !lf.is_proper() {
                let detail = format!(
                    "F = {}, S = {}: the localized submodule fills the localized module",
                    f.describe(),
                    s.describe(),
                );
                ctx.refute(pin, detail, None);
                continue;
            }
            let lift = glued.sub_amalg(&lf)?;
            let v = lift.is_two_absorbing(ctx.budget)?;
            if ctx.track(&v) {
                ctx.ok();
            } else {
                let detail = format!(
                    "F = {}, S = {}: the localized lift is not 2-absorbing",
                    f.describe(),
                    s.describe(),
                );
                ctx.refute(pin, detail, v.witness);
            }
        }
    }
    Ok(())
}

fn check_c3_9_7(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    let sets = mult_set_pool(&ctx.inst.r1, &ctx.inst.spec.s)?;
    for f in fs.iter().filter(|f| f.is_proper()) {
        let zdiv = m.zero_divisors_on_quotient(f)?;
        for s in &sets {
            ctx.case();
            if zdiv.iter().any(|&x| s.contains(x)) {
                continue;
            }
            let lr = localize_ring(&ctx.inst.r1, s, ctx.budget)?;
            let lm = localize_module(&m, s, &lr, ctx.budget)?;
            let lf = localize_submodule(f, &lm)?;
            if !lf.is_proper() {
                continue;
            }
            let vl = lf.is_two_absorbing(ctx.budget)?;
            if !ctx.track(&vl) {
                continue;
            }
            ctx.met();
            let pin = ctx.inst.pin(|sp| {
                sp.f_sub = Some(f.members());
                sp.s = Some(s.members());
            });
            let context = format!("F = {}, S = {}", f.describe(), s.describe());
            expect_lift_two_absorbing(ctx, f, pin, &context)?;
        }
    }
    Ok(())
}

fn check_c3_10_1(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let vm = m.is_multiplication(ctx.budget)?;
    ctx.report.iters += vm.iters;
    let fs = submodule_pool(&m, &ctx.inst.spec.f_sub, ctx.budget)?;
    for f in fs.iter().filter(|f| f.is_proper()) {
        ctx.case();
        if !vm.holds {
            continue;
        }
        let res = f.residual_module();
        if !res.is_proper() {
            continue;
        }
        let v = res.is_two_absorbing(false, ctx.budget)?;
        if !ctx.track(&v) {
            continue;
        }
        ctx.met();
        let pin = ctx.inst.pin(|s| s.f_sub = Some(f.members()));
        expect_lift_two_absorbing(ctx, f, pin, "multiplication module, 2-absorbing residual")?;
    }
    Ok(())
}

fn check_c3_10_2(ctx: &mut Ctx) -> Result<()> {
    let m = ctx.inst.m.clone();
    let vm = m.is_multiplication(ctx.budget)?;
    ctx.report.iters += vm.iters;
    let ann = m.annihilator();
    let ideals = ideal_pool(&ctx.inst.r1, &ctx.inst.spec.i_ideal, ctx.budget)?;
    for i in &ideals {
        ctx.case();
        if !vm.holds || !i.is_proper() {
            continue;
        }
        let vi = i.is_two_absorbing(false, ctx.budget)?;
        if !ctx.track(&vi) {
            continue;
        }
        if !ann.members().iter().all(|&x| i.contains(x)) {
            continue;
        }
        let f = Submodule::ideal_times(i, &m, ctx.budget)?;
        if !f.is_proper() {
            continue;
        }
        ctx.met();
        let pin = ctx.inst.pin(|s| s.i_ideal = Some(i.members()));
        let context = format!("I = {}, F = IM = {}", i.describe(), f.describe());
        expect_lift_two_absorbing(ctx, &f, pin, &context)?;
    }
    Ok(())
}

struct FactorFact {
    members: Vec<Elem>,
    full: bool,
    two_abs: bool,
    prime: bool,
}

/// Shared checker for the product-submodule statements. The factor-wise
/// hypothesis accepted here is the repaired one: a single 2-absorbing
/// factor only lifts when every other factor is full, and a pair of
/// prime factors only lifts when every remaining factor is full.
fn check_products(ctx: &mut Ctx, exact_len: Option<usize>) -> Result<()> {
    let shape = match &ctx.inst.spec.product_shape {
        Some(s) => s.clone(),
        None => return Ok(()),
    };
    if let Some(len) = exact_len {
        if shape.len() != len {
            return Ok(());
        }
    }
    if shape.len() < 2 {
        return Ok(());
    }
    let m = ctx.inst.m.clone();
    let mut facts: Vec<Vec<FactorFact>> = Vec::new();
    for &size in &shape {
        let ring = FiniteRing::zmod(size, ctx.budget)?;
        let module = FiniteModule::regular(&ring, ctx.budget)?;
        let mut column = Vec::new();
        for sub in module.submodules(ctx.budget)? {
            let full = !sub.is_proper();
            let two_abs = if full {
                false
            } else {
                let v = sub.is_two_absorbing(ctx.budget)?;
                ctx.track(&v)
            };
            let prime = if full {
                false
            } else {
                let v = sub.is_prime(ctx.budget)?;
                ctx.track(&v)
            };
            column.push(FactorFact { members: sub.members(), full, two_abs, prime });
        }
        facts.push(column);
    }

    let pinned: Option<Vec<u32>> = ctx.inst.spec.f_sub.clone();
    let mut choice = vec![0usize; shape.len()];
    loop {
        let tuple: Vec<&FactorFact> = choice
            .iter()
            .enumerate()
            .map(|(k, &c)| &facts[k][c])
            .collect();
        let mut members = vec![0u32];
        for (k, fact) in tuple.iter().enumerate() {
            let mut next = Vec::with_capacity(members.len() * fact.members.len());
            for &acc in &members {
                for &c in &fact.members {
                    next.push(acc * shape[k] + c);
                }
            }
            members = next;
        }
        members.sort_unstable();
        let matches_pin = match &pinned {
            Some(want) => {
                let mut want = want.clone();
                want.sort_unstable();
                want == members
            }
            None => true,
        };
        if matches_pin {
            ctx.case();
            let n = tuple.len();
            let mut hyp = (0..n).any(|k| {
                tuple[k].two_abs && (0..n).all(|i| i == k || tuple[i].full)
            });
            if !hyp {
                hyp = (0..n).any(|k1| {
                    tuple[k1].prime
                        && (k1 + 1..n).any(|k2| {
                            tuple[k2].prime
                                && (0..n).all(|i| i == k1 || i == k2 || tuple[i].full)
                        })
                });
            }
            if hyp {
                ctx.met();
                let f = Submodule::from_members(&m, members.iter().copied())?;
                let pin = ctx.inst.pin(|s| s.f_sub = Some(f.members()));
                expect_lift_two_absorbing(ctx, &f, pin, "factor-wise product submodule")?;
            }
        }
        // odometer step
        let mut k = 0;
        loop {
            choice[k] += 1;
            if choice[k] < facts[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
            if k == shape.len() {
                return Ok(());
            }
        }
    }
}
