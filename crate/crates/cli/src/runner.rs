//! Subcommand implementations. Each returns an [`Outcome`] whose
//! `failures` count drives the process exit code: refuted verdicts are
//! outcomes, not errors, so a counterexample still renders a full
//! report.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use bowtie_core::amalg::Amalgamation;
use bowtie_core::localize::{localize_module, localize_ring, localize_submodule};
use bowtie_core::ring::Elem;
use bowtie_core::verify::{
    example_suite, merge_reports, realize, verify_all_for_instance, Family, InstanceSpec,
    ModuleSpec, StatementId, StatementReport, SweepReport,
};
use bowtie_core::{Budget, FiniteModule, FiniteRing, Submodule, Verdict, Witness};

use crate::error::{usage, Result};
use crate::instance_file::Bindings;
use crate::report::{
    digest_spec, sweep_text, sweep_value, verdict_value, witness_value, yes_no, Outcome, Table,
};

pub struct Options {
    pub budget: Budget,
    pub seed: u64,
    pub strict_nonzero: bool,
}

fn brace_list<I: IntoIterator<Item = String>>(items: I) -> String {
    let v: Vec<String> = items.into_iter().collect();
    format!("{{{}}}", v.join(", "))
}

fn ring_members(r: &FiniteRing, xs: &[Elem]) -> String {
    brace_list(xs.iter().map(|&x| r.name(x).to_string()))
}

fn module_members(m: &FiniteModule, xs: &[Elem]) -> String {
    brace_list(xs.iter().map(|&x| m.name(x).to_string()))
}

/// Scalar roles name ring elements; "m"/"member" roles name module
/// elements.
fn witness_in_module(w: &Witness, m: &FiniteModule) -> String {
    w.render(|role, idx| match role {
        "m" | "member" => m.name(idx).into(),
        _ => m.ring().name(idx).into(),
    })
}

fn witness_in_ring(w: &Witness, r: &FiniteRing) -> String {
    w.render(|_, idx| r.name(idx).into())
}

fn verdict_line(label: &str, v: &Verdict, rendered: Option<&str>) -> String {
    match (&v.holds, rendered) {
        (true, _) => format!("  {label}: yes\n"),
        (false, Some(w)) => format!("  {label}: no, witness {w}\n"),
        (false, None) => format!("  {label}: no\n"),
    }
}

struct Claim {
    predicate: &'static str,
    verdict: Verdict,
    rendered: Option<String>,
}

impl Claim {
    fn value(&self) -> Value {
        let mut v = verdict_value(&self.verdict, self.rendered.clone());
        v["predicate"] = json!(self.predicate);
        v
    }
}

// ---------------------------------------------------------------- check

pub fn check(bindings: &Bindings, target: &str, opts: &Options) -> Result<Outcome> {
    let entry = bindings.entry(target)?;
    let budget = &opts.budget;
    let mut text = String::new();
    let mut claims: Vec<Claim> = Vec::new();
    let mut extra = serde_json::Map::new();
    let kind = entry.value.kind_name();

    match &entry.value {
        crate::instance_file::Value::Ring(rb) => {
            let r = &rb.ring;
            writeln!(text, "ring {target} = {}: size {}", r.label(), r.size()).unwrap();
            writeln!(text, "  zero {}, one {}", r.name(r.zero()), r.name(r.one())).unwrap();
            let units = r.units();
            writeln!(text, "  units: {}", ring_members(r, &units)).unwrap();
            let ideals = r.ideals(budget)?;
            writeln!(text, "  ideals: {}", ideals.len()).unwrap();
            for i in &ideals {
                writeln!(text, "    {}", ring_members(r, &i.members())).unwrap();
            }
            extra.insert("size".into(), json!(r.size()));
            extra.insert("units".into(), json!(units));
            extra.insert(
                "ideals".into(),
                json!(ideals.iter().map(|i| i.members()).collect::<Vec<_>>()),
            );
        }
        crate::instance_file::Value::Hom(hb) => {
            let h = &hb.hom;
            writeln!(
                text,
                "hom {target} : {} -> {} ({} -> {})",
                hb.dom,
                hb.cod,
                h.dom().label(),
                h.cod().label()
            )
            .unwrap();
            let kernel = h.kernel();
            writeln!(text, "  kernel: {}", ring_members(h.dom(), &kernel.members())).unwrap();
            writeln!(
                text,
                "  image size {}, surjective: {}, bijective: {}",
                h.image().len(),
                yes_no(h.is_surjective()),
                yes_no(h.is_bijective())
            )
            .unwrap();
            extra.insert("kernel".into(), json!(kernel.members()));
            extra.insert("image_size".into(), json!(h.image().len()));
            extra.insert("surjective".into(), json!(h.is_surjective()));
        }
        crate::instance_file::Value::Ideal(ib) => {
            let r = bindings.ring(&ib.ring)?.ring.clone();
            let members = ib.ideal.members();
            writeln!(
                text,
                "ideal {target} of {} ({}): members {}, proper: {}",
                ib.ring,
                r.label(),
                ring_members(&r, &members),
                yes_no(ib.ideal.is_proper())
            )
            .unwrap();
            extra.insert("members".into(), json!(members));
            if ib.ideal.is_proper() {
                let prime = ib.ideal.is_prime(budget)?;
                let rendered = prime.witness.as_ref().map(|w| witness_in_ring(w, &r));
                text.push_str(&verdict_line("prime", &prime, rendered.as_deref()));
                claims.push(Claim {
                    predicate: "prime",
                    verdict: prime,
                    rendered,
                });
                let two = ib.ideal.is_two_absorbing(opts.strict_nonzero, budget)?;
                let rendered = two.witness.as_ref().map(|w| witness_in_ring(w, &r));
                text.push_str(&verdict_line("2-absorbing", &two, rendered.as_deref()));
                claims.push(Claim {
                    predicate: "2-absorbing",
                    verdict: two,
                    rendered,
                });
            } else {
                text.push_str("  the full ring: absorbing predicates need a proper ideal\n");
            }
        }
        crate::instance_file::Value::Module(mb) => {
            let m = &mb.module;
            writeln!(
                text,
                "module {target} = {}: size {} over {}",
                m.label(),
                m.size(),
                m.ring().label()
            )
            .unwrap();
            let mult = m.is_multiplication(budget)?;
            writeln!(
                text,
                "  cyclic: {}, multiplication: {}",
                yes_no(m.is_cyclic()),
                yes_no(mult.holds)
            )
            .unwrap();
            let ann = m.annihilator();
            writeln!(text, "  annihilator: {}", ring_members(m.ring(), &ann.members())).unwrap();
            let subs = m.submodules(budget)?;
            writeln!(text, "  submodules: {}", subs.len()).unwrap();
            extra.insert("size".into(), json!(m.size()));
            extra.insert("cyclic".into(), json!(m.is_cyclic()));
            extra.insert("multiplication".into(), json!(mult.holds));
            extra.insert("annihilator".into(), json!(ann.members()));
            extra.insert("submodule_count".into(), json!(subs.len()));
        }
        crate::instance_file::Value::ModHom(hb) => {
            let h = &hb.hom;
            writeln!(
                text,
                "modhom {target} : {} -> {} ({} -> {})",
                hb.dom,
                hb.cod,
                h.dom().label(),
                h.cod().label()
            )
            .unwrap();
            let kernel = h.kernel();
            writeln!(
                text,
                "  kernel: {}",
                module_members(h.dom(), &kernel.members())
            )
            .unwrap();
            writeln!(
                text,
                "  image size {}, surjective: {}, bijective: {}",
                h.image_size(),
                yes_no(h.is_surjective()),
                yes_no(h.is_bijective())
            )
            .unwrap();
            extra.insert("kernel".into(), json!(kernel.members()));
            extra.insert("image_size".into(), json!(h.image_size()));
            extra.insert("surjective".into(), json!(h.is_surjective()));
        }
        crate::instance_file::Value::Submodule(sb) => {
            let sub = &sb.sub;
            let m = sub.module().clone();
            writeln!(
                text,
                "submodule {target} of {} ({}): members {}, proper: {}",
                sb.module,
                m.label(),
                module_members(&m, &sub.members()),
                yes_no(sub.is_proper())
            )
            .unwrap();
            extra.insert("members".into(), json!(sub.members()));
            if sub.is_proper() {
                let resid = sub.residual_module();
                writeln!(
                    text,
                    "  residual ideal: {}",
                    ring_members(m.ring(), &resid.members())
                )
                .unwrap();
                extra.insert("residual_ideal".into(), json!(resid.members()));
                let prime = sub.is_prime(budget)?;
                let rendered = prime.witness.as_ref().map(|w| witness_in_module(w, &m));
                text.push_str(&verdict_line("prime", &prime, rendered.as_deref()));
                claims.push(Claim {
                    predicate: "prime",
                    verdict: prime,
                    rendered,
                });
                let two = sub.is_two_absorbing(budget)?;
                let rendered = two.witness.as_ref().map(|w| witness_in_module(w, &m));
                text.push_str(&verdict_line("2-absorbing", &two, rendered.as_deref()));
                claims.push(Claim {
                    predicate: "2-absorbing",
                    verdict: two,
                    rendered,
                });
                let (primary, radical_resid) = sub.is_primary(budget)?;
                let rendered = primary.witness.as_ref().map(|w| witness_in_module(w, &m));
                text.push_str(&verdict_line("primary", &primary, rendered.as_deref()));
                writeln!(
                    text,
                    "  radical of residual ideal: {}",
                    ring_members(m.ring(), &radical_resid.members())
                )
                .unwrap();
                claims.push(Claim {
                    predicate: "primary",
                    verdict: primary,
                    rendered,
                });
                let radical = sub.radical(budget)?;
                writeln!(
                    text,
                    "  radical (intersection of containing primes): {}",
                    module_members(&m, &radical.members())
                )
                .unwrap();
                extra.insert("radical".into(), json!(radical.members()));
            } else {
                text.push_str("  the full module: absorbing predicates need a proper submodule\n");
            }
        }
        crate::instance_file::Value::MultSet(sb) => {
            let r = bindings.ring(&sb.ring)?.ring.clone();
            let members = sb.set.members();
            writeln!(
                text,
                "multset {target} of {} ({}): members {}",
                sb.ring,
                r.label(),
                ring_members(&r, &members)
            )
            .unwrap();
            let has_zero = members.contains(&r.zero());
            writeln!(
                text,
                "  contains zero: {} (localization collapses when yes)",
                yes_no(has_zero)
            )
            .unwrap();
            extra.insert("members".into(), json!(members));
            extra.insert("contains_zero".into(), json!(has_zero));
        }
    }

    let failures = claims.iter().filter(|c| !c.verdict.holds).count() as u64;
    let mut body = serde_json::Map::new();
    body.insert("target".into(), json!(target));
    body.insert("kind".into(), json!(kind));
    body.insert(
        "checks".into(),
        Value::Array(claims.iter().map(Claim::value).collect()),
    );
    body.extend(extra);
    Ok(Outcome::new("check", text, Value::Object(body), failures))
}

// ----------------------------------------------------------- amalgamate

pub struct AmalgamateArgs<'a> {
    pub map: &'a str,
    pub ideal: &'a str,
    pub module_map: &'a str,
    pub submodule: Option<&'a str>,
    pub target_submodule: Option<&'a str>,
}

pub fn amalgamate(bindings: &Bindings, args: &AmalgamateArgs<'_>, opts: &Options) -> Result<Outcome> {
    let budget = &opts.budget;
    let fb = bindings.hom(args.map)?;
    let ib = bindings.ideal(args.ideal)?;
    let pb = bindings.modhom(args.module_map)?;
    let amalg = Amalgamation::new(&fb.hom, &ib.ideal, &pb.hom, budget)?;

    let mut text = String::new();
    let pair_ring = amalg.ring();
    let pair_module = amalg.module();
    writeln!(
        text,
        "ring pair {}: |R1| = {}, |R2| = {}, |J| = {}, size {}",
        pair_ring.label(),
        fb.hom.dom().size(),
        fb.hom.cod().size(),
        ib.ideal.len(),
        pair_ring.size()
    )
    .unwrap();
    writeln!(
        text,
        "module pair {}: |M| = {}, |N| = {}, |JN| = {}, size {}",
        pair_module.label(),
        pb.hom.dom().size(),
        pb.hom.cod().size(),
        amalg.jn().len(),
        pair_module.size()
    )
    .unwrap();
    writeln!(
        text,
        "target {}: ring size {}, module size {}",
        amalg.target_module().label(),
        amalg.target_ring().size(),
        amalg.target_module().size()
    )
    .unwrap();
    let kernel = amalg.projection().kernel();
    writeln!(
        text,
        "projection kernel: size {}, members {}",
        kernel.len(),
        module_members(pair_module, &kernel.members())
    )
    .unwrap();

    let mut body = serde_json::Map::new();
    body.insert(
        "ring".into(),
        json!({
            "label": pair_ring.label(),
            "r1_size": fb.hom.dom().size(),
            "r2_size": fb.hom.cod().size(),
            "ideal_size": ib.ideal.len(),
            "size": pair_ring.size(),
        }),
    );
    body.insert(
        "module".into(),
        json!({
            "label": pair_module.label(),
            "m_size": pb.hom.dom().size(),
            "n_size": pb.hom.cod().size(),
            "jn_size": amalg.jn().len(),
            "size": pair_module.size(),
            "projection_kernel": kernel.members(),
        }),
    );
    body.insert(
        "target".into(),
        json!({
            "ring_size": amalg.target_ring().size(),
            "module_size": amalg.target_module().size(),
        }),
    );

    let mut failures = 0u64;

    if let Some(name) = args.submodule {
        let sb = bindings.submodule(name)?;
        if sb.module != pb.dom {
            return Err(usage(format!(
                "submodule {name} is of module {}, expected the domain module {}",
                sb.module, pb.dom
            )));
        }
        let base = sb.sub.is_two_absorbing(budget)?;
        let base_rendered = base
            .witness
            .as_ref()
            .map(|w| witness_in_module(w, pb.hom.dom()));
        let lift = amalg.sub_amalg(&sb.sub)?;
        let lifted = lift.is_two_absorbing(budget)?;
        let lift_rendered = lifted
            .witness
            .as_ref()
            .map(|w| witness_in_module(w, pair_module));
        writeln!(
            text,
            "submodule {name}: members {}",
            module_members(pb.hom.dom(), &sb.sub.members())
        )
        .unwrap();
        text.push_str(&verdict_line("base 2-absorbing", &base, base_rendered.as_deref()));
        writeln!(
            text,
            "  lift: size {} = |{name}| {} x |JN| {}, members {}",
            lift.len(),
            sb.sub.len(),
            amalg.jn().len(),
            module_members(pair_module, &lift.members())
        )
        .unwrap();
        text.push_str(&verdict_line("lift 2-absorbing", &lifted, lift_rendered.as_deref()));
        failures += u64::from(!base.holds) + u64::from(!lifted.holds);
        body.insert(
            "submodule".into(),
            json!({
                "name": name,
                "members": sb.sub.members(),
                "base": verdict_value(&base, base_rendered),
                "lift_members": lift.members(),
                "lift": verdict_value(&lifted, lift_rendered),
            }),
        );
    }

    if let Some(name) = args.target_submodule {
        let sb = bindings.submodule(name)?;
        if sb.module != pb.cod {
            return Err(usage(format!(
                "submodule {name} is of module {}, expected the codomain module {}",
                sb.module, pb.cod
            )));
        }
        let targets = amalg.target_members();
        let mut converted = Vec::new();
        for x in sb.sub.members() {
            match targets.binary_search(&x) {
                Ok(i) => converted.push(i as Elem),
                Err(_) => {
                    return Err(usage(format!(
                        "element {} of {name} is not in the target module",
                        pb.hom.cod().name(x)
                    )))
                }
            }
        }
        let n2 = Submodule::from_members(amalg.target_module(), converted)?;
        let bar = amalg.bar_submodule(&n2)?;
        writeln!(
            text,
            "target submodule {name}: members {}",
            module_members(pb.hom.cod(), &sb.sub.members())
        )
        .unwrap();
        writeln!(
            text,
            "  preimage under the projection: size {}, members {}",
            bar.len(),
            module_members(pair_module, &bar.members())
        )
        .unwrap();
        body.insert(
            "target_submodule".into(),
            json!({
                "name": name,
                "members": sb.sub.members(),
                "preimage_members": bar.members(),
            }),
        );
    }

    Ok(Outcome::new(
        "amalgamate",
        text,
        Value::Object(body),
        failures,
    ))
}

// ------------------------------------------------------------ enumerate

pub fn enumerate(bindings: &Bindings, module_name: &str, opts: &Options) -> Result<Outcome> {
    let budget = &opts.budget;
    let mb = bindings.module(module_name)?;
    let m = &mb.module;
    let mut subs = m.submodules(budget)?;
    subs.sort_by_key(|s| (s.len(), s.members()));

    let mut text = format!(
        "module {module_name} = {}: size {} over {}, submodules: {}\n",
        m.label(),
        m.size(),
        m.ring().label(),
        subs.len()
    );
    let mut table = Table::new(vec!["size", "prime", "2-absorbing", "primary", "members"]);
    let mut rows = Vec::new();
    for sub in &subs {
        if sub.is_proper() {
            let prime = sub.is_prime(budget)?;
            let two = sub.is_two_absorbing(budget)?;
            let (primary, _) = sub.is_primary(budget)?;
            table.row(vec![
                sub.len().to_string(),
                yes_no(prime.holds).to_string(),
                yes_no(two.holds).to_string(),
                yes_no(primary.holds).to_string(),
                module_members(m, &sub.members()),
            ]);
            rows.push(json!({
                "members": sub.members(),
                "size": sub.len(),
                "prime": prime.holds,
                "two_absorbing": two.holds,
                "primary": primary.holds,
            }));
        } else {
            table.row(vec![
                sub.len().to_string(),
                "-".into(),
                "-".into(),
                "-".into(),
                module_members(m, &sub.members()),
            ]);
            rows.push(json!({
                "members": sub.members(),
                "size": sub.len(),
                "prime": Value::Null,
                "two_absorbing": Value::Null,
                "primary": Value::Null,
            }));
        }
    }
    text.push_str(&table.render());

    let body = json!({
        "module": module_name,
        "size": m.size(),
        "submodules": rows,
    });
    Ok(Outcome::new("enumerate", text, body, 0))
}

// ------------------------------------------------------------- localize

pub fn localize(
    bindings: &Bindings,
    set_name: &str,
    module_name: Option<&str>,
    submodule_name: Option<&str>,
    opts: &Options,
) -> Result<Outcome> {
    let budget = &opts.budget;
    let sb = bindings.multset(set_name)?;
    let ring = bindings.ring(&sb.ring)?.ring.clone();
    let lr = localize_ring(&ring, &sb.set, budget)?;
    let kernel = lr.to_fractions.kernel();

    let mut text = String::new();
    writeln!(
        text,
        "ring {} localized at {set_name} {}: size {}, collapsed: {}",
        ring.label(),
        ring_members(&ring, &sb.set.members()),
        lr.ring.size(),
        yes_no(lr.collapsed)
    )
    .unwrap();
    writeln!(
        text,
        "  kernel of the fraction map: {}",
        ring_members(&ring, &kernel.members())
    )
    .unwrap();
    writeln!(text, "  classes: {}", brace_list(lr.ring.names().to_vec())).unwrap();

    let mut body = serde_json::Map::new();
    body.insert(
        "ring".into(),
        json!({
            "set": sb.set.members(),
            "size": lr.ring.size(),
            "collapsed": lr.collapsed,
            "kernel": kernel.members(),
            "classes": lr.ring.names().to_vec(),
        }),
    );

    if let Some(mname) = module_name {
        let mb = bindings.module(mname)?;
        let lm = localize_module(&mb.module, &sb.set, &lr, budget)?;
        let mkernel = lm.to_fractions.kernel();
        writeln!(
            text,
            "module {mname} localized: size {}, collapsed: {}",
            lm.module.size(),
            yes_no(lm.collapsed)
        )
        .unwrap();
        writeln!(
            text,
            "  kernel of the fraction map: {}",
            module_members(&mb.module, &mkernel.members())
        )
        .unwrap();
        let mut mod_body = json!({
            "module": mname,
            "size": lm.module.size(),
            "collapsed": lm.collapsed,
            "kernel": mkernel.members(),
        });
        if let Some(sname) = submodule_name {
            let sub = bindings.submodule(sname)?;
            if sub.module != mname {
                return Err(usage(format!(
                    "submodule {sname} is of module {}, expected {mname}",
                    sub.module
                )));
            }
            let localized = localize_submodule(&sub.sub, &lm)?;
            writeln!(
                text,
                "submodule {sname} localized: size {}, members {}",
                localized.len(),
                module_members(&lm.module, &localized.members())
            )
            .unwrap();
            mod_body["submodule"] = json!({
                "name": sname,
                "localized_members": localized.members(),
            });
        }
        body.insert("module".into(), mod_body);
    } else if submodule_name.is_some() {
        return Err(usage("--submodule needs --module to name its ambient module"));
    }

    Ok(Outcome::new("localize", text, Value::Object(body), 0))
}

// --------------------------------------------------------------- verify

/// Realize and check instances in parallel, then merge in instance
/// order so the aggregate is independent of scheduling.
fn parallel_sweep(
    ids: &[StatementId],
    specs: &[InstanceSpec],
    budget: &Budget,
) -> Result<SweepReport> {
    let per_instance: bowtie_core::Result<Vec<Vec<StatementReport>>> = specs
        .par_iter()
        .map(|spec| {
            let inst = realize(spec, budget)?;
            verify_all_for_instance(ids, &inst, budget)
        })
        .collect();
    Ok(merge_reports(per_instance?))
}

fn out_of_scope_note(text: &mut String) {
    let skipped = bowtie_core::verify::out_of_scope();
    if !skipped.is_empty() {
        text.push_str("not checkable on finite carriers:\n");
        for (what, why) in skipped {
            writeln!(text, "  {what}: {why}").unwrap();
        }
    }
}

fn out_of_scope_value() -> Value {
    Value::Array(
        bowtie_core::verify::out_of_scope()
            .iter()
            .map(|(what, why)| json!({ "claim": what, "reason": why }))
            .collect(),
    )
}

pub fn verify_family(family: &Family, ids: &[StatementId], opts: &Options) -> Result<Outcome> {
    let specs = family.instances(&opts.budget)?;
    let report = parallel_sweep(ids, &specs, &opts.budget)?;
    let mut text = sweep_text(&report, &format!("family {family:?}"));
    out_of_scope_note(&mut text);
    let failures = report.total_counterexamples() as u64;
    let body = json!({
        "family": format!("{family:?}"),
        "sweep": sweep_value(&report),
        "out_of_scope": out_of_scope_value(),
    });
    Ok(Outcome::new("verify", text, body, failures))
}

pub struct FileInstanceArgs<'a> {
    pub map: &'a str,
    pub ideal: &'a str,
    pub module_map: &'a str,
    pub submodule: Option<&'a str>,
    pub target_submodule: Option<&'a str>,
    pub multset: Option<&'a str>,
}

/// Rebuild a sweep-engine instance description from file bindings; the
/// bindings must be regular modules over the named rings so the engine
/// can reconstruct them on its own.
pub fn file_instance_spec(bindings: &Bindings, args: &FileInstanceArgs<'_>) -> Result<InstanceSpec> {
    let fb = bindings.hom(args.map)?;
    let r1b = bindings.ring(&fb.dom)?;
    let r2b = bindings.ring(&fb.cod)?;
    let ib = bindings.ideal(args.ideal)?;
    if ib.ring != fb.cod {
        return Err(usage(format!(
            "ideal {} lives in {}, but the gluing needs an ideal of {}",
            args.ideal, ib.ring, fb.cod
        )));
    }
    let pb = bindings.modhom(args.module_map)?;
    let mb = bindings.module(&pb.dom)?;
    let nb = bindings.module(&pb.cod)?;
    let mecho = mb.echo.as_ref().ok_or_else(|| {
        usage(format!(
            "module {} has no regular description; declare it as regular over a ring",
            pb.dom
        ))
    })?;
    let necho = nb.echo.as_ref().ok_or_else(|| {
        usage(format!(
            "module {} has no regular description; declare it as regular over a ring",
            pb.cod
        ))
    })?;
    if mecho.ring_spec != r1b.spec {
        return Err(usage(format!(
            "module {} is not the regular module over {}",
            pb.dom, fb.dom
        )));
    }
    if necho.ring_spec != r2b.spec {
        return Err(usage(format!(
            "module {} is not the regular module over {}",
            pb.cod, fb.cod
        )));
    }

    let mut spec = InstanceSpec::basic(
        r1b.spec.clone(),
        r2b.spec.clone(),
        fb.spec.clone(),
        ib.ideal.members(),
        ModuleSpec::Regular,
        ModuleSpec::Regular,
        pb.spec.clone(),
    );
    if let Some(shape) = &mecho.shape {
        if shape.len() >= 2 {
            spec.product_shape = Some(shape.clone());
        }
    }
    if let Some(name) = args.submodule {
        let sb = bindings.submodule(name)?;
        if sb.module != pb.dom {
            return Err(usage(format!(
                "submodule {name} is of module {}, expected the domain module {}",
                sb.module, pb.dom
            )));
        }
        spec.f_sub = Some(sb.sub.members());
    }
    if let Some(name) = args.target_submodule {
        let sb = bindings.submodule(name)?;
        if sb.module != pb.cod {
            return Err(usage(format!(
                "submodule {name} is of module {}, expected the codomain module {}",
                sb.module, pb.cod
            )));
        }
        spec.n2 = Some(sb.sub.members());
    }
    if let Some(name) = args.multset {
        let sb = bindings.multset(name)?;
        if sb.ring != fb.dom {
            return Err(usage(format!(
                "multset {name} is of ring {}, expected the domain ring {}",
                sb.ring, fb.dom
            )));
        }
        spec.s = Some(sb.set.members());
    }
    Ok(spec)
}

pub fn verify_file(
    bindings: &Bindings,
    args: &FileInstanceArgs<'_>,
    ids: &[StatementId],
    opts: &Options,
) -> Result<Outcome> {
    let spec = file_instance_spec(bindings, args)?;
    let report = parallel_sweep(ids, std::slice::from_ref(&spec), &opts.budget)?;
    let mut text = sweep_text(&report, &format!("instance {}", digest_spec(&spec)));
    out_of_scope_note(&mut text);
    let failures = report.total_counterexamples() as u64;
    let body = json!({
        "instance": serde_json::to_value(&spec).expect("instance specs serialize"),
        "digest": digest_spec(&spec),
        "sweep": sweep_value(&report),
        "out_of_scope": out_of_scope_value(),
    });
    Ok(Outcome::new("verify", text, body, failures))
}

// ------------------------------------------------------------- examples

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SuiteChoice {
    Basic,
    Z30,
    All,
}

pub fn examples(choice: SuiteChoice, opts: &Options) -> Result<Outcome> {
    let budget = &opts.budget;
    let mut text = String::new();
    let mut failures = 0u64;
    let mut body = serde_json::Map::new();

    if matches!(choice, SuiteChoice::Basic | SuiteChoice::All) {
        let mut items = Vec::new();
        let mut matched = 0usize;
        let suite = example_suite();
        for item in &suite {
            let run = item.run(budget)?;
            let tag = if run.matches_expected {
                matched += 1;
                "as expected"
            } else {
                failures += 1;
                "MISMATCH"
            };
            writeln!(text, "example {}: {} [{tag}]", item.name, run.text).unwrap();
            items.push(json!({
                "name": item.name,
                "holds": run.verdict.holds,
                "witness": run.verdict.witness.as_ref().map(witness_value),
                "text": run.text,
                "matches_expected": run.matches_expected,
            }));
        }
        writeln!(text, "suite: {matched}/{} examples as frozen", suite.len()).unwrap();
        body.insert("examples".into(), Value::Array(items));
    }

    if matches!(choice, SuiteChoice::Z30 | SuiteChoice::All) {
        let mut items = Vec::new();
        for d in (1..=30u32).filter(|d| 30 % d == 0) {
            let members: Vec<u32> = (0..30).filter(|x| x % d == 0).collect();
            let spec = InstanceSpec::identity_zmod(30, members);
            let inst = realize(&spec, budget)?;
            let zero = Submodule::from_members(&inst.m, [0])?;
            let base = zero.is_two_absorbing(budget)?;
            let base_rendered = base.witness.as_ref().map(|w| witness_in_module(w, &inst.m));
            let lift = inst.amalg.sub_amalg(&zero)?;
            let lifted = lift.is_two_absorbing(budget)?;
            let lift_rendered = lifted
                .witness
                .as_ref()
                .map(|w| witness_in_module(w, inst.amalg.module()));
            let base_expected = !base.holds
                && base.witness == Some(Witness::triple("a", 2, "b", 3, "m", 5));
            let lift_expected = !lifted.holds;
            if !(base_expected && lift_expected) {
                failures += 1;
            }
            writeln!(
                text,
                "z30 ideal size {}: base {} ({}), lift {} ({}) [{}]",
                inst.j.len(),
                if base.holds { "2-absorbing" } else { "not 2-absorbing" },
                base_rendered.as_deref().unwrap_or("no witness"),
                if lifted.holds { "2-absorbing" } else { "not 2-absorbing" },
                lift_rendered.as_deref().unwrap_or("no witness"),
                if base_expected && lift_expected {
                    "as expected"
                } else {
                    "MISMATCH"
                }
            )
            .unwrap();
            items.push(json!({
                "ideal_size": inst.j.len(),
                "digest": digest_spec(&spec),
                "base": verdict_value(&base, base_rendered),
                "lift": verdict_value(&lifted, lift_rendered),
                "as_expected": base_expected && lift_expected,
            }));
        }
        body.insert("z30".into(), Value::Array(items));
    }

    Ok(Outcome::new("examples", text, Value::Object(body), failures))
}
