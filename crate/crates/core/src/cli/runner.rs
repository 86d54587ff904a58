//! Executes parsed programs and collects their reports.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::degroup::degroupoidify_span;
use crate::error::{Error, Result};
use crate::exactnum::{mat_mul, rat_to_string, ratio, QMatrix};
use crate::groupoids::{action_groupoid_with_limit, groupoid_cardinality, Groupoid, DEFAULT_MORPHISM_LIMIT};
use crate::groups::{product_gset, EquivariantMap, GSet, Group, Perm, PermGroup, DEFAULT_CAP};
use crate::hecke::{
    reference_matrix_check, verify_hecke_relations, verify_main_claim, yang_baxter_report, zamolodchikov_check,
    BraidContext, FlagComplex, DEFAULT_MAX_FLAGS,
};
use crate::presheaves::grothendieck_round_trip;
use crate::random::{cardinality_trials, functoriality_trials, monoidal_trials, random_span};
use crate::spans::{compose_path, span_iso, GSetSpan, GroupoidSpan};

use super::ast::*;
use super::printer::print_statement;

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Ceiling on group enumeration.
    pub cap: usize,
    pub max_flags: usize,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { cap: DEFAULT_CAP, max_flags: DEFAULT_MAX_FLAGS, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub line: usize,
    pub command: String,
    pub pass: bool,
    pub summary: String,
    pub report: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct RuntimeError {
    pub line: usize,
    pub statement: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunOutput {
    pub pass: bool,
    pub results: Vec<CommandResult>,
    pub error: Option<RuntimeError>,
}

impl RunOutput {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = if r.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{status}] line {}: {}\n", r.line, r.command));
            for l in r.summary.lines() {
                out.push_str(&format!("    {l}\n"));
            }
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("[ERROR] line {}: {}\n    {}\n", e.line, e.statement, e.message));
        }
        out.push_str(if self.pass { "all checks passed\n" } else { "some checks failed\n" });
        out
    }
}

struct Env {
    options: RunOptions,
    groups: HashMap<String, Group>,
    gsets: HashMap<String, GSet>,
    groupoids: HashMap<String, Groupoid>,
    maps: HashMap<String, EquivariantMap>,
    spans: HashMap<String, GSetSpan>,
    /// Gset names of the feet of each span, left then right.
    feet: HashMap<String, (String, String)>,
    map_ends: HashMap<String, (String, String)>,
}

/// Runs every statement in order, stopping at the first runtime error.
pub fn run(program: &Program, options: &RunOptions) -> RunOutput {
    let mut env = Env {
        options: options.clone(),
        groups: HashMap::new(),
        gsets: HashMap::new(),
        groupoids: HashMap::new(),
        maps: HashMap::new(),
        spans: HashMap::new(),
        feet: HashMap::new(),
        map_ends: HashMap::new(),
    };
    let mut results = Vec::new();
    for s in &program.statements {
        let line = s.span.line;
        let outcome = match &s.node {
            Statement::Command(c) => env.command(c).map(|(pass, summary, report)| {
                results.push(CommandResult { line, command: print_statement(&s.node), pass, summary, report });
            }),
            decl => env.declare(decl),
        };
        if let Err(e) = outcome {
            let error = RuntimeError { line, statement: print_statement(&s.node), message: e.to_string() };
            return RunOutput { pass: false, results, error: Some(error) };
        }
    }
    RunOutput { pass: results.iter().all(|r| r.pass), results, error: None }
}

fn matrix_json(m: &QMatrix) -> Value {
    json!(m.to_string_rows())
}

fn matrix_text(m: &QMatrix) -> String {
    m.to_string_rows().iter().map(|r| format!("[{}]", r.join(" "))).collect::<Vec<_>>().join("\n")
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

impl Env {
    fn declare(&mut self, s: &Statement) -> Result<()> {
        match s {
            Statement::Group { name, degree, generators } => {
                let gens = generators.iter().map(|c| Perm::from_cycles(*degree, c)).collect::<Result<Vec<_>>>()?;
                let g = PermGroup::with_cap(*degree, gens, self.options.cap)?;
                g.order()?;
                self.groups.insert(name.node.clone(), std::sync::Arc::new(g));
            }
            Statement::GSet { name, size, group, action } => {
                let g = self.groups[&group.node].clone();
                let mut table: Vec<Option<Vec<u32>>> = vec![None; g.generators().len()];
                for (cycles, images) in action {
                    let p = Perm::from_cycles(g.degree(), cycles)?;
                    let k = g
                        .generators()
                        .iter()
                        .position(|h| *h == p)
                        .ok_or_else(|| Error::Precondition(format!("{p} is not a generator of {}", group.node)))?;
                    if table[k].replace(images.clone()).is_some() {
                        return Err(Error::Precondition(format!("generator {p} given twice")));
                    }
                }
                let table = table
                    .into_iter()
                    .enumerate()
                    .map(|(k, t)| {
                        t.ok_or_else(|| Error::Precondition(format!("no action given for generator {}", g.generators()[k])))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let x = GSet::new(g, *size, table)?;
                x.check_action()?;
                self.gsets.insert(name.node.clone(), x);
            }
            Statement::Map { name, source, target, images } => {
                let m = EquivariantMap::new(self.gsets[&source.node].clone(), self.gsets[&target.node].clone(), images.clone())?;
                self.maps.insert(name.node.clone(), m);
                self.map_ends.insert(name.node.clone(), (source.node.clone(), target.node.clone()));
            }
            Statement::Span { name, left, right } => {
                let s = GSetSpan::new(self.maps[&left.node].clone(), self.maps[&right.node].clone())?;
                self.spans.insert(name.node.clone(), s);
                let feet = (self.map_ends[&left.node].1.clone(), self.map_ends[&right.node].1.clone());
                self.feet.insert(name.node.clone(), feet);
            }
            Statement::Command(_) => unreachable!("commands are run separately"),
        }
        Ok(())
    }

    /// Action groupoid of a named gset, built once so functors share it.
    fn groupoid(&mut self, gset: &str) -> Result<Groupoid> {
        if let Some(g) = self.groupoids.get(gset) {
            return Ok(g.clone());
        }
        let g = action_groupoid_with_limit(&self.gsets[gset], DEFAULT_MORPHISM_LIMIT)?;
        self.groupoids.insert(gset.to_string(), g.clone());
        Ok(g)
    }

    fn groupoid_span(&mut self, name: &str) -> Result<GroupoidSpan> {
        let (l, r) = self.feet[name].clone();
        let (lg, rg) = (self.groupoid(&l)?, self.groupoid(&r)?);
        GroupoidSpan::from_gset_span(&self.spans[name], &lg, &rg)
    }

    fn flags(&self, f: &Flags) -> Result<FlagComplex> {
        FlagComplex::with_limits(f.rank, f.q, self.options.max_flags, self.options.cap)
    }

    fn command(&mut self, c: &Command) -> Result<(bool, String, Value)> {
        match c {
            Command::Cardinality { gset, .. } => {
                let x = self.gsets[&gset.node].clone();
                let card = groupoid_cardinality(&self.groupoid(&gset.node)?);
                let expected = ratio(x.size() as i64, x.group().order()? as i64);
                let pass = card == expected;
                Ok((
                    pass,
                    rat_to_string(&card),
                    json!({"cardinality": rat_to_string(&card), "points": x.size(), "group_order": x.group().order()?}),
                ))
            }
            Command::Degroup { span } => {
                let d = degroupoidify_span(&self.groupoid_span(&span.node)?)?;
                Ok((true, matrix_text(&d), json!({"matrix": matrix_json(&d), "apex": self.spans[&span.node].apex().size()})))
            }
            Command::Compose { spans } => {
                // `compose T, S` applies S first
                let ordered: Vec<&Name> = spans.iter().rev().collect();
                for w in ordered.windows(2) {
                    if self.feet[&w[0].node].0 != self.feet[&w[1].node].1 {
                        return Err(Error::FootMismatch(format!("`{}` does not end where `{}` starts", w[0].node, w[1].node)));
                    }
                }
                let gspans: Vec<GSetSpan> = ordered.iter().map(|n| self.spans[&n.node].clone()).collect();
                let composite = compose_path(&gspans)?;
                let fiber = composite.fiber_matrix();
                let mut fiber_product = gspans[0].fiber_matrix();
                let mut d_product = degroupoidify_span(&self.groupoid_span(&ordered[0].node)?)?;
                for n in &ordered[1..] {
                    fiber_product = mat_mul(&self.spans[&n.node].fiber_matrix(), &fiber_product)?;
                    d_product = mat_mul(&degroupoidify_span(&self.groupoid_span(&n.node)?)?, &d_product)?;
                }
                let left = self.feet[&ordered[ordered.len() - 1].node].0.clone();
                let right = self.feet[&ordered[0].node].1.clone();
                let (lg, rg) = (self.groupoid(&left)?, self.groupoid(&right)?);
                let d = degroupoidify_span(&GroupoidSpan::from_gset_span(&composite, &lg, &rg)?)?;
                let pass = fiber == fiber_product && d == d_product;
                Ok((
                    pass,
                    format!("apex {} points\n{}", composite.apex().size(), matrix_text(&d)),
                    json!({
                        "apex": composite.apex().size(),
                        "fiber_matrix": matrix_json(&fiber),
                        "degroupoidified": matrix_json(&d),
                        "fiber_matrices_multiply": fiber == fiber_product,
                        "degroupoidification_multiplies": d == d_product,
                    }),
                ))
            }
            Command::Iso { left, right } => {
                let (s, t) = (&self.spans[&left.node], &self.spans[&right.node]);
                let witness = span_iso(s, t)?;
                let pass = witness.is_some();
                let summary = if pass { "isomorphic".to_string() } else { "not isomorphic".to_string() };
                Ok((pass, summary, json!({"isomorphic": pass, "witness": witness.map(|m| m.images().to_vec())})))
            }
            Command::HeckeVerify(f) => {
                let r = verify_hecke_relations(self.flags(f)?)?;
                let summary = r
                    .relations
                    .iter()
                    .map(|c| format!("{}: matrix {}, span iso {}", c.name, ok(c.matrix_ok), ok(c.span_iso_ok)))
                    .chain(r.notes.iter().cloned())
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok((r.pass, summary, to_value(&r)))
            }
            Command::MainClaim(target) => {
                let sets = match target {
                    Target::Flags(f) => vec![self.flags(f)?.gset().clone()],
                    Target::Names(ns) => ns.iter().map(|n| self.gsets[&n.node].clone()).collect(),
                };
                let r = verify_main_claim(&sets)?;
                let dims: Vec<String> = r.pairs.iter().map(|p| p.classes.to_string()).collect();
                Ok((r.pass, format!("hom dimensions {}", dims.join(" ")), to_value(&r)))
            }
            Command::Zamolodchikov(f) => {
                let r = zamolodchikov_check(&BraidContext::new(self.flags(f)?)?, false)?;
                Ok((r.pass, format!("{} paths, {} disagreements", r.paths, r.disagreements), to_value(&r)))
            }
            Command::YangBaxter(f) => {
                let r = yang_baxter_report(&BraidContext::new(self.flags(f)?)?)?;
                let summary = r
                    .checks
                    .iter()
                    .map(|c| format!("dots {},{}: {} paths, valid {}, round trip {}", c.i, c.j, c.paths, ok(c.valid), ok(c.round_trip)))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok((r.pass, summary, to_value(&r)))
            }
            Command::Grothendieck { target, count } => {
                let trips = match target {
                    Target::Names(ns) => {
                        let name = &ns[0].node;
                        let s = self.spans[name].clone();
                        let base = action_groupoid_with_limit(&product_gset(s.right_foot(), s.left_foot())?, DEFAULT_MORPHISM_LIMIT)?;
                        vec![grothendieck_round_trip(&s, &base)?]
                    }
                    Target::Flags(f) => {
                        let x = self.flags(f)?.gset().clone();
                        let base = action_groupoid_with_limit(&product_gset(&x, &x)?, DEFAULT_MORPHISM_LIMIT)?;
                        let mut rng = ChaCha8Rng::seed_from_u64(self.options.seed);
                        (0..count.unwrap_or(20))
                            .map(|_| grothendieck_round_trip(&random_span(&mut rng, &x, &x, 2 * x.size() * x.size())?, &base))
                            .collect::<Result<Vec<_>>>()?
                    }
                };
                let pass = trips.iter().all(|t| t.span_ok && t.presheaf_ok);
                let good = trips.iter().filter(|t| t.span_ok && t.presheaf_ok).count();
                Ok((pass, format!("{good}/{} round trips witnessed", trips.len()), json!({"round_trips": trips, "pass": pass})))
            }
            Command::ReferenceMatrices { q } => {
                let r = reference_matrix_check(*q)?;
                let summary = format!(
                    "relations {}, alignment {}",
                    ok(r.reference_relations_ok),
                    r.alignment.as_ref().map_or("not attempted".to_string(), |a| ok(a.ok()).to_string())
                );
                Ok((r.pass, summary, to_value(&r)))
            }
            Command::Random { check, count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.options.seed);
                let r = match check {
                    RandomCheck::Cardinality => cardinality_trials(&mut rng, *count)?,
                    RandomCheck::Functoriality => functoriality_trials(&mut rng, *count)?,
                    RandomCheck::Monoidal => monoidal_trials(&mut rng, *count)?,
                };
                Ok((r.pass, format!("{} trials, {} failures", r.trials, r.failures), to_value(&r)))
            }
        }
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "failed"
    }
}
