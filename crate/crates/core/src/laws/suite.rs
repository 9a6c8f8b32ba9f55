//! The executable law suite. Each family draws one instance per case
//! and evaluates several laws on it; a law whose hypotheses fail on the
//! instance counts the case as vacuous.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::case_rng;
use super::gen::{gen_hom_onto_with, gen_network_with, gen_relation_function, shuffle_names, GenConfig, Sizes};
use crate::definiteness::{
    check_definite, check_semidefinite, check_thm23_certificate, clause_8a_oracle, is_minimal_rel_network_fast,
    layer_equations, minimal_rel_network_oracle, CheckOptions, DefinitenessReport,
};
use crate::format::{parse_document, serialize_bundle, serialize_hom, serialize_network};
use crate::hom::{compose_homs, invert_hom, restrict_hom, validate_homomorphism, Homomorphism, Joint, Side, Tagged};
use crate::network::{gluing_parts, validate_network, Network};
use crate::relation::{
    chain, compose, id_on, inverse, is_forest, is_minimal_rel_function, is_sub, join, meet,
    minimal_rel_function_oracle, Element, FnGraph, Relation, Sort, DEFAULT_ORACLE_CAP,
};
use crate::subnet::{extract_subnetwork, inclusion_hom, validate_subnetwork};

/// A deliberately weakened checker, used to confirm that the suite can
/// catch a broken implementation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckerMutation {
    #[default]
    None,
    /// `check_definite` forgets the sum-diagram clause.
    DefiniteWithout4b,
    /// The certificate forgets its sum-diagram hypothesis.
    CertificateWithoutB,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case: usize,
    pub message: String,
    /// The failing instance in the text format.
    pub document: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub id: &'static str,
    pub cases: usize,
    /// Cases whose hypotheses held.
    pub qualifying: usize,
    /// Qualifying cases whose instance has a non-empty gluing relation.
    pub glued: usize,
    /// Cases where the generator gave up.
    pub gen_failures: usize,
    pub counterexample: Option<Counterexample>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.gen_failures == 0
    }

    pub fn rate(&self) -> f64 {
        if self.cases == 0 {
            0.0
        } else {
            self.qualifying as f64 / self.cases as f64
        }
    }
}

#[derive(Debug, Clone)]
enum Verdict {
    Vacuous,
    Pass,
    Fail(String),
}

fn holds(ok: bool, why: impl FnOnce() -> String) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail(why())
    }
}

fn given(hyp: bool, conclusion: impl FnOnce() -> Verdict) -> Verdict {
    if hyp {
        conclusion()
    } else {
        Verdict::Vacuous
    }
}

enum Instance {
    Nets(Vec<Network>),
    Homs(Vec<Homomorphism>),
    Text(String),
}

impl Instance {
    fn document(&self) -> String {
        match self {
            Instance::Nets(nets) => nets.iter().map(serialize_network).collect::<Vec<_>>().join("\n"),
            Instance::Homs(homs) => {
                let mut nets: Vec<&Network> = Vec::new();
                for h in homs {
                    nets.push(h.source());
                    nets.push(h.target());
                }
                serialize_bundle(&nets, &homs.iter().collect::<Vec<_>>())
            }
            Instance::Text(t) => t.clone(),
        }
    }
}

struct Ctx {
    cfg: GenConfig,
    opts: CheckOptions,
    mutation: CheckerMutation,
}

impl Ctx {
    fn definite(&self, net: &Network) -> Option<DefinitenessReport> {
        let mut r = check_definite(net, &self.opts).ok()?;
        if self.mutation == CheckerMutation::DefiniteWithout4b {
            r.violations.retain(|v| v.code != "D-4b");
        }
        Some(r)
    }

    fn semidefinite(&self, net: &Network) -> Option<bool> {
        check_semidefinite(net, &self.opts).ok()?.holds()
    }

    fn certificate_holds(&self, p: &Homomorphism) -> bool {
        match check_thm23_certificate(p, &self.opts) {
            Ok(mut r) => {
                if self.mutation == CheckerMutation::CertificateWithoutB {
                    r.retain(|v| v.code != "T23-b");
                }
                r.is_empty()
            }
            Err(_) => false,
        }
    }
}

struct Case {
    verdicts: Vec<Verdict>,
    instance: Instance,
    glued: bool,
}

type CaseResult = Result<Case, String>;

fn case(verdicts: Vec<Verdict>, instance: Instance, glued: bool) -> CaseResult {
    Ok(Case {
        verdicts,
        instance,
        glued,
    })
}

struct Family {
    name: &'static str,
    laws: &'static [&'static str],
    run: fn(&Ctx, &mut ChaCha8Rng) -> CaseResult,
}

const FAMILIES: &[Family] = &[
    Family {
        name: "generators",
        laws: &["G-net", "G-hom", "G-det"],
        run: fam_generators,
    },
    Family {
        name: "formats",
        laws: &["R-net", "R-hom"],
        run: fam_formats,
    },
    Family {
        name: "oracles",
        laws: &["O14", "O17", "O8a"],
        run: fam_oracles,
    },
    Family {
        name: "L15",
        laws: &["L15"],
        run: fam_l15,
    },
    Family {
        name: "L16",
        laws: &["L16"],
        run: fam_l16,
    },
    Family {
        name: "L17",
        laws: &["L17i", "L17ii"],
        run: fam_l17,
    },
    Family {
        name: "L18",
        laws: &["L18"],
        run: fam_l18,
    },
    Family {
        name: "homs",
        laws: &[
            "L19i", "L19ii", "L19iii", "L19iv", "L19v", "L20i", "L20ii", "L20iii", "L20iv", "L21i", "L21ii", "L21iii",
            "L21iv", "L21v", "L21vi", "L22i", "L22ii", "L22iii", "L23",
        ],
        run: fam_homs,
    },
    Family {
        name: "L24",
        laws: &["L24i", "L24ii", "L24iii", "L24iv", "L24r"],
        run: fam_l24,
    },
];

/// Every law id, in report order.
pub fn law_ids() -> Vec<&'static str> {
    FAMILIES.iter().flat_map(|f| f.laws.iter().copied()).collect()
}

pub fn run_law_suite(cfg: &GenConfig) -> Vec<LawResult> {
    run_law_suite_with(cfg, &CheckOptions::default(), CheckerMutation::None)
}

pub fn run_law_suite_with(cfg: &GenConfig, opts: &CheckOptions, mutation: CheckerMutation) -> Vec<LawResult> {
    let ctx = Ctx {
        cfg: *cfg,
        opts: *opts,
        mutation,
    };
    FAMILIES.iter().flat_map(|fam| run_family(&ctx, fam)).collect()
}

/// Runs only the families containing the listed law ids.
pub fn run_laws(cfg: &GenConfig, ids: &[&str]) -> Vec<LawResult> {
    let ctx = Ctx {
        cfg: *cfg,
        opts: CheckOptions::default(),
        mutation: CheckerMutation::None,
    };
    FAMILIES
        .iter()
        .filter(|f| f.laws.iter().any(|l| ids.contains(l)))
        .flat_map(|fam| run_family(&ctx, fam))
        .filter(|r| ids.contains(&r.id))
        .collect()
}

/// Re-runs a single case of one law, returning its failure message.
pub fn replay(cfg: &GenConfig, mutation: CheckerMutation, law: &str, case: usize) -> Option<String> {
    let ctx = Ctx {
        cfg: *cfg,
        opts: CheckOptions::default(),
        mutation,
    };
    let fam = FAMILIES.iter().find(|f| f.laws.contains(&law))?;
    let pos = fam.laws.iter().position(|l| *l == law)?;
    let mut rng = case_rng(cfg.seed, fam.name, case as u64);
    match (fam.run)(&ctx, &mut rng) {
        Ok(c) => match &c.verdicts[pos] {
            Verdict::Fail(m) => Some(m.clone()),
            _ => None,
        },
        Err(e) => Some(e),
    }
}

fn run_family(ctx: &Ctx, fam: &Family) -> Vec<LawResult> {
    let outcomes: Vec<CaseResult> = (0..ctx.cfg.cases)
        .into_par_iter()
        .map(|case| {
            let mut rng = case_rng(ctx.cfg.seed, fam.name, case as u64);
            (fam.run)(ctx, &mut rng)
        })
        .collect();
    fam.laws
        .iter()
        .enumerate()
        .map(|(pos, &id)| {
            let mut res = LawResult {
                id,
                cases: 0,
                qualifying: 0,
                glued: 0,
                gen_failures: 0,
                counterexample: None,
            };
            for (case, out) in outcomes.iter().enumerate() {
                res.cases += 1;
                match out {
                    Err(_) => res.gen_failures += 1,
                    Ok(c) => match &c.verdicts[pos] {
                        Verdict::Vacuous => {}
                        Verdict::Pass => {
                            res.qualifying += 1;
                            res.glued += c.glued as usize;
                        }
                        Verdict::Fail(message) => {
                            res.qualifying += 1;
                            res.glued += c.glued as usize;
                            if res.counterexample.is_none() {
                                res.counterexample = Some(Counterexample {
                                    case,
                                    message: message.clone(),
                                    document: c.instance.document(),
                                });
                            }
                        }
                    },
                }
            }
            res
        })
        .collect()
}

fn net(ctx: &Ctx, rng: &mut ChaCha8Rng, name: &str) -> Result<Network, String> {
    gen_network_with(&ctx.cfg, rng, name).map_err(|e| e.to_string())
}

fn hom(ctx: &Ctx, rng: &mut ChaCha8Rng, target: &Arc<Network>, src: &str, name: &str) -> Result<Homomorphism, String> {
    gen_hom_onto_with(&ctx.cfg, rng, target, src, name).map_err(|e| e.to_string())
}

fn small(ctx: &Ctx) -> Ctx {
    Ctx {
        cfg: ctx.cfg.with_sizes(ctx.cfg.sizes.min(Sizes::SMALL)),
        ..*ctx
    }
}

fn fam_generators(ctx: &Ctx, rng: &mut ChaCha8Rng) -> CaseResult {
    let seed: u64 = rng.gen();
    let cfg = ctx.cfg.with_seed(seed);
    let n0 = Arc::new(super::gen::gen_network(&cfg).map_err(|e| e.to_string())?);
    let again = super::gen::gen_network(&cfg).map_err(|e| e.to_string())?;
    let p = hom(ctx, rng, &n0, "src", "p")?;
    let rn = validate_network(&n0);
    let rp = validate_homomorphism(&p);
    let verdicts = vec![
        holds(rn.is_empty(), || format!("generated network is invalid:\n{rn}")),
        holds(rp.is_empty(), || format!("generated homomorphism is invalid:\n{rp}")),
        holds(*n0 == again, || "same seed gave different networks".into()),
    ];
    case(verdicts, Instance::Homs(vec![p.clone()]), !p.source().glue().is_empty())
}

fn fam_formats(ctx: &Ctx, rng: &mut ChaCha8Rng) -> CaseResult {
    let n0 = Arc::new(net(ctx, rng, "n0")?);
    let p = hom(ctx, rng, &n0, "n1", "p")?;
    let text = serialize_network(&n0);
    let net_ok = match parse_document(&text) {
        Ok(doc) => doc.networks.len() == 1 && doc.networks[0] == *n0 && serialize_network(&doc.networks[0]) == text,
        Err(_) => false,
    };
    let bundle = serialize_bundle(&[p.source(), p.target()], &[&p]);
    let hom_ok = parse_document(&bundle)
        .and_then(|d| d.homs())
        .map(|hs| hs.len() == 1 && hs[0] == p && serialize_hom(&hs[0]) == serialize_hom(&p))
        .unwrap_or(false);
    let verdicts = vec![
        holds(net_ok, || "network round trip changed the network".into()),
        holds(hom_ok, || "hom round trip changed the homomorphism".into()),
    ];
    let glued = !p.source().glue().is_empty();
    case(verdicts, Instance::Homs(vec![p]), glued)
}

fn fam_oracles(ctx: &Ctx, rng: &mut ChaCha8Rng) -> CaseResult {
    let (r, f) = gen_relation_function(rng, 6, DEFAULT_ORACLE_CAP);
    let fast = is_minimal_rel_function(&r, &f).map_err(|e| e.to_string())?;
    let slow = minimal_rel_function_oracle(&r, &f, DEFAULT_ORACLE_CAP).map_err(|e| e.to_string())?;
    let o14 = holds(fast == slow, || {
        format!("R = {r:?}, f = {:?}: fast {fast}, oracle {slow}", f.relation())
    });

    let small = small(ctx);
    let n = net(&small, rng, "n")?;
    let o17 = match (
        is_minimal_rel_network_fast(&n),
        minimal_rel_network_oracle(&n, ctx.opts.oracle_cap),
    ) {
        (Ok(fast), Ok(slow)) => holds(fast.minimal == slow, || {
            format!("fast ({:?}) says {}, oracle says {slow}", fast.method, fast.minimal)
        }),
        _ => Verdict::Vacuous,
    };
    let o8a = match (
        check_semidefinite(&n, &ctx.opts),
        clause_8a_oracle(&n, ctx.opts.enum_cap),
    ) {
        (Ok(sd), Ok(slow)) => {
            let fast = !sd.violations.has("SD-8a");
            holds(fast == slow, || {
                format!("(8a) fixpoint says {fast}, enumeration says {slow}")
            })
        }
        _ => Verdict::Vacuous,
    };
    let doc = format!("# R = {r:?}\n# f = {:?}\n{}", f.relation(), serialize_network(&n));
    case(vec![o14, o17, o8a], Instance::Text(doc), !n.glue().is_empty())
}

fn fam_l15(ctx: &Ctx, rng: &mut ChaCha8Rng) -> CaseResult {
    let n0 = Arc::new(net(ctx, rng, "n0")?);
    let p = hom(ctx, rng, &n0, "n1", "p")?;
    let q = hom(ctx, rng, p.source(), "n2", "q")?;
    let hyp = validate_homomorphism(&p).is_empty() && validate_homomorphism(&q).is_empty();
    let v = given(hyp, || match compose_homs(&p, &q) {
        Ok(pq) => {
            let r = validate_homomorphism(&pq);
            let pointwise = q.map().iter().all(|(x, y)| pq.apply(x) == p.apply(y));
            holds(r.is_empty() && pointwise, || {
                format!("composite is not a homomorphism:\n{r}")
            })
        }
        Err(e) => Verdict::Fail(e.to_string()),
    });
    let glued = !q.source().glue().is_empty();
    case(vec![v], Instance::Homs(vec![p, q]), glued)
}

fn is_identity(h: &Homomorphism) -> bool {
    h.source().universe().len() == h.map().len() && h.map().iter().all(|(x, y)| x == y)
}

fn fam_l16(ctx: &Ctx, rng: &mut ChaCha8Rng) -> CaseResult {
    let n0 = Arc::new(net(ctx, rng, "n0")?);
    let one = Ctx {
        cfg: GenConfig { fanout: 1, ..ctx.cfg },
        ..*ctx
    };
    let f = shuffle_names(&hom(&one, rng, &n0, "n1", "f")?, rng);
    let hyp = validate_homomorphism(&f).is_empty() && f.is_bijective();
    let v = given(hyp, || match invert_hom(&f) {
        Ok(g) => {
            let r = validate_homomorphism(&g);
            let ids = match (compose_homs(&g, &f), compose_homs(&f, &g)) {
                (Ok(gf), Ok(fg)) => is_identity(&gf) && is_identity(&fg),
                _ => false,
            };
            holds(r.is_empty() && ids, || {
                format!("inverse is not a two-sided inverse homomorphism:\n{r}")
            })
        }
        Err(e) => Verdict::Fail(e.to_string()),
    });
    let glued = !f.source().glue().is_empty();
    case(vec![v], Instance::Homs(vec![f]), glued)
}

fn fam_l17(ctx: &Ctx, rng: &mut ChaCha8Rng) -> CaseResult {
    let n = net(&small(ctx), rng, "n")?;
    let inc = n.incidence().expect("validated");
    let gp = gluing_parts(&n);
    let eqs = layer_equations(&n, inc, &gp);
    let eqs_hold = eqs.iter().all(|(_, ok)| *ok);
    let oracle = minimal_rel_network_oracle(&n, ctx.opts.oracle_cap).ok();
    let id_k = n.id(Sort::Facet);
    let gk_inv = inverse(&gp.g_k);
    let functional = is_sub(&compose(&gp.g_k, &gk_inv).unwrap(), &id_k).unwrap();
    let covered = is_sub(
        &id_k,
        &join(&compose(&gp.g_k, &gk_inv).unwrap(), &compose(&gk_inv, &gp.g_k).unwrap()).unwrap(),
    )
    .unwrap();
    let failing = || {
        eqs.iter()
            .filter(|(_, ok)| !ok)
            .map(|(l, _)| *l)
            .collect::<Vec<_>>()
            .join(", ")
    };
    let i = given(oracle == Some(true), || {
        holds(eqs_hold, || format!("minimal, but layer equations fail: {}", failing()))
    });
    let ii = given(oracle.is_some() && functional && covered && eqs_hold, || {
        holds(oracle == Some(true), || {
            "facet conditions and layer equations hold, but G is not minimal".into()
        })
    });
    let glued = !n.glue().is_empty();
    case(vec![i, ii], Instance::Nets(vec![n]), glued)
}

fn fam_l18(ctx: &Ctx, rng: &mut ChaCha8Rng) -> CaseResult {
    let n = net(ctx, rng, "n")?;
    let d = ctx.definite(&n);
    let v = given(d.as_ref().and_then(|d| d.holds()) == Some(true), || {
        let sd = check_semidefinite(&n, &ctx.opts);
        match sd {
            Ok(r) if r.holds() != Some(false) => Verdict::Pass,
            Ok(r) => Verdict::Fail(format!("definite but not semi-definite:\n{}", r.violations)),
            Err(e) => Verdict::Fail(e.to_string()),
        }
    });
    let glued = !n.glue().is_empty();
    case(vec![v], Instance::Nets(vec![n]), glued)
}

/// Source and target relations of a homomorphism over the joint universe.
struct Frame<'a> {
    n1: &'a Network,
    n0: &'a Network,
    j: Joint,
}

impl<'a> Frame<'a> {
    fn new(p: &'a Homomorphism) -> Self {
        Self {
            n1: p.source(),
            n0: p.target(),
            j: Joint::new(p),
        }
    }

    fn src(&self, r: &Relation) -> Relation<Tagged> {
        self.j.lift(Side::Source, r)
    }

    fn tgt(&self, r: &Relation) -> Relation<Tagged> {
        self.j.lift(Side::Target, r)
    }

    fn id_src<'b>(&self, set: impl IntoIterator<Item = &'b Element>) -> Relation<Tagged> {
        let tagged: Vec<Tagged> = set.into_iter().map(|x| (Side::Source, x.clone())).collect();
        id_on(&self.j.universe, tagged.iter()).unwrap()
    }

    fn p(&self) -> &Relation<Tagged> {
        self.j.pbar()
    }

    /// `p̄⁻¹∘p̄`: pairs of source elements with equal images.
    fn kernel(&self) -> Relation<Tagged> {
        compose(&inverse(self.p()), self.p()).unwrap()
    }
}

fn o<T: crate::relation::Atom>(outer: &Relation<T>, inner: &Relation<T>) -> Relation<T> {
    compose(outer, inner).unwrap()
}

fn ch<T: crate::relation::Atom>(rels: &[&Relation<T>]) -> Relation<T> {
    chain(rels).unwrap()
}

fn cup<T: crate::relation::Atom>(a: &Relation<T>, b: &Relation<T>) -> Relation<T> {
    join(a, b).unwrap()
}

fn cap<T: crate::relation::Atom>(a: &Relation<T>, b: &Relation<T>) -> Relation<T> {
    meet(a, b).unwrap()
}

fn le<T: crate::relation::Atom>(a: &Relation<T>, b: &Relation<T>) -> bool {
    is_sub(a, b).unwrap()
}

/// `E →F H_Y ←S E` is a sum diagram for `H_Y = A⁻¹(N ∪ Y)`.
fn sum_over(n: &Network, y: &BTreeSet<Element>) -> bool {
    let hy: BTreeSet<&Element> = n
        .hooks()
        .iter()
        .filter(|h| n.a(h).is_some_and(|at| at.sort() == Sort::Node || y.contains(at)))
        .collect();
    let mut ends: Vec<&Element> = n
        .edges()
        .iter()
        .flat_map(|e| [n.f(e).unwrap(), n.s(e).unwrap()])
        .collect();
    ends.sort();
    let distinct = ends.windows(2).all(|w| w[0] != w[1]);
    let set: BTreeSet<&Element> = ends.into_iter().collect();
    distinct && set == hy
}

/// `G_K⁻¹` is the graph of a function on `K ∖ dom(G)`.
fn facet_function(n: &Network) -> bool {
    let g_k = n.glue_part(Sort::Facet);
    let dom = n.glue().domain();
    let free: Vec<Element> = n.facets().iter().filter(|k| !dom.contains(*k)).cloned().collect();
    FnGraph::new(inverse(&g_k), free).is_ok()
}

fn fam_homs(ctx: &Ctx, rng: &mut ChaCha8Rng) -> CaseResult {
    let n0 = Arc::new(net(ctx, rng, "n0")?);
    let p = hom(ctx, rng, &n0, "n1", "p")?;
    if !validate_homomorphism(&p).is_empty() {
        return Err("generated homomorphism is invalid".into());
    }
    let fr = Frame::new(&p);
    let (n1, n0) = (fr.n1, fr.n0);
    let (i1, i0) = (n1.incidence().unwrap(), n0.incidence().unwrap());
    let gp1 = gluing_parts(n1);
    let gp0 = gluing_parts(n0);
    let g1 = fr.src(n1.glue());
    let pk = fr.kernel();
    let id_all = fr.id_src(n1.universe().iter());
    let mut v = Vec::new();

    // L19: any homomorphism.
    v.push(holds(le(&cap(&pk, &o(&g1, &inverse(&g1))), &id_all), || {
        "p̄⁻¹∘p̄ ∩ G1∘G1⁻¹ ⊄ id".into()
    }));
    let a1 = fr.src(i1.a.relation());
    let c1 = fr.src(i1.c.relation());
    let lhs = cap(
        &ch(&[&inverse(fr.p()), &fr.tgt(&gp0.g_h), fr.p()]),
        &ch(&[&inverse(&a1), &fr.src(&cup(&gp1.g_n, &gp1.g_sigma)), &a1]),
    );
    v.push(holds(lhs == fr.src(&gp1.g_h), || "hook equation fails".into()));
    let lhs = cap(
        &ch(&[&inverse(fr.p()), &fr.tgt(&gp0.g_k), fr.p()]),
        &ch(&[&inverse(&c1), &fr.src(&gp1.g_e), &c1]),
    );
    v.push(holds(lhs == fr.src(&gp1.g_k), || "facet equation fails".into()));
    let a0 = fr.tgt(i0.a.relation());
    let c0 = fr.tgt(i0.c.relation());
    v.push(holds(o(&inverse(&a0), fr.p()) == o(fr.p(), &inverse(&a1)), || {
        "A0⁻¹∘p̄ ≠ p̄∘A1⁻¹".into()
    }));
    v.push(holds(o(&inverse(&c0), fr.p()) == o(fr.p(), &inverse(&c1)), || {
        "C0⁻¹∘p̄ ≠ p̄∘C1⁻¹".into()
    }));

    // L20: semi-definite target.
    let semi = ctx.semidefinite(n0) == Some(true);
    let g = n1.glue();
    let (a, c, f, s, w) = (
        i1.a.relation(),
        i1.c.relation(),
        i1.f.relation(),
        i1.s.relation(),
        i1.w.relation(),
    );
    let id_k = n1.id(Sort::Facet);
    let gk = &gp1.g_k;
    v.push(given(semi, || {
        holds(le(&o(gk, &inverse(gk)), &id_k), || "G1K∘G1K⁻¹ ⊄ id_K".into())
    }));
    v.push(given(semi, || {
        holds(o(f, g) == o(g, f) && o(s, g) == o(g, s), || {
            "F̄∘G1 ≠ G1∘F̄ or S̄∘G1 ≠ G1∘S̄".into()
        })
    }));
    v.push(given(semi, || {
        holds(gp1.g_n == ch(&[&n1.id(Sort::Node), a, &gp1.g_h, &inverse(a)]), || {
            "G1N equation fails".into()
        })
    }));
    v.push(given(semi, || {
        holds(gp1.g_e == ch(&[c, gk, &inverse(c)]), || "G1E equation fails".into())
    }));

    // L21: Y ⊆ Σ1 with a sum over A1⁻¹(N1 ∪ Y), and G1K⁻¹ functional.
    let sigma: Vec<Element> = n1.symbols().iter().cloned().collect();
    let y21: BTreeSet<Element> = if rng.gen_bool(0.5) {
        sigma.iter().cloned().collect()
    } else {
        sigma.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
    };
    let h21 = semi && sum_over(n1, &y21) && facet_function(n1);
    let hooks_y: Vec<&Element> = n1
        .hooks()
        .iter()
        .filter(|h| n1.a(h).is_some_and(|at| at.sort() == Sort::Node || y21.contains(at)))
        .collect();
    let id_hy = n1.id_set(hooks_y).unwrap();
    let ge = &gp1.g_e;
    v.push(given(h21, || {
        let rhs = cup(&ch(&[f, ge, &inverse(f)]), &ch(&[s, ge, &inverse(s)]));
        holds(o(g, &id_hy) == rhs, || "G1∘id_{A1⁻¹(N1∪Y)} equation fails".into())
    }));
    v.push(given(h21, || {
        holds(id_k == cup(&o(gk, &inverse(gk)), &o(&inverse(gk), gk)), || {
            "facets not exactly covered".into()
        })
    }));
    v.push(given(h21, || {
        let gen = fr.src(ge);
        holds(le(&cap(&pk, &o(&inverse(&gen), &gen)), &fr.id_src(n1.edges())), || {
            "edge kernel condition fails".into()
        })
    }));
    v.push(given(h21, || {
        let an: Vec<&Element> = n1
            .hooks()
            .iter()
            .filter(|h| n1.a(h).is_some_and(|x| x.sort() == Sort::Node))
            .collect();
        let id_an = fr.id_src(an);
        let rhs = ch(&[&id_an, &inverse(&g1), &g1, &id_an]);
        holds(le(&cap(&pk, &rhs), &id_an), || {
            "node-hook kernel condition fails".into()
        })
    }));
    v.push(given(h21, || {
        let gn = fr.src(&gp1.g_n);
        holds(le(&cap(&pk, &o(&inverse(&gn), &gn)), &fr.id_src(n1.nodes())), || {
            "node kernel condition fails".into()
        })
    }));
    v.push(given(h21, || holds(is_forest(&gp1.g_n), || "G1N has a cycle".into())));

    // L22: W1(N1) ⊆ Y ⊆ Σ1 with the sum, and W1∘A1∘F1 = W1∘A1∘S1.
    let wn: BTreeSet<Element> = n1.nodes().iter().filter_map(|x| n1.w(x).cloned()).collect();
    let y22: BTreeSet<Element> = sigma
        .iter()
        .filter(|x| wn.contains(*x) || rng.gen_bool(0.5))
        .cloned()
        .collect();
    let same_whole = ch(&[w, a, f]) == ch(&[w, a, s]);
    let h22 = semi && sum_over(n1, &y22) && same_whole;
    let id_y = n1.id_set(&y22).unwrap();
    let id_sigma = n1.id(Sort::Symbol);
    let a_sand = ch(&[a, &gp1.g_h, &inverse(a)]);
    v.push(given(h22, || {
        holds(o(&id_sigma, &a_sand) == o(&a_sand, &id_sigma), || {
            "hook sandwich does not commute with id_Σ".into()
        })
    }));
    v.push(given(h22, || {
        let rhs = o(&cup(&ch(&[w, &gp1.g_n, &inverse(w)]), &o(&id_sigma, &a_sand)), &id_y);
        holds(o(g, &id_y) == rhs, || "G1∘id_Y equation fails".into())
    }));
    v.push(given(h22, || {
        holds(le(&o(g, &id_y), &o(&id_y, g)), || "G1∘id_Y ⊄ id_Y∘G1".into())
    }));

    // L23: the certificate.
    let h23 = semi && ctx.certificate_holds(&p);
    v.push(given(h23, || match ctx.definite(n1) {
        Some(r) if r.holds() == Some(true) => Verdict::Pass,
        Some(r) => Verdict::Fail(format!(
            "certificate holds but the source is not definite:\n{}",
            r.violations
        )),
        None => Verdict::Fail("definiteness check failed".into()),
    }));
    let glued = !p.source().glue().is_empty();
    case(v, Instance::Homs(vec![p]), glued)
}

fn fam_l24(ctx: &Ctx, rng: &mut ChaCha8Rng) -> CaseResult {
    let n0 = Arc::new(net(ctx, rng, "n0")?);
    let p = hom(ctx, rng, &n0, "n1", "p")?;
    let n = p.source();
    let elems: Vec<&Element> = n.universe().iter().collect();
    let k = rng.gen_range(0..=3.min(elems.len()));
    let seed: Vec<Element> = elems.choose_multiple(rng, k).map(|x| (*x).clone()).collect();
    let sub = extract_subnetwork(n, seed).map_err(|e| e.to_string())?;

    let i = id_on(n.universe(), sub.universe().iter()).unwrap();
    let g_sub = Relation::from_pairs(n.universe(), sub.parts().glue.iter().cloned()).unwrap();
    let v_i = holds(g_sub == o(n.glue(), &i), || "G' ≠ G∘I".into());
    let rs = validate_subnetwork(n, &sub);
    let rn = validate_network(&sub);
    let v_ii = holds(rs.is_empty() && rn.is_empty(), || format!("{rs}{rn}"));
    let free = |net: &Network| -> BTreeSet<Element> {
        let dom = net.glue().domain();
        net.facets().iter().filter(|k| !dom.contains(*k)).cloned().collect()
    };
    let v_iii = holds(free(&sub).is_subset(&free(n)), || "K'∖dom(G') ⊄ K∖dom(G)".into());
    let incl = inclusion_hom(&sub, n);
    let v_iv = match &incl {
        Ok(h) => {
            let r = validate_homomorphism(h);
            holds(r.is_empty(), || format!("inclusion is not a homomorphism:\n{r}"))
        }
        Err(e) => Verdict::Fail(e.to_string()),
    };
    let v_r = match (restrict_hom(&p, &sub), incl.as_ref().map(|h| compose_homs(&p, h))) {
        (Ok(r), Ok(Ok(c))) => holds(r.map() == c.map() && validate_homomorphism(&r).is_empty(), || {
            "restriction differs from composition with the inclusion".into()
        }),
        _ => Verdict::Fail("restriction or composition failed".into()),
    };
    let doc = format!(
        "{}\n{}",
        Instance::Homs(vec![p.clone()]).document(),
        serialize_network(&sub)
    );
    let glued = !sub.glue().is_empty();
    case(vec![v_i, v_ii, v_iii, v_iv, v_r], Instance::Text(doc), glued)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_sizes_pass() {
        let cfg = GenConfig::default().with_sizes(Sizes::ZERO).with_cases(10);
        for r in run_law_suite(&cfg) {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn deterministic() {
        let cfg = GenConfig::default().with_cases(20).with_seed(11);
        assert_eq!(run_law_suite(&cfg), run_law_suite(&cfg));
    }

    #[test]
    fn law_ids_are_unique() {
        let ids = law_ids();
        let set: BTreeSet<_> = ids.iter().collect();
        assert_eq!(set.len(), ids.len());
    }
}
