//! Command dispatch over a parsed document.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use zhangtwist::cocycle::{
    extend_functionals, pair_from_twist, twist_from_cocycle, verify_cocycle, verify_functional,
    verify_main_theorem_with, Cocycle,
};
use zhangtwist::exactlin::Field;
use zhangtwist::homog::{Algebra, Presentation};
use zhangtwist::hopfenv::{emit_envelope, Family};
use zhangtwist::koszul::{
    dual_twisting_system, koszul_dual, verify_dual_pairing, verify_dual_twist_compat,
};
use zhangtwist::manin::{bullet, endr, verify_bialgebra, verify_bullet_twist_compat};
use zhangtwist::random::random_preserving_systems;
use zhangtwist::report::{Report, Status};
use zhangtwist::twist::{
    check_preserves_ideal, check_preserves_r, verify_axioms, zhang_twist, InducedMaps,
    TwistingSystem, Window,
};

use crate::parse::{render_algebra, render_field, AlgebraDecl, Document, TwistDecl};

pub const DEFAULT_CAP: usize = 4;
pub const RANDOM_BULLET_RUNS: usize = 20;
pub const RANDOM_THEOREM_RUNS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Hilbert,
    Twist,
    Koszul,
    Bullet,
    Endr,
    VerifyTwist,
    VerifyDual,
    VerifyBullet,
    VerifyCocycle,
    VerifyTheorem,
    EmitEnvelope(usize),
    VerifyAll,
}

impl Command {
    /// `level` is only read by `emit-envelope`.
    pub fn parse(name: &str, level: Option<usize>) -> Option<Command> {
        Some(match name {
            "hilbert" => Command::Hilbert,
            "twist" => Command::Twist,
            "koszul" => Command::Koszul,
            "bullet" => Command::Bullet,
            "endr" => Command::Endr,
            "verify-twist" => Command::VerifyTwist,
            "verify-dual" => Command::VerifyDual,
            "verify-bullet" => Command::VerifyBullet,
            "verify-cocycle" => Command::VerifyCocycle,
            "verify-theorem" => Command::VerifyTheorem,
            "emit-envelope" => Command::EmitEnvelope(level?),
            "verify-all" => Command::VerifyAll,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Hilbert => "hilbert",
            Command::Twist => "twist",
            Command::Koszul => "koszul",
            Command::Bullet => "bullet",
            Command::Endr => "endr",
            Command::VerifyTwist => "verify-twist",
            Command::VerifyDual => "verify-dual",
            Command::VerifyBullet => "verify-bullet",
            Command::VerifyCocycle => "verify-cocycle",
            Command::VerifyTheorem => "verify-theorem",
            Command::EmitEnvelope(_) => "emit-envelope",
            Command::VerifyAll => "verify-all",
        }
    }

    fn needs_twist(self) -> bool {
        !matches!(
            self,
            Command::Hilbert
                | Command::Koszul
                | Command::Bullet
                | Command::Endr
                | Command::EmitEnvelope(_)
        )
    }
}

/// Command-line overrides of the document settings.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub cap: Option<usize>,
    pub window: Option<Window>,
    pub seed: Option<u64>,
    pub algebra: Option<String>,
    pub twist: Option<String>,
}

/// Usage errors: exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum UsageError {
    #[error("document declares no algebra")]
    NoAlgebra,
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("unknown twist `{0}`")]
    UnknownTwist(String),
    #[error("twist `{0}` is declared on `{1}`, not `{2}`")]
    TwistOnOtherAlgebra(String, String, String),
    #[error("`{0}` needs a twist on `{1}`")]
    NoTwist(String, String),
    #[error("cap {0} is below m={1}")]
    CapBelowDegree(usize, usize),
    #[error("{0}")]
    Build(#[from] zhangtwist::Error),
}

/// The resolved inputs of one run.
pub struct Session {
    pub field: Field,
    pub cap: usize,
    pub window: Window,
    pub seed: Option<u64>,
    pub algebra: AlgebraDecl,
    pub twist: Option<(TwistDecl, Arc<TwistingSystem>)>,
}

impl Session {
    pub fn resolve(doc: &Document, cmd: Command, ov: &Overrides) -> Result<Session, UsageError> {
        let twist_decl = match &ov.twist {
            Some(t) => Some(
                doc.twist(t)
                    .ok_or_else(|| UsageError::UnknownTwist(t.clone()))?,
            ),
            None => None,
        };
        let algebra = match (&ov.algebra, twist_decl) {
            (Some(a), _) => doc
                .algebra(a)
                .ok_or_else(|| UsageError::UnknownAlgebra(a.clone()))?,
            (None, Some(t)) => doc.algebra(&t.on).expect("parser checks twist targets"),
            (None, None) => doc.algebras.first().ok_or(UsageError::NoAlgebra)?,
        };
        let twist_decl = match twist_decl {
            Some(t) if t.on != algebra.name => {
                return Err(UsageError::TwistOnOtherAlgebra(
                    t.name.clone(),
                    t.on.clone(),
                    algebra.name.clone(),
                ))
            }
            Some(t) => Some(t),
            None => doc.twists.iter().find(|t| t.on == algebra.name),
        };
        let m = algebra.presentation.m();
        let cap = ov.cap.or(doc.config.cap).unwrap_or(DEFAULT_CAP.max(m));
        if cap < m {
            return Err(UsageError::CapBelowDegree(cap, m));
        }
        let window = ov
            .window
            .or(doc.config.window)
            .unwrap_or_else(|| Window::default_for(cap, m));
        let field = doc.config.field;
        let g = algebra.presentation.gens().len();
        let twist = match twist_decl {
            Some(t) => Some((t.clone(), Arc::new(t.system(field, g, window)?))),
            None if cmd.needs_twist() => {
                return Err(UsageError::NoTwist(cmd.name().into(), algebra.name.clone()))
            }
            None => None,
        };
        Ok(Session {
            field,
            cap,
            window,
            seed: ov.seed.or(doc.config.seed),
            algebra: algebra.clone(),
            twist,
        })
    }

    fn pres(&self) -> &Presentation {
        &self.algebra.presentation
    }

    fn sys(&self) -> &Arc<TwistingSystem> {
        &self
            .twist
            .as_ref()
            .expect("resolved for commands that need it")
            .1
    }
}

#[derive(Debug, Serialize)]
pub struct Outcome {
    pub command: String,
    pub algebra: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
    pub field: String,
    pub cap: usize,
    pub window: Window,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub output: String,
    pub checks: Vec<zhangtwist::report::CheckRecord>,
    pub elapsed_ms: f64,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else {
            0
        }
    }

    /// Output text followed by the sorted summary lines.
    pub fn text(&self) -> String {
        let mut out = self.output.clone();
        if !self.checks.is_empty() {
            out.push_str(
                &Report {
                    checks: self.checks.clone(),
                }
                .summary(),
            );
        }
        out
    }
}

pub fn run(s: &Session, cmd: Command) -> Outcome {
    let started = Instant::now();
    let mut output = String::new();
    let mut rep = Report::new();
    if let Err(e) = dispatch(s, cmd, &mut output, &mut rep) {
        let t = Instant::now();
        rep.record("aborted", Some(e.to_string()), t);
    }
    rep.sort();
    Outcome {
        command: cmd.name().into(),
        algebra: s.algebra.name.clone(),
        twist: s.twist.as_ref().map(|(t, _)| t.name.clone()),
        field: render_field(s.field),
        cap: s.cap,
        window: s.window,
        seed: s.seed,
        output,
        checks: rep.checks,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    }
}

fn dispatch(
    s: &Session,
    cmd: Command,
    out: &mut String,
    rep: &mut Report,
) -> zhangtwist::Result<()> {
    let name = &s.algebra.name;
    match cmd {
        Command::Hilbert => {
            let dims = Algebra::new(s.pres().clone(), s.cap).hilbert_dims(s.cap)?;
            out.push_str(
                &dims
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push('\n');
        }
        Command::Twist => {
            let pre = check_preserves_r(s.sys(), s.pres());
            let ok = pre.all_passed();
            rep.merge(pre);
            if ok {
                let tw = zhang_twist(s.pres(), s.sys().clone())?.presentation;
                out.push_str(&render_algebra(
                    &format!("{name}_tau"),
                    &tw,
                    &tw.relation_tensors(),
                ));
            }
        }
        Command::Koszul => {
            let d = koszul_dual(s.pres());
            out.push_str(&render_algebra(
                &format!("{name}_dual"),
                &d,
                &d.relation_tensors(),
            ));
        }
        Command::Bullet => {
            let b = bullet(s.pres(), &koszul_dual(s.pres()))?;
            out.push_str(&render_algebra(
                &format!("{name}_bullet"),
                &b,
                &b.relation_tensors(),
            ));
        }
        Command::Endr => out.push_str(&endr(s.pres(), s.pres().m())?.dump()),
        Command::VerifyTwist => rep.merge(verify_twist(s)?),
        Command::VerifyDual => rep.merge(verify_dual(s)?),
        Command::VerifyBullet => rep.merge(verify_bullet(s)?),
        Command::VerifyCocycle => rep.merge(verify_cocycle_suite(s.pres(), s.sys(), s.cap)?),
        Command::VerifyTheorem => rep.merge(verify_theorem(s)?),
        Command::EmitEnvelope(k) => {
            let (dump, r) = envelope(s.pres(), k)?;
            out.push_str(&dump);
            rep.merge(r);
        }
        Command::VerifyAll => {
            rep.merge(verify_twist(s)?.prefixed("twist"));
            rep.merge(verify_dual(s)?.prefixed("dual"));
            rep.merge(verify_bullet(s)?.prefixed("bullet"));
            rep.merge(verify_cocycle_suite(s.pres(), s.sys(), s.cap)?.prefixed("cocycle"));
            rep.merge(verify_theorem(s)?.prefixed("theorem"));
            rep.merge(envelope(s.pres(), 1)?.1.prefixed("envelope"));
        }
    }
    Ok(())
}

fn verify_twist(s: &Session) -> zhangtwist::Result<Report> {
    let alg = Arc::new(Algebra::new(s.pres().clone(), s.cap));
    let mut rep = check_preserves_r(s.sys(), s.pres());
    rep.merge(check_preserves_ideal(s.sys(), &alg, s.cap));
    if rep.all_passed() {
        let maps = InducedMaps::new(alg.clone(), s.sys().clone());
        rep.merge(verify_axioms(&maps, &alg, s.cap)?);
    } else {
        rep.skip("axioms", "twisting system does not preserve R");
    }
    Ok(rep)
}

fn verify_dual(s: &Session) -> zhangtwist::Result<Report> {
    let mut rep = verify_dual_pairing(s.sys(), s.cap);
    rep.merge(verify_dual_twist_compat(s.pres(), s.sys(), s.cap)?);
    Ok(rep)
}

fn bullet_compat(
    pres: &Presentation,
    sys: &Arc<TwistingSystem>,
    d: usize,
) -> zhangtwist::Result<Report> {
    let dual = koszul_dual(pres);
    let dual_sys = Arc::new(dual_twisting_system(sys));
    verify_bullet_twist_compat(pres, &dual, sys, &dual_sys, d)
}

fn verify_bullet(s: &Session) -> zhangtwist::Result<Report> {
    let mut rep = bullet_compat(s.pres(), s.sys(), s.cap)?;
    random_runs(s, "random-bullet", RANDOM_BULLET_RUNS, &mut rep, |sys| {
        bullet_compat(s.pres(), sys, s.cap)
    })?;
    Ok(rep)
}

/// Runs `f` on seeded random diagonal systems preserving `R` and folds the
/// results into one check. Without a seed the check is skipped.
fn random_runs(
    s: &Session,
    name: &str,
    count: usize,
    rep: &mut Report,
    f: impl Fn(&Arc<TwistingSystem>) -> zhangtwist::Result<Report>,
) -> zhangtwist::Result<()> {
    let Some(seed) = s.seed else {
        rep.skip(name, "no seed");
        return Ok(());
    };
    let t = Instant::now();
    let systems = random_preserving_systems(s.pres(), s.window, count, 50 * count, seed)?;
    let mut witness = (systems.len() < count).then(|| format!("found={}<{count}", systems.len()));
    for (k, sys) in systems.into_iter().enumerate() {
        if witness.is_some() {
            break;
        }
        let r = f(&Arc::new(sys))?;
        witness = r
            .failures()
            .next()
            .map(|bad| format!("run={k}:{}", bad.name));
    }
    rep.record_with_note(
        name,
        witness,
        Some(format!("{count} systems, seed {seed}")),
        t,
    );
    Ok(())
}

/// Bialgebra laws, pair axioms, functional conditions and the cocycle
/// identities on `end^r(A)`, for a cap `d`.
pub fn verify_cocycle_suite(
    pres: &Presentation,
    sys: &Arc<TwistingSystem>,
    d: usize,
) -> zhangtwist::Result<Report> {
    let pre = check_preserves_r(sys, pres);
    if !pre.all_passed() {
        let mut rep = pre;
        rep.skip("cocycle", "twisting system does not preserve R");
        return Ok(rep);
    }
    let e = Arc::new(endr(pres, d)?);
    let lower = d.saturating_sub(1);
    let half = d / 2;
    let mut rep = verify_bialgebra(&e, lower)?.prefixed("bialgebra");

    let (pair, pair_rep) = pair_from_twist(e.clone(), sys.clone(), lower)?;
    rep.merge(pair_rep.prefixed("pair"));

    let alpha = pair.alpha(lower)?;
    rep.merge(verify_functional(&e, &alpha, lower)?.prefixed("functional"));
    let (ext, ext_rep) = extend_functionals(&e, sys, lower)?;
    rep.merge(ext_rep.prefixed("functional"));
    let t = Instant::now();
    let witness = alpha
        .keys()
        .find(|&(i, n)| {
            ext.get(i, n) != alpha.get(i, n) || ext.get_inverse(i, n) != alpha.get_inverse(i, n)
        })
        .map(|(i, n)| format!("i={i},deg={n}"));
    rep.record("functional/pipelines-agree", witness, t);

    let mutant_index = 2;
    if sys.window().contains(mutant_index) && lower >= 2 {
        let t = Instant::now();
        let bad = alpha.corrupted(mutant_index, &e.field().from_i64(2))?;
        let r = verify_functional(&e, &bad, 2)?;
        let verdicts: String = (1..=4)
            .map(|k| {
                if r.status(&format!("functional-cond-{k}")) == Some(Status::Fail) {
                    'F'
                } else {
                    'T'
                }
            })
            .collect();
        rep.record(
            "functional/mutant-fails-all",
            (verdicts != "FFFF").then(|| format!("verdicts={verdicts}")),
            t,
        );
    } else {
        rep.skip(
            "functional/mutant-fails-all",
            "mutant index outside the window",
        );
    }

    let c = Cocycle::from_pair(&pair, d)?;
    rep.merge(verify_cocycle(&pair, &c, d, half, half)?.prefixed("cocycle"));
    Ok(rep)
}

/// The theorem on `A`, then the roundtrip from the functionals back to the
/// degree-one matrices.
pub fn theorem_with_roundtrip(
    pres: &Presentation,
    sys: &Arc<TwistingSystem>,
    d: usize,
) -> zhangtwist::Result<Report> {
    let pre = check_preserves_r(sys, pres);
    if !pre.all_passed() {
        let mut rep = pre;
        rep.skip("theorem-products", "twisting system does not preserve R");
        return Ok(rep);
    }
    let e = Arc::new(endr(pres, d.max(pres.m()))?);
    let pair = zhangtwist::cocycle::TwistingPair::new(e.clone(), sys.clone())?;
    let top = d.saturating_sub(1).max(pres.m() - 1);
    let c = Cocycle::from_pair(&pair, top)?;
    let mut rep = verify_main_theorem_with(&c, sys, d, pre)?;

    let (back, back_rep) = twist_from_cocycle(&e, c.alpha(), top)?;
    rep.merge(back_rep);
    let t = Instant::now();
    let witness = sys
        .indices()
        .find(|&i| {
            back.deg1(i).ok() != sys.deg1(i).ok()
                || back.deg1_inverse(i).ok() != sys.deg1_inverse(i).ok()
        })
        .map(|i| format!("tau_{i}"));
    rep.record("roundtrip-degree-one", witness, t);
    Ok(rep)
}

fn verify_theorem(s: &Session) -> zhangtwist::Result<Report> {
    let mut rep = theorem_with_roundtrip(s.pres(), s.sys(), s.cap)?;
    random_runs(s, "random-theorem", RANDOM_THEOREM_RUNS, &mut rep, |sys| {
        theorem_with_roundtrip(s.pres(), sys, s.cap)
    })?;
    Ok(rep)
}

/// Envelope dump and its checks; per level the families must number
/// `dim R(E)`, `n²` and `n²`.
pub fn envelope(pres: &Presentation, k: usize) -> zhangtwist::Result<(String, Report)> {
    let e = endr(pres, pres.m())?;
    let env = emit_envelope(&e, k);
    let mut rep = env.verify_counit();
    let t = Instant::now();
    let g = e.algebra().presentation().gens().len();
    let expect = [e.algebra().presentation().relations().dim(), g, g];
    let counts = env.counts();
    let witness = (0..=k)
        .find(|lvl| {
            let fams = counts.get(lvl).cloned().unwrap_or_default();
            let got = [
                Family::Relation,
                Family::AntipodeRight,
                Family::AntipodeLeft,
            ]
            .map(|f| fams.get(&f).copied().unwrap_or(0));
            got != expect
        })
        .map(|lvl| format!("level={lvl}"));
    rep.record("envelope-counts", witness, t);
    Ok((env.dump(), rep))
}
