//! End-to-end acceptance checks. Runs without the libtest harness and prints
//! one PASS/FAIL line per criterion.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fglue::encodings::{church_nat, nat_ops, nat_to_int};
use fglue::glue::{lift_raising, sentence_formula, virtual_traveller_demo, Coercion};
use fglue::kernel::gen::{TermGenerator, GENERATOR_SIGNATURE};
use fglue::kernel::{
    alpha_eq_terms, alpha_eq_types, normalize_with_fuel, parse_term_in, parse_type, step, typecheck,
    Context, Term, Type, TypeError,
};
use fglue::readback::{classify_order, print_formula, Formula, LogicTerm, Order};
use fglue::signature::{load_signature, prop, Choice, Signature};
use rand::rngs::StdRng;
use rand::SeedableRng;

use support::nameless;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const GENERATED_TERMS: u64 = 1_200;
const MAX_DEPTH: u64 = 8;
const FUEL: u64 = 100_000;

fn generated(sig: &Signature, seed: u64) -> (Term, Type) {
    let mut rng = StdRng::seed_from_u64(seed);
    TermGenerator::new(sig, (seed % (MAX_DEPTH + 1)) as usize).generate_closed(&mut rng)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn kernel_soundness() -> Outcome {
    let sig = load_signature(GENERATOR_SIGNATURE).unwrap();
    let ctx = Context::new(&sig);
    let start = Instant::now();
    let mut total_steps = 0;
    for seed in 0..GENERATED_TERMS {
        let (term, ty) = generated(&sig, seed);
        let checked = typecheck(&ctx, &term).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(alpha_eq_types(&checked, &ty), || format!("seed {seed}: generator type mismatch"))?;

        let mut cur = term.clone();
        let mut steps = 0;
        while let Some((next, _)) = step(&cur) {
            let next_ty = typecheck(&ctx, &next).map_err(|e| format!("seed {seed} step {steps}: {e}"))?;
            ensure(alpha_eq_types(&next_ty, &ty), || format!("seed {seed}: type changed at step {steps}"))?;
            cur = next;
            steps += 1;
            ensure(steps < FUEL, || format!("seed {seed}: no normal form within {FUEL} steps"))?;
        }
        total_steps += steps;

        let mut fuel = FUEL;
        let oracle = nameless::normalize(&nameless::from_term(&term), &mut fuel)
            .ok_or_else(|| format!("seed {seed}: oracle ran out of fuel"))?;
        ensure(nameless::from_term(&cur) == oracle, || format!("seed {seed}: strategies disagree on {term}"))?;
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{GENERATED_TERMS} terms, {total_steps} steps checked in {:.2?}",
        start.elapsed()
    ))
}

fn side_condition() -> Outcome {
    let sig = load_signature("sort e. sort t.").unwrap();
    let ctx = Context::new(&sig);
    let bad = parse_term_in("lam x:p. Lam p. x", &sig).unwrap();
    match typecheck(&ctx, &bad) {
        Err(TypeError::SideConditionViolation { .. }) => {}
        other => return Err(format!("`{bad}` gave {other:?}")),
    }
    let two = parse_term_in("Lam p. lam f:p->p. lam x:p. f (f x)", &sig).unwrap();
    let ty = typecheck(&ctx, &two).map_err(|e| e.to_string())?;
    let expected = parse_type("Pi p.(p->p)->(p->p)").unwrap();
    ensure(ty == expected, || format!("numeral typed at {ty}"))?;
    Ok(format!("rejected `{bad}`; numeral two : {ty}"))
}

fn church_arithmetic() -> Outcome {
    let ops = nat_ops();
    let start = Instant::now();
    let mut failures = Vec::new();
    for m in 0..=20u64 {
        for n in 0..=20u64 {
            let args = [church_nat(m), church_nat(n)];
            for (name, op, want) in [("add", &ops.add, m + n), ("mult", &ops.mult, m * n)] {
                let term = Term::apply(op.clone(), args.clone());
                let got = normalize_with_fuel(&term, FUEL).ok().and_then(|nf| nat_to_int(&nf.term));
                if got != Some(want) {
                    failures.push(format!("{name} {m} {n} = {got:?}"));
                }
            }
        }
    }
    ensure(failures.is_empty(), || format!("{} failures, first {}", failures.len(), failures[0]))?;
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("882 cases in {:.2?}", start.elapsed()))
}

fn specialization() -> Outcome {
    let sig = support::demo_signature();
    let ctx = Context::new(&sig);
    let mut sorts = 0;
    for sort in sig.sorts() {
        let s = Type::base(sort.clone());
        let pred = Type::arrow(s.clone(), prop());
        let forall = typecheck(&ctx, &Term::ty_app(Term::constant("forall"), s.clone())).map_err(|e| e.to_string())?;
        ensure(forall == Type::arrow(pred.clone(), prop()), || format!("forall{{{sort}}} : {forall}"))?;
        let tau = typecheck(&ctx, &Term::ty_app(Term::constant("tau"), s.clone())).map_err(|e| e.to_string())?;
        ensure(tau == Type::arrow(pred, Type::base("e")), || format!("tau{{{sort}}} : {tau}"))?;
        sorts += 1;
    }
    ensure(sorts >= 4, || format!("only {sorts} sorts declared"))?;
    Ok(format!("forall and tau specialize at all {sorts} sorts"))
}

fn readback_totality() -> Outcome {
    let lex = support::demo_lexicon();
    let sig = lex.signature();
    let sentences = support::first_order_sentences(sig);
    ensure(sentences.len() == 10, || format!("{} first-order sentences", sentences.len()))?;
    let mut first_order = 0;
    for s in &sentences {
        let (f, _) = sentence_formula(&lex, &s.tree).map_err(|e| format!("{}: {e}", s.name))?;
        let order = classify_order(&f).map_err(|e| format!("{}: {e}", s.name))?.order;
        ensure(order == Order::Finite(1), || format!("{}: order {order}", s.name))?;
        first_order += 1;
    }
    let higher = support::higher_order_sentence(sig);
    let (f, _) = sentence_formula(&lex, &higher.tree).map_err(|e| e.to_string())?;
    let order = classify_order(&f).map_err(|e| e.to_string())?.order;
    ensure(order == Order::Finite(2), || format!("{}: order {order}", higher.name))?;
    Ok(format!("{first_order}/10 read back at order 1; {} at order {order}", higher.name))
}

fn has_tau_human(f: &Formula) -> bool {
    fn term(t: &LogicTerm) -> bool {
        match t {
            LogicTerm::Choice { kind: Choice::Tau, sort, .. } if *sort == Type::base("human") => true,
            LogicTerm::FuncApp { args, .. } => args.iter().any(term),
            LogicTerm::Lambda { body, .. } => term(body),
            _ => false,
        }
    }
    let mut found = false;
    f.visit_formulas(&mut |g| {
        if let Formula::Atom { args, .. } = g {
            found |= args.iter().any(term);
        }
    });
    found
}

fn virtual_traveller() -> Outcome {
    let lex = support::demo_lexicon();
    let f = virtual_traveller_demo(&lex).map_err(|e| e.to_string())?;
    ensure(has_tau_human(&f), || format!("no tau over human in {f}"))?;
    let s = support::traveller_sentence(lex.signature());
    let (g, steps) = sentence_formula(&lex, &s.tree).map_err(|e| e.to_string())?;
    let rendered = format!("{}\nsteps: {steps}\n", print_formula(&g));
    ensure(rendered == s.golden, || format!("golden mismatch: {rendered:?}"))?;
    Ok(print_formula(&f))
}

fn lift_law() -> Outcome {
    let lex = support::demo_lexicon();
    let ctx = Context::new(lex.signature());
    let raised = |ty: &Type| Type::arrow(Type::arrow(ty.clone(), prop()), prop());
    let mut names = Vec::new();
    for (name, c) in lex.coercions() {
        let ty = typecheck(&ctx, &lift_raising(c)).map_err(|e| format!("{name}: {e}"))?;
        let want = Type::arrow(raised(&c.from), raised(&c.to));
        ensure(ty == want, || format!("lift {name} : {ty}"))?;
        names.push(name.clone());
    }
    ensure(!names.is_empty(), || "no coercions in the corpus".into())?;
    for sort in lex.signature().sorts() {
        let s = Type::base(sort.clone());
        let id = Coercion { term: Term::lam("y", s.clone(), Term::var("y")), from: s.clone(), to: s.clone() };
        let nf = normalize_with_fuel(&lift_raising(&id), FUEL).map_err(|e| e.to_string())?.term;
        // lam Q. lam k. Q (lam x. k x)
        let eta_id = Term::lam(
            "Q",
            raised(&s),
            Term::lam(
                "k",
                Type::arrow(s.clone(), prop()),
                Term::app(Term::var("Q"), Term::lam("x", s.clone(), Term::app(Term::var("k"), Term::var("x")))),
            ),
        );
        ensure(alpha_eq_terms(&nf, &eta_id), || format!("lift id at {sort} = {nf}"))?;
    }
    Ok(format!("coercions {}; identity lifts to an eta-identity", names.join(", ")))
}

fn fuel_headroom() -> Outcome {
    let lex = support::demo_lexicon();
    let mut most = 0;
    for s in support::all_sentences(lex.signature()) {
        let (f, steps) = sentence_formula(&lex, &s.tree).map_err(|e| format!("{}: {e}", s.name))?;
        ensure(steps < 10_000, || format!("{}: {steps} steps", s.name))?;
        let rendered = format!("{}\nsteps: {steps}\n", print_formula(&f));
        ensure(rendered == s.golden, || format!("{}: golden mismatch {rendered:?}", s.name))?;
        most = most.max(steps);
    }
    Ok(format!("at most {most} steps, all goldens match"))
}

fn round_trips() -> Outcome {
    let sig = load_signature(GENERATOR_SIGNATURE).unwrap();
    for seed in 0..GENERATED_TERMS {
        let (term, ty) = generated(&sig, seed);
        let printed = term.to_string();
        let back = parse_term_in(&printed, &sig).map_err(|e| format!("`{printed}`: {e}"))?;
        ensure(alpha_eq_terms(&back, &term), || format!("term `{printed}`"))?;
        let back = parse_type(&ty.to_string()).map_err(|e| format!("`{ty}`: {e}"))?;
        ensure(alpha_eq_types(&back, &ty), || format!("type `{ty}`"))?;
    }
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..GENERATED_TERMS {
        let ty = support::random_type(&mut rng, 6, &mut Vec::new());
        let back = parse_type(&ty.to_string()).map_err(|e| format!("`{ty}`: {e}"))?;
        ensure(alpha_eq_types(&back, &ty), || format!("type `{ty}`"))?;
    }
    let lex = support::demo_lexicon();
    let sentences = support::all_sentences(lex.signature());
    for s in &sentences {
        let (f, _) = sentence_formula(&lex, &s.tree).map_err(|e| format!("{}: {e}", s.name))?;
        let text = print_formula(&f);
        let back = support::reader::read_formula(lex.signature(), &text).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == f, || format!("formula `{text}`"))?;
    }
    Ok(format!(
        "{GENERATED_TERMS} terms, {} types, {} formulas",
        2 * GENERATED_TERMS,
        sentences.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("kernel soundness", kernel_soundness),
        ("side condition", side_condition),
        ("church arithmetic", church_arithmetic),
        ("quantifier specialization", specialization),
        ("readback totality", readback_totality),
        ("virtual traveller", virtual_traveller),
        ("lift law", lift_law),
        ("fuel headroom", fuel_headroom),
        ("round trips", round_trips),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
