use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::rc::Rc;

use crate::error::Error;
use crate::lambda::{
    eta_contract_var, eta_long_normalize, is_pattern, swap_names, type_of, LambdaTerm, LambdaType, PatternSubst,
};

/// The transformation rule applied by a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Rename the binder of one side to match the other.
    Alpha1,
    /// Drop a binder used on neither side.
    Alpha2,
    /// Prune a binder used on one side only from a free variable's arguments.
    Alpha3,
    RigidRigid,
    FlexRigid,
    FlexFlex,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Alpha1 => "alpha-1",
            Rule::Alpha2 => "alpha-2",
            Rule::Alpha3 => "alpha-3",
            Rule::RigidRigid => "rigid-rigid",
            Rule::FlexRigid => "flex-rigid",
            Rule::FlexFlex => "flex-flex",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureReason {
    Clash,
    OccursCheck,
    TypeMismatch,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::Clash => "clash",
            FailureReason::OccursCheck => "occurs-check",
            FailureReason::TypeMismatch => "type-mismatch",
        })
    }
}

/// Why and where unification failed. `path` lists argument positions from the root of
/// input equation `equation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub reason: FailureReason,
    pub equation: usize,
    pub path: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in equation {}", self.reason, self.equation + 1)?;
        if !self.path.is_empty() {
            let p: Vec<String> = self.path.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, " at argument path {}", p.join("."))?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum UnifyOutcome {
    Unifier(PatternSubst),
    Failure(Failure),
}

impl UnifyOutcome {
    pub fn unifier(&self) -> Option<&PatternSubst> {
        match self {
            UnifyOutcome::Unifier(s) => Some(s),
            UnifyOutcome::Failure(_) => None,
        }
    }

    pub fn is_unifier(&self) -> bool {
        self.unifier().is_some()
    }
}

/// One applied rule: the equation it was applied to and the bindings it produced.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceLine {
    pub rule: Rule,
    pub equation: String,
    pub bindings: Vec<(String, LambdaTerm)>,
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<11} {}", self.rule.to_string(), self.equation)?;
        if !self.bindings.is_empty() {
            let bs: Vec<String> = self.bindings.iter().map(|(x, t)| format!("{x} -> {t}")).collect();
            write!(f, "  with [{}]", bs.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct UnifyConfig {
    /// First counter value for fresh variable names `Z<n>`.
    pub seed: u64,
    pub trace: bool,
    /// Names fresh variables must avoid besides those of the problem.
    pub reserved: HashSet<String>,
}

/// Result of a single [`UnifyState::step`].
#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    Applied(Rule),
    Finished(UnifyOutcome),
}

/// Common outer binders `λw⃗` of an equation, shared between the equations derived from it.
#[derive(Clone, Debug, Default)]
struct Ctx(Option<Rc<CtxNode>>);

#[derive(Debug)]
struct CtxNode {
    name: String,
    ty: LambdaType,
    parent: Ctx,
}

impl Ctx {
    fn push(&self, name: &str, ty: &LambdaType) -> Ctx {
        Ctx(Some(Rc::new(CtxNode {
            name: name.to_string(),
            ty: ty.clone(),
            parent: self.clone(),
        })))
    }

    fn to_vec(&self) -> Vec<(String, LambdaType)> {
        let mut out = Vec::new();
        let mut cur = &self.0;
        while let Some(node) = cur {
            out.push((node.name.clone(), node.ty.clone()));
            cur = &node.parent.0;
        }
        out.reverse();
        out
    }
}

/// One side of an equation split into its leading binders and its base-typed body.
/// Binders dropped by alpha-2 stay in place but are marked dead. `fvb` and `last` make
/// "is binder `j` used below it" an O(1) question.
#[derive(Clone, Debug)]
struct Side {
    binders: Vec<(String, LambdaType)>,
    live: Vec<bool>,
    body: LambdaTerm,
    fvb: HashSet<String>,
    /// Last live position of each binder name.
    last: HashMap<String, usize>,
}

impl Side {
    fn new(mut t: LambdaTerm) -> Side {
        let mut binders = Vec::new();
        while let LambdaTerm::Lam(x, ty, body) = t {
            binders.push((x, ty));
            t = *body;
        }
        let last = binders.iter().enumerate().map(|(i, (x, _))| (x.clone(), i)).collect();
        let fvb = t.free_bound_names();
        Side {
            live: vec![true; binders.len()],
            binders,
            body: t,
            fvb,
            last,
        }
    }

    fn name(&self, j: usize) -> &str {
        &self.binders[j].0
    }

    /// Whether `x` occurs free in the part of the side below binder `from - 1`.
    fn free_in_rest(&self, x: &str, from: usize) -> bool {
        self.fvb.contains(x) && self.last.get(x).map_or(true, |&l| l < from)
    }

    fn update_last(&mut self, z: &str) {
        let pos = (0..self.binders.len()).rev().find(|&i| self.live[i] && self.binders[i].0 == z);
        match pos {
            Some(i) => self.last.insert(z.to_string(), i),
            None => self.last.remove(z),
        };
    }

    fn kill(&mut self, j: usize) {
        self.live[j] = false;
        let z = self.binders[j].0.clone();
        self.update_last(&z);
    }

    /// `(x y)·` applied to the side below binder `from - 1`, binder `from` included.
    fn swap_from(&mut self, from: usize, x: &str, y: &str) {
        for (z, _) in &mut self.binders[from..] {
            if z == x {
                *z = y.to_string();
            } else if z == y {
                *z = x.to_string();
            }
        }
        self.body = swap_names(x, y, &self.body);
        let (hx, hy) = (self.fvb.remove(x), self.fvb.remove(y));
        if hx {
            self.fvb.insert(y.to_string());
        }
        if hy {
            self.fvb.insert(x.to_string());
        }
        self.update_last(x);
        self.update_last(y);
    }

    fn live_binders(&self) -> Vec<(String, LambdaType)> {
        self.binders
            .iter()
            .zip(&self.live)
            .filter(|(_, l)| **l)
            .map(|(b, _)| b.clone())
            .collect()
    }

    fn term(&self) -> LambdaTerm {
        LambdaTerm::lams(&self.live_binders(), self.body.clone())
    }

    fn size(&self) -> usize {
        self.live.iter().filter(|l| **l).count() + self.body.size()
    }
}

#[derive(Clone, Debug)]
struct Eqn {
    ctx: Ctx,
    lhs: Side,
    rhs: Side,
    origin: usize,
    path: Vec<usize>,
    /// Length of the binding log when the sides were last brought up to date.
    resolved_at: usize,
}

impl Eqn {
    fn new(ctx: Ctx, lhs: LambdaTerm, rhs: LambdaTerm, origin: usize, path: Vec<usize>, resolved_at: usize) -> Eqn {
        Eqn {
            ctx,
            lhs: Side::new(lhs),
            rhs: Side::new(rhs),
            origin,
            path,
            resolved_at,
        }
    }

    fn display(&self) -> String {
        let ctx = self.ctx.to_vec();
        let l = LambdaTerm::lams(&ctx, self.lhs.term());
        let r = LambdaTerm::lams(&ctx, self.rhs.term());
        format!("{l} = {r}")
    }
}

enum Occurrence<'a> {
    Rigid,
    Flex(&'a str, &'a LambdaType, &'a [LambdaTerm]),
}

/// The leftmost free occurrence of bound name `x` in `t`.
fn find_occurrence<'a>(t: &'a LambdaTerm, x: &str) -> Option<Occurrence<'a>> {
    match t {
        LambdaTerm::Bound(y, _) => (y == x).then_some(Occurrence::Rigid),
        LambdaTerm::Free(..) | LambdaTerm::Const(..) => None,
        LambdaTerm::Lam(y, _, body) => {
            if y == x {
                None
            } else {
                find_occurrence(body, x)
            }
        }
        LambdaTerm::App(h, args) => match h.as_ref() {
            LambdaTerm::Free(z, ty) => args
                .iter()
                .any(|a| eta_contract_var(a).as_deref() == Some(x))
                .then_some(Occurrence::Flex(z, ty, args)),
            _ => find_occurrence(h, x).or_else(|| args.iter().find_map(|a| find_occurrence(a, x))),
        },
    }
}

fn mentions_any(t: &LambdaTerm, vars: &HashSet<&str>) -> bool {
    match t {
        LambdaTerm::Free(x, _) => vars.contains(x.as_str()),
        LambdaTerm::Bound(..) | LambdaTerm::Const(..) => false,
        LambdaTerm::Lam(_, _, body) => mentions_any(body, vars),
        LambdaTerm::App(h, args) => mentions_any(h, vars) || args.iter().any(|a| mentions_any(a, vars)),
    }
}

fn arg_type(a: &LambdaTerm) -> LambdaType {
    type_of(a).expect("arguments of pattern equations are well-typed")
}

/// A free-variable argument: its contracted name and the argument term itself.
type Arg = (String, LambdaTerm);

fn flex_args(args: &[LambdaTerm]) -> Vec<Arg> {
    args.iter()
        .map(|a| (eta_contract_var(a).expect("pattern argument"), a.clone()))
        .collect()
}

/// Transformation-system state: pending equations (leftmost first) and the unifier so far.
///
/// The accumulated substitution is kept idempotent, with an index from each variable to
/// the bindings whose image mentions it. Pending equations are brought up to date only
/// when selected, and only if a variable bound since then occurs in them.
#[derive(Debug)]
pub struct UnifyState {
    pending: VecDeque<Eqn>,
    subst: PatternSubst,
    occurs: HashMap<String, HashSet<String>>,
    log: Vec<String>,
    counter: u64,
    taken: HashSet<String>,
    rank: HashMap<String, usize>,
    pool: Vec<(String, LambdaType)>,
    problem_vars: Vec<String>,
    trace: Option<Vec<TraceLine>>,
    failed: Option<Failure>,
    done: Option<UnifyOutcome>,
}

impl UnifyState {
    /// Checks and normalises the equations. Fresh-variable arguments are ordered by
    /// `name_order` first, then by first occurrence of bound names in the problem.
    pub fn new(
        equations: &[(LambdaTerm, LambdaTerm)],
        name_order: &[String],
        config: &UnifyConfig,
    ) -> Result<Self, Error> {
        let mut pool: Vec<(String, LambdaType)> = Vec::new();
        for (t, u) in equations {
            t.bound_name_types(&mut pool);
            u.bound_name_types(&mut pool);
        }
        let mut rank: HashMap<String, usize> = HashMap::new();
        for x in name_order.iter().chain(pool.iter().map(|(x, _)| x)) {
            let next = rank.len();
            rank.entry(x.clone()).or_insert(next);
        }
        let bound: HashSet<&str> = pool.iter().map(|(x, _)| x.as_str()).collect();

        let mut taken: HashSet<String> = bound.iter().map(|x| x.to_string()).collect();
        taken.extend(config.reserved.iter().cloned());
        let mut var_types: HashMap<String, LambdaType> = HashMap::new();
        let mut problem_vars = Vec::new();
        let mut pending = VecDeque::with_capacity(equations.len());
        let mut failed = None;
        for (i, (t, u)) in equations.iter().enumerate() {
            let (tt, ut) = (type_of(t)?, type_of(u)?);
            for (x, ty) in t.free_vars().into_iter().chain(u.free_vars()) {
                if bound.contains(x.as_str()) {
                    return Err(Error::Precondition(format!("`{x}` is used both as free and as bound name")));
                }
                match var_types.get(&x) {
                    Some(prev) if *prev != ty => {
                        return Err(Error::IllTyped(format!("free variable {x} used at types {prev} and {ty}")))
                    }
                    Some(_) => {}
                    None => {
                        var_types.insert(x.clone(), ty);
                        problem_vars.push(x.clone());
                        taken.insert(x);
                    }
                }
            }
            collect_constants(t, &mut taken);
            collect_constants(u, &mut taken);
            if tt != ut {
                failed.get_or_insert(Failure {
                    reason: FailureReason::TypeMismatch,
                    equation: i,
                    path: Vec::new(),
                    detail: format!("left side has type {tt}, right side has type {ut}"),
                });
                continue;
            }
            let t = eta_long_normalize(t, &pool)?;
            let u = eta_long_normalize(u, &pool)?;
            for s in [&t, &u] {
                if !is_pattern(s) {
                    return Err(Error::NotPattern(s.to_string()));
                }
            }
            pending.push_back(Eqn::new(Ctx::default(), t, u, i, Vec::new(), 0));
        }
        Ok(UnifyState {
            pending,
            subst: PatternSubst::new(),
            occurs: HashMap::new(),
            log: Vec::new(),
            counter: config.seed,
            taken,
            rank,
            pool,
            problem_vars,
            trace: config.trace.then(Vec::new),
            failed,
            done: None,
        })
    }

    pub fn pending_len(&self) -> usize {
        self.pending.len()
    }

    /// The substitution accumulated so far (idempotent, not yet restricted).
    pub fn accumulated(&self) -> &PatternSubst {
        &self.subst
    }

    pub fn trace(&self) -> &[TraceLine] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn take_trace(&mut self) -> Vec<TraceLine> {
        self.trace.take().unwrap_or_default()
    }

    /// `(number of distinct free variables, total size)` of the pending equations, with the
    /// accumulated substitution applied.
    pub fn measure(&self) -> (usize, usize) {
        let mut vars = HashSet::new();
        let mut size = 0;
        for eq in &self.pending {
            for side in [&eq.lhs, &eq.rhs] {
                let body = self.subst.apply(&side.body).expect("well-typed bindings");
                size += side.size() - side.body.size() + body.size();
                vars.extend(body.free_vars().into_iter().map(|(x, _)| x));
            }
        }
        (vars.len(), size)
    }

    /// Applies one rule to the leftmost pending equation.
    pub fn step(&mut self) -> Step {
        if let Some(out) = &self.done {
            return Step::Finished(out.clone());
        }
        let out = if let Some(f) = self.failed.take() {
            UnifyOutcome::Failure(f)
        } else if let Some(mut eq) = self.pending.pop_front() {
            self.resolve(&mut eq);
            match self.apply_rule(eq) {
                Ok(rule) => return Step::Applied(rule),
                Err(f) => UnifyOutcome::Failure(f),
            }
        } else {
            let mut sigma = PatternSubst::new();
            for x in &self.problem_vars {
                if let Some(t) = self.subst.get(x) {
                    sigma.insert(x, t.clone());
                }
            }
            UnifyOutcome::Unifier(sigma)
        };
        self.done = Some(out.clone());
        Step::Finished(out)
    }

    pub fn run(&mut self) -> UnifyOutcome {
        loop {
            if let Step::Finished(out) = self.step() {
                return out;
            }
        }
    }

    fn resolve(&self, eq: &mut Eqn) {
        if eq.resolved_at == self.log.len() {
            return;
        }
        let fresh: HashSet<&str> = self.log[eq.resolved_at..].iter().map(String::as_str).collect();
        for side in [&mut eq.lhs, &mut eq.rhs] {
            if mentions_any(&side.body, &fresh) {
                side.body = self.subst.apply(&side.body).expect("well-typed bindings");
                side.fvb = side.body.free_bound_names();
            }
        }
        eq.resolved_at = self.log.len();
    }

    fn fresh_var(&mut self) -> String {
        loop {
            let cand = format!("Z{}", self.counter);
            self.counter += 1;
            if self.taken.insert(cand.clone()) {
                return cand;
            }
        }
    }

    fn by_rank(&self, args: &mut [Arg]) {
        args.sort_by(|(x, _), (y, _)| {
            let rx = self.rank.get(x).copied().unwrap_or(usize::MAX);
            let ry = self.rank.get(y).copied().unwrap_or(usize::MAX);
            rx.cmp(&ry).then_with(|| x.cmp(y))
        });
    }

    /// A fresh variable `Z : types(z⃗) → result`, after putting `z` in rank order.
    fn new_var(&mut self, z: &mut [Arg], result: &LambdaType) -> LambdaTerm {
        self.by_rank(z);
        let name = self.fresh_var();
        let ty = LambdaType::arrows(z.iter().map(|(_, a)| arg_type(a)), result.clone());
        LambdaTerm::Free(name, ty)
    }

    /// `Z(z⃗)` for a fresh `Z`, `z⃗` in rank order.
    fn new_var_over(&mut self, mut z: Vec<Arg>, result: &LambdaType) -> LambdaTerm {
        let head = self.new_var(&mut z, result);
        LambdaTerm::apply(head, z.into_iter().map(|(_, a)| a).collect())
    }

    fn add_binding(&mut self, x: &str, s: LambdaTerm) {
        let fv: Vec<String> = s.free_vars().into_iter().map(|(v, _)| v).collect();
        if let Some(users) = self.occurs.remove(x) {
            let single = PatternSubst::from_pairs([(x, s.clone())]);
            for d in users {
                let Some(img) = self.subst.get(&d) else { continue };
                let img = single.apply(img).expect("well-typed bindings");
                self.subst.insert(&d, img);
                for v in &fv {
                    self.occurs.entry(v.clone()).or_default().insert(d.clone());
                }
            }
        }
        for v in &fv {
            self.occurs.entry(v.clone()).or_default().insert(x.to_string());
        }
        self.subst.insert(x, s);
        self.log.push(x.to_string());
    }

    fn record(&mut self, rule: Rule, before: Option<String>, bindings: &[&str]) {
        if let (Some(trace), Some(equation)) = (self.trace.as_mut(), before) {
            let bindings = bindings
                .iter()
                .map(|x| (x.to_string(), self.subst.get(x).cloned().expect("just bound")))
                .collect();
            trace.push(TraceLine {
                rule,
                equation,
                bindings,
            });
        }
    }

    fn fail(eq: &Eqn, reason: FailureReason, detail: String) -> Failure {
        Failure {
            reason,
            equation: eq.origin,
            path: eq.path.clone(),
            detail,
        }
    }

    fn apply_rule(&mut self, mut eq: Eqn) -> Result<Rule, Failure> {
        let before = self.trace.is_some().then(|| eq.display());
        let n = eq.lhs.binders.len();
        let first_diff = (0..n).find(|&j| eq.lhs.live[j] && eq.lhs.name(j) != eq.rhs.name(j));

        // alpha-1 on the right side at the first differing binder.
        if let Some(d) = first_diff {
            let (x, y) = (eq.lhs.name(d).to_string(), eq.rhs.name(d).to_string());
            if !eq.rhs.free_in_rest(&x, d + 1) {
                eq.rhs.swap_from(d, &x, &y);
                self.pending.push_front(eq);
                self.record(Rule::Alpha1, before, &[]);
                return Ok(Rule::Alpha1);
            }
        }

        // alpha-2 or alpha-3 at the leftmost shared binder where one applies.
        for j in (0..first_diff.unwrap_or(n)).filter(|&j| eq.lhs.live[j]) {
            let x = eq.lhs.name(j).to_string();
            match (eq.lhs.free_in_rest(&x, j + 1), eq.rhs.free_in_rest(&x, j + 1)) {
                (true, true) => {}
                (false, false) => {
                    eq.lhs.kill(j);
                    eq.rhs.kill(j);
                    self.pending.push_front(eq);
                    self.record(Rule::Alpha2, before, &[]);
                    return Ok(Rule::Alpha2);
                }
                (false, true) => return self.prune(eq, false, &x, before),
                (true, false) => return self.prune(eq, true, &x, before),
            }
        }

        if let Some(d) = first_diff {
            let (x, y) = (eq.lhs.name(d).to_string(), eq.rhs.name(d).to_string());
            if !eq.lhs.free_in_rest(&y, d + 1) {
                eq.lhs.swap_from(d, &x, &y);
                self.pending.push_front(eq);
                self.record(Rule::Alpha1, before, &[]);
                return Ok(Rule::Alpha1);
            }
            // The outer x that the right side refers to is hidden by λx on the left, so
            // no solution may keep it.
            return self.prune(eq, false, &x, before);
        }

        for (x, ty) in eq.lhs.live_binders() {
            eq.ctx = eq.ctx.push(&x, &ty);
        }
        let lflex = matches!(eq.lhs.body.spine().0, LambdaTerm::Free(..));
        let rflex = matches!(eq.rhs.body.spine().0, LambdaTerm::Free(..));
        match (lflex, rflex) {
            (true, true) => self.flex_flex(eq, before),
            (true, false) => self.flex_rigid(&eq, true, before),
            (false, true) => self.flex_rigid(&eq, false, before),
            (false, false) => self.rigid_rigid(eq, before),
        }
    }

    /// Removes `x` from the arguments of the leftmost free variable it occurs under on
    /// the chosen side, or fails if its leftmost occurrence is rigid.
    fn prune(&mut self, eq: Eqn, lhs: bool, x: &str, before: Option<String>) -> Result<Rule, Failure> {
        let side = if lhs { &eq.lhs } else { &eq.rhs };
        let (var, ty, args) = match find_occurrence(&side.body, x) {
            Some(Occurrence::Flex(v, ty, args)) => (v.to_string(), ty.clone(), flex_args(args)),
            Some(Occurrence::Rigid) | None => {
                let which = if lhs { "left" } else { "right" };
                return Err(Self::fail(
                    &eq,
                    FailureReason::Clash,
                    format!("bound variable {x} occurs rigidly on the {which} side but cannot occur on the other"),
                ));
            }
        };
        let (_, result) = ty.split();
        let result = result.clone();
        let binders: Vec<(String, LambdaType)> = args.iter().map(|(n, a)| (n.clone(), arg_type(a))).collect();
        let keep: Vec<Arg> = args.into_iter().filter(|(n, _)| n != x).collect();
        let body = self.new_var_over(keep, &result);
        self.add_binding(&var, LambdaTerm::lams(&binders, body));
        self.pending.push_front(eq);
        self.record(Rule::Alpha3, before, &[&var]);
        Ok(Rule::Alpha3)
    }

    fn rigid_rigid(&mut self, eq: Eqn, before: Option<String>) -> Result<Rule, Failure> {
        let (lh, largs) = eq.lhs.body.spine();
        let (rh, rargs) = eq.rhs.body.spine();
        if lh != rh || largs.len() != rargs.len() {
            return Err(Self::fail(&eq, FailureReason::Clash, format!("head {lh} against head {rh}")));
        }
        for (i, (t, u)) in largs.iter().zip(rargs).enumerate().rev() {
            let mut path = eq.path.clone();
            path.push(i);
            let resolved_at = self.log.len();
            self.pending
                .push_front(Eqn::new(eq.ctx.clone(), t.clone(), u.clone(), eq.origin, path, resolved_at));
        }
        self.record(Rule::RigidRigid, before, &[]);
        Ok(Rule::RigidRigid)
    }

    fn flex_rigid(&mut self, eq: &Eqn, flex_on_left: bool, before: Option<String>) -> Result<Rule, Failure> {
        let (flex, rigid) = if flex_on_left {
            (&eq.lhs.body, &eq.rhs.body)
        } else {
            (&eq.rhs.body, &eq.lhs.body)
        };
        let (LambdaTerm::Free(x, xty), xargs) = flex.spine() else { unreachable!() };
        let xargs = flex_args(xargs);
        let (head, rargs) = rigid.spine();
        let head_ty = match head {
            LambdaTerm::Bound(a, ty) => {
                if !xargs.iter().any(|(n, _)| n == a) {
                    return Err(Self::fail(
                        eq,
                        FailureReason::Clash,
                        format!("bound variable {a} is not among the arguments of {x}"),
                    ));
                }
                ty
            }
            LambdaTerm::Const(_, ty) => ty,
            _ => unreachable!("rigid head"),
        };
        if rigid.has_free_var(x) {
            return Err(Self::fail(eq, FailureReason::OccursCheck, format!("{x} occurs in {rigid}")));
        }
        let (arg_tys, _) = head_ty.split();
        let mut subs = Vec::with_capacity(rargs.len());
        for (r, aty) in rargs.iter().zip(arg_tys) {
            let (ys, _) = r.strip_lams();
            let ys: Vec<(String, LambdaType)> = ys.iter().map(|(y, t)| (y.to_string(), (*t).clone())).collect();
            let inner: HashSet<&str> = ys.iter().map(|(y, _)| y.as_str()).collect();
            let mut z: Vec<Arg> = xargs.iter().filter(|(n, _)| !inner.contains(n.as_str())).cloned().collect();
            let mut seen = HashSet::new();
            for (y, ty) in ys.iter().rev() {
                if seen.insert(y.as_str()) {
                    let a = eta_long_normalize(&LambdaTerm::Bound(y.clone(), ty.clone()), &self.pool)
                        .expect("a bound variable is well-typed");
                    z.push((y.clone(), a));
                }
            }
            let body = self.new_var_over(z, aty.split().1);
            subs.push(LambdaTerm::lams(&ys, body));
        }
        let binders: Vec<(String, LambdaType)> = xargs.iter().map(|(n, a)| (n.clone(), arg_type(a))).collect();
        let image = LambdaTerm::lams(&binders, LambdaTerm::apply(head.clone(), subs.clone()));
        debug_assert_eq!(type_of(&image).ok().as_ref(), Some(xty));
        let x = x.clone();
        self.add_binding(&x, image);
        for (i, (s, r)) in subs.into_iter().zip(rargs).enumerate().rev() {
            let mut path = eq.path.clone();
            path.push(i);
            let (lhs, rhs) = if flex_on_left { (s, r.clone()) } else { (r.clone(), s) };
            let resolved_at = self.log.len();
            self.pending
                .push_front(Eqn::new(eq.ctx.clone(), lhs, rhs, eq.origin, path, resolved_at));
        }
        self.record(Rule::FlexRigid, before, &[&x]);
        Ok(Rule::FlexRigid)
    }

    fn flex_flex(&mut self, eq: Eqn, before: Option<String>) -> Result<Rule, Failure> {
        let (LambdaTerm::Free(x, xty), xargs) = eq.lhs.body.spine() else { unreachable!() };
        let (LambdaTerm::Free(y, _), yargs) = eq.rhs.body.spine() else { unreachable!() };
        let (x, y) = (x.clone(), y.clone());
        let xargs = flex_args(xargs);
        let yargs = flex_args(yargs);
        let result = xty.split().1.clone();
        let binders = |args: &[Arg]| -> Vec<(String, LambdaType)> {
            args.iter().map(|(n, a)| (n.clone(), arg_type(a))).collect()
        };
        if x == y {
            if xargs.iter().map(|(n, _)| n).eq(yargs.iter().map(|(n, _)| n)) {
                self.record(Rule::FlexFlex, before, &[]);
                return Ok(Rule::FlexFlex);
            }
            let z: Vec<Arg> = xargs
                .iter()
                .zip(&yargs)
                .filter(|((a, _), (b, _))| a == b)
                .map(|(p, _)| p.clone())
                .collect();
            let body = self.new_var_over(z, &result);
            self.add_binding(&x, LambdaTerm::lams(&binders(&xargs), body));
            self.record(Rule::FlexFlex, before, &[&x]);
        } else {
            let ynames: HashSet<&str> = yargs.iter().map(|(n, _)| n.as_str()).collect();
            let mut z: Vec<Arg> = xargs.iter().filter(|(n, _)| ynames.contains(n.as_str())).cloned().collect();
            let head = self.new_var(&mut z, &result);
            // The same arguments, taken from Y's side so that their η-expansions match.
            let zargs_y: Vec<LambdaTerm> = z
                .iter()
                .map(|(n, _)| yargs.iter().find(|(m, _)| m == n).expect("common name").1.clone())
                .collect();
            let zy = LambdaTerm::apply(head.clone(), zargs_y);
            let zx = LambdaTerm::apply(head, z.into_iter().map(|(_, a)| a).collect());
            self.add_binding(&x, LambdaTerm::lams(&binders(&xargs), zx));
            self.add_binding(&y, LambdaTerm::lams(&binders(&yargs), zy));
            self.record(Rule::FlexFlex, before, &[&x, &y]);
        }
        Ok(Rule::FlexFlex)
    }
}

fn collect_constants(t: &LambdaTerm, out: &mut HashSet<String>) {
    match t {
        LambdaTerm::Const(c, _) => {
            out.insert(c.clone());
        }
        LambdaTerm::Bound(..) | LambdaTerm::Free(..) => {}
        LambdaTerm::Lam(_, _, body) => collect_constants(body, out),
        LambdaTerm::App(h, args) => {
            collect_constants(h, out);
            for a in args {
                collect_constants(a, out);
            }
        }
    }
}
