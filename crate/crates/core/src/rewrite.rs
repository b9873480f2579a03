//! Substitution, the sign action on terms, γ-normalization and single βγ
//! steps.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::term::{mk_collection, Name, Sign, Term};

/// Sign concatenation; `~~` collapses to `+`.
pub fn sign_concat(a: Sign, b: Sign) -> Sign {
    a.concat(b)
}

/// Applies a sign to an arbitrary term.
///
/// Variables and abstractions have their sign flipped, collections are
/// scaled member-wise, and applications are wrapped in (or unwrapped from)
/// [`Term::Negated`].
pub fn scale(s: Sign, t: Term) -> Term {
    if s == Sign::Pos {
        return t;
    }
    match t {
        Term::Var { name, sign } => Term::Var {
            name,
            sign: sign.flip(),
        },
        Term::Abs { binder, body, sign } => Term::Abs {
            binder,
            body,
            sign: sign.flip(),
        },
        Term::Coll(c) => Term::coll(c.members().iter().cloned().map(|m| scale(Sign::Neg, m))),
        app @ Term::App(..) => Term::Negated(app.into()),
        Term::Negated(inner) => (*inner).clone(),
    }
}

/// Capture-avoiding substitution `body[replacement/var]`.
///
/// A signed occurrence `S x` becomes `scale(S, replacement)`. When a binder
/// would capture a free variable of the replacement it is renamed to a fresh
/// name derived from the original one.
pub fn substitute(body: &Term, replacement: &Term, var: &str) -> Term {
    let fv = replacement.free_vars();
    subst(body, replacement, var, &fv).unwrap_or_else(|| body.clone())
}

/// Returns `None` when the term is unchanged, which keeps sharing intact.
fn subst(t: &Term, n: &Term, x: &str, fv_n: &BTreeSet<Name>) -> Option<Term> {
    match t {
        Term::Var { name, sign } => (&**name == x).then(|| scale(*sign, n.clone())),
        Term::App(p, q) => {
            let p2 = subst(p, n, x, fv_n);
            let q2 = subst(q, n, x, fv_n);
            if p2.is_none() && q2.is_none() {
                return None;
            }
            Some(Term::app(
                p2.unwrap_or_else(|| (**p).clone()),
                q2.unwrap_or_else(|| (**q).clone()),
            ))
        }
        Term::Abs { binder, .. } if &**binder == x => None,
        Term::Abs { binder, body, sign } => {
            if !fv_n.contains(binder) {
                let body2 = subst(body, n, x, fv_n)?;
                return Some(Term::Abs {
                    binder: binder.clone(),
                    body: body2.into(),
                    sign: *sign,
                });
            }
            if !body.has_free_var(x) {
                return None;
            }
            let mut avoid = body.free_vars();
            avoid.extend(fv_n.iter().cloned());
            avoid.insert(x.into());
            let z = fresh_name(binder, &avoid);
            let zt = Term::var(&z);
            let renamed = substitute(body, &zt, binder);
            let body2 = subst(&renamed, n, x, fv_n).unwrap_or(renamed);
            Some(Term::Abs {
                binder: z,
                body: body2.into(),
                sign: *sign,
            })
        }
        Term::Coll(c) => {
            let new: Vec<Option<Term>> = c.members().iter().map(|m| subst(m, n, x, fv_n)).collect();
            if new.iter().all(Option::is_none) {
                return None;
            }
            let members = new
                .into_iter()
                .zip(c.members())
                .map(|(m2, m)| m2.unwrap_or_else(|| m.clone()));
            Some(mk_collection(members).expect("non-empty"))
        }
        Term::Negated(inner) => subst(inner, n, x, fv_n).map(|t| scale(Sign::Neg, t)),
    }
}

/// `base` with the smallest numeric suffix that is not in `avoid`.
fn fresh_name(base: &str, avoid: &BTreeSet<Name>) -> Name {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1u64..)
        .map(|i| format!("{stem}{i}"))
        .find(|cand| !avoid.contains(cand.as_str()))
        .expect("unbounded supply of names")
        .into()
}

/// Address of a subterm: child indices from the root.
///
/// Children are numbered operator `0` / operand `1` for applications, `0` for
/// an abstraction body or a negated application, and member order for
/// collections.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RedexPath(pub Vec<usize>);

impl RedexPath {
    fn push_front(mut self, i: usize) -> RedexPath {
        self.0.insert(0, i);
        self
    }
}

impl fmt::Display for RedexPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// The subterm at `path`, if it exists.
pub fn subterm_at<'a>(t: &'a Term, path: &RedexPath) -> Option<&'a Term> {
    let mut cur = t;
    for &i in &path.0 {
        cur = match (cur, i) {
            (Term::App(f, _), 0) => f,
            (Term::App(_, a), 1) => a,
            (Term::Abs { body, .. }, 0) => body,
            (Term::Negated(inner), 0) => inner,
            (Term::Coll(c), i) => c.members().get(i)?,
            _ => return None,
        };
    }
    Some(cur)
}

/// Replaces the subterm at `path`, rebuilding ancestors with the smart
/// constructors (collections re-flatten, negations re-normalize).
pub fn replace_at(t: &Term, path: &[usize], new: Term) -> Term {
    let Some((&i, rest)) = path.split_first() else {
        return new;
    };
    match t {
        Term::App(f, a) if i == 0 => Term::App(replace_at(f, rest, new).into(), a.clone()),
        Term::App(f, a) if i == 1 => Term::App(f.clone(), replace_at(a, rest, new).into()),
        Term::Abs { binder, body, sign } if i == 0 => Term::Abs {
            binder: binder.clone(),
            body: replace_at(body, rest, new).into(),
            sign: *sign,
        },
        Term::Negated(inner) if i == 0 => scale(Sign::Neg, replace_at(inner, rest, new)),
        Term::Coll(c) if i < c.len() => {
            let members = c.members().iter().enumerate().map(|(j, m)| {
                if j == i {
                    replace_at(m, rest, new.clone())
                } else {
                    m.clone()
                }
            });
            mk_collection(members).expect("non-empty")
        }
        _ => panic!("path does not address a subterm"),
    }
}

fn is_gamma_redex(t: &Term) -> bool {
    matches!(t, Term::App(f, a) if f.is_collection() || a.is_collection())
}

/// True if some application anywhere in the term has a collection as
/// operator or operand.
pub fn has_gamma_redex(t: &Term) -> bool {
    let mut found = false;
    t.visit(&mut |s| found |= is_gamma_redex(s));
    found
}

/// Collection of all pairwise applications, operator-major.
fn gamma_contract(f: &Term, a: &Term) -> Term {
    let mut out = Vec::with_capacity(f.cardinality() * a.cardinality());
    for fi in f.members() {
        for aj in a.members() {
            out.push(Term::app(fi.clone(), aj.clone()));
        }
    }
    mk_collection(out).expect("non-empty")
}

/// Redex selection order for single γ-steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaOrder {
    LeftmostInnermost,
    RightmostOutermost,
}

/// One γ-step at the leftmost-innermost γ-redex.
pub fn gamma_step(t: &Term) -> Option<(Term, RedexPath)> {
    gamma_step_with(t, GammaOrder::LeftmostInnermost)
}

pub fn gamma_step_with(t: &Term, order: GammaOrder) -> Option<(Term, RedexPath)> {
    let path = match order {
        GammaOrder::LeftmostInnermost => find_innermost(t),
        GammaOrder::RightmostOutermost => find_outermost_right(t),
    }?;
    let Term::App(f, a) = subterm_at(t, &path).expect("redex path") else {
        unreachable!("γ-redex is an application")
    };
    let contracted = gamma_contract(f, a);
    Some((replace_at(t, &path.0, contracted), path))
}

fn children(t: &Term) -> Vec<&Term> {
    match t {
        Term::Var { .. } => vec![],
        Term::App(f, a) => vec![f, a],
        Term::Abs { body, .. } => vec![body],
        Term::Coll(c) => c.members().iter().collect(),
        Term::Negated(inner) => vec![inner],
    }
}

fn find_innermost(t: &Term) -> Option<RedexPath> {
    for (i, c) in children(t).into_iter().enumerate() {
        if let Some(p) = find_innermost(c) {
            return Some(p.push_front(i));
        }
    }
    is_gamma_redex(t).then(RedexPath::default)
}

fn find_outermost_right(t: &Term) -> Option<RedexPath> {
    if is_gamma_redex(t) {
        return Some(RedexPath::default());
    }
    let cs = children(t);
    for (i, c) in cs.into_iter().enumerate().rev() {
        if let Some(p) = find_outermost_right(c) {
            return Some(p.push_front(i));
        }
    }
    None
}

/// The γ-normal form, by structural recursion: normalize the children, then
/// expand each application into the product of its operator and operand
/// members.
pub fn gamma_normalize(t: &Term) -> Term {
    gamma_norm(t).unwrap_or_else(|| t.clone())
}

fn gamma_norm(t: &Term) -> Option<Term> {
    match t {
        Term::Var { .. } => None,
        Term::Abs { binder, body, sign } => gamma_norm(body).map(|b| Term::Abs {
            binder: binder.clone(),
            body: b.into(),
            sign: *sign,
        }),
        Term::App(f, a) => {
            let f2 = gamma_norm(f);
            let a2 = gamma_norm(a);
            let fr = f2.as_ref().unwrap_or(f);
            let ar = a2.as_ref().unwrap_or(a);
            if fr.is_collection() || ar.is_collection() {
                Some(gamma_contract(fr, ar))
            } else if f2.is_none() && a2.is_none() {
                None
            } else {
                Some(Term::app(fr.clone(), ar.clone()))
            }
        }
        Term::Coll(c) => {
            let new: Vec<Option<Term>> = c.members().iter().map(gamma_norm).collect();
            if new.iter().all(Option::is_none) {
                return None;
            }
            let members = new
                .into_iter()
                .zip(c.members())
                .map(|(m2, m)| m2.unwrap_or_else(|| m.clone()));
            Some(mk_collection(members).expect("non-empty"))
        }
        Term::Negated(inner) => gamma_norm(inner).map(|i| scale(Sign::Neg, i)),
    }
}

/// Which β-redex a βγ-step contracts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost-outermost, anywhere in the term (including under binders).
    NormalOrder,
    /// The redex call-by-value evaluation would contract next: never under
    /// a binder, operator before operand, arguments reduced to values first.
    CallByValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("term has a γ-redex at {0}; βγ-steps need a γ-normal term")]
    NotGammaNormal(RedexPath),
    #[error("no normal form within {0} β-steps")]
    FuelExhausted(u64),
}

/// One βγ-step: contract the leftmost-outermost β-redex `(Sλx.M) N` to
/// `S·M[N/x]`, then γ-normalize. `None` when no β-redex exists.
pub fn beta_gamma_step(t: &Term) -> Result<Option<(Term, RedexPath)>, RewriteError> {
    beta_gamma_step_with(t, Strategy::NormalOrder)
}

pub fn beta_gamma_step_with(t: &Term, strategy: Strategy) -> Result<Option<(Term, RedexPath)>, RewriteError> {
    if let Some(p) = find_innermost(t) {
        return Err(RewriteError::NotGammaNormal(p));
    }
    Ok(find_beta(t, strategy).map(|path| {
        let contracted = contract_beta_at(t, &path);
        (gamma_normalize(&contracted), path)
    }))
}

/// Contracts the β-redex at `path` without γ-normalizing.
fn contract_beta_at(t: &Term, path: &RedexPath) -> Term {
    let redex = subterm_at(t, path).expect("redex path");
    replace_at(t, &path.0, contract_beta(redex).expect("β-redex"))
}

/// `(Sλx.M) N  ↦  S·M[N/x]`.
pub fn contract_beta(redex: &Term) -> Option<Term> {
    match redex {
        Term::App(f, n) => match &**f {
            Term::Abs { binder, body, sign } => Some(scale(*sign, substitute(body, n, binder))),
            _ => None,
        },
        _ => None,
    }
}

/// βᵖ applied to an abstraction and a (possibly collection) argument: the
/// collection of the body with each member substituted, γ-normalized.
///
/// Used as an independent route to cross-check γ-expansion followed by
/// member-wise β.
pub fn beta_p_contract(abs: &Term, arg: &Term) -> Option<Term> {
    let Term::Abs { binder, body, sign } = abs else {
        return None;
    };
    let members = arg
        .members()
        .iter()
        .map(|n| scale(*sign, substitute(body, n, binder)));
    Some(gamma_normalize(&mk_collection(members).expect("non-empty")))
}

fn is_beta_redex(t: &Term) -> bool {
    matches!(t, Term::App(f, _) if matches!(**f, Term::Abs { .. }))
}

fn find_beta(t: &Term, strategy: Strategy) -> Option<RedexPath> {
    match strategy {
        Strategy::NormalOrder => find_leftmost_outermost(t),
        Strategy::CallByValue => find_cbv(t),
    }
}

fn find_leftmost_outermost(t: &Term) -> Option<RedexPath> {
    if is_beta_redex(t) {
        return Some(RedexPath::default());
    }
    for (i, c) in children(t).into_iter().enumerate() {
        if let Some(p) = find_leftmost_outermost(c) {
            return Some(p.push_front(i));
        }
    }
    None
}

fn is_value_shape(t: &Term) -> bool {
    match t {
        Term::Var { .. } | Term::Abs { .. } => true,
        Term::Coll(c) => c.members().iter().all(is_value_shape),
        _ => false,
    }
}

fn find_cbv(t: &Term) -> Option<RedexPath> {
    match t {
        Term::Var { .. } | Term::Abs { .. } => None,
        Term::Coll(c) => c
            .members()
            .iter()
            .enumerate()
            .find_map(|(i, m)| find_cbv(m).map(|p| p.push_front(i))),
        Term::Negated(inner) => find_cbv(inner).map(|p| p.push_front(0)),
        Term::App(f, a) => {
            if !is_value_shape(f) {
                find_cbv(f).map(|p| p.push_front(0))
            } else if !is_value_shape(a) {
                find_cbv(a).map(|p| p.push_front(1))
            } else if matches!(**f, Term::Abs { .. }) {
                Some(RedexPath::default())
            } else {
                None
            }
        }
    }
}

/// Kind of a traced step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Gamma,
    Beta,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Gamma => "gamma",
            Rule::Beta => "beta",
        })
    }
}

/// One line of a reduction trace: `<rule> @ <path>: <term>`.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub rule: Rule,
    pub path: RedexPath,
    pub term: Term,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}: {}", self.rule, self.path, self.term)
    }
}

/// Small-step reduction to normal form under `strategy`, reporting every
/// single γ- and β-step.
///
/// `fuel` bounds the number of β-steps. Under [`Strategy::CallByValue`] the
/// result is the value (or stuck term) that big-step evaluation computes.
pub fn reduce(
    t: &Term,
    strategy: Strategy,
    fuel: u64,
    on_step: &mut dyn FnMut(&TraceStep),
) -> Result<Term, RewriteError> {
    let mut cur = gamma_steps(t.clone(), on_step);
    let mut used = 0u64;
    while let Some(path) = find_beta(&cur, strategy) {
        if used == fuel {
            return Err(RewriteError::FuelExhausted(fuel));
        }
        used += 1;
        cur = contract_beta_at(&cur, &path);
        on_step(&TraceStep {
            rule: Rule::Beta,
            path,
            term: cur.clone(),
        });
        cur = gamma_steps(cur, on_step);
    }
    Ok(cur)
}

fn gamma_steps(mut t: Term, on_step: &mut dyn FnMut(&TraceStep)) -> Term {
    while let Some((next, path)) = gamma_step(&t) {
        t = next;
        on_step(&TraceStep {
            rule: Rule::Gamma,
            path,
            term: t.clone(),
        });
    }
    t
}

/// Full βγ-normal form by normal-order reduction.
pub fn normalize(t: &Term, fuel: u64) -> Result<Term, RewriteError> {
    let mut cur = gamma_normalize(t);
    for _ in 0..fuel {
        match find_leftmost_outermost(&cur) {
            Some(path) => cur = gamma_normalize(&contract_beta_at(&cur, &path)),
            None => return Ok(cur),
        }
    }
    if find_leftmost_outermost(&cur).is_none() {
        Ok(cur)
    } else {
        Err(RewriteError::FuelExhausted(fuel))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::term_equal;
    use crate::syntax::parse;
    use crate::term::Level;

    fn q(s: &str) -> Term {
        parse(s, Level::Quantum).unwrap()
    }

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    // λ rule 1: x[N/x] = N
    #[test]
    fn subst_rule1_same_variable() {
        assert_eq!(substitute(&v("x"), &q(r"\z.z"), "x"), q(r"\z.z"));
    }

    // λ rule 2: y[N/x] = y
    #[test]
    fn subst_rule2_other_variable() {
        assert_eq!(substitute(&v("y"), &q(r"\z.z"), "x"), v("y"));
    }

    // λ rule 3: (P Q)[N/x] = P[N/x] Q[N/x]
    #[test]
    fn subst_rule3_application() {
        let t = substitute(&q("x (y x)"), &v("n"), "x");
        assert_eq!(t, q("n (y n)"));
    }

    // λ rule 4: (λx.P)[N/x] = λx.P
    #[test]
    fn subst_rule4_shadowed_binder() {
        let t = q(r"\x.x");
        assert_eq!(substitute(&t, &v("n"), "x"), t);
    }

    // λ rule 5: binder not free in N
    #[test]
    fn subst_rule5_plain_descent() {
        let t = substitute(&q(r"\y.x y"), &v("n"), "x");
        assert_eq!(t, q(r"\y.n y"));
    }

    // λ rule 6: binder free in N is renamed, no capture
    #[test]
    fn subst_rule6_capture_avoidance() {
        let t = substitute(&q(r"\y.x y"), &v("y"), "x");
        let Term::Abs { binder, body, .. } = &t else { panic!("abstraction expected") };
        assert_ne!(&**binder, "y");
        assert_eq!(**body, Term::app(v("y"), Term::Var { name: binder.clone(), sign: Sign::Pos }));
        assert!(t.free_vars().contains("y"));
        assert!(term_equal(&t, &q(r"\z.y z")));
    }

    // collection rule: (P, Q)[N/x] = (P[N/x], Q[N/x])
    #[test]
    fn subst_rule7_collection() {
        let t = substitute(&q("x, y"), &v("n"), "x");
        assert!(term_equal(&t, &q("n, y")));
        // substituting a collection flattens
        let t = substitute(&q("x, y"), &q("a, b"), "x");
        assert_eq!(t.cardinality(), 3);
    }

    // signed rule 1: (Sx)[N/x] = S·N, including ¬¬ ↦ +
    #[test]
    fn signed_rule1_sign_lands_on_replacement() {
        let t = substitute(&q("~x"), &q(r"~\y.y"), "x");
        assert_eq!(t, q(r"\y.y"));
        assert_eq!(substitute(&q("~x"), &v("n"), "x"), q("~n"));
        assert_eq!(substitute(&q("x"), &q("~n"), "x"), q("~n"));
    }

    #[test]
    fn signed_rule2_other_variable_keeps_sign() {
        assert_eq!(substitute(&q("~y"), &v("n"), "x"), q("~y"));
    }

    #[test]
    fn signed_rule3_application() {
        assert_eq!(substitute(&q("~x x"), &v("n"), "x"), q("~n n"));
    }

    #[test]
    fn signed_rule4_shadowed_signed_binder() {
        let t = q(r"~\x.x");
        assert_eq!(substitute(&t, &v("n"), "x"), t);
    }

    #[test]
    fn signed_rule5_descent_keeps_sign() {
        assert_eq!(substitute(&q(r"~\y.~x"), &v("n"), "x"), q(r"~\y.~n"));
    }

    #[test]
    fn signed_rule6_capture_avoidance_keeps_sign() {
        let t = substitute(&q(r"~\y.x y"), &v("y"), "x");
        assert_eq!(t.sign(), Some(Sign::Neg));
        assert!(term_equal(&t, &q(r"~\z.y z")));
    }

    #[test]
    fn signed_rule7_collection() {
        let t = substitute(&q("~x, x"), &v("n"), "x");
        assert!(term_equal(&t, &q("~n, n")));
    }

    #[test]
    fn signed_substitution_of_application_uses_wrapper() {
        let t = substitute(&q("~x"), &q("f a"), "x");
        assert!(matches!(t, Term::Negated(_)));
        // and a second negation removes it again
        assert_eq!(substitute(&q("~x"), &t, "x"), q("f a"));
    }

    #[test]
    fn scale_examples() {
        assert_eq!(scale(Sign::Neg, v("x")), q("~x"));
        assert!(term_equal(&scale(Sign::Neg, q("x, ~y")), &q("~x, y")));
        let t = q(r"f a, \x.x");
        assert_eq!(scale(Sign::Neg, scale(Sign::Neg, t.clone())), t);
        assert_eq!(scale(Sign::Pos, t.clone()), t);
    }

    #[test]
    fn gamma_step_examples() {
        let (t, path) = gamma_step(&q("(M, N) (P, Q)")).unwrap();
        assert_eq!(path, RedexPath::default());
        assert!(term_equal(&t, &q("M P, M Q, N P, N Q")));
        assert!(gamma_step(&q("x y")).is_none());
        let (t, _) = gamma_step(&q(r"(\x.x) (a, b)")).unwrap();
        assert!(term_equal(&t, &q(r"(\x.x) a, (\x.x) b")));
    }

    #[test]
    fn gamma_step_pairs_operator_major() {
        let (t, _) = gamma_step(&q("(M, N) (P, Q)")).unwrap();
        let printed: Vec<String> = t.members().iter().map(|m| m.to_string()).collect();
        assert_eq!(printed, ["M P", "M Q", "N P", "N Q"]);
    }

    #[test]
    fn gamma_normalize_examples() {
        assert_eq!(gamma_normalize(&q("(M, N) (P, Q)")).cardinality(), 4);
        let t = gamma_normalize(&q(r"\x.(a, b) c"));
        assert!(term_equal(&t, &q(r"\x.(a c, b c)")));
        let v = q(r"\x.x (\y.y)");
        assert_eq!(gamma_normalize(&v), v);
    }

    #[test]
    fn beta_gamma_examples() {
        let start = gamma_normalize(&q(r"(\x.x) (a, b)"));
        assert!(term_equal(&start, &q(r"(\x.x) a, (\x.x) b")));
        let (one, _) = beta_gamma_step(&start).unwrap().unwrap();
        let (two, _) = beta_gamma_step(&one).unwrap().unwrap();
        assert!(term_equal(&two, &q("a, b")));
        assert!(beta_gamma_step(&two).unwrap().is_none());
        // βᵖ substituting member-wise reaches the same term
        let direct = beta_p_contract(&q(r"\x.x"), &q("a, b")).unwrap();
        assert!(term_equal(&direct, &two));

        let (neg, _) = beta_gamma_step(&q(r"(~\x.x) y")).unwrap().unwrap();
        assert_eq!(neg, q("~y"));
        assert!(beta_gamma_step(&q(r"\x.x")).unwrap().is_none());
    }

    #[test]
    fn beta_gamma_step_rejects_gamma_redexes() {
        assert!(matches!(
            beta_gamma_step(&q(r"(\x.x) (a, b)")),
            Err(RewriteError::NotGammaNormal(_))
        ));
    }

    #[test]
    fn trace_lines() {
        let mut lines = Vec::new();
        let out = reduce(&q(r"(\x.x) (a, b)"), Strategy::CallByValue, 10, &mut |s| {
            lines.push(s.to_string())
        })
        .unwrap();
        assert!(term_equal(&out, &q("a, b")));
        assert_eq!(lines[0], r"gamma @ root: (\x.x) a, (\x.x) b");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("beta @ 0: "));
    }

    #[test]
    fn normalize_goes_under_binders() {
        let t = normalize(&q(r"\y.(\x.x) y"), 10).unwrap();
        assert!(term_equal(&t, &q(r"\y.y")));
        let omega = q(r"(\x.x x) (\x.x x)");
        assert_eq!(normalize(&omega, 50), Err(RewriteError::FuelExhausted(50)));
    }

    #[test]
    fn fresh_names_skip_taken_suffixes() {
        let avoid: BTreeSet<Name> = ["y1".into(), "y".into()].into();
        assert_eq!(&*fresh_name("y", &avoid), "y2");
    }
}
