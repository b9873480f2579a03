//! Workloads shared by the criterion benchmarks.

use lq_core::{parse, Env, Level, Term};

/// A prelude program, resolved and ready to evaluate.
pub fn program(src: &str) -> Term {
    Env::prelude().resolve(&parse(src, Level::Quantum).expect("benchmark source parses"))
}

/// `W n`: evaluates to a collection of 2^n walks.
pub fn walk(n: u32) -> Term {
    program(&format!("W {n}"))
}

/// `(a1, .., aw) (b1, .., bw) (c1, .., cw)`: γ-normal form has w^3 members.
pub fn product(width: usize) -> Term {
    let coll = |p: &str| {
        let members: Vec<String> = (0..width).map(|i| format!("{p}{i}")).collect();
        format!("({})", members.join(", "))
    };
    parse(&format!("{} {} {}", coll("a"), coll("b"), coll("c")), Level::Probabilistic).expect("parses")
}

/// A value with `depth` nested abstractions, each body a two-member
/// collection applied to the bound variable.
pub fn nested_choices(depth: usize) -> Term {
    let mut body = "z".to_string();
    for i in 0..depth {
        body = format!(r"\x{i}.(x{i}, ({body})) x{i}");
    }
    parse(&body, Level::Probabilistic).expect("parses")
}
