//! Canonical text of a program; parsing it gives back the same program.

use super::ast::*;

fn cycles(c: &Cycles) -> String {
    if c.is_empty() {
        return "()".into();
    }
    c.iter()
        .map(|cycle| format!("({})", cycle.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")))
        .collect()
}

fn list(items: &[u32]) -> String {
    format!("[{}]", items.iter().map(u32::to_string).collect::<Vec<_>>().join(", "))
}

fn names(ns: &[Name]) -> String {
    ns.iter().map(|n| n.node.as_str()).collect::<Vec<_>>().join(", ")
}

fn flags(f: &Flags) -> String {
    format!("A{} q={}", f.rank, f.q)
}

pub fn print_statement(s: &Statement) -> String {
    match s {
        Statement::Group { name, degree, generators } => format!(
            "group {} = perm {degree} gens {}",
            name.node,
            generators.iter().map(cycles).collect::<Vec<_>>().join(", ")
        ),
        Statement::GSet { name, size, group, action } => {
            let mut out = format!("gset {} = points {size} on {}", name.node, group.node);
            if !action.is_empty() {
                out.push_str(" act ");
                out.push_str(
                    &action.iter().map(|(c, imgs)| format!("{}->{}", cycles(c), list(imgs))).collect::<Vec<_>>().join(", "),
                );
            }
            out
        }
        Statement::Map { name, source, target, images } => {
            format!("map {} : {} -> {} = {}", name.node, source.node, target.node, list(images))
        }
        Statement::Span { name, left, right } => format!("span {} = ({}, {})", name.node, left.node, right.node),
        Statement::Command(c) => print_command(c),
    }
}

pub fn print_command(c: &Command) -> String {
    match c {
        Command::Cardinality { gset, group } => format!("check cardinality {}//{}", gset.node, group.node),
        Command::Degroup { span } => format!("degroup span {}", span.node),
        Command::Compose { spans } => format!("compose {}", names(spans)),
        Command::Iso { left, right } => format!("iso {}, {}", left.node, right.node),
        Command::HeckeVerify(f) => format!("hecke verify {}", flags(f)),
        Command::MainClaim(Target::Flags(f)) => format!("main-claim {}", flags(f)),
        Command::MainClaim(Target::Names(ns)) => format!("main-claim {}", names(ns)),
        Command::Zamolodchikov(f) => format!("zamolodchikov {}", flags(f)),
        Command::YangBaxter(f) => format!("yang-baxter {}", flags(f)),
        Command::Grothendieck { target: Target::Flags(f), count } => match count {
            Some(n) => format!("grothendieck roundtrip {} count={n}", flags(f)),
            None => format!("grothendieck roundtrip {}", flags(f)),
        },
        Command::Grothendieck { target: Target::Names(ns), .. } => format!("grothendieck roundtrip {}", names(ns)),
        Command::ReferenceMatrices { q } => format!("reference-matrices q={q}"),
        Command::Random { check, count } => {
            let word = match check {
                RandomCheck::Cardinality => "cardinality",
                RandomCheck::Functoriality => "functoriality",
                RandomCheck::Monoidal => "monoidal",
            };
            format!("random {word} count={count}")
        }
    }
}

pub fn pretty(p: &Program) -> String {
    p.statements.iter().map(|s| print_statement(&s.node) + "\n").collect()
}
