//! Line-oriented input language.
//!
//! ```text
//! group S5 = sym(5)
//! ggroup X = (S5 -> S5) via id
//! word W over (S5, 1) = g3 * X1^2
//! spec X --variant t2 --prime-def quotient
//! export X --format json --out spec.json
//! ```
//!
//! One declaration or command per line; `#` starts a comment line.

use std::collections::HashSet;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(usize),
    Sym(usize),
    Alt(usize),
    Dihedral(usize),
    Quaternion8,
    Product(Box<GroupExpr>, Box<GroupExpr>),
    /// `perm n: gens`, kept verbatim for the permutation reader.
    Perm(String),
    Table(String),
    Ref(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Images {
    Identity,
    Trivial,
    List(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flag {
    Variant(String),
    PrimeDef(String),
    MaxLen(usize),
    Catalog(String),
    Format(String),
    Out(String),
    G(GroupExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Spec { target: String },
    Variety { words: Vec<String> },
    Sections { target: String },
    Stalk { target: String, point: usize },
    Morphism { source: String, target: String, images: Images },
    Glue { target: String, along: Vec<usize> },
    Check { suite: String },
    Export { object: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    pub flags: Vec<Flag>,
    /// Name the result is stored under.
    pub name: Option<String>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Group { name: String, expr: GroupExpr, pos: Pos },
    GGroup { name: String, base: String, carrier: String, images: Images, pos: Pos },
    Word { name: String, group: String, vars: usize, literal: String, pos: Pos },
    Command(Command),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub decls: Vec<Decl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(usize),
    Flag(String),
    Punct(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
    /// Byte offset of the token in its line.
    at: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '/' | '-' | '~')
}

fn tokenize(line: &str, lno: usize) -> CliResult<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let two: String = chars[i..].iter().take(2).map(|&(_, c)| c).collect();
        if two == "->" {
            out.push(Token { tok: Tok::Punct("->"), col, at });
            i += 2;
            continue;
        }
        if two == "--" {
            let mut j = i + 2;
            while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '-') {
                j += 1;
            }
            let name: String = chars[i + 2..j].iter().map(|&(_, c)| c).collect();
            out.push(Token { tok: Tok::Flag(name), col, at });
            i = j;
            continue;
        }
        let punct = ["=", "(", ")", "[", "]", ",", ":", ";", "*", "^"].into_iter().find(|p| p.starts_with(c));
        if let Some(p) = punct {
            out.push(Token { tok: Tok::Punct(p), col, at });
            i += 1;
            continue;
        }
        if is_word_char(c) {
            let mut j = i;
            while j < chars.len() && is_word_char(chars[j].1) {
                if chars[j].1 == '-' && chars.get(j + 1).map(|&(_, c)| c) == Some('>') {
                    break;
                }
                j += 1;
            }
            let text: String = chars[i..j].iter().map(|&(_, c)| c).collect();
            let tok = match text.parse::<usize>() {
                Ok(n) => Tok::Num(n),
                Err(_) => Tok::Word(text),
            };
            out.push(Token { tok, col, at });
            i = j;
            continue;
        }
        return Err(CliError::Syntax { line: lno, col, msg: format!("unexpected character `{c}`") });
    }
    Ok(out)
}

struct Cursor<'a> {
    line: &'a str,
    lno: usize,
    toks: Vec<Token>,
    k: usize,
}

impl<'a> Cursor<'a> {
    fn pos(&self) -> Pos {
        let col = self.toks.get(self.k).map(|t| t.col).unwrap_or(self.line.chars().count() + 1);
        Pos { line: self.lno, col }
    }

    fn err<T>(&self, msg: impl Into<String>) -> CliResult<T> {
        let p = self.pos();
        Err(CliError::Syntax { line: p.line, col: p.col, msg: msg.into() })
    }

    fn describe(&self) -> String {
        match self.toks.get(self.k).map(|t| &t.tok) {
            None => "end of line".into(),
            Some(Tok::Word(w)) => format!("`{w}`"),
            Some(Tok::Num(n)) => format!("`{n}`"),
            Some(Tok::Flag(f)) => format!("`--{f}`"),
            Some(Tok::Punct(p)) => format!("`{p}`"),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|t| &t.tok)
    }

    fn at_end(&self) -> bool {
        self.k >= self.toks.len()
    }

    fn punct(&mut self, p: &'static str) -> CliResult<()> {
        if self.peek() == Some(&Tok::Punct(p)) {
            self.k += 1;
            Ok(())
        } else {
            self.err(format!("expected `{p}`, found {}", self.describe()))
        }
    }

    fn eat_punct(&mut self, p: &'static str) -> bool {
        let hit = self.peek() == Some(&Tok::Punct(p));
        if hit {
            self.k += 1;
        }
        hit
    }

    fn name(&mut self) -> CliResult<String> {
        match self.peek() {
            Some(Tok::Word(w)) if w.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') => {
                let w = w.clone();
                self.k += 1;
                Ok(w)
            }
            _ => self.err(format!("expected a name, found {}", self.describe())),
        }
    }

    fn keyword(&mut self, kw: &str) -> CliResult<()> {
        match self.peek() {
            Some(Tok::Word(w)) if w == kw => {
                self.k += 1;
                Ok(())
            }
            _ => self.err(format!("expected `{kw}`, found {}", self.describe())),
        }
    }

    fn num(&mut self) -> CliResult<usize> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.k += 1;
                Ok(n)
            }
            _ => self.err(format!("expected a number, found {}", self.describe())),
        }
    }

    /// Anything up to the next flag, as a single path-like token.
    fn path(&mut self) -> CliResult<String> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.k += 1;
                Ok(w)
            }
            Some(Tok::Num(n)) => {
                let n = n.to_string();
                self.k += 1;
                Ok(n)
            }
            _ => self.err(format!("expected a path, found {}", self.describe())),
        }
    }

    /// The raw text from the current token to the end of the line.
    fn rest(&mut self) -> &'a str {
        let at = self.toks.get(self.k).map(|t| t.at).unwrap_or(self.line.len());
        self.k = self.toks.len();
        self.line[at..].trim()
    }

    fn end(&self) -> CliResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err(format!("unexpected {}", self.describe()))
        }
    }
}

fn group_expr(c: &mut Cursor) -> CliResult<GroupExpr> {
    let name = c.name()?;
    let sized = |c: &mut Cursor| -> CliResult<usize> {
        c.punct("(")?;
        let n = c.num()?;
        c.punct(")")?;
        Ok(n)
    };
    Ok(match name.as_str() {
        "cyclic" => GroupExpr::Cyclic(sized(c)?),
        "sym" => GroupExpr::Sym(sized(c)?),
        "alt" => GroupExpr::Alt(sized(c)?),
        "dihedral" => GroupExpr::Dihedral(sized(c)?),
        "quaternion8" => GroupExpr::Quaternion8,
        "product" => {
            c.punct("(")?;
            let a = group_expr(c)?;
            c.punct(",")?;
            let b = group_expr(c)?;
            c.punct(")")?;
            GroupExpr::Product(Box::new(a), Box::new(b))
        }
        "perm" => {
            c.k -= 1;
            GroupExpr::Perm(c.rest().to_string())
        }
        "table" => GroupExpr::Table(c.path()?),
        _ => GroupExpr::Ref(name),
    })
}

/// Parses a group expression on its own, as given to `--G`.
pub fn parse_group_expr(text: &str) -> CliResult<GroupExpr> {
    let mut c = Cursor { line: text, lno: 1, toks: tokenize(text, 1)?, k: 0 };
    let e = group_expr(&mut c)?;
    c.end()?;
    Ok(e)
}

fn images(c: &mut Cursor) -> CliResult<Images> {
    if c.eat_punct("[") {
        let mut out = Vec::new();
        if !c.eat_punct("]") {
            loop {
                let v = match c.peek() {
                    Some(Tok::Num(n)) => *n,
                    Some(Tok::Word(w)) if w.starts_with('g') && w[1..].parse::<usize>().is_ok() => {
                        w[1..].parse().unwrap()
                    }
                    _ => return c.err(format!("expected an element, found {}", c.describe())),
                };
                c.k += 1;
                out.push(v);
                if c.eat_punct("]") {
                    break;
                }
                c.punct(",")?;
            }
        }
        return Ok(Images::List(out));
    }
    match c.name()?.as_str() {
        "id" => Ok(Images::Identity),
        "trivial" => Ok(Images::Trivial),
        other => {
            c.k -= 1;
            c.err(format!("expected `id`, `trivial` or `[...]`, found `{other}`"))
        }
    }
}

fn flags(c: &mut Cursor) -> CliResult<(Vec<Flag>, Option<String>)> {
    let mut out = Vec::new();
    let mut alias = None;
    while !c.at_end() {
        match c.peek().cloned() {
            Some(Tok::Flag(f)) => {
                c.k += 1;
                out.push(match f.as_str() {
                    "variant" => Flag::Variant(c.name()?),
                    "prime-def" => Flag::PrimeDef(c.name()?),
                    "max-len" => Flag::MaxLen(c.num()?),
                    "catalog" => Flag::Catalog(c.name()?),
                    "format" => Flag::Format(c.name()?),
                    "out" => Flag::Out(c.path()?),
                    "G" => Flag::G(group_expr(c)?),
                    _ => {
                        c.k -= 1;
                        return c.err(format!("unknown flag `--{f}`"));
                    }
                });
            }
            Some(Tok::Word(w)) if w == "as" => {
                c.k += 1;
                alias = Some(c.name()?);
            }
            _ => return c.err(format!("unexpected {}", c.describe())),
        }
    }
    Ok((out, alias))
}

fn point_list(c: &mut Cursor) -> CliResult<Vec<usize>> {
    c.punct("[")?;
    let mut out = Vec::new();
    if c.eat_punct("]") {
        return Ok(out);
    }
    loop {
        out.push(c.num()?);
        if c.eat_punct("]") {
            return Ok(out);
        }
        c.punct(",")?;
    }
}

fn command(c: &mut Cursor, head: &str) -> CliResult<CommandKind> {
    Ok(match head {
        "spec" => CommandKind::Spec { target: c.name()? },
        "sections" => CommandKind::Sections { target: c.name()? },
        "stalk" => CommandKind::Stalk { target: c.name()?, point: c.num()? },
        "variety" => {
            let mut words = vec![c.name()?];
            while matches!(c.peek(), Some(Tok::Word(w)) if w != "as") {
                words.push(c.name()?);
            }
            CommandKind::Variety { words }
        }
        "morphism" => {
            let source = c.name()?;
            c.punct("->")?;
            let target = c.name()?;
            c.keyword("via")?;
            CommandKind::Morphism { source, target, images: images(c)? }
        }
        "glue" => {
            let target = c.name()?;
            c.keyword("along")?;
            CommandKind::Glue { target, along: point_list(c)? }
        }
        "check" => CommandKind::Check { suite: c.path()? },
        "export" => CommandKind::Export { object: c.name()? },
        _ => unreachable!("caller filters command heads"),
    })
}

const COMMANDS: [&str; 8] = ["spec", "variety", "sections", "stalk", "morphism", "glue", "check", "export"];

fn parse_line(line: &str, lno: usize) -> CliResult<Decl> {
    let mut c = Cursor { line, lno, toks: tokenize(line, lno)?, k: 0 };
    let start = c.pos();
    let head = c.name()?;
    let decl = match head.as_str() {
        "group" => {
            let name = c.name()?;
            c.punct("=")?;
            let expr = group_expr(&mut c)?;
            Decl::Group { name, expr, pos: start }
        }
        "ggroup" => {
            let name = c.name()?;
            c.punct("=")?;
            c.punct("(")?;
            let base = c.name()?;
            c.punct("->")?;
            let carrier = c.name()?;
            c.punct(")")?;
            c.keyword("via")?;
            Decl::GGroup { name, base, carrier, images: images(&mut c)?, pos: start }
        }
        "word" => {
            let name = c.name()?;
            c.keyword("over")?;
            c.punct("(")?;
            let group = c.name()?;
            c.punct(",")?;
            let vars = c.num()?;
            c.punct(")")?;
            c.punct("=")?;
            if c.at_end() {
                return c.err("expected a word literal");
            }
            let literal = c.rest().to_string();
            Decl::Word { name, group, vars, literal, pos: start }
        }
        h if COMMANDS.contains(&h) => {
            let kind = command(&mut c, h)?;
            let (flags, name) = flags(&mut c)?;
            Decl::Command(Command { kind, flags, name, pos: start })
        }
        other => {
            c.k -= 1;
            return c.err(format!("unknown declaration `{other}`"));
        }
    };
    c.end()?;
    Ok(decl)
}

#[derive(Default)]
struct Scope {
    groups: HashSet<String>,
    ggroups: HashSet<String>,
    words: HashSet<String>,
    objects: HashSet<String>,
}

fn undefined(pos: Pos, name: &str) -> CliError {
    CliError::Undefined { line: pos.line, col: pos.col, name: name.to_string() }
}

fn resolve_expr(s: &Scope, e: &GroupExpr, pos: Pos) -> CliResult<()> {
    match e {
        GroupExpr::Ref(n) if !s.groups.contains(n) => Err(undefined(pos, n)),
        GroupExpr::Product(a, b) => {
            resolve_expr(s, a, pos)?;
            resolve_expr(s, b, pos)
        }
        _ => Ok(()),
    }
}

/// Highest `Xk` index mentioned in a word literal.
fn max_variable(literal: &str) -> usize {
    let b = literal.as_bytes();
    let mut best = 0;
    for i in 0..b.len() {
        let starts = b[i] == b'X' && (i == 0 || !b[i - 1].is_ascii_alphanumeric());
        if starts {
            let digits: String = literal[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            if let Ok(k) = digits.parse::<usize>() {
                best = best.max(k);
            }
        }
    }
    best
}

fn resolve(program: &Program) -> CliResult<()> {
    let mut s = Scope::default();
    for d in &program.decls {
        match d {
            Decl::Group { name, expr, pos } => {
                resolve_expr(&s, expr, *pos)?;
                s.groups.insert(name.clone());
            }
            Decl::GGroup { name, base, carrier, pos, .. } => {
                for g in [base, carrier] {
                    if !s.groups.contains(g) {
                        return Err(undefined(*pos, g));
                    }
                }
                s.ggroups.insert(name.clone());
            }
            Decl::Word { name, group, vars, literal, pos } => {
                if !s.groups.contains(group) {
                    return Err(undefined(*pos, group));
                }
                let k = max_variable(literal);
                if k > *vars {
                    return Err(CliError::Arity {
                        line: pos.line,
                        col: pos.col,
                        msg: format!("word `{name}` uses X{k} but is declared over {vars} variables"),
                    });
                }
                s.words.insert(name.clone());
            }
            Decl::Command(cmd) => {
                let object = |n: &String| s.ggroups.contains(n) || s.groups.contains(n);
                let produced = match &cmd.kind {
                    CommandKind::Spec { target }
                    | CommandKind::Sections { target }
                    | CommandKind::Stalk { target, .. }
                    | CommandKind::Glue { target, .. } => {
                        if !object(target) {
                            return Err(undefined(cmd.pos, target));
                        }
                        Some(target.clone())
                    }
                    CommandKind::Morphism { source, target, .. } => {
                        for n in [source, target] {
                            if !object(n) {
                                return Err(undefined(cmd.pos, n));
                            }
                        }
                        Some(format!("{source}->{target}"))
                    }
                    CommandKind::Variety { words } => {
                        if let Some(w) = words.iter().find(|w| !s.words.contains(*w)) {
                            return Err(undefined(cmd.pos, w));
                        }
                        Some(words[0].clone())
                    }
                    CommandKind::Export { object } => {
                        if !s.objects.contains(object) {
                            return Err(undefined(cmd.pos, object));
                        }
                        None
                    }
                    CommandKind::Check { .. } => None,
                };
                if let Some(p) = cmd.name.clone().or(produced) {
                    s.objects.insert(p);
                }
            }
        }
    }
    Ok(())
}

/// Parses and resolves a program.
pub fn parse_program(text: &str) -> CliResult<Program> {
    let mut decls = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        decls.push(parse_line(line, i + 1)?);
    }
    let program = Program { decls };
    resolve(&program)?;
    Ok(program)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_declaration() {
        let p = parse_program("group S3 = sym(3)").unwrap();
        assert_eq!(p.decls, vec![Decl::Group { name: "S3".into(), expr: GroupExpr::Sym(3), pos: Pos { line: 1, col: 1 } }]);
    }

    #[test]
    fn malformed_group_points_at_equals() {
        match parse_program("group = sym(") {
            Err(CliError::Syntax { line: 1, col: 7, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn spec_program() {
        let p = parse_program("group S5 = sym(5)\nggroup X = (S5 -> S5) via id\nspec X --variant t2 --prime-def quotient")
            .unwrap();
        match &p.decls[2] {
            Decl::Command(Command { kind: CommandKind::Spec { target }, flags, .. }) => {
                assert_eq!(target, "X");
                assert_eq!(flags, &vec![Flag::Variant("t2".into()), Flag::PrimeDef("quotient".into())]);
            }
            d => panic!("{d:?}"),
        }
    }

    #[test]
    fn products_perms_and_words() {
        let p = parse_program(
            "group A = product(cyclic(2), cyclic(2))\ngroup P = perm 3: (1 2 3) ; (1 2)\nword W over (P, 2) = g3 * X1^2 * g1 * X2^-1",
        )
        .unwrap();
        assert_eq!(p.decls.len(), 3);
        match &p.decls[1] {
            Decl::Group { expr: GroupExpr::Perm(t), .. } => assert_eq!(t, "perm 3: (1 2 3) ; (1 2)"),
            d => panic!("{d:?}"),
        }
        match &p.decls[2] {
            Decl::Word { literal, vars: 2, .. } => assert_eq!(literal, "g3 * X1^2 * g1 * X2^-1"),
            d => panic!("{d:?}"),
        }
    }

    #[test]
    fn undefined_and_arity() {
        assert!(matches!(parse_program("ggroup X = (A -> A) via id"), Err(CliError::Undefined { .. })));
        assert!(matches!(
            parse_program("group G = cyclic(2)\nword W over (G, 1) = X2"),
            Err(CliError::Arity { line: 2, .. })
        ));
        assert!(matches!(parse_program("group G = cyclic(2)\nexport G"), Err(CliError::Undefined { .. })));
    }

    #[test]
    fn commands_and_aliases() {
        let text = "group G = sym(5)\nggroup X = (G -> G) via id\nsections X as S\nglue X along [0] as D\n\
                    morphism X -> X via [0, g1, 2]\ncheck thm2.1-bounded --G cyclic(2) --max-len 3\nexport D --format dot --out /tmp/d.dot";
        let p = parse_program(text).unwrap();
        assert_eq!(p.decls.len(), 7);
        match &p.decls[5] {
            Decl::Command(Command { kind: CommandKind::Check { suite }, flags, .. }) => {
                assert_eq!(suite, "thm2.1-bounded");
                assert_eq!(flags, &vec![Flag::G(GroupExpr::Cyclic(2)), Flag::MaxLen(3)]);
            }
            d => panic!("{d:?}"),
        }
    }

    #[test]
    fn unknown_flag_position() {
        match parse_program("group G = sym(3)\nspec G --bogus") {
            Err(CliError::Syntax { line: 2, col: 8, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
