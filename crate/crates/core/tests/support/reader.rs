//! Reads the ASCII formula notation back into `Formula` values.

use fglue::kernel::{parse_type_in, Type};
use fglue::readback::{Formula, LogicTerm};
use fglue::signature::{Choice, Connective, Quantifier, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Punct(&'static str),
}

fn lex(src: &str) -> Vec<Tok> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Tok::Punct("->"));
            i += 2;
        } else {
            let p = match c {
                '(' => "(",
                ')' => ")",
                '[' => "[",
                ']' => "]",
                ',' => ",",
                '.' => ".",
                ':' => ":",
                '~' => "~",
                '&' => "&",
                '|' => "|",
                _ => panic!("unexpected character {c:?} in formula"),
            };
            out.push(Tok::Punct(p));
            i += 1;
        }
    }
    out
}

struct Reader<'a> {
    sig: &'a Signature,
    toks: Vec<Tok>,
    pos: usize,
    scope: Vec<(String, Type)>,
}

type R<T> = Result<T, String>;

impl Reader<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> R<Tok> {
        let t = self.toks.get(self.pos).cloned().ok_or("unexpected end")?;
        self.pos += 1;
        Ok(t)
    }

    fn punct(&mut self, p: &str) -> R<()> {
        match self.next()? {
            Tok::Punct(q) if q == p => Ok(()),
            other => Err(format!("expected {p}, found {other:?}")),
        }
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    fn ident(&mut self) -> R<String> {
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            other => Err(format!("expected identifier, found {other:?}")),
        }
    }

    /// `x:SORT.` where the sort runs to the first `.` outside parentheses.
    fn binder(&mut self) -> R<(String, Type)> {
        let var = self.ident()?;
        self.punct(":")?;
        let mut text = String::new();
        let mut depth = 0;
        loop {
            match self.next()? {
                Tok::Punct(".") if depth == 0 => break,
                Tok::Punct(p) => {
                    depth += match p {
                        "(" => 1,
                        ")" => -1,
                        _ => 0,
                    };
                    text.push_str(p);
                    text.push(' ');
                }
                Tok::Ident(s) => {
                    text.push_str(&s);
                    text.push(' ');
                }
            }
        }
        let sort = parse_type_in(&text, self.sig).map_err(|e| e.to_string())?;
        Ok((var, sort))
    }

    fn lookup(&self, name: &str) -> Option<Type> {
        self.scope.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t.clone())
    }

    fn formula(&mut self) -> R<Formula> {
        if self.is_punct("~") {
            self.next()?;
            return Ok(Formula::negation(self.formula()?));
        }
        if self.is_punct("(") {
            self.next()?;
            let a = self.formula()?;
            let kind = match self.next()? {
                Tok::Punct("&") => Connective::And,
                Tok::Punct("|") => Connective::Or,
                Tok::Punct("->") => Connective::Imp,
                other => return Err(format!("expected connective, found {other:?}")),
            };
            let b = self.formula()?;
            self.punct(")")?;
            return Ok(Formula::binary(kind, a, b));
        }
        let name = self.ident()?;
        if let Some(kind) = Quantifier::from_name(&name).filter(|_| !self.is_punct("(")) {
            let (var, sort) = self.binder()?;
            self.scope.push((var.clone(), sort.clone()));
            let restrictor = if kind == Quantifier::Most {
                self.punct("[")?;
                let r = self.formula()?;
                self.punct("]")?;
                Some(Box::new(r))
            } else {
                None
            };
            let body = self.formula();
            self.scope.pop();
            return Ok(Formula::Quant { kind, sort, var, restrictor, body: Box::new(body?) });
        }
        let head_ty = self
            .lookup(&name)
            .or_else(|| self.sig.constant_type(&name).cloned())
            .ok_or_else(|| format!("unknown predicate {name}"))?;
        let args = self.args(&head_ty)?;
        Ok(Formula::Atom { pred: name, args })
    }

    fn args(&mut self, head_ty: &Type) -> R<Vec<LogicTerm>> {
        if !self.is_punct("(") {
            return Ok(Vec::new());
        }
        self.next()?;
        let (doms, _) = head_ty.uncurry();
        let doms: Vec<Type> = doms.into_iter().cloned().collect();
        let mut out = Vec::new();
        for (i, dom) in doms.iter().enumerate() {
            if i > 0 {
                if self.is_punct(")") {
                    break;
                }
                self.punct(",")?;
            }
            out.push(self.term(dom)?);
        }
        self.punct(")")?;
        Ok(out)
    }

    fn term(&mut self, expected: &Type) -> R<LogicTerm> {
        if *expected == Type::base("t") {
            return Ok(LogicTerm::Formula(Box::new(self.formula()?)));
        }
        let name = self.ident()?;
        if let Some(kind) = Choice::from_name(&name).filter(|_| !self.is_punct("(")) {
            let (var, sort) = self.binder()?;
            self.scope.push((var.clone(), sort.clone()));
            let body = self.formula();
            self.scope.pop();
            return Ok(LogicTerm::Choice { kind, sort, var, body: Box::new(body?) });
        }
        if name == "lambda" {
            let (var, sort) = self.binder()?;
            let Type::Arrow(_, cod) = expected else { return Err("lambda at non-arrow".into()) };
            self.scope.push((var.clone(), sort.clone()));
            let body = self.term(cod);
            self.scope.pop();
            return Ok(LogicTerm::Lambda { var, sort, body: Box::new(body?) });
        }
        let bound = self.lookup(&name);
        let head_ty = bound
            .clone()
            .or_else(|| self.sig.constant_type(&name).cloned())
            .ok_or_else(|| format!("unknown name {name}"))?;
        let args = self.args(&head_ty)?;
        Ok(match (args.is_empty(), bound) {
            (true, Some(sort)) => LogicTerm::IndVar { name, sort },
            (true, None) => LogicTerm::IndConst { name, sort: head_ty },
            (false, _) => LogicTerm::FuncApp { name, args },
        })
    }
}

/// Parses the notation produced by `print_formula`, resolving sorts and
/// constant types against `sig`.
pub fn read_formula(sig: &Signature, src: &str) -> Result<Formula, String> {
    let mut r = Reader { sig, toks: lex(src), pos: 0, scope: Vec::new() };
    let f = r.formula()?;
    if r.pos != r.toks.len() {
        return Err(format!("trailing input at token {}", r.pos));
    }
    Ok(f)
}
