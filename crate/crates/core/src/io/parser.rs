use super::lexer::{tokenize, Spanned, Tok};
use super::ChaseProblem;
use crate::error::{Error, Result};
use crate::model::{
    is_ident, Atom, Dependency, GeneralizedInstance, Head, ObjectKind, Query, RelationSchema,
    Schema, Term,
};

/// An atom together with the token positions needed for error reporting.
struct RawAtom {
    atom: Atom,
    at: Spanned,
    term_spans: Vec<Spanned>,
}

struct RawDependency {
    st: bool,
    body: Vec<RawAtom>,
    head: RawHead,
}

enum RawHead {
    Atoms(Vec<RawAtom>),
    Equality(Term, Term),
}

struct RawQuery {
    body: Vec<RawAtom>,
    head: Vec<(Term, Spanned)>,
    at: Spanned,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> Error {
        let t = self.peek();
        t.error(Error::Syntax(format!(
            "expected {expected}, found {}",
            t.tok.describe()
        )))
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Spanned> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn ident(&mut self) -> Result<(String, Spanned)> {
        match &self.peek().tok {
            Tok::Ident(name) => {
                let name = name.clone();
                Ok((name, self.next()))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn term(&mut self) -> Result<(Term, Spanned)> {
        match &self.peek().tok {
            Tok::Term(t) => {
                let t = t.clone();
                Ok((t, self.next()))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    /// `"(" item {"," item} ")"`
    fn parenthesized<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect(Tok::LParen, "\"(\"")?;
        let mut items = vec![item(self)?];
        while self.peek().tok == Tok::Comma {
            self.next();
            items.push(item(self)?);
        }
        self.expect(Tok::RParen, "\",\" or \")\"")?;
        Ok(items)
    }

    fn atom(&mut self) -> Result<RawAtom> {
        let (relation, at) = self.ident()?;
        let terms = self.parenthesized(Self::term)?;
        let (terms, term_spans): (Vec<Term>, Vec<Spanned>) = terms.into_iter().unzip();
        Ok(RawAtom {
            atom: Atom::new(relation, terms),
            at,
            term_spans,
        })
    }

    fn atoms(&mut self) -> Result<Vec<RawAtom>> {
        let mut atoms = vec![self.atom()?];
        while self.peek().tok == Tok::Comma {
            self.next();
            atoms.push(self.atom()?);
        }
        Ok(atoms)
    }

    fn reldecl(&mut self) -> Result<(RelationSchema, Spanned)> {
        let (name, at) = self.ident()?;
        let attributes = self
            .parenthesized(|p| p.ident())?
            .into_iter()
            .map(|(a, _)| a)
            .collect();
        Ok((RelationSchema { name, attributes }, at))
    }

    fn dependency(&mut self) -> Result<RawDependency> {
        let st = matches!(&self.peek().tok, Tok::Ident(s) if s == "st")
            && matches!(self.peek_at(1), Tok::Ident(_));
        if st {
            self.next();
        }
        let body = self.atoms()?;
        self.expect(Tok::Arrow, "\"->\"")?;
        let head = if matches!(self.peek().tok, Tok::Term(_)) {
            let (l, _) = self.term()?;
            self.expect(Tok::Equals, "\"=\"")?;
            let (r, _) = self.term()?;
            RawHead::Equality(l, r)
        } else {
            RawHead::Atoms(self.atoms()?)
        };
        Ok(RawDependency { st, body, head })
    }

    fn query(&mut self) -> Result<RawQuery> {
        let at = self.peek().clone();
        let body = self.atoms()?;
        self.expect(Tok::Arrow, "\"->\"")?;
        let head = self.parenthesized(Self::term)?;
        Ok(RawQuery { body, head, at })
    }

    fn at_item_start(&self) -> bool {
        matches!(self.peek().tok, Tok::Ident(_))
    }
}

fn check_arity(schema: &Schema, raw: &RawAtom) -> Result<()> {
    match schema.arity(&raw.atom.relation) {
        Some(n) if n == raw.atom.arity() => Ok(()),
        expected => Err(raw.at.error(Error::SchemaMismatch {
            relation: raw.atom.relation.clone(),
            expected,
            found: raw.atom.arity(),
        })),
    }
}

/// Parses a problem file. See the crate README for the grammar.
pub fn parse_problem(text: &str) -> Result<ChaseProblem> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let mut seen: Vec<String> = Vec::new();
    let mut relations: Vec<(RelationSchema, Spanned)> = Vec::new();
    let mut deps: Vec<RawDependency> = Vec::new();
    let mut instance: Option<Vec<RawAtom>> = None;
    let mut query: Option<RawQuery> = None;

    loop {
        let header = p.next();
        let name = match &header.tok {
            Tok::Eof => break,
            Tok::Section(name) => name.clone(),
            _ => {
                return Err(header.error(Error::Syntax(format!(
                    "expected a section header, found {}",
                    header.tok.describe()
                ))))
            }
        };
        if seen.contains(&name) {
            return Err(header.error(Error::DuplicateSection(format!("[{name}]"))));
        }
        let other = match name.as_str() {
            "instance" => "query",
            "query" => "instance",
            _ => "",
        };
        if seen.iter().any(|s| s == other) {
            return Err(header.error(Error::MixedObject));
        }
        seen.push(name.clone());
        match name.as_str() {
            "schema" => {
                while p.at_item_start() {
                    relations.push(p.reldecl()?);
                }
            }
            "dependencies" => {
                while p.at_item_start() {
                    deps.push(p.dependency()?);
                }
            }
            "instance" => {
                let mut atoms = Vec::new();
                while p.at_item_start() {
                    atoms.push(p.atom()?);
                }
                instance = Some(atoms);
            }
            "query" => query = Some(p.query()?),
            _ => unreachable!("lexer only yields known sections"),
        }
        if !matches!(p.peek().tok, Tok::Section(_) | Tok::Eof) {
            return Err(p.unexpected("an item or a section header"));
        }
    }

    let mut schema_relations = Vec::new();
    for (rel, at) in relations {
        if schema_relations
            .iter()
            .any(|r: &RelationSchema| r.name == rel.name)
        {
            return Err(at.error(Error::Syntax(format!(
                "relation {} declared twice",
                rel.name
            ))));
        }
        if !rel.is_well_formed() || !rel.attributes.iter().all(|a| is_ident(a)) {
            return Err(at.error(Error::Syntax(format!(
                "relation {} has repeated attribute names",
                rel.name
            ))));
        }
        schema_relations.push(rel);
    }
    let schema = Schema::new(schema_relations);

    let mut dependencies = Vec::new();
    for (n, raw) in deps.into_iter().enumerate() {
        for a in raw.body.iter().chain(match &raw.head {
            RawHead::Atoms(h) => h.as_slice(),
            RawHead::Equality(..) => &[],
        }) {
            check_arity(&schema, a)?;
        }
        let body = raw.body.into_iter().map(|a| a.atom).collect();
        let head = match raw.head {
            RawHead::Atoms(h) => Head::Atoms(h.into_iter().map(|a| a.atom).collect()),
            RawHead::Equality(l, r) => Head::Equality(l, r),
        };
        dependencies.push(Dependency {
            id: format!("sigma{}", n + 1),
            body,
            head,
            source_target: raw.st,
        });
    }

    let (object, query_head) = match (instance, query) {
        (Some(atoms), None) => {
            let mut object = GeneralizedInstance::empty(ObjectKind::Instance);
            for raw in atoms {
                check_arity(&schema, &raw)?;
                insert_checked(&mut object, raw)?;
            }
            (object, None)
        }
        (None, Some(raw)) => {
            let mut object = GeneralizedInstance::empty(ObjectKind::Query);
            let mut body = Vec::new();
            for a in raw.body {
                check_arity(&schema, &a)?;
                body.push(a.atom.clone());
                insert_checked(&mut object, a)?;
            }
            let head_terms: Vec<Term> = raw.head.iter().map(|(t, _)| t.clone()).collect();
            let q = Query::new(body, head_terms).map_err(|e| {
                let span = match &e {
                    Error::IllegalTerm { term, .. } => raw
                        .head
                        .iter()
                        .find(|(t, _)| t == term)
                        .map(|(_, s)| s.clone()),
                    _ => None,
                };
                span.unwrap_or(raw.at.clone()).error(e)
            })?;
            (object, Some(q.head))
        }
        (None, None) => return Err(Error::MissingObject),
        (Some(_), Some(_)) => unreachable!("rejected at the section header"),
    };

    Ok(ChaseProblem {
        schema,
        dependencies,
        object,
        query_head,
    })
}

fn insert_checked(object: &mut GeneralizedInstance, raw: RawAtom) -> Result<()> {
    if let Some(k) = raw.atom.terms.iter().position(|t| !object.kind().admits(t)) {
        let err = object.insert(raw.atom.clone()).unwrap_err();
        return Err(raw.term_spans[k].error(err));
    }
    object.insert(raw.atom)?;
    Ok(())
}
