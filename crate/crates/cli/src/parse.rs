//! Line-oriented presentation documents.
//!
//! ```text
//! field Q
//! cap 4
//! algebra plane
//!   gens x y
//!   deg 2
//!   rel x*y - 2*y*x
//! end
//! twist t on plane
//!   power [[1,0],[0,3]]
//! end
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use num_bigint::BigInt;
use zhangtwist::exactlin::{Field, Matrix, Scalar};
use zhangtwist::freetensor::{GeneratorSet, Tensor};
use zhangtwist::homog::Presentation;
use zhangtwist::twist::{TwistingSystem, Window};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SessionConfig {
    pub field: Field,
    pub cap: Option<usize>,
    pub window: Option<Window>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraDecl {
    pub name: String,
    pub relations: Vec<Tensor>,
    pub presentation: Presentation,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TwistSpec {
    /// `τ_i = φ^i`
    Power(Matrix),
    Explicit(BTreeMap<i64, Matrix>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistDecl {
    pub name: String,
    pub on: String,
    pub spec: TwistSpec,
}

impl TwistDecl {
    pub fn system(
        &self,
        field: Field,
        g: usize,
        window: Window,
    ) -> zhangtwist::Result<TwistingSystem> {
        match &self.spec {
            TwistSpec::Power(phi) => TwistingSystem::one_parameter(phi, window),
            TwistSpec::Explicit(maps) => {
                let inside = maps
                    .iter()
                    .filter(|(i, _)| window.contains(**i))
                    .map(|(i, m)| (*i, m.clone()))
                    .collect();
                TwistingSystem::explicit(field, g, window, inside)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub config: SessionConfig,
    pub algebras: Vec<AlgebraDecl>,
    pub twists: Vec<TwistDecl>,
}

impl Document {
    pub fn algebra(&self, name: &str) -> Option<&AlgebraDecl> {
        self.algebras.iter().find(|a| a.name == name)
    }

    pub fn twist(&self, name: &str) -> Option<&TwistDecl> {
        self.twists.iter().find(|t| t.name == name)
    }
}

/// Cursor over one line; columns are 1-based character positions.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Cursor {
        let body = src.split('#').next().unwrap_or("");
        Cursor {
            chars: body.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn err_at(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    /// Keywords and plain tokens: everything up to whitespace.
    fn token(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && !self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, self.chars[start..self.pos].iter().collect()))
    }

    /// `[A-Za-z_][A-Za-z0-9_^']*`, or a parenthesised pair `(id,id)`.
    fn ident(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat('(') {
            let (_, a) = self.ident()?;
            self.expect(',')?;
            let (_, b) = self.ident()?;
            self.expect(')')?;
            return Ok((start, format!("({a},{b})")));
        }
        match self.chars.get(self.pos) {
            Some(c) if c.is_alphabetic() || *c == '_' => {}
            _ => return Err(self.err("expected identifier")),
        }
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_alphanumeric() || c == '_' || c == '^' || c == '\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn integer(&mut self) -> Result<(usize, BigInt), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.chars.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<BigInt>()
            .map(|v| (start, v))
            .map_err(|_| self.err_at(start, format!("malformed scalar `{text}`")))
    }

    fn scalar(&mut self, field: Field) -> Result<Scalar, ParseError> {
        let (start, num) = self.integer()?;
        if self.chars.get(self.pos) == Some(&'/') {
            self.pos += 1;
            let den_start = self.pos;
            while matches!(self.chars.get(self.pos), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let text: String = self.chars[start..self.pos].iter().collect();
            if matches!(field, Field::Prime(_)) {
                return Err(self.err_at(
                    start,
                    format!("malformed scalar `{text}`: F_p scalars are integers"),
                ));
            }
            let den: BigInt = self.chars[den_start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.err_at(start, format!("malformed scalar `{text}`")))?;
            return field
                .from_ratio(&num, &den)
                .ok_or_else(|| self.err_at(start, format!("malformed scalar `{text}`")));
        }
        Ok(field.from_bigint(&num))
    }

    fn matrix(&mut self, field: Field) -> Result<(usize, Matrix), ParseError> {
        self.skip_ws();
        let start = self.pos;
        self.expect('[')?;
        let mut rows = Vec::new();
        loop {
            self.expect('[')?;
            let mut row = vec![self.scalar(field)?];
            while self.eat(',') {
                row.push(self.scalar(field)?);
            }
            self.expect(']')?;
            rows.push(row);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(self.err_at(start, "matrix must be square"));
        }
        Ok((
            start,
            Matrix::from_rows(field, rows).expect("rows checked square"),
        ))
    }
}

fn number<T: std::str::FromStr>(cur: &mut Cursor, what: &str) -> Result<T, ParseError> {
    let (at, tok) = cur
        .token()
        .ok_or_else(|| cur.err(format!("expected {what}")))?;
    tok.parse()
        .map_err(|_| cur.err_at(at, format!("expected {what}, found `{tok}`")))
}

/// `[sign] term (("+"|"-") term)*` with `term := [scalar "*"] gen ("*" gen)^{m-1}`.
fn expr(
    cur: &mut Cursor,
    field: Field,
    gens: &GeneratorSet,
    m: usize,
) -> Result<Tensor, ParseError> {
    let mut t = Tensor::zero(field, m);
    let mut negate = cur.eat('-');
    if !negate {
        cur.eat('+');
    }
    loop {
        cur.skip_ws();
        let term_start = cur.pos;
        let mut coef = field.one();
        if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            coef = cur.scalar(field)?;
            cur.expect('*')?;
        }
        let mut word = Vec::new();
        loop {
            let (at, name) = cur.ident()?;
            let g = gens
                .index_of(&name)
                .ok_or_else(|| cur.err_at(at, format!("unknown generator `{name}`")))?;
            word.push(g);
            if !cur.eat('*') {
                break;
            }
        }
        if word.len() != m {
            return Err(cur.err_at(term_start, format!("word length {} ≠ m={m}", word.len())));
        }
        if negate {
            coef = -&coef;
        }
        t.add_term(word, coef);
        if cur.eat('+') {
            negate = false;
        } else if cur.eat('-') {
            negate = true;
        } else {
            break;
        }
    }
    cur.expect_end()?;
    Ok(t)
}

struct PendingAlgebra {
    name: String,
    line: usize,
    gens: Option<GeneratorSet>,
    m: Option<usize>,
    rels: Vec<(usize, String)>,
}

struct PendingTwist {
    name: String,
    on: String,
    line: usize,
    power: Option<(usize, usize, Matrix)>,
    explicit: BTreeMap<i64, (usize, usize, Matrix)>,
}

enum Block {
    Algebra(PendingAlgebra),
    Twist(PendingTwist),
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    // The field governs every scalar, so it is read first.
    let mut field = None;
    for (k, raw) in text.lines().enumerate() {
        let mut cur = Cursor::new(raw, k + 1);
        if let Some((_, kw)) = cur.token() {
            if kw == "field" {
                if field.is_some() {
                    return Err(cur.err_at(0, "duplicate `field` line"));
                }
                field = Some(parse_field(&mut cur)?);
            }
        }
    }
    let field = field.unwrap_or(Field::Rational);
    let mut config = SessionConfig {
        field,
        cap: None,
        window: None,
        seed: None,
    };
    let mut algebras: Vec<AlgebraDecl> = Vec::new();
    let mut twists: Vec<TwistDecl> = Vec::new();
    let mut block: Option<Block> = None;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let mut cur = Cursor::new(raw, line);
        let Some((at, kw)) = cur.token() else {
            continue;
        };
        match (&mut block, kw.as_str()) {
            (None, "field") => {}
            (None, "cap") => {
                config.cap = Some(number(&mut cur, "a degree cap")?);
                cur.expect_end()?;
            }
            (None, "window") => {
                let lo: i64 = number(&mut cur, "window lower end")?;
                let hi: i64 = number(&mut cur, "window upper end")?;
                if lo > hi {
                    return Err(cur.err_at(at, "window lower end exceeds upper end"));
                }
                cur.expect_end()?;
                config.window = Some(Window::new(lo, hi));
            }
            (None, "seed") => {
                config.seed = Some(number(&mut cur, "a seed")?);
                cur.expect_end()?;
            }
            (None, "algebra") => {
                let (_, name) = cur.ident()?;
                cur.expect_end()?;
                if algebras.iter().any(|a| a.name == name) {
                    return Err(cur.err_at(at, format!("duplicate algebra `{name}`")));
                }
                block = Some(Block::Algebra(PendingAlgebra {
                    name,
                    line,
                    gens: None,
                    m: None,
                    rels: Vec::new(),
                }));
            }
            (None, "twist") => {
                let (_, name) = cur.ident()?;
                match cur.token() {
                    Some((_, on)) if on == "on" => {}
                    _ => return Err(cur.err("expected `on`")),
                }
                let (on_at, on) = cur.ident()?;
                cur.expect_end()?;
                if !algebras.iter().any(|a| a.name == on) {
                    return Err(cur.err_at(on_at, format!("unknown algebra `{on}`")));
                }
                if twists.iter().any(|t| t.name == name) {
                    return Err(cur.err_at(at, format!("duplicate twist `{name}`")));
                }
                block = Some(Block::Twist(PendingTwist {
                    name,
                    on,
                    line,
                    power: None,
                    explicit: BTreeMap::new(),
                }));
            }
            (None, other) => return Err(cur.err_at(at, format!("unknown directive `{other}`"))),
            (Some(Block::Algebra(a)), "gens") => {
                let mut names = Vec::new();
                while !cur.at_end() {
                    names.push(cur.ident()?.1);
                }
                a.gens = Some(GeneratorSet::new(names).map_err(|e| cur.err_at(at, e.to_string()))?);
            }
            (Some(Block::Algebra(a)), "deg") => {
                let m: usize = number(&mut cur, "a degree")?;
                if m < 2 {
                    return Err(cur.err_at(at, "relation degree must be at least 2"));
                }
                cur.expect_end()?;
                a.m = Some(m);
            }
            (Some(Block::Algebra(a)), "rel") => a.rels.push((line, raw.to_string())),
            (Some(Block::Twist(t)), "power") => {
                let (mat_at, mat) = cur.matrix(field)?;
                cur.expect_end()?;
                if t.power.is_some() || !t.explicit.is_empty() {
                    return Err(
                        cur.err_at(at, "a twist takes one `power` line or `explicit` lines")
                    );
                }
                t.power = Some((line, mat_at, mat));
            }
            (Some(Block::Twist(t)), "explicit") => {
                let i: i64 = number(&mut cur, "an index")?;
                let (mat_at, mat) = cur.matrix(field)?;
                cur.expect_end()?;
                if t.power.is_some() || t.explicit.contains_key(&i) {
                    return Err(cur.err_at(at, format!("conflicting data for index {i}")));
                }
                t.explicit.insert(i, (line, mat_at, mat));
            }
            (Some(_), "end") => {
                cur.expect_end()?;
                match block.take().expect("inside a block") {
                    Block::Algebra(a) => algebras.push(finish_algebra(a, field)?),
                    Block::Twist(t) => {
                        let decl = finish_twist(t, &algebras)?;
                        twists.push(decl);
                    }
                }
            }
            (Some(_), other) => {
                return Err(cur.err_at(at, format!("unexpected `{other}` inside a block")))
            }
        }
    }
    if let Some(b) = block {
        let (line, name) = match b {
            Block::Algebra(a) => (a.line, a.name),
            Block::Twist(t) => (t.line, t.name),
        };
        return Err(ParseError {
            line,
            col: 1,
            msg: format!("block `{name}` is missing `end`"),
        });
    }
    if let Some(cap) = config.cap {
        if let Some(a) = algebras.iter().find(|a| a.presentation.m() > cap) {
            return Err(ParseError {
                line: 1,
                col: 1,
                msg: format!(
                    "cap {cap} is below m={} of `{}`",
                    a.presentation.m(),
                    a.name
                ),
            });
        }
    }
    Ok(Document {
        config,
        algebras,
        twists,
    })
}

fn parse_field(cur: &mut Cursor) -> Result<Field, ParseError> {
    let (at, kind) = cur
        .token()
        .ok_or_else(|| cur.err("expected `Q` or `Fp <prime>`"))?;
    let field = match kind.as_str() {
        "Q" => Field::Rational,
        "Fp" => {
            let (pat, p) = cur.token().ok_or_else(|| cur.err("expected a prime"))?;
            let p: u64 = p
                .parse()
                .map_err(|_| cur.err_at(pat, format!("expected a prime, found `{p}`")))?;
            Field::prime(p).ok_or_else(|| cur.err_at(pat, format!("{p} is not prime")))?
        }
        other => return Err(cur.err_at(at, format!("unknown field `{other}`"))),
    };
    cur.expect_end()?;
    Ok(field)
}

fn finish_algebra(a: PendingAlgebra, field: Field) -> Result<AlgebraDecl, ParseError> {
    let at_block = |msg: &str| ParseError {
        line: a.line,
        col: 1,
        msg: format!("algebra `{}`: {msg}", a.name),
    };
    let gens = a.gens.clone().ok_or_else(|| at_block("missing `gens`"))?;
    let m = a.m.ok_or_else(|| at_block("missing `deg`"))?;
    let mut relations = Vec::new();
    for (line, raw) in &a.rels {
        let mut cur = Cursor::new(raw, *line);
        cur.token();
        relations.push(expr(&mut cur, field, &gens, m)?);
    }
    let presentation = Presentation::from_tensors(gens, m, field, &relations)
        .map_err(|e| at_block(&e.to_string()))?;
    Ok(AlgebraDecl {
        name: a.name,
        relations,
        presentation,
    })
}

fn finish_twist(t: PendingTwist, algebras: &[AlgebraDecl]) -> Result<TwistDecl, ParseError> {
    let g = algebras
        .iter()
        .find(|a| a.name == t.on)
        .expect("checked on open")
        .presentation
        .gens()
        .len();
    let check = |at: usize, line: usize, m: &Matrix| -> Result<(), ParseError> {
        let err = |msg: String| ParseError {
            line,
            col: at + 1,
            msg,
        };
        if m.rows() != g {
            return Err(err(format!(
                "matrix is {}x{} but `{}` has {g} generators",
                m.rows(),
                m.cols(),
                t.on
            )));
        }
        if m.inverse().is_none() {
            return Err(err("matrix is not invertible".into()));
        }
        Ok(())
    };
    let spec = if let Some((line, at, m)) = t.power {
        check(at, line, &m)?;
        TwistSpec::Power(m)
    } else if !t.explicit.is_empty() {
        let mut maps = BTreeMap::new();
        for (i, (line, at, m)) in t.explicit {
            check(at, line, &m)?;
            if i == 0 && !m.is_identity() {
                return Err(ParseError {
                    line,
                    col: at + 1,
                    msg: "tau_0 must be the identity".into(),
                });
            }
            maps.insert(i, m);
        }
        TwistSpec::Explicit(maps)
    } else {
        return Err(ParseError {
            line: t.line,
            col: 1,
            msg: format!("twist `{}` has no matrices", t.name),
        });
    };
    Ok(TwistDecl {
        name: t.name,
        on: t.on,
        spec,
    })
}

fn render_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            format!(
                "[{}]",
                (0..m.cols())
                    .map(|c| m.get(r, c).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    format!("[{}]", rows.join(","))
}

pub fn render_field(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("Fp {p}"),
    }
}

/// An `algebra` block for `pres`, one `rel` line per relation tensor.
pub fn render_algebra(name: &str, pres: &Presentation, relations: &[Tensor]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra {name}");
    let _ = writeln!(out, "  gens {}", pres.gens().names().join(" "));
    let _ = writeln!(out, "  deg {}", pres.m());
    for r in relations {
        let _ = writeln!(out, "  rel {}", r.render(pres.gens()));
    }
    out.push_str("end\n");
    out
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", render_field(self.config.field))?;
        if let Some(c) = self.config.cap {
            writeln!(f, "cap {c}")?;
        }
        if let Some(w) = self.config.window {
            writeln!(f, "window {} {}", w.lo, w.hi)?;
        }
        if let Some(s) = self.config.seed {
            writeln!(f, "seed {s}")?;
        }
        for a in &self.algebras {
            f.write_str(&render_algebra(&a.name, &a.presentation, &a.relations))?;
        }
        for t in &self.twists {
            writeln!(f, "twist {} on {}", t.name, t.on)?;
            match &t.spec {
                TwistSpec::Power(m) => writeln!(f, "  power {}", render_matrix(m))?,
                TwistSpec::Explicit(maps) => {
                    for (i, m) in maps {
                        writeln!(f, "  explicit {i} {}", render_matrix(m))?;
                    }
                }
            }
            writeln!(f, "end")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLANE: &str = "\
field Q
cap 4
# quantum plane, q = 2
algebra plane
  gens x y
  deg 2
  rel x*y - 2*y*x
end
twist t on plane
  power [[1,0],[0,3]]
end
";

    #[test]
    fn quantum_plane_document() {
        let doc = parse_document(PLANE).unwrap();
        let a = doc.algebra("plane").unwrap();
        assert_eq!(a.presentation.gens().len(), 2);
        assert_eq!(a.presentation.relations().dim(), 1);
        assert_eq!(doc.config.cap, Some(4));
        assert!(matches!(doc.twist("t").unwrap().spec, TwistSpec::Power(_)));
    }

    #[test]
    fn empty_relation_list_is_free() {
        let doc = parse_document("algebra f\n gens a b\n deg 2\nend\n").unwrap();
        assert_eq!(doc.algebras[0].presentation.relations().dim(), 0);
    }

    #[test]
    fn word_length_error() {
        let err = parse_document("algebra a\n gens x y\n deg 2\n rel x*y*y\nend\n").unwrap_err();
        assert_eq!(err.msg, "word length 3 ≠ m=2");
        assert_eq!((err.line, err.col), (4, 6));
    }

    #[test]
    fn reported_errors() {
        let unknown = parse_document("algebra a\n gens x y\n deg 2\n rel x*z\nend\n").unwrap_err();
        assert_eq!(unknown.msg, "unknown generator `z`");
        assert_eq!((unknown.line, unknown.col), (4, 8));
        let singular = parse_document(
            "algebra a\n gens x y\n deg 2\nend\ntwist t on a\n power [[1,1],[1,1]]\nend\n",
        )
        .unwrap_err();
        assert_eq!(singular.msg, "matrix is not invertible");
        let scalar =
            parse_document("algebra a\n gens x y\n deg 2\n rel 1/0*x*y\nend\n").unwrap_err();
        assert!(scalar.msg.starts_with("malformed scalar"), "{scalar}");
        let fp = parse_document("field Fp 7\nalgebra a\n gens x y\n deg 2\n rel 1/2*x*y\nend\n")
            .unwrap_err();
        assert!(fp.msg.starts_with("malformed scalar"), "{fp}");
        assert_eq!(
            parse_document("field Fp 8\n").unwrap_err().msg,
            "8 is not prime"
        );
    }

    #[test]
    fn print_parse_fixpoint() {
        let doc = parse_document(PLANE).unwrap();
        let again = parse_document(&doc.to_string()).unwrap();
        assert_eq!(doc, again);
        assert_eq!(doc.to_string(), again.to_string());
    }

    #[test]
    fn pair_identifiers_and_explicit_twists() {
        let text = "field Fp 5\nwindow 0 3\nalgebra b\n gens (x,x^) (y,y^)\n deg 2\n rel 3*(x,x^)*(y,y^) + (y,y^)*(x,x^)\nend\n\
                    twist t on b\n explicit 1 [[2,0],[0,1]]\n explicit 2 [[4,0],[0,1]]\nend\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.algebras[0].presentation.gens().name(0), "(x,x^)");
        assert_eq!(parse_document(&doc.to_string()).unwrap(), doc);
    }
}
