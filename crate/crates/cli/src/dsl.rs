//! Expression language: tokens, AST, parser and canonical printer.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' int)?
//! atom   := generator | scalar | fn '(' expr {',' expr} ')' | '(' expr ')'
//! ```

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    X(u8),
    L(u8, u8),
    P(u8),
    E,
    EInv,
    M,
    N(u8),
    /// `w[m,n]`, stored with `m < n`; the sign lives in the AST.
    W(u8, u8),
    WX(u8),
    WPhi,
    Om,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X(m) => write!(f, "x{}", m),
            Gen::L(m, n) => write!(f, "L[{},{}]", m, n),
            Gen::P(m) => write!(f, "P{}", m),
            Gen::E => write!(f, "E"),
            Gen::EInv => write!(f, "Einv"),
            Gen::M => write!(f, "M"),
            Gen::N(i) => write!(f, "N{}", i),
            Gen::W(m, n) => write!(f, "w[{},{}]", m, n),
            Gen::WX(m) => write!(f, "w{}", m),
            Gen::WPhi => write!(f, "w"),
            Gen::Om => write!(f, "Om"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    D,
    S,
    Eps,
    Delta,
    Star,
    Ad,
    Pair,
    Wedge,
}

impl Func {
    pub const ALL: [Func; 8] = [Func::D, Func::S, Func::Eps, Func::Delta, Func::Star, Func::Ad, Func::Pair, Func::Wedge];

    pub fn name(&self) -> &'static str {
        match self {
            Func::D => "d",
            Func::S => "S",
            Func::Eps => "eps",
            Func::Delta => "Delta",
            Func::Star => "star",
            Func::Ad => "ad",
            Func::Pair => "pair",
            Func::Wedge => "wedge",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Func::Pair | Func::Wedge => 2,
            _ => 1,
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarLit {
    Int(u64),
    I,
    K,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    /// Terms with a "subtract" flag; a leading `-` flags the first term.
    Sum(Vec<(bool, Ast)>),
    Product(Vec<Ast>),
    Quot(Box<Ast>, Box<Ast>),
    Power(Box<Ast>, i32),
    Gen(Gen),
    Scalar(ScalarLit),
    Apply(Func, Vec<Ast>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
            let v = text.parse().map_err(|_| ParseError { pos, msg: format!("integer {} too large", text) })?;
            out.push((pos, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|(_, c)| c).collect())));
        } else if "+-*/^(),[]".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError { pos, msg: format!("unexpected character {:?}", c) });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.toks.get(self.i), Some((_, Tok::Sym(s))) if *s == c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        let hit = self.peek_sym(c);
        if hit {
            self.i += 1;
        }
        hit
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c))
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        match self.toks.get(self.i) {
            Some((_, Tok::Int(v))) => {
                self.i += 1;
                Ok(*v)
            }
            _ => self.err("expected integer"),
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let lead = self.eat_sym('-');
        let mut terms = vec![(lead, self.term()?)];
        loop {
            if self.eat_sym('+') {
                terms.push((false, self.term()?));
            } else if self.eat_sym('-') {
                terms.push((true, self.term()?));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 && !terms[0].0 { terms.pop().unwrap().1 } else { Ast::Sum(terms) })
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut acc = self.factor()?;
        let mut open = false;
        loop {
            if self.eat_sym('*') {
                let f = self.factor()?;
                match (&mut acc, open) {
                    (Ast::Product(v), true) => v.push(f),
                    _ => acc = Ast::Product(vec![acc, f]),
                }
                open = true;
            } else if self.eat_sym('/') {
                let f = self.factor()?;
                acc = Ast::Quot(Box::new(acc), Box::new(f));
                open = false;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        let a = self.atom()?;
        if self.eat_sym('^') {
            let neg = self.eat_sym('-');
            let pos = self.pos();
            let n = self.int()?;
            let n = i32::try_from(n).map_err(|_| ParseError { pos, msg: "exponent too large".into() })?;
            return Ok(Ast::Power(Box::new(a), if neg { -n } else { n }));
        }
        Ok(a)
    }

    fn index(&mut self, name: &str) -> Result<u8, ParseError> {
        let pos = self.pos();
        let v = self.int()?;
        if v > 2 {
            return Err(ParseError { pos, msg: format!("index {} of {} out of range 0..=2", v, name) });
        }
        Ok(v as u8)
    }

    fn pair_index(&mut self, name: &str) -> Result<(u8, u8), ParseError> {
        self.expect_sym('[')?;
        let m = self.index(name)?;
        self.expect_sym(',')?;
        let n = self.index(name)?;
        self.expect_sym(']')?;
        Ok((m, n))
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        let pos = self.pos();
        let Some((_, tok)) = self.toks.get(self.i).cloned() else {
            return self.err("unexpected end of input");
        };
        self.i += 1;
        match tok {
            Tok::Int(v) => Ok(Ast::Scalar(ScalarLit::Int(v))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Sym(c) => Err(ParseError { pos, msg: format!("unexpected '{}'", c) }),
            Tok::Ident(name) => {
                if let Some(f) = Func::from_name(&name) {
                    if self.peek_sym('(') {
                        self.i += 1;
                        let mut args = vec![self.expr()?];
                        while self.eat_sym(',') {
                            args.push(self.expr()?);
                        }
                        self.expect_sym(')')?;
                        if args.len() != f.arity() {
                            return Err(ParseError {
                                pos,
                                msg: format!("{} takes {} argument(s), got {}", f.name(), f.arity(), args.len()),
                            });
                        }
                        return Ok(Ast::Apply(f, args));
                    }
                }
                self.ident(&name, pos)
            }
        }
    }

    fn ident(&mut self, name: &str, pos: usize) -> Result<Ast, ParseError> {
        let digit = |s: &str, lo: u8| -> Option<u8> {
            let v: u8 = s.parse().ok()?;
            (s.len() == 1 && (lo..=2).contains(&v)).then_some(v)
        };
        let g = match name {
            "I" => return Ok(Ast::Scalar(ScalarLit::I)),
            "k" => return Ok(Ast::Scalar(ScalarLit::K)),
            "L" => {
                let (m, n) = self.pair_index("L")?;
                Gen::L(m, n)
            }
            "w" if self.peek_sym('[') => {
                let (m, n) = self.pair_index("w")?;
                if m == n {
                    return Err(ParseError { pos, msg: format!("w[{},{}] vanishes by antisymmetry", m, n) });
                }
                return Ok(if m < n {
                    Ast::Gen(Gen::W(m, n))
                } else {
                    Ast::Sum(vec![(true, Ast::Gen(Gen::W(n, m)))])
                });
            }
            "w" => Gen::WPhi,
            "E" => Gen::E,
            "Einv" => Gen::EInv,
            "M" => Gen::M,
            "Om" => Gen::Om,
            _ => {
                let (head, tail) = name.split_at(1.min(name.len()));
                let idx = match head {
                    "x" | "P" | "w" => digit(tail, 0),
                    "N" => digit(tail, 1),
                    _ => None,
                };
                match (head, idx) {
                    ("x", Some(v)) => Gen::X(v),
                    ("P", Some(v)) => Gen::P(v),
                    ("w", Some(v)) => Gen::WX(v),
                    ("N", Some(v)) => Gen::N(v),
                    ("x" | "P" | "w" | "N", None) if !tail.is_empty() && tail.chars().all(|c| c.is_ascii_digit()) => {
                        return Err(ParseError { pos, msg: format!("index in {} out of range", name) })
                    }
                    _ => return Err(ParseError { pos, msg: format!("unknown identifier {}", name) }),
                }
            }
        };
        Ok(Ast::Gen(g))
    }
}

pub fn parse(src: &str) -> Result<Ast, ParseError> {
    let mut p = Parser { toks: lex(src)?, i: 0, end: src.len() };
    let e = p.expr()?;
    if p.i < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

fn is_compound(a: &Ast) -> bool {
    matches!(a, Ast::Sum(_) | Ast::Product(_) | Ast::Quot(..))
}

struct Wrapped<'a>(&'a Ast, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Sum(terms) => {
                for (k, (neg, t)) in terms.iter().enumerate() {
                    match (k, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    write!(f, "{}", Wrapped(t, matches!(t, Ast::Sum(_))))?;
                }
                Ok(())
            }
            Ast::Product(fs) => {
                for (k, x) in fs.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", Wrapped(x, is_compound(x)))?;
                }
                Ok(())
            }
            Ast::Quot(a, b) => write!(f, "{}/{}", Wrapped(a, is_compound(a)), Wrapped(b, is_compound(b))),
            Ast::Power(a, n) => write!(f, "{}^{}", Wrapped(a, is_compound(a) || matches!(**a, Ast::Power(..))), n),
            Ast::Gen(g) => write!(f, "{}", g),
            Ast::Scalar(ScalarLit::Int(v)) => write!(f, "{}", v),
            Ast::Scalar(ScalarLit::I) => write!(f, "I"),
            Ast::Scalar(ScalarLit::K) => write!(f, "k"),
            Ast::Apply(func, args) => {
                write!(f, "{}(", func.name())?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", a)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(x: Gen) -> Ast {
        Ast::Gen(x)
    }

    #[test]
    fn sample_expressions() {
        assert_eq!(parse("x1*x0").unwrap(), Ast::Product(vec![g(Gen::X(1)), g(Gen::X(0))]));
        assert_eq!(parse("d(L[0,1])").unwrap(), Ast::Apply(Func::D, vec![g(Gen::L(0, 1))]));
        let e = parse("(I/k)*x1 + x0^2").unwrap();
        let scalar = Ast::Quot(Box::new(Ast::Scalar(ScalarLit::I)), Box::new(Ast::Scalar(ScalarLit::K)));
        assert_eq!(
            e,
            Ast::Sum(vec![
                (false, Ast::Product(vec![scalar, g(Gen::X(1))])),
                (false, Ast::Power(Box::new(g(Gen::X(0))), 2)),
            ])
        );
        assert_eq!(e.to_string(), "(I/k)*x1 + x0^2");
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse("a").unwrap_err();
        assert_eq!(e.pos, 0);
        let p = parse("x0 - x1 - x2").unwrap();
        assert_eq!(p, Ast::Sum(vec![(false, g(Gen::X(0))), (true, g(Gen::X(1))), (true, g(Gen::X(2)))]));
        let q = parse("x0*x1^2").unwrap();
        assert_eq!(q, Ast::Product(vec![g(Gen::X(0)), Ast::Power(Box::new(g(Gen::X(1))), 2)]));
        assert_eq!(parse("k^-1").unwrap(), Ast::Power(Box::new(Ast::Scalar(ScalarLit::K)), -1));
    }

    #[test]
    fn antisymmetric_w() {
        assert_eq!(parse("w[2,0]").unwrap(), Ast::Sum(vec![(true, g(Gen::W(0, 2)))]));
        assert!(parse("w[1,1]").is_err());
        assert_eq!(parse("w").unwrap(), g(Gen::WPhi));
        assert_eq!(parse("w2").unwrap(), g(Gen::WX(2)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("x0 + L[0,3]").unwrap_err();
        assert_eq!(e.pos, 9);
        assert!(e.msg.contains("out of range"));
        assert_eq!(parse("x0 +").unwrap_err().pos, 4);
        assert_eq!(parse("x0 )").unwrap_err().pos, 3);
        assert!(parse("N0").is_err());
        assert!(parse("x3").is_err());
        assert!(parse("pair(x0)").is_err());
        assert!(parse("x0 $ x1").unwrap_err().msg.contains("unexpected character"));
    }

    fn leaf() -> impl Strategy<Value = Ast> {
        let gens = prop_oneof![
            (0u8..3).prop_map(Gen::X),
            (0u8..3, 0u8..3).prop_map(|(m, n)| Gen::L(m, n)),
            (0u8..3).prop_map(Gen::P),
            Just(Gen::E),
            Just(Gen::EInv),
            Just(Gen::M),
            (1u8..3).prop_map(Gen::N),
            prop_oneof![Just(Gen::W(0, 1)), Just(Gen::W(0, 2)), Just(Gen::W(1, 2))],
            (0u8..3).prop_map(Gen::WX),
            Just(Gen::WPhi),
            Just(Gen::Om),
        ];
        prop_oneof![
            gens.prop_map(Ast::Gen),
            (0u64..1000).prop_map(|v| Ast::Scalar(ScalarLit::Int(v))),
            Just(Ast::Scalar(ScalarLit::I)),
            Just(Ast::Scalar(ScalarLit::K)),
        ]
    }

    fn ast() -> impl Strategy<Value = Ast> {
        leaf().prop_recursive(4, 32, 4, |inner| {
            prop_oneof![
                (any::<bool>(), prop::collection::vec((any::<bool>(), inner.clone()), 1..4)).prop_map(|(lead, mut v)| {
                    if v.len() == 1 {
                        v[0].0 = true;
                    }
                    v[0].0 |= lead && v.len() > 1;
                    Ast::Sum(v)
                }),
                prop::collection::vec(inner.clone(), 2..4).prop_map(Ast::Product),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Quot(Box::new(a), Box::new(b))),
                (inner.clone(), -2i32..5).prop_map(|(a, n)| Ast::Power(Box::new(a), n)),
                (prop::sample::select(Func::ALL.to_vec()), inner.clone(), inner).prop_map(|(f, a, b)| {
                    let args = if f.arity() == 2 { vec![a, b] } else { vec![a] };
                    Ast::Apply(f, args)
                }),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn print_parse_round_trip(a in ast()) {
            let text = a.to_string();
            let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{}: {}", text, e)))?;
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
