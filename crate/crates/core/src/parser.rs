//! Recursive-descent parser producing [`Program`].
//!
//! Precedence, loosest first: `|>`, comparisons, `+ -`, `* /`, unary minus,
//! application, field access. A token that starts a line at column 1 always
//! begins a new top-level item; inside a `case`, a token starting a line at
//! or left of the branch column ends the current branch.

use std::collections::HashSet;

use serde::Serialize;

use crate::ast::*;
use crate::builtins;
use crate::lexer::{tokenize, LexError, Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ParseErrorKind {
    Lex,
    Unexpected,
    MissingMain,
    DuplicateDefinition,
    ShadowsBuiltin,
    DuplicateConstructor,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub pos: Pos,
    /// Descriptions of tokens that would have been accepted here.
    pub expected: Vec<String>,
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError {
            kind: ParseErrorKind::Lex,
            message: e.message,
            pos: e.pos,
            expected: Vec::new(),
        }
    }
}

/// Tokenizes, parses and desugars pipelines.
pub fn parse_source(source: &str) -> Result<Program, ParseError> {
    let tokens = tokenize(source)?;
    let program = parse_program(&tokens)?;
    Ok(crate::desugar::desugar_program(program))
}

/// Parses a token stream into a program. Pipelines are kept as
/// [`ExprKind::Pipe`] nodes; see [`crate::desugar`].
pub fn parse_program(tokens: &[Token]) -> Result<Program, ParseError> {
    Parser::new(tokens).program()
}

/// Parses a standalone expression (used by tests and the REPL-style API).
pub fn parse_expr(source: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(source)?;
    let mut p = Parser::new(&tokens);
    p.barriers = vec![0];
    p.top_level = false;
    let e = p.expr()?;
    if !p.at_eof() {
        return Err(p.unexpected(vec!["end of input".into()]));
    }
    Ok(e)
}

struct Parser<'t> {
    tokens: &'t [Token],
    idx: usize,
    /// Tokens starting a line at a column <= the innermost barrier end the
    /// current construct.
    barriers: Vec<u32>,
    /// Column-1 line starts always end the current item.
    top_level: bool,
}

type PResult<T> = Result<T, ParseError>;

impl<'t> Parser<'t> {
    fn new(tokens: &'t [Token]) -> Self {
        Parser { tokens, idx: 0, barriers: vec![1], top_level: true }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.idx.min(self.tokens.len() - 1)]
    }

    fn peek_at(&self, offset: usize) -> &Token {
        &self.tokens[(self.idx + offset).min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if t.kind != TokenKind::Eof {
            self.idx += 1;
        }
        t
    }

    fn at_eof(&self) -> bool {
        self.peek().kind == TokenKind::Eof
    }

    /// Whether the next token ends the current layout block.
    fn at_boundary(&self) -> bool {
        let t = self.peek();
        if t.kind == TokenKind::Eof {
            return true;
        }
        let barrier = *self.barriers.last().expect("barrier stack is never empty");
        t.first_on_line && (t.pos.column <= barrier || (self.top_level && t.pos.column == 1))
    }

    fn unexpected(&self, expected: Vec<String>) -> ParseError {
        let t = self.peek();
        let found = t.describe();
        let message = match expected.len() {
            0 => format!("I did not expect {found} here"),
            1 => format!("I expected {} but found {found}", expected[0]),
            _ => {
                let (last, rest) = expected.split_last().expect("nonempty");
                format!("I expected {} or {} but found {found}", rest.join(", "), last)
            }
        };
        ParseError {
            kind: ParseErrorKind::Unexpected,
            message,
            pos: t.pos,
            expected,
        }
    }

    fn expect_symbol(&mut self, s: &str) -> PResult<Token> {
        if self.peek().is_symbol(s) && !self.at_boundary() {
            Ok(self.bump())
        } else {
            Err(self.unexpected(vec![format!("`{s}`")]))
        }
    }

    fn expect_keyword(&mut self, k: &str) -> PResult<Token> {
        if self.peek().is_keyword(k) {
            Ok(self.bump())
        } else {
            Err(self.unexpected(vec![format!("`{k}`")]))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        let t = self.peek();
        if t.kind == TokenKind::Ident && !self.at_boundary() {
            let t = self.bump();
            Ok(Ident { name: t.lexeme, pos: t.pos })
        } else {
            Err(self.unexpected(vec![what.to_string()]))
        }
    }

    fn upper_ident(&mut self, what: &str) -> PResult<Ident> {
        let t = self.peek();
        if t.kind == TokenKind::UpperIdent && !self.at_boundary() {
            let t = self.bump();
            Ok(Ident { name: t.lexeme, pos: t.pos })
        } else {
            Err(self.unexpected(vec![what.to_string()]))
        }
    }

    fn with_barrier<T>(&mut self, column: u32, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.barriers.push(column);
        let r = f(self);
        self.barriers.pop();
        r
    }

    // ---- top level ----

    fn program(mut self) -> PResult<Program> {
        let mut type_decls = Vec::new();
        let mut definitions: Vec<Definition> = Vec::new();
        let mut main: Option<(AppForm, Pos)> = None;
        let mut ctor_names: HashSet<String> = HashSet::new();

        while !self.at_eof() {
            let t = self.peek().clone();
            if t.pos.column != 1 || !t.first_on_line {
                return Err(ParseError {
                    message: "top-level definitions must start at the beginning of a line".into(),
                    ..self.unexpected(vec!["a definition".into()])
                });
            }
            if t.is_keyword("type") {
                let decl = self.type_decl()?;
                for c in &decl.constructors {
                    if !ctor_names.insert(c.name.name.clone()) {
                        return Err(ParseError {
                            kind: ParseErrorKind::DuplicateConstructor,
                            message: format!("the constructor {} is defined more than once", c.name.name),
                            pos: c.name.pos,
                            expected: vec![],
                        });
                    }
                }
                type_decls.push(decl);
            } else if t.kind == TokenKind::Ident && t.lexeme == "main" {
                if main.is_some() {
                    return Err(ParseError {
                        kind: ParseErrorKind::DuplicateDefinition,
                        message: "main is defined more than once".into(),
                        pos: t.pos,
                        expected: vec![],
                    });
                }
                self.bump();
                self.expect_symbol("=")?;
                main = Some((self.app_form()?, t.pos));
            } else if t.kind == TokenKind::Ident {
                let def = self.definition()?;
                if builtins::is_builtin_name(&def.name.name) {
                    return Err(ParseError {
                        kind: ParseErrorKind::ShadowsBuiltin,
                        message: format!(
                            "{} is already the name of a built-in; pick a different name",
                            def.name.name
                        ),
                        pos: def.name.pos,
                        expected: vec![],
                    });
                }
                if definitions.iter().any(|d| d.name.name == def.name.name) {
                    return Err(ParseError {
                        kind: ParseErrorKind::DuplicateDefinition,
                        message: format!("{} is defined more than once", def.name.name),
                        pos: def.name.pos,
                        expected: vec![],
                    });
                }
                definitions.push(def);
            } else {
                return Err(self.unexpected(vec!["a definition".into(), "`type`".into()]));
            }
            if !self.at_boundary() {
                return Err(self.unexpected(vec!["a new line".into()]));
            }
        }

        let (main, main_pos) = main.ok_or_else(|| ParseError {
            kind: ParseErrorKind::MissingMain,
            message: "this program has no main; add a line like `main = graphicsApp { view = ... }`".into(),
            pos: Pos::new(1, 1),
            expected: vec!["main".into()],
        })?;
        Ok(Program { type_decls, definitions, main, main_pos })
    }

    fn type_decl(&mut self) -> PResult<TypeDecl> {
        self.expect_keyword("type")?;
        if self.peek().kind == TokenKind::Ident && self.peek().lexeme == "alias" {
            return Err(ParseError {
                message: "type aliases are not supported; record types come from their values".into(),
                ..self.unexpected(vec![])
            });
        }
        let name = self.upper_ident("a type name")?;
        self.expect_symbol("=")?;
        let mut constructors = vec![self.constructor()?];
        while self.peek().is_symbol("|") && !self.at_boundary() {
            self.bump();
            constructors.push(self.constructor()?);
        }
        Ok(TypeDecl { name, constructors })
    }

    fn constructor(&mut self) -> PResult<Constructor> {
        let name = self.upper_ident("a constructor name")?;
        let mut args = Vec::new();
        while !self.at_boundary() && (self.peek().kind == TokenKind::UpperIdent || self.peek().is_symbol("(")) {
            args.push(self.type_atom()?);
        }
        Ok(Constructor { name, args })
    }

    fn type_atom(&mut self) -> PResult<TypeExpr> {
        if self.peek().is_symbol("(") {
            self.bump();
            let first = self.type_expr()?;
            let result = if self.peek().is_symbol(",") {
                self.bump();
                let second = self.type_expr()?;
                TypeExpr::Tuple(Box::new(first), Box::new(second))
            } else {
                first
            };
            if !self.peek().is_symbol(")") {
                return Err(self.unexpected(vec!["`,`".into(), "`)`".into()]));
            }
            self.bump();
            Ok(result)
        } else {
            let name = self.upper_ident("a type")?;
            Ok(TypeExpr::Named(name, Vec::new()))
        }
    }

    fn type_expr(&mut self) -> PResult<TypeExpr> {
        if self.peek().kind == TokenKind::UpperIdent {
            let name = self.upper_ident("a type")?;
            let mut args = Vec::new();
            while !self.at_boundary() && (self.peek().kind == TokenKind::UpperIdent || self.peek().is_symbol("(")) {
                args.push(self.type_atom()?);
            }
            Ok(TypeExpr::Named(name, args))
        } else {
            self.type_atom()
        }
    }

    fn definition(&mut self) -> PResult<Definition> {
        let t = self.bump();
        let name = Ident { name: t.lexeme, pos: t.pos };
        let mut params = Vec::new();
        while self.peek().kind == TokenKind::Ident && !self.at_boundary() {
            let p = self.ident("a parameter name")?;
            if params.iter().any(|q: &Ident| q.name == p.name) {
                return Err(ParseError {
                    kind: ParseErrorKind::Unexpected,
                    message: format!("the parameter {} appears twice", p.name),
                    pos: p.pos,
                    expected: vec![],
                });
            }
            params.push(p);
        }
        if !self.peek().is_symbol("=") || self.at_boundary() {
            return Err(self.unexpected(vec!["a parameter name".into(), "`=`".into()]));
        }
        self.bump();
        let body = self.expr()?;
        Ok(Definition { name, params, body })
    }

    fn app_form(&mut self) -> PResult<AppForm> {
        let head = self.ident("graphicsApp, notificationsApp or gameApp")?;
        let tick = if head.name == "gameApp" {
            Some(self.upper_ident("the name of your Tick constructor")?)
        } else {
            None
        };
        let fields = self.app_fields()?;
        let get_expr = |fields: &mut Vec<(Ident, Expr)>, name: &str, at: Pos| {
            let idx = fields.iter().position(|(k, _)| k.name == name);
            match idx {
                Some(i) => Ok(fields.remove(i).1),
                None => Err(ParseError {
                    kind: ParseErrorKind::Unexpected,
                    message: format!("{} needs a `{name} = ...` field", head.name),
                    pos: at,
                    expected: vec![format!("`{name}`")],
                }),
            }
        };
        let get_name = |fields: &mut Vec<(Ident, Expr)>, name: &str, at: Pos| -> PResult<Ident> {
            let e = get_expr(fields, name, at)?;
            match e.kind {
                ExprKind::Var(v) => Ok(Ident { name: v, pos: e.pos }),
                _ => Err(ParseError {
                    kind: ParseErrorKind::Unexpected,
                    message: format!("`{name}` should be the name of one of your definitions"),
                    pos: e.pos,
                    expected: vec!["a name".into()],
                }),
            }
        };
        let mut fields = fields;
        let at = head.pos;
        let form = match head.name.as_str() {
            "graphicsApp" => AppForm::GraphicsApp { view: get_expr(&mut fields, "view", at)? },
            "notificationsApp" => AppForm::NotificationsApp {
                model: get_expr(&mut fields, "model", at)?,
                view: get_name(&mut fields, "view", at)?,
                update: get_name(&mut fields, "update", at)?,
            },
            "gameApp" => AppForm::GameApp {
                tick: tick.expect("parsed above"),
                model: get_expr(&mut fields, "model", at)?,
                view: get_name(&mut fields, "view", at)?,
                update: get_name(&mut fields, "update", at)?,
            },
            _ => {
                return Err(ParseError {
                    kind: ParseErrorKind::Unexpected,
                    message: format!("main must be graphicsApp, notificationsApp or gameApp, not {}", head.name),
                    pos: head.pos,
                    expected: vec!["graphicsApp".into(), "notificationsApp".into(), "gameApp".into()],
                })
            }
        };
        // `title` is accepted for compatibility and ignored.
        if let Some((k, _)) = fields.into_iter().find(|(k, _)| k.name != "title") {
            return Err(ParseError {
                kind: ParseErrorKind::Unexpected,
                message: format!("{} has no field called `{}`", head.name, k.name),
                pos: k.pos,
                expected: vec![],
            });
        }
        Ok(form)
    }

    fn app_fields(&mut self) -> PResult<Vec<(Ident, Expr)>> {
        self.expect_symbol("{")?;
        self.with_barrier(1, |p| {
            let mut fields: Vec<(Ident, Expr)> = Vec::new();
            if p.peek().is_symbol("}") {
                p.bump();
                return Ok(fields);
            }
            loop {
                let k = p.ident("a field name")?;
                if fields.iter().any(|(f, _)| f.name == k.name) {
                    return Err(ParseError {
                        kind: ParseErrorKind::Unexpected,
                        message: format!("the field {} appears twice", k.name),
                        pos: k.pos,
                        expected: vec![],
                    });
                }
                p.expect_symbol("=")?;
                let v = p.expr()?;
                fields.push((k, v));
                if p.peek().is_symbol(",") && !p.at_boundary() {
                    p.bump();
                } else if p.peek().is_symbol("}") && !p.at_boundary() {
                    p.bump();
                    return Ok(fields);
                } else {
                    return Err(p.unexpected(vec!["`,`".into(), "`}`".into()]));
                }
            }
        })
    }

    // ---- expressions ----

    fn expr(&mut self) -> PResult<Expr> {
        if self.at_boundary() {
            return Err(self.unexpected(vec!["an expression".into()]));
        }
        let t = self.peek();
        if t.is_keyword("if") {
            return self.if_expr();
        }
        if t.is_keyword("case") {
            return self.case_expr();
        }
        self.pipeline()
    }

    fn if_expr(&mut self) -> PResult<Expr> {
        let pos = self.expect_keyword("if")?.pos;
        let cond = self.expr()?;
        if self.at_boundary() {
            return Err(self.unexpected(vec!["`then`".into()]));
        }
        self.expect_keyword("then")?;
        let then = self.expr()?;
        if self.at_boundary() {
            return Err(self.unexpected(vec!["`else`".into()]));
        }
        self.expect_keyword("else")?;
        let els = self.expr()?;
        Ok(Expr::new(ExprKind::If(Box::new(cond), Box::new(then), Box::new(els)), pos))
    }

    fn case_expr(&mut self) -> PResult<Expr> {
        let pos = self.expect_keyword("case")?.pos;
        let scrutinee = self.expr()?;
        if self.at_boundary() {
            return Err(self.unexpected(vec!["`of`".into()]));
        }
        self.expect_keyword("of")?;
        let first = self.peek().clone();
        let outer = *self.barriers.last().expect("barrier");
        if first.kind == TokenKind::Eof || (first.first_on_line && first.pos.column <= outer.max(1)) {
            return Err(ParseError {
                message: "the branches of this case need to be indented".into(),
                ..self.unexpected(vec!["a constructor pattern".into()])
            });
        }
        let column = first.pos.column;
        let mut branches = Vec::new();
        loop {
            let branch = self.with_barrier(column, |p| p.branch())?;
            branches.push(branch);
            let t = self.peek();
            if t.kind != TokenKind::Eof && t.first_on_line && t.pos.column == column && t.pos.column > outer {
                continue;
            }
            break;
        }
        Ok(Expr::new(ExprKind::Case(Box::new(scrutinee), branches), pos))
    }

    fn branch(&mut self) -> PResult<Branch> {
        // The branch start itself sits on the barrier column.
        let t = self.peek().clone();
        if t.kind != TokenKind::UpperIdent {
            return Err(self.unexpected(vec!["a constructor pattern".into()]));
        }
        self.bump();
        let ctor = Ident { name: t.lexeme, pos: t.pos };
        let mut binders = Vec::new();
        while !self.at_boundary() && !self.peek().is_symbol("->") {
            binders.push(self.binder()?);
        }
        self.expect_symbol("->")?;
        let body = self.expr()?;
        Ok(Branch { ctor, binders, body })
    }

    fn binder(&mut self) -> PResult<Binder> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Ident => {
                self.bump();
                Ok(Binder::Name(t.lexeme))
            }
            TokenKind::Underscore => {
                self.bump();
                Ok(Binder::Wildcard)
            }
            TokenKind::Symbol if t.lexeme == "(" => {
                self.bump();
                let a = self.binder()?;
                self.expect_symbol(",")?;
                let b = self.binder()?;
                self.expect_symbol(")")?;
                Ok(Binder::Pair(Box::new(a), Box::new(b)))
            }
            _ => Err(self.unexpected(vec!["a variable name".into(), "`_`".into(), "`->`".into()])),
        }
    }

    fn pipeline(&mut self) -> PResult<Expr> {
        let mut lhs = self.comparison()?;
        while self.peek().is_symbol("|>") && !self.at_boundary() {
            let pos = self.bump().pos;
            let rhs = self.comparison()?;
            lhs = Expr::new(ExprKind::Pipe(Box::new(lhs), Box::new(rhs)), pos);
        }
        Ok(lhs)
    }

    fn binop_here(&self, ops: &[(&str, BinOp)]) -> Option<BinOp> {
        if self.at_boundary() {
            return None;
        }
        let t = self.peek();
        if t.kind != TokenKind::Symbol {
            return None;
        }
        ops.iter().find(|(s, _)| t.lexeme == *s).map(|(_, op)| *op)
    }

    fn comparison(&mut self) -> PResult<Expr> {
        const OPS: [(&str, BinOp); 5] = [
            ("==", BinOp::Eq),
            ("<", BinOp::Lt),
            ("<=", BinOp::Le),
            (">", BinOp::Gt),
            (">=", BinOp::Ge),
        ];
        let lhs = self.additive()?;
        if let Some(op) = self.binop_here(&OPS) {
            let pos = self.bump().pos;
            let rhs = self.additive()?;
            if self.binop_here(&OPS).is_some() {
                return Err(ParseError {
                    message: "comparisons cannot be chained; use parentheses".into(),
                    ..self.unexpected(vec![])
                });
            }
            return Ok(Expr::new(ExprKind::BinOp(op, Box::new(lhs), Box::new(rhs)), pos));
        }
        Ok(lhs)
    }

    fn additive(&mut self) -> PResult<Expr> {
        let mut lhs = self.multiplicative()?;
        while let Some(op) = self.binop_here(&[("+", BinOp::Add), ("-", BinOp::Sub)]) {
            let pos = self.bump().pos;
            let rhs = self.multiplicative()?;
            lhs = Expr::new(ExprKind::BinOp(op, Box::new(lhs), Box::new(rhs)), pos);
        }
        Ok(lhs)
    }

    fn multiplicative(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.binop_here(&[("*", BinOp::Mul), ("/", BinOp::Div)]) {
            let pos = self.bump().pos;
            let rhs = self.unary()?;
            lhs = Expr::new(ExprKind::BinOp(op, Box::new(lhs), Box::new(rhs)), pos);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.peek().is_symbol("-") && !self.at_boundary() {
            let pos = self.bump().pos;
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Negate(Box::new(inner)), pos));
        }
        self.call()
    }

    /// A `-` directly attached to the following token but separated from the
    /// previous one, as in `rotate -0.5`.
    fn at_prefix_minus(&self) -> bool {
        let t = self.peek();
        t.is_symbol("-") && t.space_before && !self.peek_at(1).space_before && self.peek_at(1).kind != TokenKind::Eof
    }

    fn starts_atom(&self) -> bool {
        if self.at_boundary() {
            return false;
        }
        let t = self.peek();
        match &t.kind {
            TokenKind::Ident | TokenKind::UpperIdent | TokenKind::Number(_) | TokenKind::Str(_) => true,
            TokenKind::Symbol => matches!(t.lexeme.as_str(), "(" | "[" | "{") || self.at_prefix_minus(),
            _ => false,
        }
    }

    fn call(&mut self) -> PResult<Expr> {
        let head = self.postfix()?;
        let mut args = Vec::new();
        while self.starts_atom() {
            if self.at_prefix_minus() {
                let pos = self.bump().pos;
                let inner = self.postfix()?;
                args.push(Expr::new(ExprKind::Negate(Box::new(inner)), pos));
            } else {
                args.push(self.postfix()?);
            }
        }
        if args.is_empty() {
            Ok(head)
        } else {
            let pos = head.pos;
            Ok(Expr::new(ExprKind::App(Box::new(head), args), pos))
        }
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut e = self.atom()?;
        while self.peek().is_symbol(".") && !self.peek().space_before && !self.at_boundary() {
            self.bump();
            let field = self.ident("a field name")?;
            e = Expr::new(ExprKind::Field(Box::new(e), field.name), field.pos);
        }
        Ok(e)
    }

    fn atom(&mut self) -> PResult<Expr> {
        if self.at_boundary() {
            return Err(self.unexpected(vec!["an expression".into()]));
        }
        let t = self.peek().clone();
        let pos = t.pos;
        match &t.kind {
            TokenKind::Number(n) => {
                self.bump();
                Ok(Expr::new(ExprKind::Number(*n), pos))
            }
            TokenKind::Str(s) => {
                self.bump();
                Ok(Expr::new(ExprKind::Str(s.clone()), pos))
            }
            TokenKind::Ident => {
                self.bump();
                Ok(Expr::new(ExprKind::Var(t.lexeme), pos))
            }
            TokenKind::UpperIdent => {
                self.bump();
                let kind = match t.lexeme.as_str() {
                    "True" => ExprKind::Bool(true),
                    "False" => ExprKind::Bool(false),
                    _ => ExprKind::Ctor(t.lexeme),
                };
                Ok(Expr::new(kind, pos))
            }
            TokenKind::Symbol if t.lexeme == "(" => {
                self.bump();
                self.with_barrier(1, |p| {
                    let first = p.expr()?;
                    if p.peek().is_symbol(",") && !p.at_boundary() {
                        p.bump();
                        let second = p.expr()?;
                        if p.peek().is_symbol(",") {
                            return Err(ParseError {
                                message: "only pairs are supported; use a record for more values".into(),
                                ..p.unexpected(vec!["`)`".into()])
                            });
                        }
                        p.expect_symbol(")")?;
                        Ok(Expr::new(ExprKind::Tuple(vec![first, second]), pos))
                    } else if p.peek().is_symbol(")") && !p.at_boundary() {
                        p.bump();
                        Ok(first)
                    } else {
                        Err(p.unexpected(vec!["`,`".into(), "`)`".into()]))
                    }
                })
            }
            TokenKind::Symbol if t.lexeme == "[" => {
                self.bump();
                self.with_barrier(1, |p| {
                    let mut items = Vec::new();
                    if p.peek().is_symbol("]") && !p.at_boundary() {
                        p.bump();
                        return Ok(Expr::new(ExprKind::List(items), pos));
                    }
                    loop {
                        items.push(p.expr()?);
                        if p.peek().is_symbol(",") && !p.at_boundary() {
                            p.bump();
                        } else if p.peek().is_symbol("]") && !p.at_boundary() {
                            p.bump();
                            return Ok(Expr::new(ExprKind::List(items), pos));
                        } else {
                            return Err(p.unexpected(vec!["`,`".into(), "`]`".into()]));
                        }
                    }
                })
            }
            TokenKind::Symbol if t.lexeme == "{" => {
                self.bump();
                self.with_barrier(1, |p| p.record_body(pos))
            }
            _ => Err(self.unexpected(vec!["an expression".into()])),
        }
    }

    fn record_body(&mut self, pos: Pos) -> PResult<Expr> {
        if self.peek().is_symbol("}") && !self.at_boundary() {
            self.bump();
            return Ok(Expr::new(ExprKind::Record(Vec::new()), pos));
        }
        let base = if self.peek().kind == TokenKind::Ident && self.peek_at(1).is_symbol("|") {
            let b = self.ident("a name")?;
            self.bump();
            Some(b)
        } else {
            None
        };
        let mut fields: Vec<(String, Expr)> = Vec::new();
        loop {
            let k = self.ident("a field name")?;
            if fields.iter().any(|(f, _)| *f == k.name) {
                return Err(ParseError {
                    kind: ParseErrorKind::Unexpected,
                    message: format!("the field {} appears twice", k.name),
                    pos: k.pos,
                    expected: vec![],
                });
            }
            self.expect_symbol("=")?;
            let v = self.expr()?;
            fields.push((k.name, v));
            if self.peek().is_symbol(",") && !self.at_boundary() {
                self.bump();
            } else if self.peek().is_symbol("}") && !self.at_boundary() {
                self.bump();
                break;
            } else {
                return Err(self.unexpected(vec!["`,`".into(), "`}`".into()]));
            }
        }
        let kind = match base {
            Some(b) => ExprKind::RecordUpdate(b, fields),
            None => ExprKind::Record(fields),
        };
        Ok(Expr::new(kind, pos))
    }
}
