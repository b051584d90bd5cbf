use std::fmt;

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

/// A node with the position it was parsed at. Equality ignores the position.
#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub node: T,
    pub pos: Pos,
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl<T: Eq> Eq for Spanned<T> {}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    /// `a * b`
    Product(Box<Expr>, Box<Expr>),
    /// `a ^ b`
    Meet(Box<Expr>, Box<Expr>),
    /// `a | b`
    Join(Box<Expr>, Box<Expr>),
    Discrete(String),
    Trivial(String),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn product(self, rhs: Expr) -> Expr {
        Expr::Product(Box::new(self), Box::new(rhs))
    }

    pub fn meet(self, rhs: Expr) -> Expr {
        Expr::Meet(Box::new(self), Box::new(rhs))
    }

    pub fn join(self, rhs: Expr) -> Expr {
        Expr::Join(Box::new(self), Box::new(rhs))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Join(..) => 1,
            Expr::Meet(..) => 2,
            Expr::Product(..) => 3,
            Expr::Var(_) | Expr::Discrete(_) | Expr::Trivial(_) => 4,
        }
    }

    fn is_binary(&self) -> bool {
        self.precedence() < 4
    }

    /// Names of all variables, in first-occurrence order.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Var(name) => {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
            Expr::Product(a, b) | Expr::Meet(a, b) | Expr::Join(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Discrete(_) | Expr::Trivial(_) => {}
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, a, b) = match self {
            Expr::Var(name) => return f.write_str(name),
            Expr::Discrete(space) => return write!(f, "discrete({space})"),
            Expr::Trivial(space) => return write!(f, "trivial({space})"),
            Expr::Product(a, b) => ("*", a, b),
            Expr::Meet(a, b) => ("^", a, b),
            Expr::Join(a, b) => ("|", a, b),
        };
        // binary children of a different operator are always parenthesized;
        // a right child with the same operator is too (left-associativity)
        let wrap_left = a.is_binary() && a.precedence() != self.precedence();
        let wrap_right = b.is_binary();
        if wrap_left {
            write!(f, "({a})")?;
        } else {
            write!(f, "{a}")?;
        }
        f.write_str(op)?;
        if wrap_right {
            write!(f, "({b})")
        } else {
            write!(f, "{b}")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `==`
    Equal,
    /// `<=`, sub-σ-algebra
    Sub,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "==",
            Relation::Sub => "<=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Check {
    pub lhs: Expr,
    pub relation: Relation,
    pub rhs: Expr,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.relation, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Space {
        name: String,
        size: usize,
    },
    Var {
        name: String,
        space: String,
    },
    /// A variable pinned to a partition literal, kept as written.
    Let {
        name: String,
        blocks: Vec<Vec<usize>>,
        space: String,
    },
    /// `constrain lesser <= greater`
    Constrain {
        lesser: String,
        greater: String,
    },
    Check(Check),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Space { name, size } => write!(f, "space {name} = {size}"),
            Statement::Var { name, space } => write!(f, "var {name} : {space}"),
            Statement::Let {
                name,
                blocks,
                space,
            } => {
                write!(f, "let {name} = ")?;
                write_literal(f, blocks)?;
                write!(f, " : {space}")
            }
            Statement::Constrain { lesser, greater } => {
                write!(f, "constrain {lesser} <= {greater}")
            }
            Statement::Check(check) => write!(f, "check {check}"),
        }
    }
}

pub(crate) fn write_literal(f: &mut impl fmt::Write, blocks: &[Vec<usize>]) -> fmt::Result {
    f.write_str("{")?;
    for (i, block) in blocks.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        f.write_str("{")?;
        for (j, p) in block.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")?;
    }
    f.write_str("}")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Spanned<Statement>>,
}

impl Script {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.statements.iter().filter_map(|s| match &s.node {
            Statement::Check(c) => Some(c),
            _ => None,
        })
    }
}

/// Pretty-prints one statement per line; the output parses back to the same
/// script.
impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{}", s.node)?;
        }
        Ok(())
    }
}
