//! Two-valued dynamic formulas over signed atoms: the target of the
//! sign-doubling translation. Strong negation does not exist here; each
//! source atom `p` is split into the independent classical atoms `p+`
//! (p is true) and `p-` (p is false).

use std::fmt;

use crate::eval::Sign;

/// A doubled atom: a source atom name tagged with the sign it tracks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassicalAtom {
    pub name: String,
    pub sign: Sign,
}

impl ClassicalAtom {
    pub fn plus(name: impl Into<String>) -> ClassicalAtom {
        ClassicalAtom {
            name: name.into(),
            sign: Sign::Plus,
        }
    }

    pub fn minus(name: impl Into<String>) -> ClassicalAtom {
        ClassicalAtom {
            name: name.into(),
            sign: Sign::Minus,
        }
    }
}

impl fmt::Display for ClassicalAtom {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(out, "{}{}", self.name, tag)
    }
}

/// A classical dynamic formula. No strong negation constructor exists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalFormula {
    Atom(ClassicalAtom),
    True,
    False,
    Not(Box<ClassicalFormula>),
    And(Box<ClassicalFormula>, Box<ClassicalFormula>),
    Or(Box<ClassicalFormula>, Box<ClassicalFormula>),
    Implies(Box<ClassicalFormula>, Box<ClassicalFormula>),
    Box(ClassicalProgram, Box<ClassicalFormula>),
    Diamond(ClassicalProgram, Box<ClassicalFormula>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalProgram {
    Atom(String),
    Seq(Box<ClassicalProgram>, Box<ClassicalProgram>),
    Choice(Box<ClassicalProgram>, Box<ClassicalProgram>),
    Star(Box<ClassicalProgram>),
    Test(Box<ClassicalFormula>),
}

impl ClassicalFormula {
    pub fn atom(a: ClassicalAtom) -> ClassicalFormula {
        ClassicalFormula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: ClassicalFormula) -> ClassicalFormula {
        ClassicalFormula::Not(Box::new(f))
    }

    pub fn and(l: ClassicalFormula, r: ClassicalFormula) -> ClassicalFormula {
        ClassicalFormula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: ClassicalFormula, r: ClassicalFormula) -> ClassicalFormula {
        ClassicalFormula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: ClassicalFormula, r: ClassicalFormula) -> ClassicalFormula {
        ClassicalFormula::Implies(Box::new(l), Box::new(r))
    }

    pub fn boxed(p: ClassicalProgram, f: ClassicalFormula) -> ClassicalFormula {
        ClassicalFormula::Box(p, Box::new(f))
    }

    pub fn diamond(p: ClassicalProgram, f: ClassicalFormula) -> ClassicalFormula {
        ClassicalFormula::Diamond(p, Box::new(f))
    }

    /// All atomic program names occurring anywhere in the formula, sorted.
    pub fn atomic_programs(&self) -> Vec<String> {
        let mut out = Vec::new();
        collect_formula_programs(self, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

impl ClassicalProgram {
    pub fn atom(name: impl Into<String>) -> ClassicalProgram {
        ClassicalProgram::Atom(name.into())
    }

    pub fn seq(l: ClassicalProgram, r: ClassicalProgram) -> ClassicalProgram {
        ClassicalProgram::Seq(Box::new(l), Box::new(r))
    }

    pub fn choice(l: ClassicalProgram, r: ClassicalProgram) -> ClassicalProgram {
        ClassicalProgram::Choice(Box::new(l), Box::new(r))
    }

    pub fn star(p: ClassicalProgram) -> ClassicalProgram {
        ClassicalProgram::Star(Box::new(p))
    }

    pub fn test(f: ClassicalFormula) -> ClassicalProgram {
        ClassicalProgram::Test(Box::new(f))
    }
}

fn collect_formula_programs(f: &ClassicalFormula, out: &mut Vec<String>) {
    match f {
        ClassicalFormula::Atom(_) | ClassicalFormula::True | ClassicalFormula::False => {}
        ClassicalFormula::Not(x) => collect_formula_programs(x, out),
        ClassicalFormula::And(l, r)
        | ClassicalFormula::Or(l, r)
        | ClassicalFormula::Implies(l, r) => {
            collect_formula_programs(l, out);
            collect_formula_programs(r, out);
        }
        ClassicalFormula::Box(p, x) | ClassicalFormula::Diamond(p, x) => {
            collect_program_programs(p, out);
            collect_formula_programs(x, out);
        }
    }
}

fn collect_program_programs(p: &ClassicalProgram, out: &mut Vec<String>) {
    match p {
        ClassicalProgram::Atom(name) => out.push(name.clone()),
        ClassicalProgram::Seq(l, r) | ClassicalProgram::Choice(l, r) => {
            collect_program_programs(l, out);
            collect_program_programs(r, out);
        }
        ClassicalProgram::Star(x) => collect_program_programs(x, out),
        ClassicalProgram::Test(f) => collect_formula_programs(f, out),
    }
}

fn fmt_cformula(f: &ClassicalFormula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let level = match f {
        ClassicalFormula::Implies(..) => 1,
        ClassicalFormula::Or(..) => 2,
        ClassicalFormula::And(..) => 3,
        ClassicalFormula::Not(..) | ClassicalFormula::Box(..) | ClassicalFormula::Diamond(..) => 4,
        ClassicalFormula::Atom(_) | ClassicalFormula::True | ClassicalFormula::False => 5,
    };
    if level < min {
        write!(out, "(")?;
    }
    match f {
        ClassicalFormula::Atom(a) => write!(out, "{a}")?,
        ClassicalFormula::True => write!(out, "T")?,
        ClassicalFormula::False => write!(out, "F")?,
        ClassicalFormula::Not(x) => {
            write!(out, "!")?;
            fmt_cformula(x, 4, out)?;
        }
        ClassicalFormula::And(l, r) => {
            fmt_cformula(l, 3, out)?;
            write!(out, " & ")?;
            fmt_cformula(r, 4, out)?;
        }
        ClassicalFormula::Or(l, r) => {
            fmt_cformula(l, 2, out)?;
            write!(out, " | ")?;
            fmt_cformula(r, 3, out)?;
        }
        ClassicalFormula::Implies(l, r) => {
            fmt_cformula(l, 2, out)?;
            write!(out, " -> ")?;
            fmt_cformula(r, 1, out)?;
        }
        ClassicalFormula::Box(p, x) => {
            write!(out, "[")?;
            fmt_cprogram(p, 1, out)?;
            write!(out, "]")?;
            fmt_cformula(x, 4, out)?;
        }
        ClassicalFormula::Diamond(p, x) => {
            write!(out, "<")?;
            fmt_cprogram(p, 1, out)?;
            write!(out, ">")?;
            fmt_cformula(x, 4, out)?;
        }
    }
    if level < min {
        write!(out, ")")?;
    }
    Ok(())
}

fn fmt_cprogram(p: &ClassicalProgram, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let level = match p {
        ClassicalProgram::Choice(..) => 1,
        ClassicalProgram::Seq(..) => 2,
        ClassicalProgram::Star(..) => 3,
        ClassicalProgram::Atom(_) | ClassicalProgram::Test(..) => 4,
    };
    if level < min {
        write!(out, "(")?;
    }
    match p {
        ClassicalProgram::Atom(name) => write!(out, "{name}")?,
        ClassicalProgram::Choice(l, r) => {
            fmt_cprogram(l, 1, out)?;
            write!(out, "+")?;
            fmt_cprogram(r, 2, out)?;
        }
        ClassicalProgram::Seq(l, r) => {
            fmt_cprogram(l, 2, out)?;
            write!(out, ";")?;
            fmt_cprogram(r, 3, out)?;
        }
        ClassicalProgram::Star(x) => {
            fmt_cprogram(x, 3, out)?;
            write!(out, "*")?;
        }
        ClassicalProgram::Test(f) => {
            write!(out, "(")?;
            fmt_cformula(f, 1, out)?;
            write!(out, ")?")?;
        }
    }
    if level < min {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for ClassicalFormula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_cformula(self, 1, out)
    }
}

impl fmt::Display for ClassicalProgram {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_cprogram(self, 1, out)
    }
}
