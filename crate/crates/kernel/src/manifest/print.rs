//! Canonical text form of a manifest. Compound expressions are printed
//! fully parenthesized, so reparsing gives back the same tree.

use std::fmt::{self, Display, Formatter};

use super::*;

impl Display for Expr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) if c.is_negative() => write!(f, "(-{})", -c),
            Expr::Num(c) => write!(f, "{}", c),
            Expr::Var(v) => f.write_str(v),
            Expr::Gen { family, args, mode } => {
                f.write_str(family)?;
                if !args.is_empty() {
                    f.write_str("[")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{}", a)?;
                    }
                    f.write_str("]")?;
                }
                if let Some(m) = mode {
                    write!(f, "_({})", m)?;
                }
                Ok(())
            }
            Expr::Call { func, args } => {
                write!(f, "{}(", func)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}", a)?;
                }
                f.write_str(")")
            }
            Expr::Neg(e) => write!(f, "(-{})", e),
            Expr::Add(a, b) => write!(f, "({} + {})", a, b),
            Expr::Sub(a, b) => write!(f, "({} - {})", a, b),
            Expr::Mul(a, b) => write!(f, "({} * {})", a, b),
            Expr::Div(a, b) => write!(f, "({} / {})", a, b),
            Expr::Pow(a, k) => write!(f, "({}^{})", a, k),
        }
    }
}

impl Display for Pattern {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(&self.family)?;
        if !self.args.is_empty() {
            f.write_str("[")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                match a {
                    PatArg::Var(v) => f.write_str(v)?,
                    PatArg::Int(k) => write!(f, "{}", k)?,
                }
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl Display for CmpOp {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
            CmpOp::Eq => "==",
            CmpOp::Ne => "!=",
        })
    }
}

struct Tail<'a>(&'a Expr, &'a Guard);

impl Display for Tail<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, " = {}", self.0)?;
        for (i, c) in self.1.iter().enumerate() {
            write!(f, " {} {} {} {}", if i == 0 { "if" } else { "and" }, c.lhs, c.op, c.rhs)?;
        }
        Ok(())
    }
}

impl Display for RuleOp {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            RuleOp::Product => f.write_str("product"),
            RuleOp::Bracket => f.write_str("bracket"),
            RuleOp::Mu(k) => write!(f, "mu{}", k),
        }
    }
}

fn bound(b: Option<i64>) -> String {
    b.map(|v| v.to_string()).unwrap_or_default()
}

impl Display for Manifest {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "[algebra]")?;
        if let Some(n) = &self.name {
            writeln!(f, "name = \"{}\"", n)?;
        }
        writeln!(f, "kind = {}", match self.kind {
            Kind::Poisson => "poisson",
            Kind::Noncommutative => "noncommutative",
        })?;
        writeln!(f, "\n[generators]")?;
        for fam in &self.families {
            f.write_str(&fam.name)?;
            if !fam.params.is_empty() {
                let ps: Vec<String> =
                    fam.params.iter().map(|p| format!("{}: {}..{}", p.name, bound(p.lo), bound(p.hi))).collect();
                write!(f, "[{}]", ps.join(", "))?;
            }
            writeln!(f)?;
        }
        if !self.rules.is_empty() {
            writeln!(f, "\n[rules]")?;
            for r in &self.rules {
                writeln!(f, "{} {} {}{}", r.op, r.left, r.right, Tail(&r.body, &r.guard))?;
            }
        }
        if let Some(ModuleDecl::Adjoint) = self.module {
            writeln!(f, "\n[module]\nadjoint")?;
        }
        if !self.deformation.is_empty() {
            writeln!(f, "\n[deformation]")?;
            for r in &self.deformation {
                writeln!(f, "{} {} {}{}", r.op, r.left, r.right, Tail(&r.body, &r.guard))?;
            }
        }
        if !self.nijenhuis.is_empty() {
            writeln!(f, "\n[nijenhuis]")?;
            for m in &self.nijenhuis {
                writeln!(f, "map {}{}", m.pattern, Tail(&m.body, &m.guard))?;
            }
        }
        if !self.cochains.is_empty() {
            writeln!(f, "\n[cochains]")?;
            for c in &self.cochains {
                let args: Vec<String> = c.args.iter().map(|a| a.to_string()).collect();
                writeln!(f, "{} ({}, {}) {}{}", c.name, c.m, c.n, args.join(" "), Tail(&c.body, &c.guard))?;
            }
        }
        if !self.reference.is_empty() {
            writeln!(f, "\n[reference]")?;
            for r in &self.reference {
                writeln!(f, "coeff {}_({}) {}_({}){}", r.left.0, r.left.1, r.right.0, r.right.1, Tail(&r.body, &r.guard))?;
            }
        }
        if !self.options.is_empty() {
            writeln!(f, "\n[options]")?;
            for (k, v) in &self.options {
                match v {
                    OptValue::Int(x) => writeln!(f, "{} = {}", k, x)?,
                    OptValue::Range(a, b) => writeln!(f, "{} = {}..{}", k, a, b)?,
                }
            }
        }
        Ok(())
    }
}
