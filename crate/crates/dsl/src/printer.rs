//! Canonical text form; `parse_expr(&print(e))` gives back `e`.

use std::fmt;

use crate::ast::{Bound, Expr};
use crate::corpus::{Stanza, StanzaKind};

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) | Expr::Div(..) | Expr::Rat(_) => PRODUCT,
        Expr::Neg(_) => UNARY,
        Expr::Int(n) if n.sign() == num_bigint::Sign::Minus => UNARY,
        Expr::Pow(..) => POWER,
        Expr::QPower(e) if **e != Expr::int(1) => POWER,
        _ => ATOM,
    }
}

pub fn print(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e, SUM);
    s
}

fn write_expr(out: &mut String, e: &Expr, min: u8) {
    if precedence(e) < min {
        out.push('(');
        write_bare(out, e);
        out.push(')');
    } else {
        write_bare(out, e);
    }
}

fn write_args(out: &mut String, name: &str, args: &[&Expr]) {
    out.push_str(name);
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_expr(out, a, SUM);
    }
    out.push(')');
}

fn write_bare(out: &mut String, e: &Expr) {
    match e {
        Expr::Int(n) => out.push_str(&n.to_string()),
        Expr::Rat(r) => out.push_str(&format!("{}/{}", r.numer(), r.denom())),
        Expr::X => out.push('x'),
        Expr::Order => out.push('N'),
        Expr::Var(v) => out.push_str(v),
        Expr::QPower(k) => {
            out.push('q');
            if **k != Expr::int(1) {
                out.push('^');
                write_expr(out, k, POWER);
            }
        }
        Expr::Neg(a) => {
            out.push('-');
            write_expr(out, a, UNARY);
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            let (op, left, right) = match e {
                Expr::Add(..) => (" + ", SUM, PRODUCT),
                Expr::Sub(..) => (" - ", SUM, PRODUCT),
                Expr::Mul(..) => (" * ", PRODUCT, UNARY),
                _ => (" / ", PRODUCT, UNARY),
            };
            write_expr(out, a, left);
            out.push_str(op);
            write_expr(out, b, right);
        }
        Expr::Pow(a, k) => {
            write_expr(out, a, ATOM);
            out.push('^');
            write_expr(out, k, POWER);
        }
        Expr::Poch { a, base, len } => {
            out.push_str("poch(");
            write_expr(out, a, SUM);
            out.push_str(", ");
            write_expr(out, base, SUM);
            out.push_str(", ");
            match len {
                Some(n) => write_expr(out, n, SUM),
                None => out.push_str("inf"),
            }
            out.push(')');
        }
        Expr::QBinom { n, k, base } => write_args(out, "qbinom", &[n, k, base]),
        Expr::Series { op, var, lo, hi, body } => {
            out.push_str(op.keyword());
            out.push('(');
            out.push_str(var);
            out.push_str(", ");
            write_expr(out, lo, SUM);
            out.push_str("..");
            match hi {
                Bound::Auto => out.push_str("auto"),
                Bound::Upto(h) => write_expr(out, h, SUM),
            }
            out.push_str(", ");
            write_expr(out, body, SUM);
            out.push(')');
        }
        Expr::ChebV { x, n } => write_args(out, "chebv", &[x, n]),
        Expr::Fib(n) => write_args(out, "fib", &[n]),
        Expr::Luc(n) => write_args(out, "luc", &[n]),
        Expr::Invert(a) => write_args(out, "inv", &[a]),
        Expr::SubstituteQ(a, k) => write_args(out, "subst", &[a, k]),
        Expr::NegateQ(a) => write_args(out, "negq", &[a]),
        Expr::Floor(a) => write_args(out, "floor", &[a]),
        Expr::Isqrt(a) => write_args(out, "isqrt", &[a]),
        Expr::Regroup(a, b, c) => write_args(out, "regroup", &[a, b, c]),
        Expr::Hecke(name) => out.push_str(&format!("hecke(\"{name}\")")),
        Expr::AppellLerch(al) => {
            let mut args: Vec<&Expr> = vec![&al.level, &al.base, &al.a, &al.b];
            if let Some((m, r)) = &al.residue {
                args.push(m);
                args.push(r);
            }
            write_args(out, "appell_lerch", &args);
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

pub fn print_stanza(s: &Stanza) -> String {
    let mut out = format!("identity {} {{\n    anchor {:?}\n", s.id, s.anchor);
    if let StanzaKind::Finite { var, degree } = &s.kind {
        out.push_str(&format!("    finite {var} degree {}\n", print(degree)));
    }
    out.push_str(&format!(
        "    lhs {{ {} }}\n    rhs {{ {} }}\n",
        print(&s.lhs),
        print(&s.rhs)
    ));
    if let StanzaKind::XParametric { degree_bound } = &s.kind {
        out.push_str(&format!("    xparam degree_bound {}\n", print(degree_bound)));
    }
    if let Some(n) = s.order {
        out.push_str(&format!("    order {n}\n"));
    }
    out.push_str("}\n");
    out
}

pub fn print_corpus(stanzas: &[Stanza]) -> String {
    stanzas.iter().map(print_stanza).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use crate::parser::parse_expr;

    fn round_trip(src: &str) -> String {
        let e = parse_expr(src).unwrap();
        let printed = e.to_string();
        assert_eq!(parse_expr(&printed).unwrap(), e, "{src} printed as {printed}");
        printed
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(round_trip("-q^2"), "-q^2");
        assert_eq!(round_trip("(-q)^2"), "(-q)^2");
        assert_eq!(round_trip("q^-3"), "q^(-3)");
        assert_eq!(round_trip("1 - (2 - q)"), "1 - (2 - q)");
        assert_eq!(round_trip("x / (2 q)"), "x / (2 * q)");
        assert_eq!(round_trip("x - -1"), "x - -1");
        assert_eq!(round_trip("1/2 q"), "1/2 * q");
        assert_eq!(round_trip("2 (1/2)"), "2 * (1/2)");
        assert_eq!(round_trip("(q^2)^3"), "(q^2)^3");
        assert_eq!(
            round_trip("sum(n, 0..auto, q^(2n^2+n)/poch(q,q,n))"),
            "sum(n, 0..auto, q^(2 * n^2 + n) / poch(q, q, n))"
        );
        assert_eq!(round_trip("poch(-1, q^2, inf)"), "poch(-1, q^2, inf)");
    }
}
