use std::fmt;

use serde::{Deserialize, Serialize};

use super::cut::Cut;
use super::{QSetError, QSetExpr};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn read(tokens: &[String], pos: &mut usize) -> Result<Sexp, QSetError> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| QSetError::Parse("unexpected end of input".into()))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(read(tokens, pos)?),
                    None => return Err(QSetError::Parse("missing ')'".into())),
                }
            }
        }
        ")" => Err(QSetError::Parse("unexpected ')'".into())),
        atom => Ok(Sexp::Atom(atom.to_string())),
    }
}

pub(crate) fn read_all(text: &str) -> Result<Sexp, QSetError> {
    let tokens = tokenize(text);
    let mut pos = 0;
    let s = read(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(QSetError::Parse(format!(
            "trailing input after position {pos}"
        )));
    }
    Ok(s)
}

pub(crate) fn rational_atom(s: &Sexp) -> Result<Rational, QSetError> {
    match s {
        Sexp::Atom(a) => {
            parse_rational(a).ok_or_else(|| QSetError::Parse(format!("not a rational: {a}")))
        }
        Sexp::List(_) => Err(QSetError::Parse("expected a rational".into())),
    }
}

fn to_cut(s: &Sexp) -> Result<Cut, QSetError> {
    match s {
        Sexp::Atom(a) if a == "-inf" => Ok(Cut::NegInf),
        Sexp::Atom(a) if a == "inf" || a == "+inf" => Ok(Cut::PosInf),
        Sexp::Atom(_) => Ok(Cut::rational(rational_atom(s)?)),
        Sexp::List(items) => match items.as_slice() {
            [Sexp::Atom(h), a] if h == "sqrt2-plus" => Ok(Cut::sqrt2_plus(rational_atom(a)?)),
            [Sexp::Atom(h), a, b] if h == "quad" => {
                Ok(Cut::quad(rational_atom(a)?, rational_atom(b)?))
            }
            _ => Err(QSetError::Parse("malformed cut".into())),
        },
    }
}

pub(crate) fn to_expr(s: &Sexp) -> Result<QSetExpr, QSetError> {
    match s {
        Sexp::Atom(a) if a == "full" => Ok(QSetExpr::Full),
        Sexp::Atom(a) if a == "empty" => Ok(QSetExpr::empty()),
        Sexp::Atom(a) => Err(QSetError::Parse(format!("unknown atom {a}"))),
        Sexp::List(items) => {
            let (head, args) = match items.split_first() {
                Some((Sexp::Atom(h), rest)) => (h.as_str(), rest),
                _ => return Err(QSetError::Parse("expected an operator".into())),
            };
            match head {
                "class" => match args {
                    [Sexp::Atom(i)] => i
                        .parse::<u32>()
                        .map(QSetExpr::DenseClass)
                        .map_err(|_| QSetError::Parse(format!("bad class index {i}"))),
                    _ => Err(QSetError::Parse("class takes one index".into())),
                },
                "interval" => match args {
                    [lo, hi] => Ok(QSetExpr::Interval(to_cut(lo)?, to_cut(hi)?)),
                    _ => Err(QSetError::Parse("interval takes two cuts".into())),
                },
                "fin" => Ok(QSetExpr::FiniteSet(
                    args.iter().map(rational_atom).collect::<Result<_, _>>()?,
                )),
                "union" => Ok(QSetExpr::Union(
                    args.iter().map(to_expr).collect::<Result<_, _>>()?,
                )),
                "inter" => Ok(QSetExpr::Intersect(
                    args.iter().map(to_expr).collect::<Result<_, _>>()?,
                )),
                "diff" => match args {
                    [a, b] => Ok(QSetExpr::diff(to_expr(a)?, to_expr(b)?)),
                    _ => Err(QSetError::Parse("diff takes two sets".into())),
                },
                other => Err(QSetError::Parse(format!("unknown operator {other}"))),
            }
        }
    }
}

/// Parse the textual syntax, e.g. `(diff (interval -inf (sqrt2-plus -3)) (fin 0 1/2))`.
pub fn parse_expr(text: &str) -> Result<QSetExpr, QSetError> {
    to_expr(&read_all(text)?)
}

pub fn parse_cut(text: &str) -> Result<Cut, QSetError> {
    to_cut(&read_all(text)?)
}

impl fmt::Display for QSetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, items: &[QSetExpr]| {
            write!(f, "({head}")?;
            for e in items {
                write!(f, " {e}")?;
            }
            write!(f, ")")
        };
        match self {
            QSetExpr::Full => write!(f, "full"),
            QSetExpr::DenseClass(i) => write!(f, "(class {i})"),
            QSetExpr::Interval(lo, hi) => write!(f, "(interval {lo} {hi})"),
            QSetExpr::FiniteSet(v) => {
                write!(f, "(fin")?;
                for q in v {
                    write!(f, " {q}")?;
                }
                write!(f, ")")
            }
            QSetExpr::Union(v) => list(f, "union", v),
            QSetExpr::Intersect(v) => list(f, "inter", v),
            QSetExpr::Diff(a, b) => write!(f, "(diff {a} {b})"),
        }
    }
}

impl Serialize for Cut {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Cut {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_cut(&text).map_err(serde::de::Error::custom)
    }
}

/// JSON mirror of [`QSetExpr`]: `{"op":"interval","lo":"-inf","hi":"1/2"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ExprJson {
    Full,
    Class {
        index: u32,
    },
    Interval {
        lo: Cut,
        hi: Cut,
    },
    Fin {
        #[serde(with = "crate::rational::serde_str_vec")]
        points: Vec<Rational>,
    },
    Union {
        args: Vec<ExprJson>,
    },
    Inter {
        args: Vec<ExprJson>,
    },
    Diff {
        left: Box<ExprJson>,
        right: Box<ExprJson>,
    },
}

impl From<QSetExpr> for ExprJson {
    fn from(e: QSetExpr) -> Self {
        match e {
            QSetExpr::Full => ExprJson::Full,
            QSetExpr::DenseClass(index) => ExprJson::Class { index },
            QSetExpr::Interval(lo, hi) => ExprJson::Interval { lo, hi },
            QSetExpr::FiniteSet(points) => ExprJson::Fin { points },
            QSetExpr::Union(v) => ExprJson::Union {
                args: v.into_iter().map(Into::into).collect(),
            },
            QSetExpr::Intersect(v) => ExprJson::Inter {
                args: v.into_iter().map(Into::into).collect(),
            },
            QSetExpr::Diff(a, b) => ExprJson::Diff {
                left: Box::new((*a).into()),
                right: Box::new((*b).into()),
            },
        }
    }
}

impl TryFrom<ExprJson> for QSetExpr {
    type Error = QSetError;

    fn try_from(j: ExprJson) -> Result<Self, QSetError> {
        Ok(match j {
            ExprJson::Full => QSetExpr::Full,
            ExprJson::Class { index } => QSetExpr::DenseClass(index),
            ExprJson::Interval { lo, hi } => QSetExpr::Interval(lo, hi),
            ExprJson::Fin { points } => QSetExpr::FiniteSet(points),
            ExprJson::Union { args } => QSetExpr::Union(
                args.into_iter()
                    .map(QSetExpr::try_from)
                    .collect::<Result<_, _>>()?,
            ),
            ExprJson::Inter { args } => QSetExpr::Intersect(
                args.into_iter()
                    .map(QSetExpr::try_from)
                    .collect::<Result<_, _>>()?,
            ),
            ExprJson::Diff { left, right } => {
                QSetExpr::diff((*left).try_into()?, (*right).try_into()?)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn parses_the_documented_example() {
        let e = parse_expr("(diff (interval -inf (sqrt2-plus -3)) (fin 0 1/2))").unwrap();
        assert_eq!(
            e,
            QSetExpr::diff(
                QSetExpr::Interval(Cut::NegInf, Cut::sqrt2_plus(int(-3))),
                QSetExpr::FiniteSet(vec![int(0), rat(1, 2)])
            )
        );
        assert_eq!(
            e.to_string(),
            "(diff (interval -inf (sqrt2-plus -3)) (fin 0 1/2))"
        );
    }

    #[test]
    fn text_and_json_round_trip() {
        let src = "(union (inter (class 3) (interval (quad 1/2 -2) inf)) full (fin))";
        let e = parse_expr(src).unwrap();
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        let json = serde_json::to_string(&e).unwrap();
        let back: QSetExpr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["(", "(interval 0)", "(class x)", "(fin a)", "(wat)", "full full", ")"] {
            assert!(parse_expr(bad).is_err(), "{bad}");
        }
    }
}
