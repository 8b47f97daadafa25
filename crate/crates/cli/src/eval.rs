//! Evaluation of expressions into engine values.

use std::fmt;

use kappa3_core::calculus::{Calculus, Form1, Form2};
use kappa3_core::dual::{pair, DualElement, DualTensor};
use kappa3_core::galg::{GroupElement, TensorElement};
use kappa3_core::hopftools::ad;
use kappa3_core::printed::{w_om, w_phi, w_upper, w_x};
use kappa3_core::scalar::KScalar;
use thiserror::Error;

use crate::dsl::{Ast, Func, Gen, ScalarLit};

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(KScalar),
    Group(GroupElement),
    Tensor(TensorElement),
    Dual(DualElement),
    DualTensor(DualTensor),
    Form1(Form1),
    Form2(Form2),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct EvalError(pub String);

type Result<T> = std::result::Result<T, EvalError>;

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Group(_) => "group element",
            Value::Tensor(_) => "group tensor",
            Value::Dual(_) => "dual element",
            Value::DualTensor(_) => "dual tensor",
            Value::Form1(_) => "1-form",
            Value::Form2(_) => "2-form",
        }
    }

    pub fn into_group(self) -> Result<GroupElement> {
        match self {
            Value::Scalar(s) => Ok(GroupElement::scalar(s)),
            Value::Group(g) => Ok(g),
            v => Err(EvalError(format!("expected a group element, got a {}", v.kind()))),
        }
    }

    pub fn into_dual(self) -> Result<DualElement> {
        match self {
            Value::Scalar(s) => Ok(DualElement::scalar(s)),
            Value::Dual(d) => Ok(d),
            v => Err(EvalError(format!("expected a dual element, got a {}", v.kind()))),
        }
    }

    fn scale(self, c: &KScalar) -> Value {
        match self {
            Value::Scalar(s) => Value::Scalar(&s * c),
            Value::Group(g) => Value::Group(g.scale(c)),
            Value::Tensor(t) => Value::Tensor(t.scale(c)),
            Value::Dual(d) => Value::Dual(d.scale(c)),
            Value::DualTensor(t) => Value::DualTensor(t.scale(c)),
            Value::Form1(f) => Value::Form1(f.scale(c)),
            Value::Form2(f) => Value::Form2(f.scale(c)),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{}", s),
            Value::Group(g) => write!(f, "{}", g),
            Value::Tensor(t) => write!(f, "{}", t),
            Value::Dual(d) => write!(f, "{}", d),
            Value::DualTensor(t) => write!(f, "{}", t),
            Value::Form1(x) => write!(f, "{}", x),
            Value::Form2(x) => write!(f, "{}", x),
        }
    }
}

fn mismatch(op: &str, a: &Value, b: &Value) -> EvalError {
    EvalError(format!("cannot {} a {} and a {}", op, a.kind(), b.kind()))
}

fn add(a: Value, b: Value) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(&x + &y),
        (Scalar(x), Group(g)) | (Group(g), Scalar(x)) => Group(&g + &GroupElement::scalar(x)),
        (Scalar(x), Dual(d)) | (Dual(d), Scalar(x)) => Dual(&d + &DualElement::scalar(x)),
        (Group(x), Group(y)) => Group(&x + &y),
        (Dual(x), Dual(y)) => Dual(&x + &y),
        (Tensor(x), Tensor(y)) if x.rank() == y.rank() => Tensor(x.add(&y)),
        (DualTensor(x), DualTensor(y)) if x.rank() == y.rank() => DualTensor(x.add(&y)),
        (Form1(x), Form1(y)) => Form1(x.add(&y)),
        (Form2(x), Form2(y)) => Form2(x.add(&y)),
        (a, b) => return Err(mismatch("add", &a, &b)),
    })
}

fn mul(a: Value, b: Value) -> Result<Value> {
    use Value::*;
    Ok(match (a, b) {
        (Scalar(x), v) | (v, Scalar(x)) => v.scale(&x),
        (Group(x), Group(y)) => Group(&x * &y),
        (Dual(x), Dual(y)) => Dual(&x * &y),
        (Tensor(x), Tensor(y)) if x.rank() == y.rank() => Tensor(x.mul(&y)),
        (DualTensor(x), DualTensor(y)) if x.rank() == y.rank() => DualTensor(x.mul(&y)),
        (Group(g), Form1(f)) => Form1(f.left_mul(&g)),
        (Form1(f), Group(g)) => Form1(Calculus::global().rmul(&f, &g)),
        (Group(g), Form2(f)) => Form2(f.left_mul(&g)),
        (Form1(_), Form1(_)) => return Err(EvalError("product of 1-forms: use wedge(a, b)".into())),
        (a, b) => return Err(mismatch("multiply", &a, &b)),
    })
}

fn invert_scalar(s: &KScalar) -> Result<KScalar> {
    KScalar::one().checked_div(s).map_err(|e| EvalError(e.to_string()))
}

fn power(v: Value, n: i32) -> Result<Value> {
    if n < 0 {
        return match v {
            Value::Scalar(s) => Ok(Value::Scalar(invert_scalar(&s)?.pow(n.unsigned_abs()))),
            Value::Dual(d) => {
                let mut it = d.terms();
                match (it.next(), it.next()) {
                    (Some((m, c)), None) if m.p == [0; 3] && m.l == [0; 3] => {
                        let inv = DualElement::e_pow(-m.k).scale(&invert_scalar(c)?);
                        Ok(Value::Dual(inv.pow(n.unsigned_abs())))
                    }
                    _ => Err(EvalError("negative powers only of scalars and powers of E".into())),
                }
            }
            v => Err(EvalError(format!("negative power of a {}", v.kind()))),
        };
    }
    let mut acc = Value::Scalar(KScalar::one());
    for _ in 0..n {
        acc = mul(acc, v.clone())?;
    }
    Ok(acc)
}

fn form(v: Vec<KScalar>) -> Value {
    Value::Form1(Form1::constant(&v))
}

fn gen(g: Gen) -> Value {
    let u = |x: u8| x as usize;
    match g {
        Gen::X(m) => Value::Group(GroupElement::x(u(m))),
        Gen::L(m, n) => Value::Group(GroupElement::l(u(m), u(n))),
        Gen::P(m) => Value::Dual(DualElement::p(u(m))),
        Gen::E => Value::Dual(DualElement::e_pow(1)),
        Gen::EInv => Value::Dual(DualElement::e_pow(-1)),
        Gen::M => Value::Dual(DualElement::m()),
        Gen::N(i) => Value::Dual(DualElement::n(u(i))),
        Gen::W(m, n) => form(w_upper(u(m), u(n))),
        Gen::WX(m) => form(w_x(u(m))),
        Gen::WPhi => form(w_phi()),
        Gen::Om => form(w_om()),
    }
}

fn apply(f: Func, mut args: Vec<Value>) -> Result<Value> {
    let c = || Calculus::global();
    let bad = |v: &Value| EvalError(format!("{} is not defined on a {}", f.name(), v.kind()));
    if f.arity() == 2 {
        let b = args.pop().expect("arity checked by the parser");
        let a = args.pop().expect("arity checked by the parser");
        return match f {
            Func::Pair => Ok(Value::Scalar(pair(&a.into_group()?, &b.into_dual()?))),
            _ => match (a, b) {
                (Value::Form1(x), Value::Form1(y)) => Ok(Value::Form2(c().wedge(&x, &y))),
                (a, b) => Err(mismatch("wedge", &a, &b)),
            },
        };
    }
    let a = args.pop().expect("arity checked by the parser");
    Ok(match (f, a) {
        (Func::D, Value::Scalar(_)) => Value::Form1(Form1::zero()),
        (Func::D, Value::Group(g)) => Value::Form1(c().d(&g)),
        (Func::D, Value::Form1(x)) => Value::Form2(c().d_form(&x)),
        (Func::S, Value::Scalar(s)) => Value::Scalar(s),
        (Func::S, Value::Group(g)) => Value::Group(g.antipode()),
        (Func::S, Value::Dual(d)) => Value::Dual(d.antipode()),
        (Func::Eps, Value::Scalar(s)) => Value::Scalar(s),
        (Func::Eps, Value::Group(g)) => Value::Scalar(g.counit()),
        (Func::Eps, Value::Dual(d)) => Value::Scalar(d.counit()),
        (Func::Delta, Value::Scalar(s)) => Value::Tensor(GroupElement::scalar(s).coproduct()),
        (Func::Delta, Value::Group(g)) => Value::Tensor(g.coproduct()),
        (Func::Delta, Value::Dual(d)) => Value::DualTensor(d.coproduct()),
        (Func::Star, Value::Scalar(s)) => Value::Scalar(s.star()),
        (Func::Star, Value::Group(g)) => Value::Group(g.star()),
        (Func::Star, Value::Form1(x)) => Value::Form1(c().star_form(&x)),
        (Func::Ad, Value::Scalar(s)) => Value::Tensor(ad(&GroupElement::scalar(s))),
        (Func::Ad, Value::Group(g)) => Value::Tensor(ad(&g)),
        (_, v) => return Err(bad(&v)),
    })
}

pub fn eval(a: &Ast) -> Result<Value> {
    match a {
        Ast::Scalar(ScalarLit::Int(v)) => {
            let n = i64::try_from(*v).map_err(|_| EvalError(format!("integer {} too large", v)))?;
            Ok(Value::Scalar(KScalar::from_int(n)))
        }
        Ast::Scalar(ScalarLit::I) => Ok(Value::Scalar(KScalar::i())),
        Ast::Scalar(ScalarLit::K) => Ok(Value::Scalar(KScalar::kappa_pow(1))),
        Ast::Gen(g) => Ok(gen(*g)),
        Ast::Sum(terms) => {
            let mut acc: Option<Value> = None;
            for (neg, t) in terms {
                let mut v = eval(t)?;
                if *neg {
                    v = v.scale(&KScalar::from_int(-1));
                }
                acc = Some(match acc {
                    None => v,
                    Some(a) => add(a, v)?,
                });
            }
            Ok(acc.expect("sums are non-empty"))
        }
        Ast::Product(fs) => {
            let mut acc = Value::Scalar(KScalar::one());
            for x in fs {
                acc = mul(acc, eval(x)?)?;
            }
            Ok(acc)
        }
        Ast::Quot(a, b) => match eval(b)? {
            Value::Scalar(s) => Ok(eval(a)?.scale(&invert_scalar(&s)?)),
            v => Err(EvalError(format!("can only divide by scalars, not by a {}", v.kind()))),
        },
        Ast::Power(a, n) => power(eval(a)?, *n),
        Ast::Apply(f, args) => apply(*f, args.iter().map(eval).collect::<Result<_>>()?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    fn ev(s: &str) -> Value {
        eval(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn normal_form_example() {
        assert_eq!(ev("x1*x0").to_string(), "x0*x1 - (I/k)*x1");
    }

    #[test]
    fn pairing_example() {
        assert_eq!(ev("pair(x0, P0)").to_string(), "I");
        assert_eq!(ev("pair(x0^2, E)"), Value::Scalar(-&KScalar::kappa_pow(-2)));
    }

    #[test]
    fn scalars_and_powers() {
        assert_eq!(ev("(I/k)*k"), Value::Scalar(KScalar::i()));
        assert_eq!(ev("k^-1"), Value::Scalar(KScalar::kappa_pow(-1)));
        assert_eq!(ev("E^-1"), ev("Einv"));
        assert_eq!(ev("1/2 + 1/2"), Value::Scalar(KScalar::one()));
    }

    #[test]
    fn type_errors() {
        assert!(eval(&parse("x0 + P0").unwrap()).is_err());
        assert!(eval(&parse("x0/x1").unwrap()).is_err());
        assert!(eval(&parse("w0*w1").unwrap()).is_err());
        assert!(eval(&parse("1/0").unwrap()).is_err());
    }

    #[test]
    fn hopf_maps() {
        assert_eq!(ev("eps(L[0,0])"), Value::Scalar(KScalar::one()));
        assert_eq!(ev("S(L[0,1])"), Value::Group(-&GroupElement::l(1, 0)));
        assert_eq!(ev("Delta(E)"), Value::DualTensor(DualTensor::product_of(&[DualElement::e_pow(1), DualElement::e_pow(1)])));
        assert_eq!(ev("d(1)"), Value::Form1(Form1::zero()));
    }

    #[test]
    fn antisymmetric_w_evaluates_with_sign() {
        assert_eq!(ev("w[1,0]"), ev("-w[0,1]"));
    }
}
