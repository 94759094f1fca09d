//! Expression trees for analytic tails and conformal map compositions.
//!
//! The node set is deliberately small: it is exactly what is needed to write
//! down the example symbols (compositions of disk automorphisms, Blaschke
//! products, powers, reciprocals, the exponential/logarithm pair and the
//! Jacobi `sn`/`arcsn` pair behind the rectangle maps).

use crate::elliptic::JacobiModulus;
use crate::error::{Error, Result};
use crate::{c64, C64};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Constant value.
    Const(C64),
    /// The identity `z`.
    Z,
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    /// Integer power (negative exponents allowed).
    Pow(Box<Expr>, i32),
    Recip(Box<Expr>),
    /// `outer ∘ inner`.
    Compose { outer: Box<Expr>, inner: Box<Expr> },
    /// `f(ρ·z)` where `f` is the inner expression.
    ScaleArg { rho: f64, inner: Box<Expr> },
    /// `(a·f + b)/(c·f + d)`.
    Mobius { a: C64, b: C64, c: C64, d: C64, inner: Box<Expr> },
    /// `u · Π (f − a_i)/(1 − ā_i f)` with `|u| = 1` and `|a_i| < 1`.
    Blaschke { zeros: Vec<C64>, unimodular: C64, inner: Box<Expr> },
    Exp(Box<Expr>),
    /// Principal branch of the logarithm.
    Log(Box<Expr>),
    /// Jacobi `sn(f, k)` with fixed real modulus.
    EllipticSn { modulus: JacobiModulus, inner: Box<Expr> },
    /// Inverse of `sn` on the upper half plane (fundamental half-rectangle).
    ArcSn { modulus: JacobiModulus, inner: Box<Expr> },
    /// `a·f + b`.
    Affine { a: C64, b: C64, inner: Box<Expr> },
}

impl Expr {
    pub fn constant(v: C64) -> Expr {
        Expr::Const(v)
    }

    pub fn add2(a: Expr, b: Expr) -> Expr {
        Expr::Add(vec![a, b])
    }

    pub fn mul2(a: Expr, b: Expr) -> Expr {
        Expr::Mul(vec![a, b])
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Affine { a: c64(-1.0, 0.0), b: c64(0.0, 0.0), inner: Box::new(a) }
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::add2(a, Expr::neg(b))
    }

    /// `f(z)` evaluated at `z`.
    pub fn eval(&self, z: C64) -> Result<C64> {
        Ok(self.eval_d(z)?.0)
    }

    /// `(f(z), f'(z))` by forward-mode differentiation over the tree.
    pub fn eval_d(&self, z: C64) -> Result<(C64, C64)> {
        const TINY: f64 = 1e-280;
        match self {
            Expr::Const(v) => Ok((*v, c64(0.0, 0.0))),
            Expr::Z => Ok((z, c64(1.0, 0.0))),
            Expr::Add(terms) => {
                let mut v = c64(0.0, 0.0);
                let mut d = c64(0.0, 0.0);
                for t in terms {
                    let (tv, td) = t.eval_d(z)?;
                    v += tv;
                    d += td;
                }
                Ok((v, d))
            }
            Expr::Mul(factors) => {
                let mut v = c64(1.0, 0.0);
                let mut d = c64(0.0, 0.0);
                for f in factors {
                    let (fv, fd) = f.eval_d(z)?;
                    d = d * fv + v * fd;
                    v *= fv;
                }
                Ok((v, d))
            }
            Expr::Pow(f, n) => {
                let (fv, fd) = f.eval_d(z)?;
                let n = *n;
                if n == 0 {
                    return Ok((c64(1.0, 0.0), c64(0.0, 0.0)));
                }
                if n < 0 && fv.norm() < TINY {
                    return Err(Error::EvalDomain { z, detail: "negative power of zero".into() });
                }
                let p = fv.powi(n - 1);
                Ok((p * fv, p * fd * n as f64))
            }
            Expr::Recip(f) => {
                let (fv, fd) = f.eval_d(z)?;
                if fv.norm() < TINY {
                    return Err(Error::EvalDomain { z, detail: "reciprocal of zero".into() });
                }
                let inv = 1.0 / fv;
                Ok((inv, -fd * inv * inv))
            }
            Expr::Compose { outer, inner } => {
                let (iv, id) = inner.eval_d(z)?;
                let (ov, od) = outer.eval_d(iv)?;
                Ok((ov, od * id))
            }
            Expr::ScaleArg { rho, inner } => {
                let (iv, id) = inner.eval_d(z * *rho)?;
                Ok((iv, id * *rho))
            }
            Expr::Mobius { a, b, c, d, inner } => {
                let (fv, fd) = inner.eval_d(z)?;
                let den = c * fv + d;
                if den.norm() < TINY {
                    return Err(Error::EvalDomain { z, detail: "Möbius denominator zero".into() });
                }
                let v = (a * fv + b) / den;
                let dv = (a * d - b * c) * fd / (den * den);
                Ok((v, dv))
            }
            Expr::Blaschke { zeros, unimodular, inner } => {
                let (fv, fd) = inner.eval_d(z)?;
                let mut v = *unimodular;
                let mut d = c64(0.0, 0.0);
                for &a in zeros {
                    let den = 1.0 - a.conj() * fv;
                    if den.norm() < TINY {
                        return Err(Error::EvalDomain {
                            z,
                            detail: "Blaschke factor denominator zero".into(),
                        });
                    }
                    let factor = (fv - a) / den;
                    let dfactor = (1.0 - a.norm_sqr()) * fd / (den * den);
                    d = d * factor + v * dfactor;
                    v *= factor;
                }
                Ok((v, d))
            }
            Expr::Exp(f) => {
                let (fv, fd) = f.eval_d(z)?;
                let e = fv.exp();
                Ok((e, e * fd))
            }
            Expr::Log(f) => {
                let (fv, fd) = f.eval_d(z)?;
                if fv.norm() < TINY {
                    return Err(Error::EvalDomain { z, detail: "log of zero".into() });
                }
                Ok((fv.ln(), fd / fv))
            }
            Expr::EllipticSn { modulus, inner } => {
                let (fv, fd) = inner.eval_d(z)?;
                let (sn, cn, dn) = modulus.sn_cn_dn(fv);
                Ok((sn, cn * dn * fd))
            }
            Expr::ArcSn { modulus, inner } => {
                let (fv, fd) = inner.eval_d(z)?;
                let (u, du) = modulus.arcsn_with_derivative(fv);
                Ok((u, du * fd))
            }
            Expr::Affine { a, b, inner } => {
                let (fv, fd) = inner.eval_d(z)?;
                Ok((a * fv + b, a * fd))
            }
        }
    }

    /// Serialize to the published schema: `{"op": ..., "args": [...], "params": {...}}`.
    pub fn to_json(&self) -> Value {
        fn cpx(v: C64) -> Value {
            json!([v.re, v.im])
        }
        let node = |op: &str, args: Vec<Value>, params: Value| -> Value {
            let mut m = Map::new();
            m.insert("op".into(), Value::String(op.into()));
            if !args.is_empty() {
                m.insert("args".into(), Value::Array(args));
            }
            if !params.as_object().map(|o| o.is_empty()).unwrap_or(true) {
                m.insert("params".into(), params);
            }
            Value::Object(m)
        };
        match self {
            Expr::Const(v) => node("const", vec![], json!({ "value": cpx(*v) })),
            Expr::Z => node("z", vec![], json!({})),
            Expr::Add(ts) => node("add", ts.iter().map(|t| t.to_json()).collect(), json!({})),
            Expr::Mul(ts) => node("mul", ts.iter().map(|t| t.to_json()).collect(), json!({})),
            Expr::Pow(f, n) => node("pow", vec![f.to_json()], json!({ "n": n })),
            Expr::Recip(f) => node("recip", vec![f.to_json()], json!({})),
            Expr::Compose { outer, inner } => {
                node("compose", vec![outer.to_json(), inner.to_json()], json!({}))
            }
            Expr::ScaleArg { rho, inner } => {
                node("scale_arg", vec![inner.to_json()], json!({ "rho": rho }))
            }
            Expr::Mobius { a, b, c, d, inner } => node(
                "mobius",
                vec![inner.to_json()],
                json!({ "a": cpx(*a), "b": cpx(*b), "c": cpx(*c), "d": cpx(*d) }),
            ),
            Expr::Blaschke { zeros, unimodular, inner } => node(
                "blaschke",
                vec![inner.to_json()],
                json!({
                    "zeros": zeros.iter().map(|&a| cpx(a)).collect::<Vec<_>>(),
                    "unimodular": cpx(*unimodular),
                }),
            ),
            Expr::Exp(f) => node("exp", vec![f.to_json()], json!({})),
            Expr::Log(f) => node("log", vec![f.to_json()], json!({})),
            Expr::EllipticSn { modulus, inner } => {
                node("sn", vec![inner.to_json()], json!({ "k": modulus.k }))
            }
            Expr::ArcSn { modulus, inner } => {
                node("arcsn", vec![inner.to_json()], json!({ "k": modulus.k }))
            }
            Expr::Affine { a, b, inner } => {
                node("affine", vec![inner.to_json()], json!({ "a": cpx(*a), "b": cpx(*b) }))
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Expr> {
        let obj = v.as_object().ok_or_else(|| Error::Schema("expression node must be an object".into()))?;
        let op = obj
            .get("op")
            .and_then(|o| o.as_str())
            .ok_or_else(|| Error::Schema("expression node missing \"op\"".into()))?;
        let args: Vec<&Value> = obj.get("args").and_then(|a| a.as_array()).map(|a| a.iter().collect()).unwrap_or_default();
        let params = obj.get("params").cloned().unwrap_or_else(|| json!({}));
        let cpx = |v: &Value, name: &str| -> Result<C64> {
            let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                Error::Schema(format!("{name}: complex values are [re, im] pairs"))
            })?;
            Ok(c64(arr[0].as_f64().unwrap_or(f64::NAN), arr[1].as_f64().unwrap_or(f64::NAN)))
        };
        let param = |name: &str| -> Result<Value> {
            params
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Schema(format!("node \"{op}\" missing param \"{name}\"")))
        };
        let one_arg = |args: &[&Value]| -> Result<Box<Expr>> {
            if args.len() != 1 {
                return Err(Error::Schema(format!("node \"{op}\" expects one argument")));
            }
            Ok(Box::new(Expr::from_json(args[0])?))
        };
        Ok(match op {
            "const" => Expr::Const(cpx(&param("value")?, "value")?),
            "z" => Expr::Z,
            "add" => Expr::Add(args.iter().map(|a| Expr::from_json(a)).collect::<Result<_>>()?),
            "mul" => Expr::Mul(args.iter().map(|a| Expr::from_json(a)).collect::<Result<_>>()?),
            "pow" => {
                let n = param("n")?.as_i64().ok_or_else(|| Error::Schema("pow: integer \"n\"".into()))?;
                Expr::Pow(one_arg(&args)?, n as i32)
            }
            "recip" => Expr::Recip(one_arg(&args)?),
            "compose" => {
                if args.len() != 2 {
                    return Err(Error::Schema("compose expects [outer, inner]".into()));
                }
                Expr::Compose {
                    outer: Box::new(Expr::from_json(args[0])?),
                    inner: Box::new(Expr::from_json(args[1])?),
                }
            }
            "scale_arg" => {
                let rho = param("rho")?.as_f64().ok_or_else(|| Error::Schema("scale_arg: \"rho\"".into()))?;
                Expr::ScaleArg { rho, inner: one_arg(&args)? }
            }
            "mobius" => Expr::Mobius {
                a: cpx(&param("a")?, "a")?,
                b: cpx(&param("b")?, "b")?,
                c: cpx(&param("c")?, "c")?,
                d: cpx(&param("d")?, "d")?,
                inner: one_arg(&args)?,
            },
            "blaschke" => {
                let zeros = param("zeros")?
                    .as_array()
                    .ok_or_else(|| Error::Schema("blaschke: \"zeros\" array".into()))?
                    .iter()
                    .map(|z| cpx(z, "zeros"))
                    .collect::<Result<Vec<_>>>()?;
                Expr::Blaschke { zeros, unimodular: cpx(&param("unimodular")?, "unimodular")?, inner: one_arg(&args)? }
            }
            "exp" => Expr::Exp(one_arg(&args)?),
            "log" => Expr::Log(one_arg(&args)?),
            "sn" | "arcsn" => {
                let k = param("k")?.as_f64().ok_or_else(|| Error::Schema("sn/arcsn: modulus \"k\"".into()))?;
                if !(k > 0.0 && k < 1.0) {
                    return Err(Error::Schema("sn/arcsn: modulus must lie in (0,1)".into()));
                }
                let modulus = JacobiModulus::from_modulus(k);
                if op == "sn" {
                    Expr::EllipticSn { modulus, inner: one_arg(&args)? }
                } else {
                    Expr::ArcSn { modulus, inner: one_arg(&args)? }
                }
            }
            "affine" => Expr::Affine {
                a: cpx(&param("a")?, "a")?,
                b: cpx(&param("b")?, "b")?,
                inner: one_arg(&args)?,
            },
            other => return Err(Error::Schema(format!("unknown expression op \"{other}\""))),
        })
    }
}
