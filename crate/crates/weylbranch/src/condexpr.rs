//! Integer and boolean condition expressions used by the table files.
//!
//! Expressions use the evalexpr syntax over integer variables, with four
//! extra functions:
//! `div(m, x)` (m divides x, where m = 0 means x = 0),
//! `cong(x, y, m)` (x ≡ y mod m, equality when m = 0),
//! `binom(n, k)` and `pow(a, b)`.

use evalexpr::{
    ContextWithMutableFunctions, ContextWithMutableVariables, DefaultNumericTypes, EvalexprError, Function,
    HashMapContext, Value,
};

use crate::error::{Error, Result};

type V = Value<DefaultNumericTypes>;

fn ints(arg: &V, arity: usize) -> std::result::Result<Vec<i64>, EvalexprError<DefaultNumericTypes>> {
    let vals: Vec<V> = match arg {
        Value::Tuple(t) => t.clone(),
        v => vec![v.clone()],
    };
    if vals.len() != arity {
        return Err(EvalexprError::CustomMessage(format!("expected {arity} arguments")));
    }
    vals.iter().map(|v| v.as_int()).collect()
}

fn divides(m: i64, x: i64) -> bool {
    if m == 0 {
        x == 0
    } else {
        x.rem_euclid(m) == 0
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// A context holding the given integer variables and the extra functions.
pub fn context(vars: &[(String, i64)]) -> HashMapContext<DefaultNumericTypes> {
    let mut ctx = HashMapContext::<DefaultNumericTypes>::new();
    for (k, v) in vars {
        ctx.set_value(k.clone(), Value::from_int(*v)).expect("fresh variable");
    }
    ctx.set_function(
        "div".into(),
        Function::new(|a: &V| {
            let v = ints(a, 2)?;
            Ok(Value::Boolean(divides(v[0], v[1])))
        }),
    )
    .unwrap();
    ctx.set_function(
        "cong".into(),
        Function::new(|a: &V| {
            let v = ints(a, 3)?;
            Ok(Value::Boolean(divides(v[2], v[0] - v[1])))
        }),
    )
    .unwrap();
    ctx.set_function(
        "binom".into(),
        Function::new(|a: &V| {
            let v = ints(a, 2)?;
            Ok(Value::from_int(binom(v[0], v[1])))
        }),
    )
    .unwrap();
    ctx.set_function(
        "pow".into(),
        Function::new(|a: &V| {
            let v = ints(a, 2)?;
            let e = u32::try_from(v[1]).map_err(|_| EvalexprError::CustomMessage("negative exponent".into()))?;
            Ok(Value::from_int(v[0].pow(e)))
        }),
    )
    .unwrap();
    ctx
}

fn wrap(expr: &str, e: EvalexprError<DefaultNumericTypes>) -> Error {
    Error::Parse {
        line: 0,
        msg: format!("expression '{expr}': {e}"),
    }
}

pub fn eval_bool(expr: &str, vars: &[(String, i64)]) -> Result<bool> {
    let expr = expr.trim();
    if expr.is_empty() || expr == "-" || expr.eq_ignore_ascii_case("any") {
        return Ok(true);
    }
    evalexpr::eval_boolean_with_context(expr, &context(vars)).map_err(|e| wrap(expr, e))
}

pub fn eval_int(expr: &str, vars: &[(String, i64)]) -> Result<i64> {
    evalexpr::eval_int_with_context(expr.trim(), &context(vars)).map_err(|e| wrap(expr, e))
}

/// Like `eval_int`, with `coef(i)` returning the i-th (1-based) coefficient of λ.
pub fn eval_int_lambda(expr: &str, vars: &[(String, i64)], coeffs: &[i64]) -> Result<i64> {
    let mut ctx = context(vars);
    let c = coeffs.to_vec();
    ctx.set_function(
        "coef".into(),
        Function::new(move |a: &V| {
            let i = a.as_int()?;
            let v = usize::try_from(i - 1)
                .ok()
                .and_then(|k| c.get(k))
                .ok_or_else(|| EvalexprError::CustomMessage(format!("coef({i}) out of range")))?;
            Ok(Value::from_int(*v))
        }),
    )
    .unwrap();
    evalexpr::eval_int_with_context(expr.trim(), &ctx).map_err(|e| wrap(expr, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn custom_functions() {
        let vars = vec![("p".to_string(), 5), ("a".to_string(), 1)];
        assert!(eval_bool("cong(2*a+3, 0, p)", &vars).unwrap());
        assert!(!eval_bool("div(p, 3)", &vars).unwrap());
        assert_eq!(eval_int("binom(6, 3) / 2", &vars).unwrap(), 10);
        assert_eq!(eval_int("pow(2, p - 1)", &vars).unwrap(), 16);
        assert!(eval_bool("div(0, 0) && !cong(1, 2, 0)", &vars).unwrap());
        assert_eq!(eval_int("if(a == 1, 2, 1)", &vars).unwrap(), 2);
        assert_eq!(eval_int_lambda("coef(2) + 1", &vars, &[4, 5]).unwrap(), 6);
    }
}
