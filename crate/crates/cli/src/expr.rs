//! Small expression parsers for the CLI: products of powers of linear forms
//! for the series commands, and h/c monomials for the toy model.

use cy4_core::error::{CoreError, Result};
use cy4_core::num::{fmt_rat, parse_rat, Rat};
use cy4_core::series::{LaurentSeries, MPoly, RatFunc, Regime, SeriesCtx};
use cy4_core::toy::{PolyClass, ProjBundleModel};
use num_traits::One;

/// One factor (c_z·z + Σ c_i·λ_i + constant?)^power. Constant offsets are not
/// part of the character lattice, so only z and named characters appear.
#[derive(Debug, Clone)]
pub struct Factor {
    pub z_coeff: Rat,
    pub lambda_coeffs: Vec<(String, Rat)>,
    pub power: i64,
}

#[derive(Debug, Clone)]
pub struct SeriesExpr {
    pub constant: Rat,
    pub factors: Vec<Factor>,
    pub lambdas: Vec<String>,
}

/// Grammar: expr := item (('*'|'/') item)*; item := '(' linear ')' power? |
/// 'z' power? | rational; linear := term (('+'|'-') term)*;
/// term := rational ['*' sym] | sym; power := '^' int.
pub fn parse_series_expr(input: &str) -> Result<SeriesExpr> {
    let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0usize;
    let mut constant = Rat::one();
    let mut factors: Vec<Factor> = Vec::new();
    let mut lambdas: Vec<String> = Vec::new();
    let mut invert_next = false;

    fn parse_int(s: &[char], pos: &mut usize) -> Result<i64> {
        let start = *pos;
        if *pos < s.len() && (s[*pos] == '-' || s[*pos] == '+') {
            *pos += 1;
        }
        while *pos < s.len() && s[*pos].is_ascii_digit() {
            *pos += 1;
        }
        s[start..*pos]
            .iter()
            .collect::<String>()
            .parse::<i64>()
            .map_err(|_| CoreError::Input("expected an integer".into()))
    }

    fn parse_number(s: &[char], pos: &mut usize) -> Result<Rat> {
        let start = *pos;
        if *pos < s.len() && (s[*pos] == '-' || s[*pos] == '+') {
            *pos += 1;
        }
        while *pos < s.len() && (s[*pos].is_ascii_digit() || s[*pos] == '/') {
            *pos += 1;
        }
        parse_rat(&s[start..*pos].iter().collect::<String>())
    }

    fn parse_sym(s: &[char], pos: &mut usize) -> Option<String> {
        let start = *pos;
        while *pos < s.len() && (s[*pos].is_ascii_alphanumeric() || s[*pos] == '_') {
            *pos += 1;
        }
        (*pos > start).then(|| s[start..*pos].iter().collect())
    }

    while pos < s.len() {
        match s[pos] {
            '*' => {
                pos += 1;
                invert_next = false;
            }
            '/' => {
                pos += 1;
                invert_next = true;
            }
            '(' => {
                pos += 1;
                let mut z_coeff = Rat::from_integer(0.into());
                let mut lambda_coeffs: Vec<(String, Rat)> = Vec::new();
                let mut sign = Rat::one();
                loop {
                    if pos >= s.len() {
                        return Err(CoreError::Input("unterminated parenthesis".into()));
                    }
                    match s[pos] {
                        ')' => {
                            pos += 1;
                            break;
                        }
                        '+' => {
                            pos += 1;
                            sign = Rat::one();
                        }
                        '-' => {
                            pos += 1;
                            sign = -Rat::one();
                        }
                        c if c.is_ascii_digit() => {
                            let n = parse_number(&s, &mut pos)?;
                            let coeff = sign.clone() * n;
                            if pos < s.len() && s[pos] == '*' {
                                pos += 1;
                            }
                            let Some(sym) = parse_sym(&s, &mut pos) else {
                                return Err(CoreError::Input(
                                    "constant offsets are not supported in linear forms".into(),
                                ));
                            };
                            if sym == "z" {
                                z_coeff += coeff;
                            } else {
                                lambda_coeffs.push((sym, coeff));
                            }
                        }
                        _ => {
                            let Some(sym) = parse_sym(&s, &mut pos) else {
                                return Err(CoreError::Input(format!(
                                    "unexpected character `{}`",
                                    s[pos]
                                )));
                            };
                            if sym == "z" {
                                z_coeff += sign.clone();
                            } else {
                                lambda_coeffs.push((sym, sign.clone()));
                            }
                        }
                    }
                }
                let mut power = 1i64;
                if pos < s.len() && s[pos] == '^' {
                    pos += 1;
                    power = parse_int(&s, &mut pos)?;
                }
                if invert_next {
                    power = -power;
                }
                for (name, _) in &lambda_coeffs {
                    if !lambdas.contains(name) {
                        lambdas.push(name.clone());
                    }
                }
                factors.push(Factor { z_coeff, lambda_coeffs, power });
            }
            'z' => {
                pos += 1;
                let mut power = 1i64;
                if pos < s.len() && s[pos] == '^' {
                    pos += 1;
                    power = parse_int(&s, &mut pos)?;
                }
                if invert_next {
                    power = -power;
                }
                factors.push(Factor { z_coeff: Rat::one(), lambda_coeffs: vec![], power });
            }
            c if c.is_ascii_digit() || c == '-' => {
                let n = parse_number(&s, &mut pos)?;
                if invert_next {
                    constant /= n;
                } else {
                    constant *= n;
                }
            }
            other => return Err(CoreError::Input(format!("unexpected character `{other}`"))),
        }
    }
    lambdas.sort();
    Ok(SeriesExpr { constant, factors, lambdas })
}

pub fn evaluate(ctx: &SeriesCtx, expr: &SeriesExpr, regime: Regime) -> Result<LaurentSeries> {
    let arity = ctx.lambdas.len();
    let mut out = LaurentSeries::one(ctx, regime).scale_rat(&expr.constant);
    for f in &expr.factors {
        let mut line = LaurentSeries::zero(ctx, regime);
        if !f.z_coeff.is_zero() {
            line.set(ctx, 1, &[], RatFunc::constant(arity, f.z_coeff.clone()));
        }
        let mut lam = MPoly::zero(arity);
        for (name, c) in &f.lambda_coeffs {
            lam = lam.add(&MPoly::var(arity, ctx.lambda_index(name)?).scale(c));
        }
        if !lam.is_zero() {
            line.set(ctx, 0, &[], RatFunc::from_poly(lam));
        }
        let powered = if f.power >= 0 {
            let mut acc = LaurentSeries::one(ctx, regime);
            for _ in 0..f.power {
                acc = acc.mul(ctx, &line)?;
            }
            acc
        } else {
            let inv = line.inv(ctx)?;
            let mut acc = LaurentSeries::one(ctx, regime);
            for _ in 0..(-f.power) {
                acc = acc.mul(ctx, &inv)?;
            }
            acc
        };
        out = out.mul(ctx, &powered)?;
    }
    Ok(out)
}

use num_traits::Zero;

/// Parses `h^4`, `c1*h^2`, `3/2*h` style monomial products in the Chow model.
pub fn parse_toy_class(model: &ProjBundleModel, input: &str) -> Result<PolyClass> {
    let mut out = model.one();
    for piece in input.split('*') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let (base, pow) = match piece.split_once('^') {
            Some((b, p)) => (
                b.trim(),
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| CoreError::Input(format!("bad exponent in `{piece}`")))?,
            ),
            None => (piece, 1),
        };
        let factor = if base == "h" {
            model.h_power(pow)
        } else if let Some(idx) = base.strip_prefix('c') {
            let i: usize = idx
                .parse()
                .map_err(|_| CoreError::Input(format!("bad Chern index in `{base}`")))?;
            if !(1..=model.rank).contains(&i) {
                return Err(CoreError::Input(format!("c{i} is out of range for rank {}", model.rank)));
            }
            let mut acc = model.one();
            for _ in 0..pow {
                acc = model.mul(&acc, &model.chern(i));
            }
            acc
        } else {
            let c = parse_rat(base)?;
            let mut acc = model.constant(Rat::one());
            for _ in 0..pow {
                acc = model.scale(&acc, &c);
            }
            acc
        };
        out = model.mul(&out, &factor);
    }
    Ok(out)
}

pub fn render_toy_class(x: &PolyClass) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for ((hp, ce), c) in &x.terms {
        let mut factors = Vec::new();
        let coeff = fmt_rat(c);
        if coeff != "1" || (*hp == 0 && ce.iter().all(|&p| p == 0)) {
            factors.push(coeff);
        }
        if *hp == 1 {
            factors.push("h".into());
        } else if *hp > 1 {
            factors.push(format!("h^{hp}"));
        }
        for (i, &p) in ce.iter().enumerate() {
            if p == 1 {
                factors.push(format!("c{}", i + 1));
            } else if p > 1 {
                factors.push(format!("c{}^{}", i + 1, p));
            }
        }
        parts.push(factors.join("*"));
    }
    parts.join(" + ")
}
