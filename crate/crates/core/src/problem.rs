//! Problem files and builtin systems.
//!
//! A problem file is line oriented:
//!
//! ```text
//! # Mora's example
//! vars: y x
//! order: degrevlex
//! field: Q
//! setting: ring
//! sig-order: top
//! sig-init: shifted
//! gens:
//! x^2*y^2 - 1
//! y^5 - x^2*y
//! x^5 - x*y^2
//! ```
//!
//! Variables are listed from smallest to largest. `field` is `Q` or
//! `GF p`; `setting` is `ring`, `module R pot|top` or `monoid degmin=D
//! [exclude m, ...]` or `monoid generated m, ...`. `sig-order` and
//! `sig-init` are optional.

use crate::coeff::Field;
use crate::context::Context;
use crate::element::{Element, Term};
use crate::error::{Error, Result};
use crate::monoid::MonoidSpec;
use crate::monomial::Monomial;
use crate::order::{Position, ScalarOrder};
use crate::parse::{element_located, monomial_located, Located};
use crate::sig::{make_prebasis_shifted, make_prebasis_sum, make_prebasis_unshifted, SigSet};
use crate::verify::buchberger;
use std::fmt;
use std::str::FromStr;

/// How input generators receive their signatures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SigInit {
    Shifted,
    Unshifted,
    Sum,
}

impl FromStr for SigInit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "shifted" => Ok(SigInit::Shifted),
            "unshifted" => Ok(SigInit::Unshifted),
            "sum" => Ok(SigInit::Sum),
            _ => Err(Error::InvalidInput(format!("unknown signature init `{s}`"))),
        }
    }
}

impl fmt::Display for SigInit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigInit::Shifted => "shifted",
            SigInit::Unshifted => "unshifted",
            SigInit::Sum => "sum",
        })
    }
}

/// Parses `Q`, `GF p` or `gf:p`.
pub fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rationals);
    }
    let rest = t
        .strip_prefix("GF")
        .or_else(|| t.strip_prefix("gf"))
        .map(|r| r.trim_start_matches(':').trim())
        .ok_or_else(|| Error::InvalidInput(format!("unknown field `{t}`")))?;
    let p: u32 = rest
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad characteristic `{rest}`")))?;
    Field::prime(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidDecl {
    DegMin { min_degree: u32, exclude: Vec<String> },
    Generated(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Setting {
    Ring,
    Module { rank: u32, position: Position },
    Monoid(MonoidDecl),
}

/// A parsed problem; monomials and generators are kept in normalized text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub variables: Vec<String>,
    pub order: ScalarOrder,
    pub field: Field,
    pub setting: Setting,
    pub sig_order: Option<Position>,
    pub sig_init: Option<SigInit>,
    pub generators: Vec<String>,
}

impl ProblemSpec {
    pub fn context(&self) -> Result<Context> {
        let base = Context::new(
            self.variables.clone(),
            crate::order::TermOrder::ring(self.order),
            self.field,
            MonoidSpec::Full,
        )?;
        let n = base.nvars();
        let mono = |s: &String| crate::parse::parse_monomial(s, &base);
        Ok(match &self.setting {
            Setting::Ring => base,
            Setting::Module { rank, position } => base.clone().with_module(*position, *rank),
            Setting::Monoid(MonoidDecl::DegMin {
                min_degree,
                exclude,
            }) => {
                let ex = exclude.iter().map(mono).collect::<Result<Vec<_>>>()?;
                base.clone().with_monoid(MonoidSpec::degree_truncated(n, *min_degree, ex)?)
            }
            Setting::Monoid(MonoidDecl::Generated(gens)) => {
                let gs = gens.iter().map(mono).collect::<Result<Vec<_>>>()?;
                base.clone().with_monoid(MonoidSpec::generated(n, gs)?)
            }
        })
    }

    pub fn elements(&self, ctx: &Context) -> Result<Vec<Element>> {
        self.generators
            .iter()
            .map(|g| crate::parse::parse_element(g, ctx))
            .collect()
    }

    /// The initial sigset. `sum` places the reduced Gröbner basis of the
    /// first generator at `e_1` and that of the others at `e_2`.
    pub fn prebasis(&self, position: Position, init: SigInit) -> Result<SigSet> {
        let ctx = self.context()?;
        let gens = self.elements(&ctx)?;
        match init {
            SigInit::Shifted => make_prebasis_shifted(&ctx, &gens, position),
            SigInit::Unshifted => make_prebasis_unshifted(&ctx, &gens, position),
            SigInit::Sum => {
                let (first, rest) = gens.split_first().map(|(f, r)| (vec![f.clone()], r.to_vec())).unwrap_or_default();
                let g = buchberger(&first, &ctx)?.elements;
                let h = buchberger(&rest, &ctx)?.elements;
                make_prebasis_sum(&ctx, &g, &h, position)
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("vars: {}\n", self.variables.join(" ")));
        out.push_str(&format!("order: {}\n", self.order));
        out.push_str(&format!("field: {}\n", self.field));
        let setting = match &self.setting {
            Setting::Ring => "ring".to_string(),
            Setting::Module { rank, position } => format!("module {rank} {position}"),
            Setting::Monoid(MonoidDecl::DegMin {
                min_degree,
                exclude,
            }) if exclude.is_empty() => format!("monoid degmin={min_degree}"),
            Setting::Monoid(MonoidDecl::DegMin {
                min_degree,
                exclude,
            }) => format!("monoid degmin={min_degree} exclude {}", exclude.join(", ")),
            Setting::Monoid(MonoidDecl::Generated(g)) => format!("monoid generated {}", g.join(", ")),
        };
        out.push_str(&format!("setting: {setting}\n"));
        if let Some(p) = self.sig_order {
            out.push_str(&format!("sig-order: {p}\n"));
        }
        if let Some(i) = self.sig_init {
            out.push_str(&format!("sig-init: {i}\n"));
        }
        out.push_str("gens:\n");
        for g in &self.generators {
            out.push_str(g);
            out.push('\n');
        }
        out
    }
}

struct Header<'a> {
    line: usize,
    value: &'a str,
    offset: usize,
}

fn located(line: usize, offset: usize) -> impl Fn(Located) -> Error {
    move |l| l.at_line(line, offset)
}

/// Parses a problem file, reporting errors with line and column.
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let mut fields: Vec<(&str, Header)> = Vec::new();
    let mut gens: Vec<(usize, &str, usize)> = Vec::new();
    let mut in_gens = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        if in_gens {
            gens.push((line, trimmed, lead));
            continue;
        }
        let Some((key, value)) = trimmed.split_once(':') else {
            return Err(Error::parse(line, lead + 1, "expected `key: value`"));
        };
        let key = key.trim();
        if key == "gens" {
            if !value.trim().is_empty() {
                return Err(Error::parse(line, lead + key.len() + 2, "generators go on the following lines"));
            }
            in_gens = true;
            continue;
        }
        if !["vars", "order", "field", "setting", "sig-order", "sig-init"].contains(&key) {
            return Err(Error::parse(line, lead + 1, format!("unknown key `{key}`")));
        }
        if fields.iter().any(|(k, _)| *k == key) {
            return Err(Error::parse(line, lead + 1, format!("duplicate key `{key}`")));
        }
        let vstart = trimmed.len() - value.len();
        let voff = lead + vstart + (value.len() - value.trim_start().len());
        fields.push((
            key,
            Header {
                line,
                value: value.trim(),
                offset: voff,
            },
        ));
    }
    let get = |k: &str| fields.iter().find(|(key, _)| *key == k).map(|(_, h)| h);
    let need = |k: &str| get(k).ok_or_else(|| Error::parse(1, 1, format!("missing `{k}:` line")));
    let bad = |h: &Header, msg: String| Error::parse(h.line, h.offset + 1, msg);

    let h = need("vars")?;
    let variables: Vec<String> = h.value.split_whitespace().map(String::from).collect();
    let h = need("order")?;
    let order: ScalarOrder = h.value.parse().map_err(|e: Error| bad(h, e.to_string()))?;
    let field = match get("field") {
        None => Field::Rationals,
        Some(h) => parse_field(h.value).map_err(|e| bad(h, e.to_string()))?,
    };
    let ring = Context::new(
        variables.clone(),
        crate::order::TermOrder::ring(order),
        field,
        MonoidSpec::Full,
    )
    .map_err(|e| bad(need("vars").unwrap(), e.to_string()))?;
    let setting = match get("setting") {
        None => Setting::Ring,
        Some(h) => parse_setting(h, &ring)?,
    };
    let sig_order = get("sig-order")
        .map(|h| h.value.parse().map_err(|e: Error| bad(h, e.to_string())))
        .transpose()?;
    let sig_init = get("sig-init")
        .map(|h| h.value.parse().map_err(|e: Error| bad(h, e.to_string())))
        .transpose()?;
    let mut spec = ProblemSpec {
        variables,
        order,
        field,
        setting,
        sig_order,
        sig_init,
        generators: Vec::new(),
    };
    let ctx = spec.context()?;
    for (line, g, lead) in gens {
        let e = element_located(g, &ctx).map_err(located(line, lead))?;
        spec.generators.push(e.display(&ctx.vars).to_string());
    }
    Ok(spec)
}

fn parse_setting(h: &Header, ring: &Context) -> Result<Setting> {
    let v = h.value;
    let bad = |msg: &str| Error::parse(h.line, h.offset + 1, msg.to_string());
    let mut words = v.split_whitespace();
    match words.next() {
        Some("ring") if words.next().is_none() => Ok(Setting::Ring),
        Some("module") => {
            let rank: u32 = words
                .next()
                .and_then(|r| r.parse().ok())
                .filter(|&r| r >= 1)
                .ok_or_else(|| bad("module rank must be a positive integer"))?;
            let position = match words.next() {
                None => Position::Pot,
                Some(p) => p.parse().map_err(|_| bad("module order is `pot` or `top`"))?,
            };
            if words.next().is_some() {
                return Err(bad("trailing input after the module order"));
            }
            Ok(Setting::Module { rank, position })
        }
        Some("monoid") => {
            let rest = v["monoid".len()..].trim_start();
            let rest_off = h.offset + (v.len() - rest.len());
            let monos = |list: &str, off: usize| -> Result<Vec<String>> {
                let mut out = Vec::new();
                let mut col = off;
                for part in list.split(',') {
                    let lead = part.len() - part.trim_start().len();
                    let m = monomial_located(part.trim(), ring).map_err(located(h.line, col + lead))?;
                    out.push(m.display(&ring.vars).to_string());
                    col += part.len() + 1;
                }
                Ok(out)
            };
            if let Some(d) = rest.strip_prefix("degmin=") {
                let (num, excl) = match d.split_once("exclude") {
                    Some((n, e)) => (n.trim(), Some(e)),
                    None => (d.trim(), None),
                };
                let min_degree: u32 = num.parse().map_err(|_| bad("degmin needs an integer"))?;
                let exclude = match excl {
                    None => Vec::new(),
                    Some(e) => monos(e, rest_off + (rest.len() - e.len()))?,
                };
                Ok(Setting::Monoid(MonoidDecl::DegMin {
                    min_degree,
                    exclude,
                }))
            } else if let Some(g) = rest.strip_prefix("generated") {
                Ok(Setting::Monoid(MonoidDecl::Generated(monos(g, rest_off + (rest.len() - g.len()))?)))
            } else {
                Err(bad("monoid is `degmin=D [exclude ...]` or `generated ...`"))
            }
        }
        _ => Err(bad("setting is `ring`, `module R pot|top` or `monoid ...`")),
    }
}

/// Names of the builtin systems.
pub fn builtin_names() -> Vec<String> {
    let mut v = vec!["mora".to_string()];
    v.extend((3..=8).map(|n| format!("katsura{n}")));
    v
}

/// `mora` or `katsuraN` for 3 ≤ N ≤ 8.
pub fn builtin(name: &str) -> Result<ProblemSpec> {
    let name = name.to_ascii_lowercase().replace(' ', "");
    if name == "mora" {
        return parse_problem(MORA);
    }
    if let Some(n) = name.strip_prefix("katsura").and_then(|n| n.parse::<usize>().ok()) {
        return katsura(n);
    }
    Err(Error::InvalidInput(format!(
        "unknown builtin `{name}`; known: {}",
        builtin_names().join(", ")
    )))
}

const MORA: &str = "vars: y x
order: degrevlex
field: Q
setting: ring
gens:
x^2*y^2 - 1
y^5 - x^2*y
x^5 - x*y^2
";

/// Katsura-n over ℚ[u₀ > u₁ > … > u_{n−1}], variables named `a, b, …`:
/// the linear equation `Σ_{|i|<n} u_i = 1`, then for m = n−2 down to 0 the
/// equations `Σ_i u_i·u_{m−i} = u_m` (with `u_{−i} = u_i`), halved when m
/// is odd.
pub fn katsura(n: usize) -> Result<ProblemSpec> {
    if !(3..=8).contains(&n) {
        return Err(Error::InvalidInput(format!("katsura needs 3 ≤ n ≤ 8, got {n}")));
    }
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut variables = names.clone();
    variables.reverse();
    let ctx = Context::new(
        variables.clone(),
        crate::order::TermOrder::ring(ScalarOrder::DegRevLex),
        Field::Rationals,
        MonoidSpec::Full,
    )?;
    let q = Field::Rationals;
    // u_i is declared at position n − 1 − i.
    let var = |i: usize| Monomial::var(n, n - 1 - i);
    let one = Monomial::one(n);
    let mut gens = Vec::new();
    let mut lin = vec![Term {
        mono: one.clone(),
        coeff: q.from_i64(-1),
    }];
    for i in 0..n {
        lin.push(Term {
            mono: var(i),
            coeff: q.from_i64(if i == 0 { 1 } else { 2 }),
        });
    }
    gens.push(Element::from_terms(lin, &ctx.order));
    for m in (0..n - 1).rev() {
        let mut terms = vec![Term {
            mono: var(m),
            coeff: q.from_i64(-1),
        }];
        for i in -(n as i64 - 1)..=(n as i64 - 1) {
            let j = m as i64 - i;
            if j.unsigned_abs() as usize >= n {
                continue;
            }
            terms.push(Term {
                mono: var(i.unsigned_abs() as usize).mul(&var(j.unsigned_abs() as usize)),
                coeff: q.from_i64(1),
            });
        }
        let mut f = Element::from_terms(terms, &ctx.order);
        if m % 2 == 1 {
            f = f.scale(&q.parse("1/2")?);
        }
        gens.push(f);
    }
    Ok(ProblemSpec {
        variables,
        order: ScalarOrder::DegRevLex,
        field: Field::Rationals,
        setting: Setting::Ring,
        sig_order: None,
        sig_init: None,
        generators: gens.iter().map(|g| g.display(&ctx.vars).to_string()).collect(),
    })
}
