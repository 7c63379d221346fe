//! Family parameters from flags, and the instance they build.

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;

use semifield_core::bilinear::Bilinear;
use semifield_core::families::{
    a_product, make_a, make_b, make_c, make_dickson, make_hughes_kleinfeld, make_twisted, make_x,
    twisted_product, x_product, FamilyError, Presemifield, XParams,
};
use semifield_core::field::{Element, FieldCtx};
use semifield_core::tower::Tower;

use crate::InstanceArgs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Field,
    Twisted,
    A,
    X,
    B,
    C,
    Dickson,
    HughesKleinfeld,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "field" => Family::Field,
            "twisted" => Family::Twisted,
            "a" => Family::A,
            "x" => Family::X,
            "b" => Family::B,
            "c" => Family::C,
            "dickson" => Family::Dickson,
            "hk" | "hughes-kleinfeld" | "hughes_kleinfeld" => Family::HughesKleinfeld,
            other => bail!("unknown family {other:?}"),
        })
    }
}

/// `g^k`, `[c0,c1,...]` or an integer.
pub fn parse_element(ctx: &FieldCtx, text: &str) -> Result<Element> {
    let t = text.trim();
    if let Some(k) = t.strip_prefix("g^") {
        let k: u64 = k
            .parse()
            .with_context(|| format!("bad exponent in {t:?}"))?;
        return Ok(ctx.gen_pow(k));
    }
    if let Some(body) = t.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
        let coeffs = body
            .split(',')
            .filter(|c| !c.trim().is_empty())
            .map(|c| c.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .with_context(|| format!("bad coefficient list {t:?}"))?;
        return ctx.element(&coeffs).map_err(|e| anyhow!("{e}"));
    }
    let k: i64 = t
        .parse()
        .with_context(|| format!("cannot read {t:?} as an element"))?;
    Ok(ctx.from_int(k))
}

/// The element `g^{(q-1)/k}`, of order exactly `k`.
pub fn element_of_order(ctx: &FieldCtx, k: u64) -> Result<Element> {
    let q1 = ctx.order() - 1;
    if k == 0 || q1 % k != 0 {
        bail!("no element of order {k} in a group of order {q1}");
    }
    Ok(ctx.gen_pow(q1 / k))
}

#[derive(Clone, Debug, Default)]
pub struct RawParams {
    pub l: Option<Element>,
    pub n: Option<Element>,
    pub big_n: Option<Element>,
    pub r: Option<Element>,
    pub v: Option<Element>,
    pub mu: Option<Element>,
}

pub struct Setting {
    pub family: Family,
    pub tower: Tower,
    pub params: RawParams,
}

fn need(x: &Option<Element>, name: &str) -> Result<Element> {
    x.clone()
        .ok_or_else(|| anyhow!("--{name} is required for this family"))
}

impl Setting {
    pub fn from_args(a: &InstanceArgs) -> Result<Setting> {
        let family = Family::parse(
            a.family
                .as_deref()
                .ok_or_else(|| anyhow!("--family is required"))?,
        )?;
        let tower = Tower::new(a.p, a.m, a.s).map_err(|e| anyhow!("{e}"))?;
        let l_ctx = tower.l();
        let el = |x: &Option<String>| x.as_deref().map(|t| parse_element(l_ctx, t)).transpose();
        let mut params = RawParams {
            l: el(&a.l)?,
            n: el(&a.n)?,
            big_n: el(&a.big_n)?,
            r: el(&a.r)?,
            v: el(&a.v)?,
            mu: a
                .mu
                .as_deref()
                .map(|t| parse_element(tower.f(), t))
                .transpose()?,
        };
        if let Some(k) = a.l_order {
            params.l = Some(element_of_order(l_ctx, k)?);
        }
        if let Some(k) = a.r_order {
            params.r = Some(element_of_order(l_ctx, k)?);
        }
        Ok(Setting {
            family,
            tower,
            params,
        })
    }

    fn x_params(&self) -> Result<XParams> {
        let k = self.tower.l();
        let p = &self.params;
        Ok(match self.family {
            Family::X => XParams {
                v: need(&p.v, "v")?,
                l: need(&p.l, "l")?,
                n: need(&p.n, "n")?,
                big_n: need(&p.big_n, "N")?,
            },
            Family::B => XParams {
                v: k.one(),
                l: need(&p.l, "l")?,
                n: need(&p.n, "n")?,
                big_n: need(&p.big_n, "N")?,
            },
            Family::C => {
                let r = need(&p.r, "R")?;
                XParams {
                    v: k.zero(),
                    l: need(&p.l, "l")?,
                    n: k.one(),
                    big_n: k.neg(&r),
                }
            }
            _ => bail!("not a member of X, B or C"),
        })
    }

    /// Builds the instance; `Err(Ok(_))` is a parameter choice the family rejects.
    pub fn build(&self) -> Result<Result<Presemifield, FamilyError>> {
        let tw = &self.tower;
        let p = &self.params;
        Ok(match self.family {
            Family::Field => Ok(Presemifield::field(tw.l())),
            Family::Twisted => make_twisted(tw.l(), &need(&p.l, "l")?, tw.s()),
            Family::A => make_a(tw, &need(&p.l, "l")?, &need(&p.mu, "mu")?),
            Family::X => make_x(tw, &self.x_params()?),
            Family::B => make_b(
                tw,
                &need(&p.l, "l")?,
                &need(&p.n, "n")?,
                &need(&p.big_n, "N")?,
            ),
            Family::C => make_c(tw, &need(&p.l, "l")?, &need(&p.r, "R")?),
            Family::Dickson => make_dickson(tw, tw.s()),
            Family::HughesKleinfeld => make_hughes_kleinfeld(tw, &need(&p.l, "l")?),
        })
    }

    /// The defining product without any validity check, where the family has one.
    pub fn raw_product(&self) -> Result<Option<Bilinear>> {
        let tw = &self.tower;
        let p = &self.params;
        Ok(match self.family {
            Family::Twisted => Some(twisted_product(tw.l(), &need(&p.l, "l")?, tw.s())),
            Family::A => Some(a_product(tw, &need(&p.l, "l")?, &need(&p.mu, "mu")?)),
            Family::X | Family::B | Family::C => Some(x_product(tw.l(), tw.s(), &self.x_params()?)),
            _ => None,
        })
    }
}
