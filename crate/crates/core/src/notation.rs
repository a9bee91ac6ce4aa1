//! Symbolic generator formulas and the translation between the left Leibniz
//! notation and the noncommutative phase-space notation.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    LeftLeibniz,
    PhaseSpace,
}

/// Symbols that change under the convention adapter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sym {
    /// `x̃`
    Xt,
    /// `x̃^op_θ`
    XopTheta,
    /// `x̃^op_φ`
    XopPhi,
    /// `Ḡ`
    Gbar,
    /// `G`
    G,
    /// `τ`
    Tau,
    /// `ŷ`
    Yhat,
    /// `x̂`
    Xhat,
    /// `ẑ`
    Zhat,
    /// `O`
    O,
    /// `Ō`
    Obar,
    /// `𝒮`
    S,
    /// `C`, the structure constants; the adapter flips their sign.
    C,
}

impl Sym {
    fn convention(self) -> Option<Convention> {
        use Sym::*;
        match self {
            Xt | XopTheta | XopPhi | Gbar | G | Tau => Some(Convention::LeftLeibniz),
            Yhat | Xhat | Zhat | O | Obar | S => Some(Convention::PhaseSpace),
            C => None,
        }
    }

    fn counterpart(self) -> Sym {
        use Sym::*;
        match self {
            Xt => Yhat,
            XopTheta => Xhat,
            XopPhi => Zhat,
            Gbar => O,
            G => Obar,
            Tau => S,
            Yhat => Xt,
            Xhat => XopTheta,
            Zhat => XopPhi,
            O => Gbar,
            Obar => G,
            S => Tau,
            C => C,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tok {
    /// A symbol with an upper and a lower index (either may be empty).
    Sym {
        sym: Sym,
        sup: String,
        sub: String,
    },
    /// `♯1` closing a scalar term inside the smash product; omitted in
    /// phase-space notation.
    UnitLeg,
    Text(String),
}

impl Tok {
    pub fn sym(sym: Sym, sup: &str, sub: &str) -> Tok {
        Tok::Sym {
            sym,
            sup: sup.into(),
            sub: sub.into(),
        }
    }

    pub fn text(s: &str) -> Tok {
        Tok::Text(s.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub negative: bool,
    pub toks: Vec<Tok>,
}

impl Term {
    pub fn new(negative: bool, toks: Vec<Tok>) -> Self {
        Term { negative, toks }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    pub convention: Convention,
    pub lhs: Vec<Tok>,
    pub rhs: Vec<Term>,
}

fn wrap_index(s: &str) -> String {
    if s.chars().count() <= 1 {
        s.to_string()
    } else {
        format!("{{{s}}}")
    }
}

fn render_tok(t: &Tok, conv: Convention, out: &mut String) {
    match t {
        Tok::Text(s) => out.push_str(s),
        Tok::UnitLeg => {
            if conv == Convention::LeftLeibniz {
                out.push_str("♯1");
            }
        }
        Tok::Sym { sym, sup, sub } => {
            let (base, extra_sub) = match sym {
                Sym::Xt => ("x̃", ""),
                Sym::XopTheta => ("x̃", "θ"),
                Sym::XopPhi => ("x̃", "φ"),
                Sym::Gbar => ("Ḡ", ""),
                Sym::G => ("G", ""),
                Sym::Tau => ("τ", ""),
                Sym::Yhat => ("ŷ", ""),
                Sym::Xhat => ("x̂", ""),
                Sym::Zhat => ("ẑ", ""),
                Sym::O => ("O", ""),
                Sym::Obar => ("Ō", ""),
                Sym::S => ("𝒮", ""),
                Sym::C => ("C", ""),
            };
            out.push_str(base);
            if matches!(sym, Sym::XopTheta | Sym::XopPhi) {
                out.push_str("^op");
            } else if !sup.is_empty() {
                out.push('^');
                out.push_str(&wrap_index(sup));
            }
            let sub = format!("{sub}{extra_sub}");
            if !sub.is_empty() {
                out.push('_');
                out.push_str(&wrap_index(&sub));
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for t in &self.lhs {
            render_tok(t, self.convention, &mut s);
        }
        s.push_str(" = ");
        if self.rhs.is_empty() {
            s.push('0');
        }
        for (k, term) in self.rhs.iter().enumerate() {
            match (k, term.negative) {
                (0, true) => s.push('−'),
                (0, false) => {}
                (_, true) => s.push_str(" − "),
                (_, false) => s.push_str(" + "),
            }
            for t in &term.toks {
                render_tok(t, self.convention, &mut s);
            }
        }
        f.write_str(&s)
    }
}

fn translate_toks(toks: &[Tok], from: Convention) -> Result<(Vec<Tok>, usize)> {
    let mut flips = 0;
    let mut out = Vec::with_capacity(toks.len());
    for t in toks {
        match t {
            Tok::Sym { sym, sup, sub } => {
                if let Some(c) = sym.convention() {
                    if c != from {
                        return Err(Error::UnknownSymbol(format!("{sym:?} in a {from:?} formula")));
                    }
                }
                if *sym == Sym::C {
                    flips += 1;
                }
                out.push(Tok::Sym {
                    sym: sym.counterpart(),
                    sup: sup.clone(),
                    sub: sub.clone(),
                });
            }
            other => out.push(other.clone()),
        }
    }
    Ok((out, flips))
}

/// Applies the symbol substitution `ŷ↔x̃, x̂↔x̃^op_θ, ẑ↔x̃^op_φ, O↔Ḡ, Ō↔G,
/// C↔−C, 𝒮↔τ` in the direction away from the formula's convention.
pub fn convention_adapter(f: &Formula) -> Result<Formula> {
    let target = match f.convention {
        Convention::LeftLeibniz => Convention::PhaseSpace,
        Convention::PhaseSpace => Convention::LeftLeibniz,
    };
    let (lhs, lhs_flips) = translate_toks(&f.lhs, f.convention)?;
    if lhs_flips > 0 {
        return Err(Error::UnknownSymbol("structure constants on the left-hand side".into()));
    }
    let mut rhs = Vec::with_capacity(f.rhs.len());
    for term in &f.rhs {
        let (toks, flips) = translate_toks(&term.toks, f.convention)?;
        rhs.push(Term {
            negative: term.negative ^ (flips % 2 == 1),
            toks,
        });
    }
    Ok(Formula {
        convention: target,
        lhs,
        rhs,
    })
}

/// `∑_i C^i_{ij}`.
pub fn trace_toks() -> Vec<Tok> {
    vec![Tok::text("∑_i "), Tok::sym(Sym::C, "i", "ij")]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta_r() -> Formula {
        Formula {
            convention: Convention::LeftLeibniz,
            lhs: vec![Tok::text("β_R("), Tok::sym(Sym::Xt, "", "j"), Tok::text(")")],
            rhs: vec![Term::new(
                false,
                vec![
                    Tok::text("∑_i "),
                    Tok::sym(Sym::Gbar, "i", "j"),
                    Tok::text("♯"),
                    Tok::sym(Sym::Xt, "", "i"),
                ],
            )],
        }
    }

    #[test]
    fn renders_and_translates() {
        let f = beta_r();
        assert_eq!(f.to_string(), "β_R(x̃_j) = ∑_i Ḡ^i_j♯x̃_i");
        let g = convention_adapter(&f).unwrap();
        assert_eq!(g.to_string(), "β_R(ŷ_j) = ∑_i O^i_j♯ŷ_i");
        assert_eq!(convention_adapter(&g).unwrap(), f);
    }

    #[test]
    fn structure_constants_flip_sign_and_unit_leg_drops() {
        let mut toks = trace_toks();
        toks.push(Tok::UnitLeg);
        let f = Formula {
            convention: Convention::LeftLeibniz,
            lhs: vec![Tok::sym(Sym::XopTheta, "", "j")],
            rhs: vec![Term::new(true, toks)],
        };
        assert_eq!(f.to_string(), "x̃^op_{jθ} = −∑_i C^i_{ij}♯1");
        let g = convention_adapter(&f).unwrap();
        assert_eq!(g.to_string(), "x̂_j = ∑_i C^i_{ij}");
        assert_eq!(convention_adapter(&g).unwrap(), f);
    }

    #[test]
    fn foreign_symbols_are_rejected() {
        let mut f = beta_r();
        f.rhs[0].toks.push(Tok::sym(Sym::O, "", ""));
        assert!(matches!(convention_adapter(&f), Err(Error::UnknownSymbol(_))));
    }
}
