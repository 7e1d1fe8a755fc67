//! The recall lemmas as instance templates, and the rank one formula.

use super::{CohomologyError, GroupType, Suite};
use crate::braid::{CompletedBraidElt, Token};
use crate::rings::BiPoly;

/// Rule names accepted by [`apply_rappel`]. `rappel.i` takes `x` and `y`; the others take `y`.
pub const RULES: &[&str] = &[
    "rappel.i",
    "rappel.ii",
    "rappel.iii",
    "rappel.iv",
    "rappel.v",
    "rappelA2.i",
    "rappelA2.ii",
    "rappelA2.iii",
    "rappelA2.iv",
    "rappelB2.i",
    "rappelB2.ii",
    "rappelB2.iii",
    "rappelG2.i",
    "rappelG2.ii",
    "rappelG2.iii",
    "rappelG2.iv",
    "rappelG2.v",
];

fn template(ty: GroupType, rule: &str) -> Option<&'static str> {
    let family = ty.coxeter_preset();
    Some(match rule {
        "rappel.ii" => "H(_s _t Y) = H(_st Y)",
        "rappel.iii" => "H(s _s Y) = h^2*t*H(_s Y)",
        "rappel.iv" => "H(_s _s Y) = (h^2*t + 1)*H(_s Y)",
        "rappel.v" => match family {
            "A2" => "H(_sts Y) = 0",
            "B2" => "H(_stst Y) = 0",
            _ => "H(_ststst Y) = 0",
        },
        "rappelA2.i" if family == "A2" => "H(_s _t _s Y) = h^2*t*H(_s Y)",
        "rappelA2.ii" if family == "A2" => "H(_t s _t Y) = h*H(_t Y)",
        "rappelA2.iii" if family == "A2" => "H(_s t s Y) = h*H(_s _t Y)",
        "rappelB2.i" if family == "B2" => "H(_s t s t Y) = h*H(_sts Y)",
        "rappelB2.ii" if family == "B2" => "H(_t _sts Y) = h^2*t*H(_t _s Y)",
        "rappelB2.iii" if family == "B2" => "H(_s _t _s Y) = h^2*t*H(_s Y) + H(_sts Y)",
        "rappelG2.i" if family == "G2" => "H(_s t s t s t Y) = h*H(_ststs Y)",
        "rappelG2.ii" if family == "G2" => "H(_s _ts Y) = H(_sts Y) + h^2*t*H(_s Y)",
        "rappelG2.iii" if family == "G2" => "H(_t _sts Y) = H(_tsts Y) + h^2*t*H(_ts Y)",
        "rappelG2.iv" if family == "G2" => "H(_s _tsts Y) = H(_ststs Y) + h^2*t*H(_sts Y)",
        "rappelG2.v" if family == "G2" => "H(_t _ststs Y) = h^2*t*H(_tsts Y)",
        _ => return None,
    })
}

/// Exchanges `s` and `t` inside the `H(...)` arguments only.
fn swap_letters(src: &str) -> String {
    let mut out = String::new();
    let mut inside = false;
    let mut prev = ' ';
    for c in src.chars() {
        match c {
            '(' if prev == 'H' => inside = true,
            ')' => inside = false,
            _ => {}
        }
        out.push(match c {
            's' if inside => 't',
            't' if inside => 's',
            c => c,
        });
        prev = c;
    }
    out
}

fn join(parts: &[&str]) -> String {
    let v: Vec<&str> = parts.iter().map(|p| p.trim()).filter(|p| !p.is_empty() && *p != "1").collect();
    if v.is_empty() {
        "1".into()
    } else {
        v.join(" ")
    }
}

/// Instantiates a recall rule as a one-line suite.
///
/// `pieces` is `[x, y]` for `rappel.i` and `[y]` otherwise. With `swapped` the
/// roles of `s` and `t` in the rule (not in the pieces) are exchanged.
pub fn apply_rappel(ty: GroupType, rule: &str, pieces: &[&str], swapped: bool) -> Result<Suite, CohomologyError> {
    let data = ty.data();
    let m = data.monoid();
    let unknown = || CohomologyError::UnknownRule(rule.to_string());
    let text = match (rule, pieces) {
        ("rappel.i", [x, y]) => {
            let xc = m.parse_completed(x).map_err(CohomologyError::from)?;
            let fx = CompletedBraidElt::new(
                xc.tokens().iter().map(|t| Token { elt: data.sys.apply_auto(&data.f, t.elt), ..*t }),
            );
            let fx = m.format_completed(&fx);
            format!("H({}) = H({})", join(&[x, y]), join(&[y, &fx]))
        }
        ("rappelA2.iv", [y]) if ty.coxeter_preset() == "A2" => {
            let yc = m.parse_completed(y).map_err(CohomologyError::from)?;
            let swap = data.sys.swap_auto().map_err(|_| unknown())?;
            let sy = CompletedBraidElt::new(
                yc.tokens().iter().map(|t| Token { elt: data.sys.apply_auto(&swap, t.elt), ..*t }),
            );
            format!("H({}) = H({})", join(&[y]), join(&[&m.format_completed(&sy)]))
        }
        (_, [y]) => {
            let t = template(ty, rule).ok_or_else(unknown)?;
            let t = if swapped { swap_letters(t) } else { t.to_string() };
            let y = y.trim();
            if y.is_empty() || y == "1" {
                t.replace(" Y)", ")")
            } else {
                t.replace(" Y)", &format!(" {y})"))
            }
        }
        _ => return Err(unknown()),
    };
    Suite::parse(ty, &format!("{rule} | {text}"))
}

/// Rank one: `H(s^n)` has trivial part `(h²t)^n` and Steinberg part `h^n`.
pub fn rank1_h(n: u32) -> (BiPoly, BiPoly) {
    (BiPoly::h2t_pow(n as i32), BiPoly::monomial(1, 0, n as i32, false))
}
