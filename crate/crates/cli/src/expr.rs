//! Burnside ring literals: `1(G) - 2(D4 ^Z1 x^Z4d D8p) + (D1 x D8p)#2`.

use o2deg::burnside::BurnsideElement;
use o2deg::o2_lattice::{OrbitType, SymmetryGroup};

use crate::CliError;

pub fn parse_element(g: &SymmetryGroup, text: &str) -> Result<BurnsideElement<OrbitType>, CliError> {
    let bad = |msg: &str| CliError::validation("burnside", format!("cannot parse '{text}': {msg}"));
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = BurnsideElement::zero();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if chars[i..].iter().collect::<String>() == "0" {
        return Ok(out);
    }
    let mut first = true;
    while i < chars.len() {
        let mut sign = 1;
        if chars[i] == '+' || chars[i] == '-' {
            sign = if chars[i] == '-' { -1 } else { 1 };
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(bad("expected '+' or '-' between terms"));
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: i64 = if start == i {
            1
        } else {
            chars[start..i].iter().collect::<String>().parse().map_err(|_| bad("coefficient overflow"))?
        };
        skip_ws(&mut i);
        if i >= chars.len() || chars[i] != '(' {
            return Err(bad("expected '('"));
        }
        let open = i;
        while i < chars.len() && chars[i] != ')' {
            i += 1;
        }
        if i == chars.len() {
            return Err(bad("unbalanced parenthesis"));
        }
        i += 1;
        if i < chars.len() && chars[i] == '#' {
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
        }
        let name: String = chars[open..i].iter().collect();
        out.add(g.parse(&name)?, sign * coeff);
        first = false;
        skip_ws(&mut i);
    }
    if first {
        return Err(bad("empty expression"));
    }
    Ok(out)
}
