//! Elements of the infinite dihedral group `<r, s | s r s = r^-1, s^2 = e>`
//! in the normal form `r^shift * s^flip`.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::word::split_token;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub shift: i64,
    pub flip: bool,
}

impl DihedralElement {
    pub fn identity() -> Self {
        DihedralElement {
            shift: 0,
            flip: false,
        }
    }

    pub fn rotation(shift: i64) -> Self {
        DihedralElement { shift, flip: false }
    }

    pub fn reflection(shift: i64) -> Self {
        DihedralElement { shift, flip: true }
    }

    /// (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b xor d).
    pub fn mul(&self, rhs: &DihedralElement) -> DihedralElement {
        let signed = if self.flip { -rhs.shift } else { rhs.shift };
        DihedralElement {
            shift: self
                .shift
                .checked_add(signed)
                .expect("dihedral shift overflow"),
            flip: self.flip ^ rhs.flip,
        }
    }

    /// Rotations invert their shift; reflections are involutions.
    pub fn inverse(&self) -> DihedralElement {
        if self.flip {
            *self
        } else {
            DihedralElement {
                shift: -self.shift,
                flip: false,
            }
        }
    }

    /// Tokens over `r` and `s` with the word exponent syntax, e.g. `r^-2 s`.
    pub fn parse(input: &str) -> Result<Self> {
        let mut acc = DihedralElement::identity();
        for token in input.split_whitespace() {
            if token == "e" {
                continue;
            }
            let (name, exponent) = split_token(token)?;
            let factor = match name {
                "r" => DihedralElement::rotation(exponent),
                "s" => {
                    if exponent.rem_euclid(2) == 0 {
                        DihedralElement::identity()
                    } else {
                        DihedralElement::reflection(0)
                    }
                }
                other => {
                    return Err(Error::Malformed {
                        token: token.to_string(),
                        reason: format!("unknown dihedral generator `{other}`"),
                    })
                }
            };
            acc = acc.mul(&factor);
        }
        Ok(acc)
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.shift, self.flip) {
            (0, false) => write!(f, "e"),
            (0, true) => write!(f, "s"),
            (1, false) => write!(f, "r"),
            (1, true) => write!(f, "r s"),
            (k, false) => write!(f, "r^{k}"),
            (k, true) => write!(f, "r^{k} s"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_times_r_is_r_inverse_s() {
        let s = DihedralElement::reflection(0);
        let r = DihedralElement::rotation(1);
        assert_eq!(s.mul(&r), DihedralElement::reflection(-1));
        // normal form of s r is r^-1 s
        assert_eq!(s.mul(&r).to_string(), "r^-1 s");
    }

    #[test]
    fn reflections_have_order_two() {
        for a in -6..=6 {
            let refl = DihedralElement::reflection(a);
            assert_eq!(refl.mul(&refl), DihedralElement::identity());
            assert_eq!(refl.inverse(), refl);
        }
    }

    #[test]
    fn rotation_inverse() {
        let r3 = DihedralElement::rotation(3);
        assert_eq!(r3.mul(&r3.inverse()), DihedralElement::identity());
    }

    #[test]
    fn parse_normalizes() {
        // s r^-1 = r s
        assert_eq!(
            DihedralElement::parse("s r^-1").unwrap(),
            DihedralElement::parse("r s").unwrap()
        );
        assert_eq!(
            DihedralElement::parse("s^2").unwrap(),
            DihedralElement::identity()
        );
        assert_eq!(
            DihedralElement::parse("e").unwrap(),
            DihedralElement::identity()
        );
    }

    #[test]
    fn display_round_trips() {
        for shift in -3..=3 {
            for flip in [false, true] {
                let el = DihedralElement { shift, flip };
                assert_eq!(DihedralElement::parse(&el.to_string()).unwrap(), el);
            }
        }
    }

    #[test]
    #[should_panic(expected = "dihedral shift overflow")]
    fn shift_overflow_fails_loudly() {
        let huge = DihedralElement::rotation(i64::MAX);
        let _ = huge.mul(&DihedralElement::rotation(1));
    }
}
