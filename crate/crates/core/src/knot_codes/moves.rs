//! Reidemeister I and II insertions, and seeded random perturbations built
//! from them.

use std::fmt;

use rand::Rng;

use super::{CodeError, GaussCode, RawPassage, Role, Sign};
use crate::realizability::is_planar;

/// How the second strand of a Reidemeister II pair runs relative to the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum R2Case {
    /// Both strands traverse the bigon in the same direction:
    /// `O a, O b` ... `U a, U b`.
    Parallel { first_sign: Sign },
    /// The strands traverse the bigon in opposite directions:
    /// `O a, O b` ... `U b, U a`.
    Antiparallel { first_sign: Sign },
}

impl R2Case {
    pub fn first_sign(self) -> Sign {
        match self {
            R2Case::Parallel { first_sign } | R2Case::Antiparallel { first_sign } => first_sign,
        }
    }
}

impl fmt::Display for R2Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            R2Case::Parallel { first_sign } => write!(f, "parallel({})", first_sign.value()),
            R2Case::Antiparallel { first_sign } => write!(f, "antiparallel({})", first_sign.value()),
        }
    }
}

fn check_position(position: usize, len: usize) -> Result<(), CodeError> {
    if position > len {
        Err(CodeError::IndexOutOfRange { position, len })
    } else {
        Ok(())
    }
}

/// Inserts a kink: two adjacent passages of one fresh crossing at `position`.
pub fn apply_r1(code: &GaussCode, position: usize, sign: Sign, first_role: Role) -> Result<GaussCode, CodeError> {
    check_position(position, code.len())?;
    let label = code.fresh_label(&[]);
    let mut raw = code.to_raw();
    raw.splice(
        position..position,
        [RawPassage::new(label.clone(), first_role, sign), RawPassage::new(label, first_role.flip(), sign)],
    );
    Ok(GaussCode::from_raw(&raw).expect("kink insertion preserves validity"))
}

/// Inserts a Reidemeister II pair of fresh crossings `a`, `b` with opposite
/// signs. The strand at `position_a` passes over both; the strand at
/// `position_b` passes under both.
pub fn apply_r2(code: &GaussCode, position_a: usize, position_b: usize, case: R2Case) -> Result<GaussCode, CodeError> {
    check_position(position_a, code.len())?;
    check_position(position_b, code.len())?;
    if position_a > position_b {
        return Err(CodeError::PositionsOutOfOrder(position_a, position_b));
    }
    if matches!(case, R2Case::Parallel { .. }) && position_a == position_b {
        return Err(CodeError::UnsupportedOrientationCase(case.to_string()));
    }
    let a = code.fresh_label(&[]);
    let b = code.fresh_label(std::slice::from_ref(&a));
    let sa = case.first_sign();
    let sb = sa.negate();
    let under = match case {
        R2Case::Parallel { .. } => {
            [RawPassage::new(a.clone(), Role::Under, sa), RawPassage::new(b.clone(), Role::Under, sb)]
        }
        R2Case::Antiparallel { .. } => {
            [RawPassage::new(b.clone(), Role::Under, sb), RawPassage::new(a.clone(), Role::Under, sa)]
        }
    };
    let mut raw = code.to_raw();
    raw.splice(position_b..position_b, under);
    raw.splice(position_a..position_a, [RawPassage::new(a, Role::Over, sa), RawPassage::new(b, Role::Over, sb)]);
    Ok(GaussCode::from_raw(&raw).expect("R2 insertion preserves validity"))
}

fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen::<bool>() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

pub fn random_r1<R: Rng + ?Sized>(code: &GaussCode, rng: &mut R) -> GaussCode {
    let position = rng.gen_range(0..=code.len());
    let role = if rng.gen::<bool>() { Role::Over } else { Role::Under };
    apply_r1(code, position, random_sign(rng), role).expect("position in range")
}

/// Tries up to `attempts` random R2 insertions and returns the first whose
/// result is still a planar diagram. For a planar input such a result
/// presents the same knot.
pub fn random_r2_classical<R: Rng + ?Sized>(code: &GaussCode, rng: &mut R, attempts: usize) -> Option<GaussCode> {
    for _ in 0..attempts {
        let mut a = rng.gen_range(0..=code.len());
        let mut b = rng.gen_range(0..=code.len());
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let first_sign = random_sign(rng);
        let case =
            if rng.gen::<bool>() { R2Case::Parallel { first_sign } } else { R2Case::Antiparallel { first_sign } };
        if let Ok(out) = apply_r2(code, a, b, case) {
            if is_planar(&out) {
                return Some(out);
            }
        }
    }
    None
}

/// Applies `steps` random R1 / classical R2 insertions.
pub fn perturb<R: Rng + ?Sized>(code: &GaussCode, rng: &mut R, steps: usize) -> GaussCode {
    let mut out = code.clone();
    for _ in 0..steps {
        out = if rng.gen::<bool>() {
            random_r1(&out, rng)
        } else {
            random_r2_classical(&out, rng, 64).unwrap_or_else(|| random_r1(&out, rng))
        };
    }
    out
}
