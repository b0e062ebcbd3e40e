use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Exact field arithmetic, shared by the residue field and the Hahn field.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool;

    /// Whether the printed value must be wrapped in parentheses when it is
    /// used as a factor of a monomial.
    fn needs_parens(&self) -> bool;

    fn is_negative_unit(&self) -> bool;

    /// Whether the printed value starts with a minus sign that can be pulled
    /// out into the surrounding sum.
    fn leading_sign_negative(&self) -> bool;
}
