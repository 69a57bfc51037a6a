//! Membership-testable regions: the common input to every measure estimator.

use crate::body::{SymmetricConvexBody, TranslatedBody};

/// Outcome of a membership test. Only algorithmic tests (Minkowski sums)
/// ever return `Undecided`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    Inside,
    Outside,
    Undecided,
}

impl From<bool> for Membership {
    fn from(b: bool) -> Self {
        if b {
            Membership::Inside
        } else {
            Membership::Outside
        }
    }
}

pub trait Region: Sync {
    fn dim(&self) -> usize;

    /// Membership of `x`; callers guarantee `x.len() == self.dim()`.
    fn membership(&self, x: &[f64]) -> Membership;
}

impl Region for SymmetricConvexBody {
    fn dim(&self) -> usize {
        SymmetricConvexBody::dim(self)
    }

    fn membership(&self, x: &[f64]) -> Membership {
        self.contains_unchecked(x).into()
    }
}

impl Region for TranslatedBody {
    fn dim(&self) -> usize {
        TranslatedBody::dim(self)
    }

    fn membership(&self, x: &[f64]) -> Membership {
        self.contains_unchecked(x).into()
    }
}

impl<R: Region + ?Sized> Region for &R {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn membership(&self, x: &[f64]) -> Membership {
        (**self).membership(x)
    }
}

/// A region given by a boolean predicate.
pub struct FnRegion<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> bool + Sync> FnRegion<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64]) -> bool + Sync> Region for FnRegion<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn membership(&self, x: &[f64]) -> Membership {
        (self.f)(x).into()
    }
}

/// Intersection of two regions with three-valued logic.
pub struct Meet<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: Region, B: Region> Region for Meet<A, B> {
    fn dim(&self) -> usize {
        self.left.dim()
    }

    fn membership(&self, x: &[f64]) -> Membership {
        match self.left.membership(x) {
            Membership::Outside => Membership::Outside,
            l => match (l, self.right.membership(x)) {
                (_, Membership::Outside) => Membership::Outside,
                (Membership::Inside, Membership::Inside) => Membership::Inside,
                _ => Membership::Undecided,
            },
        }
    }
}
