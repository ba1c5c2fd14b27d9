use super::graph::ForbiddenSpec;
use crate::vector::{SignedVector, VectorFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub left: SignedVector,
    pub right: SignedVector,
    pub product: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyCheck {
    pub pairs_checked: u64,
    pub violation: Option<Violation>,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Scans every unordered pair of distinct members, stopping at the first
/// forbidden product.
pub fn verify_family(fam: &VectorFamily, spec: &ForbiddenSpec) -> FamilyCheck {
    let m = fam.members();
    let mut pairs_checked = 0;
    for (i, a) in m.iter().enumerate() {
        for b in &m[i + 1..] {
            pairs_checked += 1;
            let product = a.dot(b);
            if spec.forbids(product) {
                return FamilyCheck {
                    pairs_checked,
                    violation: Some(Violation {
                        left: *a,
                        right: *b,
                        product,
                    }),
                };
            }
        }
    }
    FamilyCheck {
        pairs_checked,
        violation: None,
    }
}
