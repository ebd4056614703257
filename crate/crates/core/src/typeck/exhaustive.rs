//! Case coverage. Patterns are flat constructor patterns, so a case is
//! exhaustive exactly when every constructor has one branch.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseCoverageError {
    /// Missing constructors in declaration order.
    NonExhaustive(Vec<String>),
    DuplicateBranch(String),
}

/// `declared` lists the union's constructors in declaration order; `branches`
/// the constructor of each branch in source order.
pub fn check_case_exhaustive(declared: &[String], branches: &[&str]) -> Result<(), CaseCoverageError> {
    for (i, b) in branches.iter().enumerate() {
        if branches[..i].contains(b) {
            return Err(CaseCoverageError::DuplicateBranch(b.to_string()));
        }
    }
    let missing: Vec<String> = declared
        .iter()
        .filter(|c| !branches.contains(&c.as_str()))
        .cloned()
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(CaseCoverageError::NonExhaustive(missing))
    }
}
