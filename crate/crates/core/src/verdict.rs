use alloc::string::String;
use alloc::vec::Vec;

/// Outcome of one exhaustively decided predicate.
///
/// `witness` is `Some` exactly when `holds` is false and carries the
/// lexicographically least tuple that violates the predicate, labelled
/// by the role each index plays in the defining condition. `iters` is
/// the number of primitive loop steps the scan actually performed,
/// which feeds sweep accounting and the iteration budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub iters: u64,
}

impl Verdict {
    pub fn confirmed(iters: u64) -> Self {
        Verdict { holds: true, witness: None, iters }
    }

    pub fn refuted(witness: Witness, iters: u64) -> Self {
        Verdict { holds: false, witness: Some(witness), iters }
    }
}

/// Labelled tuple of carrier indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness(pub Vec<(&'static str, u32)>);

impl Witness {
    pub fn pair(role_a: &'static str, a: u32, role_b: &'static str, b: u32) -> Self {
        Witness(alloc::vec![(role_a, a), (role_b, b)])
    }

    pub fn triple(
        role_a: &'static str,
        a: u32,
        role_b: &'static str,
        b: u32,
        role_c: &'static str,
        c: u32,
    ) -> Self {
        Witness(alloc::vec![(role_a, a), (role_b, b), (role_c, c)])
    }

    /// Render with a naming function, e.g. `a=2 b=3 m=5`.
    pub fn render(&self, name_of: impl Fn(&'static str, u32) -> String) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(role, idx)| alloc::format!("{}={}", role, name_of(role, idx)))
            .collect();
        parts.join(" ")
    }

    pub fn indices(&self) -> Vec<u32> {
        self.0.iter().map(|&(_, i)| i).collect()
    }
}
