//! Possible and necessary winners under incomplete preferences and
//! partial agendas.

mod completion;
mod feasibility;
mod necessary;
mod possible;
mod reductions;

pub use completion::{
    complete_order, discriminating_completion, privileging_completion, CompletionMode,
    CompletionSpec,
};
pub use feasibility::{solve_feasibility, Constraint, FeasibilitySystem, Relation, VariableGroup};
pub use necessary::{
    necessary_winner, necessary_winner_amendment, necessary_winner_successive,
    weighted_necessary_winner,
};
pub use possible::{
    possible_winner, possible_winner_amendment, possible_winner_successive, round_guesses,
    weighted_possible_winner, RoundGuess,
};
pub use reductions::{
    generate_is_reduction, generate_partition_reduction, generate_vc_reduction, Graph,
    ReducedInstance,
};

use crate::order::Agenda;
use crate::procedure::TiePolicy;
use crate::profile::Profile;

/// Budgets for the exact searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest number of agenda completions examined.
    pub max_agenda_completions: usize,
    /// Largest number of (partial order, linear completion) variables.
    pub max_variables: usize,
    pub tie_policy: TiePolicy,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_agenda_completions: 5040,
            max_variables: 10_000,
            tie_policy: TiePolicy::Reject,
        }
    }
}

/// A joint completion under which the target wins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PossibleWitness {
    pub profile: Profile,
    pub agenda: Agenda,
    /// Amendment only: the winner after each round.
    pub round_winners: Option<Vec<usize>>,
}
