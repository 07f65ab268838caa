//! Successive and amendment parliamentary voting.
//!
//! The crate evaluates both procedures on weighted profiles, decides agenda
//! control and coalitional manipulation, answers possible and necessary
//! winner queries for partial preferences and partial agendas, reads and
//! writes Preflib files, and runs the ratio experiments over a corpus.
//!
//! Alternatives are dense ids `0..m`; labels only matter at the I/O edge.

mod bitset;
pub mod cli;
pub mod control;
pub mod error;
pub mod experiments;
pub mod instance;
pub mod majority;
pub mod manipulation;
pub mod order;
pub mod preflib;
pub mod procedure;
pub mod profile;
pub mod uncertainty;

pub use bitset::AltSet;
pub use control::{
    control_amendment, control_amendment_with, control_successive, controllable_set,
    controllable_set_with, hamiltonian_cycle, scc_decomposition, ControlWitness, SccDecomposition,
};
pub use error::{Error, Result};
pub use instance::{parse_instance_json, write_instance_json, Instance};
pub use majority::{
    beats, build_majority_graph, is_condorcet_winner, is_majority_winner, WeightedMajorityGraph,
};
pub use manipulation::{
    manipulate, manipulate_amendment, manipulate_successive, manipulate_weighted,
    manipulated_winner_table, min_coalition_size, ManipulatedWinnerTable, ManipulationWitness,
};
pub use order::{Agenda, PartialAgenda, PreferenceOrder, StrictOrder};
pub use preflib::{parse_agenda, parse_preflib, write_agenda, write_preflib, Dialect};
pub use procedure::RankTable;
pub use procedure::{
    amendment_winner, amendment_winner_with, successive_winner, successive_winner_with, winner,
    Decision, Procedure, RoundRecord, RoundTrace, TiePolicy,
};
pub use profile::{Alternative, Profile, Voter};
pub use uncertainty::{
    necessary_winner, necessary_winner_amendment, necessary_winner_successive, possible_winner,
    possible_winner_amendment, possible_winner_successive, weighted_necessary_winner,
    weighted_possible_winner, PossibleWitness, SearchConfig,
};
