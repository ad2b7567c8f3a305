//! Graded isomorphism classification of the algebras `O_{p,q}`.

pub mod lemmas;
pub mod statistics;
pub mod table;
pub mod witness;

pub use lemmas::{catalog, lemma_witness, LemmaId, LemmaWitness};
pub use statistics::{exceptional_check, statistics, statistics_closed_form};
pub use table::{
    classification_row, simplicity_report, ClassEntry, ClassInfo, ClassRow, ClassVerdict,
    SimplicityReport,
};
pub use witness::{find_graded_iso, sign_map, verify_witness, IsoWitness, WitnessJson};
