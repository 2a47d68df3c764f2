//! Jacobi structures on the trivial line bundle of a chart.

mod contact;
mod gauge;
mod jets;
mod multider;

pub use contact::{contact_to_jacobi, jacobi_to_contact, reeb_field};
pub use gauge::{gauge_complex_structure, GaugeReport};
pub use jets::{
    bi_hamiltonian_check, dl_bracket, is_jacobi_nijenhuis, j_on_jets, j_phi, j_sharp, jet_bracket, jet_lie,
    jet_pairing, prolong_dense, BiHamiltonianReport, DlSection, EndoDL, JacobiNijenhuisReport, JetSection,
};
pub(crate) use jets::lie_one_form;
pub use multider::{extract_pair, gerstenhaber_eval, is_jacobi, jet_of, schouten_jacobi, unshuffles, MultiDerivation};
