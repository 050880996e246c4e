pub mod adversarial;
pub mod constructive;
pub mod graph;
pub mod harness;
pub mod instance;
pub mod oracle;
pub mod rational;
