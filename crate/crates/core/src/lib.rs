pub mod fixpoint;
pub mod fraction;
pub mod optimize;
pub mod ranking;
pub mod tournament;
