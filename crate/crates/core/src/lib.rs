pub mod catgraph;
pub mod cli;
pub mod charge;
pub mod lift;
pub mod mf;
pub mod polymat;
pub mod stab;
