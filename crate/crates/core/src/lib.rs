pub mod cli;
pub mod cover;
pub mod curve_graph;
pub mod dot;
pub mod gonality;
pub mod oracle;
pub mod surgery;
