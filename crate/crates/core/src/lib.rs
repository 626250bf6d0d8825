pub mod bench;
pub mod flow;
pub mod naive;
pub mod oracle;
pub mod snn;
pub mod spiking_maxflow;
pub mod tnfr;
