pub mod partitions;
pub mod symgroup;
pub mod tensorspace;
pub mod projectors;
pub mod bounds;
