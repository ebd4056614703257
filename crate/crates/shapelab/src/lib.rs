//! Command-line and HTTP front ends for the shapelab language.

pub mod batch;
pub mod http;
pub mod service;

pub use service::{Service, ServiceConfig, ServiceError};
