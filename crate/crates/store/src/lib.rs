//! Personal data store for reading events and documents.
//!
//! Persistence is an append-only JSON-lines log; all indexes live in memory
//! and are rebuilt on startup. The HTTP layer exposes the store on
//! `localhost:8080` by default with HTTP Basic auth (`Test1` / `123456`
//! unless configured otherwise), and [`DimeClient`] talks to it. [`DimeApi`]
//! abstracts over both so callers can run embedded or remote.

pub mod api;
pub mod client;
pub mod error;
pub mod index;
pub mod log;
pub mod query;
pub mod server;
pub mod store;

pub use api::DimeApi;
pub use client::DimeClient;
pub use error::StoreError;
pub use query::{ElementFilter, EventFilter};
pub use server::{Credentials, DEFAULT_PASSWORD, DEFAULT_PORT, DEFAULT_USERNAME};
pub use store::Store;
