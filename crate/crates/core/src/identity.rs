//! Content-derived document identity.
//!
//! A document is identified by the SHA-256 digest of its plain text, so the
//! identity survives renames and moves. The application-scoped id is the same
//! digest with a fixed `PeyeDF_` prefix. Reading sessions are identified by a
//! UUID string shared by every event of the session.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use uuid::Uuid;

use crate::error::CoreError;

pub const APP_ID_PREFIX: &str = "PeyeDF_";
pub const CONTENT_HASH_LEN: usize = 64;

/// Lowercase hex SHA-256 digest of a document's textual content.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ContentHash(String);

impl ContentHash {
    /// Digest the given text. Empty text is allowed.
    pub fn compute(text: &str) -> ContentHash {
        let digest = Sha256::digest(text.as_bytes());
        ContentHash(hex::encode(digest))
    }

    pub fn parse(hex: &str) -> Result<ContentHash, CoreError> {
        if hex.len() != CONTENT_HASH_LEN {
            return Err(CoreError::invalid(
                "contentHash",
                format!("expected {CONTENT_HASH_LEN} hex chars, got {}", hex.len()),
            ));
        }
        if !hex.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(CoreError::invalid("contentHash", "non-hex character"));
        }
        Ok(ContentHash(hex.to_ascii_lowercase()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True when `s` has the shape of a content hash (64 hex chars).
    pub fn looks_like(s: &str) -> bool {
        s.len() == CONTENT_HASH_LEN && s.chars().all(|c| c.is_ascii_hexdigit())
    }
}

impl TryFrom<String> for ContentHash {
    type Error = CoreError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        ContentHash::parse(&value)
    }
}

impl From<ContentHash> for String {
    fn from(value: ContentHash) -> String {
        value.0
    }
}

impl std::fmt::Display for ContentHash {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// `PeyeDF_` + content hash; distinguishes this application's records from
/// other producers sharing the store.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AppId(String);

impl AppId {
    pub fn from_hash(hash: &ContentHash) -> AppId {
        AppId(format!("{APP_ID_PREFIX}{}", hash.as_str()))
    }

    pub fn parse(value: &str) -> Result<AppId, CoreError> {
        let suffix = value
            .strip_prefix(APP_ID_PREFIX)
            .ok_or_else(|| CoreError::invalid("appId", "missing PeyeDF_ prefix"))?;
        ContentHash::parse(suffix)?;
        Ok(AppId(value.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn content_hash(&self) -> ContentHash {
        // Parse validated the suffix on construction.
        ContentHash::parse(&self.0[APP_ID_PREFIX.len()..]).expect("valid by construction")
    }
}

impl TryFrom<String> for AppId {
    type Error = CoreError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        AppId::parse(&value)
    }
}

impl From<AppId> for String {
    fn from(value: AppId) -> String {
        value.0
    }
}

impl std::fmt::Display for AppId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Session identifier: one per document-open-to-close interval.
///
/// Generated ones are UUIDv4 strings. Construction from raw bytes keeps id
/// generation deterministic under a seeded RNG, which replay mode relies on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SessionId(String);

impl SessionId {
    /// Build a v4 UUID from caller-provided random bytes.
    pub fn from_random_bytes(bytes: [u8; 16]) -> SessionId {
        SessionId(uuid::Builder::from_random_bytes(bytes).into_uuid().to_string())
    }

    pub fn new_random() -> SessionId {
        SessionId(Uuid::new_v4().to_string())
    }

    pub fn parse(value: &str) -> Result<SessionId, CoreError> {
        Uuid::parse_str(value)
            .map_err(|e| CoreError::invalid("sessionId", e.to_string()))?;
        Ok(SessionId(value.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True when `s` parses as a canonical UUID.
    pub fn looks_like(s: &str) -> bool {
        Uuid::parse_str(s).is_ok()
    }
}

impl std::fmt::Display for SessionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}
