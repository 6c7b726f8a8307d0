use thiserror::Error;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("not found: {0}")]
    NotFound(String),
    #[error("conflict: {0}")]
    Conflict(String),
    #[error("bad request: {0}")]
    BadRequest(String),
    #[error("unauthorized")]
    Unauthorized,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] peyedf_core::CoreError),
    #[error("http error: {0}")]
    Http(String),
}

impl StoreError {
    pub fn not_found(what: impl Into<String>) -> Self {
        StoreError::NotFound(what.into())
    }

    pub fn bad_request(why: impl Into<String>) -> Self {
        StoreError::BadRequest(why.into())
    }

    /// HTTP status the API maps this error to.
    pub fn status_code(&self) -> u16 {
        match self {
            StoreError::NotFound(_) => 404,
            StoreError::Conflict(_) => 409,
            StoreError::BadRequest(_) | StoreError::Core(_) | StoreError::Json(_) => 400,
            StoreError::Unauthorized => 401,
            StoreError::Io(_) | StoreError::Http(_) => 500,
        }
    }
}
