//! In-memory compile cache and interactive sessions.
//!
//! Each session sits behind its own mutex, so events for one session apply
//! one at a time while different sessions run in parallel. The maps only
//! hold handles; no session state is shared.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, MutexGuard};
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use shapelab_core::runtime::RuntimeError;
use shapelab_core::typeck::TypedProgram;
use shapelab_core::{compile, Diagnostic, Event, Session};

#[derive(Debug, Clone, Copy)]
pub struct ServiceConfig {
    pub max_sessions: usize,
    pub max_programs: usize,
    pub idle_timeout: Duration,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig { max_sessions: 256, max_programs: 256, idle_timeout: Duration::from_secs(30 * 60) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CompileResult {
    pub ok: bool,
    pub diagnostics: Vec<Diagnostic>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub program_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionResource {
    pub session_id: String,
    pub program_id: String,
    /// Milliseconds since the Unix epoch.
    pub created: u64,
    pub event_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionCreated {
    #[serde(flatten)]
    pub session: SessionResource,
    pub svg: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EventResult {
    pub fired_messages: Vec<String>,
    pub svg: String,
    pub model_dump: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionState {
    #[serde(flatten)]
    pub session: SessionResource,
    pub svg: String,
    pub model_dump: String,
    pub elapsed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ServiceError {
    NotFound(String),
    BadRequest(String),
    /// The program failed to compile or to run.
    Unprocessable(Vec<Diagnostic>),
}

impl std::fmt::Display for ServiceError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ServiceError::NotFound(what) => write!(f, "{what} not found"),
            ServiceError::BadRequest(m) => write!(f, "{m}"),
            ServiceError::Unprocessable(ds) => match ds.first() {
                Some(d) => write!(f, "{}", d.render()),
                None => write!(f, "program rejected"),
            },
        }
    }
}

impl std::error::Error for ServiceError {}

impl From<RuntimeError> for ServiceError {
    fn from(e: RuntimeError) -> Self {
        match e {
            RuntimeError::Eval(e) => ServiceError::Unprocessable(vec![e.diagnostic()]),
            other => ServiceError::BadRequest(other.to_string()),
        }
    }
}

/// Content address of a program: hex SHA-256 of its source.
pub fn program_id(source: &str) -> String {
    Sha256::digest(source.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn now_millis() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64)
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    // a panic inside one request must not wedge the service
    m.lock().unwrap_or_else(|p| p.into_inner())
}

struct Entry<T> {
    value: T,
    last_used: Instant,
}

/// A map that drops its least recently used entry when full.
struct Lru<T> {
    cap: usize,
    entries: HashMap<String, Entry<T>>,
}

impl<T: Clone> Lru<T> {
    fn new(cap: usize) -> Self {
        Lru { cap: cap.max(1), entries: HashMap::new() }
    }

    fn get(&mut self, k: &str) -> Option<T> {
        let e = self.entries.get_mut(k)?;
        e.last_used = Instant::now();
        Some(e.value.clone())
    }

    fn insert(&mut self, k: String, value: T) {
        if !self.entries.contains_key(&k) && self.entries.len() >= self.cap {
            if let Some(oldest) = self.entries.iter().min_by_key(|(_, e)| e.last_used).map(|(k, _)| k.clone()) {
                self.entries.remove(&oldest);
            }
        }
        self.entries.insert(k, Entry { value, last_used: Instant::now() });
    }

    fn remove(&mut self, k: &str) -> Option<T> {
        self.entries.remove(k).map(|e| e.value)
    }

    fn expire(&mut self, idle: Duration, now: Instant) {
        self.entries.retain(|_, e| now.saturating_duration_since(e.last_used) < idle);
    }
}

struct SessionSlot {
    program_id: String,
    created: u64,
    session: Mutex<Session>,
}

impl SessionSlot {
    fn resource(&self, id: &str, s: &Session) -> SessionResource {
        SessionResource {
            session_id: id.to_string(),
            program_id: self.program_id.clone(),
            created: self.created,
            event_count: s.event_log().len(),
        }
    }
}

pub struct Service {
    config: ServiceConfig,
    programs: Mutex<Lru<Arc<TypedProgram>>>,
    sessions: Mutex<Lru<Arc<SessionSlot>>>,
    next_session: AtomicU64,
}

impl Default for Service {
    fn default() -> Self {
        Service::new(ServiceConfig::default())
    }
}

impl Service {
    pub fn new(config: ServiceConfig) -> Self {
        Service {
            config,
            programs: Mutex::new(Lru::new(config.max_programs)),
            sessions: Mutex::new(Lru::new(config.max_sessions)),
            next_session: AtomicU64::new(1),
        }
    }

    pub fn compile(&self, source: &str) -> CompileResult {
        let id = program_id(source);
        let c = compile(source);
        match c.program {
            Some(p) => {
                lock(&self.programs).insert(id.clone(), p);
                CompileResult { ok: true, diagnostics: c.diagnostics, program_id: Some(id) }
            }
            None => CompileResult { ok: false, diagnostics: c.diagnostics, program_id: None },
        }
    }

    pub fn program(&self, program_id: &str) -> Option<Arc<TypedProgram>> {
        lock(&self.programs).get(program_id)
    }

    fn slot(&self, id: &str) -> Result<Arc<SessionSlot>, ServiceError> {
        let mut sessions = lock(&self.sessions);
        sessions.expire(self.config.idle_timeout, Instant::now());
        sessions.get(id).ok_or_else(|| ServiceError::NotFound(format!("session {id}")))
    }

    pub fn create_session(&self, program_id: &str) -> Result<SessionCreated, ServiceError> {
        let program = self.program(program_id).ok_or_else(|| ServiceError::NotFound(format!("program {program_id}")))?;
        let session = Session::new(program)?;
        let id = format!("s{}", self.next_session.fetch_add(1, Ordering::Relaxed));
        let slot = SessionSlot { program_id: program_id.to_string(), created: now_millis(), session: Mutex::new(session) };
        let created = {
            let s = lock(&slot.session);
            SessionCreated { session: slot.resource(&id, &s), svg: s.svg().to_string() }
        };
        let mut sessions = lock(&self.sessions);
        sessions.expire(self.config.idle_timeout, Instant::now());
        sessions.insert(id, Arc::new(slot));
        Ok(created)
    }

    pub fn post_event(&self, session_id: &str, event: &Event) -> Result<EventResult, ServiceError> {
        let slot = self.slot(session_id)?;
        let mut s = lock(&slot.session);
        let outcome = s.handle(event)?;
        Ok(EventResult {
            fired_messages: outcome.fired.iter().map(|m| m.dump()).collect(),
            svg: s.svg().to_string(),
            model_dump: s.model().dump(),
        })
    }

    pub fn get_session(&self, session_id: &str) -> Result<SessionState, ServiceError> {
        let slot = self.slot(session_id)?;
        let s = lock(&slot.session);
        Ok(SessionState {
            session: slot.resource(session_id, &s),
            svg: s.svg().to_string(),
            model_dump: s.model().dump(),
            elapsed: s.elapsed(),
        })
    }

    pub fn delete_session(&self, session_id: &str) -> Result<(), ServiceError> {
        lock(&self.sessions)
            .remove(session_id)
            .map(|_| ())
            .ok_or_else(|| ServiceError::NotFound(format!("session {session_id}")))
    }

    pub fn session_count(&self) -> usize {
        lock(&self.sessions).entries.len()
    }

    /// Drops sessions idle for longer than the configured timeout.
    pub fn evict_idle(&self) {
        lock(&self.sessions).expire(self.config.idle_timeout, Instant::now());
    }
}
