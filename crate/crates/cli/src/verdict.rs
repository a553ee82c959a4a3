//! Decision outcomes and their exit codes.

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Equal,
    NotEqual,
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Equal => "equal",
            Status::NotEqual => "not-equal",
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Equal | Status::Pass => 0,
            Status::NotEqual | Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub detail: Value,
}

impl Verdict {
    pub fn new(status: Status, detail: Value) -> Self {
        Verdict { status, detail }
    }

    pub fn equality(equal: bool, detail: Value) -> Self {
        let status = if equal { Status::Equal } else { Status::NotEqual };
        Verdict { status, detail }
    }

    pub fn check(pass: bool, detail: Value) -> Self {
        let status = if pass { Status::Pass } else { Status::Fail };
        Verdict { status, detail }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_value(&self) -> Value {
        json!({ "status": self.status.name(), "detail": self.detail })
    }
}
