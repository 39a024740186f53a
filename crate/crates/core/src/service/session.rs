//! Wizard session state. Every mutation is recorded as a [`LogEvent`];
//! replaying the log from the `Created` event rebuilds the same session.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::context::{read_cxt, write_cxt, AttributeSet, FormalContext};
use crate::error::Error;
use crate::generalize::{fingerprint, generalize_attributes, propose_groupings, Axis, GroupingProposal, GroupingScheme, Mode};
use crate::lattice::count_concepts_with;
use crate::ratio::{check_unit_threshold, serde_fraction, Fraction, SupportValue};

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("{0}")]
    BadInput(String),
    #[error("{0}")]
    NotFound(String),
    #[error("{0}")]
    Conflict(String),
    #[error("{0}")]
    Threshold(String),
    #[error("{0}")]
    Ceiling(String),
    #[error("{0}")]
    Internal(String),
}

impl From<Error> for SessionError {
    fn from(e: Error) -> Self {
        match e {
            Error::Ceiling { .. } => SessionError::Ceiling(e.to_string()),
            Error::Io(_) => SessionError::Internal(e.to_string()),
            _ => SessionError::BadInput(e.to_string()),
        }
    }
}

pub type SessionResult<T> = std::result::Result<T, SessionError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum LogEvent {
    Created {
        id: String,
        cxt: String,
        #[serde(with = "serde_fraction")]
        minsupp: Fraction,
        mode: Mode,
    },
    Accepted {
        fingerprint: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Rejected {
        fingerprint: String,
    },
    Group {
        name: String,
        members: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSource {
    Proposal,
    Manual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcceptedGroup {
    pub name: String,
    pub members: Vec<String>,
    #[serde(skip)]
    pub set: AttributeSet,
    pub fingerprint: String,
    pub source: GroupSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportRow {
    pub attribute: String,
    pub support: SupportValue,
    pub frequent: bool,
}

/// Snapshot returned by every endpoint that reads or mutates a session.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SessionState {
    pub format_version: u32,
    pub id: String,
    #[serde(with = "serde_fraction")]
    pub minsupp: Fraction,
    pub mode: Mode,
    pub support_table: Vec<SupportRow>,
    pub frequent: Vec<String>,
    pub infrequent: Vec<String>,
    pub accepted: Vec<AcceptedGroup>,
    pub rejected: Vec<String>,
    pub proposals: Vec<GroupingProposal>,
    /// Counts are `None` when they exceed the concept ceiling.
    pub size_before: Option<usize>,
    pub size_current: Option<usize>,
    pub size_after_if_all_accepted: Option<usize>,
    pub delta: Option<i64>,
    pub increased: bool,
    pub decisions: usize,
}

#[derive(Clone, Debug)]
pub struct WizardSession {
    id: String,
    base: FormalContext,
    minsupp: Fraction,
    mode: Mode,
    accepted: Vec<AcceptedGroup>,
    rejected: BTreeSet<String>,
    log: Vec<LogEvent>,
    ceiling: usize,
}

impl WizardSession {
    pub fn create(id: &str, base: FormalContext, minsupp: Fraction, mode: Mode, ceiling: usize) -> SessionResult<Self> {
        check_unit_threshold(&minsupp, "minsupp").map_err(|e| SessionError::Threshold(e.to_string()))?;
        if mode == Mode::Alpha {
            return Err(SessionError::BadInput("the wizard supports exists and forall sessions".into()));
        }
        let created = LogEvent::Created {
            id: id.to_string(),
            cxt: write_cxt(&base),
            minsupp,
            mode,
        };
        Ok(WizardSession {
            id: id.to_string(),
            base,
            minsupp,
            mode,
            accepted: Vec::new(),
            rejected: BTreeSet::new(),
            log: vec![created],
            ceiling,
        })
    }

    /// Rebuilds a session from its decision log.
    pub fn replay(events: &[LogEvent], ceiling: usize) -> SessionResult<Self> {
        let Some(LogEvent::Created { id, cxt, minsupp, mode }) = events.first() else {
            return Err(SessionError::BadInput("log does not start with a created event".into()));
        };
        let mut s = WizardSession::create(id, read_cxt(cxt)?, *minsupp, *mode, ceiling)?;
        for e in &events[1..] {
            let changed = match e {
                LogEvent::Created { .. } => return Err(SessionError::BadInput("duplicate created event".into())),
                LogEvent::Accepted { fingerprint, name } => s.accept(fingerprint, name.as_deref())?,
                LogEvent::Rejected { fingerprint } => s.reject(fingerprint)?,
                LogEvent::Group { name, members } => {
                    s.add_group(name, members)?;
                    true
                }
            };
            if !changed {
                return Err(SessionError::BadInput(format!("log replays a no-op: {e:?}")));
            }
        }
        Ok(s)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn base(&self) -> &FormalContext {
        &self.base
    }

    pub fn log(&self) -> &[LogEvent] {
        &self.log
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    fn unresolved(&self) -> AttributeSet {
        let mut rest = self.base.all_attributes();
        for g in &self.accepted {
            rest.difference_with(&g.set);
        }
        rest
    }

    /// Proposals over the attributes no accepted group covers, minus the
    /// rejected ones.
    pub fn proposals(&self) -> SessionResult<Vec<GroupingProposal>> {
        let rest = self.unresolved();
        if rest.is_empty() {
            return Ok(Vec::new());
        }
        let sub = self.base.project_attributes(&rest)?;
        let mut out = Vec::new();
        for mut p in propose_groupings(&sub, &self.minsupp, self.mode)? {
            if self.rejected.contains(&p.fingerprint) {
                continue;
            }
            p.members = self.base.attributes_named(&p.member_names)?;
            out.push(p);
        }
        Ok(out)
    }

    fn scheme_with(&self, extra: &[(String, AttributeSet)]) -> SessionResult<GroupingScheme> {
        let mut scheme = GroupingScheme::new(Axis::Attributes, self.mode, self.base.n_attributes(), true);
        for g in &self.accepted {
            scheme.push(&g.name, g.set.clone(), None)?;
        }
        for (name, set) in extra {
            scheme.push(name, set.clone(), None)?;
        }
        scheme
            .validate(&self.base)
            .map_err(|e| SessionError::Conflict(e.to_string()))?;
        Ok(scheme)
    }

    /// The accepted groups, with every other attribute passed through.
    pub fn scheme(&self) -> SessionResult<GroupingScheme> {
        self.scheme_with(&[])
    }

    pub fn generalized(&self) -> SessionResult<FormalContext> {
        Ok(generalize_attributes(&self.base, &self.scheme()?)?)
    }

    fn count(&self, ctx: &FormalContext) -> SessionResult<Option<usize>> {
        match count_concepts_with(ctx, self.ceiling) {
            Ok(n) => Ok(Some(n)),
            Err(Error::Ceiling { .. }) => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Returns whether the session changed. Accepting an accepted
    /// fingerprint again is a no-op. `rename` replaces the proposed name.
    pub fn accept(&mut self, fp: &str, rename: Option<&str>) -> SessionResult<bool> {
        if self.accepted.iter().any(|g| g.fingerprint == fp) {
            return Ok(false);
        }
        if self.rejected.contains(fp) {
            return Err(SessionError::Conflict(format!("proposal {fp} was rejected")));
        }
        let p = self
            .proposals()?
            .into_iter()
            .find(|p| p.fingerprint == fp)
            .ok_or_else(|| SessionError::NotFound(format!("no current proposal {fp}")))?;
        let name = match rename {
            Some(n) if n.trim().is_empty() => return Err(SessionError::BadInput("group name is empty".into())),
            Some(n) => n.to_string(),
            None => p.name,
        };
        self.scheme_with(&[(name.clone(), p.members.clone())])?;
        self.accepted.push(AcceptedGroup {
            name,
            members: p.member_names,
            set: p.members,
            fingerprint: p.fingerprint,
            source: GroupSource::Proposal,
        });
        self.log.push(LogEvent::Accepted {
            fingerprint: fp.to_string(),
            name: rename.map(str::to_string),
        });
        Ok(true)
    }

    pub fn reject(&mut self, fp: &str) -> SessionResult<bool> {
        if self.rejected.contains(fp) {
            return Ok(false);
        }
        if self.accepted.iter().any(|g| g.fingerprint == fp) {
            return Err(SessionError::Conflict(format!("proposal {fp} was accepted")));
        }
        if !self.proposals()?.iter().any(|p| p.fingerprint == fp) {
            return Err(SessionError::NotFound(format!("no current proposal {fp}")));
        }
        self.rejected.insert(fp.to_string());
        self.log.push(LogEvent::Rejected { fingerprint: fp.to_string() });
        Ok(true)
    }

    /// Adds a user-defined group. Members must exist and be disjoint from
    /// every accepted group.
    pub fn add_group<S: AsRef<str>>(&mut self, name: &str, members: &[S]) -> SessionResult<()> {
        if name.trim().is_empty() {
            return Err(SessionError::BadInput("group name is empty".into()));
        }
        if members.is_empty() {
            return Err(SessionError::BadInput("group has no members".into()));
        }
        let set = self.base.attributes_named(members)?;
        if let Some(g) = self.accepted.iter().find(|g| !g.set.is_disjoint(&set)) {
            return Err(SessionError::Conflict(format!("group overlaps accepted group {}", g.name)));
        }
        self.scheme_with(&[(name.to_string(), set.clone())])?;
        let names = self.base.attribute_labels(&set);
        self.accepted.push(AcceptedGroup {
            name: name.to_string(),
            fingerprint: fingerprint(self.mode, &names),
            members: names.clone(),
            set,
            source: GroupSource::Manual,
        });
        self.log.push(LogEvent::Group {
            name: name.to_string(),
            members: names,
        });
        Ok(())
    }

    pub fn state(&self) -> SessionResult<SessionState> {
        let support_table: Vec<SupportRow> = (0..self.base.n_attributes())
            .map(|m| {
                let support = self.base.attribute_support(m);
                SupportRow {
                    attribute: self.base.attribute_names()[m].clone(),
                    frequent: support.meets(&self.minsupp),
                    support,
                }
            })
            .collect();
        let (frequent, infrequent): (Vec<&SupportRow>, Vec<&SupportRow>) = support_table.iter().partition(|r| r.frequent);
        let proposals = self.proposals()?;

        // accept pending proposals in order, skipping overlaps
        let mut taken = self.base.all_attributes().difference(&self.unresolved());
        let mut extra = Vec::new();
        for p in &proposals {
            if p.members.is_disjoint(&taken) {
                taken.union_with(&p.members);
                extra.push((p.name.clone(), p.members.clone()));
            }
        }
        let size_before = self.count(&self.base)?;
        let size_current = self.count(&self.generalized()?)?;
        let all = generalize_attributes(&self.base, &self.scheme_with(&extra)?)?;
        let size_after_if_all_accepted = self.count(&all)?;
        let delta = match (size_before, size_current) {
            (Some(b), Some(a)) => Some(a as i64 - b as i64),
            _ => None,
        };
        Ok(SessionState {
            format_version: 1,
            id: self.id.clone(),
            minsupp: self.minsupp,
            mode: self.mode,
            frequent: frequent.iter().map(|r| r.attribute.clone()).collect(),
            infrequent: infrequent.iter().map(|r| r.attribute.clone()).collect(),
            support_table,
            accepted: self.accepted.clone(),
            rejected: self.rejected.iter().cloned().collect(),
            proposals,
            size_before,
            size_current,
            size_after_if_all_accepted,
            delta,
            increased: delta.is_some_and(|d| d > 0),
            decisions: self.log.len() - 1,
        })
    }
}
