//! Declarative user annotations and the line-oriented annotation format.
//!
//! ```text
//! # comment
//! P Person +R +I:supplies -ND
//! I Palestine
//! A Cognition$Knowledge ABSTRACTION
//! M Edge_3 IMPORT FEATURE/Relevant_Part
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::catalog::CategoryKind;
use super::profile::*;
use crate::taxonomy::Taxonomy;
use crate::Warning;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Directive {
    Cover,
    Reject,
    Import,
}

impl FromStr for Directive {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "COVER" => Ok(Directive::Cover),
            "REJECT" => Ok(Directive::Reject),
            "IMPORT" => Ok(Directive::Import),
            _ => Err(()),
        }
    }
}

impl fmt::Display for Directive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Directive::Cover => "COVER",
            Directive::Reject => "REJECT",
            Directive::Import => "IMPORT",
        })
    }
}

/// A catalog category, optionally refined by a path of named sub-category
/// nodes (`FEATURE/Relevant_Part`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MappingTarget {
    pub category: CategoryKind,
    pub path: Vec<String>,
}

impl MappingTarget {
    pub fn category(category: CategoryKind) -> Self {
        MappingTarget {
            category,
            path: Vec::new(),
        }
    }

    /// Name of the node the target denotes in a cleaned taxonomy.
    pub fn node_name(&self) -> &str {
        self.path
            .last()
            .map(String::as_str)
            .unwrap_or_else(|| self.category.concept_name())
    }
}

impl FromStr for MappingTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut parts = s.split('/');
        let head = parts.next().unwrap_or_default();
        let category = head.parse::<CategoryKind>().map_err(|e| e.to_string())?;
        let path: Vec<String> = parts.map(str::to_owned).collect();
        if path.iter().any(String::is_empty) {
            return Err(format!("empty segment in mapping target {s:?}"));
        }
        Ok(MappingTarget { category, path })
    }
}

impl fmt::Display for MappingTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.category.token())?;
        for segment in &self.path {
            write!(f, "/{segment}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingDirective {
    pub concept: String,
    pub directive: Directive,
    pub target: MappingTarget,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AnnotationError {
    #[error("line {line}: {message}: {text:?}")]
    Parse {
        line: usize,
        text: String,
        message: String,
    },
    #[error("{name} is declared an individual but also annotated with rigidity {rigidity}")]
    Conflict { name: String, rigidity: Rigidity },
    #[error("I/O error: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnnotationSet {
    profiles: BTreeMap<String, MetaProfile>,
    individuals: BTreeSet<String>,
    category_assignments: BTreeMap<String, CategoryKind>,
    mapping_directives: Vec<MappingDirective>,
}

impl AnnotationSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn profile(&self, name: &str) -> Option<&MetaProfile> {
        self.profiles.get(name)
    }

    pub fn profiles(&self) -> &BTreeMap<String, MetaProfile> {
        &self.profiles
    }

    pub fn individuals(&self) -> &BTreeSet<String> {
        &self.individuals
    }

    pub fn is_individual(&self, name: &str) -> bool {
        self.individuals.contains(name)
    }

    pub fn category_assignments(&self) -> &BTreeMap<String, CategoryKind> {
        &self.category_assignments
    }

    pub fn mapping_directives(&self) -> &[MappingDirective] {
        &self.mapping_directives
    }

    /// Sets a profile, returning the one it replaced.
    pub fn set_profile(
        &mut self,
        name: impl Into<String>,
        profile: MetaProfile,
    ) -> Result<Option<MetaProfile>, AnnotationError> {
        let name = name.into();
        if profile.rigidity.is_known() && self.individuals.contains(&name) {
            return Err(AnnotationError::Conflict {
                name,
                rigidity: profile.rigidity,
            });
        }
        Ok(self.profiles.insert(name, profile))
    }

    pub fn declare_individual(&mut self, name: impl Into<String>) -> Result<bool, AnnotationError> {
        let name = name.into();
        if let Some(profile) = self.profiles.get(&name) {
            if profile.rigidity.is_known() {
                return Err(AnnotationError::Conflict {
                    name,
                    rigidity: profile.rigidity,
                });
            }
        }
        Ok(self.individuals.insert(name))
    }

    pub fn assign_category(&mut self, name: impl Into<String>, category: CategoryKind) -> Option<CategoryKind> {
        self.category_assignments.insert(name.into(), category)
    }

    pub fn push_directive(&mut self, directive: MappingDirective) {
        self.mapping_directives.push(directive);
    }

    /// Every name referenced by some annotation, deduplicated and sorted.
    pub fn referenced_names(&self) -> BTreeSet<&str> {
        self.profiles
            .keys()
            .chain(&self.individuals)
            .chain(self.category_assignments.keys())
            .map(String::as_str)
            .chain(self.mapping_directives.iter().map(|d| d.concept.as_str()))
            .collect()
    }

    /// Referenced names that do not resolve against `taxonomy`.
    pub fn unresolved_names(&self, taxonomy: &Taxonomy) -> Vec<String> {
        self.referenced_names()
            .into_iter()
            .filter(|n| taxonomy.id_of(n).is_none())
            .map(str::to_owned)
            .collect()
    }

    /// Reads the annotation format. Repeated profile lines for one name keep
    /// the last and produce a warning.
    pub fn parse<R: BufRead>(reader: R) -> Result<(AnnotationSet, Vec<Warning>), AnnotationError> {
        let mut set = AnnotationSet::new();
        let mut warnings = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| AnnotationError::Io(e.to_string()))?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |message: String| AnnotationError::Parse {
                line: lineno,
                text: line.clone(),
                message,
            };
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            match fields.as_slice() {
                ["P", name, tokens @ ..] => {
                    let profile = parse_profile(tokens).map_err(err)?;
                    if set.set_profile(*name, profile)?.is_some() {
                        warnings.push(Warning::at(
                            lineno,
                            format!("duplicate profile for {name}; the last one wins"),
                        ));
                    }
                }
                ["I", name] => {
                    set.declare_individual(*name)?;
                }
                ["A", name, category] => {
                    let category = category.parse().map_err(|e: super::catalog::UnknownCategory| err(e.to_string()))?;
                    if let Some(previous) = set.assign_category(*name, category) {
                        warnings.push(Warning::at(
                            lineno,
                            format!("{name} was already assigned to {previous}; the last one wins"),
                        ));
                    }
                }
                ["M", name, directive, target] => {
                    let directive = directive
                        .parse()
                        .map_err(|_| err(format!("unknown mapping directive {directive:?}")))?;
                    let target = target.parse().map_err(err)?;
                    set.push_directive(MappingDirective {
                        concept: (*name).to_owned(),
                        directive,
                        target,
                    });
                }
                [kind, ..] if ["P", "I", "A", "M"].contains(kind) => {
                    return Err(err(format!("wrong number of fields for a {kind} line")));
                }
                _ => return Err(err("unrecognised annotation line".to_owned())),
            }
        }
        Ok((set, warnings))
    }
}

fn parse_profile(tokens: &[&str]) -> Result<MetaProfile, String> {
    let mut profile = MetaProfile::default();
    let mut seen: Vec<&'static str> = Vec::new();
    let mut claim = |slot: &'static str, token: &str| {
        if seen.contains(&slot) {
            Err(format!("{slot} given twice (at {token})"))
        } else {
            seen.push(slot);
            Ok(())
        }
    };
    for &token in tokens {
        match token {
            "+R" | "-R" | "~R" => {
                claim("rigidity", token)?;
                profile.rigidity = match token {
                    "+R" => Rigidity::Rigid,
                    "-R" => Rigidity::NonRigid,
                    _ => Rigidity::AntiRigid,
                };
            }
            "+I:supplies" | "+I:carries" | "-I" => {
                claim("identity", token)?;
                profile.identity = match token {
                    "+I:supplies" => Identity::Supplies,
                    "+I:carries" => Identity::Carries,
                    _ => Identity::NoCriterion,
                };
            }
            "+D" | "-D" => {
                claim("dependence", token)?;
                profile.dependence = if token == "+D" {
                    Dependence::Dependent
                } else {
                    Dependence::Independent
                };
            }
            "-ND" => {
                claim("notional dependence", token)?;
                profile.notional_dependence = NotionalDependence::Independent;
            }
            t if t == "+ND" || t.starts_with("+ND:") => {
                claim("notional dependence", token)?;
                profile.notional_dependence = NotionalDependence::Dependent;
                if let Some(target) = t.strip_prefix("+ND:") {
                    if target.is_empty() {
                        return Err("empty notional-dependence target".to_owned());
                    }
                    profile.notional_target = Some(target.to_owned());
                }
            }
            "+U" | "~U" | "*U" => {
                claim("unity", token)?;
                profile.unity = match token {
                    "+U" => Unity::Unity,
                    "~U" => Unity::AntiUnity,
                    _ => Unity::WholeNoCommonRelation,
                };
            }
            "+E" | "~E" => {
                claim("extensionality", token)?;
                profile.extensionality = if token == "+E" {
                    Extensionality::Extensional
                } else {
                    Extensionality::AntiExtensional
                };
            }
            "+C" | "~C" => {
                claim("concreteness", token)?;
                profile.concreteness = if token == "+C" {
                    Concreteness::Concrete
                } else {
                    Concreteness::NonConcrete
                };
            }
            "META" => {
                claim("meta-level flag", token)?;
                profile.meta_level = true;
            }
            other => return Err(format!("unknown meta-property token {other:?}")),
        }
    }
    Ok(profile)
}
