use std::fmt;

use serde::Serialize;

macro_rules! glyph_enum {
    ($(#[$doc:meta])* $name:ident { $($variant:ident => $glyph:literal),* $(,)? }) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
        #[serde(rename_all = "SCREAMING_SNAKE_CASE")]
        pub enum $name {
            $($variant,)*
            #[default]
            Unknown,
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant,)* $name::Unknown];

            pub fn is_known(self) -> bool {
                self != $name::Unknown
            }

            /// Annotation-file glyph; `None` for `Unknown`.
            pub fn glyph(self) -> Option<&'static str> {
                match self {
                    $($name::$variant => Some($glyph),)*
                    $name::Unknown => None,
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.glyph().unwrap_or("?"))
            }
        }
    };
}

glyph_enum!(Rigidity {
    Rigid => "+R",
    NonRigid => "-R",
    AntiRigid => "~R",
});

glyph_enum!(
    /// Whether a property supplies its own identity criterion, carries one
    /// inherited from a subsumer, or has none.
    Identity {
        Supplies => "+I:supplies",
        Carries => "+I:carries",
        NoCriterion => "-I",
    }
);

glyph_enum!(Dependence {
    Dependent => "+D",
    Independent => "-D",
});

glyph_enum!(NotionalDependence {
    Dependent => "+ND",
    Independent => "-ND",
});

glyph_enum!(
    /// `WholeNoCommonRelation` is the `*U` case: every instance is an
    /// essential whole but no unifying relation is shared by all of them.
    Unity {
        Unity => "+U",
        AntiUnity => "~U",
        WholeNoCommonRelation => "*U",
    }
);

glyph_enum!(Extensionality {
    Extensional => "+E",
    AntiExtensional => "~E",
});

glyph_enum!(Concreteness {
    Concrete => "+C",
    NonConcrete => "~C",
});

impl Identity {
    /// Supplying a criterion also counts as carrying one.
    pub fn carries(self) -> bool {
        matches!(self, Identity::Supplies | Identity::Carries)
    }
}

/// Meta-property assignment of one concept. Every slot defaults to unknown.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct MetaProfile {
    pub rigidity: Rigidity,
    pub identity: Identity,
    pub dependence: Dependence,
    pub notional_dependence: NotionalDependence,
    /// Free-text name of the property depended on, when given.
    pub notional_target: Option<String>,
    pub unity: Unity,
    pub extensionality: Extensionality,
    pub concreteness: Concreteness,
    pub meta_level: bool,
}

impl MetaProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rigidity(mut self, value: Rigidity) -> Self {
        self.rigidity = value;
        self
    }

    pub fn identity(mut self, value: Identity) -> Self {
        self.identity = value;
        self
    }

    pub fn dependence(mut self, value: Dependence) -> Self {
        self.dependence = value;
        self
    }

    pub fn notional(mut self, value: NotionalDependence) -> Self {
        self.notional_dependence = value;
        self
    }

    pub fn unity(mut self, value: Unity) -> Self {
        self.unity = value;
        self
    }

    pub fn extensionality(mut self, value: Extensionality) -> Self {
        self.extensionality = value;
        self
    }

    pub fn concreteness(mut self, value: Concreteness) -> Self {
        self.concreteness = value;
        self
    }

    pub fn meta(mut self) -> Self {
        self.meta_level = true;
        self
    }

    /// True when no slot is known and the meta-level flag is clear.
    pub fn is_blank(&self) -> bool {
        *self == MetaProfile::default()
    }
}

impl fmt::Display for MetaProfile {
    /// Renders the profile in annotation-file token syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens: Vec<String> = Vec::new();
        tokens.extend(self.rigidity.glyph().map(str::to_owned));
        tokens.extend(self.identity.glyph().map(str::to_owned));
        tokens.extend(self.dependence.glyph().map(str::to_owned));
        if let Some(glyph) = self.notional_dependence.glyph() {
            match (&self.notional_target, self.notional_dependence) {
                (Some(target), NotionalDependence::Dependent) => tokens.push(format!("{glyph}:{target}")),
                _ => tokens.push(glyph.to_owned()),
            }
        }
        tokens.extend(self.unity.glyph().map(str::to_owned));
        tokens.extend(self.extensionality.glyph().map(str::to_owned));
        tokens.extend(self.concreteness.glyph().map(str::to_owned));
        if self.meta_level {
            tokens.push("META".to_owned());
        }
        f.write_str(&tokens.join(" "))
    }
}
