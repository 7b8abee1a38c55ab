use std::collections::BTreeSet;

/// A relation symbol with named attributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSchema {
    pub name: String,
    pub attributes: Vec<String>,
}

impl RelationSchema {
    pub fn new(name: impl Into<String>, attributes: &[&str]) -> Self {
        RelationSchema {
            name: name.into(),
            attributes: attributes.iter().map(|a| a.to_string()).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.attributes.len()
    }

    /// Arity is at least one and attribute names are unique.
    pub fn is_well_formed(&self) -> bool {
        let distinct: BTreeSet<&String> = self.attributes.iter().collect();
        !self.attributes.is_empty() && distinct.len() == self.attributes.len()
    }
}

/// An ordered collection of relation schemas.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Schema {
    relations: Vec<RelationSchema>,
}

impl Schema {
    pub fn new(relations: Vec<RelationSchema>) -> Self {
        Schema { relations }
    }

    pub fn relations(&self) -> &[RelationSchema] {
        &self.relations
    }

    pub fn get(&self, name: &str) -> Option<&RelationSchema> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.get(name).map(RelationSchema::arity)
    }
}
