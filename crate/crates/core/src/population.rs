//! The ruleset container and its snapshot file format.
//!
//! Rules removed during a training step are only marked dead (numerosity 0)
//! so that match-set and correct-set indices stay valid until
//! [`Population::purge`] compacts the storage.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::config::Representation;
use crate::error::{Result, UcsError};
use crate::rule::{Condition, FuzzySet, Rule};

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    rules: Vec<Rule>,
    capacity: usize,
    dims: usize,
    class_count: usize,
    representation: Representation,
}

impl Population {
    pub fn new(dims: usize, class_count: usize, capacity: usize, representation: Representation) -> Self {
        Population { rules: Vec::new(), capacity, dims, class_count, representation }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    /// All stored rules, including ones marked dead since the last purge.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, idx: usize) -> &Rule {
        &self.rules[idx]
    }

    pub fn rule_mut(&mut self, idx: usize) -> &mut Rule {
        &mut self.rules[idx]
    }

    pub fn is_live(&self, idx: usize) -> bool {
        self.rules.get(idx).is_some_and(|r| r.numerosity > 0)
    }

    pub fn live(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| r.numerosity > 0)
    }

    pub fn macro_count(&self) -> usize {
        self.live().count()
    }

    pub fn micro_count(&self) -> usize {
        self.rules.iter().map(|r| r.numerosity as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.macro_count() == 0
    }

    /// Append without a duplicate check. Returns the new index.
    pub fn push(&mut self, rule: Rule) -> usize {
        debug_assert_eq!(rule.condition.dims(), self.dims);
        self.rules.push(rule);
        self.rules.len() - 1
    }

    /// Insert `rule`, absorbing it into a live macro rule with an identical
    /// condition if one exists. Returns the index holding the rule.
    pub fn insert_with_duplicate_merge(&mut self, rule: Rule) -> usize {
        debug_assert!(rule.numerosity >= 1);
        if let Some(idx) = self
            .rules
            .iter()
            .position(|r| r.numerosity > 0 && r.condition.same_as(&rule.condition))
        {
            self.rules[idx].numerosity += rule.numerosity;
            idx
        } else {
            self.push(rule)
        }
    }

    /// Mark a rule dead. It stays in place until the next purge.
    pub fn remove(&mut self, idx: usize) -> Result<Rule> {
        if !self.is_live(idx) {
            return Err(UcsError::NotInPopulation(idx));
        }
        let removed = self.rules[idx].clone();
        self.rules[idx].numerosity = 0;
        Ok(removed)
    }

    /// Drop dead rules, compacting storage.
    pub fn purge(&mut self) {
        self.rules.retain(|r| r.numerosity > 0);
    }

    /// Write a snapshot of the live rules.
    pub fn write_snapshot<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "ucs-ruleset dims={} classes={} representation={} capacity={}",
            self.dims, self.class_count, self.representation, self.capacity
        )?;
        for rule in self.live() {
            writeln!(out, "{}", self.format_rule(rule))?;
        }
        Ok(())
    }

    fn format_rule(&self, rule: &Rule) -> String {
        let mut line = String::new();
        let _ = write!(line, "{} |", self.representation);
        for set in rule.condition.sets() {
            match *set {
                FuzzySet::CenterSpread { center, spread } => {
                    let _ = write!(line, " {center:?} {spread:?}");
                }
                FuzzySet::Trapezoid { a, b, c, d } => {
                    let _ = write!(line, " {a:?} {b:?} {c:?} {d:?}");
                }
            }
        }
        line.push_str(" |");
        match rule.condition.indicator() {
            Some(bits) => bits.iter().for_each(|&b| line.push_str(if b { " 1" } else { " 0" })),
            None => line.push_str(" -"),
        }
        let _ = write!(
            line,
            " | {} | {:?} | {:?} | {} |",
            rule.class, rule.fitness, rule.experience, rule.numerosity
        );
        for v in &rule.class_weights {
            let _ = write!(line, " {v:?}");
        }
        line.push_str(" |");
        for cm in &rule.correct_matchings {
            let _ = write!(line, " {cm:?}");
        }
        let _ = write!(line, " | {}", rule.ga_timestamp);
        line
    }

    /// Read a snapshot written by [`Population::write_snapshot`].
    pub fn read_snapshot<R: BufRead>(input: R) -> Result<Population> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .transpose()?
            .ok_or_else(|| snap_err(1, "missing header"))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("ucs-ruleset") {
            return Err(snap_err(1, "not a ruleset snapshot"));
        }
        let (mut dims, mut classes, mut repr, mut capacity) = (None, None, None, None);
        for f in fields {
            let (k, v) = f.split_once('=').ok_or_else(|| snap_err(1, "bad header field"))?;
            match k {
                "dims" => dims = v.parse().ok(),
                "classes" => classes = v.parse().ok(),
                "representation" => repr = v.parse::<Representation>().ok(),
                "capacity" => capacity = v.parse().ok(),
                _ => return Err(snap_err(1, &format!("unknown header field `{k}`"))),
            }
        }
        let (Some(dims), Some(classes), Some(repr)) = (dims, classes, repr) else {
            return Err(snap_err(1, "header needs dims, classes and representation"));
        };
        let mut pop = Population::new(dims, classes, capacity.unwrap_or(usize::MAX), repr);
        for (i, line) in lines.enumerate() {
            let line = line?;
            let lineno = i + 2;
            if line.trim().is_empty() {
                continue;
            }
            let rule = parse_rule(&line, dims, classes, repr).map_err(|m| snap_err(lineno, &m))?;
            pop.push(rule);
        }
        Ok(pop)
    }
}

fn snap_err(line: usize, msg: &str) -> UcsError {
    UcsError::Snapshot { line, msg: msg.to_string() }
}

fn parse_rule(line: &str, dims: usize, classes: usize, repr: Representation) -> std::result::Result<Rule, String> {
    let parts: Vec<&str> = line.split('|').map(str::trim).collect();
    if parts.len() != 10 {
        return Err(format!("expected 10 fields, found {}", parts.len()));
    }
    let tag: Representation = parts[0].parse().map_err(|e: UcsError| e.to_string())?;
    if tag != repr {
        return Err(format!("rule tag `{tag}` does not match header `{repr}`"));
    }
    let floats = |s: &str| -> std::result::Result<Vec<f64>, String> {
        s.split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| format!("bad number `{t}`")))
            .collect()
    };
    let nums = floats(parts[1])?;
    let condition = if repr.uses_center_spread() {
        if nums.len() != 2 * dims {
            return Err("wrong number of condition values".into());
        }
        let bits: Vec<bool> = parts[2]
            .split_whitespace()
            .map(|t| match t {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(format!("bad indicator bit `{t}`")),
            })
            .collect::<std::result::Result<_, _>>()?;
        if bits.len() != dims {
            return Err("wrong number of indicator bits".into());
        }
        let pairs: Vec<_> = nums.chunks(2).map(|p| (p[0], p[1])).collect();
        Condition::center_spread(&pairs, &bits)
    } else {
        if nums.len() != 4 * dims {
            return Err("wrong number of condition values".into());
        }
        let quads: Vec<_> = nums.chunks(4).map(|q| [q[0], q[1], q[2], q[3]]).collect();
        Condition::trapezoid(&quads)
    };
    let class: usize = parts[3].parse().map_err(|_| "bad class".to_string())?;
    if class >= classes {
        return Err(format!("class {class} out of range"));
    }
    let fitness: f64 = parts[4].parse().map_err(|_| "bad fitness".to_string())?;
    let experience: f64 = parts[5].parse().map_err(|_| "bad experience".to_string())?;
    let numerosity: u32 = parts[6].parse().map_err(|_| "bad numerosity".to_string())?;
    if numerosity == 0 {
        return Err("numerosity must be at least 1".into());
    }
    let class_weights = floats(parts[7])?;
    let correct_matchings = floats(parts[8])?;
    if class_weights.len() != classes || correct_matchings.len() != classes {
        return Err("class vectors have the wrong length".into());
    }
    let ga_timestamp: u64 = parts[9].parse().map_err(|_| "bad timestamp".to_string())?;
    let weight = class_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(Rule {
        condition,
        class,
        weight,
        fitness,
        experience,
        numerosity,
        correct_matchings,
        class_weights,
        ga_timestamp,
    })
}
