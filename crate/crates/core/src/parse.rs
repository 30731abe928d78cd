//! Parser for the line-oriented reaction format.
//!
//! ```text
//! # comment
//! R1: T + V -> I + V
//! R2: I -> 0            ; # trailing comment
//! R3: 2X5 + X1 <-> X5 + X1
//! ```
//!
//! A reversible arrow expands into two reactions, `<label>f` then
//! `<label>b`. Species and complexes are numbered by first appearance,
//! reactions by source order.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{is_identifier, Complex, Network, Reaction};

pub fn parse_network(text: &str) -> Result<Network> {
    let mut builder = Builder::default();
    for (i, raw) in text.lines().enumerate() {
        builder.line(i + 1, raw)?;
    }
    if builder.reactions.is_empty() {
        return Err(Error::EmptyNetwork);
    }
    // Line-aware checks already ran, so any error here is a bug in the builder
    // or a rule only the model enforces.
    Network::new(builder.species, builder.complexes, builder.reactions).map_err(|e| match e {
        Error::DuplicateLabel { label, .. } => {
            let line = builder.label_lines.get(&label).copied().unwrap_or(0);
            Error::DuplicateLabel { line, label }
        }
        other => other,
    })
}

#[derive(Default)]
struct Builder {
    species: Vec<String>,
    species_index: HashMap<String, usize>,
    complexes: Vec<Complex>,
    complex_index: HashMap<Complex, usize>,
    reactions: Vec<Reaction>,
    pairs: HashMap<(usize, usize), usize>,
    labels: HashMap<String, usize>,
    label_lines: HashMap<String, usize>,
}

impl Builder {
    fn line(&mut self, line: usize, raw: &str) -> Result<()> {
        let syntax = |message: &str| Error::Syntax {
            line,
            message: message.to_string(),
        };
        let mut body = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if let Some(rest) = body.strip_suffix(';') {
            body = rest.trim_end();
        }
        if body.is_empty() {
            return Ok(());
        }
        if body.contains(';') {
            return Err(syntax("`;` may only introduce a trailing comment"));
        }

        let (label, body) = match body.split_once(':') {
            Some((l, rest)) => {
                let l = l.trim();
                if !is_identifier(l) {
                    return Err(syntax(&format!("`{l}` is not a valid reaction label")));
                }
                (Some(l.to_string()), rest.trim())
            }
            None => (None, body),
        };

        let (lhs, rhs, reversible) = if let Some((l, r)) = body.split_once("<->") {
            (l, r, true)
        } else if let Some((l, r)) = body.split_once("->") {
            (l, r, false)
        } else {
            return Err(syntax("expected `->` or `<->`"));
        };
        if rhs.contains("->") {
            return Err(syntax("more than one arrow"));
        }
        if lhs.contains('<') || lhs.contains('>') || rhs.contains('<') || rhs.contains('>') {
            return Err(syntax("malformed arrow"));
        }

        // Species and complexes are registered reactant side first.
        let reactant = self.complex(line, lhs)?;
        let product = self.complex(line, rhs)?;
        if reactant == product {
            return Err(Error::SelfLoop { line });
        }
        match (reversible, label) {
            (false, label) => self.reaction(line, label, reactant, product)?,
            (true, label) => {
                let (fw, bw) = match label {
                    Some(l) => (Some(format!("{l}f")), Some(format!("{l}b"))),
                    None => (None, None),
                };
                self.reaction(line, fw, reactant, product)?;
                self.reaction(line, bw, product, reactant)?;
            }
        }
        Ok(())
    }

    fn reaction(
        &mut self,
        line: usize,
        label: Option<String>,
        reactant: usize,
        product: usize,
    ) -> Result<()> {
        if self.pairs.insert((reactant, product), line).is_some() {
            let names = &self.species;
            return Err(Error::DuplicateReaction {
                line,
                reactant: crate::model::render_complex(&self.complexes[reactant], names),
                product: crate::model::render_complex(&self.complexes[product], names),
            });
        }
        if let Some(l) = &label {
            if self.labels.insert(l.clone(), line).is_some() {
                return Err(Error::DuplicateLabel {
                    line,
                    label: l.clone(),
                });
            }
            self.label_lines.insert(l.clone(), line);
        } else {
            // Unlabeled reactions are named by position; remember the line so a
            // clash with an explicit label can be reported.
            let implicit = format!("R{}", self.reactions.len() + 1);
            self.label_lines.entry(implicit).or_insert(line);
        }
        self.reactions.push(Reaction {
            label,
            reactant,
            product,
        });
        Ok(())
    }

    fn complex(&mut self, line: usize, text: &str) -> Result<usize> {
        let text = text.trim();
        let syntax = |message: String| Error::Syntax { line, message };
        if text.is_empty() {
            return Err(syntax("missing complex".into()));
        }
        let complex = if text == "0" {
            Complex::zero()
        } else {
            let mut terms = Vec::new();
            for term in text.split('+') {
                let term = term.trim();
                if term.is_empty() {
                    return Err(syntax("empty term".into()));
                }
                let digits = term.chars().take_while(char::is_ascii_digit).count();
                let (coef, name) = term.split_at(digits);
                let coef: u32 = if coef.is_empty() {
                    1
                } else {
                    coef.parse()
                        .map_err(|_| syntax(format!("bad coefficient `{coef}`")))?
                };
                if coef == 0 {
                    return Err(syntax(format!("coefficient must be positive in `{term}`")));
                }
                let name = name.trim();
                if !is_identifier(name) {
                    return Err(syntax(format!("`{name}` is not a valid species name")));
                }
                let s = match self.species_index.get(name) {
                    Some(&s) => s,
                    None => {
                        self.species.push(name.to_string());
                        self.species_index
                            .insert(name.to_string(), self.species.len() - 1);
                        self.species.len() - 1
                    }
                };
                terms.push((s, coef));
            }
            Complex::from_terms(terms)
        };
        Ok(match self.complex_index.get(&complex) {
            Some(&c) => c,
            None => {
                self.complexes.push(complex.clone());
                self.complex_index.insert(complex, self.complexes.len() - 1);
                self.complexes.len() - 1
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn influenza_counts() {
        let net =
            parse_network("R1: T + V -> I + V\nR2: I -> 0\nR3: I -> I + V\nR4: V -> 0").unwrap();
        assert_eq!(net.species_count(), 3);
        assert_eq!(net.complex_count(), 5);
        assert_eq!(net.reaction_count(), 4);
        let names: Vec<_> = net.species().iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["T", "V", "I"]);
        let y = net.molecularity_matrix();
        let zero = (0..net.complex_count())
            .find(|&c| net.complexes()[c].is_zero())
            .unwrap();
        assert!(y.column(zero).iter().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn self_loop() {
        assert_eq!(
            parse_network("R1: X1 -> X1"),
            Err(Error::SelfLoop { line: 1 })
        );
        assert_eq!(
            parse_network("# c\nR1: A + B -> B + A"),
            Err(Error::SelfLoop { line: 2 })
        );
    }

    #[test]
    fn juxtaposed_and_spaced_coefficients() {
        let net = parse_network("R1: 2 X5 + X1 -> X5 + X1").unwrap();
        assert_eq!(net.reaction_count(), 1);
        let x5 = net.species_index("X5").unwrap();
        let x1 = net.species_index("X1").unwrap();
        let rx = &net.reactions()[0];
        let reactant = &net.complexes()[rx.reactant];
        let product = &net.complexes()[rx.product];
        assert_eq!((reactant.coefficient(x5), reactant.coefficient(x1)), (2, 1));
        assert_eq!((product.coefficient(x5), product.coefficient(x1)), (1, 1));
        assert_eq!(parse_network("R1: 2X5 + X1 -> X5 + X1").unwrap(), net);
    }

    #[test]
    fn reversible_expansion() {
        let net = parse_network("R1: A <-> B\nR2: B -> C").unwrap();
        let names: Vec<_> = (0..3).map(|j| net.reaction_name(j)).collect();
        assert_eq!(names, ["R1f", "R1b", "R2"]);
        assert_eq!(net.reactions()[1].reactant, net.reactions()[0].product);
    }

    #[test]
    fn comments_and_blank_lines() {
        let net =
            parse_network("\n# header\n  R1: A -> B ; # trailing\nR2: B -> 0 # also fine\n\n")
                .unwrap();
        assert_eq!(net.reaction_count(), 2);
    }

    #[test]
    fn duplicate_reaction() {
        assert!(matches!(
            parse_network("R1: A -> B\nR2: A -> B"),
            Err(Error::DuplicateReaction { line: 2, .. })
        ));
        assert!(matches!(
            parse_network("R1: A <-> B\nR2: B -> A"),
            Err(Error::DuplicateReaction { line: 2, .. })
        ));
        // Equal reaction vectors from different complexes are fine.
        assert!(parse_network("R1: A -> B\nR2: A + C -> B + C").is_ok());
    }

    #[test]
    fn duplicate_label() {
        assert_eq!(
            parse_network("R1: A -> B\nR1: B -> C"),
            Err(Error::DuplicateLabel {
                line: 2,
                label: "R1".into()
            })
        );
        assert_eq!(
            parse_network("A -> B\nR1: B -> C"),
            Err(Error::DuplicateLabel {
                line: 2,
                label: "R1".into()
            })
        );
    }

    #[test]
    fn empty() {
        assert_eq!(parse_network(""), Err(Error::EmptyNetwork));
        assert_eq!(parse_network("# only\n\n"), Err(Error::EmptyNetwork));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        for (src, line) in [
            ("A B", 1),
            ("\nR1: A -> ", 2),
            ("R1: A -> B -> C", 1),
            ("R1: 0A -> B", 1),
            ("R1: A + -> B", 1),
            ("R 1: A -> B", 1),
            ("R1: 2 3A -> B", 1),
            ("R1: A -> B; x", 1),
            ("R1: A => B", 1),
        ] {
            match parse_network(src) {
                Err(Error::Syntax { line: l, .. }) => assert_eq!(l, line, "{src:?}"),
                other => panic!("{src:?}: {other:?}"),
            }
        }
    }
}
