//! Plain-text notation for games.
//!
//! The grammar, whitespace-insensitive:
//!
//! ```text
//! expr := term ('+' term)*
//! term := '~' term | atom
//! atom := '0' | '1' | '*' | '{' list '|' list '}' | '(' expr ')'
//! list := empty | '·' | expr (',' expr)*
//! ```
//!
//! `~` conjugates (so `~1` is the mirror of `1`), `+` is disjunctive sum,
//! and `·` (or a plain `.`) is an optional marker for an empty option list,
//! so `{|}`, `{·|·}` and `0` all denote the same game. Errors carry a
//! 1-based character position and the expected-token set at that point.
//!
//! Printing inverts parsing: `0`, `*`, `1`, `~1` print as themselves, every
//! other game as `{options|options}` with options in stored order and empty
//! sides left blank. Parsing a printed game always returns the same id.

use thiserror::Error;

use crate::arena::{Arena, GameId};

/// Where and why parsing stopped. `position` counts characters from 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: found {found}, expected {expected}")]
pub struct ParseError {
    pub position: usize,
    pub found: String,
    pub expected: &'static str,
}

/// The syntax tree of a game expression, realized against an arena with
/// [`GameExpression::realize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameExpression {
    Zero,
    One,
    Star,
    Conjugate(Box<GameExpression>),
    Sum(Box<GameExpression>, Box<GameExpression>),
    Braces {
        left: Vec<GameExpression>,
        right: Vec<GameExpression>,
    },
}

impl GameExpression {
    /// Intern the denoted game.
    pub fn realize(&self, arena: &mut Arena) -> GameId {
        match self {
            GameExpression::Zero => arena.zero(),
            GameExpression::One => arena.one(),
            GameExpression::Star => arena.star(),
            GameExpression::Conjugate(e) => {
                let g = e.realize(arena);
                arena.conjugate(g)
            }
            GameExpression::Sum(a, b) => {
                let x = a.realize(arena);
                let y = b.realize(arena);
                arena.sum(x, y)
            }
            GameExpression::Braces { left, right } => {
                let l: Vec<GameId> = left.iter().map(|e| e.realize(arena)).collect();
                let r: Vec<GameId> = right.iter().map(|e| e.realize(arena)).collect();
                arena.intern(l, r)
            }
        }
    }
}

/// Parse a game expression, without touching any arena.
pub fn parse_game(input: &str) -> Result<GameExpression, ParseError> {
    let mut parser = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.peek().is_some() {
        return Err(parser.error("'+' or end of input"));
    }
    Ok(expr)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, expected: &'static str) -> ParseError {
        ParseError {
            position: self.pos + 1,
            found: match self.peek() {
                Some(c) => format!("'{c}'"),
                None => "end of input".to_string(),
            },
            expected,
        }
    }

    fn at_expression_start(&self) -> bool {
        matches!(self.peek(), Some('0' | '1' | '*' | '~' | '{' | '('))
    }

    fn expr(&mut self) -> Result<GameExpression, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('+') {
                self.pos += 1;
                let rhs = self.term()?;
                acc = GameExpression::Sum(Box::new(acc), Box::new(rhs));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GameExpression, ParseError> {
        self.skip_ws();
        if self.peek() == Some('~') {
            self.pos += 1;
            Ok(GameExpression::Conjugate(Box::new(self.term()?)))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<GameExpression, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(GameExpression::Zero)
            }
            Some('1') => {
                self.pos += 1;
                Ok(GameExpression::One)
            }
            Some('*') => {
                self.pos += 1;
                Ok(GameExpression::Star)
            }
            Some('{') => {
                self.pos += 1;
                let left = self.list('|', "an expression or '|'", "',' or '|'")?;
                self.skip_ws();
                if self.peek() != Some('|') {
                    return Err(self.error("'|'"));
                }
                self.pos += 1;
                let right = self.list('}', "an expression or '}'", "',' or '}'")?;
                self.skip_ws();
                if self.peek() != Some('}') {
                    return Err(self.error("'}'"));
                }
                self.pos += 1;
                Ok(GameExpression::Braces { left, right })
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("'+' or ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("an expression")),
        }
    }

    fn list(
        &mut self,
        terminator: char,
        expected_at_start: &'static str,
        expected_after_item: &'static str,
    ) -> Result<Vec<GameExpression>, ParseError> {
        self.skip_ws();
        if self.peek() == Some(terminator) {
            return Ok(Vec::new());
        }
        if matches!(self.peek(), Some('·' | '.')) {
            self.pos += 1;
            self.skip_ws();
            if self.peek() == Some(terminator) {
                return Ok(Vec::new());
            }
            return Err(self.error(if terminator == '|' { "'|'" } else { "'}'" }));
        }
        if !self.at_expression_start() {
            return Err(self.error(expected_at_start));
        }
        let mut items = vec![self.expr()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    items.push(self.expr()?);
                }
                Some(c) if c == terminator => return Ok(items),
                _ => return Err(self.error(expected_after_item)),
            }
        }
    }
}

impl Arena {
    /// Parse and intern a game in one step.
    pub fn parse(&mut self, input: &str) -> Result<GameId, ParseError> {
        Ok(parse_game(input)?.realize(self))
    }

    /// Render a game in the notation this module parses. The four named
    /// constants print as `0`, `*`, `1`, `~1`; everything else prints its
    /// options in stored order, empty sides left blank.
    pub fn print_game(&self, g: GameId) -> String {
        let z = self.zero();
        let node = self.node(g);
        let single_zero = |side: &[GameId]| side == [z];
        match (node.left(), node.right()) {
            (l, r) if l.is_empty() && r.is_empty() => "0".to_string(),
            (l, r) if single_zero(l) && single_zero(r) => "*".to_string(),
            (l, r) if single_zero(l) && r.is_empty() => "1".to_string(),
            (l, r) if l.is_empty() && single_zero(r) => "~1".to_string(),
            (l, r) => {
                let print_side = |side: &[GameId]| {
                    side.iter()
                        .map(|&o| self.print_game(o))
                        .collect::<Vec<_>>()
                        .join(",")
                };
                format!("{{{}|{}}}", print_side(l), print_side(r))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{day1_games, day2_games};

    #[test]
    fn constants_parse_to_the_named_games() {
        let mut arena = Arena::new();
        let z = arena.zero();
        let s = arena.star();
        let one = arena.one();
        let one_bar = arena.one_bar();
        assert_eq!(arena.parse("0"), Ok(z));
        assert_eq!(arena.parse("*"), Ok(s));
        assert_eq!(arena.parse("1"), Ok(one));
        assert_eq!(arena.parse("~1"), Ok(one_bar));
        assert_eq!(arena.parse("{0|}"), Ok(one));
        assert_eq!(arena.parse("{|0}"), Ok(one_bar));
        assert_eq!(arena.parse("{0|0}"), Ok(s));
    }

    #[test]
    fn empty_lists_spell_zero() {
        let mut arena = Arena::new();
        let z = arena.zero();
        assert_eq!(arena.parse("{|}"), Ok(z));
        assert_eq!(arena.parse("{·|·}"), Ok(z));
        assert_eq!(arena.parse("{.|.}"), Ok(z));
        assert_eq!(arena.parse("{·|}"), Ok(z));
    }

    #[test]
    fn sums_conjugates_and_parens_combine() {
        let mut arena = Arena::new();
        let s = arena.star();
        let one = arena.one();
        let one_bar = arena.one_bar();
        let expected = arena.sum(one, one_bar);
        assert_eq!(arena.parse("1+~1"), Ok(expected));
        assert_eq!(arena.parse("~(1+~1)"), Ok(arena.conjugate(expected)));
        assert_eq!(arena.parse("~*"), Ok(s));
        let braced = arena.intern(vec![one], vec![arena.zero()]);
        let conj = arena.conjugate(braced);
        assert_eq!(arena.parse("~{1|0}"), Ok(conj));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let mut arena = Arena::new();
        let z = arena.zero();
        let s = arena.star();
        let expected = arena.intern(vec![z, s], vec![]);
        assert_eq!(arena.parse(" { 0 , * | } "), Ok(expected));
        assert_eq!(arena.parse("{0,*|}"), Ok(expected));
    }

    #[test]
    fn option_order_in_the_source_is_irrelevant() {
        let mut arena = Arena::new();
        assert_eq!(
            arena.parse("{|1,*}").unwrap(),
            arena.parse("{|*,1}").unwrap()
        );
    }

    #[test]
    fn named_constants_print_as_themselves() {
        let mut arena = Arena::new();
        let z = arena.zero();
        let s = arena.star();
        let one = arena.one();
        let one_bar = arena.one_bar();
        assert_eq!(arena.print_game(z), "0");
        assert_eq!(arena.print_game(s), "*");
        assert_eq!(arena.print_game(one), "1");
        assert_eq!(arena.print_game(one_bar), "~1");
    }

    #[test]
    fn braces_print_in_stored_order_with_blank_empty_sides() {
        let mut arena = Arena::new();
        let s = arena.star();
        let one = arena.one();
        let big = arena.intern(vec![], vec![s, one]);
        // Day-1 games sort structurally as 0, ~1, 1, *.
        assert_eq!(arena.print_game(big), "{|1,*}");
        let nested = arena.intern(vec![big], vec![s]);
        assert_eq!(arena.print_game(nested), "{{|1,*}|*}");
    }

    #[test]
    fn printing_then_parsing_is_the_identity_on_small_games() {
        let mut arena = Arena::new();
        let mut games = day1_games(&mut arena);
        games.extend(day2_games(&mut arena));
        let s = arena.star();
        games.push(arena.sum(s, s));
        for g in games {
            let text = arena.print_game(g);
            assert_eq!(arena.parse(&text), Ok(g), "round trip of {text}");
        }
    }

    #[test]
    fn error_positions_count_characters_from_one() {
        assert_eq!(
            parse_game(""),
            Err(ParseError {
                position: 1,
                found: "end of input".to_string(),
                expected: "an expression",
            })
        );
        assert_eq!(
            parse_game("0|1"),
            Err(ParseError {
                position: 2,
                found: "'|'".to_string(),
                expected: "'+' or end of input",
            })
        );
        assert_eq!(
            parse_game("{0||0}"),
            Err(ParseError {
                position: 4,
                found: "'|'".to_string(),
                expected: "an expression or '}'",
            })
        );
        assert_eq!(
            parse_game("{0|"),
            Err(ParseError {
                position: 4,
                found: "end of input".to_string(),
                expected: "an expression or '}'",
            })
        );
        assert_eq!(
            parse_game("{0}"),
            Err(ParseError {
                position: 3,
                found: "'}'".to_string(),
                expected: "',' or '|'",
            })
        );
        assert_eq!(
            parse_game("(0"),
            Err(ParseError {
                position: 3,
                found: "end of input".to_string(),
                expected: "'+' or ')'",
            })
        );
        assert_eq!(
            parse_game("0+"),
            Err(ParseError {
                position: 3,
                found: "end of input".to_string(),
                expected: "an expression",
            })
        );
    }

    #[test]
    fn the_dot_marker_is_counted_as_one_character() {
        // '·' is multi-byte in UTF-8 but one character for positions.
        assert_eq!(
            parse_game("{·0|}"),
            Err(ParseError {
                position: 3,
                found: "'0'".to_string(),
                expected: "'|'",
            })
        );
    }
}
