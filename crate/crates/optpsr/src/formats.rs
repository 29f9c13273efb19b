//! Line-oriented text formats for instances, profiles, utility tables,
//! universes, parity systems, and benchmark reports, plus the rule
//! spellings and rational/percent formatting used by the command-line
//! front end.
//!
//! All formats are UTF-8 text with whitespace-separated tokens.  Blank
//! lines (including whitespace-only lines) are ignored when parsing;
//! serializers emit a canonical form with no blank lines and exactly one
//! trailing newline, so `parse(serialize(x)) = x` holds structurally and
//! serializing twice is byte-identical.
//!
//! Parse failures report 1-based line and column (byte offset) numbers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::experiment::{Report, ReportRow};
use crate::generators::{Lin2Equation, Lin2System, UtilityTable};
use crate::model::{AlternativeId, Constraint, Instance, RankingProfile, Vote};
use crate::rules::NamedRule;
use crate::Rat;

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into `(1-based byte column, token)` pairs.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// All non-blank lines as `(1-based line number, tokens)`, plus the total
/// line count for end-of-file diagnostics.
fn significant_lines(text: &str) -> (Vec<(usize, Vec<(usize, &str)>)>, usize) {
    let mut out = Vec::new();
    let mut total = 0;
    for (i, line) in text.lines().enumerate() {
        total = i + 1;
        let tokens = tokenize(line);
        if !tokens.is_empty() {
            out.push((i + 1, tokens));
        }
    }
    (out, total)
}

struct LineReader<'a> {
    lines: Vec<(usize, Vec<(usize, &'a str)>)>,
    next: usize,
    eof_line: usize,
}

impl<'a> LineReader<'a> {
    fn new(text: &'a str) -> Self {
        let (lines, total) = significant_lines(text);
        LineReader {
            lines,
            next: 0,
            eof_line: total + 1,
        }
    }

    fn take(&mut self) -> Option<&(usize, Vec<(usize, &'a str)>)> {
        let item = self.lines.get(self.next);
        if item.is_some() {
            self.next += 1;
        }
        item
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<(usize, &'a str)>)> {
        let eof = self.eof_line;
        match self.take() {
            Some(item) => Ok(item.clone()),
            None => Err(perr(eof, 1, format!("expected {what}, found end of input"))),
        }
    }

    fn expect_header(&mut self, name: &str) -> Result<()> {
        let (line, tokens) = self.expect(&format!("header `{name} v1`"))?;
        if tokens.len() != 2 || tokens[0].1 != name || tokens[1].1 != "v1" {
            return Err(perr(
                line,
                tokens[0].0,
                format!("expected header `{name} v1`"),
            ));
        }
        Ok(())
    }

    fn expect_keyed_integer(&mut self, key: &str) -> Result<(usize, u64)> {
        let (line, tokens) = self.expect(&format!("line `{key} <integer>`"))?;
        if tokens.len() != 2 || tokens[0].1 != key {
            return Err(perr(
                line,
                tokens[0].0,
                format!("expected line `{key} <integer>`"),
            ));
        }
        let value = parse_u64_token(line, tokens[1])?;
        Ok((line, value))
    }
}

fn parse_u64_token(line: usize, (col, tok): (usize, &str)) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| {
        perr(
            line,
            col,
            format!("expected a non-negative integer, got `{tok}`"),
        )
    })
}

fn parse_usize_token(line: usize, token: (usize, &str)) -> Result<usize> {
    parse_u64_token(line, token).map(|v| v as usize)
}

fn parse_i64_token(line: usize, (col, tok): (usize, &str)) -> Result<i64> {
    tok.parse::<i64>()
        .map_err(|_| perr(line, col, format!("expected an integer, got `{tok}`")))
}

fn parse_alternative_token(line: usize, (col, tok): (usize, &str)) -> Result<AlternativeId> {
    AlternativeId::new(tok).map_err(|e| perr(line, col, e.to_string()))
}

/// Parses a rational token: an integer `-3`, a fraction `p/q`, or a
/// decimal `0.75` (converted exactly).
pub fn parse_rational(token: &str) -> Result<Rat> {
    let bad = || Error::Validation(format!("`{token}` is not a rational number"));
    let (sign, body) = match token.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, token),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let magnitude = if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) {
            return Err(bad());
        }
        let den: BigInt = den.parse().expect("digit-checked");
        if den.is_zero() {
            return Err(Error::Validation(format!(
                "`{token}` has a zero denominator"
            )));
        }
        Rat::new(num.parse().expect("digit-checked"), den)
    } else if let Some((int_part, frac_part)) = body.split_once('.') {
        if !digits(int_part) || !digits(frac_part) {
            return Err(bad());
        }
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let numer: BigInt = BigInt::from(int_part.parse::<BigInt>().expect("digit-checked"))
            * &scale
            + frac_part.parse::<BigInt>().expect("digit-checked");
        Rat::new(numer, scale)
    } else {
        if !digits(body) {
            return Err(bad());
        }
        Rat::from_integer(body.parse().expect("digit-checked"))
    };
    Ok(if sign < 0 { -magnitude } else { magnitude })
}

fn parse_rational_token(line: usize, (col, tok): (usize, &str)) -> Result<Rat> {
    parse_rational(tok).map_err(|e| perr(line, col, e.to_string()))
}

/// Canonical text form of a rational: `p/q`, or just `p` when the
/// denominator is one.
pub fn format_rational(value: &Rat) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Formats an exact percentage to two decimals, rounding half to even.
pub fn format_percent(value: &Rat) -> String {
    // Work in hundredths: round value * 100 to the nearest integer.
    let scaled = value * Rat::from_integer(100.into());
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let half = Rat::new(1.into(), 2.into());
    let mut hundredths = floor.to_integer();
    if frac > half || (frac == half && hundredths.is_odd()) {
        hundredths += 1;
    }
    let sign = if hundredths.is_negative() { "-" } else { "" };
    let (whole, cents) = hundredths.abs().div_rem(&BigInt::from(100));
    format!("{sign}{whole}.{:02}", cents)
}

/// Parses a rule spelling: `borda`, `harmonic`, `approval:<t>`, or
/// `vector:<r1,r2,...>` with rational or decimal entries.
pub fn parse_rule(spelling: &str) -> Result<NamedRule<Rat>> {
    match spelling {
        "borda" => return Ok(NamedRule::Borda),
        "harmonic" => return Ok(NamedRule::Harmonic),
        _ => {}
    }
    if let Some(t) = spelling.strip_prefix("approval:") {
        let t: usize = t.parse().map_err(|_| {
            Error::Validation(format!(
                "`{spelling}`: the approval threshold must be a positive integer"
            ))
        })?;
        return Ok(NamedRule::Approval(t));
    }
    if let Some(body) = spelling.strip_prefix("vector:") {
        let scores = body
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Validation(format!("`{spelling}`: {e}")))?;
        return Ok(NamedRule::Custom(scores));
    }
    Err(Error::Validation(format!(
        "unknown rule spelling `{spelling}`; use borda, harmonic, approval:<t>, or vector:<s1,s2,...>"
    )))
}

/// Canonical spelling for a rule (custom vectors print exact rationals).
pub fn rule_spelling(rule: &NamedRule<Rat>) -> String {
    match rule {
        NamedRule::Borda => "borda".into(),
        NamedRule::Harmonic => "harmonic".into(),
        NamedRule::Approval(t) => format!("approval:{t}"),
        NamedRule::Custom(scores) => {
            let body: Vec<String> = scores.iter().map(format_rational).collect();
            format!("vector:{}", body.join(","))
        }
    }
}

/// Serializes an instance:
///
/// ```text
/// optpsr-instance v1
/// d 2
/// x y 3 -2 3
/// ```
pub fn serialize_instance(instance: &Instance<Rat>) -> String {
    let mut out = String::from("optpsr-instance v1\n");
    out.push_str(&format!("d {}\n", instance.d()));
    for c in instance.constraints() {
        out.push_str(&format!(
            "{} {} {}",
            c.x(),
            c.y(),
            format_rational(c.weight())
        ));
        for delta in c.delta() {
            out.push_str(&format!(" {delta}"));
        }
        out.push('\n');
    }
    out
}

/// Parses the [`serialize_instance`] format.
pub fn parse_instance(text: &str) -> Result<Instance<Rat>> {
    let mut reader = LineReader::new(text);
    reader.expect_header("optpsr-instance")?;
    let (d_line, d) = reader.expect_keyed_integer("d")?;
    let d = d as usize;
    if d < 2 {
        return Err(perr(d_line, 1, format!("d must be at least 2, got {d}")));
    }
    let mut constraints = Vec::new();
    while let Some((line, tokens)) = reader.take().cloned() {
        if tokens.len() != 3 + d {
            return Err(perr(
                line,
                tokens[0].0,
                format!(
                    "a constraint line needs `x y weight` and {d} deltas ({} tokens), got {}",
                    3 + d,
                    tokens.len()
                ),
            ));
        }
        let x = parse_alternative_token(line, tokens[0])?;
        let y = parse_alternative_token(line, tokens[1])?;
        let weight = parse_rational_token(line, tokens[2])?;
        let delta = tokens[3..]
            .iter()
            .map(|&t| parse_i64_token(line, t))
            .collect::<Result<Vec<_>>>()?;
        constraints.push(
            Constraint::new(x, y, weight, delta)
                .map_err(|e| perr(line, tokens[0].0, e.to_string()))?,
        );
    }
    Instance::new(d, constraints).map_err(|e| perr(1, 1, e.to_string()))
}

/// Serializes a profile:
///
/// ```text
/// optpsr-profile v1
/// d 3
/// g0 a b c
/// ```
pub fn serialize_profile(profile: &RankingProfile) -> String {
    let mut out = String::from("optpsr-profile v1\n");
    out.push_str(&format!("d {}\n", profile.d));
    for vote in &profile.votes {
        out.push_str(&vote.agent);
        for x in &vote.ranked {
            out.push_str(&format!(" {x}"));
        }
        out.push('\n');
    }
    out
}

/// Parses the [`serialize_profile`] format.
pub fn parse_profile(text: &str) -> Result<RankingProfile> {
    let mut reader = LineReader::new(text);
    reader.expect_header("optpsr-profile")?;
    let (d_line, d) = reader.expect_keyed_integer("d")?;
    let d = d as usize;
    if d < 2 {
        return Err(perr(d_line, 1, format!("d must be at least 2, got {d}")));
    }
    let mut votes = Vec::new();
    while let Some((line, tokens)) = reader.take().cloned() {
        if tokens.len() != 1 + d {
            return Err(perr(
                line,
                tokens[0].0,
                format!(
                    "a vote line needs an agent and {d} alternatives, got {} tokens",
                    tokens.len()
                ),
            ));
        }
        let agent = tokens[0].1.to_string();
        let mut ranked = Vec::with_capacity(d);
        for &t in &tokens[1..] {
            let x = parse_alternative_token(line, t)?;
            if ranked.contains(&x) {
                return Err(perr(
                    line,
                    t.0,
                    format!("vote of `{agent}` ranks `{x}` twice"),
                ));
            }
            ranked.push(x);
        }
        votes.push(Vote::new(agent, ranked));
    }
    Ok(RankingProfile { d, votes })
}

/// Serializes a utility table, one `alternative utility` line per entry
/// in ascending alternative order (no header).
pub fn serialize_utilities(table: &UtilityTable) -> String {
    let mut out = String::new();
    for (alternative, utility) in table.iter() {
        out.push_str(&format!("{alternative} {}\n", format_rational(utility)));
    }
    out
}

/// Parses the [`serialize_utilities`] format.
pub fn parse_utilities(text: &str) -> Result<UtilityTable> {
    let mut table = UtilityTable::new();
    let (lines, _) = significant_lines(text);
    for (line, tokens) in lines {
        if tokens.len() != 2 {
            return Err(perr(
                line,
                tokens[0].0,
                format!(
                    "a utility line needs `alternative utility`, got {} tokens",
                    tokens.len()
                ),
            ));
        }
        let alternative = parse_alternative_token(line, tokens[0])?;
        if table.get(&alternative).is_some() {
            return Err(perr(
                line,
                tokens[0].0,
                format!("alternative `{alternative}` already has a utility"),
            ));
        }
        let utility = parse_rational_token(line, tokens[1])?;
        table
            .insert(alternative, utility)
            .map_err(|e| perr(line, tokens[1].0, e.to_string()))?;
    }
    Ok(table)
}

/// Serializes a universe: one alternative per line (no header).
pub fn serialize_universe(universe: &[AlternativeId]) -> String {
    let mut out = String::new();
    for x in universe {
        out.push_str(&format!("{x}\n"));
    }
    out
}

/// Parses the [`serialize_universe`] format.
pub fn parse_universe(text: &str) -> Result<Vec<AlternativeId>> {
    let mut universe = Vec::new();
    let (lines, _) = significant_lines(text);
    for (line, tokens) in lines {
        if tokens.len() != 1 {
            return Err(perr(
                line,
                tokens[1].0,
                "a universe line holds exactly one alternative",
            ));
        }
        let x = parse_alternative_token(line, tokens[0])?;
        if universe.contains(&x) {
            return Err(perr(
                line,
                tokens[0].0,
                format!("alternative `{x}` listed twice"),
            ));
        }
        universe.push(x);
    }
    Ok(universe)
}

/// Serializes a parity system:
///
/// ```text
/// optpsr-lin2 v1
/// n 3
/// 1 2 3 1
/// ```
///
/// Each equation line is the three variable indices followed by the
/// parity bit.
pub fn serialize_lin2(system: &Lin2System) -> String {
    let mut out = String::from("optpsr-lin2 v1\n");
    out.push_str(&format!("n {}\n", system.n()));
    for eq in system.equations() {
        let [i, j, k] = eq.vars();
        out.push_str(&format!("{i} {j} {k} {}\n", u8::from(eq.parity())));
    }
    out
}

/// Parses the [`serialize_lin2`] format.
pub fn parse_lin2(text: &str) -> Result<Lin2System> {
    let mut reader = LineReader::new(text);
    reader.expect_header("optpsr-lin2")?;
    let (_, n) = reader.expect_keyed_integer("n")?;
    let mut equations = Vec::new();
    while let Some((line, tokens)) = reader.take().cloned() {
        if tokens.len() != 4 {
            return Err(perr(
                line,
                tokens[0].0,
                format!(
                    "an equation line needs three variables and a parity bit, got {} tokens",
                    tokens.len()
                ),
            ));
        }
        let i = parse_usize_token(line, tokens[0])?;
        let j = parse_usize_token(line, tokens[1])?;
        let k = parse_usize_token(line, tokens[2])?;
        let parity = match tokens[3].1 {
            "0" => false,
            "1" => true,
            other => {
                return Err(perr(
                    line,
                    tokens[3].0,
                    format!("the parity bit must be 0 or 1, got `{other}`"),
                ))
            }
        };
        equations.push(
            Lin2Equation::new([i, j, k], parity)
                .map_err(|e| perr(line, tokens[0].0, e.to_string()))?,
        );
    }
    Lin2System::new(n as usize, equations).map_err(|e| perr(1, 1, e.to_string()))
}

/// Serializes a benchmark report:
///
/// ```text
/// optpsr-report v1
/// repetitions 50
/// omitted-ties 0
/// rule borda 2475/38 65.13
/// ```
///
/// Each rule row carries the exact mean percentage and its two-decimal
/// rendering.
pub fn serialize_report(report: &Report) -> String {
    let mut out = String::from("optpsr-report v1\n");
    out.push_str(&format!("repetitions {}\n", report.repetitions));
    out.push_str(&format!("omitted-ties {}\n", report.omitted_ties));
    for row in &report.rows {
        out.push_str(&format!(
            "rule {} {} {}\n",
            rule_spelling(&row.rule),
            format_rational(&row.mean_percent),
            format_percent(&row.mean_percent)
        ));
    }
    out
}

/// Parses the [`serialize_report`] format.
pub fn parse_report(text: &str) -> Result<Report> {
    let mut reader = LineReader::new(text);
    reader.expect_header("optpsr-report")?;
    let (_, repetitions) = reader.expect_keyed_integer("repetitions")?;
    let (_, omitted_ties) = reader.expect_keyed_integer("omitted-ties")?;
    let mut rows = Vec::new();
    while let Some((line, tokens)) = reader.take().cloned() {
        if tokens.len() != 4 || tokens[0].1 != "rule" {
            return Err(perr(
                line,
                tokens[0].0,
                "a report row reads `rule <spelling> <exact-percent> <two-decimals>`",
            ));
        }
        let rule = parse_rule(tokens[1].1).map_err(|e| perr(line, tokens[1].0, e.to_string()))?;
        let mean_percent = parse_rational_token(line, tokens[2])?;
        let rendered = format_percent(&mean_percent);
        if tokens[3].1 != rendered {
            return Err(perr(
                line,
                tokens[3].0,
                format!(
                    "the two-decimal column reads `{}` but the exact value renders as `{rendered}`",
                    tokens[3].1
                ),
            ));
        }
        rows.push(ReportRow { rule, mean_percent });
    }
    Ok(Report {
        repetitions,
        omitted_ties,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make_tight_instance, random_lin2};
    use crate::model::ScoringVector;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn rational_parsing_accepts_all_three_notations() {
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3, 1));
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("0.75").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        for bad in [
            "", "-", "1/0", "1/-2", "x", "1.", ".5", "1/2/3", "1e3", "+3",
        ] {
            assert!(parse_rational(bad).is_err(), "`{bad}` parsed");
        }
    }

    #[test]
    fn rational_formatting_is_canonical() {
        assert_eq!(format_rational(&rat(3, 1)), "3");
        assert_eq!(format_rational(&rat(-3, 4)), "-3/4");
        assert_eq!(format_rational(&rat(6, 8)), "3/4");
        assert_eq!(format_rational(&rat(0, 1)), "0");
    }

    #[test]
    fn percent_formatting_rounds_half_to_even() {
        assert_eq!(format_percent(&rat(100, 1)), "100.00");
        assert_eq!(format_percent(&rat(0, 1)), "0.00");
        assert_eq!(format_percent(&rat(100, 3)), "33.33");
        assert_eq!(format_percent(&rat(200, 3)), "66.67");
        // exact midpoints: .125 -> .12 (2 even), .135 -> .14 (4 even)
        assert_eq!(format_percent(&rat(125, 1000)), "0.12");
        assert_eq!(format_percent(&rat(135, 1000)), "0.14");
        assert_eq!(format_percent(&rat(-125, 1000)), "-0.12");
        assert_eq!(format_percent(&rat(1, 2)), "0.50");
    }

    #[test]
    fn rule_spellings_round_trip() {
        let rules = [
            NamedRule::Borda,
            NamedRule::Harmonic,
            NamedRule::Approval(3),
            NamedRule::Custom(vec![rat(1, 1), rat(3, 4), rat(0, 1)]),
        ];
        for rule in &rules {
            assert_eq!(&parse_rule(&rule_spelling(rule)).unwrap(), rule);
        }
        assert_eq!(
            parse_rule("vector:1,0.75").unwrap(),
            NamedRule::Custom(vec![rat(1, 1), rat(3, 4)])
        );
        for bad in [
            "bordaa",
            "approval:",
            "approval:x",
            "vector:",
            "vector:1,,2",
            "",
        ] {
            assert!(parse_rule(bad).is_err(), "`{bad}` parsed");
        }
    }

    #[test]
    fn instance_round_trip_is_identity() {
        let instance = make_tight_instance(3, &[7, 7, 7]).unwrap();
        let text = serialize_instance(&instance);
        assert_eq!(parse_instance(&text).unwrap(), instance);
        assert_eq!(serialize_instance(&parse_instance(&text).unwrap()), text);
    }

    #[test]
    fn instance_parsing_reports_positions() {
        let err = parse_instance("optpsr-instance v1\nd 2\nx y 1 3\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected: {other}"),
        }
        let err = parse_instance("optpsr-instance v1\nd 2\nx y 1 3 oops\n").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert_eq!(column, 9);
            }
            other => panic!("unexpected: {other}"),
        }
        assert!(parse_instance("").is_err());
        assert!(parse_instance("optpsr-profile v1\nd 2\n").is_err());
        assert!(parse_instance("optpsr-instance v1\nd 1\n").is_err());
        // negative weight rejected via constraint validation
        assert!(parse_instance("optpsr-instance v1\nd 2\nx y -1 3 0\n").is_err());
    }

    #[test]
    fn blank_lines_are_skipped_when_parsing() {
        let text = "\noptpsr-instance v1\n\n  \nd 2\n\nx y 3 -2 3\n\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.constraints().len(), 1);
        assert_eq!(inst.constraints()[0].delta(), &[-2, 3]);
    }

    #[test]
    fn profile_round_trip_is_identity() {
        let text = "optpsr-profile v1\nd 3\ng0 a b c\ng1 c a b\n";
        let profile = parse_profile(text).unwrap();
        assert_eq!(profile.votes.len(), 2);
        assert_eq!(serialize_profile(&profile), text);
        assert_eq!(
            parse_profile(&serialize_profile(&profile)).unwrap(),
            profile
        );
    }

    #[test]
    fn profile_parsing_rejects_duplicates_and_bad_lengths() {
        assert!(parse_profile("optpsr-profile v1\nd 3\ng0 a b a\n").is_err());
        assert!(parse_profile("optpsr-profile v1\nd 3\ng0 a b\n").is_err());
        let err = parse_profile("optpsr-profile v1\nd 3\ng0 a b a\n").unwrap_err();
        assert!(err.to_string().contains("g0"), "{err}");
    }

    #[test]
    fn utilities_round_trip_is_identity() {
        let text = "alpha 2\nbeta 1/2\n";
        let table = parse_utilities(text).unwrap();
        assert_eq!(serialize_utilities(&table), text);
        assert_eq!(
            parse_utilities(&serialize_utilities(&table)).unwrap(),
            table
        );
        assert!(parse_utilities("a 1\na 2\n").is_err());
        assert!(parse_utilities("a 0\n").is_err());
        assert!(parse_utilities("a\n").is_err());
        assert!(parse_utilities("").unwrap().is_empty());
    }

    #[test]
    fn universe_round_trip_is_identity() {
        let universe = parse_universe("a\nb\nc\n").unwrap();
        assert_eq!(universe.len(), 3);
        assert_eq!(serialize_universe(&universe), "a\nb\nc\n");
        assert!(parse_universe("a\na\n").is_err());
        assert!(parse_universe("a b\n").is_err());
    }

    #[test]
    fn lin2_round_trip_is_identity() {
        let system = random_lin2(5, 4, 9).unwrap();
        let text = serialize_lin2(&system);
        assert_eq!(parse_lin2(&text).unwrap(), system);
        assert!(parse_lin2("optpsr-lin2 v1\nn 3\n1 2 3 2\n").is_err());
        assert!(parse_lin2("optpsr-lin2 v1\nn 3\n1 2 2 0\n").is_err());
        assert!(parse_lin2("optpsr-lin2 v1\nn 2\n1 2 3 0\n").is_err());
    }

    #[test]
    fn report_round_trip_is_identity() {
        let report = Report {
            repetitions: 50,
            omitted_ties: 3,
            rows: vec![
                ReportRow {
                    rule: NamedRule::Borda,
                    mean_percent: rat(200, 3),
                },
                ReportRow {
                    rule: NamedRule::Approval(1),
                    mean_percent: rat(100, 1),
                },
                ReportRow {
                    rule: NamedRule::Custom(vec![rat(1, 1), rat(1, 2)]),
                    mean_percent: rat(0, 1),
                },
            ],
        };
        let text = serialize_report(&report);
        assert_eq!(parse_report(&text).unwrap(), report);
        // a tampered two-decimal column is rejected
        let tampered = text.replace("66.67", "66.66");
        assert!(parse_report(&tampered).is_err());
    }

    #[test]
    fn instance_round_trip_preserves_fractional_weights() {
        let c = Constraint::new(
            AlternativeId::new("x").unwrap(),
            AlternativeId::new("y").unwrap(),
            rat(7, 3),
            vec![-2, 3],
        )
        .unwrap();
        let instance = Instance::new(2, vec![c]).unwrap();
        let text = serialize_instance(&instance);
        assert!(text.contains("7/3"), "{text}");
        assert_eq!(parse_instance(&text).unwrap(), instance);
    }

    #[test]
    fn custom_rule_vectors_still_validate_as_scoring_vectors() {
        // spelling parses, but an increasing vector fails construction
        let rule = parse_rule("vector:0,1").unwrap();
        match rule {
            NamedRule::Custom(v) => assert!(ScoringVector::new(v).is_err()),
            other => panic!("unexpected: {other:?}"),
        }
    }
}
