//! Vote files: CSV with header `party,votes` and an optional districts column.

use std::collections::HashMap;
use std::io::Read;

use apportion::{ApportionError, Party, VoteTally};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedVotes {
    pub tally: VoteTally,
    /// District seats per party, when the file has a districts column.
    pub district_seats: Option<Vec<u64>>,
}

fn count(field: &str, what: &str, line: u64) -> Result<u64> {
    if field.is_empty() {
        return Err(CliError::at(line, format!("missing {what}")));
    }
    if let Some(rest) = field.strip_prefix('-') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(CliError::at(line, format!("negative {what} `{field}`")));
        }
    }
    if !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CliError::at(
            line,
            format!("{what} `{field}` is not a non-negative integer"),
        ));
    }
    field
        .parse()
        .map_err(|_| CliError::at(line, format!("{what} `{field}` is too large")))
}

/// Parses a vote file. `districts_col` names the optional district-seat
/// column; the party and votes columns are matched by header name.
pub fn parse_votes(input: impl Read, districts_col: &str) -> Result<ParsedVotes> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| CliError::input(format!("unreadable header: {e}")))?
        .clone();
    if headers.is_empty() || headers.iter().all(str::is_empty) {
        return Err(CliError::input("empty input"));
    }
    let column = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let party_col =
        column("party").ok_or_else(|| CliError::at(1, "header has no `party` column"))?;
    let votes_col =
        column("votes").ok_or_else(|| CliError::at(1, "header has no `votes` column"))?;
    let districts = column(districts_col);

    let mut parties = Vec::new();
    let mut seats = Vec::new();
    let mut seen: HashMap<String, u64> = HashMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::at(line, format!("malformed row: {e}"))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != headers.len() {
            return Err(CliError::at(
                line,
                format!("expected {} fields, found {}", headers.len(), record.len()),
            ));
        }
        let id = record[party_col].to_string();
        if id.is_empty() {
            return Err(CliError::at(line, "missing party name"));
        }
        if let Some(first) = seen.insert(id.clone(), line) {
            return Err(CliError::at(
                line,
                format!("duplicate party `{id}` (first on line {first})"),
            ));
        }
        let votes = count(&record[votes_col], "votes", line)?;
        if let Some(c) = districts {
            seats.push(count(&record[c], "district seats", line)?);
        }
        parties.push(Party { id, votes });
    }

    let tally = VoteTally::new(parties).map_err(|e| match e {
        ApportionError::EmptyTally => CliError::input("no party rows"),
        ApportionError::NoPositiveVotes => CliError::input("no party has positive votes"),
        other => CliError::input(other.to_string()),
    })?;
    Ok(ParsedVotes {
        tally,
        district_seats: districts.map(|_| seats),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<ParsedVotes> {
        parse_votes(s.as_bytes(), "districts")
    }

    #[test]
    fn plain_file() {
        let p = parse("party,votes\nA,600\nB,300\nC,100\n").unwrap();
        assert_eq!(p.tally.vote_vector(), vec![600, 300, 100]);
        assert_eq!(p.tally.ids().collect::<Vec<_>>(), vec!["A", "B", "C"]);
        assert!(p.district_seats.is_none());
    }

    #[test]
    fn districts_column() {
        let p = parse("party,votes,districts\nA,50,3\nB,30,2\nC,20,0").unwrap();
        assert_eq!(p.district_seats, Some(vec![3, 2, 0]));
        let p = parse_votes("party,votes,seats\nA,50,3\nB,30,2".as_bytes(), "seats").unwrap();
        assert_eq!(p.district_seats, Some(vec![3, 2]));
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse("party,votes\nA,10\nB,x\n").unwrap_err();
        assert_eq!(
            e.to_string(),
            "line 3: votes `x` is not a non-negative integer"
        );
        let e = parse("party,votes\nA,10\nB,-4\n").unwrap_err();
        assert_eq!(e.to_string(), "line 3: negative votes `-4`");
        let e = parse("party,votes\nA,10\nA,4\n").unwrap_err();
        assert_eq!(
            e.to_string(),
            "line 3: duplicate party `A` (first on line 2)"
        );
        let e = parse("party,votes\nA,10,3\n").unwrap_err();
        assert!(e.to_string().starts_with("line 2:"));
        let e = parse("party,votes\nA,1.5\n").unwrap_err();
        assert!(e.to_string().contains("not a non-negative integer"));
    }

    #[test]
    fn degenerate_files() {
        assert_eq!(parse("").unwrap_err().to_string(), "empty input");
        assert_eq!(
            parse("party,votes\n").unwrap_err().to_string(),
            "no party rows"
        );
        assert_eq!(
            parse("party,votes\nA,0").unwrap_err().to_string(),
            "no party has positive votes"
        );
        assert!(parse("name,votes\nA,1").is_err());
        assert_eq!(parse("party,votes\nA,0").unwrap_err().exit_code(), 1);
    }
}
