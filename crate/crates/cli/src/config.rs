use apportion::{DivisorStop, ExtraSeats, Form, Method, TiePolicy};
use serde::{Deserialize, Serialize};

use crate::args::{Args, FormArg, FormatArg, MethodArg, StopArg, TieArg};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Table,
    Json,
}

/// District-seeded run options.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedConfig {
    pub district_seats: Vec<u64>,
    /// Sequential largest-deficit runs.
    pub extra: ExtraSeats,
    /// Multiplier runs.
    pub stop: DivisorStop,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// `None` in compare mode, which runs every method.
    pub method: Option<Method>,
    pub form: Form,
    /// `None` for seeded runs, whose house size is an outcome.
    pub house_size: Option<u64>,
    pub tie: TiePolicy,
    pub seeded: Option<SeedConfig>,
    pub format: Format,
    pub trace: bool,
    pub compare: bool,
}

impl RunConfig {
    pub fn methods(&self) -> Vec<Method> {
        match self.method {
            Some(m) => vec![m],
            None => Method::ALL.to_vec(),
        }
    }
}

fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::Hare => Method::Hare,
        MethodArg::Dhondt => Method::Dhondt,
        MethodArg::SainteLague => Method::SainteLague,
    }
}

fn form(f: FormArg) -> Form {
    match f {
        FormArg::Divisor => Form::Divisor,
        FormArg::Multiplicative => Form::Multiplicative,
        FormArg::Sequential => Form::Sequential,
    }
}

/// Checks option combinations and resolves defaults. `district_seats` comes
/// from the input file.
pub fn resolve(args: &Args, district_seats: Option<Vec<u64>>) -> Result<RunConfig> {
    let bad = |msg: &str| Err(CliError::input(msg));
    let m = method(args.method);
    let tie = match args.tie {
        TieArg::Deterministic => TiePolicy::Deterministic,
        TieArg::Random => TiePolicy::SeededRandom {
            rng_seed: args.seed,
        },
    };
    let format = match args.format {
        FormatArg::Table => Format::Table,
        FormatArg::Json => Format::Json,
    };

    let Some(district_seats) = district_seats else {
        if args.cap.is_some() || args.fixed_extra.is_some() || args.stop.is_some() {
            return bad(&format!(
                "--cap, --fixed-extra and --stop need a `{}` column in the input",
                args.districts_col
            ));
        }
        let Some(house_size) = args.seats else {
            return bad("--seats is required");
        };
        let f = args.form.map_or(Form::Divisor, form);
        if args.compare && f != Form::Divisor {
            return bad("--compare runs the divisor form of every method; drop --form");
        }
        match (m, f) {
            (Method::Hare, Form::Multiplicative) => {
                return bad("hare has no multiplicative form; use divisor or sequential")
            }
            (Method::Dhondt | Method::SainteLague, Form::Sequential) if !args.compare => {
                return bad("the sequential form is only defined for hare")
            }
            _ => {}
        }
        return Ok(RunConfig {
            method: (!args.compare).then_some(m),
            form: f,
            house_size: Some(house_size),
            tie,
            seeded: None,
            format,
            trace: args.trace,
            compare: args.compare,
        });
    };

    if args.compare {
        return bad("--compare is not available for seeded runs");
    }
    if args.seats.is_some() {
        return bad("seeded runs size the house themselves; use --fixed-extra instead of --seats");
    }
    let seeded_form = match m {
        Method::Hare => Form::Sequential,
        Method::Dhondt | Method::SainteLague => Form::Multiplicative,
    };
    if let Some(f) = args.form.map(form) {
        if f != seeded_form {
            return bad(&format!(
                "seeded {} runs use the {} form",
                m.name(),
                seeded_form.name()
            ));
        }
    }
    let fixed = match (args.stop, args.fixed_extra) {
        (Some(StopArg::Fixed), None) => return bad("--stop fixed needs --fixed-extra"),
        (Some(StopArg::Residual), Some(_)) => {
            return bad("--fixed-extra conflicts with --stop residual")
        }
        (_, t) => t,
    };
    let (extra, stop) = match (m, fixed, args.cap) {
        (Method::Hare, Some(t), _) => (ExtraSeats::Fixed(t), DivisorStop::Fixed(t)),
        (Method::Hare, None, Some(c)) => (ExtraSeats::Cap(c), DivisorStop::Residual),
        (Method::Hare, None, None) => (ExtraSeats::Open, DivisorStop::Residual),
        (_, _, Some(_)) => return bad("--cap applies to seeded hare runs only"),
        (_, Some(t), None) => (ExtraSeats::Fixed(t), DivisorStop::Fixed(t)),
        (_, None, None) => (ExtraSeats::Open, DivisorStop::Residual),
    };
    Ok(RunConfig {
        method: Some(m),
        form: seeded_form,
        house_size: None,
        tie,
        seeded: Some(SeedConfig {
            district_seats,
            extra,
            stop,
        }),
        format,
        trace: args.trace,
        compare: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn args(s: &str) -> Args {
        Args::parse_from(std::iter::once("apportion").chain(s.split_whitespace()))
    }

    #[test]
    fn plain_defaults() {
        let c = resolve(&args("--seats 10"), None).unwrap();
        assert_eq!(c.method, Some(Method::Hare));
        assert_eq!(c.form, Form::Divisor);
        assert_eq!(c.house_size, Some(10));
        assert_eq!(c.tie, TiePolicy::Deterministic);
        let c = resolve(&args("--seats 3 --tie random --seed 9 --compare"), None).unwrap();
        assert_eq!(c.method, None);
        assert_eq!(c.methods().len(), 3);
        assert_eq!(c.tie, TiePolicy::SeededRandom { rng_seed: 9 });
    }

    #[test]
    fn rejected_combinations() {
        assert!(resolve(&args(""), None).is_err());
        assert!(resolve(&args("--seats 5 --method dhondt --form sequential"), None).is_err());
        assert!(resolve(&args("--seats 5 --form multiplicative"), None).is_err());
        assert!(resolve(&args("--seats 5 --cap 2"), None).is_err());
        assert!(resolve(&args("--seats 5"), Some(vec![1, 2])).is_err());
        assert!(resolve(&args("--compare"), Some(vec![1, 2])).is_err());
        assert!(resolve(&args("--stop fixed"), Some(vec![1])).is_err());
        assert!(resolve(&args("--method dhondt --cap 2"), Some(vec![1])).is_err());
        assert!(resolve(&args("--method dhondt --form divisor"), Some(vec![1])).is_err());
    }

    #[test]
    fn seeded_options() {
        let c = resolve(&args("--cap 2"), Some(vec![3, 1])).unwrap();
        let s = c.seeded.unwrap();
        assert_eq!(s.extra, ExtraSeats::Cap(2));
        assert_eq!(c.form, Form::Sequential);
        let c = resolve(
            &args("--method sainte-lague --fixed-extra 4"),
            Some(vec![3, 1]),
        )
        .unwrap();
        assert_eq!(c.seeded.unwrap().stop, DivisorStop::Fixed(4));
        assert_eq!(c.form, Form::Multiplicative);
    }
}
