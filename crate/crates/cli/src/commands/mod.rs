mod fm;
mod hindman;
mod numbers;
mod rado;
mod verify;

use finlab_core::ramsey::RamseyProvider;
use finlab_core::{Arity, Colour, Colouring, Domain, GridShape};
use finlab_fm::FmError;

use crate::args::{ColouringArgs, ColouringName, Command};
use crate::error::{CliError, Result};
use crate::report::{Finding, Outcome};

pub fn run(cmd: &Command) -> Result<Finding> {
    match cmd {
        Command::Ramsey(a) => numbers::ramsey(a),
        Command::FBound(a) => numbers::f_bound(a),
        Command::Schur(a) => numbers::schur(a),
        Command::FuSearch(a) => numbers::fu_search(a),
        Command::Colour(a) => numbers::colour(a),
        Command::Hindman(h) => hindman::run(h),
        Command::Fm(a) => fm::run(a),
        Command::Rado(r) => rado::run(r),
        Command::VerifyReport(a) => verify::verify_report(&a.report),
    }
}

/// Errors that mean "the finite instance ran out", as opposed to bad input.
fn saturated(e: &CliError) -> bool {
    matches!(
        e,
        CliError::Core(finlab_core::Error::BudgetExceeded { .. })
            | CliError::Fm(FmError::NoExtension(_) | FmError::OrbitBudget { .. })
            | CliError::Fm(FmError::Core(finlab_core::Error::BudgetExceeded { .. }))
    )
}

/// Runs a command, folding failures into an `ERROR` or `INCONCLUSIVE`
/// finding.
pub fn execute(cmd: &Command) -> Finding {
    run(cmd).unwrap_or_else(|e| {
        let verdict = if saturated(&e) {
            Outcome::Inconclusive
        } else {
            Outcome::Error
        };
        Finding {
            anchor: "none",
            verdict,
            result: serde_json::json!({ "error": e.to_string() }),
            exactness: None,
            notes: Vec::new(),
        }
    })
}

fn provider(table_max: Option<u64>) -> RamseyProvider {
    table_max.map_or_else(RamseyProvider::default, RamseyProvider::restricted)
}

pub fn build_colouring(a: &ColouringArgs) -> Result<Colouring> {
    let n = a.atoms;
    let finite = Domain::range(n, Arity::Finite);
    let base = match a.colouring {
        ColouringName::Log2 => Colouring::log2(n),
        ColouringName::Mod4 => Colouring::mod4(n),
        ColouringName::Zero => Colouring::constant(n, Colour::Zero),
        ColouringName::One => Colouring::constant(n, Colour::One),
        ColouringName::Grid => {
            let (Some(rows), Some(cols)) = (a.rows, a.cols) else {
                return Err(CliError::Invalid(
                    "the grid colouring needs --rows and --cols".into(),
                ));
            };
            Colouring::grid(GridShape::new(rows, cols)?)
        }
        ColouringName::ParitySum => Colouring::from_fn("parity-sum", finite, |x| {
            Colour::from_bit(x.ids().sum::<u64>() % 2 == 1)
        }),
        ColouringName::LeastParity => {
            Colouring::from_fn("least-parity", Domain::range(n, Arity::NonEmpty), |x| {
                Colour::from_bit(x.least().is_some_and(|a| a.id() % 2 == 1))
            })
        }
        ColouringName::MeetsSupport => {
            let f = a
                .support
                .clone()
                .ok_or_else(|| CliError::Invalid("meets-support needs --support".into()))?;
            Colouring::from_fn("meets-support", finite, move |x| {
                Colour::from_bit(!x.is_disjoint(&f))
            })
        }
    };
    Ok(match a.arity {
        Some(k) => {
            let ground = base.ground().clone();
            base.restricted(Domain::new(ground, Arity::Exactly(k)))
        }
        None => base,
    })
}
