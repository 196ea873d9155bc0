use sfcgroup::{Error, ParseError};

pub const OK: i32 = 0;
pub const INPUT: i32 = 1;
pub const CAP: i32 = 2;
pub const INTERNAL: i32 = 3;

/// Exit status for an error: 1 for bad input, 2 for a resource cap, 3 for
/// an internal consistency failure.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::CapExceeded { .. } | Error::LimitExceeded(_) => CAP,
                e if e.is_input_error() => INPUT,
                _ => INTERNAL,
            };
        }
        if cause.downcast_ref::<ParseError>().is_some()
            || cause.downcast_ref::<std::io::Error>().is_some()
        {
            return INPUT;
        }
    }
    INTERNAL
}
