use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid exponent {0}")]
    InvalidExponent(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("order {0} is a gap of the Weierstrass semigroup")]
    Gap(u64),
    #[error("{what} = {value} is out of range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("order {order} exceeds m* = {m_star}: out of proven range")]
    OutOfProvenRange { order: u64, m_star: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("too large for brute force: {codewords} codewords exceed the budget of {budget}")]
    TooLargeForBruteForce { codewords: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(what: &'static str, value: i64, min: i64, max: i64) -> Result<()> {
    if value < min || value > max {
        Err(Error::OutOfRange {
            what,
            value,
            min,
            max,
        })
    } else {
        Ok(())
    }
}
