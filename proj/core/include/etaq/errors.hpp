#ifndef ETAQ_ERRORS_HPP
#define ETAQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace etaq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* series with no known nonzero term where a leading term is required */
struct ZeroSeries : Error {
    using Error::Error;
};

/* leading coefficient admits no exact rational n-th root */
struct NotAnNthPower : Error {
    using Error::Error;
};

/* coefficient requested at or beyond the truncation bound */
struct BeyondTruncation : Error {
    using Error::Error;
};

/* operation needs integer eta exponents (e.g. cusp orders) */
struct NonIntegralExponents : Error {
    using Error::Error;
};

/* an eta scale delta does not divide the ambient level */
struct ScaleNotDividingLevel : Error {
    using Error::Error;
};

struct NotCoprime : Error {
    using Error::Error;
};

/* a coefficient table is too short for the requested scan */
struct InsufficientCoefficients : Error {
    using Error::Error;
};

/* catalog lookup failure */
struct UnknownName : Error {
    using Error::Error;
};

/* expression syntax failure */
struct ParseError : Error {
    using Error::Error;
};

} // namespace etaq

#endif
