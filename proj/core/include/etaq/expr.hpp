#ifndef ETAQ_EXPR_HPP
#define ETAQ_EXPR_HPP

#include <functional>
#include <optional>
#include <string>

#include "etaq/eta.hpp"

namespace etaq {

// Resolves bare names (catalog entries) appearing in expressions.
using NameResolver = std::function<std::optional<EtaQuotient>(const std::string&)>;

// Parses formal eta-quotient expressions:
//   eta(q^2)^12 * eta(q^4)^14 / eta(q)^8
//   cbrt(eta(q)^8 * eta(q^4)^22 / eta(q^2)^12)
//   root(eta(q^2)^6, 6)     eta(q)^(3/2)
//   [8,-12,22,0]@8          [4,7,-4,11]@(1,2,3,6)
// @6 and @8 abbreviate bases (1,2,3,6) and (1,2,4,8); tuples denote the
// cube root of the integer-exponent quotient they spell.
EtaQuotient parse_quotient(const std::string& text, const NameResolver& resolver = nullptr);

std::optional<TupleSpec> parse_tuple(const std::string& text);

} // namespace etaq

#endif
