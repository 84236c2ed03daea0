#ifndef ETAQ_TOOLS_IO_HPP
#define ETAQ_TOOLS_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "etaq/asd.hpp"
#include "etaq/eta.hpp"
#include "etaq/ligozat.hpp"
#include "etaq/qseries.hpp"
#include "etaq/search.hpp"

namespace etaq::cli {

using nlohmann::json;

// Machine forms are exact: series coefficients ride as decimal strings
// (denominators are unbounded powers of 3), everything else as integers.
// The two round-trip parsers accept either numbers or strings.
json series_json(const FracSeries& f);
FracSeries series_from_json(const json& j);

json quotient_json(const EtaQuotient& q);
EtaQuotient quotient_from_json(const json& j);

json tuple_json(const TupleSpec& t);
json ligozat_json(const LigozatReport& r);
json prime_report_json(const PrimeReport& r);
json pattern_json(const CasePattern& p);
json newform_json(const NewformMatch& m);
json candidate_json(const CandidatePair& c);
json stats_json(const SearchStats& s);

// Scan constants as the signed representatives in (-p^2/2, p^2/2] that the
// reference tables print: the single-ratio column and the cross-ratio column.
std::optional<long long> single_signed(const PrimeReport& r);
std::optional<long long> cross_signed(const PrimeReport& r);

std::string csv_field(const std::string& s); // RFC 4180 quoting when needed
std::string scan_csv(const std::vector<PrimeReport>& reports);
std::string candidates_csv(const std::vector<CandidatePair>& pairs);

} // namespace etaq::cli

#endif
