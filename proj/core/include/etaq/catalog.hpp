#ifndef ETAQ_CATALOG_HPP
#define ETAQ_CATALOG_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etaq/asd.hpp"
#include "etaq/characters.hpp"
#include "etaq/eta.hpp"

namespace etaq {

// A form the library ships with: exact eta-quotient data, the subgroup it is
// attached to, and the leading expansion terms it is documented to have.
// `documented_terms` lists (n, a_n) pairs; gaps carry no claim.
struct NamedForm {
    std::string name;
    std::string group_label;
    EtaQuotient object;
    // 0: plain quotient; otherwise coefficients are twisted by the Legendre
    // character for this odd prime modulus (integral expansions only)
    long long twist_modulus = 0;
    std::vector<std::pair<long long, Rat>> documented_terms;

    FracSeries expand(long long order) const;
};

const NamedForm& block(const std::string& name); // throws UnknownName
const std::vector<std::string>& block_names();   // deterministic order

// One printed row of a shipped reference table: two exponent tuples and the
// closed-form labels they were printed with.  label*_matches records whether
// the label, resolved through the catalog blocks, has exactly the tuple's
// exponent vector; rows where it does not are surfaced, never repaired.
struct FigureRow {
    TupleSpec h1, h2;
    std::string label1, label2;
    EtaQuotient closed1, closed2;
    bool label1_matches = false;
    bool label2_matches = false;
};

struct Figure {
    int number = 0;
    std::string title;
    std::array<long long, 4> bases{};
    std::vector<FigureRow> rows;
};

const Figure& figures(int which); // 1..4; throws UnknownName otherwise

// The scan-constants table shipped with the worked example: per prime, the
// documented constant for the single-form ratios a_{np}/a_n, b_{np}/b_n and
// for the cross ratios a_{np}/b_n, b_{np}/a_n (empty = documented as not
// constant).  The library recomputes this table and flags disagreements; the
// recomputation places the nonzero constants in the opposite columns.
struct WorkedExampleRow {
    long long p = 0;
    std::optional<long long> single_constant;
    std::optional<long long> cross_constant;
};

const std::vector<WorkedExampleRow>& worked_example_documented();

// Integral eta-products a discovered pair's scan constants are matched
// against (possibly after a quadratic twist).  All are weight 3, so the
// nebentypus is odd; for these products it is the character mod 4.
struct NewformSource {
    std::string name;
    EtaQuotient object;
    QuadraticCharacter nebentypus;
};

const std::vector<NewformSource>& newform_sources();

// a_n -> chi(n) a_n
CoefficientTable twist(const CoefficientTable& c, const QuadraticCharacter& chi);

// The weight-3 eigenform the scans are compared against: the twist of the
// eta-product eta(q^4)^6 by the Legendre character mod 3, with nebentypus
// the nontrivial character mod 4.  Coefficients exact below `order`.
CoefficientTable newform_f(long long order);
QuadraticCharacter newform_f_nebentypus();

} // namespace etaq

#endif
