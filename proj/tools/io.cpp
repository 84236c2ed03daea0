#include "io.hpp"

#include <numeric>
#include <sstream>

namespace etaq::cli {

namespace {

json rat_parts(const Rat& x) {
    return json::array({x.get_num().get_str(), x.get_den().get_str()});
}

Rat rat_from(const json& num, const json& den) {
    auto piece = [](const json& j) -> mpz_class {
        if (j.is_string()) return mpz_class(j.get<std::string>());
        if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
        throw Error("expected an integer or a decimal string, got " + j.dump());
    };
    mpz_class d = piece(den);
    if (d == 0) throw Error("zero denominator in " + den.dump());
    Rat x(piece(num), d);
    x.canonicalize();
    return x;
}

json opt_residue(const std::optional<std::uint64_t>& v) {
    if (!v) return nullptr;
    return *v;
}

} // namespace

json series_json(const FracSeries& f) {
    json terms = json::array();
    for (const auto& [e, c] : f.terms()) {
        json t = json::array();
        t.push_back(e);
        t.push_back(c.get_num().get_str());
        t.push_back(c.get_den().get_str());
        terms.push_back(std::move(t));
    }
    return json{{"ramification", f.ramification()},
                {"terms", std::move(terms)},
                {"trunc", f.trunc_index()}};
}

FracSeries series_from_json(const json& j) {
    if (!j.is_object() || !j.contains("ramification") || !j.contains("terms") ||
        !j.contains("trunc"))
        throw Error("series object needs ramification, terms and trunc");
    long long ram = j.at("ramification").get<long long>();
    long long trunc = j.at("trunc").get<long long>();
    std::vector<FracSeries::Term> terms;
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 3)
            throw Error("series term must be [index, num, den]: " + t.dump());
        terms.emplace_back(t.at(0).get<long long>(), rat_from(t.at(1), t.at(2)));
    }
    return FracSeries::from_terms(ram, std::move(terms), trunc);
}

json quotient_json(const EtaQuotient& q) {
    json a = json::array();
    for (const auto& t : q.terms()) {
        a.push_back(json::array({t.delta, t.exponent.get_num().get_si(),
                                 t.exponent.get_den().get_si()}));
    }
    return a;
}

EtaQuotient quotient_from_json(const json& j) {
    if (!j.is_array()) throw Error("quotient must be an array of [delta, num, den]");
    std::vector<EtaTerm> terms;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3)
            throw Error("quotient factor must be [delta, num, den]: " + t.dump());
        terms.push_back({t.at(0).get<long long>(), rat_from(t.at(1), t.at(2))});
    }
    return EtaQuotient(std::move(terms));
}

json tuple_json(const TupleSpec& t) {
    return json{{"bases", t.bases},
                {"exponents", t.exponents},
                {"root", t.root},
                {"str", t.str()}};
}

json ligozat_json(const LigozatReport& r) {
    return json{{"level", r.level},
                {"modulus", r.modulus},
                {"sum_r_delta", r.sum_r_delta},
                {"sum_r_codelta", r.sum_r_codelta},
                {"sum_r", r.sum_r},
                {"cond_delta", r.cond_delta},
                {"cond_codelta", r.cond_codelta},
                {"cond_sum_zero", r.cond_sum_zero},
                {"verdict", verdict_str(r.verdict)},
                {"character_squarefree", r.character_squarefree},
                {"all_even_exponents", r.all_even_exponents}};
}

std::optional<long long> single_signed(const PrimeReport& r) {
    if (r.kind != AsdCase::CaseOne || !r.c) return std::nullopt;
    const auto m = static_cast<std::uint64_t>(r.p) * static_cast<std::uint64_t>(r.p);
    return signed_residue(*r.c, m);
}

std::optional<long long> cross_signed(const PrimeReport& r) {
    if (r.kind != AsdCase::CaseTwo) return std::nullopt;
    if (r.degenerate) return 0;
    if (!r.ratio_ab) return std::nullopt;
    const auto m = static_cast<std::uint64_t>(r.p) * static_cast<std::uint64_t>(r.p);
    return signed_residue(*r.ratio_ab, m);
}

json prime_report_json(const PrimeReport& r) {
    json j{{"p", r.p},
           {"case", asd_case_str(r.kind)},
           {"c", opt_residue(r.c)},
           {"c_b", opt_residue(r.c_b)},
           {"ratio_ab", opt_residue(r.ratio_ab)},
           {"ratio_ba", opt_residue(r.ratio_ba)},
           {"alpha_sq", opt_residue(r.alpha_sq)},
           {"cp_sq", opt_residue(r.cp_sq)},
           {"degenerate", r.degenerate},
           {"witnesses", r.witnesses},
           {"skipped", r.skipped}};
    if (auto s = single_signed(r)) j["single"] = *s;
    else j["single"] = nullptr;
    if (auto s = cross_signed(r)) j["cross"] = *s;
    else j["cross"] = nullptr;
    return j;
}

json pattern_json(const CasePattern& p) {
    json classes = json::array();
    for (const auto& [residue, cls] : p.classes)
        classes.push_back(json::array({residue, scan_class_str(cls)}));
    return json{{"modulus", p.modulus}, {"classes", std::move(classes)}};
}

json newform_json(const NewformMatch& m) {
    return json{{"source", m.source},
                {"chi_modulus", m.chi.modulus()},
                {"chi_principal", m.chi.is_principal()},
                {"chi", m.chi.str()},
                {"nebentypus", m.nebentypus.str()}};
}

json candidate_json(const CandidatePair& c) {
    json reports = json::array();
    for (const auto& r : c.per_prime) reports.push_back(prime_report_json(r));
    json j{{"h1", tuple_json(c.h1)},
           {"h2", tuple_json(c.h2)},
           {"per_prime", std::move(reports)}};
    j["pattern"] = c.pattern ? pattern_json(*c.pattern) : json(nullptr);
    j["newform"] = c.matched ? newform_json(*c.matched) : json(nullptr);
    return j;
}

json stats_json(const SearchStats& s) {
    return json{{"enumerated", s.enumerated},
                {"nonpositive_lead", s.nonpositive_lead},
                {"filter_dropped", s.filter_dropped},
                {"candidates", s.candidates},
                {"infeasible_dropped", s.infeasible_dropped},
                {"pairs_considered", s.pairs_considered},
                {"vacuous_rejected", s.vacuous_rejected},
                {"prescan_rejected", s.prescan_rejected},
                {"fully_scanned", s.fully_scanned},
                {"pairs_found", s.pairs_found}};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string scan_csv(const std::vector<PrimeReport>& reports) {
    std::ostringstream os;
    os << "p,case1,case2\n";
    for (const auto& r : reports) {
        os << r.p << ',';
        if (auto s = single_signed(r)) os << *s;
        os << ',';
        if (auto s = cross_signed(r)) os << *s;
        os << '\n';
    }
    return os.str();
}

std::string candidates_csv(const std::vector<CandidatePair>& pairs) {
    std::ostringstream os;
    os << "h1,h2,pattern_modulus,pattern,newform,chi\n";
    for (const auto& c : pairs) {
        os << csv_field(c.h1.str()) << ',' << csv_field(c.h2.str()) << ',';
        if (c.pattern) os << c.pattern->modulus;
        os << ',';
        os << csv_field(c.pattern ? c.pattern->str() : "") << ',';
        os << csv_field(c.matched ? c.matched->source : "") << ',';
        os << csv_field(c.matched ? c.matched->chi.str() : "") << '\n';
    }
    return os.str();
}

} // namespace etaq::cli
