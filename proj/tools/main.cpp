#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "etaq/catalog.hpp"
#include "etaq/expr.hpp"
#include "io.hpp"

using namespace etaq;
using etaq::cli::json;

namespace {

constexpr const char* kTermsEnv = "ETAQ_TERMS";

long long ceil_rat(const Rat& x) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q.get_si();
}

std::vector<long long> primes_to(long long bound) {
    std::vector<long long> ps;
    for (long long p = 5; p <= bound; ++p) {
        bool prime = p > 1;
        for (long long d = 2; d * d <= p && prime; ++d)
            if (p % d == 0) prime = false;
        if (prime) ps.push_back(p);
    }
    return ps;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Catalog names usable inside expressions.  Twisted entries are not eta
// quotients, so they stay out of the grammar (expand special-cases them).
std::optional<EtaQuotient> catalog_resolver(const std::string& name) {
    for (const auto& n : block_names()) {
        if (n != name) continue;
        const NamedForm& form = block(name);
        if (form.twist_modulus != 0) return std::nullopt;
        return form.object;
    }
    return std::nullopt;
}

EtaQuotient parse_expr(const std::string& text) {
    return parse_quotient(text, catalog_resolver);
}

// Dense coefficients a_1..a_rows of q(z); requires a positive leading
// exponent.  The order is padded so the table is never short.
CoefficientTable table_for(const EtaQuotient& q, long long rows, std::string id) {
    Rat lead = q.leading_exponent();
    long long mu = static_cast<long long>(lead.get_den().get_si());
    long long order = ceil_rat(lead + rat(rows + 2, mu));
    return CoefficientTable::from_series(q.expand(order), std::move(id));
}

std::vector<PrimeReport> scan_all_primes(const CoefficientTable& a, const CoefficientTable& b,
                                         long long pmax, long long nbound,
                                         long long witness_min) {
    long long cap = std::min({nbound, a.max_n(), b.max_n()});
    std::vector<PrimeReport> out;
    for (long long p : primes_to(pmax))
        out.push_back(classify_prime(a, b, p, cap / p, witness_min));
    return out;
}

std::string opt_str(const std::optional<long long>& v) {
    return v ? std::to_string(*v) : "-";
}

// --- output plumbing ---------------------------------------------------

struct Common {
    std::string format = "plain";
    std::string out;
    CLI::Option* format_opt = nullptr;

    void add_to(CLI::App* cmd) {
        format_opt = cmd->add_option("--format", format, "output format")
                         ->check(CLI::IsMember({"plain", "json", "csv"}));
        cmd->add_option("--out", out, "write the report to this file instead of stdout");
    }

    // `--out results.json` implies the format unless --format was explicit
    void settle() {
        if (format_opt && format_opt->count() > 0) return;
        auto ends_with = [&](const char* suf) {
            std::string_view o(out), s(suf);
            return o.size() >= s.size() && o.substr(o.size() - s.size()) == s;
        };
        if (ends_with(".json")) format = "json";
        else if (ends_with(".csv")) format = "csv";
    }
};

int emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open '" << c.out << "' for writing\n";
        return 2;
    }
    f << text;
    return 0;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- expand -------------------------------------------------------------

long long default_terms() {
    if (const char* e = std::getenv(kTermsEnv)) {
        long long v = std::atoll(e);
        if (v > 0) return v;
        std::cerr << "warning: ignoring " << kTermsEnv << "='" << e << "'\n";
    }
    return 16;
}

int cmd_expand(const std::string& expr, long long terms, Common& c) {
    std::string name = trim(expr);
    const NamedForm* form = nullptr;
    for (const auto& n : block_names())
        if (n == name) form = &block(name);

    EtaQuotient q = form ? form->object : parse_expr(expr);
    Rat lead = q.leading_exponent();
    long long order = ceil_rat(lead) + terms;
    FracSeries series = form ? form->expand(order) : q.expand(order);

    if (c.format == "json") {
        json j{{"quotient", cli::quotient_json(q)},
               {"series", cli::series_json(series)},
               {"weight", {q.weight().get_num().get_si(), q.weight().get_den().get_si()}}};
        if (form && form->twist_modulus != 0) j["twist_modulus"] = form->twist_modulus;
        return emit(c, dump(j));
    }
    if (c.format == "csv") {
        std::ostringstream os;
        os << "exponent_num,exponent_den,coeff_num,coeff_den\n";
        long long mu = series.ramification();
        for (const auto& [e, coeff] : series.terms()) {
            long long g = std::gcd(e < 0 ? -e : e, mu);
            if (g == 0) g = 1;
            os << e / g << ',' << mu / g << ',' << coeff.get_num().get_str() << ','
               << coeff.get_den().get_str() << '\n';
        }
        return emit(c, os.str());
    }
    std::ostringstream os;
    os << "quotient: " << q.str();
    if (form && form->twist_modulus != 0)
        os << "  (coefficients twisted by the Legendre character mod " << form->twist_modulus
           << ")";
    os << "\nweight " << rat_str(q.weight()) << ", leading exponent "
       << rat_str(q.leading_exponent()) << "\n"
       << series.str() << "\n";
    return emit(c, os.str());
}

// --- check-ligozat --------------------------------------------------------

int cmd_ligozat(const std::string& expr, long long level, long long modulus, Common& c) {
    EtaQuotient q = parse_expr(expr);
    LigozatReport r = check_ligozat(q, level, modulus);

    if (c.format == "json") {
        json j = cli::ligozat_json(r);
        j["quotient"] = cli::quotient_json(q);
        if (emit(c, dump(j)) != 0) return 2;
    } else if (c.format == "csv") {
        std::ostringstream os;
        os << "level,modulus,sum_r_delta,sum_r_codelta,sum_r,cond_delta,cond_codelta,"
              "cond_sum_zero,verdict\n"
           << r.level << ',' << r.modulus << ',' << r.sum_r_delta << ',' << r.sum_r_codelta
           << ',' << r.sum_r << ',' << r.cond_delta << ',' << r.cond_codelta << ','
           << r.cond_sum_zero << ',' << verdict_str(r.verdict) << '\n';
        if (emit(c, os.str()) != 0) return 2;
    } else {
        std::ostringstream os;
        os << "quotient: " << q.str() << "\nlevel " << r.level << ", conditions mod "
           << r.modulus << ":\n"
           << "  (1) sum r_delta * delta     = " << std::setw(6) << r.sum_r_delta << "  "
           << (r.cond_delta ? "ok" : "FAILS") << "\n"
           << "  (2) sum r_delta * (N/delta) = " << std::setw(6) << r.sum_r_codelta << "  "
           << (r.cond_codelta ? "ok" : "FAILS") << "\n"
           << "  (3) sum r_delta             = " << std::setw(6) << r.sum_r << "  "
           << (r.cond_sum_zero ? "ok" : "FAILS") << "\n"
           << "verdict: " << verdict_str(r.verdict) << "\n";
        if (r.verdict != LigozatVerdict::Fails)
            os << "multiplier character: "
               << (r.character_squarefree == 1
                       ? std::string("trivial")
                       : "(" + std::to_string(r.character_squarefree) + "|.)")
               << "\n";
        if (emit(c, os.str()) != 0) return 2;
    }
    return r.verdict == LigozatVerdict::Fails ? 1 : 0;
}

// --- asd-scan ---------------------------------------------------------

struct ScanInput {
    std::string id_a, id_b;
    EtaQuotient a, b;
};

std::vector<ScanInput> read_pairs_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot read pairs file '" + path + "'");
    std::vector<ScanInput> pairs;
    std::string line;
    while (std::getline(f, line)) {
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto semi = s.find(';');
        std::string ea = trim(semi == std::string::npos ? s : s.substr(0, semi));
        std::string eb = semi == std::string::npos ? ea : trim(s.substr(semi + 1));
        if (ea.empty() || eb.empty())
            throw Error("malformed pair line '" + line + "' (use EXPR or EXPR ; EXPR)");
        pairs.push_back({ea, eb, parse_expr(ea), parse_expr(eb)});
    }
    if (pairs.empty()) throw Error("no pairs in '" + path + "'");
    return pairs;
}

struct ScanRun {
    ScanInput in;
    std::vector<PrimeReport> reports;
    std::optional<CasePattern> pattern;
    std::optional<NewformMatch> matched;
    bool all_classified = true;
};

ScanRun run_scan(ScanInput in, long long pmax, long long nbound, long long witness_min) {
    ScanRun r{std::move(in), {}, std::nullopt, std::nullopt, true};
    CoefficientTable ta = table_for(r.in.a, nbound, r.in.id_a);
    CoefficientTable tb = table_for(r.in.b, nbound, r.in.id_b);
    r.reports = scan_all_primes(ta, tb, pmax, nbound, witness_min);
    for (const auto& rep : r.reports)
        if (rep.kind == AsdCase::NoMatch) r.all_classified = false;
    if (r.all_classified) {
        r.pattern = infer_pattern(r.reports);
        r.matched = match_newform(r.reports, newform_sources());
    }
    return r;
}

std::string scan_plain(const ScanRun& r) {
    std::ostringstream os;
    os << "pair: " << r.in.id_a;
    if (r.in.id_b != r.in.id_a) os << "  with  " << r.in.id_b;
    os << "\n   p | case          | single | cross  | witnesses\n";
    for (const auto& rep : r.reports) {
        std::string single = opt_str(cli::single_signed(rep));
        if (rep.kind == AsdCase::CaseOne && rep.c && rep.c_b && *rep.c_b != *rep.c)
            single += "/" + std::to_string(signed_residue(*rep.c_b, rep.p * rep.p));
        os << std::setw(4) << rep.p << " | " << std::setw(13) << std::left
           << (rep.kind == AsdCase::CaseTwo && rep.degenerate ? "case 2 (zero)"
                                                              : asd_case_str(rep.kind))
           << std::right << " | " << std::setw(6) << single << " | " << std::setw(6)
           << opt_str(cli::cross_signed(rep)) << " | " << rep.witnesses << "\n";
    }
    if (!r.all_classified) {
        os << "not every prime classifies: no basis relation here\n";
        return os.str();
    }
    if (r.pattern) os << "pattern " << r.pattern->str() << "\n";
    os << "newform: " << (r.matched ? r.matched->str() : std::string("no catalog match"))
       << "\n";
    return os.str();
}

json scan_json_obj(const ScanRun& r) {
    json reports = json::array();
    for (const auto& rep : r.reports) reports.push_back(cli::prime_report_json(rep));
    json j{{"h1", r.in.id_a},
           {"h2", r.in.id_b},
           {"all_classified", r.all_classified},
           {"reports", std::move(reports)}};
    j["pattern"] = r.pattern ? cli::pattern_json(*r.pattern) : json(nullptr);
    j["newform"] = r.matched ? cli::newform_json(*r.matched) : json(nullptr);
    return j;
}

int cmd_asd_scan(const std::vector<ScanInput>& inputs, long long pmax, long long nbound,
                 long long witness_min, Common& c) {
    std::vector<ScanRun> runs;
    for (const auto& in : inputs) runs.push_back(run_scan(in, pmax, nbound, witness_min));

    bool ok = true;
    for (const auto& r : runs) ok = ok && r.all_classified;

    if (c.format == "json") {
        // a single pair emits the bare report array; a batch wraps per pair
        json j;
        if (runs.size() == 1) {
            j = json::array();
            for (const auto& rep : runs.front().reports)
                j.push_back(cli::prime_report_json(rep));
        } else {
            j = json::array();
            for (const auto& r : runs) j.push_back(scan_json_obj(r));
        }
        if (emit(c, dump(j)) != 0) return 2;
    } else if (c.format == "csv") {
        std::ostringstream os;
        for (const auto& r : runs) os << cli::scan_csv(r.reports);
        if (emit(c, os.str()) != 0) return 2;
    } else {
        std::ostringstream os;
        for (size_t i = 0; i < runs.size(); ++i) {
            if (i) os << "\n";
            os << scan_plain(runs[i]);
        }
        if (emit(c, os.str()) != 0) return 2;
    }
    return ok ? 0 : 1;
}

// --- search ----------------------------------------------------------

std::array<long long, 4> parse_bases(const std::string& text) {
    if (text == "6") return {1, 2, 3, 6};
    if (text == "8") return {1, 2, 4, 8};
    std::array<long long, 4> b{};
    std::istringstream is(text);
    std::string piece;
    size_t i = 0;
    while (std::getline(is, piece, ',')) {
        if (i >= 4) throw Error("--bases takes 6, 8 or four comma-separated integers");
        b[i++] = std::stoll(trim(piece));
    }
    if (i != 4) throw Error("--bases takes 6, 8 or four comma-separated integers");
    return b;
}

int cmd_search(const SearchConfig& cfg, Common& c) {
    SearchResult res = run_search(cfg, [](const std::string& note) {
        std::cerr << note << std::endl;
    });
    std::cerr << res.stats.str() << std::endl;

    if (c.format == "json") {
        json pairs = json::array();
        for (const auto& p : res.pairs) pairs.push_back(cli::candidate_json(p));
        json j{{"stats", cli::stats_json(res.stats)}, {"pairs", std::move(pairs)}};
        return emit(c, dump(j));
    }
    if (c.format == "csv") return emit(c, cli::candidates_csv(res.pairs));
    std::ostringstream os;
    os << res.stats.str() << "\n";
    for (const auto& p : res.pairs) os << p.str() << "\n";
    return emit(c, os.str());
}

// --- reproduce ----------------------------------------------------------

int cmd_figure(int which, Common& c) {
    const Figure& fig = figures(which);
    int mismatches = 0;
    for (const auto& row : fig.rows)
        mismatches += !row.label1_matches + !row.label2_matches;

    if (c.format == "json") {
        json rows = json::array();
        for (const auto& row : fig.rows) {
            rows.push_back(json{{"h1", cli::tuple_json(row.h1)},
                                {"label1", row.label1},
                                {"label1_matches", row.label1_matches},
                                {"closed1", cli::quotient_json(row.closed1)},
                                {"h2", cli::tuple_json(row.h2)},
                                {"label2", row.label2},
                                {"label2_matches", row.label2_matches},
                                {"closed2", cli::quotient_json(row.closed2)}});
        }
        json j{{"number", fig.number},
               {"title", fig.title},
               {"bases", fig.bases},
               {"rows", std::move(rows)},
               {"label_mismatches", mismatches}};
        if (emit(c, dump(j)) != 0) return 2;
    } else if (c.format == "csv") {
        std::ostringstream os;
        os << "row,tuple1,label1,matches1,tuple2,label2,matches2\n";
        for (size_t i = 0; i < fig.rows.size(); ++i) {
            const auto& row = fig.rows[i];
            os << i + 1 << ',' << cli::csv_field(row.h1.str()) << ','
               << cli::csv_field(row.label1) << ',' << row.label1_matches << ','
               << cli::csv_field(row.h2.str()) << ',' << cli::csv_field(row.label2) << ','
               << row.label2_matches << '\n';
        }
        if (emit(c, os.str()) != 0) return 2;
    } else {
        std::ostringstream os;
        os << "table " << fig.number << ": " << fig.title << ", bases (" << fig.bases[0];
        for (size_t i = 1; i < fig.bases.size(); ++i) os << ',' << fig.bases[i];
        os << ")\n";
        for (size_t i = 0; i < fig.rows.size(); ++i) {
            const auto& row = fig.rows[i];
            os << "  row " << i + 1 << ": " << row.h1.str() << " = " << row.label1 << "  "
               << (row.label1_matches ? "ok" : "MISMATCH") << "\n"
               << "         " << row.h2.str() << " = " << row.label2 << "  "
               << (row.label2_matches ? "ok" : "MISMATCH") << "\n";
        }
        if (mismatches)
            os << mismatches << " printed label(s) do not expand to the tuple next to them\n";
        if (emit(c, os.str()) != 0) return 2;
    }
    return mismatches == 0 ? 0 : 1;
}

struct WorkedRow {
    long long p = 0;
    std::optional<long long> single, cross, doc_single, doc_cross;
    std::string status; // ok / swapped / differs
};

int cmd_worked_example(long long pmax, long long nbound, Common& c) {
    const NamedForm& h1 = block("H1");
    const NamedForm& h2 = block("H2");

    // documented opening coefficients
    bool prefix_ok = true;
    for (const NamedForm* form : {&h1, &h2}) {
        FracSeries s = form->expand(8);
        for (const auto& [n, a] : form->documented_terms)
            prefix_ok = prefix_ok && s.coefficient(rat(n)) == a;
    }

    // the weight-0 certificate 1/sqrt(t) is modular at level 16, not at 8
    EtaQuotient certificate = block("sqrt(t)").object.inverse();
    LigozatReport lig16 = check_ligozat(certificate, 16);
    LigozatReport lig8 = check_ligozat(certificate, 8);
    bool certificate_ok = lig16.verdict == LigozatVerdict::ModularFunctionGamma0N &&
                          lig8.verdict == LigozatVerdict::Fails;

    // full scan against the documented constants table
    CoefficientTable ta = table_for(h1.object, nbound, "H1");
    CoefficientTable tb = table_for(h2.object, nbound, "H2");
    std::vector<PrimeReport> reports = scan_all_primes(ta, tb, pmax, nbound, 2);

    CoefficientTable f = newform_f(pmax + 1);
    bool constants_are_ap = true;
    for (const auto& r : reports) {
        const auto m = static_cast<std::uint64_t>(r.p) * static_cast<std::uint64_t>(r.p);
        auto ap = mod_reduce(f.a(r.p), m);
        if (!ap) { constants_are_ap = false; continue; }
        if (r.kind == AsdCase::CaseOne)
            constants_are_ap = constants_are_ap && r.c && *r.c == *ap;
        else if (r.kind == AsdCase::CaseTwo && !r.degenerate)
            constants_are_ap = constants_are_ap && r.ratio_ab && *r.ratio_ab == *ap &&
                               r.ratio_ba && *r.ratio_ba == *ap;
        else if (r.kind == AsdCase::CaseTwo)
            constants_are_ap = constants_are_ap && f.a(r.p) == 0;
        else
            constants_are_ap = false;
    }

    std::vector<WorkedRow> rows;
    int agree = 0, swapped = 0, differs = 0;
    for (const auto& r : reports) {
        WorkedRow row;
        row.p = r.p;
        row.single = cli::single_signed(r);
        row.cross = cli::cross_signed(r);
        for (const auto& doc : worked_example_documented())
            if (doc.p == r.p) {
                row.doc_single = doc.single_constant;
                row.doc_cross = doc.cross_constant;
            }
        if (row.single == row.doc_single && row.cross == row.doc_cross) {
            row.status = "ok";
            ++agree;
        } else if (row.single == row.doc_cross && row.cross == row.doc_single) {
            row.status = "swapped";
            ++swapped;
        } else {
            row.status = "differs";
            ++differs;
        }
        rows.push_back(row);
    }

    auto pattern = infer_pattern(reports);
    auto matched = match_newform(reports, newform_sources());
    bool table_matches = swapped == 0 && differs == 0;

    if (c.format == "json") {
        json scan = json::array();
        for (const auto& row : rows) {
            json j{{"p", row.p}, {"status", row.status}};
            j["single"] = row.single ? json(*row.single) : json(nullptr);
            j["cross"] = row.cross ? json(*row.cross) : json(nullptr);
            j["doc_single"] = row.doc_single ? json(*row.doc_single) : json(nullptr);
            j["doc_cross"] = row.doc_cross ? json(*row.doc_cross) : json(nullptr);
            scan.push_back(std::move(j));
        }
        json j{{"prefix_ok", prefix_ok},
               {"certificate",
                json{{"quotient", cli::quotient_json(certificate)},
                     {"level16", cli::ligozat_json(lig16)},
                     {"level8", cli::ligozat_json(lig8)},
                     {"as_expected", certificate_ok}}},
               {"scan", std::move(scan)},
               {"constants_equal_newform_ap", constants_are_ap},
               {"documented_agreement",
                json{{"ok", agree}, {"swapped", swapped}, {"differs", differs}}},
               {"documented_table_matches", table_matches}};
        j["pattern"] = pattern ? cli::pattern_json(*pattern) : json(nullptr);
        j["newform"] = matched ? cli::newform_json(*matched) : json(nullptr);
        if (emit(c, dump(j)) != 0) return 2;
    } else if (c.format == "csv") {
        std::ostringstream os;
        os << "p,single,cross,doc_single,doc_cross,status\n";
        for (const auto& row : rows)
            os << row.p << ',' << opt_str(row.single) << ',' << opt_str(row.cross) << ','
               << opt_str(row.doc_single) << ',' << opt_str(row.doc_cross) << ','
               << row.status << '\n';
        if (emit(c, os.str()) != 0) return 2;
    } else {
        std::ostringstream os;
        os << "H1 = " << h1.object.str() << "\n     " << h1.expand(6).str() << "\n";
        os << "H2 = " << h2.object.str() << "\n     " << h2.expand(6).str() << "\n";
        os << "documented opening coefficients: " << (prefix_ok ? "verified" : "DIFFER")
           << "\n\n";
        os << "certificate 1/sqrt(t) = " << certificate.str() << "\n"
           << "  level 16: " << verdict_str(lig16.verdict) << "\n"
           << "  level  8: " << verdict_str(lig8.verdict) << " (condition (2) residue "
           << lig8.sum_r_codelta << " mod 24)"
           << (certificate_ok ? "" : "  UNEXPECTED") << "\n\n";
        os << "scan of (H1, H2), primes 5.." << pmax << ", n <= " << nbound << ":\n";
        os << "   p | single |  cross | documented single | documented cross | status\n";
        for (const auto& row : rows)
            os << std::setw(4) << row.p << " | " << std::setw(6) << opt_str(row.single)
               << " | " << std::setw(6) << opt_str(row.cross) << " | " << std::setw(17)
               << opt_str(row.doc_single) << " | " << std::setw(16)
               << opt_str(row.doc_cross) << " | " << row.status << "\n";
        if (pattern) os << "pattern " << pattern->str() << "\n";
        if (matched) os << "newform: " << matched->str() << "\n";
        os << "nonzero constants equal the newform coefficients a_p: "
           << (constants_are_ap ? "yes" : "NO") << "\n";
        if (table_matches) {
            os << "documented table reproduced exactly\n";
        } else {
            os << "documented table NOT reproduced: " << agree << " rows agree, " << swapped
               << " rows carry the constants in the opposite column, " << differs
               << " rows differ outright\n";
            if (swapped > 0 && differs == 0)
                os << "every constant is confirmed; only the single/cross column "
                      "assignment disagrees with the documented layout\n";
        }
        if (emit(c, os.str()) != 0) return 2;
    }
    return prefix_ok && certificate_ok && table_matches ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cube roots of eta quotients: expansion, modularity certificates, "
                 "Atkin--Swinnerton-Dyer congruence scans"};
    app.require_subcommand(1);

    // expand
    auto* sc_expand = app.add_subcommand("expand", "q-expansion of a quotient expression");
    std::string expand_expr;
    long long expand_terms = default_terms();
    Common expand_common;
    sc_expand->add_option("expr", expand_expr, "expression or catalog name")->required();
    sc_expand->add_option("--terms", expand_terms,
                          "orders of q past the leading term (" + std::string(kTermsEnv) +
                              " overrides the default)");
    expand_common.add_to(sc_expand);

    // check-ligozat
    auto* sc_lig = app.add_subcommand("check-ligozat",
                                      "congruence certificate for an integral quotient");
    std::string lig_expr;
    long long lig_level = 0, lig_modulus = 24;
    Common lig_common;
    sc_lig->add_option("expr", lig_expr, "integer-exponent quotient expression")->required();
    sc_lig->add_option("--level", lig_level, "level N (every delta must divide it)")
        ->required();
    sc_lig->add_option("--modulus", lig_modulus, "24, or 8 for the relaxed variant")
        ->check(CLI::IsMember({24, 8}));
    lig_common.add_to(sc_lig);

    // asd-scan
    auto* sc_scan = app.add_subcommand("asd-scan",
                                       "per-prime constant-ratio scan for a pair of forms");
    std::string scan_pairs_file, scan_a, scan_b;
    long long scan_pmax = 47, scan_nbound = 500, scan_witness = 2;
    Common scan_common;
    sc_scan->add_option("--pairs", scan_pairs_file,
                        "file of pairs, one per line: EXPR or EXPR ; EXPR");
    sc_scan->add_option("expr_a", scan_a, "first form (self-pair if the second is omitted)");
    sc_scan->add_option("expr_b", scan_b, "second form");
    sc_scan->add_option("--pmax", scan_pmax, "scan primes 5..pmax");
    sc_scan->add_option("--nbound", scan_nbound, "coefficient indices np <= nbound");
    sc_scan->add_option("--witness-min", scan_witness, "rows needed to certify a constant");
    scan_common.add_to(sc_scan);

    // search
    auto* sc_search = app.add_subcommand("search", "enumerate and scan candidate pairs");
    SearchConfig cfg;
    std::string search_bases = "8";
    bool no_filter = false, no_prescan = false;
    Common search_common;
    sc_search->add_option("--bases", search_bases, "6, 8 or four comma-separated scales");
    sc_search->add_option("--bound", cfg.bound, "max |exponent| in a tuple");
    sc_search->add_option("--weight-sum", cfg.weight_sum, "sum of tuple exponents");
    sc_search->add_option("--pmax", cfg.prime_max, "scan primes 5..pmax");
    sc_search->add_option("--nbound", cfg.n_bound, "coefficient indices np <= nbound");
    sc_search->add_option("--witness-min", cfg.witness_min,
                          "rows needed to certify a constant");
    sc_search->add_option("--jobs", cfg.jobs, "worker threads");
    sc_search->add_flag("--no-filter", no_filter, "skip the denominator-growth filter");
    sc_search->add_flag("--no-prescan", no_prescan, "skip the residue prescan");
    search_common.add_to(sc_search);

    // reproduce
    auto* sc_rep = app.add_subcommand("reproduce", "recompute a shipped reference table");
    int rep_figure = 0;
    bool rep_worked = false;
    long long rep_pmax = 47, rep_nbound = 500;
    Common rep_common;
    auto* fig_opt = sc_rep->add_option("--figure", rep_figure, "reference table 1..4")
                        ->check(CLI::Range(1, 4));
    auto* worked_opt = sc_rep->add_flag("--worked-example", rep_worked,
                                        "the (H1, H2) constants table, start to finish");
    fig_opt->excludes(worked_opt);
    sc_rep->add_option("--pmax", rep_pmax, "scan primes 5..pmax (worked example)");
    sc_rep->add_option("--nbound", rep_nbound, "coefficient bound (worked example)");
    rep_common.add_to(sc_rep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(sc_expand)) {
            expand_common.settle();
            return cmd_expand(expand_expr, expand_terms, expand_common);
        }
        if (app.got_subcommand(sc_lig)) {
            lig_common.settle();
            return cmd_ligozat(lig_expr, lig_level, lig_modulus, lig_common);
        }
        if (app.got_subcommand(sc_scan)) {
            scan_common.settle();
            std::vector<ScanInput> inputs;
            if (!scan_pairs_file.empty()) {
                if (!scan_a.empty() || !scan_b.empty())
                    throw Error("--pairs and positional expressions are exclusive");
                inputs = read_pairs_file(scan_pairs_file);
            } else if (!scan_a.empty()) {
                std::string b = scan_b.empty() ? scan_a : scan_b;
                inputs.push_back({scan_a, b, parse_expr(scan_a), parse_expr(b)});
            } else {
                throw Error("asd-scan needs --pairs FILE or one or two expressions");
            }
            return cmd_asd_scan(inputs, scan_pmax, scan_nbound, scan_witness, scan_common);
        }
        if (app.got_subcommand(sc_search)) {
            search_common.settle();
            cfg.bases = parse_bases(search_bases);
            cfg.use_denominator_filter = !no_filter;
            cfg.use_prescan = !no_prescan;
            return cmd_search(cfg, search_common);
        }
        if (app.got_subcommand(sc_rep)) {
            rep_common.settle();
            if (rep_figure > 0) return cmd_figure(rep_figure, rep_common);
            if (rep_worked) return cmd_worked_example(rep_pmax, rep_nbound, rep_common);
            throw Error("reproduce needs --figure N or --worked-example");
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
