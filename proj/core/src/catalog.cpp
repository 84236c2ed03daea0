#include "etaq/catalog.hpp"

#include <map>

namespace etaq {

namespace {

EtaQuotient quotient(std::vector<std::pair<long long, long long>> delta_exp) {
    return EtaQuotient::from_integer_exponents(delta_exp);
}

std::vector<std::pair<long long, Rat>> terms_i(
    std::initializer_list<std::pair<long long, long long>> ts) {
    std::vector<std::pair<long long, Rat>> out;
    for (auto [n, c] : ts) out.emplace_back(n, rat(c));
    return out;
}

TupleSpec tuple48(std::array<long long, 4> exps) {
    TupleSpec t;
    t.bases = {1, 2, 4, 8};
    t.exponents = exps;
    return t;
}

TupleSpec tuple36(std::array<long long, 4> exps) {
    TupleSpec t;
    t.bases = {1, 2, 3, 6};
    t.exponents = exps;
    return t;
}

std::vector<NamedForm> build_blocks() {
    std::vector<NamedForm> v;

    const char* g16 = "weight 1 for Gamma_1(6)";
    v.push_back({"a", g16, quotient({{1, 1}, {2, -2}, {3, -3}, {6, 6}}), 0,
                 terms_i({{1, 1}, {2, -1}, {3, 1}, {4, 1}})});
    v.push_back({"b", g16, quotient({{1, -2}, {2, 1}, {3, 6}, {6, -3}}), 0,
                 terms_i({{0, 1}, {1, 2}, {2, 4}, {3, 2}})});
    v.push_back({"c", g16, quotient({{1, -3}, {2, 6}, {3, 1}, {6, -2}}), 0,
                 terms_i({{0, 1}, {1, 3}, {2, 3}, {3, 3}})});
    v.push_back({"d", g16, quotient({{1, 6}, {2, -3}, {3, -2}, {6, 1}}), 0,
                 terms_i({{0, 1}, {1, -6}, {2, 12}, {3, -6}})});
    v.push_back({"e", "weight 1 for Gamma_1(12)",
                 quotient({{1, 2}, {2, -1}, {3, 2}, {6, -1}}), 0,
                 terms_i({{0, 1}, {1, -2}, {2, 0}, {3, -2}})});

    const char* g48 = "weight 0 for Gamma_1(4) cap Gamma_0(8)";
    const char* g116 = "weight 0 for Gamma_1(16)";
    v.push_back({"t", g48, quotient({{1, 8}, {2, -12}, {4, 4}}), 0, {}});
    v.push_back({"(t+1)/2", g48, quotient({{1, 4}, {2, -14}, {4, 14}, {8, -4}}), 0, {}});
    v.push_back({"(t+1)/2t", g48, quotient({{1, -4}, {2, -2}, {4, 10}, {8, -4}}), 0, {}});
    v.push_back({"4(t+1)/(1-t)", g48, quotient({{2, -4}, {4, 12}, {8, -8}}), 0, {}});
    v.push_back({"sqrt(t)", g116, quotient({{1, 4}, {2, -6}, {4, 2}}), 0, {}});
    v.push_back({"sqrt((t+1)/2)", g116, quotient({{1, 2}, {2, -7}, {4, 7}, {8, -2}}), 0, {}});

    const char* w48 = "weight 3 for Gamma_1(4) cap Gamma_0(8)";
    v.push_back({"E_a", w48, quotient({{1, -4}, {2, 6}, {4, 4}}), 0, {}});
    v.push_back({"E_b", w48, quotient({{2, 8}, {4, -6}, {8, 4}}), 0, {}});

    const char* noncong = "weight 3 for a noncongruence subgroup of Gamma_0(16)";
    v.push_back({"H1", noncong, tuple48({-8, 12, 14, 0}).quotient(), 0,
                 {{1, rat(1)},
                  {2, rat(8, 3)},
                  {3, rat(32, 9)},
                  {4, rat(544, 81)},
                  {5, rat(1358, 243)}}});
    v.push_back({"H2", noncong, tuple48({8, -12, 22, 0}).quotient(), 0,
                 {{1, rat(1)},
                  {2, rat(-8, 3)},
                  {3, rat(32, 9)},
                  {4, rat(-544, 81)},
                  {5, rat(1358, 243)}}});

    v.push_back({"f", "weight 3 newform, level 144, nebentypus the nontrivial character mod 4",
                 quotient({{4, 6}}), 3,
                 terms_i({{1, 1},
                          {5, 6},
                          {13, 10},
                          {17, 30},
                          {25, 11},
                          {29, -42},
                          {37, -70},
                          {41, -18},
                          {49, 49}})});
    return v;
}

const std::vector<NamedForm>& blocks() {
    static const std::vector<NamedForm> v = build_blocks();
    return v;
}

EtaQuotient closed(const char* base, const Rat& power, std::initializer_list<const char*> rest) {
    EtaQuotient q = block(base).object.scaled(power);
    for (const char* name : rest) q = combine(q, block(name).object);
    return q;
}

EtaQuotient closed_ratio(const char* top, const char* bottom, const Rat& power,
                         std::initializer_list<const char*> rest) {
    EtaQuotient q =
        combine(block(top).object, block(bottom).object.inverse()).scaled(power);
    for (const char* name : rest) q = combine(q, block(name).object);
    return q;
}

FigureRow row(TupleSpec h1, std::string label1, EtaQuotient closed1, TupleSpec h2,
              std::string label2, EtaQuotient closed2) {
    FigureRow r;
    r.h1 = h1;
    r.h2 = h2;
    r.label1 = std::move(label1);
    r.label2 = std::move(label2);
    r.label1_matches = closed1 == h1.quotient();
    r.label2_matches = closed2 == h2.quotient();
    r.closed1 = std::move(closed1);
    r.closed2 = std::move(closed2);
    return r;
}

std::vector<Figure> build_figures() {
    std::vector<Figure> figs(4);

    Figure& f1 = figs[0];
    f1.number = 1;
    f1.title = "forms for subgroups of Gamma_1(12)";
    f1.bases = {1, 2, 3, 6};
    f1.rows.push_back(row(tuple36({4, 7, -4, 11}), "(b/d)^(1/3) acd",
                          closed_ratio("b", "d", rat(1, 3), {"a", "c", "d"}),
                          tuple36({-4, 11, 4, 7}), "(b/d)^(2/3) acd",
                          closed_ratio("b", "d", rat(2, 3), {"a", "c", "d"})));
    f1.rows.push_back(row(tuple36({13, -2, -7, 14}), "(b/c)^(1/3) acd",
                          closed_ratio("b", "c", rat(1, 3), {"a", "c", "d"}),
                          tuple36({14, -7, -2, 13}), "(b/c)^(2/3) acd",
                          closed_ratio("b", "c", rat(2, 3), {"a", "c", "d"})));

    Figure& f2 = figs[1];
    f2.number = 2;
    f2.title = "forms for subgroups of Gamma_0(8) cap Gamma_1(4)";
    f2.bases = {1, 2, 4, 8};
    f2.rows.push_back(row(tuple48({-8, 20, 2, 4}), "((t+1)/2)^(1/3) E_b",
                          closed("(t+1)/2", rat(1, 3), {"E_b"}), tuple48({-4, 22, -8, 8}),
                          "((t+1)/2)^(2/3) E_b", closed("(t+1)/2", rat(2, 3), {"E_b"})));
    f2.rows.push_back(row(tuple48({-4, 6, 16, 0}), "t^(1/3) E_a",
                          closed("t", rat(1, 3), {"E_a"}), tuple48({4, -6, 20, 0}),
                          "t^(2/3) E_a", closed("t", rat(2, 3), {"E_a"})));
    f2.rows.push_back(row(tuple48({4, 10, -4, 8}), "((t+1)/2t)^(1/3) E_b",
                          closed("(t+1)/2t", rat(1, 3), {"E_b"}), tuple48({8, -4, 10, 4}),
                          "((t+1)/2t)^(2/3) E_b", closed("(t+1)/2t", rat(2, 3), {"E_b"})));
    f2.rows.push_back(row(tuple48({0, 20, -6, 4}), "(4(t+1)/(1-t))^(1/3) E_b",
                          closed("4(t+1)/(1-t)", rat(1, 3), {"E_b"}), tuple48({0, 16, 6, -4}),
                          "(4(t+1)/(1-t))^(2/3) E_b",
                          closed("4(t+1)/(1-t)", rat(2, 3), {"E_b"})));

    Figure& f3 = figs[2];
    f3.number = 3;
    f3.title = "pairs forming AS-D bases, subgroups of Gamma_1(12)";
    f3.bases = {1, 2, 3, 6};
    f3.rows.push_back(row(tuple36({-8, 13, 8, 5}), "(e/b)^(1/3) abc",
                          closed_ratio("e", "b", rat(1, 3), {"a", "b", "c"}),
                          tuple36({8, 5, -8, 13}), "(e/b)^(2/3) ace",
                          closed_ratio("e", "b", rat(2, 3), {"a", "c", "e"})));

    Figure& f4 = figs[3];
    f4.number = 4;
    f4.title = "pairs forming AS-D bases, subgroups of Gamma_0(16) cap Gamma_1(4)";
    f4.bases = {1, 2, 4, 8};
    f4.rows.push_back(row(tuple48({-2, 23, -13, 10}), "((t+1)/2t)^(1/6) E_b",
                          closed("(t+1)/2t", rat(1, 6), {"E_b"}), tuple48({-10, 19, 7, 2}),
                          "((t+1)/2t)^(5/6) E_b", closed("(t+1)/2t", rat(5, 6), {"E_b"})));
    f4.rows.push_back(row(tuple48({8, -12, 22, 0}), "t^(1/2) E_a",
                          closed("t", rat(1, 2), {"E_a"}), tuple48({-8, 12, 14, 0}),
                          "t^(5/2) E_a", closed("t", rat(5, 2), {"E_a"})));
    f4.rows.push_back(row(tuple48({0, -8, 30, -4}), "(4(t+1)/(1-t))^(8/3) E_b",
                          closed("4(t+1)/(1-t)", rat(8, 3), {"E_b"}), tuple48({0, 8, 6, 4}),
                          "t^(-2/3) E_b", closed("t", rat(-2, 3), {"E_b"})));
    f4.rows.push_back(row(tuple48({2, 17, -11, 10}), "((t+1)/2)^(1/6) E_a",
                          closed("(t+1)/2", rat(1, 6), {"E_a"}), tuple48({10, -11, 17, 2}),
                          "((t+1)/2)^(5/6) E_a", closed("(t+1)/2", rat(5, 6), {"E_a"})));
    return figs;
}

} // namespace

FracSeries NamedForm::expand(long long order) const {
    FracSeries s = object.expand(order);
    if (twist_modulus == 0) return s;
    s = s.canonicalized();
    if (s.ramification() != 1)
        throw NonIntegralExponents("twisting needs an integral expansion: " + name);
    QuadraticCharacter chi = QuadraticCharacter::legendre(twist_modulus);
    std::vector<FracSeries::Term> terms;
    for (const auto& [n, c] : s.terms()) terms.emplace_back(n, c * chi(n));
    return FracSeries::from_terms(1, std::move(terms), s.trunc_index());
}

const NamedForm& block(const std::string& name) {
    static const std::map<std::string, const NamedForm*> index = [] {
        std::map<std::string, const NamedForm*> m;
        for (const NamedForm& f : blocks()) m.emplace(f.name, &f);
        return m;
    }();
    auto it = index.find(name);
    if (it == index.end()) throw UnknownName("no catalog form named '" + name + "'");
    return *it->second;
}

const std::vector<std::string>& block_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const NamedForm& f : blocks()) v.push_back(f.name);
        return v;
    }();
    return names;
}

const Figure& figures(int which) {
    static const std::vector<Figure> figs = build_figures();
    if (which < 1 || which > static_cast<int>(figs.size()))
        throw UnknownName("no reference table " + std::to_string(which));
    return figs[which - 1];
}

const std::vector<WorkedExampleRow>& worked_example_documented() {
    static const std::vector<WorkedExampleRow> rows = {
        {5, 6, std::nullopt},    {7, std::nullopt, 0},   {11, std::nullopt, 0},
        {13, std::nullopt, 10},  {17, 30, std::nullopt}, {19, std::nullopt, 0},
        {23, std::nullopt, 0},   {29, -42, std::nullopt}, {31, std::nullopt, 0},
        {37, std::nullopt, -70}, {41, -18, std::nullopt}, {43, std::nullopt, 0},
        {47, std::nullopt, 0},
    };
    return rows;
}

const std::vector<NewformSource>& newform_sources() {
    static const std::vector<NewformSource> sources = [] {
        QuadraticCharacter tau = newform_f_nebentypus();
        std::vector<NewformSource> v;
        v.push_back({"eta(q^4)^6", quotient({{4, 6}}), tau});
        v.push_back({"E_a", block("E_a").object, tau});
        v.push_back({"E_b", block("E_b").object, tau});
        return v;
    }();
    return sources;
}

CoefficientTable twist(const CoefficientTable& c, const QuadraticCharacter& chi) {
    std::vector<Rat> v;
    v.reserve(c.max_n());
    for (long long n = 1; n <= c.max_n(); ++n) v.push_back(c.a(n) * chi(n));
    std::string id = c.form_id();
    if (!id.empty() && !chi.is_principal())
        id += "*chi" + std::to_string(chi.modulus());
    return CoefficientTable(std::move(id), c.ramification(), std::move(v));
}

CoefficientTable newform_f(long long order) {
    return CoefficientTable::from_series(block("f").expand(order), "f");
}

QuadraticCharacter newform_f_nebentypus() {
    std::vector<int> v{0, 1, 0, -1};
    return QuadraticCharacter(4, std::move(v));
}

} // namespace etaq
