#include "etaq/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace etaq {

namespace {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long long> scan_primes(long long prime_max) {
    std::vector<long long> ps;
    for (long long p = 5; p <= prime_max; ++p)
        if (is_prime(p)) ps.push_back(p);
    return ps;
}

long long ceil_of(const Rat& x) {
    Int q = x.get_num() / x.get_den();
    if (q * x.get_den() != x.get_num() && x > 0) q += 1;
    return q.get_si();
}

// run fn(0..n-1) on up to `jobs` threads; first exception wins and rethrows
void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    size_t count = std::min<size_t>(static_cast<size_t>(jobs), n);
    threads.reserve(count);
    for (size_t i = 0; i < count; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

// expansion deep enough for n_terms grid coefficients past the lead
long long order_for(const EtaQuotient& q, long long n_terms) {
    Rat lead = q.leading_exponent();
    long long mu = std::max<long long>(1, lead.get_den().get_si());
    return ceil_of(lead + rat(n_terms + 2, mu));
}

CoefficientTable full_table(const TupleSpec& t, const SearchConfig& cfg) {
    EtaQuotient q = t.quotient();
    return CoefficientTable::from_series(q.expand(order_for(q, cfg.n_bound)), t.str());
}

// Everything the pairing stages need to know about one candidate.  The
// support lies in n0 + g*mu*Z on the mu-grid (g = gcd of the active bases),
// which drives both the witness-feasibility drop and the interaction tests.
struct Candidate {
    TupleSpec spec;
    long long mu = 1; // grid: coefficient n sits at exponent n/mu
    long long n0 = 1; // grid index of the (monic) leading coefficient
    long long g = 1;
    bool feasible = true;
    long long terms = 0;                    // usable short-window grid indices
    std::vector<std::vector<uint64_t>> res; // residues mod p^2 per prescan prime
    bool res_usable = false;
};

long long active_gcd(const TupleSpec& t) {
    long long g = 0;
    for (size_t i = 0; i < t.bases.size(); ++i)
        if (t.exponents[i] != 0) g = std::gcd(g, t.bases[i]);
    return g == 0 ? 1 : g;
}

Candidate prepare_candidate(const TupleSpec& spec, const std::vector<long long>& scan_ps,
                            const std::vector<long long>& prescan_ps,
                            const SearchConfig& cfg) {
    Candidate c;
    c.spec = spec;
    EtaQuotient q = spec.quotient();
    Rat lead = q.leading_exponent();
    c.mu = lead.get_den().get_si();
    c.n0 = lead.get_num().get_si();
    c.g = active_gcd(spec);

    CoefficientTable tab =
        CoefficientTable::from_series(q.expand(order_for(q, cfg.prescan_terms)));
    c.terms = std::min(cfg.prescan_terms, tab.max_n());

    // every classification needs witness_min unit rows n <= n_bound/p in each
    // member; when the window covers that whole range the count is exact
    for (long long p : scan_ps) {
        long long rows = cfg.n_bound / p;
        if (rows > c.terms) continue;
        long long units = 0;
        for (long long n = 1; n <= rows; ++n) {
            if (n % p == 0) continue;
            Valuation v = vp(tab.a(n), p);
            if (!v.infinite && v.v == 0) ++units;
        }
        if (units < cfg.witness_min) {
            c.feasible = false;
            return c;
        }
    }

    if (cfg.use_prescan) {
        c.res_usable = true;
        for (long long p : prescan_ps) {
            unsigned long long m = static_cast<unsigned long long>(p) * p;
            std::vector<uint64_t> r(static_cast<size_t>(c.terms) + 1, 0);
            for (long long n = 1; n <= c.terms && c.res_usable; ++n) {
                auto red = mod_reduce(tab.a(n), m);
                if (!red)
                    c.res_usable = false; // denominator hits p: leave to the full scan
                else
                    r[static_cast<size_t>(n)] = *red;
            }
            c.res.push_back(std::move(r));
            if (!c.res_usable) break;
        }
    }
    return c;
}

// Can a row with a nonzero bottom have its top land on the top support?
// Rows run over n = n0_bot + D_bot*t, tops need np = n0_top mod D_top; p is
// coprime to every D here (D | 576 or D | 432, p >= 5), so solvability
// reduces to one divisibility.
bool interacts(long long n0_top, long long g_top, long long n0_bot, long long g_bot,
               long long mu, long long p) {
    long long D = mu * std::gcd(g_top, g_bot);
    return (n0_top - p * n0_bot) % D == 0;
}

// Per-prime structure of a pair: a prime can yield a nonzero constant only
// when both self-interactions (case 1) or both cross ones (nondegenerate
// case 2) are possible; `disc` marks primes whose cross columns can carry
// values at all, i.e. the only primes where a scan can fail.
struct PairPlan {
    bool any_nonzero = false;
    std::vector<char> disc;
};

PairPlan plan_pair(const Candidate& a, const Candidate& b,
                   const std::vector<long long>& scan_ps) {
    PairPlan plan;
    plan.disc.resize(scan_ps.size(), 0);
    for (size_t i = 0; i < scan_ps.size(); ++i) {
        long long p = scan_ps[i];
        bool aa = interacts(a.n0, a.g, a.n0, a.g, a.mu, p);
        bool bb = interacts(b.n0, b.g, b.n0, b.g, b.mu, p);
        bool ab = interacts(a.n0, a.g, b.n0, b.g, a.mu, p);
        bool ba = interacts(b.n0, b.g, a.n0, a.g, a.mu, p);
        if ((aa && bb) || (ab && ba)) plan.any_nonzero = true;
        plan.disc[i] = (ab || ba) ? 1 : 0;
    }
    return plan;
}

// Window version of the single-column ratio scan: false once the ratios
// x_{np}/x_n provably disagree.  top0/bot0 record the reference witness.
struct ColumnState {
    bool possible = true;
    int witnesses = 0;
    uint64_t top0 = 0, bot0 = 0;
};

ColumnState column_scan(const std::vector<uint64_t>& top_src,
                        const std::vector<uint64_t>& bot_src, long long terms, long long p) {
    ColumnState st;
    unsigned long long m = static_cast<unsigned long long>(p) * p;
    for (long long n = 1; n * p <= terms; ++n) {
        if (n % p == 0) continue;
        uint64_t bot = bot_src[static_cast<size_t>(n)];
        if (bot % p == 0) continue; // the real scan skips non-unit bottoms
        uint64_t top = top_src[static_cast<size_t>(n * p)];
        if (st.witnesses == 0) {
            st.top0 = top;
            st.bot0 = bot;
            st.witnesses = 1;
            continue;
        }
        if (mulmod_u64(top, st.bot0, m) != mulmod_u64(st.top0, bot, m)) {
            st.possible = false;
            return st;
        }
        ++st.witnesses;
    }
    return st;
}

// true unless the windows already contradict both scan cases at this prime
bool window_compatible(const Candidate& A, const Candidate& B, size_t pi, long long p) {
    long long terms = std::min(A.terms, B.terms);
    const auto& a = A.res[pi];
    const auto& b = B.res[pi];

    ColumnState ca = column_scan(a, a, terms, p);
    ColumnState cb = column_scan(b, b, terms, p);
    bool case1 = ca.possible && cb.possible;
    // the single constants must be nonzero but may differ between the forms
    if (case1 && ca.witnesses > 0 && ca.top0 == 0) case1 = false;
    if (case1 && cb.witnesses > 0 && cb.top0 == 0) case1 = false;
    if (case1) return true;

    ColumnState ab = column_scan(a, b, terms, p);
    ColumnState ba = column_scan(b, a, terms, p);
    return ab.possible && ba.possible;
}

// Authoritative scan of one surviving pair.  Classification is per-prime
// pure, so ordering is free: discriminating primes go first to fail fast,
// and the reports are re-sorted by p afterwards.
std::optional<CandidatePair> scan_pair(const CoefficientTable& a, const CoefficientTable& b,
                                       const Candidate& ca, const Candidate& cb,
                                       const PairPlan& plan,
                                       const std::vector<long long>& scan_ps,
                                       const SearchConfig& cfg, bool& vacuous) {
    vacuous = false;
    long long cap = std::min({a.max_n(), b.max_n(), cfg.n_bound});
    std::vector<size_t> order;
    order.reserve(scan_ps.size());
    for (size_t i = 0; i < scan_ps.size(); ++i)
        if (plan.disc[i]) order.push_back(i);
    for (size_t i = 0; i < scan_ps.size(); ++i)
        if (!plan.disc[i]) order.push_back(i);

    std::vector<PrimeReport> reports;
    reports.reserve(scan_ps.size());
    for (size_t i : order) {
        long long p = scan_ps[i];
        PrimeReport r = classify_prime(a, b, p, cap / p, cfg.witness_min);
        if (r.kind == AsdCase::NoMatch) return std::nullopt;
        reports.push_back(std::move(r));
    }
    std::sort(reports.begin(), reports.end(),
              [](const PrimeReport& x, const PrimeReport& y) { return x.p < y.p; });

    bool nonzero_seen = false;
    for (const PrimeReport& r : reports)
        if (r.kind == AsdCase::CaseOne || (r.kind == AsdCase::CaseTwo && !r.degenerate))
            nonzero_seen = true;
    if (!nonzero_seen) {
        vacuous = true; // congruences hold for any c_p: nothing is being related
        return std::nullopt;
    }

    CandidatePair cp;
    cp.h1 = ca.spec;
    cp.h2 = cb.spec;
    cp.per_prime = std::move(reports);
    cp.pattern = infer_pattern(cp.per_prime);
    cp.matched = match_newform(cp.per_prime, newform_sources());
    return cp;
}

std::vector<CandidatePair> pair_scan_impl(const std::vector<TupleSpec>& candidates,
                                          const SearchConfig& cfg, SearchStats& stats,
                                          const std::function<void(const std::string&)>& note) {
    std::vector<TupleSpec> specs = candidates;
    std::sort(specs.begin(), specs.end());
    specs.erase(std::unique(specs.begin(), specs.end()), specs.end());
    size_t count = specs.size();

    std::vector<long long> scan_ps = scan_primes(cfg.prime_max);
    std::vector<long long> prescan_ps;
    for (long long p : {5, 7, 11, 13})
        if (p <= cfg.prime_max && 3 * p <= cfg.prescan_terms) prescan_ps.push_back(p);

    std::vector<Candidate> cands(count);
    parallel_for(count, cfg.jobs, [&](size_t i) {
        cands[i] = prepare_candidate(specs[i], scan_ps, prescan_ps, cfg);
    });
    std::vector<size_t> live;
    for (size_t i = 0; i < count; ++i) {
        if (cands[i].feasible)
            live.push_back(i);
        else
            ++stats.infeasible_dropped;
    }
    if (note)
        note("prepared " + std::to_string(count) + " candidates, " +
             std::to_string(live.size()) + " can reach witness_min everywhere");

    std::map<long long, std::vector<size_t>> groups; // shared grid = same mu
    for (size_t i : live) groups[cands[i].mu].push_back(i);

    std::vector<CandidatePair> out;
    std::mutex out_mutex;

    for (const auto& [mu, members] : groups) {
        // interaction plans + residue windows: cheap, kills almost everything
        std::atomic<long long> considered{0}, vacuous_n{0}, prescan_n{0};
        std::vector<std::pair<size_t, size_t>> survivors; // indices into members
        std::mutex surv_mutex;
        parallel_for(members.size(), cfg.jobs, [&](size_t x) {
            std::vector<std::pair<size_t, size_t>> mine;
            const Candidate& A = cands[members[x]];
            for (size_t y = x; y < members.size(); ++y) {
                const Candidate& B = cands[members[y]];
                ++considered;
                PairPlan plan = plan_pair(A, B, scan_ps);
                if (!plan.any_nonzero) {
                    ++vacuous_n;
                    continue;
                }
                bool ok = true;
                if (cfg.use_prescan && A.res_usable && B.res_usable) {
                    for (size_t pi = 0; pi < prescan_ps.size() && ok; ++pi) {
                        auto it = std::find(scan_ps.begin(), scan_ps.end(), prescan_ps[pi]);
                        size_t si = static_cast<size_t>(it - scan_ps.begin());
                        if (!plan.disc[si]) continue; // structurally zero columns
                        ok = window_compatible(A, B, pi, prescan_ps[pi]);
                    }
                }
                if (ok)
                    mine.emplace_back(x, y);
                else
                    ++prescan_n;
            }
            if (!mine.empty()) {
                std::lock_guard<std::mutex> lock(surv_mutex);
                survivors.insert(survivors.end(), mine.begin(), mine.end());
            }
        });
        stats.pairs_considered += considered.load();
        stats.vacuous_rejected += vacuous_n.load();
        stats.prescan_rejected += prescan_n.load();
        if (note)
            note("grid 1/" + std::to_string(mu) + ": " + std::to_string(members.size()) +
                 " candidates, " + std::to_string(survivors.size()) + " of " +
                 std::to_string(considered.load()) + " pairs reach the full scan");
        if (survivors.empty()) continue;
        std::sort(survivors.begin(), survivors.end());

        // authoritative tables only for members still in play
        std::set<size_t> needed_set;
        for (auto [x, y] : survivors) {
            needed_set.insert(x);
            needed_set.insert(y);
        }
        std::vector<size_t> needed(needed_set.begin(), needed_set.end());
        std::vector<CoefficientTable> tables(members.size());
        parallel_for(needed.size(), cfg.jobs, [&](size_t k) {
            tables[needed[k]] = full_table(cands[members[needed[k]]].spec, cfg);
        });

        std::atomic<long long> vacuous_full{0};
        std::vector<std::optional<CandidatePair>> found(survivors.size());
        parallel_for(survivors.size(), cfg.jobs, [&](size_t k) {
            auto [x, y] = survivors[k];
            const Candidate& A = cands[members[x]];
            const Candidate& B = cands[members[y]];
            if (tables[x].ramification() != tables[y].ramification()) return;
            PairPlan plan = plan_pair(A, B, scan_ps);
            bool vac = false;
            found[k] = scan_pair(tables[x], tables[y], A, B, plan, scan_ps, cfg, vac);
            if (vac) ++vacuous_full;
        });
        stats.fully_scanned += static_cast<long long>(survivors.size());
        stats.vacuous_rejected += vacuous_full.load();
        {
            std::lock_guard<std::mutex> lock(out_mutex);
            for (auto& f : found)
                if (f) out.push_back(std::move(*f));
        }
    }

    std::sort(out.begin(), out.end(), [](const CandidatePair& x, const CandidatePair& y) {
        if (!(x.h1 == y.h1)) return x.h1 < y.h1;
        return x.h2 < y.h2;
    });
    stats.pairs_found += static_cast<long long>(out.size());
    return out;
}

} // namespace

std::vector<TupleSpec> enumerate_tuples(const SearchConfig& cfg) {
    std::vector<TupleSpec> out;
    long long B = cfg.bound;
    for (long long m = -B; m <= B; ++m)
        for (long long n = -B; n <= B; ++n)
            for (long long r = -B; r <= B; ++r) {
                long long s = cfg.weight_sum - m - n - r;
                if (s < -B || s > B) continue;
                TupleSpec t;
                t.bases = cfg.bases;
                t.exponents = {m, n, r, s};
                out.push_back(t);
            }
    return out;
}

FilterDecision denominator_filter(const TupleSpec& t, long long order, long long p,
                                  long long threshold) {
    FilterDecision d;
    FracSeries s = t.quotient().expand(order);
    d.window = s.trunc_index();
    long long running = 0;
    for (const auto& [idx, coeff] : s.terms()) {
        Valuation v = vp(coeff, p);
        long long depth = (!v.infinite && v.v < 0) ? -v.v : 0;
        if (depth > running) {
            running = depth;
            d.last_growth = idx;
        }
    }
    d.max_depth = running;
    d.keep = d.max_depth > threshold && 2 * d.last_growth >= d.window;
    return d;
}

std::string FilterDecision::str() const {
    std::ostringstream os;
    os << (keep ? "keep" : "drop") << " (max denominator depth " << max_depth
       << ", last growth at index " << last_growth << " of " << window << ")";
    return os.str();
}

ScanClass scan_class(const PrimeReport& r) {
    if (r.kind == AsdCase::CaseOne) return ScanClass::One;
    return r.degenerate ? ScanClass::TwoZero : ScanClass::Two;
}

std::string scan_class_str(ScanClass c) {
    switch (c) {
        case ScanClass::One: return "case 1";
        case ScanClass::Two: return "case 2";
        case ScanClass::TwoZero: return "case 2 (zero)";
    }
    return "?";
}

std::optional<CasePattern> infer_pattern(const std::vector<PrimeReport>& reports,
                                         long long max_modulus) {
    for (long long m = 1; m <= max_modulus; ++m) {
        std::map<long long, ScanClass> classes;
        bool ok = true;
        for (const PrimeReport& r : reports) {
            if (r.kind == AsdCase::NoMatch) return std::nullopt;
            ScanClass cls = scan_class(r);
            auto [it, inserted] = classes.emplace(r.p % m, cls);
            if (!inserted && it->second != cls) {
                ok = false;
                break;
            }
        }
        if (ok) {
            CasePattern pat;
            pat.modulus = m;
            pat.classes = std::move(classes);
            return pat;
        }
    }
    return std::nullopt;
}

std::string CasePattern::str() const {
    std::ostringstream os;
    os << "mod " << modulus << ":";
    bool first = true;
    for (const auto& [residue, cls] : classes) {
        os << (first ? " " : ", ") << residue << " -> " << scan_class_str(cls);
        first = false;
    }
    return os.str();
}

std::optional<NewformMatch> match_newform(const std::vector<PrimeReport>& reports,
                                          const std::vector<NewformSource>& sources,
                                          long long max_modulus) {
    if (reports.empty()) return std::nullopt;
    long long pmax = 0;
    for (const PrimeReport& r : reports) pmax = std::max(pmax, r.p);

    for (const NewformSource& src : sources) {
        CoefficientTable tab =
            CoefficientTable::from_series(src.object.expand(pmax + 2), src.name);
        if (tab.ramification() != 1 || tab.max_n() < pmax) continue;
        for (long long m = 1; m <= max_modulus; ++m) {
            for (const QuadraticCharacter& chi : quadratic_characters(m)) {
                bool ok = true;
                for (const PrimeReport& r : reports) {
                    unsigned long long mod = static_cast<unsigned long long>(r.p) * r.p;
                    auto c = mod_reduce(tab.a(r.p) * chi(r.p), mod);
                    if (!c) {
                        ok = false;
                        break;
                    }
                    if (r.kind == AsdCase::CaseOne) {
                        // both forms must carry this source's constant
                        ok = r.c && *c == *r.c && (!r.c_b || *c == *r.c_b);
                    } else if (r.kind == AsdCase::CaseTwo) {
                        if (r.degenerate) {
                            ok = *c == 0;
                        } else if (r.ratio_ab && r.ratio_ba && *r.ratio_ab == *r.ratio_ba) {
                            // equal columns pin the constant itself (alpha
                            // normalized to +1), not only its square; the
                            // untwisted source would otherwise shadow the
                            // twist that reproduces the signs
                            ok = *c == *r.ratio_ab;
                        } else if (r.cp_sq) {
                            ok = mulmod_u64(*c, *c, mod) == *r.cp_sq;
                        } else {
                            ok = false;
                        }
                    } else {
                        ok = false;
                    }
                    if (!ok) break;
                }
                if (ok) return NewformMatch{src.name, chi, src.nebentypus};
            }
        }
    }
    return std::nullopt;
}

std::string NewformMatch::str() const {
    if (chi.is_principal()) return source + " (untwisted)";
    return source + " twisted by the character mod " + std::to_string(chi.modulus());
}

PairScanOutcome scan_tables(const CoefficientTable& a, const CoefficientTable& b,
                            const SearchConfig& cfg) {
    PairScanOutcome out;
    out.all_matched = true;
    long long cap = std::min({a.max_n(), b.max_n(), cfg.n_bound});
    for (long long p : scan_primes(cfg.prime_max)) {
        PrimeReport r = classify_prime(a, b, p, cap / p, cfg.witness_min);
        bool matched = r.kind != AsdCase::NoMatch;
        out.per_prime.push_back(std::move(r));
        if (!matched) {
            out.all_matched = false;
            break; // rejected at the first unclassified prime
        }
    }
    return out;
}

std::string CandidatePair::str() const {
    std::ostringstream os;
    os << h1.str();
    if (!(h1 == h2)) os << " with " << h2.str();
    if (pattern) os << "; pattern " << pattern->str();
    if (matched) os << "; newform " << matched->str();
    return os.str();
}

std::vector<CandidatePair> pair_scan(const std::vector<TupleSpec>& candidates,
                                     const SearchConfig& cfg) {
    SearchStats stats;
    return pair_scan_impl(candidates, cfg, stats, {});
}

std::string SearchStats::str() const {
    std::ostringstream os;
    os << "enumerated " << enumerated << ", dropped " << nonpositive_lead
       << " with nonpositive lead, " << filter_dropped << " by the denominator filter, "
       << infeasible_dropped << " short of witnesses; " << candidates << " candidates, "
       << pairs_considered << " pairs (" << vacuous_rejected << " non-interacting, "
       << prescan_rejected << " prescan-rejected, " << fully_scanned << " scanned); "
       << pairs_found << " found";
    return os.str();
}

SearchResult run_search(const SearchConfig& cfg,
                        const std::function<void(const std::string&)>& progress) {
    SearchResult result;
    auto note = [&](const std::string& s) {
        if (progress) progress(s);
    };

    std::vector<TupleSpec> all = enumerate_tuples(cfg);
    result.stats.enumerated = static_cast<long long>(all.size());
    note("enumerated " + std::to_string(all.size()) + " tuples");

    std::vector<TupleSpec> positive;
    for (const TupleSpec& t : all) {
        if (t.quotient().leading_exponent() > 0)
            positive.push_back(t);
        else
            ++result.stats.nonpositive_lead;
    }

    std::vector<TupleSpec> kept;
    if (cfg.use_denominator_filter) {
        std::vector<char> keep(positive.size(), 0);
        parallel_for(positive.size(), cfg.jobs, [&](size_t i) {
            keep[i] = denominator_filter(positive[i], cfg.filter_order, 3, cfg.filter_threshold)
                          .keep;
        });
        for (size_t i = 0; i < positive.size(); ++i) {
            if (keep[i])
                kept.push_back(positive[i]);
            else
                ++result.stats.filter_dropped;
        }
    } else {
        kept = std::move(positive);
    }
    result.stats.candidates = static_cast<long long>(kept.size());
    note("filtered to " + std::to_string(kept.size()) + " candidates");

    result.pairs = pair_scan_impl(kept, cfg, result.stats, progress);
    note("search complete: " + std::to_string(result.pairs.size()) + " pairs");
    return result;
}

} // namespace etaq
