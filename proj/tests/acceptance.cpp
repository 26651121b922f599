// Acceptance suite: one PASS/FAIL line per criterion.
#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lgbwt/builder.hpp"
#include "lgbwt/deriver.hpp"
#include "lgbwt/dictionary.hpp"
#include "lgbwt/error.hpp"
#include "lgbwt/lyndon.hpp"
#include "lgbwt/oracle.hpp"
#include "lgbwt/sorter.hpp"
#include "support.hpp"

using namespace lgbwt;
using namespace testing_support;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Outcome golden_fixture() {
    Outcome o;
    const auto t0 = Clock::now();
    const std::string text = "abbabcbcabb";
    const std::string bbwt = to_bytes(render(derive_bbwt_text(text, {}), BwtVariant::Bbwt));
    if (bbwt != "bcbbbaacabb") o.fail("BBWT was '" + bbwt + "'");

    Dictionary dict;
    const auto roots = build_bytes(text, dict, {});
    const Grammar g = dict.extract(roots);
    if (g.size() != 9 || g.roots.size() != 2) o.fail("grammar has " + std::to_string(g.size()) + " rules");
    if (!isomorphic(g, running_example_grammar())) o.fail("grammar is not isomorphic to the reference");
    if (!(sort_grammar(g).grammar == running_example_grammar())) o.fail("sorted grammar differs from the reference");
    const double s = elapsed(t0);
    if (s >= 1.0) o.fail("took " + std::to_string(s) + " s");
    o.detail += o.detail.empty() ? "bcbbbaacabb, 9 rules + 2 roots" : "";
    return o;
}

Outcome bbwt_oracle() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(0xb1b1);
    const unsigned sigmas[] = {1, 2, 4, 26};
    std::size_t cases = 0;
    for (unsigned sigma : sigmas) {
        for (int k = 0; k < 2500; ++k) {
            const std::string s = random_string(rng, uniform(rng, 1, 64), sigma);
            const ExtString got = derive_bbwt_text(s, {}).decode();
            if (got != oracle_bbwt(to_ext(s))) o.fail("mismatch on '" + s + "'");
            ++cases;
        }
    }
    const double secs = elapsed(t0);
    if (secs >= 60.0) o.fail("took " + std::to_string(secs) + " s");
    if (o.ok) o.detail = std::to_string(cases) + " strings in " + std::to_string(secs) + " s";
    return o;
}

Outcome dollar_oracle() {
    Outcome o;
    std::mt19937_64 rng(0xd011a5);
    const unsigned sigmas[] = {1, 2, 4, 26};
    std::size_t cases = 0;
    for (unsigned sigma : sigmas) {
        for (int k = 0; k < 2500; ++k) {
            const std::string s = random_string(rng, uniform(rng, 1, 64), sigma);
            ExtString with_sentinel = to_ext(s);
            with_sentinel.push_back(ExtChar::sentinel(0));
            if (derive_dollar_bwt(s, {}).decode() != oracle_bwt_sa(with_sentinel)) o.fail("mismatch on '" + s + "'");
            ++cases;
        }
    }
    if (o.ok) o.detail = std::to_string(cases) + " strings";
    return o;
}

Outcome collection_oracles() {
    Outcome o;
    std::mt19937_64 rng(0xc011);
    std::size_t cases = 0, with_dup = 0, with_power = 0;
    for (int k = 0; k < 2000; ++k) {
        const SequenceCollection coll = random_collection(rng, 8, 24);
        std::set<std::string> distinct;
        for (const auto& r : coll.records) {
            distinct.insert(r.data);
            const ExtString e = to_ext(r.data);
            if (rotate(e, least_rotation(e)) == e && !is_lyndon(e)) ++with_power;
        }
        if (distinct.size() < coll.size()) ++with_dup;

        std::vector<ExtString> strings;
        for (const auto& r : coll.records) strings.push_back(to_ext(r.data));
        auto describe = [&] {
            std::string d;
            for (const auto& r : coll.records) d += r.data + ",";
            return d;
        };
        if (derive_ebwt(coll, {}).decode() != oracle_ebwt(strings)) o.fail("eBWT mismatch on {" + describe() + "}");
        if (derive_dol_ebwt(coll, {}).decode() != oracle_dol_ebwt(coll)) o.fail("dolEBWT mismatch on {" + describe() + "}");
        if (derive_mdol_bwt(coll, {}).decode() != oracle_mdol_bwt(coll)) o.fail("mdolBWT mismatch on {" + describe() + "}");
        if (derive_conc_bwt(coll, {}).decode() != oracle_conc_bwt(coll)) o.fail("concBWT mismatch on {" + describe() + "}");
        ++cases;
    }
    if (with_dup == 0 || with_power == 0) o.fail("generator produced no duplicate or non-primitive records");
    if (o.ok) {
        o.detail = std::to_string(cases) + " collections x 4 variants (" + std::to_string(with_dup) +
                   " with duplicates, " + std::to_string(with_power) + " periodic records)";
    }
    return o;
}

std::vector<SortedGrammar> g_sorted;  // shared with the structural check

Outcome sorting() {
    Outcome o;
    std::mt19937_64 rng(0x5027);
    std::uint64_t worst = 0;
    for (int k = 0; k < 1000; ++k) {
        const std::string s = random_string(rng, uniform(rng, 1, 64), static_cast<unsigned>(uniform(rng, 1, 6)));
        Dictionary dict;
        const Grammar built = dict.extract(build_bytes(s, dict, {}));
        const Grammar shuffled = permute(built, random_permutation(rng, built.size()));
        SortedGrammar sg = sort_grammar(shuffled);
        const Grammar& g = sg.grammar;

        std::vector<std::pair<ExtString, SymbolId>> by_value;
        for (SymbolId i = 1; i <= shuffled.size(); ++i) by_value.emplace_back(expand(shuffled, i), i);
        std::sort(by_value.begin(), by_value.end());
        for (std::size_t r = 0; r < by_value.size(); ++r) {
            if (sg.perm[by_value[r].second] != r + 1) {
                o.fail("order differs from expand-and-sort on '" + s + "'");
                break;
            }
        }
        if (!(g == sort_grammar(built).grammar)) o.fail("result depends on the input numbering for '" + s + "'");
        if (expand_roots(g) != to_ext(s)) o.fail("renamed grammar no longer generates '" + s + "'");
        const std::uint64_t bound = 4 * g.slp_size();
        if (sg.iterations > bound) o.fail("iterations " + std::to_string(sg.iterations) + " > 4g on '" + s + "'");
        worst = std::max<std::uint64_t>(worst, sg.iterations * 1000 / g.slp_size());
        g_sorted.push_back(std::move(sg));
    }
    if (o.ok) o.detail = "1000 permuted grammars, max iterations/g = " + std::to_string(worst / 1000.0);
    return o;
}

Outcome structure() {
    Outcome o;
    std::size_t checked = 0;
    for (const SortedGrammar& sg : g_sorted) {
        const Grammar& g = sg.grammar;
        const std::size_t n = g.size();
        const FirstSymbolForest f = first_symbol_forest(sg);
        // Leftmost path of each symbol, by walking left children.
        std::vector<std::vector<bool>> on_left_path(n + 1, std::vector<bool>(n + 1, false));
        for (SymbolId j = 1; j <= n; ++j) {
            for (SymbolId x = j;; x = g.left(x)) {
                on_left_path[j][x] = true;
                if (g.is_terminal(x)) break;
            }
        }
        for (SymbolId i = 1; i <= n; ++i) {
            SymbolId lo = 0, hi = 0;
            std::size_t members = 0;
            for (SymbolId j = 1; j <= n; ++j) {
                if (!on_left_path[j][i]) continue;
                if (lo == 0) lo = j;
                hi = j;
                ++members;
            }
            if (f.lo[i] != i || lo != i) o.fail("l(X_i) != i");
            if (f.hi[i] != hi || members != hi - lo + 1) o.fail("interval is not the leftmost-path set");
            for (SymbolId j = f.lo[i]; j <= f.hi[i]; ++j) {
                if (!on_left_path[j][i]) o.fail("symbol in interval lacks X_i on its leftmost path");
            }
            const SymbolId expected_parent = g.is_terminal(i) ? kNullSymbol : g.left(i);
            if (f.parent[i] != expected_parent) o.fail("parent is not the left-hand symbol");
            for (SymbolId k = i + 1; k <= n; ++k) {
                const bool disjoint = f.hi[i] < f.lo[k] || f.hi[k] < f.lo[i];
                const bool nested = (f.lo[i] <= f.lo[k] && f.hi[k] <= f.hi[i]) || (f.lo[k] <= f.lo[i] && f.hi[i] <= f.hi[k]);
                if (!disjoint && !nested) o.fail("intervals are not laminar");
            }
        }
        ++checked;
    }
    if (checked < 1000) o.fail("only " + std::to_string(checked) + " grammars available");
    if (o.ok) o.detail = std::to_string(checked) + " sorted grammars";
    return o;
}

SequenceCollection determinism_corpus() {
    std::mt19937_64 rng(0xde7);
    std::vector<std::string> seeds;
    for (int k = 0; k < 6; ++k) seeds.push_back(random_string(rng, 300, 4));
    std::vector<std::string> recs;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t kind = uniform(rng, 0, 3);
        if (kind == 0) {
            recs.push_back(random_string(rng, uniform(rng, 1, 40), static_cast<unsigned>(uniform(rng, 1, 4))));
        } else {
            // mutated substring of a shared seed, so records overlap heavily
            const std::string& seed = seeds[uniform(rng, 0, seeds.size() - 1)];
            const std::size_t a = uniform(rng, 0, 100), len = uniform(rng, 20, 200);
            std::string r = seed.substr(a, len);
            for (char& c : r) {
                if (uniform(rng, 0, 99) == 0) c = static_cast<char>('a' + uniform(rng, 0, 3));
            }
            recs.push_back(r);
        }
    }
    return SequenceCollection::from_strings(recs);
}

Outcome determinism() {
    Outcome o;
    const SequenceCollection coll = determinism_corpus();
    const BwtVariant variants[] = {BwtVariant::Bbwt,    BwtVariant::DollarBwt, BwtVariant::Ebwt,
                                   BwtVariant::DolEbwt, BwtVariant::MdolBwt,   BwtVariant::ConcBwt};
    const ComparisonStrategy strategies[] = {ComparisonStrategy::Naive, ComparisonStrategy::LyndonArray,
                                             ComparisonStrategy::OrderedMarkers};
    const std::uint32_t thresholds[] = {0, 2, 8, 31};  // 0: heavy/light off
    const unsigned threads[] = {1, 4};
    std::size_t runs = 0;
    std::uint64_t heavy_hits = 0;
    for (BwtVariant v : variants) {
        std::string reference;
        bool have_reference = false;
        for (ComparisonStrategy st : strategies) {
            for (std::uint32_t t : thresholds) {
                for (unsigned th : threads) {
                    DeriveOptions opts;
                    opts.build.strategy = st;
                    opts.build.heavy_light = t != 0;
                    if (t != 0) opts.build.n_thres = t;
                    opts.threads = th;
                    DeriveStats stats;
                    const std::string out = to_bytes(render(derive_variant(v, coll, opts, &stats), v));
                    heavy_hits += stats.build.heavy_hits;
                    ++runs;
                    if (!have_reference) {
                        reference = out;
                        have_reference = true;
                    } else if (out != reference) {
                        o.fail(std::string(to_string(v)) + " differs for threshold " + std::to_string(t) + ", threads " +
                               std::to_string(th));
                    }
                }
            }
        }
    }
    if (heavy_hits == 0) o.fail("heavy-node table was never hit");
    if (o.ok) {
        o.detail = std::to_string(runs) + " configurations over 1000 records, " + std::to_string(heavy_hits) +
                   " heavy-table hits";
    }
    return o;
}

void check_grammar_validity(const std::string& s, Outcome& o) {
    Dictionary dict;
    const Grammar g = dict.extract(build_bytes(s, dict, {}));
    for (SymbolId i = 1; i <= g.size(); ++i) {
        if (g.is_terminal(i)) continue;
        const ExtString w = expand(g, i);
        if (!is_lyndon(w) || standard_factorization(w) != g.len(g.left(i)) ||
            !is_lyndon(expand(g, g.left(i))) || !is_lyndon(expand(g, g.right(i)))) {
            o.fail("rule of '" + s + "' is not a standard factorization");
            return;
        }
    }
    const ExtString text = to_ext(s);
    const auto factors = duval_factorize(text);
    bool same = factors.size() == g.roots.size();
    for (std::size_t k = 0; same && k < factors.size(); ++k) {
        same = expand(g, g.roots[k]) == ExtString(text.begin() + factors[k].start, text.begin() + factors[k].start + factors[k].len);
    }
    if (!same) o.fail("roots of '" + s + "' differ from the Lyndon factorization");
}

Outcome grammar_validity() {
    Outcome o;
    std::size_t exhaustive = 0, sampled = 0;
    for (std::size_t len = 1; len <= 12 && o.ok; ++len) {
        for_each_string(len, 3, [&](const std::string& s) {
            check_grammar_validity(s, o);
            ++exhaustive;
        });
    }
    std::mt19937_64 rng(0x3a3);
    for (std::size_t len = 13; len <= 20; ++len) {
        for (int k = 0; k < 5000; ++k) {
            check_grammar_validity(random_string(rng, len, 3), o);
            ++sampled;
        }
    }
    if (o.ok) o.detail = std::to_string(exhaustive) + " exhaustive + " + std::to_string(sampled) + " sampled inputs";
    return o;
}

Outcome smoke_performance() {
    Outcome o;
    std::mt19937_64 rng(0x9e7f);
    const std::string alphabet = "ACGT";
    std::string seed(200 * 1024, 'A');
    for (char& c : seed) c = alphabet[uniform(rng, 0, 3)];
    std::string text;
    text.reserve(seed.size() * 100);
    for (int copy = 0; copy < 100; ++copy) {
        std::string block = seed;
        for (std::size_t m = 0; m < block.size() / 1000; ++m) block[uniform(rng, 0, block.size() - 1)] = alphabet[uniform(rng, 0, 3)];
        text += block;
    }

    const auto t0 = Clock::now();
    DeriveStats stats;
    const RleString bwt = derive_dollar_bwt(text, {}, &stats);
    const double secs = elapsed(t0);
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    const double peak_mib = static_cast<double>(usage.ru_maxrss) / 1024.0;

    if (bwt.total_len() != text.size() + 1) o.fail("output length " + std::to_string(bwt.total_len()));
    if (secs >= 120.0) o.fail("took " + std::to_string(secs) + " s");
    if (peak_mib >= 2048.0) o.fail("peak memory " + std::to_string(peak_mib) + " MiB");
    std::ostringstream d;
    d.precision(3);
    d << "N=" << text.size() << " r=" << bwt.run_count() << " (N/r=" << static_cast<double>(text.size()) / bwt.run_count()
      << ") g=" << stats.grammar_size << " time=" << secs << "s (build " << stats.build_seconds << ", sort "
      << stats.sort_seconds << ", derive " << stats.derive_seconds << ") peak=" << peak_mib << "MiB";
    if (o.ok) o.detail = d.str(); else o.detail += "; " + d.str();
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 golden fixture", golden_fixture},
        {"2 BBWT oracle equivalence", bbwt_oracle},
        {"3 $-BWT oracle equivalence", dollar_oracle},
        {"4 collection variant oracles", collection_oracles},
        {"5 sorting correctness", sorting},
        {"6 structural properties", structure},
        {"7 strategy and threading determinism", determinism},
        {"8 grammar validity", grammar_validity},
        {"9 smoke performance", smoke_performance},
    };
    std::set<std::string> only;
    for (int i = 1; i < argc; ++i) only.insert(argv[i]);
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        if (!only.empty() && !only.count(name.substr(0, name.find(' ')))) continue;
        Outcome o;
        const auto t0 = Clock::now();
        try {
            o = check();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("%s criterion %s: %s [%.2f s]\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), elapsed(t0));
        std::fflush(stdout);
        if (!o.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
