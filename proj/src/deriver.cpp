#include "lgbwt/deriver.hpp"

#include <array>
#include <chrono>
#include <utility>

#include "lgbwt/dictionary.hpp"
#include "lgbwt/error.hpp"
#include "lgbwt/lyndon.hpp"

namespace lgbwt {

namespace {

constexpr std::array<std::pair<BwtVariant, std::string_view>, 6> kVariantNames{{
    {BwtVariant::Bbwt, "bbwt"},
    {BwtVariant::DollarBwt, "dollar-bwt"},
    {BwtVariant::Ebwt, "ebwt"},
    {BwtVariant::DolEbwt, "dol-ebwt"},
    {BwtVariant::MdolBwt, "mdol-bwt"},
    {BwtVariant::ConcBwt, "conc-bwt"},
}};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

/// 2g run-length lists in one node pool.
class SlotTable {
public:
    explicit SlotTable(std::size_t slots) : head_(slots, kNil), tail_(slots, kNil) {}

    void append(std::size_t slot, SymbolId s, std::uint64_t count) {
        const std::uint32_t t = tail_[slot];
        if (t != kNil && nodes_[t].sym == s) {
            nodes_[t].count += count;
            return;
        }
        std::uint32_t id;
        if (free_ != kNil) {
            id = free_;
            free_ = nodes_[id].next;
        } else {
            id = static_cast<std::uint32_t>(nodes_.size());
            nodes_.emplace_back();
        }
        nodes_[id] = Node{s, count, kNil};
        if (t == kNil) {
            head_[slot] = id;
        } else {
            nodes_[t].next = id;
        }
        tail_[slot] = id;
    }

    /// Removes and returns the first run of `slot`, if any.
    bool pop(std::size_t slot, SymbolId& s, std::uint64_t& count) {
        const std::uint32_t h = head_[slot];
        if (h == kNil) return false;
        s = nodes_[h].sym;
        count = nodes_[h].count;
        head_[slot] = nodes_[h].next;
        if (head_[slot] == kNil) tail_[slot] = kNil;
        nodes_[h].next = free_;
        free_ = h;
        return true;
    }

private:
    static constexpr std::uint32_t kNil = 0xffffffffu;
    struct Node {
        SymbolId sym = kNullSymbol;
        std::uint64_t count = 0;
        std::uint32_t next = kNil;
    };
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> head_;
    std::vector<std::uint32_t> tail_;
    std::uint32_t free_ = kNil;
};

void check_sorted_shape(const Grammar& g) {
    for (SymbolId i = 1; i <= g.size(); ++i) {
        if (g.is_terminal(i)) continue;
        if (!(g.left(i) < i && i < g.right(i))) {
            throw Error(ErrorCode::UnsortedGrammar, "rule " + std::to_string(i) + " is not in lexicographic order");
        }
    }
}

/// Sort, derive and fill in the grammar-level statistics.
RleString finish_pipeline(const Grammar& g, DeriveStats* stats) {
    auto t0 = Clock::now();
    SortedGrammar sg = sort_grammar(g);
    const double sort_s = seconds_since(t0);
    t0 = Clock::now();
    RleString out = derive_bbwt(sg.grammar, stats);
    if (stats != nullptr) {
        stats->derive_seconds += seconds_since(t0);
        stats->sort_seconds += sort_s;
        stats->sort_iterations = sg.iterations;
        stats->rules = g.size();
        stats->roots = g.roots.size();
        stats->grammar_size = g.slp_size();
        stats->runs = out.run_count();
    }
    return out;
}

std::vector<std::uint32_t> lambda_for(std::string_view s, const BuildOptions& opts) {
    if (opts.strategy != ComparisonStrategy::LyndonArray) return {};
    if (static_cast<std::uint64_t>(s.size()) * 28 > opts.lyndon_array_budget) {
        throw Error(ErrorCode::LyndonArrayBudget, "text exceeds the Lyndon-array memory budget");
    }
    return lyndon_array(to_ext(s));
}

RleString single_text(std::string_view s, bool with_sentinel, const DeriveOptions& opts, DeriveStats* stats) {
    validate(opts.build);
    if (s.empty()) throw Error(ErrorCode::EmptyInput, "cannot transform an empty text");
    const auto t0 = Clock::now();
    Dictionary dict;
    Parser parser(dict, opts.build);
    const std::vector<std::uint32_t> lambda = lambda_for(s, opts.build);
    parser.set_lyndon_array(lambda);
    for (std::size_t i = s.size(); i-- > 0;) parser.prepend(ExtChar::byte(static_cast<unsigned char>(s[i])), i);
    if (with_sentinel) parser.prepend(ExtChar::sentinel(0));
    const std::vector<SymbolId> roots = parser.finish();
    Grammar g = dict.extract(roots);
    if (stats != nullptr) {
        stats->build_seconds += seconds_since(t0);
        stats->build.add(parser.stats());
        stats->input_len = s.size();
    }
    return finish_pipeline(g, stats);
}

void require_records(const SequenceCollection& coll) {
    if (coll.empty()) throw Error(ErrorCode::EmptyInput, "collection has no records");
    for (const Record& r : coll.records) {
        if (r.data.empty()) throw Error(ErrorCode::EmptyRecord, "record '" + r.id + "' is empty");
    }
}

RleString per_record(const SequenceCollection& coll, RecordTransform transform, const DeriveOptions& opts,
                     DeriveStats* stats) {
    require_records(coll);
    const auto t0 = Clock::now();
    Dictionary dict;
    BuildStats bs;
    const auto per = build_collection_parallel(coll, dict, opts.build, opts.threads, CollectionJob{transform}, &bs);
    std::vector<SymbolId> roots;
    for (const auto& r : per) roots.insert(roots.end(), r.begin(), r.end());
    Grammar g = dict.extract(roots);
    if (stats != nullptr) {
        stats->build_seconds += seconds_since(t0);
        stats->build.add(bs);
        stats->input_len = coll.total_length();
    }
    return finish_pipeline(g, stats);
}

/// Parses the separator-joined rotation given as items listed left to right.
/// Each item is either a sentinel or the root list of one record.
RleString joined_rotation(const SequenceCollection& coll, const DeriveOptions& opts, DeriveStats* stats,
                          bool conc) {
    require_records(coll);
    const auto t0 = Clock::now();
    Dictionary dict;
    BuildStats bs;
    const auto per = build_collection_parallel(coll, dict, opts.build, opts.threads, CollectionJob{}, &bs);

    // Symbol-form items have no text positions, so the Lyndon array cannot
    // help here and comparisons go through the cache and the naive walk.
    BuildOptions rot = opts.build;
    rot.heavy_light = false;
    if (rot.strategy == ComparisonStrategy::LyndonArray) rot.strategy = ComparisonStrategy::Naive;
    Parser parser(dict, rot);
    auto push_roots = [&](const std::vector<SymbolId>& r) {
        for (auto it = r.rbegin(); it != r.rend(); ++it) parser.prepend(*it);
    };
    const std::size_t n = per.size();
    if (conc) {
        // # S_1 $ S_2 $ ... S_n $
        for (std::size_t i = n; i-- > 0;) {
            parser.prepend(ExtChar::sentinel(1));
            push_roots(per[i]);
        }
        parser.prepend(ExtChar::sentinel(0));
    } else {
        // $_1 S_2 $_2 ... S_n $_n S_1
        push_roots(per[0]);
        for (std::size_t i = n; i-- > 1;) {
            parser.prepend(ExtChar::sentinel(static_cast<std::uint32_t>(i)));
            push_roots(per[i]);
        }
        parser.prepend(ExtChar::sentinel(0));
    }
    const std::vector<SymbolId> roots = parser.finish();
    bs.add(parser.stats());
    Grammar g = dict.extract(roots);
    if (stats != nullptr) {
        stats->build_seconds += seconds_since(t0);
        stats->build.add(bs);
        stats->input_len = coll.total_length();
    }
    return finish_pipeline(g, stats);
}

std::string concatenate(const SequenceCollection& coll) {
    std::string s;
    s.reserve(coll.total_length());
    for (const Record& r : coll.records) s += r.data;
    return s;
}

}  // namespace

std::string_view to_string(BwtVariant v) {
    for (const auto& [variant, name] : kVariantNames) {
        if (variant == v) return name;
    }
    return "unknown";
}

std::optional<BwtVariant> parse_variant(std::string_view name) {
    for (const auto& [variant, n] : kVariantNames) {
        if (n == name) return variant;
    }
    return std::nullopt;
}

bool uses_sentinels(BwtVariant v) { return v != BwtVariant::Bbwt && v != BwtVariant::Ebwt; }

bool is_collection_variant(BwtVariant v) { return v != BwtVariant::Bbwt && v != BwtVariant::DollarBwt; }

RleString derive_bbwt(const Grammar& g, DeriveStats* stats) {
    check_sorted_shape(g);
    if (g.roots.empty()) throw Error(ErrorCode::EmptyInput, "grammar has no roots");
    const std::size_t n = g.size();
    SlotTable slots(2 * n);
    for (SymbolId r : g.roots) {
        if (r == kNullSymbol || r > n) throw Error(ErrorCode::MalformedGrammar, "root is not a grammar symbol");
        slots.append(2 * (r - 1) + 1, r, 1);
    }
    RleString out;
    std::uint64_t records = 0;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        SymbolId s;
        std::uint64_t count;
        while (slots.pop(i, s, count)) {
            ++records;
            out.append(g.last_char(s), count);
            while (!g.is_terminal(s)) {
                const SymbolId a = g.left(s);
                const SymbolId b = g.right(s);
                const std::size_t target = 2 * std::size_t{b - 1};
                if (target < i) throw Error(ErrorCode::UnsortedGrammar, "append would target a drained slot");
                slots.append(target, a, count);
                s = b;
            }
        }
    }
    if (stats != nullptr) stats->run_records = records;
    return out;
}

RleString derive_bbwt_text(std::string_view s, const DeriveOptions& opts, DeriveStats* stats) {
    return single_text(s, false, opts, stats);
}

RleString derive_dollar_bwt(std::string_view s, const DeriveOptions& opts, DeriveStats* stats) {
    return single_text(s, true, opts, stats);
}

RleString derive_ebwt(const SequenceCollection& coll, const DeriveOptions& opts, DeriveStats* stats) {
    return per_record(coll, RecordTransform::LeastRotation, opts, stats);
}

RleString derive_dol_ebwt(const SequenceCollection& coll, const DeriveOptions& opts, DeriveStats* stats) {
    return per_record(coll, RecordTransform::SentinelPrefix, opts, stats);
}

RleString derive_mdol_bwt(const SequenceCollection& coll, const DeriveOptions& opts, DeriveStats* stats) {
    return joined_rotation(coll, opts, stats, false);
}

RleString derive_conc_bwt(const SequenceCollection& coll, const DeriveOptions& opts, DeriveStats* stats) {
    return joined_rotation(coll, opts, stats, true);
}

RleString derive_variant(BwtVariant v, const SequenceCollection& coll, const DeriveOptions& opts, DeriveStats* stats) {
    switch (v) {
        case BwtVariant::Bbwt:
            return derive_bbwt_text(concatenate(coll), opts, stats);
        case BwtVariant::DollarBwt:
            return derive_dollar_bwt(concatenate(coll), opts, stats);
        case BwtVariant::Ebwt:
            return derive_ebwt(coll, opts, stats);
        case BwtVariant::DolEbwt:
            return derive_dol_ebwt(coll, opts, stats);
        case BwtVariant::MdolBwt:
            return derive_mdol_bwt(coll, opts, stats);
        case BwtVariant::ConcBwt:
            return derive_conc_bwt(coll, opts, stats);
    }
    throw std::invalid_argument("unknown variant");
}

RleString render(const RleString& bwt, BwtVariant v) {
    RleString out;
    for (const Run& r : bwt.runs()) {
        ExtChar c = r.c;
        if (c.is_sentinel()) {
            const bool terminator = v == BwtVariant::ConcBwt && c.value() == 0;
            c = ExtChar::byte(terminator ? '#' : '$');
        }
        out.append(c, r.count);
    }
    return out;
}

std::string to_bytes(const RleString& s) {
    std::string out;
    out.reserve(s.total_len());
    for (const Run& r : s.runs()) {
        if (!r.c.is_byte()) throw std::invalid_argument("to_bytes: unrendered sentinel");
        out.append(r.count, static_cast<char>(r.c.value()));
    }
    return out;
}

}  // namespace lgbwt
