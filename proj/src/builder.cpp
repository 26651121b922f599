#include "lgbwt/builder.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>

#include "lgbwt/error.hpp"
#include "lgbwt/lyndon.hpp"
#include "lgbwt/symbol_compare.hpp"

namespace lgbwt {

void BuildStats::add(const BuildStats& o) {
    items += o.items;
    merges += o.merges;
    cache_verdicts += o.cache_verdicts;
    cache_fallbacks += o.cache_fallbacks;
    cache_mismatches += o.cache_mismatches;
    lambda_verdicts += o.lambda_verdicts;
    heavy_nodes += o.heavy_nodes;
    heavy_hits += o.heavy_hits;
    heavy_misses += o.heavy_misses;
    max_heavy_descendants = std::max(max_heavy_descendants, o.max_heavy_descendants);
    lazy_namings += o.lazy_namings;
}

void validate(const BuildOptions& opts) {
    if (opts.heavy_light && opts.n_thres <= 1) {
        throw Error(ErrorCode::InvalidThreshold, "n_thres must be greater than 1");
    }
}

Parser::Parser(Dictionary& dict, const BuildOptions& opts, HeavyTable* heavy, OrderedMarkerIndex* index)
    : dict_(dict),
      opts_(opts),
      heavy_(heavy),
      index_(index),
      use_lambda_(opts.strategy == ComparisonStrategy::LyndonArray) {
    validate(opts_);
    if (opts_.heavy_light && heavy_ == nullptr) {
        own_heavy_ = std::make_unique<HeavyTable>();
        heavy_ = own_heavy_.get();
    }
    if (opts_.strategy == ComparisonStrategy::OrderedMarkers && index_ == nullptr) {
        own_index_ = std::make_unique<OrderedMarkerIndex>();
        index_ = own_index_.get();
    }
}

SymbolId Parser::name_terminal(ExtChar c) {
    const SymbolId s = dict_.terminal(c);
    if (index_ != nullptr && opts_.strategy == ComparisonStrategy::OrderedMarkers) index_->ensure_indexed(dict_, s);
    return s;
}

SymbolId Parser::name_pair(SymbolId a, SymbolId b) {
    const SymbolId s = dict_.pair(a, b);
    if (index_ != nullptr && opts_.strategy == ComparisonStrategy::OrderedMarkers) index_->ensure_indexed(dict_, s);
    return s;
}

Parser::Prefix Parser::prefix_of(SymbolId s) const {
    Prefix p;
    std::vector<SymbolId> stack{s};
    while (!stack.empty() && p.n < kPrefixCacheLen) {
        const SymbolId x = stack.back();
        stack.pop_back();
        if (dict_.is_terminal(x)) {
            p.ch[p.n++] = dict_.terminal_char(x);
        } else {
            stack.push_back(dict_.right(x));
            stack.push_back(dict_.left(x));
        }
    }
    return p;
}

void Parser::prepend(ExtChar c, std::uint64_t pos) {
    ++stats_.items;
    Entry e;
    e.sym = name_terminal(c);
    e.len = 1;
    e.pos = pos;
    e.prefix.ch[0] = c;
    e.prefix.n = 1;
    if (opts_.heavy_light) {
        e.seg_begin = static_cast<std::uint32_t>(frontier_.size());
        frontier_.push_back(e.sym);
        e.seg_end = e.seg_begin + 1;
    }
    if (observer_ && pos != kNoPosition) observer_(NodeEvent{pos, 1, true});
    push_item(std::move(e));
}

void Parser::prepend(SymbolId s) {
    ++stats_.items;
    if (index_ != nullptr && opts_.strategy == ComparisonStrategy::OrderedMarkers) index_->ensure_indexed(dict_, s);
    Entry e;
    e.sym = s;
    e.len = dict_.len(s);
    e.prefix = prefix_of(s);
    if (opts_.heavy_light) {
        e.seg_begin = static_cast<std::uint32_t>(frontier_.size());
        frontier_.push_back(s);
        e.seg_end = e.seg_begin + 1;
    }
    push_item(std::move(e));
}

void Parser::push_item(Entry c) {
    while (!stack_.empty()) {
        if (!should_merge(stack_.back(), c)) break;
        Entry t = std::move(stack_.back());
        stack_.pop_back();
        c = combine(c, t);
    }
    stack_.push_back(std::move(c));
}

bool Parser::should_merge(Entry& t, Entry& c) {
    if (lambda_applies(c.pos)) {
        ++stats_.lambda_verdicts;
        const bool verdict = lambda_[c.pos] > c.len;
        if (opts_.audit_prefix_cache && verdict != (full_compare(t, c) > 0)) ++stats_.cache_mismatches;
        return verdict;
    }

    const std::size_t k = std::min(t.prefix.n, c.prefix.n);
    int decided = -1;
    for (std::size_t i = 0; i < k; ++i) {
        if (t.prefix.ch[i] != c.prefix.ch[i]) {
            decided = t.prefix.ch[i] > c.prefix.ch[i] ? 1 : 0;
            break;
        }
    }
    if (decided < 0) {
        const bool t_complete = t.len <= kPrefixCacheLen;
        const bool c_complete = c.len <= kPrefixCacheLen;
        if (t_complete && t.len <= c.prefix.n) {
            decided = 0;  // val(t) is a prefix of val(c): t <= c
        } else if (c_complete && c.len <= t.prefix.n) {
            decided = c.len < t.len ? 1 : 0;
        }
    }
    if (decided >= 0) {
        ++stats_.cache_verdicts;
        if (opts_.audit_prefix_cache && (decided == 1) != (full_compare(t, c) > 0)) ++stats_.cache_mismatches;
        return decided == 1;
    }
    ++stats_.cache_fallbacks;
    return full_compare(t, c) > 0;
}

std::strong_ordering Parser::full_compare(Entry& t, Entry& c) {
    ensure_named(t);
    ensure_named(c);
    return compare_named(t.sym, c.sym);
}

std::strong_ordering Parser::compare_named(SymbolId t, SymbolId c) {
    if (opts_.strategy == ComparisonStrategy::OrderedMarkers) {
        index_->ensure_indexed(dict_, t);
        index_->ensure_indexed(dict_, c);
        return index_->compare(t, c);
    }
    return compare_symbols_naive(dict_, t, c);
}

Parser::Entry Parser::combine(Entry& c, Entry& t) {
    ++stats_.merges;
    Entry n;
    n.len = c.len + t.len;
    n.pos = c.pos;
    n.prefix = c.prefix;
    for (std::size_t i = 0; n.prefix.n < kPrefixCacheLen && i < t.prefix.n; ++i) n.prefix.ch[n.prefix.n++] = t.prefix.ch[i];

    if (!opts_.heavy_light) {
        n.sym = name_pair(c.sym, t.sym);
    } else {
        // c sits above t in frontier_, so their descendants form one contiguous run
        const std::uint32_t begin = t.seg_begin;
        const std::uint32_t count = c.seg_end - begin;
        if (count > opts_.n_thres) {
            const std::span<const SymbolId> key(frontier_.data() + begin, count);
            if (auto hit = heavy_->find(key)) {
                n.sym = *hit;
                ++stats_.heavy_hits;
                if (opts_.strategy == ComparisonStrategy::OrderedMarkers) index_->ensure_indexed(dict_, n.sym);
            } else {
                ensure_named(c);
                ensure_named(t);
                n.sym = name_pair(c.sym, t.sym);
                heavy_->insert(key, n.sym);
                ++stats_.heavy_misses;
            }
            ++stats_.heavy_nodes;
            stats_.max_heavy_descendants = std::max<std::uint64_t>(stats_.max_heavy_descendants, count);
            frontier_.resize(begin);
            frontier_.push_back(n.sym);
            n.seg_begin = begin;
            n.seg_end = begin + 1;
        } else {
            n.heavy = false;
            n.seg_begin = begin;
            n.seg_end = c.seg_end;
        }
    }
    if (observer_ && n.pos != kNoPosition) observer_(NodeEvent{n.pos, n.len, n.heavy});
    return n;
}

void Parser::ensure_named(Entry& e) {
    if (e.sym != kNullSymbol) return;
    ++stats_.lazy_namings;
    // Re-parse the immediate heavy descendants; they are stored rightmost first,
    // which is exactly the prepend order.
    struct Item {
        SymbolId sym;
        std::uint64_t len;
        std::uint64_t pos;
    };
    std::vector<Item> mini;
    std::uint64_t cursor = e.pos == kNoPosition ? kNoPosition : e.pos + e.len;
    for (std::uint32_t idx = e.seg_begin; idx < e.seg_end; ++idx) {
        Item c{frontier_[idx], 0, kNoPosition};
        c.len = dict_.len(c.sym);
        if (cursor != kNoPosition) {
            cursor -= c.len;
            c.pos = cursor;
        }
        while (!mini.empty()) {
            const Item& top = mini.back();
            const bool merge = lambda_applies(c.pos) ? lambda_[c.pos] > c.len : compare_named(top.sym, c.sym) > 0;
            if (!merge) break;
            c.sym = name_pair(c.sym, top.sym);
            c.len += top.len;
            mini.pop_back();
        }
        mini.push_back(c);
    }
    if (mini.size() != 1) throw std::logic_error("light node did not re-parse into a single Lyndon word");
    e.sym = mini.front().sym;
}

std::vector<SymbolId> Parser::finish() {
    std::vector<SymbolId> roots;
    roots.reserve(stack_.size());
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
        ensure_named(*it);
        roots.push_back(it->sym);
    }
    stack_.clear();
    frontier_.clear();
    return roots;
}

namespace {

void check_lambda_budget(std::size_t n, const BuildOptions& opts) {
    // text copy, suffix array, ranks, scratch and the Lyndon array itself
    constexpr std::uint64_t kBytesPerChar = 28;
    if (static_cast<std::uint64_t>(n) * kBytesPerChar > opts.lyndon_array_budget) {
        throw Error(ErrorCode::LyndonArrayBudget,
                    "record of length " + std::to_string(n) + " exceeds the Lyndon-array memory budget");
    }
}

template <class CharAt>
std::vector<SymbolId> parse_text(std::size_t n, CharAt char_at, Parser& parser) {
    for (std::size_t i = n; i-- > 0;) parser.prepend(char_at(i), i);
    return parser.finish();
}

std::vector<SymbolId> parse_bytes(std::string_view s, Parser& parser, const BuildOptions& opts,
                                  std::vector<std::uint32_t>& lambda) {
    if (opts.strategy == ComparisonStrategy::LyndonArray) {
        check_lambda_budget(s.size(), opts);
        lambda = lyndon_array(to_ext(s));
        parser.set_lyndon_array(lambda);
    }
    return parse_text(s.size(), [&](std::size_t i) { return ExtChar::byte(static_cast<unsigned char>(s[i])); }, parser);
}

std::vector<SymbolId> parse_ext(std::span<const ExtChar> s, Parser& parser, const BuildOptions& opts,
                                std::vector<std::uint32_t>& lambda) {
    if (opts.strategy == ComparisonStrategy::LyndonArray) {
        check_lambda_budget(s.size(), opts);
        lambda = lyndon_array(s);
        parser.set_lyndon_array(lambda);
    }
    return parse_text(s.size(), [&](std::size_t i) { return s[i]; }, parser);
}

}  // namespace

std::vector<SymbolId> build_sequence(std::span<const ExtChar> s, Dictionary& dict, const BuildOptions& opts,
                                     BuildStats* stats, HeavyTable* heavy) {
    validate(opts);
    if (s.empty()) throw Error(ErrorCode::EmptyInput, "cannot build the grammar of an empty string");
    Parser parser(dict, opts, heavy);
    std::vector<std::uint32_t> lambda;
    auto roots = parse_ext(s, parser, opts, lambda);
    if (stats != nullptr) stats->add(parser.stats());
    return roots;
}

std::vector<SymbolId> build_bytes(std::string_view s, Dictionary& dict, const BuildOptions& opts, BuildStats* stats,
                                  HeavyTable* heavy) {
    validate(opts);
    if (s.empty()) throw Error(ErrorCode::EmptyInput, "cannot build the grammar of an empty string");
    Parser parser(dict, opts, heavy);
    std::vector<std::uint32_t> lambda;
    auto roots = parse_bytes(s, parser, opts, lambda);
    if (stats != nullptr) stats->add(parser.stats());
    return roots;
}

std::vector<SymbolId> build_with_heavy_light(std::span<const ExtChar> s, Dictionary& dict, BuildOptions opts,
                                             std::uint32_t n_thres, BuildStats* stats) {
    opts.heavy_light = true;
    opts.n_thres = n_thres;
    return build_sequence(s, dict, opts, stats);
}

std::vector<std::vector<SymbolId>> build_collection_parallel(const SequenceCollection& coll, Dictionary& dict,
                                                             const BuildOptions& opts, unsigned threads,
                                                             const CollectionJob& job, BuildStats* stats) {
    validate(opts);
    for (const Record& r : coll.records) {
        if (r.data.empty()) throw Error(ErrorCode::EmptyRecord, "record '" + r.id + "' is empty");
    }
    std::vector<std::vector<SymbolId>> roots(coll.size());
    HeavyTable heavy;
    std::atomic<std::size_t> next{0};
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, coll.size()))));
    std::vector<BuildStats> worker_stats(workers);
    std::vector<std::exception_ptr> errors(workers);

    auto work = [&](unsigned w) {
        try {
            std::unique_ptr<OrderedMarkerIndex> index;
            if (opts.strategy == ComparisonStrategy::OrderedMarkers) index = std::make_unique<OrderedMarkerIndex>();
            std::vector<std::uint32_t> lambda;
            for (std::size_t i = next.fetch_add(1); i < coll.size(); i = next.fetch_add(1)) {
                const std::string& data = coll.records[i].data;
                Parser parser(dict, opts, &heavy, index.get());
                switch (job.transform) {
                    case RecordTransform::None:
                        roots[i] = parse_bytes(data, parser, opts, lambda);
                        break;
                    case RecordTransform::LeastRotation: {
                        const ExtString ext = to_ext(data);
                        const ExtString canon = rotate(ext, least_rotation(ext));
                        roots[i] = parse_ext(canon, parser, opts, lambda);
                        break;
                    }
                    case RecordTransform::SentinelPrefix: {
                        if (opts.strategy == ComparisonStrategy::LyndonArray) {
                            check_lambda_budget(data.size(), opts);
                            lambda = lyndon_array(to_ext(data));
                            parser.set_lyndon_array(lambda);
                        }
                        for (std::size_t p = data.size(); p-- > 0;) {
                            parser.prepend(ExtChar::byte(static_cast<unsigned char>(data[p])), p);
                        }
                        parser.prepend(job.sentinel);
                        roots[i] = parser.finish();
                        break;
                    }
                }
                worker_stats[w].add(parser.stats());
            }
        } catch (...) {
            errors[w] = std::current_exception();
            next.store(coll.size());
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    if (stats != nullptr) {
        for (const auto& s : worker_stats) stats->add(s);
    }
    return roots;
}

}  // namespace lgbwt
