#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "lgbwt/dictionary.hpp"
#include "lgbwt/ext_char.hpp"
#include "lgbwt/grammar.hpp"
#include "lgbwt/ordered_markers.hpp"
#include "lgbwt/sequence_collection.hpp"

namespace lgbwt {

enum class ComparisonStrategy { Naive, LyndonArray, OrderedMarkers };

inline constexpr std::size_t kPrefixCacheLen = 16;
inline constexpr std::uint32_t kDefaultHeavyThreshold = 31;

struct BuildOptions {
    ComparisonStrategy strategy = ComparisonStrategy::Naive;
    bool heavy_light = false;
    std::uint32_t n_thres = kDefaultHeavyThreshold;
    /// Upper bound on the working memory of the Lyndon-array strategy for a
    /// single record; longer records are rejected with LyndonArrayBudget.
    std::uint64_t lyndon_array_budget = std::uint64_t{1} << 31;
    /// Re-check every prefix-cache verdict with a full comparison.
    bool audit_prefix_cache = false;
};

struct BuildStats {
    std::uint64_t items = 0;
    std::uint64_t merges = 0;
    std::uint64_t cache_verdicts = 0;
    std::uint64_t cache_fallbacks = 0;
    std::uint64_t cache_mismatches = 0;
    std::uint64_t lambda_verdicts = 0;
    std::uint64_t heavy_nodes = 0;
    std::uint64_t heavy_hits = 0;
    std::uint64_t heavy_misses = 0;
    std::uint64_t max_heavy_descendants = 0;
    std::uint64_t lazy_namings = 0;

    void add(const BuildStats& o);
};

/// One Lyndon-forest node as it is completed by the parser; only reported
/// for nodes built from text positions.
struct NodeEvent {
    std::uint64_t start = 0;
    std::uint64_t len = 0;
    bool heavy = true;
};

/// Online right-to-left Lyndon SLP parser over a shared Dictionary.
///
/// Each prepend of an item (a character or an existing symbol whose string
/// is a node of the final Lyndon forest) pops every stack entry that is
/// lexicographically larger than the item being built and names the
/// combination. The stack then holds the Lyndon factorization of the
/// parsed suffix, leftmost factor on top.
///
/// Comparisons first consult a fixed-length prefix cache per stack entry
/// and fall back to the configured strategy on a tie. In heavy/light mode
/// light nodes are left unnamed and represented by their immediate heavy
/// descendants; a heavy node is resolved through the HeavyTable.
class Parser {
public:
    static constexpr std::uint64_t kNoPosition = std::numeric_limits<std::uint64_t>::max();

    Parser(Dictionary& dict, const BuildOptions& opts, HeavyTable* heavy = nullptr, OrderedMarkerIndex* index = nullptr);

    /// Supplies the Lyndon array of the text whose positions are passed to
    /// prepend(ExtChar, pos). Required by the LyndonArray strategy.
    void set_lyndon_array(std::span<const std::uint32_t> lambda) { lambda_ = lambda; }
    void set_observer(std::function<void(const NodeEvent&)> obs) { observer_ = std::move(obs); }

    void prepend(ExtChar c, std::uint64_t pos = kNoPosition);
    void prepend(SymbolId s);

    /// Names any pending light entries and returns the roots left to right.
    /// The parser is empty afterwards.
    std::vector<SymbolId> finish();

    std::size_t depth() const { return stack_.size(); }
    const BuildStats& stats() const { return stats_; }

private:
    struct Prefix {
        std::array<ExtChar, kPrefixCacheLen> ch{};
        std::uint8_t n = 0;
    };
    struct Entry {
        SymbolId sym = kNullSymbol;  // null while an unnamed light node
        bool heavy = true;
        std::uint64_t len = 0;
        std::uint64_t pos = kNoPosition;
        std::uint32_t seg_begin = 0;  // immediate heavy descendants in frontier_
        std::uint32_t seg_end = 0;
        Prefix prefix;
    };

    void push_item(Entry c);
    bool should_merge(Entry& top, Entry& c);
    std::strong_ordering full_compare(Entry& t, Entry& c);
    std::strong_ordering compare_named(SymbolId t, SymbolId c);
    Entry combine(Entry& c, Entry& t);
    SymbolId name_pair(SymbolId a, SymbolId b);
    SymbolId name_terminal(ExtChar c);
    void ensure_named(Entry& e);
    Prefix prefix_of(SymbolId s) const;
    bool lambda_applies(std::uint64_t pos) const { return use_lambda_ && pos < lambda_.size(); }

    Dictionary& dict_;
    BuildOptions opts_;
    HeavyTable* heavy_;
    OrderedMarkerIndex* index_;
    bool use_lambda_;
    std::span<const std::uint32_t> lambda_;
    std::vector<Entry> stack_;
    std::vector<SymbolId> frontier_;
    BuildStats stats_;
    std::function<void(const NodeEvent&)> observer_;
    std::unique_ptr<HeavyTable> own_heavy_;
    std::unique_ptr<OrderedMarkerIndex> own_index_;
};

/// Per-record preprocessing applied before parsing a collection record.
enum class RecordTransform {
    None,
    LeastRotation,   // parse the canonical (least) conjugate
    SentinelPrefix,  // parse sentinel . record
};

struct CollectionJob {
    RecordTransform transform = RecordTransform::None;
    ExtChar sentinel = ExtChar::sentinel(0);
};

/// Roots (left to right) of the Lyndon SLP of `s`, grown in `dict`.
std::vector<SymbolId> build_sequence(std::span<const ExtChar> s, Dictionary& dict, const BuildOptions& opts,
                                     BuildStats* stats = nullptr, HeavyTable* heavy = nullptr);
std::vector<SymbolId> build_bytes(std::string_view s, Dictionary& dict, const BuildOptions& opts,
                                  BuildStats* stats = nullptr, HeavyTable* heavy = nullptr);

/// build_sequence with heavy/light batching; throws InvalidThreshold if n_thres <= 1.
std::vector<SymbolId> build_with_heavy_light(std::span<const ExtChar> s, Dictionary& dict, BuildOptions opts,
                                             std::uint32_t n_thres, BuildStats* stats = nullptr);

/// Parses every record against one shared dictionary on `threads` workers.
/// Root lists are returned in record order.
std::vector<std::vector<SymbolId>> build_collection_parallel(const SequenceCollection& coll, Dictionary& dict,
                                                             const BuildOptions& opts, unsigned threads,
                                                             const CollectionJob& job = {}, BuildStats* stats = nullptr);

void validate(const BuildOptions& opts);

}  // namespace lgbwt
