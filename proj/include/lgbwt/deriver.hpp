#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lgbwt/builder.hpp"
#include "lgbwt/rle_string.hpp"
#include "lgbwt/sequence_collection.hpp"
#include "lgbwt/sorter.hpp"

namespace lgbwt {

enum class BwtVariant { Bbwt, DollarBwt, Ebwt, DolEbwt, MdolBwt, ConcBwt };

std::string_view to_string(BwtVariant v);
std::optional<BwtVariant> parse_variant(std::string_view name);

/// True for variants whose output contains sentinels.
bool uses_sentinels(BwtVariant v);
/// True for variants defined on a collection rather than a single text.
bool is_collection_variant(BwtVariant v);

struct DeriveOptions {
    BuildOptions build;
    unsigned threads = 1;
};

struct DeriveStats {
    std::uint64_t input_len = 0;     // N
    std::uint64_t rules = 0;
    std::uint64_t roots = 0;
    std::uint64_t grammar_size = 0;  // rules + roots
    std::uint64_t runs = 0;          // r
    std::uint64_t run_records = 0;   // (symbol, count) records drained
    std::uint64_t sort_iterations = 0;
    double build_seconds = 0;
    double sort_seconds = 0;
    double derive_seconds = 0;
    BuildStats build;
};

/// Run-length BBWT of the text generated by the roots of a sorted grammar.
/// Throws Error(UnsortedGrammar) if some rule X_i -> X_a X_b violates a < i < b.
RleString derive_bbwt(const Grammar& sorted, DeriveStats* stats = nullptr);
inline RleString derive_bbwt(const SortedGrammar& sg, DeriveStats* stats = nullptr) {
    return derive_bbwt(sg.grammar, stats);
}

/// The outputs below use the extended alphabet; see render().
RleString derive_bbwt_text(std::string_view s, const DeriveOptions& opts, DeriveStats* stats = nullptr);
RleString derive_dollar_bwt(std::string_view s, const DeriveOptions& opts, DeriveStats* stats = nullptr);
RleString derive_ebwt(const SequenceCollection& coll, const DeriveOptions& opts, DeriveStats* stats = nullptr);
RleString derive_dol_ebwt(const SequenceCollection& coll, const DeriveOptions& opts, DeriveStats* stats = nullptr);
/// S_1 $_1 ... S_n $_n with $_i = Sentinel(i - 1).
RleString derive_mdol_bwt(const SequenceCollection& coll, const DeriveOptions& opts, DeriveStats* stats = nullptr);
/// S_1 $ ... S_n $ # with # = Sentinel(0) and $ = Sentinel(1).
RleString derive_conc_bwt(const SequenceCollection& coll, const DeriveOptions& opts, DeriveStats* stats = nullptr);

/// Dispatches on the variant. Single-text variants read the concatenation
/// of all records.
RleString derive_variant(BwtVariant v, const SequenceCollection& coll, const DeriveOptions& opts,
                         DeriveStats* stats = nullptr);

/// Maps sentinels to printable bytes: '#' for the concBWT terminator and
/// '$' otherwise. Runs are re-merged.
RleString render(const RleString& bwt, BwtVariant v);

/// Bytes of an RleString that holds only byte characters.
std::string to_bytes(const RleString& s);

}  // namespace lgbwt
