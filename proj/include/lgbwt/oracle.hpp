#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lgbwt/ext_char.hpp"
#include "lgbwt/grammar.hpp"
#include "lgbwt/sequence_collection.hpp"

namespace lgbwt {

/// Brute-force references. Quadratic or worse; inputs beyond the limits are
/// rejected with Error(TooLarge).
struct OracleLimits {
    std::size_t max_len = 4096;
    std::size_t max_records = 64;
};

/// Last characters of the conjugates of the Lyndon factors, omega-sorted.
ExtString oracle_bbwt(std::span<const ExtChar> s, const OracleLimits& lim = {});
std::string oracle_bbwt(std::string_view s, const OracleLimits& lim = {});

/// Last characters of all conjugates of all strings, omega-sorted.
ExtString oracle_ebwt(const std::vector<ExtString>& strings, const OracleLimits& lim = {});
std::string oracle_ebwt(const SequenceCollection& coll, const OracleLimits& lim = {});

/// BWT by sorting all suffixes: out[i] = s[(SA[i] - 1) mod |s|].
ExtString oracle_bwt_sa(std::span<const ExtChar> s, const OracleLimits& lim = {});

/// eBWT of { S $ }, with $ = Sentinel(0).
ExtString oracle_dol_ebwt(const SequenceCollection& coll, const OracleLimits& lim = {});
/// BWT of S_1 $_1 ... S_n $_n, with $_i = Sentinel(i - 1).
ExtString oracle_mdol_bwt(const SequenceCollection& coll, const OracleLimits& lim = {});
/// BWT of S_1 $ ... S_n $ #, with # = Sentinel(0) and $ = Sentinel(1).
ExtString oracle_conc_bwt(const SequenceCollection& coll, const OracleLimits& lim = {});

/// Lyndon SLP from recursive standard factorizations of the Duval factors;
/// equal substrings share one symbol and children precede parents.
Grammar oracle_lyndon_slp(std::string_view s, const OracleLimits& lim = {});
Grammar oracle_lyndon_slp(std::span<const ExtChar> s, const OracleLimits& lim = {});

}  // namespace lgbwt
