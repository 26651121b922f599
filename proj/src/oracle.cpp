#include "lgbwt/oracle.hpp"

#include <algorithm>
#include <map>

#include "lgbwt/error.hpp"
#include "lgbwt/lyndon.hpp"

namespace lgbwt {

namespace {

void check_len(std::size_t n, const OracleLimits& lim) {
    if (n > lim.max_len) throw Error(ErrorCode::TooLarge, "input exceeds the oracle length limit");
}

void check_records(const SequenceCollection& coll, const OracleLimits& lim) {
    if (coll.size() > lim.max_records) throw Error(ErrorCode::TooLarge, "too many records for the oracle");
    check_len(coll.total_length(), lim);
}

std::string bytes_of(const ExtString& s) {
    std::string out;
    out.reserve(s.size());
    for (ExtChar c : s) out.push_back(static_cast<char>(c.value()));
    return out;
}

ExtString conjugate_sort(const std::vector<ExtString>& strings) {
    std::vector<ExtString> conj;
    for (const ExtString& s : strings) {
        for (std::size_t k = 0; k < s.size(); ++k) conj.push_back(rotate(s, k));
    }
    std::stable_sort(conj.begin(), conj.end(),
                     [](const ExtString& u, const ExtString& v) { return omega_compare(u, v) < 0; });
    ExtString out;
    out.reserve(conj.size());
    for (const ExtString& c : conj) out.push_back(c.back());
    return out;
}

std::vector<ExtString> with_separator(const SequenceCollection& coll, auto&& separator_after) {
    std::vector<ExtString> out;
    for (std::size_t i = 0; i < coll.size(); ++i) {
        ExtString s = to_ext(coll.records[i].data);
        s.push_back(separator_after(i));
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

ExtString oracle_bbwt(std::span<const ExtChar> s, const OracleLimits& lim) {
    check_len(s.size(), lim);
    std::vector<ExtString> factors;
    for (const Factor& f : duval_factorize(s)) factors.emplace_back(s.begin() + f.start, s.begin() + f.start + f.len);
    return conjugate_sort(factors);
}

std::string oracle_bbwt(std::string_view s, const OracleLimits& lim) {
    check_len(s.size(), lim);
    return bytes_of(oracle_bbwt(to_ext(s), lim));
}

ExtString oracle_ebwt(const std::vector<ExtString>& strings, const OracleLimits& lim) {
    if (strings.size() > lim.max_records) throw Error(ErrorCode::TooLarge, "too many records for the oracle");
    std::size_t total = 0;
    for (const auto& s : strings) total += s.size();
    check_len(total, lim);
    return conjugate_sort(strings);
}

std::string oracle_ebwt(const SequenceCollection& coll, const OracleLimits& lim) {
    std::vector<ExtString> strings;
    for (const Record& r : coll.records) strings.push_back(to_ext(r.data));
    return bytes_of(oracle_ebwt(strings, lim));
}

ExtString oracle_bwt_sa(std::span<const ExtChar> s, const OracleLimits& lim) {
    check_len(s.size(), lim);
    std::vector<std::size_t> sa(s.size());
    for (std::size_t i = 0; i < sa.size(); ++i) sa[i] = i;
    std::sort(sa.begin(), sa.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(s.begin() + a, s.end(), s.begin() + b, s.end());
    });
    ExtString out;
    out.reserve(s.size());
    for (std::size_t p : sa) out.push_back(s[(p + s.size() - 1) % s.size()]);
    return out;
}

ExtString oracle_dol_ebwt(const SequenceCollection& coll, const OracleLimits& lim) {
    check_records(coll, lim);
    return oracle_ebwt(with_separator(coll, [](std::size_t) { return ExtChar::sentinel(0); }), lim);
}

ExtString oracle_mdol_bwt(const SequenceCollection& coll, const OracleLimits& lim) {
    check_records(coll, lim);
    ExtString text;
    for (const ExtString& s : with_separator(coll, [](std::size_t i) { return ExtChar::sentinel(static_cast<std::uint32_t>(i)); })) {
        text.insert(text.end(), s.begin(), s.end());
    }
    return oracle_bwt_sa(text, lim);
}

ExtString oracle_conc_bwt(const SequenceCollection& coll, const OracleLimits& lim) {
    check_records(coll, lim);
    ExtString text;
    for (const ExtString& s : with_separator(coll, [](std::size_t) { return ExtChar::sentinel(1); })) {
        text.insert(text.end(), s.begin(), s.end());
    }
    text.push_back(ExtChar::sentinel(0));
    return oracle_bwt_sa(text, lim);
}

Grammar oracle_lyndon_slp(std::span<const ExtChar> s, const OracleLimits& lim) {
    check_len(s.size(), lim);
    Grammar g;
    std::map<ExtString, SymbolId> memo;
    auto name = [&](auto&& self, std::span<const ExtChar> w) -> SymbolId {
        ExtString key(w.begin(), w.end());
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        SymbolId id;
        if (w.size() == 1) {
            id = g.add_terminal(w[0]);
        } else {
            const std::size_t k = standard_factorization(w);
            const SymbolId a = self(self, w.first(k));
            const SymbolId b = self(self, w.subspan(k));
            id = g.add_pair(a, b);
        }
        memo.emplace(std::move(key), id);
        return id;
    };
    for (const Factor& f : duval_factorize(s)) g.roots.push_back(name(name, s.subspan(f.start, f.len)));
    return g;
}

Grammar oracle_lyndon_slp(std::string_view s, const OracleLimits& lim) {
    check_len(s.size(), lim);
    return oracle_lyndon_slp(to_ext(s), lim);
}

}  // namespace lgbwt
