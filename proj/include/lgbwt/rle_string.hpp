#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lgbwt/ext_char.hpp"

namespace lgbwt {

struct Run {
    ExtChar c;
    std::uint64_t count = 0;

    bool operator==(const Run&) const = default;
};

/// Run-length encoded string with maximal runs.
class RleString {
public:
    /// Appends `count` copies of `c`, merging into the last run when equal.
    void append(ExtChar c, std::uint64_t count = 1) {
        if (count == 0) return;
        if (!runs_.empty() && runs_.back().c == c) {
            runs_.back().count += count;
        } else {
            runs_.push_back(Run{c, count});
        }
        total_ += count;
    }

    const std::vector<Run>& runs() const { return runs_; }
    std::size_t run_count() const { return runs_.size(); }
    std::uint64_t total_len() const { return total_; }

    ExtString decode() const {
        ExtString out;
        out.reserve(total_);
        for (const Run& r : runs_) out.insert(out.end(), r.count, r.c);
        return out;
    }

    static RleString encode(const ExtString& s) {
        RleString out;
        for (ExtChar c : s) out.append(c);
        return out;
    }

    bool operator==(const RleString&) const = default;

private:
    std::vector<Run> runs_;
    std::uint64_t total_ = 0;
};

}  // namespace lgbwt
