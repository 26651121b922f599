#pragma once

#include <string>
#include <vector>

namespace lgbwt {

struct Record {
    std::string id;
    std::string data;
};

/// Ordered multiset of byte strings. Every record must be non-empty.
struct SequenceCollection {
    std::vector<Record> records;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }

    void add(std::string id, std::string data) { records.push_back(Record{std::move(id), std::move(data)}); }

    static SequenceCollection from_strings(const std::vector<std::string>& strings) {
        SequenceCollection c;
        for (std::size_t i = 0; i < strings.size(); ++i) c.add(std::to_string(i), strings[i]);
        return c;
    }

    std::size_t total_length() const {
        std::size_t n = 0;
        for (const auto& r : records) n += r.data.size();
        return n;
    }
};

}  // namespace lgbwt
