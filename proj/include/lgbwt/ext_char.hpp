#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace lgbwt {

/// Extended character: either a separator (sentinel) or a byte.
///
/// Every sentinel sorts below every byte. Sentinels are ordered by index,
/// bytes by value. The class and value are packed into one 64-bit code so
/// that the total order is plain integer order on the code.
class ExtChar {
public:
    enum class Kind : std::uint8_t { Sentinel = 0, Byte = 1 };

    constexpr ExtChar() = default;

    static constexpr ExtChar byte(std::uint8_t b) { return ExtChar(kByteBit | b); }
    static constexpr ExtChar sentinel(std::uint32_t index) { return ExtChar(index); }
    static constexpr ExtChar from_code(std::uint64_t code) { return ExtChar(code); }

    constexpr Kind kind() const { return (code_ & kByteBit) ? Kind::Byte : Kind::Sentinel; }
    constexpr bool is_sentinel() const { return kind() == Kind::Sentinel; }
    constexpr bool is_byte() const { return kind() == Kind::Byte; }
    constexpr std::uint32_t value() const { return static_cast<std::uint32_t>(code_); }
    constexpr std::uint64_t code() const { return code_; }

    constexpr auto operator<=>(const ExtChar&) const = default;

private:
    static constexpr std::uint64_t kByteBit = std::uint64_t{1} << 32;
    constexpr explicit ExtChar(std::uint64_t code) : code_(code) {}

    std::uint64_t code_ = 0;
};

using ExtString = std::vector<ExtChar>;

inline ExtString to_ext(std::string_view bytes) {
    ExtString out;
    out.reserve(bytes.size());
    for (unsigned char b : bytes) out.push_back(ExtChar::byte(b));
    return out;
}

/// Human-readable rendering for tests and diagnostics: sentinels print as '$'.
inline std::string to_display(const ExtString& s) {
    std::string out;
    out.reserve(s.size());
    for (ExtChar c : s) out.push_back(c.is_byte() ? static_cast<char>(c.value()) : '$');
    return out;
}

inline std::ostream& operator<<(std::ostream& os, ExtChar c) {
    if (c.is_byte()) return os << static_cast<char>(c.value());
    return os << '$' << c.value();
}

}  // namespace lgbwt

template <>
struct std::hash<lgbwt::ExtChar> {
    std::size_t operator()(lgbwt::ExtChar c) const noexcept { return std::hash<std::uint64_t>{}(c.code()); }
};
