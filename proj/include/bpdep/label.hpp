#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

namespace bpdep {

/// Categorical value carried by a discrete variable. Either an integer token
/// or a string token; integer 1 and string "1" are different labels.
///
/// The total order (integers before strings, then by value) exists only so
/// that containers iterate deterministically. It carries no meaning.
class Label {
public:
    Label() : token_(std::int64_t{0}) {}
    Label(std::int64_t v) : token_(v) {}  // NOLINT(google-explicit-constructor)
    Label(int v) : token_(std::int64_t{v}) {}  // NOLINT(google-explicit-constructor)
    Label(std::string v) : token_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
    Label(const char* v) : token_(std::string(v)) {}  // NOLINT(google-explicit-constructor)

    bool is_integer() const { return std::holds_alternative<std::int64_t>(token_); }
    std::int64_t as_integer() const { return std::get<std::int64_t>(token_); }
    const std::string& as_string() const { return std::get<std::string>(token_); }

    /// Numeric reading of the token: integers directly, strings when they
    /// parse completely as a finite decimal number.
    std::optional<double> numeric() const;

    std::string to_string() const;

    friend bool operator==(const Label&, const Label&) = default;
    friend std::strong_ordering operator<=>(const Label& a, const Label& b);

    std::size_t hash() const;

private:
    std::variant<std::int64_t, std::string> token_;
};

}  // namespace bpdep

template <>
struct std::hash<bpdep::Label> {
    std::size_t operator()(const bpdep::Label& l) const noexcept { return l.hash(); }
};
