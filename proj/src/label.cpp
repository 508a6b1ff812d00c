#include "bpdep/label.hpp"

#include <cmath>
#include <cstdlib>

namespace bpdep {

std::optional<double> Label::numeric() const {
    if (is_integer()) return static_cast<double>(as_integer());
    const std::string& s = as_string();
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string Label::to_string() const {
    if (is_integer()) return std::to_string(as_integer());
    return as_string();
}

std::strong_ordering operator<=>(const Label& a, const Label& b) {
    if (a.token_.index() != b.token_.index()) return a.token_.index() <=> b.token_.index();
    if (a.is_integer()) return a.as_integer() <=> b.as_integer();
    const int c = a.as_string().compare(b.as_string());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::size_t Label::hash() const {
    const std::size_t h = is_integer() ? std::hash<std::int64_t>{}(as_integer())
                                       : std::hash<std::string>{}(as_string());
    return h ^ (token_.index() * 0x9E3779B97F4A7C15ULL);
}

}  // namespace bpdep
