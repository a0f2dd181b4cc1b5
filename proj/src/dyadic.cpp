#include "iga/dyadic.hpp"

#include <cstdlib>

namespace iga {

Dyadic Dyadic::parse(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        std::size_t used = 0;
        const long long n = std::stoll(s, &used);
        IGA_REQUIRE(used == s.size(), "dyadic: bad literal '" + s + "'");
        return Dyadic(n);
    }
    IGA_REQUIRE(s.compare(slash, 3, "/2^") == 0, "dyadic: bad literal '" + s + "'");
    std::size_t used = 0;
    const long long n = std::stoll(s.substr(0, slash), &used);
    IGA_REQUIRE(used == slash, "dyadic: bad literal '" + s + "'");
    const long long k = std::stoll(s.substr(slash + 3), &used);
    IGA_REQUIRE(used == s.size() - slash - 3 && k >= 0 && k < 62,
                "dyadic: bad literal '" + s + "'");
    return Dyadic::make(n, static_cast<int>(k));
}

}  // namespace iga
