#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace iga {

/// Error type for precondition and consistency failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define IGA_REQUIRE(cond, msg)                                                 \
    do {                                                                       \
        if (!(cond)) throw ::iga::Error(msg);                                  \
    } while (0)

/// Exact rational number of the form num / 2^log2_den.
///
/// Knot values, parameter boxes and interface intervals are kept in this
/// form so that refinement, 4-way splitting and nestedness checks are exact
/// integer arithmetic. Conversion to double happens only at evaluation.
/// Canonical form: num is odd or zero whenever log2_den > 0.
class Dyadic {
public:
    constexpr Dyadic() : num_(0), log2_den_(0) {}
    constexpr Dyadic(std::int64_t n) : num_(n), log2_den_(0) {}

    static Dyadic make(std::int64_t num, int log2_den) {
        IGA_REQUIRE(log2_den >= 0 && log2_den < 62, "dyadic: exponent out of range");
        Dyadic d;
        d.num_ = num;
        d.log2_den_ = log2_den;
        d.canonicalize();
        return d;
    }

    std::int64_t numerator() const { return num_; }
    int log2_denominator() const { return log2_den_; }

    double to_double() const { return std::ldexp(static_cast<double>(num_), -log2_den_); }

    friend Dyadic operator+(Dyadic a, Dyadic b) {
        const int d = std::max(a.log2_den_, b.log2_den_);
        return make(shifted(a, d) + shifted(b, d), d);
    }
    friend Dyadic operator-(Dyadic a, Dyadic b) {
        const int d = std::max(a.log2_den_, b.log2_den_);
        return make(shifted(a, d) - shifted(b, d), d);
    }
    friend Dyadic operator*(Dyadic a, Dyadic b) {
        const __int128 p = static_cast<__int128>(a.num_) * b.num_;
        IGA_REQUIRE(p >= INT64_MIN && p <= INT64_MAX, "dyadic: multiply overflow");
        return make(static_cast<std::int64_t>(p), a.log2_den_ + b.log2_den_);
    }
    Dyadic operator-() const { return make(-num_, log2_den_); }

    /// Exact midpoint; always representable.
    static Dyadic midpoint(Dyadic a, Dyadic b) {
        const int d = std::max(a.log2_den_, b.log2_den_);
        return make(shifted(a, d) + shifted(b, d), d + 1);
    }

    /// a / b when the quotient is again dyadic, std::nullopt otherwise.
    static std::optional<Dyadic> try_divide(Dyadic a, Dyadic b) {
        IGA_REQUIRE(b.num_ != 0, "dyadic: division by zero");
        if (a.num_ == 0) return Dyadic(0);
        std::int64_t bn = b.num_ < 0 ? -b.num_ : b.num_;
        int twos = 0;
        while ((bn & 1) == 0) {
            bn >>= 1;
            ++twos;
        }
        if (a.num_ % bn != 0) return std::nullopt;
        std::int64_t q = a.num_ / bn;
        if (b.num_ < 0) q = -q;
        // a/b = q * 2^(twos + b.den - a.den)
        const int e = twos + b.log2_den_ - a.log2_den_;
        if (e >= 0) {
            const __int128 v = static_cast<__int128>(q) << e;
            IGA_REQUIRE(v >= INT64_MIN && v <= INT64_MAX, "dyadic: divide overflow");
            return make(static_cast<std::int64_t>(v), 0);
        }
        return make(q, -e);
    }

    friend bool operator==(Dyadic a, Dyadic b) {
        return a.num_ == b.num_ && a.log2_den_ == b.log2_den_;
    }
    friend bool operator!=(Dyadic a, Dyadic b) { return !(a == b); }
    friend bool operator<(Dyadic a, Dyadic b) {
        const int d = std::max(a.log2_den_, b.log2_den_);
        return shifted(a, d) < shifted(b, d);
    }
    friend bool operator<=(Dyadic a, Dyadic b) { return a < b || a == b; }
    friend bool operator>(Dyadic a, Dyadic b) { return b < a; }
    friend bool operator>=(Dyadic a, Dyadic b) { return b <= a; }

    /// Serialized as "n" or "n/2^k"; parse accepts the same forms.
    std::string str() const {
        if (log2_den_ == 0) return std::to_string(num_);
        return std::to_string(num_) + "/2^" + std::to_string(log2_den_);
    }
    static Dyadic parse(const std::string& s);

private:
    void canonicalize() {
        if (num_ == 0) {
            log2_den_ = 0;
            return;
        }
        while (log2_den_ > 0 && (num_ & 1) == 0) {
            num_ >>= 1;
            --log2_den_;
        }
    }
    static std::int64_t shifted(Dyadic a, int d) {
        const __int128 v = static_cast<__int128>(a.num_) << (d - a.log2_den_);
        IGA_REQUIRE(v >= INT64_MIN && v <= INT64_MAX, "dyadic: shift overflow");
        return static_cast<std::int64_t>(v);
    }

    std::int64_t num_;
    int log2_den_;
};

/// Half of a dyadic value (always exact).
inline Dyadic half(Dyadic a) { return Dyadic::make(a.numerator(), a.log2_denominator() + 1); }

/// Closed interval with dyadic endpoints, lo < up unless noted.
struct DyadicInterval {
    Dyadic lo, up;

    Dyadic length() const { return up - lo; }
    bool contains(Dyadic t) const { return lo <= t && t <= up; }
    bool operator==(const DyadicInterval& o) const { return lo == o.lo && up == o.up; }

    /// Map t from this interval to [0,1]; requires an exact dyadic result.
    Dyadic to_unit(Dyadic t) const {
        auto q = Dyadic::try_divide(t - lo, length());
        IGA_REQUIRE(q.has_value(), "interval: non-dyadic rescale");
        return *q;
    }
    /// Map u in [0,1] into this interval.
    Dyadic from_unit(Dyadic u) const { return lo + u * length(); }
};

/// Intersection of two intervals, empty -> nullopt (touching counts as empty).
inline std::optional<DyadicInterval> intersect(const DyadicInterval& a, const DyadicInterval& b) {
    const Dyadic lo = a.lo < b.lo ? b.lo : a.lo;
    const Dyadic up = a.up < b.up ? a.up : b.up;
    if (lo < up) return DyadicInterval{lo, up};
    return std::nullopt;
}

}  // namespace iga
