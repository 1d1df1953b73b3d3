#ifndef WILD_EXTREAL_HPP
#define WILD_EXTREAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wild {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Raised when an operation's precondition on its mathematical input fails.
class ComputationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when serialized input does not follow the expected layout.
class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Boost's rational_adaptor rejects negative denominators, so signs are moved
/// to the numerator first.
inline Rational make_rational(Integer num, Integer den) {
    if (den == 0) throw ComputationError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) { return make_rational(Integer(num), Integer(den)); }

/// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            if (text.empty()) throw SchemaError("empty rational");
            return Rational(Integer(std::string(text)));
        }
        Integer num(std::string(text.substr(0, slash)));
        Integer den(std::string(text.substr(slash + 1)));
        if (den == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
        return make_rational(num, den);
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception&) {
        throw SchemaError("malformed rational '" + std::string(text) + "'");
    }
}

/// An exact rational extended by the two infinities.
class ExtReal {
  public:
    enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

    ExtReal() = default;
    ExtReal(Rational q) : kind_(Kind::Finite), value_(std::move(q)) {}
    ExtReal(int q) : kind_(Kind::Finite), value_(q) {}

    static ExtReal neg_inf() { return ExtReal(Kind::NegInf); }
    static ExtReal pos_inf() { return ExtReal(Kind::PosInf); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }

    const Rational& value() const {
        if (!is_finite()) throw ComputationError("value() of an infinite ExtReal");
        return value_;
    }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        return a.kind_ == b.kind_ && (!a.is_finite() || a.value_ == b.value_);
    }

    friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        if (!a.is_finite()) return std::strong_ordering::equal;
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (b.value_ < a.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Sum with +inf absorbing finite values; (-inf) + (+inf) is undefined.
    friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
        if (a.is_finite() && b.is_finite()) return ExtReal(a.value_ + b.value_);
        if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
            throw ComputationError("(-inf) + (+inf) is undefined");
        return a.is_finite() ? b : a;
    }

    /// Product with a strictly positive rational; infinities are fixed.
    ExtReal scaled(const Rational& t) const {
        if (t <= 0) throw ComputationError("scale factor must be positive");
        return is_finite() ? ExtReal(value_ * t) : *this;
    }

    ExtReal negated() const {
        switch (kind_) {
            case Kind::NegInf: return pos_inf();
            case Kind::PosInf: return neg_inf();
            default: return ExtReal(-value_);
        }
    }

  private:
    explicit ExtReal(Kind k) : kind_(k) {}

    Kind kind_ = Kind::Finite;
    Rational value_ = 0;
};

inline std::string to_string(const ExtReal& e) {
    if (e.is_neg_inf()) return "-inf";
    if (e.is_pos_inf()) return "inf";
    return to_string(e.value());
}

inline ExtReal parse_extreal(std::string_view text) {
    if (text == "-inf") return ExtReal::neg_inf();
    if (text == "inf" || text == "+inf") return ExtReal::pos_inf();
    return ExtReal(parse_rational(text));
}

inline std::ostream& operator<<(std::ostream& os, const ExtReal& e) { return os << to_string(e); }

inline const ExtReal& min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }
inline const ExtReal& max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

}  // namespace wild

#endif  // WILD_EXTREAL_HPP
