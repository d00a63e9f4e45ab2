#include "manna/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace manna {

namespace {

// Digits with an optional leading '-'. When `canonical` is set, rejects
// leading zeros and "-0".
bool is_integer_text(std::string_view s, bool canonical) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return !canonical || s.size() == 1 || s.front() != '0';
}

std::optional<mpq_class> parse_raw(std::string_view text, bool canonical) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!is_integer_text(num, canonical)) return std::nullopt;
    if (canonical && num == "-0") return std::nullopt;

    mpq_class q;
    if (slash == std::string_view::npos) {
        q.get_num().set_str(std::string(num), 10);
        q.get_den() = 1;
        return q;
    }
    const std::string_view den = text.substr(slash + 1);
    if (den.empty() || den.front() == '-' || !is_integer_text(den, canonical)) return std::nullopt;
    q.get_num().set_str(std::string(num), 10);
    q.get_den().set_str(std::string(den), 10);
    if (q.get_den() == 0) return std::nullopt;
    if (canonical) {
        if (q.get_den() == 1) return std::nullopt;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        if (g != 1) return std::nullopt;
    }
    q.canonicalize();
    return q;
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, 1);
    q_ /= den;
    q_.canonicalize();
}

std::optional<Rational> Rational::parse(std::string_view text) {
    auto q = parse_raw(text, true);
    if (!q) return std::nullopt;
    return Rational(std::move(*q));
}

std::optional<Rational> Rational::parse_lenient(std::string_view text) {
    auto q = parse_raw(text, false);
    if (!q) return std::nullopt;
    return Rational(std::move(*q));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
    return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

}  // namespace manna
