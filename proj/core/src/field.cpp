#include "mpair/field.hpp"

#include <stdexcept>

namespace mpair {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p);
}

std::uint32_t powmod(std::uint32_t a, std::uint32_t e, std::uint32_t p) {
    std::uint32_t acc = 1 % p;
    while (e) {
        if (e & 1) acc = mulmod(acc, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return acc;
}

} // namespace

Field Field::gf(std::uint32_t p) {
    if (p >= (1u << 31) || !is_prime(p))
        throw std::invalid_argument("GF(p) requires a prime p < 2^31, got " + std::to_string(p));
    return Field(p);
}

std::string Field::str() const {
    return is_rationals() ? "Q" : "GF(" + std::to_string(p_) + ")";
}

Field Field::parse(const std::string& text) {
    if (text == "Q") return rationals();
    if (text.size() > 4 && text.rfind("GF(", 0) == 0 && text.back() == ')') {
        const std::string digits = text.substr(3, text.size() - 4);
        if (!digits.empty() && digits.size() <= 10 &&
            digits.find_first_not_of("0123456789") == std::string::npos) {
            const unsigned long long p = std::stoull(digits);
            if (p < (1ull << 31)) return gf(static_cast<std::uint32_t>(p));
            throw std::invalid_argument("GF(p) requires p < 2^31, got " + digits);
        }
    }
    throw std::invalid_argument("cannot parse field '" + text + "' (expected Q or GF(p))");
}

Coefficient Coefficient::zero(Field f) { return Coefficient(f, 0, Rational(0)); }

Coefficient Coefficient::one(Field f) {
    return f.is_rationals() ? Coefficient(f, 0, Rational(1)) : Coefficient(f, 1 % f.characteristic(), Rational(0));
}

Coefficient Coefficient::from_integer(Field f, long long v) {
    if (f.is_rationals()) return Coefficient(f, 0, Rational(v));
    const long long p = f.characteristic();
    long long r = v % p;
    if (r < 0) r += p;
    return Coefficient(f, static_cast<std::uint32_t>(r), Rational(0));
}

Coefficient Coefficient::from_rational(Field f, const Rational& q) {
    if (f.is_rationals()) return Coefficient(f, 0, q);
    const Rational p(f.characteristic());
    const auto num = Coefficient::from_integer(f, static_cast<long long>(numerator(q) % numerator(p)));
    const auto den = Coefficient::from_integer(f, static_cast<long long>(denominator(q) % numerator(p)));
    return num / den;
}

bool Coefficient::is_zero() const { return f_.is_rationals() ? q_.is_zero() : r_ == 0; }

bool Coefficient::is_one() const { return f_.is_rationals() ? q_ == 1 : r_ == 1 % f_.characteristic(); }

void Coefficient::check_same_field(const Coefficient& o) const {
    if (!(f_ == o.f_))
        throw std::logic_error("coefficient field mismatch: " + f_.str() + " vs " + o.f_.str());
}

Coefficient Coefficient::operator+(const Coefficient& o) const {
    check_same_field(o);
    if (f_.is_rationals()) return Coefficient(f_, 0, q_ + o.q_);
    const std::uint32_t p = f_.characteristic();
    std::uint64_t s = std::uint64_t(r_) + o.r_;
    if (s >= p) s -= p;
    return Coefficient(f_, static_cast<std::uint32_t>(s), Rational(0));
}

Coefficient Coefficient::operator-(const Coefficient& o) const { return *this + (-o); }

Coefficient Coefficient::operator*(const Coefficient& o) const {
    check_same_field(o);
    if (is_zero() || o.is_zero()) return zero(f_);
    if (f_.is_rationals()) return Coefficient(f_, 0, q_ * o.q_);
    return Coefficient(f_, mulmod(r_, o.r_, f_.characteristic()), Rational(0));
}

Coefficient Coefficient::operator/(const Coefficient& o) const { return *this * o.inverse(); }

Coefficient Coefficient::operator-() const {
    if (f_.is_rationals()) return Coefficient(f_, 0, -q_);
    const std::uint32_t p = f_.characteristic();
    return Coefficient(f_, r_ == 0 ? 0 : p - r_, Rational(0));
}

Coefficient Coefficient::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in " + f_.str());
    if (f_.is_rationals()) return Coefficient(f_, 0, Rational(1) / q_);
    const std::uint32_t p = f_.characteristic();
    return Coefficient(f_, powmod(r_, p - 2, p), Rational(0));
}

bool Coefficient::operator==(const Coefficient& o) const {
    if (!(f_ == o.f_)) return false;
    return f_.is_rationals() ? q_ == o.q_ : r_ == o.r_;
}

std::uint32_t Coefficient::residue() const {
    if (f_.is_rationals()) throw std::logic_error("residue() called on a rational coefficient");
    return r_;
}

const Rational& Coefficient::rational() const {
    if (!f_.is_rationals()) throw std::logic_error("rational() called on a GF(p) coefficient");
    return q_;
}

std::string Coefficient::str() const {
    if (!f_.is_rationals()) return std::to_string(r_);
    if (denominator(q_) == 1) return numerator(q_).str();
    return numerator(q_).str() + "/" + denominator(q_).str();
}

} // namespace mpair
