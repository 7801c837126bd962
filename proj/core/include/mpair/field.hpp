#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mpair {

using Rational = boost::multiprecision::cpp_rational;

// Coefficient field: GF(p) for a prime p < 2^31, or the rationals.
class Field {
public:
    static Field gf(std::uint32_t p);  // throws std::invalid_argument unless p is prime and < 2^31
    static Field rationals() { return Field(0); }

    bool is_rationals() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }  // 0 for the rationals

    bool operator==(const Field&) const = default;

    std::string str() const;                      // "GF(p)" or "Q"
    static Field parse(const std::string& text);  // inverse of str(); throws on junk

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_;
};

// One exact field element. GF(p) values are canonical residues in [0, p);
// rational values are kept in lowest terms with positive denominator.
class Coefficient {
public:
    static Coefficient zero(Field f);
    static Coefficient one(Field f);
    static Coefficient from_integer(Field f, long long v);
    static Coefficient from_rational(Field f, const Rational& q);  // GF(p): num * den^-1

    Field field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;

    Coefficient operator+(const Coefficient& o) const;
    Coefficient operator-(const Coefficient& o) const;
    Coefficient operator*(const Coefficient& o) const;
    Coefficient operator/(const Coefficient& o) const;
    Coefficient operator-() const;
    Coefficient inverse() const;  // throws std::domain_error on zero

    bool operator==(const Coefficient& o) const;
    bool operator!=(const Coefficient& o) const { return !(*this == o); }

    std::uint32_t residue() const;     // GF(p) values only
    const Rational& rational() const;  // rational values only

    // Canonical text form: the residue for GF(p), "n" or "n/d" for rationals.
    std::string str() const;

private:
    Coefficient(Field f, std::uint32_t r, Rational q)
        : f_(f), r_(r), q_(std::move(q)) {}

    void check_same_field(const Coefficient& o) const;

    Field f_;
    std::uint32_t r_;
    Rational q_;
};

} // namespace mpair
