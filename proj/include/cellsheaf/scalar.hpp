#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cellsheaf {

/// The coefficient field: the rationals, or F_p for a prime p.
class Field {
public:
    /// The rationals.
    Field() noexcept = default;

    static Field rationals() noexcept { return Field{}; }
    /// Throws InvalidArgument unless p is a prime below 2^62.
    static Field prime(std::uint64_t p);
    /// Accepts "q" or "fp:<prime>".
    static Field parse(std::string_view text);

    bool is_rational() const noexcept { return modulus_ == 0; }
    /// 0 for the rationals.
    std::uint64_t characteristic() const noexcept { return modulus_; }
    std::string to_string() const;

    bool operator==(const Field&) const = default;

private:
    friend class Scalar;
    friend class ScalarOps;
    explicit Field(std::uint64_t modulus) noexcept : modulus_(modulus) {}

    std::uint64_t modulus_ = 0;
};

/// An exact field element.
///
/// Rationals are kept in lowest terms with a positive denominator. Values that
/// fit in 64-bit numerator/denominator use an inline representation; anything
/// larger moves to GMP, so arithmetic never overflows. Elements of F_p are
/// residues in [0, p).
///
/// Mixing a rational with an F_p element maps the rational through the
/// canonical reduction (the denominator must be invertible mod p). Mixing two
/// different primes throws.
class Scalar {
public:
    Scalar() noexcept = default;
    Scalar(long long value) noexcept : num_(value) {} // NOLINT: implicit so integer literals work as scalars
    Scalar(long long numerator, long long denominator);

    static Scalar from_mpq(const mpq_class& value);
    /// Parses "-3", "7", "3/4" into the given field.
    static Scalar parse(std::string_view text, const Field& field);

    /// Image of this value in `field`. Identity when the field already matches.
    Scalar in(const Field& field) const;
    Field field() const;

    bool is_zero() const noexcept { return big_ == nullptr && num_ == 0; }
    bool is_one() const noexcept { return big_ == nullptr && num_ == 1 && den_ == 1; }
    /// True for rationals with denominator 1 and for every F_p element.
    bool is_integer() const noexcept;

    /// Denominator of a rational in lowest terms; 1 for F_p elements.
    Scalar denominator() const;
    Scalar inverse() const;
    mpq_class to_mpq() const;
    std::string to_string() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

    friend bool operator==(const Scalar& lhs, const Scalar& rhs);

private:
    friend class ScalarOps;

    std::uint64_t modulus_ = 0;
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

/// Non-negative gcd of two integer-valued rationals.
Scalar gcd_integers(const Scalar& a, const Scalar& b);

std::ostream& operator<<(std::ostream& os, const Scalar& value);

} // namespace cellsheaf
