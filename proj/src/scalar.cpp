#include "cellsheaf/scalar.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <utility>

#include "cellsheaf/error.hpp"

namespace cellsheaf {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();
constexpr std::uint64_t kPrimeLimit = std::uint64_t{1} << 62;

u128 magnitude(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

u128 gcd(u128 a, u128 b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

bool fits_small(i128 v) { return v >= -static_cast<i128>(kSmallMax) && v <= kSmallMax; }

mpz_class to_mpz(i128 v) {
    const u128 m = magnitude(v);
    mpz_class result(static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64)));
    result <<= 64;
    result += static_cast<unsigned long>(static_cast<std::uint64_t>(m));
    if (v < 0) result = -result;
    return result;
}

bool mpz_fits_small(const mpz_class& z) {
    return mpz_fits_slong_p(z.get_mpz_t()) != 0 && z != std::numeric_limits<long>::min();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t result = 1 % p;
    while (exp > 0) {
        if (exp & 1U) result = mulmod(result, base, p);
        base = mulmod(base, base, p);
        exp >>= 1U;
    }
    return result;
}

std::uint64_t reduce_mod(const mpz_class& z, std::uint64_t p) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return r.get_ui();
}

} // namespace

Field Field::prime(std::uint64_t p) {
    if (p < 2 || p >= kPrimeLimit) {
        throw InvalidArgument("field characteristic " + std::to_string(p) +
                              " must be a prime in [2, 2^62)");
    }
    const mpz_class z(static_cast<unsigned long>(p));
    if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) {
        throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    }
    return Field(p);
}

Field Field::parse(std::string_view text) {
    if (text == "q" || text == "Q") return rationals();
    constexpr std::string_view prefix = "fp:";
    if (text.substr(0, prefix.size()) == prefix) {
        const auto digits = text.substr(prefix.size());
        if (digits.empty() || digits.size() > 19) {
            throw InvalidArgument("bad prime in field '" + std::string(text) + "'");
        }
        std::uint64_t p = 0;
        for (char c : digits) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw InvalidArgument("bad prime in field '" + std::string(text) + "'");
            }
            p = p * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return prime(p);
    }
    throw InvalidArgument("unknown field '" + std::string(text) + "' (expected q or fp:<prime>)");
}

std::string Field::to_string() const {
    return is_rational() ? std::string("q") : "fp:" + std::to_string(modulus_);
}

/// Representation-level helpers shared by the arithmetic operators.
class ScalarOps {
public:
    static Scalar rational(i128 n, i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const u128 g = gcd(magnitude(n), static_cast<u128>(d));
        if (g > 1) {
            n /= static_cast<i128>(g);
            d /= static_cast<i128>(g);
        }
        Scalar s;
        if (fits_small(n) && d <= kSmallMax) {
            s.num_ = static_cast<std::int64_t>(n);
            s.den_ = static_cast<std::int64_t>(d);
            return s;
        }
        mpq_class q(to_mpz(n), to_mpz(d));
        return from_canonical(std::move(q));
    }

    static Scalar from_canonical(mpq_class q) {
        Scalar s;
        if (mpz_fits_small(q.get_num()) && mpz_fits_small(q.get_den())) {
            s.num_ = q.get_num().get_si();
            s.den_ = q.get_den().get_si();
        } else {
            s.big_ = std::make_shared<const mpq_class>(std::move(q));
        }
        return s;
    }

    static mpq_class as_mpq(const Scalar& s) {
        if (s.big_) return *s.big_;
        return mpq_class(mpz_class(static_cast<long>(s.num_)), mpz_class(static_cast<long>(s.den_)));
    }

    static Field field(std::uint64_t p) { return Field(p); }

    static Scalar residue(std::uint64_t value, std::uint64_t p) {
        Scalar s;
        s.modulus_ = p;
        s.num_ = static_cast<std::int64_t>(value);
        return s;
    }

    static std::uint64_t common_modulus(const Scalar& a, const Scalar& b) {
        if (a.modulus_ == b.modulus_) return a.modulus_;
        if (a.modulus_ == 0) return b.modulus_;
        if (b.modulus_ == 0) return a.modulus_;
        throw InvalidArgument("cannot mix elements of F_" + std::to_string(a.modulus_) +
                              " and F_" + std::to_string(b.modulus_));
    }

    template <typename SmallOp, typename BigOp, typename ModOp>
    static void apply(Scalar& lhs, const Scalar& rhs_in, SmallOp small, BigOp big, ModOp mod) {
        const std::uint64_t p = common_modulus(lhs, rhs_in);
        if (p != 0) {
            const Scalar rhs = rhs_in.in(Field(p));
            if (lhs.modulus_ == 0) lhs = lhs.in(Field(p));
            lhs = residue(mod(static_cast<std::uint64_t>(lhs.num_),
                              static_cast<std::uint64_t>(rhs.num_), p),
                          p);
            return;
        }
        if (!lhs.big_ && !rhs_in.big_) {
            lhs = small(lhs, rhs_in);
            return;
        }
        mpq_class q = big(as_mpq(lhs), as_mpq(rhs_in));
        lhs = from_canonical(std::move(q));
    }
};

Scalar::Scalar(long long numerator, long long denominator) {
    if (denominator == 0) throw InvalidArgument("zero denominator");
    *this = ScalarOps::rational(numerator, denominator);
}

Scalar Scalar::from_mpq(const mpq_class& value) {
    if (value.get_den() == 0) throw InvalidArgument("zero denominator");
    mpq_class q(value);
    q.canonicalize();
    return ScalarOps::from_canonical(std::move(q));
}

Scalar Scalar::parse(std::string_view text, const Field& field) {
    const auto fail = [&] { return InvalidArgument("bad scalar literal '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    std::size_t i = (text[0] == '-') ? 1 : 0;
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
        ++digits;
    }
    if (digits == 0) throw fail();
    if (i < text.size()) {
        if (text[i] != '/') throw fail();
        ++i;
        std::size_t den_digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            ++den_digits;
        }
        if (den_digits == 0 || i != text.size()) throw fail();
    }
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) throw fail();
    q.canonicalize();
    return ScalarOps::from_canonical(std::move(q)).in(field);
}

Scalar Scalar::in(const Field& field) const {
    const std::uint64_t p = field.characteristic();
    if (p == modulus_) return *this;
    if (modulus_ != 0) {
        throw InvalidArgument("cannot map an element of F_" + std::to_string(modulus_) + " into " +
                              field.to_string());
    }
    std::uint64_t num = 0;
    std::uint64_t den = 0;
    if (big_) {
        num = reduce_mod(big_->get_num(), p);
        den = reduce_mod(big_->get_den(), p);
    } else {
        num = reduce_mod(mpz_class(static_cast<long>(num_)), p);
        den = static_cast<std::uint64_t>(den_) % p;
    }
    if (den == 0) {
        throw InvalidArgument("value " + to_string() + " has a denominator divisible by " +
                              std::to_string(p));
    }
    return ScalarOps::residue(mulmod(num, powmod(den, p - 2, p), p), p);
}

Field Scalar::field() const { return Field(modulus_); }

bool Scalar::is_integer() const noexcept {
    if (modulus_ != 0) return true;
    if (big_) return big_->get_den() == 1;
    return den_ == 1;
}

Scalar Scalar::denominator() const {
    if (modulus_ != 0) return ScalarOps::residue(1 % modulus_, modulus_);
    if (big_) return ScalarOps::from_canonical(mpq_class(big_->get_den()));
    return Scalar(den_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw InvalidArgument("division by zero");
    if (modulus_ != 0) {
        return ScalarOps::residue(powmod(static_cast<std::uint64_t>(num_), modulus_ - 2, modulus_),
                                  modulus_);
    }
    if (big_) {
        mpq_class q = 1 / *big_;
        q.canonicalize();
        return ScalarOps::from_canonical(std::move(q));
    }
    return ScalarOps::rational(den_, num_);
}

mpq_class Scalar::to_mpq() const { return ScalarOps::as_mpq(*this); }

std::string Scalar::to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::operator-() const {
    if (modulus_ != 0) {
        return ScalarOps::residue(num_ == 0 ? 0 : modulus_ - static_cast<std::uint64_t>(num_),
                                  modulus_);
    }
    if (big_) return ScalarOps::from_canonical(-*big_);
    Scalar s = *this;
    s.num_ = -num_;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    ScalarOps::apply(
        *this, rhs,
        [](const Scalar& a, const Scalar& b) {
            if (a.den_ == 1 && b.den_ == 1) return ScalarOps::rational(i128{a.num_} + b.num_, 1);
            return ScalarOps::rational(i128{a.num_} * b.den_ + i128{b.num_} * a.den_,
                                       i128{a.den_} * b.den_);
        },
        [](const mpq_class& a, const mpq_class& b) { return mpq_class(a + b); },
        [](std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a + b) % p; });
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
    ScalarOps::apply(
        *this, rhs,
        [](const Scalar& a, const Scalar& b) {
            return ScalarOps::rational(i128{a.num_} * b.num_, i128{a.den_} * b.den_);
        },
        [](const mpq_class& a, const mpq_class& b) { return mpq_class(a * b); },
        [](std::uint64_t a, std::uint64_t b, std::uint64_t p) { return mulmod(a, b, p); });
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

bool operator==(const Scalar& lhs, const Scalar& rhs) {
    if (lhs.modulus_ != rhs.modulus_) {
        const Field f = ScalarOps::field(ScalarOps::common_modulus(lhs, rhs));
        return lhs.in(f) == rhs.in(f);
    }
    if (lhs.big_ || rhs.big_) {
        if (!lhs.big_ || !rhs.big_) return false;
        return *lhs.big_ == *rhs.big_;
    }
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
}

Scalar gcd_integers(const Scalar& a, const Scalar& b) {
    if (!a.field().is_rational() || !b.field().is_rational() || !a.is_integer() ||
        !b.is_integer()) {
        throw InvalidArgument("gcd_integers needs integer-valued rationals");
    }
    const mpq_class qa = a.to_mpq();
    const mpq_class qb = b.to_mpq();
    if (mpz_fits_small(qa.get_num()) && mpz_fits_small(qb.get_num())) {
        const u128 g = gcd(magnitude(qa.get_num().get_si()), magnitude(qb.get_num().get_si()));
        return Scalar(static_cast<long long>(g));
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), qa.get_num_mpz_t(), qb.get_num_mpz_t());
    return Scalar::from_mpq(mpq_class(g));
}

std::ostream& operator<<(std::ostream& os, const Scalar& value) { return os << value.to_string(); }

} // namespace cellsheaf
