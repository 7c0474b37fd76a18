#pragma once

// Exact rational scalars and dense rational vectors.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace klytor {

using Rat = mpq_class;
using Int = mpz_class;
using QVec = std::vector<Rat>;
using IVec = std::vector<long>;

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Rat make_rat(long num, long den = 1) {
    if (den == 0)
        throw std::domain_error("zero denominator");
    Rat r{Int(num), Int(den)};
    r.canonicalize();
    return r;
}

/// Parses "p", "p/q" or "-p/q". Rejects anything else.
inline Rat parse_rat(std::string_view s) {
    std::string str(s);
    if (str.empty())
        throw std::invalid_argument("empty rational");
    auto slash = str.find('/');
    auto check_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size())
            throw std::invalid_argument("malformed rational: " + t);
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                throw std::invalid_argument("malformed rational: " + t);
    };
    std::string num = str.substr(0, slash);
    if (!num.empty() && num[0] == '+')
        num = num.substr(1);
    check_int(num);
    Rat r;
    if (slash == std::string::npos) {
        r = Rat(Int(num));
    } else {
        std::string den = str.substr(slash + 1);
        check_int(den);
        Int d(den);
        if (d == 0)
            throw std::invalid_argument("zero denominator: " + str);
        r = Rat(Int(num), d);
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) {
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_integral(const Rat& r) { return r.get_den() == 1; }

inline long to_ll(const Rat& r) {
    if (!is_integral(r))
        throw std::domain_error("non-integral value " + to_string(r));
    if (!r.get_num().fits_slong_p())
        throw std::overflow_error("integer out of range");
    return r.get_num().get_si();
}

inline Rat floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rat(q);
}

inline Rat ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rat(q);
}

inline QVec to_qvec(std::span<const long> v) {
    QVec out;
    out.reserve(v.size());
    for (long x : v)
        out.emplace_back(make_rat(x));
    return out;
}

inline IVec to_ivec(std::span<const Rat> v) {
    IVec out;
    out.reserve(v.size());
    for (const Rat& x : v)
        out.push_back(to_ll(x));
    return out;
}

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw DimensionMismatch(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
}

inline Rat dot(std::span<const Rat> a, std::span<const Rat> b) {
    require_same_size(a.size(), b.size(), "dot");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline Rat dot(std::span<const Rat> a, std::span<const long> b) {
    require_same_size(a.size(), b.size(), "dot");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline QVec add(std::span<const Rat> a, std::span<const Rat> b) {
    require_same_size(a.size(), b.size(), "add");
    QVec out(a.begin(), a.end());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += b[i];
    return out;
}

inline QVec sub(std::span<const Rat> a, std::span<const Rat> b) {
    require_same_size(a.size(), b.size(), "sub");
    QVec out(a.begin(), a.end());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] -= b[i];
    return out;
}

inline QVec scale(std::span<const Rat> a, const Rat& c) {
    QVec out(a.begin(), a.end());
    for (auto& x : out)
        x *= c;
    return out;
}

inline bool is_zero(std::span<const Rat> a) {
    for (const Rat& x : a)
        if (x != 0)
            return false;
    return true;
}

inline QVec zeros(std::size_t n) { return QVec(n, Rat(0)); }

inline QVec unit(std::size_t n, std::size_t i) {
    QVec v = zeros(n);
    v[i] = 1;
    return v;
}

/// Scales a nonzero rational vector to the primitive integer vector on its ray.
inline IVec primitive(std::span<const Rat> v) {
    Int l = 1;
    for (const Rat& x : v)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Int> ints;
    Int g = 0;
    for (const Rat& x : v) {
        Int t = x.get_num() * (l / x.get_den());
        ints.push_back(t);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
    }
    if (g == 0)
        throw std::invalid_argument("primitive: zero vector");
    IVec out;
    for (auto& t : ints) {
        Int q = t / g;
        if (!q.fits_slong_p())
            throw std::overflow_error("primitive: coordinate out of range");
        out.push_back(q.get_si());
    }
    return out;
}

inline IVec primitive(std::span<const long> v) { return primitive(to_qvec(v)); }

inline std::ostream& operator<<(std::ostream& os, const QVec& v) {
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << to_string(v[i]);
    return os << ")";
}

}  // namespace klytor
