#pragma once

#include "bhk/core/gaussian_rational.hpp"
#include "bhk/core/rational_function.hpp"
#include "bhk/polymat/matrix.hpp"

#include <cstdint>
#include <random>

namespace bhk::test {

inline GaussianRational q(long n, long d = 1) { return GaussianRational(Rational(n, d)); }
inline GaussianRational gi(long re_n, long re_d, long im_n, long im_d) {
    return GaussianRational(Rational(re_n, re_d), Rational(im_n, im_d));
}
inline RationalFunction zf() { return RationalFunction::z(); }
inline RationalFunction zbar() { return RationalFunction::z_pow(-1); }
inline RationalFunction poly(std::initializer_list<long> c) {
    std::vector<GaussianRational> v;
    for (long x : c) v.emplace_back(x);
    return Polynomial(v);
}

/// Small-coefficient generators with a fixed seed.
class Gen {
public:
    explicit Gen(std::uint64_t seed = 20240611) : rng_(seed) {}
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    GaussianRational small() { return GaussianRational(Rational(integer(-3, 3), integer(1, 3)), Rational(integer(-2, 2), integer(1, 3))); }
    /// Point with |a| < 1.
    GaussianRational disk_point() {
        while (true) {
            GaussianRational a(Rational(integer(-4, 4), 5), Rational(integer(-4, 4), 5));
            if (a.norm2() < 1) return a;
        }
    }
    /// Point with |a| > 1.
    GaussianRational outer_point() {
        while (true) {
            GaussianRational a(Rational(integer(-6, 6), 2), Rational(integer(-6, 6), 2));
            if (a.norm2() > 1) return a;
        }
    }
    Polynomial polynomial(int degree) {
        std::vector<GaussianRational> c;
        for (int k = 0; k <= degree; ++k) c.push_back(small());
        if (c.back().is_zero()) c.back() = 1;
        return Polynomial(c);
    }
    /// Analytic rational function: poles outside the closed disk.
    RationalFunction analytic(int degree) {
        Polynomial den(1);
        if (integer(0, 1)) den = Polynomial::from_roots({outer_point()});
        return RationalFunction(polynomial(degree), den);
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace bhk::test
