#include "bhk/core/polynomial.hpp"

#include "bhk/core/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>

namespace bhk {

Polynomial::Polynomial(long c) {
    if (c != 0) c_.push_back(GaussianRational(c));
}

Polynomial::Polynomial(const GaussianRational& c) {
    if (!c.is_zero()) c_.push_back(c);
}

Polynomial::Polynomial(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(int k, const GaussianRational& c) {
    if (k < 0) throw std::invalid_argument("negative monomial degree");
    if (c.is_zero()) return {};
    std::vector<GaussianRational> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(const std::vector<GaussianRational>& roots) {
    Polynomial p(1);
    for (const auto& r : roots) p *= Polynomial({-r, GaussianRational(1)});
    return p;
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int Polynomial::valuation() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return static_cast<int>(k);
    return 0;
}

GaussianRational Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return {};
    return c_[static_cast<std::size_t>(k)];
}

const GaussianRational& Polynomial::leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussianRational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const GaussianRational& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial(), a};
    std::vector<GaussianRational> rem = a.c_;
    const int db = b.degree();
    std::vector<GaussianRational> quot(static_cast<std::size_t>(a.degree() - db) + 1);
    const GaussianRational inv_lead = b.leading().inverse();
    for (int k = a.degree(); k >= db; --k) {
        GaussianRational q = rem[static_cast<std::size_t>(k)] * inv_lead;
        if (q.is_zero()) continue;
        quot[static_cast<std::size_t>(k - db)] = q;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * b.c_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::exact_div(const Polynomial& b) const {
    auto [q, r] = divmod(*this, b);
    if (!r.is_zero()) throw InvariantViolation("inexact polynomial division: " + str() + " by " + b.str());
    return q;
}

bool Polynomial::divisible_by(const Polynomial& b) const { return divmod(*this, b).second.is_zero(); }

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    return *this * leading().inverse();
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<GaussianRational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * GaussianRational(static_cast<long>(k));
    return Polynomial(std::move(d));
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial result(1), base = *this;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return result;
}

Polynomial Polynomial::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    if (k < 0) {
        if (valuation() < -k) throw std::domain_error("negative shift would leave a fraction");
        return Polynomial(std::vector<GaussianRational>(c_.begin() + (-k), c_.end()));
    }
    std::vector<GaussianRational> v(static_cast<std::size_t>(k));
    v.insert(v.end(), c_.begin(), c_.end());
    return Polynomial(std::move(v));
}

Polynomial Polynomial::conj_coeffs() const {
    Polynomial r = *this;
    for (auto& x : r.c_) x = x.conj();
    return r;
}

Polynomial Polynomial::reflected() const { return conj_coeffs().reversed(degree()); }

Polynomial Polynomial::reversed(int n) const {
    if (is_zero()) return {};
    if (n < degree()) throw std::invalid_argument("reversal length below degree");
    std::vector<GaussianRational> v(static_cast<std::size_t>(n) + 1);
    for (std::size_t k = 0; k < c_.size(); ++k) v[static_cast<std::size_t>(n) - k] = c_[k];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::truncated(int n) const {
    if (n >= static_cast<int>(c_.size())) return *this;
    if (n <= 0) return {};
    return Polynomial(std::vector<GaussianRational>(c_.begin(), c_.begin() + n));
}

GaussianRational Polynomial::operator()(const GaussianRational& x) const {
    GaussianRational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> x) const {
    std::complex<double> acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_complex();
    return acc;
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const auto& c = c_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool paren = !c.is_real() || sgn(c.re()) < 0 || c.re().get_den() != 1;
        if (k == 0) {
            os << (paren ? "(" + c.str() + ")" : c.str());
            continue;
        }
        if (!c.is_one()) os << (paren ? "(" + c.str() + ")" : c.str()) << "*";
        os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

namespace {

// Arithmetic modulo a prime p = 1 mod 4, where i has a square root.
constexpr std::uint64_t kPrime = 998244353;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) { return static_cast<unsigned __int128>(a) * b % kPrime; }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
        if (e & 1) r = mulmod(r, a);
    return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

const std::uint64_t kSqrtMinusOne = powmod(3, (kPrime - 1) / 4);

std::optional<std::uint64_t> reduce(const Rational& q) {
    std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
    if (den == 0) return std::nullopt;
    return mulmod(mpz_fdiv_ui(q.get_num_mpz_t(), kPrime), invmod(den));
}

// Image of p in F_p[z]; empty when a denominator or the leading coefficient vanishes mod p.
std::optional<std::vector<std::uint64_t>> reduce(const Polynomial& p) {
    std::vector<std::uint64_t> out;
    for (const auto& c : p.coeffs()) {
        auto re = reduce(c.re()), im = reduce(c.im());
        if (!re || !im) return std::nullopt;
        out.push_back((*re + mulmod(*im, kSqrtMinusOne)) % kPrime);
    }
    if (!out.empty() && out.back() == 0) return std::nullopt;
    return out;
}

void trim_mod(std::vector<std::uint64_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    trim_mod(a);
    trim_mod(b);
    while (!b.empty()) {
        const std::uint64_t inv = invmod(b.back());
        while (a.size() >= b.size()) {
            const std::uint64_t q = mulmod(a.back(), inv);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + kPrime - mulmod(q, b[j])) % kPrime;
            trim_mod(a);
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

// The gcd degree over Q(i) is at most the degree of the gcd of good reductions.
bool certified_coprime(const Polynomial& a, const Polynomial& b) {
    auto ra = reduce(a), rb = reduce(b);
    return ra && rb && gcd_degree_mod(*ra, *rb) == 0;
}

} // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (!a.is_zero() && !b.is_zero() && certified_coprime(a, b)) return Polynomial(1);
    Polynomial x = a.monic(), y = b.monic();
    while (!y.is_zero()) {
        Polynomial r = Polynomial::divmod(x, y).second.monic();
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("lcm of zero polynomial");
    return (a * b).exact_div(gcd(a, b)).monic();
}

ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial r0 = a, r1 = b, s0(1), s1, t0, t1(1);
    while (!r1.is_zero()) {
        auto [q, r] = Polynomial::divmod(r0, r1);
        Polynomial s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    GaussianRational inv = r0.leading().inverse();
    return {r0 * inv, s0 * inv, t0 * inv};
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
    std::vector<std::pair<Polynomial, int>> out;
    if (p.degree() <= 0) return out;
    Polynomial f = p.monic();
    Polynomial d = f.derivative();
    Polynomial a = gcd(f, d);
    Polynomial b = f.exact_div(a);
    Polynomial c = d.exact_div(a);
    Polynomial e = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Polynomial g = gcd(b, e);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = b.exact_div(g);
        c = e.exact_div(g);
        e = c - b.derivative();
        ++i;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

} // namespace bhk
