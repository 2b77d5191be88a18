#include "bhk/core/gaussian_rational.hpp"

#include "bhk/core/errors.hpp"

#include <cctype>
#include <ostream>

namespace bhk {

namespace {

Rational parse_rational(std::string_view s, std::string_view whole) {
    if (s.empty()) throw SchemaError("empty rational in \"" + std::string(whole) + "\"");
    std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    bool seen_slash = false;
    bool digit_before = false, digit_after = false;
    for (std::size_t k = start; k < s.size(); ++k) {
        char c = s[k];
        if (c == '/') {
            if (seen_slash) throw SchemaError("malformed number \"" + std::string(whole) + "\"");
            seen_slash = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw SchemaError("malformed number \"" + std::string(whole) + "\"");
        }
    }
    if (!digit_before || (seen_slash && !digit_after))
        throw SchemaError("malformed number \"" + std::string(whole) + "\"");
    std::string text(s[0] == '+' ? s.substr(1) : s);
    Rational q;
    if (q.set_str(text, 10) != 0) throw SchemaError("malformed number \"" + std::string(whole) + "\"");
    if (q.get_den() == 0) throw SchemaError("zero denominator in \"" + std::string(whole) + "\"");
    q.canonicalize();
    return q;
}

Rational parse_imag_coeff(std::string_view s, std::string_view whole) {
    if (s.empty() || s == "+") return 1;
    if (s == "-") return -1;
    return parse_rational(s, whole);
}

} // namespace

GaussianRational::GaussianRational(const Rational& re, const Rational& im) : re_(re), im_(im) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw SchemaError("empty number");
    if (s.back() != 'i') return {parse_rational(s, text), 0};
    std::string_view body(s);
    body.remove_suffix(1);
    // split at the last sign that is not the leading character
    std::size_t cut = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            cut = k;
            break;
        }
    }
    if (cut == std::string_view::npos) return {0, parse_imag_coeff(body, text)};
    return {parse_rational(body.substr(0, cut), text), parse_imag_coeff(body.substr(cut), text)};
}

GaussianRational GaussianRational::from_double(double re, double im) {
    return {Rational(re), Rational(im)};
}

GaussianRational GaussianRational::inverse() const {
    Rational n = norm2();
    if (sgn(n) == 0) throw std::domain_error("division by zero Gaussian rational");
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (sgn(o.im_) == 0) {
        if (sgn(o.re_) == 0) throw std::domain_error("division by zero Gaussian rational");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string GaussianRational::str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string imag;
    if (im_ == 1)
        imag = "i";
    else if (im_ == -1)
        imag = "-i";
    else
        imag = im_.get_str() + "i";
    if (sgn(re_) == 0) return imag;
    return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << x.str(); }

} // namespace bhk
