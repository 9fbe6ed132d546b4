#include "ranklab/gaussian_rational.hpp"

#include "ranklab/error.hpp"

#include <sstream>
#include <utility>

namespace ranklab {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
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
    if (o.is_real()) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero())
        throw ContractError("division by zero Gaussian rational");
    const mpq_class n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::string GaussianRational::to_string() const {
    if (is_real())
        return re_.get_str();
    std::ostringstream os;
    if (sgn(re_) != 0)
        os << re_.get_str() << (sgn(im_) > 0 ? "+" : "");
    os << im_.get_str() << "i";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

mpq_class parse_rational(std::string_view text) {
    if (text.empty())
        throw ParseError("empty rational");
    const auto slash = text.find('/');
    auto check_int = [&](std::string_view part) {
        std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (start == part.size())
            throw ParseError("malformed rational '" + std::string(text) + "'");
        for (std::size_t i = start; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                throw ParseError("malformed rational '" + std::string(text) + "'");
    };
    std::string num(text.substr(0, slash));
    check_int(num);
    if (num[0] == '+')
        num.erase(0, 1);
    mpz_class n(num, 10);
    mpz_class d(1);
    if (slash != std::string_view::npos) {
        std::string den(text.substr(slash + 1));
        check_int(den);
        if (den[0] == '+')
            den.erase(0, 1);
        d = mpz_class(den, 10);
        if (d == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

} // namespace ranklab
